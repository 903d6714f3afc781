//! Hypothesis/conclusion harness for lifting a locally complete-colour-pair
//! action on an arc-regular graph to colour-preserving maps of `L(S(Γ))`.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{Arc, ColouredGraph};
use crate::group::FiniteGroup;

use super::arcs::{check_acts_by_automorphisms, induced_vertex_map, is_arc_regular, line_subdivision_form, local_action, ArcLabeling};
use super::pair::is_complete_colour_pair;
use super::search::is_colour_preserving;
use super::verdict::{Verdict, VerdictKind};

/// Check the hypotheses on `(Γ, G, H)`, then independently verify the
/// conclusion by transporting every element of `H` through the arc labeling
/// anchored at `base` (the first arc when `None`).
///
/// Hypotheses passing while the conclusion fails is an inconsistency.
pub fn corollary_4_10_harness(g: &ColouredGraph, grp: &FiniteGroup, h: &FiniteGroup, base: Option<Arc>) -> Result<Verdict> {
    let start = Instant::now();
    let mut v = Verdict::new(VerdictKind::HypothesesFail);

    v.check("connected", g.is_connected(), format!("{} vertices", g.vertex_count()));

    let grp_auts = check_acts_by_automorphisms(g, grp);
    let h_auts = check_acts_by_automorphisms(g, h);
    v.check("G acts by automorphisms", grp_auts.is_ok(), grp_auts.as_ref().err().map(|e| e.to_string()).unwrap_or_default());
    v.check("H acts by automorphisms", h_auts.is_ok(), h_auts.as_ref().err().map(|e| e.to_string()).unwrap_or_default());
    if grp_auts.is_err() || h_auts.is_err() {
        return Ok(v);
    }

    let arc_regular = is_arc_regular(g, grp)?;
    v.check("G arc-regular", arc_regular, format!("|G| = {}, {} arcs", grp.order(), g.arcs().len()));

    let h_perms = h.realization().expect("checked above");
    let contained = grp.realization().unwrap().iter().all(|p| h.index_of_perm(p).is_some());
    v.check("G <= H", contained, format!("|G| = {}, |H| = {}", grp.order(), h.order()));

    let mut failing = Vec::new();
    for vertex in 0..g.vertex_count() {
        let pair = local_action(grp, g, vertex)
            .and_then(|gl| local_action(h, g, vertex).map(|hl| (gl, hl)))
            .and_then(|(gl, hl)| is_complete_colour_pair(&gl, &hl));
        match pair {
            Ok(p) if p.kind == VerdictKind::PairYes => v.stats.absorb(p.stats),
            Ok(_) => failing.push(format!("{vertex}")),
            Err(e) => failing.push(format!("{vertex} ({e})")),
        }
    }
    v.check(
        "local complete colour pair at every vertex",
        failing.is_empty(),
        if failing.is_empty() { format!("all {} vertices", g.vertex_count()) } else { format!("fails at {}", failing.join(", ")) },
    );

    let hypotheses_ok = v.all_checks_pass();
    if hypotheses_ok {
        v.kind = VerdictKind::HypothesesOk;
    }

    if arc_regular {
        let base = base.or_else(|| g.arcs().first().copied()).ok_or(Error::NotArcRegular)?;
        let labeling = ArcLabeling::new(g, grp, base)?;
        let form = line_subdivision_form(g, grp, &labeling)?;
        let mut exceptions = 0usize;
        for p in h_perms {
            let induced = induced_vertex_map(g, p, &labeling)?;
            if !is_colour_preserving(form.cayley.graph(), &induced)? {
                exceptions += 1;
            }
        }
        let conclusion = exceptions == 0;
        v.checks.push(crate::engine::Check::new(
            "conclusion: H colour-preserving on L(S(graph)) as Cay(G, C)",
            conclusion,
            format!("{} transported automorphisms, {exceptions} exceptions", h_perms.len()),
        ));
        if hypotheses_ok && !conclusion {
            return Err(Error::Inconsistency(format!(
                "hypotheses hold but {exceptions} transported automorphisms are not colour-preserving"
            )));
        }
    }
    v.stats.elapsed = start.elapsed();
    Ok(v)
}
