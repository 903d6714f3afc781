//! CCA verdicts for single Cayley graphs and for groups.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{cayley_graph, CayleyGraph};
use crate::group::{automorphisms, FiniteGroup};

use super::affine::{fixes_colour_classes, is_affine};
use super::search::{colour_preserving_automorphisms, SearchStats};
use super::verdict::{Verdict, VerdictKind, Witness};

/// Automorphism groups larger than this are not used for orbit pruning.
pub const ORBIT_PRUNING_LIMIT: usize = 1 << 14;

/// Default limit on the number of connection-set candidates enumerated.
pub const DEFAULT_SUBSET_CAP: u64 = 1 << 20;

/// Decide the CCA property for one connected Cayley graph.
pub fn is_cca_graph(cg: &CayleyGraph) -> Result<Verdict> {
    if !cg.graph().is_connected() {
        return Err(Error::Disconnected);
    }
    let g = cg.group();
    let aut = colour_preserving_automorphisms(cg.graph())?;
    let mut verdict = Verdict::new(VerdictKind::Cca);
    verdict.stats = aut.stats;
    verdict.check("connected", true, format!("{} vertices", g.order()));
    verdict.check("colour-preserving group", true, format!("order {}", aut.order()));

    let mut non_affine = None;
    for p in &aut.elements {
        if is_affine(cg, p)?.is_none() {
            non_affine = Some(p.clone());
            break;
        }
    }

    // Second formulation: every identity-fixing element is a group
    // automorphism that fixes each colour class.
    let mut stabiliser_ok = true;
    let mut stabiliser_order = 0;
    for p in aut.stabiliser(0) {
        stabiliser_order += 1;
        let alpha = p.images();
        let n = g.order();
        let hom = (0..n).all(|x| (0..n).all(|y| alpha[g.mul(x, y)] == g.mul(alpha[x], alpha[y])));
        if !hom || !fixes_colour_classes(cg, alpha) {
            stabiliser_ok = false;
            break;
        }
    }
    if stabiliser_ok != non_affine.is_none() {
        return Err(Error::Inconsistency("CCA formulations disagree".into()));
    }

    match non_affine {
        None => {
            verdict.check(
                "every colour-preserving automorphism is affine",
                true,
                format!("identity stabiliser of order {stabiliser_order} consists of colour-class-fixing automorphisms"),
            );
        }
        Some(p) => {
            verdict.kind = VerdictKind::NonCca;
            verdict.check("every colour-preserving automorphism is affine", false, format!("non-affine witness {p}"));
            verdict.witness = Some(Witness {
                group: g.clone(),
                connection: cg.connection().to_vec(),
                images: p.into_images(),
            });
        }
    }
    Ok(verdict)
}

/// Inverse classes `{c, c⁻¹}` of the non-identity elements, by smallest index.
fn inverse_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    (1..g.order())
        .filter(|&c| c <= g.inv(c))
        .map(|c| if g.inv(c) == c { vec![c] } else { vec![c, g.inv(c)] })
        .collect()
}

/// Decide the CCA property for a group by enumerating connected Cayley
/// graphs, one per `Aut(G)`-orbit of connection sets when the automorphism
/// group is small enough. `cap` bounds the number of candidate subsets.
pub fn is_cca_group(g: &FiniteGroup, cap: u64, parallel: bool) -> Result<Verdict> {
    let start = Instant::now();
    let classes = inverse_classes(g);
    let k = classes.len();
    let class_of: Vec<usize> = {
        let mut v = vec![usize::MAX; g.order()];
        for (i, cls) in classes.iter().enumerate() {
            cls.iter().for_each(|&c| v[c] = i);
        }
        v
    };
    let total: u64 = if k >= 64 { u64::MAX } else { 1u64 << k };
    let limit = total.min(cap);

    let mut verdict = Verdict::new(VerdictKind::Cca);
    verdict.check("inverse classes", true, format!("{k} classes, {total} subsets"));

    let class_perms: Option<Vec<Vec<usize>>> = match automorphisms(g, ORBIT_PRUNING_LIMIT) {
        Ok(auts) if k < 64 => {
            verdict.check("orbit pruning", true, format!("|Aut(G)| = {}", auts.len()));
            Some(auts.iter().map(|a| classes.iter().map(|cls| class_of[a[cls[0]]]).collect()).collect())
        }
        _ => {
            verdict.check("orbit pruning", true, "disabled: automorphism group too large");
            None
        }
    };

    let canonical = |mask: u64| -> bool {
        let Some(perms) = &class_perms else { return true };
        perms.iter().all(|perm| {
            let image = (0..k).filter(|&i| mask >> i & 1 == 1).fold(0u64, |acc, i| acc | 1 << perm[i]);
            image >= mask
        })
    };

    let examine = |mask: u64| -> Option<Result<(u64, Verdict)>> {
        if !canonical(mask) {
            return None;
        }
        let connection: Vec<usize> =
            (0..k).filter(|&i| mask >> i & 1 == 1).flat_map(|i| classes[i].iter().copied()).collect();
        if !g.generates(&connection) {
            return None;
        }
        Some(cayley_graph(g, &connection).and_then(|cg| is_cca_graph(&cg)).map(|v| (mask, v)))
    };

    let outcomes: Vec<Result<(u64, Verdict)>> = if parallel {
        (0..limit).into_par_iter().filter_map(examine).collect()
    } else {
        (0..limit).filter_map(examine).collect()
    };

    let mut examined = 0u64;
    let mut stats = SearchStats::default();
    let mut first_non_cca = None;
    for outcome in outcomes {
        let (mask, v) = outcome?;
        examined += 1;
        stats.absorb(v.stats);
        if v.kind == VerdictKind::NonCca && first_non_cca.is_none() {
            first_non_cca = Some((mask, v));
        }
    }
    stats.elapsed = start.elapsed();
    verdict.stats = stats;
    verdict.check("connected Cayley graphs examined", true, examined.to_string());

    if let Some((_, v)) = first_non_cca {
        let w = v.witness.expect("non-CCA verdicts carry a witness");
        let names: Vec<&str> = w.connection.iter().map(|&c| g.name(c)).collect();
        verdict.kind = VerdictKind::NonCca;
        verdict.check("witness connection set", true, format!("{{{}}}", names.join(", ")));
        verdict.checks.extend(v.checks);
        verdict.witness = Some(w);
    } else if limit < total {
        verdict.kind = VerdictKind::UnknownCap;
        verdict.check("enumeration complete", false, format!("stopped after {limit} of {total} subsets"));
    } else {
        verdict.check("enumeration complete", true, "every connected Cayley graph is CCA");
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::replay_witness;
    use crate::group::{cyclic, direct_product};

    #[test]
    fn cyclic_graph_is_cca() {
        let c5 = cyclic(5).unwrap();
        let v = is_cca_graph(&cayley_graph(&c5, &[1, 4]).unwrap()).unwrap();
        assert_eq!(v.kind, VerdictKind::Cca);
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let c4 = cyclic(4).unwrap();
        assert_eq!(is_cca_graph(&cayley_graph(&c4, &[2]).unwrap()).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn klein_group_is_cca() {
        let c2 = cyclic(2).unwrap();
        let v4 = direct_product(&c2, &c2, 8).unwrap();
        assert_eq!(is_cca_group(&v4, DEFAULT_SUBSET_CAP, false).unwrap().kind, VerdictKind::Cca);
    }

    #[test]
    fn trivial_group_is_cca() {
        assert_eq!(is_cca_group(&cyclic(1).unwrap(), 16, false).unwrap().kind, VerdictKind::Cca);
    }

    #[test]
    fn small_cap_gives_unknown() {
        let v = is_cca_group(&cyclic(10).unwrap(), 4, false).unwrap();
        assert_eq!(v.kind, VerdictKind::UnknownCap);
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(6).unwrap(), 64).unwrap();
        let a = is_cca_group(&g, DEFAULT_SUBSET_CAP, false).unwrap();
        let b = is_cca_group(&g, DEFAULT_SUBSET_CAP, true).unwrap();
        assert_eq!(a.kind, b.kind);
        assert_eq!(a.witness, b.witness);
        if a.kind == VerdictKind::NonCca {
            assert!(replay_witness(&a).unwrap());
        }
    }
}
