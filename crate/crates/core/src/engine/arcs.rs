//! Arc-regular actions, local actions, and the identification of
//! `L(S(Γ))` with a Cayley graph through an arc labeling.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{cayley_graph, line_graph, subdivision, Arc, CayleyGraph, ColouredGraph, Origin};
use crate::group::{closure_named, FiniteGroup};
use crate::perm::Permutation;

fn realization_on<'a>(grp: &'a FiniteGroup, g: &ColouredGraph) -> Result<&'a [Permutation]> {
    let perms = grp.realization().ok_or(Error::MissingRealization)?;
    if perms[0].degree() != g.vertex_count() {
        return Err(Error::DegreeMismatch { left: perms[0].degree(), right: g.vertex_count() });
    }
    Ok(perms)
}

/// Every element of `grp` must act as a graph automorphism.
pub fn check_acts_by_automorphisms(g: &ColouredGraph, grp: &FiniteGroup) -> Result<()> {
    let perms = realization_on(grp, g)?;
    match perms.iter().position(|p| !g.is_automorphism(p)) {
        Some(a) => Err(Error::NotAutomorphism(grp.name(a).to_string())),
        None => Ok(()),
    }
}

/// Whether `grp` acts regularly on the arcs of `g`: transitively, with
/// `|grp|` equal to the number of arcs.
pub fn is_arc_regular(g: &ColouredGraph, grp: &FiniteGroup) -> Result<bool> {
    check_acts_by_automorphisms(g, grp)?;
    let perms = grp.realization().expect("checked above");
    let arcs = g.arcs();
    let Some(&first) = arcs.first() else { return Ok(false) };
    let orbit: HashSet<Arc> = perms.iter().map(|p| first.image(p)).collect();
    Ok(orbit.len() == arcs.len() && grp.order() == arcs.len())
}

/// `grp_v^{N(v)}`: the stabiliser of `v` restricted to its neighbourhood,
/// as a permutation group on positions in the sorted neighbour list.
pub fn local_action(grp: &FiniteGroup, g: &ColouredGraph, v: usize) -> Result<FiniteGroup> {
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange { vertex: v, count: g.vertex_count() });
    }
    let perms = realization_on(grp, g)?;
    let nbrs: Vec<usize> = g.neighbours(v).iter().map(|&(w, _)| w).collect();
    let position: HashMap<usize, usize> = nbrs.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let mut restricted = Vec::new();
    for (a, p) in perms.iter().enumerate() {
        if p.apply(v) != v {
            continue;
        }
        let images = nbrs
            .iter()
            .map(|&w| position.get(&p.apply(w)).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotAutomorphism(grp.name(a).to_string()))?;
        restricted.push(Permutation::from_images(images)?);
    }
    // Greedy generating set over the restricted images.
    let mut gens: Vec<(String, Permutation)> = Vec::new();
    let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(nbrs.len())]);
    for q in restricted {
        if span.contains(&q) {
            continue;
        }
        gens.push((format!("g{}", gens.len() + 1), q));
        span = closure_named(&gens, grp.order())?.realization().unwrap().iter().cloned().collect();
    }
    if gens.is_empty() {
        gens.push(("g1".into(), Permutation::identity(nbrs.len())));
    }
    closure_named(&gens, grp.order())
}

/// Labels every arc by the unique group element carrying the base arc to it.
#[derive(Clone, Debug)]
pub struct ArcLabeling {
    base: Arc,
    arc_of: Vec<Arc>,
    label_of: HashMap<Arc, usize>,
}

impl ArcLabeling {
    pub fn new(g: &ColouredGraph, grp: &FiniteGroup, base: Arc) -> Result<Self> {
        if !g.has_edge(base.tail, base.head) {
            return Err(Error::InvalidArgument(format!("base arc {base:?} is not an arc")));
        }
        if !is_arc_regular(g, grp)? {
            return Err(Error::NotArcRegular);
        }
        let arc_of: Vec<Arc> = grp.realization().unwrap().iter().map(|p| base.image(p)).collect();
        let label_of: HashMap<Arc, usize> = arc_of.iter().enumerate().map(|(a, &arc)| (arc, a)).collect();
        if label_of.len() != arc_of.len() {
            return Err(Error::NotArcRegular);
        }
        Ok(ArcLabeling { base, arc_of, label_of })
    }

    pub fn base(&self) -> Arc {
        self.base
    }

    pub fn label(&self, arc: Arc) -> Option<usize> {
        self.label_of.get(&arc).copied()
    }

    /// The arc `g · base`.
    pub fn arc(&self, element: usize) -> Arc {
        self.arc_of[element]
    }

    pub fn len(&self) -> usize {
        self.arc_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arc_of.is_empty()
    }
}

/// `L(S(Γ))` identified with `Cay(G, C)`.
#[derive(Clone, Debug)]
pub struct LineSubdivisionForm {
    pub cayley: CayleyGraph,
    /// `L(S(Γ))`, coloured through the identification.
    pub line: ColouredGraph,
    /// Group element of each vertex of `line`; a colour-preserving isomorphism.
    pub element_of_vertex: Permutation,
}

/// Build `L(S(Γ))`, read each vertex (an edge `{x, m_xy}` of `S(Γ)`) as the
/// arc `(x, y)`, label it, and recover the connection set from the
/// neighbours of the base arc.
pub fn line_subdivision_form(g: &ColouredGraph, grp: &FiniteGroup, labeling: &ArcLabeling) -> Result<LineSubdivisionForm> {
    let (s, s_origin) = subdivision(g)?;
    let (l, l_origin) = line_graph(&s)?;
    let n = g.vertex_count();
    let mut element_of = Vec::with_capacity(l.vertex_count());
    for origin in &l_origin {
        let Origin::Edge(p, q) = *origin else { unreachable!("line graph vertices are edges") };
        let (x, mid) = if p < n { (p, q) } else { (q, p) };
        let Origin::Midpoint(u, v) = s_origin[mid] else {
            return Err(Error::Inconsistency("subdivision edge without a midpoint".into()));
        };
        let y = if u == x { v } else { u };
        let label = labeling
            .label(Arc::new(x, y))
            .ok_or_else(|| Error::Inconsistency(format!("arc ({x}, {y}) has no label")))?;
        element_of.push(label);
    }
    let element_of_vertex = Permutation::from_images(element_of)
        .map_err(|_| Error::Inconsistency("arc labels are not a bijection".into()))?;
    let base_vertex = element_of_vertex.inverse().apply(grp.identity());
    let connection: Vec<usize> = l.neighbours(base_vertex).iter().map(|&(w, _)| element_of_vertex.apply(w)).collect();

    let mut plain = grp.clone();
    plain.clear_realization();
    let cayley = cayley_graph(&plain, &connection)?;
    let mapped = l.edges().all(|(u, v, _)| cayley.graph().has_edge(element_of_vertex.apply(u), element_of_vertex.apply(v)));
    if !mapped || l.edge_count() != cayley.graph().edge_count() {
        return Err(Error::Inconsistency("L(S(graph)) is not the recovered Cayley graph".into()));
    }
    let line = l.recoloured(|u, v, _| {
        cayley.graph().colour(element_of_vertex.apply(u), element_of_vertex.apply(v)).expect("edge mapped above")
    })?;
    Ok(LineSubdivisionForm { cayley, line, element_of_vertex })
}

/// Transport a graph automorphism `h` of `Γ` to the vertex map
/// `g ↦ label(h(g · base))` of the Cayley form.
pub fn induced_vertex_map(g: &ColouredGraph, h: &Permutation, labeling: &ArcLabeling) -> Result<Permutation> {
    if !g.is_automorphism(h) {
        return Err(Error::NotAutomorphism(h.to_string()));
    }
    let images = (0..labeling.len())
        .map(|a| {
            labeling
                .label(labeling.arc(a).image(h))
                .ok_or_else(|| Error::Inconsistency("automorphism moved an arc off the graph".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::from_images(images)
}

/// Orbit of `start` under the generators' realizations, in BFS order.
pub fn orbit(grp: &FiniteGroup, start: usize) -> Vec<usize> {
    let perms = grp.realization().expect("orbit needs a realization");
    let mut seen = HashSet::from([start]);
    let mut out = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &(_, s) in grp.generators() {
            let y = perms[s].apply(x);
            if seen.insert(y) {
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out
}
