//! Colour-preserving automorphisms by backtracking along a BFS spanning tree.

use std::collections::{HashSet, VecDeque};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{ColourId, ColouredGraph};
use crate::group::closure;
use crate::perm::Permutation;

/// Upper bound on the number of automorphisms materialized by one search.
pub const AUTOMORPHISM_LIMIT: usize = 1 << 20;

pub fn is_colour_preserving(g: &ColouredGraph, p: &Permutation) -> Result<bool> {
    if p.degree() != g.vertex_count() {
        return Err(Error::DegreeMismatch { left: p.degree(), right: g.vertex_count() });
    }
    // p is a bijection, so mapping every edge onto an equally coloured edge
    // also maps non-edges onto non-edges.
    Ok(g.edges().all(|(u, v, c)| g.colour(p.apply(u), p.apply(v)) == Some(c)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

impl SearchStats {
    pub fn absorb(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.elapsed += other.elapsed;
    }
}

/// The colour-preserving automorphism group of a connected coloured graph.
#[derive(Clone, Debug)]
pub struct AutGroupResult {
    pub vertex_count: usize,
    /// All elements, sorted by image array.
    pub elements: Vec<Permutation>,
    /// A generating subset of `elements`.
    pub generators: Vec<Permutation>,
    pub stats: SearchStats,
}

impl AutGroupResult {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Elements fixing `v`.
    pub fn stabiliser(&self, v: usize) -> impl Iterator<Item = &Permutation> {
        self.elements.iter().filter(move |p| p.apply(v) == v)
    }
}

struct Backtrack<'a> {
    g: &'a ColouredGraph,
    order: Vec<usize>,
    parent: Vec<(usize, ColourId)>,
    image: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Permutation>,
    nodes: u64,
    limit: usize,
}

impl Backtrack<'_> {
    fn consistent(&self, level: usize, w: usize) -> bool {
        let v = self.order[level];
        self.order[..level].iter().all(|&u| self.g.colour(v, u) == self.g.colour(w, self.image[u]))
    }

    fn descend(&mut self, level: usize) -> Result<()> {
        if level == self.order.len() {
            let p = Permutation::from_images(self.image.clone())
                .map_err(|_| Error::Inconsistency("search produced a non-bijection".into()))?;
            if !is_colour_preserving(self.g, &p)? {
                return Err(Error::Inconsistency("search accepted a non-automorphism".into()));
            }
            if self.found.len() == self.limit {
                return Err(Error::AutomorphismCap { cap: self.limit });
            }
            self.found.push(p);
            return Ok(());
        }
        let v = self.order[level];
        let (par, colour) = self.parent[v];
        let candidates: Vec<usize> = self.g.neighbours(self.image[par])
            .iter()
            .filter(|&&(w, c)| c == colour && !self.used[w])
            .map(|&(w, _)| w)
            .collect();
        for w in candidates {
            self.try_assign(level, w)?;
        }
        Ok(())
    }

    fn try_assign(&mut self, level: usize, w: usize) -> Result<()> {
        self.nodes += 1;
        if !self.consistent(level, w) {
            return Ok(());
        }
        let v = self.order[level];
        self.image[v] = w;
        self.used[w] = true;
        let r = self.descend(level + 1);
        self.used[w] = false;
        r
    }
}

/// All colour-preserving automorphisms sending vertex 0 into `root_images`.
pub(crate) fn search_from_root(
    g: &ColouredGraph,
    root_images: impl IntoIterator<Item = usize>,
    limit: usize,
) -> Result<(Vec<Permutation>, SearchStats)> {
    let start = Instant::now();
    let n = g.vertex_count();
    if n == 0 {
        return Ok((vec![Permutation::identity(0)], SearchStats::default()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![(usize::MAX, 0); n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(w, c) in g.neighbours(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = (v, c);
                queue.push_back(w);
            }
        }
    }
    let mut bt = Backtrack {
        g,
        order,
        parent,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
        nodes: 0,
        limit,
    };
    for w in root_images {
        if w < n && g.degree(w) == g.degree(0) {
            bt.try_assign(0, w)?;
        }
    }
    let mut found = bt.found;
    found.sort();
    Ok((found, SearchStats { nodes: bt.nodes, elapsed: start.elapsed() }))
}

/// A generating subset, chosen greedily in the given order.
pub(crate) fn greedy_generators(elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: HashSet<Permutation> = elements.first().map(|p| Permutation::identity(p.degree())).into_iter().collect();
    for p in elements {
        if span.contains(p) {
            continue;
        }
        gens.push(p.clone());
        let grp = closure(&gens, elements.len().max(1)).expect("subgroup of a finite group fits its order");
        span = grp.realization().expect("closure is realized").iter().cloned().collect();
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}

/// The full colour-preserving automorphism group of a connected graph.
pub fn colour_preserving_automorphisms(g: &ColouredGraph) -> Result<AutGroupResult> {
    let (elements, stats) = search_from_root(g, 0..g.vertex_count(), AUTOMORPHISM_LIMIT)?;
    let generators = greedy_generators(&elements);
    Ok(AutGroupResult { vertex_count: g.vertex_count(), elements, generators, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;
    use crate::graph::{cayley_graph, complete_colour_graph};

    #[test]
    fn identity_is_colour_preserving() {
        let g = ColouredGraph::from_edges(3, [(0, 1, 0), (1, 2, 1)]).unwrap();
        assert!(is_colour_preserving(&g, &Permutation::identity(3)).unwrap());
        assert!(is_colour_preserving(&g, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn swapping_path_end_with_middle_is_rejected() {
        let g = ColouredGraph::from_edges(3, [(0, 1, 0), (1, 2, 0)]).unwrap();
        let p = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        assert!(!is_colour_preserving(&g, &p).unwrap());
    }

    #[test]
    fn complete_colour_graph_of_c3() {
        let aut = colour_preserving_automorphisms(complete_colour_graph(&cyclic(3).unwrap()).unwrap().graph()).unwrap();
        assert_eq!(aut.order(), 6);
        assert!(aut.elements[0].is_identity());
        assert_eq!(closure(&aut.generators, 100).unwrap().order(), 6);
    }

    #[test]
    fn hexagon_has_twelve() {
        let c6 = cyclic(6).unwrap();
        let cg = cayley_graph(&c6, &[1, 5]).unwrap();
        assert_eq!(colour_preserving_automorphisms(cg.graph()).unwrap().order(), 12);
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = ColouredGraph::from_edges(4, [(0, 1, 0), (2, 3, 0)]).unwrap();
        assert_eq!(colour_preserving_automorphisms(&g).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn colours_restrict_the_group() {
        // Path 0-1-2 with distinct colours has only the identity.
        let g = ColouredGraph::from_edges(3, [(0, 1, 0), (1, 2, 1)]).unwrap();
        assert_eq!(colour_preserving_automorphisms(&g).unwrap().order(), 1);
    }
}
