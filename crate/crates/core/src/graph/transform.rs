//! Complete bipartite graphs, subdivision and line graphs.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;

use super::ColouredGraph;

/// Where a vertex of a derived graph came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Origin {
    /// An original vertex.
    Vertex(usize),
    /// The vertex subdividing the original edge `{u, v}`, `u < v`.
    Midpoint(usize, usize),
    /// The original edge `{u, v}`, `u < v`.
    Edge(usize, usize),
}

/// `K_{n,m}` with part A at `0..n` and part B at `n..n+m`, one colour.
pub fn complete_bipartite(n: usize, m: usize) -> ColouredGraph {
    let edges = (0..n).flat_map(|a| (0..m).map(move |b| (a, n + b, 0)));
    ColouredGraph::from_edges(n + m, edges).expect("complete bipartite edges are simple")
}

/// `S(Γ)`: original vertices keep their indices, the midpoint of the `k`-th
/// edge (in edge order) is vertex `|V| + k`. Colours are discarded.
pub fn subdivision(g: &ColouredGraph) -> Result<(ColouredGraph, Vec<Origin>)> {
    let n = g.vertex_count();
    let mut origin: Vec<Origin> = (0..n).map(Origin::Vertex).collect();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for (k, (u, v, _)) in g.edges().enumerate() {
        origin.push(Origin::Midpoint(u, v));
        edges.push((u, n + k, 0));
        edges.push((v, n + k, 0));
    }
    Ok((ColouredGraph::from_edges(n + g.edge_count(), edges)?, origin))
}

/// `L(Γ)`: one vertex per edge (in edge order), adjacent when the edges
/// share an endpoint. Colours are discarded.
pub fn line_graph(g: &ColouredGraph) -> Result<(ColouredGraph, Vec<Origin>)> {
    let origin: Vec<Origin> = g.edges().map(|(u, v, _)| Origin::Edge(u, v)).collect();
    let index: HashMap<(usize, usize), usize> = g.edges().enumerate().map(|(k, (u, v, _))| ((u, v), k)).collect();
    let mut edges = Vec::new();
    for v in 0..g.vertex_count() {
        let incident: Vec<usize> = g.neighbours(v).iter().map(|&(w, _)| index[&(v.min(w), v.max(w))]).collect();
        for (i, &a) in incident.iter().enumerate() {
            for &b in &incident[i + 1..] {
                edges.push((a, b, 0));
            }
        }
    }
    Ok((ColouredGraph::from_edges(origin.len(), edges)?, origin))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> ColouredGraph {
        ColouredGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 0))).unwrap()
    }

    #[test]
    fn bipartite_counts() {
        let k33 = complete_bipartite(3, 3);
        assert_eq!((k33.vertex_count(), k33.edge_count()), (6, 9));
        assert_eq!(complete_bipartite(1, 1).edge_count(), 1);
        let k55 = complete_bipartite(5, 5);
        assert_eq!((k55.edge_count(), k55.arcs().len()), (25, 50));
        assert_eq!(complete_bipartite(3, 3).arcs().len(), 18);
    }

    #[test]
    fn subdivision_counts() {
        let (s, origin) = subdivision(&complete_bipartite(3, 3)).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (15, 18));
        assert_eq!(origin[6], Origin::Midpoint(0, 3));
        let (p, _) = subdivision(&complete_bipartite(1, 1)).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (3, 2));
        let (c8, _) = subdivision(&cycle(4)).unwrap();
        assert_eq!(c8.edge_count(), 8);
        assert!((0..8).all(|v| c8.degree(v) == 2));
        assert!(c8.is_connected());
    }

    #[test]
    fn line_graph_examples() {
        let path = ColouredGraph::from_edges(3, [(0, 1, 0), (1, 2, 0)]).unwrap();
        let (l, _) = line_graph(&path).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (2, 1));
        let (k3, _) = line_graph(&cycle(3)).unwrap();
        assert_eq!((k3.vertex_count(), k3.edge_count()), (3, 3));
        let (s, _) = subdivision(&complete_bipartite(3, 3)).unwrap();
        let (ls, origin) = line_graph(&s).unwrap();
        assert_eq!(ls.vertex_count(), 18);
        assert!((0..18).all(|v| ls.degree(v) == 3));
        assert!(ls.is_connected());
        assert!(matches!(origin[0], Origin::Edge(0, _)));
    }

    #[test]
    fn line_graph_edge_count_formula() {
        for g in [cycle(5), complete_bipartite(2, 4), complete_bipartite(3, 3)] {
            let (l, _) = line_graph(&g).unwrap();
            let expected: usize = (0..g.vertex_count()).map(|v| g.degree(v) * g.degree(v).saturating_sub(1) / 2).sum();
            assert_eq!(l.edge_count(), expected);
        }
    }
}
