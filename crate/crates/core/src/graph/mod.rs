//! Simple undirected graphs with coloured edges.

mod cayley;
mod transform;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use cayley::{cayley_graph, complete_colour_graph, CayleyGraph};
pub use transform::{complete_bipartite, line_graph, subdivision, Origin};

pub type ColourId = usize;

const NO_EDGE: usize = usize::MAX;

/// An oriented edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

impl Arc {
    pub fn new(tail: usize, head: usize) -> Self {
        Arc { tail, head }
    }

    pub fn reversed(self) -> Self {
        Arc { tail: self.head, head: self.tail }
    }

    pub fn image(self, p: &Permutation) -> Self {
        Arc { tail: p.apply(self.tail), head: p.apply(self.head) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredGraph {
    vertex_count: usize,
    edges: BTreeMap<(usize, usize), ColourId>,
    colour_names: BTreeMap<ColourId, String>,
    adjacency: Vec<Vec<(usize, ColourId)>>,
    matrix: Vec<usize>,
}

impl ColouredGraph {
    pub fn new(vertex_count: usize) -> Self {
        ColouredGraph {
            vertex_count,
            edges: BTreeMap::new(),
            colour_names: BTreeMap::new(),
            adjacency: vec![Vec::new(); vertex_count],
            matrix: vec![NO_EDGE; vertex_count * vertex_count],
        }
    }

    /// Build from an edge list; every edge must be new and loop-free.
    pub fn from_edges(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize, ColourId)>) -> Result<Self> {
        let mut g = ColouredGraph::new(vertex_count);
        for (u, v, c) in edges {
            g.add_edge(u, v, c)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, colour: ColourId) -> Result<()> {
        let n = self.vertex_count;
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, count: n });
            }
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
        }
        if colour == NO_EDGE {
            return Err(Error::InvalidArgument("reserved colour id".into()));
        }
        let key = (u.min(v), u.max(v));
        if self.edges.insert(key, colour).is_some() {
            return Err(Error::InvalidArgument(format!("repeated edge {{{u}, {v}}}")));
        }
        self.matrix[u * n + v] = colour;
        self.matrix[v * n + u] = colour;
        insert_sorted(&mut self.adjacency[u], (v, colour));
        insert_sorted(&mut self.adjacency[v], (u, colour));
        Ok(())
    }

    pub fn set_colour_name(&mut self, colour: ColourId, name: impl Into<String>) {
        self.colour_names.insert(colour, name.into());
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(u, v, colour)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, ColourId)> + '_ {
        self.edges.iter().map(|(&(u, v), &c)| (u, v, c))
    }

    #[inline]
    pub fn colour(&self, u: usize, v: usize) -> Option<ColourId> {
        match self.matrix[u * self.vertex_count + v] {
            NO_EDGE => None,
            c => Some(c),
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.colour(u, v).is_some()
    }

    /// Neighbours of `v` with edge colours, sorted by neighbour.
    pub fn neighbours(&self, v: usize) -> &[(usize, ColourId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn colours(&self) -> BTreeSet<ColourId> {
        self.edges.values().copied().collect()
    }

    /// Display label of a colour; the numeric id when unnamed.
    pub fn colour_name(&self, colour: ColourId) -> String {
        self.colour_names.get(&colour).cloned().unwrap_or_else(|| colour.to_string())
    }

    /// Replace every edge colour through `recolour`.
    pub fn recoloured(&self, recolour: impl Fn(usize, usize, ColourId) -> ColourId) -> Result<Self> {
        ColouredGraph::from_edges(self.vertex_count, self.edges().map(|(u, v, c)| (u, v, recolour(u, v, c))))
    }

    /// Both orientations of every edge, sorted by `(tail, head)`.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut arcs: Vec<Arc> = self.edges().flat_map(|(u, v, _)| [Arc::new(u, v), Arc::new(v, u)]).collect();
        arcs.sort_unstable();
        arcs
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.vertex_count
    }

    /// Whether `p` maps edges onto edges, ignoring colours.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.vertex_count && self.edges().all(|(u, v, _)| self.has_edge(p.apply(u), p.apply(v)))
    }
}

fn insert_sorted(list: &mut Vec<(usize, ColourId)>, item: (usize, ColourId)) {
    let pos = list.partition_point(|x| *x < item);
    list.insert(pos, item);
}
