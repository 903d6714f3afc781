use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

use super::{ColourId, ColouredGraph};

/// `Cay(G, C)` with the natural colouring: the edge `{g, gc}` gets the
/// colour of the class `{c, c⁻¹}`, identified by its smaller element index.
#[derive(Clone, Debug, Serialize)]
pub struct CayleyGraph {
    #[serde(skip)]
    group: FiniteGroup,
    connection: Vec<usize>,
    #[serde(skip)]
    graph: ColouredGraph,
}

fn class_name(g: &FiniteGroup, c: usize) -> String {
    let ci = g.inv(c);
    if ci == c {
        format!("{{{}}}", g.name(c))
    } else {
        format!("{{{}, {}}}", g.name(c.min(ci)), g.name(c.max(ci)))
    }
}

/// Build `Cay(G, C)`. `C` must exclude the identity and be inverse-closed.
pub fn cayley_graph(g: &FiniteGroup, connection: &[usize]) -> Result<CayleyGraph> {
    let mut c = connection.to_vec();
    c.sort_unstable();
    c.dedup();
    if let Some(&bad) = c.iter().find(|&&x| x >= g.order()) {
        return Err(Error::ElementOutOfRange { index: bad, order: g.order() });
    }
    if c.contains(&g.identity()) {
        return Err(Error::ConnectionContainsIdentity);
    }
    if let Some(&x) = c.iter().find(|&&x| c.binary_search(&g.inv(x)).is_err()) {
        return Err(Error::ConnectionNotInverseClosed(g.name(x).to_string()));
    }
    let mut graph = ColouredGraph::new(g.order());
    for v in 0..g.order() {
        for &x in &c {
            let w = g.mul(v, x);
            if v < w {
                graph.add_edge(v, w, x.min(g.inv(x)))?;
            }
        }
    }
    for &x in &c {
        if x <= g.inv(x) {
            graph.set_colour_name(x, class_name(g, x));
        }
    }
    Ok(CayleyGraph { group: g.clone(), connection: c, graph })
}

/// `K_G = Cay(G, G ∖ {e})`.
pub fn complete_colour_graph(g: &FiniteGroup) -> Result<CayleyGraph> {
    if g.order() < 2 {
        return Err(Error::DegenerateGroup(g.order()));
    }
    cayley_graph(g, &(1..g.order()).collect::<Vec<_>>())
}

impl CayleyGraph {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// The connection set, sorted by element index.
    pub fn connection(&self) -> &[usize] {
        &self.connection
    }

    pub fn graph(&self) -> &ColouredGraph {
        &self.graph
    }

    /// Inverse classes `{c, c⁻¹}` of the connection set, keyed by colour id.
    pub fn colour_classes(&self) -> Vec<(ColourId, Vec<usize>)> {
        let g = &self.group;
        self.connection
            .iter()
            .filter(|&&c| c <= g.inv(c))
            .map(|&c| (c, if g.inv(c) == c { vec![c] } else { vec![c, g.inv(c)] }))
            .collect()
    }

    pub fn colour_of_element(&self, c: usize) -> ColourId {
        c.min(self.group.inv(c))
    }

    pub fn connection_names(&self) -> Vec<String> {
        self.connection.iter().map(|&c| self.group.name(c).to_string()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, quaternion};

    #[test]
    fn triangle_has_one_colour() {
        let c3 = cyclic(3).unwrap();
        let cg = cayley_graph(&c3, &[1, 2]).unwrap();
        assert_eq!(cg.graph().edge_count(), 3);
        assert_eq!(cg.graph().colours().len(), 1);
        assert_eq!(cg.graph().colour_name(1), "{r, r^2}");
    }

    #[test]
    fn refuses_bad_connection_sets() {
        let c4 = cyclic(4).unwrap();
        assert_eq!(cayley_graph(&c4, &[0, 2]).unwrap_err(), Error::ConnectionContainsIdentity);
        assert!(matches!(cayley_graph(&c4, &[1]), Err(Error::ConnectionNotInverseClosed(_))));
        assert!(cayley_graph(&c4, &[9]).is_err());
    }

    #[test]
    fn involution_gives_perfect_matching() {
        let c4 = cyclic(4).unwrap();
        let cg = cayley_graph(&c4, &[2]).unwrap();
        assert_eq!(cg.graph().edge_count(), 2);
        assert!((0..4).all(|v| cg.graph().degree(v) == 1));
    }

    #[test]
    fn complete_colour_graphs() {
        assert_eq!(complete_colour_graph(&cyclic(3).unwrap()).unwrap().graph().colours().len(), 1);
        let k4 = complete_colour_graph(&cyclic(4).unwrap()).unwrap();
        assert_eq!(k4.graph().edge_count(), 6);
        assert_eq!(k4.graph().colours().len(), 2);
        assert_eq!(complete_colour_graph(&quaternion()).unwrap().graph().colours().len(), 4);
        assert_eq!(complete_colour_graph(&cyclic(1).unwrap()).unwrap_err(), Error::DegenerateGroup(1));
    }
}
