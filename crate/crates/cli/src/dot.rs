//! Graphviz export of coloured Cayley graphs.

use std::collections::BTreeSet;
use std::fmt::Write;

use cca_core::graph::CayleyGraph;

/// Edge colours, assigned to colour classes in increasing id order.
pub const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(name: &str, cg: &CayleyGraph) -> String {
    let g = cg.group();
    let graph = cg.graph();
    let colours: Vec<usize> = graph.colours().into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(name)).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for v in 0..g.order() {
        writeln!(out, "  {v} [label={}];", quote(g.name(v))).unwrap();
    }
    for (u, v, c) in graph.edges() {
        let slot = colours.binary_search(&c).expect("edge colour is listed");
        writeln!(
            out,
            "  {u} -- {v} [color={}, label={}];",
            quote(PALETTE[slot % PALETTE.len()]),
            quote(&graph.colour_name(c))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
