//! Graphviz export of a filtered complex.

use std::fmt::Write;

use gkm_core::graphs::{Filtration, SimplicialGraphComplex};

const PALETTE: [&str; 6] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"];

/// A digraph whose vertices are labelled with their filtration index and whose
/// edges point from `b_j` down to `b_s`, coloured by the stratum `F_j`.
pub fn to_dot(name: &str, complex: &SimplicialGraphComplex, filt: &Filtration) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", name.replace('"', "'")).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for (j, v) in filt.ordering().iter().enumerate() {
        writeln!(out, "  \"{v}\" [label=\"{v}\\nb{j}\"];").unwrap();
    }
    for j in 0..filt.len() {
        let color = PALETTE[j % PALETTE.len()];
        for e in filt.downward_edges(j) {
            let members: Vec<&str> = complex
                .members_containing(&e.undirected())
                .into_iter()
                .map(|i| complex.members()[i].name())
                .collect();
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [color=\"{color}\", penwidth=2, label=\"F{j}\", tooltip=\"{}\"];",
                e.source,
                e.target,
                members.join(", ")
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
