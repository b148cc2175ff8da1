//! Text formats: JSON lines, Graphviz DOT and exact H/V descriptions.

use crate::complex::{Complex, FlipGraph, Poset};
use crate::linalg::Rational;
use crate::polytope::HRep;
use crate::tree::PebbleTree;
use serde_json::json;
use std::fmt::Write as _;

/// One canonical JSON tree per line.
pub fn trees_jsonl(trees: &[PebbleTree]) -> String {
    trees.iter().map(|t| t.to_json() + "\n").collect()
}

fn quoted(t: &PebbleTree) -> String {
    format!("\"{}\"", t.to_json().replace('"', "\\\""))
}

/// Hasse diagram with an arc from each tree to every tree covering it.
pub fn poset_dot(poset: &Poset) -> String {
    let mut out = String::from("digraph contraction_poset {\n");
    for (i, t) in poset.trees().iter().enumerate() {
        let _ = writeln!(out, "  {} [rank={}];", quoted(t), poset.rank(i));
    }
    for (i, t) in poset.trees().iter().enumerate() {
        for &j in poset.upper_covers(i) {
            let _ = writeln!(out, "  {} -> {};", quoted(t), quoted(&poset.trees()[j]));
        }
    }
    out.push_str("}\n");
    out
}

pub fn flip_graph_dot(graph: &FlipGraph) -> String {
    let mut out = String::from("graph flip_graph {\n");
    for t in graph.vertices() {
        let _ = writeln!(out, "  {};", quoted(t));
    }
    for e in graph.edges() {
        let _ = writeln!(
            out,
            "  {} -- {} [case={}];",
            quoted(&graph.vertices()[e.ends[0]]),
            quoted(&graph.vertices()[e.ends[1]]),
            e.flip.case.number()
        );
    }
    out.push_str("}\n");
    out
}

/// One line per face: its label sets and its tree.
pub fn faces_jsonl(c: &Complex) -> String {
    let mut order: Vec<usize> = (0..c.trees().len()).collect();
    order.sort_by_cached_key(|&i| c.trees()[i].to_json());
    order
        .into_iter()
        .map(|i| {
            json!({
                "label_sets": c.faces()[i],
                "tree": serde_json::to_value(&c.trees()[i]).expect("tree"),
            })
            .to_string()
                + "\n"
        })
        .collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// Header `H ℓ b u`, one `c_1 … c_N | rhs` line per inequality, then one
/// `c_1 … c_N = 0` line per block equality.
pub fn hrep_text(h: &HRep) -> String {
    let p = h.params();
    let mut out = format!("H {} {} {}\n", p.leaves, p.balanced, p.unbalanced);
    for row in h.rows() {
        let _ = writeln!(out, "{} | {}", join(&row.normal), row.rhs);
    }
    for eq in h.equalities() {
        let _ = writeln!(out, "{} = 0", join(eq));
    }
    out
}

/// One `tree-json | x_1 … x_N` line per vertex.
pub fn vrep_text(vertices: &[(PebbleTree, Vec<Rational>)]) -> String {
    vertices
        .iter()
        .map(|(t, x)| format!("{} | {}\n", t.to_json(), join(x)))
        .collect()
}
