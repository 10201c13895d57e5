//! Graphviz DOT output for Hasse diagrams, drawn bottom to top.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::blocks::LabeledLattice;
use crate::congruence::{CongruenceEngine, PrincipalPoset};
use crate::graph::Graph;
use crate::order::{Lattice, Poset};
use crate::representation::{Representation, Role};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram of `p`; elements with a label are drawn as labelled
/// ellipses, the rest as points.
pub fn poset_dot(p: &Poset, labels: &BTreeMap<u32, String>) -> String {
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=point];\n  edge [arrowhead=none];\n");
    for (x, l) in labels {
        let _ = writeln!(s, "  {x} [shape=ellipse, label=\"{}\"];", escape(l));
    }
    for (x, y) in p.covers() {
        let _ = writeln!(s, "  {x} -> {y};");
    }
    s.push_str("}\n");
    s
}

/// Hasse diagram with bounds labelled `0` and `1`.
pub fn lattice_dot(l: &Lattice) -> String {
    let labels = BTreeMap::from([(l.bottom(), "0".to_string()), (l.top(), "1".to_string())]);
    poset_dot(l.poset(), &labels)
}

/// Hasse diagram with role labels; an element with several roles lists all.
pub fn labeled_dot(b: &LabeledLattice) -> String {
    let mut labels: BTreeMap<u32, String> = BTreeMap::new();
    for (k, &v) in &b.labels {
        let e = labels.entry(v).or_default();
        if !e.is_empty() {
            e.push_str(" / ");
        }
        e.push_str(&k.to_string());
    }
    poset_dot(b.lattice.poset(), &labels)
}

/// `Princ L`, each node annotated with its generating pair and the number
/// of blocks of the congruence.
pub fn princ_dot(pp: &PrincipalPoset, engine: &CongruenceEngine) -> String {
    let labels = pp
        .reps
        .iter()
        .zip(&pp.sets)
        .enumerate()
        .map(|(i, ((a, b), set))| {
            let blocks = engine.partition(set).block_count();
            (i as u32, format!("con({a},{b})\\n{blocks} blocks"))
        })
        .collect();
    poset_dot(&pp.poset, &labels)
}

/// Undirected graph.
pub fn graph_dot(g: &Graph) -> String {
    let mut s = String::from("graph g {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(s, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

/// The constructed lattice with every inflated block collapsed to one grey
/// oval between its interval's endpoints; frame elements keep their roles.
pub fn representation_dot(rep: &Representation) -> String {
    let l = rep.lattice();
    let frame = rep.frame.lattice();
    let mut inside = vec![None; l.len()];
    for (i, c) in rep.inflated.copies.iter().enumerate() {
        for &x in &c.map {
            if x != c.interval.lo && x != c.interval.hi {
                inside[x as usize] = Some(i);
            }
        }
    }
    let mut s = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=point];\n  edge [arrowhead=none];\n");
    for x in 0..frame.len() {
        let label = match &rep.frame.roles()[x] {
            Role::Bottom => "0".to_string(),
            Role::Top => "1".to_string(),
            Role::IntervalLo(k) => format!("a{k}"),
            Role::IntervalHi(k) => format!("b{k}"),
            Role::Anchor | Role::Gadget(..) => continue,
        };
        let _ = writeln!(s, "  {x} [shape=plaintext, label=\"{label}\"];");
    }
    for (i, c) in rep.inflated.copies.iter().enumerate() {
        let _ = writeln!(s, "  s{i} [shape=ellipse, style=filled, fillcolor=gray80, label=\"S({})\"];", c.iota);
        let _ = writeln!(s, "  {} -> s{i};\n  s{i} -> {};", c.interval.lo, c.interval.hi);
    }
    for (x, y) in l.covers() {
        if inside[x as usize].is_none() && inside[y as usize].is_none() {
            let _ = writeln!(s, "  {x} -> {y};");
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_drawn_upward() {
        let d = lattice_dot(&Lattice::boolean(2));
        assert!(d.contains("rankdir=BT"));
        assert_eq!(d.matches(" -> ").count(), 4);
        assert!(d.contains("label=\"0\""));
    }
}
