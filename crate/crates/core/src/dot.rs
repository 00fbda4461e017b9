//! Graphviz export of Hasse diagrams (cover relations only).

use std::fmt::Write;

use crate::birkhoff::DownsetLattice;
use crate::io::format_set;
use crate::poset::Poset;
use crate::valuation::{Valuation, WeightFunction};

fn quote(label: &str) -> String {
    let mut out = String::with_capacity(label.len() + 2);
    out.push('"');
    for c in label.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Hasse diagram of `poset`, bottom to top, optionally labeling each node
/// with its weight.
pub fn poset_dot(poset: &Poset, graph: &str, weights: Option<&WeightFunction>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(graph)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (x, name) in poset.elements().iter().enumerate() {
        let label = match weights {
            Some(w) => format!("{name} w={}", w.get(x)),
            None => name.clone(),
        };
        writeln!(out, "  n{x} [label={}];", quote(&label)).unwrap();
    }
    for (x, y) in poset.covers() {
        writeln!(out, "  n{x} -> n{y};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of the downset lattice, optionally labeling each node with
/// its value.
pub fn lattice_dot(lattice: &DownsetLattice, valuation: Option<&Valuation>) -> String {
    let p = lattice.poset();
    let mut out = String::new();
    writeln!(out, "digraph \"lattice\" {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (i, s) in lattice.downsets().iter().enumerate() {
        let set = format!("{{{}}}", format_set(p, s).trim_start_matches('∅'));
        let label = match valuation {
            Some(v) => format!("{set} v={}", v.value(i)),
            None => set,
        };
        writeln!(out, "  d{i} [label={}];", quote(&label)).unwrap();
    }
    for (lo, hi) in lattice.covers() {
        writeln!(out, "  d{lo} -> d{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}
