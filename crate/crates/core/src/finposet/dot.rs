use std::fmt::Write;

use super::Poset;

/// Hasse diagram in DOT syntax: covering edges only, drawn bottom to top.
pub fn hasse_dot(x: &Poset, name: &str, label: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for i in 0..x.len() {
        writeln!(out, "  n{} [label=\"{}\"];", i, escape(&label(i))).unwrap();
    }
    for (a, b) in x.covers() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
