//! Graphviz export of Hasse diagrams.

use std::fmt::Write;

use super::FiniteLattice;

/// Renders the Hasse diagram: cover edges only, bottom at the bottom, one
/// rank per height. `labels` overrides the lattice's own labels.
pub fn to_dot(l: &FiniteLattice, name: &str, labels: Option<&[String]>) -> String {
    let labels = labels.unwrap_or(l.labels());
    let heights = l.heights();
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=plaintext, fontsize=11];\n");
    out.push_str("  edge [arrowhead=none];\n");
    for (i, label) in labels.iter().enumerate().take(l.len()) {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(label));
    }
    let max_h = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=max_h {
        let rank: Vec<String> = (0..l.len())
            .filter(|&i| heights[i] == h)
            .map(|i| format!("n{i}"))
            .collect();
        if rank.len() > 1 {
            let _ = writeln!(out, "  {{ rank=same; {}; }}", rank.join("; "));
        }
    }
    for (a, b) in l.cover_pairs() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
