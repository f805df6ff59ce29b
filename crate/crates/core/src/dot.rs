//! Graphviz export.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::automaton::{Dfa, StateId};
use crate::reversibility::PartSplit;

const REVERSIBLE_FILL: &str = "white";
const IRREVERSIBLE_FILL: &str = "lightgray";

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders `d` as a DOT digraph. Accepting states are double circles.
/// With a split, states of the irreversible part are shaded and border
/// transitions dashed. Parallel transitions share one labelled edge.
pub fn emit_dot(d: &Dfa, highlight: Option<&PartSplit>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph dfa {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    writeln!(out, "  __start [shape=point, label=\"\"];").unwrap();
    for s in d.states() {
        let mut attrs = Vec::new();
        if d.is_final(s) {
            attrs.push("shape=doublecircle".to_string());
        }
        if let Some(split) = highlight {
            let fill = if split.is_in_irreversible_part(s) { IRREVERSIBLE_FILL } else { REVERSIBLE_FILL };
            attrs.push(format!("style=filled, fillcolor={fill}"));
        }
        if attrs.is_empty() {
            writeln!(out, "  {};", quote(d.name(s))).unwrap();
        } else {
            writeln!(out, "  {} [{}];", quote(d.name(s)), attrs.join(", ")).unwrap();
        }
    }
    writeln!(out, "  __start -> {};", quote(d.name(d.initial()))).unwrap();

    let mut edges: BTreeMap<(StateId, StateId), Vec<char>> = BTreeMap::new();
    for (s, c, t) in d.transitions() {
        edges.entry((s, t)).or_default().push(c);
    }
    let dashed = |s: StateId, t: StateId| {
        highlight.is_some_and(|split| split.border().iter().any(|&(x, _, y)| x == s && y == t))
    };
    for ((s, t), letters) in edges {
        let label: Vec<String> = letters.iter().map(char::to_string).collect();
        let style = if dashed(s, t) { ", style=dashed" } else { "" };
        writeln!(
            out,
            "  {} -> {} [label={}{style}];",
            quote(d.name(s)),
            quote(d.name(t)),
            quote(&label.join(","))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
