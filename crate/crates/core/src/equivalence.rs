//! Language equivalence by synchronized product search (Hopcroft–Karp):
//! pairs of states reached by the same word are unioned, and the search
//! fails as soon as a pair disagrees on finality.

use std::collections::VecDeque;

use crate::automaton::{Dfa, StateId, Word};
use crate::morphism::union_alphabet;
use crate::unionfind::UnionFind;

/// A word accepted by exactly one of `a`, `b`; `None` if `L(a) = L(b)`.
/// Breadth-first, so the witness is found among the shortest pairs visited.
pub fn distinguishing_word(a: &Dfa, b: &Dfa) -> Option<Word> {
    let letters = union_alphabet(a, b);
    let na = a.num_states();
    let dead = na + b.num_states();
    let node_a = |s: Option<StateId>| s.map_or(dead, StateId::index);
    let node_b = |s: Option<StateId>| s.map_or(dead, |s| na + s.index());
    let fin_a = |s: Option<StateId>| s.is_some_and(|s| a.is_final(s));
    let fin_b = |s: Option<StateId>| s.is_some_and(|s| b.is_final(s));

    let mut uf = UnionFind::new(dead + 1);
    let start = (Some(a.initial()), Some(b.initial()));
    uf.union(node_a(start.0), node_b(start.1));
    let mut queue = VecDeque::from([(start.0, start.1, Word::empty())]);
    while let Some((p, q, word)) = queue.pop_front() {
        if fin_a(p) != fin_b(q) {
            return Some(word);
        }
        for &c in &letters {
            let p2 = p.and_then(|p| a.step(p, c));
            let q2 = q.and_then(|q| b.step(q, c));
            if uf.union(node_a(p2), node_b(q2)) {
                let mut w = word.clone();
                w.push(c);
                queue.push_back((p2, q2, w));
            }
        }
    }
    None
}

pub fn equivalent(a: &Dfa, b: &Dfa) -> bool {
    distinguishing_word(a, b).is_none()
}
