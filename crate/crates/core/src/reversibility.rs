//! Irreversible states, the reversible/irreversible split, and the
//! forbidden pattern deciding whether a language is reversible.

use std::collections::VecDeque;

use crate::automaton::{Dfa, StateId, Word};
use crate::error::{Error, Result};
use crate::minimize::{is_minimum, minimize};
use crate::scc::{sccs, SccDecomposition};

/// States entered by at least two transitions on a same letter, sorted.
pub fn irreversible_states(dfa: &Dfa) -> Vec<StateId> {
    dfa.reverse_table()
        .iter()
        .enumerate()
        .filter(|(_, row)| row.iter().any(|preds| preds.len() > 1))
        .map(|(s, _)| StateId(s))
        .collect()
}

/// The states reachable from irreversible states form the irreversible
/// part; the rest is the reversible part. The border collects the
/// transitions crossing from the former into the latter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartSplit {
    reversible: Vec<StateId>,
    irreversible: Vec<StateId>,
    border: Vec<(StateId, char, StateId)>,
    in_irreversible: Vec<bool>,
}

impl PartSplit {
    pub fn reversible_part(&self) -> &[StateId] {
        &self.reversible
    }

    pub fn irreversible_part(&self) -> &[StateId] {
        &self.irreversible
    }

    pub fn border(&self) -> &[(StateId, char, StateId)] {
        &self.border
    }

    pub fn is_in_irreversible_part(&self, s: StateId) -> bool {
        self.in_irreversible[s.index()]
    }
}

pub fn split_parts(dfa: &Dfa) -> PartSplit {
    let mut inside = vec![false; dfa.num_states()];
    let mut stack = irreversible_states(dfa);
    for s in &stack {
        inside[s.index()] = true;
    }
    while let Some(s) = stack.pop() {
        for t in dfa.successors(s) {
            if !inside[t.index()] {
                inside[t.index()] = true;
                stack.push(t);
            }
        }
    }
    let (irreversible, reversible) = dfa.states().partition(|s| inside[s.index()]);
    let border = dfa
        .transitions()
        .filter(|(s, _, t)| !inside[s.index()] && inside[t.index()])
        .collect();
    PartSplit { reversible, irreversible, border, in_irreversible: inside }
}

pub fn is_reversible_dfa(dfa: &Dfa) -> bool {
    dfa.is_reversible()
}

/// `δ(p, a) = δ(q, a) = r` with `p ≠ q` and `δ(r, w) = q`, so that
/// `δ(q, a·w) = q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenPatternWitness {
    pub p: StateId,
    pub q: StateId,
    pub a: char,
    pub w: Word,
    pub r: StateId,
}

impl ForbiddenPatternWitness {
    /// Checks the defining equations on `dfa`.
    pub fn validate(&self, dfa: &Dfa) -> bool {
        let aw = Word::from(vec![self.a]).concat(&self.w);
        self.p != self.q
            && dfa.step(self.p, self.a) == Some(self.r)
            && dfa.step(self.q, self.a) == Some(self.r)
            && dfa.run_from(self.q, &aw).ok().flatten() == Some(self.q)
    }

    pub(crate) fn into_error(self, dfa: &Dfa) -> Error {
        Error::ForbiddenPattern {
            p: dfa.name(self.p).to_string(),
            q: dfa.name(self.q).to_string(),
            r: dfa.name(self.r).to_string(),
            letter: self.a,
        }
    }
}

/// Shortest word from `from` to `to` using only states of one SCC.
fn path_within(dfa: &Dfa, scc: &SccDecomposition, from: StateId, to: StateId) -> Option<Word> {
    let comp = scc.component_of(from);
    let mut prev: Vec<Option<(StateId, char)>> = vec![None; dfa.num_states()];
    let mut seen = vec![false; dfa.num_states()];
    seen[from.index()] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(s) = queue.pop_front() {
        if s == to {
            let mut letters = Vec::new();
            let mut cur = to;
            while let Some((p, c)) = prev[cur.index()] {
                letters.push(c);
                cur = p;
            }
            letters.reverse();
            return Some(Word::from(letters));
        }
        for &c in dfa.alphabet() {
            if let Some(t) = dfa.step(s, c) {
                if !seen[t.index()] && scc.component_of(t) == comp {
                    seen[t.index()] = true;
                    prev[t.index()] = Some((s, c));
                    queue.push_back(t);
                }
            }
        }
    }
    None
}

/// Pattern search on any automaton: a same-letter pair of transitions into
/// `r` where one source lies in the SCC of `r`.
pub(crate) fn forbidden_pattern_in(dfa: &Dfa) -> Option<ForbiddenPatternWitness> {
    let scc = sccs(dfa);
    let table = dfa.reverse_table();
    for r in dfa.states() {
        for (i, &a) in dfa.alphabet().iter().enumerate() {
            let preds = &table[r.index()][i];
            if preds.len() < 2 {
                continue;
            }
            let Some(&q) = preds.iter().find(|&&q| scc.same_component(q, r)) else {
                continue;
            };
            let p = *preds.iter().find(|&&p| p != q).expect("at least two sources");
            let w = path_within(dfa, &scc, r, q).expect("same component");
            return Some(ForbiddenPatternWitness { p, q, a, w, r });
        }
    }
    None
}

/// The forbidden pattern in a minimum automaton; `None` iff the language
/// is reversible.
pub fn find_forbidden_pattern(min_dfa: &Dfa) -> Result<Option<ForbiddenPatternWitness>> {
    if !is_minimum(min_dfa) {
        return Err(Error::NotMinimized);
    }
    Ok(forbidden_pattern_in(min_dfa))
}

/// Whether some reversible automaton accepts `L(dfa)`.
pub fn is_reversible_language(dfa: &Dfa) -> bool {
    forbidden_pattern_in(&minimize(dfa).0).is_none()
}
