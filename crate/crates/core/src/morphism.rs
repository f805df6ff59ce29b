//! Morphisms between equivalent automata and isomorphism testing.

use std::collections::VecDeque;

use crate::automaton::{Dfa, StateId};

/// A state map `φ` from `source` to `target` preserving the initial state,
/// transitions and finality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Dfa,
    target: Dfa,
    map: Vec<StateId>,
}

impl Morphism {
    pub(crate) fn from_parts(source: Dfa, target: Dfa, map: Vec<StateId>) -> Self {
        debug_assert_eq!(map.len(), source.num_states());
        Morphism { source, target, map }
    }

    pub fn source(&self) -> &Dfa {
        &self.source
    }

    pub fn target(&self) -> &Dfa {
        &self.target
    }

    pub fn image(&self, s: StateId) -> StateId {
        self.map[s.index()]
    }

    pub fn map(&self) -> &[StateId] {
        &self.map
    }

    /// `φ⁻¹(t)`, sorted.
    pub fn fiber(&self, t: StateId) -> Vec<StateId> {
        self.source.states().filter(|&s| self.map[s.index()] == t).collect()
    }

    /// `#φ⁻¹(t)` for every target state `t`, indexed by target id.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.target.num_states()];
        for t in &self.map {
            sizes[t.index()] += 1;
        }
        sizes
    }

    pub fn is_isomorphism(&self) -> bool {
        self.fiber_sizes().iter().all(|&n| n == 1)
    }

    /// Re-checks the defining conditions of a morphism.
    pub fn is_valid(&self) -> bool {
        if self.map[self.source.initial().index()] != self.target.initial() {
            return false;
        }
        let letters = union_alphabet(&self.source, &self.target);
        self.source.states().all(|s| {
            let img = self.map[s.index()];
            self.source.is_final(s) == self.target.is_final(img)
                && letters.iter().all(|&c| {
                    match (self.source.step(s, c), self.target.step(img, c)) {
                        (None, None) => true,
                        (Some(t), Some(u)) => self.map[t.index()] == u,
                        _ => false,
                    }
                })
        })
    }
}

pub(crate) fn union_alphabet(a: &Dfa, b: &Dfa) -> Vec<char> {
    let mut letters: Vec<char> = a.alphabet().iter().chain(b.alphabet()).copied().collect();
    letters.sort_unstable();
    letters.dedup();
    letters
}

/// The unique morphism `a → b`, if any. Built by propagating
/// `φ(q_I) = q'_I` along transitions; letters missing from one alphabet are
/// treated as undefined there.
pub fn find_morphism(a: &Dfa, b: &Dfa) -> Option<Morphism> {
    let letters = union_alphabet(a, b);
    let mut map: Vec<Option<StateId>> = vec![None; a.num_states()];
    map[a.initial().index()] = Some(b.initial());
    let mut queue = VecDeque::from([a.initial()]);
    while let Some(s) = queue.pop_front() {
        let img = map[s.index()].unwrap();
        if a.is_final(s) != b.is_final(img) {
            return None;
        }
        for &c in &letters {
            match (a.step(s, c), b.step(img, c)) {
                (None, None) => {}
                (Some(t), Some(u)) => match map[t.index()] {
                    None => {
                        map[t.index()] = Some(u);
                        queue.push_back(t);
                    }
                    Some(prev) if prev != u => return None,
                    Some(_) => {}
                },
                _ => return None,
            }
        }
    }
    let map = map.into_iter().collect::<Option<Vec<_>>>()?;
    Some(Morphism::from_parts(a.clone(), b.clone(), map))
}

/// Equality of canonical forms: same transition table and finality under
/// the breadth-first numbering, ignoring state names.
pub fn isomorphic(a: &Dfa, b: &Dfa) -> bool {
    if a.num_states() != b.num_states() {
        return false;
    }
    let letters = union_alphabet(a, b);
    a.states().all(|s| {
        a.is_final(s) == b.is_final(s) && letters.iter().all(|&c| a.step(s, c) == b.step(s, c))
    })
}
