//! Constructions producing reversible automata: alternative minimal ones,
//! arbitrarily large reduced ones, and random automata for testing.

mod alternate;
mod random;
mod reduced;

pub use alternate::gen_alt_minimal;
pub use random::{random_cover, random_dfa};
pub use reduced::gen_reduced;

use std::collections::VecDeque;

use crate::automaton::{Dfa, StateId, Word};
use crate::conversion::{copy_counts, CopyCount};
use crate::error::Result;
use crate::scc::sccs;

/// How the letter `b` entering `s` witnesses the hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisCase {
    /// At least two `b`-transitions enter `s`.
    DoubleBIndegree,
    /// `δ(r, b) = s` with `c(r) > 1`.
    IrreversibleBSource(StateId),
}

/// A state on a loop, a nonempty path `u` from it to `s` ending with `a`,
/// and a letter `b ≠ a` entering `s` in one of the ways of
/// [`HypothesisCase`]. Its existence implies infinitely many reduced
/// reversible automata for the language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrevHypothesisWitness {
    pub loop_state: StateId,
    pub path: Word,
    pub s: StateId,
    pub a: char,
    pub b: char,
    pub case: HypothesisCase,
}

impl IrrevHypothesisWitness {
    /// Checks the witness against the minimum automaton `m`.
    pub fn validate(&self, m: &Dfa) -> bool {
        let Ok(counts) = copy_counts(m) else { return false };
        self.validate_with(m, &counts)
    }

    pub(crate) fn validate_with(&self, m: &Dfa, counts: &CopyCount) -> bool {
        if self.loop_state.index() >= m.num_states() || self.s.index() >= m.num_states() {
            return false;
        }
        let scc = sccs(m);
        let preds = match m.reverse_delta(self.s, self.b) {
            Ok(p) => p,
            Err(_) => return false,
        };
        let case_holds = match self.case {
            HypothesisCase::DoubleBIndegree => preds.len() > 1,
            HypothesisCase::IrreversibleBSource(r) => preds.contains(&r) && counts.get(r) > 1,
        };
        scc.is_nontrivial(scc.component_of(self.loop_state))
            && self.path.last() == Some(self.a)
            && self.a != self.b
            && m.run_from(self.loop_state, &self.path).ok().flatten() == Some(self.s)
            && case_holds
    }
}

fn case_for(m: &Dfa, counts: &CopyCount, s: StateId, b: char) -> Option<HypothesisCase> {
    let preds = m.reverse_delta(s, b).ok()?;
    if preds.len() > 1 {
        Some(HypothesisCase::DoubleBIndegree)
    } else {
        preds
            .into_iter()
            .find(|&r| counts.get(r) > 1)
            .map(HypothesisCase::IrreversibleBSource)
    }
}

/// The first witness of the hypothesis, trying loop components downstream
/// first, then loop states, targets `s` and letters in canonical order.
pub fn find_irrev_hypothesis(m: &Dfa) -> Result<Option<IrrevHypothesisWitness>> {
    let counts = copy_counts(m)?;
    let scc = sccs(m);
    for c in scc.reverse_topological_order() {
        if !scc.is_nontrivial(c) {
            continue;
        }
        for &q in scc.component(c) {
            let words = m.shortest_words_from(q);
            for s in m.states() {
                for (i, &a) in m.alphabet().iter().enumerate() {
                    // u = (shortest word from q to an a-predecessor of s)·a
                    let Some(u) = m
                        .states()
                        .filter(|&t| m.step_index(t, i) == Some(s))
                        .filter_map(|t| words[t.index()].clone())
                        .min_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)))
                    else {
                        continue;
                    };
                    let mut path = u;
                    path.push(a);
                    for &b in m.alphabet().iter().filter(|&&b| b != a) {
                        if let Some(case) = case_for(m, &counts, s, b) {
                            return Ok(Some(IrrevHypothesisWitness { loop_state: q, path, s, a, b, case }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// A witness built from a loop lying in the irreversible part: an entry
/// `r -b-> s` into the loop's component, with `u` the shortest word leading
/// from `s` back to itself.
pub fn witness_from_irrev_loop(m: &Dfa) -> Result<Option<IrrevHypothesisWitness>> {
    let counts = copy_counts(m)?;
    let scc = sccs(m);
    for c in 0..scc.len() {
        if !scc.is_nontrivial(c) || counts.get(scc.component(c)[0]) == 1 {
            continue;
        }
        for &s in scc.component(c) {
            for &b in m.alphabet() {
                let entries: Vec<StateId> = m
                    .reverse_delta(s, b)?
                    .into_iter()
                    .filter(|&r| scc.component_of(r) != c)
                    .collect();
                if entries.is_empty() {
                    continue;
                }
                let Some(case) = case_for(m, &counts, s, b) else { continue };
                let path = closing_word(m, &scc, s);
                let a = path.last().expect("nontrivial component");
                return Ok(Some(IrrevHypothesisWitness { loop_state: s, path, s, a, b, case }));
            }
        }
    }
    Ok(None)
}

/// Shortest nonempty word leading from `s` back to `s`.
fn closing_word(m: &Dfa, scc: &crate::scc::SccDecomposition, s: StateId) -> Word {
    let mut best: Option<Word> = None;
    for &c in m.alphabet() {
        let Some(t) = m.step(s, c) else { continue };
        if !scc.same_component(s, t) {
            continue;
        }
        let mut seen = vec![false; m.num_states()];
        let mut queue = VecDeque::from([(t, Word::from(vec![c]))]);
        seen[t.index()] = true;
        while let Some((x, w)) = queue.pop_front() {
            if x == s {
                if best.as_ref().is_none_or(|b| w.len() < b.len()) {
                    best = Some(w);
                }
                break;
            }
            for &d in m.alphabet() {
                if let Some(y) = m.step(x, d) {
                    if !seen[y.index()] {
                        seen[y.index()] = true;
                        let mut w2 = w.clone();
                        w2.push(d);
                        queue.push_back((y, w2));
                    }
                }
            }
        }
    }
    best.expect("a state of a nontrivial component lies on a cycle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::dfa_from_triples;

    fn one_b_min() -> Dfa {
        dfa_from_triples(
            "qI",
            &["qI", "q"],
            &[("qI", 'a', "p"), ("p", 'a', "qI"), ("qI", 'b', "q"), ("p", 'b', "q"), ("q", 'a', "q")],
        )
        .unwrap()
    }

    fn double_b_min() -> Dfa {
        dfa_from_triples(
            "qI",
            &["X4", "X5", "s"],
            &[
                ("qI", 'a', "q"),
                ("qI", 'c', "X2"),
                ("X2", 'c', "X4"),
                ("X4", 'a', "X5"),
                ("X4", 'b', "s"),
                ("X5", 'b', "s"),
                ("q", 'c', "q"),
                ("q", 'a', "s"),
            ],
        )
        .unwrap()
    }

    fn single_entry_min() -> Dfa {
        dfa_from_triples(
            "qI",
            &["X4", "s"],
            &[
                ("qI", 'a', "X1"),
                ("qI", 'c', "X2"),
                ("X2", 'b', "X3"),
                ("X2", 'c', "X4"),
                ("X3", 'a', "s"),
                ("X4", 'b', "s"),
                ("X1", 'c', "X1"),
                ("X1", 'a', "s"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn hypothesis_uses_the_loop_on_q() {
        let m = one_b_min();
        let q = m.state("q").unwrap();
        let w = find_irrev_hypothesis(&m).unwrap().unwrap();
        assert_eq!(
            w,
            IrrevHypothesisWitness {
                loop_state: q,
                path: Word::from("a"),
                s: q,
                a: 'a',
                b: 'b',
                case: HypothesisCase::DoubleBIndegree,
            }
        );
        assert!(w.validate(&m));
        let from_loop = witness_from_irrev_loop(&m).unwrap().unwrap();
        assert!(from_loop.validate(&m));
        assert_eq!(from_loop.s, q);
    }

    #[test]
    fn double_b_witness() {
        let m = double_b_min();
        let w = find_irrev_hypothesis(&m).unwrap().unwrap();
        assert_eq!(m.name(w.s), "s");
        assert_eq!(w.case, HypothesisCase::DoubleBIndegree);
        assert!(w.validate(&m));
        assert_eq!(witness_from_irrev_loop(&m).unwrap(), None);
    }

    #[test]
    fn single_entry_has_no_witness() {
        assert_eq!(find_irrev_hypothesis(&single_entry_min()).unwrap(), None);
    }

    #[test]
    fn invalid_witnesses_are_rejected() {
        let m = one_b_min();
        let mut w = find_irrev_hypothesis(&m).unwrap().unwrap();
        w.b = 'a';
        assert!(!w.validate(&m));
        w.b = 'b';
        w.path = Word::from("aa");
        assert!(w.validate(&m));
        w.loop_state = m.initial();
        assert!(!w.validate(&m));
    }
}
