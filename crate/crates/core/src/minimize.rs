//! Hopcroft partition refinement over the sink-completed automaton.

use std::collections::BTreeMap;

use crate::automaton::{Dfa, DfaBuilder, StateId};
use crate::morphism::Morphism;

/// Coarsest partition of a complete automaton compatible with `finals`.
/// `delta[s][c]` must be defined for every state and letter.
/// Returns the block index of each state.
pub(crate) fn coarsest_partition(delta: &[Vec<usize>], finals: &[bool]) -> Vec<usize> {
    let n = delta.len();
    let k = delta.first().map_or(0, Vec::len);
    let mut inverse = vec![vec![Vec::new(); n]; k];
    for (s, row) in delta.iter().enumerate() {
        for (c, &t) in row.iter().enumerate() {
            inverse[c][t].push(s);
        }
    }

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let accepting: Vec<usize> = (0..n).filter(|&s| finals[s]).collect();
    let rejecting: Vec<usize> = (0..n).filter(|&s| !finals[s]).collect();
    for b in [accepting, rejecting] {
        if !b.is_empty() {
            blocks.push(b);
        }
    }
    let mut block_of = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &s in b {
            block_of[s] = i;
        }
    }

    let mut pending = vec![vec![false; k]; blocks.len()];
    let mut work: Vec<(usize, usize)> = Vec::new();
    if blocks.len() == 2 {
        let smaller = if blocks[0].len() <= blocks[1].len() { 0 } else { 1 };
        for c in 0..k {
            pending[smaller][c] = true;
            work.push((smaller, c));
        }
    }

    let mut in_splitter = vec![false; n];
    while let Some((splitter, c)) = work.pop() {
        pending[splitter][c] = false;
        let mut preds = Vec::new();
        for &t in &blocks[splitter] {
            for &p in &inverse[c][t] {
                if !in_splitter[p] {
                    in_splitter[p] = true;
                    preds.push(p);
                }
            }
        }
        let mut hit: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &p in &preds {
            hit.entry(block_of[p]).or_default().push(p);
        }
        for (y, mut inside) in hit {
            if inside.len() == blocks[y].len() {
                continue;
            }
            inside.sort_unstable();
            let outside: Vec<usize> = blocks[y].iter().copied().filter(|&s| !in_splitter[s]).collect();
            let fresh = blocks.len();
            for &s in &inside {
                block_of[s] = fresh;
            }
            blocks[y] = outside;
            blocks.push(inside);
            pending.push(vec![false; k]);
            for l in 0..k {
                if pending[y][l] {
                    pending[fresh][l] = true;
                    work.push((fresh, l));
                } else {
                    let smaller = if blocks[y].len() <= blocks[fresh].len() { y } else { fresh };
                    pending[smaller][l] = true;
                    work.push((smaller, l));
                }
            }
        }
        for p in preds {
            in_splitter[p] = false;
        }
    }
    block_of
}

/// Minimum automaton of `L(dfa)` together with the morphism onto it.
/// States of the result are named after the canonically first member of
/// their class.
pub fn minimize(dfa: &Dfa) -> (Dfa, Morphism) {
    let n = dfa.num_states();
    let sink = n;
    let k = dfa.alphabet().len();
    let mut delta: Vec<Vec<usize>> = dfa
        .states()
        .map(|s| (0..k).map(|c| dfa.step_index(s, c).map_or(sink, StateId::index)).collect())
        .collect();
    delta.push(vec![sink; k]);
    let mut finals: Vec<bool> = dfa.states().map(|s| dfa.is_final(s)).collect();
    finals.push(false);

    let block_of = coarsest_partition(&delta, &finals);
    let dead = block_of[sink];

    // Classes numbered by their smallest member.
    let mut class_index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut representatives = Vec::new();
    for s in 0..n {
        let b = block_of[s];
        if b != dead && !class_index.contains_key(&b) {
            class_index.insert(b, representatives.len());
            representatives.push(s);
        }
    }

    let mut b = DfaBuilder::new(dfa.alphabet().iter().copied());
    for &rep in &representatives {
        b.add_state(dfa.name(StateId(rep)), dfa.is_final(StateId(rep)));
    }
    b.set_initial(class_index[&block_of[dfa.initial().index()]]);
    for (i, &rep) in representatives.iter().enumerate() {
        for (c, &letter) in dfa.alphabet().iter().enumerate() {
            let t = delta[rep][c];
            if block_of[t] != dead {
                b.set_transition(i, letter, class_index[&block_of[t]])
                    .expect("letter from the same alphabet");
            }
        }
    }
    let (min, placed) = b
        .build_trimmed()
        .expect("quotient of a valid automaton is valid");
    let map = dfa
        .states()
        .map(|s| placed[class_index[&block_of[s.index()]]].expect("every class is useful"))
        .collect();
    let morphism = Morphism::from_parts(dfa.clone(), min.clone(), map);
    (min, morphism)
}

/// Whether no two distinct states of `dfa` are equivalent.
pub fn is_minimum(dfa: &Dfa) -> bool {
    minimize(dfa).0.num_states() == dfa.num_states()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::dfa_from_triples;
    use crate::morphism::isomorphic;

    #[test]
    fn five_cycle_minimizes_to_three_states() {
        let five_cycle = dfa_from_triples(
            "qI",
            &["qI", "q0", "q1", "q2", "q3", "q4"],
            &[
                ("qI", 'a', "p"),
                ("p", 'a', "qI"),
                ("qI", 'b', "q0"),
                ("p", 'b', "q1"),
                ("q0", 'a', "q1"),
                ("q1", 'a', "q2"),
                ("q2", 'a', "q3"),
                ("q3", 'a', "q4"),
                ("q4", 'a', "q0"),
            ],
        )
        .unwrap();
        let (min, phi) = minimize(&five_cycle);
        assert_eq!(min.num_states(), 3);
        assert_eq!(phi.fiber_sizes(), vec![1, 1, 5]);
        let one_b = dfa_from_triples(
            "qI",
            &["qI", "q"],
            &[("qI", 'a', "p"), ("p", 'a', "qI"), ("qI", 'b', "q"), ("p", 'b', "q"), ("q", 'a', "q")],
        )
        .unwrap();
        assert!(isomorphic(&min, &one_b));
    }

    #[test]
    fn accepting_chain_collapses() {
        let d = dfa_from_triples("s0", &["s0", "s1"], &[("s0", 'a', "s1"), ("s1", 'a', "s1")]).unwrap();
        let (min, _) = minimize(&d);
        assert_eq!(min.num_states(), 1);
        assert_eq!(min.step(min.initial(), 'a'), Some(min.initial()));
    }

    #[test]
    fn partial_transitions_are_kept_partial() {
        // a·b: the undefined moves must not be completed in the output.
        let d = dfa_from_triples("0", &["2"], &[("0", 'a', "1"), ("1", 'b', "2")]).unwrap();
        let (min, _) = minimize(&d);
        assert_eq!(min.num_states(), 3);
        assert_eq!(min.transitions().count(), 2);
        assert!(is_minimum(&min));
    }
}
