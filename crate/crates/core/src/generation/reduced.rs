use std::collections::HashMap;

use crate::analysis::backward_split;
use crate::automaton::{Dfa, DfaBuilder, StateId, Word};
use crate::conversion::{copy_counts, to_minimal_revdfa, to_revdfa_tracking};
use crate::error::{Error, Result};
use crate::generation::{HypothesisCase, IrrevHypothesisWitness};
use crate::morphism::find_morphism;
use crate::scc::sccs;

/// A reversible automaton for `L(m)` in which the component `C_q` of the
/// witness loop is replaced by `n` copies joined into a single cycle.
/// Reduced whenever `n` is prime.
///
/// Starting from the minimal reversible automaton `A` of `m`:
/// 1. the states of `A` lying strictly upstream of `C_q` are kept;
/// 2. `n` copies of `C_q` are added, the first transition `q -σ-> q'`
///    inside `C_q` leading from copy `i` to copy `i + 1 mod n`;
/// 3. transitions of `A` into its `j`-th copy of `C_q` now enter copy `j`;
/// 4. one copy of each downstream component is added and the whole is
///    made reversible by component replication;
/// 5. the two `b`-transitions witnessing the hypothesis are redirected
///    into the states `δ(q_i, u)` reached from the loop copies.
pub fn gen_reduced(m: &Dfa, witness: &IrrevHypothesisWitness, n: usize) -> Result<Dfa> {
    let (a, phi, _) = to_minimal_revdfa(m)?;
    let counts = copy_counts(m)?;
    if !witness.validate_with(m, &counts) {
        return Err(Error::WitnessInvalid("the witness does not hold on this automaton".into()));
    }
    let q = witness.loop_state;
    let c = counts.get(q);
    if n < c {
        return Err(Error::NTooSmall { n, required: c });
    }
    let scc = sccs(m);
    let cq = scc.component_of(q);
    let loop_members = scc.component(cq).to_vec();
    let downstream = |s: StateId| scc.reaches(cq, scc.component_of(s));
    let sigma = *m
        .alphabet()
        .iter()
        .find(|&&x| m.step(q, x).is_some_and(|t| scc.component_of(t) == cq))
        .expect("q lies on a loop");

    // The copies of C_q inside A, ordered by smallest state.
    let a_scc = sccs(&a);
    let mut copy_index: HashMap<usize, usize> = HashMap::new();
    for comp in 0..a_scc.len() {
        let first = a_scc.component(comp)[0];
        if scc.component_of(phi.image(first)) == cq {
            copy_index.insert(comp, copy_index.len());
        }
    }

    let mut b = DfaBuilder::new(m.alphabet().iter().copied());
    let mut kept: HashMap<StateId, usize> = HashMap::new();
    for s in a.states().filter(|&s| !downstream(phi.image(s))) {
        kept.insert(s, b.add_state(a.name(s), a.is_final(s)));
    }
    let mut ring: HashMap<(StateId, usize), usize> = HashMap::new();
    for i in 0..n {
        for &r in &loop_members {
            ring.insert((r, i), b.add_state(format!("{}.{i}", m.name(r)), m.is_final(r)));
        }
    }
    let mut below: HashMap<StateId, usize> = HashMap::new();
    for s in m.states().filter(|&s| downstream(s) && scc.component_of(s) != cq) {
        below.insert(s, b.add_state(m.name(s), m.is_final(s)));
    }

    for s in a.states() {
        let Some(&from) = kept.get(&s) else { continue };
        for (c, t) in a.alphabet().iter().filter_map(|&c| a.step(s, c).map(|t| (c, t))) {
            let to = if let Some(&k) = kept.get(&t) {
                k
            } else if scc.component_of(phi.image(t)) == cq {
                ring[&(phi.image(t), copy_index[&a_scc.component_of(t)])]
            } else {
                below[&phi.image(t)]
            };
            b.set_transition(from, c, to)?;
        }
    }
    for i in 0..n {
        for &r in &loop_members {
            for &x in m.alphabet() {
                let Some(t) = m.step(r, x) else { continue };
                let to = if scc.component_of(t) != cq {
                    below[&t]
                } else if r == q && x == sigma {
                    ring[&(t, (i + 1) % n)]
                } else {
                    ring[&(t, i)]
                };
                b.set_transition(ring[&(r, i)], x, to)?;
            }
        }
    }
    for (&s, &from) in &below {
        for &x in m.alphabet() {
            if let Some(t) = m.step(s, x) {
                b.set_transition(from, x, below[&t])?;
            }
        }
    }
    b.set_initial(kept[&a.initial()]);
    b.uniquify_names();
    let (stage, placed) = b.build_trimmed()?;
    let (an, moved) = to_revdfa_tracking(&stage)?;
    let locate = |builder_index: usize| placed[builder_index].and_then(|s| moved[s.index()]);
    let loop_copies: Vec<StateId> = (0..n).filter_map(|i| locate(ring[&(q, i)])).collect();

    let phi_n = find_morphism(&an, m).expect("construction preserves the language");
    let (r1, r2) = distinguished_b_sources(&an, m, witness, |s| phi_n.image(s))?;

    let mut builder = an.to_builder();
    if loop_copies.len() >= 2 {
        let letter = witness.b;
        let targets = |bd: &DfaBuilder| -> Vec<usize> {
            loop_copies
                .iter()
                .filter_map(|&qi| run_builder(bd, qi.index(), &witness.path))
                .collect()
        };
        let s2 = builder.transition(r2.index(), letter).expect("b-source");
        let t1 = targets(&builder);
        let s1 = relocate(&mut builder, &t1, r1.index(), letter, s2);
        let t2 = targets(&builder);
        relocate(&mut builder, &t2, r2.index(), letter, s1);
    }
    let (out, _) = builder.build_trimmed()?;
    Ok(out)
}

fn run_builder(b: &DfaBuilder, from: usize, w: &Word) -> Option<usize> {
    w.letters().iter().try_fold(from, |s, &c| b.transition(s, c))
}

/// Two states `r′`, `r″` whose `b`-successors are copies of `s`, with
/// inequivalent states reached backwards from them along a common word.
fn distinguished_b_sources(
    an: &Dfa,
    m: &Dfa,
    w: &IrrevHypothesisWitness,
    image: impl Fn(StateId) -> StateId,
) -> Result<(StateId, StateId)> {
    match w.case {
        HypothesisCase::DoubleBIndegree => {
            let sources: Vec<StateId> = an
                .states()
                .filter(|&r| an.step(r, w.b).is_some_and(|t| image(t) == w.s))
                .collect();
            let first = *sources.first().ok_or_else(|| Error::WitnessInvalid("s is not entered on b".into()))?;
            let second = sources
                .iter()
                .copied()
                .find(|&r| image(r) != image(first))
                .ok_or_else(|| Error::WitnessInvalid("b-entries of s are equivalent".into()))?;
            Ok((first, second))
        }
        HypothesisCase::IrreversibleBSource(r) => {
            let fiber: Vec<StateId> = an.states().filter(|&t| image(t) == r).collect();
            let table = an.reverse_table();
            let (x, (p1, p2)) = backward_split(an, &table, &fiber, &image)
                .ok_or_else(|| Error::WitnessInvalid(format!("copies of {} are not separated", m.name(r))))?;
            let forward = |p: StateId| an.run_from(p, &x).ok().flatten().expect("backward run");
            Ok((forward(p1), forward(p2)))
        }
    }
}

/// Makes the `letter`-transition from `source` enter one of `targets`,
/// avoiding `avoid`, by moving it to a target without such an entry or by
/// swapping with the entry of a target. Returns the new successor.
fn relocate(b: &mut DfaBuilder, targets: &[usize], source: usize, letter: char, avoid: usize) -> usize {
    let current = b.transition(source, letter).expect("b-source");
    if targets.contains(&current) {
        return current;
    }
    let candidates: Vec<usize> = targets.iter().copied().filter(|&t| t != avoid).collect();
    if let Some(&free) = candidates.iter().find(|&&t| b.predecessors(t, letter).is_empty()) {
        b.set_transition(source, letter, free).expect("known letter");
        return free;
    }
    let Some(&target) = candidates.first() else { return current };
    let other = b.predecessors(target, letter)[0];
    b.set_transition(source, letter, target).expect("known letter");
    b.set_transition(other, letter, current).expect("known letter");
    target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_minimal_revdfa, is_reduced};
    use crate::automaton::dfa_from_triples;
    use crate::equivalence::equivalent;
    use crate::generation::find_irrev_hypothesis;
    use crate::morphism::isomorphic;

    fn one_b_min() -> Dfa {
        dfa_from_triples(
            "qI",
            &["qI", "q"],
            &[("qI", 'a', "p"), ("p", 'a', "qI"), ("qI", 'b', "q"), ("p", 'b', "q"), ("q", 'a', "q")],
        )
        .unwrap()
    }

    fn five_cycle() -> Dfa {
        dfa_from_triples(
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
        .unwrap()
    }

    #[test]
    fn five_copies_give_reduced_cycle() {
        let m = one_b_min();
        let w = find_irrev_hypothesis(&m).unwrap().unwrap();
        let d = gen_reduced(&m, &w, 5).unwrap();
        assert!(isomorphic(&d, &five_cycle()));
        assert!(is_reduced(&d).unwrap());
    }

    #[test]
    fn composite_and_degenerate_sizes() {
        let m = one_b_min();
        let w = find_irrev_hypothesis(&m).unwrap().unwrap();
        let six = gen_reduced(&m, &w, 6).unwrap();
        assert!(six.is_reversible() && equivalent(&six, &m));
        assert!(!is_reduced(&six).unwrap());
        let two = gen_reduced(&m, &w, 2).unwrap();
        assert_eq!(two.num_states(), 4);
        assert!(is_minimal_revdfa(&two, &m).unwrap().is_minimal());
        assert_eq!(gen_reduced(&m, &w, 1), Err(Error::NTooSmall { n: 1, required: 2 }));
    }
}
