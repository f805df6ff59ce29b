//! Decision procedures on reversible automata: minimality, uniqueness of
//! the minimal reversible automaton, the sets `W_q`, and reducedness.

use std::collections::{HashSet, VecDeque};

use crate::automaton::{Dfa, DfaBuilder, StateId, Word};
use crate::conversion::{copy_counts, CopyCount};
use crate::equivalence::equivalent;
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::morphism::find_morphism;
use crate::scc::sccs;
use crate::unionfind::UnionFind;

/// Fiber cardinalities of the morphism `a → m`, indexed by states of `m`.
pub fn fiber_sizes(a: &Dfa, m: &Dfa) -> Result<Vec<usize>> {
    find_morphism(a, m).map(|phi| phi.fiber_sizes()).ok_or(Error::NoMorphism)
}

/// Moving backwards along `x` from every state of the fiber of `q` is
/// defined, and two of the origins `p′`, `p″` are inequivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityWitness {
    pub q: StateId,
    pub x: Word,
    pub origins: (StateId, StateId),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinimalityReport {
    /// One witness per fiber with more than one state.
    pub witnesses: Vec<MinimalityWitness>,
    /// States of the minimum automaton whose fiber has no witness.
    pub failures: Vec<StateId>,
}

impl MinimalityReport {
    pub fn is_minimal(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Minimality of the reversible automaton `a` among reversible automata
/// equivalent to the minimum automaton `m`.
///
/// Each fiber of size > 1 is explored backwards as a tuple: in a reversible
/// automaton every letter has at most one predecessor, so the tuple moves
/// deterministically and the search is bounded by the number of tuples.
pub fn is_minimal_revdfa(a: &Dfa, m: &Dfa) -> Result<MinimalityReport> {
    if !a.is_reversible() {
        return Err(Error::NotReversible);
    }
    if !equivalent(a, m) {
        return Err(Error::NotEquivalent);
    }
    let phi = find_morphism(a, m).ok_or(Error::NoMorphism)?;
    let table = a.reverse_table();
    let mut report = MinimalityReport::default();
    for q in m.states() {
        let fiber = phi.fiber(q);
        if fiber.len() < 2 {
            continue;
        }
        match backward_split(a, &table, &fiber, |s| phi.image(s)) {
            Some((x, origins)) => report.witnesses.push(MinimalityWitness { q, x, origins }),
            None => report.failures.push(q),
        }
    }
    Ok(report)
}

pub(crate) fn backward_split(
    a: &Dfa,
    table: &[Vec<Vec<StateId>>],
    fiber: &[StateId],
    image: impl Fn(StateId) -> StateId,
) -> Option<(Word, (StateId, StateId))> {
    let mut seen: HashSet<Vec<StateId>> = HashSet::from([fiber.to_vec()]);
    let mut queue: VecDeque<(Vec<StateId>, Vec<char>)> = VecDeque::from([(fiber.to_vec(), Vec::new())]);
    while let Some((tuple, back)) = queue.pop_front() {
        for (i, &c) in a.alphabet().iter().enumerate() {
            let Some(prev) = tuple
                .iter()
                .map(|s| table[s.index()][i].first().copied())
                .collect::<Option<Vec<StateId>>>()
            else {
                continue;
            };
            let mut word = back.clone();
            word.push(c);
            if let Some(j) = prev.iter().position(|&p| image(p) != image(prev[0])) {
                word.reverse();
                return Some((Word::from(word), (prev[0], prev[j])));
            }
            if seen.insert(prev.clone()) {
                queue.push_back((prev, word));
            }
        }
    }
    None
}

/// A state `p` with `c(p) > 1` entered on two distinct letters `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessWitness {
    pub p: StateId,
    pub a: char,
    pub b: char,
}

/// Witness that the minimum automaton `m` has at least two nonisomorphic
/// minimal reversible automata; `None` when the minimal one is unique.
pub fn find_uniqueness_witness(m: &Dfa) -> Result<Option<UniquenessWitness>> {
    let counts = copy_counts(m)?;
    Ok(m.states().filter(|&p| counts.get(p) > 1).find_map(|p| match m.in_letters(p)[..] {
        [a, b, ..] => Some(UniquenessWitness { p, a, b }),
        _ => None,
    }))
}

pub fn has_unique_minimal(m: &Dfa) -> Result<bool> {
    Ok(find_uniqueness_witness(m)?.is_none())
}

/// An irreversible state with an infinite right language yields a state
/// `p` on a loop entered both from inside its component (letter `a`) and
/// from outside (letter `b`).
pub fn check_loop_condition(m: &Dfa) -> Result<Option<UniquenessWitness>> {
    let counts = copy_counts(m)?;
    let scc = sccs(m);
    let table = m.reverse_table();
    for q in m.states().filter(|&q| table[q.index()].iter().any(|p| p.len() > 1)) {
        // Breadth-first from q to the first state on a loop.
        let mut seen = vec![false; m.num_states()];
        seen[q.index()] = true;
        let mut queue = VecDeque::from([q]);
        while let Some(p) = queue.pop_front() {
            let c = scc.component_of(p);
            if scc.is_nontrivial(c) {
                debug_assert!(counts.get(p) > 1);
                let mut inside = None;
                let mut outside = None;
                for (i, &letter) in m.alphabet().iter().enumerate() {
                    for &src in &table[p.index()][i] {
                        let slot = if scc.component_of(src) == c { &mut inside } else { &mut outside };
                        slot.get_or_insert(letter);
                    }
                }
                if let (Some(a), Some(b)) = (inside, outside) {
                    return Ok(Some(UniquenessWitness { p, a, b }));
                }
            }
            for t in m.successors(p) {
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    Ok(None)
}

/// `W_q`: pairs `(r, x)` with `δ(r, x) = q`, `c(r) = 1`, and every state
/// strictly between `r` and `q` along `x` having `c > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSet {
    pub q: StateId,
    pub pairs: Vec<(StateId, Word)>,
}

impl WSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Requires every state with `c > 1` to be entered on a single letter;
/// under that hypothesis the irreversible part is acyclic.
pub fn w_set(m: &Dfa, q: StateId) -> Result<WSet> {
    let counts = copy_counts(m)?;
    w_set_with(m, &counts, q)
}

pub(crate) fn w_set_with(m: &Dfa, counts: &CopyCount, q: StateId) -> Result<WSet> {
    if let Some(bad) = m.states().find(|&s| counts.get(s) > 1 && m.in_letters(s).len() > 1) {
        return Err(Error::HypothesisViolated(format!(
            "state {} has c > 1 and is entered on several letters",
            m.name(bad)
        )));
    }
    if counts.get(q) == 1 {
        return Ok(WSet { q, pairs: vec![(q, Word::empty())] });
    }
    let table = m.reverse_table();
    let mut pairs = Vec::new();
    let mut on_path = vec![false; m.num_states()];
    collect_w(m, counts, &table, q, &mut Vec::new(), &mut on_path, &mut pairs)?;
    pairs.sort();
    Ok(WSet { q, pairs })
}

fn collect_w(
    m: &Dfa,
    counts: &CopyCount,
    table: &[Vec<Vec<StateId>>],
    t: StateId,
    suffix: &mut Vec<char>,
    on_path: &mut [bool],
    out: &mut Vec<(StateId, Word)>,
) -> Result<()> {
    on_path[t.index()] = true;
    for (i, &c) in m.alphabet().iter().enumerate() {
        for &r in &table[t.index()][i] {
            suffix.push(c);
            if counts.get(r) == 1 {
                out.push((r, Word::from(suffix.iter().rev().copied().collect::<Vec<_>>())));
            } else if on_path[r.index()] {
                return Err(Error::HypothesisViolated(format!("loop through {} in the irreversible part", m.name(r))));
            } else {
                collect_w(m, counts, table, r, suffix, on_path, out)?;
            }
            suffix.pop();
        }
    }
    on_path[t.index()] = false;
    Ok(())
}

/// A partition of the states of an automaton closed under transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeClosure {
    classes: Vec<Vec<StateId>>,
    class_of: Vec<usize>,
}

impl MergeClosure {
    fn from_union_find(uf: &mut UnionFind) -> Self {
        let classes: Vec<Vec<StateId>> = uf
            .classes()
            .into_iter()
            .map(|c| c.into_iter().map(StateId).collect())
            .collect();
        let mut class_of = vec![0; classes.iter().map(Vec::len).sum()];
        for (i, c) in classes.iter().enumerate() {
            for s in c {
                class_of[s.index()] = i;
            }
        }
        MergeClosure { classes, class_of }
    }

    /// Classes ordered by smallest member; members sorted.
    pub fn classes(&self) -> &[Vec<StateId>] {
        &self.classes
    }

    pub fn class_of(&self, s: StateId) -> usize {
        self.class_of[s.index()]
    }

    pub fn is_discrete(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }

    /// The automaton obtained by merging each class into its smallest
    /// member, which gives the class its name.
    pub fn quotient(&self, a: &Dfa) -> Dfa {
        let mut b = DfaBuilder::new(a.alphabet().iter().copied());
        for class in &self.classes {
            b.add_state(a.name(class[0]), a.is_final(class[0]));
        }
        b.set_initial(self.class_of(a.initial()));
        for (s, c, t) in a.transitions() {
            b.set_transition(self.class_of(s), c, self.class_of(t)).expect("same alphabet");
        }
        b.build().expect("quotients by equivalent states keep every state useful")
    }
}

fn state_images(a: &Dfa) -> Vec<StateId> {
    let (_, phi) = minimize(a);
    phi.map().to_vec()
}

fn check_equivalent(a: &Dfa, images: &[StateId], p: StateId, q: StateId) -> Result<()> {
    for s in [p, q] {
        if s.index() >= a.num_states() {
            return Err(Error::UnknownState(s.to_string()));
        }
    }
    if images[p.index()] != images[q.index()] {
        return Err(Error::NotEquivalentStates(a.name(p).into(), a.name(q).into()));
    }
    Ok(())
}

/// The smallest transition-closed partition of `a` identifying `p` and `q`.
pub fn merge_closure(a: &Dfa, p: StateId, q: StateId) -> Result<MergeClosure> {
    let images = state_images(a);
    check_equivalent(a, &images, p, q)?;
    let mut uf = UnionFind::new(a.num_states());
    let mut work = vec![(p, q)];
    while let Some((x, y)) = work.pop() {
        if !uf.union(x.index(), y.index()) {
            continue;
        }
        for &c in a.alphabet() {
            if let (Some(x2), Some(y2)) = (a.step(x, c), a.step(y, c)) {
                work.push((x2, y2));
            }
        }
    }
    Ok(MergeClosure::from_union_find(&mut uf))
}

/// The smallest partition identifying `p` and `q` whose quotient is both
/// deterministic and reversible, or `None` when every such partition
/// would have to identify inequivalent states. `a` must be reversible.
pub fn reversible_merge_closure(a: &Dfa, p: StateId, q: StateId) -> Result<Option<MergeClosure>> {
    if !a.is_reversible() {
        return Err(Error::NotReversible);
    }
    let images = state_images(a);
    check_equivalent(a, &images, p, q)?;
    Ok(reversible_closure(a, &images, p, q))
}

fn reversible_closure(a: &Dfa, images: &[StateId], p: StateId, q: StateId) -> Option<MergeClosure> {
    let k = a.alphabet().len();
    let n = a.num_states();
    // pred[root][letter]: some predecessor of the class on that letter.
    let mut pred: Vec<Vec<Option<usize>>> = vec![vec![None; k]; n];
    for (s, c, t) in a.transitions() {
        pred[t.index()][a.letter_index(c).unwrap()] = Some(s.index());
    }
    let mut uf = UnionFind::new(n);
    let mut work = vec![(p.index(), q.index())];
    while let Some((x, y)) = work.pop() {
        let (rx, ry) = (uf.find(x), uf.find(y));
        if rx == ry {
            continue;
        }
        if images[x] != images[y] {
            return None;
        }
        uf.union(rx, ry);
        let root = uf.find(rx);
        for i in 0..k {
            if let (Some(x2), Some(y2)) = (a.step_index(StateId(x), i), a.step_index(StateId(y), i)) {
                work.push((x2.index(), y2.index()));
            }
            let merged = match (pred[rx][i], pred[ry][i]) {
                (Some(u), Some(v)) => {
                    work.push((u, v));
                    Some(u)
                }
                (u, v) => u.or(v),
            };
            pred[root][i] = merged;
        }
    }
    Some(MergeClosure::from_union_find(&mut uf))
}

/// First pair of distinct equivalent states (in lexicographic order) whose
/// merge keeps the automaton reversible; `None` iff `a` is reduced.
pub fn reducible_pair(a: &Dfa) -> Result<Option<(StateId, StateId)>> {
    if !a.is_reversible() {
        return Err(Error::NotReversible);
    }
    let images = state_images(a);
    Ok(first_reducible_pair(a, &images).map(|(p, q, _)| (p, q)))
}

fn first_reducible_pair(a: &Dfa, images: &[StateId]) -> Option<(StateId, StateId, MergeClosure)> {
    for p in a.states() {
        for q in a.states().skip(p.index() + 1) {
            if images[p.index()] == images[q.index()] {
                if let Some(closure) = reversible_closure(a, images, p, q) {
                    return Some((p, q, closure));
                }
            }
        }
    }
    None
}

pub fn is_reduced(a: &Dfa) -> Result<bool> {
    Ok(reducible_pair(a)?.is_none())
}

/// Merges the first reducible pair until none is left.
pub fn reduce(a: &Dfa) -> Result<Dfa> {
    if !a.is_reversible() {
        return Err(Error::NotReversible);
    }
    let mut current = a.clone();
    loop {
        let images = state_images(&current);
        match first_reducible_pair(&current, &images) {
            Some((_, _, closure)) => current = closure.quotient(&current),
            None => return Ok(current),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::dfa_from_triples;
    use crate::conversion::to_minimal_revdfa;
    use crate::morphism::isomorphic;

    fn one_b_min() -> Dfa {
        dfa_from_triples(
            "qI",
            &["qI", "q"],
            &[("qI", 'a', "p"), ("p", 'a', "qI"), ("qI", 'b', "q"), ("p", 'b', "q"), ("q", 'a', "q")],
        )
        .unwrap()
    }

    /// `qI`, `p`, and a cycle of `n` accepting states entered on `b` at
    /// positions 0 and 1.
    fn cycle(n: usize) -> Dfa {
        let names: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
        let mut triples = vec![("qI", 'a', "p"), ("p", 'a', "qI"), ("qI", 'b', "q0"), ("p", 'b', "q1")];
        for i in 0..n {
            triples.push((names[i].as_str(), 'a', names[(i + 1) % n].as_str()));
        }
        let mut finals: Vec<&str> = names.iter().map(String::as_str).collect();
        finals.push("qI");
        dfa_from_triples("qI", &finals, &triples).unwrap()
    }

    fn sink_min() -> Dfa {
        dfa_from_triples(
            "qI",
            &["q"],
            &[
                ("qI", 'b', "X1"),
                ("qI", 'a', "r1"),
                ("X1", 'b', "r1"),
                ("r1", 'a', "r2"),
                ("r1", 'b', "t"),
                ("r2", 'b', "t"),
                ("t", 'a', "q"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fiber_sizes_of_the_five_cycle() {
        let m = one_b_min();
        assert_eq!(fiber_sizes(&cycle(5), &m).unwrap(), vec![1, 1, 5]);
        assert_eq!(fiber_sizes(&m, &m).unwrap(), vec![1, 1, 1]);
        assert_eq!(fiber_sizes(&m, &cycle(5)), Err(Error::NoMorphism));
    }

    #[test]
    fn minimality_of_one_b_automata() {
        let m = one_b_min();
        let (mid, _, _) = to_minimal_revdfa(&m).unwrap();
        let report = is_minimal_revdfa(&mid, &m).unwrap();
        assert!(report.is_minimal());
        let w = &report.witnesses[0];
        assert_eq!(w.x, Word::from("b"));
        let phi = find_morphism(&mid, &m).unwrap();
        for o in [w.origins.0, w.origins.1] {
            assert_eq!(phi.image(mid.run_from(o, &w.x).unwrap().unwrap()), w.q);
        }
        assert_ne!(phi.image(w.origins.0), phi.image(w.origins.1));
        assert!(!is_minimal_revdfa(&cycle(5), &m).unwrap().is_minimal());
        assert_eq!(is_minimal_revdfa(&m, &m), Err(Error::NotReversible));
    }

    #[test]
    fn uniqueness_and_loop_condition() {
        let m = one_b_min();
        let q = m.state("q").unwrap();
        let w = UniquenessWitness { p: q, a: 'a', b: 'b' };
        assert_eq!(find_uniqueness_witness(&m).unwrap(), Some(w.clone()));
        assert!(!has_unique_minimal(&m).unwrap());
        assert_eq!(check_loop_condition(&m).unwrap(), Some(w));
    }

    #[test]
    fn sink_w_sets() {
        let m = sink_min();
        let s = |n: &str| m.state(n).unwrap();
        assert!(has_unique_minimal(&m).unwrap());
        assert_eq!(check_loop_condition(&m).unwrap(), None);
        let wq = w_set(&m, s("q")).unwrap();
        assert_eq!(wq.pairs, vec![(s("r1"), Word::from("ba")), (s("r2"), Word::from("ba"))]);
        let wt = w_set(&m, s("t")).unwrap();
        assert_eq!(wt.pairs, vec![(s("r1"), Word::from("b")), (s("r2"), Word::from("b"))]);
        assert_eq!(w_set(&m, s("X1")).unwrap().pairs, vec![(s("X1"), Word::empty())]);
    }

    #[test]
    fn w_set_hypothesis_is_checked() {
        assert!(matches!(w_set(&one_b_min(), StateId(2)), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn merge_closures_on_cycles() {
        let five = cycle(5);
        let c = merge_closure(&five, five.state("q0").unwrap(), five.state("q1").unwrap()).unwrap();
        assert_eq!(c.classes().len(), 3);
        let six = cycle(6);
        let c = merge_closure(&six, six.state("q0").unwrap(), six.state("q3").unwrap()).unwrap();
        let names: Vec<Vec<&str>> = c
            .classes()
            .iter()
            .filter(|k| k.len() > 1)
            .map(|k| k.iter().map(|&s| six.name(s)).collect())
            .collect();
        assert_eq!(names, [["q0", "q3"], ["q1", "q4"], ["q2", "q5"]]);
        let q0 = six.state("q0").unwrap();
        assert!(merge_closure(&six, q0, q0).unwrap().is_discrete());
        assert!(matches!(
            merge_closure(&six, q0, six.initial()),
            Err(Error::NotEquivalentStates(..))
        ));
    }

    #[test]
    fn prime_cycles_are_reduced() {
        assert!(is_reduced(&cycle(5)).unwrap());
        assert!(!is_reduced(&cycle(6)).unwrap());
        let (mid, _, _) = to_minimal_revdfa(&one_b_min()).unwrap();
        assert!(is_reduced(&mid).unwrap());
    }

    #[test]
    fn reduce_six_cycle() {
        let r = reduce(&cycle(6)).unwrap();
        assert!(r.is_reversible());
        assert!(r.num_states() < 8);
        assert!(is_reduced(&r).unwrap());
        assert!(equivalent(&r, &cycle(6)));
        let (mid, _, _) = to_minimal_revdfa(&one_b_min()).unwrap();
        assert!(isomorphic(&reduce(&mid).unwrap(), &mid));
    }

    #[test]
    fn reversible_closure_needs_backward_merges() {
        // Merging t1,t2 alone leaves two `a`-entries from s1 and s2; the
        // reversible closure merges those as well.
        let d = dfa_from_triples(
            "i",
            &["t1", "t2"],
            &[("i", 'a', "s1"), ("i", 'b', "s2"), ("s1", 'a', "t1"), ("s2", 'a', "t2")],
        )
        .unwrap();
        let (t1, t2) = (d.state("t1").unwrap(), d.state("t2").unwrap());
        let fwd = merge_closure(&d, t1, t2).unwrap();
        assert!(!fwd.quotient(&d).is_reversible());
        let rev = reversible_merge_closure(&d, t1, t2).unwrap().unwrap();
        let q = rev.quotient(&d);
        assert!(q.is_reversible());
        assert_eq!(q.num_states(), 3);
        assert!(!is_reduced(&d).unwrap());
    }
}
