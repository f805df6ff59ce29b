//! Brute-force reference implementations, deliberately naive and written
//! only against the public stepping API of `Dfa`.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use revkit::{Dfa, StateId, Word};

/// Sink-completed transition table over `letters`; the sink is the last row.
pub fn complete(d: &Dfa, letters: &[char]) -> (Vec<Vec<usize>>, Vec<bool>) {
    let sink = d.num_states();
    let mut table = Vec::new();
    let mut finals = Vec::new();
    for s in d.states() {
        table.push(letters.iter().map(|&c| d.step(s, c).map_or(sink, StateId::index)).collect());
        finals.push(d.is_final(s));
    }
    table.push(vec![sink; letters.len()]);
    finals.push(false);
    (table, finals)
}

fn union_letters(a: &Dfa, b: &Dfa) -> Vec<char> {
    let set: BTreeSet<char> = a.alphabet().iter().chain(b.alphabet()).copied().collect();
    set.into_iter().collect()
}

/// Language equality by breadth-first search of the product automaton.
pub fn equivalent(a: &Dfa, b: &Dfa) -> bool {
    let letters = union_letters(a, b);
    let (ta, fa) = complete(a, &letters);
    let (tb, fb) = complete(b, &letters);
    let start = (a.initial().index(), b.initial().index());
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((x, y)) = queue.pop_front() {
        if fa[x] != fb[y] {
            return false;
        }
        for i in 0..letters.len() {
            let next = (ta[x][i], tb[y][i]);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    true
}

/// No two transitions on one letter share a target.
pub fn is_reversible(d: &Dfa) -> bool {
    for &c in d.alphabet() {
        let mut targets = HashSet::new();
        for s in d.states() {
            if let Some(t) = d.step(s, c) {
                if !targets.insert(t) {
                    return false;
                }
            }
        }
    }
    true
}

/// All words over `letters` of length at most `n`, shortest first.
pub fn words_up_to(letters: &[char], n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for &c in letters {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn run_from(d: &Dfa, from: StateId, w: &Word) -> Option<StateId> {
    w.letters().iter().try_fold(from, |s, &c| d.step(s, c))
}

/// States `p ≠ q` and a letter `a` with `δ(p,a) = δ(q,a) = r` and some word
/// `w` of length at most `n` leading from `r` back to `q`.
pub fn has_forbidden_pattern(d: &Dfa) -> bool {
    let n = d.num_states();
    let words = words_up_to(d.alphabet(), n);
    for p in d.states() {
        for q in d.states().filter(|&q| q != p) {
            for &a in d.alphabet() {
                let (Some(r), Some(r2)) = (d.step(p, a), d.step(q, a)) else { continue };
                if r != r2 {
                    continue;
                }
                if words.iter().any(|w| run_from(d, r, w) == Some(q)) {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether some word of length at most `n` is accepted from exactly one of
/// `p`, `q`.
pub fn distinguishable(d: &Dfa, p: StateId, q: StateId, n: usize) -> bool {
    let accepts = |s: StateId, w: &Word| run_from(d, s, w).is_some_and(|t| d.is_final(t));
    words_up_to(d.alphabet(), n).iter().any(|w| accepts(p, w) != accepts(q, w))
}

/// A regular expression tree evaluated by direct set semantics.
#[derive(Clone, Debug)]
pub enum Re {
    Eps,
    Lit(char),
    Cat(Box<Re>, Box<Re>),
    Alt(Box<Re>, Box<Re>),
    Star(Box<Re>),
}

impl Re {
    /// Textual form accepted by the library parser.
    pub fn render(&self) -> String {
        match self {
            Re::Eps => "ε".into(),
            Re::Lit(c) => c.to_string(),
            Re::Cat(x, y) => format!("({}{})", x.render(), y.render()),
            Re::Alt(x, y) => format!("({}+{})", x.render(), y.render()),
            Re::Star(x) => format!("({})*", x.render()),
        }
    }

    /// End positions of matches of `self` in `w` starting at `i`.
    fn ends(&self, w: &[char], i: usize) -> BTreeSet<usize> {
        match self {
            Re::Eps => BTreeSet::from([i]),
            Re::Lit(c) => {
                if w.get(i) == Some(c) {
                    BTreeSet::from([i + 1])
                } else {
                    BTreeSet::new()
                }
            }
            Re::Cat(x, y) => x.ends(w, i).into_iter().flat_map(|j| y.ends(w, j)).collect(),
            Re::Alt(x, y) => x.ends(w, i).union(&y.ends(w, i)).copied().collect(),
            Re::Star(x) => {
                let mut reached = BTreeSet::from([i]);
                let mut frontier = vec![i];
                while let Some(j) = frontier.pop() {
                    for k in x.ends(w, j) {
                        if reached.insert(k) {
                            frontier.push(k);
                        }
                    }
                }
                reached
            }
        }
    }

    pub fn matches(&self, w: &Word) -> bool {
        self.ends(w.letters(), 0).contains(&w.len())
    }
}
