//! Deterministic automata with partial transition functions.
//!
//! A [`Dfa`] is immutable and always *canonical*: every state is useful
//! (reachable and productive) and state indices follow breadth-first order
//! from the initial state, exploring letters in sorted order. The initial
//! state is therefore always [`StateId(0)`](StateId). Automata are assembled
//! with a [`DfaBuilder`], which validates and renumbers on `build`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite sequence of single-character letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<char>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: char) {
        self.0.push(letter);
    }

    pub fn first(&self) -> Option<char> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<char> {
        self.0.last().copied()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        if s == "ε" {
            return Word::empty();
        }
        Word(s.chars().collect())
    }
}

impl From<Vec<char>> for Word {
    fn from(letters: Vec<char>) -> Self {
        Word(letters)
    }
}

impl FromStr for Word {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(Word::from(s))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A deterministic finite automaton `(Q, Σ, δ, q_I, F)` with partial `δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<char>,
    names: Vec<String>,
    finals: Vec<bool>,
    delta: Vec<Vec<Option<StateId>>>,
}

impl Dfa {
    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn letter_index(&self, letter: char) -> Option<usize> {
        self.alphabet.binary_search(&letter).ok()
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> impl DoubleEndedIterator<Item = StateId> + ExactSizeIterator {
        (0..self.names.len()).map(StateId)
    }

    pub fn initial(&self) -> StateId {
        StateId(0)
    }

    pub fn is_final(&self, s: StateId) -> bool {
        self.finals[s.0]
    }

    pub fn finals(&self) -> Vec<StateId> {
        self.states().filter(|&s| self.finals[s.0]).collect()
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name).map(StateId)
    }

    /// Like [`Dfa::state`] but reports an unknown name as an error.
    pub fn require_state(&self, name: &str) -> Result<StateId> {
        self.state(name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    /// `δ(s, letter)`; `None` when undefined or when the letter is not in the alphabet.
    pub fn step(&self, s: StateId, letter: char) -> Option<StateId> {
        self.letter_index(letter).and_then(|i| self.delta[s.0][i])
    }

    pub fn step_index(&self, s: StateId, letter_index: usize) -> Option<StateId> {
        self.delta[s.0][letter_index]
    }

    /// All transitions `(source, letter, target)` in canonical order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, char, StateId)> + '_ {
        self.states().flat_map(move |s| {
            self.alphabet
                .iter()
                .enumerate()
                .filter_map(move |(i, &c)| self.delta[s.0][i].map(|t| (s, c, t)))
        })
    }

    pub fn run(&self, word: &Word) -> Result<Option<StateId>> {
        self.run_from(self.initial(), word)
    }

    pub fn run_from(&self, from: StateId, word: &Word) -> Result<Option<StateId>> {
        let mut cur = from;
        for &c in word.letters() {
            let i = self.letter_index(c).ok_or(Error::UnknownLetter(c))?;
            match self.delta[cur.0][i] {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    pub fn accepts(&self, word: &Word) -> Result<bool> {
        Ok(self.run(word)?.is_some_and(|s| self.is_final(s)))
    }

    /// `δ^R(s, letter) = { q | δ(q, letter) = s }`, sorted.
    pub fn reverse_delta(&self, s: StateId, letter: char) -> Result<Vec<StateId>> {
        if s.0 >= self.num_states() {
            return Err(Error::UnknownState(s.to_string()));
        }
        let i = self.letter_index(letter).ok_or(Error::UnknownLetter(letter))?;
        Ok(self
            .states()
            .filter(|&q| self.delta[q.0][i] == Some(s))
            .collect())
    }

    /// Predecessor table indexed `[state][letter index]`.
    pub fn reverse_table(&self) -> Vec<Vec<Vec<StateId>>> {
        let mut table = vec![vec![Vec::new(); self.alphabet.len()]; self.num_states()];
        for (s, row) in self.delta.iter().enumerate() {
            for (i, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    table[t.0][i].push(StateId(s));
                }
            }
        }
        table
    }

    /// Letters on which at least one transition enters `s`.
    pub fn in_letters(&self, s: StateId) -> Vec<char> {
        self.alphabet
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.delta.iter().any(|row| row[i] == Some(s)))
            .map(|(_, &c)| c)
            .collect()
    }

    /// Successor lists, deduplicated, in letter order.
    pub fn successors(&self, s: StateId) -> Vec<StateId> {
        let mut out: Vec<StateId> = Vec::new();
        for t in self.delta[s.0].iter().flatten() {
            if !out.contains(t) {
                out.push(*t);
            }
        }
        out
    }

    /// Shortest word leading from `from` to each state (BFS, sorted letters).
    pub fn shortest_words_from(&self, from: StateId) -> Vec<Option<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.num_states()];
        words[from.0] = Some(Word::empty());
        let mut queue = VecDeque::from([from]);
        while let Some(s) = queue.pop_front() {
            for (i, &c) in self.alphabet.iter().enumerate() {
                if let Some(t) = self.delta[s.0][i] {
                    if words[t.0].is_none() {
                        let mut w = words[s.0].clone().unwrap();
                        w.push(c);
                        words[t.0] = Some(w);
                        queue.push_back(t);
                    }
                }
            }
        }
        words
    }

    /// Whether no state has two incoming transitions on the same letter.
    pub fn is_reversible(&self) -> bool {
        self.reverse_table()
            .iter()
            .all(|row| row.iter().all(|preds| preds.len() <= 1))
    }

    pub fn to_builder(&self) -> DfaBuilder {
        DfaBuilder {
            alphabet: self.alphabet.clone(),
            names: self.names.clone(),
            finals: self.finals.clone(),
            delta: self
                .delta
                .iter()
                .map(|row| row.iter().map(|t| t.map(|t| t.0)).collect())
                .collect(),
            initial: Some(0),
        }
    }

    /// Same automaton with every state renamed by `f`.
    pub fn renamed(&self, mut f: impl FnMut(StateId, &str) -> String) -> Result<Dfa> {
        let mut b = self.to_builder();
        for s in self.states() {
            b.names[s.0] = f(s, &self.names[s.0]);
        }
        b.build()
    }

    /// Same automaton over a larger alphabet; new letters are everywhere undefined.
    pub fn with_alphabet(&self, letters: &[char]) -> Dfa {
        let mut b = self.to_builder();
        for &c in letters {
            b.add_letter(c);
        }
        b.build().expect("extending the alphabet keeps a canonical automaton valid")
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::emit_dfa(self))
    }
}

/// Mutable automaton under construction. State handles are plain indices
/// local to the builder; [`DfaBuilder::build_trimmed`] reports where each
/// ended up in the canonical result.
#[derive(Clone, Debug)]
pub struct DfaBuilder {
    alphabet: Vec<char>,
    names: Vec<String>,
    finals: Vec<bool>,
    delta: Vec<Vec<Option<usize>>>,
    initial: Option<usize>,
}

impl DfaBuilder {
    pub fn new(alphabet: impl IntoIterator<Item = char>) -> Self {
        let mut letters: Vec<char> = alphabet.into_iter().collect();
        letters.sort_unstable();
        letters.dedup();
        DfaBuilder {
            alphabet: letters,
            names: Vec::new(),
            finals: Vec::new(),
            delta: Vec::new(),
            initial: None,
        }
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    pub fn initial(&self) -> Option<usize> {
        self.initial
    }

    pub fn add_letter(&mut self, letter: char) {
        if let Err(pos) = self.alphabet.binary_search(&letter) {
            self.alphabet.insert(pos, letter);
            for row in &mut self.delta {
                row.insert(pos, None);
            }
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>, accepting: bool) -> usize {
        self.names.push(name.into());
        self.finals.push(accepting);
        self.delta.push(vec![None; self.alphabet.len()]);
        self.names.len() - 1
    }

    pub fn set_initial(&mut self, s: usize) {
        self.initial = Some(s);
    }

    pub fn set_final(&mut self, s: usize, accepting: bool) {
        self.finals[s] = accepting;
    }

    fn index_of(&self, letter: char) -> Result<usize> {
        self.alphabet
            .binary_search(&letter)
            .map_err(|_| Error::UnknownLetter(letter))
    }

    pub fn transition(&self, from: usize, letter: char) -> Option<usize> {
        self.index_of(letter).ok().and_then(|i| self.delta[from][i])
    }

    /// Adds `from --letter--> to`; a different existing target is an error.
    pub fn add_transition(&mut self, from: usize, letter: char, to: usize) -> Result<()> {
        let i = self.index_of(letter)?;
        match self.delta[from][i] {
            Some(t) if t != to => Err(Error::Nondeterministic {
                state: self.names[from].clone(),
                letter,
            }),
            _ => {
                self.delta[from][i] = Some(to);
                Ok(())
            }
        }
    }

    /// Sets (or overwrites) `from --letter--> to`.
    pub fn set_transition(&mut self, from: usize, letter: char, to: usize) -> Result<()> {
        let i = self.index_of(letter)?;
        self.delta[from][i] = Some(to);
        Ok(())
    }

    pub fn remove_transition(&mut self, from: usize, letter: char) -> Result<Option<usize>> {
        let i = self.index_of(letter)?;
        Ok(self.delta[from][i].take())
    }

    /// Sources of transitions entering `to` on `letter`.
    pub fn predecessors(&self, to: usize, letter: char) -> Vec<usize> {
        match self.index_of(letter) {
            Ok(i) => (0..self.num_states())
                .filter(|&s| self.delta[s][i] == Some(to))
                .collect(),
            Err(_) => Vec::new(),
        }
    }

    /// Appends primes to repeated names until all names are distinct.
    pub fn uniquify_names(&mut self) {
        let mut seen: HashSet<String> = HashSet::new();
        for name in &mut self.names {
            while !seen.insert(name.clone()) {
                name.push('\'');
            }
        }
    }

    /// Validates and canonicalizes; every state must be useful.
    pub fn build(self) -> Result<Dfa> {
        let useful = self.useful_states()?;
        let useless: Vec<String> = (0..self.num_states())
            .filter(|&s| !useful[s])
            .map(|s| self.names[s].clone())
            .collect();
        if !useless.is_empty() {
            return Err(Error::UselessStates(useless));
        }
        self.canonicalize(&useful).map(|(dfa, _)| dfa)
    }

    /// Validates, drops useless states, and canonicalizes. The returned map
    /// sends each builder state to its id in the result (`None` if dropped).
    pub fn build_trimmed(self) -> Result<(Dfa, Vec<Option<StateId>>)> {
        let useful = self.useful_states()?;
        self.canonicalize(&useful)
    }

    fn useful_states(&self) -> Result<Vec<bool>> {
        let init = self.initial.ok_or(Error::MissingInitial)?;
        let mut seen = HashSet::new();
        for name in &self.names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateState(name.clone()));
            }
        }
        let n = self.num_states();
        let mut reachable = vec![false; n];
        reachable[init] = true;
        let mut stack = vec![init];
        while let Some(s) = stack.pop() {
            for t in self.delta[s].iter().flatten() {
                if !reachable[*t] {
                    reachable[*t] = true;
                    stack.push(*t);
                }
            }
        }
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, row) in self.delta.iter().enumerate() {
            for t in row.iter().flatten() {
                preds[*t].push(s);
            }
        }
        let mut productive = self.finals.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&s| productive[s]).collect();
        while let Some(s) = stack.pop() {
            for &p in &preds[s] {
                if !productive[p] {
                    productive[p] = true;
                    stack.push(p);
                }
            }
        }
        if !productive[init] {
            return Err(Error::EmptyLanguage);
        }
        Ok((0..n).map(|s| reachable[s] && productive[s]).collect())
    }

    fn canonicalize(self, useful: &[bool]) -> Result<(Dfa, Vec<Option<StateId>>)> {
        let init = self.initial.ok_or(Error::MissingInitial)?;
        let mut map: Vec<Option<StateId>> = vec![None; self.num_states()];
        let mut order = vec![init];
        map[init] = Some(StateId(0));
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for t in self.delta[s].iter().flatten() {
                if useful[*t] && map[*t].is_none() {
                    map[*t] = Some(StateId(order.len()));
                    order.push(*t);
                }
            }
        }
        let delta = order
            .iter()
            .map(|&s| {
                self.delta[s]
                    .iter()
                    .map(|t| t.and_then(|t| map[t]))
                    .collect()
            })
            .collect();
        let dfa = Dfa {
            names: order.iter().map(|&s| self.names[s].clone()).collect(),
            finals: order.iter().map(|&s| self.finals[s]).collect(),
            alphabet: self.alphabet,
            delta,
        };
        Ok((dfa, map))
    }
}

/// Builds a [`Dfa`] from `(source, letter, target)` triples; states are named
/// by the strings used, the alphabet is the set of letters used, and
/// `initial`/`finals` refer to those names. Convenient in tests.
pub fn dfa_from_triples(initial: &str, finals: &[&str], triples: &[(&str, char, &str)]) -> Result<Dfa> {
    let mut b = DfaBuilder::new(triples.iter().map(|t| t.1));
    let mut ids: HashMap<String, usize> = HashMap::new();
    let ensure = |b: &mut DfaBuilder, ids: &mut HashMap<String, usize>, name: &str| -> usize {
        *ids.entry(name.to_string())
            .or_insert_with(|| b.add_state(name, finals.contains(&name)))
    };
    let init = ensure(&mut b, &mut ids, initial);
    b.set_initial(init);
    for f in finals {
        ensure(&mut b, &mut ids, f);
    }
    for &(from, c, to) in triples {
        let f = ensure(&mut b, &mut ids, from);
        let t = ensure(&mut b, &mut ids, to);
        b.add_transition(f, c, t)?;
    }
    b.build()
}
