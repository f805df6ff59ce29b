//! Conversion of a DFA without the forbidden pattern into an equivalent
//! reversible DFA by replicating strongly connected components, and the
//! resulting copy counts `c(q)`.
//!
//! The loop repeatedly picks a `⪯`-minimal component containing an
//! irreversible state, replaces it by `α` copies of itself (`α` being the
//! largest number of same-letter transitions entering one of its states)
//! and spreads the transitions entering the component over the copies.

use crate::automaton::{Dfa, DfaBuilder, StateId};
use crate::error::{Error, Result};
use crate::minimize::{is_minimum, minimize};
use crate::morphism::{find_morphism, Morphism};
use crate::reversibility::forbidden_pattern_in;
use crate::scc::tarjan;

/// One replication step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConversionStep {
    /// Names of the replicated states at the time of the step.
    pub component: Vec<String>,
    pub alpha: usize,
    /// Each entering transition `(source, letter, target)` with the index of
    /// the copy of `target` it was redirected to.
    pub redistribution: Vec<(String, char, String, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConversionTrace {
    pub steps: Vec<ConversionStep>,
}

/// `c(q)`: the number of states equivalent to `q` in any minimal reversible
/// automaton, indexed by the states of the minimum automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyCount {
    counts: Vec<usize>,
}

impl CopyCount {
    pub fn get(&self, q: StateId) -> usize {
        self.counts[q.index()]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }
}

struct Work {
    alphabet: Vec<char>,
    names: Vec<String>,
    finals: Vec<bool>,
    delta: Vec<Vec<Option<usize>>>,
}

impl Work {
    fn from_dfa(d: &Dfa) -> Self {
        Work {
            alphabet: d.alphabet().to_vec(),
            names: d.names().to_vec(),
            finals: d.states().map(|s| d.is_final(s)).collect(),
            delta: d
                .states()
                .map(|s| (0..d.alphabet().len()).map(|i| d.step_index(s, i).map(StateId::index)).collect())
                .collect(),
        }
    }

    fn in_degrees(&self) -> Vec<Vec<usize>> {
        let mut deg = vec![vec![0; self.alphabet.len()]; self.names.len()];
        for row in &self.delta {
            for (i, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    deg[*t][i] += 1;
                }
            }
        }
        deg
    }

    /// The component to replicate next, or `None` once reversible.
    fn next_component(&self, deg: &[Vec<usize>]) -> Option<Vec<usize>> {
        let n = self.names.len();
        let irreversible: Vec<bool> = deg.iter().map(|row| row.iter().any(|&d| d > 1)).collect();
        if !irreversible.contains(&true) {
            return None;
        }
        let adj: Vec<Vec<usize>> = self.delta.iter().map(|row| row.iter().flatten().copied().collect()).collect();
        let comp = tarjan(&adj);
        let k = comp.iter().max().map_or(0, |m| m + 1);
        let mut candidate = vec![false; k];
        for s in 0..n {
            if irreversible[s] {
                candidate[comp[s]] = true;
            }
        }
        // A candidate is minimal when no other candidate reaches it.
        let mut dominated = vec![false; k];
        for c in (0..k).filter(|&c| candidate[c]) {
            let mut seen = vec![false; n];
            let mut stack: Vec<usize> = (0..n).filter(|&s| comp[s] == c).collect();
            for &s in &stack {
                seen[s] = true;
            }
            while let Some(s) = stack.pop() {
                for &t in &adj[s] {
                    if !seen[t] {
                        seen[t] = true;
                        if comp[t] != c {
                            dominated[comp[t]] = true;
                        }
                        stack.push(t);
                    }
                }
            }
        }
        let chosen = (0..n).find(|&s| candidate[comp[s]] && !dominated[comp[s]])?;
        Some((0..n).filter(|&s| comp[s] == comp[chosen]).collect())
    }

    fn replicate(&mut self, members: &[usize], deg: &[Vec<usize>]) -> ConversionStep {
        let n = self.names.len();
        let k = self.alphabet.len();
        let mut inside = vec![false; n];
        for &s in members {
            inside[s] = true;
        }
        let alpha = members.iter().flat_map(|&s| deg[s].iter().copied()).max().unwrap_or(1).max(1);

        // copy_of[j][s]: index of the j-th copy of member s.
        let mut copy_of: Vec<Vec<usize>> = vec![(0..n).collect()];
        for j in 1..alpha {
            let mut map = vec![usize::MAX; n];
            for &s in members {
                map[s] = self.names.len();
                self.names.push(format!("{}.{j}", self.names[s]));
                self.finals.push(self.finals[s]);
                self.delta.push(vec![None; k]);
            }
            copy_of.push(map);
        }
        for j in 1..alpha {
            for &s in members {
                for c in 0..k {
                    self.delta[copy_of[j][s]][c] = self.delta[s][c].map(|t| if inside[t] { copy_of[j][t] } else { t });
                }
            }
        }

        let mut entering: Vec<(usize, usize, usize)> = Vec::new();
        let mut taken = vec![vec![vec![false; k]; n]; alpha];
        for s in 0..n {
            for c in 0..k {
                if let Some(t) = self.delta[s][c] {
                    if inside[t] {
                        if inside[s] {
                            for row in &mut taken {
                                row[t][c] = true;
                            }
                        } else {
                            entering.push((s, c, t));
                        }
                    }
                }
            }
        }
        let mut redistribution = Vec::new();
        for (s, c, t) in entering {
            let j = (0..alpha)
                .find(|&j| !taken[j][t][c])
                .expect("α copies suffice without the forbidden pattern");
            taken[j][t][c] = true;
            self.delta[s][c] = Some(copy_of[j][t]);
            redistribution.push((self.names[s].clone(), self.alphabet[c], self.names[t].clone(), j));
        }
        let component = members.iter().map(|&s| self.names[s].clone()).collect();
        if alpha > 1 {
            for &s in members {
                self.names[s] = format!("{}.0", self.names[s]);
            }
        }
        ConversionStep { component, alpha, redistribution }
    }

    /// Builds the result; the map sends each working state to its place.
    fn into_dfa(self) -> (Dfa, Vec<Option<StateId>>) {
        let mut b = DfaBuilder::new(self.alphabet.iter().copied());
        for (name, &fin) in self.names.iter().zip(&self.finals) {
            b.add_state(name.clone(), fin);
        }
        b.set_initial(0);
        for (s, row) in self.delta.iter().enumerate() {
            for (i, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    b.set_transition(s, self.alphabet[i], *t).expect("same alphabet");
                }
            }
        }
        b.uniquify_names();
        b.build_trimmed().expect("replication preserves the language")
    }
}

/// Runs the replication loop. The map sends every input state to the
/// output state standing for its first copy.
fn convert(dfa: &Dfa) -> (Dfa, Vec<Option<StateId>>, ConversionTrace) {
    let mut work = Work::from_dfa(dfa);
    let mut trace = ConversionTrace::default();
    loop {
        let deg = work.in_degrees();
        let Some(members) = work.next_component(&deg) else { break };
        trace.steps.push(work.replicate(&members, &deg));
    }
    let (rev, mut map) = work.into_dfa();
    map.truncate(dfa.num_states());
    (rev, map, trace)
}

/// [`to_revdfa_general`] without the morphism, reporting where each input
/// state ended up.
pub(crate) fn to_revdfa_tracking(dfa: &Dfa) -> Result<(Dfa, Vec<Option<StateId>>)> {
    if let Some(w) = forbidden_pattern_in(dfa) {
        return Err(w.into_error(dfa));
    }
    let (rev, map, _) = convert(dfa);
    Ok((rev, map))
}

/// A minimal reversible automaton equivalent to the minimum automaton
/// `min_dfa`, with its morphism onto `min_dfa`.
pub fn to_minimal_revdfa(min_dfa: &Dfa) -> Result<(Dfa, Morphism, ConversionTrace)> {
    if !is_minimum(min_dfa) {
        return Err(Error::NotMinimized);
    }
    if let Some(w) = forbidden_pattern_in(min_dfa) {
        return Err(w.into_error(min_dfa));
    }
    let (rev, _, trace) = convert(min_dfa);
    let phi = find_morphism(&rev, min_dfa).expect("replicas map onto their originals");
    Ok((rev, phi, trace))
}

/// The same replication applied to an arbitrary automaton without the
/// forbidden pattern; the morphism targets the minimum automaton.
pub fn to_revdfa_general(dfa: &Dfa) -> Result<(Dfa, Morphism)> {
    if let Some(w) = forbidden_pattern_in(dfa) {
        return Err(w.into_error(dfa));
    }
    let (rev, _, _) = convert(dfa);
    let (min, _) = minimize(dfa);
    let phi = find_morphism(&rev, &min).expect("equivalent automata map onto the minimum");
    Ok((rev, phi))
}

pub fn copy_counts(min_dfa: &Dfa) -> Result<CopyCount> {
    let (_, phi, _) = to_minimal_revdfa(min_dfa)?;
    Ok(CopyCount { counts: phi.fiber_sizes() })
}
