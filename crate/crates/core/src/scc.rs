//! Strongly connected components (Tarjan) and the reachability order on them.

use std::collections::BTreeSet;

use crate::automaton::{Dfa, StateId};

/// Tarjan's algorithm, iterative. Returns a component label per vertex;
/// labels are assigned in completion order (sinks of the condensation first).
pub(crate) fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut counter = 0;
    let mut index: Vec<Option<usize>> = vec![None; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next_comp = 0;

    for root in 0..n {
        if index[root].is_some() {
            continue;
        }
        let mut calls: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = Some(counter);
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut child)) = calls.last_mut() {
            if *child < adj[v].len() {
                let w = adj[v][*child];
                *child += 1;
                match index[w] {
                    None => {
                        index[w] = Some(counter);
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        calls.push((w, 0));
                    }
                    Some(iw) if on_stack[w] => low[v] = low[v].min(iw),
                    Some(_) => {}
                }
            } else {
                calls.pop();
                if let Some(&(u, _)) = calls.last() {
                    low[u] = low[u].min(low[v]);
                }
                if Some(low[v]) == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// SCC partition of an automaton with the partial order `⪯`.
///
/// Components are numbered by their smallest (canonical) state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    components: Vec<Vec<StateId>>,
    component_of: Vec<usize>,
    nontrivial: Vec<bool>,
    // reach[i][j]: component j is reachable from component i (reflexive)
    reach: Vec<Vec<bool>>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Vec<StateId>] {
        &self.components
    }

    pub fn component(&self, c: usize) -> &[StateId] {
        &self.components[c]
    }

    pub fn component_of(&self, s: StateId) -> usize {
        self.component_of[s.index()]
    }

    pub fn same_component(&self, s: StateId, t: StateId) -> bool {
        self.component_of(s) == self.component_of(t)
    }

    /// A component is nontrivial when it has a cycle (possibly a self-loop).
    pub fn is_nontrivial(&self, c: usize) -> bool {
        self.nontrivial[c]
    }

    /// Some state of `to` is reachable from `from` (reflexive).
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        self.reach[from][to]
    }

    /// `c1 ⪯ c2`: equal, or `c2` is reachable from `c1` and not conversely.
    pub fn precedes(&self, c1: usize, c2: usize) -> bool {
        c1 == c2 || (self.reach[c1][c2] && !self.reach[c2][c1])
    }

    /// Components ordered so that every component comes after all the
    /// components preceding it; ties broken by component number.
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut indegree = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && self.direct_edge(i, j) {
                    indegree[j] += 1;
                }
            }
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&c| indegree[c] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(c) = ready.pop_first() {
            order.push(c);
            for j in 0..n {
                if j != c && self.direct_edge(c, j) {
                    indegree[j] -= 1;
                    if indegree[j] == 0 {
                        ready.insert(j);
                    }
                }
            }
        }
        order
    }

    /// Components ordered downstream first: every component comes before
    /// all components preceding it; ties broken by component number.
    pub fn reverse_topological_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut outdegree = vec![0usize; n];
        for (i, d) in outdegree.iter_mut().enumerate() {
            *d = (0..n).filter(|&j| j != i && self.direct_edge(i, j)).count();
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&c| outdegree[c] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(c) = ready.pop_first() {
            order.push(c);
            for i in 0..n {
                if i != c && self.direct_edge(i, c) {
                    outdegree[i] -= 1;
                    if outdegree[i] == 0 {
                        ready.insert(i);
                    }
                }
            }
        }
        order
    }

    // Kahn's algorithm over the transitive closure gives the same orders
    // as over the condensation itself.
    fn direct_edge(&self, i: usize, j: usize) -> bool {
        self.reach[i][j]
    }
}

/// SCC decomposition of the transition graph of `dfa`.
pub fn sccs(dfa: &Dfa) -> SccDecomposition {
    let adj: Vec<Vec<usize>> = dfa
        .states()
        .map(|s| dfa.successors(s).into_iter().map(StateId::index).collect())
        .collect();
    let raw = tarjan(&adj);

    // Renumber components by smallest member.
    let mut relabel = vec![usize::MAX; dfa.num_states()];
    let mut components: Vec<Vec<StateId>> = Vec::new();
    let mut component_of = vec![0; dfa.num_states()];
    for s in dfa.states() {
        let r = raw[s.index()];
        if relabel[r] == usize::MAX {
            relabel[r] = components.len();
            components.push(Vec::new());
        }
        component_of[s.index()] = relabel[r];
        components[relabel[r]].push(s);
    }

    let k = components.len();
    let nontrivial = components
        .iter()
        .map(|members| {
            members.len() > 1 || adj[members[0].index()].contains(&members[0].index())
        })
        .collect();

    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for s in dfa.states() {
        for &t in &adj[s.index()] {
            let (cs, ct) = (component_of[s.index()], component_of[t]);
            if cs != ct {
                succ[cs].insert(ct);
            }
        }
    }
    let mut reach = vec![vec![false; k]; k];
    for (c, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![c];
        row[c] = true;
        while let Some(x) = stack.pop() {
            for &y in &succ[x] {
                if !row[y] {
                    row[y] = true;
                    stack.push(y);
                }
            }
        }
    }

    SccDecomposition {
        components,
        component_of,
        nontrivial,
        reach,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::dfa_from_triples;

    #[test]
    fn one_b_components() {
        let d = dfa_from_triples(
            "qI",
            &["qI", "q"],
            &[("qI", 'a', "p"), ("p", 'a', "qI"), ("qI", 'b', "q"), ("p", 'b', "q"), ("q", 'a', "q")],
        )
        .unwrap();
        let s = sccs(&d);
        assert_eq!(s.len(), 2);
        let (qi, p, q) = (d.state("qI").unwrap(), d.state("p").unwrap(), d.state("q").unwrap());
        assert!(s.same_component(qi, p));
        let (c0, c1) = (s.component_of(qi), s.component_of(q));
        assert!(s.is_nontrivial(c0) && s.is_nontrivial(c1));
        assert!(s.precedes(c0, c1));
        assert!(!s.precedes(c1, c0));
        assert_eq!(s.topological_order(), vec![c0, c1]);
        assert_eq!(s.reverse_topological_order(), vec![c1, c0]);
    }

    #[test]
    fn single_state_without_loop_is_trivial() {
        let mut b = crate::automaton::DfaBuilder::new(['a']);
        let s = b.add_state("s", true);
        b.set_initial(s);
        let d = b.build().unwrap();
        let dec = sccs(&d);
        assert_eq!(dec.len(), 1);
        assert!(!dec.is_nontrivial(0));
    }

    #[test]
    fn tarjan_on_long_chain_does_not_recurse() {
        let n = 100_000;
        let adj: Vec<Vec<usize>> = (0..n).map(|i| if i + 1 < n { vec![i + 1] } else { vec![0] }).collect();
        let comp = tarjan(&adj);
        assert!(comp.iter().all(|&c| c == comp[0]));
    }
}
