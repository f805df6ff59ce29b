//! Regular expressions over single-character letters: concatenation,
//! union `+`, star `*`, parentheses and `ε`. Compiled through a Thompson
//! NFA and the subset construction, then minimized.
//!
//! ```
//! use revkit::regex::regex_to_dfa;
//! let d = regex_to_dfa("(aa)*+a*ba*").unwrap();
//! assert_eq!(d.num_states(), 3);
//! ```

use std::collections::{BTreeSet, HashMap};

use crate::automaton::{Dfa, DfaBuilder};
use crate::error::{Error, Result};
use crate::minimize::minimize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Epsilon,
    Letter(char),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn parse(pattern: &str) -> Result<Regex> {
        let tokens: Vec<(usize, char)> = pattern
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let mut parser = Parser { tokens, pos: 0, len: pattern.len() };
        let re = parser.union()?;
        if let Some(&(offset, c)) = parser.tokens.get(parser.pos) {
            return Err(Error::Regex { offset, message: format!("unexpected `{c}`") });
        }
        Ok(re)
    }

    fn letters(&self, out: &mut BTreeSet<char>) {
        match self {
            Regex::Epsilon => {}
            Regex::Letter(c) => {
                out.insert(*c);
            }
            Regex::Concat(a, b) | Regex::Union(a, b) => {
                a.letters(out);
                b.letters(out);
            }
            Regex::Star(a) => a.letters(out),
        }
    }
}

struct Parser {
    tokens: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |t| t.0)
    }

    fn union(&mut self) -> Result<Regex> {
        let mut re = self.concat()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            let rhs = self.concat()?;
            re = Regex::Union(Box::new(re), Box::new(rhs));
        }
        Ok(re)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut re: Option<Regex> = None;
        while let Some(c) = self.peek() {
            if c == '+' || c == ')' {
                break;
            }
            let item = self.starred()?;
            re = Some(match re {
                None => item,
                Some(prev) => Regex::Concat(Box::new(prev), Box::new(item)),
            });
        }
        re.ok_or_else(|| Error::Regex { offset: self.offset(), message: "expected an expression".into() })
    }

    fn starred(&mut self) -> Result<Regex> {
        let mut re = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            re = Regex::Star(Box::new(re));
        }
        Ok(re)
    }

    fn atom(&mut self) -> Result<Regex> {
        let offset = self.offset();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let re = self.union()?;
                if self.peek() != Some(')') {
                    return Err(Error::Regex { offset: self.offset(), message: "expected `)`".into() });
                }
                self.pos += 1;
                Ok(re)
            }
            Some('ε') => {
                self.pos += 1;
                Ok(Regex::Epsilon)
            }
            Some(c) if c.is_alphanumeric() => {
                self.pos += 1;
                Ok(Regex::Letter(c))
            }
            Some(c) => Err(Error::Regex { offset, message: format!("unexpected `{c}`") }),
            None => Err(Error::Regex { offset, message: "unexpected end of pattern".into() }),
        }
    }
}

#[derive(Default)]
struct Nfa {
    eps: Vec<Vec<usize>>,
    edges: Vec<Vec<(char, usize)>>,
}

impl Nfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.edges.push(Vec::new());
        self.eps.len() - 1
    }

    /// Thompson fragment for `re`: (entry, exit).
    fn fragment(&mut self, re: &Regex) -> (usize, usize) {
        match re {
            Regex::Epsilon => {
                let s = self.state();
                (s, s)
            }
            Regex::Letter(c) => {
                let (s, t) = (self.state(), self.state());
                self.edges[s].push((*c, t));
                (s, t)
            }
            Regex::Concat(a, b) => {
                let (a0, a1) = self.fragment(a);
                let (b0, b1) = self.fragment(b);
                self.eps[a1].push(b0);
                (a0, b1)
            }
            Regex::Union(a, b) => {
                let (s, t) = (self.state(), self.state());
                let (a0, a1) = self.fragment(a);
                let (b0, b1) = self.fragment(b);
                self.eps[s].extend([a0, b0]);
                self.eps[a1].push(t);
                self.eps[b1].push(t);
                (s, t)
            }
            Regex::Star(a) => {
                let (s, t) = (self.state(), self.state());
                let (a0, a1) = self.fragment(a);
                self.eps[s].extend([a0, t]);
                self.eps[a1].extend([a0, t]);
                (s, t)
            }
        }
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.eps[s] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }
}

/// Minimum partial automaton of the language denoted by `pattern`.
/// States are named `q0, q1, …` in canonical order.
pub fn regex_to_dfa(pattern: &str) -> Result<Dfa> {
    let re = Regex::parse(pattern)?;
    let mut letters = BTreeSet::new();
    re.letters(&mut letters);

    let mut nfa = Nfa::default();
    let (entry, exit) = nfa.fragment(&re);

    let mut b = DfaBuilder::new(letters.iter().copied());
    let mut start = BTreeSet::from([entry]);
    nfa.closure(&mut start);
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut subsets = vec![start.clone()];
    index.insert(start.clone(), b.add_state("s0", start.contains(&exit)));
    b.set_initial(0);
    let mut i = 0;
    while i < subsets.len() {
        let current = subsets[i].clone();
        for &c in &letters {
            let mut next: BTreeSet<usize> = current
                .iter()
                .flat_map(|&s| nfa.edges[s].iter().filter(|e| e.0 == c).map(|e| e.1))
                .collect();
            if next.is_empty() {
                continue;
            }
            nfa.closure(&mut next);
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    let t = b.add_state(format!("s{}", subsets.len()), next.contains(&exit));
                    index.insert(next.clone(), t);
                    subsets.push(next);
                    t
                }
            };
            b.add_transition(i, c, target)?;
        }
        i += 1;
    }
    let (dfa, _) = b.build_trimmed()?;
    let (min, _) = minimize(&dfa);
    min.renamed(|s, _| format!("q{}", s.index()))
}
