//! Plain-text automaton documents.
//!
//! ```text
//! dfa
//! alphabet: a b
//! initial: qI
//! final: qI q
//! qI a p
//! qI b q
//! ```
//!
//! `#` starts a comment. A state is declared by appearing as the initial
//! state, as a final state, or as the source of a transition; a transition
//! into an undeclared state is a syntax error. A comment of the form
//! `# regex: PATTERN` records a regular expression for the language.

use std::collections::HashMap;

use crate::automaton::{Dfa, DfaBuilder};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Drop useless states instead of rejecting them.
    pub allow_useless: bool,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    parse_dfa_with(text, ParseOptions::default())
}

pub fn parse_dfa_with(text: &str, options: ParseOptions) -> Result<Dfa> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, "dfa")) => {}
        Some((n, other)) => return Err(syntax(n, format!("expected `dfa`, found `{other}`"))),
        None => return Err(syntax(1, "empty document")),
    }

    let mut alphabet: Option<Vec<char>> = None;
    let mut initial: Option<String> = None;
    let mut finals: Option<Vec<String>> = None;
    let mut triples: Vec<(usize, String, char, String)> = Vec::new();

    for (n, line) in lines {
        if let Some((key, rest)) = line.split_once(':') {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            match key.trim() {
                "alphabet" if alphabet.is_none() => {
                    let mut letters = Vec::new();
                    for t in tokens {
                        let mut chars = t.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) => letters.push(c),
                            _ => return Err(syntax(n, format!("letter `{t}` is not a single character"))),
                        }
                    }
                    alphabet = Some(letters);
                }
                "initial" if initial.is_none() => match tokens.as_slice() {
                    [q] => initial = Some(q.to_string()),
                    _ => return Err(syntax(n, "expected exactly one initial state")),
                },
                "final" if finals.is_none() => {
                    finals = Some(tokens.iter().map(|t| t.to_string()).collect());
                }
                k @ ("alphabet" | "initial" | "final") => {
                    return Err(syntax(n, format!("duplicate `{k}` line")));
                }
                k => return Err(syntax(n, format!("unknown header `{k}`"))),
            }
            continue;
        }
        match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            [src, letter, dst] => {
                let mut chars = letter.chars();
                let c = match (chars.next(), chars.next()) {
                    (Some(c), None) => c,
                    _ => return Err(syntax(n, format!("letter `{letter}` is not a single character"))),
                };
                triples.push((n, src.to_string(), c, dst.to_string()));
            }
            _ => return Err(syntax(n, "expected `SOURCE LETTER TARGET`")),
        }
    }

    let alphabet = alphabet.ok_or_else(|| syntax(0, "missing `alphabet:` line"))?;
    let initial = initial.ok_or_else(|| syntax(0, "missing `initial:` line"))?;
    let finals = finals.ok_or_else(|| syntax(0, "missing `final:` line"))?;

    let mut b = DfaBuilder::new(alphabet.iter().copied());
    if b.alphabet().len() != alphabet.len() {
        return Err(syntax(0, "repeated letter in alphabet"));
    }
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut declare = |b: &mut DfaBuilder, name: &str| -> usize {
        *ids.entry(name.to_string())
            .or_insert_with(|| b.add_state(name, finals.iter().any(|f| f == name)))
    };
    let init = declare(&mut b, &initial);
    b.set_initial(init);
    for f in &finals {
        declare(&mut b, f);
    }
    for (_, src, _, _) in &triples {
        declare(&mut b, src);
    }
    for (n, src, c, dst) in &triples {
        if !alphabet.contains(c) {
            return Err(syntax(*n, format!("letter `{c}` is not in the alphabet")));
        }
        let to = match ids.get(dst) {
            Some(&t) => t,
            None => return Err(syntax(*n, format!("undeclared state `{dst}`"))),
        };
        let from = ids[src];
        b.add_transition(from, *c, to).map_err(|e| syntax(*n, e.to_string()))?;
    }
    if options.allow_useless {
        b.build_trimmed().map(|(d, _)| d)
    } else {
        b.build()
    }
}

/// The pattern of the first `# regex: PATTERN` comment, if any.
pub fn regex_comment(text: &str) -> Option<&str> {
    text.lines().find_map(|l| {
        let (_, comment) = l.split_once('#')?;
        let pattern = comment.trim().strip_prefix("regex:")?;
        Some(pattern.trim())
    })
}

/// Canonical text form: states in canonical order, letters sorted.
pub fn emit_dfa(d: &Dfa) -> String {
    let mut out = String::from("dfa\n");
    let letters: Vec<String> = d.alphabet().iter().map(char::to_string).collect();
    push_header(&mut out, "alphabet:", &letters);
    out.push_str(&format!("initial: {}\n", d.name(d.initial())));
    let finals: Vec<String> = d.finals().iter().map(|&s| d.name(s).to_string()).collect();
    push_header(&mut out, "final:", &finals);
    for (s, c, t) in d.transitions() {
        out.push_str(&format!("{} {} {}\n", d.name(s), c, d.name(t)));
    }
    out
}

fn push_header(out: &mut String, key: &str, items: &[String]) {
    out.push_str(key);
    for item in items {
        out.push(' ');
        out.push_str(item);
    }
    out.push('\n');
}
