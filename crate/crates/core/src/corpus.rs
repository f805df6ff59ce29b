//! Automata shipped with the crate, in the text format of [`crate::format`].
//! Each carries a `# regex:` comment describing its language.

use crate::automaton::Dfa;
use crate::error::Result;
use crate::format::{parse_dfa, regex_comment};

const FIXTURES: &[(&str, &str)] = &[
    ("ab_star", include_str!("../../../corpus/ab_star.dfa")),
    ("fig1", include_str!("../../../corpus/fig1.dfa")),
    ("fig10_min", include_str!("../../../corpus/fig10_min.dfa")),
    ("fig10_minimal", include_str!("../../../corpus/fig10_minimal.dfa")),
    ("fig10_reduced", include_str!("../../../corpus/fig10_reduced.dfa")),
    ("fig3_mid", include_str!("../../../corpus/fig3_mid.dfa")),
    ("fig3_min", include_str!("../../../corpus/fig3_min.dfa")),
    ("fig3_right", include_str!("../../../corpus/fig3_right.dfa")),
    ("fig4", include_str!("../../../corpus/fig4.dfa")),
    ("fig5_min", include_str!("../../../corpus/fig5_min.dfa")),
    ("fig5_minimal", include_str!("../../../corpus/fig5_minimal.dfa")),
    ("fig5_reduced", include_str!("../../../corpus/fig5_reduced.dfa")),
    ("fig6_min", include_str!("../../../corpus/fig6_min.dfa")),
    ("fig6_minimal", include_str!("../../../corpus/fig6_minimal.dfa")),
    ("fig6_reduced", include_str!("../../../corpus/fig6_reduced.dfa")),
    ("fig7_min", include_str!("../../../corpus/fig7_min.dfa")),
    ("fig7_minimal", include_str!("../../../corpus/fig7_minimal.dfa")),
    ("fig8_min", include_str!("../../../corpus/fig8_min.dfa")),
    ("fig8_minimal", include_str!("../../../corpus/fig8_minimal.dfa")),
    ("fig8_nonminimal", include_str!("../../../corpus/fig8_nonminimal.dfa")),
    ("fig9_min", include_str!("../../../corpus/fig9_min.dfa")),
    ("fig9_minrev", include_str!("../../../corpus/fig9_minrev.dfa")),
];

/// Names and texts of all fixtures, sorted by name.
pub fn fixtures() -> &'static [(&'static str, &'static str)] {
    FIXTURES
}

pub fn text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parses the fixture `name`. Panics on an unknown name.
pub fn load(name: &str) -> Result<Dfa> {
    parse_dfa(text(name).unwrap_or_else(|| panic!("no fixture named {name}")))
}

pub fn regex(name: &str) -> Option<&'static str> {
    text(name).and_then(regex_comment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::equivalent;
    use crate::regex::regex_to_dfa;

    #[test]
    fn every_fixture_matches_its_regex() {
        for (name, text) in fixtures() {
            let d = parse_dfa(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            let pattern = regex_comment(text).unwrap_or_else(|| panic!("{name} has no regex"));
            let r = regex_to_dfa(pattern).unwrap();
            assert!(equivalent(&d, &r), "{name} disagrees with {pattern}");
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(load("fig3_min").unwrap().num_states(), 3);
        assert_eq!(regex("ab_star"), Some("a*b*"));
        assert!(text("missing").is_none());
    }
}
