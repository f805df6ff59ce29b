mod oracle;

use revkit::analysis::{
    fiber_sizes, has_unique_minimal, is_minimal_revdfa, is_reduced, reduce, w_set,
};
use revkit::conversion::{copy_counts, to_minimal_revdfa};
use revkit::corpus::{fixtures, load, regex};
use revkit::format::emit_dfa;
use revkit::generation::{find_irrev_hypothesis, gen_alt_minimal, gen_reduced, random_cover, witness_from_irrev_loop};
use revkit::minimize::{is_minimum, minimize};
use revkit::morphism::isomorphic;
use revkit::regex::regex_to_dfa;
use revkit::reversibility::{find_forbidden_pattern, split_parts};
use revkit::{Dfa, Word};

fn names(d: &Dfa, states: &[revkit::StateId]) -> Vec<String> {
    states.iter().map(|&s| d.name(s).to_string()).collect()
}

#[test]
fn fixtures_match_their_regexes() {
    assert_eq!(fixtures().len(), 22);
    for (name, _) in fixtures() {
        let d = load(name).unwrap();
        let r = regex_to_dfa(regex(name).unwrap()).unwrap();
        assert!(oracle::equivalent(&d, &r), "{name}");
    }
}

#[test]
fn minimum_fixtures_are_minimum() {
    for (name, _) in fixtures().iter().filter(|(n, _)| n.ends_with("_min") || *n == "ab_star" || *n == "fig1") {
        assert!(is_minimum(&load(name).unwrap()), "{name}");
    }
}

#[test]
fn reversible_fixtures_are_reversible() {
    for (name, _) in fixtures() {
        let d = load(name).unwrap();
        let expected = !(name.ends_with("_min") || *name == "fig1" || *name == "ab_star");
        assert_eq!(oracle::is_reversible(&d), expected, "{name}");
    }
}

#[test]
fn split_of_the_border_example() {
    let d = load("fig1").unwrap();
    let split = split_parts(&d);
    assert_eq!(names(&d, split.reversible_part()), ["qI", "q1", "q2"]);
    assert_eq!(names(&d, split.irreversible_part()), ["q3", "q4"]);
    let border: Vec<(String, char, String)> =
        split.border().iter().map(|&(p, c, q)| (d.name(p).into(), c, d.name(q).into())).collect();
    assert_eq!(border, [("q1".into(), 'a', "q3".into()), ("q2".into(), 'a', "q3".into())]);
    assert!(find_forbidden_pattern(&d).unwrap().is_none());
}

#[test]
fn canonical_conversions_match_the_drawn_minimal_automata() {
    for (min, minimal) in [
        ("fig3_min", "fig3_mid"),
        ("fig8_min", "fig8_minimal"),
        ("fig9_min", "fig9_minrev"),
    ] {
        let (a, _, _) = to_minimal_revdfa(&load(min).unwrap()).unwrap();
        assert!(isomorphic(&a, &load(minimal).unwrap()), "{min}");
    }
    // The drawn automaton is the alternative to the canonical one.
    let m = load("fig7_min").unwrap();
    let (a, _, _) = to_minimal_revdfa(&m).unwrap();
    let drawn = load("fig7_minimal").unwrap();
    assert!(!isomorphic(&a, &drawn));
    assert!(isomorphic(&gen_alt_minimal(&a, &m).unwrap(), &drawn));
}

#[test]
fn drawn_minimal_automata_are_minimal() {
    for (min, minimal) in [
        ("fig3_min", "fig3_mid"),
        ("fig3_min", "fig3_right"),
        ("fig5_min", "fig5_minimal"),
        ("fig6_min", "fig6_minimal"),
        ("fig7_min", "fig7_minimal"),
        ("fig8_min", "fig8_minimal"),
        ("fig9_min", "fig9_minrev"),
        ("fig10_min", "fig10_minimal"),
    ] {
        let m = load(min).unwrap();
        let a = load(minimal).unwrap();
        assert!(is_minimal_revdfa(&a, &m).unwrap().is_minimal(), "{minimal}");
        assert_eq!(fiber_sizes(&a, &m).unwrap(), copy_counts(&m).unwrap().counts().to_vec(), "{minimal}");
    }
}

#[test]
fn drawn_reduced_automata_are_reduced_but_not_minimal() {
    for (min, reduced) in [
        ("fig3_min", "fig4"),
        ("fig5_min", "fig5_reduced"),
        ("fig6_min", "fig6_reduced"),
        ("fig10_min", "fig10_reduced"),
    ] {
        let m = load(min).unwrap();
        let a = load(reduced).unwrap();
        assert!(is_reduced(&a).unwrap(), "{reduced}");
        assert!(!is_minimal_revdfa(&a, &m).unwrap().is_minimal(), "{reduced}");
        assert!(isomorphic(&minimize(&a).0, &m), "{reduced}");
    }
    let non_minimal = load("fig8_nonminimal").unwrap();
    assert!(!is_minimal_revdfa(&non_minimal, &load("fig8_min").unwrap()).unwrap().is_minimal());
    assert!(isomorphic(&reduce(&non_minimal).unwrap(), &load("fig8_minimal").unwrap()));
}

#[test]
fn w_sets_of_the_accepting_sink() {
    let m = load("fig8_min").unwrap();
    let q = m.state("q").unwrap();
    assert_eq!(copy_counts(&m).unwrap().get(q), 2);
    let pairs: Vec<(String, Word)> = w_set(&m, q).unwrap().pairs.into_iter().map(|(r, x)| (m.name(r).into(), x)).collect();
    assert_eq!(pairs, [("r1".into(), Word::from("ba")), ("r2".into(), Word::from("ba"))]);
    assert!(has_unique_minimal(&m).unwrap());
}

#[test]
fn uniqueness_across_the_corpus() {
    for (min, unique) in [
        ("fig3_min", false),
        ("fig5_min", false),
        ("fig6_min", false),
        ("fig7_min", false),
        ("fig8_min", true),
        ("fig9_min", true),
        ("fig10_min", false),
    ] {
        let m = load(min).unwrap();
        assert_eq!(has_unique_minimal(&m).unwrap(), unique, "{min}");
        let (a, _, _) = to_minimal_revdfa(&m).unwrap();
        assert_eq!(gen_alt_minimal(&a, &m).is_err(), unique, "{min}");
    }
    let m = load("fig3_min").unwrap();
    let (a, _, _) = to_minimal_revdfa(&m).unwrap();
    assert!(isomorphic(&gen_alt_minimal(&a, &m).unwrap(), &load("fig3_right").unwrap()));
}

#[test]
fn hypothesis_triage() {
    for (min, holds) in [("fig3_min", true), ("fig5_min", true), ("fig6_min", true), ("fig7_min", false)] {
        let m = load(min).unwrap();
        let w = find_irrev_hypothesis(&m).unwrap();
        assert_eq!(w.is_some(), holds, "{min}");
        if let Some(w) = w {
            assert!(w.validate(&m));
        }
    }
    assert!(witness_from_irrev_loop(&load("fig3_min").unwrap()).unwrap().is_some());
    assert!(witness_from_irrev_loop(&load("fig10_min").unwrap()).unwrap().is_none());
}

#[test]
fn generated_reduced_automata_for_prime_sizes() {
    for min in ["fig3_min", "fig5_min", "fig6_min"] {
        let m = load(min).unwrap();
        let (a, _, _) = to_minimal_revdfa(&m).unwrap();
        let w = find_irrev_hypothesis(&m).unwrap().unwrap();
        let mut seen: Vec<Dfa> = Vec::new();
        for n in [2, 3, 5, 7] {
            let d = gen_reduced(&m, &w, n).unwrap();
            assert!(oracle::is_reversible(&d), "{min} {n}");
            assert!(oracle::equivalent(&d, &m), "{min} {n}");
            assert!(is_reduced(&d).unwrap(), "{min} {n}");
            assert!(d.num_states() >= a.num_states());
            assert!(seen.iter().all(|e| !isomorphic(e, &d)), "{min} {n}");
            seen.push(d);
        }
    }
    let m = load("fig5_min").unwrap();
    let w = find_irrev_hypothesis(&m).unwrap().unwrap();
    let three = gen_reduced(&m, &w, 3).unwrap();
    assert_eq!(three.num_states(), load("fig5_reduced").unwrap().num_states());
}

#[test]
fn unique_minimal_is_recovered_from_covers() {
    let m = load("fig9_min").unwrap();
    let target = load("fig9_minrev").unwrap();
    for seed in 0..10 {
        let cover = random_cover(&target, 3, seed).unwrap();
        assert!(isomorphic(&reduce(&cover).unwrap(), &target), "seed {seed}");
    }
    assert!(has_unique_minimal(&m).unwrap());
}

#[test]
fn golden_emission() {
    let m = load("fig9_min").unwrap();
    assert_eq!(emit_dfa(&m), include_str!("golden/fig9_min.dfa"));
    let (a, _, _) = to_minimal_revdfa(&m).unwrap();
    assert_eq!(emit_dfa(&a), include_str!("golden/fig9_minrev.dfa"));
}
