use crate::analysis::find_uniqueness_witness;
use crate::automaton::{Dfa, StateId};
use crate::equivalence::equivalent;
use crate::error::{Error, Result};
use crate::morphism::find_morphism;

/// A minimal reversible automaton for `L(m)` not isomorphic to the minimal
/// reversible automaton `a`, obtained by rewiring `b`-transitions entering
/// the copies of a state `p` with `c(p) > 1` entered on two letters.
///
/// Let `w` be the shortest word reaching `p` in `m`, `a` its last letter,
/// `b ≠ a` another letter entering `p`, and `p̂ = δ'(q'_I, w)`:
/// * no `b`-transition enters `p̂`: one entering another copy is moved to `p̂`;
/// * some other copy is entered on `b`: the two `b`-transitions are swapped;
/// * otherwise the `b`-transition into `p̂` is moved to a copy without one.
pub fn gen_alt_minimal(a: &Dfa, m: &Dfa) -> Result<Dfa> {
    if !a.is_reversible() {
        return Err(Error::NotReversible);
    }
    if !equivalent(a, m) {
        return Err(Error::NotEquivalent);
    }
    let witness = find_uniqueness_witness(m)?.ok_or(Error::UniqueMinimal)?;
    let phi = find_morphism(a, m).ok_or(Error::NoMorphism)?;
    let p = witness.p;

    let w = m.shortest_words_from(m.initial())[p.index()].clone().expect("all states reachable");
    let last = w.last().expect("p is not the initial state");
    let b = m
        .in_letters(p)
        .into_iter()
        .find(|&c| c != last)
        .expect("p is entered on two letters");
    let p_hat = a.run(&w)?.expect("a accepts the same language as m");
    let others: Vec<StateId> = phi.fiber(p).into_iter().filter(|&s| s != p_hat).collect();
    let b_source = |t: StateId| a.reverse_delta(t, b).expect("known letter").first().copied();

    let mut builder = a.to_builder();
    let mut redirect = |from: StateId, to: StateId| {
        builder.set_transition(from.index(), b, to.index()).expect("known letter");
    };
    match b_source(p_hat) {
        None => {
            let (q_tilde, _) = others
                .iter()
                .find_map(|&t| b_source(t).map(|q| (q, t)))
                .ok_or_else(|| Error::WitnessInvalid("no copy of p is entered on b".into()))?;
            redirect(q_tilde, p_hat);
        }
        Some(q_hat) => {
            if let Some((q_tilde, p_tilde)) = others.iter().find_map(|&t| b_source(t).map(|q| (q, t))) {
                redirect(q_tilde, p_hat);
                redirect(q_hat, p_tilde);
            } else {
                let p_tilde = *others
                    .first()
                    .ok_or_else(|| Error::WitnessInvalid("p has a single copy".into()))?;
                redirect(q_hat, p_tilde);
            }
        }
    }
    let (alt, _) = builder.build_trimmed()?;
    Ok(alt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::is_minimal_revdfa;
    use crate::automaton::dfa_from_triples;
    use crate::conversion::to_minimal_revdfa;
    use crate::morphism::isomorphic;

    #[test]
    fn canonical_becomes_cycle() {
        let m = dfa_from_triples(
            "qI",
            &["qI", "q"],
            &[("qI", 'a', "p"), ("p", 'a', "qI"), ("qI", 'b', "q"), ("p", 'b', "q"), ("q", 'a', "q")],
        )
        .unwrap();
        let right = dfa_from_triples(
            "qI",
            &["qI", "q1", "q2"],
            &[
                ("qI", 'a', "p"),
                ("p", 'a', "qI"),
                ("qI", 'b', "q1"),
                ("p", 'b', "q2"),
                ("q1", 'a', "q2"),
                ("q2", 'a', "q1"),
            ],
        )
        .unwrap();
        let (mid, _, _) = to_minimal_revdfa(&m).unwrap();
        let alt = gen_alt_minimal(&mid, &m).unwrap();
        assert!(isomorphic(&alt, &right));
        assert!(!isomorphic(&alt, &mid));
        assert!(is_minimal_revdfa(&alt, &m).unwrap().is_minimal());
    }

    #[test]
    fn unique_minimal_is_refused() {
        let m = dfa_from_triples(
            "qI",
            &["qI", "q"],
            &[("qI", 'a', "p"), ("p", 'a', "qI"), ("qI", 'b', "q"), ("p", 'b', "q")],
        )
        .unwrap();
        let (rev, _, _) = to_minimal_revdfa(&m).unwrap();
        assert_eq!(gen_alt_minimal(&rev, &m), Err(Error::UniqueMinimal));
    }
}
