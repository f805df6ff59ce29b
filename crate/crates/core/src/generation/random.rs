use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Dfa, DfaBuilder};
use crate::error::{Error, Result};

/// A random automaton with at most `n_states` states over the first
/// `n_letters` lowercase letters. Each transition is present with
/// probability `density` and each state is accepting with probability ½;
/// useless states are trimmed and empty languages resampled.
pub fn random_dfa(seed: u64, n_states: usize, n_letters: usize, density: f64) -> Result<Dfa> {
    if n_states == 0 {
        return Err(Error::InvalidParameter("at least one state is required".into()));
    }
    if !(1..=26).contains(&n_letters) {
        return Err(Error::InvalidParameter("the number of letters must be between 1 and 26".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidParameter("density must lie in (0, 1]".into()));
    }
    let letters: Vec<char> = ('a'..='z').take(n_letters).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut b = DfaBuilder::new(letters.iter().copied());
        for i in 0..n_states {
            b.add_state(format!("q{i}"), rng.gen_bool(0.5));
        }
        b.set_initial(0);
        for s in 0..n_states {
            for &c in &letters {
                if rng.gen_bool(density) {
                    b.set_transition(s, c, rng.gen_range(0..n_states))?;
                }
            }
        }
        match b.build_trimmed() {
            Ok((d, _)) => return Ok(d),
            Err(Error::EmptyLanguage) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// A `copies`-fold covering of `a`: states `(s, i)`, and each transition
/// `s -c-> t` becomes `(s, i) -c-> (t, π(i))` for a random permutation `π`.
/// The covering of a reversible automaton is reversible, and it maps onto
/// `a` by forgetting the index. Only the part reachable from `(q_I, 0)` is
/// kept.
pub fn random_cover(a: &Dfa, copies: usize, seed: u64) -> Result<Dfa> {
    if copies == 0 {
        return Err(Error::InvalidParameter("at least one copy is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = DfaBuilder::new(a.alphabet().iter().copied());
    let id = |s: usize, i: usize| s * copies + i;
    for s in a.states() {
        for i in 0..copies {
            b.add_state(format!("{}.{i}", a.name(s)), a.is_final(s));
        }
    }
    b.set_initial(id(a.initial().index(), 0));
    let mut perm: Vec<usize> = (0..copies).collect();
    for (s, c, t) in a.transitions() {
        perm.shuffle(&mut rng);
        for (i, &j) in perm.iter().enumerate() {
            b.set_transition(id(s.index(), i), c, id(t.index(), j))?;
        }
    }
    b.uniquify_names();
    Ok(b.build_trimmed()?.0)
}
