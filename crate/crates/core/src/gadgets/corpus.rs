//! Named corpus of small automata used throughout the test suites: the
//! strictness and almost-DBP counterexamples plus trivial universal and
//! empty machines.
//!
//! Each transcription is pinned down by a validation manifest in the
//! test suites (universality, measure, per-pruning measures, the
//! SD/HD/DBP classification); nothing else in the crate is allowed to
//! run before those manifests pass in the acceptance suite.

use crate::automata::{Alphabet, Automaton, Kind};

/// One-state universal Büchi automaton over `{a,b}`.
pub fn u() -> Automaton {
    let mut a = Automaton::new(
        "U",
        Alphabet::ab(),
        Kind::Buchi,
        1,
        0,
        [0],
        [(0, 0, 0), (0, 1, 0)],
    )
    .unwrap();
    a.set_state_name(0, "q0");
    a
}

/// One-state empty Büchi automaton over `{a,b}` (α = ∅).
pub fn z() -> Automaton {
    let mut a = Automaton::new(
        "Z",
        Alphabet::ab(),
        Kind::Buchi,
        1,
        0,
        [],
        [(0, 0, 0), (0, 1, 0)],
    )
    .unwrap();
    a.set_state_name(0, "q0");
    a
}

/// One-state universal co-Büchi automaton over `{a,b}` (α = ∅).
pub fn uc() -> Automaton {
    let mut a = Automaton::new(
        "Uc",
        Alphabet::ab(),
        Kind::CoBuchi,
        1,
        0,
        [],
        [(0, 0, 0), (0, 1, 0)],
    )
    .unwrap();
    a.set_state_name(0, "q0");
    a
}

/// The weak automaton separating SD from HD.
///
/// From `q0` every letter branches into the two guess states: `qa` bets
/// the next letter is `a`, `qb` bets on `b`. A correct bet reaches the
/// accepting sink, a wrong one falls back to `q0`. Every word is
/// accepted by the run that always bets right, and all states recognize
/// `{a,b}^ω`, so the automaton is SD; but any strategy can be forced to
/// bounce between the guess states and `q0` forever, so it is not HD,
/// and no pruning is universal either.
pub fn w() -> Automaton {
    // 0 = q0, 1 = qa, 2 = qb, 3 = qacc
    let mut a = Automaton::new(
        "W",
        Alphabet::ab(),
        Kind::Weak,
        4,
        0,
        [3],
        [
            (0, 0, 1),
            (0, 0, 2),
            (0, 1, 1),
            (0, 1, 2),
            (1, 0, 3),
            (1, 1, 0),
            (2, 0, 0),
            (2, 1, 3),
            (3, 0, 3),
            (3, 1, 3),
        ],
    )
    .unwrap();
    for (q, n) in [(0, "q0"), (1, "qa"), (2, "qb"), (3, "qacc")] {
        a.set_state_name(q, n);
    }
    a
}

/// The weak automaton that is not almost-DBP.
///
/// The accepting top component works like `W` with the polarity flipped:
/// `q0`, `pa`, `pb` are all accepting, a wrong bet now falls into the
/// rejecting sink `qrej` instead of going back. The omniscient run stays
/// in the top component forever, so the language is `{a,b}^ω`; every
/// pruning fixes the bets and falls into `qrej` almost surely, so every
/// pruning has measure zero.
pub fn a1() -> Automaton {
    // 0 = q0, 1 = pa, 2 = pb, 3 = qrej
    let mut a = Automaton::new(
        "A1",
        Alphabet::ab(),
        Kind::Weak,
        4,
        0,
        [0, 1, 2],
        [
            (0, 0, 1),
            (0, 0, 2),
            (0, 1, 1),
            (0, 1, 2),
            (1, 0, 0),
            (1, 1, 3),
            (2, 0, 3),
            (2, 1, 0),
            (3, 0, 3),
            (3, 1, 3),
        ],
    )
    .unwrap();
    for (q, n) in [(0, "q0"), (1, "pa"), (2, "pb"), (3, "qrej")] {
        a.set_state_name(q, n);
    }
    a
}

/// The example pruning of [`a1`]: all bets on `pa`. Its only ergodic SCC
/// is the rejecting sink, so its language has measure zero.
pub fn a1_pruned() -> Automaton {
    let mut a = Automaton::new(
        "A1'",
        Alphabet::ab(),
        Kind::Weak,
        4,
        0,
        [0, 1, 2],
        [
            (0, 0, 1),
            (0, 1, 1),
            (1, 0, 0),
            (1, 1, 3),
            (2, 0, 3),
            (2, 1, 0),
            (3, 0, 3),
            (3, 1, 3),
        ],
    )
    .unwrap();
    for (q, n) in [(0, "q0"), (1, "pa"), (2, "pb"), (3, "qrej")] {
        a.set_state_name(q, n);
    }
    a
}

/// The SD-NCW that is not almost-DBP.
///
/// `m` is the α-state; `pa`/`pb` bet on the next letter and a lost bet
/// passes through `m` before re-betting, while a won bet re-bets
/// directly. Guessing with full lookahead visits `m` only at the start,
/// so every state is universal and the automaton is SD. Every pruning
/// stays strongly connected with `m` inside, so its random walk visits
/// `m` infinitely often almost surely: every pruning has measure zero.
pub fn a2() -> Automaton {
    // 0 = m (α), 1 = pa, 2 = pb
    let mut a = Automaton::new(
        "A2",
        Alphabet::ab(),
        Kind::CoBuchi,
        3,
        0,
        [0],
        [
            (0, 0, 1),
            (0, 0, 2),
            (0, 1, 1),
            (0, 1, 2),
            (1, 0, 1),
            (1, 0, 2),
            (1, 1, 0),
            (2, 0, 0),
            (2, 1, 1),
            (2, 1, 2),
        ],
    )
    .unwrap();
    for (q, n) in [(0, "m"), (1, "pa"), (2, "pb")] {
        a.set_state_name(q, n);
    }
    a
}

/// The example pruning of [`a2`]: the natural bets. Strongly connected
/// and not α-free, hence measure zero.
pub fn a2_pruned() -> Automaton {
    let mut a = Automaton::new(
        "A2'",
        Alphabet::ab(),
        Kind::CoBuchi,
        3,
        0,
        [0],
        [
            (0, 0, 1),
            (0, 1, 2),
            (1, 0, 1),
            (1, 1, 0),
            (2, 0, 0),
            (2, 1, 2),
        ],
    )
    .unwrap();
    for (q, n) in [(0, "m"), (1, "pa"), (2, "pb")] {
        a.set_state_name(q, n);
    }
    a
}

/// The GFM weak automaton that is not SD: it accepts the words with
/// finitely many `a`'s by guessing, on a `b`, that no `a` is ever coming.
/// Missing transitions lead to a rejecting sink.
pub fn f5() -> Automaton {
    // 0 = q0, 1 = qacc (α), 2 = sink
    let mut a = Automaton::new(
        "F5",
        Alphabet::ab(),
        Kind::Weak,
        3,
        0,
        [1],
        [
            (0, 0, 0),
            (0, 1, 0),
            (0, 1, 1),
            (1, 0, 2),
            (1, 1, 1),
            (2, 0, 2),
            (2, 1, 2),
        ],
    )
    .unwrap();
    for (q, n) in [(0, "q0"), (1, "qacc"), (2, "sink")] {
        a.set_state_name(q, n);
    }
    a
}

/// The whole corpus with stable names, in a fixed order.
pub fn corpus() -> Vec<(&'static str, Automaton)> {
    vec![
        ("U", u()),
        ("Z", z()),
        ("Uc", uc()),
        ("W", w()),
        ("A1", a1()),
        ("A1-pruned", a1_pruned()),
        ("A2", a2()),
        ("A2-pruned", a2_pruned()),
        ("F5", f5()),
    ]
}
