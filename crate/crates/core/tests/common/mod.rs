//! Shared generators for the integration and acceptance suites: seeded
//! random automata of the various classes, random MDPs and lasso
//! enumeration. Everything is deterministic given the seed.

use omega_core::automata::{scc_decomposition, Alphabet, Automaton, Kind, LassoWord};
use omega_core::mdp::Mdp;
use omega_core::probability::Rational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn letters(n: usize) -> Alphabet {
    let names = ["a", "b", "c", "d", "e", "f", "g"];
    Alphabet::new(names[..n].iter().copied()).unwrap()
}

/// Random total automaton; weak inputs get SCC-homogeneous acceptance.
pub fn random_automaton(r: &mut StdRng, max_states: usize, nl: usize, kind: Kind) -> Automaton {
    let n = r.gen_range(1..=max_states);
    let mut trans = Vec::new();
    for q in 0..n {
        for l in 0..nl {
            let degree = 1 + r.gen_range(0..2) + usize::from(r.gen_range(0..4) == 0);
            let mut succs: Vec<usize> = (0..degree.min(n)).map(|_| r.gen_range(0..n)).collect();
            succs.sort_unstable();
            succs.dedup();
            for p in succs {
                trans.push((q, l, p));
            }
        }
    }
    let accepting: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.4)).collect();
    let a = Automaton::new("rand", letters(nl), Kind::Buchi, n, 0, accepting, trans.clone())
        .unwrap();
    match kind {
        Kind::Buchi => a,
        Kind::CoBuchi => a.with_kind(Kind::CoBuchi),
        Kind::Weak => {
            // Re-draw acceptance per reachable SCC; unreachable states
            // stay rejecting, so homogeneity holds everywhere.
            let g = scc_decomposition(&a);
            let mut acc = Vec::new();
            for c in &g.components {
                if r.gen_bool(0.4) {
                    acc.extend(c.iter().copied());
                }
            }
            Automaton::new("rand", letters(nl), Kind::Weak, n, 0, acc, trans).unwrap()
        }
    }
}

/// Random deterministic total automaton.
pub fn random_deterministic(r: &mut StdRng, max_states: usize, nl: usize, kind: Kind) -> Automaton {
    let n = r.gen_range(1..=max_states);
    let mut trans = Vec::new();
    for q in 0..n {
        for l in 0..nl {
            trans.push((q, l, r.gen_range(0..n)));
        }
    }
    let accepting: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.4)).collect();
    let a = Automaton::new("randd", letters(nl), Kind::Buchi, n, 0, accepting, trans.clone())
        .unwrap();
    match kind {
        Kind::Buchi => a,
        Kind::CoBuchi => a.with_kind(Kind::CoBuchi),
        Kind::Weak => {
            let g = scc_decomposition(&a);
            let mut acc = Vec::new();
            for c in &g.components {
                if r.gen_bool(0.4) {
                    acc.extend(c.iter().copied());
                }
            }
            Automaton::new("randd", letters(nl), Kind::Weak, n, 0, acc, trans).unwrap()
        }
    }
}

/// Semantically deterministic nondeterministic automaton with the
/// language of a random deterministic one: states are duplicated into
/// classes and every successor set stays inside a single class, so all
/// siblings are language-equal by construction. The result is even DBP.
pub fn random_class_nondet(
    r: &mut StdRng,
    det_states: usize,
    copies: usize,
    nl: usize,
    kind: Kind,
) -> Automaton {
    let d = random_deterministic(r, det_states, nl, kind);
    let n0 = d.num_states();
    let extra = r.gen_range(0..=copies);
    let n = n0 + extra;
    let mut class: Vec<usize> = (0..n0).collect();
    for _ in 0..extra {
        class.push(r.gen_range(0..n0));
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n0];
    for (i, &c) in class.iter().enumerate() {
        members[c].push(i);
    }
    let mut trans = Vec::new();
    for i in 0..n {
        for l in 0..nl {
            let target_class = d.successors(class[i], l)[0];
            let pool = &members[target_class];
            let degree = 1 + usize::from(r.gen_bool(0.5));
            let mut picked: Vec<usize> =
                (0..degree).map(|_| pool[r.gen_range(0..pool.len())]).collect();
            picked.sort_unstable();
            picked.dedup();
            for p in picked {
                trans.push((i, l, p));
            }
        }
    }
    let accepting: Vec<usize> = (0..n).filter(|&i| d.is_accepting(class[i])).collect();
    Automaton::new("sdgen", letters(nl), d.kind(), n, d.initial(), accepting, trans).unwrap()
}

/// Random SD (indeed DBP) nondeterministic Büchi automaton.
pub fn random_sd_nbw(r: &mut StdRng, det_states: usize, copies: usize, nl: usize) -> Automaton {
    let kind = if r.gen_bool(0.25) { Kind::Weak } else { Kind::Buchi };
    random_class_nondet(r, det_states, copies, nl, kind)
}

/// Random HD (indeed DBP) nondeterministic co-Büchi automaton, built by
/// determinizing-then-re-nondeterminizing with language-safe duplication.
pub fn random_hd_ncw(r: &mut StdRng, det_states: usize, copies: usize, nl: usize) -> Automaton {
    random_class_nondet(r, det_states, copies, nl, Kind::CoBuchi)
}

/// Random MDP with small exact probabilities.
pub fn random_mdp(r: &mut StdRng, max_states: usize, alphabet: &Alphabet) -> Mdp {
    let n = r.gen_range(1..=max_states);
    let labels: Vec<usize> = (0..n).map(|_| r.gen_range(0..alphabet.len())).collect();
    let mut action_names = Vec::new();
    let mut trans = Vec::new();
    for _s in 0..n {
        let acts = 1 + usize::from(r.gen_bool(0.5));
        let names: Vec<String> = (0..acts).map(|a| format!("a{a}")).collect();
        let mut rows = Vec::new();
        for _ in 0..acts {
            let supp = 1 + r.gen_range(0..2.min(n));
            let mut dests: Vec<usize> = (0..supp).map(|_| r.gen_range(0..n)).collect();
            dests.sort_unstable();
            dests.dedup();
            let weights: Vec<i64> = dests.iter().map(|_| r.gen_range(1..4)).collect();
            let total: i64 = weights.iter().sum();
            let row: Vec<(usize, Rational)> = dests
                .iter()
                .zip(&weights)
                .map(|(&d, &w)| (d, Rational::new(w.into(), total.into())))
                .collect();
            rows.push(row);
        }
        action_names.push(names);
        trans.push(rows);
    }
    Mdp::new("randm", alphabet.clone(), labels, r.gen_range(0..n), action_names, trans)
        .unwrap()
}

/// Every lasso with stem length ≤ `max_stem` and loop length in
/// `1..=max_loop` over `nl` letters.
pub fn all_lassos(nl: usize, max_stem: usize, max_loop: usize) -> Vec<LassoWord> {
    fn words(nl: usize, len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..nl).map(move |l| {
                        let mut w2 = w.clone();
                        w2.push(l);
                        w2
                    })
                })
                .collect();
        }
        out
    }
    let mut out = Vec::new();
    for su in 0..=max_stem {
        for lu in 1..=max_loop {
            for stem in words(nl, su) {
                for looped in words(nl, lu) {
                    out.push(LassoWord::new(stem.clone(), looped).unwrap());
                }
            }
        }
    }
    out
}

/// Random lasso with bounded stem and loop.
pub fn random_lasso(r: &mut StdRng, nl: usize, max_stem: usize, max_loop: usize) -> LassoWord {
    let su = r.gen_range(0..=max_stem);
    let lu = r.gen_range(1..=max_loop);
    let stem: Vec<usize> = (0..su).map(|_| r.gen_range(0..nl)).collect();
    let looped: Vec<usize> = (0..lu).map(|_| r.gen_range(0..nl)).collect();
    LassoWord::new(stem, looped).unwrap()
}
