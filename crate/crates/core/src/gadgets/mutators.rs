//! Hierarchy-witness mutators: small surgeries that move an automaton to
//! a known spot in the nondeterminism hierarchy.

use crate::automata::{Automaton, Kind, StateId};
use crate::error::{Error, Result};
use crate::langops::is_empty;
use crate::limits::Limits;

/// Duplicates the first state (by id) that has incoming transitions,
/// together with those transitions. The result embodies the original
/// automaton, so it is DBP, and it is nondeterministic whenever the
/// duplicated state was reachable; the language is unchanged.
pub fn dbp_inflate(a: &Automaton, _limits: &Limits) -> Result<Automaton> {
    if is_empty(a) {
        return Err(Error::InvalidInput(
            "refusing to inflate an empty-language automaton".into(),
        ));
    }
    let incoming: Vec<(StateId, usize, StateId)> = a.transitions().collect();
    let target = (0..a.num_states())
        .find(|&q| incoming.iter().any(|&(_, _, p)| p == q))
        .expect("a total automaton has a state with incoming transitions");

    let fresh = a.num_states();
    let mut trans: Vec<(StateId, usize, StateId)> = incoming.clone();
    // The copy inherits the original's outgoing rows...
    for l in 0..a.alphabet().len() {
        for &p in a.successors(target, l) {
            trans.push((fresh, l, p));
        }
    }
    // ...and mirrors every transition into the original.
    for &(q, l, p) in &incoming {
        if p == target {
            trans.push((q, l, fresh));
        }
    }
    let mut b = Automaton::new(
        format!("{}+dup", a.name()),
        a.alphabet().clone(),
        a.kind(),
        a.num_states() + 1,
        a.initial(),
        a.accepting_states()
            .chain(if a.is_accepting(target) { Some(fresh) } else { None }),
        trans,
    )?;
    for q in 0..a.num_states() {
        if let Some(n) = a.state_name(q) {
            b.set_state_name(q, n);
        }
    }
    if let Some(n) = a.state_name(target) {
        b.set_state_name(fresh, format!("{n}+"));
    }
    Ok(b)
}

/// Adds a `letter`-transition from the initial state to a fresh
/// rejecting sink. The language is unchanged (the new run rejects), but
/// semantic determinism breaks as long as some accepted word starts with
/// the letter, which is required of the input.
pub fn sd_break(a: &Automaton, letter: usize, _limits: &Limits) -> Result<Automaton> {
    if letter >= a.alphabet().len() {
        return Err(Error::AlphabetMismatch);
    }
    let some_word_starts = a
        .successors(a.initial(), letter)
        .iter()
        .any(|&s| !is_empty(&a.rebase(s)));
    if !some_word_starts {
        return Err(Error::InvalidInput(format!(
            "no accepted word starts with '{}'",
            a.alphabet().letter(letter)
        )));
    }
    let sink = a.num_states();
    let mut trans: Vec<(StateId, usize, StateId)> = a.transitions().collect();
    trans.push((a.initial(), letter, sink));
    for l in 0..a.alphabet().len() {
        trans.push((sink, l, sink));
    }
    let accepting: Vec<StateId> = a
        .accepting_states()
        .chain(if a.kind() == Kind::CoBuchi { Some(sink) } else { None })
        .collect();
    let mut b = Automaton::new(
        format!("{}+sdbreak", a.name()),
        a.alphabet().clone(),
        a.kind(),
        a.num_states() + 1,
        a.initial(),
        accepting,
        trans,
    )?;
    for q in 0..a.num_states() {
        if let Some(n) = a.state_name(q) {
            b.set_state_name(q, n);
        }
    }
    b.set_state_name(sink, "sink");
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::corpus;
    use crate::hierarchy::{check_dbp, check_sd};
    use crate::langops::equivalent;
    use crate::automata::is_deterministic;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn inflate_u_is_dbp_not_deterministic() {
        let u = corpus::u();
        let b = dbp_inflate(&u, &lim()).unwrap();
        assert_eq!(b.num_states(), 2);
        assert!(!is_deterministic(&b));
        assert!(check_dbp(&b, &lim()).unwrap().holds);
        assert!(equivalent(&u, &b, &lim()).unwrap());
    }

    #[test]
    fn inflate_rejects_empty_language() {
        assert!(dbp_inflate(&corpus::z(), &lim()).is_err());
    }

    #[test]
    fn sd_break_kills_semantic_determinism_keeps_language() {
        let u = corpus::u();
        let b = sd_break(&u, 0, &lim()).unwrap();
        assert!(!check_sd(&b, &lim()).unwrap().holds);
        assert!(equivalent(&u, &b, &lim()).unwrap());
    }

    #[test]
    fn sd_break_needs_an_accepted_word() {
        assert!(sd_break(&corpus::z(), 0, &lim()).is_err());
    }
}
