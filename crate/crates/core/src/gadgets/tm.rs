//! Space-bounded Turing machine → weak automaton gadget.
//!
//! Configurations of a machine running in `n₀` cells are encoded as
//! `#`-separated blocks of exactly `n₀` letters, one of which carries
//! the head. The automaton accepts a word iff it is not a suffix of a
//! legal computation encoding (a window violates the `next` expectation,
//! a block is malformed, or `#` falls out of cadence) or it contains an
//! accepting configuration. All checks are guessed windows: a completed
//! violation or accepting-configuration window jumps to the single
//! accepting sink, a failed guess returns to the initial state, and
//! every non-sink state can always fall back to the initial state on
//! the next letter, so the whole non-accepting part is one rejecting
//! SCC and the automaton is weak with a co-safety shape.

use crate::automata::{Alphabet, Automaton, Kind, LassoWord, StateId};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::LetterId;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    L,
    R,
}

/// A deterministic Turing machine with distinguished accepting and
/// rejecting states, total on `Q × Γ`. Per the erase-and-restart
/// convention, the transition table is also defined on the final states
/// and is expected to route the computation back to the initial state,
/// so every computation is infinite and ultimately periodic. The head
/// stays in place when told to move left from the leftmost cell; the
/// caller asserts the machine never leaves its `space` cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    pub name: String,
    gamma: Vec<String>,
    blank: usize,
    states: Vec<String>,
    initial: usize,
    accept: usize,
    reject: usize,
    rules: HashMap<(usize, usize), (usize, usize, Dir)>,
    space: usize,
}

impl TuringMachine {
    pub fn new(
        name: impl Into<String>,
        gamma: Vec<String>,
        blank: &str,
        states: Vec<String>,
        initial: &str,
        accept: &str,
        reject: &str,
        rules: impl IntoIterator<Item = (String, String, String, String, Dir)>,
        space: usize,
    ) -> Result<TuringMachine> {
        if space < 2 {
            return Err(Error::InvalidInput("space bound must be at least 2".into()));
        }
        let gamma_of = |t: &str, g: &[String]| {
            g.iter().position(|x| x == t).ok_or_else(|| {
                Error::InvalidInput(format!("unknown tape letter '{t}'"))
            })
        };
        let state_of = |t: &str, s: &[String]| {
            s.iter().position(|x| x == t).ok_or_else(|| {
                Error::InvalidInput(format!("unknown machine state '{t}'"))
            })
        };
        let blank = gamma_of(blank, &gamma)?;
        let initial = state_of(initial, &states)?;
        let accept = state_of(accept, &states)?;
        let reject = state_of(reject, &states)?;
        if accept == reject {
            return Err(Error::InvalidInput("accept and reject states must differ".into()));
        }
        let mut table = HashMap::new();
        for (q, a, q2, b, d) in rules {
            let key = (state_of(&q, &states)?, gamma_of(&a, &gamma)?);
            if table
                .insert(key, (state_of(&q2, &states)?, gamma_of(&b, &gamma)?, d))
                .is_some()
            {
                return Err(Error::InvalidInput(format!("duplicate rule for ({q},{a})")));
            }
        }
        for q in 0..states.len() {
            for a in 0..gamma.len() {
                if !table.contains_key(&(q, a)) {
                    return Err(Error::InvalidInput(format!(
                        "missing rule for ({},{})",
                        states[q], gamma[a]
                    )));
                }
            }
        }
        Ok(TuringMachine {
            name: name.into(),
            gamma,
            blank,
            states,
            initial,
            accept,
            reject,
            rules: table,
            space,
        })
    }

    pub fn space(&self) -> usize {
        self.space
    }

    /// The encoding alphabet: `#`, the tape letters, then one
    /// `state.letter` token per head configuration.
    pub fn encoding_alphabet(&self) -> Alphabet {
        let mut letters = vec!["#".to_string()];
        letters.extend(self.gamma.iter().cloned());
        for q in &self.states {
            for g in &self.gamma {
                letters.push(format!("{q}.{g}"));
            }
        }
        Alphabet::new(letters).expect("encoding letters are distinct")
    }

    fn hash_letter(&self) -> LetterId {
        0
    }

    fn gamma_letter(&self, g: usize) -> LetterId {
        1 + g
    }

    fn head_letter(&self, q: usize, g: usize) -> LetterId {
        1 + self.gamma.len() + q * self.gamma.len() + g
    }

    fn classify(&self, l: LetterId) -> Letter {
        if l == 0 {
            Letter::Hash
        } else if l <= self.gamma.len() {
            Letter::Tape(l - 1)
        } else {
            let x = l - 1 - self.gamma.len();
            Letter::Head(x / self.gamma.len(), x % self.gamma.len())
        }
    }

    /// The expectation for the letter one configuration later, given a
    /// three-letter window around the current position. The `#` column
    /// is immovable; windows with several heads or several `#`s are
    /// already malformed, so their expectation is the arbitrary `#`.
    pub fn next_letter(&self, left: LetterId, mid: LetterId, right: LetterId) -> LetterId {
        let (l, m, r) = (self.classify(left), self.classify(mid), self.classify(right));
        if matches!(m, Letter::Hash) {
            return self.hash_letter();
        }
        let heads = [l, m, r].iter().filter(|x| matches!(x, Letter::Head(..))).count();
        if heads == 0 {
            return mid;
        }
        let hashes = [l, m, r].iter().filter(|x| matches!(x, Letter::Hash)).count();
        if heads >= 2 || hashes >= 2 {
            return self.hash_letter();
        }
        match (l, m, r) {
            (_, Letter::Head(q, g), _) => {
                let &(q2, g2, d) = &self.rules[&(q, g)];
                if matches!(l, Letter::Hash) && d == Dir::L {
                    // Head pinned at the leftmost cell.
                    self.head_letter(q2, g2)
                } else {
                    self.gamma_letter(g2)
                }
            }
            (Letter::Head(q, g), Letter::Tape(m), _) => {
                let &(q2, _, d) = &self.rules[&(q, g)];
                match d {
                    Dir::L => self.gamma_letter(m),
                    Dir::R => self.head_letter(q2, m),
                }
            }
            (_, Letter::Tape(m), Letter::Head(q, g)) => {
                let &(q2, _, d) = &self.rules[&(q, g)];
                match d {
                    Dir::R => self.gamma_letter(m),
                    Dir::L => self.head_letter(q2, m),
                }
            }
            _ => unreachable!("window classification is exhaustive"),
        }
    }

    /// Simulates the machine from the empty tape and returns the lasso
    /// encoding of its (ultimately periodic) computation.
    pub fn encode_empty_tape_run(&self) -> Result<LassoWord> {
        let mut tape = vec![self.blank; self.space];
        let mut state = self.initial;
        let mut head = 0usize;
        let mut seen: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
        let mut configs: Vec<Vec<LetterId>> = Vec::new();
        loop {
            let key = (state, head, tape.clone());
            if let Some(&first) = seen.get(&key) {
                let stem: Vec<LetterId> =
                    configs[..first].iter().flatten().copied().collect();
                let lasso: Vec<LetterId> =
                    configs[first..].iter().flatten().copied().collect();
                return LassoWord::new(stem, lasso);
            }
            if configs.len() > 1_000_000 {
                return Err(Error::BudgetExceeded("simulating the machine".into()));
            }
            seen.insert(key, configs.len());
            let mut block = vec![self.hash_letter()];
            for (i, &g) in tape.iter().enumerate() {
                block.push(if i == head {
                    self.head_letter(state, g)
                } else {
                    self.gamma_letter(g)
                });
            }
            configs.push(block);

            let &(q2, g2, d) = &self.rules[&(state, tape[head])];
            tape[head] = g2;
            state = q2;
            head = match d {
                Dir::L => head.saturating_sub(1),
                Dir::R => {
                    if head + 1 >= self.space {
                        return Err(Error::InvalidInput(
                            "machine left its space bound".into(),
                        ));
                    }
                    head + 1
                }
            };
        }
    }

    /// Does the machine reach its accepting state from the empty tape?
    pub fn accepts_empty_tape(&self) -> Result<bool> {
        let mut tape = vec![self.blank; self.space];
        let mut state = self.initial;
        let mut head = 0usize;
        let mut seen = std::collections::HashSet::new();
        loop {
            if state == self.accept {
                return Ok(true);
            }
            if !seen.insert((state, head, tape.clone())) {
                return Ok(false);
            }
            let &(q2, g2, d) = &self.rules[&(state, tape[head])];
            tape[head] = g2;
            state = q2;
            head = match d {
                Dir::L => head.saturating_sub(1),
                Dir::R => {
                    if head + 1 >= self.space {
                        return Err(Error::InvalidInput(
                            "machine left its space bound".into(),
                        ));
                    }
                    head + 1
                }
            };
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Letter {
    Hash,
    Tape(usize),
    Head(usize, usize),
}

/// Replaces the first letter of the word with a different one (the
/// blank tape letter, or `#` when it already is that blank), producing
/// the corrupted encoding used by the non-semantic-determinism witness.
pub fn corrupt_first_letter(tm: &TuringMachine, w: &LassoWord) -> LassoWord {
    let blank = tm.gamma_letter(tm.blank);
    let mut stem: Vec<LetterId> =
        if w.stem().is_empty() { w.looped().to_vec() } else { w.stem().to_vec() };
    stem[0] = if stem[0] == blank { tm.hash_letter() } else { blank };
    LassoWord::new(stem, w.looped().to_vec()).expect("loop stays non-empty")
}

/// The weak automaton of the reduction. It is universal iff the machine
/// accepts the empty tape, in which case it is also semantically
/// deterministic; a rejecting machine leaves the corrupted-first-letter
/// word accepted while its suffixes are not.
pub fn tm_to_nww(tm: &TuringMachine, limits: &Limits) -> Result<Automaton> {
    let alphabet = tm.encoding_alphabet();
    let ns = alphabet.len();
    let n0 = tm.space;

    // State ids.
    let init = 0usize;
    let sink = 1usize;
    let w1 = |s: LetterId| 2 + s;
    let w2 = |s1: LetterId, s2: LetterId| 2 + ns + s1 * ns + s2;
    let count = |e: LetterId, r: usize| 2 + ns + ns * ns + e * n0 + (r - 1);
    let nf = |c: usize| 2 + ns + ns * ns + ns * n0 + (c - 1);
    let cfg = |j: usize, h: usize| 2 + ns + ns * ns + ns * n0 + n0 + 2 * j + h;
    let acc = |j: usize, f: usize| 2 + ns + ns * ns + ns * n0 + n0 + 2 * n0 + 2 * j + f;
    let total = 2 + ns + ns * ns + ns * n0 + n0 + 4 * n0;
    if total > limits.max_states {
        return Err(Error::BudgetExceeded("building the machine gadget".into()));
    }

    let is_hash = |l: LetterId| l == 0;
    let is_tape = |l: LetterId| l >= 1 && l <= tm.gamma.len();
    let head_of = |l: LetterId| -> Option<(usize, usize)> {
        if l > tm.gamma.len() {
            let x = l - 1 - tm.gamma.len();
            Some((x / tm.gamma.len(), x % tm.gamma.len()))
        } else {
            None
        }
    };

    let mut trans: Vec<(StateId, LetterId, StateId)> = Vec::new();
    for l in 0..ns {
        // The initial state guesses where a witness window starts, or
        // keeps waiting.
        trans.push((init, l, init));
        trans.push((init, l, w1(l)));
        if !is_hash(l) {
            trans.push((init, l, nf(1)));
        } else {
            trans.push((init, l, cfg(0, 0)));
            trans.push((init, l, acc(0, 0)));
        }
        trans.push((sink, l, sink));
    }

    // next-violation windows: remember two letters, derive the
    // expectation from the third, then count to the compared position.
    for s1 in 0..ns {
        for l in 0..ns {
            trans.push((w1(s1), l, w2(s1, l)));
            trans.push((w1(s1), l, init));
        }
    }
    for s1 in 0..ns {
        for s2 in 0..ns {
            for l in 0..ns {
                let e = tm.next_letter(s1, s2, l);
                trans.push((w2(s1, s2), l, count(e, n0)));
                trans.push((w2(s1, s2), l, init));
            }
        }
    }
    for e in 0..ns {
        for r in 1..=n0 {
            for l in 0..ns {
                if r > 1 {
                    trans.push((count(e, r), l, count(e, r - 1)));
                } else if l != e {
                    trans.push((count(e, 1), l, sink));
                }
                trans.push((count(e, r), l, init));
            }
        }
    }

    // A hash-free stretch of n0+1 letters violates the cadence.
    for cnt in 1..=n0 {
        for l in 0..ns {
            if !is_hash(l) {
                if cnt == n0 {
                    trans.push((nf(cnt), l, sink));
                } else {
                    trans.push((nf(cnt), l, nf(cnt + 1)));
                }
            }
            trans.push((nf(cnt), l, init));
        }
    }

    // Single-configuration shape check after a `#`: exactly n0 letters,
    // exactly one of them a head, no early `#`.
    for j in 0..n0 {
        for h in 0..2 {
            for l in 0..ns {
                let state = cfg(j, h);
                if is_hash(l) {
                    trans.push((state, l, sink));
                } else if is_tape(l) {
                    if j + 1 == n0 {
                        if h == 0 {
                            trans.push((state, l, sink));
                        }
                    } else {
                        trans.push((state, l, cfg(j + 1, h)));
                    }
                } else if h == 1 {
                    trans.push((state, l, sink));
                } else if j + 1 < n0 {
                    trans.push((state, l, cfg(j + 1, 1)));
                }
                trans.push((state, l, init));
            }
        }
    }

    // Accepting-configuration window: # then n0 letters over Γ with one
    // accepting head among them.
    for j in 0..n0 {
        for f in 0..2 {
            for l in 0..ns {
                let state = acc(j, f);
                if is_tape(l) {
                    if j + 1 == n0 {
                        if f == 1 {
                            trans.push((state, l, sink));
                        }
                    } else {
                        trans.push((state, l, acc(j + 1, f)));
                    }
                } else if let Some((q, _)) = head_of(l) {
                    if q == tm.accept && f == 0 {
                        if j + 1 == n0 {
                            trans.push((state, l, sink));
                        } else {
                            trans.push((state, l, acc(j + 1, 1)));
                        }
                    }
                }
                trans.push((state, l, init));
            }
        }
    }

    let mut a = Automaton::new(
        format!("tmnww({})", tm.name),
        alphabet,
        Kind::Weak,
        total,
        init,
        [sink],
        trans,
    )?;
    a.set_state_name(init, "init");
    a.set_state_name(sink, "acc");
    Ok(a)
}

/// Parses the machine format: `tm <name>` / `gamma <tok> ...` /
/// `blank <tok>` / `states <tok> ...` (first is initial; `qacc` and
/// `qrej` must be listed) / `rule <q> <a> <q'> <b> L|R` / `space <n0>`.
pub fn parse_tm(text: &str) -> Result<TuringMachine> {
    let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.into() };
    let mut name = "t".to_string();
    let mut gamma: Option<Vec<String>> = None;
    let mut blank: Option<String> = None;
    let mut states: Option<Vec<String>> = None;
    let mut rules: Vec<(String, String, String, String, Dir)> = Vec::new();
    let mut space: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let t: Vec<&str> = line.split_whitespace().collect();
        match t[0] {
            "tm" => name = t.get(1).unwrap_or(&"t").to_string(),
            "gamma" => gamma = Some(t[1..].iter().map(|s| s.to_string()).collect()),
            "blank" => {
                blank = Some(
                    t.get(1).ok_or_else(|| err(lineno, "expected: blank <tok>"))?.to_string(),
                )
            }
            "states" => states = Some(t[1..].iter().map(|s| s.to_string()).collect()),
            "rule" => {
                if t.len() != 6 {
                    return Err(err(lineno, "expected: rule <q> <a> <q'> <b> L|R"));
                }
                let dir = match t[5] {
                    "L" => Dir::L,
                    "R" => Dir::R,
                    _ => return Err(err(lineno, "direction must be L or R")),
                };
                rules.push((
                    t[1].to_string(),
                    t[2].to_string(),
                    t[3].to_string(),
                    t[4].to_string(),
                    dir,
                ));
            }
            "space" => {
                space = Some(t.get(1).and_then(|x| x.parse().ok()).ok_or_else(|| {
                    err(lineno, "expected: space <n0>")
                })?);
            }
            other => return Err(err(lineno, &format!("unknown directive '{other}'"))),
        }
    }
    let states = states.ok_or_else(|| err(0, "missing states line"))?;
    let initial = states.first().cloned().ok_or_else(|| err(0, "states line is empty"))?;
    TuringMachine::new(
        name,
        gamma.ok_or_else(|| err(0, "missing gamma line"))?,
        &blank.ok_or_else(|| err(0, "missing blank line"))?,
        states.clone(),
        &initial,
        "qacc",
        "qrej",
        rules,
        space.ok_or_else(|| err(0, "missing space line"))?,
    )
    .map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
}

/// One-work-state machine that immediately accepts the empty tape and
/// then loops through the erase-and-restart convention.
pub fn toy_accepting() -> TuringMachine {
    TuringMachine::new(
        "t_yes",
        vec!["b".into()],
        "b",
        vec!["q0".into(), "qacc".into(), "qrej".into()],
        "q0",
        "qacc",
        "qrej",
        [
            ("q0".into(), "b".into(), "qacc".into(), "b".into(), Dir::L),
            ("qacc".into(), "b".into(), "q0".into(), "b".into(), Dir::L),
            ("qrej".into(), "b".into(), "q0".into(), "b".into(), Dir::L),
        ],
        2,
    )
    .expect("toy machine is well-formed")
}

/// The rejecting twin of [`toy_accepting`].
pub fn toy_rejecting() -> TuringMachine {
    TuringMachine::new(
        "t_no",
        vec!["b".into()],
        "b",
        vec!["q0".into(), "qacc".into(), "qrej".into()],
        "q0",
        "qacc",
        "qrej",
        [
            ("q0".into(), "b".into(), "qrej".into(), "b".into(), Dir::L),
            ("qrej".into(), "b".into(), "q0".into(), "b".into(), Dir::L),
            ("qacc".into(), "b".into(), "q0".into(), "b".into(), Dir::L),
        ],
        2,
    )
    .expect("toy machine is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{is_weak, lasso_membership, scc_decomposition};

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn toy_machines_halt_as_named() {
        assert!(toy_accepting().accepts_empty_tape().unwrap());
        assert!(!toy_rejecting().accepts_empty_tape().unwrap());
    }

    #[test]
    fn empty_tape_encoding_is_periodic() {
        let tm = toy_rejecting();
        let w = tm.encode_empty_tape_run().unwrap();
        // Two alternating configurations of three letters each.
        assert!(w.stem().is_empty());
        assert_eq!(w.looped().len(), 6);
    }

    #[test]
    fn accepting_machine_word_is_accepted() {
        let tm = toy_accepting();
        let a = tm_to_nww(&tm, &lim()).unwrap();
        let w = tm.encode_empty_tape_run().unwrap();
        assert!(lasso_membership(&a, &w).unwrap().0);
    }

    #[test]
    fn rejecting_machine_word_needs_the_corruption() {
        let tm = toy_rejecting();
        let a = tm_to_nww(&tm, &lim()).unwrap();
        let w = tm.encode_empty_tape_run().unwrap();
        assert!(!lasso_membership(&a, &w).unwrap().0);
        let w2 = corrupt_first_letter(&tm, &w);
        assert!(lasso_membership(&a, &w2).unwrap().0);
    }

    #[test]
    fn gadget_shape_is_weak_with_one_accepting_sink() {
        let a = tm_to_nww(&toy_accepting(), &lim()).unwrap();
        assert!(is_weak(&a));
        let g = scc_decomposition(&a);
        let accepting: Vec<_> = (0..g.components.len())
            .filter(|&c| g.components[c].iter().any(|&q| a.is_accepting(q)))
            .collect();
        assert_eq!(accepting.len(), 1);
        let c = accepting[0];
        assert!(g.ergodic[c], "the accepting SCC is a sink");
        assert_eq!(g.components[c].len(), 1);
    }

    #[test]
    fn tm_format_parses() {
        let text = "\
tm t_yes
gamma b
blank b
states q0 qacc qrej
rule q0 b qacc b L
rule qacc b q0 b L
rule qrej b q0 b L
space 2
";
        assert_eq!(parse_tm(text).unwrap(), toy_accepting());
    }
}
