//! Deciders for the three nondeterminism levels below full
//! nondeterminism: semantically deterministic (SD), history
//! deterministic (HD) and determinizable by pruning (DBP), plus the
//! subsumption-pruning normalization and a one-shot classification.

use crate::automata::{is_deterministic, is_weak, Automaton, Kind, LassoWord, StateId};
use crate::error::{Error, Result};
use crate::game::{zielonka, ParityGame};
use crate::langops::{
    contains, contains_counterexample, determinize_ncw, LangCache,
};
use crate::limits::Limits;
use crate::sddet::determinize_sd_nbw;
use crate::LetterId;
use std::collections::HashMap;

/// A choice of exactly one successor per `(state, letter)` pair; applying
/// it yields a deterministic automaton embodied in the source. A pruning
/// doubles as a pure memoryless strategy for resolving nondeterminism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pruning {
    choice: Vec<Vec<StateId>>,
}

impl Pruning {
    /// Validates that every chosen successor is an actual successor and
    /// that the domain covers exactly all `(state, letter)` pairs.
    pub fn new(a: &Automaton, choice: Vec<Vec<StateId>>) -> Result<Pruning> {
        if choice.len() != a.num_states()
            || choice.iter().any(|row| row.len() != a.alphabet().len())
        {
            return Err(Error::InvalidInput("pruning domain mismatch".into()));
        }
        for (q, row) in choice.iter().enumerate() {
            for (l, &p) in row.iter().enumerate() {
                if !a.successors(q, l).contains(&p) {
                    return Err(Error::InvalidInput(format!(
                        "pruning keeps ({q},{l})→{p} which is not a transition"
                    )));
                }
            }
        }
        Ok(Pruning { choice })
    }

    /// The canonical pruning keeping the smallest successor everywhere.
    pub fn canonical(a: &Automaton) -> Pruning {
        Pruning {
            choice: (0..a.num_states())
                .map(|q| (0..a.alphabet().len()).map(|l| a.successors(q, l)[0]).collect())
                .collect(),
        }
    }

    pub fn choice(&self, q: StateId, l: LetterId) -> StateId {
        self.choice[q][l]
    }

    pub(crate) fn set_choice(&mut self, q: StateId, l: LetterId, p: StateId) {
        self.choice[q][l] = p;
    }

    /// The deterministic automaton this pruning embodies.
    pub fn apply(&self, a: &Automaton) -> Automaton {
        let trans = (0..a.num_states()).flat_map(|q| {
            (0..a.alphabet().len()).map(move |l| (q, l, self.choice[q][l]))
        });
        let mut d = Automaton::new_partial(
            format!("{}'", a.name()),
            a.alphabet().clone(),
            a.kind(),
            a.num_states(),
            a.initial(),
            a.accepting_states(),
            trans,
        )
        .expect("pruning of a valid automaton is valid");
        for q in 0..a.num_states() {
            if let Some(n) = a.state_name(q) {
                d.set_state_name(q, n);
            }
        }
        d
    }
}

/// Iterates every pruning of `a` in canonical `(state, letter,
/// successor-id)` order.
pub struct PruningIter<'a> {
    a: &'a Automaton,
    slots: Vec<(StateId, LetterId)>,
    pick: Vec<usize>,
    done: bool,
}

/// All prunings of `a`, canonically ordered. The count is the product of
/// the nondeterminism degrees, so callers budget themselves.
pub fn all_prunings(a: &Automaton) -> PruningIter<'_> {
    let mut slots = Vec::new();
    for q in 0..a.num_states() {
        for l in 0..a.alphabet().len() {
            if a.successors(q, l).len() > 1 {
                slots.push((q, l));
            }
        }
    }
    PruningIter { a, pick: vec![0; slots.len()], slots, done: false }
}

impl Iterator for PruningIter<'_> {
    type Item = Pruning;

    fn next(&mut self) -> Option<Pruning> {
        if self.done {
            return None;
        }
        let mut p = Pruning::canonical(self.a);
        for (k, &(q, l)) in self.slots.iter().enumerate() {
            p.set_choice(q, l, self.a.successors(q, l)[self.pick[k]]);
        }
        // Advance the odometer, most significant slot last.
        let mut k = self.slots.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.pick[k] += 1;
            if self.pick[k] < self.a.successors(self.slots[k].0, self.slots[k].1).len() {
                break;
            }
            self.pick[k] = 0;
            if k == 0 {
                self.done = true;
                break;
            }
        }
        Some(p)
    }
}

/// Outcome of the semantic-determinism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdOutcome {
    pub holds: bool,
    /// First violating `(state, letter, successor, successor)` in
    /// canonical order, when the check fails.
    pub counterexample: Option<(StateId, LetterId, StateId, StateId)>,
}

/// Semantic determinism: every pair of σ-successors of every reachable
/// state recognizes the same language.
pub fn check_sd(a: &Automaton, limits: &Limits) -> Result<SdOutcome> {
    let mut cache = LangCache::new(a, *limits);
    for q in a.reachable() {
        for l in 0..a.alphabet().len() {
            let succs = a.successors(q, l);
            for i in 0..succs.len() {
                for j in i + 1..succs.len() {
                    if !cache.equiv_states(succs[i], succs[j])? {
                        return Ok(SdOutcome {
                            holds: false,
                            counterexample: Some((q, l, succs[i], succs[j])),
                        });
                    }
                }
            }
        }
    }
    Ok(SdOutcome { holds: true, counterexample: None })
}

/// Removes transitions to successors whose language is strictly
/// contained in a sibling successor's language; all language-maximal
/// siblings are kept, including duplicates of equal language. On HD
/// inputs the result is language-equal and semantically deterministic.
pub fn prune_subsumed(a: &Automaton, limits: &Limits) -> Result<Automaton> {
    let mut cache = LangCache::new(a, *limits);
    let reachable: Vec<bool> = {
        let mut m = vec![false; a.num_states()];
        for q in a.reachable() {
            m[q] = true;
        }
        m
    };
    let mut trans: Vec<(StateId, LetterId, StateId)> = Vec::new();
    for q in 0..a.num_states() {
        for l in 0..a.alphabet().len() {
            let succs = a.successors(q, l);
            if succs.len() == 1 || !reachable[q] {
                trans.extend(succs.iter().map(|&p| (q, l, p)));
                continue;
            }
            for &s in succs {
                let mut subsumed = false;
                for &t in succs {
                    if t == s {
                        continue;
                    }
                    if cache.contains_states(s, t)? && !cache.contains_states(t, s)? {
                        subsumed = true;
                        break;
                    }
                }
                if !subsumed {
                    trans.push((q, l, s));
                }
            }
        }
    }
    let mut out = Automaton::new_partial(
        a.name().to_string(),
        a.alphabet().clone(),
        a.kind(),
        a.num_states(),
        a.initial(),
        a.accepting_states(),
        trans,
    )?;
    out.validate_total().expect("maximal siblings always remain");
    for q in 0..a.num_states() {
        if let Some(n) = a.state_name(q) {
            out.set_state_name(q, n);
        }
    }
    Ok(out)
}

/// A positional strategy witnessing history determinism: a map from
/// `(automaton state, observer state, letter)` to the successor to take.
/// Replaying it against lassos in the language must always yield
/// accepting runs.
#[derive(Debug, Clone)]
pub struct HdStrategy {
    /// The (subsumption-pruned) automaton the strategy plays in.
    pub arena: Automaton,
    /// Deterministic observer tracking the input word.
    pub observer: Automaton,
    choice: HashMap<(StateId, StateId, LetterId), StateId>,
}

impl HdStrategy {
    /// Runs the strategy on `u·v^ω` and reports whether the produced run
    /// of the arena automaton is accepting.
    pub fn run_on_lasso(&self, w: &LassoWord) -> Result<bool> {
        let su = w.stem().len();
        let lv = w.looped().len();
        let mut q = self.arena.initial();
        let mut d = self.observer.initial();
        let mut seen: HashMap<(usize, StateId, StateId), usize> = HashMap::new();
        let mut loop_trace: Vec<StateId> = Vec::new();
        let mut t = 0usize;
        loop {
            if t >= su {
                let phase = (t - su) % lv;
                if let Some(&k0) = seen.get(&(phase, q, d)) {
                    let cycle = &loop_trace[k0..];
                    let hits = cycle.iter().any(|&x| self.arena.is_accepting(x));
                    return Ok(match self.arena.kind() {
                        Kind::Buchi | Kind::Weak => hits,
                        Kind::CoBuchi => !hits,
                    });
                }
                seen.insert((phase, q, d), loop_trace.len());
                loop_trace.push(q);
            }
            let l = w.letter_at(t);
            if l >= self.arena.alphabet().len() {
                return Err(Error::AlphabetMismatch);
            }
            q = match self.choice.get(&(q, d, l)) {
                Some(&p) => p,
                // Off the winning region; any transition keeps replay total.
                None => self.arena.successors(q, l)[0],
            };
            d = self.observer.successors(d, l)[0];
            t += 1;
        }
    }
}

/// Outcome of the history-determinism check.
#[derive(Debug, Clone)]
pub struct HdOutcome {
    pub holds: bool,
    pub strategy: Option<HdStrategy>,
    /// Honest notes on steps whose completeness rests on the
    /// subsumption-pruning normalization.
    pub caveats: Vec<String>,
}

/// History determinism via the letter game against a deterministic
/// observer of the language.
///
/// Pipeline: subsumption-prune; obtain an observer (breakpoint
/// determinization for co-Büchi, the α-restricted subset construction
/// for Büchi and weak inputs, which requires the pruned automaton to be
/// SD); then solve the resulting 3-priority max-parity game. Eve's
/// positional winning strategy, when she has one, witnesses HDness.
pub fn check_hd(a: &Automaton, limits: &Limits) -> Result<HdOutcome> {
    let arena = prune_subsumed(a, limits)?;
    let observer = match a.kind() {
        Kind::CoBuchi => determinize_ncw(a, limits)?,
        Kind::Buchi | Kind::Weak => {
            let sd = check_sd(&arena, limits)?;
            if !sd.holds {
                return Ok(HdOutcome {
                    holds: false,
                    strategy: None,
                    caveats: vec!["not SD after subsumption pruning".into()],
                });
            }
            let d = determinize_sd_nbw(&arena, false, limits)?.automaton;
            // The construction guarantees L(d) ⊆ L(arena) ⊆ L(a); the
            // reverse inclusion can fail only when subsumption pruning
            // was unsound, i.e. the input was not HD to begin with.
            if !contains(a, &d, limits)? {
                return Ok(HdOutcome {
                    holds: false,
                    strategy: None,
                    caveats: vec![
                        "subsumption pruning changed the language; a non-HD input".into(),
                    ],
                });
            }
            d
        }
    };

    let (game, pairs, initial) = letter_game(&arena, &observer);
    let sol = zielonka(&game);
    if sol.winner[initial] != 0 {
        return Ok(HdOutcome { holds: false, strategy: None, caveats: Vec::new() });
    }
    let np = pairs.len();
    let nl = arena.alphabet().len();
    let mut choice = HashMap::new();
    for (i, &(q, d)) in pairs.iter().enumerate() {
        for l in 0..nl {
            let m = np + i * nl + l;
            if sol.winner[m] == 0 {
                if let Some(target) = sol.strategy[m] {
                    let (q2, _) = pairs[target];
                    choice.insert((q, d, l), q2);
                }
            }
        }
    }
    Ok(HdOutcome {
        holds: true,
        strategy: Some(HdStrategy { arena, observer, choice }),
        caveats: Vec::new(),
    })
}

/// Arena of the letter game: Adam announces letters at pair nodes, Eve
/// resolves the automaton's nondeterminism at move nodes while the
/// observer tracks the word deterministically. Priorities encode
/// "Eve's run is accepting or the word is outside the language" with
/// three priorities under max-parity.
fn letter_game(
    arena: &Automaton,
    observer: &Automaton,
) -> (ParityGame, Vec<(StateId, StateId)>, usize) {
    let nl = arena.alphabet().len();
    let mut index: HashMap<(StateId, StateId), usize> = HashMap::new();
    let mut pairs: Vec<(StateId, StateId)> = Vec::new();
    let start = (arena.initial(), observer.initial());
    index.insert(start, 0);
    pairs.push(start);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(0usize);
    let mut succ_pairs: Vec<Vec<Vec<usize>>> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (q, d) = pairs[i];
        let mut per_letter = Vec::with_capacity(nl);
        for l in 0..nl {
            let d2 = observer.successors(d, l)[0];
            let mut outs = Vec::new();
            for &q2 in arena.successors(q, l) {
                let node = (q2, d2);
                let j = match index.get(&node) {
                    Some(&j) => j,
                    None => {
                        let j = pairs.len();
                        index.insert(node, j);
                        pairs.push(node);
                        queue.push_back(j);
                        j
                    }
                };
                outs.push(j);
            }
            per_letter.push(outs);
        }
        succ_pairs.push(per_letter);
    }

    let np = pairs.len();
    let total = np + np * nl;
    let mut owner = vec![0u8; total];
    let mut priority = vec![0u8; total];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); total];
    let cobuchi_game = arena.kind() == Kind::CoBuchi;
    for (i, &(q, d)) in pairs.iter().enumerate() {
        owner[i] = 1; // Adam picks the next letter
        let (qa, da) = (arena.is_accepting(q), observer.is_accepting(d));
        priority[i] = if cobuchi_game {
            // Eve wins iff α_arena finite or α_observer infinite.
            if da {
                2
            } else if qa {
                1
            } else {
                0
            }
        } else {
            // Eve wins iff α_arena infinite or α_observer finite.
            if qa {
                2
            } else if da {
                1
            } else {
                0
            }
        };
        succ[i] = (0..nl).map(|l| np + i * nl + l).collect();
        for l in 0..nl {
            let m = np + i * nl + l;
            owner[m] = 0; // Eve resolves the nondeterminism
            succ[m] = succ_pairs[i][l].clone();
        }
    }
    (ParityGame { owner, priority, succ }, pairs, 0)
}

/// Outcome of the determinizability-by-pruning check.
#[derive(Debug, Clone)]
pub struct DbpOutcome {
    pub holds: bool,
    pub pruning: Option<Pruning>,
}

/// Determinizability by pruning, by backtracking over prunings in
/// canonical `(state, letter, successor-id)` order.
///
/// A candidate succeeds iff `L(a) ⊆ L(pruned)`; the reverse inclusion
/// holds because pruning only removes runs. Counterexample lassos
/// harvested from failed candidates prune later subtrees: a partial
/// assignment that already rejects a known word of the language cannot
/// be extended to a witness, and the search backjumps to the deepest
/// slot that rejection actually used. The first witness in canonical
/// order is still the one returned.
pub fn check_dbp(a: &Automaton, limits: &Limits) -> Result<DbpOutcome> {
    let reachable: Vec<bool> = {
        let mut m = vec![false; a.num_states()];
        for q in a.reachable() {
            m[q] = true;
        }
        m
    };
    let slots: Vec<(StateId, LetterId)> = (0..a.num_states())
        .flat_map(|q| (0..a.alphabet().len()).map(move |l| (q, l)))
        .filter(|&(q, l)| reachable[q] && a.successors(q, l).len() > 1)
        .collect();

    let slot_index: HashMap<(StateId, LetterId), usize> =
        slots.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut search = DbpSearch {
        a,
        limits,
        assign: vec![usize::MAX; slots.len()],
        slots,
        slot_index,
        learned: Vec::new(),
        tested: 0,
    };
    match search.dfs(0)? {
        DbpStep::Found(p) => Ok(DbpOutcome { holds: true, pruning: Some(p) }),
        _ => Ok(DbpOutcome { holds: false, pruning: None }),
    }
}

enum DbpStep {
    Found(Pruning),
    /// No extension of the assignment to slots `0..=j` succeeds;
    /// `None` means no searched slot was involved, killing the search.
    Dead(Option<usize>),
}

struct DbpSearch<'a> {
    a: &'a Automaton,
    limits: &'a Limits,
    slots: Vec<(StateId, LetterId)>,
    slot_index: HashMap<(StateId, LetterId), usize>,
    assign: Vec<usize>,
    learned: Vec<LassoWord>,
    tested: u64,
}

impl DbpSearch<'_> {
    fn dfs(&mut self, level: usize) -> Result<DbpStep> {
        // A learned word already rejected by the assigned slots kills
        // the whole subtree.
        for wi in 0..self.learned.len() {
            let w = self.learned[wi].clone();
            if let (Some(false), used) = self.replay(&w, level) {
                return Ok(DbpStep::Dead(used));
            }
        }
        if level == self.slots.len() {
            self.tested += 1;
            if self.tested > self.limits.search_budget {
                return Err(Error::BudgetExceeded("enumerating prunings".into()));
            }
            let p = self.pruning_of(level);
            let pruned = p.apply(self.a);
            return match contains_counterexample(self.a, &pruned, self.limits)? {
                None => Ok(DbpStep::Found(p)),
                Some(w) => {
                    let (res, used) = self.replay(&w, level);
                    debug_assert_eq!(res, Some(false));
                    self.learned.push(w);
                    Ok(DbpStep::Dead(used))
                }
            };
        }
        let options = self.a.successors(self.slots[level].0, self.slots[level].1).len();
        for opt in 0..options {
            self.assign[level] = opt;
            match self.dfs(level + 1)? {
                DbpStep::Found(p) => return Ok(DbpStep::Found(p)),
                DbpStep::Dead(None) => return Ok(DbpStep::Dead(None)),
                DbpStep::Dead(Some(j)) if j < level => return Ok(DbpStep::Dead(Some(j))),
                DbpStep::Dead(_) => {}
            }
        }
        self.assign[level] = usize::MAX;
        Ok(DbpStep::Dead(if level == 0 { None } else { Some(level - 1) }))
    }

    fn pruning_of(&self, level: usize) -> Pruning {
        let mut p = Pruning::canonical(self.a);
        for k in 0..level {
            let (q, l) = self.slots[k];
            p.set_choice(q, l, self.a.successors(q, l)[self.assign[k]]);
        }
        p
    }

    /// Deterministic walk of `w` through the partially assigned pruning.
    /// `Some(accepted)` when the walk never needs an unassigned slot;
    /// also reports the deepest searched slot the walk used.
    fn replay(&self, w: &LassoWord, level: usize) -> (Option<bool>, Option<usize>) {
        let su = w.stem().len();
        let lv = w.looped().len();
        let mut q = self.a.initial();
        let mut used: Option<usize> = None;
        let mut seen: HashMap<(usize, StateId), usize> = HashMap::new();
        let mut trace: Vec<StateId> = Vec::new();
        let mut t = 0usize;
        loop {
            if t >= su {
                let phase = (t - su) % lv;
                if let Some(&s0) = seen.get(&(phase, q)) {
                    let cycle = &trace[s0..];
                    let hits = cycle.iter().any(|&x| self.a.is_accepting(x));
                    let acc = match self.a.kind() {
                        Kind::Buchi | Kind::Weak => hits,
                        Kind::CoBuchi => !hits,
                    };
                    return (Some(acc), used);
                }
                seen.insert((phase, q), trace.len());
                trace.push(q);
            }
            let l = w.letter_at(t);
            let succs = self.a.successors(q, l);
            q = if succs.len() == 1 {
                succs[0]
            } else {
                match self.slot_index.get(&(q, l)) {
                    Some(&k) if k < level && self.assign[k] != usize::MAX => {
                        used = Some(used.map_or(k, |u: usize| u.max(k)));
                        succs[self.assign[k]]
                    }
                    Some(_) => return (None, used),
                    // Nondeterministic but unreachable-in-full slots
                    // cannot occur on a walk from the initial state.
                    None => unreachable!("walk reached an unsearched nondeterministic slot"),
                }
            };
            t += 1;
        }
    }
}

/// One-shot classification across all deciders. Failures of individual
/// deciders become caveats rather than errors.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub deterministic: bool,
    pub weak: bool,
    pub sd: Option<bool>,
    pub sd_counterexample: Option<(StateId, LetterId, StateId, StateId)>,
    pub hd: Option<bool>,
    pub hd_strategy: Option<HdStrategy>,
    pub dbp: Option<bool>,
    pub dbp_pruning: Option<Pruning>,
    pub caveats: Vec<String>,
}

pub fn classify(a: &Automaton, limits: &Limits) -> ClassificationReport {
    let mut report = ClassificationReport {
        deterministic: is_deterministic(a),
        weak: is_weak(a),
        sd: None,
        sd_counterexample: None,
        hd: None,
        hd_strategy: None,
        dbp: None,
        dbp_pruning: None,
        caveats: Vec::new(),
    };
    match check_sd(a, limits) {
        Ok(out) => {
            report.sd = Some(out.holds);
            report.sd_counterexample = out.counterexample;
        }
        Err(e) => report.caveats.push(format!("sd undecided: {e}")),
    }
    match check_hd(a, limits) {
        Ok(out) => {
            report.hd = Some(out.holds);
            report.hd_strategy = out.strategy;
            report.caveats.extend(out.caveats);
        }
        Err(e) => report.caveats.push(format!("hd undecided: {e}")),
    }
    match check_dbp(a, limits) {
        Ok(out) => {
            report.dbp = Some(out.holds);
            report.dbp_pruning = out.pruning;
        }
        Err(e) => report.caveats.push(format!("dbp undecided: {e}")),
    }
    report
}
