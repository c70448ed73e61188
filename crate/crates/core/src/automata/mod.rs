//! Automaton data model, text format, SCC analysis and the lasso
//! membership oracle that anchors all testing in this crate.

mod format;
mod lasso;

pub use format::{format_lasso, parse_automaton, parse_lasso, serialize_automaton};
pub use lasso::{lasso_membership, naive_block_membership, LassoWord, RunWitness};

use crate::error::{Error, Result};
use crate::LetterId;
use std::collections::HashMap;
use std::fmt;

/// Dense state identity inside one automaton. Names are cosmetic.
pub type StateId = usize;

/// Acceptance kind of an automaton.
///
/// A weak automaton is one whose SCCs are each contained in α or disjoint
/// from α; it can be read as Büchi or co-Büchi with the same language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Buchi,
    CoBuchi,
    Weak,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Buchi => "buchi",
            Kind::CoBuchi => "cobuchi",
            Kind::Weak => "weak",
        }
    }

    pub fn from_str(s: &str) -> Option<Kind> {
        match s {
            "buchi" => Some(Kind::Buchi),
            "cobuchi" => Some(Kind::CoBuchi),
            "weak" => Some(Kind::Weak),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered list of distinct letter tokens.
///
/// The order is canonical: it defines serialization and the uniform
/// distribution used by the probability modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Alphabet> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::InvalidInput("alphabet must be non-empty".into()));
        }
        let mut seen = HashMap::new();
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::InvalidInput(format!(
                    "letter {i} is empty or contains whitespace"
                )));
            }
            if seen.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate letter '{l}'")));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Two-letter alphabet `a b`, the workhorse of examples and tests.
    pub fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor rejects empty alphabets
    }

    pub fn letter(&self, id: LetterId) -> &str {
        &self.letters[id]
    }

    pub fn letters(&self) -> impl Iterator<Item = (LetterId, &str)> {
        self.letters.iter().enumerate().map(|(i, s)| (i, s.as_str()))
    }

    pub fn index_of(&self, token: &str) -> Option<LetterId> {
        self.letters.iter().position(|l| l == token)
    }

    /// All tokens are single characters, which selects the concatenated
    /// lasso syntax on the command line.
    pub fn single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }
}

/// A nondeterministic automaton over infinite words.
///
/// States are `0..n`. The transition relation is stored per state and
/// letter as a sorted successor list; totality means every such list is
/// non-empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    name: String,
    alphabet: Alphabet,
    kind: Kind,
    initial: StateId,
    accepting: Vec<bool>,
    names: Vec<Option<String>>,
    /// `delta[q][sigma]` = sorted successors of `q` on letter `sigma`.
    delta: Vec<Vec<Vec<StateId>>>,
}

impl Automaton {
    /// Builds an automaton, validating state bounds and totality.
    ///
    /// `transitions` may list duplicates; they are collapsed. Weak inputs
    /// are additionally checked for SCC homogeneity.
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        kind: Kind,
        num_states: usize,
        initial: StateId,
        accepting: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = (StateId, LetterId, StateId)>,
    ) -> Result<Automaton> {
        let a = Automaton::new_partial(
            name, alphabet, kind, num_states, initial, accepting, transitions,
        )?;
        a.validate_total()?;
        a.validate_weak()?;
        Ok(a)
    }

    /// As [`Automaton::new`] but tolerates missing transitions; the result
    /// must go through [`complete_automaton`] before analysis.
    pub fn new_partial(
        name: impl Into<String>,
        alphabet: Alphabet,
        kind: Kind,
        num_states: usize,
        initial: StateId,
        accepting: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = (StateId, LetterId, StateId)>,
    ) -> Result<Automaton> {
        if num_states == 0 {
            return Err(Error::InvalidInput("automaton needs at least one state".into()));
        }
        if initial >= num_states {
            return Err(Error::InvalidInput(format!("initial state {initial} out of range")));
        }
        let mut acc = vec![false; num_states];
        for q in accepting {
            if q >= num_states {
                return Err(Error::InvalidInput(format!("accepting state {q} out of range")));
            }
            acc[q] = true;
        }
        let mut delta = vec![vec![Vec::new(); alphabet.len()]; num_states];
        for (q, l, p) in transitions {
            if q >= num_states || p >= num_states {
                return Err(Error::InvalidInput(format!("transition ({q},{l},{p}) out of range")));
            }
            if l >= alphabet.len() {
                return Err(Error::InvalidInput(format!("letter {l} out of range")));
            }
            delta[q][l].push(p);
        }
        for row in &mut delta {
            for succs in row {
                succs.sort_unstable();
                succs.dedup();
            }
        }
        Ok(Automaton {
            name: name.into(),
            alphabet,
            kind,
            initial,
            accepting: acc,
            names: vec![None; num_states],
            delta,
        })
    }

    pub(crate) fn validate_total(&self) -> Result<()> {
        for (q, row) in self.delta.iter().enumerate() {
            for (l, succs) in row.iter().enumerate() {
                if succs.is_empty() {
                    return Err(Error::InvalidInput(format!(
                        "not total: state {q} has no successor on '{}'",
                        self.alphabet.letter(l)
                    )));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn validate_weak(&self) -> Result<()> {
        if self.kind == Kind::Weak && !is_weak(self) {
            return Err(Error::InvalidInput(
                "kind is weak but some SCC mixes accepting and rejecting states".into(),
            ));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(|&q| self.accepting[q])
    }

    pub fn successors(&self, q: StateId, l: LetterId) -> &[StateId] {
        &self.delta[q][l]
    }

    pub fn state_name(&self, q: StateId) -> Option<&str> {
        self.names[q].as_deref()
    }

    pub fn set_state_name(&mut self, q: StateId, name: impl Into<String>) {
        self.names[q] = Some(name.into());
    }

    /// All transitions in canonical `(src, letter, dst)` order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, LetterId, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(l, succs)| succs.iter().map(move |&p| (q, l, p)))
        })
    }

    /// Same automaton started at `q` (the paper's `A^q`).
    pub fn rebase(&self, q: StateId) -> Automaton {
        let mut a = self.clone();
        a.initial = q;
        a.name = format!("{}@{}", self.name, q);
        a
    }

    /// Same structure under a different acceptance kind tag.
    ///
    /// The only semantics-preserving retags are weak → Büchi and
    /// weak → co-Büchi; callers are trusted on that point.
    pub fn with_kind(&self, kind: Kind) -> Automaton {
        let mut a = self.clone();
        a.kind = kind;
        a
    }

    /// Replaces the acceptance set, keeping everything else.
    pub fn with_accepting(&self, accepting: impl IntoIterator<Item = StateId>) -> Automaton {
        let mut a = self.clone();
        a.accepting = vec![false; a.num_states()];
        for q in accepting {
            a.accepting[q] = true;
        }
        a
    }

    /// Every `(state, letter)` pair has at least one successor.
    pub fn is_total(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(|s| !s.is_empty()))
    }

    /// States reachable from the initial state, sorted.
    pub fn reachable(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for row in &self.delta[q] {
                for &p in row {
                    if !seen[p] {
                        seen[p] = true;
                        stack.push(p);
                    }
                }
            }
        }
        (0..self.num_states()).filter(|&q| seen[q]).collect()
    }
}

/// True iff every `(state, letter)` has exactly one successor.
pub fn is_deterministic(a: &Automaton) -> bool {
    a.delta.iter().all(|row| row.iter().all(|s| s.len() == 1))
}

/// The co-Büchi view of a weak automaton: same structure, acceptance
/// set complemented, kind retagged.
///
/// For a weak automaton a run settles in a single homogeneous SCC, so
/// visiting α infinitely often is the same as visiting `Q ∖ α` finitely
/// often; both views recognize the same language.
pub fn weak_as_cobuchi(a: &Automaton) -> Automaton {
    debug_assert!(is_weak(a));
    let alpha: Vec<StateId> = (0..a.num_states()).filter(|&q| !a.is_accepting(q)).collect();
    a.with_accepting(alpha).with_kind(Kind::CoBuchi)
}

/// Unique successor in a deterministic automaton.
pub(crate) fn det_step(a: &Automaton, q: StateId, l: LetterId) -> StateId {
    a.delta[q][l][0]
}

/// True iff every SCC of the automaton graph is homogeneous w.r.t. α,
/// i.e. contained in α or disjoint from it. Checked over all states, not
/// just reachable ones.
pub fn is_weak(a: &Automaton) -> bool {
    let sccs = tarjan_all(a);
    sccs.iter().all(|c| {
        let acc = c.iter().filter(|&&q| a.is_accepting(q)).count();
        acc == 0 || acc == c.len()
    })
}

/// SCC partition of the reachable part, with the DAG structure and the
/// ergodic / α-free flags used by the probability modules.
#[derive(Debug, Clone)]
pub struct SccGraph {
    /// Each component as a sorted state list, ordered by smallest member.
    pub components: Vec<Vec<StateId>>,
    /// Component index of each reachable state; unreachable states get `None`.
    pub component_of: Vec<Option<usize>>,
    /// Edges between distinct components.
    pub edges: Vec<(usize, usize)>,
    /// No outgoing edges in the component DAG.
    pub ergodic: Vec<bool>,
    /// Component contains no α-state.
    pub alpha_free: Vec<bool>,
    /// Component has an internal edge (a cycle runs through it).
    pub cyclic: Vec<bool>,
}

/// SCC decomposition of the reachable part of `a`.
pub fn scc_decomposition(a: &Automaton) -> SccGraph {
    let reachable = a.reachable();
    let mut mask = vec![false; a.num_states()];
    for &q in &reachable {
        mask[q] = true;
    }
    let comps = tarjan_masked(a, &mask);
    build_scc_graph(a, comps)
}

fn build_scc_graph(a: &Automaton, mut comps: Vec<Vec<StateId>>) -> SccGraph {
    for c in &mut comps {
        c.sort_unstable();
    }
    comps.sort_by_key(|c| c[0]);
    let mut component_of = vec![None; a.num_states()];
    for (i, c) in comps.iter().enumerate() {
        for &q in c {
            component_of[q] = Some(i);
        }
    }
    let n = comps.len();
    let mut edges = Vec::new();
    let mut ergodic = vec![true; n];
    let mut cyclic = vec![false; n];
    for (i, c) in comps.iter().enumerate() {
        for &q in c {
            for row in &a.delta[q] {
                for &p in row {
                    match component_of[p] {
                        Some(j) if j == i => cyclic[i] = true,
                        Some(j) => {
                            ergodic[i] = false;
                            if !edges.contains(&(i, j)) {
                                edges.push((i, j));
                            }
                        }
                        None => {}
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    let alpha_free = comps
        .iter()
        .map(|c| c.iter().all(|&q| !a.is_accepting(q)))
        .collect();
    SccGraph { components: comps, component_of, edges, ergodic, alpha_free, cyclic }
}

/// Iterative Tarjan over all states.
fn tarjan_all(a: &Automaton) -> Vec<Vec<StateId>> {
    let mask = vec![true; a.num_states()];
    tarjan_masked(a, &mask)
}

/// Flattened, deduplicated successor adjacency of the automaton graph.
pub(crate) fn adjacency(a: &Automaton) -> Vec<Vec<StateId>> {
    (0..a.num_states())
        .map(|q| {
            let mut out: Vec<StateId> = a.delta[q].iter().flatten().copied().collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect()
}

/// Tarjan restricted to `mask`; edges outside are ignored.
pub(crate) fn tarjan_masked(a: &Automaton, mask: &[bool]) -> Vec<Vec<StateId>> {
    crate::graph::tarjan(&adjacency(a), mask)
}

/// Adds at most one rejecting sink so that the result is total.
///
/// The sink sits outside α for Büchi and weak automata and inside α for
/// co-Büchi ones, so runs that fall into it are rejecting under the
/// automaton's own semantics and the language is unchanged.
pub fn complete_automaton(a: &Automaton) -> Automaton {
    let missing: Vec<(StateId, LetterId)> = (0..a.num_states())
        .flat_map(|q| (0..a.alphabet.len()).map(move |l| (q, l)))
        .filter(|&(q, l)| a.delta[q][l].is_empty())
        .collect();
    if missing.is_empty() {
        return a.clone();
    }
    let mut b = a.clone();
    let sink = b.num_states();
    b.delta.push(vec![vec![sink]; b.alphabet.len()]);
    b.accepting.push(b.kind == Kind::CoBuchi);
    b.names.push(Some("sink".into()));
    for (q, l) in missing {
        b.delta[q][l].push(sink);
    }
    b
}

/// Removes unreachable states, renumbering densely. Language preserved.
pub fn reachable_trim(a: &Automaton) -> Automaton {
    let reachable = a.reachable();
    if reachable.len() == a.num_states() {
        return a.clone();
    }
    let mut remap = vec![usize::MAX; a.num_states()];
    for (new, &old) in reachable.iter().enumerate() {
        remap[old] = new;
    }
    let mut b = Automaton {
        name: a.name.clone(),
        alphabet: a.alphabet.clone(),
        kind: a.kind,
        initial: remap[a.initial],
        accepting: reachable.iter().map(|&q| a.accepting[q]).collect(),
        names: reachable.iter().map(|&q| a.names[q].clone()).collect(),
        delta: reachable
            .iter()
            .map(|&q| {
                a.delta[q]
                    .iter()
                    .map(|succs| succs.iter().map(|&p| remap[p]).collect())
                    .collect()
            })
            .collect(),
    };
    // Weakness of the tag survives dropping states.
    debug_assert!(b.validate_total().is_ok());
    b.name = a.name.clone();
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::corpus;

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "b c"]).is_err());
    }

    #[test]
    fn u_is_one_scc_ergodic_not_alpha_free() {
        let u = corpus::u();
        let g = scc_decomposition(&u);
        assert_eq!(g.components.len(), 1);
        assert!(g.ergodic[0]);
        assert!(!g.alpha_free[0]);
    }

    #[test]
    fn two_state_chain_has_two_sccs_one_ergodic() {
        let al = Alphabet::ab();
        let a = Automaton::new(
            "chain",
            al,
            Kind::Buchi,
            2,
            0,
            [1],
            [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
        )
        .unwrap();
        let g = scc_decomposition(&a);
        assert_eq!(g.components.len(), 2);
        assert_eq!(g.ergodic, vec![false, true]);
        assert!(!g.cyclic[0]);
        assert!(g.cyclic[1]);
    }

    #[test]
    fn fig5_sccs() {
        let f5 = corpus::f5();
        let g = scc_decomposition(&f5);
        assert_eq!(g.components.len(), 3);
        // {q0}, {q_acc}, {sink}; only the sink is ergodic.
        assert_eq!(g.ergodic, vec![false, false, true]);
    }

    #[test]
    fn weakness_detects_mixed_scc() {
        let al = Alphabet::ab();
        // α-state and non-α-state on a common cycle.
        let a = Automaton::new(
            "mixed",
            al,
            Kind::Buchi,
            2,
            0,
            [0],
            [(0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0)],
        )
        .unwrap();
        assert!(!is_weak(&a));
        assert!(is_weak(&corpus::u()));
    }

    #[test]
    fn completion_adds_kind_appropriate_sink() {
        let al = Alphabet::ab();
        let partial = Automaton::new_partial("p", al.clone(), Kind::Buchi, 1, 0, [0], [(0, 0, 0)])
            .unwrap();
        let total = complete_automaton(&partial);
        assert_eq!(total.num_states(), 2);
        assert!(!total.is_accepting(1));
        total.validate_total().unwrap();

        let partial_c =
            Automaton::new_partial("pc", al, Kind::CoBuchi, 1, 0, [], [(0, 0, 0)]).unwrap();
        let total_c = complete_automaton(&partial_c);
        assert!(total_c.is_accepting(1), "co-Büchi sink must sit inside α");
    }

    #[test]
    fn trim_drops_unreachable() {
        let al = Alphabet::ab();
        let a = Automaton::new(
            "x",
            al,
            Kind::Buchi,
            2,
            0,
            [0],
            [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 1)],
        )
        .unwrap();
        let t = reachable_trim(&a);
        assert_eq!(t.num_states(), 1);
        assert_eq!(reachable_trim(&corpus::u()), corpus::u());
    }
}
