//! Labeled Markov decision processes, their product with automata, and
//! exact syntactic/semantic satisfaction probabilities.
//!
//! `psyn` is the maximal probability of producing an accepting run in
//! the product; `psem` the maximal probability that the generated word
//! lies in the language. Good-for-MDPs witnesses compare the two on a
//! concrete MDP. Values are computed exactly: maximal end component
//! decomposition followed by policy iteration over rationals.

use crate::automata::{is_deterministic, is_weak, weak_as_cobuchi, Alphabet, Automaton, Kind, StateId};
use crate::error::{Error, Result};
use crate::hierarchy::check_sd;
use crate::langops::determinize_ncw;
use crate::limits::Limits;
use crate::probability::{rat, Rational};
use crate::sddet::determinize_sd_nbw;
use crate::LetterId;
use num_traits::{One, Zero};
use std::collections::{HashMap, VecDeque};

/// A Σ-labeled MDP: states carry letters, actions carry exact
/// distributions over successor states.
#[derive(Debug, Clone, PartialEq)]
pub struct Mdp {
    name: String,
    alphabet: Alphabet,
    labels: Vec<LetterId>,
    initial: usize,
    action_names: Vec<Vec<String>>,
    /// `trans[s][a]` = distribution as (dest, probability) pairs.
    trans: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl Mdp {
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        labels: Vec<LetterId>,
        initial: usize,
        action_names: Vec<Vec<String>>,
        trans: Vec<Vec<Vec<(usize, Rational)>>>,
    ) -> Result<Mdp> {
        let n = labels.len();
        if n == 0 || initial >= n {
            return Err(Error::InvalidInput("mdp needs states and a valid initial".into()));
        }
        if action_names.len() != n || trans.len() != n {
            return Err(Error::InvalidInput("per-state tables must cover all states".into()));
        }
        for (s, &l) in labels.iter().enumerate() {
            if l >= alphabet.len() {
                return Err(Error::InvalidInput(format!("state {s} labeled out of range")));
            }
        }
        for s in 0..n {
            if action_names[s].is_empty() || action_names[s].len() != trans[s].len() {
                return Err(Error::InvalidInput(format!(
                    "state {s} needs at least one action with a distribution"
                )));
            }
            for (a, dist) in trans[s].iter().enumerate() {
                let mut sum = Rational::zero();
                for &(dest, ref p) in dist {
                    if dest >= n {
                        return Err(Error::InvalidInput("distribution target out of range".into()));
                    }
                    if *p <= Rational::zero() {
                        return Err(Error::InvalidInput(
                            "probabilities must be positive".into(),
                        ));
                    }
                    sum += p;
                }
                if !sum.is_one() {
                    return Err(Error::InvalidInput(format!(
                        "probabilities of state {s} action {} sum to {sum}, not 1",
                        action_names[s][a]
                    )));
                }
            }
        }
        Ok(Mdp { name: name.into(), alphabet, labels, initial, action_names, trans })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn label(&self, s: usize) -> LetterId {
        self.labels[s]
    }

    pub fn num_actions(&self, s: usize) -> usize {
        self.trans[s].len()
    }

    pub fn distribution(&self, s: usize, a: usize) -> &[(usize, Rational)] {
        &self.trans[s][a]
    }
}

/// The uniform word generator: one state per letter, a single dummy
/// action, all transitions at probability `1/|Σ|`. Its runs emit exactly
/// the uniform random words, which makes it the bridge between `psyn`
/// and pruning measures.
pub fn uniform_word_mdp(alphabet: &Alphabet) -> Mdp {
    let n = alphabet.len();
    let p = rat(1, n as i64);
    let dist: Vec<(usize, Rational)> = (0..n).map(|s| (s, p.clone())).collect();
    Mdp::new(
        "uniform",
        alphabet.clone(),
        (0..n).collect(),
        0,
        vec![vec!["u".to_string()]; n],
        vec![vec![dist]; n],
    )
    .expect("uniform generator is well-formed")
}

/// Parses the `.mdp` format: `mdp <name>` / `alphabet ...` /
/// `states <n>` / `initial <id>` / `label <id> <letter>` /
/// `action <id> <name>` / `prob <src> <action> <dst> <num>/<den>`.
pub fn parse_mdp(text: &str) -> Result<Mdp> {
    let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.into() };
    let mut name = "m".to_string();
    let mut alphabet: Option<Alphabet> = None;
    let mut num_states: Option<usize> = None;
    let mut initial: Option<usize> = None;
    let mut labels: HashMap<usize, String> = HashMap::new();
    let mut actions: Vec<(usize, usize, String)> = Vec::new(); // (line, state, name)
    let mut probs: Vec<(usize, usize, String, usize, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let t: Vec<&str> = line.split_whitespace().collect();
        match t[0] {
            "mdp" => {
                name = t.get(1).ok_or_else(|| err(lineno, "expected: mdp <name>"))?.to_string();
            }
            "alphabet" => {
                alphabet = Some(
                    Alphabet::new(t[1..].iter().copied())
                        .map_err(|e| err(lineno, &e.to_string()))?,
                );
            }
            "states" => {
                num_states =
                    Some(t.get(1).and_then(|x| x.parse().ok()).ok_or_else(|| {
                        err(lineno, "expected: states <n>")
                    })?);
            }
            "initial" => {
                initial = Some(t.get(1).and_then(|x| x.parse().ok()).ok_or_else(|| {
                    err(lineno, "expected: initial <id>")
                })?);
            }
            "label" => {
                if t.len() != 3 {
                    return Err(err(lineno, "expected: label <id> <letter>"));
                }
                let s: usize = t[1].parse().map_err(|_| err(lineno, "bad state id"))?;
                labels.insert(s, t[2].to_string());
            }
            "action" => {
                if t.len() != 3 {
                    return Err(err(lineno, "expected: action <id> <name>"));
                }
                let s: usize = t[1].parse().map_err(|_| err(lineno, "bad state id"))?;
                actions.push((lineno, s, t[2].to_string()));
            }
            "prob" => {
                if t.len() != 5 {
                    return Err(err(lineno, "expected: prob <src> <action> <dst> <p>"));
                }
                let s: usize = t[1].parse().map_err(|_| err(lineno, "bad source id"))?;
                let d: usize = t[3].parse().map_err(|_| err(lineno, "bad target id"))?;
                probs.push((lineno, s, t[2].to_string(), d, t[4].to_string()));
            }
            other => return Err(err(lineno, &format!("unknown directive '{other}'"))),
        }
    }

    let alphabet = alphabet.ok_or_else(|| err(0, "missing alphabet line"))?;
    let n = num_states.ok_or_else(|| err(0, "missing states line"))?;
    let initial = initial.ok_or_else(|| err(0, "missing initial line"))?;

    let mut label_ids = vec![usize::MAX; n];
    for (s, letter) in labels {
        if s >= n {
            return Err(err(0, "label state id out of range"));
        }
        label_ids[s] = alphabet
            .index_of(&letter)
            .ok_or_else(|| err(0, &format!("unknown label letter '{letter}'")))?;
    }
    if let Some(s) = label_ids.iter().position(|&l| l == usize::MAX) {
        return Err(err(0, &format!("state {s} has no label")));
    }

    let mut action_names: Vec<Vec<String>> = vec![Vec::new(); n];
    for (lineno, s, aname) in actions {
        if s >= n {
            return Err(err(lineno, "action state id out of range"));
        }
        if action_names[s].contains(&aname) {
            return Err(err(lineno, "duplicate action name for state"));
        }
        action_names[s].push(aname);
    }

    let mut trans: Vec<Vec<Vec<(usize, Rational)>>> =
        (0..n).map(|s| vec![Vec::new(); action_names[s].len()]).collect();
    for (lineno, s, aname, d, p) in probs {
        if s >= n || d >= n {
            return Err(err(lineno, "prob endpoint out of range"));
        }
        let a = action_names[s]
            .iter()
            .position(|x| *x == aname)
            .ok_or_else(|| err(lineno, &format!("undeclared action '{aname}'")))?;
        trans[s][a].push((d, parse_rational(&p).map_err(|m| err(lineno, &m))?));
    }
    Mdp::new(name, alphabet, label_ids, initial, action_names, trans)
}

pub(crate) fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let parse_int = |x: &str| -> std::result::Result<num_bigint::BigInt, String> {
        x.parse().map_err(|_| format!("bad integer '{x}'"))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d <= num_bigint::BigInt::from(0) {
                return Err("denominator must be positive".into());
            }
            Ok(Rational::new(parse_int(num)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Canonical `.mdp` serialization.
pub fn serialize_mdp(m: &Mdp) -> String {
    let mut out = String::new();
    out.push_str(&format!("mdp {}\n", m.name));
    out.push_str("alphabet");
    for (_, l) in m.alphabet.letters() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    out.push_str(&format!("states {}\n", m.num_states()));
    out.push_str(&format!("initial {}\n", m.initial));
    for s in 0..m.num_states() {
        out.push_str(&format!("label {} {}\n", s, m.alphabet.letter(m.labels[s])));
    }
    for s in 0..m.num_states() {
        for a in &m.action_names[s] {
            out.push_str(&format!("action {s} {a}\n"));
        }
    }
    for s in 0..m.num_states() {
        for (a, dist) in m.trans[s].iter().enumerate() {
            for (d, p) in dist {
                out.push_str(&format!("prob {s} {} {d} {p}\n", m.action_names[s][a]));
            }
        }
    }
    out
}

/// Product of an MDP with an automaton. States are `(s, q)` pairs plus
/// the fresh start `(s₀, ⊥)`; an action pairs an MDP action with the
/// automaton successor chosen on the current state's letter, and the
/// probabilities are lifted unchanged from the MDP.
#[derive(Debug, Clone)]
pub struct ProductMdp {
    pub kind: Kind,
    mdp_state: Vec<usize>,
    aut_state: Vec<Option<StateId>>,
    /// Action space per product state: (mdp action, automaton successor).
    actions: Vec<Vec<(usize, StateId)>>,
    trans: Vec<Vec<Vec<(usize, Rational)>>>,
    initial: usize,
    alpha: Vec<bool>,
}

impl ProductMdp {
    pub fn num_states(&self) -> usize {
        self.mdp_state.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn components(&self, v: usize) -> (usize, Option<StateId>) {
        (self.mdp_state[v], self.aut_state[v])
    }

    pub fn actions(&self, v: usize) -> &[(usize, StateId)] {
        &self.actions[v]
    }

    pub fn is_alpha(&self, v: usize) -> bool {
        self.alpha[v]
    }
}

pub fn product(m: &Mdp, a: &Automaton) -> Result<ProductMdp> {
    if m.alphabet() != a.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let mut index: HashMap<(usize, Option<StateId>), usize> = HashMap::new();
    let mut mdp_state = Vec::new();
    let mut aut_state = Vec::new();
    let mut actions: Vec<Vec<(usize, StateId)>> = Vec::new();
    let mut trans: Vec<Vec<Vec<(usize, Rational)>>> = Vec::new();

    let start = (m.initial(), None);
    index.insert(start, 0);
    mdp_state.push(m.initial());
    aut_state.push(None);
    actions.push(Vec::new());
    trans.push(Vec::new());
    let mut queue = VecDeque::new();
    queue.push_back(0usize);

    while let Some(v) = queue.pop_front() {
        let s = mdp_state[v];
        let aut_succ: Vec<StateId> = match aut_state[v] {
            None => vec![a.initial()],
            Some(q) => a.successors(q, m.label(s)).to_vec(),
        };
        let mut acts = Vec::new();
        let mut dists = Vec::new();
        for ma in 0..m.num_actions(s) {
            for &q2 in &aut_succ {
                let mut dist = Vec::new();
                for &(s2, ref p) in m.distribution(s, ma) {
                    let node = (s2, Some(q2));
                    let w = match index.get(&node) {
                        Some(&w) => w,
                        None => {
                            let w = mdp_state.len();
                            index.insert(node, w);
                            mdp_state.push(s2);
                            aut_state.push(Some(q2));
                            actions.push(Vec::new());
                            trans.push(Vec::new());
                            queue.push_back(w);
                            w
                        }
                    };
                    dist.push((w, p.clone()));
                }
                acts.push((ma, q2));
                dists.push(dist);
            }
        }
        actions[v] = acts;
        trans[v] = dists;
    }

    let alpha: Vec<bool> =
        aut_state.iter().map(|q| q.map_or(false, |q| a.is_accepting(q))).collect();
    Ok(ProductMdp {
        kind: a.kind(),
        mdp_state,
        aut_state,
        actions,
        trans,
        initial: 0,
        alpha,
    })
}

/// Maximal end components: sets of product states, each with the actions
/// that stay inside, closed and strongly connected. Returned as
/// `(states, enabled[state-index-in-product][action])`.
fn max_end_components(p: &ProductMdp) -> Vec<Vec<usize>> {
    let n = p.num_states();
    let mut enabled: Vec<Vec<bool>> =
        (0..n).map(|v| vec![true; p.trans[v].len()]).collect();
    let mut alive = vec![true; n];
    loop {
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                if !alive[v] {
                    return Vec::new();
                }
                let mut out: Vec<usize> = p.trans[v]
                    .iter()
                    .enumerate()
                    .filter(|&(a, _)| enabled[v][a])
                    .flat_map(|(_, dist)| dist.iter().map(|&(w, _)| w))
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        let comps = crate::graph::tarjan(&adj, &alive);
        let mut comp_of = vec![usize::MAX; n];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut changed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            for a in 0..p.trans[v].len() {
                if !enabled[v][a] {
                    continue;
                }
                let leaves = p.trans[v][a]
                    .iter()
                    .any(|&(w, _)| !alive[w] || comp_of[w] != comp_of[v]);
                if leaves {
                    enabled[v][a] = false;
                    changed = true;
                }
            }
            if enabled[v].iter().all(|&e| !e) {
                alive[v] = false;
                changed = true;
            }
        }
        if !changed {
            let mut mecs: Vec<Vec<usize>> = comps
                .into_iter()
                .filter(|c| c.iter().all(|&v| alive[v]) && !c.is_empty())
                .collect();
            mecs.retain(|c| c.iter().any(|&v| enabled[v].iter().any(|&e| e)));
            return mecs;
        }
    }
}

/// A winning MEC supports acceptance forever: for Büchi and weak it must
/// contain an α product-state; for co-Büchi it must contain a sub-end
/// component that avoids α entirely.
fn winning_mec(p: &ProductMdp, mec: &[usize]) -> bool {
    match p.kind {
        Kind::Buchi | Kind::Weak => mec.iter().any(|&v| p.alpha[v]),
        Kind::CoBuchi => {
            let inside: Vec<usize> =
                mec.iter().copied().filter(|&v| !p.alpha[v]).collect();
            if inside.is_empty() {
                return false;
            }
            let in_set: std::collections::HashSet<usize> = inside.iter().copied().collect();
            // Sub-MDP restricted to non-α states of the MEC; any end
            // component inside it certifies the MEC.
            let restricted = RestrictedMdp { p, allowed: &in_set };
            restricted.has_end_component()
        }
    }
}

struct RestrictedMdp<'a> {
    p: &'a ProductMdp,
    allowed: &'a std::collections::HashSet<usize>,
}

impl RestrictedMdp<'_> {
    fn has_end_component(&self) -> bool {
        let n = self.p.num_states();
        let mut alive: Vec<bool> = (0..n).map(|v| self.allowed.contains(&v)).collect();
        let mut enabled: Vec<Vec<bool>> = (0..n)
            .map(|v| {
                self.p.trans[v]
                    .iter()
                    .map(|dist| {
                        alive[v] && dist.iter().all(|&(w, _)| self.allowed.contains(&w))
                    })
                    .collect()
            })
            .collect();
        loop {
            let adj: Vec<Vec<usize>> = (0..n)
                .map(|v| {
                    if !alive[v] {
                        return Vec::new();
                    }
                    let mut out: Vec<usize> = self.p.trans[v]
                        .iter()
                        .enumerate()
                        .filter(|&(a, _)| enabled[v][a])
                        .flat_map(|(_, dist)| dist.iter().map(|&(w, _)| w))
                        .collect();
                    out.sort_unstable();
                    out.dedup();
                    out
                })
                .collect();
            let comps = crate::graph::tarjan(&adj, &alive);
            let mut comp_of = vec![usize::MAX; n];
            for (i, c) in comps.iter().enumerate() {
                for &v in c {
                    comp_of[v] = i;
                }
            }
            let mut changed = false;
            for v in 0..n {
                if !alive[v] {
                    continue;
                }
                for a in 0..self.p.trans[v].len() {
                    if !enabled[v][a] {
                        continue;
                    }
                    if self.p.trans[v][a]
                        .iter()
                        .any(|&(w, _)| !alive[w] || comp_of[w] != comp_of[v])
                    {
                        enabled[v][a] = false;
                        changed = true;
                    }
                }
                if enabled[v].iter().all(|&e| !e) {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                return (0..n).any(|v| alive[v]);
            }
        }
    }
}

/// Exact solution of the maximal acceptance probability in a product.
#[derive(Debug, Clone)]
pub struct AcceptanceSolution {
    pub value: Rational,
    /// Per-product-state maximal reachability of the winning MECs.
    pub values: Vec<Rational>,
    /// Memoryless strategy: chosen action index per product state.
    pub policy: Vec<usize>,
    /// Winning-MEC membership.
    pub target: Vec<bool>,
}

/// Maximal probability of generating an accepting automaton run:
/// decompose into maximal end components, keep the winning ones, and
/// solve exact maximal reachability to their union by policy iteration.
pub fn max_acceptance_value(p: &ProductMdp) -> Result<AcceptanceSolution> {
    let mecs = max_end_components(p);
    let mut target = vec![false; p.num_states()];
    for mec in &mecs {
        if winning_mec(p, mec) {
            for &v in mec {
                target[v] = true;
            }
        }
    }
    let (values, policy) = max_reach(p, &target);
    Ok(AcceptanceSolution { value: values[p.initial].clone(), values, policy, target })
}

/// Exact maximal reachability probabilities by policy iteration with
/// rational policy evaluation.
fn max_reach(p: &ProductMdp, target: &[bool]) -> (Vec<Rational>, Vec<usize>) {
    let n = p.num_states();
    // Value-0 preprocessing: states with no path to the target at all.
    let mut can_reach = target.to_vec();
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if can_reach[v] {
                continue;
            }
            let reaches = p.trans[v]
                .iter()
                .any(|dist| dist.iter().any(|&(w, _)| can_reach[w]));
            if reaches {
                can_reach[v] = true;
                changed = true;
            }
        }
    }

    let mut policy = vec![0usize; n];
    let mut values = evaluate_policy(p, target, &can_reach, &policy);
    loop {
        let mut improved = false;
        for v in 0..n {
            if target[v] || !can_reach[v] {
                continue;
            }
            let mut best = values[v].clone();
            let mut best_a = policy[v];
            for (a, dist) in p.trans[v].iter().enumerate() {
                let val: Rational =
                    dist.iter().map(|(w, pr)| pr * &values[*w]).sum();
                if val > best {
                    best = val;
                    best_a = a;
                }
            }
            if best_a != policy[v] && best > values[v] {
                policy[v] = best_a;
                improved = true;
            }
        }
        if !improved {
            break;
        }
        values = evaluate_policy(p, target, &can_reach, &policy);
    }
    (values, policy)
}

/// Exact reachability value of one memoryless policy: target states are
/// absorbing at 1, states that cannot reach the target under the policy
/// are 0, the rest solve an absorbing linear system.
fn evaluate_policy(
    p: &ProductMdp,
    target: &[bool],
    can_reach: &[bool],
    policy: &[usize],
) -> Vec<Rational> {
    let n = p.num_states();
    let step = |v: usize| -> &[(usize, Rational)] { &p.trans[v][policy[v]] };

    // Backward reachability of the target inside the policy's chain.
    let mut reach = target.to_vec();
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if reach[v] || target[v] || !can_reach[v] {
                continue;
            }
            if step(v).iter().any(|&(w, _)| reach[w]) {
                reach[v] = true;
                changed = true;
            }
        }
    }

    let transient: Vec<usize> = (0..n).filter(|&v| reach[v] && !target[v]).collect();
    let idx: HashMap<usize, usize> =
        transient.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = transient.len();
    let mut m = vec![vec![Rational::zero(); k]; k];
    let mut b = vec![Rational::zero(); k];
    for (i, &v) in transient.iter().enumerate() {
        m[i][i] = Rational::one();
        for &(w, ref pr) in step(v) {
            if target[w] {
                b[i] = &b[i] + pr;
            } else if let Some(&j) = idx.get(&w) {
                m[i][j] = &m[i][j] - pr;
            }
        }
    }
    let x = crate::probability::solve_linear(m, b);

    let mut values = vec![Rational::zero(); n];
    for v in 0..n {
        if target[v] {
            values[v] = Rational::one();
        } else if let Some(&i) = idx.get(&v) {
            values[v] = x[i].clone();
        }
    }
    values
}

/// No single-action deviation improves the solved values; the exactness
/// audit for policy iteration.
pub fn audit_no_single_switch_improvement(p: &ProductMdp, sol: &AcceptanceSolution) -> bool {
    for v in 0..p.num_states() {
        if sol.target[v] {
            continue;
        }
        for dist in &p.trans[v] {
            let val: Rational = dist.iter().map(|(w, pr)| pr * &sol.values[*w]).sum();
            if val > sol.values[v] {
                return false;
            }
        }
    }
    true
}

/// Maximal probability of producing an accepting run of `a` while
/// driving `m`.
pub fn psyn(m: &Mdp, a: &Automaton) -> Result<Rational> {
    let p = product(m, a)?;
    Ok(max_acceptance_value(&p)?.value)
}

/// Maximal probability that the word generated by `m` lies in `L(a)`,
/// computed against a deterministic observer of the language; sound
/// because an observer leaves the player no automaton choices.
pub fn psem(m: &Mdp, a: &Automaton, limits: &Limits) -> Result<Rational> {
    let d = semantic_observer(a, limits)?;
    psyn(m, &d)
}

fn semantic_observer(a: &Automaton, limits: &Limits) -> Result<Automaton> {
    if is_deterministic(a) {
        return Ok(a.clone());
    }
    match a.kind() {
        Kind::CoBuchi => determinize_ncw(a, limits),
        Kind::Buchi | Kind::Weak => {
            if check_sd(a, limits)?.holds {
                Ok(determinize_sd_nbw(a, false, limits)?.automaton)
            } else if a.kind() == Kind::Weak || is_weak(a) {
                determinize_ncw(&weak_as_cobuchi(a), limits)
            } else {
                Err(Error::Unsupported(
                    "no deterministic observer for a non-SD nondeterministic Büchi automaton"
                        .into(),
                ))
            }
        }
    }
}

/// Per-MDP GFM witness: equality of `psyn` and `psem` on this MDP.
/// `false` disproves GFMness; `true` is evidence only.
pub fn gfm_witness(m: &Mdp, a: &Automaton, limits: &Limits) -> Result<(bool, Rational, Rational)> {
    let syn = psyn(m, a)?;
    let sem = psem(m, a, limits)?;
    Ok((syn == sem, syn, sem))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::corpus;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn uniform_generator_shape() {
        let m = uniform_word_mdp(&Alphabet::ab());
        assert_eq!(m.num_states(), 2);
        for s in 0..2 {
            assert_eq!(m.num_actions(s), 1);
            let sum: Rational = m.distribution(s, 0).iter().map(|(_, p)| p.clone()).sum();
            assert!(sum.is_one());
        }
    }

    #[test]
    fn parse_rejects_substochastic_rows() {
        let text = "\
mdp bad
alphabet a b
states 1
initial 0
label 0 a
action 0 act
prob 0 act 0 3/4
";
        assert!(parse_mdp(text).is_err());
    }

    #[test]
    fn mdp_serialization_round_trips() {
        let m = uniform_word_mdp(&Alphabet::ab());
        let s = serialize_mdp(&m);
        assert_eq!(parse_mdp(&s).unwrap(), m);
    }

    #[test]
    fn single_letter_loop_product_with_u() {
        let al = Alphabet::new(["a"]).unwrap();
        let m = Mdp::new(
            "aloop",
            al.clone(),
            vec![0],
            0,
            vec![vec!["u".into()]],
            vec![vec![vec![(0, Rational::one())]]],
        )
        .unwrap();
        let u = Automaton::new("u1", al, Kind::Buchi, 1, 0, [0], [(0, 0, 0)]).unwrap();
        let p = product(&m, &u).unwrap();
        assert_eq!(p.num_states(), 2); // (s0, ⊥) and (s0, q0)
        assert!(psyn(&m, &u).unwrap().is_one());
    }

    #[test]
    fn psyn_of_a2_is_zero_psem_one() {
        let a2 = corpus::a2();
        let m = uniform_word_mdp(a2.alphabet());
        assert!(psyn(&m, &a2).unwrap().is_zero());
        assert!(psem(&m, &a2, &lim()).unwrap().is_one());
        let (gfm, syn, sem) = gfm_witness(&m, &a2, &lim()).unwrap();
        assert!(!gfm);
        assert!(syn.is_zero() && sem.is_one());
    }

    #[test]
    fn fig5_psyn_and_psem_vanish_on_uniform_words() {
        let f5 = corpus::f5();
        let m = uniform_word_mdp(f5.alphabet());
        // Random words have infinitely many a's almost surely.
        assert!(psyn(&m, &f5).unwrap().is_zero());
        assert!(psem(&m, &f5, &lim()).unwrap().is_zero());
    }

    #[test]
    fn deterministic_automata_have_equal_psyn_psem() {
        let u = corpus::u();
        let m = uniform_word_mdp(u.alphabet());
        let (gfm, syn, sem) = gfm_witness(&m, &u, &lim()).unwrap();
        assert!(gfm);
        assert_eq!(syn, sem);
        assert!(syn.is_one());
    }

    #[test]
    fn policy_is_single_switch_optimal() {
        let f5 = corpus::f5();
        let m = uniform_word_mdp(f5.alphabet());
        let p = product(&m, &f5).unwrap();
        let sol = max_acceptance_value(&p).unwrap();
        assert!(audit_no_single_switch_improvement(&p, &sol));
    }
}
