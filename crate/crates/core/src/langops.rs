//! Language-level operations: emptiness, complementation, NCW
//! determinization, containment, equivalence and per-state language
//! queries. These power every hierarchy decider in the crate.
//!
//! Containment `L(a) ⊆ L(b)` is decided as emptiness of `a ∩ ¬b`. The
//! complement of `b` is produced by the cheapest sound route available:
//! a deterministic `b` is dualized directly, a co-Büchi or weak `b` goes
//! through the breakpoint construction, and a genuinely nondeterministic
//! Büchi `b` first tries the α-restricted subset construction as a
//! candidate observer — whose language is always a subset of `L(b)`, so
//! one cheap containment check certifies it — before falling back to the
//! rank-based complementation.

use crate::automata::{
    adjacency, is_deterministic, lasso_membership, weak_as_cobuchi, Automaton, Kind, LassoWord,
    StateId,
};
use crate::error::{Error, Result};
use crate::graph;
use crate::limits::Limits;
use crate::sddet;
use crate::LetterId;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::rc::Rc;

/// Emptiness of `L(a)`.
///
/// Büchi and weak: empty iff no reachable cycle visits α. Co-Büchi:
/// empty iff no reachable cycle stays entirely outside α.
pub fn is_empty(a: &Automaton) -> bool {
    let reachable = a.reachable();
    let mut mask = vec![false; a.num_states()];
    for &q in &reachable {
        mask[q] = true;
    }
    if a.kind() == Kind::CoBuchi {
        for q in 0..a.num_states() {
            if a.is_accepting(q) {
                mask[q] = false;
            }
        }
    }
    let adj = adjacency(a);
    let comps = graph::tarjan(&adj, &mask);
    !comps.iter().any(|c| {
        let cyclic = c.len() > 1 || adj[c[0]].contains(&c[0]);
        cyclic
            && match a.kind() {
                Kind::Buchi | Kind::Weak => c.iter().any(|&q| a.is_accepting(q)),
                Kind::CoBuchi => true,
            }
    })
}

/// Breakpoint determinization of a co-Büchi automaton.
///
/// States are pairs `(S, O)`: `S` the reachable subset, `O ⊆ S` the runs
/// that have stayed α-free since the last breakpoint. An emptied `O`
/// marks an α-state of the result and refills from `S` on the next step.
pub fn determinize_ncw(a: &Automaton, limits: &Limits) -> Result<Automaton> {
    if a.kind() != Kind::CoBuchi {
        return Err(Error::WrongKind { expected: "cobuchi", found: a.kind().as_str() });
    }
    type Node = (BTreeSet<StateId>, BTreeSet<StateId>);
    let start_s: BTreeSet<StateId> = [a.initial()].into();
    let start_o: BTreeSet<StateId> =
        start_s.iter().copied().filter(|&q| !a.is_accepting(q)).collect();
    let start: Node = (start_s, start_o);

    let mut index: HashMap<Node, StateId> = HashMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut trans: Vec<(StateId, LetterId, StateId)> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert(start.clone(), 0);
    nodes.push(start);
    queue.push_back(0usize);

    while let Some(i) = queue.pop_front() {
        let (s, o) = nodes[i].clone();
        for l in 0..a.alphabet().len() {
            let s2: BTreeSet<StateId> =
                s.iter().flat_map(|&q| a.successors(q, l).iter().copied()).collect();
            let tracked = if o.is_empty() { &s } else { &o };
            let o2: BTreeSet<StateId> = tracked
                .iter()
                .flat_map(|&q| a.successors(q, l).iter().copied())
                .filter(|&p| !a.is_accepting(p))
                .collect();
            let node = (s2, o2);
            let j = match index.get(&node) {
                Some(&j) => j,
                None => {
                    let j = nodes.len();
                    if j >= limits.max_states {
                        return Err(Error::ResourceLimit("determinizing an NCW".into()));
                    }
                    index.insert(node.clone(), j);
                    nodes.push(node);
                    queue.push_back(j);
                    j
                }
            };
            trans.push((i, l, j));
        }
    }

    let accepting: Vec<StateId> =
        (0..nodes.len()).filter(|&i| nodes[i].1.is_empty()).collect();
    let mut d = Automaton::new(
        format!("ncwdet({})", a.name()),
        a.alphabet().clone(),
        Kind::CoBuchi,
        nodes.len(),
        0,
        accepting,
        trans,
    )?;
    for (i, (s, o)) in nodes.iter().enumerate() {
        d.set_state_name(i, subset_label(s) + ":" + &subset_label(o));
    }
    Ok(d)
}

fn subset_label(s: &BTreeSet<StateId>) -> String {
    let ids: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", ids.join(","))
}

/// Dual of a deterministic automaton: same structure, complemented
/// semantics. Büchi and co-Büchi swap kinds; a weak automaton keeps its
/// kind and complements α.
fn dual_deterministic(d: &Automaton) -> Automaton {
    debug_assert!(is_deterministic(d));
    let mut c = match d.kind() {
        Kind::Buchi => d.with_kind(Kind::CoBuchi),
        Kind::CoBuchi => d.with_kind(Kind::Buchi),
        Kind::Weak => {
            let alpha: Vec<StateId> =
                (0..d.num_states()).filter(|&q| !d.is_accepting(q)).collect();
            d.with_accepting(alpha)
        }
    };
    c.set_name(format!("not({})", d.name()));
    c
}

/// Complement: `L(result) = Σ^ω ∖ L(a)`.
///
/// Deterministic inputs are dualized in place. A nondeterministic
/// co-Büchi (or weak) automaton goes through the breakpoint construction
/// and is then dualized. A nondeterministic Büchi automaton falls back
/// to the rank-based construction, practical for small state counts and
/// guarded by the state budget.
pub fn complement(a: &Automaton, limits: &Limits) -> Result<Automaton> {
    if is_deterministic(a) {
        return Ok(dual_deterministic(a));
    }
    match a.kind() {
        Kind::CoBuchi => Ok(dual_deterministic(&determinize_ncw(a, limits)?)),
        Kind::Weak => {
            let d = determinize_ncw(&weak_as_cobuchi(a), limits)?;
            Ok(dual_deterministic(&d))
        }
        Kind::Buchi => rank_complement(a, limits),
    }
}

/// Complement route used inside containment checks: same language as
/// [`complement`], but for nondeterministic Büchi operands it first
/// tries the certified subset observer, which is usually far smaller
/// than the rank-based automaton.
pub(crate) fn complement_for_contains(a: &Automaton, limits: &Limits) -> Result<Automaton> {
    if is_deterministic(a) {
        return Ok(dual_deterministic(a));
    }
    match a.kind() {
        Kind::CoBuchi => Ok(dual_deterministic(&determinize_ncw(a, limits)?)),
        Kind::Weak => {
            let d = determinize_ncw(&weak_as_cobuchi(a), limits)?;
            Ok(dual_deterministic(&d))
        }
        Kind::Buchi => match certified_buchi_observer(a, limits)? {
            Some(d) => Ok(dual_deterministic(&d)),
            None => rank_complement(a, limits),
        },
    }
}

/// Deterministic automaton with exactly the language of `a`, when one is
/// obtainable along a cheap certified route; `None` otherwise.
///
/// For a Büchi input the candidate is the α-restricted subset
/// construction. Its language is contained in `L(a)` by construction,
/// so the single check `L(a) ⊆ L(candidate)` - whose right-hand side is
/// deterministic - certifies equality.
pub fn deterministic_observer(a: &Automaton, limits: &Limits) -> Result<Option<Automaton>> {
    if is_deterministic(a) {
        return Ok(Some(a.clone()));
    }
    match a.kind() {
        Kind::CoBuchi => Ok(Some(determinize_ncw(a, limits)?)),
        Kind::Weak => Ok(Some(determinize_ncw(&weak_as_cobuchi(a), limits)?)),
        Kind::Buchi => certified_buchi_observer(a, limits),
    }
}

fn certified_buchi_observer(a: &Automaton, limits: &Limits) -> Result<Option<Automaton>> {
    let d = match sddet::determinize_sd_nbw(a, false, limits) {
        Ok(sd) => sd.automaton,
        Err(Error::ResourceLimit(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    // L(d) ⊆ L(a) holds unconditionally; verify the other inclusion.
    let not_d = dual_deterministic(&d);
    match intersection_witness(a, &not_d, limits)? {
        None => Ok(Some(d)),
        Some(_) => Ok(None),
    }
}

/// `true` iff `L(a) ⊆ L(b)`.
pub fn contains(a: &Automaton, b: &Automaton, limits: &Limits) -> Result<bool> {
    Ok(contains_counterexample(a, b, limits)?.is_none())
}

/// `None` when `L(a) ⊆ L(b)`; otherwise a lasso in `L(a) ∖ L(b)`.
pub fn contains_counterexample(
    a: &Automaton,
    b: &Automaton,
    limits: &Limits,
) -> Result<Option<LassoWord>> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let not_b = complement_for_contains(b, limits)?;
    intersection_witness(a, &not_b, limits)
}

/// `true` iff `L(a) = L(b)`.
pub fn equivalent(a: &Automaton, b: &Automaton, limits: &Limits) -> Result<bool> {
    Ok(contains(a, b, limits)? && contains(b, a, limits)?)
}

/// `q ∼ s`: the states recognize the same language.
pub fn state_equiv(a: &Automaton, q: StateId, s: StateId, limits: &Limits) -> Result<bool> {
    check_state(a, q)?;
    check_state(a, s)?;
    if q == s {
        return Ok(true);
    }
    let mut cache = LangCache::new(a, *limits);
    cache.equiv_states(q, s)
}

/// `true` iff `L(a^q) = Σ^ω`.
pub fn is_universal_state(a: &Automaton, q: StateId, limits: &Limits) -> Result<bool> {
    check_state(a, q)?;
    let mut cache = LangCache::new(a, *limits);
    cache.universal(q)
}

fn check_state(a: &Automaton, q: StateId) -> Result<()> {
    if q >= a.num_states() {
        return Err(Error::InvalidInput(format!("state {q} out of range")));
    }
    Ok(())
}

/// Memoizes per-state deterministic observers and pairwise containments
/// for one automaton. The hierarchy deciders lean on this heavily: a
/// semantic-determinism check touches every sibling pair, and rebased
/// observers are shared across all of them.
pub struct LangCache<'a> {
    a: &'a Automaton,
    limits: Limits,
    observers: HashMap<StateId, Option<Rc<Automaton>>>,
    contains_memo: HashMap<(StateId, StateId), bool>,
}

impl<'a> LangCache<'a> {
    pub fn new(a: &'a Automaton, limits: Limits) -> Self {
        LangCache { a, limits, observers: HashMap::new(), contains_memo: HashMap::new() }
    }

    /// Deterministic observer of `L(a^q)`, if one is cheaply certifiable.
    fn observer(&mut self, q: StateId) -> Result<Option<Rc<Automaton>>> {
        if let Some(d) = self.observers.get(&q) {
            return Ok(d.clone());
        }
        let d = deterministic_observer(&self.a.rebase(q), &self.limits)?.map(Rc::new);
        self.observers.insert(q, d.clone());
        Ok(d)
    }

    /// `L(a^q) ⊆ L(a^s)`.
    pub fn contains_states(&mut self, q: StateId, s: StateId) -> Result<bool> {
        if q == s {
            return Ok(true);
        }
        if let Some(&r) = self.contains_memo.get(&(q, s)) {
            return Ok(r);
        }
        let left = self.a.rebase(q);
        let r = match self.observer(s)? {
            Some(ds) => {
                let not_ds = dual_deterministic(&ds);
                intersection_witness(&left, &not_ds, &self.limits)?.is_none()
            }
            None => contains(&left, &self.a.rebase(s), &self.limits)?,
        };
        self.contains_memo.insert((q, s), r);
        Ok(r)
    }

    pub fn equiv_states(&mut self, q: StateId, s: StateId) -> Result<bool> {
        Ok(self.contains_states(q, s)? && self.contains_states(s, q)?)
    }

    /// `L(a^q) = Σ^ω`.
    pub fn universal(&mut self, q: StateId) -> Result<bool> {
        match self.observer(q)? {
            Some(d) => Ok(is_empty(&dual_deterministic(&d))),
            None => {
                let c = complement_for_contains(&self.a.rebase(q), &self.limits)?;
                Ok(is_empty(&c))
            }
        }
    }
}

/// Searches `L(a) ∩ L(b)` for a lasso witness; `None` means the
/// intersection is empty. Both automata must share one alphabet.
///
/// The product carries a single Rabin-style pair assembled from the two
/// acceptance kinds: Büchi/weak operands contribute a set to visit
/// infinitely often, co-Büchi operands a set to avoid on the cycle.
pub(crate) fn intersection_witness(
    a: &Automaton,
    b: &Automaton,
    limits: &Limits,
) -> Result<Option<LassoWord>> {
    debug_assert_eq!(a.alphabet(), b.alphabet());
    let nl = a.alphabet().len();

    let mut index: HashMap<(StateId, StateId), usize> = HashMap::new();
    let mut pairs: Vec<(StateId, StateId)> = Vec::new();
    let mut adj: Vec<Vec<(usize, LetterId)>> = Vec::new();
    let mut parent: Vec<Option<(usize, LetterId)>> = Vec::new();

    let start = (a.initial(), b.initial());
    index.insert(start, 0);
    pairs.push(start);
    adj.push(Vec::new());
    parent.push(None);
    let mut queue = VecDeque::new();
    queue.push_back(0usize);
    while let Some(i) = queue.pop_front() {
        let (qa, qb) = pairs[i];
        let mut edges = Vec::new();
        for l in 0..nl {
            for &pa in a.successors(qa, l) {
                for &pb in b.successors(qb, l) {
                    let node = (pa, pb);
                    let j = match index.get(&node) {
                        Some(&j) => j,
                        None => {
                            let j = pairs.len();
                            if j >= limits.max_states {
                                return Err(Error::ResourceLimit(
                                    "building a language product".into(),
                                ));
                            }
                            index.insert(node, j);
                            pairs.push(node);
                            adj.push(Vec::new());
                            parent.push(Some((i, l)));
                            queue.push_back(j);
                            j
                        }
                    };
                    edges.push((j, l));
                }
            }
        }
        adj[i] = edges;
    }

    let n = pairs.len();
    let needs = |aut: &Automaton| matches!(aut.kind(), Kind::Buchi | Kind::Weak);
    let need_a = needs(a);
    let need_b = needs(b);
    let alpha_a: Vec<bool> = pairs.iter().map(|&(qa, _)| a.is_accepting(qa)).collect();
    let alpha_b: Vec<bool> = pairs.iter().map(|&(_, qb)| b.is_accepting(qb)).collect();

    // Cycles may not touch the co-Büchi sides' α-states.
    let mask: Vec<bool> = (0..n)
        .map(|i| (need_a || !alpha_a[i]) && (need_b || !alpha_b[i]))
        .collect();
    let plain: Vec<Vec<usize>> =
        adj.iter().map(|es| es.iter().map(|&(j, _)| j).collect()).collect();
    let comps = graph::tarjan(&plain, &mask);

    for comp in &comps {
        let cyclic = comp.len() > 1 || plain[comp[0]].contains(&comp[0]);
        if !cyclic {
            continue;
        }
        if need_a && !comp.iter().any(|&v| alpha_a[v]) {
            continue;
        }
        if need_b && !comp.iter().any(|&v| alpha_b[v]) {
            continue;
        }
        // Anchor on a required state when there is one.
        let anchor = if need_a {
            *comp.iter().find(|&&v| alpha_a[v]).unwrap()
        } else {
            comp[0]
        };
        let mut comp_mask = vec![false; n];
        for &v in comp {
            comp_mask[v] = true;
        }
        let cycle_nodes = if need_b && !alpha_b[anchor] {
            // Route the cycle through a b-accepting state.
            let to_b = graph::bfs_path(&plain, &plain[anchor], &comp_mask, |v| alpha_b[v])
                .expect("component contains a b-accepting state");
            let back =
                graph::bfs_path(&plain, &plain[*to_b.last().unwrap()], &comp_mask, |v| {
                    v == anchor
                })
                .expect("component is strongly connected");
            let mut c = vec![anchor];
            c.extend(to_b);
            c.extend(&back[..back.len() - 1]);
            c
        } else {
            graph::bfs_cycle(&plain, anchor, &comp_mask).expect("component is cyclic")
        };

        // Letters along the cycle; consecutive nodes are adjacent.
        let letter_between = |u: usize, v: usize| -> LetterId {
            adj[u].iter().find(|&&(j, _)| j == v).map(|&(_, l)| l).unwrap()
        };
        let mut lloop = Vec::with_capacity(cycle_nodes.len());
        for t in 0..cycle_nodes.len() {
            let u = cycle_nodes[t];
            let v = cycle_nodes[(t + 1) % cycle_nodes.len()];
            lloop.push(letter_between(u, v));
        }

        // Stem letters from the BFS parents.
        let mut stem = Vec::new();
        let mut cur = anchor;
        while let Some((p, l)) = parent[cur] {
            stem.push(l);
            cur = p;
        }
        stem.reverse();
        let w = LassoWord::new(stem, lloop)?;
        debug_assert_eq!(lasso_membership(a, &w)?.0, true);
        debug_assert_eq!(lasso_membership(b, &w)?.0, true);
        return Ok(Some(w));
    }
    Ok(None)
}

/// Rank-based complementation of a nondeterministic Büchi automaton.
///
/// Level rankings are bounded by twice the width of the reachable subset
/// construction (at most `2n`), odd ranks are forbidden on α-states, and
/// an obligation set tracks even-ranked runs between breakpoints. The
/// state space is built reachably under the `max_states` budget.
pub(crate) fn rank_complement(a: &Automaton, limits: &Limits) -> Result<Automaton> {
    let width = max_subset_width(a, limits).unwrap_or(a.num_states());
    let max_rank: u32 = 2 * width as u32;

    type Node = (BTreeMap<StateId, u32>, BTreeSet<StateId>);
    let mut f0 = BTreeMap::new();
    f0.insert(a.initial(), max_rank);
    let start: Node = (f0, BTreeSet::new());

    let mut index: HashMap<Node, usize> = HashMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut trans: Vec<(StateId, LetterId, StateId)> = Vec::new();
    index.insert(start.clone(), 0);
    nodes.push(start);
    let mut queue = VecDeque::new();
    queue.push_back(0usize);

    while let Some(i) = queue.pop_front() {
        let (f, o) = nodes[i].clone();
        for l in 0..a.alphabet().len() {
            // Successor set with per-state rank caps.
            let mut caps: BTreeMap<StateId, u32> = BTreeMap::new();
            for (&q, &r) in &f {
                for &p in a.successors(q, l) {
                    caps.entry(p).and_modify(|c| *c = (*c).min(r)).or_insert(r);
                }
            }
            let succs: Vec<(StateId, u32)> = caps.into_iter().collect();
            let o_img: BTreeSet<StateId> = o
                .iter()
                .flat_map(|&q| a.successors(q, l).iter().copied())
                .collect();

            // Enumerate all legal successor rankings with an odometer.
            let choices: Vec<Vec<u32>> = succs
                .iter()
                .map(|&(p, cap)| {
                    (0..=cap).filter(|r| !a.is_accepting(p) || r % 2 == 0).collect()
                })
                .collect();
            let mut pick = vec![0usize; succs.len()];
            loop {
                let mut g = BTreeMap::new();
                for (k, &(p, _)) in succs.iter().enumerate() {
                    g.insert(p, choices[k][pick[k]]);
                }
                let tracked: BTreeSet<StateId> = if o.is_empty() {
                    g.iter().filter(|(_, &r)| r % 2 == 0).map(|(&p, _)| p).collect()
                } else {
                    o_img.iter().copied().filter(|p| g[p] % 2 == 0).collect()
                };
                let node = (g, tracked);
                let j = match index.get(&node) {
                    Some(&j) => j,
                    None => {
                        let j = nodes.len();
                        if j >= limits.max_states {
                            return Err(Error::ResourceLimit(
                                "rank-based complementation".into(),
                            ));
                        }
                        index.insert(node.clone(), j);
                        nodes.push(node);
                        queue.push_back(j);
                        j
                    }
                };
                trans.push((i, l, j));

                // Advance the odometer.
                let mut k = 0;
                loop {
                    if k == pick.len() {
                        break;
                    }
                    pick[k] += 1;
                    if pick[k] < choices[k].len() {
                        break;
                    }
                    pick[k] = 0;
                    k += 1;
                }
                if k == pick.len() {
                    break;
                }
            }
        }
    }

    let accepting: Vec<StateId> =
        (0..nodes.len()).filter(|&i| nodes[i].1.is_empty()).collect();
    Automaton::new(
        format!("not({})", a.name()),
        a.alphabet().clone(),
        Kind::Buchi,
        nodes.len(),
        0,
        accepting,
        trans,
    )
}

/// Largest subset arising in the reachable subset construction; `None`
/// when the construction outgrows the budget.
fn max_subset_width(a: &Automaton, limits: &Limits) -> Option<usize> {
    let start: BTreeSet<StateId> = [a.initial()].into();
    let mut seen: BTreeSet<BTreeSet<StateId>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut width = 1;
    while let Some(s) = queue.pop_front() {
        for l in 0..a.alphabet().len() {
            let s2: BTreeSet<StateId> =
                s.iter().flat_map(|&q| a.successors(q, l).iter().copied()).collect();
            if !seen.contains(&s2) {
                if seen.len() >= limits.max_states {
                    return None;
                }
                width = width.max(s2.len());
                seen.insert(s2.clone());
                queue.push_back(s2);
            }
        }
    }
    Some(width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::naive_block_membership;
    use crate::gadgets::corpus;
    use crate::parse_lasso;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn emptiness_basics() {
        assert!(is_empty(&corpus::z()));
        assert!(!is_empty(&corpus::u()));
        // 1-state co-Büchi with α = {0}: every run visits α forever.
        let all = corpus::u().with_kind(Kind::CoBuchi);
        assert!(is_empty(&all));
        assert!(!is_empty(&corpus::uc()));
    }

    #[test]
    fn ncw_determinization_preserves_language() {
        let a2 = corpus::a2();
        let d = determinize_ncw(&a2, &lim()).unwrap();
        assert!(is_deterministic(&d));
        for s in ["a;b", ";a", "ab;ab", "b;ba", "abab;aabb"] {
            let w = parse_lasso(a2.alphabet(), s).unwrap();
            assert_eq!(
                lasso_membership(&a2, &w).unwrap().0,
                lasso_membership(&d, &w).unwrap().0,
                "disagreement on {s}"
            );
        }
        assert!(equivalent(&a2, &d, &lim()).unwrap());
        assert!(determinize_ncw(&corpus::u(), &lim()).is_err());
    }

    #[test]
    fn complement_flips_membership_on_corpus() {
        for (name, a) in corpus::corpus() {
            let c = complement(&a, &lim()).unwrap();
            for s in ["a;b", ";a", "ab;ab", "ba;b", ";ab", "abb;ba"] {
                let w = parse_lasso(a.alphabet(), s).unwrap();
                assert_ne!(
                    lasso_membership(&a, &w).unwrap().0,
                    lasso_membership(&c, &w).unwrap().0,
                    "{name} and its complement agree on {s}"
                );
            }
        }
    }

    #[test]
    fn complement_of_fig5_sees_infinitely_many_as() {
        let c = complement(&corpus::f5(), &lim()).unwrap();
        let w_inf = parse_lasso(c.alphabet(), "ab;ab").unwrap();
        let w_fin = parse_lasso(c.alphabet(), "a;b").unwrap();
        assert!(lasso_membership(&c, &w_inf).unwrap().0);
        assert!(!lasso_membership(&c, &w_fin).unwrap().0);
    }

    #[test]
    fn containment_and_equivalence_basics() {
        let u = corpus::u();
        let z = corpus::z();
        assert!(contains(&z, &u, &lim()).unwrap());
        assert!(!contains(&u, &z, &lim()).unwrap());
        let cz = complement(&z, &lim()).unwrap();
        assert!(equivalent(&u, &cz, &lim()).unwrap());
        // W accepts everything, so it is equivalent to U as a language.
        let w = corpus::w().with_kind(Kind::Buchi);
        assert!(equivalent(&w, &u, &lim()).unwrap());
    }

    #[test]
    fn counterexamples_are_real() {
        let u = corpus::u();
        let z = corpus::z();
        let w = contains_counterexample(&u, &z, &lim()).unwrap().unwrap();
        assert!(lasso_membership(&u, &w).unwrap().0);
        assert!(!lasso_membership(&z, &w).unwrap().0);
        assert!(naive_block_membership(&u, &w).unwrap());
    }

    #[test]
    fn fig5_state_languages_differ() {
        let f5 = corpus::f5();
        assert!(!state_equiv(&f5, 0, 1, &lim()).unwrap());
        assert!(state_equiv(&f5, 0, 0, &lim()).unwrap());
        assert!(!is_universal_state(&f5, 1, &lim()).unwrap());
    }

    #[test]
    fn w_states_all_equivalent() {
        let w = corpus::w();
        for q in 0..w.num_states() {
            for s in 0..w.num_states() {
                assert!(state_equiv(&w, q, s, &lim()).unwrap());
            }
        }
    }

    #[test]
    fn a2_states_universal() {
        let a2 = corpus::a2();
        for q in 0..a2.num_states() {
            assert!(is_universal_state(&a2, q, &lim()).unwrap());
        }
    }

    #[test]
    fn rank_complement_cross_checked_by_oracle() {
        // A_phi-shaped small NBW: non-weak, genuinely nondeterministic.
        let phi = crate::gadgets::sat::CnfFormula::new(2, vec![vec![1, 2]]).unwrap();
        let aphi = crate::gadgets::sat::sat_to_nbw(&phi).unwrap();
        let c = rank_complement(&aphi, &lim()).unwrap();
        for s in [
            "x1,c1;x1,c1",
            ";x1,c1",
            ";x2,c1",
            "x1,c1;x2,c1,x1,c1",
            ";x1,c1,x2,c1",
            ";c1,x1",
        ] {
            let w = parse_lasso(aphi.alphabet(), s).unwrap();
            assert_ne!(
                lasso_membership(&aphi, &w).unwrap().0,
                lasso_membership(&c, &w).unwrap().0,
                "complement agrees on {s}"
            );
        }
    }
}
