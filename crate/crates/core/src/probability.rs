//! Exact probability measures of automaton languages under the uniform
//! word distribution, the stochastic Büchi game for almost-sure pruning
//! extraction, the almost-DBP decision and the co-safe closure.
//!
//! The uniform random walk on a deterministic automaton reaches an
//! ergodic SCC with probability 1 and then visits all of its states
//! infinitely often, so the measure of the language is the absorption
//! probability into the accepting ergodic SCCs. Everything is computed
//! in exact rational arithmetic; "measure zero" here is a theorem about
//! the automaton, never a rounding artifact.

use crate::automata::{
    det_step, is_deterministic, is_weak, scc_decomposition, weak_as_cobuchi, Automaton, Kind,
    StateId,
};
use crate::error::{Error, Result};
use crate::hierarchy::{all_prunings, check_dbp, check_hd, check_sd, Pruning};
use crate::langops::{determinize_ncw, LangCache};
use crate::limits::Limits;
use crate::sddet::determinize_sd_nbw;
use crate::LetterId;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact arbitrary-precision fraction; all probabilities in this crate.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Exact solve of `m · x = b` by Gaussian elimination over rationals.
/// The callers only build nonsingular systems (absorbing-chain blocks).
pub(crate) fn solve_linear(mut m: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Vec<Rational> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("absorbing-chain system is nonsingular");
        m.swap(col, pivot);
        b.swap(col, pivot);
        let inv = m[col][col].clone();
        for c in col..n {
            m[col][c] = &m[col][c] / &inv;
        }
        b[col] = &b[col] / &inv;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..n {
                m[r][c] = &m[r][c] - &f * &m[col][c];
            }
            b[r] = &b[r] - &f * &b[col];
        }
    }
    b
}

/// Absorption probability of the uniform random walk into each ergodic
/// SCC of a deterministic automaton, from the initial state. The SCCs
/// are returned with their state sets; probabilities sum to exactly 1.
pub fn ergodic_absorption(d: &Automaton) -> Result<Vec<(Vec<StateId>, Rational)>> {
    if !is_deterministic(d) {
        return Err(Error::NondeterministicInput);
    }
    let g = scc_decomposition(d);
    let ergodic: Vec<usize> = (0..g.components.len()).filter(|&i| g.ergodic[i]).collect();
    let mut out = Vec::with_capacity(ergodic.len());
    for &target in &ergodic {
        let value = absorption_into(d, |c| c == target)?;
        out.push((g.components[target].clone(), value));
    }
    Ok(out)
}

/// Probability that the walk from the initial state is absorbed in an
/// ergodic SCC selected by `good`.
fn absorption_into(d: &Automaton, good: impl Fn(usize) -> bool) -> Result<Rational> {
    let g = scc_decomposition(d);
    let nl = d.alphabet().len();
    let per_letter = rat(1, nl as i64);

    // A state inside any ergodic SCC is already decided.
    let decided = |q: StateId| -> Option<bool> {
        let c = g.component_of[q]?;
        if g.ergodic[c] {
            Some(good(c))
        } else {
            None
        }
    };

    if let Some(v) = decided(d.initial()) {
        return Ok(if v { Rational::one() } else { Rational::zero() });
    }

    let transient: Vec<StateId> = d
        .reachable()
        .into_iter()
        .filter(|&q| decided(q).is_none())
        .collect();
    let idx_of = |q: StateId| transient.iter().position(|&t| t == q);

    let k = transient.len();
    let mut m = vec![vec![Rational::zero(); k]; k];
    let mut b = vec![Rational::zero(); k];
    for (i, &q) in transient.iter().enumerate() {
        m[i][i] = Rational::one();
        for l in 0..nl {
            let p = det_step(d, q, l);
            match decided(p) {
                Some(true) => b[i] = &b[i] + &per_letter,
                Some(false) => {}
                None => {
                    let j = idx_of(p).expect("successor of reachable state is reachable");
                    m[i][j] = &m[i][j] - &per_letter;
                }
            }
        }
    }
    let x = solve_linear(m, b);
    let i0 = idx_of(d.initial()).expect("initial is transient here");
    Ok(x[i0].clone())
}

/// Measure of the language of a deterministic automaton: absorption
/// probability of the uniform random walk into the accepting ergodic
/// SCCs. Acceptance of an ergodic SCC `C` follows the kind: Büchi
/// `C ∩ α ≠ ∅`, co-Büchi `C ∩ α = ∅`, weak `C ⊆ α`.
pub fn measure_deterministic(d: &Automaton) -> Result<Rational> {
    if !is_deterministic(d) {
        return Err(Error::NondeterministicInput);
    }
    let g = scc_decomposition(d);
    let accepting_component = |c: usize| -> bool {
        let states = &g.components[c];
        match d.kind() {
            Kind::Buchi => states.iter().any(|&q| d.is_accepting(q)),
            Kind::CoBuchi => states.iter().all(|&q| !d.is_accepting(q)),
            Kind::Weak => states.iter().all(|&q| d.is_accepting(q)),
        }
    };
    absorption_into(d, accepting_component)
}

/// Measure of `L(a)` for the automaton classes with a deterministic
/// observer: deterministic inputs directly, co-Büchi via the breakpoint
/// construction, SD Büchi/weak via the α-restricted subset construction,
/// and structurally weak non-SD inputs via their co-Büchi reading.
pub fn measure(a: &Automaton, limits: &Limits) -> Result<Rational> {
    if is_deterministic(a) {
        return measure_deterministic(a);
    }
    match a.kind() {
        Kind::CoBuchi => measure_deterministic(&determinize_ncw(a, limits)?),
        Kind::Buchi | Kind::Weak => {
            if check_sd(a, limits)?.holds {
                let d = determinize_sd_nbw(a, false, limits)?.automaton;
                measure_deterministic(&d)
            } else if a.kind() == Kind::Weak || is_weak(a) {
                let d = determinize_ncw(&weak_as_cobuchi(a), limits)?;
                measure_deterministic(&d)
            } else {
                Err(Error::Unsupported(
                    "measure of a non-SD nondeterministic Büchi automaton".into(),
                ))
            }
        }
    }
}

/// The simple stochastic Büchi game over an automaton: Random owns the
/// state positions and draws letters uniformly, Eve owns the
/// `(state, letter)` positions and resolves the nondeterminism. The
/// objective is the Büchi set `α ∪ Q_rej`, where `Q_rej` collects the
/// states whose residual language has measure zero.
#[derive(Debug, Clone)]
pub struct StochasticBuchiGame {
    automaton: Automaton,
    /// States whose rebased language has measure 0.
    pub q_rej: Vec<bool>,
    /// Büchi target on Random positions: α ∪ Q_rej.
    pub target: Vec<bool>,
}

impl StochasticBuchiGame {
    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }
}

/// Builds the stochastic Büchi game; requires per-state measures to be
/// computable (SD Büchi or weak inputs in practice).
pub fn build_game(a: &Automaton, limits: &Limits) -> Result<StochasticBuchiGame> {
    if a.kind() == Kind::CoBuchi {
        return Err(Error::WrongKind { expected: "buchi or weak", found: "cobuchi" });
    }
    let mut q_rej = vec![false; a.num_states()];
    for q in 0..a.num_states() {
        q_rej[q] = measure(&a.rebase(q), limits)?.is_zero();
    }
    let target: Vec<bool> =
        (0..a.num_states()).map(|q| a.is_accepting(q) || q_rej[q]).collect();
    Ok(StochasticBuchiGame { automaton: a.clone(), q_rej, target })
}

/// Positions from which Eve wins the Büchi objective with probability 1,
/// along with a pure memoryless strategy exposed as a pruning of the
/// source automaton.
///
/// Classical qualitative fixpoint: repeatedly restrict to the positive
/// attractor of the target inside the current candidate, where Random
/// positions additionally may not be able to leave the candidate; Eve's
/// strategy follows decreasing attractor ranks.
pub fn solve_almost_sure_buchi(g: &StochasticBuchiGame) -> (Vec<bool>, Pruning) {
    let a = &g.automaton;
    let n = a.num_states();
    let nl = a.alphabet().len();
    // Positions: 0..n Random (states), n..n+n*nl Eve ((state, letter)).
    let eve = |q: StateId, l: LetterId| n + q * nl + l;
    let total = n + n * nl;
    let mut alive = vec![true; total];
    let mut rank = vec![usize::MAX; total];

    loop {
        // Positive attractor to the live targets within `alive`,
        // with the Random-closure side condition.
        for r in rank.iter_mut() {
            *r = usize::MAX;
        }
        for q in 0..n {
            if alive[q] && g.target[q] {
                rank[q] = 0;
            }
        }
        // Gauss-Seidel style saturation: iterate until stable.
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..n {
                for l in 0..nl {
                    let e = eve(q, l);
                    if !alive[e] {
                        continue;
                    }
                    let best = a
                        .successors(q, l)
                        .iter()
                        .filter(|&&p| alive[p])
                        .map(|&p| rank[p])
                        .min()
                        .unwrap_or(usize::MAX);
                    let new = best.saturating_add(1);
                    if new < rank[e] {
                        rank[e] = new;
                        changed = true;
                    }
                }
            }
            for q in 0..n {
                if !alive[q] || g.target[q] {
                    continue;
                }
                let all_alive = (0..nl).all(|l| alive[eve(q, l)]);
                if !all_alive {
                    continue;
                }
                let best = (0..nl).map(|l| rank[eve(q, l)]).min().unwrap_or(usize::MAX);
                let new = best.saturating_add(1);
                if new < rank[q] {
                    rank[q] = new;
                    changed = true;
                }
            }
        }
        let mut shrunk = false;
        for v in 0..total {
            if alive[v] && rank[v] == usize::MAX {
                alive[v] = false;
                shrunk = true;
            }
        }
        if !shrunk {
            break;
        }
    }

    // Eve's strategy: rank-decreasing successor, canonical tie-break.
    let mut pruning = Pruning::canonical(a);
    for q in 0..n {
        for l in 0..nl {
            let e = eve(q, l);
            if !alive[e] {
                continue;
            }
            let succs = a.successors(q, l);
            let pick = succs
                .iter()
                .copied()
                .filter(|&p| alive[p])
                .min_by_key(|&p| rank[p])
                .unwrap_or(succs[0]);
            pruning.set_choice(q, l, pick);
        }
    }
    let winning: Vec<bool> = (0..n).map(|q| alive[q]).collect();
    (winning, pruning)
}

/// Routes and outcome of the almost-DBP decision.
#[derive(Debug, Clone)]
pub struct AlmostDbpOutcome {
    pub holds: bool,
    /// A pruning achieving gap 0, when one exists.
    pub pruning: Option<Pruning>,
    /// `measure(a) − measure(best found pruning)`; exactly 0 on success.
    pub gap: Rational,
    pub route: &'static str,
}

/// Does some pruning of `a` lose only a measure-zero slice of `L(a)`?
///
/// SD Büchi and weak inputs go through the stochastic Büchi game; HD
/// co-Büchi inputs through the co-safe closure; everything else falls
/// back to exhaustive enumeration of prunings under the search budget.
/// Since prunings only remove runs, the gap always equals
/// `measure(a) − measure(pruned)`.
pub fn almost_dbp(a: &Automaton, limits: &Limits) -> Result<AlmostDbpOutcome> {
    let total = measure(a, limits)?;

    if matches!(a.kind(), Kind::Buchi | Kind::Weak) && check_sd(a, limits)?.holds {
        let game = build_game(a, limits)?;
        let (_, pruning) = solve_almost_sure_buchi(&game);
        let gap = &total - &measure_deterministic(&pruning.apply(a))?;
        if gap.is_zero() {
            return Ok(AlmostDbpOutcome {
                holds: true,
                pruning: Some(pruning),
                gap,
                route: "stochastic-buchi-game",
            });
        }
        // The game route is guaranteed for SD inputs; reaching this
        // point would mean a solver defect, so fall through honestly.
    }

    if a.kind() == Kind::CoBuchi && check_hd(a, limits)?.holds {
        let closure = cosafe_closure(a, limits)?;
        let dbp = check_dbp(&closure, limits)?;
        if let Some(pruning) = dbp.pruning {
            let gap = &total - &measure_deterministic(&pruning.apply(a))?;
            if gap.is_zero() {
                return Ok(AlmostDbpOutcome {
                    holds: true,
                    pruning: Some(pruning),
                    gap,
                    route: "cosafe-closure",
                });
            }
        }
    }

    // Exhaustive enumeration, budget-capped.
    let mut best: Option<(Pruning, Rational)> = None;
    let mut tested: u64 = 0;
    for pruning in all_prunings(a) {
        tested += 1;
        if tested > limits.search_budget {
            return Err(Error::BudgetExceeded("enumerating prunings".into()));
        }
        let value = measure_deterministic(&pruning.apply(a))?;
        if value == total {
            return Ok(AlmostDbpOutcome {
                holds: true,
                pruning: Some(pruning),
                gap: Rational::zero(),
                route: "exhaustive",
            });
        }
        if best.as_ref().map_or(true, |(_, v)| value > *v) {
            best = Some((pruning, value));
        }
    }
    let gap = &total - &best.expect("at least one pruning exists").1;
    Ok(AlmostDbpOutcome { holds: false, pruning: None, gap, route: "exhaustive" })
}

/// `measure(a) − measure(a pruned by p)`, exactly.
pub fn measure_gap(a: &Automaton, p: &Pruning, limits: &Limits) -> Result<Rational> {
    let total = measure(a, limits)?;
    let pruned = measure_deterministic(&p.apply(a))?;
    Ok(&total - &pruned)
}

/// Co-safe closure of a co-Büchi automaton: enlarges α with every state
/// whose residual language is not universal. For HD inputs the result
/// recognizes exactly the words of `L(a)` that have a good prefix.
pub fn cosafe_closure(a: &Automaton, limits: &Limits) -> Result<Automaton> {
    if a.kind() != Kind::CoBuchi {
        return Err(Error::WrongKind { expected: "cobuchi", found: a.kind().as_str() });
    }
    let mut cache = LangCache::new(a, *limits);
    let mut alpha: Vec<StateId> = Vec::new();
    for q in 0..a.num_states() {
        if a.is_accepting(q) || !cache.universal(q)? {
            alpha.push(q);
        }
    }
    let mut out = a.with_accepting(alpha);
    out.set_name(format!("cosafe({})", a.name()));
    Ok(out)
}

/// Is `x` a good prefix of `L(d)`, i.e. `x·Σ^ω ⊆ L(d)`? Requires a
/// deterministic automaton; the state reached on `x` must be universal.
pub fn good_prefix(d: &Automaton, x: &[LetterId], limits: &Limits) -> Result<bool> {
    if !is_deterministic(d) {
        return Err(Error::NondeterministicInput);
    }
    let mut q = d.initial();
    for &l in x {
        if l >= d.alphabet().len() {
            return Err(Error::AlphabetMismatch);
        }
        q = det_step(d, q, l);
    }
    let mut cache = LangCache::new(d, *limits);
    cache.universal(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::corpus;
    use crate::langops::complement;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn u_has_measure_one_z_zero() {
        assert_eq!(measure_deterministic(&corpus::u()).unwrap(), Rational::one());
        assert_eq!(measure_deterministic(&corpus::z()).unwrap(), Rational::zero());
    }

    #[test]
    fn coin_flip_automaton_measures_half() {
        // q0 -a-> accepting sink, q0 -b-> rejecting sink.
        let al = crate::Alphabet::ab();
        let d = Automaton::new(
            "coin",
            al,
            Kind::Buchi,
            3,
            0,
            [1],
            [(0, 0, 1), (0, 1, 2), (1, 0, 1), (1, 1, 1), (2, 0, 2), (2, 1, 2)],
        )
        .unwrap();
        assert_eq!(measure_deterministic(&d).unwrap(), rat(1, 2));
        let absorption = ergodic_absorption(&d).unwrap();
        let sum: Rational = absorption.iter().map(|(_, p)| p.clone()).sum();
        assert_eq!(sum, Rational::one());
    }

    #[test]
    fn corpus_measures_match_the_figures() {
        assert_eq!(measure(&corpus::a1(), &lim()).unwrap(), Rational::one());
        assert_eq!(measure(&corpus::a2(), &lim()).unwrap(), Rational::one());
        assert_eq!(
            measure_deterministic(&corpus::a1_pruned()).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            measure_deterministic(&corpus::a2_pruned()).unwrap(),
            Rational::zero()
        );
        assert_eq!(measure(&corpus::w(), &lim()).unwrap(), Rational::one());
    }

    #[test]
    fn measure_plus_complement_is_one_on_deterministic_corpus() {
        for (_, a) in corpus::corpus() {
            if !is_deterministic(&a) {
                continue;
            }
            let c = complement(&a, &lim()).unwrap();
            let sum = measure_deterministic(&a).unwrap() + measure_deterministic(&c).unwrap();
            assert_eq!(sum, Rational::one(), "{}", a.name());
        }
    }

    #[test]
    fn game_of_z_wins_via_q_rej() {
        let z = corpus::z();
        let game = build_game(&z, &lim()).unwrap();
        assert!(game.q_rej[0]);
        let (win, _) = solve_almost_sure_buchi(&game);
        assert!(win[0]);
    }

    #[test]
    fn game_route_extracts_measure_one_pruning_for_w() {
        let w = corpus::w();
        let game = build_game(&w, &lim()).unwrap();
        assert!(game.q_rej.iter().all(|&r| !r));
        let (win, pruning) = solve_almost_sure_buchi(&game);
        assert!(win.iter().all(|&x| x));
        assert_eq!(measure_deterministic(&pruning.apply(&w)).unwrap(), Rational::one());
        assert_eq!(measure_gap(&w, &pruning, &lim()).unwrap(), Rational::zero());
    }

    #[test]
    fn a1_and_a2_are_not_almost_dbp() {
        let out1 = almost_dbp(&corpus::a1(), &lim()).unwrap();
        assert!(!out1.holds);
        assert_eq!(out1.gap, Rational::one());
        let out2 = almost_dbp(&corpus::a2(), &lim()).unwrap();
        assert!(!out2.holds);
        assert_eq!(out2.gap, Rational::one());
    }

    #[test]
    fn w_is_almost_dbp_via_the_game() {
        let out = almost_dbp(&corpus::w(), &lim()).unwrap();
        assert!(out.holds);
        assert_eq!(out.route, "stochastic-buchi-game");
        assert!(out.gap.is_zero());
    }

    #[test]
    fn cosafe_closure_of_a2_is_a2() {
        let a2 = corpus::a2();
        let c = cosafe_closure(&a2, &lim()).unwrap();
        // All states universal: α unchanged.
        for q in 0..a2.num_states() {
            assert_eq!(a2.is_accepting(q), c.is_accepting(q));
        }
    }

    #[test]
    fn no_good_prefix_for_finitely_many_bs() {
        // DCW for "finitely many b's": α = {seen-b-state}.
        let al = crate::Alphabet::ab();
        let d = Automaton::new(
            "finb",
            al,
            Kind::CoBuchi,
            2,
            0,
            [1],
            [(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)],
        )
        .unwrap();
        for x in [vec![], vec![0], vec![0, 1], vec![1, 1, 0]] {
            assert!(!good_prefix(&d, &x, &lim()).unwrap());
        }
        // And the closure of its language is empty.
        let cl = cosafe_closure(&d, &lim()).unwrap();
        assert!(crate::langops::is_empty(&cl));
    }
}
