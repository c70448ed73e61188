//! SAT → Büchi-automaton gadget.
//!
//! For a CNF φ over variables `x1..xn` and clauses `c1..cm`, the
//! generated automaton works over the alphabet `X ∪ C` and recognizes
//! `((X·C)* · {x1·cj·x2·cj···xn·cj : j})^ω`. A deterministic pattern
//! tracker detects the repeated-clause suffixes and feeds the single
//! nondeterministic state `p`, which on `xk` guesses a polarity: the
//! guess states reach the sole accepting state `q0` exactly on clauses
//! satisfied by the guessed assignment. Prunings of `p` are in bijection
//! with assignments, and a pruning recognizes the full language iff its
//! assignment satisfies φ. The pattern-violating letters go to a
//! rejecting sink, which keeps the automaton total without touching the
//! language or the bijection.

use crate::automata::{Alphabet, Automaton, Kind, LassoWord, StateId};
use crate::error::{Error, Result};
use crate::hierarchy::Pruning;
use crate::LetterId;
use std::collections::HashMap;

/// CNF with 1-based signed literals. Every clause must depend on at
/// least two distinct variables and may not be a tautology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<CnfFormula> {
        if clauses.is_empty() {
            return Err(Error::InvalidInput("formula needs at least one clause".into()));
        }
        let mut cleaned = Vec::with_capacity(clauses.len());
        for (j, clause) in clauses.into_iter().enumerate() {
            let mut lits: Vec<i32> = clause;
            lits.sort_unstable();
            lits.dedup();
            if lits.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > num_vars) {
                return Err(Error::InvalidInput(format!("clause {} has a bad literal", j + 1)));
            }
            let mut vars: Vec<u32> = lits.iter().map(|l| l.unsigned_abs()).collect();
            vars.sort_unstable();
            let distinct = {
                let mut v = vars.clone();
                v.dedup();
                v.len()
            };
            if distinct < 2 {
                return Err(Error::InvalidInput(format!(
                    "clause {} must depend on at least two distinct variables",
                    j + 1
                )));
            }
            if lits.iter().any(|&l| lits.contains(&-l)) {
                return Err(Error::InvalidInput(format!("clause {} is a tautology", j + 1)));
            }
            cleaned.push(lits);
        }
        Ok(CnfFormula { num_vars, clauses: cleaned })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Does `cj` contain variable `k` (1-based) with polarity `positive`?
    pub fn clause_has(&self, j: usize, k: usize, positive: bool) -> bool {
        let lit = if positive { k as i32 } else { -(k as i32) };
        self.clauses[j].contains(&lit)
    }

    pub fn satisfies(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = l.unsigned_abs() as usize - 1;
                (l > 0) == assignment[v]
            })
        })
    }

    /// Brute-force satisfiability, usable as an oracle at gadget scale.
    pub fn brute_force_sat(&self) -> Option<Vec<bool>> {
        for bits in 0u64..(1u64 << self.num_vars) {
            let assignment: Vec<bool> =
                (0..self.num_vars).map(|k| bits >> k & 1 == 1).collect();
            if self.satisfies(&assignment) {
                return Some(assignment);
            }
        }
        None
    }

    /// Number of satisfying assignments, by enumeration.
    pub fn count_satisfying(&self) -> u64 {
        (0u64..(1u64 << self.num_vars))
            .filter(|bits| {
                let assignment: Vec<bool> =
                    (0..self.num_vars).map(|k| bits >> k & 1 == 1).collect();
                self.satisfies(&assignment)
            })
            .count() as u64
    }
}

/// Parses DIMACS CNF.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.into() };
    let mut num_vars: Option<usize> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let t: Vec<&str> = rest.split_whitespace().collect();
            if t.len() != 3 || t[0] != "cnf" {
                return Err(err(lineno, "expected: p cnf <vars> <clauses>"));
            }
            num_vars = Some(t[1].parse().map_err(|_| err(lineno, "bad variable count"))?);
            continue;
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| err(lineno, "bad literal"))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let num_vars = num_vars.ok_or_else(|| err(0, "missing p cnf header"))?;
    CnfFormula::new(num_vars, clauses)
}

/// Letter ids: `x1..xn` then `c1..cm`.
fn gadget_alphabet(n: usize, m: usize) -> Alphabet {
    let letters: Vec<String> = (1..=n)
        .map(|k| format!("x{k}"))
        .chain((1..=m).map(|j| format!("c{j}")))
        .collect();
    Alphabet::new(letters).expect("gadget letters are distinct")
}

/// The HD Büchi automaton of the reduction; DBP iff φ is satisfiable.
pub fn sat_to_nbw(phi: &CnfFormula) -> Result<Automaton> {
    let n = phi.num_vars();
    let m = phi.num_clauses();
    let alphabet = gadget_alphabet(n, m);
    let x = |k: usize| k - 1; // letter id of xk, 1-based k
    let c = |j: usize| n + j; // letter id of c_{j+1}, 0-based j

    // State layout.
    let p = 0usize;
    let q0 = 1usize;
    let xwait = 2usize;
    let cwait = 3usize;
    let w1 = 4usize;
    let path = |j: usize, t: usize| 5 + j * (2 * (n - 1)) + t; // j, t 0-based
    let gadget = |k: usize, i: usize| 5 + m * (2 * (n - 1)) + 2 * (k - 1) + i;
    let sink = 5 + m * (2 * (n - 1)) + 2 * n;
    let total = sink + 1;

    let mut trans: Vec<(StateId, LetterId, StateId)> = Vec::new();
    let xs: Vec<LetterId> = (1..=n).map(x).collect();
    let cs: Vec<LetterId> = (0..m).map(c).collect();

    // p: guess a polarity for the variable just read.
    for k in 1..=n {
        trans.push((p, x(k), gadget(k, 0)));
        trans.push((p, x(k), gadget(k, 1)));
    }
    for &l in &cs {
        trans.push((p, l, sink));
    }
    // Guess states: a clause satisfied by the guess reaches q0.
    for k in 1..=n {
        for i in 0..2 {
            let state = gadget(k, i);
            for j in 0..m {
                let dst = if phi.clause_has(j, k, i == 1) { q0 } else { p };
                trans.push((state, c(j), dst));
            }
            for &l in &xs {
                trans.push((state, l, sink));
            }
        }
    }
    // The X-expecting loop states.
    for &state in &[q0, xwait] {
        trans.push((state, x(1), w1));
        for k in 2..=n {
            trans.push((state, x(k), cwait));
        }
        for &l in &cs {
            trans.push((state, l, sink));
        }
    }
    // cwait: any clause letter returns to the X-expecting loop state.
    for &l in &cs {
        trans.push((cwait, l, xwait));
    }
    for &l in &xs {
        trans.push((cwait, l, sink));
    }
    // w1: the clause read after x1 selects a detector chain.
    for j in 0..m {
        trans.push((w1, c(j), path(j, 0)));
    }
    for &l in &xs {
        trans.push((w1, l, sink));
    }
    // Detector chains: hope for x2·cj···xn·cj; a fresh x1 restarts the
    // detection, any other deviation falls back to the loop.
    for j in 0..m {
        for t in 0..(n - 1) {
            let expect_x = path(j, 2 * t);
            let after_x = path(j, 2 * t + 1);
            let wanted = t + 2; // hoping for x_{t+2}
            for k in 1..=n {
                let dst = if k == wanted {
                    after_x
                } else if k == 1 {
                    w1
                } else {
                    cwait
                };
                trans.push((expect_x, x(k), dst));
            }
            for &l in &cs {
                trans.push((expect_x, l, sink));
            }
            for jj in 0..m {
                let dst = if jj == j {
                    if wanted == n {
                        p
                    } else {
                        path(j, 2 * t + 2)
                    }
                } else {
                    xwait
                };
                trans.push((after_x, c(jj), dst));
            }
            for &l in &xs {
                trans.push((after_x, l, sink));
            }
        }
    }
    for l in 0..alphabet.len() {
        trans.push((sink, l, sink));
    }

    let mut a = Automaton::new(
        format!("aphi_n{n}m{m}"),
        alphabet,
        Kind::Buchi,
        total,
        p,
        [q0],
        trans,
    )?;
    a.set_state_name(p, "p");
    a.set_state_name(q0, "q0");
    a.set_state_name(xwait, "xwait");
    a.set_state_name(cwait, "cwait");
    a.set_state_name(w1, "w1");
    for j in 0..m {
        for t in 0..2 * (n - 1) {
            a.set_state_name(path(j, t), format!("d{}_{}", j + 1, t));
        }
    }
    for k in 1..=n {
        for i in 0..2 {
            a.set_state_name(gadget(k, i), format!("q{k}_{i}"));
        }
    }
    a.set_state_name(sink, "sink");
    Ok(a)
}

fn find_state(a: &Automaton, name: &str) -> Result<StateId> {
    (0..a.num_states())
        .find(|&q| a.state_name(q) == Some(name))
        .ok_or_else(|| Error::InvalidInput(format!("automaton lacks a state named '{name}'")))
}

/// The pruning of a `sat_to_nbw` automaton that fixes the polarity
/// guess at `p` per the assignment; every other state is already
/// deterministic.
pub fn assignment_pruning(aphi: &Automaton, assignment: &[bool]) -> Result<Pruning> {
    let n = (0..aphi.alphabet().len())
        .filter(|&l| aphi.alphabet().letter(l).starts_with('x'))
        .count();
    if assignment.len() != n {
        return Err(Error::InvalidInput(format!(
            "assignment has {} bits but the automaton has {n} variables",
            assignment.len()
        )));
    }
    let p = find_state(aphi, "p")?;
    let mut pruning = Pruning::canonical(aphi);
    for (k, &bit) in assignment.iter().enumerate() {
        let letter = aphi
            .alphabet()
            .index_of(&format!("x{}", k + 1))
            .ok_or(Error::AlphabetMismatch)?;
        let target = find_state(aphi, &format!("q{}_{}", k + 1, bit as usize))?;
        pruning.set_choice(p, letter, target);
    }
    Pruning::new(aphi, (0..aphi.num_states())
        .map(|q| (0..aphi.alphabet().len()).map(|l| pruning.choice(q, l)).collect())
        .collect())
}

/// Replays the clause-chasing strategy on sampled words of the gadget
/// language and checks that each run visits `q0` within its cycle. This
/// is an independent witness next to the generic HD game check.
pub fn hd_strategy_audit(aphi: &Automaton) -> Result<bool> {
    let alphabet = aphi.alphabet();
    let n = (0..alphabet.len()).filter(|&l| alphabet.letter(l).starts_with('x')).count();
    let m = alphabet.len() - n;
    let p = find_state(aphi, "p")?;
    let q0 = find_state(aphi, "q0")?;
    let mut guess = HashMap::new();
    for k in 1..=n {
        for i in 0..2usize {
            guess.insert((k, i), find_state(aphi, &format!("q{k}_{i}"))?);
        }
    }
    // Recover clause membership from the gadget transitions.
    let in_clause = |j: usize, k: usize, i: usize| -> bool {
        let state = guess[&(k, i)];
        aphi.successors(state, n + j)[0] == q0
    };

    let block = |j: usize| -> Vec<LetterId> {
        (1..=n).flat_map(|k| [k - 1, n + j]).collect()
    };
    let mut samples: Vec<LassoWord> = Vec::new();
    for j in 0..m {
        samples.push(LassoWord::new(Vec::new(), block(j))?);
        samples.push(LassoWord::new(vec![n - 1, n + j], block(j))?);
    }
    for j1 in 0..m {
        for j2 in 0..m {
            if j1 != j2 {
                let mut l = block(j1);
                l.extend(block(j2));
                samples.push(LassoWord::new(Vec::new(), l)?);
            }
        }
    }

    for w in &samples {
        if !strategy_run_hits_q0(aphi, w, p, q0, n, &guess, &in_clause)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Simulates the strategy: at `p`, after `cj · xk`, move to the polarity
/// satisfying `cj` when the variable participates (tautologies are ruled
/// out, so the polarity is unique), defaulting to polarity 0 for `x1`
/// and non-participating variables.
fn strategy_run_hits_q0(
    aphi: &Automaton,
    w: &LassoWord,
    p: StateId,
    q0: StateId,
    n: usize,
    guess: &HashMap<(usize, usize), StateId>,
    in_clause: &dyn Fn(usize, usize, usize) -> bool,
) -> Result<bool> {
    let su = w.stem().len();
    let lv = w.looped().len();
    let mut q = p;
    let mut seen: HashMap<(usize, StateId), usize> = HashMap::new();
    let mut trace: Vec<StateId> = Vec::new();
    let mut t = 0usize;
    loop {
        if t >= su {
            let phase = (t - su) % lv;
            if let Some(&k0) = seen.get(&(phase, q)) {
                return Ok(trace[k0..].contains(&q0));
            }
            seen.insert((phase, q), trace.len());
            trace.push(q);
        }
        let l = w.letter_at(t);
        q = if q == p {
            // p only ever reads variable letters on pattern-correct words.
            let k = l + 1;
            if k > n {
                aphi.successors(q, l)[0] // pattern violation: the sink
            } else {
                let prev_clause =
                    if t > 0 { w.letter_at(t - 1).checked_sub(n) } else { None };
                let i = match prev_clause {
                    Some(j) if k > 1 && (in_clause(j, k, 0) || in_clause(j, k, 1)) => {
                        usize::from(in_clause(j, k, 1))
                    }
                    _ => 0,
                };
                guess[&(k, i)]
            }
        } else {
            aphi.successors(q, l)[0]
        };
        t += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::{check_dbp, check_hd};
    use crate::langops::{contains, equivalent};
    use crate::limits::Limits;
    use crate::automata::lasso_membership;

    fn lim() -> Limits {
        Limits::default()
    }

    fn phi_sat() -> CnfFormula {
        // (x1 ∨ x2) ∧ (¬x1 ∨ ¬x2)
        CnfFormula::new(2, vec![vec![1, 2], vec![-1, -2]]).unwrap()
    }

    fn phi_unsat() -> CnfFormula {
        CnfFormula::new(2, vec![vec![1, 2], vec![-1, 2], vec![1, -2], vec![-1, -2]])
            .unwrap()
    }

    #[test]
    fn clause_constraints_enforced() {
        assert!(CnfFormula::new(2, vec![vec![1]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![1, -1]]).is_err());
        assert!(CnfFormula::new(1, vec![vec![1, 1]]).is_err());
        assert!(CnfFormula::new(2, vec![]).is_err());
    }

    #[test]
    fn dimacs_round_trip() {
        let phi = parse_dimacs("c test\np cnf 2 2\n1 2 0\n-1 -2 0\n").unwrap();
        assert_eq!(phi, phi_sat());
    }

    #[test]
    fn dbp_iff_sat() {
        let sat = sat_to_nbw(&phi_sat()).unwrap();
        let out = check_dbp(&sat, &lim()).unwrap();
        assert!(out.holds);
        let unsat = sat_to_nbw(&phi_unsat()).unwrap();
        assert!(!check_dbp(&unsat, &lim()).unwrap().holds);
    }

    #[test]
    fn gadget_is_hd() {
        let a = sat_to_nbw(&phi_sat()).unwrap();
        assert!(check_hd(&a, &lim()).unwrap().holds);
        assert!(hd_strategy_audit(&a).unwrap());
        let b = sat_to_nbw(&phi_unsat()).unwrap();
        assert!(check_hd(&b, &lim()).unwrap().holds);
        assert!(hd_strategy_audit(&b).unwrap());
    }

    #[test]
    fn satisfying_assignment_prunes_to_equivalent() {
        let phi = phi_sat();
        let a = sat_to_nbw(&phi).unwrap();
        for bits in 0..4u8 {
            let assignment = vec![bits & 1 == 1, bits & 2 == 2];
            let pruning = assignment_pruning(&a, &assignment).unwrap();
            let pruned = pruning.apply(&a);
            let equal = contains(&a, &pruned, &lim()).unwrap();
            assert_eq!(equal, phi.satisfies(&assignment), "assignment {assignment:?}");
            if equal {
                assert!(equivalent(&a, &pruned, &lim()).unwrap());
            }
        }
    }

    #[test]
    fn missing_clause_rejects_its_block_word() {
        // x1 = false fails clause c1 = (x1 ∨ x2) only together with
        // x2 = false.
        let phi = phi_sat();
        let a = sat_to_nbw(&phi).unwrap();
        let pruning = assignment_pruning(&a, &[false, false]).unwrap();
        let pruned = pruning.apply(&a);
        // c1 is unsatisfied: the word (x1 c1 x2 c1)^ω must be lost.
        let n = 2;
        let w = LassoWord::new(vec![], vec![0, n, 1, n]).unwrap();
        assert!(lasso_membership(&a, &w).unwrap().0);
        assert!(!lasso_membership(&pruned, &w).unwrap().0);
    }

    #[test]
    fn assignment_dimension_checked() {
        let a = sat_to_nbw(&phi_sat()).unwrap();
        assert!(assignment_pruning(&a, &[true]).is_err());
    }
}
