//! Hamiltonian-cycle → co-Büchi gadget (the simplified variant).
//!
//! For a connected graph on vertices `1..n`, the automaton runs over the
//! alphabet `{1..n}`: staying at vertex `i` on letter `i` parks in a
//! non-α loop copy, while any other letter moves to an arbitrary
//! neighbour's α transit copy. A run is accepting iff it eventually gets
//! stuck at a self-loop, so the language is `[n]*·⋃ᵢ iᵂ`. The automaton
//! is always HD (follow any closed walk through all vertices). The full
//! reduction needs an extra synchronization letter to tie DBPness to
//! Hamiltonicity; with this simplified variant per-letter shortest-path
//! trees already yield a deterministic pruning, so DBP answers must be
//! compared against brute-force Hamiltonicity with that caveat in mind.

use crate::automata::{Alphabet, Automaton, Kind, StateId};
use crate::error::{Error, Result};

/// Undirected graph on vertices `1..=n`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl UGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<UGraph> {
        if n < 2 {
            return Err(Error::InvalidInput("graph needs at least two vertices".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v || u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidInput(format!("bad edge {u}-{v}")));
            }
            let (u, v) = (u - 1, v - 1);
            if !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(UGraph { n, adj })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// 0-based neighbour list.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Brute-force Hamiltonian-cycle test; cycles need three or more
    /// vertices, so two-vertex graphs are never Hamiltonian.
    pub fn is_hamiltonian(&self) -> bool {
        if self.n < 3 {
            return false;
        }
        let mut order: Vec<usize> = (1..self.n).collect();
        permute(&mut order, 0, &mut |perm| {
            let mut prev = 0usize;
            for &v in perm.iter() {
                if !self.adj[prev].contains(&v) {
                    return false;
                }
                prev = v;
            }
            self.adj[prev].contains(&0)
        })
    }
}

fn permute(items: &mut Vec<usize>, k: usize, check: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == items.len() {
        return check(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permute(items, k + 1, check) {
            items.swap(k, i);
            return true;
        }
        items.swap(k, i);
    }
    false
}

/// Parses the graph format: a line `n <count>` followed by `edge u v`
/// lines with 1-based vertices.
pub fn parse_graph(text: &str) -> Result<UGraph> {
    let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.into() };
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let t: Vec<&str> = line.split_whitespace().collect();
        match t[0] {
            "n" => {
                n = Some(t.get(1).and_then(|x| x.parse().ok()).ok_or_else(|| {
                    err(lineno, "expected: n <count>")
                })?);
            }
            "edge" => {
                if t.len() != 3 {
                    return Err(err(lineno, "expected: edge <u> <v>"));
                }
                let u: usize = t[1].parse().map_err(|_| err(lineno, "bad vertex"))?;
                let v: usize = t[2].parse().map_err(|_| err(lineno, "bad vertex"))?;
                edges.push((u, v));
            }
            other => return Err(err(lineno, &format!("unknown directive '{other}'"))),
        }
    }
    UGraph::new(n.ok_or_else(|| err(0, "missing n line"))?, edges)
        .map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
}

/// The co-Büchi gadget automaton of the graph. State `2i` is the α
/// transit copy of vertex `i+1`, state `2i+1` its parked loop copy.
pub fn hamcycle_to_ncw(g: &UGraph) -> Result<Automaton> {
    if !g.is_connected() {
        return Err(Error::InvalidInput("graph must be connected".into()));
    }
    let n = g.num_vertices();
    let alphabet = Alphabet::new((1..=n).map(|i| i.to_string()))?;
    let transit = |v: usize| 2 * v;
    let parked = |v: usize| 2 * v + 1;
    let mut trans: Vec<(StateId, usize, StateId)> = Vec::new();
    for v in 0..n {
        for state in [transit(v), parked(v)] {
            trans.push((state, v, parked(v)));
            for l in 0..n {
                if l == v {
                    continue;
                }
                for &w in g.neighbours(v) {
                    trans.push((state, l, transit(w)));
                }
            }
        }
    }
    let mut a = Automaton::new(
        format!("hamcycle_n{n}"),
        alphabet,
        Kind::CoBuchi,
        2 * n,
        transit(0),
        (0..n).map(transit),
        trans,
    )?;
    for v in 0..n {
        a.set_state_name(transit(v), format!("t{}", v + 1));
        a.set_state_name(parked(v), format!("l{}", v + 1));
    }
    Ok(a)
}

/// The canonical DCW for `[n]*·⋃ᵢ iᵂ`: remember the last letter, pass
/// through an α "switch" state whenever it changes. A word is accepted
/// iff it switches finitely often, i.e. is eventually constant.
pub fn eventually_constant_dcw(n: usize) -> Result<Automaton> {
    if n < 2 {
        return Err(Error::InvalidInput("needs at least two letters".into()));
    }
    let alphabet = Alphabet::new((1..=n).map(|i| i.to_string()))?;
    // 0 = start; 1 + 2i = stable on letter i; 2 + 2i = fresh switch to i.
    let stable = |i: usize| 1 + 2 * i;
    let fresh = |i: usize| 2 + 2 * i;
    let mut trans = Vec::new();
    for i in 0..n {
        trans.push((0usize, i, stable(i)));
        for j in 0..n {
            let dst = if i == j { stable(i) } else { fresh(j) };
            trans.push((stable(i), j, dst));
            trans.push((fresh(i), j, dst));
        }
    }
    let mut a = Automaton::new(
        format!("evconst_n{n}"),
        alphabet,
        Kind::CoBuchi,
        1 + 2 * n,
        0,
        (0..n).map(fresh),
        trans,
    )?;
    a.set_state_name(0, "start");
    for i in 0..n {
        a.set_state_name(stable(i), format!("s{}", i + 1));
        a.set_state_name(fresh(i), format!("f{}", i + 1));
    }
    Ok(a)
}
