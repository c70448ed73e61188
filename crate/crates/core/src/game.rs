//! Max-parity games and a Zielonka-style recursive solver with
//! positional strategy extraction.
//!
//! Player 0 (Eve) wins a play iff the maximal priority seen infinitely
//! often is even. The recursion on the second branch is rolled into a
//! loop so the stack depth is bounded by the number of distinct
//! priorities rather than the arena size.

/// Game arena. Every node must have at least one successor.
#[derive(Debug, Clone)]
pub struct ParityGame {
    /// 0 = Eve (even player), 1 = Adam (odd player).
    pub owner: Vec<u8>,
    pub priority: Vec<u8>,
    pub succ: Vec<Vec<usize>>,
}

/// Winner per node plus a positional strategy for each node whose owner
/// wins it.
#[derive(Debug, Clone)]
pub struct GameSolution {
    pub winner: Vec<u8>,
    pub strategy: Vec<Option<usize>>,
}

pub fn zielonka(g: &ParityGame) -> GameSolution {
    let n = g.succ.len();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, es) in g.succ.iter().enumerate() {
        for &w in es {
            pred[w].push(v);
        }
    }
    let mut sol = GameSolution { winner: vec![0; n], strategy: vec![None; n] };
    let mask = vec![true; n];
    solve(g, &pred, mask, &mut sol);
    sol
}

/// Attractor of `player` to `targets` inside `mask`. Returns the
/// attracted set and records the pulling edge for player-owned nodes
/// outside the target set.
fn attractor(
    g: &ParityGame,
    pred: &[Vec<usize>],
    player: u8,
    targets: &[usize],
    mask: &[bool],
    strategy: &mut [Option<usize>],
) -> Vec<bool> {
    let n = g.succ.len();
    let mut count = vec![0usize; n];
    for v in 0..n {
        if mask[v] {
            count[v] = g.succ[v].iter().filter(|&&w| mask[w]).count();
        }
    }
    let mut attracted = vec![false; n];
    let mut queue: Vec<usize> = Vec::new();
    for &t in targets {
        if mask[t] && !attracted[t] {
            attracted[t] = true;
            queue.push(t);
        }
    }
    while let Some(v) = queue.pop() {
        for &u in &pred[v] {
            if !mask[u] || attracted[u] {
                continue;
            }
            if g.owner[u] == player {
                attracted[u] = true;
                strategy[u] = Some(v);
                queue.push(u);
            } else {
                count[u] -= 1;
                if count[u] == 0 {
                    attracted[u] = true;
                    queue.push(u);
                }
            }
        }
    }
    attracted
}

fn solve(g: &ParityGame, pred: &[Vec<usize>], mut mask: Vec<bool>, sol: &mut GameSolution) {
    let n = g.succ.len();
    loop {
        let Some(d) = (0..n).filter(|&v| mask[v]).map(|v| g.priority[v]).max() else {
            return;
        };
        let p = d & 1;
        let targets: Vec<usize> =
            (0..n).filter(|&v| mask[v] && g.priority[v] == d).collect();

        let mut a_strat = vec![None; n];
        let a_set = attractor(g, pred, p, &targets, &mask, &mut a_strat);
        let sub_mask: Vec<bool> = (0..n).map(|v| mask[v] && !a_set[v]).collect();
        let mut sub = GameSolution { winner: vec![0; n], strategy: vec![None; n] };
        solve(g, pred, sub_mask.clone(), &mut sub);

        let opp = 1 - p;
        let opp_region: Vec<usize> =
            (0..n).filter(|&v| sub_mask[v] && sub.winner[v] == opp).collect();

        if opp_region.is_empty() {
            for v in 0..n {
                if !mask[v] {
                    continue;
                }
                sol.winner[v] = p;
                if g.owner[v] != p {
                    continue;
                }
                sol.strategy[v] = if sub_mask[v] {
                    sub.strategy[v]
                } else if a_strat[v].is_some() {
                    a_strat[v]
                } else {
                    // Top-priority node: any move staying inside the region.
                    g.succ[v].iter().copied().find(|&w| mask[w])
                };
            }
            return;
        }

        let mut b_strat = vec![None; n];
        let b_set = attractor(g, pred, opp, &opp_region, &mask, &mut b_strat);
        for v in 0..n {
            if !(mask[v] && b_set[v]) {
                continue;
            }
            sol.winner[v] = opp;
            if g.owner[v] == opp {
                sol.strategy[v] = if sub_mask[v] && sub.winner[v] == opp {
                    sub.strategy[v]
                } else {
                    b_strat[v]
                };
            }
        }
        for v in 0..n {
            mask[v] = mask[v] && !b_set[v];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Two nodes: Eve node with priority 2 self-loop wins for Eve; a
    // priority-1 Adam self-loop wins for Adam.
    #[test]
    fn trivial_loops() {
        let g = ParityGame {
            owner: vec![0, 1],
            priority: vec![2, 1],
            succ: vec![vec![0], vec![1]],
        };
        let s = zielonka(&g);
        assert_eq!(s.winner, vec![0, 1]);
    }

    #[test]
    fn eve_escapes_through_choice() {
        // Eve chooses between a priority-1 trap and a priority-2 loop.
        let g = ParityGame {
            owner: vec![0, 1, 0],
            priority: vec![0, 1, 2],
            succ: vec![vec![1, 2], vec![1], vec![2]],
        };
        let s = zielonka(&g);
        assert_eq!(s.winner[0], 0);
        assert_eq!(s.strategy[0], Some(2));
        assert_eq!(s.winner[1], 1);
        assert_eq!(s.winner[2], 0);
    }

    #[test]
    fn adam_forces_odd() {
        // Adam picks between two Eve loops; one is odd, he takes it.
        let g = ParityGame {
            owner: vec![1, 0, 0],
            priority: vec![0, 1, 2],
            succ: vec![vec![1, 2], vec![1], vec![2]],
        };
        let s = zielonka(&g);
        assert_eq!(s.winner[0], 1);
        assert_eq!(s.strategy[0], Some(1));
    }
}
