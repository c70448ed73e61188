//! Plain directed-graph helpers shared by the SCC, emptiness and
//! product-search code. Nodes are dense `usize` ids.

/// Iterative Tarjan over an adjacency list, restricted to `mask`.
/// Returns components; edges touching unmasked nodes are ignored.
pub(crate) fn tarjan(adj: &[Vec<usize>], mask: &[bool]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0usize;
    let mut comps = Vec::new();

    for root in 0..n {
        if !mask[root] || index[root] != usize::MAX {
            continue;
        }
        let mut frames: Vec<(usize, usize)> = Vec::new(); // (node, next edge pos)
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, 0));
        loop {
            enum Step {
                Child(usize, usize),
                Done(usize),
            }
            let step = {
                let Some(frame) = frames.last_mut() else { break };
                if frame.1 < adj[frame.0].len() {
                    let w = adj[frame.0][frame.1];
                    frame.1 += 1;
                    Step::Child(frame.0, w)
                } else {
                    Step::Done(frame.0)
                }
            };
            match step {
                Step::Child(v, w) => {
                    if !mask[w] {
                        continue;
                    }
                    if index[w] == usize::MAX {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        frames.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                }
                Step::Done(v) => {
                    frames.pop();
                    if let Some(&(p, _)) = frames.last() {
                        low[p] = low[p].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Shortest path from any node in `starts` to a node satisfying `is_goal`,
/// moving only through `mask` nodes. Returns the node sequence including
/// both endpoints.
pub(crate) fn bfs_path(
    adj: &[Vec<usize>],
    starts: &[usize],
    mask: &[bool],
    mut is_goal: impl FnMut(usize) -> bool,
) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for &s in starts {
        if mask[s] && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if is_goal(v) {
            let mut path = vec![v];
            let mut cur = v;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in &adj[v] {
            if mask[w] && !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Shortest non-empty cycle through `anchor` inside `mask`; returns the
/// cycle as `[anchor, ..., last]` where `last` has an edge back to
/// `anchor`. `None` when the anchor lies on no cycle within the mask.
pub(crate) fn bfs_cycle(adj: &[Vec<usize>], anchor: usize, mask: &[bool]) -> Option<Vec<usize>> {
    let starts: Vec<usize> = adj[anchor].iter().copied().filter(|&w| mask[w]).collect();
    if starts.contains(&anchor) {
        return Some(vec![anchor]);
    }
    let path = bfs_path(adj, &starts, mask, |v| adj[v].contains(&anchor))?;
    let mut cycle = vec![anchor];
    cycle.extend(path);
    Some(cycle)
}
