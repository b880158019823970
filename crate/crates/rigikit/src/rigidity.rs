//! Generic rigidity in the plane via the (2,3)-pebble game.

use crate::connectivity::vertex_connectivity;
use crate::error::{domain, Result};
use crate::graph::{SimpleGraph, WeightedGraph};

/// Pebble-game state: free pebbles per vertex and an orientation of the accepted edges.
#[derive(Clone, Debug)]
pub struct PebbleState {
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
    accepted: Vec<(usize, usize)>,
}

impl PebbleState {
    pub fn new(n: usize) -> Self {
        PebbleState { pebbles: vec![2; n], out: vec![Vec::new(); n], accepted: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.accepted.len()
    }

    pub fn accepted(&self) -> &[(usize, usize)] {
        &self.accepted
    }

    pub fn free_pebbles(&self) -> usize {
        self.pebbles.iter().map(|&p| p as usize).sum()
    }

    /// Moves one pebble to `root` along a reversed path, never touching `other`.
    fn gather(&mut self, root: usize, other: usize) -> bool {
        let n = self.pebbles.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        seen[other] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for i in 0..self.out[x].len() {
                let w = self.out[x][i];
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                parent[w] = x;
                if self.pebbles[w] > 0 {
                    self.pebbles[w] -= 1;
                    let mut cur = w;
                    while cur != root {
                        let p = parent[cur];
                        let pos = self.out[p].iter().position(|&y| y == cur).expect("arc on path");
                        self.out[p].swap_remove(pos);
                        self.out[cur].push(p);
                        cur = p;
                    }
                    self.pebbles[root] += 1;
                    return true;
                }
                stack.push(w);
            }
        }
        false
    }

    /// Accepts `u v` if it keeps the accepted set (2,3)-sparse.
    pub fn try_insert(&mut self, u: usize, v: usize) -> bool {
        while self.pebbles[u] < 2 {
            if !self.gather(u, v) {
                return false;
            }
        }
        while self.pebbles[v] < 2 {
            if !self.gather(v, u) {
                return false;
            }
        }
        self.pebbles[u] -= 1;
        self.out[u].push(v);
        self.accepted.push((u.min(v), u.max(v)));
        true
    }
}

/// Rank of E(G) in the generic planar rigidity matroid, with a maximal independent set.
pub fn rigidity_rank(g: &SimpleGraph) -> Result<(usize, Vec<(usize, usize)>)> {
    if g.order() < 2 {
        return domain("rigidity rank needs at least two vertices");
    }
    let mut state = PebbleState::new(g.order());
    for (u, v) in g.edges() {
        state.try_insert(u, v);
    }
    Ok((state.rank(), state.accepted))
}

pub fn is_rigid_2d(g: &SimpleGraph) -> bool {
    let n = g.order();
    if n < 2 {
        return true;
    }
    rigidity_rank(g).is_ok_and(|(r, _)| r == 2 * n - 3)
}

/// G − e rigid for every edge e. Edges outside one basis cannot matter, so only basis edges are retested.
pub fn is_redundantly_rigid_2d(g: &SimpleGraph) -> bool {
    let n = g.order();
    if n < 2 {
        return true;
    }
    let Ok((rank, basis)) = rigidity_rank(g) else { return false };
    if rank != 2 * n - 3 {
        return false;
    }
    basis.iter().all(|&(u, v)| is_rigid_2d(&g.remove_edge(u, v)))
}

pub fn is_globally_rigid_2d(g: &SimpleGraph) -> bool {
    let n = g.order();
    if n <= 3 {
        return g.is_complete();
    }
    vertex_connectivity(g).0 >= 3 && is_redundantly_rigid_2d(g)
}

fn has_clique(g: &SimpleGraph, cand: &[usize], need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if cand.len() < need {
        return false;
    }
    for (i, &v) in cand.iter().enumerate() {
        if cand.len() - i < need {
            break;
        }
        let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        if has_clique(g, &next, need - 1) {
            return true;
        }
    }
    false
}

/// True iff G has no clique on c + 1 vertices.
pub fn max_clique_at_most(g: &SimpleGraph, c: usize) -> bool {
    let all: Vec<usize> = (0..g.order()).collect();
    !has_clique(g, &all, c + 1)
}

/// Global rigidity of a connected vertex-transitive graph read off from degree, order and clique size.
pub fn vt_globally_rigid_characterization(g: &SimpleGraph) -> Result<bool> {
    let n = g.order();
    let Some(k) = g.regular_degree() else {
        return domain("graph is not regular");
    };
    if k < 2 || !g.is_connected() {
        return domain("need a connected graph of degree at least 2");
    }
    if !crate::census::is_vertex_transitive(g)? {
        return domain("graph is not vertex-transitive");
    }
    Ok(match k {
        2 => n <= 3,
        3 => n <= 4,
        4 => max_clique_at_most(g, 3) || n <= 11,
        5 => max_clique_at_most(g, 4) || n <= 28,
        _ => true,
    })
}
