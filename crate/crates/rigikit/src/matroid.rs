//! Matroid union (partition) by shortest augmenting paths in the exchange graph.

use std::collections::VecDeque;

/// Independence oracle on a ground set `0..ground_size()`.
pub trait MatroidOracle: Sync {
    fn ground_size(&self) -> usize;

    fn is_independent(&self, set: &[usize]) -> bool;

    /// Rank of the whole ground set when cheaply known.
    fn full_rank(&self) -> Option<usize> {
        None
    }

    /// The circuit of `set + e` for independent `set`, or `None` if `set + e` is independent.
    fn circuit(&self, set: &[usize], e: usize) -> Option<Vec<usize>> {
        let mut cur: Vec<usize> = set.iter().copied().chain(std::iter::once(e)).collect();
        if self.is_independent(&cur) {
            return None;
        }
        // Shrink to a minimal dependent set; it contains e because `set` is independent.
        let mut i = 0;
        while i < cur.len() {
            if cur[i] == e {
                i += 1;
                continue;
            }
            let removed = cur.remove(i);
            if self.is_independent(&cur) {
                cur.insert(i, removed);
                i += 1;
            }
        }
        Some(cur)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Cycle matroid of a multigraph given by its edge list.
#[derive(Clone, Debug)]
pub struct GraphicMatroid {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphicMatroid {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        GraphicMatroid { n, edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

impl MatroidOracle for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    fn full_rank(&self) -> Option<usize> {
        let mut uf = UnionFind::new(self.n);
        Some(self.edges.iter().filter(|&&(u, v)| uf.union(u, v)).count())
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.n);
        set.iter().all(|&e| {
            let (u, v) = self.edges[e];
            uf.union(u, v)
        })
    }

    fn circuit(&self, set: &[usize], e: usize) -> Option<Vec<usize>> {
        let (s, t) = self.edges[e];
        if s == t {
            return Some(vec![e]);
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for &f in set {
            let (u, v) = self.edges[f];
            adj[u].push((v, f));
            adj[v].push((u, f));
        }
        let mut via = vec![usize::MAX; self.n];
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &(y, f) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = f;
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            return None;
        }
        let mut out = vec![e];
        let mut cur = t;
        while cur != s {
            let f = via[cur];
            out.push(f);
            let (u, v) = self.edges[f];
            cur = if u == cur { v } else { u };
        }
        Some(out)
    }
}

/// Bicircular matroid: independent sets are edge sets whose components carry at most one cycle each.
#[derive(Clone, Debug)]
pub struct BicircularMatroid {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl BicircularMatroid {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        BicircularMatroid { n, edges }
    }
}

impl MatroidOracle for BicircularMatroid {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.n);
        let mut cyclic = vec![false; self.n];
        for &e in set {
            let (u, v) = self.edges[e];
            let (ru, rv) = (uf.find(u), uf.find(v));
            if ru == rv {
                if cyclic[ru] {
                    return false;
                }
                cyclic[ru] = true;
            } else {
                if cyclic[ru] && cyclic[rv] {
                    return false;
                }
                let c = cyclic[ru] || cyclic[rv];
                uf.parent[ru] = rv;
                cyclic[rv] = c;
            }
        }
        true
    }
}

/// Outcome of a matroid-union computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionResult {
    /// Independent set chosen in each matroid.
    pub parts: Vec<Vec<usize>>,
    /// Elements reachable in the final exchange graph from the unassigned elements.
    /// Every part spans this set in its matroid, which certifies maximality.
    pub reachable: Vec<usize>,
}

impl UnionResult {
    pub fn rank(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }
}

struct Engine<'a> {
    oracles: Vec<&'a dyn MatroidOracle>,
    owner: Vec<Option<usize>>,
    parts: Vec<Vec<usize>>,
}

impl<'a> Engine<'a> {
    fn new(oracles: Vec<&'a dyn MatroidOracle>, ground: usize) -> Self {
        let k = oracles.len();
        Engine { oracles, owner: vec![None; ground], parts: vec![Vec::new(); k] }
    }

    fn insert(&mut self, e: usize, i: usize) {
        self.owner[e] = Some(i);
        self.parts[i].push(e);
    }

    fn remove(&mut self, e: usize) {
        if let Some(i) = self.owner[e].take() {
            let pos = self.parts[i].iter().position(|&f| f == e).expect("member");
            self.parts[i].swap_remove(pos);
        }
    }

    /// Breadth-first search from `sources`. Returns a path ending in a free slot, or the visited set.
    fn search(&self, sources: &[usize]) -> std::result::Result<Vec<(usize, usize)>, Vec<bool>> {
        let m = self.owner.len();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; m];
        let mut seen = vec![false; m];
        let mut queue = VecDeque::new();
        for &s in sources {
            seen[s] = true;
            queue.push_back(s);
        }
        while let Some(z) = queue.pop_front() {
            for (i, oracle) in self.oracles.iter().enumerate() {
                if self.owner[z] == Some(i) {
                    continue;
                }
                match oracle.circuit(&self.parts[i], z) {
                    None => {
                        // Walk back: each step (z, i) means z enters part i.
                        let mut path = vec![(z, i)];
                        let mut cur = z;
                        while let Some((prev, j)) = parent[cur] {
                            path.push((prev, j));
                            cur = prev;
                        }
                        path.reverse();
                        return Ok(path);
                    }
                    Some(circ) => {
                        for y in circ {
                            if y != z && !seen[y] {
                                seen[y] = true;
                                parent[y] = Some((z, i));
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        Err(seen)
    }

    fn augment(&mut self, path: &[(usize, usize)]) {
        // (z, i): z enters part i. Every element after the first leaves its current part.
        for &(z, _) in &path[1..] {
            self.remove(z);
        }
        for &(z, i) in path {
            self.insert(z, i);
        }
    }
}

/// Maximum-size union of independent sets, one per oracle, over a common ground set.
/// `hint` is an optional starting assignment `parts` that must be independent.
pub fn matroid_union(oracles: &[&dyn MatroidOracle], hint: Option<&[Vec<usize>]>) -> UnionResult {
    let ground = oracles.first().map_or(0, |o| o.ground_size());
    let mut engine = Engine::new(oracles.to_vec(), ground);
    if let Some(parts) = hint {
        for (i, p) in parts.iter().enumerate() {
            for &e in p {
                engine.insert(e, i);
            }
        }
    }
    // Greedy pass, then augmenting paths for what is left.
    for e in 0..ground {
        if engine.owner[e].is_some() {
            continue;
        }
        for i in 0..oracles.len() {
            if oracles[i].circuit(&engine.parts[i], e).is_none() {
                engine.insert(e, i);
                break;
            }
        }
    }
    let ranks: Option<Vec<usize>> = oracles.iter().map(|o| o.full_rank()).collect();
    let saturated = |engine: &Engine| ranks.as_ref().is_some_and(|r| engine.parts.iter().zip(r).all(|(p, &r)| p.len() == r));
    // Elements seen by a failed search stay unaugmentable until the assignment changes.
    let mut dead = vec![false; ground];
    for e in 0..ground {
        if saturated(&engine) {
            break;
        }
        if engine.owner[e].is_some() || dead[e] {
            continue;
        }
        match engine.search(&[e]) {
            Ok(path) => {
                engine.augment(&path);
                dead.iter_mut().for_each(|d| *d = false);
            }
            Err(seen) => {
                for (d, s) in dead.iter_mut().zip(seen) {
                    *d |= s;
                }
            }
        }
    }
    let free: Vec<usize> = (0..ground).filter(|&e| engine.owner[e].is_none()).collect();
    let reachable = match engine.search(&free) {
        Err(seen) => (0..ground).filter(|&e| seen[e]).collect(),
        Ok(_) => unreachable!("a maximal union admits no augmenting path"),
    };
    for p in &mut engine.parts {
        p.sort_unstable();
    }
    UnionResult { parts: engine.parts, reachable }
}

/// Rank of the union of two matroids on a common ground set.
pub fn matroid_union_rank(a: &dyn MatroidOracle, b: &dyn MatroidOracle) -> usize {
    matroid_union(&[a, b], None).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn graphic(g: &SimpleGraph) -> GraphicMatroid {
        GraphicMatroid::new(g.order(), g.edges())
    }

    #[test]
    fn circuits() {
        let m = graphic(&SimpleGraph::complete(4));
        // edges: 01 02 03 12 13 23
        assert_eq!(m.circuit(&[0, 1], 3).map(|mut c| {
            c.sort();
            c
        }), Some(vec![0, 1, 3]));
        assert_eq!(m.circuit(&[0], 5), None);
        let b = BicircularMatroid::new(4, SimpleGraph::complete(4).edges());
        assert!(b.is_independent(&[0, 1, 3, 5]));
        assert!(!b.is_independent(&[0, 1, 3, 2, 4]));
        let mut c = b.circuit(&[0, 1, 3, 2], 4).unwrap();
        c.sort();
        assert!(!b.is_independent(&c));
        for i in 0..c.len() {
            let mut d = c.clone();
            d.remove(i);
            assert!(b.is_independent(&d));
        }
    }

    #[test]
    fn union_ranks() {
        let k4 = SimpleGraph::complete(4);
        assert_eq!(matroid_union_rank(&graphic(&k4), &graphic(&k4)), 6);
        let c5 = SimpleGraph::cycle(5);
        let bc = BicircularMatroid::new(5, c5.edges());
        assert_eq!(matroid_union_rank(&graphic(&c5), &bc), 5);
        let p5 = SimpleGraph::path(5);
        assert_eq!(matroid_union_rank(&graphic(&p5), &BicircularMatroid::new(5, p5.edges())), 4);
        let k6 = SimpleGraph::complete(6);
        let g = graphic(&k6);
        let res = matroid_union(&[&g, &g, &g], None);
        assert_eq!(res.rank(), 15);
        for p in &res.parts {
            assert!(g.is_independent(p));
        }
    }
}
