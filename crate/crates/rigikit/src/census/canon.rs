//! Canonical labelling by equitable refinement and individualization, with automorphism pruning.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::graph6::emit_graph6;

/// Canonical graph6 word: equal for two graphs iff they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub String);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug)]
pub struct Labeling {
    pub form: CanonicalForm,
    pub canonical: SimpleGraph,
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Automorphisms as images `perm[v]`; they generate the full group.
    pub generators: Vec<Vec<usize>>,
    /// Orbit representative (smallest member) of each vertex.
    pub orbits: Vec<usize>,
}

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x0000_0100_0000_01b3).rotate_left(17) ^ 0x9e37_79b9_7f4a_7c15
}

/// Refines ordered cells to the coarsest equitable partition; returns a labelling-invariant trace hash.
fn refine(adj: &[u64], cells: &mut Vec<u64>) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325;
    'outer: loop {
        for wi in 0..cells.len() {
            let w = cells[wi];
            for ci in 0..cells.len() {
                let c = cells[ci];
                if c.count_ones() == 1 {
                    continue;
                }
                let mut groups: Vec<(u32, u64)> = Vec::new();
                let mut bits = c;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let cnt = (adj[v] & w).count_ones();
                    match groups.iter_mut().find(|(k, _)| *k == cnt) {
                        Some(g) => g.1 |= 1 << v,
                        None => groups.push((cnt, 1 << v)),
                    }
                }
                if groups.len() == 1 {
                    continue;
                }
                groups.sort_unstable_by_key(|&(k, _)| k);
                h = mix(h, (wi as u64) << 32 | ci as u64);
                for &(k, set) in &groups {
                    h = mix(h, (k as u64) << 32 | set.count_ones() as u64);
                }
                cells.splice(ci..=ci, groups.into_iter().map(|(_, s)| s));
                continue 'outer;
            }
        }
        break;
    }
    mix(h, cells.len() as u64)
}

struct Leaf {
    trace: Vec<u64>,
    rows: Vec<u64>,
    lab: Vec<usize>,
}

impl Leaf {
    fn key_cmp(&self, trace: &[u64], rows: &[u64]) -> Ordering {
        trace.cmp(&self.trace).then_with(|| rows.cmp(&self.rows))
    }
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    first_path: Vec<usize>,
    path: Vec<usize>,
    trace: Vec<u64>,
    generators: Vec<Vec<usize>>,
}

fn orbit_roots(n: usize, gens: &[&Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, g[v]));
            if a != b {
                // Keep the smaller vertex as root so roots are orbit minima.
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

impl Search<'_> {
    fn leaf(&mut self, cells: &[u64]) -> Option<usize> {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = vec![0usize; self.n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let rows: Vec<u64> = lab
            .iter()
            .map(|&v| {
                let mut bits = self.adj[v];
                let mut row = 0u64;
                while bits != 0 {
                    let w = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    row |= 1 << pos[w];
                }
                row
            })
            .collect();
        let Some(first) = &self.first else {
            self.first_path = self.path.clone();
            let leaf = Leaf { trace: self.trace.clone(), rows: rows.clone(), lab: lab.clone() };
            self.best = Some(Leaf { trace: leaf.trace.clone(), rows, lab });
            self.first = Some(leaf);
            return None;
        };
        if first.key_cmp(&self.trace, &rows) == Ordering::Equal {
            let gen = automorphism(&first.lab, &lab, self.n);
            self.generators.push(gen);
            let level = self.path.iter().zip(&self.first_path).position(|(a, b)| a != b).unwrap_or(self.path.len());
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match best.key_cmp(&self.trace, &rows) {
            Ordering::Equal => {
                let gen = automorphism(&best.lab, &lab, self.n);
                self.generators.push(gen);
            }
            Ordering::Less => self.best = Some(Leaf { trace: self.trace.clone(), rows, lab }),
            Ordering::Greater => {}
        }
        None
    }

    fn prunable(&self) -> bool {
        let (Some(first), Some(best)) = (&self.first, &self.best) else { return false };
        let l = self.trace.len();
        if first.trace.get(..l) == Some(&self.trace[..]) {
            return false;
        }
        self.trace[..].cmp(&best.trace[..l.min(best.trace.len())]) == Ordering::Greater
    }

    /// Returns the level to jump back to after an automorphism with the first leaf.
    fn dfs(&mut self, cells: Vec<u64>) -> Option<usize> {
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            return self.leaf(&cells);
        };
        let level = self.path.len();
        let mut explored: Vec<usize> = Vec::new();
        let mut bits = cells[target];
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let on_first = self.first.is_some() && self.first_path.get(..level) == Some(&self.path[..]);
            if on_first && !explored.is_empty() {
                let fixers: Vec<&Vec<usize>> = self
                    .generators
                    .iter()
                    .filter(|g| self.path.iter().all(|&p| g[p] == p))
                    .collect();
                let roots = orbit_roots(self.n, &fixers);
                if explored.iter().any(|&u| roots[u] == roots[v]) {
                    continue;
                }
            }
            let mut child = cells.clone();
            child[target] &= !(1 << v);
            child.insert(target, 1 << v);
            let h = refine(self.adj, &mut child);
            self.trace.push(h);
            self.path.push(v);
            let jump = if self.prunable() { None } else { self.dfs(child) };
            self.trace.pop();
            self.path.pop();
            explored.push(v);
            if let Some(l) = jump {
                if l < level {
                    return Some(l);
                }
            }
        }
        None
    }
}

fn automorphism(from: &[usize], to: &[usize], n: usize) -> Vec<usize> {
    let mut perm = vec![0; n];
    for (&a, &b) in from.iter().zip(to) {
        perm[a] = b;
    }
    perm
}

pub(crate) struct RawLabeling {
    pub rows: Vec<u64>,
    pub lab: Vec<usize>,
    pub generators: Vec<Vec<usize>>,
}

/// Canonical labelling of a graph given as bit rows (n ≤ 64).
pub(crate) fn label_rows(adj: &[u64]) -> RawLabeling {
    let n = adj.len();
    if n == 0 {
        return RawLabeling { rows: Vec::new(), lab: Vec::new(), generators: Vec::new() };
    }
    let mut cells = vec![if n == 64 { u64::MAX } else { (1u64 << n) - 1 }];
    let h = refine(adj, &mut cells);
    let mut search = Search {
        adj,
        n,
        first: None,
        best: None,
        first_path: Vec::new(),
        path: Vec::new(),
        trace: vec![h],
        generators: Vec::new(),
    };
    search.dfs(cells);
    let best = search.best.expect("search reaches a leaf");
    RawLabeling { rows: best.rows, lab: best.lab, generators: search.generators }
}

fn rows_of(g: &SimpleGraph) -> Result<Vec<u64>> {
    g.bitrows().ok_or_else(|| Error::Guard(format!("canonical labelling supports at most 64 vertices, got {}", g.order())))
}

pub fn canonical_labeling(g: &SimpleGraph) -> Result<Labeling> {
    let raw = label_rows(&rows_of(g)?);
    let canonical = SimpleGraph::from_bitrows(&raw.rows);
    let gens: Vec<&Vec<usize>> = raw.generators.iter().collect();
    let orbits = orbit_roots(g.order(), &gens);
    Ok(Labeling { form: CanonicalForm(emit_graph6(&canonical)), canonical, order: raw.lab, generators: raw.generators, orbits })
}

pub fn canonical_form(g: &SimpleGraph) -> Result<CanonicalForm> {
    let raw = label_rows(&rows_of(g)?);
    Ok(CanonicalForm(emit_graph6(&SimpleGraph::from_bitrows(&raw.rows))))
}

/// Orbit representative of every vertex under the automorphism group.
pub fn automorphism_orbits(g: &SimpleGraph) -> Result<Vec<usize>> {
    Ok(canonical_labeling(g)?.orbits)
}

pub fn is_vertex_transitive(g: &SimpleGraph) -> Result<bool> {
    if g.order() > 64 {
        return Err(Error::Guard(format!("vertex-transitivity test supports at most 64 vertices, got {}", g.order())));
    }
    if g.regular_degree().is_none() {
        return Ok(false);
    }
    Ok(automorphism_orbits(g)?.iter().all(|&r| r == 0))
}
