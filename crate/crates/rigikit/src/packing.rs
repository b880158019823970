//! Spanning-tree packing, strength, and body-bar / body-hinge rigidity.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::connectivity::edge_connectivity;
use crate::error::{domain, Result};
use crate::graph::{scale, Multigraph, SimpleGraph, WeightedGraph};
use crate::matroid::{matroid_union, GraphicMatroid, MatroidOracle};
use crate::Rational;

/// Vertex partition certifying that no larger packing exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deficiency {
    pub partition: Vec<Vec<usize>>,
    /// Number of edges (with multiplicity) joining different parts.
    pub crossing: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingResult {
    pub tree_count: usize,
    /// Edge copies; forests refer to positions in this list.
    pub edges: Vec<(usize, usize)>,
    pub forests: Vec<Vec<usize>>,
    pub deficiency: Option<Deficiency>,
}

fn crossing_count<G: WeightedGraph>(g: &G, partition: &[Vec<usize>]) -> u64 {
    let mut part = vec![usize::MAX; g.order()];
    for (i, p) in partition.iter().enumerate() {
        for &v in p {
            part[v] = i;
        }
    }
    let mut total = 0;
    for u in 0..g.order() {
        for (v, m) in g.weighted_neighbors(u) {
            if u < v && part[u] != part[v] {
                total += m;
            }
        }
    }
    total
}

fn is_partition(n: usize, partition: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; n];
    for p in partition {
        if p.is_empty() {
            return false;
        }
        for &v in p {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    seen.into_iter().all(|s| s)
}

impl PackingResult {
    /// Re-checks the forests and, if present, the deficiency inequality |X| < (k+1)(c−1).
    pub fn verify<G: WeightedGraph>(&self, g: &G) -> bool {
        let n = g.order();
        if self.edges != edge_copies(g) || self.forests.len() != self.tree_count {
            return false;
        }
        let graphic = GraphicMatroid::new(n, self.edges.clone());
        let mut used = vec![false; self.edges.len()];
        for f in &self.forests {
            if f.len() + 1 != n || !graphic.is_independent(f) {
                return false;
            }
            for &e in f {
                if used[e] {
                    return false;
                }
                used[e] = true;
            }
        }
        match &self.deficiency {
            None => true,
            Some(d) => {
                let parts = d.partition.len() as u64;
                is_partition(n, &d.partition)
                    && d.crossing == crossing_count(g, &d.partition)
                    && d.crossing < (self.tree_count as u64 + 1) * (parts - 1)
            }
        }
    }
}

fn edge_copies<G: WeightedGraph>(g: &G) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..g.order() {
        for (v, m) in g.weighted_neighbors(u) {
            if u < v {
                out.extend(std::iter::repeat_n((u, v), m as usize));
            }
        }
    }
    out
}

fn components_of(n: usize, edges: &[(usize, usize)], chosen: &[usize]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &e in chosen {
        let (u, v) = edges[e];
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut members = Vec::new();
        while let Some(x) = stack.pop() {
            members.push(x);
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

enum Attempt {
    Packed(Vec<Vec<usize>>),
    Blocked(Vec<Vec<usize>>),
}

/// Tries to pack `k` edge-disjoint spanning trees, optionally warm-started from forests.
fn try_pack(n: usize, edges: &[(usize, usize)], k: usize, hint: Option<&[Vec<usize>]>) -> Attempt {
    if k == 0 {
        return Attempt::Packed(Vec::new());
    }
    if k * (n - 1) > edges.len() {
        return Attempt::Blocked((0..n).map(|v| vec![v]).collect());
    }
    let graphic = GraphicMatroid::new(n, edges.to_vec());
    let oracles: Vec<&dyn MatroidOracle> = vec![&graphic; k];
    let res = matroid_union(&oracles, hint);
    if res.parts.iter().all(|p| p.len() + 1 == n) {
        Attempt::Packed(res.parts)
    } else {
        Attempt::Blocked(components_of(n, edges, &res.reachable))
    }
}

fn require_vertices<G: WeightedGraph>(g: &G) -> Result<()> {
    if g.order() < 2 {
        return domain("tree packing needs at least two vertices");
    }
    Ok(())
}

/// Maximum number of edge-disjoint spanning trees, with the blocking partition.
pub fn max_tree_packing<G: WeightedGraph>(g: &G) -> Result<PackingResult> {
    require_vertices(g)?;
    let n = g.order();
    let edges = edge_copies(g);
    if !g.is_connected() {
        let partition = g.components();
        let crossing = crossing_count(g, &partition);
        return Ok(PackingResult { tree_count: 0, edges, forests: Vec::new(), deficiency: Some(Deficiency { partition, crossing }) });
    }
    let mut forests: Vec<Vec<usize>> = Vec::new();
    loop {
        let mut hint = forests.clone();
        hint.push(Vec::new());
        match try_pack(n, &edges, forests.len() + 1, Some(&hint)) {
            Attempt::Packed(f) => forests = f,
            Attempt::Blocked(partition) => {
                let crossing = crossing_count(g, &partition);
                return Ok(PackingResult {
                    tree_count: forests.len(),
                    edges,
                    forests,
                    deficiency: Some(Deficiency { partition, crossing }),
                });
            }
        }
    }
}

/// Whether `g` has `k` edge-disjoint spanning trees.
pub fn packs_k_trees<G: WeightedGraph>(g: &G, k: usize) -> Result<bool> {
    require_vertices(g)?;
    Ok(matches!(try_pack(g.order(), &edge_copies(g), k, None), Attempt::Packed(_)))
}

/// Exact strength with a partition attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthValue {
    pub value: Rational,
    pub witness_partition: Vec<Vec<usize>>,
}

impl StrengthValue {
    /// The witness partition attains `value` and denominators stay within n − 1.
    pub fn verify<G: WeightedGraph>(&self, g: &G) -> bool {
        let parts = self.witness_partition.len();
        parts >= 2
            && is_partition(g.order(), &self.witness_partition)
            && Rational::new(BigInt::from(crossing_count(g, &self.witness_partition)), BigInt::from(parts - 1)) == self.value
            && *self.value.denom() <= BigInt::from(g.order() - 1)
    }
}

fn ratio(p: u64, q: u64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Whether tG packs s trees; on failure returns the blocking partition.
fn scaled_packs<G: WeightedGraph>(g: &G, s: u64, t: u64) -> std::result::Result<(), Vec<Vec<usize>>> {
    let tg = scale(g, t).expect("positive scale");
    match try_pack(g.order(), &edge_copies(&tg), s as usize, None) {
        Attempt::Packed(_) => Ok(()),
        Attempt::Blocked(p) => Err(p),
    }
}

/// η(G) = min |X| / (c(G − X) − 1), found by searching fractions with denominator at most n − 1.
pub fn strength<G: WeightedGraph>(g: &G) -> Result<StrengthValue> {
    require_vertices(g)?;
    let n = g.order() as u64;
    if !g.is_connected() {
        return Ok(StrengthValue { value: Rational::from_integer(0.into()), witness_partition: g.components() });
    }
    let m: u64 = edge_copies(g).len() as u64;
    // Integer part: η ≥ s iff G packs s trees.
    let (mut lo, mut hi) = (1u64, m / (n - 1) + 1);
    let mut hi_witness = match scaled_packs(g, hi, 1) {
        Err(p) => p,
        Ok(()) => unreachable!("more trees than edges allow"),
    };
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        match scaled_packs(g, mid, 1) {
            Ok(()) => lo = mid,
            Err(p) => {
                hi = mid;
                hi_witness = p;
            }
        }
    }
    // Fractions strictly between lo and lo + 1 with denominator ≤ n − 1.
    let mut cands: Vec<(u64, u64)> = Vec::new();
    for q in 2..n {
        for p in lo * q + 1..(lo + 1) * q {
            if p.gcd(&q) == 1 {
                cands.push((p, q));
            }
        }
    }
    cands.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    // Smallest failing candidate; everything before it packs.
    let (mut a, mut b) = (0usize, cands.len());
    let mut value = ratio(lo, 1);
    while a < b {
        let mid = (a + b) / 2;
        let (p, q) = cands[mid];
        match scaled_packs(g, p, q) {
            Ok(()) => a = mid + 1,
            Err(part) => {
                b = mid;
                hi_witness = part;
            }
        }
    }
    if a > 0 {
        value = ratio(cands[a - 1].0, cands[a - 1].1);
    }
    // The blocking partition at the successor fraction has ratio in [η, successor), hence exactly η.
    let witness_partition = hi_witness;
    let got = ratio(crossing_count(g, &witness_partition), witness_partition.len() as u64 - 1);
    debug_assert_eq!(got, value);
    Ok(StrengthValue { value, witness_partition })
}

/// G − e has k edge-disjoint spanning trees for every edge e. Only edges of one packing need checking;
/// each deletion is warm-started from that packing with the deleted edge dropped.
pub fn packs_k_trees_minus_any_edge<G: WeightedGraph>(g: &G, k: usize) -> Result<bool> {
    require_vertices(g)?;
    let n = g.order();
    let edges = edge_copies(g);
    let forests = match try_pack(n, &edges, k, None) {
        Attempt::Packed(f) => f,
        Attempt::Blocked(_) => return Ok(false),
    };
    let mut chosen: Vec<usize> = forests.iter().flatten().copied().collect();
    chosen.sort_unstable_by_key(|&e| edges[e]);
    chosen.dedup_by_key(|e| edges[*e]);
    for removed in chosen {
        let rest: Vec<(usize, usize)> =
            edges.iter().enumerate().filter(|&(i, _)| i != removed).map(|(_, &e)| e).collect();
        let shift = |e: usize| if e > removed { e - 1 } else { e };
        let hint: Vec<Vec<usize>> =
            forests.iter().map(|f| f.iter().filter(|&&e| e != removed).map(|&e| shift(e)).collect()).collect();
        if let Attempt::Blocked(_) = try_pack(n, &rest, k, Some(&hint)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Literal reading: every parallel copy is deleted in turn.
pub fn packs_k_trees_minus_each_copy<G: WeightedGraph>(g: &G, k: usize) -> Result<bool> {
    require_vertices(g)?;
    let mg = to_multigraph(g);
    for (u, v) in edge_copies(g) {
        if !packs_k_trees(&mg.remove_one(u, v), k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn to_multigraph<G: WeightedGraph>(g: &G) -> Multigraph {
    let triples: Vec<_> = (0..g.order())
        .flat_map(|u| g.weighted_neighbors(u).into_iter().filter(move |&(v, _)| v > u).map(move |(v, m)| (u, v, m)))
        .collect();
    Multigraph::from_multiplicities(g.order(), &triples).expect("valid multigraph")
}

fn bar_threshold<G: WeightedGraph>(g: &G, d: usize) -> Result<usize> {
    if d == 0 {
        return domain("dimension must be positive");
    }
    let big_d = d * (d + 1) / 2;
    let mult = (0..g.order()).flat_map(|u| g.weighted_neighbors(u)).map(|(_, m)| m).max().unwrap_or(0);
    if mult >= big_d as u64 {
        return domain(format!("multiplicity {mult} is not below {big_d}"));
    }
    Ok(big_d)
}

pub fn body_bar_rigid<G: WeightedGraph>(g: &G, d: usize) -> Result<bool> {
    let big_d = bar_threshold(g, d)?;
    packs_k_trees(g, big_d)
}

pub fn body_bar_globally_rigid<G: WeightedGraph>(g: &G, d: usize) -> Result<bool> {
    let big_d = bar_threshold(g, d)?;
    packs_k_trees_minus_any_edge(g, big_d)
}

fn hinge_threshold(d: usize) -> Result<usize> {
    if d < 2 {
        return domain("body-hinge rigidity needs d ≥ 2");
    }
    Ok(d * (d + 1) / 2)
}

/// (D − 1)G packs D trees, D = d(d+1)/2.
pub fn body_hinge_rigid(g: &SimpleGraph, d: usize) -> Result<bool> {
    let big_d = hinge_threshold(d)?;
    packs_k_trees(&scale(g, big_d as u64 - 1)?, big_d)
}

pub fn body_hinge_globally_rigid(g: &SimpleGraph, d: usize) -> Result<bool> {
    let big_d = hinge_threshold(d)?;
    if d == 2 {
        if g.order() < 2 {
            return Ok(false);
        }
        return Ok(edge_connectivity(g)?.0 >= 3);
    }
    packs_k_trees_minus_any_edge(&scale(g, big_d as u64 - 1)?, big_d)
}

/// Same condition with the deletion ranging over every copy of the scaled multigraph.
pub fn body_hinge_globally_rigid_each_copy(g: &SimpleGraph, d: usize) -> Result<bool> {
    let big_d = hinge_threshold(d)?;
    if d == 2 {
        return body_hinge_globally_rigid(g, d);
    }
    packs_k_trees_minus_each_copy(&scale(g, big_d as u64 - 1)?, big_d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(r))
    }

    #[test]
    fn packings() {
        let k4 = SimpleGraph::complete(4);
        let res = max_tree_packing(&k4).unwrap();
        assert_eq!(res.tree_count, 2);
        assert!(res.verify(&k4));
        let tree = SimpleGraph::path(6);
        let res = max_tree_packing(&tree).unwrap();
        assert_eq!(res.tree_count, 1);
        assert!(res.verify(&tree));
        let disc = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let res = max_tree_packing(&disc).unwrap();
        assert_eq!(res.tree_count, 0);
        assert!(res.verify(&disc));
        let k8 = SimpleGraph::complete(8);
        let res = max_tree_packing(&k8).unwrap();
        assert_eq!(res.tree_count, 4);
        assert!(res.verify(&k8));
    }

    #[test]
    fn strengths() {
        let k4 = strength(&SimpleGraph::complete(4)).unwrap();
        assert_eq!(k4.value, q(2, 1));
        assert_eq!(k4.witness_partition.len(), 4);
        assert!(k4.verify(&SimpleGraph::complete(4)));
        assert_eq!(strength(&SimpleGraph::complete(5)).unwrap().value, q(5, 2));
        assert_eq!(strength(&SimpleGraph::path(5)).unwrap().value, q(1, 1));
        assert_eq!(strength(&SimpleGraph::cycle(6)).unwrap().value, q(6, 5));
        let s = strength(&SimpleGraph::petersen()).unwrap();
        assert_eq!(s.value, q(15, 9));
        assert!(s.verify(&SimpleGraph::petersen()));
    }

    #[test]
    fn redundancy() {
        assert!(packs_k_trees_minus_any_edge(&SimpleGraph::complete(5), 2).unwrap());
        assert!(!packs_k_trees_minus_any_edge(&SimpleGraph::complete(4), 2).unwrap());
        assert!(body_bar_rigid(&SimpleGraph::complete(7), 2).unwrap());
        assert!(!body_bar_rigid(&SimpleGraph::complete(4), 2).unwrap());
        assert!(body_bar_globally_rigid(&SimpleGraph::complete(8), 2).unwrap());
        assert!(body_bar_globally_rigid(&SimpleGraph::complete(7), 2).unwrap());
        assert!(body_hinge_rigid(&SimpleGraph::complete(4), 2).unwrap());
        assert!(!body_hinge_rigid(&SimpleGraph::path(4), 2).unwrap());
        assert!(body_hinge_globally_rigid(&SimpleGraph::complete(4), 2).unwrap());
        assert!(body_hinge_rigid(&SimpleGraph::complete(4), 1).is_err());
        let m = Multigraph::from_multiplicities(2, &[(0, 1, 3)]).unwrap();
        assert!(body_bar_rigid(&m, 2).is_err());
    }
}
