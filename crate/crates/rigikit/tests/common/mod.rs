//! Independent brute-force oracles shared by the integration and acceptance suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rigikit::graph::WeightedGraph;
use rigikit::{Rational, SimpleGraph};

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = powmod(rows[rank][c], P - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = mulmod(rows[r][c], inv);
                for j in c..cols {
                    let sub = mulmod(f, rows[rank][j]);
                    rows[r][j] = (rows[r][j] + P - sub) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the planar rigidity matrix at random coordinates mod 2^61 − 1; the max over `trials`.
pub fn rigidity_matrix_rank(g: &SimpleGraph, rng: &mut impl Rng, trials: usize) -> usize {
    let n = g.order();
    let edges = g.edges();
    if edges.is_empty() {
        return 0;
    }
    (0..trials)
        .map(|_| {
            let pts: Vec<(u64, u64)> = (0..n).map(|_| (rng.gen_range(0..P), rng.gen_range(0..P))).collect();
            let rows = edges
                .iter()
                .map(|&(u, v)| {
                    let mut row = vec![0u64; 2 * n];
                    let dx = (pts[u].0 + P - pts[v].0) % P;
                    let dy = (pts[u].1 + P - pts[v].1) % P;
                    row[2 * u] = dx;
                    row[2 * u + 1] = dy;
                    row[2 * v] = (P - dx) % P;
                    row[2 * v + 1] = (P - dy) % P;
                    row
                })
                .collect();
            rank_mod_p(rows)
        })
        .max()
        .unwrap_or(0)
}

/// Every set partition of 0..n as a block label per vertex (restricted growth strings).
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            rec(i + 1, n, max.max(b), cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = vec![0];
    rec(1, n, 0, &mut cur, &mut out);
    out
}

/// min over partitions with at least two blocks of crossing multiplicity / (blocks − 1).
pub fn brute_strength<G: WeightedGraph>(g: &G) -> Rational {
    let n = g.order();
    let mut best: Option<Rational> = None;
    for labels in set_partitions(n) {
        let blocks = labels.iter().max().map_or(0, |m| m + 1);
        if blocks < 2 {
            continue;
        }
        let crossing: u64 = (0..n)
            .flat_map(|u| g.weighted_neighbors(u).into_iter().map(move |(v, m)| (u, v, m)))
            .filter(|&(u, v, _)| u < v && labels[u] != labels[v])
            .map(|(_, _, m)| m)
            .sum();
        let r = Rational::new(BigInt::from(crossing), BigInt::from(blocks - 1));
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    }
    best.expect("n >= 2")
}

fn spanning_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut comps = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            comps -= 1;
        }
    }
    comps == 1
}

/// Every component of (V, edges) contains a cycle, i.e. the edge set spans a bicircular basis.
fn every_component_cyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut cyclic = vec![false; n];
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            cyclic[a] = true;
        } else {
            parent[a] = b;
            cyclic[b] |= cyclic[a];
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).all(|r| cyclic[r])
}

/// Exhaustive 2-colouring search: one colour class spans a connected subgraph, the other
/// has a cycle in every component. Complete graphs are rigid by convention.
pub fn brute_general_revolution(g: &SimpleGraph) -> bool {
    if g.is_complete() {
        return true;
    }
    let n = g.order();
    let edges = g.edges();
    let m = edges.len();
    if m < 2 * n - 1 {
        return false;
    }
    (0u64..1 << m).any(|mask| {
        let (red, blue): (Vec<_>, Vec<_>) = (0..m).partition(|&i| mask >> i & 1 == 1);
        let red: Vec<_> = red.into_iter().map(|i| edges[i]).collect();
        let blue: Vec<_> = blue.into_iter().map(|i| edges[i]).collect();
        spanning_connected(n, &red) && every_component_cyclic(n, &blue)
    })
}

/// Backtracking search for an isomorphism, pruned by degrees and partial adjacency.
pub fn brute_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    let n = a.order();
    if n != b.order() || a.size() != b.size() {
        return false;
    }
    let mut da = a.degree_sequence();
    let mut db = b.degree_sequence();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    fn rec(i: usize, a: &SimpleGraph, b: &SimpleGraph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = a.order();
        if i == n {
            return true;
        }
        for t in 0..n {
            if used[t] || a.degree(i) != b.degree(t) {
                continue;
            }
            if (0..i).all(|j| a.has_edge(i, j) == b.has_edge(t, map[j])) {
                map.push(t);
                used[t] = true;
                if rec(i + 1, a, b, map, used) {
                    return true;
                }
                map.pop();
                used[t] = false;
            }
        }
        false
    }
    rec(0, a, b, &mut Vec::new(), &mut vec![false; n])
}

/// All labeled k-regular graphs on n vertices by row-by-row adjacency backtracking.
pub fn labeled_regular(n: usize, k: usize) -> Vec<SimpleGraph> {
    fn rec(pos: usize, pairs: &[(usize, usize)], deg: &mut Vec<usize>, chosen: &mut Vec<(usize, usize)>, k: usize, n: usize, out: &mut Vec<SimpleGraph>) {
        if pos == pairs.len() {
            if deg.iter().all(|&d| d == k) {
                out.push(SimpleGraph::from_edges(n, chosen).expect("valid"));
            }
            return;
        }
        let (u, v) = pairs[pos];
        // Vertex u sees its last candidate pair at (u, n − 1); it must be full by then.
        if deg[u] < k && deg[v] < k {
            deg[u] += 1;
            deg[v] += 1;
            chosen.push((u, v));
            if v != n - 1 || deg[u] == k {
                rec(pos + 1, pairs, deg, chosen, k, n, out);
            }
            chosen.pop();
            deg[u] -= 1;
            deg[v] -= 1;
        }
        if v != n - 1 || deg[u] == k {
            rec(pos + 1, pairs, deg, chosen, k, n, out);
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    rec(0, &pairs, &mut vec![0; n], &mut Vec::new(), k, n, &mut out);
    out
}

/// Representatives of the isomorphism classes in `graphs`, found by pairwise brute force.
pub fn brute_classes(graphs: Vec<SimpleGraph>) -> Vec<SimpleGraph> {
    let mut reps: Vec<(Vec<usize>, SimpleGraph)> = Vec::new();
    for g in graphs {
        let key = invariant(&g);
        if !reps.iter().any(|(k, r)| *k == key && brute_isomorphic(r, &g)) {
            reps.push((key, g));
        }
    }
    reps.into_iter().map(|(_, g)| g).collect()
}

/// Sorted (degree, sorted neighbour degrees) profile; isomorphism-invariant.
fn invariant(g: &SimpleGraph) -> Vec<usize> {
    let mut prof: Vec<Vec<usize>> = (0..g.order())
        .map(|v| {
            let mut d: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            d.sort_unstable();
            d.insert(0, g.degree(v));
            d
        })
        .collect();
    prof.sort();
    let mut tri = 0;
    for (u, v) in g.edges() {
        tri += g.neighbors(u).iter().filter(|&&w| g.has_edge(v, w)).count();
    }
    let mut out: Vec<usize> = prof.concat();
    out.push(tri);
    out
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> SimpleGraph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect::<Vec<_>>();
    SimpleGraph::from_edges(n, &edges).expect("valid")
}

/// Random connected graph: a random spanning tree plus independent extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> SimpleGraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let perm = {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            p.swap(i, rng.gen_range(0..=i));
        }
        p
    };
    let edges: Vec<_> = edges.into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    SimpleGraph::from_edges(n, &edges).expect("valid")
}

pub fn relabel_random(rng: &mut impl Rng, g: &SimpleGraph) -> SimpleGraph {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let edges: Vec<_> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    SimpleGraph::from_edges(n, &edges).expect("valid")
}

pub mod sweeps {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rayon::prelude::*;
    use rigikit::census::{canonical_form, enumerate_all_graphs, enumerate_regular};
    use rigikit::graph::scale;
    use rigikit::packing::{max_tree_packing, strength};
    use rigikit::rigidity::rigidity_rank;
    use rigikit::surfaces::{rigid_on_surface, SurfaceKind};

    /// Graphs of every order up to `n_max`, one per isomorphism class.
    pub fn all_graphs(n_max: usize) -> Vec<SimpleGraph> {
        (1..=n_max).flat_map(|n| enumerate_all_graphs(n).expect("guarded")).collect()
    }

    pub fn connected_graphs(lo: usize, n_max: usize) -> Vec<SimpleGraph> {
        all_graphs(n_max).into_iter().filter(|g| g.order() >= lo && g.is_connected()).collect()
    }

    /// Pebble-game rank against the random rigidity matrix; returns graph6 words of mismatches.
    pub fn pebble_vs_matrix(n_max: usize) -> (usize, Vec<String>) {
        let graphs: Vec<SimpleGraph> = all_graphs(n_max).into_iter().filter(|g| g.order() >= 2).collect();
        let bad = graphs
            .par_iter()
            .enumerate()
            .filter(|(i, g)| {
                let mut rng = ChaCha8Rng::seed_from_u64(*i as u64);
                rigidity_rank(g).expect("small").0 != rigidity_matrix_rank(g, &mut rng, 2)
            })
            .map(|(_, g)| rigikit::graph6::emit_graph6(g))
            .collect();
        (graphs.len(), bad)
    }

    /// Strength against the partition minimum, and the packing count against its floor.
    pub fn strength_and_packing(n_max: usize) -> (usize, Vec<String>, Vec<String>) {
        let graphs = connected_graphs(2, n_max);
        let check = |g: &SimpleGraph| {
            let s = strength(g).expect("connected").value;
            let floor = s.floor().to_integer();
            let count = max_tree_packing(g).expect("n >= 2").tree_count;
            (s == brute_strength(g), BigInt::from(count) == floor)
        };
        let results: Vec<(bool, bool)> = graphs.par_iter().map(check).collect();
        let word = rigikit::graph6::emit_graph6;
        let s_bad = graphs.iter().zip(&results).filter(|(_, r)| !r.0).map(|(g, _)| word(g)).collect();
        let p_bad = graphs.iter().zip(&results).filter(|(_, r)| !r.1).map(|(g, _)| word(g)).collect();
        (graphs.len(), s_bad, p_bad)
    }

    pub fn general_revolution(n_max: usize) -> (usize, Vec<String>) {
        let graphs = connected_graphs(1, n_max);
        let bad = graphs
            .par_iter()
            .filter(|g| rigid_on_surface(g, SurfaceKind::GeneralRevolution) != brute_general_revolution(g))
            .map(rigikit::graph6::emit_graph6)
            .collect();
        (graphs.len(), bad)
    }

    /// Completeness: random relabelings keep the form. Soundness: distinct forms with equal degree
    /// sequences are never isomorphic, checked on every such pair for n ≤ 7 and on a sample at n = 8.
    pub fn canonical_vs_brute(n_max: usize, pairs_at_max: usize) -> (usize, Vec<String>) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut bad = Vec::new();
        let mut checked = 0;
        for n in 1..=n_max {
            let graphs = enumerate_all_graphs(n).expect("guarded");
            let forms: Vec<_> = graphs.iter().map(|g| canonical_form(g).expect("small")).collect();
            for (g, f) in graphs.iter().zip(&forms) {
                let h = relabel_random(&mut rng, g);
                checked += 1;
                if canonical_form(&h).expect("small") != *f || !brute_isomorphic(g, &h) {
                    bad.push(format!("relabel {}", rigikit::graph6::emit_graph6(g)));
                }
            }
            let mut by_deg: std::collections::HashMap<Vec<usize>, Vec<usize>> = Default::default();
            for (i, g) in graphs.iter().enumerate() {
                let mut d = g.degree_sequence();
                d.sort_unstable();
                by_deg.entry(d).or_default().push(i);
            }
            let mut pairs: Vec<(usize, usize)> = by_deg
                .values()
                .flat_map(|ids| ids.iter().enumerate().flat_map(move |(a, &i)| ids[a + 1..].iter().map(move |&j| (i, j))))
                .collect();
            pairs.sort_unstable();
            if n == n_max && pairs.len() > pairs_at_max {
                for i in 0..pairs_at_max {
                    let j = rng.gen_range(i..pairs.len());
                    pairs.swap(i, j);
                }
                pairs.truncate(pairs_at_max);
            }
            checked += pairs.len();
            let wrong: Vec<String> = pairs
                .par_iter()
                .filter(|&&(i, j)| (forms[i] == forms[j]) != brute_isomorphic(&graphs[i], &graphs[j]))
                .map(|&(i, j)| format!("pair {} {}", rigikit::graph6::emit_graph6(&graphs[i]), rigikit::graph6::emit_graph6(&graphs[j])))
                .collect();
            bad.extend(wrong);
        }
        (checked, bad)
    }

    /// Regular enumeration counts against labeled backtracking deduplicated by brute force.
    pub fn enumeration_vs_labeled(n_max: usize) -> Vec<String> {
        let mut bad = Vec::new();
        for n in 1..=n_max {
            for k in 0..n {
                if n * k % 2 == 1 {
                    continue;
                }
                let classes = brute_classes(labeled_regular(n, k));
                let total = enumerate_regular(n, k, false, false, false).expect("guarded").len();
                let connected = enumerate_regular(n, k, true, false, false).expect("guarded").len();
                let brute_connected = classes.iter().filter(|g| g.is_connected()).count();
                if total != classes.len() || connected != brute_connected {
                    bad.push(format!("n={n} k={k}: {total}/{connected} vs {}/{brute_connected}", classes.len()));
                }
            }
        }
        bad
    }

    /// strength(tG) = t·strength(G) on random connected graphs.
    pub fn scaling_law(samples: usize, seed: u64) -> Vec<String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cases: Vec<(SimpleGraph, u64)> = (0..samples)
            .map(|_| {
                let n = rng.gen_range(2..=7);
                let p = rng.gen_range(0.2..0.9);
                (random_connected_graph(&mut rng, n, p), rng.gen_range(1..=4))
            })
            .collect();
        cases
            .par_iter()
            .filter(|(g, t)| {
                let base = strength(g).expect("connected").value;
                let scaled = strength(&scale(g, *t).expect("t > 0")).expect("connected").value;
                scaled != base * Rational::from_integer(BigInt::from(*t))
            })
            .map(|(g, t)| format!("t={t} {}", rigikit::graph6::emit_graph6(g)))
            .collect()
    }
}
