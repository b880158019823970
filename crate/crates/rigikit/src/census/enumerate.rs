//! Regular-graph enumeration by vertex augmentation with isomorph rejection at every level.

use std::collections::HashSet;

use rayon::prelude::*;

use super::canon::label_rows;
use crate::error::{domain, Error, Result};
use crate::graph::{SimpleGraph, WeightedGraph};

/// Largest order enumerated without `force`.
pub fn guard_limit(k: usize, bipartite: bool) -> usize {
    if bipartite {
        return 14;
    }
    match k {
        0..=2 => 16,
        3 => 14,
        4 => 12,
        5..=7 => 10,
        _ => 12,
    }
}

fn check_guard(n: usize, k: usize, bipartite: bool, force: bool) -> Result<()> {
    let limit = guard_limit(k, bipartite);
    if n > limit && !force {
        let kind = if bipartite { "bipartite " } else { "" };
        return Err(Error::Guard(format!("{kind}{k}-regular enumeration is limited to n ≤ {limit}, requested n = {n}")));
    }
    Ok(())
}

fn canonical(rows: &[u64]) -> Vec<u64> {
    label_rows(rows).rows
}

fn two_colour(rows: &[u64]) -> Vec<u8> {
    let m = rows.len();
    let mut colour = vec![u8::MAX; m];
    colour[0] = 0;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        let mut bits = rows[u];
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if colour[v] == u8::MAX {
                colour[v] = 1 - colour[u];
                stack.push(v);
            }
        }
    }
    colour
}

/// Whether a partial graph on `rows.len()` vertices can still grow into a connected k-regular graph on n vertices.
fn feasible(rows: &[u64], n: usize, k: usize) -> bool {
    let r = n - rows.len();
    let mut total = 0;
    for row in rows {
        let d = k - row.count_ones() as usize;
        if d > r {
            return false;
        }
        total += d;
    }
    if r == 0 {
        return total == 0;
    }
    total > 0 && total <= k * r && (k * r - total).is_multiple_of(2) && total + r * (r - 1) >= k * r
}

/// Bipartite version: colours 0 and 1 each end with n/2 vertices.
fn feasible_bipartite(rows: &[u64], colour: &[u8], n: usize, k: usize) -> bool {
    let h = n / 2;
    let mut size = [0usize; 2];
    let mut deficit = [0usize; 2];
    let mut max_def = [0usize; 2];
    for (v, row) in rows.iter().enumerate() {
        let c = colour[v] as usize;
        let d = k - row.count_ones() as usize;
        size[c] += 1;
        deficit[c] += d;
        max_def[c] = max_def[c].max(d);
    }
    if size[0] > h || size[1] > h {
        return false;
    }
    let rem = [h - size[0], h - size[1]];
    // Vertices of colour c are completed by new vertices of the other colour.
    if max_def[0] > rem[1] || max_def[1] > rem[0] {
        return false;
    }
    if rem[0] + rem[1] > 0 && deficit[0] + deficit[1] == 0 {
        return false;
    }
    let (a, b) = (k * rem[1], k * rem[0]);
    if a < deficit[0] || b < deficit[1] {
        return false;
    }
    let internal = a - deficit[0];
    internal == b - deficit[1] && internal <= rem[0] * rem[1]
}

fn children(rows: &[u64], n: usize, k: usize, bipartite: bool) -> Vec<Vec<u64>> {
    let m = rows.len();
    let after = n - m - 1;
    let deficient: Vec<usize> = (0..m).filter(|&v| (rows[v].count_ones() as usize) < k).collect();
    let colour = if bipartite { two_colour(rows) } else { Vec::new() };
    let lo = k.saturating_sub(after).max(1);
    let hi = k.min(deficient.len());
    let mut out = Vec::new();
    let mut pick: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        deficient: &[usize],
        pick: &mut Vec<usize>,
        lo: usize,
        hi: usize,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if pick.len() >= lo {
            emit(pick);
        }
        if pick.len() == hi {
            return;
        }
        for i in start..deficient.len() {
            pick.push(deficient[i]);
            rec(i + 1, deficient, pick, lo, hi, emit);
            pick.pop();
        }
    }
    let mut emit = |s: &[usize]| {
        if bipartite && s.iter().any(|&v| colour[v] != colour[s[0]]) {
            return;
        }
        let mut next = rows.to_vec();
        let mut new_row = 0u64;
        for &v in s {
            next[v] |= 1 << m;
            new_row |= 1 << v;
        }
        next.push(new_row);
        let ok = if bipartite {
            let mut c = colour.clone();
            c.push(1 - colour[s[0]]);
            feasible_bipartite(&next, &c, n, k)
        } else {
            feasible(&next, n, k)
        };
        if ok {
            out.push(canonical(&next));
        }
    };
    if lo <= hi {
        rec(0, &deficient, &mut pick, lo, hi, &mut emit);
    }
    out
}

/// Connected k-regular graphs on n vertices as canonical bit rows, sorted.
fn connected_rows(n: usize, k: usize, bipartite: bool) -> Vec<Vec<u64>> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return if k == 0 && !bipartite { vec![vec![0]] } else { Vec::new() };
    }
    if k == 0 || k >= n || (n * k) % 2 == 1 || (bipartite && (n % 2 == 1 || 2 * k > n)) {
        return Vec::new();
    }
    let mut level: Vec<Vec<u64>> = vec![vec![0]];
    for _ in 1..n {
        let batches: Vec<Vec<Vec<u64>>> = level.par_iter().map(|rows| children(rows, n, k, bipartite)).collect();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        for batch in batches {
            seen.extend(batch);
        }
        level = seen.into_iter().collect();
        level.sort_unstable();
    }
    level
}

/// Non-increasing sequences of orders summing to `n`, parts drawn from `sizes`.
fn order_partitions(n: usize, sizes: &[usize]) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, sizes: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for &s in sizes.iter().rev() {
            if s <= rest && s <= max {
                cur.push(s);
                rec(rest - s, s, sizes, cur, out);
                cur.pop();
            }
        }
    }
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    rec(n, n, &sorted, &mut Vec::new(), &mut out);
    out
}

/// All k-regular graphs on n vertices, assembled from connected components.
fn all_regular(n: usize, k: usize, bipartite: bool) -> Vec<SimpleGraph> {
    let comps: Vec<(usize, Vec<SimpleGraph>)> = (1..=n)
        .map(|m| (m, connected_rows(m, k, bipartite).iter().map(|r| SimpleGraph::from_bitrows(r)).collect::<Vec<_>>()))
        .filter(|(_, list)| !list.is_empty())
        .collect();
    let sizes: Vec<usize> = comps.iter().map(|(m, _)| *m).collect();
    let by_size = |m: usize| &comps.iter().find(|(s, _)| *s == m).expect("size present").1;
    let mut out = Vec::new();
    for parts in order_partitions(n, &sizes) {
        // Within equal orders choose components as a multiset: non-decreasing indices.
        fn rec(
            parts: &[usize],
            i: usize,
            min_idx: usize,
            acc: SimpleGraph,
            lists: &dyn Fn(usize) -> Vec<SimpleGraph>,
            out: &mut Vec<SimpleGraph>,
        ) {
            if i == parts.len() {
                out.push(acc);
                return;
            }
            let list = lists(parts[i]);
            let start = if i > 0 && parts[i - 1] == parts[i] { min_idx } else { 0 };
            for (j, c) in list.iter().enumerate().skip(start) {
                rec(parts, i + 1, j, acc.disjoint_union(c), lists, out);
            }
        }
        let lists = |m: usize| by_size(m).clone();
        rec(&parts, 0, 0, SimpleGraph::empty(0), &lists, &mut out);
    }
    out
}

/// One representative per isomorphism class of k-regular graphs on n vertices.
pub fn enumerate_regular(n: usize, k: usize, connected: bool, bipartite: bool, force: bool) -> Result<Vec<SimpleGraph>> {
    if (n * k) % 2 == 1 {
        return domain(format!("n·k must be even, got n = {n}, k = {k}"));
    }
    if n > 0 && k >= n {
        return domain(format!("degree {k} needs more than {n} vertices"));
    }
    check_guard(n, k, bipartite, force)?;
    if !bipartite && n >= 2 && 2 * k > n - 1 {
        // Complements of (n−1−k)-regular graphs; connectivity is checked afterwards.
        let graphs = enumerate_regular(n, n - 1 - k, false, false, true)?;
        return Ok(graphs.iter().map(SimpleGraph::complement).filter(|g| !connected || g.is_connected()).collect());
    }
    if connected {
        return Ok(connected_rows(n, k, bipartite).iter().map(|r| SimpleGraph::from_bitrows(r)).collect());
    }
    Ok(all_regular(n, k, bipartite))
}

/// Every graph on n vertices up to isomorphism (n ≤ 10).
pub fn enumerate_all_graphs(n: usize) -> Result<Vec<SimpleGraph>> {
    if n > 10 {
        return Err(Error::Guard(format!("all-graph enumeration is limited to n ≤ 10, requested n = {n}")));
    }
    if n == 0 {
        return Ok(vec![SimpleGraph::empty(0)]);
    }
    let mut level: Vec<Vec<u64>> = vec![vec![0]];
    for m in 1..n {
        let batches: Vec<Vec<Vec<u64>>> = level
            .par_iter()
            .map(|rows| {
                (0u64..1 << m)
                    .map(|s| {
                        let mut next = rows.clone();
                        for (v, row) in next.iter_mut().enumerate() {
                            if s >> v & 1 == 1 {
                                *row |= 1 << m;
                            }
                        }
                        next.push(s);
                        canonical(&next)
                    })
                    .collect()
            })
            .collect();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        for b in batches {
            seen.extend(b);
        }
        level = seen.into_iter().collect();
        level.sort_unstable();
    }
    Ok(level.iter().map(|r| SimpleGraph::from_bitrows(r)).collect())
}
