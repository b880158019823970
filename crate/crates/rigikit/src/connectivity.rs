//! Edge and vertex connectivity with cut certificates.

use std::collections::VecDeque;

use crate::error::{domain, Result};
use crate::graph::{SimpleGraph, WeightedGraph};

/// What a cut certificate removes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separator {
    /// Crossing pairs `(u, v, multiplicity)` with `u < v`.
    Edges(Vec<(usize, usize, u64)>),
    Vertices(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCertificate {
    pub separator: Separator,
    /// One shore of the cut (for vertex cuts, a component left after deleting the separator).
    pub side: Vec<usize>,
}

impl CutCertificate {
    /// Size of the separator, counting multiplicities.
    pub fn size(&self) -> u64 {
        match &self.separator {
            Separator::Edges(e) => e.iter().map(|&(_, _, m)| m).sum(),
            Separator::Vertices(v) => v.len() as u64,
        }
    }

    /// Checks that removing the separator disconnects `g` and `side` is cut off from the rest.
    pub fn verify<G: WeightedGraph>(&self, g: &G) -> bool {
        let n = g.order();
        let mut in_side = vec![false; n];
        for &v in &self.side {
            in_side[v] = true;
        }
        match &self.separator {
            Separator::Edges(edges) => {
                if self.side.is_empty() || self.side.len() == n {
                    return false;
                }
                let mut crossing = Vec::new();
                for u in 0..n {
                    for (v, m) in g.weighted_neighbors(u) {
                        if u < v && in_side[u] != in_side[v] {
                            crossing.push((u, v, m));
                        }
                    }
                }
                crossing == *edges
            }
            Separator::Vertices(sep) => {
                let mut removed = vec![false; n];
                for &v in sep {
                    removed[v] = true;
                }
                if self.side.is_empty() || self.side.iter().any(|&v| removed[v]) {
                    return false;
                }
                if self.side.len() + sep.len() >= n {
                    return false;
                }
                // No edge may leave `side` except into the separator.
                self.side.iter().all(|&u| g.weighted_neighbors(u).iter().all(|&(v, _)| in_side[v] || removed[v]))
            }
        }
    }
}

fn crossing_pairs<G: WeightedGraph>(g: &G, side: &[usize]) -> Vec<(usize, usize, u64)> {
    let mut in_side = vec![false; g.order()];
    for &v in side {
        in_side[v] = true;
    }
    let mut out = Vec::new();
    for u in 0..g.order() {
        for (v, m) in g.weighted_neighbors(u) {
            if u < v && in_side[u] != in_side[v] {
                out.push((u, v, m));
            }
        }
    }
    out
}

/// Global minimum edge cut by Stoer–Wagner, multiplicities as weights.
pub fn edge_connectivity<G: WeightedGraph>(g: &G) -> Result<(u64, CutCertificate)> {
    let n = g.order();
    if n < 2 {
        return domain("edge connectivity needs at least two vertices");
    }
    let comps = g.components();
    if comps.len() > 1 {
        let side = comps[0].clone();
        return Ok((0, CutCertificate { separator: Separator::Edges(Vec::new()), side }));
    }
    let mut w = vec![vec![0u64; n]; n];
    for (u, row) in w.iter_mut().enumerate() {
        for (v, m) in g.weighted_neighbors(u) {
            row[v] = m;
        }
    }
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    let mut best_side = Vec::new();
    while alive.len() > 1 {
        let mut key = vec![0u64; n];
        let mut added = vec![false; n];
        let mut prev = alive[0];
        let mut last = alive[0];
        for _ in 0..alive.len() {
            let v = *alive
                .iter()
                .filter(|&&v| !added[v])
                .max_by(|&&a, &&b| key[a].cmp(&key[b]).then(b.cmp(&a)))
                .expect("unadded vertex");
            added[v] = true;
            prev = last;
            last = v;
            for &u in &alive {
                if !added[u] {
                    key[u] += w[v][u];
                }
            }
        }
        if key[last] < best {
            best = key[last];
            best_side = groups[last].clone();
        }
        for &x in &alive {
            w[prev][x] += w[last][x];
            w[x][prev] = w[prev][x];
        }
        w[prev][prev] = 0;
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        alive.retain(|&v| v != last);
    }
    best_side.sort_unstable();
    let separator = Separator::Edges(crossing_pairs(g, &best_side));
    Ok((best, CutCertificate { separator, side: best_side }))
}

/// Directed flow network solved by Dinic's algorithm.
pub struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    /// Adds arc u→v with capacity `c` and reverse capacity `rc`.
    pub fn add_arc(&mut self, u: usize, v: usize, c: u64, rc: u64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(rc);
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.head.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn push(&mut self, u: usize, t: usize, limit: u64, level: &[usize], it: &mut [usize]) -> u64 {
        if u == t {
            return limit;
        }
        while it[u] < self.head[u].len() {
            let e = self.head[u][it[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let got = self.push(v, t, limit.min(self.cap[e]), level, it);
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            it[u] += 1;
        }
        0
    }

    /// Maximum s–t flow, stopping early once `bound` is reached.
    pub fn max_flow(&mut self, s: usize, t: usize, bound: u64) -> u64 {
        let mut flow = 0;
        while flow < bound {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                break;
            }
            let mut it = vec![0; self.head.len()];
            loop {
                let f = self.push(s, t, bound - flow, &level, &mut it);
                if f == 0 {
                    break;
                }
                flow += f;
                if flow >= bound {
                    break;
                }
            }
        }
        flow
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        self.levels(s).iter().map(|&l| l != usize::MAX).collect()
    }
}

/// Maximum s–t flow with edge multiplicities as capacities.
pub fn max_flow<G: WeightedGraph>(g: &G, s: usize, t: usize) -> u64 {
    if s == t {
        return 0;
    }
    let mut net = FlowNetwork::new(g.order());
    for u in 0..g.order() {
        for (v, m) in g.weighted_neighbors(u) {
            if u < v {
                net.add_arc(u, v, m, m);
            }
        }
    }
    net.max_flow(s, t, u64::MAX)
}

const INF: u64 = u64::MAX / 4;

/// Minimum x–y vertex separator for non-adjacent x, y (vertex splitting, unit capacities).
fn local_vertex_cut(g: &SimpleGraph, x: usize, y: usize, bound: u64) -> (u64, Vec<usize>) {
    let n = g.order();
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        let c = if v == x || v == y { INF } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, c, 0);
    }
    for (u, v) in g.edges() {
        net.add_arc(2 * u + 1, 2 * v, INF, 0);
        net.add_arc(2 * v + 1, 2 * u, INF, 0);
    }
    let flow = net.max_flow(2 * x + 1, 2 * y, bound);
    if flow >= bound {
        return (flow, Vec::new());
    }
    let reach = net.residual_reachable(2 * x + 1);
    let sep = (0..n).filter(|&v| reach[2 * v] && !reach[2 * v + 1]).collect();
    (flow, sep)
}

/// Vertex connectivity κ(G); complete graphs return n − 1 with an empty certificate.
pub fn vertex_connectivity(g: &SimpleGraph) -> (usize, CutCertificate) {
    let n = g.order();
    let empty = |side: Vec<usize>| CutCertificate { separator: Separator::Vertices(Vec::new()), side };
    if n <= 1 {
        return (0, empty(Vec::new()));
    }
    if g.is_complete() {
        return (n - 1, empty(Vec::new()));
    }
    let comps = g.components();
    if comps.len() > 1 {
        return (0, empty(comps[0].clone()));
    }
    // Esfahanian–Hakimi pair family around a minimum-degree vertex.
    let v0 = (0..n).min_by_key(|&v| (g.degree(v), v)).expect("nonempty");
    let mut pairs: Vec<(usize, usize)> = (0..n).filter(|&w| w != v0 && !g.has_edge(v0, w)).map(|w| (v0, w)).collect();
    let nb = g.neighbors(v0);
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if !g.has_edge(a, b) {
                pairs.push((a, b));
            }
        }
    }
    let mut best = (n - 1) as u64;
    let mut best_cut: Option<(usize, Vec<usize>)> = None;
    for (x, y) in pairs {
        let (flow, sep) = local_vertex_cut(g, x, y, best);
        if flow < best {
            best = flow;
            best_cut = Some((x, sep));
        }
    }
    let (x, sep) = best_cut.expect("a non-complete connected graph has a non-adjacent pair");
    let rest = g.remove_vertices(&sep);
    let kept: Vec<usize> = (0..n).filter(|v| !sep.contains(v)).collect();
    let xi = kept.iter().position(|&v| v == x).expect("x survives");
    let comp = rest.components().into_iter().find(|c| c.contains(&xi)).expect("x has a component");
    let side = comp.into_iter().map(|i| kept[i]).collect();
    (best as usize, CutCertificate { separator: Separator::Vertices(sep), side })
}

/// Edge connectivity of G − S.
pub fn edge_connectivity_after_deleting(g: &SimpleGraph, removed: &[usize]) -> Result<u64> {
    let rest = g.remove_vertices(removed);
    if rest.order() < 2 {
        return domain("fewer than two vertices remain");
    }
    Ok(edge_connectivity(&rest)?.0)
}

fn is_k_edge_connected(g: &SimpleGraph, k: u64) -> bool {
    g.order() >= 2 && g.min_degree() as u64 >= k && edge_connectivity(g).is_ok_and(|(c, _)| c >= k)
}

/// 6-edge-connected, every G − u 4-edge-connected and every G − {v, w} 2-edge-connected.
pub fn jj_mixed_condition(g: &SimpleGraph) -> bool {
    let n = g.order();
    if n < 4 || !is_k_edge_connected(g, 6) {
        return false;
    }
    for u in 0..n {
        if !is_k_edge_connected(&g.remove_vertices(&[u]), 4) {
            return false;
        }
    }
    for v in 0..n {
        for w in v + 1..n {
            if !is_k_edge_connected(&g.remove_vertices(&[v, w]), 2) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;

    fn bridge10() -> SimpleGraph {
        let side = [(0, 1), (0, 4), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)];
        let mut edges: Vec<_> = side.to_vec();
        edges.extend(side.iter().map(|&(a, b)| (a + 5, b + 5)));
        edges.push((0, 5));
        SimpleGraph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn edge_connectivity_examples() {
        let (c, cert) = edge_connectivity(&bridge10()).unwrap();
        assert_eq!(c, 1);
        assert!(cert.verify(&bridge10()));
        let (c, cert) = edge_connectivity(&SimpleGraph::complete(4)).unwrap();
        assert_eq!(c, 3);
        assert!(cert.verify(&SimpleGraph::complete(4)));
        let m = Multigraph::from_multiplicities(3, &[(0, 1, 3), (1, 2, 2), (0, 2, 1)]).unwrap();
        let (c, cert) = edge_connectivity(&m).unwrap();
        assert_eq!((c, cert.size()), (3, 3));
        assert!(cert.verify(&m));
        let disc = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(edge_connectivity(&disc).unwrap().0, 0);
    }

    #[test]
    fn vertex_connectivity_examples() {
        for (g, k) in [
            (SimpleGraph::petersen(), 3),
            (SimpleGraph::cycle(5), 2),
            (SimpleGraph::complete(5), 4),
            (bridge10(), 1),
            (SimpleGraph::complete_bipartite(3, 4), 3),
        ] {
            let (c, cert) = vertex_connectivity(&g);
            assert_eq!(c, k);
            if !g.is_complete() {
                assert_eq!(cert.size(), k as u64);
                assert!(cert.verify(&g));
            }
        }
    }

    #[test]
    fn flows() {
        assert_eq!(max_flow(&SimpleGraph::complete(4), 0, 3), 3);
        assert_eq!(max_flow(&SimpleGraph::path(5), 0, 4), 1);
        assert_eq!(max_flow(&bridge10(), 2, 7), 1);
    }

    #[test]
    fn deletions() {
        assert_eq!(edge_connectivity_after_deleting(&SimpleGraph::complete(7), &[3]).unwrap(), 5);
        assert_eq!(edge_connectivity_after_deleting(&SimpleGraph::cycle(5), &[0]).unwrap(), 1);
        // Bridge endpoint 0 leaves a graph whose vertex 4 ... the far side stays joined via nothing: disconnected.
        assert_eq!(edge_connectivity_after_deleting(&bridge10(), &[0]).unwrap(), 0);
        assert_eq!(edge_connectivity_after_deleting(&bridge10(), &[1]).unwrap(), 1);
        assert!(edge_connectivity_after_deleting(&SimpleGraph::complete(3), &[0, 1]).is_err());
    }

    #[test]
    fn mixed_condition() {
        assert!(jj_mixed_condition(&SimpleGraph::complete(8)));
        assert!(!jj_mixed_condition(&SimpleGraph::complete(6)));
    }
}
