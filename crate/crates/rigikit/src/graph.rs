//! Labeled undirected graphs on vertices `0..n`.

use std::collections::VecDeque;

use crate::error::{invalid, Result};

/// Read access shared by simple graphs and multigraphs: an undirected graph whose
/// vertex pairs carry nonnegative integer weights (edge multiplicities).
pub trait WeightedGraph {
    fn order(&self) -> usize;
    /// Neighbours of `v` with the multiplicity of each pair, sorted by neighbour.
    fn weighted_neighbors(&self, v: usize) -> Vec<(usize, u64)>;

    fn weight(&self, u: usize, v: usize) -> u64 {
        self.weighted_neighbors(u)
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, m)| m)
    }

    fn weighted_degree(&self, v: usize) -> u64 {
        self.weighted_neighbors(v).iter().map(|&(_, m)| m).sum()
    }

    fn min_weighted_degree(&self) -> u64 {
        (0..self.order()).map(|v| self.weighted_degree(v)).min().unwrap_or(0)
    }

    /// Common degree if every vertex has the same weighted degree.
    fn weighted_regular_degree(&self) -> Option<u64> {
        let n = self.order();
        if n == 0 {
            return None;
        }
        let k = self.weighted_degree(0);
        (1..n).all(|v| self.weighted_degree(v) == k).then_some(k)
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for (w, _) in self.weighted_neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Empty and one-vertex graphs count as connected.
    fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().len() == 1
    }

    /// Proper 2-colouring of the support, if one exists.
    fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.order();
        let mut color = vec![u8::MAX; n];
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for (w, _) in self.weighted_neighbors(u) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

/// Simple graph stored as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list; rejects loops, out-of-range endpoints and repeated pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u},{v}) out of range for n={n}"));
            }
            if u == v {
                return invalid(format!("loop at vertex {u}"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("parallel edge at vertex {v}"));
            }
        }
        Ok(SimpleGraph { adj })
    }

    /// Builds from bit rows (`rows[u] >> v & 1` marks an edge); `rows` must be symmetric with zero diagonal.
    pub fn from_bitrows(rows: &[u64]) -> Self {
        let n = rows.len();
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| rows[u] >> v & 1 == 1).collect())
            .collect();
        SimpleGraph { adj }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Degrees in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == k).then_some(k)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> SimpleGraph {
        let mut adj = self.adj.clone();
        adj[u].retain(|&w| w != v);
        adj[v].retain(|&w| w != u);
        SimpleGraph { adj }
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<SimpleGraph> {
        let mut edges = self.edges();
        edges.push((u, v));
        SimpleGraph::from_edges(self.order(), &edges)
    }

    /// Subgraph induced by `keep`; vertex `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adj[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        SimpleGraph { adj }
    }

    /// G − S with the surviving vertices relabeled in increasing order.
    pub fn remove_vertices(&self, removed: &[usize]) -> SimpleGraph {
        let keep: Vec<usize> = (0..self.order()).filter(|v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// Image under the relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGraph {
        let mut adj = vec![Vec::new(); self.order()];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&v| perm[v]).collect();
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        SimpleGraph { adj }
    }

    pub fn complement(&self) -> SimpleGraph {
        let n = self.order();
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && !self.has_edge(u, v)).collect())
            .collect();
        SimpleGraph { adj }
    }

    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&v| v + shift).collect()));
        SimpleGraph { adj }
    }

    /// Breadth-first distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Diameter by all-pairs BFS; `None` when disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.order() {
            let far = *self.distances_from(s).iter().max()?;
            if far == usize::MAX {
                return None;
            }
            best = best.max(far);
        }
        (self.order() > 0).then_some(best)
    }

    pub fn to_multigraph(&self) -> Multigraph {
        Multigraph {
            adj: self.adj.iter().map(|l| l.iter().map(|&v| (v, 1)).collect()).collect(),
        }
    }

    /// Adjacency as bit rows, for graphs with at most 64 vertices.
    pub fn bitrows(&self) -> Option<Vec<u64>> {
        if self.order() > 64 {
            return None;
        }
        Some(self.adj.iter().map(|l| l.iter().fold(0u64, |acc, &v| acc | 1 << v)).collect())
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        SimpleGraph { adj }
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> SimpleGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        SimpleGraph::from_edges(n, &edges).expect("valid path")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
        let edges: Vec<_> = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))).collect();
        SimpleGraph::from_edges(a + b, &edges).expect("valid K_{a,b}")
    }

    pub fn petersen() -> SimpleGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        SimpleGraph::from_edges(10, &edges).expect("valid Petersen")
    }

    /// Prism C_m □ K2 on 2m vertices.
    pub fn prism(m: usize) -> SimpleGraph {
        let mut edges = Vec::new();
        for i in 0..m {
            edges.push((i, (i + 1) % m));
            edges.push((m + i, m + (i + 1) % m));
            edges.push((i, m + i));
        }
        SimpleGraph::from_edges(2 * m, &edges).expect("prism needs m >= 3")
    }
}

impl WeightedGraph for SimpleGraph {
    fn order(&self) -> usize {
        self.adj.len()
    }

    fn weighted_neighbors(&self, v: usize) -> Vec<(usize, u64)> {
        self.adj[v].iter().map(|&w| (w, 1)).collect()
    }

    fn weight(&self, u: usize, v: usize) -> u64 {
        u64::from(self.has_edge(u, v))
    }

    fn weighted_degree(&self, v: usize) -> u64 {
        self.adj[v].len() as u64
    }
}

/// Loopless multigraph stored as sorted `(neighbour, multiplicity)` lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    adj: Vec<Vec<(usize, u64)>>,
}

impl Multigraph {
    /// Builds from `(u, v, multiplicity)` triples; repeated pairs accumulate.
    pub fn from_multiplicities(n: usize, pairs: &[(usize, usize, u64)]) -> Result<Self> {
        let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
        for &(u, v, m) in pairs {
            if u >= n || v >= n {
                return invalid(format!("edge ({u},{v}) out of range for n={n}"));
            }
            if u == v {
                return invalid(format!("loop at vertex {u}"));
            }
            if m == 0 {
                continue;
            }
            for (a, b) in [(u, v), (v, u)] {
                match adj[a].iter_mut().find(|(w, _)| *w == b) {
                    Some(entry) => entry.1 += m,
                    None => adj[a].push((b, m)),
                }
            }
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(Multigraph { adj })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.adj.iter().flatten().map(|&(_, m)| m).sum::<u64>() / 2
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.adj[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .map_or(0, |i| self.adj[u][i].1)
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.adj.iter().flatten().map(|&(_, m)| m).max().unwrap_or(0)
    }

    /// Distinct adjacent pairs `(u, v, multiplicity)` with `u < v`.
    pub fn pairs(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&(v, _)| v > u).map(|&(v, m)| (u, v, m)));
        }
        out
    }

    /// One entry per parallel copy, so positions act as edge ids.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .flat_map(|(u, v, m)| std::iter::repeat_n((u, v), m as usize))
            .collect()
    }

    pub fn support(&self) -> SimpleGraph {
        let edges: Vec<_> = self.pairs().into_iter().map(|(u, v, _)| (u, v)).collect();
        SimpleGraph::from_edges(self.order(), &edges).expect("support of a multigraph is simple")
    }

    /// Removes one copy of the pair `{u, v}`.
    pub fn remove_one(&self, u: usize, v: usize) -> Multigraph {
        let mut adj = self.adj.clone();
        for (a, b) in [(u, v), (v, u)] {
            if let Some(i) = adj[a].iter().position(|&(w, _)| w == b) {
                adj[a][i].1 -= 1;
                if adj[a][i].1 == 0 {
                    adj[a].remove(i);
                }
            }
        }
        Multigraph { adj }
    }

    /// The simple graph when every multiplicity is one.
    pub fn as_simple(&self) -> Option<SimpleGraph> {
        (self.max_multiplicity() <= 1).then(|| self.support())
    }
}

impl WeightedGraph for Multigraph {
    fn order(&self) -> usize {
        self.adj.len()
    }

    fn weighted_neighbors(&self, v: usize) -> Vec<(usize, u64)> {
        self.adj[v].clone()
    }

    fn weight(&self, u: usize, v: usize) -> u64 {
        self.multiplicity(u, v)
    }
}

impl From<&SimpleGraph> for Multigraph {
    fn from(g: &SimpleGraph) -> Self {
        g.to_multigraph()
    }
}

/// tG: every multiplicity multiplied by `t`.
pub fn scale<G: WeightedGraph>(g: &G, t: u64) -> Result<Multigraph> {
    if t == 0 {
        return invalid("scale factor must be positive");
    }
    let adj = (0..g.order())
        .map(|v| g.weighted_neighbors(v).into_iter().map(|(w, m)| (w, m * t)).collect())
        .collect();
    Ok(Multigraph { adj })
}

/// Contracts every k-clique of a k-regular graph whose vertices are covered by disjoint k-cliques.
pub fn clique_contract(g: &SimpleGraph, k: usize) -> Result<Multigraph> {
    use crate::error::Error;
    if k < 2 || g.regular_degree() != Some(k) {
        return invalid(format!("graph is not {k}-regular"));
    }
    let n = g.order();
    let mut clique_of = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        // A k-clique through v uses v and k-1 of its k neighbours.
        let nb = g.neighbors(v);
        let cliques: Vec<Vec<usize>> = (0..nb.len())
            .map(|skip| {
                let mut c: Vec<usize> = nb.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &w)| w).collect();
                c.push(v);
                c.sort_unstable();
                c
            })
            .filter(|c| c.iter().enumerate().all(|(i, &a)| c[i + 1..].iter().all(|&b| g.has_edge(a, b))))
            .collect();
        match cliques.len() {
            0 => return Err(Error::Structure(format!("vertex {v} lies in no {k}-clique"))),
            1 => {}
            _ => return Err(Error::Structure(format!("vertex {v} lies in several {k}-cliques"))),
        }
        if clique_of[v] == usize::MAX {
            for &w in &cliques[0] {
                if clique_of[w] != usize::MAX {
                    return Err(Error::Structure(format!("{k}-cliques overlap at vertex {w}")));
                }
                clique_of[w] = count;
            }
            count += 1;
        }
    }
    let pairs: Vec<_> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| clique_of[u] != clique_of[v])
        .map(|(u, v)| (clique_of[u], clique_of[v], 1))
        .collect();
    Multigraph::from_multiplicities(count, &pairs)
}

/// Replaces each vertex of a k-regular multigraph by K_k, handing its k edges to distinct clique vertices.
pub fn clique_replace<G: WeightedGraph>(h: &G, k: usize) -> Result<SimpleGraph> {
    if k < 3 || h.weighted_regular_degree() != Some(k as u64) {
        return invalid(format!("graph is not {k}-regular with k >= 3"));
    }
    let n = h.order();
    let mut next_port = vec![0usize; n];
    let mut edges = Vec::new();
    for c in 0..n {
        for a in 0..k {
            for b in a + 1..k {
                edges.push((c * k + a, c * k + b));
            }
        }
    }
    for u in 0..n {
        for (v, m) in h.weighted_neighbors(u) {
            if v <= u {
                continue;
            }
            for _ in 0..m {
                edges.push((u * k + next_port[u], v * k + next_port[v]));
                next_port[u] += 1;
                next_port[v] += 1;
            }
        }
    }
    SimpleGraph::from_edges(n * k, &edges)
}
