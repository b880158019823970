//! Exact eigenvalue-location decisions, Ramanujan certification and approximate spectra.

use std::sync::OnceLock;

use num_traits::{Float, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::graph::{SimpleGraph, WeightedGraph};
use crate::linalg::{
    adjacency_matrix, inertia_counts, inertia_shifted, jacobi_eigenvalues, laplacian_matrix, lift, SymMatrix,
};
use crate::poly::{charpoly, RootCounter};
use crate::{Inertia, QuadraticMatrix, QuadraticNumber, Rational, RationalMatrix};

/// Cached exact spectral data of one graph: integer adjacency and Laplacian matrices and
/// lazily built Sturm root counters for their characteristic polynomials.
pub struct Spectra {
    adjacency: SymMatrix<i64>,
    laplacian: SymMatrix<i64>,
    connected: bool,
    adjacency_roots: OnceLock<RootCounter>,
    laplacian_roots: OnceLock<RootCounter>,
}

impl Spectra {
    pub fn new<G: WeightedGraph>(g: &G) -> Self {
        Spectra {
            adjacency: adjacency_matrix(g),
            laplacian: laplacian_matrix(g),
            connected: g.is_connected(),
            adjacency_roots: OnceLock::new(),
            laplacian_roots: OnceLock::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.adjacency.dim()
    }

    pub fn adjacency_roots(&self) -> &RootCounter {
        self.adjacency_roots.get_or_init(|| RootCounter::new(&charpoly(&self.adjacency)))
    }

    pub fn laplacian_roots(&self) -> &RootCounter {
        self.laplacian_roots.get_or_init(|| RootCounter::new(&charpoly(&self.laplacian)))
    }

    /// Adjacency eigenvalues strictly above `tau` (Sturm path).
    pub fn adjacency_above(&self, tau: &QuadraticNumber) -> usize {
        self.adjacency_roots().count_above(tau)
    }

    /// λ2 ≤ τ, i.e. at most one adjacency eigenvalue exceeds τ.
    pub fn lambda2_at_most(&self, tau: &QuadraticNumber) -> bool {
        self.adjacency_above(tau) <= 1
    }

    /// λ2 < τ.
    pub fn lambda2_below(&self, tau: &QuadraticNumber) -> bool {
        let r = self.adjacency_roots();
        r.count_above(tau) + r.count_equal(tau) <= 1
    }

    /// μ2 > τ; rational thresholds go through inertia, irrational ones through Sturm.
    pub fn mu2_exceeds(&self, tau: &QuadraticNumber) -> Result<bool> {
        if !self.connected {
            return domain("mu2 comparison requires a connected graph");
        }
        if self.order() <= 1 {
            return domain("mu2 is undefined for fewer than two vertices");
        }
        if tau.sign().is_le() {
            return Ok(true);
        }
        match tau.as_rational() {
            Some(r) => {
                let m: RationalMatrix = lift(&self.laplacian);
                let (neg, zero, _) = inertia_counts(&m, r);
                Ok(neg == 1 && zero == 0)
            }
            None => {
                let roots = self.laplacian_roots();
                Ok(roots.count_below(tau) == 1 && roots.count_equal(tau) == 0)
            }
        }
    }

    /// μ2 ≥ τ.
    pub fn mu2_at_least(&self, tau: &QuadraticNumber) -> Result<bool> {
        if !self.connected || self.order() <= 1 {
            return domain("mu2 comparison requires a connected graph on at least two vertices");
        }
        if tau.sign().is_le() {
            return Ok(true);
        }
        Ok(self.laplacian_roots().count_below(tau) == 1)
    }

    /// μ2 > τ decided by congruence over Q(√m); used to cross-check the Sturm path.
    pub fn mu2_exceeds_by_inertia(&self, tau: &QuadraticNumber) -> Result<bool> {
        if !self.connected || self.order() <= 1 {
            return domain("mu2 comparison requires a connected graph on at least two vertices");
        }
        if tau.sign().is_le() {
            return Ok(true);
        }
        let m: QuadraticMatrix = lift(&self.laplacian);
        let (neg, zero, _) = inertia_counts(&m, tau);
        Ok(neg == 1 && zero == 0)
    }

    /// Adjacency eigenvalues above τ by congruence over Q(√m).
    pub fn adjacency_above_by_inertia(&self, tau: &QuadraticNumber) -> usize {
        let m: QuadraticMatrix = lift(&self.adjacency);
        inertia_counts(&m, tau).2
    }

    /// A rational r with r ≤ μ2, certified exactly, taken close to the floating estimate.
    pub fn mu2_rational_lower_bound(&self) -> Result<Rational> {
        let approx = approx_laplacian(&self.laplacian)[1];
        let mut step = 1e-9_f64;
        for _ in 0..60 {
            let r = rational_near(approx - step);
            if self.mu2_at_least(&QuadraticNumber::rational(r.clone()))? {
                // Try the nearby simple fraction first: it is often exact (e.g. integral μ2).
                let simple = rational_near_limited(approx, 1000);
                if simple > r && self.mu2_at_least(&QuadraticNumber::rational(simple.clone()))? {
                    return Ok(simple);
                }
                return Ok(r);
            }
            step *= 2.0;
        }
        Ok(Rational::zero())
    }
}

fn rational_near(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Best rational approximation with denominator at most `max_den` (continued fractions).
fn rational_near_limited(x: f64, max_den: i64) -> Rational {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        let ai = a as i64;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    Rational::new(h1.into(), k1.max(1).into())
}

fn approx_laplacian(l: &SymMatrix<i64>) -> Vec<f64> {
    let mut e = jacobi_eigenvalues(&l.map(|&x| x as f64), 1e-10, 200);
    e.reverse();
    e
}

/// Adjacency eigenvalues strictly greater than τ.
pub fn count_adjacency_eigenvalues_above<G: WeightedGraph>(g: &G, tau: &QuadraticNumber) -> usize {
    Spectra::new(g).adjacency_above(tau)
}

/// μ2(G) > τ.
pub fn mu2_exceeds<G: WeightedGraph>(g: &G, tau: &QuadraticNumber) -> Result<bool> {
    Spectra::new(g).mu2_exceeds(tau)
}

/// Outcome of the exact Ramanujan test with its inertia transcript for M = 4(k−1)I − A².
#[derive(Clone, Debug)]
pub struct RamanujanCertificate {
    pub ramanujan: bool,
    pub degree: u64,
    pub bipartite: bool,
    pub inertia: Inertia,
    pub matrix: RationalMatrix,
}

impl RamanujanCertificate {
    pub fn verify(&self) -> bool {
        let expected_neg = if self.bipartite { 2 } else { 1 };
        self.inertia.verify(&self.matrix) && self.ramanujan == (self.inertia.n_neg == expected_neg)
    }
}

/// 4(k−1)I − A² and its inertia; negative eigenvalues are the adjacency eigenvalues with |λ| > 2√(k−1).
fn ramanujan_matrix<G: WeightedGraph>(g: &G) -> Result<(u64, RationalMatrix, Inertia)> {
    let Some(k) = g.weighted_regular_degree() else {
        return domain("Ramanujan test requires a regular graph");
    };
    if k < 3 {
        return domain("Ramanujan test requires degree at least 3");
    }
    let a = adjacency_matrix(g);
    let n = a.dim();
    let m = SymMatrix::from_fn(n, |i, j| {
        let sq: i64 = (0..n).map(|l| a.get(i, l) * a.get(l, j)).sum();
        let diag = if i == j { 4 * (k as i64 - 1) } else { 0 };
        diag - sq
    });
    let matrix: RationalMatrix = lift(&m);
    let inertia = inertia_shifted(&matrix, &Rational::zero());
    Ok((k, matrix, inertia))
}

/// Ramanujan test on a multigraph using the adjacency matrix with multiplicities.
pub fn is_ramanujan_multigraph<G: WeightedGraph>(g: &G) -> Result<RamanujanCertificate> {
    if !g.is_connected() || g.order() == 0 {
        return domain("Ramanujan test requires a connected graph");
    }
    let (degree, matrix, inertia) = ramanujan_matrix(g)?;
    let bipartite = g.is_bipartite();
    let expected_neg = if bipartite { 2 } else { 1 };
    Ok(RamanujanCertificate { ramanujan: inertia.n_neg == expected_neg, degree, bipartite, inertia, matrix })
}

/// Every adjacency eigenvalue other than ±k lies in [−2√(k−1), 2√(k−1)], without requiring
/// connectivity. Each component contributes k once and each bipartite component −k once.
pub fn meets_ramanujan_bound<G: WeightedGraph>(g: &G) -> Result<bool> {
    if g.order() == 0 {
        return domain("Ramanujan test requires a nonempty graph");
    }
    let (_, _, inertia) = ramanujan_matrix(g)?;
    let comps = g.components();
    let bipartite = comps.iter().filter(|c| component_bipartite(g, c)).count();
    Ok(inertia.n_neg == comps.len() + bipartite)
}

fn component_bipartite<G: WeightedGraph>(g: &G, comp: &[usize]) -> bool {
    let mut side = vec![u8::MAX; g.order()];
    side[comp[0]] = 0;
    let mut stack = vec![comp[0]];
    while let Some(u) = stack.pop() {
        for (v, _) in g.weighted_neighbors(u) {
            if side[v] == u8::MAX {
                side[v] = 1 - side[u];
                stack.push(v);
            } else if side[v] == side[u] {
                return false;
            }
        }
    }
    true
}

/// Exact Ramanujan test for a connected k-regular simple graph with k ≥ 3.
pub fn is_ramanujan(g: &SimpleGraph) -> Result<RamanujanCertificate> {
    is_ramanujan_multigraph(g)
}

/// Floating-point spectra for reports; never used for decisions.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSummary<F> {
    /// Non-increasing.
    pub approx_adjacency_eigenvalues: Vec<F>,
    pub approx_mu2: Option<F>,
    pub is_ramanujan: bool,
    pub bipartite: bool,
}

/// Jacobi spectra in a chosen float type.
pub fn approx_spectrum_in<F: Float, G: WeightedGraph>(g: &G, tol: F) -> SpectrumSummary<F> {
    let to_f = |m: &SymMatrix<i64>| m.map(|&x| F::from(x).expect("small integer"));
    let adj = jacobi_eigenvalues(&to_f(&adjacency_matrix(g)), tol, 200);
    let mut lap = jacobi_eigenvalues(&to_f(&laplacian_matrix(g)), tol, 200);
    lap.reverse();
    SpectrumSummary {
        approx_adjacency_eigenvalues: adj,
        approx_mu2: lap.get(1).copied(),
        is_ramanujan: is_ramanujan_multigraph(g).map(|c| c.ramanujan).unwrap_or(false),
        bipartite: g.is_bipartite(),
    }
}

pub fn approx_spectrum<G: WeightedGraph>(g: &G) -> SpectrumSummary<f64> {
    approx_spectrum_in(g, 1e-10)
}

/// Converts a rational to the nearest f64.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{scale, SimpleGraph};

    fn two_sqrt(k: u64) -> QuadraticNumber {
        QuadraticNumber::new(Rational::zero(), Rational::from_integer(2.into()), k)
    }

    #[test]
    fn adjacency_counts() {
        assert_eq!(count_adjacency_eigenvalues_above(&SimpleGraph::petersen(), &two_sqrt(2)), 1);
        assert_eq!(count_adjacency_eigenvalues_above(&SimpleGraph::complete(4), &QuadraticNumber::zero()), 1);
    }

    #[test]
    fn bound_without_connectivity() {
        let two_k5 = SimpleGraph::complete(5).disjoint_union(&SimpleGraph::complete(5));
        assert!(meets_ramanujan_bound(&two_k5).unwrap());
        assert!(is_ramanujan(&two_k5).is_err());
        let k33 = SimpleGraph::complete_bipartite(3, 3);
        assert!(meets_ramanujan_bound(&k33.disjoint_union(&SimpleGraph::petersen())).unwrap());
        let prism = SimpleGraph::prism(3);
        assert_eq!(meets_ramanujan_bound(&prism).unwrap(), is_ramanujan(&prism).unwrap().ramanujan);
    }

    #[test]
    fn mu2_examples() {
        let k7 = SimpleGraph::complete(7);
        assert!(mu2_exceeds(&k7, &QuadraticNumber::fraction(11, 5)).unwrap());
        let c5 = SimpleGraph::cycle(5);
        assert!(mu2_exceeds(&c5, &QuadraticNumber::integer(1)).unwrap());
        assert!(!mu2_exceeds(&c5, &QuadraticNumber::fraction(3, 2)).unwrap());
        let disc = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(mu2_exceeds(&disc, &QuadraticNumber::integer(1)).is_err());
    }

    #[test]
    fn mu2_at_irrational_threshold() {
        // μ2(C5) = 2 − 2cos 72° = (5 − √5)/2.
        let c5 = SimpleGraph::cycle(5);
        let exact = QuadraticNumber::new(Rational::new(5.into(), 2.into()), Rational::new((-1).into(), 2.into()), 5);
        let s = Spectra::new(&c5);
        assert!(!s.mu2_exceeds(&exact).unwrap());
        assert!(s.mu2_at_least(&exact).unwrap());
        assert!(!s.mu2_exceeds_by_inertia(&exact).unwrap());
        let below = &exact - &QuadraticNumber::fraction(1, 1000);
        assert!(s.mu2_exceeds(&below).unwrap());
        assert!(s.mu2_exceeds_by_inertia(&below).unwrap());
    }

    #[test]
    fn ramanujan_examples() {
        assert!(is_ramanujan(&SimpleGraph::complete(4)).unwrap().ramanujan);
        assert!(is_ramanujan(&SimpleGraph::petersen()).unwrap().ramanujan);
        let prism = SimpleGraph::prism(16);
        let cert = is_ramanujan(&prism).unwrap();
        assert!(!cert.ramanujan);
        assert!(cert.verify());
        let k44 = SimpleGraph::complete_bipartite(4, 4);
        let cert = is_ramanujan(&k44).unwrap();
        assert!(cert.ramanujan && cert.bipartite && cert.inertia.n_neg == 2);
        assert!(is_ramanujan(&SimpleGraph::cycle(6)).is_err());
        assert!(is_ramanujan(&SimpleGraph::path(4)).is_err());
    }

    #[test]
    fn multigraph_convention() {
        // 2K4 is 6-regular; eigenvalues 6 and −2 (×3), |−2| ≤ 2√5.
        let m = scale(&SimpleGraph::complete(4), 2).unwrap();
        assert!(is_ramanujan_multigraph(&m).unwrap().ramanujan);
    }

    #[test]
    fn approx_values() {
        let s = approx_spectrum(&SimpleGraph::petersen());
        let expect = [3.0, 1.0, 1.0, 1.0, 1.0, 1.0, -2.0, -2.0, -2.0, -2.0];
        for (x, y) in s.approx_adjacency_eigenvalues.iter().zip(expect) {
            assert!((x - y).abs() < 1e-8);
        }
        assert!((s.approx_mu2.unwrap() - 2.0).abs() < 1e-8);
        assert!(s.is_ramanujan);
    }

    #[test]
    fn certified_lower_bound() {
        let s = Spectra::new(&SimpleGraph::complete(4));
        assert_eq!(s.mu2_rational_lower_bound().unwrap(), Rational::from_integer(4.into()));
        let c7 = Spectra::new(&SimpleGraph::cycle(7));
        let r = c7.mu2_rational_lower_bound().unwrap();
        assert!(c7.mu2_at_least(&QuadraticNumber::rational(r.clone())).unwrap());
        assert!((rational_to_f64(&r) - (2.0 - 2.0 * (2.0 * std::f64::consts::PI / 7.0).cos())).abs() < 1e-6);
    }
}
