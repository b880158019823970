//! Spectral and structural sufficient conditions, decided exactly, with a soundness harness
//! that confirms every implied property with the exact decision procedures.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::catalog::catalog_get;
use crate::census::{canonical_form, is_vertex_transitive, CanonicalForm};
use crate::connectivity::{edge_connectivity, vertex_connectivity};
use crate::error::{domain, Result};
use crate::graph::{scale, Multigraph, SimpleGraph, WeightedGraph};
use crate::packing::{
    body_bar_globally_rigid, body_bar_rigid, body_hinge_globally_rigid, body_hinge_rigid, packs_k_trees,
    packs_k_trees_minus_any_edge,
};
use crate::rigidity::{is_globally_rigid_2d, is_rigid_2d, vt_globally_rigid_characterization};
use crate::spectral::{is_ramanujan, is_ramanujan_multigraph, Spectra};
use crate::surfaces::{globally_rigid_on_cylinder, redundantly_rigid_on_cylinder, rigid_on_surface, SurfaceKind};
use crate::{QuadraticNumber, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImpliedProperty {
    Rigid,
    GloballyRigid,
    /// Globally rigid, or isomorphic to one of the named catalog entries.
    GloballyRigidUnless(Vec<&'static str>),
    /// Global rigidity agrees with the given value.
    GloballyRigidEquals(bool),
    SpanningTrees(usize),
    StrengthAtLeast { s: u64, t: u64 },
    /// tG − e has s edge-disjoint spanning trees for every edge e of tG.
    ScaledMinusEdgePacks { s: u64, t: u64 },
    EdgeConnected(u64),
    VertexConnected(usize),
    BodyBarRigid(usize),
    BodyBarGloballyRigid(usize),
    BodyHingeRigid(usize),
    BodyHingeGloballyRigid(usize),
    RigidOnSurface(SurfaceKind),
    RedundantlyRigidOnCylinder,
    GloballyRigidOnCylinder,
    Mu2AtMost(QuadraticNumber),
    OrderAtMost(u64),
}

impl fmt::Display for ImpliedProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ImpliedProperty::*;
        match self {
            Rigid => write!(f, "rigid"),
            GloballyRigid => write!(f, "globally_rigid"),
            GloballyRigidUnless(names) => write!(f, "globally_rigid_unless({})", names.join(",")),
            GloballyRigidEquals(b) => write!(f, "globally_rigid={b}"),
            SpanningTrees(k) => write!(f, "spanning_trees>={k}"),
            StrengthAtLeast { s, t } => write!(f, "strength>={s}/{t}"),
            ScaledMinusEdgePacks { s, t } => write!(f, "{t}G-e_packs_{s}_trees"),
            EdgeConnected(l) => write!(f, "edge_connectivity>={l}"),
            VertexConnected(c) => write!(f, "vertex_connectivity>={c}"),
            BodyBarRigid(d) => write!(f, "body_bar_rigid(d={d})"),
            BodyBarGloballyRigid(d) => write!(f, "body_bar_globally_rigid(d={d})"),
            BodyHingeRigid(d) => write!(f, "body_hinge_rigid(d={d})"),
            BodyHingeGloballyRigid(d) => write!(f, "body_hinge_globally_rigid(d={d})"),
            RigidOnSurface(s) => write!(f, "rigid_on_{s}"),
            RedundantlyRigidOnCylinder => write!(f, "redundantly_rigid_on_cylinder"),
            GloballyRigidOnCylinder => write!(f, "globally_rigid_on_cylinder"),
            Mu2AtMost(x) => write!(f, "mu2<={x}"),
            OrderAtMost(n) => write!(f, "order<={n}"),
        }
    }
}

impl ImpliedProperty {
    /// Properties that make sense for multigraphs; `None` for the simple-graph-only ones.
    fn confirm_weighted<G: WeightedGraph>(&self, g: &G) -> Option<Result<bool>> {
        use ImpliedProperty::*;
        Some(match self {
            SpanningTrees(k) => packs_k_trees(g, *k),
            StrengthAtLeast { s, t } => scale(g, *t).and_then(|tg| packs_k_trees(&tg, *s as usize)),
            ScaledMinusEdgePacks { s, t } => scale(g, *t).and_then(|tg| packs_k_trees_minus_any_edge(&tg, *s as usize)),
            EdgeConnected(l) => edge_connectivity(g).map(|(c, _)| c >= *l),
            BodyBarRigid(d) => body_bar_rigid(g, *d),
            BodyBarGloballyRigid(d) => body_bar_globally_rigid(g, *d),
            OrderAtMost(n) => Ok(g.order() as u64 <= *n),
            Mu2AtMost(x) => Spectra::new(g).mu2_exceeds(x).map(|b| !b),
            _ => return None,
        })
    }

    /// Runs the exact decision procedure for this property.
    pub fn confirm(&self, g: &SimpleGraph) -> Result<bool> {
        use ImpliedProperty::*;
        if let Some(r) = self.confirm_weighted(g) {
            return r;
        }
        Ok(match self {
            Rigid => is_rigid_2d(g),
            GloballyRigid => is_globally_rigid_2d(g),
            GloballyRigidUnless(names) => is_globally_rigid_2d(g) || is_one_of(g, names)?,
            GloballyRigidEquals(b) => is_globally_rigid_2d(g) == *b,
            VertexConnected(c) => vertex_connectivity(g).0 >= *c,
            BodyHingeRigid(d) => body_hinge_rigid(g, *d)?,
            BodyHingeGloballyRigid(d) => body_hinge_globally_rigid(g, *d)?,
            RigidOnSurface(s) => rigid_on_surface(g, *s),
            RedundantlyRigidOnCylinder => redundantly_rigid_on_cylinder(g),
            GloballyRigidOnCylinder => globally_rigid_on_cylinder(g),
            _ => unreachable!("handled by confirm_weighted"),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundVerdict {
    pub theorem_id: &'static str,
    pub hypothesis_holds: bool,
    pub implied_properties: Vec<ImpliedProperty>,
    pub threshold: QuadraticNumber,
    pub margin_note: String,
}

impl BoundVerdict {
    fn new(id: &'static str, holds: bool, implied: Vec<ImpliedProperty>, threshold: QuadraticNumber, note: impl Into<String>) -> Self {
        BoundVerdict { theorem_id: id, hypothesis_holds: holds, implied_properties: implied, threshold, margin_note: note.into() }
    }

    fn inapplicable(id: &'static str, implied: Vec<ImpliedProperty>, note: impl Into<String>) -> Self {
        Self::new(id, false, implied, QuadraticNumber::zero(), note)
    }
}

fn int(v: i64) -> QuadraticNumber {
    QuadraticNumber::integer(v)
}

fn frac(p: i64, q: i64) -> QuadraticNumber {
    QuadraticNumber::fraction(p, q)
}

fn add(a: &QuadraticNumber, b: &QuadraticNumber) -> QuadraticNumber {
    a + b
}

fn sub(a: &QuadraticNumber, b: &QuadraticNumber) -> QuadraticNumber {
    a - b
}

fn mul(a: &QuadraticNumber, b: &QuadraticNumber) -> QuadraticNumber {
    a * b
}

fn div(a: &QuadraticNumber, b: &QuadraticNumber) -> QuadraticNumber {
    a / b
}

/// 2√(k−1), the Ramanujan bound.
fn ramanujan_bound(k: u64) -> QuadraticNumber {
    mul(&int(2), &QuadraticNumber::sqrt(k - 1))
}

/// Spectral state shared by the checkers for one graph. Irrational μ2 decisions run both the
/// Sturm path and the quadratic-field inertia path; disagreements are recorded.
struct Probe {
    spectra: Spectra,
    connected: bool,
    n: usize,
    disagreements: std::sync::Mutex<Vec<String>>,
}

impl Probe {
    fn new<G: WeightedGraph>(g: &G) -> Self {
        Probe {
            spectra: Spectra::new(g),
            connected: g.is_connected(),
            n: g.order(),
            disagreements: Default::default(),
        }
    }

    /// μ2 > τ; false whenever μ2 is undefined or zero.
    fn mu2_gt(&self, tau: &QuadraticNumber) -> bool {
        if !self.connected || self.n < 2 {
            return false;
        }
        let sturm = self.spectra.mu2_exceeds(tau).unwrap_or(false);
        if !tau.is_rational() {
            let inertia = self.spectra.mu2_exceeds_by_inertia(tau).unwrap_or(false);
            if inertia != sturm {
                self.disagreements.lock().expect("lock").push(format!("mu2 > {tau}: sturm {sturm}, inertia {inertia}"));
            }
        }
        sturm
    }

    fn adjacency_above(&self, tau: &QuadraticNumber) -> usize {
        let sturm = self.spectra.adjacency_above(tau);
        if !tau.is_rational() {
            let inertia = self.spectra.adjacency_above_by_inertia(tau);
            if inertia != sturm {
                self.disagreements.lock().expect("lock").push(format!("eigenvalues > {tau}: sturm {sturm}, inertia {inertia}"));
            }
        }
        sturm
    }

    fn lambda2_at_most(&self, tau: &QuadraticNumber) -> bool {
        self.adjacency_above(tau) <= 1
    }

    fn lambda2_below(&self, tau: &QuadraticNumber) -> bool {
        self.spectra.lambda2_below(tau)
    }
}

fn delta_of<G: WeightedGraph>(g: &G) -> i64 {
    g.min_weighted_degree() as i64
}

fn spec_rigid(g: &SimpleGraph, p: &Probe) -> Vec<BoundVerdict> {
    use ImpliedProperty::*;
    let d = delta_of(g);
    if d < 6 {
        let note = format!("minimum degree {d} < 6");
        return vec![
            BoundVerdict::inapplicable("min_degree_spectral_rigidity", vec![Rigid], note.clone()),
            BoundVerdict::inapplicable("min_degree_spectral_global_rigidity", vec![GloballyRigid], note),
        ];
    }
    let t1 = frac(2 * d - 1, d - 1);
    let t2 = frac(2 * d, d - 1);
    vec![
        BoundVerdict::new("min_degree_spectral_rigidity", p.mu2_gt(&t1), vec![Rigid], t1, format!("mu2 > 2 + 1/{}", d - 1)),
        BoundVerdict::new(
            "min_degree_spectral_global_rigidity",
            p.mu2_gt(&t2),
            vec![GloballyRigid],
            t2,
            format!("mu2 > 2 + 2/{}", d - 1),
        ),
    ]
}

/// Minimum-degree spectral conditions for rigidity and global rigidity in the plane.
pub fn check_specrigid(g: &SimpleGraph) -> Vec<BoundVerdict> {
    spec_rigid(g, &Probe::new(g))
}

/// Smallest n for which (k − 2√(k−1))·s·(n − s)/n exceeds `target`, i.e. the cut bound forced
/// on a Ramanujan graph by a side of size s beats the target. `None` if no n works.
pub fn min_order_for_cut_bound(k: u64, s: u64, target: u64) -> Option<u64> {
    let c = mul(&sub(&int(k as i64), &ramanujan_bound(k)), &int(s as i64));
    // c·(n − s) > target·n  ⇔  n·(c − target) > c·s.
    let slope = sub(&c, &int(target as i64));
    if slope.sign().is_le() {
        return None;
    }
    let bound = div(&mul(&c, &int(s as i64)), &slope);
    let mut n = bound.to_f64().floor().max(0.0) as u64;
    while int(n as i64) <= bound {
        n += 1;
    }
    while n > 0 && int(n as i64 - 1) > bound {
        n -= 1;
    }
    Some(n)
}

/// (k − 2√(k−1))·a·(n − a)/n, the edge count a Ramanujan graph must have across any cut with sides a and n − a.
pub fn ramanujan_cut_bound(k: u64, n: u64, a: u64) -> QuadraticNumber {
    let gap = sub(&int(k as i64), &ramanujan_bound(k));
    mul(&gap, &frac((a * (n - a)) as i64, n as i64))
}

/// Cut lower bound r·a·(n − a)/n with r ≤ μ2 certified exactly.
pub fn spectral_cut_lower_bound<G: WeightedGraph>(g: &G, a: usize) -> Result<Rational> {
    let n = g.order();
    if a == 0 || a >= n {
        return domain("cut side must be a nonempty proper subset");
    }
    let r = Spectra::new(g).mu2_rational_lower_bound()?;
    Ok(r * Rational::new(BigInt::from(a * (n - a)), BigInt::from(n)))
}

/// Every side of size s ≤ k in a k-regular simple graph sends at least s·(k − s + 1) edges out.
pub fn degree_count_cut_bound(k: u64, s: u64) -> u64 {
    if s > k {
        return 0;
    }
    s * (k - s + 1)
}

/// Whether the mixing inequality k·a·b/n ≤ λ·√(ab(1 − a/n)(1 − b/n)) can hold, i.e. whether disjoint
/// non-adjacent sets of sizes a and b are not ruled out. Decided exactly after squaring.
pub fn eml_disconnection_feasible(k: u64, lambda: &QuadraticNumber, n: u64, a: u64, b: u64) -> bool {
    if a + b > n {
        return false;
    }
    let lhs = int((k * k * a * b) as i64);
    let rhs = mul(&mul(lambda, lambda), &int(((n - a) * (n - b)) as i64));
    lhs <= rhs
}

fn regular_ramanujan(g: &SimpleGraph) -> Option<u64> {
    let k = g.regular_degree()? as u64;
    is_ramanujan(g).ok().filter(|c| c.ramanujan).map(|_| k)
}

/// Ramanujan graphs of large enough degree and order are globally rigid in the plane.
pub fn check_ramanujan_global_rigidity(g: &SimpleGraph) -> Vec<BoundVerdict> {
    ramanujan_gr(g, regular_ramanujan(g))
}

fn ramanujan_gr(g: &SimpleGraph, ram: Option<u64>) -> Vec<BoundVerdict> {
    use ImpliedProperty::GloballyRigid;
    let n = g.order() as u64;
    let k = ram.unwrap_or(0);
    let note = if ram.is_some() { format!("{k}-regular Ramanujan, n = {n}") } else { "not a regular Ramanujan graph".into() };
    let n7 = min_order_for_cut_bound(7, 7, 10).expect("threshold exists");
    let n6 = min_order_for_cut_bound(6, 6, 9).expect("threshold exists");
    vec![
        BoundVerdict::new("ramanujan_degree7_global_rigidity", k == 7 && n >= n7, vec![GloballyRigid], int(n7 as i64), note.clone()),
        BoundVerdict::new("ramanujan_degree6_global_rigidity", k == 6 && n >= n6, vec![GloballyRigid], int(n6 as i64), note.clone()),
        BoundVerdict::new("ramanujan_degree8_global_rigidity", k >= 8, vec![GloballyRigid], int(8), note),
    ]
}

/// Names of the vertex-transitive exceptions.
const VT_EXCEPTIONS: [&str; 3] = ["fig1_special30", "fig2_ring3K4", "fig2_ring5K4"];

fn exception_forms() -> &'static Vec<(&'static str, CanonicalForm)> {
    static FORMS: OnceLock<Vec<(&'static str, CanonicalForm)>> = OnceLock::new();
    FORMS.get_or_init(|| {
        VT_EXCEPTIONS
            .iter()
            .map(|&name| {
                let g = catalog_get(name).expect("catalog entry").graph;
                (name, canonical_form(&g).expect("small graph"))
            })
            .collect()
    })
}

fn is_one_of(g: &SimpleGraph, names: &[&'static str]) -> Result<bool> {
    if names.is_empty() {
        return Ok(false);
    }
    let form = canonical_form(g)?;
    Ok(exception_forms().iter().any(|(name, f)| names.contains(name) && *f == form))
}

fn vt_ramanujan(g: &SimpleGraph, ram: Option<u64>, vt: bool) -> Vec<BoundVerdict> {
    use ImpliedProperty::*;
    let n = g.order();
    let mut out = Vec::new();
    let k = ram.unwrap_or(0);
    let holds = vt && ram.is_some() && (k >= 5 || (k == 4 && (n >= 53 || g.is_bipartite())));
    let unless = if k >= 5 { vec![VT_EXCEPTIONS[0]] } else { Vec::new() };
    out.push(BoundVerdict::new(
        "vt_ramanujan_global_rigidity",
        holds,
        vec![GloballyRigidUnless(unless)],
        ramanujan_bound(k.max(1)),
        format!("vertex-transitive {vt}, Ramanujan degree {k}, n = {n}"),
    ));
    if vt && g.is_connected() && g.regular_degree().is_some_and(|d| d >= 2) {
        if let Ok(expected) = vt_globally_rigid_characterization(g) {
            out.push(BoundVerdict::new(
                "vt_global_rigidity_characterization",
                true,
                vec![GloballyRigidEquals(expected)],
                QuadraticNumber::zero(),
                "degree, order and clique size",
            ));
        }
    }
    out
}

/// Ramanujan vertex-transitive graphs of degree at least 5 (or 4 with n ≥ 53 or bipartite) are globally rigid.
pub fn check_vt_ramanujan(g: &SimpleGraph) -> Result<Vec<BoundVerdict>> {
    let vt = is_vertex_transitive(g)?;
    Ok(vt_ramanujan(g, regular_ramanujan(g), vt))
}

fn tree_packing<G: WeightedGraph>(g: &G, p: &Probe, k: u64, s: u64, t: u64) -> Vec<BoundVerdict> {
    use ImpliedProperty::*;
    let delta = g.min_weighted_degree();
    let m = (0..g.order()).flat_map(|u| g.weighted_neighbors(u)).map(|(_, w)| w).max().unwrap_or(0);
    let simple = m <= 1;
    let mut out = Vec::new();
    let (ki, d) = (k as i64, delta as i64);
    if simple {
        out.push(if delta >= 2 * k {
            let tau = frac(2 * ki - 1, d + 1);
            BoundVerdict::new("spectral_tree_packing", p.mu2_gt(&tau), vec![SpanningTrees(k as usize)], tau, format!("k = {k}"))
        } else {
            BoundVerdict::inapplicable("spectral_tree_packing", vec![SpanningTrees(k as usize)], format!("minimum degree {delta} < 2k = {}", 2 * k))
        });
    }
    out.push(if delta >= 2 * k && m >= 1 {
        let ell = (delta + 1).div_ceil(m).max(2);
        let tau = frac(2 * ki - 1, ell as i64);
        BoundVerdict::new(
            "spectral_multigraph_tree_packing",
            p.mu2_gt(&tau),
            vec![SpanningTrees(k as usize)],
            tau,
            format!("k = {k}, multiplicity {m}, l = {ell}"),
        )
    } else {
        BoundVerdict::inapplicable("spectral_multigraph_tree_packing", vec![SpanningTrees(k as usize)], format!("minimum degree {delta} < 2k = {}", 2 * k))
    });
    if simple && t > 0 {
        let (si, ti) = (s as i64, t as i64);
        out.push(if t * delta >= 2 * s {
            let tau = frac(2 * si - 1, ti * (d + 1));
            BoundVerdict::new("spectral_fractional_strength", p.mu2_gt(&tau), vec![StrengthAtLeast { s, t }], tau, format!("s/t = {s}/{t}"))
        } else {
            BoundVerdict::inapplicable("spectral_fractional_strength", vec![StrengthAtLeast { s, t }], format!("minimum degree {delta} < 2s/t"))
        });
        out.push(if t * delta > 2 * s {
            let tau = frac(2 * si, ti * (d + 1));
            BoundVerdict::new(
                "spectral_scaled_minus_edge_packing",
                p.mu2_gt(&tau),
                vec![ScaledMinusEdgePacks { s, t }],
                tau,
                format!("s/t = {s}/{t}"),
            )
        } else {
            BoundVerdict::inapplicable("spectral_scaled_minus_edge_packing", vec![ScaledMinusEdgePacks { s, t }], format!("minimum degree {delta} <= 2s/t"))
        });
    }
    out
}

/// Spectral tree-packing and strength conditions. `k` trees, fractional target `s/t`.
pub fn check_tree_packing_bounds<G: WeightedGraph>(g: &G, k: u64, s: u64, t: u64) -> Vec<BoundVerdict> {
    tree_packing(g, &Probe::new(g), k, s, t)
}

fn edge_conn(g: &SimpleGraph, p: &Probe, k: u64, ell: u64, ram: Option<u64>) -> Vec<BoundVerdict> {
    use ImpliedProperty::*;
    let n = g.order() as u64;
    let (ki, li, ni) = (k as i64, ell as i64, n as i64);
    let mut out = Vec::new();
    out.push(if n > k + 1 {
        let tau = sub(&int(ki), &frac((li - 1) * ni, (ki + 1) * (ni - ki - 1)));
        BoundVerdict::new("regular_edge_connectivity_order", p.lambda2_at_most(&tau), vec![EdgeConnected(ell)], tau, format!("l = {ell}"))
    } else {
        BoundVerdict::inapplicable("regular_edge_connectivity_order", vec![EdgeConnected(ell)], "complete graph")
    });
    let tau = sub(&int(ki), &frac(2 * (li - 1), ki + 1));
    out.push(BoundVerdict::new("regular_edge_connectivity", p.lambda2_below(&tau), vec![EdgeConnected(ell)], tau, format!("l = {ell}")));
    out.push(BoundVerdict::new(
        "regular_small_order_edge_connectivity",
        n < 2 * k + 2,
        vec![EdgeConnected(k)],
        int(2 * ki + 2),
        format!("n = {n}"),
    ));
    if k >= 3 && g.is_connected() {
        let r = if k.is_multiple_of(2) { k * k + 12 } else { k * k + 8 };
        let tau = div(&add(&int(ki - 2), &QuadraticNumber::sqrt(r)), &int(2));
        out.push(BoundVerdict::new("regular_two_connectivity", p.lambda2_below(&tau), vec![VertexConnected(2)], tau, format!("k = {k}")));
    } else {
        out.push(BoundVerdict::inapplicable("regular_two_connectivity", vec![VertexConnected(2)], "needs a connected graph with k >= 3"));
    }
    let rb = ramanujan_bound(k.max(1));
    let is_ram = ram == Some(k);
    let note = format!("Ramanujan {is_ram}, k = {k}, n = {n}");
    out.push(BoundVerdict::new("ramanujan_full_edge_connectivity", is_ram && k >= 6, vec![EdgeConnected(k)], rb.clone(), note.clone()));
    out.push(BoundVerdict::new("ramanujan_degree5_edge_connectivity", is_ram && k == 5, vec![EdgeConnected(4)], rb.clone(), note.clone()));
    out.push(BoundVerdict::new(
        "ramanujan_degree4_edge_connectivity",
        is_ram && k == 4 && (n >= 20 || n <= 9),
        vec![EdgeConnected(4)],
        rb.clone(),
        note.clone(),
    ));
    out.push(BoundVerdict::new("ramanujan_two_connectivity", is_ram && k >= 4, vec![VertexConnected(2)], rb, note));
    out
}

/// Edge- and vertex-connectivity conditions for a k-regular graph, with target edge connectivity ℓ.
pub fn check_edge_connectivity_bounds(g: &SimpleGraph, ell: u64) -> Result<Vec<BoundVerdict>> {
    let Some(k) = g.regular_degree() else {
        return domain("edge-connectivity bounds need a regular graph");
    };
    let k = k as u64;
    if !(2..=k).contains(&ell) {
        return domain(format!("need k >= l >= 2, got k = {k}, l = {ell}"));
    }
    Ok(edge_conn(g, &Probe::new(g), k, ell, regular_ramanujan(g)))
}

/// k − 2√(k−1) + (2√(k−1) − 1)/⌊m/2⌋.
pub fn nilli_upper_bound(k: u64, m: u64) -> Result<QuadraticNumber> {
    if m <= 1 {
        return domain(format!("diameter must exceed 1, got {m}"));
    }
    if k < 3 {
        return domain(format!("degree must be at least 3, got {k}"));
    }
    let rb = ramanujan_bound(k);
    let head = sub(&int(k as i64), &rb);
    let tail = div(&sub(&rb, &int(1)), &int((m / 2) as i64));
    Ok(add(&head, &tail))
}

/// 1 + k·Σ_{i<m} (k−1)^i, saturating.
pub fn moore_bound(k: u64, m: u64) -> u64 {
    let mut total: u64 = 1;
    let mut layer: u64 = k;
    for _ in 0..m {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(k.saturating_sub(1));
    }
    total
}

fn moore_strict(k: u64, m: u64) -> bool {
    m >= 2 && ![2, 3, 7, 57].contains(&k)
}

/// Largest order a k-regular graph of diameter m can have.
pub fn moore_max_order(k: u64, m: u64) -> u64 {
    moore_bound(k, m) - moore_strict(k, m) as u64
}

/// Smallest diameter a k-regular graph on n vertices can have.
pub fn moore_min_diameter(k: u64, n: u64) -> u64 {
    let mut m = 0;
    while moore_max_order(k, m) < n {
        m += 1;
    }
    m
}

fn regular_structure(g: &SimpleGraph, p: &Probe) -> Vec<BoundVerdict> {
    use ImpliedProperty::*;
    let (Some(k), Some(m)) = (g.regular_degree(), g.diameter()) else {
        return Vec::new();
    };
    let (k, m) = (k as u64, m as u64);
    let mut out = Vec::new();
    if k >= 3 {
        let limit = moore_max_order(k, m);
        out.push(BoundVerdict::new("moore_order_bound", true, vec![OrderAtMost(limit)], int(limit as i64), format!("k = {k}, diameter {m}")));
    }
    if k >= 3 && m > 1 {
        let bound = nilli_upper_bound(k, m).expect("k >= 3, m > 1");
        out.push(BoundVerdict::new("diameter_mu2_upper_bound", p.connected,vec![Mu2AtMost(bound.clone())], bound, format!("k = {k}, diameter {m}")));
    }
    out
}

fn vt_spectral(p: &Probe, k: u64, m: u64) -> BoundVerdict {
    let sq = QuadraticNumber::sqrt(k - 1);
    let ki = int(k as i64);
    let a = sub(&int(1), &div(&mul(&int(2), &sq), &ki));
    let b = div(&sub(&mul(&int(2), &sq), &int(1)), &mul(&ki, &int((m / 2) as i64)));
    let tau = add(&a, &b);
    BoundVerdict::new(
        "vt_spectral_global_rigidity",
        p.mu2_gt(&tau),
        vec![ImpliedProperty::GloballyRigidUnless(VT_EXCEPTIONS.to_vec())],
        tau,
        format!("k = {k}, diameter {m}"),
    )
}

/// Vertex-transitive graphs of degree 4 or 5 with large μ2 relative to their diameter.
pub fn check_vtspec(g: &SimpleGraph) -> Result<BoundVerdict> {
    let k = match g.regular_degree() {
        Some(k @ (4 | 5)) => k as u64,
        _ => return domain("needs a 4- or 5-regular graph"),
    };
    if !is_vertex_transitive(g)? {
        return domain("graph is not vertex-transitive");
    }
    let m = match g.diameter() {
        Some(m) if m > 1 => m as u64,
        _ => return domain("needs a connected graph of diameter > 1"),
    };
    Ok(vt_spectral(&Probe::new(g), k, m))
}

fn body_frameworks<G: WeightedGraph>(g: &G, p: &Probe, ram: Option<u64>, simple: bool) -> Vec<BoundVerdict> {
    use ImpliedProperty::*;
    let delta = delta_of(g);
    let m = (0..g.order()).flat_map(|u| g.weighted_neighbors(u)).map(|(_, w)| w).max().unwrap_or(0);
    let mut out = Vec::new();
    if simple {
        for d in [2usize, 3] {
            let big = (d * (d + 1) / 2) as i64;
            if delta >= 3 {
                let t1 = frac(2 * big - 1, (big - 1) * (delta + 1));
                out.push(BoundVerdict::new("spectral_body_hinge_rigidity", p.mu2_gt(&t1), vec![BodyHingeRigid(d)], t1, format!("d = {d}")));
                if d >= 3 {
                    let t2 = frac(2 * big, (big - 1) * (delta + 1));
                    out.push(BoundVerdict::new(
                        "spectral_body_hinge_global_rigidity",
                        p.mu2_gt(&t2),
                        vec![BodyHingeGloballyRigid(d)],
                        t2,
                        format!("d = {d}"),
                    ));
                }
            } else {
                out.push(BoundVerdict::inapplicable("spectral_body_hinge_rigidity", vec![BodyHingeRigid(d)], "minimum degree < 3"));
            }
        }
    }
    let k = ram.unwrap_or(0);
    let n = g.order();
    for d in [2u64, 3] {
        let big = d * (d + 1) / 2;
        let note = format!("Ramanujan degree {k}, multiplicity {m}, d = {d}");
        let ok = ram.is_some() && m < big;
        out.push(BoundVerdict::new("ramanujan_body_bar_rigidity", ok && k >= d * (d + 1), vec![BodyBarRigid(d as usize)], int((d * (d + 1)) as i64), note.clone()));
        out.push(BoundVerdict::new(
            "ramanujan_body_bar_global_rigidity",
            ok && k >= d * (d + 1) + 2,
            vec![BodyBarGloballyRigid(d as usize)],
            int((d * (d + 1) + 2) as i64),
            note,
        ));
    }
    if simple {
        let note = format!("Ramanujan degree {k}, n = {n}");
        let ram = ram.is_some();
        out.push(BoundVerdict::new("ramanujan_body_hinge_rigidity", ram && k >= 4, vec![BodyHingeRigid(2)], int(4), note.clone()));
        out.push(BoundVerdict::new(
            "ramanujan_planar_body_hinge_global_rigidity",
            ram && (k >= 5 || (k == 4 && (n >= 20 || n <= 9))),
            vec![BodyHingeGloballyRigid(2)],
            int(4),
            note.clone(),
        ));
        out.push(BoundVerdict::new("ramanujan_body_hinge_global_rigidity", ram && k >= 4, vec![BodyHingeGloballyRigid(3)], int(4), note));
    }
    out
}

/// Spectral and Ramanujan conditions for body-bar and body-hinge frameworks in dimensions 2 and 3.
pub fn check_body_bounds(g: &SimpleGraph) -> Vec<BoundVerdict> {
    body_frameworks(g, &Probe::new(g), regular_ramanujan(g), true)
}

fn surfaces(g: &SimpleGraph, p: &Probe, ram: Option<u64>) -> Vec<BoundVerdict> {
    use ImpliedProperty::*;
    let delta = delta_of(g);
    let n = g.order();
    let mut out = Vec::new();
    let non_sphere = vec![RigidOnSurface(SurfaceKind::Cylinder), RigidOnSurface(SurfaceKind::GeneralRevolution)];
    out.push(if delta >= 4 {
        let tau = frac(3, delta + 1);
        BoundVerdict::new("spectral_surface_rigidity", p.mu2_gt(&tau), non_sphere.clone(), tau, format!("minimum degree {delta}"))
    } else {
        BoundVerdict::inapplicable("spectral_surface_rigidity", non_sphere.clone(), "minimum degree < 4")
    });
    out.push(if delta >= 5 {
        let tau = frac(4, delta + 1);
        BoundVerdict::new("spectral_cylinder_redundancy", p.mu2_gt(&tau), vec![RedundantlyRigidOnCylinder], tau, format!("minimum degree {delta}"))
    } else {
        BoundVerdict::inapplicable("spectral_cylinder_redundancy", vec![RedundantlyRigidOnCylinder], "minimum degree < 5")
    });
    let k = ram.unwrap_or(0);
    let mut implied = non_sphere;
    implied.push(GloballyRigidOnCylinder);
    out.push(BoundVerdict::new(
        "ramanujan_surface_rigidity",
        ram.is_some() && (k >= 5 || (k == 4 && (n >= 20 || n <= 9))),
        implied,
        ramanujan_bound(k.max(1)),
        format!("Ramanujan degree {k}, n = {n}"),
    ));
    out
}

/// Spectral and Ramanujan conditions for rigidity on surfaces of revolution.
pub fn check_surface_bounds(g: &SimpleGraph) -> Vec<BoundVerdict> {
    surfaces(g, &Probe::new(g), regular_ramanujan(g))
}

/// Vertex connectivity is at least μ2 for non-complete graphs: μ2 > q − 1 forces κ ≥ q.
fn algebraic_connectivity(g: &SimpleGraph, p: &Probe) -> Option<BoundVerdict> {
    let delta = g.min_degree();
    if g.is_complete() || !p.connected || delta == 0 {
        return None;
    }
    let (mut lo, mut hi) = (0usize, delta);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if p.mu2_gt(&int(mid as i64 - 1)) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    (lo > 0).then(|| {
        BoundVerdict::new(
            "algebraic_vertex_connectivity",
            true,
            vec![ImpliedProperty::VertexConnected(lo)],
            int(lo as i64 - 1),
            format!("mu2 > {}", lo - 1),
        )
    })
}

/// One verdict whose implied property failed its exact check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub theorem_id: &'static str,
    pub property: ImpliedProperty,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct CrossCheckReport {
    pub verdicts: Vec<BoundVerdict>,
    pub violations: Vec<Violation>,
}

impl CrossCheckReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every applicable checker on `g`, in a fixed order.
pub fn all_verdicts(g: &SimpleGraph) -> (Vec<BoundVerdict>, Vec<String>) {
    let p = Probe::new(g);
    let ram = regular_ramanujan(g);
    let n = g.order();
    let mut v = Vec::new();
    if n < 2 {
        return (v, Vec::new());
    }
    v.extend(spec_rigid(g, &p));
    v.extend(ramanujan_gr(g, ram));
    let vt = n <= 64 && g.regular_degree().is_some() && is_vertex_transitive(g).unwrap_or(false);
    v.extend(vt_ramanujan(g, ram, vt));
    let delta = g.min_degree() as u64;
    if delta >= 2 {
        v.extend(tree_packing(g, &p, delta / 2, delta - 1, 2));
    }
    if let Some(k) = g.regular_degree() {
        let k = k as u64;
        for ell in 2..=k {
            v.extend(edge_conn(g, &p, k, ell, ram));
        }
    }
    v.extend(regular_structure(g, &p));
    if vt {
        if let (Some(k @ (4 | 5)), Some(m)) = (g.regular_degree(), g.diameter()) {
            if m > 1 {
                v.push(vt_spectral(&p, k as u64, m as u64));
            }
        }
    }
    v.extend(body_frameworks(g, &p, ram, true));
    v.extend(surfaces(g, &p, ram));
    v.extend(algebraic_connectivity(g, &p));
    let disagreements = p.disagreements.into_inner().expect("lock");
    (v, disagreements)
}

fn confirm_all<F>(verdicts: &[BoundVerdict], mut confirm: F) -> Vec<Violation>
where
    F: FnMut(&ImpliedProperty) -> Result<bool>,
{
    let mut out = Vec::new();
    for v in verdicts.iter().filter(|v| v.hypothesis_holds) {
        for prop in &v.implied_properties {
            match confirm(prop) {
                Ok(true) => {}
                Ok(false) => out.push(Violation { theorem_id: v.theorem_id, property: prop.clone(), detail: v.margin_note.clone() }),
                Err(e) => out.push(Violation { theorem_id: v.theorem_id, property: prop.clone(), detail: e.to_string() }),
            }
        }
    }
    out
}

/// Runs every checker and confirms each implied property of a satisfied hypothesis exactly.
pub fn cross_check(g: &SimpleGraph) -> CrossCheckReport {
    let (verdicts, disagreements) = all_verdicts(g);
    let mut violations = confirm_all(&verdicts, |p| p.confirm(g));
    violations.extend(disagreements.into_iter().map(|d| Violation {
        theorem_id: "exact_path_agreement",
        property: ImpliedProperty::Mu2AtMost(QuadraticNumber::zero()),
        detail: d,
    }));
    CrossCheckReport { verdicts, violations }
}

/// Multigraph version: tree packing, body-bar and diameter conditions.
pub fn cross_check_multigraph(g: &Multigraph) -> CrossCheckReport {
    let p = Probe::new(g);
    let mut verdicts = Vec::new();
    let delta = g.min_weighted_degree();
    if g.order() >= 2 && delta >= 2 {
        verdicts.extend(tree_packing(g, &p, delta / 2, delta - 1, 2));
    }
    let ram = match g.weighted_regular_degree() {
        Some(k) if g.is_connected() => is_ramanujan_multigraph(g).ok().filter(|c| c.ramanujan).map(|_| k),
        _ => None,
    };
    if g.order() >= 2 {
        verdicts.extend(body_frameworks(g, &p, ram, false));
    }
    let violations = confirm_all(&verdicts, |prop| prop.confirm_weighted(g).unwrap_or_else(|| domain("simple-graph property")));
    CrossCheckReport { verdicts, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn holds(vs: &[BoundVerdict], id: &str) -> bool {
        vs.iter().any(|v| v.theorem_id == id && v.hypothesis_holds)
    }

    #[test]
    fn specrigid_examples() {
        let vs = check_specrigid(&SimpleGraph::complete(8));
        assert!(vs.iter().all(|v| v.hypothesis_holds));
        assert!(cross_check(&SimpleGraph::complete(8)).is_sound());
        let vs = check_specrigid(&SimpleGraph::complete(6));
        assert!(vs.iter().all(|v| !v.hypothesis_holds));
        assert!(check_specrigid(&SimpleGraph::cycle(7).complement()).iter().all(|v| !v.hypothesis_holds));
    }

    #[test]
    fn ramanujan_thresholds() {
        assert_eq!(min_order_for_cut_bound(7, 7, 10), Some(22));
        assert_eq!(min_order_for_cut_bound(6, 6, 9), Some(329));
        assert!(ramanujan_cut_bound(7, 22, 7) > int(10));
        assert!(ramanujan_cut_bound(7, 21, 7) < int(10));
        assert_eq!(degree_count_cut_bound(7, 2), 12);
        let vs = check_ramanujan_global_rigidity(&SimpleGraph::complete(8));
        assert!(!holds(&vs, "ramanujan_degree7_global_rigidity"));
        assert!(is_globally_rigid_2d(&SimpleGraph::complete(8)));
        assert!(holds(&check_ramanujan_global_rigidity(&SimpleGraph::complete(9)), "ramanujan_degree8_global_rigidity"));
    }

    #[test]
    fn cut_helpers() {
        let k4 = SimpleGraph::complete(4);
        let lb = spectral_cut_lower_bound(&k4, 2).unwrap();
        assert!(lb <= Rational::from_integer(4.into()));
        // In K4 every pair of vertices is adjacent, and the mixing inequality with λ = 0 excludes
        // non-adjacent pairs.
        assert!(!eml_disconnection_feasible(3, &int(0), 4, 1, 1));
        assert!(eml_disconnection_feasible(3, &int(2), 10, 1, 1));
    }

    #[test]
    fn tree_packing_examples() {
        let vs = check_tree_packing_bounds(&SimpleGraph::complete(6), 2, 1, 1);
        assert!(holds(&vs, "spectral_tree_packing"));
        assert_eq!(vs[0].threshold, frac(3, 6));
        let vs = check_tree_packing_bounds(&SimpleGraph::petersen(), 1, 1, 1);
        assert!(holds(&vs, "spectral_tree_packing"));
        let two_k4 = scale(&SimpleGraph::complete(4), 2).unwrap();
        let vs = check_tree_packing_bounds(&two_k4, 3, 1, 1);
        let v = vs.iter().find(|v| v.theorem_id == "spectral_multigraph_tree_packing").unwrap();
        assert!(v.hypothesis_holds);
        assert_eq!(v.threshold, frac(5, 4));
        assert!(cross_check_multigraph(&two_k4).is_sound());
    }

    #[test]
    fn edge_connectivity_examples() {
        let k5 = SimpleGraph::complete(5);
        let vs = check_edge_connectivity_bounds(&k5, 2).unwrap();
        assert!(holds(&vs, "regular_small_order_edge_connectivity"));
        assert!(check_edge_connectivity_bounds(&SimpleGraph::path(4), 2).is_err());
        assert!(check_edge_connectivity_bounds(&k5, 5).is_err());
    }

    #[test]
    fn nilli_and_moore() {
        let v = nilli_upper_bound(5, 2).unwrap();
        assert_eq!(v, int(4));
        let v = nilli_upper_bound(4, 4).unwrap();
        let expected = add(&sub(&int(4), &ramanujan_bound(4)), &div(&sub(&ramanujan_bound(4), &int(1)), &int(2)));
        assert_eq!(v, expected);
        assert_eq!(nilli_upper_bound(3, 2).unwrap(), int(2));
        assert!(nilli_upper_bound(3, 1).is_err());
        assert!(!Spectra::new(&SimpleGraph::petersen()).mu2_exceeds(&int(2)).unwrap());
        assert_eq!(moore_min_diameter(4, 53), 4);
        assert_eq!(moore_min_diameter(4, 17), 3);
        assert_eq!(moore_min_diameter(3, 10), 2);
        assert_eq!(moore_min_diameter(4, 5), 1);
    }

    #[test]
    fn vtspec_domain() {
        assert!(check_vtspec(&SimpleGraph::petersen()).is_err());
        let fig1 = catalog_get("fig1_special30").unwrap().graph;
        let v = check_vtspec(&fig1).unwrap();
        if v.hypothesis_holds {
            assert!(is_one_of(&fig1, &VT_EXCEPTIONS).unwrap());
        }
    }

    #[test]
    fn bridge_graph_has_no_hypotheses() {
        let g = catalog_get("fig3_cubic_bridge10").unwrap().graph;
        let report = cross_check(&g);
        assert!(report.is_sound(), "{:?}", report.violations);
    }
}
