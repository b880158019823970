//! Per-graph property reports and their JSON/CSV encodings.

use std::collections::BTreeMap;
use std::time::Instant;

use rigikit::bounds::{cross_check, BoundVerdict, Violation};
use rigikit::census::CensusRow;
use rigikit::connectivity::{edge_connectivity, jj_mixed_condition, vertex_connectivity};
use rigikit::graph6::emit_graph6;
use rigikit::packing::{body_bar_globally_rigid, body_bar_rigid, body_hinge_globally_rigid, body_hinge_rigid, max_tree_packing, strength};
use rigikit::rigidity::{is_globally_rigid_2d, is_redundantly_rigid_2d, is_rigid_2d};
use rigikit::spectral::{approx_spectrum, is_ramanujan, meets_ramanujan_bound};
use rigikit::surfaces::{globally_rigid_on_cylinder, redundantly_rigid_on_cylinder, rigid_on_surface, SurfaceKind};
use rigikit::{QuadraticNumber, Rational, SimpleGraph, WeightedGraph};
use serde::Serialize;

pub const REPORT_SCHEMA: &str = "rigikit.property_report/v1";
pub const CENSUS_SCHEMA: &str = "rigikit.census_row/v1";

pub fn rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Serialize)]
pub struct Quadratic {
    pub a: String,
    pub b: String,
    pub m: u64,
}

impl From<&QuadraticNumber> for Quadratic {
    fn from(x: &QuadraticNumber) -> Self {
        Quadratic { a: rational(x.a()), b: rational(x.b()), m: x.m() }
    }
}

#[derive(Serialize)]
pub struct Basic {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub regular_degree: Option<usize>,
    pub bipartite: bool,
    pub connected: bool,
    pub diameter: Option<usize>,
}

#[derive(Serialize)]
pub struct Spectral {
    pub is_ramanujan: bool,
    pub meets_ramanujan_bound: Option<bool>,
    pub approx_lambda2: Option<f64>,
    pub approx_mu2: Option<f64>,
}

#[derive(Serialize)]
pub struct Connectivity {
    pub edge: Option<u64>,
    pub vertex: usize,
    pub jj_mixed: bool,
}

#[derive(Serialize)]
pub struct Rigidity {
    pub rigid: bool,
    pub redundantly_rigid: bool,
    pub globally_rigid: bool,
}

#[derive(Serialize)]
pub struct Packing {
    pub tree_count: Option<usize>,
    pub strength: Option<String>,
}

#[derive(Serialize)]
pub struct Body {
    pub d: usize,
    pub body_bar_rigid: Option<bool>,
    pub body_bar_globally_rigid: Option<bool>,
    pub body_hinge_rigid: Option<bool>,
    pub body_hinge_globally_rigid: Option<bool>,
}

#[derive(Serialize)]
pub struct Surfaces {
    pub sphere: bool,
    pub cylinder: bool,
    pub general_revolution: bool,
    pub redundantly_rigid_on_cylinder: bool,
    pub globally_rigid_on_cylinder: bool,
}

#[derive(Serialize)]
pub struct Verdict {
    pub theorem_id: &'static str,
    pub hypothesis_holds: bool,
    pub implied: Vec<String>,
    pub threshold: Quadratic,
    pub note: String,
}

impl From<&BoundVerdict> for Verdict {
    fn from(v: &BoundVerdict) -> Self {
        Verdict {
            theorem_id: v.theorem_id,
            hypothesis_holds: v.hypothesis_holds,
            implied: v.implied_properties.iter().map(ToString::to_string).collect(),
            threshold: (&v.threshold).into(),
            note: v.margin_note.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct ViolationEntry {
    pub theorem_id: &'static str,
    pub property: String,
    pub detail: String,
}

impl From<&Violation> for ViolationEntry {
    fn from(v: &Violation) -> Self {
        ViolationEntry { theorem_id: v.theorem_id, property: v.property.to_string(), detail: v.detail.clone() }
    }
}

#[derive(Serialize)]
pub struct PropertyReport {
    pub schema: &'static str,
    pub line: usize,
    pub graph6: String,
    pub basic: Basic,
    pub spectral: Spectral,
    pub connectivity: Connectivity,
    pub rigidity: Rigidity,
    pub packing: Packing,
    pub body: Vec<Body>,
    pub surfaces: Surfaces,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<Verdict>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<Vec<ViolationEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, f64>>,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub dims: Vec<usize>,
    pub bounds: bool,
    pub timings: bool,
}

struct Clock {
    on: bool,
    laps: BTreeMap<&'static str, f64>,
}

impl Clock {
    fn time<T>(&mut self, name: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.on {
            self.laps.insert(name, start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }
}

pub fn analyze(line: usize, g: &SimpleGraph, opts: &AnalyzeOptions) -> PropertyReport {
    let mut clock = Clock { on: opts.timings, laps: BTreeMap::new() };
    let n = g.order();
    let basic = Basic {
        n,
        m: g.size(),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        regular_degree: g.regular_degree(),
        bipartite: g.is_bipartite(),
        connected: g.is_connected(),
        diameter: g.diameter(),
    };
    let spectral = clock.time("spectral", || {
        let approx = approx_spectrum(g);
        Spectral {
            is_ramanujan: is_ramanujan(g).is_ok_and(|c| c.ramanujan),
            meets_ramanujan_bound: meets_ramanujan_bound(g).ok(),
            approx_lambda2: approx.approx_adjacency_eigenvalues.get(1).copied(),
            approx_mu2: approx.approx_mu2,
        }
    });
    let connectivity = clock.time("connectivity", || Connectivity {
        edge: edge_connectivity(g).ok().map(|(c, _)| c),
        vertex: vertex_connectivity(g).0,
        jj_mixed: jj_mixed_condition(g),
    });
    let rigidity = clock.time("rigidity", || Rigidity {
        rigid: is_rigid_2d(g),
        redundantly_rigid: is_redundantly_rigid_2d(g),
        globally_rigid: is_globally_rigid_2d(g),
    });
    let packing = clock.time("packing", || Packing {
        tree_count: max_tree_packing(g).ok().map(|p| p.tree_count),
        strength: strength(g).ok().map(|s| rational(&s.value)),
    });
    let body = clock.time("body", || {
        opts.dims
            .iter()
            .map(|&d| Body {
                d,
                body_bar_rigid: body_bar_rigid(g, d).ok(),
                body_bar_globally_rigid: body_bar_globally_rigid(g, d).ok(),
                body_hinge_rigid: body_hinge_rigid(g, d).ok(),
                body_hinge_globally_rigid: body_hinge_globally_rigid(g, d).ok(),
            })
            .collect()
    });
    let surfaces = clock.time("surfaces", || Surfaces {
        sphere: rigid_on_surface(g, SurfaceKind::Sphere),
        cylinder: rigid_on_surface(g, SurfaceKind::Cylinder),
        general_revolution: rigid_on_surface(g, SurfaceKind::GeneralRevolution),
        redundantly_rigid_on_cylinder: redundantly_rigid_on_cylinder(g),
        globally_rigid_on_cylinder: globally_rigid_on_cylinder(g),
    });
    let (bounds, violations) = if opts.bounds {
        let report = clock.time("bounds", || cross_check(g));
        (
            Some(report.verdicts.iter().map(Verdict::from).collect()),
            Some(report.violations.iter().map(ViolationEntry::from).collect()),
        )
    } else {
        (None, None)
    };
    PropertyReport {
        schema: REPORT_SCHEMA,
        line,
        graph6: emit_graph6(g),
        basic,
        spectral,
        connectivity,
        rigidity,
        packing,
        body,
        surfaces,
        bounds,
        violations,
        timings_ms: opts.timings.then_some(clock.laps),
    }
}

fn cell<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

pub fn csv_header(opts: &AnalyzeOptions) -> Vec<String> {
    let mut h: Vec<String> = [
        "line",
        "graph6",
        "n",
        "m",
        "min_degree",
        "max_degree",
        "regular_degree",
        "bipartite",
        "connected",
        "diameter",
        "is_ramanujan",
        "meets_ramanujan_bound",
        "approx_lambda2",
        "approx_mu2",
        "edge_connectivity",
        "vertex_connectivity",
        "jj_mixed",
        "rigid",
        "redundantly_rigid",
        "globally_rigid",
        "tree_count",
        "strength",
    ]
    .map(String::from)
    .to_vec();
    for d in &opts.dims {
        for k in ["body_bar_rigid", "body_bar_globally_rigid", "body_hinge_rigid", "body_hinge_globally_rigid"] {
            h.push(format!("{k}_d{d}"));
        }
    }
    h.extend(
        ["rigid_sphere", "rigid_cylinder", "rigid_general_revolution", "redundantly_rigid_on_cylinder", "globally_rigid_on_cylinder"]
            .map(String::from),
    );
    if opts.bounds {
        h.push("satisfied_bounds".into());
        h.push("violations".into());
    }
    h
}

pub fn csv_record(r: &PropertyReport) -> Vec<String> {
    let b = &r.basic;
    let mut row = vec![
        r.line.to_string(),
        r.graph6.clone(),
        b.n.to_string(),
        b.m.to_string(),
        b.min_degree.to_string(),
        b.max_degree.to_string(),
        cell(b.regular_degree),
        b.bipartite.to_string(),
        b.connected.to_string(),
        cell(b.diameter),
        r.spectral.is_ramanujan.to_string(),
        cell(r.spectral.meets_ramanujan_bound),
        cell(r.spectral.approx_lambda2),
        cell(r.spectral.approx_mu2),
        cell(r.connectivity.edge),
        r.connectivity.vertex.to_string(),
        r.connectivity.jj_mixed.to_string(),
        r.rigidity.rigid.to_string(),
        r.rigidity.redundantly_rigid.to_string(),
        r.rigidity.globally_rigid.to_string(),
        cell(r.packing.tree_count),
        cell(r.packing.strength.clone()),
    ];
    for body in &r.body {
        row.extend([body.body_bar_rigid, body.body_bar_globally_rigid, body.body_hinge_rigid, body.body_hinge_globally_rigid].map(cell));
    }
    let s = &r.surfaces;
    row.extend(
        [s.sphere, s.cylinder, s.general_revolution, s.redundantly_rigid_on_cylinder, s.globally_rigid_on_cylinder].map(|x| x.to_string()),
    );
    if let (Some(bounds), Some(violations)) = (&r.bounds, &r.violations) {
        let mut held: Vec<&str> = Vec::new();
        for v in bounds.iter().filter(|v| v.hypothesis_holds) {
            if !held.contains(&v.theorem_id) {
                held.push(v.theorem_id);
            }
        }
        row.push(held.join(";"));
        let bad: Vec<String> = violations.iter().map(|v| format!("{}:{}", v.theorem_id, v.property)).collect();
        row.push(bad.join(";"));
    }
    row
}

#[derive(Serialize)]
pub struct CensusFilterJson {
    pub connected: bool,
    pub bipartite: bool,
    pub vertex_transitive: bool,
}

#[derive(Serialize)]
pub struct CensusJson {
    pub schema: &'static str,
    pub n: usize,
    pub k: usize,
    pub filter: CensusFilterJson,
    pub total: usize,
    pub ramanujan: usize,
    pub eigenvalue_bound: usize,
    pub rigid: usize,
    pub globally_rigid: usize,
    pub rigid_not_gr: usize,
    pub edge_connectivity: BTreeMap<String, usize>,
}

impl From<&CensusRow> for CensusJson {
    fn from(r: &CensusRow) -> Self {
        CensusJson {
            schema: CENSUS_SCHEMA,
            n: r.n,
            k: r.k,
            filter: CensusFilterJson {
                connected: r.filter.connected,
                bipartite: r.filter.bipartite,
                vertex_transitive: r.filter.vertex_transitive,
            },
            total: r.total,
            ramanujan: r.ramanujan,
            eigenvalue_bound: r.eigenvalue_bound,
            rigid: r.rigid,
            globally_rigid: r.globally_rigid,
            rigid_not_gr: r.rigid_not_gr,
            edge_connectivity: r.edge_connectivity.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

pub const CENSUS_CSV_HEADER: [&str; 13] = [
    "n",
    "k",
    "connected",
    "bipartite",
    "vertex_transitive",
    "total",
    "ramanujan",
    "eigenvalue_bound",
    "rigid",
    "globally_rigid",
    "rigid_not_gr",
    "edge_connectivity",
    "schema",
];

pub fn census_csv_record(r: &CensusJson) -> Vec<String> {
    let hist: Vec<String> = r.edge_connectivity.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    vec![
        r.n.to_string(),
        r.k.to_string(),
        r.filter.connected.to_string(),
        r.filter.bipartite.to_string(),
        r.filter.vertex_transitive.to_string(),
        r.total.to_string(),
        r.ramanujan.to_string(),
        r.eigenvalue_bound.to_string(),
        r.rigid.to_string(),
        r.globally_rigid.to_string(),
        r.rigid_not_gr.to_string(),
        hist.join(";"),
        r.schema.to_string(),
    ]
}
