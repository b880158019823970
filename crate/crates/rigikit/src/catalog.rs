//! Named example graphs transcribed from figure drawings.
//!
//! Vertices are numbered in the order their drawing labels first appear in the transcription
//! below. Only the isomorphism class matters; every entry carries facts that pin it down.

use std::collections::HashMap;
use std::fmt;

use crate::connectivity::edge_connectivity;
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, WeightedGraph};
use crate::linalg::adjacency_matrix;
use crate::packing::body_hinge_globally_rigid;
use crate::poly::{charpoly, Poly};
use crate::rigidity::{is_globally_rigid_2d, is_rigid_2d};
use crate::spectral::is_ramanujan;
use crate::surfaces::redundantly_rigid_on_cylinder;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fact {
    Order(usize),
    Size(usize),
    Regular(usize),
    Bipartite(bool),
    VertexTransitive(bool),
    Ramanujan(bool),
    Rigid(bool),
    GloballyRigid(bool),
    EdgeConnectivity(u64),
    /// The integer polynomial (constant term first) divides the adjacency characteristic polynomial.
    CharpolyDivisibleBy(Vec<i64>),
    BodyHingeGloballyRigid { d: usize, holds: bool },
    RedundantlyRigidOnCylinder(bool),
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::Order(n) => write!(f, "order={n}"),
            Fact::Size(m) => write!(f, "size={m}"),
            Fact::Regular(k) => write!(f, "regular={k}"),
            Fact::Bipartite(b) => write!(f, "bipartite={b}"),
            Fact::VertexTransitive(b) => write!(f, "vertex_transitive={b}"),
            Fact::Ramanujan(b) => write!(f, "ramanujan={b}"),
            Fact::Rigid(b) => write!(f, "rigid={b}"),
            Fact::GloballyRigid(b) => write!(f, "globally_rigid={b}"),
            Fact::EdgeConnectivity(c) => write!(f, "edge_connectivity={c}"),
            Fact::CharpolyDivisibleBy(p) => write!(f, "charpoly_divisible_by={p:?}"),
            Fact::BodyHingeGloballyRigid { d, holds } => write!(f, "body_hinge_globally_rigid(d={d})={holds}"),
            Fact::RedundantlyRigidOnCylinder(b) => write!(f, "redundantly_rigid_on_cylinder={b}"),
        }
    }
}

impl Fact {
    /// Structural facts are cheap and checked on every load.
    fn is_structural(&self) -> bool {
        matches!(self, Fact::Order(_) | Fact::Size(_) | Fact::Regular(_) | Fact::Bipartite(_))
    }

    pub fn check(&self, g: &SimpleGraph) -> bool {
        match self {
            Fact::Order(n) => g.order() == *n,
            Fact::Size(m) => g.size() == *m,
            Fact::Regular(k) => g.regular_degree() == Some(*k),
            Fact::Bipartite(b) => g.is_bipartite() == *b,
            Fact::VertexTransitive(b) => crate::census::is_vertex_transitive(g).is_ok_and(|t| t == *b),
            Fact::Ramanujan(b) => is_ramanujan(g).is_ok_and(|c| c.ramanujan == *b),
            Fact::Rigid(b) => is_rigid_2d(g) == *b,
            Fact::GloballyRigid(b) => is_globally_rigid_2d(g) == *b,
            Fact::EdgeConnectivity(c) => edge_connectivity(g).is_ok_and(|(v, _)| v == *c),
            Fact::CharpolyDivisibleBy(p) => charpoly_divisible_by(g, p),
            Fact::BodyHingeGloballyRigid { d, holds } => body_hinge_globally_rigid(g, *d).is_ok_and(|v| v == *holds),
            Fact::RedundantlyRigidOnCylinder(b) => redundantly_rigid_on_cylinder(g) == *b,
        }
    }
}

/// Monic integer divisors only, so exact division over Q agrees with division over Z.
pub fn charpoly_divisible_by(g: &SimpleGraph, p: &[i64]) -> bool {
    let cp = charpoly(&adjacency_matrix(g));
    let d = Poly::<Rational>::from_i64(p);
    !d.is_zero() && cp.div_rem(&d).1.is_zero()
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub graph: SimpleGraph,
    pub facts: Vec<Fact>,
}

impl CatalogEntry {
    /// Every asserted fact with its outcome.
    pub fn verify(&self) -> Vec<(Fact, bool)> {
        self.facts.iter().map(|f| (f.clone(), f.check(&self.graph))).collect()
    }

    pub fn verified(&self) -> bool {
        self.verify().iter().all(|(_, ok)| *ok)
    }
}

/// Maps drawing labels to dense indices in order of first use.
#[derive(Default)]
struct Drawing {
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
}

impl Drawing {
    fn vertex(&mut self, name: &str) -> usize {
        let next = self.index.len();
        *self.index.entry(name.to_string()).or_insert(next)
    }

    fn edge(&mut self, a: &str, b: &str) {
        let (u, v) = (self.vertex(a), self.vertex(b));
        self.edges.push((u, v));
    }

    /// Space-separated `u-v` pairs.
    fn edges(&mut self, list: &str) {
        for pair in list.split_whitespace() {
            let (a, b) = pair.split_once('-').expect("edge written as u-v");
            self.edge(a, b);
        }
    }

    fn clique(&mut self, names: &[String]) {
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                self.edge(&names[i], &names[j]);
            }
        }
    }

    fn finish(self) -> SimpleGraph {
        SimpleGraph::from_edges(self.index.len(), &self.edges).expect("transcribed edge list is simple")
    }
}

fn labels(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|j| format!("{prefix}{j}")).collect()
}

/// Copies of K4 on x1..x4 for each block x, joined by the listed edges.
fn k4_blocks(blocks: &[&str], joins: &str) -> SimpleGraph {
    let mut d = Drawing::default();
    for b in blocks {
        d.clique(&labels(b, 4));
    }
    d.edges(joins);
    d.finish()
}

fn numbered(count: usize) -> Vec<String> {
    (1..=count).map(|i| i.to_string()).collect()
}

fn ring_blocks(count: usize, joins: &str) -> SimpleGraph {
    let names = numbered(count);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    k4_blocks(&refs, joins)
}

fn special30() -> SimpleGraph {
    let mut d = Drawing::default();
    for b in ["0", "1", "2", "3", "4", "5"] {
        d.clique(&labels(b, 5));
    }
    d.edges("14-23 24-33 34-43 44-53 54-13");
    d.edges("01-51 02-11 03-21 04-31 05-41");
    d.edges("12-45 22-55 32-15 42-25 52-35");
    d.finish()
}

fn ring3() -> SimpleGraph {
    ring_blocks(3, "12-21 22-31 32-11 13-24 23-34 33-14")
}

fn ring5() -> SimpleGraph {
    ring_blocks(5, "12-21 22-31 32-41 42-51 52-11 13-34 23-44 33-54 43-14 53-24")
}

fn ring6() -> SimpleGraph {
    ring_blocks(6, "12-21 22-31 32-41 42-51 52-61 62-11 13-34 23-44 33-54 43-64 53-14 63-24")
}

const HOUSE: &str = "a1-a2 a1-a5 a2-a3 a2-a4 a3-a4 a3-a5 a4-a5";
const K5_MINUS_34: &str = "a1-a2 a1-a3 a1-a4 a1-a5 a2-a3 a2-a4 a2-a5 a3-a5 a4-a5";

fn b_side(s: &str) -> String {
    s.replace('a', "b")
}

fn cubic_bridge10() -> SimpleGraph {
    let mut d = Drawing::default();
    d.edges(HOUSE);
    d.edges(&b_side(HOUSE));
    d.edge("a1", "b1");
    d.finish()
}

fn quartic_cut2_10() -> SimpleGraph {
    let mut d = Drawing::default();
    d.edges(K5_MINUS_34);
    d.edges(&b_side(K5_MINUS_34));
    d.edges("a3-b4 a4-b3");
    d.finish()
}

fn fig4_b() -> SimpleGraph {
    let mut d = Drawing::default();
    d.edges(K5_MINUS_34);
    d.edges("b1-b2 b1-b4 b1-b5 b1-b6 b2-b3 b2-b5 b2-b6 b3-b5 b3-b6 b4-b5 b4-b6");
    d.edges("a3-b4 a4-b3");
    d.finish()
}

/// The drawing leaves the four x1 vertices with degree three. All three ways of pairing them up
/// give isomorphic graphs; opposite blocks are paired here.
fn fig4_c() -> SimpleGraph {
    ring_blocks(4, "12-24 22-34 32-44 42-14 13-33 23-43 11-31 21-41")
}

fn fig4_d() -> SimpleGraph {
    ring_blocks(4, "12-21 22-31 32-41 42-11 13-24 23-34 33-44 43-14")
}

const BIP7: &str = "1-3 1-4 1-6 1-7 2-3 2-4 2-6 2-7 5-3 5-4 5-6 5-7";

/// The seven-vertex bipartite gadget, with labels prefixed.
fn gadget(d: &mut Drawing, p: &str) {
    for pair in BIP7.split_whitespace() {
        let (a, b) = pair.split_once('-').expect("pair");
        d.edge(&format!("{p}{a}"), &format!("{p}{b}"));
    }
}

fn fig5_a() -> SimpleGraph {
    let mut d = Drawing::default();
    gadget(&mut d, "a");
    gadget(&mut d, "b");
    d.edges("a3-c1 a6-c1 a4-c2 a7-c2 b3-c1 b6-c1 b4-c2 b7-c2");
    d.finish()
}

fn fig5_b() -> SimpleGraph {
    let mut d = Drawing::default();
    gadget(&mut d, "a");
    gadget(&mut d, "b");
    d.edges("d1-d4 d3-d2 d1-d6 d1-d8 d3-d6 d3-d8 d5-d2 d5-d4 d5-d6 d5-d8 d7-d2 d7-d4 d7-d6 d7-d8");
    d.edges("a4-b4 a7-b7 a3-d3 a6-d1 b3-d4 b6-d2");
    d.finish()
}

fn fig6() -> SimpleGraph {
    let mut d = Drawing::default();
    for p in ["1", "2", "3", "4"] {
        gadget(&mut d, p);
    }
    d.edges("13-c2 16-c3 14-c1 17-c4");
    d.edges("23-c3 26-c4 24-c2 27-c1");
    d.edges("33-c4 36-c1 34-c3 37-c2");
    d.edges("43-c1 46-c2 44-c4 47-c3");
    d.finish()
}

/// Read literally, the drawing sends x2 of inner block i to outer block i + 5, which contracts to an
/// antiprism and is neither vertex-transitive nor Ramanujan. Sending it to block i + 6 instead
/// contracts to K4,4 and restores every stated fact.
fn fig7_d() -> SimpleGraph {
    ring_blocks(
        8,
        "52-61 62-71 72-81 82-51 13-24 23-34 33-44 43-14 11-53 21-63 31-73 41-83 12-74 22-84 32-54 42-64",
    )
}

fn fig7_e() -> SimpleGraph {
    k4_blocks(
        &["0", "1", "2", "3", "4", "5", "6", "7", "8"],
        "13-02 33-04 23-03 43-01 52-61 62-71 72-81 82-51 12-34 22-44 21-74 31-73 14-53 42-54 11-64 24-63 41-83 32-84",
    )
}

fn fig7_f() -> SimpleGraph {
    // Block ten is written with a "10" prefix.
    ring_blocks(
        10,
        "14-64 13-24 12-31 11-71 21-54 22-44 34-41 33-51 62-93 63-84 73-82 72-91 \
         61-43 81-23 94-32 74-52 101-53 102-92 103-83 104-42",
    )
}

fn fig8_a() -> SimpleGraph {
    let mut d = Drawing::default();
    d.edges(HOUSE);
    d.edges("b1-b2 b1-b3 b2-b3 b2-b5 b3-b6 b4-b5 b4-b6 b5-b6 b1-b7 b4-b7 a1-b7");
    d.finish()
}

fn fig8_b() -> SimpleGraph {
    let mut d = Drawing::default();
    d.edges(HOUSE);
    d.edges("b1-b3 b2-b3 b1-b4 b2-b5 b3-b6 b4-b5 b4-b6 b5-b6 b1-b7 b2-b7 a1-b7");
    d.finish()
}

fn fig8_c() -> SimpleGraph {
    let mut d = Drawing::default();
    d.edges(HOUSE);
    d.edges("b1-b4 b1-b6 b3-b2 b3-b4 b3-b6 b5-b2 b5-b4 b5-b6 b1-b7 b2-b7 a1-b7");
    d.finish()
}

const HALF9: &str = "a1-a2 a1-a4 a3-a2 a3-a6 a5-a4 a5-a6 a1-a7 a3-a7 a7-a9 a6-a9 a2-a8 a4-a8 a8-a10 a5-a10";

fn fig9_a() -> SimpleGraph {
    let mut d = Drawing::default();
    d.edges(HALF9);
    d.edges(&b_side(HALF9));
    d.edges("a9-b9 a10-b10");
    d.finish()
}

fn fig9_b() -> SimpleGraph {
    let mut d = Drawing::default();
    d.edges("a1-a2 a1-a4 a3-a2 a3-a4 a5-a6");
    d.edges("a1-a7 a3-a9 a5-a7 a5-a9 a7-a11 a9-a11");
    d.edges("a2-a8 a4-a10 a6-a8 a6-a10 a8-a12 a10-a12");
    d.edges("b1-b2 b1-b4 b1-b6 b3-b2 b3-b4 b3-b6 b5-b2 b5-b4");
    d.edges("b5-b7 b6-b8 b7-b8 a11-b8 a12-b7");
    d.finish()
}

type Builder = fn() -> SimpleGraph;

struct Recipe {
    name: &'static str,
    description: &'static str,
    build: Builder,
    facts: fn() -> Vec<Fact>,
}

fn vt_nonrigid(n: usize) -> Vec<Fact> {
    use Fact::*;
    vec![Order(n), Regular(4), VertexTransitive(true), Ramanujan(true), Rigid(false)]
}

fn quartic_nonrigid(n: usize) -> Vec<Fact> {
    use Fact::*;
    vec![Order(n), Regular(4), Ramanujan(true), Rigid(false)]
}

fn cubic(n: usize, ec: u64) -> Vec<Fact> {
    use Fact::*;
    vec![Order(n), Size(3 * n / 2), Regular(3), Ramanujan(true), EdgeConnectivity(ec)]
}

const RECIPES: &[Recipe] = &[
    Recipe {
        name: "fig1_special30",
        description: "K6 with every vertex replaced by K5; rigid, vertex-transitive, not globally rigid",
        build: special30,
        facts: || {
            use Fact::*;
            vec![
                Order(30),
                Regular(5),
                VertexTransitive(true),
                Ramanujan(true),
                Rigid(true),
                GloballyRigid(false),
            ]
        },
    },
    Recipe {
        name: "fig2_ring3K4",
        description: "ring of three K4 blocks; rigid, vertex-transitive, not globally rigid",
        build: ring3,
        facts: || {
            use Fact::*;
            vec![
                Order(12),
                Regular(4),
                VertexTransitive(true),
                Ramanujan(true),
                Rigid(true),
                GloballyRigid(false),
            ]
        },
    },
    Recipe {
        name: "fig2_ring5K4",
        description: "ring of five K4 blocks; vertex-transitive, not rigid",
        build: ring5,
        facts: || {
            use Fact::*;
            vec![Order(20), Regular(4), VertexTransitive(true), Ramanujan(true), Rigid(false), GloballyRigid(false)]
        },
    },
    Recipe {
        name: "fig3_cubic_bridge10",
        description: "cubic Ramanujan graph with a bridge",
        build: cubic_bridge10,
        facts: || {
            let mut f = cubic(10, 1);
            f.push(Fact::CharpolyDivisibleBy(vec![-2, -7, 0, 1]));
            f
        },
    },
    Recipe {
        name: "fig3_quartic_cut2_10",
        description: "quartic Ramanujan graph with a two-edge cut",
        build: quartic_cut2_10,
        facts: || {
            use Fact::*;
            vec![
                Order(10),
                Regular(4),
                Ramanujan(true),
                EdgeConnectivity(2),
                CharpolyDivisibleBy(vec![-8, -1, 1]),
                BodyHingeGloballyRigid { d: 2, holds: false },
                RedundantlyRigidOnCylinder(false),
            ]
        },
    },
    Recipe { name: "fig4_a", description: "non-rigid quartic Ramanujan graph", build: quartic_cut2_10, facts: || quartic_nonrigid(10) },
    Recipe { name: "fig4_b", description: "non-rigid quartic Ramanujan graph", build: fig4_b, facts: || quartic_nonrigid(11) },
    Recipe { name: "fig4_c", description: "non-rigid quartic Ramanujan graph", build: fig4_c, facts: || quartic_nonrigid(16) },
    Recipe { name: "fig4_d", description: "non-rigid quartic Ramanujan graph", build: fig4_d, facts: || quartic_nonrigid(16) },
    Recipe {
        name: "fig5_a",
        description: "bipartite quartic Ramanujan graph, rigid but not globally rigid",
        build: fig5_a,
        facts: || {
            use Fact::*;
            vec![Order(16), Regular(4), Bipartite(true), Ramanujan(true), Rigid(true), GloballyRigid(false)]
        },
    },
    Recipe {
        name: "fig5_b",
        description: "bipartite quartic Ramanujan graph, rigid but not globally rigid",
        build: fig5_b,
        facts: || {
            use Fact::*;
            vec![Order(22), Regular(4), Bipartite(true), Ramanujan(true), Rigid(true), GloballyRigid(false)]
        },
    },
    Recipe {
        name: "fig6_bip28",
        description: "bipartite quartic Ramanujan graph that is not rigid",
        build: fig6,
        facts: || {
            use Fact::*;
            vec![Order(32), Regular(4), Bipartite(true), Ramanujan(true), Rigid(false)]
        },
    },
    Recipe { name: "fig7_a", description: "vertex-transitive non-rigid Ramanujan graph", build: fig4_d, facts: || vt_nonrigid(16) },
    Recipe { name: "fig7_b", description: "vertex-transitive non-rigid Ramanujan graph", build: ring5, facts: || vt_nonrigid(20) },
    Recipe { name: "fig7_c", description: "vertex-transitive non-rigid Ramanujan graph", build: ring6, facts: || vt_nonrigid(24) },
    Recipe { name: "fig7_d", description: "vertex-transitive non-rigid Ramanujan graph", build: fig7_d, facts: || vt_nonrigid(32) },
    Recipe { name: "fig7_e", description: "vertex-transitive non-rigid Ramanujan graph", build: fig7_e, facts: || vt_nonrigid(36) },
    Recipe { name: "fig7_f", description: "vertex-transitive non-rigid Ramanujan graph", build: fig7_f, facts: || vt_nonrigid(40) },
    Recipe { name: "fig8_a", description: "cubic Ramanujan graph with a bridge", build: fig8_a, facts: || cubic(12, 1) },
    Recipe { name: "fig8_b", description: "cubic Ramanujan graph with a bridge", build: fig8_b, facts: || cubic(12, 1) },
    Recipe { name: "fig8_c", description: "cubic Ramanujan graph with a bridge", build: fig8_c, facts: || cubic(12, 1) },
    Recipe { name: "fig9_a", description: "cubic Ramanujan graph with a two-edge cut", build: fig9_a, facts: || cubic(20, 2) },
    Recipe { name: "fig9_b", description: "cubic Ramanujan graph with a two-edge cut", build: fig9_b, facts: || cubic(20, 2) },
];

pub fn catalog_names() -> Vec<&'static str> {
    RECIPES.iter().map(|s| s.name).collect()
}

/// Looks up an entry; structural facts are checked here, the rest by [`CatalogEntry::verify`].
pub fn catalog_get(name: &str) -> Result<CatalogEntry> {
    let recipe = RECIPES.iter().find(|s| s.name == name).ok_or_else(|| Error::Lookup(name.to_string()))?;
    let entry = CatalogEntry { name: recipe.name, description: recipe.description, graph: (recipe.build)(), facts: (recipe.facts)() };
    if let Some(f) = entry.facts.iter().find(|f| f.is_structural() && !f.check(&entry.graph)) {
        return Err(Error::Structure(format!("catalog entry {name} fails {f}")));
    }
    Ok(entry)
}

pub fn catalog_all() -> Result<Vec<CatalogEntry>> {
    RECIPES.iter().map(|s| catalog_get(s.name)).collect()
}
