//! Rigidity on irreducible surfaces of revolution.

use std::fmt;
use std::str::FromStr;

use crate::connectivity::vertex_connectivity;
use crate::error::Error;
use crate::graph::SimpleGraph;
use crate::matroid::{matroid_union_rank, BicircularMatroid, GraphicMatroid};
use crate::packing::{packs_k_trees, packs_k_trees_minus_any_edge};
use crate::rigidity::is_rigid_2d;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Sphere,
    Cylinder,
    GeneralRevolution,
}

impl SurfaceKind {
    pub const ALL: [SurfaceKind; 3] = [SurfaceKind::Sphere, SurfaceKind::Cylinder, SurfaceKind::GeneralRevolution];

    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Sphere => "sphere",
            SurfaceKind::Cylinder => "cylinder",
            SurfaceKind::GeneralRevolution => "general_revolution",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        SurfaceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown surface '{s}'")))
    }
}

/// Rank of graphic ⊕ bicircular on E(G).
pub fn tree_plus_unicyclic_rank(g: &SimpleGraph) -> usize {
    let edges = g.edges();
    let tree = GraphicMatroid::new(g.order(), edges.clone());
    let bic = BicircularMatroid::new(g.order(), edges);
    matroid_union_rank(&tree, &bic)
}

pub fn rigid_on_surface(g: &SimpleGraph, s: SurfaceKind) -> bool {
    if g.is_complete() {
        return true;
    }
    match s {
        SurfaceKind::Sphere => is_rigid_2d(g),
        SurfaceKind::Cylinder => packs_k_trees(g, 2).unwrap_or(false),
        SurfaceKind::GeneralRevolution => tree_plus_unicyclic_rank(g) == 2 * g.order() - 1,
    }
}

/// Cylinder rigidity survives deleting any one edge. G − e is never complete, so this is a packing question.
pub fn redundantly_rigid_on_cylinder(g: &SimpleGraph) -> bool {
    if g.order() < 2 {
        return true;
    }
    packs_k_trees_minus_any_edge(g, 2).unwrap_or(false)
}

pub fn globally_rigid_on_cylinder(g: &SimpleGraph) -> bool {
    g.is_complete() || (vertex_connectivity(g).0 >= 2 && redundantly_rigid_on_cylinder(g))
}
