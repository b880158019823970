//! Small-order census of regular graphs and the tables built from it.

mod canon;
mod enumerate;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use canon::{automorphism_orbits, canonical_form, canonical_labeling, is_vertex_transitive, CanonicalForm, Labeling};
pub use enumerate::{enumerate_all_graphs, enumerate_regular, guard_limit};

use crate::connectivity::edge_connectivity;
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, WeightedGraph};
use crate::rigidity::{is_globally_rigid_2d, is_rigid_2d};
use crate::spectral::{is_ramanujan, meets_ramanujan_bound};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusFilter {
    pub connected: bool,
    pub bipartite: bool,
    pub vertex_transitive: bool,
    pub force: bool,
}

impl CensusFilter {
    pub fn connected() -> Self {
        CensusFilter { connected: true, ..Default::default() }
    }

    pub fn bipartite(mut self) -> Self {
        self.bipartite = true;
        self
    }

    pub fn vertex_transitive(mut self) -> Self {
        self.vertex_transitive = true;
        self
    }
}

/// Per-graph classification used to build census rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClass {
    pub graph: SimpleGraph,
    pub ramanujan: bool,
    /// Eigenvalues other than ±k within 2√(k−1), connected or not.
    pub eigenvalue_bound: bool,
    /// Only computed for Ramanujan graphs.
    pub rigid: Option<bool>,
    pub globally_rigid: Option<bool>,
    pub edge_connectivity: Option<u64>,
}

/// Counts for one (n, k, filter) stratum. Rigidity counts and the histogram are within the Ramanujan graphs.
/// `eigenvalue_bound` also counts disconnected graphs whose eigenvalues other than ±k obey the bound;
/// it equals `ramanujan` whenever the filter requires connectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub k: usize,
    pub filter: CensusFilter,
    pub total: usize,
    pub ramanujan: usize,
    pub eigenvalue_bound: usize,
    pub rigid: usize,
    pub globally_rigid: usize,
    pub rigid_not_gr: usize,
    pub edge_connectivity: BTreeMap<u64, usize>,
}

pub fn classify(g: SimpleGraph) -> GraphClass {
    let ramanujan = is_ramanujan(&g).is_ok_and(|c| c.ramanujan);
    if !ramanujan {
        let eigenvalue_bound = !g.is_connected() && meets_ramanujan_bound(&g).unwrap_or(false);
        return GraphClass { graph: g, ramanujan, eigenvalue_bound, rigid: None, globally_rigid: None, edge_connectivity: None };
    }
    let rigid = is_rigid_2d(&g);
    let globally_rigid = rigid && is_globally_rigid_2d(&g);
    let ec = edge_connectivity(&g).map(|(c, _)| c).ok();
    GraphClass { graph: g, ramanujan, eigenvalue_bound: true, rigid: Some(rigid), globally_rigid: Some(globally_rigid), edge_connectivity: ec }
}

/// The graphs of a stratum, classified, in enumeration order.
pub fn census_graphs(n: usize, k: usize, filter: CensusFilter) -> Result<Vec<GraphClass>> {
    let graphs = enumerate_regular(n, k, filter.connected, filter.bipartite, filter.force)?;
    let kept: Vec<SimpleGraph> = if filter.vertex_transitive {
        let flags: Vec<bool> = graphs.par_iter().map(is_vertex_transitive).collect::<Result<_>>()?;
        graphs.into_iter().zip(flags).filter(|(_, f)| *f).map(|(g, _)| g).collect()
    } else {
        graphs
    };
    Ok(kept.into_par_iter().map(classify).collect())
}

pub fn row_from(n: usize, k: usize, filter: CensusFilter, classes: &[GraphClass]) -> CensusRow {
    let mut row = CensusRow {
        n,
        k,
        filter,
        total: classes.len(),
        ramanujan: 0,
        eigenvalue_bound: classes.iter().filter(|c| c.eigenvalue_bound).count(),
        rigid: 0,
        globally_rigid: 0,
        rigid_not_gr: 0,
        edge_connectivity: BTreeMap::new(),
    };
    for c in classes.iter().filter(|c| c.ramanujan) {
        row.ramanujan += 1;
        let rigid = c.rigid == Some(true);
        let gr = c.globally_rigid == Some(true);
        row.rigid += rigid as usize;
        row.globally_rigid += gr as usize;
        row.rigid_not_gr += (rigid && !gr) as usize;
        if let Some(ec) = c.edge_connectivity {
            *row.edge_connectivity.entry(ec).or_default() += 1;
        }
    }
    row
}

pub fn census_table(n: usize, k: usize, filter: CensusFilter) -> Result<CensusRow> {
    let classes = census_graphs(n, k, filter)?;
    Ok(row_from(n, k, filter, &classes))
}

/// Connected cubic Ramanujan graphs with a bridge, for every even order up to `n_max`.
pub fn cubic_low_connectivity_scan(n_max: usize) -> Result<Vec<SimpleGraph>> {
    if n_max > 14 {
        return Err(Error::Guard(format!("cubic scan is limited to n ≤ 14, requested {n_max}")));
    }
    let mut out = Vec::new();
    for n in (4..=n_max).step_by(2) {
        let graphs = enumerate_regular(n, 3, true, false, false)?;
        let hits: Vec<SimpleGraph> = graphs
            .into_par_iter()
            .filter(|g| edge_connectivity(g).is_ok_and(|(c, _)| c == 1))
            .filter(|g| is_ramanujan(g).is_ok_and(|c| c.ramanujan))
            .collect();
        out.extend(hits);
    }
    Ok(out)
}
