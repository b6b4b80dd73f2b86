//! Candidate boundary-compressing disks for the pants `P` in the knot
//! exterior, modeled as combinatorial walks with chord diagrams, plus the
//! predicate battery refuting them and the exhaustive bounded search.

pub mod model;
pub mod predicates;
mod search;
mod surface;

use thiserror::Error;

use crate::construction::ConstructionError;
use crate::pants::{ArcLabel, GluedSurface};

pub use model::{
    CrossPoint, DeltaComponent, DiskCandidate, EpsilonDescriptor, EpsilonType, Foot, PointHost,
    PredicateId, PredicateVerdict, VerdictKind,
};
pub use predicates::{
    battery_refutes, check_adjacency_bound, check_arcs_in_e, check_e_disjoint_branch,
    check_endpoints_of_epsilon, check_epsilon_counts, check_epsilon_self, check_label_sequence,
    check_nonadjacent, check_outermost, check_scharlemann, run_battery,
    validate_double_planarity,
};
pub use search::{search, Caps, SearchConfig, SearchReport};
pub use surface::SurfaceData;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("disk boundary is not a single curve ({0} components)")]
    NotSingleCurve(usize),
    #[error("unsupported parameter family ({p}, {q}): need q = p+1, or q = 2p +- 1 with q > 3")]
    UnsupportedFamily { p: i64, q: i64 },
    #[error("caps below the forced minima: {0}")]
    CapsTooSmall(String),
    #[error("pattern structure: {0}")]
    Structure(String),
}

/// The cyclic label order along the distinguished disk's boundary, used
/// for all planarity checks on that side.
pub fn e_cyclic_order(g: &GluedSurface) -> Result<Vec<ArcLabel>, SearchError> {
    let curves = g.trace_curves();
    if curves.len() != 1 {
        return Err(SearchError::NotSingleCurve(curves.len()));
    }
    Ok(curves.into_iter().next().unwrap())
}
