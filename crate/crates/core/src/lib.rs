//! Causal optimal transport on Lorentzian pre-length spaces and numerical
//! certification of synthetic timelike Ricci curvature bounds.
// NaN-rejecting guards read `!(x > 0.0)`, and the dense numerics index
// several parallel arrays per loop.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod comparison;
pub mod convergence;
pub mod curvature;
pub mod document;
pub mod error;
pub mod geodesics;
pub mod localization;
pub mod measures;
pub mod rng;
pub mod spacetime;
pub mod tolerances;
pub mod transport;

pub use error::{Error, Result};
pub use measures::{Entropy, Grid, GridMeasure, PointMeasure, ReferenceMeasure};
pub use spacetime::{
    minkowski_tau, sprinkle, tau_length, validate_prelength, BoxRegion, CausalDagSpace, DagEdge, DagMetric, Event,
    LorentzSpace, MinkowskiSpace, SprinkledSpace, ValidationReport, Violation, ViolationKind,
};
pub use transport::{CausalCoupling, CostMatrix, DualPotentials, Relation, TransportResult};
