//! Probability measures, reference measures, relative entropy and `U_N`.
//!
//! [`PointMeasure`] carries atoms for transport problems; [`GridMeasure`]
//! carries piecewise-constant densities for entropy. [`bin_point_measure`]
//! converts atoms to a grid without losing mass.

mod entropy;
mod grid;
mod point;

pub use entropy::{entropy, entropy_from_masses, jensen_bound_check, u_n, Entropy, JensenCheck};
pub use grid::{bin_point_measure, Grid, GridMeasure, ReferenceKind, ReferenceMeasure};
pub use point::PointMeasure;
