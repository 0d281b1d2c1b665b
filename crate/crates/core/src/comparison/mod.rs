//! Comparison geometry: the Hawking constant, Bonnet-Myers and Bishop-Gromov.

mod bishop_gromov;
mod hawking;

pub use bishop_gromov::{
    adaptive_simpson, bishop_gromov_mc, bishop_gromov_model_ratio, BishopGromovEstimate, StarShapedRegion,
};
pub use hawking::{bonnet_myers_bound, hawking_bound, riccati_oracle, HawkingParams, HawkingRegime};
