//! Localization along maximal rays of the signed time separation from an
//! achronal set: disintegration, density comparison, coarea, synthetic mean
//! curvature and the Hawking verifier.

mod achronal;
mod disintegrate;
mod hawking;
mod mean_curvature;

pub use achronal::{
    footpoint, one_lipschitz_check, one_lipschitz_check_with, tau_v, tau_v_finite, AchronalSet, LipschitzReport,
    Projection,
};
pub use disintegrate::{
    coarea_check, disintegrate, mcp_density_check, CoareaReport, DisintegrationParams, McpReport, Ray,
    RayDecomposition, SampleRegion,
};
pub use hawking::{
    hawking_verify, model_density, model_ray_dag, FiniteAchronal, MeanCurvatureCertificate, MinkowskiAchronal,
    ModelRays, SignedTime,
};
pub use mean_curvature::{
    mean_curvature_estimate, EstimateStatus, MeanCurvatureEstimate, MeanCurvatureParams, Side, VariationProfile,
};
