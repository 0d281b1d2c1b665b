//! Numerical tolerances shared across modules.
//!
//! Every threshold used by a check or an acceptance criterion is named here.

/// Absolute slack on time-separation comparisons in axiom validation.
pub const TAU_ABS: f64 = 1e-9;

/// Probability weights must sum to one within this bound.
pub const WEIGHT_SUM: f64 = 1e-12;

/// Grid measures must carry unit mass within this bound.
pub const GRID_MASS: f64 = 1e-10;

/// Coupling marginals are reproduced within this bound.
pub const MARGINAL: f64 = 1e-10;

/// Duality gap bound and reverse-triangle slack for the transport problem.
pub const DUALITY_GAP: f64 = 1e-8;

/// Floating-point floor applied to a duality gap that is zero in exact arithmetic.
pub const GAP_ROUNDING_FLOOR: f64 = 1e-12;

/// Value comparison used to decide whether a timelike optimal plan exists.
pub const TIMELIKE_VALUE: f64 = 1e-9;

/// Equality tolerance for the subdifferential of an l^p-concave potential.
pub const SUBDIFFERENTIAL: f64 = 1e-9;

/// Atoms closer than this are merged when pushing a dynamical plan forward.
pub const ATOM_MERGE: f64 = 1e-12;

/// Masses below this are treated as zero inside the flow solvers.
pub const FLOW_EPS: f64 = 1e-15;

/// Footpoint maximization bracket and ambiguity thresholds.
pub const FOOTPOINT_BRACKET: f64 = 1e-10;
pub const FOOTPOINT_AMBIGUITY: f64 = 1e-8;

/// One-Lipschitz inequality slack for the signed time separation.
pub const ONE_LIPSCHITZ: f64 = 1e-8;

/// Relative bin tolerance for the one-dimensional density comparison.
pub const MCP_BINNING: f64 = 0.05;

/// Disintegration mass balance and coarea relative error bounds.
pub const MASS_BALANCE: f64 = 0.01;
pub const COAREA: f64 = 0.01;

/// Jensen bound slack for entropies.
pub const JENSEN: f64 = 1e-9;

/// Target accuracy of the adaptive Simpson quadrature.
pub const QUADRATURE: f64 = 1e-10;

/// Agreement required between the closed-form Hawking constant and the ODE oracle.
pub const HAWKING_ORACLE: f64 = 1e-6;
