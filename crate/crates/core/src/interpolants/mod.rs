//! Cascade ultra-interpolants and truncation uniformizers.

pub mod cascade;

pub use cascade::{
    build_cascade_plan, endpoint_bounds, pairing, ultra_interpolant, vector_cascade, CascadePlan,
    FactoredSeries, PairingResult, Variant,
};
pub mod uniformize;

pub use uniformize::{
    e_inverse, estimate_exp_square_constant, exp_square_integral, uniformize, uniformize_lambda_p,
    UniformizeReport,
};
