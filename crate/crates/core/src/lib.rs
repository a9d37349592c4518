//! Walsh analysis on finite dyadic groups, Riesz-product interpolants,
//! cascade ultra-interpolants with certified truncation residuals,
//! truncation uniformizers, and estimates of bilinear-form norms.
//!
//! Every randomized routine takes an explicit seed; results are bit-for-bit
//! reproducible regardless of thread count.

// Index loops mirror the formulas; negated comparisons deliberately reject NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod dyadic;
pub mod error;
pub mod interpolants;
pub mod riesz;
pub mod sampling;
pub mod tensor;
pub mod verify;

pub use dyadic::{convolve, dot, fwht, ifwht, DyadicDomain, PointValues, Signal, WalshSeries, MAX_COORDS};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use riesz::{
    convolution_identities_check, p_interpolant, parseval_pairing, q_interpolant, riesz_product,
    riesz_product_direct, verify_key_bounds, InterpolantOutput, Kind, RieszParams,
};
pub use tensor::{
    grothendieck_ratio, injective_norm_complex, injective_norm_real, kappa_estimate, khintchin_lp,
    littlewood_orlicz_report, mixed_norm, quadratic_ratio, sidon_ratio, vector_norm, CertKind, FieldMode,
    NormCertificate, TensorInstance, Witness,
};
pub use verify::{run_suite, SuiteReport, SuiteRow, VerifyConfig};
