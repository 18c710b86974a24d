//! Martingale and Fourier harnesses.

pub mod fourier;
pub mod martingale;

pub use fourier::{
    fourier_coefficients, maximal_partial_sum, partial_sum, theorem3_check, FourierSample, MaxRow, Theorem3Report,
    SATURATION_FACTOR,
};
pub use martingale::{
    build_walk_ensemble, doob_check, summability_check, theorem2_bound, BlockCheck, DoobReport, IncrementLaw,
    MartingaleEnsemble, NormingFunction, PathSampling, SummabilityReport, Theorem2Report, CHAIN_TOL, MARTINGALE_TOL,
    SUMMABLE_EXPONENT,
};
