//! Smooth dyadic partition, Calderón decomposition, wavelet kernels and admissibility.

mod calderon;
mod partition;
mod wavelet;

pub use calderon::{calderon_decompose, AtomMode, CalderonParts};
pub(crate) use calderon::check_coverage;
pub use partition::{build_partition, cutoff, SmoothPartition};
pub use wavelet::{
    admissibility_integral, wavelet_criteria, wavelet_isometry_check, wavelet_kernel, AdmissibilityResult,
    IsometryCheck, WaveletClause, WaveletCriterion,
};
