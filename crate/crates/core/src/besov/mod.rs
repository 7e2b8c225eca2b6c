//! Four Besov functionals on spectral data and the report comparing them.

mod norms;
mod params;
mod report;

pub use norms::{
    besov_norm_atoms, besov_norm_kfunctional, besov_norm_modulus, besov_norm_wavelet, besov_norms, k2_functional,
    modulus_grid, modulus_of_continuity, wavelet_weight, NormReport,
};
pub use params::{BesovParams, WeightMode};
pub use report::{
    equivalence_report, pair_name, standard_params, EquivalenceReport, PairSpread, ReportRow, DEFAULT_RATIO_BOUND,
    NORM_PAIRS,
};
