//! Spherical transform for the Gelfand pair `(U(n), H_n)`.

mod calibrate;
mod grid;
mod spectral;
mod spherical;
mod transform;

pub use calibrate::{calibrate_plancherel_weights, calibration_probes, Calibration};
pub use grid::{symbol_alpha, GelfandGrid, GridSpec, SphericalPoint};
pub use spectral::{
    best_approximation, bump_profile, plancherel_norm, pw_project, synthesize_spectral_bump,
    synthesize_spectral_bump_slices, SpectralFunction,
};
pub use spherical::{radial_profiles, spherical_eval};
pub use transform::{forward_transform, inverse_transform};
pub(crate) use transform::{panel_nodes, radial_amplitude, synthesize, FineNode};
