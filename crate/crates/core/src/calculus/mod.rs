//! Functional calculus of the sub-Laplacian: multipliers, kernels, spectral dilation, Sobolev norms.

mod multiplier;
mod ops;

pub use multiplier::{wave_difference, Multiplier};
pub use ops::{
    apply_multiplier, dilated_kernel, dilated_profile, kernel_of_multiplier, sample_multiplier, sobolev_norm,
    spectral_dilate, SobolevParams,
};

#[cfg(test)]
mod tests;
