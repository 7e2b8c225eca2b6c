//! Group law, space-side function representations and brute-force oracles on `H_n`.

mod boxed;
mod group;
mod radial;

pub use boxed::{
    box_from_radial, convolution_at, direct_convolution, fd_sublaplacian, involution_box, radialize, BoxFunction3D, BoxGrid,
    DEFAULT_CONVOLUTION_BUDGET,
};
pub use group::{dilate_point, group_inv, group_mul, hermitian, GroupElement};
pub use radial::{dilate_function, involution, RadialFunction, RadialInterpolant, RadialMesh};
pub(crate) use radial::resample;

#[cfg(test)]
mod tests;
