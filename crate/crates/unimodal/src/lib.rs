//! Numerical toolkit for isotropic unimodal pure-jump Levy processes.
//!
//! The crate builds characteristic exponents from Laplace exponents or Levy
//! densities, tabulates radial transition densities by Bessel-kernel Fourier
//! inversion, walks them two dimensions up through the identity
//! `p^(d+2)(r) = -(2 pi r)^{-1} d/dr p(r)`, simulates first exits of
//! subordinate Brownian motions, and verifies the gradient and Green-function
//! inequalities these objects satisfy on explicit grids with fitted constants.

pub mod error;
pub mod hypotheses;
pub mod interp;
pub mod levy;
pub mod process;
pub mod profile;
pub mod quad;
pub mod report;
pub mod special;
pub mod stable;
pub mod symbols;
pub mod transforms;

pub use error::{Error, Result};
