//! Landmark-based registration transformations.
//!
//! The crate builds interpolating maps `F: R^m -> R^m` from paired
//! source/target landmarks using
//!
//! * global radial basis functions (Gaussian, thin plate spline,
//!   generalized multiquadric, radial Wendland functions),
//! * tensor products of univariate Wendland functions or Lobachevsky splines,
//! * the modified Shepard formula with local RBF nodal interpolants,
//!
//! together with a benchmark lab that regenerates synthetic registration
//! cases and runs RMSE parameter sweeps.

pub mod bench;
pub mod cli;
pub mod config;
mod dd;
pub mod error;
pub mod io;
pub mod kernel;
pub mod landmarks;
pub mod linalg;
pub mod lobachevsky;
pub mod shepard;
pub mod transform;

pub use error::{Error, Result};
pub use kernel::{RadialKernel, UnivariateKernel};
pub use landmarks::{Landmark, LandmarkSet};
pub use lobachevsky::{LobachevskyScale, LobachevskySpec};
pub use shepard::{RhoRule, ShepardConfig, ShepardTransform};
pub use transform::{
    assemble_system, build_tensor_transform, condition_estimate, solve_transform, Basis,
    KernelTransform, SaddleSystem, TensorFactor, TransformKind, Transformation,
};
