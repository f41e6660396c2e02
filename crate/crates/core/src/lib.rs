//! Numerical evaluation of the rank-two Dunkl kernel attached to the A2 root
//! system, together with every identity the construction rests on.
//!
//! The crate has two halves that check each other:
//!
//! * a floating-point half ([`bessel`], [`quadrature`], [`kernels`],
//!   [`dunkl_ops`]) that evaluates the kernel `E_k`, the symmetrized Bessel
//!   function `J_k` and the intertwining density `F_k` through explicit
//!   double integrals with Gauss-Jacobi rules absorbing the endpoint
//!   singularities of the weight `W_k`;
//! * an exact half ([`poly_oracle`]) that reconstructs the same kernel degree
//!   by degree in rational arithmetic from the eigenvalue problem
//!   `T_i E(. , y) = y_i E(. , y)` and replays every polynomial identity used
//!   by the integral construction without tolerances.
//!
//! [`verify`] bundles both halves into runnable identity suites; the `dunkl-a2`
//! CLI exposes evaluation, grid export and the suites.

pub mod bessel;
pub mod dunkl_ops;
pub mod error;
pub mod gamma;
pub mod kernels;
pub mod poly_oracle;
pub mod quadrature;
pub mod types;
pub mod verify;

pub use error::{DunklError, Result};
pub use types::{
    BesselOrder, ChamberInvariants, ChamberPoint, MultiplicityParam, OrbitCoordinates, Point3,
};
