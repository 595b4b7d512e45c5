//! Sharp constants K_{n,p}(alpha) and K_{n,p} in real-part estimates for
//! derivatives of analytic functions on the upper half-plane, with an
//! independent quadrature oracle for every closed form, two-sided bounds for
//! the even orders at p = infinity, and an end-to-end sharpness check that
//! drives near-extremal boundary densities through the Schwarz integral.
//!
//! Modules:
//! - [`specfun`]: log-gamma, Beta, factorial families.
//! - [`quadrature`]: kink-aware adaptive Gauss-Legendre panels.
//! - [`qkernel`]: the trigonometric kernel Q_{2m,n,gamma}(beta) and its closed forms.
//! - [`constants`]: K_{n,p}(alpha), the sharp constant, the closed-form
//!   registry, even-order bounds, and the dK/dalpha sign machinery.
//! - [`sharpness`]: Schwarz-integral evaluation, extremal densities, and the
//!   unit-disk constants.

pub mod constants;
pub mod error;
pub mod qkernel;
pub mod quadrature;
mod search;
pub mod sharpness;
pub mod specfun;

pub use constants::{
    BoundsPair, ConstantQuery, ConstantResult, ExponentP, FormulaId, Method,
};
pub use error::{Error, Result};
pub use qkernel::{QSpec, Regime};
pub use quadrature::{QuadratureConfig, QuadratureResult};
pub use sharpness::{
    BoundaryDensity, DiskReport, HalfPlanePoint, SchwarzEval, SharpnessReport, TrigPoly,
};

pub use num_complex::Complex64;
