//! Exact symbolic algebra for harmonic tensors and hydrogenic Coulomb states.
//!
//! The crate is organised in layers:
//!
//! * [`scalar`] — complex numbers with arbitrary-precision rational real and
//!   imaginary parts (`ExactScalar`), the coefficient field for everything else.
//! * [`radial`] — the workhorse symbolic class [`RadialForm`]: polynomials in
//!   the Cartesian coordinates of dimension 3 or 4 together with the radius
//!   `r`, an optional denominator `r^m (1+r²)^c`, and an exponential weight
//!   `e^{-α r}`. Closed under addition, multiplication, and differentiation.
//! * [`special`] — exact orthogonal-polynomial families (Legendre, Gegenbauer,
//!   Laguerre, terminating hypergeometric series) and bivariate expansions used
//!   to connect Gegenbauer and Laguerre radial functions.
//! * [`tensor`] / [`harmonic`] — symmetric tensors with `RadialForm`
//!   components, symmetrised δ-products, traces, contractions, and the
//!   traceless harmonic tensor families in dimensions 3 and 4.
//! * [`ladder`] — first-order vector operators that generate the harmonic
//!   tensor families degree by degree, plus exact operator-identity checks.
//! * [`hydrogen`] — bound Coulomb states in coordinate and momentum space,
//!   their defining differential equations, the stereographic map to the unit
//!   3-sphere, and the Gegenbauer↔Laguerre correspondence.
//! * [`stark`] — exact first-order perturbation theory for a uniform field
//!   along `z` (quadratic Stark effect) on circular states.
//! * [`quadrature`] / [`numeric`] — floating-point product quadrature on the
//!   unit 2- and 3-sphere with deterministic summation, and the numeric
//!   verification battery (sphere-kernel identities, resolvent summation).
//!
//! The crate is `no_std`-compatible (`default-features = false`); it then
//! depends only on `alloc` and `libm`.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod harmonic;
pub mod hydrogen;
pub mod ladder;
mod math;
pub mod numeric;
pub mod quadrature;
pub mod radial;
pub mod scalar;
pub mod special;
pub mod stark;
pub mod tensor;

pub use radial::RadialForm;
pub use scalar::{ExactScalar, Rat};
pub use tensor::SymTensor;

use core::fmt;

/// Errors reported by the exact-algebra and numeric layers.
///
/// All fallible operations return `Result<_, Error>`; the operator-overload
/// sugar (`+`, `*`, …) panics on these conditions and documents that it does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands live in different coordinate dimensions.
    DimensionMismatch { left: usize, right: usize },
    /// Dimension is not 3 or 4.
    UnsupportedDimension(usize),
    /// Addition of forms carrying different exponential rates.
    ExpRateMismatch,
    /// Operation requires a pure polynomial (no denominators, no weight).
    NotPolynomial,
    /// Operation requires a form with no odd radius factor.
    OddRadiusPower,
    /// An integral diverges (rate ≤ 0 or exponent too negative at the origin).
    DivergentIntegral,
    /// Tensor ranks are inconsistent for the requested operation.
    RankMismatch { expected: usize, found: usize },
    /// A coordinate axis or tensor slot index is out of range.
    IndexOutOfRange { index: usize, bound: usize },
    /// A parameter is outside the supported domain (message names it).
    InvalidParameter(&'static str),
    /// Division by an exactly-zero scalar.
    DivisionByZero,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "coordinate dimension mismatch: {left} vs {right}")
            }
            Error::UnsupportedDimension(d) => {
                write!(f, "unsupported coordinate dimension {d} (expected 3 or 4)")
            }
            Error::ExpRateMismatch => {
                write!(f, "cannot add forms with different exponential rates")
            }
            Error::NotPolynomial => {
                write!(f, "operation requires a pure polynomial form")
            }
            Error::OddRadiusPower => {
                write!(f, "operation requires a form free of odd radius factors")
            }
            Error::DivergentIntegral => write!(f, "integral diverges"),
            Error::RankMismatch { expected, found } => {
                write!(f, "tensor rank mismatch: expected {expected}, found {found}")
            }
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
