//! Spectral analysis of twisted spherical means on the complex plane.
//!
//! The library is organized around one pipeline: functions on ℂ built from
//! type terms `ã(|z|)·z^p` / `ã(|z|)·z̄^q` are convolved against Laguerre
//! functions (directly by quadrature, or in closed form through the
//! Hecke–Bochner identity), the resulting spectral projections are expanded
//! in holomorphic/antiholomorphic Laguerre series, and those series are
//! restricted to finite line systems where vanishing conditions become exact
//! linear algebra over cyclotomic fields.
//!
//! Modules:
//! - [`laguerre`]: generalized Laguerre polynomials and Laguerre functions,
//!   exact coefficients and floating evaluation, real zeros.
//! - [`quadrature`]: trapezoid/Gauss–Legendre rules used by the floating route.
//! - [`twisted_ops`]: plane functions, twisted spherical means, twisted
//!   convolution with Laguerre functions, twisted translates, the special
//!   Hermite operator.
//! - [`hb_series`]: spectral projections as finite Laguerre-type series,
//!   norms, coefficient bounds, and the divergence bookkeeping used to rule
//!   out spurious series solutions.
//! - [`cyclotomic`]: exact arithmetic in ℚ(ζ) for roots of unity ζ.
//! - [`injectivity`]: restriction of series to line systems, exact/floating
//!   null spaces, theorem-shaped verification cases, determinant evidence for
//!   the three-line conjecture.
//! - [`zerosets`]: grid zero sets of projection families and their predicted
//!   structure (spheres + the monomial zero locus).
//! - [`selftest`]: the runnable acceptance checklist.

pub mod cyclotomic;
pub mod error;
pub mod exact;
pub mod hb_series;
pub mod injectivity;
pub mod jsonfmt;
pub mod laguerre;
pub mod quadrature;
pub mod selftest;
pub mod twisted_ops;
pub mod zerosets;

pub use error::Error;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Complex double-precision scalar used by all floating-point routes.
pub type C64 = num::complex::Complex<f64>;
