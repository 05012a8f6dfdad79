//! Generalized Laguerre polynomials and Laguerre functions.
//!
//! The polynomial of degree `k` and order `α` is the finite sum
//!
//! ```text
//! L_k^α(x) = Σ_{j=0}^{k} (−1)^j C(k + α, k − j) x^j / j!
//! ```
//!
//! with rational `α` supported through the product form of the binomial
//! coefficient. The associated Laguerre *function* on the plane is
//! `φ_k^ν(z) = L_k^ν(|z|²/2) · e^{−|z|²/4}`; its radial restrictions carry all
//! of the spectral structure used elsewhere in the crate.
//!
//! Two evaluation routes are kept deliberately independent: a floating
//! three-term recurrence (fast, used by quadrature) and exact rational Horner
//! on the coefficient vector (slow, used as an oracle and by the elimination
//! code).

use nalgebra::{DMatrix, SymmetricEigen};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Zero;
use serde::Serialize;

use crate::exact::{binom, binom_shifted, factorial, to_f64};
use crate::C64;

/// A generalized Laguerre polynomial with exact rational coefficients.
///
/// `coeffs[j]` is the coefficient of `x^j`; the vector always has length
/// `k + 1`, with `coeffs[0] = C(k + α, k)` and leading term `(−1)^k / k!`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerrePolynomial {
    pub k: usize,
    pub alpha: BigRational,
    pub coeffs: Vec<BigRational>,
}

/// Exact coefficient vector of `L_k^α`.
pub fn laguerre_coefficients(k: usize, alpha: &BigRational) -> LaguerrePolynomial {
    let mut coeffs = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut c = binom_shifted(alpha, k, k - j) / BigRational::from(factorial(j));
        if j % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    LaguerrePolynomial {
        k,
        alpha: alpha.clone(),
        coeffs,
    }
}

impl LaguerrePolynomial {
    /// Floating evaluation through the stable three-term recurrence
    /// `(k+1) L_{k+1}^α = (2k + 1 + α − x) L_k^α − (k + α) L_{k−1}^α`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        laguerre_value(self.k, to_f64(&self.alpha), x)
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// `L_k^α(x)` by upward recurrence; the workhorse of every floating route.
pub fn laguerre_value(k: usize, alpha: f64, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for m in 1..k {
        let next = ((2.0 * m as f64 + 1.0 + alpha - x) * cur - (m as f64 + alpha) * prev)
            / (m as f64 + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_k^n(0) = C(k + n, k)`, exactly.
pub fn value_at_zero(k: usize, n: usize) -> BigRational {
    BigRational::from(binom(k + n, k))
}

/// `(L_k^α)'(0) = −C(k + α, k − 1)`, exactly; zero for `k = 0`.
pub fn derivative_at_zero(k: usize, alpha: &BigRational) -> BigRational {
    if k == 0 {
        return BigRational::zero();
    }
    -binom_shifted(alpha, k, k - 1)
}

/// Real zeros of `L_k^α` for `α ≥ 0`, ascending.
///
/// Computed as eigenvalues of the symmetric Jacobi matrix with diagonal
/// `2i + α + 1` and off-diagonal `√(i (i + α))`; all zeros are simple and
/// strictly positive.
pub fn laguerre_real_zeros(k: usize, alpha: f64) -> Vec<f64> {
    assert!(alpha >= 0.0, "zeros are only computed for order α ≥ 0");
    if k == 0 {
        return Vec::new();
    }
    let mut jac = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        jac[(i, i)] = 2.0 * i as f64 + alpha + 1.0;
        if i > 0 {
            let b = (i as f64 * (i as f64 + alpha)).sqrt();
            jac[(i, i - 1)] = b;
            jac[(i - 1, i)] = b;
        }
    }
    let eigen = SymmetricEigen::new(jac);
    let mut zeros: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());
    zeros
}

/// Distance between the zero sets of `L_{k1}^α` and `L_{k2}^α`.
#[derive(Debug, Clone, Serialize)]
pub struct CommonZeroReport {
    pub k1: usize,
    pub k2: usize,
    pub min_distance: f64,
    pub tol: f64,
    /// True when some pair of zeros lies within `tol` (a candidate common zero).
    pub below_tol: bool,
}

/// Minimum pairwise distance between the zero sets of two Laguerre
/// polynomials of the same order.
pub fn common_zero_report(k1: usize, k2: usize, alpha: f64, tol: f64) -> CommonZeroReport {
    let za = laguerre_real_zeros(k1, alpha);
    let zb = laguerre_real_zeros(k2, alpha);
    let mut min = f64::INFINITY;
    for a in &za {
        for b in &zb {
            min = min.min((a - b).abs());
        }
    }
    CommonZeroReport {
        k1,
        k2,
        min_distance: min,
        tol,
        below_tol: min <= tol,
    }
}

/// The Laguerre function `φ_k^ν(z) = L_k^ν(|z|²/2) e^{−|z|²/4}` of integer
/// order `ν ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LaguerreFunction {
    pub k: usize,
    pub order: usize,
}

impl LaguerreFunction {
    pub fn new(k: usize, order: usize) -> Self {
        Self { k, order }
    }

    /// Radial value at `r ≥ 0` (the function is radial).
    pub fn eval_radius(&self, r: f64) -> f64 {
        phi_value(self.k, self.order, r)
    }

    /// Value at a point of the plane.
    pub fn eval(&self, z: C64) -> f64 {
        phi_value(self.k, self.order, z.norm())
    }

    /// `φ_k^{n−1}(0) = C(k + n − 1, k)` with `n − 1 = order`, exactly.
    pub fn at_zero(&self) -> BigRational {
        value_at_zero(self.k, self.order)
    }
}

/// `φ_k^ν(r)` for radius `r`.
pub fn phi_value(k: usize, order: usize, r: f64) -> f64 {
    let u = r * r / 2.0;
    laguerre_value(k, order as f64, u) * (-u / 2.0).exp()
}

/// Exact `φ`-related weighted norm: ‖φ_i^α‖² under the measure
/// `e^{−u} (2u)^α du` (u = r²/2) equals `2^α (i + α)! / i!`.
pub fn phi_weighted_norm_sq(i: usize, alpha: usize) -> BigRational {
    let num = BigInt::from(2u32).pow(alpha as u32) * factorial(i + alpha);
    BigRational::new(num, factorial(i))
}

/// Exact pairing ∫₀^∞ L_j^m(u) L_i^α(u) e^{−u} (2u)^α du as a rational,
/// via termwise Γ-integrals ∫ u^s e^{−u} du = s!.
pub fn laguerre_pair_integral(j: usize, m: &BigRational, i: usize, alpha: usize) -> BigRational {
    let pa = laguerre_coefficients(j, m);
    let pb = laguerre_coefficients(i, &BigRational::from(BigInt::from(alpha as i64)));
    let two_alpha = BigRational::from(BigInt::from(2u32).pow(alpha as u32));
    let mut acc = BigRational::zero();
    for (s, cs) in pa.coeffs.iter().enumerate() {
        if cs.is_zero() {
            continue;
        }
        for (t, ct) in pb.coeffs.iter().enumerate() {
            acc += cs * ct * BigRational::from(factorial(s + t + alpha));
        }
    }
    acc * two_alpha
}
