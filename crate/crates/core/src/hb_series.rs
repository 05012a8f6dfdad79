//! Expansion of a twisted projection `Q_k = f × φ_k` in its natural basis.
//!
//! For a plane function of finite type, the k-th projection is a finite sum
//!
//! ```text
//! Q_k(z) = c_rad φ_k(z) + Σ_{p=1}^{k} c_hol[p] z^p φ_{k−p}^p(z)
//!                        + Σ_{q=1}^{q_max} c_anti[q] z̄^q φ_k^q(z),
//! ```
//!
//! whose three families live in distinct angular Fourier modes and are
//! therefore mutually orthogonal in L²(ℂ). The squared term norms are exact:
//!
//! ```text
//! ‖φ_k‖² = 2π,   ‖z^p φ_{k−p}^p‖² = 2π·2^p·k!/(k−p)!,   ‖z̄^q φ_k^q‖² = 2π·2^q·(k+q)!/k!.
//! ```
//!
//! Around this basis the module provides: projection of a plane function onto
//! the series (exact Γ-route or quadrature), pointwise evaluation, Parseval
//! norms, the growth bound `|c| ≤ C (k!/(2^{q+1}(k+q)!))^{1/2}` implied by an
//! L² bound `C` on the source, the one-parameter recursion family that a
//! single-line restriction forces at `k = 1`, the ratio test on its squared
//! term weights `b_m` (which converges to −1/2, certifying Σ b_m = ∞ and so
//! excluding the family from L²), and extraction of holomorphic coefficients
//! by the twisted creation operator `Ã = ∂_z + z̄/4`.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exact::{binom, factorial, ln_factorial, to_f64};
use crate::jsonfmt::{complex_map, complex_pair};
use crate::laguerre::{laguerre_coefficients, phi_value};
use crate::twisted_ops::{PairingMethod, PlaneFunction, RadialProfile};
use crate::C64;

/// Coefficients of one projection `Q_k` in the radial / holomorphic /
/// antiholomorphic basis, truncated at antiholomorphic degree `q_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HBLSeries {
    pub k: usize,
    #[serde(with = "complex_pair")]
    pub c_rad: C64,
    /// `p ↦ c_hol[p]`, 1 ≤ p ≤ k.
    #[serde(with = "complex_map")]
    pub c_hol: BTreeMap<usize, C64>,
    /// `q ↦ c_anti[q]`, 1 ≤ q ≤ q_max.
    #[serde(with = "complex_map")]
    pub c_anti: BTreeMap<usize, C64>,
    pub q_max: usize,
}

impl HBLSeries {
    pub fn zero(k: usize, q_max: usize) -> Self {
        Self {
            k,
            c_rad: C64::new(0.0, 0.0),
            c_hol: BTreeMap::new(),
            c_anti: BTreeMap::new(),
            q_max,
        }
    }

    /// Pointwise value of the truncated series.
    pub fn eval(&self, z: C64) -> C64 {
        let r = z.norm();
        let mut acc = self.c_rad * phi_value(self.k, 0, r);
        for (&p, c) in &self.c_hol {
            if p <= self.k {
                acc += c * z.powu(p as u32) * phi_value(self.k - p, p, r);
            }
        }
        for (&q, c) in &self.c_anti {
            acc += c * z.conj().powu(q as u32) * phi_value(self.k, q, r);
        }
        acc
    }

    /// Parseval norm: `‖Q_k‖²_{L²(ℂ)}` from the coefficients and the exact
    /// term norms.
    pub fn norm_sq(&self) -> f64 {
        let mut acc = self.c_rad.norm_sqr() * std::f64::consts::TAU;
        for (&p, c) in &self.c_hol {
            let n = term_l2_norm_hol(self.k, p);
            acc += c.norm_sqr() * n * n;
        }
        for (&q, c) in &self.c_anti {
            let n = term_l2_norm(self.k, q);
            acc += c.norm_sqr() * n * n;
        }
        acc
    }
}

/// Largest index for which any projection of `f` can be nonzero: a radial
/// profile of polynomial degree `j` has Laguerre components up to `j` only,
/// so `f × φ_k = 0` for `k > p + j`.
pub fn max_projection_index(f: &PlaneFunction) -> usize {
    f.terms()
        .iter()
        .map(|t| {
            let j = match t.radial() {
                RadialProfile::LaguerreExpansion { coeffs, .. } => coeffs.len().saturating_sub(1),
                RadialProfile::GaussianPoly { coeffs } => coeffs.len().saturating_sub(1),
            };
            t.p() + j
        })
        .max()
        .unwrap_or(0)
}

/// Result of projecting a plane function onto one `Q_k`.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesProjection {
    pub series: HBLSeries,
    /// L² norm of the antiholomorphic contributions beyond `q_max` that the
    /// truncation dropped.
    pub dropped_tail_norm: f64,
    /// Labels of coefficients that are numerically indistinguishable from
    /// zero (likely exact zeros of the pairing).
    pub near_zero: Vec<String>,
}

/// Expand `Q_k = f × φ_k` in the series basis.
///
/// Each type term of `f` feeds exactly one coefficient: a `(p, 0)` term feeds
/// `c_hol[p]` (for `k ≥ p`), a `(0, q)` term feeds `c_anti[q]`, a radial term
/// feeds `c_rad`; the scalar is the calibrated normalized pairing of the
/// radial profile against the projected Laguerre function.
pub fn project_to_series(
    f: &PlaneFunction,
    k: usize,
    q_max: usize,
    method: PairingMethod,
) -> SeriesProjection {
    let mut series = HBLSeries::zero(k, q_max);
    let mut dropped_sq = 0.0;
    for t in f.terms() {
        let proj = crate::twisted_ops::hecke_bochner_projection(t, k, method);
        if proj.scalar.norm() == 0.0 {
            continue;
        }
        let (p, q) = (t.p(), t.q());
        if q > q_max {
            let n = term_l2_norm(k, q);
            dropped_sq += proj.scalar.norm_sqr() * n * n;
            continue;
        }
        if p > 0 {
            *series.c_hol.entry(p).or_insert(C64::new(0.0, 0.0)) += proj.scalar;
        } else if q > 0 {
            *series.c_anti.entry(q).or_insert(C64::new(0.0, 0.0)) += proj.scalar;
        } else {
            series.c_rad += proj.scalar;
        }
    }
    let scale = series
        .c_hol
        .values()
        .chain(series.c_anti.values())
        .chain(std::iter::once(&series.c_rad))
        .map(|c| c.norm())
        .fold(1.0f64, f64::max);
    let mut near_zero = Vec::new();
    if series.c_rad.norm() > 0.0 && series.c_rad.norm() < 1e-12 * scale {
        near_zero.push("rad".to_string());
    }
    for (&p, c) in &series.c_hol {
        if c.norm() > 0.0 && c.norm() < 1e-12 * scale {
            near_zero.push(format!("hol[{p}]"));
        }
    }
    for (&q, c) in &series.c_anti {
        if c.norm() > 0.0 && c.norm() < 1e-12 * scale {
            near_zero.push(format!("anti[{q}]"));
        }
    }
    SeriesProjection {
        series,
        dropped_tail_norm: dropped_sq.sqrt(),
        near_zero,
    }
}

/// `‖z̄^q φ_k^q‖_{L²(ℂ)} = (2π · 2^q · (k+q)!/k!)^{1/2}`.
///
/// Exact integer route while `(k+q)!` fits comfortably in an f64; log-space
/// via `ln_factorial` beyond that.
pub fn term_l2_norm(k: usize, q: usize) -> f64 {
    norm_from_factorial_ratio(q, k + q, k)
}

/// `‖z^p φ_{k−p}^p‖_{L²(ℂ)} = (2π · 2^p · k!/(k−p)!)^{1/2}` for `p ≤ k`.
pub fn term_l2_norm_hol(k: usize, p: usize) -> f64 {
    assert!(p <= k, "holomorphic degree p = {p} exceeds k = {k}");
    norm_from_factorial_ratio(p, k, k - p)
}

fn norm_from_factorial_ratio(pow2: usize, num: usize, den: usize) -> f64 {
    let tau = std::f64::consts::TAU;
    if num <= 150 {
        let ratio = BigRational::new(factorial(num), factorial(den));
        (tau * 2f64.powi(pow2 as i32) * to_f64(&ratio)).sqrt()
    } else {
        let ln = tau.ln() + pow2 as f64 * 2f64.ln() + ln_factorial(num) - ln_factorial(den);
        (0.5 * ln).exp()
    }
}

/// Largest possible `|c_anti[q]|` for a source bounded by `C` in L²(ℂ):
/// `C · (k! / (2^{q+1} (k+q)!))^{1/2}`.
///
/// This is Bessel's inequality `|c|·‖z̄^q φ_k^q‖ ≤ C·√π` made explicit, so
/// `bound² · ‖term‖² = π C²` identically.
pub fn coefficient_bound(c: f64, k: usize, q: usize) -> f64 {
    if k + q <= 150 {
        let ratio = BigRational::new(factorial(k), factorial(k + q));
        c * (to_f64(&ratio) / 2f64.powi(q as i32 + 1)).sqrt()
    } else {
        let ln = ln_factorial(k) - ln_factorial(k + q) - (q as f64 + 1.0) * 2f64.ln();
        c * (0.5 * ln).exp()
    }
}

/// Exact antiholomorphic coefficients of the recursion family at `k = 1`,
/// normalized so that `c_anti[1] = 1`: the single-line restriction forces
///
/// ```text
/// c_hol[1] = −2,   c_anti[2m+1] = 1/(2^{2m} (m+1)!),   c_anti[even] = 0,
/// ```
///
/// (each odd-degree row of the restriction couples consecutive odd
/// antiholomorphic indices; the even chain forces the radial and even
/// antiholomorphic coefficients to vanish).
pub fn recursion_family_exact(q_max: usize) -> Vec<(usize, BigRational)> {
    let mut out = Vec::new();
    let mut m = 0usize;
    while 2 * m + 1 <= q_max {
        let den = BigInt::from(2u32).pow(2 * m as u32) * factorial(m + 1);
        out.push((2 * m + 1, BigRational::new(BigInt::from(1), den)));
        m += 1;
    }
    out
}

/// The recursion family as a floating series, scaled by `c`.
pub fn recursion_family_q1(c: C64, q_max: usize) -> HBLSeries {
    let mut series = HBLSeries::zero(1, q_max);
    series.c_hol.insert(1, -2.0 * c);
    for (q, coeff) in recursion_family_exact(q_max) {
        series.c_anti.insert(q, c * to_f64(&coeff));
    }
    series
}

/// Squared L² weight of the m-th odd antiholomorphic term of the unit
/// recursion family, up to the constant 4π:
///
/// ```text
/// b_m = (2m+2)! / (2^{2m} ((m+1)!)²),
/// ```
///
/// i.e. `‖c_anti[2m+1] z̄^{2m+1} φ_1^{2m+1}‖² = 4π b_m`. Computed in log
/// space so that large `m` stays cheap and finite.
pub fn raabe_term(m: usize) -> f64 {
    let ln = ln_factorial(2 * m + 2) - 2.0 * m as f64 * 2f64.ln() - 2.0 * ln_factorial(m + 1);
    ln.exp()
}

/// `b_m` as an exact rational, straight from the defining factorials.
pub fn raabe_term_exact(m: usize) -> BigRational {
    let f = factorial(m + 1);
    BigRational::new(
        factorial(2 * m + 2),
        BigInt::from(2u32).pow(2 * m as u32) * &f * &f,
    )
}

/// Ratio-test sequence `m (b_{m+1}/b_m − 1)`, evaluated in exact rational
/// arithmetic (a float route through log-space factorials loses the ratio to
/// cancellation once m is large).
///
/// The limit is −1/2; since −1/2 > −1 the series Σ b_m diverges, which is
/// exactly the statement that the recursion family has infinite L² norm.
pub fn raabe_sequence(m: usize) -> f64 {
    let ratio = raabe_term_exact(m + 1) / raabe_term_exact(m);
    let one = BigRational::from(BigInt::from(1));
    to_f64(&(BigRational::from(BigInt::from(m as i64)) * (ratio - one)))
}

/// Partial sum `Σ_{m=0}^{M} b_m` (diverges like `8√((M+1)/π)` as M grows).
pub fn raabe_partial_sum(m_max: usize) -> f64 {
    (0..=m_max).map(raabe_term).sum()
}

/// Stirling estimate `b_m ≈ 4/√(π (m+1))`.
pub fn raabe_stirling_estimate(m: usize) -> f64 {
    4.0 / (std::f64::consts::PI * (m as f64 + 1.0)).sqrt()
}

/// Extract `c_hol[p]` (or `c_rad` at `p = 0`) from the series by the twisted
/// creation operator.
///
/// Writing `Q_k = G(z, z̄) e^{−|z|²/4}`, the operator `Ã = ∂_z + z̄/4`
/// satisfies `Ã[G e^{−|z|²/4}] = (∂_z G) e^{−|z|²/4}`, so `Ã^p Q_k(0) =
/// p! · [z^p z̄^0]G = p! · φ_{k−p}^p(0) · c_hol[p]`. The polynomial part is
/// manipulated symbolically (bivariate monomials in `z, z̄`), which makes
/// this an independent route back to the coefficients.
pub fn coefficient_via_atilde(series: &HBLSeries, p: usize) -> C64 {
    let mut poly = series_polynomial_part(series);
    for _ in 0..p {
        poly = d_dz(&poly);
    }
    let at_zero = poly
        .get(&(0, 0))
        .copied()
        .unwrap_or_else(|| C64::new(0.0, 0.0));
    if p > series.k {
        // φ_{k−p}^p is not defined here and the derivative has no constant
        // term: the coefficient is zero by convention.
        return C64::new(0.0, 0.0);
    }
    let phi_at_zero = to_f64(&BigRational::from(binom(series.k, p)));
    at_zero / (to_f64(&BigRational::from(factorial(p))) * phi_at_zero)
}

/// Monomial map `(deg_z, deg_z̄) ↦ coefficient` of the polynomial factor `G`
/// with `Q_k = G e^{−|z|²/4}`.
fn series_polynomial_part(series: &HBLSeries) -> BTreeMap<(usize, usize), C64> {
    let mut poly: BTreeMap<(usize, usize), C64> = BTreeMap::new();
    let mut add = |deg_z: usize, deg_zbar: usize, c: C64| {
        if c.norm() != 0.0 {
            *poly.entry((deg_z, deg_zbar)).or_insert(C64::new(0.0, 0.0)) += c;
        }
    };
    let laguerre_f64 = |k: usize, alpha: usize| -> Vec<f64> {
        laguerre_coefficients(k, &BigRational::from(BigInt::from(alpha as i64)))
            .coeffs
            .iter()
            .map(to_f64)
            .collect()
    };
    // radial: c_rad · L_k^0(z z̄ / 2)
    for (j, lj) in laguerre_f64(series.k, 0).iter().enumerate() {
        add(j, j, series.c_rad * (lj / 2f64.powi(j as i32)));
    }
    // holomorphic: c_hol[p] · z^p · L_{k−p}^p(z z̄ / 2)
    for (&p, c) in &series.c_hol {
        if p > series.k {
            continue;
        }
        for (j, lj) in laguerre_f64(series.k - p, p).iter().enumerate() {
            add(p + j, j, c * (lj / 2f64.powi(j as i32)));
        }
    }
    // antiholomorphic: c_anti[q] · z̄^q · L_k^q(z z̄ / 2)
    for (&q, c) in &series.c_anti {
        for (j, lj) in laguerre_f64(series.k, q).iter().enumerate() {
            add(j, q + j, c * (lj / 2f64.powi(j as i32)));
        }
    }
    poly
}

fn d_dz(poly: &BTreeMap<(usize, usize), C64>) -> BTreeMap<(usize, usize), C64> {
    let mut out = BTreeMap::new();
    for (&(a, b), c) in poly {
        if a > 0 {
            *out.entry((a - 1, b)).or_insert(C64::new(0.0, 0.0)) += c * a as f64;
        }
    }
    out
}

/// Twisted spherical mean through the spectral expansion
/// `f × μ_r(z) = (1/2π) Σ_k φ_k(r) · Q_k(z)`; the sum is finite for plane
/// functions (see [`max_projection_index`]).
pub fn tsm_via_spectral(f: &PlaneFunction, z: C64, r: f64, method: PairingMethod) -> C64 {
    let k_top = max_projection_index(f);
    let q_max = f.terms().iter().map(|t| t.q()).max().unwrap_or(0);
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..=k_top {
        let proj = project_to_series(f, k, q_max, method);
        acc += proj.series.eval(z) * phi_value(k, 0, r);
    }
    acc / std::f64::consts::TAU
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{circle_mean, gauss_legendre, QuadratureSpec};
    use crate::twisted_ops::{twisted_spherical_mean, TypeTerm};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn term_norms_match_closed_forms() {
        let tau = std::f64::consts::TAU;
        // ‖φ_k‖² = 2π for every k (rad = hol with p = 0)
        for k in 0..5 {
            assert!((term_l2_norm_hol(k, 0).powi(2) - tau).abs() < 1e-12);
        }
        // ‖z̄² φ_1²‖² = 2π·4·3! = 48π
        assert!((term_l2_norm(1, 2).powi(2) - 24.0 * tau).abs() < 1e-10);
        // hol and anti agree where both apply: ‖z φ_0^1‖² = 2π·2·1 = 4π
        assert!((term_l2_norm_hol(1, 1).powi(2) - 2.0 * tau).abs() < 1e-12);
        // log-space branch agrees with the exact branch at the crossover
        for (k, q) in [(100usize, 49usize), (100, 51)] {
            let exact = {
                let ratio = BigRational::new(factorial(k + q), factorial(k));
                (tau * 2f64.powi(q as i32) * to_f64(&ratio)).sqrt()
            };
            let got = term_l2_norm(k, q);
            assert!((got - exact).abs() < 1e-6 * exact, "(k, q) = ({k}, {q})");
        }
    }

    #[test]
    fn term_norm_matches_plane_quadrature() {
        // ∫_ℂ |z̄^q φ_k^q|² dA by tensor quadrature vs the closed form.
        for (k, q) in [(0usize, 1usize), (1, 2), (2, 3)] {
            let (nodes, weights) = gauss_legendre(240, 0.0, 16.0);
            let mut acc = 0.0;
            for (r, w) in nodes.iter().zip(&weights) {
                let v = r.powi(q as i32) * phi_value(k, q, *r);
                acc += w * r * v * v;
            }
            acc *= std::f64::consts::TAU;
            let want = term_l2_norm(k, q).powi(2);
            assert!((acc - want).abs() < 1e-8 * want, "(k, q) = ({k}, {q})");
        }
    }

    #[test]
    fn coefficient_bound_values_and_identity() {
        // (k, q) = (0, 0): bound = C/√2
        assert!((coefficient_bound(1.0, 0, 0) - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        // (C, k, q) = (1, 1, 1): (1/(4·2))^{1/2} = 1/(2√2)
        assert!((coefficient_bound(1.0, 1, 1) - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
        // bound² · ‖term‖² = π C² for any (k, q)
        for (k, q) in [(0usize, 0usize), (1, 1), (3, 2), (7, 5), (160, 20)] {
            let b = coefficient_bound(2.5, k, q);
            let n = term_l2_norm(k, q);
            let prod = b * b * n * n;
            let want = std::f64::consts::PI * 2.5 * 2.5;
            assert!((prod - want).abs() < 1e-9 * want, "(k, q) = ({k}, {q})");
        }
    }

    #[test]
    fn recursion_family_pinned_values() {
        let fam = recursion_family_q1(c(1.0, 0.0), 7);
        assert!((fam.c_hol[&1] - c(-2.0, 0.0)).norm() < 1e-15);
        assert!((fam.c_anti[&1] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((fam.c_anti[&3] - c(0.125, 0.0)).norm() < 1e-15);
        assert!((fam.c_anti[&5] - c(1.0 / 96.0, 0.0)).norm() < 1e-17);
        assert!((fam.c_anti[&7] - c(1.0 / 1536.0, 0.0)).norm() < 1e-18);
        assert!(!fam.c_anti.contains_key(&2));
        assert!(!fam.c_anti.contains_key(&4));
        assert_eq!(fam.c_rad, c(0.0, 0.0));
        // exact route: successive ratio a_{2m+3}/a_{2m+1} = 1/(4(m+2))
        let exact = recursion_family_exact(11);
        for w in exact.windows(2) {
            let (q0, a0) = &w[0];
            let (q1, a1) = &w[1];
            assert_eq!(q1 - q0, 2);
            let m = (q0 - 1) / 2;
            let want = BigRational::new(BigInt::from(1), BigInt::from(4 * (m as i64 + 2)));
            assert_eq!(a1 / a0, want);
        }
    }

    #[test]
    fn recursion_family_vanishes_on_line_in_the_limit() {
        // The infinite family restricts to zero on the real line; truncation
        // at q_max leaves only the topmost degree, whose size collapses
        // superexponentially. Sup over the line must decrease in q_max.
        let xs: Vec<f64> = (0..=24).map(|i| i as f64 * 0.25).collect();
        let sup = |q_max: usize| {
            let fam = recursion_family_q1(c(1.0, 0.0), q_max);
            xs.iter()
                .map(|&x| fam.eval(c(x, 0.0)).norm())
                .fold(0.0f64, f64::max)
        };
        let sups: Vec<f64> = [11, 21, 41].iter().map(|&q| sup(q)).collect();
        assert!(sups[0] > sups[1] && sups[1] > sups[2], "sups = {sups:?}");
        let fam41 = recursion_family_q1(c(1.0, 0.0), 41);
        assert!(fam41.eval(c(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn raabe_sequence_limit_and_divergence() {
        // b_0 = 2!/1 = 2, b_1 = 4!/(4·4) = 3/2, b_2 = 6!/(16·36) = 5/4
        assert!((raabe_term(0) - 2.0).abs() < 1e-12);
        assert!((raabe_term(1) - 1.5).abs() < 1e-12);
        assert!((raabe_term(2) - 1.25).abs() < 1e-12);
        // the ratio sequence: m(b_{m+1}/b_m − 1) = −m/(2m+4) analytically
        for m in [1usize, 10, 100, 10_000] {
            let analytic = -(m as f64) / (2.0 * m as f64 + 4.0);
            assert!(
                (raabe_sequence(m) - analytic).abs() < 1e-12,
                "m = {m}: {} vs {analytic}",
                raabe_sequence(m)
            );
        }
        // log-space b_m agrees with the exact rational at moderate size
        for m in [50usize, 200] {
            let exact = to_f64(&raabe_term_exact(m));
            assert!((raabe_term(m) - exact).abs() < 1e-9 * exact, "m = {m}");
        }
        assert!((raabe_sequence(10_000) + 0.5).abs() < 1e-2);
        // divergence is visible early: Σ_{m≤100} b_m > 10
        assert!(raabe_partial_sum(100) > 10.0);
        // Stirling envelope
        for m in [10usize, 1000] {
            let rel = (raabe_term(m) - raabe_stirling_estimate(m)).abs() / raabe_term(m);
            assert!(rel < 0.1 / (m as f64).max(4.0).sqrt(), "m = {m}");
        }
    }

    fn sample_series() -> HBLSeries {
        let mut s = HBLSeries::zero(3, 4);
        s.c_rad = c(0.7, -0.1);
        s.c_hol.insert(1, c(-1.2, 0.4));
        s.c_hol.insert(3, c(0.0, 0.9));
        s.c_anti.insert(2, c(0.3, 0.3));
        s.c_anti.insert(4, c(-0.05, 0.0));
        s
    }

    #[test]
    fn atilde_recovers_coefficients() {
        let s = sample_series();
        assert!((coefficient_via_atilde(&s, 0) - s.c_rad).norm() < 1e-12);
        assert!((coefficient_via_atilde(&s, 1) - s.c_hol[&1]).norm() < 1e-12);
        assert!(coefficient_via_atilde(&s, 2).norm() < 1e-12);
        assert!((coefficient_via_atilde(&s, 3) - s.c_hol[&3]).norm() < 1e-12);
        assert!(coefficient_via_atilde(&s, 4).norm() < 1e-12);
        assert!(coefficient_via_atilde(&s, 7).norm() < 1e-12);
    }

    #[test]
    fn parseval_matches_plane_quadrature() {
        let s = sample_series();
        let (nodes, weights) = gauss_legendre(260, 0.0, 18.0);
        let mut acc = 0.0;
        for (r, w) in nodes.iter().zip(&weights) {
            // angular mean of |Q|² on the circle of radius r
            let mean = circle_mean(128, |t| {
                let v = s.eval(C64::from_polar(*r, t));
                c(v.norm_sqr(), 0.0)
            });
            acc += w * r * mean.re;
        }
        acc *= std::f64::consts::TAU;
        let want = s.norm_sq();
        assert!((acc - want).abs() < 1e-7 * want, "{acc} vs {want}");
    }

    #[test]
    fn projection_splits_by_type() {
        // f = φ_2 + z φ_1^1 + z̄³ φ_2³ (all matched orders): at k = 2 every
        // coefficient is exactly 2π; at k = 1 only the hol term survives.
        let f = PlaneFunction::new(vec![
            TypeTerm::new(0, 0, RadialProfile::phi(2, 0)).unwrap(),
            TypeTerm::new(1, 0, RadialProfile::phi(1, 1)).unwrap(),
            TypeTerm::new(0, 3, RadialProfile::phi(2, 3)).unwrap(),
        ])
        .unwrap();
        let tau = std::f64::consts::TAU;
        let at2 = project_to_series(&f, 2, 5, PairingMethod::Exact);
        assert!((at2.series.c_rad - c(tau, 0.0)).norm() < 1e-12);
        assert!((at2.series.c_hol[&1] - c(tau, 0.0)).norm() < 1e-12);
        assert!((at2.series.c_anti[&3] - c(tau, 0.0)).norm() < 1e-12);
        assert_eq!(at2.dropped_tail_norm, 0.0);
        let at1 = project_to_series(&f, 1, 5, PairingMethod::Exact);
        assert_eq!(at1.series.c_rad, c(0.0, 0.0));
        assert!(!at1.series.c_hol.contains_key(&1) || at1.series.c_hol[&1].norm() < 1e-15);
        assert!(at1.series.c_anti.is_empty());
        // truncating below q = 3 reports the dropped tail
        let trunc = project_to_series(&f, 2, 2, PairingMethod::Exact);
        let want_tail = tau * term_l2_norm(2, 3);
        assert!((trunc.dropped_tail_norm - want_tail).abs() < 1e-9 * want_tail);
    }

    #[test]
    fn spectral_route_matches_direct_tsm() {
        // f = φ_1: Q_1 = 2π φ_1 and f × μ_r(z) = φ_1(r) φ_1(|z|).
        let f = PlaneFunction::single(TypeTerm::new(0, 0, RadialProfile::phi(1, 0)).unwrap());
        let z = c(1.0, 0.0);
        let got = tsm_via_spectral(&f, z, 1.0, PairingMethod::Exact);
        let phi1 = phi_value(1, 0, 1.0);
        assert!((got - c(phi1 * phi1, 0.0)).norm() < 1e-12);
        // and agreement with quadrature for a mixed function
        let g = PlaneFunction::new(vec![
            TypeTerm::new(0, 0, RadialProfile::phi(1, 0)).unwrap(),
            TypeTerm::new(2, 0, RadialProfile::phi(1, 2)).unwrap(),
            TypeTerm::new(0, 1, RadialProfile::phi(0, 1)).unwrap(),
        ])
        .unwrap();
        for (z, r) in [(c(0.5, -0.3), 0.8), (c(1.1, 0.7), 1.9)] {
            let spectral = tsm_via_spectral(&g, z, r, PairingMethod::Exact);
            let spec = QuadratureSpec::auto(z, 0, g.max_poly_degree()).with_tol(1e-8);
            let direct = twisted_spherical_mean(&g, z, r, &spec).unwrap().value;
            assert!(
                (spectral - direct).norm() < 1e-6,
                "z = {z}, r = {r}: {spectral} vs {direct}"
            );
        }
    }

    #[test]
    fn series_json_round_trip() {
        let s = sample_series();
        let json = crate::jsonfmt::to_json_string(&s);
        let back: HBLSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
        // keys appear in numeric order in the serialized form
        let hol_pos = json.find("\"c_hol\"").unwrap();
        let anti_pos = json.find("\"c_anti\"").unwrap();
        let one = json[hol_pos..].find("\"1\"").unwrap();
        let three = json[hol_pos..].find("\"3\"").unwrap();
        assert!(one < three);
        assert!(json[anti_pos..].find("\"2\"").unwrap() < json[anti_pos..].find("\"4\"").unwrap());
    }
}
