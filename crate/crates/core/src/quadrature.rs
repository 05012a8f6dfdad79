//! Quadrature rules for the floating evaluation route.
//!
//! Angular integrals over the circle use the trapezoid rule, which is exact
//! on trigonometric monomials `e^{imθ}` with `|m| < M` and spectrally accurate
//! on the entire integrands produced by Gaussian×twist kernels. Radial
//! integrals use Gauss–Legendre on a truncated interval `[0, R]`, with `R`
//! chosen so that the Gaussian tail is below the requested tolerance.
//!
//! Every consumer self-validates by point doubling: the returned value is the
//! fine result, and the coarse/fine discrepancy is reported as the error
//! estimate.

use crate::C64;

/// Parameters of the tensor-product rule used by the twisted operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Trapezoid points on the circle.
    pub angular_points: usize,
    /// Gauss–Legendre points on `[0, truncation_radius]`.
    pub radial_points: usize,
    /// Radial cutoff; the integrand's Gaussian factor must be negligible beyond it.
    pub truncation_radius: f64,
    /// Requested tolerance for the point-doubling self check.
    pub tol: f64,
}

impl QuadratureSpec {
    /// A rule adequate for convolving against `φ_k` at the point `z`, given
    /// the maximal monomial degree `max_degree` of the plane function.
    ///
    /// The cutoff follows the classically allowed region of `φ_k`
    /// (`R = max(8, |z| + 6√(2k+1))`, Gaussian tail < 1e−15); the angular
    /// count covers both the polynomial band `max_degree + 2k + 2` and the
    /// factorial tail of the combined Gauss–twist kernel `e^{(r z̄ /2)·e^{iθ}}`,
    /// whose terms decay only once `M` exceeds about `3.6 · R|z|/2`.
    pub fn auto(z: C64, k: usize, max_degree: usize) -> Self {
        let radius = (8.0f64).max(z.norm() + 6.0 * (2.0 * k as f64 + 1.0).sqrt());
        let c = radius * z.norm() / 2.0;
        let band = 4 * (max_degree + 2 * k + 2);
        let angular = 64usize.max(band).max((3.6 * c).ceil() as usize);
        // round up to even so doubling stays aligned with the band structure
        let angular = angular + (angular & 1);
        Self {
            angular_points: angular,
            radial_points: 128,
            truncation_radius: radius,
            tol: 1e-9,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// The same rule with both directions doubled (self-validation partner).
    pub fn doubled(&self) -> Self {
        Self {
            angular_points: self.angular_points * 2,
            radial_points: self.radial_points * 2,
            truncation_radius: self.truncation_radius,
            tol: self.tol,
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            angular_points: 64,
            radial_points: 128,
            truncation_radius: 8.0,
            tol: 1e-9,
        }
    }
}

/// Mean of `g` over the circle: `(1/2π) ∫ g(θ) dθ` by the `m`-point trapezoid rule.
pub fn circle_mean(m: usize, mut g: impl FnMut(f64) -> C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..m {
        acc += g(2.0 * std::f64::consts::PI * j as f64 / m as f64);
    }
    acc / m as f64
}

/// Gauss–Legendre nodes and weights on `[a, b]`, by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = (n + 1) / 2;
    for i in 0..half {
        // Tricomi-style initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    let mid = 0.5 * (a + b);
    let scale = 0.5 * (b - a);
    for i in 0..n {
        nodes[i] = mid + scale * nodes[i];
        weights[i] *= scale;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for m in 1..n {
        let p2 = ((2.0 * m as f64 + 1.0) * x * p1 - m as f64 * p0) / (m as f64 + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        // n points are exact through degree 2n − 1.
        let (x, w) = gauss_legendre(6, 0.0, 2.0);
        for deg in 0..=11usize {
            let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
            let want = 2f64.powi(deg as i32 + 1) / (deg as f64 + 1.0);
            assert!((got - want).abs() < 1e-12 * want.max(1.0), "degree {deg}");
        }
    }

    #[test]
    fn gauss_legendre_gaussian_tail() {
        let (x, w) = gauss_legendre(200, 0.0, 12.0);
        let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * (-xi * xi / 2.0).exp() * xi).sum();
        assert!((got - 1.0).abs() < 1e-13);
    }

    proptest! {
        #[test]
        fn trapezoid_exact_on_circle_monomials(m in 1usize..=40, mm in prop::sample::select(vec![1usize, 2, 3, 5, 8, 13, 21, 34])) {
            // (1/2π) ∫ e^{imθ} dθ = δ_{m0}, reproduced exactly when |m| < M.
            prop_assume!(mm < m);
            for sign in [-1.0f64, 1.0] {
                let got = circle_mean(m, |t| C64::from_polar(1.0, sign * mm as f64 * t));
                prop_assert!(got.norm() < 1e-13);
            }
            let zero = circle_mean(m, |_| C64::new(1.0, 0.0));
            prop_assert!((zero - C64::new(1.0, 0.0)).norm() < 1e-14);
        }

        #[test]
        fn trapezoid_aliases_multiples_of_m(m in 2usize..=20) {
            // frequency exactly M aliases to 1, the signature failure mode.
            let got = circle_mean(m, |t| C64::from_polar(1.0, m as f64 * t));
            prop_assert!((got - C64::new(1.0, 0.0)).norm() < 1e-13);
        }
    }
}
