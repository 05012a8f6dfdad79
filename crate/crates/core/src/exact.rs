//! Exact integer/rational helpers shared by the polynomial and elimination code.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

/// n! as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient C(n, k) for nonnegative integers.
pub fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Generalized binomial C(k + α, m) = ∏_{i=1}^{m} (k + α − m + i) / m!
/// for rational α and nonnegative integer m, via the product formula.
///
/// This is the coefficient form used for Laguerre polynomials with rational
/// order: C(k + α, k − j) = ∏_{i=1}^{k−j} (α + j + i) / (k − j)!.
pub fn binom_shifted(alpha: &BigRational, k: usize, m: usize) -> BigRational {
    // numerator ∏_{i=1}^{m} (α + (k − m) + i)
    let mut num = BigRational::one();
    let base = BigRational::from(BigInt::from(k as i64 - m as i64));
    for i in 1..=m {
        num *= alpha + &base + BigRational::from(BigInt::from(i as i64));
    }
    num / BigRational::from(factorial(m))
}

/// Exact rational as a display string: `p/q`, or just `p` when q = 1.
pub fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p/q` or `p` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(BigRational::from(p))
        }
    }
}

/// Nearest double to an exact rational (ratio of big integers).
pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fallback for ratios whose parts individually overflow f64.
        let digits = |n: &BigInt| n.abs().to_string().len() as i32;
        let shift = digits(x.numer()).min(digits(x.denom())) - 1;
        let scale = BigInt::from(10u32).pow(shift.max(0) as u32);
        let num = (x.numer() / &scale).to_f64().unwrap_or(f64::NAN);
        let den = (x.denom() / &scale).to_f64().unwrap_or(f64::NAN);
        num / den
    })
}

/// ln(n!) in double precision (exact summation; cached would be overkill here).
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binom(10, 4), BigInt::from(210));
        assert_eq!(binom(4, 7), BigInt::zero());
        assert_eq!(binom(12, 5), BigInt::from(792));
    }

    #[test]
    fn shifted_binomial_matches_integer_case() {
        // α = 2, k = 4: C(6, 4 − j) for j = 0..4.
        let alpha = BigRational::from(BigInt::from(2));
        for j in 0..=4usize {
            let got = binom_shifted(&alpha, 4, 4 - j);
            let want = BigRational::from(binom(6, 4 - j));
            assert_eq!(got, want, "j = {j}");
        }
    }

    #[test]
    fn shifted_binomial_rational_order() {
        // C(1/2 + 2, 2) = (5/2)(3/2)/2 = 15/8.
        let alpha = BigRational::new(BigInt::from(1), BigInt::from(2));
        let got = binom_shifted(&alpha, 2, 2);
        assert_eq!(got, BigRational::new(BigInt::from(15), BigInt::from(8)));
    }

    #[test]
    fn rational_strings_round_trip() {
        let x = BigRational::new(BigInt::from(-3), BigInt::from(8));
        assert_eq!(rational_string(&x), "-3/8");
        assert_eq!(parse_rational("-3/8").unwrap(), x);
        let y = BigRational::from(BigInt::from(6));
        assert_eq!(rational_string(&y), "6");
        assert_eq!(parse_rational("6").unwrap(), y);
        assert!(parse_rational("1/0").is_none());
    }

    #[test]
    fn ln_factorial_matches_exact() {
        let exact = to_f64(&BigRational::from(factorial(20))).ln();
        assert!((ln_factorial(20) - exact).abs() < 1e-10);
    }
}
