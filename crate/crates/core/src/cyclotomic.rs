//! Exact arithmetic in the cyclotomic field ℚ(ζ_m), ζ_m = e^{2πi/m}.
//!
//! Elements are residues of ℚ[x] modulo the m-th cyclotomic polynomial Φ_m,
//! stored as coefficient vectors of fixed length deg Φ_m = φ(m). Since Φ_m
//! is irreducible over ℚ, every nonzero residue is invertible (extended
//! Euclid), so the arithmetic is a genuine field: equalities decided here are
//! exact statements about complex numbers, with no floating error to argue
//! about. Line-restriction systems with N directions live in ℚ(ζ_{2N}).
//!
//! Φ_m is built from the defining product `x^m − 1 = Π_{d|m} Φ_d` by exact
//! division, not from a table.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::C64;

/// Dense polynomial over ℚ, lowest degree first, no trailing-zero guarantee.
type Poly = Vec<BigRational>;

fn poly_trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Quotient and remainder of `a / b` in ℚ[x]; `b` need not be monic.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    assert!(!lead.is_zero(), "division by zero polynomial");
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    if rem.len() <= db && !(db == 0) {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db)];
    while rem.len() > db || (db == 0 && rem.iter().any(|c| !c.is_zero())) {
        let dr = rem.len() - 1;
        if dr < db {
            break;
        }
        let factor = &rem[dr] / &lead;
        if factor.is_zero() {
            rem.pop();
            continue;
        }
        quot[dr - db] = factor.clone();
        for i in 0..=db {
            let delta = &factor * &b[i];
            rem[dr - db + i] -= delta;
        }
        poly_trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
        if db == 0 {
            break;
        }
    }
    if quot.is_empty() {
        quot.push(BigRational::zero());
    }
    (quot, rem)
}

/// Coefficients of Φ_m, lowest degree first (monic, integer entries).
pub fn cyclotomic_polynomial(m: usize) -> Vec<BigRational> {
    assert!(m >= 1);
    // x^m − 1
    let mut num = vec![BigRational::zero(); m + 1];
    num[0] = -BigRational::one();
    num[m] = BigRational::one();
    for d in 1..m {
        if m % d == 0 {
            let (q, r) = poly_divmod(&num, &cyclotomic_polynomial(d));
            debug_assert!(r.iter().all(|c| c.is_zero()), "Φ_{d} must divide x^{m} − 1");
            num = q;
        }
    }
    poly_trim(&mut num);
    num
}

/// An element of ℚ(ζ_m): residue coefficients, length exactly deg Φ_m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyc(Vec<BigRational>);

impl Cyc {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }
}

/// The field ℚ(ζ_m) with its reduction modulus.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    m: usize,
    modulus: Poly,
}

impl CyclotomicField {
    pub fn new(m: usize) -> Self {
        Self {
            m,
            modulus: cyclotomic_polynomial(m),
        }
    }

    /// Root order m (ζ = e^{2πi/m}).
    pub fn order(&self) -> usize {
        self.m
    }

    /// Field degree [ℚ(ζ_m) : ℚ] = deg Φ_m = φ(m).
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn residue(&self, mut p: Poly) -> Cyc {
        poly_trim(&mut p);
        if p.len() > self.degree() {
            let (_, r) = poly_divmod(&p, &self.modulus);
            p = r;
        }
        p.resize(self.degree().max(1), BigRational::zero());
        // A degree-1 field (m ∈ {1, 2}) stores a single constant.
        p.truncate(self.degree().max(1));
        Cyc(p)
    }

    pub fn zero(&self) -> Cyc {
        self.residue(vec![BigRational::zero()])
    }

    pub fn one(&self) -> Cyc {
        self.residue(vec![BigRational::one()])
    }

    pub fn from_rational(&self, r: BigRational) -> Cyc {
        self.residue(vec![r])
    }

    pub fn from_integer(&self, n: i64) -> Cyc {
        self.from_rational(BigRational::from(BigInt::from(n)))
    }

    /// ζ^j (any integer j, reduced mod m).
    pub fn zeta_pow(&self, j: i64) -> Cyc {
        let j = j.rem_euclid(self.m as i64) as usize;
        let mut p = vec![BigRational::zero(); j + 1];
        p[j] = BigRational::one();
        self.residue(p)
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        self.residue(poly_mul(&a.0, &b.0))
    }

    pub fn scale(&self, a: &Cyc, r: &BigRational) -> Cyc {
        Cyc(a.0.iter().map(|x| x * r).collect())
    }

    pub fn is_zero(&self, a: &Cyc) -> bool {
        a.0.iter().all(|c| c.is_zero())
    }

    /// Multiplicative inverse by extended Euclid against Φ_m; `None` for 0.
    pub fn inv(&self, a: &Cyc) -> Option<Cyc> {
        if self.is_zero(a) {
            return None;
        }
        // Invariants: old_u·a + (…)·Φ = old_r, ditto (u, r).
        let mut old_r = a.0.clone();
        poly_trim(&mut old_r);
        let mut r = self.modulus.clone();
        let mut old_u: Poly = vec![BigRational::one()];
        let mut u: Poly = vec![BigRational::zero()];
        while !(r.len() == 1 && r[0].is_zero()) {
            let (q, rem) = poly_divmod(&old_r, &r);
            let qu = poly_mul(&q, &u);
            let mut new_u = old_u.clone();
            new_u.resize(new_u.len().max(qu.len()), BigRational::zero());
            for (i, c) in qu.iter().enumerate() {
                new_u[i] -= c;
            }
            poly_trim(&mut new_u);
            old_r = r;
            r = rem;
            poly_trim(&mut r);
            old_u = u;
            u = new_u;
        }
        // gcd is the nonzero constant old_r[0] (Φ_m is irreducible).
        debug_assert_eq!(old_r.len(), 1);
        let g = old_r[0].clone();
        debug_assert!(!g.is_zero());
        let scaled: Poly = old_u.iter().map(|c| c / &g).collect();
        Some(self.residue(scaled))
    }

    pub fn div(&self, a: &Cyc, b: &Cyc) -> Option<Cyc> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub fn eq(&self, a: &Cyc, b: &Cyc) -> bool {
        a.0 == b.0
    }

    /// Complex embedding at the principal root ζ_m = e^{2πi/m}.
    pub fn to_complex(&self, a: &Cyc) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (j, c) in a.0.iter().enumerate() {
            let angle = std::f64::consts::TAU * j as f64 / self.m as f64;
            acc += C64::from_polar(1.0, angle) * crate::exact::to_f64(c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(p: &[BigRational]) -> Vec<i64> {
        p.iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integer cyclotomic coefficient");
                let n = c.to_integer();
                i64::try_from(&n).unwrap()
            })
            .collect()
    }

    #[test]
    fn cyclotomic_polynomials_match_known_forms() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(8)), vec![1, 0, 0, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(24)), vec![1, 0, 0, 0, -1, 0, 0, 0, 1]);
        // degrees are Euler totients
        for (m, phi) in [(5usize, 4usize), (7, 6), (9, 6), (10, 4), (16, 8), (18, 6)] {
            assert_eq!(cyclotomic_polynomial(m).len() - 1, phi, "m = {m}");
        }
    }

    #[test]
    fn zeta_powers_wrap_and_embed() {
        let f = CyclotomicField::new(10);
        assert!(f.eq(&f.zeta_pow(10), &f.one()));
        assert!(f.eq(&f.zeta_pow(-3), &f.zeta_pow(7)));
        for j in 0..10i64 {
            let want = C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / 10.0);
            assert!((f.to_complex(&f.zeta_pow(j)) - want).norm() < 1e-12, "j = {j}");
        }
    }

    #[test]
    fn sixth_root_facts_are_exact() {
        // In ℚ(ζ_6): ω = ζ² is a primitive cube root, so 1 + ω + ω² = 0 and ω³ = 1.
        let f = CyclotomicField::new(6);
        let omega = f.zeta_pow(2);
        let omega2 = f.mul(&omega, &omega);
        let sum = f.add(&f.add(&f.one(), &omega), &omega2);
        assert!(f.is_zero(&sum));
        assert!(f.eq(&f.mul(&omega2, &omega), &f.one()));
        // and ζ³ = −1
        assert!(f.eq(&f.zeta_pow(3), &f.neg(&f.one())));
    }

    #[test]
    fn inverse_examples() {
        // (1 + ζ)⁻¹ in ℚ(ζ_8), checked by multiplying back and by embedding.
        let f = CyclotomicField::new(8);
        let a = f.add(&f.one(), &f.zeta_pow(1));
        let ia = f.inv(&a).unwrap();
        assert!(f.eq(&f.mul(&a, &ia), &f.one()));
        let emb = f.to_complex(&a) * f.to_complex(&ia);
        assert!((emb - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(f.inv(&f.zero()).is_none());
        // degree-1 fields degenerate to ℚ
        let f2 = CyclotomicField::new(2);
        let half = f2.from_rational(q(1, 2));
        assert!(f2.eq(&f2.inv(&half).unwrap(), &f2.from_integer(2)));
    }

    fn arb_elem(m: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
        let deg = CyclotomicField::new(m).degree().max(1);
        prop::collection::vec((-6i64..=6, 1i64..=4), deg)
    }

    fn build(f: &CyclotomicField, raw: &[(i64, i64)]) -> Cyc {
        let mut acc = f.zero();
        for (j, (n, d)) in raw.iter().enumerate() {
            let term = f.scale(&f.zeta_pow(j as i64), &q(*n, *d));
            acc = f.add(&acc, &term);
        }
        acc
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms_hold(ra in arb_elem(12), rb in arb_elem(12), rc in arb_elem(12)) {
            let f = CyclotomicField::new(12);
            let (a, b, c) = (build(&f, &ra), build(&f, &rb), build(&f, &rc));
            // distributivity and commutativity
            let lhs = f.mul(&a, &f.add(&b, &c));
            let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
            prop_assert!(f.eq(&lhs, &rhs));
            prop_assert!(f.eq(&f.mul(&a, &b), &f.mul(&b, &a)));
            // associativity
            prop_assert!(f.eq(&f.mul(&f.mul(&a, &b), &c), &f.mul(&a, &f.mul(&b, &c))));
            // inverses
            if !f.is_zero(&a) {
                let ia = f.inv(&a).unwrap();
                prop_assert!(f.eq(&f.mul(&a, &ia), &f.one()));
            }
            // embedding is a ring homomorphism (numerically)
            let emb = (f.to_complex(&f.mul(&a, &b)) - f.to_complex(&a) * f.to_complex(&b)).norm();
            prop_assert!(emb < 1e-9);
        }
    }
}
