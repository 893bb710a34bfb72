//! Bivariate polynomials in (r, s) with BigRational coefficients.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{rat_int, Rat};

/// Sparse representation keyed by (r-power, s-power). BTreeMap keeps
/// iteration deterministic, which matters for reproducible output files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly2 {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl RatPoly2 {
    pub fn zero() -> Self {
        RatPoly2 { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = RatPoly2::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn monomial(a: u32, b: u32, c: Rat) -> Self {
        let mut p = RatPoly2::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn var_r() -> Self {
        Self::monomial(1, 0, Rat::one())
    }

    pub fn var_s() -> Self {
        Self::monomial(0, 1, Rat::one())
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn add(&self, other: &RatPoly2) -> RatPoly2 {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &RatPoly2) -> RatPoly2 {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatPoly2 {
        let mut out = RatPoly2::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> RatPoly2 {
        if c.is_zero() {
            return RatPoly2::zero();
        }
        let mut out = RatPoly2::zero();
        for (&(a, b), v) in &self.terms {
            out.add_term(a, b, v * c);
        }
        out
    }

    pub fn mul(&self, other: &RatPoly2) -> RatPoly2 {
        let mut out = RatPoly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> RatPoly2 {
        let mut acc = RatPoly2::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, r: &Rat, s: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..a {
                term *= r;
            }
            for _ in 0..b {
                term *= s;
            }
            acc += term;
        }
        acc
    }

    pub fn eval_f64(&self, r: f64, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| {
                super::rat_to_f64(c) * crate::math::powi(r, a as i32) * crate::math::powi(s, b as i32)
            })
            .sum()
    }

    /// Exact integral over the reference triangle.
    pub fn integrate_ref(&self) -> Rat {
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * monomial_integral(a, b);
        }
        acc
    }
}

fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Integral of r^a s^b over the reference triangle, exactly.
///
/// Shifting to the unit simplex turns each factor into (2x - 1)^a (2y - 1)^b
/// with the simplex monomial formula i! j! / (i + j + 2)! closing the sum.
pub fn monomial_integral(a: u32, b: u32) -> Rat {
    let mut acc = Rat::zero();
    for i in 0..=a {
        for j in 0..=b {
            let sign = if (a - i + b - j) % 2 == 0 { 1 } else { -1 };
            let num = binomial(a, i) * binomial(b, j) * BigInt::from(sign)
                * (BigInt::one() << (i + j))
                * factorial(i)
                * factorial(j);
            acc += Rat::new(num, factorial(i + j + 2));
        }
    }
    acc * rat_int(4)
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    #[test]
    fn low_order_moments() {
        assert_eq!(monomial_integral(0, 0), rat_int(2));
        assert_eq!(monomial_integral(1, 0), rat(-2, 3));
        assert_eq!(monomial_integral(0, 1), rat(-2, 3));
        assert_eq!(monomial_integral(2, 0), rat(2, 3));
        assert_eq!(monomial_integral(1, 1), Rat::zero());
        assert_eq!(monomial_integral(2, 1), rat(-2, 15));
    }

    #[test]
    fn symmetry_in_r_and_s() {
        for a in 0..6u32 {
            for b in 0..6u32 {
                assert_eq!(monomial_integral(a, b), monomial_integral(b, a));
            }
        }
    }

    #[test]
    fn arithmetic_and_eval() {
        // (r + s)^2 - r^2 - s^2 = 2 r s
        let r = RatPoly2::var_r();
        let s = RatPoly2::var_s();
        let lhs = r.add(&s).pow(2).sub(&r.pow(2)).sub(&s.pow(2));
        let rhs = r.mul(&s).scale(&rat_int(2));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.eval(&rat(1, 2), &rat(-1, 3)), rat(-1, 3));
        assert_eq!(lhs.degree(), 2);
    }

    #[test]
    fn quadratic_integral_cross_check() {
        // direct iterated integral of r^2 over the triangle gives 2/3;
        // mixed second moment was computed the same way
        let p = RatPoly2::monomial(2, 0, rat_int(1));
        assert_eq!(p.integrate_ref(), rat(2, 3));
        let q = RatPoly2::monomial(2, 1, rat_int(1));
        assert_eq!(q.integrate_ref(), rat(-2, 15));
    }
}
