//! Exact arithmetic in the real quadratic field Q(sqrt5), holding the
//! Q-polynomial evaluation point (sqrt5 - 1)/2 and the ratio sets built
//! from powers of sqrt5.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// `a + b*sqrt(5)` with exact rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadValue {
    pub a: BigRational,
    pub b: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QuadValue {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadValue { a, b }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        QuadValue { a: rat(n, 1), b: BigRational::zero() }
    }

    pub fn sqrt5() -> Self {
        QuadValue { a: BigRational::zero(), b: rat(1, 1) }
    }

    /// The evaluation point (sqrt5 - 1)/2, a root of x^2 + x - 1.
    pub fn golden_point() -> Self {
        QuadValue { a: rat(-1, 2), b: rat(1, 2) }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn inv(&self) -> Option<QuadValue> {
        // (a + b sqrt5)^-1 = (a - b sqrt5) / (a^2 - 5 b^2)
        let norm = &self.a * &self.a - rat(5, 1) * (&self.b * &self.b);
        if norm.is_zero() {
            return None;
        }
        Some(QuadValue { a: &self.a / &norm, b: -(&self.b / &norm) })
    }

    pub fn div(&self, rhs: &QuadValue) -> Option<QuadValue> {
        Some(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: i64) -> Option<QuadValue> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut out = QuadValue::one();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        Some(out)
    }
}

impl Add for &QuadValue {
    type Output = QuadValue;
    fn add(self, rhs: Self) -> QuadValue {
        QuadValue { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}
impl Sub for &QuadValue {
    type Output = QuadValue;
    fn sub(self, rhs: Self) -> QuadValue {
        QuadValue { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}
impl Neg for &QuadValue {
    type Output = QuadValue;
    fn neg(self) -> QuadValue {
        QuadValue { a: -&self.a, b: -&self.b }
    }
}
impl Mul for &QuadValue {
    type Output = QuadValue;
    fn mul(self, rhs: Self) -> QuadValue {
        QuadValue {
            a: &self.a * &rhs.a + rat(5, 1) * (&self.b * &rhs.b),
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Add for QuadValue {
    type Output = QuadValue;
    fn add(self, rhs: Self) -> QuadValue {
        &self + &rhs
    }
}
impl Sub for QuadValue {
    type Output = QuadValue;
    fn sub(self, rhs: Self) -> QuadValue {
        &self - &rhs
    }
}
impl Mul for QuadValue {
    type Output = QuadValue;
    fn mul(self, rhs: Self) -> QuadValue {
        &self * &rhs
    }
}
impl Neg for QuadValue {
    type Output = QuadValue;
    fn neg(self) -> QuadValue {
        -&self
    }
}
impl AddAssign for QuadValue {
    fn add_assign(&mut self, rhs: Self) {
        *self = &*self + &rhs;
    }
}
impl Zero for QuadValue {
    fn zero() -> Self {
        QuadValue::zero()
    }
    fn is_zero(&self) -> bool {
        QuadValue::is_zero(self)
    }
}
impl One for QuadValue {
    fn one() -> Self {
        QuadValue::one()
    }
}

impl fmt::Display for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt5", self.b)
        } else {
            write!(f, "{} + {}*sqrt5", self.a, self.b)
        }
    }
}

impl fmt::Debug for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        <Self as fmt::Display>::fmt(self, f)
    }
}

/// Exact evaluation of an integer-coefficient polynomial (integer
/// exponents only) at a quadratic-field point.
pub fn eval_poly(p: &crate::IntPoly, x: &QuadValue) -> Result<QuadValue, crate::error::EvalError> {
    let pq = p.map_coeffs(|c| QuadValue::new(BigRational::from(c.clone()), BigRational::zero()));
    pq.eval(x, QuadValue::inv)
}

/// Membership test for the Q-polynomial ratio sets: for n >= 1 the set is
/// `{ +/- sqrt5^{+/-k} : 0 <= k <= n-1 } u { sqrt5^{+n}, sqrt5^{-n} }`;
/// for n = 0 it degenerates to `{1}`.
pub fn in_q_ratio_set(r: &QuadValue, n: u32) -> bool {
    let s5 = QuadValue::sqrt5();
    for k in 0..n as i64 {
        for e in [k, -k] {
            let v = s5.pow(e).expect("sqrt5 invertible");
            if r == &v || r == &-&v {
                return true;
            }
        }
    }
    for e in [n as i64, -(n as i64)] {
        if r == &s5.pow(e).unwrap() {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_point_satisfies_quadratic() {
        // x^2 + x - 1 = 0
        let x = QuadValue::golden_point();
        let v = &(&(&x * &x) + &x) - &QuadValue::one();
        assert!(v.is_zero());
    }

    #[test]
    fn inverse() {
        let x = &QuadValue::sqrt5() + &QuadValue::integer(2);
        assert_eq!(&x * &x.inv().unwrap(), QuadValue::one());
        assert!(QuadValue::zero().inv().is_none());
    }

    #[test]
    fn ratio_set_examples() {
        assert!(in_q_ratio_set(&QuadValue::one(), 1));
        // -sqrt5 requires k = 1: outside n = 1, inside n = 2
        let m = -&QuadValue::sqrt5();
        assert!(!in_q_ratio_set(&m, 1));
        assert!(in_q_ratio_set(&m, 2));
        // 5 = sqrt5^2: outside n = 1, inside n = 2
        let five = QuadValue::integer(5);
        assert!(!in_q_ratio_set(&five, 1));
        assert!(in_q_ratio_set(&five, 2));
    }
}
