//! Laurent polynomials with half-integer exponents.
//!
//! Exponents are stored doubled, so `t^(5/2)` lives at key `5` and `t^3` at
//! key `6`. This keeps exponent arithmetic integral while supporting the
//! half-integer gradings that show up for even-component links.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::EvalError;
use crate::scalar::Scalar;

/// Laurent polynomial over an exact scalar ring, exponents in (1/2)·Z.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly<R> {
    /// doubled exponent -> nonzero coefficient
    terms: BTreeMap<i64, R>,
}

impl<R: Scalar> LaurentPoly<R> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(R::one(), 0)
    }

    /// `c * t^(d/2)` where `d` is the doubled exponent.
    pub fn monomial(c: R, doubled_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(doubled_exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, R)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in iter {
            p.add_term(d, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, doubled_exp: i64, c: R) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(doubled_exp).or_insert_with(R::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&doubled_exp);
        }
    }

    pub fn coeff(&self, doubled_exp: i64) -> R {
        self.terms.get(&doubled_exp).cloned().unwrap_or_else(R::zero)
    }

    /// Iterate `(doubled_exp, coeff)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_doubled_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_doubled_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is an integer (doubled exponents all even).
    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|d| d % 2 == 0)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        for (d, a) in self.terms() {
            out.add_term(d, a.clone() * c.clone());
        }
        out
    }

    /// Multiply by `t^(d/2)`.
    pub fn shift(&self, doubled_exp: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(d, c)| (d + doubled_exp, c.clone())).collect(),
        }
    }

    /// Substitute `t -> t^{-1}`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(d, c)| (-d, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Substitute another polynomial for the variable. Requires all
    /// exponents of `self` to be non-negative integers.
    pub fn compose(&self, x: &Self) -> Result<Self, EvalError> {
        let mut out = Self::zero();
        for (d, c) in self.terms() {
            if d % 2 != 0 {
                return Err(EvalError::HalfIntegerExponent);
            }
            if d < 0 {
                return Err(EvalError::NonInvertible);
            }
            out = &out + &x.pow((d / 2) as u32).scale(c);
        }
        Ok(out)
    }

    /// Evaluate with an explicit square root of the evaluation point:
    /// `t^(d/2)` maps to `sqrt_x^d`. Negative exponents require `inv` to
    /// succeed on `sqrt_x`.
    pub fn eval_with_sqrt<F>(&self, sqrt_x: &R, inv: F) -> Result<R, EvalError>
    where
        F: Fn(&R) -> Option<R>,
    {
        let sqrt_inv = if self.min_doubled_exp().unwrap_or(0) < 0 {
            Some(inv(sqrt_x).ok_or(EvalError::NonInvertible)?)
        } else {
            None
        };
        let mut acc = R::zero();
        for (d, c) in self.terms() {
            let base = if d >= 0 { sqrt_x } else { sqrt_inv.as_ref().unwrap() };
            let mut p = R::one();
            for _ in 0..d.unsigned_abs() {
                p = p * base.clone();
            }
            acc += c.clone() * p;
        }
        Ok(acc)
    }

    /// Evaluate at `x` when all exponents are integers.
    pub fn eval<F>(&self, x: &R, inv: F) -> Result<R, EvalError>
    where
        F: Fn(&R) -> Option<R>,
    {
        if !self.has_integer_exponents() {
            return Err(EvalError::HalfIntegerExponent);
        }
        let x_inv = if self.min_doubled_exp().unwrap_or(0) < 0 {
            Some(inv(x).ok_or(EvalError::NonInvertible)?)
        } else {
            None
        };
        let mut acc = R::zero();
        for (d, c) in self.terms() {
            let k = d / 2;
            let base = if k >= 0 { x } else { x_inv.as_ref().unwrap() };
            let mut p = R::one();
            for _ in 0..k.unsigned_abs() {
                p = p * base.clone();
            }
            acc += c.clone() * p;
        }
        Ok(acc)
    }

    /// Map coefficients into another scalar ring.
    pub fn map_coeffs<S: Scalar, F: Fn(&R) -> S>(&self, f: F) -> LaurentPoly<S> {
        LaurentPoly::from_terms(self.terms().map(|(d, c)| (d, f(c))))
    }

    /// Render as a sorted term list, `coeff*v^exp` joined by ` + `, with
    /// half-integer exponents printed as `p/2`. Used for golden files.
    pub fn term_list(&self, var: char) -> String
    where
        R: fmt::Display,
    {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (d, c) in self.terms() {
            if d == 0 {
                parts.push(format!("{c}"));
            } else if d % 2 == 0 {
                parts.push(format!("{c}*{var}^{}", d / 2));
            } else {
                parts.push(format!("{c}*{var}^({d}/2)"));
            }
        }
        parts.join(" + ")
    }
}

impl<R: Scalar> Add for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn add(self, rhs: Self) -> LaurentPoly<R> {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl<R: Scalar> Sub for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn sub(self, rhs: Self) -> LaurentPoly<R> {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, -c.clone());
        }
        out
    }
}

impl<R: Scalar> Mul for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn mul(self, rhs: Self) -> LaurentPoly<R> {
        let mut out = LaurentPoly::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in rhs.terms() {
                out.add_term(d1 + d2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<R: Scalar> Neg for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn neg(self) -> LaurentPoly<R> {
        LaurentPoly {
            terms: self.terms.iter().map(|(d, c)| (*d, -c.clone())).collect(),
        }
    }
}

impl<R: Scalar + fmt::Display> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.term_list('t'))
    }
}

impl<R: Scalar + fmt::Display> fmt::Debug for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.term_list('t'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LaurentPoly<BigInt>;

    fn t(c: i64, d: i64) -> P {
        P::monomial(BigInt::from(c), d)
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let p = &t(1, 2) - &t(1, 2);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn multiplication_adds_exponents() {
        // (t^(1/2) - t^(-1/2))^2 = t - 2 + t^(-1)
        let z = &t(1, 1) - &t(1, -1);
        let z2 = &z * &z;
        assert_eq!(z2, P::from_terms([(2, 1.into()), (0, (-2).into()), ((-2), 1.into())]));
    }

    #[test]
    fn term_list_format() {
        let p = &(&t(-1, -5) - &t(1, -1)) + &t(3, 4);
        assert_eq!(p.term_list('t'), "-1*t^(-5/2) + -1*t^(-1/2) + 3*t^2");
        assert_eq!(P::zero().term_list('t'), "0");
    }

    #[test]
    fn invert_variable_is_involution() {
        let p = &t(2, 3) + &t(-5, -4);
        assert_eq!(p.invert_variable().invert_variable(), p);
    }

    #[test]
    fn compose_substitutes_powers() {
        // p(z) = z^2 + 1 at z = t^(1/2) - t^(-1/2): t - 1 + t^(-1)
        let p = &t(1, 4) + &t(1, 0);
        let z = &t(1, 1) - &t(1, -1);
        let q = p.compose(&z).unwrap();
        assert_eq!(q, P::from_terms([(2, 1.into()), (0, (-1).into()), ((-2), 1.into())]));
    }
}
