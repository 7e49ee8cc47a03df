//! Exact arithmetic in the cyclotomic field Q(zeta) with zeta a primitive
//! 24th root of unity, minimal polynomial x^8 - x^4 + 1.
//!
//! The field contains every evaluation point the obstruction machinery
//! needs: omega = e^{i pi/3} = zeta^4 together with its square root
//! zeta^2, the imaginary unit i = zeta^6 with square root zeta^3, and the
//! real radicals sqrt(2) = zeta^3 + zeta^{-3} and sqrt(3) = zeta^2 +
//! zeta^{-2}. Coordinates are exact rationals in the power basis
//! 1, zeta, ..., zeta^7.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

const DEG: usize = 8;

/// Element of Q(zeta_24) in the power basis `1, zeta, ..., zeta^7`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloValue {
    coords: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

impl CycloValue {
    fn from_coords(coords: Vec<BigRational>) -> Self {
        debug_assert_eq!(coords.len(), DEG);
        CycloValue { coords }
    }

    pub fn zero() -> Self {
        Self::from_coords(vec![BigRational::zero(); DEG])
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        let mut c = vec![BigRational::zero(); DEG];
        c[0] = rat(n);
        Self::from_coords(c)
    }

    pub fn rational(q: BigRational) -> Self {
        let mut c = vec![BigRational::zero(); DEG];
        c[0] = q;
        Self::from_coords(c)
    }

    /// The generator zeta = e^{i pi / 12}.
    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// zeta^k for any integer k (k is reduced mod 24).
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(24) as usize;
        // zeta^8 = zeta^4 - 1, and zeta^12 = -1 gives the rest.
        let mut c = vec![BigRational::zero(); DEG];
        if k < 8 {
            c[k] = rat(1);
            return Self::from_coords(c);
        }
        if k < 12 {
            // zeta^k = zeta^{k-4} - zeta^{k-8}
            c[k - 4] = rat(1);
            c[k - 8] = rat(-1);
            return Self::from_coords(c);
        }
        // zeta^12 = -1
        -&Self::zeta_pow((k - 12) as i64)
    }

    /// omega = e^{i pi/3}.
    pub fn omega() -> Self {
        Self::zeta_pow(4)
    }

    /// A square root of omega, namely zeta^2 = e^{i pi/6}.
    pub fn sqrt_omega() -> Self {
        Self::zeta_pow(2)
    }

    pub fn i_unit() -> Self {
        Self::zeta_pow(6)
    }

    /// A square root of i, namely zeta^3 = e^{i pi/4}.
    pub fn sqrt_i() -> Self {
        Self::zeta_pow(3)
    }

    pub fn sqrt2() -> Self {
        &Self::zeta_pow(3) + &Self::zeta_pow(-3)
    }

    pub fn sqrt3() -> Self {
        &Self::zeta_pow(2) + &Self::zeta_pow(-2)
    }

    pub fn i_sqrt3() -> Self {
        &Self::i_unit() * &Self::sqrt3()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// Q[x] modulo x^8 - x^4 + 1. The modulus is irreducible over Q, so
    /// every nonzero element is invertible.
    pub fn inv(&self) -> Option<CycloValue> {
        if self.is_zero() {
            return None;
        }
        // r0 = modulus, r1 = self; maintain r = s*modulus + t*self.
        let modulus: Vec<BigRational> = {
            let mut m = vec![BigRational::zero(); 9];
            m[0] = rat(1);
            m[4] = rat(-1);
            m[8] = rat(1);
            m
        };
        let mut r0 = modulus;
        let mut r1 = self.coords.clone();
        trim(&mut r0);
        trim(&mut r1);
        let mut t0: Vec<BigRational> = vec![];
        let mut t1: Vec<BigRational> = vec![rat(1)];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = t2;
        }
        // r0 is a nonzero constant gcd; divide through.
        debug_assert_eq!(r0.len(), 1);
        let g = r0[0].clone();
        let mut coords = vec![BigRational::zero(); DEG];
        for (i, c) in t0.iter().enumerate() {
            debug_assert!(i < DEG);
            coords[i] = c / &g;
        }
        Some(CycloValue::from_coords(coords))
    }

    pub fn div(&self, rhs: &CycloValue) -> Option<CycloValue> {
        Some(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: i64) -> Option<CycloValue> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut out = CycloValue::one();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        Some(out)
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dd = den.len();
    debug_assert!(dd > 0);
    if rem.len() < dd {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd + 1];
    while rem.len() >= dd {
        let k = rem.len() - dd;
        let c = &rem[rem.len() - 1] / &den[dd - 1];
        quot[k] = c.clone();
        for (j, d) in den.iter().enumerate() {
            let v = &c * d;
            rem[k + j] -= v;
        }
        trim(&mut rem);
        if rem.len() < dd {
            break;
        }
    }
    trim(&mut quot);
    (quot, rem)
}

impl Add for &CycloValue {
    type Output = CycloValue;
    fn add(self, rhs: Self) -> CycloValue {
        CycloValue::from_coords(
            self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &CycloValue {
    type Output = CycloValue;
    fn sub(self, rhs: Self) -> CycloValue {
        CycloValue::from_coords(
            self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Neg for &CycloValue {
    type Output = CycloValue;
    fn neg(self) -> CycloValue {
        CycloValue::from_coords(self.coords.iter().map(|a| -a).collect())
    }
}

impl Mul for &CycloValue {
    type Output = CycloValue;
    fn mul(self, rhs: Self) -> CycloValue {
        let mut prod = vec![BigRational::zero(); 2 * DEG - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        // reduce with zeta^k = zeta^{k-4} - zeta^{k-8} for k >= 8
        for k in (DEG..2 * DEG - 1).rev() {
            if prod[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut prod[k], BigRational::zero());
            prod[k - 4] += &c;
            prod[k - 8] -= &c;
        }
        prod.truncate(DEG);
        CycloValue::from_coords(prod)
    }
}

// Owned-value operator impls so CycloValue satisfies the Scalar trait.
impl Add for CycloValue {
    type Output = CycloValue;
    fn add(self, rhs: Self) -> CycloValue {
        &self + &rhs
    }
}
impl Sub for CycloValue {
    type Output = CycloValue;
    fn sub(self, rhs: Self) -> CycloValue {
        &self - &rhs
    }
}
impl Mul for CycloValue {
    type Output = CycloValue;
    fn mul(self, rhs: Self) -> CycloValue {
        &self * &rhs
    }
}
impl Neg for CycloValue {
    type Output = CycloValue;
    fn neg(self) -> CycloValue {
        -&self
    }
}
impl AddAssign for CycloValue {
    fn add_assign(&mut self, rhs: Self) {
        *self = &*self + &rhs;
    }
}
impl Zero for CycloValue {
    fn zero() -> Self {
        CycloValue::zero()
    }
    fn is_zero(&self) -> bool {
        CycloValue::is_zero(self)
    }
}
impl One for CycloValue {
    fn one() -> Self {
        CycloValue::one()
    }
}

impl fmt::Display for CycloValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k == 0 {
                parts.push(format!("{c}"));
            } else if k == 1 {
                parts.push(format!("{c}*z"));
            } else {
                parts.push(format!("{c}*z^{k}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CycloValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        <Self as fmt::Display>::fmt(self, f)
    }
}

/// Exact evaluation of an integer-coefficient Laurent polynomial at a
/// cyclotomic point with an explicit square root (`sqrt_x^2 = x`), so
/// half-integer exponents are well-defined.
pub fn eval_poly(
    p: &crate::IntPoly,
    x: &CycloValue,
    sqrt_x: &CycloValue,
) -> Result<CycloValue, crate::error::EvalError> {
    debug_assert_eq!(&(sqrt_x * sqrt_x), x);
    let pc = p.map_coeffs(|c| CycloValue::rational(num_rational::BigRational::from(c.clone())));
    pc.eval_with_sqrt(sqrt_x, CycloValue::inv)
}

/// Membership test for the Jones ratio sets.
///
/// With n >= 1 the even-parity set is `{ +/-(i sqrt3)^{+/-k} : 0 <= k <= n-1 }
/// u { sqrt3^{+n}, sqrt3^{-n} }`, and the odd-parity set is
/// `{ +/-i (i sqrt3)^{+/-k} } u { -sqrt3^{+n}, -sqrt3^{-n} }`. For n = 0 the
/// k-range is empty and the set degenerates to `{1}` (even) or `{-1}` (odd).
pub fn in_jones_ratio_set(r: &CycloValue, n: u32, parity_mismatch: bool) -> bool {
    let mut set: Vec<CycloValue> = Vec::new();
    let i_sqrt3 = CycloValue::i_sqrt3();
    let unit = if parity_mismatch { CycloValue::i_unit() } else { CycloValue::one() };
    for k in 0..n as i64 {
        for e in [k, -k] {
            let b = i_sqrt3.pow(e).expect("i*sqrt3 is invertible");
            let v = &unit * &b;
            set.push(v.clone());
            set.push(-&v);
        }
    }
    let sqrt3 = CycloValue::sqrt3();
    for e in [n as i64, -(n as i64)] {
        let v = sqrt3.pow(e).expect("sqrt3 is invertible");
        set.push(if parity_mismatch { -&v } else { v });
    }
    set.iter().any(|v| v == r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_satisfies_its_minimal_polynomial() {
        let z = CycloValue::zeta();
        let z4 = z.pow(4).unwrap();
        let z8 = z.pow(8).unwrap();
        assert_eq!(&(&z8 - &z4) + &CycloValue::one(), CycloValue::zero());
        assert_eq!(z.pow(24).unwrap(), CycloValue::one());
    }

    #[test]
    fn twelfth_root_structure() {
        // zeta^2 is a primitive 12th root of unity: x^4 - x^2 + 1 = 0.
        let w = CycloValue::zeta_pow(2);
        let v = &(&w.pow(4).unwrap() - &w.pow(2).unwrap()) + &CycloValue::one();
        assert_eq!(v, CycloValue::zero());
        assert_eq!(w.pow(12).unwrap(), CycloValue::one());
    }

    #[test]
    fn named_radicals_square_correctly() {
        assert_eq!(&CycloValue::sqrt3() * &CycloValue::sqrt3(), CycloValue::integer(3));
        assert_eq!(&CycloValue::sqrt2() * &CycloValue::sqrt2(), CycloValue::integer(2));
        let i = CycloValue::i_unit();
        assert_eq!(&i * &i, CycloValue::integer(-1));
        let is3 = CycloValue::i_sqrt3();
        assert_eq!(&is3 * &is3, CycloValue::integer(-3));
        assert_eq!(
            &CycloValue::sqrt_omega() * &CycloValue::sqrt_omega(),
            CycloValue::omega()
        );
        assert_eq!(&CycloValue::sqrt_i() * &CycloValue::sqrt_i(), CycloValue::i_unit());
    }

    #[test]
    fn omega_is_a_primitive_sixth_root() {
        let w = CycloValue::omega();
        // omega^2 = omega - 1 for e^{i pi/3}
        assert_eq!(w.pow(2).unwrap(), &w - &CycloValue::one());
        assert_eq!(w.pow(6).unwrap(), CycloValue::one());
    }

    #[test]
    fn inverse_of_nonzero_elements() {
        let samples = [
            CycloValue::zeta(),
            CycloValue::omega(),
            &CycloValue::sqrt3() + &CycloValue::integer(2),
            &CycloValue::i_sqrt3() - &CycloValue::zeta_pow(5),
        ];
        for a in &samples {
            let b = a.inv().unwrap();
            assert_eq!(&(a * &b), &CycloValue::one(), "a * a^-1 != 1 for {a:?}");
        }
        assert!(CycloValue::zero().inv().is_none());
    }

    #[test]
    fn jones_ratio_set_examples() {
        let one = CycloValue::one();
        assert!(in_jones_ratio_set(&one, 1, false));
        assert!(in_jones_ratio_set(&CycloValue::sqrt3(), 1, false));
        // (i sqrt3)^2 = -3 needs k = 2, so it is outside the n = 1 set
        let m3 = CycloValue::integer(-3);
        assert!(!in_jones_ratio_set(&m3, 1, false));
        assert!(!in_jones_ratio_set(&m3, 2, false));
        assert!(in_jones_ratio_set(&m3, 3, false));
        // degenerate n = 0 sets
        assert!(in_jones_ratio_set(&one, 0, false));
        assert!(!in_jones_ratio_set(&one, 0, true));
        assert!(in_jones_ratio_set(&CycloValue::integer(-1), 0, true));
        // odd-parity set at n = 1 holds -sqrt3 but not +sqrt3
        let s3 = CycloValue::sqrt3();
        assert!(in_jones_ratio_set(&-&s3, 1, true));
        assert!(!in_jones_ratio_set(&s3, 1, true));
    }
}
