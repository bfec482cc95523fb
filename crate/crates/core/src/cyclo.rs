//! Exact arithmetic in the cyclotomic field Q(eps), eps a primitive cube root of unity.
//!
//! Elements are stored as `re + ep*eps` over the basis {1, eps}; the relation
//! `eps^2 = -1 - eps` is applied by every operation, so two elements are equal
//! exactly when both coordinates agree.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational in canonical form.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
}

/// An element `re + ep*eps` of Q(eps).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclo {
    re: Rational,
    ep: Rational,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Cyclo {
    pub fn new(re: Rational, ep: Rational) -> Self {
        Cyclo { re, ep }
    }

    pub fn from_rational(re: Rational) -> Self {
        Cyclo { re, ep: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `n/d + (m/e)*eps` from small integers.
    pub fn from_ratios(n: i64, d: i64, m: i64, e: i64) -> Self {
        Cyclo { re: rat(n, d), ep: rat(m, e) }
    }

    pub fn eps() -> Self {
        Cyclo { re: Rational::zero(), ep: Rational::one() }
    }

    /// `eps^k` for any integer k.
    pub fn eps_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::eps(),
            _ => Self::from_ratios(-1, 1, -1, 1),
        }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn ep(&self) -> &Rational {
        &self.ep
    }

    pub fn is_rational(&self) -> bool {
        self.ep.is_zero()
    }

    /// Image under the Galois automorphism eps -> eps^2 (complex conjugation).
    pub fn conj(&self) -> Self {
        Cyclo { re: &self.re - &self.ep, ep: -&self.ep }
    }

    /// Field norm N(a + b eps) = a^2 - ab + b^2.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re - &self.re * &self.ep + &self.ep * &self.ep
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        // (a + b eps)^{-1} = (a - b - b eps) / N
        Ok(Cyclo { re: (&self.re - &self.ep) / &n, ep: -&self.ep / &n })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(&self, e: i64) -> Result<Self, ArithError> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    /// Image under eps -> (-1 + i sqrt 3)/2 in double precision.
    pub fn embed(&self) -> (f64, f64) {
        let a = to_f64(&self.re);
        let b = to_f64(&self.ep);
        (a - 0.5 * b, b * 3f64.sqrt() / 2.0)
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        let (re, im) = self.embed();
        num_complex::Complex64::new(re, im)
    }

    /// Coordinates (p, q) with self = p + q*sqrt(-3).
    fn sqrt_minus3_coords(&self) -> (Rational, Rational) {
        let half = rat(1, 2);
        (&self.re - &self.ep * &half, &self.ep * &half)
    }

    fn from_sqrt_minus3_coords(p: Rational, q: Rational) -> Self {
        // sqrt(-3) = 1 + 2 eps
        Cyclo { re: &p + &q, ep: &q * Rational::from_integer(BigInt::from(2)) }
    }

    /// A square root inside Q(eps), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (p, q) = self.sqrt_minus3_coords();
        // (u + v sqrt(-3))^2 = u^2 - 3v^2 + 2uv sqrt(-3); u^2 + 3v^2 = sqrt(p^2 + 3q^2)
        let m = rational_sqrt(&(&p * &p + Rational::from_integer(3.into()) * &q * &q))?;
        let two = Rational::from_integer(2.into());
        let three = Rational::from_integer(3.into());
        let cand = if q.is_zero() {
            if p.is_positive() {
                Self::from_sqrt_minus3_coords(rational_sqrt(&p)?, Rational::zero())
            } else {
                Self::from_sqrt_minus3_coords(Rational::zero(), rational_sqrt(&(-&p / &three))?)
            }
        } else {
            let u = rational_sqrt(&((&p + &m) / &two))?;
            let v = &q / (&two * &u);
            Self::from_sqrt_minus3_coords(u, v)
        };
        (&cand * &cand == *self).then_some(cand)
    }

    /// A cube root inside Q(eps), if one exists. All three roots are this one times eps^k.
    pub fn cbrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // N(z)^3 = N(self), and z is a root of t^3 - self; try the numeric roots, then verify.
        let z = self.to_complex();
        let r = z.norm().cbrt();
        let theta = z.arg() / 3.0;
        for k in 0..3 {
            let ang = theta + 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            let approx = num_complex::Complex64::from_polar(r, ang);
            if let Some(c) = recognize(approx, 1_000_000) {
                if c.pow(3) == *self {
                    return Some(c);
                }
            }
        }
        None
    }
}

/// Exact square root of a non-negative rational.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &n * &n == *x.numer() && &d * &d == *x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // fall back on scaling for huge operands
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Best rational approximation with denominator at most `max_den` (continued fractions).
pub fn approx_rational(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a;
        if frac.abs() < 1e-13 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    Some(Rational::new(BigInt::from(p1), BigInt::from(q1)))
}

/// Guess an element of Q(eps) close to the complex number `z`, with bounded denominators.
pub fn recognize(z: num_complex::Complex64, max_den: i64) -> Option<Cyclo> {
    // z = p + q sqrt(-3)
    let p = approx_rational(z.re, max_den)?;
    let q = approx_rational(z.im / 3f64.sqrt(), max_den)?;
    Some(Cyclo::from_sqrt_minus3_coords(p, q))
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo { re: Rational::zero(), ep: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.ep.is_zero()
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo { re: Rational::one(), ep: Rational::zero() }
    }
}

impl From<i64> for Cyclo {
    fn from(n: i64) -> Self {
        Cyclo::from_int(n)
    }
}

impl From<Rational> for Cyclo {
    fn from(r: Rational) -> Self {
        Cyclo::from_rational(r)
    }
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        Cyclo { re: &self.re + &o.re, ep: &self.ep + &o.ep }
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        Cyclo { re: &self.re - &o.re, ep: &self.ep - &o.ep }
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        // (a + b e)(c + d e) = ac + (ad + bc) e + bd e^2,  e^2 = -1 - e
        let ac = &self.re * &o.re;
        let bd = &self.ep * &o.ep;
        let cross = &self.re * &o.ep + &self.ep * &o.re;
        Cyclo { re: &ac - &bd, ep: &cross - &bd }
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { re: -&self.re, ep: -&self.ep }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { re: -self.re, ep: -self.ep }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, o: Cyclo) -> Cyclo {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, o: &Cyclo) -> Cyclo {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Cyclo> for &'a Cyclo {
            type Output = Cyclo;
            fn $m(self, o: Cyclo) -> Cyclo {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Div<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    /// Panics on division by zero, like the rational types it is built on.
    fn div(self, o: &Cyclo) -> Cyclo {
        self.checked_div(o).expect("division by zero in Q(eps)")
    }
}

impl Div<Cyclo> for Cyclo {
    type Output = Cyclo;
    fn div(self, o: Cyclo) -> Cyclo {
        &self / &o
    }
}

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, o: &Cyclo) {
        self.re += &o.re;
        self.ep += &o.ep;
    }
}

impl SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, o: &Cyclo) {
        self.re -= &o.re;
        self.ep -= &o.ep;
    }
}

impl MulAssign<&Cyclo> for Cyclo {
    fn mul_assign(&mut self, o: &Cyclo) {
        *self = &*self * o;
    }
}

impl Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |a, b| a + b)
    }
}

impl Product for Cyclo {
    fn product<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::one(), |a, b| a * b)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Cyclo {
    /// True when the printed form needs parentheses inside a product.
    pub(crate) fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.ep.is_zero()
    }

    /// Sign-stripped printing for use as a term coefficient: returns (negative, body).
    pub(crate) fn split_sign(&self) -> (bool, Cyclo) {
        if self.ep.is_zero() {
            (self.re.is_negative(), Cyclo::from_rational(self.re.abs()))
        } else if self.re.is_zero() {
            (self.ep.is_negative(), Cyclo { re: Rational::zero(), ep: self.ep.abs() })
        } else {
            (false, self.clone())
        }
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eps_part = |b: &Rational| -> String {
            if b.is_one() {
                "eps".to_string()
            } else if (-b).is_one() {
                "-eps".to_string()
            } else {
                format!("{}*eps", fmt_rational(b))
            }
        };
        match (self.re.is_zero(), self.ep.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", eps_part(&self.ep)),
            (false, false) => {
                let b = eps_part(&self.ep.abs());
                let sign = if self.ep.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}", fmt_rational(&self.re), sign, b)
            }
        }
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({})", self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{0}` as an element of Q(eps)")]
pub struct CycloParseError(pub String);

impl FromStr for Cyclo {
    type Err = CycloParseError;

    /// Accepts the constant subset of the polynomial grammar, e.g. `-3/2`, `1+2*eps`, `(1 - eps)/3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let table = crate::poly::VarTable::new(Vec::<String>::new()).expect("empty table");
        let p = table.parse(s).map_err(|_| CycloParseError(s.to_string()))?;
        p.as_constant().ok_or_else(|| CycloParseError(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> Cyclo {
        Cyclo::eps()
    }

    #[test]
    fn eps_squared_reduces() {
        assert_eq!(&e() * &e(), Cyclo::from_ratios(-1, 1, -1, 1));
        assert_eq!(&e() * &Cyclo::from_ratios(-1, 1, -1, 1), Cyclo::one());
        assert_eq!(Cyclo::one() + e() + e().pow(2), Cyclo::zero());
        assert_eq!(e().pow(3), Cyclo::one());
    }

    #[test]
    fn one_minus_eps_times_one_minus_eps_squared() {
        let lhs = (Cyclo::one() - e()) * (Cyclo::one() - e().pow(2));
        assert_eq!(lhs, Cyclo::from_int(3));
        // independent check through the complex embedding
        let w = num_complex::Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        let one = num_complex::Complex64::new(1.0, 0.0);
        let z = (one - w) * (one - w * w);
        assert!((z.re - 3.0).abs() < 1e-12 && z.im.abs() < 1e-12);
    }

    #[test]
    fn inverses() {
        assert_eq!(Cyclo::one().inv().unwrap(), Cyclo::one());
        assert_eq!(e().inv().unwrap(), Cyclo::from_ratios(-1, 1, -1, 1));
        let x = Cyclo::one() - e();
        let xi = x.inv().unwrap();
        assert_eq!(xi, Cyclo::from_ratios(2, 3, 1, 3));
        assert_eq!(&x * &xi, Cyclo::one());
        assert_eq!(Cyclo::zero().inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn embedding_values() {
        assert_eq!(Cyclo::zero().embed(), (0.0, 0.0));
        let (a, b) = e().embed();
        assert!((a + 0.5).abs() < 1e-15 && (b - 0.8660254037844386).abs() < 1e-15);
        let (a, b) = (Cyclo::one() + e()).embed();
        assert!((a - 0.5).abs() < 1e-15 && (b - 0.8660254037844386).abs() < 1e-15);
    }

    #[test]
    fn square_and_cube_roots() {
        let z = Cyclo::from_ratios(2, 3, -5, 7);
        let sq = (&z * &z).sqrt().unwrap();
        assert!(sq == z || sq == -&z);
        assert_eq!(Cyclo::from_int(-3).sqrt().unwrap().pow(2), Cyclo::from_int(-3));
        assert!(Cyclo::from_int(2).sqrt().is_none());
        let c = z.pow(3).cbrt().unwrap();
        assert_eq!(c.pow(3), z.pow(3));
        assert!(Cyclo::from_int(2).cbrt().is_none());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Cyclo::from_ratios(1, 2, -3, 1).to_string(), "1/2 - 3*eps");
        assert_eq!("1/2 - 3*eps".parse::<Cyclo>().unwrap(), Cyclo::from_ratios(1, 2, -3, 1));
        assert_eq!("-eps".parse::<Cyclo>().unwrap(), -e());
        assert!("x + 1".parse::<Cyclo>().is_err());
    }
}
