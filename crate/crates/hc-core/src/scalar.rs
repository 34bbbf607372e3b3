//! Exact complex scalars with arbitrary-precision rational parts.
//!
//! [`ExactScalar`] is the coefficient field used throughout the crate: a
//! complex number whose real and imaginary parts are `BigRational`s. All
//! arithmetic is exact; conversion to `f64` is provided only for the numeric
//! verification layer.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational number (re-exported base type).
pub type Rat = BigRational;

/// Build a rational `p/q` from machine integers. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "rational denominator must be non-zero");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Build an integer rational.
pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Exact factorial `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Exact double factorial `n!!` (with `(-1)!! = 0!! = 1`).
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial defined for n >= -1");
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    pub re: Rat,
    pub im: Rat,
}

impl ExactScalar {
    /// The additive identity.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The multiplicative identity.
    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self { re: Rat::zero(), im: Rat::one() }
    }

    /// `i^k` for any integer power.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    /// A purely real scalar.
    pub fn from_rat(re: Rat) -> Self {
        Self { re, im: Rat::zero() }
    }

    /// A real integer scalar.
    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// A real integer scalar from a big integer.
    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rat(Rat::from_integer(n))
    }

    /// A real rational scalar `p/q`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rat(rat(p, q))
    }

    /// Build from explicit real and imaginary parts.
    pub fn new(re: Rat, im: Rat) -> Self {
        Self { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Squared modulus `re² + im²` (a non-negative rational).
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact multiplicative inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Exact division.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inverse()?)
    }

    /// Integer power (non-negative).
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc *= base.clone();
            }
            base = base.clone() * base.clone();
            k >>= 1;
        }
        acc
    }

    /// Multiply by a rational factor.
    pub fn scale(&self, f: &Rat) -> Self {
        Self { re: &self.re * f, im: &self.im * f }
    }

    /// Convert to `f64` (real and imaginary parts separately).
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// Convert to `f64`, requiring the value to be real.
    pub fn to_f64_real(&self) -> Result<f64> {
        if !self.im.is_zero() {
            return Err(Error::InvalidParameter("scalar has a non-zero imaginary part"));
        }
        Ok(rat_to_f64(&self.re))
    }

    /// Render the real part as `"p/q"` (the denominator is always written).
    pub fn re_string(&self) -> String {
        rat_string(&self.re)
    }

    /// Render the imaginary part as `"p/q"`.
    pub fn im_string(&self) -> String {
        rat_string(&self.im)
    }
}

/// Render a rational as `"p/q"` with an explicit denominator.
pub fn rat_string(r: &Rat) -> String {
    let mut s = r.numer().to_string();
    s.push('/');
    s.push_str(&r.denom().to_string());
    s
}

/// Parse `"p/q"` or a bare integer `"p"` into a rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim().parse::<BigInt>().map_err(|_| Error::InvalidParameter("malformed rational"))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::InvalidParameter("rational with zero denominator"));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Convert a rational to the nearest `f64`.
pub fn rat_to_f64(r: &Rat) -> f64 {
    // Fast path covers every value arising in practice; the fallback rescales
    // by powers of two so huge numerators still convert with full precision.
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let bits_n = r.numer().bits() as i64;
    let bits_d = r.denom().bits() as i64;
    let shift = (bits_n.max(bits_d) - 900).max(0) as u64;
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl SubAssign for ExactScalar {
    fn sub_assign(&mut self, rhs: Self) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self { re, im }
    }
}

impl MulAssign for ExactScalar {
    fn mul_assign(&mut self, rhs: Self) {
        *self = self.clone() * rhs;
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

/// Panics on division by zero; use [`ExactScalar::div_exact`] for a checked path.
impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: Self) -> Self {
        self.div_exact(&rhs).expect("exact scalar division by zero")
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_field_axioms_spotcheck() {
        let a = ExactScalar::new(rat(1, 2), rat(-3, 4));
        let b = ExactScalar::new(rat(2, 5), rat(7, 3));
        let prod = a.clone() * b.clone();
        let back = prod.div_exact(&b).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(ExactScalar::i() * ExactScalar::i(), -ExactScalar::one());
        assert_eq!(ExactScalar::i_pow(2), -ExactScalar::one());
        assert_eq!(ExactScalar::i_pow(-1), -ExactScalar::i());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let z = ExactScalar::zero();
        assert_eq!(ExactScalar::one().div_exact(&z), Err(Error::DivisionByZero));
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(double_factorial(-1), BigInt::from(1));
        assert_eq!(double_factorial(0), BigInt::from(1));
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(double_factorial(8), BigInt::from(384));
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(3, 7), BigInt::from(0));
    }

    #[test]
    fn rational_rendering_round_trips() {
        let r = rat(-22, 8);
        let s = rat_string(&r);
        assert_eq!(s, "-11/4");
        assert_eq!(parse_rat(&s).unwrap(), r);
        assert_eq!(parse_rat("5").unwrap(), rat_int(5));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x/2").is_err());
    }

    #[test]
    fn f64_conversion_is_close() {
        let r = rat(1, 3);
        assert!((rat_to_f64(&r) - 1.0 / 3.0).abs() < 1e-15);
    }
}
