//! Exact scalars: arbitrary-precision integers, rationals and Gaussian rationals.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn is_integral(q: &Rat) -> bool {
    q.denom().is_one()
}

/// gcd of two rationals: the positive generator of the subgroup of Q they span.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    let n = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    Rat::new(n, a.denom() * b.denom())
}

/// Floor of a rational as an integer.
pub fn rat_floor(q: &Rat) -> Int {
    q.floor().to_integer()
}

pub fn fmt_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse exact scalar from {0:?}")]
pub struct ParseScalarError(pub String);

pub fn parse_rat(s: &str) -> Result<Rat, ParseScalarError> {
    let s = s.trim();
    let err = || ParseScalarError(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = Int::from_str(n.trim()).map_err(|_| err())?;
            let d = Int::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(n, d))
        }
        None => Int::from_str(s).map(Rat::from_integer).map_err(|_| err()),
    }
}

/// Element of Q(i), stored as re + im*i with i^2 = -1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qi {
    pub re: Rat,
    pub im: Rat,
}

impl Qi {
    pub fn new(re: Rat, im: Rat) -> Self {
        Qi { re, im }
    }
    pub fn from_rat(re: Rat) -> Self {
        Qi { re, im: Rat::zero() }
    }
    pub fn from_int(v: i64) -> Self {
        Qi::from_rat(rat(v, 1))
    }
    pub fn i() -> Self {
        Qi { re: Rat::zero(), im: Rat::one() }
    }
    pub fn conj(&self) -> Self {
        Qi { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && is_integral(&self.re)
    }
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Qi { re: &self.re / &n, im: -(&self.im / &n) })
    }
    pub fn scale(&self, q: &Rat) -> Self {
        Qi { re: &self.re * q, im: &self.im * q }
    }
}

impl Zero for Qi {
    fn zero() -> Self {
        Qi { re: Rat::zero(), im: Rat::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Qi {
    fn one() -> Self {
        Qi::from_int(1)
    }
}

impl Add for Qi {
    type Output = Qi;
    fn add(self, o: Qi) -> Qi {
        Qi { re: self.re + o.re, im: self.im + o.im }
    }
}
impl<'a> Add<&'a Qi> for &'a Qi {
    type Output = Qi;
    fn add(self, o: &Qi) -> Qi {
        Qi { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}
impl AddAssign<&Qi> for Qi {
    fn add_assign(&mut self, o: &Qi) {
        self.re += &o.re;
        self.im += &o.im;
    }
}
impl Sub for Qi {
    type Output = Qi;
    fn sub(self, o: Qi) -> Qi {
        Qi { re: self.re - o.re, im: self.im - o.im }
    }
}
impl<'a> Sub<&'a Qi> for &'a Qi {
    type Output = Qi;
    fn sub(self, o: &Qi) -> Qi {
        Qi { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}
impl SubAssign<&Qi> for Qi {
    fn sub_assign(&mut self, o: &Qi) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}
impl Mul for Qi {
    type Output = Qi;
    fn mul(self, o: Qi) -> Qi {
        &self * &o
    }
}
impl<'a> Mul<&'a Qi> for &'a Qi {
    type Output = Qi;
    fn mul(self, o: &Qi) -> Qi {
        Qi {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}
impl Neg for Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi { re: -self.re, im: -self.im }
    }
}
impl Neg for &Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rat(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", fmt_rat(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", fmt_rat(&self.re), fmt_rat(&-self.im.clone()))
        } else {
            write!(f, "{}+{}i", fmt_rat(&self.re), fmt_rat(&self.im))
        }
    }
}

impl fmt::Debug for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses "p/q", "a+bi", "a-bi", "bi" and "i" forms.
pub fn parse_qi(s: &str) -> Result<Qi, ParseScalarError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || ParseScalarError(s.to_string());
    if !t.ends_with('i') {
        return parse_rat(&t).map(Qi::from_rat);
    }
    let body = &t[..t.len() - 1];
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
        .map(|(k, _)| k)
        .next_back();
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.strip_prefix('+').unwrap_or(other),
    };
    Ok(Qi::new(parse_rat(re).map_err(|_| err())?, parse_rat(im).map_err(|_| err())?))
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut acc = Int::one();
    for j in 0..k {
        acc = acc * Int::from(n - j) / Int::from(j + 1);
    }
    acc
}

pub fn to_i64(v: &Int) -> Option<i64> {
    v.to_i64()
}

pub fn abs_int(v: &Int) -> Int {
    v.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qi_roundtrip_strings() {
        for s in ["3/4", "-2", "1+2i", "1/2-3/5i", "7i", "-i", "i"] {
            let q = parse_qi(s).unwrap();
            assert_eq!(parse_qi(&q.to_string()).unwrap(), q, "{s}");
        }
        assert_eq!(parse_qi("-i").unwrap(), -Qi::i());
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Qi::i() * &Qi::i(), Qi::from_int(-1));
    }

    #[test]
    fn rational_gcd_generates_subgroup() {
        assert_eq!(rat_gcd(&rat(1, 2), &rat(1, 3)), rat(1, 6));
        assert_eq!(rat_gcd(&rat(4, 1), &rat(6, 1)), rat(2, 1));
    }

    #[test]
    fn inverse_of_gaussian() {
        let z = Qi::new(rat(3, 1), rat(4, 1));
        assert_eq!(&z * &z.inv().unwrap(), Qi::one());
        assert!(Qi::zero().inv().is_none());
    }
}
