//! Exact numbers of the form `q · 2^f` with `q` rational and `f ∈ [0, 1)`
//! rational, plus a plain `f64` fallback.
//!
//! Every equal temperament, every Pythagorean or just ratio and every
//! octave rescaling stays inside this set, so scale closure and comma
//! arithmetic can be decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^k` for any integer `k`.
pub fn two_pow(k: i64) -> Rational {
    let p = BigInt::one() << k.unsigned_abs() as usize;
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `q · 2^k` by shifting; lowest terms are kept without a gcd.
pub fn mul_pow2(q: &Rational, k: i64) -> Rational {
    if k == 0 || q.is_zero() {
        return q.clone();
    }
    let (n, d) = (q.numer(), q.denom());
    let e = k.unsigned_abs();
    if k > 0 {
        let t = d.trailing_zeros().unwrap_or(0).min(e);
        Rational::new_raw(n << (e - t) as usize, d >> t as usize)
    } else {
        let t = n.trailing_zeros().unwrap_or(0).min(e);
        Rational::new_raw(n >> t as usize, d << (e - t) as usize)
    }
}

/// Product of two rationals in lowest terms, reducing only across factors.
pub fn mul_reduced(a: &Rational, b: &Rational) -> Rational {
    let g1 = a.numer().gcd(b.denom());
    let g2 = a.denom().gcd(b.numer());
    let n = (a.numer() / &g1) * (b.numer() / &g2);
    let d = (a.denom() / &g2) * (b.denom() / &g1);
    Rational::new_raw(n, d)
}

pub fn pow_rat(base: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(base.clone(), k as usize)
    } else {
        num_traits::pow(base.recip(), k.unsigned_abs() as usize)
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn log2_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().abs().log2();
    }
    let shift = bits - 64;
    let top: BigInt = x.abs() >> shift as usize;
    top.to_f64().unwrap().log2() + shift as f64
}

/// `log2 |r|` for a nonzero rational, safe for huge numerators.
pub fn log2_rational(r: &Rational) -> f64 {
    log2_bigint(r.numer()) - log2_bigint(r.denom())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        sign * log2_rational(r).exp2()
    })
}

/// Splits a rational exponent into `(floor, fractional part)`.
fn split_exponent(e: &Rational) -> (i64, Rational) {
    let fl = e.floor();
    let k = fl.to_integer().to_i64().expect("exponent fits in i64");
    (k, e - fl)
}

/// A frequency or dimensionless ratio.
#[derive(Clone, Debug)]
pub enum Freq {
    /// `coeff · 2^pow2`, normalized so that `0 ≤ pow2 < 1`.
    Exact { coeff: Rational, pow2: Rational },
    Real(f64),
}

impl Freq {
    pub fn rational(q: Rational) -> Self {
        Freq::Exact { coeff: q, pow2: Rational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::rational(rat(n, d))
    }

    /// `coeff · 2^e` for any rational `e`.
    pub fn surd(coeff: Rational, e: &Rational) -> Self {
        let (k, f) = split_exponent(e);
        Freq::Exact { coeff: mul_pow2(&coeff, k), pow2: f }
    }

    /// `2^e`.
    pub fn pow2(e: &Rational) -> Self {
        Self::surd(Rational::one(), e)
    }

    pub fn real(x: f64) -> Self {
        Freq::Real(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Freq::Exact { .. })
    }

    /// The rational value, when there is no irrational power of two.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Freq::Exact { coeff, pow2 } if pow2.is_zero() => Some(coeff),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Freq::Exact { coeff, pow2 } => {
                if coeff.is_zero() {
                    return 0.0;
                }
                let f = pow2.to_f64().unwrap();
                match coeff.to_f64() {
                    Some(c) if c.is_finite() && c != 0.0 => c * f.exp2(),
                    _ => {
                        let s = if coeff.is_negative() { -1.0 } else { 1.0 };
                        s * (log2_rational(coeff) + f).exp2()
                    }
                }
            }
            Freq::Real(x) => *x,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Freq::Exact { coeff, .. } => coeff.is_positive(),
            Freq::Real(x) => *x > 0.0,
        }
    }

    /// `log2` of a positive value.
    pub fn log2(&self) -> f64 {
        match self {
            Freq::Exact { coeff, pow2 } => log2_rational(coeff) + pow2.to_f64().unwrap(),
            Freq::Real(x) => x.log2(),
        }
    }

    pub fn recip(&self) -> Self {
        match self {
            Freq::Exact { coeff, pow2 } => Self::surd(coeff.recip(), &-pow2.clone()),
            Freq::Real(x) => Freq::Real(1.0 / x),
        }
    }

    pub fn powi(&self, k: i64) -> Self {
        match self {
            Freq::Exact { coeff, pow2 } => Self::surd(pow_rat(coeff, k), &(pow2 * int(k))),
            Freq::Real(x) => Freq::Real(x.powi(k as i32)),
        }
    }

    /// Multiplies by `2^k`.
    pub fn shift_octaves(&self, k: i64) -> Self {
        match self {
            Freq::Exact { coeff, pow2 } => Freq::Exact { coeff: mul_pow2(coeff, k), pow2: pow2.clone() },
            Freq::Real(x) => Freq::Real(x * (k as f64).exp2()),
        }
    }

    /// Exact signed `k` such that `self = 2^k · other`, if one exists.
    pub fn octave_offset(&self, other: &Freq) -> Option<i64> {
        let (Freq::Exact { coeff: a, pow2: fa }, Freq::Exact { coeff: b, pow2: fb }) = (self, other) else {
            return None;
        };
        if fa != fb || b.is_zero() {
            return None;
        }
        let q = a / b;
        if !q.is_positive() {
            return None;
        }
        let (n, d) = (q.numer(), q.denom());
        let is_pow2 = |x: &BigInt| x.sign() == Sign::Plus && (x & (x - BigInt::one())).is_zero();
        if is_pow2(n) && is_pow2(d) {
            Some(n.bits() as i64 - d.bits() as i64)
        } else {
            None
        }
    }

    /// Renders an exact value with `digits` significant digits (real values
    /// fall back to `{:e}`).
    pub fn to_decimal(&self, digits: usize) -> String {
        match self.as_rational() {
            Some(q) => rational_to_decimal(q, digits),
            None => format!("{:.*e}", digits.saturating_sub(1), self.to_f64()),
        }
    }
}

/// Decimal expansion of a positive rational rounded half-up to `digits`
/// significant digits.
pub fn rational_to_decimal(q: &Rational, digits: usize) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let neg = q.is_negative();
    let q = q.abs();
    let mag = log2_rational(&q) * std::f64::consts::LOG10_2;
    let mut e = mag.floor() as i64;
    // correct the decade estimate exactly
    let ten = int(10);
    while pow_rat(&ten, e) > q {
        e -= 1;
    }
    while pow_rat(&ten, e + 1) <= q {
        e += 1;
    }
    let scale = pow_rat(&ten, digits as i64 - 1 - e);
    let scaled = &q * scale;
    let mut m = (scaled + rat(1, 2)).floor().to_integer();
    if m.to_string().len() > digits {
        m /= 10;
        e += 1;
    }
    let s = m.to_string();
    let point = e + 1;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.push_str(&"0".repeat((-point) as usize));
        out.push_str(s.trim_end_matches('0'));
    } else if point as usize >= s.len() {
        out.push_str(&s);
        out.push_str(&"0".repeat(point as usize - s.len()));
    } else {
        let (a, b) = s.split_at(point as usize);
        out.push_str(a);
        let b = b.trim_end_matches('0');
        if !b.is_empty() {
            out.push('.');
            out.push_str(b);
        }
    }
    out
}

impl Mul for &Freq {
    type Output = Freq;
    fn mul(self, rhs: &Freq) -> Freq {
        match (self, rhs) {
            (Freq::Exact { coeff: a, pow2: fa }, Freq::Exact { coeff: b, pow2: fb }) => {
                Freq::surd(mul_reduced(a, b), &(fa + fb))
            }
            _ => Freq::Real(self.to_f64() * rhs.to_f64()),
        }
    }
}

impl Mul for Freq {
    type Output = Freq;
    fn mul(self, rhs: Freq) -> Freq {
        &self * &rhs
    }
}

impl Div for &Freq {
    type Output = Freq;
    fn div(self, rhs: &Freq) -> Freq {
        self * &rhs.recip()
    }
}

impl Div for Freq {
    type Output = Freq;
    fn div(self, rhs: Freq) -> Freq {
        &self / &rhs
    }
}

impl PartialEq for Freq {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Freq::Exact { coeff: a, pow2: fa }, Freq::Exact { coeff: b, pow2: fb }) => a == b && fa == fb,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Freq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Freq::Exact { coeff: a, pow2: fa }, Freq::Exact { coeff: b, pow2: fb }) => {
                if fa == fb {
                    return a.partial_cmp(b);
                }
                if !a.is_positive() || !b.is_positive() {
                    return self.to_f64().partial_cmp(&other.to_f64());
                }
                // a·2^fa vs b·2^fb  ⇔  (a/b)^den vs 2^num  with fb − fa = num/den
                let d = fb - fa;
                let den = d.denom().to_u32().filter(|&x| x <= 256);
                match den {
                    Some(den) => {
                        let lhs = num_traits::pow(a / b, den as usize);
                        let num = d.numer().to_i64().unwrap();
                        lhs.partial_cmp(&two_pow(num))
                    }
                    None => self.log2().partial_cmp(&other.log2()),
                }
            }
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Freq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Freq::Exact { coeff, pow2 } if pow2.is_zero() => write!(f, "{}", fmt_rational(coeff)),
            Freq::Exact { coeff, pow2 } if coeff.is_one() => write!(f, "2^({})", fmt_rational(pow2)),
            Freq::Exact { coeff, pow2 } => write!(f, "{}*2^({})", fmt_rational(coeff), fmt_rational(pow2)),
            Freq::Real(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Freq {
    type Err = Error;

    /// Accepts `p/q`, integers, decimals (as reals), `2^(a/b)` and
    /// `p/q*2^(a/b)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse(s.to_string());
        let parse_pow = |t: &str| -> Result<Rational> {
            let e = t.strip_prefix("2^").ok_or_else(err)?;
            let e = e.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(e);
            parse_rational(e)
        };
        if let Some((c, p)) = s.split_once('*') {
            return Ok(Freq::surd(parse_rational(c)?, &parse_pow(p.trim())?));
        }
        if s.starts_with("2^") {
            return Ok(Freq::pow2(&parse_pow(s)?));
        }
        if let Ok(q) = parse_rational(s) {
            return Ok(Freq::rational(q));
        }
        s.parse::<f64>().map(Freq::Real).map_err(|_| err())
    }
}

impl Serialize for Freq {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Freq::Real(x) => ser.serialize_f64(*x),
            _ => ser.serialize_str(&self.to_string()),
        }
    }
}

impl From<Rational> for Freq {
    fn from(q: Rational) -> Self {
        Freq::rational(q)
    }
}
