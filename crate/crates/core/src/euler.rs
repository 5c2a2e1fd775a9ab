//! The 5-limit Euler lattice: points as exponent triples of 2, 3 and 5.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pcset::Letter;
use crate::ratio::{fmt_rational, int, pow_rat, rat, Freq, Rational};

/// `log2 3` and `log2 5`.
const LOG2_3: f64 = 1.584_962_500_721_156_2;
const LOG2_5: f64 = 2.321_928_094_887_362_3;

/// Exponents of 2, 3 and 5.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EulerPoint {
    pub e2: Rational,
    pub e3: Rational,
    pub e5: Rational,
}

impl EulerPoint {
    pub fn new(e2: Rational, e3: Rational, e5: Rational) -> Self {
        EulerPoint { e2, e3, e5 }
    }

    pub fn int(e2: i64, e3: i64, e5: i64) -> Self {
        EulerPoint::new(int(e2), int(e3), int(e5))
    }

    pub fn origin() -> Self {
        EulerPoint::int(0, 0, 0)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        EulerPoint::new(&self.e2 * k, &self.e3 * k, &self.e5 * k)
    }

    /// All exponents are integers.
    pub fn is_just(&self) -> bool {
        self.e2.is_integer() && self.e3.is_integer() && self.e5.is_integer()
    }

    pub fn is_pyt(&self) -> bool {
        self.is_just() && self.e5.is_zero()
    }

    pub fn is_tempered(&self, n: u64) -> bool {
        self.e3.is_zero() && self.e5.is_zero() && (&self.e2 * int(n as i64)).is_integer()
    }

    pub fn is_tempered3(&self, n: [u64; 3]) -> bool {
        [(&self.e2, n[0]), (&self.e3, n[1]), (&self.e5, n[2])].iter().all(|(e, k)| (*e * int(*k as i64)).is_integer())
    }

    pub fn as_ints(&self) -> Option<[i64; 3]> {
        if !self.is_just() {
            return None;
        }
        Some([&self.e2, &self.e3, &self.e5].map(|e| e.to_integer().to_i64().unwrap()))
    }
}

impl Add for &EulerPoint {
    type Output = EulerPoint;
    fn add(self, o: &EulerPoint) -> EulerPoint {
        EulerPoint::new(&self.e2 + &o.e2, &self.e3 + &o.e3, &self.e5 + &o.e5)
    }
}

impl Sub for &EulerPoint {
    type Output = EulerPoint;
    fn sub(self, o: &EulerPoint) -> EulerPoint {
        EulerPoint::new(&self.e2 - &o.e2, &self.e3 - &o.e3, &self.e5 - &o.e5)
    }
}

impl Neg for &EulerPoint {
    type Output = EulerPoint;
    fn neg(self) -> EulerPoint {
        EulerPoint::new(-&self.e2, -&self.e3, -&self.e5)
    }
}

impl fmt::Display for EulerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", fmt_rational(&self.e2), fmt_rational(&self.e3), fmt_rational(&self.e5))
    }
}

impl Serialize for EulerPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_ints() {
            Some(v) => v.serialize(s),
            None => [&self.e2, &self.e3, &self.e5].map(fmt_rational).serialize(s),
        }
    }
}

/// `2^e2 · 3^e3 · 5^e5`; exact unless the exponents of 3 or 5 are fractional.
pub fn coordination_value(p: &EulerPoint) -> Freq {
    if p.e3.is_integer() && p.e5.is_integer() {
        let k3 = p.e3.to_integer().to_i64().unwrap();
        let k5 = p.e5.to_integer().to_i64().unwrap();
        return Freq::surd(pow_rat(&int(3), k3) * pow_rat(&int(5), k5), &p.e2);
    }
    let l = p.e2.to_f64().unwrap() + p.e3.to_f64().unwrap() * LOG2_3 + p.e5.to_f64().unwrap() * LOG2_5;
    Freq::real(l.exp2())
}

fn strip(n: &mut BigInt, p: u32) -> i64 {
    let p = BigInt::from(p);
    let mut k = 0;
    while (&*n % &p).is_zero() {
        *n /= &p;
        k += 1;
    }
    k
}

/// The integer point whose coordination value is `r`.
pub fn point_from_ratio(r: &Rational) -> Result<EulerPoint> {
    if !r.is_positive() {
        return Err(Error::NonPositive);
    }
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    let e = [2, 3, 5].map(|p| strip(&mut n, p) - strip(&mut d, p));
    if !n.is_one() || !d.is_one() {
        return Err(Error::NotFiveLimit(fmt_rational(r)));
    }
    Ok(EulerPoint::int(e[0], e[1], e[2]))
}

/// Cents above the unit: `1200 · log2` of the coordination value.
pub fn pitch_of_point(p: &EulerPoint) -> f64 {
    1200.0 * (p.e2.to_f64().unwrap() + p.e3.to_f64().unwrap() * LOG2_3 + p.e5.to_f64().unwrap() * LOG2_5)
}

/// Signed cents of `nu` above `reference`.
pub fn pitch_of_ratio(nu: &Freq, reference: &Freq) -> Result<f64> {
    if !nu.is_positive() || !reference.is_positive() {
        return Err(Error::NonPositiveFrequency);
    }
    Ok(1200.0 * (nu / reference).log2())
}

/// Inverse of [`pitch_of_ratio`].
pub fn freq_of_pitch(cents: f64, reference: &Freq) -> f64 {
    reference.to_f64() * (cents / 1200.0).exp2()
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tuning {
    Just,
    Pyt,
    Tempered(u64),
    Tempered3([u64; 3]),
}

/// Every tuning family the point belongs to; `n` and `triple` select which
/// temperaments to test.
pub fn classify_point(p: &EulerPoint, n: Option<u64>, triple: Option<[u64; 3]>) -> BTreeSet<Tuning> {
    let mut out = BTreeSet::new();
    if p.is_just() {
        out.insert(Tuning::Just);
    }
    if p.is_pyt() {
        out.insert(Tuning::Pyt);
    }
    if let Some(n) = n.filter(|&n| p.is_tempered(n)) {
        out.insert(Tuning::Tempered(n));
    }
    if let Some(t) = triple.filter(|&t| p.is_tempered3(t)) {
        out.insert(Tuning::Tempered3(t));
    }
    out
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Comma {
    pub point: EulerPoint,
    #[serde(serialize_with = "ser_rational")]
    pub ratio: Rational,
    pub cents: f64,
}

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

impl Comma {
    fn from_point(point: EulerPoint) -> Self {
        let ratio = coordination_value(&point).as_rational().cloned().unwrap();
        Comma { cents: pitch_of_point(&point), point, ratio }
    }
}

/// Octave, fifth and third unit vectors.
pub fn basis() -> [EulerPoint; 3] {
    [EulerPoint::int(1, 0, 0), EulerPoint::int(0, 1, 0), EulerPoint::int(0, 0, 1)]
}

/// The fifth (Pythagorean) comma: twelve fifths less seven octaves.
pub fn fifth_comma() -> Comma {
    let [o, f, _] = basis();
    let fifth = &f - &o;
    Comma::from_point(&o.scale(&int(-7)) + &fifth.scale(&int(12)))
}

/// The third (syntonic) comma: two octaves less four fifths plus a just
/// major third.
pub fn third_comma() -> Comma {
    let [o, f, t] = basis();
    let fifth = &f - &o;
    let third = &t - &o.scale(&int(2));
    Comma::from_point(&(&o.scale(&int(2)) - &fifth.scale(&int(4))) + &third)
}

pub fn commas() -> (Comma, Comma) {
    (fifth_comma(), third_comma())
}

fn factor_sum(mut n: BigInt) -> i64 {
    let mut g = 0i64;
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        while (&n % &p).is_zero() {
            n /= &p;
            g += (&p - 1u32).to_i64().unwrap();
        }
        p += 1u32;
    }
    if n > BigInt::one() {
        g += (n - 1u32).to_i64().unwrap();
    }
    g
}

/// Euler's gradus suavitatis: `1 + Σ e_k (p_k − 1)` over the factorization
/// of `p·q` for `p/q` in lowest terms.
pub fn gradus(x: &Rational) -> Result<i64> {
    if !x.is_positive() {
        return Err(Error::NonPositive);
    }
    Ok(1 + factor_sum(x.numer() * x.denom()))
}

pub fn gradus_bichord(nu1: &Rational, nu2: &Rational) -> Result<i64> {
    let just = |r: &Rational| r.is_positive() && point_from_ratio(r).is_ok();
    if !just(nu1) || !just(nu2) {
        return Err(Error::NotJustTuned);
    }
    gradus(&(nu2 / nu1))
}

/// `(n + m) / (n·m·gcd(n, m))` for the representation `n/m`.
pub fn esm_of(n: &BigInt, m: &BigInt) -> Result<Rational> {
    if !n.is_positive() || !m.is_positive() {
        return Err(Error::NonPositive);
    }
    Ok(Rational::new(n + m, n * m * n.gcd(m)))
}

/// [`esm_of`] on the lowest-terms representation.
pub fn esm(r: &Rational) -> Result<Rational> {
    esm_of(r.numer(), r.denom())
}

/// Ratios of the just diatonic scale on C.
pub fn just_diatonic_ratios() -> [Rational; 7] {
    [rat(1, 1), rat(9, 8), rat(5, 4), rat(4, 3), rat(3, 2), rat(5, 3), rat(15, 8)]
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct JustRow {
    #[serde(serialize_with = "ser_rational")]
    pub freq: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub ratio: Rational,
    pub cents: f64,
    pub point: EulerPoint,
}

pub fn just_diatonic(reference: &Rational) -> Vec<JustRow> {
    just_diatonic_ratios()
        .into_iter()
        .map(|ratio| {
            let point = point_from_ratio(&ratio).unwrap();
            JustRow { freq: &ratio * reference, cents: pitch_of_point(&point), point, ratio }
        })
        .collect()
}

/// Vogel's chromatic just scale, C to B.
pub fn vogel_ratios() -> [Rational; 12] {
    [
        rat(1, 1),
        rat(16, 15),
        rat(9, 8),
        rat(6, 5),
        rat(5, 4),
        rat(4, 3),
        rat(45, 32),
        rat(3, 2),
        rat(8, 5),
        rat(5, 3),
        rat(16, 9),
        rat(15, 8),
    ]
}

/// Interval names of the Vogel ratios above C.
pub const INTERVAL_NAMES: [&str; 12] = ["1", "2m", "2M", "3m", "3M", "4P", "5dim", "5P", "6m", "6M", "7m", "7M"];

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct VogelRow {
    pub letter: Letter,
    #[serde(serialize_with = "ser_rational")]
    pub ratio: Rational,
    pub point: EulerPoint,
}

pub fn vogel_chromatic() -> Vec<VogelRow> {
    vogel_ratios()
        .into_iter()
        .enumerate()
        .map(|(i, ratio)| VogelRow { letter: Letter::new(i as i64), point: point_from_ratio(&ratio).unwrap(), ratio })
        .collect()
}

/// Vogel ratio of `i` lowered by one third comma per cycle.
pub fn just_letter(i: Letter, cycle: u32) -> (Rational, f64) {
    let r = &vogel_ratios()[i.value() as usize] * pow_rat(&third_comma().ratio, cycle as i64);
    let cents = pitch_of_point(&point_from_ratio(&r).unwrap());
    (r, cents)
}
