//! Harmonics, octave rescaling and scales generated by a fixed interval.

use std::cmp::Ordering;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::{int, rat, Freq};

/// Relative tolerance for comparing inexact frequencies.
pub const REAL_TOLERANCE: f64 = 1e-12;

/// `(n + 1)·ν`: the first harmonic is the octave.
pub fn harmonic_of(nu: &Freq, n: u64) -> Freq {
    nu * &Freq::int(n as i64 + 1)
}

/// The half-open octave `[ν, 2ν)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleRange {
    pub low: Freq,
}

impl ScaleRange {
    pub fn high(&self) -> Freq {
        self.low.shift_octaves(1)
    }

    pub fn contains(&self, x: &Freq) -> bool {
        *x >= self.low && *x < self.high()
    }
}

pub fn scale_range(nu: &Freq) -> ScaleRange {
    ScaleRange { low: nu.clone() }
}

/// `μ·2^k` for the unique integer `k` putting it in `[ν, 2ν)`.
pub fn rescale_to_range(nu: &Freq, mu: &Freq) -> Result<Freq> {
    if !mu.is_positive() || !nu.is_positive() {
        return Err(Error::NonPositive);
    }
    let mut k = (nu.log2() - mu.log2()).ceil() as i64;
    let high = nu.shift_octaves(1);
    let mut x = mu.shift_octaves(k);
    while x < *nu {
        k += 1;
        x = mu.shift_octaves(k);
    }
    while x >= high {
        k -= 1;
        x = mu.shift_octaves(k);
    }
    Ok(x)
}

/// Whether `a/b` is an integer power of `c`.
pub fn congruent_mod_powers(a: &Freq, b: &Freq, c: &Freq) -> bool {
    let q = a / b;
    if c.as_rational() == Some(&int(2)) && q.is_exact() {
        return q.octave_offset(&Freq::int(1)).is_some();
    }
    let k = (q.log2() / c.log2()).round() as i64;
    (k - 1..=k + 1).any(|k| same(&q, &c.powi(k)))
}

/// Exact equality, or relative closeness when either side is inexact.
pub fn same(a: &Freq, b: &Freq) -> bool {
    if a.is_exact() && b.is_exact() {
        a == b
    } else {
        let (x, y) = (a.to_f64(), b.to_f64());
        (x - y).abs() <= REAL_TOLERANCE * x.abs().max(y.abs())
    }
}

/// Notes in generation order, seed first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratedScale {
    pub notes: Vec<Freq>,
    pub closed: bool,
    pub period: Option<usize>,
}

/// `ω_0 = ω`, `ω_n = rescale(ω, R·ω_{n−1})`, stopping when the seed recurs
/// (closed) or after `max_steps` steps (open).
pub fn scale_at_fixed_interval(omega: &Freq, r: &Freq, max_steps: usize) -> Result<GeneratedScale> {
    if !omega.is_positive() || !r.is_positive() {
        return Err(Error::NonPositive);
    }
    let mut notes = vec![omega.clone()];
    for n in 1..=max_steps {
        let next = rescale_to_range(omega, &(r * notes.last().unwrap()))?;
        if same(&next, omega) {
            return Ok(GeneratedScale { notes, closed: true, period: Some(n) });
        }
        notes.push(next);
    }
    Ok(GeneratedScale { notes, closed: false, period: None })
}

fn cmp(a: &Freq, b: &Freq) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Ascending, stable.
pub fn ordered(seq: &[Freq]) -> Vec<Freq> {
    let mut v = seq.to_vec();
    v.sort_by(cmp);
    v
}

/// `count` notes of the cycle of pure fifths.
pub fn pythagorean_scale(omega: &Freq, count: usize) -> Result<GeneratedScale> {
    if count == 0 {
        return Err(Error::NonPositive);
    }
    scale_at_fixed_interval(omega, &Freq::int(3), count - 1)
}

/// Fifths of `2^(7/N)`, which close after `N / gcd(7, N)` notes.
pub fn tempered_scale(omega: &Freq, n: u64) -> Result<GeneratedScale> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    scale_at_fixed_interval(omega, &Freq::pow2(&rat(7, n as i64)), n as usize)
}

/// Whether every pair of notes has a rational ratio.
pub fn pairwise_rational(notes: &[Freq]) -> bool {
    notes.windows(2).all(|p| (&p[1] / &p[0]).as_rational().is_some_and(|q| q.is_positive()))
}
