//! Consonance as coincidence of harmonics on the integer lattice.
//!
//! For sounds with pulsations `ω_i` and spectra `a^(i)` the index sums
//! `a^(1)_{n_1} + … + a^(k)_{n_k}` over every index vector whose harmonics
//! cancel, `Σ n_i ω_i = 0` (or `|Σ n_i ω_i| ≤ ε` in tolerant mode).

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::{int, Freq, Rational};

pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Complex amplitudes by harmonic index, truncated at `n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub coeffs: BTreeMap<i64, Complex64>,
    pub n_max: u32,
}

impl Spectrum {
    pub fn get(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() > self.n_max as u64 {
            return Complex64::zero();
        }
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    /// `Σ a_n a_{−n}` over the truncation window.
    pub fn energy(&self) -> Complex64 {
        let n = self.n_max as i64;
        (-n..=n).map(|k| self.get(k) * self.get(-k)).sum()
    }
}

/// A single harmonic `a` at index `k`.
pub fn pure_oscillator(a: f64, k: i64) -> Result<Spectrum> {
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    Ok(Spectrum { coeffs: [(k, Complex64::new(a, 0.0))].into(), n_max: k.unsigned_abs() as u32 })
}

/// `a_n = a/|n|` for `1 ≤ |n| ≤ n_max`, `a_0 = 0`.
pub fn ideal_spectrum(a: f64, n_max: u32) -> Spectrum {
    let coeffs = (1..=n_max as i64)
        .flat_map(|n| [(n, Complex64::new(a / n as f64, 0.0)), (-n, Complex64::new(a / n as f64, 0.0))])
        .collect();
    Spectrum { coeffs, n_max }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instrument {
    Ideal { amplitude: f64 },
    Pure { amplitude: f64, k: i64 },
}

impl Instrument {
    pub fn spectrum(self, n_max: u32) -> Result<Spectrum> {
        match self {
            Instrument::Ideal { amplitude } => Ok(ideal_spectrum(amplitude, n_max)),
            Instrument::Pure { amplitude, k } => pure_oscillator(amplitude, k),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sound {
    pub pulsation: Freq,
    pub spectrum: Spectrum,
}

/// Pulsation split as `coeff · 2^frac`; values with different `frac` are
/// linearly independent over the rationals.
fn split(f: &Freq) -> Option<(Rational, Rational)> {
    match f {
        Freq::Exact { coeff, pow2 } => Some((coeff.clone(), pow2.clone())),
        Freq::Real(_) => None,
    }
}

fn check_budget(count: usize, n_max: u32, budget: u128) -> Result<()> {
    let needed = (2 * n_max as u128 + 1).checked_pow(count as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Walks every index vector in `[−n, n]^{k−1}`, lexicographically, and
/// hands the last index values that close the lattice condition to `f`.
fn lattice<F: FnMut(&[i64], i64)>(pulsations: &[Freq], n_max: u32, eps: f64, mut f: F) -> Result<()> {
    let k = pulsations.len();
    let n = n_max as i64;
    let mut idx = vec![-n; k - 1];
    let exact = eps == 0.0;
    let parts: Vec<_> = if exact {
        pulsations.iter().map(|p| split(p).ok_or(Error::InexactPulsation)).collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let reals: Vec<f64> = pulsations.iter().map(Freq::to_f64).collect();
    loop {
        if exact {
            // group sums by fractional exponent; only the last pulsation's
            // group may be nonzero, and it must be cancelled by n_k
            let mut groups: BTreeMap<&Rational, Rational> = BTreeMap::new();
            for (i, &ni) in idx.iter().enumerate() {
                *groups.entry(&parts[i].1).or_insert_with(Rational::zero) += &parts[i].0 * int(ni);
            }
            let (cl, fl) = &parts[k - 1];
            let others_vanish = groups.iter().all(|(g, s)| *g == fl || s.is_zero());
            if others_vanish {
                let s = groups.get(fl).cloned().unwrap_or_else(Rational::zero);
                let m = -s / cl;
                if m.is_integer() && m.abs() <= int(n) {
                    f(&idx, num_traits::ToPrimitive::to_i64(&m.to_integer()).unwrap());
                }
            }
        } else {
            let s: f64 = idx.iter().zip(&reals).map(|(&ni, &w)| ni as f64 * w).sum();
            let w = reals[k - 1];
            let lo = (((-eps - s) / w).floor() as i64 - 1).max(-n);
            let hi = (((eps - s) / w).ceil() as i64 + 1).min(n);
            for m in lo..=hi {
                if (s + m as f64 * w).abs() <= eps {
                    f(&idx, m);
                }
            }
        }
        // advance the odometer
        let mut j = k - 1;
        loop {
            if j == 0 {
                return Ok(());
            }
            j -= 1;
            if idx[j] < n {
                idx[j] += 1;
                break;
            }
            idx[j] = -n;
        }
    }
}

pub fn consonance_index_with(sounds: &[Sound], n_max: u32, eps: f64, budget: u128) -> Result<Complex64> {
    if sounds.len() < 2 {
        return Err(Error::EmptyList);
    }
    if sounds.iter().any(|s| !s.pulsation.is_positive()) {
        return Err(Error::NonPositive);
    }
    check_budget(sounds.len(), n_max, budget)?;
    let pulsations: Vec<Freq> = sounds.iter().map(|s| s.pulsation.clone()).collect();
    let mut total = Complex64::zero();
    lattice(&pulsations, n_max, eps, |idx, m| {
        let head: Complex64 = idx.iter().zip(sounds).map(|(&n, s)| s.spectrum.get(n)).sum();
        total += head + sounds.last().unwrap().spectrum.get(m);
    })?;
    Ok(total)
}

/// The lattice index truncated at `|n_i| ≤ n_max`; `eps = 0` requires
/// exact pulsations.
pub fn consonance_index(sounds: &[Sound], n_max: u32, eps: f64) -> Result<Complex64> {
    consonance_index_with(sounds, n_max, eps, DEFAULT_BUDGET)
}

/// Exactly (`eps = 0`): all pairwise ratios are rational. Tolerantly: some
/// nonzero index vector within `n_max` brings `Σ n_i ω_i` within `eps`.
pub fn commensurable(freqs: &[Freq], eps: f64, n_max: u32) -> Result<bool> {
    if freqs.len() < 2 {
        return Err(Error::EmptyList);
    }
    if eps == 0.0 {
        let parts: Vec<_> = freqs.iter().map(|p| split(p).ok_or(Error::InexactPulsation)).collect::<Result<_>>()?;
        return Ok(parts.iter().all(|(_, f)| *f == parts[0].1));
    }
    check_budget(freqs.len(), n_max, DEFAULT_BUDGET)?;
    let mut found = false;
    lattice(freqs, n_max, eps, |idx, m| {
        if m != 0 || idx.iter().any(|&n| n != 0) {
            found = true;
        }
    })?;
    Ok(found)
}

/// The index at `n_max / 2` and `n_max`, with a flag raised when the last
/// doubling grew it by more than `threshold`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Growth {
    pub n_half: u32,
    pub n_max: u32,
    pub index_half: f64,
    pub index: f64,
    pub diverging: bool,
}

pub fn consonance_growth(pulsations: &[Freq], instrument: Instrument, n_max: u32, eps: f64, threshold: f64) -> Result<Growth> {
    let at = |n: u32| -> Result<f64> {
        let sounds: Vec<Sound> = pulsations
            .iter()
            .map(|p| Ok(Sound { pulsation: p.clone(), spectrum: instrument.spectrum(n)? }))
            .collect::<Result<_>>()?;
        Ok(consonance_index(&sounds, n, eps)?.re)
    };
    let n_half = n_max / 2;
    let (index_half, index) = (at(n_half)?, at(n_max)?);
    Ok(Growth { n_half, n_max, index_half, index, diverging: (index - index_half).abs() > threshold })
}

/// Amplitude and phase of `a1·e^{iφ1} + a2·e^{i(φ2 + Δω t)}`. The amplitude
/// is `√(a1² + a2² + 2 a1 a2 cos(φ1 − φ2 − Δω t))`, evaluated as the modulus
/// of the components so it stays accurate near cancellation.
pub fn beat_envelope(a1: f64, phi1: f64, a2: f64, phi2: f64, delta_omega: f64, t: f64) -> (f64, f64) {
    let theta = phi2 + delta_omega * t;
    let re = a1 * phi1.cos() + a2 * theta.cos();
    let im = a1 * phi1.sin() + a2 * theta.sin();
    (re.hypot(im), im.atan2(re))
}

/// Sum and difference tones.
pub fn combinational_tones(omega1: &Freq, omega2: &Freq) -> Result<(Freq, Freq)> {
    if !omega1.is_positive() || !omega2.is_positive() {
        return Err(Error::NonPositive);
    }
    Ok(match (omega1.as_rational(), omega2.as_rational()) {
        (Some(a), Some(b)) => (Freq::rational(a + b), Freq::rational((a - b).abs())),
        _ => {
            let (a, b) = (omega1.to_f64(), omega2.to_f64());
            (Freq::real(a + b), Freq::real((a - b).abs()))
        }
    })
}
