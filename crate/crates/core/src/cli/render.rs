//! Monodic WAV rendering: one chord per event, summed sines.

use std::f64::consts::TAU;
use std::path::Path;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::config::Config;
use crate::error::{Error, Result};
use crate::pythag::{pyt_freq, Construction, PytLetter};
use crate::ratio::{parse_rational, rat, Freq, Rational};
use crate::Letter;

/// Peak level of every event, as a fraction of full scale.
pub const PEAK: f64 = 0.8;
/// Length of the optional linear fade at each event boundary.
pub const RAMP_SECONDS: f64 = 0.005;

pub const DURATIONS: [(&str, i64); 7] = [
    ("semibreve", 1),
    ("minim", 2),
    ("crotchet", 4),
    ("quaver", 8),
    ("semiquaver", 16),
    ("demisemiquaver", 32),
    ("hemidemisemiquaver", 64),
];

/// A note name (`crotchet`) or a fraction of the reference time (`1/4`).
pub fn parse_duration(s: &str) -> Result<Rational> {
    let d = match DURATIONS.iter().find(|(n, _)| *n == s) {
        Some(&(_, den)) => rat(1, den),
        None => parse_rational(s)?,
    };
    if d <= rat(0, 1) {
        return Err(Error::NonPositive);
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Sounding {
    Tempered(Vec<Letter>),
    Pyt(Vec<PytLetter>),
}

impl Sounding {
    pub fn frequencies(&self, cfg: &Config) -> Vec<f64> {
        match self {
            Sounding::Tempered(ls) => ls.iter().map(|&l| tempered(&cfg.reference_note, l)).collect(),
            Sounding::Pyt(ls) => {
                ls.iter().map(|&l| pyt_freq(l, Construction::Chain, &cfg.reference_note).to_f64()).collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Event {
    pub chord: Sounding,
    /// Fraction of the reference time.
    pub duration: Rational,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct TimedPiece {
    pub events: Vec<Event>,
}

impl TimedPiece {
    pub fn uniform(chords: impl IntoIterator<Item = Sounding>, duration: Rational) -> Self {
        TimedPiece { events: chords.into_iter().map(|chord| Event { chord, duration: duration.clone() }).collect() }
    }
}

/// `round(duration · reference_time · sample_rate)`, halves rounding up.
pub fn event_samples(duration: &Rational, cfg: &Config) -> usize {
    let x = duration * &cfg.reference_time * Rational::from_integer(cfg.sample_rate.into());
    let (q, r) = x.numer().div_mod_floor(x.denom());
    let up = &r * 2u32 >= *x.denom();
    (q + u32::from(up)).to_usize().expect("sample count fits")
}

fn render_event(freqs: &[f64], n: usize, sample_rate: u32, ramp: bool, out: &mut Vec<i16>) {
    let sr = sample_rate as f64;
    let mut buf: Vec<f64> =
        (0..n).map(|i| freqs.iter().map(|f| (TAU * f * i as f64 / sr).sin()).sum::<f64>()).collect();
    let peak = buf.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let gain = if peak > 0.0 { PEAK / peak } else { 0.0 };
    let ramp_len = if ramp { ((RAMP_SECONDS * sr).round() as usize).min(n / 2) } else { 0 };
    for (i, x) in buf.iter_mut().enumerate() {
        *x *= gain;
        let edge = i.min(n - 1 - i);
        if edge < ramp_len {
            *x *= edge as f64 / ramp_len as f64;
        }
    }
    out.extend(buf.into_iter().map(|x| (32767.0 * x).floor() as i16));
}

pub fn render_samples(p: &TimedPiece, cfg: &Config, ramp: bool) -> Result<Vec<i16>> {
    if p.events.is_empty() {
        return Err(Error::EmptyPiece);
    }
    let mut out = Vec::new();
    for e in &p.events {
        let n = event_samples(&e.duration, cfg);
        render_event(&e.chord.frequencies(cfg), n, cfg.sample_rate, ramp, &mut out);
    }
    Ok(out)
}

/// Mono 16-bit PCM at the configured sample rate; returns the sample count.
pub fn render_wav(p: &TimedPiece, out: &Path, cfg: &Config, ramp: bool) -> Result<usize> {
    let samples = render_samples(p, cfg, ramp)?;
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: cfg.sample_rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let io = |e: hound::Error| Error::Io(format!("{}: {e}", out.display()));
    let mut w = hound::WavWriter::create(out, spec).map_err(io)?;
    for &s in &samples {
        w.write_sample(s).map_err(io)?;
    }
    w.finalize().map_err(io)?;
    Ok(samples.len())
}

/// `ν_ref · 2^(pc/12)`.
pub fn tempered(reference: &Freq, pc: Letter) -> f64 {
    reference.to_f64() * 2f64.powf(pc.value() as f64 / 12.0)
}
