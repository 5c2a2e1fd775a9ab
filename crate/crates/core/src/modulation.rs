//! Modulations between tonalities and tonal pieces built from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pcset::{named_word, translation_between, Letter, PitchClass, TIMap};
use crate::tonality::{
    cadences_with, is_cadence, natural_context, pivotal_degrees, Cadence, Context, HarmonicWord, Pivot,
    SearchOptions, Tonality,
};
use crate::Word;

/// A pivot chord followed by a cadence of the target.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Modulation<L = Letter> {
    pub pivot: Pivot<L>,
    pub cadence: Cadence<L>,
}

impl<L: PitchClass> Modulation<L> {
    pub fn transform(&self, m: TIMap) -> Self {
        Modulation { pivot: self.pivot.transform(m), cadence: self.cadence.transform(m) }
    }
}

/// Pivots × cadences of `t2` against `ctx`.
pub fn modulations_in<L: PitchClass>(
    t1: &Tonality<L>,
    t2: &Tonality<L>,
    ctx: &Context<L>,
    opts: &SearchOptions,
) -> Result<Vec<Modulation<L>>> {
    let pivots = pivotal_degrees(t1, t2);
    if pivots.is_empty() {
        return Ok(Vec::new());
    }
    let cads = cadences_with(t2, ctx, opts)?;
    Ok(pivots
        .iter()
        .flat_map(|p| cads.iter().map(move |c| Modulation { pivot: p.clone(), cadence: c.clone() }))
        .collect())
}

/// Modulations whose cadences are judged against the natural context of `t2`.
pub fn modulations<L: PitchClass>(t1: &Tonality<L>, t2: &Tonality<L>, maxlen: usize) -> Result<Vec<Modulation<L>>> {
    let ctx = natural_context(t2.word(), t2.level())?;
    modulations_in(t1, t2, &ctx, &SearchOptions::new(maxlen, false))
}

/// The map `T_shift ∘ h` with `h` the inversion about 0 when `invert` is set.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MazzolaModulator {
    pub shift: Letter,
    pub invert: bool,
}

impl MazzolaModulator {
    pub fn as_map(self) -> TIMap {
        TIMap::translate(self.shift.value() as i64).compose(if self.invert { TIMap::inversion(0) } else { TIMap::IDENTITY })
    }
}

/// Exists exactly when the words are translates; `invert` is chosen when the
/// source word is fixed letterwise by inversion.
pub fn mazzola_modulator<L: PitchClass>(t1: &Tonality<L>, t2: &Tonality<L>) -> Option<MazzolaModulator> {
    let shift = translation_between(t1.word(), t2.word())?;
    let invert = &t1.word().invert() == t1.word();
    Some(MazzolaModulator { shift, invert })
}

pub fn mazzola_modulations<L: PitchClass>(
    t1: &Tonality<L>,
    t2: &Tonality<L>,
    maxlen: usize,
) -> Result<Vec<(MazzolaModulator, Cadence<L>)>> {
    let Some(g) = mazzola_modulator(t1, t2) else {
        return Ok(Vec::new());
    };
    let ctx = natural_context(t2.word(), t2.level())?;
    Ok(cadences_with(t2, &ctx, &SearchOptions::new(maxlen, false))?.into_iter().map(|c| (g, c)).collect())
}

/// The passage between two consecutive segments of a piece.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged, bound(deserialize = "L: Deserialize<'de>"))]
pub enum Transition<L = Letter> {
    Pivot { pivot: Pivot<L>, cadence: HarmonicWord<L> },
    Mazzola { modulator: MazzolaModulator, cadence: HarmonicWord<L> },
}

impl<L> Transition<L> {
    pub fn cadence(&self) -> &HarmonicWord<L> {
        match self {
            Transition::Pivot { cadence, .. } | Transition::Mazzola { cadence, .. } => cadence,
        }
    }
}

/// `hw_1, m_1, hw_2, …, m_{k−1}, hw_k` with the tonality of each segment.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound(deserialize = "L: PitchClass + Deserialize<'de>"))]
pub struct Piece<L = Letter> {
    pub tonalities: Vec<Tonality<L>>,
    pub harmonic_words: Vec<HarmonicWord<L>>,
    pub modulations: Vec<Transition<L>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PieceKind {
    General,
    Mazzola,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Chord `position` (1-based) of segment `segment` is not in its tonality.
    ForeignChord { segment: usize, position: usize },
    /// The pivot of transition `transition` is not shared as stated.
    BadPivot { transition: usize },
    /// The transition's cadence does not declare the next tonality.
    NotACadence { transition: usize },
    /// The modulator is not the one between the two tonalities.
    BadModulator { transition: usize },
    /// The transition kind does not match the piece kind.
    WrongTransition { transition: usize },
}

/// Every violated condition; an empty report means the piece is valid.
pub fn validate_piece<L: PitchClass>(p: &Piece<L>, kind: PieceKind) -> Result<Vec<Violation>> {
    let k = p.tonalities.len();
    if k == 0 || p.harmonic_words.len() != k || p.modulations.len() + 1 != k {
        return Err(Error::MalformedPiece(format!(
            "{} tonalities, {} harmonic words, {} modulations",
            k,
            p.harmonic_words.len(),
            p.modulations.len()
        )));
    }
    let mut out = Vec::new();
    for (i, (t, hw)) in p.tonalities.iter().zip(&p.harmonic_words).enumerate() {
        for (j, c) in hw.0.iter().enumerate() {
            if !t.has_chord(c) {
                out.push(Violation::ForeignChord { segment: i + 1, position: j + 1 });
            }
        }
    }
    for (i, m) in p.modulations.iter().enumerate() {
        let (t1, t2) = (&p.tonalities[i], &p.tonalities[i + 1]);
        let tr = i + 1;
        match (m, kind) {
            (Transition::Pivot { pivot, .. }, PieceKind::General) => {
                if !pivotal_degrees(t1, t2).contains(pivot) {
                    out.push(Violation::BadPivot { transition: tr });
                }
            }
            (Transition::Mazzola { modulator, .. }, PieceKind::Mazzola) => {
                if mazzola_modulator(t1, t2) != Some(*modulator) {
                    out.push(Violation::BadModulator { transition: tr });
                }
            }
            _ => out.push(Violation::WrongTransition { transition: tr }),
        }
        let ctx = natural_context(t2.word(), t2.level())?;
        if !is_cadence(m.cadence(), t2, &ctx) {
            out.push(Violation::NotACadence { transition: tr });
        }
    }
    Ok(out)
}

/// Roots 0, 7, 2, … along the cycle of fifths.
pub fn fifths_cycle(steps: usize) -> impl Iterator<Item = Letter> {
    (0..=steps).map(|k| Letter::new(7 * k as i64))
}

fn check_fifths_level(level: usize) -> Result<()> {
    if !(1..=4).contains(&level) {
        return Err(Error::LevelOutOfRange { level, max: 4 });
    }
    Ok(())
}

/// The progression `degrees` of the major tonality on each of `steps + 1`
/// roots along the cycle of fifths, concatenated.
pub fn fifths_cycle_piece(level: usize, steps: usize, degrees: &[usize]) -> Result<Vec<Word>> {
    check_fifths_level(level)?;
    let mut out = Vec::new();
    for root in fifths_cycle(steps) {
        let t = Tonality::new(named_word("major", root)?, level)?;
        out.extend(t.hw_from_degrees(degrees)?.0);
    }
    Ok(out)
}

/// The same walk as a structured piece: each passage pivots on degree 6 of
/// the current key (degree 2 of the next) and the next key's progression
/// serves as its cadence.
pub fn fifths_cycle_tonal_piece(level: usize, steps: usize, degrees: &[usize]) -> Result<Piece> {
    check_fifths_level(level)?;
    let tonalities: Vec<Tonality> =
        fifths_cycle(steps).map(|r| Tonality::new(named_word("major", r)?, level)).collect::<Result<_>>()?;
    let harmonic_words: Vec<HarmonicWord> =
        tonalities.iter().map(|t| t.hw_from_degrees(degrees)).collect::<Result<_>>()?;
    let modulations = tonalities
        .windows(2)
        .zip(harmonic_words.iter().skip(1))
        .map(|(pair, next)| {
            let chord = pair[0].degree(6)?.clone();
            let pivot = Pivot { degree_in_target: pair[1].degree_of(&chord)?, chord, degree_in_source: 6 };
            Ok(Transition::Pivot { pivot, cadence: next.clone() })
        })
        .collect::<Result<_>>()?;
    Ok(Piece { tonalities, harmonic_words, modulations })
}
