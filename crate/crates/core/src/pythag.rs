//! The Pythagorean alphabet: pitch classes tagged by their cycle of fifths.
//!
//! Letters of cycle `n` sit a fifth comma `n` times above their cycle-0
//! namesakes, so words that agree on pitch classes can still differ, and
//! tonalities built over different cycles share no chords.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::fifth_comma;
use crate::modulation::{modulations_in, Modulation};
use crate::pcset::{Letter, PitchClass, TIMap, Word};
use crate::ratio::Freq;
use crate::scales::{ordered, scale_at_fixed_interval};
use crate::tonality::{Context, SearchOptions, Tonality};

/// A pitch class on a given cycle of fifths. Ordered by cycle first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PytLetter {
    pub pc: Letter,
    pub cycle: u32,
}

impl PytLetter {
    pub fn new(pc: i64, cycle: u32) -> Self {
        PytLetter { pc: Letter::new(pc), cycle }
    }
}

impl Ord for PytLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.cycle, self.pc).cmp(&(other.cycle, other.pc))
    }
}

impl PartialOrd for PytLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PytLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.pc, self.cycle)
    }
}

impl PitchClass for PytLetter {
    fn pc(&self) -> Letter {
        self.pc
    }
    fn with_pc(&self, pc: Letter) -> Self {
        PytLetter { pc, ..*self }
    }
}

pub type PytWord = Word<PytLetter>;
pub type PytTonality = Tonality<PytLetter>;

/// Tags every letter with `cycle`.
pub fn pyt_word(w: &Word, cycle: u32) -> PytWord {
    Word(w.0.iter().map(|&pc| PytLetter { pc, cycle }).collect())
}

/// Cycles `0..=m` in `(cycle, pc)` order.
pub fn pyt_alphabet(m: u32) -> Vec<PytLetter> {
    (0..=m).flat_map(|cycle| Letter::all().map(move |pc| PytLetter { pc, cycle })).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Construction {
    /// Cycle-0 block note raised by one fifth comma per cycle.
    #[default]
    Chain,
    /// Sorted twelve-note block of the open fifths scale at that cycle.
    Block,
}

fn block(reference: &Freq, cycle: u32) -> Vec<Freq> {
    let steps = 12 * cycle as usize + 11;
    let s = scale_at_fixed_interval(reference, &Freq::int(3), steps).expect("positive reference");
    ordered(&s.notes[s.notes.len() - 12..])
}

pub fn pyt_freq(l: PytLetter, construction: Construction, reference: &Freq) -> Freq {
    let pc = l.pc.value() as usize;
    match construction {
        Construction::Block => block(reference, l.cycle).swap_remove(pc),
        Construction::Chain => {
            let kf = Freq::rational(fifth_comma().ratio);
            &block(reference, 0)[pc] * &kf.powi(l.cycle as i64)
        }
    }
}

/// Frequencies of the whole alphabet up to cycle `m`, in alphabet order.
pub fn pyt_scale(m: u32, construction: Construction, reference: &Freq) -> Vec<(PytLetter, Freq)> {
    let kf = Freq::rational(fifth_comma().ratio);
    let base = block(reference, 0);
    let mut out = Vec::with_capacity(12 * (m as usize + 1));
    match construction {
        Construction::Chain => {
            for l in pyt_alphabet(m) {
                out.push((l, &base[l.pc.value() as usize] * &kf.powi(l.cycle as i64)));
            }
        }
        Construction::Block => {
            let s = scale_at_fixed_interval(reference, &Freq::int(3), 12 * m as usize + 11).expect("positive reference");
            for cycle in 0..=m {
                let b = ordered(&s.notes[12 * cycle as usize..12 * cycle as usize + 12]);
                out.extend(b.into_iter().enumerate().map(|(i, f)| (PytLetter::new(i as i64, cycle), f)));
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PytOp {
    Translate(Letter),
    Invert,
    /// Raise the cycle of the `i`-th letter (1-based).
    Raise(usize),
    Lower(usize),
}

pub fn pyt_transform(w: &PytWord, op: PytOp) -> Result<PytWord> {
    let at = |i: usize| {
        if i == 0 || i > w.len() {
            Err(Error::IndexOutOfRange { index: i, len: w.len() })
        } else {
            Ok(i - 1)
        }
    };
    match op {
        PytOp::Translate(z) => Ok(w.transform(TIMap { invert: false, shift: z })),
        PytOp::Invert => Ok(w.invert()),
        PytOp::Raise(i) => {
            let k = at(i)?;
            let mut v = w.clone();
            v.0[k].cycle += 1;
            Ok(v)
        }
        PytOp::Lower(i) => {
            let k = at(i)?;
            let mut v = w.clone();
            v.0[k].cycle = v.0[k].cycle.checked_sub(1).ok_or(Error::CycleUnderflow(i))?;
            Ok(v)
        }
    }
}

/// Same pitch classes in the same order, cycles free.
pub fn comma_equivalent(w1: &PytWord, w2: &PytWord) -> bool {
    w1.len() == w2.len() && w1.0.iter().zip(&w2.0).all(|(a, b)| a.pc == b.pc)
}

/// Modulations between comma-displaced tonalities; empty otherwise.
pub fn comma_modulations(
    t1: &PytTonality,
    t2: &PytTonality,
    ctx: &Context<PytLetter>,
    opts: &SearchOptions,
) -> Result<Vec<Modulation<PytLetter>>> {
    if !comma_equivalent(t1.word(), t2.word()) {
        return Ok(Vec::new());
    }
    modulations_in(t1, t2, ctx, opts)
}
