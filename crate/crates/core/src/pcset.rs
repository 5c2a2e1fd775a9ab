//! Pitch classes in Z12, words over them, and the maps acting on words.

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A pitch class, stored as its residue mod 12.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "u8")]
pub struct Letter(u8);

impl Letter {
    pub fn new(v: i64) -> Self {
        Letter(v.rem_euclid(12) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Letter> {
        (0..12).map(Letter)
    }

    /// `(self - other) mod 12`.
    pub fn minus(self, other: Letter) -> Letter {
        Letter::new(self.0 as i64 - other.0 as i64)
    }
}

impl TryFrom<i64> for Letter {
    type Error = String;
    fn try_from(v: i64) -> std::result::Result<Self, String> {
        if (0..12).contains(&v) {
            Ok(Letter(v as u8))
        } else {
            Err(format!("letter {v} outside 0..11"))
        }
    }
}

impl From<Letter> for u8 {
    fn from(l: Letter) -> u8 {
        l.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A map `x ↦ shift + x`, or `x ↦ shift − x` when `invert` is set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct TIMap {
    pub invert: bool,
    pub shift: Letter,
}

impl TIMap {
    pub const IDENTITY: TIMap = TIMap { invert: false, shift: Letter(0) };

    pub fn translate(z: i64) -> Self {
        TIMap { invert: false, shift: Letter::new(z) }
    }

    pub fn inversion(shift: i64) -> Self {
        TIMap { invert: true, shift: Letter::new(shift) }
    }

    /// All 24 maps: translations first, then inversions, by shift.
    pub fn all() -> impl Iterator<Item = TIMap> {
        [false, true]
            .into_iter()
            .flat_map(|invert| Letter::all().map(move |shift| TIMap { invert, shift }))
    }

    pub fn apply(self, x: Letter) -> Letter {
        let (s, x) = (self.shift.0 as i64, x.0 as i64);
        Letter::new(if self.invert { s - x } else { s + x })
    }

    /// `self ∘ other`.
    pub fn compose(self, other: TIMap) -> TIMap {
        let s = if self.invert { -(other.shift.0 as i64) } else { other.shift.0 as i64 };
        TIMap { invert: self.invert != other.invert, shift: Letter::new(self.shift.0 as i64 + s) }
    }

    pub fn inverse(self) -> TIMap {
        if self.invert {
            self
        } else {
            TIMap::translate(-(self.shift.0 as i64))
        }
    }
}

/// Anything carrying a pitch class that translations and inversions act on.
pub trait PitchClass: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display {
    fn pc(&self) -> Letter;
    fn with_pc(&self, pc: Letter) -> Self;

    fn transform(&self, m: TIMap) -> Self {
        self.with_pc(m.apply(self.pc()))
    }
}

impl PitchClass for Letter {
    fn pc(&self) -> Letter {
        *self
    }
    fn with_pc(&self, pc: Letter) -> Self {
        pc
    }
}

/// A finite sequence of letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word<L = Letter>(pub Vec<L>);

impl Word<Letter> {
    pub fn from_values(v: &[i64]) -> Self {
        Word(v.iter().map(|&x| Letter::new(x)).collect())
    }

    pub fn values(&self) -> Vec<u8> {
        self.0.iter().map(|l| l.0).collect()
    }

    /// Successive differences, `|w| − 1` of them.
    pub fn interval_vector(&self) -> Result<IntervalVector> {
        if self.len() < 2 {
            return Err(Error::LengthTooShort { len: self.len(), min: 2 });
        }
        Ok(IntervalVector(self.0.windows(2).map(|p| p[1].minus(p[0])).collect()))
    }

    /// Successive differences closed up with the step back to the first letter.
    pub fn cyclic_step_vector(&self) -> Result<StepVector> {
        let mut steps = self.interval_vector()?.0;
        steps.push(self.0[0].minus(*self.0.last().unwrap()));
        Ok(StepVector(steps))
    }
}

impl<L: PitchClass> Word<L> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[L] {
        &self.0
    }

    pub fn is_nonrepetitive(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.0.iter().all(|l| seen.insert(l))
    }

    pub fn transform(&self, m: TIMap) -> Self {
        Word(self.0.iter().map(|l| l.transform(m)).collect())
    }

    pub fn translate(&self, z: i64) -> Self {
        self.transform(TIMap::translate(z))
    }

    /// Letterwise `0 − x`.
    pub fn invert(&self) -> Self {
        self.transform(TIMap::inversion(0))
    }

    /// Left rotation by `i − 1`; degrees are 1-based.
    pub fn mode(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.len() {
            return Err(Error::DegreeOutOfRange { degree: i, len: self.len() });
        }
        let mut v = self.0.clone();
        v.rotate_left(i - 1);
        Ok(Word(v))
    }

    /// The chord of degree `i` at `level`: positions 1, 3, …, 2(level+1)+1
    /// of the `i`-th mode, read cyclically (`level + 2` letters).
    pub fn chord(&self, i: usize, level: usize) -> Result<Self> {
        if self.len() < 5 || !self.is_nonrepetitive() {
            return Err(Error::WordTooShortOrRepetitive);
        }
        let max = maxlevel(self.len())?;
        if level == 0 || level > max {
            return Err(Error::LevelOutOfRange { level, max });
        }
        let m = self.mode(i)?;
        Ok(Word((0..level + 2).map(|j| m.0[(2 * j) % self.len()].clone()).collect()))
    }

    /// The letters as a sorted set.
    pub fn letter_set(&self) -> std::collections::BTreeSet<L> {
        self.0.iter().cloned().collect()
    }
}

impl<L: fmt::Display> fmt::Display for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct IntervalVector(pub Vec<Letter>);

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct StepVector(pub Vec<Letter>);

impl StepVector {
    pub fn values(&self) -> Vec<u8> {
        self.0.iter().map(|l| l.value()).collect()
    }
}

pub fn word_transform<L: PitchClass>(w: &Word<L>, m: TIMap) -> Word<L> {
    w.transform(m)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Equivalence {
    Translational,
    Inversional,
}

pub fn equivalent<L: PitchClass>(w1: &Word<L>, w2: &Word<L>, rel: Equivalence) -> bool {
    match rel {
        Equivalence::Translational => translation_between(w1, w2).is_some(),
        Equivalence::Inversional => &w1.invert() == w2,
    }
}

/// The smallest `z` with `T_z(w1) = w2`.
pub fn translation_between<L: PitchClass>(w1: &Word<L>, w2: &Word<L>) -> Option<Letter> {
    if w1.len() != w2.len() {
        return None;
    }
    Letter::all().find(|&z| &w1.transform(TIMap { invert: false, shift: z }) == w2)
}

/// `|w| − 2` for odd lengths, `|w|/2 − 2` for even ones.
pub fn maxlevel(len: usize) -> Result<usize> {
    if len < 5 {
        return Err(Error::WordTooShort(len));
    }
    let n = len as i64;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    Ok((1 + (n - 5).div_euclid(2) - (sign - 1) / 2 * (n / 2)) as usize)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymmetryMode {
    Pointwise,
    Setwise,
}

/// All `TIMap`s fixing `w`, in [`TIMap::all`] order.
pub fn symmetry_group(w: &Word, mode: SymmetryMode) -> Vec<TIMap> {
    let set = w.letter_set();
    TIMap::all()
        .filter(|&g| match mode {
            SymmetryMode::Pointwise => &w.transform(g) == w,
            SymmetryMode::Setwise => w.transform(g).letter_set() == set,
        })
        .collect()
}

pub fn is_proper_prefix<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() < b.len() && b.starts_with(a)
}

/// All `12^n` words of length `n`, lexicographically.
pub fn all_words(n: usize) -> impl Iterator<Item = Word> {
    let total = 12u64.pow(n as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![Letter(0); n];
        for slot in v.iter_mut().rev() {
            *slot = Letter((k % 12) as u8);
            k /= 12;
        }
        Word(v)
    })
}

/// Ascending `n`-letter sets, lexicographically: `binomial(12, n)` words.
pub fn letter_sets(n: usize) -> Vec<Word> {
    fn go(start: u8, n: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if cur.len() == n {
            out.push(Word(cur.clone()));
            return;
        }
        for x in start..12 {
            cur.push(Letter(x));
            go(x + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n <= 12 {
        go(0, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Every ordering of every `n`-letter set, lexicographically.
pub fn ordered_nonrepetitive_words(n: usize) -> Vec<Word> {
    fn go(n: usize, used: &mut [bool; 12], cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if cur.len() == n {
            out.push(Word(cur.clone()));
            return;
        }
        for x in 0..12 {
            if !used[x] {
                used[x] = true;
                cur.push(Letter(x as u8));
                go(n, used, cur, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    if n <= 12 {
        go(n, &mut [false; 12], &mut Vec::new(), &mut out);
    }
    out
}

/// Words of length `n`; nonrepetitive words are counted as letter sets.
pub fn enumerate_words(n: usize, nonrepetitive: bool) -> Vec<Word> {
    if nonrepetitive {
        letter_sets(n)
    } else {
        all_words(n).collect()
    }
}

pub const CATALOG: [&str; 22] = [
    "major",
    "minor",
    "harmonicminor",
    "dorian",
    "phrigian",
    "lydian",
    "mixolydian",
    "locrian",
    "tziganminor",
    "jewish",
    "indian",
    "majorpentatonic",
    "minorpentatonic",
    "blues",
    "esatonal",
    "augmented",
    "halfwholediminished",
    "wholehalfdiminished",
    "wholetonediminished",
    "bebopmajor",
    "bebopdominant",
    "chromatic",
];

const MAJOR: [i64; 7] = [0, 2, 4, 5, 7, 9, 11];

// rotation as the catalog definitions write it, wrapping past the length
fn mode_of(base: &[i64], degree: usize, back: i64) -> Word {
    let mut v = Word::from_values(base).0;
    let n = v.len();
    v.rotate_left((degree - 1) % n);
    Word(v).translate(-back)
}

/// A catalog word rooted on `root`.
pub fn named_word(name: &str, root: Letter) -> Result<Word> {
    let w = match name {
        "major" => Word::from_values(&MAJOR),
        "minor" => Word::from_values(&[0, 2, 3, 5, 7, 8, 10]),
        "harmonicminor" => Word::from_values(&[0, 2, 3, 5, 7, 8, 11]),
        "dorian" => mode_of(&MAJOR, 2, 2),
        "phrigian" => mode_of(&MAJOR, 3, 4),
        "lydian" => mode_of(&MAJOR, 4, 5),
        "mixolydian" => mode_of(&MAJOR, 5, 7),
        "locrian" => mode_of(&MAJOR, 7, 11),
        "tziganminor" => Word::from_values(&[0, 2, 3, 6, 7, 8, 11]),
        "jewish" => Word::from_values(&[0, 1, 4, 5, 7, 8, 10]),
        "indian" => Word::from_values(&[0, 1, 4, 5, 7, 8, 11]),
        "majorpentatonic" => Word::from_values(&[0, 2, 4, 7, 9]),
        "minorpentatonic" => mode_of(&[0, 2, 4, 7, 9], 6, 9),
        "blues" => Word::from_values(&[0, 3, 5, 6, 7, 10]),
        "esatonal" => Word::from_values(&[0, 2, 4, 6, 8, 10]),
        "augmented" => Word::from_values(&[0, 3, 4, 7, 8, 11]),
        "halfwholediminished" => Word::from_values(&[0, 1, 3, 4, 6, 7, 9, 10]),
        "wholehalfdiminished" => Word::from_values(&[0, 2, 3, 5, 6, 8, 9, 11]),
        "wholetonediminished" => Word::from_values(&[0, 1, 3, 4, 6, 8, 10]),
        "bebopmajor" => Word::from_values(&[0, 2, 4, 5, 7, 8, 9, 11]),
        "bebopdominant" => Word::from_values(&[0, 2, 4, 5, 7, 9, 10, 11]),
        "chromatic" => Word::from_values(&(0..12).collect::<Vec<_>>()),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(w.translate(root.value() as i64))
}
