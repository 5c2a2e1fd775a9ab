//! Tonalities, harmonic words, pivots and cadence search.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pcset::{letter_sets, maxlevel, named_word, Letter, PitchClass, TIMap, Word};

/// Candidate budget for cadence searches.
pub const DEFAULT_BUDGET: u128 = 10_000_000;
pub const DEFAULT_MAXLEN: usize = 3;

/// A nonrepetitive word at a chord level, with one chord per degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawTonality<L>", bound(deserialize = "L: PitchClass + Deserialize<'de>"))]
pub struct Tonality<L = Letter> {
    word: Word<L>,
    level: usize,
    degrees: Vec<Word<L>>,
}

#[derive(Deserialize)]
struct RawTonality<L> {
    word: Word<L>,
    level: usize,
    degrees: Option<Vec<Word<L>>>,
}

impl<L: PitchClass> TryFrom<RawTonality<L>> for Tonality<L> {
    type Error = String;
    fn try_from(raw: RawTonality<L>) -> std::result::Result<Self, String> {
        let t = Tonality::new(raw.word, raw.level).map_err(|e| e.to_string())?;
        match raw.degrees {
            Some(d) if d != t.degrees => Err("degrees disagree with word and level".into()),
            _ => Ok(t),
        }
    }
}

impl<L: PitchClass> Tonality<L> {
    pub fn new(word: Word<L>, level: usize) -> Result<Self> {
        let degrees = (1..=word.len()).map(|i| word.chord(i, level)).collect::<Result<_>>()?;
        Ok(Tonality { word, level, degrees })
    }

    pub fn word(&self) -> &Word<L> {
        &self.word
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn degrees(&self) -> &[Word<L>] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, i: usize) -> Result<&Word<L>> {
        if i == 0 || i > self.len() {
            return Err(Error::DegreeOutOfRange { degree: i, len: self.len() });
        }
        Ok(&self.degrees[i - 1])
    }

    /// 1-based index of the first degree whose chord equals `c`.
    pub fn degree_of(&self, c: &Word<L>) -> Result<usize> {
        self.degrees.iter().position(|d| d == c).map(|p| p + 1).ok_or(Error::NotADegree)
    }

    pub fn has_chord(&self, c: &Word<L>) -> bool {
        self.degrees.contains(c)
    }

    /// Every chord of `hw` is a degree chord of `self`.
    pub fn contains(&self, hw: &HarmonicWord<L>) -> bool {
        hw.0.iter().all(|c| self.has_chord(c))
    }

    pub fn hw_from_degrees(&self, degrees: &[usize]) -> Result<HarmonicWord<L>> {
        degrees.iter().map(|&i| self.degree(i).cloned()).collect::<Result<_>>().map(HarmonicWord)
    }

    /// Degree indices of a contained harmonic word.
    pub fn degrees_of(&self, hw: &HarmonicWord<L>) -> Result<Vec<usize>> {
        hw.0.iter().map(|c| self.degree_of(c)).collect()
    }

    /// The tonality of the transformed word.
    pub fn transform(&self, m: TIMap) -> Self {
        Tonality::new(self.word.transform(m), self.level).expect("maps preserve tonality shape")
    }

    pub fn translate(&self, z: i64) -> Self {
        self.transform(TIMap::translate(z))
    }

    /// Harmonic words of length `n` (or every length `1..=n`), ordered by
    /// length and then lexicographically by degree index.
    pub fn harmonic_words(&self, n: usize, upto: bool) -> Vec<HarmonicWord<L>> {
        let lens = if upto { 1..=n } else { n..=n };
        lens.flat_map(|k| DegreeOdometer::new(self.len(), k))
            .map(|ds| self.hw_from_degrees(&ds).unwrap())
            .collect()
    }

    fn chord_set(&self) -> BTreeSet<&Word<L>> {
        self.degrees.iter().collect()
    }
}

/// Lexicographic walk over `[1..=base]^len`.
struct DegreeOdometer {
    base: usize,
    cur: Option<Vec<usize>>,
}

impl DegreeOdometer {
    fn new(base: usize, len: usize) -> Self {
        DegreeOdometer { base, cur: (base > 0 || len == 0).then(|| vec![1; len]) }
    }
}

impl Iterator for DegreeOdometer {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.cur = None;
                break;
            }
            k -= 1;
            if cur[k] < self.base {
                cur[k] += 1;
                break;
            }
            cur[k] = 1;
        }
        Some(out)
    }
}

/// A sequence of chords.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HarmonicWord<L = Letter>(pub Vec<Word<L>>);

impl<L: PitchClass> HarmonicWord<L> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transform(&self, m: TIMap) -> Self {
        HarmonicWord(self.0.iter().map(|c| c.transform(m)).collect())
    }

    pub fn last(&self) -> Option<&Word<L>> {
        self.0.last()
    }
}

/// The tonalities a cadence is tested against.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct Context<L = Letter> {
    tonalities: Vec<Tonality<L>>,
}

impl<L: PitchClass> Context<L> {
    pub fn new(tonalities: Vec<Tonality<L>>) -> Result<Self> {
        let mut seen = HashSet::new();
        if tonalities.is_empty() || !tonalities.iter().all(|t| seen.insert((&t.word, t.level))) {
            return Err(Error::InvalidContext);
        }
        Ok(Context { tonalities })
    }

    pub fn tonalities(&self) -> &[Tonality<L>] {
        &self.tonalities
    }

    pub fn len(&self) -> usize {
        self.tonalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tonalities.is_empty()
    }

    pub fn includes(&self, t: &Tonality<L>) -> bool {
        self.tonalities.iter().any(|u| u.word == t.word && u.level == t.level)
    }

    pub fn transform(&self, m: TIMap) -> Self {
        Context { tonalities: self.tonalities.iter().map(|t| t.transform(m)).collect() }
    }
}

/// How a harmonic word that several tonalities share is judged.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum CadenceRule {
    /// Exactly one context member contains the word.
    #[default]
    Unique,
    /// No context member other than `t` itself contains the word; for a
    /// tonality outside the context, no member may contain it at all.
    Literal,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub maxlen: usize,
    pub minimal: bool,
    pub rule: CadenceRule,
    pub budget: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { maxlen: DEFAULT_MAXLEN, minimal: false, rule: CadenceRule::Unique, budget: DEFAULT_BUDGET }
    }
}

impl SearchOptions {
    pub fn new(maxlen: usize, minimal: bool) -> Self {
        SearchOptions { maxlen, minimal, ..Default::default() }
    }
}

/// A cadence in both display forms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Cadence<L = Letter> {
    pub degrees: Vec<usize>,
    pub chords: HarmonicWord<L>,
}

impl<L: PitchClass> Cadence<L> {
    pub fn transform(&self, m: TIMap) -> Self {
        Cadence { degrees: self.degrees.clone(), chords: self.chords.transform(m) }
    }
}

/// Fixed-width bitset over context members.
#[derive(Clone, PartialEq, Eq)]
struct Members(Vec<u64>);

impl Members {
    fn full(n: usize) -> Self {
        let mut v = vec![u64::MAX; n.div_ceil(64)];
        if n % 64 != 0 {
            *v.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
        }
        Members(v)
    }

    fn and(&self, other: &Members) -> Members {
        Members(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|x| x.count_ones()).sum()
    }
}

fn holders<L: PitchClass>(t: &Tonality<L>, ctx: &Context<L>) -> Vec<Members> {
    t.degrees
        .iter()
        .map(|c| {
            let mut m = Members(vec![0; ctx.len().div_ceil(64)]);
            for (k, u) in ctx.tonalities.iter().enumerate() {
                if u.has_chord(c) {
                    m.0[k / 64] |= 1 << (k % 64);
                }
            }
            m
        })
        .collect()
}

fn judge(members: &Members, in_ctx: bool, rule: CadenceRule) -> bool {
    match rule {
        CadenceRule::Unique => members.count() == 1,
        // t contains every candidate, so with t in the context the
        // intersection is exactly {t}; outside it must be empty.
        CadenceRule::Literal => {
            if in_ctx {
                members.count() == 1
            } else {
                members.count() == 0
            }
        }
    }
}

pub fn is_cadence_with<L: PitchClass>(
    hw: &HarmonicWord<L>,
    t: &Tonality<L>,
    ctx: &Context<L>,
    rule: CadenceRule,
) -> bool {
    if hw.is_empty() || !t.contains(hw) {
        return false;
    }
    let holders = ctx.tonalities.iter().filter(|u| u.contains(hw)).count();
    match rule {
        CadenceRule::Unique => holders == 1,
        CadenceRule::Literal => holders == ctx.includes(t) as usize,
    }
}

/// `hw` lies in `t` and picks out a single tonality of `ctx`.
pub fn is_cadence<L: PitchClass>(hw: &HarmonicWord<L>, t: &Tonality<L>, ctx: &Context<L>) -> bool {
    is_cadence_with(hw, t, ctx, CadenceRule::Unique)
}

/// Cadences of `t` up to `opts.maxlen` chords (exactly `maxlen` when
/// minimal), ordered by length, then by degree indices.
pub fn cadences_with<L: PitchClass>(t: &Tonality<L>, ctx: &Context<L>, opts: &SearchOptions) -> Result<Vec<Cadence<L>>> {
    let n = opts.maxlen;
    let needed = (t.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > opts.budget {
        return Err(Error::SearchBudgetExceeded { needed, budget: opts.budget });
    }
    let holders = holders(t, ctx);
    let in_ctx = ctx.includes(t);
    let mut found = Vec::new();
    let lens = if opts.minimal { n..=n } else { 1..=n };
    for len in lens {
        let mut path = Vec::with_capacity(len);
        walk(&holders, in_ctx, opts, len, &Members::full(ctx.len()), &mut path, &mut found);
    }
    Ok(found
        .into_iter()
        .map(|degrees| Cadence { chords: t.hw_from_degrees(&degrees).unwrap(), degrees })
        .collect())
}

fn walk(
    holders: &[Members],
    in_ctx: bool,
    opts: &SearchOptions,
    len: usize,
    acc: &Members,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    for (d, h) in holders.iter().enumerate() {
        let next = acc.and(h);
        path.push(d + 1);
        let hit = judge(&next, in_ctx, opts.rule);
        if path.len() == len {
            if hit {
                out.push(path.clone());
            }
        } else if !(opts.minimal && hit) && (next.count() > 0 || opts.rule == CadenceRule::Literal) {
            // a cadence prefix disqualifies minimal candidates, and under the
            // unique rule an empty holder set can never shrink back to one
            walk(holders, in_ctx, opts, len, &next, path, out);
        }
        path.pop();
    }
}

pub fn cadences<L: PitchClass>(t: &Tonality<L>, ctx: &Context<L>, maxlen: usize, minimal: bool) -> Result<Vec<Cadence<L>>> {
    cadences_with(t, ctx, &SearchOptions::new(maxlen, minimal))
}

/// A chord shared by two tonalities.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound(deserialize = "L: Deserialize<'de>"))]
pub struct Pivot<L = Letter> {
    pub chord: Word<L>,
    pub degree_in_source: usize,
    pub degree_in_target: usize,
}

impl<L: PitchClass> Pivot<L> {
    pub fn transform(&self, m: TIMap) -> Self {
        Pivot { chord: self.chord.transform(m), ..self.clone() }
    }
}

/// Chords common to both tonalities, ordered by source degree.
pub fn pivotal_degrees<L: PitchClass>(t1: &Tonality<L>, t2: &Tonality<L>) -> Vec<Pivot<L>> {
    let mut seen = HashSet::new();
    t1.degrees
        .iter()
        .enumerate()
        .filter(|(_, c)| seen.insert(*c))
        .filter_map(|(i, c)| {
            t2.degree_of(c).ok().map(|j| Pivot { chord: c.clone(), degree_in_source: i + 1, degree_in_target: j })
        })
        .collect()
}

/// Translates of the word at the same level, keeping one tonality per
/// distinct set of degree chords.
pub fn natural_context<L: PitchClass>(w: &Word<L>, level: usize) -> Result<Context<L>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for z in 0..12 {
        let t = Tonality::new(w.translate(z), level)?;
        let key: BTreeSet<Word<L>> = t.chord_set().into_iter().cloned().collect();
        if seen.insert(key) {
            out.push(t);
        }
    }
    Context::new(out)
}

pub const STANDARD_CONTEXTS: [&str; 6] = ["major", "minor", "classical", "gregorian", "mazzola", "jewish"];

fn translates(name: &str, level: usize) -> Result<Vec<Tonality>> {
    (0..12).map(|i| Tonality::new(named_word(name, Letter::new(i))?, level)).collect()
}

pub fn standard_context(name: &str, level: usize) -> Result<Context> {
    let ts = match name {
        "major" | "minor" | "jewish" => translates(name, level)?,
        "classical" => {
            let mut v = translates("major", level)?;
            v.extend(translates("minor", level)?);
            v
        }
        "gregorian" => {
            let mut v = Vec::with_capacity(84);
            for j in 1..=7 {
                for i in 0..12 {
                    v.push(Tonality::new(named_word("major", Letter::new(i))?.mode(j)?, level)?);
                }
            }
            v
        }
        "mazzola" => letter_sets(7).into_iter().map(|w| Tonality::new(w, level)).collect::<Result<_>>()?,
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Context::new(ts)
}

/// Number of tonalities over all nonrepetitive letter sets.
pub fn count_all_tonalities() -> usize {
    (5..=12).map(|n| letter_sets(n).len() * maxlevel(n).unwrap()).sum()
}

/// The word lies in `t` and ends on its first degree.
pub fn law_resolution_on_tonic<L: PitchClass>(hw: &HarmonicWord<L>, t: &Tonality<L>) -> bool {
    !hw.is_empty() && t.contains(hw) && hw.last() == t.degrees.first()
}

/// `law` gives the same verdict before and after translating by `z`.
pub fn check_translation_invariance<L: PitchClass>(
    law: impl Fn(&HarmonicWord<L>, &Tonality<L>) -> bool,
    hw: &HarmonicWord<L>,
    t: &Tonality<L>,
    z: Letter,
) -> bool {
    let m = TIMap { invert: false, shift: z };
    law(hw, t) == law(&hw.transform(m), &t.transform(m))
}
