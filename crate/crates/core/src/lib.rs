//! Exact computational harmony: pitch-class words, tonalities and cadences,
//! modulations, the 5-limit Euler lattice, generated scales, the
//! cycle-indexed Pythagorean alphabet and lattice consonance.

pub mod cli;
pub mod consonance;
pub mod error;
pub mod euler;
pub mod modulation;
pub mod pcset;
pub mod pythag;
pub mod ratio;
pub mod scales;
pub mod tonality;

pub use error::{Error, Result};
pub use pcset::{Letter, TIMap, Word};
pub use ratio::{Freq, Rational};
pub use tonality::{Context, HarmonicWord, Tonality};
