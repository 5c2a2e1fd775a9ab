//! Renders I-IV-V-I in C major to a WAV file (default `cadence.wav`).

use harmonium::cli::config::Config;
use harmonium::cli::render::{render_wav, Sounding, TimedPiece};
use harmonium::pcset::named_word;
use harmonium::ratio::rat;
use harmonium::{Letter, Tonality};

fn main() -> harmonium::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "cadence.wav".into());
    let t = Tonality::new(named_word("major", Letter::new(0))?, 1)?;
    let hw = t.hw_from_degrees(&[1, 4, 5, 1])?;
    let chords = hw.0.iter().map(|c| Sounding::Tempered(c.letters().to_vec()));
    let piece = TimedPiece::uniform(chords, rat(1, 4));
    let samples = render_wav(&piece, out.as_ref(), &Config::default(), true)?;
    println!("wrote {samples} samples to {out}");
    Ok(())
}
