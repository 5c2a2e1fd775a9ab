//! Degree chords of C major at every level, in brace notation.

use harmonium::pcset::{maxlevel, named_word};
use harmonium::{Letter, Tonality};

fn main() -> harmonium::Result<()> {
    let w = named_word("major", Letter::new(0))?;
    for level in 1..=maxlevel(w.len())? {
        let t = Tonality::new(w.clone(), level)?;
        let chords: Vec<String> = t.degrees().iter().map(ToString::to_string).collect();
        println!("level {level}: {}", chords.join(" "));
    }
    Ok(())
}
