//! Minimal cadences of C major in its natural context, then in the
//! classical context where none exist.

use harmonium::pcset::named_word;
use harmonium::tonality::{cadences, natural_context, standard_context};
use harmonium::{Letter, Tonality};

fn main() -> harmonium::Result<()> {
    let w = named_word("major", Letter::new(0))?;
    for level in 1..=3 {
        let t = Tonality::new(w.clone(), level)?;
        let ctx = natural_context(&w, level)?;
        let singles: Vec<usize> = cadences(&t, &ctx, 1, false)?.iter().map(|c| c.degrees[0]).collect();
        println!("level {level}: single-chord cadences at degrees {singles:?}");
        let found = cadences(&t, &ctx, 3, true)?;
        let first: Vec<String> = found.iter().take(6).map(|c| format!("{:?}", c.degrees)).collect();
        println!("level {level}: {} minimal cadences of length 3, e.g. {}", found.len(), first.join(" "));
    }
    let classical = standard_context("classical", 1)?;
    let t = Tonality::new(w, 1)?;
    println!("classical context: {} cadences", cadences(&t, &classical, 3, false)?.len());
    Ok(())
}
