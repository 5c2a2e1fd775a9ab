//! The II-V-I walk around the cycle of fifths, checked as a tonal piece.

use harmonium::modulation::{fifths_cycle, fifths_cycle_piece, fifths_cycle_tonal_piece, validate_piece, PieceKind};
use harmonium::tonality::pivotal_degrees;
use harmonium::pcset::named_word;
use harmonium::{Letter, Tonality};

fn main() -> harmonium::Result<()> {
    let roots: Vec<String> = fifths_cycle(12).map(|l| l.to_string()).collect();
    println!("roots: {}", roots.join(" "));
    let chords = fifths_cycle_piece(1, 12, &[2, 5, 1])?;
    for bar in chords.chunks(3).take(4) {
        let b: Vec<String> = bar.iter().map(ToString::to_string).collect();
        println!("  {}", b.join(" "));
    }
    let piece = fifths_cycle_tonal_piece(1, 12, &[2, 5, 1])?;
    println!("violations: {:?}", validate_piece(&piece, PieceKind::General)?);

    let c = Tonality::new(named_word("major", Letter::new(0))?, 1)?;
    let g = Tonality::new(named_word("major", Letter::new(7))?, 1)?;
    for p in pivotal_degrees(&c, &g) {
        println!("pivot {} = C:{} G:{}", p.chord, p.degree_in_source, p.degree_in_target);
    }
    Ok(())
}
