//! Comma-displaced C major: raising one letter by a Pythagorean comma
//! leaves the other degree chords as pivots.

use harmonium::pcset::named_word;
use harmonium::pythag::{pyt_freq, pyt_transform, pyt_word, Construction, PytLetter, PytOp};
use harmonium::ratio::Freq;
use harmonium::tonality::pivotal_degrees;
use harmonium::{Letter, Tonality};

fn main() -> harmonium::Result<()> {
    let r = Freq::int(132);
    for cycle in [0, 1, 10] {
        let l = PytLetter::new(11, cycle);
        let chain = pyt_freq(l, Construction::Chain, &r);
        let block = pyt_freq(l, Construction::Block, &r);
        println!("{l}: chain {} block {}", chain.to_decimal(12), block.to_decimal(12));
    }

    let w = pyt_word(&named_word("major", Letter::new(0))?, 0);
    let t1 = Tonality::new(w.clone(), 1)?;
    for i in 5..=7 {
        let t2 = Tonality::new(pyt_transform(&w, PytOp::Raise(i))?, 1)?;
        let degrees: Vec<usize> = pivotal_degrees(&t1, &t2).iter().map(|p| p.degree_in_source).collect();
        println!("raise letter {i}: pivots at degrees {degrees:?}");
    }
    Ok(())
}
