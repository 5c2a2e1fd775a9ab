//! Counting pitch-class words, letter sets and tonalities.

use harmonium::pcset::{enumerate_words, letter_sets, ordered_nonrepetitive_words};
use harmonium::tonality::count_all_tonalities;

fn main() {
    for n in 1..=4 {
        println!(
            "length {n}: {} words, {} ordered nonrepetitive, {} letter sets",
            enumerate_words(n, false).len(),
            ordered_nonrepetitive_words(n).len(),
            letter_sets(n).len()
        );
    }
    println!("tonalities over all letter sets and levels: {}", count_all_tonalities());
}
