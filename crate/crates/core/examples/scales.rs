//! Scales generated by a fixed interval: exact fifths never close, twelve
//! tempered semitones do.

use harmonium::scales::{pythagorean_scale, scale_at_fixed_interval, tempered_scale};
use harmonium::ratio::{rat, Freq};

fn main() -> harmonium::Result<()> {
    let omega = Freq::int(132);
    let pyt = pythagorean_scale(&omega, 12)?;
    let notes: Vec<String> = pyt.notes.iter().map(ToString::to_string).collect();
    println!("pythagorean, closed={}: {}", pyt.closed, notes.join(" "));

    let et = tempered_scale(&omega, 12)?;
    let notes: Vec<String> = et.notes.iter().map(|f| format!("{:.3}", f.to_f64())).collect();
    println!("tempered, closed={} period={:?}: {}", et.closed, et.period, notes.join(" "));

    let thirds = scale_at_fixed_interval(&omega, &Freq::pow2(&rat(1, 3)), 10)?;
    println!("major thirds 2^(1/3): {} notes, period {:?}", thirds.notes.len(), thirds.period);
    Ok(())
}
