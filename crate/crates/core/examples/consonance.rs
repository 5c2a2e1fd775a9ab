//! Consonance index of common intervals on an ideal string, and the beat
//! envelope of two detuned partials.

use harmonium::consonance::{beat_envelope, consonance_index, ideal_spectrum, Sound};
use harmonium::ratio::Freq;

fn main() -> harmonium::Result<()> {
    let n_max = 8;
    let spectrum = ideal_spectrum(1.0, n_max);
    for (name, p, q) in [("unison", 1, 1), ("octave", 2, 1), ("fifth", 3, 2), ("fourth", 4, 3), ("major third", 5, 4), ("tritone", 45, 32)] {
        let sounds = [Freq::int(1), Freq::ratio(p, q)].map(|pulsation| Sound { pulsation, spectrum: spectrum.clone() });
        println!("{name:<12} {p}/{q}  {:.4}", consonance_index(&sounds, n_max, 0.0)?.re);
    }
    for t in [0.0, 0.125, 0.25, 0.5] {
        let (a, _) = beat_envelope(1.0, 0.0, 1.0, 0.0, std::f64::consts::TAU * 2.0, t);
        println!("2 Hz beat at t={t}: amplitude {a:.3}");
    }
    Ok(())
}
