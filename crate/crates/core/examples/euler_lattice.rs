//! The 5-limit lattice: commas, the just diatonic scale and Euler's
//! gradus suavitatis.

use harmonium::euler::{commas, esm, gradus, just_diatonic_ratios, pitch_of_point, point_from_ratio};
use harmonium::ratio::rat;

fn main() -> harmonium::Result<()> {
    let (fifth, third) = commas();
    println!("fifth comma {} = {} ({:.3} cents)", fifth.point, fifth.ratio, fifth.cents);
    println!("third comma {} = {} ({:.3} cents)", third.point, third.ratio, third.cents);

    for r in just_diatonic_ratios() {
        let p = point_from_ratio(&r)?;
        println!("{r:>6}  {p:<12} {:8.3} cents  gradus {}", pitch_of_point(&p), gradus(&r)?);
    }
    for r in [rat(5, 4), rat(81, 64)] {
        println!("esm({r}) = {}", esm(&r)?);
    }
    Ok(())
}
