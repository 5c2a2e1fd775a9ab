//! One PASS/FAIL line per acceptance criterion. Exits nonzero only when a
//! result differs from what is expected, including a known-unattainable
//! check that starts passing.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use common::*;
use harmonium::cli::emit::{parse_table, tabular_report};
use harmonium::consonance::{beat_envelope, consonance_index, ideal_spectrum, pure_oscillator, Sound, Spectrum};
use harmonium::euler::{commas, esm, gradus, just_diatonic_ratios, point_from_ratio, vogel_chromatic, INTERVAL_NAMES};
use harmonium::modulation::fifths_cycle_piece;
use harmonium::pcset::{equivalent, letter_sets, maxlevel, named_word, Equivalence, CATALOG};
use harmonium::pythag::{pyt_freq, pyt_scale, pyt_transform, pyt_word, Construction, PytLetter, PytOp};
use harmonium::ratio::{parse_rational, rat, Freq};
use harmonium::scales::scale_at_fixed_interval;
use harmonium::tonality::{
    cadences_with, count_all_tonalities, natural_context, pivotal_degrees, standard_context, SearchOptions,
};
use harmonium::{Letter, Rational, Tonality, Word};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

type Check = Vec<String>;

fn expect<T: PartialEq + std::fmt::Debug>(out: &mut Check, what: &str, got: T, want: T) {
    if got != want {
        out.push(format!("{what}: got {got:?}, want {want:?}"));
    }
}

fn major(root: i64, level: usize) -> Tonality {
    Tonality::new(named_word("major", Letter::new(root)).unwrap(), level).unwrap()
}

fn opts(maxlen: usize, minimal: bool) -> SearchOptions {
    SearchOptions { maxlen, minimal, ..SearchOptions::default() }
}

fn tonality_tables() -> Check {
    let mut out = Check::new();
    let entries = under("tonality");
    for (k, v) in &entries {
        let t = Tonality::new(named_word(k[0], Letter::new(0)).unwrap(), k[1].parse().unwrap()).unwrap();
        expect(&mut out, &format!("{}/{}", k[0], k[1]), chord_values(t.degrees()), ints2(v));
    }
    let names: BTreeSet<&str> = entries.iter().map(|(k, _)| k[0]).collect();
    let families = [
        &["major"][..],
        &["minor"],
        &["harmonicminor"],
        &["dorian"],
        &["phrigian"],
        &["lydian"],
        &["mixolydian"],
        &["locrian"],
        &["tziganminor"],
        &["jewish"],
        &["majorpentatonic", "minorpentatonic"],
        &["blues"],
        &["esatonal"],
        &["augmented"],
        &["halfwholediminished", "wholehalfdiminished", "wholetonediminished"],
        &["bebopmajor", "bebopdominant"],
        &["chromatic"],
    ];
    for f in families {
        if !f.iter().any(|n| names.contains(n)) {
            out.push(format!("no table for {f:?}"));
        }
    }
    out
}

fn progressions() -> Check {
    let mut out = Check::new();
    for (k, v) in under("iivi") {
        let t = Tonality::new(named_word(k[0], Letter::new(0)).unwrap(), k[1].parse().unwrap()).unwrap();
        let hw = t.hw_from_degrees(&[2, 5, 1]).unwrap();
        expect(&mut out, &format!("iivi {}/{}", k[0], k[1]), chord_values(&hw.0), ints2(v));
    }
    for level in 1..=4 {
        let got = fifths_cycle_piece(level, 12, &[2, 5, 1]).unwrap();
        expect(&mut out, &format!("fifths/{level}"), chord_values(&got), ints2(fixture(&format!("fifths/{level}"))));
    }
    out
}

fn cadence_degrees(t: &Tonality, ctx_name: &str, maxlen: usize, minimal: bool) -> Vec<Vec<i64>> {
    let ctx = standard_context(ctx_name, t.level()).unwrap();
    let cads = cadences_with(t, &ctx, &opts(maxlen, minimal)).unwrap();
    cads.iter().map(|c| c.degrees.iter().map(|&d| d as i64).collect()).collect()
}

fn cadences() -> Check {
    let mut out = Check::new();
    for (k, v) in under("cadences") {
        let [word, level, ctx, len, kind] = k[..] else { panic!("cadence key {k:?}") };
        let t = Tonality::new(named_word(word, Letter::new(0)).unwrap(), level.parse().unwrap()).unwrap();
        let got = cadence_degrees(&t, ctx, len.parse().unwrap(), kind == "minimal");
        expect(&mut out, &k.join("/"), got, ints2(v));
    }
    let singles: [&[i64]; 5] = [&[7], &[5, 7], &[3, 5, 7], &[1, 3, 4, 5, 7], &[1, 2, 3, 4, 5, 6, 7]];
    for (level, want) in (1..=5).zip(singles) {
        let got = cadence_degrees(&major(0, level), "major", 1, false);
        expect(&mut out, &format!("major level {level}"), got, want.iter().map(|&d| vec![d]).collect());
    }
    expect(&mut out, "level-5 minimal pairs", cadence_degrees(&major(0, 5), "major", 2, true).len(), 0);
    let jewish = |level| Tonality::new(named_word("jewish", Letter::new(0)).unwrap(), level).unwrap();
    expect(&mut out, "jewish level 1", cadence_degrees(&jewish(1), "jewish", 1, false), vec![vec![6]]);
    expect(&mut out, "jewish level 2", cadence_degrees(&jewish(2), "jewish", 1, false), (1..=7).map(|d| vec![d]).collect());
    expect(&mut out, "jewish minimal pairs", cadence_degrees(&jewish(1), "jewish", 2, true).len(), 36);
    out
}

fn pivot_pair(word: &str, level: usize) -> (Vec<i64>, Vec<i64>) {
    let t = |r| Tonality::new(named_word(word, Letter::new(r)).unwrap(), level).unwrap();
    let ps = pivotal_degrees(&t(0), &t(7));
    (
        ps.iter().map(|p| p.degree_in_source as i64).collect(),
        ps.iter().map(|p| p.degree_in_target as i64).collect(),
    )
}

fn pivots() -> Check {
    let mut out = Check::new();
    for (k, v) in under("pivots") {
        let got = pivot_pair(k[0], k[1].parse().unwrap());
        // an empty pair may be printed as a bare empty set
        let want = match ints2(v).as_slice() {
            [] => (vec![], vec![]),
            [a, b] => (a.clone(), b.clone()),
            other => panic!("pivot fixture {other:?}"),
        };
        expect(&mut out, &k.join("/"), got, want);
    }
    let pinned: [(&str, usize, &[i64], &[i64]); 7] = [
        ("major", 1, &[1, 3, 5, 6], &[4, 6, 1, 2]),
        ("major", 2, &[1, 3, 6], &[4, 6, 2]),
        ("major", 3, &[1, 6], &[4, 2]),
        ("major", 4, &[6], &[2]),
        ("major", 5, &[], &[]),
        ("jewish", 1, &[4], &[7]),
        ("jewish", 2, &[], &[]),
    ];
    for (w, level, a, b) in pinned {
        expect(&mut out, &format!("{w} level {level}"), pivot_pair(w, level), (a.to_vec(), b.to_vec()));
    }
    out
}

fn no_go() -> Check {
    let mut out = Check::new();
    for name in ["gregorian", "classical"] {
        for level in 1..=5 {
            let ctx = standard_context(name, level).unwrap();
            for t in ctx.tonalities() {
                let mut runs = vec![opts(3, false)];
                runs.extend((1..=3).map(|n| opts(n, true)));
                for o in runs {
                    let n = cadences_with(t, &ctx, &o).unwrap().len();
                    if n != 0 {
                        out.push(format!("{name} level {level} {:?} {o:?}: {n} cadences", t.word().values()));
                    }
                }
            }
        }
    }
    out
}

fn cardinalities() -> Check {
    let mut out = Check::new();
    let popcount = |k: u32| (0u32..1 << 12).filter(|m| m.count_ones() == k).count();
    expect(&mut out, "7-letter sets", letter_sets(7).len(), 792);
    expect(&mut out, "7-letter sets (bitmask)", popcount(7), 792);
    expect(&mut out, "all letter sets", (1..=12).map(|n| letter_sets(n).len()).sum::<usize>(), 4095);
    expect(&mut out, "gregorian", standard_context("gregorian", 1).unwrap().len(), 84);
    expect(&mut out, "classical", standard_context("classical", 1).unwrap().len(), 24);
    let brute: usize = (5..=12u32).map(|n| popcount(n) * maxlevel(n as usize).unwrap()).sum();
    expect(&mut out, "count_all_tonalities", count_all_tonalities(), 10100);
    expect(&mut out, "tonalities (bitmask)", brute, 10100);
    out
}

fn euler() -> Check {
    let mut out = Check::new();
    let (kf, kt) = commas();
    expect(&mut out, "Kf ratio", kf.ratio.clone(), rat(531441, 524288));
    expect(&mut out, "Kt ratio", kt.ratio.clone(), rat(80, 81));
    let oracle_kf = 1200.0 * (531441f64 / 524288f64).log2();
    let oracle_kt = 1200.0 * (80f64 / 81f64).log2();
    for (what, got, want) in
        [("Kf cents", kf.cents, 23.46), ("Kf oracle", oracle_kf, 23.46), ("Kt cents", kt.cents, -21.506), ("Kt oracle", oracle_kt, -21.506)]
    {
        if (got - want).abs() > 0.01 {
            out.push(format!("{what}: {got} not within 0.01 of {want}"));
        }
    }
    let diatonic = fixture("just/diatonic").as_array().unwrap();
    expect(&mut out, "diatonic size", diatonic.len(), 7);
    for (row, r) in diatonic.iter().zip(just_diatonic_ratios()) {
        let q = parse_rational(row["ratio"].as_str().unwrap()).unwrap();
        expect(&mut out, "diatonic ratio", q.clone(), r);
        let p = point_from_ratio(&q).unwrap().as_ints().map(|p| p.to_vec());
        expect(&mut out, &format!("point of {q}"), p, Some(ints(&row["point"])));
    }
    let vogel = vogel_chromatic();
    for row in fixture("just/vogel_added").as_array().unwrap() {
        let pc = row["pc"].as_u64().unwrap() as usize;
        let p = vogel[pc].point.as_ints().map(|p| p.to_vec());
        expect(&mut out, &format!("vogel pc {pc}"), p, Some(ints(&row["point"])));
    }
    out
}

// trial-division gradus, independent of the library
fn gradus_oracle(n: u64, d: u64) -> i64 {
    let mut m = n * d;
    let mut g = 1;
    let mut p = 2;
    while m > 1 {
        while m % p == 0 {
            g += p as i64 - 1;
            m /= p;
        }
        p += 1;
    }
    g
}

fn gradus_esm() -> Check {
    let mut out = Check::new();
    let vogel = vogel_chromatic();
    let chain = fixture("gradus/chain").as_array().unwrap();
    let grade = |name: &str| {
        let i = INTERVAL_NAMES.iter().position(|n| *n == name).unwrap_or_else(|| panic!("interval {name}"));
        let r = &vogel[i].ratio;
        let g = gradus(r).unwrap();
        assert_eq!(g, gradus_oracle(r.numer().to_u64().unwrap(), r.denom().to_u64().unwrap()), "gradus of {r}");
        g
    };
    let names: Vec<&str> = chain.iter().map(|e| e[1].as_str().unwrap()).collect();
    expect(&mut out, "chain covers every interval", names.iter().copied().collect::<BTreeSet<_>>(), INTERVAL_NAMES.into());
    for w in chain.windows(2) {
        let (a, b) = (grade(w[0][1].as_str().unwrap()), grade(w[1][1].as_str().unwrap()));
        let rel = match a.cmp(&b) {
            std::cmp::Ordering::Less => "<",
            std::cmp::Ordering::Equal => "=",
            std::cmp::Ordering::Greater => ">",
        };
        expect(&mut out, &format!("{} vs {}", w[0][1], w[1][1]), rel, w[1][0].as_str().unwrap());
    }
    for row in fixture("esm").as_array().unwrap() {
        let r = parse_rational(row["ratio"].as_str().unwrap()).unwrap();
        let want = parse_rational(row["esm"].as_str().unwrap()).unwrap();
        let (n, m) = (r.numer().clone(), r.denom().clone());
        let oracle = Rational::new(&n + &m, &n * &m * num_integer::Integer::gcd(&n, &m));
        expect(&mut out, &format!("esm {r}"), esm(&r).unwrap(), want.clone());
        expect(&mut out, &format!("esm oracle {r}"), oracle, want);
    }
    out
}

fn block_listing() -> Check {
    let mut out = Check::new();
    let printed: Vec<&str> = fixture("pyt/10").as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let scale = pyt_scale(2, Construction::Block, &Freq::int(132));
    expect(&mut out, "block size", scale.len(), 36);
    for ((l, f), s) in scale.iter().zip(&printed) {
        let x = f.as_rational().expect("block frequencies are rational");
        let p = decimal(s);
        // |x − p| within half a unit in the 12th significant digit
        let unit = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(11 - exponent10(s)));
        if (x - &p).abs() * Rational::from_integer(2.into()) > unit {
            out.push(format!("{l}: {} vs {s:.20}", harmonium::ratio::rational_to_decimal(x, 15)));
        }
    }
    out
}

fn chain_shift() -> Check {
    let mut out = Check::new();
    let r = Freq::int(132);
    for pc in 0..12 {
        for cycle in 0..10 {
            let a = pyt_freq(PytLetter::new(pc, cycle), Construction::Chain, &r);
            let b = pyt_freq(PytLetter::new(pc, cycle + 1), Construction::Chain, &r);
            let cents = 1200.0 * (b.to_f64() / a.to_f64()).log2();
            if (cents - 23.46).abs() > 0.01 {
                out.push(format!("{{{pc},{cycle}}} → {}: {cents} cents", cycle + 1));
            }
        }
    }
    out
}

fn cross_cycle_pivots() -> Check {
    let mut out = Check::new();
    let words: Vec<(&str, Vec<Word>)> =
        CATALOG.iter().map(|&n| (n, (0..12).map(|r| named_word(n, Letter::new(r)).unwrap()).collect())).collect();
    for (n1, ws1) in &words {
        let w1 = &ws1[0];
        for (n2, ws2) in &words {
            for w2 in ws2.iter().filter(|w| w.len() == w1.len()) {
                for level in 1..=maxlevel(w1.len()).unwrap() {
                    for c1 in 0..=3 {
                        for c2 in (0..=3).filter(|&c| c != c1) {
                            let t1 = Tonality::new(pyt_word(w1, c1), level).unwrap();
                            let t2 = Tonality::new(pyt_word(w2, c2), level).unwrap();
                            if !pivotal_degrees(&t1, &t2).is_empty() {
                                out.push(format!("{n1}@{c1} / {n2}{:?}@{c2} level {level}", w2.values()));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn comma_example(i: usize) -> Check {
    let mut out = Check::new();
    let key = |f: &str| fixture(&format!("comma/{i}/{f}"));
    let pw1 = pyt_word(&named_word("major", Letter::new(0)).unwrap(), 0);
    let pw2 = pyt_transform(&pw1, PytOp::Raise(i)).unwrap();
    let printed: Vec<Vec<i64>> = ints2(key("word"));
    let word: Vec<Vec<i64>> = pw2.0.iter().map(|l| vec![l.pc.value() as i64, l.cycle as i64]).collect();
    expect(&mut out, "raised word", word, printed);
    let (t1, t2) = (Tonality::new(pw1, 1).unwrap(), Tonality::new(pw2, 1).unwrap());
    let ps = pivotal_degrees(&t1, &t2);
    let got = vec![
        ps.iter().map(|p| p.degree_in_source as i64).collect::<Vec<_>>(),
        ps.iter().map(|p| p.degree_in_target as i64).collect(),
    ];
    expect(&mut out, "pivots", got, ints2(key("pivots")));
    let ctx = natural_context(t1.word(), 1).unwrap();
    let maxlen = key("maxlen").as_u64().unwrap() as usize;
    let cads = cadences_with(&t2, &ctx, &opts(maxlen, false)).unwrap();
    let got: Vec<Vec<i64>> = cads.iter().map(|c| c.degrees.iter().map(|&d| d as i64).collect()).collect();
    if got != ints2(key("cadences")) {
        out.push(format!("cadences: {} found, {} printed", got.len(), ints2(key("cadences")).len()));
    }
    out
}

// brute-force lattice sum over [−n, n]², exact on p/q pulsations
fn lattice_oracle(w1: (i64, i64), w2: (i64, i64), n: i64, coeff: impl Fn(i64) -> f64) -> f64 {
    let mut s = 0.0;
    for n1 in -n..=n {
        for n2 in -n..=n {
            if n1 * w1.0 * w2.1 + n2 * w2.0 * w1.1 == 0 {
                s += coeff(n1) + coeff(n2);
            }
        }
    }
    s
}

fn sounds(w: &[(i64, i64)], spectrum: &Spectrum) -> Vec<Sound> {
    w.iter().map(|&(p, q)| Sound { pulsation: Freq::ratio(p, q), spectrum: spectrum.clone() }).collect()
}

fn properties() -> Check {
    let mut out = Check::new();
    let mut rng = StdRng::seed_from_u64(0x5eed);

    // interval vectors
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=9);
        let w1 = Word::from_values(&(0..n).map(|_| rng.gen_range(0..12)).collect::<Vec<_>>());
        let w2 = if rng.gen_bool(0.5) {
            let mut w = w1.translate(rng.gen_range(0..12));
            if rng.gen_bool(0.3) {
                let k = rng.gen_range(0..n);
                w.0[k] = Letter::new(rng.gen_range(0..12));
            }
            w
        } else {
            Word::from_values(&(0..n).map(|_| rng.gen_range(0..12)).collect::<Vec<_>>())
        };
        let brute = (0..12).any(|z| w1.0.iter().zip(&w2.0).all(|(a, b)| (a.value() as i64 + z) % 12 == b.value() as i64));
        let iv = w1.interval_vector().unwrap() == w2.interval_vector().unwrap();
        if iv != brute || equivalent(&w1, &w2, Equivalence::Translational) != brute {
            out.push(format!("interval vector {:?} {:?}", w1.values(), w2.values()));
        }
    }

    // closure grid
    for p in 1..=12i64 {
        for q in 1..=12i64 {
            let s = scale_at_fixed_interval(&Freq::int(132), &Freq::pow2(&rat(p, q)), 100).unwrap();
            let want = (q / num_integer::gcd(p, q)) as usize;
            if !s.closed || s.period != Some(want) {
                out.push(format!("2^({p}/{q}) period {:?}, want {want}", s.period));
            }
        }
    }
    for (a, b) in [(3, 2), (3, 1), (5, 4), (9, 8)] {
        let s = scale_at_fixed_interval(&Freq::int(1), &Freq::ratio(a, b), 10_000).unwrap();
        if s.closed {
            out.push(format!("{a}/{b} closed"));
        }
    }

    // consonance against the lattice oracle
    for _ in 0..100 {
        let w: Vec<(i64, i64)> = (0..2).map(|_| (rng.gen_range(1..=12), rng.gen_range(1..=12))).collect();
        let n = rng.gen_range(1..=8u32);
        let a = rng.gen_range(0.1..2.0);
        let got = consonance_index(&sounds(&w, &ideal_spectrum(a, n)), n, 0.0).unwrap();
        let want = lattice_oracle(w[0], w[1], n as i64, |k| if k == 0 { 0.0 } else { a / k.abs() as f64 });
        if (got.re - want).abs() > 1e-9 * want.abs().max(1.0) || got.im != 0.0 {
            out.push(format!("ideal {w:?} n={n}: {got} vs {want}"));
        }
        let k = rng.gen_range(1..=8i64);
        let got = consonance_index(&sounds(&w, &pure_oscillator(a, k).unwrap()), n, 0.0).unwrap();
        let want = lattice_oracle(w[0], w[1], n as i64, |j| if j == k && j.unsigned_abs() <= n as u64 { a } else { 0.0 });
        if (got.re - want).abs() > 1e-9 * want.abs().max(1.0) {
            out.push(format!("pure k={k} {w:?} n={n}: {got} vs {want}"));
        }
    }

    // beat envelope against the complex sum
    for _ in 0..10_000 {
        let (a1, a2) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
        let (p1, p2) = (rng.gen_range(-7.0..7.0), rng.gen_range(-7.0..7.0));
        let (dw, t) = (rng.gen_range(-50.0..50.0), rng.gen_range(0.0..2.0));
        let z = Complex64::from_polar(a1, p1) + Complex64::from_polar(a2, p2 + dw * t);
        let (amp, phase) = beat_envelope(a1, p1, a2, p2, dw, t);
        if (amp - z.norm()).abs() > 1e-12 || (Complex64::from_polar(amp, phase) - z).norm() > 1e-12 * (1.0 + a1 + a2) {
            out.push(format!("envelope ({a1},{p1},{a2},{p2},{dw},{t}): {amp}∠{phase} vs {z}"));
        }
    }

    // chord saturation and maxlevel over the catalog
    for name in CATALOG {
        for root in 0..12 {
            let w = named_word(name, Letter::new(root)).unwrap();
            let n = w.len();
            // first repeat of the every-other-letter walk
            let distinct = (1..=n).find(|&k| (2 * k) % n == 0).unwrap();
            let max = maxlevel(n).unwrap();
            expect(&mut out, &format!("{name} maxlevel"), max + 2, distinct);
            for i in 1..=n {
                let c = w.chord(i, max).unwrap();
                expect(&mut out, &format!("{name} degree {i} distinct"), c.letter_set().len(), max + 2);
                if n % 2 == 1 {
                    expect(&mut out, &format!("{name} degree {i} saturated"), c.letter_set(), w.letter_set());
                }
                let next = w.mode(i).unwrap().0[(2 * (max + 2)) % n];
                if !c.letter_set().contains(&next) {
                    out.push(format!("{name} degree {i}: extending past maxlevel adds {next}"));
                }
                if w.chord(i, max + 1).is_ok() {
                    out.push(format!("{name}: level {} accepted", max + 1));
                }
            }
        }
    }
    out
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut o = Vec::new();
    let mut e = Vec::new();
    let argv = std::iter::once("harmonium").chain(args.iter().copied());
    let code = harmonium::cli::run(argv, &mut o, &mut e);
    (code, String::from_utf8(o).unwrap())
}

fn cli_json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let (code, text) = cli(&a);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&text).unwrap()
}

fn cli_and_wav() -> Check {
    let mut out = Check::new();
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_string_lossy().into_owned();

    // fixture piece, twice
    let (a, b) = (path("a.wav"), path("b.wav"));
    for p in [&a, &b] {
        let (code, _) = cli(&["render", "--fifths-level", "1", "--out", p]);
        expect(&mut out, "render exit", code, 0);
    }
    let bytes = std::fs::read(&a).unwrap();
    if bytes != std::fs::read(&b).unwrap() {
        out.push("renders differ".into());
    }
    let reader = hound::WavReader::open(&a).unwrap();
    let spec = reader.spec();
    expect(&mut out, "channels", spec.channels, 1);
    expect(&mut out, "sample rate", spec.sample_rate, 44100);
    expect(&mut out, "bits", spec.bits_per_sample, 16);
    expect(&mut out, "format", spec.sample_format, hound::SampleFormat::Int);
    expect(&mut out, "fifths walk samples", reader.len(), 39 * 44100);

    // mixed durations: Σ round(dur · 4 s · 44100)
    let c = path("c.wav");
    let (code, _) = cli(&["render", "--chords", "{0,4,7}:minim", "{7,11,2}:1/64", "{{0,0},{4,1}}", "--out", &c]);
    expect(&mut out, "mixed exit", code, 0);
    expect(&mut out, "mixed samples", hound::WavReader::open(&c).unwrap().len(), 88200 + 2756 + 44100);

    // a single crotchet of pc 0 is one second of 132 Hz
    let d = path("d.wav");
    cli(&["render", "--chords", "{0}", "--out", &d]);
    let s: Vec<i16> = hound::WavReader::open(&d).unwrap().samples::<i16>().map(Result::unwrap).collect();
    expect(&mut out, "single sine samples", s.len(), 44100);
    let ups: Vec<usize> = (1..s.len()).filter(|&i| s[i - 1] < 0 && s[i] >= 0).collect();
    let period = (ups[ups.len() - 1] - ups[0]) as f64 / (ups.len() - 1) as f64;
    if (44100.0 / period - 132.0).abs() > 0.1 {
        out.push(format!("single sine at {} Hz", 44100.0 / period));
    }

    // table and JSON views agree, and carry the fixture data
    let mut runs: Vec<Vec<String>> = Vec::new();
    for (k, _) in under("tonality") {
        runs.push(["tonality", "--word", k[0], "--level", k[1], "--degrees", "2,5,1"].map(String::from).to_vec());
    }
    for (k, _) in under("pivots") {
        runs.push(["pivots", "--word", k[0], "--level", k[1]].map(String::from).to_vec());
    }
    for (k, _) in under("cadences") {
        let mut r = ["cadences", "--word", k[0], "--level", k[1], "--context", k[2], "--maxlen", k[3]].map(String::from).to_vec();
        if k[4] == "minimal" {
            r.push("--minimal".into());
        }
        runs.push(r);
    }
    for i in [5, 6, 7] {
        let maxlen = fixture(&format!("comma/{i}/maxlen")).to_string();
        runs.push(["pythag", "comma-modulate", "--raise", &i.to_string(), "--maxlen", &maxlen].map(String::from).to_vec());
    }
    let fixed: &[&[&str]] = &[
        &["piece", "--level", "2"],
        &["pythag", "scale", "--construction", "block"],
        &["euler", "commas"],
        &["euler", "vogel"],
        &["euler", "diatonic"],
        &["euler", "esm", "--ratio", "40/27"],
        &["euler", "point", "--ratio", "45/32", "--tempered", "12"],
        &["euler", "gradus", "--ratio", "16/15"],
        &["scale", "gen", "--ratio", "2^(7/12)"],
        &["scale", "pyt", "--count", "13"],
        &["scale", "tempered", "--n", "19"],
        &["consonance", "--notes", "1", "3/2", "5/4"],
        &["consonance", "--notes", "2", "3", "--instrument", "pure:3", "--growth", "0.5"],
        &["modulate", "--level", "2"],
        &["modulate", "--mazzola", "--to-root", "5"],
        &["enumerate", "--length", "3", "--nonrepetitive"],
        &["enumerate", "--tonalities"],
    ];
    runs.extend(fixed.iter().map(|r| r.iter().map(|s| s.to_string()).collect()));
    for r in &runs {
        let args: Vec<&str> = r.iter().map(String::as_str).collect();
        let (code, table) = cli(&args);
        let json = cli_json(&args);
        if code != 0 {
            out.push(format!("{args:?} exit {code}"));
        } else if parse_table(&table) != tabular_report(&json) || parse_table(&table).is_none() {
            out.push(format!("{args:?}: table and JSON disagree"));
        }
        if cli(&args).1 != table {
            out.push(format!("{args:?}: output not deterministic"));
        }
    }
    for (k, v) in under("tonality") {
        let j = cli_json(&["tonality", "--word", k[0], "--level", k[1]]);
        expect(&mut out, &format!("cli tonality {}/{}", k[0], k[1]), ints2(&j["degrees"]), ints2(v));
    }
    for (k, v) in under("cadences") {
        let mut args = vec!["cadences", "--word", k[0], "--level", k[1], "--context", k[2], "--maxlen", k[3]];
        if k[4] == "minimal" {
            args.push("--minimal");
        }
        expect(&mut out, &format!("cli {}", k.join("/")), ints2(&cli_json(&args)["degrees"]), ints2(v));
    }
    out
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    run: fn() -> Check,
    /// Reason the check cannot pass while staying faithful; `None` if it must pass.
    known: Option<&'static str>,
}

const RAISE_5: &str = "an empty cadence list for the fifth-letter raise cannot coexist with the \
sixth- and seventh-letter expectations: degree 7 ({11,0},{2,0},{5,0}) is untouched by the raise and lies \
in exactly one member of the natural context, so {7} declares the tonality under the unique-holder rule \
(45 cadences up to length 3); the literal rule admits other words such as {1} and breaks the \
sixth-letter list instead";

fn main() {
    std::env::remove_var(harmonium::cli::config::CONFIG_ENV);
    let criteria = [
        Criterion { id: "1", title: "tonality tables", run: tonality_tables, known: None },
        Criterion { id: "2", title: "II-V-I tables and fifths walks", run: progressions, known: None },
        Criterion { id: "3", title: "cadence sets", run: cadences, known: None },
        Criterion { id: "4", title: "pivotal degrees", run: pivots, known: None },
        Criterion { id: "5", title: "no cadences in gregorian and classical contexts", run: no_go, known: None },
        Criterion { id: "6", title: "cardinalities", run: cardinalities, known: None },
        Criterion { id: "7", title: "commas and just lattice points", run: euler, known: None },
        Criterion { id: "8", title: "gradus chain and esm", run: gradus_esm, known: None },
        Criterion { id: "9a", title: "block frequencies, cycles 0-2, 12 digits", run: block_listing, known: None },
        Criterion { id: "9b", title: "chain cycle shift 23.46 cents", run: chain_shift, known: None },
        Criterion { id: "9c", title: "no cross-cycle pivots, cycles 0-3", run: cross_cycle_pivots, known: None },
        Criterion { id: "9d", title: "comma displacement, raise at 5", run: || comma_example(5), known: Some(RAISE_5) },
        Criterion { id: "9e", title: "comma displacement, raise at 6", run: || comma_example(6), known: None },
        Criterion { id: "9f", title: "comma displacement, raise at 7", run: || comma_example(7), known: None },
        Criterion { id: "10", title: "property suites", run: properties, known: None },
        Criterion { id: "11", title: "CLI views and WAV output", run: cli_and_wav, known: None },
    ];
    let mut unexpected = 0;
    let mut known_fail = Vec::new();
    for c in &criteria {
        let start = std::time::Instant::now();
        let failures = match catch_unwind(AssertUnwindSafe(c.run)) {
            Ok(f) => f,
            Err(e) => vec![format!(
                "panicked: {}",
                e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
            )],
        };
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        let note = match (c.known, failures.is_empty()) {
            (Some(_), false) => " (known unattainable)",
            (Some(_), true) => " (expected to fail)",
            _ => "",
        };
        println!("criterion {:<3} {status}  {}{note}  [{:.2?}]", c.id, c.title, start.elapsed());
        for f in failures.iter().take(10) {
            println!("    {f}");
        }
        if failures.len() > 10 {
            println!("    … {} more", failures.len() - 10);
        }
        match (c.known, failures.is_empty()) {
            (None, false) | (Some(_), true) => unexpected += 1,
            (Some(why), false) => known_fail.push((c.id, why)),
            (None, true) => {}
        }
    }
    for (id, why) in known_fail {
        println!("note {id}: {why}");
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected result(s)");
        std::process::exit(1);
    }
}
