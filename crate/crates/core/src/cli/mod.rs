//! Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage.

pub mod config;
pub mod emit;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::consonance::{commensurable, consonance_growth, consonance_index_with, Instrument, Sound};
use crate::error::{Error, Result};
use crate::euler::{
    classify_point, commas, coordination_value, esm, gradus, gradus_bichord, just_diatonic, pitch_of_point,
    point_from_ratio, vogel_chromatic,
};
use crate::modulation::{
    fifths_cycle, fifths_cycle_piece, fifths_cycle_tonal_piece, mazzola_modulations, modulations_in, validate_piece,
    Piece, PieceKind,
};
use crate::pcset::{enumerate_words, letter_sets, maxlevel, named_word, ordered_nonrepetitive_words, PitchClass};
use crate::pythag::{pyt_scale, pyt_transform, pyt_word, Construction, PytLetter, PytOp};
use crate::ratio::{parse_rational, Freq};
use crate::scales::{pythagorean_scale, scale_at_fixed_interval, tempered_scale, GeneratedScale};
use crate::tonality::{
    cadences_with, count_all_tonalities, natural_context, pivotal_degrees, standard_context, Cadence, CadenceRule,
    Context, SearchOptions, Tonality,
};
use crate::{Letter, Word};
use config::Config;
use emit::{parse_braces, Node, Report};
use render::{parse_duration, render_wav, Event, Sounding, TimedPiece};

#[derive(Parser, Debug)]
#[command(name = "harmonium", version, about = "Tonalities, cadences, tuning lattices and consonance")]
struct Cli {
    /// Emit JSON instead of aligned brace tables.
    #[arg(long, global = true)]
    json: bool,
    /// Flat key=value file (defaults to $HARMONIUM_CONFIG).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Scales generated by a fixed interval.
    #[command(subcommand)]
    Scale(ScaleCmd),
    /// Degree chords of a tonality.
    Tonality(TonalityArgs),
    /// Chords shared by two tonalities.
    Pivots(PairArgs),
    /// Harmonic words declaring a tonality within a context.
    Cadences(CadenceArgs),
    /// Pivot (or Mazzola) modulations between two tonalities.
    Modulate(ModulateArgs),
    /// The II-V-I walk around the fifths cycle, or validation of a piece file.
    Piece(PieceArgs),
    /// The Pythagorean alphabet and comma-displacement modulations.
    #[command(subcommand)]
    Pythag(PythagCmd),
    /// 5-limit Euler lattice.
    #[command(subcommand)]
    Euler(EulerCmd),
    /// Physical consonance index of notes on an instrument.
    Consonance(ConsonanceArgs),
    /// Words, letter sets and tonality counts.
    Enumerate(EnumerateArgs),
    /// Render chords to a mono 16-bit WAV. Every event is peak-normalized to
    /// 0.8 of full scale on its own, so long pieces never clip early chords.
    Render(RenderArgs),
}

#[derive(Subcommand, Debug)]
enum ScaleCmd {
    /// Iterate a ratio with octave rescaling until the seed recurs.
    Gen {
        #[arg(long)]
        omega: Option<String>,
        #[arg(long)]
        ratio: String,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
    },
    /// `count` notes of the cycle of pure fifths.
    Pyt {
        #[arg(long)]
        omega: Option<String>,
        #[arg(long, default_value_t = 12)]
        count: usize,
    },
    /// Fifths of the n-tone equal temperament.
    Tempered {
        #[arg(long)]
        omega: Option<String>,
        #[arg(long, default_value_t = 12)]
        n: u64,
    },
}

#[derive(Args, Debug, Clone)]
struct WordArgs {
    /// Catalog word name.
    #[arg(long, default_value = "major")]
    word: String,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    root: i64,
    /// Explicit letters, e.g. 0,2,4,5,7,9,11; overrides --word/--root.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    letters: Option<Vec<i64>>,
}

impl WordArgs {
    fn word(&self) -> Result<Word> {
        match &self.letters {
            Some(v) => Ok(Word::from_values(v)),
            None => named_word(&self.word, Letter::new(self.root)),
        }
    }
}

#[derive(Args, Debug)]
struct TonalityArgs {
    #[command(flatten)]
    w: WordArgs,
    #[arg(long, default_value_t = 1)]
    level: usize,
    /// Also spell this degree progression, e.g. 2,5,1.
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[command(flatten)]
    w: WordArgs,
    /// Target word (defaults to the source word name).
    #[arg(long)]
    to_word: Option<String>,
    #[arg(long, default_value_t = 7, allow_negative_numbers = true)]
    to_root: i64,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    to_letters: Option<Vec<i64>>,
    #[arg(long, default_value_t = 1)]
    level: usize,
}

impl PairArgs {
    fn tonalities(&self) -> Result<(Tonality, Tonality)> {
        let to = WordArgs {
            word: self.to_word.clone().unwrap_or_else(|| self.w.word.clone()),
            root: self.to_root,
            letters: self.to_letters.clone(),
        };
        Ok((Tonality::new(self.w.word()?, self.level)?, Tonality::new(to.word()?, self.level)?))
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RuleArg {
    Unique,
    Literal,
}

impl From<RuleArg> for CadenceRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Unique => CadenceRule::Unique,
            RuleArg::Literal => CadenceRule::Literal,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    maxlen: usize,
    /// Only cadences of length exactly maxlen with no cadential prefix.
    #[arg(long)]
    minimal: bool,
    #[arg(long, value_enum, default_value_t = RuleArg::Unique)]
    rule: RuleArg,
}

impl SearchArgs {
    fn options(&self, cfg: &Config) -> SearchOptions {
        SearchOptions { maxlen: self.maxlen, minimal: self.minimal, rule: self.rule.into(), budget: cfg.cadence_budget }
    }
}

#[derive(Args, Debug)]
struct CadenceArgs {
    #[command(flatten)]
    w: WordArgs,
    #[arg(long, default_value_t = 1)]
    level: usize,
    /// major, minor, classical, gregorian, mazzola, jewish or natural.
    #[arg(long, default_value = "natural")]
    context: String,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug)]
struct ModulateArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[command(flatten)]
    search: SearchArgs,
    /// Use the Mazzola modulator instead of pivot chords.
    #[arg(long)]
    mazzola: bool,
}

#[derive(Args, Debug)]
struct PieceArgs {
    /// Validate a JSON piece instead of generating the fifths walk.
    #[arg(long, value_name = "FILE")]
    file: Option<PathBuf>,
    /// Judge the file as a Mazzola piece.
    #[arg(long, requires = "file")]
    mazzola: bool,
    #[arg(long, default_value_t = 1)]
    level: usize,
    #[arg(long, default_value_t = 12)]
    steps: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,5,1")]
    degrees: Vec<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConstructionArg {
    Chain,
    Block,
}

#[derive(Subcommand, Debug)]
enum PythagCmd {
    /// Frequencies of every letter up to a cycle, as exact decimals.
    Scale {
        #[arg(long, default_value_t = 2)]
        cycles: u32,
        #[arg(long, value_enum, default_value_t = ConstructionArg::Chain)]
        construction: ConstructionArg,
        #[arg(long, default_value_t = 30)]
        digits: usize,
    },
    /// Raise or lower letters of a cycle-0 word and search comma modulations.
    CommaModulate {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long, default_value_t = 1)]
        level: usize,
        /// 1-based letter positions to raise by one cycle.
        #[arg(long, value_delimiter = ',')]
        raise: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        lower: Vec<usize>,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Subcommand, Debug)]
enum EulerCmd {
    /// Euler point, pitch and tuning classes of a ratio.
    Point {
        #[arg(long)]
        ratio: String,
        /// Test against the N-tempered subset as well.
        #[arg(long)]
        tempered: Option<u64>,
    },
    /// Gradus suavitatis of a ratio, or of the bichord (ratio, to).
    Gradus {
        #[arg(long)]
        ratio: String,
        #[arg(long)]
        to: Option<String>,
    },
    /// Empirical simplicity measure of a ratio.
    Esm {
        #[arg(long)]
        ratio: String,
    },
    /// Fifth and third commas.
    Commas,
    /// Vogel's chromatic just scale.
    Vogel,
    /// The just diatonic scale on the reference note.
    Diatonic,
}

#[derive(Args, Debug)]
struct ConsonanceArgs {
    /// Pulsations: p/q, integers, decimals or c*2^(a/b).
    #[arg(long, num_args = 2.., required = true)]
    notes: Vec<String>,
    /// ideal or pure:K.
    #[arg(long, default_value = "ideal")]
    instrument: String,
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    #[arg(long, default_value_t = 8)]
    nmax: u32,
    /// Tolerance; 0 is the exact lattice.
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    /// Also report growth from nmax/2 to nmax with this divergence threshold.
    #[arg(long)]
    growth: Option<f64>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// Word length; all lengths 1..=12 when omitted with --nonrepetitive.
    #[arg(long)]
    length: Option<usize>,
    #[arg(long)]
    nonrepetitive: bool,
    /// Every ordering of each letter set, not just the ascending one.
    #[arg(long, requires = "nonrepetitive")]
    ordered: bool,
    #[arg(long)]
    count_only: bool,
    /// Count every (letter set, level) tonality.
    #[arg(long, conflicts_with_all = ["length", "nonrepetitive"])]
    tonalities: bool,
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// Chords in brace notation, e.g. {0,4,7} or {{0,0},{4,1},{7,0}};
    /// append :minim (or :3/8) to override the duration of one event.
    #[arg(long, num_args = 1.., conflicts_with = "fifths_level")]
    chords: Vec<String>,
    /// Render the II-V-I fifths walk at this level instead.
    #[arg(long)]
    fifths_level: Option<usize>,
    #[arg(long, default_value_t = 12)]
    steps: usize,
    #[arg(long, default_value = "crotchet")]
    duration: String,
    #[arg(long)]
    out: PathBuf,
    /// 5 ms linear fade in and out of every event.
    #[arg(long)]
    ramp: bool,
}

fn freq_or(s: &Option<String>, cfg: &Config) -> Result<Freq> {
    match s {
        Some(s) => s.parse(),
        None => Ok(cfg.reference_note.clone()),
    }
}

fn scale_report(r: &mut Report, s: &GeneratedScale) {
    r.put("closed", &s.closed).put("period", &s.period).put("count", &s.notes.len()).rows("notes", &s.notes);
}

fn ctx_for(name: &str, t: &Tonality) -> Result<Context> {
    if name == "natural" {
        natural_context(t.word(), t.level())
    } else {
        standard_context(name, t.level())
    }
}

fn cadence_report<L: PitchClass + serde::Serialize>(r: &mut Report, cads: &[Cadence<L>]) {
    let degrees: Vec<&Vec<usize>> = cads.iter().map(|c| &c.degrees).collect();
    let chords: Vec<_> = cads.iter().map(|c| &c.chords).collect();
    r.put("count", &cads.len()).put("degrees", &degrees).rows("chords", &chords);
}

fn pivot_degrees<L: PitchClass>(t1: &Tonality<L>, t2: &Tonality<L>) -> (Vec<usize>, Vec<usize>, Vec<Word<L>>) {
    let ps = pivotal_degrees(t1, t2);
    (
        ps.iter().map(|p| p.degree_in_source).collect(),
        ps.iter().map(|p| p.degree_in_target).collect(),
        ps.into_iter().map(|p| p.chord).collect(),
    )
}

fn parse_sounding(s: &str) -> Result<Sounding> {
    let bad = || Error::Parse(s.to_string());
    let Some(Node::List(items)) = parse_braces(s) else { return Err(bad()) };
    let int = |n: &Node| match n {
        Node::Atom(a) => a.parse::<i64>().map_err(|_| bad()),
        _ => Err(bad()),
    };
    if items.iter().all(|n| matches!(n, Node::Atom(_))) {
        return Ok(Sounding::Tempered(items.iter().map(|n| int(n).map(Letter::new)).collect::<Result<_>>()?));
    }
    items
        .iter()
        .map(|n| match n {
            Node::List(p) if p.len() == 2 => {
                let cycle = u32::try_from(int(&p[1])?).map_err(|_| bad())?;
                Ok(PytLetter::new(int(&p[0])?, cycle))
            }
            _ => Err(bad()),
        })
        .collect::<Result<_>>()
        .map(Sounding::Pyt)
}

fn execute(cli: &Cli, cfg: &Config) -> Result<Report> {
    let mut r = Report::new();
    match &cli.cmd {
        Cmd::Scale(sc) => match sc {
            ScaleCmd::Gen { omega, ratio, max_steps } => {
                let (o, q) = (freq_or(omega, cfg)?, ratio.parse::<Freq>()?);
                r.put("omega", &o).put("ratio", &q);
                scale_report(&mut r, &scale_at_fixed_interval(&o, &q, *max_steps)?);
            }
            ScaleCmd::Pyt { omega, count } => {
                let o = freq_or(omega, cfg)?;
                r.put("omega", &o);
                scale_report(&mut r, &pythagorean_scale(&o, *count)?);
            }
            ScaleCmd::Tempered { omega, n } => {
                let o = freq_or(omega, cfg)?;
                r.put("omega", &o).put("n", n);
                scale_report(&mut r, &tempered_scale(&o, *n)?);
            }
        },
        Cmd::Tonality(a) => {
            let t = Tonality::new(a.w.word()?, a.level)?;
            r.put("word", t.word()).put("level", &t.level()).put("maxlevel", &maxlevel(t.len())?);
            r.rows("degrees", t.degrees());
            if let Some(d) = &a.degrees {
                r.put("progression", d).rows("chords", &t.hw_from_degrees(d)?);
            }
        }
        Cmd::Pivots(a) => {
            let (t1, t2) = a.tonalities()?;
            let (src, tgt, chords) = pivot_degrees(&t1, &t2);
            r.put("degrees", &json!([src, tgt])).rows("chords", &chords);
        }
        Cmd::Cadences(a) => {
            let t = Tonality::new(a.w.word()?, a.level)?;
            let ctx = ctx_for(&a.context, &t)?;
            r.put("context", &a.context).put("context_size", &ctx.len());
            cadence_report(&mut r, &cadences_with(&t, &ctx, &a.search.options(cfg))?);
        }
        Cmd::Modulate(a) => {
            let (t1, t2) = a.pair.tonalities()?;
            if a.mazzola {
                let ms = mazzola_modulations(&t1, &t2, a.search.maxlen)?;
                r.put("modulator", &ms.first().map(|m| m.0));
                let cads: Vec<Cadence> = ms.into_iter().map(|m| m.1).collect();
                cadence_report(&mut r, &cads);
            } else {
                let ctx = natural_context(t2.word(), t2.level())?;
                let ms = modulations_in(&t1, &t2, &ctx, &a.search.options(cfg))?;
                let rows: Vec<_> = ms
                    .iter()
                    .map(|m| {
                        json!({
                            "pivot": [m.pivot.degree_in_source, m.pivot.degree_in_target],
                            "cadence": m.cadence.degrees,
                        })
                    })
                    .collect();
                r.put("count", &ms.len()).rows("modulations", &rows);
            }
        }
        Cmd::Piece(a) => match &a.file {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                let p: Piece = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                let kind = if a.mazzola { PieceKind::Mazzola } else { PieceKind::General };
                let v = validate_piece(&p, kind)?;
                r.put("segments", &p.tonalities.len()).put("valid", &v.is_empty()).rows("violations", &v);
            }
            None => {
                let roots: Vec<Letter> = fifths_cycle(a.steps).collect();
                let chords = fifths_cycle_piece(a.level, a.steps, &a.degrees)?;
                let v = validate_piece(&fifths_cycle_tonal_piece(a.level, a.steps, &a.degrees)?, PieceKind::General)?;
                r.put("roots", &roots).put("progression", &a.degrees).put("valid", &v.is_empty());
                r.rows("chords", &chords);
            }
        },
        Cmd::Pythag(pc) => match pc {
            PythagCmd::Scale { cycles, construction, digits } => {
                let c = match construction {
                    ConstructionArg::Chain => Construction::Chain,
                    ConstructionArg::Block => Construction::Block,
                };
                let notes: Vec<_> = pyt_scale(*cycles, c, &cfg.reference_note)
                    .into_iter()
                    .map(|(l, f)| json!({"letter": l, "freq": f.to_decimal(*digits)}))
                    .collect();
                r.put("reference", &cfg.reference_note).rows("notes", &notes);
            }
            PythagCmd::CommaModulate { w, level, raise, lower, search } => {
                let pw1 = pyt_word(&w.word()?, 0);
                let mut pw2 = pw1.clone();
                for &i in raise {
                    pw2 = pyt_transform(&pw2, PytOp::Raise(i))?;
                }
                for &i in lower {
                    pw2 = pyt_transform(&pw2, PytOp::Lower(i))?;
                }
                let (t1, t2) = (Tonality::new(pw1, *level)?, Tonality::new(pw2, *level)?);
                let ctx = natural_context(t1.word(), *level)?;
                let (src, tgt, _) = pivot_degrees(&t1, &t2);
                r.put("source", t1.word()).put("target", t2.word()).put("pivots", &json!([src, tgt]));
                cadence_report(&mut r, &cadences_with(&t2, &ctx, &search.options(cfg))?);
            }
        },
        Cmd::Euler(ec) => match ec {
            EulerCmd::Point { ratio, tempered } => {
                let q = parse_rational(ratio)?;
                let p = point_from_ratio(&q)?;
                let classes: Vec<String> =
                    classify_point(&p, *tempered, None).iter().map(|t| format!("{t:?}").to_lowercase()).collect();
                r.put("point", &p).put("value", &coordination_value(&p)).put("cents", &pitch_of_point(&p));
                r.put("tunings", &classes);
            }
            EulerCmd::Gradus { ratio, to } => {
                let q = parse_rational(ratio)?;
                let g = match to {
                    Some(t) => gradus_bichord(&q, &parse_rational(t)?)?,
                    None => gradus(&q)?,
                };
                r.put("gradus", &g);
            }
            EulerCmd::Esm { ratio } => {
                let v = esm(&parse_rational(ratio)?)?;
                r.put("esm", &crate::ratio::fmt_rational(&v)).put("value", &crate::ratio::rational_to_f64(&v));
            }
            EulerCmd::Commas => {
                let (kf, kt) = commas();
                r.put("fifth", &kf).put("third", &kt);
            }
            EulerCmd::Vogel => {
                r.rows("notes", &vogel_chromatic());
            }
            EulerCmd::Diatonic => {
                let reference = cfg.reference_note.as_rational().ok_or(Error::NotJustTuned)?;
                r.rows("notes", &just_diatonic(reference));
            }
        },
        Cmd::Consonance(a) => {
            let inst = match a.instrument.split_once(':') {
                None if a.instrument == "ideal" => Instrument::Ideal { amplitude: a.amplitude },
                Some(("pure", k)) => Instrument::Pure {
                    amplitude: a.amplitude,
                    k: k.parse().map_err(|_| Error::Parse(a.instrument.clone()))?,
                },
                _ => return Err(Error::UnknownName(a.instrument.clone())),
            };
            let notes: Vec<Freq> = a.notes.iter().map(|s| s.parse()).collect::<Result<_>>()?;
            let spectrum = inst.spectrum(a.nmax)?;
            let sounds: Vec<Sound> =
                notes.iter().map(|p| Sound { pulsation: p.clone(), spectrum: spectrum.clone() }).collect();
            let idx = consonance_index_with(&sounds, a.nmax, a.eps, cfg.consonance_budget)?;
            r.put("notes", &notes).put("nmax", &a.nmax).put("index", &idx.re).put("index_im", &idx.im);
            r.put("commensurable", &commensurable(&notes, a.eps, a.nmax)?);
            if let Some(th) = a.growth {
                r.put("growth", &consonance_growth(&notes, inst, a.nmax, a.eps, th)?);
            }
        }
        Cmd::Enumerate(a) => {
            if a.tonalities {
                r.put("count", &count_all_tonalities());
            } else {
                let lengths: Vec<usize> = match (a.length, a.nonrepetitive) {
                    (Some(n), _) => vec![n],
                    (None, true) => (1..=12).collect(),
                    (None, false) => return Err(Error::Parse("--length is required for all words".into())),
                };
                let mut words = Vec::new();
                for n in lengths {
                    words.extend(match (a.nonrepetitive, a.ordered) {
                        (true, true) => ordered_nonrepetitive_words(n),
                        (true, false) => letter_sets(n),
                        (false, _) => enumerate_words(n, false),
                    });
                }
                r.put("count", &words.len());
                if !a.count_only {
                    r.rows("words", &words);
                }
            }
        }
        Cmd::Render(a) => {
            let base = parse_duration(&a.duration)?;
            let events: Vec<Event> = match a.fifths_level {
                Some(level) => fifths_cycle_piece(level, a.steps, &[2, 5, 1])?
                    .into_iter()
                    .map(|w| Event { chord: Sounding::Tempered(w.0), duration: base.clone() })
                    .collect(),
                None => a
                    .chords
                    .iter()
                    .map(|s| {
                        let (chord, dur) = match s.rsplit_once(':') {
                            Some((c, d)) if !c.ends_with('{') => (c, parse_duration(d)?),
                            _ => (s.as_str(), base.clone()),
                        };
                        Ok(Event { chord: parse_sounding(chord)?, duration: dur })
                    })
                    .collect::<Result<_>>()?,
            };
            let samples = render_wav(&TimedPiece { events }, &a.out, cfg, a.ramp)?;
            r.put("out", &a.out.display().to_string()).put("sample_rate", &cfg.sample_rate).put("samples", &samples);
        }
    }
    Ok(r)
}

/// Runs one command line; returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let result = Config::load(cli.config.as_deref()).and_then(|cfg| execute(&cli, &cfg));
    match result {
        Ok(r) => {
            let _ = out.write_all(r.render(cli.json).as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
