//! Flat `key=value` configuration. Flags override the file.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::{int, parse_rational, Freq, Rational};

pub const CONFIG_ENV: &str = "HARMONIUM_CONFIG";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    pub reference_note: Freq,
    /// Seconds per semibreve.
    #[serde(serialize_with = "crate::euler::ser_rational")]
    pub reference_time: Rational,
    pub sample_rate: u32,
    pub cadence_budget: u128,
    pub consonance_budget: u128,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            reference_note: Freq::int(132),
            reference_time: int(4),
            sample_rate: 44100,
            cadence_budget: crate::tonality::DEFAULT_BUDGET,
            consonance_budget: crate::consonance::DEFAULT_BUDGET,
        }
    }
}

fn positive<T: PartialOrd + Default>(x: T) -> Result<T> {
    if x > T::default() {
        Ok(x)
    } else {
        Err(Error::NonPositive)
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Config::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", n + 1)))?;
            c.set(k.trim(), v.trim())?;
        }
        Ok(c)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::Parse(format!("config {key}: bad value '{value}'"));
        match key {
            "reference_note" => {
                let f: Freq = value.parse()?;
                if !f.is_positive() {
                    return Err(Error::NonPositive);
                }
                self.reference_note = f;
            }
            "reference_time" => self.reference_time = positive(parse_rational(value)?)?,
            "sample_rate" => self.sample_rate = positive(value.parse().map_err(|_| bad())?)?,
            "cadence_budget" => self.cadence_budget = positive(value.parse().map_err(|_| bad())?)?,
            "consonance_budget" => self.consonance_budget = positive(value.parse().map_err(|_| bad())?)?,
            _ => return Err(Error::Parse(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    /// The explicit path, else `$HARMONIUM_CONFIG`, else defaults.
    pub fn load(explicit: Option<&Path>) -> Result<Self> {
        let path = match explicit {
            Some(p) => Some(p.to_path_buf()),
            None => std::env::var_os(CONFIG_ENV).filter(|s| !s.is_empty()).map(Into::into),
        };
        match path {
            Some(p) => {
                let text = std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                Config::parse(&text)
            }
            None => Ok(Config::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn parses_and_validates() {
        let c = Config::parse("# tuning\nreference_note = 440\nreference_time=1/2\n\nsample_rate=8000\n").unwrap();
        assert_eq!(c.reference_note, Freq::int(440));
        assert_eq!(c.reference_time, rat(1, 2));
        assert_eq!(c.sample_rate, 8000);
        assert!(Config::parse("sample_rate=0").is_err());
        assert!(Config::parse("colour=blue").is_err());
        assert!(Config::parse("just words").is_err());
        assert_eq!(Config::parse("").unwrap(), Config::default());
    }
}
