#![allow(dead_code)]

use std::sync::OnceLock;

use harmonium::pcset::PitchClass;
use harmonium::{Rational, Word};
use num_bigint::BigInt;
use serde_json::{Map, Value};

pub fn fixtures() -> &'static Map<String, Value> {
    static F: OnceLock<Map<String, Value>> = OnceLock::new();
    F.get_or_init(|| serde_json::from_str(include_str!("../fixtures/reference_outputs.json")).expect("fixture json"))
}

pub fn fixture(key: &str) -> &'static Value {
    fixtures().get(key).unwrap_or_else(|| panic!("missing fixture {key}"))
}

/// Fixture entries under `prefix/`, with the rest of the key split on `/`.
pub fn under(prefix: &str) -> Vec<(Vec<&'static str>, &'static Value)> {
    let p = format!("{prefix}/");
    fixtures()
        .iter()
        .filter_map(|(k, v)| k.strip_prefix(&p).map(|rest| (rest.split('/').collect(), v)))
        .collect()
}

pub fn ints(v: &Value) -> Vec<i64> {
    v.as_array().expect("array").iter().map(|x| x.as_i64().expect("int")).collect()
}

pub fn ints2(v: &Value) -> Vec<Vec<i64>> {
    v.as_array().expect("array").iter().map(ints).collect()
}

pub fn usizes2(v: &Value) -> Vec<Vec<usize>> {
    ints2(v).into_iter().map(|r| r.into_iter().map(|x| x as usize).collect()).collect()
}

pub fn values(w: &Word) -> Vec<i64> {
    w.0.iter().map(|l| l.value() as i64).collect()
}

pub fn chord_values<L: PitchClass>(ws: &[Word<L>]) -> Vec<Vec<i64>> {
    ws.iter().map(|w| w.0.iter().map(|l| l.pc().value() as i64).collect()).collect()
}

/// A decimal literal such as `140.958984375` as an exact rational.
pub fn decimal(s: &str) -> Rational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    Rational::new(digits, BigInt::from(10).pow(frac.len() as u32))
}

/// Number of digits before the decimal point, minus one.
pub fn exponent10(s: &str) -> u32 {
    s.split('.').next().unwrap().trim_start_matches('0').len().saturating_sub(1) as u32
}
