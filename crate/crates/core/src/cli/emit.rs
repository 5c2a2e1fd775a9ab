//! Aligned brace tables and JSON from one report.
//!
//! A table line is `key  value`, values in brace notation.
//! Row entries expand to one `key.N` line per element.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Layout {
    Inline,
    Rows,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    entries: Vec<(String, Value, Layout)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn put<T: Serialize + ?Sized>(&mut self, key: &str, v: &T) -> &mut Self {
        self.push(key, v, Layout::Inline)
    }

    pub fn rows<T: Serialize + ?Sized>(&mut self, key: &str, v: &T) -> &mut Self {
        self.push(key, v, Layout::Rows)
    }

    fn push<T: Serialize + ?Sized>(&mut self, key: &str, v: &T, layout: Layout) -> &mut Self {
        let v = serde_json::to_value(v).expect("report values serialize");
        self.entries.push((key.to_string(), v, layout));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v, _) in &self.entries {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    pub fn to_table(&self) -> String {
        let mut lines: Vec<(String, String)> = Vec::new();
        for (k, v, layout) in &self.entries {
            match (layout, v) {
                (Layout::Rows, Value::Array(items)) if !items.is_empty() => {
                    for (i, x) in items.iter().enumerate() {
                        lines.push((format!("{k}.{}", i + 1), braces(x)));
                    }
                }
                _ => lines.push((k.clone(), braces(v))),
            }
        }
        let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut s = String::new();
        for (k, v) in lines {
            let _ = writeln!(s, "{k:<width$}  {v}");
        }
        s
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
            s.push('\n');
            s
        } else {
            self.to_table()
        }
    }
}

fn is_pyt_letter(m: &Map<String, Value>) -> bool {
    m.len() == 2 && m.contains_key("pc") && m.contains_key("cycle")
}

fn atom(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => unreachable!(),
    }
}

/// Brace notation: lists as `{a,b}`, `{pc,cycle}` letters as pairs, other
/// objects as `{key:value,…}`.
pub fn braces(v: &Value) -> String {
    match v {
        Value::Array(xs) => format!("{{{}}}", xs.iter().map(braces).collect::<Vec<_>>().join(",")),
        Value::Object(m) if is_pyt_letter(m) => format!("{{{},{}}}", braces(&m["pc"]), braces(&m["cycle"])),
        Value::Object(m) => {
            format!("{{{}}}", m.iter().map(|(k, x)| format!("{k}:{}", braces(x))).collect::<Vec<_>>().join(","))
        }
        _ => atom(v),
    }
}

/// The data a table line carries, independent of spelling.
#[derive(Clone, PartialEq, Debug)]
pub enum Node {
    Atom(String),
    List(Vec<Node>),
    Map(Vec<(String, Node)>),
}

/// The tree a JSON value renders to.
pub fn tabular(v: &Value) -> Node {
    match v {
        Value::Array(xs) => Node::List(xs.iter().map(tabular).collect()),
        Value::Object(m) if is_pyt_letter(m) => Node::List(vec![tabular(&m["pc"]), tabular(&m["cycle"])]),
        Value::Object(m) => Node::Map(m.iter().map(|(k, x)| (k.clone(), tabular(x))).collect()),
        _ => Node::Atom(atom(v)),
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn node(&mut self) -> Option<Node> {
        if self.s.get(self.i) != Some(&b'{') {
            return Some(Node::Atom(self.token()));
        }
        self.i += 1;
        let mut items: Vec<(Option<String>, Node)> = Vec::new();
        if self.s.get(self.i) == Some(&b'}') {
            self.i += 1;
            return Some(Node::List(Vec::new()));
        }
        loop {
            let first = self.node()?;
            if self.s.get(self.i) == Some(&b':') {
                let Node::Atom(k) = first else { return None };
                self.i += 1;
                items.push((Some(k), self.node()?));
            } else {
                items.push((None, first));
            }
            match self.s.get(self.i)? {
                b',' => self.i += 1,
                b'}' => {
                    self.i += 1;
                    break;
                }
                _ => return None,
            }
        }
        if items.iter().all(|(k, _)| k.is_some()) {
            Some(Node::Map(items.into_iter().map(|(k, v)| (k.unwrap(), v)).collect()))
        } else if items.iter().all(|(k, _)| k.is_none()) {
            Some(Node::List(items.into_iter().map(|(_, v)| v).collect()))
        } else {
            None
        }
    }

    fn token(&mut self) -> String {
        let start = self.i;
        let mut depth = 0usize;
        while let Some(&c) = self.s.get(self.i) {
            match c {
                b'(' => depth += 1,
                b')' => depth = depth.saturating_sub(1),
                b',' | b'}' | b':' if depth == 0 => break,
                _ => {}
            }
            self.i += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.i]).into_owned()
    }
}

pub fn parse_braces(s: &str) -> Option<Node> {
    let mut p = Parser { s: s.as_bytes(), i: 0 };
    let n = p.node()?;
    (p.i == s.len()).then_some(n)
}

/// Reads a table back into `(key, tree)` pairs, regrouping `key.N` rows.
pub fn parse_table(text: &str) -> Option<Vec<(String, Node)>> {
    let mut out: Vec<(String, Node)> = Vec::new();
    let mut open_rows: Option<String> = None;
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let (key, value) = line.split_once("  ")?;
        let node = parse_braces(value.trim_start())?;
        let row = key.rsplit_once('.').filter(|(_, n)| n.parse::<usize>().is_ok());
        match row {
            Some((base, n)) => {
                let n: usize = n.parse().ok()?;
                if n == 1 {
                    out.push((base.to_string(), Node::List(vec![node])));
                    open_rows = Some(base.to_string());
                } else {
                    if open_rows.as_deref() != Some(base) {
                        return None;
                    }
                    let Some((_, Node::List(v))) = out.last_mut() else { return None };
                    if v.len() + 1 != n {
                        return None;
                    }
                    v.push(node);
                }
            }
            None => {
                open_rows = None;
                out.push((key.to_string(), node));
            }
        }
    }
    Some(out)
}

/// `(key, tree)` pairs of a JSON report, for comparison with [`parse_table`].
pub fn tabular_report(v: &Value) -> Option<Vec<(String, Node)>> {
    let Value::Object(m) = v else { return None };
    Some(m.iter().map(|(k, x)| (k.clone(), tabular(x))).collect())
}
