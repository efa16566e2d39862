//! Instance text format and JSON result output.
//!
//! ```text
//! # comments run to the end of the line
//! 4 10          <- SubsetSum header "<n> <t>"
//! 2 3 5 7       <- n items, any whitespace
//! ```
//!
//! Partition uses the header `<n>`; Knapsack uses `<n> <W> <V>` followed by
//! `n` lines `w v`.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use anyhow::Context;
use apxsum_core::testkit::Generated;
use apxsum_core::{ApproxResult, KnapsackInstance, PartitionInstance, SubsetSumInstance};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Subsetsum,
    Partition,
    Knapsack,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    SubsetSum(SubsetSumInstance),
    Partition(PartitionInstance),
    Knapsack(KnapsackInstance),
}

impl From<Generated> for Instance {
    fn from(g: Generated) -> Self {
        match g {
            Generated::SubsetSum(s) => Instance::SubsetSum(s),
            Generated::Partition(p) => Instance::Partition(p),
            Generated::Knapsack(k) => Instance::Knapsack(k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        msg: msg.into(),
    }
}

/// Non-empty lines after comment stripping, with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number<T: FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| err(line, format!("{what} '{tok}' is not a valid integer")))
}

pub fn parse_instance(text: &str, kind: Kind) -> Result<Instance, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let expected = match kind {
        Kind::Subsetsum => 2,
        Kind::Partition => 1,
        Kind::Knapsack => 3,
    };
    if header.len() != expected {
        return Err(err(
            hline,
            format!("header needs {expected} numbers, found {}", header.len()),
        ));
    }
    let n: usize = number(hline, header[0], "item count")?;
    let invalid = |line: usize| move |e: apxsum_core::Error| err(line, e.to_string());

    if kind == Kind::Knapsack {
        let budget: u64 = number(hline, header[1], "budget W")?;
        let goal: u64 = number(hline, header[2], "goal V")?;
        let (mut weights, mut values) = (Vec::with_capacity(n), Vec::with_capacity(n));
        let mut last = hline;
        for (line, toks) in lines {
            if weights.len() == n {
                return Err(err(line, format!("more than {n} item lines")));
            }
            if toks.len() != 2 {
                return Err(err(line, "knapsack item lines need exactly \"w v\""));
            }
            weights.push(number(line, toks[0], "weight")?);
            values.push(number(line, toks[1], "value")?);
            last = line;
        }
        if weights.len() != n {
            return Err(err(
                last,
                format!("expected {n} items, found {}", weights.len()),
            ));
        }
        return KnapsackInstance::new(weights, values, budget, goal)
            .map(Instance::Knapsack)
            .map_err(invalid(hline));
    }

    let mut items = Vec::with_capacity(n);
    let mut last = hline;
    for (line, toks) in lines {
        for tok in toks {
            if items.len() == n {
                return Err(err(line, format!("more than {n} items")));
            }
            items.push(number(line, tok, "item")?);
        }
        last = line;
    }
    if items.len() != n {
        return Err(err(
            last,
            format!("expected {n} items, found {}", items.len()),
        ));
    }
    match kind {
        Kind::Subsetsum => {
            let t = number(hline, header[1], "target")?;
            SubsetSumInstance::new(items, t)
                .map(Instance::SubsetSum)
                .map_err(invalid(hline))
        }
        _ => PartitionInstance::new(items)
            .map(Instance::Partition)
            .map_err(invalid(hline)),
    }
}

pub fn load_instance(path: &Path, kind: Kind) -> anyhow::Result<Instance> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_instance(&text, kind).with_context(|| format!("{}", path.display()))
}

fn join(xs: impl IntoIterator<Item = impl ToString>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Serializes in the text format; `comment` lines go first, prefixed by `#`.
pub fn write_instance(inst: &Instance, comment: &[String]) -> String {
    let mut out = String::new();
    for c in comment {
        let _ = writeln!(out, "# {c}");
    }
    match inst {
        Instance::SubsetSum(s) => {
            let _ = writeln!(out, "{} {}\n{}", s.n(), s.target, join(&s.items));
        }
        Instance::Partition(p) => {
            let _ = writeln!(out, "{}\n{}", p.items.len(), join(&p.items));
        }
        Instance::Knapsack(k) => {
            let _ = writeln!(out, "{} {} {}", k.n(), k.budget, k.goal);
            for (w, v) in k.weights.iter().zip(&k.values) {
                let _ = writeln!(out, "{w} {v}");
            }
        }
    }
    out
}

/// The JSON shape printed by `solve --json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveOutput {
    pub value: u64,
    pub witness: Vec<u64>,
    pub epsilon: String,
    pub delta: u64,
    pub mode: &'static str,
    pub elapsed_ms: f64,
}

impl SolveOutput {
    pub fn new(r: &ApproxResult, elapsed_ms: f64) -> Self {
        Self {
            value: r.value,
            witness: r.witness.clone(),
            epsilon: r.epsilon.to_string(),
            delta: r.delta,
            mode: r.mode.as_str(),
            elapsed_ms,
        }
    }
}
