//! Tabular output: one [`OutputRow`] per sweep cell as CSV or JSON lines,
//! and the bound table.

use std::io::{BufRead, Read, Write};

use serde::{Deserialize, Serialize};

use crate::channel::NoiseModel;
use crate::decoders::{DecoderKind, Schedule};
use crate::error::{Error, Result};
use crate::factor_graph::GraphKind;
use crate::sim::{chernoff_bound, union_bound, CellResult};

/// Formats `x` with six significant digits, dropping trailing zeros.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.5e}");
        let (mantissa, exponent) = s.split_once('e').expect("exponent form");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exponent}")
    }
}

/// `x` rounded to what [`format_sig6`] prints.
pub fn round_sig6(x: f64) -> f64 {
    format_sig6(x).parse().expect("formatted float parses")
}

/// One sweep cell as written to disk. Columns appear in field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRow {
    pub decoder: DecoderKind,
    pub graph: GraphKind,
    #[serde(rename = "N")]
    pub n: usize,
    pub epsilon: f64,
    pub iterations: usize,
    pub trials: u64,
    pub failures: u64,
    pub p_fail: f64,
    pub stderr: f64,
    pub chernoff: f64,
    pub union_bound: f64,
    pub seed: u64,
    pub schedule: Schedule,
    pub include_direct: bool,
    pub shared_noise: bool,
    pub all_zero: bool,
}

impl OutputRow {
    pub const HEADER: [&'static str; 16] = [
        "decoder",
        "graph",
        "N",
        "epsilon",
        "iterations",
        "trials",
        "failures",
        "p_fail",
        "stderr",
        "chernoff",
        "union_bound",
        "seed",
        "schedule",
        "include_direct",
        "shared_noise",
        "all_zero",
    ];

    /// Row for a finished cell; floats are rounded to the printed
    /// precision so a written row reads back identical.
    pub fn from_cell(cell: &CellResult) -> Self {
        let spec = &cell.spec;
        Self {
            decoder: spec.decoder.kind,
            graph: spec.decoder.graph,
            n: spec.n,
            epsilon: round_sig6(spec.epsilon),
            iterations: spec.decoder.iterations,
            trials: spec.trials,
            failures: cell.failures,
            p_fail: round_sig6(cell.p_fail()),
            stderr: round_sig6(cell.stderr()),
            chernoff: round_sig6(cell.chernoff()),
            union_bound: round_sig6(cell.union_bound()),
            seed: spec.seed,
            schedule: spec.decoder.schedule,
            include_direct: spec.decoder.include_direct,
            shared_noise: spec.shared_noise,
            all_zero: spec.all_zero,
        }
    }

    fn record(&self) -> [String; 16] {
        [
            self.decoder.to_string(),
            self.graph.to_string(),
            self.n.to_string(),
            format_sig6(self.epsilon),
            self.iterations.to_string(),
            self.trials.to_string(),
            self.failures.to_string(),
            format_sig6(self.p_fail),
            format_sig6(self.stderr),
            format_sig6(self.chernoff),
            format_sig6(self.union_bound),
            self.seed.to_string(),
            self.schedule.to_string(),
            self.include_direct.to_string(),
            self.shared_noise.to_string(),
            self.all_zero.to_string(),
        ]
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Config(format!("csv: {e}"))
}

fn io_error(e: std::io::Error) -> Error {
    Error::Config(format!("io: {e}"))
}

/// Writes a header line followed by one CSV record per row.
pub fn write_csv<W: Write>(rows: &[OutputRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(OutputRow::HEADER).map_err(csv_error)?;
    for row in rows {
        w.write_record(row.record()).map_err(csv_error)?;
    }
    w.flush().map_err(io_error)
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<OutputRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(csv_error))
        .collect()
}

/// One JSON object per line, keys in column order.
pub fn write_jsonl<W: Write>(rows: &[OutputRow], mut out: W) -> Result<()> {
    for row in rows {
        let line = serde_json::to_string(row).map_err(|e| Error::Config(format!("json: {e}")))?;
        writeln!(out, "{line}").map_err(io_error)?;
    }
    out.flush().map_err(io_error)
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<OutputRow>> {
    input
        .lines()
        .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|line| {
            let line = line.map_err(io_error)?;
            serde_json::from_str(&line).map_err(|e| Error::Config(format!("json: {e}")))
        })
        .collect()
}

/// One line of the bound table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub epsilon: f64,
    pub eps_star: f64,
    pub chernoff: f64,
    pub union: f64,
}

impl BoundRow {
    pub fn new(n: usize, model: &NoiseModel) -> Self {
        Self {
            n,
            epsilon: model.epsilon(),
            eps_star: model.epsilon_star(),
            chernoff: chernoff_bound(n, model),
            union: union_bound(n, model),
        }
    }
}

pub fn write_bound_csv<W: Write>(rows: &[BoundRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["N", "epsilon", "eps_star", "chernoff", "union"])
        .map_err(csv_error)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            format_sig6(r.epsilon),
            format_sig6(r.eps_star),
            format_sig6(r.chernoff),
            format_sig6(r.union),
        ])
        .map_err(csv_error)?;
    }
    w.flush().map_err(io_error)
}
