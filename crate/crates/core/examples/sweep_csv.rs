//! Run a small sweep and write it as CSV to stdout, then read it back.

use lhz_ldpc::prelude::*;
use lhz_ldpc::report::{read_csv, write_csv, OutputRow};

fn main() -> Result<()> {
    let config = SimConfig {
        ns: (2..=12).step_by(2).collect(),
        epsilons: vec![0.05, 0.1, 0.15, 0.2],
        trials: 2000,
        decoders: vec![DecoderKind::Bp, DecoderKind::Majority],
        seed: 2024,
        ..SimConfig::default()
    };
    let result = run_sweep(&config)?;
    let rows: Vec<OutputRow> = result.results().map(OutputRow::from_cell).collect();

    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));

    let back = read_csv(buf.as_slice())?;
    eprintln!("{} rows, round trip exact: {}", back.len(), back == rows);
    Ok(())
}
