//! Compares the BP message schedules, and majority vote with and without
//! the direct readout, on identical noise.

use lhz_ldpc::prelude::*;

fn sweep(decoder: DecoderConfig, ns: &[usize], epsilon: f64, trials: u64) -> Result<Vec<Option<f64>>> {
    ns.iter()
        .map(|&n| {
            // exhaustive search gets slow well before its hard limit
            if decoder.kind == DecoderKind::Mle && n > 12 {
                return Ok(None);
            }
            let cell = CellSpec {
                decoder,
                n,
                epsilon,
                epsilon_index: 0,
                trials,
                seed: 17,
                shared_noise: true,
                all_zero: false,
            };
            Ok(Some(run_cell(&cell)?.p_fail()))
        })
        .collect()
}

fn main() -> Result<()> {
    // the direct readout only changes majority vote for odd N; for even N
    // it duplicates the tie rule
    let ns = [4, 5, 8, 9, 12, 16, 20, 24];
    let trials = 4000;

    for epsilon in [0.1, 0.2] {
        println!("eps = {epsilon}, {trials} trials per cell");
        print!("{:>22}", "N");
        for n in ns {
            print!("{n:>8}");
        }
        println!();

        let mut rows: Vec<(String, DecoderConfig)> = Vec::new();
        for schedule in [Schedule::PaperLiteral, Schedule::Extrinsic, Schedule::Accumulate] {
            let mut config = DecoderConfig::new(DecoderKind::Bp);
            config.schedule = schedule;
            rows.push((format!("bp/{schedule}"), config));
        }
        // the planar graph is local, so five rounds reach only nearby
        // variables; it needs many more iterations than the triangle graph
        let mut planar = DecoderConfig::new(DecoderKind::Bp);
        planar.graph = GraphKind::Planar;
        rows.push(("bp/paper/planar".into(), planar));
        rows.push(("majority".into(), DecoderConfig::new(DecoderKind::Majority)));
        let mut direct = DecoderConfig::new(DecoderKind::Majority);
        direct.include_direct = true;
        rows.push(("majority+direct".into(), direct));
        rows.push(("mle".into(), DecoderConfig::new(DecoderKind::Mle)));

        for (name, config) in rows {
            print!("{name:>22}");
            for p in sweep(config, &ns, epsilon, trials)? {
                match p {
                    Some(p) => print!("{p:>8.4}"),
                    None => print!("{:>8}", "-"),
                }
            }
            println!();
        }
        println!();
    }
    Ok(())
}
