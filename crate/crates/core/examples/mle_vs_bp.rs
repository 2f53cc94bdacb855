//! Paired comparison of all three decoders on identical noise
//! realizations, with MLE as the optimum.

use lhz_ldpc::prelude::*;

fn main() -> Result<()> {
    let n = 6;
    let trials = 4000;
    for epsilon in [0.05, 0.1, 0.2, 0.3] {
        print!("eps {epsilon:4}:");
        for kind in [DecoderKind::Mle, DecoderKind::Bp, DecoderKind::Majority] {
            let cell = CellSpec {
                decoder: DecoderConfig::new(kind),
                n,
                epsilon,
                epsilon_index: 0,
                trials,
                seed: 99,
                shared_noise: true,
                all_zero: false,
            };
            let r = run_cell(&cell)?;
            print!("  {kind} {:.4} ± {:.4}", r.p_fail(), r.stderr());
        }
        println!();
    }

    // one realization in detail
    let model = NoiseModel::new(0.2)?;
    let g = PhysicalWord::parse(n, "100000000010001")?;
    println!("\nreadout {g}");
    for kind in [DecoderKind::Mle, DecoderKind::Bp, DecoderKind::Majority] {
        let out = LhzDecoder::new(&DecoderConfig::new(kind), n, model)?.decode(&g)?;
        println!("{kind:>8}: logical {} distance {}", out.logical(), encode(&out.logical()).hamming_distance(&g));
    }
    Ok(())
}
