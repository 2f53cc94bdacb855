//! Majority-vote failure rates against the Chernoff and union bounds.

use lhz_ldpc::prelude::*;

fn main() -> Result<()> {
    let config = SimConfig {
        ns: vec![4, 8, 12, 16, 20, 30, 40],
        epsilons: vec![0.05, 0.1, 0.2],
        trials: 5000,
        decoders: vec![DecoderKind::Majority],
        seed: 11,
        ..SimConfig::default()
    };
    let result = run_sweep(&config)?;

    println!("  eps   N   pair_fail   chernoff    p_fail      union");
    for cell in result.results() {
        println!(
            "{:5} {:3}  {:10.6} {:10.6} {:10.6} {:10.4}",
            cell.spec.epsilon,
            cell.spec.n,
            cell.pair_fail(),
            cell.chernoff(),
            cell.p_fail(),
            cell.union_bound()
        );
    }
    Ok(())
}
