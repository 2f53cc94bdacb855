//! One flipped parity at N = 4, decoded by belief propagation. Prints the
//! beliefs after each iteration for both message schedules.

use lhz_ldpc::prelude::*;

fn main() -> Result<()> {
    let n = 4;
    let model = NoiseModel::new(0.1)?;
    let g = PhysicalWord::parse(n, "000001")?;
    let graph = triangle_graph(n)?;
    let priors = channel_prior(&g, &model);
    let map = PairIndexMap::new(n);

    // the two primitives: a check's opinion and a belief update
    let m = bp_constraint_message(&[BitBelief::new(0.9, 0.1), BitBelief::new(0.9, 0.1)]);
    println!("check message from two 0.9 neighbours: p0 = {:.4}", m.p0());
    let b = bp_variable_update(BitBelief::new(0.1, 0.9), &[m, m])?;
    println!("flipped variable after one update:     p0 = {:.4}\n", b.p0());

    for schedule in [Schedule::PaperLiteral, Schedule::Extrinsic, Schedule::Accumulate] {
        println!("schedule {schedule}");
        print!("iter");
        for &(i, j) in map.pairs() {
            print!("   ({i},{j})");
        }
        println!();
        for iters in 1..=4 {
            let run = bp_decode(&graph, &priors, iters, schedule)?;
            print!("{iters:4}");
            for belief in run.beliefs.iter() {
                print!(" {:7.5}", belief.p0());
            }
            println!("   hard {:?} converged {}", run.hard, run.converged);
        }
        println!();
    }
    Ok(())
}
