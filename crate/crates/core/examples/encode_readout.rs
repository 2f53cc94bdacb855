//! Encode a logical word into pairwise parities, corrupt one parity and
//! read the logical word back.

use lhz_ldpc::prelude::*;

fn main() -> Result<()> {
    let b: LogicalWord = "10110".parse()?;
    let g = encode(&b);
    let map = PairIndexMap::new(b.n());

    println!("logical  {b}");
    println!("physical {g}  ({} parities)", g.len());
    for &(i, j) in map.pairs() {
        print!("g{i}{j}={} ", g.get(i, j));
    }
    println!();

    // readout fixes b_1 = 0, so the result is b or its complement
    let back = logical_readout(&g);
    println!("readout  {back}  equivalent: {}", back.is_equivalent(&b));
    println!("consecutive basis {:?}", consecutive_bits(&g));

    let mut noisy = g.clone();
    noisy.flip(2, 4);
    println!("\nafter flipping (2,4): {noisy}");
    println!("distance to codeword: {}", noisy.hamming_distance(&g));
    let fixed = majority_vote_decode(&noisy, false);
    println!("majority vote gives {} (equivalent: {})", fixed.logical(), fixed.logical().is_equivalent(&b));
    Ok(())
}
