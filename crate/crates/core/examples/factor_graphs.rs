//! Build the triangle and planar parity-check graphs, compare their ranks
//! and codeword sets, and check syndromes.

use lhz_ldpc::prelude::*;

fn main() -> Result<()> {
    let hamming = hamming_7_4();
    println!("Hamming [7,4]: {} checks, rank {}", hamming.n_checks(), gf2_rank(&hamming));

    println!("\n  N   K  triangle  rank  planar  rank  K-N+1");
    for n in 3..=10 {
        let tri = triangle_graph(n)?;
        let planar = planar_lhz_graph(n)?;
        println!(
            "{n:3} {:3} {:9} {:5} {:7} {:5} {:6}",
            num_pairs(n),
            tri.n_checks(),
            gf2_rank(tri.matrix()),
            planar.n_checks(),
            gf2_rank(planar.matrix()),
            num_pairs(n) - n + 1
        );
    }

    let n = 6;
    let tri = enumerate_codewords(triangle_graph(n)?.matrix(), 24)?;
    let planar = enumerate_codewords(planar_lhz_graph(n)?.matrix(), 24)?;
    println!("\nN={n}: {} codewords, same set for both graphs: {}", tri.len(), tri == planar);

    let planar = planar_lhz_graph(5)?;
    let labels = planar.labels().expect("LHZ graphs carry pair labels");
    println!("\nplanar N=5 checks:");
    for check in planar.checks() {
        let pairs: Vec<String> = check
            .iter()
            .map(|&v| labels.pair(v).map(|(i, j)| format!("({i},{j})")))
            .collect::<Result<_>>()?;
        println!("  {}", pairs.join(" "));
    }

    let mut g = encode(&"01101".parse()?);
    g.flip(2, 3);
    let s = syndrome(planar.matrix(), g.bits())?;
    println!("\nsyndrome after flipping (2,3): {s:?}");
    Ok(())
}
