use crate::codes::{num_pairs, PhysicalWord};

use super::DecodeOutcome;

/// Majority vote over the `N - 2` triangle parities `g'_ik ^ g'_jk`.
///
/// Every pair `(i, j)` is decoded, so the full hard word is available;
/// the consecutive pairs are the ones that count for logical success.
/// With `include_direct` the readout `g'_ij` joins as one more vote.
/// Ties go to the observed `g'_ij`.
pub fn majority_vote_decode(g_obs: &PhysicalWord, include_direct: bool) -> DecodeOutcome {
    let n = g_obs.n();
    if n == 2 {
        return DecodeOutcome::from_word(g_obs.clone());
    }
    let voters = n - 2 + usize::from(include_direct);
    let mut bits = Vec::with_capacity(num_pairs(n));
    for i in 1..=n {
        for j in i + 1..=n {
            let observed = g_obs.get_sym(i, j);
            let mut ones = (1..=n)
                .filter(|&k| k != i && k != j)
                .filter(|&k| g_obs.get_sym(i, k) ^ g_obs.get_sym(j, k) == 1)
                .count();
            if include_direct {
                ones += usize::from(observed);
            }
            let bit = match (2 * ones).cmp(&voters) {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Equal => observed,
            };
            bits.push(bit);
        }
    }
    let word = PhysicalWord::new(n, bits).expect("one bit per pair");
    DecodeOutcome::from_word(word)
}
