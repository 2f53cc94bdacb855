use crate::channel::NoiseModel;
use crate::codes::{encode, num_pairs, pair_index_unchecked, LogicalWord, PhysicalWord};
use crate::error::{Error, Result};

use super::DecodeOutcome;

/// Largest code size accepted by [`mle_decode`]; the search visits
/// `2^(N-1)` logical words.
pub const MLE_MAX_N: usize = 24;

/// Exhaustive maximum-likelihood decoding.
///
/// Under i.i.d. flips with `eps < 1/2` the likeliest codeword is the
/// nearest one in Hamming distance. The search fixes `b_1 = 0` and walks
/// the remaining `N - 1` bits in Gray-code order, updating the distance
/// incrementally. Ties go to the lexicographically smallest `b`. At
/// `eps = 1/2` every word is equally likely, so the smallest `b` (all
/// zeros) is returned and the outcome is flagged degenerate.
pub fn mle_decode(g_obs: &PhysicalWord, model: &NoiseModel) -> Result<DecodeOutcome> {
    let n = g_obs.n();
    if n > MLE_MAX_N {
        return Err(Error::Capacity {
            what: "MLE code size N",
            size: n,
            limit: MLE_MAX_N,
        });
    }
    if model.epsilon() >= 0.5 {
        let mut out = DecodeOutcome::from_word(encode(&LogicalWord::zeros(n)?));
        out.degenerate = true;
        return Ok(out);
    }

    let obs = g_obs.bits();
    // model word for the current b, starting from b = 0
    let mut current = vec![0u8; num_pairs(n)];
    let mut b = vec![0u8; n + 1]; // 1-based
    let mut distance = obs.iter().filter(|&&x| x == 1).count();
    // b_j sits at bit N - j of the key, so numeric order on keys is
    // lexicographic order on (b_1, .., b_N)
    let mut key = 0u64;
    let (mut best_distance, mut best_key) = (distance, key);

    for step in 1u64..(1u64 << (n - 1)) {
        let t = step.trailing_zeros() as usize;
        let j = n - t;
        b[j] ^= 1;
        key ^= 1 << t;
        for i in (1..=n).filter(|&i| i != j) {
            let idx = if i < j {
                pair_index_unchecked(i, j, n)
            } else {
                pair_index_unchecked(j, i, n)
            };
            if current[idx] == obs[idx] {
                distance += 1;
            } else {
                distance -= 1;
            }
            current[idx] ^= 1;
        }
        if distance < best_distance || (distance == best_distance && key < best_key) {
            best_distance = distance;
            best_key = key;
        }
    }

    let bits: Vec<u8> = (1..=n).map(|j| ((best_key >> (n - j)) & 1) as u8).collect();
    Ok(DecodeOutcome::from_word(encode(&LogicalWord::new(bits)?)))
}
