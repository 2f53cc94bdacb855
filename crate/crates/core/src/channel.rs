//! i.i.d. bit-flip readout noise and the per-trial random streams that
//! drive it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::PhysicalWord;
use crate::decoders::{BeliefState, BitBelief};
use crate::error::{Error, Result};

/// Each physical bit flips independently with probability `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    epsilon: f64,
}

impl NoiseModel {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&epsilon) {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Flip probability of the parity of two independent noisy bits,
    /// `2 eps (1 - eps)`.
    pub fn epsilon_star(&self) -> f64 {
        2.0 * self.epsilon * (1.0 - self.epsilon)
    }
}

/// The stream type handed to each trial.
pub type TrialRng = ChaCha8Rng;

/// Master seed from which per-cell seeds and per-trial streams derive.
///
/// A trial's stream depends only on `(seed, trial index)`, never on which
/// thread runs it or in what order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSeed(pub u64);

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngSeed {
    pub fn master(&self) -> u64 {
        self.0
    }

    /// Mixes `tags` into the seed, producing an independent child seed.
    pub fn derive(&self, tags: &[u64]) -> RngSeed {
        let mixed = tags
            .iter()
            .fold(splitmix64(self.0), |acc, &t| splitmix64(acc ^ splitmix64(t)));
        RngSeed(mixed)
    }

    /// The ChaCha stream for one trial.
    pub fn stream(&self, trial_index: u64) -> TrialRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(trial_index);
        rng
    }
}

/// Flips each bit of `g` independently with probability `model.epsilon()`.
pub fn apply_iid_flip<R: Rng + ?Sized>(g: &PhysicalWord, model: &NoiseModel, rng: &mut R) -> PhysicalWord {
    let mut out = g.clone();
    let eps = model.epsilon();
    if eps > 0.0 {
        for bit in out.bits_mut() {
            if rng.random_bool(eps) {
                *bit ^= 1;
            }
        }
    }
    out
}

/// Per-variable prior: the observed value is right with probability
/// `1 - eps`.
pub fn channel_prior(g_obs: &PhysicalWord, model: &NoiseModel) -> BeliefState {
    channel_prior_bits(g_obs.bits(), model)
}

/// [`channel_prior`] for an arbitrary hard-decision vector.
pub fn channel_prior_bits(bits: &[u8], model: &NoiseModel) -> BeliefState {
    let eps = model.epsilon();
    BeliefState::new(
        bits.iter()
            .map(|&b| {
                if b == 0 {
                    BitBelief::new(1.0 - eps, eps)
                } else {
                    BitBelief::new(eps, 1.0 - eps)
                }
            })
            .collect(),
    )
}
