//! Decoders for noisy LHZ readouts: majority vote over triangle parities,
//! loopy sum-product belief propagation, and brute-force maximum
//! likelihood.
//!
//! All three report their answer in the consecutive-pair basis
//! `(g_12, g_23, .., g_{N-1,N})`.

mod bp;
mod majority;
mod mle;

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bp::{bp_constraint_message, bp_decode, bp_variable_update, BpRun, Message, Schedule};
pub use majority::majority_vote_decode;
pub use mle::{mle_decode, MLE_MAX_N};

use crate::channel::{channel_prior, NoiseModel};
use crate::codes::{consecutive_bits, LogicalWord, PhysicalWord};
use crate::error::{Error, Result};
use crate::factor_graph::{FactorGraph, GraphKind};

/// `2 eps (1 - eps)`, the error rate of a two-bit parity vote.
pub fn epsilon_star(epsilon: f64) -> Result<f64> {
    Ok(NoiseModel::new(epsilon)?.epsilon_star())
}

/// Probability pair `(p0, p1)` for one binary variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BitBelief {
    p0: f64,
    p1: f64,
}

impl BitBelief {
    pub const UNIFORM: BitBelief = BitBelief { p0: 0.5, p1: 0.5 };

    pub fn new(p0: f64, p1: f64) -> Self {
        Self { p0, p1 }
    }

    /// Rescales `(a, b)` to sum to one; `None` when both vanish.
    pub fn normalized(a: f64, b: f64) -> Option<Self> {
        let z = a + b;
        if z > 0.0 && z.is_finite() {
            Some(Self::new(a / z, b / z))
        } else {
            None
        }
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    /// `ln(p0 / p1)`, infinite for hard beliefs.
    pub fn llr(&self) -> f64 {
        self.p0.ln() - self.p1.ln()
    }

    pub(crate) fn from_llr(llr: f64) -> Self {
        // both computed directly so neither side loses precision near 0 or 1
        Self::new(1.0 / (1.0 + (-llr).exp()), 1.0 / (1.0 + llr.exp()))
    }
}

/// One [`BitBelief`] per physical variable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeliefState(Vec<BitBelief>);

impl BeliefState {
    pub fn new(beliefs: Vec<BitBelief>) -> Self {
        Self(beliefs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BitBelief> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[BitBelief] {
        &self.0
    }

    /// Largest `|p0 + p1 - 1|` over all entries.
    pub fn max_normalization_error(&self) -> f64 {
        self.0
            .iter()
            .map(|b| (b.p0 + b.p1 - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for BeliefState {
    type Output = BitBelief;

    fn index(&self, index: usize) -> &BitBelief {
        &self.0[index]
    }
}

/// Result of decoding one readout.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutcome {
    /// Decoded `(g_12, g_23, .., g_{N-1,N})`.
    pub consecutive: Vec<u8>,
    /// Hard decision on every physical variable.
    pub word: PhysicalWord,
    /// Final beliefs, BP only.
    pub beliefs: Option<BeliefState>,
    pub iterations: usize,
    pub converged: bool,
    /// Set when every candidate was equally likely (MLE at `eps = 1/2`).
    pub degenerate: bool,
}

impl DecodeOutcome {
    pub(crate) fn from_word(word: PhysicalWord) -> Self {
        Self {
            consecutive: consecutive_bits(&word),
            word,
            beliefs: None,
            iterations: 0,
            converged: true,
            degenerate: false,
        }
    }

    /// Gauge-fixed logical word (`b_1 = 0`) implied by the consecutive bits.
    pub fn logical(&self) -> LogicalWord {
        LogicalWord::from_consecutive(&self.consecutive).expect("consecutive bits are 0/1")
    }
}

/// Which decoding algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderKind {
    Majority,
    Bp,
    Mle,
}

impl DecoderKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecoderKind::Majority => "majority",
            DecoderKind::Bp => "bp",
            DecoderKind::Mle => "mle",
        }
    }

    pub(crate) fn id(&self) -> u64 {
        match self {
            DecoderKind::Majority => 1,
            DecoderKind::Bp => 2,
            DecoderKind::Mle => 3,
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "majority" => Ok(DecoderKind::Majority),
            "bp" => Ok(DecoderKind::Bp),
            "mle" => Ok(DecoderKind::Mle),
            _ => Err(Error::Config(format!("unknown decoder {s:?}"))),
        }
    }
}

/// Decoder settings shared by the CLI and the simulation harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecoderConfig {
    pub kind: DecoderKind,
    pub iterations: usize,
    pub schedule: Schedule,
    pub graph: GraphKind,
    pub include_direct: bool,
}

impl DecoderConfig {
    pub fn new(kind: DecoderKind) -> Self {
        Self {
            kind,
            iterations: 5,
            schedule: Schedule::PaperLiteral,
            graph: GraphKind::Triangle,
            include_direct: false,
        }
    }
}

#[derive(Debug, Clone)]
enum Prepared {
    Majority { include_direct: bool },
    Bp {
        // None for N = 2, where there are no checks
        graph: Option<FactorGraph>,
        iterations: usize,
        schedule: Schedule,
    },
    Mle,
}

/// A decoder bound to a code size and noise model, with any factor graph
/// built up front so it can be reused across many readouts.
#[derive(Debug, Clone)]
pub struct LhzDecoder {
    n: usize,
    model: NoiseModel,
    prepared: Prepared,
}

impl LhzDecoder {
    pub fn new(config: &DecoderConfig, n: usize, model: NoiseModel) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize {
                n,
                reason: "decoding needs N >= 2",
            });
        }
        let prepared = match config.kind {
            DecoderKind::Majority => Prepared::Majority {
                include_direct: config.include_direct,
            },
            DecoderKind::Bp => {
                if config.iterations == 0 {
                    return Err(Error::Config("BP needs at least one iteration".into()));
                }
                if config.graph == GraphKind::Hamming {
                    return Err(Error::Config("the Hamming graph is not an LHZ presentation".into()));
                }
                Prepared::Bp {
                    graph: if n >= 3 { Some(config.graph.build(n)?) } else { None },
                    iterations: config.iterations,
                    schedule: config.schedule,
                }
            }
            DecoderKind::Mle => {
                if n > MLE_MAX_N {
                    return Err(Error::Capacity {
                        what: "MLE code size N",
                        size: n,
                        limit: MLE_MAX_N,
                    });
                }
                Prepared::Mle
            }
        };
        Ok(Self { n, model, prepared })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn decode(&self, g_obs: &PhysicalWord) -> Result<DecodeOutcome> {
        if g_obs.n() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: g_obs.n(),
            });
        }
        match &self.prepared {
            Prepared::Majority { include_direct } => Ok(majority_vote_decode(g_obs, *include_direct)),
            Prepared::Bp {
                graph,
                iterations,
                schedule,
            } => {
                let priors = channel_prior(g_obs, &self.model);
                match graph {
                    Some(graph) => {
                        let run = bp_decode(graph, &priors, *iterations, *schedule)?;
                        // exact ties follow the readout, which matters only when the
                        // prior itself is uniform
                        let hard = run
                            .hard
                            .iter()
                            .zip(run.beliefs.iter())
                            .zip(g_obs.bits())
                            .map(|((&h, b), &obs)| if b.p0() == b.p1() { obs } else { h })
                            .collect();
                        let word = PhysicalWord::new(self.n, hard)?;
                        Ok(DecodeOutcome {
                            consecutive: consecutive_bits(&word),
                            word,
                            beliefs: Some(run.beliefs),
                            iterations: run.iterations,
                            converged: run.converged,
                            degenerate: false,
                        })
                    }
                    None => {
                        let mut out = DecodeOutcome::from_word(g_obs.clone());
                        out.beliefs = Some(priors);
                        Ok(out)
                    }
                }
            }
            Prepared::Mle => mle_decode(g_obs, &self.model),
        }
    }
}
