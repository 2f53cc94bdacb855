//! The LHZ pairwise-parity encoding treated as a classical LDPC code.
//!
//! `N` logical bits are stored as the `N(N-1)/2` pairwise parities
//! `g_ij = b_i ^ b_j`. The redundancy among those parities corrects
//! readout noise. This crate provides:
//!
//! - [`codes`]: encoding, gauge-fixed readout and the consecutive-pair basis
//! - [`factor_graph`]: triangle, planar and Hamming parity-check graphs plus
//!   GF(2) rank and nullspace enumeration
//! - [`channel`]: i.i.d. bit-flip noise with counter-based seeded streams
//! - [`decoders`]: majority vote, sum-product belief propagation and
//!   exhaustive maximum likelihood
//! - [`sim`]: Monte Carlo sweeps and the Chernoff/union bounds
//! - [`report`] and [`cli`]: CSV/JSON-lines output and the `lhz` command
//!
//! ```
//! use lhz_ldpc::prelude::*;
//!
//! let b: LogicalWord = "01101".parse().unwrap();
//! let mut g = encode(&b);
//! g.flip(2, 4);
//! let out = majority_vote_decode(&g, false);
//! assert!(out.logical().is_equivalent(&b));
//! ```

pub mod channel;
pub mod cli;
pub mod codes;
pub mod decoders;
pub mod error;
pub mod factor_graph;
pub mod report;
pub mod sim;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::channel::{apply_iid_flip, channel_prior, NoiseModel, RngSeed};
    pub use crate::codes::{
        consecutive_bits, encode, index_pair, logical_readout, num_pairs, pair_index, LogicalWord,
        PairIndexMap, PhysicalWord,
    };
    pub use crate::decoders::{
        bp_constraint_message, bp_decode, bp_variable_update, epsilon_star, majority_vote_decode,
        mle_decode, BeliefState, BitBelief, DecodeOutcome, DecoderConfig, DecoderKind, LhzDecoder,
        Schedule,
    };
    pub use crate::error::{Error, Result};
    pub use crate::factor_graph::{
        enumerate_codewords, gf2_rank, hamming_7_4, planar_lhz_graph, syndrome, triangle_graph,
        FactorGraph, GraphKind, ParityCheckMatrix,
    };
    pub use crate::sim::{chernoff_bound, run_cell, run_sweep, union_bound, CellResult, CellSpec, SimConfig, SimResult};
}
