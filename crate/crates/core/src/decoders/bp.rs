//! Sum-product belief propagation on a parity-check factor graph.
//!
//! [`bp_constraint_message`] and [`bp_variable_update`] are the two update
//! rules in probability form. [`bp_decode`] runs the same rules with each
//! belief held as a log-likelihood ratio `ln(p0 / p1)`; after a few
//! flooding iterations on dense graphs the beliefs are far more certain
//! than an `f64` probability pair can express, and the ratio form keeps
//! them finite.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor_graph::FactorGraph;

use super::{BeliefState, BitBelief};

/// A check's opinion of one of its variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Message {
    pub check: usize,
    pub var: usize,
    pub belief: BitBelief,
}

/// Message schedule for [`bp_decode`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Schedule {
    /// Checks read the current beliefs of their other variables; each
    /// variable's new belief is its channel prior times all incoming
    /// messages.
    #[default]
    #[serde(rename = "paper")]
    PaperLiteral,
    /// Standard sum-product: checks read extrinsic variable-to-check
    /// messages that exclude the recipient's own contribution.
    #[serde(rename = "extrinsic")]
    Extrinsic,
    /// Like [`Schedule::PaperLiteral`], but each new belief multiplies the
    /// variable's current belief rather than its channel prior.
    #[serde(rename = "accumulate")]
    Accumulate,
}

impl Schedule {
    pub fn as_str(&self) -> &'static str {
        match self {
            Schedule::PaperLiteral => "paper",
            Schedule::Extrinsic => "extrinsic",
            Schedule::Accumulate => "accumulate",
        }
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "paper-literal" => Ok(Schedule::PaperLiteral),
            "extrinsic" => Ok(Schedule::Extrinsic),
            "accumulate" => Ok(Schedule::Accumulate),
            _ => Err(Error::Config(format!("unknown schedule {s:?}"))),
        }
    }
}

/// Parity convolution of the other neighbours' beliefs: the probability
/// that their XOR is 0 or 1.
pub fn bp_constraint_message(others: &[BitBelief]) -> BitBelief {
    others.iter().fold(BitBelief::new(1.0, 0.0), |acc, b| {
        BitBelief::new(
            acc.p0() * b.p0() + acc.p1() * b.p1(),
            acc.p0() * b.p1() + acc.p1() * b.p0(),
        )
    })
}

/// Normalized product of the prior with every incoming message.
pub fn bp_variable_update(prior: BitBelief, incoming: &[BitBelief]) -> Result<BitBelief> {
    let (p0, p1) = incoming
        .iter()
        .fold((prior.p0(), prior.p1()), |(a, b), m| (a * m.p0(), b * m.p1()));
    BitBelief::normalized(p0, p1).ok_or(Error::InconsistentEvidence { var: None })
}

/// Output of [`bp_decode`].
#[derive(Debug, Clone, PartialEq)]
pub struct BpRun {
    pub beliefs: BeliefState,
    /// Per-variable argmax; exact ties go to the prior's preferred value.
    pub hard: Vec<u8>,
    pub iterations: usize,
    /// Hard decisions unchanged by the final iteration.
    pub converged: bool,
}

/// LLR of the XOR of two independent bits with LLRs `a` and `b`.
#[inline]
fn boxplus(a: f64, b: f64) -> f64 {
    if a.is_infinite() {
        return if a > 0.0 { b } else { -b };
    }
    if b.is_infinite() {
        return if b > 0.0 { a } else { -a };
    }
    let sign = if (a < 0.0) != (b < 0.0) { -1.0 } else { 1.0 };
    sign * a.abs().min(b.abs()) + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
}

#[inline]
fn hard_decision(llr: f64, prior: f64) -> u8 {
    if llr > 0.0 {
        0
    } else if llr < 0.0 {
        1
    } else {
        u8::from(prior < 0.0)
    }
}

/// Check-to-variable message LLRs for one check, given the inputs of each
/// of its edges.
#[inline]
fn check_messages(inputs: &[f64], out: &mut [f64]) {
    match inputs {
        [a, b, c] => {
            out[0] = boxplus(*b, *c);
            out[1] = boxplus(*a, *c);
            out[2] = boxplus(*a, *b);
        }
        _ => {
            for (e, slot) in out.iter_mut().enumerate() {
                *slot = inputs
                    .iter()
                    .enumerate()
                    .filter(|&(f, _)| f != e)
                    .fold(f64::INFINITY, |acc, (_, &x)| boxplus(acc, x));
            }
        }
    }
}

struct Edges {
    // edges of check c are check_start[c]..check_start[c + 1]
    check_start: Vec<usize>,
    // variable of each edge
    edge_var: Vec<usize>,
    // edges incident to each variable
    var_edges: Vec<Vec<usize>>,
}

impl Edges {
    fn new(graph: &FactorGraph) -> Self {
        let mut check_start = Vec::with_capacity(graph.n_checks() + 1);
        let mut edge_var = Vec::new();
        let mut var_edges = vec![Vec::new(); graph.n_vars()];
        check_start.push(0);
        for check in graph.checks() {
            for &v in check {
                var_edges[v].push(edge_var.len());
                edge_var.push(v);
            }
            check_start.push(edge_var.len());
        }
        Self {
            check_start,
            edge_var,
            var_edges,
        }
    }

    fn checks(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        self.check_start.windows(2).map(|w| w[0]..w[1])
    }
}

/// Runs `iterations` flooding rounds of sum-product on `graph`, starting
/// from the channel `priors`.
pub fn bp_decode(
    graph: &FactorGraph,
    priors: &BeliefState,
    iterations: usize,
    schedule: Schedule,
) -> Result<BpRun> {
    if priors.len() != graph.n_vars() {
        return Err(Error::Dimension {
            expected: graph.n_vars(),
            actual: priors.len(),
        });
    }
    if iterations == 0 {
        return Err(Error::Config("BP needs at least one iteration".into()));
    }
    let prior: Vec<f64> = priors.iter().map(BitBelief::llr).collect();
    if let Some(var) = prior.iter().position(|l| l.is_nan()) {
        return Err(Error::InconsistentEvidence { var: Some(var) });
    }

    let edges = Edges::new(graph);
    let n_edges = edges.edge_var.len();
    // check-side inputs and outputs, indexed by edge
    let mut inputs = vec![0.0; n_edges];
    let mut messages = vec![0.0f64; n_edges];
    let mut belief = prior.clone();
    let mut hard: Vec<u8> = prior.iter().map(|&l| hard_decision(l, l)).collect();
    let mut converged = false;

    for iter in 0..iterations {
        match schedule {
            Schedule::PaperLiteral | Schedule::Accumulate => {
                for (slot, &v) in inputs.iter_mut().zip(&edges.edge_var) {
                    *slot = belief[v];
                }
            }
            Schedule::Extrinsic => {
                for (v, var_edges) in edges.var_edges.iter().enumerate() {
                    for &e in var_edges {
                        inputs[e] = if iter == 0 {
                            prior[v]
                        } else if belief[v].is_finite() && messages[e].is_finite() {
                            belief[v] - messages[e]
                        } else {
                            var_edges
                                .iter()
                                .filter(|&&f| f != e)
                                .fold(prior[v], |acc, &f| acc + messages[f])
                        };
                    }
                }
            }
        }

        for range in edges.checks() {
            let (ins, outs) = (&inputs[range.clone()], &mut messages[range]);
            check_messages(ins, outs);
        }

        for (v, var_edges) in edges.var_edges.iter().enumerate() {
            let base = match schedule {
                Schedule::Accumulate => belief[v],
                _ => prior[v],
            };
            let llr = var_edges.iter().fold(base, |acc, &e| acc + messages[e]);
            if llr.is_nan() {
                return Err(Error::InconsistentEvidence { var: Some(v) });
            }
            belief[v] = llr;
        }

        let next: Vec<u8> = belief
            .iter()
            .zip(&prior)
            .map(|(&l, &p)| hard_decision(l, p))
            .collect();
        converged = next == hard;
        hard = next;
    }

    Ok(BpRun {
        beliefs: BeliefState::new(belief.into_iter().map(BitBelief::from_llr).collect()),
        hard,
        iterations,
        converged,
    })
}
