//! The pairwise-parity encoding.
//!
//! `N` logical bits `b_1..b_N` are represented by `K = N(N-1)/2` physical
//! bits `g_ij = b_i ^ b_j`, one per unordered pair `i < j`. Logical indices
//! are 1-based throughout this module; physical words are stored in
//! row-major upper-triangular order `(1,2),(1,3),..,(1,N),(2,3),..,(N-1,N)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number of physical bits for `n` logical bits.
pub const fn num_pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Linear position of the pair `(i, j)` among the `N(N-1)/2` pairs.
pub fn pair_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i == 0 || i >= j || j > n {
        return Err(Error::InvalidPair { i, j, n });
    }
    Ok(pair_index_unchecked(i, j, n))
}

#[inline]
pub(crate) fn pair_index_unchecked(i: usize, j: usize, n: usize) -> usize {
    // rows 1..i-1 hold (n-1) + (n-2) + ... + (n-i+1) pairs
    (i - 1) * (2 * n - i) / 2 + (j - i - 1)
}

/// Inverse of [`pair_index`].
pub fn index_pair(index: usize, n: usize) -> Result<(usize, usize)> {
    let pairs = num_pairs(n);
    if index >= pairs {
        return Err(Error::InvalidPairIndex { index, n, pairs });
    }
    let mut rest = index;
    for i in 1..n {
        let row = n - i;
        if rest < row {
            return Ok((i, i + 1 + rest));
        }
        rest -= row;
    }
    unreachable!("index checked against pair count")
}

/// Bijection between pairs `(i, j)` and linear indices for a fixed `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairIndexMap {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl PairIndexMap {
    pub fn new(n: usize) -> Self {
        let pairs = (1..n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        Self { n, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index(&self, i: usize, j: usize) -> Result<usize> {
        pair_index(i, j, self.n)
    }

    pub fn pair(&self, index: usize) -> Result<(usize, usize)> {
        self.pairs.get(index).copied().ok_or(Error::InvalidPairIndex {
            index,
            n: self.n,
            pairs: self.pairs.len(),
        })
    }

    /// All pairs in linear order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

fn check_bits(bits: &[u8]) -> Result<()> {
    match bits.iter().find(|&&b| b > 1) {
        Some(&b) => Err(Error::InvalidBit(b)),
        None => Ok(()),
    }
}

pub(crate) fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::InvalidBitString(s.to_string())),
        })
        .collect()
}

pub(crate) fn write_bits(f: &mut fmt::Formatter<'_>, bits: &[u8]) -> fmt::Result {
    for b in bits {
        write!(f, "{b}")?;
    }
    Ok(())
}

/// Renders a bit slice as a `0`/`1` string.
pub fn bit_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

/// The logical spin bits `b_1..b_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogicalWord {
    bits: Vec<u8>,
}

impl LogicalWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.len() < 2 {
            return Err(Error::InvalidSize {
                n: bits.len(),
                reason: "a logical word needs N >= 2",
            });
        }
        check_bits(&bits)?;
        Ok(Self { bits })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// `b_i`, 1-based.
    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i - 1]
    }

    pub fn complement(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|b| b ^ 1).collect(),
        }
    }

    /// Equal up to the unobservable global flip.
    pub fn is_equivalent(&self, other: &Self) -> bool {
        self.bits.len() == other.bits.len()
            && (self.bits == other.bits || self.bits.iter().zip(&other.bits).all(|(a, b)| a != b))
    }

    /// Rebuilds the gauge-fixed word (`b_1 = 0`) from consecutive parities
    /// `b_i ^ b_{i+1}`.
    pub fn from_consecutive(consecutive: &[u8]) -> Result<Self> {
        check_bits(consecutive)?;
        let mut bits = Vec::with_capacity(consecutive.len() + 1);
        bits.push(0u8);
        for &c in consecutive {
            let last = *bits.last().unwrap();
            bits.push(last ^ c);
        }
        Self::new(bits)
    }
}

impl FromStr for LogicalWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_bits(s)?)
    }
}

impl fmt::Display for LogicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, &self.bits)
    }
}

/// The `K = N(N-1)/2` physical parity bits, ideal or as read out.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhysicalWord {
    n: usize,
    bits: Vec<u8>,
}

impl PhysicalWord {
    pub fn new(n: usize, bits: Vec<u8>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize {
                n,
                reason: "a physical word needs N >= 2",
            });
        }
        if bits.len() != num_pairs(n) {
            return Err(Error::Dimension {
                expected: num_pairs(n),
                actual: bits.len(),
            });
        }
        check_bits(&bits)?;
        Ok(Self { n, bits })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(n, vec![0; num_pairs(n)])
    }

    pub fn parse(n: usize, s: &str) -> Result<Self> {
        Self::new(n, parse_bits(s)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub(crate) fn bits_mut(&mut self) -> &mut [u8] {
        &mut self.bits
    }

    /// `g_ij` for `1 <= i < j <= N`.
    ///
    /// Panics on an invalid pair.
    pub fn get(&self, i: usize, j: usize) -> u8 {
        assert!(i >= 1 && i < j && j <= self.n, "invalid pair ({i}, {j})");
        self.bits[pair_index_unchecked(i, j, self.n)]
    }

    /// `g_ij` with the pair given in either order.
    #[inline]
    pub(crate) fn get_sym(&self, i: usize, j: usize) -> u8 {
        if i < j {
            self.bits[pair_index_unchecked(i, j, self.n)]
        } else {
            self.bits[pair_index_unchecked(j, i, self.n)]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, bit: u8) {
        assert!(i >= 1 && i < j && j <= self.n, "invalid pair ({i}, {j})");
        assert!(bit <= 1, "invalid bit {bit}");
        let idx = pair_index_unchecked(i, j, self.n);
        self.bits[idx] = bit;
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        let bit = self.get(i, j) ^ 1;
        self.set(i, j, bit);
    }

    pub fn hamming_distance(&self, other: &Self) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Whether every triangle parity `g_ij ^ g_jk ^ g_ik` vanishes.
    pub fn is_codeword(&self) -> bool {
        let n = self.n;
        (1..=n).all(|i| {
            (i + 1..=n).all(|j| {
                let gij = self.get_sym(i, j);
                (j + 1..=n).all(|k| gij ^ self.get_sym(j, k) ^ self.get_sym(i, k) == 0)
            })
        })
    }
}

impl fmt::Display for PhysicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, &self.bits)
    }
}

/// `g_ij = b_i ^ b_j` for every pair.
pub fn encode(b: &LogicalWord) -> PhysicalWord {
    let n = b.n();
    let bits = b.bits();
    let mut out = Vec::with_capacity(num_pairs(n));
    for i in 0..n {
        for j in i + 1..n {
            out.push(bits[i] ^ bits[j]);
        }
    }
    PhysicalWord { n, bits: out }
}

/// Gauge-fixed readout from the star variables: `b_1 = 0`, `b_j = g_1j`.
///
/// Works on any hard-decision word; for codewords
/// `encode(&logical_readout(&g)) == g`.
pub fn logical_readout(g: &PhysicalWord) -> LogicalWord {
    let mut bits = Vec::with_capacity(g.n());
    bits.push(0);
    bits.extend((2..=g.n()).map(|j| g.get(1, j)));
    LogicalWord { bits }
}

/// `(g_12, g_23, .., g_{N-1,N})`, the basis in which decoding success is
/// judged.
pub fn consecutive_bits(g: &PhysicalWord) -> Vec<u8> {
    (1..g.n()).map(|i| g.get(i, i + 1)).collect()
}
