//! Parity-check matrices, their factor-graph presentations and GF(2)
//! utilities.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::codes::{num_pairs, pair_index_unchecked, PairIndexMap};
use crate::error::{Error, Result};

/// Largest variable count accepted by [`enumerate_codewords`] by default.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;

/// A binary parity-check matrix stored as one variable-index list per check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityCheckMatrix {
    n_vars: usize,
    checks: Vec<Vec<usize>>,
}

impl ParityCheckMatrix {
    pub fn new(n_vars: usize, checks: Vec<Vec<usize>>) -> Result<Self> {
        for (c, check) in checks.iter().enumerate() {
            let mut seen = vec![false; n_vars];
            for &v in check {
                if v >= n_vars || seen[v] {
                    return Err(Error::InvalidCheck {
                        check: c,
                        var: v,
                        n_vars,
                    });
                }
                seen[v] = true;
            }
        }
        Ok(Self { n_vars, checks })
    }

    /// Builds the matrix from dense 0/1 rows.
    pub fn from_dense(rows: &[&[u8]]) -> Result<Self> {
        let n_vars = rows.first().map_or(0, |r| r.len());
        let mut checks = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != n_vars {
                return Err(Error::Dimension {
                    expected: n_vars,
                    actual: row.len(),
                });
            }
            checks.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(v, _)| v)
                    .collect(),
            );
        }
        Self::new(n_vars, checks)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_checks(&self) -> usize {
        self.checks.len()
    }

    pub fn checks(&self) -> &[Vec<usize>] {
        &self.checks
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        self.checks
            .iter()
            .map(|check| {
                let mut row = vec![0; self.n_vars];
                for &v in check {
                    row[v] = 1;
                }
                row
            })
            .collect()
    }

    fn packed_rows(&self) -> Vec<Vec<u64>> {
        let words = self.n_vars.div_ceil(64);
        self.checks
            .iter()
            .map(|check| {
                let mut row = vec![0u64; words];
                for &v in check {
                    row[v / 64] ^= 1 << (v % 64);
                }
                row
            })
            .collect()
    }
}

/// Bipartite variable/check structure with per-variable adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorGraph {
    matrix: ParityCheckMatrix,
    adjacency: Vec<Vec<usize>>,
    labels: Option<PairIndexMap>,
}

impl FactorGraph {
    pub fn from_matrix(matrix: ParityCheckMatrix) -> Self {
        let mut adjacency = vec![Vec::new(); matrix.n_vars()];
        for (c, check) in matrix.checks().iter().enumerate() {
            for &v in check {
                adjacency[v].push(c);
            }
        }
        Self {
            matrix,
            adjacency,
            labels: None,
        }
    }

    fn with_labels(mut self, labels: PairIndexMap) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn matrix(&self) -> &ParityCheckMatrix {
        &self.matrix
    }

    pub fn n_vars(&self) -> usize {
        self.matrix.n_vars()
    }

    pub fn n_checks(&self) -> usize {
        self.matrix.n_checks()
    }

    pub fn checks(&self) -> &[Vec<usize>] {
        self.matrix.checks()
    }

    /// Checks incident to each variable, in increasing check order.
    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    /// Pair labels `(i, j)` for graphs over LHZ physical variables.
    pub fn labels(&self) -> Option<&PairIndexMap> {
        self.labels.as_ref()
    }
}

/// The `[7,4,3]` Hamming code.
pub fn hamming_7_4() -> ParityCheckMatrix {
    ParityCheckMatrix::from_dense(&[
        &[1, 1, 1, 0, 1, 0, 0],
        &[0, 1, 1, 1, 0, 1, 0],
        &[0, 0, 1, 1, 1, 0, 1],
    ])
    .expect("static matrix is valid")
}

fn require_lhz_size(n: usize, what: &'static str) -> Result<()> {
    if n < 3 {
        return Err(Error::DegenerateSize { what, n, min: 3 });
    }
    Ok(())
}

/// One weight-3 check `g_ij ^ g_jk ^ g_ik` per triple `i < j < k`,
/// ordered lexicographically.
pub fn triangle_graph(n: usize) -> Result<FactorGraph> {
    require_lhz_size(n, "triangle graph")?;
    let mut checks = Vec::with_capacity(n * (n - 1) * (n - 2) / 6);
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                checks.push(vec![
                    pair_index_unchecked(i, j, n),
                    pair_index_unchecked(i, k, n),
                    pair_index_unchecked(j, k, n),
                ]);
            }
        }
    }
    let matrix = ParityCheckMatrix::new(num_pairs(n), checks)?;
    Ok(FactorGraph::from_matrix(matrix).with_labels(PairIndexMap::new(n)))
}

/// The geometrically local presentation: `N-2` weight-3 boundary checks
/// `(i,i+1),(i,i+2),(i+1,i+2)` followed by weight-4 plaquettes
/// `(i,j),(i,j+1),(i+1,j),(i+1,j+1)` for `i+2 <= j <= N-1`, row-major.
pub fn planar_lhz_graph(n: usize) -> Result<FactorGraph> {
    require_lhz_size(n, "planar graph")?;
    let idx = |i, j| pair_index_unchecked(i, j, n);
    let mut checks = Vec::with_capacity((n - 1) * (n - 2) / 2);
    for i in 1..=n - 2 {
        checks.push(vec![idx(i, i + 1), idx(i, i + 2), idx(i + 1, i + 2)]);
    }
    for i in 1..=n - 2 {
        for j in i + 2..n {
            checks.push(vec![idx(i, j), idx(i, j + 1), idx(i + 1, j), idx(i + 1, j + 1)]);
        }
    }
    let matrix = ParityCheckMatrix::new(num_pairs(n), checks)?;
    Ok(FactorGraph::from_matrix(matrix).with_labels(PairIndexMap::new(n)))
}

/// Which presentation to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Triangle,
    Planar,
    Hamming,
}

impl GraphKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GraphKind::Triangle => "triangle",
            GraphKind::Planar => "planar",
            GraphKind::Hamming => "hamming",
        }
    }

    /// Builds the graph; `n` is ignored for the Hamming fixture.
    pub fn build(&self, n: usize) -> Result<FactorGraph> {
        match self {
            GraphKind::Triangle => triangle_graph(n),
            GraphKind::Planar => planar_lhz_graph(n),
            GraphKind::Hamming => Ok(FactorGraph::from_matrix(hamming_7_4())),
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangle" => Ok(GraphKind::Triangle),
            "planar" => Ok(GraphKind::Planar),
            "hamming" => Ok(GraphKind::Hamming),
            _ => Err(Error::Config(format!("unknown graph kind {s:?}"))),
        }
    }
}

/// Parity of `w` on each check.
pub fn syndrome(h: &ParityCheckMatrix, w: &[u8]) -> Result<Vec<u8>> {
    if w.len() != h.n_vars() {
        return Err(Error::Dimension {
            expected: h.n_vars(),
            actual: w.len(),
        });
    }
    Ok(h.checks()
        .iter()
        .map(|check| check.iter().fold(0u8, |acc, &v| acc ^ (w[v] & 1)))
        .collect())
}

/// Row-reduces packed rows in place; returns the pivot column of each
/// surviving row, in row order.
fn row_reduce(rows: &mut Vec<Vec<u64>>, n_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n_cols {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Rank over GF(2) by Gaussian elimination.
pub fn gf2_rank(h: &ParityCheckMatrix) -> usize {
    let mut rows = h.packed_rows();
    row_reduce(&mut rows, h.n_vars()).len()
}

/// A basis of the nullspace of `h`, one 0/1 vector per free column.
pub fn nullspace_basis(h: &ParityCheckMatrix) -> Vec<Vec<u8>> {
    let n = h.n_vars();
    let mut rows = h.packed_rows();
    let pivots = row_reduce(&mut rows, n);
    let mut is_pivot = vec![false; n];
    pivots.iter().for_each(|&c| is_pivot[c] = true);

    (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u8; n];
            v[free] = 1;
            let (w, bit) = (free / 64, 1u64 << (free % 64));
            for (row, &p) in rows.iter().zip(&pivots) {
                if row[w] & bit != 0 {
                    v[p] = 1;
                }
            }
            v
        })
        .collect()
}

/// Every codeword of `h`, i.e. its full GF(2) nullspace.
pub fn enumerate_codewords(h: &ParityCheckMatrix, max_vars: usize) -> Result<BTreeSet<Vec<u8>>> {
    if h.n_vars() > max_vars {
        return Err(Error::Capacity {
            what: "codeword enumeration",
            size: h.n_vars(),
            limit: max_vars,
        });
    }
    let basis = nullspace_basis(h);
    let mut word = vec![0u8; h.n_vars()];
    let mut out = BTreeSet::new();
    out.insert(word.clone());
    // Gray-code walk over all combinations of basis vectors
    for step in 1u64..(1u64 << basis.len()) {
        let flip = step.trailing_zeros() as usize;
        word.iter_mut().zip(&basis[flip]).for_each(|(a, b)| *a ^= b);
        out.insert(word.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{encode, LogicalWord, PhysicalWord};

    fn brute_force_codewords(h: &ParityCheckMatrix) -> BTreeSet<Vec<u8>> {
        let n = h.n_vars();
        (0u64..(1 << n))
            .map(|m| (0..n).map(|k| ((m >> k) & 1) as u8).collect::<Vec<u8>>())
            .filter(|w| syndrome(h, w).unwrap().iter().all(|&s| s == 0))
            .collect()
    }

    #[test]
    fn hamming_fixture() {
        let h = hamming_7_4();
        assert_eq!(h.checks()[0], vec![0, 1, 2, 4]);
        assert_eq!(h.checks()[1], vec![1, 2, 3, 5]);
        assert_eq!(h.checks()[2], vec![2, 3, 4, 6]);
        assert_eq!(gf2_rank(&h), 3);
        let words = enumerate_codewords(&h, DEFAULT_ENUMERATION_LIMIT).unwrap();
        assert_eq!(words.len(), 16);
        assert!(words.contains(&vec![0; 7]));
        assert!(words.contains(&vec![1; 7]));
        assert_eq!(words, brute_force_codewords(&h));
    }

    #[test]
    fn hamming_syndrome_of_unit_vector() {
        let h = hamming_7_4();
        assert_eq!(syndrome(&h, &[1, 0, 0, 0, 0, 0, 0]).unwrap(), vec![1, 0, 0]);
        assert!(syndrome(&h, &[1, 0, 0]).is_err());
    }

    #[test]
    fn triangle_sizes() {
        let g = triangle_graph(4).unwrap();
        assert_eq!((g.n_vars(), g.n_checks()), (6, 4));
        assert!(g.adjacency().iter().all(|a| a.len() == 2));

        let g = triangle_graph(3).unwrap();
        assert_eq!((g.n_vars(), g.n_checks()), (3, 1));

        let g = triangle_graph(5).unwrap();
        assert_eq!((g.n_vars(), g.n_checks()), (10, 10));

        assert!(matches!(triangle_graph(2), Err(Error::DegenerateSize { .. })));
        assert!(planar_lhz_graph(2).is_err());
    }

    #[test]
    fn triangle_degrees() {
        for n in 3..=12 {
            let g = triangle_graph(n).unwrap();
            assert!(g.checks().iter().all(|c| c.len() == 3));
            assert!(g.adjacency().iter().all(|a| a.len() == n - 2));
        }
    }

    #[test]
    fn adjacency_is_transpose() {
        for g in [triangle_graph(6).unwrap(), planar_lhz_graph(6).unwrap()] {
            let mut edges_a: Vec<(usize, usize)> = g
                .checks()
                .iter()
                .enumerate()
                .flat_map(|(c, vs)| vs.iter().map(move |&v| (v, c)))
                .collect();
            let mut edges_b: Vec<(usize, usize)> = g
                .adjacency()
                .iter()
                .enumerate()
                .flat_map(|(v, cs)| cs.iter().map(move |&c| (v, c)))
                .collect();
            edges_a.sort();
            edges_b.sort();
            assert_eq!(edges_a, edges_b);
        }
    }

    #[test]
    fn planar_counts() {
        let count = |n| {
            let g = planar_lhz_graph(n).unwrap();
            let w3 = g.checks().iter().filter(|c| c.len() == 3).count();
            let w4 = g.checks().iter().filter(|c| c.len() == 4).count();
            assert_eq!(w3 + w4, g.n_checks());
            (w3, w4)
        };
        assert_eq!(count(4), (2, 1));
        assert_eq!(count(5), (3, 3));
        // boundary checks come first
        let g = planar_lhz_graph(5).unwrap();
        assert!(g.checks()[..3].iter().all(|c| c.len() == 3));
    }

    #[test]
    fn single_flip_fires_two_triangles() {
        let g = triangle_graph(4).unwrap();
        let mut w = PhysicalWord::zeros(4).unwrap();
        w.set(3, 4, 1);
        let s = syndrome(g.matrix(), w.bits()).unwrap();
        // triples in order: 123, 124, 134, 234
        assert_eq!(s, vec![0, 0, 1, 1]);
    }

    #[test]
    fn encoded_words_satisfy_both_presentations() {
        for n in 3..=7 {
            let tri = triangle_graph(n).unwrap();
            let pla = planar_lhz_graph(n).unwrap();
            for m in 0u32..(1 << n) {
                let b = LogicalWord::new((0..n).map(|k| ((m >> k) & 1) as u8).collect()).unwrap();
                let g = encode(&b);
                assert!(syndrome(tri.matrix(), g.bits()).unwrap().iter().all(|&s| s == 0));
                assert!(syndrome(pla.matrix(), g.bits()).unwrap().iter().all(|&s| s == 0));
            }
        }
    }

    #[test]
    fn ranks_match_constraint_count() {
        for n in 3..=12 {
            let k = num_pairs(n);
            assert_eq!(gf2_rank(triangle_graph(n).unwrap().matrix()), k - n + 1, "N={n}");
            assert_eq!(gf2_rank(planar_lhz_graph(n).unwrap().matrix()), k - n + 1, "N={n}");
        }
        assert_eq!(gf2_rank(&ParityCheckMatrix::new(5, vec![vec![], vec![]]).unwrap()), 0);
        assert_eq!(gf2_rank(&triangle_graph(5).unwrap().matrix().clone()), 6);
    }

    #[test]
    fn nullspaces_agree() {
        let tri4 = enumerate_codewords(triangle_graph(4).unwrap().matrix(), 24).unwrap();
        assert_eq!(tri4.len(), 8);
        assert_eq!(tri4, brute_force_codewords(triangle_graph(4).unwrap().matrix()));
        for n in 3..=7 {
            let tri = enumerate_codewords(triangle_graph(n).unwrap().matrix(), 24).unwrap();
            let pla = enumerate_codewords(planar_lhz_graph(n).unwrap().matrix(), 24).unwrap();
            assert_eq!(tri, pla, "N={n}");
            let image: BTreeSet<Vec<u8>> = (0u32..(1 << n))
                .map(|m| {
                    let b = LogicalWord::new((0..n).map(|k| ((m >> k) & 1) as u8).collect()).unwrap();
                    encode(&b).bits().to_vec()
                })
                .collect();
            assert_eq!(tri, image, "N={n}");
        }
    }

    #[test]
    fn enumeration_capacity() {
        let g = triangle_graph(8).unwrap();
        assert!(matches!(
            enumerate_codewords(g.matrix(), 24),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn rejects_invalid_checks() {
        assert!(ParityCheckMatrix::new(3, vec![vec![0, 3]]).is_err());
        assert!(ParityCheckMatrix::new(3, vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn syndrome_is_linear() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let g = planar_lhz_graph(7).unwrap();
        for _ in 0..50 {
            let u: Vec<u8> = (0..g.n_vars()).map(|_| rng.random_range(0..2)).collect();
            let v: Vec<u8> = (0..g.n_vars()).map(|_| rng.random_range(0..2)).collect();
            let uv: Vec<u8> = u.iter().zip(&v).map(|(a, b)| a ^ b).collect();
            let su = syndrome(g.matrix(), &u).unwrap();
            let sv = syndrome(g.matrix(), &v).unwrap();
            let expect: Vec<u8> = su.iter().zip(&sv).map(|(a, b)| a ^ b).collect();
            assert_eq!(syndrome(g.matrix(), &uv).unwrap(), expect);
        }
    }
}
