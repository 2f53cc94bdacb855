use lhz_ldpc::prelude::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Exact error probability of the majority rule for one pair: `m` votes,
/// each wrong with probability `eps*`; a tie falls back to the pair's own
/// readout, which is wrong with probability `eps`.
fn majority_error_exact(m: u64, eps: f64) -> f64 {
    let es = 2.0 * eps * (1.0 - eps);
    let term = |w: u64| binomial(m, w) * es.powi(w as i32) * (1.0 - es).powi((m - w) as i32);
    let mut p: f64 = (0..=m).filter(|&w| 2 * w > m).map(term).sum();
    if m.is_multiple_of(2) {
        p += term(m / 2) * eps;
    }
    p
}

#[test]
fn majority_reduces_to_repetition_code() {
    let trials = 10_000u64;
    for (n, eps) in [(4usize, 0.1), (6, 0.1), (9, 0.2), (12, 0.15), (7, 0.3)] {
        let model = NoiseModel::new(eps).unwrap();
        let seed = RngSeed(1000 + n as u64);
        let zero = PhysicalWord::zeros(n).unwrap();
        let wrong = (0..trials)
            .filter(|&t| {
                let g = apply_iid_flip(&zero, &model, &mut seed.stream(t));
                majority_vote_decode(&g, false).consecutive[0] == 1
            })
            .count() as f64;
        let p_hat = wrong / trials as f64;
        let exact = majority_error_exact(n as u64 - 2, eps);
        let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!(
            (p_hat - exact).abs() <= 3.0 * sigma,
            "N={n} eps={eps}: p_hat={p_hat} exact={exact}"
        );
        // the Chernoff expression bounds the exact value
        assert!(exact <= chernoff_bound(n, &model));
    }
}

/// Exact marginals by enumerating every assignment that satisfies all
/// checks.
fn brute_force_marginals(h: &ParityCheckMatrix, priors: &[BitBelief]) -> Vec<f64> {
    let n = h.n_vars();
    let mut p0 = vec![0.0; n];
    let mut z = 0.0;
    for m in 0u32..(1 << n) {
        let x: Vec<u8> = (0..n).map(|k| ((m >> k) & 1) as u8).collect();
        if syndrome(h, &x).unwrap().contains(&1) {
            continue;
        }
        let w: f64 = x
            .iter()
            .zip(priors)
            .map(|(&b, p)| if b == 0 { p.p0() } else { p.p1() })
            .product();
        z += w;
        for v in 0..n {
            if x[v] == 0 {
                p0[v] += w;
            }
        }
    }
    p0.iter().map(|p| p / z).collect()
}

fn tree_fixtures() -> Vec<ParityCheckMatrix> {
    vec![
        ParityCheckMatrix::new(3, vec![vec![0, 1, 2]]).unwrap(),
        ParityCheckMatrix::new(4, vec![vec![0, 1, 2, 3]]).unwrap(),
        ParityCheckMatrix::new(7, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]]).unwrap(),
        ParityCheckMatrix::new(8, vec![vec![0, 1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]]).unwrap(),
        ParityCheckMatrix::new(9, vec![vec![0, 1, 2], vec![2, 3, 4], vec![2, 5, 6], vec![6, 7, 8]]).unwrap(),
    ]
}

#[test]
fn bp_is_exact_on_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for h in tree_fixtures() {
        let graph = FactorGraph::from_matrix(h.clone());
        for _ in 0..10 {
            let priors: Vec<BitBelief> = (0..h.n_vars())
                .map(|_| {
                    let p: f64 = rng.random_range(0.05..0.95);
                    BitBelief::new(p, 1.0 - p)
                })
                .collect();
            let exact = brute_force_marginals(&h, &priors);
            let run = bp_decode(&graph, &BeliefState::new(priors.clone()), 10, Schedule::Extrinsic).unwrap();
            for (b, e) in run.beliefs.iter().zip(&exact) {
                assert!((b.p0() - e).abs() < 1e-9, "{h:?}: {} vs {e}", b.p0());
            }
        }
    }
}

#[test]
fn default_schedule_single_iteration_exact_on_single_check() {
    let h = ParityCheckMatrix::new(3, vec![vec![0, 1, 2]]).unwrap();
    let priors = vec![BitBelief::new(0.9, 0.1), BitBelief::new(0.9, 0.1), BitBelief::new(0.1, 0.9)];
    let exact = brute_force_marginals(&h, &priors);
    assert!((exact[0] - 0.162 / 0.244).abs() < 1e-12);
    let run = bp_decode(&FactorGraph::from_matrix(h), &BeliefState::new(priors), 1, Schedule::PaperLiteral).unwrap();
    for (b, e) in run.beliefs.iter().zip(&exact) {
        assert!((b.p0() - e).abs() < 1e-9);
    }
}

#[test]
fn bp_beliefs_stay_normalized() {
    let model = NoiseModel::new(0.15).unwrap();
    for n in [5, 10, 20] {
        for graph_kind in [GraphKind::Triangle, GraphKind::Planar] {
            let graph = graph_kind.build(n).unwrap();
            for t in 0..10 {
                let g = apply_iid_flip(&PhysicalWord::zeros(n).unwrap(), &model, &mut RngSeed(5).stream(t));
                for schedule in [Schedule::PaperLiteral, Schedule::Extrinsic, Schedule::Accumulate] {
                    for iters in 1..=5 {
                        let run = bp_decode(&graph, &channel_prior(&g, &model), iters, schedule).unwrap();
                        assert!(run.beliefs.max_normalization_error() < 1e-9);
                        assert!(run.beliefs.iter().all(|b| (0.0..=1.0).contains(&b.p0())));
                    }
                }
            }
        }
    }
}

#[test]
fn mle_dominates_on_shared_noise() {
    let trials = 2000;
    let cell = |kind| CellSpec {
        decoder: DecoderConfig::new(kind),
        n: 6,
        epsilon: 0.2,
        epsilon_index: 0,
        trials,
        seed: 2016,
        shared_noise: true,
        all_zero: false,
    };
    let mle = run_cell(&cell(DecoderKind::Mle)).unwrap();
    for other in [DecoderKind::Bp, DecoderKind::Majority] {
        let r = run_cell(&cell(other)).unwrap();
        let sigma = (mle.stderr().powi(2) + r.stderr().powi(2)).sqrt();
        assert!(mle.p_fail() <= r.p_fail() + 3.0 * sigma, "{other}: {} vs {}", mle.p_fail(), r.p_fail());
    }
}

#[test]
fn mle_failure_never_exceeds_others_per_realization_distance() {
    // on each realization MLE's codeword is at least as close to the
    // readout as any codeword another decoder lands on
    let model = NoiseModel::new(0.25).unwrap();
    let n = 6;
    let bp = LhzDecoder::new(&DecoderConfig::new(DecoderKind::Bp), n, model).unwrap();
    for t in 0..300 {
        let g = apply_iid_flip(&PhysicalWord::zeros(n).unwrap(), &model, &mut RngSeed(77).stream(t));
        let best = mle_decode(&g, &model).unwrap();
        for other in [majority_vote_decode(&g, false), bp.decode(&g).unwrap()] {
            let codeword = encode(&other.logical());
            assert!(best.word.hamming_distance(&g) <= codeword.hamming_distance(&g));
        }
    }
}

fn permute(g: &PhysicalWord, perm: &[usize]) -> PhysicalWord {
    // perm[i - 1] is the new label of logical bit i
    let n = g.n();
    let mut out = PhysicalWord::zeros(n).unwrap();
    for i in 1..=n {
        for j in i + 1..=n {
            let (a, b) = (perm[i - 1], perm[j - 1]);
            out.set(a.min(b), a.max(b), g.get(i, j));
        }
    }
    out
}

fn unique_nearest(g: &PhysicalWord) -> bool {
    let n = g.n();
    let mut dists: Vec<usize> = (0u32..(1 << (n - 1)))
        .map(|m| {
            let bits = std::iter::once(0).chain((0..n - 1).map(|k| ((m >> k) & 1) as u8)).collect();
            encode(&LogicalWord::new(bits).unwrap()).hamming_distance(g)
        })
        .collect();
    dists.sort();
    dists[0] < dists[1]
}

#[test]
fn decoders_commute_with_relabeling() {
    let n = 6;
    let model = NoiseModel::new(0.2).unwrap();
    let bp = LhzDecoder::new(&DecoderConfig::new(DecoderKind::Bp), n, model).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut mle_checked = 0;
    for t in 0..100 {
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rng);
        let g = apply_iid_flip(&PhysicalWord::zeros(n).unwrap(), &model, &mut RngSeed(9).stream(t));
        let pg = permute(&g, &perm);

        assert_eq!(permute(&majority_vote_decode(&g, false).word, &perm), majority_vote_decode(&pg, false).word);
        assert_eq!(permute(&majority_vote_decode(&g, true).word, &perm), majority_vote_decode(&pg, true).word);

        let a = bp.decode(&g).unwrap();
        let b = bp.decode(&pg).unwrap();
        let (ba, bb) = (a.beliefs.unwrap(), b.beliefs.unwrap());
        let map = PairIndexMap::new(n);
        for (idx, &(i, j)) in map.pairs().iter().enumerate() {
            let (x, y) = (perm[i - 1], perm[j - 1]);
            let pidx = pair_index(x.min(y), x.max(y), n).unwrap();
            assert!((ba[idx].p0() - bb[pidx].p0()).abs() < 1e-9);
        }
        assert_eq!(permute(&a.word, &perm), b.word);

        if unique_nearest(&g) {
            mle_checked += 1;
            let ma = mle_decode(&g, &model).unwrap();
            let mb = mle_decode(&pg, &model).unwrap();
            assert_eq!(permute(&ma.word, &perm), mb.word);
        }
    }
    assert!(mle_checked > 50);
}

#[test]
fn outcomes_are_self_consistent() {
    let model = NoiseModel::new(0.2).unwrap();
    let n = 7;
    for kind in [DecoderKind::Majority, DecoderKind::Bp, DecoderKind::Mle] {
        let dec = LhzDecoder::new(&DecoderConfig::new(kind), n, model).unwrap();
        for t in 0..50 {
            let g = apply_iid_flip(&PhysicalWord::zeros(n).unwrap(), &model, &mut RngSeed(4).stream(t));
            let out = dec.decode(&g).unwrap();
            assert_eq!(out.consecutive, consecutive_bits(&out.word));
            assert_eq!(out.consecutive.len(), n - 1);
        }
    }
}

proptest! {
    #[test]
    fn codewords_decode_to_themselves(bits in prop::collection::vec(0u8..2, 2..9)) {
        let b = LogicalWord::new(bits).unwrap();
        let g = encode(&b);
        let model = NoiseModel::new(0.1).unwrap();
        for kind in [DecoderKind::Majority, DecoderKind::Bp, DecoderKind::Mle] {
            let out = LhzDecoder::new(&DecoderConfig::new(kind), b.n(), model).unwrap().decode(&g).unwrap();
            prop_assert!(out.logical().is_equivalent(&b));
            prop_assert_eq!(&out.word, &g);
        }
    }

    #[test]
    fn encoded_words_have_zero_syndrome(bits in prop::collection::vec(0u8..2, 3..16)) {
        let b = LogicalWord::new(bits).unwrap();
        let g = encode(&b);
        for graph in [triangle_graph(b.n()).unwrap(), planar_lhz_graph(b.n()).unwrap()] {
            prop_assert!(syndrome(graph.matrix(), g.bits()).unwrap().iter().all(|&s| s == 0));
        }
        prop_assert_eq!(encode(&logical_readout(&g)), g);
    }
}
