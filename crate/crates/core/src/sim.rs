//! Seeded Monte Carlo estimation of logical failure rates, and the
//! Chernoff and union bounds for majority-vote decoding.

use rayon::prelude::*;

use crate::channel::{apply_iid_flip, NoiseModel, RngSeed};
use crate::codes::{consecutive_bits, encode, LogicalWord};
use crate::decoders::{DecoderConfig, DecoderKind, LhzDecoder, Schedule};
use crate::error::{Error, Result};
use crate::factor_graph::GraphKind;

use rand::Rng;

/// Chernoff bound on the majority-vote error of one consecutive pair:
/// `exp(-2 (N-2) (1/2 - eps*)^2)`.
pub fn chernoff_bound(n: usize, model: &NoiseModel) -> f64 {
    let gap = 0.5 - model.epsilon_star();
    (-2.0 * n.saturating_sub(2) as f64 * gap * gap).exp()
}

/// `(N-1)` times [`chernoff_bound`]; may exceed 1, in which case it says
/// nothing.
pub fn union_bound(n: usize, model: &NoiseModel) -> f64 {
    n.saturating_sub(1) as f64 * chernoff_bound(n, model)
}

/// Binomial standard error, or the rule-of-three bound `3 / trials` when
/// nothing was observed.
fn standard_error(count: u64, trials: u64) -> f64 {
    if count == 0 {
        return 3.0 / trials as f64;
    }
    let p = count as f64 / trials as f64;
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// Everything that identifies one cell of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSpec {
    pub decoder: DecoderConfig,
    pub n: usize,
    pub epsilon: f64,
    /// Position of `epsilon` in the sweep's list; part of the seed mix.
    pub epsilon_index: usize,
    pub trials: u64,
    pub seed: u64,
    /// Reuse the same noise stream across decoders for paired comparisons.
    pub shared_noise: bool,
    /// Always send the all-zero logical word instead of a random one.
    pub all_zero: bool,
}

impl CellSpec {
    fn cell_seed(&self) -> RngSeed {
        let decoder_tag = if self.shared_noise { 0 } else { self.decoder.kind.id() };
        RngSeed(self.seed).derive(&[decoder_tag, self.n as u64, self.epsilon_index as u64])
    }
}

/// Aggregated outcome of one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub spec: CellSpec,
    /// Trials in which any consecutive bit was decoded wrong.
    pub failures: u64,
    /// Wrong consecutive bits summed over all trials.
    pub bit_errors: u64,
}

impl CellResult {
    pub fn p_fail(&self) -> f64 {
        self.failures as f64 / self.spec.trials as f64
    }

    pub fn stderr(&self) -> f64 {
        standard_error(self.failures, self.spec.trials)
    }

    /// Mean error rate of a single consecutive pair.
    pub fn pair_fail(&self) -> f64 {
        let pairs = self.spec.n.saturating_sub(1).max(1) as u64;
        self.bit_errors as f64 / (self.spec.trials * pairs) as f64
    }

    /// Standard error of [`pair_fail`](Self::pair_fail) taken over trials
    /// only. Pairs within a trial are correlated, and the average of
    /// correlated indicators varies no more than one indicator does, so
    /// this is conservative.
    pub fn pair_stderr(&self) -> f64 {
        if self.bit_errors == 0 {
            return 3.0 / self.spec.trials as f64;
        }
        let p = self.pair_fail();
        (p * (1.0 - p) / self.spec.trials as f64).sqrt()
    }

    fn model(&self) -> NoiseModel {
        NoiseModel::new(self.spec.epsilon).expect("validated at cell start")
    }

    pub fn chernoff(&self) -> f64 {
        chernoff_bound(self.spec.n, &self.model())
    }

    pub fn union_bound(&self) -> f64 {
        union_bound(self.spec.n, &self.model())
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    failures: u64,
    bit_errors: u64,
}

/// Runs one cell. Trials execute in parallel on the current rayon pool;
/// the result depends only on the spec.
pub fn run_cell(spec: &CellSpec) -> Result<CellResult> {
    if spec.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let model = NoiseModel::new(spec.epsilon)?;
    let decoder = LhzDecoder::new(&spec.decoder, spec.n, model)?;
    let seed = spec.cell_seed();
    let n = spec.n;

    let trial = |t: u64| -> std::result::Result<Tally, (u64, Error)> {
        let mut rng = seed.stream(t);
        let b = if spec.all_zero {
            LogicalWord::zeros(n)
        } else {
            LogicalWord::new((0..n).map(|_| rng.random_range(0..2u8)).collect())
        }
        .map_err(|e| (t, e))?;
        let ideal = encode(&b);
        let observed = apply_iid_flip(&ideal, &model, &mut rng);
        let out = decoder.decode(&observed).map_err(|e| (t, e))?;
        let wrong = consecutive_bits(&ideal)
            .iter()
            .zip(&out.consecutive)
            .filter(|(a, b)| a != b)
            .count() as u64;
        Ok(Tally {
            failures: u64::from(wrong > 0),
            bit_errors: wrong,
        })
    };

    // on failure keep the lowest trial index so errors are reproducible too
    let tally = (0..spec.trials)
        .into_par_iter()
        .map(trial)
        .reduce(
            || Ok(Tally::default()),
            |a, b| match (a, b) {
                (Ok(x), Ok(y)) => Ok(Tally {
                    failures: x.failures + y.failures,
                    bit_errors: x.bit_errors + y.bit_errors,
                }),
                (Err(x), Err(y)) => Err(if x.0 <= y.0 { x } else { y }),
                (Err(x), _) | (_, Err(x)) => Err(x),
            },
        )
        .map_err(|(_, e)| e)?;

    Ok(CellResult {
        spec: *spec,
        failures: tally.failures,
        bit_errors: tally.bit_errors,
    })
}

/// A sweep over decoders x sizes x flip probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub ns: Vec<usize>,
    pub epsilons: Vec<f64>,
    pub trials: u64,
    pub decoders: Vec<DecoderKind>,
    pub iterations: usize,
    pub schedule: Schedule,
    pub include_direct: bool,
    pub graph: GraphKind,
    pub seed: u64,
    pub shared_noise: bool,
    pub all_zero: bool,
    /// Worker threads; `None` uses the global rayon pool. Never affects
    /// results.
    pub threads: Option<usize>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            ns: Vec::new(),
            epsilons: Vec::new(),
            trials: 5000,
            decoders: vec![DecoderKind::Bp],
            iterations: 5,
            schedule: Schedule::PaperLiteral,
            include_direct: false,
            graph: GraphKind::Triangle,
            seed: 0,
            shared_noise: false,
            all_zero: false,
            threads: None,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if let Some(&n) = self.ns.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidSize {
                n,
                reason: "every N must be at least 2",
            });
        }
        if let Some(&e) = self.epsilons.iter().find(|e| !(0.0..=0.5).contains(*e)) {
            return Err(Error::InvalidEpsilon(e));
        }
        if self.iterations == 0 {
            return Err(Error::Config("iterations must be at least 1".into()));
        }
        if self.graph == GraphKind::Hamming {
            return Err(Error::Config("simulation needs an LHZ graph (triangle or planar)".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        Ok(())
    }

    /// Cells in output order: decoder, then N, then epsilon.
    pub fn cells(&self) -> Vec<CellSpec> {
        let mut cells = Vec::new();
        for &kind in &self.decoders {
            let decoder = DecoderConfig {
                kind,
                iterations: self.iterations,
                schedule: self.schedule,
                graph: self.graph,
                include_direct: self.include_direct,
            };
            for &n in &self.ns {
                for (epsilon_index, &epsilon) in self.epsilons.iter().enumerate() {
                    cells.push(CellSpec {
                        decoder,
                        n,
                        epsilon,
                        epsilon_index,
                        trials: self.trials,
                        seed: self.seed,
                        shared_noise: self.shared_noise,
                        all_zero: self.all_zero,
                    });
                }
            }
        }
        cells
    }
}

/// A cell that could not be computed.
#[derive(Debug, Clone, PartialEq)]
pub struct CellError {
    pub spec: CellSpec,
    pub error: Error,
}

/// All cells of a sweep, in order; failed cells keep their place.
#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub cells: Vec<std::result::Result<CellResult, CellError>>,
}

impl SimResult {
    pub fn results(&self) -> impl Iterator<Item = &CellResult> {
        self.cells.iter().filter_map(|c| c.as_ref().ok())
    }

    pub fn errors(&self) -> impl Iterator<Item = &CellError> {
        self.cells.iter().filter_map(|c| c.as_ref().err())
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|c| c.is_ok())
    }
}

/// Runs every cell of `config`. Per-cell failures are recorded and the
/// sweep continues; only an invalid configuration is an error.
pub fn run_sweep(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let run_all = || SimResult {
        cells: config
            .cells()
            .into_iter()
            .map(|spec| run_cell(&spec).map_err(|error| CellError { spec, error }))
            .collect(),
    };
    match config.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(run_all))
        }
        None => Ok(run_all()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(eps: f64) -> NoiseModel {
        NoiseModel::new(eps).unwrap()
    }

    fn cell(kind: DecoderKind, n: usize, eps: f64, trials: u64) -> CellSpec {
        CellSpec {
            decoder: DecoderConfig::new(kind),
            n,
            epsilon: eps,
            epsilon_index: 0,
            trials,
            seed: 7,
            shared_noise: false,
            all_zero: false,
        }
    }

    #[test]
    fn bound_values() {
        for eps in [0.0, 0.1, 0.3, 0.5] {
            assert_eq!(chernoff_bound(2, &model(eps)), 1.0);
            assert_eq!(union_bound(2, &model(eps)), 1.0);
        }
        for n in [2, 10, 40] {
            assert_eq!(chernoff_bound(n, &model(0.5)), 1.0);
        }
        assert!((chernoff_bound(20, &model(0.1)) - (-3.6864f64).exp()).abs() < 1e-12);
        assert!((chernoff_bound(20, &model(0.1)) - 0.0250621).abs() < 1e-7);
        assert!((union_bound(40, &model(0.1)) - 39.0 * (-7.7824f64).exp()).abs() < 1e-12);
        assert!((union_bound(40, &model(0.1)) - 0.0162634).abs() < 1e-7);
        let vacuous = union_bound(10, &model(0.1));
        assert!((vacuous - 9.0 * (-1.6384f64).exp()).abs() < 1e-12);
        assert!(vacuous > 1.0);
    }

    #[test]
    fn zero_noise_never_fails() {
        for kind in [DecoderKind::Majority, DecoderKind::Bp, DecoderKind::Mle] {
            let r = run_cell(&cell(kind, 6, 0.0, 200)).unwrap();
            assert_eq!((r.failures, r.bit_errors), (0, 0), "{kind}");
            assert_eq!(r.stderr(), 3.0 / 200.0);
        }
    }

    #[test]
    fn cell_is_deterministic() {
        let spec = cell(DecoderKind::Bp, 8, 0.15, 500);
        assert_eq!(run_cell(&spec).unwrap(), run_cell(&spec).unwrap());
    }

    #[test]
    fn n2_rate_is_epsilon() {
        let r = run_cell(&cell(DecoderKind::Majority, 2, 0.1, 5000)).unwrap();
        assert!((r.p_fail() - 0.1).abs() < 3.0 * (0.1f64 * 0.9 / 5000.0).sqrt());
    }

    #[test]
    fn sweep_order_and_errors() {
        let config = SimConfig {
            ns: vec![4, 25],
            epsilons: vec![0.1, 0.2],
            trials: 20,
            decoders: vec![DecoderKind::Mle, DecoderKind::Majority],
            ..SimConfig::default()
        };
        let result = run_sweep(&config).unwrap();
        let order: Vec<(DecoderKind, usize, f64)> = result
            .cells
            .iter()
            .map(|c| {
                let s = match c {
                    Ok(r) => r.spec,
                    Err(e) => e.spec,
                };
                (s.decoder.kind, s.n, s.epsilon)
            })
            .collect();
        assert_eq!(
            order,
            vec![
                (DecoderKind::Mle, 4, 0.1),
                (DecoderKind::Mle, 4, 0.2),
                (DecoderKind::Mle, 25, 0.1),
                (DecoderKind::Mle, 25, 0.2),
                (DecoderKind::Majority, 4, 0.1),
                (DecoderKind::Majority, 4, 0.2),
                (DecoderKind::Majority, 25, 0.1),
                (DecoderKind::Majority, 25, 0.2),
            ]
        );
        let errors: Vec<&CellError> = result.errors().collect();
        assert_eq!(errors.len(), 2);
        assert!(errors.iter().all(|e| matches!(e.error, Error::Capacity { .. }) && e.spec.n == 25));
    }

    #[test]
    fn empty_sweep() {
        let config = SimConfig {
            ns: vec![5],
            epsilons: vec![],
            ..SimConfig::default()
        };
        let result = run_sweep(&config).unwrap();
        assert!(result.cells.is_empty() && result.is_complete());
    }

    #[test]
    fn invalid_configs() {
        let base = SimConfig {
            ns: vec![5],
            epsilons: vec![0.1],
            ..SimConfig::default()
        };
        for bad in [
            SimConfig { trials: 0, ..base.clone() },
            SimConfig { ns: vec![1], ..base.clone() },
            SimConfig { epsilons: vec![0.7], ..base.clone() },
            SimConfig { iterations: 0, ..base.clone() },
            SimConfig { graph: GraphKind::Hamming, ..base.clone() },
            SimConfig { threads: Some(0), ..base.clone() },
        ] {
            assert!(run_sweep(&bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn thread_count_does_not_matter() {
        let config = SimConfig {
            ns: vec![3, 7],
            epsilons: vec![0.1, 0.25],
            trials: 300,
            decoders: vec![DecoderKind::Bp, DecoderKind::Majority],
            ..SimConfig::default()
        };
        let one = run_sweep(&SimConfig { threads: Some(1), ..config.clone() }).unwrap();
        let four = run_sweep(&SimConfig { threads: Some(4), ..config }).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn shared_noise_pairs_decoders() {
        // shared noise gives every decoder the same stream
        let mut a = cell(DecoderKind::Majority, 3, 0.2, 1000);
        let mut b = cell(DecoderKind::Mle, 3, 0.2, 1000);
        a.shared_noise = true;
        b.shared_noise = true;
        assert_eq!(a.cell_seed(), b.cell_seed());
        a.shared_noise = false;
        b.shared_noise = false;
        assert_ne!(a.cell_seed(), b.cell_seed());
    }
}
