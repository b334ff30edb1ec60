//! Suite configuration and the factorial runner over cases, levels and
//! algorithms.

use std::cell::OnceCell;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use curvebench_core::bezier::DenseCurveSample;
use curvebench_core::metrics::{evaluate, MetricsReport};
use curvebench_core::perturb::{add_outliers, apply_noise, NoiseKind, NoiseSpec, OutlierSpec};
use curvebench_core::sampling::{
    epsilon_sample, with_estimated_lfs, EpsilonSampling, SamplingSpec,
};
use curvebench_core::{AlgorithmId, PolyCurve};
use rayon::prelude::*;

use crate::cases::{
    entry_seeds, generated_corpus, load_dir, CaseSource, CorpusEntry, Perturbation, TestCase,
};

/// Which experiment a suite reproduces. The last five run the clean-input
/// machinery of [`SuiteKind::Manifold`] over whatever fixtures are supplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Sampling,
    Noisy,
    LfsNoise,
    SamplingNoise,
    Outliers,
    Manifold,
    OpenCurves,
    MultipleCurves,
    SharpCorners,
    Intersecting,
    NonManifold,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 11] = [
        SuiteKind::Sampling,
        SuiteKind::Noisy,
        SuiteKind::LfsNoise,
        SuiteKind::SamplingNoise,
        SuiteKind::Outliers,
        SuiteKind::Manifold,
        SuiteKind::OpenCurves,
        SuiteKind::MultipleCurves,
        SuiteKind::SharpCorners,
        SuiteKind::Intersecting,
        SuiteKind::NonManifold,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            SuiteKind::Sampling => "SAMPLING",
            SuiteKind::Noisy => "NOISY",
            SuiteKind::LfsNoise => "LFSNOISE",
            SuiteKind::SamplingNoise => "SAMPLING_NOISE",
            SuiteKind::Outliers => "OUTLIERS",
            SuiteKind::Manifold => "MANIFOLD",
            SuiteKind::OpenCurves => "OPEN_CURVES",
            SuiteKind::MultipleCurves => "MULTIPLE_CURVES",
            SuiteKind::SharpCorners => "SHARP_CORNERS",
            SuiteKind::Intersecting => "INTERSECTING",
            SuiteKind::NonManifold => "NON_MANIFOLD",
        }
    }

    /// Default levels: epsilon, noise delta or outlier percentage.
    pub fn default_levels(&self) -> Vec<f64> {
        match self {
            SuiteKind::Sampling => vec![0.25, 0.5, 0.75],
            SuiteKind::Noisy => vec![0.003, 0.01, 0.03],
            SuiteKind::LfsNoise => vec![0.1, 1.0 / 3.0, 0.5],
            SuiteKind::SamplingNoise => vec![0.1, 0.2, 0.4],
            SuiteKind::Outliers => vec![5.0, 10.0, 20.0],
            _ => vec![DEFAULT_BASE_EPSILON],
        }
    }

    /// True when the level is an epsilon.
    fn level_is_epsilon(&self) -> bool {
        !matches!(
            self,
            SuiteKind::Noisy | SuiteKind::LfsNoise | SuiteKind::Outliers
        )
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SuiteKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        SuiteKind::ALL
            .into_iter()
            .find(|k| k.tag() == norm)
            .with_context(|| format!("unknown suite {s:?}"))
    }
}

pub const DEFAULT_BASE_EPSILON: f64 = 0.3;
pub const DEFAULT_NOISE_DELTA: f64 = 1.0 / 3.0;
pub const DEFAULT_DENSE_RESOLUTION: usize = 128;
pub const DEFAULT_DART_RADIUS: f64 = 3.0;

/// Inputs of a suite: generated curves first, then each directory in order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CaseSelection {
    pub generated: usize,
    pub dirs: Vec<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suite: SuiteKind,
    pub algorithms: Vec<AlgorithmId>,
    pub levels: Vec<f64>,
    pub cases: CaseSelection,
    pub seed: u64,
    pub output_dir: PathBuf,
    /// Epsilon of the clean sampling perturbed by the noise and outlier suites.
    pub base_epsilon: f64,
    /// Fixed lfs-noise level of the sampling-with-noise suite.
    pub noise_delta: f64,
    pub dense_resolution: usize,
    pub dart_radius: f64,
    /// Worker threads; 0 picks one per core.
    pub jobs: usize,
}

impl SuiteConfig {
    /// Defaults for `suite`: the three Delaunay-filter reconstructions on 20
    /// generated curves.
    pub fn new(suite: SuiteKind) -> Self {
        SuiteConfig {
            suite,
            algorithms: vec![
                AlgorithmId::Crust,
                AlgorithmId::NnCrust,
                AlgorithmId::HnnCrust,
            ],
            levels: suite.default_levels(),
            cases: CaseSelection {
                generated: 20,
                dirs: Vec::new(),
            },
            seed: 0,
            output_dir: PathBuf::from("results"),
            base_epsilon: DEFAULT_BASE_EPSILON,
            noise_delta: DEFAULT_NOISE_DELTA,
            dense_resolution: DEFAULT_DENSE_RESOLUTION,
            dart_radius: DEFAULT_DART_RADIUS,
            jobs: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(
            !self.algorithms.is_empty(),
            "at least one algorithm is required"
        );
        ensure!(!self.levels.is_empty(), "at least one level is required");
        for alg in &self.algorithms {
            alg.validate()?;
        }
        for &level in &self.levels {
            if self.suite.level_is_epsilon() {
                SamplingSpec::new(level, self.dense_resolution)
                    .with_context(|| format!("level {level} of {}", self.suite))?;
            } else {
                ensure!(
                    level >= 0.0 && level.is_finite(),
                    "level {level} of {} must be finite and non-negative",
                    self.suite
                );
            }
        }
        SamplingSpec::new(self.base_epsilon, self.dense_resolution).context("base epsilon")?;
        ensure!(
            self.noise_delta >= 0.0 && self.noise_delta.is_finite(),
            "noise delta must be finite and non-negative"
        );
        ensure!(
            self.dart_radius > 0.0 && self.dart_radius.is_finite(),
            "dart radius must be positive"
        );
        Ok(())
    }
}

/// Result of one reconstruction.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Reconstructed {
        curve: PolyCurve,
        metrics: MetricsReport,
    },
    Failed {
        error: String,
    },
}

impl Outcome {
    pub fn metrics(&self) -> Option<&MetricsReport> {
        match self {
            Outcome::Reconstructed { metrics, .. } => Some(metrics),
            Outcome::Failed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteRow {
    pub case: String,
    pub algorithm: AlgorithmId,
    pub level: f64,
    /// Input size, or 0 when the input could not be prepared.
    pub points: usize,
    pub has_ground_truth: bool,
    pub outcome: Outcome,
}

/// Per (algorithm, level) summary. Means are over successful rows that
/// define the quantity; `None` when there are none.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub algorithm: AlgorithmId,
    pub level: f64,
    pub cases: usize,
    pub succeeded: usize,
    pub mean_rms: Option<f64>,
    pub mean_hausdorff: Option<f64>,
    /// Share of rows with ground truth that are exact, in percent; failed
    /// rows count as not exact.
    pub exact_percent: Option<f64>,
    pub mean_runtime_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: SuiteKind,
    pub rows: Vec<SuiteRow>,
    pub aggregates: Vec<Aggregate>,
}

impl SuiteReport {
    pub fn aggregate(&self, algorithm: &AlgorithmId, level: f64) -> Option<&Aggregate> {
        self.aggregates
            .iter()
            .find(|a| a.algorithm == *algorithm && a.level == level)
    }
}

/// Runs one reconstruction with wall-clock timing of the algorithm alone.
/// Algorithm failures become [`Outcome::Failed`]; only an invalid algorithm
/// configuration is an error.
pub fn run_case(case: &TestCase, alg: &AlgorithmId) -> Result<Outcome> {
    alg.validate()?;
    let start = Instant::now();
    let result = alg.run(&case.input);
    let elapsed = start.elapsed().as_secs_f64();
    Ok(match result {
        Err(e) => Outcome::Failed {
            error: e.to_string(),
        },
        Ok(curve) if curve.edges().is_empty() => Outcome::Failed {
            error: "reconstruction has no edges".into(),
        },
        Ok(curve) => {
            let metrics = evaluate(&curve, case.ground_truth.as_ref(), elapsed);
            Outcome::Reconstructed { curve, metrics }
        }
    })
}

/// Loads the configured corpus.
pub fn load_corpus(cfg: &SuiteConfig) -> Result<Vec<CorpusEntry>> {
    let mut corpus = generated_corpus(cfg.cases.generated, cfg.seed)?;
    for dir in &cfg.cases.dirs {
        corpus.extend(load_dir(dir, cfg.dart_radius, cfg.seed)?);
    }
    for (i, e) in corpus.iter().enumerate() {
        if corpus[..i].iter().any(|o| o.id == e.id) {
            bail!("case id {:?} appears more than once", e.id);
        }
    }
    Ok(corpus)
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let corpus = load_corpus(cfg)?;
    run_suite_on(cfg, &corpus)
}

/// Full factorial over `corpus` x levels x algorithms. Cases are spread over
/// a worker pool; rows come back in corpus, level, algorithm order.
pub fn run_suite_on(cfg: &SuiteConfig, corpus: &[CorpusEntry]) -> Result<SuiteReport> {
    cfg.validate()?;
    ensure!(!corpus.is_empty(), "the case list is empty");
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .context("cannot start worker pool")?;
    let per_case: Vec<Result<Vec<SuiteRow>>> = pool.install(|| {
        corpus
            .par_iter()
            .enumerate()
            .map(|(i, entry)| run_entry(cfg, i, entry))
            .collect()
    });
    let mut rows = Vec::with_capacity(corpus.len() * cfg.levels.len() * cfg.algorithms.len());
    for r in per_case {
        rows.extend(r?);
    }
    let aggregates = aggregate(cfg, &rows);
    Ok(SuiteReport {
        suite: cfg.suite,
        rows,
        aggregates,
    })
}

fn run_entry(cfg: &SuiteConfig, index: usize, entry: &CorpusEntry) -> Result<Vec<SuiteRow>> {
    let (_, noise_seed) = entry_seeds(cfg.seed, index);
    let prep = Preparer::new(cfg, entry, noise_seed);
    let has_ground_truth = match &entry.source {
        CaseSource::Points { ground_truth, .. } => ground_truth.is_some(),
        CaseSource::Bezier(_) => true,
    };
    let mut rows = Vec::new();
    for &level in &cfg.levels {
        let case = prep.case(level);
        for alg in &cfg.algorithms {
            let (points, outcome) = match &case {
                Ok(c) => (c.input.len(), run_case(c, alg)?),
                Err(error) => (
                    0,
                    Outcome::Failed {
                        error: error.clone(),
                    },
                ),
            };
            rows.push(SuiteRow {
                case: entry.id.clone(),
                algorithm: *alg,
                level,
                points,
                has_ground_truth,
                outcome,
            });
        }
    }
    Ok(rows)
}

/// Builds the per-level test cases of one corpus entry, caching the dense
/// sample and the clean base sampling across levels.
struct Preparer<'a> {
    cfg: &'a SuiteConfig,
    entry: &'a CorpusEntry,
    noise_seed: u64,
    dense: OnceCell<Result<DenseCurveSample, String>>,
    base: OnceCell<Result<EpsilonSampling, String>>,
}

impl<'a> Preparer<'a> {
    fn new(cfg: &'a SuiteConfig, entry: &'a CorpusEntry, noise_seed: u64) -> Self {
        Preparer {
            cfg,
            entry,
            noise_seed,
            dense: OnceCell::new(),
            base: OnceCell::new(),
        }
    }

    fn dense(&self) -> Result<&DenseCurveSample, String> {
        let CaseSource::Bezier(spec) = &self.entry.source else {
            return Err("epsilon-sampling needs a curve description".into());
        };
        self.dense
            .get_or_init(|| {
                with_estimated_lfs(spec, self.cfg.dense_resolution).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn sample(&self, epsilon: f64) -> Result<EpsilonSampling, String> {
        let spec =
            SamplingSpec::new(epsilon, self.cfg.dense_resolution).map_err(|e| e.to_string())?;
        epsilon_sample(self.dense()?, &spec).map_err(|e| e.to_string())
    }

    fn base(&self) -> Result<&EpsilonSampling, String> {
        self.base
            .get_or_init(|| self.sample(self.cfg.base_epsilon))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn case(&self, level: f64) -> Result<TestCase, String> {
        let suite = self.cfg.suite;
        let clean = |s: &EpsilonSampling| TestCase {
            id: self.entry.id.clone(),
            input: s.points.clone(),
            ground_truth: Some(s.ground_truth.clone()),
            provenance: self.entry.provenance,
            perturbation: None,
        };
        let lfs_noisy = |s: &EpsilonSampling, delta: f64| -> Result<TestCase, String> {
            let spec = NoiseSpec {
                kind: NoiseKind::Lfs,
                delta,
                seed: self.noise_seed,
            };
            let input = apply_noise(&s.points, &spec, Some((&s.normals, &s.lfs)))
                .map_err(|e| e.to_string())?;
            Ok(TestCase {
                input,
                perturbation: Some(Perturbation::Noise(spec)),
                ..clean(s)
            })
        };
        match suite {
            SuiteKind::Sampling => Ok(clean(&self.sample(level)?)),
            SuiteKind::SamplingNoise => lfs_noisy(&self.sample(level)?, self.cfg.noise_delta),
            SuiteKind::LfsNoise => lfs_noisy(self.base()?, level),
            SuiteKind::Noisy | SuiteKind::Outliers => {
                let clean_case = self.clean_input(None)?;
                let (input, perturbation) = if suite == SuiteKind::Noisy {
                    let spec = NoiseSpec {
                        kind: NoiseKind::Uniform,
                        delta: level,
                        seed: self.noise_seed,
                    };
                    (
                        apply_noise(&clean_case.input, &spec, None),
                        Perturbation::Noise(spec),
                    )
                } else {
                    let spec = OutlierSpec {
                        percent: level,
                        seed: self.noise_seed,
                    };
                    (
                        add_outliers(&clean_case.input, spec.percent, spec.seed),
                        Perturbation::Outliers(spec),
                    )
                };
                Ok(TestCase {
                    input: input.map_err(|e| e.to_string())?,
                    perturbation: Some(perturbation),
                    ..clean_case
                })
            }
            _ => self.clean_input(Some(level)),
        }
    }

    /// The unperturbed input: the fixed point set, or the sampling at
    /// `epsilon` (the base epsilon when `None`).
    fn clean_input(&self, epsilon: Option<f64>) -> Result<TestCase, String> {
        match &self.entry.source {
            CaseSource::Points {
                points,
                ground_truth,
            } => Ok(TestCase {
                id: self.entry.id.clone(),
                input: points.clone(),
                ground_truth: ground_truth.clone(),
                provenance: self.entry.provenance,
                perturbation: None,
            }),
            CaseSource::Bezier(_) => {
                let s = match epsilon {
                    Some(e) if e != self.cfg.base_epsilon => &self.sample(e)?,
                    _ => self.base()?,
                };
                Ok(TestCase {
                    id: self.entry.id.clone(),
                    input: s.points.clone(),
                    ground_truth: Some(s.ground_truth.clone()),
                    provenance: self.entry.provenance,
                    perturbation: None,
                })
            }
        }
    }
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

fn aggregate(cfg: &SuiteConfig, rows: &[SuiteRow]) -> Vec<Aggregate> {
    let mut out = Vec::with_capacity(cfg.algorithms.len() * cfg.levels.len());
    for alg in &cfg.algorithms {
        for &level in &cfg.levels {
            let group: Vec<&SuiteRow> = rows
                .iter()
                .filter(|r| r.algorithm == *alg && r.level == level)
                .collect();
            let ok: Vec<&MetricsReport> =
                group.iter().filter_map(|r| r.outcome.metrics()).collect();
            let with_truth = group.iter().filter(|r| r.has_ground_truth).count();
            let exact = ok.iter().filter(|m| m.exact == Some(true)).count();
            out.push(Aggregate {
                algorithm: *alg,
                level,
                cases: group.len(),
                succeeded: ok.len(),
                mean_rms: mean(ok.iter().filter_map(|m| m.rms)),
                mean_hausdorff: mean(ok.iter().filter_map(|m| m.hausdorff)),
                exact_percent: (with_truth > 0).then(|| 100.0 * exact as f64 / with_truth as f64),
                mean_runtime_seconds: mean(ok.iter().map(|m| m.runtime_seconds)),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for k in SuiteKind::ALL {
            assert_eq!(k.tag().parse::<SuiteKind>().unwrap(), k);
        }
        assert_eq!(
            "sampling-noise".parse::<SuiteKind>().unwrap(),
            SuiteKind::SamplingNoise
        );
        assert!("bogus".parse::<SuiteKind>().is_err());
    }

    #[test]
    fn default_levels() {
        assert_eq!(SuiteKind::Outliers.default_levels(), [5.0, 10.0, 20.0]);
        assert_eq!(SuiteKind::LfsNoise.default_levels()[1], 1.0 / 3.0);
        assert_eq!(SuiteKind::Manifold.default_levels(), [0.3]);
        assert_eq!(SuiteKind::NonManifold.default_levels(), [0.3]);
    }

    #[test]
    fn config_validation() {
        let mut cfg = SuiteConfig::new(SuiteKind::Sampling);
        cfg.validate().unwrap();
        cfg.levels = vec![1.5];
        assert!(cfg.validate().is_err());
        cfg.levels.clear();
        assert!(cfg.validate().is_err());
        let mut cfg = SuiteConfig::new(SuiteKind::Outliers);
        cfg.algorithms = vec![AlgorithmId::AlphaDisc(0.0)];
        assert!(cfg.validate().is_err());
        cfg.algorithms.clear();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn mean_of_nothing_is_none() {
        assert_eq!(mean(std::iter::empty()), None);
        assert_eq!(mean([1.0, 3.0].into_iter()), Some(2.0));
    }
}
