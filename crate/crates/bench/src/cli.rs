//! Command-line front end.

use std::fs;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use curvebench_core::bezier::{random_closed_curve, BezierCurveSpec};
use curvebench_core::metrics::evaluate;
use curvebench_core::raster::{dart_sample, extract_image_boundary, BinaryImage};
use curvebench_core::sampling::{sample_closed_curve, SamplingSpec};
use curvebench_core::{AlgorithmId, GroundTruth, PointSet};
use serde::Deserialize;

use crate::cases::GENERATED_CONTROLS;
use crate::report::{curve_text, write_report};
use crate::suite::{run_suite, SuiteConfig, SuiteKind, DEFAULT_DENSE_RESOLUTION};

/// Curve reconstruction benchmark. Without a subcommand, reconstructs the
/// point set given with -i.
#[derive(Debug, Parser)]
#[command(name = "curvebench", version, args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    /// Point-set file, one "x y" pair per line.
    #[arg(short = 'i', long)]
    pub input: Option<PathBuf>,
    /// Where to write the reconstructed curve (stdout when omitted).
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    /// crust, nncrust, hnncrust, emst or alphadisc:<radius>.
    #[arg(short = 'a', long, default_value = "nncrust")]
    pub algorithm: AlgorithmId,
    /// Ground-truth file to score the reconstruction against.
    #[arg(short = 'g', long)]
    pub ground_truth: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Epsilon-sampled generated curves at each epsilon level.
    RunSampling(SuiteArgs),
    /// Uniform noise at each delta level.
    RunNoisy(SuiteArgs),
    /// Normal-directed lfs-scaled noise at each delta level.
    RunLfsnoise(SuiteArgs),
    /// Fixed lfs noise on samplings at each epsilon level.
    RunSamplingNoise(SuiteArgs),
    /// Uniform outliers at each percentage level.
    RunOutliers(SuiteArgs),
    /// Clean inputs: exactness and runtimes.
    RunManifold(SuiteArgs),
    /// Open-curve fixtures (pass them with --cases).
    RunOpenCurves(SuiteArgs),
    /// Fixtures with several components.
    RunMultipleCurves(SuiteArgs),
    /// Fixtures with sharp corners.
    RunSharpCorners(SuiteArgs),
    /// Fixtures with self-intersections.
    RunIntersecting(SuiteArgs),
    /// Non-manifold fixtures.
    RunNonManifold(SuiteArgs),
    /// Epsilon-sample a closed Bézier curve into a point set and ground truth.
    Sample(SampleArgs),
    /// Dart-sample the boundary of a binary PGM image.
    Dart(DartArgs),
    /// Serve point sets to the ground-truth ordering tool.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct SuiteArgs {
    /// TOML file with any of the options below; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated algorithm names.
    #[arg(short = 'a', long = "algorithms", value_delimiter = ',')]
    pub algorithms: Vec<AlgorithmId>,
    /// Comma-separated levels (epsilon, delta or outlier percentage).
    #[arg(long, value_delimiter = ',')]
    pub levels: Vec<f64>,
    /// Number of generated curves (20 when no --cases are given, else 0).
    #[arg(long)]
    pub generated: Option<usize>,
    /// Fixture directory; may be repeated.
    #[arg(long = "cases")]
    pub cases: Vec<PathBuf>,
    #[arg(long, env = "CURVEBENCH_SEED")]
    pub seed: Option<u64>,
    /// Report directory.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub base_epsilon: Option<f64>,
    #[arg(long)]
    pub noise_delta: Option<f64>,
    #[arg(long)]
    pub dense_resolution: Option<usize>,
    #[arg(long)]
    pub dart_radius: Option<f64>,
}

/// Suite options read from a TOML file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteFile {
    pub algorithms: Option<Vec<String>>,
    pub levels: Option<Vec<f64>>,
    pub generated: Option<usize>,
    pub cases: Option<Vec<PathBuf>>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub base_epsilon: Option<f64>,
    pub noise_delta: Option<f64>,
    pub dense_resolution: Option<usize>,
    pub dart_radius: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    /// Closed Bézier curve file.
    #[arg(
        long,
        conflicts_with = "generated_seed",
        required_unless_present = "generated_seed"
    )]
    pub bezier: Option<PathBuf>,
    /// Use a random smooth closed curve from this seed instead.
    #[arg(long)]
    pub generated_seed: Option<u64>,
    #[arg(short = 'e', long, default_value_t = 0.3)]
    pub epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_DENSE_RESOLUTION)]
    pub dense_resolution: usize,
    /// Point-set output; the ground truth goes next to it with extension .gt.
    #[arg(short = 'o', long)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct DartArgs {
    #[arg(short = 'i', long)]
    pub image: PathBuf,
    #[arg(short = 'r', long)]
    pub radius: f64,
    #[arg(long, env = "CURVEBENCH_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(short = 'o', long)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    /// Directory of point-set files.
    #[arg(long, default_value = ".")]
    pub root: PathBuf,
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: IpAddr,
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Resolves a suite configuration: defaults, then the TOML file, then flags
/// (a seed from `CURVEBENCH_SEED` counts as a flag).
pub fn suite_config(suite: SuiteKind, args: &SuiteArgs) -> Result<SuiteConfig> {
    let file = match &args.config {
        Some(path) => toml::from_str::<SuiteFile>(&read_text(path)?)
            .with_context(|| format!("in {}", path.display()))?,
        None => SuiteFile::default(),
    };
    let mut cfg = SuiteConfig::new(suite);
    if let Some(names) = &file.algorithms {
        cfg.algorithms = names
            .iter()
            .map(|n| n.parse::<AlgorithmId>())
            .collect::<Result<_, _>>()?;
    }
    if !args.algorithms.is_empty() {
        cfg.algorithms = args.algorithms.clone();
    }
    if let Some(levels) = file.levels {
        cfg.levels = levels;
    }
    if !args.levels.is_empty() {
        cfg.levels = args.levels.clone();
    }
    cfg.cases.dirs = if args.cases.is_empty() {
        file.cases.unwrap_or_default()
    } else {
        args.cases.clone()
    };
    let default_generated = if cfg.cases.dirs.is_empty() { 20 } else { 0 };
    cfg.cases.generated = args
        .generated
        .or(file.generated)
        .unwrap_or(default_generated);
    cfg.seed = args.seed.or(file.seed).unwrap_or(cfg.seed);
    cfg.output_dir = args
        .output
        .clone()
        .or(file.output)
        .unwrap_or(cfg.output_dir);
    cfg.jobs = args.jobs.or(file.jobs).unwrap_or(cfg.jobs);
    cfg.base_epsilon = args
        .base_epsilon
        .or(file.base_epsilon)
        .unwrap_or(cfg.base_epsilon);
    cfg.noise_delta = args
        .noise_delta
        .or(file.noise_delta)
        .unwrap_or(cfg.noise_delta);
    cfg.dense_resolution = args
        .dense_resolution
        .or(file.dense_resolution)
        .unwrap_or(cfg.dense_resolution);
    cfg.dart_radius = args
        .dart_radius
        .or(file.dart_radius)
        .unwrap_or(cfg.dart_radius);
    cfg.validate()?;
    Ok(cfg)
}

fn run_suite_command(suite: SuiteKind, args: &SuiteArgs) -> Result<()> {
    let cfg = suite_config(suite, args)?;
    let report = run_suite(&cfg)?;
    let files = write_report(&report, &cfg.output_dir)?;
    for a in &report.aggregates {
        println!(
            "{} {} level={} succeeded={}/{} mean_rms={} exact%={}",
            suite,
            a.algorithm,
            a.level,
            a.succeeded,
            a.cases,
            a.mean_rms.map_or("-".into(), |v| format!("{v:.6}")),
            a.exact_percent.map_or("-".into(), |v| format!("{v:.1}")),
        );
    }
    println!(
        "wrote {} and {}",
        files.rows.display(),
        files.aggregates.display()
    );
    Ok(())
}

fn reconstruct(cli: &Cli) -> Result<()> {
    let Some(input) = &cli.input else {
        bail!("no input: pass -i <points file> or a subcommand (see -h)");
    };
    let ps = PointSet::parse_text(&read_text(input)?)
        .with_context(|| format!("in {}", input.display()))?;
    let start = std::time::Instant::now();
    let curve = cli.algorithm.run(&ps)?;
    let elapsed = start.elapsed().as_secs_f64();
    let gt = match &cli.ground_truth {
        Some(path) => Some(
            GroundTruth::parse_text(&read_text(path)?)
                .with_context(|| format!("in {}", path.display()))?,
        ),
        None => None,
    };
    let m = evaluate(&curve, gt.as_ref(), elapsed);
    let mut summary = format!(
        "points={} edges={} manifold={} open_endpoints={} runtime_ms={:.3}",
        ps.len(),
        curve.edges().len(),
        m.manifold,
        m.open_endpoint_count,
        elapsed * 1e3
    );
    if gt.is_some() {
        let cell = |v: Option<f64>| v.map_or("undefined".into(), |v| v.to_string());
        summary.push_str(&format!(
            " hausdorff={} rms={} exact={}",
            cell(m.hausdorff),
            cell(m.rms),
            m.exact.unwrap_or(false)
        ));
    }
    let text = curve_text(&curve)?;
    match &cli.output {
        Some(path) => {
            write_text(path, &text)?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn sample(args: &SampleArgs) -> Result<()> {
    let spec = match (&args.bezier, args.generated_seed) {
        (Some(path), _) => BezierCurveSpec::parse_text(&read_text(path)?)
            .with_context(|| format!("in {}", path.display()))?,
        (None, Some(seed)) => random_closed_curve(seed, GENERATED_CONTROLS)?,
        (None, None) => bail!("pass --bezier or --generated-seed"),
    };
    let s = sample_closed_curve(
        &spec,
        &SamplingSpec::new(args.epsilon, args.dense_resolution)?,
    )?;
    write_text(&args.output, &s.points.to_text())?;
    let gt_path = args.output.with_extension("gt");
    write_text(&gt_path, &s.ground_truth.to_text())?;
    println!(
        "{} samples -> {} and {}",
        s.points.len(),
        args.output.display(),
        gt_path.display()
    );
    Ok(())
}

fn dart(args: &DartArgs) -> Result<()> {
    let bytes =
        fs::read(&args.image).with_context(|| format!("cannot read {}", args.image.display()))?;
    let img =
        BinaryImage::from_pgm(&bytes).with_context(|| format!("in {}", args.image.display()))?;
    let ps = dart_sample(&extract_image_boundary(&img), args.radius, args.seed)?;
    write_text(&args.output, &ps.to_text())?;
    println!("{} samples -> {}", ps.len(), args.output.display());
    Ok(())
}

fn serve(args: &ServeArgs) -> Result<()> {
    let rt = tokio::runtime::Runtime::new().context("cannot start runtime")?;
    rt.block_on(crate::serve::serve(
        args.root.clone(),
        SocketAddr::new(args.host, args.port),
    ))
}

pub fn run(cli: Cli) -> Result<()> {
    let Some(command) = &cli.command else {
        return reconstruct(&cli);
    };
    let (kind, args) = match command {
        Command::RunSampling(a) => (SuiteKind::Sampling, a),
        Command::RunNoisy(a) => (SuiteKind::Noisy, a),
        Command::RunLfsnoise(a) => (SuiteKind::LfsNoise, a),
        Command::RunSamplingNoise(a) => (SuiteKind::SamplingNoise, a),
        Command::RunOutliers(a) => (SuiteKind::Outliers, a),
        Command::RunManifold(a) => (SuiteKind::Manifold, a),
        Command::RunOpenCurves(a) => (SuiteKind::OpenCurves, a),
        Command::RunMultipleCurves(a) => (SuiteKind::MultipleCurves, a),
        Command::RunSharpCorners(a) => (SuiteKind::SharpCorners, a),
        Command::RunIntersecting(a) => (SuiteKind::Intersecting, a),
        Command::RunNonManifold(a) => (SuiteKind::NonManifold, a),
        Command::Sample(a) => return sample(a),
        Command::Dart(a) => return dart(a),
        Command::Serve(a) => return serve(a),
    };
    run_suite_command(kind, args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn paper_style_flags_parse() {
        let cli = Cli::try_parse_from([
            "curvebench",
            "-i",
            "in.pts",
            "-o",
            "out.gt",
            "-a",
            "crust",
            "-g",
            "gt.gt",
        ])
        .unwrap();
        assert_eq!(cli.algorithm, AlgorithmId::Crust);
        assert_eq!(cli.ground_truth.as_deref(), Some(Path::new("gt.gt")));
        let err = Cli::try_parse_from(["curvebench", "-i", "x", "-a", "bogus"]).unwrap_err();
        assert!(err.to_string().contains("nncrust"), "{err}");
    }

    #[test]
    fn flags_override_file_which_overrides_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("suite.toml");
        fs::write(
            &path,
            "algorithms = [\"emst\"]\nlevels = [0.01]\nseed = 9\njobs = 2\n",
        )
        .unwrap();
        let args = SuiteArgs {
            config: Some(path.clone()),
            seed: Some(4),
            ..SuiteArgs::default()
        };
        let cfg = suite_config(SuiteKind::Noisy, &args).unwrap();
        assert_eq!(cfg.algorithms, [AlgorithmId::EmstCurve]);
        assert_eq!(cfg.levels, [0.01]);
        assert_eq!(cfg.seed, 4);
        assert_eq!(cfg.jobs, 2);
        assert_eq!(cfg.cases.generated, 20);
        fs::write(&path, "colour = 1\n").unwrap();
        assert!(suite_config(SuiteKind::Noisy, &args).is_err());
    }

    #[test]
    fn cases_dirs_disable_generated_default() {
        let args = SuiteArgs {
            cases: vec![PathBuf::from("fixtures")],
            ..SuiteArgs::default()
        };
        let cfg = suite_config(SuiteKind::OpenCurves, &args).unwrap();
        assert_eq!(cfg.cases.generated, 0);
        assert_eq!(cfg.levels, [0.3]);
    }
}
