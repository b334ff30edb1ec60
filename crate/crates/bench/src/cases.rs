//! Benchmark inputs: the corpus entries a suite draws from and the concrete
//! test cases materialized from them per level.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use curvebench_core::bezier::{random_closed_curve, BezierCurveSpec};
use curvebench_core::perturb::{NoiseSpec, OutlierSpec};
use curvebench_core::raster::{dart_sample, extract_image_boundary, BinaryImage};
use curvebench_core::{GroundTruth, PointSet};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Control points of generated curves.
pub const GENERATED_CONTROLS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClassicFile,
    GeneratedBezier,
    ImageSampled,
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::ClassicFile => "CLASSIC_FILE",
            Provenance::GeneratedBezier => "GENERATED_BEZIER",
            Provenance::ImageSampled => "IMAGE_SAMPLED",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Perturbation {
    Noise(NoiseSpec),
    Outliers(OutlierSpec),
}

/// One reconstruction input. `ground_truth`, when present, is indexed like
/// the unperturbed samples and carries their clean positions.
#[derive(Debug, Clone, PartialEq)]
pub struct TestCase {
    pub id: String,
    pub input: PointSet,
    pub ground_truth: Option<GroundTruth>,
    pub provenance: Provenance,
    pub perturbation: Option<Perturbation>,
}

/// Where a corpus entry's samples come from.
#[derive(Debug, Clone, PartialEq)]
pub enum CaseSource {
    /// A fixed point set, possibly with ground truth.
    Points {
        points: PointSet,
        ground_truth: Option<GroundTruth>,
    },
    /// A closed curve that is epsilon-sampled on demand.
    Bezier(BezierCurveSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub id: String,
    pub source: CaseSource,
    pub provenance: Provenance,
}

/// Two independent seeds for corpus entry `index`: one for its shape, one
/// for its perturbations.
pub fn entry_seeds(seed: u64, index: usize) -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    (rng.next_u64(), rng.next_u64())
}

/// `count` random smooth closed curves with ids `gen-000`, `gen-001`, ...
pub fn generated_corpus(count: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    (0..count)
        .map(|k| {
            let (shape, _) = entry_seeds(seed, k);
            Ok(CorpusEntry {
                id: format!("gen-{k:03}"),
                source: CaseSource::Bezier(random_closed_curve(shape, GENERATED_CONTROLS)?),
                provenance: Provenance::GeneratedBezier,
            })
        })
        .collect()
}

/// Loads every recognised file of `dir` in file-name order:
///
/// * `*.pts` / `*.txt` point sets, with ground truth from `<stem>.gt` if present;
/// * `*.bez` closed Bézier curves;
/// * `*.pgm` binary images, dart-sampled along their boundary with `dart_radius`.
pub fn load_dir(dir: &Path, dart_radius: f64, seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot list {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()
        .with_context(|| format!("cannot list {}", dir.display()))?;
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let Some(ext) = path.extension().and_then(|e| e.to_str()) else {
            continue;
        };
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .with_context(|| format!("non-UTF-8 file name {}", path.display()))?
            .to_string();
        let entry = match ext {
            "pts" | "txt" => load_points(&path, &stem)?,
            "bez" => {
                let text = read_text(&path)?;
                let spec = BezierCurveSpec::parse_text(&text)
                    .with_context(|| format!("in {}", path.display()))?;
                if !spec.is_closed() {
                    bail!(
                        "{}: only closed curves can be epsilon-sampled",
                        path.display()
                    );
                }
                CorpusEntry {
                    id: stem,
                    source: CaseSource::Bezier(spec),
                    provenance: Provenance::GeneratedBezier,
                }
            }
            "pgm" => {
                let bytes =
                    fs::read(&path).with_context(|| format!("cannot read {}", path.display()))?;
                let img = BinaryImage::from_pgm(&bytes)
                    .with_context(|| format!("in {}", path.display()))?;
                let points = dart_sample(&extract_image_boundary(&img), dart_radius, seed)
                    .with_context(|| format!("in {}", path.display()))?;
                CorpusEntry {
                    id: stem,
                    source: CaseSource::Points {
                        points,
                        ground_truth: None,
                    },
                    provenance: Provenance::ImageSampled,
                }
            }
            _ => continue,
        };
        if out.iter().any(|e: &CorpusEntry| e.id == entry.id) {
            bail!("{}: duplicate case id {:?}", dir.display(), entry.id);
        }
        out.push(entry);
    }
    Ok(out)
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_points(path: &Path, stem: &str) -> Result<CorpusEntry> {
    let points = PointSet::parse_text(&read_text(path)?)
        .with_context(|| format!("in {}", path.display()))?;
    let gt_path = path.with_extension("gt");
    let ground_truth = if gt_path.exists() {
        let gt = GroundTruth::parse_text(&read_text(&gt_path)?)
            .with_context(|| format!("in {}", gt_path.display()))?;
        if gt.vertices().len() != points.len() {
            bail!(
                "{}: {} vertices but the point set has {}",
                gt_path.display(),
                gt.vertices().len(),
                points.len()
            );
        }
        Some(gt)
    } else {
        None
    };
    Ok(CorpusEntry {
        id: stem.to_string(),
        source: CaseSource::Points {
            points,
            ground_truth,
        },
        provenance: Provenance::ClassicFile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_ids_and_determinism() {
        let a = generated_corpus(3, 11).unwrap();
        let ids: Vec<&str> = a.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["gen-000", "gen-001", "gen-002"]);
        assert_eq!(a, generated_corpus(3, 11).unwrap());
        assert_ne!(a[0], a[1]);
        assert_ne!(a[0].source, generated_corpus(1, 12).unwrap()[0].source);
    }

    #[test]
    fn entry_seeds_differ_by_index() {
        assert_ne!(entry_seeds(5, 0), entry_seeds(5, 1));
        let (a, b) = entry_seeds(5, 0);
        assert_ne!(a, b);
    }

    #[test]
    fn loads_points_ground_truth_curves_and_images() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path();
        fs::write(p.join("tri.pts"), "0 0\n1 0\n0 1\n").unwrap();
        fs::write(p.join("tri.gt"), "GT-ORDERED 3 closed\n0 0\n1 0\n0 1\n").unwrap();
        fs::write(p.join("loose.txt"), "# comment\n0 0\n2 1\n").unwrap();
        fs::write(
            p.join("circle.bez"),
            curvebench_core::bezier::unit_circle().to_text(),
        )
        .unwrap();
        let mut img = BinaryImage::black(12, 12).unwrap();
        for r in 2..10 {
            for c in 2..10 {
                img.set(c, r, true);
            }
        }
        fs::write(p.join("blob.pgm"), img.to_pgm()).unwrap();
        fs::write(p.join("notes.md"), "ignored").unwrap();
        let corpus = load_dir(p, 2.0, 1).unwrap();
        let ids: Vec<&str> = corpus.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["blob", "circle", "loose", "tri"]);
        assert_eq!(corpus[0].provenance, Provenance::ImageSampled);
        assert!(matches!(corpus[1].source, CaseSource::Bezier(_)));
        assert!(matches!(
            &corpus[2].source,
            CaseSource::Points {
                ground_truth: None,
                ..
            }
        ));
        assert!(matches!(
            &corpus[3].source,
            CaseSource::Points {
                ground_truth: Some(_),
                ..
            }
        ));
    }

    #[test]
    fn mismatched_ground_truth_is_reported_with_path() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.pts"), "0 0\n1 0\n0 1\n").unwrap();
        fs::write(dir.path().join("a.gt"), "GT-ORDERED 2 open\n0 0\n1 0\n").unwrap();
        let err = load_dir(dir.path(), 1.0, 0).unwrap_err().to_string();
        assert!(err.contains("a.gt"), "{err}");
        assert!(load_dir(&dir.path().join("missing"), 1.0, 0).is_err());
    }
}
