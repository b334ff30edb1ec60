//! Feature-size estimation and greedy epsilon-sampling of dense curves.

use crate::bezier::{dense_sample, BezierCurveSpec, DenseCurveSample};
use crate::error::{invalid, Error, Result};
use crate::geometry::{Point2, PointSet};
use crate::groundtruth::GroundTruth;

/// Approximate medial-axis points.
#[derive(Debug, Clone, PartialEq)]
pub struct MedialApprox {
    pub points: Vec<Point2>,
}

/// Parameters of an epsilon-sampling run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingSpec {
    pub epsilon: f64,
    pub dense_resolution: usize,
    pub seed: u64,
}

impl SamplingSpec {
    pub fn new(epsilon: f64, dense_resolution: usize) -> Result<Self> {
        let spec = SamplingSpec {
            epsilon,
            dense_resolution,
            seed: 0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(invalid(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.dense_resolution < 64 {
            return Err(invalid(format!(
                "dense resolution must be at least 64, got {}",
                self.dense_resolution
            )));
        }
        Ok(())
    }
}

/// Selected samples together with the dense-sample data they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonSampling {
    pub points: PointSet,
    pub ground_truth: GroundTruth,
    pub dense_indices: Vec<usize>,
    pub normals: Vec<Point2>,
    pub lfs: Vec<f64>,
}

/// For every sample, the largest empty disk tangent to the curve there on
/// each side; the disk centres approximate the medial axis.
///
/// The disk centred at `s + t n` touching `s` also touches another sample
/// `x` when `t = |x - s|^2 / (2 n.(x - s))`; the smallest such `|t|` per side
/// bounds the empty disk.
pub fn approx_medial_axis(d: &DenseCurveSample) -> Result<MedialApprox> {
    if !d.is_closed() {
        return Err(invalid("medial-axis approximation requires a closed curve"));
    }
    let s = d.samples();
    let mut points = Vec::new();
    for (i, (&si, &ni)) in s.iter().zip(d.normals()).enumerate() {
        let mut pos = f64::INFINITY;
        let mut neg = f64::NEG_INFINITY;
        for (j, &sj) in s.iter().enumerate() {
            if j == i {
                continue;
            }
            let dv = sj - si;
            let t = dv.norm_squared() / (2.0 * ni.dot(dv));
            if !t.is_finite() {
                continue;
            }
            if t > 0.0 {
                pos = pos.min(t);
            } else if t < 0.0 {
                neg = neg.max(t);
            }
        }
        for t in [pos, neg] {
            if t.is_finite() {
                points.push(si + ni * t);
            }
        }
    }
    if points.is_empty() {
        return Err(Error::DegenerateInput("no medial points found".into()));
    }
    Ok(MedialApprox { points })
}

/// Distance from every sample to its nearest medial point.
pub fn compute_lfs(d: DenseCurveSample, m: &MedialApprox) -> Result<DenseCurveSample> {
    if m.points.is_empty() {
        return Err(invalid("medial approximation is empty"));
    }
    let lfs = d
        .samples()
        .iter()
        .map(|&s| {
            m.points
                .iter()
                .map(|&c| c.distance(s))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    d.with_lfs(lfs)
}

/// Greedy walk from sample 0: from each selected sample, advance while the
/// chord stays shorter than `epsilon` times the smallest feature size seen
/// so far in the step, and select the last sample that qualified.
///
/// On closed curves the last selection is merged into the start when it
/// lies within half a step of it, re-inserting a midpoint if that leaves a
/// gap the walk would not have accepted.
pub fn epsilon_sample(d: &DenseCurveSample, spec: &SamplingSpec) -> Result<EpsilonSampling> {
    spec.validate()?;
    let lfs = d
        .lfs()
        .ok_or_else(|| invalid("epsilon sampling needs feature sizes; run compute_lfs first"))?;
    let s = d.samples();
    let n = s.len();
    let eps = spec.epsilon;
    let closed = d.is_closed();
    let end = if closed { n } else { n - 1 };
    let lfs_at = |k: usize| lfs[k % n];
    let min_lfs = |a: usize, b: usize| (a..=b).map(lfs_at).fold(f64::INFINITY, f64::min);

    let mut selected = vec![0usize];
    let mut i = 0;
    loop {
        let mut m = lfs_at(i);
        let mut last = i;
        for j in i + 1..=end {
            m = m.min(lfs_at(j));
            if s[i].distance(s[j % n]) < eps * m {
                last = j;
            } else {
                break;
            }
        }
        if last == i {
            last = i + 1;
        }
        if last == end {
            if !closed {
                selected.push(end);
            }
            break;
        }
        selected.push(last);
        i = last;
    }

    if closed && selected.len() > 3 {
        let p = *selected.last().unwrap();
        if s[p].distance(s[0]) < 0.5 * eps * lfs_at(p).min(lfs_at(0)) {
            selected.pop();
            let q = *selected.last().unwrap();
            if s[q].distance(s[0]) >= eps * min_lfs(q, n) {
                selected.push((q + n) / 2);
            }
        }
    }
    if closed && selected.len() < 3 {
        return Err(invalid(format!(
            "epsilon {eps} selects only {} samples on a closed curve",
            selected.len()
        )));
    }

    let points: Vec<Point2> = selected.iter().map(|&k| s[k]).collect();
    Ok(EpsilonSampling {
        ground_truth: GroundTruth::ordered(points.clone(), closed)?,
        points: PointSet::new(points)?,
        normals: selected.iter().map(|&k| d.normals()[k]).collect(),
        lfs: selected.iter().map(|&k| lfs[k]).collect(),
        dense_indices: selected,
    })
}

/// Dense samples farther than `epsilon * lfs` (plus one local dense step)
/// from every selected sample.
pub fn epsilon_violations(d: &DenseCurveSample, selected: &[Point2], epsilon: f64) -> Vec<usize> {
    let Some(lfs) = d.lfs() else {
        return (0..d.len()).collect();
    };
    d.samples()
        .iter()
        .enumerate()
        .filter(|&(k, &x)| {
            let nearest = selected
                .iter()
                .map(|&p| p.distance(x))
                .fold(f64::INFINITY, f64::min);
            nearest >= epsilon * lfs[k] + d.local_step(k)
        })
        .map(|(k, _)| k)
        .collect()
}

/// Dense sampling, feature-size estimation and epsilon-sampling in one call.
pub fn sample_closed_curve(
    spec: &BezierCurveSpec,
    sampling: &SamplingSpec,
) -> Result<EpsilonSampling> {
    let dense = with_estimated_lfs(spec, sampling.dense_resolution)?;
    epsilon_sample(&dense, sampling)
}

/// Dense sampling with feature sizes estimated from the approximate medial
/// axis.
pub fn with_estimated_lfs(spec: &BezierCurveSpec, resolution: usize) -> Result<DenseCurveSample> {
    let dense = dense_sample(spec, resolution)?;
    let medial = approx_medial_axis(&dense)?;
    compute_lfs(dense, &medial)
}
