//! Curve-to-curve distances and structural checks.
//!
//! Distances follow closest-point correspondences from dense resamplings of
//! each curve to the other curve's segments, in both directions.

use std::collections::HashSet;

use crate::error::{invalid, Error, Result};
use crate::geometry::{BBox, Point2};
use crate::groundtruth::GroundTruth;
use crate::reconstruction::PolyCurve;
use crate::spatial::SegmentGrid;

/// A resampled point and the index (in sorted edge order) of its edge.
pub type CurveSample = (Point2, usize);

/// One closest-point correspondence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correspondence {
    pub from: Point2,
    pub to: Point2,
    pub distance: f64,
}

/// Points along every edge at arclength steps of at most `spacing`,
/// including both endpoints. Vertices shared by several edges appear once.
pub fn resample_curve(c: &PolyCurve, spacing: f64) -> Result<Vec<CurveSample>> {
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(invalid(format!("spacing must be positive, got {spacing}")));
    }
    let pts = c.points();
    let mut seen = vec![false; pts.len()];
    let mut out = Vec::new();
    for (id, &(a, b)) in c.edges().iter().enumerate() {
        let (pa, pb) = (pts[a], pts[b]);
        let steps = (pa.distance(pb) / spacing).ceil().max(1.0) as usize;
        if !std::mem::replace(&mut seen[a], true) {
            out.push((pa, id));
        }
        for k in 1..steps {
            out.push((pa.lerp(pb, k as f64 / steps as f64), id));
        }
        if !std::mem::replace(&mut seen[b], true) {
            out.push((pb, id));
        }
    }
    Ok(out)
}

fn segments(c: &PolyCurve) -> Vec<(Point2, Point2)> {
    c.edges()
        .iter()
        .map(|&(a, b)| (c.points()[a], c.points()[b]))
        .collect()
}

fn require_edges(c: &PolyCurve, which: &str) -> Result<()> {
    if c.edges().is_empty() {
        Err(Error::UndefinedMetric(format!(
            "{which} curve has no edges"
        )))
    } else {
        Ok(())
    }
}

fn curve_bbox(c: &PolyCurve) -> BBox {
    let used: Vec<Point2> = c
        .edges()
        .iter()
        .flat_map(|&(a, b)| [c.points()[a], c.points()[b]])
        .collect();
    BBox::of(&used).expect("curve has edges")
}

/// Default resampling step: a thousandth of the shorter curve, but no less
/// than `1e-6` of the joint bounding-box diagonal.
pub fn default_spacing(c: &PolyCurve, other: &PolyCurve) -> Result<f64> {
    require_edges(c, "first")?;
    require_edges(other, "second")?;
    let diag = curve_bbox(c).union(&curve_bbox(other)).diagonal();
    let shorter = c.total_length().min(other.total_length());
    let spacing = (shorter / 1000.0).max(1e-6 * diag);
    if spacing > 0.0 {
        Ok(spacing)
    } else {
        Err(Error::UndefinedMetric(
            "both curves have zero extent".into(),
        ))
    }
}

fn segment_key(p: Point2, q: Point2) -> [(u64, u64); 2] {
    let k = |p: Point2| ((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits());
    let (a, b) = (k(p), k(q));
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Closest-point maps from resampled `c` onto the segments of `other`, and
/// from resampled `other` onto the segments of `c`.
///
/// A resampled point whose source edge also appears in the other curve lies
/// on it by construction and maps to itself at distance zero; every other
/// point goes to its nearest point over all segments.
pub fn closest_point_maps(
    c: &PolyCurve,
    other: &PolyCurve,
    spacing: f64,
) -> Result<(Vec<Correspondence>, Vec<Correspondence>)> {
    require_edges(c, "first")?;
    require_edges(other, "second")?;
    let bounds = curve_bbox(c).union(&curve_bbox(other));
    let one_way = |src: &PolyCurve, dst: &PolyCurve| -> Result<Vec<Correspondence>> {
        let dst_segments = segments(dst);
        let shared: HashSet<_> = dst_segments
            .iter()
            .map(|&(a, b)| segment_key(a, b))
            .collect();
        let src_segments = segments(src);
        let grid = SegmentGrid::new(dst_segments, bounds);
        Ok(resample_curve(src, spacing)?
            .into_iter()
            .map(|(from, id)| {
                let (a, b) = src_segments[id];
                if shared.contains(&segment_key(a, b)) {
                    return Correspondence {
                        from,
                        to: from,
                        distance: 0.0,
                    };
                }
                let (to, distance) = grid.nearest(from).expect("non-empty segment set");
                Correspondence { from, to, distance }
            })
            .collect())
    };
    Ok((one_way(c, other)?, one_way(other, c)?))
}

/// Largest correspondence distance over both directions.
pub fn hausdorff(c: &PolyCurve, other: &PolyCurve, spacing: Option<f64>) -> Result<f64> {
    Ok(distances(c, other, spacing)?.0)
}

/// Root mean square correspondence distance over both directions.
pub fn rms(c: &PolyCurve, other: &PolyCurve, spacing: Option<f64>) -> Result<f64> {
    Ok(distances(c, other, spacing)?.1)
}

fn rms_of(d: &[Correspondence], d2: &[Correspondence]) -> f64 {
    let n = (d.len() + d2.len()) as f64;
    let sum: f64 = d.iter().chain(d2).map(|m| m.distance * m.distance).sum();
    (sum / n).sqrt()
}

/// Hausdorff and RMS from a single pair of maps.
pub fn distances(c: &PolyCurve, other: &PolyCurve, spacing: Option<f64>) -> Result<(f64, f64)> {
    let spacing = match spacing {
        Some(s) => s,
        None => default_spacing(c, other)?,
    };
    let (d, d2) = closest_point_maps(c, other, spacing)?;
    let h = d.iter().chain(&d2).map(|m| m.distance).fold(0.0, f64::max);
    // The mean of squares cannot exceed the largest square; rounding in the
    // sum can, so clamp.
    Ok((h, rms_of(&d, &d2).min(h)))
}

/// Whether every vertex has at most two edges, and how many have exactly one.
pub fn is_manifold(c: &PolyCurve) -> (bool, usize) {
    let deg = c.degrees();
    let manifold = deg.iter().all(|&d| d <= 2);
    (manifold, deg.iter().filter(|&&d| d == 1).count())
}

/// Edge-set identity with the ground truth over the same vertex indices.
pub fn exact_match(c: &PolyCurve, g: &GroundTruth) -> Result<bool> {
    if c.vertex_count() != g.vertices().len() {
        return Err(invalid(format!(
            "curve has {} vertices but ground truth has {}",
            c.vertex_count(),
            g.vertices().len()
        )));
    }
    Ok(*c.edges() == g.edge_set())
}

/// Evaluation of one reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    /// `None` when there is no ground truth or the reconstruction is empty.
    pub hausdorff: Option<f64>,
    pub rms: Option<f64>,
    pub manifold: bool,
    pub open_endpoint_count: usize,
    /// `None` without ground truth; `false` when vertex sets differ.
    pub exact: Option<bool>,
    pub runtime_seconds: f64,
}

/// Scores `c` against a reference curve whose vertex indices match the
/// input samples; its geometry should be the unperturbed one.
pub fn evaluate(
    c: &PolyCurve,
    reference: Option<&GroundTruth>,
    runtime_seconds: f64,
) -> MetricsReport {
    let (manifold, open_endpoint_count) = is_manifold(c);
    let mut report = MetricsReport {
        hausdorff: None,
        rms: None,
        manifold,
        open_endpoint_count,
        exact: None,
        runtime_seconds,
    };
    if let Some(g) = reference {
        if let Ok((h, r)) = distances(c, &g.to_curve(), None) {
            report.hausdorff = Some(h);
            report.rms = Some(r);
        }
        report.exact = Some(exact_match(c, g).unwrap_or(false));
    }
    report
}
