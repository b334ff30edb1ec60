//! Input corruption models: uniform noise, normal-directed noise scaled by
//! local feature size, and uniformly distributed outliers.
//!
//! Point `i` draws from its own ChaCha8 stream (`seed`, stream `i`), and the
//! magnitude of a draw is scaled by `delta` only at the end, so the same seed
//! perturbs a point in the same direction at every noise level.

use std::collections::HashSet;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::geometry::{Point2, PointSet};

const MAX_REDRAWS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    Uniform,
    Lfs,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub delta: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutlierSpec {
    pub percent: f64,
    pub seed: u64,
}

fn stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn key(p: Point2) -> (u64, u64) {
    ((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits())
}

fn check_delta(delta: f64) -> Result<()> {
    if delta >= 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!(
            "noise level must be a finite non-negative number, got {delta}"
        )))
    }
}

/// Moves each point with `draw(rng)`, re-drawing on exact collisions with
/// points already placed.
fn displace(
    points: &[Point2],
    seed: u64,
    mut draw: impl FnMut(usize, &mut ChaCha8Rng) -> Point2,
) -> Result<PointSet> {
    let mut placed = HashSet::with_capacity(points.len());
    let mut out = Vec::with_capacity(points.len());
    for i in 0..points.len() {
        let mut rng = stream(seed, i);
        let mut attempt = 0;
        let p = loop {
            let p = draw(i, &mut rng);
            if placed.insert(key(p)) {
                break p;
            }
            attempt += 1;
            if attempt == MAX_REDRAWS {
                return Err(Error::DuplicatePoints {
                    first: out.iter().position(|&q| key(q) == key(p)).unwrap_or(i),
                    second: i,
                });
            }
        };
        out.push(p);
    }
    PointSet::new(out)
}

/// Displaces every point by `sigma` in a uniformly random direction, with
/// `sigma` uniform in `[0, delta * diag]` for the bounding-box diagonal.
pub fn uniform_noise(ps: &PointSet, delta: f64, seed: u64) -> Result<PointSet> {
    check_delta(delta)?;
    let Some(bbox) = ps.bbox() else {
        return Err(invalid("uniform noise needs at least one point"));
    };
    let scale = delta * bbox.diagonal();
    let pts = ps.points();
    displace(pts, seed, |i, rng| {
        let u: f64 = rng.random();
        let angle = rng.random::<f64>() * TAU;
        pts[i] + Point2::new(angle.cos(), angle.sin()) * (u * scale)
    })
}

/// Displaces sample `i` along `normals[i]` by `sigma` uniform in
/// `[-delta * lfs[i], delta * lfs[i]]`.
pub fn lfs_noise(
    ps: &PointSet,
    normals: &[Point2],
    lfs: &[f64],
    delta: f64,
    seed: u64,
) -> Result<PointSet> {
    check_delta(delta)?;
    let n = ps.len();
    if normals.len() != n || lfs.len() != n {
        return Err(invalid(format!(
            "lfs noise needs a normal and a feature size per point: {n} points, {} normals, {} sizes",
            normals.len(),
            lfs.len()
        )));
    }
    let pts = ps.points();
    displace(pts, seed, |i, rng| {
        let u: f64 = rng.random_range(-1.0..=1.0);
        pts[i] + normals[i] * (u * delta * lfs[i])
    })
}

/// Appends `round(percent / 100 * n)` points drawn uniformly in the bounding
/// box, halves rounded up. Existing points keep their indices.
pub fn add_outliers(ps: &PointSet, percent: f64, seed: u64) -> Result<PointSet> {
    if !(percent >= 0.0 && percent.is_finite()) {
        return Err(invalid(format!(
            "outlier percentage must be non-negative, got {percent}"
        )));
    }
    let bbox = ps
        .bbox()
        .filter(|b| b.area() > 0.0)
        .ok_or_else(|| invalid("outliers need a bounding box with positive area"))?;
    let n = ps.len();
    let count = (percent / 100.0 * n as f64 + 0.5).floor() as usize;
    let mut placed: HashSet<(u64, u64)> = ps.points().iter().map(|&p| key(p)).collect();
    let mut out = ps.points().to_vec();
    for k in 0..count {
        let mut rng = stream(seed, k);
        let mut attempt = 0;
        loop {
            let p = Point2::new(
                rng.random_range(bbox.min.x..=bbox.max.x),
                rng.random_range(bbox.min.y..=bbox.max.y),
            );
            if placed.insert(key(p)) {
                out.push(p);
                break;
            }
            attempt += 1;
            if attempt == MAX_REDRAWS {
                return Err(invalid(format!(
                    "could not place outlier {k} without a collision"
                )));
            }
        }
    }
    PointSet::new(out)
}

/// Applies a noise spec; lfs noise requires per-point normals and sizes.
pub fn apply_noise(
    ps: &PointSet,
    spec: &NoiseSpec,
    provenance: Option<(&[Point2], &[f64])>,
) -> Result<PointSet> {
    match spec.kind {
        NoiseKind::Uniform => uniform_noise(ps, spec.delta, spec.seed),
        NoiseKind::Lfs => {
            let (normals, lfs) = provenance
                .ok_or_else(|| invalid("lfs noise needs samples with normals and feature sizes"))?;
            lfs_noise(ps, normals, lfs, spec.delta, spec.seed)
        }
    }
}
