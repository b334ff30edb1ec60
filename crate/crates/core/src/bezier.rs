//! Piecewise cubic Bézier curves: text format, fixed shapes and random
//! smooth closed curves, and dense parametric sampling with normals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::error::{invalid, parse_err, Result};
use crate::geometry::Point2;

/// Magic handle length for approximating a quarter circle with one cubic.
pub const CIRCLE_HANDLE: f64 = 0.5522847498;

/// A chain of cubic Bézier segments sharing endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierCurveSpec {
    segments: Vec<[Point2; 4]>,
    closed: bool,
}

impl BezierCurveSpec {
    /// Consecutive segments must share endpoints exactly, and a closed chain
    /// must end where it starts.
    pub fn new(segments: Vec<[Point2; 4]>, closed: bool) -> Result<Self> {
        if segments.is_empty() {
            return Err(invalid("a Bézier curve needs at least one segment"));
        }
        for (k, seg) in segments.iter().enumerate() {
            if let Some(i) = seg.iter().position(|p| !p.is_finite()) {
                return Err(invalid(format!(
                    "segment {k}: control point {i} is not finite"
                )));
            }
        }
        for k in 1..segments.len() {
            if segments[k - 1][3] != segments[k][0] {
                return Err(invalid(format!(
                    "segment {k} does not start where segment {} ends",
                    k - 1
                )));
            }
        }
        if closed && segments[segments.len() - 1][3] != segments[0][0] {
            return Err(invalid("closed curve does not end at its start point"));
        }
        Ok(BezierCurveSpec { segments, closed })
    }

    pub fn segments(&self) -> &[[Point2; 4]] {
        &self.segments
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Parses a `closed`/`open` header followed by one segment per line as
    /// `x0 y0 x1 y1 x2 y2 x3 y3`. Blank lines and `#` comments are ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut closed = None;
        let mut segments = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let line_no = lineno + 1;
            if closed.is_none() {
                closed = Some(match line {
                    "closed" => true,
                    "open" => false,
                    _ => return Err(parse_err(line_no, "expected header 'closed' or 'open'")),
                });
                continue;
            }
            let vals = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|e| parse_err(line_no, e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != 8 {
                return Err(parse_err(
                    line_no,
                    format!("expected 8 numbers per segment, got {}", vals.len()),
                ));
            }
            segments.push([
                Point2::new(vals[0], vals[1]),
                Point2::new(vals[2], vals[3]),
                Point2::new(vals[4], vals[5]),
                Point2::new(vals[6], vals[7]),
            ]);
        }
        let closed = closed.ok_or_else(|| parse_err(1, "missing 'closed'/'open' header"))?;
        BezierCurveSpec::new(segments, closed)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from(if self.closed { "closed\n" } else { "open\n" });
        for seg in &self.segments {
            let _ = writeln!(s, "{} {} {} {}", seg[0], seg[1], seg[2], seg[3]);
        }
        s
    }

    /// Point on segment `k` at parameter `t` in `[0, 1]`.
    pub fn eval(&self, k: usize, t: f64) -> Point2 {
        let [p0, p1, p2, p3] = self.segments[k];
        let u = 1.0 - t;
        p0 * (u * u * u) + p1 * (3.0 * u * u * t) + p2 * (3.0 * u * t * t) + p3 * (t * t * t)
    }

    /// Applies `f` to every control point.
    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> BezierCurveSpec {
        BezierCurveSpec {
            segments: self.segments.iter().map(|s| s.map(&f)).collect(),
            closed: self.closed,
        }
    }
}

/// Unit circle centred at the origin from four quarter-circle cubics,
/// counter-clockwise from `(1, 0)`.
pub fn unit_circle() -> BezierCurveSpec {
    let k = CIRCLE_HANDLE;
    let axis = [
        Point2::new(1.0, 0.0),
        Point2::new(0.0, 1.0),
        Point2::new(-1.0, 0.0),
        Point2::new(0.0, -1.0),
    ];
    let segments = (0..4)
        .map(|q| {
            let (a, b) = (axis[q], axis[(q + 1) % 4]);
            [a, a + a.perp() * k, b - b.perp() * k, b]
        })
        .collect();
    BezierCurveSpec {
        segments,
        closed: true,
    }
}

/// Axis-aligned ellipse with semi-axes `a` (x) and `b` (y).
pub fn ellipse(a: f64, b: f64) -> BezierCurveSpec {
    unit_circle().map(|p| Point2::new(a * p.x, b * p.y))
}

/// Closed uniform cubic B-spline through the control polygon `ctrl`,
/// converted to one Bézier segment per control point (C2 everywhere).
pub fn closed_bspline(ctrl: &[Point2]) -> Result<BezierCurveSpec> {
    let m = ctrl.len();
    if m < 4 {
        return Err(invalid("a closed B-spline needs at least 4 control points"));
    }
    let at = |k: usize| ctrl[k % m];
    let knots: Vec<Point2> = (0..m)
        .map(|k| (at(k + m - 1) + at(k) * 4.0 + at(k + 1)) * (1.0 / 6.0))
        .collect();
    let segments = (0..m)
        .map(|k| {
            let (p, q) = (at(k), at(k + 1));
            [
                knots[k],
                (p * 2.0 + q) * (1.0 / 3.0),
                (p + q * 2.0) * (1.0 / 3.0),
                knots[(k + 1) % m],
            ]
        })
        .collect();
    BezierCurveSpec::new(segments, true)
}

/// Random smooth star-shaped closed curve: `controls` control points at
/// jittered angles around the origin with radii in `[0.65, 1]`.
pub fn random_closed_curve(seed: u64, controls: usize) -> Result<BezierCurveSpec> {
    if controls < 5 {
        return Err(invalid("random curves need at least 5 control points"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = TAU / controls as f64;
    let ctrl: Vec<Point2> = (0..controls)
        .map(|k| {
            let angle = step * (k as f64 + rng.random_range(-0.25..0.25));
            let radius = rng.random_range(0.65..1.0);
            Point2::new(radius * angle.cos(), radius * angle.sin())
        })
        .collect();
    closed_bspline(&ctrl)
}

/// A fixed closed silhouette with a round body, a head and two long ears;
/// its feature size varies by more than an order of magnitude.
pub fn bunny() -> BezierCurveSpec {
    const CTRL: [(f64, f64); 20] = [
        (0.0, 0.0),
        (0.9, -0.15),
        (1.7, 0.1),
        (2.0, 0.7),
        (1.8, 1.2),
        (1.45, 1.35),
        (1.55, 1.75),
        (1.35, 2.05),
        (1.45, 2.9),
        (1.3, 3.05),
        (1.1, 2.25),
        (0.95, 2.2),
        (0.8, 2.95),
        (0.62, 2.95),
        (0.7, 2.1),
        (0.55, 1.7),
        (0.2, 1.5),
        (-0.35, 1.25),
        (-0.55, 0.7),
        (-0.4, 0.2),
    ];
    let ctrl: Vec<Point2> = CTRL.iter().map(|&c| c.into()).collect();
    closed_bspline(&ctrl).expect("fixed control polygon")
}

/// Samples of a Bézier chain at uniform parameter steps, with unit normals.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseCurveSample {
    samples: Vec<Point2>,
    normals: Vec<Point2>,
    lfs: Option<Vec<f64>>,
    closed: bool,
}

impl DenseCurveSample {
    pub fn samples(&self) -> &[Point2] {
        &self.samples
    }

    pub fn normals(&self) -> &[Point2] {
        &self.normals
    }

    /// Local feature size per sample, once estimated.
    pub fn lfs(&self) -> Option<&[f64]> {
        self.lfs.as_deref()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Attaches a feature-size estimate; every value must be positive.
    pub fn with_lfs(mut self, lfs: Vec<f64>) -> Result<Self> {
        if lfs.len() != self.samples.len() {
            return Err(invalid(format!(
                "expected {} feature-size values, got {}",
                self.samples.len(),
                lfs.len()
            )));
        }
        if let Some(i) = lfs.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(invalid(format!(
                "feature size at sample {i} is not positive"
            )));
        }
        self.lfs = Some(lfs);
        Ok(self)
    }

    /// Largest distance between consecutive samples adjacent to `i`.
    pub fn local_step(&self, i: usize) -> f64 {
        let n = self.samples.len();
        let s = &self.samples;
        let mut step: f64 = 0.0;
        if i + 1 < n || self.closed {
            step = step.max(s[i].distance(s[(i + 1) % n]));
        }
        if i > 0 || self.closed {
            step = step.max(s[i].distance(s[(i + n - 1) % n]));
        }
        step
    }
}

/// Samples every segment at `resolution` uniform parameter steps. Normals
/// are the left perpendicular of the chord between the two neighbouring
/// samples (one-sided at the ends of an open curve).
pub fn dense_sample(spec: &BezierCurveSpec, resolution: usize) -> Result<DenseCurveSample> {
    if resolution < 64 {
        return Err(invalid(format!(
            "dense resolution must be at least 64 per segment, got {resolution}"
        )));
    }
    let mut samples = Vec::with_capacity(spec.segments.len() * resolution + 1);
    let mut seg_of = Vec::with_capacity(samples.capacity());
    for k in 0..spec.segments.len() {
        for step in 0..resolution {
            samples.push(spec.eval(k, step as f64 / resolution as f64));
            seg_of.push(k);
        }
    }
    if !spec.closed {
        samples.push(spec.segments[spec.segments.len() - 1][3]);
        seg_of.push(spec.segments.len() - 1);
    }
    with_chord_normals(samples, spec.closed, |i| format!("segment {}", seg_of[i]))
}

fn with_chord_normals(
    samples: Vec<Point2>,
    closed: bool,
    origin: impl Fn(usize) -> String,
) -> Result<DenseCurveSample> {
    let n = samples.len();
    if n < 2 {
        return Err(invalid("a dense sampling needs at least 2 samples"));
    }
    if let Some(i) = samples.iter().position(|p| !p.is_finite()) {
        return Err(invalid(format!("{} has a non-finite sample", origin(i))));
    }
    let pairs = if closed { n } else { n - 1 };
    for i in 0..pairs {
        if samples[i] == samples[(i + 1) % n] {
            return Err(invalid(format!(
                "{} produces coincident consecutive samples",
                origin(i)
            )));
        }
    }
    let mut normals = Vec::with_capacity(n);
    for i in 0..n {
        let (prev, next) = if closed {
            ((i + n - 1) % n, (i + 1) % n)
        } else {
            (i.saturating_sub(1), (i + 1).min(n - 1))
        };
        let normal = (samples[next] - samples[prev])
            .perp()
            .normalized()
            .ok_or_else(|| {
                invalid(format!(
                    "{} has a degenerate chord at sample {i}",
                    origin(i)
                ))
            })?;
        normals.push(normal);
    }
    Ok(DenseCurveSample {
        samples,
        normals,
        lfs: None,
        closed,
    })
}

impl DenseCurveSample {
    /// Dense sampling from an explicit ordered polyline, with the same
    /// chord normals as [`dense_sample`].
    pub fn from_polyline(samples: Vec<Point2>, closed: bool) -> Result<Self> {
        with_chord_normals(samples, closed, |i| format!("sample {i}"))
    }
}
