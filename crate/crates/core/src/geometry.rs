//! Basic planar types: points, bounding boxes, point sets and undirected edges.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{invalid, parse_err, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance_squared(self, other: Point2) -> f64 {
        (self - other).norm_squared()
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Counter-clockwise rotation by 90 degrees.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Point2> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        self + (other - self) * t
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2::new(x, y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub min: Point2,
    pub max: Point2,
}

impl BBox {
    pub fn of(points: &[Point2]) -> Option<BBox> {
        let first = *points.first()?;
        let mut b = BBox {
            min: first,
            max: first,
        };
        for p in &points[1..] {
            b.min.x = b.min.x.min(p.x);
            b.min.y = b.min.y.min(p.y);
            b.max.x = b.max.x.max(p.x);
            b.max.y = b.max.y.max(p.y);
        }
        Some(b)
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn diagonal(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn union(&self, other: &BBox) -> BBox {
        BBox {
            min: Point2::new(self.min.x.min(other.min.x), self.min.y.min(other.min.y)),
            max: Point2::new(self.max.x.max(other.max.x), self.max.y.max(other.max.y)),
        }
    }
}

/// Undirected edge between two vertex indices, stored with `0 < 1`.
pub type Edge = (usize, usize);

/// Canonical form of the undirected edge `{a, b}`.
#[inline]
pub fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// An indexed set of distinct, finite points.
///
/// The index of a point is its identity for every structure built on top of
/// the set (triangulations, graphs, curves, ground truth).
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point2>,
    bbox: Option<BBox>,
}

impl PointSet {
    /// Validates finiteness and distinctness. Duplicates are reported by the
    /// pair of offending indices rather than silently merged.
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            let (pa, pb) = (points[a], points[b]);
            pa.x.partial_cmp(&pb.x)
                .unwrap()
                .then(pa.y.partial_cmp(&pb.y).unwrap())
                .then(a.cmp(&b))
        });
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(Error::DuplicatePoints { first, second });
            }
        }
        let bbox = BBox::of(&points);
        Ok(PointSet { points, bbox })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn bbox(&self) -> Option<BBox> {
        self.bbox
    }

    pub fn into_points(self) -> Vec<Point2> {
        self.points
    }

    /// Parses the plain-text point format: one `x y` pair per line, blank
    /// lines and `#` comments ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut pts = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let mut coord = || -> Result<f64> {
                it.next()
                    .ok_or_else(|| parse_err(lineno + 1, "expected two coordinates"))?
                    .parse::<f64>()
                    .map_err(|e| parse_err(lineno + 1, e.to_string()))
            };
            let p = Point2::new(coord()?, coord()?);
            if it.next().is_some() {
                return Err(parse_err(lineno + 1, "trailing tokens after coordinates"));
            }
            pts.push(p);
        }
        PointSet::new(pts)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.points.len() * 24);
        for p in &self.points {
            s.push_str(&p.to_string());
            s.push('\n');
        }
        s
    }
}

/// True if every point of `points` is on one line (or there are fewer than 3).
pub fn all_collinear(points: &[Point2]) -> bool {
    use crate::predicates::orient2d_unchecked;
    if points.len() < 3 {
        return true;
    }
    let a = points[0];
    let Some(b) = points.iter().copied().find(|&p| p != a) else {
        return true;
    };
    points.iter().all(|&c| orient2d_unchecked(a, b, c) == 0)
}

pub(crate) fn require_finite(points: &[Point2]) -> Result<()> {
    match points.iter().position(|p| !p.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

pub(crate) fn require_len(ps: &PointSet, min: usize, what: &str) -> Result<()> {
    if ps.len() < min {
        Err(invalid(format!(
            "{what} needs at least {min} points, got {}",
            ps.len()
        )))
    } else {
        Ok(())
    }
}
