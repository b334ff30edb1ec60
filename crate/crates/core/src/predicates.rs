//! Exact-decision planar predicates.
//!
//! `orient2d` and `incircle` are adaptive-precision (floating filter with
//! exact expansion fallback). The distance and angle comparisons used by the
//! nearest-neighbour filters get a floating filter with an exact rational
//! fallback.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use robust::Coord;

use crate::error::{Error, Result};
use crate::geometry::{require_finite, Point2};

#[inline]
fn coord(p: Point2) -> Coord<f64> {
    Coord { x: p.x, y: p.y }
}

#[inline]
fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// +1 if `c` is strictly left of the directed line `a -> b`, -1 if strictly
/// right, 0 if collinear.
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> Result<i8> {
    require_finite(&[a, b, c])?;
    Ok(orient2d_unchecked(a, b, c))
}

#[inline]
pub(crate) fn orient2d_unchecked(a: Point2, b: Point2, c: Point2) -> i8 {
    sign(robust::orient2d(coord(a), coord(b), coord(c)))
}

/// +1 if `d` is strictly inside the circumcircle of the counter-clockwise
/// triangle `abc`, -1 if strictly outside, 0 if cocircular.
pub fn incircle(a: Point2, b: Point2, c: Point2, d: Point2) -> Result<i8> {
    require_finite(&[a, b, c, d])?;
    Ok(incircle_unchecked(a, b, c, d))
}

#[inline]
pub(crate) fn incircle_unchecked(a: Point2, b: Point2, c: Point2, d: Point2) -> i8 {
    sign(robust::incircle(coord(a), coord(b), coord(c), coord(d)))
}

fn rational(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite coordinate")
}

fn rational_sign(v: &BigRational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact sign of `(q - p) . (r - p)`. Negative means the angle `q p r`
/// exceeds 90 degrees.
pub fn dot_sign(p: Point2, q: Point2, r: Point2) -> i8 {
    let (ax, ay) = (q.x - p.x, q.y - p.y);
    let (bx, by) = (r.x - p.x, r.y - p.y);
    let t1 = ax * bx;
    let t2 = ay * by;
    let dot = t1 + t2;
    let bound = 4.0 * f64::EPSILON * (t1.abs() + t2.abs());
    if dot.abs() > bound {
        return sign(dot);
    }
    let (px, py) = (rational(p.x), rational(p.y));
    let ax = rational(q.x) - &px;
    let ay = rational(q.y) - &py;
    let bx = rational(r.x) - &px;
    let by = rational(r.y) - &py;
    rational_sign(&(ax * bx + ay * by))
}

/// Exact sign of `|r - q|^2 - |r - p|^2`: +1 when `r` is strictly closer to
/// `p` than to `q`, i.e. strictly on `p`'s side of the bisector of `pq`.
pub fn bisector_side(r: Point2, p: Point2, q: Point2) -> i8 {
    let dq = r.distance_squared(q);
    let dp = r.distance_squared(p);
    let diff = dq - dp;
    let bound = 8.0 * f64::EPSILON * (dq + dp);
    if diff.abs() > bound {
        return sign(diff);
    }
    let (rx, ry) = (rational(r.x), rational(r.y));
    let sq = |x: BigRational| &x * &x;
    let dq = sq(&rx - rational(q.x)) + sq(&ry - rational(q.y));
    let dp = sq(&rx - rational(p.x)) + sq(&ry - rational(p.y));
    rational_sign(&(dq - dp))
}

/// A circle given by center and radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point2,
    pub radius: f64,
}

/// Circle through three non-collinear points.
pub fn circumcircle(a: Point2, b: Point2, c: Point2) -> Result<Circle> {
    if orient2d(a, b, c)? == 0 {
        return Err(Error::DegenerateTriangle);
    }
    let center = circumcenter(a, b, c);
    // Averaging the three distances keeps the radius consistent for skinny
    // triangles where one distance is poorly conditioned.
    let radius = (center.distance(a) + center.distance(b) + center.distance(c)) / 3.0;
    Ok(Circle { center, radius })
}

pub(crate) fn circumcenter(a: Point2, b: Point2, c: Point2) -> Point2 {
    let ab = b - a;
    let ac = c - a;
    let d = 2.0 * ab.cross(ac);
    let ab2 = ab.norm_squared();
    let ac2 = ac.norm_squared();
    let ux = (ac.y * ab2 - ab.y * ac2) / d;
    let uy = (ab.x * ac2 - ac.x * ab2) / d;
    Point2::new(a.x + ux, a.y + uy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    // Independent oracle: evaluate the determinants in exact rational arithmetic.
    fn orient_oracle(a: Point2, b: Point2, c: Point2) -> i8 {
        let r = |v: f64| rational(v);
        let det = (r(b.x) - r(a.x)) * (r(c.y) - r(a.y)) - (r(b.y) - r(a.y)) * (r(c.x) - r(a.x));
        rational_sign(&det)
    }

    fn incircle_oracle(a: Point2, b: Point2, c: Point2, d: Point2) -> i8 {
        let r = |v: f64| rational(v);
        let row = |q: Point2| {
            let x = r(q.x) - r(d.x);
            let y = r(q.y) - r(d.y);
            let w = &x * &x + &y * &y;
            (x, y, w)
        };
        let (ax, ay, aw) = row(a);
        let (bx, by, bw) = row(b);
        let (cx, cy, cw) = row(c);
        let det = &ax * (&by * &cw - &bw * &cy) - &ay * (&bx * &cw - &bw * &cx)
            + &aw * (&bx * &cy - &by * &cx);
        rational_sign(&det)
    }

    #[test]
    fn orient_unit_cases() {
        assert_eq!(orient2d(p(0., 0.), p(1., 0.), p(0., 1.)).unwrap(), 1);
        assert_eq!(orient2d(p(0., 0.), p(1., 0.), p(2., 0.)).unwrap(), 0);
    }

    #[test]
    fn orient_tiny_offset_matches_rational_oracle() {
        let (a, b, c) = (p(0., 0.), p(1., 0.), p(0.5, -1e-12));
        assert_eq!(orient_oracle(a, b, c), -1);
        assert_eq!(orient2d(a, b, c).unwrap(), -1);
    }

    #[test]
    fn orient_near_degenerate_grid_matches_oracle() {
        // Classic failure case for naive evaluation: points nudged by ulps
        // around a diagonal line.
        let a = p(12.0, 12.0);
        let b = p(24.0, 24.0);
        let mut x = 0.5;
        for i in 0..64 {
            let mut y = 0.5;
            for j in 0..64 {
                let c = p(x, y);
                assert_eq!(
                    orient2d(a, b, c).unwrap(),
                    orient_oracle(a, b, c),
                    "{i},{j}"
                );
                y = f64::from_bits(y.to_bits() + 1);
            }
            x = f64::from_bits(x.to_bits() + 1);
        }
    }

    #[test]
    fn incircle_unit_triangle() {
        let (a, b, c) = (p(0., 0.), p(1., 0.), p(0., 1.));
        assert_eq!(incircle(a, b, c, p(1., 1.)).unwrap(), 0);
        assert_eq!(incircle(a, b, c, p(0.5, 0.5)).unwrap(), 1);
        assert_eq!(incircle_oracle(a, b, c, p(2., 2.)), -1);
        assert_eq!(incircle(a, b, c, p(2., 2.)).unwrap(), -1);
    }

    #[test]
    fn non_finite_is_rejected() {
        assert!(matches!(
            orient2d(p(0., 0.), p(f64::INFINITY, 0.), p(0., 1.)),
            Err(Error::NonFinite { index: 1 })
        ));
        assert!(incircle(p(0., 0.), p(1., 0.), p(0., 1.), p(f64::NAN, 0.)).is_err());
    }

    #[test]
    fn circumcircle_examples() {
        let c = circumcircle(p(0., 0.), p(2., 0.), p(0., 2.)).unwrap();
        assert!((c.center.x - 1.0).abs() < 1e-15 && (c.center.y - 1.0).abs() < 1e-15);
        assert!((c.radius - 2f64.sqrt()).abs() < 1e-15);
        let c = circumcircle(p(-1., 0.), p(1., 0.), p(0., 1.)).unwrap();
        assert!(c.center.norm() < 1e-15);
        assert!((c.radius - 1.0).abs() < 1e-15);
        assert_eq!(
            circumcircle(p(0., 0.), p(1., 1.), p(2., 2.)),
            Err(Error::DegenerateTriangle)
        );
    }

    #[test]
    fn dot_and_bisector_match_oracle_on_ties() {
        // Exactly perpendicular: the filter cannot decide, the fallback must.
        assert_eq!(dot_sign(p(0.1, 0.2), p(1.1, 0.2), p(0.1, 7.3)), 0);
        assert_eq!(dot_sign(p(0., 0.), p(1., 0.), p(-1e-300, 1.)), -1);
        assert_eq!(bisector_side(p(0.5, 3.0), p(0., 0.), p(1., 0.)), 0);
        assert_eq!(bisector_side(p(0.3, 3.0), p(0., 0.), p(1., 0.)), 1);
        assert_eq!(bisector_side(p(0.7, 3.0), p(0., 0.), p(1., 0.)), -1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn pt() -> impl Strategy<Value = Point2> {
            (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(x, y)| Point2::new(x, y))
        }

        proptest! {
            #[test]
            fn orient_antisymmetric(a in pt(), b in pt(), c in pt()) {
                prop_assert_eq!(orient2d(a, b, c).unwrap(), -orient2d(b, a, c).unwrap());
                prop_assert_eq!(orient2d(a, b, c).unwrap(), orient_oracle(a, b, c));
            }

            #[test]
            fn incircle_cyclic_invariant(a in pt(), b in pt(), c in pt(), d in pt()) {
                let s = orient2d(a, b, c).unwrap();
                prop_assume!(s != 0);
                let (a, b) = if s > 0 { (a, b) } else { (b, a) };
                let v = incircle(a, b, c, d).unwrap();
                prop_assert_eq!(v, incircle(b, c, a, d).unwrap());
                prop_assert_eq!(v, incircle(c, a, b, d).unwrap());
                prop_assert_eq!(v, incircle_oracle(a, b, c, d));
            }

            #[test]
            fn circumcircle_equidistant(a in pt(), b in pt(), c in pt()) {
                prop_assume!(orient2d(a, b, c).unwrap() != 0);
                // Keep away from near-collinear triples whose circle is enormous.
                let area = (b - a).cross(c - a).abs();
                let scale = (b - a).norm().max((c - a).norm()).max((c - b).norm());
                prop_assume!(area > 1e-3 * scale * scale);
                let circle = circumcircle(a, b, c).unwrap();
                for q in [a, b, c] {
                    let rel = (circle.center.distance(q) - circle.radius).abs() / circle.radius;
                    prop_assert!(rel < 1e-9, "rel {}", rel);
                }
            }
        }
    }
}
