//! Uniform-grid indexes for exact range and nearest-segment queries.
//!
//! Both indexes only prune candidates; every reported answer is computed by
//! the same arithmetic a linear scan would use, so results match brute force
//! bit for bit.

use crate::geometry::{BBox, Point2};

struct GridFrame {
    origin: Point2,
    cell: f64,
    cols: usize,
    rows: usize,
}

impl GridFrame {
    fn new(bbox: BBox, items: usize) -> Self {
        let span = bbox.width().max(bbox.height());
        let target = (items.max(1) as f64).sqrt().ceil().clamp(1.0, 1024.0);
        let cell = if span > 0.0 { span / target } else { 1.0 };
        let cols = ((bbox.width() / cell).floor() as usize + 1).max(1);
        let rows = ((bbox.height() / cell).floor() as usize + 1).max(1);
        GridFrame {
            origin: bbox.min,
            cell,
            cols,
            rows,
        }
    }

    fn col(&self, x: f64) -> usize {
        (((x - self.origin.x) / self.cell).floor().max(0.0) as usize).min(self.cols - 1)
    }

    fn row(&self, y: f64) -> usize {
        (((y - self.origin.y) / self.cell).floor().max(0.0) as usize).min(self.rows - 1)
    }

    fn index(&self, c: usize, r: usize) -> usize {
        r * self.cols + c
    }
}

/// Bucketed point set answering "is any point strictly inside this disk".
pub struct PointGrid<'a> {
    points: &'a [Point2],
    frame: GridFrame,
    cells: Vec<Vec<u32>>,
}

impl<'a> PointGrid<'a> {
    pub fn new(points: &'a [Point2]) -> Self {
        let bbox = BBox::of(points).unwrap_or(BBox {
            min: Point2::default(),
            max: Point2::default(),
        });
        let frame = GridFrame::new(bbox, points.len());
        let mut cells = vec![Vec::new(); frame.cols * frame.rows];
        for (i, p) in points.iter().enumerate() {
            cells[frame.index(frame.col(p.x), frame.row(p.y))].push(i as u32);
        }
        PointGrid {
            points,
            frame,
            cells,
        }
    }

    /// True if some point other than `skip_a`, `skip_b` has squared distance
    /// to `center` strictly below `radius_sq`.
    pub fn any_strictly_inside(
        &self,
        center: Point2,
        radius_sq: f64,
        skip_a: usize,
        skip_b: usize,
    ) -> bool {
        let r = radius_sq.sqrt();
        let f = &self.frame;
        let (c0, c1) = (f.col(center.x - r), f.col(center.x + r));
        let (r0, r1) = (f.row(center.y - r), f.row(center.y + r));
        for row in r0..=r1 {
            for col in c0..=c1 {
                for &i in &self.cells[f.index(col, row)] {
                    let i = i as usize;
                    if i != skip_a
                        && i != skip_b
                        && self.points[i].distance_squared(center) < radius_sq
                    {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Distance from `q` to the closed segment `ab`.
pub fn point_segment_distance(q: Point2, a: Point2, b: Point2) -> f64 {
    point_segment_closest(q, a, b).distance(q)
}

/// Closest point to `q` on the closed segment `ab`.
pub fn point_segment_closest(q: Point2, a: Point2, b: Point2) -> Point2 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return a;
    }
    let t = (q - a).dot(ab) / len2;
    if t <= 0.0 {
        a
    } else if t >= 1.0 {
        b
    } else {
        a + ab * t
    }
}

/// Segments bucketed by the cells their bounding boxes overlap.
pub struct SegmentGrid {
    segments: Vec<(Point2, Point2)>,
    frame: GridFrame,
    cells: Vec<Vec<u32>>,
}

impl SegmentGrid {
    /// `bounds` must contain every segment and every later query point.
    pub fn new(segments: Vec<(Point2, Point2)>, bounds: BBox) -> Self {
        let frame = GridFrame::new(bounds, segments.len());
        let mut cells = vec![Vec::new(); frame.cols * frame.rows];
        for (i, &(a, b)) in segments.iter().enumerate() {
            let (c0, c1) = (f_min(a.x, b.x), f_max(a.x, b.x));
            let (r0, r1) = (f_min(a.y, b.y), f_max(a.y, b.y));
            for row in frame.row(r0)..=frame.row(r1) {
                for col in frame.col(c0)..=frame.col(c1) {
                    cells[frame.index(col, row)].push(i as u32);
                }
            }
        }
        SegmentGrid {
            segments,
            frame,
            cells,
        }
    }

    /// Closest point over all segments and its distance, searching rings of
    /// cells outward until no unvisited cell can hold anything closer.
    pub fn nearest(&self, q: Point2) -> Option<(Point2, f64)> {
        if self.segments.is_empty() {
            return None;
        }
        let f = &self.frame;
        let (qc, qr) = (f.col(q.x) as isize, f.row(q.y) as isize);
        let mut best: Option<(Point2, f64)> = None;
        let max_ring = f.cols.max(f.rows) as isize;
        for ring in 0..=max_ring {
            for (c, r) in ring_cells(qc, qr, ring) {
                if c < 0 || r < 0 || c >= f.cols as isize || r >= f.rows as isize {
                    continue;
                }
                for &s in &self.cells[f.index(c as usize, r as usize)] {
                    let (a, b) = self.segments[s as usize];
                    let foot = point_segment_closest(q, a, b);
                    let d = foot.distance(q);
                    if best.is_none_or(|(_, bd)| d < bd) {
                        best = Some((foot, d));
                    }
                }
            }
            // Cells beyond this ring are at least `ring * cell` away.
            if let Some((_, d)) = best {
                if d <= ring as f64 * f.cell {
                    break;
                }
            }
        }
        best
    }
}

fn ring_cells(c: isize, r: isize, ring: isize) -> Vec<(isize, isize)> {
    if ring == 0 {
        return vec![(c, r)];
    }
    let mut out = Vec::with_capacity(8 * ring as usize);
    for dc in -ring..=ring {
        out.push((c + dc, r - ring));
        out.push((c + dc, r + ring));
    }
    for dr in -ring + 1..ring {
        out.push((c - ring, r + dr));
        out.push((c + ring, r + dr));
    }
    out
}

fn f_min(a: f64, b: f64) -> f64 {
    a.min(b)
}

fn f_max(a: f64, b: f64) -> f64 {
    a.max(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn segment_distance_cases() {
        let a = Point2::new(0., 0.);
        let b = Point2::new(2., 0.);
        assert_eq!(point_segment_distance(Point2::new(1., 3.), a, b), 3.0);
        assert_eq!(point_segment_distance(Point2::new(-3., 4.), a, b), 5.0);
        assert_eq!(point_segment_distance(Point2::new(5., 4.), a, b), 5.0);
        assert_eq!(
            point_segment_distance(Point2::new(1., 1.), a, a),
            2f64.sqrt()
        );
    }

    #[test]
    fn nearest_matches_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let segs: Vec<(Point2, Point2)> = (0..200)
            .map(|_| {
                let a = Point2::new(rng.random::<f64>() * 10.0, rng.random::<f64>() * 10.0);
                let b = a + Point2::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
                (a, b)
            })
            .collect();
        let bounds = BBox {
            min: Point2::new(-1., -1.),
            max: Point2::new(11., 11.),
        };
        let grid = SegmentGrid::new(segs.clone(), bounds);
        for _ in 0..500 {
            let q = Point2::new(
                rng.random::<f64>() * 12.0 - 1.0,
                rng.random::<f64>() * 12.0 - 1.0,
            );
            let brute = segs
                .iter()
                .map(|&(a, b)| point_segment_distance(q, a, b))
                .fold(f64::INFINITY, f64::min);
            assert_eq!(grid.nearest(q).unwrap().1, brute);
        }
    }

    #[test]
    fn disk_query_matches_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pts: Vec<Point2> = (0..300)
            .map(|_| Point2::new(rng.random(), rng.random()))
            .collect();
        let grid = PointGrid::new(&pts);
        for _ in 0..300 {
            let c = Point2::new(
                rng.random::<f64>() * 1.4 - 0.2,
                rng.random::<f64>() * 1.4 - 0.2,
            );
            let r2 = rng.random::<f64>() * 0.02;
            let brute = pts
                .iter()
                .enumerate()
                .any(|(i, p)| i != 0 && i != 1 && p.distance_squared(c) < r2);
            assert_eq!(grid.any_strictly_inside(c, r2, 0, 1), brute);
        }
    }
}
