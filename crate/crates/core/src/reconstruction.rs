//! Curve reconstruction from unorganized samples.
//!
//! Every algorithm here filters the Delaunay triangulation of the input (or,
//! for Crust, of the input plus its Voronoi vertices). No post-processing is
//! applied, so outputs may be open, disconnected or non-manifold.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::delaunay::{delaunay, voronoi_vertices};
use crate::error::{invalid, Error, Result};
use crate::geometry::{edge, require_len, Edge, Point2, PointSet};
use crate::graphs::{candidates, emst};
use crate::predicates::{bisector_side, dot_sign};
use crate::spatial::PointGrid;

/// A piecewise-linear curve over an indexed vertex set.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCurve {
    points: Vec<Point2>,
    edges: BTreeSet<Edge>,
}

impl PolyCurve {
    /// Fails if an edge references a missing vertex or is a self-loop.
    pub fn new(points: Vec<Point2>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let n = points.len();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(invalid(format!(
                    "edge ({a}, {b}) references a vertex outside 0..{n}"
                )));
            }
            if a == b {
                return Err(invalid(format!("self-loop at vertex {a}")));
            }
            set.insert(edge(a, b));
        }
        Ok(PolyCurve { points, edges: set })
    }

    fn from_valid(points: &[Point2], edges: impl IntoIterator<Item = Edge>) -> Self {
        PolyCurve {
            points: points.to_vec(),
            edges: edges.into_iter().map(|(a, b)| edge(a, b)).collect(),
        }
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.points.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Every vertex has at most two incident edges.
    pub fn is_manifold(&self) -> bool {
        self.max_degree() <= 2
    }

    /// Degree-1 vertices in increasing index order.
    pub fn open_endpoints(&self) -> Vec<usize> {
        self.degrees()
            .into_iter()
            .enumerate()
            .filter(|&(_, d)| d == 1)
            .map(|(i, _)| i)
            .collect()
    }

    /// Connected components among vertices touched by at least one edge.
    pub fn components(&self) -> usize {
        let n = self.points.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut count = 0usize;
        let mut touched = vec![false; n];
        for &(a, b) in &self.edges {
            for v in [a, b] {
                if !touched[v] {
                    touched[v] = true;
                    count += 1;
                }
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
        count
    }

    /// Vertex order of a single simple path or cycle covering every vertex,
    /// with `true` for a cycle; `None` for any other shape.
    pub fn traversal(&self) -> Option<(Vec<usize>, bool)> {
        let n = self.points.len();
        let deg = self.degrees();
        if n < 2 || deg.iter().any(|&d| d == 0 || d > 2) || self.components() != 1 {
            return None;
        }
        let mut adj = vec![Vec::with_capacity(2); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let closed = self.edges.len() == n;
        let start = if closed {
            0
        } else {
            deg.iter().position(|&d| d == 1)?
        };
        let mut order = Vec::with_capacity(n);
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            order.push(cur);
            let Some(&next) = adj[cur].iter().find(|&&v| v != prev) else {
                break;
            };
            if next == start {
                break;
            }
            (prev, cur) = (cur, next);
        }
        (order.len() == n).then_some((order, closed))
    }

    pub fn total_length(&self) -> f64 {
        self.edges
            .iter()
            .map(|&(a, b)| self.points[a].distance(self.points[b]))
            .sum()
    }
}

/// Reconstruction algorithm selector, as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgorithmId {
    Crust,
    NnCrust,
    HnnCrust,
    AlphaDisc(f64),
    EmstCurve,
}

impl AlgorithmId {
    pub const VALID_NAMES: &'static str = "crust, nncrust, hnncrust, alphadisc:<radius>, emst";

    /// Lowercase name without parameters.
    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmId::Crust => "crust",
            AlgorithmId::NnCrust => "nncrust",
            AlgorithmId::HnnCrust => "hnncrust",
            AlgorithmId::AlphaDisc(_) => "alphadisc",
            AlgorithmId::EmstCurve => "emst",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            AlgorithmId::AlphaDisc(r) if !(r > 0.0 && r.is_finite()) => Err(invalid(format!(
                "alphadisc radius must be positive and finite, got {r}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn run(&self, ps: &PointSet) -> Result<PolyCurve> {
        match *self {
            AlgorithmId::Crust => crust(ps),
            AlgorithmId::NnCrust => nn_crust(ps),
            AlgorithmId::HnnCrust => hnn_crust(ps),
            AlgorithmId::AlphaDisc(r) => alpha_disc(ps, r),
            AlgorithmId::EmstCurve => emst_curve(ps),
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgorithmId::AlphaDisc(r) => write!(f, "alphadisc:{r}"),
            other => f.write_str(other.name()),
        }
    }
}

/// Accepts `crust`, `nncrust`, `hnncrust`, `emst` and `alphadisc:<radius>`.
impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let id = match (name, param) {
            ("crust", None) => AlgorithmId::Crust,
            ("nncrust", None) => AlgorithmId::NnCrust,
            ("hnncrust", None) => AlgorithmId::HnnCrust,
            ("emst", None) => AlgorithmId::EmstCurve,
            ("alphadisc", Some(p)) => AlgorithmId::AlphaDisc(
                p.parse()
                    .map_err(|_| invalid(format!("bad alphadisc radius {p:?}")))?,
            ),
            ("alphadisc", None) => {
                return Err(invalid("alphadisc needs a radius, e.g. alphadisc:0.05"))
            }
            (_, Some(_)) if ["crust", "nncrust", "hnncrust", "emst"].contains(&name) => {
                return Err(invalid(format!("{name} takes no parameter")))
            }
            _ => {
                return Err(invalid(format!(
                    "unknown algorithm {s:?}; valid names: {}",
                    AlgorithmId::VALID_NAMES
                )))
            }
        };
        id.validate()?;
        Ok(id)
    }
}

fn neighbor_lists(ps: &PointSet) -> Result<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); ps.len()];
    for (a, b) in candidates(ps)? {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(adj)
}

/// Nearest element of `cands` to `p`, ties to the smaller index.
fn nearest_of(pts: &[Point2], p: usize, cands: impl Iterator<Item = usize>) -> Option<usize> {
    let mut best: Option<(f64, usize)> = None;
    for r in cands {
        let d = pts[p].distance_squared(pts[r]);
        if best.is_none_or(|(bd, bi)| d < bd || (d == bd && r < bi)) {
            best = Some((d, r));
        }
    }
    best.map(|(_, r)| r)
}

fn nearest_neighbors(pts: &[Point2], adj: &[Vec<usize>]) -> Vec<usize> {
    (0..pts.len())
        .map(|p| nearest_of(pts, p, adj[p].iter().copied()).expect("connected candidates"))
        .collect()
}

/// NN-Crust: every sample connects to its nearest neighbour `q`; a sample
/// left with a single edge then also connects to the nearest `r` with the
/// angle `q p r` strictly above 90 degrees.
pub fn nn_crust(ps: &PointSet) -> Result<PolyCurve> {
    require_len(ps, 3, "NN-Crust")?;
    let pts = ps.points();
    let adj = neighbor_lists(ps)?;
    let nn = nearest_neighbors(pts, &adj);
    let mut edges: BTreeSet<Edge> = nn.iter().enumerate().map(|(p, &q)| edge(p, q)).collect();
    let mut deg = vec![0usize; pts.len()];
    for &(a, b) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut extra = Vec::new();
    for p in 0..pts.len() {
        if deg[p] != 1 {
            continue;
        }
        let q = nn[p];
        let half = adj[p]
            .iter()
            .copied()
            .filter(|&r| r != q && dot_sign(pts[p], pts[q], pts[r]) < 0);
        if let Some(r) = nearest_of(pts, p, half) {
            extra.push(edge(p, r));
        }
    }
    edges.extend(extra);
    Ok(PolyCurve::from_valid(pts, edges))
}

/// HNN-Crust: nearest-neighbour edges, then each sample that still has fewer
/// than two edges connects to its half neighbour, the nearest sample strictly
/// closer to it than to its nearest neighbour `q`.
pub fn hnn_crust(ps: &PointSet) -> Result<PolyCurve> {
    require_len(ps, 3, "HNN-Crust")?;
    let pts = ps.points();
    let adj = neighbor_lists(ps)?;
    let nn = nearest_neighbors(pts, &adj);
    let mut edges: BTreeSet<Edge> = nn.iter().enumerate().map(|(p, &q)| edge(p, q)).collect();
    let mut deg = vec![0usize; pts.len()];
    for &(a, b) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    for p in 0..pts.len() {
        if deg[p] >= 2 {
            continue;
        }
        let q = nn[p];
        let half = adj[p]
            .iter()
            .copied()
            .filter(|&r| r != q && bisector_side(pts[r], pts[p], pts[q]) > 0);
        if let Some(r) = nearest_of(pts, p, half) {
            if edges.insert(edge(p, r)) {
                deg[p] += 1;
                deg[r] += 1;
            }
        }
    }
    Ok(PolyCurve::from_valid(pts, edges))
}

/// Crust: Delaunay edges of samples plus Voronoi vertices that join two
/// samples.
pub fn crust(ps: &PointSet) -> Result<PolyCurve> {
    require_len(ps, 3, "Crust")?;
    let pts = ps.points();
    let first = delaunay(ps)?;
    let samples: HashSet<(u64, u64)> = pts.iter().map(|p| (p.x.to_bits(), p.y.to_bits())).collect();
    let mut voronoi: Vec<Point2> = voronoi_vertices(&first)
        .into_iter()
        .filter(|v| v.is_finite())
        .map(|v| Point2::new(v.x + 0.0, v.y + 0.0))
        .filter(|v| !samples.contains(&(v.x.to_bits(), v.y.to_bits())))
        .collect();
    voronoi.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    voronoi.dedup();
    let n = pts.len();
    let mut all = pts.to_vec();
    all.extend(voronoi);
    let second = delaunay(&PointSet::new(all)?)?;
    let kept = second
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| a < n && b < n);
    Ok(PolyCurve::from_valid(pts, kept))
}

/// Centers of the two radius-`r` circles through `a` and `b`, which must be
/// at most `2r` apart.
pub fn tangent_disk_centers(a: Point2, b: Point2, r: f64) -> [Point2; 2] {
    let mid = a.lerp(b, 0.5);
    let ab = b - a;
    let half_sq = ab.norm_squared() / 4.0;
    let h = (r * r - half_sq).max(0.0).sqrt();
    let dir = ab.perp().normalized().unwrap_or_default();
    [mid + dir * h, mid - dir * h]
}

/// Alpha-disc filter: a Delaunay edge survives if it is no longer than `2r`
/// and one of its two radius-`r` tangent disks has no sample strictly inside.
pub fn alpha_disc(ps: &PointSet, r: f64) -> Result<PolyCurve> {
    AlgorithmId::AlphaDisc(r).validate()?;
    require_len(ps, 3, "alpha-disc")?;
    let pts = ps.points();
    let grid = PointGrid::new(pts);
    let r2 = r * r;
    let kept = candidates(ps)?.into_iter().filter(|&(a, b)| {
        pts[a].distance_squared(pts[b]) <= 4.0 * r2
            && tangent_disk_centers(pts[a], pts[b], r)
                .into_iter()
                .any(|c| !grid.any_strictly_inside(c, r2, a, b))
    });
    Ok(PolyCurve::from_valid(pts, kept.collect::<Vec<_>>()))
}

/// The Euclidean minimum spanning tree as a curve.
pub fn emst_curve(ps: &PointSet) -> Result<PolyCurve> {
    let tree = emst(ps)?;
    Ok(PolyCurve::from_valid(
        ps.points(),
        tree.edges.iter().copied(),
    ))
}

/// Converts an epsilon-sampling density to the equivalent reach-based
/// density `eps / (1 - eps)`.
pub fn eps_to_rho(eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    Ok(eps / (1.0 - eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    fn set(coords: &[(f64, f64)]) -> PointSet {
        PointSet::new(coords.iter().map(|&c| c.into()).collect()).unwrap()
    }

    fn ngon(n: usize, phase: f64) -> PointSet {
        PointSet::new(
            (0..n)
                .map(|i| {
                    let a = phase + TAU * i as f64 / n as f64;
                    Point2::new(a.cos(), a.sin())
                })
                .collect(),
        )
        .unwrap()
    }

    fn polygon_edges(n: usize) -> BTreeSet<Edge> {
        (0..n).map(|i| edge(i, (i + 1) % n)).collect()
    }

    fn chain(n: usize) -> BTreeSet<Edge> {
        (0..n - 1).map(|i| (i, i + 1)).collect()
    }

    #[test]
    fn collinear_triples_give_a_chain() {
        let ps = set(&[(0., 0.), (1., 0.), (2., 0.)]);
        assert_eq!(nn_crust(&ps).unwrap().edges(), &chain(3));
        assert_eq!(hnn_crust(&ps).unwrap().edges(), &chain(3));
        assert_eq!(emst_curve(&ps).unwrap().edges(), &chain(3));
    }

    #[test]
    fn square_right_angles_are_not_obtuse() {
        // Every corner angle is exactly 90 degrees, so the strict angle test
        // never closes the loop.
        let ps = set(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]);
        let c = nn_crust(&ps).unwrap();
        assert_eq!(c.edges().len(), 3);
        assert!(c.edges().is_subset(&polygon_edges(4)));
        assert_eq!(c.open_endpoints().len(), 2);
    }

    #[test]
    fn regular_polygons_close() {
        for n in [5, 6, 26] {
            let ps = ngon(n, 0.1);
            assert_eq!(nn_crust(&ps).unwrap().edges(), &polygon_edges(n), "nn {n}");
            assert_eq!(
                hnn_crust(&ps).unwrap().edges(),
                &polygon_edges(n),
                "hnn {n}"
            );
        }
        let c = crust(&ngon(30, 0.3)).unwrap();
        assert_eq!(c.edges(), &polygon_edges(30));
        assert_eq!(c.components(), 1);
        assert!(c.open_endpoints().is_empty());
    }

    #[test]
    fn emst_on_circle_is_a_tree() {
        let c = emst_curve(&ngon(40, 0.0)).unwrap();
        assert_eq!(c.edges().len(), 39);
        assert_eq!(c.components(), 1);
        let two = emst_curve(&set(&[(0., 0.), (3., 1.)])).unwrap();
        assert_eq!(two.edges().len(), 1);
    }

    #[test]
    fn emst_on_open_spiral_is_a_path() {
        // Archimedean spiral with arc-length spacing well below the gap
        // between turns.
        let mut pts = Vec::new();
        let mut theta: f64 = 1.0;
        while theta < 4.0 * TAU {
            pts.push(Point2::new(theta * theta.cos(), theta * theta.sin()));
            theta += 0.15 / theta.hypot(1.0);
        }
        let ps = PointSet::new(pts).unwrap();
        let c = emst_curve(&ps).unwrap();
        assert!(c.is_manifold());
        assert_eq!(c.open_endpoints(), vec![0, ps.len() - 1]);
        assert_eq!(c.edges(), &chain(ps.len()));
    }

    #[test]
    fn crust_of_sparse_triangle_is_delaunay_subset() {
        let ps = set(&[(0., 0.), (1., 0.), (0.5, 0.8)]);
        let c = crust(&ps).unwrap();
        let d = delaunay(&ps).unwrap();
        assert!(c.edges().iter().all(|&e| d.contains_edge(e)));
    }

    // Pairwise oracle: tries every pair of points against both tangent disks.
    fn alpha_oracle(pts: &[Point2], r: f64) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                if pts[a].distance_squared(pts[b]) > 4.0 * r * r {
                    continue;
                }
                let empty = tangent_disk_centers(pts[a], pts[b], r)
                    .into_iter()
                    .any(|c| {
                        (0..pts.len())
                            .filter(|&k| k != a && k != b)
                            .all(|k| pts[k].distance_squared(c) >= r * r)
                    });
                if empty {
                    out.insert((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn alpha_disc_matches_pairwise_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..20 {
            let pts: Vec<Point2> = (0..30)
                .map(|_| Point2::new(rng.random(), rng.random()))
                .collect();
            let ps = PointSet::new(pts.clone()).unwrap();
            for r in [0.08, 0.15, 0.3] {
                let got = alpha_disc(&ps, r).unwrap();
                assert_eq!(got.edges(), &alpha_oracle(&pts, r), "trial {trial} r {r}");
            }
        }
    }

    #[test]
    fn alpha_disc_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pts: Vec<Point2> = (0..40)
            .map(|_| Point2::new(rng.random(), rng.random()))
            .collect();
        let ps = PointSet::new(pts.clone()).unwrap();
        let min_d = crate::graphs::nearest_distances(&pts)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        assert!(alpha_disc(&ps, 0.49 * min_d).unwrap().edges().is_empty());
        let big = alpha_disc(&ps, 10.0 * ps.bbox().unwrap().diagonal()).unwrap();
        let t = delaunay(&ps).unwrap();
        for (e, (_, other)) in t.edge_adjacency() {
            if other.is_none() {
                assert!(big.edges().contains(&e), "hull edge {e:?}");
            }
        }
        assert!(alpha_disc(&ps, 0.0).is_err());
        assert!(alpha_disc(&ps, -1.0).is_err());
    }

    #[test]
    fn eps_rho_conversion() {
        assert_eq!(eps_to_rho(0.5).unwrap(), 1.0);
        assert!((eps_to_rho(1.0 / 3.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((eps_to_rho(0.47).unwrap() - 0.8868).abs() < 1e-4);
        assert!(eps_to_rho(0.0).is_err());
        assert!(eps_to_rho(1.0).is_err());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for s in ["crust", "nncrust", "hnncrust", "emst", "alphadisc:0.25"] {
            assert_eq!(s.parse::<AlgorithmId>().unwrap().to_string(), s);
        }
        assert!("alphadisc".parse::<AlgorithmId>().is_err());
        assert!("alphadisc:0".parse::<AlgorithmId>().is_err());
        assert!("crust:1".parse::<AlgorithmId>().is_err());
        assert!("Crust".parse::<AlgorithmId>().is_err());
    }

    #[test]
    fn traversal_of_paths_and_cycles() {
        let pts: Vec<Point2> = (0..4)
            .map(|i| Point2::new(i as f64, (i * i) as f64))
            .collect();
        let cycle = PolyCurve::new(pts.clone(), [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(cycle.traversal(), Some((vec![0, 2, 1, 3], true)));
        let path = PolyCurve::new(pts.clone(), [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(path.traversal(), Some((vec![1, 3, 0, 2], false)));
        let partial = PolyCurve::new(pts.clone(), [(0, 1), (1, 2)]).unwrap();
        assert_eq!(partial.traversal(), None);
        let star = PolyCurve::new(pts, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.traversal(), None);
    }

    #[test]
    fn curve_rejects_bad_edges() {
        let pts = vec![Point2::new(0., 0.), Point2::new(1., 0.)];
        assert!(PolyCurve::new(pts.clone(), [(0, 2)]).is_err());
        assert!(PolyCurve::new(pts.clone(), [(1, 1)]).is_err());
        let c = PolyCurve::new(pts, [(1, 0)]).unwrap();
        assert_eq!(c.edges().iter().next(), Some(&(0, 1)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cloud() -> impl Strategy<Value = PointSet> {
            prop::collection::vec((0u32..10_000, 0u32..10_000), 4..60).prop_filter_map(
                "degenerate",
                |v| {
                    let pts = v
                        .into_iter()
                        .map(|(x, y)| Point2::new(x as f64 / 1e4, y as f64 / 1e4))
                        .collect();
                    PointSet::new(pts)
                        .ok()
                        .filter(|ps| !crate::geometry::all_collinear(ps.points()))
                },
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn filters_stay_inside_delaunay(ps in cloud()) {
                let d = delaunay(&ps).unwrap();
                for c in [crust(&ps).unwrap(), nn_crust(&ps).unwrap(), hnn_crust(&ps).unwrap(),
                          alpha_disc(&ps, 0.2).unwrap()] {
                    prop_assert!(c.edges().iter().all(|&e| d.contains_edge(e)));
                }
            }

            #[test]
            fn nearest_neighbor_edges_always_present(ps in cloud()) {
                let pts = ps.points();
                let nn = nn_crust(&ps).unwrap();
                let hnn = hnn_crust(&ps).unwrap();
                prop_assert!(nn.degrees().iter().all(|&d| d >= 1));
                prop_assert!(hnn.degrees().iter().all(|&d| d >= 1));
                for p in 0..pts.len() {
                    let q = (0..pts.len()).filter(|&q| q != p)
                        .min_by(|&a, &b| pts[p].distance_squared(pts[a])
                            .total_cmp(&pts[p].distance_squared(pts[b])).then(a.cmp(&b)))
                        .unwrap();
                    prop_assert!(hnn.edges().contains(&edge(p, q)));
                    prop_assert!(nn.edges().contains(&edge(p, q)));
                }
            }

            #[test]
            fn reruns_are_identical(ps in cloud()) {
                prop_assert_eq!(crust(&ps).unwrap(), crust(&ps).unwrap());
                prop_assert_eq!(hnn_crust(&ps).unwrap(), hnn_crust(&ps).unwrap());
            }
        }
    }
}
