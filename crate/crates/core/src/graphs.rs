//! Proximity graphs on a point set.
//!
//! For points in general position these nest as
//! `EMST ⊆ RNG ⊆ Gabriel ⊆ Delaunay`. The RNG and Gabriel tests use strict
//! interior containment, so a point exactly on a lune or diameter-disk
//! boundary does not remove an edge. On cocircular input that makes the
//! Gabriel graph keep both diagonals of a square while the triangulation keeps
//! one, which is the only way the chain can break.

use std::collections::BTreeSet;

use crate::delaunay::{delaunay, Triangulation};
use crate::error::{invalid, Result};
use crate::geometry::{all_collinear, edge, require_len, Edge, Point2, PointSet};
use crate::predicates::{circumcircle, dot_sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Emst,
    Rng,
    Gabriel,
    BetaSkeleton,
    SphereOfInfluence,
    Delaunay,
}

/// An undirected graph over the indices of a point set.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    pub kind: GraphKind,
    pub vertex_count: usize,
    pub edges: BTreeSet<Edge>,
}

impl Graph {
    fn new(kind: GraphKind, vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        Graph {
            kind,
            vertex_count,
            edges: edges.into_iter().map(|(a, b)| edge(a, b)).collect(),
        }
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&edge(e.0, e.1))
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.edges.is_subset(&other.edges)
    }

    pub fn total_length(&self, points: &[Point2]) -> f64 {
        self.edges
            .iter()
            .map(|&(a, b)| points[a].distance(points[b]))
            .sum()
    }
}

pub fn delaunay_graph(t: &Triangulation) -> Graph {
    Graph::new(
        GraphKind::Delaunay,
        t.points().len(),
        t.edges().iter().copied(),
    )
}

/// Consecutive pairs after a lexicographic sort; the proximity graphs of a
/// collinear set all reduce to this chain.
fn collinear_chain(points: &[Point2]) -> Vec<Edge> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (points[a], points[b]);
        pa.x.partial_cmp(&pb.x)
            .unwrap()
            .then(pa.y.partial_cmp(&pb.y).unwrap())
    });
    order.windows(2).map(|w| edge(w[0], w[1])).collect()
}

/// Gabriel edges of a triangulation: a Delaunay edge survives unless one of
/// its opposite triangle vertices sits strictly inside the diameter disk.
fn gabriel_edges(t: &Triangulation) -> Vec<Edge> {
    let pts = t.points();
    t.edge_adjacency()
        .filter(|&((a, b), (t0, t1))| {
            [Some(t0), t1].into_iter().flatten().all(|tri| {
                let c = t.triangles()[tri]
                    .into_iter()
                    .find(|&v| v != a && v != b)
                    .unwrap();
                dot_sign(pts[c], pts[a], pts[b]) >= 0
            })
        })
        .map(|(e, _)| e)
        .collect()
}

pub(crate) fn candidates(ps: &PointSet) -> Result<Vec<Edge>> {
    if all_collinear(ps.points()) {
        Ok(collinear_chain(ps.points()))
    } else {
        Ok(delaunay(ps)?.edges().to_vec())
    }
}

/// Euclidean minimum spanning tree, by Kruskal over the Delaunay edges.
/// Equal lengths are broken by the canonical `(i, j)` order.
pub fn emst(ps: &PointSet) -> Result<Graph> {
    require_len(ps, 2, "EMST")?;
    let pts = ps.points();
    let mut cand = candidates(ps)?;
    cand.sort_by(|&(a, b), &(c, d)| {
        pts[a]
            .distance_squared(pts[b])
            .partial_cmp(&pts[c].distance_squared(pts[d]))
            .unwrap()
            .then((a, b).cmp(&(c, d)))
    });
    let mut uf = UnionFind::new(pts.len());
    let mut tree = Vec::with_capacity(pts.len() - 1);
    for (a, b) in cand {
        if uf.union(a, b) {
            tree.push((a, b));
            if tree.len() == pts.len() - 1 {
                break;
            }
        }
    }
    Ok(Graph::new(GraphKind::Emst, pts.len(), tree))
}

/// Gabriel graph: `(p, q)` iff the open disk with diameter `pq` is empty.
pub fn gabriel(ps: &PointSet) -> Result<Graph> {
    require_len(ps, 2, "Gabriel graph")?;
    let edges = if all_collinear(ps.points()) {
        collinear_chain(ps.points())
    } else {
        gabriel_edges(&delaunay(ps)?)
    };
    Ok(Graph::new(GraphKind::Gabriel, ps.len(), edges))
}

/// Relative neighbourhood graph: `(p, q)` iff no third point is strictly
/// closer to both `p` and `q` than they are to each other.
pub fn rng(ps: &PointSet) -> Result<Graph> {
    let gg = gabriel(ps)?;
    let pts = ps.points();
    let edges = gg.edges.into_iter().filter(|&(a, b)| {
        let d = pts[a].distance_squared(pts[b]);
        !pts.iter().enumerate().any(|(x, &px)| {
            x != a && x != b && px.distance_squared(pts[a]) < d && px.distance_squared(pts[b]) < d
        })
    });
    Ok(Graph::new(
        GraphKind::Rng,
        ps.len(),
        edges.collect::<Vec<_>>(),
    ))
}

/// Delaunay filter keeping edges shorter than `beta / 2` times the
/// circumradius of every adjacent triangle.
pub fn beta_skeleton(t: &Triangulation, beta: f64) -> Result<Graph> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(invalid(format!("beta must be positive, got {beta}")));
    }
    let pts = t.points();
    let mut kept = Vec::new();
    for ((a, b), (t0, t1)) in t.edge_adjacency() {
        let len = pts[a].distance(pts[b]);
        let mut keep = true;
        for tri in [Some(t0), t1].into_iter().flatten() {
            let [p, q, r] = t.triangle_points(tri);
            let radius = circumcircle(p, q, r)?.radius;
            if !(len < 0.5 * beta * radius) {
                keep = false;
                break;
            }
        }
        if keep {
            kept.push((a, b));
        }
    }
    Ok(Graph::new(GraphKind::BetaSkeleton, pts.len(), kept))
}

/// Nearest-neighbour distance of every point, by brute force.
pub fn nearest_distances(points: &[Point2]) -> Vec<f64> {
    points
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &q)| p.distance(q))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// Sphere-of-influence graph: `(p, q)` iff `d(p, q) <= r_p + r_q` where `r`
/// is the nearest-neighbour distance.
pub fn sphere_of_influence(ps: &PointSet) -> Result<Graph> {
    require_len(ps, 2, "sphere-of-influence graph")?;
    let pts = ps.points();
    let radius = nearest_distances(pts);
    let mut edges = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i].distance(pts[j]) <= radius[i] + radius[j] {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::new(GraphKind::SphereOfInfluence, pts.len(), edges))
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}
