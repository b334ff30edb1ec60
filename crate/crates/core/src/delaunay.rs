//! Delaunay triangulation by Bowyer-Watson insertion over a mesh closed with
//! ghost triangles.
//!
//! Every hull edge carries a ghost triangle joining it to a vertex at
//! infinity, so points outside the current hull are inserted by the same
//! cavity rule as interior ones. All decisions go through the exact
//! predicates. Cocircular configurations are resolved afterwards by flipping
//! to the diagonal whose smaller endpoint index is lower.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{edge, BBox, Edge, Point2, PointSet};
use crate::predicates::{circumcenter, incircle_unchecked, orient2d_unchecked};

const GHOST: u32 = u32::MAX;

/// A Delaunay triangulation of a [`PointSet`].
#[derive(Debug, Clone)]
pub struct Triangulation {
    points: Vec<Point2>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<Edge>,
    edge_triangles: Vec<(usize, Option<usize>)>,
}

impl Triangulation {
    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    /// Triangles as counter-clockwise vertex-index triples.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Unique undirected edges, sorted.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Incident triangles of an edge: one for hull edges, two otherwise.
    pub fn edge_triangles(&self, e: Edge) -> Option<(usize, Option<usize>)> {
        let e = edge(e.0, e.1);
        self.edges
            .binary_search(&e)
            .ok()
            .map(|i| self.edge_triangles[i])
    }

    pub fn edge_adjacency(&self) -> impl Iterator<Item = (Edge, (usize, Option<usize>))> + '_ {
        self.edges
            .iter()
            .copied()
            .zip(self.edge_triangles.iter().copied())
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&edge(e.0, e.1)).is_ok()
    }

    pub fn triangle_points(&self, t: usize) -> [Point2; 3] {
        self.triangles[t].map(|v| self.points[v])
    }

    /// Sorted Delaunay neighbours of every vertex.
    pub fn vertex_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.points.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// Delaunay triangulation of `ps`. Fails on fewer than three points or when
/// all points are collinear.
pub fn delaunay(ps: &PointSet) -> Result<Triangulation> {
    if ps.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "triangulation needs at least 3 points, got {}",
            ps.len()
        )));
    }
    let points = ps.points();
    let mut order = insertion_order(points);

    let a = order[0];
    let b = order[1];
    let Some(c_pos) = order
        .iter()
        .position(|&c| orient2d_unchecked(points[a], points[b], points[c]) != 0)
    else {
        return Err(Error::DegenerateInput("all points are collinear".into()));
    };
    let c = order.remove(c_pos);

    let mut mesh = Mesh::new(points, a as u32, b as u32, c as u32);
    let mut hint = 0;
    for &v in &order[2..] {
        hint = mesh.insert(v as u32, hint)?;
    }
    mesh.resolve_cocircular();
    Ok(mesh.export())
}

/// Circumcenters of the triangles of `t`, in triangle order.
pub fn voronoi_vertices(t: &Triangulation) -> Vec<Point2> {
    t.triangles
        .iter()
        .map(|tri| circumcenter(t.points[tri[0]], t.points[tri[1]], t.points[tri[2]]))
        .collect()
}

/// Randomized rounds of doubling size, each spatially sorted: the shuffle
/// keeps cavities small on structured inputs such as points along a curve,
/// the sort keeps walks short. The seed is fixed, and the final mesh does not
/// depend on the order anyway.
fn insertion_order(points: &[Point2]) -> Vec<usize> {
    let n = points.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(0x00de_1a04));
    let mut bounds = vec![n];
    while *bounds.last().unwrap() > 64 {
        bounds.push(bounds.last().unwrap() / 2);
    }
    bounds.push(0);
    bounds.reverse();
    for w in bounds.windows(2) {
        spatial_order(points, &mut order[w[0]..w[1]]);
    }
    order
}

/// Orders indices by recursive median splits along the wider axis so that
/// consecutive insertions are spatially close and the walk stays short.
fn spatial_order(points: &[Point2], idx: &mut [usize]) {
    if idx.len() <= 2 {
        return;
    }
    let sub: Vec<Point2> = idx.iter().map(|&i| points[i]).collect();
    let bbox = BBox::of(&sub).unwrap();
    let by_x = bbox.width() >= bbox.height();
    let mid = idx.len() / 2;
    idx.select_nth_unstable_by(mid, |&i, &j| {
        let (pi, pj) = (points[i], points[j]);
        let (ki, kj) = if by_x { (pi.x, pj.x) } else { (pi.y, pj.y) };
        ki.partial_cmp(&kj).unwrap().then(i.cmp(&j))
    });
    let (lo, hi) = idx.split_at_mut(mid);
    spatial_order(points, lo);
    spatial_order(points, hi);
}

struct Mesh<'a> {
    pts: &'a [Point2],
    verts: Vec<[u32; 3]>,
    nbrs: Vec<[u32; 3]>,
    mark: Vec<u32>,
    stamp: u32,
    walk_turn: usize,
}

#[inline]
fn next(k: usize) -> usize {
    (k + 1) % 3
}

#[inline]
fn prev(k: usize) -> usize {
    (k + 2) % 3
}

impl<'a> Mesh<'a> {
    fn new(pts: &'a [Point2], a: u32, b: u32, c: u32) -> Self {
        let (a, b) = if orient2d_unchecked(pts[a as usize], pts[b as usize], pts[c as usize]) > 0 {
            (a, b)
        } else {
            (b, a)
        };
        let verts = vec![[a, b, c], [c, b, GHOST], [a, c, GHOST], [b, a, GHOST]];
        let mut mesh = Mesh {
            pts,
            nbrs: vec![[0; 3]; verts.len()],
            mark: vec![0; verts.len()],
            verts,
            stamp: 0,
            walk_turn: 0,
        };
        mesh.link_all();
        mesh
    }

    /// Recomputes every neighbour link from directed edges. Only used for
    /// the initial four triangles.
    fn link_all(&mut self) {
        let mut by_edge = HashMap::new();
        for (t, v) in self.verts.iter().enumerate() {
            for k in 0..3 {
                by_edge.insert((v[next(k)], v[prev(k)]), t as u32);
            }
        }
        for t in 0..self.verts.len() {
            let v = self.verts[t];
            for k in 0..3 {
                self.nbrs[t][k] = by_edge[&(v[prev(k)], v[next(k)])];
            }
        }
    }

    #[inline]
    fn pt(&self, v: u32) -> Point2 {
        self.pts[v as usize]
    }

    #[inline]
    fn is_ghost(&self, t: u32) -> bool {
        self.verts[t as usize].contains(&GHOST)
    }

    fn in_conflict(&self, t: u32, p: Point2) -> bool {
        let v = self.verts[t as usize];
        match v.iter().position(|&x| x == GHOST) {
            Some(g) => {
                let a = self.pt(v[next(g)]);
                let b = self.pt(v[prev(g)]);
                match orient2d_unchecked(a, b, p) {
                    1 => true,
                    -1 => false,
                    _ => strictly_between(a, b, p),
                }
            }
            None => incircle_unchecked(self.pt(v[0]), self.pt(v[1]), self.pt(v[2]), p) > 0,
        }
    }

    /// Visibility walk towards `p`; stops at the real triangle containing it
    /// or at the first ghost triangle whose hull edge sees it.
    fn locate(&mut self, start: u32, p: Point2) -> u32 {
        let mut t = start;
        'walk: loop {
            if self.is_ghost(t) {
                return t;
            }
            let v = self.verts[t as usize];
            self.walk_turn = (self.walk_turn + 1) % 3;
            for i in 0..3 {
                let k = (i + self.walk_turn) % 3;
                if orient2d_unchecked(self.pt(v[next(k)]), self.pt(v[prev(k)]), p) < 0 {
                    t = self.nbrs[t as usize][k];
                    continue 'walk;
                }
            }
            return t;
        }
    }

    fn back_index(&self, t: u32, a: u32, b: u32) -> usize {
        let v = self.verts[t as usize];
        (0..3)
            .find(|&j| v[j] != a && v[j] != b)
            .expect("neighbour shares an edge")
    }

    fn insert(&mut self, pi: u32, hint: u32) -> Result<u32> {
        let p = self.pt(pi);
        let start = if self.is_ghost(hint) { 0 } else { hint };
        let start = if self.is_ghost(start) {
            (0..self.verts.len() as u32)
                .find(|&t| !self.is_ghost(t))
                .unwrap()
        } else {
            start
        };
        let t0 = self.locate(start, p);
        if let Some(&dup) = self.verts[t0 as usize]
            .iter()
            .find(|&&v| v != GHOST && self.pt(v) == p)
        {
            let (first, second) = (dup.min(pi) as usize, dup.max(pi) as usize);
            return Err(Error::DuplicatePoints { first, second });
        }

        self.stamp += 1;
        let stamp = self.stamp;
        let mut cavity = vec![t0];
        self.mark[t0 as usize] = stamp;
        let mut i = 0;
        while i < cavity.len() {
            let t = cavity[i];
            for k in 0..3 {
                let n = self.nbrs[t as usize][k];
                if self.mark[n as usize] != stamp && self.in_conflict(n, p) {
                    self.mark[n as usize] = stamp;
                    cavity.push(n);
                }
            }
            i += 1;
        }

        // Boundary edges (a, b) of the cavity, oriented as in their cavity
        // triangle, with the triangle outside.
        let mut boundary = Vec::with_capacity(cavity.len() + 2);
        for &t in &cavity {
            let v = self.verts[t as usize];
            for k in 0..3 {
                let n = self.nbrs[t as usize][k];
                if self.mark[n as usize] != stamp {
                    boundary.push((v[next(k)], v[prev(k)], n));
                }
            }
        }

        let mut slots = cavity;
        while slots.len() < boundary.len() {
            slots.push(self.verts.len() as u32);
            self.verts.push([0; 3]);
            self.nbrs.push([0; 3]);
            self.mark.push(0);
        }
        slots.truncate(boundary.len());

        for (&(a, b, out), &s) in boundary.iter().zip(&slots) {
            self.verts[s as usize] = [a, b, pi];
            self.nbrs[s as usize][2] = out;
            let j = self.back_index(out, a, b);
            self.nbrs[out as usize][j] = s;
        }
        if boundary.len() <= 16 {
            for (i, &(a, b, _)) in boundary.iter().enumerate() {
                let after = boundary.iter().position(|&(x, _, _)| x == b).unwrap();
                let before = boundary.iter().position(|&(_, y, _)| y == a).unwrap();
                let s = slots[i] as usize;
                self.nbrs[s][0] = slots[after];
                self.nbrs[s][1] = slots[before];
            }
        } else {
            let by_start: HashMap<u32, u32> = boundary
                .iter()
                .zip(&slots)
                .map(|(&(a, _, _), &s)| (a, s))
                .collect();
            let by_end: HashMap<u32, u32> = boundary
                .iter()
                .zip(&slots)
                .map(|(&(_, b, _), &s)| (b, s))
                .collect();
            for (&(a, b, _), &s) in boundary.iter().zip(&slots) {
                self.nbrs[s as usize][0] = by_start[&b];
                self.nbrs[s as usize][1] = by_end[&a];
            }
        }

        Ok(slots
            .iter()
            .copied()
            .find(|&s| !self.is_ghost(s))
            .unwrap_or(slots[0]))
    }

    /// Flips cocircular interior edges to the diagonal whose smaller
    /// endpoint index is lower, so the result does not depend on insertion
    /// order. Every flip lowers the sum of the diagonals' smaller endpoints,
    /// hence termination.
    fn resolve_cocircular(&mut self) {
        let mut stack: Vec<(u32, usize)> = Vec::new();
        for t in 0..self.verts.len() as u32 {
            if self.is_ghost(t) {
                continue;
            }
            for k in 0..3 {
                let n = self.nbrs[t as usize][k];
                if n > t && !self.is_ghost(n) {
                    stack.push((t, k));
                }
            }
        }
        while let Some((t, k)) = stack.pop() {
            let u = self.nbrs[t as usize][k];
            if self.is_ghost(t) || self.is_ghost(u) {
                continue;
            }
            let v = self.verts[t as usize];
            let (c, a, b) = (v[k], v[next(k)], v[prev(k)]);
            let j = self.back_index(u, a, b);
            let d = self.verts[u as usize][j];
            let ic = incircle_unchecked(self.pt(c), self.pt(a), self.pt(b), self.pt(d));
            if ic > 0 || (ic == 0 && c.min(d) < a.min(b)) {
                self.flip(t, k, u, j);
                stack.extend([(t, 0), (t, 2), (u, 0), (u, 2)]);
            }
        }
    }

    fn flip(&mut self, t: u32, k: usize, u: u32, j: usize) {
        let tv = self.verts[t as usize];
        let uv = self.verts[u as usize];
        let (c, a, b) = (tv[k], tv[next(k)], tv[prev(k)]);
        let d = uv[j];
        debug_assert_eq!((uv[next(j)], uv[prev(j)]), (b, a));
        let n_bc = self.nbrs[t as usize][next(k)];
        let n_ca = self.nbrs[t as usize][prev(k)];
        let n_ad = self.nbrs[u as usize][next(j)];
        let n_db = self.nbrs[u as usize][prev(j)];

        self.verts[t as usize] = [c, a, d];
        self.nbrs[t as usize] = [n_ad, u, n_ca];
        self.verts[u as usize] = [d, b, c];
        self.nbrs[u as usize] = [n_bc, t, n_db];

        let ja = self.back_index(n_ad, a, d);
        self.nbrs[n_ad as usize][ja] = t;
        let jb = self.back_index(n_bc, b, c);
        self.nbrs[n_bc as usize][jb] = u;
    }

    fn export(self) -> Triangulation {
        let triangles: Vec<[usize; 3]> = self
            .verts
            .iter()
            .filter(|v| !v.contains(&GHOST))
            .map(|v| v.map(|x| x as usize))
            .collect();
        let mut adjacency: HashMap<Edge, (usize, Option<usize>)> = HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                let e = edge(tri[next(k)], tri[prev(k)]);
                adjacency
                    .entry(e)
                    .and_modify(|entry| entry.1 = Some(t))
                    .or_insert((t, None));
            }
        }
        let mut pairs: Vec<(Edge, (usize, Option<usize>))> = adjacency.into_iter().collect();
        pairs.sort_unstable_by_key(|(e, _)| *e);
        let (edges, edge_triangles) = pairs.into_iter().unzip();
        Triangulation {
            points: self.pts.to_vec(),
            triangles,
            edges,
            edge_triangles,
        }
    }
}

/// `p` is collinear with `a`, `b`; true when it lies strictly between them.
fn strictly_between(a: Point2, b: Point2, p: Point2) -> bool {
    if a.x != b.x {
        (a.x < p.x && p.x < b.x) || (b.x < p.x && p.x < a.x)
    } else {
        (a.y < p.y && p.y < b.y) || (b.y < p.y && p.y < a.y)
    }
}
