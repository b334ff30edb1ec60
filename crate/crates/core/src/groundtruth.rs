//! Reference curves and their two text encodings.
//!
//! ```text
//! GT-INDEXED n m          GT-ORDERED n closed|open
//! x y   (n lines)         x y   (n lines)
//! i j   (m lines)
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{invalid, parse_err, Result};
use crate::geometry::{edge, Edge, Point2};
use crate::reconstruction::PolyCurve;

/// How a ground truth was (or will be) encoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceForm {
    IndexedList,
    OrderedVertices { closed: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    vertices: Vec<Point2>,
    edges: Vec<Edge>,
    form: SourceForm,
}

impl GroundTruth {
    /// Explicit edge list over `vertices`.
    pub fn indexed(vertices: Vec<Point2>, edges: Vec<Edge>) -> Result<Self> {
        let n = vertices.len();
        if let Some(index) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(invalid(format!("vertex {index} is not finite")));
        }
        for (k, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(invalid(format!(
                    "edge {k} ({a}, {b}) references a vertex outside 0..{n}"
                )));
            }
            if a == b {
                return Err(invalid(format!("edge {k} is a self-loop at vertex {a}")));
            }
        }
        Ok(GroundTruth {
            vertices,
            edges,
            form: SourceForm::IndexedList,
        })
    }

    /// Polyline through `vertices` in order, closed back to the first vertex
    /// when `closed`.
    pub fn ordered(vertices: Vec<Point2>, closed: bool) -> Result<Self> {
        let n = vertices.len();
        let min = if closed { 3 } else { 2 };
        if n < min {
            return Err(invalid(format!(
                "an ordered {} curve needs at least {min} vertices, got {n}",
                if closed { "closed" } else { "open" }
            )));
        }
        let mut edges: Vec<Edge> = (0..n - 1).map(|i| (i, i + 1)).collect();
        if closed {
            edges.push((n - 1, 0));
        }
        let mut gt = GroundTruth::indexed(vertices, edges)?;
        gt.form = SourceForm::OrderedVertices { closed };
        Ok(gt)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn form(&self) -> SourceForm {
        self.form
    }

    /// Canonical undirected edge set.
    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().map(|&(a, b)| edge(a, b)).collect()
    }

    /// Same edges over different vertex positions (e.g. perturbed samples).
    pub fn with_vertices(&self, vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() != self.vertices.len() {
            return Err(invalid(format!(
                "expected {} vertices, got {}",
                self.vertices.len(),
                vertices.len()
            )));
        }
        let mut gt = GroundTruth::indexed(vertices, self.edges.clone())?;
        gt.form = self.form;
        Ok(gt)
    }

    pub fn to_curve(&self) -> PolyCurve {
        PolyCurve::new(self.vertices.clone(), self.edges.iter().copied())
            .expect("validated ground truth")
    }

    /// Encodes in this ground truth's own form.
    pub fn to_text(&self) -> String {
        match self.form {
            SourceForm::IndexedList => self.to_indexed_text(),
            SourceForm::OrderedVertices { closed } => {
                let mut s = format!(
                    "GT-ORDERED {} {}\n",
                    self.vertices.len(),
                    if closed { "closed" } else { "open" }
                );
                push_vertices(&mut s, &self.vertices);
                s
            }
        }
    }

    pub fn to_indexed_text(&self) -> String {
        let mut s = format!("GT-INDEXED {} {}\n", self.vertices.len(), self.edges.len());
        push_vertices(&mut s, &self.vertices);
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "{a} {b}");
        }
        s
    }

    /// Parses either encoding, detected from the header.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty ground-truth file"))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        let count = |tok: &str| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(hline, format!("bad count {tok:?}")))
        };
        let mut read_vertices = |n: usize| -> Result<Vec<Point2>> {
            (0..n)
                .map(|k| {
                    let (ln, l) = lines.next().ok_or_else(|| {
                        parse_err(hline, format!("expected {n} vertices, found {k}"))
                    })?;
                    let v = numbers::<f64>(ln, l)?;
                    Ok(Point2::new(v[0], v[1]))
                })
                .collect()
        };
        match tokens.as_slice() {
            ["GT-INDEXED", n, m] => {
                let (n, m) = (count(n)?, count(m)?);
                let vertices = read_vertices(n)?;
                let edges = (0..m)
                    .map(|k| {
                        let (ln, l) = lines.next().ok_or_else(|| {
                            parse_err(hline, format!("expected {m} edges, found {k}"))
                        })?;
                        let v = numbers::<usize>(ln, l)?;
                        Ok((v[0], v[1]))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if let Some((ln, _)) = lines.next() {
                    return Err(parse_err(ln, "unexpected content after edge list"));
                }
                GroundTruth::indexed(vertices, edges)
            }
            ["GT-ORDERED", n, flag] => {
                let closed = match *flag {
                    "closed" => true,
                    "open" => false,
                    other => {
                        return Err(parse_err(
                            hline,
                            format!("expected closed|open, got {other:?}"),
                        ))
                    }
                };
                let vertices = read_vertices(count(n)?)?;
                if let Some((ln, _)) = lines.next() {
                    return Err(parse_err(ln, "unexpected content after vertex list"));
                }
                GroundTruth::ordered(vertices, closed)
            }
            _ => Err(parse_err(
                hline,
                "expected header 'GT-INDEXED n m' or 'GT-ORDERED n closed|open'",
            )),
        }
    }
}

fn push_vertices(s: &mut String, vertices: &[Point2]) {
    for p in vertices {
        let _ = writeln!(s, "{p}");
    }
}

fn numbers<T: std::str::FromStr>(line: usize, text: &str) -> Result<[T; 2]>
where
    T::Err: std::fmt::Display,
{
    let mut it = text.split_whitespace();
    let mut next = || -> Result<T> {
        it.next()
            .ok_or_else(|| parse_err(line, "expected two values"))?
            .parse::<T>()
            .map_err(|e| parse_err(line, e.to_string()))
    };
    let pair = [next()?, next()?];
    if it.next().is_some() {
        return Err(parse_err(line, "expected exactly two values"));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn ordered_closed_square() {
        let text = "GT-ORDERED 4 closed\n0 0\n1 0\n1 1\n0 1\n";
        let gt = GroundTruth::parse_text(text).unwrap();
        assert_eq!(gt.edges(), &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(gt.to_text(), text);
    }

    #[test]
    fn indexed_round_trip_is_bit_exact() {
        let text = "GT-INDEXED 3 2\n0.1 -2.5\n3 4\n0.0000001 0.30000000000000004\n0 1\n2 1\n";
        let gt = GroundTruth::parse_text(text).unwrap();
        assert_eq!(gt.to_text(), text);
        assert_eq!(gt.edge_set(), [(0, 1), (1, 2)].into_iter().collect());
    }

    #[test]
    fn malformed_files_report_lines() {
        assert!(matches!(
            GroundTruth::parse_text("GT-INDEXED 2 1\n0 0\n1 0\n0 2\n"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            GroundTruth::parse_text("GT-INDEXED 2 1\n0 0\nx 0\n0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(GroundTruth::parse_text("GT-ORDERED 2 closed\n0 0\n1 0\n").is_err());
        assert!(GroundTruth::parse_text("GT-ORDERED 3 open\n0 0\n1 0\n").is_err());
        assert!(GroundTruth::parse_text("GT-ORDERED 2 open\n0 0\n1 0\n5 5\n").is_err());
        assert!(GroundTruth::parse_text("GT 2\n").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn indexed_text_round_trips(
                pts in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 2..30),
                picks in prop::collection::vec((0usize..1000, 1usize..1000), 0..40),
            ) {
                let n = pts.len();
                let vertices: Vec<Point2> = pts.into_iter().map(Point2::from).collect();
                let edges: Vec<Edge> = picks.into_iter()
                    .map(|(a, d)| (a % n, (a + d % (n - 1) + 1) % n))
                    .collect();
                let gt = GroundTruth::indexed(vertices, edges).unwrap();
                prop_assert_eq!(GroundTruth::parse_text(&gt.to_text()).unwrap(), gt);
            }

            #[test]
            fn ordered_text_round_trips(
                pts in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 3..30),
                closed in any::<bool>(),
            ) {
                let gt = GroundTruth::ordered(pts.into_iter().map(Point2::from).collect(), closed).unwrap();
                let back = GroundTruth::parse_text(&gt.to_text()).unwrap();
                prop_assert_eq!(&back, &gt);
                prop_assert_eq!(back.edges().len(), gt.vertices().len() - usize::from(!closed));
            }
        }
    }
}
