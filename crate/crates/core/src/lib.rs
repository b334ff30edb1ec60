//! Planar curve reconstruction from unorganized points, and the tooling to
//! benchmark it: exact predicates and Delaunay triangulation, proximity
//! graphs, Delaunay-filter reconstructions, curve samplers, perturbation
//! models and curve-to-curve distance metrics.

pub mod bezier;
pub mod delaunay;
pub mod error;
pub mod geometry;
pub mod graphs;
pub mod groundtruth;
pub mod metrics;
pub mod perturb;
pub mod predicates;
pub mod raster;
pub mod reconstruction;
pub mod sampling;
pub mod spatial;

pub use delaunay::{delaunay, voronoi_vertices, Triangulation};
pub use error::{Error, Result};
pub use geometry::{edge, BBox, Edge, Point2, PointSet};
pub use groundtruth::GroundTruth;
pub use predicates::{circumcircle, incircle, orient2d, Circle};
pub use reconstruction::{AlgorithmId, PolyCurve};
