//! Geometry of constant-curvature simplices computed from edge lengths alone.
//!
//! Given the pairwise geodesic edge lengths of an `n`-simplex, this crate
//! decides whether they are realizable in Euclidean, hyperbolic, spherical or
//! general constant curvature `k`, measures distances between points given in
//! barycentric coordinates, projects vertices orthogonally onto their
//! opposite facets, and computes Euclidean volumes. All of it runs on small
//! Gram matrices derived from the edge lengths; no coordinates are built.
//!
//! The [`oracle`] module does build coordinates, in the hyperboloid, sphere or
//! flat model, and recomputes the same quantities by brute force so the
//! synthetic formulas can be checked against it.
//!
//! ```
//! use curvplex::{distance, BarycentricPoint, Curvature, EdgeLengths};
//!
//! let e = EdgeLengths::from_upper(4, &[2.0, 3.0, 4.0, 4.0, 5.0, 3.0]).unwrap();
//! let p = BarycentricPoint::new(vec![0.25; 4]).unwrap();
//! let q = BarycentricPoint::new(vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0]).unwrap();
//! let d = distance(&e, Curvature::EUCLIDEAN, &p, &q).unwrap();
//! assert!((d - 11.0 / 12.0).abs() < 1e-12);
//! ```

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod io;
pub mod metrics;
pub mod oracle;
pub mod projection;
pub mod realizability;
pub mod simplex;
pub mod symmat;

pub use error::{Error, Result};
pub use metrics::{
    curved_distance, distance, euclidean_distance, hyperbolic_distance, measure,
    spherical_distance, DistanceReport,
};
pub use oracle::{brute_distance, brute_project, embed, Embedding, Model};
pub use projection::{
    curved_projection_terms, euclidean_face_volume, euclidean_project, euclidean_volume,
    hyperbolic_project, project, project_onto_face, signed_minor_sum, spherical_project,
    CurvedProjectionTerms, ProjectionResult,
};
pub use realizability::{
    check, check_euclidean, check_euclidean_at, check_hyperbolic, check_spherical,
    RealizabilityReport, Verdict,
};
pub use simplex::{
    curved_gram, euclidean_gram, hull_inner_product, lift_to_model, BarycentricPoint, Curvature,
    CurvatureClass, CurvedGram, EdgeLengths, EuclideanGram, HullVector,
};
pub use symmat::{Signature, SymMatrix, DEFAULT_TOL};
