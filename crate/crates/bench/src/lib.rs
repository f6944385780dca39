//! Fixed inputs shared by the benchmarks.

use curvplex::{BarycentricPoint, EdgeLengths};

/// Reference 3-simplex with edges 2, 3, 4, 4, 5, 3.
pub fn tetra() -> EdgeLengths {
    EdgeLengths::from_upper(4, &[2.0, 3.0, 4.0, 4.0, 5.0, 3.0]).unwrap()
}

/// Unit-edge regular simplex with every edge perturbed by up to 10%;
/// realizable in all three geometries.
pub fn near_regular(vertices: usize) -> EdgeLengths {
    let upper: Vec<f64> = (0..vertices)
        .flat_map(|i| (i + 1..vertices).map(move |j| (i, j)))
        .map(|(i, j)| 1.0 + 0.1 * ((7 * i + 3 * j) as f64).sin())
        .collect();
    EdgeLengths::from_upper(vertices, &upper).unwrap()
}

pub fn centroid(vertices: usize) -> BarycentricPoint {
    BarycentricPoint::new(vec![1.0 / vertices as f64; vertices]).unwrap()
}

/// An interior point biased toward the first vertex.
pub fn skewed(vertices: usize) -> BarycentricPoint {
    let raw: Vec<f64> = (0..vertices).map(|k| 1.0 / (k + 1) as f64).collect();
    let s: f64 = raw.iter().sum();
    BarycentricPoint::new(raw.into_iter().map(|x| x / s).collect()).unwrap()
}
