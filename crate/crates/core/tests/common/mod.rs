//! Random simplex corpora shared by the integration tests.
//!
//! Simplices are generated from explicit points in the model space, so every
//! corpus member is realizable by construction; edge lengths are then read
//! off the coordinates.

#![allow(dead_code)]

use curvplex::{
    check, euclidean_gram, BarycentricPoint, Curvature, EdgeLengths, Embedding, Verdict,
    DEFAULT_TOL,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr_free::standard_normal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Box-Muller, to avoid pulling in a distributions crate.
mod rand_distr_free {
    use rand::Rng;

    pub fn standard_normal(rng: &mut impl Rng) -> f64 {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

pub fn unit_vector(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| standard_normal(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub edges: EdgeLengths,
    pub curvature: Curvature,
    /// Points the simplex was generated from.
    pub points: Embedding,
}

/// Ratio of the smallest to largest eigenvalue magnitude of the Gram matrix
/// that decides realizability.
pub fn conditioning(e: &EdgeLengths, c: Curvature) -> f64 {
    let ev = if c.kappa() == 0.0 {
        euclidean_gram(e, e.vertex_count())
            .unwrap()
            .matrix()
            .eigenvalues()
    } else {
        let unit = e.scaled(c.scale());
        curvplex::curved_gram(&unit, c.unit())
            .unwrap()
            .matrix()
            .eigenvalues()
    };
    let max = ev.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    let min = ev.iter().fold(f64::INFINITY, |m, l| m.min(l.abs()));
    min / max
}

fn raw_points(rng: &mut impl Rng, c: Curvature, n: usize) -> Vec<Vec<f64>> {
    let k = c.kappa();
    (0..=n)
        .map(|_| {
            let u = unit_vector(rng, n);
            if k == 0.0 {
                let r: f64 = rng.gen_range(0.2..2.0);
                u.into_iter().map(|x| x * r).collect()
            } else {
                let radius = 1.0 / k.abs().sqrt();
                if k < 0.0 {
                    let r: f64 = rng.gen_range(0.0..1.5);
                    let mut p: Vec<f64> = u.into_iter().map(|x| x * r.sinh() * radius).collect();
                    p.push(r.cosh() * radius);
                    p
                } else {
                    let t: f64 = rng.gen_range(0.0..0.7);
                    let mut p: Vec<f64> = u.into_iter().map(|x| x * t.sin() * radius).collect();
                    p.push(t.cos() * radius);
                    p
                }
            }
        })
        .collect()
}

/// One realizable, reasonably conditioned `n`-simplex of curvature `c`.
pub fn random_simplex(rng: &mut impl Rng, c: Curvature, n: usize) -> Sample {
    loop {
        let points = Embedding::from_vertices(c, raw_points(rng, c, n)).unwrap();
        let Ok(edges) = points.edge_lengths() else {
            continue;
        };
        if conditioning(&edges, c) < 1e-3 {
            continue;
        }
        if check(&edges, c, DEFAULT_TOL).verdict != Verdict::Realizable {
            continue;
        }
        return Sample {
            edges,
            curvature: c,
            points,
        };
    }
}

/// `count` simplices with dimensions cycling through `2..=6`.
pub fn corpus(seed: u64, c: Curvature, count: usize) -> Vec<Sample> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| random_simplex(&mut r, c, 2 + k % 5))
        .collect()
}

/// Uniform point of the closed simplex with `m` vertices.
pub fn random_interior(rng: &mut impl Rng, m: usize) -> BarycentricPoint {
    let w: Vec<f64> = (0..m)
        .map(|_| -rng.gen_range(f64::MIN_POSITIVE..1.0).ln())
        .collect();
    let s: f64 = w.iter().sum();
    BarycentricPoint::new(w.into_iter().map(|x| x / s).collect()).unwrap()
}

/// Uniform point of the facet opposite `vertex` (1-based).
pub fn random_on_facet(rng: &mut impl Rng, m: usize, vertex: usize) -> BarycentricPoint {
    let mut w: Vec<f64> = (0..m)
        .map(|_| -rng.gen_range(f64::MIN_POSITIVE..1.0).ln())
        .collect();
    w[vertex - 1] = 0.0;
    let s: f64 = w.iter().sum();
    BarycentricPoint::new(w.into_iter().map(|x| x / s).collect()).unwrap()
}

pub fn tetra() -> EdgeLengths {
    EdgeLengths::from_upper(4, &[2.0, 3.0, 4.0, 4.0, 5.0, 3.0]).unwrap()
}

pub fn classes() -> [Curvature; 3] {
    [
        Curvature::EUCLIDEAN,
        Curvature::HYPERBOLIC,
        Curvature::SPHERICAL,
    ]
}
