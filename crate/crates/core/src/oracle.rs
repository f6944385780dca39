//! Explicit model-space embeddings, used to check the synthetic formulas.
//!
//! Everything here works on coordinates: distances are evaluated with the
//! ambient inner product, projections are found by direct numerical
//! minimization. None of it goes through the minor-based formulas.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::realizability::{check, Verdict};
use crate::simplex::{
    check_vertex, curved_gram, euclidean_gram, BarycentricPoint, Curvature, EdgeLengths,
};

/// Ambient space of an embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    /// Flat `R^dim`.
    EuclideanSpace { dim: usize },
    /// `R^(dim,1)`; the last coordinate is the time axis.
    MinkowskiSpace { dim: usize },
    /// Sphere of radius `1/sqrt(k)` in `R^ambient`.
    SphereInEuclidean { ambient: usize },
}

impl Model {
    pub fn ambient_dim(&self) -> usize {
        match *self {
            Model::EuclideanSpace { dim } => dim,
            Model::MinkowskiSpace { dim } => dim + 1,
            Model::SphereInEuclidean { ambient } => ambient,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    pub model: Model,
    pub curvature: f64,
    pub vertices: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Embedding {
    /// Wraps explicit vertex coordinates. Points for curved models are
    /// expected on the model surface `<v,v> = 1/k`.
    pub fn from_vertices(curvature: Curvature, vertices: Vec<Vec<f64>>) -> Result<Self> {
        let ambient = vertices.first().map(Vec::len).unwrap_or(0);
        if vertices.len() < 2 || vertices.iter().any(|v| v.len() != ambient) || ambient == 0 {
            return Err(Error::DimensionMismatch {
                expected: ambient.max(1),
                actual: vertices.iter().map(Vec::len).min().unwrap_or(0),
            });
        }
        let kappa = curvature.kappa();
        let model = if kappa == 0.0 {
            Model::EuclideanSpace { dim: ambient }
        } else if kappa < 0.0 {
            Model::MinkowskiSpace { dim: ambient - 1 }
        } else {
            Model::SphereInEuclidean { ambient }
        };
        Ok(Self {
            model,
            curvature: kappa,
            vertices,
        })
    }

    /// Ambient bilinear form.
    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        match self.model {
            Model::MinkowskiSpace { dim } => dot(&a[..dim], &b[..dim]) - a[dim] * b[dim],
            _ => dot(a, b),
        }
    }

    /// Geodesic distance between two points on the model surface (or
    /// anywhere, for the flat model).
    pub fn model_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        let k = self.curvature;
        if k == 0.0 {
            let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            return dot(&d, &d).sqrt();
        }
        let s = k.abs().sqrt();
        let c = k * self.inner(a, b);
        if k < 0.0 {
            c.max(1.0).acosh() / s
        } else {
            c.clamp(-1.0, 1.0).acos() / s
        }
    }

    /// Edge lengths recomputed from the coordinates.
    pub fn edge_lengths(&self) -> Result<EdgeLengths> {
        let m = self.vertices.len();
        let mut gamma = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in (i + 1)..m {
                let d = self.model_distance(&self.vertices[i], &self.vertices[j]);
                gamma[i][j] = d;
                gamma[j][i] = d;
            }
        }
        EdgeLengths::new(gamma)
    }

    /// `sum_i w_i v_i` in ambient coordinates.
    pub fn hull_point(&self, weights: &[f64]) -> Vec<f64> {
        let dim = self.model.ambient_dim();
        let mut p = vec![0.0; dim];
        for (w, v) in weights.iter().zip(&self.vertices) {
            for k in 0..dim {
                p[k] += w * v[k];
            }
        }
        p
    }

    /// Radial projection of a hull point onto the model surface.
    pub fn lift(&self, p: &[f64]) -> Result<Vec<f64>> {
        let k = self.curvature;
        if k == 0.0 {
            return Ok(p.to_vec());
        }
        let pp = self.inner(p, p);
        if k < 0.0 && pp >= 0.0 {
            return Err(Error::OutsideLightCone(pp));
        }
        if k > 0.0 && pp <= 0.0 {
            return Err(Error::DegenerateDirection(pp));
        }
        let s = (k.abs() * pp.abs()).sqrt();
        Ok(p.iter().map(|c| c / s).collect())
    }

    /// Model point for barycentric weights.
    pub fn point(&self, x: &BarycentricPoint) -> Result<Vec<f64>> {
        if x.len() != self.vertices.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vertices.len(),
                actual: x.len(),
            });
        }
        self.lift(&self.hull_point(x.coords()))
    }
}

/// Builds explicit coordinates realizing `e` in the model of curvature `c`.
///
/// Flat: Cholesky factor of the apex Gram matrix, apex at the origin.
/// Hyperbolic: eigendecomposition of the vertex Gram matrix, time axis last,
/// oriented onto the upper sheet. Spherical: Cholesky factor of the vertex
/// Gram matrix.
pub fn embed(e: &EdgeLengths, c: Curvature, tol: f64) -> Result<Embedding> {
    let report = check(e, c, tol);
    if report.verdict != Verdict::Realizable {
        return Err(Error::NotRealizableInput(report.detail));
    }
    let kappa = c.kappa();
    let m = e.vertex_count();
    let n = e.dim();
    if kappa == 0.0 {
        let q = euclidean_gram(e, m)?;
        let l = q
            .matrix()
            .as_matrix()
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Inconsistent("Cholesky failed on a realizable Gram".into()))?
            .l();
        let mut vertices: Vec<Vec<f64>> =
            (0..n).map(|i| l.row(i).iter().copied().collect()).collect();
        vertices.push(vec![0.0; n]);
        return Embedding::from_vertices(c, vertices);
    }
    let q = curved_gram(e, c)?;
    if kappa > 0.0 {
        let l = q
            .matrix()
            .as_matrix()
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Inconsistent("Cholesky failed on a realizable Gram".into()))?
            .l();
        let vertices = (0..m).map(|i| l.row(i).iter().copied().collect()).collect();
        return Embedding::from_vertices(c, vertices);
    }

    let (values, vectors) = q.matrix().eigen();
    // Ascending order puts the single negative eigenvalue first; move it last
    // so time is the final axis.
    let idx: Vec<usize> = (1..m).chain(std::iter::once(0)).collect();
    if values[0] >= 0.0 || values[1] <= 0.0 {
        return Err(Error::Inconsistent(
            "vertex Gram does not have Lorentzian signature".into(),
        ));
    }
    let mut coords = DMatrix::zeros(m, m);
    for (col, &k) in idx.iter().enumerate() {
        let s = values[k].abs().sqrt();
        for i in 0..m {
            coords[(i, col)] = vectors[(i, k)] * s;
        }
    }
    let time = m - 1;
    if (0..m).map(|i| coords[(i, time)]).sum::<f64>() < 0.0 {
        for i in 0..m {
            coords[(i, time)] = -coords[(i, time)];
        }
    }
    if (0..m).any(|i| coords[(i, time)] <= 0.0) {
        return Err(Error::Inconsistent(
            "vertices landed on both sheets of the hyperboloid".into(),
        ));
    }
    let vertices = (0..m)
        .map(|i| coords.row(i).iter().copied().collect())
        .collect();
    Embedding::from_vertices(c, vertices)
}

/// Distance between two barycentric points evaluated on coordinates.
pub fn brute_distance(emb: &Embedding, x: &BarycentricPoint, y: &BarycentricPoint) -> Result<f64> {
    let a = emb.point(x)?;
    let b = emb.point(y)?;
    Ok(emb.model_distance(&a, &b))
}

/// Monotone surrogate for the distance from `target` to the lifted hull
/// point: squared length when flat, `-<v, p>/sqrt|<p,p>|` when curved.
fn objective(emb: &Embedding, target: &[f64], p: &[f64]) -> f64 {
    if emb.curvature == 0.0 {
        let d: Vec<f64> = target.iter().zip(p).map(|(a, b)| a - b).collect();
        return dot(&d, &d);
    }
    let pp = emb.inner(p, p);
    let valid = if emb.curvature < 0.0 {
        pp < 0.0
    } else {
        pp > 0.0
    };
    if !valid {
        return f64::INFINITY;
    }
    -emb.inner(target, p) / pp.abs().sqrt()
}

const GRID_STEPS: usize = 64;
const GRID_BUDGET: usize = 60_000;
const MAX_SWEEPS: usize = 20_000;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Calls `f` on every composition of `steps` into `parts` nonnegative parts.
fn for_each_composition(parts: usize, steps: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(buf: &mut Vec<usize>, parts: usize, left: usize, f: &mut impl FnMut(&[usize])) {
        if buf.len() + 1 == parts {
            buf.push(left);
            f(buf);
            buf.pop();
            return;
        }
        for k in 0..=left {
            buf.push(k);
            rec(buf, parts, left - k, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(parts);
    rec(&mut buf, parts, steps, f);
}

fn golden_min(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    const R: f64 = 0.618_033_988_749_894_9;
    let mut a = hi - R * (hi - lo);
    let mut b = lo + R * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > 1e-14 * (1.0 + lo.abs().max(hi.abs())) {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - R * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + R * (hi - lo);
            fb = f(b);
        }
    }
    let mid = 0.5 * (lo + hi);
    // Endpoints can win when the minimum sits on the boundary.
    [lo, mid, hi]
        .into_iter()
        .map(|t| (t, f(t)))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .map(|(t, _)| t)
        .unwrap()
}

/// Point of the closed facet opposite `vertex` closest to `vertex`, found by
/// a barycentric grid scan followed by pairwise coordinate descent.
pub fn brute_project(emb: &Embedding, vertex: usize) -> Result<BarycentricPoint> {
    let m = emb.vertices.len();
    check_vertex(vertex, m)?;
    let face: Vec<usize> = (0..m).filter(|&k| k + 1 != vertex).collect();
    let parts = face.len();
    let target = emb.vertices[vertex - 1].clone();

    let eval = |w: &[f64]| {
        let mut full = vec![0.0; m];
        for (&k, &v) in face.iter().zip(w) {
            full[k] = v;
        }
        objective(emb, &target, &emb.hull_point(&full))
    };

    let mut steps = GRID_STEPS;
    while steps > 2 && binomial(steps + parts - 1, parts - 1) > GRID_BUDGET {
        steps -= 1;
    }
    let mut best = vec![1.0 / parts as f64; parts];
    let mut best_val = eval(&best);
    let mut w = vec![0.0; parts];
    for_each_composition(parts, steps, &mut |c| {
        for (wk, &ck) in w.iter_mut().zip(c) {
            *wk = ck as f64 / steps as f64;
        }
        let v = eval(&w);
        if v < best_val {
            best_val = v;
            best.copy_from_slice(&w);
        }
    });

    for _ in 0..MAX_SWEEPS {
        let before = best.clone();
        for i in 0..parts {
            for j in 0..parts {
                if i == j {
                    continue;
                }
                // Move weight along e_i - e_j, staying in the closed facet.
                let (lo, hi) = (-best[i], best[j]);
                if hi - lo <= 0.0 {
                    continue;
                }
                let line = |t: f64| {
                    let mut trial = best.clone();
                    trial[i] += t;
                    trial[j] -= t;
                    eval(&trial)
                };
                let t = golden_min(lo, hi, line);
                let val = line(t);
                if val < best_val {
                    best_val = val;
                    best[i] += t;
                    best[j] -= t;
                    best[i] = best[i].max(0.0);
                    best[j] = best[j].max(0.0);
                }
            }
        }
        let moved = before
            .iter()
            .zip(&best)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if moved < 1e-13 {
            break;
        }
    }

    let mut full = vec![0.0; m];
    let total: f64 = best.iter().sum();
    for (&k, &v) in face.iter().zip(&best) {
        full[k] = v / total;
    }
    BarycentricPoint::new(full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmat::DEFAULT_TOL;
    use approx::assert_abs_diff_eq;

    fn tetra() -> EdgeLengths {
        EdgeLengths::from_upper(4, &[2.0, 3.0, 4.0, 4.0, 5.0, 3.0]).unwrap()
    }

    fn assert_edges(emb: &Embedding, e: &EdgeLengths, eps: f64) {
        let got = emb.edge_lengths().unwrap();
        for i in 1..=e.vertex_count() {
            for j in 1..=e.vertex_count() {
                assert_abs_diff_eq!(got.length(i, j), e.length(i, j), epsilon = eps);
            }
        }
    }

    #[test]
    fn equilateral_flat_embedding() {
        let e = EdgeLengths::from_upper(3, &[1.0; 3]).unwrap();
        let emb = embed(&e, Curvature::EUCLIDEAN, DEFAULT_TOL).unwrap();
        assert_eq!(emb.model, Model::EuclideanSpace { dim: 2 });
        assert_edges(&emb, &e, 1e-14);
    }

    #[test]
    fn tetra_hyperbolic_embedding() {
        let e = tetra();
        let emb = embed(&e, Curvature::HYPERBOLIC, DEFAULT_TOL).unwrap();
        assert_eq!(emb.model, Model::MinkowskiSpace { dim: 3 });
        for v in &emb.vertices {
            assert_abs_diff_eq!(emb.inner(v, v), -1.0, epsilon = 1e-9);
            assert!(v[3] > 0.0);
        }
        assert_edges(&emb, &e, 1e-8);
        let p = BarycentricPoint::new(vec![0.25; 4]).unwrap();
        let q = BarycentricPoint::new(vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0]).unwrap();
        assert_abs_diff_eq!(
            brute_distance(&emb, &p, &q).unwrap(),
            0.63997,
            epsilon = 1e-4
        );
    }

    #[test]
    fn spherical_embedding_is_unit() {
        let e = EdgeLengths::from_upper(4, &[0.5, 0.6, 0.7, 0.8, 0.9, 0.55]).unwrap();
        let emb = embed(&e, Curvature::SPHERICAL, DEFAULT_TOL).unwrap();
        for v in &emb.vertices {
            assert_abs_diff_eq!(dot(v, v), 1.0, epsilon = 1e-14);
        }
        assert_edges(&emb, &e, 1e-12);
    }

    #[test]
    fn degenerate_inputs_are_refused() {
        let g12 = 2f64.sqrt().acosh();
        let g13 = 5f64.sqrt().acosh();
        let g23 = (10f64.sqrt() - 2.0).acosh();
        let e = EdgeLengths::from_upper(3, &[g12, g13, g23]).unwrap();
        assert!(matches!(
            embed(&e, Curvature::HYPERBOLIC, DEFAULT_TOL),
            Err(Error::NotRealizableInput(_))
        ));
    }

    #[test]
    fn brute_projection_tetra() {
        let e = tetra();
        let flat = embed(&e, Curvature::EUCLIDEAN, DEFAULT_TOL).unwrap();
        let foot = brute_project(&flat, 1).unwrap();
        for (g, w) in foot.coords().iter().zip([0.0, 0.65625, 0.23264, 0.11111]) {
            assert_abs_diff_eq!(*g, w, epsilon = 1e-5);
        }
        let hyp = embed(&e, Curvature::HYPERBOLIC, DEFAULT_TOL).unwrap();
        let foot = brute_project(&hyp, 1).unwrap();
        for (g, w) in foot.coords().iter().zip([0.0, 0.80146, 0.15190, 0.04665]) {
            assert_abs_diff_eq!(*g, w, epsilon = 1e-5);
        }
    }

    #[test]
    fn brute_projection_equilateral() {
        let e = EdgeLengths::from_upper(3, &[1.0; 3]).unwrap();
        let emb = embed(&e, Curvature::EUCLIDEAN, DEFAULT_TOL).unwrap();
        let foot = brute_project(&emb, 3).unwrap();
        assert_abs_diff_eq!(foot.coords()[0], 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(foot.coords()[1], 0.5, epsilon = 1e-6);
    }

    #[test]
    fn compositions_are_counted() {
        let mut count = 0;
        for_each_composition(3, 4, &mut |c| {
            assert_eq!(c.iter().sum::<usize>(), 4);
            count += 1;
        });
        assert_eq!(count, binomial(6, 2));
    }
}
