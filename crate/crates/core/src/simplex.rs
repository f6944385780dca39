//! Metric simplices described by their edge lengths, and the Gram matrices
//! built from them.
//!
//! A Euclidean simplex is encoded by the `n x n` Gram matrix of the edge
//! vectors leaving an apex vertex. A curved simplex (curvature `k != 0`) is
//! encoded by the `(n+1) x (n+1)` Gram matrix of its vertex position vectors
//! in the radius-`1/sqrt|k|` model: the sphere for `k > 0`, the upper sheet of
//! the hyperboloid `<x,x> = 1/k` in Minkowski space for `k < 0`. Hull points
//! (combinations of the vertex vectors with weights summing to 1) are lifted
//! radially onto the model surface.
//!
//! Vertex indices in this API are 1-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::symmat::SymMatrix;

/// Allowed deviation of a barycentric coordinate sum from 1 before rejection.
pub const BARYCENTRIC_SUM_TOL: f64 = 1e-6;

/// Relative asymmetry tolerated when loading an edge-length table.
const SYMMETRY_TOL: f64 = 1e-12;

/// Pairwise geodesic edge lengths of an `n`-simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeLengths {
    gamma: Vec<Vec<f64>>,
}

impl EdgeLengths {
    /// Validates and stores an `(n+1) x (n+1)` edge-length table.
    ///
    /// The diagonal must be zero, off-diagonal entries positive and finite,
    /// and the table symmetric up to round-off. Tiny asymmetries are averaged
    /// away.
    pub fn new(gamma: Vec<Vec<f64>>) -> Result<Self> {
        let m = gamma.len();
        if m < 2 {
            return Err(Error::InvalidEdgeLengths(format!(
                "need at least 2 vertices, got {m}"
            )));
        }
        for (i, row) in gamma.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidEdgeLengths(format!(
                    "row {} has {} entries, expected {m}",
                    i + 1,
                    row.len()
                )));
            }
        }
        let mut out = vec![vec![0.0; m]; m];
        for i in 0..m {
            if gamma[i][i] != 0.0 {
                return Err(Error::InvalidEdgeLengths(format!(
                    "diagonal entry ({0},{0}) is {1}, expected 0",
                    i + 1,
                    gamma[i][i]
                )));
            }
            for j in (i + 1)..m {
                let (a, b) = (gamma[i][j], gamma[j][i]);
                if !a.is_finite() || !b.is_finite() || a <= 0.0 || b <= 0.0 {
                    return Err(Error::InvalidEdgeLengths(format!(
                        "edge ({},{}) must be positive and finite, got {a}",
                        i + 1,
                        j + 1
                    )));
                }
                if (a - b).abs() > SYMMETRY_TOL * a.max(b) {
                    return Err(Error::InvalidEdgeLengths(format!(
                        "table is not symmetric at ({},{}): {a} vs {b}",
                        i + 1,
                        j + 1
                    )));
                }
                let v = 0.5 * (a + b);
                out[i][j] = v;
                out[j][i] = v;
            }
        }
        Ok(Self { gamma: out })
    }

    /// Builds the table from the strict upper triangle, listed row by row:
    /// `(1,2), (1,3), ..., (1,n+1), (2,3), ...`.
    pub fn from_upper(vertices: usize, upper: &[f64]) -> Result<Self> {
        let expected = vertices * vertices.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::InvalidEdgeLengths(format!(
                "{vertices} vertices need {expected} edges, got {}",
                upper.len()
            )));
        }
        let mut gamma = vec![vec![0.0; vertices]; vertices];
        let mut it = upper.iter();
        for i in 0..vertices {
            for j in (i + 1)..vertices {
                let v = *it.next().expect("length checked");
                gamma[i][j] = v;
                gamma[j][i] = v;
            }
        }
        Self::new(gamma)
    }

    /// Simplex dimension `n`; there are `n + 1` vertices.
    pub fn dim(&self) -> usize {
        self.gamma.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.gamma.len()
    }

    /// Length of the edge between vertices `i` and `j` (1-based).
    pub fn length(&self, i: usize, j: usize) -> f64 {
        self.gamma[i - 1][j - 1]
    }

    pub(crate) fn at(&self, i: usize, j: usize) -> f64 {
        self.gamma[i][j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.gamma
    }

    pub fn max_length(&self) -> f64 {
        self.gamma
            .iter()
            .flat_map(|r| r.iter().copied())
            .fold(0.0, f64::max)
    }

    /// Every edge multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            gamma: self
                .gamma
                .iter()
                .map(|r| r.iter().map(|v| v * factor).collect())
                .collect(),
        }
    }

    /// Relabels vertices: new vertex `k` is old vertex `order[k]` (0-based
    /// positions, 1-based entries).
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let m = self.vertex_count();
        check_permutation(order, m)?;
        Ok(Self {
            gamma: (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| self.gamma[order[i] - 1][order[j] - 1])
                        .collect()
                })
                .collect(),
        })
    }

    /// Sub-simplex spanned by the listed vertices (1-based, in that order).
    pub fn restrict(&self, vertices: &[usize]) -> Result<Self> {
        let m = self.vertex_count();
        if vertices.len() < 2 {
            return Err(Error::InvalidEdgeLengths(
                "a face needs at least 2 vertices".into(),
            ));
        }
        let mut seen = vec![false; m];
        for &v in vertices {
            check_vertex(v, m)?;
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidEdgeLengths(format!("vertex {v} repeated")));
            }
        }
        Ok(Self {
            gamma: vertices
                .iter()
                .map(|&i| vertices.iter().map(|&j| self.gamma[i - 1][j - 1]).collect())
                .collect(),
        })
    }

    /// The facet opposite `vertex`, keeping the remaining vertices in order.
    pub fn facet(&self, vertex: usize) -> Result<Self> {
        check_vertex(vertex, self.vertex_count())?;
        let keep: Vec<usize> = (1..=self.vertex_count()).filter(|&v| v != vertex).collect();
        self.restrict(&keep)
    }
}

pub(crate) fn check_vertex(vertex: usize, count: usize) -> Result<()> {
    if vertex == 0 || vertex > count {
        Err(Error::IndexOutOfRange {
            index: vertex,
            dim: count,
        })
    } else {
        Ok(())
    }
}

fn check_permutation(order: &[usize], m: usize) -> Result<()> {
    if order.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: order.len(),
        });
    }
    let mut seen = vec![false; m];
    for &v in order {
        check_vertex(v, m)?;
        if std::mem::replace(&mut seen[v - 1], true) {
            return Err(Error::InvalidEdgeLengths(format!(
                "vertex {v} repeated in permutation"
            )));
        }
    }
    Ok(())
}

/// Broad class of a curvature value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurvatureClass {
    Euclidean,
    Hyperbolic,
    Spherical,
    General,
}

/// Constant sectional curvature `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curvature(f64);

impl Curvature {
    pub const EUCLIDEAN: Curvature = Curvature(0.0);
    pub const HYPERBOLIC: Curvature = Curvature(-1.0);
    pub const SPHERICAL: Curvature = Curvature(1.0);

    pub fn new(kappa: f64) -> Result<Self> {
        if kappa.is_finite() {
            Ok(Self(kappa))
        } else {
            Err(Error::InvalidCurvature(kappa))
        }
    }

    pub fn kappa(self) -> f64 {
        self.0
    }

    pub fn class(self) -> CurvatureClass {
        if self.0 == 0.0 {
            CurvatureClass::Euclidean
        } else if self.0 == -1.0 {
            CurvatureClass::Hyperbolic
        } else if self.0 == 1.0 {
            CurvatureClass::Spherical
        } else {
            CurvatureClass::General
        }
    }

    /// `sqrt|k|`, the factor that maps edge lengths to the unit model.
    pub fn scale(self) -> f64 {
        self.0.abs().sqrt()
    }

    /// The unit curvature (`-1`, `0` or `+1`) with the same sign.
    pub fn unit(self) -> Self {
        if self.0 > 0.0 {
            Self::SPHERICAL
        } else if self.0 < 0.0 {
            Self::HYPERBOLIC
        } else {
            Self::EUCLIDEAN
        }
    }
}

/// Parses `euclidean`, `hyperbolic`, `spherical` or `kappa=<value>`, the
/// inverse of `Display`.
impl FromStr for Curvature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "euclidean" => Ok(Curvature::EUCLIDEAN),
            "hyperbolic" => Ok(Curvature::HYPERBOLIC),
            "spherical" => Ok(Curvature::SPHERICAL),
            other => {
                let value = other
                    .strip_prefix("kappa=")
                    .and_then(|v| v.parse::<f64>().ok())
                    .ok_or_else(|| Error::UnknownGeometry(other.to_string()))?;
                Curvature::new(value)
            }
        }
    }
}

impl fmt::Display for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.class() {
            CurvatureClass::Euclidean => f.write_str("euclidean"),
            CurvatureClass::Hyperbolic => f.write_str("hyperbolic"),
            CurvatureClass::Spherical => f.write_str("spherical"),
            CurvatureClass::General => write!(f, "kappa={}", self.0),
        }
    }
}

/// Barycentric coordinates over the vertices of a simplex, summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricPoint {
    coords: Vec<f64>,
    outside: bool,
}

impl BarycentricPoint {
    /// Normalizes `coords` to sum to 1. Sums off by more than
    /// [`BARYCENTRIC_SUM_TOL`] are rejected.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("no coordinates".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint("non-finite coordinate".into()));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > BARYCENTRIC_SUM_TOL {
            return Err(Error::InvalidPoint(format!(
                "coordinates sum to {sum}, expected 1"
            )));
        }
        let coords: Vec<f64> = if sum == 1.0 {
            coords
        } else {
            coords.iter().map(|c| c / sum).collect()
        };
        let outside = coords.iter().any(|&c| c < 0.0);
        Ok(Self { coords, outside })
    }

    /// The `i`-th vertex (1-based) of a simplex with `count` vertices.
    pub fn vertex(i: usize, count: usize) -> Result<Self> {
        check_vertex(i, count)?;
        let mut coords = vec![0.0; count];
        coords[i - 1] = 1.0;
        Ok(Self {
            coords,
            outside: false,
        })
    }

    /// Centroid of the listed vertices (1-based).
    pub fn centroid_of(vertices: &[usize], count: usize) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPoint("empty vertex list".into()));
        }
        let w = 1.0 / vertices.len() as f64;
        let mut coords = vec![0.0; count];
        for &v in vertices {
            check_vertex(v, count)?;
            coords[v - 1] += w;
        }
        Self::new(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// True when some coordinate is negative, i.e. the point is outside the
    /// closed simplex.
    pub fn is_outside(&self) -> bool {
        self.outside
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

/// Coefficients of a model-space point in the frame of the vertex vectors.
/// Unlike barycentric coordinates these need not sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct HullVector(pub Vec<f64>);

impl HullVector {
    pub fn coords(&self) -> &[f64] {
        &self.0
    }
}

/// Gram matrix of the edge vectors `v_i - v_apex` of a Euclidean simplex.
/// Rows are the non-apex vertices in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanGram {
    matrix: SymMatrix,
    apex: usize,
}

impl EuclideanGram {
    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    /// The apex vertex (1-based).
    pub fn apex(&self) -> usize {
        self.apex
    }

    pub fn vertex_count(&self) -> usize {
        self.matrix.dim() + 1
    }

    /// Drops the apex coordinate from a full-length coefficient vector.
    pub(crate) fn reduce(&self, full: &[f64]) -> Vec<f64> {
        full.iter()
            .enumerate()
            .filter(|&(k, _)| k + 1 != self.apex)
            .map(|(_, &v)| v)
            .collect()
    }

    /// 1-based vertex labels of the rows, in order.
    pub fn row_vertices(&self) -> Vec<usize> {
        (1..=self.vertex_count())
            .filter(|&v| v != self.apex)
            .collect()
    }
}

/// Gram matrix of the vertex position vectors of a curved simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvedGram {
    matrix: SymMatrix,
    curvature: Curvature,
}

impl CurvedGram {
    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn curvature(&self) -> Curvature {
        self.curvature
    }

    pub fn vertex_count(&self) -> usize {
        self.matrix.dim()
    }

    /// Gram matrix of the hull edge vectors `v_i - v_apex` under the ambient
    /// form. For hyperbolic simplices this need not be positive definite.
    pub fn hull_gram(&self, apex: usize) -> Result<SymMatrix> {
        let m = self.vertex_count();
        check_vertex(apex, m)?;
        let a = apex - 1;
        let rows: Vec<usize> = (0..m).filter(|&k| k != a).collect();
        let q = &self.matrix;
        if rows.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: m,
            });
        }
        Ok(SymMatrix::from_fn(rows.len(), |i, j| {
            let (i, j) = (rows[i], rows[j]);
            q[(i, j)] - q[(i, a)] - q[(j, a)] + q[(a, a)]
        }))
    }
}

/// Builds `q_ij = (g_{i,apex}^2 + g_{j,apex}^2 - g_ij^2) / 2` over the
/// non-apex vertices.
pub fn euclidean_gram(e: &EdgeLengths, apex: usize) -> Result<EuclideanGram> {
    let m = e.vertex_count();
    check_vertex(apex, m)?;
    let a = apex - 1;
    let rows: Vec<usize> = (0..m).filter(|&k| k != a).collect();
    let matrix = SymMatrix::from_fn(rows.len(), |i, j| {
        let (i, j) = (rows[i], rows[j]);
        let (gi, gj, gij) = (e.at(i, a), e.at(j, a), e.at(i, j));
        0.5 * (gi * gi + gj * gj - gij * gij)
    });
    Ok(EuclideanGram { matrix, apex })
}

/// Inner product `<v_i, v_j>` of two model points at geodesic distance
/// `gamma` in the radius-`1/sqrt|k|` model.
pub fn model_inner(gamma: f64, kappa: f64) -> f64 {
    if kappa == 1.0 {
        gamma.cos()
    } else if kappa == -1.0 {
        -gamma.cosh()
    } else if kappa > 0.0 {
        (kappa.sqrt() * gamma).cos() / kappa
    } else {
        ((-kappa).sqrt() * gamma).cosh() / kappa
    }
}

/// Builds the `(n+1) x (n+1)` Gram matrix of the vertex vectors:
/// `-cosh(g_ij)` for `k = -1`, `cos(g_ij)` for `k = 1`, and the radius-scaled
/// forms `cos(sqrt(k) g)/k`, `cosh(sqrt(-k) g)/k` otherwise.
pub fn curved_gram(e: &EdgeLengths, c: Curvature) -> Result<CurvedGram> {
    let kappa = c.kappa();
    if kappa == 0.0 {
        return Err(Error::WrongModel("flat simplices use the apex Gram matrix"));
    }
    let matrix = SymMatrix::from_fn(e.vertex_count(), |i, j| model_inner(e.at(i, j), kappa));
    Ok(CurvedGram {
        matrix,
        curvature: c,
    })
}

/// `x^T Q y` over the vertex frame.
pub fn hull_inner_product(q: &CurvedGram, x: &[f64], y: &[f64]) -> Result<f64> {
    q.matrix.bilinear(x, y)
}

/// Radially rescales a hull point onto the model surface `<x,x> = 1/k`.
pub fn lift_to_model(q: &CurvedGram, x: &BarycentricPoint) -> Result<HullVector> {
    let kappa = q.curvature.kappa();
    let xx = hull_inner_product(q, x.coords(), x.coords())?;
    if kappa < 0.0 && xx >= 0.0 {
        return Err(Error::OutsideLightCone(xx));
    }
    if kappa > 0.0 && xx <= 0.0 {
        return Err(Error::DegenerateDirection(xx));
    }
    let s = (kappa.abs() * xx.abs()).sqrt();
    Ok(HullVector(x.coords().iter().map(|c| c / s).collect()))
}
