//! Small dense symmetric matrices.
//!
//! Determinants, minors, spectra and the one linear solve needed by the
//! projection formulas. Sizes are tiny (a simplex of dimension `n` yields an
//! `n x n` or `(n+1) x (n+1)` matrix), so everything is dense and allocates
//! freely.
//!
//! Minor indices follow the usual mathematical convention and are 1-based;
//! element access through `Index` is 0-based like any other Rust container.

use std::fmt;
use std::ops::Index;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative eigenvalue threshold below which an eigenvalue counts as zero.
pub const DEFAULT_TOL: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 100;
/// Stop once the off-diagonal mass is this fraction of the total.
const JACOBI_OFF_TOL: f64 = 1e-36;

/// A dense symmetric matrix with `a[i][j] == a[j][i]` bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    inner: DMatrix<f64>,
}

/// Inertia of a symmetric bilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Signature {
    pub const fn new(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        Self {
            n_plus,
            n_minus,
            n_zero,
        }
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n_zero == 0 {
            write!(f, "({},{})", self.n_plus, self.n_minus)
        } else {
            write!(f, "({},{},{})", self.n_plus, self.n_minus, self.n_zero)
        }
    }
}

impl SymMatrix {
    /// Builds a matrix from a square row list, storing `(a_ij + a_ji) / 2`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: row.len(),
                });
            }
        }
        Ok(Self::from_fn(dim, |i, j| 0.5 * (rows[i][j] + rows[j][i])))
    }

    /// Builds a matrix from a generator evaluated on the upper triangle
    /// (0-based); the lower triangle is mirrored.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        let mut inner = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                inner[(i, j)] = v;
                inner[(j, i)] = v;
            }
        }
        Self { inner }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    /// Wraps an nalgebra matrix, symmetrizing it.
    pub fn from_matrix(m: &DMatrix<f64>) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: m.nrows().max(1),
                actual: m.ncols(),
            });
        }
        Ok(Self::from_fn(m.nrows(), |i, j| {
            0.5 * (m[(i, j)] + m[(j, i)])
        }))
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.inner
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.inner[(i, j)]).collect())
            .collect()
    }

    /// Principal submatrix on the given 0-based indices, in the given order.
    pub fn principal(&self, keep: &[usize]) -> Self {
        Self::from_fn(keep.len(), |i, j| self.inner[(keep[i], keep[j])])
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let dim = self.dim();
        for v in [x, y] {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: v.len(),
                });
            }
        }
        let mut acc = 0.0;
        for i in 0..dim {
            let mut row = 0.0;
            for j in 0..dim {
                row += self.inner[(i, j)] * y[j];
            }
            acc += x[i] * row;
        }
        Ok(acc)
    }

    /// Determinant. Closed forms up to 3x3, partial-pivot LU beyond.
    pub fn determinant(&self) -> f64 {
        det_dense(&self.inner)
    }

    /// Determinant of the matrix with row `i` and column `j` removed
    /// (1-based).
    pub fn minor(&self, i: usize, j: usize) -> Result<f64> {
        let dim = self.dim();
        if dim == 1 {
            return Err(Error::DegenerateMinor);
        }
        for index in [i, j] {
            if index == 0 || index > dim {
                return Err(Error::IndexOutOfRange { index, dim });
            }
        }
        let sub = self.inner.clone().remove_row(i - 1).remove_column(j - 1);
        Ok(det_dense(&sub))
    }

    /// Matrix of cofactors `(-1)^(i+j) M_ij`. The cofactor matrix of a 1x1
    /// matrix is `[[1]]`.
    pub fn cofactors(&self) -> DMatrix<f64> {
        let dim = self.dim();
        if dim == 1 {
            return DMatrix::from_element(1, 1, 1.0);
        }
        let mut c = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                let sub = self.inner.clone().remove_row(i).remove_column(j);
                let v = sign * det_dense(&sub);
                c[(i, j)] = v;
                c[(j, i)] = v;
            }
        }
        c
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen().0
    }

    /// Eigenvalues in ascending order with matching orthonormal eigenvectors
    /// as columns, by cyclic Jacobi rotations.
    pub fn eigen(&self) -> (Vec<f64>, DMatrix<f64>) {
        let n = self.dim();
        let mut a = self.inner.clone();
        let mut v = DMatrix::<f64>::identity(n, n);
        let frob2: f64 = a.iter().map(|x| x * x).sum();
        for _ in 0..JACOBI_MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
                .map(|(p, q)| a[(p, q)] * a[(p, q)])
                .sum();
            if off <= JACOBI_OFF_TOL * frob2 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                    let t = if theta.abs() > 1e150 {
                        0.5 / theta
                    } else {
                        let sign = if theta < 0.0 { -1.0 } else { 1.0 };
                        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                    };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (kp, kq) = (a[(k, p)], a[(k, q)]);
                        a[(k, p)] = c * kp - s * kq;
                        a[(k, q)] = s * kp + c * kq;
                    }
                    for k in 0..n {
                        let (pk, qk) = (a[(p, k)], a[(q, k)]);
                        a[(p, k)] = c * pk - s * qk;
                        a[(q, k)] = s * pk + c * qk;
                    }
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    for k in 0..n {
                        let (kp, kq) = (v[(k, p)], v[(k, q)]);
                        v[(k, p)] = c * kp - s * kq;
                        v[(k, q)] = s * kp + c * kq;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
        let values = order.iter().map(|&i| a[(i, i)]).collect();
        let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
        (values, vectors)
    }

    /// Counts eigenvalues by sign. An eigenvalue is zero when
    /// `|l| <= tol * max(1, max |l|)`.
    pub fn signature(&self, tol: f64) -> Signature {
        signature_of(&self.eigenvalues(), tol)
    }

    pub fn is_positive_definite(&self, tol: f64) -> bool {
        self.signature(tol) == Signature::new(self.dim(), 0, 0)
    }

    /// Spanning vector of the form-orthogonal complement of basis vectors
    /// `2..=dim`, normalized so its first entry is 1.
    ///
    /// Solves `M(1,1) x' = -m_1'` where `M(1,1)` is the trailing principal
    /// block. The result equals `(1, -M_12/M_11, ..., (-1)^(dim+1) M_1dim/M_11)`.
    pub fn solve_first_complement(&self) -> Result<Vec<f64>> {
        let dim = self.dim();
        if dim == 1 {
            return Ok(vec![1.0]);
        }
        let block = self.inner.view((1, 1), (dim - 1, dim - 1)).into_owned();
        let rhs = -DVector::from_iterator(dim - 1, (1..dim).map(|k| self.inner[(k, 0)]));
        let lu = block.clone().full_piv_lu();
        // Rank test relative to the block's scale.
        let scale = block.amax().max(f64::MIN_POSITIVE);
        let det = lu.determinant();
        if !det.is_finite() || det.abs() <= f64::EPSILON * scale.powi((dim - 1) as i32) {
            return Err(Error::SingularFace);
        }
        let sol = lu.solve(&rhs).ok_or(Error::SingularFace)?;
        let mut out = Vec::with_capacity(dim);
        out.push(1.0);
        out.extend(sol.iter().copied());
        if out.iter().any(|v| !v.is_finite()) {
            return Err(Error::SingularFace);
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = f64;

    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.inner[idx]
    }
}

pub(crate) fn signature_of(eigenvalues: &[f64], tol: f64) -> Signature {
    let scale = eigenvalues.iter().fold(1.0_f64, |m, l| m.max(l.abs()));
    let cut = tol * scale;
    let mut sig = Signature::new(0, 0, 0);
    for &l in eigenvalues {
        if l.abs() <= cut {
            sig.n_zero += 1;
        } else if l > 0.0 {
            sig.n_plus += 1;
        } else {
            sig.n_minus += 1;
        }
    }
    sig
}

fn det_dense(m: &DMatrix<f64>) -> f64 {
    let a = |i: usize, j: usize| m[(i, j)];
    match m.nrows() {
        0 => 1.0,
        1 => a(0, 0),
        2 => a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0),
        3 => {
            a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
        }
        _ => m.clone().lu().determinant(),
    }
}
