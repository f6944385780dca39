//! Deciding whether edge lengths describe a non-degenerate simplex of a given
//! curvature.
//!
//! Each test reduces to the inertia of a Gram matrix: positive definite apex
//! Gram for flat simplices, signature `(n, 1)` of the vertex Gram for
//! hyperbolic ones, positive definite vertex Gram (with every edge below
//! `pi/2`) for spherical ones.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::simplex::{curved_gram, euclidean_gram, Curvature, CurvatureClass, EdgeLengths};
use crate::symmat::{signature_of, Signature, SymMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Realizable,
    /// Consistent edge lengths whose simplex is flattened into a lower
    /// dimensional subspace.
    Degenerate,
    NotRealizable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Realizable => "Realizable",
            Verdict::Degenerate => "Degenerate",
            Verdict::NotRealizable => "NotRealizable",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizabilityReport {
    pub verdict: Verdict,
    pub signature: Signature,
    /// Spectrum of the tested Gram matrix, ascending. Empty when the test
    /// was decided before any matrix was built.
    pub eigenvalues: Vec<f64>,
    pub detail: String,
}

impl RealizabilityReport {
    pub fn is_realizable(&self) -> bool {
        self.verdict == Verdict::Realizable
    }
}

fn classify(m: &SymMatrix, target: Signature, tol: f64, what: &str) -> RealizabilityReport {
    let eigenvalues = m.eigenvalues();
    let signature = signature_of(&eigenvalues, tol);
    let verdict = if signature == target {
        Verdict::Realizable
    } else if signature.n_zero > 0
        && signature.n_plus <= target.n_plus
        && signature.n_minus <= target.n_minus
    {
        Verdict::Degenerate
    } else {
        Verdict::NotRealizable
    };
    let detail = match verdict {
        Verdict::Realizable => format!("{what} has the required signature {target}"),
        Verdict::Degenerate => format!(
            "{what} has signature {signature}; {} zero eigenvalue(s), simplex is flat",
            signature.n_zero
        ),
        Verdict::NotRealizable => {
            format!("{what} has signature {signature}, required {target}")
        }
    };
    RealizabilityReport {
        verdict,
        signature,
        eigenvalues,
        detail,
    }
}

/// Realizable iff the apex Gram matrix at vertex `n+1` is positive definite.
pub fn check_euclidean(e: &EdgeLengths, tol: f64) -> RealizabilityReport {
    check_euclidean_at(e, e.vertex_count(), tol)
}

/// [`check_euclidean`] with an explicit apex. The verdict does not depend on
/// the apex.
pub fn check_euclidean_at(e: &EdgeLengths, apex: usize, tol: f64) -> RealizabilityReport {
    let n = e.dim();
    let q = euclidean_gram(e, apex).expect("apex in range");
    classify(q.matrix(), Signature::new(n, 0, 0), tol, "apex Gram matrix")
}

/// Realizable iff the vertex Gram matrix `-cosh(g_ij)` has signature `(n,1)`.
pub fn check_hyperbolic(e: &EdgeLengths, tol: f64) -> RealizabilityReport {
    let n = e.dim();
    let q = curved_gram(e, Curvature::HYPERBOLIC).expect("nonzero curvature");
    classify(
        q.matrix(),
        Signature::new(n, 1, 0),
        tol,
        "vertex Gram matrix",
    )
}

/// Realizable iff every edge is shorter than `pi/2` and the vertex Gram
/// matrix `cos(g_ij)` is positive definite.
pub fn check_spherical(e: &EdgeLengths, tol: f64) -> RealizabilityReport {
    let n = e.dim();
    let longest = e.max_length();
    if longest >= FRAC_PI_2 {
        return RealizabilityReport {
            verdict: Verdict::NotRealizable,
            signature: Signature::new(0, 0, 0),
            eigenvalues: Vec::new(),
            detail: format!("edge >= pi/2 (longest edge {longest})"),
        };
    }
    let q = curved_gram(e, Curvature::SPHERICAL).expect("nonzero curvature");
    classify(
        q.matrix(),
        Signature::new(n + 1, 0, 0),
        tol,
        "vertex Gram matrix",
    )
}

/// Dispatches on the curvature class. General curvatures are reduced to
/// `k = +-1` by scaling every edge by `sqrt|k|`.
pub fn check(e: &EdgeLengths, c: Curvature, tol: f64) -> RealizabilityReport {
    match c.class() {
        CurvatureClass::Euclidean => check_euclidean(e, tol),
        CurvatureClass::Hyperbolic => check_hyperbolic(e, tol),
        CurvatureClass::Spherical => check_spherical(e, tol),
        CurvatureClass::General => {
            let scaled = e.scaled(c.scale());
            if c.kappa() < 0.0 {
                check_hyperbolic(&scaled, tol)
            } else {
                check_spherical(&scaled, tol)
            }
        }
    }
}
