//! Orthogonal projection of a vertex onto its opposite facet, and volumes.
//!
//! Flat simplices: the foot of the altitude from `v` has barycentric
//! coordinates proportional to the row sums of the cofactor matrix of the
//! apex Gram matrix built at `v`; the total cofactor sum equals the Gram
//! determinant of the facet, so no second matrix is needed.
//!
//! Curved simplices: with `v` moved to the first position, the foot on the
//! hull has coordinates proportional to the signed first-row minors
//! `(-1)^(i+1) M_1i` of the vertex Gram matrix (`i >= 2`). The vector
//! `(M_11, -M_12, ...)` spans the form-orthogonal complement of the facet, so
//! the same formula serves hyperbolic and spherical simplices. The hull foot is
//! then lifted radially onto the model surface.

use crate::error::{Error, Result};
use crate::metrics::CLAMP_BAND;
use crate::realizability::{check, check_euclidean, check_hyperbolic, check_spherical, Verdict};
use crate::simplex::{
    check_vertex, curved_gram, euclidean_gram, lift_to_model, BarycentricPoint, Curvature,
    CurvatureClass, CurvedGram, EdgeLengths, HullVector,
};

/// Coordinates at or above this value count as inside the facet.
pub const INSIDE_FACE_TOL: f64 = -1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    /// Foot of the altitude; zero at the projected vertex.
    pub foot: BarycentricPoint,
    /// Curved simplices only: the foot lifted onto the model surface,
    /// `<p~,p~> = 1/k`.
    pub foot_model: Option<HullVector>,
    pub altitude: f64,
    pub inside_face: bool,
}

fn require(verdict: Verdict, detail: &str, allow_degenerate: bool) -> Result<()> {
    match verdict {
        Verdict::Realizable => Ok(()),
        Verdict::Degenerate if allow_degenerate => Ok(()),
        _ => Err(Error::NotRealizableInput(detail.to_string())),
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn inside(coords: &[f64]) -> bool {
    coords.iter().all(|&c| c >= INSIDE_FACE_TOL)
}

/// Sum of all signed minors `(-1)^(i+j) Q_ij` of the apex Gram matrix at
/// `vertex`. Equals the Gram determinant of the opposite facet.
pub fn signed_minor_sum(e: &EdgeLengths, vertex: usize) -> Result<f64> {
    let q = euclidean_gram(e, vertex)?;
    Ok(q.matrix().cofactors().iter().sum())
}

/// Foot and altitude from `vertex` in a flat simplex.
pub fn euclidean_project(e: &EdgeLengths, vertex: usize, tol: f64) -> Result<ProjectionResult> {
    check_vertex(vertex, e.vertex_count())?;
    let report = check_euclidean(e, tol);
    require(report.verdict, &report.detail, false)?;

    let q = euclidean_gram(e, vertex)?;
    let cof = q.matrix().cofactors();
    let row_sums: Vec<f64> = cof.row_iter().map(|r| r.sum()).collect();
    let total: f64 = row_sums.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::NotRealizableInput(format!(
            "facet Gram determinant {total} is not positive"
        )));
    }
    let mut coords = vec![0.0; e.vertex_count()];
    for (v, s) in q.row_vertices().into_iter().zip(&row_sums) {
        coords[v - 1] = s / total;
    }
    let det = q.matrix().determinant();
    let altitude = (det.max(0.0) / total).sqrt();
    let inside_face = inside(&coords);
    Ok(ProjectionResult {
        foot: BarycentricPoint::new(coords)?,
        foot_model: None,
        altitude,
        inside_face,
    })
}

/// `sqrt(det Q) / n!`.
pub fn euclidean_volume(e: &EdgeLengths, tol: f64) -> Result<f64> {
    let report = check_euclidean(e, tol);
    require(report.verdict, &report.detail, true)?;
    let q = euclidean_gram(e, e.vertex_count())?;
    let det = q.matrix().determinant();
    let n = e.dim();
    let diag_scale: f64 = (0..n).map(|i| q.matrix()[(i, i)]).product();
    if det < -tol * diag_scale {
        return Err(Error::NotRealizableInput(format!(
            "Gram determinant {det} is negative"
        )));
    }
    Ok(det.max(0.0).sqrt() / factorial(n))
}

/// Volume of the facet opposite `vertex` from the signed-minor sum:
/// `sqrt(sum (-1)^(i+j) Q_ij) / (n-1)!`.
pub fn euclidean_face_volume(e: &EdgeLengths, vertex: usize, tol: f64) -> Result<f64> {
    check_vertex(vertex, e.vertex_count())?;
    let n = e.dim();
    if n >= 2 {
        let face = e.facet(vertex)?;
        let report = check_euclidean(&face, tol);
        require(report.verdict, &report.detail, true)?;
    }
    let q = euclidean_gram(e, vertex)?;
    let cof = q.matrix().cofactors();
    let total: f64 = cof.iter().sum();
    let scale: f64 = cof.iter().map(|c| c.abs()).sum();
    if total < -tol * scale {
        return Err(Error::NotRealizableInput(format!(
            "signed minor sum {total} is negative"
        )));
    }
    Ok(total.max(0.0).sqrt() / factorial(n - 1))
}

/// Intermediate quantities of the curved projection formula, in the frame
/// where the projected vertex comes first.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvedProjectionTerms {
    /// `M_11, M_12, ..., M_1(n+1)`.
    pub first_row_minors: Vec<f64>,
    /// `sum_{i>=2} (-1)^(i+1) M_1i`.
    pub signed_sum: f64,
    /// `sqrt(|c^T Q c|)` for `c_i = (-1)^(i+1) M_1i` over the facet; dividing
    /// `c` by it gives the lifted foot directly.
    pub lift_normalizer: f64,
    /// Vertex order used: position `k` holds original vertex `order[k]`.
    pub order: Vec<usize>,
}

fn order_with_first(vertex: usize, count: usize) -> Vec<usize> {
    std::iter::once(vertex)
        .chain((1..=count).filter(|&v| v != vertex))
        .collect()
}

fn terms_for(q: &CurvedGram, order: Vec<usize>) -> Result<CurvedProjectionTerms> {
    let m = q.vertex_count();
    let minors = (1..=m)
        .map(|i| q.matrix().minor(1, i))
        .collect::<Result<Vec<f64>>>()?;
    let signed: Vec<f64> = (1..m)
        .map(|k| if k % 2 == 0 { minors[k] } else { -minors[k] })
        .collect();
    let signed_sum: f64 = signed.iter().sum();
    let mut quad = 0.0;
    for a in 0..signed.len() {
        for b in 0..signed.len() {
            quad += signed[a] * signed[b] * q.matrix()[(a + 1, b + 1)];
        }
    }
    Ok(CurvedProjectionTerms {
        first_row_minors: minors,
        signed_sum,
        lift_normalizer: quad.abs().sqrt(),
        order,
    })
}

/// Minors and normalizers behind the projection of `vertex` in a simplex of
/// curvature `c` (`c != 0`), computed on the Gram matrix for `c` itself.
pub fn curved_projection_terms(
    e: &EdgeLengths,
    c: Curvature,
    vertex: usize,
) -> Result<CurvedProjectionTerms> {
    check_vertex(vertex, e.vertex_count())?;
    let order = order_with_first(vertex, e.vertex_count());
    let q = curved_gram(&e.permuted(&order)?, c)?;
    terms_for(&q, order)
}

fn unpermute(order: &[usize], values: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; values.len()];
    for (k, &v) in order.iter().enumerate() {
        out[v - 1] = values[k];
    }
    out
}

fn curved_project_unchecked(
    e: &EdgeLengths,
    c: Curvature,
    vertex: usize,
) -> Result<ProjectionResult> {
    let order = order_with_first(vertex, e.vertex_count());
    let q = curved_gram(&e.permuted(&order)?, c)?;
    let terms = terms_for(&q, order)?;
    let m = q.vertex_count();

    let mut signed = vec![0.0; m];
    for k in 1..m {
        let minor = terms.first_row_minors[k];
        signed[k] = if k % 2 == 0 { minor } else { -minor };
    }
    let magnitude: f64 = signed.iter().map(|s| s.abs()).sum();
    if terms.signed_sum.abs() <= f64::EPSILON * magnitude * m as f64
        || !terms.signed_sum.is_finite()
    {
        return Err(Error::ProjectionDegenerate);
    }
    let alpha: Vec<f64> = signed.iter().map(|s| s / terms.signed_sum).collect();
    let foot = BarycentricPoint::new(alpha)?;
    let mut lifted = lift_to_model(&q, &foot)?;
    // A foot far outside the facet can normalize onto the lower sheet (or the
    // antipode); the radial line is still right, so flip onto the near side.
    let kappa = q.curvature().kappa();
    let mut v_dot: f64 = (0..m).map(|k| q.matrix()[(0, k)] * lifted.0[k]).sum();
    if v_dot * kappa < 0.0 {
        lifted.0.iter_mut().for_each(|x| *x = -*x);
        v_dot = -v_dot;
    }
    let altitude = if kappa < 0.0 {
        let arg = -v_dot;
        if arg.is_nan() || arg < 1.0 - CLAMP_BAND {
            return Err(Error::OutsideLightCone(arg));
        }
        arg.max(1.0).acosh()
    } else {
        if v_dot.is_nan() || v_dot.abs() > 1.0 + CLAMP_BAND {
            return Err(Error::DegenerateDirection(v_dot));
        }
        v_dot.clamp(-1.0, 1.0).acos()
    };

    let coords = unpermute(&terms.order, foot.coords());
    let inside_face = inside(&coords);
    Ok(ProjectionResult {
        foot: BarycentricPoint::new(coords)?,
        foot_model: Some(HullVector(unpermute(&terms.order, &lifted.0))),
        altitude,
        inside_face,
    })
}

/// Foot and altitude from `vertex` in a hyperbolic simplex.
pub fn hyperbolic_project(e: &EdgeLengths, vertex: usize, tol: f64) -> Result<ProjectionResult> {
    check_vertex(vertex, e.vertex_count())?;
    let report = check_hyperbolic(e, tol);
    require(report.verdict, &report.detail, false)?;
    curved_project_unchecked(e, Curvature::HYPERBOLIC, vertex)
}

/// Foot and altitude from `vertex` in a spherical simplex.
pub fn spherical_project(e: &EdgeLengths, vertex: usize, tol: f64) -> Result<ProjectionResult> {
    check_vertex(vertex, e.vertex_count())?;
    let report = check_spherical(e, tol);
    require(report.verdict, &report.detail, false)?;
    curved_project_unchecked(e, Curvature::SPHERICAL, vertex)
}

/// Projection in a simplex of any curvature. General curvatures are solved on
/// the unit-curvature simplex with edges scaled by `sqrt|k|`; barycentric and
/// lifted coordinates are unchanged by the scaling and the altitude is scaled
/// back.
pub fn project(e: &EdgeLengths, c: Curvature, vertex: usize, tol: f64) -> Result<ProjectionResult> {
    match c.class() {
        CurvatureClass::Euclidean => euclidean_project(e, vertex, tol),
        CurvatureClass::Hyperbolic => hyperbolic_project(e, vertex, tol),
        CurvatureClass::Spherical => spherical_project(e, vertex, tol),
        CurvatureClass::General => {
            check_vertex(vertex, e.vertex_count())?;
            let report = check(e, c, tol);
            require(report.verdict, &report.detail, false)?;
            let s = c.scale();
            let mut r = curved_project_unchecked(&e.scaled(s), c.unit(), vertex)?;
            r.altitude /= s;
            Ok(r)
        }
    }
}

/// Projects `vertex` onto the face spanned by `face` (which must not contain
/// `vertex`) by restricting the simplex to those vertices first. Returned
/// coordinates are over all vertices of `e`.
pub fn project_onto_face(
    e: &EdgeLengths,
    c: Curvature,
    vertex: usize,
    face: &[usize],
    tol: f64,
) -> Result<ProjectionResult> {
    if face.contains(&vertex) {
        return Err(Error::InvalidEdgeLengths(format!(
            "vertex {vertex} lies on the target face"
        )));
    }
    let mut keep = vec![vertex];
    keep.extend_from_slice(face);
    let sub = e.restrict(&keep)?;
    let r = project(&sub, c, 1, tol)?;
    let lift = |vals: &[f64]| {
        let mut out = vec![0.0; e.vertex_count()];
        for (k, &v) in keep.iter().enumerate() {
            out[v - 1] = vals[k];
        }
        out
    };
    Ok(ProjectionResult {
        foot: BarycentricPoint::new(lift(r.foot.coords()))?,
        foot_model: r.foot_model.map(|h| HullVector(lift(&h.0))),
        altitude: r.altitude,
        inside_face: r.inside_face,
    })
}
