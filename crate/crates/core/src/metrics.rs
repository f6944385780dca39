//! Distances between points given in barycentric coordinates.

use crate::error::{Error, Result};
use crate::simplex::{
    curved_gram, euclidean_gram, hull_inner_product, BarycentricPoint, Curvature, CurvedGram,
    EdgeLengths, EuclideanGram,
};

/// Half-width of the band around the valid range of `arccosh`/`arccos`
/// arguments inside which round-off is clamped rather than reported.
pub const CLAMP_BAND: f64 = 1e-12;

/// Relative tolerance on a negative squared Euclidean distance.
const NEGATIVE_SQUARE_TOL: f64 = 1e-9;

fn check_len(expected: usize, p: &BarycentricPoint) -> Result<()> {
    if p.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            actual: p.len(),
        });
    }
    Ok(())
}

/// `sqrt([x-y]^T Q [x-y])`, with the apex coordinate dropped.
pub fn euclidean_distance(
    q: &EuclideanGram,
    x: &BarycentricPoint,
    y: &BarycentricPoint,
) -> Result<f64> {
    check_len(q.vertex_count(), x)?;
    check_len(q.vertex_count(), y)?;
    let full: Vec<f64> = x
        .coords()
        .iter()
        .zip(y.coords())
        .map(|(a, b)| a - b)
        .collect();
    let d = q.reduce(&full);
    let m = q.matrix();
    let mut value = 0.0;
    let mut scale = 0.0;
    for i in 0..d.len() {
        for j in 0..d.len() {
            let t = m[(i, j)] * d[i] * d[j];
            value += t;
            scale += t.abs();
        }
    }
    if value < -NEGATIVE_SQUARE_TOL * scale {
        return Err(Error::NotRealizableInput(format!(
            "squared distance {value} is negative"
        )));
    }
    Ok(value.max(0.0).sqrt())
}

/// Hyperbolic distance `arccosh(-<x,y> / sqrt(<x,x><y,y>))`, divided by
/// `sqrt(-k)` when the Gram matrix was built for a curvature other than -1.
pub fn hyperbolic_distance(
    q: &CurvedGram,
    x: &BarycentricPoint,
    y: &BarycentricPoint,
) -> Result<f64> {
    let kappa = q.curvature().kappa();
    if kappa >= 0.0 {
        return Err(Error::WrongModel("hyperbolic distance needs k < 0"));
    }
    check_len(q.vertex_count(), x)?;
    check_len(q.vertex_count(), y)?;
    let (x, y) = (x.coords(), y.coords());
    let xx = hull_inner_product(q, x, x)?;
    let yy = hull_inner_product(q, y, y)?;
    for v in [xx, yy] {
        if v >= 0.0 {
            return Err(Error::OutsideLightCone(v));
        }
    }
    let xy = hull_inner_product(q, x, y)?;
    let arg = -xy / (xx * yy).sqrt();
    if arg.is_nan() || arg < 1.0 - CLAMP_BAND {
        return Err(Error::OutsideLightCone(arg));
    }
    let chord2 = normalized_gap(q, x, y, xx, yy)?;
    Ok(2.0 * (0.5 * chord2.max(0.0).sqrt()).asinh() / (-kappa).sqrt())
}

/// `<w,w>` for `w = x/sqrt|<x,x>| - y/sqrt|<y,y>|`, the squared chord between
/// the points scaled onto `<x,x> = +-1`. Short distances come out
/// accurately this way, and exactly zero when `x == y`.
fn normalized_gap(q: &CurvedGram, x: &[f64], y: &[f64], xx: f64, yy: f64) -> Result<f64> {
    let (sx, sy) = (xx.abs().sqrt(), yy.abs().sqrt());
    let w: Vec<f64> = x.iter().zip(y).map(|(a, b)| a / sx - b / sy).collect();
    hull_inner_product(q, &w, &w)
}

/// Spherical distance `arccos(<x,y> / sqrt(<x,x><y,y>))`, divided by
/// `sqrt(k)` when the Gram matrix was built for a curvature other than 1.
pub fn spherical_distance(
    q: &CurvedGram,
    x: &BarycentricPoint,
    y: &BarycentricPoint,
) -> Result<f64> {
    let kappa = q.curvature().kappa();
    if kappa <= 0.0 {
        return Err(Error::WrongModel("spherical distance needs k > 0"));
    }
    check_len(q.vertex_count(), x)?;
    check_len(q.vertex_count(), y)?;
    let (x, y) = (x.coords(), y.coords());
    let xx = hull_inner_product(q, x, x)?;
    let yy = hull_inner_product(q, y, y)?;
    for v in [xx, yy] {
        if v <= 0.0 {
            return Err(Error::DegenerateDirection(v));
        }
    }
    let xy = hull_inner_product(q, x, y)?;
    let arg = xy / (xx * yy).sqrt();
    if arg.is_nan() || arg.abs() > 1.0 + CLAMP_BAND {
        return Err(Error::DegenerateDirection(arg));
    }
    if arg >= 0.0 {
        let chord2 = normalized_gap(q, x, y, xx, yy)?;
        let half = (0.5 * chord2.max(0.0).sqrt()).min(1.0);
        return Ok(2.0 * half.asin() / kappa.sqrt());
    }
    Ok(arg.clamp(-1.0, 1.0).acos() / kappa.sqrt())
}

/// Distance under the radius model built into the Gram matrix.
pub fn curved_distance(q: &CurvedGram, x: &BarycentricPoint, y: &BarycentricPoint) -> Result<f64> {
    if q.curvature().kappa() < 0.0 {
        hyperbolic_distance(q, x, y)
    } else {
        spherical_distance(q, x, y)
    }
}

/// Distance in a simplex of curvature `c`.
///
/// Curved cases are evaluated on the unit-curvature simplex with every edge
/// scaled by `sqrt|k|`, and the result scaled back.
pub fn distance(
    e: &EdgeLengths,
    c: Curvature,
    x: &BarycentricPoint,
    y: &BarycentricPoint,
) -> Result<f64> {
    let kappa = c.kappa();
    if kappa == 0.0 {
        let q = euclidean_gram(e, e.vertex_count())?;
        return euclidean_distance(&q, x, y);
    }
    let s = c.scale();
    let unit = if s == 1.0 { e.clone() } else { e.scaled(s) };
    let q = curved_gram(&unit, c.unit())?;
    Ok(curved_distance(&q, x, y)? / s)
}

/// A distance together with a flag for endpoints outside the closed simplex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceReport {
    pub distance: f64,
    pub outside_simplex: bool,
}

/// [`distance`], also reporting whether either endpoint has a negative
/// coordinate.
pub fn measure(
    e: &EdgeLengths,
    c: Curvature,
    x: &BarycentricPoint,
    y: &BarycentricPoint,
) -> Result<DistanceReport> {
    Ok(DistanceReport {
        distance: distance(e, c, x, y)?,
        outside_simplex: x.is_outside() || y.is_outside(),
    })
}
