use super::system::RootSystem;
use super::weyl::WeylElement;
use super::RootSystemError;

/// Relative margin below which a root value counts as zero.
const WALL_TOLERANCE: f64 = 1e-9;

/// The Weyl element `u` with `u⁻¹·point` dominant, for a regular real point
/// given in fundamental-coweight coordinates (`point[j] = α_j(x)`).
pub fn chamber_of(rs: &RootSystem, point: &[f64]) -> Result<WeylElement, RootSystemError> {
    let r = rs.rank();
    if point.len() != r {
        return Err(RootSystemError::Degenerate(format!(
            "point has {} coordinates, rank is {r}",
            point.len()
        )));
    }
    let scale = point.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let tol = WALL_TOLERANCE * scale.max(f64::MIN_POSITIVE);
    if !scale.is_finite() || scale == 0.0 {
        return Err(RootSystemError::Degenerate("point is zero or not finite".into()));
    }
    for a in rs.positive_roots() {
        if RootSystem::eval_root(a, point).abs() <= tol {
            return Err(RootSystemError::Degenerate(format!(
                "point lies on the wall of root {a:?}"
            )));
        }
    }
    let mut p = point.to_vec();
    let mut u = rs.identity();
    // every coordinate met below is a root value of the original point, so
    // the sign tests inherit the margin checked above
    while let Some(j) = (0..r).find(|&j| p[j] < 0.0) {
        let pj = p[j];
        for (k, pk) in p.iter_mut().enumerate() {
            *pk -= rs.cartan_integer(k, j) as f64 * pj;
        }
        u = u.mul(rs.s(j));
    }
    Ok(u)
}
