//! Schwarz-type bounds on the disk: the Heinz bound for harmonic self-maps,
//! its biharmonic counterpart for family ℱ, the derivative bound at the
//! origin and the Bloch seminorm.

use num_complex::Complex;
use serde::Serialize;

use crate::biharmonic::{BiharmonicMap, PlanarMap};
use crate::error::{Error, Result};
use crate::grid::PolarGrid;
use crate::harmonic::{heinz_bound, HarmonicMap};
use crate::scalar::Scalar;

/// Slack on every bound verdict.
pub const BOUND_TOL: f64 = 1e-9;

/// Slack on `|H| <= 1` and `H(0) = 0` when checking the hypotheses.
pub const HYPOTHESIS_TOL: f64 = 1e-9;

/// Largest grid radius accepted by [`bloch_seminorm`].
pub const BLOCH_MAX_RADIUS: f64 = 0.999;

/// `6 / pi`, the bound on `|u_z(0)| + |u_zbar(0)|`.
pub fn lambda_bound<T: Scalar>() -> T {
    T::lit(6.0) / T::PI()
}

/// `(4/pi) arctan r + r`.
pub fn biharmonic_schwarz_bound<T: Scalar>(r: T) -> Result<T> {
    Ok(heinz_bound(r)? + r)
}

/// `(3/2)(|w1'(0)| + |w2'(0)|)`, which equals `|u_z(0)| + |u_zbar(0)|` for family ℱ.
pub fn lambda_at_zero<T: Scalar>(u: &BiharmonicMap<T>) -> Result<T> {
    if !u.is_family_f() {
        return Err(Error::Contract(
            "lambda_at_zero needs a family ℱ map; use the Wirtinger pair for general maps".into(),
        ));
    }
    let h = u.harmonic();
    Ok(T::lit(1.5) * (h.w1.coeff(1).norm() + h.w2.coeff(1).norm()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub bound_name: String,
    /// `max (value - bound)`; the bound holds iff this is `<= tol`.
    pub max_violation: T,
    /// Present iff `max_violation > 0`.
    pub witness: Option<Complex<T>>,
    pub tol: T,
    pub pass: bool,
    pub hypothesis_failed: bool,
    pub hypothesis: Option<String>,
    pub points: usize,
}

impl<T: Scalar> BoundReport<T> {
    fn scan<F>(name: &str, grid: &PolarGrid<T>, mut excess: F) -> Result<Self>
    where
        F: FnMut(Complex<T>) -> Result<T>,
    {
        let origin = Complex::new(T::zero(), T::zero());
        let mut worst = excess(origin)?;
        let mut at = origin;
        let mut points = 1;
        for z in grid.points() {
            let e = excess(z)?;
            points += 1;
            if e > worst {
                worst = e;
                at = z;
            }
        }
        let tol = T::lit(BOUND_TOL);
        Ok(Self {
            bound_name: name.to_string(),
            max_violation: worst,
            witness: (worst > T::zero()).then_some(at),
            tol,
            pass: worst <= tol,
            hypothesis_failed: false,
            hypothesis: None,
            points,
        })
    }

    fn failed_hypothesis(name: &str, why: String, points: usize) -> Self {
        Self {
            bound_name: name.to_string(),
            max_violation: T::nan(),
            witness: None,
            tol: T::lit(BOUND_TOL),
            pass: false,
            hypothesis_failed: true,
            hypothesis: Some(why),
            points,
        }
    }
}

/// Checks that `H` is a self-map of the disk on the grid and its boundary
/// circle, and that `H(0) = 0`.
fn self_map_hypothesis<T: Scalar>(h: &HarmonicMap<T>, grid: &PolarGrid<T>) -> Result<Option<String>> {
    let tol = T::lit(HYPOTHESIS_TOL);
    let at0 = h.at_origin().norm();
    if at0 > tol {
        return Ok(Some(format!("H(0) = 0 fails: |H(0)| = {:e}", at0.as_f64())));
    }
    let mut boundary = Vec::new();
    if h.radius_limit() >= T::one() {
        let n = grid.angles().len().max(8);
        boundary.extend((0..n).map(|k| Complex::from_polar(T::one(), T::TAU() * T::from_len(k) / T::from_len(n))));
    }
    for z in grid.points().chain(boundary) {
        let m = h.eval_closed(z)?.norm();
        if m > T::one() + tol {
            return Ok(Some(format!(
                "|H| <= 1 fails at {}: |H| = {}",
                crate::scalar::show(z),
                m.as_f64()
            )));
        }
    }
    Ok(None)
}

/// `max_grid |u(z)| - ((4/pi) arctan|z| + |z|)` for a family ℱ map whose
/// harmonic part is a self-map fixing the origin.
pub fn schwarz_check<T: Scalar>(u: &BiharmonicMap<T>, grid: &PolarGrid<T>) -> Result<BoundReport<T>> {
    const NAME: &str = "biharmonic_schwarz";
    if !u.is_family_f() {
        return Ok(BoundReport::failed_hypothesis(NAME, "map is not in family ℱ".into(), 0));
    }
    if let Some(why) = self_map_hypothesis(u.harmonic(), grid)? {
        return Ok(BoundReport::failed_hypothesis(NAME, why, grid.len() + 1));
    }
    BoundReport::scan(NAME, grid, |z| {
        Ok(u.eval(z)?.norm() - biharmonic_schwarz_bound(z.norm().min(T::one()))?)
    })
}

/// `max_grid |H(z)| - (4/pi) arctan|z|` for a harmonic self-map fixing the origin.
pub fn heinz_check<T: Scalar>(h: &HarmonicMap<T>, grid: &PolarGrid<T>) -> Result<BoundReport<T>> {
    const NAME: &str = "heinz";
    if let Some(why) = self_map_hypothesis(h, grid)? {
        return Ok(BoundReport::failed_hypothesis(NAME, why, grid.len() + 1));
    }
    BoundReport::scan(NAME, grid, |z| Ok(h.eval(z)?.norm() - heinz_bound(z.norm().min(T::one()))?))
}

/// `sup_grid (1 - |z|^2)(|u_z| + |u_zbar|)`.
pub fn bloch_seminorm<T: Scalar, M: PlanarMap<T>>(u: &M, grid: &PolarGrid<T>) -> Result<T> {
    if grid.r_max() > T::lit(BLOCH_MAX_RADIUS) {
        return Err(Error::config(format!(
            "Bloch grid radius must be <= {BLOCH_MAX_RADIUS}, got {}",
            grid.r_max().as_f64()
        )));
    }
    let origin = Complex::new(T::zero(), T::zero());
    let mut sup = u.wirtinger(origin)?.lambda();
    for z in grid.points() {
        sup = sup.max((T::one() - z.norm_sqr()) * u.wirtinger(z)?.lambda());
    }
    Ok(sup)
}
