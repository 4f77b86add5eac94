//! Sense-preservation radius by radial scan and bisection, and the closed-form
//! univalence radius for convex-of-order-`alpha` generators.

use num_complex::Complex;

use crate::biharmonic::PlanarMap;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusConfig<T> {
    /// Bisection tolerance on the radius.
    pub tol: T,
    /// Samples per circle.
    pub n_theta: usize,
    /// Radial scan resolution between `r_min` and `r_max`.
    pub n_r: usize,
    pub r_min: T,
    pub r_max: T,
}

impl<T: Scalar> Default for RadiusConfig<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(1e-6),
            n_theta: 1024,
            n_r: 400,
            r_min: T::lit(0.01),
            r_max: T::lit(0.999),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JacobianRadius<T> {
    /// Largest radius with a positive Jacobian on every sampled circle below it;
    /// `1` when no sign change was found up to `r_max`.
    pub radius: T,
    /// Largest scanned radius whose circle had positive minimum Jacobian.
    pub certified: T,
    /// `J <= 0` already at `r_min`.
    pub degenerate: bool,
    pub circles_scanned: usize,
    pub n_theta: usize,
}

/// `min_theta J(r e^{i theta})` over `n_theta` equispaced samples.
pub fn min_jacobian_on_circle<T: Scalar, M: PlanarMap<T>>(u: &M, r: T, n_theta: usize) -> Result<T> {
    let step = T::TAU() / T::from_len(n_theta);
    let mut m = T::infinity();
    for k in 0..n_theta {
        let j = u.jacobian(Complex::from_polar(r, step * T::from_len(k)))?;
        m = m.min(j);
    }
    Ok(m)
}

/// Largest `r*` such that the sampled Jacobian is positive on `|z| < r*`.
pub fn jacobian_radius<T: Scalar, M: PlanarMap<T>>(u: &M, cfg: &RadiusConfig<T>) -> Result<JacobianRadius<T>> {
    if cfg.n_theta < 8 || cfg.n_r < 2 {
        return Err(Error::config("radius scan needs n_theta >= 8 and n_r >= 2"));
    }
    if !(cfg.r_min > T::zero() && cfg.r_min < cfg.r_max && cfg.r_max < T::one()) {
        return Err(Error::config("radius scan needs 0 < r_min < r_max < 1"));
    }
    if !(cfg.tol > T::zero()) {
        return Err(Error::config("tolerance must be positive"));
    }
    let positive = |r: T| -> Result<bool> { Ok(min_jacobian_on_circle(u, r, cfg.n_theta)? > T::zero()) };

    let mut out = JacobianRadius {
        radius: T::zero(),
        certified: T::zero(),
        degenerate: false,
        circles_scanned: 1,
        n_theta: cfg.n_theta,
    };
    if !positive(cfg.r_min)? {
        out.degenerate = true;
        return Ok(out);
    }
    let mut last_good = cfg.r_min;
    let span = cfg.r_max - cfg.r_min;
    for k in 1..=cfg.n_r {
        let r = cfg.r_min + span * T::from_len(k) / T::from_len(cfg.n_r);
        out.circles_scanned += 1;
        if positive(r)? {
            last_good = r;
            continue;
        }
        let (mut lo, mut hi) = (last_good, r);
        while hi - lo > cfg.tol {
            let mid = (lo + hi) * T::lit(0.5);
            out.circles_scanned += 1;
            if positive(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.radius = lo;
        out.certified = lo;
        return Ok(out);
    }
    out.radius = T::one();
    out.certified = cfg.r_max;
    Ok(out)
}

/// Minimum of the Jacobian over the polar grid `|z| <= r` (`n_r` circles plus the origin).
pub fn min_jacobian_on_disk<T: Scalar, M: PlanarMap<T>>(u: &M, r: T, n_r: usize, n_theta: usize) -> Result<T> {
    let mut m = u.jacobian(Complex::new(T::zero(), T::zero()))?;
    for i in 1..=n_r {
        let ri = r * T::from_len(i) / T::from_len(n_r);
        m = m.min(min_jacobian_on_circle(u, ri, n_theta)?);
    }
    Ok(m)
}

/// Univalence radius of `h + (1/2)(1 - |z|^2) z h'` for `h` convex of order
/// `alpha`: `1` for `alpha >= 1/2`, otherwise the positive root of
/// `(1 - 2 alpha) r^2 + 2 (1 - alpha) r - 1 = 0`.
pub fn univalence_radius_formula<T: Scalar>(alpha: T) -> Result<T> {
    if !(alpha >= T::zero() && alpha < T::one()) {
        return Err(Error::domain(format!(
            "alpha must lie in [0, 1), got {}",
            alpha.as_f64()
        )));
    }
    if alpha >= T::lit(0.5) {
        return Ok(T::one());
    }
    let one = T::one();
    let b = one - alpha;
    // rationalized root, free of cancellation as alpha -> 1/2
    Ok(one / (b + (b * b + one - T::lit(2.0) * alpha).sqrt()))
}
