//! Closed-form kernels of the unit disk.
//!
//! `green_laplace` and `green_biharmonic` take two interior points. The three
//! boundary kernels take a point `zeta` on the unit circle and an interior
//! point `z`; `zeta` is renormalized onto the circle before use.
//!
//! Both Green functions are evaluated through the ratio
//! `s = (1 - |z|^2)(1 - |zeta|^2) / |1 - z conj(zeta)|^2`, which lies in
//! `(0, 1]` and satisfies `|z - zeta|^2 / |1 - z conj(zeta)|^2 = 1 - s`.
//! Writing `Gamma = |1 - z conj(zeta)|^2 ((1 - s) ln(1 - s) + s)` removes the
//! cancellation between the two summands near the boundary of the bidisk.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::require_open_disk;
use crate::scalar::{show, Scalar};

/// Below this separation `Gamma` is replaced by its diagonal limit.
pub const DIAGONAL_CUTOFF: f64 = 1e-8;

/// Accepted distance of a boundary argument from the unit circle.
pub const CIRCLE_TOLERANCE: f64 = 1e-12;

struct PairGeometry<T> {
    dist_sqr: T,
    denom: T,
    weight: T,
}

fn pair_geometry<T: Scalar>(z: Complex<T>, zeta: Complex<T>) -> Result<PairGeometry<T>> {
    require_open_disk(z)?;
    require_open_disk(zeta)?;
    let one = T::one();
    Ok(PairGeometry {
        dist_sqr: (z - zeta).norm_sqr(),
        denom: (Complex::new(one, T::zero()) - z * zeta.conj()).norm_sqr(),
        weight: (one - z.norm_sqr()) * (one - zeta.norm_sqr()),
    })
}

/// `(1 - s) ln(1 - s) + s`, accurate for small `s`.
fn entropy_gap<T: Scalar>(s: T, one_minus_s: T) -> T {
    if s < T::lit(0.1) {
        // sum_{k >= 2} s^k / (k (k - 1))
        let mut sum = T::zero();
        let mut power = s * s;
        for k in 2..80usize {
            let kf = T::from_len(k);
            let term = power / (kf * (kf - T::one()));
            sum += term;
            if term <= T::epsilon() * sum {
                break;
            }
            power *= s;
        }
        sum
    } else if one_minus_s <= T::zero() {
        T::one()
    } else {
        one_minus_s * one_minus_s.ln() + s
    }
}

/// Green function of the Laplacian, `log |(z - zeta) / (1 - z conj(zeta))|^2`.
pub fn green_laplace<T: Scalar>(z: Complex<T>, zeta: Complex<T>) -> Result<T> {
    let g = pair_geometry(z, zeta)?;
    if g.dist_sqr == T::zero() {
        return Err(Error::Singular(format!(
            "G(z, zeta) = -inf at z = zeta = {}",
            show(z)
        )));
    }
    let s = g.weight / g.denom;
    Ok(if s < T::lit(0.5) {
        (-s).ln_1p()
    } else {
        (g.dist_sqr / g.denom).ln()
    })
}

/// Biharmonic Green function with clamped boundary conditions,
/// `|z - zeta|^2 G(z, zeta) + (1 - |z|^2)(1 - |zeta|^2)`.
pub fn green_biharmonic<T: Scalar>(z: Complex<T>, zeta: Complex<T>) -> Result<T> {
    let g = pair_geometry(z, zeta)?;
    let cutoff = T::lit(DIAGONAL_CUTOFF);
    if g.dist_sqr < cutoff * cutoff {
        return Ok(g.weight);
    }
    let s = g.weight / g.denom;
    Ok(g.denom * entropy_gap(s, g.dist_sqr / g.denom))
}

/// Projects a boundary argument onto the circle, rejecting points off it.
pub fn on_circle<T: Scalar>(zeta: Complex<T>) -> Result<Complex<T>> {
    let r = zeta.norm();
    if (r - T::one()).abs() <= T::tol(CIRCLE_TOLERANCE) {
        Ok(zeta / r)
    } else {
        Err(Error::domain(format!(
            "boundary argument must lie on the unit circle, got zeta = {} (|zeta| = {})",
            show(zeta),
            r.as_f64()
        )))
    }
}

/// `(1 - |z|^2, |1 - conj(z) zeta|^2)` for a boundary/interior pair.
fn boundary_pair<T: Scalar>(z: Complex<T>, zeta: Complex<T>) -> Result<(T, T)> {
    require_open_disk(z)?;
    let zeta = on_circle(zeta)?;
    let one = T::one();
    let defect = one - z.norm_sqr();
    let denom = (Complex::new(one, T::zero()) - z.conj() * zeta).norm_sqr();
    Ok((defect, denom))
}

/// Poisson kernel `(1 - |z|^2) / |1 - conj(z) zeta|^2`.
pub fn poisson_kernel<T: Scalar>(z: Complex<T>, zeta: Complex<T>) -> Result<T> {
    let (defect, denom) = boundary_pair(z, zeta)?;
    Ok(defect / denom)
}

/// Harmonic compensator `(1 - |z|^2) P(z, zeta)`.
pub fn harmonic_compensator<T: Scalar>(zeta: Complex<T>, z: Complex<T>) -> Result<T> {
    let (defect, denom) = boundary_pair(z, zeta)?;
    Ok(defect * defect / denom)
}

/// Biharmonic Poisson kernel
/// `(1 - |z|^2)^2 / (2|1 - conj(z) zeta|^2) + (1 - |z|^2)^3 / (2|1 - conj(z) zeta|^4)`.
pub fn biharmonic_poisson<T: Scalar>(zeta: Complex<T>, z: Complex<T>) -> Result<T> {
    let (defect, denom) = boundary_pair(z, zeta)?;
    let p = defect / denom;
    let half = T::lit(0.5);
    Ok(half * defect * p + half * defect * p * p)
}

/// Kernel selector used by the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Green,
    Gamma,
    Poisson,
    Compensator,
    BiharmonicPoisson,
}

impl Kernel {
    /// Evaluates the kernel at the pair `(z, zeta)` regardless of the
    /// argument order of the underlying function.
    pub fn eval<T: Scalar>(self, z: Complex<T>, zeta: Complex<T>) -> Result<T> {
        match self {
            Kernel::Green => green_laplace(z, zeta),
            Kernel::Gamma => green_biharmonic(z, zeta),
            Kernel::Poisson => poisson_kernel(z, zeta),
            Kernel::Compensator => harmonic_compensator(zeta, z),
            Kernel::BiharmonicPoisson => biharmonic_poisson(zeta, z),
        }
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" => Ok(Kernel::Green),
            "Gamma" => Ok(Kernel::Gamma),
            "P" => Ok(Kernel::Poisson),
            "Hc" => Ok(Kernel::Compensator),
            "Fk" => Ok(Kernel::BiharmonicPoisson),
            other => Err(Error::config(format!(
                "unknown kernel {other:?}; expected one of G, Gamma, P, Hc, Fk"
            ))),
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kernel::Green => "G",
            Kernel::Gamma => "Gamma",
            Kernel::Poisson => "P",
            Kernel::Compensator => "Hc",
            Kernel::BiharmonicPoisson => "Fk",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::BoundaryQuadrature;
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn naive_green(z: C, zeta: C) -> f64 {
        ((z - zeta) / (C::new(1.0, 0.0) - z * zeta.conj())).norm_sqr().ln()
    }

    fn naive_gamma(z: C, zeta: C) -> f64 {
        (z - zeta).norm_sqr() * naive_green(z, zeta) + (1.0 - z.norm_sqr()) * (1.0 - zeta.norm_sqr())
    }

    #[test]
    fn green_laplace_examples() {
        let v = green_laplace(C::new(0.5, 0.0), C::new(0.0, 0.0)).unwrap();
        assert!((v - 0.25f64.ln()).abs() < 1e-15);
        assert!((v + 1.3862944).abs() < 1e-7);
        let v = green_laplace(C::new(0.99, 0.0), C::new(0.0, 0.0)).unwrap();
        assert!((v - 2.0 * 0.99f64.ln()).abs() < 1e-15);
        assert!((v + 0.0201007).abs() < 1e-7);
        let a = green_laplace(C::new(0.3, 0.4), C::new(0.0, 0.1)).unwrap();
        let b = green_laplace(C::new(0.0, 0.1), C::new(0.3, 0.4)).unwrap();
        assert!((a - b).abs() < 1e-15);
        assert!((a - naive_green(C::new(0.3, 0.4), C::new(0.0, 0.1))).abs() < 1e-14);
    }

    #[test]
    fn green_laplace_errors() {
        let z = C::new(0.2, 0.1);
        assert!(matches!(green_laplace(z, z), Err(Error::Singular(_))));
        assert!(matches!(
            green_laplace(C::new(1.0, 0.0), z),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            green_biharmonic(z, C::new(0.0, -1.2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn green_biharmonic_examples() {
        assert_eq!(green_biharmonic(C::new(0.0, 0.0), C::new(0.0, 0.0)).unwrap(), 1.0);
        let v = green_biharmonic(C::new(0.5, 0.0), C::new(0.0, 0.0)).unwrap();
        assert!((v - (0.25 * 0.25f64.ln() + 0.75)).abs() < 1e-15);
        assert!((v - 0.4034264).abs() < 1e-7);
        let a = green_biharmonic(C::new(0.3, 0.4), C::new(0.0, 0.1)).unwrap();
        let b = green_biharmonic(C::new(0.0, 0.1), C::new(0.3, 0.4)).unwrap();
        assert!((a - b).abs() < 1e-15);
        // diagonal limit (1 - |z|^2)^2
        let z = C::new(0.3, -0.5);
        let d = green_biharmonic(z, z).unwrap();
        assert!((d - (1.0 - z.norm_sqr()).powi(2)).abs() < 1e-15);
        let near = green_biharmonic(z, z + C::new(1e-6, 0.0)).unwrap();
        assert!((near - d).abs() < 1e-6);
    }

    #[test]
    fn stable_form_matches_naive_away_from_boundary() {
        let pts = [
            (C::new(0.1, 0.2), C::new(-0.4, 0.3)),
            (C::new(0.7, 0.0), C::new(0.0, -0.6)),
            (C::new(-0.5, -0.5), C::new(0.45, 0.55)),
            (C::new(0.05, 0.0), C::new(0.06, 0.01)),
        ];
        for (z, w) in pts {
            let g = green_biharmonic(z, w).unwrap();
            assert!((g - naive_gamma(z, w)).abs() < 1e-13, "{z} {w}");
            assert!((green_laplace(z, w).unwrap() - naive_green(z, w)).abs() < 1e-13);
        }
    }

    #[test]
    fn gamma_positive_near_boundary() {
        // The naive sum cancels to rounding noise here; the stable form does not.
        let z = C::from_polar(0.999, 0.4);
        let w = C::from_polar(0.999, 2.9);
        let g = green_biharmonic(z, w).unwrap();
        assert!(g > 0.0);
        // leading-order asymptotics: q s^2 / 2
        let q = (C::new(1.0, 0.0) - z * w.conj()).norm_sqr();
        let s = (1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr()) / q;
        assert!((g / (0.5 * q * s * s) - 1.0).abs() < 1e-2);
    }

    #[test]
    fn green_vanishes_on_boundary() {
        for k in 0..16 {
            let z = C::from_polar(0.9999, k as f64 * 0.4);
            for w in [C::new(0.0, 0.0), C::new(0.5, 0.0), C::new(-0.2, 0.45)] {
                assert!(green_laplace(z, w).unwrap().abs() < 1e-3);
            }
        }
    }

    #[test]
    fn poisson_examples() {
        let zeta = C::from_polar(1.0, 2.2);
        assert!((poisson_kernel(C::new(0.0, 0.0), zeta).unwrap() - 1.0).abs() < 1e-15);
        assert!((poisson_kernel(C::new(0.5, 0.0), C::new(1.0, 0.0)).unwrap() - 3.0).abs() < 1e-15);
        let q = BoundaryQuadrature::<f64>::new(1024).unwrap();
        let z = C::new(0.0, 0.7);
        let mean = q.integrate_real(|w| poisson_kernel(z, w).unwrap());
        assert!((mean - 1.0).abs() < 1e-12);
        assert!(matches!(
            poisson_kernel(C::new(0.1, 0.0), C::new(0.9, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn compensator_examples() {
        let zeta = C::from_polar(1.0, 0.3);
        assert!((harmonic_compensator(zeta, C::new(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
        let v = harmonic_compensator(C::new(1.0, 0.0), C::new(0.5, 0.0)).unwrap();
        assert!((v - 2.25).abs() < 1e-15);
        let zeta = C::from_polar(1.0, 1.0);
        let z = C::new(0.3, 0.2);
        let lhs = harmonic_compensator(zeta, z).unwrap();
        let rhs = (1.0 - z.norm_sqr()) * poisson_kernel(z, zeta).unwrap();
        assert!((lhs - rhs).abs() < 1e-15);
    }

    #[test]
    fn biharmonic_poisson_examples() {
        let zeta = C::from_polar(1.0, -0.8);
        assert!((biharmonic_poisson(zeta, C::new(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
        let v = biharmonic_poisson(C::new(1.0, 0.0), C::new(0.5, 0.0)).unwrap();
        assert!((v - 4.5).abs() < 1e-14);
        let q = BoundaryQuadrature::<f64>::new(2048).unwrap();
        let z = C::from_polar(0.6, 0.4);
        let mean = q.integrate_real(|w| biharmonic_poisson(w, z).unwrap());
        assert!((mean - 1.0).abs() < 1e-11);
    }

    #[test]
    fn boundary_argument_is_renormalized() {
        let zeta = C::new(1.0 + 5e-13, 0.0);
        let z = C::new(0.5, 0.0);
        assert_eq!(poisson_kernel(z, zeta).unwrap(), poisson_kernel(z, C::new(1.0, 0.0)).unwrap());
    }

    #[test]
    fn kernel_names_round_trip() {
        for k in ["G", "Gamma", "P", "Hc", "Fk"] {
            assert_eq!(k.parse::<Kernel>().unwrap().to_string(), k);
        }
        assert!("gamma".parse::<Kernel>().is_err());
    }

    #[test]
    fn single_precision_kernels() {
        let v = green_biharmonic(Complex::new(0.5f32, 0.0), Complex::new(0.0, 0.0)).unwrap();
        assert!((v - 0.4034264).abs() < 1e-6);
        let v = biharmonic_poisson(Complex::new(1.0f32, 0.0), Complex::new(0.5, 0.0)).unwrap();
        assert!((v - 4.5).abs() < 1e-5);
    }

    fn disk_point(r_max: f64) -> impl Strategy<Value = C> {
        (0.0..r_max, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C::from_polar(r, t))
    }

    proptest! {
        #[test]
        fn green_functions_are_symmetric(z in disk_point(0.999), w in disk_point(0.999)) {
            prop_assume!((z - w).norm() > 1e-6);
            let g1 = green_laplace(z, w).unwrap();
            let g2 = green_laplace(w, z).unwrap();
            prop_assert!((g1 - g2).abs() <= 1e-12 * (1.0 + g1.abs()));
            let b1 = green_biharmonic(z, w).unwrap();
            let b2 = green_biharmonic(w, z).unwrap();
            prop_assert!((b1 - b2).abs() <= 1e-12);
            prop_assert!(g1 < 0.0);
            prop_assert!(b1 > 0.0);
        }

        #[test]
        fn compensator_mean_is_one_minus_r2(z in disk_point(0.95)) {
            let q = BoundaryQuadrature::<f64>::new(2048).unwrap();
            let mean = q.integrate_real(|w| harmonic_compensator(w, z).unwrap());
            prop_assert!((mean - (1.0 - z.norm_sqr())).abs() < 1e-10);
            let mean = q.integrate_real(|w| biharmonic_poisson(w, z).unwrap());
            prop_assert!((mean - 1.0).abs() < 1e-10);
        }
    }
}
