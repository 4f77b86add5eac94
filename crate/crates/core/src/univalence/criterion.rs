//! Series criterion for univalence of `u = |z|^2 F1 + F2`.
//!
//! With `F_j = sum_{n>=1} (a_n^(j) z^n + b_n^(j) conj(z)^n)` the scanned quantity is
//!
//! ```text
//! S(z, t) = sum_n (a_n^(2) z^n - b_n^(2) conj(z)^n) D_n(t)
//!         + |z|^2 sum_n (a_n^(1) z^n - b_n^(1) conj(z)^n) D_n(t),
//! D_n(t) = sin(n t) / sin(t),
//! ```
//!
//! for `z != 0` and `t` in `(0, pi/2]`. It compares `u` at the two points
//! `z e^{it}` and `z e^{-it}` of a common circle, so a nonvanishing `S`
//! certifies injectivity on every circle only. Radial folds are invisible to
//! it; see [`super::oracle`].

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::scalar::{show, Scalar};
use crate::BiharmonicMap;

/// Relative threshold below which `|S|` counts as zero.
pub const CRITERION_THRESHOLD: f64 = 1e-9;

/// Default number of `t` samples, `t_k = (pi/2) k / 256`, `k = 1..=256`.
pub const DEFAULT_T_SAMPLES: usize = 256;

fn check_t<T: Scalar>(t: T) -> Result<()> {
    let top = T::FRAC_PI_2() * (T::one() + T::epsilon() * T::lit(4.0));
    if t > T::zero() && t <= top {
        Ok(())
    } else {
        Err(Error::domain(format!("t must lie in (0, pi/2], got {}", t.as_f64())))
    }
}

/// `sin(n t) / sin(t)` through the second-kind Chebyshev recurrence
/// `U_{k+1}(x) = 2x U_k(x) - U_{k-1}(x)` at `x = cos t`.
pub fn dirichlet_ratio<T: Scalar>(n: usize, t: T) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("dirichlet_ratio needs n >= 1"));
    }
    check_t(t)?;
    Ok(dirichlet_ratios(n, t)[n - 1])
}

/// `[D_1(t), ..., D_{n_max}(t)]` without range checks.
pub fn dirichlet_ratios<T: Scalar>(n_max: usize, t: T) -> Vec<T> {
    let two_x = T::lit(2.0) * t.cos();
    let mut out = Vec::with_capacity(n_max);
    let (mut prev, mut cur) = (T::zero(), T::one());
    for _ in 0..n_max {
        out.push(cur);
        let next = two_x * cur - prev;
        prev = cur;
        cur = next;
    }
    out
}

/// Default `t` grid: `(pi/2) k / n`, `k = 1..=n`.
pub fn t_grid<T: Scalar>(n: usize) -> Vec<T> {
    (1..=n)
        .map(|k| T::FRAC_PI_2() * T::from_len(k) / T::from_len(n))
        .collect()
}

/// The pair `(F1, F2)` with `u = |z|^2 F1 + F2`, both vanishing at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionInput<T> {
    f1: HarmonicMap<T>,
    f2: HarmonicMap<T>,
}

impl<T: Scalar> CriterionInput<T> {
    pub fn new(f1: HarmonicMap<T>, f2: HarmonicMap<T>) -> Result<Self> {
        for (name, f) in [("F1", &f1), ("F2", &f2)] {
            if !f.at_origin().is_zero() {
                return Err(Error::Contract(format!(
                    "{name} must vanish at the origin, got {}",
                    show(f.at_origin())
                )));
            }
        }
        Ok(Self { f1, f2 })
    }

    /// Splits `u` into `|z|^2 A + B`. A constant in `B` is a translation and
    /// is dropped; a constant in `A` is rejected.
    pub fn from_map(u: &BiharmonicMap<T>) -> Result<Self> {
        let (a, b) = u.to_ab_form();
        let b = HarmonicMap::new(b.w1.without_constant(), b.w2.without_constant());
        Self::new(a, b)
    }

    pub fn f1(&self) -> &HarmonicMap<T> {
        &self.f1
    }

    pub fn f2(&self) -> &HarmonicMap<T> {
        &self.f2
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            f1: self.f1.scale(s),
            f2: self.f2.scale(s),
        }
    }

    pub fn coefficient_scale(&self) -> T {
        self.f1.coefficient_scale() + self.f2.coefficient_scale()
    }

    fn degree(&self) -> usize {
        [&self.f1.w1, &self.f1.w2, &self.f2.w1, &self.f2.w2]
            .iter()
            .map(|s| s.truncation())
            .max()
            .unwrap_or(0)
    }

    /// Per-degree weights `c_n(z) = (a2 + r^2 a1) z^n - (b2 + r^2 b1) conj(z)^n`,
    /// so that `S(z, t) = sum_n c_n(z) D_n(t)`.
    fn weights(&self, z: Complex<T>) -> Vec<Complex<T>> {
        let r2 = z.norm_sqr();
        let n_max = self.degree();
        let mut out = Vec::with_capacity(n_max);
        let (mut zp, mut zbp) = (z, z.conj());
        for n in 1..=n_max {
            let a = self.f2.w1.coeff(n) + self.f1.w1.coeff(n) * r2;
            let b = (self.f2.w2.coeff(n) + self.f1.w2.coeff(n) * r2).conj();
            out.push(a * zp - b * zbp);
            zp *= z;
            zbp *= z.conj();
        }
        out
    }
}

/// `S(z, t)` truncated at the series length.
pub fn criterion_value<T: Scalar>(input: &CriterionInput<T>, z: Complex<T>, t: T) -> Result<Complex<T>> {
    if z.is_zero() {
        return Err(Error::domain("the criterion excludes z = 0"));
    }
    crate::grid::require_open_disk(z)?;
    check_t(t)?;
    let weights = input.weights(z);
    let ratios = dirichlet_ratios(weights.len(), t);
    Ok(weights
        .iter()
        .zip(&ratios)
        .fold(Complex::zero(), |acc, (&w, &d)| acc + w * d))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionScan<T> {
    pub holds: bool,
    pub min_abs: T,
    pub argmin_z: Complex<T>,
    pub argmin_t: T,
    pub threshold: T,
    pub evaluations: usize,
}

/// Exhaustive scan of `|S|` over `r_grid x theta_grid x t_grid`;
/// holds iff the minimum exceeds `1e-9` times the coefficient scale.
pub fn criterion_scan<T: Scalar>(
    input: &CriterionInput<T>,
    r_grid: &[T],
    theta_grid: &[T],
    t_grid: &[T],
) -> Result<CriterionScan<T>> {
    if r_grid.is_empty() || theta_grid.is_empty() || t_grid.is_empty() {
        return Err(Error::config("criterion scan needs nonempty grids"));
    }
    if r_grid.iter().any(|&r| !(r > T::zero() && r < T::one())) {
        return Err(Error::domain("criterion radii must lie in (0, 1)"));
    }
    for &t in t_grid {
        check_t(t)?;
    }
    let threshold = T::lit(CRITERION_THRESHOLD) * input.coefficient_scale().max(T::min_positive_value());
    let n_max = input.degree();
    let ratio_table: Vec<Vec<T>> = t_grid.iter().map(|&t| dirichlet_ratios(n_max, t)).collect();

    let mut best = CriterionScan {
        holds: true,
        min_abs: T::infinity(),
        argmin_z: Complex::zero(),
        argmin_t: t_grid[0],
        threshold,
        evaluations: 0,
    };
    for &r in r_grid {
        for &theta in theta_grid {
            let z = Complex::from_polar(r, theta);
            let weights = input.weights(z);
            for (&t, ratios) in t_grid.iter().zip(&ratio_table) {
                let s = weights
                    .iter()
                    .zip(ratios)
                    .fold(Complex::zero(), |acc, (&w, &d)| acc + w * d);
                let m = s.norm();
                best.evaluations += 1;
                if m < best.min_abs {
                    best.min_abs = m;
                    best.argmin_z = z;
                    best.argmin_t = t;
                }
            }
        }
    }
    best.holds = best.min_abs > threshold;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::AnalyticSeries;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    type C = Complex<f64>;

    fn mono(n: usize, a: f64) -> AnalyticSeries<f64> {
        AnalyticSeries::monomial(n, C::new(a, 0.0))
    }

    fn example1_input(alpha: f64) -> CriterionInput<f64> {
        CriterionInput::new(HarmonicMap::analytic(mono(1, -alpha)), HarmonicMap::analytic(mono(1, 1.0 + alpha))).unwrap()
    }

    #[test]
    fn dirichlet_ratio_examples() {
        assert_eq!(dirichlet_ratio(1, 0.7).unwrap(), 1.0);
        assert!((dirichlet_ratio(3, FRAC_PI_2).unwrap() + 1.0).abs() < 1e-15);
        let v = dirichlet_ratio(5, 0.3).unwrap();
        assert!((v - 1.5f64.sin() / 0.3f64.sin()).abs() < 1e-14);
        assert!((v - 3.3753).abs() < 1e-4);
        assert!(dirichlet_ratio(2, 0.0).is_err());
        assert!(dirichlet_ratio(2, 1.6).is_err());
        assert!(dirichlet_ratio(0, 0.5).is_err());
    }

    #[test]
    fn dirichlet_ratio_small_t_limit() {
        // D_n(t) -> n as t -> 0, where the quotient form is ill-conditioned.
        for n in [1usize, 7, 50, 200] {
            let v = dirichlet_ratio(n, 1e-9).unwrap();
            assert!((v - n as f64).abs() < 1e-9 * n as f64);
        }
    }

    #[test]
    fn criterion_value_examples() {
        let alpha = 0.5;
        let input = example1_input(alpha);
        let z = C::new(0.3, -0.4);
        for t in [0.2, 1.0, FRAC_PI_2] {
            let s = criterion_value(&input, z, t).unwrap();
            let expected = z * (1.0 + alpha - alpha * z.norm_sqr());
            assert!((s - expected).norm() < 1e-15);
        }

        // Example 2, n = 2: F1 = -(z + conj(z)^2)/2, F2 = 3z/2 + conj(z)^2
        let input = CriterionInput::new(
            HarmonicMap::new(mono(1, -0.5), mono(2, -0.5)),
            HarmonicMap::new(mono(1, 1.5), mono(2, 1.0)),
        )
        .unwrap();
        let s = criterion_value(&input, C::new(0.5, 0.0), FRAC_PI_2).unwrap();
        assert!((s - C::new(0.6875, 0.0)).norm() < 1e-15);

        let id = CriterionInput::new(HarmonicMap::zero(), HarmonicMap::analytic(mono(1, 1.0))).unwrap();
        let z = C::new(-0.2, 0.6);
        assert!((criterion_value(&id, z, 0.9).unwrap() - z).norm() < 1e-15);
        assert!(criterion_value(&id, C::new(0.0, 0.0), 0.9).is_err());
    }

    #[test]
    fn criterion_input_requires_vanishing_constants() {
        let bad = HarmonicMap::analytic(AnalyticSeries::from_reals(&[1.0, 1.0]));
        assert!(CriterionInput::new(HarmonicMap::zero(), bad.clone()).is_err());
        assert!(CriterionInput::new(bad, HarmonicMap::zero()).is_err());
    }

    #[test]
    fn scan_examples() {
        let rs: Vec<f64> = (1..=32).map(|k| 0.995 * k as f64 / 32.0).collect();
        let thetas: Vec<f64> = (0..64).map(|k| std::f64::consts::TAU * k as f64 / 64.0).collect();
        let ts = t_grid::<f64>(64);

        let alpha = 0.5;
        let scan = criterion_scan(&example1_input(alpha), &rs, &thetas, &ts).unwrap();
        assert!(scan.holds);
        let r0 = rs[0];
        assert!(scan.min_abs >= r0 * (1.0 + alpha - alpha * r0 * r0) - 1e-15);

        // F2 = z - conj(z) vanishes on the real axis.
        let fold = CriterionInput::new(
            HarmonicMap::zero(),
            HarmonicMap::new(mono(1, 1.0), mono(1, 1.0)),
        )
        .unwrap();
        let scan = criterion_scan(&fold, &rs, &thetas, &ts).unwrap();
        assert!(!scan.holds);
        assert!(scan.argmin_z.im.abs() < 1e-12);

        assert!(criterion_scan(&fold, &[], &thetas, &ts).is_err());
        assert!(criterion_scan(&fold, &[0.0], &thetas, &ts).is_err());
    }

    proptest! {
        #[test]
        fn ratio_bounded_by_n(n in 1usize..=200, t in 1e-6..FRAC_PI_2) {
            let v = dirichlet_ratio(n, t).unwrap();
            prop_assert!(v.abs() <= n as f64 * (1.0 + 1e-12));
            let direct = (n as f64 * t).sin() / t.sin();
            prop_assert!((v - direct).abs() <= 1e-9 * n as f64);
        }

        #[test]
        fn criterion_is_homogeneous(
            c in -3.0..3.0f64,
            a in prop::collection::vec(-1.0..1.0f64, 4),
            r in 0.05..0.95f64,
            theta in 0.0..std::f64::consts::TAU,
            t in 0.01..FRAC_PI_2,
        ) {
            let input = CriterionInput::new(
                HarmonicMap::new(mono(1, a[0]), mono(2, a[1])),
                HarmonicMap::new(mono(3, a[2]), mono(1, a[3])),
            ).unwrap();
            let z = C::from_polar(r, theta);
            let s = criterion_value(&input, z, t).unwrap();
            let sc = criterion_value(&input.scale(c), z, t).unwrap();
            prop_assert!((sc - s * c).norm() <= 1e-14 * (1.0 + s.norm() * c.abs()));
        }
    }
}
