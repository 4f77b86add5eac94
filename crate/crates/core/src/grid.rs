//! Points, sampling grids, boundary quadrature and truncated power series.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{c, cr, show, Scalar};

/// Default number of retained series coefficients (degree 64).
pub const DEFAULT_TERMS: usize = 64;

/// Smallest accepted number of boundary nodes.
pub const MIN_NODES: usize = 8;

/// Builds a finite complex point, rejecting NaN and infinite components.
pub fn point<T: Scalar>(re: T, im: T) -> Result<Complex<T>> {
    if re.is_finite() && im.is_finite() {
        Ok(c(re, im))
    } else {
        Err(Error::domain("non-finite point component"))
    }
}

/// Fails unless `|z| < 1`.
pub fn require_open_disk<T: Scalar>(z: Complex<T>) -> Result<()> {
    if z.norm_sqr() < T::one() {
        Ok(())
    } else {
        Err(Error::domain(format!("|z| < 1 required, got z = {}", show(z))))
    }
}

/// Fails unless `|z| <= limit`, up to a few ulps so that `from_polar(limit, t)` passes.
pub fn require_within<T: Scalar>(z: Complex<T>, limit: T) -> Result<()> {
    if z.norm() <= limit * (T::one() + T::epsilon() * T::lit(16.0)) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "|z| <= {} required, got z = {}",
            limit.as_f64(),
            show(z)
        )))
    }
}

/// Tensor grid of circles and equispaced angles in the unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid<T> {
    radii: Vec<T>,
    angles: Vec<T>,
}

impl<T: Scalar> PolarGrid<T> {
    pub fn new(radii: Vec<T>, n_theta: usize) -> Result<Self> {
        if n_theta < 3 {
            return Err(Error::config(format!("n_theta must be >= 3, got {n_theta}")));
        }
        if radii.is_empty() {
            return Err(Error::config("polar grid needs at least one radius"));
        }
        if radii.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::config("radii must be strictly increasing"));
        }
        if !(radii[0] >= T::zero()) || !(radii[radii.len() - 1] < T::one()) {
            return Err(Error::config("radii must lie in [0, 1)"));
        }
        let step = T::TAU() / T::from_len(n_theta);
        let angles = (0..n_theta).map(|k| step * T::from_len(k)).collect();
        Ok(Self { radii, angles })
    }

    /// `n_r` circles at radii `r_max * k / n_r`, `k = 1..=n_r` (origin excluded).
    pub fn uniform(n_r: usize, r_max: T, n_theta: usize) -> Result<Self> {
        if n_r == 0 {
            return Err(Error::config("n_r must be positive"));
        }
        let radii = (1..=n_r)
            .map(|k| T::from_len(k) / T::from_len(n_r) * r_max)
            .collect();
        Self::new(radii, n_theta)
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn angles(&self) -> &[T] {
        &self.angles
    }

    pub fn r_max(&self) -> T {
        self.radii[self.radii.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest distance between neighbouring nodes (radial or angular).
    pub fn spacing(&self) -> T {
        let mut dr = self.radii[0];
        for w in self.radii.windows(2) {
            dr = dr.max(w[1] - w[0]);
        }
        let dtheta = T::TAU() / T::from_len(self.angles.len());
        dr.max(self.r_max() * dtheta)
    }

    /// All nodes, circle by circle.
    pub fn points(&self) -> impl Iterator<Item = Complex<T>> + '_ {
        self.radii
            .iter()
            .flat_map(move |&r| self.angles.iter().map(move |&t| Complex::from_polar(r, t)))
    }
}

/// Trapezoid rule for the normalized arc measure on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryQuadrature<T> {
    nodes: Vec<Complex<T>>,
    weight: T,
}

impl<T: Scalar> BoundaryQuadrature<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_NODES {
            return Err(Error::config(format!(
                "at least {MIN_NODES} boundary nodes required, got {n}"
            )));
        }
        let step = T::TAU() / T::from_len(n);
        let nodes = (0..n)
            .map(|k| Complex::from_polar(T::one(), step * T::from_len(k)))
            .collect();
        Ok(Self {
            nodes,
            weight: T::one() / T::from_len(n),
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Complex<T>] {
        &self.nodes
    }

    pub fn weight(&self) -> T {
        self.weight
    }

    /// Angle of node `k`.
    pub fn angle(&self, k: usize) -> T {
        T::TAU() * T::from_len(k) / T::from_len(self.nodes.len())
    }

    pub fn integrate<F>(&self, f: F) -> Complex<T>
    where
        F: Fn(Complex<T>) -> Complex<T>,
    {
        let sum = self
            .nodes
            .iter()
            .fold(Complex::zero(), |acc, &z| acc + f(z));
        sum * self.weight
    }

    pub fn integrate_real<F>(&self, f: F) -> T
    where
        F: Fn(Complex<T>) -> T,
    {
        let sum = self.nodes.iter().fold(T::zero(), |acc, &z| acc + f(z));
        sum * self.weight
    }

    /// Samples `f` on the nodes.
    pub fn sample<F>(&self, f: F) -> Vec<Complex<T>>
    where
        F: Fn(Complex<T>) -> Complex<T>,
    {
        self.nodes.iter().map(|&z| f(z)).collect()
    }
}

/// Truncated power series `sum_{n <= N} c_n z^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSeries<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> AnalyticSeries<T> {
    /// An empty coefficient list is read as the zero series.
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex::zero());
        }
        Self { coeffs }
    }

    pub fn from_reals(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&x| cr(x)).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    /// `a * z^k`.
    pub fn monomial(k: usize, a: Complex<T>) -> Self {
        let mut coeffs = vec![Complex::zero(); k + 1];
        coeffs[k] = a;
        Self { coeffs }
    }

    /// `z / (1 - z)` truncated at degree `n`.
    pub fn geometric(n: usize) -> Self {
        let mut coeffs = vec![cr(T::one()); n + 1];
        coeffs[0] = Complex::zero();
        Self { coeffs }
    }

    /// `-log(1 - z) = sum z^n / n` truncated at degree `n`.
    ///
    /// For `|z| <= r < 1` the discarded tail is at most `r^(n+1) / ((n + 1)(1 - r))`.
    pub fn neg_log_one_minus(n: usize) -> Self {
        let coeffs = (0..=n)
            .map(|k| {
                if k == 0 {
                    Complex::zero()
                } else {
                    cr(T::one() / T::from_len(k))
                }
            })
            .collect();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Index of the highest retained coefficient.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^k` (zero beyond the truncation).
    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs.get(k).copied().unwrap_or_else(Complex::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_zero())
    }

    /// Sum of coefficient moduli.
    pub fn l1_norm(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |s, a| s + a.norm())
    }

    /// Evaluates inside the open disk.
    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        require_open_disk(z)?;
        Ok(self.horner(z))
    }

    /// Evaluates on the closed disk; used for boundary traces of polynomial data.
    pub fn eval_closed(&self, z: Complex<T>) -> Result<Complex<T>> {
        require_within(z, T::one() + T::tol(1e-12))?;
        Ok(self.horner(z))
    }

    /// Nested (Horner) evaluation without domain checks.
    pub fn horner(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, &a| acc * z + a)
    }

    /// Term-by-term derivative; coefficient `k` becomes `(k + 1) c_{k+1}`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * T::from_len(k))
            .collect();
        Self::new(coeffs)
    }

    /// `z * s'(z)`, i.e. coefficient `k` scaled by `k`.
    pub fn euler(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &a)| a * T::from_len(k))
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * s).collect())
    }

    /// Drops the constant term.
    pub fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = Complex::zero();
        out
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| f(self.coeff(k), other.coeff(k))).collect())
    }
}

impl<T: Scalar> Add for &AnalyticSeries<T> {
    type Output = AnalyticSeries<T>;
    fn add(self, rhs: Self) -> AnalyticSeries<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for &AnalyticSeries<T> {
    type Output = AnalyticSeries<T>;
    fn sub(self, rhs: Self) -> AnalyticSeries<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Scalar> Neg for &AnalyticSeries<T> {
    type Output = AnalyticSeries<T>;
    fn neg(self) -> AnalyticSeries<T> {
        self.scale(cr(-T::one()))
    }
}

impl<T: Scalar> Mul<T> for &AnalyticSeries<T> {
    type Output = AnalyticSeries<T>;
    fn mul(self, rhs: T) -> AnalyticSeries<T> {
        self.scale(cr(rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn eval_series_examples() {
        let id = AnalyticSeries::from_reals(&[0.0, 1.0]);
        assert_eq!(id.eval(C::new(0.3, 0.0)).unwrap(), C::new(0.3, 0.0));
        let one = AnalyticSeries::from_reals(&[1.0]);
        assert_eq!(one.eval(C::new(-0.2, 0.7)).unwrap(), C::new(1.0, 0.0));
        let sq = AnalyticSeries::from_reals(&[0.0, 0.0, 1.0]);
        let v = sq.eval(C::new(0.0, 0.5)).unwrap();
        assert!((v - C::new(-0.25, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn eval_rejects_outside_disk() {
        let s = AnalyticSeries::from_reals(&[0.0, 1.0]);
        assert!(matches!(s.eval(C::new(1.0, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(s.eval(C::new(f64::NAN, 0.0)), Err(Error::Domain(_))));
        assert!(s.eval_closed(C::new(0.0, 1.0)).is_ok());
        assert!(s.eval_closed(C::new(0.0, 1.01)).is_err());
    }

    #[test]
    fn derivative_examples() {
        let d = AnalyticSeries::<f64>::from_reals(&[0.0, 1.0]).derivative();
        assert_eq!(d, AnalyticSeries::from_reals(&[1.0]));
        let d = AnalyticSeries::<f64>::from_reals(&[0.0, 0.0, 1.0]).derivative();
        assert_eq!(d, AnalyticSeries::from_reals(&[0.0, 2.0]));
        let d = AnalyticSeries::<f64>::from_reals(&[1.0, 2.0, 3.0]).derivative();
        assert_eq!(d, AnalyticSeries::from_reals(&[2.0, 6.0]));
        assert_eq!(d.truncation(), 1);
        assert!(AnalyticSeries::<f64>::from_reals(&[5.0]).derivative().is_zero());
    }

    #[test]
    fn geometric_series_matches_closed_form() {
        let n = 40;
        let s = AnalyticSeries::<f64>::new(vec![C::new(1.0, 0.0); n + 1]);
        for &(re, im) in &[(0.9, 0.0), (0.0, -0.9), (0.5, 0.6), (-0.63, 0.63), (0.1, 0.05)] {
            let z = C::new(re, im);
            let exact = (C::new(1.0, 0.0) - z.powu(n as u32 + 1)) / (C::new(1.0, 0.0) - z);
            assert!((s.eval(z).unwrap() - exact).norm() < 1e-12);
        }
    }

    #[test]
    fn quadrature_basics() {
        assert!(matches!(
            BoundaryQuadrature::<f64>::new(7),
            Err(Error::Config(_))
        ));
        let q = BoundaryQuadrature::<f64>::new(8).unwrap();
        assert_eq!(q.len(), 8);
        assert_eq!(q.weight(), 0.125);
        assert_eq!(q.integrate_real(|_| 1.0), 1.0);
        let q = BoundaryQuadrature::<f64>::new(64).unwrap();
        assert!(q.integrate_real(|z| z.re).abs() < 1e-14);
    }

    #[test]
    fn trapezoid_kills_low_harmonics() {
        let n = 48;
        let q = BoundaryQuadrature::<f64>::new(n).unwrap();
        for k in 1..n as i32 {
            for sign in [1, -1] {
                let v = q.integrate(|z| z.powi(sign * k));
                assert!(v.norm() < 1e-13, "k = {}", sign * k);
            }
        }
    }

    #[test]
    fn polar_grid_validation() {
        assert!(PolarGrid::<f64>::new(vec![0.1, 0.2], 2).is_err());
        assert!(PolarGrid::<f64>::new(vec![0.2, 0.1], 8).is_err());
        assert!(PolarGrid::<f64>::new(vec![0.1, 1.0], 8).is_err());
        let g = PolarGrid::<f64>::uniform(4, 0.8, 16).unwrap();
        assert_eq!(g.len(), 64);
        assert_eq!(g.points().count(), 64);
        assert!((g.r_max() - 0.8).abs() < 1e-15);
        assert!(g.points().all(|z| z.norm() <= 0.8 + 1e-15));
    }

    #[test]
    fn non_finite_points_rejected() {
        assert!(point(f64::INFINITY, 0.0).is_err());
        assert!(point(0.0, f64::NAN).is_err());
        assert!(point(0.1, 0.2).is_ok());
    }

    #[test]
    fn works_in_single_precision() {
        let s = AnalyticSeries::<f32>::from_reals(&[1.0, 2.0, 3.0]);
        let v = s.eval(Complex::new(0.5f32, 0.0)).unwrap();
        assert!((v.re - 2.75).abs() < 1e-6);
    }
}
