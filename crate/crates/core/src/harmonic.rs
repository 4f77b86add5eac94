//! Harmonic maps `H = w1 + conj(w2)` with analytic `w1`, `w2`.

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{require_open_disk, require_within, AnalyticSeries, BoundaryQuadrature};
use crate::kernels::poisson_kernel;
use crate::scalar::Scalar;

/// Radius beyond which fixed-node Poisson quadrature loses accuracy.
pub const POISSON_ACCURACY_RADIUS: f64 = 0.999;

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap<T> {
    pub w1: AnalyticSeries<T>,
    pub w2: AnalyticSeries<T>,
    radius_limit: T,
}

impl<T: Scalar> HarmonicMap<T> {
    pub fn new(w1: AnalyticSeries<T>, w2: AnalyticSeries<T>) -> Self {
        Self {
            w1,
            w2,
            radius_limit: T::one(),
        }
    }

    pub fn zero() -> Self {
        Self::new(AnalyticSeries::zero(), AnalyticSeries::zero())
    }

    /// The analytic map `w1` (no anti-analytic part).
    pub fn analytic(w1: AnalyticSeries<T>) -> Self {
        Self::new(w1, AnalyticSeries::zero())
    }

    /// Restricts evaluation to `|z| <= limit`, for truncated series of
    /// functions that are singular on the circle.
    pub fn with_radius_limit(mut self, limit: T) -> Self {
        self.radius_limit = limit.min(T::one());
        self
    }

    pub fn radius_limit(&self) -> T {
        self.radius_limit
    }

    /// Recovers coefficients from samples on the quadrature nodes by a discrete
    /// Fourier transform: frequencies `0..N/2` feed `w1`, frequencies
    /// `-1..-N/2` (conjugated) feed `w2`. The Nyquist term is dropped.
    pub fn from_boundary_samples(quad: &BoundaryQuadrature<T>, phi: &[Complex<T>]) -> Result<Self> {
        let n = quad.len();
        if phi.len() != n {
            return Err(Error::config(format!(
                "{} samples supplied for {} quadrature nodes",
                phi.len(),
                n
            )));
        }
        let nodes = quad.nodes();
        let half = n / 2;
        let weight = quad.weight();
        let mut pos = Vec::with_capacity(half);
        let mut neg = Vec::with_capacity(half);
        for k in 0..half {
            let mut cp = Complex::zero();
            let mut cn = Complex::zero();
            for (j, &v) in phi.iter().enumerate() {
                let twiddle = nodes[(j * k) % n];
                cp += v * twiddle.conj();
                cn += v * twiddle;
            }
            pos.push(cp * weight);
            neg.push(if k == 0 { Complex::zero() } else { (cn * weight).conj() });
        }
        Ok(Self::new(AnalyticSeries::new(pos), AnalyticSeries::new(neg)))
    }

    fn check(&self, z: Complex<T>) -> Result<()> {
        require_open_disk(z)?;
        require_within(z, self.radius_limit)
    }

    /// `w1(z) + conj(w2(z))` for `|z| < 1`.
    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.check(z)?;
        Ok(self.eval_unchecked(z))
    }

    /// Like [`eval`](Self::eval) but also accepts points on the unit circle.
    pub fn eval_closed(&self, z: Complex<T>) -> Result<Complex<T>> {
        if self.radius_limit < T::one() {
            require_within(z, self.radius_limit)?;
        }
        self.w1.eval_closed(z)?;
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex<T>) -> Complex<T> {
        self.w1.horner(z) + self.w2.horner(z).conj()
    }

    /// `(H_z, H_zbar) = (w1', conj(w2'))`.
    pub fn wirtinger(&self, z: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
        self.check(z)?;
        Ok(self.wirtinger_unchecked(z))
    }

    pub(crate) fn wirtinger_unchecked(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        (
            self.w1.derivative().horner(z),
            self.w2.derivative().horner(z).conj(),
        )
    }

    /// `r dH/dr = z w1'(z) + conj(z w2'(z))`.
    pub fn radial_derivative(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.check(z)?;
        Ok(self.radial_unchecked(z))
    }

    pub(crate) fn radial_unchecked(&self, z: Complex<T>) -> Complex<T> {
        self.w1.euler().horner(z) + self.w2.euler().horner(z).conj()
    }

    /// The harmonic map `r dH/dr` as a coefficient pair.
    pub fn radial_map(&self) -> Self {
        Self {
            w1: self.w1.euler(),
            w2: self.w2.euler(),
            radius_limit: self.radius_limit,
        }
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            w1: &self.w1 * s,
            w2: &self.w2 * s,
            radius_limit: self.radius_limit,
        }
    }

    /// Multiplies by a complex constant: `(s w1) + conj(conj(s) w2)`.
    pub fn scale_complex(&self, s: Complex<T>) -> Self {
        Self {
            w1: self.w1.scale(s),
            w2: self.w2.scale(s.conj()),
            radius_limit: self.radius_limit,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            w1: &self.w1 + &other.w1,
            w2: &self.w2 + &other.w2,
            radius_limit: self.radius_limit.min(other.radius_limit),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-T::one())
    }

    /// Value at the origin, `w1(0) + conj(w2(0))`.
    pub fn at_origin(&self) -> Complex<T> {
        self.w1.coeff(0) + self.w2.coeff(0).conj()
    }

    pub fn is_analytic(&self) -> bool {
        self.w2.is_zero()
    }

    /// Sum of all coefficient moduli.
    pub fn coefficient_scale(&self) -> T {
        self.w1.l1_norm() + self.w2.l1_norm()
    }
}

/// Poisson integral of boundary samples `phi` at `z`, by direct summation.
pub fn poisson_extend<T: Scalar>(
    quad: &BoundaryQuadrature<T>,
    phi: &[Complex<T>],
    z: Complex<T>,
) -> Result<Complex<T>> {
    if phi.len() != quad.len() {
        return Err(Error::config(format!(
            "{} samples supplied for {} quadrature nodes",
            phi.len(),
            quad.len()
        )));
    }
    require_open_disk(z)?;
    if z.norm() > T::lit(POISSON_ACCURACY_RADIUS) {
        log::warn!(
            "Poisson extension at |z| = {} > {POISSON_ACCURACY_RADIUS}: quadrature accuracy degrades",
            z.norm().as_f64()
        );
    }
    let mut acc = Complex::zero();
    for (&zeta, &v) in quad.nodes().iter().zip(phi) {
        acc += v * poisson_kernel(z, zeta)?;
    }
    Ok(acc * quad.weight())
}

/// Harmonic Schwarz bound `(4 / pi) arctan r` for self-maps fixing the origin.
pub fn heinz_bound<T: Scalar>(r: T) -> Result<T> {
    if !(r >= T::zero() && r <= T::one()) {
        return Err(Error::domain(format!(
            "radius must lie in [0, 1], got {}",
            r.as_f64()
        )));
    }
    Ok(T::lit(4.0) * T::FRAC_1_PI() * r.atan())
}

/// Unimodular boundary data `exp(i phi(theta))` with
/// `phi(theta) = w theta + sum_k (a_k cos 2k theta + b_k sin 2k theta)`, `w` odd.
///
/// Then `f(theta + pi) = -f(theta)`, so every even-order trapezoid mean of
/// `f` vanishes and the Poisson extension fixes the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct OddUnimodularBoundary<T> {
    pub winding: i32,
    pub cos_coeffs: Vec<T>,
    pub sin_coeffs: Vec<T>,
}

impl<T: Scalar> OddUnimodularBoundary<T> {
    pub fn new(winding: i32, cos_coeffs: Vec<T>, sin_coeffs: Vec<T>) -> Result<Self> {
        if winding % 2 == 0 {
            return Err(Error::config(format!("winding must be odd, got {winding}")));
        }
        Ok(Self {
            winding,
            cos_coeffs,
            sin_coeffs,
        })
    }

    /// Winding `+-1`, up to `harmonics` perturbation modes of amplitude below `amplitude`.
    pub fn random<R: Rng>(rng: &mut R, harmonics: usize, amplitude: f64) -> Self {
        let winding = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut coeff = |_| T::lit(rng.gen_range(-amplitude..=amplitude));
        let cos_coeffs = (0..harmonics).map(&mut coeff).collect();
        let sin_coeffs = (0..harmonics).map(&mut coeff).collect();
        Self {
            winding,
            cos_coeffs,
            sin_coeffs,
        }
    }

    pub fn phase(&self, theta: T) -> T {
        let mut phase = T::from_i32(self.winding).unwrap() * theta;
        for (k, (&a, &b)) in self.cos_coeffs.iter().zip(&self.sin_coeffs).enumerate() {
            let m = T::from_len(2 * (k + 1)) * theta;
            phase += a * m.cos() + b * m.sin();
        }
        phase
    }

    pub fn value(&self, theta: T) -> Complex<T> {
        Complex::from_polar(T::one(), self.phase(theta))
    }

    pub fn sample(&self, quad: &BoundaryQuadrature<T>) -> Vec<Complex<T>> {
        (0..quad.len()).map(|k| self.value(quad.angle(k))).collect()
    }

    /// Harmonic extension recovered through the discrete Fourier transform.
    pub fn extension(&self, quad: &BoundaryQuadrature<T>) -> Result<HarmonicMap<T>> {
        if !quad.len().is_multiple_of(2) {
            return Err(Error::config("odd boundary data needs an even node count"));
        }
        let mut map = HarmonicMap::from_boundary_samples(quad, &self.sample(quad))?;
        // The mean vanishes analytically; drop the rounding residue.
        map.w1 = map.w1.without_constant();
        Ok(map)
    }
}
