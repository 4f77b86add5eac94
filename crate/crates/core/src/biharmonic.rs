//! Biharmonic maps `u = H + (1 - |z|^2) h` of the unit disk.
//!
//! `H` and `h` are harmonic. The family ℱ consists of the maps with
//! `h = (1/2) r dH/dr`; they solve the clamped problem with vanishing normal
//! derivative. Normal derivatives are stored in the exterior convention.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grid::{require_within, AnalyticSeries, BoundaryQuadrature};
use crate::harmonic::HarmonicMap;
use crate::holomorphic::Holomorphic;
use crate::kernels::{biharmonic_poisson, green_biharmonic, harmonic_compensator};
use crate::scalar::{cr, show, Scalar};

/// Evaluation radius accepted by [`solve_dirichlet`].
pub const SOLVER_MAX_RADIUS: f64 = 0.99;

/// Wirtinger derivatives `(u_z, u_zbar)` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WirtingerPair<T> {
    pub dz: Complex<T>,
    pub dzbar: Complex<T>,
}

impl<T: Scalar> WirtingerPair<T> {
    /// `|u_z|^2 - |u_zbar|^2`.
    pub fn jacobian(&self) -> T {
        self.dz.norm_sqr() - self.dzbar.norm_sqr()
    }

    /// `|u_z| + |u_zbar|`, the operator norm of the differential.
    pub fn lambda(&self) -> T {
        self.dz.norm() + self.dzbar.norm()
    }

    /// Real 2x2 differential `[[du/dx], [du/dy]]` as complex columns.
    pub fn partials(&self) -> (Complex<T>, Complex<T>) {
        let i = Complex::new(T::zero(), T::one());
        (self.dz + self.dzbar, i * (self.dz - self.dzbar))
    }
}

/// A smooth planar map of the disk with closed-form derivatives.
pub trait PlanarMap<T: Scalar> {
    fn eval(&self, z: Complex<T>) -> Result<Complex<T>>;
    fn wirtinger(&self, z: Complex<T>) -> Result<WirtingerPair<T>>;

    fn jacobian(&self, z: Complex<T>) -> Result<T> {
        Ok(self.wirtinger(z)?.jacobian())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// `h = (1/2) r dH/dr`.
    FamilyF,
    General,
}

#[derive(Debug, Clone, PartialEq)]
struct Derived<T> {
    w1_d: AnalyticSeries<T>,
    w2_d: AnalyticSeries<T>,
    v1_d: AnalyticSeries<T>,
    v2_d: AnalyticSeries<T>,
}

impl<T: Scalar> Derived<T> {
    fn of(harmonic: &HarmonicMap<T>, companion: &HarmonicMap<T>) -> Self {
        Self {
            w1_d: harmonic.w1.derivative(),
            w2_d: harmonic.w2.derivative(),
            v1_d: companion.w1.derivative(),
            v2_d: companion.w2.derivative(),
        }
    }
}

/// `u(z) = H(z) + (1 - |z|^2) h(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiharmonicMap<T> {
    harmonic: HarmonicMap<T>,
    companion: HarmonicMap<T>,
    kind: MapKind,
    derived: Derived<T>,
}

impl<T: Scalar> BiharmonicMap<T> {
    pub fn new(harmonic: HarmonicMap<T>, companion: HarmonicMap<T>) -> Self {
        Self::with_kind(harmonic, companion, MapKind::General)
    }

    fn with_kind(harmonic: HarmonicMap<T>, companion: HarmonicMap<T>, kind: MapKind) -> Self {
        let derived = Derived::of(&harmonic, &companion);
        Self {
            harmonic,
            companion,
            kind,
            derived,
        }
    }

    /// Member of the family ℱ generated by `H`: `h = (1/2)(z w1' + conj(z w2'))`.
    pub fn family_f(harmonic: HarmonicMap<T>) -> Self {
        let companion = harmonic.radial_map().scale(T::lit(0.5));
        Self::with_kind(harmonic, companion, MapKind::FamilyF)
    }

    /// Builds `u = |z|^2 A + B`, i.e. `H = A + B` and `h = -A`.
    pub fn from_ab_form(a: &HarmonicMap<T>, b: &HarmonicMap<T>) -> Self {
        Self::new(a.add(b), a.neg())
    }

    pub fn zero() -> Self {
        Self::new(HarmonicMap::zero(), HarmonicMap::zero())
    }

    pub fn harmonic(&self) -> &HarmonicMap<T> {
        &self.harmonic
    }

    pub fn companion(&self) -> &HarmonicMap<T> {
        &self.companion
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn is_family_f(&self) -> bool {
        self.kind == MapKind::FamilyF
    }

    /// `(A, B)` with `u = |z|^2 A + B`: `A = -h`, `B = H + h`.
    pub fn to_ab_form(&self) -> (HarmonicMap<T>, HarmonicMap<T>) {
        (self.companion.neg(), self.harmonic.add(&self.companion))
    }

    /// Largest admissible evaluation radius (1 means the closed disk).
    pub fn radius_limit(&self) -> T {
        self.harmonic
            .radius_limit()
            .min(self.companion.radius_limit())
    }

    pub fn scale(&self, s: T) -> Self {
        Self::with_kind(self.harmonic.scale(s), self.companion.scale(s), self.kind)
    }

    /// Sum of all coefficient moduli of `H` and `h`.
    pub fn coefficient_scale(&self) -> T {
        self.harmonic.coefficient_scale() + self.companion.coefficient_scale()
    }

    fn check(&self, z: Complex<T>) -> Result<()> {
        require_within(z, self.radius_limit())
    }

    pub(crate) fn eval_unchecked(&self, z: Complex<T>) -> Complex<T> {
        let defect = T::one() - z.norm_sqr();
        self.harmonic.eval_unchecked(z) + self.companion.eval_unchecked(z) * defect
    }

    pub(crate) fn wirtinger_unchecked(&self, z: Complex<T>) -> WirtingerPair<T> {
        let d = &self.derived;
        let defect = T::one() - z.norm_sqr();
        let h = self.companion.eval_unchecked(z);
        WirtingerPair {
            dz: d.w1_d.horner(z) - z.conj() * h + d.v1_d.horner(z) * defect,
            dzbar: d.w2_d.horner(z).conj() - z * h + d.v2_d.horner(z).conj() * defect,
        }
    }

    /// Trace `phi = H` and exterior normal derivative `psi = -2h + r dH/dr`
    /// sampled on the quadrature nodes.
    pub fn boundary_trace(&self, quad: &BoundaryQuadrature<T>) -> Result<BoundaryData<T>> {
        if self.radius_limit() < T::one() {
            return Err(Error::Contract(
                "boundary trace needs a map defined on the closed disk".into(),
            ));
        }
        let two = T::lit(2.0);
        let radial = self.harmonic.radial_map();
        let mut phi = Vec::with_capacity(quad.len());
        let mut psi = Vec::with_capacity(quad.len());
        for &zeta in quad.nodes() {
            phi.push(self.harmonic.eval_closed(zeta)?);
            psi.push(radial.eval_closed(zeta)? - self.companion.eval_closed(zeta)? * two);
        }
        BoundaryData::new(phi, psi)
    }
}

impl<T: Scalar> PlanarMap<T> for BiharmonicMap<T> {
    /// Accepts `|z| <= 1` so that boundary values can be read off directly.
    fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.check(z)?;
        Ok(self.eval_unchecked(z))
    }

    fn wirtinger(&self, z: Complex<T>) -> Result<WirtingerPair<T>> {
        crate::grid::require_open_disk(z)?;
        self.check(z)?;
        Ok(self.wirtinger_unchecked(z))
    }
}

/// `u = h + (1/2)(1 - |z|^2) z h'` for analytic `h`, evaluated in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticFamilyMap<F> {
    pub h: F,
}

impl<F> AnalyticFamilyMap<F> {
    pub fn new(h: F) -> Self {
        Self { h }
    }
}

impl<T: Scalar, F: Holomorphic<T>> PlanarMap<T> for AnalyticFamilyMap<F> {
    fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        crate::grid::require_open_disk(z)?;
        let half = T::lit(0.5);
        Ok(self.h.value(z) + z * self.h.derivative(z) * ((T::one() - z.norm_sqr()) * half))
    }

    /// `u_z = (1/2)(3 - 2r^2) h' + (1/2)(1 - r^2) z h''`, `u_zbar = -(1/2) z^2 h'`.
    fn wirtinger(&self, z: Complex<T>) -> Result<WirtingerPair<T>> {
        crate::grid::require_open_disk(z)?;
        let half = T::lit(0.5);
        let r2 = z.norm_sqr();
        let d1 = self.h.derivative(z);
        let d2 = self.h.second_derivative(z);
        Ok(WirtingerPair {
            dz: d1 * (half * (T::lit(3.0) - T::lit(2.0) * r2)) + z * d2 * (half * (T::one() - r2)),
            dzbar: -(z * z * d1) * half,
        })
    }
}

/// Jacobian of `h + (1/2)(1 - |z|^2) z h'` via the bracket form
/// `|h'|^2 / 4 (|2 - r^2 + (1 - r^2)(1 + z h''/h')|^2 - r^4)`.
pub fn jacobian_bracket<T: Scalar, F: Holomorphic<T>>(h: &F, z: Complex<T>) -> Result<T> {
    crate::grid::require_open_disk(z)?;
    let d1 = h.derivative(z);
    if d1.is_zero() {
        return Err(Error::Singular(format!("h'(z) = 0 at z = {}", show(z))));
    }
    let r2 = z.norm_sqr();
    let one = T::one();
    let shape = cr(one) + z * h.second_derivative(z) / d1;
    let bracket = (cr(T::lit(2.0) - r2) + shape * (one - r2)).norm_sqr() - r2 * r2;
    Ok(d1.norm_sqr() * bracket / T::lit(4.0))
}

/// Clamped boundary data: trace `phi` and exterior normal derivative `psi`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData<T> {
    pub phi: Vec<Complex<T>>,
    pub psi: Vec<Complex<T>>,
}

impl<T: Scalar> BoundaryData<T> {
    pub fn new(phi: Vec<Complex<T>>, psi: Vec<Complex<T>>) -> Result<Self> {
        if phi.len() != psi.len() {
            return Err(Error::config(format!(
                "trace has {} samples but normal derivative has {}",
                phi.len(),
                psi.len()
            )));
        }
        Ok(Self { phi, psi })
    }

    /// Samples closed-form data on the quadrature nodes.
    pub fn sample<P, Q>(quad: &BoundaryQuadrature<T>, phi: P, psi: Q) -> Self
    where
        P: Fn(Complex<T>) -> Complex<T>,
        Q: Fn(Complex<T>) -> Complex<T>,
    {
        Self {
            phi: quad.sample(phi),
            psi: quad.sample(psi),
        }
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }
}

/// Solves the clamped problem `Δ²u = 0`, `u = phi`, `∂u/∂n = psi` (exterior)
/// at `z` by the boundary representation
/// `u(z) = ∫ F(ζ, z) phi dσ - (1/2) ∫ H(ζ, z) psi dσ`.
pub fn solve_dirichlet<T: Scalar>(
    quad: &BoundaryQuadrature<T>,
    data: &BoundaryData<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    if data.len() != quad.len() {
        return Err(Error::config(format!(
            "boundary data has {} samples for {} quadrature nodes",
            data.len(),
            quad.len()
        )));
    }
    require_within(z, T::lit(SOLVER_MAX_RADIUS))?;
    let half = T::lit(0.5);
    let mut acc = Complex::zero();
    for ((&zeta, &phi), &psi) in quad.nodes().iter().zip(&data.phi).zip(&data.psi) {
        // the interior normal derivative is -psi
        acc += phi * biharmonic_poisson(zeta, z)? - psi * (half * harmonic_compensator(zeta, z)?);
    }
    Ok(acc * quad.weight())
}

/// Area contribution of a forcing `g = Δ²u`, by a midpoint rule in the radius
/// and the trapezoid rule in the angle.
///
/// In the normalized area measure `dA = dx dy / pi` one has
/// `Δ²Γ(·, z) = 16 δ_z`, so the contribution is `(1/16) ∫_D Γ(ζ, z) g(ζ) dA(ζ)`.
pub fn area_term<T: Scalar, G>(forcing: G, z: Complex<T>, n_r: usize, n_theta: usize) -> Result<Complex<T>>
where
    G: Fn(Complex<T>) -> Complex<T>,
{
    if n_r == 0 || n_theta < 3 {
        return Err(Error::config("area rule needs n_r >= 1 and n_theta >= 3"));
    }
    crate::grid::require_open_disk(z)?;
    let dr = T::one() / T::from_len(n_r);
    let dt = T::TAU() / T::from_len(n_theta);
    let mut acc = Complex::zero();
    for i in 0..n_r {
        let r = (T::from_len(i) + T::lit(0.5)) * dr;
        for j in 0..n_theta {
            let zeta = Complex::from_polar(r, dt * T::from_len(j));
            acc += forcing(zeta) * (green_biharmonic(zeta, z)? * r);
        }
    }
    Ok(acc * (dr * dt * T::FRAC_1_PI() / T::lit(16.0)))
}

/// [`solve_dirichlet`] plus the area term for a non-biharmonic `u`.
pub fn solve_dirichlet_forced<T: Scalar, G>(
    quad: &BoundaryQuadrature<T>,
    data: &BoundaryData<T>,
    z: Complex<T>,
    forcing: G,
    area_nodes: (usize, usize),
) -> Result<Complex<T>>
where
    G: Fn(Complex<T>) -> Complex<T>,
{
    Ok(solve_dirichlet(quad, data, z)? + area_term(forcing, z, area_nodes.0, area_nodes.1)?)
}
