//! Analytic functions given by value and first two derivatives.
//!
//! Truncated series lose accuracy close to the unit circle, so the convex and
//! univalent test functions used for radius certification are also available
//! in closed form.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::AnalyticSeries;
use crate::scalar::{cr, Scalar};

pub trait Holomorphic<T: Scalar> {
    fn value(&self, z: Complex<T>) -> Complex<T>;
    fn derivative(&self, z: Complex<T>) -> Complex<T>;
    fn second_derivative(&self, z: Complex<T>) -> Complex<T>;
}

/// A series together with its first two derivative series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesJet<T> {
    pub f: AnalyticSeries<T>,
    pub df: AnalyticSeries<T>,
    pub d2f: AnalyticSeries<T>,
}

impl<T: Scalar> SeriesJet<T> {
    pub fn new(f: AnalyticSeries<T>) -> Self {
        let df = f.derivative();
        let d2f = df.derivative();
        Self { f, df, d2f }
    }
}

impl<T: Scalar> Holomorphic<T> for SeriesJet<T> {
    fn value(&self, z: Complex<T>) -> Complex<T> {
        self.f.horner(z)
    }
    fn derivative(&self, z: Complex<T>) -> Complex<T> {
        self.df.horner(z)
    }
    fn second_derivative(&self, z: Complex<T>) -> Complex<T> {
        self.d2f.horner(z)
    }
}

/// Normalized (`h(0) = 0`, `h'(0) = 1`) test functions with known geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction<T> {
    /// `z`
    Identity,
    /// `z / (1 - z)`, convex (half-plane image).
    HalfPlane,
    /// `z / (1 - z)^2`, univalent but not convex.
    Koebe,
    /// `-log(1 - z)`, convex of order 1/2.
    NegLog,
    /// `(1 - (1 - z)^(2a - 1)) / (2a - 1)`, convex of order `a`,
    /// i.e. `1 + z h''/h' = (1 + (1 - 2a) z) / (1 - z)`.
    ConvexOfOrder(T),
}

impl<T: Scalar> TestFunction<T> {
    pub fn convex_of_order(alpha: T) -> Result<Self> {
        if !(alpha >= T::lit(-0.5) && alpha < T::one()) {
            return Err(Error::domain(format!(
                "order must lie in [-1/2, 1), got {}",
                alpha.as_f64()
            )));
        }
        Ok(TestFunction::ConvexOfOrder(alpha))
    }

    pub fn name(&self) -> String {
        match self {
            TestFunction::Identity => "identity".into(),
            TestFunction::HalfPlane => "half-plane z/(1-z)".into(),
            TestFunction::Koebe => "Koebe z/(1-z)^2".into(),
            TestFunction::NegLog => "-log(1-z)".into(),
            TestFunction::ConvexOfOrder(a) => format!("convex of order {}", a.as_f64()),
        }
    }

    /// Collapses the parametrized family onto the named special cases.
    fn canonical(&self) -> Self {
        match *self {
            TestFunction::ConvexOfOrder(a) if a == T::lit(0.5) => TestFunction::NegLog,
            TestFunction::ConvexOfOrder(a) if a == T::zero() => TestFunction::HalfPlane,
            other => other,
        }
    }

    /// Maclaurin coefficients up to degree `n`.
    pub fn series(&self, n: usize) -> AnalyticSeries<T> {
        let coeff = |k: usize| -> T {
            match self.canonical() {
                TestFunction::Identity => {
                    if k == 1 {
                        T::one()
                    } else {
                        T::zero()
                    }
                }
                TestFunction::HalfPlane => T::one(),
                TestFunction::Koebe => T::from_len(k),
                TestFunction::NegLog => T::one() / T::from_len(k),
                TestFunction::ConvexOfOrder(_) => unreachable!(),
            }
        };
        if let TestFunction::ConvexOfOrder(a) = self.canonical() {
            // (1 - z)^beta = sum c_k z^k, c_k = c_{k-1} (k - 1 - beta) / k
            let beta = T::lit(2.0) * a - T::one();
            let mut out = vec![cr(T::zero()); n + 1];
            let mut ck = T::one();
            for (k, slot) in out.iter_mut().enumerate().skip(1) {
                let kf = T::from_len(k);
                ck = ck * (kf - T::one() - beta) / kf;
                *slot = cr(-ck / beta);
            }
            return AnalyticSeries::new(out);
        }
        let coeffs = (0..=n)
            .map(|k| if k == 0 { cr(T::zero()) } else { cr(coeff(k)) })
            .collect();
        AnalyticSeries::new(coeffs)
    }
}

impl<T: Scalar> Holomorphic<T> for TestFunction<T> {
    fn value(&self, z: Complex<T>) -> Complex<T> {
        let one = cr(T::one());
        let w = one - z;
        match self.canonical() {
            TestFunction::Identity => z,
            TestFunction::HalfPlane => z / w,
            TestFunction::Koebe => z / (w * w),
            TestFunction::NegLog => -w.ln(),
            TestFunction::ConvexOfOrder(a) => {
                let beta = T::lit(2.0) * a - T::one();
                (one - w.powf(beta)) / beta
            }
        }
    }

    fn derivative(&self, z: Complex<T>) -> Complex<T> {
        let one = cr(T::one());
        let w = one - z;
        match self.canonical() {
            TestFunction::Identity => one,
            TestFunction::HalfPlane => one / (w * w),
            TestFunction::Koebe => (one + z) / (w * w * w),
            TestFunction::NegLog => one / w,
            TestFunction::ConvexOfOrder(a) => w.powf(T::lit(2.0) * a - T::lit(2.0)),
        }
    }

    fn second_derivative(&self, z: Complex<T>) -> Complex<T> {
        let one = cr(T::one());
        let two = T::lit(2.0);
        let w = one - z;
        match self.canonical() {
            TestFunction::Identity => cr(T::zero()),
            TestFunction::HalfPlane => cr(two) / (w * w * w),
            TestFunction::Koebe => (cr(T::lit(4.0)) + z * two) / (w * w * w * w),
            TestFunction::NegLog => one / (w * w),
            TestFunction::ConvexOfOrder(a) => w.powf(two * a - T::lit(3.0)) * (two - two * a),
        }
    }
}
