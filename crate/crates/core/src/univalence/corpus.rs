//! Worked examples: `u_alpha = z + alpha (1 - |z|^2) z`, the family
//! `z + conj(z)^n / n`, and the logarithmic map.

use num_complex::Complex;

use crate::biharmonic::BiharmonicMap;
use crate::error::{Error, Result};
use crate::grid::AnalyticSeries;
use crate::harmonic::HarmonicMap;
use crate::scalar::{cr, Scalar};

/// Radius limit of the truncated logarithmic example.
pub const EXAMPLE3_RADIUS: f64 = 0.99;

/// Truncation keeping the series tails of the logarithmic example (and of
/// its first two derivatives) below `1e-12` at `|z| = 0.99`.
pub const EXAMPLE3_TERMS: usize = 4096;

fn identity<T: Scalar>() -> HarmonicMap<T> {
    HarmonicMap::analytic(AnalyticSeries::monomial(1, cr(T::one())))
}

/// `u_alpha(z) = z + alpha (1 - |z|^2) z`; in family ℱ for `alpha = 1/2`.
pub fn example1_map<T: Scalar>(alpha: T) -> BiharmonicMap<T> {
    if alpha == T::lit(0.5) {
        BiharmonicMap::family_f(identity())
    } else {
        BiharmonicMap::new(identity(), identity().scale(alpha))
    }
}

/// The family ℱ extension of `H = z + conj(z)^n / n`.
pub fn example2_map<T: Scalar>(n: usize) -> Result<BiharmonicMap<T>> {
    if n < 2 {
        return Err(Error::domain(format!("n must be >= 2, got {n}")));
    }
    let w2 = AnalyticSeries::monomial(n, cr(T::one() / T::from_len(n)));
    Ok(BiharmonicMap::family_f(HarmonicMap::new(
        AnalyticSeries::monomial(1, cr(T::one())),
        w2,
    )))
}

/// Family ℱ extension of `H = w1 + conj(w2)` with `w1 = -log(1 - z)`,
/// `w2 = -z - log(1 - z)`, truncated at degree `terms` and restricted to
/// `|z| <= 0.99`.
pub fn example3_map<T: Scalar>(terms: usize) -> BiharmonicMap<T> {
    let w1 = AnalyticSeries::neg_log_one_minus(terms);
    let w2 = w1.without_constant();
    let mut c = w2.coeffs().to_vec();
    c[1] = Complex::new(T::zero(), T::zero());
    let h = HarmonicMap::new(w1, AnalyticSeries::new(c)).with_radius_limit(T::lit(EXAMPLE3_RADIUS));
    BiharmonicMap::family_f(h)
}

/// Closed form of the logarithmic example,
/// `-conj(z) - 2 log|1 - z| + (1/2)(1 - |z|^2)(z / (1 - z) + conj(z)^2 / (1 - conj(z)))`.
pub fn example3_closed_form<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let one = cr(T::one());
    let half = T::lit(0.5);
    let zb = z.conj();
    let log_term = cr(T::lit(-2.0) * (one - z).norm().ln());
    -zb + log_term + (z / (one - z) + zb * zb / (one - zb)) * (half * (T::one() - z.norm_sqr()))
}

/// `F1 = -(1/2)(z / (1 - z) + conj(z)^2 / (1 - conj(z)))` for the logarithmic example.
pub fn example3_f1_closed_form<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let one = cr(T::one());
    let zb = z.conj();
    -(z / (one - z) + zb * zb / (one - zb)) * T::lit(0.5)
}

/// `3 - r^2 > (n + 2 - n r^2) r^(n-1)`, the sufficient condition for the
/// `z + conj(z)^n / n` family.
pub fn example2_inequality<T: Scalar>(n: usize, r: T) -> Result<bool> {
    if n < 2 {
        return Err(Error::domain(format!("n must be >= 2, got {n}")));
    }
    if !(r > T::zero() && r < T::one()) {
        return Err(Error::domain(format!("r must lie in (0, 1), got {}", r.as_f64())));
    }
    let (lhs, rhs) = example2_sides(n, r);
    Ok(lhs > rhs)
}

/// Both sides of the inequality checked by [`example2_inequality`].
pub fn example2_sides<T: Scalar>(n: usize, r: T) -> (T, T) {
    let nf = T::from_len(n);
    let r2 = r * r;
    let lhs = T::lit(3.0) - r2;
    let rhs = (nf + T::lit(2.0) - nf * r2) * r.powi(n as i32 - 1);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biharmonic::PlanarMap;

    type C = Complex<f64>;

    #[test]
    fn example1_values() {
        let u = example1_map(0.5);
        assert!(u.is_family_f());
        assert!((u.eval(C::new(0.3, 0.0)).unwrap() - C::new(0.4365, 0.0)).norm() < 1e-15);
        let u = example1_map(1.0);
        assert!(!u.is_family_f());
        let z = C::new(0.2, 0.5);
        assert!((u.eval(z).unwrap() - z * (2.0 - z.norm_sqr())).norm() < 1e-15);
    }

    #[test]
    fn example2_rejects_small_n() {
        assert!(example2_map::<f64>(1).is_err());
        assert!(example2_inequality(1, 0.5).is_err());
        assert!(example2_inequality(3, 1.0).is_err());
    }

    #[test]
    fn example2_inequality_examples() {
        assert!(example2_inequality(2, 0.5).unwrap());
        let (l, r) = example2_sides(2, 0.5);
        assert_eq!((l, r), (2.75, 1.75));
        for k in 1..1000 {
            let r = k as f64 / 1000.0;
            let (lhs, rhs) = example2_sides(2, r);
            let factored = (1.0 - r).powi(2) * (3.0 + 2.0 * r);
            assert!((lhs - rhs - factored).abs() < 1e-14);
            let (lhs, rhs) = example2_sides(3, r);
            assert!((lhs - rhs - 3.0 * (1.0 - r * r).powi(2)).abs() < 1e-14);
        }
        // induction step at n = 3, r = 0.9
        let r = 0.9f64;
        let n = 3.0;
        let a = (n + 2.0 - n * r * r) * r.powi(2);
        let b = (n + 3.0 - (n + 1.0) * r * r) * r.powi(3);
        assert!(a > b);
        assert!((a - b - r.powi(2) * (1.0 - r).powi(2) * (n + 2.0 + (n + 1.0) * r)).abs() < 1e-14);
    }

    #[test]
    fn example3_values() {
        let u = example3_map::<f64>(EXAMPLE3_TERMS);
        assert!(u.eval(C::new(0.0, 0.0)).unwrap().norm() < 1e-16);
        let v = u.eval(C::new(0.5, 0.0)).unwrap();
        assert!((v - C::new(1.4487944, 0.0)).norm() < 1e-7);
        assert!((v - example3_closed_form(C::new(0.5, 0.0))).norm() < 1e-14);
        let (a, _) = u.to_ab_form();
        let f1 = a.eval(C::new(0.5, 0.0)).unwrap();
        assert!((f1 - C::new(-0.75, 0.0)).norm() < 1e-14);
        assert!(u.eval(C::new(0.995, 0.0)).is_err());
    }

    #[test]
    fn example3_series_tracks_closed_form() {
        let u = example3_map::<f64>(EXAMPLE3_TERMS);
        let (a, _) = u.to_ab_form();
        for k in 0..24 {
            for &r in &[0.25, 0.5, 0.75, 0.9, 0.99] {
                let z = C::from_polar(r, k as f64 * 0.2618);
                if (z - 1.0).norm() < 0.02 {
                    continue;
                }
                let e = example3_closed_form(z);
                assert!((u.eval(z).unwrap() - e).norm() < 1e-10 * (1.0 + e.norm()), "{z}");
                assert!((a.eval(z).unwrap() - example3_f1_closed_form(z)).norm() < 1e-10 * (1.0 + e.norm()));
            }
        }
        // the default truncation is enough for |z| <= 0.75
        let short = example3_map::<f64>(crate::grid::DEFAULT_TERMS);
        let z = C::from_polar(0.75, 0.3);
        assert!((short.eval(z).unwrap() - example3_closed_form(z)).norm() < 1e-7);
    }
}
