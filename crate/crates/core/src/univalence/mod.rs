//! Univalence: the series criterion, a grid injectivity oracle, Jacobian
//! radii and the worked examples.

pub mod corpus;
pub mod criterion;
pub mod oracle;
pub mod radius;

use serde::Serialize;

pub use corpus::{example1_map, example2_inequality, example2_map, example3_map};
pub use criterion::{criterion_scan, criterion_value, dirichlet_ratio, CriterionInput, CriterionScan};
pub use oracle::{injectivity_oracle, Collision, OracleConfig, OracleReport};
pub use radius::{jacobian_radius, univalence_radius_formula, JacobianRadius, RadiusConfig};

use crate::biharmonic::BiharmonicMap;
use crate::error::Result;

/// Attached to every report: the two checks answer different questions.
pub const CRITERION_NOTE: &str = "the series criterion compares u(z e^{it}) with u(z e^{-it}), two points of a \
common circle, so it certifies injectivity on each circle only and cannot see radial folds; the injectivity \
oracle is the ground truth and a map is never labelled univalent from the criterion alone";

#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
    /// Criterion grid, kept coarser than the oracle grid since each
    /// sample costs `O(degree)` per `t`.
    pub criterion_n_r: usize,
    pub criterion_n_theta: usize,
    pub t_samples: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            r_max: 0.995,
            n_r: 128,
            n_theta: 256,
            criterion_n_r: 32,
            criterion_n_theta: 64,
            t_samples: criterion::DEFAULT_T_SAMPLES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointPair {
    pub z1: [f64; 2],
    pub z2: [f64; 2],
    pub w1: [f64; 2],
    pub w2: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Argmin {
    pub z: [f64; 2],
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnivalenceReport {
    pub criterion_holds: bool,
    #[serde(rename = "min_abs_S")]
    pub min_abs_s: f64,
    pub criterion_threshold: f64,
    pub argmin: Argmin,
    pub oracle_injective: bool,
    pub first_collision: Option<PointPair>,
    pub r_max_tested: f64,
    pub value_tol: f64,
    pub domain_sep: f64,
    /// Criterion holds but the oracle found a collision.
    pub discrepancy: bool,
    pub note: &'static str,
}

fn pair(z: num_complex::Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Runs the criterion scan and the injectivity oracle on `|z| <= r_max`.
pub fn check_univalence(u: &BiharmonicMap<f64>, cfg: &CheckConfig) -> Result<UnivalenceReport> {
    let oracle = injectivity_oracle(u, &OracleConfig::new(cfg.r_max, cfg.n_r, cfg.n_theta))?;
    let input = CriterionInput::from_map(u)?;
    let r_grid: Vec<f64> = (1..=cfg.criterion_n_r)
        .map(|k| cfg.r_max * k as f64 / cfg.criterion_n_r as f64)
        .collect();
    let theta_grid: Vec<f64> = (0..cfg.criterion_n_theta)
        .map(|k| std::f64::consts::TAU * k as f64 / cfg.criterion_n_theta as f64)
        .collect();
    let scan = criterion_scan(&input, &r_grid, &theta_grid, &criterion::t_grid(cfg.t_samples))?;
    Ok(UnivalenceReport {
        criterion_holds: scan.holds,
        min_abs_s: scan.min_abs,
        criterion_threshold: scan.threshold,
        argmin: Argmin {
            z: pair(scan.argmin_z),
            t: scan.argmin_t,
        },
        oracle_injective: oracle.injective,
        first_collision: oracle.first_collision.map(|c| PointPair {
            z1: pair(c.z1),
            z2: pair(c.z2),
            w1: pair(c.w1),
            w2: pair(c.w2),
        }),
        r_max_tested: cfg.r_max,
        value_tol: oracle.value_tol,
        domain_sep: oracle.domain_sep,
        discrepancy: scan.holds && !oracle.injective,
        note: CRITERION_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CheckConfig {
        CheckConfig {
            n_r: 64,
            n_theta: 128,
            criterion_n_r: 16,
            criterion_n_theta: 32,
            t_samples: 64,
            ..CheckConfig::default()
        }
    }

    #[test]
    fn folded_example_is_flagged() {
        let r = check_univalence(&example1_map(1.0), &small()).unwrap();
        assert!(r.criterion_holds);
        assert!(!r.oracle_injective);
        assert!(r.discrepancy);
        let c = r.first_collision.unwrap();
        let d = ((c.w1[0] - c.w2[0]).powi(2) + (c.w1[1] - c.w2[1]).powi(2)).sqrt();
        assert!(d < r.value_tol);
    }

    #[test]
    fn report_serializes_with_schema_names() {
        let r = check_univalence(&example1_map(0.5), &small()).unwrap();
        assert!(r.oracle_injective && r.criterion_holds && !r.discrepancy);
        let v = serde_json::to_value(&r).unwrap();
        for key in ["criterion_holds", "min_abs_S", "argmin", "oracle_injective", "first_collision", "r_max_tested"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v["first_collision"].is_null());
    }
}
