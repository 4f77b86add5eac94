//! Named property suites with machine-readable reports.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::biharmonic::{solve_dirichlet, AnalyticFamilyMap, BiharmonicMap, BoundaryData, PlanarMap};
use crate::error::{Error, Result};
use crate::grid::{AnalyticSeries, BoundaryQuadrature, PolarGrid};
use crate::harmonic::{HarmonicMap, OddUnimodularBoundary};
use crate::holomorphic::{Holomorphic, TestFunction};
use crate::kernels::{biharmonic_poisson, green_biharmonic, harmonic_compensator, DIAGONAL_CUTOFF};
use crate::schwarz::{bloch_seminorm, heinz_check, lambda_at_zero, lambda_bound, schwarz_check};
use crate::univalence::corpus::{example1_map, example2_map, example2_sides, example3_map, EXAMPLE3_RADIUS, EXAMPLE3_TERMS};
use crate::univalence::criterion::{criterion_scan, t_grid, CriterionInput};
use crate::univalence::oracle::{injectivity_oracle, OracleConfig};
use crate::univalence::radius::{jacobian_radius, min_jacobian_on_disk, univalence_radius_formula, RadiusConfig};

pub const DEFAULT_SEED: u64 = 1729;
pub const DEFAULT_NODES: usize = 4096;

/// Example 2 exponents in the shipped corpus.
pub const EXAMPLE2_CORPUS: [usize; 6] = [2, 3, 4, 5, 10, 11];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Kernels,
    Dirichlet,
    MaxPrinciple,
    Univalence,
    Radii,
    Schwarz,
    Derivatives,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 7] = [
        Suite::Kernels,
        Suite::Dirichlet,
        Suite::MaxPrinciple,
        Suite::Univalence,
        Suite::Radii,
        Suite::Schwarz,
        Suite::Derivatives,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kernels => "kernels",
            Suite::Dirichlet => "dirichlet",
            Suite::MaxPrinciple => "maxprinciple",
            Suite::Univalence => "univalence",
            Suite::Radii => "radii",
            Suite::Schwarz => "schwarz",
            Suite::Derivatives => "derivatives",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::PARTS
            .iter()
            .copied()
            .chain([Suite::All])
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::config(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `value <= bound + tol`
    #[serde(rename = "<=")]
    AtMost,
    /// `value > bound - tol`
    #[serde(rename = ">")]
    Above,
    /// `|value - bound| <= tol`
    #[serde(rename = "==")]
    Near,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub tol: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, value: f64, relation: Relation, bound: f64, tol: f64) -> Self {
        let pass = match relation {
            Relation::AtMost => value <= bound + tol,
            Relation::Above => value > bound - tol,
            Relation::Near => (value - bound).abs() <= tol,
        };
        Self {
            name: name.into(),
            value,
            bound,
            tol,
            relation,
            pass,
        }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, if ok { 1.0 } else { 0.0 }, Relation::Near, 1.0, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub passed: bool,
    pub seed: u64,
    pub nodes: usize,
    pub checks: Vec<CheckRecord>,
    pub runtime_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Boundary quadrature nodes for the kernel and solver suites.
    pub nodes: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            nodes: DEFAULT_NODES,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let parts: Vec<Suite> = if suite == Suite::All { Suite::PARTS.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for part in parts {
        // each suite gets its own stream so `all` reproduces the single runs
        let rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(part as u64));
        let mut part_checks = run_part(part, opts, rng)?;
        if suite == Suite::All {
            for c in &mut part_checks {
                c.name = format!("{part}/{}", c.name);
            }
        }
        checks.extend(part_checks);
    }
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        passed: checks.iter().all(|c| c.pass),
        seed: opts.seed,
        nodes: opts.nodes,
        checks,
        runtime_s: start.elapsed().as_secs_f64(),
    })
}

fn run_part(part: Suite, opts: &SuiteOptions, mut rng: ChaCha8Rng) -> Result<Vec<CheckRecord>> {
    match part {
        Suite::Kernels => kernels(opts, &mut rng),
        Suite::Dirichlet => dirichlet(opts, &mut rng),
        Suite::MaxPrinciple => max_principle(),
        Suite::Univalence => univalence(),
        Suite::Radii => radii(),
        Suite::Schwarz => schwarz(&mut rng),
        Suite::Derivatives => derivatives(&mut rng),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

/// Uniform point in the disk of radius `r`.
pub fn random_point<R: Rng>(rng: &mut R, r: f64) -> Complex64 {
    let rho = r * rng.gen::<f64>().sqrt();
    Complex64::from_polar(rho, rng.gen_range(0.0..std::f64::consts::TAU))
}

fn random_coeff<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// `H = w1 + conj(w2)` with random coefficients of degree `1..=degree` and `H(0) = 0`.
pub fn random_polynomial_harmonic<R: Rng>(rng: &mut R, degree: usize) -> HarmonicMap<f64> {
    let mut series = || {
        let mut c = vec![Complex64::new(0.0, 0.0)];
        c.extend((1..=degree).map(|k| random_coeff(rng, 1.0) / k as f64));
        AnalyticSeries::new(c)
    };
    let w1 = series();
    let w2 = series();
    HarmonicMap::new(w1, w2)
}

fn kernels(opts: &SuiteOptions, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRecord>> {
    let mut min_off = f64::INFINITY;
    let mut min_near = f64::INFINITY;
    for _ in 0..100_000 {
        let z = random_point(rng, 0.999);
        let zeta = random_point(rng, 0.999);
        let g = green_biharmonic(z, zeta)?;
        if (z - zeta).norm() < DIAGONAL_CUTOFF {
            min_near = min_near.min(g);
        } else {
            min_off = min_off.min(g);
        }
    }
    let mut checks = vec![CheckRecord::new("gamma_positive_1e5_pairs", min_off, Relation::Above, 0.0, 0.0)];
    if min_near.is_finite() {
        checks.push(CheckRecord::new("gamma_near_diagonal", min_near, Relation::Above, 0.0, 1e-12));
    }
    let quad = BoundaryQuadrature::new(opts.nodes)?;
    let (mut err_f, mut err_h) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let z = random_point(rng, 0.95);
        let f = quad.integrate_real(|zeta| biharmonic_poisson(zeta, z).unwrap_or(f64::NAN));
        let h = quad.integrate_real(|zeta| harmonic_compensator(zeta, z).unwrap_or(f64::NAN));
        err_f = err_f.max((f - 1.0).abs());
        err_h = err_h.max((h - (1.0 - z.norm_sqr())).abs());
    }
    checks.push(CheckRecord::new("mean_F_is_one", err_f, Relation::AtMost, 0.0, 1e-10));
    checks.push(CheckRecord::new("mean_H_is_1-|z|^2", err_h, Relation::AtMost, 0.0, 1e-10));
    Ok(checks)
}

fn dirichlet(opts: &SuiteOptions, rng: &mut ChaCha8Rng) -> Result<Vec<CheckRecord>> {
    let quad = BoundaryQuadrature::new(opts.nodes)?;
    let zero = Complex64::new(0.0, 0.0);
    let bump = BoundaryData::sample(&quad, |_| zero, |_| Complex64::new(-2.0, 0.0));
    let circle = BoundaryData::sample(&quad, |zeta| zeta, |_| zero);
    let ex1 = example1_map(0.5);
    let (mut e_bump, mut e_ex1) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let z = random_point(rng, 0.9);
        e_bump = e_bump.max((solve_dirichlet(&quad, &bump, z)? - (1.0 - z.norm_sqr())).norm());
        e_ex1 = e_ex1.max((solve_dirichlet(&quad, &circle, z)? - ex1.eval(z)?).norm());
    }
    let mut e_trip = 0.0f64;
    for _ in 0..10 {
        let degree = rng.gen_range(1..=6);
        let u = BiharmonicMap::family_f(random_polynomial_harmonic(rng, degree));
        let data = u.boundary_trace(&quad)?;
        for _ in 0..10 {
            let z = random_point(rng, 0.9);
            e_trip = e_trip.max((solve_dirichlet(&quad, &data, z)? - u.eval(z)?).norm());
        }
    }
    Ok(vec![
        CheckRecord::new("bump_reproduces_1-|z|^2", e_bump, Relation::AtMost, 0.0, 1e-8),
        CheckRecord::new("circle_data_reproduces_example1", e_ex1, Relation::AtMost, 0.0, 1e-8),
        CheckRecord::new("trace_solve_round_trip", e_trip, Relation::AtMost, 0.0, 1e-7),
    ])
}

fn max_principle() -> Result<Vec<CheckRecord>> {
    let quad = BoundaryQuadrature::new(256)?;
    let grid = PolarGrid::uniform(100, 0.999, 256)?;
    let mut checks = Vec::new();
    for k in 1..=5i32 {
        let phi = quad.sample(|zeta| zeta.powi(k));
        let u = BiharmonicMap::family_f(HarmonicMap::from_boundary_samples(&quad, &phi)?);
        let mut m = u.eval(Complex64::new(0.0, 0.0))?.norm();
        for z in grid.points() {
            m = m.max(u.eval(z)?.norm());
        }
        checks.push(CheckRecord::new(format!("max_abs_u_boundary_e^{{i{k}t}}"), m, Relation::AtMost, 1.0, 1e-9));
    }
    Ok(checks)
}

/// Oracle and criterion corpus: Example 1 at `alpha = 1/2` and Example 2.
pub fn univalence_corpus() -> Vec<(String, BiharmonicMap<f64>)> {
    let mut maps = vec![("example1_alpha0.5".to_string(), example1_map(0.5))];
    for n in EXAMPLE2_CORPUS {
        maps.push((format!("example2_n{n}"), example2_map(n).expect("n >= 2")));
    }
    maps
}

fn criterion_grids() -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let r: Vec<f64> = (1..=64).map(|k| k as f64 / 64.0 * 0.995).collect();
    let theta: Vec<f64> = (0..128).map(|k| std::f64::consts::TAU * k as f64 / 128.0).collect();
    (r, theta, t_grid(256))
}

fn univalence() -> Result<Vec<CheckRecord>> {
    let cfg = OracleConfig::new(0.995, 128, 256);
    let (r, theta, t) = criterion_grids();
    let mut checks = Vec::new();
    for (name, u) in univalence_corpus() {
        let oracle = injectivity_oracle(&u, &cfg)?;
        checks.push(CheckRecord::flag(format!("oracle_injective/{name}"), oracle.injective));
        let scan = criterion_scan(&CriterionInput::from_map(&u)?, &r, &theta, &t)?;
        checks.push(CheckRecord::new(format!("criterion_min_abs_S/{name}"), scan.min_abs, Relation::Above, scan.threshold, 0.0));
    }
    let folded = injectivity_oracle(&example1_map(1.0), &cfg)?;
    checks.push(CheckRecord::flag("oracle_collision/example1_alpha1.0", !folded.injective));
    if let Some(c) = folded.first_collision {
        let (a, b) = (c.z1.norm().min(c.z2.norm()), c.z1.norm().max(c.z2.norm()));
        // the radial profile 2r - r^3 turns at sqrt(2/3)
        let turn = (2.0f64 / 3.0).sqrt();
        checks.push(CheckRecord::new("fold_inner_radius", a, Relation::AtMost, turn, 0.0));
        checks.push(CheckRecord::new("fold_outer_radius", b, Relation::Above, turn, 0.0));
        checks.push(CheckRecord::new("fold_inner_radius_vs_0.63", a, Relation::Above, 0.6, 0.0));
    }
    Ok(checks)
}

fn radii() -> Result<Vec<CheckRecord>> {
    let mut checks = vec![
        CheckRecord::new("formula_alpha0", univalence_radius_formula(0.0)?, Relation::Near, 2f64.sqrt() - 1.0, 1e-12),
        CheckRecord::new("formula_alpha0.5", univalence_radius_formula(0.5)?, Relation::Near, 1.0, 1e-12),
        CheckRecord::new("formula_alpha0.25", univalence_radius_formula(0.25)?, Relation::Near, 0.5615528, 1e-7),
    ];
    let sharp = 7f64.sqrt() - 2.0;
    let cfg = RadiusConfig::default();
    let koebe = AnalyticFamilyMap::new(TestFunction::Koebe);
    let rk = jacobian_radius(&koebe, &cfg)?;
    checks.push(CheckRecord::new("koebe_radius", rk.radius, Relation::Above, sharp - 1e-3, 0.0));
    checks.push(CheckRecord::new("koebe_radius_sharp", rk.radius, Relation::AtMost, sharp + 1e-3, 0.0));
    let jmin = min_jacobian_on_disk(&koebe, sharp - 1e-3, 200, 1024)?;
    checks.push(CheckRecord::new("koebe_min_J_on_disk_0.6457", jmin, Relation::Above, 0.0, 0.0));
    for h in [
        TestFunction::HalfPlane,
        TestFunction::NegLog,
        TestFunction::convex_of_order(-0.5)?,
        TestFunction::convex_of_order(-0.25)?,
    ] {
        let r = jacobian_radius(&AnalyticFamilyMap::new(h), &cfg)?;
        checks.push(CheckRecord::new(
            format!("sense_preserving_radius/{}", h.name()),
            r.certified,
            Relation::Above,
            0.999,
            1e-12,
        ));
    }
    let mut worst = f64::INFINITY;
    for n in 2..=200 {
        for k in 1..1000 {
            let (lhs, rhs) = example2_sides(n, k as f64 / 1000.0);
            worst = worst.min(lhs - rhs);
        }
    }
    checks.push(CheckRecord::new("example2_inequality_min_gap", worst, Relation::Above, 0.0, 0.0));
    Ok(checks)
}

fn schwarz(rng: &mut ChaCha8Rng) -> Result<Vec<CheckRecord>> {
    let quad = BoundaryQuadrature::new(256)?;
    let grid = PolarGrid::uniform(64, 0.999, 128)?;
    let (mut bih, mut heinz, mut lambda) = (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut hypotheses = true;
    for _ in 0..50 {
        let harmonics = rng.gen_range(1..=4);
        let f = OddUnimodularBoundary::<f64>::random(rng, harmonics, 0.5);
        let h = f.extension(&quad)?;
        let u = BiharmonicMap::family_f(h.clone());
        let a = schwarz_check(&u, &grid)?;
        let b = heinz_check(&h, &grid)?;
        hypotheses &= !a.hypothesis_failed && !b.hypothesis_failed;
        bih = bih.max(a.max_violation);
        heinz = heinz.max(b.max_violation);
        lambda = lambda.max(lambda_at_zero(&u)?);
    }
    let mut checks = vec![
        CheckRecord::flag("self_map_hypotheses_hold", hypotheses),
        CheckRecord::new("biharmonic_schwarz_excess", bih, Relation::AtMost, 0.0, 1e-9),
        CheckRecord::new("heinz_excess", heinz, Relation::AtMost, 0.0, 1e-9),
        CheckRecord::new("lambda_at_zero", lambda, Relation::AtMost, lambda_bound(), 1e-12),
    ];
    let fine = PolarGrid::uniform(64, 0.999, 128)?;
    let coarse = PolarGrid::uniform(64, EXAMPLE3_RADIUS, 128)?;
    let mut corpus = univalence_corpus();
    corpus.push(("example1_alpha1.0".into(), example1_map(1.0)));
    for (name, u) in corpus {
        let b = bloch_seminorm(&u, &fine)?;
        checks.push(CheckRecord::new(format!("bloch/{name}"), b, Relation::AtMost, 10.0 * u.coefficient_scale(), 0.0));
    }
    let ex3 = example3_map::<f64>(EXAMPLE3_TERMS);
    let b = bloch_seminorm(&ex3, &coarse)?;
    checks.push(CheckRecord::new("bloch/example3_finite", b, Relation::AtMost, f64::MAX, 0.0));
    Ok(checks)
}

fn central_difference<M: PlanarMap<f64>>(u: &M, z: Complex64, step: f64) -> Result<(Complex64, Complex64)> {
    let i = Complex64::new(0.0, 1.0);
    let ux = (u.eval(z + step)? - u.eval(z - step)?) / (2.0 * step);
    let uy = (u.eval(z + i * step)? - u.eval(z - i * step)?) / (2.0 * step);
    Ok(((ux - i * uy) * 0.5, (ux + i * uy) * 0.5))
}

fn derivatives(rng: &mut ChaCha8Rng) -> Result<Vec<CheckRecord>> {
    let mut fd = 0.0f64;
    for _ in 0..1000 {
        let degree = rng.gen_range(1..=5);
        let h = random_polynomial_harmonic(rng, degree);
        let u = if rng.gen_bool(0.5) {
            BiharmonicMap::family_f(h)
        } else {
            BiharmonicMap::new(h, random_polynomial_harmonic(rng, degree))
        };
        let z = random_point(rng, 0.9);
        let w = u.wirtinger(z)?;
        let (dz, dzbar) = central_difference(&u, z, 1e-5)?;
        fd = fd.max((w.dz - dz).norm()).max((w.dzbar - dzbar).norm());
    }
    let mut analytic = 0.0f64;
    for h in [TestFunction::Identity, TestFunction::HalfPlane, TestFunction::Koebe, TestFunction::NegLog] {
        let u = AnalyticFamilyMap::new(h);
        let series = BiharmonicMap::family_f(HarmonicMap::analytic(h.series(64)));
        for _ in 0..100 {
            let z = random_point(rng, 0.9);
            let want = -(z * z * h.derivative(z)) * 0.5;
            analytic = analytic.max((u.wirtinger(z)?.dzbar - want).norm());
            if z.norm() < 0.5 {
                let ws = series.wirtinger(z)?.dzbar;
                analytic = analytic.max((ws - want).norm());
            }
        }
    }
    Ok(vec![
        CheckRecord::new("wirtinger_vs_central_difference", fd, Relation::AtMost, 0.0, 1e-7),
        CheckRecord::new("dzbar_is_-z^2h'/2", analytic, Relation::AtMost, 0.0, 1e-12),
    ])
}
