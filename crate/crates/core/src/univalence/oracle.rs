//! Brute-force injectivity check on a polar grid.
//!
//! Images of the grid nodes are bucketed in a spatial hash. Every pair of
//! nodes whose images lie within the sum of their local image spacings while
//! the nodes themselves are more than `domain_sep` apart becomes a candidate;
//! candidates are then refined by minimum-norm Gauss-Newton steps on
//! `u(z1) - u(z2) = 0` inside a small trust region around the starting nodes.
//! A collision is reported when the refined residual drops below `value_tol`
//! with the two points still separated.

use std::collections::HashMap;

use num_complex::Complex;

use crate::biharmonic::PlanarMap;
use crate::error::{Error, Result};
use crate::grid::PolarGrid;
use crate::scalar::Scalar;

/// Value tolerance relative to the image diameter.
pub const VALUE_TOL_FACTOR: f64 = 1e-6;

/// Domain separation in units of the grid spacing.
pub const DOMAIN_SEP_FACTOR: f64 = 2.0;

const MAX_ITERATIONS: usize = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig<T> {
    pub r_max: T,
    pub n_r: usize,
    pub n_theta: usize,
    /// Defaults to `1e-6 * diameter(image)`.
    pub value_tol: Option<T>,
    /// Defaults to twice the grid spacing.
    pub domain_sep: Option<T>,
}

impl<T: Scalar> OracleConfig<T> {
    pub fn new(r_max: T, n_r: usize, n_theta: usize) -> Self {
        Self {
            r_max,
            n_r,
            n_theta,
            value_tol: None,
            domain_sep: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Collision<T> {
    pub z1: Complex<T>,
    pub z2: Complex<T>,
    pub w1: Complex<T>,
    pub w2: Complex<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport<T> {
    pub injective: bool,
    pub first_collision: Option<Collision<T>>,
    pub r_max: T,
    pub points: usize,
    pub candidates: usize,
    pub value_tol: T,
    pub domain_sep: T,
}

/// Grid-based injectivity check of `u` on `|z| <= r_max`.
pub fn injectivity_oracle<T: Scalar, M: PlanarMap<T>>(u: &M, cfg: &OracleConfig<T>) -> Result<OracleReport<T>> {
    if !(cfg.r_max > T::zero() && cfg.r_max < T::one()) {
        return Err(Error::config("oracle radius must lie in (0, 1)"));
    }
    if cfg.n_r < 16 || cfg.n_theta < 16 {
        return Err(Error::config("oracle grids need at least 16 radii and 16 angles"));
    }
    let grid = PolarGrid::uniform(cfg.n_r, cfg.r_max, cfg.n_theta)?;
    let (points, spacing) = nodes_with_spacing(u, &grid)?;
    let domain_sep = cfg
        .domain_sep
        .unwrap_or_else(|| T::lit(DOMAIN_SEP_FACTOR) * grid.spacing());
    scan_points(u, &points, &spacing, cfg.r_max, cfg.value_tol, domain_sep, grid.spacing())
}

/// A grid node with its image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node<T> {
    pub z: Complex<T>,
    pub w: Complex<T>,
}

/// Nodes (origin first) and, per node, the largest image distance to a grid neighbour.
fn nodes_with_spacing<T: Scalar, M: PlanarMap<T>>(u: &M, grid: &PolarGrid<T>) -> Result<(Vec<Node<T>>, Vec<T>)> {
    let n_r = grid.radii().len();
    let n_t = grid.angles().len();
    let origin = Complex::new(T::zero(), T::zero());
    let mut nodes = Vec::with_capacity(1 + grid.len());
    nodes.push(Node { z: origin, w: u.eval(origin)? });
    for z in grid.points() {
        nodes.push(Node { z, w: u.eval(z)? });
    }
    let idx = |i: usize, j: usize| 1 + i * n_t + (j % n_t);
    let mut spacing = vec![T::zero(); nodes.len()];
    for i in 0..n_r {
        for j in 0..n_t {
            let k = idx(i, j);
            let mut s = T::zero();
            let mut touch = |other: usize| {
                let d = (nodes[k].w - nodes[other].w).norm();
                s = s.max(d);
                spacing[other] = spacing[other].max(d);
            };
            touch(idx(i, j + 1));
            touch(if i == 0 { 0 } else { idx(i - 1, j) });
            spacing[k] = spacing[k].max(s);
        }
    }
    Ok((nodes, spacing))
}

/// Candidate search and refinement over arbitrary node lists. The verdict and
/// the reported collision depend only on the set of nodes, not their order.
pub fn scan_points<T: Scalar, M: PlanarMap<T>>(
    u: &M,
    nodes: &[Node<T>],
    spacing: &[T],
    r_max: T,
    value_tol: Option<T>,
    domain_sep: T,
    step: T,
) -> Result<OracleReport<T>> {
    if nodes.len() != spacing.len() || nodes.is_empty() {
        return Err(Error::config("node and spacing lists must match and be nonempty"));
    }
    let (mut lo, mut hi) = (nodes[0].w, nodes[0].w);
    for n in nodes {
        lo = Complex::new(lo.re.min(n.w.re), lo.im.min(n.w.im));
        hi = Complex::new(hi.re.max(n.w.re), hi.im.max(n.w.im));
    }
    let diameter = (hi - lo).norm();
    let value_tol = value_tol.unwrap_or_else(|| T::lit(VALUE_TOL_FACTOR) * diameter);

    let cell = spacing
        .iter()
        .fold(T::zero(), |m, &s| m.max(s))
        .max(diameter * T::lit(1e-9))
        .max(T::min_positive_value());
    let key = |w: Complex<T>| -> (i64, i64) {
        (
            ((w.re - lo.re) / cell).floor().to_i64().unwrap_or(0),
            ((w.im - lo.im) / cell).floor().to_i64().unwrap_or(0),
        )
    };
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (k, n) in nodes.iter().enumerate() {
        buckets.entry(key(n.w)).or_default().push(k);
    }

    let mut candidates = Vec::new();
    for (k, n) in nodes.iter().enumerate() {
        let (cx, cy) = key(n.w);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = buckets.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                for &l in bucket {
                    if l <= k {
                        continue;
                    }
                    let m = &nodes[l];
                    let gap = (n.w - m.w).norm();
                    if gap < spacing[k] + spacing[l] && (n.z - m.z).norm() > domain_sep {
                        candidates.push((gap, canonical_pair(n, m)));
                    }
                }
            }
        }
    }
    // Closest images first; ties broken by coordinates, never by input order.
    candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then_with(|| order_key(&a.1).partial_cmp(&order_key(&b.1)).unwrap()));

    let mut first = None;
    for (_, (a, b)) in &candidates {
        if let Some(hit) = refine(u, a.z, b.z, r_max, value_tol, domain_sep, step)? {
            first = Some(hit);
            break;
        }
    }
    Ok(OracleReport {
        injective: first.is_none(),
        first_collision: first,
        r_max,
        points: nodes.len(),
        candidates: candidates.len(),
        value_tol,
        domain_sep,
    })
}

fn canonical_pair<T: Scalar>(a: &Node<T>, b: &Node<T>) -> (Node<T>, Node<T>) {
    let ka = (a.z.re, a.z.im);
    let kb = (b.z.re, b.z.im);
    if ka <= kb {
        (*a, *b)
    } else {
        (*b, *a)
    }
}

fn order_key<T: Scalar>(p: &(Node<T>, Node<T>)) -> (T, T, T, T) {
    (p.0.z.re, p.0.z.im, p.1.z.re, p.1.z.im)
}

fn clamp_to_disk<T: Scalar>(z: Complex<T>, r_max: T) -> Complex<T> {
    let r = z.norm();
    if r > r_max {
        z * (r_max / r)
    } else {
        z
    }
}

/// Minimum-norm Gauss-Newton on `R(z1, z2) = u(z1) - u(z2)` in `R^4`.
fn refine<T: Scalar, M: PlanarMap<T>>(
    u: &M,
    start1: Complex<T>,
    start2: Complex<T>,
    r_max: T,
    value_tol: T,
    domain_sep: T,
    step: T,
) -> Result<Option<Collision<T>>> {
    let trust = T::lit(3.0) * step;
    let (mut z1, mut z2) = (start1, start2);
    for _ in 0..MAX_ITERATIONS {
        let (w1, w2) = (u.eval(z1)?, u.eval(z2)?);
        let res = w1 - w2;
        if res.norm() < value_tol {
            if (z1 - z2).norm() > domain_sep {
                return Ok(Some(Collision { z1, z2, w1, w2 }));
            }
            return Ok(None);
        }
        let (ax, ay) = u.wirtinger(z1)?.partials();
        let (bx, by) = u.wirtinger(z2)?.partials();
        // M = [ax ay -bx -by] as a 2x4 real matrix (rows: re, im).
        let cols = [ax, ay, -bx, -by];
        let (mut g11, mut g12, mut g22) = (T::zero(), T::zero(), T::zero());
        for col in &cols {
            g11 += col.re * col.re;
            g12 += col.re * col.im;
            g22 += col.im * col.im;
        }
        let det = g11 * g22 - g12 * g12;
        if !(det > T::epsilon() * (g11 * g22).max(T::min_positive_value())) {
            return Ok(None);
        }
        // y = (M M^T)^{-1} res, delta = -M^T y
        let y1 = (g22 * res.re - g12 * res.im) / det;
        let y2 = (g11 * res.im - g12 * res.re) / det;
        let delta: Vec<T> = cols.iter().map(|c| -(c.re * y1 + c.im * y2)).collect();
        let mut d1 = Complex::new(delta[0], delta[1]);
        let mut d2 = Complex::new(delta[2], delta[3]);
        let longest = d1.norm().max(d2.norm());
        if longest > step {
            d1 *= step / longest;
            d2 *= step / longest;
        }
        z1 = clamp_to_disk(z1 + d1, r_max);
        z2 = clamp_to_disk(z2 + d2, r_max);
        if (z1 - start1).norm() > trust || (z2 - start2).norm() > trust {
            return Ok(None);
        }
    }
    Ok(None)
}
