//! Deterministic SVG images of polar grids under a planar map.

use std::fmt::Write;

use num_complex::Complex64;

use crate::biharmonic::PlanarMap;
use crate::error::{Error, Result};

pub const MIN_SAMPLES_PER_CURVE: usize = 64;

/// Relative margin added around the image bounding box.
pub const MARGIN: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderConfig {
    /// Circles at radii `r_max * k / n_circles`, `k = 1..=n_circles`.
    pub n_circles: usize,
    /// Rays from the origin at angles `2 pi j / n_rays`.
    pub n_rays: usize,
    pub samples_per_curve: usize,
    pub r_max: f64,
    pub width: f64,
    pub height: f64,
    pub circle_stroke: String,
    pub ray_stroke: String,
}

impl Default for RenderConfig {
    fn default() -> Self {
        Self {
            n_circles: 8,
            n_rays: 24,
            samples_per_curve: 256,
            r_max: 0.98,
            width: 480.0,
            height: 480.0,
            circle_stroke: "#1f4e9a".into(),
            ray_stroke: "#b03a2e".into(),
        }
    }
}

impl RenderConfig {
    pub fn with_r_max(mut self, r_max: f64) -> Self {
        self.r_max = r_max;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.samples_per_curve < MIN_SAMPLES_PER_CURVE {
            return Err(Error::config(format!(
                "samples_per_curve must be >= {MIN_SAMPLES_PER_CURVE}, got {}",
                self.samples_per_curve
            )));
        }
        if !(self.r_max > 0.0 && self.r_max < 1.0) {
            return Err(Error::config(format!("r_max must lie in (0, 1), got {}", self.r_max)));
        }
        if self.n_circles == 0 && self.n_rays == 0 {
            return Err(Error::config("nothing to draw: n_circles = n_rays = 0"));
        }
        if !(self.width > 0.0 && self.height > 0.0) {
            return Err(Error::config("canvas size must be positive"));
        }
        Ok(())
    }
}

/// Images of the circles and rays of the configured polar grid.
pub struct Curves {
    pub circles: Vec<Vec<Complex64>>,
    pub rays: Vec<Vec<Complex64>>,
}

fn image<M: PlanarMap<f64>>(u: &M, z: Complex64) -> Result<Complex64> {
    u.eval(z).map_err(|e| match e {
        Error::Domain(msg) => Error::Domain(format!("render failed at z = {} {:+}i: {msg}", z.re, z.im)),
        other => other,
    })
}

pub fn trace_curves<M: PlanarMap<f64>>(u: &M, cfg: &RenderConfig) -> Result<Curves> {
    cfg.validate()?;
    let m = cfg.samples_per_curve;
    let tau = std::f64::consts::TAU;
    let mut circles = Vec::with_capacity(cfg.n_circles);
    for k in 1..=cfg.n_circles {
        let r = k as f64 / cfg.n_circles as f64 * cfg.r_max;
        // closed polyline: the last sample repeats the first
        let curve = (0..=m)
            .map(|j| image(u, Complex64::from_polar(r, tau * (j % m) as f64 / m as f64)))
            .collect::<Result<Vec<_>>>()?;
        circles.push(curve);
    }
    let mut rays = Vec::with_capacity(cfg.n_rays);
    for j in 0..cfg.n_rays {
        let theta = tau * j as f64 / cfg.n_rays as f64;
        let curve = (0..m)
            .map(|i| image(u, Complex64::from_polar(i as f64 / (m - 1) as f64 * cfg.r_max, theta)))
            .collect::<Result<Vec<_>>>()?;
        rays.push(curve);
    }
    Ok(Curves { circles, rays })
}

/// Six decimals with negative zero printed as zero.
fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn polyline(out: &mut String, class: &str, stroke: &str, pts: &[Complex64]) {
    let _ = write!(out, "  <polyline class=\"{class}\" stroke=\"{stroke}\" points=\"");
    for (i, p) in pts.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        // SVG's y axis points down
        let _ = write!(out, "{},{}", fmt6(p.re), fmt6(-p.im));
    }
    out.push_str("\"/>\n");
}

/// SVG document with one polyline per circle image and per ray image.
pub fn render_map<M: PlanarMap<f64>>(u: &M, cfg: &RenderConfig) -> Result<String> {
    let curves = trace_curves(u, cfg)?;
    let all = curves.circles.iter().chain(&curves.rays).flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in all {
        if !(p.re.is_finite() && p.im.is_finite()) {
            return Err(Error::domain(format!("non-finite image point {p}")));
        }
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(-p.im);
        y1 = y1.max(-p.im);
    }
    let w = (x1 - x0).max(1e-9);
    let h = (y1 - y0).max(1e-9);
    let (mx, my) = (MARGIN * w, MARGIN * h);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">",
        fmt6(x0 - mx),
        fmt6(y0 - my),
        fmt6(w + 2.0 * mx),
        fmt6(h + 2.0 * my),
        fmt6(cfg.width),
        fmt6(cfg.height)
    );
    out.push_str(
        "  <g fill=\"none\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\" stroke-linejoin=\"round\">\n",
    );
    let mut body = String::new();
    for c in &curves.circles {
        polyline(&mut body, "circle", &cfg.circle_stroke, c);
    }
    for r in &curves.rays {
        polyline(&mut body, "ray", &cfg.ray_stroke, r);
    }
    for line in body.lines() {
        let _ = writeln!(out, "  {line}");
    }
    out.push_str("  </g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biharmonic::BiharmonicMap;
    use crate::grid::AnalyticSeries;
    use crate::harmonic::HarmonicMap;

    fn identity() -> BiharmonicMap<f64> {
        BiharmonicMap::new(
            HarmonicMap::analytic(AnalyticSeries::monomial(1, Complex64::new(1.0, 0.0))),
            HarmonicMap::zero(),
        )
    }

    #[test]
    fn identity_draws_concentric_circles() {
        let cfg = RenderConfig {
            n_circles: 8,
            n_rays: 0,
            samples_per_curve: 64,
            r_max: 0.8,
            ..RenderConfig::default()
        };
        let curves = trace_curves(&identity(), &cfg).unwrap();
        assert_eq!(curves.circles.len(), 8);
        for (k, c) in curves.circles.iter().enumerate() {
            let r = 0.8 * (k + 1) as f64 / 8.0;
            assert!(c.iter().all(|p| (p.norm() - r).abs() < 1e-15));
            assert_eq!(c.first(), c.last());
        }
        let svg = render_map(&identity(), &cfg).unwrap();
        assert_eq!(svg.matches("<polyline class=\"circle\"").count(), 8);
        assert!(svg.contains("viewBox=\"-0.880000 -0.880000 1.760000 1.760000\""));
        assert!(!svg.contains("-0.000000"));
    }

    #[test]
    fn output_is_deterministic() {
        let u = crate::univalence::example2_map::<f64>(3).unwrap();
        let cfg = RenderConfig::default();
        assert_eq!(render_map(&u, &cfg).unwrap(), render_map(&u, &cfg).unwrap());
    }

    #[test]
    fn config_is_validated() {
        let u = identity();
        for cfg in [
            RenderConfig { samples_per_curve: 63, ..RenderConfig::default() },
            RenderConfig { r_max: 1.0, ..RenderConfig::default() },
            RenderConfig { n_circles: 0, n_rays: 0, ..RenderConfig::default() },
        ] {
            assert!(matches!(render_map(&u, &cfg), Err(Error::Config(_))));
        }
    }

    #[test]
    fn domain_errors_name_the_point() {
        let u = crate::univalence::example3_map::<f64>(64);
        let err = render_map(&u, &RenderConfig::default().with_r_max(0.995)).unwrap_err();
        match err {
            Error::Domain(msg) => assert!(msg.starts_with("render failed at z = "), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(fmt6(-1e-9), "0.000000");
        assert_eq!(fmt6(-0.5), "-0.500000");
    }
}
