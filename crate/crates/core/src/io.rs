//! JSON formats for maps and boundary data.
//!
//! Map spec: `{"type": "familyF" | "HB", "H": {"w1": [[re, im], ...], "w2": [...]}, "h": {...}}`
//! with `h` required for `"HB"` and ignored-if-absent for `"familyF"`.
//! Boundary data: `{"N": n, "phi": [[re, im], ...], "psi": [...]}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::biharmonic::{BiharmonicMap, BoundaryData};
use crate::error::{Error, Result};
use crate::grid::AnalyticSeries;
use crate::harmonic::HarmonicMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapType {
    #[serde(rename = "familyF")]
    FamilyF,
    #[serde(rename = "HB")]
    General,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarmonicSpec {
    #[serde(default)]
    pub w1: Vec<Complex64>,
    #[serde(default)]
    pub w2: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    #[serde(rename = "type")]
    pub kind: MapType,
    #[serde(rename = "H")]
    pub harmonic: HarmonicSpec,
    #[serde(rename = "h", default, skip_serializing_if = "Option::is_none")]
    pub companion: Option<HarmonicSpec>,
    /// Evaluation radius limit for truncated series; defaults to the closed disk.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_limit: Option<f64>,
}

fn finite(cs: &[Complex64], what: &str) -> Result<()> {
    if cs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::config(format!("{what} has non-finite coefficients")))
    }
}

impl HarmonicSpec {
    fn build(&self, what: &str) -> Result<HarmonicMap<f64>> {
        finite(&self.w1, what)?;
        finite(&self.w2, what)?;
        Ok(HarmonicMap::new(AnalyticSeries::new(self.w1.clone()), AnalyticSeries::new(self.w2.clone())))
    }

    fn of(h: &HarmonicMap<f64>) -> Self {
        Self {
            w1: h.w1.coeffs().to_vec(),
            w2: h.w2.coeffs().to_vec(),
        }
    }
}

impl MapSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config(format!("map spec: {e}")))
    }

    pub fn to_map(&self) -> Result<BiharmonicMap<f64>> {
        let mut h = self.harmonic.build("H")?;
        if let Some(limit) = self.radius_limit {
            if !(limit > 0.0 && limit <= 1.0) {
                return Err(Error::config(format!("radius_limit must lie in (0, 1], got {limit}")));
            }
            h = h.with_radius_limit(limit);
        }
        match (self.kind, &self.companion) {
            (MapType::FamilyF, None) => Ok(BiharmonicMap::family_f(h)),
            (MapType::FamilyF, Some(_)) => Err(Error::config("familyF map spec must not carry \"h\"")),
            (MapType::General, Some(c)) => {
                let mut c = c.build("h")?;
                if let Some(limit) = self.radius_limit {
                    c = c.with_radius_limit(limit);
                }
                Ok(BiharmonicMap::new(h, c))
            }
            (MapType::General, None) => Err(Error::config("HB map spec needs \"h\"")),
        }
    }

    pub fn of(u: &BiharmonicMap<f64>) -> Self {
        let limit = u.radius_limit();
        let radius_limit = (limit < 1.0).then_some(limit);
        if u.is_family_f() {
            Self {
                kind: MapType::FamilyF,
                harmonic: HarmonicSpec::of(u.harmonic()),
                companion: None,
                radius_limit,
            }
        } else {
            Self {
                kind: MapType::General,
                harmonic: HarmonicSpec::of(u.harmonic()),
                companion: Some(HarmonicSpec::of(u.companion())),
                radius_limit,
            }
        }
    }
}

pub fn parse_map(text: &str) -> Result<BiharmonicMap<f64>> {
    MapSpec::parse(text)?.to_map()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySpec {
    #[serde(rename = "N")]
    pub n: usize,
    pub phi: Vec<Complex64>,
    pub psi: Vec<Complex64>,
}

impl BoundarySpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config(format!("boundary data: {e}")))
    }

    pub fn to_data(&self) -> Result<BoundaryData<f64>> {
        if self.phi.len() != self.n || self.psi.len() != self.n {
            return Err(Error::config(format!(
                "boundary data declares N = {} but has {} phi and {} psi samples",
                self.n,
                self.phi.len(),
                self.psi.len()
            )));
        }
        finite(&self.phi, "phi")?;
        finite(&self.psi, "psi")?;
        BoundaryData::new(self.phi.clone(), self.psi.clone())
    }

    pub fn of(data: &BoundaryData<f64>) -> Self {
        Self {
            n: data.len(),
            phi: data.phi.clone(),
            psi: data.psi.clone(),
        }
    }
}
