//! Minimal surfaces in R^m generated by isotropic holomorphic data on a disk.
//!
//! Data is an m-tuple of rational forms `f_i` with `sum f_i^2 = 0`. The
//! immersion is `x_i(z) = 2 Re ∫ f_i dz` from the disk center, the induced
//! metric is `ds = λ|dz|` with `λ^2 = 2 sum |f_i|^2`, and the generalized
//! Gauss map is `[f_1 : ... : f_m]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holo::{ComplexRational, ComplexScalar, Polynomial};
use crate::metricgeo::GridMetric;
use crate::projgeom::ProjPoint;
use crate::quadrature::GaussLegendre;

/// Normalization constant of the curvature formula
/// `K = -κ |g ∧ g'|^2 / |g|^6` under the metric `λ^2 = 2 sum |f_i|^2`.
/// Pinned by agreement with [`curvature_oracle`].
pub const CURVATURE_NORMALIZATION: f64 = 1.0;

/// Default Gauss–Legendre order per panel for the immersion.
pub const DEFAULT_QUAD_ORDER: usize = 12;

/// Panel length used by the composite rule.
const PANEL_LENGTH: f64 = 0.1;

/// Slack used when filtering roots against the closed disk.
const ROOT_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskDomain {
    pub center: ComplexScalar,
    pub radius: f64,
}

impl DiskDomain {
    pub fn new(center: ComplexScalar, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !center.re.is_finite() || !center.im.is_finite() {
            return Err(Error::InvalidData(format!("disk radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn unit() -> Self {
        Self { center: ComplexScalar::new(0.0, 0.0), radius: 1.0 }
    }

    /// Closed-disk membership with a relative slack of 1e-12.
    pub fn contains(&self, z: ComplexScalar) -> bool {
        (z - self.center).norm() <= self.radius * (1.0 + 1e-12)
    }

    fn contains_with_slack(&self, z: ComplexScalar, slack: f64) -> bool {
        (z - self.center).norm() <= self.radius + slack
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassData {
    forms: Vec<ComplexRational>,
    derivs: Vec<ComplexRational>,
    domain: DiskDomain,
}

#[derive(Serialize, Deserialize)]
struct DataRepr {
    m: usize,
    forms: Vec<ComplexRational>,
    domain: DiskDomain,
}

impl Serialize for WeierstrassData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DataRepr { m: self.m(), forms: self.forms.clone(), domain: self.domain }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeierstrassData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DataRepr::deserialize(d)?;
        if r.m != r.forms.len() {
            return Err(serde::de::Error::custom(format!(
                "m = {} but {} forms given",
                r.m,
                r.forms.len()
            )));
        }
        let domain = DiskDomain::new(r.domain.center, r.domain.radius).map_err(serde::de::Error::custom)?;
        WeierstrassData::new(r.forms, domain).map_err(serde::de::Error::custom)
    }
}

/// Outcome of [`WeierstrassData::validate`].
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub m: usize,
    pub isotropy: bool,
    /// Coefficients of the numerator of `sum f_i^2` (empty when isotropic).
    pub isotropy_residual: Polynomial,
    /// Common zeros of all forms inside the closed domain.
    pub common_zeros: Vec<ComplexScalar>,
    /// `(form index, pole)` for every pole inside the closed domain.
    pub poles: Vec<(usize, ComplexScalar)>,
    /// The domain is a disk, so real periods vanish.
    pub periods_vanish: bool,
    pub valid: bool,
}

impl ValidationReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.isotropy {
            out.push("sum of squares of the forms is not identically zero".to_string());
        }
        for z in &self.common_zeros {
            out.push(format!("common zero at {z}"));
        }
        for (i, z) in &self.poles {
            out.push(format!("form {i} has a pole at {z}"));
        }
        out
    }

    pub fn into_result(self) -> Result<Self> {
        if self.valid {
            Ok(self)
        } else {
            Err(Error::InvalidData(self.failures().join("; ")))
        }
    }
}

/// Everything the crate knows about one parameter point.
#[derive(Clone, Debug)]
pub struct SurfaceSample {
    pub z: ComplexScalar,
    pub position: Vec<f64>,
    pub lambda: f64,
    pub curvature: f64,
    pub gauss: ProjPoint,
}

impl WeierstrassData {
    pub fn new(forms: Vec<ComplexRational>, domain: DiskDomain) -> Result<Self> {
        if forms.len() < 3 {
            return Err(Error::InvalidData(format!("need m >= 3 forms, got {}", forms.len())));
        }
        let derivs = forms.iter().map(ComplexRational::derivative).collect();
        Ok(Self { forms, derivs, domain })
    }

    pub fn m(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[ComplexRational] {
        &self.forms
    }

    pub fn domain(&self) -> &DiskDomain {
        &self.domain
    }

    /// Same forms on a different disk.
    pub fn with_domain(&self, domain: DiskDomain) -> Self {
        Self { forms: self.forms.clone(), derivs: self.derivs.clone(), domain }
    }

    pub fn validate(&self) -> ValidationReport {
        let square_sum = self
            .forms
            .iter()
            .fold(ComplexRational::zero(), |acc, f| acc.add(&f.mul(f)));
        let isotropy = square_sum.is_zero();

        let numerator_gcd = self
            .forms
            .iter()
            .fold(Polynomial::zero(), |acc, f| acc.gcd(f.num()));
        let mut common_zeros: Vec<ComplexScalar> = numerator_gcd
            .roots()
            .into_iter()
            .filter(|z| self.domain.contains_with_slack(*z, ROOT_SLACK))
            .collect();
        if numerator_gcd.is_zero() {
            // every form vanishes identically
            common_zeros.push(self.domain.center);
        }

        let poles: Vec<(usize, ComplexScalar)> = self
            .forms
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.den().roots().into_iter().map(move |z| (i, z)))
            .filter(|(_, z)| self.domain.contains_with_slack(*z, ROOT_SLACK))
            .collect();

        let valid = isotropy && common_zeros.is_empty() && poles.is_empty();
        ValidationReport {
            m: self.m(),
            isotropy,
            isotropy_residual: square_sum.num().clone(),
            common_zeros,
            poles,
            periods_vanish: true,
            valid,
        }
    }

    fn check_domain(&self, z: ComplexScalar) -> Result<()> {
        if self.domain.contains(z) {
            Ok(())
        } else {
            Err(Error::Domain { z })
        }
    }

    /// `(f_1(z), ..., f_m(z))`
    pub fn form_values(&self, z: ComplexScalar) -> Result<Vec<ComplexScalar>> {
        self.forms.iter().map(|f| f.eval(z)).collect()
    }

    fn derivative_values(&self, z: ComplexScalar) -> Result<Vec<ComplexScalar>> {
        self.derivs.iter().map(|f| f.eval(z)).collect()
    }

    /// `x_i(z) = 2 Re ∫ f_i dz` along the segment from the disk center.
    pub fn immersion_point(&self, z: ComplexScalar, quad_order: usize) -> Result<Vec<f64>> {
        self.check_domain(z)?;
        let center = self.domain.center;
        let length = (z - center).norm();
        if length == 0.0 {
            return Ok(vec![0.0; self.m()]);
        }
        let panels = ((length / PANEL_LENGTH).ceil() as usize).max(1);
        let rule = GaussLegendre::new(quad_order.max(1));
        self.forms
            .iter()
            .map(|f| {
                rule.integrate_segment(center, z, panels, |w| f.eval(w))
                    .map(|v| 2.0 * v.re)
            })
            .collect()
    }

    /// `λ(z) = sqrt(2 sum |f_i(z)|^2)`
    pub fn conformal_factor(&self, z: ComplexScalar) -> Result<f64> {
        self.check_domain(z)?;
        let s: f64 = self.form_values(z)?.iter().map(|v| v.norm_sqr()).sum();
        Ok((2.0 * s).sqrt())
    }

    pub fn gauss_map(&self, z: ComplexScalar) -> Result<ProjPoint> {
        self.check_domain(z)?;
        ProjPoint::new(self.form_values(z)?)
    }

    /// Gauss curvature `-κ sum_{j<k} |g_j g_k' - g_k g_j'|^2 / (sum |g_j|^2)^3`.
    pub fn curvature(&self, z: ComplexScalar) -> Result<f64> {
        self.check_domain(z)?;
        let g = self.form_values(z)?;
        let dg = self.derivative_values(z)?;
        Ok(curvature_from_values(&g, &dg))
    }

    pub fn sample(&self, z: ComplexScalar, quad_order: usize) -> Result<SurfaceSample> {
        Ok(SurfaceSample {
            z,
            position: self.immersion_point(z, quad_order)?,
            lambda: self.conformal_factor(z)?,
            curvature: self.curvature(z)?,
            gauss: self.gauss_map(z)?,
        })
    }

    /// Replaces every form by `mu * f_i`.
    pub fn scale(&self, mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::InvalidData(format!("scale factor must be positive, got {mu}")));
        }
        if mu == 1.0 {
            return Ok(self.clone());
        }
        let s = ComplexScalar::new(mu, 0.0);
        Ok(Self {
            forms: self.forms.iter().map(|f| f.scale(s)).collect(),
            derivs: self.derivs.iter().map(|f| f.scale(s)).collect(),
            domain: self.domain,
        })
    }
}

pub(crate) fn curvature_from_values(g: &[ComplexScalar], dg: &[ComplexScalar]) -> f64 {
    let norm2: f64 = g.iter().map(|v| v.norm_sqr()).sum();
    let mut wedge = 0.0;
    for j in 0..g.len() {
        for k in j + 1..g.len() {
            wedge += (g[j] * dg[k] - g[k] * dg[j]).norm_sqr();
        }
    }
    -CURVATURE_NORMALIZATION * wedge / (norm2 * norm2 * norm2)
}

/// Intrinsic curvature `K = -Δ log λ / λ^2` of a sampled conformal metric at
/// cell `(i, j)`, using the five-point Laplacian. The cell must be at least
/// two cells inside the mask along both axes.
pub fn curvature_oracle(metric: &GridMetric, i: usize, j: usize) -> Result<f64> {
    let n = metric.n();
    for (di, dj) in [(0i64, 0i64), (-2, 0), (-1, 0), (1, 0), (2, 0), (0, -2), (0, -1), (0, 1), (0, 2)] {
        let (a, b) = (i as i64 + di, j as i64 + dj);
        if a < 0 || b < 0 || a >= n as i64 || b >= n as i64 || !metric.is_masked(a as usize, b as usize) {
            return Err(Error::Boundary { i, j });
        }
    }
    let h = metric.h();
    let log_l = |a: usize, b: usize| metric.lambda(a, b).ln();
    let lap = (log_l(i + 1, j) + log_l(i - 1, j) + log_l(i, j + 1) + log_l(i, j - 1) - 4.0 * log_l(i, j)) / (h * h);
    let l = metric.lambda(i, j);
    Ok(-lap / (l * l))
}
