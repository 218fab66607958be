//! The curvature–distance harness.
//!
//! For each surface the harness measures `sup_p |K(p)|^{1/2} d(p)` where
//! `d(p)` is the geodesic distance to the boundary, together with the
//! omission margins of its Gauss map against a hyperplane set. The family
//! maximum is reported as `empirical_C`; it is a witness from below for the
//! constant of the inequality, never an upper bound.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::holo::ComplexScalar;
use crate::metricgeo::{
    boundary_distances, boundary_distances_within, geodesic_distances, geodesic_distances_within, sample_metric,
};
use crate::output::{f17, to_json17};
use crate::projgeom::{general_position, omission_margin, HyperplaneSet};
use crate::weierstrass::{DiskDomain, WeierstrassData, CURVATURE_NORMALIZATION, DEFAULT_QUAD_ORDER};

/// Smallest grid accepted in an experiment configuration.
pub const MIN_EXPERIMENT_N: usize = 64;

/// Below this `max |K|` a surface counts as flat.
pub const FLAT_TOL: f64 = 1e-12;

/// Absolute slack on the `-4 <= K <= 0` post-condition of [`renormalize`].
pub const RENORMALIZE_SLACK: f64 = 1e-9;

pub const EMPIRICAL_C_LABEL: &str = "lower-bound witness: sampled maximum over the family, not a bound on the constant";

/// Location and value of `sup |K|^{1/2} d`.
#[derive(Clone, Debug, Serialize)]
pub struct CurvatureDistanceProduct {
    pub sup: f64,
    pub cell: (usize, usize),
    pub argmax: ComplexScalar,
    /// Immersion at the maximizing point.
    pub position: Vec<f64>,
}

fn curvature_field(data: &WeierstrassData, metric: &crate::GridMetric) -> Result<Vec<f64>> {
    let mut k = vec![0.0; metric.n() * metric.n()];
    for (i, j) in metric.masked_cells() {
        k[metric.grid().index(i, j)] = data.curvature(metric.grid().center(i, j))?;
    }
    Ok(k)
}

/// `sup |K|^{1/2} d` over the cells of an `grid_n x grid_n` sample, with
/// `d` from one multi-source pass seeded at the boundary ring. Ties go to
/// the first cell in row-major order.
pub fn curvature_distance_product(
    data: &WeierstrassData,
    grid_n: usize,
    quad_order: usize,
) -> Result<CurvatureDistanceProduct> {
    data.validate().into_result()?;
    let metric = sample_metric(data, grid_n)?;
    let d = boundary_distances(&metric);
    let mut best: Option<(f64, (usize, usize))> = None;
    for (i, j) in metric.masked_cells() {
        let k = data.curvature(metric.grid().center(i, j))?;
        let value = k.abs().sqrt() * d.at(i, j)?;
        if best.is_none_or(|(b, _)| value > b) {
            best = Some((value, (i, j)));
        }
    }
    let (sup, cell) = best.ok_or_else(|| Error::Config("grid has no cells inside the domain".into()))?;
    let argmax = metric.grid().center(cell.0, cell.1);
    Ok(CurvatureDistanceProduct { sup, cell, argmax, position: data.immersion_point(argmax, quad_order)? })
}

#[derive(Clone, Debug, Serialize)]
pub struct RenormalizeReport {
    pub grid_n: usize,
    pub mu: f64,
    pub p_prime: (usize, usize),
    pub z_prime: ComplexScalar,
    /// Curvature of the rescaled surface at `p'`.
    pub k_at_p_prime: f64,
    /// Distance from the center to the boundary before rescaling.
    pub d_center: f64,
    /// Distance from `p'` to the boundary of the half-distance disk, after rescaling.
    pub d_prime_at_p_prime: f64,
    pub half_disk_cells: usize,
    pub inner_disk_cells: usize,
    /// Curvature range of the rescaled surface on the inner disk around `p'`.
    pub k_min_inner: f64,
    pub k_max_inner: f64,
    pub bound_holds: bool,
}

#[derive(Clone, Debug)]
pub struct Renormalization {
    pub data: WeierstrassData,
    pub p_prime: (usize, usize),
    pub report: RenormalizeReport,
}

/// Point-picking and rescaling:
///
/// 1. restrict to `M' = {p : d(p, center) <= d(center) / 2}`;
/// 2. pick `p'` maximizing `|K(p)| d'(p)^2` where `d'` is the distance to
///    the boundary of `M'`;
/// 3. rescale the forms by `mu = |K(p')|^{1/2}` (so `K` scales by `mu^-2`)
///    and `|K(p')| = 1`;
/// 4. check `-4 <= K <= 0` on `M'' = {p in M' : d(p, p') < d'(p') / 2}`.
pub fn renormalize(data: &WeierstrassData, grid_n: usize) -> Result<Renormalization> {
    data.validate().into_result()?;
    let metric = sample_metric(data, grid_n)?;
    let grid = *metric.grid();
    let k_field = curvature_field(data, &metric)?;
    let max_abs_k = k_field.iter().fold(0.0f64, |m, k| m.max(k.abs()));
    if max_abs_k < FLAT_TOL {
        return Err(Error::FlatSurface { max_abs_k });
    }

    let center = metric.center_cell()?;
    let d_center = boundary_distances(&metric).at(center.0, center.1)?;
    let from_center = geodesic_distances(&metric, center)?;
    let half_disk: Vec<bool> = (0..k_field.len())
        .map(|idx| {
            let (i, j) = grid.cell(idx);
            metric.is_masked(i, j) && from_center.at(i, j).is_ok_and(|r| r <= 0.5 * d_center)
        })
        .collect();
    let d_half = boundary_distances_within(&metric, &half_disk);

    let mut best: Option<(f64, usize)> = None;
    for (idx, inside) in half_disk.iter().enumerate() {
        if !*inside {
            continue;
        }
        let (i, j) = grid.cell(idx);
        let Ok(dp) = d_half.at(i, j) else { continue };
        let value = k_field[idx].abs() * dp * dp;
        if best.is_none_or(|(b, _)| value > b) {
            best = Some((value, idx));
        }
    }
    let (best_value, best_idx) = best.ok_or(Error::FlatSurface { max_abs_k })?;
    if best_value <= 0.0 {
        return Err(Error::FlatSurface { max_abs_k });
    }
    let p_prime = grid.cell(best_idx);
    let z_prime = grid.center(p_prime.0, p_prime.1);
    let mu = k_field[best_idx].abs().sqrt();
    let rescaled = data.scale(mu)?;
    let k_at_p_prime = rescaled.curvature(z_prime)?;

    // distances scale linearly with mu
    let d_prime = mu * d_half.at(p_prime.0, p_prime.1)?;
    let from_p = geodesic_distances_within(&metric, p_prime, Some(&half_disk))?.scaled(mu);
    let mut k_min = 0.0f64;
    let mut k_max = f64::NEG_INFINITY;
    let mut inner = 0;
    for (idx, inside) in half_disk.iter().enumerate() {
        let (i, j) = grid.cell(idx);
        if !*inside || !from_p.at(i, j).is_ok_and(|r| r < 0.5 * d_prime) {
            continue;
        }
        inner += 1;
        let k = rescaled.curvature(grid.center(i, j))?;
        k_min = k_min.min(k);
        k_max = k_max.max(k);
    }
    let bound_holds = k_min >= -4.0 - RENORMALIZE_SLACK && k_max <= 0.0;
    Ok(Renormalization {
        data: rescaled,
        p_prime,
        report: RenormalizeReport {
            grid_n,
            mu,
            p_prime,
            z_prime,
            k_at_p_prime,
            d_center,
            d_prime_at_p_prime: d_prime,
            half_disk_cells: half_disk.iter().filter(|b| **b).count(),
            inner_disk_cells: inner,
            k_min_inner: k_min,
            k_max_inner: k_max,
            bound_holds,
        },
    })
}

/// A surface in a configuration: a catalog name (optionally on a smaller
/// disk about the same center) or inline data.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SurfaceSpec {
    Catalog {
        catalog: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Inline {
        name: String,
        data: WeierstrassData,
    },
}

impl SurfaceSpec {
    pub fn resolve(&self) -> Result<(String, WeierstrassData)> {
        match self {
            SurfaceSpec::Catalog { catalog: entry, radius, name } => {
                let e = catalog::builtin(entry)?;
                let mut data = e.data;
                let mut label = e.name;
                if let Some(r) = radius {
                    data = data.with_domain(DiskDomain::new(data.domain().center, *r)?);
                    label = format!("{label}@{r}");
                }
                Ok((name.clone().unwrap_or(label), data))
            }
            SurfaceSpec::Inline { name, data } => Ok((name.clone(), data.clone())),
        }
    }
}

fn default_quad_order() -> usize {
    DEFAULT_QUAD_ORDER
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub surfaces: Vec<SurfaceSpec>,
    pub hyperplanes: HyperplaneSet,
    pub grid_n: usize,
    /// Second resolution for the stability figure; defaults to `2 grid_n - 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refine_n: Option<usize>,
    #[serde(default = "default_quad_order")]
    pub quad_order: usize,
    pub omission_threshold: f64,
    pub output: PathBuf,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn refine_n(&self) -> usize {
        self.refine_n.unwrap_or(2 * self.grid_n - 1)
    }

    pub fn check(&self) -> Result<()> {
        if self.grid_n < MIN_EXPERIMENT_N || self.refine_n() < MIN_EXPERIMENT_N {
            return Err(Error::Config(format!("grid_n must be at least {MIN_EXPERIMENT_N}")));
        }
        if !(self.omission_threshold > 0.0 && self.omission_threshold < 1.0) {
            return Err(Error::Config(format!(
                "omission_threshold must lie in (0, 1), got {}",
                self.omission_threshold
            )));
        }
        if self.quad_order == 0 {
            return Err(Error::Config("quad_order must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceRow {
    pub name: String,
    pub q_omitted: usize,
    pub sup_product: f64,
    pub argmax_z: ComplexScalar,
    pub min_margin: f64,
    pub kappa_used: f64,
    /// Same product at the refinement resolution.
    pub sup_product_refined: f64,
    /// Some configured plane is not omitted on the sample.
    pub omission_flag: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub rows: Vec<SurfaceRow>,
    pub empirical_c: f64,
    pub empirical_c_refined: f64,
    pub resolutions: Vec<usize>,
    /// `|C(n_1) - C(n_2)| / C(n_2)`, zero when both vanish.
    pub stability: f64,
    pub kappa_used: f64,
    pub warnings: Vec<String>,
}

/// Number of planes the hypothesis of the inequality requires to exceed.
pub fn hypothesis_threshold(m: usize) -> usize {
    m * (m + 1) / 2
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.check()?;
    let planes = &config.hyperplanes;
    if !planes.is_empty() {
        let gp = general_position(planes);
        if let Some(witness) = gp.witness {
            return Err(Error::GeneralPosition { witness });
        }
    }
    let mut warnings = Vec::new();
    let threshold = hypothesis_threshold(planes.m());
    if planes.len() <= threshold {
        warnings.push(format!(
            "WARN: {} hyperplanes in P^{}; the inequality assumes more than {threshold}",
            planes.len(),
            planes.m().saturating_sub(1)
        ));
    }
    let (n1, n2) = (config.grid_n, config.refine_n());
    let mut rows = Vec::with_capacity(config.surfaces.len());
    for spec in &config.surfaces {
        let (name, data) = spec.resolve()?;
        if data.m() != planes.m() {
            return Err(Error::Config(format!(
                "surface `{name}` has m = {} but the hyperplanes live in dimension {}",
                data.m(),
                planes.m()
            )));
        }
        data.validate().into_result()?;
        let margins = omission_margin(&data, planes, n1)?;
        let q_omitted = margins.iter().filter(|m| m.min_margin > config.omission_threshold).count();
        let min_margin = margins.iter().map(|m| m.min_margin).fold(f64::INFINITY, f64::min);
        let coarse = curvature_distance_product(&data, n1, config.quad_order)?;
        let fine = curvature_distance_product(&data, n2, config.quad_order)?;
        if q_omitted < planes.len() {
            warnings.push(format!("WARN: surface `{name}` omits only {q_omitted} of {} planes on the sample", planes.len()));
        }
        rows.push(SurfaceRow {
            name,
            q_omitted,
            sup_product: coarse.sup,
            argmax_z: coarse.argmax,
            min_margin,
            kappa_used: CURVATURE_NORMALIZATION,
            sup_product_refined: fine.sup,
            omission_flag: q_omitted < planes.len(),
        });
    }
    let empirical_c = rows.iter().map(|r| r.sup_product).fold(0.0, f64::max);
    let empirical_c_refined = rows.iter().map(|r| r.sup_product_refined).fold(0.0, f64::max);
    let stability = if empirical_c_refined > 0.0 {
        (empirical_c - empirical_c_refined).abs() / empirical_c_refined
    } else if empirical_c == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(ExperimentReport {
        rows,
        empirical_c,
        empirical_c_refined,
        resolutions: vec![n1, n2],
        stability,
        kappa_used: CURVATURE_NORMALIZATION,
        warnings,
    })
}

#[derive(Serialize)]
struct Summary<'a> {
    tool: &'static str,
    version: &'static str,
    empirical_c: f64,
    empirical_c_label: &'static str,
    empirical_c_refined: f64,
    stability: f64,
    resolutions: &'a [usize],
    kappa_used: f64,
    surfaces: usize,
    warnings: &'a [String],
    config: &'a ExperimentConfig,
}

/// `(csv, json)` paths derived from the configured output path.
pub fn report_paths(path: &Path) -> (PathBuf, PathBuf) {
    (path.with_extension("csv"), path.with_extension("json"))
}

pub fn write_rows_csv(report: &ExperimentReport, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "name",
        "q_omitted",
        "sup_product",
        "argmax_u",
        "argmax_v",
        "min_margin",
        "kappa_used",
        "sup_product_refined",
        "omission_flag",
    ])
    .map_err(csv_err)?;
    for r in &report.rows {
        w.write_record([
            r.name.clone(),
            r.q_omitted.to_string(),
            f17(r.sup_product),
            f17(r.argmax_z.re),
            f17(r.argmax_z.im),
            f17(r.min_margin),
            f17(r.kappa_used),
            f17(r.sup_product_refined),
            r.omission_flag.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary_json(report: &ExperimentReport, config: &ExperimentConfig, out: impl Write) -> Result<()> {
    let summary = Summary {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        empirical_c: report.empirical_c,
        empirical_c_label: EMPIRICAL_C_LABEL,
        empirical_c_refined: report.empirical_c_refined,
        stability: report.stability,
        resolutions: &report.resolutions,
        kappa_used: report.kappa_used,
        surfaces: report.rows.len(),
        warnings: &report.warnings,
        config,
    };
    let mut out = out;
    writeln!(out, "{}", to_json17(&summary)?)?;
    Ok(())
}

/// Writes `<output>.csv` (one row per surface) and `<output>.json`.
pub fn emit_report(report: &ExperimentReport, config: &ExperimentConfig, path: &Path) -> Result<(PathBuf, PathBuf)> {
    let (csv_path, json_path) = report_paths(path);
    let mut csv_out = BufWriter::new(File::create(&csv_path)?);
    write_rows_csv(report, &mut csv_out)?;
    csv_out.flush()?;
    let mut json_out = BufWriter::new(File::create(&json_path)?);
    write_summary_json(report, config, &mut json_out)?;
    json_out.flush()?;
    Ok((csv_path, json_path))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
