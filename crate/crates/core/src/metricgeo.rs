//! Conformal metrics sampled on a disk grid, graph geodesic distances, the
//! hyperbolic closed forms, and numerical checks of the comparison inequality
//! between a metric with curvature in [-1, 0] and the hyperbolic metric.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holo::ComplexScalar;
use crate::output::f17;
use crate::weierstrass::{curvature_oracle, DiskDomain, WeierstrassData};

/// Relative slack for graph-distance comparisons (32-neighbor metrication).
pub const DISTANCE_SLACK: f64 = 0.015;

/// Absolute tolerance on the curvature bracket `-1 <= K <= 0` when checking
/// the comparison hypotheses on a sampled metric.
pub const CURVATURE_HYPOTHESIS_TOL: f64 = 2e-2;

/// Cells within this Chebyshev distance of the source are excluded from the
/// superharmonicity check.
pub const SOURCE_COLLAR: usize = 3;

/// Smallest grid accepted by [`sample_metric`].
pub const MIN_SAMPLE_N: usize = 16;

/// All primitive moves with `max(|di|, |dj|) <= 3`: 32 neighbors. The
/// worst-case direction error of graph paths is `sqrt(1 + (sqrt(10) - 3)^2) - 1
/// ≈ 1.31%` (the 16-neighbor king + knight set reaches 2.75%).
const STENCIL: [(i64, i64); 32] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
    (1, 2),
    (2, 1),
    (-1, 2),
    (-2, 1),
    (1, -2),
    (2, -1),
    (-1, -2),
    (-2, -1),
    (1, 3),
    (3, 1),
    (-1, 3),
    (-3, 1),
    (1, -3),
    (3, -1),
    (-1, -3),
    (-3, -1),
    (2, 3),
    (3, 2),
    (-2, 3),
    (-3, 2),
    (2, -3),
    (3, -2),
    (-2, -3),
    (-3, -2),
];

/// Cell-centered `n x n` grid covering the bounding square of a disk.
/// Cell `(i, j)` has center `c + (-r + (i + 1/2) h) + i (-r + (j + 1/2) h)`
/// with `h = 2r / n`; flat index is `j * n + i` (row-major).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    domain: DiskDomain,
    n: usize,
    h: f64,
}

impl Grid {
    pub fn new(domain: DiskDomain, n: usize) -> Self {
        assert!(n >= 1, "grid needs at least one cell");
        Self { domain, n, h: 2.0 * domain.radius / n as f64 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn domain(&self) -> &DiskDomain {
        &self.domain
    }

    pub fn center(&self, i: usize, j: usize) -> ComplexScalar {
        let r = self.domain.radius;
        self.domain.center
            + ComplexScalar::new(-r + (i as f64 + 0.5) * self.h, -r + (j as f64 + 0.5) * self.h)
    }

    /// Position in the unit disk: `(z - center) / radius`.
    pub fn normalized(&self, i: usize, j: usize) -> ComplexScalar {
        (self.center(i, j) - self.domain.center) / self.domain.radius
    }

    pub fn in_disk(&self, i: usize, j: usize) -> bool {
        self.domain.contains(self.center(i, j))
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.n + i
    }

    pub fn cell(&self, index: usize) -> (usize, usize) {
        (index % self.n, index / self.n)
    }

    /// Cell whose center is nearest to `z` (clamped to the grid).
    pub fn cell_of(&self, z: ComplexScalar) -> (usize, usize) {
        let r = self.domain.radius;
        let off = z - self.domain.center;
        let to_index = |x: f64| {
            let k = ((x + r) / self.h - 0.5).round();
            k.clamp(0.0, (self.n - 1) as f64) as usize
        };
        (to_index(off.re), to_index(off.im))
    }

    pub fn center_cell(&self) -> (usize, usize) {
        self.cell_of(self.domain.center)
    }

    /// Cells inside the closed disk, in row-major order.
    pub fn masked_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |j| (0..self.n).map(move |i| (i, j)))
            .filter(move |&(i, j)| self.in_disk(i, j))
    }
}

/// Conformal factor `λ` sampled at cell centers of a disk grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridMetric {
    grid: Grid,
    lambda: Vec<f64>,
    mask: Vec<bool>,
}

impl GridMetric {
    /// Samples `f` on every cell center inside the closed disk.
    pub fn from_fn(domain: DiskDomain, n: usize, f: impl Fn(ComplexScalar) -> Result<f64>) -> Result<Self> {
        let grid = Grid::new(domain, n);
        Self::from_fn_masked(grid, |i, j| grid.in_disk(i, j), f)
    }

    fn from_fn_masked(
        grid: Grid,
        inside: impl Fn(usize, usize) -> bool,
        f: impl Fn(ComplexScalar) -> Result<f64>,
    ) -> Result<Self> {
        let n = grid.n;
        let mut lambda = vec![0.0; n * n];
        let mut mask = vec![false; n * n];
        for j in 0..n {
            for i in 0..n {
                if !inside(i, j) {
                    continue;
                }
                let l = f(grid.center(i, j))?;
                if !(l > 0.0 && l.is_finite()) {
                    return Err(Error::InvalidData(format!("conformal factor {l} at cell ({i}, {j}) is not positive")));
                }
                lambda[grid.index(i, j)] = l;
                mask[grid.index(i, j)] = true;
            }
        }
        Ok(Self { grid, lambda, mask })
    }

    pub fn flat(domain: DiskDomain, n: usize, value: f64) -> Result<Self> {
        Self::from_fn(domain, n, |_| Ok(value))
    }

    /// `λ = 2 / (1 - |z|^2)` on the open unit disk.
    pub fn hyperbolic(n: usize) -> Self {
        Self::hyperbolic_on(DiskDomain::unit(), n)
    }

    /// The hyperbolic factor sampled on a sub-disk of the unit disk; cells
    /// with `|z| >= 1` are masked out.
    pub fn hyperbolic_on(domain: DiskDomain, n: usize) -> Self {
        let grid = Grid::new(domain, n);
        Self::from_fn_masked(grid, |i, j| grid.in_disk(i, j) && grid.center(i, j).norm() < 1.0, |z| {
            Ok(2.0 / (1.0 - z.norm_sqr()))
        })
        .expect("hyperbolic factor is positive inside the unit disk")
    }

    /// Hyperbolic disk of radius `big_r` pulled back to the unit parameter
    /// disk by `w = r z`, `r = radius_from_R(big_r)`:
    /// `λ(z) = 2 r / (1 - r^2 |z|^2)`.
    pub fn hyperbolic_truncated(n: usize, big_r: f64) -> Self {
        let r = radius_from_R(big_r);
        Self::from_fn(DiskDomain::unit(), n, |z| Ok(2.0 * r / (1.0 - r * r * z.norm_sqr())))
            .expect("truncated hyperbolic factor is positive")
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn h(&self) -> f64 {
        self.grid.h
    }

    pub fn domain(&self) -> &DiskDomain {
        &self.grid.domain
    }

    pub fn is_masked(&self, i: usize, j: usize) -> bool {
        i < self.grid.n && j < self.grid.n && self.mask[self.grid.index(i, j)]
    }

    pub fn lambda(&self, i: usize, j: usize) -> f64 {
        self.lambda[self.grid.index(i, j)]
    }

    pub fn lambda_values(&self) -> &[f64] {
        &self.lambda
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn masked_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.grid.n)
            .flat_map(move |j| (0..self.grid.n).map(move |i| (i, j)))
            .filter(move |&(i, j)| self.is_masked(i, j))
    }

    /// Masked cell nearest the disk center.
    pub fn center_cell(&self) -> Result<(usize, usize)> {
        let (i, j) = self.grid.center_cell();
        if self.is_masked(i, j) {
            Ok((i, j))
        } else {
            Err(Error::Unreachable { i, j })
        }
    }

    /// `c * λ`
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            grid: self.grid,
            lambda: self.lambda.iter().map(|l| l * c).collect(),
            mask: self.mask.clone(),
        }
    }

    /// Masked cells with at least one unmasked (or off-grid) 8-neighbor.
    pub fn boundary_ring(&self) -> Vec<(usize, usize)> {
        let n = self.grid.n as i64;
        self.masked_cells()
            .filter(|&(i, j)| {
                (-1i64..=1).any(|di| {
                    (-1i64..=1).any(|dj| {
                        let (a, b) = (i as i64 + di, j as i64 + dj);
                        a < 0 || b < 0 || a >= n || b >= n || !self.mask[(b * n + a) as usize]
                    })
                })
            })
            .collect()
    }

    /// Dijkstra from several zero-distance sources over the 32-neighbor
    /// graph, restricted to masked cells for which `allowed` holds.
    fn shortest_paths(&self, sources: &[usize], allowed: Option<&[bool]>) -> Vec<f64> {
        let n = self.grid.n as i64;
        let h = self.grid.h;
        let ok = |k: usize| self.mask[k] && allowed.is_none_or(|a| a[k]);
        let mut dist = vec![f64::INFINITY; self.lambda.len()];
        let mut heap = BinaryHeap::new();
        for &s in sources {
            if ok(s) {
                dist[s] = 0.0;
                heap.push(State { cost: 0.0, node: s });
            }
        }
        while let Some(State { cost, node }) = heap.pop() {
            if cost > dist[node] {
                continue;
            }
            let (i, j) = ((node as i64) % n, (node as i64) / n);
            let lam = self.lambda[node];
            for &(di, dj) in &STENCIL {
                let (a, b) = (i + di, j + dj);
                if a < 0 || b < 0 || a >= n || b >= n {
                    continue;
                }
                let next = (b * n + a) as usize;
                if !ok(next) {
                    continue;
                }
                let step = h * ((di * di + dj * dj) as f64).sqrt();
                let next_cost = cost + step * 0.5 * (lam + self.lambda[next]);
                if next_cost < dist[next] {
                    dist[next] = next_cost;
                    heap.push(State { cost: next_cost, node: next });
                }
            }
        }
        dist
    }
}

#[derive(Copy, Clone, PartialEq)]
struct State {
    cost: f64,
    node: usize,
}

impl Eq for State {}

// min-heap on cost, then on node index
impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .partial_cmp(&self.cost)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Samples the induced conformal factor of a surface on an `n x n` grid.
pub fn sample_metric(data: &WeierstrassData, n: usize) -> Result<GridMetric> {
    if n < MIN_SAMPLE_N {
        return Err(Error::Config(format!("grid resolution must be at least {MIN_SAMPLE_N}, got {n}")));
    }
    GridMetric::from_fn(*data.domain(), n, |z| data.conformal_factor(z))
}

/// Graph geodesic distances from one or more sources.
#[derive(Clone, Debug)]
pub struct DistanceField {
    grid: Grid,
    sources: Vec<(usize, usize)>,
    dist: Vec<f64>,
}

impl DistanceField {
    pub fn sources(&self) -> &[(usize, usize)] {
        &self.sources
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn reached(&self, i: usize, j: usize) -> bool {
        i < self.grid.n && j < self.grid.n && self.dist[self.grid.index(i, j)].is_finite()
    }

    pub fn at(&self, i: usize, j: usize) -> Result<f64> {
        if self.reached(i, j) {
            Ok(self.dist[self.grid.index(i, j)])
        } else {
            Err(Error::Unreachable { i, j })
        }
    }

    /// Raw values, `+inf` where unreached.
    pub fn values(&self) -> &[f64] {
        &self.dist
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { grid: self.grid, sources: self.sources.clone(), dist: self.dist.iter().map(|d| d * c).collect() }
    }
}

pub fn geodesic_distances(metric: &GridMetric, source: (usize, usize)) -> Result<DistanceField> {
    geodesic_distances_within(metric, source, None)
}

pub(crate) fn geodesic_distances_within(
    metric: &GridMetric,
    source: (usize, usize),
    allowed: Option<&[bool]>,
) -> Result<DistanceField> {
    let (i, j) = source;
    let k = metric.grid.index(i, j);
    if !metric.is_masked(i, j) || allowed.is_some_and(|a| !a[k]) {
        return Err(Error::Unreachable { i, j });
    }
    Ok(DistanceField { grid: metric.grid, sources: vec![source], dist: metric.shortest_paths(&[k], allowed) })
}

/// Distance from every cell to the boundary ring, by one multi-source pass.
pub fn boundary_distances(metric: &GridMetric) -> DistanceField {
    let ring = metric.boundary_ring();
    let idx: Vec<usize> = ring.iter().map(|&(i, j)| metric.grid.index(i, j)).collect();
    DistanceField { grid: metric.grid, dist: metric.shortest_paths(&idx, None), sources: ring }
}

/// Distance to the boundary ring of a sub-region given by `allowed`: the ring
/// is the set of allowed cells with a disallowed or unmasked 8-neighbor.
pub(crate) fn boundary_distances_within(metric: &GridMetric, allowed: &[bool]) -> DistanceField {
    let n = metric.n() as i64;
    let inside = |a: i64, b: i64| {
        a >= 0 && b >= 0 && a < n && b < n && metric.mask[(b * n + a) as usize] && allowed[(b * n + a) as usize]
    };
    let mut ring = Vec::new();
    for (i, j) in metric.masked_cells() {
        let (a, b) = (i as i64, j as i64);
        if !inside(a, b) {
            continue;
        }
        let edge = (-1i64..=1).any(|di| (-1i64..=1).any(|dj| !inside(a + di, b + dj)));
        if edge {
            ring.push((i, j));
        }
    }
    let idx: Vec<usize> = ring.iter().map(|&(i, j)| metric.grid.index(i, j)).collect();
    DistanceField { grid: metric.grid, dist: metric.shortest_paths(&idx, Some(allowed)), sources: ring }
}

/// Geodesic distance from `p` to the discrete boundary.
pub fn dist_to_boundary(metric: &GridMetric, p: (usize, usize)) -> Result<f64> {
    let field = geodesic_distances(metric, p)?;
    metric
        .boundary_ring()
        .into_iter()
        .filter_map(|(i, j)| field.at(i, j).ok())
        .min_by(f64::total_cmp)
        .ok_or(Error::Unreachable { i: p.0, j: p.1 })
}

/// Hyperbolic distance from the origin, `log((1 + |z|) / (1 - |z|))`.
pub fn hyperbolic_rho(z: ComplexScalar) -> Result<f64> {
    let r = z.norm();
    if r >= 1.0 {
        return Err(Error::Domain { z });
    }
    Ok(2.0 * r.atanh())
}

/// Hyperbolic distance between two points of the unit disk.
pub fn hyperbolic_distance(a: ComplexScalar, b: ComplexScalar) -> Result<f64> {
    let t = (b - a) / (ComplexScalar::new(1.0, 0.0) - a.conj() * b);
    hyperbolic_rho(t)
}

/// Euclidean radius of the hyperbolic circle of radius `big_r` about the
/// origin: `(e^R - 1) / (e^R + 1)`. Saturates just below one.
#[allow(non_snake_case)]
pub fn radius_from_R(big_r: f64) -> f64 {
    const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;
    (0.5 * big_r).tanh().min(BELOW_ONE)
}

/// Curvature of the sampled metric at every cell where the oracle stencil fits.
pub fn oracle_curvature_range(metric: &GridMetric) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, j) in metric.masked_cells() {
        if let Ok(k) = curvature_oracle(metric, i, j) {
            lo = lo.min(k);
            hi = hi.max(k);
        }
    }
    (lo, hi)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComparisonReport {
    pub big_r: f64,
    pub r: f64,
    pub curvature_min: f64,
    pub curvature_max: f64,
    /// Center-to-circle distance, boundary-layer corrected.
    pub center_to_boundary: f64,
    /// Center-to-boundary distance is within the slack band below `R`.
    pub boundary_warn: bool,
    /// `min (ρ - ρ̂)` over masked cells.
    pub min_slack: f64,
    /// `min (ρ - ρ̂) / ρ̂` over masked cells other than the center.
    pub min_relative_slack: f64,
    pub argmin: ComplexScalar,
}

fn check_comparison_hypotheses(metric: &GridMetric, big_r: f64) -> Result<(f64, f64, f64, bool)> {
    let (kmin, kmax) = oracle_curvature_range(metric);
    if kmin < -1.0 - CURVATURE_HYPOTHESIS_TOL || kmax > CURVATURE_HYPOTHESIS_TOL {
        return Err(Error::Hypothesis(format!(
            "curvature range [{kmin:.6}, {kmax:.6}] leaves [-1, 0]"
        )));
    }
    let center = metric.center_cell()?;
    let to_boundary = boundary_corrected_distance(metric, center)?;
    if to_boundary < big_r * (1.0 - DISTANCE_SLACK) {
        return Err(Error::Hypothesis(format!(
            "center-to-boundary distance {to_boundary:.6} is below R = {big_r}"
        )));
    }
    Ok((kmin, kmax, to_boundary, to_boundary < big_r))
}

/// Distance from `p` to the true circle: graph distance to each ring cell
/// plus the radial gap from that cell to the circle at the cell's `λ`.
pub fn boundary_corrected_distance(metric: &GridMetric, p: (usize, usize)) -> Result<f64> {
    let field = geodesic_distances(metric, p)?;
    let domain = metric.domain();
    metric
        .boundary_ring()
        .into_iter()
        .filter_map(|(i, j)| {
            let d = field.at(i, j).ok()?;
            let gap = (domain.radius - (metric.grid.center(i, j) - domain.center).norm()).max(0.0);
            Some(d + gap * metric.lambda(i, j))
        })
        .min_by(f64::total_cmp)
        .ok_or(Error::Unreachable { i: p.0, j: p.1 })
}

/// Compares distances from the center with those of the hyperbolic disk of
/// radius `big_r` pulled back to the unit parameter disk.
pub fn comparison_check(metric: &GridMetric, big_r: f64) -> Result<ComparisonReport> {
    let (kmin, kmax, to_boundary, warn) = check_comparison_hypotheses(metric, big_r)?;
    let r = radius_from_R(big_r);
    let center = metric.center_cell()?;
    let rho = geodesic_distances(metric, center)?;
    let mut min_slack = f64::INFINITY;
    let mut min_rel = f64::INFINITY;
    let mut argmin = metric.grid.center(center.0, center.1);
    for (i, j) in metric.masked_cells() {
        let Ok(d) = rho.at(i, j) else { continue };
        let w = metric.grid.normalized(i, j) * r;
        let Ok(hyp) = hyperbolic_rho(w) else { continue };
        let slack = d - hyp;
        if slack < min_slack {
            min_slack = slack;
        }
        if hyp > 0.0 {
            let rel = slack / hyp;
            if rel < min_rel {
                min_rel = rel;
                argmin = metric.grid.center(i, j);
            }
        }
    }
    Ok(ComparisonReport {
        big_r,
        r,
        curvature_min: kmin,
        curvature_max: kmax,
        center_to_boundary: to_boundary,
        boundary_warn: warn,
        min_slack,
        min_relative_slack: min_rel,
        argmin,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuperharmonicReport {
    /// Largest five-point Laplacian of `f∘ρ` outside the collar.
    pub max_laplacian: f64,
    pub argmax: ComplexScalar,
    pub tested_cells: usize,
    /// Cells skipped because they lie in the source collar.
    pub collar_cells: usize,
}

/// `f(t) = log((e^t - 1) / (e^t + 1))`
pub fn log_tanh_half(t: f64) -> f64 {
    (0.5 * t).tanh().ln()
}

/// Largest flat five-point Laplacian (unnormalized stencil sum
/// `u_E + u_W + u_N + u_S - 4 u_C`) of `f∘ρ` over cells outside the source
/// collar whose four neighbors are reached.
pub fn superharmonicity_check(rho: &DistanceField, metric: &GridMetric) -> Result<SuperharmonicReport> {
    let &[source] = rho.sources() else {
        return Err(Error::Hypothesis("superharmonicity needs a single-source distance field".into()));
    };
    let n = metric.n();
    let mut max = f64::NEG_INFINITY;
    let mut argmax = metric.grid.center(source.0, source.1);
    let mut tested = 0;
    let mut collar = 0;
    for (i, j) in metric.masked_cells() {
        if i == 0 || j == 0 || i + 1 >= n || j + 1 >= n {
            continue;
        }
        let neighbours = [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)];
        if !rho.reached(i, j) || neighbours.iter().any(|&(a, b)| !rho.reached(a, b)) {
            continue;
        }
        if i.abs_diff(source.0).max(j.abs_diff(source.1)) <= SOURCE_COLLAR {
            collar += 1;
            continue;
        }
        let u = |a: usize, b: usize| log_tanh_half(rho.dist[rho.grid.index(a, b)]);
        let lap = neighbours.iter().map(|&(a, b)| u(a, b)).sum::<f64>() - 4.0 * u(i, j);
        tested += 1;
        if lap > max {
            max = lap;
            argmax = metric.grid.center(i, j);
        }
    }
    Ok(SuperharmonicReport { max_laplacian: max, argmax, tested_cells: tested, collar_cells: collar })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Lemma22Row {
    pub big_r: f64,
    pub cell: (usize, usize),
    pub rho: f64,
    pub bound: f64,
    pub pass: bool,
}

/// For each metric (on the unit parameter disk, geodesic radius `R_k`) and
/// each cell, checks `ρ_k(z) >= log((1 + r_k|z|) / (1 - r_k|z|))` up to the
/// relative distance slack.
pub fn lemma22_lower_bound(metrics: &[(GridMetric, f64)], cells: &[(usize, usize)]) -> Result<Vec<Lemma22Row>> {
    let mut rows = Vec::with_capacity(metrics.len() * cells.len());
    for (metric, big_r) in metrics {
        check_comparison_hypotheses(metric, *big_r)?;
        let r = radius_from_R(*big_r);
        let rho = geodesic_distances(metric, metric.center_cell()?)?;
        for &(i, j) in cells {
            let d = rho.at(i, j)?;
            let bound = hyperbolic_rho(metric.grid.normalized(i, j) * r)?;
            rows.push(Lemma22Row {
                big_r: *big_r,
                cell: (i, j),
                rho: d,
                bound,
                pass: d >= bound * (1.0 - DISTANCE_SLACK),
            });
        }
    }
    Ok(rows)
}

#[derive(Serialize, Deserialize)]
struct MetricHeader {
    domain: DiskDomain,
    n: usize,
}

/// `# {"domain":..,"n":..}` followed by `n` rows of `n` values (`nan` for
/// masked-out cells); row `j` holds cells `(0..n, j)`.
pub fn write_metric_csv(metric: &GridMetric, mut out: impl Write) -> Result<()> {
    let header = MetricHeader { domain: *metric.domain(), n: metric.n() };
    writeln!(out, "# {}", serde_json::to_string(&header)?)?;
    for j in 0..metric.n() {
        let row: Vec<String> = (0..metric.n())
            .map(|i| if metric.is_masked(i, j) { f17(metric.lambda(i, j)) } else { "nan".to_string() })
            .collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn read_metric_csv(input: impl BufRead) -> Result<GridMetric> {
    let mut lines = input.lines();
    let header_line = lines.next().ok_or_else(|| Error::Config("empty metric file".into()))??;
    let json = header_line
        .strip_prefix('#')
        .ok_or_else(|| Error::Config("metric file must start with a `#` JSON header".into()))?;
    let header: MetricHeader = serde_json::from_str(json.trim())?;
    let domain = DiskDomain::new(header.domain.center, header.domain.radius)?;
    let n = header.n;
    if n == 0 {
        return Err(Error::Config("metric grid must have n >= 1".into()));
    }
    let grid = Grid::new(domain, n);
    let mut lambda = vec![0.0; n * n];
    let mut mask = vec![false; n * n];
    let mut rows = 0;
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if rows >= n {
            return Err(Error::Config(format!("metric file has more than {n} rows")));
        }
        let values: Vec<&str> = line.split(',').collect();
        if values.len() != n {
            return Err(Error::Config(format!("row {rows} has {} values, expected {n}", values.len())));
        }
        for (i, v) in values.iter().enumerate() {
            let v = v.trim();
            if v.eq_ignore_ascii_case("nan") || v.is_empty() {
                continue;
            }
            let l: f64 = v.parse().map_err(|_| Error::Config(format!("bad value `{v}` in row {rows}")))?;
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::Config(format!("non-positive conformal factor in row {rows}")));
            }
            lambda[grid.index(i, rows)] = l;
            mask[grid.index(i, rows)] = true;
        }
        rows += 1;
    }
    if rows != n {
        return Err(Error::Config(format!("metric file has {rows} rows, expected {n}")));
    }
    Ok(GridMetric { grid, lambda, mask })
}

/// `u,v,rho,rho_hyperbolic,slack` for every reached cell. The hyperbolic
/// column is the Poincaré distance from the source in normalized disk
/// coordinates (empty for multi-source fields).
pub fn write_distance_csv(field: &DistanceField, mut out: impl Write) -> Result<()> {
    writeln!(out, "u,v,rho,rho_hyperbolic,slack")?;
    let grid = field.grid;
    let source = match field.sources() {
        [s] => Some(grid.normalized(s.0, s.1)),
        _ => None,
    };
    for j in 0..grid.n {
        for i in 0..grid.n {
            let Ok(d) = field.at(i, j) else { continue };
            let z = grid.center(i, j);
            let hyp = source.and_then(|s| hyperbolic_distance(s, grid.normalized(i, j)).ok());
            let (hyp_s, slack_s) = match hyp {
                Some(hv) => (f17(hv), f17(d - hv)),
                None => (String::new(), String::new()),
            };
            writeln!(out, "{},{},{},{},{}", f17(z.re), f17(z.im), f17(d), hyp_s, slack_s)?;
        }
    }
    Ok(())
}
