//! Points and hyperplanes of complex projective space.

use itertools::Itertools;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holo::{ComplexScalar, POLE_TOL};
use crate::metricgeo::Grid;
use crate::weierstrass::WeierstrassData;

/// Relative singular-value threshold for the rank test.
pub const RANK_TOL: f64 = 1e-9;

fn norm(v: &[ComplexScalar]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn all_zero(v: &[ComplexScalar]) -> bool {
    v.iter().all(|c| c.re == 0.0 && c.im == 0.0)
}

/// Homogeneous coordinates of a point of P^{m-1}(C).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjPoint {
    homog: Vec<ComplexScalar>,
}

impl ProjPoint {
    pub fn new(homog: Vec<ComplexScalar>) -> Result<Self> {
        if homog.is_empty() || all_zero(&homog) {
            return Err(Error::InvalidData("projective point with all coordinates zero".into()));
        }
        Ok(Self { homog })
    }

    pub fn homog(&self) -> &[ComplexScalar] {
        &self.homog
    }

    pub fn dim(&self) -> usize {
        self.homog.len()
    }

    /// Projective equality up to `tol` in Fubini–Study distance.
    pub fn same_point(&self, other: &ProjPoint, tol: f64) -> bool {
        self.dim() == other.dim() && fubini_study_dist(self, other) <= tol
    }
}

/// Hyperplane `{v : sum a_i v_i = 0}` given by its covector `a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hyperplane {
    covector: Vec<ComplexScalar>,
}

impl Hyperplane {
    pub fn new(covector: Vec<ComplexScalar>) -> Result<Self> {
        if covector.is_empty() || all_zero(&covector) {
            return Err(Error::InvalidData("hyperplane covector is zero".into()));
        }
        Ok(Self { covector })
    }

    /// The coordinate hyperplane `v_k = 0` in dimension `m`.
    pub fn coordinate(m: usize, k: usize) -> Self {
        let mut covector = vec![ComplexScalar::new(0.0, 0.0); m];
        covector[k] = ComplexScalar::new(1.0, 0.0);
        Self { covector }
    }

    pub fn covector(&self) -> &[ComplexScalar] {
        &self.covector
    }

    /// Linear (non-conjugated) pairing with a vector.
    pub fn pair(&self, v: &[ComplexScalar]) -> ComplexScalar {
        self.covector.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperplaneSet {
    m: usize,
    planes: Vec<Hyperplane>,
}

#[derive(Deserialize)]
struct HyperplaneSetRepr {
    m: usize,
    planes: Vec<Hyperplane>,
}

impl<'de> Deserialize<'de> for HyperplaneSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = HyperplaneSetRepr::deserialize(d)?;
        for p in &r.planes {
            Hyperplane::new(p.covector.clone()).map_err(serde::de::Error::custom)?;
        }
        HyperplaneSet::new(r.m, r.planes).map_err(serde::de::Error::custom)
    }
}

impl HyperplaneSet {
    pub fn new(m: usize, planes: Vec<Hyperplane>) -> Result<Self> {
        if let Some(bad) = planes.iter().position(|p| p.covector.len() != m) {
            return Err(Error::InvalidData(format!("hyperplane {bad} has a covector of the wrong length (m = {m})")));
        }
        Ok(Self { m, planes })
    }

    pub fn empty(m: usize) -> Self {
        Self { m, planes: Vec::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn planes(&self) -> &[Hyperplane] {
        &self.planes
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralPosition {
    pub in_general_position: bool,
    /// First rank-deficient subset in lexicographic order.
    pub witness: Option<Vec<usize>>,
}

fn rank_full(rows: &[&[ComplexScalar]], m: usize) -> bool {
    let k = rows.len();
    let mat = DMatrix::<ComplexScalar>::from_fn(k, m, |r, c| rows[r][c]);
    let sv = mat.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    max > 0.0 && min > RANK_TOL * max
}

/// Every subset of `min(q, m)` covectors must have full rank.
pub fn general_position(set: &HyperplaneSet) -> GeneralPosition {
    let k = set.len().min(set.m);
    for subset in (0..set.len()).combinations(k) {
        let rows: Vec<&[ComplexScalar]> = subset.iter().map(|&i| set.planes[i].covector()).collect();
        if !rank_full(&rows, set.m) {
            return GeneralPosition { in_general_position: false, witness: Some(subset) };
        }
    }
    GeneralPosition { in_general_position: true, witness: None }
}

/// `|<a, v>| / (|a| |v|)`, zero exactly when `p` lies on `h`.
pub fn incidence_margin(p: &ProjPoint, h: &Hyperplane) -> f64 {
    let num = h.pair(&p.homog).norm();
    (num / (norm(&h.covector) * norm(&p.homog))).min(1.0)
}

/// Fubini–Study distance in `[0, π/2]`.
pub fn fubini_study_dist(p: &ProjPoint, q: &ProjPoint) -> f64 {
    let (np, nq) = (norm(&p.homog), norm(&q.homog));
    let inner: ComplexScalar = p.homog.iter().zip(&q.homog).map(|(v, w)| v * w.conj()).sum();
    if inner.norm() == 0.0 {
        return std::f64::consts::FRAC_PI_2;
    }
    // chord between unit representatives after phase alignment: 2 sin(θ/2)
    let phase = inner / inner.norm();
    let chord = p
        .homog
        .iter()
        .zip(&q.homog)
        .map(|(v, w)| (v / np - phase * w / nq).norm_sqr())
        .sum::<f64>()
        .sqrt();
    (2.0 * (0.5 * chord).min(1.0).asin()).min(std::f64::consts::FRAC_PI_2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaneMargin {
    pub plane_index: usize,
    pub min_margin: f64,
    pub argmin: ComplexScalar,
}

/// Sampled minimum of the incidence margin between the Gauss map and each
/// plane, over the cell centers of an `n x n` grid on the data's disk.
/// A positive minimum is evidence of omission on the sample, not a proof.
pub fn omission_margin(data: &WeierstrassData, set: &HyperplaneSet, grid_n: usize) -> Result<Vec<PlaneMargin>> {
    if set.m != data.m() {
        return Err(Error::InvalidData(format!(
            "hyperplanes live in dimension {} but the data has m = {}",
            set.m,
            data.m()
        )));
    }
    let grid = Grid::new(*data.domain(), grid_n);
    let mut out: Vec<PlaneMargin> = (0..set.len())
        .map(|plane_index| PlaneMargin {
            plane_index,
            min_margin: f64::INFINITY,
            argmin: ComplexScalar::new(f64::NAN, f64::NAN),
        })
        .collect();
    for (i, j) in grid.masked_cells() {
        let z = grid.center(i, j);
        let g = data.gauss_map(z)?;
        for (slot, h) in out.iter_mut().zip(&set.planes) {
            let m = incidence_margin(&g, h);
            if m < slot.min_margin {
                slot.min_margin = m;
                slot.argmin = z;
            }
        }
    }
    Ok(out)
}

/// `α(g̃(z)) / β(g̃(z))` for covectors `α = a`, `β = b`.
pub fn coordinate_function(
    data: &WeierstrassData,
    a: &Hyperplane,
    b: &Hyperplane,
    z: ComplexScalar,
) -> Result<ComplexScalar> {
    let g = data.gauss_map(z)?;
    let top = a.pair(g.homog());
    let bottom = b.pair(g.homog());
    if bottom.norm() < POLE_TOL * (1.0 + top.norm()) {
        return Err(Error::DivisionByIncidence);
    }
    Ok(top / bottom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn real_plane(v: &[f64]) -> Hyperplane {
        Hyperplane::new(v.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
    }

    fn pt(v: &[ComplexScalar]) -> ProjPoint {
        ProjPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn general_position_examples() {
        let simplex = HyperplaneSet::new(
            3,
            vec![
                real_plane(&[1.0, 0.0, 0.0]),
                real_plane(&[0.0, 1.0, 0.0]),
                real_plane(&[0.0, 0.0, 1.0]),
                real_plane(&[1.0, 1.0, 1.0]),
            ],
        )
        .unwrap();
        assert!(general_position(&simplex).in_general_position);

        let dependent = HyperplaneSet::new(
            3,
            vec![real_plane(&[1.0, 0.0, 0.0]), real_plane(&[0.0, 1.0, 0.0]), real_plane(&[1.0, 1.0, 0.0])],
        )
        .unwrap();
        let gp = general_position(&dependent);
        assert!(!gp.in_general_position);
        assert_eq!(gp.witness, Some(vec![0, 1, 2]));
    }

    #[test]
    fn fewer_planes_than_dimension() {
        let two = HyperplaneSet::new(3, vec![real_plane(&[1.0, 0.0, 0.0]), real_plane(&[2.0, 0.0, 0.0])]).unwrap();
        assert_eq!(general_position(&two).witness, Some(vec![0, 1]));
    }

    #[test]
    fn margin_examples() {
        let e1 = Hyperplane::coordinate(3, 0);
        let e3 = Hyperplane::coordinate(3, 2);
        assert_eq!(incidence_margin(&pt(&[c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]), &e3), 0.0);
        assert!((incidence_margin(&pt(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]), &e1) - 1.0).abs() < 1e-15);
        let m = incidence_margin(&pt(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]), &e1);
        assert!((m - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn fubini_study_examples() {
        let a = pt(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let b = pt(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let d = pt(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(fubini_study_dist(&a, &a), 0.0);
        assert!((fubini_study_dist(&a, &b) - FRAC_PI_2).abs() < 1e-15);
        assert!((fubini_study_dist(&a, &d) - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn coordinate_function_examples() {
        let data = catalog::builtin("enneper").unwrap().data;
        let e1 = Hyperplane::coordinate(3, 0);
        let e2 = Hyperplane::coordinate(3, 1);
        let e3 = Hyperplane::coordinate(3, 2);
        let z0 = c(0.0, 0.0);
        assert!((coordinate_function(&data, &e1, &e2, z0).unwrap() - c(0.0, -1.0)).norm() < 1e-15);
        assert_eq!(coordinate_function(&data, &e3, &e1, z0).unwrap(), c(0.0, 0.0));
        assert!((coordinate_function(&data, &e2, &e2, c(0.3, 0.2)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(matches!(coordinate_function(&data, &e1, &e3, z0), Err(Error::DivisionByIncidence)));
    }

    #[test]
    fn omission_examples() {
        let plane = catalog::builtin("plane").unwrap().data;
        let set = HyperplaneSet::new(3, vec![Hyperplane::coordinate(3, 0)]).unwrap();
        let margins = omission_margin(&plane, &set, 33).unwrap();
        assert!((margins[0].min_margin - FRAC_1_SQRT_2).abs() < 1e-15);

        let enneper = catalog::builtin("enneper").unwrap().data;
        let set = HyperplaneSet::new(3, vec![Hyperplane::coordinate(3, 2)]).unwrap();
        let margins = omission_margin(&enneper, &set, 33).unwrap();
        assert_eq!(margins[0].min_margin, 0.0);
        assert!(margins[0].argmin.norm() < 1e-15);

        let wrong_dim = HyperplaneSet::new(4, vec![Hyperplane::coordinate(4, 0)]).unwrap();
        assert!(omission_margin(&enneper, &wrong_dim, 33).is_err());
    }

    #[test]
    fn json_schema() {
        let set: HyperplaneSet =
            serde_json::from_str(r#"{"m": 3, "planes": [[[1,0],[0,0],[0,0]], [[0,0],[0,1],[0,0]]]}"#).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.planes()[1].covector()[1], c(0.0, 1.0));
        assert!(serde_json::from_str::<HyperplaneSet>(r#"{"m": 3, "planes": [[[1,0],[0,0]]]}"#).is_err());
        assert!(serde_json::from_str::<HyperplaneSet>(r#"{"m": 2, "planes": [[[0,0],[0,0]]]}"#).is_err());
    }
}
