//! Built-in Weierstrass data with known properties.
//!
//! Names: `plane`, `enneper`, `enneper_k(k)` for `1 <= k <= 5`,
//! `voss(a_1,...,a_j)` for `1 <= j <= 4` with complex `a_l` such as `2i` or
//! `1-1.5i`, and `iso4(theta)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::holo::{ComplexRational, ComplexScalar, Polynomial};
use crate::projgeom::{Hyperplane, HyperplaneSet};
use crate::weierstrass::{DiskDomain, WeierstrassData};

/// Voss poles must be at least this far from the disk center.
pub const VOSS_MIN_POLE_DISTANCE: f64 = 1.5;

pub const MAX_ENNEPER_K: u32 = 5;
pub const MAX_VOSS_POLES: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub data: WeierstrassData,
    pub omitted: HyperplaneSet,
    pub notes: String,
}

/// Name patterns accepted by [`builtin`].
pub fn list() -> Vec<&'static str> {
    vec!["plane", "enneper", "enneper_k(k)", "voss(a_1,...,a_j)", "iso4(theta)"]
}

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

const I: ComplexScalar = ComplexScalar::new(0.0, 1.0);

pub fn builtin(name: &str) -> Result<CatalogEntry> {
    let compact: String = name.chars().filter(|ch| !ch.is_whitespace()).collect();
    let unknown = || Error::UnknownEntry(name.to_string());
    let (head, args) = match compact.split_once('(') {
        Some((head, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
            (head, Some(inner))
        }
        None => (compact.as_str(), None),
    };
    match (head, args) {
        ("plane", None) => Ok(plane()),
        ("enneper", None) => Ok(enneper()),
        ("enneper_k", Some(a)) => {
            let k: u32 = a.parse().map_err(|_| unknown())?;
            enneper_k(k)
        }
        ("voss", Some(a)) => {
            let poles = a.split(',').map(parse_complex).collect::<Option<Vec<_>>>().ok_or_else(unknown)?;
            voss(&poles)
        }
        ("iso4", Some(a)) => {
            let theta: f64 = a.parse().map_err(|_| unknown())?;
            Ok(iso4(theta))
        }
        _ => Err(unknown()),
    }
}

fn constant(v: ComplexScalar) -> ComplexRational {
    ComplexRational::constant(v)
}

fn poly(coeffs: Vec<ComplexScalar>) -> ComplexRational {
    ComplexRational::from_poly(Polynomial::from_coeffs(coeffs))
}

fn build(forms: Vec<ComplexRational>) -> WeierstrassData {
    WeierstrassData::new(forms, DiskDomain::unit()).expect("catalog data has m >= 3")
}

pub fn plane() -> CatalogEntry {
    let m = 3;
    CatalogEntry {
        name: "plane".into(),
        data: build(vec![constant(c(1.0, 0.0)), constant(I), constant(c(0.0, 0.0))]),
        omitted: HyperplaneSet::empty(m),
        notes: "flat plane; constant Gauss map [1 : i : 0]; K = 0".into(),
    }
}

pub fn enneper() -> CatalogEntry {
    CatalogEntry {
        name: "enneper".into(),
        data: build(vec![
            poly(vec![c(0.5, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]),
            poly(vec![c(0.0, 0.5), c(0.0, 0.0), c(0.0, 0.5)]),
            poly(vec![c(0.0, 0.0), c(1.0, 0.0)]),
        ]),
        omitted: HyperplaneSet::empty(3),
        notes: "Enneper surface on the unit disk; λ = 1 + |z|^2".into(),
    }
}

/// `((1 - z^{2k})/2, i(1 + z^{2k})/2, z^k)`
pub fn enneper_k(k: u32) -> Result<CatalogEntry> {
    if !(1..=MAX_ENNEPER_K).contains(&k) {
        return Err(Error::UnknownEntry(format!("enneper_k({k}): k must be in 1..={MAX_ENNEPER_K}")));
    }
    let k = k as usize;
    let zero = c(0.0, 0.0);
    let mut f1 = vec![zero; 2 * k + 1];
    let mut f2 = vec![zero; 2 * k + 1];
    let mut f3 = vec![zero; k + 1];
    f1[0] = c(0.5, 0.0);
    f1[2 * k] = c(-0.5, 0.0);
    f2[0] = c(0.0, 0.5);
    f2[2 * k] = c(0.0, 0.5);
    f3[k] = c(1.0, 0.0);
    Ok(CatalogEntry {
        name: format!("enneper_k({k})"),
        data: build(vec![poly(f1), poly(f2), poly(f3)]),
        omitted: HyperplaneSet::empty(3),
        notes: format!("higher-order Enneper surface, Gauss map z^{k}"),
    })
}

/// Covector of the hyperplane tangent to the quadric at the Gauss-map image
/// of the classical value `w`; pairs with that image as `-(w - z)^2 / 2`.
pub fn tangent_covector(w: ComplexScalar) -> Hyperplane {
    let one = c(1.0, 0.0);
    Hyperplane::new(vec![(one - w * w) * 0.5, I * (one + w * w) * 0.5, w]).expect("nonzero covector")
}

/// Covector tangent at the image of `w = ∞`.
pub fn tangent_covector_at_infinity() -> Hyperplane {
    Hyperplane::new(vec![c(-1.0, 0.0), I, c(0.0, 0.0)]).expect("nonzero covector")
}

/// Classical data `f = prod (z - a_l)^{-1}`, `g = z`, in the form
/// `(f(1 - g^2)/2, i f(1 + g^2)/2, f g)`. The Gauss map omits the tangent
/// hyperplanes at the images of each `a_l` and of `∞`.
pub fn voss(poles: &[ComplexScalar]) -> Result<CatalogEntry> {
    if poles.is_empty() || poles.len() > MAX_VOSS_POLES {
        return Err(Error::UnknownEntry(format!("voss needs 1..={MAX_VOSS_POLES} poles, got {}", poles.len())));
    }
    if let Some(p) = poles.iter().find(|p| p.norm() < VOSS_MIN_POLE_DISTANCE) {
        return Err(Error::InvalidData(format!(
            "voss pole {p} is closer than {VOSS_MIN_POLE_DISTANCE} to the disk center"
        )));
    }
    let den = poles
        .iter()
        .fold(Polynomial::one(), |acc, &a| acc.mul(&Polynomial::linear_root(a)));
    let zero = c(0.0, 0.0);
    let nums = [
        Polynomial::from_coeffs(vec![c(0.5, 0.0), zero, c(-0.5, 0.0)]),
        Polynomial::from_coeffs(vec![c(0.0, 0.5), zero, c(0.0, 0.5)]),
        Polynomial::from_coeffs(vec![zero, c(1.0, 0.0)]),
    ];
    let forms = nums
        .into_iter()
        .map(|num| ComplexRational::new(num, den.clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut planes: Vec<Hyperplane> = poles.iter().map(|&a| tangent_covector(a)).collect();
    planes.push(tangent_covector_at_infinity());
    let label: Vec<String> = poles.iter().map(|&a| format_complex(a)).collect();
    Ok(CatalogEntry {
        name: format!("voss({})", label.join(",")),
        data: build(forms),
        omitted: HyperplaneSet::new(3, planes)?,
        notes: "Voss-type data with Gauss map g = z; omits the tangent planes at the poles and at infinity".into(),
    })
}

/// `((1 - z^2)/2, i(1 + z^2)/2, z cos θ, z sin θ)` in R^4.
pub fn iso4(theta: f64) -> CatalogEntry {
    let zero = c(0.0, 0.0);
    CatalogEntry {
        name: format!("iso4({theta})"),
        data: build(vec![
            poly(vec![c(0.5, 0.0), zero, c(-0.5, 0.0)]),
            poly(vec![c(0.0, 0.5), zero, c(0.0, 0.5)]),
            poly(vec![zero, c(theta.cos(), 0.0)]),
            poly(vec![zero, c(theta.sin(), 0.0)]),
        ]),
        omitted: HyperplaneSet::empty(4),
        notes: "Enneper-type surface in R^4".into(),
    }
}

/// Parses `2`, `-1.5`, `2i`, `-i`, `1+2i`, `0.5-1e-1i`.
pub fn parse_complex(text: &str) -> Option<ComplexScalar> {
    let s: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().ok().map(|re| c(re, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() { 0.0 } else { re_part.parse::<f64>().ok()? };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().ok()?,
    };
    Some(c(re, im))
}

fn format_complex(z: ComplexScalar) -> String {
    match (z.re, z.im) {
        (re, 0.0) => format!("{re}"),
        (0.0, im) => format!("{im}i"),
        (re, im) if im < 0.0 => format!("{re}{im}i"),
        (re, im) => format!("{re}+{im}i"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::{general_position, omission_margin};

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("2"), Some(c(2.0, 0.0)));
        assert_eq!(parse_complex("-2"), Some(c(-2.0, 0.0)));
        assert_eq!(parse_complex("2i"), Some(c(0.0, 2.0)));
        assert_eq!(parse_complex("-i"), Some(c(0.0, -1.0)));
        assert_eq!(parse_complex("1+2i"), Some(c(1.0, 2.0)));
        assert_eq!(parse_complex("0.5-1e-1i"), Some(c(0.5, -0.1)));
        assert_eq!(parse_complex("1e-3"), Some(c(1e-3, 0.0)));
        assert_eq!(parse_complex("abc"), None);
        assert_eq!(format_complex(c(1.0, -2.5)), "1-2.5i");
        assert_eq!(parse_complex(&format_complex(c(-1.5, 2.0))), Some(c(-1.5, 2.0)));
    }

    #[test]
    fn every_entry_validates() {
        for name in ["plane", "enneper", "enneper_k(1)", "enneper_k(5)", "voss(2,-2,2i)", "voss(1.5i)", "iso4(0.7)"] {
            let e = builtin(name).unwrap();
            let report = e.data.validate();
            assert!(report.valid, "{name}: {:?}", report.failures());
        }
    }

    #[test]
    fn enneper_k1_is_enneper() {
        assert_eq!(builtin("enneper_k(1)").unwrap().data, builtin("enneper").unwrap().data);
    }

    #[test]
    fn iso4_isotropy_exact() {
        let e = builtin("iso4(0.7)").unwrap();
        assert_eq!(e.data.m(), 4);
        assert!(e.data.validate().isotropy);
    }

    #[test]
    fn voss_omits_designed_planes() {
        let e = builtin("voss(2, -2, 2i)").unwrap();
        assert_eq!(e.omitted.len(), 4);
        assert!(general_position(&e.omitted).in_general_position);
        let margins = omission_margin(&e.data, &e.omitted, 65).unwrap();
        assert!(margins.iter().all(|m| m.min_margin > 0.0), "{margins:?}");
    }

    #[test]
    fn tangent_plane_touches_at_one_point() {
        let w = c(0.3, -0.2);
        let h = tangent_covector(w);
        let e = builtin("voss(2)").unwrap();
        let g = e.data.gauss_map(w).unwrap();
        assert!(crate::projgeom::incidence_margin(&g, &h) < 1e-15);
    }

    #[test]
    fn rejected_names() {
        assert!(matches!(builtin("catenoid"), Err(Error::UnknownEntry(_))));
        assert!(matches!(builtin("enneper_k(6)"), Err(Error::UnknownEntry(_))));
        assert!(matches!(builtin("voss(1,2,3,4,5)"), Err(Error::UnknownEntry(_))));
        assert!(matches!(builtin("voss(1.2)"), Err(Error::InvalidData(_))));
        assert!(builtin("iso4(x)").is_err());
    }
}
