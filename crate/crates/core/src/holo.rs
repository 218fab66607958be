//! Polynomials and rational functions of one complex variable.
//!
//! Coefficients are `f64` pairs. Arithmetic is structural: sums and products
//! are formed coefficient by coefficient, and a coefficient is declared zero
//! only when it is the result of cancellation of at least ten digits relative
//! to the terms that produced it. A coefficient that was never the result of
//! cancellation is kept however small it is, so `1e-30` is not zero.
//!
//! Rational functions are kept reduced: the approximate gcd of numerator and
//! denominator (monic Euclidean algorithm) locates the common roots, which are
//! refined and deflated out one at a time; the denominator is normalized
//! monic.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Largest polynomial degree accepted from user input.
pub const MAX_DEGREE: usize = 32;

/// Relative tolerance separating a pole from roundoff in [`ComplexRational::eval`].
pub const POLE_TOL: f64 = 1e-12;

/// Cancellation threshold for the zero test of a computed coefficient.
const ZERO_TOL: f64 = 1e-10;

#[inline]
fn clean(value: ComplexScalar, magnitude: f64) -> ComplexScalar {
    if value.norm() <= ZERO_TOL * magnitude {
        ComplexScalar::new(0.0, 0.0)
    } else {
        value
    }
}

/// Dense polynomial, lowest degree first. The zero polynomial has no
/// coefficients; otherwise the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<ComplexScalar>,
}

impl Polynomial {
    /// Checked constructor for external input: finite coefficients, degree at
    /// most [`MAX_DEGREE`] after trimming trailing zeros.
    pub fn new(coeffs: Vec<ComplexScalar>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let p = Self::from_coeffs(coeffs);
        match p.degree() {
            Some(d) if d > MAX_DEGREE => Err(Error::Degree { degree: d, max: MAX_DEGREE }),
            _ => Ok(p),
        }
    }

    /// Unchecked constructor; trims exact trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<ComplexScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| ComplexScalar::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ComplexScalar::new(1.0, 0.0))
    }

    pub fn constant(c: ComplexScalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: ComplexScalar, k: usize) -> Self {
        let mut coeffs = vec![ComplexScalar::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `z - a`
    pub fn linear_root(a: ComplexScalar) -> Self {
        Self::from_coeffs(vec![-a, ComplexScalar::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[ComplexScalar] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<ComplexScalar> {
        self.coeffs.last().copied()
    }

    fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: ComplexScalar) -> ComplexScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexScalar::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = ComplexScalar::new(0.0, 0.0);
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(zero);
                let b = other.coeffs.get(k).copied().unwrap_or(zero);
                clean(a + b, a.norm() + b.norm())
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut sum = vec![ComplexScalar::new(0.0, 0.0); n];
        let mut mag = vec![0.0f64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                sum[i + j] += a * b;
                mag[i + j] += a.norm() * b.norm();
            }
        }
        Self::from_coeffs(sum.into_iter().zip(mag).map(|(s, m)| clean(s, m)).collect())
    }

    /// Normalized so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = lc.inv();
                let mut p = self.scale(inv);
                if let Some(last) = p.coeffs.last_mut() {
                    *last = ComplexScalar::new(1.0, 0.0);
                }
                p
            }
            None => Self::zero(),
        }
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let lc = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ComplexScalar::new(0.0, 0.0); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd] / lc;
            quot[k] = q;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= q * d;
            }
            rem[k + dd] = ComplexScalar::new(0.0, 0.0);
        }
        let quot = Self::from_coeffs(quot);
        let scale = self.max_abs().max(quot.max_abs() * divisor.max_abs());
        rem.truncate(dd);
        let rem = Self::from_coeffs(rem.into_iter().map(|c| clean(c, scale)).collect());
        (quot, rem)
    }

    /// Quotient by `z - r`, discarding the remainder. Forward (from the
    /// leading coefficient) for `|r| <= 1`, backward otherwise, which keeps
    /// the recurrence stable.
    pub fn deflate(&self, r: ComplexScalar) -> Self {
        let Some(n) = self.degree() else {
            return Self::zero();
        };
        if n == 0 {
            return Self::zero();
        }
        let a = &self.coeffs;
        let mut q = vec![ComplexScalar::new(0.0, 0.0); n];
        if r.norm() <= 1.0 {
            q[n - 1] = a[n];
            for k in (1..n).rev() {
                q[k - 1] = a[k] + r * q[k];
            }
        } else {
            q[0] = -a[0] / r;
            for k in 1..n {
                q[k] = (q[k - 1] - a[k]) / r;
            }
        }
        Self::from_coeffs(q)
    }

    /// Monic approximate gcd. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Roots as eigenvalues of the companion matrix, refined by a few Newton
    /// steps. Empty for constants and the zero polynomial.
    pub fn roots(&self) -> Vec<ComplexScalar> {
        let Some(n) = self.degree() else {
            return Vec::new();
        };
        if n == 0 {
            return Vec::new();
        }
        let p = self.monic();
        if n == 1 {
            return vec![-p.coeffs[0]];
        }
        let mut companion = DMatrix::<ComplexScalar>::zeros(n, n);
        for i in 1..n {
            companion[(i, i - 1)] = ComplexScalar::new(1.0, 0.0);
        }
        for i in 0..n {
            companion[(i, n - 1)] = -p.coeffs[i];
        }
        let t = companion.schur().unpack().1;
        let mut roots = Vec::with_capacity(n);
        let mut k = 0;
        while k < n {
            if k + 1 < n && t[(k + 1, k)].norm() > 0.0 {
                // Unreduced 2x2 block.
                let (a, b, c, d) = (t[(k, k)], t[(k, k + 1)], t[(k + 1, k)], t[(k + 1, k + 1)]);
                let half_tr = (a + d) * 0.5;
                let disc = (half_tr * half_tr - (a * d - b * c)).sqrt();
                roots.push(half_tr + disc);
                roots.push(half_tr - disc);
                k += 2;
            } else {
                roots.push(t[(k, k)]);
                k += 1;
            }
        }
        let dp = p.derivative();
        for r in &mut roots {
            for _ in 0..3 {
                let d = dp.eval(*r);
                if d.norm() == 0.0 {
                    break;
                }
                let step = p.eval(*r) / d;
                if !step.re.is_finite() || !step.im.is_finite() || step.norm() > 1e-3 * (1.0 + r.norm()) {
                    break;
                }
                *r -= step;
            }
        }
        roots
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Polynomial::new(pairs.into_iter().map(|[re, im]| ComplexScalar::new(re, im)).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// Reduced quotient of polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexRational {
    num: Polynomial,
    den: Polynomial,
}

impl ComplexRational {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: ComplexScalar) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    fn reduced(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = (num, den);
        if den.degree().unwrap_or(0) > 0 && num.degree().unwrap_or(0) > 0 {
            for r in common_roots(&num.gcd(&den), &num, &den) {
                num = num.deflate(r);
                den = den.deflate(r);
            }
        }
        let lc = den.leading().expect("nonzero denominator");
        let inv = lc.inv();
        Self { num: num.scale(inv), den: den.monic() }
    }

    /// Re-runs the reduction; identity on an already reduced value.
    pub fn reduce(&self) -> Self {
        Self::reduced(self.num.clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, z: ComplexScalar) -> Result<ComplexScalar> {
        let n = self.num.eval(z);
        let d = self.den.eval(z);
        if d.norm() < POLE_TOL * (1.0 + n.norm()) {
            return Err(Error::Pole { z });
        }
        Ok(n / d)
    }

    pub fn derivative(&self) -> Self {
        let top = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::reduced(top, self.den.mul(&self.den))
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        if s.norm() == 0.0 {
            return Self::zero();
        }
        Self { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::reduced(self.num.add(&other.num), self.den.clone());
        }
        let top = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::reduced(top, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Largest degree among numerator and denominator.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }
}

/// Roots of the common factor `g`, with multiplicity. The Euclidean gcd
/// carries the roundoff of every remainder step; its roots are common roots
/// of numerator and denominator, so refine them there. A cluster of `k` computed roots stands for a `k`-fold
/// root: its centroid is accurate where the individual roots are only good
/// to `eps^(1/k)`, and it is a simple root of the `(k-1)`-th derivative.
fn common_roots(g: &Polynomial, num: &Polynomial, den: &Polynomial) -> Vec<ComplexScalar> {
    if g.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut clusters: Vec<Vec<ComplexScalar>> = Vec::new();
    for r in g.roots() {
        match clusters.iter_mut().find(|c| (c[0] - r).norm() <= 1e-4 * (1.0 + r.norm())) {
            Some(c) => c.push(r),
            None => clusters.push(vec![r]),
        }
    }
    let mut out = Vec::new();
    for cluster in clusters {
        let k = cluster.len();
        let mut r = cluster.iter().sum::<ComplexScalar>() / k as f64;
        // Newton on the (k-1)-th derivative of whichever of num, den is
        // better conditioned there
        let candidates: Vec<(Polynomial, Polynomial)> = [num, den]
            .iter()
            .map(|p| {
                let q = (1..k).fold((*p).clone(), |acc, _| acc.derivative());
                let dq = q.derivative();
                (q, dq)
            })
            .collect();
        let (q, dq) = candidates
            .iter()
            .max_by(|(q1, d1), (q2, d2)| {
                (d1.eval(r).norm() / q1.max_abs().max(f64::MIN_POSITIVE))
                    .total_cmp(&(d2.eval(r).norm() / q2.max_abs().max(f64::MIN_POSITIVE)))
            })
            .expect("two candidates");
        for _ in 0..4 {
            let d = dq.eval(r);
            if d.norm() == 0.0 {
                break;
            }
            let next = r - q.eval(r) / d;
            if !(next.re.is_finite() && next.im.is_finite()) || q.eval(next).norm() > q.eval(r).norm() {
                break;
            }
            r = next;
        }
        out.extend(std::iter::repeat_n(r, k));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: Polynomial,
    #[serde(default = "Polynomial::one")]
    den: Polynomial,
}

impl Serialize for ComplexRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr { num: self.num.clone(), den: self.den.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RationalRepr::deserialize(d)?;
        ComplexRational::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn close(a: ComplexScalar, b: ComplexScalar, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn horner_examples() {
        let sq = Polynomial::from_real(&[0.0, 0.0, 1.0]);
        assert_eq!(sq.eval(c(2.0, 0.0)), c(4.0, 0.0));
        let k = Polynomial::from_real(&[5.0]);
        assert_eq!(k.eval(c(-3.2, 7.0)), c(5.0, 0.0));
        let p = Polynomial::from_coeffs(vec![c(1.0, 0.0), c(0.0, 1.0)]);
        assert!(p.eval(c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        assert!(Polynomial::from_real(&[3.0]).derivative().is_zero());
        let d = Polynomial::from_real(&[0.0, 0.0, 1.0]).derivative();
        assert_eq!(d, Polynomial::from_real(&[0.0, 2.0]));
    }

    #[test]
    fn degree_limit_enforced() {
        let ok = Polynomial::new(vec![c(1.0, 0.0); MAX_DEGREE + 1]);
        assert!(ok.is_ok());
        let too_big = Polynomial::new(vec![c(1.0, 0.0); MAX_DEGREE + 2]);
        assert!(matches!(too_big, Err(Error::Degree { .. })));
        assert!(matches!(Polynomial::new(vec![c(f64::NAN, 0.0)]), Err(Error::NonFinite)));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = Polynomial::linear_root(c(1.0, 0.0)).mul(&Polynomial::linear_root(c(0.0, 2.0)));
        let b = Polynomial::linear_root(c(1.0, 0.0)).mul(&Polynomial::linear_root(c(-3.0, 0.0)));
        let g = a.gcd(&b);
        assert_eq!(g.degree(), Some(1));
        assert!(close(g.coeffs()[0], c(-1.0, 0.0), 1e-12));
        let coprime = Polynomial::from_real(&[0.0, 2.0]).gcd(&Polynomial::from_real(&[-1.0, 0.0, 1.0]));
        assert_eq!(coprime.degree(), Some(0));
    }

    #[test]
    fn roots_of_product() {
        let want = [c(2.0, 0.0), c(-2.0, 0.0), c(0.0, 2.0), c(0.3, -0.1)];
        let p = want
            .iter()
            .fold(Polynomial::one(), |acc, &r| acc.mul(&Polynomial::linear_root(r)));
        let got = p.roots();
        assert_eq!(got.len(), 4);
        for w in want {
            assert!(got.iter().any(|g| (g - w).norm() < 1e-10), "missing root {w}");
        }
    }

    #[test]
    fn rational_eval_and_poles() {
        let r = ComplexRational::new(Polynomial::one(), Polynomial::linear_root(c(2.0, 0.0))).unwrap();
        assert!(close(r.eval(c(3.0, 0.0)).unwrap(), c(1.0, 0.0), 1e-15));
        assert!(matches!(r.eval(c(2.0, 0.0)), Err(Error::Pole { .. })));

        let num = Polynomial::from_real(&[-1.0, 0.0, 1.0]);
        let den = Polynomial::from_real(&[-1.0, 1.0]);
        let r = ComplexRational::new(num, den).unwrap();
        assert_eq!(r.den().degree(), Some(0));
        assert!(close(r.eval(c(1.0, 0.0)).unwrap(), c(2.0, 0.0), 1e-12));
    }

    #[test]
    fn deflation_both_directions() {
        // (z - 0.5)(z - 3)(z + 2i)
        let p = Polynomial::linear_root(c(0.5, 0.0))
            .mul(&Polynomial::linear_root(c(3.0, 0.0)))
            .mul(&Polynomial::linear_root(c(0.0, -2.0)));
        let q = p.deflate(c(3.0, 0.0)).deflate(c(0.5, 0.0));
        assert_eq!(q.degree(), Some(1));
        assert!(close(q.coeffs()[0], c(0.0, 2.0), 1e-15));
        assert!(close(q.coeffs()[1], c(1.0, 0.0), 1e-15));
    }

    #[test]
    fn repeated_common_factor_cancels() {
        let f = Polynomial::linear_root(c(1.5, 0.0));
        let f2 = f.mul(&f);
        let r = ComplexRational::new(f2.mul(&Polynomial::from_real(&[1.0, 1.0])), f2.mul(&f)).unwrap();
        assert_eq!(r.num().degree(), Some(1));
        assert_eq!(r.den().degree(), Some(1));
        assert!(close(r.eval(c(0.0, 0.0)).unwrap(), c(-1.0 / 1.5, 0.0), 1e-13));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            ComplexRational::new(Polynomial::one(), Polynomial::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn rational_derivative_examples() {
        assert!(ComplexRational::constant(c(4.0, 1.0)).derivative().is_zero());
        let inv_z = ComplexRational::new(Polynomial::one(), Polynomial::from_real(&[0.0, 1.0])).unwrap();
        let d = inv_z.derivative();
        assert_eq!(d.num(), &Polynomial::from_real(&[-1.0]));
        assert_eq!(d.den(), &Polynomial::from_real(&[0.0, 0.0, 1.0]));
    }

    #[test]
    fn field_arithmetic_examples() {
        let z = ComplexRational::from_poly(Polynomial::from_real(&[0.0, 1.0]));
        let inv_z = ComplexRational::new(Polynomial::one(), Polynomial::from_real(&[0.0, 1.0])).unwrap();
        let one = z.mul(&inv_z);
        assert_eq!(one, ComplexRational::constant(c(1.0, 0.0)));

        let r = ComplexRational::new(Polynomial::from_real(&[1.0, 2.0]), Polynomial::from_real(&[3.0, 0.0, 1.0]))
            .unwrap();
        assert!(r.sub(&r).is_zero());

        let a = ComplexRational::new(Polynomial::one(), Polynomial::from_real(&[-1.0, 1.0])).unwrap();
        let b = ComplexRational::new(Polynomial::one(), Polynomial::from_real(&[1.0, 1.0])).unwrap();
        let s = a.add(&b);
        assert_eq!(s.num(), &Polynomial::from_real(&[0.0, 2.0]));
        assert_eq!(s.den(), &Polynomial::from_real(&[-1.0, 0.0, 1.0]));
    }

    #[test]
    fn zero_test_is_exact_not_thresholded() {
        assert!(ComplexRational::zero().is_zero());
        let z = Polynomial::from_real(&[0.0, 1.0]);
        assert!(ComplexRational::from_poly(z.sub(&z)).is_zero());
        let tiny = ComplexRational::constant(c(1e-30, 0.0));
        assert!(!tiny.is_zero());
    }

    #[test]
    fn json_shape() {
        let r = ComplexRational::new(Polynomial::from_real(&[1.0]), Polynomial::from_real(&[-2.0, 1.0])).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"num":[[1.0,0.0]],"den":[[-2.0,0.0],[1.0,0.0]]}"#);
        let back: ComplexRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<ComplexRational>(r#"{"num":[[1,0]],"den":[]}"#).is_err());
    }
}
