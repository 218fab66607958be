//! Gauss–Legendre rules on [-1, 1] and composite integration of holomorphic
//! functions along straight segments.

use std::f64::consts::PI;

use crate::holo::ComplexScalar;

/// Nodes and weights of the `order`-point Gauss–Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre recurrence.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Integral of `f(z) dz` along the segment `a -> b` split into `panels`
    /// equal pieces. `f` may fail (e.g. at a pole); the first error is returned.
    pub fn integrate_segment<E>(
        &self,
        a: ComplexScalar,
        b: ComplexScalar,
        panels: usize,
        mut f: impl FnMut(ComplexScalar) -> Result<ComplexScalar, E>,
    ) -> Result<ComplexScalar, E> {
        let mut total = ComplexScalar::new(0.0, 0.0);
        if panels == 0 || a == b {
            return Ok(total);
        }
        let step = (b - a) / panels as f64;
        let half = step * 0.5;
        for k in 0..panels {
            let mid = a + step * (k as f64 + 0.5);
            let mut panel = ComplexScalar::new(0.0, 0.0);
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                panel += f(mid + half * *x)? * *w;
            }
            total += panel * half;
        }
        Ok(total)
    }
}

/// `(P_n(x), P_n'(x))`
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
