use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node counts and tolerances shared by every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub radial_nodes: usize,
    pub sphere_nodes: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            radial_nodes: 200,
            sphere_nodes: 128,
            abs_tol: 1e-10,
            rel_tol: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn new(radial_nodes: usize, sphere_nodes: usize, abs_tol: f64, rel_tol: f64) -> Result<Self> {
        let spec = QuadratureSpec {
            radial_nodes,
            sphere_nodes,
            abs_tol,
            rel_tol,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.radial_nodes < 2 || self.sphere_nodes < 2 {
            return Err(Error::InvalidQuadratureSpec("node counts must be >= 2"));
        }
        for tol in [self.abs_tol, self.rel_tol] {
            if !tol.is_finite() || tol < 0.0 {
                return Err(Error::InvalidQuadratureSpec(
                    "tolerances must be finite and non-negative",
                ));
            }
        }
        Ok(())
    }

    /// Same tolerances, both node counts set to `n`.
    pub fn with_nodes(self, n: usize) -> Self {
        QuadratureSpec {
            radial_nodes: n,
            sphere_nodes: n,
            ..self
        }
    }

    pub fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// A Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Legendre polynomial `P_n(x)` and its derivative, by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let k = k as f64;
        let next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule, ascending.
///
/// Roots are located by Newton's method from the Tricomi initial guess
/// and polished until the step falls below `1e-15`.
pub fn gauss_legendre_rule(n: usize) -> GaussLegendre {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    if n == 1 {
        return GaussLegendre {
            nodes: vec![0.0],
            weights: vec![2.0],
        };
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // i-th largest root
        let theta = std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5);
        let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-15 {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussLegendre { nodes, weights }
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        gauss_legendre_rule(n)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f` using the rule mapped affinely onto `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }

    /// Composite rule over `panels` equal subintervals of `[a, b]`.
    pub fn integrate_composite<F: FnMut(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: F,
    ) -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|k| {
                let lo = a + k as f64 * h;
                self.integrate(lo, lo + h, &mut f)
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_node_is_midpoint() {
        let r = gauss_legendre_rule(1);
        assert_eq!(r.nodes, vec![0.0]);
        assert_eq!(r.weights, vec![2.0]);
    }

    #[test]
    fn two_nodes() {
        let r = gauss_legendre_rule(2);
        let s = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + s).abs() < 1e-15);
        assert!((r.nodes[1] - s).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
        assert!((r.weights[1] - 1.0).abs() < 1e-15);
        // x^0..x^3 exact
        let exact = [2.0, 0.0, 2.0 / 3.0, 0.0];
        for (k, e) in exact.iter().enumerate() {
            let v = r.integrate(-1.0, 1.0, |x| x.powi(k as i32));
            assert!((v - e).abs() < 1e-15, "k={k}: {v}");
        }
    }

    #[test]
    fn sixteen_nodes_x_squared() {
        let r = gauss_legendre_rule(16);
        let v = r.integrate(-1.0, 1.0, |x| x * x);
        assert!((v - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn monomials_exact_to_degree_2n_minus_1() {
        for n in [2usize, 4, 8, 16, 32] {
            let r = gauss_legendre_rule(n);
            assert!(r.weights.iter().all(|&w| w > 0.0));
            assert!(r.nodes.iter().all(|&x| x > -1.0 && x < 1.0));
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            for k in 0..2 * n {
                let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                let v = r.integrate(-1.0, 1.0, |x| x.powi(k as i32));
                assert!((v - exact).abs() <= 1e-13, "n={n} k={k}: {v} vs {exact}");
            }
        }
    }

    #[test]
    fn large_rule_weights_sum_to_two() {
        let r = gauss_legendre_rule(400);
        let s: f64 = r.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-13);
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(1, 10, 0.0, 0.0).is_err());
        assert!(QuadratureSpec::new(10, 10, -1.0, 0.0).is_err());
        assert!(QuadratureSpec::new(10, 10, f64::NAN, 0.0).is_err());
        assert!(QuadratureSpec::default().validate().is_ok());
    }
}
