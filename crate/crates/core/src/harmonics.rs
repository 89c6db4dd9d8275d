//! Gegenbauer polynomials, zonal spherical harmonics, and the pairings of
//! harmonics on `S^{n-1}` against harmonics on an equatorial `S^{n-2}`.
//!
//! Conventions: `sphere_area(n)` is the area of `S^{n-1} ⊂ ℝ^n`, and the
//! degree-`a` zonal harmonic on `S^{n-1}` is `C_a^{(n-2)/2}(⟨y, pole⟩)`.
//! The equator is `{y_1 = 0}`; zonal harmonics restricted to it use the pole
//! `e_n`, which lies inside the equator.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{log_gamma, GaussLegendre, QuadratureSpec};

/// Relative size below which a pairing counts as zero.
pub const NONZERO_THRESHOLD: f64 = 1e-8;

/// `C_n^ν(x)` by the three-term recurrence.
pub fn gegenbauer(n: usize, nu: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * nu * x;
    for k in 2..=n {
        let k = k as f64;
        let next = (2.0 * (k + nu - 1.0) * x * cur - (k + 2.0 * nu - 2.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    cur
}

/// `∫_{-1}^1 C_n^ν(x)² (1-x²)^{ν-1/2} dx`.
pub fn gegenbauer_norm_sq(n: usize, nu: f64) -> f64 {
    let nf = n as f64;
    let ln = PI.ln() + (1.0 - 2.0 * nu) * 2f64.ln() + lg(nf + 2.0 * nu)
        - lg(nf + 1.0)
        - (nf + nu).ln()
        - 2.0 * lg(nu);
    ln.exp()
}

fn lg(x: f64) -> f64 {
    log_gamma(x).expect("positive argument")
}

/// Area of `S^{n-1} ⊂ ℝ^n`: `2π^{n/2} / Γ(n/2)`.
pub fn sphere_area(n: usize) -> f64 {
    assert!(n >= 1, "sphere_area needs n >= 1");
    let half = n as f64 / 2.0;
    2.0 * (half * PI.ln() - lg(half)).exp()
}

/// `∫_{S^{n-1}} g(⟨y, pole⟩) dσ(y)` for `n >= 2`, as
/// `sphere_area(n-1) ∫_0^π g(cos θ) sin^{n-2} θ dθ`.
pub fn zonal_sphere_integral<F: FnMut(f64) -> f64>(n: usize, nodes: usize, mut g: F) -> f64 {
    assert!(n >= 2, "zonal integrals need n >= 2");
    let rule = GaussLegendre::new(nodes);
    let k = n as i32 - 2;
    sphere_area(n - 1) * rule.integrate(0.0, PI, |theta| g(theta.cos()) * theta.sin().powi(k))
}

/// The Gegenbauer parameter `(n-2)/2` of zonal harmonics on `S^{n-1}`.
fn zonal_nu(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::invalid(
            "sphere dimension n >= 3",
            format!("zonal harmonics on S^{} degenerate to the Chebyshev limit", n.saturating_sub(1)),
        ));
    }
    Ok((n as f64 - 2.0) / 2.0)
}

/// A degree-`a` zonal harmonic on `S^{n-1}` about `pole`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalHarmonic {
    degree: usize,
    sphere_dim: usize,
    pole: Vec<f64>,
    nu: f64,
}

impl ZonalHarmonic {
    pub fn new(degree: usize, sphere_dim: usize, pole: Vec<f64>) -> Result<Self> {
        let nu = zonal_nu(sphere_dim)?;
        if pole.len() != sphere_dim {
            return Err(Error::invalid(
                "pole lies in R^n",
                format!("pole has {} entries, n = {sphere_dim}", pole.len()),
            ));
        }
        let norm = pole.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::invalid("|pole| = 1", format!("norm is {norm}")));
        }
        Ok(ZonalHarmonic {
            degree,
            sphere_dim,
            pole,
            nu,
        })
    }

    /// Zonal harmonic about the last basis vector.
    pub fn about_last_axis(degree: usize, sphere_dim: usize) -> Result<Self> {
        let mut pole = vec![0.0; sphere_dim];
        if let Some(last) = pole.last_mut() {
            *last = 1.0;
        }
        Self::new(degree, sphere_dim, pole)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn sphere_dim(&self) -> usize {
        self.sphere_dim
    }

    pub fn pole(&self) -> &[f64] {
        &self.pole
    }

    /// Value as a function of the pole coordinate `x = ⟨y, pole⟩`.
    pub fn profile(&self, x: f64) -> f64 {
        gegenbauer(self.degree, self.nu, x)
    }

    pub fn eval(&self, y: &[f64]) -> f64 {
        let x: f64 = y.iter().zip(&self.pole).map(|(a, b)| a * b).sum();
        self.profile(x)
    }

    /// `max |f|` on the sphere, attained at the pole.
    pub fn sup_norm(&self) -> f64 {
        self.profile(1.0).abs()
    }
}

/// `‖C_a^{(n-2)/2}(⟨·, pole⟩)‖²` on `S^{n-1}` by quadrature.
pub fn zonal_norm_sq(a: usize, n: usize, spec: &QuadratureSpec) -> Result<f64> {
    let nu = zonal_nu(n)?;
    Ok(zonal_sphere_integral(n, spec.sphere_nodes, |x| {
        gegenbauer(a, nu, x).powi(2)
    }))
}

/// Closed form of [`zonal_norm_sq`] from the Gegenbauer orthogonality relation.
pub fn zonal_norm_sq_closed(a: usize, n: usize) -> Result<f64> {
    let nu = zonal_nu(n)?;
    Ok(sphere_area(n - 1) * gegenbauer_norm_sq(a, nu))
}

/// `∫_{S^{n-2}} C_a^{(n-2)/2}(x) C_b^{(n-3)/2}(x) dσ`: the degree-`a` zonal
/// harmonic of `S^{n-1}` with its pole inside the equator, restricted to
/// the equator and paired with the degree-`b` zonal harmonic there.
pub fn pairing_subsphere(a: usize, b: usize, n: usize, spec: &QuadratureSpec) -> Result<f64> {
    tilted_pairing(a, b, n, 1.0, spec)
}

/// Same pairing, with the pole of the degree-`a` harmonic tilted out of the
/// equator to `cos θ · e_n + sin θ · e_1`; on the equator it reads
/// `C_a^{(n-2)/2}(cos θ · x)`.
fn tilted_pairing(a: usize, b: usize, n: usize, cos_tilt: f64, spec: &QuadratureSpec) -> Result<f64> {
    if n < 4 {
        return Err(Error::invalid(
            "sphere dimension n >= 4",
            format!("the equator of S^{} has no zonal harmonics", n - 1),
        ));
    }
    let nu_outer = zonal_nu(n)?;
    let nu_inner = zonal_nu(n - 1)?;
    Ok(zonal_sphere_integral(n - 1, spec.sphere_nodes, |x| {
        gegenbauer(a, nu_outer, cos_tilt * x) * gegenbauer(b, nu_inner, x)
    }))
}

/// Multiplicity of the `SO(n-1)`-type `b` in the `SO(n)`-type `a` (one-row
/// highest weights): 1 iff `0 <= b <= a`.
pub fn so_branching_multiplicity(a: usize, b: usize) -> u8 {
    u8::from(b <= a)
}

/// Outcome of the K-type witness scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KTypePairing {
    pub nonzero: bool,
    /// Pairing of the best witness, signed.
    pub witness_value: f64,
    /// Tilt `θ` of the best witness's pole out of the equator.
    pub witness_tilt: f64,
    /// `NONZERO_THRESHOLD × ‖f_a‖ × ‖f_b‖`.
    pub threshold: f64,
}

/// Scans the `K`-translates of the degree-`a` zonal harmonic of `S^{n-1}`
/// whose poles sweep from inside the equator (`θ = 0`) to its normal
/// (`θ = π/2`), restricts each to the equator and pairs it against the
/// degree-`b` zonal harmonic there.
///
/// On the equator these translates read `C_a(cos θ · x)`; `a + 1` distinct
/// tilts span every polynomial in `x` of degree `<= a` and the parity of
/// `a`, which is the whole `SO(n-2)`-invariant part of the restricted
/// `K`-type. The witness is therefore nonzero exactly when `b <= a` and
/// `a - b` is even.
pub fn ktype_pairing_nonzero(a: usize, b: usize, n: usize, spec: &QuadratureSpec) -> Result<KTypePairing> {
    let threshold = NONZERO_THRESHOLD
        * zonal_norm_sq_closed(a, n)?.sqrt()
        * zonal_norm_sq_closed(b, n - 1)?.sqrt();
    let mut best = KTypePairing {
        nonzero: false,
        witness_value: 0.0,
        witness_tilt: 0.0,
        threshold,
    };
    for j in 0..=a {
        let tilt = if a == 0 { 0.0 } else { 0.5 * PI * j as f64 / (a + 1) as f64 };
        let value = tilted_pairing(a, b, n, tilt.cos(), spec)?;
        if value.abs() > best.witness_value.abs() {
            best.witness_value = value;
            best.witness_tilt = tilt;
        }
    }
    best.nonzero = best.witness_value.abs() > threshold;
    Ok(best)
}
