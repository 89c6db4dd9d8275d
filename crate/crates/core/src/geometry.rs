//! Charts, invariant measures and radial integrals on the hyperboloid
//! `X(p,q) = { ξ : Q(ξ,ξ) = -1 }`, its suborbits, and the block estimates
//! for elements of `SO0(p,q)` used in the decay bounds.

use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{beta, GaussLegendre, QuadratureSpec};

/// Smallest `p`, `q` the constructions below are stated for.
pub const MIN_SIGNATURE: usize = 4;

const MEMBERSHIP_TOL: f64 = 1e-8;

/// The subgroups `G1 = SO0(p-1,q)` (stabilizer of `e_1`) and
/// `G2 = SO0(p,q-1)` (stabilizer of `e_{p+1}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subgroup {
    G1,
    G2,
}

impl Subgroup {
    /// Signature of the subgroup inside `SO0(p,q)`.
    pub fn signature(self, p: usize, q: usize) -> (usize, usize) {
        match self {
            Subgroup::G1 => (p - 1, q),
            Subgroup::G2 => (p, q - 1),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Subgroup::G1 => "g1",
            Subgroup::G2 => "g2",
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Subgroup {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "g1" => Ok(Subgroup::G1),
            "g2" => Ok(Subgroup::G2),
            other => Err(format!("unknown subgroup {other:?} (expected g1 or g2)")),
        }
    }
}

/// `X(p,q)` with the standing assumption `p, q >= 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperboloidChart {
    p: usize,
    q: usize,
}

impl HyperboloidChart {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p < MIN_SIGNATURE || q < MIN_SIGNATURE {
            return Err(Error::invalid(
                "p, q >= 4",
                format!("got p = {p}, q = {q}"),
            ));
        }
        Ok(HyperboloidChart { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// Density of the invariant measure in the `t` coordinate.
    pub fn measure_weight(&self, t: f64) -> f64 {
        measure_weight(self.p, self.q, t)
    }
}

/// `sinh^{p-1}(t) cosh^{q-1}(t)`, the radial density on `X(p,q)`.
pub fn measure_weight(p: usize, q: usize, t: f64) -> f64 {
    t.sinh().powi(p as i32 - 1) * t.cosh().powi(q as i32 - 1)
}

/// A point `(y, y', t)` of `S^{p-1} × S^{q-1} × [0, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub y: Vec<f64>,
    pub y_prime: Vec<f64>,
    pub t: f64,
}

impl ChartPoint {
    pub fn new(y: Vec<f64>, y_prime: Vec<f64>, t: f64) -> Result<Self> {
        for (name, v) in [("|y| = 1", &y), ("|y'| = 1", &y_prime)] {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-12 {
                return Err(Error::invalid(name, format!("norm is {norm}")));
            }
        }
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::invalid("t >= 0", format!("t = {t}")));
        }
        Ok(ChartPoint { y, y_prime, t })
    }

    pub fn random<R: Rng + ?Sized>(p: usize, q: usize, t_max: f64, rng: &mut R) -> Self {
        ChartPoint {
            y: random_unit_vector(p, rng),
            y_prime: random_unit_vector(q, rng),
            t: rng.random_range(0.0..t_max),
        }
    }
}

/// Uniform point on `S^{n-1}` by normalizing a Gaussian vector.
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| standard_normal(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller
    let u1: f64 = rng.random_range(f64::EPSILON..1.0);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// `Φ(y, y', t) = (y sinh t, y' cosh t)`.
pub fn phi(chart: &HyperboloidChart, pt: &ChartPoint) -> Result<Vec<f64>> {
    if pt.y.len() != chart.p || pt.y_prime.len() != chart.q {
        return Err(Error::invalid(
            "point dimensions match (p, q)",
            format!(
                "y has {} entries, y' has {}, chart is ({}, {})",
                pt.y.len(),
                pt.y_prime.len(),
                chart.p,
                chart.q
            ),
        ));
    }
    let (s, c) = (pt.t.sinh(), pt.t.cosh());
    Ok(pt
        .y
        .iter()
        .map(|yi| yi * s)
        .chain(pt.y_prime.iter().map(|yj| yj * c))
        .collect())
}

/// `Q(x, x)` for the form of signature `(p, len - p)`.
pub fn quadratic_form(p: usize, x: &[f64]) -> f64 {
    let (pos, neg) = x.split_at(p);
    pos.iter().map(|v| v * v).sum::<f64>() - neg.iter().map(|v| v * v).sum::<f64>()
}

fn radial_converges(a_exp: f64, c_exp: f64) -> bool {
    a_exp > -1.0 && a_exp + c_exp < 0.0
}

/// `∫_0^∞ sinh^a(t) cosh^c(t) dt = ½ B((a+1)/2, -(a+c)/2)`.
pub fn radial_integral_closed(a_exp: f64, c_exp: f64) -> Result<f64> {
    if !radial_converges(a_exp, c_exp) {
        return Err(Error::DivergentRadial { a_exp, c_exp });
    }
    Ok(0.5 * beta((a_exp + 1.0) / 2.0, -(a_exp + c_exp) / 2.0)?)
}

/// Integrand of the radial integral after `x = tanh t` and `x = 1 - (1-v)^2`.
fn radial_integrand(a_exp: f64, c_exp: f64, v: f64) -> f64 {
    let s = -(a_exp + c_exp) / 2.0;
    let u = 1.0 - v;
    let x = 1.0 - u * u;
    2.0 * x.powf(a_exp) * u.powf(2.0 * s - 1.0) * (1.0 + x).powf(s - 1.0)
}

fn radial_rule(a_exp: f64, c_exp: f64, nodes: usize) -> f64 {
    GaussLegendre::new(nodes).integrate(0.0, 1.0, |v| radial_integrand(a_exp, c_exp, v))
}

/// Numerical value of the radial integral with an error estimate.
///
/// The half-line is mapped to `[0, 1)` by `x = tanh t`, the endpoint at
/// `x = 1` is smoothed by `x = 1 - (1-v)^2`, and Gauss–Legendre runs on
/// `v ∈ [0, 1]`. The error estimate is the gap to the rule with half as
/// many nodes.
pub fn radial_integral_numeric(
    a_exp: f64,
    c_exp: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    spec.validate()?;
    if !radial_converges(a_exp, c_exp) {
        return Err(Error::DivergentRadial { a_exp, c_exp });
    }
    let value = radial_rule(a_exp, c_exp, spec.radial_nodes);
    let coarse = radial_rule(a_exp, c_exp, (spec.radial_nodes / 2).max(2));
    let err_est = (value - coarse).abs();
    let tolerance = spec.tolerance_for(value);
    if err_est > tolerance {
        return Err(Error::ToleranceNotMet {
            value,
            err_est,
            tolerance,
        });
    }
    Ok((value, err_est))
}

/// `∫_0^T sinh^a(t) cosh^c(t) dt` by composite Gauss–Legendre in `t`, for
/// any exponents. Used to watch truncations converge or blow up.
pub fn radial_integral_truncated(a_exp: f64, c_exp: f64, t_max: f64, spec: &QuadratureSpec) -> f64 {
    let panels = t_max.ceil().max(1.0) as usize;
    let rule = GaussLegendre::new(spec.radial_nodes.clamp(2, 64));
    rule.integrate_composite(0.0, t_max, panels, |t| {
        t.sinh().powf(a_exp) * t.cosh().powf(c_exp)
    })
}

/// A suborbit `X(p-1,q)` or `X(p,q-1)` with its sphere factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Suborbit {
    pub subgroup: Subgroup,
    pub p: usize,
    pub q: usize,
    /// `(k, l)` for `S^k × S^l`.
    pub sphere_dims: (usize, usize),
}

impl Suborbit {
    pub fn measure_weight(&self, t: f64) -> f64 {
        measure_weight(self.p, self.q, t)
    }
}

pub fn suborbit(chart: &HyperboloidChart, which: Subgroup) -> Result<Suborbit> {
    let (p, q) = which.signature(chart.p, chart.q);
    if p < MIN_SIGNATURE || q < MIN_SIGNATURE {
        return Err(Error::invalid(
            "suborbit keeps p, q >= 4",
            format!("{which} of ({}, {}) has signature ({p}, {q})", chart.p, chart.q),
        ));
    }
    Ok(Suborbit {
        subgroup: which,
        p,
        q,
        sphere_dims: (p - 1, q - 1),
    })
}

/// `g = [[A1, A2], [A3, A4]]` with `A1` of size `p×p` and `A4` of size `q×q`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    pub a1: DMatrix<f64>,
    pub a2: DMatrix<f64>,
    pub a3: DMatrix<f64>,
    pub a4: DMatrix<f64>,
}

impl BlockDecomposition {
    /// Max-norm of `A4 A4ᵀ - A3 A3ᵀ - I`.
    pub fn identity_defect(&self) -> f64 {
        let q = self.a4.nrows();
        let m = &self.a4 * self.a4.transpose() - &self.a3 * self.a3.transpose();
        (m - DMatrix::identity(q, q)).amax()
    }
}

/// `diag(I_p, -I_q)`.
pub fn form_matrix(p: usize, q: usize) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_iterator(
        p + q,
        (0..p + q).map(|i| if i < p { 1.0 } else { -1.0 }),
    ))
}

/// Checks `gᵀ J g = J` to `1e-8` and that `g` lies in the identity
/// component (`det A1 > 0`, `det A4 > 0`).
pub fn check_membership(p: usize, q: usize, g: &DMatrix<f64>) -> Result<()> {
    let n = p + q;
    let not_in = |reason: String| Error::NotInGroup { p, q, reason };
    if g.nrows() != n || g.ncols() != n {
        return Err(not_in(format!("shape {}x{}", g.nrows(), g.ncols())));
    }
    let j = form_matrix(p, q);
    let defect = (g.transpose() * &j * g - &j).amax();
    if defect.is_nan() || defect > MEMBERSHIP_TOL {
        return Err(not_in(format!("|gᵀJg - J| = {defect:e}")));
    }
    let det_a1 = g.view((0, 0), (p, p)).determinant();
    let det_a4 = g.view((p, p), (q, q)).determinant();
    if det_a1 <= 0.0 || det_a4 <= 0.0 {
        return Err(not_in(format!(
            "not in the identity component (det A1 = {det_a1}, det A4 = {det_a4})"
        )));
    }
    Ok(())
}

pub fn block_decompose(chart: &HyperboloidChart, g: &DMatrix<f64>) -> Result<BlockDecomposition> {
    let (p, q) = (chart.p, chart.q);
    check_membership(p, q, g)?;
    Ok(BlockDecomposition {
        a1: g.view((0, 0), (p, p)).into_owned(),
        a2: g.view((0, p), (p, q)).into_owned(),
        a3: g.view((p, 0), (q, p)).into_owned(),
        a4: g.view((p, p), (q, q)).into_owned(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidGap {
    /// Minimum of `|A3 y' + A4 y''|` over unit `y'`, `y''`.
    pub q_min: f64,
    /// `(1/4) (tr A4ᵀA4)^{-1}`.
    pub bound: f64,
}

/// Lower estimate for `|A3 y' + A4 y''|` from the eigenvalues `λ_i >= 1`
/// of `A4ᵀA4`: the two ellipsoids have parallel axes, and along the
/// `i`-th axis they are `√λ_i - √(λ_i - 1)` apart.
pub fn ellipsoid_gap(blocks: &BlockDecomposition) -> EllipsoidGap {
    let gram = blocks.a4.transpose() * &blocks.a4;
    let trace = gram.trace();
    let eig = SymmetricEigen::new(gram);
    let q_min = eig
        .eigenvalues
        .iter()
        .map(|&l| {
            let l = l.max(1.0);
            1.0 / (l.sqrt() + (l - 1.0).sqrt())
        })
        .fold(f64::INFINITY, f64::min);
    EllipsoidGap {
        q_min,
        bound: 0.25 / trace,
    }
}

/// Smallest `|A3 y' + A4 y''|` seen over `samples` random pairs of unit
/// vectors `y' ∈ S^{p-1}`, `y'' ∈ S^{q-1}`.
pub fn sampled_gap<R: Rng + ?Sized>(blocks: &BlockDecomposition, samples: usize, rng: &mut R) -> f64 {
    let (p, q) = (blocks.a1.nrows(), blocks.a4.nrows());
    (0..samples)
        .map(|_| {
            let y1 = DVector::from_vec(random_unit_vector(p, rng));
            let y2 = DVector::from_vec(random_unit_vector(q, rng));
            (&blocks.a3 * y1 + &blocks.a4 * y2).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// `s(g) = tr(g gᵀ) + tr(g⁻¹ g⁻ᵀ)` in the defining representation.
pub fn scale(g: &DMatrix<f64>) -> f64 {
    let inv = g
        .clone()
        .try_inverse()
        .expect("group elements are invertible");
    (g * g.transpose()).trace() + (&inv * inv.transpose()).trace()
}

/// A random element of `so(p,q)`: `[[A, B], [Bᵀ, C]]` with `A`, `C`
/// antisymmetric and all free entries uniform in `[-1, 1]`.
pub fn random_lie_algebra_element<R: Rng + ?Sized>(p: usize, q: usize, rng: &mut R) -> DMatrix<f64> {
    let n = p + q;
    let mut z = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = rng.random_range(-1.0..=1.0);
            let mixed = (i < p) != (j < p);
            z[(i, j)] = v;
            z[(j, i)] = if mixed { v } else { -v };
        }
    }
    z
}

/// `exp(Z)` for a random `Z ∈ so(p,q)`; lands in the identity component.
pub fn random_group_element<R: Rng + ?Sized>(p: usize, q: usize, rng: &mut R) -> DMatrix<f64> {
    random_lie_algebra_element(p, q, rng).exp()
}

/// `exp(s (E_{i,j} + E_{j,i}))` for `i < p <= j`: a boost mixing `e_i` and `e_j`.
pub fn hyperbolic_rotation(p: usize, q: usize, i: usize, j: usize, s: f64) -> DMatrix<f64> {
    assert!(i < p && p <= j && j < p + q, "boost must mix a positive and a negative axis");
    let mut g = DMatrix::identity(p + q, p + q);
    g[(i, i)] = s.cosh();
    g[(j, j)] = s.cosh();
    g[(i, j)] = s.sinh();
    g[(j, i)] = s.sinh();
    g
}
