//! Flensted-Jensen parameters: the generating function
//! `F(λ, Φ(y,y',t)) = f_a(y') cosh(t)^{-λ+1-(p+q)/2}`, its norm, minimal
//! K-type and infinitesimal character.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{radial_integral_closed, radial_integral_numeric, Subgroup, MIN_SIGNATURE};
use crate::harmonics::{sphere_area, zonal_norm_sq, ZonalHarmonic};
use crate::numerics::{HalfInt, QuadratureSpec};
use crate::packets::weyl::{weyl_conjugate, WeylFamily};

/// Which symmetric space a parameter lives on, relative to `G = SO0(p,q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceTag {
    /// `SO0(p,q) / SO0(p,q-1)`.
    GOnH,
    /// `G1 / (G1 ∩ H)`, i.e. `X(p-1,q)`.
    G1Space,
    /// `G2 / (G2 ∩ H)`, i.e. `X(p,q-1)`.
    G2Space,
}

impl SpaceTag {
    pub fn of_subgroup(sub: Subgroup) -> Self {
        match sub {
            Subgroup::G1 => SpaceTag::G1Space,
            Subgroup::G2 => SpaceTag::G2Space,
        }
    }

    /// Signature of the hyperboloid this space is, given the ambient `(p, q)`.
    pub fn signature(self, p: usize, q: usize) -> (usize, usize) {
        match self {
            SpaceTag::GOnH => (p, q),
            SpaceTag::G1Space => Subgroup::G1.signature(p, q),
            SpaceTag::G2Space => Subgroup::G2.signature(p, q),
        }
    }
}

/// Harmonic degree `a = λ - 1 + (p-q)/2` of the generating function on `X(p,q)`.
pub fn harmonic_degree(p: usize, q: usize, lambda: HalfInt) -> HalfInt {
    lambda - HalfInt::ONE + HalfInt::half_of(p as i64 - q as i64)
}

/// Exponent `-λ + 1 - (p+q)/2` of `cosh t`.
pub fn decay_exponent(p: usize, q: usize, lambda: HalfInt) -> HalfInt {
    -lambda + HalfInt::ONE - HalfInt::half_of((p + q) as i64)
}

/// Highest weight `μ_λ = λ + ρ - 2ρ_c`, which on `t*` is `λ + (p-q)/2 - 1`.
pub fn minimal_ktype(p: usize, q: usize, lambda: HalfInt) -> HalfInt {
    let rho_minus_2rho_c = HalfInt::half_of(p as i64 - q as i64) - HalfInt::ONE;
    lambda + rho_minus_2rho_c
}

/// Exponents `(a, c)` of the radial factor `∫ sinh^a cosh^c` of `‖F(λ)‖²` on
/// `X(p,q)`. Their sum is `-2λ`, so the norm is finite exactly when `λ > 0`.
pub fn l2_radial_exponents(p: usize, q: usize, lambda: HalfInt) -> (HalfInt, HalfInt) {
    let e = decay_exponent(p, q, lambda);
    let a = HalfInt::from_int(p as i64 - 1);
    let c = HalfInt::from_int(q as i64 - 1) + e + e;
    (a, c)
}

/// `θ`-stable Levi `L = SO(p,q-2) SO(0,2)`, recorded by signature only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviTag {
    pub noncompact: (usize, usize),
    pub compact: (usize, usize),
}

impl fmt::Display for LeviTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SO({},{})xSO({},{})",
            self.noncompact.0, self.noncompact.1, self.compact.0, self.compact.1
        )
    }
}

/// A Flensted-Jensen representation, described by its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FJParam {
    /// Ambient group `SO0(p,q)`.
    p: usize,
    q: usize,
    lambda: HalfInt,
    space: SpaceTag,
    degree: usize,
    exponent: HalfInt,
    min_ktype: HalfInt,
}

impl FJParam {
    /// Parameter `λ` on `SO0(p,q)/SO0(p,q-1)`.
    pub fn new(p: usize, q: usize, lambda: HalfInt) -> Result<Self> {
        Self::on_space(p, q, lambda, SpaceTag::GOnH)
    }

    /// Parameter on the suborbit of `sub`; `(p, q)` is still the ambient group.
    pub fn on_subgroup(p: usize, q: usize, lambda: HalfInt, sub: Subgroup) -> Result<Self> {
        Self::on_space(p, q, lambda, SpaceTag::of_subgroup(sub))
    }

    pub fn on_space(p: usize, q: usize, lambda: HalfInt, space: SpaceTag) -> Result<Self> {
        if p < MIN_SIGNATURE || q < MIN_SIGNATURE {
            return Err(Error::invalid("p, q >= 4", format!("got p = {p}, q = {q}")));
        }
        if !lambda.is_positive() {
            return Err(Error::invalid(
                "lambda > 0 (square integrability)",
                format!("lambda = {lambda}"),
            ));
        }
        let (ps, qs) = space.signature(p, q);
        let a = harmonic_degree(ps, qs, lambda);
        let degree = match a.to_int() {
            Some(d) if d >= 0 => d as usize,
            _ => {
                return Err(Error::invalid(
                    "harmonic degree a = lambda - 1 + (p-q)/2 is a non-negative integer",
                    format!("a = {a} on X({ps},{qs})"),
                ))
            }
        };
        let min_ktype = minimal_ktype(ps, qs, lambda);
        debug_assert_eq!(min_ktype, a);
        Ok(FJParam {
            p,
            q,
            lambda,
            space,
            degree,
            exponent: decay_exponent(ps, qs, lambda),
            min_ktype,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn lambda(&self) -> HalfInt {
        self.lambda
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    /// Signature `(p', q')` of the hyperboloid the function lives on.
    pub fn space_signature(&self) -> (usize, usize) {
        self.space.signature(self.p, self.q)
    }

    /// Harmonic degree `a` of the `y'`-factor.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn exponent(&self) -> HalfInt {
        self.exponent
    }

    pub fn min_ktype(&self) -> HalfInt {
        self.min_ktype
    }

    pub fn levi_tag(&self) -> LeviTag {
        let (ps, qs) = self.space_signature();
        LeviTag {
            noncompact: (ps, qs - 2),
            compact: (0, 2),
        }
    }

    /// The degree-`a` zonal harmonic on `S^{q'-1}` about the last axis.
    pub fn harmonic(&self) -> ZonalHarmonic {
        let (_, qs) = self.space_signature();
        ZonalHarmonic::about_last_axis(self.degree, qs).expect("q' >= 3 for every valid space")
    }

    /// Exponential decay rate of `F` along `J+`: `λ - 1 + (p'+q')/2`.
    pub fn decay_rate(&self) -> f64 {
        -self.exponent.to_f64()
    }
}

/// `F(λ, Φ(y, y', t))`; independent of `y`.
pub fn fj_eval(param: &FJParam, y_prime: &[f64], t: f64) -> Result<f64> {
    let (_, qs) = param.space_signature();
    if y_prime.len() != qs {
        return Err(Error::invalid(
            "y' lies in R^q",
            format!("y' has {} entries, q = {qs}", y_prime.len()),
        ));
    }
    Ok(param.harmonic().eval(y_prime) * t.cosh().powf(param.exponent.to_f64()))
}

/// Constant `C` with `|F(x)| <= C e^{-k t}`, `k = λ - 1 + (p+q)/2`.
///
/// From `cosh t >= e^t / 2`: `C = 2^k · max|f_a|`.
pub fn decay_bound(param: &FJParam) -> (f64, f64) {
    let k = param.decay_rate();
    (2f64.powf(k) * param.harmonic().sup_norm(), k)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct L2Norm {
    /// `sphere_area(p) · ‖f_a‖² · R_numeric`.
    pub value: f64,
    /// Same product with the closed-form radial factor.
    pub closed: f64,
    pub err_est: f64,
}

/// `‖F(λ)‖²` on `X(p,q)` from its factored form.
pub fn l2_norm_sq(param: &FJParam, spec: &QuadratureSpec) -> Result<L2Norm> {
    let (ps, qs) = param.space_signature();
    let (a, c) = l2_radial_exponents(ps, qs, param.lambda);
    let angular = sphere_area(ps) * zonal_norm_sq(param.degree, qs, spec)?;
    let (radial, radial_err) = radial_integral_numeric(a.to_f64(), c.to_f64(), spec)?;
    let closed = radial_integral_closed(a.to_f64(), c.to_f64())?;
    Ok(L2Norm {
        value: angular * radial,
        closed: angular * closed,
        err_est: angular * radial_err,
    })
}

/// An infinitesimal character as a strictly decreasing sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InfChar(Vec<HalfInt>);

impl InfChar {
    pub fn new(entries: Vec<HalfInt>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::invalid(
                "infinitesimal character is strictly decreasing",
                format!("{entries:?}"),
            ));
        }
        Ok(InfChar(entries))
    }

    /// `(λ + N/2, (N-2)/2, (N-4)/2, …)` of length `⌊N/2⌋`, for a hyperboloid
    /// in `ℝ^N`: the display used when comparing against subgroups.
    pub fn from_display(lambda: HalfInt, total_dim: usize) -> Result<Self> {
        let n = total_dim as i64;
        let len = (total_dim / 2) as i64;
        let entries = (0..len)
            .map(|i| {
                let tail = HalfInt::half_of(n - 2 * i);
                if i == 0 {
                    lambda + tail
                } else {
                    tail
                }
            })
            .collect();
        Self::new(entries)
    }

    pub fn entries(&self) -> &[HalfInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn inf_char(param: &FJParam) -> InfChar {
    let (ps, qs) = param.space_signature();
    InfChar::from_display(param.lambda, ps + qs).expect("lambda > 0 keeps the display regular")
}

/// `(λ, 0, …, 0) + ρ` with the standard `ρ` of `so(N)`: `(m-1, …, 1, 0)` for
/// `N = 2m` and `(m-1/2, …, 1/2)` for `N = 2m+1`.
pub fn harish_chandra_parameter(param: &FJParam) -> (WeylFamily, Vec<HalfInt>) {
    let (ps, qs) = param.space_signature();
    let n = ps + qs;
    let m = n / 2;
    let (family, offset) = if n % 2 == 0 {
        (WeylFamily::D, 0)
    } else {
        (WeylFamily::B, 1)
    };
    let mut v: Vec<HalfInt> = (0..m)
        .map(|i| HalfInt::half_of(2 * (m - 1 - i) as i64 + offset))
        .collect();
    v[0] += param.lambda;
    (family, v)
}

/// Whether `W(λ)` is isomorphic to its contragredient: `-(λ+ρ)` must be
/// Weyl-conjugate to `λ+ρ`.
pub fn is_self_dual(param: &FJParam) -> bool {
    let (family, v) = harish_chandra_parameter(param);
    let neg: Vec<HalfInt> = v.iter().map(|&x| -x).collect();
    weyl_conjugate(family, &v, &neg)
}

/// JSON-facing summary of a parameter. Half-integers are doubled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FJReport {
    pub p: usize,
    pub q: usize,
    pub space: SpaceTag,
    pub lambda_x2: HalfInt,
    pub a: usize,
    pub exponent_x2: HalfInt,
    pub min_ktype_x2: HalfInt,
    pub inf_char_x2: InfChar,
    pub levi: String,
    pub self_dual: bool,
    pub l2_norm_sq: f64,
    pub l2_norm_sq_closed: f64,
    pub l2_err: f64,
}

impl FJReport {
    pub fn new(param: &FJParam, spec: &QuadratureSpec) -> Result<Self> {
        let norm = l2_norm_sq(param, spec)?;
        Ok(FJReport {
            p: param.p,
            q: param.q,
            space: param.space,
            lambda_x2: param.lambda,
            a: param.degree,
            exponent_x2: param.exponent,
            min_ktype_x2: param.min_ktype,
            inf_char_x2: inf_char(param),
            levi: param.levi_tag().to_string(),
            self_dual: is_self_dual(param),
            l2_norm_sq: norm.value,
            l2_norm_sq_closed: norm.closed,
            l2_err: norm.err_est,
        })
    }
}
