//! Period integrals of `F(λ)` against `F(μ)` over the suborbits `X(p,q-1)`
//! (subgroup `G2`) and `X(p-1,q)` (subgroup `G1`), their convergence and
//! non-vanishing predicates, and branching verdicts.
//!
//! In the chart both integrands separate, so every period is a product
//! `sphere area × sphere pairing × ∫ sinh^α cosh^γ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fjrep::{decay_exponent, harmonic_degree, inf_char, FJParam};
use crate::geometry::{radial_integral_numeric, radial_integral_truncated, Subgroup};
use crate::harmonics::{
    ktype_pairing_nonzero, pairing_subsphere, sphere_area, zonal_norm_sq_closed, zonal_sphere_integral,
    ZonalHarmonic, NONZERO_THRESHOLD,
};
use crate::numerics::{HalfInt, QuadratureSpec};
use crate::packets::{admissibility_table, interlace_classify, InterlaceClass, MemberTag};

/// `λ + μ > -1/2`.
pub fn converges_g2(lambda: HalfInt, mu: HalfInt) -> bool {
    lambda + mu > -HalfInt::HALF
}

/// `λ + ν > -1/2`.
pub fn converges_g1(lambda: HalfInt, nu: HalfInt) -> bool {
    lambda + nu > -HalfInt::HALF
}

pub fn converges(subgroup: Subgroup, lambda: HalfInt, target: HalfInt) -> bool {
    match subgroup {
        Subgroup::G1 => converges_g1(lambda, target),
        Subgroup::G2 => converges_g2(lambda, target),
    }
}

/// Harmonic degree of the target on the suborbit of `subgroup`, as a half-integer.
pub fn target_degree(p: usize, q: usize, subgroup: Subgroup, target: HalfInt) -> HalfInt {
    let (ps, qs) = subgroup.signature(p, q);
    harmonic_degree(ps, qs, target)
}

/// `0 <= b <= a` with `b = μ - 1 + (p-q+1)/2`, i.e. `μ + 1/2 <= λ` and `b >= 0`.
pub fn nonvanishing_g2(p: usize, q: usize, lambda: HalfInt, mu: HalfInt) -> Result<bool> {
    let f = FJParam::new(p, q, lambda)?;
    let g = FJParam::on_subgroup(p, q, mu, Subgroup::G2)?;
    Ok(g.degree() <= f.degree())
}

/// `ν = λ + 1/2`, i.e. the two degrees on `S^{q-1}` agree.
pub fn nonvanishing_g1(p: usize, q: usize, lambda: HalfInt, nu: HalfInt) -> Result<bool> {
    FJParam::new(p, q, lambda)?;
    FJParam::on_subgroup(p, q, nu, Subgroup::G1)?;
    Ok(nu == lambda + HalfInt::HALF)
}

pub fn nonvanishing(p: usize, q: usize, subgroup: Subgroup, lambda: HalfInt, target: HalfInt) -> Result<bool> {
    match subgroup {
        Subgroup::G1 => nonvanishing_g1(p, q, lambda, target),
        Subgroup::G2 => nonvanishing_g2(p, q, lambda, target),
    }
}

/// Exponents `(α, γ)` of `∫ sinh^α cosh^γ` in the factored period. Their
/// sum is `-(λ + target) - 1/2`.
pub fn period_radial_exponents(
    p: usize,
    q: usize,
    subgroup: Subgroup,
    lambda: HalfInt,
    target: HalfInt,
) -> (HalfInt, HalfInt) {
    let (ps, qs) = subgroup.signature(p, q);
    let e_sum = decay_exponent(p, q, lambda) + decay_exponent(ps, qs, target);
    (
        HalfInt::from_int(ps as i64 - 1),
        HalfInt::from_int(qs as i64 - 1) + e_sum,
    )
}

/// `∫_0^T` of the radial factor, for watching truncations converge or diverge.
pub fn truncated_radial_factor(
    p: usize,
    q: usize,
    subgroup: Subgroup,
    lambda: HalfInt,
    target: HalfInt,
    t_max: f64,
    spec: &QuadratureSpec,
) -> f64 {
    let (a, c) = period_radial_exponents(p, q, subgroup, lambda, target);
    radial_integral_truncated(a.to_f64(), c.to_f64(), t_max, spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodFactors {
    /// Area of the sphere the `y`-variable runs over.
    pub sphere: f64,
    pub pairing: f64,
    pub radial: f64,
    pub radial_a_exp_x2: HalfInt,
    pub radial_c_exp_x2: HalfInt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodVerdict {
    pub p: usize,
    pub q: usize,
    pub subgroup: Subgroup,
    pub lambda_x2: HalfInt,
    pub target_x2: HalfInt,
    pub converges: bool,
    pub parity_match: bool,
    /// `(a, target degree)`.
    pub degree_pair: (usize, usize),
    pub value: Option<f64>,
    pub err_est: f64,
    pub threshold: f64,
    pub nonzero: bool,
    pub predicate_nonzero: bool,
    pub witness: bool,
    pub witness_tilt: Option<f64>,
    pub factors: Option<PeriodFactors>,
}

/// The pairing on `S^{q-1}` of the two zonal harmonics about one pole.
fn full_sphere_pairing(a: usize, c: usize, n: usize, nodes: usize) -> Result<f64> {
    let fa = ZonalHarmonic::about_last_axis(a, n)?;
    let fc = ZonalHarmonic::about_last_axis(c, n)?;
    Ok(zonal_sphere_integral(n, nodes, |x| fa.profile(x) * fc.profile(x)))
}

struct Pairing {
    value: f64,
    err: f64,
    norm_product: f64,
    tilt: Option<f64>,
}

fn half_nodes(spec: &QuadratureSpec) -> QuadratureSpec {
    QuadratureSpec {
        sphere_nodes: (spec.sphere_nodes / 2).max(2),
        ..*spec
    }
}

fn pairing_factor(
    subgroup: Subgroup,
    a: usize,
    b: usize,
    q: usize,
    spec: &QuadratureSpec,
    use_witness: bool,
) -> Result<Pairing> {
    match subgroup {
        Subgroup::G2 => {
            let norm_product = (zonal_norm_sq_closed(a, q)? * zonal_norm_sq_closed(b, q - 1)?).sqrt();
            if use_witness {
                let fine = ktype_pairing_nonzero(a, b, q, spec)?;
                let coarse = ktype_pairing_nonzero(a, b, q, &half_nodes(spec))?;
                Ok(Pairing {
                    value: fine.witness_value,
                    err: (fine.witness_value.abs() - coarse.witness_value.abs()).abs(),
                    norm_product,
                    tilt: Some(fine.witness_tilt),
                })
            } else {
                let value = pairing_subsphere(a, b, q, spec)?;
                let coarse = pairing_subsphere(a, b, q, &half_nodes(spec))?;
                Ok(Pairing {
                    value,
                    err: (value - coarse).abs(),
                    norm_product,
                    tilt: None,
                })
            }
        }
        Subgroup::G1 => {
            let value = full_sphere_pairing(a, b, q, spec.sphere_nodes)?;
            let coarse = full_sphere_pairing(a, b, q, half_nodes(spec).sphere_nodes)?;
            Ok(Pairing {
                value,
                err: (value - coarse).abs(),
                norm_product: (zonal_norm_sq_closed(a, q)? * zonal_norm_sq_closed(b, q)?).sqrt(),
                tilt: None,
            })
        }
    }
}

/// Period of `F(λ)` against `F(target)` over the suborbit of `subgroup`.
///
/// Convergence is decided first, so a divergent pair is reported as such
/// even when the parameters are otherwise invalid. The value is zero to
/// within quadrature when `|value| <= 1e-8 · sphere · ‖f_a‖ ‖f_b‖ · |radial|`.
pub fn period_integral(
    p: usize,
    q: usize,
    subgroup: Subgroup,
    lambda: HalfInt,
    target: HalfInt,
    spec: &QuadratureSpec,
    use_witness: bool,
) -> Result<PeriodVerdict> {
    spec.validate()?;
    if !converges(subgroup, lambda, target) {
        return Err(Error::DivergentPeriod { sum: lambda + target });
    }
    let f = FJParam::new(p, q, lambda)?;
    let g = FJParam::on_subgroup(p, q, target, subgroup)?;
    let (a, b) = (f.degree(), g.degree());
    let (ps, qs) = subgroup.signature(p, q);
    let sphere = sphere_area(ps);
    let pairing = pairing_factor(subgroup, a, b, q, spec, use_witness && subgroup == Subgroup::G2)?;
    let (a_exp, c_exp) = period_radial_exponents(p, q, subgroup, lambda, target);
    let (radial, radial_err) = radial_integral_numeric(a_exp.to_f64(), c_exp.to_f64(), spec)?;
    debug_assert_eq!(qs + ps, p + q - 1);
    let value = sphere * pairing.value * radial;
    let err_est = sphere * (pairing.value.abs() * radial_err + radial.abs() * pairing.err);
    let threshold = NONZERO_THRESHOLD * sphere * pairing.norm_product * radial.abs();
    Ok(PeriodVerdict {
        p,
        q,
        subgroup,
        lambda_x2: lambda,
        target_x2: target,
        converges: true,
        parity_match: true,
        degree_pair: (a, b),
        value: Some(value),
        err_est,
        threshold,
        nonzero: value.abs() > threshold,
        predicate_nonzero: nonvanishing(p, q, subgroup, lambda, target)?,
        witness: pairing.tilt.is_some(),
        witness_tilt: pairing.tilt,
        factors: Some(PeriodFactors {
            sphere,
            pairing: pairing.value,
            radial,
            radial_a_exp_x2: a_exp,
            radial_c_exp_x2: c_exp,
        }),
    })
}

/// `∫_{X(p,q-1)} F(λ) F(μ)`; with `use_witness` the sphere pairing is the
/// largest one over the `K`-translates scanned by `ktype_pairing_nonzero`.
pub fn period_integral_g2(
    p: usize,
    q: usize,
    lambda: HalfInt,
    mu: HalfInt,
    spec: &QuadratureSpec,
    use_witness: bool,
) -> Result<PeriodVerdict> {
    period_integral(p, q, Subgroup::G2, lambda, mu, spec, use_witness)
}

/// `∫_{X(p-1,q)} F(λ) F(ν)`.
pub fn period_integral_g1(
    p: usize,
    q: usize,
    lambda: HalfInt,
    nu: HalfInt,
    spec: &QuadratureSpec,
) -> Result<PeriodVerdict> {
    period_integral(p, q, Subgroup::G1, lambda, nu, spec, false)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchingVerdict {
    pub hom_nonzero: bool,
    pub verdict: PeriodVerdict,
    pub admissible_restriction: bool,
}

pub fn branching_verdict(
    p: usize,
    q: usize,
    lambda: HalfInt,
    subgroup: Subgroup,
    target: HalfInt,
    spec: &QuadratureSpec,
) -> Result<BranchingVerdict> {
    let verdict = period_integral(p, q, subgroup, lambda, target, spec, true)?;
    Ok(BranchingVerdict {
        hom_nonzero: verdict.predicate_nonzero,
        verdict,
        admissible_restriction: admissibility_table(MemberTag::S, subgroup),
    })
}

/// One row of a target scan. CSV column order follows the field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub p: usize,
    pub q: usize,
    pub lambda_x2: HalfInt,
    pub subgroup: Subgroup,
    pub target_x2: HalfInt,
    pub converges: bool,
    pub nonzero: bool,
    pub predicate: bool,
    pub value: Option<f64>,
    pub err: f64,
    pub parity_match: bool,
    pub interlace: InterlaceClass,
    pub admissible: bool,
}

pub const SCAN_CSV_HEADER: &str =
    "p,q,lambda_x2,subgroup,target_x2,converges,nonzero,predicate,value,err,parity_match,interlace,admissible";

impl ScanRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{:e},{},{},{}",
            self.p,
            self.q,
            self.lambda_x2.twice(),
            self.subgroup,
            self.target_x2.twice(),
            self.converges,
            self.nonzero,
            self.predicate,
            self.value.map(|v| format!("{v:e}")).unwrap_or_default(),
            self.err,
            self.parity_match,
            self.interlace,
            self.admissible
        )
    }
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// Targets `0 < target <= max_target_x2 / 2` whose harmonic degree on the
/// suborbit is a non-negative integer.
pub fn valid_targets(p: usize, q: usize, subgroup: Subgroup, max_target_x2: i64) -> Vec<HalfInt> {
    (1..=max_target_x2)
        .map(HalfInt::from_twice)
        .filter(|&t| {
            let d = target_degree(p, q, subgroup, t);
            d.is_integer() && !d.is_negative()
        })
        .collect()
}

/// Period verdicts for every valid target up to `max_target_x2 / 2`.
pub fn scan(
    p: usize,
    q: usize,
    lambda: HalfInt,
    subgroup: Subgroup,
    max_target_x2: i64,
    spec: &QuadratureSpec,
) -> Result<Vec<ScanRow>> {
    let f = FJParam::new(p, q, lambda)?;
    let big = inf_char(&f);
    valid_targets(p, q, subgroup, max_target_x2)
        .into_iter()
        .map(|t| {
            let v = period_integral(p, q, subgroup, lambda, t, spec, true)?;
            let small = inf_char(&FJParam::on_subgroup(p, q, t, subgroup)?);
            Ok(ScanRow {
                p,
                q,
                lambda_x2: lambda,
                subgroup,
                target_x2: t,
                converges: v.converges,
                nonzero: v.nonzero,
                predicate: v.predicate_nonzero,
                value: v.value,
                err: v.err_est,
                parity_match: v.parity_match,
                interlace: interlace_classify(&big, &small)?,
                admissible: admissibility_table(MemberTag::S, subgroup),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn h(x2: i64) -> HalfInt {
        HalfInt::from_twice(x2)
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn convergence_thresholds() {
        assert!(converges_g2(h(4), h(1)));
        assert!(!converges_g2(h(0), h(-1)));
        assert!(!converges_g2(h(-2), h(0)));
        assert!(converges_g2(h(0), h(0)));
        assert!(matches!(
            period_integral_g2(4, 4, h(-2), h(0), &spec(), false),
            Err(Error::DivergentPeriod { .. })
        ));
        assert!(matches!(
            period_integral_g1(5, 4, h(-2), h(0), &spec()),
            Err(Error::DivergentPeriod { .. })
        ));
    }

    #[test]
    fn radial_exponent_sum() {
        for (p, q) in [(4, 4), (5, 6), (6, 5)] {
            for sub in [Subgroup::G1, Subgroup::G2] {
                for (l, t) in [(2, 3), (4, 1), (-3, 1)] {
                    let (a, c) = period_radial_exponents(p, q, sub, h(l), h(t));
                    assert_eq!(a + c, -(h(l) + h(t)) - HalfInt::HALF);
                }
            }
        }
    }

    #[test]
    fn predicates() {
        assert!(nonvanishing_g2(4, 4, h(4), h(3)).unwrap());
        assert!(!nonvanishing_g2(4, 4, h(4), h(5)).unwrap());
        assert!(nonvanishing_g2(4, 4, h(4), h(1)).unwrap());
        assert!(nonvanishing_g1(4, 4, h(4), h(5)).unwrap());
        assert!(!nonvanishing_g1(4, 4, h(4), h(3)).unwrap());
        assert!(!nonvanishing_g1(4, 4, h(4), h(7)).unwrap());
        // b = -1 is not a parameter
        assert!(nonvanishing_g2(4, 6, h(6), h(1)).is_err());
    }

    #[test]
    fn g2_factor_oracle() {
        let v = period_integral_g2(4, 4, h(4), h(3), &spec(), false).unwrap();
        let expected = 2.0 * PI * PI * (8.0 * PI / 3.0) / 12.0;
        let value = v.value.unwrap();
        assert!((value - expected).abs() / expected < 1e-10, "{value} vs {expected}");
        assert!(v.nonzero && v.predicate_nonzero);
        assert_eq!(v.degree_pair, (1, 1));
        let f = v.factors.unwrap();
        assert!((f.radial - 1.0 / 12.0).abs() < 1e-12);
        assert_eq!((f.radial_a_exp_x2, f.radial_c_exp_x2), (h(6), h(-14)));
    }

    #[test]
    fn g2_above_bound_vanishes() {
        let v = period_integral_g2(4, 4, h(4), h(5), &spec(), true).unwrap();
        assert!(v.converges);
        assert!(!v.nonzero);
        assert!(v.value.unwrap().abs() <= v.threshold);
        assert!(!v.predicate_nonzero);
    }

    #[test]
    fn g1_orthogonality() {
        let s = spec();
        // odd p + q needs half-odd λ for an integral degree
        assert!(period_integral_g1(5, 4, h(4), h(5), &s).is_err());
        let on = period_integral_g1(5, 4, h(5), h(6), &s).unwrap();
        assert!(on.nonzero && on.predicate_nonzero);
        let f = on.factors.unwrap();
        let norm = zonal_norm_sq_closed(2, 4).unwrap();
        assert!((f.pairing - norm).abs() / norm < 1e-10);
        for nu in [4, 8] {
            let off = period_integral_g1(5, 4, h(5), h(nu), &s).unwrap();
            assert!(!off.nonzero && !off.predicate_nonzero);
            assert!(off.factors.unwrap().pairing.abs() < 1e-10 * norm);
        }
    }

    #[test]
    fn branching_examples() {
        let s = spec();
        let b = branching_verdict(4, 4, h(4), Subgroup::G2, h(3), &s).unwrap();
        assert!(b.hom_nonzero && !b.admissible_restriction);
        let b = branching_verdict(4, 4, h(4), Subgroup::G1, h(5), &s).unwrap();
        assert!(b.hom_nonzero && b.admissible_restriction);
        let b = branching_verdict(4, 4, h(4), Subgroup::G1, h(3), &s).unwrap();
        assert!(!b.hom_nonzero);
    }

    #[test]
    fn scan_rows() {
        let s = spec();
        let rows = scan(4, 4, h(4), Subgroup::G2, 7, &s).unwrap();
        let targets: Vec<i64> = rows.iter().map(|r| r.target_x2.twice()).collect();
        assert_eq!(targets, vec![1, 3, 5, 7]);
        let predicate: Vec<bool> = rows.iter().map(|r| r.predicate).collect();
        assert_eq!(predicate, vec![true, true, false, false]);
        let g1 = scan(4, 4, h(4), Subgroup::G1, 9, &s).unwrap();
        let hits: Vec<i64> = g1.iter().filter(|r| r.nonzero).map(|r| r.target_x2.twice()).collect();
        assert_eq!(hits, vec![5]);
        assert!(scan(4, 4, h(4), Subgroup::G2, 0, &s).unwrap().is_empty());
        let csv = scan_csv(&rows);
        assert!(csv.starts_with(SCAN_CSV_HEADER));
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.lines().nth(2).unwrap().starts_with("4,4,4,g2,3,true,true,true,"));
    }

    #[test]
    fn truncations() {
        let s = spec();
        // convergent: geometric contraction toward the full integral
        let (i5, i10, i20) = (
            truncated_radial_factor(4, 4, Subgroup::G2, h(4), h(3), 5.0, &s),
            truncated_radial_factor(4, 4, Subgroup::G2, h(4), h(3), 10.0, &s),
            truncated_radial_factor(4, 4, Subgroup::G2, h(4), h(3), 20.0, &s),
        );
        assert!((i20 - i10).abs() <= 0.1 * (i10 - i5).abs());
        assert!((i20 - 1.0 / 12.0).abs() < 1e-10);
        // divergent: at least 10% growth per doubling
        let mut prev = truncated_radial_factor(4, 4, Subgroup::G2, h(-2), h(0), 2.0, &s);
        for t in [4.0, 8.0, 16.0] {
            let next = truncated_radial_factor(4, 4, Subgroup::G2, h(-2), h(0), t, &s);
            assert!(next >= 1.1 * prev, "{t}: {next} vs {prev}");
            prev = next;
        }
    }
}
