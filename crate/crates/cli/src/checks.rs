//! Property suites behind `fjbranch check`.

use fjbranch::fjrep::{decay_bound, fj_eval, inf_char, is_self_dual};
use fjbranch::geometry::{
    block_decompose, ellipsoid_gap, radial_integral_closed, radial_integral_numeric, random_group_element,
    random_unit_vector, sampled_gap, scale, HyperboloidChart,
};
use fjbranch::harmonics::{ktype_pairing_nonzero, zonal_norm_sq, zonal_norm_sq_closed};
use fjbranch::numerics::gauss_legendre_rule;
use fjbranch::packets::{
    admissibility_table, conjecture_explore_default, interlace_classify, packet_double_cosets, pure_inner_forms,
    relevant_pairs, CodimDirection, InterlaceClass, MemberTag, RealForm,
};
use fjbranch::periods::{nonvanishing, period_integral, truncated_radial_factor, valid_targets};
use fjbranch::{FJParam, HalfInt, QuadratureSpec, Subgroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::Suite;

pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn result(name: &'static str, failures: Vec<String>, total: usize) -> CheckResult {
    let detail = if failures.is_empty() {
        format!("{total} cases")
    } else {
        let shown: Vec<_> = failures.iter().take(6).cloned().collect();
        format!("{} of {total} cases failed: {}", failures.len(), shown.join("; "))
    };
    CheckResult {
        name,
        passed: failures.is_empty(),
        detail,
    }
}

fn h(x2: i64) -> HalfInt {
    HalfInt::from_twice(x2)
}

/// Valid `(p, q, λ)` with `p, q ∈ {4,5,6}` and `λ <= max_x2 / 2`.
fn valid_grid(max_x2: i64) -> Vec<(usize, usize, HalfInt)> {
    let mut out = Vec::new();
    for p in 4..=6 {
        for q in 4..=6 {
            for l in 1..=max_x2 {
                if FJParam::new(p, q, h(l)).is_ok() {
                    out.push((p, q, h(l)));
                }
            }
        }
    }
    out
}

fn quadrature() -> Vec<CheckResult> {
    let mut fails = Vec::new();
    let mut total = 0;
    for n in [2usize, 4, 8, 16, 32] {
        let rule = gauss_legendre_rule(n);
        for k in 0..2 * n {
            total += 1;
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            let v = rule.integrate(-1.0, 1.0, |x| x.powi(k as i32));
            if (v - exact).abs() > 1e-13 {
                fails.push(format!("n={n} k={k}"));
            }
        }
    }
    let gl = result("gauss_legendre_exactness", fails, total);

    let spec = QuadratureSpec::default();
    let mut fails = Vec::new();
    let pairs = [(1.0, -3.0), (3.0, -7.0), (0.0, -2.0), (5.0, -9.0)];
    for (a, c) in pairs {
        let closed = radial_integral_closed(a, c).expect("convergent");
        match radial_integral_numeric(a, c, &spec) {
            Ok((v, _)) if ((v - closed) / closed).abs() <= 1e-9 => {}
            other => fails.push(format!("({a},{c}): {other:?} vs {closed}")),
        }
    }
    let radial = result("radial_beta_oracle", fails, pairs.len());

    let mut fails = Vec::new();
    for (a, c) in [(3.0, -3.0), (3.0, -2.5), (-1.0, -2.0)] {
        if radial_integral_closed(a, c).is_ok() {
            fails.push(format!("({a},{c}) accepted"));
        }
    }
    let div = result("radial_divergence_detected", fails, 3);
    vec![gl, radial, div]
}

fn harmonics() -> Vec<CheckResult> {
    let spec = QuadratureSpec::default();
    let mut fails = Vec::new();
    let mut total = 0;
    for n in 3..=7 {
        for a in 0..=6 {
            total += 1;
            let num = zonal_norm_sq(a, n, &spec).unwrap();
            let closed = zonal_norm_sq_closed(a, n).unwrap();
            if ((num - closed) / closed).abs() > 1e-10 {
                fails.push(format!("a={a} n={n}"));
            }
        }
    }
    let norms = result("zonal_norms", fails, total);

    let mut fails = Vec::new();
    let mut total = 0;
    for n in 4..=6 {
        for a in 0..=6 {
            for b in 0..=6 {
                total += 1;
                let got = ktype_pairing_nonzero(a, b, n, &spec).unwrap().nonzero;
                if got != (b <= a) {
                    fails.push(format!("a={a} b={b} n={n}: {got}"));
                }
            }
        }
    }
    vec![norms, result("compact_branching_0<=b<=a", fails, total)]
}

fn decay(seed: u64) -> Vec<CheckResult> {
    let combos = [
        (4, 4, 2),
        (4, 4, 4),
        (4, 4, 6),
        (5, 4, 3),
        (4, 5, 3),
        (6, 4, 2),
        (4, 6, 4),
        (5, 6, 5),
        (6, 6, 6),
    ];
    let mut fails = Vec::new();
    for &(p, q, l) in &combos {
        let f = FJParam::new(p, q, h(l)).unwrap();
        let mut pole = vec![0.0; q];
        pole[q - 1] = 1.0;
        let ts: Vec<f64> = (0..=32).map(|i| 2.0 + 0.25 * i as f64).collect();
        let ys: Vec<f64> = ts.iter().map(|&t| fj_eval(&f, &pole, t).unwrap().abs().ln()).collect();
        let slope = least_squares_slope(&ts, &ys);
        let expected = -f.decay_rate();
        if ((slope - expected) / expected).abs() > 0.02 {
            fails.push(format!("({p},{q},{}): slope {slope:.4} vs {expected}", h(l)));
        }
    }
    let slopes = result("log_slope_decay_rate", fails, combos.len());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails = Vec::new();
    let mut total = 0;
    for &(p, q, l) in &combos {
        let f = FJParam::new(p, q, h(l)).unwrap();
        let (c, k) = decay_bound(&f);
        for _ in 0..200 {
            total += 1;
            let y = random_unit_vector(q, &mut rng);
            let t: f64 = rand::Rng::random_range(&mut rng, 0.0..12.0);
            let v = fj_eval(&f, &y, t).unwrap().abs();
            if v > c * (-k * t).exp() * (1.0 + 1e-12) {
                fails.push(format!("({p},{q},{}) t={t:.3}", h(l)));
            }
        }
    }
    let bound = result("decay_bound", fails, total);

    let chart = HyperboloidChart::new(4, 4).unwrap();
    let mut fails = Vec::new();
    for i in 0..100 {
        let g = random_group_element(4, 4, &mut rng);
        let b = block_decompose(&chart, &g).unwrap();
        let gap = ellipsoid_gap(&b);
        let seen = sampled_gap(&b, 1000, &mut rng);
        if gap.q_min > seen + 1e-12 || gap.q_min <= gap.bound {
            fails.push(format!("element {i}: q_min {} sampled {seen} bound {}", gap.q_min, gap.bound));
        }
    }
    let ellipsoid = result("ellipsoid_gap_estimates", fails, 100);

    let mut fails = Vec::new();
    for i in 0..100 {
        let g = random_group_element(4, 4, &mut rng);
        let k = random_group_element(4, 4, &mut rng);
        let inv = g.clone().try_inverse().unwrap();
        let (sg, sk) = (scale(&g), scale(&k));
        if ((sg - scale(&inv)) / sg).abs() > 1e-9 || scale(&(&g * &k)) > sg * sk * (1.0 + 1e-12) {
            fails.push(format!("pair {i}"));
        }
    }
    let scales = result("scale_identities", fails, 100);
    vec![slopes, bound, ellipsoid, scales]
}

pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn branching() -> Vec<CheckResult> {
    let spec = QuadratureSpec::default();
    let mut agree = Vec::new();
    let mut interlace = Vec::new();
    let mut implication = Vec::new();
    let (mut total, mut total_g2, mut total_g1) = (0, 0, 0);
    for p in 4..=6 {
        for q in 4..=6 {
            for l in [2, 3, 4, 6] {
                let Ok(f) = FJParam::new(p, q, h(l)) else { continue };
                let big = inf_char(&f);
                for sub in [Subgroup::G1, Subgroup::G2] {
                    for t in valid_targets(p, q, sub, 30) {
                        let g = FJParam::on_subgroup(p, q, t, sub).unwrap();
                        if g.degree() > 6 {
                            continue;
                        }
                        total += 1;
                        let v = period_integral(p, q, sub, h(l), t, &spec, true).unwrap();
                        if v.nonzero != v.predicate_nonzero {
                            agree.push(format!("({p},{q},{},{sub},{t}): numeric {}", h(l), v.nonzero));
                        }
                        let class = interlace_classify(&big, &inf_char(&g)).unwrap();
                        match sub {
                            Subgroup::G2 => {
                                total_g2 += 1;
                                if (class == InterlaceClass::FiniteType) != v.predicate_nonzero {
                                    interlace.push(format!("({p},{q},{},{t}): {class}", h(l)));
                                }
                            }
                            Subgroup::G1 => {
                                if nonvanishing(p, q, sub, h(l), t).unwrap() {
                                    total_g1 += 1;
                                    if class != InterlaceClass::InfiniteType1 {
                                        implication.push(format!("({p},{q},{},{t}): {class}", h(l)));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mut trunc = Vec::new();
    let cases = [(4, 4, Subgroup::G2, 4, 3), (5, 4, Subgroup::G1, 5, 6), (4, 4, Subgroup::G2, -2, 0), (4, 4, Subgroup::G1, -3, 1)];
    for (p, q, sub, l, t) in cases {
        let at = |tmax: f64| truncated_radial_factor(p, q, sub, h(l), h(t), tmax, &spec);
        let vals: Vec<f64> = [4.0, 8.0, 16.0].iter().map(|&x| at(x)).collect();
        let ok = if h(l) + h(t) > -HalfInt::HALF {
            (vals[2] - vals[1]).abs() <= 0.1 * (vals[1] - vals[0]).abs()
        } else {
            vals[1] >= 1.1 * vals[0] && vals[2] >= 1.1 * vals[1]
        };
        if !ok {
            trunc.push(format!("({p},{q},{sub},{},{}): {vals:?}", h(l), h(t)));
        }
    }
    vec![
        result("predicate_integral_agreement", agree, total),
        result("interlacing_finite_type_equivalence", interlace, total_g2),
        result("g1_nonzero_is_infinite_type_1", implication, total_g1),
        result("truncation_dichotomy", trunc, cases.len()),
    ]
}

fn packets_suite() -> Vec<CheckResult> {
    let mut fails = Vec::new();
    let shapes = [(4, 4), (4, 6), (4, 8), (6, 6)];
    for (p, q) in shapes {
        let d = packet_double_cosets(p, q, true).unwrap();
        if d.count != 2 || d.coset_space_size != p + q || !d.representatives[0].is_identity() {
            fails.push(format!("({p},{q}): {} cosets", d.count));
        }
    }
    let cosets = result("two_double_cosets_brute_force", fails, shapes.len());

    let mut fails = Vec::new();
    let forms: Vec<_> = pure_inner_forms(RealForm::new(3, 3))
        .iter()
        .map(|f| (f.p_sig, f.q_sig))
        .collect();
    if forms != [(1, 5), (3, 3), (5, 1)] {
        fails.push(format!("SO(3,3) forms {forms:?}"));
    }
    let pairs: Vec<_> = relevant_pairs(RealForm::new(3, 3), CodimDirection::DropP)
        .iter()
        .map(|r| ((r.sub.p_sig, r.sub.q_sig), (r.amb.p_sig, r.amb.q_sig)))
        .collect();
    if pairs != [((0, 5), (1, 5)), ((2, 3), (3, 3)), ((4, 1), (5, 1))] {
        fails.push(format!("SO(3,3) pairs {pairs:?}"));
    }
    for n in 1..=9 {
        for p in 0..=n {
            if pure_inner_forms(RealForm::new(p, n - p)).iter().any(|f| f.dim() != n) {
                fails.push(format!("forms of ({p},{})", n - p));
            }
        }
    }
    let forms = result("pure_inner_forms_and_relevant_pairs", fails, 2 + 54);

    let mut fails = Vec::new();
    for m in MemberTag::ALL {
        if [Subgroup::G1, Subgroup::G2].iter().filter(|&&g| admissibility_table(m, g)).count() != 1 {
            fails.push(format!("row {m}"));
        }
    }
    for g in [Subgroup::G1, Subgroup::G2] {
        if MemberTag::ALL.iter().filter(|&&m| admissibility_table(m, g)).count() != 1 {
            fails.push(format!("column {g}"));
        }
    }
    let table = result("admissibility_one_per_row_and_column", fails, 4);

    let mut fails = Vec::new();
    let grid = valid_grid(6);
    for &(p, q, l) in &grid {
        if !is_self_dual(&FJParam::new(p, q, l).unwrap()) {
            fails.push(format!("({p},{q},{l})"));
        }
    }
    vec![cosets, forms, table, result("self_duality", fails, grid.len())]
}

fn conjecture() -> Vec<CheckResult> {
    let grid: Vec<HalfInt> = (1..=16).map(h).collect();
    let mut fails = Vec::new();
    let mut total = 0;
    for (p, q) in [(4, 4), (4, 6)] {
        for l in 2..=6 {
            for sub in [Subgroup::G1, Subgroup::G2] {
                total += 1;
                let r = conjecture_explore_default(p, q, h(l), sub, &grid);
                if !r.disjoint {
                    fails.push(format!("({p},{q},{},{sub})", h(l)));
                }
            }
        }
    }
    vec![result("conjecture_supports_disjoint", fails, total)]
}

pub fn run(suite: Suite, seed: u64) -> Vec<CheckResult> {
    match suite {
        Suite::Quadrature => quadrature(),
        Suite::Harmonics => harmonics(),
        Suite::Decay => decay(seed),
        Suite::Branching => branching(),
        Suite::Packets => packets_suite(),
        Suite::Conjecture => conjecture(),
        Suite::All => {
            let mut all = quadrature();
            all.extend(harmonics());
            all.extend(decay(seed));
            all.extend(branching());
            all.extend(packets_suite());
            all.extend(conjecture());
            all
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_line() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 - 2.5 * x).collect();
        assert!((least_squares_slope(&xs, &ys) + 2.5).abs() < 1e-14);
    }

    #[test]
    fn valid_grid_is_nonempty_and_valid() {
        let g = valid_grid(6);
        assert!(!g.is_empty());
        assert!(g.iter().all(|&(p, q, l)| FJParam::new(p, q, l).is_ok()));
    }
}
