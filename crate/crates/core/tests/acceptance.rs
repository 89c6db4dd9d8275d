//! Acceptance criteria, one test each. Run with `--nocapture` to see the
//! PASS/FAIL line every test prints before it asserts.

use std::time::Instant;

use fjbranch::fjrep::{decay_exponent, fj_eval, inf_char, is_self_dual, l2_norm_sq, l2_radial_exponents};
use fjbranch::geometry::{
    block_decompose, ellipsoid_gap, radial_integral_closed, radial_integral_numeric, radial_integral_truncated,
    random_group_element, sampled_gap, scale, HyperboloidChart,
};
use fjbranch::harmonics::{ktype_pairing_nonzero, zonal_norm_sq_closed};
use fjbranch::packets::{
    admissibility_table, conjecture_explore_default, interlace_classify, packet_double_cosets, pure_inner_forms,
    relevant_pairs,
};
use fjbranch::periods::{nonvanishing, period_integral, valid_targets};
use fjbranch::{
    CodimDirection, FJParam, HalfInt, InterlaceClass, MemberTag, QuadratureSpec, RealForm, Subgroup,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn h(x2: i64) -> HalfInt {
    HalfInt::from_twice(x2)
}

fn report(n: u32, failures: &[String], detail: &str) {
    if failures.is_empty() {
        println!("PASS criterion {n}: {detail}");
    } else {
        let shown: Vec<_> = failures.iter().take(8).cloned().collect();
        println!(
            "FAIL criterion {n}: {detail}; {} failures: {}",
            failures.len(),
            shown.join("; ")
        );
    }
    assert!(failures.is_empty(), "criterion {n}: {failures:?}");
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn criterion_01_radial_oracle() {
    let spec = QuadratureSpec::default();
    let start = Instant::now();
    let mut fails = Vec::new();
    for (a, c) in [(1.0, -3.0), (3.0, -7.0), (0.0, -2.0), (5.0, -9.0)] {
        let closed = radial_integral_closed(a, c).unwrap();
        let (num, _) = radial_integral_numeric(a, c, &spec).unwrap();
        let rel = ((num - closed) / closed).abs();
        if rel > 1e-9 {
            fails.push(format!("({a},{c}) rel {rel:e}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 1.0 {
        fails.push(format!("took {secs:.2}s"));
    }
    report(1, &fails, &format!("4 exponent pairs within 1e-9 in {secs:.3}s"));
}

#[test]
fn criterion_02_square_integrability_boundary() {
    let spec = QuadratureSpec::default();
    let mut fails = Vec::new();
    let ts = [5.0, 10.0, 20.0, 40.0];
    for l in [1, 2, 3] {
        let f = FJParam::new(4, 4, HalfInt::from_int(l)).unwrap();
        let norm = l2_norm_sq(&f, &spec).unwrap();
        if !norm.value.is_finite() || ((norm.value - norm.closed) / norm.closed).abs() > 1e-9 {
            fails.push(format!("λ={l}: norm {} vs {}", norm.value, norm.closed));
        }
        let (a, c) = l2_radial_exponents(4, 4, HalfInt::from_int(l));
        let (a, c) = (a.to_f64(), c.to_f64());
        let closed = radial_integral_closed(a, c).unwrap();
        let vals: Vec<f64> = ts.iter().map(|&t| radial_integral_truncated(a, c, t, &spec)).collect();
        let diffs: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]).abs() / closed).collect();
        if diffs.windows(2).any(|d| d[1] > d[0]) || diffs[diffs.len() - 1] >= 1e-10 {
            fails.push(format!("λ={l}: truncation differences {diffs:?}"));
        }
        // |sinh^a cosh^c| <= 2^{-(a+c)} e^{(a+c)t} for a >= 0, c < 0
        let s = a + c;
        for (&t, &v) in ts.iter().zip(&vals) {
            let tail = 2f64.powf(-s) * (s * t).exp() / -s;
            if closed - v > tail * (1.0 + 1e-9) + 1e-14 * closed {
                fails.push(format!("λ={l} T={t}: tail {} over bound {tail:e}", closed - v));
            }
        }
    }
    let (a, c) = l2_radial_exponents(4, 4, HalfInt::ZERO);
    if radial_integral_closed(a.to_f64(), c.to_f64()).is_ok() {
        fails.push(format!("λ=0: ({a},{c}) accepted"));
    }
    if FJParam::new(4, 4, HalfInt::ZERO).is_ok() {
        fails.push("λ=0 accepted as a parameter".into());
    }
    report(
        2,
        &fails,
        &format!("λ ∈ {{1,2,3}} finite and truncation-Cauchy; λ=0 exponent sum {}", a + c),
    );
}

#[test]
fn criterion_03_decay_bound() {
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
    let start = Instant::now();
    let mut fails = Vec::new();
    for (p, q, l) in combos {
        let f = FJParam::new(p, q, h(l)).unwrap();
        let mut pole = vec![0.0; q];
        pole[q - 1] = 1.0;
        let ts: Vec<f64> = (0..=32).map(|i| 2.0 + 0.25 * i as f64).collect();
        let ys: Vec<f64> = ts.iter().map(|&t| fj_eval(&f, &pole, t).unwrap().abs().ln()).collect();
        let got = slope(&ts, &ys);
        let expected = decay_exponent(p, q, h(l)).to_f64();
        if ((got - expected) / expected).abs() > 0.02 {
            fails.push(format!("({p},{q},{}): slope {got:.4} vs {expected}", h(l)));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 5.0 {
        fails.push(format!("took {secs:.2}s"));
    }
    report(3, &fails, &format!("9 log-slopes within 2% in {secs:.3}s"));
}

#[test]
fn criterion_04_compact_branching() {
    let spec = QuadratureSpec::default();
    let start = Instant::now();
    let mut fails = Vec::new();
    for n in 4..=6 {
        for a in 0..=6 {
            for b in 0..=6 {
                let got = ktype_pairing_nonzero(a, b, n, &spec).unwrap().nonzero;
                if got != (b <= a) {
                    fails.push(format!("(a={a},b={b},n={n}) numeric {got}"));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        fails.push(format!("took {secs:.2}s"));
    }
    report(4, &fails, &format!("147 cells, {secs:.2}s"));
}

/// `(p, q, λ_x2, expected nonzero targets_x2)` for the G² scans.
const G2_SCANS: [(usize, usize, i64, &[i64]); 2] = [(4, 4, 4, &[1, 3]), (4, 6, 6, &[3, 5])];

#[test]
fn criterion_05_g2_period_scan() {
    let spec = QuadratureSpec::default();
    let mut fails = Vec::new();
    let mut cells = 0;
    for (p, q, l, expected) in G2_SCANS {
        for t in valid_targets(p, q, Subgroup::G2, 9) {
            cells += 1;
            let v = period_integral(p, q, Subgroup::G2, h(l), t, &spec, true).unwrap();
            let want = expected.contains(&t.twice());
            let value = v.value.unwrap();
            if v.nonzero != want {
                fails.push(format!(
                    "({p},{q},λ={},μ={t}): |value| {:.3e} vs threshold {:.3e}",
                    h(l),
                    value.abs(),
                    v.threshold
                ));
            }
            if v.predicate_nonzero != want {
                fails.push(format!("({p},{q},λ={},μ={t}): predicate {}", h(l), v.predicate_nonzero));
            }
        }
    }
    report(5, &fails, &format!("{cells} G2 periods at (4,4) λ=2 and (4,6) λ=3"));
}

#[test]
fn criterion_06_g1_period_orthogonality() {
    let spec = QuadratureSpec::default();
    let mut fails = Vec::new();
    for (p, q) in [(5, 4), (5, 6)] {
        for l in [1, 2, 3] {
            if FJParam::new(p, q, HalfInt::from_int(l)).is_ok() {
                fails.push(format!("({p},{q},λ={l}) accepted with half-integral degree"));
            }
        }
    }
    let mut cells = 0;
    for (p, q) in [(5, 4), (5, 6)] {
        for l in [3, 5, 7] {
            for t in valid_targets(p, q, Subgroup::G1, 11) {
                cells += 1;
                let v = period_integral(p, q, Subgroup::G1, h(l), t, &spec, false).unwrap();
                let want = t == h(l) + HalfInt::HALF;
                if v.nonzero != want || v.predicate_nonzero != want {
                    fails.push(format!("({p},{q},λ={},ν={t}): numeric {}", h(l), v.nonzero));
                }
                let (a, c) = v.degree_pair;
                if a != c {
                    let pairing = v.factors.unwrap().pairing;
                    let scale = (zonal_norm_sq_closed(a, q).unwrap() * zonal_norm_sq_closed(c, q).unwrap()).sqrt();
                    if pairing.abs() >= 1e-10 * scale {
                        fails.push(format!("({p},{q},a={a},c={c}): pairing {pairing:e}"));
                    }
                }
            }
        }
    }
    report(
        6,
        &fails,
        &format!("integral λ rejected at odd p+q; {cells} G1 periods at λ ∈ {{3/2,5/2,7/2}}"),
    );
}

#[test]
fn criterion_07_interlacing_equivalence() {
    let spec = QuadratureSpec::default();
    let mut fails = Vec::new();
    let (mut g2_cells, mut g1_hits) = (0, 0);
    for (p, q, l, _) in G2_SCANS {
        let big = inf_char(&FJParam::new(p, q, h(l)).unwrap());
        for t in valid_targets(p, q, Subgroup::G2, 9) {
            g2_cells += 1;
            let small = inf_char(&FJParam::on_subgroup(p, q, t, Subgroup::G2).unwrap());
            let class = interlace_classify(&big, &small).unwrap();
            let pred = nonvanishing(p, q, Subgroup::G2, h(l), t).unwrap();
            if (class == InterlaceClass::FiniteType) != pred {
                fails.push(format!("G2 ({p},{q},λ={},μ={t}): {class} vs predicate {pred}", h(l)));
            }
        }
        for t in valid_targets(p, q, Subgroup::G1, 13) {
            let v = period_integral(p, q, Subgroup::G1, h(l), t, &spec, false).unwrap();
            if !v.nonzero {
                continue;
            }
            g1_hits += 1;
            let small = inf_char(&FJParam::on_subgroup(p, q, t, Subgroup::G1).unwrap());
            let class = interlace_classify(&big, &small).unwrap();
            if class != InterlaceClass::InfiniteType1 {
                fails.push(format!("G1 ({p},{q},λ={},ν={t}): {class}", h(l)));
            }
        }
    }
    if g1_hits == 0 {
        fails.push("no nonzero G1 period on the grid".into());
    }
    report(
        7,
        &fails,
        &format!("{g2_cells} G2 cells, {g1_hits} nonzero G1 cells"),
    );
}

#[test]
fn criterion_08_double_cosets() {
    let start = Instant::now();
    let mut fails = Vec::new();
    for (p, q) in [(4, 4), (4, 6), (6, 6)] {
        let d = packet_double_cosets(p, q, true).unwrap();
        if d.count != 2 {
            fails.push(format!("({p},{q}): {} double cosets", d.count));
        }
        if d.coset_space_size != 2 * ((p + q) / 2) {
            fails.push(format!("({p},{q}): coset space {}", d.coset_space_size));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        fails.push(format!("took {secs:.2}s"));
    }
    report(8, &fails, &format!("brute force at (4,4),(4,6),(6,6) in {secs:.2}s"));
}

#[test]
fn criterion_09_inner_forms_of_so33() {
    let mut fails = Vec::new();
    let forms: Vec<_> = pure_inner_forms(RealForm::new(3, 3)).iter().map(|f| (f.p_sig, f.q_sig)).collect();
    if forms != [(1, 5), (3, 3), (5, 1)] {
        fails.push(format!("forms {forms:?}"));
    }
    let subs: Vec<_> = pure_inner_forms(RealForm::new(2, 3)).iter().map(|f| (f.p_sig, f.q_sig)).collect();
    if subs != [(0, 5), (2, 3), (4, 1)] {
        fails.push(format!("forms of SO(2,3) {subs:?}"));
    }
    let pairs: Vec<_> = relevant_pairs(RealForm::new(3, 3), CodimDirection::DropP)
        .iter()
        .map(|r| ((r.amb.p_sig, r.amb.q_sig), (r.sub.p_sig, r.sub.q_sig)))
        .collect();
    if pairs != [((1, 5), (0, 5)), ((3, 3), (2, 3)), ((5, 1), (4, 1))] {
        fails.push(format!("pairs {pairs:?}"));
    }
    report(9, &fails, "SO(3,3): 3 pure inner forms, 3 relevant pairs");
}

#[test]
fn criterion_10_admissibility_and_conjecture() {
    let mut fails = Vec::new();
    let subs = [Subgroup::G1, Subgroup::G2];
    for m in MemberTag::ALL {
        let n = subs.iter().filter(|&&g| admissibility_table(m, g)).count();
        if n != 1 {
            fails.push(format!("row {m}: {n} trues"));
        }
    }
    for g in subs {
        let n = MemberTag::ALL.iter().filter(|&&m| admissibility_table(m, g)).count();
        if n != 1 {
            fails.push(format!("column {g}: {n} trues"));
        }
    }
    let grid: Vec<HalfInt> = (1..=16).map(h).collect();
    let mut runs = 0;
    for (p, q) in [(4, 4), (4, 6)] {
        for l in 2..=6 {
            for sub in subs {
                runs += 1;
                let r = conjecture_explore_default(p, q, h(l), sub, &grid);
                if !r.disjoint {
                    fails.push(format!("({p},{q},λ={},{sub}) supports overlap", h(l)));
                }
            }
        }
    }
    report(10, &fails, &format!("table is a bijection; {runs} conjecture runs disjoint"));
}

#[test]
fn criterion_11_ellipsoid_estimates() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let chart = HyperboloidChart::new(4, 4).unwrap();
    let mut fails = Vec::new();
    for i in 0..100 {
        let g = random_group_element(4, 4, &mut rng);
        let b = block_decompose(&chart, &g).unwrap();
        let gap = ellipsoid_gap(&b);
        let seen = sampled_gap(&b, 10_000, &mut rng);
        if gap.q_min > seen + 1e-12 {
            fails.push(format!("element {i}: q_min {} above sampled {seen}", gap.q_min));
        }
        if gap.q_min <= gap.bound {
            fails.push(format!("element {i}: q_min {} below {}", gap.q_min, gap.bound));
        }
    }
    for i in 0..100 {
        let g = random_group_element(4, 4, &mut rng);
        let k = random_group_element(4, 4, &mut rng);
        let inv = g.clone().try_inverse().unwrap();
        let (sg, sk) = (scale(&g), scale(&k));
        if ((sg - scale(&inv)) / sg).abs() > 1e-9 {
            fails.push(format!("pair {i}: s(g) {sg} vs s(g⁻¹) {}", scale(&inv)));
        }
        if scale(&(&g * &k)) > sg * sk * (1.0 + 1e-12) {
            fails.push(format!("pair {i}: s(gk) above s(g)s(k)"));
        }
    }
    report(11, &fails, "100 elements x 1e4 samples, 100 scale pairs");
}

#[test]
fn criterion_12_self_duality() {
    let mut fails = Vec::new();
    let mut cells = 0;
    for p in 4..=6 {
        for q in 4..=6 {
            for l in 1..=6 {
                let Ok(f) = FJParam::new(p, q, h(l)) else { continue };
                cells += 1;
                if !is_self_dual(&f) {
                    fails.push(format!("({p},{q},λ={})", h(l)));
                }
            }
        }
    }
    report(12, &fails, &format!("{cells} valid parameters"));
}
