//! Parameter fixtures shared by the criterion benchmarks.

use fjbranch::{HalfInt, Subgroup};

/// A period to time: `(p, q, subgroup, λ, target)`.
#[derive(Debug, Clone, Copy)]
pub struct PeriodCase {
    pub p: usize,
    pub q: usize,
    pub subgroup: Subgroup,
    pub lambda: HalfInt,
    pub target: HalfInt,
}

impl PeriodCase {
    pub fn label(&self) -> String {
        format!("{}_{}_{}_{}_{}", self.subgroup, self.p, self.q, self.lambda, self.target)
    }
}

pub fn period_cases() -> Vec<PeriodCase> {
    let h = HalfInt::from_twice;
    vec![
        PeriodCase { p: 4, q: 4, subgroup: Subgroup::G2, lambda: h(4), target: h(3) },
        PeriodCase { p: 4, q: 6, subgroup: Subgroup::G2, lambda: h(6), target: h(5) },
        PeriodCase { p: 5, q: 4, subgroup: Subgroup::G1, lambda: h(5), target: h(6) },
        PeriodCase { p: 5, q: 6, subgroup: Subgroup::G1, lambda: h(7), target: h(8) },
    ]
}

/// Shapes for the double-coset counts.
pub const COSET_SHAPES: [(usize, usize); 3] = [(4, 4), (4, 6), (6, 6)];

/// Radial exponent pairs with closed forms.
pub const RADIAL_PAIRS: [(f64, f64); 4] = [(1.0, -3.0), (3.0, -7.0), (0.0, -2.0), (5.0, -9.0)];

#[cfg(test)]
mod tests {
    use super::*;
    use fjbranch::periods::period_integral;
    use fjbranch::QuadratureSpec;

    #[test]
    fn every_fixture_is_a_convergent_period() {
        for c in period_cases() {
            let v = period_integral(c.p, c.q, c.subgroup, c.lambda, c.target, &QuadratureSpec::default(), false)
                .unwrap();
            assert!(v.nonzero, "{}", c.label());
        }
    }
}
