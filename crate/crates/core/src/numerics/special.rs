use crate::error::{Error, Result};

fn check_positive(function: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: x,
            requirement: "x > 0",
        })
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_positive("log_gamma", x)?;
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// `B(x, y) = Γ(x)Γ(y)/Γ(x+y)` for positive arguments.
pub fn beta(x: f64, y: f64) -> Result<f64> {
    check_positive("beta", x)?;
    check_positive("beta", y)?;
    let ln = statrs::function::gamma::ln_gamma(x) + statrs::function::gamma::ln_gamma(y)
        - statrs::function::gamma::ln_gamma(x + y);
    Ok(ln.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn log_gamma_values() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(rel(log_gamma(0.5).unwrap(), PI.sqrt().ln()) < 1e-12);
        assert!(rel(log_gamma(5.0).unwrap(), 24f64.ln()) < 1e-12);
        // ln Γ(n+1) = ln n! across the range
        let mut ln_fact = 0.0f64;
        for n in 1..170u32 {
            ln_fact += (n as f64).ln();
            assert!(rel(log_gamma(n as f64 + 1.0).unwrap(), ln_fact) < 1e-12, "n={n}");
        }
        // Γ(1/2 + n) = (2n)! √π / (4^n n!)
        let mut g = PI.sqrt();
        for n in 1..40 {
            g *= n as f64 - 0.5;
            assert!(rel(log_gamma(n as f64 + 0.5).unwrap(), g.ln()) < 1e-12, "n={n}");
        }
        // Γ(x) ~ 1/x near zero: ln Γ(1e-3) = -ln(1e-3) - γ·1e-3 + O(1e-6)
        let small = log_gamma(1e-3).unwrap();
        assert!(rel(small, 6.907178885383853) < 1e-12, "{small}");
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(log_gamma(0.0), Err(Error::Domain { .. })));
        assert!(log_gamma(-1.5).is_err());
        assert!(beta(0.0, 1.0).is_err());
        assert!(beta(1.0, -2.0).is_err());
    }

    #[test]
    fn beta_values() {
        assert!(rel(beta(1.0, 1.0).unwrap(), 1.0) < 1e-12);
        assert!(rel(beta(2.0, 2.0).unwrap(), 1.0 / 6.0) < 1e-12);
        assert!(rel(beta(0.5, 0.5).unwrap(), PI) < 1e-12);
    }

    proptest! {
        #[test]
        fn beta_symmetric(x in 0.01f64..50.0, y in 0.01f64..50.0) {
            let a = beta(x, y).unwrap();
            let b = beta(y, x).unwrap();
            prop_assert!(rel(a, b) <= 1e-13);
        }
    }
}
