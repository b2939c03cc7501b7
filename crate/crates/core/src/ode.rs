//! Continuous model of greedy-versus-balanced play on `K_n`.
//!
//! With `t` the fraction of vertices cleaned and `f(t)` the brushes played
//! scaled by `n²`, the play follows `f' = 2(1 - t - f/(1 - t))`, `f(0) = 0`,
//! whose solution is `f(t) = -2(1 - t)² ln(1 - t)`. The game ends where
//! `f'` vanishes, at `t₀ = 1 - e^{-1/2}` with `f(t₀) = 1/e`.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("t = {0} is outside [0, 1)")]
pub struct OdeDomainError(pub f64);

fn check(t: f64) -> Result<(), OdeDomainError> {
    if (0.0..1.0).contains(&t) {
        Ok(())
    } else {
        Err(OdeDomainError(t))
    }
}

pub fn ode_f(t: f64) -> Result<f64, OdeDomainError> {
    check(t)?;
    let s = 1.0 - t;
    Ok(-2.0 * s * s * libm::log(s))
}

pub fn ode_fprime(t: f64) -> Result<f64, OdeDomainError> {
    check(t)?;
    let s = 1.0 - t;
    Ok(2.0 * s * (1.0 + 2.0 * libm::log(s)))
}

/// Right-hand side of the differential equation.
pub fn ode_rhs(t: f64, f: f64) -> f64 {
    2.0 * (1.0 - t - f / (1.0 - t))
}

/// `(t₀, f(t₀))`.
pub fn ode_constants() -> (f64, f64) {
    let t0 = 1.0 - libm::exp(-0.5);
    (t0, ode_f(t0).expect("t0 lies in [0, 1)"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert_eq!(ode_f(0.0), Ok(0.0));
        let half = ode_f(0.5).unwrap();
        assert!((half - core::f64::consts::LN_2 / 2.0).abs() < 1e-15);
        assert!((half - 0.34657).abs() < 1e-5);
        assert!(ode_f(1.0).is_err());
        assert!(ode_fprime(-0.1).is_err());
    }

    #[test]
    fn turning_point() {
        let (t0, f0) = ode_constants();
        assert!((f0 - (-1.0f64).exp()).abs() < 1e-12);
        assert!(ode_fprime(t0).unwrap().abs() < 1e-9);
    }

    #[test]
    fn runge_kutta_agrees_with_closed_form() {
        // integrate the equation directly, independent of the closed form
        let h = 1e-4;
        let (mut t, mut f) = (0.0f64, 0.0f64);
        while t < 0.9 - 1e-12 {
            let k1 = ode_rhs(t, f);
            let k2 = ode_rhs(t + h / 2.0, f + h * k1 / 2.0);
            let k3 = ode_rhs(t + h / 2.0, f + h * k2 / 2.0);
            let k4 = ode_rhs(t + h, f + h * k3);
            f += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
            t += h;
            assert!((f - ode_f(t).unwrap()).abs() < 1e-9, "t = {t}");
        }
    }
}
