//! Quadrature oracle for the K₂ regulator: ∫₀^∞ η(g_a, g_b) along the
//! imaginary axis, with g_x evaluated from its product expansion rather
//! than from the Eisenstein series engine.

use mevreg_core::eisenstein::EllipticParam;
use mevreg_core::quad::integrate;
use mevreg_core::specfun::to_f64;
use mevreg_core::C64;
use std::f64::consts::PI;

/// Upper end of the truncated integral; the integrand decays like
/// y·exp(−2πy/N) when both parameters have nonzero coordinates.
pub const Y_MAX: f64 = 80.0;

/// (log|g_x(iy)|, d/dy arg g_x(iy)) from the product
/// g_x = q^{B₂(x₁)/2} ∏_{n≥0} (1 − q^{n+x₁} e(x₂)) ∏_{n≥1} (1 − q^{n−x₁} e(−x₂)).
pub fn siegel_at(x: EllipticParam, y: f64) -> (f64, f64) {
    let a1 = to_f64(x.x1);
    let a2 = to_f64(x.x2);
    let b2 = a1 * a1 - a1 + 1.0 / 6.0;
    let mut log_abs = -PI * b2 * y;
    let mut darg = 0.0;
    let mut factor = |c: f64, t: f64| {
        // 1 − w with w = e^{−2πcy} e(t)
        let w = C64::from_polar((-2.0 * PI * c * y).exp(), 2.0 * PI * t);
        let one_minus = C64::new(1.0, 0.0) - w;
        log_abs += one_minus.norm().ln();
        darg += (w * (2.0 * PI * c) / one_minus).im;
    };
    let n_max = (40.0 / (2.0 * PI * y)).ceil() as i64 + 2;
    for n in 0..=n_max {
        factor(n as f64 + a1, a2);
        if n >= 1 {
            factor(n as f64 - a1, -a2);
        }
    }
    (log_abs, darg)
}

fn eta(a: EllipticParam, b: EllipticParam, y: f64) -> f64 {
    let (la, da) = siegel_at(a, y);
    let (lb, db) = siegel_at(b, y);
    la * db - lb * da
}

/// ∫₀^∞ η(g_a, g_b), folding (0, 1] onto [1, ∞) with g_x(−1/τ) ~ g_{xσ}(τ).
pub fn k2_quadrature(a: EllipticParam, b: EllipticParam, tol: f64) -> f64 {
    let (asig, bsig) = (a.sigma(), b.sigma());
    let upper = integrate(|y| eta(a, b, y), 1.0, Y_MAX, tol);
    let lower = integrate(|y| eta(asig, bsig, y), 1.0, Y_MAX, tol);
    upper - lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use mevreg_core::regulator::k2_regulator;
    use mevreg_core::series::default_cutoff;

    fn p(a: i64, b: i64, d: i64) -> EllipticParam {
        EllipticParam::from_ints(a, b, d)
    }

    #[test]
    fn siegel_log_derivative() {
        // d/dy log|g| against a central difference of the product
        let x = p(2, 3, 7);
        let h = 1e-5;
        let fd = (siegel_at(x, 1.3 + h).0 - siegel_at(x, 1.3 - h).0) / (2.0 * h);
        let re = {
            let s = mevreg_core::eisenstein::e_series(2, x, default_cutoff()).unwrap();
            (s.eval_tau(C64::new(0.0, 1.3)) * (-2.0 * PI)).re
        };
        assert!((fd - re).abs() < 1e-8, "{fd} vs {re}");
    }

    #[test]
    fn against_series() {
        for (a, b) in [(p(1, 3, 7), p(5, 2, 7)), (p(1, 0, 5), p(2, 1, 5)), (p(0, 1, 5), p(2, 1, 5)), (p(1, 1, 12), p(2, 9, 12))] {
            let q = k2_quadrature(a, b, 1e-12);
            let r = k2_regulator(a, b, default_cutoff()).unwrap();
            assert!(q.abs() > 1e-3, "{a} {b}: {q}");
            assert!((q - r).abs() < 1e-9, "{a} {b}: {q} vs {r}");
        }
    }

    #[test]
    fn antisymmetric() {
        let (a, b) = (p(1, 2, 5), p(3, 1, 5));
        assert!((k2_quadrature(a, b, 1e-12) + k2_quadrature(b, a, 1e-12)).abs() < 1e-12);
        assert_eq!(k2_quadrature(a, a, 1e-12), 0.0);
    }
}
