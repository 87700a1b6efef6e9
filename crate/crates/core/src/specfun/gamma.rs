use crate::error::{domain, Error, Result};
use crate::C64;
use alloc::format;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const EPS: f64 = 1e-16;

fn nonpositive_integer(z: C64) -> Option<i64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        Some(z.re as i64)
    } else {
        None
    }
}

/// Complex gamma function (Lanczos, with reflection for Re z < 1/2).
pub fn gamma(z: C64) -> Result<C64> {
    if nonpositive_integer(z).is_some() {
        return Err(Error::Pole(format!("gamma at {z}")));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: C64) -> C64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return C64::new(PI, 0.0) / (s * gamma_unchecked(C64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    x * (2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncompleteGamma {
    pub value: C64,
    /// Set when the result underflowed and was replaced by 0.
    pub underflow: bool,
}

// x^s e^{-x}
fn prefactor(s: C64, x: f64) -> C64 {
    (s * x.ln() - x).exp()
}

// Modified Lentz evaluation of the continued fraction for Γ(s, x).
fn continued_fraction(s: C64, x: f64) -> C64 {
    let tiny = 1e-300;
    let mut b = C64::new(x + 1.0, 0.0) - s;
    let mut c = C64::new(1.0 / tiny, 0.0);
    let mut d = C64::new(1.0, 0.0) / b;
    let mut h = d;
    for i in 1..2000 {
        let fi = i as f64;
        let an = (s - fi) * fi;
        b += 2.0;
        d = an * d + b;
        if d.norm() < tiny {
            d = C64::new(tiny, 0.0);
        }
        c = b + an / c;
        if c.norm() < tiny {
            c = C64::new(tiny, 0.0);
        }
        d = C64::new(1.0, 0.0) / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() < EPS {
            break;
        }
    }
    prefactor(s, x) * h
}

// Lower incomplete gamma γ(s, x) by its power series.
fn lower_series(s: C64, x: f64) -> C64 {
    let mut ap = s;
    let mut del = C64::new(1.0, 0.0) / s;
    let mut sum = del;
    for _ in 0..5000 {
        ap += 1.0;
        del = del * x / ap;
        sum += del;
        if del.norm() < sum.norm() * EPS {
            break;
        }
    }
    sum * prefactor(s, x)
}

// E_1(x) = Γ(0, x) for 0 < x < 1.
fn exp_integral_e1(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for n in 1..200 {
        term *= -x / n as f64;
        let t = term / n as f64;
        sum += t;
        if t.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

fn upper(s: C64, x: f64) -> C64 {
    if x >= s.norm() + 1.0 {
        return continued_fraction(s, x);
    }
    if let Some(n) = nonpositive_integer(s) {
        let mut g = if x < 1.0 {
            C64::new(exp_integral_e1(x), 0.0)
        } else {
            continued_fraction(C64::new(0.0, 0.0), x)
        };
        // Γ(a−1, x) = (Γ(a, x) − x^{a−1} e^{−x}) / (a−1)
        let mut a = 0.0;
        for _ in 0..(-n) {
            a -= 1.0;
            g = (g - prefactor(C64::new(a, 0.0), x)) / a;
        }
        return g;
    }
    if s.re >= 0.5 {
        return gamma_unchecked(s) - lower_series(s, x);
    }
    let n = (0.5 - s.re).ceil() as i64;
    let mut a = s + n as f64;
    let mut g = upper(a, x);
    for _ in 0..n {
        a -= 1.0;
        g = (g - prefactor(a, x)) / a;
    }
    g
}

/// Upper incomplete gamma Γ(s, x) = ∫_x^∞ t^{s−1} e^{−t} dt for complex s and
/// real x > 0.
pub fn upper_incomplete_gamma(s: C64, x: f64) -> Result<IncompleteGamma> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("upper_incomplete_gamma needs x > 0, got {x}"));
    }
    if s.re * x.ln() - x < -700.0 {
        return Ok(IncompleteGamma { value: C64::new(0.0, 0.0), underflow: true });
    }
    let value = upper(s, x);
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Precision(format!("upper_incomplete_gamma({s}, {x}) not finite")));
    }
    Ok(IncompleteGamma { value, underflow: false })
}
