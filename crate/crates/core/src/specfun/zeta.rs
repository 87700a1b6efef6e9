use super::{e_rat, frac, to_f64, Rational, BERNOULLI_2K};
use crate::error::{Error, Result};
use crate::C64;
use alloc::format;
#[allow(unused_imports)]
use num_traits::Float;

const EM_SPLIT: usize = 30;
const EM_TERMS: usize = 12;
// For Re s ≤ 0 the head terms grow like n^{-s}, so a short head keeps the
// cancellation against the tail small; the tail still converges fast.
const EM_SPLIT_LEFT: usize = 8;
const EM_TERMS_LEFT: usize = 20;

fn shift(y: Rational) -> f64 {
    let a = to_f64(frac(y));
    if a == 0.0 {
        1.0
    } else {
        a
    }
}

// Σ_{n≥0} (n+a)^{-s} for s ≠ 1, Euler-Maclaurin at n = EM_SPLIT.
fn euler_maclaurin(a: f64, s: C64) -> C64 {
    let nonpositive_integer = s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round();
    let (split, terms) = if s.re > 0.0 {
        (EM_SPLIT, EM_TERMS)
    } else if nonpositive_integer {
        // the correction series terminates, giving the Bernoulli polynomial exactly
        (0, BERNOULLI_2K.len())
    } else {
        (EM_SPLIT_LEFT, EM_TERMS_LEFT)
    };
    let mut head = C64::new(0.0, 0.0);
    for n in 0..split {
        head += (-s * (n as f64 + a).ln()).exp();
    }
    let big = split as f64 + a;
    let ln_big = big.ln();
    let pow = (-s * ln_big).exp(); // big^{-s}
    let mut tail = pow * big / (s - 1.0) + pow * 0.5;
    // p_j = (s)_{2j-1} / (2j)! · big^{-s-2j+1}
    let mut p = s * pow / (2.0 * big);
    for j in 1..=terms {
        tail += p * BERNOULLI_2K[j - 1];
        let jj = j as f64;
        p = p * (s + (2.0 * jj - 1.0)) * (s + 2.0 * jj) / ((2.0 * jj + 1.0) * (2.0 * jj + 2.0) * big * big);
    }
    head + tail
}

/// Hurwitz zeta ζ(y, s) = Σ_{n>0, n≡y mod 1} n^{-s}.
///
/// For y ≡ 0 this is the Riemann zeta function. The pole at s = 1 is an
/// error; use [`hurwitz_laurent_at_one`] for its Laurent data.
pub fn hurwitz_zeta(y: Rational, s: C64) -> Result<C64> {
    if s == C64::new(1.0, 0.0) {
        return Err(Error::Pole(format!("hurwitz_zeta({y}, s) at s = 1")));
    }
    if !(s.re.is_finite() && s.im.is_finite()) || s.norm() > 60.0 {
        return Err(Error::Precision(format!("hurwitz_zeta: |s| = {} out of range", s.norm())));
    }
    Ok(euler_maclaurin(shift(y), s))
}

/// (residue, constant term) of ζ(y, s) at s = 1. The constant term is −ψ({y}),
/// with ψ the digamma function and {0} read as 1.
pub fn hurwitz_laurent_at_one(y: Rational) -> (f64, f64) {
    let a = shift(y);
    let mut c = 0.0;
    for n in 0..EM_SPLIT {
        c += 1.0 / (n as f64 + a);
    }
    let big = EM_SPLIT as f64 + a;
    c += -big.ln() + 0.5 / big;
    let mut p = 1.0 / (big * big);
    for j in 1..=EM_TERMS {
        c += BERNOULLI_2K[j - 1] / (2.0 * j as f64) * p;
        p /= big * big;
    }
    (1.0, c)
}

/// Periodic zeta ζ̂(y, s) = Σ_{n≥1} e(ny) n^{-s}, continued to all s.
///
/// For y = p/q ≠ 0 the series splits into residue classes mod q, giving
/// q^{-s} Σ_r e(rp/q) ζ(r/q, s); the poles at s = 1 cancel and the value
/// there comes from the Laurent constants.
pub fn periodic_zeta(y: Rational, s: C64) -> Result<C64> {
    let y = frac(y);
    if *y.numer() == 0 {
        return hurwitz_zeta(y, s)
            .map_err(|_| Error::Pole(format!("periodic_zeta(0, s) at s = {s}")));
    }
    let q = *y.denom();
    let one = C64::new(1.0, 0.0);
    let mut acc = C64::new(0.0, 0.0);
    if s == one {
        for r in 1..=q {
            let rr = Rational::new(r, q);
            acc += e_rat(y * r) * hurwitz_laurent_at_one(rr).1;
        }
        return Ok(acc / q as f64);
    }
    if !(s.re.is_finite() && s.im.is_finite()) || s.norm() > 60.0 {
        return Err(Error::Precision(format!("periodic_zeta: |s| = {} out of range", s.norm())));
    }
    for r in 1..=q {
        let rr = Rational::new(r, q);
        acc += e_rat(y * r) * euler_maclaurin(shift(rr), s);
    }
    Ok(acc * (-s * (q as f64).ln()).exp())
}
