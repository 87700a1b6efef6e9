//! Scalar special functions: Bernoulli polynomials, Hurwitz and periodic
//! zeta, the Bloch-Wigner dilogarithm and the upper incomplete gamma
//! function.

mod dilog;
mod gamma;
mod zeta;

pub use dilog::bloch_wigner;
pub use gamma::{gamma, upper_incomplete_gamma, IncompleteGamma};
pub use zeta::{hurwitz_laurent_at_one, hurwitz_zeta, periodic_zeta};

use crate::error::{domain, Result};
use crate::C64;
use core::f64::consts::PI;
use num_rational::Ratio;
#[allow(unused_imports)]
use num_traits::Float;

pub type Rational = Ratio<i64>;

/// ζ(3).
pub const ZETA3: f64 = 1.202056903159594285399738161511;
/// ζ'(−2) = −ζ(3)/(4π²).
pub const ZETA_PRIME_MINUS2: f64 = -0.030448457058393270780251530471155;

/// Bernoulli numbers B_2, B_4, ..., B_60.
pub(crate) const BERNOULLI_2K: [f64; 30] = [
    1.6666666666666666667e-1,
    -3.3333333333333333333e-2,
    2.3809523809523809524e-2,
    -3.3333333333333333333e-2,
    7.5757575757575757576e-2,
    -2.5311355311355311355e-1,
    1.1666666666666666667,
    -7.0921568627450980392,
    5.4971177944862155388e+1,
    -5.2912424242424242424e+2,
    6.1921231884057971014e+3,
    -8.6580253113553113553e+4,
    1.4255171666666666667e+6,
    -2.7298231067816091954e+7,
    6.0158087390064236838e+8,
    -1.5116315767092156863e+10,
    4.2961464306116666667e+11,
    -1.3711655205088332772e+13,
    4.8833231897359316667e+14,
    -1.9296579341940068149e+16,
    8.41693047573682615e+17,
    -4.0338071854059455413e+19,
    2.1150748638081991606e+21,
    -1.2086626522296525935e+23,
    7.5008667460769643669e+24,
    -5.0387781014810689141e+26,
    3.6528776484818123335e+28,
    -2.8498769302450882226e+30,
    2.3865427499683627645e+32,
    -2.1399949257225333666e+34,
];

pub fn rat(n: i64, d: i64) -> Rational {
    Ratio::new(n, d)
}

/// Representative of `r` mod 1 in [0, 1).
pub fn frac(r: Rational) -> Rational {
    let n = r.numer().rem_euclid(*r.denom());
    Ratio::new_raw(n, *r.denom())
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// e(t) = exp(2πit), reducing t mod 1 exactly first.
pub fn e_rat(t: Rational) -> C64 {
    let th = 2.0 * PI * to_f64(frac(t));
    C64::new(th.cos(), th.sin())
}

/// Bernoulli polynomial B_k(t) for 1 ≤ k ≤ 6.
pub fn bernoulli_poly(k: u32, t: f64) -> Result<f64> {
    if !(1..=6).contains(&k) {
        return domain("bernoulli_poly supports 1 <= k <= 6");
    }
    Ok(bpoly(k, t))
}

pub(crate) fn bpoly(k: u32, t: f64) -> f64 {
    let t2 = t * t;
    match k {
        0 => 1.0,
        1 => t - 0.5,
        2 => t2 - t + 1.0 / 6.0,
        3 => t * (t2 - 1.5 * t + 0.5),
        4 => t2 * (t2 - 2.0 * t + 1.0) - 1.0 / 30.0,
        5 => t * (t2 * (t2 - 2.5 * t + 5.0 / 3.0) - 1.0 / 6.0),
        6 => t2 * (t2 * (t2 - 3.0 * t + 2.5) - 0.5) + 1.0 / 42.0,
        _ => f64::NAN,
    }
}

/// B_k({r}) for a rational argument.
pub(crate) fn bfrac(k: u32, r: Rational) -> f64 {
    bpoly(k, to_f64(frac(r)))
}
