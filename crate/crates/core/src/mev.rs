//! Multiple Eisenstein values Λ(x₁,…,x_n), their real/imaginary channel
//! variants and general totally holomorphic values Λ(f₁,…,f_n; m₁,…,m_n).

use crate::eisenstein::{e_constant_term, EisensteinSpec, EllipticParam};
use crate::error::{domain, Result};
use crate::regint::{word_integral_zero_to_infinity, AdmissibleForm, Channel, WordValue};
use crate::specfun::{e_rat, to_f64, Rational};
use crate::C64;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn channel(self) -> Channel {
        match self {
            Sign::Plus => Channel::Plus,
            Sign::Minus => Channel::Minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MevResult {
    pub value: C64,
    pub truncation_bound: f64,
    pub word_echo: String,
}

fn echo(params: &[EllipticParam]) -> String {
    let parts: Vec<String> = params.iter().map(|x| format!("{x}")).collect();
    format!("Lambda({})", parts.join(", "))
}

/// Closed form of Λ(x) for a single parameter x ≠ 0.
pub fn lambda_single_closed(x: EllipticParam) -> Result<C64> {
    if x.is_zero() {
        return domain("Lambda(x) needs x != 0");
    }
    let one = C64::new(1.0, 0.0);
    Ok(if x.x1 == Rational::from_integer(0) {
        C64::new((one - e_rat(x.x2)).norm().ln(), 0.0)
    } else if x.x2 == Rational::from_integer(0) {
        C64::new(-(one - e_rat(x.x1)).norm().ln(), 0.0)
    } else {
        C64::new(0.0, 2.0 * PI * (to_f64(x.x1) - 0.5) * (to_f64(x.x2) - 0.5))
    })
}

fn check_params(params: &[EllipticParam]) -> Result<()> {
    if params.is_empty() || params.len() > 3 {
        return domain("MEVs of length 1 to 3 are supported");
    }
    for x in params {
        if x.is_zero() {
            return domain(format!("parameter {x} is zero"));
        }
        if params.len() > 1 && !x.coords_nonzero() {
            return domain(format!("parameter {x} has a zero coordinate (all coordinates must be non-zero for length >= 2)"));
        }
    }
    Ok(())
}

/// Λ(x₁,…,x_n) = ∫_0^∞ dlog g_{x₁} … dlog g_{x_n}.
pub fn lambda_mev(params: &[EllipticParam], cutoff: Rational) -> Result<MevResult> {
    check_params(params)?;
    let word: Vec<AdmissibleForm> =
        params.iter().map(|x| AdmissibleForm::dlog(*x, Channel::Holomorphic, cutoff)).collect::<Result<_>>()?;
    let WordValue { value, truncation_bound } = word_integral_zero_to_infinity(&word)?;
    Ok(MevResult { value, truncation_bound, word_echo: echo(params) })
}

/// Λ^{ε₁…ε_n}: the same integral over ω^± = Re/Im dlog g.
pub fn lambda_signed(params: &[EllipticParam], signs: &[Sign], cutoff: Rational) -> Result<f64> {
    check_params(params)?;
    if signs.len() != params.len() {
        return domain("signs and params must have equal length");
    }
    let word: Vec<AdmissibleForm> = params
        .iter()
        .zip(signs)
        .map(|(x, s)| AdmissibleForm::dlog(*x, s.channel(), cutoff))
        .collect::<Result<_>>()?;
    Ok(word_integral_zero_to_infinity(&word)?.value.re)
}

/// Λ(E^{(k₁)}_{x₁},…; m₁,…) with letters E^{(k_i)}_{x_i} τ^{m_i−1} dτ.
pub fn lambda_general(weights: &[u32], params: &[EllipticParam], powers: &[u32], cutoff: Rational) -> Result<C64> {
    if weights.len() != params.len() || powers.len() != params.len() || params.is_empty() {
        return domain("weights, params and powers must be non-empty and of equal length");
    }
    let word: Vec<AdmissibleForm> = weights
        .iter()
        .zip(params)
        .zip(powers)
        .map(|((k, x), m)| AdmissibleForm::eisenstein(*k, *x, *m, cutoff))
        .collect::<Result<_>>()?;
    Ok(word_integral_zero_to_infinity(&word)?.value)
}

/// ∂Λ(x₁,…,x_n)/∂x_{p,2} (p is 1-based) from the length-drop formula: the
/// derivative of E^{(2)}_{x_p} in x_{p,2} is d/dτ E^{(1)}_{x_p}, and
/// integrating by parts merges E^{(1)}_{x_p} into a neighbouring letter.
pub fn lambda_diff_x2(params: &[EllipticParam], p: usize, cutoff: Rational) -> Result<C64> {
    check_params(params)?;
    let n = params.len();
    if p == 0 || p > n {
        return domain("p out of range");
    }
    let one = C64::new(1.0, 0.0);
    let e = |k: u32, x: EllipticParam| EisensteinSpec::e(k, x);
    let letter = |x: EllipticParam| AdmissibleForm::product(&[e(2, x)?], 0, one, cutoff);
    let xp = params[p - 1];
    let mut total = C64::new(0.0, 0.0);
    // first term: E^{(1)}_{x_p} merged into the next letter
    if p == n {
        if n > 1 {
            let w: Vec<AdmissibleForm> = params[..n - 1].iter().map(|x| letter(*x)).collect::<Result<_>>()?;
            total += e_constant_term(1, xp) * word_integral_zero_to_infinity(&w)?.value;
        } else {
            total += e_constant_term(1, xp);
        }
    } else {
        let mut w = Vec::new();
        for x in &params[..p - 1] {
            w.push(letter(*x)?);
        }
        w.push(AdmissibleForm::product(&[e(1, xp)?, e(2, params[p])?], 0, one, cutoff)?);
        for x in &params[p + 1..] {
            w.push(letter(*x)?);
        }
        total += word_integral_zero_to_infinity(&w)?.value;
    }
    // second term: merged into the previous letter (absent for p = 1, since
    // the regularised value of E^{(1)} at 0 vanishes)
    if p > 1 {
        let mut w = Vec::new();
        for x in &params[..p - 2] {
            w.push(letter(*x)?);
        }
        w.push(AdmissibleForm::product(&[e(2, params[p - 2])?, e(1, xp)?], 0, one, cutoff)?);
        for x in &params[p..] {
            w.push(letter(*x)?);
        }
        total -= word_integral_zero_to_infinity(&w)?.value;
    }
    Ok(total * C64::new(0.0, 2.0 * PI).powi(n as i32))
}
