//! Regularised iterated integrals along the imaginary axis.
//!
//! A form ω = f(τ)dτ is carried by the expansion of f at ∞ and the expansion
//! at ∞ of its pullback by σ: τ ↦ −1/τ, which describes it near 0. Integrals
//! from 0 to ∞ are split at τ₀ = iy₀ (y₀ = 1 by default).

use crate::eisenstein::EisensteinSpec;
use crate::error::{domain, Error, Result};
use crate::series::TauQSeries;
use crate::specfun::{to_f64, Rational};
use crate::C64;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Holomorphic,
    /// Re ω on the imaginary axis.
    Plus,
    /// Im ω on the imaginary axis.
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleForm {
    /// f with ω = f(τ)dτ.
    pub inf_side: TauQSeries,
    /// g with σ*ω = g(τ)dτ.
    pub zero_side: Option<TauQSeries>,
    pub channel: Channel,
}

pub type FormWord = Vec<AdmissibleForm>;

/// A scalar result with its truncation estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WordValue {
    pub value: C64,
    pub truncation_bound: f64,
}

impl AdmissibleForm {
    pub fn new(inf_side: TauQSeries, zero_side: Option<TauQSeries>) -> Self {
        AdmissibleForm { inf_side, zero_side, channel: Channel::Holomorphic }
    }

    /// scalar · τ^m · Π f_i(τ) dτ, with σ-side assembled from the factors'
    /// modular transformations: each f_i(−1/τ) = ε_i τ^{k_i} f_i'(τ), so the
    /// pullback is scalar · (−1)^m ε · τ^{Σk_i − m − 2} Π f_i'(τ) dτ.
    pub fn product(factors: &[EisensteinSpec], m: u32, scalar: C64, cutoff: Rational) -> Result<Self> {
        let mut inf = TauQSeries::monomial(Rational::zero(), m, scalar, cutoff);
        let mut zero = TauQSeries::constant(if m % 2 == 0 { scalar } else { -scalar }, cutoff);
        let mut total_k: i64 = 0;
        for f in factors {
            inf = inf.mul(&f.series(cutoff));
            let sd = f.sigma_side()?;
            zero = zero.mul(&sd.spec.series(cutoff)).scale(C64::new(sd.sign as f64, 0.0));
            total_k += sd.tau_power as i64;
        }
        let p = total_k - m as i64 - 2;
        if p < 0 {
            return domain(format!("form is not admissible at 0: total weight {total_k}, tau power {m}"));
        }
        Ok(AdmissibleForm::new(inf, Some(zero.mul_tau_power(p as u32))))
    }

    /// E^{(k)}_x τ^{m−1} dτ with 1 ≤ m ≤ k − 1.
    pub fn eisenstein(k: u32, x: crate::eisenstein::EllipticParam, m: u32, cutoff: Rational) -> Result<Self> {
        if m < 1 || m + 1 > k {
            return domain(format!("need 1 <= m <= k - 1, got k = {k}, m = {m}"));
        }
        Self::product(&[EisensteinSpec::e(k, x)?], m - 1, C64::new(1.0, 0.0), cutoff)
    }

    /// dlog g_x = 2πi E^{(2)}_x dτ, or its real or imaginary part on the axis.
    pub fn dlog(x: crate::eisenstein::EllipticParam, channel: Channel, cutoff: Rational) -> Result<Self> {
        let f = Self::product(&[EisensteinSpec::e(2, x)?], 0, C64::new(0.0, 2.0 * PI), cutoff)?;
        Ok(f.project(channel))
    }

    /// Re or Im part along the axis: (f ∓ conj_axis f)/2 and /2i.
    pub fn project(&self, channel: Channel) -> Self {
        let proj = |s: &TauQSeries| match channel {
            Channel::Holomorphic => s.clone(),
            Channel::Plus => s.sub(&s.conj_axis()).scale(C64::new(0.5, 0.0)),
            Channel::Minus => s.add(&s.conj_axis()).scale(C64::new(0.0, -0.5)),
        };
        AdmissibleForm {
            inf_side: proj(&self.inf_side),
            zero_side: self.zero_side.as_ref().map(proj),
            channel,
        }
    }

    /// The pullback σ*ω. Since σ² = −I acts trivially, the two sides swap.
    pub fn sigma(&self) -> Result<Self> {
        let z = self.zero_side.clone().ok_or_else(|| Error::Domain("form has no zero-side expansion".into()))?;
        Ok(AdmissibleForm { inf_side: z, zero_side: Some(self.inf_side.clone()), channel: self.channel })
    }

    pub fn scale(&self, k: C64) -> Self {
        AdmissibleForm {
            inf_side: self.inf_side.scale(k),
            zero_side: self.zero_side.as_ref().map(|s| s.scale(k)),
            channel: self.channel,
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let zero_side = match (&self.zero_side, &o.zero_side) {
            (Some(a), Some(b)) => Some(a.add(b)),
            _ => None,
        };
        let channel = if self.channel == o.channel { self.channel } else { Channel::Holomorphic };
        Ok(AdmissibleForm { inf_side: self.inf_side.add(&o.inf_side), zero_side, channel })
    }

    /// f(i) + g(i), which vanishes because dτ pulls back to τ^{−2}dτ.
    pub fn sigma_mismatch_at_i(&self) -> Option<f64> {
        let z = self.zero_side.as_ref()?;
        Some((self.inf_side.evaluate_at(1.0).value + z.evaluate_at(1.0).value).norm())
    }
}

/// mul_series
pub fn mul_series(a: &TauQSeries, b: &TauQSeries) -> TauQSeries {
    a.mul(b)
}

/// conj_axis
pub fn conj_axis(a: &TauQSeries) -> TauQSeries {
    a.conj_axis()
}

/// reg_value_at_infinity
pub fn reg_value_at_infinity(f: &TauQSeries) -> C64 {
    f.reg_value_at_infinity()
}

/// evaluate_at, restricted to y ≥ 1/2.
pub fn evaluate_at(f: &TauQSeries, y: f64) -> Result<WordValue> {
    if !(y >= 0.5) {
        return domain(format!("evaluate_at needs y >= 0.5, got {y}"));
    }
    let e = f.evaluate_at(y);
    Ok(WordValue { value: e.value, truncation_bound: e.tail_bound })
}

/// The primitive of ω with regularised value 0 at ∞, i.e. −∫_τ^∞ ω.
pub fn antiderivative_to_infinity(omega: &TauQSeries) -> TauQSeries {
    let mut out = TauQSeries::zero(omega.cutoff());
    for (a, m, c) in omega.iter() {
        if a.is_zero() {
            out.add_term(a, m + 1, c / (m + 1) as f64);
            continue;
        }
        // ∫ τ^m e^{βτ} = e^{βτ} Σ_j (−1)^j m!/(m−j)! τ^{m−j} / β^{j+1}
        let beta = C64::new(0.0, 2.0 * PI * to_f64(a));
        let mut coef = c / beta;
        for j in 0..=m {
            out.add_term(a, m - j, coef);
            coef = -coef * (m - j) as f64 / beta;
        }
    }
    out
}

/// ∫_τ^∞ ω₁…ω_n as a function of τ, for the letters' ∞-side coefficient
/// series. Returns the suffix integrals too: `out[k]` is ∫_τ^∞ ω_{k+1}…ω_n,
/// with `out[n]` = 1.
fn suffix_integrals(letters: &[&TauQSeries]) -> Vec<TauQSeries> {
    let n = letters.len();
    let cutoff = letters.iter().map(|l| l.cutoff()).min().unwrap_or(Rational::from_integer(12));
    let mut out = vec![TauQSeries::one(cutoff); n + 1];
    for k in (0..n).rev() {
        let prod = letters[k].mul(&out[k + 1]);
        out[k] = antiderivative_to_infinity(&prod).scale(C64::new(-1.0, 0.0));
    }
    out
}

/// word_integral_to_infinity: the series of τ ↦ ∫_τ^∞ ω₁…ω_n.
pub fn word_integral_to_infinity(word: &[AdmissibleForm]) -> Result<TauQSeries> {
    if word.is_empty() {
        return domain("empty word");
    }
    let letters: Vec<&TauQSeries> = word.iter().map(|w| &w.inf_side).collect();
    Ok(suffix_integrals(&letters).swap_remove(0))
}

/// ∫_0^∞ ω₁…ω_n, split at τ₀ = i.
pub fn word_integral_zero_to_infinity(word: &[AdmissibleForm]) -> Result<WordValue> {
    word_integral_zero_to_infinity_at(word, 1.0)
}

/// ∫_0^∞ ω₁…ω_n split at τ₀ = iy₀:
/// Σ_k (−1)^k [∫_{−1/τ₀}^∞ σ*ω_k…σ*ω_1] · [∫_{τ₀}^∞ ω_{k+1}…ω_n].
pub fn word_integral_zero_to_infinity_at(word: &[AdmissibleForm], y0: f64) -> Result<WordValue> {
    if word.is_empty() {
        return domain("empty word");
    }
    if word.len() > 4 {
        return domain("words of length > 4 are not supported");
    }
    if !(0.5..=2.0).contains(&y0) {
        return domain("base point must satisfy 1/2 <= y0 <= 2");
    }
    let n = word.len();
    let inf: Vec<&TauQSeries> = word.iter().map(|w| &w.inf_side).collect();
    let mut zero: Vec<&TauQSeries> = Vec::with_capacity(n);
    for w in word.iter().rev() {
        zero.push(w.zero_side.as_ref().ok_or_else(|| Error::Domain("letter without zero-side expansion".into()))?);
    }
    // right[k] = ∫_{τ₀}^∞ ω_{k+1}…ω_n
    let right = suffix_integrals(&inf);
    // left[j] = ∫ σ*ω_{n−j}…σ*ω_1 ; we need the prefixes of the reversed word,
    // which are suffixes of `zero` read from the end
    let left = suffix_integrals(&zero);
    let mut value = C64::new(0.0, 0.0);
    let mut bound = 0.0;
    for k in 0..=n {
        // ∫_0^{τ₀} ω₁…ω_k = (−1)^k ∫_{−1/τ₀}^∞ σ*ω_k…σ*ω_1 = (−1)^k left[n−k]
        let l = left[n - k].evaluate_at(1.0 / y0);
        let r = right[k].evaluate_at(y0);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        value += l.value * r.value * sign;
        bound += l.tail_bound * r.value.norm() + r.tail_bound * l.value.norm() + l.tail_bound * r.tail_bound;
    }
    Ok(WordValue { value, truncation_bound: bound })
}

/// All interleavings of two words preserving their internal orders.
pub fn shuffle_expand<T: Clone>(a: &[T], b: &[T]) -> Result<Vec<Vec<T>>> {
    if a.len() + b.len() > 4 {
        return domain("shuffle_expand supports combined length <= 4");
    }
    fn go<T: Clone>(a: &[T], b: &[T], acc: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if a.is_empty() && b.is_empty() {
            out.push(acc.clone());
            return;
        }
        if let Some((h, t)) = a.split_first() {
            acc.push(h.clone());
            go(t, b, acc, out);
            acc.pop();
        }
        if let Some((h, t)) = b.split_first() {
            acc.push(h.clone());
            go(a, t, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(a, b, &mut Vec::new(), &mut out);
    Ok(out)
}
