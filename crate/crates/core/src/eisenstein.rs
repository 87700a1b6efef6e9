//! q-expansions of the Eisenstein families E^{(k)}_x, G^{(k)}_x, H^{(k)}_x,
//! the level-N series G^{(k);N}, Siegel-unit logarithms and Eichler
//! integrals.

use crate::error::{domain, Result};
use crate::series::TauQSeries;
use crate::specfun::{bfrac, e_rat, frac, periodic_zeta, to_f64, Rational};
use crate::C64;
use alloc::format;
use alloc::string::String;
use core::f64::consts::PI;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};

/// A point of (R/Z)², stored as rationals reduced into [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EllipticParam {
    pub x1: Rational,
    pub x2: Rational,
}

impl EllipticParam {
    pub fn new(x1: Rational, x2: Rational) -> Self {
        EllipticParam { x1: frac(x1), x2: frac(x2) }
    }

    /// (a/d, b/d)
    pub fn from_ints(a: i64, b: i64, d: i64) -> Self {
        Self::new(Rational::new(a, d), Rational::new(b, d))
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x1.is_zero() && self.x2.is_zero()
    }

    pub fn coords_nonzero(&self) -> bool {
        !self.x1.is_zero() && !self.x2.is_zero()
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.x1, -self.x2)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.x1 + o.x1, self.x2 + o.x2)
    }

    /// x ↦ xσ = (x₂, −x₁).
    pub fn sigma(&self) -> Self {
        Self::new(self.x2, -self.x1)
    }

    /// Shift of the second coordinate.
    pub fn shift2(&self, h: Rational) -> Self {
        Self::new(self.x1, self.x2 + h)
    }

    pub fn shift1(&self, h: Rational) -> Self {
        Self::new(self.x1 + h, self.x2)
    }

    /// Common denominator of the coordinates.
    pub fn level(&self) -> i64 {
        let (a, b) = (*self.x1.denom(), *self.x2.denom());
        let mut x = a;
        let mut y = b;
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        a / x * b
    }
}

impl fmt::Display for EllipticParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x1, self.x2)
    }
}

/// sigma_param
pub fn sigma_param(x: EllipticParam) -> EllipticParam {
    x.sigma()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    E,
    G,
    H,
    LogSiegel,
}

/// Which series, weight and parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EisensteinSpec {
    pub family: Family,
    pub weight: u32,
    pub param: EllipticParam,
}

/// f(−1/τ) = sign · τ^power · (companion)(τ).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigmaSide {
    pub sign: i8,
    pub tau_power: u32,
    pub spec: EisensteinSpec,
}

impl EisensteinSpec {
    pub fn new(family: Family, weight: u32, param: EllipticParam) -> Result<Self> {
        if weight == 0 {
            return domain("weight must be positive");
        }
        match family {
            Family::E if weight == 2 && param.is_zero() => {
                return domain("E^(2)_x needs x != 0 (the k = 2, x = 0 series is not holomorphic)");
            }
            Family::H if weight == 2 && param.x1.is_zero() => {
                return domain("H^(2)_x needs x1 != 0");
            }
            Family::LogSiegel if param.is_zero() => return domain("log g_x needs x != 0"),
            _ => {}
        }
        Ok(EisensteinSpec { family, weight, param })
    }

    pub fn e(k: u32, x: EllipticParam) -> Result<Self> {
        Self::new(Family::E, k, x)
    }

    pub fn g(k: u32, x: EllipticParam) -> Result<Self> {
        Self::new(Family::G, k, x)
    }

    pub fn h(k: u32, x: EllipticParam) -> Result<Self> {
        Self::new(Family::H, k, x)
    }

    /// Modular transformation under σ: E|σ = E_{xσ}, H|σ = G, and hence
    /// G(−1/τ) = (−1)^k τ^k H(τ) because −I acts on weight k by (−1)^k.
    pub fn sigma_side(&self) -> Result<SigmaSide> {
        let k = self.weight;
        let (sign, spec) = match self.family {
            Family::E => (1, EisensteinSpec::e(k, self.param.sigma())?),
            Family::H => (1, EisensteinSpec::g(k, self.param)?),
            Family::G => (if k % 2 == 0 { 1 } else { -1 }, EisensteinSpec::h(k, self.param)?),
            Family::LogSiegel => return domain("log g_x has no exact sigma companion (only up to a root of unity)"),
        };
        Ok(SigmaSide { sign, tau_power: k, spec })
    }

    pub fn series(&self, cutoff: Rational) -> TauQSeries {
        let (k, x) = (self.weight, self.param);
        match self.family {
            Family::E => e_series_raw(k, x, cutoff),
            Family::G => g_series_raw(k, x, cutoff),
            Family::H => h_series_raw(k, x, cutoff),
            Family::LogSiegel => log_siegel_raw(x, cutoff),
        }
    }

    pub fn label(&self) -> String {
        let f = match self.family {
            Family::E => "E",
            Family::G => "G",
            Family::H => "H",
            Family::LogSiegel => "logg",
        };
        format!("{f}{}_{}", self.weight, self.param)
    }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn sign(k: u32) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Calls f(m, n) for m ≥ 1 integer and n > 0, n ≡ r mod 1, with mn ≤ cutoff.
fn for_divisor_pairs(r: Rational, cutoff: Rational, mut f: impl FnMut(i64, Rational)) {
    let mut n = if r.is_zero() { Rational::one() } else { r };
    while n <= cutoff {
        let mut m = 1;
        while n * m <= cutoff {
            f(m, n);
            m += 1;
        }
        n += Rational::one();
    }
}

fn ratio_cot(t: Rational) -> C64 {
    // (1 + e(t)) / (1 − e(t))
    let z = e_rat(t);
    (c(1.0) + z) / (c(1.0) - z)
}

pub fn e_constant_term(k: u32, x: EllipticParam) -> C64 {
    if k >= 2 {
        return c(bfrac(k, x.x1) / k as f64);
    }
    if x.is_zero() {
        c(0.0)
    } else if x.x1.is_zero() {
        ratio_cot(x.x2) * -0.5
    } else {
        c(to_f64(x.x1) - 0.5)
    }
}

fn e_series_raw(k: u32, x: EllipticParam, cutoff: Rational) -> TauQSeries {
    let mut s = TauQSeries::constant(e_constant_term(k, x), cutoff);
    for_divisor_pairs(x.x1, cutoff, |m, n| {
        let w = to_f64(n).powi(k as i32 - 1);
        s.add_term(n * m, 0, -e_rat(x.x2 * m) * w);
    });
    let sg = sign(k + 1);
    for_divisor_pairs(frac(-x.x1), cutoff, |m, n| {
        let w = to_f64(n).powi(k as i32 - 1);
        s.add_term(n * m, 0, e_rat(-x.x2 * m) * (sg * w));
    });
    s
}

/// e_series: q-expansion of E^{(k)}_x.
pub fn e_series(k: u32, x: EllipticParam, cutoff: Rational) -> Result<TauQSeries> {
    Ok(EisensteinSpec::e(k, x)?.series(cutoff))
}

pub fn g_constant_term(k: u32, x: EllipticParam) -> f64 {
    if k == 1 {
        match (x.x1.is_zero(), x.x2.is_zero()) {
            (true, false) => -bfrac(1, x.x2),
            (false, true) => -bfrac(1, x.x1),
            _ => 0.0,
        }
    } else if x.x2.is_zero() {
        -bfrac(k, x.x1) / k as f64
    } else {
        0.0
    }
}

// Σ over m ≡ r1, n ≡ r2 (both > 0) of m^{k−1} q^{mn}, times w.
fn g_branch(s: &mut TauQSeries, k: u32, r1: Rational, r2: Rational, w: f64, cutoff: Rational) {
    let mut m = if r1.is_zero() { Rational::one() } else { r1 };
    let n0 = if r2.is_zero() { Rational::one() } else { r2 };
    while m * n0 <= cutoff {
        let mk = to_f64(m).powi(k as i32 - 1) * w;
        let mut n = n0;
        while m * n <= cutoff {
            s.add_term(m * n, 0, c(mk));
            n += Rational::one();
        }
        m += Rational::one();
    }
}

fn g_series_raw(k: u32, x: EllipticParam, cutoff: Rational) -> TauQSeries {
    let mut s = TauQSeries::constant(c(g_constant_term(k, x)), cutoff);
    g_branch(&mut s, k, x.x1, x.x2, 1.0, cutoff);
    let y = x.neg();
    g_branch(&mut s, k, y.x1, y.x2, sign(k), cutoff);
    s
}

/// g_series: q-expansion of the interpolated G^{(k)}_x.
pub fn g_series(k: u32, x: EllipticParam, cutoff: Rational) -> Result<TauQSeries> {
    Ok(EisensteinSpec::g(k, x)?.series(cutoff))
}

/// gN_series: the level-N series G^{(k);N}_{(a,b)} in powers of q^{1/N},
/// built from its own double sum over integers (m, n) ≡ ±(a, b) mod N.
pub fn gn_series(k: u32, n_level: i64, a: i64, b: i64, cutoff: Rational) -> Result<TauQSeries> {
    if k == 0 || n_level < 1 {
        return domain("gN_series needs k >= 1 and N >= 1");
    }
    let nn = n_level;
    let (a, b) = (a.rem_euclid(nn), b.rem_euclid(nn));
    let bn = |t: i64| bfrac(k, Rational::new(t, nn));
    let a0 = if k == 1 {
        match (a == 0, b == 0) {
            (true, false) => -bfrac(1, Rational::new(b, nn)),
            (false, true) => -bfrac(1, Rational::new(a, nn)),
            _ => 0.0,
        }
    } else if b == 0 {
        -(nn as f64).powi(k as i32 - 1) * bn(a) / k as f64
    } else {
        0.0
    };
    let mut s = TauQSeries::constant(c(a0), cutoff);
    for (r1, r2, w) in [(a, b, 1.0), ((nn - a) % nn, (nn - b) % nn, sign(k))] {
        let m0 = if r1 == 0 { nn } else { r1 };
        let n0 = if r2 == 0 { nn } else { r2 };
        let mut m = m0;
        while Rational::new(m * n0, nn) <= cutoff {
            let mk = (m as f64).powi(k as i32 - 1) * w;
            let mut n = n0;
            while Rational::new(m * n, nn) <= cutoff {
                s.add_term(Rational::new(m * n, nn), 0, c(mk));
                n += nn;
            }
            m += nn;
        }
    }
    Ok(s)
}

pub fn h_constant_term(k: u32, x: EllipticParam) -> Result<C64> {
    if k == 1 {
        let mut v = c(0.0);
        if !x.x1.is_zero() {
            v += ratio_cot(x.x1) * 0.5;
        }
        if !x.x2.is_zero() {
            v += ratio_cot(x.x2) * 0.5;
        }
        return Ok(v);
    }
    Ok(periodic_zeta(-x.x2, c(1.0 - k as f64))? * sign(k))
}

fn h_series_raw(k: u32, x: EllipticParam, cutoff: Rational) -> TauQSeries {
    let a0 = h_constant_term(k, x).unwrap_or(c(f64::NAN));
    let mut s = TauQSeries::constant(a0, cutoff);
    let sg = sign(k);
    let top = cutoff.to_integer();
    for m in 1..=top {
        for n in 1..=top / m {
            let t = x.x1 * m + x.x2 * n;
            let coeff = (e_rat(t) + e_rat(-t) * sg) * (n as f64).powi(k as i32 - 1);
            s.add_term(Rational::from_integer(m * n), 0, coeff);
        }
    }
    s
}

/// h_series: q-expansion of H^{(k)}_x.
pub fn h_series(k: u32, x: EllipticParam, cutoff: Rational) -> Result<TauQSeries> {
    let spec = EisensteinSpec::h(k, x)?;
    h_constant_term(k, x)?;
    Ok(spec.series(cutoff))
}

fn log_siegel_raw(x: EllipticParam, cutoff: Rational) -> TauQSeries {
    let mut s = TauQSeries::zero(cutoff);
    s.add_term(Rational::zero(), 1, C64::new(0.0, PI * bfrac(2, x.x1)));
    if x.x1.is_zero() {
        let z = e_rat(x.x2);
        let re = (c(1.0) - z).norm().ln();
        let im = PI * (to_f64(x.x2) - 0.5);
        s.add_term(Rational::zero(), 0, C64::new(re, im));
    }
    for_divisor_pairs(x.x1, cutoff, |m, n| {
        s.add_term(n * m, 0, -e_rat(x.x2 * m) / m as f64);
    });
    for_divisor_pairs(frac(-x.x1), cutoff, |m, n| {
        s.add_term(n * m, 0, -e_rat(-x.x2 * m) / m as f64);
    });
    s
}

/// log g_x with the branch log(1 − e(x₂)) = log|1 − e(x₂)| + πi({x₂} − ½).
pub fn log_siegel_series(x: EllipticParam, cutoff: Rational) -> Result<TauQSeries> {
    Ok(EisensteinSpec::new(Family::LogSiegel, 1, x)?.series(cutoff))
}

/// Primitive of 2πi E^{(k)}_x dτ with regularised value 0 at ∞.
pub fn eichler_series(k: u32, x: EllipticParam, cutoff: Rational) -> Result<TauQSeries> {
    let e = e_series(k, x, cutoff)?;
    let mut s = TauQSeries::zero(cutoff);
    for (a, m, cf) in e.iter() {
        debug_assert_eq!(m, 0);
        if a.is_zero() {
            s.add_term(a, 1, cf * C64::new(0.0, 2.0 * PI));
        } else {
            s.add_term(a, 0, cf / to_f64(a));
        }
    }
    Ok(s)
}
