//! Generalised Mellin transforms M(f, s) = ∫_0^∞ f(iy) y^{s−1} dy, continued
//! in s by splitting at y = 1 and integrating each q-expansion term exactly
//! with the upper incomplete gamma function.

use crate::eisenstein::{EisensteinSpec, EllipticParam, Family};
use crate::error::{domain, Error, Result};
use crate::regint::{word_integral_zero_to_infinity, AdmissibleForm};
use crate::series::TauQSeries;
use crate::specfun::{gamma, hurwitz_zeta, periodic_zeta, to_f64, upper_incomplete_gamma, Rational};
use crate::C64;
use alloc::format;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinResult {
    pub value: C64,
    /// Set when `value` is M*(f, s₀), the constant Laurent coefficient.
    pub is_constant_term_of_laurent: bool,
    pub pole_residue: Option<C64>,
}

/// What to do when s lands on a pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleMode {
    Reject,
    ConstantTerm,
}

/// A function on the upper half-plane given by its expansion at ∞ and the
/// expansion at ∞ of f(−1/τ).
#[derive(Debug, Clone, PartialEq)]
pub struct MellinInput {
    pub inf_side: TauQSeries,
    pub sigma_side: TauQSeries,
}

impl MellinInput {
    /// The coefficient function f of ω = f dτ; f(−1/τ) = τ² g when σ*ω = g dτ.
    pub fn from_form(form: &AdmissibleForm) -> Result<Self> {
        let z = form.zero_side.as_ref().ok_or_else(|| Error::Domain("form has no zero-side expansion".into()))?;
        Ok(MellinInput { inf_side: form.inf_side.clone(), sigma_side: z.mul_tau_power(2) })
    }

    /// scalar · Π f_i with f_i(−1/τ) = ε_i τ^{k_i} f_i'(τ).
    pub fn product(factors: &[EisensteinSpec], scalar: C64, cutoff: Rational) -> Result<Self> {
        let mut inf = TauQSeries::constant(scalar, cutoff);
        let mut sig = TauQSeries::constant(scalar, cutoff);
        for f in factors {
            inf = inf.mul(&f.series(cutoff));
            let sd = f.sigma_side()?;
            sig = sig.mul(&sd.spec.series(cutoff)).scale(C64::new(sd.sign as f64, 0.0)).mul_tau_power(sd.tau_power);
        }
        Ok(MellinInput { inf_side: inf, sigma_side: sig })
    }

    pub fn add(&self, o: &Self) -> Self {
        MellinInput { inf_side: self.inf_side.add(&o.inf_side), sigma_side: self.sigma_side.add(&o.sigma_side) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, k: C64) -> Self {
        MellinInput { inf_side: self.inf_side.scale(k), sigma_side: self.sigma_side.scale(k) }
    }
}

fn i_pow(m: u32) -> C64 {
    match m % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

fn integer_value(s: C64) -> Option<i64> {
    (s.im == 0.0 && s.re == s.re.round() && s.re.abs() < 1e9).then(|| s.re as i64)
}

// Σ c i^m ∫_1^∞ y^{m+t−1} e^{−2παy} dy over the terms of f, with t = ±s.
// Returns (regular part, residue in t of the dropped α = 0 pole terms).
fn half_line(f: &TauQSeries, t: C64) -> Result<(C64, C64, bool)> {
    let mut total = C64::zero();
    let mut residue = C64::zero();
    let mut hit = false;
    for (alpha, m, c) in f.iter() {
        let ci = c * i_pow(m);
        let a = t + m as f64;
        if alpha.is_zero() {
            if integer_value(a) == Some(0) {
                // −c i^m/(m + t): pure pole, constant term zero
                residue -= ci;
                hit = true;
            } else {
                total -= ci / a;
            }
        } else {
            let beta = 2.0 * PI * to_f64(alpha);
            let g = upper_incomplete_gamma(a, beta)?;
            if !g.underflow {
                total += ci * (-a * beta.ln()).exp() * g.value;
            }
        }
    }
    Ok((total, residue, hit))
}

/// M(f, s) by the split at y = 1. Poles come only from τ-power terms with
/// α = 0; at a pole the singular term is dropped, which yields M* exactly.
pub fn mellin_split(f: &MellinInput, s: C64, mode: PoleMode) -> Result<MellinResult> {
    let (a, ra, ha) = half_line(&f.inf_side, s)?;
    // ∫_0^1 f(iy) y^{s−1} dy = ∫_1^∞ f(−1/(iy)) y^{−s−1} dy; residue in s flips sign
    let (b, rb, hb) = half_line(&f.sigma_side, -s)?;
    let value = a + b;
    if ha || hb {
        let residue = ra - rb;
        let scale = 1.0 + value.norm();
        if residue.norm() > 1e-12 * scale {
            if mode == PoleMode::Reject {
                return Err(Error::Pole(format!("Mellin transform has a pole at s = {s} (residue {residue})")));
            }
            return Ok(MellinResult { value, is_constant_term_of_laurent: true, pole_residue: Some(residue) });
        }
    }
    Ok(MellinResult { value, is_constant_term_of_laurent: false, pole_residue: None })
}

/// mellin_numeric: M(f, s) for ω = f dτ carrying both side expansions.
pub fn mellin_numeric(form: &AdmissibleForm, s: C64, mode: PoleMode) -> Result<MellinResult> {
    mellin_split(&MellinInput::from_form(form)?, s, mode)
}

fn closed_raw(spec: &EisensteinSpec, s: C64) -> Result<C64> {
    let (k, x) = (spec.weight, spec.param);
    let sk = s - (k as f64 - 1.0);
    let (x1, x2) = (x.x1, x.x2);
    let sg = if k % 2 == 0 { 1.0 } else { -1.0 };
    let bracket = match spec.family {
        Family::E => {
            -hurwitz_zeta(x1, sk)? * periodic_zeta(x2, s)? - sg * hurwitz_zeta(-x1, sk)? * periodic_zeta(-x2, s)?
        }
        Family::G => hurwitz_zeta(x1, sk)? * hurwitz_zeta(x2, s)? + sg * hurwitz_zeta(-x1, sk)? * hurwitz_zeta(-x2, s)?,
        _ => return domain("closed-form Mellin transforms exist for E and G only"),
    };
    Ok((-s * (2.0 * PI).ln()).exp() * gamma(s)? * bracket)
}

const RICHARDSON_H: f64 = 1e-2;

/// mellin_eisenstein_closed: Γ(s)(2π)^{−s} times a product of Hurwitz and
/// periodic zeta values. Near s = 0, k and the poles of Γ the constant
/// Laurent term is extrapolated from s₀ ± h, s₀ ± 2h, s₀ ± 4h.
pub fn mellin_eisenstein_closed(spec: &EisensteinSpec, s: C64, mode: PoleMode) -> Result<MellinResult> {
    let singular = match integer_value(s) {
        Some(n) => n <= 0 || n == spec.weight as i64 || n == 1,
        None => false,
    };
    if !singular {
        return Ok(MellinResult { value: closed_raw(spec, s)?, is_constant_term_of_laurent: false, pole_residue: None });
    }
    let at = |d: f64| closed_raw(spec, s + C64::new(d, 0.0));
    // even part e(h) = c₀ + c₂h² + c₄h⁴ + …, h·odd part = r + c₁h² + …;
    // two Richardson levels remove the h² and h⁴ terms
    let h = RICHARDSON_H;
    let mut even = [C64::zero(); 3];
    let mut odd = [C64::zero(); 3];
    for (j, d) in [h, 2.0 * h, 4.0 * h].into_iter().enumerate() {
        let (p, m) = (at(d)?, at(-d)?);
        even[j] = (p + m) * 0.5;
        odd[j] = (p - m) * (0.5 * d);
    }
    let extrapolate = |v: [C64; 3]| {
        let a = (v[0] * 4.0 - v[1]) / 3.0;
        let b = (v[1] * 4.0 - v[2]) / 3.0;
        (a * 16.0 - b) / 15.0
    };
    let value = extrapolate(even);
    let residue = extrapolate(odd);
    if residue.norm() <= 1e-9 * (1.0 + value.norm()) {
        return Ok(MellinResult { value, is_constant_term_of_laurent: false, pole_residue: None });
    }
    if mode == PoleMode::Reject {
        return Err(Error::Pole(format!("M({}, s) has a pole at s = {s}", spec.label())));
    }
    Ok(MellinResult { value, is_constant_term_of_laurent: true, pole_residue: Some(residue) })
}

fn require_nonzero_coords(ps: &[EllipticParam]) -> Result<()> {
    for p in ps {
        if !p.coords_nonzero() {
            return domain(format!("parameter {p} has a zero coordinate; the identity needs all coordinates non-zero"));
        }
    }
    Ok(())
}

fn g(k: u32, x1: Rational, x2: Rational) -> Result<EisensteinSpec> {
    EisensteinSpec::g(k, EllipticParam::new(x1, x2))
}

/// L′(G^{(1);N}_{Nx} G^{(1);N}_{Ny}, −1) with N the common level of x and y,
/// obtained from M(G^{(1)}_x G^{(1)}_y, −1) = −(2π/N) L′.
pub fn l_deriv_weight2_at_minus1(x: EllipticParam, y: EllipticParam, cutoff: Rational) -> Result<f64> {
    require_nonzero_coords(&[x, y])?;
    let n = lcm(x.level(), y.level()) as f64;
    let f = MellinInput::product(&[EisensteinSpec::g(1, x)?, EisensteinSpec::g(1, y)?], C64::one(), cutoff)?;
    let m = mellin_split(&f, C64::new(-1.0, 0.0), PoleMode::Reject)?;
    Ok(-n / (2.0 * PI) * m.value.re)
}

fn lcm(a: i64, b: i64) -> i64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn check_ell(ell: u32) -> Result<()> {
    if ell < 2 {
        return domain("weight l must be at least 2");
    }
    Ok(())
}

/// Im I^{(2,ℓ)}_{u,v} from the iterated-integral engine:
/// ∫_0^∞ ω^{(2)}_u ω^{(ℓ)}_v = −I/(2π) because the Eichler integral is
/// −2πi times the inner integral to ∞ and dτ = i dy.
pub fn im_i_direct(u: EllipticParam, v: EllipticParam, ell: u32, cutoff: Rational) -> Result<f64> {
    require_nonzero_coords(&[u, v])?;
    check_ell(ell)?;
    let word = [AdmissibleForm::eisenstein(2, u, 1, cutoff)?, AdmissibleForm::eisenstein(ell, v, 1, cutoff)?];
    Ok((word_integral_zero_to_infinity(&word)?.value * (-2.0 * PI)).im)
}

/// The same quantity after swapping exponents in the double q-series.
pub fn im_i_rz(u: EllipticParam, v: EllipticParam, ell: u32, cutoff: Rational) -> Result<f64> {
    require_nonzero_coords(&[u, v])?;
    check_ell(ell)?;
    let one = C64::one();
    let a = MellinInput::product(&[g(1, u.x1, v.x2)?, g(ell - 1, v.x1, -u.x2)?], one, cutoff)?;
    let b = MellinInput::product(&[g(1, u.x1, -v.x2)?, g(ell - 1, v.x1, u.x2)?], one, cutoff)?;
    let m = mellin_split(&a.sub(&b), C64::zero(), PoleMode::Reject)?;
    Ok(-0.5 * m.value.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::h_series;
    use crate::mev::lambda_mev;
    use crate::quad::integrate_complex;
    use crate::series::default_cutoff;
    use crate::specfun::{bpoly, rat, ZETA3, ZETA_PRIME_MINUS2};
    use proptest::prelude::*;

    fn p(a: i64, b: i64, d: i64) -> EllipticParam {
        EllipticParam::from_ints(a, b, d)
    }

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    // Quadrature oracle: integrate the q-parts numerically on [1, 400] and
    // add the α = 0 parts analytically.
    fn mellin_quad(f: &MellinInput, s: C64) -> C64 {
        let split = |ser: &TauQSeries| {
            let mut poly = TauQSeries::zero(ser.cutoff());
            let mut rest = TauQSeries::zero(ser.cutoff());
            for (a, m, cf) in ser.iter() {
                if a.is_zero() {
                    poly.add_term(a, m, cf);
                } else {
                    rest.add_term(a, m, cf);
                }
            }
            (poly, rest)
        };
        let mut total = C64::zero();
        for (ser, t) in [(&f.inf_side, s), (&f.sigma_side, -s)] {
            let (poly, rest) = split(ser);
            for (_, m, cf) in poly.iter() {
                total -= cf * i_pow(m) / (t + m as f64);
            }
            total += integrate_complex(|y| rest.evaluate_at(y).value * ((t - 1.0) * y.ln()).exp(), 1.0, 400.0, 1e-13);
        }
        total
    }

    #[test]
    fn lambda_g3_lemma() {
        for x in [rat(1, 4), rat(1, 5), rat(2, 5), rat(1, 3), rat(5, 7), rat(1, 12), rat(7, 12), rat(1, 2)] {
            let f = MellinInput::product(&[g(3, Rational::zero(), x).unwrap()], C64::one(), default_cutoff()).unwrap();
            let v = mellin_split(&f, C64::zero(), PoleMode::Reject).unwrap();
            let want = -2.0 * ZETA_PRIME_MINUS2 * bpoly(1, to_f64(x));
            assert!((v.value - c(want)).norm() < 1e-10, "x={x}: {} vs {want}", v.value);
            let cl = mellin_eisenstein_closed(&g(3, Rational::zero(), x).unwrap(), C64::zero(), PoleMode::Reject).unwrap();
            assert!((cl.value - c(want)).norm() < 1e-9);
        }
        let v = -2.0 * ZETA_PRIME_MINUS2 * bpoly(1, 0.25);
        assert!((v + ZETA3 / (8.0 * PI * PI)).abs() < 1e-15);
    }

    #[test]
    fn closed_and_numeric_agree() {
        let cut = default_cutoff();
        for (spec, s) in [
            (g(2, rat(1, 5), rat(2, 5)).unwrap(), c(3.0)),
            (g(2, rat(1, 5), rat(2, 5)).unwrap(), C64::new(0.4, 1.3)),
            (g(3, rat(2, 7), rat(3, 7)).unwrap(), c(-1.5)),
            (g(1, rat(1, 3), rat(1, 4)).unwrap(), C64::new(2.5, -0.5)),
            (EisensteinSpec::e(2, p(1, 3, 7)).unwrap(), c(1.7)),
            (EisensteinSpec::e(3, p(2, 1, 5)).unwrap(), C64::new(-0.7, 0.6)),
            (EisensteinSpec::e(4, p(1, 2, 5)).unwrap(), c(2.5)),
        ] {
            let a = mellin_eisenstein_closed(&spec, s, PoleMode::Reject).unwrap().value;
            let f = MellinInput::product(&[spec], C64::one(), cut).unwrap();
            let b = mellin_split(&f, s, PoleMode::Reject).unwrap().value;
            assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()), "{} s={s}: {a} vs {b}", spec.label());
        }
    }

    #[test]
    fn poles_only_at_zero_and_k() {
        let spec = EisensteinSpec::e(3, p(1, 2, 5)).unwrap();
        let f = MellinInput::product(&[spec], C64::one(), default_cutoff()).unwrap();
        for s in [-2.0, -1.0, 1.0, 2.0, 4.0] {
            let r = mellin_split(&f, c(s), PoleMode::Reject).unwrap();
            let a = mellin_eisenstein_closed(&spec, c(s), PoleMode::Reject).unwrap();
            assert!((r.value - a.value).norm() < 1e-8, "s={s}: {} vs {}", r.value, a.value);
        }
        for s in [0.0, 3.0] {
            let r = mellin_split(&f, c(s), PoleMode::ConstantTerm).unwrap();
            assert!(r.pole_residue.is_some() && r.is_constant_term_of_laurent);
            assert!(mellin_split(&f, c(s), PoleMode::Reject).is_err());
            let a = mellin_eisenstein_closed(&spec, c(s), PoleMode::ConstantTerm).unwrap();
            assert!((r.value - a.value).norm() < 1e-8, "s={s}: {} vs {}", r.value, a.value);
            assert!((r.pole_residue.unwrap() - a.pole_residue.unwrap()).norm() < 1e-8);
        }
    }

    #[test]
    fn trivial_inputs() {
        let cut = default_cutoff();
        let zero = MellinInput { inf_side: TauQSeries::zero(cut), sigma_side: TauQSeries::zero(cut) };
        assert_eq!(mellin_split(&zero, c(0.3), PoleMode::Reject).unwrap().value, C64::zero());
        // f = τ² (so f(−1/τ) = τ^{−2} is not of our form); use f = 1 instead
        let one = MellinInput { inf_side: TauQSeries::one(cut), sigma_side: TauQSeries::one(cut) };
        assert!(mellin_split(&one, c(0.7), PoleMode::Reject).unwrap().value.norm() < 1e-15);
    }

    #[test]
    fn regularised_integral_is_i_times_mellin() {
        let cut = default_cutoff();
        for (k, x, m) in [(2u32, p(1, 1, 4), 1u32), (2, p(2, 3, 7), 1), (3, p(1, 2, 5), 1), (3, p(1, 2, 5), 2), (4, p(3, 1, 8), 2)] {
            let w = AdmissibleForm::eisenstein(k, x, m, cut).unwrap();
            let direct = word_integral_zero_to_infinity(core::slice::from_ref(&w)).unwrap().value;
            let via = mellin_numeric(&w, c(1.0), PoleMode::Reject).unwrap().value * C64::new(0.0, 1.0);
            assert!((direct - via).norm() < 1e-9, "k={k} x={x} m={m}: {direct} vs {via}");
        }
        let x = p(1, 3, 4);
        let spec = EisensteinSpec::e(2, x).unwrap();
        let m = mellin_eisenstein_closed(&spec, c(1.0), PoleMode::Reject).unwrap().value;
        let lam = lambda_mev(&[x], cut).unwrap().value;
        assert!((m * (-2.0 * PI) - lam).norm() < 1e-10);
    }

    #[test]
    fn general_value_matches_mellin() {
        // Λ(E^{(4)}_x; 2) = ∫ E^{(4)} τ dτ = i · M(τE^{(4)}, 1) = −M(E^{(4)}, 2)
        let x = p(1, 2, 5);
        let v = crate::mev::lambda_general(&[4], &[x], &[2], default_cutoff()).unwrap();
        let m = mellin_eisenstein_closed(&EisensteinSpec::e(4, x).unwrap(), c(2.0), PoleMode::Reject).unwrap().value;
        assert!((v + m).norm() < 1e-10, "{v} vs {m}");
    }

    #[test]
    fn products_against_quadrature() {
        let cut = default_cutoff();
        let f = MellinInput::product(&[g(1, rat(1, 5), rat(2, 5)).unwrap(), g(1, rat(2, 5), rat(4, 5)).unwrap()], C64::one(), cut)
            .unwrap();
        for s in [c(-1.0), c(0.0), C64::new(0.5, 0.5)] {
            let a = mellin_split(&f, s, PoleMode::Reject).unwrap().value;
            let b = mellin_quad(&f, s);
            assert!((a - b).norm() < 1e-9, "s={s}: {a} vs {b}");
        }
        let f = MellinInput::product(&[g(1, rat(1, 7), rat(3, 7)).unwrap(), g(2, rat(2, 7), rat(5, 7)).unwrap()], C64::one(), cut)
            .unwrap();
        let a = mellin_split(&f, c(0.0), PoleMode::Reject).unwrap().value;
        assert!((a - mellin_quad(&f, c(0.0))).norm() < 1e-9);
        assert!(a.im.abs() < 1e-12);
    }

    #[test]
    fn cutoff_robustness() {
        let f = |cut| {
            MellinInput::product(&[g(1, rat(1, 5), rat(2, 5)).unwrap(), g(1, rat(3, 5), rat(1, 5)).unwrap()], C64::one(), cut).unwrap()
        };
        let a = mellin_split(&f(rat(12, 1)), c(-1.0), PoleMode::Reject).unwrap().value;
        let b = mellin_split(&f(rat(6, 1)), c(-1.0), PoleMode::Reject).unwrap().value;
        assert!((a - b).norm() < 1e-11);
    }

    #[test]
    fn level_n_l_derivative() {
        let cut = default_cutoff();
        let (x, y) = (p(1, 2, 5), p(2, 1, 5));
        let v = l_deriv_weight2_at_minus1(x, y, cut).unwrap();
        assert!((v - l_deriv_weight2_at_minus1(y, x, cut).unwrap()).abs() < 1e-13);
        // oracle: quadrature of the level-5 product G^{(1);5}_x G^{(1);5}_y,
        // whose σ-side is (τ/5)² H^{(1)}_{x/5}(τ/5) H^{(1)}_{y/5}(τ/5)
        let n = 5i64;
        let inf = crate::eisenstein::gn_series(1, n, 1, 2, cut).unwrap().mul(&crate::eisenstein::gn_series(1, n, 2, 1, cut).unwrap());
        let big = cut * n;
        let hs = |z: EllipticParam| h_series(1, z, big).unwrap().rescale_down(n).with_cutoff(cut);
        let sig = hs(x).mul(&hs(y)).mul_tau_power(2).scale(c(1.0 / (n * n) as f64));
        let m = mellin_quad(&MellinInput { inf_side: inf, sigma_side: sig }, c(-1.0));
        let want = -(n as f64) / (2.0 * PI) * m.re / n as f64;
        assert!((v - want).abs() < 1e-9, "{v} vs {want}");
        // G^{(1)}_{α,−α} = 0
        let z = l_deriv_weight2_at_minus1(p(1, 4, 5), p(2, 3, 5), cut).unwrap();
        assert!(z.abs() < 1e-14);
        assert!(l_deriv_weight2_at_minus1(p(0, 1, 5), y, cut).is_err());
    }

    #[test]
    fn rz_examples() {
        let cut = default_cutoff();
        let (u, v) = (p(1, 2, 5), p(1, 1, 5));
        let a = im_i_direct(u, v, 3, cut).unwrap();
        let b = im_i_rz(u, v, 3, cut).unwrap();
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        let (u, v) = (p(1, 1, 3), p(1, 1, 3));
        let (a, b) = (im_i_direct(u, v, 2, cut).unwrap(), im_i_rz(u, v, 2, cut).unwrap());
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        assert!(im_i_direct(p(0, 1, 5), v, 3, cut).is_err());
        assert!(im_i_rz(u, v, 1, cut).is_err());
    }

    fn arb_param() -> impl Strategy<Value = EllipticParam> {
        prop_oneof![Just(5i64), Just(6), Just(7)].prop_flat_map(|d| (1..d, 1..d, Just(d))).prop_map(|(a, b, d)| p(a, b, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn rz_identity(u in arb_param(), v in arb_param(), ell in 2u32..4) {
            let cut = default_cutoff();
            let a = im_i_direct(u, v, ell, cut).unwrap();
            let b = im_i_rz(u, v, ell, cut).unwrap();
            prop_assert!((a - b).abs() < 1e-8, "{} {} l={}: {} vs {}", u, v, ell, a, b);
        }
    }

    #[test]
    fn g1_symmetric() {
        let cut = default_cutoff();
        let a = g(1, rat(1, 5), rat(3, 5)).unwrap().series(cut);
        let b = g(1, rat(3, 5), rat(1, 5)).unwrap().series(cut);
        assert!(a.max_diff(&b).0 < 1e-12);
    }
}
