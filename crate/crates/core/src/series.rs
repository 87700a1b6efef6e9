//! Truncated expansions Σ c_{α,m} τ^m q^α with exact rational exponents.

use crate::specfun::{to_f64, Rational};
use crate::C64;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};

pub type Key = (Rational, u32);

/// Default truncation: exponents α ≤ 12.
pub fn default_cutoff() -> Rational {
    Rational::from_integer(12)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauQSeries {
    terms: BTreeMap<Key, C64>,
    cutoff: Rational,
    /// Denominator hint for the exponents (lcm of what went in).
    pub level_hint: i64,
}

/// Value of a series at a point together with a crude estimate of the
/// truncated tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: C64,
    pub tail_bound: f64,
}

fn lcm(a: i64, b: i64) -> i64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    a / x * b
}

impl TauQSeries {
    pub fn zero(cutoff: Rational) -> Self {
        TauQSeries { terms: BTreeMap::new(), cutoff, level_hint: 1 }
    }

    pub fn constant(c: C64, cutoff: Rational) -> Self {
        let mut s = Self::zero(cutoff);
        s.add_term(Rational::zero(), 0, c);
        s
    }

    pub fn one(cutoff: Rational) -> Self {
        Self::constant(C64::new(1.0, 0.0), cutoff)
    }

    pub fn monomial(alpha: Rational, m: u32, c: C64, cutoff: Rational) -> Self {
        let mut s = Self::zero(cutoff);
        s.add_term(alpha, m, c);
        s
    }

    pub fn cutoff(&self) -> Rational {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Rational, u32, C64)> + '_ {
        self.terms.iter().map(|(&(a, m), &c)| (a, m, c))
    }

    pub fn coeff(&self, alpha: Rational, m: u32) -> C64 {
        self.terms.get(&(alpha, m)).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    /// Adds c τ^m q^α; terms beyond the cutoff are dropped.
    pub fn add_term(&mut self, alpha: Rational, m: u32, c: C64) {
        debug_assert!(alpha >= Rational::zero());
        if alpha > self.cutoff || c == C64::new(0.0, 0.0) {
            return;
        }
        self.level_hint = lcm(self.level_hint, *alpha.denom());
        let e = self.terms.entry((alpha, m)).or_insert(C64::new(0.0, 0.0));
        *e += c;
        if *e == C64::new(0.0, 0.0) {
            self.terms.remove(&(alpha, m));
        }
    }

    pub fn max_tau_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Coefficient of τ^0 q^0: the regularised value at ∞.
    pub fn reg_value_at_infinity(&self) -> C64 {
        self.coeff(Rational::zero(), 0)
    }

    /// The α = 0 stratum as polynomial coefficients in τ.
    pub fn polynomial_part(&self) -> Vec<C64> {
        let mut p = alloc::vec![C64::new(0.0, 0.0); self.max_tau_degree() as usize + 1];
        for (&(a, m), &c) in self.terms.range((Rational::zero(), 0)..=(Rational::zero(), u32::MAX)) {
            debug_assert!(a.is_zero());
            p[m as usize] += c;
        }
        p
    }

    pub fn with_cutoff(&self, cutoff: Rational) -> Self {
        let mut s = Self::zero(cutoff);
        for (a, m, c) in self.iter() {
            s.add_term(a, m, c);
        }
        s
    }

    pub fn scale(&self, k: C64) -> Self {
        let mut s = Self::zero(self.cutoff);
        for (a, m, c) in self.iter() {
            s.add_term(a, m, c * k);
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut s = self.with_cutoff(cutoff);
        for (a, m, c) in other.iter() {
            s.add_term(a, m, c);
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Cauchy product; the cutoff is the smaller of the two.
    pub fn mul(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut s = Self::zero(cutoff);
        for (&(a, m), &c) in &self.terms {
            if a > cutoff {
                break;
            }
            for (&(b, n), &d) in &other.terms {
                let ab = a + b;
                if ab > cutoff {
                    break;
                }
                s.add_term(ab, m + n, c * d);
            }
        }
        s
    }

    /// Multiplies by τ^k.
    pub fn mul_tau_power(&self, k: u32) -> Self {
        let mut s = Self::zero(self.cutoff);
        for (a, m, c) in self.iter() {
            s.add_term(a, m + k, c);
        }
        s
    }

    /// d/dτ, using d q^α/dτ = 2πiα q^α.
    pub fn derivative(&self) -> Self {
        let mut s = Self::zero(self.cutoff);
        for (a, m, c) in self.iter() {
            if m > 0 {
                s.add_term(a, m - 1, c * m as f64);
            }
            if !a.is_zero() {
                s.add_term(a, m, c * C64::new(0.0, 2.0 * PI * to_f64(a)));
            }
        }
        s
    }

    /// c_{α,m} ↦ (−1)^m conj(c_{α,m}): complex conjugation of the function on
    /// the imaginary axis, where τ̄ = −τ and q is real.
    pub fn conj_axis(&self) -> Self {
        let mut s = Self::zero(self.cutoff);
        for (a, m, c) in self.iter() {
            let c = c.conj();
            s.add_term(a, m, if m % 2 == 0 { c } else { -c });
        }
        s
    }

    /// f(τ/N): τ^m q^α ↦ N^{−m} τ^m q^{α/N}.
    pub fn rescale_down(&self, n: i64) -> Self {
        let mut s = Self::zero(self.cutoff / n);
        for (a, m, c) in self.iter() {
            s.add_term(a / n, m, c / (n as f64).powi(m as i32));
        }
        s
    }

    /// f(Nτ): τ^m q^α ↦ N^m τ^m q^{Nα}.
    pub fn rescale_up(&self, n: i64) -> Self {
        let mut s = Self::zero(self.cutoff * n);
        for (a, m, c) in self.iter() {
            s.add_term(a * n, m, c * (n as f64).powi(m as i32));
        }
        s
    }

    /// Value at an arbitrary point τ of the upper half plane.
    pub fn eval_tau(&self, tau: C64) -> C64 {
        let mut v = C64::new(0.0, 0.0);
        for (a, m, c) in self.iter() {
            let q = (C64::new(0.0, 2.0 * PI * to_f64(a)) * tau).exp();
            v += c * tau.powi(m as i32) * q;
        }
        v
    }

    /// Value at τ = iy with a tail estimate: the top unit band of exponents
    /// below the cutoff, continued geometrically in q.
    pub fn evaluate_at(&self, y: f64) -> Evaluation {
        let tau = C64::new(0.0, y);
        let mut value = C64::new(0.0, 0.0);
        let mut band = 0.0;
        let top = self.cutoff - Rational::one();
        for (a, m, c) in self.iter() {
            let t = c * tau.powi(m as i32) * (-2.0 * PI * to_f64(a) * y).exp();
            value += t;
            if a > top {
                band += t.norm();
            }
        }
        let r = (-2.0 * PI * y).exp();
        Evaluation { value, tail_bound: band * r / (1.0 - r) }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Largest |coefficient difference| against another series, with the
    /// (α, m) where it occurs.
    pub fn max_diff(&self, other: &Self) -> (f64, Option<Key>) {
        let d = self.sub(other);
        let mut worst = (0.0, None);
        for (a, m, c) in d.iter() {
            if c.norm() > worst.0 {
                worst = (c.norm(), Some((a, m)));
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::rat;
    use proptest::prelude::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn cut() -> Rational {
        rat(12, 1)
    }

    #[test]
    fn product_examples() {
        let one = TauQSeries::one(cut());
        let q = TauQSeries::monomial(rat(1, 1), 0, c(1.0), cut());
        let a = one.add(&q);
        let b = one.sub(&q);
        let p = a.mul(&b);
        let want = one.sub(&TauQSeries::monomial(rat(2, 1), 0, c(1.0), cut()));
        assert_eq!(p, want);
        assert_eq!(a.mul(&one), a);
    }

    #[test]
    fn cutoff_is_min_and_respected() {
        let a = TauQSeries::monomial(rat(3, 1), 0, c(1.0), rat(5, 1));
        let b = TauQSeries::monomial(rat(3, 1), 1, c(1.0), cut());
        let p = a.mul(&b);
        assert_eq!(p.cutoff(), rat(5, 1));
        assert!(p.is_empty());
    }

    #[test]
    fn evaluate_examples() {
        let q = TauQSeries::monomial(rat(1, 1), 0, c(1.0), cut());
        let v = q.evaluate_at(1.0).value;
        assert!((v.re - (-2.0 * PI).exp()).abs() < 1e-18);
        let tau = TauQSeries::monomial(rat(0, 1), 1, c(1.0), cut());
        assert_eq!(tau.evaluate_at(1.0).value, C64::new(0.0, 1.0));
    }

    #[test]
    fn reg_value_ignores_tail() {
        let mut f = TauQSeries::constant(c(2.5), cut());
        f.add_term(rat(1, 3), 2, c(7.0));
        assert_eq!(f.reg_value_at_infinity(), c(2.5));
    }

    #[test]
    fn rescaling_round_trip() {
        let mut f = TauQSeries::zero(cut());
        f.add_term(rat(2, 5), 1, C64::new(1.0, 2.0));
        f.add_term(rat(0, 1), 2, C64::new(-3.0, 0.5));
        let g = f.rescale_up(5).rescale_down(5);
        assert!(g.max_diff(&f).0 < 1e-15);
        let tau = C64::new(0.1, 0.8);
        assert!((f.rescale_up(3).eval_tau(tau) - f.eval_tau(tau * 3.0)).norm() < 1e-14);
    }

    fn arb_series() -> impl Strategy<Value = TauQSeries> {
        proptest::collection::vec((0i64..40, 1i64..5, 0u32..3, -2.0f64..2.0, -2.0f64..2.0), 1..8).prop_map(|ts| {
            let mut s = TauQSeries::zero(rat(12, 1));
            for (n, d, m, re, im) in ts {
                s.add_term(rat(n, d), m, C64::new(re, im));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn conj_axis_matches_pointwise(s in arb_series()) {
            let y = 1.7;
            let lhs = s.conj_axis().evaluate_at(y).value;
            let rhs = s.evaluate_at(y).value.conj();
            prop_assert!((lhs - rhs).norm() < 1e-12);
            prop_assert_eq!(s.conj_axis().conj_axis(), s);
        }

        #[test]
        fn derivative_is_leibniz(a in arb_series(), b in arb_series()) {
            let lhs = a.mul(&b).derivative();
            let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
            prop_assert!(lhs.max_diff(&rhs).0 < 1e-9);
        }

        #[test]
        fn product_commutes(a in arb_series(), b in arb_series()) {
            prop_assert!(a.mul(&b).max_diff(&b.mul(&a)).0 < 1e-12);
        }
    }
}
