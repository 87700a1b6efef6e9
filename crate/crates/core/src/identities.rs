//! Coefficient-level checks of the Borisov–Gunnells relations, the dilogarithm
//! sum over roots of unity, and the shuffle identities behind the regulator
//! formula.

use crate::eisenstein::{EisensteinSpec, EllipticParam};
use crate::error::{domain, Result};
use crate::mev::{lambda_mev, lambda_signed, Sign};
use crate::regulator::validate_pair;
use crate::series::TauQSeries;
use crate::specfun::{bloch_wigner, Rational};
use crate::C64;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

/// Largest coefficient of a series that should vanish identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResidual {
    pub residual: f64,
    /// (α, τ-power) of the worst coefficient.
    pub worst: Option<(Rational, u32)>,
    /// Largest coefficient among the terms that were combined.
    pub scale: f64,
}

impl SeriesResidual {
    /// residual / max(1, scale): the coefficients grow like n^{k−1}, so
    /// rounding in the products is proportional to their size.
    pub fn relative(&self) -> f64 {
        self.residual / self.scale.max(1.0)
    }
}

fn residual_of(terms: &[(f64, &TauQSeries)]) -> SeriesResidual {
    let cutoff = terms.iter().map(|t| t.1.cutoff()).min().unwrap_or_else(Rational::zero);
    let mut total = TauQSeries::zero(cutoff);
    let mut scale: f64 = 0.0;
    for (w, s) in terms {
        scale = scale.max(s.max_abs_coeff() * w.abs());
        total = total.add(&s.scale(C64::new(*w, 0.0)));
    }
    let (residual, worst) = total.max_diff(&TauQSeries::zero(cutoff));
    SeriesResidual { residual, worst, scale }
}

fn ser(spec: Result<EisensteinSpec>, cutoff: Rational) -> Result<TauQSeries> {
    Ok(spec?.series(cutoff))
}

/// E¹_zE²_y − E¹_yE²_x − E¹_zE²_x + E¹_yE²_z − E³_x + ½E³_y + ½E³_z with z = −x − y.
pub fn check_bg_e(x: EllipticParam, y: EllipticParam, cutoff: Rational) -> Result<SeriesResidual> {
    let z = x.add(&y).neg();
    if x.is_zero() || y.is_zero() || z.is_zero() {
        return domain(format!("x = {x}, y = {y} and z = -x-y must all be non-zero"));
    }
    let e = |k, p| ser(EisensteinSpec::e(k, p), cutoff);
    let t = [
        e(1, z)?.mul(&e(2, y)?),
        e(1, y)?.mul(&e(2, x)?),
        e(1, z)?.mul(&e(2, x)?),
        e(1, y)?.mul(&e(2, z)?),
        e(3, x)?,
        e(3, y)?,
        e(3, z)?,
    ];
    Ok(residual_of(&[(1.0, &t[0]), (-1.0, &t[1]), (-1.0, &t[2]), (1.0, &t[3]), (-1.0, &t[4]), (0.5, &t[5]), (0.5, &t[6])]))
}

fn gs(k: u32, x1: Rational, x2: Rational, cutoff: Rational) -> Result<TauQSeries> {
    ser(EisensteinSpec::g(k, EllipticParam::new(x1, x2)), cutoff)
}

/// G¹_{x₁+y₁,u₂}G²_{y₁,v₂−u₂} + G¹_{y₁,v₂}G²_{x₁,u₂} − G¹_{x₁+y₁,v₂}G²_{x₁,u₂−v₂} − G¹_{y₁,v₂−u₂}G²_{x₁+y₁,u₂}.
pub fn check_bg_g1(x1: Rational, y1: Rational, u2: Rational, v2: Rational, cutoff: Rational) -> Result<SeriesResidual> {
    let nz = |r: Rational| !crate::specfun::frac(r).is_zero();
    if !(nz(x1) && nz(y1) && nz(u2) && nz(v2) && nz(x1 + y1) && nz(u2 - v2)) {
        return domain("need x1, y1, u2, v2, x1+y1 and u2-v2 all non-zero mod 1");
    }
    let s = x1 + y1;
    let t = [
        gs(1, s, u2, cutoff)?.mul(&gs(2, y1, v2 - u2, cutoff)?),
        gs(1, y1, v2, cutoff)?.mul(&gs(2, x1, u2, cutoff)?),
        gs(1, s, v2, cutoff)?.mul(&gs(2, x1, u2 - v2, cutoff)?),
        gs(1, y1, v2 - u2, cutoff)?.mul(&gs(2, s, u2, cutoff)?),
    ];
    Ok(residual_of(&[(1.0, &t[0]), (1.0, &t[1]), (-1.0, &t[2]), (-1.0, &t[3])]))
}

/// G¹_uG²_{u₁,−u₂} − G¹_{u₁,−u₂}G²_u − G³_{0,u₂}.
pub fn check_bg_g2(u1: Rational, u2: Rational, cutoff: Rational) -> Result<SeriesResidual> {
    if crate::specfun::frac(u1).is_zero() {
        return domain("need u1 != 0 mod 1");
    }
    let t = [
        gs(1, u1, u2, cutoff)?.mul(&gs(2, u1, -u2, cutoff)?),
        gs(1, u1, -u2, cutoff)?.mul(&gs(2, u1, u2, cutoff)?),
        gs(3, Rational::zero(), u2, cutoff)?,
    ];
    Ok(residual_of(&[(1.0, &t[0]), (-1.0, &t[1]), (-1.0, &t[2])]))
}

/// |Σ_{v^N=1} D((1−v)/(1−u)) − (N/2)D(u)| for u = e(j/N).
pub fn check_dilog_sum(n: i64, j: i64) -> Result<f64> {
    if n < 2 || j.rem_euclid(n) == 0 {
        return domain("need N > 1 and u = e(j/N) != 1");
    }
    let root = |t: i64| C64::from_polar(1.0, 2.0 * PI * t as f64 / n as f64);
    let one = C64::new(1.0, 0.0);
    let u = root(j);
    let lhs: f64 = (0..n).map(|t| bloch_wigner((one - root(t)) / (one - u))).sum();
    Ok((lhs - n as f64 / 2.0 * bloch_wigner(u)).abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LedgerEntry {
    pub name: &'static str,
    pub residual: f64,
}

type Key = Vec<(i64, i64, i64, i64, bool)>;

// Memoised signed values; the same triples recur across the identities.
struct Signed {
    cutoff: Rational,
    cache: BTreeMap<Key, f64>,
}

impl Signed {
    fn get(&mut self, ps: &[EllipticParam], signs: &str) -> Result<f64> {
        let sg: Vec<Sign> = signs.chars().map(|c| if c == '+' { Sign::Plus } else { Sign::Minus }).collect();
        let key: Key = ps
            .iter()
            .zip(&sg)
            .map(|(p, s)| (*p.x1.numer(), *p.x1.denom(), *p.x2.numer(), *p.x2.denom(), *s == Sign::Plus))
            .collect();
        if let Some(v) = self.cache.get(&key) {
            return Ok(*v);
        }
        let v = lambda_signed(ps, &sg, self.cutoff)?;
        self.cache.insert(key, v);
        Ok(v)
    }

    fn l1(&mut self, ps: &[EllipticParam]) -> Result<f64> {
        Ok(self.get(ps, "+--")? + self.get(ps, "-+-")? + self.get(ps, "--+")?)
    }
}

/// Residuals of the shuffle bookkeeping that reduces the A₂ and A₃ terms of
/// the regulator integral to multiple Eisenstein values.
pub fn check_shuffle_ledger(a: EllipticParam, b: EllipticParam, cutoff: Rational) -> Result<Vec<LedgerEntry>> {
    let (c, _) = validate_pair(a, b)?;
    let mut s = Signed { cutoff, cache: BTreeMap::new() };
    let mut out = Vec::new();
    let mut push = |name, v: f64| out.push(LedgerEntry { name, residual: v.abs() });

    let (x, y, z) = (a, b, b);
    let shuffle2 = s.get(&[x, y, x], "--+")?
        - (-s.get(&[y, x, x], "-+-")? - s.get(&[y, x, x], "--+")? + s.get(&[x], "-")? * s.get(&[y, x], "-+")?);
    push("shuffle2", shuffle2);
    let shuffle3 = s.get(&[x, z, x], "-+-")? - (-2.0 * s.get(&[x, x, z], "--+")? + s.get(&[x], "-")? * s.get(&[x, z], "-+")?);
    push("shuffle3", shuffle3);
    let shuffle6 = s.get(&[x, z, x], "-+-")? - (-2.0 * s.get(&[z, x, x], "+--")? + s.get(&[x], "-")? * s.get(&[z, x], "+-")?);
    push("shuffle6", shuffle6);
    let shuffle7 = s.get(&[x, x, z], "--+")?
        - (s.get(&[z, x, x], "+--")? + 0.5 * s.get(&[x], "-")? * (s.get(&[x, z], "-+")? - s.get(&[z, x], "+-")?));
    push("shuffle7", shuffle7);
    let shuffle8 = s.get(&[b, c, a], "--+")?
        - (s.get(&[b], "-")? * s.get(&[c, a], "-+")? - s.get(&[c, b, a], "--+")? - s.get(&[c, a, b], "-+-")?);
    push("shuffle8", shuffle8);
    let shuffle9 = s.get(&[a, c, b], "--+")?
        - (s.get(&[a], "-")? * s.get(&[c, b], "-+")? - s.get(&[c, a, b], "--+")? - s.get(&[c, b, a], "-+-")?);
    push("shuffle9", shuffle9);
    let shuffle10 = s.get(&[b, a, c], "--+")? + s.get(&[a, b, c], "--+")?
        - (s.get(&[b], "-")? * s.get(&[a, c], "-+")? - s.get(&[a], "-")? * s.get(&[c, b], "+-")?
            + s.get(&[c, a, b], "+--")?
            + s.get(&[c, b, a], "+--")?);
    push("shuffle10", shuffle10);

    // I₁ … I₆ and their reductions
    let m = |s: &mut Signed, p: EllipticParam| s.get(&[p], "-");
    let i_pair = |s: &mut Signed, p: EllipticParam, q: EllipticParam| -> Result<f64> {
        // Λ^{--+}(p,q,p) − Λ^{--+}(p,p,q)
        Ok(s.get(&[p, q, p], "--+")? - s.get(&[p, p, q], "--+")?)
    };
    let reduced = |s: &mut Signed, p: EllipticParam, q: EllipticParam| -> Result<f64> {
        // −Λ₁(q,p,p) + Λ⁻(p)(Λ^{-+}(q,p) − ½Λ^{-+}(p,q) + ½Λ^{+-}(q,p))
        Ok(-s.l1(&[q, p, p])?
            + s.get(&[p], "-")? * (s.get(&[q, p], "-+")? - 0.5 * s.get(&[p, q], "-+")? + 0.5 * s.get(&[q, p], "+-")?))
    };
    let i1 = i_pair(&mut s, b, a)?;
    push("I1", i1 - reduced(&mut s, b, a)?);
    let i2 = -i_pair(&mut s, b, c)?;
    push("I2", i2 + reduced(&mut s, b, c)?);
    let i4 = i_pair(&mut s, a, b)?;
    push("I4", i4 - reduced(&mut s, a, b)?);
    let i6 = -i_pair(&mut s, a, c)?;
    push("I6", i6 + reduced(&mut s, a, c)?);
    let i3 = s.get(&[b, c, a], "--+")? - s.get(&[b, a, c], "--+")?;
    let i5 = -s.get(&[a, b, c], "--+")? + s.get(&[a, c, b], "--+")?;
    let i35 = -s.l1(&[c, b, a])? - s.l1(&[c, a, b])? + m(&mut s, b)? * s.get(&[c, a], "-+")?
        + m(&mut s, a)? * s.get(&[c, b], "-+")?
        - m(&mut s, b)? * s.get(&[a, c], "-+")?
        + m(&mut s, a)? * s.get(&[c, b], "+-")?;
    push("I3+I5", i3 + i5 - i35);

    let im = |p, q| -> Result<f64> { Ok(lambda_mev(&[p, q], cutoff)?.value.im) };
    let a2_direct = i1 + i2 + i3 + i4 + i5 + i6;
    let a2_closed = -s.l1(&[a, b, b])? + s.l1(&[c, b, b])? - s.l1(&[b, a, a])? + s.l1(&[c, a, a])?
        - s.l1(&[c, b, a])?
        - s.l1(&[c, a, b])?
        + (m(&mut s, b)? - m(&mut s, a)?) * (im(a, b)? + im(b, c)? + im(c, a)?);
    push("A2", a2_direct - a2_closed);

    // 3A₃, six lines
    let mut p3 = |ps: [EllipticParam; 3]| s.get(&ps, "+++");
    let lines = -p3([b, a, b])? - p3([b, b, a])? + 2.0 * p3([a, b, b])? - 2.0 * p3([c, b, b])?
        + p3([b, c, b])?
        + p3([b, b, c])?
        - p3([a, c, b])?
        - p3([a, b, c])?
        + p3([c, a, b])?
        + p3([c, b, a])?
        + 2.0 * p3([b, a, a])?
        - p3([a, b, a])?
        - p3([a, a, b])?
        + p3([c, b, a])?
        + p3([c, a, b])?
        - p3([b, c, a])?
        - p3([b, a, c])?
        + p3([a, c, a])?
        + p3([a, a, c])?
        - 2.0 * p3([c, a, a])?;
    let a3 = p3([a, b, b])? - p3([c, b, b])? + p3([c, a, b])? + p3([c, b, a])? + p3([b, a, a])? - p3([c, a, a])?;
    push("A3", lines / 3.0 - a3);

    let re = lambda_mev(&[a, b, c], cutoff)?.value.re;
    push("ReLambda", re - (-s.l1(&[a, b, c])? + s.get(&[a, b, c], "+++")?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::rat;
    use proptest::prelude::*;

    fn p(a: i64, b: i64, d: i64) -> EllipticParam {
        EllipticParam::from_ints(a, b, d)
    }

    fn cut() -> Rational {
        rat(12, 1)
    }

    #[test]
    fn bg_examples() {
        let r = check_bg_e(p(1, 1, 5), p(2, 3, 5), cut()).unwrap();
        assert!(r.relative() < 1e-12, "{r:?}");
        let r = check_bg_g1(rat(1, 5), rat(2, 5), rat(1, 5), rat(3, 5), cut()).unwrap();
        assert!(r.relative() < 1e-12, "{r:?}");
        let r = check_bg_g1(rat(3, 7), rat(1, 7), rat(2, 7), rat(6, 7), cut()).unwrap();
        assert!(r.relative() < 1e-12, "{r:?}");
        assert!(check_bg_g1(rat(1, 5), rat(4, 5), rat(1, 5), rat(3, 5), cut()).is_err());
        for (u1, u2) in [(rat(1, 5), rat(2, 5)), (rat(1, 2), rat(1, 3)), (rat(2, 7), Rational::zero())] {
            let r = check_bg_g2(u1, u2, cut()).unwrap();
            assert!(r.relative() < 1e-12, "{u1} {u2}: {r:?}");
        }
        assert!(check_bg_g2(Rational::zero(), rat(1, 3), cut()).is_err());
    }

    #[test]
    fn bg_e_constant_stratum() {
        let r = check_bg_e(p(1, 1, 6), p(1, 4, 6), cut()).unwrap();
        assert!(r.relative() < 1e-12);
        // constant terms alone, from the a₀ tables
        use crate::eisenstein::e_constant_term as a0;
        for (x, y) in [(p(1, 1, 6), p(1, 4, 6)), (p(0, 1, 5), p(2, 3, 5)), (p(1, 0, 7), p(3, 0, 7))] {
            let z = x.add(&y).neg();
            let v = a0(1, z) * a0(2, y) - a0(1, y) * a0(2, x) - a0(1, z) * a0(2, x) + a0(1, y) * a0(2, z) - a0(3, x)
                + a0(3, y) * 0.5
                + a0(3, z) * 0.5;
            assert!(v.norm() < 1e-14, "{x} {y}: {v}");
        }
        assert!(check_bg_e(p(1, 1, 5), p(4, 4, 5), cut()).is_err());
    }

    #[test]
    fn dilog_sums() {
        assert!(check_dilog_sum(5, 1).unwrap() < 1e-10);
        assert!(check_dilog_sum(6, 3).unwrap() < 1e-12);
        assert!(check_dilog_sum(12, 5).unwrap() < 1e-10);
        assert!(check_dilog_sum(7, 0).is_err());
    }

    #[test]
    fn shuffle_ledger() {
        let r = check_shuffle_ledger(p(1, 2, 5), p(2, 1, 5), cut()).unwrap();
        for e in &r {
            assert!(e.residual < 1e-8, "{}: {}", e.name, e.residual);
        }
        assert_eq!(r.len(), 15);
    }

    fn arb_rat() -> impl Strategy<Value = (i64, i64)> {
        prop_oneof![Just(5i64), Just(6), Just(7), Just(12)].prop_flat_map(|d| (0..d, Just(d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn bg_e_random((a, d) in arb_rat(), b in 0i64..12, c in 0i64..12, e in 0i64..12) {
            let x = p(a, b % d, d);
            let y = p(c % d, e % d, d);
            prop_assume!(!x.is_zero() && !y.is_zero() && !x.add(&y).is_zero());
            let r = check_bg_e(x, y, rat(8, 1)).unwrap();
            prop_assert!(r.relative() < 1e-12, "{:?}", r);
        }

        #[test]
        fn bg_g1_random(d in prop_oneof![Just(5i64), Just(7), Just(12)], x in 1i64..12, y in 1i64..12, u in 1i64..12, v in 1i64..12) {
            let (x, y, u, v) = (x % d, y % d, u % d, v % d);
            prop_assume!(x * y * u * v != 0 && (x + y) % d != 0 && (u - v) % d != 0);
            let r = check_bg_g1(rat(x, d), rat(y, d), rat(u, d), rat(v, d), rat(8, 1)).unwrap();
            prop_assert!(r.relative() < 1e-12, "{:?}", r);
        }
    }
}
