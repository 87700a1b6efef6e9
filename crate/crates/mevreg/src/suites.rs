//! Verification suites. Each produces a list of verdicts in a fixed order;
//! instances come from a seeded generator so reruns are byte-identical.

use crate::oracle::k2_quadrature;
use anyhow::Result;
use clap::ValueEnum;
use mevreg_core::eisenstein::EllipticParam;
use mevreg_core::identities::{check_bg_e, check_bg_g1, check_bg_g2, check_dilog_sum, check_shuffle_ledger};
use mevreg_core::mellin::{im_i_direct, im_i_rz, mellin_split, MellinInput, PoleMode};
use mevreg_core::mev::{lambda_diff_x2, lambda_mev, lambda_single_closed};
use mevreg_core::regint::shuffle_expand;
use mevreg_core::regulator::{dg_da2, goncharov_mev, k2_regulator, regulator_report, validate_pair};
use mevreg_core::specfun::{to_f64, ZETA_PRIME_MINUS2};
use mevreg_core::{eisenstein::EisensteinSpec, Rational, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Borisov-Gunnells product relations and the dilogarithm sums
    Bg,
    /// shuffle products and path reversal
    Shuffle,
    /// exponent-swap identity for Im I(u, v)
    Rz,
    /// 𝒢 via multiple Eisenstein values against the L-value formula
    Thm1,
    /// 𝒢 against the Beilinson regulator
    Thm2,
    /// K₂ regulator against quadrature of η
    K2,
    /// single values against the closed form
    Single,
    /// length-drop derivative against finite differences
    Diff,
    /// symmetries of 𝒢
    Sym,
    /// M(G³_{0,x}, 0) = −2ζ′(−2)B₁({x})
    G3,
    /// shuffle bookkeeping behind the regulator reduction
    Ledger,
    /// ∂𝒢/∂a₂ three ways
    Deriv,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Bg => "bg",
            Suite::Shuffle => "shuffle",
            Suite::Rz => "rz",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::K2 => "k2",
            Suite::Single => "single",
            Suite::Diff => "diff",
            Suite::Sym => "sym",
            Suite::G3 => "g3",
            Suite::Ledger => "ledger",
            Suite::Deriv => "deriv",
            Suite::All => "all",
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::Bg => 1e-12,
            Suite::Shuffle => 1e-9,
            Suite::Rz => 1e-8,
            Suite::Thm1 | Suite::Thm2 | Suite::K2 => 1e-7,
            Suite::Single => 1e-10,
            Suite::Diff => 1e-6,
            Suite::Sym => 1e-8,
            Suite::G3 => 1e-9,
            Suite::Ledger => 1e-8,
            Suite::Deriv => 1e-5,
            Suite::All => 0.0,
        }
    }

    fn default_levels(self) -> &'static [i64] {
        match self {
            Suite::Rz | Suite::Thm1 | Suite::Thm2 | Suite::Sym | Suite::Deriv => &[5, 6, 7],
            _ => &[5, 6, 7, 12],
        }
    }

    pub fn members(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![Single, Shuffle, K2, Bg, Rz, Diff, Thm1, Thm2, Sym, G3, Ledger, Deriv],
            s => vec![s],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub suite: &'static str,
    pub identity: String,
    pub instance: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub cutoff: Rational,
    /// Overrides the per-suite tolerance.
    pub tol: Option<f64>,
    /// Restricts generated instances to one level.
    pub level: Option<i64>,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { cutoff: mevreg_core::series::default_cutoff(), tol: None, level: None, seed: DEFAULT_SEED }
    }
}

struct Ctx {
    suite: Suite,
    cutoff: Rational,
    tol: f64,
    levels: Vec<i64>,
    rng: ChaCha8Rng,
}

impl Ctx {
    fn new(suite: Suite, o: &Options) -> Self {
        let levels = match o.level {
            Some(n) => vec![n],
            None => suite.default_levels().to_vec(),
        };
        // one stream per suite, independent of which other suites run
        let rng = ChaCha8Rng::seed_from_u64(o.seed ^ (suite as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        Ctx { suite, cutoff: o.cutoff, tol: o.tol.unwrap_or(suite.default_tolerance()), levels, rng }
    }

    fn verdict(&self, identity: impl Into<String>, instance: impl Into<String>, residual: f64) -> Verdict {
        Verdict {
            suite: self.suite.name(),
            identity: identity.into(),
            instance: instance.into(),
            residual,
            tolerance: self.tol,
            pass: residual.is_finite() && residual < self.tol,
        }
    }

    fn level(&self, i: usize) -> i64 {
        self.levels[i % self.levels.len()]
    }

    /// x ≠ 0 with denominator dividing d; both coordinates non-zero if asked.
    fn param(&mut self, d: i64, nonzero_coords: bool) -> EllipticParam {
        loop {
            let lo = if nonzero_coords { 1 } else { 0 };
            let x = EllipticParam::from_ints(self.rng.gen_range(lo..d), self.rng.gen_range(lo..d), d);
            if !x.is_zero() {
                return x;
            }
        }
    }

    fn residue(&mut self, d: i64) -> Rational {
        Rational::new(self.rng.gen_range(1..d), d)
    }
}

fn list(xs: &[EllipticParam]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Runs each closure on the rayon pool and concatenates in input order.
fn par<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<Vec<Verdict>> + Sync + Send) -> Result<Vec<Verdict>> {
    let parts: Vec<Result<Vec<Verdict>>> = items.par_iter().map(&f).collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

pub fn run_suite(suite: Suite, o: &Options) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for s in suite.members() {
        let mut cx = Ctx::new(s, o);
        out.extend(match s {
            Suite::Single => single(&mut cx)?,
            Suite::Shuffle => shuffle(&mut cx)?,
            Suite::K2 => k2(&mut cx)?,
            Suite::Bg => bg(&mut cx)?,
            Suite::Rz => rz(&mut cx)?,
            Suite::Diff => diff(&mut cx)?,
            Suite::Thm1 => theorems(&mut cx, true, false)?,
            Suite::Thm2 => theorems(&mut cx, false, true)?,
            Suite::Sym => sym(&mut cx)?,
            Suite::G3 => g3(&mut cx)?,
            Suite::Ledger => ledger(&mut cx)?,
            Suite::Deriv => deriv(&mut cx)?,
            Suite::All => unreachable!(),
        });
    }
    Ok(out)
}

/// thm1 and thm2 share one grid; computing both from a single report
/// avoids evaluating 𝒢 twice.
pub fn run_theorems(o: &Options) -> Result<Vec<Verdict>> {
    let mut cx = Ctx::new(Suite::Thm1, o);
    let both = theorems(&mut cx, true, true)?;
    let t2 = o.tol.unwrap_or(Suite::Thm2.default_tolerance());
    Ok(both
        .into_iter()
        .map(|mut v| {
            if v.identity.starts_with("G_mev = (N^2/6)B") {
                v.suite = "thm2";
                v.tolerance = t2;
                v.pass = v.residual.is_finite() && v.residual < t2;
            }
            v
        })
        .collect())
}

fn single(cx: &mut Ctx) -> Result<Vec<Verdict>> {
    let mut xs = Vec::new();
    for i in 0..20 {
        let d = cx.level(i);
        let x = match i % 4 {
            0 => EllipticParam::from_ints(0, cx.rng.gen_range(1..d), d),
            1 => EllipticParam::from_ints(cx.rng.gen_range(1..d), 0, d),
            _ => cx.param(d, true),
        };
        xs.push(x);
    }
    let cutoff = cx.cutoff;
    let cx = &*cx;
    par(&xs, |x| {
        let engine = lambda_mev(&[*x], cutoff)?.value;
        let closed = lambda_single_closed(*x)?;
        Ok(vec![cx.verdict("Lambda(x) = closed form", x.to_string(), (engine - closed).norm())])
    })
}

enum ShuffleCase {
    Shuffle(Vec<EllipticParam>, Vec<EllipticParam>),
    Reversal(Vec<EllipticParam>),
}

fn shuffle(cx: &mut Ctx) -> Result<Vec<Verdict>> {
    let mut cases = Vec::new();
    for i in 0..25 {
        let d = cx.level(i);
        let (la, lb) = [(1, 1), (1, 2), (2, 1)][i % 3];
        let u: Vec<_> = (0..la).map(|_| cx.param(d, true)).collect();
        let v: Vec<_> = (0..lb).map(|_| cx.param(cx.level(i + 1), true)).collect();
        cases.push(ShuffleCase::Shuffle(u, v));
    }
    for i in 0..25 {
        let d = cx.level(i);
        let n = 1 + i % 3;
        let w: Vec<_> = (0..n).map(|_| cx.param(d, n > 1)).collect();
        cases.push(ShuffleCase::Reversal(w));
    }
    let cutoff = cx.cutoff;
    let cx = &*cx;
    let lam = |w: &[EllipticParam]| -> Result<C64> { Ok(lambda_mev(w, cutoff)?.value) };
    par(&cases, |c| match c {
        ShuffleCase::Shuffle(u, v) => {
            let lhs = lam(u)? * lam(v)?;
            let mut rhs = C64::new(0.0, 0.0);
            for w in shuffle_expand(u, v)? {
                rhs += lam(&w)?;
            }
            Ok(vec![cx.verdict("Lambda(u)Lambda(v) = sum over shuffles", format!("u = {} | v = {}", list(u), list(v)), (lhs - rhs).norm())])
        }
        ShuffleCase::Reversal(w) => {
            let sig: Vec<_> = w.iter().map(|x| x.sigma()).collect();
            let rev: Vec<_> = w.iter().rev().copied().collect();
            let sign = if w.len() % 2 == 0 { 1.0 } else { -1.0 };
            let r = lam(&sig)? - lam(&rev)? * sign;
            Ok(vec![cx.verdict("Lambda(x1s..xns) = (-1)^n Lambda(xn..x1)", list(w), r.norm())])
        }
    })
}

fn k2(cx: &mut Ctx) -> Result<Vec<Verdict>> {
    let mut pairs = Vec::new();
    for i in 0..6 {
        let d = cx.level(i);
        let b = cx.param(d, true);
        let a = loop {
            // instances 2 and 5 put a on a coordinate axis
            let a = match i {
                2 => EllipticParam::from_ints(0, cx.rng.gen_range(1..d), d),
                5 => EllipticParam::from_ints(cx.rng.gen_range(1..d), 0, d),
                _ => cx.param(d, true),
            };
            if a != b {
                break a;
            }
        };
        pairs.push((a, b));
    }
    let cutoff = cx.cutoff;
    let cx = &*cx;
    par(&pairs, |(a, b)| {
        let series = k2_regulator(*a, *b, cutoff)?;
        let quad = k2_quadrature(*a, *b, 1e-12);
        Ok(vec![cx.verdict("reg Im Lambda(a,b) = int eta(g_a,g_b)", format!("a = {a} b = {b}"), (series - quad).abs())])
    })
}

enum BgCase {
    E(EllipticParam, EllipticParam),
    G1(Rational, Rational, Rational, Rational),
    G2(Rational, Rational),
}

fn bg(cx: &mut Ctx) -> Result<Vec<Verdict>> {
    let mut cases = Vec::new();
    for i in 0..30 {
        let d = cx.level(i);
        let case = loop {
            match i % 3 {
                0 => {
                    let (x, y) = (cx.param(d, false), cx.param(d, false));
                    if !x.add(&y).is_zero() {
                        break BgCase::E(x, y);
                    }
                }
                1 => {
                    let (x, y, u, v) = (cx.residue(d), cx.residue(d), cx.residue(d), cx.residue(d));
                    if *(x + y).denom() != 1 && u != v {
                        break BgCase::G1(x, y, u, v);
                    }
                }
                _ => {
                    let u1 = cx.residue(d);
                    let u2 = Rational::new(cx.rng.gen_range(0..d), d);
                    break BgCase::G2(u1, u2);
                }
            }
        };
        cases.push(case);
    }
    let mut dilog = Vec::new();
    for &n in &cx.levels {
        for j in 1..n {
            dilog.push((n, j));
        }
    }
    let cutoff = cx.cutoff;
    let cx = &*cx;
    let mut out = par(&cases, |c| {
        let (name, inst, r) = match c {
            BgCase::E(x, y) => ("BG relation for E", format!("x = {x} y = {y}"), check_bg_e(*x, *y, cutoff)?),
            BgCase::G1(x, y, u, v) => ("BG relation for G, first form", format!("x1 = {x} y1 = {y} u2 = {u} v2 = {v}"), check_bg_g1(*x, *y, *u, *v, cutoff)?),
            BgCase::G2(u1, u2) => ("BG relation for G, second form", format!("u = ({u1},{u2})"), check_bg_g2(*u1, *u2, cutoff)?),
        };
        Ok(vec![cx.verdict(name, inst, r.relative())])
    })?;
    for (n, j) in dilog {
        out.push(cx.verdict("sum_v D((1-v)/(1-u)) = (N/2) D(u)", format!("N = {n} u = e({j}/{n})"), check_dilog_sum(n, j)?));
    }
    Ok(out)
}

fn rz(cx: &mut Ctx) -> Result<Vec<Verdict>> {
    let mut cases = Vec::new();
    for i in 0..10 {
        let d = cx.level(i);
        cases.push((cx.param(d, true), cx.param(d, true), 2 + (i % 2) as u32));
    }
    let cutoff = cx.cutoff;
    let cx = &*cx;
    par(&cases, |(u, v, ell)| {
        let direct = im_i_direct(*u, *v, *ell, cutoff)?;
        let swapped = im_i_rz(*u, *v, *ell, cutoff)?;
        Ok(vec![cx.verdict("Im I(u,v) direct = exponent-swapped Mellin form", format!("u = {u} v = {v} l = {ell}"), (direct - swapped).abs())])
    })
}

fn diff(cx: &mut Ctx) -> Result<Vec<Verdict>> {
    let mut cases = Vec::new();
    for i in 0..3 {
        let d = cx.level(i);
        let w = vec![cx.param(d, true), cx.param(d, true), cx.param(d, true)];
        for p in 1..=3 {
            cases.push((w.clone(), p));
        }
    }
    let cutoff = cx.cutoff;
    let cx = &*cx;
    let h = Rational::new(1, 4096);
    par(&cases, |(w, p)| {
        let at = |t: Rational| -> Result<C64> {
            let mut v = w.clone();
            v[p - 1] = v[p - 1].shift2(t);
            Ok(lambda_mev(&v, cutoff)?.value)
        };
        let fd = (at(-h * 2)? - at(-h)? * 8.0 + at(h)? * 8.0 - at(h * 2)?) / (12.0 / 4096.0);
        let formula = lambda_diff_x2(w, *p, cutoff)?;
        Ok(vec![cx.verdict(format!("dLambda/dx_{p},2 = length-drop formula"), list(w), (fd - formula).norm())])
    })
}

/// Pairs (a, b) of exact level N with a, b, a + b off the coordinate axes,
/// `per` of them for each level.
fn grid(cx: &mut Ctx, per: usize, extra: impl Fn(EllipticParam, EllipticParam) -> bool) -> Vec<(EllipticParam, EllipticParam, i64)> {
    let mut out = Vec::new();
    for k in 0..cx.levels.len() {
        let n = cx.levels[k];
        let mut found = 0;
        let mut tries = 0;
        while found < per && tries < 10_000 {
            tries += 1;
            let (a, b) = (cx.param(n, true), cx.param(n, true));
            let lcm = {
                let (x, y) = (a.level(), b.level());
                x / gcd(x, y) * y
            };
            if lcm != n || validate_pair(a, b).is_err() || !extra(a, b) || out.iter().any(|&(x, y, _)| (x, y) == (a, b)) {
                continue;
            }
            out.push((a, b, n));
            found += 1;
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn theorems(cx: &mut Ctx, thm1: bool, thm2: bool) -> Result<Vec<Verdict>> {
    let pairs = grid(cx, 4, |_, _| true);
    let cutoff = cx.cutoff;
    let cx = &*cx;
    par(&pairs, |(a, b, n)| {
        let r = regulator_report(*a, *b, Some(*n), cutoff)?;
        let inst = format!("a = {a} b = {b} N = {n} {}", r.component);
        let mut v = Vec::new();
        if thm1 {
            v.push(cx.verdict("G_mev = G_lvalue", inst.clone(), r.residual_thm1));
        }
        if thm2 {
            v.push(cx.verdict("G_mev = (N^2/6)B - zeta3 term", inst, r.residual_thm2));
        }
        Ok(v)
    })
}

fn sym(cx: &mut Ctx) -> Result<Vec<Verdict>> {
    // G(a, a) needs a, a and 2a off the axes as well
    let pairs = grid(cx, 2, |a, _| validate_pair(a, a).is_ok());
    let cutoff = cx.cutoff;
    let cx = &*cx;
    par(&pairs, |(a, b, _)| {
        let g = |x: EllipticParam, y: EllipticParam| -> Result<f64> { Ok(goncharov_mev(x, y, cutoff)?.value) };
        let gab = g(*a, *b)?;
        let inst = format!("a = {a} b = {b}");
        Ok(vec![
            cx.verdict("G(a,b) = G(b,a)", inst.clone(), (gab - g(*b, *a)?).abs()),
            cx.verdict("G(a,a) = 0", format!("a = {a}"), g(*a, *a)?.abs()),
            cx.verdict("G(a,b) = -G(as,bs)", inst, (gab + g(a.sigma(), b.sigma())?).abs()),
        ])
    })
}

fn g3(cx: &mut Ctx) -> Result<Vec<Verdict>> {
    let mut xs: Vec<Rational> = Vec::new();
    let mut i = 0;
    while xs.len() < 8 {
        let x = cx.residue(cx.level(i));
        i += 1;
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    let cutoff = cx.cutoff;
    let cx = &*cx;
    par(&xs, |x| {
        let f = MellinInput::product(&[EisensteinSpec::g(3, EllipticParam::new(Rational::from_integer(0), *x))?], C64::new(1.0, 0.0), cutoff)?;
        let m = mellin_split(&f, C64::new(0.0, 0.0), PoleMode::Reject)?.value;
        let want = -2.0 * ZETA_PRIME_MINUS2 * (to_f64(*x) - 0.5);
        Ok(vec![cx.verdict("M(G3_(0,x), 0) = -2 zeta'(-2) B1(x)", format!("x = {x}"), (m - want).norm())])
    })
}

fn ledger(cx: &mut Ctx) -> Result<Vec<Verdict>> {
    let pairs = grid(cx, 1, |_, _| true);
    let cutoff = cx.cutoff;
    let cx = &*cx;
    par(&pairs, |(a, b, _)| {
        Ok(check_shuffle_ledger(*a, *b, cutoff)?
            .into_iter()
            .map(|e| cx.verdict(e.name, format!("a = {a} b = {b}"), e.residual))
            .collect())
    })
}

fn deriv(cx: &mut Ctx) -> Result<Vec<Verdict>> {
    // the five-point stencil must stay inside one component
    let h = Rational::new(2, mevreg_core::regulator::DIFF_STEP);
    let pairs = grid(cx, 1, |a, b| {
        let k = |t| validate_pair(a.shift2(t), b).map(|p| p.1);
        validate_pair(a, b).ok().map(|p| p.1) == k(h).ok() && k(-h).ok() == k(h).ok()
    });
    let cutoff = cx.cutoff;
    let cx = &*cx;
    par(&pairs, |(a, b, _)| {
        let d = dg_da2(*a, *b, cutoff)?;
        let inst = format!("a = {a} b = {b}");
        Ok(vec![
            cx.verdict("dG/da2: finite difference = iterated integral", inst.clone(), (d.finite_difference - d.iterated).abs()),
            cx.verdict("dG/da2: Mellin form = iterated integral", inst, (d.reduced - d.iterated).abs()),
        ])
    })
}
