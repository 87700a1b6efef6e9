use super::BERNOULLI_2K;
use crate::C64;
#[allow(unused_imports)]
use num_traits::Float;

// Li_2(z) = Σ_{n≥0} B_n u^{n+1}/(n+1)!, u = −log(1−z); needs |u| < 2π.
fn li2_bernoulli(z: C64) -> C64 {
    let u = -(C64::new(1.0, 0.0) - z).ln();
    let u2 = u * u;
    let mut sum = u - u2 * 0.25;
    // term_k = u^{2k+1}/(2k+1)!
    let mut term = u;
    for k in 1..=BERNOULLI_2K.len() {
        let kk = k as f64;
        term = term * u2 / ((2.0 * kk) * (2.0 * kk + 1.0));
        let t = term * BERNOULLI_2K[k - 1];
        sum += t;
        if t.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

/// Bloch-Wigner dilogarithm D(z) = Im Li_2(z) + arg(1−z) log|z|.
///
/// A non-finite input stands for the point at infinity, where D vanishes.
pub fn bloch_wigner(z: C64) -> f64 {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return 0.0;
    }
    let one = C64::new(1.0, 0.0);
    if z.norm() == 0.0 || z == one {
        return 0.0;
    }
    if z.norm() > 1.0 {
        return -bloch_wigner(one / z);
    }
    if z.re > 0.5 {
        return -bloch_wigner(one - z);
    }
    li2_bernoulli(z).im + (one - z).arg() * z.norm().ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{e_rat, rat};
    use proptest::prelude::*;

    const CATALAN: f64 = 0.915_965_594_177_219_015;

    #[test]
    fn examples() {
        assert_eq!(bloch_wigner(C64::new(0.75, 0.0)), 0.0);
        assert!((bloch_wigner(C64::new(0.0, 1.0)) - CATALAN).abs() < 1e-14);
        let z = C64::new(0.3, 0.4);
        assert!((bloch_wigner(z.conj()) + bloch_wigner(z)).abs() < 1e-15);
        assert_eq!(bloch_wigner(C64::new(f64::INFINITY, 0.0)), 0.0);
    }

    #[test]
    fn catalan_partial_sums() {
        // Im Σ i^n/n² = Σ (−1)^k/(2k+1)²
        let mut s = 0.0;
        let mut prev = 0.0;
        for k in 0..100_000 {
            prev = s;
            let t = 1.0 / ((2 * k + 1) as f64).powi(2);
            s += if k % 2 == 0 { t } else { -t };
        }
        let oracle = 0.5 * (s + prev);
        assert!((bloch_wigner(C64::new(0.0, 1.0)) - oracle).abs() < 1e-12);
    }

    #[test]
    fn li2_series_against_direct_sum() {
        let z = C64::new(0.2, -0.35);
        let mut direct = C64::new(0.0, 0.0);
        let mut p = C64::new(1.0, 0.0);
        for n in 1..200 {
            p *= z;
            direct += p / (n as f64 * n as f64);
        }
        assert!((li2_bernoulli(z) - direct).norm() < 1e-15);
    }

    // D(x) + D(y) + D((1−x)/(1−xy)) + D(1−xy) + D((1−y)/(1−xy)) = 0
    fn five_term(x: C64, y: C64) -> f64 {
        let one = C64::new(1.0, 0.0);
        let xy = x * y;
        bloch_wigner(x)
            + bloch_wigner(y)
            + bloch_wigner((one - x) / (one - xy))
            + bloch_wigner(one - xy)
            + bloch_wigner((one - y) / (one - xy))
    }

    #[test]
    fn five_term_on_roots_of_unity() {
        // the form used for sums over roots of unity:
        // D(v) + 2D((1−v)/(1−u)) + D(u/v) − D(u) = 0 whenever it is well defined
        // is a consequence of the symmetric relation above; check the latter
        // at 100 pairs of roots of unity.
        let mut count = 0;
        for n in 3..14i64 {
            for a in 1..n {
                for b in 1..n {
                    if count >= 100 {
                        break;
                    }
                    let x = e_rat(rat(a, n));
                    let y = e_rat(rat(b, n + 1)) * 0.7;
                    let r = five_term(x, y);
                    assert!(r.abs() < 1e-10, "n={n} a={a} b={b} r={r}");
                    count += 1;
                }
            }
        }
    }

    proptest! {
        #[test]
        fn symmetries(re in -3.0f64..3.0, im in -3.0f64..3.0) {
            let z = C64::new(re, im);
            prop_assume!(z.norm() > 1e-3 && (z - 1.0).norm() > 1e-3);
            let d = bloch_wigner(z);
            let one = C64::new(1.0, 0.0);
            prop_assert!((bloch_wigner(one / z) + d).abs() < 1e-12);
            prop_assert!((bloch_wigner(one - z) + d).abs() < 1e-12);
            prop_assert!((bloch_wigner(z.conj()) + d).abs() < 1e-12);
        }

        #[test]
        fn five_term_random(a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0, d in -2.0f64..2.0) {
            let x = C64::new(a, b);
            let y = C64::new(c, d);
            let one = C64::new(1.0, 0.0);
            prop_assume!(x.norm() > 0.05 && y.norm() > 0.05);
            prop_assume!((one - x * y).norm() > 0.05 && (one - x).norm() > 0.05 && (one - y).norm() > 0.05);
            prop_assert!(five_term(x, y).abs() < 1e-10);
        }
    }
}
