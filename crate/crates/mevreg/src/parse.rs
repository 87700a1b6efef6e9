//! Exact parsing of rationals and elliptic parameters from command-line
//! strings. Floats are rejected.

use anyhow::{anyhow, bail, Context, Result};
use mevreg_core::eisenstein::EllipticParam;
use mevreg_core::mev::Sign;
use mevreg_core::Rational;

/// `p/q` or an integer `p`.
pub fn rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.contains(['.', 'e', 'E']) {
        bail!("malformed rational {s:?}: write it as p/q, not as a decimal");
    }
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: i64 = num.parse().with_context(|| format!("malformed rational {s:?}"))?;
    let q: i64 = den.parse().with_context(|| format!("malformed rational {s:?}"))?;
    if q == 0 {
        bail!("malformed rational {s:?}: zero denominator");
    }
    Ok(Rational::new(p, q))
}

/// `x1,x2`, reduced mod 1.
pub fn param(s: &str) -> Result<EllipticParam> {
    let (a, b) = s.split_once(',').ok_or_else(|| anyhow!("malformed parameter {s:?}: expected x1,x2 with x1, x2 = p/q"))?;
    Ok(EllipticParam::new(rational(a)?, rational(b)?))
}

/// Each flag value may hold several parameters separated by `;`.
pub fn param_list(values: &[String]) -> Result<Vec<EllipticParam>> {
    values
        .iter()
        .flat_map(|v| v.split(';'))
        .filter(|s| !s.trim().is_empty())
        .map(param)
        .collect()
}

/// A string over {+, -}, e.g. `+-+`.
pub fn signs(s: &str) -> Result<Vec<Sign>> {
    s.trim()
        .chars()
        .filter(|c| !matches!(c, ',' | ' '))
        .map(|c| match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            _ => Err(anyhow!("malformed sign {c:?}: expected + or -")),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(rational("3/6").unwrap(), Rational::new(1, 2));
        assert_eq!(rational(" -2 ").unwrap(), Rational::from_integer(-2));
        assert!(rational("0.25").is_err());
        assert!(rational("1e3").is_err());
        assert!(rational("1/0").is_err());
        assert!(rational("a/b").is_err());
    }

    #[test]
    fn params() {
        let x = param("6/5,-1/5").unwrap();
        assert_eq!(x, EllipticParam::from_ints(1, 4, 5));
        let v = param_list(&["1/4,1/4;1/3,0".into(), "1/2,1/2".into()]).unwrap();
        assert_eq!(v.len(), 3);
        assert!(param("1/4").is_err());
        assert_eq!(signs("+-").unwrap(), vec![Sign::Plus, Sign::Minus]);
        assert!(signs("+x").is_err());
    }
}
