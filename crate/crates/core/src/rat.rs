//! Exact rationals and rational vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type RatVec = Vec<Rat>;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn ints(v: &[i64]) -> RatVec {
    v.iter().map(|&x| int(x)).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sum(v: &[Rat]) -> Rat {
    v.iter().fold(Rat::zero(), |acc, x| acc + x)
}

pub fn add(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], c: &Rat) -> RatVec {
    a.iter().map(|x| x * c).collect()
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `2.5`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((whole, dec)) = t.split_once('.') {
        if dec.is_empty() || !dec.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let w: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            _ => whole.parse().map_err(|_| bad())?,
        };
        let f: BigInt = dec.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), dec.len());
        let mag = Rat::from_integer(w.abs()) + Rat::new(f, den);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

pub fn parse_list(s: &str) -> Result<RatVec> {
    s.split(',').map(parse_rat).collect()
}

pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn fmt_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rat).collect();
    format!("({})", parts.join(","))
}

pub fn is_integer_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.denom().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("2.5").unwrap(), frac(5, 2));
        assert_eq!(parse_rat("-0.25").unwrap(), frac(-1, 4));
        assert_eq!(parse_rat("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1.").is_err());
    }

    #[test]
    fn display_is_reduced() {
        assert_eq!(fmt_rat(&frac(4, 8)), "1/2");
        assert_eq!(fmt_rat(&frac(6, -3)), "-2");
    }
}
