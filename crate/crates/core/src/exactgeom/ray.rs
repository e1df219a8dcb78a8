use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{Rat, RatVec};

/// Where rays live: `R^{d+1}` modulo the all-one vector, or plain `R^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ambient {
    Quotient,
    Linear,
}

impl Ambient {
    pub fn as_str(self) -> &'static str {
        match self {
            Ambient::Quotient => "quotient",
            Ambient::Linear => "linear",
        }
    }
}

/// Primitive integer representative of a direction in `W_d`, stored with zero
/// coordinate sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientRay {
    pub rep: Vec<BigInt>,
}

impl QuotientRay {
    pub fn to_ratvec(&self) -> RatVec {
        self.rep.iter().map(|x| Rat::from_integer(x.clone())).collect()
    }

    pub fn label(&self) -> String {
        rep_label(&self.rep)
    }
}

pub fn rep_label(rep: &[BigInt]) -> String {
    let parts: Vec<String> = rep.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Clears denominators and divides by the gcd; the direction is preserved.
pub fn primitive_integer(v: &[Rat]) -> Option<Vec<BigInt>> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &g).collect())
}

/// Zero-sum primitive representative of `v` modulo the all-one vector.
pub fn canonical_ray(v: &[Rat]) -> Result<QuotientRay> {
    let n = Rat::from_integer(BigInt::from(v.len()));
    let mean = crate::rat::sum(v) / n;
    let centered: RatVec = v.iter().map(|x| x - &mean).collect();
    primitive_integer(&centered)
        .map(|rep| QuotientRay { rep })
        .ok_or(Error::AllOnesMultiple)
}

/// Primitive lattice representative modulo 1 with minimum entry zero, e.g.
/// `-e_j` becomes the indicator of the complement of `{j}`.
pub fn lattice_normal(v: &[Rat]) -> Result<Vec<BigInt>> {
    let min = v.iter().min().ok_or(Error::AllOnesMultiple)?.clone();
    let shifted: RatVec = v.iter().map(|x| x - &min).collect();
    primitive_integer(&shifted).ok_or(Error::AllOnesMultiple)
}

/// Canonical form of a ray for the given ambient.
pub fn canonical_in(ambient: Ambient, v: &[Rat]) -> Result<Vec<BigInt>> {
    match ambient {
        Ambient::Quotient => canonical_ray(v).map(|r| r.rep),
        Ambient::Linear => {
            primitive_integer(v).ok_or_else(|| Error::DegenerateInput("zero ray".into()))
        }
    }
}

pub fn int_to_rat(v: &[BigInt]) -> RatVec {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ints;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_ray(&ints(&[1, 0, 0, 0])).unwrap().rep, big(&[3, -1, -1, -1]));
        assert_eq!(canonical_ray(&ints(&[1, 1, 1, 1])), Err(Error::AllOnesMultiple));
        let a = canonical_ray(&ints(&[0, 1, 1, 0])).unwrap();
        let b = canonical_ray(&ints(&[1, 2, 2, 1])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rep, big(&[-1, 1, 1, -1]));
    }

    #[test]
    fn lattice_normal_of_negative_unit() {
        assert_eq!(lattice_normal(&ints(&[0, -1, 0])).unwrap(), big(&[1, 0, 1]));
    }
}
