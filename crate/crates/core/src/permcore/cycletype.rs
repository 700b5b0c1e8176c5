use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::perm::Perm;
use crate::error::{Error, Result};

/// A partition of the degree, stored with parts sorted in descending order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    /// Builds a partition from positive parts in any order.
    pub fn new(mut parts: Vec<usize>) -> Result<CycleType> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "zero part in partition {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    pub(crate) fn from_parts_unchecked(mut parts: Vec<usize>) -> CycleType {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// The partition `[1^n]`.
    pub fn trivial(n: usize) -> CycleType {
        CycleType { parts: vec![1; n] }
    }

    /// Builds a partition from `(part, multiplicity)` pairs.
    pub fn from_powers(powers: &[(usize, usize)]) -> Result<CycleType> {
        let mut parts = Vec::new();
        for &(p, m) in powers {
            parts.extend(std::iter::repeat_n(p, m));
        }
        CycleType::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// Number of parts equal to `k`.
    pub fn count(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// Least common multiple of the parts.
    pub fn lcm(&self) -> u128 {
        self.parts
            .iter()
            .fold(1u128, |acc, &p| acc.lcm(&(p as u128)))
    }

    /// Sign of any permutation with this cycle type.
    pub fn sign(&self) -> i32 {
        let even_parts = self.parts.iter().filter(|&&p| p % 2 == 0).count();
        if even_parts % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Riemann-Hurwitz contribution `n - #parts`.
    pub fn rh_contribution(&self) -> usize {
        self.degree() - self.num_parts()
    }

    /// `(part, multiplicity)` pairs in descending part order.
    pub fn powers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Canonical representative: cycles filled on consecutive points,
    /// longest first.
    pub fn canonical_perm(&self) -> Perm {
        let n = self.degree();
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &p in &self.parts {
            for k in 0..p {
                images[start + k] = start + (k + 1) % p;
            }
            start += p;
        }
        Perm::from_images_unchecked(images)
    }

    /// Number of permutations with this cycle type, `n! / prod(p^m m!)`.
    pub fn class_size(&self) -> num_bigint::BigUint {
        use num_bigint::BigUint;
        let mut num = BigUint::from(1u32);
        for k in 2..=self.degree() {
            num *= BigUint::from(k);
        }
        let mut den = BigUint::from(1u32);
        for (p, m) in self.powers() {
            for _ in 0..m {
                den *= BigUint::from(p);
            }
            for k in 2..=m {
                den *= BigUint::from(k);
            }
        }
        num / den
    }

    /// Parses `[2^3,1^2]`-style text; exponent 1 may be omitted.
    pub fn parse(text: &str) -> Result<CycleType> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("partition must be bracketed: {text:?}")))?;
        if inner.is_empty() {
            return Ok(CycleType { parts: Vec::new() });
        }
        let mut parts = Vec::new();
        for tok in inner.split(',') {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e),
                None => (tok, "1"),
            };
            let b: usize = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad part {tok:?} in {text:?}")))?;
            let e: usize = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {tok:?} in {text:?}")))?;
            if b == 0 {
                return Err(Error::Parse(format!("zero part in {text:?}")));
            }
            parts.extend(std::iter::repeat_n(b, e));
        }
        CycleType::new(parts)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .powers()
            .into_iter()
            .map(|(p, m)| {
                if m == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{m}")
                }
            })
            .collect();
        write!(f, "[{}]", toks.join(","))
    }
}

/// JSON form: the descending list of parts.
impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycleType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<CycleType, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        CycleType::new(v).map_err(serde::de::Error::custom)
    }
}
