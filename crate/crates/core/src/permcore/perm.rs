use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cycletype::CycleType;
use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}`.
///
/// Products are read left to right: `p * q` first applies `p`, then `q`,
/// so `(p * q).apply(i) == q.apply(p.apply(i))`. Text forms are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// Builds a permutation from its 0-based image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image list {images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from a list the caller guarantees to be a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Perm {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation of degree `n` from disjoint 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for &x in c {
                if x >= n || used[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on 0..{n}"
                    )));
                }
                used[x] = true;
            }
            for k in 0..c.len() {
                images[c[k]] = c[(k + 1) % c.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Builds the cycle `(points[0], points[1], ...)` of degree `n`.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Perm> {
        Perm::from_cycles(n, &[points.to_vec()])
    }

    /// Builds a permutation from 1-based cycles, as written in the literature.
    pub fn from_cycles_1(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let shifted: Vec<Vec<usize>> = cycles
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&x| {
                        x.checked_sub(1).ok_or_else(|| {
                            Error::InvalidPermutation("point 0 in 1-based cycle".into())
                        })
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        Perm::from_cycles(n, &shifted)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Unchecked left-to-right product; panics on a degree mismatch.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Perm {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            k >>= 1;
        }
        acc
    }

    /// `x^y = y^-1 x y`; relabels every cycle of `x` through `y`.
    pub fn conjugate(&self, y: &Perm) -> Result<Perm> {
        if self.degree() != y.degree() {
            return Err(Error::DegreeMismatch(self.degree(), y.degree()));
        }
        Ok(self.conj(y))
    }

    /// Unchecked conjugation `y^-1 self y`.
    pub fn conj(&self, y: &Perm) -> Perm {
        assert_eq!(self.degree(), y.degree(), "degree mismatch in conjugation");
        let mut images = vec![0; self.degree()];
        for i in 0..self.degree() {
            images[y.images[i]] = y.images[self.images[i]];
        }
        Perm { images }
    }

    /// All cycles including fixed points, each starting at its smallest point,
    /// listed by smallest point.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    /// Cycles of length at least two.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    /// Number of orbits of `<self>` on the points, fixed points included.
    pub fn num_cycles(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        count
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_parts_unchecked(self.all_cycles().iter().map(|c| c.len()).collect())
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i32 {
        if (self.degree() - self.num_cycles()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// Element order as the lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycle_type().lcm()
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x)
            .map(|(i, _)| i)
    }

    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&i| self.images[i] != i)
            .collect()
    }

    /// One-line 1-based image list, e.g. `[3,1,2]`.
    pub fn to_one_line(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Disjoint-cycle 1-based form, e.g. `(1,2,3)(4,5)`; the identity is `()`.
    pub fn to_cycle_string(&self) -> String {
        let cs = self.cycles();
        if cs.is_empty() {
            return "()".to_string();
        }
        cs.iter()
            .map(|c| {
                let v: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", v.join(","))
            })
            .collect()
    }

    /// Parses either text form. A cycle string needs `degree` unless the
    /// largest point mentioned is the intended degree.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Perm> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.starts_with('[') {
            let inner = s
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("unbalanced brackets in {text:?}")))?;
            let images: Vec<usize> = if inner.is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|t| {
                        let v: usize = t
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad point {t:?} in {text:?}")))?;
                        v.checked_sub(1).ok_or_else(|| {
                            Error::Parse(format!("point 0 in 1-based list {text:?}"))
                        })
                    })
                    .collect::<Result<_>>()?
            };
            if let Some(d) = degree {
                if d != images.len() {
                    return Err(Error::DegreeMismatch(d, images.len()));
                }
            }
            Perm::from_images(images)
        } else if s.starts_with('(') || s.is_empty() {
            let mut cycles: Vec<Vec<usize>> = Vec::new();
            let mut rest = s.as_str();
            let mut max_point = 0;
            while !rest.is_empty() {
                let close = rest
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {text:?}")))?;
                let body = rest[..close]
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
                if !body.is_empty() {
                    let c: Vec<usize> = body
                        .split(',')
                        .map(|t| {
                            t.parse::<usize>()
                                .map_err(|_| Error::Parse(format!("bad point {t:?} in {text:?}")))
                        })
                        .collect::<Result<_>>()?;
                    max_point = max_point.max(c.iter().copied().max().unwrap_or(0));
                    cycles.push(c);
                }
                rest = &rest[close + 1..];
            }
            let n = match degree {
                Some(d) if d < max_point => {
                    return Err(Error::Parse(format!(
                        "point {max_point} exceeds degree {d} in {text:?}"
                    )))
                }
                Some(d) => d,
                None => max_point,
            };
            Perm::from_cycles_1(n, &cycles)
        } else {
            Err(Error::Parse(format!(
                "unrecognized permutation text {text:?}"
            )))
        }
    }
}

impl Mul<&Perm> for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl Mul<Perm> for Perm {
    type Output = Perm;
    fn mul(self, rhs: Perm) -> Perm {
        self.then(&rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.degree(), self.to_cycle_string())
    }
}

/// JSON form: a 1-based image array such as `[3,1,2]`.
impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based: Vec<usize> = self.images.iter().map(|x| x + 1).collect();
        one_based.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Perm, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        let zero_based: Vec<usize> = v
            .into_iter()
            .map(|x| {
                x.checked_sub(1)
                    .ok_or_else(|| serde::de::Error::custom("point 0 in 1-based list"))
            })
            .collect::<std::result::Result<_, _>>()?;
        Perm::from_images(zero_based).map_err(serde::de::Error::custom)
    }
}

/// Left-to-right product of a sequence of permutations of degree `n`.
pub fn product(n: usize, perms: &[Perm]) -> Perm {
    perms.iter().fold(Perm::identity(n), |acc, p| acc.then(p))
}
