//! Ramification arithmetic: Riemann-Hurwitz, fiber products of covers,
//! Galois-closure indices, almost Galois types and the genus formula for
//! `t = 2` product-type covers.

use num_integer::{gcd, Integer};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permcore::{product, CycleType, GroupHandle, Perm};
use crate::wreath::{ClassDescriptor, WreathElement};

/// `n - (number of parts)`.
pub fn rh_contribution(e: &CycleType) -> usize {
    e.rh_contribution()
}

/// The ramification of a cover of the projective line: one partition of the
/// degree per branch point. Trivial partitions are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationDatum {
    pub degree: usize,
    pub points: Vec<CycleType>,
}

impl RamificationDatum {
    pub fn new(degree: usize, points: Vec<CycleType>) -> Result<RamificationDatum> {
        for p in &points {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch(degree, p.degree()));
            }
        }
        let points = points.into_iter().filter(|p| !p.is_trivial()).collect();
        Ok(RamificationDatum { degree, points })
    }

    /// The ramification of the cycle types of a tuple.
    pub fn of_perms(perms: &[Perm]) -> Result<RamificationDatum> {
        let n = perms
            .first()
            .ok_or_else(|| Error::InvalidInput("empty tuple".into()))?
            .degree();
        RamificationDatum::new(n, perms.iter().map(|p| p.cycle_type()).collect())
    }

    /// Points sorted, for comparison as a multiset.
    pub fn sorted_points(&self) -> Vec<CycleType> {
        let mut v = self.points.clone();
        v.sort();
        v
    }

    /// Genus over a base of genus 0, with integrality enforced.
    pub fn genus(&self) -> Result<GenusReport> {
        riemann_hurwitz(self.degree, &self.points)
    }
}

/// The result of a Riemann-Hurwitz computation over a genus 0 base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub degree: usize,
    pub genus: i64,
    pub total_ramification: usize,
    pub contributions: Vec<usize>,
}

/// Solves `2g - 2 = -2n + sum R` for `g`.
pub fn riemann_hurwitz(n: usize, points: &[CycleType]) -> Result<GenusReport> {
    let contributions: Vec<usize> = points.iter().map(|e| e.rh_contribution()).collect();
    let total: usize = contributions.iter().sum();
    let twice = total as i64 - 2 * n as i64 + 2;
    if twice % 2 != 0 {
        return Err(Error::NonIntegralGenus(format!(
            "total ramification {total} is odd at degree {n}"
        )));
    }
    Ok(GenusReport {
        degree: n,
        genus: twice / 2,
        total_ramification: total,
        contributions,
    })
}

/// Genus of the cover with the given branch cycles, after checking that they
/// multiply to the identity and generate a transitive group.
pub fn genus_from_tuple(perms: &[Perm]) -> Result<GenusReport> {
    let n = perms
        .first()
        .ok_or_else(|| Error::InvalidInput("empty tuple".into()))?
        .degree();
    if perms.iter().any(|p| p.degree() != n) {
        return Err(Error::DegreeMismatch(n, 0));
    }
    if !product(n, perms).is_identity() {
        return Err(Error::NotProductOne);
    }
    if !GroupHandle::new(n, perms.to_vec())?.is_transitive() {
        return Err(Error::Intransitive);
    }
    let types: Vec<CycleType> = perms.iter().map(|p| p.cycle_type()).collect();
    riemann_hurwitz(n, &types)
}

/// Genus of the cover of degree `l^t` defined by a wreath tuple.
pub fn genus_from_wreath_tuple(xs: &[WreathElement]) -> Result<GenusReport> {
    let embedded: Vec<Perm> = xs.iter().map(|x| x.embed()).collect();
    genus_from_tuple(&embedded)
}

/// Genus of a Galois cover of degree `m` with the given branch indices:
/// `2g - 2 = -2m + sum m (1 - 1/e)`.
pub fn galois_genus(m: u64, indices: &[u64]) -> Result<i64> {
    let mut total = Ratio::from_integer(-2 * m as i128);
    for &e in indices {
        if e == 0 || !m.is_multiple_of(e) {
            return Err(Error::NonIntegralGenus(format!(
                "branch index {e} does not divide the degree {m}"
            )));
        }
        total +=
            Ratio::from_integer(m as i128) * (Ratio::from_integer(1) - Ratio::new(1, e as i128));
    }
    let two_g = total + Ratio::from_integer(2);
    if !two_g.is_integer() || two_g.to_integer() % 2 != 0 {
        return Err(Error::NonIntegralGenus(format!(
            "indices {indices:?} at degree {m} give 2g = {two_g}"
        )));
    }
    Ok((two_g.to_integer() / 2) as i64)
}

/// The fiber of the fiber product of two covers over a point with local
/// ramification `e1` and `e2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbhyankarFiber {
    /// `(ramification index, number of points)` for each pair of parts.
    pub points: Vec<(usize, usize)>,
    /// `sum (r1 - gcd(r1, r2))` over pairs of parts.
    pub contribution: usize,
}

impl AbhyankarFiber {
    /// `sum gcd * lcm` over pairs, which equals the product of the degrees.
    pub fn total_degree(&self) -> usize {
        self.points.iter().map(|(e, c)| e * c).sum()
    }

    /// The fiber as a partition of the product degree.
    pub fn as_partition(&self) -> CycleType {
        let mut parts = Vec::new();
        for &(e, c) in &self.points {
            parts.extend(std::iter::repeat_n(e, c));
        }
        CycleType::from_parts_unchecked(parts)
    }
}

/// For each pair of parts `(r1, r2)` there are `gcd(r1, r2)` points of index
/// `lcm(r1, r2)`.
pub fn abhyankar_fiber(e1: &CycleType, e2: &CycleType) -> Result<AbhyankarFiber> {
    if e1.degree() != e2.degree() {
        return Err(Error::DegreeMismatch(e1.degree(), e2.degree()));
    }
    let mut points = Vec::new();
    let mut contribution = 0;
    for &r1 in e1.parts() {
        for &r2 in e2.parts() {
            let g = gcd(r1, r2);
            points.push((r1.lcm(&r2), g));
            contribution += r1 - g;
        }
    }
    Ok(AbhyankarFiber {
        points,
        contribution,
    })
}

/// Ramification index of the Galois closure over a point: the lcm of the parts.
pub fn galois_closure_index(e: &CycleType) -> u128 {
    e.lcm()
}

/// How the almost Galois type is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlmostGaloisMode {
    /// The threshold inequalities with error `2(alpha+1)(k+1) + (2/3)(alpha+1)(k^2-1)`.
    Strict,
    /// The most frequent small part, if it covers more than half the degree.
    Plurality,
}

/// Almost Galois type `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MType {
    Finite(usize),
    Infinite,
    /// Strict mode only: neither a threshold nor the infinite criterion holds,
    /// which can happen at small degree.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostGaloisReport {
    pub m: MType,
    pub mode: AlmostGaloisMode,
    pub alpha: u64,
    /// Strict mode: `epsilon_{alpha,m}` as a reduced fraction when `m` is finite.
    pub error_bound: Option<String>,
    /// Plurality mode: number of parts equal to `m`.
    pub entry_count: Option<usize>,
}

/// `epsilon_{alpha,k} = 2(alpha+1) k (k + 1 + (k^2 - 1)/3)`.
pub fn epsilon(alpha: u64, k: usize) -> Ratio<i128> {
    let a1 = alpha as i128 + 1;
    let k = k as i128;
    Ratio::from_integer(2 * a1 * k) * (Ratio::from_integer(k + 1) + Ratio::new(k * k - 1, 3))
}

pub fn almost_galois_type(e: &CycleType, alpha: u64, mode: AlmostGaloisMode) -> AlmostGaloisReport {
    let ell = e.degree();
    match mode {
        AlmostGaloisMode::Strict => {
            let a1 = alpha as i128 + 1;
            for k in 1..=6usize {
                let ki = k as i128;
                let threshold = Ratio::new(ell as i128, ki)
                    - Ratio::from_integer(2 * a1 * (ki + 1))
                    - Ratio::new(2 * a1 * (ki * ki - 1), 3);
                if Ratio::from_integer(e.count(k) as i128) >= threshold {
                    return AlmostGaloisReport {
                        m: MType::Finite(k),
                        mode,
                        alpha,
                        error_bound: Some(epsilon(alpha, k).to_string()),
                        entry_count: None,
                    };
                }
            }
            let infinite = (1..=6usize).all(|k| (e.count(k) as i128) <= 2 * a1 * (k as i128 + 1));
            AlmostGaloisReport {
                m: if infinite {
                    MType::Infinite
                } else {
                    MType::Undetermined
                },
                mode,
                alpha,
                error_bound: None,
                entry_count: None,
            }
        }
        AlmostGaloisMode::Plurality => {
            let (best, count) = (1..=6usize)
                .map(|k| (k, e.count(k)))
                .fold((1, 0), |acc, c| if c.1 > acc.1 { c } else { acc });
            let m = if count > 0 && 2 * best * count > ell {
                MType::Finite(best)
            } else {
                MType::Infinite
            };
            AlmostGaloisReport {
                m,
                mode,
                alpha,
                error_bound: None,
                entry_count: Some(count),
            }
        }
    }
}

/// Whether `x` is of almost Galois type `m` with error `bound`: for finite
/// `m`, at least `(l - bound)/m` orbits of length `m`; for infinite `m`, at
/// most `bound` orbits.
pub fn perm_almost_galois(x: &Perm, m: MType, bound: Ratio<i128>) -> bool {
    let ct = x.cycle_type();
    match m {
        MType::Finite(k) => {
            Ratio::from_integer((k * ct.count(k)) as i128)
                >= Ratio::from_integer(x.degree() as i128) - bound
        }
        MType::Infinite => Ratio::from_integer(ct.num_parts() as i128) <= bound,
        MType::Undetermined => false,
    }
}

/// `S_{h1}(P) = sum over ordered pairs of parts (r1 - gcd(r1, r2))`.
pub fn s_h1(e: &CycleType) -> usize {
    let p = e.parts();
    p.iter()
        .map(|&r1| p.iter().map(|&r2| r1 - gcd(r1, r2)).sum::<usize>())
        .sum()
}

/// `S_{h1,h2}(P) = sum over pairs (r, s) of (r + s - 2 gcd(r, s))`.
pub fn s_h1h2(e1: &CycleType, e2: &CycleType) -> usize {
    e1.parts()
        .iter()
        .map(|&r| {
            e2.parts()
                .iter()
                .map(|&s| r + s - 2 * gcd(r, s))
                .sum::<usize>()
        })
        .sum()
}

/// Genus of the degree `l^2` cover from its `t = 2` data:
/// `4 g_X - 4 = 2 l (g_{Y1} - 1) + sum_S S_{h1,h2} + sum_R S_{h1} - sum_R #odd parts`.
///
/// `r_points` holds the `h1` ramification at the points where the top swaps
/// the coordinates; `s_points` holds the `(h1, h2)` ramification at the
/// remaining branch points.
pub fn swap_point_genus(
    ell: usize,
    r_points: &[CycleType],
    s_points: &[(CycleType, CycleType)],
    g_y1: i64,
) -> Result<i64> {
    let mut rhs = 2 * ell as i64 * (g_y1 - 1);
    for (a, b) in s_points {
        if a.degree() != ell || b.degree() != ell {
            return Err(Error::DegreeMismatch(ell, a.degree().max(b.degree())));
        }
        rhs += s_h1h2(a, b) as i64;
    }
    for e in r_points {
        if e.degree() != ell {
            return Err(Error::DegreeMismatch(ell, e.degree()));
        }
        rhs += s_h1(e) as i64;
        rhs -= e.parts().iter().filter(|&&r| r % 2 == 1).count() as i64;
    }
    let four_g = rhs + 4;
    if four_g % 4 != 0 {
        return Err(Error::NonIntegralGenus(format!("4 g_X = {four_g}")));
    }
    Ok(four_g / 4)
}

/// The `t = 2` data of a tuple, split into swap points and base points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct T2Data {
    pub ell: usize,
    pub r_points: Vec<CycleType>,
    pub s_points: Vec<(CycleType, CycleType)>,
    pub g_y: i64,
    pub g_y1: i64,
}

impl T2Data {
    /// Reads the data off class descriptors. `Y` is the double cover branched
    /// at the swap points and `Y1 -> Y` has degree `l`.
    pub fn from_descriptors(ell: usize, ds: &[ClassDescriptor]) -> Result<T2Data> {
        let mut r_points = Vec::new();
        let mut s_points = Vec::new();
        for d in ds {
            match d {
                ClassDescriptor::Swap(a) => r_points.push(a.clone()),
                ClassDescriptor::Pair(a, b) => {
                    if a.is_trivial() && b.is_trivial() {
                        continue;
                    }
                    s_points.push((a.clone(), b.clone()))
                }
            }
        }
        if r_points.len() % 2 != 0 || r_points.is_empty() {
            return Err(Error::Precondition(format!(
                "need a positive even number of swap points, got {}",
                r_points.len()
            )));
        }
        let g_y = (r_points.len() as i64 - 2) / 2;
        let mut rh = ell as i64 * (2 * g_y - 2);
        for e in &r_points {
            rh += e.rh_contribution() as i64;
        }
        for (a, b) in &s_points {
            rh += (a.rh_contribution() + b.rh_contribution()) as i64;
        }
        if rh % 2 != 0 {
            return Err(Error::NonIntegralGenus(format!("2 g_Y1 - 2 = {rh}")));
        }
        let g_y1 = (rh + 2) / 2;
        Ok(T2Data {
            ell,
            r_points,
            s_points,
            g_y,
            g_y1,
        })
    }

    pub fn from_tuple(xs: &[WreathElement]) -> Result<T2Data> {
        let ell = xs
            .first()
            .ok_or_else(|| Error::InvalidInput("empty tuple".into()))?
            .ell();
        let ds: Vec<ClassDescriptor> = xs.iter().map(ClassDescriptor::of).collect::<Result<_>>()?;
        T2Data::from_descriptors(ell, &ds)
    }

    pub fn genus(&self) -> Result<i64> {
        swap_point_genus(self.ell, &self.r_points, &self.s_points, self.g_y1)
    }
}
