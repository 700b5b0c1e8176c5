//! Exact orbit counts behind the ramification of the map from the product
//! cover to its Galois quotient: `R = m #Orb(Delta^I) - #Orb(Delta^I x M)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permcore::{GroupHandle, Perm};
use crate::wreath::{rank, unrank, WreathElement};

/// Default bound on `|Delta|^t |M|` for the brute-force count.
pub const DEFAULT_ORBIT_CAP: usize = 20_000_000;

/// Model of the transitive set `M = G/K` on which `x` acts through its top.
#[derive(Clone, Debug)]
pub enum CosetModel {
    /// The regular set of the cyclic group generated by the top of `x`.
    Cyclic,
    /// The image of a full tuple in `S_I`, acting on itself by right
    /// multiplication.
    Image(Vec<Perm>),
}

impl CosetModel {
    /// The image model of a tuple: the group generated by the tops.
    pub fn of_tuple(xs: &[WreathElement]) -> Result<CosetModel> {
        let t = xs
            .first()
            .ok_or_else(|| Error::InvalidInput("empty tuple".into()))?
            .t();
        let tops: Vec<Perm> = xs.iter().map(|x| x.top.clone()).collect();
        Ok(CosetModel::Image(GroupHandle::new(t, tops)?.elements()))
    }
}

/// The two orbit counts and the resulting ramification value for one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RpiRecord {
    pub ell: usize,
    pub t: usize,
    /// `|M|`.
    pub m: usize,
    pub orbits_delta: usize,
    pub orbits_product: usize,
    pub rpi: i64,
}

/// Number of cycles of a permutation given by its image table, counted by
/// visiting every point once.
fn count_cycles(images: impl Fn(usize) -> usize, n: usize) -> usize {
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = images(p);
        }
    }
    cycles
}

/// Counts the orbits of `x` on `Delta^I` and on `Delta^I x M` by explicit
/// enumeration and returns `m #Orb(Delta^I) - #Orb(Delta^I x M)`.
pub fn rpi_bruteforce(x: &WreathElement, model: &CosetModel, cap: usize) -> Result<RpiRecord> {
    let (ell, t) = (x.ell(), x.t());
    let n = ell
        .checked_pow(t as u32)
        .ok_or_else(|| Error::CapExceeded("|Delta|^t overflows".into()))?;
    // Action of x on M, as an image table.
    let m_images: Vec<usize> = match model {
        CosetModel::Cyclic => {
            let m = x.top.order() as usize;
            (0..m).map(|k| (k + 1) % m).collect()
        }
        CosetModel::Image(elements) => {
            if elements.iter().any(|g| g.degree() != t) {
                return Err(Error::DegreeMismatch(t, elements[0].degree()));
            }
            if !elements.contains(&x.top) {
                return Err(Error::InvalidInput(
                    "the top of x is not in the coset model".into(),
                ));
            }
            elements
                .iter()
                .map(|g| {
                    let h = g.then(&x.top);
                    elements.iter().position(|e| *e == h).ok_or_else(|| {
                        Error::InvalidInput("coset model is not closed under the top of x".into())
                    })
                })
                .collect::<Result<Vec<usize>>>()?
        }
    };
    let m = m_images.len();
    if n.saturating_mul(m) > cap {
        return Err(Error::CapExceeded(format!(
            "|Delta|^t |M| = {n} * {m} exceeds {cap}"
        )));
    }
    let images: Vec<usize> = (0..n)
        .map(|i| rank(&x.act(&unrank(i, ell, t)).expect("point in range"), ell))
        .collect();
    let orbits_delta = count_cycles(|i| images[i], n);
    let orbits_product = count_cycles(|p| images[p / m] * m + m_images[p % m], n * m);
    Ok(RpiRecord {
        ell,
        t,
        m,
        orbits_delta,
        orbits_product,
        rpi: (m * orbits_delta) as i64 - orbits_product as i64,
    })
}

/// The closed form for a reduced swap `(a,1)s` with `t = 2`: the number of
/// odd-length cycles of `a`, fixed points included.
pub fn rpi_closed_form_t2(a: &Perm) -> usize {
    a.all_cycles().iter().filter(|c| c.len() % 2 == 1).count()
}
