//! Structure of a group `G <= S_l wr S_t` given by a tuple of generators:
//! the kernel `K` of the action on coordinates, its projections, product-type
//! criteria, and the identification of `G` among the four primitive groups
//! between `A_l^2` and `S_l wr S_2`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permcore::{factorial, GroupHandle, Perm, StabChain};
use crate::wreath::{wreath_product, WreathElement};

/// Whether the ordered product of the tuple is the identity.
pub fn check_product_one(xs: &[WreathElement]) -> bool {
    match xs.first() {
        None => true,
        Some(x0) => {
            let (ell, t) = (x0.ell(), x0.t());
            if xs.iter().any(|x| x.ell() != ell || x.t() != t) {
                return false;
            }
            wreath_product(ell, t, xs).is_identity()
        }
    }
}

fn shape(xs: &[WreathElement]) -> Result<(usize, usize)> {
    let x0 = xs
        .first()
        .ok_or_else(|| Error::InvalidInput("empty tuple".into()))?;
    let (ell, t) = (x0.ell(), x0.t());
    if xs.iter().any(|x| x.ell() != ell || x.t() != t) {
        return Err(Error::ShapeMismatch(
            "tuple entries of different shape".into(),
        ));
    }
    Ok((ell, t))
}

/// Generators of `K = G n S_Delta^I` by Schreier's lemma over the image of
/// `G` in `S_I`. Every returned element has trivial top.
pub fn kernel_k(xs: &[WreathElement]) -> Result<Vec<WreathElement>> {
    let (ell, t) = shape(xs)?;
    // Transversal: for each element h of the image, a word in G mapping to h.
    let mut reps: BTreeMap<Vec<usize>, WreathElement> = BTreeMap::new();
    let id = WreathElement::identity(ell, t);
    reps.insert(id.top.images().to_vec(), id.clone());
    let mut queue = vec![id];
    while let Some(u) = queue.pop() {
        for x in xs {
            let v = u.then(x);
            let key = v.top.images().to_vec();
            if let std::collections::btree_map::Entry::Vacant(e) = reps.entry(key) {
                e.insert(v.clone());
                queue.push(v);
            }
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for u in reps.values() {
        for x in xs {
            let ux = u.then(x);
            let w = &reps[ux.top.images()];
            let k = ux.then(&w.inverse());
            debug_assert!(k.top.is_identity());
            if !k.is_identity() && seen.insert(k.clone()) {
                out.push(k);
            }
        }
    }
    Ok(out)
}

/// The four primitive groups `A_l^2 <= G <= S_l wr S_2` with transitive
/// coordinate action, and a catch-all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupId {
    /// `A_l wr C_2`, of order `2 (l!/2)^2`.
    AwrS2,
    /// `S_l wr S_2`, of order `2 (l!)^2`.
    SwrS2,
    /// `(S_l # S_l) x| S_2`: pairs of equal sign, with the swap; order `(l!)^2`.
    SfibS2,
    /// `A_l^2 x| C_4`, of order `(l!)^2`.
    A2C4,
    #[serde(rename = "other")]
    Other,
}

impl GroupId {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupId::AwrS2 => "AwrS2",
            GroupId::SwrS2 => "SwrS2",
            GroupId::SfibS2 => "SfibS2",
            GroupId::A2C4 => "A2C4",
            GroupId::Other => "other",
        }
    }

    pub fn parse(s: &str) -> Result<GroupId> {
        Ok(match s {
            "AwrS2" => GroupId::AwrS2,
            "SwrS2" => GroupId::SwrS2,
            "SfibS2" => GroupId::SfibS2,
            "A2C4" => GroupId::A2C4,
            "other" => GroupId::Other,
            _ => return Err(Error::Parse(format!("unknown group id {s:?}"))),
        })
    }

    /// The order of the group at degree `l`; `None` for `Other`.
    pub fn order(&self, ell: usize) -> Option<BigUint> {
        let f = factorial(ell);
        let two = BigUint::from(2u32);
        match self {
            GroupId::AwrS2 => Some(&f * &f / &two),
            GroupId::SwrS2 => Some(&f * &f * &two),
            GroupId::SfibS2 | GroupId::A2C4 => Some(&f * &f),
            GroupId::Other => None,
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The image of an element of `S_l wr S_2` in `S_2 wr S_2 = (S_l wr S_2)/A_l^2`:
/// the signs of the two base entries (`true` for odd) and whether the top swaps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignFingerprint {
    pub odd0: bool,
    pub odd1: bool,
    pub swap: bool,
}

impl SignFingerprint {
    pub const IDENTITY: SignFingerprint = SignFingerprint {
        odd0: false,
        odd1: false,
        swap: false,
    };

    pub fn of(x: &WreathElement) -> Result<SignFingerprint> {
        if x.t() != 2 {
            return Err(Error::ShapeMismatch("sign fingerprints need t = 2".into()));
        }
        Ok(SignFingerprint {
            odd0: !x.base[0].is_even(),
            odd1: !x.base[1].is_even(),
            swap: !x.top.is_identity(),
        })
    }

    /// Product in `S_2 wr S_2`, with the same rule as the wreath product.
    pub fn then(&self, o: &SignFingerprint) -> SignFingerprint {
        let (f0, f1) = if self.swap {
            (o.odd1, o.odd0)
        } else {
            (o.odd0, o.odd1)
        };
        SignFingerprint {
            odd0: self.odd0 ^ f0,
            odd1: self.odd1 ^ f1,
            swap: self.swap ^ o.swap,
        }
    }

    /// Subgroup of `S_2 wr S_2` generated by the fingerprints.
    pub fn closure(gens: &[SignFingerprint]) -> BTreeSet<SignFingerprint> {
        let mut set = BTreeSet::new();
        set.insert(SignFingerprint::IDENTITY);
        let mut queue = vec![SignFingerprint::IDENTITY];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.then(g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Classifies a subgroup of `S_2 wr S_2` containing a swap.
    pub fn classify(sub: &BTreeSet<SignFingerprint>) -> GroupId {
        let has_swap = sub.iter().any(|f| f.swap);
        if !has_swap {
            return GroupId::Other;
        }
        match sub.len() {
            8 => GroupId::SwrS2,
            2 => GroupId::AwrS2,
            4 => {
                // An element of order 4 is a swap with unequal signs.
                if sub.iter().any(|f| f.swap && f.odd0 != f.odd1) {
                    GroupId::A2C4
                } else {
                    GroupId::SfibS2
                }
            }
            _ => GroupId::Other,
        }
    }
}

/// Product-type analysis of the group generated by a tuple.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductTypeReport {
    pub ell: usize,
    pub t: usize,
    pub transitive: bool,
    pub transitive_on_i: bool,
    pub image_order: String,
    pub k_generator_count: usize,
    pub k_order: String,
    pub group_order: String,
    pub projections_contain_alternating: Vec<bool>,
    pub k_contains_alternating_power: bool,
    /// Generic block test on `Delta^I`; `None` when intransitive.
    pub primitive: Option<bool>,
    /// Size of a nontrivial block when imprimitive.
    pub block_size: Option<usize>,
    /// Primitivity predicted by the criterion "transitive on `I` and
    /// `K >= A_Delta^I`", valid when the projections contain `A_Delta`.
    pub primitive_by_criterion: bool,
    /// Whether the criterion's hypotheses hold, so it must agree with the
    /// generic test.
    pub criterion_applies: bool,
    pub group_id: Option<GroupId>,
}

/// Cached structural data for one tuple.
pub struct Analysis {
    pub ell: usize,
    pub t: usize,
    pub elements: Vec<WreathElement>,
    pub image: GroupHandle,
    pub k_gens: Vec<WreathElement>,
    k_chain: StabChain,
}

impl Analysis {
    pub fn new(xs: &[WreathElement]) -> Result<Analysis> {
        let (ell, t) = shape(xs)?;
        let image = GroupHandle::new(t, xs.iter().map(|x| x.top.clone()).collect())?;
        let k_gens = kernel_k(xs)?;
        let k_perms: Vec<Perm> = k_gens.iter().map(|k| k.imprimitive()).collect();
        let k_chain = StabChain::new(ell * t, &k_perms, &[]);
        Ok(Analysis {
            ell,
            t,
            elements: xs.to_vec(),
            image,
            k_gens,
            k_chain,
        })
    }

    pub fn k_order(&self) -> BigUint {
        self.k_chain.order()
    }

    pub fn group_order(&self) -> BigUint {
        self.k_order() * self.image.order()
    }

    /// Whether the base element `k` lies in `K`.
    pub fn k_contains(&self, k: &WreathElement) -> bool {
        k.top.is_identity() && self.k_chain.contains(&k.imprimitive())
    }

    /// Projection of `K` to coordinate `i`.
    pub fn projection(&self, i: usize) -> Result<GroupHandle> {
        GroupHandle::new(
            self.ell,
            self.k_gens.iter().map(|k| k.base[i].clone()).collect(),
        )
    }

    /// `K >= A_Delta^I`, decided by membership of the generators
    /// `(1,2,j)`, `j >= 3`, of `A_l` placed in each coordinate.
    pub fn k_contains_alternating_power(&self) -> bool {
        if self.ell < 3 {
            return true;
        }
        for i in 0..self.t {
            for j in 2..self.ell {
                let c = Perm::cycle(self.ell, &[0, 1, j]).expect("valid 3-cycle");
                let mut base = vec![Perm::identity(self.ell); self.t];
                base[i] = c;
                let k = WreathElement {
                    base,
                    top: Perm::identity(self.t),
                };
                if !self.k_contains(&k) {
                    return false;
                }
            }
        }
        true
    }

    /// `K >= A_Delta^I` by order alone, valid for `t = 2` and `l >= 5`,
    /// where no proper subgroup of `A_l^2` has index at most 4.
    pub fn k_contains_alternating_power_by_order(&self) -> Option<bool> {
        if self.t != 2 || self.ell < 5 {
            return None;
        }
        let f = factorial(self.ell);
        Some(self.k_order() * BigUint::from(4u32) >= &f * &f)
    }

    pub fn embedded_group(&self) -> Result<GroupHandle> {
        GroupHandle::new(
            self.ell.pow(self.t as u32),
            self.elements.iter().map(|x| x.embed()).collect(),
        )
    }

    pub fn fingerprints(&self) -> Result<Vec<SignFingerprint>> {
        self.elements.iter().map(SignFingerprint::of).collect()
    }

    /// Identification for `t = 2`: the image in `S_2 wr S_2` decides among
    /// the four groups once `G` is primitive and contains `A_l^2`. The
    /// result is cross-checked against the group order.
    pub fn identify(&self, primitive: bool) -> Result<GroupId> {
        if self.t != 2 {
            return Err(Error::Precondition(
                "group identification needs t = 2".into(),
            ));
        }
        if !primitive || !self.k_contains_alternating_power() {
            return Ok(GroupId::Other);
        }
        let sub = SignFingerprint::closure(&self.fingerprints()?);
        let id = SignFingerprint::classify(&sub);
        if let Some(expected) = id.order(self.ell) {
            if expected != self.group_order() {
                return Err(Error::Internal(format!(
                    "fingerprint gives {id} but |G| = {}",
                    self.group_order()
                )));
            }
        }
        Ok(id)
    }

    pub fn report(&self) -> Result<ProductTypeReport> {
        let g = self.embedded_group()?;
        let transitive = g.is_transitive();
        let (primitive, block_size) = if transitive {
            match g.primitivity()? {
                None => (Some(true), None),
                Some(bs) => (Some(false), Some(bs.blocks[0].len())),
            }
        } else {
            (None, None)
        };
        let transitive_on_i = self.image.is_transitive();
        let projections: Vec<bool> = (0..self.t)
            .map(|i| self.projection(i).map(|p| p.contains_alternating()))
            .collect::<Result<_>>()?;
        let k_alt = self.k_contains_alternating_power();
        if let Some(by_order) = self.k_contains_alternating_power_by_order() {
            if by_order != k_alt {
                return Err(Error::Internal(
                    "membership and order tests for K >= A^2 disagree".into(),
                ));
            }
        }
        let criterion_applies = transitive && self.ell >= 5 && projections.iter().all(|&b| b);
        let primitive_by_criterion = transitive_on_i && k_alt;
        let group_id = if self.t == 2 {
            Some(self.identify(primitive == Some(true))?)
        } else {
            None
        };
        Ok(ProductTypeReport {
            ell: self.ell,
            t: self.t,
            transitive,
            transitive_on_i,
            image_order: self.image.order().to_string(),
            k_generator_count: self.k_gens.len(),
            k_order: self.k_order().to_string(),
            group_order: self.group_order().to_string(),
            projections_contain_alternating: projections,
            k_contains_alternating_power: k_alt,
            primitive,
            block_size,
            primitive_by_criterion,
            criterion_applies,
            group_id,
        })
    }
}

/// Product-type analysis of a tuple; requires `t >= 2` and `l >= 5`.
pub fn is_product_type(xs: &[WreathElement]) -> Result<ProductTypeReport> {
    let (ell, t) = shape(xs)?;
    if t < 2 || ell < 5 {
        return Err(Error::Precondition(format!(
            "product-type analysis needs t >= 2 and l >= 5, got t = {t}, l = {ell}"
        )));
    }
    Analysis::new(xs)?.report()
}

/// Group identification for `t = 2`; `Other` when `G` is not primitive or
/// does not contain `A_l^2`.
pub fn identify_group(xs: &[WreathElement]) -> Result<GroupId> {
    let a = Analysis::new(xs)?;
    let g = a.embedded_group()?;
    let primitive = g.is_transitive() && g.is_primitive()?;
    a.identify(primitive)
}
