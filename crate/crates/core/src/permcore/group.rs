use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::chain::StabChain;
use super::perm::Perm;
use crate::error::{Error, Result};

/// A partition of the points into blocks of equal size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    /// Checks that every generator maps each block onto a block.
    pub fn is_respected_by(&self, gens: &[Perm]) -> bool {
        let n: usize = self.blocks.iter().map(|b| b.len()).sum();
        let mut which = vec![usize::MAX; n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                if x >= n || which[x] != usize::MAX {
                    return false;
                }
                which[x] = k;
            }
        }
        gens.iter().all(|g| {
            self.blocks.iter().all(|b| {
                let target = which[g.apply(b[0])];
                b.iter().all(|&x| which[g.apply(x)] == target)
            })
        })
    }
}

/// A permutation group given by generators, with a lazily built and
/// thread-safe stabilizer chain.
#[derive(Debug)]
pub struct GroupHandle {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl Clone for GroupHandle {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        GroupHandle {
            degree: self.degree,
            gens: self.gens.clone(),
            chain,
        }
    }
}

/// Union-find with path halving.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    /// Merges the classes of `a` and `b`; returns false if already merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

impl GroupHandle {
    /// Builds a handle from generators of a common degree. An empty list
    /// generates the trivial group of degree `degree`.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<GroupHandle> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(GroupHandle {
            degree,
            gens,
            chain: OnceLock::new(),
        })
    }

    /// Builds a handle from a nonempty generator list.
    pub fn from_gens(gens: Vec<Perm>) -> Result<GroupHandle> {
        let degree = gens
            .first()
            .ok_or_else(|| Error::InvalidInput("empty generator list".into()))?
            .degree();
        GroupHandle::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.gens, &[]))
    }

    /// Builds a fresh chain with a caller-chosen base prefix.
    pub fn chain_with_base(&self, base_prefix: &[usize]) -> StabChain {
        StabChain::new(self.degree, &self.gens, base_prefix)
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// All elements, by closure under the generators. Meant for small
    /// groups only.
    pub fn elements(&self) -> Vec<Perm> {
        let id = Perm::identity(self.degree);
        let mut seen = std::collections::HashSet::new();
        seen.insert(id.clone());
        let mut out = vec![id];
        let mut idx = 0;
        while idx < out.len() {
            let x = out[idx].clone();
            for g in &self.gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    out.push(y);
                }
            }
            idx += 1;
        }
        out
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    /// Orbits of the group on the points, each sorted, listed by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.gens {
            for i in 0..self.degree {
                uf.union(i, g.apply(i));
            }
        }
        uf.classes()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// Smallest block containing `0` and `beta`, as a full block system.
    pub fn minimal_block_system(&self, beta: usize) -> BlockSystem {
        let n = self.degree;
        let mut uf = UnionFind::new(n);
        let mut queue = vec![(0usize, beta)];
        uf.union(0, beta);
        while let Some((x, y)) = queue.pop() {
            for g in &self.gens {
                let (gx, gy) = (g.apply(x), g.apply(y));
                let (rx, ry) = (uf.find(gx), uf.find(gy));
                if rx != ry {
                    uf.union(rx, ry);
                    queue.push((rx, ry));
                }
            }
        }
        BlockSystem {
            blocks: uf.classes(),
        }
    }

    /// Primitivity test. Returns `Ok(None)` when primitive and a nontrivial
    /// block system otherwise.
    pub fn primitivity(&self) -> Result<Option<BlockSystem>> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        if self.degree < 2 {
            return Err(Error::Precondition(
                "primitivity needs degree at least 2".into(),
            ));
        }
        for beta in 1..self.degree {
            let bs = self.minimal_block_system(beta);
            if bs.blocks.len() > 1 {
                return Ok(Some(bs));
            }
        }
        Ok(None)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.primitivity()?.is_none())
    }

    /// Decides `A_n <= G` by exact order comparison.
    pub fn contains_alternating_by_order(&self) -> bool {
        let n = self.degree;
        if n <= 2 {
            return true;
        }
        if !self.is_transitive() {
            return false;
        }
        let mut half_fact = BigUint::from(1u32);
        for k in 3..=n {
            half_fact *= BigUint::from(k);
        }
        self.order() >= half_fact
    }

    /// Searches generator powers for an element that, together with
    /// primitivity, forces `A_n <= G` by Jordan's theorem: a `p`-cycle with
    /// `p` prime and `p < n - 2`, or a double transposition when `n >= 9`.
    pub fn jordan_certificate(&self) -> Option<Perm> {
        let n = self.degree;
        if n < 5 || !self.is_transitive() || !self.is_primitive().unwrap_or(false) {
            return None;
        }
        let mut candidates: Vec<Perm> = self.gens.clone();
        for i in 0..self.gens.len() {
            for j in 0..self.gens.len() {
                if i != j {
                    candidates.push(self.gens[i].then(&self.gens[j]));
                }
            }
        }
        for g in &candidates {
            let ct = g.cycle_type();
            let order = ct.lcm();
            for p in prime_factors(order) {
                let mut p_part = 1u128;
                while (order / p_part).is_multiple_of(p) {
                    p_part *= p;
                }
                let e = (order / p_part) * (p_part / p);
                let h = g.pow(e as i64);
                let t = h.cycle_type();
                let moved = h.moved_points().len();
                let p_us = p as usize;
                if moved == p_us && is_prime(p_us) && p_us + 2 < n {
                    return Some(h);
                }
                if p == 2 && moved == 4 && t.count(2) == 2 && n >= 9 {
                    return Some(h);
                }
            }
        }
        None
    }

    /// Decides `A_n <= G`, using the Jordan certificate as a fast path and
    /// the exact order otherwise.
    pub fn contains_alternating(&self) -> bool {
        if self.jordan_certificate().is_some() {
            return true;
        }
        self.contains_alternating_by_order()
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
