use std::collections::HashSet;

use num_bigint::BigUint;

use super::perm::Perm;

/// One level of a stabilizer chain: a base point, the strong generators that
/// fix all earlier base points, and a Schreier transversal of the basic orbit.
#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// Points of the basic orbit in discovery order.
    orbit: Vec<usize>,
    /// `trans[b]` maps the base point to `b`.
    trans: Vec<Option<Perm>>,
    trans_inv: Vec<Option<Perm>>,
    /// Schreier generators `(orbit point, generator index)` already sifted.
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(n: usize, base: usize) -> Level {
        let mut trans = vec![None; n];
        let mut trans_inv = vec![None; n];
        trans[base] = Some(Perm::identity(n));
        trans_inv[base] = Some(Perm::identity(n));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            trans,
            trans_inv,
            checked: HashSet::new(),
        }
    }

    /// Extends the orbit and transversal after generators were added.
    /// Existing transversal entries are never replaced, so sifted Schreier
    /// generators stay valid.
    fn extend_orbit(&mut self) {
        let mut idx = 0;
        while idx < self.orbit.len() {
            let b = self.orbit[idx];
            for g in &self.gens {
                let c = g.apply(b);
                if self.trans[c].is_none() {
                    let u = self.trans[b]
                        .as_ref()
                        .expect("orbit point has transversal")
                        .then(g);
                    self.trans_inv[c] = Some(u.inverse());
                    self.trans[c] = Some(u);
                    self.orbit.push(c);
                }
            }
            idx += 1;
        }
    }
}

/// A deterministic stabilizer chain built by the incremental Schreier-Sims
/// algorithm.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds a chain for the group generated by `gens`. Base points are the
    /// entries of `base_prefix` followed by first moved points as needed.
    pub fn new(degree: usize, gens: &[Perm], base_prefix: &[usize]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return chain;
        }
        for &b in base_prefix {
            if chain.levels.iter().all(|l| l.base != b) {
                chain.levels.push(Level::new(degree, b));
            }
        }
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.base) == l.base) {
                let b = g.first_moved().expect("nonidentity generator");
                chain.levels.push(Level::new(degree, b));
            }
        }
        for g in &gens {
            let first = chain
                .levels
                .iter()
                .position(|l| g.apply(l.base) != l.base)
                .expect("every generator moves some base point");
            chain.add_gen_from(0, g.clone(), first + 1);
        }
        chain.schreier_sims();
        chain
    }

    /// Adds `g` to the generator sets of levels `from..to` and refreshes orbits.
    fn add_gen_from(&mut self, from: usize, g: Perm, to: usize) {
        for l in from..to {
            self.levels[l].gens.push(g.clone());
            self.levels[l].extend_orbit();
        }
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.apply(level.base);
            match &level.trans_inv[b] {
                Some(inv) => g = g.then(inv),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    fn schreier_sims(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let mut oi = 0;
            while oi < self.levels[li].orbit.len() {
                let beta = self.levels[li].orbit[oi];
                let mut gi = 0;
                while gi < self.levels[li].gens.len() {
                    if self.levels[li].checked.contains(&(beta, gi)) {
                        gi += 1;
                        continue;
                    }
                    self.levels[li].checked.insert((beta, gi));
                    let level = &self.levels[li];
                    let s = &level.gens[gi];
                    let image = s.apply(beta);
                    let h = level.trans[beta]
                        .as_ref()
                        .expect("transversal")
                        .then(s)
                        .then(level.trans_inv[image].as_ref().expect("transversal"));
                    if !h.is_identity() {
                        let (res, stop) = self.sift(h, li + 1);
                        if !res.is_identity() {
                            let mut stop = stop;
                            if stop == self.levels.len() {
                                let b = res.first_moved().expect("nonidentity residue");
                                self.levels.push(Level::new(self.degree, b));
                                stop = self.levels.len() - 1;
                            }
                            self.add_gen_from(li + 1, res, stop + 1);
                            i = stop as isize;
                            continue 'outer;
                        }
                    }
                    gi += 1;
                }
                oi += 1;
            }
            i -= 1;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Group order as the product of basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit.len())
        })
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, _) = self.sift(g.clone(), 0);
        res.is_identity()
    }

    /// Strong generators of the whole group.
    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels
            .first()
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }
}
