//! Exhaustive search for product-1 tuples with prescribed cycle types at
//! small degree, plus a seeded sampler used to build tuples at larger degree.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permcore::{product, CycleType, GroupHandle, Perm};

/// Default degree cap for exhaustive search.
pub const DEFAULT_DEGREE_CAP: usize = 12;

/// Largest conjugacy class the exhaustive search will materialize.
pub const CLASS_SIZE_CAP: usize = 4_000_000;

/// A search for tuples `x_1 .. x_r` with `x_i` in the class `classes[i]` and
/// `x_1 ... x_r = 1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchQuery {
    pub degree: usize,
    pub classes: Vec<CycleType>,
    #[serde(default)]
    pub require_transitive: bool,
    #[serde(default)]
    pub require_primitive: bool,
    /// Keep only tuples generating a group of this order (decimal string).
    #[serde(default)]
    pub group_order: Option<String>,
    /// Stop after this many accepted tuples.
    #[serde(default)]
    pub limit: Option<usize>,
    #[serde(default = "default_cap")]
    pub degree_cap: usize,
}

fn default_cap() -> usize {
    DEFAULT_DEGREE_CAP
}

impl SearchQuery {
    pub fn new(degree: usize, classes: Vec<CycleType>) -> SearchQuery {
        SearchQuery {
            degree,
            classes,
            require_transitive: false,
            require_primitive: false,
            group_order: None,
            limit: None,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }

    pub fn transitive(mut self) -> Self {
        self.require_transitive = true;
        self
    }

    pub fn primitive(mut self) -> Self {
        self.require_transitive = true;
        self.require_primitive = true;
        self
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    /// Parses `"[6];[3,3];[2,1^4]"`; partitions short of the degree are
    /// padded with fixed points.
    pub fn parse_classes(degree: usize, text: &str) -> Result<Vec<CycleType>> {
        text.split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                let ct = CycleType::parse(s.trim())?;
                if ct.degree() > degree {
                    return Err(Error::InvalidInput(format!("{ct} exceeds degree {degree}")));
                }
                let mut parts = ct.parts().to_vec();
                parts.extend(std::iter::repeat_n(1, degree - ct.degree()));
                CycleType::new(parts)
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.degree > self.degree_cap {
            return Err(Error::CapExceeded(format!(
                "degree {} exceeds the search cap {}",
                self.degree, self.degree_cap
            )));
        }
        if self.classes.len() < 2 {
            return Err(Error::InvalidInput(
                "a search needs at least two classes".into(),
            ));
        }
        for c in &self.classes {
            if c.degree() != self.degree {
                return Err(Error::DegreeMismatch(self.degree, c.degree()));
            }
        }
        if !parity_feasible(&self.classes) {
            return Err(Error::Infeasible(
                "the product of the class signs is -1, so no product-1 tuple exists".into(),
            ));
        }
        Ok(())
    }
}

/// Whether the signs of the classes multiply to `+1`, a necessary condition
/// for a product-1 tuple.
pub fn parity_feasible(classes: &[CycleType]) -> bool {
    classes.iter().map(|c| c.sign()).product::<i32>() == 1
}

/// All permutations of a cycle type, sorted by image sequence.
pub fn class_members(ct: &CycleType) -> Result<Vec<Perm>> {
    let size = ct.class_size();
    if size > BigUint::from(CLASS_SIZE_CAP) {
        return Err(Error::CapExceeded(format!(
            "class {ct} has {size} members, above the cap {CLASS_SIZE_CAP}"
        )));
    }
    let n = ct.degree();
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut remaining: Vec<(usize, usize)> = ct.powers();
    fill_cycles(n, &mut images, &mut used, &mut remaining, &mut out);
    out.sort();
    Ok(out)
}

/// Builds cycles greedily from the smallest unused point; each cycle length
/// is drawn from the remaining multiset.
fn fill_cycles(
    n: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    remaining: &mut Vec<(usize, usize)>,
    out: &mut Vec<Perm>,
) {
    let start = match (0..n).find(|&i| !used[i]) {
        None => {
            out.push(Perm::from_images(images.clone()).expect("bijection by construction"));
            return;
        }
        Some(s) => s,
    };
    for idx in 0..remaining.len() {
        let (len, mult) = remaining[idx];
        if mult == 0 {
            continue;
        }
        remaining[idx].1 -= 1;
        used[start] = true;
        let mut cycle = vec![start];
        extend_cycle(n, len, images, used, remaining, out, &mut cycle);
        used[start] = false;
        remaining[idx].1 += 1;
    }
}

fn extend_cycle(
    n: usize,
    len: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    remaining: &mut Vec<(usize, usize)>,
    out: &mut Vec<Perm>,
    cycle: &mut Vec<usize>,
) {
    if cycle.len() == len {
        for k in 0..len {
            images[cycle[k]] = cycle[(k + 1) % len];
        }
        fill_cycles(n, images, used, remaining, out);
        for &c in cycle.iter() {
            images[c] = c;
        }
        return;
    }
    for p in 0..n {
        if !used[p] {
            used[p] = true;
            cycle.push(p);
            extend_cycle(n, len, images, used, remaining, out, cycle);
            cycle.pop();
            used[p] = false;
        }
    }
}

/// Outcome of an exhaustive search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchResult {
    pub tuples: Vec<Vec<Perm>>,
    /// Number of candidate tuples whose last entry was tested.
    pub nodes: u64,
    /// Candidate tuples with matching cycle types, before group filters.
    pub type_matches: u64,
    /// Whether the whole space was enumerated (no limit was hit).
    pub exhausted: bool,
}

struct Filters {
    transitive: bool,
    primitive: bool,
    order: Option<BigUint>,
}

impl Filters {
    fn accept(&self, n: usize, tuple: &[Perm]) -> bool {
        if !self.transitive && !self.primitive && self.order.is_none() {
            return true;
        }
        let g = GroupHandle::new(n, tuple.to_vec()).expect("degrees agree");
        if (self.transitive || self.primitive) && !g.is_transitive() {
            return false;
        }
        if self.primitive && n >= 2 && !g.is_primitive().unwrap_or(false) {
            return false;
        }
        if let Some(o) = &self.order {
            if &g.order() != o {
                return false;
            }
        }
        true
    }
}

/// Enumerates product-1 tuples. `x_1` is the canonical representative of
/// `classes[0]`; `x_2 .. x_{r-1}` run over their classes in lexicographic
/// order and `x_r` is forced. Top-level branches run in parallel and are
/// merged in branch order, so the output is deterministic.
pub fn find_tuples(q: &SearchQuery) -> Result<SearchResult> {
    q.validate()?;
    let x1 = q.classes[0].canonical_perm();
    find_tuples_with_first(q, &x1)
}

/// As [`find_tuples`] with a caller-chosen first entry.
pub fn find_tuples_with_first(q: &SearchQuery, x1: &Perm) -> Result<SearchResult> {
    q.validate()?;
    if x1.cycle_type() != q.classes[0] {
        return Err(Error::InvalidInput(
            "first entry is not in the first class".into(),
        ));
    }
    let n = q.degree;
    let r = q.classes.len();
    let filters = Filters {
        transitive: q.require_transitive,
        primitive: q.require_primitive,
        order: match &q.group_order {
            None => None,
            Some(s) => Some(
                s.parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("bad group order {s:?}")))?,
            ),
        },
    };
    let members: Vec<Vec<Perm>> = q.classes[1..r - 1]
        .iter()
        .map(class_members)
        .collect::<Result<_>>()?;
    let last = &q.classes[r - 1];

    if r == 2 {
        let x2 = x1.inverse();
        let ok = &x2.cycle_type() == last && filters.accept(n, &[x1.clone(), x2.clone()]);
        return Ok(SearchResult {
            tuples: if ok {
                vec![vec![x1.clone(), x2]]
            } else {
                vec![]
            },
            nodes: 1,
            type_matches: u64::from(&x1.inverse().cycle_type() == last),
            exhausted: true,
        });
    }

    let branch = |x2: &Perm| -> (Vec<Vec<Perm>>, u64, u64) {
        let mut found = Vec::new();
        let mut nodes = 0u64;
        let mut matches = 0u64;
        let mut prefix = vec![x1.clone(), x2.clone()];
        let p = x1.then(x2);
        recurse(
            n,
            &members,
            1,
            &p,
            last,
            &filters,
            &mut prefix,
            &mut found,
            &mut nodes,
            &mut matches,
            q.limit,
        );
        (found, nodes, matches)
    };
    let results: Vec<(Vec<Vec<Perm>>, u64, u64)> = members[0].par_iter().map(branch).collect();
    let mut tuples = Vec::new();
    let mut nodes = 0;
    let mut type_matches = 0;
    let mut exhausted = true;
    for (found, nd, tm) in results {
        nodes += nd;
        type_matches += tm;
        for t in found {
            if let Some(l) = q.limit {
                if tuples.len() >= l {
                    exhausted = false;
                    break;
                }
            }
            tuples.push(t);
        }
    }
    Ok(SearchResult {
        tuples,
        nodes,
        type_matches,
        exhausted,
    })
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    n: usize,
    members: &[Vec<Perm>],
    depth: usize,
    prefix_product: &Perm,
    last: &CycleType,
    filters: &Filters,
    prefix: &mut Vec<Perm>,
    found: &mut Vec<Vec<Perm>>,
    nodes: &mut u64,
    matches: &mut u64,
    limit: Option<usize>,
) {
    if let Some(l) = limit {
        if found.len() >= l {
            return;
        }
    }
    if depth == members.len() {
        *nodes += 1;
        let xr = prefix_product.inverse();
        if &xr.cycle_type() == last {
            *matches += 1;
            prefix.push(xr);
            if filters.accept(n, prefix) {
                found.push(prefix.clone());
            }
            prefix.pop();
        }
        return;
    }
    for x in &members[depth] {
        let p = prefix_product.then(x);
        prefix.push(x.clone());
        recurse(
            n,
            members,
            depth + 1,
            &p,
            last,
            filters,
            prefix,
            found,
            nodes,
            matches,
            limit,
        );
        prefix.pop();
    }
}

/// Existence of a tuple generating a primitive group, with the search
/// statistics as evidence when none exists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExistenceResult {
    pub exists: bool,
    pub witness: Option<Vec<Perm>>,
    pub nodes: u64,
    pub type_matches: u64,
    pub transitive_tuples: u64,
}

pub fn exists_primitive_tuple(q: &SearchQuery) -> Result<ExistenceResult> {
    let mut tq = q.clone();
    tq.require_transitive = true;
    tq.require_primitive = false;
    tq.limit = None;
    let res = find_tuples(&tq)?;
    let n = q.degree;
    let witness = res
        .tuples
        .iter()
        .find(|t| {
            GroupHandle::new(n, t.to_vec())
                .and_then(|g| g.is_primitive())
                .unwrap_or(false)
        })
        .cloned();
    Ok(ExistenceResult {
        exists: witness.is_some(),
        witness,
        nodes: res.nodes,
        type_matches: res.type_matches,
        transitive_tuples: res.tuples.len() as u64,
    })
}

/// Canonical form of a tuple generating a transitive group under
/// simultaneous conjugation: the lexicographically least relabeling obtained
/// by breadth-first numbering from each start point.
pub fn canonical_form(tuple: &[Perm]) -> Vec<Vec<usize>> {
    let n = tuple[0].degree();
    let mut best: Option<Vec<Vec<usize>>> = None;
    for start in 0..n {
        let mut label = vec![usize::MAX; n];
        let mut order = vec![start];
        label[start] = 0;
        let mut idx = 0;
        while idx < order.len() {
            let p = order[idx];
            for g in tuple {
                let q = g.apply(p);
                if label[q] == usize::MAX {
                    label[q] = order.len();
                    order.push(q);
                }
            }
            idx += 1;
        }
        if order.len() < n {
            continue;
        }
        let form: Vec<Vec<usize>> = tuple
            .iter()
            .map(|g| order.iter().map(|&p| label[g.apply(p)]).collect())
            .collect();
        if best.as_ref().is_none_or(|b| &form < b) {
            best = Some(form);
        }
    }
    best.unwrap_or_default()
}

/// Number of simultaneous-conjugacy classes among transitive tuples.
pub fn count_up_to_conjugacy(tuples: &[Vec<Perm>]) -> usize {
    let set: std::collections::BTreeSet<Vec<Vec<usize>>> =
        tuples.iter().map(|t| canonical_form(t)).collect();
    set.len()
}

/// A uniformly random permutation of degree `n`.
pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Perm {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Perm::from_images(v).expect("shuffle is a bijection")
}

/// A uniformly random member of a conjugacy class.
pub fn random_class_member<R: Rng>(ct: &CycleType, rng: &mut R) -> Perm {
    let y = random_perm(ct.degree(), rng);
    ct.canonical_perm().conj(&y)
}

/// A random involution `i` with `i q i = q^-1`, built by reflecting cycles
/// of `q` or pairing cycles of equal length.
pub fn random_inverting_involution<R: Rng>(q: &Perm, rng: &mut R) -> Perm {
    let n = q.degree();
    let mut cycles = q.all_cycles();
    cycles.shuffle(rng);
    let mut images: Vec<usize> = (0..n).collect();
    let mut done = vec![false; cycles.len()];
    for i in 0..cycles.len() {
        if done[i] {
            continue;
        }
        done[i] = true;
        let c = &cycles[i];
        let k = c.len();
        let m = rng.gen_range(0..k);
        let partner = if rng.gen_bool(0.5) {
            (i + 1..cycles.len()).find(|&j| !done[j] && cycles[j].len() == k)
        } else {
            None
        };
        match partner {
            Some(j) => {
                done[j] = true;
                let d = &cycles[j];
                for jj in 0..k {
                    let tgt = (m + k - jj) % k;
                    images[c[jj]] = d[tgt];
                    images[d[tgt]] = c[jj];
                }
            }
            None => {
                for jj in 0..k {
                    images[c[jj]] = c[(m + k - jj) % k];
                }
            }
        }
    }
    let inv = Perm::from_images(images).expect("involution by construction");
    debug_assert!(inv.then(&inv).is_identity());
    debug_assert_eq!(q.conj(&inv), q.inverse());
    inv
}

/// Draws a product-1 tuple in the given classes: every entry except
/// `classes[forced]` is a random class member and the forced entry is
/// solved from the relation. Returns `None` if the forced entry falls in
/// the wrong class.
pub fn sample_forced<R: Rng>(
    classes: &[CycleType],
    forced: usize,
    rng: &mut R,
) -> Option<Vec<Perm>> {
    let r = classes.len();
    let n = classes[0].degree();
    let mut xs: Vec<Perm> = classes
        .iter()
        .map(|c| random_class_member(c, rng))
        .collect();
    // x_f = (x_{f+1} .. x_r x_1 .. x_{f-1})^-1
    let mut rest = Perm::identity(n);
    for k in 1..r {
        rest = rest.then(&xs[(forced + k) % r]);
    }
    let xf = rest.inverse();
    if xf.cycle_type() != classes[forced] {
        return None;
    }
    xs[forced] = xf;
    debug_assert!(product(n, &xs).is_identity());
    Some(xs)
}

/// Draws a product-1 tuple whose last two classes are involution classes:
/// the prefix is random and the last two entries are `i` and `i q` for a
/// random involution `i` inverting `q = (prefix)^-1`.
pub fn sample_dihedral<R: Rng>(classes: &[CycleType], rng: &mut R) -> Option<Vec<Perm>> {
    let r = classes.len();
    if r < 3 {
        return None;
    }
    let n = classes[0].degree();
    let mut xs: Vec<Perm> = classes[..r - 2]
        .iter()
        .map(|c| random_class_member(c, rng))
        .collect();
    let q = product(n, &xs).inverse();
    let i = random_inverting_involution(&q, rng);
    let j = i.then(&q);
    if i.cycle_type() != classes[r - 2] || j.cycle_type() != classes[r - 1] {
        return None;
    }
    xs.push(i);
    xs.push(j);
    debug_assert!(product(n, &xs).is_identity());
    Some(xs)
}

/// Index of the class most likely to be hit when solved from the relation:
/// the one with the largest class size.
pub fn best_forced_index(classes: &[CycleType]) -> usize {
    let mut best = 0;
    for (i, c) in classes.iter().enumerate() {
        if c.class_size() > classes[best].class_size() {
            best = i;
        }
    }
    best
}

/// Backtracking state for [`factor_in_classes`]: `w` is built cycle by
/// cycle in its prescribed type while `z = w q` is tracked as a partial
/// injection whose closed cycles must fit the second type.
#[derive(Clone)]
struct FactorState {
    w: Vec<usize>,
    visited: Vec<bool>,
    need_w: Vec<usize>,
    need_z: Vec<usize>,
    // For each path of the partial z: head of the path ending at a tail,
    // tail of the path starting at a head, and the length keyed by head.
    head_of_tail: Vec<usize>,
    tail_of_head: Vec<usize>,
    len_of_head: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl FactorState {
    fn max_need(need: &[usize]) -> usize {
        need.iter().rposition(|&c| c > 0).unwrap_or(0)
    }

    /// Adds the z-edge `e -> f`; returns false if the z-type is violated.
    fn add_z_edge(&mut self, e: usize, f: usize) -> bool {
        let h1 = self.head_of_tail[e];
        let len1 = self.len_of_head[h1];
        if f == h1 {
            if self.need_z[len1] == 0 {
                return false;
            }
            self.need_z[len1] -= 1;
            return true;
        }
        let t2 = self.tail_of_head[f];
        let len = len1 + self.len_of_head[f];
        if len > Self::max_need(&self.need_z) {
            return false;
        }
        self.head_of_tail[t2] = h1;
        self.tail_of_head[h1] = t2;
        self.len_of_head[h1] = len;
        true
    }
}

/// Searches for `y` of type `ty` and `z` of type `tz` with `y * z = q`.
///
/// Candidates are produced in an order shuffled by `rng`; each is passed to
/// `accept`, and the first accepted pair is returned. The search stops after
/// `node_budget` nodes; `nodes` reports the nodes used.
pub fn factor_in_classes<R: Rng>(
    q: &Perm,
    ty: &CycleType,
    tz: &CycleType,
    rng: &mut R,
    node_budget: u64,
    nodes: &mut u64,
    accept: &mut dyn FnMut(&Perm, &Perm) -> bool,
) -> Option<(Perm, Perm)> {
    let n = q.degree();
    if ty.degree() != n || tz.degree() != n {
        return None;
    }
    let mut need_w = vec![0usize; n + 1];
    for &p in ty.parts() {
        need_w[p] += 1;
    }
    let mut need_z = vec![0usize; n + 1];
    for &p in tz.parts() {
        need_z[p] += 1;
    }
    let st = FactorState {
        w: vec![UNSET; n],
        visited: vec![false; n],
        need_w,
        need_z,
        head_of_tail: (0..n).collect(),
        tail_of_head: (0..n).collect(),
        len_of_head: vec![1; n],
    };
    let mut found = None;
    factor_rec(q, st, None, rng, node_budget, nodes, accept, &mut found);
    found
}

/// `open` is the cycle of `w` under construction: `(start, current, length)`.
#[allow(clippy::too_many_arguments)]
fn factor_rec<R: Rng>(
    q: &Perm,
    mut st: FactorState,
    open: Option<(usize, usize, usize)>,
    rng: &mut R,
    budget: u64,
    nodes: &mut u64,
    accept: &mut dyn FnMut(&Perm, &Perm) -> bool,
    found: &mut Option<(Perm, Perm)>,
) -> bool {
    if found.is_some() || *nodes >= budget {
        return true;
    }
    *nodes += 1;
    let n = q.degree();
    let (start, cur, len) = match open {
        Some(o) => o,
        None => match st.visited.iter().position(|&v| !v) {
            None => {
                let w = Perm::from_images_unchecked(st.w.clone());
                let y = w.inverse();
                let z = w.then(q);
                if accept(&y, &z) {
                    *found = Some((y, z));
                    return true;
                }
                return false;
            }
            Some(p) => {
                st.visited[p] = true;
                (p, p, 1)
            }
        },
    };
    // Choices for w(cur): close the cycle, or extend it to a fresh point.
    let mut choices: Vec<usize> = Vec::new();
    if st.need_w[len] > 0 {
        choices.push(start);
    }
    if len < FactorState::max_need(&st.need_w) {
        choices.extend((0..n).filter(|&v| !st.visited[v]));
    }
    choices.shuffle(rng);
    for v in choices {
        let mut next = st.clone();
        next.w[cur] = v;
        if !next.add_z_edge(cur, q.apply(v)) {
            continue;
        }
        let open_next = if v == start {
            next.need_w[len] -= 1;
            None
        } else {
            next.visited[v] = true;
            Some((start, v, len + 1))
        };
        if factor_rec(q, next, open_next, rng, budget, nodes, accept, found) {
            return true;
        }
    }
    false
}
