//! Witnesses that the table 4 types have no primitive realization.
//!
//! Each witness is a permutation `t` with `K <= {(u, u^t)}` for the kernel
//! `K` of the tuple, so `K` lies in a conjugate diagonal and cannot contain
//! `A_l^2`. The tuple shapes are, with products read left to right:
//!
//! * `I1A.N1`: `(a,b), (c,d), (e^-1,e)s, s` with `e = a c` and `b d a c = 1`;
//!   the witness is an involution `z` with `z b z = a`, `z c z = d`.
//! * `I1A.N2`: `(b,a), (cd,1)s, (e,e^-1)s` with `e = b c d` and `a b c d = 1`;
//!   the witness is `v` with `v^2 = cd`, `v b v^-1 = a`, `v a v^-1 = cd b cd`.
//! * `F4.N1`, `F4.N2`: `s, (a^-1,a)s, (b,b^-1)s, (c^-1 v,c)s` with
//!   `c = b^-1 a^-1` and `[a,b] = v^-1`; the witness inverts `a` and `b`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monodromy::{check_product_one, Analysis};
use crate::permcore::{CycleType, Perm};
use crate::search::{random_class_member, random_perm};
use crate::wreath::{ClassDescriptor, WreathElement};

use super::instantiate_row;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// An involution `z` conjugating one coordinate onto the other.
    InvolutionZ,
    /// An element `v` with `v^2 = cd` conjugating one coordinate onto the
    /// other.
    VConjugator,
    /// An element inverting both generators of the coordinate group.
    InvertingZ,
}

/// A verified witness for one parameter draw.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub id: String,
    pub kind: WitnessKind,
    /// The witness permutation (`z` or `v`).
    pub element: Perm,
    /// `t` with `K <= {(u, u^t)}`: `z` itself, or `v^-1`.
    pub twist: Perm,
    /// Each relation checked, with its outcome.
    pub relations: Vec<(String, bool)>,
    pub tuple: Vec<WreathElement>,
    /// Every generator of `K` has the form `(u, u^t)`.
    pub k_in_conjugate_diagonal: bool,
    pub k_contains_alternating_square: bool,
}

impl Witness {
    /// All relations hold, `K` lies in the conjugate diagonal and so misses
    /// `A_l^2`.
    pub fn verified(&self) -> bool {
        self.relations.iter().all(|(_, ok)| *ok)
            && self.k_in_conjugate_diagonal
            && !self.k_contains_alternating_square
    }
}

fn transposition(n: usize, i: usize, j: usize) -> Perm {
    Perm::cycle(n, &[i, j]).expect("distinct points")
}

fn is_type(x: &Perm, parts: &[usize]) -> bool {
    let n = x.degree();
    let mut p = parts.to_vec();
    p.extend(std::iter::repeat_n(1, n - parts.iter().sum::<usize>()));
    x.cycle_type() == CycleType::new(p).expect("positive parts")
}

fn is_full_cycle(x: &Perm) -> bool {
    is_type(x, &[x.degree()])
}

fn is_transposition(x: &Perm) -> bool {
    is_type(x, &[2])
}

/// An involution `z` with `z b z = a` and `z c z = d`, given `a d b c = 1`
/// with `a`, `b` full cycles and `c`, `d` transpositions. Follows the
/// index-matching construction: list `b` as `(beta_1 .. beta_l)` from an
/// endpoint of `c`, list `a` as `(u_1 .. u_l)` from some start and set
/// `z(beta_k) = u_k`.
pub fn involution_z(a: &Perm, b: &Perm, c: &Perm, d: &Perm) -> Option<Perm> {
    let n = a.degree();
    let start_points = c.moved_points();
    let a_cycle = &a.all_cycles()[0];
    for &s in &start_points {
        let mut beta = Vec::with_capacity(n);
        let mut x = s;
        for _ in 0..n {
            beta.push(x);
            x = b.apply(x);
        }
        for rot in 0..n {
            let mut images = vec![0; n];
            for k in 0..n {
                images[beta[k]] = a_cycle[(rot + k) % n];
            }
            let z = Perm::from_images(images).ok()?;
            if z.then(&z).is_identity() && b.conj(&z) == *a && c.conj(&z) == *d {
                return Some(z);
            }
        }
    }
    None
}

/// All `z` with `a^z = a^-1` and `b^z = b^-1`. Since `z a = a^-1 z` as maps,
/// `z` is determined on each orbit of `<a, b>` by the image of one point, so
/// the search branches only once per orbit.
pub fn inverting_conjugator(a: &Perm, b: &Perm) -> Option<Perm> {
    let n = a.degree();
    let gens = [a.clone(), b.clone()];
    let invs = [a.inverse(), b.inverse()];
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        gens: &[Perm; 2],
        invs: &[Perm; 2],
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = images.len();
        let Some(x0) = (0..n).find(|&x| images[x] == usize::MAX) else {
            return true;
        };
        for y0 in 0..n {
            if used[y0] {
                continue;
            }
            let saved_images = images.clone();
            let saved_used = used.clone();
            images[x0] = y0;
            used[y0] = true;
            let mut queue = vec![x0];
            let mut ok = true;
            'outer: while let Some(x) = queue.pop() {
                // z(g(x)) = g^-1(z(x)) and z(g^-1(x)) = g(z(x))
                for (g, gi) in gens.iter().zip(invs) {
                    for (src, dst) in [
                        (g.apply(x), gi.apply(images[x])),
                        (gi.apply(x), g.apply(images[x])),
                    ] {
                        if images[src] == usize::MAX {
                            if used[dst] {
                                ok = false;
                                break 'outer;
                            }
                            images[src] = dst;
                            used[dst] = true;
                            queue.push(src);
                        } else if images[src] != dst {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok && rec(gens, invs, images, used) {
                return true;
            }
            *images = saved_images;
            *used = saved_used;
        }
        false
    }
    if rec(&gens, &invs, &mut images, &mut used) {
        Perm::from_images(images).ok()
    } else {
        None
    }
}

fn finish(
    id: &str,
    kind: WitnessKind,
    element: Perm,
    twist: Perm,
    relations: Vec<(String, bool)>,
    tuple: Vec<WreathElement>,
) -> Result<Witness> {
    let an = Analysis::new(&tuple)?;
    let k_in_conjugate_diagonal = an
        .k_gens
        .iter()
        .all(|k| k.base[1] == k.base[0].conj(&twist));
    Ok(Witness {
        id: id.to_string(),
        kind,
        element,
        twist,
        relations,
        k_contains_alternating_square: an.k_contains_alternating_power(),
        k_in_conjugate_diagonal,
        tuple,
    })
}

fn check_tuple_shape(id: &str, tuple: &[WreathElement]) -> Result<()> {
    let ell = tuple[0].ell();
    let inst = instantiate_row(id, ell, None)?;
    let mut got: Vec<ClassDescriptor> = tuple
        .iter()
        .map(ClassDescriptor::of)
        .collect::<Result<_>>()?;
    let mut want = inst.descriptors;
    got.sort_by_key(|d| d.to_string());
    want.sort_by_key(|d| d.to_string());
    if got != want {
        return Err(Error::Precondition(format!(
            "{id}: the parameters give classes {got:?}, expected {want:?}"
        )));
    }
    if !check_product_one(tuple) {
        return Err(Error::NotProductOne);
    }
    Ok(())
}

/// Builds and verifies the witness for a table 4 type from the tuple
/// parameters: `[a, b, c, d]` for `I1A.N1` and `I1A.N2`, `[a, b]` for
/// `F4.N1` and `F4.N2`.
pub fn nonexistence_witness(id: &str, params: &[Perm]) -> Result<Witness> {
    let n = params
        .first()
        .ok_or_else(|| Error::InvalidInput("no parameters".into()))?
        .degree();
    if params.iter().any(|p| p.degree() != n) {
        return Err(Error::InvalidInput(
            "parameters of different degrees".into(),
        ));
    }
    let one = Perm::identity(n);
    match id {
        "I1A.N1" => {
            let [a, b, c, d] = params else {
                return Err(Error::InvalidInput("I1A.N1 takes a, b, c, d".into()));
            };
            if !(is_full_cycle(a) && is_full_cycle(b) && is_transposition(c) && is_transposition(d))
            {
                return Err(Error::Precondition(
                    "I1A.N1 needs full cycles a, b and transpositions c, d".into(),
                ));
            }
            let e = a.then(c);
            let tuple = vec![
                WreathElement::pair(a.clone(), b.clone()),
                WreathElement::pair(c.clone(), d.clone()),
                WreathElement::swapped(e.inverse(), e.clone()),
                WreathElement::s(n),
            ];
            check_tuple_shape(id, &tuple)?;
            let z = involution_z(a, b, c, d)
                .ok_or_else(|| Error::NotFound("no index-matching involution".into()))?;
            let relations = vec![
                ("z^2 = 1".to_string(), z.then(&z).is_identity()),
                ("z b z = a".to_string(), b.conj(&z) == *a),
                ("z c z = d".to_string(), c.conj(&z) == *d),
                ("z e z = e^-1".to_string(), e.conj(&z) == e.inverse()),
            ];
            finish(id, WitnessKind::InvolutionZ, z.clone(), z, relations, tuple)
        }
        "I1A.N2" => {
            let [a, b, c, d] = params else {
                return Err(Error::InvalidInput("I1A.N2 takes a, b, c, d".into()));
            };
            let cd = c.then(d);
            if !(is_full_cycle(a)
                && is_full_cycle(b)
                && is_transposition(c)
                && is_transposition(d)
                && is_type(&cd, &[2, 2]))
            {
                return Err(Error::Precondition(
                    "I1A.N2 needs full cycles a, b and disjoint transpositions c, d".into(),
                ));
            }
            let e = b.then(&cd);
            let tuple = vec![
                WreathElement::pair(b.clone(), a.clone()),
                WreathElement::swapped(cd.clone(), one),
                WreathElement::swapped(e.clone(), e.inverse()),
            ];
            check_tuple_shape(id, &tuple)?;
            // a0 d b c = 1 with a0 = d a d, so the involution case applies.
            let a0 = a.conj(d);
            let z = involution_z(b, &a0, d, c)
                .or_else(|| involution_z(&a0, b, c, d))
                .ok_or_else(|| Error::NotFound("no index-matching involution".into()))?;
            let v = d.then(&z);
            let vi = v.inverse();
            let relations = vec![
                ("v^2 = cd".to_string(), v.then(&v) == cd),
                ("v b v^-1 = a".to_string(), v.then(b).then(&vi) == *a),
                (
                    "v a v^-1 = cd b cd".to_string(),
                    v.then(a).then(&vi) == cd.then(b).then(&cd),
                ),
            ];
            finish(id, WitnessKind::VConjugator, v, vi, relations, tuple)
        }
        "F4.N1" | "F4.N2" => {
            let [a, b] = params else {
                return Err(Error::InvalidInput(format!("{id} takes a, b")));
            };
            let comm = a.inverse().then(&b.inverse()).then(a).then(b);
            let v = comm.inverse();
            let c = b.inverse().then(&a.inverse());
            let tuple = vec![
                WreathElement::s(n),
                WreathElement::swapped(a.inverse(), a.clone()),
                WreathElement::swapped(b.clone(), b.inverse()),
                WreathElement::swapped(c.inverse().then(&v), c),
            ];
            check_tuple_shape(id, &tuple)?;
            let z = inverting_conjugator(a, b)
                .ok_or_else(|| Error::NotFound("no element inverts both a and b".into()))?;
            let relations = vec![
                ("a^z = a^-1".to_string(), a.conj(&z) == a.inverse()),
                ("b^z = b^-1".to_string(), b.conj(&z) == b.inverse()),
            ];
            finish(id, WitnessKind::InvertingZ, z.clone(), z, relations, tuple)
        }
        _ => Err(Error::UnknownRow(format!(
            "{id} has no witness construction"
        ))),
    }
}

fn random_full_cycle<R: Rng>(n: usize, rng: &mut R) -> Perm {
    random_class_member(&CycleType::new(vec![n]).expect("positive"), rng)
}

fn random_transposition<R: Rng>(n: usize, rng: &mut R) -> Perm {
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(rng);
    transposition(n, pts[0], pts[1])
}

/// A random conjugator `g` with `x^g = y`, uniform over all of them.
fn random_conjugator<R: Rng>(x: &Perm, y: &Perm, rng: &mut R) -> Option<Perm> {
    let n = x.degree();
    let mut xs = x.all_cycles();
    let mut ys = y.all_cycles();
    if x.cycle_type() != y.cycle_type() {
        return None;
    }
    xs.shuffle(rng);
    ys.shuffle(rng);
    let mut images = vec![0; n];
    let mut taken = vec![false; ys.len()];
    for cx in &xs {
        let j = (0..ys.len()).find(|&j| !taken[j] && ys[j].len() == cx.len())?;
        taken[j] = true;
        let rot = rng.gen_range(0..cx.len());
        for (k, &p) in cx.iter().enumerate() {
            images[p] = ys[j][(k + rot) % cx.len()];
        }
    }
    Perm::from_images(images).ok()
}

/// Random parameters satisfying the relations of a table 4 type at degree
/// `l`, in the format taken by [`nonexistence_witness`].
pub fn random_witness_params<R: Rng>(id: &str, ell: usize, rng: &mut R) -> Result<Vec<Perm>> {
    let n = ell;
    if n < 5 {
        return Err(Error::InvalidInput(format!("degree {n} is too small")));
    }
    match id {
        "I1A.N1" => {
            // b d a c = 1: a = d b^-1 c^-1, a full cycle when d joins the two
            // cycles of b^-1 c.
            let b = random_full_cycle(n, rng);
            let c = random_transposition(n, rng);
            let w = b.inverse().then(&c);
            let cycles = w.all_cycles();
            let (p, q) = (
                *cycles[0].choose(rng).expect("nonempty"),
                *cycles[1].choose(rng).expect("nonempty"),
            );
            let d = transposition(n, p, q);
            let a = d.then(&w);
            Ok(vec![a, b, c, d])
        }
        "I1A.N2" => loop {
            let b = random_full_cycle(n, rng);
            let c = random_transposition(n, rng);
            let w = b.then(&c);
            let cycles = w.all_cycles();
            let moved = c.moved_points();
            let pick = |cyc: &Vec<usize>, rng: &mut R| -> Option<usize> {
                let free: Vec<usize> = cyc.iter().copied().filter(|p| !moved.contains(p)).collect();
                free.choose(rng).copied()
            };
            let (Some(p), Some(q)) = (pick(&cycles[0], rng), pick(&cycles[1], rng)) else {
                continue;
            };
            let d = transposition(n, p, q);
            let a = b.then(&c).then(&d).inverse();
            if is_full_cycle(&a) {
                return Ok(vec![a, b, c, d]);
            }
        },
        "F4.N1" | "F4.N2" => {
            let v_type = if id == "F4.N1" { vec![2, 2] } else { vec![3] };
            let mut parts = v_type.clone();
            parts.extend(std::iter::repeat_n(1, n - v_type.iter().sum::<usize>()));
            let vt = CycleType::new(parts)?;
            loop {
                let v = random_class_member(&vt, rng);
                let a = random_perm(n, rng);
                let target = a.then(&v.inverse());
                // b^-1 a b = a v^-1 gives [a, b] = v^-1.
                if let Some(b) = random_conjugator(&a, &target, rng) {
                    return Ok(vec![a, b]);
                }
            }
        }
        _ => Err(Error::UnknownRow(format!(
            "{id} has no witness construction"
        ))),
    }
}

/// Exhaustive evidence for `F4.N3` at small degree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct F4N3Report {
    pub ell: usize,
    /// Tuples `s, (p2,p2^-1)s, (p3,p3^-1)s, (p4,p4^-1)s, (c,d)` with `c`, `d`
    /// transpositions, `p2` running over class representatives.
    pub tuples: u64,
    pub transitive: u64,
    pub primitive: u64,
    pub primitive_with_alternating_square: u64,
    pub nodes: u64,
    pub annotation: String,
}

/// Enumerates the `F4.N3` shape at degree `l`: `p2` over cycle-type
/// representatives (conjugation by the diagonal fixes the shape), `p3`, `p4`
/// over all of `S_l`.
pub fn f4n3_search(ell: usize) -> Result<F4N3Report> {
    if ell > 6 {
        return Err(Error::CapExceeded(format!(
            "F4.N3 enumeration is capped at l = 6, got {ell}"
        )));
    }
    let n = ell;
    let all: Vec<Perm> = crate::permcore::all_perms(n);
    let reps: Vec<Perm> = crate::permcore::partitions(n)
        .into_iter()
        .map(|p| CycleType::new(p).expect("partition").canonical_perm())
        .collect();
    let mut rep = F4N3Report {
        ell,
        tuples: 0,
        transitive: 0,
        primitive: 0,
        primitive_with_alternating_square: 0,
        nodes: 0,
        annotation: format!("exhaustive at l = {ell}; not exhaustive at l >= 9"),
    };
    for p2 in &reps {
        for p3 in &all {
            for p4 in &all {
                rep.nodes += 1;
                let tuple = vec![
                    WreathElement::s(n),
                    WreathElement::swapped(p2.clone(), p2.inverse()),
                    WreathElement::swapped(p3.clone(), p3.inverse()),
                    WreathElement::swapped(p4.clone(), p4.inverse()),
                ];
                let prod = tuple
                    .iter()
                    .skip(1)
                    .fold(tuple[0].clone(), |acc, x| acc.then(x));
                // The last entry is the inverse of the product so far.
                let last = prod.inverse();
                if !(is_transposition(&last.base[0]) && is_transposition(&last.base[1])) {
                    continue;
                }
                let mut full = tuple;
                full.push(last);
                rep.tuples += 1;
                let an = Analysis::new(&full)?;
                let g = an.embedded_group()?;
                if !g.is_transitive() {
                    continue;
                }
                rep.transitive += 1;
                if !g.is_primitive()? {
                    continue;
                }
                rep.primitive += 1;
                if an.k_contains_alternating_power() {
                    rep.primitive_with_alternating_square += 1;
                }
            }
        }
    }
    Ok(rep)
}
