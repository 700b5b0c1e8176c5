//! Reduced product-1 multisets: from a product-1 tuple in `S_l wr S_t` whose
//! image in `S_t` is a small genus 0 group, one element of `S_Delta` per
//! branch point and top orbit, each the orbit product of a reduced form,
//! together with an ordering in which they multiply to the identity.
//!
//! Branch indices split as `J1 = {1..s-2}`, `J2 = {s-1, s}` and
//! `J3 = {s+1..r}`, where the tops are trivial exactly on `J3`. A base
//! conjugation makes the `J1` entries reduced; the `t` coordinate equations
//! of the product relation are then merged one at a time into the equation
//! of the first coordinate, so that the `J2` terms of each top orbit become
//! adjacent and in orbit order.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monodromy::check_product_one;
use crate::permcore::{product, CycleType, GroupHandle, Perm};
use crate::ramify::{galois_genus, genus_from_tuple, riemann_hurwitz, GenusReport};
use crate::search::random_class_member;
use crate::tables::data;
use crate::wreath::{wreath_product, WreathElement};

/// Serde adapters writing points and indices 1-based.
mod one_based_index {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(*v as u64 + 1)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
        let v = usize::deserialize(d)?;
        v.checked_sub(1)
            .ok_or_else(|| serde::de::Error::custom("indices are 1-based"))
    }
}

mod one_based {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x + 1).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
        Vec::<usize>::deserialize(d)?
            .into_iter()
            .map(|x| {
                x.checked_sub(1)
                    .ok_or_else(|| serde::de::Error::custom("points are 1-based"))
            })
            .collect()
    }
}

mod one_based_pairs {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[(usize, usize)], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|(a, b)| (a + 1, b + 1))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(usize, usize)>, D::Error> {
        Vec::<(usize, usize)>::deserialize(d)?
            .into_iter()
            .map(|(a, b)| match (a.checked_sub(1), b.checked_sub(1)) {
                (Some(a), Some(b)) => Ok((a, b)),
                _ => Err(serde::de::Error::custom("indices are 1-based")),
            })
            .collect()
    }
}

/// Bound on the top tuples visited while searching for swap moves.
pub const NORMALIZE_NODE_BUDGET: usize = 200_000;

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

fn tops(xs: &[WreathElement]) -> Vec<Perm> {
    xs.iter().map(|x| x.top.clone()).collect()
}

fn group_order(t: usize, gens: &[Perm]) -> u64 {
    let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    if gens.is_empty() {
        return 1;
    }
    GroupHandle::new(t, gens)
        .expect("generators of one degree")
        .order()
        .try_into()
        .expect("image group order fits in u64")
}

/// The number `s` of nontrivial tops when the tops satisfy the normal form:
/// trivial exactly after position `s` with `s` in `{3, 4}`; for `s = 3` the
/// first top is a `t`-cycle, for `s = 4` the first two and the last two tops
/// each generate the whole image.
pub fn lgy_index(tops: &[Perm]) -> Option<usize> {
    let t = tops.first()?.degree();
    let s = tops.iter().take_while(|p| !p.is_identity()).count();
    if tops[s..].iter().any(|p| !p.is_identity()) {
        return None;
    }
    match s {
        3 => (tops[0].cycle_type() == CycleType::new(vec![t]).ok()?).then_some(3),
        4 => {
            let full = group_order(t, tops);
            (group_order(t, &tops[..2]) == full && group_order(t, &tops[2..4]) == full).then_some(4)
        }
        _ => None,
    }
}

/// Applies the swap move `(x_i, x_{i+1}) -> (x_{i+1}, x_i^{x_{i+1}})`.
pub fn swap_move(xs: &mut [WreathElement], i: usize) {
    let conj = xs[i].conj(&xs[i + 1]);
    xs[i] = xs[i + 1].clone();
    xs[i + 1] = conj;
}

fn swap_tops(xs: &mut [Perm], i: usize) {
    let conj = xs[i].conj(&xs[i + 1]);
    xs[i] = xs[i + 1].clone();
    xs[i + 1] = conj;
}

fn sorted_types(perms: &[Perm]) -> Vec<CycleType> {
    let mut v: Vec<CycleType> = perms
        .iter()
        .filter(|p| !p.is_identity())
        .map(|p| p.cycle_type())
        .collect();
    v.sort();
    v
}

/// Checks that the nontrivial tops have the ramification of a listed
/// genus at most 1 action of degree `t > 2`, and that some top has a power
/// acting as a transposition.
fn check_image_hypotheses(t: usize, tops: &[Perm]) -> Result<()> {
    if t <= 2 {
        return Err(Error::Precondition(format!("needs t > 2, got t = {t}")));
    }
    let types = sorted_types(tops);
    let listed = data().table2.iter().any(|row| {
        row.degree == t && {
            let mut cls: Vec<CycleType> = row
                .classes
                .iter()
                .map(|c| CycleType::parse(c).expect("table classes parse"))
                .collect();
            cls.sort();
            cls == types
        }
    });
    if !listed {
        let shown: Vec<String> = types.iter().map(|c| c.to_string()).collect();
        return Err(Error::Precondition(format!(
            "ramification {} of the action on I is not a listed genus at most 1 type",
            shown.join(" ")
        )));
    }
    let transposition = CycleType::new(
        std::iter::once(2)
            .chain(std::iter::repeat_n(1, t - 2))
            .collect(),
    )?;
    let has_transposition = tops
        .iter()
        .any(|p| (1..=p.order() as i64).any(|k| p.pow(k).cycle_type() == transposition));
    if !has_transposition {
        return Err(Error::Precondition(
            "no power of a top acts as a transposition on I".into(),
        ));
    }
    Ok(())
}

/// Brings a product-1 tuple into the normal form of [`lgy_index`] by swap
/// moves, which preserve the product, the classes and the generated group.
/// A tuple already in normal form is returned unchanged.
pub fn normalize_lgy(xs: &[WreathElement]) -> Result<Vec<WreathElement>> {
    let (_, t) = shape(xs)?;
    if !check_product_one(xs) {
        return Err(Error::NotProductOne);
    }
    let mut out = xs.to_vec();
    let top_tuple = tops(&out);
    check_image_hypotheses(t, &top_tuple)?;
    if lgy_index(&top_tuple).is_some() {
        return Ok(out);
    }
    // Move trivial tops to the end.
    let r = out.len();
    for end in (1..r).rev() {
        for i in 0..end {
            if out[i].top.is_identity() && !out[i + 1].top.is_identity() {
                swap_move(&mut out, i);
            }
        }
    }
    let s = out.iter().filter(|x| !x.top.is_identity()).count();
    // Breadth-first search over swap moves among the first s positions.
    let start = tops(&out[..s]);
    let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
    let mut queue: VecDeque<(Vec<Perm>, Vec<usize>)> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back((start, Vec::new()));
    let tail: Vec<Perm> = tops(&out[s..]);
    while let Some((state, moves)) = queue.pop_front() {
        let mut full = state.clone();
        full.extend(tail.iter().cloned());
        if lgy_index(&full).is_some() {
            for &i in &moves {
                swap_move(&mut out, i);
            }
            debug_assert!(check_product_one(&out));
            return Ok(out);
        }
        if seen.len() > NORMALIZE_NODE_BUDGET {
            break;
        }
        for i in 0..s.saturating_sub(1) {
            let mut next = state.clone();
            swap_tops(&mut next, i);
            if seen.insert(next.clone()) {
                let mut m = moves.clone();
                m.push(i);
                queue.push_back((next, m));
            }
        }
    }
    Err(Error::Precondition(
        "no sequence of swap moves reaches the normal form".into(),
    ))
}

/// One element of a reduced multiset: the orbit product at `orbit[0]` of a
/// reduced form of entry `branch` of the tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultisetEntry {
    /// Branch index `j`.
    #[serde(with = "one_based_index")]
    pub branch: usize,
    /// Name used in the certificate text: a letter per branch, indexed by
    /// the orbit's position when the top has several orbits.
    pub label: String,
    /// Points of the top orbit in orbit order, starting at the
    /// representative.
    #[serde(with = "one_based")]
    pub orbit: Vec<usize>,
    pub element: Perm,
}

/// Record of the choices made by the construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    /// Pairs `(j, i)` at which the conjugator was extended.
    #[serde(with = "one_based_pairs")]
    pub p: Vec<(usize, usize)>,
    /// Pairs `(k, nu)`: coordinate equation `nu` merged along branch `k`.
    #[serde(with = "one_based_pairs")]
    pub q: Vec<(usize, usize)>,
    /// Number of top orbits of the two `J2` entries.
    pub q_hat: usize,
}

/// A reduced product-1 multiset with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedMultiset {
    pub ell: usize,
    pub t: usize,
    pub s: usize,
    pub entries: Vec<MultisetEntry>,
    /// Ordered `(entry index, exponent)` pairs whose signed product is the
    /// identity; every entry occurs once. Entry indices are 0-based
    /// positions in `entries`.
    pub certificate: Vec<(usize, i8)>,
    /// Base conjugator `z` applied to the tuple before reading off entries.
    pub conjugator: Vec<Perm>,
    pub trace: ReductionTrace,
    /// Whether the entries generate a transitive group.
    pub transitive: bool,
}

impl ReducedMultiset {
    /// The certificate as text, such as `a*b1*c2*b2*c1`.
    pub fn certificate_text(&self) -> String {
        self.certificate
            .iter()
            .map(|&(k, e)| {
                let l = &self.entries[k].label;
                if e < 0 {
                    format!("{l}^-1")
                } else {
                    l.clone()
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// The entries in certificate order with exponents applied.
    pub fn ordered_elements(&self) -> Vec<Perm> {
        self.certificate
            .iter()
            .map(|&(k, e)| {
                let p = &self.entries[k].element;
                if e < 0 {
                    p.inverse()
                } else {
                    p.clone()
                }
            })
            .collect()
    }
}

fn branch_letter(j: usize) -> String {
    if j < 26 {
        ((b'a' + j as u8) as char).to_string()
    } else {
        format!("x{}_", j + 1)
    }
}

/// A run of consecutive terms `a_j(k)` of one branch in the merged equation.
struct Block {
    j: usize,
    points: Vec<usize>,
}

/// Builds the reduced multiset of a product-1 tuple whose tops are in the
/// normal form of [`lgy_index`], whose image has genus 0 on `I` and whose
/// Galois closure has genus at most 1.
pub fn reduced_multiset(xs: &[WreathElement]) -> Result<ReducedMultiset> {
    let (ell, t) = shape(xs)?;
    if !check_product_one(xs) {
        return Err(Error::NotProductOne);
    }
    let top_tuple = tops(xs);
    let s = lgy_index(&top_tuple).ok_or_else(|| {
        Error::Precondition("tops are not in normal form; run normalize_lgy first".into())
    })?;
    let g_bar = genus_from_tuple(&top_tuple)?.genus;
    if g_bar != 0 {
        return Err(Error::Precondition(format!(
            "the action on I has genus {g_bar}, not 0"
        )));
    }
    let image_order = group_order(t, &top_tuple);
    let indices: Vec<u64> = top_tuple[..s].iter().map(|p| p.order() as u64).collect();
    let g_y = galois_genus(image_order, &indices)?;
    if g_y > 1 {
        return Err(Error::Precondition(format!(
            "the Galois closure of the action on I has genus {g_y}"
        )));
    }
    let r = xs.len();
    let j1: Vec<usize> = (0..s - 2).collect();
    let j2 = [s - 2, s - 1];
    let mut trace = ReductionTrace::default();

    // Conjugator making the J1 entries reduced: z(i) = a_j(i) z(sigma_j(i)).
    let id = Perm::identity(ell);
    let mut z: Vec<Option<Perm>> = vec![None; t];
    z[0] = Some(id.clone());
    let mut defined = 1;
    while defined < t {
        let found = j1.iter().find_map(|&j| {
            (0..t)
                .find(|&i| z[i].is_none() && z[xs[j].top.apply(i)].is_some())
                .map(|i| (j, i))
        });
        let (j, i) = found.ok_or_else(|| {
            Error::Internal("the J1 tops do not generate a transitive group".into())
        })?;
        let zi = xs[j].base[i].then(z[xs[j].top.apply(i)].as_ref().unwrap());
        z[i] = Some(zi);
        trace.p.push((j, i));
        defined += 1;
    }
    let z: Vec<Perm> = z.into_iter().map(|p| p.unwrap()).collect();
    let zelt = WreathElement {
        base: z.clone(),
        top: Perm::identity(t),
    };
    let ys: Vec<WreathElement> = xs.iter().map(|x| x.conj(&zelt)).collect();

    // Representatives of the J1 entries: the points outside P, one per orbit.
    let mut j1_reps: Vec<Vec<usize>> = Vec::new();
    for &j in &j1 {
        let reps: Vec<usize> = (0..t).filter(|&i| !trace.p.contains(&(j, i))).collect();
        for c in ys[j].top.all_cycles() {
            if c.iter().filter(|i| reps.contains(i)).count() != 1 {
                return Err(Error::Internal(format!(
                    "orbit {c:?} of branch {} has no unique representative outside P",
                    j + 1
                )));
            }
        }
        if let Some(i) = (0..t).find(|i| !reps.contains(i) && !ys[j].base[*i].is_identity()) {
            return Err(Error::Internal(format!(
                "branch {} not reduced at coordinate {i}",
                j + 1
            )));
        }
        j1_reps.push(reps);
    }

    // pi[j] = sigma_1 .. sigma_j (left to right), so the term of branch j in
    // coordinate equation i is a_j(pi[j](i)).
    let mut pi = vec![Perm::identity(t)];
    for y in &ys {
        let next = pi.last().unwrap().then(&y.top);
        pi.push(next);
    }
    let pi_inv: Vec<Perm> = pi.iter().map(|p| p.inverse()).collect();
    let term = |j: usize, i: usize| pi[j].apply(i);
    let equation_of = |j: usize, k: usize| pi_inv[j].apply(k);
    // Coordinate equation i rotated to start after branch k.
    let rotated_rest = |i: usize, k: usize| -> Vec<(usize, usize)> {
        (k + 1..r).chain(0..k).map(|j| (j, term(j, i))).collect()
    };

    let mut word: Vec<Block> = (0..r)
        .map(|j| Block {
            j,
            points: vec![term(j, 0)],
        })
        .collect();
    let mut merged: BTreeSet<usize> = BTreeSet::from([0]);
    loop {
        let choice = merged.iter().find_map(|&mu| {
            j2.iter().find_map(|&k| {
                let p = term(k, mu);
                let orbit = ys[k]
                    .top
                    .all_cycles()
                    .into_iter()
                    .find(|c| c.contains(&p))?;
                orbit
                    .iter()
                    .any(|&q| !merged.contains(&equation_of(k, q)))
                    .then_some((mu, k, p))
            })
        });
        let Some((_, k, p)) = choice else { break };
        let pos = word
            .iter()
            .position(|b| b.j == k && b.points.contains(&p))
            .expect("every merged term is in the word");
        if word[pos].points.len() != 1 {
            return Err(Error::Internal(format!(
                "term of branch {} at {p} already extended",
                k + 1
            )));
        }
        let mut q = ys[k].top.apply(p);
        while q != p {
            let nu = equation_of(k, q);
            if merged.contains(&nu) {
                return Err(Error::Internal(format!(
                    "orbit of branch {} meets the merged equations twice",
                    k + 1
                )));
            }
            word[pos].points.push(q);
            let rest: Vec<Block> = rotated_rest(nu, k)
                .into_iter()
                .map(|(j, pt)| Block {
                    j,
                    points: vec![pt],
                })
                .collect();
            word.splice(pos + 1..pos + 1, rest);
            merged.insert(nu);
            trace.q.push((k, nu));
            q = ys[k].top.apply(q);
        }
    }
    if merged.len() != t || trace.q.len() != t - 1 {
        return Err(Error::Internal(format!(
            "merged {} of {t} coordinate equations with |Q| = {}",
            merged.len(),
            trace.q.len()
        )));
    }
    trace.q_hat = j2.iter().map(|&k| ys[k].top.all_cycles().len()).sum();
    if s == 4 && trace.q_hat != t + 1 {
        return Err(Error::Internal(format!(
            "the J2 tops have {} orbits, expected {}",
            trace.q_hat,
            t + 1
        )));
    }

    // Entries, by branch and then by the smallest point of the orbit.
    let mut entries: Vec<MultisetEntry> = Vec::new();
    let mut entry_of: Vec<Vec<Option<usize>>> = vec![vec![None; t]; r];
    for (j, y) in ys.iter().enumerate() {
        let cycles = y.top.all_cycles();
        for (n, c) in cycles.iter().enumerate() {
            let rep = if j < s - 2 {
                *c.iter().find(|i| j1_reps[j].contains(i)).unwrap()
            } else if j2.contains(&j) {
                let b = word
                    .iter()
                    .find(|b| b.j == j && c.contains(&b.points[0]))
                    .expect("every term is in the word");
                if b.points.len() != c.len() {
                    return Err(Error::Internal(format!(
                        "orbit {c:?} of branch {} is split in the merged equation",
                        j + 1
                    )));
                }
                b.points[0]
            } else {
                c[0]
            };
            let orbit = orbit_from(&y.top, rep);
            let element = orbit
                .iter()
                .fold(Perm::identity(ell), |acc, &i| acc.then(&y.base[i]));
            let label = if cycles.len() > 1 {
                format!("{}{}", branch_letter(j), n + 1)
            } else {
                branch_letter(j)
            };
            entry_of[j][rep] = Some(entries.len());
            entries.push(MultisetEntry {
                branch: j,
                label,
                orbit,
                element,
            });
        }
    }
    let mut certificate = Vec::new();
    for b in &word {
        match entry_of[b.j][b.points[0]] {
            Some(k) => certificate.push((k, 1i8)),
            None if j1.contains(&b.j) => {}
            None => {
                return Err(Error::Internal(format!(
                    "term of branch {} at {} starts no orbit",
                    b.j + 1,
                    b.points[0]
                )))
            }
        }
    }
    let mut out = ReducedMultiset {
        ell,
        t,
        s,
        entries,
        certificate,
        conjugator: z,
        trace,
        transitive: false,
    };
    if !product(ell, &out.ordered_elements()).is_identity() {
        return Err(Error::Internal(
            "certificate product is not the identity".into(),
        ));
    }
    out.transitive = generates_transitive(ell, &out.entries);
    Ok(out)
}

fn orbit_from(p: &Perm, rep: usize) -> Vec<usize> {
    let mut orbit = vec![rep];
    let mut q = p.apply(rep);
    while q != rep {
        orbit.push(q);
        q = p.apply(q);
    }
    orbit
}

fn generates_transitive(ell: usize, entries: &[MultisetEntry]) -> bool {
    let gens: Vec<Perm> = entries.iter().map(|e| e.element.clone()).collect();
    ell <= 1
        || GroupHandle::new(ell, gens)
            .map(|g| g.is_transitive())
            .unwrap_or(false)
}

/// Outcome of [`check_multiset`], one flag per requirement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultisetCheck {
    pub source_product_one: bool,
    /// Each branch's entries cover its top orbits exactly once.
    pub orbits_covered: bool,
    /// Each entry equals the orbit product of a reduced form.
    pub elements_match: bool,
    /// Each entry has the cycle type of the orbit product of the unconjugated
    /// source entry.
    pub types_match: bool,
    /// Every entry occurs once in the certificate.
    pub certificate_complete: bool,
    pub certificate_product_one: bool,
    pub transitive: bool,
}

impl MultisetCheck {
    pub fn passed(&self) -> bool {
        self.source_product_one
            && self.orbits_covered
            && self.elements_match
            && self.types_match
            && self.certificate_complete
            && self.certificate_product_one
            && self.transitive
    }
}

/// Re-derives every entry from a reduced form of the source tuple and checks
/// the certificate and transitivity.
pub fn check_multiset(m: &ReducedMultiset, source: &[WreathElement]) -> MultisetCheck {
    let mut c = MultisetCheck {
        source_product_one: check_product_one(source),
        orbits_covered: true,
        elements_match: true,
        types_match: true,
        certificate_complete: true,
        certificate_product_one: false,
        transitive: false,
    };
    let shape_ok = matches!(shape(source), Ok((ell, t)) if ell == m.ell && t == m.t)
        && m.conjugator.len() == m.t
        && m.conjugator.iter().all(|p| p.degree() == m.ell)
        && m.entries
            .iter()
            .all(|e| e.branch < source.len() && e.element.degree() == m.ell);
    if !shape_ok {
        return MultisetCheck {
            orbits_covered: false,
            elements_match: false,
            types_match: false,
            certificate_complete: false,
            ..c
        };
    }
    let z = WreathElement {
        base: m.conjugator.clone(),
        top: Perm::identity(m.t),
    };
    for (j, x) in source.iter().enumerate() {
        let mine: Vec<&MultisetEntry> = m.entries.iter().filter(|e| e.branch == j).collect();
        let mut covered: Vec<usize> = mine.iter().flat_map(|e| e.orbit.iter().copied()).collect();
        covered.sort_unstable();
        let orbits_ok = covered == (0..m.t).collect::<Vec<_>>()
            && mine
                .iter()
                .all(|e| !e.orbit.is_empty() && orbit_from(&x.top, e.orbit[0]) == e.orbit);
        if !orbits_ok {
            c.orbits_covered = false;
            c.elements_match = false;
            c.types_match = false;
            continue;
        }
        let reps: Vec<usize> = mine.iter().map(|e| e.orbit[0]).collect();
        match x.conj(&z).reduced_form(Some(&reps)) {
            Ok((y, _)) => {
                for e in &mine {
                    if y.base[e.orbit[0]] != e.element {
                        c.elements_match = false;
                    }
                }
            }
            Err(_) => c.elements_match = false,
        }
        for e in &mine {
            let direct = e
                .orbit
                .iter()
                .fold(Perm::identity(m.ell), |acc, &i| acc.then(&x.base[i]));
            if direct.cycle_type() != e.element.cycle_type() {
                c.types_match = false;
            }
        }
    }
    let mut uses = vec![0usize; m.entries.len()];
    for &(k, e) in &m.certificate {
        if k >= uses.len() || (e != 1 && e != -1) {
            c.certificate_complete = false;
            continue;
        }
        uses[k] += 1;
    }
    if uses.iter().any(|&u| u != 1) {
        c.certificate_complete = false;
    }
    if c.certificate_complete {
        c.certificate_product_one = product(m.ell, &m.ordered_elements()).is_identity();
    }
    c.transitive = generates_transitive(m.ell, &m.entries);
    c
}

/// Whether `m` is a valid reduced product-1 multiset for `source`.
pub fn verify_multiset(m: &ReducedMultiset, source: &[WreathElement]) -> bool {
    check_multiset(m, source).passed()
}

/// Riemann-Hurwitz data of the degree `l` cover whose branch cycles are the
/// entries of `m`, one branch point each, together with the inequality
/// `2l - 2 <= sum (l - #orbits)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatfReport {
    pub genus: GenusReport,
    pub index_sum: usize,
    pub bound_holds: bool,
}

/// Genus of the cover defined by the multiset in certificate order.
pub fn hatf_genus(m: &ReducedMultiset) -> Result<HatfReport> {
    let perms = m.ordered_elements();
    let genus = genus_from_tuple(&perms)?;
    let types: Vec<CycleType> = perms.iter().map(|p| p.cycle_type()).collect();
    let check = riemann_hurwitz(m.ell, &types)?;
    debug_assert_eq!(check, genus);
    let index_sum = genus.total_ramification;
    Ok(HatfReport {
        bound_holds: 2 * m.ell - 2 <= index_sum,
        genus,
        index_sum,
    })
}

/// The `t = 3` tuple `(a,1,1)r, (b1,b2,b3)s, (c1,c2,c3)rs` with
/// `r = (1,2,3)`, `s = (1,2)`, where the `c`'s are forced by the product
/// relation: `c1 = (a b2)^-1`, `c2 = b1^-1`, `c3 = b3^-1`. Its certificate
/// is `a*b1*c2*b2*c1` with `b1 = b2 b1`, `b2 = b3`, `c1 = c1` and
/// `c2 = c2 c3` in terms of the coordinates.
pub fn dihedral_example(a: &Perm, b: [&Perm; 3]) -> Result<Vec<WreathElement>> {
    let ell = a.degree();
    if b.iter().any(|p| p.degree() != ell) {
        return Err(Error::DegreeMismatch(ell, b[0].degree()));
    }
    let id = Perm::identity(ell);
    let r = Perm::from_cycles_1(3, &[vec![1, 2, 3]])?;
    let s = Perm::from_cycles_1(3, &[vec![1, 2]])?;
    let c = vec![a.then(b[1]).inverse(), b[0].inverse(), b[2].inverse()];
    let xs = vec![
        WreathElement::new(vec![a.clone(), id.clone(), id], r.clone())?,
        WreathElement::new(b.iter().map(|p| (*p).clone()).collect(), s.clone())?,
        WreathElement::new(c, r.then(&s))?,
    ];
    debug_assert!(check_product_one(&xs));
    Ok(xs)
}

/// Listed image types of degree `t` with three or four branch points that
/// admit the construction.
pub fn lgy_image_types(t: usize) -> Vec<Vec<CycleType>> {
    data()
        .table2
        .iter()
        .filter(|row| row.degree == t && t > 2)
        .map(|row| {
            row.classes
                .iter()
                .map(|c| CycleType::parse(c).expect("table classes parse"))
                .collect::<Vec<_>>()
        })
        .filter(|cls| cls.len() == 3 || cls.len() == 4)
        .collect()
}

/// A random product-1 tuple in `S_l wr S_t` whose tops are in normal form,
/// with `extra` further entries of trivial top. The image type is drawn
/// from [`lgy_image_types`]; base permutations are uniform except for the
/// last entry, which is forced by the product relation.
pub fn random_lgy_tuple<R: Rng>(
    ell: usize,
    t: usize,
    extra: usize,
    rng: &mut R,
) -> Result<Vec<WreathElement>> {
    let types = lgy_image_types(t);
    if types.is_empty() {
        return Err(Error::Infeasible(format!(
            "no listed image type of degree {t}"
        )));
    }
    let top_tuple = 'outer: loop {
        let cls = &types[rng.gen_range(0..types.len())];
        for _ in 0..1000 {
            let mut order: Vec<&CycleType> = cls.iter().collect();
            for i in (1..order.len()).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let mut ts: Vec<Perm> = order[..order.len() - 1]
                .iter()
                .map(|c| random_class_member(c, rng))
                .collect();
            let last = product(t, &ts).inverse();
            if last.cycle_type() != *order[order.len() - 1] {
                continue;
            }
            ts.push(last);
            ts.extend(std::iter::repeat_n(Perm::identity(t), extra));
            if lgy_index(&ts).is_some() && group_order(t, &ts) > 1 {
                let g =
                    GroupHandle::new(t, ts.iter().filter(|p| !p.is_identity()).cloned().collect())?;
                if g.is_transitive() {
                    break 'outer ts;
                }
            }
        }
    };
    let r = top_tuple.len();
    let mut xs: Vec<WreathElement> = top_tuple[..r - 1]
        .iter()
        .map(|top| WreathElement {
            base: (0..t)
                .map(|_| crate::search::random_perm(ell, rng))
                .collect(),
            top: top.clone(),
        })
        .collect();
    let last = wreath_product(ell, t, &xs).inverse();
    debug_assert_eq!(last.top, top_tuple[r - 1]);
    xs.push(last);
    Ok(xs)
}
