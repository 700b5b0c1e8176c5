//! Elements of `S_l wr S_t` acting on `Delta^I` (with `|Delta| = l`,
//! `|I| = t`), their embedding into `S_{l^t}`, reduced forms, and the
//! conjugacy-class notation used for `t = 2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::permcore::{CycleType, Perm};

/// An element `a sigma` with base `a = (a(0), .., a(t-1))` and top `sigma`.
///
/// The action on a point `delta` of `Delta^I` moves the entry in coordinate
/// `j` through `a(j)` and then places it in coordinate `sigma(j)`; hence
/// `(a sigma)(b tau) = c (sigma tau)` with `c(j) = a(j) * b(sigma(j))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct WreathElement {
    pub base: Vec<Perm>,
    pub top: Perm,
}

impl WreathElement {
    /// Validates shapes: `t` base permutations of a common degree `l` and a
    /// top permutation of degree `t`.
    pub fn new(base: Vec<Perm>, top: Perm) -> Result<WreathElement> {
        if base.len() != top.degree() {
            return Err(Error::ShapeMismatch(format!(
                "{} base entries but top of degree {}",
                base.len(),
                top.degree()
            )));
        }
        if let Some(first) = base.first() {
            let ell = first.degree();
            if base.iter().any(|b| b.degree() != ell) {
                return Err(Error::ShapeMismatch(
                    "base entries of unequal degree".into(),
                ));
            }
        }
        Ok(WreathElement { base, top })
    }

    pub fn identity(ell: usize, t: usize) -> WreathElement {
        WreathElement {
            base: vec![Perm::identity(ell); t],
            top: Perm::identity(t),
        }
    }

    /// `(a, b)` with trivial top, for `t = 2`.
    pub fn pair(a: Perm, b: Perm) -> WreathElement {
        assert_eq!(a.degree(), b.degree(), "base degrees differ");
        WreathElement {
            base: vec![a, b],
            top: Perm::identity(2),
        }
    }

    /// `(a, b)s` where `s` swaps the two coordinates, for `t = 2`.
    pub fn swapped(a: Perm, b: Perm) -> WreathElement {
        assert_eq!(a.degree(), b.degree(), "base degrees differ");
        WreathElement {
            base: vec![a, b],
            top: Perm::from_images_unchecked(vec![1, 0]),
        }
    }

    /// The bare swap `s` for `t = 2`.
    pub fn s(ell: usize) -> WreathElement {
        WreathElement::swapped(Perm::identity(ell), Perm::identity(ell))
    }

    pub fn ell(&self) -> usize {
        self.base.first().map(|b| b.degree()).unwrap_or(0)
    }

    pub fn t(&self) -> usize {
        self.top.degree()
    }

    /// Whether the element lies in the base group `S_Delta^I`.
    pub fn is_base(&self) -> bool {
        self.top.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.top.is_identity() && self.base.iter().all(|b| b.is_identity())
    }

    fn check_shape(&self, other: &WreathElement) -> Result<()> {
        if self.ell() != other.ell() || self.t() != other.t() {
            return Err(Error::ShapeMismatch(format!(
                "(l,t) = ({},{}) vs ({},{})",
                self.ell(),
                self.t(),
                other.ell(),
                other.t()
            )));
        }
        Ok(())
    }

    /// Checked product `self * other` (apply `self` first).
    pub fn multiply(&self, other: &WreathElement) -> Result<WreathElement> {
        self.check_shape(other)?;
        Ok(self.then(other))
    }

    /// Unchecked product; panics on a shape mismatch.
    pub fn then(&self, other: &WreathElement) -> WreathElement {
        let t = self.t();
        assert_eq!(t, other.t(), "shape mismatch in wreath product");
        let base = (0..t)
            .map(|j| self.base[j].then(&other.base[self.top.apply(j)]))
            .collect();
        WreathElement {
            base,
            top: self.top.then(&other.top),
        }
    }

    pub fn inverse(&self) -> WreathElement {
        let t = self.t();
        let sinv = self.top.inverse();
        let base = (0..t).map(|i| self.base[sinv.apply(i)].inverse()).collect();
        WreathElement { base, top: sinv }
    }

    pub fn pow(&self, e: i64) -> WreathElement {
        let b = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = WreathElement::identity(self.ell(), self.t());
        let mut sq = b;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            k >>= 1;
        }
        acc
    }

    /// `self^z = z^-1 self z`.
    pub fn conj(&self, z: &WreathElement) -> WreathElement {
        z.inverse().then(self).then(z)
    }

    /// Image of a point of `Delta^I`, given as its `t` coordinates.
    pub fn act(&self, delta: &[usize]) -> Result<Vec<usize>> {
        if delta.len() != self.t() || delta.iter().any(|&d| d >= self.ell()) {
            return Err(Error::ShapeMismatch(format!(
                "point {delta:?} not in Delta^I for (l,t) = ({},{})",
                self.ell(),
                self.t()
            )));
        }
        Ok(self.act_unchecked(delta))
    }

    fn act_unchecked(&self, delta: &[usize]) -> Vec<usize> {
        let mut out = vec![0; delta.len()];
        for (j, &d) in delta.iter().enumerate() {
            out[self.top.apply(j)] = self.base[j].apply(d);
        }
        out
    }

    /// The permutation of `Delta^I` induced by this element, using the
    /// mixed-radix encoding of [`rank`] (coordinate 0 most significant).
    pub fn embed(&self) -> Perm {
        let (ell, t) = (self.ell(), self.t());
        let n = ell.pow(t as u32);
        let mut images = Vec::with_capacity(n);
        for idx in 0..n {
            let delta = unrank(idx, ell, t);
            images.push(rank(&self.act_unchecked(&delta), ell));
        }
        Perm::from_images_unchecked(images)
    }

    /// The permutation of the `t * l` points `(i, d) -> i * l + d` induced by
    /// the imprimitive action on `I x Delta`.
    pub fn imprimitive(&self) -> Perm {
        let (ell, t) = (self.ell(), self.t());
        let mut images = vec![0; ell * t];
        for j in 0..t {
            for d in 0..ell {
                images[j * ell + d] = self.top.apply(j) * ell + self.base[j].apply(d);
            }
        }
        Perm::from_images_unchecked(images)
    }

    /// Conjugates by a base element `z` chosen so that the result has trivial
    /// base outside one representative per top orbit. The entry at a
    /// representative `r` is `a(r) a(r^s) .. a(r^{s^{k-1}})`.
    ///
    /// `reps` selects the representatives; by default each orbit's smallest
    /// point is used. Returns `(y, z)` with `self^z = y`.
    pub fn reduced_form(&self, reps: Option<&[usize]>) -> Result<(WreathElement, WreathElement)> {
        let (ell, t) = (self.ell(), self.t());
        let orbits = self.top.all_cycles();
        let chosen: Vec<usize> = match reps {
            None => orbits.iter().map(|c| c[0]).collect(),
            Some(r) => {
                if r.len() != orbits.len() {
                    return Err(Error::InvalidInput(format!(
                        "{} representatives for {} top orbits",
                        r.len(),
                        orbits.len()
                    )));
                }
                let mut out = Vec::new();
                for c in &orbits {
                    let hits: Vec<usize> = r.iter().copied().filter(|x| c.contains(x)).collect();
                    if hits.len() != 1 {
                        return Err(Error::InvalidInput(format!(
                            "orbit {c:?} needs exactly one representative"
                        )));
                    }
                    out.push(hits[0]);
                }
                out
            }
        };
        let mut z = vec![Perm::identity(ell); t];
        let mut ybase = vec![Perm::identity(ell); t];
        for &rep in &chosen {
            let mut path = vec![rep];
            let mut x = self.top.apply(rep);
            while x != rep {
                path.push(x);
                x = self.top.apply(x);
            }
            // z(path[k]) = a(path[k]) .. a(path[L-1]), with z(rep) = 1.
            let mut acc = Perm::identity(ell);
            for k in (1..path.len()).rev() {
                acc = self.base[path[k]].then(&acc);
                z[path[k]] = acc.clone();
            }
            ybase[rep] = path
                .iter()
                .fold(Perm::identity(ell), |p, &i| p.then(&self.base[i]));
        }
        let zelt = WreathElement {
            base: z,
            top: Perm::identity(t),
        };
        let y = WreathElement {
            base: ybase,
            top: self.top.clone(),
        };
        debug_assert_eq!(self.conj(&zelt), y);
        Ok((y, zelt))
    }

    /// Text form `(b0,b1,..)sigma` with cycle notation; the top is omitted
    /// when trivial.
    pub fn to_text(&self) -> String {
        let b: Vec<String> = self.base.iter().map(|p| p.to_cycle_string()).collect();
        if self.top.is_identity() {
            format!("({})", b.join(","))
        } else {
            format!("({}){}", b.join(","), self.top.to_cycle_string())
        }
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Mixed-radix rank of a point of `Delta^I`, coordinate 0 most significant.
pub fn rank(delta: &[usize], ell: usize) -> usize {
    delta.iter().fold(0, |acc, &d| acc * ell + d)
}

/// Inverse of [`rank`].
pub fn unrank(mut idx: usize, ell: usize, t: usize) -> Vec<usize> {
    let mut out = vec![0; t];
    for j in (0..t).rev() {
        out[j] = idx % ell;
        idx /= ell;
    }
    out
}

/// Left-to-right product of wreath elements.
pub fn wreath_product(ell: usize, t: usize, xs: &[WreathElement]) -> WreathElement {
    xs.iter()
        .fold(WreathElement::identity(ell, t), |acc, x| acc.then(x))
}

/// The `S_l wr S_2` conjugacy class of an element: a pair of cycle types for
/// elements of the base group, or the cycle type of `a b` for `(a, b)s`.
///
/// Pairs are normalized so that the first partition is the larger one in the
/// lexicographic order of descending parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ClassDescriptor {
    Pair(CycleType, CycleType),
    Swap(CycleType),
}

impl ClassDescriptor {
    pub fn pair(a: CycleType, b: CycleType) -> ClassDescriptor {
        if a.parts() >= b.parts() {
            ClassDescriptor::Pair(a, b)
        } else {
            ClassDescriptor::Pair(b, a)
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            ClassDescriptor::Pair(a, _) => a.degree(),
            ClassDescriptor::Swap(a) => a.degree(),
        }
    }

    pub fn is_swap(&self) -> bool {
        matches!(self, ClassDescriptor::Swap(_))
    }

    /// Descriptor of a `t = 2` element.
    pub fn of(x: &WreathElement) -> Result<ClassDescriptor> {
        if x.t() != 2 {
            return Err(Error::ShapeMismatch(format!(
                "class descriptors need t = 2, got t = {}",
                x.t()
            )));
        }
        Ok(if x.top.is_identity() {
            ClassDescriptor::pair(x.base[0].cycle_type(), x.base[1].cycle_type())
        } else {
            ClassDescriptor::Swap(x.base[0].then(&x.base[1]).cycle_type())
        })
    }

    /// Canonical representative with cycles filled on consecutive points.
    pub fn representative(&self) -> WreathElement {
        match self {
            ClassDescriptor::Pair(a, b) => {
                WreathElement::pair(a.canonical_perm(), b.canonical_perm())
            }
            ClassDescriptor::Swap(a) => {
                WreathElement::swapped(a.canonical_perm(), Perm::identity(a.degree()))
            }
        }
    }

    /// Cycle type of the embedded element on `Delta^2`, computed from the
    /// partitions alone: a pair `(A, B)` gives one cycle of length
    /// `lcm(r, s)` for each of `gcd(r, s)` choices per pair of parts, and a
    /// swap `(A)s` gives, for each part `c` of `A`, one `2c`-cycle for each
    /// unordered pair of points of a `c`-cycle-type square; see
    /// [`swap_embedded_type`].
    pub fn embedded_type(&self) -> CycleType {
        match self {
            ClassDescriptor::Pair(a, b) => {
                let mut parts = Vec::new();
                for &r in a.parts() {
                    for &s in b.parts() {
                        let g = num_integer::gcd(r, s);
                        parts.extend(std::iter::repeat_n(r / g * s, g));
                    }
                }
                CycleType::from_parts_unchecked(parts)
            }
            ClassDescriptor::Swap(a) => swap_embedded_type(a),
        }
    }
}

/// Cycle type on `Delta^2` of `x = (u, 1)s` where `u` has type `a`.
///
/// `x^2 = (u, u)`, so `x` has the `(u, u)` cycles folded in pairs: a pair of
/// `u`-cycles of lengths `r, s` contributes `gcd(r, s)` orbits of `(u, u)`
/// of length `lcm(r, s)`, which `x` joins in pairs into cycles of length
/// `2 lcm`, except on the diagonal block of a single odd `r`-cycle, where one
/// orbit is mapped to itself and yields an `r`-cycle of `x`.
pub fn swap_embedded_type(a: &CycleType) -> CycleType {
    let parts_a = a.parts();
    let mut parts = Vec::new();
    for (i, &r) in parts_a.iter().enumerate() {
        // Diagonal block: the r^2 points of one cycle times itself.
        if r % 2 == 1 {
            parts.push(r);
            parts.extend(std::iter::repeat_n(2 * r, (r - 1) / 2));
        } else {
            parts.extend(std::iter::repeat_n(2 * r, r / 2));
        }
        for &s in &parts_a[i + 1..] {
            // Blocks (i, j) and (j, i) are swapped by x.
            let g = num_integer::gcd(r, s);
            parts.extend(std::iter::repeat_n(2 * (r / g * s), g));
        }
    }
    CycleType::from_parts_unchecked(parts)
}

fn parse_partition_padded(text: &str, ell: Option<usize>) -> Result<CycleType> {
    let t = text.trim();
    if t == "1" {
        return match ell {
            Some(l) => Ok(CycleType::trivial(l)),
            None => Err(Error::Parse("'1' needs a known degree".into())),
        };
    }
    let ct = CycleType::parse(t)?;
    match ell {
        Some(l) if ct.degree() < l => {
            let mut parts = ct.parts().to_vec();
            parts.extend(std::iter::repeat_n(1, l - ct.degree()));
            CycleType::new(parts)
        }
        Some(l) if ct.degree() > l => {
            Err(Error::Parse(format!("partition {t} exceeds degree {l}")))
        }
        _ => Ok(ct),
    }
}

impl ClassDescriptor {
    /// Parses `([9],[1^9])s`, `([2,1^7],1)`, `([2],1)s` or a bare `s`.
    /// With a known degree, partitions are padded with fixed points and `1`
    /// stands for the trivial partition.
    pub fn parse(text: &str, ell: Option<usize>) -> Result<ClassDescriptor> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "s" {
            let l = ell.ok_or_else(|| Error::Parse("bare 's' needs a known degree".into()))?;
            return Ok(ClassDescriptor::Swap(CycleType::trivial(l)));
        }
        let (body, swap) = match s.strip_suffix('s') {
            Some(b) => (b, true),
            None => (s.as_str(), false),
        };
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("descriptor must be parenthesized: {text:?}")))?;
        let split = split_top_level(inner);
        if split.len() != 2 {
            return Err(Error::Parse(format!(
                "descriptor needs two entries: {text:?}"
            )));
        }
        let a = parse_partition_padded(split[0], ell)?;
        let b = parse_partition_padded(split[1], ell.or(Some(a.degree())))?;
        if a.degree() != b.degree() {
            return Err(Error::Parse(format!(
                "partitions of unequal degree in {text:?}"
            )));
        }
        if swap {
            if !b.is_trivial() {
                return Err(Error::Parse(format!(
                    "swap descriptors carry a trivial second partition: {text:?}"
                )));
            }
            Ok(ClassDescriptor::Swap(a))
        } else {
            Ok(ClassDescriptor::pair(a, b))
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassDescriptor::Pair(a, b) => write!(f, "({a},{b})"),
            ClassDescriptor::Swap(a) => write!(f, "({a},[1^{}])s", a.degree()),
        }
    }
}

impl FromStr for ClassDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<ClassDescriptor> {
        ClassDescriptor::parse(s, None)
    }
}

impl Serialize for ClassDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ClassDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<ClassDescriptor, D::Error> {
        let s = String::deserialize(d)?;
        ClassDescriptor::parse(&s, None).map_err(serde::de::Error::custom)
    }
}

/// The tuple file format: `{"ell": L, "t": T, "elements": [{"base": [..],
/// "top": [..]}, ..]}` with permutations in 1-based one-line form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleFile {
    pub ell: usize,
    pub t: usize,
    pub elements: Vec<WreathElement>,
}

impl TupleFile {
    /// Wraps a tuple, taking the shape from its first entry.
    pub fn new(elements: Vec<WreathElement>) -> Result<TupleFile> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidInput("empty tuple".into()))?;
        let file = TupleFile {
            ell: first.ell(),
            t: first.t(),
            elements,
        };
        file.validate()?;
        Ok(file)
    }

    /// Checks that every entry has the declared shape.
    pub fn validate(&self) -> Result<()> {
        if self.elements.is_empty() {
            return Err(Error::InvalidInput("empty tuple".into()));
        }
        for (k, x) in self.elements.iter().enumerate() {
            WreathElement::new(x.base.clone(), x.top.clone())?;
            if x.t() != self.t || x.ell() != self.ell {
                return Err(Error::ShapeMismatch(format!(
                    "entry {} has shape (l,t) = ({},{}), file declares ({},{})",
                    k + 1,
                    x.ell(),
                    x.t(),
                    self.ell,
                    self.t
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<TupleFile> {
        let file: TupleFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("tuple file: {e}")))?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tuple file serializes")
    }
}
