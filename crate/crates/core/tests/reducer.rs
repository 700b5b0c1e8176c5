use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wreathcover::reducer::{
    check_multiset, dihedral_example, hatf_genus, lgy_index, normalize_lgy, random_lgy_tuple,
    reduced_multiset, swap_move, verify_multiset, MultisetEntry, ReducedMultiset, ReductionTrace,
};
use wreathcover::search::random_perm;
use wreathcover::{Perm, WreathElement};

fn tops_of(xs: &[WreathElement]) -> Vec<Perm> {
    xs.iter().map(|x| x.top.clone()).collect()
}

/// A product-1 tuple with the given tops: random bases, the last entry forced.
fn tuple_with_tops(
    ell: usize,
    t: usize,
    tops: &[&str],
    rng: &mut ChaCha8Rng,
) -> Vec<WreathElement> {
    let mut xs: Vec<WreathElement> = tops[..tops.len() - 1]
        .iter()
        .map(|s| {
            let top = Perm::parse(s, Some(t)).unwrap();
            WreathElement::new((0..t).map(|_| random_perm(ell, rng)).collect(), top).unwrap()
        })
        .collect();
    let mut prod = WreathElement::identity(ell, t);
    for x in &xs {
        prod = prod.then(x);
    }
    let last = prod.inverse();
    assert_eq!(
        last.top,
        Perm::parse(tops[tops.len() - 1], Some(t)).unwrap()
    );
    xs.push(last);
    xs
}

fn dihedral(seed: u64) -> (Vec<WreathElement>, ReducedMultiset) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_perm(7, &mut rng);
    let b: Vec<Perm> = (0..3).map(|_| random_perm(7, &mut rng)).collect();
    let xs = dihedral_example(&a, [&b[0], &b[1], &b[2]]).unwrap();
    let m = reduced_multiset(&xs).unwrap();
    (xs, m)
}

#[test]
fn dihedral_example_certificate() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = random_perm(7, &mut rng);
    let b: Vec<Perm> = (0..3).map(|_| random_perm(7, &mut rng)).collect();
    let xs = dihedral_example(&a, [&b[0], &b[1], &b[2]]).unwrap();
    let m = reduced_multiset(&xs).unwrap();
    assert_eq!(m.certificate_text(), "a*b1*c2*b2*c1");
    let find = |l: &str| {
        m.entries
            .iter()
            .find(|e| e.label == l)
            .unwrap()
            .element
            .clone()
    };
    assert_eq!(find("a"), a);
    assert_eq!(find("b1"), b[1].then(&b[0]));
    assert_eq!(find("b2"), b[2]);
    let c = &xs[2].base;
    assert_eq!(find("c1"), c[0]);
    assert_eq!(find("c2"), c[1].then(&c[2]));
    assert!(verify_multiset(&m, &xs));
}

#[test]
fn random_lgy_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in [3, 4] {
        for k in 0..100 {
            let xs = random_lgy_tuple(7, t, k % 3, &mut rng).unwrap();
            let m = reduced_multiset(&xs).unwrap_or_else(|e| panic!("t={t} k={k}: {e}\n{xs:?}"));
            let c = check_multiset(&m, &xs);
            assert!(c.passed(), "{c:?}");
            let h = hatf_genus(&m).unwrap();
            assert!(h.bound_holds);
        }
    }
}

#[test]
fn normalize_after_scrambling() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for t in [3, 4] {
        for k in 0..50 {
            let mut xs = random_lgy_tuple(7, t, 1 + k % 2, &mut rng).unwrap();
            for _ in 0..5 {
                let i = rand::Rng::gen_range(&mut rng, 0..xs.len() - 1);
                swap_move(&mut xs, i);
            }
            let ys = normalize_lgy(&xs).unwrap();
            assert!(lgy_index(&ys.iter().map(|x| x.top.clone()).collect::<Vec<_>>()).is_some());
            let m = reduced_multiset(&ys).unwrap();
            assert!(verify_multiset(&m, &ys));
        }
    }
}

#[test]
fn tampered_multisets_fail() {
    let (xs, m) = dihedral(3);
    assert!(verify_multiset(&m, &xs));
    let mut flipped = m.clone();
    flipped.certificate[1].1 = -1;
    assert!(!check_multiset(&flipped, &xs).certificate_product_one);
    assert!(!verify_multiset(&flipped, &xs));
    let mut swapped = m.clone();
    let k = swapped.entries.iter().position(|e| e.label == "a").unwrap();
    let e = &mut swapped.entries[k].element;
    *e = if e.is_identity() {
        Perm::parse("(1,2)", Some(7)).unwrap()
    } else {
        Perm::identity(7)
    };
    let c = check_multiset(&swapped, &xs);
    assert!(!c.elements_match && !c.types_match);
    let mut repeated = m.clone();
    repeated.certificate[0] = repeated.certificate[1];
    assert!(!check_multiset(&repeated, &xs).certificate_complete);
    let mut wrong_orbit = m;
    wrong_orbit.entries[0].orbit = vec![2];
    assert!(!check_multiset(&wrong_orbit, &xs).orbits_covered);
}

#[test]
fn trivial_bases_give_an_intransitive_multiset() {
    let id = Perm::identity(6);
    let xs = dihedral_example(&id, [&id, &id, &id]).unwrap();
    let m = reduced_multiset(&xs).unwrap();
    assert!(m.entries.iter().all(|e| e.element.is_identity()));
    assert!(!m.transitive);
    let c = check_multiset(&m, &xs);
    assert!(!c.transitive);
    assert!(c.elements_match && c.certificate_product_one);
}

#[test]
fn json_round_trip_is_one_based() {
    let (_, m) = dihedral(4);
    let json = serde_json::to_string_pretty(&m).unwrap();
    let back: ReducedMultiset = serde_json::from_str(&json).unwrap();
    assert_eq!(back, m);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let branches: Vec<u64> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["branch"].as_u64().unwrap())
        .collect();
    assert!(branches.iter().all(|&b| (1..=3).contains(&b)));
}

#[test]
fn cycle_and_inverse_give_genus_zero() {
    let c = Perm::cycle(5, &[0, 1, 2, 3, 4]).unwrap();
    let entry = |branch: usize, label: &str, element: Perm| MultisetEntry {
        branch,
        label: label.into(),
        orbit: vec![0],
        element,
    };
    let m = ReducedMultiset {
        ell: 5,
        t: 1,
        s: 2,
        entries: vec![entry(0, "a", c.clone()), entry(1, "b", c.inverse())],
        certificate: vec![(0, 1), (1, 1)],
        conjugator: vec![Perm::identity(5)],
        trace: ReductionTrace {
            p: vec![],
            q: vec![],
            q_hat: 1,
        },
        transitive: true,
    };
    let h = hatf_genus(&m).unwrap();
    assert_eq!(h.genus.genus, 0);
    assert_eq!(h.index_sum, 8);
    assert!(h.bound_holds);
}

#[test]
fn normal_form_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    // Four reflections of D6 with the two equal pairs adjacent.
    let xs = tuple_with_tops(6, 3, &["(1,2)", "(1,2)", "(1,3)", "(1,3)"], &mut rng);
    assert_eq!(lgy_index(&tops_of(&xs)), None);
    let ys = normalize_lgy(&xs).unwrap();
    assert_eq!(lgy_index(&tops_of(&ys)), Some(4));
    assert!(verify_multiset(&reduced_multiset(&ys).unwrap(), &ys));
    // D8: a reflection first, the 4-cycle last.
    let xs = tuple_with_tops(6, 4, &["(1,3)", "(1,2)(3,4)", "(1,2,3,4)"], &mut rng);
    assert_eq!(lgy_index(&tops_of(&xs)), None);
    let ys = normalize_lgy(&xs).unwrap();
    assert_eq!(lgy_index(&tops_of(&ys)), Some(3));
    assert!(verify_multiset(&reduced_multiset(&ys).unwrap(), &ys));
    // Already normal: unchanged.
    let zs = normalize_lgy(&ys).unwrap();
    assert_eq!(zs, ys);
}

#[test]
fn preconditions() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let xs = tuple_with_tops(5, 3, &["(1,2)", "(1,2)"], &mut rng);
    assert!(reduced_multiset(&xs).is_err());
    assert!(normalize_lgy(&xs).is_err());
    let (mut ys, _) = dihedral(5);
    ys.swap(0, 1);
    assert!(normalize_lgy(&ys).is_err());
}
