use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wreathcover::search::random_perm;
use wreathcover::tables::{data, instantiate_row, valid_parameters};
use wreathcover::wreath::{rank, unrank, wreath_product, TupleFile};
use wreathcover::{ClassDescriptor, CycleType, Perm, WreathElement};

fn cyc(n: usize, text: &str) -> Perm {
    Perm::parse(text, Some(n)).unwrap()
}

fn random_element(ell: usize, t: usize, rng: &mut ChaCha8Rng) -> WreathElement {
    WreathElement::new(
        (0..t).map(|_| random_perm(ell, rng)).collect(),
        random_perm(t, rng),
    )
    .unwrap()
}

#[test]
fn coordinatewise_action() {
    let w = WreathElement::pair(cyc(3, "(1,2)"), cyc(3, "(1,3)"));
    assert_eq!(w.act(&[0, 0]).unwrap(), vec![1, 2]);
    let id = WreathElement::identity(3, 2);
    for i in 0..9 {
        assert_eq!(id.act(&unrank(i, 3, 2)).unwrap(), unrank(i, 3, 2));
    }
    assert!(w.act(&[0, 3]).is_err());
    assert!(w.act(&[0]).is_err());
}

#[test]
fn swap_action_matches_embedding() {
    let x = WreathElement::swapped(cyc(3, "(1,2,3)"), Perm::identity(3));
    let e = x.embed();
    for i in 0..9 {
        let d = unrank(i, 3, 2);
        assert_eq!(e.apply(i), rank(&x.act(&d).unwrap(), 3));
    }
    assert!(WreathElement::identity(4, 3).embed().is_identity());
}

#[test]
fn shape_errors() {
    assert!(WreathElement::new(vec![Perm::identity(3)], Perm::identity(2)).is_err());
    assert!(WreathElement::new(
        vec![Perm::identity(3), Perm::identity(4)],
        Perm::identity(2)
    )
    .is_err());
    let x = WreathElement::identity(3, 2);
    assert!(x.multiply(&WreathElement::identity(3, 3)).is_err());
}

#[test]
fn reduced_form_examples() {
    let x = WreathElement::swapped(cyc(3, "(1,2)"), cyc(3, "(1,3)"));
    let (y, z) = x.reduced_form(None).unwrap();
    assert_eq!(x.conj(&z), y);
    assert_eq!(
        y,
        WreathElement::swapped(cyc(3, "(1,2,3)"), Perm::identity(3))
    );
    let (y2, z2) = y.reduced_form(None).unwrap();
    assert_eq!(y2, y);
    assert!(z2.is_identity());
    // Top (1,2,3): the product of the base entries sits at the first point.
    let a: Vec<Perm> = vec![cyc(5, "(1,2)"), cyc(5, "(2,3,4)"), cyc(5, "(1,5)")];
    let w = WreathElement::new(a.clone(), cyc(3, "(1,2,3)")).unwrap();
    let (wy, _) = w.reduced_form(None).unwrap();
    assert_eq!(wy.base[0], a[0].then(&a[1]).then(&a[2]));
    assert!(wy.base[1].is_identity() && wy.base[2].is_identity());
    assert!(w.reduced_form(Some(&[0, 1])).is_err());
}

#[test]
fn class_descriptors() {
    let ell = 9;
    let d = ClassDescriptor::of(&WreathElement::identity(ell, 2)).unwrap();
    assert_eq!(d.to_string(), "([1^9],[1^9])");
    let a = CycleType::new(vec![9]).unwrap().canonical_perm();
    let x = WreathElement::swapped(a, Perm::identity(ell));
    assert_eq!(ClassDescriptor::of(&x).unwrap().to_string(), "([9],[1^9])s");
    let parsed = ClassDescriptor::parse("([9],[1^9])s", Some(9)).unwrap();
    assert_eq!(parsed, ClassDescriptor::of(&x).unwrap());
    assert!(ClassDescriptor::of(&WreathElement::identity(5, 3)).is_err());
}

#[test]
fn descriptors_round_trip_on_every_row() {
    for ell in [9, 10] {
        for row in &data().table1 {
            for a in valid_parameters(&row.id, ell).unwrap() {
                for d in instantiate_row(&row.id, ell, a).unwrap().descriptors {
                    assert_eq!(
                        ClassDescriptor::of(&d.representative()).unwrap(),
                        d,
                        "{}",
                        row.id
                    );
                    let text = d.to_string();
                    assert_eq!(ClassDescriptor::parse(&text, Some(ell)).unwrap(), d);
                }
            }
        }
    }
}

#[test]
fn square_of_a_swap() {
    // Each odd c-cycle of ab gives one 2c-cycle on the diagonal-type fibers.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for ell in 2..=7 {
        for _ in 0..20 {
            let (a, b) = (random_perm(ell, &mut rng), random_perm(ell, &mut rng));
            let x = WreathElement::swapped(a.clone(), b.clone());
            let sq = x.then(&x);
            assert_eq!(sq, WreathElement::pair(a.then(&b), b.then(&a)));
            let d = ClassDescriptor::of(&x).unwrap();
            assert_eq!(x.embed().cycle_type(), d.embedded_type());
        }
    }
}

#[test]
fn tuple_file_round_trip() {
    let x = WreathElement::swapped(cyc(5, "(1,2,3)"), cyc(5, "(4,5)"));
    let file = TupleFile::new(vec![x.clone(), x.inverse()]).unwrap();
    let back = TupleFile::from_json(&file.to_json()).unwrap();
    assert_eq!(back, file);
    assert!(file
        .to_json()
        .contains("\"top\": [\n        2,\n        1\n      ]"));
    let bad = r#"{"ell": 5, "t": 2, "elements": [{"base": [[1,2,3]], "top": [2,1]}]}"#;
    assert!(TupleFile::from_json(bad).is_err());
    let zero = r#"{"ell": 2, "t": 1, "elements": [{"base": [[0,1]], "top": [1]}]}"#;
    assert!(TupleFile::from_json(zero).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn embedding_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(5, 3, &mut rng);
        let y = random_element(5, 3, &mut rng);
        prop_assert_eq!(x.then(&y).embed(), x.embed().then(&y.embed()));
        prop_assert_eq!(x.inverse().embed(), x.embed().inverse());
        for i in [0usize, 17, 124] {
            let d = unrank(i, 5, 3);
            prop_assert_eq!(x.then(&y).act(&d).unwrap(), y.act(&x.act(&d).unwrap()).unwrap());
        }
    }

    #[test]
    fn reduced_forms_are_conjugate(seed in any::<u64>(), ell in 2usize..7, t in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(ell, t, &mut rng);
        let (y, z) = x.reduced_form(None).unwrap();
        prop_assert_eq!(x.conj(&z), y.clone());
        prop_assert!(z.top.is_identity());
        if ell.pow(t as u32) <= 1296 {
            prop_assert_eq!(x.embed().cycle_type(), y.embed().cycle_type());
        }
    }

    #[test]
    fn products_and_descriptors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs: Vec<WreathElement> = (0..4).map(|_| random_element(6, 2, &mut rng)).collect();
        let p = wreath_product(6, 2, &xs);
        let mut q = WreathElement::identity(6, 2);
        for x in &xs {
            q = q.then(x);
        }
        prop_assert_eq!(p, q);
        let z = random_element(6, 2, &mut rng);
        prop_assert_eq!(ClassDescriptor::of(&xs[0].conj(&z)).unwrap(), ClassDescriptor::of(&xs[0]).unwrap());
    }
}
