use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wreathcover::permcore::partitions;
use wreathcover::ramify::{
    abhyankar_fiber, almost_galois_type, epsilon, galois_closure_index, galois_genus,
    genus_from_tuple, genus_from_wreath_tuple, perm_almost_galois, rh_contribution,
    riemann_hurwitz, AlmostGaloisMode, MType, RamificationDatum, T2Data,
};
use wreathcover::search::{random_class_member, random_perm};
use wreathcover::tables::{realize, valid_parameters, Variant};
use wreathcover::{CycleType, Error, Perm, WreathElement};

fn ct(text: &str) -> CycleType {
    CycleType::parse(text).unwrap()
}

fn full_cycle(n: usize) -> Perm {
    CycleType::new(vec![n]).unwrap().canonical_perm()
}

#[test]
fn contributions() {
    assert_eq!(rh_contribution(&ct("[3,2,1]")), 3);
    assert_eq!(rh_contribution(&ct("[1^7]")), 0);
    assert_eq!(rh_contribution(&ct("[9]")), 8);
    let g = riemann_hurwitz(4, &[ct("[2,1^2]"), ct("[2,1^2]"), ct("[3,1]")]).unwrap();
    assert_eq!(g.genus, -1);
    assert_eq!(g.total_ramification, 4);
    assert!(matches!(
        riemann_hurwitz(4, &[ct("[2,1^2]")]),
        Err(Error::NonIntegralGenus(_))
    ));
    let d = RamificationDatum::new(3, vec![ct("[2,1]"), ct("[1^3]"), ct("[3]")]).unwrap();
    assert_eq!(d.points.len(), 2);
    assert!(RamificationDatum::new(3, vec![ct("[2,1^2]")]).is_err());
}

#[test]
fn cycle_and_inverse_give_genus_zero() {
    for n in 2..12 {
        let x = full_cycle(n);
        assert_eq!(
            genus_from_tuple(&[x.clone(), x.inverse()]).unwrap().genus,
            0
        );
    }
    let x = Perm::parse("(1,2)", Some(3)).unwrap();
    assert_eq!(
        genus_from_tuple(&[x.clone(), x.inverse()]),
        Err(Error::Intransitive)
    );
    let y = full_cycle(4);
    assert_eq!(
        genus_from_tuple(&[y.clone(), y.clone()]),
        Err(Error::NotProductOne)
    );
}

#[test]
fn galois_genus_examples() {
    assert_eq!(galois_genus(6, &[2, 2, 3]).unwrap(), 0);
    assert_eq!(galois_genus(12, &[2, 3, 3]).unwrap(), 0);
    assert_eq!(galois_genus(60, &[2, 3, 5]).unwrap(), 0);
    assert_eq!(galois_genus(4, &[2, 2, 2, 2]).unwrap(), 1);
    assert_eq!(galois_genus(6, &[2, 3, 6]).unwrap(), 1);
    assert_eq!(galois_genus(168, &[2, 3, 7]).unwrap(), 3);
    assert!(galois_genus(6, &[4]).is_err());
    assert!(galois_genus(6, &[0]).is_err());
}

#[test]
fn abhyankar_examples() {
    let f = abhyankar_fiber(&ct("[2]"), &ct("[2]")).unwrap();
    assert_eq!(f.points, vec![(2, 2)]);
    assert_eq!(f.contribution, 0);
    let f = abhyankar_fiber(&ct("[3]"), &ct("[2,1]")).unwrap();
    assert_eq!(f.points, vec![(6, 1), (3, 1)]);
    assert_eq!(f.contribution, 4);
    assert_eq!(f.total_degree(), 9);
    assert!(abhyankar_fiber(&ct("[3]"), &ct("[2]")).is_err());
}

#[test]
fn closure_indices() {
    assert_eq!(galois_closure_index(&ct("[4,6,1]")), 12);
    assert_eq!(galois_closure_index(&ct("[1^5]")), 1);
    assert_eq!(galois_closure_index(&ct("[7,5,3]")), 105);
}

#[test]
fn almost_galois_examples() {
    let e = ct("[2^48,1^4]");
    let r = almost_galois_type(&e, 0, AlmostGaloisMode::Strict);
    assert_eq!(r.m, MType::Finite(2));
    assert_eq!(r.error_bound.as_deref(), Some("16"));
    assert_eq!(
        almost_galois_type(&e, 0, AlmostGaloisMode::Plurality).m,
        MType::Finite(2)
    );
    let long = ct("[1000]");
    assert_eq!(
        almost_galois_type(&long, 0, AlmostGaloisMode::Strict).m,
        MType::Infinite
    );
    assert_eq!(
        almost_galois_type(&long, 0, AlmostGaloisMode::Plurality).m,
        MType::Infinite
    );
    assert_eq!(epsilon(0, 1), Ratio::from_integer(4));
    assert_eq!(epsilon(1, 2), Ratio::from_integer(32));
}

#[test]
fn almost_galois_for_permutations() {
    let x = ct("[2^48,1^4]").canonical_perm();
    assert!(perm_almost_galois(
        &x,
        MType::Finite(2),
        Ratio::from_integer(16)
    ));
    assert!(!perm_almost_galois(
        &x,
        MType::Finite(2),
        Ratio::from_integer(0)
    ));
    assert!(!perm_almost_galois(
        &x,
        MType::Infinite,
        Ratio::from_integer(16)
    ));
    assert!(perm_almost_galois(
        &full_cycle(100),
        MType::Infinite,
        Ratio::from_integer(1)
    ));
    assert!(!perm_almost_galois(
        &x,
        MType::Undetermined,
        Ratio::from_integer(100)
    ));
}

#[test]
fn both_genus_routes_agree_on_realized_rows() {
    let mut checked = 0;
    for (id, ell) in [
        ("I1.1", 9),
        ("F2.3", 10),
        ("I2.1a", 11),
        ("F4.4", 11),
        ("F1A.5", 11),
    ] {
        let Some(&a) = valid_parameters(id, ell).unwrap().first() else {
            continue;
        };
        let real = realize(id, ell, a, Variant::Default).unwrap();
        let g = genus_from_wreath_tuple(&real.tuple).unwrap().genus;
        assert_eq!(
            T2Data::from_tuple(&real.tuple).unwrap().genus().unwrap(),
            g,
            "{id}"
        );
        checked += 1;
    }
    assert!(checked >= 4);
}

#[test]
fn swap_point_formula_on_random_two_swap_tuples() {
    // (a,1)s, (b,c)s, then the forced pair entry closes the product.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..300 {
        let ell = 5 + checked % 3;
        let x1 = WreathElement::swapped(random_perm(ell, &mut rng), Perm::identity(ell));
        let x2 = WreathElement::swapped(random_perm(ell, &mut rng), random_perm(ell, &mut rng));
        let x3 = x1.then(&x2).inverse();
        let xs = vec![x1, x2, x3];
        let Ok(g) = genus_from_wreath_tuple(&xs) else {
            continue;
        };
        assert_eq!(T2Data::from_tuple(&xs).unwrap().genus().unwrap(), g.genus);
        checked += 1;
    }
    assert!(checked > 50, "only {checked} transitive draws");
}

fn partition(n: usize) -> impl Strategy<Value = CycleType> {
    let all = partitions(n);
    (0..all.len()).prop_map(move |i| CycleType::new(all[i].clone()).unwrap())
}

proptest! {
    #[test]
    fn fiber_matches_the_product_action(
        (e1, e2) in (2usize..9).prop_flat_map(|n| (partition(n), partition(n))),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_class_member(&e1, &mut rng);
        let y = random_class_member(&e2, &mut rng);
        let f = abhyankar_fiber(&e1, &e2).unwrap();
        let n = e1.degree();
        prop_assert_eq!(f.total_degree(), n * n);
        let got = CycleType::new(f.as_partition().parts().to_vec()).unwrap();
        prop_assert_eq!(got, WreathElement::pair(x, y).embed().cycle_type());
    }
}
