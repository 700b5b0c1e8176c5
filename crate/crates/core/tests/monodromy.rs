use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wreathcover::monodromy::{
    check_product_one, identify_group, is_product_type, kernel_k, Analysis, GroupId,
};
use wreathcover::search::random_perm;
use wreathcover::tables::{expected_group, realize, valid_parameters, Variant};
use wreathcover::{Perm, WreathElement};

fn random_element(ell: usize, t: usize, rng: &mut ChaCha8Rng) -> WreathElement {
    WreathElement::new(
        (0..t).map(|_| random_perm(ell, rng)).collect(),
        random_perm(t, rng),
    )
    .unwrap()
}

fn realized(id: &str, ell: usize, variant: Variant) -> Vec<WreathElement> {
    let a = valid_parameters(id, ell).unwrap()[0];
    realize(id, ell, a, variant).unwrap().tuple
}

#[test]
fn product_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = random_element(5, 2, &mut rng);
    let y = random_element(5, 2, &mut rng);
    assert!(check_product_one(&[
        x.clone(),
        y.clone(),
        x.then(&y).inverse()
    ]));
    assert!(!check_product_one(&[x.clone(), y.clone()]) || x.then(&y).is_identity());
    assert!(!check_product_one(&[
        x.clone(),
        WreathElement::identity(5, 3)
    ]));
    assert!(check_product_one(&[]));
}

#[test]
fn kernel_generators_lie_in_the_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let xs: Vec<WreathElement> = (0..3).map(|_| random_element(4, 2, &mut rng)).collect();
        let a = Analysis::new(&xs).unwrap();
        let g = a.embedded_group().unwrap();
        for k in kernel_k(&xs).unwrap() {
            assert!(k.top.is_identity());
            assert!(g.contains(&k.embed()));
            assert!(a.k_contains(&k));
        }
    }
}

#[test]
fn order_identity_at_eleven() {
    let xs = realized("F2.2", 11, Variant::Default);
    let a = Analysis::new(&xs).unwrap();
    let id = expected_group("F2.2", 11, Variant::Default).unwrap();
    assert_eq!(Some(a.group_order()), id.order(11));
    assert_eq!(identify_group(&xs).unwrap(), id);
    assert_eq!(a.k_contains_alternating_power_by_order(), Some(true));
}

#[test]
fn identified_groups() {
    assert_eq!(
        identify_group(&realized("F2.3", 10, Variant::Default)).unwrap(),
        GroupId::AwrS2
    );
    assert_eq!(
        identify_group(&realized("I1A.2a", 9, Variant::Default)).unwrap(),
        GroupId::A2C4
    );
    assert_eq!(
        identify_group(&realized("I1.1", 9, Variant::Default)).unwrap(),
        GroupId::SwrS2
    );
    assert_eq!(
        identify_group(&realized("F4.4", 9, Variant::Even)).unwrap(),
        GroupId::AwrS2
    );
}

#[test]
fn product_type_reports() {
    let xs = realized("I1.1", 9, Variant::Default);
    let r = is_product_type(&xs).unwrap();
    assert!(r.transitive && r.transitive_on_i && r.criterion_applies);
    assert_eq!(r.primitive, Some(true));
    assert!(r.primitive_by_criterion);
    assert_eq!(r.group_id, Some(GroupId::SwrS2));
    // Trivial image on I: the coordinates are blocks or orbits.
    let pair = WreathElement::pair(full_cycle(5), full_cycle(5).inverse());
    let r = is_product_type(&[pair.clone(), pair.inverse()]).unwrap();
    assert!(!r.transitive_on_i);
    assert_ne!(r.primitive, Some(true));
    assert!(!r.primitive_by_criterion);
    assert_eq!(r.group_id, Some(GroupId::Other));
    assert!(is_product_type(&[WreathElement::identity(4, 2)]).is_err());
}

fn full_cycle(n: usize) -> Perm {
    Perm::cycle(n, &(0..n).collect::<Vec<_>>()).unwrap()
}

#[test]
fn group_ids() {
    for id in [
        GroupId::AwrS2,
        GroupId::SwrS2,
        GroupId::SfibS2,
        GroupId::A2C4,
        GroupId::Other,
    ] {
        assert_eq!(GroupId::parse(id.as_str()).unwrap(), id);
    }
    assert!(GroupId::parse("S9").is_err());
    assert_eq!(GroupId::SwrS2.order(5).unwrap(), 28800u32.into());
    assert_eq!(GroupId::AwrS2.order(5).unwrap(), 7200u32.into());
    assert!(GroupId::Other.order(5).is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kernel_times_image_is_the_group_order(seed in any::<u64>(), ell in 3usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(ell, 2, &mut rng);
        let y = random_element(ell, 2, &mut rng);
        let a = Analysis::new(&[x, y]).unwrap();
        prop_assert_eq!(a.group_order(), a.embedded_group().unwrap().order());
    }
}
