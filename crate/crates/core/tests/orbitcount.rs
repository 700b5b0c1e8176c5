use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wreathcover::orbitcount::{rpi_bruteforce, rpi_closed_form_t2, CosetModel, DEFAULT_ORBIT_CAP};
use wreathcover::permcore::partitions;
use wreathcover::search::random_perm;
use wreathcover::{CycleType, Error, Perm, WreathElement};

fn swap_of(parts: &str) -> WreathElement {
    let a = CycleType::parse(parts).unwrap().canonical_perm();
    let ell = a.degree();
    WreathElement::swapped(a, Perm::identity(ell))
}

fn cyclic(x: &WreathElement) -> i64 {
    rpi_bruteforce(x, &CosetModel::Cyclic, DEFAULT_ORBIT_CAP)
        .unwrap()
        .rpi
}

#[test]
fn examples() {
    let pair = WreathElement::pair(Perm::parse("(1,2,3)", Some(5)).unwrap(), Perm::identity(5));
    assert_eq!(cyclic(&pair), 0);
    assert_eq!(cyclic(&swap_of("[5]")), 1);
    assert_eq!(cyclic(&swap_of("[3,2,2]")), 1);
    assert_eq!(cyclic(&swap_of("[1^5]")), 5);
    assert_eq!(cyclic(&swap_of("[4,2,1]")), 1);
    let r = rpi_bruteforce(&swap_of("[3,1]"), &CosetModel::Cyclic, DEFAULT_ORBIT_CAP).unwrap();
    assert_eq!((r.m, r.orbits_delta, r.orbits_product), (2, 4, 6));
}

#[test]
fn closed_form_matches_every_class() {
    for ell in 2..=7 {
        for parts in partitions(ell) {
            let a = CycleType::new(parts).unwrap().canonical_perm();
            let x = WreathElement::swapped(a.clone(), Perm::identity(ell));
            assert_eq!(
                cyclic(&x),
                rpi_closed_form_t2(&a) as i64,
                "{}",
                a.cycle_type()
            );
        }
    }
}

#[test]
fn image_model() {
    let x = swap_of("[3,2]");
    let model = CosetModel::of_tuple(&[x.clone(), x.inverse()]).unwrap();
    let r = rpi_bruteforce(&x, &model, DEFAULT_ORBIT_CAP).unwrap();
    assert_eq!(r.m, 2);
    assert_eq!(r.rpi, cyclic(&x));
    // Three coordinates, image S_3, a transposition top.
    let y = WreathElement::new(
        vec![Perm::identity(3); 3],
        Perm::parse("(1,2)", Some(3)).unwrap(),
    )
    .unwrap();
    let z = WreathElement::new(
        vec![Perm::identity(3); 3],
        Perm::parse("(1,2,3)", Some(3)).unwrap(),
    )
    .unwrap();
    let model = CosetModel::of_tuple(&[y.clone(), z]).unwrap();
    let r = rpi_bruteforce(&y, &model, DEFAULT_ORBIT_CAP).unwrap();
    assert_eq!(r.m, 6);
    assert!(r.rpi >= 0);
}

#[test]
fn errors() {
    let x = swap_of("[5]");
    assert!(matches!(
        rpi_bruteforce(&x, &CosetModel::Cyclic, 10),
        Err(Error::CapExceeded(_))
    ));
    let other = CosetModel::Image(vec![Perm::identity(2)]);
    assert!(rpi_bruteforce(&x, &other, DEFAULT_ORBIT_CAP).is_err());
    assert!(CosetModel::of_tuple(&[]).is_err());
}

proptest! {
    #[test]
    fn invariant_under_conjugation(seed in any::<u64>(), ell in 2usize..8, t in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random = |rng: &mut ChaCha8Rng| {
            WreathElement::new((0..t).map(|_| random_perm(ell, rng)).collect(), random_perm(t, rng)).unwrap()
        };
        let x = random(&mut rng);
        let z = random(&mut rng);
        prop_assert_eq!(cyclic(&x), cyclic(&x.conj(&z)));
        prop_assert!(cyclic(&x) >= 0);
    }

    #[test]
    fn closed_form_on_random_swaps(seed in any::<u64>(), ell in 2usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_perm(ell, &mut rng), random_perm(ell, &mut rng));
        let x = WreathElement::swapped(a.clone(), b.clone());
        prop_assert_eq!(cyclic(&x), rpi_closed_form_t2(&a.then(&b)) as i64);
    }
}
