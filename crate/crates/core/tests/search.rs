use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wreathcover::permcore::{all_perms, partitions, product};
use wreathcover::search::{
    class_members, count_up_to_conjugacy, exists_primitive_tuple, find_tuples,
    find_tuples_with_first, parity_feasible, random_class_member, SearchQuery,
};
use wreathcover::{CycleType, Error, GroupHandle, Perm};

fn classes(n: usize, text: &str) -> Vec<CycleType> {
    SearchQuery::parse_classes(n, text).unwrap()
}

/// Product-1 tuples with the given first entry, by running over all of
/// `S_n` for every free entry.
fn naive_count(x1: &Perm, cls: &[CycleType], transitive: bool) -> usize {
    let n = x1.degree();
    let all = all_perms(n);
    let mut prefixes: Vec<Vec<Perm>> = vec![vec![x1.clone()]];
    for c in &cls[1..cls.len() - 1] {
        let mut next = Vec::new();
        for p in &prefixes {
            for y in all.iter().filter(|y| y.cycle_type() == *c) {
                let mut q = p.clone();
                q.push(y.clone());
                next.push(q);
            }
        }
        prefixes = next;
    }
    prefixes
        .into_iter()
        .filter_map(|mut p| {
            let last = product(n, &p).inverse();
            if last.cycle_type() != cls[cls.len() - 1] {
                return None;
            }
            p.push(last);
            Some(p)
        })
        .filter(|p| !transitive || GroupHandle::new(n, p.clone()).unwrap().is_transitive())
        .count()
}

#[test]
fn transposition_pairs_in_s3() {
    let q = SearchQuery::new(3, classes(3, "[2];[2];[3]")).transitive();
    let res = find_tuples(&q).unwrap();
    assert_eq!(res.tuples.len(), 2);
    assert!(res.exhausted);
    assert_eq!(count_up_to_conjugacy(&res.tuples), 1);
    for t in &res.tuples {
        assert!(product(3, t).is_identity());
    }
}

#[test]
fn dihedral_tuples_of_degree_four() {
    let cls = classes(4, "[4];[2,2];[2]");
    let mut q = SearchQuery::new(4, cls.clone()).transitive();
    q.group_order = Some("8".into());
    let res = find_tuples(&q).unwrap();
    assert_eq!(
        res.tuples.len(),
        naive_count(&cls[0].canonical_perm(), &cls, true)
    );
    assert!(!res.tuples.is_empty());
}

#[test]
fn limits_and_caps() {
    let q = SearchQuery::new(5, classes(5, "[2];[2];[2];[2]")).with_limit(3);
    let res = find_tuples(&q).unwrap();
    assert_eq!(res.tuples.len(), 3);
    assert!(!res.exhausted);
    let big = SearchQuery::new(13, classes(13, "[2];[2]"));
    assert!(matches!(find_tuples(&big), Err(Error::CapExceeded(_))));
    let odd = SearchQuery::new(4, classes(4, "[2];[3]"));
    assert!(matches!(find_tuples(&odd), Err(Error::Infeasible(_))));
    assert!(SearchQuery::parse_classes(3, "[4]").is_err());
    assert!(find_tuples(&SearchQuery::new(3, classes(3, "[3]"))).is_err());
}

#[test]
fn class_member_lists() {
    assert_eq!(
        class_members(&CycleType::parse("[2,1^3]").unwrap())
            .unwrap()
            .len(),
        10
    );
    assert_eq!(
        class_members(&CycleType::parse("[3,2]").unwrap())
            .unwrap()
            .len(),
        20
    );
    let members = class_members(&CycleType::parse("[2^2,1]").unwrap()).unwrap();
    assert!(members.windows(2).all(|w| w[0].images() < w[1].images()));
}

#[test]
fn primitive_existence() {
    let q = SearchQuery::new(5, classes(5, "[5];[5];[5]"));
    let res = exists_primitive_tuple(&q).unwrap();
    assert!(res.exists);
    let w = res.witness.unwrap();
    assert!(GroupHandle::new(5, w).unwrap().is_primitive().unwrap());
    let q = SearchQuery::new(4, classes(4, "[4];[4];[2,2]"));
    assert!(!exists_primitive_tuple(&q).unwrap().exists);
}

#[test]
fn parity_precheck_is_exact_at_small_degree() {
    for n in 2..=5 {
        let ps: Vec<CycleType> = partitions(n)
            .into_iter()
            .map(|p| CycleType::new(p).unwrap())
            .collect();
        for a in &ps {
            for b in &ps {
                for c in &ps {
                    let cls = vec![a.clone(), b.clone(), c.clone()];
                    let q = SearchQuery::new(n, cls.clone());
                    if parity_feasible(&cls) {
                        let res = find_tuples(&q).unwrap();
                        assert_eq!(
                            res.tuples.len(),
                            naive_count(&a.canonical_perm(), &cls, false)
                        );
                    } else {
                        assert!(matches!(find_tuples(&q), Err(Error::Infeasible(_))));
                        assert_eq!(naive_count(&a.canonical_perm(), &cls, false), 0);
                    }
                }
            }
        }
    }
}

fn partition(n: usize) -> impl Strategy<Value = CycleType> {
    let all = partitions(n);
    (0..all.len()).prop_map(move |i| CycleType::new(all[i].clone()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn count_does_not_depend_on_the_first_entry(
        cls in (3usize..6).prop_flat_map(|n| prop::collection::vec(partition(n), 4)),
        seed in any::<u64>(),
    ) {
        let n = cls[0].degree();
        prop_assume!(parity_feasible(&cls));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x1 = random_class_member(&cls[0], &mut rng);
        let q = SearchQuery::new(n, cls.clone()).transitive();
        let canonical = find_tuples(&q).unwrap();
        let random = find_tuples_with_first(&q, &x1).unwrap();
        prop_assert_eq!(canonical.tuples.len(), random.tuples.len());
        prop_assert_eq!(random.tuples.len(), naive_count(&x1, &cls, true));
        for t in &random.tuples {
            prop_assert!(product(n, t).is_identity());
            for (x, c) in t.iter().zip(&cls) {
                prop_assert_eq!(&x.cycle_type(), c);
            }
        }
    }
}
