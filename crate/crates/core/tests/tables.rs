use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wreathcover::monodromy::GroupId;
use wreathcover::tables::{
    data, even_commutator_census, expected_group, f4n3_search, grid, has_variants, instantiate_row,
    nonexistence_witness, random_witness_params, realize, refute, row_uses_a, valid_parameters,
    variant_feasible, verify_row, verify_table2, verify_table3, Variant,
};
use wreathcover::{ClassDescriptor, Error};

fn descriptors(id: &str, ell: usize, a: Option<usize>) -> Vec<String> {
    instantiate_row(id, ell, a)
        .unwrap()
        .descriptors
        .iter()
        .map(|d| d.to_string())
        .collect()
}

#[test]
fn instantiation_examples() {
    assert_eq!(
        descriptors("I1.1", 9, Some(2)),
        vec!["([9],[1^9])s", "([7,2],[1^9])s", "([2,1^7],[1^9])"]
    );
    assert_eq!(
        descriptors("F2.1", 9, None),
        vec!["([3^3],[3^2,2,1])", "([3^2,2,1],[1^9])s", "([1^9],[1^9])s"]
    );
    assert!(matches!(
        instantiate_row("I2.3", 10, None),
        Err(Error::Congruence(_))
    ));
    assert!(matches!(
        instantiate_row("I1.1", 9, Some(3)),
        Err(Error::Congruence(_))
    ));
    assert!(matches!(
        instantiate_row("I1.1", 9, None),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        instantiate_row("F2.1", 9, Some(1)),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        instantiate_row("X9.9", 9, None),
        Err(Error::UnknownRow(_))
    ));
    assert_eq!(
        instantiate_row("I1.1", 8, Some(3)).unwrap().warnings.len(),
        1
    );
    assert!(instantiate_row("I1.1", 6, Some(1)).is_err());
}

#[test]
fn row_metadata() {
    assert_eq!(data().table1.len(), 58);
    assert_eq!(data().table2.len(), 8);
    assert!(row_uses_a("I1.1").unwrap());
    assert!(!row_uses_a("F2.1").unwrap());
    assert_eq!(
        valid_parameters("I1.1", 9).unwrap(),
        vec![Some(1), Some(2), Some(4)]
    );
    assert!(has_variants("F4.5").unwrap());
    assert_eq!(
        expected_group("I1.1", 9, Variant::Default).unwrap(),
        GroupId::SwrS2
    );
    assert!(expected_group("I1.1", 9, Variant::Even).is_err());
}

#[test]
fn every_instantiated_row_has_its_genus() {
    // Riemann-Hurwitz over the descriptors alone, independent of any tuple.
    for ell in 9..=12 {
        for r in &data().table1 {
            for a in valid_parameters(&r.id, ell).unwrap() {
                let inst = instantiate_row(&r.id, ell, a).unwrap();
                let total: usize = inst
                    .descriptors
                    .iter()
                    .map(|d| d.embedded_type().rh_contribution())
                    .sum();
                let n = (ell * ell) as i64;
                assert_eq!(
                    total as i64 - 2 * n + 2,
                    2 * r.genus,
                    "{} l={ell} a={a:?}",
                    r.id
                );
                let round: Vec<ClassDescriptor> = inst
                    .descriptors
                    .iter()
                    .map(|d| ClassDescriptor::parse(&d.to_string(), Some(ell)).unwrap())
                    .collect();
                assert_eq!(round, inst.descriptors);
            }
        }
    }
}

#[test]
fn verified_cells() {
    for (id, ell, variant) in [
        ("I1.1", 9, Variant::Default),
        ("F2.1", 9, Variant::Default),
        ("F4.4", 9, Variant::Even),
        ("F4.5", 9, Variant::Even),
    ] {
        let a = valid_parameters(id, ell).unwrap()[0];
        let rep = verify_row(id, ell, a, variant).unwrap();
        assert!(rep.passed, "{id} l={ell} {variant}: {:?}", rep.failures);
        assert_eq!(rep.genus_tuple, Some(rep.expected_genus));
    }
}

#[test]
fn grid_cells() {
    let cells = grid(9, 9).unwrap();
    assert!(cells.iter().any(|c| c.0 == "F4.5" && c.3 == Variant::Even));
    assert!(cells.iter().all(|c| c.1 == 9));
}

#[test]
fn even_f45_is_infeasible_at_even_degree() {
    for ell in [10, 12] {
        assert!(!variant_feasible("F4.5", ell, Variant::Even));
        assert!(matches!(
            realize("F4.5", ell, None, Variant::Even),
            Err(Error::Infeasible(_))
        ));
    }
    assert!(variant_feasible("F4.5", 11, Variant::Even));
    assert!(variant_feasible("F4.5", 10, Variant::Default));
}

#[test]
fn even_commutator_census_by_parity() {
    for ell in [6, 8] {
        let c = even_commutator_census(ell).unwrap();
        assert!(c.three_cycle_commutator > 0);
        assert_eq!(c.primitive, 0, "l = {ell}");
        assert_eq!(c.alternating_by_order, 0, "l = {ell}");
    }
    let c = even_commutator_census(7).unwrap();
    assert!(c.primitive > 0);
    assert!(c.alternating_by_order > 0);
    assert!(even_commutator_census(10).is_err());
}

#[test]
fn small_tables() {
    for i in 0..data().table2.len() {
        let r = verify_table2(i).unwrap();
        assert!(r.passed, "table 2 row {i}: {r:?}");
        assert!(r.tuples > 0);
    }
    assert!(verify_table2(99).is_err());
    for r in &data().table3 {
        assert!(
            verify_table3(&r.case, None).unwrap().passed,
            "case {}",
            r.case
        );
    }
}

#[test]
fn witnesses() {
    for r in &data().table4 {
        if r.witness == "search" {
            continue;
        }
        for ell in [9, 10, 11] {
            let mut rng = ChaCha8Rng::seed_from_u64(ell as u64);
            for _ in 0..10 {
                let params = random_witness_params(&r.id, ell, &mut rng).unwrap();
                let w = nonexistence_witness(&r.id, &params).unwrap();
                assert!(w.verified(), "{} l={ell}: {:?}", r.id, w.relations);
            }
        }
    }
    assert!(nonexistence_witness("I1.1", &[]).is_err());
}

#[test]
fn small_degree_refutations() {
    let f = f4n3_search(5).unwrap();
    assert_eq!(f.primitive_with_alternating_square, 0);
    assert!(f.tuples > 0);
    for r in &data().refutations {
        let res = refute(&r.id).unwrap();
        assert!(res.refuted, "{}", r.id);
        assert!(res.nodes > 0);
    }
}
