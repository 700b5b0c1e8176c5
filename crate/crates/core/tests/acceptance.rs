//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::time::Instant;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wreathcover::orbitcount::{rpi_bruteforce, rpi_closed_form_t2, CosetModel, DEFAULT_ORBIT_CAP};
use wreathcover::permcore::{partitions, product};
use wreathcover::ramify::{abhyankar_fiber, galois_genus};
use wreathcover::reducer::{
    dihedral_example, hatf_genus, random_lgy_tuple, reduced_multiset, verify_multiset,
};
use wreathcover::search::random_perm;
use wreathcover::tables::{
    data, f4n3_search, grid, nonexistence_witness, random_witness_params, refute, variant_feasible,
    verify_row, verify_table2, verify_table3,
};
use wreathcover::{ClassDescriptor, CycleType, Perm, WreathElement};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Genus of a table 1 row by its name: 1 for the `I1A.1`-`I1A.3` and `F4`
/// families, 0 otherwise.
fn genus_by_name(id: &str) -> i64 {
    let genus_one = id.starts_with("F4.")
        || ["I1A.1", "I1A.2", "I1A.3"]
            .iter()
            .any(|p| id.starts_with(p));
    i64::from(genus_one)
}

fn random_element(ell: usize, t: usize, rng: &mut ChaCha8Rng) -> WreathElement {
    WreathElement::new(
        (0..t).map(|_| random_perm(ell, rng)).collect(),
        random_perm(t, rng),
    )
    .unwrap()
}

/// Orbits of the coordinatewise action of `(x, y)` on pairs, by direct
/// enumeration of the `l^2` points.
fn fiber_lengths(x: &Perm, y: &Perm) -> Vec<usize> {
    let n = x.degree();
    let mut seen = vec![false; n * n];
    let mut lengths = Vec::new();
    for start in 0..n * n {
        if seen[start] {
            continue;
        }
        let (mut i, mut j, mut len) = (start / n, start % n, 0);
        while !seen[i * n + j] {
            seen[i * n + j] = true;
            len += 1;
            i = x.apply(i);
            j = y.apply(j);
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

fn criteria_1_and_2() -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut cells = 0;
    let mut failures = Vec::new();
    let mut route_failures = Vec::new();
    let mut infeasible = 0;
    for (id, ell, a, variant) in grid(9, 16).unwrap() {
        if !variant_feasible(&id, ell, variant) {
            infeasible += 1;
            continue;
        }
        cells += 1;
        let rep = verify_row(&id, ell, a, variant).unwrap();
        let label = format!("{id} l={ell} a={a:?} {variant}");
        let Some(tuple) = rep.tuple.as_ref() else {
            failures.push(format!("{label}: {:?}", rep.failures));
            continue;
        };
        let independent = product(
            ell * ell,
            &tuple.iter().map(|x| x.embed()).collect::<Vec<_>>(),
        )
        .is_identity()
            && tuple.iter().zip(&rep.descriptors).all(|(x, d)| {
                ClassDescriptor::of(x).unwrap() == ClassDescriptor::parse(d, Some(ell)).unwrap()
            });
        let ok = rep.passed
            && independent
            && rep.product_one
            && rep.transitive
            && rep.primitive
            && rep.k_contains_alternating_square
            && rep.genus_tuple == Some(genus_by_name(&id))
            && rep.group.is_some()
            && rep.group == rep.expected_group;
        if !ok {
            failures.push(format!("{label}: {:?}", rep.failures));
        }
        if !(rep.genus_formula.is_some() && rep.genus_formula == rep.genus_tuple) {
            route_failures.push(label);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let c1 = outcome(
        failures.is_empty() && secs < 600.0,
        format!(
            "{} of {cells} cells pass in {secs:.1} s; {infeasible} infeasible even cells skipped {:?}",
            cells - failures.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    );
    let c2 = outcome(
        route_failures.is_empty() && cells > 0,
        format!(
            "routes agree on {} of {cells} realizations",
            cells - route_failures.len()
        ),
    );
    (c1, c2)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    // (degree, group order, genus of the Galois closure) per row.
    let expected: [(usize, &str, i64); 8] = [
        (2, "2", 0),
        (2, "2", 1),
        (3, "6", 0),
        (3, "6", 1),
        (4, "8", 0),
        (4, "8", 1),
        (4, "24", 0),
        (6, "24", 1),
    ];
    let mut bad = Vec::new();
    for (i, (deg, order, genus)) in expected.iter().enumerate() {
        let r = verify_table2(i).unwrap();
        let ok = r.passed
            && r.degree == *deg
            && r.tuples > 0
            && r.orders == vec![order.to_string()]
            && r.element_orders_match
            && r.genus == Some(*genus)
            && galois_genus(order.parse().unwrap(), &r.galois_indices).unwrap() == *genus;
        if !ok {
            bad.push(format!("row {i}: {r:?}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < 300.0,
        format!("8 rows in {secs:.1} s {bad:?}"),
    )
}

/// `2g - 2 = -2m + sum m (1 - 1/e)` solved in integers.
fn genus_by_euler(m: i64, e: &[i64]) -> Option<i64> {
    let twice: i64 = -2 * m + e.iter().map(|&e| m - m / e).sum::<i64>() + 2;
    (e.iter().all(|&e| m % e == 0) && twice % 2 == 0).then_some(twice / 2)
}

fn criterion_4() -> Outcome {
    let cases: [(&str, i64, Vec<i64>, i64); 9] = [
        ("A", 7, vec![7, 7], 0),
        ("B", 10, vec![5, 2, 2], 0),
        ("C", 12, vec![2, 3, 3], 0),
        ("D", 24, vec![2, 3, 4], 0),
        ("E", 60, vec![2, 3, 5], 0),
        ("F", 8, vec![2, 2, 2, 2], 1),
        ("G", 8, vec![2, 4, 4], 1),
        ("H", 12, vec![2, 3, 6], 1),
        ("I", 9, vec![3, 3, 3], 1),
    ];
    let mut bad = Vec::new();
    for (case, m, e, g) in &cases {
        let r = verify_table3(case, None).unwrap();
        let indices: Vec<i64> = r.indices.iter().map(|&i| i as i64).collect();
        if !(r.passed && r.genus == *g && indices == *e && genus_by_euler(*m, e) == Some(*g)) {
            bad.push(format!("{case}: {r:?}"));
        }
    }
    for m in [5u64, 9, 12, 20] {
        let a = verify_table3("A", Some(m)).unwrap();
        let b = verify_table3("B", Some(2 * m)).unwrap();
        if !(a.passed && b.passed) {
            bad.push(format!("m = {m}"));
        }
    }
    outcome(bad.is_empty(), format!("9 cases {bad:?}"))
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let mut verified = 0;
    for row in &data().table4 {
        if row.witness == "search" {
            continue;
        }
        for ell in [9, 11] {
            let mut rng = ChaCha8Rng::seed_from_u64(0xacce55 ^ ell as u64);
            for _ in 0..200 {
                let params = random_witness_params(&row.id, ell, &mut rng).unwrap();
                let w = nonexistence_witness(&row.id, &params).unwrap();
                if w.verified() && w.k_in_conjugate_diagonal {
                    verified += 1;
                } else {
                    bad.push(format!("{} l={ell}", row.id));
                }
            }
        }
    }
    let f = f4n3_search(5).unwrap();
    let f_ok = f.primitive_with_alternating_square == 0
        && f.annotation.contains("not exhaustive at l >= 9");
    if !f_ok {
        bad.push(format!("F4.N3: {f:?}"));
    }
    let mut nodes = Vec::new();
    for id in ["F.N1", "H2.N1"] {
        let r = refute(id).unwrap();
        nodes.push(format!(
            "{id} {} nodes, {} transitive",
            r.nodes, r.transitive_tuples
        ));
        if !r.refuted || r.degree != 6 {
            bad.push(id.to_string());
        }
    }
    outcome(
        bad.is_empty() && verified == 4 * 2 * 200,
        format!(
            "{verified} witnesses; F4.N3 at l=5: {} tuples, {} primitive ({}); {}",
            f.tuples,
            f.primitive,
            f.annotation,
            nodes.join("; ")
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let check = |a: &Perm, bad: &mut Vec<String>| {
        let ell = a.degree();
        let x = WreathElement::swapped(a.clone(), Perm::identity(ell));
        let brute = rpi_bruteforce(&x, &CosetModel::Cyclic, DEFAULT_ORBIT_CAP)
            .unwrap()
            .rpi;
        // Odd cycles, counted from the cycle type.
        let odd = a.cycle_type().parts().iter().filter(|p| p.is_odd()).count() as i64;
        if brute != rpi_closed_form_t2(a) as i64 || brute != odd {
            bad.push(a.cycle_type().to_string());
        }
    };
    for ell in 1..=9 {
        for p in partitions(ell) {
            check(&CycleType::new(p).unwrap().canonical_perm(), &mut bad);
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let ell = rng.gen_range(2..=30);
        check(&random_perm(ell, &mut rng), &mut bad);
        checked += 1;
    }
    outcome(bad.is_empty(), format!("{checked} elements {bad:?}"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0;
    for k in 0..1000 {
        let ell = 5 + k % 5;
        let t = 2 + (k / 5) % 3;
        let x = random_element(ell, t, &mut rng);
        let (y, z) = x.reduced_form(None).unwrap();
        let mut reps = Vec::new();
        let mut seen = vec![false; t];
        for i in 0..t {
            if !seen[i] {
                reps.push(i);
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = x.top.apply(j);
                }
            }
        }
        let off_trivial = (0..t).all(|i| reps.contains(&i) || y.base[i].is_identity());
        let products_match = reps.iter().all(|&r| {
            let mut acc = Perm::identity(ell);
            let mut j = r;
            loop {
                acc = acc.then(&x.base[j]);
                j = x.top.apply(j);
                if j == r {
                    break;
                }
            }
            acc.cycle_type() == y.base[r].cycle_type()
        });
        if !(x.conj(&z) == y && y.top == x.top && off_trivial && products_match) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("1000 elements, {bad} failures"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let a = random_perm(7, &mut rng);
    let b: Vec<Perm> = (0..3).map(|_| random_perm(7, &mut rng)).collect();
    let xs = dihedral_example(&a, [&b[0], &b[1], &b[2]]).unwrap();
    let m = reduced_multiset(&xs).unwrap();
    let example_ok = m.certificate_text() == "a*b1*c2*b2*c1" && verify_multiset(&m, &xs);
    let mut bad = Vec::new();
    let mut count = 0;
    for t in [3, 4] {
        for k in 0..100 {
            let xs = random_lgy_tuple(7, t, k % 3, &mut rng).unwrap();
            let ok = reduced_multiset(&xs).is_ok_and(|m| {
                let h = hatf_genus(&m).unwrap();
                let orbit_sum: usize = m.entries.iter().map(|e| 7 - e.element.num_cycles()).sum();
                verify_multiset(&m, &xs) && m.transitive && h.bound_holds && 2 * 7 - 2 <= orbit_sum
            });
            if !ok {
                bad.push(format!("t={t} k={k}"));
            }
            count += 1;
        }
    }
    outcome(
        example_ok && bad.is_empty(),
        format!(
            "certificate {}; {count} tuples {bad:?}",
            m.certificate_text()
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let ell = rng.gen_range(2..=40);
        let x = random_perm(ell, &mut rng);
        let y = random_perm(ell, &mut rng);
        let f = abhyankar_fiber(&x.cycle_type(), &y.cycle_type()).unwrap();
        let sum: usize = x
            .cycle_type()
            .parts()
            .iter()
            .flat_map(|&r| {
                y.cycle_type()
                    .parts()
                    .iter()
                    .map(move |&s| r.gcd(&s) * r.lcm(&s))
                    .collect::<Vec<_>>()
            })
            .sum();
        if f.total_degree() != ell * ell || sum != ell * ell {
            bad.push(format!("{} x {}", x.cycle_type(), y.cycle_type()));
        }
    }
    let mut pairs = 0;
    for ell in 1..=8 {
        let ps = partitions(ell);
        for p in &ps {
            for q in &ps {
                let (e1, e2) = (
                    CycleType::new(p.clone()).unwrap(),
                    CycleType::new(q.clone()).unwrap(),
                );
                let f = abhyankar_fiber(&e1, &e2).unwrap();
                let mut predicted = f.as_partition().parts().to_vec();
                predicted.sort_unstable_by(|a, b| b.cmp(a));
                if predicted != fiber_lengths(&e1.canonical_perm(), &e2.canonical_perm()) {
                    bad.push(format!("{e1} x {e2}"));
                }
                pairs += 1;
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("200 random pairs, {pairs} enumerated pairs {bad:?}"),
    )
}

#[test]
fn acceptance() {
    let (c1, c2) = criteria_1_and_2();
    let results = [
        ("1 table 1 sweep, l in 9..16", c1),
        ("2 genus routes agree", c2),
        ("3 table 2 reproduction", criterion_3()),
        ("4 table 3 genera", criterion_4()),
        ("5 nonexistence suite", criterion_5()),
        ("6 orbit count closed form", criterion_6()),
        ("7 reduced forms", criterion_7()),
        ("8 reduced multisets", criterion_8()),
        ("9 fiber products", criterion_9()),
    ];
    for (name, o) in &results {
        println!(
            "{} criterion {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    let failed: Vec<&str> = results
        .iter()
        .filter(|(_, o)| !o.passed)
        .map(|(n, _)| *n)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
