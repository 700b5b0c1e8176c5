//! The fiber of a fiber product of two covers over a point: for parts `r1`
//! of `e1` and `r2` of `e2` there are `gcd(r1, r2)` points of index
//! `lcm(r1, r2)`, checked here against the orbits of `(p1, p2)` on
//! `Delta x Delta`.
//!
//! Usage: `cargo run --example abhyankar -- [l]`

use wreathcover::permcore::partitions;
use wreathcover::ramify::abhyankar_fiber;
use wreathcover::{CycleType, Perm};

/// Cycle type of `(p1, p2)` acting coordinatewise on pairs.
fn pair_action_type(p1: &Perm, p2: &Perm) -> CycleType {
    let n = p1.degree();
    let images: Vec<usize> = (0..n * n)
        .map(|i| p1.apply(i / n) * n + p2.apply(i % n))
        .collect();
    Perm::from_images(images)
        .expect("a permutation")
        .cycle_type()
}

fn main() -> wreathcover::Result<()> {
    let ell: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let types: Vec<CycleType> = partitions(ell)
        .into_iter()
        .map(CycleType::new)
        .collect::<wreathcover::Result<_>>()?;
    let mut agree = 0;
    for e1 in &types {
        for e2 in &types {
            let fiber = abhyankar_fiber(e1, e2)?;
            assert_eq!(fiber.total_degree(), ell * ell);
            if fiber.as_partition() == pair_action_type(&e1.canonical_perm(), &e2.canonical_perm())
            {
                agree += 1;
            }
        }
    }
    println!(
        "l = {ell}: {agree} of {} pairs of cycle types agree",
        types.len() * types.len()
    );
    let e1 = CycleType::parse("[4,2]")?;
    let e2 = CycleType::parse("[3,3]")?;
    println!("{e1} x {e2}: {}", abhyankar_fiber(&e1, &e2)?.as_partition());
    Ok(())
}
