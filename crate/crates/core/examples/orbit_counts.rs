//! Ramification of the map from the product cover to its Galois quotient,
//! `m #Orb(Delta^I) - #Orb(Delta^I x M)`, by explicit orbit enumeration,
//! against the closed form for `(a,1)s`: the number of odd cycles of `a`.
//!
//! Usage: `cargo run --release --example orbit_counts -- [l]`

use wreathcover::orbitcount::{rpi_bruteforce, rpi_closed_form_t2, CosetModel, DEFAULT_ORBIT_CAP};
use wreathcover::permcore::partitions;
use wreathcover::{CycleType, Perm, WreathElement};

fn main() -> wreathcover::Result<()> {
    let ell: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let id = Perm::identity(ell);
    for parts in partitions(ell) {
        let ct = CycleType::new(parts)?;
        let a = ct.canonical_perm();
        let x = WreathElement::swapped(a.clone(), id.clone());
        let rec = rpi_bruteforce(&x, &CosetModel::Cyclic, DEFAULT_ORBIT_CAP)?;
        let closed = rpi_closed_form_t2(&a);
        println!(
            "a of type {:<16} orbits {:>3} / {:>3}  R = {}  odd cycles {}{}",
            ct.to_string(),
            rec.orbits_delta,
            rec.orbits_product,
            rec.rpi,
            closed,
            if rec.rpi == closed as i64 {
                ""
            } else {
                "  MISMATCH"
            }
        );
    }
    Ok(())
}
