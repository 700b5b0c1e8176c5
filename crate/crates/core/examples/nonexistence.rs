//! Refutes the table 4 types: random parameter draws for each type, each
//! with a verified witness forcing `K` into a conjugate diagonal, plus the
//! exhaustive small-degree evidence for `F4.N3`.
//!
//! Usage: `cargo run --release --example nonexistence -- [draws]`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wreathcover::tables::{f4n3_search, nonexistence_witness, random_witness_params};

fn main() -> wreathcover::Result<()> {
    let draws: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(50);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for id in ["I1A.N1", "I1A.N2", "F4.N1", "F4.N2"] {
        for ell in [9, 11] {
            let mut verified = 0;
            for _ in 0..draws {
                let params = random_witness_params(id, ell, &mut rng)?;
                let w = nonexistence_witness(id, &params)?;
                if w.verified() {
                    verified += 1;
                } else {
                    println!("{id} l={ell}: unverified {:?}", w.relations);
                }
            }
            println!("{id:<7} l={ell:<3} {verified}/{draws} witnesses verified");
        }
    }
    let rep = f4n3_search(5)?;
    println!(
        "F4.N3   l=5   {} tuples, {} transitive, {} primitive, {} with A_l^2 ({})",
        rep.tuples,
        rep.transitive,
        rep.primitive,
        rep.primitive_with_alternating_square,
        rep.annotation
    );
    Ok(())
}
