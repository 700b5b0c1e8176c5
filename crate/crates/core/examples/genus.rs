//! Genus computations: Riemann-Hurwitz for a tuple, the two routes for a
//! `t = 2` product tuple, and the genus of a Galois cover from its indices.
//!
//! Usage: `cargo run --example genus`

use wreathcover::ramify::{galois_genus, genus_from_tuple, genus_from_wreath_tuple, T2Data};
use wreathcover::tables::{realize, Variant};
use wreathcover::Perm;

fn main() -> wreathcover::Result<()> {
    // Three branch cycles of degree 4: a 4-cycle, a double transposition and
    // a transposition give the dihedral genus 0 cover.
    let x = Perm::parse("(1,2,3,4)", Some(4))?;
    let y = Perm::parse("(1,3)", Some(4))?;
    let z = x.then(&y).inverse();
    println!(
        "degree 4 cover: genus {}",
        genus_from_tuple(&[x, y, z.clone()])?.genus
    );
    println!("type of the third cycle: {}", z.cycle_type());

    let real = realize("I1.1", 9, Some(2), Variant::Default)?;
    let by_embedding = genus_from_wreath_tuple(&real.tuple)?.genus;
    let by_formula = T2Data::from_tuple(&real.tuple)?.genus()?;
    println!("I1.1 at l = 9, a = 2: genus {by_embedding} on Delta^2, {by_formula} by the swap-point formula");

    for (m, idx) in [
        (8u64, vec![2u64, 4, 4]),
        (24, vec![2, 3, 4]),
        (12, vec![2, 3, 6]),
    ] {
        println!(
            "Galois cover of degree {m} with indices {idx:?}: genus {}",
            galois_genus(m, &idx)?
        );
    }
    Ok(())
}
