//! Reduced product-1 multisets: the `t = 3` dihedral example with its
//! certificate, then random tuples with dihedral or `S_4` image, normalized
//! by swap moves and reduced.
//!
//! Usage: `cargo run --release --example reduced_multiset -- [tuple-file-out]`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wreathcover::reducer::{
    dihedral_example, hatf_genus, normalize_lgy, random_lgy_tuple, reduced_multiset, swap_move,
    verify_multiset,
};
use wreathcover::search::random_perm;
use wreathcover::wreath::TupleFile;

fn main() -> wreathcover::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = random_perm(7, &mut rng);
    let b: Vec<_> = (0..3).map(|_| random_perm(7, &mut rng)).collect();
    let xs = dihedral_example(&a, [&b[0], &b[1], &b[2]])?;
    let m = reduced_multiset(&xs)?;
    println!("dihedral example: certificate {}", m.certificate_text());
    for e in &m.entries {
        println!("  {:<3} = {}", e.label, e.element.to_cycle_string());
    }
    println!("  valid: {}", verify_multiset(&m, &xs));
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, TupleFile::new(xs)?.to_json() + "\n")?;
        println!("  tuple written to {path}");
    }

    for t in [3, 4] {
        let mut ok = 0;
        for k in 0..20 {
            let mut xs = random_lgy_tuple(7, t, 1, &mut rng)?;
            // Scramble by swap moves, then restore the normal form.
            let last = xs.len() - 1;
            for i in [0, 1, 2, 1, 0] {
                swap_move(&mut xs, i % last);
            }
            let ys = normalize_lgy(&xs)?;
            let m = reduced_multiset(&ys)?;
            let h = hatf_genus(&m)?;
            if verify_multiset(&m, &ys) && h.bound_holds {
                ok += 1;
            }
            if k == 0 {
                println!(
                    "t = {t}: s = {}, certificate {}, genus {} with index sum {}",
                    m.s,
                    m.certificate_text(),
                    h.genus.genus,
                    h.index_sum
                );
            }
        }
        println!("t = {t}: {ok}/20 multisets verified");
    }
    Ok(())
}
