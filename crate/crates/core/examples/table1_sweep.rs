//! Realizes and verifies every table 1 row at every valid `(l, a)` in a
//! degree range, printing one line per cell.
//!
//! Usage: `cargo run --release --example table1_sweep -- [lo] [hi]`

use std::time::Instant;

use wreathcover::tables::{grid, verify_row};

fn main() -> wreathcover::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let lo = args.first().copied().unwrap_or(9);
    let hi = args.get(1).copied().unwrap_or(lo);
    let cells = grid(lo, hi)?;
    let mut failed = 0;
    let start = Instant::now();
    for (id, ell, a, variant) in &cells {
        let t = Instant::now();
        let rep = verify_row(id, *ell, *a, *variant)?;
        if !rep.passed {
            failed += 1;
        }
        println!(
            "{:<8} l={:<3} a={:<4} {:<8} {:<5} {:<9} g={:?} group={:?} {:.2}s {}",
            id,
            ell,
            a.map_or("-".to_string(), |a| a.to_string()),
            variant.to_string(),
            if rep.passed { "ok" } else { "FAIL" },
            rep.construction.as_deref().unwrap_or("-"),
            rep.genus_tuple,
            rep.group,
            t.elapsed().as_secs_f64(),
            rep.failures.join("; "),
        );
    }
    println!(
        "{} cells, {} failed, {:.1}s",
        cells.len(),
        failed,
        start.elapsed().as_secs_f64()
    );
    Ok(())
}
