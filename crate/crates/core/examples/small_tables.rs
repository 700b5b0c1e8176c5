//! The small-degree tables by exhaustive search: genus at most 1 actions of
//! degree `t` with their groups, Galois genus of the listed index types, and
//! the degree 6 types with no primitive tuple.
//!
//! Usage: `cargo run --release --example small_tables`

use std::time::Instant;

use wreathcover::tables::{data, refute, verify_table2, verify_table3};

fn main() -> wreathcover::Result<()> {
    for i in 0..data().table2.len() {
        let start = Instant::now();
        let r = verify_table2(i)?;
        println!(
            "table 2 degree {} {:<28} {:<12} tuples {:>3} orders {} genus {} {} ({:.2?})",
            r.degree,
            r.classes.join(" "),
            r.group,
            r.tuples,
            r.orders.join(" "),
            r.genus.map(|g| g.to_string()).unwrap_or_else(|| "-".into()),
            if r.passed { "ok" } else { "FAIL" },
            start.elapsed()
        );
    }
    for row in &data().table3 {
        let r = verify_table3(&row.case, None)?;
        println!(
            "table 3 case {} m={} indices {:?} genus {}",
            r.case, r.m, r.indices, r.genus
        );
    }
    for r in &data().refutations {
        let res = refute(&r.id)?;
        println!(
            "{} degree {} {}: refuted {} after {} nodes",
            res.id,
            res.degree,
            res.classes.join(" "),
            res.refuted,
            res.nodes
        );
    }
    Ok(())
}
