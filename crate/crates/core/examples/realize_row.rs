//! Realizes one table 1 type and prints the tuple and every check.
//!
//! Usage: `cargo run --release --example realize_row -- <type> <l> [a] [default|even]`

use wreathcover::tables::{verify_row, Variant};

fn main() -> wreathcover::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let id = args.first().map(String::as_str).unwrap_or("F4.4");
    let ell: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(9);
    let a: Option<usize> = args.get(2).and_then(|s| s.parse().ok());
    let variant: Variant = match args.iter().find(|s| *s == "even" || *s == "default") {
        Some(v) => v.parse()?,
        None => Variant::Default,
    };
    let rep = verify_row(id, ell, a, variant)?;
    for x in rep.tuple.iter().flatten() {
        println!("  {x}");
    }
    println!(
        "{id} l={ell} {variant}: {} construction, genus {}, group {}, order {}",
        rep.construction.as_deref().unwrap_or("-"),
        rep.genus_tuple
            .map(|g| g.to_string())
            .unwrap_or_else(|| "-".into()),
        rep.group.map(|g| g.as_str()).unwrap_or("-"),
        rep.group_order.as_deref().unwrap_or("-")
    );
    println!(
        "{}",
        if rep.passed {
            "passed".to_string()
        } else {
            rep.failures.join("; ")
        }
    );
    Ok(())
}
