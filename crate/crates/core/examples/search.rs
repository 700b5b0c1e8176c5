//! Backtracking search for product-1 tuples in given classes, with
//! transitivity and primitivity filters.
//!
//! Usage: `cargo run --release --example search -- [degree] [classes]`
//! e.g. `-- 6 "[6];[3,3];[2,1^4]"`

use wreathcover::search::{exists_primitive_tuple, find_tuples, SearchQuery};
use wreathcover::GroupHandle;

fn main() -> wreathcover::Result<()> {
    let mut args = std::env::args().skip(1);
    let degree: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let classes_text = args.next().unwrap_or_else(|| "[4];[2,2];[2,1,1]".into());
    let classes = SearchQuery::parse_classes(degree, &classes_text)?;
    let res = find_tuples(&SearchQuery::new(degree, classes.clone()).transitive())?;
    println!(
        "{classes_text} in S_{degree}: {} transitive tuples ({} nodes)",
        res.tuples.len(),
        res.nodes
    );
    for t in res.tuples.iter().take(10) {
        let cycles: Vec<String> = t.iter().map(|p| p.to_cycle_string()).collect();
        let order = GroupHandle::new(degree, t.clone())?.order();
        println!("  {}  group order {order}", cycles.join(" "));
    }
    let prim = exists_primitive_tuple(&SearchQuery::new(degree, classes))?;
    println!(
        "primitive tuple exists: {} ({} nodes, {} transitive tuples)",
        prim.exists, prim.nodes, prim.transitive_tuples
    );
    Ok(())
}
