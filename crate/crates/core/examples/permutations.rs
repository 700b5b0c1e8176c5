//! Permutations and permutation groups: parsing, left-to-right products,
//! cycle types, group orders and the primitivity test.
//!
//! Usage: `cargo run --example permutations`

use wreathcover::{CycleType, GroupHandle, Perm};

fn main() -> wreathcover::Result<()> {
    let p = Perm::parse("(1,2,3)(4,5)", Some(6))?;
    let q = Perm::parse("(3,4,6)", Some(6))?;
    println!("p = {}, q = {}", p.to_cycle_string(), q.to_cycle_string());
    println!("pq = {} (apply p, then q)", p.then(&q).to_cycle_string());
    println!("p^q = {}", p.conj(&q).to_cycle_string());
    println!(
        "type of pq: {}, order {}",
        p.then(&q).cycle_type(),
        p.then(&q).order()
    );

    let ct = CycleType::parse("[3,2,1]")?;
    println!("class {ct} in S_6 has {} elements", ct.class_size());

    let g = GroupHandle::new(6, vec![p.clone(), q.clone()])?;
    println!(
        "<p, q>: order {}, transitive {}, primitive {}",
        g.order(),
        g.is_transitive(),
        g.is_primitive()?
    );

    // The dihedral group of the hexagon is imprimitive.
    let r = Perm::parse("(1,2,3,4,5,6)", Some(6))?;
    let f = Perm::parse("(2,6)(3,5)", Some(6))?;
    let d = GroupHandle::new(6, vec![r, f])?;
    let blocks: Option<Vec<Vec<usize>>> = d.primitivity()?.map(|b| {
        b.blocks
            .iter()
            .map(|blk| blk.iter().map(|p| p + 1).collect())
            .collect()
    });
    println!("D_12 on 6 points: order {}, blocks {:?}", d.order(), blocks);
    Ok(())
}
