//! Elements of `S_l wr S_t` in product action: products, the embedding into
//! `S_{l^t}`, reduced forms and the `t = 2` class descriptors.
//!
//! Usage: `cargo run --example wreath_elements`

use wreathcover::wreath::TupleFile;
use wreathcover::{ClassDescriptor, Perm, WreathElement};

fn main() -> wreathcover::Result<()> {
    let a = Perm::parse("(1,2,3,4,5)", Some(5))?;
    let b = Perm::parse("(1,2)", Some(5))?;
    let x = WreathElement::swapped(a.clone(), b.clone());
    println!("x = {x}");
    println!(
        "x^2 = {} (the base of a swap squares to (ab, ba))",
        x.then(&x)
    );
    println!("class of x: {}", ClassDescriptor::of(&x)?);
    println!("cycle type of x on Delta^2: {}", x.embed().cycle_type());

    let (y, z) = x.reduced_form(None)?;
    println!("reduced form y = {y}, with x^z = y for z = {z}");
    assert_eq!(x.conj(&z), y);

    // A t = 3 element: the base entry at the representative is the orbit product.
    let top = Perm::parse("(1,2,3)", Some(3))?;
    let c = Perm::parse("(1,3)", Some(5))?;
    let w = WreathElement::new(vec![a.clone(), b.clone(), c.clone()], top)?;
    let (wy, _) = w.reduced_form(None)?;
    println!("w = {w}\nreduced w = {wy}");
    assert_eq!(wy.base[0], a.then(&b).then(&c));

    let pair = WreathElement::pair(a.clone(), a.inverse());
    let file = TupleFile::new(vec![pair.clone(), pair.inverse()])?;
    println!("tuple file:\n{}", file.to_json());
    Ok(())
}
