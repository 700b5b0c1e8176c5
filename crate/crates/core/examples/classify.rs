//! Product-type analysis of a tuple: transitivity on `I` and `Delta^I`, the
//! kernel `K`, primitivity by the block test and by the `K >= A_l^t`
//! criterion, and the group of a `t = 2` tuple.
//!
//! Usage: `cargo run --release --example classify -- [type] [l]`

use wreathcover::monodromy::is_product_type;
use wreathcover::tables::{realize, valid_parameters, Variant};

fn main() -> wreathcover::Result<()> {
    let mut args = std::env::args().skip(1);
    let id = args.next().unwrap_or_else(|| "F2.1".into());
    let ell: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(9);
    let a = valid_parameters(&id, ell)?
        .into_iter()
        .next()
        .ok_or_else(|| wreathcover::Error::Congruence(format!("{id} is not valid at l = {ell}")))?;
    let real = realize(&id, ell, a, Variant::Default)?;
    for x in &real.tuple {
        println!("  {x}");
    }
    let r = is_product_type(&real.tuple)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&r).expect("reports serialize")
    );
    Ok(())
}
