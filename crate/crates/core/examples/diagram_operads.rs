//! The diagram operad `O_K` of a category `K` and an operad `O`, compared
//! with the pullback of `K^⊔` and `O` over the commutative operad.
//!
//! Run with `cargo run --example diagram_operads`.

use opcat::fincat::chain;
use opcat::operad::{check_operad_laws, diagram_operad, product_over_com, sample_operad, sqcup};
use opcat::verify::{operad_iso, VERIFY_BUDGET};

fn main() -> opcat::Result<()> {
    let k = chain(1);
    let o = sample_operad();
    let d = diagram_operad(&k, &o);
    println!("colors of O_K: {}", d.colors().join(", "));
    let laws = check_operad_laws(&d, 2)?;
    println!("{} operations up to arity 2, {} law instances checked", laws.operations, laws.checks);

    let p = product_over_com(&sqcup(&k), &o);
    match operad_iso(&d, &p, 2, VERIFY_BUDGET)? {
        Some(w) => {
            w.check()?;
            print!("{w}");
        }
        None => println!("not isomorphic"),
    }
    Ok(())
}
