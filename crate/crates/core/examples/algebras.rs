//! Algebras as marked-arrow-preserving functors between categories of
//! operators, and the universal property of the diagram operad.
//!
//! Run with `cargo run --release --example algebras`.

use opcat::fincat::chain;
use opcat::operad::{sample_operad, terminal_com, trivial_operad};
use opcat::verify::{alg_category, inert_functor_bijection_check, universal_property_check, VERIFY_BUDGET};

fn main() -> opcat::Result<()> {
    let (triv, c) = (trivial_operad(), sample_operad());
    let alg = alg_category(&triv, &c, 2, VERIFY_BUDGET)?;
    println!("algebras of triv in sample: {}", alg.algebras.functors.len());
    print!("{}", inert_functor_bijection_check(&triv, &c, 2, VERIFY_BUDGET)?);

    let report = universal_property_check(&chain(1), &terminal_com(), &c, 2, VERIFY_BUDGET)?;
    print!("{report}");
    Ok(())
}
