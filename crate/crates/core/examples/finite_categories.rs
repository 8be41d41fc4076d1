//! Small finite categories: products, powers, functor categories and
//! isomorphism search.
//!
//! Run with `cargo run --example finite_categories`.

use opcat::fincat::{
    category_iso, category_to_dot, chain, check_laws, functor_category, maximal_groupoid, power, product,
    walking_arrow, walking_iso, DEFAULT_BUDGET,
};

fn main() -> opcat::Result<()> {
    let i2 = chain(2);
    println!("[2] has {} objects and {} arrows", i2.object_count(), i2.arrow_count());
    for f in i2.arrows() {
        println!("  {}: {} -> {}", i2.arrow_name(f), i2.object_name(i2.source(f)), i2.object_name(i2.target(f)));
    }

    let square = product(&walking_arrow(), &walking_arrow());
    check_laws(&square)?;
    println!("arrow x arrow: {} objects, {} arrows", square.object_count(), square.arrow_count());

    // Functors from the walking arrow into C are the arrows of C.
    let arrows_of_i2 = functor_category(&walking_arrow(), &i2, DEFAULT_BUDGET)?;
    println!("Fun(arrow, [2]) has {} objects", arrows_of_i2.category.object_count());

    let iso = walking_iso();
    println!("walking iso: {} invertible arrows", maximal_groupoid(&iso).len());
    let squared = power(&iso, 2);
    let found = category_iso(&squared, &product(&iso, &iso), DEFAULT_BUDGET)?;
    println!("iso^2 = iso x iso: {}", found.is_some());
    let found = category_iso(&iso, &walking_arrow(), DEFAULT_BUDGET)?;
    println!("iso = arrow: {}", found.is_some());

    print!("{}", category_to_dot("I2", &i2));
    Ok(())
}
