//! The operad `K^⊔` of a category: its fiber over `<n>` is the power
//! `K^n`, and base-preserving functors into it correspond to functors out
//! of the pullback along the category of pairs.
//!
//! Run with `cargo run --example fiber_law`.

use opcat::cli::parse_workspace;
use opcat::fincat::{category_iso, power, saturate_marking, walking_iso, FunctorF};
use opcat::finstar::FinStar;
use opcat::operad::{sqcup, sqcup_fiber, sqcup_representability_check};
use opcat::verify::VERIFY_BUDGET;

fn main() -> opcat::Result<()> {
    let k = walking_iso();
    let o = sqcup(&k);
    let ops = o.all_operations(2);
    println!("K^⊔ for the walking isomorphism: {} operations of arity <= 2", ops.len());
    for p in ops.iter().filter(|p| p.arity() == 2).take(4) {
        println!("  {}", o.describe(p));
    }

    for n in 0..=3 {
        let iso = category_iso(&sqcup_fiber(&k, n), &power(&k, n), VERIFY_BUDGET)?;
        println!("fiber over <{n}> is K^{n}: {}", iso.is_some());
    }

    // B is a single arrow x -> y lying over the inert map <2> -> <1>.
    let base = FinStar::new(2);
    let b = parse_workspace("category B\nobj x y\narr f: x -> y\n")?.categories.remove(0).1;
    let down = base.arrow(&"2->1:[1,0]".parse()?).expect("map in range");
    let objects = vec![base.object(2), base.object(1)];
    let arrows = b
        .arrows()
        .map(|a| if b.is_identity(a) { base.category.identity(objects[b.source(a)]) } else { down })
        .collect();
    let q = FunctorF::new(b.clone(), base.category.clone(), objects, arrows)?;
    let seed: Vec<_> = b.arrows().collect();
    let marked = saturate_marking(&b, &seed);
    let r = sqcup_representability_check(&marked, &q, &base, &k, VERIFY_BUDGET)?;
    println!("functors B -> K^⊔ over the base: {}; functors out of the pullback: {}", r.over_sqcup, r.over_gamma);
    Ok(())
}
