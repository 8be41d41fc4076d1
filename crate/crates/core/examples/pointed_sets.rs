//! Pointed finite sets `<n>`: composition, the inert/active factorization,
//! and the category of pairs `(<n>, i)` lying over them.
//!
//! Run with `cargo run --example pointed_sets`.

use opcat::finstar::{compose_pointed, gamma_star_truncated, inert_active_factorize, FinStar, PointedMap};

fn main() -> opcat::Result<()> {
    let f: PointedMap = "3->2:[1,0,2]".parse()?;
    let fold = PointedMap::fold(2);
    let g = compose_pointed(&f, &fold)?;
    println!("{f} then {fold} is {g}");

    for h in ["3->2:[1,0,2]", "2->1:[1,1]", "3->1:[0,1,1]"] {
        let h: PointedMap = h.parse()?;
        let (inert, active) = inert_active_factorize(&h);
        println!("{h} = {inert} then {active} ({:?})", h.classify());
    }

    let base = FinStar::new(3);
    let inert = base.inert_arrows().count();
    println!("Fin_* up to <3>: {} arrows, {inert} inert", base.category.arrow_count());

    let (gamma, pi) = gamma_star_truncated(3);
    println!("pairs (<n>, i) with n <= 3: {} objects, {} arrows", gamma.object_count(), gamma.arrow_count());
    for n in 0..=3 {
        let over = gamma.objects().filter(|&x| pi.objects[x] == base.object(n)).count();
        println!("  over <{n}>: {over}");
    }
    Ok(())
}
