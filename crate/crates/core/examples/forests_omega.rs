//! Forests, the free operads they generate, their morphisms, and the
//! functor that forgets the levels of a level forest.
//!
//! Run with `cargo run --example forests_omega`.

use opcat::dendroid::{
    corolla, forest_to_dot, free_operad, linear_tree, omega, omega_functoriality_check, phi_hom, unit_tree,
    LevelForest,
};
use opcat::operad::check_operad_laws;
use opcat::verify::VERIFY_BUDGET;

fn main() -> opcat::Result<()> {
    let t = linear_tree(2);
    let o = free_operad(&t);
    let laws = check_operad_laws(&o, 3)?;
    println!("free operad on the linear tree with 3 edges: {} operations", laws.operations);
    print!("{t}");

    let homs = phi_hom(&unit_tree(), &corolla(2), VERIFY_BUDGET)?;
    println!("morphisms from the unit tree into the 2-corolla: {}", homs.len());

    let s: LevelForest = "3->2:[1,1,2];2->1:[0,1]".parse()?;
    let f = omega(&s);
    println!("{s} forgets to {} edges, {} vertices, {} roots", f.edge_count(), f.vertex_count(), f.roots().len());
    print!("{}", forest_to_dot("omega", &f));

    print!("{}", omega_functoriality_check(2, 2)?);
    Ok(())
}
