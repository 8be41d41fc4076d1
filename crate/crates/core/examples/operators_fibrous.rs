//! Categories of operators over `Fin_*` and the fibrousness axioms,
//! including the deliberately broken examples that must be rejected.
//!
//! Run with `cargo run --example operators_fibrous`.

use opcat::operad::{fibrous_check, mutation_corpus, operator_category, terminal_com};

fn main() {
    let x = operator_category(&terminal_com(), 3);
    let marked = x.marked.iter().filter(|&&m| m).count();
    println!("operators of Com up to <3>: {} objects, {} arrows, {marked} marked", x.total.object_count(), x.total.arrow_count());
    print!("{}", fibrous_check(&x));

    for (name, broken) in mutation_corpus() {
        match fibrous_check(&broken).failure {
            Some((axiom, _)) => println!("{name}: rejected by {axiom}"),
            None => println!("{name}: accepted"),
        }
    }
}
