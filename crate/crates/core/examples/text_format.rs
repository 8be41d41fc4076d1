//! Reading and writing the workspace text format, and running a command
//! the way the `opcat` binary does.
//!
//! Run with `cargo run --example text_format`.

use opcat::cli::{execute, parse_workspace, write_workspace, Invocation};

const WORKSPACE: &str = "\
% composites not written out are derived from the others
category C
obj a b c
arr f: a -> b
arr g: b -> c
arr h: a -> c

operad Z2
color x
unit x = e
op t: (x) -> x
cmp t(t) = e

forest V
edge l r root
vertex v: [l, r] -> root
";

fn main() -> opcat::Result<()> {
    let ws = parse_workspace(WORKSPACE)?;
    let c = ws.category("C").expect("declared");
    let (f, g) = (c.arrows().find(|&x| c.arrow_name(x) == "f").unwrap(), c.arrows().find(|&x| c.arrow_name(x) == "g").unwrap());
    println!("g.f = {}", c.arrow_name(c.compose(g, f).expect("composable")));
    print!("{}", write_workspace(&ws, 2));

    let out = execute(&Invocation::new("phi-hom", &["F=eta", "G=corolla(2)"])?);
    print!("{}", out.report);
    println!("exit code {}", out.code);
    Ok(())
}
