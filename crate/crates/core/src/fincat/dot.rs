use std::fmt::Write;

use super::FinCategory;

/// Graphviz description: one node per object, one edge per non-identity
/// arrow.
pub fn category_to_dot(name: &str, c: &FinCategory) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for x in c.objects() {
        writeln!(out, "  {};", quote(c.object_name(x))).unwrap();
    }
    for f in c.arrows().filter(|&f| !c.is_identity(f)) {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(c.object_name(c.source(f))),
            quote(c.object_name(c.target(f))),
            quote(c.arrow_name(f))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub(crate) fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::chain;

    #[test]
    fn dot_lists_non_identity_arrows() {
        let dot = category_to_dot("I2", &chain(2));
        assert_eq!(dot.matches("->").count(), 3);
        assert!(dot.contains("\"a\" -> \"c\" [label=\"gf\"]"));
    }
}
