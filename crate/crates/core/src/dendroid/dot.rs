use std::fmt::Write;

use super::Forest;
use crate::fincat::quote;

/// Graphviz description of a forest. Edges of the forest become point
/// nodes labelled by name, vertices become circles, and each input or
/// output relation becomes a graph edge pointing towards the root.
pub fn forest_to_dot(name: &str, f: &Forest) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for e in 0..f.edge_count() {
        writeln!(out, "  {} [shape=plaintext];", quote(&format!("e:{}", f.edge_name(e)))).unwrap();
    }
    for v in f.vertices() {
        let node = quote(&format!("v:{}", v.name));
        writeln!(out, "  {node} [shape=circle, label={}];", quote(&v.name)).unwrap();
        for &e in &v.inputs {
            writeln!(out, "  {} -> {node};", quote(&format!("e:{}", f.edge_name(e)))).unwrap();
        }
        writeln!(out, "  {node} -> {};", quote(&format!("e:{}", f.edge_name(v.output)))).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendroid::binary_corolla;

    #[test]
    fn corolla_has_three_relations() {
        let dot = forest_to_dot("C", &binary_corolla());
        assert_eq!(dot.matches("->").count(), 3);
        assert!(dot.contains("\"v:v\" -> \"e:r\""));
    }
}
