//! Forests, the free operads they generate, morphisms between those
//! operads, and the functor `ω` from simplices of `Fin_*` to forests.

mod dot;
mod free;
mod morphism;
mod omega;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

pub use dot::forest_to_dot;
pub use free::free_operad;
pub use morphism::{forest_iso, phi_hom, ForestMorphism};
pub use omega::{
    monotone_maps, omega, omega_functoriality_check, omega_on_arrow, LevelForest, OmegaReport, Variance,
    OMEGA_VARIANCE,
};

pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub inputs: Vec<EdgeId>,
    pub output: EdgeId,
}

/// A finite forest. Each edge is the output of at most one vertex and an
/// input of at most one vertex, and there are no cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    edges: Vec<String>,
    vertices: Vec<Vertex>,
    /// Vertex whose output is the edge.
    above: Vec<Option<usize>>,
    /// Vertex having the edge among its inputs.
    below: Vec<Option<usize>>,
}

impl Forest {
    /// `vertices` are `(name, inputs, output)` in edge names.
    pub fn new(edges: Vec<String>, vertices: Vec<(String, Vec<String>, String)>) -> Result<Forest> {
        let mut index = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::InvalidForest(format!("edge `{e}` declared twice")));
            }
        }
        let find = |e: &String| index.get(e).copied().ok_or_else(|| Error::UnknownEdge(e.clone()));
        let mut vs = Vec::with_capacity(vertices.len());
        for (name, inputs, output) in vertices {
            let inputs = inputs.iter().map(find).collect::<Result<Vec<_>>>()?;
            let output = find(&output)?;
            vs.push(Vertex { name, inputs, output });
        }
        Forest::from_parts(edges, vs)
    }

    pub(crate) fn from_parts(edges: Vec<String>, vertices: Vec<Vertex>) -> Result<Forest> {
        let n = edges.len();
        let mut above = vec![None; n];
        let mut below = vec![None; n];
        for (v, vx) in vertices.iter().enumerate() {
            if above[vx.output].replace(v).is_some() {
                return Err(Error::InvalidForest(format!("edge `{}` is the output of two vertices", edges[vx.output])));
            }
            for &e in &vx.inputs {
                if below[e].replace(v).is_some() {
                    return Err(Error::InvalidForest(format!("edge `{}` is an input of two vertices", edges[e])));
                }
            }
        }
        for start in 0..n {
            let mut e = start;
            let mut steps = 0;
            while let Some(v) = below[e] {
                e = vertices[v].output;
                steps += 1;
                if steps > vertices.len() {
                    return Err(Error::InvalidForest(format!("cycle through edge `{}`", edges[start])));
                }
            }
        }
        Ok(Forest { edges, vertices, above, below })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e]
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e == name)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// The vertex directly above `e` (whose output is `e`).
    pub fn vertex_above(&self, e: EdgeId) -> Option<&Vertex> {
        self.above[e].map(|v| &self.vertices[v])
    }

    pub fn roots(&self) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|&e| self.below[e].is_none()).collect()
    }

    pub fn leaves(&self) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|&e| self.above[e].is_none()).collect()
    }

    /// Number of edges in the subtree rooted at `e`, `e` included.
    pub fn subtree_size(&self, e: EdgeId) -> usize {
        1 + self.vertex_above(e).map_or(0, |v| v.inputs.iter().map(|&i| self.subtree_size(i)).sum())
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            writeln!(f, "edge {e}")?;
        }
        for v in &self.vertices {
            let ins: Vec<&str> = v.inputs.iter().map(|&e| self.edges[e].as_str()).collect();
            writeln!(f, "vertex {}: [{}] -> {}", v.name, ins.join(","), self.edges[v.output])?;
        }
        Ok(())
    }
}

/// One edge and no vertices.
pub fn unit_tree() -> Forest {
    Forest::new(vec!["e".into()], vec![]).expect("valid")
}

/// Leaves `l1, l2`, root `r`, one vertex `v`.
pub fn binary_corolla() -> Forest {
    corolla(2)
}

/// One vertex with inputs `l1 … lk` and output `r`.
pub fn corolla(k: usize) -> Forest {
    let leaves: Vec<String> = (1..=k).map(|i| format!("l{i}")).collect();
    let mut edges = leaves.clone();
    edges.push("r".into());
    Forest::new(edges, vec![("v".into(), leaves, "r".into())]).expect("valid")
}

/// A chain of `k` unary vertices; the root is `e0`.
pub fn linear_tree(k: usize) -> Forest {
    let edges: Vec<String> = (0..=k).map(|i| format!("e{i}")).collect();
    let vertices = (0..k).map(|i| (format!("v{i}"), vec![edges[i + 1].clone()], edges[i].clone())).collect();
    Forest::new(edges, vertices).expect("valid")
}

/// Leaf sets of the subtrees rooted at `e`, each sorted, in sorted order.
pub fn frontiers(f: &Forest, e: EdgeId) -> Result<Vec<Vec<EdgeId>>> {
    if e >= f.edge_count() {
        return Err(Error::UnknownEdge(format!("#{e}")));
    }
    Ok(frontier_set(f, e).into_iter().collect())
}

pub(crate) fn frontier_set(f: &Forest, e: EdgeId) -> BTreeSet<Vec<EdgeId>> {
    let mut out = BTreeSet::new();
    out.insert(vec![e]);
    if let Some(v) = f.vertex_above(e) {
        let mut partial: Vec<Vec<EdgeId>> = vec![Vec::new()];
        for &i in &v.inputs {
            let below = frontier_set(f, i);
            partial = partial
                .iter()
                .flat_map(|p| {
                    below.iter().map(move |s| {
                        let mut q = p.clone();
                        q.extend(s);
                        q
                    })
                })
                .collect();
        }
        for mut p in partial {
            p.sort_unstable();
            out.insert(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let e = |s: &str| s.to_string();
        assert!(matches!(
            Forest::new(vec![e("a")], vec![(e("v"), vec![e("x")], e("a"))]),
            Err(Error::UnknownEdge(_))
        ));
        assert!(matches!(
            Forest::new(vec![e("a"), e("b")], vec![(e("v"), vec![e("a")], e("b")), (e("w"), vec![e("b")], e("a"))]),
            Err(Error::InvalidForest(_))
        ));
        assert!(matches!(
            Forest::new(vec![e("a"), e("b")], vec![(e("v"), vec![e("a")], e("b")), (e("w"), vec![e("a")], e("b"))]),
            Err(Error::InvalidForest(_))
        ));
    }

    #[test]
    fn frontier_examples() {
        let c = binary_corolla();
        let (l1, l2, r) = (0, 1, 2);
        assert_eq!(frontiers(&c, l1).unwrap(), vec![vec![l1]]);
        assert_eq!(frontiers(&c, r).unwrap(), vec![vec![l1, l2], vec![r]]);
        assert_eq!(frontiers(&linear_tree(2), 0).unwrap().len(), 3);
        assert!(matches!(frontiers(&c, 7), Err(Error::UnknownEdge(_))));
    }

    #[test]
    fn roots_and_leaves() {
        let c = binary_corolla();
        assert_eq!(c.roots(), vec![2]);
        assert_eq!(c.leaves(), vec![0, 1]);
        let u = unit_tree();
        assert_eq!((u.edge_count(), u.vertex_count()), (1, 0));
    }
}
