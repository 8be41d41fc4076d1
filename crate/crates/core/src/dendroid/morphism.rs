use std::collections::BTreeSet;

use itertools::Itertools;

use super::{frontier_set, EdgeId, Forest};
use crate::error::{Error, Result};

/// A map of edges `F -> G` that sends the inputs of every vertex of `F`
/// bijectively onto a frontier of the image of its output. These are
/// exactly the operad maps `o(F) -> o(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestMorphism {
    pub source: Forest,
    pub target: Forest,
    pub edges: Vec<EdgeId>,
}

impl ForestMorphism {
    pub fn identity(f: &Forest) -> ForestMorphism {
        ForestMorphism { source: f.clone(), target: f.clone(), edges: (0..f.edge_count()).collect() }
    }

    pub fn check(&self) -> Result<()> {
        if self.edges.len() != self.source.edge_count() || self.edges.iter().any(|&e| e >= self.target.edge_count()) {
            return Err(Error::InvalidFunctor("edge map has the wrong shape".into()));
        }
        for v in self.source.vertices() {
            let mut image: Vec<EdgeId> = v.inputs.iter().map(|&e| self.edges[e]).collect();
            image.sort_unstable();
            let distinct = image.windows(2).all(|w| w[0] != w[1]);
            if !distinct || !frontier_set(&self.target, self.edges[v.output]).contains(&image) {
                return Err(Error::InvalidFunctor(format!(
                    "vertex `{}` does not land on a frontier of `{}`",
                    v.name,
                    self.target.edge_name(self.edges[v.output])
                )));
            }
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &ForestMorphism) -> Option<ForestMorphism> {
        (self.target == other.source).then(|| ForestMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            edges: self.edges.iter().map(|&e| other.edges[e]).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.edges.len() == self.target.edge_count() && self.edges.iter().collect::<BTreeSet<_>>().len() == self.edges.len()
    }

    pub fn describe(&self) -> String {
        (0..self.edges.len())
            .map(|e| format!("{} -> {}", self.source.edge_name(e), self.target.edge_name(self.edges[e])))
            .join(", ")
    }
}

struct PhiSearch<'a> {
    source: &'a Forest,
    target: &'a Forest,
    frontiers: Vec<Vec<Vec<EdgeId>>>,
    budget: u64,
    steps: u64,
    found: Vec<Vec<EdgeId>>,
}

impl PhiSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget, estimate: self.steps as f64 });
        }
        Ok(())
    }

    /// `pending` holds vertices whose output is assigned but inputs not yet.
    fn run(&mut self, roots: &[EdgeId], pending: &mut Vec<usize>, map: &mut Vec<Option<EdgeId>>) -> Result<()> {
        if let Some((&r, rest)) = roots.split_first() {
            for g in 0..self.target.edge_count() {
                self.tick()?;
                map[r] = Some(g);
                let pushed = self.push_vertex(r, pending);
                self.run(rest, pending, map)?;
                if pushed {
                    pending.pop();
                }
            }
            map[r] = None;
            return Ok(());
        }
        let Some(v) = pending.pop() else {
            self.found.push(map.iter().map(|e| e.expect("assigned")).collect());
            return Ok(());
        };
        let vertex = self.source.vertices()[v].clone();
        let g = map[vertex.output].expect("output assigned");
        let k = vertex.inputs.len();
        let candidates: Vec<Vec<EdgeId>> = self.frontiers[g].iter().filter(|s| s.len() == k).cloned().collect();
        for s in candidates {
            for order in s.iter().copied().permutations(k) {
                self.tick()?;
                for (&e, &img) in vertex.inputs.iter().zip(&order) {
                    map[e] = Some(img);
                }
                let before = pending.len();
                for &e in &vertex.inputs {
                    self.push_vertex(e, pending);
                }
                self.run(&[], pending, map)?;
                pending.truncate(before);
            }
        }
        for &e in &vertex.inputs {
            map[e] = None;
        }
        pending.push(v);
        Ok(())
    }

    fn push_vertex(&self, e: EdgeId, pending: &mut Vec<usize>) -> bool {
        match self.source.vertices().iter().position(|v| v.output == e) {
            Some(v) => {
                pending.push(v);
                true
            }
            None => false,
        }
    }
}

/// All forest morphisms `F -> G`, by top-down backtracking: roots go
/// anywhere, and the inputs of each vertex go to an ordering of a frontier
/// of the image of its output.
pub fn phi_hom(f: &Forest, g: &Forest, budget: u64) -> Result<Vec<ForestMorphism>> {
    let frontiers = (0..g.edge_count()).map(|e| frontier_set(g, e).into_iter().collect()).collect();
    let mut search = PhiSearch { source: f, target: g, frontiers, budget, steps: 0, found: Vec::new() };
    let roots = f.roots();
    let mut map = vec![None; f.edge_count()];
    search.run(&roots, &mut Vec::new(), &mut map)?;
    let mut found = search.found;
    found.sort();
    found.dedup();
    Ok(found.into_iter().map(|edges| ForestMorphism { source: f.clone(), target: g.clone(), edges }).collect())
}

/// Shape invariant of the subtree at an edge: `None` for a leaf, otherwise
/// the sorted invariants of the inputs of the vertex above.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Shape(Option<Vec<Shape>>);

fn shape(f: &Forest, e: EdgeId) -> Shape {
    Shape(f.vertex_above(e).map(|v| {
        let mut kids: Vec<Shape> = v.inputs.iter().map(|&i| shape(f, i)).collect();
        kids.sort();
        kids
    }))
}

/// Degree profile used for pruning: subtree size and number of inputs.
fn profile(f: &Forest, e: EdgeId) -> (usize, Option<usize>) {
    (f.subtree_size(e), f.vertex_above(e).map(|v| v.inputs.len()))
}

fn match_edges(f: &Forest, g: &Forest, a: &[EdgeId], b: &[EdgeId], used: &mut Vec<bool>, map: &mut Vec<EdgeId>) -> bool {
    let Some((&x, rest)) = a.split_first() else {
        return true;
    };
    for &y in b {
        if used[y] || profile(f, x) != profile(g, y) || shape(f, x) != shape(g, y) {
            continue;
        }
        let snapshot = used.clone();
        used[y] = true;
        map[x] = y;
        let ok = match (f.vertex_above(x), g.vertex_above(y)) {
            (Some(v), Some(w)) => match_edges(f, g, &v.inputs, &w.inputs, used, map),
            (None, None) => true,
            _ => false,
        };
        if ok && match_edges(f, g, rest, b, used, map) {
            return true;
        }
        *used = snapshot;
    }
    false
}

/// An isomorphism of forests, found by backtracking over edges with
/// pruning on subtree size and vertex degree.
pub fn forest_iso(f: &Forest, g: &Forest) -> Option<ForestMorphism> {
    if f.edge_count() != g.edge_count() || f.vertex_count() != g.vertex_count() {
        return None;
    }
    let mut used = vec![false; g.edge_count()];
    let mut map = vec![usize::MAX; f.edge_count()];
    let ok = match_edges(f, g, &f.roots(), &g.roots(), &mut used, &mut map);
    ok.then(|| ForestMorphism { source: f.clone(), target: g.clone(), edges: map })
}
