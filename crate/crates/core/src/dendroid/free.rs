use std::collections::{BTreeSet, HashSet};

use super::{frontier_set, EdgeId, Forest};
use crate::operad::{Color, Label, OperadData, Operation, SetOperad};

struct Free {
    forest: Forest,
    frontiers: Vec<BTreeSet<Vec<EdgeId>>>,
}

impl Free {
    fn is_operation(&self, inputs: &[Color], output: Color) -> bool {
        let mut sorted = inputs.to_vec();
        sorted.sort_unstable();
        let distinct: HashSet<_> = inputs.iter().collect();
        distinct.len() == inputs.len() && self.frontiers[output].contains(&sorted)
    }
}

fn label() -> Label {
    Label::atom("tree")
}

impl OperadData for Free {
    fn name(&self) -> String {
        "free".into()
    }

    fn colors(&self) -> Vec<String> {
        (0..self.forest.edge_count()).map(|e| self.forest.edge_name(e).to_string()).collect()
    }

    fn operations(&self, inputs: &[Color], output: Color) -> Vec<Label> {
        if self.is_operation(inputs, output) {
            vec![label()]
        } else {
            Vec::new()
        }
    }

    fn unit(&self, _: Color) -> Label {
        label()
    }

    fn act(&self, _: &Operation, _: &[usize]) -> Option<Label> {
        Some(label())
    }

    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Option<Label> {
        let inputs: Vec<Color> = inner.iter().flat_map(|q| q.inputs.iter().copied()).collect();
        self.is_operation(&inputs, outer.output).then(label)
    }
}

/// The operad `o(F)`: colors are the edges of `F`; there is exactly one
/// operation `(e_1, …, e_n) -> e` for every ordering of every frontier of
/// `e`.
pub fn free_operad(f: &Forest) -> SetOperad {
    let frontiers = (0..f.edge_count()).map(|e| frontier_set(f, e)).collect();
    SetOperad::new(Free { forest: f.clone(), frontiers })
}
