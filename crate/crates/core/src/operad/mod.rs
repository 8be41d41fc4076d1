//! Finite-color symmetric operads in sets.
//!
//! An operad is described by an [`OperadData`] implementation that produces
//! operation labels per signature on demand; [`SetOperad`] wraps it with a
//! memo cache and the bookkeeping shared by every construction. Operations
//! have ordered inputs. The symmetric group acts on the right: the inputs
//! of `p·σ` are `x_{σ(1)}, …, x_{σ(n)}`, so `(p·σ)·τ = p·(σ∘τ)`.

mod constructions;
mod fibrous;
mod laws;
mod mutation;
mod opcat;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use itertools::Itertools;

use crate::error::{Error, Result};

pub use constructions::{
    diagram_operad, product_operad, product_over_com, pullback_over_com, sample_operad, sqcup, terminal_com,
    trivial_operad, unary_category, units_only, Corrupted, TableOperad,
};
pub use fibrous::{fibrous_check, FibrousReport};
pub use laws::{check_operad_laws, LawSummary};
pub use mutation::mutation_corpus;
pub use opcat::{
    gamma_map, operator_category, operator_category_over, sqcup_arrows, sqcup_fiber, sqcup_representability_check,
    GammaMap, OperatorCategory, RepresentabilityReport,
};

/// Default arity bound for enumerations.
pub const DEFAULT_ARITY: usize = 3;

pub type Color = usize;

/// Operation labels. Constructions nest the labels of their ingredients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Atom(Arc<str>),
    Tuple(Vec<Label>),
}

impl Label {
    pub fn atom(s: &str) -> Label {
        Label::Atom(Arc::from(s))
    }

    pub fn parts(&self) -> &[Label] {
        match self {
            Label::Tuple(v) => v,
            Label::Atom(_) => &[],
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Label::Atom(s) => Some(s),
            Label::Tuple(_) => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => f.write_str(s),
            Label::Tuple(v) => write!(f, "({})", v.iter().join(",")),
        }
    }
}

/// An operation `label: (inputs) -> output`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operation {
    pub inputs: Vec<Color>,
    pub output: Color,
    pub label: Label,
}

impl Operation {
    pub fn arity(&self) -> usize {
        self.inputs.len()
    }
}

/// The raw structure of an operad. Implementations need not check that
/// their arguments are well typed; [`SetOperad`] does that.
pub trait OperadData: Send + Sync {
    fn name(&self) -> String;

    fn colors(&self) -> Vec<String>;

    /// Labels of the operations `(inputs) -> output`, without repetition.
    fn operations(&self, inputs: &[Color], output: Color) -> Vec<Label>;

    fn unit(&self, color: Color) -> Label;

    /// Label of `op·σ`.
    fn act(&self, op: &Operation, perm: &[usize]) -> Option<Label>;

    /// Label of `outer ∘ (inner_1, …, inner_n)`.
    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Option<Label>;
}

type Signature = (Vec<Color>, Color);

#[derive(Clone)]
pub struct SetOperad {
    data: Arc<dyn OperadData>,
    colors: Arc<Vec<String>>,
    color_index: Arc<HashMap<String, Color>>,
    cache: Arc<RwLock<HashMap<Signature, Arc<Vec<Label>>>>>,
}

impl fmt::Debug for SetOperad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetOperad").field("name", &self.name()).field("colors", &self.colors).finish()
    }
}

impl SetOperad {
    pub fn new(data: impl OperadData + 'static) -> SetOperad {
        Self::from_arc(Arc::new(data))
    }

    pub fn from_arc(data: Arc<dyn OperadData>) -> SetOperad {
        let colors = data.colors();
        let color_index = colors.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        SetOperad {
            data,
            colors: Arc::new(colors),
            color_index: Arc::new(color_index),
            cache: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    pub fn name(&self) -> String {
        self.data.name()
    }

    pub fn color_count(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn color_name(&self, c: Color) -> &str {
        &self.colors[c]
    }

    pub fn color_id(&self, name: &str) -> Option<Color> {
        self.color_index.get(name).copied()
    }

    /// Operation labels of one signature, memoized.
    pub fn labels(&self, inputs: &[Color], output: Color) -> Arc<Vec<Label>> {
        let key = (inputs.to_vec(), output);
        if let Some(hit) = self.cache.read().expect("operad cache poisoned").get(&key) {
            return hit.clone();
        }
        let fresh = Arc::new(self.data.operations(inputs, output));
        self.cache.write().expect("operad cache poisoned").entry(key).or_insert(fresh).clone()
    }

    pub fn operations(&self, inputs: &[Color], output: Color) -> Vec<Operation> {
        self.labels(inputs, output)
            .iter()
            .map(|l| Operation { inputs: inputs.to_vec(), output, label: l.clone() })
            .collect()
    }

    pub fn contains(&self, op: &Operation) -> bool {
        op.output < self.color_count()
            && op.inputs.iter().all(|&c| c < self.color_count())
            && self.labels(&op.inputs, op.output).contains(&op.label)
    }

    pub fn unit(&self, color: Color) -> Operation {
        Operation { inputs: vec![color], output: color, label: self.data.unit(color) }
    }

    pub fn is_unit(&self, op: &Operation) -> bool {
        op.arity() == 1 && op.inputs[0] == op.output && op.label == self.data.unit(op.output)
    }

    /// `op·σ`.
    pub fn act(&self, op: &Operation, perm: &[usize]) -> Option<Operation> {
        if perm.len() != op.arity() {
            return None;
        }
        let inputs: Vec<Color> = perm.iter().map(|&i| op.inputs[i]).collect();
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return Some(op.clone());
        }
        let label = self.data.act(op, perm)?;
        Some(Operation { inputs, output: op.output, label })
    }

    /// Simultaneous composition `outer ∘ (inner_1, …, inner_n)`; `None`
    /// when the colors do not match or the composite is undefined.
    pub fn compose(&self, outer: &Operation, inner: &[Operation]) -> Option<Operation> {
        if inner.len() != outer.arity() || inner.iter().zip(&outer.inputs).any(|(q, &c)| q.output != c) {
            return None;
        }
        let label = self.data.compose(outer, inner)?;
        let inputs = inner.iter().flat_map(|q| q.inputs.iter().copied()).collect();
        Some(Operation { inputs, output: outer.output, label })
    }

    /// Partial composition `outer ∘_i inner` (0-based slot).
    pub fn partial(&self, outer: &Operation, i: usize, inner: &Operation) -> Option<Operation> {
        if i >= outer.arity() {
            return None;
        }
        let inners: Vec<Operation> = outer
            .inputs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k == i { inner.clone() } else { self.unit(c) })
            .collect();
        self.compose(outer, &inners)
    }

    /// Every signature of arity at most `max_arity`, ordered by arity, then
    /// lexicographically.
    pub fn signatures(&self, max_arity: usize) -> Vec<(Vec<Color>, Color)> {
        let k = self.color_count();
        let mut out = Vec::new();
        for n in 0..=max_arity {
            for inputs in color_tuples(k, n) {
                for y in 0..k {
                    out.push((inputs.clone(), y));
                }
            }
        }
        out
    }

    /// Every operation of arity at most `max_arity`, in signature order.
    pub fn all_operations(&self, max_arity: usize) -> Vec<Operation> {
        self.signatures(max_arity).into_iter().flat_map(|(xs, y)| self.operations(&xs, y)).collect()
    }

    /// `op` rendered as `label: (x1,x2) -> y`.
    pub fn describe(&self, op: &Operation) -> String {
        format!(
            "{}: ({}) -> {}",
            op.label,
            op.inputs.iter().map(|&c| self.color_name(c)).join(","),
            self.color_name(op.output)
        )
    }
}

/// All `n`-tuples over `0..k`, lexicographically.
pub fn color_tuples(k: usize, n: usize) -> Vec<Vec<Color>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..n).map(|_| 0..k).multi_cartesian_product().collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// `σ ∘ τ`: first `τ`, then `σ`.
pub fn compose_perm(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&i| sigma[i]).collect()
}

pub fn invert_perm(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

/// A morphism of operads, recorded on colors and on every operation of
/// arity at most `bound`.
#[derive(Clone, Debug)]
pub struct OperadMorphism {
    pub source: SetOperad,
    pub target: SetOperad,
    pub bound: usize,
    pub colors: Vec<Color>,
    pub ops: HashMap<Operation, Operation>,
}

impl PartialEq for OperadMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.colors == other.colors && self.ops == other.ops
    }
}

impl OperadMorphism {
    pub fn apply(&self, op: &Operation) -> Option<&Operation> {
        self.ops.get(op)
    }

    pub fn identity(o: &SetOperad, bound: usize) -> OperadMorphism {
        let ops = o.all_operations(bound).into_iter().map(|p| (p.clone(), p)).collect();
        OperadMorphism { source: o.clone(), target: o.clone(), bound, colors: (0..o.color_count()).collect(), ops }
    }

    /// The unique morphism to `Com`.
    pub fn to_com(o: &SetOperad, bound: usize) -> OperadMorphism {
        let com = terminal_com();
        let ops = o
            .all_operations(bound)
            .into_iter()
            .map(|p| {
                let image = com.operations(&vec![0; p.arity()], 0).remove(0);
                (p, image)
            })
            .collect();
        OperadMorphism { source: o.clone(), target: com, bound, colors: vec![0; o.color_count()], ops }
    }

    pub fn then(&self, other: &OperadMorphism) -> Option<OperadMorphism> {
        let colors = self.colors.iter().map(|&c| other.colors[c]).collect();
        let ops = self
            .ops
            .iter()
            .map(|(p, q)| Some((p.clone(), other.ops.get(q)?.clone())))
            .collect::<Option<_>>()?;
        Some(OperadMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            bound: self.bound.min(other.bound),
            colors,
            ops,
        })
    }

    /// Preservation of signatures, units, the symmetric action and partial
    /// composition, for every operation within the bound.
    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let bad = |msg: String| Err(Error::InvalidOperad(msg));
        let ops = s.all_operations(self.bound);
        for p in &ops {
            let Some(q) = self.ops.get(p) else {
                return bad(format!("operation {} is not mapped", s.describe(p)));
            };
            let inputs: Vec<Color> = p.inputs.iter().map(|&c| self.colors[c]).collect();
            if q.inputs != inputs || q.output != self.colors[p.output] || !t.contains(q) {
                return bad(format!("{} is not sent to an operation of the mapped signature", s.describe(p)));
            }
            if s.is_unit(p) && !t.is_unit(q) {
                return bad(format!("unit {} is not sent to a unit", s.describe(p)));
            }
            for sigma in permutations(p.arity()) {
                let (Some(ps), Some(qs)) = (s.act(p, &sigma), t.act(q, &sigma)) else {
                    return bad(format!("action on {} undefined", s.describe(p)));
                };
                if self.ops.get(&ps) != Some(&qs) {
                    return bad(format!("{} · {:?} is not preserved", s.describe(p), sigma));
                }
            }
        }
        for p in &ops {
            for r in &ops {
                if p.arity() + r.arity() > self.bound + 1 {
                    continue;
                }
                for i in 0..p.arity() {
                    if p.inputs[i] != r.output {
                        continue;
                    }
                    let Some(pr) = s.partial(p, i, r) else {
                        return bad(format!("{} ∘_{} {} undefined", s.describe(p), i + 1, s.describe(r)));
                    };
                    let image = t.partial(&self.ops[p], i, &self.ops[r]);
                    if image.as_ref() != self.ops.get(&pr) {
                        return bad(format!("{} ∘_{} {} is not preserved", s.describe(p), i + 1, s.describe(r)));
                    }
                }
            }
        }
        Ok(())
    }
}
