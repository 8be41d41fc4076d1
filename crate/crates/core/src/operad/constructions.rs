use std::collections::{HashMap, VecDeque};

use itertools::Itertools;

use super::{compose_perm, invert_perm, permutations, Color, Label, OperadData, OperadMorphism, Operation, SetOperad};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCategory};

struct Com;

impl OperadData for Com {
    fn name(&self) -> String {
        "Com".into()
    }

    fn colors(&self) -> Vec<String> {
        vec!["*".into()]
    }

    fn operations(&self, _: &[Color], _: Color) -> Vec<Label> {
        vec![Label::atom("com")]
    }

    fn unit(&self, _: Color) -> Label {
        Label::atom("com")
    }

    fn act(&self, _: &Operation, _: &[usize]) -> Option<Label> {
        Some(Label::atom("com"))
    }

    fn compose(&self, _: &Operation, _: &[Operation]) -> Option<Label> {
        Some(Label::atom("com"))
    }
}

/// The terminal operad: one color, one operation in every arity.
pub fn terminal_com() -> SetOperad {
    SetOperad::new(Com)
}

struct UnitsOnly(Vec<String>);

impl OperadData for UnitsOnly {
    fn name(&self) -> String {
        if self.0.len() == 1 {
            "triv".into()
        } else {
            format!("triv({})", self.0.join(","))
        }
    }

    fn colors(&self) -> Vec<String> {
        self.0.clone()
    }

    fn operations(&self, inputs: &[Color], output: Color) -> Vec<Label> {
        if inputs == [output] {
            vec![Label::atom("id")]
        } else {
            Vec::new()
        }
    }

    fn unit(&self, _: Color) -> Label {
        Label::atom("id")
    }

    fn act(&self, _: &Operation, _: &[usize]) -> Option<Label> {
        Some(Label::atom("id"))
    }

    fn compose(&self, _: &Operation, _: &[Operation]) -> Option<Label> {
        Some(Label::atom("id"))
    }
}

/// One color and nothing but its unit.
pub fn trivial_operad() -> SetOperad {
    units_only(&["*"])
}

/// The given colors with their units and no other operations.
pub fn units_only(colors: &[&str]) -> SetOperad {
    SetOperad::new(UnitsOnly(colors.iter().map(|s| s.to_string()).collect()))
}

/// Colors `a`, `b`. Operations: `m: (a,…,a) -> a` and
/// `p, tp: (a,…,a) -> b` in every arity, and `id, t: (b) -> b` with
/// `t∘t = id`, `t∘p = tp`. The action of permutations is trivial.
struct Sample;

impl OperadData for Sample {
    fn name(&self) -> String {
        "sample".into()
    }

    fn colors(&self) -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    fn operations(&self, inputs: &[Color], output: Color) -> Vec<Label> {
        let all_a = inputs.iter().all(|&c| c == 0);
        match output {
            0 if all_a => vec![Label::atom("m")],
            1 if all_a => vec![Label::atom("p"), Label::atom("tp")],
            1 if inputs == [1] => vec![Label::atom("id"), Label::atom("t")],
            _ => Vec::new(),
        }
    }

    fn unit(&self, color: Color) -> Label {
        Label::atom(if color == 0 { "m" } else { "id" })
    }

    fn act(&self, op: &Operation, _: &[usize]) -> Option<Label> {
        Some(op.label.clone())
    }

    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Option<Label> {
        let name = outer.label.as_atom()?;
        match name {
            "m" | "p" | "tp" => Some(outer.label.clone()),
            "id" => Some(inner[0].label.clone()),
            "t" => {
                let flipped = match inner[0].label.as_atom()? {
                    "p" => "tp",
                    "tp" => "p",
                    "id" => "t",
                    "t" => "id",
                    _ => return None,
                };
                Some(Label::atom(flipped))
            }
            _ => None,
        }
    }
}

pub fn sample_operad() -> SetOperad {
    SetOperad::new(Sample)
}

fn arrow_atom(k: &FinCategory, f: usize) -> Label {
    Label::atom(k.arrow_name(f))
}

fn arrow_of(k: &FinCategory, l: &Label) -> Option<usize> {
    k.arrow_id(l.as_atom()?)
}

/// Tuples of arrows `x_i -> y`, one factor per input.
fn arrow_tuples(k: &FinCategory, inputs: &[usize], y: usize) -> Vec<Label> {
    if inputs.is_empty() {
        return vec![Label::Tuple(Vec::new())];
    }
    inputs
        .iter()
        .map(|&x| k.hom(x, y).iter().copied())
        .multi_cartesian_product()
        .map(|fs| Label::Tuple(fs.into_iter().map(|f| arrow_atom(k, f)).collect()))
        .collect()
}

fn permute_tuple(l: &Label, perm: &[usize]) -> Label {
    Label::Tuple(perm.iter().map(|&i| l.parts()[i].clone()).collect())
}

/// `outer_i ∘ inner_ij`, flattened in input order.
fn compose_arrow_tuples(k: &FinCategory, outer: &Label, inner: &[&Label]) -> Option<Label> {
    let mut out = Vec::new();
    for (u, vs) in outer.parts().iter().zip(inner) {
        let u = arrow_of(k, u)?;
        for v in vs.parts() {
            out.push(arrow_atom(k, k.compose(u, arrow_of(k, v)?)?));
        }
    }
    Some(Label::Tuple(out))
}

struct Sqcup(FinCategory);

impl OperadData for Sqcup {
    fn name(&self) -> String {
        "sqcup".into()
    }

    fn colors(&self) -> Vec<String> {
        self.0.objects().map(|x| self.0.object_name(x).to_string()).collect()
    }

    fn operations(&self, inputs: &[Color], output: Color) -> Vec<Label> {
        arrow_tuples(&self.0, inputs, output)
    }

    fn unit(&self, color: Color) -> Label {
        Label::Tuple(vec![arrow_atom(&self.0, self.0.identity(color))])
    }

    fn act(&self, op: &Operation, perm: &[usize]) -> Option<Label> {
        Some(permute_tuple(&op.label, perm))
    }

    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Option<Label> {
        let inner: Vec<&Label> = inner.iter().map(|q| &q.label).collect();
        compose_arrow_tuples(&self.0, &outer.label, &inner)
    }
}

/// The operad `K^⊔`: colors are the objects of `K`, and an operation
/// `(x_1,…,x_n) -> y` is a tuple of arrows `x_i -> y`.
pub fn sqcup(k: &FinCategory) -> SetOperad {
    SetOperad::new(Sqcup(k.clone()))
}

/// Splits an operation on pair colors `i·q + j` into its two factors.
fn split(op: &Operation, q: usize, left: Label, right: Label) -> (Operation, Operation) {
    (
        Operation { inputs: op.inputs.iter().map(|&c| c / q).collect(), output: op.output / q, label: left },
        Operation { inputs: op.inputs.iter().map(|&c| c % q).collect(), output: op.output % q, label: right },
    )
}

struct Diagram {
    k: FinCategory,
    o: SetOperad,
}

impl Diagram {
    /// `(O-part, K-part)` of an operation; colors are `k·|O| + x`.
    fn parts(&self, op: &Operation) -> (Operation, Vec<usize>, usize) {
        let q = self.o.color_count();
        let o_op = Operation {
            inputs: op.inputs.iter().map(|&c| c % q).collect(),
            output: op.output % q,
            label: op.label.parts()[0].clone(),
        };
        (o_op, op.inputs.iter().map(|&c| c / q).collect(), op.output / q)
    }
}

impl OperadData for Diagram {
    fn name(&self) -> String {
        format!("diag({})", self.o.name())
    }

    fn colors(&self) -> Vec<String> {
        self.k
            .objects()
            .cartesian_product(0..self.o.color_count())
            .map(|(k, x)| format!("({},{})", self.k.object_name(k), self.o.color_name(x)))
            .collect()
    }

    fn operations(&self, inputs: &[Color], output: Color) -> Vec<Label> {
        let q = self.o.color_count();
        let xs: Vec<Color> = inputs.iter().map(|&c| c % q).collect();
        let ks: Vec<usize> = inputs.iter().map(|&c| c / q).collect();
        let o_labels = self.o.labels(&xs, output % q);
        if o_labels.is_empty() {
            return Vec::new();
        }
        let arrows = arrow_tuples(&self.k, &ks, output / q);
        o_labels
            .iter()
            .cartesian_product(arrows.iter())
            .map(|(ol, ar)| Label::Tuple(vec![ol.clone(), ar.clone()]))
            .collect()
    }

    fn unit(&self, color: Color) -> Label {
        let q = self.o.color_count();
        Label::Tuple(vec![
            self.o.unit(color % q).label,
            Label::Tuple(vec![arrow_atom(&self.k, self.k.identity(color / q))]),
        ])
    }

    fn act(&self, op: &Operation, perm: &[usize]) -> Option<Label> {
        let (o_op, _, _) = self.parts(op);
        let ol = self.o.act(&o_op, perm)?.label;
        Some(Label::Tuple(vec![ol, permute_tuple(&op.label.parts()[1], perm)]))
    }

    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Option<Label> {
        let (o_outer, _, _) = self.parts(outer);
        let o_inner: Vec<Operation> = inner.iter().map(|q| self.parts(q).0).collect();
        let ol = self.o.compose(&o_outer, &o_inner)?.label;
        let inner_arrows: Vec<&Label> = inner.iter().map(|q| &q.label.parts()[1]).collect();
        let ar = compose_arrow_tuples(&self.k, &outer.label.parts()[1], &inner_arrows)?;
        Some(Label::Tuple(vec![ol, ar]))
    }
}

/// The operad `𝒪_K` whose algebras are `K`-diagrams of `𝒪`-algebras.
/// Colors are pairs `(k, x)` with index `k·|colors(O)| + x`; an operation
/// is an operation of `O` together with arrows `k_i -> k`.
pub fn diagram_operad(k: &FinCategory, o: &SetOperad) -> SetOperad {
    SetOperad::new(Diagram { k: k.clone(), o: o.clone() })
}

struct Product(SetOperad, SetOperad);

impl OperadData for Product {
    fn name(&self) -> String {
        format!("{}×{}", self.0.name(), self.1.name())
    }

    fn colors(&self) -> Vec<String> {
        self.0
            .colors()
            .iter()
            .cartesian_product(self.1.colors())
            .map(|(x, y)| format!("({x},{y})"))
            .collect()
    }

    fn operations(&self, inputs: &[Color], output: Color) -> Vec<Label> {
        let q = self.1.color_count();
        let left = self.0.labels(&inputs.iter().map(|&c| c / q).collect::<Vec<_>>(), output / q);
        if left.is_empty() {
            return Vec::new();
        }
        let right = self.1.labels(&inputs.iter().map(|&c| c % q).collect::<Vec<_>>(), output % q);
        left.iter()
            .cartesian_product(right.iter())
            .map(|(l, r)| Label::Tuple(vec![l.clone(), r.clone()]))
            .collect()
    }

    fn unit(&self, color: Color) -> Label {
        let q = self.1.color_count();
        Label::Tuple(vec![self.0.unit(color / q).label, self.1.unit(color % q).label])
    }

    fn act(&self, op: &Operation, perm: &[usize]) -> Option<Label> {
        let q = self.1.color_count();
        let parts = op.label.parts();
        let (l, r) = split(op, q, parts[0].clone(), parts[1].clone());
        Some(Label::Tuple(vec![self.0.act(&l, perm)?.label, self.1.act(&r, perm)?.label]))
    }

    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Option<Label> {
        let q = self.1.color_count();
        let halves = |op: &Operation| {
            let parts = op.label.parts();
            split(op, q, parts[0].clone(), parts[1].clone())
        };
        let (ol, or) = halves(outer);
        let (il, ir): (Vec<Operation>, Vec<Operation>) = inner.iter().map(halves).unzip();
        Some(Label::Tuple(vec![self.0.compose(&ol, &il)?.label, self.1.compose(&or, &ir)?.label]))
    }
}

/// Product of operads; colors are pairs with index `x·|colors(O2)| + y`.
pub fn product_operad(o1: &SetOperad, o2: &SetOperad) -> SetOperad {
    SetOperad::new(Product(o1.clone(), o2.clone()))
}

fn is_canonical_to_com(f: &OperadMorphism) -> bool {
    let t = &f.target;
    t.color_count() == 1
        && t.signatures(f.bound).iter().all(|(xs, y)| t.labels(xs, *y).len() == 1)
        && f.colors.iter().all(|&c| c == 0)
        && f.ops.values().all(|q| t.contains(q))
}

/// `O1 ×_Com O2` for the two morphisms to `Com`. Since `Com` is terminal
/// this is the product; the legs are checked to be the canonical ones.
pub fn pullback_over_com(left: &OperadMorphism, right: &OperadMorphism) -> Result<SetOperad> {
    for leg in [left, right] {
        if !is_canonical_to_com(leg) {
            return Err(Error::InvalidOperad(format!(
                "the leg from {} is not the canonical morphism to Com",
                leg.source.name()
            )));
        }
    }
    Ok(product_operad(&left.source, &right.source))
}

pub fn product_over_com(o1: &SetOperad, o2: &SetOperad) -> SetOperad {
    let bound = super::DEFAULT_ARITY;
    pullback_over_com(&OperadMorphism::to_com(o1, bound), &OperadMorphism::to_com(o2, bound))
        .expect("canonical legs")
}

/// The category of colors and unary operations.
pub fn unary_category(o: &SetOperad) -> FinCategory {
    let k = o.color_count();
    let mut ops = Vec::new();
    for x in 0..k {
        for y in 0..k {
            ops.extend(o.operations(&[x], y));
        }
    }
    let index: HashMap<Operation, usize> = ops.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let arrows = ops
        .iter()
        .map(|p| Arrow {
            name: format!("{}:{}->{}", p.label, o.color_name(p.inputs[0]), o.color_name(p.output)),
            source: p.inputs[0],
            target: p.output,
        })
        .collect();
    let identities = (0..k).map(|x| index[&o.unit(x)]).collect();
    let mut table = HashMap::new();
    for (fi, f) in ops.iter().enumerate() {
        for (gi, g) in ops.iter().enumerate() {
            if f.output == g.inputs[0] {
                if let Some(h) = o.compose(g, std::slice::from_ref(f)).and_then(|h| index.get(&h).copied()) {
                    table.insert((gi, fi), h);
                }
            }
        }
    }
    let objects = o.colors().to_vec();
    FinCategory::assemble_table(objects, arrows, identities, table)
}

/// An operad given by finite tables, as read from the text format.
///
/// Operation names are global. Symmetry entries are closed under the
/// group law; a permutation that fixes the signature and has no entry acts
/// trivially. Composites not listed are derived from unit laws and from
/// partial composites, and are otherwise undefined.
#[derive(Clone, Debug)]
pub struct TableOperad {
    pub name: String,
    pub colors: Vec<String>,
    /// `(name, inputs, output)`.
    pub ops: Vec<(String, Vec<Color>, Color)>,
    /// Unit operation name per color.
    pub units: Vec<String>,
    pub sym: HashMap<(String, Vec<usize>), String>,
    pub comp: HashMap<(String, Vec<String>), String>,
    op_index: HashMap<String, usize>,
}

impl TableOperad {
    /// Checks the tables and closes the symmetry entries.
    pub fn new(
        name: &str,
        colors: Vec<String>,
        ops: Vec<(String, Vec<Color>, Color)>,
        units: Vec<String>,
        sym: Vec<(String, Vec<usize>, String)>,
        comp: Vec<(String, Vec<String>, String)>,
    ) -> Result<TableOperad> {
        let bad = |msg: String| Error::InvalidOperad(msg);
        let op_index: HashMap<String, usize> = ops.iter().enumerate().map(|(i, o)| (o.0.clone(), i)).collect();
        if op_index.len() != ops.len() {
            return Err(bad("operation names must be unique".into()));
        }
        if units.len() != colors.len() {
            return Err(bad("every color needs a unit".into()));
        }
        for (c, u) in units.iter().enumerate() {
            match op_index.get(u).map(|&i| &ops[i]) {
                Some((_, xs, y)) if xs == &[c] && *y == c => {}
                _ => return Err(bad(format!("unit `{u}` of color `{}` is not an operation ({0}) -> {0}", colors[c]))),
            }
        }
        let mut known: HashMap<(String, Vec<usize>), String> = HashMap::new();
        let mut queue = VecDeque::new();
        let record = |known: &mut HashMap<(String, Vec<usize>), String>,
                          queue: &mut VecDeque<(String, Vec<usize>)>,
                          key: (String, Vec<usize>),
                          value: String|
         -> Result<()> {
            match known.get(&key) {
                Some(v) if v != &value => Err(Error::InvalidOperad(format!(
                    "symmetry of `{}` under {:?} is both `{v}` and `{value}`",
                    key.0, key.1
                ))),
                Some(_) => Ok(()),
                None => {
                    known.insert(key.clone(), value);
                    queue.push_back(key);
                    Ok(())
                }
            }
        };
        for (p, sigma, q) in &sym {
            let (Some(&pi), Some(&qi)) = (op_index.get(p), op_index.get(q)) else {
                return Err(bad(format!("symmetry entry `{p}` -> `{q}` names an unknown operation")));
            };
            let (_, xs, y) = &ops[pi];
            let (_, zs, w) = &ops[qi];
            let mut sorted = sigma.clone();
            sorted.sort_unstable();
            if sorted != (0..xs.len()).collect::<Vec<_>>() {
                return Err(bad(format!("{sigma:?} is not a permutation of the inputs of `{p}`")));
            }
            let permuted: Vec<Color> = sigma.iter().map(|&i| xs[i]).collect();
            if &permuted != zs || y != w {
                return Err(bad(format!("`{p}` under {sigma:?} cannot be `{q}`: signatures differ")));
            }
            record(&mut known, &mut queue, (p.clone(), sigma.clone()), q.clone())?;
            record(&mut known, &mut queue, (q.clone(), invert_perm(sigma)), p.clone())?;
        }
        for (p, xs, _) in &ops {
            record(&mut known, &mut queue, (p.clone(), (0..xs.len()).collect()), p.clone())?;
        }
        let close = |known: &mut HashMap<(String, Vec<usize>), String>,
                     queue: &mut VecDeque<(String, Vec<usize>)>|
         -> Result<()> {
            while let Some((p, sigma)) = queue.pop_front() {
                let q = known[&(p.clone(), sigma.clone())].clone();
                let follow: Vec<(Vec<usize>, String)> = known
                    .iter()
                    .filter(|((r, _), _)| r == &q)
                    .map(|((_, tau), s)| (tau.clone(), s.clone()))
                    .collect();
                for (tau, s) in follow {
                    record(known, queue, (p.clone(), compose_perm(&sigma, &tau)), s)?;
                }
                let back: Vec<(String, Vec<usize>)> = known
                    .iter()
                    .filter(|(_, v)| *v == &p)
                    .map(|((r, rho), _)| (r.clone(), rho.clone()))
                    .collect();
                for (r, rho) in back {
                    record(known, queue, (r, compose_perm(&rho, &sigma)), q.clone())?;
                }
            }
            Ok(())
        };
        close(&mut known, &mut queue)?;
        for (p, xs, _) in &ops {
            for sigma in permutations(xs.len()) {
                let fixes = sigma.iter().enumerate().all(|(i, &s)| xs[s] == xs[i]);
                if fixes && !known.contains_key(&(p.clone(), sigma.clone())) {
                    record(&mut known, &mut queue, (p.clone(), sigma), p.clone())?;
                }
            }
        }
        close(&mut known, &mut queue)?;
        let mut comp_map = HashMap::new();
        for (p, qs, r) in comp {
            for n in std::iter::once(&p).chain(&qs).chain(std::iter::once(&r)) {
                if !op_index.contains_key(n) {
                    return Err(bad(format!("composition entry names unknown operation `{n}`")));
                }
            }
            if let Some(old) = comp_map.insert((p.clone(), qs.clone()), r.clone()) {
                if old != r {
                    return Err(bad(format!("composite `{p}({})` given twice", qs.join(","))));
                }
            }
        }
        Ok(TableOperad { name: name.to_string(), colors, ops, units, sym: known, comp: comp_map, op_index })
    }

    fn is_unit_label(&self, op: &Operation) -> bool {
        op.arity() == 1 && op.label.as_atom() == Some(self.units[op.output].as_str())
    }

    fn lookup(&self, outer: &Operation, inner: &[Operation]) -> Option<Label> {
        let key = (
            outer.label.as_atom()?.to_string(),
            inner.iter().map(|q| q.label.as_atom().map(str::to_string)).collect::<Option<Vec<_>>>()?,
        );
        self.comp.get(&key).map(|r| Label::atom(r))
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|o| o.1.len()).max().unwrap_or(1).max(1)
    }

    pub fn op_signature(&self, name: &str) -> Option<(&[Color], Color)> {
        self.op_index.get(name).map(|&i| (self.ops[i].1.as_slice(), self.ops[i].2))
    }
}

impl OperadData for TableOperad {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn colors(&self) -> Vec<String> {
        self.colors.clone()
    }

    fn operations(&self, inputs: &[Color], output: Color) -> Vec<Label> {
        self.ops
            .iter()
            .filter(|(_, xs, y)| xs == inputs && *y == output)
            .map(|(n, _, _)| Label::atom(n))
            .collect()
    }

    fn unit(&self, color: Color) -> Label {
        Label::atom(&self.units[color])
    }

    fn act(&self, op: &Operation, perm: &[usize]) -> Option<Label> {
        self.sym.get(&(op.label.as_atom()?.to_string(), perm.to_vec())).map(|q| Label::atom(q))
    }

    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Option<Label> {
        if inner.iter().all(|q| self.is_unit_label(q)) {
            return Some(outer.label.clone());
        }
        if self.is_unit_label(outer) {
            return Some(inner[0].label.clone());
        }
        if let Some(r) = self.lookup(outer, inner) {
            return Some(r);
        }
        let busy: Vec<usize> = (0..inner.len()).filter(|&i| !self.is_unit_label(&inner[i])).collect();
        if busy.len() < 2 {
            return None;
        }
        let unit = |c: Color| Operation { inputs: vec![c], output: c, label: Label::atom(&self.units[c]) };
        let mut order = busy;
        order.sort_by_key(|&i| (inner[i].arity(), i));
        let mut current = outer.clone();
        let mut done: Vec<usize> = Vec::new();
        for &i in &order {
            let at = i + done.iter().filter(|&&j| j < i).map(|&j| inner[j].arity()).sum::<usize>()
                - done.iter().filter(|&&j| j < i).count();
            let label = if self.is_unit_label(&current) {
                inner[i].label.clone()
            } else {
                let mut slots: Vec<Operation> = current.inputs.iter().map(|&c| unit(c)).collect();
                slots[at] = inner[i].clone();
                self.lookup(&current, &slots)?
            };
            let mut inputs = current.inputs.clone();
            inputs.splice(at..=at, inner[i].inputs.iter().copied());
            current = Operation { inputs, output: current.output, label };
            done.push(i);
        }
        Some(current.label)
    }
}

/// An operad with one composition entry overridden, for mutation tests.
pub struct Corrupted {
    pub inner: SetOperad,
    pub outer: Operation,
    pub inners: Vec<Operation>,
    pub result: Label,
}

impl OperadData for Corrupted {
    fn name(&self) -> String {
        format!("corrupted({})", self.inner.name())
    }

    fn colors(&self) -> Vec<String> {
        self.inner.colors().to_vec()
    }

    fn operations(&self, inputs: &[Color], output: Color) -> Vec<Label> {
        self.inner.labels(inputs, output).to_vec()
    }

    fn unit(&self, color: Color) -> Label {
        self.inner.unit(color).label
    }

    fn act(&self, op: &Operation, perm: &[usize]) -> Option<Label> {
        self.inner.act(op, perm).map(|o| o.label)
    }

    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Option<Label> {
        if outer == &self.outer && inner == self.inners.as_slice() {
            return Some(self.result.clone());
        }
        self.inner.compose(outer, inner).map(|o| o.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{category_iso, chain, discrete, terminal, walking_arrow, DEFAULT_BUDGET};

    #[test]
    fn com_and_trivial_counts() {
        let com = terminal_com();
        for n in 0..=3 {
            assert_eq!(com.labels(&vec![0; n], 0).len(), 1);
        }
        let triv = trivial_operad();
        assert_eq!(triv.labels(&[0, 0], 0).len(), 0);
        assert_eq!(triv.labels(&[0], 0).len(), 1);
    }

    #[test]
    fn sqcup_counts() {
        let k = walking_arrow();
        let o = sqcup(&k);
        let (a, b) = (0, 1);
        assert_eq!(o.labels(&[a, a], b).len(), 1);
        assert_eq!(o.labels(&[b, b], a).len(), 0);
        let c = chain(2);
        let o = sqcup(&c);
        for xs in super::super::color_tuples(3, 2) {
            for y in 0..3 {
                let expected: usize = xs.iter().map(|&x| c.hom(x, y).len()).product();
                assert_eq!(o.labels(&xs, y).len(), expected);
            }
        }
    }

    #[test]
    fn diagram_counts() {
        let k = discrete(2);
        let o = units_only(&["x", "y", "z"]);
        assert_eq!(diagram_operad(&k, &o).color_count(), 6);
        let d = diagram_operad(&walking_arrow(), &terminal_com());
        assert_eq!(d.labels(&[0, 0], 1).len(), 1);
        assert_eq!(d.color_name(1), "(b,*)");
    }

    #[test]
    fn product_counts_multiply() {
        let (s, c) = (sample_operad(), sqcup(&chain(1)));
        let p = product_operad(&s, &c);
        for (xs, y) in p.signatures(2) {
            let q = c.color_count();
            let l: Vec<_> = xs.iter().map(|&x| x / q).collect();
            let r: Vec<_> = xs.iter().map(|&x| x % q).collect();
            assert_eq!(p.labels(&xs, y).len(), s.labels(&l, y / q).len() * c.labels(&r, y % q).len());
        }
    }

    #[test]
    fn pullback_rejects_non_canonical_legs() {
        let s = sample_operad();
        let mut leg = OperadMorphism::to_com(&s, 2);
        leg.target = sqcup(&discrete(2));
        leg.colors = vec![0, 1];
        assert!(pullback_over_com(&leg, &OperadMorphism::to_com(&s, 2)).is_err());
    }

    #[test]
    fn sample_composition() {
        let s = sample_operad();
        let t = s.operations(&[1], 1).remove(1);
        let p = s.operations(&[0, 0], 1).remove(0);
        let tp = s.compose(&t, std::slice::from_ref(&p)).unwrap();
        assert_eq!(tp.label, Label::atom("tp"));
        assert!(s.is_unit(&s.compose(&t, std::slice::from_ref(&t)).unwrap()));
    }

    #[test]
    fn unary_category_of_sample() {
        let u = unary_category(&sample_operad());
        assert_eq!((u.object_count(), u.arrow_count()), (2, 5));
        crate::fincat::check_laws(&u).unwrap();
        let triv = unary_category(&trivial_operad());
        assert!(category_iso(&triv, &terminal(), DEFAULT_BUDGET).unwrap().is_some());
    }

    #[test]
    fn table_operad_closes_symmetry() {
        let t = TableOperad::new(
            "swap",
            vec!["x".into(), "y".into()],
            vec![
                ("ix".into(), vec![0], 0),
                ("iy".into(), vec![1], 1),
                ("p".into(), vec![0, 1], 0),
                ("q".into(), vec![1, 0], 0),
            ],
            vec!["ix".into(), "iy".into()],
            vec![("p".into(), vec![1, 0], "q".into())],
            vec![],
        )
        .unwrap();
        assert_eq!(t.sym[&("q".to_string(), vec![1, 0])], "p");
        let o = SetOperad::new(t);
        let p = o.operations(&[0, 1], 0).remove(0);
        assert_eq!(o.act(&p, &[1, 0]).unwrap().label, Label::atom("q"));
    }

    #[test]
    fn table_operad_rejects_bad_units() {
        let err = TableOperad::new(
            "bad",
            vec!["x".into()],
            vec![("p".into(), vec![0, 0], 0)],
            vec!["p".into()],
            vec![],
            vec![],
        );
        assert!(matches!(err, Err(Error::InvalidOperad(_))));
    }
}
