//! Truncated categories of operators.
//!
//! The category of operators of an operad `O`, cut off at arity `N`, has
//! objects `(⟨n⟩, x_1 … x_n)` for `n ≤ N`. An arrow over `α: ⟨n⟩ → ⟨m⟩`
//! from `x̄` to `ȳ` is a family `(φ_j)` with `φ_j` an operation from the
//! colors `x_i`, `α(i) = j` (in increasing `i`), to `y_j`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use super::{color_tuples, product_over_com, sqcup, Color, Label, Operation, SetOperad};
use crate::error::{Error, Result};
use crate::fincat::{
    enumerate_functors, is_isomorphism, product, pullback, Arrow, ArrowId, Composer, FinCategory, FunctorConstraints,
    FunctorF, MarkedFinCategory, ObjId,
};
use crate::finstar::{gamma_star_over, FinStar, PointedMap};

#[derive(Default)]
struct Interner {
    ops: Vec<Operation>,
    index: HashMap<Operation, u32>,
}

impl Interner {
    fn intern(&mut self, op: Operation) -> u32 {
        if let Some(&i) = self.index.get(&op) {
            return i;
        }
        let i = self.ops.len() as u32;
        self.index.insert(op.clone(), i);
        self.ops.push(op);
        i
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ArrowData {
    source: ObjId,
    base: ArrowId,
    components: Vec<u32>,
}

struct Tables {
    operad: SetOperad,
    base: FinStar,
    objects: Vec<(usize, Vec<Color>)>,
    object_index: HashMap<(usize, Vec<Color>), ObjId>,
    arrows: Vec<ArrowData>,
    arrow_index: HashMap<ArrowData, ArrowId>,
    interner: Interner,
}

impl Tables {
    fn composite(&self, g: ArrowId, f: ArrowId) -> Option<ArrowId> {
        let (fa, ga) = (&self.arrows[f], &self.arrows[g]);
        let alpha = self.base.map(fa.base);
        let beta = self.base.map(ga.base);
        let base = self.base.category.compose(ga.base, fa.base)?;
        let mut components = Vec::with_capacity(beta.target());
        for (k, &psi) in ga.components.iter().enumerate() {
            let js = beta.preimage(k + 1);
            let inner: Vec<Operation> =
                js.iter().map(|&j| self.interner.ops[fa.components[j - 1] as usize].clone()).collect();
            let raw = self.operad.compose(&self.interner.ops[psi as usize], &inner)?;
            let order: Vec<usize> = js.iter().flat_map(|&j| alpha.preimage(j)).collect();
            let mut sorted = order.clone();
            sorted.sort_unstable();
            let tau: Vec<usize> = sorted.iter().map(|s| order.iter().position(|o| o == s).expect("member")).collect();
            let op = self.operad.act(&raw, &tau)?;
            components.push(*self.interner.index.get(&op)?);
        }
        self.arrow_index.get(&ArrowData { source: fa.source, base, components }).copied()
    }
}

/// A truncated category of operators: the total category, its projection
/// to `Fin_*`, and the marking (arrows over inert maps whose components
/// are units).
#[derive(Clone)]
pub struct OperatorCategory {
    pub operad: SetOperad,
    pub bound: usize,
    pub base: FinStar,
    pub total: FinCategory,
    pub projection: FunctorF,
    pub marked: Vec<bool>,
    tables: Arc<Tables>,
}

impl std::fmt::Debug for OperatorCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OperatorCategory")
            .field("operad", &self.operad.name())
            .field("bound", &self.bound)
            .field("objects", &self.total.object_count())
            .field("arrows", &self.total.arrow_count())
            .finish()
    }
}

pub fn operator_category(o: &SetOperad, bound: usize) -> OperatorCategory {
    operator_category_over(o, &FinStar::new(bound))
}

/// Builds the category of operators over an existing truncation of
/// `Fin_*`, so that several categories can share one base.
pub fn operator_category_over(o: &SetOperad, base: &FinStar) -> OperatorCategory {
    let bound = base.bound;
    let k = o.color_count();
    let mut objects = Vec::new();
    let mut object_index = HashMap::new();
    for n in 0..=bound {
        for xs in color_tuples(k, n) {
            object_index.insert((n, xs.clone()), objects.len());
            objects.push((n, xs));
        }
    }
    let mut interner = Interner::default();
    let mut arrows = Vec::new();
    let mut arrow_index = HashMap::new();
    for (x, (n, xs)) in objects.iter().enumerate() {
        for m in 0..=bound {
            for &alpha in base.category.hom(*n, m) {
                let map = base.map(alpha);
                let groups: Vec<Vec<Color>> =
                    (1..=m).map(|j| map.preimage(j).iter().map(|&i| xs[i - 1]).collect()).collect();
                for ys in color_tuples(k, m) {
                    let choices: Vec<Vec<u32>> = groups
                        .iter()
                        .zip(&ys)
                        .map(|(g, &y)| o.operations(g, y).into_iter().map(|p| interner.intern(p)).collect())
                        .collect();
                    if choices.iter().any(Vec::is_empty) {
                        continue;
                    }
                    let families: Vec<Vec<u32>> = if m == 0 {
                        vec![Vec::new()]
                    } else {
                        choices.into_iter().multi_cartesian_product().collect()
                    };
                    for components in families {
                        let data = ArrowData { source: x, base: alpha, components };
                        arrow_index.insert(data.clone(), arrows.len());
                        arrows.push(data);
                    }
                }
            }
        }
    }
    let object_name = |(n, xs): &(usize, Vec<Color>)| format!("<{n}>({})", xs.iter().map(|&c| o.color_name(c)).join(","));
    let object_names: Vec<String> = objects.iter().map(object_name).collect();
    let mut arrow_list = Vec::with_capacity(arrows.len());
    let mut marked = Vec::with_capacity(arrows.len());
    for a in &arrows {
        let map = base.map(a.base);
        let ys: Vec<Color> = a.components.iter().map(|&c| interner.ops[c as usize].output).collect();
        let t = object_index[&(map.target(), ys)];
        let labels = a.components.iter().map(|&c| interner.ops[c as usize].label.to_string()).join(";");
        arrow_list.push(Arrow { name: format!("{}:{}:[{}]", object_names[a.source], map, labels), source: a.source, target: t });
        marked.push(map.is_inert() && a.components.iter().all(|&c| o.is_unit(&interner.ops[c as usize])));
    }
    let identities: Vec<ArrowId> = objects
        .iter()
        .enumerate()
        .map(|(x, (n, xs))| {
            let components = xs.iter().map(|&c| interner.index[&o.unit(c)]).collect();
            let id = base.arrow(&PointedMap::identity(*n)).expect("identity in base");
            arrow_index[&ArrowData { source: x, base: id, components }]
        })
        .collect();
    let proj_objects: Vec<usize> = objects.iter().map(|(n, _)| *n).collect();
    let proj_arrows: Vec<ArrowId> = arrows.iter().map(|a| a.base).collect();
    let tables = Arc::new(Tables { operad: o.clone(), base: base.clone(), objects, object_index, arrows, arrow_index, interner });
    let memo: Mutex<HashMap<(ArrowId, ArrowId), Option<ArrowId>>> = Mutex::new(HashMap::new());
    let t2 = tables.clone();
    let rule = move |g: ArrowId, f: ArrowId| -> Option<ArrowId> {
        if let Some(&hit) = memo.lock().expect("memo poisoned").get(&(g, f)) {
            return hit;
        }
        let h = t2.composite(g, f);
        memo.lock().expect("memo poisoned").insert((g, f), h);
        h
    };
    let total = FinCategory::assemble(object_names, arrow_list, identities, Composer::Rule(Arc::new(rule)));
    let projection = FunctorF { source: total.clone(), target: base.category.clone(), objects: proj_objects, arrows: proj_arrows };
    OperatorCategory { operad: o.clone(), bound, base: base.clone(), total, projection, marked, tables }
}

impl OperatorCategory {
    pub fn object_for(&self, colors: &[Color]) -> Option<ObjId> {
        self.tables.object_index.get(&(colors.len(), colors.to_vec())).copied()
    }

    /// `(⟨n⟩, colors)` of an object.
    pub fn object_colors(&self, x: ObjId) -> &[Color] {
        &self.tables.objects[x].1
    }

    /// The components `φ_1 … φ_m` of an arrow.
    pub fn components(&self, f: ArrowId) -> Vec<Operation> {
        self.tables.arrows[f].components.iter().map(|&c| self.tables.interner.ops[c as usize].clone()).collect()
    }

    /// The arrow from `source` over `base` with the given components.
    pub fn arrow_for(&self, source: ObjId, base: ArrowId, components: &[Operation]) -> Option<ArrowId> {
        let components = components
            .iter()
            .map(|p| self.tables.interner.index.get(p).copied())
            .collect::<Option<Vec<u32>>>()?;
        self.tables.arrow_index.get(&ArrowData { source, base, components }).copied()
    }

    pub fn is_marked(&self, f: ArrowId) -> bool {
        self.marked[f]
    }

    pub fn marked_category(&self) -> MarkedFinCategory {
        MarkedFinCategory {
            underlying: self.total.clone(),
            marked: self.total.arrows().filter(|&f| self.marked[f]).collect(),
        }
    }

    /// Over an inert map with every component invertible: the saturation
    /// of the marking.
    pub fn is_inert_equivalence(&self, f: ArrowId) -> bool {
        let o = &self.operad;
        self.base.map(self.projection.arrows[f]).is_inert()
            && self.components(f).iter().all(|p| {
                o.operations(&[p.output], p.inputs[0]).iter().any(|q| {
                    let there = o.compose(q, std::slice::from_ref(p));
                    let back = o.compose(p, std::slice::from_ref(q));
                    there.is_some_and(|h| o.is_unit(&h)) && back.is_some_and(|h| o.is_unit(&h))
                })
            })
    }

    /// The fiber over `⟨n⟩` with the ids of its objects and arrows in the
    /// total category.
    pub fn fiber(&self, n: usize) -> (FinCategory, Vec<ObjId>, Vec<ArrowId>) {
        fiber_of(&self.total, &self.projection, &self.base, n)
    }
}

pub(crate) fn fiber_of(
    total: &FinCategory,
    projection: &FunctorF,
    base: &FinStar,
    n: usize,
) -> (FinCategory, Vec<ObjId>, Vec<ArrowId>) {
    let id = base.arrow(&PointedMap::identity(n)).expect("identity in base");
    let objects: Vec<ObjId> = total.objects().filter(|&x| projection.objects.get(x) == Some(&n)).collect();
    let arrows: Vec<ArrowId> = objects
        .iter()
        .flat_map(|&x| total.outgoing(x).iter().copied())
        .filter(|&f| projection.arrows.get(f) == Some(&id) && projection.objects.get(total.target(f)) == Some(&n))
        .collect();
    (total.subcategory(&objects, &arrows), objects, arrows)
}

/// The fiber of `K^⊔` over `⟨n⟩`.
pub fn sqcup_fiber(k: &FinCategory, n: usize) -> FinCategory {
    operator_category(&sqcup(k), n).fiber(n).0
}

/// Arrows of `K^⊔` over `α` from `x̄` to `ȳ`: one arrow `x_i → y_{α(i)}`
/// for every `i` not sent to the basepoint, listed by increasing `i`.
pub fn sqcup_arrows(k: &FinCategory, xs: &[ObjId], ys: &[ObjId], alpha: &PointedMap) -> Result<Vec<Vec<ArrowId>>> {
    if xs.len() != alpha.source() || ys.len() != alpha.target() {
        return Err(Error::ArityMismatch(format!(
            "{alpha} needs {} sources and {} targets, got {} and {}",
            alpha.source(),
            alpha.target(),
            xs.len(),
            ys.len()
        )));
    }
    let homs: Vec<Vec<ArrowId>> = (1..=alpha.source())
        .filter(|&i| alpha.apply(i) != 0)
        .map(|i| k.hom(xs[i - 1], ys[alpha.apply(i) - 1]).to_vec())
        .collect();
    if homs.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    Ok(homs.into_iter().multi_cartesian_product().collect())
}

/// The comparison `γ_O: K × O^⊗ → (K^⊔ ×_Com O)^⊗` of categories over the
/// base.
#[derive(Clone, Debug)]
pub struct GammaMap {
    pub functor: FunctorF,
    /// Source arrows `(u, β)` with `u` invertible and `β` marked.
    pub source_marked: Vec<bool>,
    pub operators: OperatorCategory,
    pub target: OperatorCategory,
}

impl GammaMap {
    /// First marked source arrow whose image is not an inert equivalence.
    pub fn marking_violation(&self) -> Option<ArrowId> {
        self.functor
            .source
            .arrows()
            .find(|&f| self.source_marked[f] && !self.target.is_inert_equivalence(self.functor.arrows[f]))
    }

    /// Projection of a source arrow to the base, through the second factor.
    pub fn source_projection(&self, f: ArrowId) -> ArrowId {
        self.operators.projection.arrows[f % self.operators.total.arrow_count()]
    }
}

pub fn gamma_map(k: &FinCategory, o: &SetOperad, bound: usize) -> Result<GammaMap> {
    let base = FinStar::new(bound);
    let operators = operator_category_over(o, &base);
    let target = operator_category_over(&product_over_com(&sqcup(k), o), &base);
    let source = product(k, &operators.total);
    let q = o.color_count();
    let (xn, xa) = (operators.total.object_count(), operators.total.arrow_count());
    let mut objects = Vec::with_capacity(source.object_count());
    for kk in k.objects() {
        for x in operators.total.objects() {
            let colors: Vec<Color> = operators.object_colors(x).iter().map(|&c| kk * q + c).collect();
            objects.push(target.object_for(&colors).ok_or_else(|| {
                Error::BoundTooSmall { bound, detail: format!("no target object for ({}, {})", k.object_name(kk), operators.total.object_name(x)) }
            })?);
        }
    }
    let mut arrows = Vec::with_capacity(source.arrow_count());
    let mut source_marked = Vec::with_capacity(source.arrow_count());
    for u in k.arrows() {
        let u_iso = is_isomorphism(k, u)?;
        let (ku, kv) = (k.source(u), k.target(u));
        let atom = Label::atom(k.arrow_name(u));
        for a in operators.total.arrows() {
            let comps: Vec<Operation> = operators
                .components(a)
                .into_iter()
                .map(|p| Operation {
                    inputs: p.inputs.iter().map(|&c| ku * q + c).collect(),
                    output: kv * q + p.output,
                    label: Label::Tuple(vec![Label::Tuple(vec![atom.clone(); p.arity()]), p.label]),
                })
                .collect();
            let src = objects[ku * xn + operators.total.source(a)];
            let image = target.arrow_for(src, operators.projection.arrows[a], &comps).ok_or_else(|| {
                Error::BoundTooSmall { bound, detail: format!("no image for ({}, {})", k.arrow_name(u), operators.total.arrow_name(a)) }
            })?;
            arrows.push(image);
            source_marked.push(u_iso && operators.marked[a]);
        }
    }
    debug_assert_eq!(arrows.len(), k.arrow_count() * xa);
    let functor = FunctorF { source, target: target.total.clone(), objects, arrows };
    Ok(GammaMap { functor, source_marked, operators, target })
}

/// Outcome of comparing base-preserving functors `B → K^⊔` with functors
/// `B ×_{Fin_*} Γ* → K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentabilityReport {
    pub over_sqcup: usize,
    pub over_gamma: usize,
}

impl RepresentabilityReport {
    pub fn holds(&self) -> bool {
        self.over_sqcup == self.over_gamma
    }
}

/// Counts both sides of the representability bijection for `q: B → Fin_*`.
/// The marking of `B` is carried along but does not enter the counts.
pub fn sqcup_representability_check(
    b: &MarkedFinCategory,
    q: &FunctorF,
    base: &FinStar,
    k: &FinCategory,
    budget: u64,
) -> Result<RepresentabilityReport> {
    let _ = &b.marked;
    let envelope = operator_category_over(&sqcup(k), base);
    let constraints = FunctorConstraints::default()
        .objects(|x: ObjId, y: ObjId| envelope.projection.objects[y] == q.objects[x])
        .arrows(|f: ArrowId, g: ArrowId| envelope.projection.arrows[g] == q.arrows[f]);
    let over_sqcup = enumerate_functors(&b.underlying, &envelope.total, &constraints, budget)?.len();
    let (_, pi) = gamma_star_over(base);
    let fibered = pullback(q, &pi)?;
    let over_gamma = enumerate_functors(&fibered, k, &FunctorConstraints::default(), budget)?.len();
    Ok(RepresentabilityReport { over_sqcup, over_gamma })
}

/// Distinct component families over each base arrow, for tests.
#[cfg(test)]
pub(crate) fn families_over(c: &OperatorCategory, alpha: ArrowId) -> std::collections::HashSet<(ObjId, Vec<Operation>)> {
    c.total
        .arrows()
        .filter(|&f| c.projection.arrows[f] == alpha)
        .map(|f| (c.total.source(f), c.components(f)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{
        category_iso, chain, check_laws, discrete, power, saturate_marking, terminal, walking_arrow, walking_iso,
        DEFAULT_BUDGET,
    };
    use crate::finstar::fin_star_truncated;
    use crate::operad::{diagram_operad, sample_operad, terminal_com, trivial_operad};

    #[test]
    fn com_operators_are_fin_star() {
        for n in 0..=3 {
            let c = operator_category(&terminal_com(), n);
            check_laws(&c.total).unwrap();
            c.projection.check().unwrap();
            assert!(category_iso(&c.total, &fin_star_truncated(n), DEFAULT_BUDGET).unwrap().is_some());
            assert!(c.projection.is_bijective());
        }
    }

    #[test]
    fn operator_categories_are_categories() {
        for o in [sample_operad(), trivial_operad(), sqcup(&walking_arrow()), diagram_operad(&chain(1), &terminal_com())] {
            let c = operator_category(&o, 2);
            check_laws(&c.total).unwrap();
            c.projection.check().unwrap();
        }
    }

    #[test]
    fn two_color_objects() {
        let c = operator_category(&sample_operad(), 3);
        assert_eq!(c.fiber(2).1.len(), 4);
        assert_eq!(c.total.object_count(), 1 + 2 + 4 + 8);
    }

    #[test]
    fn fiber_law_small() {
        for k in [terminal(), walking_arrow(), walking_iso(), discrete(2)] {
            for n in 0..=2 {
                let f = sqcup_fiber(&k, n);
                assert!(category_iso(&f, &power(&k, n), DEFAULT_BUDGET).unwrap().is_some(), "n = {n}");
            }
        }
        assert_eq!(sqcup_fiber(&walking_arrow(), 2).object_count(), 4);
    }

    #[test]
    fn sqcup_arrow_examples() {
        let k = walking_arrow();
        let (a, b) = (0, 1);
        assert_eq!(sqcup_arrows(&k, &[a, b], &[a], &PointedMap::rho(2, 1)).unwrap().len(), 1);
        assert_eq!(sqcup_arrows(&k, &[a, a], &[b], &PointedMap::fold(2)).unwrap().len(), 1);
        let zero: PointedMap = "2->1:[0,0]".parse().unwrap();
        assert_eq!(sqcup_arrows(&k, &[b, b], &[a], &zero).unwrap(), vec![Vec::<ArrowId>::new()]);
        assert!(matches!(sqcup_arrows(&k, &[a], &[a], &PointedMap::fold(2)), Err(Error::ArityMismatch(_))));
    }

    #[test]
    fn envelope_agrees_with_sqcup_arrows() {
        let k = chain(2);
        let c = operator_category(&sqcup(&k), 2);
        for f in c.total.arrows() {
            let alpha = c.base.map(c.projection.arrows[f]).clone();
            let xs = c.object_colors(c.total.source(f)).to_vec();
            let ys = c.object_colors(c.total.target(f)).to_vec();
            let mut per_i = vec![None; alpha.source()];
            for (j, p) in c.components(f).iter().enumerate() {
                for (slot, &i) in alpha.preimage(j + 1).iter().enumerate() {
                    per_i[i - 1] = Some(k.arrow_id(&p.label.parts()[slot].to_string()).unwrap());
                }
            }
            let collection: Vec<ArrowId> = per_i.into_iter().flatten().collect();
            assert!(sqcup_arrows(&k, &xs, &ys, &alpha).unwrap().contains(&collection));
        }
        let total: usize = c
            .total
            .objects()
            .flat_map(|x| c.total.objects().map(move |y| (x, y)))
            .map(|(x, y)| {
                let (n, m) = (c.projection.objects[x], c.projection.objects[y]);
                c.base
                    .category
                    .hom(n, m)
                    .iter()
                    .map(|&a| sqcup_arrows(&k, c.object_colors(x), c.object_colors(y), c.base.map(a)).unwrap().len())
                    .sum::<usize>()
            })
            .sum();
        assert_eq!(total, c.total.arrow_count());
    }

    #[test]
    fn marking_saturates_to_inert_equivalences() {
        let c = operator_category(&sample_operad(), 2);
        let seed: Vec<ArrowId> = c.total.arrows().filter(|&f| c.marked[f]).collect();
        let sat = saturate_marking(&c.total, &seed);
        for f in c.total.arrows() {
            assert_eq!(sat.is_marked(f), c.is_inert_equivalence(f), "{}", c.total.arrow_name(f));
        }
    }

    #[test]
    fn gamma_examples() {
        let o = sample_operad();
        let g = gamma_map(&terminal(), &o, 2).unwrap();
        g.functor.check().unwrap();
        assert!(g.functor.is_bijective());
        let g = gamma_map(&walking_iso(), &o, 2).unwrap();
        g.functor.check().unwrap();
        assert_eq!(g.marking_violation(), None);
        for f in g.functor.source.arrows() {
            assert_eq!(g.target.projection.arrows[g.functor.arrows[f]], g.source_projection(f));
        }
        let n = 2;
        let over_n = |c: &FinCategory, proj: &dyn Fn(ObjId) -> usize| c.objects().filter(|&x| proj(x) == n).count();
        let src = over_n(&g.functor.source, &|x| g.operators.projection.objects[x % g.operators.total.object_count()]);
        let tgt = over_n(&g.target.total, &|x| g.target.projection.objects[x]);
        assert_eq!(src, 2 * 2 * 2);
        assert_eq!(tgt, 4 * 4);
    }

    #[test]
    fn families_are_distinct() {
        let c = operator_category(&sample_operad(), 2);
        for alpha in c.base.category.arrows() {
            let count = c.total.arrows().filter(|&f| c.projection.arrows[f] == alpha).count();
            assert_eq!(families_over(&c, alpha).len(), count);
        }
    }
}
