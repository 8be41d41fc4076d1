use std::fmt;

use super::enumerate_operad_morphisms;
use crate::error::{Error, Result};
use crate::fincat::{
    assemble_functor_category, enumerate_functors, functor_category, ArrowId, FinCategory, FunctorCategory,
    FunctorConstraints, FunctorF, ObjId,
};
use crate::finstar::{FinStar, PointedMap};
use crate::operad::{diagram_operad, operator_category_over, Color, Label, Operation, OperatorCategory, SetOperad};

/// `Alg_O(C)` at arity bound `N`: functors between categories of operators
/// over the base that preserve marked arrows, and the natural
/// transformations between them whose components lie over identities.
#[derive(Clone, Debug)]
pub struct AlgCategory {
    pub source: OperatorCategory,
    pub target: OperatorCategory,
    pub algebras: FunctorCategory,
}

impl AlgCategory {
    pub fn category(&self) -> &FinCategory {
        &self.algebras.category
    }
}

/// Marked arrows first, then everything else by the size of the target of
/// its base map, so that projections are placed before the arrows they
/// determine.
fn branching_order(x: &OperatorCategory) -> Vec<ArrowId> {
    let mut order: Vec<ArrowId> = x.total.arrows().collect();
    order.sort_by_key(|&f| {
        let map = x.base.map(x.projection.arrows[f]);
        (!x.is_marked(f), map.target(), map.source(), f)
    });
    order
}

pub(crate) fn alg_category_over(o: &SetOperad, c: &SetOperad, base: &FinStar, budget: u64) -> Result<AlgCategory> {
    let xs = operator_category_over(o, base);
    let xc = operator_category_over(c, base);
    let functors = {
        let constraints = FunctorConstraints::default()
            .objects(|x, y| xs.projection.objects[x] == xc.projection.objects[y])
            .arrows(|f, g| xs.projection.arrows[f] == xc.projection.arrows[g] && (!xs.is_marked(f) || xc.is_marked(g)))
            .arrow_order(branching_order(&xs));
        enumerate_functors(&xs.total, &xc.total, &constraints, budget)?
    };
    let vertical = |_: ObjId, a: ArrowId| {
        let map = base.map(xc.projection.arrows[a]);
        *map == PointedMap::identity(map.source())
    };
    let algebras = assemble_functor_category(functors, &vertical, budget, "A")?;
    Ok(AlgCategory { source: xs, target: xc, algebras })
}

pub fn alg_category(o: &SetOperad, c: &SetOperad, bound: usize, budget: u64) -> Result<AlgCategory> {
    alg_category_over(o, c, &FinStar::new(bound), budget)
}

/// Operad morphisms `O -> C` against objects of `Alg_O(C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub bound: usize,
    pub morphisms: usize,
    pub algebras: usize,
    /// First morphism whose induced functor is missing or repeated.
    pub witness: Option<String>,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none() && self.morphisms == self.algebras
    }
}

impl fmt::Display for BijectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "morphisms: {}", self.morphisms)?;
        writeln!(f, "algebras: {}", self.algebras)?;
        writeln!(f, "verdict: {}", if self.holds() { "pass" } else { "fail" })?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        Ok(())
    }
}

/// Sends every operad morphism to the functor it induces between the
/// categories of operators and checks that this is a bijection onto the
/// objects of `Alg_O(C)`.
pub fn inert_functor_bijection_check(o: &SetOperad, c: &SetOperad, bound: usize, budget: u64) -> Result<BijectionReport> {
    let morphisms = enumerate_operad_morphisms(o, c, bound, budget)?;
    let alg = alg_category(o, c, bound, budget)?;
    let (xs, xc) = (&alg.source, &alg.target);
    let mut hit = vec![false; alg.algebras.functors.len()];
    let mut witness = None;
    for (i, m) in morphisms.iter().enumerate() {
        let objects: Vec<ObjId> = xs
            .total
            .objects()
            .map(|x| {
                let ys: Vec<Color> = xs.object_colors(x).iter().map(|&c| m.colors[c]).collect();
                xc.object_for(&ys).expect("object exists")
            })
            .collect();
        let arrows: Option<Vec<ArrowId>> = xs
            .total
            .arrows()
            .map(|f| {
                let comps: Option<Vec<Operation>> = xs.components(f).iter().map(|p| m.apply(p).cloned()).collect();
                xc.arrow_for(objects[xs.total.source(f)], xs.projection.arrows[f], &comps?)
            })
            .collect();
        let found = arrows.and_then(|arrows| {
            alg.algebras.functor_index(&FunctorF { source: xs.total.clone(), target: xc.total.clone(), objects, arrows })
        });
        match found {
            Some(a) if !hit[a] => hit[a] = true,
            Some(a) => {
                witness = Some(format!("morphisms share algebra A{a} (morphism #{i})"));
                break;
            }
            None => {
                witness = Some(format!("morphism #{i} induces no algebra"));
                break;
            }
        }
    }
    Ok(BijectionReport { bound, morphisms: morphisms.len(), algebras: hit.len(), witness })
}

/// The comparison `Alg_{O_K}(C) -> Fun(K, Alg_O(C))`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub source: AlgCategory,
    pub middle: AlgCategory,
    pub target: FunctorCategory,
    pub functor: FunctorF,
}

/// Embeds the category of operators of `O` at `k`, as `x ↦ (k, x)`.
struct Inclusions<'a> {
    k: &'a FinCategory,
    o: &'a SetOperad,
    diagram: &'a OperatorCategory,
    small: &'a OperatorCategory,
}

impl Inclusions<'_> {
    fn color(&self, k: ObjId, x: Color) -> Color {
        k * self.o.color_count() + x
    }

    fn object(&self, k: ObjId, x: ObjId) -> Result<ObjId> {
        let ys: Vec<Color> = self.small.object_colors(x).iter().map(|&c| self.color(k, c)).collect();
        self.diagram.object_for(&ys).ok_or_else(|| Error::InvalidFunctor(format!("no object over {ys:?}")))
    }

    fn arrow(&self, k: ObjId, f: ArrowId) -> Result<ArrowId> {
        let id = Label::atom(self.k.arrow_name(self.k.identity(k)));
        let comps: Vec<Operation> = self
            .small
            .components(f)
            .into_iter()
            .map(|p| Operation {
                inputs: p.inputs.iter().map(|&c| self.color(k, c)).collect(),
                output: self.color(k, p.output),
                label: Label::Tuple(vec![p.label.clone(), Label::Tuple(vec![id.clone(); p.arity()])]),
            })
            .collect();
        let source = self.object(k, self.small.total.source(f))?;
        self.diagram.arrow_for(source, self.small.projection.arrows[f], &comps).ok_or_else(|| {
            Error::InvalidFunctor(format!("arrow {} has no image at {}", self.small.total.arrow_name(f), self.k.object_name(k)))
        })
    }

    /// The arrow `(k, x) -> (k', x)` over the identity carrying `(unit, u)`
    /// in every component.
    fn along(&self, u: ArrowId, x: ObjId) -> Result<ArrowId> {
        let (k, k2) = (self.k.source(u), self.k.target(u));
        let colors = self.small.object_colors(x);
        let comps: Vec<Operation> = colors
            .iter()
            .map(|&c| Operation {
                inputs: vec![self.color(k, c)],
                output: self.color(k2, c),
                label: Label::Tuple(vec![
                    self.o.unit(c).label,
                    Label::Tuple(vec![Label::atom(self.k.arrow_name(u))]),
                ]),
            })
            .collect();
        let source = self.object(k, x)?;
        let base = self.diagram.base.arrow(&PointedMap::identity(colors.len())).expect("identity in base");
        self.diagram.arrow_for(source, base, &comps).ok_or_else(|| {
            Error::InvalidFunctor(format!("arrow {} has no image at {}", self.k.arrow_name(u), self.small.total.object_name(x)))
        })
    }
}

pub fn restriction_functor(k: &FinCategory, o: &SetOperad, c: &SetOperad, bound: usize, budget: u64) -> Result<Restriction> {
    restriction_functor_on(&diagram_operad(k, o), k, o, c, bound, budget)
}

fn restriction_functor_on(
    diagram: &SetOperad,
    k: &FinCategory,
    o: &SetOperad,
    c: &SetOperad,
    bound: usize,
    budget: u64,
) -> Result<Restriction> {
    let base = FinStar::new(bound);
    let source = alg_category_over(diagram, c, &base, budget)?;
    let middle = alg_category_over(o, c, &base, budget)?;
    let target = functor_category(k, middle.category(), budget)?;
    let inc = Inclusions { k, o, diagram: &source.source, small: &middle.source };
    let small = &middle.source.total;

    let incl_objects: Vec<Vec<ObjId>> =
        k.objects().map(|kk| small.objects().map(|x| inc.object(kk, x)).collect()).collect::<Result<_>>()?;
    let incl_arrows: Vec<Vec<ArrowId>> =
        k.objects().map(|kk| small.arrows().map(|f| inc.arrow(kk, f)).collect()).collect::<Result<_>>()?;
    let along: Vec<Vec<ArrowId>> =
        k.arrows().map(|u| small.objects().map(|x| inc.along(u, x)).collect()).collect::<Result<_>>()?;

    let mut restricted: Vec<Vec<ObjId>> = Vec::new();
    let mut objects = Vec::new();
    for (ai, a) in source.algebras.functors.iter().enumerate() {
        let mut at = Vec::new();
        for kk in k.objects() {
            let f = FunctorF {
                source: small.clone(),
                target: a.target.clone(),
                objects: incl_objects[kk].iter().map(|&y| a.objects[y]).collect(),
                arrows: incl_arrows[kk].iter().map(|&g| a.arrows[g]).collect(),
            };
            let idx = middle.algebras.functor_index(&f).ok_or_else(|| {
                Error::InvalidFunctor(format!("algebra A{ai} restricted to {} is not an algebra", k.object_name(kk)))
            })?;
            at.push(idx);
        }
        let mut arrows = Vec::new();
        for u in k.arrows() {
            let comps: Vec<ArrowId> = along[u].iter().map(|&g| a.arrows[g]).collect();
            let t = middle.algebras.transformation_index(at[k.source(u)], at[k.target(u)], &comps).ok_or_else(|| {
                Error::InvalidFunctor(format!("algebra A{ai} along {} is not an algebra map", k.arrow_name(u)))
            })?;
            arrows.push(t);
        }
        let g = FunctorF { source: k.clone(), target: middle.category().clone(), objects: at.clone(), arrows };
        let idx = target
            .functor_index(&g)
            .ok_or_else(|| Error::InvalidFunctor(format!("algebra A{ai} does not restrict to a diagram")))?;
        restricted.push(at);
        objects.push(idx);
    }
    let mut arrows = Vec::new();
    for (ei, e) in source.algebras.transformations.iter().enumerate() {
        let (a, b) = (source.category().source(ei), source.category().target(ei));
        let mut comps = Vec::new();
        for kk in k.objects() {
            let cs: Vec<ArrowId> = incl_objects[kk].iter().map(|&y| e.components[y]).collect();
            let t = middle.algebras.transformation_index(restricted[a][kk], restricted[b][kk], &cs).ok_or_else(|| {
                Error::InvalidFunctor(format!("map {} restricted to {} is not an algebra map", source.category().arrow_name(ei), k.object_name(kk)))
            })?;
            comps.push(t);
        }
        let t = target.transformation_index(objects[a], objects[b], &comps).ok_or_else(|| {
            Error::InvalidFunctor(format!("map {} does not restrict to a natural transformation", source.category().arrow_name(ei)))
        })?;
        arrows.push(t);
    }
    let functor = FunctorF { source: source.category().clone(), target: target.category.clone(), objects, arrows };
    Ok(Restriction { source, middle, target, functor })
}

/// Outcome of the universal-property check.
#[derive(Clone, Debug)]
pub struct UniversalReport {
    pub bound: usize,
    pub comparison: Option<Restriction>,
    pub isomorphism: bool,
    pub equivalence: Option<bool>,
    pub witness: Option<String>,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.isomorphism
    }
}

impl fmt::Display for UniversalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bound: {}", self.bound)?;
        if let Some(r) = &self.comparison {
            let (s, t) = (&r.functor.source, &r.functor.target);
            writeln!(f, "source: {} objects, {} arrows", s.object_count(), s.arrow_count())?;
            writeln!(f, "target: {} objects, {} arrows", t.object_count(), t.arrow_count())?;
        }
        writeln!(f, "verdict: {}", if self.isomorphism { "pass" } else { "fail" })?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        let eq = match self.equivalence {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        writeln!(f, "equivalence: {eq}")
    }
}

fn first_defect(r: &FunctorF) -> Option<String> {
    if let Err(e) = r.check() {
        return Some(format!("comparison is not a functor: {e}"));
    }
    let (s, t) = (&r.source, &r.target);
    let mut seen = vec![None; t.object_count()];
    for x in s.objects() {
        if let Some(y) = seen[r.objects[x]].replace(x) {
            return Some(format!("objects {} and {} have the same image", s.object_name(y), s.object_name(x)));
        }
    }
    if let Some(y) = seen.iter().position(Option::is_none) {
        return Some(format!("object {} is not hit", t.object_name(y)));
    }
    let mut seen = vec![None; t.arrow_count()];
    for f in s.arrows() {
        if let Some(g) = seen[r.arrows[f]].replace(f) {
            return Some(format!("arrows {} and {} have the same image", s.arrow_name(g), s.arrow_name(f)));
        }
    }
    seen.iter().position(Option::is_none).map(|g| format!("arrow {} is not hit", t.arrow_name(g)))
}

/// Decides whether restriction `Alg_{O_K}(C) -> Fun(K, Alg_O(C))` is an
/// isomorphism of finite categories, with equivalence as a separately
/// reported fallback.
pub fn universal_property_check(k: &FinCategory, o: &SetOperad, c: &SetOperad, bound: usize, budget: u64) -> Result<UniversalReport> {
    universal_property_check_on(&diagram_operad(k, o), k, o, c, bound, budget)
}

/// As [`universal_property_check`], with `diagram` standing in for the
/// diagram operad. Used to feed in corrupted diagram operads.
pub fn universal_property_check_on(
    diagram: &SetOperad,
    k: &FinCategory,
    o: &SetOperad,
    c: &SetOperad,
    bound: usize,
    budget: u64,
) -> Result<UniversalReport> {
    match restriction_functor_on(diagram, k, o, c, bound, budget) {
        Ok(r) => {
            let witness = first_defect(&r.functor);
            let equivalence = r.functor.check().is_ok().then(|| r.functor.is_equivalence());
            Ok(UniversalReport { bound, isomorphism: witness.is_none(), equivalence, witness, comparison: Some(r) })
        }
        Err(Error::InvalidFunctor(w)) => {
            Ok(UniversalReport { bound, comparison: None, isomorphism: false, equivalence: None, witness: Some(w) })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{category_iso, chain, terminal, DEFAULT_BUDGET};
    use crate::operad::{sample_operad, terminal_com, trivial_operad, unary_category};
    use crate::verify::VERIFY_BUDGET;

    #[test]
    fn com_into_com_is_terminal() {
        let a = alg_category(&terminal_com(), &terminal_com(), 2, VERIFY_BUDGET).unwrap();
        assert_eq!((a.category().object_count(), a.category().arrow_count()), (1, 1));
    }

    #[test]
    fn trivial_gives_the_unary_category() {
        let s = sample_operad();
        let a = alg_category(&trivial_operad(), &s, 2, VERIFY_BUDGET).unwrap();
        let u = unary_category(&s);
        assert!(category_iso(a.category(), &u, DEFAULT_BUDGET).unwrap().is_some());
    }

    #[test]
    fn bijection_with_morphisms() {
        for (o, c) in [(trivial_operad(), sample_operad()), (terminal_com(), terminal_com()), (terminal_com(), sample_operad())] {
            let r = inert_functor_bijection_check(&o, &c, 2, VERIFY_BUDGET).unwrap();
            assert!(r.holds(), "{r}");
        }
    }

    #[test]
    fn restriction_is_an_isomorphism() {
        for k in [terminal(), chain(1)] {
            let r = universal_property_check(&k, &trivial_operad(), &sample_operad(), 2, VERIFY_BUDGET).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!(r.equivalence, Some(true));
        }
    }
}
