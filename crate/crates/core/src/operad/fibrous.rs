//! Fibrousness of a category over a truncation of `Fin_*`.
//!
//! The checker only looks at the total category, its projection and its
//! marking, so it can be pointed at deliberately corrupted data.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use super::opcat::fiber_of;
use super::OperatorCategory;
use crate::fincat::{power, ArrowId, FinCategory, FunctorF, ObjId};
use crate::finstar::PointedMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrousReport {
    pub bound: usize,
    /// `(axiom, witness)` of the first failure.
    pub failure: Option<(String, String)>,
}

impl FibrousReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for FibrousReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bound: {}", self.bound)?;
        match &self.failure {
            None => writeln!(f, "verdict: pass"),
            Some((axiom, witness)) => {
                writeln!(f, "verdict: fail")?;
                writeln!(f, "axiom: {axiom}")?;
                writeln!(f, "witness: {witness}")
            }
        }
    }
}

type Check = std::result::Result<(), (String, String)>;

fn fail(axiom: &str, witness: String) -> Check {
    Err((axiom.to_string(), witness))
}

struct View<'a> {
    x: &'a OperatorCategory,
    total: &'a FinCategory,
}

impl View<'_> {
    fn base_arrow(&self, f: ArrowId) -> ArrowId {
        self.x.projection.arrows[f]
    }

    fn map(&self, f: ArrowId) -> &PointedMap {
        self.x.base.map(self.base_arrow(f))
    }

    fn over(&self, x: ObjId) -> usize {
        self.x.projection.objects[x]
    }

    fn obj(&self, x: ObjId) -> &str {
        self.total.object_name(x)
    }

    fn arr(&self, f: ArrowId) -> &str {
        self.total.arrow_name(f)
    }

    /// Marked arrow out of `x` over the given base arrow, if any.
    fn lift(&self, x: ObjId, alpha: ArrowId) -> Option<ArrowId> {
        self.total.outgoing(x).iter().copied().find(|&f| self.x.marked[f] && self.base_arrow(f) == alpha)
    }

    fn shape(&self) -> Check {
        let x = self.x;
        if x.projection.objects.len() != self.total.object_count()
            || x.projection.arrows.len() != self.total.arrow_count()
            || x.marked.len() != self.total.arrow_count()
        {
            return fail("projection", "projection or marking does not cover the total category".into());
        }
        if let Err(e) = x.projection.check() {
            return fail("projection", e.to_string());
        }
        for f in self.total.arrows() {
            if x.marked[f] && !self.map(f).is_inert() {
                return fail("marking", format!("marked arrow `{}` lies over non-inert {}", self.arr(f), self.map(f)));
            }
            if self.total.is_identity(f) && !x.marked[f] {
                return fail("marking", format!("identity `{}` is not marked", self.arr(f)));
            }
        }
        Ok(())
    }

    /// `f: X → Y` over inert `α` is cocartesian: `g ↦ g∘f` is a bijection
    /// from `Hom(Y, Z)` onto the arrows `X → Z` over some `β∘α`.
    fn cocartesian(&self, f: ArrowId) -> Check {
        let (s, t) = (self.total.source(f), self.total.target(f));
        let alpha = self.base_arrow(f);
        let base = &self.x.base.category;
        for z in self.total.objects() {
            let through: HashSet<ArrowId> =
                base.hom(self.over(t), self.over(z)).iter().filter_map(|&b| base.compose(b, alpha)).collect();
            let expected: HashSet<ArrowId> =
                self.total.hom(s, z).iter().copied().filter(|&h| through.contains(&self.base_arrow(h))).collect();
            let mut seen = HashSet::new();
            for &g in self.total.hom(t, z) {
                let Some(h) = self.total.compose(g, f) else {
                    return fail("(a) cocartesian lifts", format!("`{}` ∘ `{}` is undefined", self.arr(g), self.arr(f)));
                };
                if !seen.insert(h) {
                    return fail(
                        "(a) cocartesian lifts",
                        format!("marked `{}` is not cocartesian: two arrows to `{}` give `{}`", self.arr(f), self.obj(z), self.arr(h)),
                    );
                }
            }
            if let Some(h) = expected.iter().copied().filter(|h| !seen.contains(h)).min() {
                return fail(
                    "(a) cocartesian lifts",
                    format!("marked `{}` is not cocartesian: `{}` does not factor through it", self.arr(f), self.arr(h)),
                );
            }
        }
        Ok(())
    }

    fn lifts_from(&self, x: ObjId) -> Check {
        let n = self.over(x);
        for m in 0..=self.x.bound {
            for &alpha in self.x.base.category.hom(n, m) {
                if !self.x.base.map(alpha).is_inert() {
                    continue;
                }
                if self.lift(x, alpha).is_none() {
                    return fail(
                        "(a) cocartesian lifts",
                        format!("object `{}` has no marked lift of {}", self.obj(x), self.x.base.map(alpha)),
                    );
                }
            }
        }
        for &f in self.total.outgoing(x) {
            if self.x.marked[f] {
                self.cocartesian(f)?;
            }
        }
        Ok(())
    }

    fn rho(&self, n: usize, j: usize) -> ArrowId {
        self.x.base.arrow(&PointedMap::rho(n, j)).expect("ρ in base")
    }

    /// The fiber over `⟨n⟩` maps isomorphically onto the `n`-th power of
    /// the fiber over `⟨1⟩` along the chosen inert lifts.
    fn segal(&self, n: usize) -> Check {
        let (fiber, objects, arrows) = fiber_of(self.total, &self.x.projection, &self.x.base, n);
        if n == 0 {
            if fiber.object_count() != 1 || fiber.arrow_count() != 1 {
                return fail(
                    "(b) Segal condition",
                    format!("fiber over <0> has {} objects and {} arrows", fiber.object_count(), fiber.arrow_count()),
                );
            }
            return Ok(());
        }
        let (one, one_objects, one_arrows) = fiber_of(self.total, &self.x.projection, &self.x.base, 1);
        let obj_pos: HashMap<ObjId, usize> = one_objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let arr_pos: HashMap<ArrowId, usize> = one_arrows.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let id1 = self.x.base.arrow(&PointedMap::identity(1)).expect("identity");
        let lifts: Vec<Vec<ArrowId>> = objects
            .iter()
            .map(|&x| (1..=n).map(|j| self.lift(x, self.rho(n, j)).expect("checked in (a)")).collect())
            .collect();
        let (ko, ka) = (one.object_count(), one.arrow_count());
        let mut obj_map = Vec::with_capacity(objects.len());
        for object_lifts in &lifts {
            let mut index = 0;
            for &l in object_lifts {
                let Some(&p) = obj_pos.get(&self.total.target(l)) else {
                    return fail("(b) Segal condition", format!("lift `{}` leaves the fiber over <1>", self.arr(l)));
                };
                index = index * ko + p;
            }
            obj_map.push(index);
        }
        let local: HashMap<ObjId, usize> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut arr_map = Vec::with_capacity(arrows.len());
        for &f in &arrows {
            let (s, t) = (local[&self.total.source(f)], local[&self.total.target(f)]);
            let mut index = 0;
            for j in 0..n {
                let (ls, lt) = (lifts[s][j], lifts[t][j]);
                let Some(h) = self.total.compose(lt, f) else {
                    return fail("(b) Segal condition", format!("`{}` ∘ `{}` is undefined", self.arr(lt), self.arr(f)));
                };
                let (ys, yt) = (self.total.target(ls), self.total.target(lt));
                let found = self
                    .total
                    .hom(ys, yt)
                    .iter()
                    .copied()
                    .find(|&g| self.base_arrow(g) == id1 && self.total.compose(g, ls) == Some(h));
                let Some(g) = found else {
                    return fail(
                        "(b) Segal condition",
                        format!("component {} of `{}` does not factor through `{}`", j + 1, self.arr(f), self.arr(ls)),
                    );
                };
                index = index * ka + arr_pos[&g];
            }
            arr_map.push(index);
        }
        let target = power(&one, n);
        let functor = FunctorF { source: fiber.clone(), target, objects: obj_map, arrows: arr_map };
        if let Err(e) = functor.check() {
            return fail("(b) Segal condition", format!("fiber over <{n}> → (fiber over <1>)^{n} is not a functor: {e}"));
        }
        if !functor.is_bijective() {
            let detail = first_non_bijective(&functor, &fiber);
            return fail("(b) Segal condition", format!("fiber over <{n}> is not (fiber over <1>)^{n}: {detail}"));
        }
        Ok(())
    }

    /// Arrows over `α` correspond to families of arrows over `ρ^j ∘ α`.
    fn decomposition_from(&self, x: ObjId) -> Check {
        let n = self.over(x);
        let base = &self.x.base.category;
        for y in self.total.objects() {
            let m = self.over(y);
            let targets: Vec<ArrowId> = (1..=m).map(|j| self.lift(y, self.rho(m, j)).expect("checked in (a)")).collect();
            let mut by_alpha: HashMap<ArrowId, Vec<ArrowId>> = HashMap::new();
            for &f in self.total.hom(x, y) {
                by_alpha.entry(self.base_arrow(f)).or_default().push(f);
            }
            let mut counts: Vec<HashMap<ArrowId, usize>> = Vec::with_capacity(m);
            for &l in &targets {
                let mut c = HashMap::new();
                for &h in self.total.hom(x, self.total.target(l)) {
                    *c.entry(self.base_arrow(h)).or_insert(0) += 1;
                }
                counts.push(c);
            }
            for &alpha in base.hom(n, m) {
                let over = by_alpha.get(&alpha).map(Vec::as_slice).unwrap_or(&[]);
                let mut expected = 1usize;
                for (j, c) in counts.iter().enumerate() {
                    let ra = base.compose(self.rho(m, j + 1), alpha).expect("composable");
                    expected *= c.get(&ra).copied().unwrap_or(0);
                }
                let mut seen = HashSet::new();
                for &f in over {
                    let family: Option<Vec<ArrowId>> = targets.iter().map(|&l| self.total.compose(l, f)).collect();
                    let Some(family) = family else {
                        return fail("(c) decomposition", format!("a projection of `{}` is undefined", self.arr(f)));
                    };
                    if !seen.insert(family) {
                        return fail(
                            "(c) decomposition",
                            format!("`{}` and another arrow over {} have the same projections", self.arr(f), base.arrow_name(alpha)),
                        );
                    }
                }
                if seen.len() != expected {
                    return fail(
                        "(c) decomposition",
                        format!(
                            "{} arrows `{}` → `{}` over {} but {} families over the projections",
                            seen.len(),
                            self.obj(x),
                            self.obj(y),
                            base.arrow_name(alpha),
                            expected
                        ),
                    );
                }
            }
        }
        Ok(())
    }
}

fn first_non_bijective(f: &FunctorF, source: &FinCategory) -> String {
    let mut seen = HashMap::new();
    for x in source.objects() {
        if let Some(other) = seen.insert(f.objects[x], x) {
            return format!("objects `{}` and `{}` have the same image", source.object_name(other), source.object_name(x));
        }
    }
    let mut seen = HashMap::new();
    for a in source.arrows() {
        if let Some(other) = seen.insert(f.arrows[a], a) {
            return format!("arrows `{}` and `{}` have the same image", source.arrow_name(other), source.arrow_name(a));
        }
    }
    if let Some(y) = f.target.objects().find(|y| !f.objects.contains(y)) {
        return format!("object `{}` has no preimage", f.target.object_name(y));
    }
    let hit: HashSet<ArrowId> = f.arrows.iter().copied().collect();
    match f.target.arrows().find(|a| !hit.contains(a)) {
        Some(a) => format!("arrow `{}` has no preimage", f.target.arrow_name(a)),
        None => "sizes differ".into(),
    }
}

fn first_failure(results: Vec<Check>) -> Check {
    results.into_iter().find(Result::is_err).unwrap_or(Ok(()))
}

/// Checks the projection, the marking, (a) cocartesian inert lifts, (b) the
/// Segal condition on fibers and (c) the decomposition of arrows along
/// inert projections, everything within the truncation.
pub fn fibrous_check(x: &OperatorCategory) -> FibrousReport {
    let view = View { x, total: &x.total };
    let run = || -> Check {
        view.shape()?;
        let objects: Vec<ObjId> = view.total.objects().collect();
        first_failure(objects.par_iter().map(|&o| view.lifts_from(o)).collect())?;
        for n in 0..=x.bound {
            view.segal(n)?;
        }
        first_failure(objects.par_iter().map(|&o| view.decomposition_from(o)).collect())
    };
    FibrousReport { bound: x.bound, failure: run().err() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendroid::{binary_corolla, free_operad};
    use crate::operad::{mutation_corpus, operator_category, sample_operad, sqcup, terminal_com, trivial_operad};

    #[test]
    fn valid_operator_categories_pass() {
        for o in [terminal_com(), trivial_operad(), sample_operad(), free_operad(&binary_corolla())] {
            let r = fibrous_check(&operator_category(&o, 2));
            assert!(r.passed(), "{}: {r}", o.name());
        }
        let r = fibrous_check(&operator_category(&sqcup(&crate::fincat::walking_iso()), 2));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn every_mutation_fails() {
        for (name, c) in mutation_corpus() {
            let r = fibrous_check(&c);
            assert!(!r.passed(), "mutation `{name}` passed");
        }
    }
}
