//! Backtracking search for functors between finite categories.
//!
//! Objects are assigned first, pruning any candidate that leaves some
//! source arrow without an admissible image. Arrows are then assigned one
//! at a time; every assignment is propagated through composition with the
//! arrows already placed, so arrows that are composites of earlier choices
//! never branch.

use super::{ArrowId, FinCategory, FunctorF, ObjId};
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

type ObjectFilter<'a> = Box<dyn Fn(ObjId, ObjId) -> bool + 'a>;
type ArrowFilter<'a> = Box<dyn Fn(ArrowId, ArrowId) -> bool + 'a>;

/// Restrictions on the functors a search may return.
#[derive(Default)]
pub struct FunctorConstraints<'a> {
    /// `objects(x, y)`: may source object `x` go to target object `y`?
    pub objects: Option<ObjectFilter<'a>>,
    /// `arrows(f, g)`: may source arrow `f` go to target arrow `g`?
    pub arrows: Option<ArrowFilter<'a>>,
    /// Only bijective functors (isomorphisms).
    pub bijective: bool,
    /// Order in which source arrows are branched on; a permutation of the
    /// source arrows. Defaults to index order.
    pub order: Option<Vec<ArrowId>>,
}

impl<'a> FunctorConstraints<'a> {
    pub fn objects(mut self, f: impl Fn(ObjId, ObjId) -> bool + 'a) -> Self {
        self.objects = Some(Box::new(f));
        self
    }

    pub fn arrows(mut self, f: impl Fn(ArrowId, ArrowId) -> bool + 'a) -> Self {
        self.arrows = Some(Box::new(f));
        self
    }

    pub fn bijective(mut self) -> Self {
        self.bijective = true;
        self
    }

    pub fn arrow_order(mut self, order: Vec<ArrowId>) -> Self {
        self.order = Some(order);
        self
    }

    fn object_ok(&self, x: ObjId, y: ObjId) -> bool {
        self.objects.as_ref().is_none_or(|f| f(x, y))
    }

    fn arrow_ok(&self, f: ArrowId, g: ArrowId) -> bool {
        self.arrows.as_ref().is_none_or(|p| p(f, g))
    }
}

struct Search<'s, 'a> {
    source: &'s FinCategory,
    target: &'s FinCategory,
    constraints: &'s FunctorConstraints<'a>,
    budget: u64,
    explored: u64,
    obj_map: Vec<ObjId>,
    obj_used: Vec<bool>,
    arr_map: Vec<ArrowId>,
    arr_used: Vec<bool>,
    trail: Vec<ArrowId>,
    queue: Vec<ArrowId>,
    order: Vec<ArrowId>,
}

impl<'s, 'a> Search<'s, 'a> {
    fn new(source: &'s FinCategory, target: &'s FinCategory, constraints: &'s FunctorConstraints<'a>, budget: u64) -> Self {
        Search {
            source,
            target,
            constraints,
            budget,
            explored: 0,
            obj_map: vec![NONE; source.object_count()],
            obj_used: vec![false; target.object_count()],
            arr_map: vec![NONE; source.arrow_count()],
            arr_used: vec![false; target.arrow_count()],
            trail: Vec::new(),
            queue: Vec::new(),
            order: constraints.order.clone().unwrap_or_else(|| source.arrows().collect()),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget, estimate: self.estimate() });
        }
        Ok(())
    }

    /// Naive size of the unconstrained search space.
    fn estimate(&self) -> f64 {
        let objs = (self.target.object_count() as f64).powi(self.source.object_count() as i32);
        let free = self.source.arrows().filter(|&f| !self.source.is_identity(f)).count();
        objs * (self.target.arrow_count().max(1) as f64).powi(free as i32)
    }

    fn object_candidate(&self, x: ObjId, y: ObjId) -> bool {
        let (s, t) = (self.source, self.target);
        if !self.constraints.object_ok(x, y) {
            return false;
        }
        if self.constraints.bijective && (self.obj_used[y] || s.hom(x, x).len() != t.hom(y, y).len()) {
            return false;
        }
        if !self.arrows_admissible(s.hom(x, x), y, y) {
            return false;
        }
        for z in s.objects() {
            let w = self.obj_map[z];
            if w == NONE || z == x {
                continue;
            }
            if self.constraints.bijective
                && (s.hom(x, z).len() != t.hom(y, w).len() || s.hom(z, x).len() != t.hom(w, y).len())
            {
                return false;
            }
            if !self.arrows_admissible(s.hom(x, z), y, w) || !self.arrows_admissible(s.hom(z, x), w, y) {
                return false;
            }
        }
        true
    }

    fn arrows_admissible(&self, arrows: &[ArrowId], y: ObjId, w: ObjId) -> bool {
        if arrows.is_empty() {
            return true;
        }
        let hom = self.target.hom(y, w);
        if self.constraints.arrows.is_none() {
            return !hom.is_empty();
        }
        arrows.iter().all(|&f| hom.iter().any(|&g| self.constraints.arrow_ok(f, g)))
    }

    fn assign_objects(&mut self, i: usize, visit: &mut dyn FnMut(&[ObjId], &[ArrowId]) -> bool) -> Result<bool> {
        if i == self.source.object_count() {
            return self.start_arrows(visit);
        }
        for y in self.target.objects() {
            if !self.object_candidate(i, y) {
                continue;
            }
            self.tick()?;
            self.obj_map[i] = y;
            self.obj_used[y] = true;
            let keep_going = self.assign_objects(i + 1, visit)?;
            self.obj_used[y] = false;
            self.obj_map[i] = NONE;
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn start_arrows(&mut self, visit: &mut dyn FnMut(&[ObjId], &[ArrowId]) -> bool) -> Result<bool> {
        let mark = self.trail.len();
        let mut ok = true;
        for x in self.source.objects() {
            let (f, g) = (self.source.identity(x), self.target.identity(self.obj_map[x]));
            if !self.place(f, g) {
                ok = false;
                break;
            }
        }
        self.queue.clear();
        let result = if ok { self.assign_arrows(0, visit) } else { Ok(true) };
        self.undo(mark);
        result
    }

    fn place(&mut self, f: ArrowId, g: ArrowId) -> bool {
        if !self.constraints.arrow_ok(f, g) || (self.constraints.bijective && self.arr_used[g]) {
            return false;
        }
        self.arr_map[f] = g;
        self.arr_used[g] = true;
        self.trail.push(f);
        self.queue.push(f);
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let f = self.trail.pop().expect("non-empty trail");
            self.arr_used[self.arr_map[f]] = false;
            self.arr_map[f] = NONE;
        }
    }

    /// Pushes the consequences of the queued assignments through
    /// composition. Returns false on a conflict.
    fn propagate(&mut self) -> bool {
        let (s, t) = (self.source, self.target);
        while let Some(a) = self.queue.pop() {
            let b = self.arr_map[a];
            let (x, y) = (s.source(a), s.target(a));
            for &c in s.outgoing(y) {
                let fc = self.arr_map[c];
                if fc == NONE || s.is_identity(c) {
                    continue;
                }
                let (Some(h), Some(e)) = (s.compose(c, a), t.compose(fc, b)) else {
                    return false;
                };
                if !self.settle(h, e) {
                    return false;
                }
            }
            for &c in s.incoming(x) {
                let fc = self.arr_map[c];
                if fc == NONE || s.is_identity(c) {
                    continue;
                }
                let (Some(h), Some(e)) = (s.compose(a, c), t.compose(b, fc)) else {
                    return false;
                };
                if !self.settle(h, e) {
                    return false;
                }
            }
        }
        true
    }

    fn settle(&mut self, h: ArrowId, e: ArrowId) -> bool {
        match self.arr_map[h] {
            NONE => self.place(h, e),
            current => current == e,
        }
    }

    fn assign_arrows(&mut self, from: usize, visit: &mut dyn FnMut(&[ObjId], &[ArrowId]) -> bool) -> Result<bool> {
        let n = self.order.len();
        let mut next = from;
        while next < n && self.arr_map[self.order[next]] != NONE {
            next += 1;
        }
        if next == n {
            return Ok(visit(&self.obj_map, &self.arr_map));
        }
        let f = self.order[next];
        let (x, y) = (self.obj_map[self.source.source(f)], self.obj_map[self.source.target(f)]);
        let candidates: Vec<ArrowId> = self.target.hom(x, y).to_vec();
        for g in candidates {
            if !self.constraints.arrow_ok(f, g) || (self.constraints.bijective && self.arr_used[g]) {
                continue;
            }
            self.tick()?;
            let mark = self.trail.len();
            self.queue.clear();
            let ok = self.place(f, g) && self.propagate();
            self.queue.clear();
            let keep_going = if ok { self.assign_arrows(next + 1, visit)? } else { true };
            self.undo(mark);
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Runs the search, calling `visit(objects, arrows)` for every functor
/// found until it returns `false`.
pub(crate) fn search_functors(
    source: &FinCategory,
    target: &FinCategory,
    constraints: &FunctorConstraints<'_>,
    budget: u64,
    visit: &mut dyn FnMut(&[ObjId], &[ArrowId]) -> bool,
) -> Result<()> {
    if constraints.bijective
        && (source.object_count() != target.object_count() || source.arrow_count() != target.arrow_count())
    {
        return Ok(());
    }
    let mut search = Search::new(source, target, constraints, budget);
    search.assign_objects(0, visit)?;
    Ok(())
}

/// Every functor `source → target` allowed by the constraints, in the
/// deterministic order of the search.
pub fn enumerate_functors(
    source: &FinCategory,
    target: &FinCategory,
    constraints: &FunctorConstraints<'_>,
    budget: u64,
) -> Result<Vec<FunctorF>> {
    let mut found = Vec::new();
    search_functors(source, target, constraints, budget, &mut |objects, arrows| {
        found.push(FunctorF {
            source: source.clone(),
            target: target.clone(),
            objects: objects.to_vec(),
            arrows: arrows.to_vec(),
        });
        true
    })?;
    Ok(found)
}

/// First functor found, if any.
pub fn find_functor(
    source: &FinCategory,
    target: &FinCategory,
    constraints: &FunctorConstraints<'_>,
    budget: u64,
) -> Result<Option<FunctorF>> {
    let mut found = None;
    search_functors(source, target, constraints, budget, &mut |objects, arrows| {
        found = Some(FunctorF {
            source: source.clone(),
            target: target.clone(),
            objects: objects.to_vec(),
            arrows: arrows.to_vec(),
        });
        false
    })?;
    Ok(found)
}

/// Component families of all natural transformations `f ⇒ g` whose
/// components pass `component_ok(object, arrow)`.
pub fn enumerate_transformations(
    f: &FunctorF,
    g: &FunctorF,
    component_ok: &dyn Fn(ObjId, ArrowId) -> bool,
    budget: u64,
) -> Result<Vec<Vec<ArrowId>>> {
    let n = f.source.object_count();
    let mut comps = vec![NONE; n];
    let mut out = Vec::new();
    let mut explored = 0u64;

    fn natural_so_far(f: &FunctorF, g: &FunctorF, comps: &[ArrowId], x: ObjId) -> bool {
        let (c, d) = (&f.source, &f.target);
        for z in c.objects() {
            if comps[z] == NONE {
                continue;
            }
            for (s, t) in [(x, z), (z, x)] {
                for &u in c.hom(s, t) {
                    if d.compose(g.arrows[u], comps[s]) != d.compose(comps[t], f.arrows[u]) {
                        return false;
                    }
                }
                if s == t {
                    break;
                }
            }
        }
        true
    }

    fn go(
        i: usize,
        f: &FunctorF,
        g: &FunctorF,
        comps: &mut Vec<ArrowId>,
        out: &mut Vec<Vec<ArrowId>>,
        component_ok: &dyn Fn(ObjId, ArrowId) -> bool,
        explored: &mut u64,
        budget: u64,
    ) -> Result<()> {
        let (c, d) = (&f.source, &f.target);
        if i == c.object_count() {
            out.push(comps.clone());
            return Ok(());
        }
        for &a in d.hom(f.objects[i], g.objects[i]) {
            if !component_ok(i, a) {
                continue;
            }
            *explored += 1;
            if *explored > budget {
                let estimate = (d.arrow_count() as f64).powi(c.object_count() as i32);
                return Err(Error::BudgetExceeded { budget, estimate });
            }
            comps[i] = a;
            if natural_so_far(f, g, comps, i) {
                go(i + 1, f, g, comps, out, component_ok, explored, budget)?;
            }
            comps[i] = NONE;
        }
        Ok(())
    }

    go(0, f, g, &mut comps, &mut out, component_ok, &mut explored, budget)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, discrete, product, walking_arrow, walking_iso, DEFAULT_BUDGET};

    /// Brute force: every pair of maps (objects, arrows) satisfying the
    /// functor laws.
    fn brute_force_count(c: &FinCategory, d: &FinCategory) -> usize {
        let no = c.object_count();
        let na = c.arrow_count();
        let mut count = 0;
        let mut objs = vec![0; no];
        loop {
            let mut arrs = vec![0; na];
            loop {
                let f = FunctorF { source: c.clone(), target: d.clone(), objects: objs.clone(), arrows: arrs.clone() };
                if f.check().is_ok() {
                    count += 1;
                }
                if !odometer(&mut arrs, d.arrow_count()) {
                    break;
                }
            }
            if !odometer(&mut objs, d.object_count()) {
                break;
            }
        }
        count
    }

    fn odometer(v: &mut [usize], base: usize) -> bool {
        for d in v.iter_mut() {
            *d += 1;
            if *d < base {
                return true;
            }
            *d = 0;
        }
        false
    }

    #[test]
    fn search_matches_brute_force() {
        let cats = [discrete(1), discrete(2), walking_arrow(), walking_iso(), chain(2)];
        for c in &cats {
            for d in &cats {
                if c.arrow_count() > 4 && d.arrow_count() > 4 {
                    continue;
                }
                let found = enumerate_functors(c, d, &FunctorConstraints::default(), DEFAULT_BUDGET).unwrap();
                for f in &found {
                    f.check().unwrap();
                }
                assert_eq!(found.len(), brute_force_count(c, d), "{c:?} -> {d:?}");
            }
        }
    }

    #[test]
    fn bijective_search_finds_automorphisms() {
        let sq = product(&walking_arrow(), &walking_arrow());
        let autos = enumerate_functors(&sq, &sq, &FunctorConstraints::default().bijective(), DEFAULT_BUDGET).unwrap();
        // The swap of factors and the identity.
        assert_eq!(autos.len(), 2);
        let iso_autos =
            enumerate_functors(&walking_iso(), &walking_iso(), &FunctorConstraints::default().bijective(), DEFAULT_BUDGET)
                .unwrap();
        assert_eq!(iso_autos.len(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let big = chain(3);
        let err = enumerate_functors(&big, &big, &FunctorConstraints::default(), 3).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 3, .. }));
    }
}
