use std::collections::HashMap;
use std::fmt;

use super::search::{enumerate_functors, enumerate_transformations, FunctorConstraints};
use super::{Arrow, ArrowId, FinCategory, ObjId};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct FunctorF {
    pub source: FinCategory,
    pub target: FinCategory,
    pub objects: Vec<ObjId>,
    pub arrows: Vec<ArrowId>,
}

impl fmt::Debug for FunctorF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctorF").field("objects", &self.objects).field("arrows", &self.arrows).finish()
    }
}

impl PartialEq for FunctorF {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.arrows == other.arrows
    }
}

impl Eq for FunctorF {}

impl FunctorF {
    /// Builds a functor and checks the functor laws exhaustively.
    pub fn new(source: FinCategory, target: FinCategory, objects: Vec<ObjId>, arrows: Vec<ArrowId>) -> Result<Self> {
        let f = FunctorF { source, target, objects, arrows };
        f.check()?;
        Ok(f)
    }

    pub fn identity(c: &FinCategory) -> Self {
        FunctorF {
            source: c.clone(),
            target: c.clone(),
            objects: c.objects().collect(),
            arrows: c.arrows().collect(),
        }
    }

    /// Preservation of endpoints, identities and every composite.
    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.objects.len() != s.object_count() || self.arrows.len() != s.arrow_count() {
            return Err(Error::InvalidFunctor("map sizes do not match the source".into()));
        }
        for f in s.arrows() {
            let img = self.arrows[f];
            if t.source(img) != self.objects[s.source(f)] || t.target(img) != self.objects[s.target(f)] {
                return Err(Error::InvalidFunctor(format!("arrow `{}` lands between the wrong objects", s.arrow_name(f))));
            }
        }
        for x in s.objects() {
            if self.arrows[s.identity(x)] != t.identity(self.objects[x]) {
                return Err(Error::InvalidFunctor(format!("identity of `{}` is not preserved", s.object_name(x))));
            }
        }
        for x in s.objects() {
            for &f in s.incoming(x) {
                for &g in s.outgoing(x) {
                    let lhs = s.compose(g, f).map(|h| self.arrows[h]);
                    let rhs = t.compose(self.arrows[g], self.arrows[f]);
                    if lhs.is_none() || lhs != rhs {
                        return Err(Error::InvalidFunctor(format!(
                            "composite {}.{} is not preserved",
                            s.arrow_name(g),
                            s.arrow_name(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FunctorF) -> FunctorF {
        FunctorF {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&x| other.objects[x]).collect(),
            arrows: self.arrows.iter().map(|&f| other.arrows[f]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        is_bijection(&self.objects, self.target.object_count())
            && is_bijection(&self.arrows, self.target.arrow_count())
    }

    /// Inverse functor, if the functor is bijective on objects and arrows.
    pub fn inverse(&self) -> Option<FunctorF> {
        if !self.is_bijective() {
            return None;
        }
        let mut objects = vec![0; self.objects.len()];
        for (x, &y) in self.objects.iter().enumerate() {
            objects[y] = x;
        }
        let mut arrows = vec![0; self.arrows.len()];
        for (f, &g) in self.arrows.iter().enumerate() {
            arrows[g] = f;
        }
        Some(FunctorF { source: self.target.clone(), target: self.source.clone(), objects, arrows })
    }

    /// Bijective on every hom-set.
    pub fn is_fully_faithful(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        for x in s.objects() {
            for y in s.objects() {
                let images: Vec<ArrowId> = s.hom(x, y).iter().map(|&f| self.arrows[f]).collect();
                let hom = t.hom(self.objects[x], self.objects[y]);
                if images.len() != hom.len() || !is_bijection_onto(&images, hom) {
                    return false;
                }
            }
        }
        true
    }

    /// Every target object is isomorphic to an object in the image.
    pub fn is_essentially_surjective(&self) -> bool {
        let t = &self.target;
        t.objects().all(|y| {
            self.objects.iter().any(|&x| {
                x == y || t.hom(x, y).iter().any(|&f| super::iso::inverse_of(t, f).is_some())
            })
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_fully_faithful() && self.is_essentially_surjective()
    }

    pub fn describe(&self) -> String {
        let objs: Vec<String> = self
            .source
            .objects()
            .map(|x| format!("{}->{}", self.source.object_name(x), self.target.object_name(self.objects[x])))
            .collect();
        let arrs: Vec<String> = self
            .source
            .arrows()
            .filter(|&f| !self.source.is_identity(f))
            .map(|f| format!("{}->{}", self.source.arrow_name(f), self.target.arrow_name(self.arrows[f])))
            .collect();
        format!("[{}|{}]", objs.join(","), arrs.join(","))
    }
}

fn is_bijection(map: &[usize], size: usize) -> bool {
    if map.len() != size {
        return false;
    }
    let mut seen = vec![false; size];
    for &y in map {
        if y >= size || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

fn is_bijection_onto(images: &[ArrowId], hom: &[ArrowId]) -> bool {
    let mut a = images.to_vec();
    let mut b = hom.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a.windows(2).all(|w| w[0] != w[1]) && a == b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransform {
    pub source: FunctorF,
    pub target: FunctorF,
    pub components: Vec<ArrowId>,
}

impl NatTransform {
    pub fn check(&self) -> Result<()> {
        let (f, g) = (&self.source, &self.target);
        let (c, d) = (&f.source, &f.target);
        for x in c.objects() {
            let a = self.components[x];
            if d.source(a) != f.objects[x] || d.target(a) != g.objects[x] {
                return Err(Error::InvalidFunctor(format!("component at `{}` has wrong endpoints", c.object_name(x))));
            }
        }
        for u in c.arrows() {
            let (x, y) = (c.source(u), c.target(u));
            if d.compose(g.arrows[u], self.components[x]) != d.compose(self.components[y], f.arrows[u]) {
                return Err(Error::InvalidFunctor(format!("naturality fails at `{}`", c.arrow_name(u))));
            }
        }
        Ok(())
    }

    pub fn identity(f: &FunctorF) -> NatTransform {
        NatTransform {
            source: f.clone(),
            target: f.clone(),
            components: f.objects.iter().map(|&y| f.target.identity(y)).collect(),
        }
    }
}

/// The category of functors `K → C` and natural transformations, together
/// with the enumerated functors (indexed by object) and transformations
/// (indexed by arrow).
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub category: FinCategory,
    pub functors: Vec<FunctorF>,
    pub transformations: Vec<NatTransform>,
}

impl FunctorCategory {
    pub fn functor_index(&self, f: &FunctorF) -> Option<ObjId> {
        self.functors.iter().position(|g| g == f)
    }

    pub fn transformation_index(&self, source: ObjId, target: ObjId, components: &[ArrowId]) -> Option<ArrowId> {
        self.category
            .hom(source, target)
            .iter()
            .copied()
            .find(|&a| self.transformations[a].components == components)
    }
}

/// Builds the functor category from a list of objects (functors) and a
/// component filter for the transformations. Composition is vertical.
pub(crate) fn assemble_functor_category(
    functors: Vec<FunctorF>,
    component_ok: &dyn Fn(ObjId, ArrowId) -> bool,
    budget: u64,
    object_prefix: &str,
) -> Result<FunctorCategory> {
    let mut arrows = Vec::new();
    let mut transformations: Vec<NatTransform> = Vec::new();
    let mut identities = vec![0; functors.len()];
    let mut index: HashMap<(ObjId, ObjId, Vec<ArrowId>), ArrowId> = HashMap::new();
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            let mut comps = enumerate_transformations(f, g, component_ok, budget)?;
            comps.sort();
            for (k, c) in comps.into_iter().enumerate() {
                let id = arrows.len();
                let is_id = i == j && c.iter().zip(&f.objects).all(|(&a, &y)| a == f.target.identity(y));
                if is_id {
                    identities[i] = id;
                }
                let name = if is_id {
                    format!("id_{object_prefix}{i}")
                } else {
                    format!("{object_prefix}{i}=>{object_prefix}{j}#{k}")
                };
                arrows.push(Arrow { name, source: i, target: j });
                index.insert((i, j, c.clone()), id);
                transformations.push(NatTransform { source: f.clone(), target: g.clone(), components: c });
            }
        }
    }
    let mut table = HashMap::new();
    for (fi, f) in transformations.iter().enumerate() {
        for (gi, g) in transformations.iter().enumerate() {
            if arrows[fi].target != arrows[gi].source {
                continue;
            }
            let d = &f.source.target;
            let comps: Option<Vec<ArrowId>> =
                f.components.iter().zip(&g.components).map(|(&a, &b)| d.compose(b, a)).collect();
            let comps = comps.ok_or_else(|| Error::InvalidFunctor("component composite undefined".into()))?;
            let key = (arrows[fi].source, arrows[gi].target, comps);
            let h = *index.get(&key).ok_or_else(|| {
                Error::InvalidFunctor("vertical composite is not among the enumerated transformations".into())
            })?;
            table.insert((gi, fi), h);
        }
    }
    let objects = (0..functors.len()).map(|i| format!("{object_prefix}{i}")).collect();
    let category = FinCategory::assemble_table(objects, arrows, identities, table);
    Ok(FunctorCategory { category, functors, transformations })
}

/// All functors `K → C` with all natural transformations between them.
pub fn functor_category(k: &FinCategory, c: &FinCategory, budget: u64) -> Result<FunctorCategory> {
    let functors = enumerate_functors(k, c, &FunctorConstraints::default(), budget)?;
    assemble_functor_category(functors, &|_, _| true, budget, "F")
}
