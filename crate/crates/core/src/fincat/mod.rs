//! Finite categories given by explicit object, arrow and composition data.
//!
//! A [`FinCategory`] is cheap to clone (the tables sit behind an `Arc`).
//! Composition is stored either as an explicit table or as a rule that
//! computes composites on demand; large constructions such as categories
//! of operators use the rule form so that only the arrows themselves are
//! materialized.

mod dot;
mod functor;
mod iso;
mod marked;
mod search;

use std::collections::HashMap;

use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use dot::category_to_dot;
pub(crate) use dot::quote;
pub use functor::{functor_category, FunctorCategory, FunctorF, NatTransform};
pub(crate) use functor::assemble_functor_category;
pub use iso::{category_iso, is_isomorphism, maximal_groupoid};
pub use marked::{marked_projections, saturate_marking, MarkedFinCategory};
pub use search::{enumerate_functors, enumerate_transformations, FunctorConstraints};

pub type ObjId = usize;
pub type ArrowId = usize;

/// Default cap on candidate assignments explored by functor searches.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: ObjId,
    pub target: ObjId,
}

/// `rule(g, f)` returns `g ∘ f`, or `None` when the composite is undefined.
pub(crate) type ComposeRule = dyn Fn(ArrowId, ArrowId) -> Option<ArrowId> + Send + Sync;

#[derive(Clone)]
pub(crate) enum Composer {
    /// Non-identity composites keyed by `(g, f)` for `g ∘ f`.
    Table(Arc<HashMap<(ArrowId, ArrowId), ArrowId>>),
    Rule(Arc<ComposeRule>),
}

struct Data {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<ArrowId>,
    is_identity: Vec<bool>,
    object_index: HashMap<String, ObjId>,
    arrow_index: HashMap<String, ArrowId>,
    homs: Vec<Vec<ArrowId>>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
    composer: Composer,
    overrides: HashMap<(ArrowId, ArrowId), ArrowId>,
}

#[derive(Clone)]
pub struct FinCategory(Arc<Data>);

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.0.objects.len())
            .field("arrows", &self.0.arrows.len())
            .finish()
    }
}

/// Unvalidated category tables, as written by hand or parsed from text.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(name, source, target)`.
    pub arrows: Vec<(String, String, String)>,
    /// `(object, identity arrow)`.
    pub identities: Vec<(String, String)>,
    /// `(g, f, h)` meaning `g ∘ f = h`.
    pub composites: Vec<(String, String, String)>,
}

impl FinCategory {
    /// Assembles a category from trusted parts. Identities must be listed
    /// per object and names must be unique.
    pub(crate) fn assemble(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<ArrowId>,
        composer: Composer,
    ) -> FinCategory {
        let n = objects.len();
        let mut is_identity = vec![false; arrows.len()];
        for &i in &identities {
            is_identity[i] = true;
        }
        let object_index = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        let arrow_index = arrows.iter().enumerate().map(|(i, a)| (a.name.clone(), i)).collect();
        let mut homs = vec![Vec::new(); n * n];
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.source * n + a.target].push(i);
            outgoing[a.source].push(i);
            incoming[a.target].push(i);
        }
        FinCategory(Arc::new(Data {
            objects,
            arrows,
            identities,
            is_identity,
            object_index,
            arrow_index,
            homs,
            outgoing,
            incoming,
            composer,
            overrides: HashMap::new(),
        }))
    }

    pub(crate) fn assemble_table(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<ArrowId>,
        table: HashMap<(ArrowId, ArrowId), ArrowId>,
    ) -> FinCategory {
        Self::assemble(objects, arrows, identities, Composer::Table(Arc::new(table)))
    }

    pub fn object_count(&self) -> usize {
        self.0.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.0.arrows.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        0..self.0.objects.len()
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> {
        0..self.0.arrows.len()
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.0.objects[x]
    }

    pub fn arrow_name(&self, f: ArrowId) -> &str {
        &self.0.arrows[f].name
    }

    pub fn arrow(&self, f: ArrowId) -> &Arrow {
        &self.0.arrows[f]
    }

    pub fn source(&self, f: ArrowId) -> ObjId {
        self.0.arrows[f].source
    }

    pub fn target(&self, f: ArrowId) -> ObjId {
        self.0.arrows[f].target
    }

    pub fn identity(&self, x: ObjId) -> ArrowId {
        self.0.identities[x]
    }

    pub fn is_identity(&self, f: ArrowId) -> bool {
        self.0.is_identity[f]
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.0.object_index.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.0.arrow_index.get(name).copied()
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[ArrowId] {
        &self.0.homs[x * self.0.objects.len() + y]
    }

    pub fn outgoing(&self, x: ObjId) -> &[ArrowId] {
        &self.0.outgoing[x]
    }

    pub fn incoming(&self, x: ObjId) -> &[ArrowId] {
        &self.0.incoming[x]
    }

    /// `g ∘ f` (first `f`, then `g`), or `None` if the pair is not
    /// composable or the composite is undefined.
    pub fn compose(&self, g: ArrowId, f: ArrowId) -> Option<ArrowId> {
        let d = &self.0;
        if d.arrows[f].target != d.arrows[g].source {
            return None;
        }
        if !d.overrides.is_empty() {
            if let Some(&h) = d.overrides.get(&(g, f)) {
                return Some(h);
            }
        }
        if d.is_identity[f] {
            return Some(g);
        }
        if d.is_identity[g] {
            return Some(f);
        }
        match &d.composer {
            Composer::Table(t) => t.get(&(g, f)).copied(),
            Composer::Rule(rule) => rule(g, f),
        }
    }

    /// Number of composable pairs `(f, g)` with `tgt f = src g`.
    pub fn composable_pairs(&self) -> usize {
        self.objects()
            .map(|x| self.incoming(x).len() * self.outgoing(x).len())
            .sum()
    }

    /// Same category with one composite redirected. Used to build corrupted
    /// variants for mutation testing.
    pub fn with_composite(&self, g: ArrowId, f: ArrowId, h: ArrowId) -> FinCategory {
        let mut out = self.rebuild(self.0.objects.clone(), self.0.arrows.clone());
        Arc::get_mut(&mut out.0).expect("fresh").overrides.insert((g, f), h);
        out
    }

    /// Same category plus a fresh object carrying only its identity arrow.
    pub fn with_extra_object(&self, name: &str) -> (FinCategory, ObjId) {
        let mut objects = self.0.objects.clone();
        let mut arrows = self.0.arrows.clone();
        let x = objects.len();
        objects.push(name.to_string());
        arrows.push(Arrow { name: format!("id_{name}"), source: x, target: x });
        let mut identities = self.0.identities.clone();
        identities.push(arrows.len() - 1);
        let mut out = FinCategory::assemble(objects, arrows, identities, self.0.composer.clone());
        Arc::get_mut(&mut out.0).expect("fresh").overrides = self.0.overrides.clone();
        (out, x)
    }

    fn rebuild(&self, objects: Vec<String>, arrows: Vec<Arrow>) -> FinCategory {
        let mut out = FinCategory::assemble(
            objects,
            arrows,
            self.0.identities.clone(),
            self.0.composer.clone(),
        );
        Arc::get_mut(&mut out.0).expect("fresh").overrides = self.0.overrides.clone();
        out
    }

    /// Materializes every composite into a table. Only sensible for small
    /// categories.
    pub fn to_table(&self) -> FinCategory {
        let mut table = HashMap::new();
        for x in self.objects() {
            for &f in self.incoming(x) {
                for &g in self.outgoing(x) {
                    if self.is_identity(f) || self.is_identity(g) {
                        continue;
                    }
                    if let Some(h) = self.compose(g, f) {
                        table.insert((g, f), h);
                    }
                }
            }
        }
        FinCategory::assemble_table(
            self.0.objects.clone(),
            self.0.arrows.clone(),
            self.0.identities.clone(),
            table,
        )
    }

    /// Raw tables listing every non-identity composite.
    pub fn to_raw(&self) -> RawCategory {
        let mut raw = RawCategory {
            objects: self.0.objects.clone(),
            ..RawCategory::default()
        };
        for a in &self.0.arrows {
            raw.arrows.push((
                a.name.clone(),
                self.0.objects[a.source].clone(),
                self.0.objects[a.target].clone(),
            ));
        }
        for x in self.objects() {
            raw.identities
                .push((self.0.objects[x].clone(), self.arrow_name(self.identity(x)).to_string()));
        }
        for x in self.objects() {
            for &f in self.incoming(x) {
                for &g in self.outgoing(x) {
                    if self.is_identity(f) || self.is_identity(g) {
                        continue;
                    }
                    if let Some(h) = self.compose(g, f) {
                        raw.composites.push((
                            self.arrow_name(g).to_string(),
                            self.arrow_name(f).to_string(),
                            self.arrow_name(h).to_string(),
                        ));
                    }
                }
            }
        }
        raw
    }

    /// Full subcategory on the given objects, in the given order.
    pub fn full_subcategory(&self, objects: &[ObjId]) -> FinCategory {
        let arrows: Vec<ArrowId> = objects
            .iter()
            .flat_map(|&x| objects.iter().map(move |&y| (x, y)))
            .flat_map(|(x, y)| self.hom(x, y).iter().copied())
            .collect();
        self.subcategory(objects, &arrows)
    }

    /// Subcategory on the given objects and arrows. The arrow set must
    /// contain the identities and be closed under composition.
    pub fn subcategory(&self, objects: &[ObjId], arrows: &[ArrowId]) -> FinCategory {
        let mut obj_pos = HashMap::new();
        for (i, &x) in objects.iter().enumerate() {
            obj_pos.insert(x, i);
        }
        let mut sorted: Vec<ArrowId> = arrows.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut arr_pos = HashMap::new();
        let new_arrows: Vec<Arrow> = sorted
            .iter()
            .enumerate()
            .map(|(i, &f)| {
                arr_pos.insert(f, i);
                let a = self.arrow(f);
                Arrow { name: a.name.clone(), source: obj_pos[&a.source], target: obj_pos[&a.target] }
            })
            .collect();
        let identities = objects.iter().map(|&x| arr_pos[&self.identity(x)]).collect();
        let parent = self.clone();
        let rule = move |g: ArrowId, f: ArrowId| -> Option<ArrowId> {
            let h = parent.compose(sorted[g], sorted[f])?;
            arr_pos.get(&h).copied()
        };
        FinCategory::assemble(
            objects.iter().map(|&x| self.object_name(x).to_string()).collect(),
            new_arrows,
            identities,
            Composer::Rule(Arc::new(rule)),
        )
    }
}

/// Checks raw tables and builds the category, or names the first law that
/// fails.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory> {
    let mut object_index = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if object_index.insert(o.as_str(), i).is_some() {
            return Err(Error::DuplicateName { line: 0, name: o.clone() });
        }
    }
    let mut arrows = Vec::new();
    let mut arrow_index = HashMap::new();
    for (name, s, t) in &raw.arrows {
        let source = *object_index.get(s.as_str()).ok_or_else(|| Error::UnknownObject(s.clone()))?;
        let target = *object_index.get(t.as_str()).ok_or_else(|| Error::UnknownObject(t.clone()))?;
        if arrow_index.insert(name.as_str(), arrows.len()).is_some() {
            return Err(Error::DuplicateName { line: 0, name: name.clone() });
        }
        arrows.push(Arrow { name: name.clone(), source, target });
    }
    let lookup = |name: &str| arrow_index.get(name).copied().ok_or_else(|| Error::UnknownArrow(name.to_string()));

    let mut identities = vec![usize::MAX; raw.objects.len()];
    for (o, a) in &raw.identities {
        let x = *object_index.get(o.as_str()).ok_or_else(|| Error::UnknownObject(o.clone()))?;
        let i = lookup(a)?;
        if arrows[i].source != x || arrows[i].target != x {
            return Err(Error::MissingIdentity { detail: format!("`{a}` is not an endomorphism of `{o}`") });
        }
        identities[x] = i;
    }
    if let Some(x) = identities.iter().position(|&i| i == usize::MAX) {
        return Err(Error::MissingIdentity { detail: format!("object `{}` has no identity", raw.objects[x]) });
    }
    let mut is_identity = vec![false; arrows.len()];
    for &i in &identities {
        is_identity[i] = true;
    }

    let name = |i: ArrowId| arrows[i].name.clone();
    let mut table: HashMap<(ArrowId, ArrowId), ArrowId> = HashMap::new();
    for (g, f, h) in &raw.composites {
        let (gi, fi, hi) = (lookup(g)?, lookup(f)?, lookup(h)?);
        if arrows[fi].target != arrows[gi].source {
            return Err(Error::IllTypedComposite { g: g.clone(), f: f.clone(), detail: "arrows are not composable".into() });
        }
        if arrows[hi].source != arrows[fi].source || arrows[hi].target != arrows[gi].target {
            return Err(Error::IllTypedComposite {
                g: g.clone(),
                f: f.clone(),
                detail: format!("declared composite `{h}` has the wrong endpoints"),
            });
        }
        if is_identity[gi] && hi != fi {
            return Err(Error::MissingIdentity { detail: format!("{g}.{f} = {h}, expected {f}") });
        }
        if is_identity[fi] && hi != gi {
            return Err(Error::MissingIdentity { detail: format!("{g}.{f} = {h}, expected {g}") });
        }
        if is_identity[fi] || is_identity[gi] {
            continue;
        }
        if let Some(&prev) = table.get(&(gi, fi)) {
            if prev != hi {
                return Err(Error::IllTypedComposite {
                    g: g.clone(),
                    f: f.clone(),
                    detail: format!("declared both as `{}` and `{h}`", name(prev)),
                });
            }
        }
        table.insert((gi, fi), hi);
    }

    let cat = FinCategory::assemble_table(raw.objects.clone(), arrows.clone(), identities, table);
    check_laws(&cat)?;
    Ok(cat)
}

/// Exhaustive check of composite definedness and associativity.
pub fn check_laws(cat: &FinCategory) -> Result<()> {
    for x in cat.objects() {
        for &f in cat.incoming(x) {
            for &g in cat.outgoing(x) {
                let h = cat.compose(g, f).ok_or_else(|| Error::IllTypedComposite {
                    g: cat.arrow_name(g).into(),
                    f: cat.arrow_name(f).into(),
                    detail: "missing composite".into(),
                })?;
                if cat.source(h) != cat.source(f) || cat.target(h) != cat.target(g) {
                    return Err(Error::IllTypedComposite {
                        g: cat.arrow_name(g).into(),
                        f: cat.arrow_name(f).into(),
                        detail: format!("composite `{}` has the wrong endpoints", cat.arrow_name(h)),
                    });
                }
            }
        }
    }
    for x in cat.objects() {
        let id = cat.identity(x);
        for &f in cat.incoming(x) {
            if cat.compose(id, f) != Some(f) {
                return Err(Error::MissingIdentity {
                    detail: format!("{} is not a left unit for {}", cat.arrow_name(id), cat.arrow_name(f)),
                });
            }
        }
        for &g in cat.outgoing(x) {
            if cat.compose(g, id) != Some(g) {
                return Err(Error::MissingIdentity {
                    detail: format!("{} is not a right unit for {}", cat.arrow_name(id), cat.arrow_name(g)),
                });
            }
        }
    }
    // Triples f: w→x, g: x→y, h: y→z with no identities among them.
    let objects: Vec<ObjId> = cat.objects().collect();
    let failure = objects.par_iter().find_map_first(|&x| {
        for &f in cat.incoming(x).iter().filter(|&&f| !cat.is_identity(f)) {
            for &g in cat.outgoing(x).iter().filter(|&&g| !cat.is_identity(g)) {
                let gf = cat.compose(g, f).expect("checked above");
                for &h in cat.outgoing(cat.target(g)).iter().filter(|&&h| !cat.is_identity(h)) {
                    let hg = cat.compose(h, g).expect("checked above");
                    if cat.compose(h, gf) != cat.compose(hg, f) {
                        return Some((f, g, h));
                    }
                }
            }
        }
        None
    });
    match failure {
        Some((f, g, h)) => Err(Error::NotAssociative {
            f: cat.arrow_name(f).into(),
            g: cat.arrow_name(g).into(),
            h: cat.arrow_name(h).into(),
        }),
        None => Ok(()),
    }
}

fn letter(i: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if i < LETTERS.len() {
        (LETTERS[i] as char).to_string()
    } else {
        format!("x{i}")
    }
}

fn generator_name(i: usize) -> String {
    const GENS: &[u8] = b"fghklmnpqrsuvw";
    if i < GENS.len() {
        (GENS[i] as char).to_string()
    } else {
        format!("u{i}")
    }
}

/// One object, one arrow.
pub fn terminal() -> FinCategory {
    discrete_named(&["pt"])
}

/// `n` objects and only identities.
pub fn discrete(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(letter).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    discrete_named(&refs)
}

pub fn discrete_named(names: &[&str]) -> FinCategory {
    let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let arrows = objects
        .iter()
        .enumerate()
        .map(|(i, o)| Arrow { name: format!("id_{o}"), source: i, target: i })
        .collect();
    FinCategory::assemble_table(objects, arrows, (0..names.len()).collect(), HashMap::new())
}

/// The poset `[n] = {0 < 1 < … < n}` with objects `a, b, c, …`. Generating
/// arrows are `f, g, h, …`; composites are named by juxtaposition (`gf`).
pub fn chain(n: usize) -> FinCategory {
    let objects: Vec<String> = (0..=n).map(letter).collect();
    let mut arrows = Vec::new();
    let mut index = HashMap::new();
    let mut identities = Vec::new();
    for i in 0..=n {
        identities.push(arrows.len());
        index.insert((i, i), arrows.len());
        arrows.push(Arrow { name: format!("id_{}", objects[i]), source: i, target: i });
    }
    for i in 0..=n {
        for j in i + 1..=n {
            let name: String = (i..j).rev().map(generator_name).collect();
            index.insert((i, j), arrows.len());
            arrows.push(Arrow { name, source: i, target: j });
        }
    }
    let mut table = HashMap::new();
    for i in 0..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                table.insert((index[&(j, k)], index[&(i, j)]), index[&(i, k)]);
            }
        }
    }
    FinCategory::assemble_table(objects, arrows, identities, table)
}

/// The walking arrow `[1]`: objects `a, b`, one arrow `f: a → b`.
pub fn walking_arrow() -> FinCategory {
    chain(1)
}

/// Two objects `a, b` with mutually inverse arrows `f: a → b`, `g: b → a`.
pub fn walking_iso() -> FinCategory {
    let raw = RawCategory {
        objects: vec!["a".into(), "b".into()],
        arrows: vec![
            ("id_a".into(), "a".into(), "a".into()),
            ("id_b".into(), "b".into(), "b".into()),
            ("f".into(), "a".into(), "b".into()),
            ("g".into(), "b".into(), "a".into()),
        ],
        identities: vec![("a".into(), "id_a".into()), ("b".into(), "id_b".into())],
        composites: vec![
            ("g".into(), "f".into(), "id_a".into()),
            ("f".into(), "g".into(), "id_b".into()),
        ],
    };
    validate_category(&raw).expect("walking isomorphism tables are valid")
}

/// Binary product `C × D`; object `(c, d)` has index `c·|D| + d`, and
/// likewise for arrows.
pub fn product(c: &FinCategory, d: &FinCategory) -> FinCategory {
    let dn = d.object_count();
    let da = d.arrow_count();
    let mut objects = Vec::with_capacity(c.object_count() * dn);
    for x in c.objects() {
        for y in d.objects() {
            objects.push(format!("({},{})", c.object_name(x), d.object_name(y)));
        }
    }
    let mut arrows = Vec::with_capacity(c.arrow_count() * da);
    for f in c.arrows() {
        for g in d.arrows() {
            arrows.push(Arrow {
                name: format!("({},{})", c.arrow_name(f), d.arrow_name(g)),
                source: c.source(f) * dn + d.source(g),
                target: c.target(f) * dn + d.target(g),
            });
        }
    }
    let identities = c
        .objects()
        .flat_map(|x| d.objects().map(move |y| (x, y)))
        .map(|(x, y)| c.identity(x) * da + d.identity(y))
        .collect();
    let (c2, d2) = (c.clone(), d.clone());
    let rule = move |g: ArrowId, f: ArrowId| -> Option<ArrowId> {
        let left = c2.compose(g / da, f / da)?;
        let right = d2.compose(g % da, f % da)?;
        Some(left * da + right)
    };
    FinCategory::assemble(objects, arrows, identities, Composer::Rule(Arc::new(rule)))
}

/// `n`-fold product `K × … × K`; the empty product is [`terminal`].
pub fn power(k: &FinCategory, n: usize) -> FinCategory {
    (0..n).fold(terminal(), |acc, i| if i == 0 { k.clone() } else { product(&acc, k) })
}

/// Pullback `B ×_S E` of two functors into a common category `S`.
pub fn pullback(left: &FunctorF, right: &FunctorF) -> Result<FinCategory> {
    if !Arc::ptr_eq(&left.target.0, &right.target.0)
        && left.target.arrow_count() != right.target.arrow_count()
    {
        return Err(Error::InvalidFunctor("pullback legs have different codomains".into()));
    }
    let (b, e) = (&left.source, &right.source);
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    for x in b.objects() {
        for y in e.objects() {
            if left.objects[x] == right.objects[y] {
                obj_index.insert((x, y), objects.len());
                objects.push(format!("({},{})", b.object_name(x), e.object_name(y)));
            }
        }
    }
    let mut arrows = Vec::new();
    let mut pairs = Vec::new();
    let mut arr_index = HashMap::new();
    for f in b.arrows() {
        for g in e.arrows() {
            if left.arrows[f] != right.arrows[g] {
                continue;
            }
            let (Some(&s), Some(&t)) = (
                obj_index.get(&(b.source(f), e.source(g))),
                obj_index.get(&(b.target(f), e.target(g))),
            ) else {
                continue;
            };
            arr_index.insert((f, g), arrows.len());
            pairs.push((f, g));
            arrows.push(Arrow { name: format!("({},{})", b.arrow_name(f), e.arrow_name(g)), source: s, target: t });
        }
    }
    let mut identities = vec![0; objects.len()];
    for (&(x, y), &i) in &obj_index {
        identities[i] = arr_index[&(b.identity(x), e.identity(y))];
    }
    let (b2, e2) = (b.clone(), e.clone());
    let rule = move |g: ArrowId, f: ArrowId| -> Option<ArrowId> {
        let (gb, ge) = pairs[g];
        let (fb, fe) = pairs[f];
        let key = (b2.compose(gb, fb)?, e2.compose(ge, fe)?);
        arr_index.get(&key).copied()
    };
    Ok(FinCategory::assemble(objects, arrows, identities, Composer::Rule(Arc::new(rule))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(objects: &[&str], arrows: &[(&str, &str, &str)], comps: &[(&str, &str, &str)]) -> RawCategory {
        let mut r = RawCategory {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        };
        for o in objects {
            r.arrows.push((format!("id_{o}"), o.to_string(), o.to_string()));
            r.identities.push((o.to_string(), format!("id_{o}")));
        }
        for (n, s, t) in arrows {
            r.arrows.push((n.to_string(), s.to_string(), t.to_string()));
        }
        for (g, f, h) in comps {
            r.composites.push((g.to_string(), f.to_string(), h.to_string()));
        }
        r
    }

    #[test]
    fn terminal_and_walking_arrow_validate() {
        let t = validate_category(&raw(&["x"], &[], &[])).unwrap();
        assert_eq!((t.object_count(), t.arrow_count()), (1, 1));
        let w = validate_category(&raw(&["a", "b"], &[("f", "a", "b")], &[])).unwrap();
        assert_eq!((w.object_count(), w.arrow_count()), (2, 3));
    }

    #[test]
    fn wrong_composite_is_not_associative() {
        // Endomorphism monoid {1, e, z} with e·e = z declared but z absorbing
        // only on one side: (e.e).e = z.e = e, e.(e.e) = e.z = z.
        let r = raw(
            &["x"],
            &[("e", "x", "x"), ("z", "x", "x")],
            &[("e", "e", "z"), ("z", "e", "e"), ("e", "z", "z"), ("z", "z", "z")],
        );
        match validate_category(&r) {
            Err(Error::NotAssociative { f, g, h }) => {
                assert!([f, g, h].iter().all(|n| n == "e" || n == "z"));
            }
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn composite_with_wrong_endpoints_is_ill_typed() {
        let r = raw(
            &["a", "b", "c"],
            &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c"), ("k", "b", "c")],
            &[("g", "f", "k"), ("k", "f", "h")],
        );
        assert!(matches!(validate_category(&r), Err(Error::IllTypedComposite { .. })));
    }

    #[test]
    fn missing_composite_is_reported() {
        let r = raw(&["a", "b", "c"], &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")], &[]);
        match validate_category(&r) {
            Err(Error::IllTypedComposite { g, f, detail }) => {
                assert_eq!((g.as_str(), f.as_str()), ("g", "f"));
                assert!(detail.contains("missing"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn identity_that_is_not_a_unit() {
        let r = raw(&["a", "b"], &[("f", "a", "b"), ("f2", "a", "b")], &[("id_b", "f", "f2")]);
        assert!(matches!(validate_category(&r), Err(Error::MissingIdentity { .. })));
    }

    #[test]
    fn named_categories_satisfy_laws() {
        for c in [terminal(), discrete(2), chain(1), chain(2), chain(3), walking_iso()] {
            check_laws(&c).unwrap();
        }
        assert_eq!(chain(2).arrow_count(), 6);
        assert!(chain(2).arrow_id("gf").is_some());
    }

    #[test]
    fn product_counts() {
        let p = product(&walking_arrow(), &walking_arrow());
        assert_eq!((p.object_count(), p.arrow_count()), (4, 9));
        check_laws(&p).unwrap();
        let t = product(&terminal(), &chain(2));
        assert_eq!((t.object_count(), t.arrow_count()), (3, 6));
    }

    #[test]
    fn power_of_zero_is_terminal() {
        let p = power(&chain(1), 0);
        assert_eq!((p.object_count(), p.arrow_count()), (1, 1));
        let p3 = power(&chain(1), 3);
        assert_eq!((p3.object_count(), p3.arrow_count()), (8, 27));
        check_laws(&p3).unwrap();
    }

    #[test]
    fn overridden_composite_breaks_laws() {
        let c = chain(2);
        let f = c.arrow_id("f").unwrap();
        let g = c.arrow_id("g").unwrap();
        let bad = c.with_composite(g, f, g);
        assert!(check_laws(&bad).is_err());
        assert!(check_laws(&c.to_table()).is_ok());
    }
}
