//! Skeletal pointed finite sets `⟨n⟩ = {*, 1, …, n}`, their inert/active
//! structure, and the category `Γ*` of pointed sets with a chosen element.
//!
//! A pointed map `⟨n⟩ → ⟨m⟩` is stored as its images of `1..n`, with `0`
//! standing for the basepoint. The text form is `n->m:[a1,...,an]`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fincat::{Arrow, ArrowId, Composer, FinCategory, FunctorF};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedMap {
    source: usize,
    target: usize,
    images: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InertActiveTag {
    Inert,
    Active,
    /// Both inert and active: the bijections.
    Both,
    Neither,
}

impl InertActiveTag {
    pub fn is_inert(self) -> bool {
        matches!(self, InertActiveTag::Inert | InertActiveTag::Both)
    }

    pub fn is_active(self) -> bool {
        matches!(self, InertActiveTag::Active | InertActiveTag::Both)
    }
}

impl PointedMap {
    pub fn new(source: usize, target: usize, images: Vec<usize>) -> Result<Self> {
        if images.len() != source {
            return Err(Error::ArityMismatch(format!("{} images for source arity {source}", images.len())));
        }
        if let Some(&bad) = images.iter().find(|&&a| a > target) {
            return Err(Error::ArityMismatch(format!("image {bad} outside ⟨{target}⟩")));
        }
        Ok(PointedMap { source, target, images })
    }

    pub fn identity(n: usize) -> Self {
        PointedMap { source: n, target: n, images: (1..=n).collect() }
    }

    /// The inert projection `⟨n⟩ → ⟨1⟩` keeping only `j` (1-based).
    pub fn rho(n: usize, j: usize) -> Self {
        assert!((1..=n).contains(&j), "rho({n}, {j}) out of range");
        PointedMap { source: n, target: 1, images: (1..=n).map(|i| usize::from(i == j)).collect() }
    }

    /// The active map `⟨n⟩ → ⟨1⟩` sending everything to `1`.
    pub fn fold(n: usize) -> Self {
        PointedMap { source: n, target: 1, images: vec![1; n] }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `i ∈ {0..n}` (0 is the basepoint).
    pub fn apply(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.images[i - 1]
        }
    }

    /// Elements of `1..n` sent to `j`, in increasing order.
    pub fn preimage(&self, j: usize) -> Vec<usize> {
        (1..=self.source).filter(|&i| self.images[i - 1] == j).collect()
    }

    pub fn classify(&self) -> InertActiveTag {
        let active = self.images.iter().all(|&a| a != 0);
        let mut counts = vec![0usize; self.target + 1];
        for &a in &self.images {
            counts[a] += 1;
        }
        let inert = counts[1..].iter().all(|&c| c == 1);
        match (inert, active) {
            (true, true) => InertActiveTag::Both,
            (true, false) => InertActiveTag::Inert,
            (false, true) => InertActiveTag::Active,
            (false, false) => InertActiveTag::Neither,
        }
    }

    pub fn is_inert(&self) -> bool {
        self.classify().is_inert()
    }

    pub fn is_active(&self) -> bool {
        self.classify().is_active()
    }

    /// Every pointed map `⟨n⟩ → ⟨m⟩`, images in lexicographic order.
    pub fn all(n: usize, m: usize) -> Vec<PointedMap> {
        if n == 0 {
            return vec![PointedMap { source: 0, target: m, images: Vec::new() }];
        }
        (0..n)
            .map(|_| 0..=m)
            .multi_cartesian_product()
            .map(|images| PointedMap { source: n, target: m, images })
            .collect()
    }
}

impl fmt::Display for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:[{}]", self.source, self.target, self.images.iter().join(","))
    }
}

impl FromStr for PointedMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { line: 0, column: 0, message: format!("pointed map `{s}`: {msg}") };
        let (arities, images) = s.split_once(':').ok_or_else(|| bad("expected `n->m:[...]`"))?;
        let (n, m) = arities.split_once("->").ok_or_else(|| bad("expected `n->m`"))?;
        let n: usize = n.trim().parse().map_err(|_| bad("bad source arity"))?;
        let m: usize = m.trim().parse().map_err(|_| bad("bad target arity"))?;
        let inner = images
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("images must be bracketed"))?;
        let images: Vec<usize> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|a| a.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("bad image"))?
        };
        PointedMap::new(n, m, images)
    }
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose_pointed(f: &PointedMap, g: &PointedMap) -> Result<PointedMap> {
    if f.target != g.source {
        return Err(Error::ArityMismatch(format!("cannot follow {f} by {g}")));
    }
    Ok(PointedMap { source: f.source, target: g.target, images: f.images.iter().map(|&a| g.apply(a)).collect() })
}

pub fn classify(f: &PointedMap) -> InertActiveTag {
    f.classify()
}

/// `f = active ∘ inert`. The inert part drops exactly the elements `f`
/// kills and numbers the survivors in source order.
pub fn inert_active_factorize(f: &PointedMap) -> (PointedMap, PointedMap) {
    let survivors: Vec<usize> = (1..=f.source).filter(|&i| f.apply(i) != 0).collect();
    let k = survivors.len();
    let mut inert = vec![0; f.source];
    for (pos, &i) in survivors.iter().enumerate() {
        inert[i - 1] = pos + 1;
    }
    let active = survivors.iter().map(|&i| f.apply(i)).collect();
    (
        PointedMap { source: f.source, target: k, images: inert },
        PointedMap { source: k, target: f.target, images: active },
    )
}

/// The full subcategory of `Fin_*` on `⟨0⟩, …, ⟨N⟩`, with lookup tables
/// between arrows and pointed maps.
#[derive(Clone, Debug)]
pub struct FinStar {
    pub bound: usize,
    pub category: FinCategory,
    maps: Arc<Vec<PointedMap>>,
    index: Arc<HashMap<PointedMap, ArrowId>>,
}

impl FinStar {
    pub fn new(bound: usize) -> FinStar {
        let objects: Vec<String> = (0..=bound).map(|n| format!("<{n}>")).collect();
        let mut maps = Vec::new();
        for n in 0..=bound {
            for m in 0..=bound {
                maps.extend(PointedMap::all(n, m));
            }
        }
        let index: HashMap<PointedMap, ArrowId> = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let arrows =
            maps.iter().map(|m| Arrow { name: m.to_string(), source: m.source, target: m.target }).collect();
        let identities = (0..=bound).map(|n| index[&PointedMap::identity(n)]).collect();
        let maps = Arc::new(maps);
        let index = Arc::new(index);
        let (m2, i2) = (maps.clone(), index.clone());
        let rule = move |g: ArrowId, f: ArrowId| -> Option<ArrowId> {
            let h = compose_pointed(&m2[f], &m2[g]).ok()?;
            i2.get(&h).copied()
        };
        let category = FinCategory::assemble(objects, arrows, identities, Composer::Rule(Arc::new(rule)));
        FinStar { bound, category, maps, index }
    }

    pub fn map(&self, f: ArrowId) -> &PointedMap {
        &self.maps[f]
    }

    pub fn arrow(&self, map: &PointedMap) -> Option<ArrowId> {
        self.index.get(map).copied()
    }

    /// Object id of `⟨n⟩`.
    pub fn object(&self, n: usize) -> usize {
        n
    }

    pub fn inert_arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.category.arrows().filter(|&f| self.maps[f].is_inert())
    }
}

pub fn fin_star_truncated(bound: usize) -> FinCategory {
    FinStar::new(bound).category
}

/// `Γ*` truncated at `N`: objects `(⟨n⟩, i)` with `1 ≤ i ≤ n ≤ N`, arrows
/// the pointed maps carrying `i` to `j`, and the projection to `Fin_*`.
pub fn gamma_star_truncated(bound: usize) -> (FinCategory, FunctorF) {
    gamma_star_over(&FinStar::new(bound))
}

pub fn gamma_star_over(base: &FinStar) -> (FinCategory, FunctorF) {
    let bound = base.bound;
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    let mut obj_proj = Vec::new();
    for n in 1..=bound {
        for i in 1..=n {
            obj_index.insert((n, i), objects.len());
            objects.push(format!("(<{n}>,{i})"));
            obj_proj.push(n);
        }
    }
    let mut arrows = Vec::new();
    let mut arr_data: Vec<(ArrowId, usize)> = Vec::new();
    let mut arr_index = HashMap::new();
    for (&(n, i), &x) in obj_index.iter().sorted() {
        for m in 1..=bound {
            for &alpha in base.category.hom(n, m) {
                let j = base.map(alpha).apply(i);
                if j == 0 {
                    continue;
                }
                arr_index.insert((alpha, i), arrows.len());
                arr_data.push((alpha, i));
                arrows.push(Arrow { name: format!("{}@{}", base.map(alpha), i), source: x, target: obj_index[&(m, j)] });
            }
        }
    }
    let identities: Vec<ArrowId> = obj_index
        .iter()
        .sorted_by_key(|(_, &x)| x)
        .map(|(&(n, i), _)| arr_index[&(base.arrow(&PointedMap::identity(n)).expect("identity"), i)])
        .collect();
    let arr_proj: Vec<ArrowId> = arr_data.iter().map(|&(alpha, _)| alpha).collect();
    let b2 = base.category.clone();
    let data = arr_data.clone();
    let rule = move |g: ArrowId, f: ArrowId| -> Option<ArrowId> {
        let (fa, i) = data[f];
        let (ga, _) = data[g];
        arr_index.get(&(b2.compose(ga, fa)?, i)).copied()
    };
    let gamma = FinCategory::assemble(objects, arrows, identities, Composer::Rule(Arc::new(rule)));
    let proj = FunctorF { source: gamma.clone(), target: base.category.clone(), objects: obj_proj, arrows: arr_proj };
    (gamma, proj)
}
