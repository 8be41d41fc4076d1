use std::collections::BTreeSet;

use super::iso::inverse_of;
use super::{ArrowId, FinCategory};

/// A finite category with a distinguished set of arrows.
#[derive(Clone, Debug)]
pub struct MarkedFinCategory {
    pub underlying: FinCategory,
    pub marked: BTreeSet<ArrowId>,
}

impl MarkedFinCategory {
    pub fn is_marked(&self, f: ArrowId) -> bool {
        self.marked.contains(&f)
    }

    /// Fully marked category.
    pub fn sharp(c: &FinCategory) -> Self {
        MarkedFinCategory { underlying: c.clone(), marked: c.arrows().collect() }
    }
}

/// Smallest marking containing `seed` and every isomorphism that is closed
/// under composition.
pub fn saturate_marking(c: &FinCategory, seed: &[ArrowId]) -> MarkedFinCategory {
    let mut marked: BTreeSet<ArrowId> = seed.iter().copied().collect();
    marked.extend(c.arrows().filter(|&f| inverse_of(c, f).is_some()));
    let mut frontier: Vec<ArrowId> = marked.iter().copied().collect();
    while let Some(f) = frontier.pop() {
        let mut fresh = Vec::new();
        for &g in c.outgoing(c.target(f)) {
            if marked.contains(&g) {
                fresh.extend(c.compose(g, f));
            }
        }
        for &g in c.incoming(c.source(f)) {
            if marked.contains(&g) {
                fresh.extend(c.compose(f, g));
            }
        }
        for h in fresh {
            if marked.insert(h) {
                frontier.push(h);
            }
        }
    }
    MarkedFinCategory { underlying: c.clone(), marked }
}

/// `(wide subcategory on the marked arrows, underlying category)`.
pub fn marked_projections(m: &MarkedFinCategory) -> (FinCategory, FinCategory) {
    let c = &m.underlying;
    let objects: Vec<_> = c.objects().collect();
    let arrows: Vec<_> = m.marked.iter().copied().collect();
    (c.subcategory(&objects, &arrows), c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{category_iso, chain, check_laws, discrete, maximal_groupoid, walking_arrow, walking_iso, DEFAULT_BUDGET};

    #[test]
    fn saturation_examples() {
        let w = walking_arrow();
        let f = w.arrow_id("f").unwrap();
        assert_eq!(saturate_marking(&w, &[]).marked.len(), 2);
        assert_eq!(saturate_marking(&w, &[f]).marked.len(), 3);
        let c = chain(2);
        let (f, g, gf) = (c.arrow_id("f").unwrap(), c.arrow_id("g").unwrap(), c.arrow_id("gf").unwrap());
        assert!(saturate_marking(&c, &[f, g]).is_marked(gf));
        assert!(!saturate_marking(&c, &[f]).is_marked(gf));
    }

    #[test]
    fn saturation_is_idempotent_and_monotone() {
        for c in [chain(2), chain(3), walking_iso()] {
            let arrows: Vec<_> = c.arrows().collect();
            for mask in 0u32..(1 << arrows.len().min(10)) {
                let seed: Vec<_> = arrows.iter().copied().filter(|&a| a < 10 && mask & (1 << a) != 0).collect();
                let once = saturate_marking(&c, &seed);
                let seed2: Vec<_> = once.marked.iter().copied().collect();
                assert_eq!(saturate_marking(&c, &seed2).marked, once.marked);
                let smaller = saturate_marking(&c, &seed[..seed.len() / 2]);
                assert!(smaller.marked.is_subset(&once.marked));
            }
        }
    }

    #[test]
    fn projections() {
        let c = chain(2);
        let all: Vec<_> = c.arrows().collect();
        let (p0, p1) = marked_projections(&saturate_marking(&c, &all));
        assert!(category_iso(&p0, &c, DEFAULT_BUDGET).unwrap().is_some());
        assert!(category_iso(&p1, &c, DEFAULT_BUDGET).unwrap().is_some());

        let (p0, p1) = marked_projections(&saturate_marking(&walking_arrow(), &[]));
        check_laws(&p0).unwrap();
        assert!(category_iso(&p0, &discrete(2), DEFAULT_BUDGET).unwrap().is_some());
        assert!(category_iso(&p1, &walking_arrow(), DEFAULT_BUDGET).unwrap().is_some());

        let i = walking_iso();
        let (p0, _) = marked_projections(&saturate_marking(&i, &[]));
        assert_eq!(p0.arrow_count(), maximal_groupoid(&i).len());
    }
}
