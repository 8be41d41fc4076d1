use super::search::{find_functor, FunctorConstraints};
use super::{ArrowId, FinCategory, FunctorF, ObjId};
use crate::error::{Error, Result};

pub(crate) fn inverse_of(c: &FinCategory, f: ArrowId) -> Option<ArrowId> {
    let (x, y) = (c.source(f), c.target(f));
    c.hom(y, x)
        .iter()
        .copied()
        .find(|&g| c.compose(g, f) == Some(c.identity(x)) && c.compose(f, g) == Some(c.identity(y)))
}

/// Does `f` have a two-sided inverse?
pub fn is_isomorphism(c: &FinCategory, f: ArrowId) -> Result<bool> {
    if f >= c.arrow_count() {
        return Err(Error::UnknownArrow(format!("#{f}")));
    }
    Ok(inverse_of(c, f).is_some())
}

/// All isomorphisms of `c`, as a sorted arrow list.
pub fn maximal_groupoid(c: &FinCategory) -> Vec<ArrowId> {
    c.arrows().filter(|&f| inverse_of(c, f).is_some()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct ObjectProfile {
    endos: usize,
    out_degree: usize,
    in_degree: usize,
    isos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct ArrowProfile {
    identity: bool,
    iso: bool,
    idempotent: bool,
    left_fixers: usize,
    right_fixers: usize,
}

fn object_profiles(c: &FinCategory, isos: &[bool]) -> Vec<ObjectProfile> {
    c.objects()
        .map(|x| ObjectProfile {
            endos: c.hom(x, x).len(),
            out_degree: c.outgoing(x).len(),
            in_degree: c.incoming(x).len(),
            isos: c.outgoing(x).iter().filter(|&&f| isos[f]).count(),
        })
        .collect()
}

fn arrow_profiles(c: &FinCategory, isos: &[bool]) -> Vec<ArrowProfile> {
    c.arrows()
        .map(|f| {
            let (x, y) = (c.source(f), c.target(f));
            ArrowProfile {
                identity: c.is_identity(f),
                iso: isos[f],
                idempotent: x == y && c.compose(f, f) == Some(f),
                left_fixers: c.hom(y, y).iter().filter(|&&g| c.compose(g, f) == Some(f)).count(),
                right_fixers: c.hom(x, x).iter().filter(|&&g| c.compose(f, g) == Some(f)).count(),
            }
        })
        .collect()
}

/// Decides `C ≅ D`. On success returns a functor `C → D` and its inverse.
pub fn category_iso(c: &FinCategory, d: &FinCategory, budget: u64) -> Result<Option<(FunctorF, FunctorF)>> {
    if c.object_count() != d.object_count() || c.arrow_count() != d.arrow_count() {
        return Ok(None);
    }
    let iso_c: Vec<bool> = c.arrows().map(|f| inverse_of(c, f).is_some()).collect();
    let iso_d: Vec<bool> = d.arrows().map(|f| inverse_of(d, f).is_some()).collect();
    let (op_c, op_d) = (object_profiles(c, &iso_c), object_profiles(d, &iso_d));
    let (ap_c, ap_d) = (arrow_profiles(c, &iso_c), arrow_profiles(d, &iso_d));
    let mut sorted_c = op_c.clone();
    let mut sorted_d = op_d.clone();
    sorted_c.sort();
    sorted_d.sort();
    if sorted_c != sorted_d {
        return Ok(None);
    }
    let constraints = FunctorConstraints::default()
        .bijective()
        .objects(|x: ObjId, y: ObjId| op_c[x] == op_d[y])
        .arrows(|f: ArrowId, g: ArrowId| ap_c[f] == ap_d[g]);
    let Some(forward) = find_functor(c, d, &constraints, budget)? else {
        return Ok(None);
    };
    let backward = forward.inverse().expect("bijective search result");
    Ok(Some((forward, backward)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, discrete, product, terminal, walking_arrow, walking_iso, DEFAULT_BUDGET};

    #[test]
    fn isomorphism_examples() {
        let w = walking_arrow();
        assert!(is_isomorphism(&w, w.identity(0)).unwrap());
        assert!(!is_isomorphism(&w, w.arrow_id("f").unwrap()).unwrap());
        let i = walking_iso();
        assert!(is_isomorphism(&i, i.arrow_id("f").unwrap()).unwrap());
        assert!(is_isomorphism(&i, i.arrow_id("g").unwrap()).unwrap());
        assert!(matches!(is_isomorphism(&w, 99), Err(Error::UnknownArrow(_))));
    }

    #[test]
    fn iso_examples() {
        let c = chain(2);
        let (f, g) = category_iso(&c, &c, DEFAULT_BUDGET).unwrap().unwrap();
        f.check().unwrap();
        g.check().unwrap();
        assert_eq!(f.then(&g), FunctorF::identity(&c));
        assert!(category_iso(&walking_arrow(), &discrete(2), DEFAULT_BUDGET).unwrap().is_none());
        let p = product(&walking_arrow(), &terminal());
        assert!(category_iso(&p, &walking_arrow(), DEFAULT_BUDGET).unwrap().is_some());
        assert!(category_iso(&walking_iso(), &walking_arrow(), DEFAULT_BUDGET).unwrap().is_none());
    }

    #[test]
    fn iso_is_symmetric_and_transitive() {
        let a = product(&chain(1), &chain(2));
        let b = product(&chain(2), &chain(1));
        let c = product(&terminal(), &b);
        let (ab, ba) = category_iso(&a, &b, DEFAULT_BUDGET).unwrap().unwrap();
        let (bc, _) = category_iso(&b, &c, DEFAULT_BUDGET).unwrap().unwrap();
        ba.check().unwrap();
        let ac = ab.then(&bc);
        ac.check().unwrap();
        assert!(ac.is_bijective());
    }

    #[test]
    fn groupoid_of_walking_iso_is_everything() {
        assert_eq!(maximal_groupoid(&walking_iso()).len(), 4);
        assert_eq!(maximal_groupoid(&chain(2)).len(), 3);
    }
}
