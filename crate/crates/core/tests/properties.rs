//! Property tests over randomized small inputs, each against an oracle
//! computed independently of the code under test.

use opcat::cli::parse_workspace;
use opcat::dendroid::{forest_iso, free_operad, omega, Forest, LevelForest};
use opcat::fincat::{category_iso, check_laws, power, FinCategory, DEFAULT_BUDGET};
use opcat::finstar::{compose_pointed, inert_active_factorize, PointedMap};
use opcat::operad::{diagram_operad, product_over_com, sqcup, sqcup_fiber, terminal_com, trivial_operad};
use opcat::verify::{operad_iso, VERIFY_BUDGET};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn pointed(n: usize, m: usize) -> impl Strategy<Value = PointedMap> {
    proptest::collection::vec(0..=m, n).prop_map(move |images| PointedMap::new(n, m, images).unwrap())
}

fn chain3() -> impl Strategy<Value = (PointedMap, PointedMap, PointedMap)> {
    (0..=4usize, 0..=4usize, 0..=4usize, 0..=4usize)
        .prop_flat_map(|(a, b, c, d)| (pointed(a, b), pointed(b, c), pointed(c, d)))
}

/// Images as plain functions on `{0, ..., n}` with 0 fixed.
fn eval(f: &PointedMap, x: usize) -> usize {
    if x == 0 {
        0
    } else {
        f.images()[x - 1]
    }
}

/// A preorder on `n` objects from a bitmask of generating relations.
fn preorder(n: usize, bits: u16) -> FinCategory {
    let mut le = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            le[a][b] = a == b || bits >> (a * n + b) & 1 == 1;
        }
    }
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                le[a][b] |= le[a][k] && le[k][b];
            }
        }
    }
    let names: Vec<String> = (0..n).map(|a| format!("x{a}")).collect();
    let mut text = format!("category P\nobj {}\n", names.join(" "));
    for a in 0..n {
        for b in (0..n).filter(|&b| b != a && le[a][b]) {
            text.push_str(&format!("arr u{a}{b}: x{a} -> x{b}\n"));
        }
    }
    parse_workspace(&text).unwrap().categories.remove(0).1
}

/// Forest on `parents.len()` edges: edge `i` sits below edge `parents[i]`
/// when that is smaller than `i`, and is a root otherwise. Edges in
/// `capped` without inputs carry a nullary vertex.
fn forest(parents: &[usize], capped: &[bool], order: &[usize]) -> Forest {
    let n = parents.len();
    let name = |i: usize| format!("e{}", order[i]);
    let mut children = vec![Vec::new(); n];
    for (i, &p) in parents.iter().enumerate() {
        if p < i {
            children[p].push(i);
        }
    }
    let edges = (0..n).map(name).collect();
    let vertices = (0..n)
        .filter(|&j| !children[j].is_empty() || capped[j])
        .map(|j| (format!("v{}", order[j]), children[j].iter().rev().map(|&c| name(c)).collect(), name(j)))
        .collect();
    Forest::new(edges, vertices).unwrap()
}

fn forest_parts() -> impl Strategy<Value = (Vec<usize>, Vec<bool>, Vec<usize>)> {
    (1..=6usize).prop_flat_map(|n| {
        (
            proptest::collection::vec(0..6usize, n),
            proptest::collection::vec(any::<bool>(), n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pointed_composition_is_function_composition((f, g, h) in chain3()) {
        let gf = compose_pointed(&f, &g).unwrap();
        for x in 0..=f.source() {
            prop_assert_eq!(eval(&gf, x), eval(&g, eval(&f, x)));
        }
        let left = compose_pointed(&gf, &h).unwrap();
        let right = compose_pointed(&f, &compose_pointed(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(compose_pointed(&PointedMap::identity(f.source()), &f).unwrap(), f.clone());
    }

    #[test]
    fn inert_active_factorization((n, m) in (0..=4usize, 0..=4usize), seed in any::<u64>()) {
        let images: Vec<usize> = (0..n).map(|i| (seed >> (4 * i)) as usize % (m + 1)).collect();
        let f = PointedMap::new(n, m, images).unwrap();
        let (inert, active) = inert_active_factorize(&f);
        prop_assert!(inert.is_inert());
        prop_assert!(active.is_active());
        prop_assert_eq!(compose_pointed(&inert, &active).unwrap(), f.clone());
        let killed = (1..=n).filter(|&x| eval(&f, x) == 0).count();
        prop_assert_eq!(inert.target(), n - killed);
    }

    #[test]
    fn preorders_are_categories(n in 1..=4usize, bits in any::<u16>()) {
        let p = preorder(n, bits);
        prop_assert!(check_laws(&p).is_ok());
        for x in p.objects() {
            for y in p.objects() {
                prop_assert!(p.hom(x, y).len() <= 1);
            }
        }
    }

    #[test]
    fn fiber_law_on_preorders(n in 1..=3usize, bits in any::<u16>(), k in 0..=2usize) {
        let p = preorder(n, bits);
        prop_assert!(category_iso(&sqcup_fiber(&p, k), &power(&p, k), DEFAULT_BUDGET).unwrap().is_some());
    }

    #[test]
    fn diagram_operad_matches_pullback_on_preorders(n in 1..=3usize, bits in any::<u16>(), com in any::<bool>()) {
        let p = preorder(n, bits);
        let o = if com { terminal_com() } else { trivial_operad() };
        let w = operad_iso(&diagram_operad(&p, &o), &product_over_com(&sqcup(&p), &o), 3, VERIFY_BUDGET).unwrap();
        prop_assert!(w.is_some());
        w.unwrap().check().unwrap();
    }

    #[test]
    fn sqcup_operation_counts(n in 1..=3usize, bits in any::<u16>(), picks in subsequence(vec![0usize, 1, 2, 0, 1], 0..=3)) {
        let p = preorder(n, bits);
        let o = sqcup(&p);
        let inputs: Vec<usize> = picks.into_iter().map(|x| x % n).collect();
        for y in p.objects() {
            let expected: usize = inputs.iter().map(|&x| p.hom(x, y).len()).product();
            prop_assert_eq!(o.labels(&inputs, y).len(), expected);
        }
    }

    #[test]
    fn relabelled_forests_are_isomorphic((parents, capped, order) in forest_parts()) {
        let identity: Vec<usize> = (0..parents.len()).collect();
        let f = forest(&parents, &capped, &identity);
        let g = forest(&parents, &capped, &order);
        let m = forest_iso(&f, &g);
        prop_assert!(m.is_some());
        prop_assert!(m.unwrap().check().is_ok());
        prop_assert!(operad_iso(&free_operad(&f), &free_operad(&g), 3, VERIFY_BUDGET).unwrap().is_some());
    }

    #[test]
    fn omega_counts((a, b, c) in chain3()) {
        let s = LevelForest::new(a.source(), vec![a.clone(), b.clone(), c.clone()]).unwrap();
        let f = omega(&s);
        let arities = [a.source(), a.target(), b.target(), c.target()];
        prop_assert_eq!(f.edge_count(), arities.iter().sum::<usize>());
        prop_assert_eq!(f.vertex_count(), arities[1..].iter().sum::<usize>());
        let roots = arities[3] + [&a, &b, &c].iter().map(|m| m.images().iter().filter(|&&x| x == 0).count()).sum::<usize>();
        prop_assert_eq!(f.roots().len(), roots);
    }
}
