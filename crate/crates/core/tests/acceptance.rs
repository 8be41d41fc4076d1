//! The acceptance criteria, one test each. Every test writes one
//! `criterion N ... pass|FAIL` line straight to standard output, so the
//! line appears even when the harness captures test output.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use opcat::cli::parse_workspace;
use opcat::dendroid::{
    binary_corolla, forest_iso, free_operad, linear_tree, omega, omega_functoriality_check, unit_tree, LevelForest,
};
use opcat::fincat::{
    category_iso, chain, discrete, power, saturate_marking, terminal, walking_iso, FinCategory, FunctorF,
};
use opcat::finstar::{FinStar, PointedMap};
use opcat::operad::{
    check_operad_laws, diagram_operad, fibrous_check, mutation_corpus, operator_category, product_operad,
    product_over_com, sample_operad, sqcup, sqcup_fiber, sqcup_representability_check, terminal_com,
    trivial_operad, SetOperad,
};
use opcat::verify::{operad_iso, universal_property_check, VERIFY_BUDGET};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn line(n: usize, what: &str, ok: bool, detail: &str) {
    let verdict = if ok { "pass" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "criterion {n} ({what}): {verdict}; {detail}").unwrap();
    out.flush().unwrap();
}

fn categories() -> Vec<(&'static str, FinCategory)> {
    vec![("terminal", terminal()), ("I1", chain(1)), ("I2", chain(2)), ("iso", walking_iso()), ("disc2", discrete(2))]
}

fn operads() -> Vec<(&'static str, SetOperad)> {
    vec![
        ("Com", terminal_com()),
        ("triv", trivial_operad()),
        ("free(corolla)", free_operad(&binary_corolla())),
        ("sample", sample_operad()),
    ]
}

#[test]
fn criterion_1_diagram_operad_is_pullback() {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (kn, k) in categories() {
        for (on, o) in operads() {
            let t = Instant::now();
            let d = diagram_operad(&k, &o);
            let p = product_over_com(&sqcup(&k), &o);
            let verdict = match operad_iso(&d, &p, 3, VERIFY_BUDGET) {
                Ok(Some(w)) => w.check().map_err(|e| e.to_string()),
                Ok(None) => Err("no isomorphism".into()),
                Err(e) => Err(e.to_string()),
            };
            let elapsed = t.elapsed();
            slowest = slowest.max(elapsed);
            if let Err(e) = verdict {
                failures.push(format!("({kn},{on}): {e}"));
            } else if elapsed > Duration::from_secs(10) {
                failures.push(format!("({kn},{on}): {elapsed:?} over 10 s"));
            }
        }
    }
    let detail = format!("20 pairs at bound 3, slowest {} ms {}", slowest.as_millis(), failures.join("; "));
    line(1, "diagram operad vs pullback", failures.is_empty(), detail.trim());
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_2_fiber_law() {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (kn, k) in categories() {
        for n in 0..=3 {
            let t = Instant::now();
            let iso = category_iso(&sqcup_fiber(&k, n), &power(&k, n), VERIFY_BUDGET);
            let elapsed = t.elapsed();
            slowest = slowest.max(elapsed);
            match iso {
                Ok(Some(_)) if elapsed <= Duration::from_secs(5) => {}
                Ok(Some(_)) => failures.push(format!("({kn},{n}): {elapsed:?}")),
                Ok(None) => failures.push(format!("({kn},{n}): not isomorphic")),
                Err(e) => failures.push(format!("({kn},{n}): {e}")),
            }
        }
    }
    let detail = format!("20 instances, slowest {} ms {}", slowest.as_millis(), failures.join("; "));
    line(2, "fiber law", failures.is_empty(), detail.trim());
    assert!(failures.is_empty(), "{failures:?}");
}

/// A category `B` written in the text format, with the pointed map over
/// which each object and non-identity arrow lies.
struct Over {
    name: &'static str,
    text: &'static str,
    objects: &'static [(&'static str, usize)],
    arrows: &'static [(&'static str, &'static str)],
}

const OVER: [Over; 9] = [
    Over { name: "point<2>", text: "category B\nobj x\n", objects: &[("x", 2)], arrows: &[] },
    Over {
        name: "inert arrow",
        text: "category B\nobj x y\narr f: x -> y\n",
        objects: &[("x", 2), ("y", 1)],
        arrows: &[("f", "2->1:[1,0]")],
    },
    Over {
        name: "active arrow",
        text: "category B\nobj x y\narr f: x -> y\n",
        objects: &[("x", 2), ("y", 1)],
        arrows: &[("f", "2->1:[1,1]")],
    },
    Over {
        name: "to <0>",
        text: "category B\nobj x y\narr f: x -> y\n",
        objects: &[("x", 1), ("y", 0)],
        arrows: &[("f", "1->0:[0]")],
    },
    Over {
        name: "swap then fold",
        text: "category B\nobj x y z\narr f: x -> y\narr g: y -> z\narr h: x -> z\n",
        objects: &[("x", 2), ("y", 2), ("z", 1)],
        arrows: &[("f", "2->2:[2,1]"), ("g", "2->1:[1,1]"), ("h", "2->1:[1,1]")],
    },
    Over {
        name: "swap isomorphism",
        text: "category B\nobj x y\narr f: x -> y\narr g: y -> x\ncmp g.f = id_x\ncmp f.g = id_y\n",
        objects: &[("x", 2), ("y", 2)],
        arrows: &[("f", "2->2:[2,1]"), ("g", "2->2:[2,1]")],
    },
    Over { name: "two points", text: "category B\nobj x y\n", objects: &[("x", 1), ("y", 2)], arrows: &[] },
    Over {
        name: "Segal span",
        text: "category B\nobj x y z\narr f: x -> y\narr g: x -> z\n",
        objects: &[("x", 2), ("y", 1), ("z", 1)],
        arrows: &[("f", "2->1:[1,0]"), ("g", "2->1:[0,1]")],
    },
    Over {
        name: "cospan",
        text: "category B\nobj x y z\narr f: x -> z\narr g: y -> z\n",
        objects: &[("x", 1), ("y", 2), ("z", 1)],
        arrows: &[("f", "1->1:[1]"), ("g", "2->1:[1,1]")],
    },
];

fn over_functor(b: &FinCategory, base: &FinStar, over: &Over) -> FunctorF {
    let objects: Vec<usize> =
        b.objects().map(|x| over.objects.iter().find(|(n, _)| *n == b.object_name(x)).unwrap().1).collect();
    let arrows = b
        .arrows()
        .map(|f| {
            if b.is_identity(f) {
                base.category.identity(objects[b.source(f)])
            } else {
                let (_, m) = over.arrows.iter().find(|(n, _)| *n == b.arrow_name(f)).unwrap();
                base.arrow(&m.parse::<PointedMap>().unwrap()).unwrap()
            }
        })
        .collect();
    FunctorF::new(b.clone(), base.category.clone(), objects, arrows).unwrap()
}

#[test]
fn criterion_3_representability() {
    let base = FinStar::new(2);
    let mut cases: Vec<(String, FinCategory, FunctorF)> = OVER
        .iter()
        .map(|o| {
            let b = parse_workspace(o.text).unwrap().categories.remove(0).1;
            let q = over_functor(&b, &base, o);
            (o.name.to_string(), b, q)
        })
        .collect();
    let whole = base.category.clone();
    let identity = FunctorF::new(whole.clone(), whole.clone(), whole.objects().collect(), whole.arrows().collect()).unwrap();
    cases.push(("Fin_* up to <2>".into(), whole, identity));
    let mut failures = Vec::new();
    let mut compared = 0;
    for (name, b, q) in &cases {
        let seed: Vec<usize> = b.arrows().filter(|&f| base.map(q.arrows[f]).is_inert()).collect();
        let marked = saturate_marking(b, &seed);
        for (kn, k) in [("terminal", terminal()), ("I1", chain(1)), ("iso", walking_iso()), ("disc2", discrete(2))] {
            match sqcup_representability_check(&marked, q, &base, &k, VERIFY_BUDGET) {
                Ok(r) if r.holds() => compared += r.over_sqcup,
                Ok(r) => failures.push(format!("({name},{kn}): {} vs {}", r.over_sqcup, r.over_gamma)),
                Err(e) => failures.push(format!("({name},{kn}): {e}")),
            }
        }
    }
    let detail = format!("{} B x 4 K, {compared} functors matched {}", cases.len(), failures.join("; "));
    line(3, "representability", failures.is_empty(), detail.trim());
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_4_fibrousness() {
    let mut failures = Vec::new();
    for (on, o) in operads() {
        let r = fibrous_check(&operator_category(&o, 3));
        if let Some((axiom, witness)) = r.failure {
            failures.push(format!("{on}: {axiom}: {witness}"));
        }
    }
    let corpus = mutation_corpus();
    let mut caught = 0;
    for (name, x) in &corpus {
        match fibrous_check(x).failure {
            Some((axiom, witness)) if !axiom.is_empty() && !witness.is_empty() => caught += 1,
            _ => failures.push(format!("mutation {name} not detected")),
        }
    }
    let ok = failures.is_empty() && corpus.len() == 10;
    let detail = format!("4 operads at bound 3, {caught}/{} mutations caught {}", corpus.len(), failures.join("; "));
    line(4, "fibrousness", ok, detail.trim());
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_5_universal_property() {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (kn, k) in [("terminal", terminal()), ("I1", chain(1))] {
        for (on, o) in [("triv", trivial_operad()), ("Com", terminal_com())] {
            for (cn, c) in [("Com", terminal_com()), ("triv", trivial_operad()), ("sample", sample_operad())] {
                let t = Instant::now();
                let r = universal_property_check(&k, &o, &c, 3, VERIFY_BUDGET);
                let elapsed = t.elapsed();
                slowest = slowest.max(elapsed);
                match r {
                    Ok(r) if r.passed() && elapsed <= Duration::from_secs(60) => {
                        let f = &r.comparison.as_ref().unwrap().functor;
                        if !f.is_bijective() {
                            failures.push(format!("({kn},{on},{cn}): comparison not bijective"));
                        }
                    }
                    Ok(r) if r.passed() => failures.push(format!("({kn},{on},{cn}): {elapsed:?}")),
                    Ok(r) => failures.push(format!("({kn},{on},{cn}): {}", r.witness.unwrap_or_default())),
                    Err(e) => failures.push(format!("({kn},{on},{cn}): {e}")),
                }
            }
        }
    }
    let detail = format!("12 triples at bound 3, slowest {} ms {}", slowest.as_millis(), failures.join("; "));
    line(5, "universal property", failures.is_empty(), detail.trim());
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_6_omega_functoriality() {
    let mut failures = Vec::new();
    let report = omega_functoriality_check(3, 3).unwrap();
    if let Some(f) = &report.failure {
        failures.push(f.clone());
    }
    if forest_iso(&omega(&LevelForest::point(1)), &unit_tree()).is_none() {
        failures.push("omega(<1>) is not the unit tree".into());
    }
    let mut simplices = 0;
    for n in 0..=3 {
        for m in 0..=3 {
            for alpha in PointedMap::all(n, m) {
                let f = omega(&LevelForest::new(n, vec![alpha.clone()]).unwrap());
                simplices += 1;
                if f.vertex_count() != m || f.edge_count() != n + m {
                    failures.push(format!("{alpha}: {} vertices, {} edges", f.vertex_count(), f.edge_count()));
                }
            }
        }
    }
    let detail = format!(
        "{} chains, {} arrows, {} composites, {simplices} 1-simplices {}",
        report.chains,
        report.arrows,
        report.composites,
        failures.join("; ")
    );
    line(6, "omega functoriality", failures.is_empty(), detail.trim());
    assert!(failures.is_empty(), "{failures:?}");
}

/// A random preorder on up to three objects, written in the text format
/// with arrows only; the parser fills in every composite.
fn preorder(n: usize, bits: u8) -> FinCategory {
    let mut le = [[false; 3]; 3];
    for a in 0..n {
        for b in 0..n {
            le[a][b] = a == b || (a != b && bits >> (a * 3 + b) & 1 == 1);
        }
    }
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                le[a][b] |= le[a][k] && le[k][b];
            }
        }
    }
    let mut text = String::from("category P\nobj");
    for a in 0..n {
        text.push_str(&format!(" x{a}"));
    }
    text.push('\n');
    for a in 0..n {
        for b in (0..n).filter(|&b| b != a && le[a][b]) {
            text.push_str(&format!("arr u{a}{b}: x{a} -> x{b}\n"));
        }
    }
    parse_workspace(&text).unwrap().categories.remove(0).1
}

#[derive(Clone, Debug)]
enum Recipe {
    Sqcup,
    Diagram(usize),
    OverCom(usize),
    Product(usize, usize),
    Free(usize),
}

fn recipe() -> impl Strategy<Value = (usize, u8, Recipe)> {
    let r = prop_oneof![
        Just(Recipe::Sqcup),
        (0..4usize).prop_map(Recipe::Diagram),
        (0..4usize).prop_map(Recipe::OverCom),
        (0..4usize, 0..4usize).prop_map(|(a, b)| Recipe::Product(a, b)),
        (1..4usize).prop_map(Recipe::Free),
    ];
    (1..=3usize, any::<u8>(), r)
}

fn build(n: usize, bits: u8, r: &Recipe) -> SetOperad {
    let k = preorder(n, bits);
    let base = |i: usize| operads().swap_remove(i).1;
    match r {
        Recipe::Sqcup => sqcup(&k),
        Recipe::Diagram(o) => diagram_operad(&k, &base(*o)),
        Recipe::OverCom(o) => product_over_com(&sqcup(&k), &base(*o)),
        Recipe::Product(a, b) => product_operad(&base(*a), &base(*b)),
        Recipe::Free(e) => free_operad(&linear_tree(*e)),
    }
}

#[test]
fn criterion_7_operad_laws() {
    let mut runner = TestRunner::new(Config { cases: 100, ..Config::default() });
    let checked = std::cell::Cell::new(0usize);
    let result = runner.run(&recipe(), |(n, bits, r)| {
        let o = build(n, bits, &r);
        let summary = check_operad_laws(&o, 3).map_err(|e| TestCaseError::fail(format!("{n} objects, {bits:#x}, {r:?}: {e}")))?;
        checked.set(checked.get() + summary.checks);
        Ok(())
    });
    let ok = result.is_ok();
    let detail = match &result {
        Ok(()) => format!("100 random constructions, {} equations at bound 3", checked.get()),
        Err(e) => e.to_string(),
    };
    line(7, "operad laws", ok, &detail);
    assert!(ok, "{detail}");
}

const DETERMINISM: [&[&str]; 6] = [
    &["iso", "A=diag(I1,sample)", "B=pull(sqcup(I1),sample)", "--arity", "2"],
    &["universal-check", "K=I1", "O=triv", "C=sample", "--arity", "2"],
    &["fibrous-check", "X=corrupted(segal-composition)"],
    &["diagram-operad", "K=iso", "O=sample", "--arity", "2"],
    &["omega", "D=2", "--arity", "2"],
    &["phi-hom", "F=linear(2)", "G=corolla(3)"],
];

fn run_cli(args: &[&str]) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_opcat")).args(args).output().expect("binary runs");
    (out.stdout, out.status.code())
}

#[test]
fn criterion_8_determinism() {
    let mut failures = Vec::new();
    for args in DETERMINISM {
        let first = run_cli(args);
        for _ in 0..2 {
            if run_cli(args) != first {
                failures.push(format!("{}: repeated run differs", args.join(" ")));
            }
        }
        let mut single: Vec<&str> = args.to_vec();
        single.extend(["--threads", "1"]);
        if run_cli(&single) != first {
            failures.push(format!("{}: --threads 1 differs", args.join(" ")));
        }
    }
    let detail = format!("{} commands x 3 runs + single-threaded {}", DETERMINISM.len(), failures.join("; "));
    line(8, "determinism", failures.is_empty(), detail.trim());
    assert!(failures.is_empty(), "{failures:?}");
}
