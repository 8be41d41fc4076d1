//! The command-line tool end to end: golden workspace files, exit codes,
//! report bytes, and the text format's round trip and order independence.

use std::path::{Path, PathBuf};
use std::process::Command;

use opcat::cli::{parse_workspace, write_category, write_workspace};
use opcat::verify::{operad_iso, VERIFY_BUDGET};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn opcat(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_opcat")).args(args).output().expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().expect("exit code"))
}

#[test]
fn golden_files_exit_codes() {
    let table = [
        ("walking_arrow.txt", 0, "verdict: pass"),
        ("cyclic.txt", 0, "operad M: 1 colors, 3 operations"),
        ("trees.txt", 0, "simplex S: dimension 2, pass"),
        ("bad_laws.txt", 1, "witness: invalid operad: sequential associativity"),
        ("bad_syntax.txt", 2, "3:7: parse error: expected `:`"),
        ("bad_unresolved.txt", 2, "unresolved name `y`"),
        ("bad_conflict.txt", 2, "13:1: parse error: `g.f` was declared as `h` on line 11"),
        ("bad_ambiguous.txt", 2, "composite g.f is ambiguous: h or k"),
        ("duplicate.txt", 2, "duplicate name `A`"),
    ];
    for (file, code, needle) in table {
        let path = golden(file);
        let (report, got) = opcat(&["validate", "-f", path.to_str().unwrap()]);
        assert_eq!(got, code, "{file}:\n{report}");
        assert!(report.contains(needle), "{file}: missing `{needle}` in\n{report}");
    }
}

#[test]
fn documented_invocations() {
    let (report, code) = opcat(&["universal-check", "K=I1", "O=triv", "C=sample", "--arity", "3"]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("verdict: pass"));

    let (report, code) = opcat(&["iso", "A=diag(I1,Com)", "B=pull(sqcup(I1),Com)"]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("kind: operad\nverdict: pass\n"));

    let (report, code) = opcat(&["fibrous-check", "X=corrupted"]);
    assert_eq!(code, 1, "{report}");
    assert!(report.contains("verdict: fail\naxiom: "));
    assert!(report.contains("witness: "));
}

#[test]
fn report_bytes_are_fixed() {
    let (report, code) = opcat(&["phi-hom", "F=eta", "G=corolla(2)"]);
    assert_eq!(code, 0);
    assert_eq!(
        report,
        "# command: phi-hom F=eta G=corolla(2)\n\
         # arity: 3\n\
         # budget: 100000\n\
         morphisms: 3\n\
         morphism 1: e -> l1\n\
         morphism 2: e -> l2\n\
         morphism 3: e -> r\n"
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["gamma-star", "K=I1"],
        &["sqcup"],
        &["sqcup", "K=nosuch"],
        &["sqcup", "K=I1", "--dot"],
        &["omega", "S=<1>", "--corrupt"],
        &["iso", "A=I1", "A=I2"],
    ] {
        let out = Command::new(env!("CARGO_BIN_EXE_opcat")).args(args).output().unwrap();
        let text = format!("{}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr));
        assert_eq!(out.status.code(), Some(2), "{args:?}:\n{text}");
        assert!(text.contains("error: "), "{text}");
    }
}

#[test]
fn corrupted_universal_check_fails_with_witness() {
    let (report, code) = opcat(&["universal-check", "K=terminal", "O=sample", "C=sample", "--arity", "2", "--corrupt"]);
    assert_eq!(code, 1, "{report}");
    assert!(report.contains("--corrupt"));
    assert!(report.contains("verdict: fail"));
}

#[test]
fn written_objects_read_back() {
    let dir = std::env::temp_dir().join(format!("opcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("diag.txt");
    let (report, code) =
        opcat(&["diagram-operad", "K=I1", "O=sample", "--arity", "2", "--out", file.to_str().unwrap()]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains(&format!("written: {}", file.display())));
    let (report, code) =
        opcat(&["iso", "A=diag_I1_sample", "B=diag(I1,sample)", "--arity", "2", "-f", file.to_str().unwrap()]);
    assert_eq!(code, 0, "{report}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dot_output() {
    let (report, code) = opcat(&["omega", "S=2->1:[1,1]", "--dot"]);
    assert_eq!(code, 0, "{report}");
    let dot = &report[report.find("digraph").expect("graph present")..];
    assert!(dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches("shape=circle").count(), 1, "{dot}");
    assert_eq!(dot.matches("shape=plaintext").count(), 3, "{dot}");

    let (report, code) = opcat(&["gamma-star", "--arity", "2", "--dot"]);
    assert_eq!(code, 0);
    assert!(report.contains("digraph \"gamma_star\""));
}

#[test]
fn write_then_parse_is_stable() {
    let mut text = String::new();
    for f in ["walking_arrow.txt", "cyclic.txt", "trees.txt"] {
        text.push_str(&std::fs::read_to_string(golden(f)).unwrap());
    }
    let ws = parse_workspace(&text).unwrap();
    let once = write_workspace(&ws, 2);
    let twice = write_workspace(&parse_workspace(&once).unwrap(), 2);
    assert_eq!(once, twice);
    let back = parse_workspace(&once).unwrap();
    for ((n1, o1), (n2, o2)) in ws.operads.iter().zip(&back.operads) {
        assert_eq!(n1, n2);
        assert!(operad_iso(o1, o2, 2, VERIFY_BUDGET).unwrap().is_some(), "{n1}");
    }
}

#[test]
fn declaration_order_does_not_matter() {
    // Declarations may refer forward only to names already declared, so
    // shuffle within blocks of independent lines: objects, arrows, composites.
    let category = "category C\nobj a b c d\n\
        arr f: a -> b\narr g: b -> c\narr h: a -> c\narr k: c -> d\narr m: b -> d\narr n: a -> d\n\
        cmp g.f = h\ncmp k.g = m\ncmp k.h = n\ncmp m.f = n\n";
    let reference = parse_workspace(category).unwrap();
    let expected = write_category("C", reference.category("C").unwrap());
    let lines: Vec<&str> = category.lines().collect();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let mut objs: Vec<&str> = lines[1].split_whitespace().skip(1).collect();
        objs.shuffle(&mut rng);
        let mut arrs = lines[2..8].to_vec();
        arrs.shuffle(&mut rng);
        let mut cmps = lines[8..].to_vec();
        cmps.shuffle(&mut rng);
        let text = format!("category C\nobj {}\n{}\n{}\n", objs.join(" "), arrs.join("\n"), cmps.join("\n"));
        let ws = parse_workspace(&text).unwrap();
        assert_eq!(write_category("C", ws.category("C").unwrap()), expected, "{text}");
    }

    let operad = "operad P\ncolor x y\nunit x = ex\nunit y = ey\n\
        op a: (x, x) -> y\nop b: (x, x) -> y\nop c: (x) -> y\nsym a [2,1] = b\nsym b [2,1] = a\n";
    let reference = parse_workspace(operad).unwrap();
    let p = reference.operad("P").unwrap();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10 {
        let lines: Vec<&str> = operad.lines().collect();
        let mut ops = lines[4..7].to_vec();
        ops.shuffle(&mut rng);
        let text = format!("{}\n{}\n{}\n", lines[..4].join("\n"), ops.join("\n"), lines[7..].join("\n"));
        let ws = parse_workspace(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        let q = ws.operad("P").unwrap();
        let w = operad_iso(p, q, 3, VERIFY_BUDGET).unwrap().expect("isomorphic");
        w.check().unwrap();
    }
}
