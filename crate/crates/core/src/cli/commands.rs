//! One function per command. Each returns the report body and an exit code.

use std::fmt::Write;

use super::expr::{self, kind_of, Expr, Kind};
use super::text::{write_category, write_forest, write_operad, Workspace};
use super::Invocation;
use crate::dendroid::{forest_to_dot, omega, omega_functoriality_check, phi_hom, Forest};
use crate::error::{Error, Result};
use crate::fincat::{category_iso, category_to_dot, FinCategory};
use crate::finstar::gamma_star_truncated;
use crate::operad::{check_operad_laws, fibrous_check, Corrupted, Operation, SetOperad};
use crate::verify::{alg_category, inert_functor_bijection_check, operad_iso, universal_property_check_on};

pub const PASS: i32 = 0;
pub const FAIL: i32 = 1;

/// Body of a report and its exit code.
pub struct Body {
    pub text: String,
    pub code: i32,
    /// Serialized constructed object, for `--out` or standard output.
    pub object: Option<String>,
}

impl Body {
    fn verdict(text: String, passed: bool) -> Body {
        Body { text, code: if passed { PASS } else { FAIL }, object: None }
    }

    fn constructed(text: String, object: String) -> Body {
        Body { text, code: PASS, object: Some(object) }
    }
}

pub struct Context<'a> {
    pub ws: &'a Workspace,
    pub inv: &'a Invocation,
    pub arity: usize,
    pub budget: u64,
}

impl Context<'_> {
    fn expr(&self, key: &str) -> Result<Expr> {
        Expr::parse(self.raw(key)?)
    }

    fn raw(&self, key: &str) -> Result<&str> {
        self.inv.arg(key).ok_or_else(|| Error::Usage(format!("`{}` needs the argument {key}=...", self.inv.command)))
    }

    fn operad(&self, key: &str) -> Result<SetOperad> {
        expr::operad(self.ws, &self.expr(key)?, self.arity)
    }

    fn category(&self, key: &str) -> Result<FinCategory> {
        expr::category(self.ws, &self.expr(key)?)
    }

    fn forest(&self, key: &str) -> Result<Forest> {
        expr::forest(self.ws, &self.expr(key)?)
    }

    fn category_object(&self, name: &str, c: &FinCategory) -> String {
        if self.inv.dot {
            category_to_dot(name, c)
        } else {
            write_category(name, c)
        }
    }

    fn forest_object(&self, name: &str, f: &Forest) -> String {
        if self.inv.dot {
            forest_to_dot(name, f)
        } else {
            write_forest(name, f)
        }
    }

    fn operad_object(&self, name: &str, o: &SetOperad) -> Result<String> {
        if self.inv.dot {
            return Err(Error::Usage("graph export covers categories and forests, not operads".into()));
        }
        Ok(write_operad(name, o, self.arity))
    }
}

/// A bare identifier for a constructed object: `diag(I1,Com)` becomes
/// `diag_I1_Com`.
fn object_name(e: &str) -> String {
    let mut out = String::new();
    for c in e.chars() {
        if c.is_alphanumeric() || c == '_' {
            out.push(c);
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_matches('_').to_string()
}

fn operad_summary(o: &SetOperad, bound: usize) -> String {
    let mut out = String::new();
    writeln!(out, "colors: {}", o.color_count()).unwrap();
    writeln!(out, "operations: {}", o.all_operations(bound).len()).unwrap();
    out
}

fn category_summary(c: &FinCategory) -> String {
    format!("objects: {}\narrows: {}\n", c.object_count(), c.arrow_count())
}

pub fn validate(cx: &Context) -> Result<Body> {
    let mut text = String::new();
    let mut passed = true;
    let mut laws = |text: &mut String, label: String, o: &SetOperad| {
        match check_operad_laws(o, cx.arity) {
            Ok(s) => writeln!(text, "{label}: {} colors, {} operations, {} law checks, pass", o.color_count(), s.operations, s.checks),
            Err(e) => {
                passed = false;
                writeln!(text, "{label}: fail\nwitness: {e}")
            }
        }
        .unwrap();
    };
    for (name, c) in &cx.ws.categories {
        writeln!(text, "category {name}: {} objects, {} arrows, pass", c.object_count(), c.arrow_count()).unwrap();
    }
    for (name, o) in &cx.ws.operads {
        laws(&mut text, format!("operad {name}"), o);
    }
    for (name, f) in &cx.ws.forests {
        writeln!(text, "forest {name}: {} edges, {} vertices, pass", f.edge_count(), f.vertex_count()).unwrap();
    }
    for (name, s) in &cx.ws.simplices {
        writeln!(text, "simplex {name}: dimension {}, pass", s.dimension()).unwrap();
    }
    for (key, raw) in &cx.inv.args {
        let e = Expr::parse(raw)?;
        match kind_of(cx.ws, &e) {
            Some(Kind::Category) => {
                let c = expr::category(cx.ws, &e)?;
                writeln!(text, "{key}={e}: {} objects, {} arrows, pass", c.object_count(), c.arrow_count()).unwrap();
            }
            Some(Kind::Operad) => laws(&mut text, format!("{key}={e}"), &expr::operad(cx.ws, &e, cx.arity)?),
            Some(Kind::Forest) => {
                let f = expr::forest(cx.ws, &e)?;
                writeln!(text, "{key}={e}: {} edges, {} vertices, pass", f.edge_count(), f.vertex_count()).unwrap();
            }
            Some(Kind::Simplex) | None => {
                let s = expr::simplex(cx.ws, raw)?;
                writeln!(text, "{key}={raw}: dimension {}, pass", s.dimension()).unwrap();
            }
        }
    }
    writeln!(text, "verdict: {}", if passed { "pass" } else { "fail" }).unwrap();
    Ok(Body::verdict(text, passed))
}

pub fn sqcup(cx: &Context) -> Result<Body> {
    let k = cx.expr("K")?;
    let o = expr::operad(cx.ws, &Expr { head: "sqcup".into(), args: vec![k.clone()] }, cx.arity)?;
    let name = object_name(&format!("sqcup({k})"));
    Ok(Body::constructed(operad_summary(&o, cx.arity), cx.operad_object(&name, &o)?))
}

pub fn gamma_star(cx: &Context) -> Result<Body> {
    let (c, pi) = gamma_star_truncated(cx.arity);
    let mut text = category_summary(&c);
    let base = &pi.target;
    let mut counts = vec![0usize; base.object_count()];
    for x in c.objects() {
        counts[pi.objects[x]] += 1;
    }
    for (n, k) in counts.iter().enumerate() {
        writeln!(text, "fiber {}: {k} objects", base.object_name(n)).unwrap();
    }
    Ok(Body::constructed(text, cx.category_object("gamma_star", &c)))
}

pub fn diagram_operad(cx: &Context) -> Result<Body> {
    let (k, o) = (cx.expr("K")?, cx.expr("O")?);
    let e = Expr { head: "diag".into(), args: vec![k, o] };
    let d = expr::operad(cx.ws, &e, cx.arity)?;
    Ok(Body::constructed(operad_summary(&d, cx.arity), cx.operad_object(&object_name(&e.to_string()), &d)?))
}

pub fn pullback_com(cx: &Context) -> Result<Body> {
    let (a, b) = (cx.expr("A")?, cx.expr("B")?);
    let e = Expr { head: "pull".into(), args: vec![a, b] };
    let p = expr::operad(cx.ws, &e, cx.arity)?;
    Ok(Body::constructed(operad_summary(&p, cx.arity), cx.operad_object(&object_name(&e.to_string()), &p)?))
}

pub fn operator_cat(cx: &Context) -> Result<Body> {
    let (name, x) = expr::operators(cx.ws, &cx.expr("O")?, cx.arity)?;
    let mut text = category_summary(&x.total);
    writeln!(text, "marked: {}", x.marked.iter().filter(|&&m| m).count()).unwrap();
    Ok(Body::constructed(text, cx.category_object(&object_name(&format!("operators({name})")), &x.total)))
}

pub fn fibrous(cx: &Context) -> Result<Body> {
    let (name, x) = expr::operators(cx.ws, &cx.expr("X")?, cx.arity)?;
    let r = fibrous_check(&x);
    Ok(Body::verdict(format!("operators: {name}\n{r}"), r.passed()))
}

pub fn iso(cx: &Context) -> Result<Body> {
    let (a, b) = (cx.expr("A")?, cx.expr("B")?);
    let kinds = (kind_of(cx.ws, &a), kind_of(cx.ws, &b));
    match kinds {
        (Some(Kind::Category), Some(Kind::Category)) => {
            let (c, d) = (expr::category(cx.ws, &a)?, expr::category(cx.ws, &b)?);
            let found = category_iso(&c, &d, cx.budget)?;
            let mut text = String::from("kind: category\n");
            match &found {
                Some((f, _)) => {
                    text.push_str("verdict: pass\n");
                    for x in c.objects() {
                        writeln!(text, "object: {} -> {}", c.object_name(x), d.object_name(f.objects[x])).unwrap();
                    }
                    for g in c.arrows().filter(|&g| !c.is_identity(g)) {
                        writeln!(text, "arrow: {} -> {}", c.arrow_name(g), d.arrow_name(f.arrows[g])).unwrap();
                    }
                }
                None => text.push_str("verdict: fail\nwitness: exhaustive search found no isomorphism\n"),
            }
            Ok(Body::verdict(text, found.is_some()))
        }
        (Some(Kind::Operad), Some(Kind::Operad)) => {
            let (o1, o2) = (expr::operad(cx.ws, &a, cx.arity)?, expr::operad(cx.ws, &b, cx.arity)?);
            let found = operad_iso(&o1, &o2, cx.arity, cx.budget)?;
            let mut text = String::from("kind: operad\n");
            match &found {
                Some(w) => write!(text, "verdict: pass\n{w}").unwrap(),
                None => writeln!(
                    text,
                    "verdict: fail\nwitness: exhaustive search found no isomorphism up to arity {}",
                    cx.arity
                )
                .unwrap(),
            }
            Ok(Body::verdict(text, found.is_some()))
        }
        _ => Err(Error::Usage(format!("iso compares two categories or two operads, not `{a}` and `{b}`"))),
    }
}

pub fn alg(cx: &Context) -> Result<Body> {
    let (o, c) = (cx.operad("O")?, cx.operad("C")?);
    let a = alg_category(&o, &c, cx.arity, cx.budget)?;
    let r = inert_functor_bijection_check(&o, &c, cx.arity, cx.budget)?;
    let text = format!("{}{r}", category_summary(a.category()));
    Ok(Body::verdict(text, r.holds()))
}

/// A composite `p ∘ (q, 1, ..., 1)` of the operad that has another
/// operation of the same signature, redirected to that operation. Composites
/// with a non-nullary `q` come first, then lower total arity, then the
/// enumeration order.
fn corrupt(d: &SetOperad, bound: usize) -> Option<(SetOperad, String)> {
    let ops = d.all_operations(bound);
    let mut candidates = Vec::new();
    for p in ops.iter().filter(|p| !d.is_unit(p) && p.arity() > 0) {
        for q in ops.iter().filter(|q| !d.is_unit(q) && q.output == p.inputs[0] && p.arity() + q.arity() <= bound + 1) {
            candidates.push((q.arity() == 0, p.arity() + q.arity(), candidates.len(), p, q));
        }
    }
    candidates.sort_by_key(|c| (c.0, c.1, c.2));
    for (_, _, _, p, q) in candidates {
        let mut inner: Vec<Operation> = p.inputs.iter().map(|&x| d.unit(x)).collect();
        inner[0] = q.clone();
        let Some(r) = d.compose(p, &inner) else { continue };
        let Some(other) = d.operations(&r.inputs, r.output).into_iter().find(|x| *x != r) else { continue };
        let what = format!("{} o1 {} := {} (was {})", d.describe(p), d.describe(q), d.describe(&other), d.describe(&r));
        let corrupted = Corrupted { inner: d.clone(), outer: p.clone(), inners: inner, result: other.label };
        return Some((SetOperad::new(corrupted), what));
    }
    None
}

pub fn universal(cx: &Context) -> Result<Body> {
    let (k, o, c) = (cx.category("K")?, cx.operad("O")?, cx.operad("C")?);
    let mut d = crate::operad::diagram_operad(&k, &o);
    let mut text = String::new();
    if cx.inv.corrupt {
        let (bad, what) = corrupt(&d, cx.arity)
            .ok_or_else(|| Error::Usage("the diagram operad has no composite that can be redirected".into()))?;
        writeln!(text, "corruption: {what}").unwrap();
        d = bad;
    }
    let r = universal_property_check_on(&d, &k, &o, &c, cx.arity, cx.budget)?;
    write!(text, "{r}").unwrap();
    Ok(Body::verdict(text, r.passed()))
}

pub fn omega_cmd(cx: &Context) -> Result<Body> {
    if let Ok(raw) = cx.raw("S") {
        let s = expr::simplex(cx.ws, raw)?;
        let f = omega(&s);
        let text = format!("simplex: {s}\nedges: {}\nvertices: {}\n", f.edge_count(), f.vertex_count());
        return Ok(Body::constructed(text, cx.forest_object("omega", &f)));
    }
    let dim = match cx.inv.arg("D") {
        Some(d) => d.parse().map_err(|_| Error::Usage(format!("D={d} is not a dimension")))?,
        None => 3,
    };
    let r = omega_functoriality_check(dim, cx.arity)?;
    Ok(Body::verdict(r.to_string(), r.passed()))
}

pub fn phi_hom_cmd(cx: &Context) -> Result<Body> {
    let (f, g) = (cx.forest("F")?, cx.forest("G")?);
    let homs = phi_hom(&f, &g, cx.budget)?;
    let mut text = format!("morphisms: {}\n", homs.len());
    for (i, m) in homs.iter().enumerate() {
        writeln!(text, "morphism {}: {}", i + 1, m.describe()).unwrap();
    }
    Ok(Body::verdict(text, true))
}
