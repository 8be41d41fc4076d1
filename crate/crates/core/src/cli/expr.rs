//! Command-line expressions naming categories, operads, forests, simplices
//! and categories of operators. Workspace names shadow builtins.

use std::fmt;

use super::text::Workspace;
use crate::dendroid::{corolla, free_operad, linear_tree, unit_tree, Forest, LevelForest};
use crate::error::{Error, Result};
use crate::fincat::{chain, discrete, terminal, walking_arrow, walking_iso, FinCategory};
use crate::finstar::fin_star_truncated;
use crate::operad::{
    diagram_operad, mutation_corpus, operator_category, product_operad, pullback_over_com, sample_operad, sqcup,
    sqcup_fiber, terminal_com, trivial_operad, OperadMorphism, OperatorCategory, SetOperad,
};

/// `head` or `head(arg, ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub head: String,
    pub args: Vec<Expr>,
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.head)?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(Expr::to_string).collect();
            write!(f, "({})", args.join(","))?;
        }
        Ok(())
    }
}

fn usage(message: String) -> Error {
    Error::Usage(message)
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let e = Self::parse_at(&chars, &mut pos)?;
        skip_ws(&chars, &mut pos);
        if pos != chars.len() {
            return Err(usage(format!("unexpected `{}` in expression `{text}`", chars[pos])));
        }
        Ok(e)
    }

    fn parse_at(chars: &[char], pos: &mut usize) -> Result<Expr> {
        skip_ws(chars, pos);
        let start = *pos;
        while *pos < chars.len() && !matches!(chars[*pos], '(' | ')' | ',') && !chars[*pos].is_whitespace() {
            *pos += 1;
        }
        let head: String = chars[start..*pos].iter().collect();
        if head.is_empty() {
            return Err(usage("empty expression".into()));
        }
        skip_ws(chars, pos);
        let mut args = Vec::new();
        if chars.get(*pos) == Some(&'(') {
            *pos += 1;
            loop {
                args.push(Self::parse_at(chars, pos)?);
                skip_ws(chars, pos);
                match chars.get(*pos) {
                    Some(',') => *pos += 1,
                    Some(')') => {
                        *pos += 1;
                        break;
                    }
                    _ => return Err(usage(format!("unclosed argument list after `{head}`"))),
                }
            }
        }
        Ok(Expr { head, args })
    }

    fn arity(&self, n: usize) -> Result<&[Expr]> {
        if self.args.len() == n {
            Ok(&self.args)
        } else {
            Err(usage(format!("`{}` takes {n} argument(s), got {}", self.head, self.args.len())))
        }
    }

    fn number(&self) -> Result<usize> {
        if !self.args.is_empty() {
            return Err(usage(format!("expected a number, found `{self}`")));
        }
        self.head.parse().map_err(|_| usage(format!("expected a number, found `{}`", self.head)))
    }

    fn leaf(&self) -> Option<&str> {
        self.args.is_empty().then_some(self.head.as_str())
    }
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn suffix_number(head: &str, prefix: &str) -> Option<usize> {
    head.strip_prefix(prefix).filter(|r| !r.is_empty()).and_then(|r| r.parse().ok())
}

/// The kinds of value an expression can denote.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Category,
    Operad,
    Forest,
    Simplex,
}

/// The kind `e` denotes, if it is a workspace name or builtin.
pub fn kind_of(ws: &Workspace, e: &Expr) -> Option<Kind> {
    if let Some(name) = e.leaf() {
        if ws.category(name).is_some() {
            return Some(Kind::Category);
        }
        if ws.operad(name).is_some() {
            return Some(Kind::Operad);
        }
        if ws.forest(name).is_some() {
            return Some(Kind::Forest);
        }
        if ws.simplex(name).is_some() {
            return Some(Kind::Simplex);
        }
    }
    let h = e.head.as_str();
    let category = matches!(h, "terminal" | "iso" | "arrow" | "finstar" | "fiber")
        || suffix_number(h, "I").is_some()
        || suffix_number(h, "disc").is_some();
    let operad = matches!(h, "Com" | "triv" | "sample" | "sqcup" | "diag" | "pull" | "prod" | "free");
    let forest = matches!(h, "eta" | "corolla" | "linear");
    if category {
        Some(Kind::Category)
    } else if operad {
        Some(Kind::Operad)
    } else if forest {
        Some(Kind::Forest)
    } else {
        None
    }
}

pub fn category(ws: &Workspace, e: &Expr) -> Result<FinCategory> {
    if let Some(c) = e.leaf().and_then(|n| ws.category(n)) {
        return Ok(c.clone());
    }
    let h = e.head.as_str();
    if let Some(n) = suffix_number(h, "I").filter(|_| e.args.is_empty()) {
        return Ok(chain(n));
    }
    if let Some(n) = suffix_number(h, "disc").filter(|_| e.args.is_empty()) {
        return Ok(discrete(n));
    }
    match h {
        "terminal" => e.arity(0).map(|_| terminal()),
        "iso" => e.arity(0).map(|_| walking_iso()),
        "arrow" => e.arity(0).map(|_| walking_arrow()),
        "finstar" => Ok(fin_star_truncated(e.arity(1)?[0].number()?)),
        "fiber" => {
            let a = e.arity(2)?;
            Ok(sqcup_fiber(&category(ws, &a[0])?, a[1].number()?))
        }
        _ => Err(usage(format!("`{e}` is not a category"))),
    }
}

pub fn operad(ws: &Workspace, e: &Expr, bound: usize) -> Result<SetOperad> {
    if let Some(o) = e.leaf().and_then(|n| ws.operad(n)) {
        return Ok(o.clone());
    }
    match e.head.as_str() {
        "Com" => e.arity(0).map(|_| terminal_com()),
        "triv" => e.arity(0).map(|_| trivial_operad()),
        "sample" => e.arity(0).map(|_| sample_operad()),
        "sqcup" => Ok(sqcup(&category(ws, &e.arity(1)?[0])?)),
        "diag" => {
            let a = e.arity(2)?;
            Ok(diagram_operad(&category(ws, &a[0])?, &operad(ws, &a[1], bound)?))
        }
        "pull" => {
            let a = e.arity(2)?;
            let (l, r) = (operad(ws, &a[0], bound)?, operad(ws, &a[1], bound)?);
            pullback_over_com(&OperadMorphism::to_com(&l, bound), &OperadMorphism::to_com(&r, bound))
        }
        "prod" => {
            let a = e.arity(2)?;
            Ok(product_operad(&operad(ws, &a[0], bound)?, &operad(ws, &a[1], bound)?))
        }
        "free" => Ok(free_operad(&forest(ws, &e.arity(1)?[0])?)),
        _ => Err(usage(format!("`{e}` is not an operad"))),
    }
}

pub fn forest(ws: &Workspace, e: &Expr) -> Result<Forest> {
    if let Some(f) = e.leaf().and_then(|n| ws.forest(n)) {
        return Ok(f.clone());
    }
    match e.head.as_str() {
        "eta" => e.arity(0).map(|_| unit_tree()),
        "corolla" => Ok(corolla(e.arity(1)?[0].number()?)),
        "linear" => Ok(linear_tree(e.arity(1)?[0].number()?)),
        _ => Err(usage(format!("`{e}` is not a forest"))),
    }
}

/// A workspace simplex, or an inline chain such as `2->1:[1,1];1->1:[1]`
/// or `<2>`.
pub fn simplex(ws: &Workspace, text: &str) -> Result<LevelForest> {
    if let Some(s) = ws.simplex(text.trim()) {
        return Ok(s.clone());
    }
    text.parse().map_err(|e| usage(format!("`{text}` is neither a simplex name nor a chain: {e}")))
}

/// `corrupted`, `corrupted(k)` with `k` counted from 1, or
/// `corrupted(name)`, taken from the mutation corpus; anything else is an
/// operad whose category of operators is built at `bound`.
pub fn operators(ws: &Workspace, e: &Expr, bound: usize) -> Result<(String, OperatorCategory)> {
    if e.head == "corrupted" && !e.leaf().is_some_and(|n| ws.operad(n).is_some()) {
        let mut corpus = mutation_corpus();
        let index = match e.args.as_slice() {
            [] => 0,
            [a] => match a.number() {
                Ok(k) if (1..=corpus.len()).contains(&k) => k - 1,
                Ok(k) => return Err(usage(format!("corrupted({k}): the corpus has {} members", corpus.len()))),
                Err(_) => corpus
                    .iter()
                    .position(|(n, _)| *n == a.head)
                    .ok_or_else(|| usage(format!("no corruption named `{}`", a.head)))?,
            },
            _ => return Err(usage("`corrupted` takes at most one argument".into())),
        };
        return Ok(corpus.swap_remove(index));
    }
    let o = operad(ws, e, bound)?;
    Ok((e.to_string(), operator_category(&o, bound)))
}
