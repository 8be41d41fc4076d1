//! The line-oriented workspace format: lexer, parser and writers.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write;

use crate::dendroid::{Forest, LevelForest};
use crate::error::{Error, Result};
use crate::fincat::{validate_category, ArrowId, FinCategory, RawCategory};
use crate::finstar::PointedMap;
use crate::operad::{permutations, Color, SetOperad, TableOperad};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Punct(char),
    Arrow,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    column: usize,
}

fn is_bare(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '*' | '#' | '+')
}

/// Tokens of one line and the column just past its last non-comment character.
fn lex(line: usize, text: &str, offset: usize) -> Result<(Vec<Token>, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut end = offset + 1;
    let err = |column: usize, message: String| Error::Parse { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let column = offset + i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '%' {
            break;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err(err(column, "unterminated quoted name".into())),
                    Some('"') => break,
                    Some('\\') => {
                        s.push(*chars.get(i + 1).ok_or_else(|| err(offset + i + 1, "dangling escape".into()))?);
                        i += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(Token { tok: Tok::Name(s), column });
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token { tok: Tok::Arrow, column });
            i += 2;
        } else if matches!(c, ':' | ',' | '(' | ')' | '[' | ']' | '=' | '.') {
            out.push(Token { tok: Tok::Punct(c), column });
            i += 1;
        } else if is_bare(c) {
            let start = i;
            while i < chars.len() && is_bare(chars[i]) {
                i += 1;
            }
            out.push(Token { tok: Tok::Name(chars[start..i].iter().collect()), column });
        } else {
            return Err(err(column, format!("unexpected character `{c}`")));
        }
        if !c.is_whitespace() {
            end = offset + i + 1;
        }
    }
    Ok((out, end))
}

/// A cursor over the tokens of one line.
struct Line {
    number: usize,
    tokens: Vec<Token>,
    pos: usize,
    end_column: usize,
}

impl Line {
    fn lex(number: usize, text: &str, offset: usize) -> Result<Line> {
        let (tokens, end_column) = lex(number, text, offset)?;
        Ok(Line { number, tokens, pos: 0, end_column })
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let column = self.tokens.get(self.pos).map_or(self.end_column, |t| t.column);
        Error::Parse { line: self.number, column, message: message.into() }
    }

    fn name(&mut self) -> Result<String> {
        match self.tokens.get(self.pos) {
            Some(Token { tok: Tok::Name(s), .. }) => {
                self.pos += 1;
                Ok(s.clone())
            }
            _ => Err(self.err("expected a name")),
        }
    }

    fn number(&mut self) -> Result<usize> {
        let s = self.name()?;
        s.parse().map_err(|_| {
            self.pos -= 1;
            self.err(format!("expected a number, found `{s}`"))
        })
    }

    fn punct(&mut self, c: char) -> Result<()> {
        match self.tokens.get(self.pos) {
            Some(Token { tok: Tok::Punct(p), .. }) if *p == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{c}`"))),
        }
    }

    fn arrow(&mut self) -> Result<()> {
        match self.tokens.get(self.pos) {
            Some(Token { tok: Tok::Arrow, .. }) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err("expected `->`")),
        }
    }

    fn peek_punct(&self, c: char) -> bool {
        matches!(self.tokens.get(self.pos), Some(Token { tok: Tok::Punct(p), .. }) if *p == c)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    /// `open item (, item)* close`, possibly empty.
    fn list<T>(&mut self, open: char, close: char, mut item: impl FnMut(&mut Line) -> Result<T>) -> Result<Vec<T>> {
        self.punct(open)?;
        let mut out = Vec::new();
        if self.peek_punct(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.peek_punct(close) {
                self.pos += 1;
                return Ok(out);
            }
            self.punct(',')?;
        }
    }

    fn names(&mut self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        while !self.at_end() {
            out.push(self.name()?);
        }
        if out.is_empty() {
            return Err(self.err("expected at least one name"));
        }
        Ok(out)
    }
}

/// Global settings that a workspace file may carry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub arity: Option<usize>,
    pub budget: Option<u64>,
}

/// Named definitions read from workspace files.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub settings: Settings,
    pub categories: Vec<(String, FinCategory)>,
    pub operads: Vec<(String, SetOperad)>,
    pub forests: Vec<(String, Forest)>,
    pub simplices: Vec<(String, LevelForest)>,
}

impl Workspace {
    pub fn is_empty(&self) -> bool {
        self.categories.is_empty() && self.operads.is_empty() && self.forests.is_empty() && self.simplices.is_empty()
    }

    pub fn category(&self, name: &str) -> Option<&FinCategory> {
        self.categories.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn operad(&self, name: &str) -> Option<&SetOperad> {
        self.operads.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    pub fn forest(&self, name: &str) -> Option<&Forest> {
        self.forests.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn simplex(&self, name: &str) -> Option<&LevelForest> {
        self.simplices.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    fn names(&self) -> impl Iterator<Item = &str> {
        self.categories
            .iter()
            .map(|(n, _)| n.as_str())
            .chain(self.operads.iter().map(|(n, _)| n.as_str()))
            .chain(self.forests.iter().map(|(n, _)| n.as_str()))
            .chain(self.simplices.iter().map(|(n, _)| n.as_str()))
    }

    /// Adds the definitions of `other`; later settings win.
    pub fn merge(&mut self, other: Workspace) -> Result<()> {
        let taken: HashSet<String> = self.names().map(str::to_string).collect();
        if let Some(dup) = other.names().find(|n| taken.contains(*n)) {
            return Err(Error::DuplicateName { line: 0, name: dup.to_string() });
        }
        self.settings.arity = other.settings.arity.or(self.settings.arity);
        self.settings.budget = other.settings.budget.or(self.settings.budget);
        self.categories.extend(other.categories);
        self.operads.extend(other.operads);
        self.forests.extend(other.forests);
        self.simplices.extend(other.simplices);
        Ok(())
    }
}

#[derive(Default)]
struct CategoryDraft {
    objects: Vec<String>,
    arrows: Vec<(String, String, String)>,
    identities: Vec<(String, String)>,
    composites: Vec<(String, String, String, usize)>,
}

#[derive(Default)]
struct OperadDraft {
    colors: Vec<String>,
    ops: Vec<(String, Vec<Color>, Color)>,
    units: HashMap<Color, String>,
    sym: Vec<(String, Vec<usize>, String)>,
    comp: Vec<(String, Vec<String>, String)>,
}

#[derive(Default)]
struct ForestDraft {
    edges: Vec<String>,
    vertices: Vec<(String, Vec<String>, String)>,
}

#[derive(Default)]
struct SimplexDraft {
    start: Option<usize>,
    maps: Vec<PointedMap>,
}

enum Draft {
    Category(CategoryDraft),
    Operad(OperadDraft),
    Forest(ForestDraft),
    Simplex(SimplexDraft),
}

struct Section {
    name: String,
    line: usize,
    draft: Draft,
}

fn unresolved(line: usize, name: &str) -> Error {
    Error::UnresolvedName { line, name: name.to_string() }
}

fn duplicate(line: usize, name: &str) -> Error {
    Error::DuplicateName { line, name: name.to_string() }
}

impl CategoryDraft {
    fn line(&mut self, l: &mut Line, keyword: &str) -> Result<()> {
        let n = l.number;
        let has_object = |d: &CategoryDraft, x: &str| d.objects.iter().any(|o| o == x);
        let has_arrow = |d: &CategoryDraft, f: &str| d.arrows.iter().any(|a| a.0 == f);
        match keyword {
            "obj" => {
                for x in l.names()? {
                    if has_object(self, &x) {
                        return Err(duplicate(n, &x));
                    }
                    self.objects.push(x);
                }
            }
            "arr" => {
                let f = l.name()?;
                l.punct(':')?;
                let a = l.name()?;
                l.arrow()?;
                let b = l.name()?;
                l.end()?;
                for x in [&a, &b] {
                    if !has_object(self, x) {
                        return Err(unresolved(n, x));
                    }
                }
                if has_arrow(self, &f) {
                    return Err(duplicate(n, &f));
                }
                self.arrows.push((f, a, b));
            }
            "id" => {
                let x = l.name()?;
                l.punct('=')?;
                let f = l.name()?;
                l.end()?;
                if !has_object(self, &x) {
                    return Err(unresolved(n, &x));
                }
                if has_arrow(self, &f) || self.identities.iter().any(|(o, _)| *o == x) {
                    return Err(duplicate(n, &f));
                }
                self.arrows.push((f.clone(), x.clone(), x.clone()));
                self.identities.push((x, f));
            }
            "cmp" => {
                let g = l.name()?;
                l.punct('.')?;
                let f = l.name()?;
                l.punct('=')?;
                let h = l.name()?;
                l.end()?;
                for a in [&g, &f, &h] {
                    self.implicit_identity(a);
                    if !has_arrow(self, a) {
                        return Err(unresolved(n, a));
                    }
                }
                if let Some(prev) = self.composites.iter().find(|c| c.0 == g && c.1 == f) {
                    if prev.2 != h {
                        return Err(Error::Parse {
                            line: n,
                            column: 1,
                            message: format!("`{g}.{f}` was declared as `{}` on line {}", prev.2, prev.3),
                        });
                    }
                    return Ok(());
                }
                self.composites.push((g, f, h, n));
            }
            _ => return Err(Error::Parse { line: n, column: 1, message: format!("unknown category entry `{keyword}`") }),
        }
        Ok(())
    }

    /// `id_x` names the identity of `x` unless `id x = ...` was given.
    fn implicit_identity(&mut self, name: &str) {
        let Some(x) = name.strip_prefix("id_") else { return };
        let declared = self.identities.iter().any(|(o, _)| o == x) || self.arrows.iter().any(|a| a.0 == name);
        if !declared && self.objects.iter().any(|o| o == x) {
            self.arrows.push((name.to_string(), x.to_string(), x.to_string()));
            self.identities.push((x.to_string(), name.to_string()));
        }
    }

    fn finish(mut self, header: usize) -> Result<FinCategory> {
        for x in self.objects.clone() {
            if !self.identities.iter().any(|(o, _)| *o == x) {
                let id = format!("id_{x}");
                if self.arrows.iter().any(|a| a.0 == id) {
                    return Err(duplicate(header, &id));
                }
                self.arrows.push((id.clone(), x.clone(), x.clone()));
                self.identities.push((x, id));
            }
        }
        let raw = RawCategory {
            objects: self.objects,
            arrows: self.arrows,
            identities: self.identities,
            composites: self.composites.iter().map(|(g, f, h, _)| (g.clone(), f.clone(), h.clone())).collect(),
        };
        let raw = complete_composites(&raw, header)?;
        validate_category(&raw)
    }
}

/// Fills in composites missing from a partial table: first by
/// associativity from known factorizations, then where the hom-set has a
/// single arrow. Fails when two derivations disagree or a composite stays
/// undetermined.
pub fn complete_composites(raw: &RawCategory, line: usize) -> Result<RawCategory> {
    let idx: HashMap<&str, ArrowId> = raw.arrows.iter().enumerate().map(|(i, a)| (a.0.as_str(), i)).collect();
    let obj: HashMap<&str, usize> = raw.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
    let src: Vec<usize> = raw.arrows.iter().map(|a| obj[a.1.as_str()]).collect();
    let tgt: Vec<usize> = raw.arrows.iter().map(|a| obj[a.2.as_str()]).collect();
    let mut is_id = vec![false; raw.arrows.len()];
    for (_, f) in &raw.identities {
        is_id[idx[f.as_str()]] = true;
    }
    let n = raw.arrows.len();
    let mut table: HashMap<(ArrowId, ArrowId), ArrowId> = HashMap::new();
    for (g, f, h) in &raw.composites {
        let key = (idx[g.as_str()], idx[f.as_str()]);
        let h = idx[h.as_str()];
        if let Some(prev) = table.insert(key, h) {
            if prev != h {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: format!("composite {g}.{f} declared as both `{}` and `{}`", raw.arrows[prev].0, raw.arrows[h].0),
                });
            }
        }
    }
    let comp = |t: &HashMap<(ArrowId, ArrowId), ArrowId>, g: ArrowId, f: ArrowId| -> Option<ArrowId> {
        if is_id[f] {
            Some(g)
        } else if is_id[g] {
            Some(f)
        } else {
            t.get(&(g, f)).copied()
        }
    };
    let pairs: Vec<(ArrowId, ArrowId)> = (0..n)
        .flat_map(|g| (0..n).map(move |f| (g, f)))
        .filter(|&(g, f)| tgt[f] == src[g] && !is_id[f] && !is_id[g])
        .collect();
    loop {
        let mut progress = false;
        for &(g, f) in &pairs {
            if table.contains_key(&(g, f)) {
                continue;
            }
            let mut derived = BTreeSet::new();
            for (&(a, b), &c) in &table {
                // f = a∘b: g∘f = (g∘a)∘b
                if c == f {
                    if let Some(ga) = comp(&table, g, a) {
                        derived.extend(comp(&table, ga, b));
                    }
                }
                // g = a∘b: g∘f = a∘(b∘f)
                if c == g {
                    if let Some(bf) = comp(&table, b, f) {
                        derived.extend(comp(&table, a, bf));
                    }
                }
            }
            if derived.len() > 1 {
                let names: Vec<&str> = derived.iter().map(|&h| raw.arrows[h].0.as_str()).collect();
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: format!("composite {}.{} is ambiguous: {}", raw.arrows[g].0, raw.arrows[f].0, names.join(" or ")),
                });
            }
            if let Some(&h) = derived.iter().next() {
                table.insert((g, f), h);
                progress = true;
            }
        }
        if progress {
            continue;
        }
        for &(g, f) in &pairs {
            if table.contains_key(&(g, f)) {
                continue;
            }
            let hom: Vec<ArrowId> = (0..n).filter(|&h| src[h] == src[f] && tgt[h] == tgt[g]).collect();
            if hom.len() == 1 {
                table.insert((g, f), hom[0]);
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    if let Some(&(g, f)) = pairs.iter().find(|p| !table.contains_key(p)) {
        return Err(Error::Parse {
            line,
            column: 1,
            message: format!("composite {}.{} is not determined", raw.arrows[g].0, raw.arrows[f].0),
        });
    }
    let mut out = raw.clone();
    let mut entries: Vec<_> = table.into_iter().collect();
    entries.sort();
    out.composites =
        entries.into_iter().map(|((g, f), h)| (raw.arrows[g].0.clone(), raw.arrows[f].0.clone(), raw.arrows[h].0.clone())).collect();
    Ok(out)
}

impl OperadDraft {
    fn color(&self, line: usize, name: &str) -> Result<Color> {
        self.colors.iter().position(|c| c == name).ok_or_else(|| unresolved(line, name))
    }

    fn has_op(&self, name: &str) -> bool {
        self.ops.iter().any(|o| o.0 == name)
    }

    fn line(&mut self, l: &mut Line, keyword: &str) -> Result<()> {
        let n = l.number;
        match keyword {
            "color" => {
                for c in l.names()? {
                    if self.colors.contains(&c) {
                        return Err(duplicate(n, &c));
                    }
                    self.colors.push(c);
                }
            }
            "op" => {
                let p = l.name()?;
                l.punct(':')?;
                let inputs = l.list('(', ')', Line::name)?;
                l.arrow()?;
                let output = l.name()?;
                l.end()?;
                if self.has_op(&p) {
                    return Err(duplicate(n, &p));
                }
                let inputs = inputs.iter().map(|c| self.color(n, c)).collect::<Result<Vec<_>>>()?;
                let output = self.color(n, &output)?;
                self.ops.push((p, inputs, output));
            }
            "unit" => {
                let c = l.name()?;
                l.punct('=')?;
                let u = l.name()?;
                l.end()?;
                let c = self.color(n, &c)?;
                if !self.has_op(&u) {
                    self.ops.push((u.clone(), vec![c], c));
                }
                if self.units.insert(c, u).is_some() {
                    return Err(duplicate(n, &self.colors[c]));
                }
            }
            "sym" => {
                let p = l.name()?;
                let perm = l.list('[', ']', Line::number)?;
                l.punct('=')?;
                let q = l.name()?;
                l.end()?;
                for x in [&p, &q] {
                    if !self.has_op(x) {
                        return Err(unresolved(n, x));
                    }
                }
                if perm.contains(&0) {
                    return Err(Error::Parse { line: n, column: 1, message: "permutations are 1-based".into() });
                }
                self.sym.push((p, perm.into_iter().map(|i| i - 1).collect(), q));
            }
            "cmp" => {
                let p = l.name()?;
                let qs = l.list('(', ')', Line::name)?;
                l.punct('=')?;
                let r = l.name()?;
                l.end()?;
                for x in std::iter::once(&p).chain(&qs).chain(std::iter::once(&r)) {
                    if !self.has_op(x) {
                        return Err(unresolved(n, x));
                    }
                }
                if let Some(prev) = self.comp.iter().find(|c| c.0 == p && c.1 == qs) {
                    if prev.2 != r {
                        return Err(Error::Parse {
                            line: n,
                            column: 1,
                            message: format!("`{p}({})` was already declared as `{}`", qs.join(","), prev.2),
                        });
                    }
                    return Ok(());
                }
                self.comp.push((p, qs, r));
            }
            _ => return Err(Error::Parse { line: n, column: 1, message: format!("unknown operad entry `{keyword}`") }),
        }
        Ok(())
    }

    fn finish(self, name: &str, header: usize) -> Result<SetOperad> {
        let mut units = Vec::with_capacity(self.colors.len());
        for (c, color) in self.colors.iter().enumerate() {
            units.push(self.units.get(&c).cloned().ok_or_else(|| Error::Parse {
                line: header,
                column: 1,
                message: format!("color `{color}` has no unit"),
            })?);
        }
        let t = TableOperad::new(name, self.colors, self.ops, units, self.sym, self.comp)?;
        Ok(SetOperad::new(t))
    }
}

impl ForestDraft {
    fn line(&mut self, l: &mut Line, keyword: &str) -> Result<()> {
        let n = l.number;
        match keyword {
            "edge" => {
                for e in l.names()? {
                    if self.edges.contains(&e) {
                        return Err(duplicate(n, &e));
                    }
                    self.edges.push(e);
                }
            }
            "vertex" => {
                let v = l.name()?;
                l.punct(':')?;
                let inputs = l.list('[', ']', Line::name)?;
                l.arrow()?;
                let output = l.name()?;
                l.end()?;
                for e in inputs.iter().chain(std::iter::once(&output)) {
                    if !self.edges.contains(e) {
                        return Err(unresolved(n, e));
                    }
                }
                if self.vertices.iter().any(|x| x.0 == v) {
                    return Err(duplicate(n, &v));
                }
                self.vertices.push((v, inputs, output));
            }
            _ => return Err(Error::Parse { line: n, column: 1, message: format!("unknown forest entry `{keyword}`") }),
        }
        Ok(())
    }
}

impl SimplexDraft {
    fn line(&mut self, number: usize, keyword: &str, rest: &str) -> Result<()> {
        let bad = |message: String| Error::Parse { line: number, column: 1, message };
        match keyword {
            "point" => {
                let k = rest.trim().parse().map_err(|_| bad(format!("bad arity `{}`", rest.trim())))?;
                if self.start.is_some() || !self.maps.is_empty() {
                    return Err(bad("a point must be the only entry of a simplex".into()));
                }
                self.start = Some(k);
            }
            "map" => {
                let m: PointedMap = rest.trim().parse().map_err(|e| bad(format!("{e}")))?;
                self.maps.push(m);
            }
            _ => return Err(bad(format!("unknown simplex entry `{keyword}`"))),
        }
        Ok(())
    }

    fn finish(self, header: usize) -> Result<LevelForest> {
        match (self.start, self.maps.first()) {
            (Some(k), None) => Ok(LevelForest::point(k)),
            (None, Some(m)) => LevelForest::new(m.source(), self.maps),
            _ => Err(Error::Parse { line: header, column: 1, message: "empty simplex".into() }),
        }
    }
}

fn close(section: Section, ws: &mut Workspace) -> Result<()> {
    let Section { name, line, draft } = section;
    match draft {
        Draft::Category(d) => ws.categories.push((name, d.finish(line)?)),
        Draft::Operad(d) => {
            let o = d.finish(&name, line)?;
            ws.operads.push((name, o));
        }
        Draft::Forest(d) => ws.forests.push((name, Forest::new(d.edges, d.vertices)?)),
        Draft::Simplex(d) => ws.simplices.push((name, d.finish(line)?)),
    }
    Ok(())
}

/// Parses a workspace file. Lines are `keyword arguments`; `%` starts a
/// comment. Names must be declared before use.
pub fn parse_workspace(text: &str) -> Result<Workspace> {
    let mut ws = Workspace::default();
    let mut names: HashSet<String> = HashSet::new();
    let mut current: Option<Section> = None;
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let content = raw;
        let trimmed = content.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let keyword: String = trimmed.chars().take_while(|c| !c.is_whitespace()).collect();
        let rest = &trimmed[keyword.len()..];
        let offset = content.chars().count() - trimmed.chars().count() + keyword.chars().count();
        let header = match keyword.as_str() {
            "category" => Some(Draft::Category(CategoryDraft::default())),
            "operad" => Some(Draft::Operad(OperadDraft::default())),
            "forest" => Some(Draft::Forest(ForestDraft::default())),
            "simplex" => Some(Draft::Simplex(SimplexDraft::default())),
            _ => None,
        };
        if let Some(draft) = header {
            if let Some(s) = current.take() {
                close(s, &mut ws)?;
            }
            let mut l = Line::lex(number, rest, offset)?;
            let name = l.name()?;
            l.end()?;
            if !names.insert(name.clone()) {
                return Err(duplicate(number, &name));
            }
            current = Some(Section { name, line: number, draft });
            continue;
        }
        if keyword == "set" {
            let mut l = Line::lex(number, rest, offset)?;
            let key = l.name()?;
            let value = l.number()?;
            l.end()?;
            match key.as_str() {
                "arity" => ws.settings.arity = Some(value),
                "budget" => ws.settings.budget = Some(value as u64),
                _ => return Err(Error::Parse { line: number, column: offset + 2, message: format!("unknown setting `{key}`") }),
            }
            continue;
        }
        let Some(section) = current.as_mut() else {
            return Err(Error::Parse { line: number, column: 1, message: format!("`{keyword}` outside a section") });
        };
        if let Draft::Simplex(d) = &mut section.draft {
            d.line(number, &keyword, rest.split('%').next().unwrap_or(""))?;
            continue;
        }
        let mut l = Line::lex(number, rest, offset)?;
        match &mut section.draft {
            Draft::Category(d) => d.line(&mut l, &keyword)?,
            Draft::Operad(d) => d.line(&mut l, &keyword)?,
            Draft::Forest(d) => d.line(&mut l, &keyword)?,
            Draft::Simplex(_) => unreachable!(),
        }
    }
    if let Some(s) = current.take() {
        close(s, &mut ws)?;
    }
    Ok(ws)
}

fn q(name: &str) -> String {
    let bare = !name.is_empty() && name.chars().all(is_bare);
    if bare {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// Objects and arrows are written in lexicographic order of their names.
pub fn write_category(name: &str, c: &FinCategory) -> String {
    let mut objects: Vec<_> = c.objects().collect();
    objects.sort_by(|&x, &y| c.object_name(x).cmp(c.object_name(y)));
    let mut arrows: Vec<_> = c.arrows().filter(|&f| !c.is_identity(f)).collect();
    arrows.sort_by(|&f, &g| c.arrow_name(f).cmp(c.arrow_name(g)));
    let mut out = String::new();
    writeln!(out, "category {}", q(name)).unwrap();
    if !objects.is_empty() {
        let names: Vec<String> = objects.iter().map(|&x| q(c.object_name(x))).collect();
        writeln!(out, "obj {}", names.join(" ")).unwrap();
    }
    for &x in &objects {
        let id = c.identity(x);
        if c.arrow_name(id) != format!("id_{}", c.object_name(x)) {
            writeln!(out, "id {} = {}", q(c.object_name(x)), q(c.arrow_name(id))).unwrap();
        }
    }
    for &f in &arrows {
        let (a, b) = (c.object_name(c.source(f)), c.object_name(c.target(f)));
        writeln!(out, "arr {}: {} -> {}", q(c.arrow_name(f)), q(a), q(b)).unwrap();
    }
    for &g in &arrows {
        for &f in &arrows {
            if let Some(h) = c.compose(g, f) {
                writeln!(out, "cmp {}.{} = {}", q(c.arrow_name(g)), q(c.arrow_name(f)), q(c.arrow_name(h))).unwrap();
            }
        }
    }
    out
}

/// Writes every operation of arity at most `bound`, the non-identity
/// symmetry entries, and the partial composites that stay within the
/// bound; the reader rebuilds full composites from these.
pub fn write_operad(name: &str, o: &SetOperad, bound: usize) -> String {
    let ops = o.all_operations(bound);
    let mut names: HashMap<&crate::operad::Operation, String> = HashMap::new();
    let mut taken: HashSet<String> = HashSet::new();
    for p in &ops {
        let base = p.label.to_string();
        let mut candidate = base.clone();
        let mut k = 1;
        while taken.contains(&candidate) {
            k += 1;
            candidate = format!("{base}#{k}");
        }
        taken.insert(candidate.clone());
        names.insert(p, candidate);
    }
    let mut out = String::new();
    writeln!(out, "operad {}", q(name)).unwrap();
    let colors: Vec<String> = o.colors().iter().map(|c| q(c)).collect();
    writeln!(out, "color {}", colors.join(" ")).unwrap();
    for p in &ops {
        let ins: Vec<String> = p.inputs.iter().map(|&c| q(o.color_name(c))).collect();
        writeln!(out, "op {}: ({}) -> {}", q(&names[p]), ins.join(", "), q(o.color_name(p.output))).unwrap();
    }
    for c in 0..o.color_count() {
        writeln!(out, "unit {} = {}", q(o.color_name(c)), q(&names[&o.unit(c)])).unwrap();
    }
    for p in &ops {
        for sigma in permutations(p.arity()).into_iter().skip(1) {
            if let Some(r) = o.act(p, &sigma).and_then(|r| names.get(&r)) {
                let perm: Vec<String> = sigma.iter().map(|i| (i + 1).to_string()).collect();
                writeln!(out, "sym {} [{}] = {}", q(&names[p]), perm.join(","), q(r)).unwrap();
            }
        }
    }
    for p in ops.iter().filter(|p| !o.is_unit(p)) {
        for r in ops.iter().filter(|r| !o.is_unit(r) && p.arity() + r.arity() <= bound + 1) {
            for i in 0..p.arity() {
                if p.inputs[i] != r.output {
                    continue;
                }
                if let Some(res) = o.partial(p, i, r).and_then(|x| names.get(&x)) {
                    let slots: Vec<String> = (0..p.arity())
                        .map(|j| if j == i { q(&names[r]) } else { q(&names[&o.unit(p.inputs[j])]) })
                        .collect();
                    writeln!(out, "cmp {}({}) = {}", q(&names[p]), slots.join(", "), q(res)).unwrap();
                }
            }
        }
    }
    out
}

pub fn write_forest(name: &str, f: &Forest) -> String {
    let mut out = String::new();
    writeln!(out, "forest {}", q(name)).unwrap();
    let edges: Vec<String> = (0..f.edge_count()).map(|e| q(f.edge_name(e))).collect();
    if !edges.is_empty() {
        writeln!(out, "edge {}", edges.join(" ")).unwrap();
    }
    for v in f.vertices() {
        let ins: Vec<String> = v.inputs.iter().map(|&e| q(f.edge_name(e))).collect();
        writeln!(out, "vertex {}: [{}] -> {}", q(&v.name), ins.join(", "), q(f.edge_name(v.output))).unwrap();
    }
    out
}

pub fn write_simplex(name: &str, s: &LevelForest) -> String {
    let mut out = String::new();
    writeln!(out, "simplex {}", q(name)).unwrap();
    if s.dimension() == 0 {
        writeln!(out, "point {}", s.arity(0)).unwrap();
    }
    for m in s.maps() {
        writeln!(out, "map {m}").unwrap();
    }
    out
}

/// Writes a whole workspace back in the input format.
pub fn write_workspace(ws: &Workspace, bound: usize) -> String {
    let mut parts = Vec::new();
    let mut settings = String::new();
    if let Some(a) = ws.settings.arity {
        writeln!(settings, "set arity {a}").unwrap();
    }
    if let Some(b) = ws.settings.budget {
        writeln!(settings, "set budget {b}").unwrap();
    }
    if !settings.is_empty() {
        parts.push(settings);
    }
    parts.extend(ws.categories.iter().map(|(n, c)| write_category(n, c)));
    parts.extend(ws.operads.iter().map(|(n, o)| write_operad(n, o, bound)));
    parts.extend(ws.forests.iter().map(|(n, f)| write_forest(n, f)));
    parts.extend(ws.simplices.iter().map(|(n, s)| write_simplex(n, s)));
    parts.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{category_iso, chain, walking_iso, DEFAULT_BUDGET};

    #[test]
    fn empty_file() {
        let ws = parse_workspace("").unwrap();
        assert!(ws.is_empty());
        assert!(parse_workspace("% only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn walking_arrow_file() {
        let ws = parse_workspace("category A\nobj a b\narr f: a -> b\n").unwrap();
        let c = ws.category("A").unwrap();
        assert_eq!((c.object_count(), c.arrow_count()), (2, 3));
    }

    #[test]
    fn partial_tables_are_completed() {
        let text = "category I2\nobj a b c\narr f: a -> b\narr g: b -> c\narr h: a -> c\n";
        let c = parse_workspace(text).unwrap().categories.remove(0).1;
        assert!(category_iso(&c, &chain(2), DEFAULT_BUDGET).unwrap().is_some());
        let iso = "category J\nobj a b\narr f: a -> b\narr g: b -> a\ncmp g.f = id_a\ncmp f.g = id_b\n";
        let c = parse_workspace(iso).unwrap().categories.remove(0).1;
        assert!(category_iso(&c, &walking_iso(), DEFAULT_BUDGET).unwrap().is_some());
        let open = "category E\nobj a\narr e: a -> a\n";
        assert!(matches!(parse_workspace(open), Err(Error::Parse { .. })));
    }

    #[test]
    fn errors_carry_positions() {
        let text = "operad O\ncolor x\nop p: (x, y) -> x\n";
        assert_eq!(parse_workspace(text).unwrap_err(), Error::UnresolvedName { line: 3, name: "y".into() });
        let text = "category A\nobj a a\n";
        assert_eq!(parse_workspace(text).unwrap_err(), Error::DuplicateName { line: 2, name: "a".into() });
        let text = "category A\nobj a\narr f a -> a\n";
        assert_eq!(parse_workspace(text).unwrap_err(), Error::Parse { line: 3, column: 7, message: "expected `:`".into() });
        let text = "category A\nobj a\narr f: a => a\n";
        assert!(matches!(parse_workspace(text), Err(Error::Parse { line: 3, column: 11, .. })));
        assert!(matches!(parse_workspace("obj a\n"), Err(Error::Parse { line: 1, .. })));
        let text = "category A\nobj a\narr f: a ->   % no target\n";
        assert_eq!(parse_workspace(text).unwrap_err(), Error::Parse { line: 3, column: 12, message: "expected a name".into() });
        let text = "forest F\nedge a\nforest F\nedge b\n";
        assert_eq!(parse_workspace(text).unwrap_err(), Error::DuplicateName { line: 3, name: "F".into() });
    }

    #[test]
    fn settings_and_simplices() {
        let text = "set arity 2\nset budget 500\nsimplex S\nmap 2->1:[1,1]\nmap 1->1:[1]\nsimplex P\npoint 1\n";
        let ws = parse_workspace(text).unwrap();
        assert_eq!(ws.settings, Settings { arity: Some(2), budget: Some(500) });
        assert_eq!(ws.simplex("S").unwrap().dimension(), 2);
        assert_eq!(ws.simplex("P").unwrap().dimension(), 0);
    }

    #[test]
    fn quoted_names_round_trip() {
        let c = crate::finstar::fin_star_truncated(1);
        let text = write_category("F", &c);
        let back = parse_workspace(&text).unwrap().categories.remove(0).1;
        assert_eq!(write_category("F", &back), text);
        let text = "forest F % comment\nedge \"50%\" \"a \\\"b\\\"\" % comment\n";
        let ws = parse_workspace(text).unwrap();
        assert_eq!(write_forest("F", ws.forest("F").unwrap()), "forest F\nedge \"50%\" \"a \\\"b\\\"\"\n");
    }
}
