//! Command-line front end: workspace files, expressions and commands.
//!
//! A report starts with `#` header lines echoing the command and the
//! effective settings, followed by `key: value` lines in a fixed order.
//! Exit codes: 0 for a pass or a construction, 1 for a check that failed
//! with a witness, 2 for usage, parse and budget errors.

mod commands;
pub mod expr;
pub mod text;

use std::fmt::Write;
use std::path::PathBuf;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::operad::DEFAULT_ARITY;
use crate::verify::VERIFY_BUDGET;

pub use text::{parse_workspace, write_category, write_forest, write_operad, write_simplex, write_workspace, Workspace};

pub const COMMANDS: [&str; 12] = [
    "validate",
    "sqcup",
    "gamma-star",
    "diagram-operad",
    "pullback-com",
    "operator-cat",
    "fibrous-check",
    "iso",
    "alg",
    "universal-check",
    "omega",
    "phi-hom",
];

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// A parsed command line.
#[derive(Clone, Debug, Default)]
pub struct Invocation {
    pub command: String,
    /// `KEY=EXPR` arguments in the order given.
    pub args: Vec<(String, String)>,
    pub arity: Option<usize>,
    pub budget: Option<u64>,
    pub out: Option<PathBuf>,
    pub dot: bool,
    pub timing: bool,
    pub threads: Option<usize>,
    pub files: Vec<PathBuf>,
    pub corrupt: bool,
}

impl Invocation {
    pub fn new(command: &str, args: &[&str]) -> Result<Invocation> {
        let mut inv = Invocation { command: command.to_string(), ..Invocation::default() };
        for a in args {
            inv.push_arg(a)?;
        }
        Ok(inv)
    }

    pub fn push_arg(&mut self, arg: &str) -> Result<()> {
        let (k, v) = arg.split_once('=').ok_or_else(|| Error::Usage(format!("expected KEY=EXPR, found `{arg}`")))?;
        if self.args.iter().any(|(key, _)| key == k) {
            return Err(Error::Usage(format!("argument {k} given twice")));
        }
        self.args.push((k.to_string(), v.to_string()));
        Ok(())
    }

    pub fn arg(&self, key: &str) -> Option<&str> {
        self.args.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// What a run produced: the report text and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub code: i32,
}

fn default_budget(command: &str) -> u64 {
    match command {
        "iso" | "alg" | "universal-check" | "phi-hom" => VERIFY_BUDGET,
        _ => crate::fincat::DEFAULT_BUDGET,
    }
}

fn header(inv: &Invocation, arity: usize, budget: u64) -> String {
    let mut line = inv.command.clone();
    for (k, v) in &inv.args {
        write!(line, " {k}={v}").unwrap();
    }
    if inv.corrupt {
        line.push_str(" --corrupt");
    }
    let mut out = format!("# command: {line}\n");
    for f in &inv.files {
        writeln!(out, "# file: {}", f.display()).unwrap();
    }
    writeln!(out, "# arity: {arity}").unwrap();
    writeln!(out, "# budget: {budget}").unwrap();
    out
}

fn load(inv: &Invocation) -> Result<Workspace> {
    let mut ws = Workspace::default();
    for f in &inv.files {
        let text = std::fs::read_to_string(f).map_err(|e| Error::Usage(format!("{}: {e}", f.display())))?;
        let parsed = parse_workspace(&text).map_err(|e| Error::Usage(format!("{}: {e}", f.display())))?;
        ws.merge(parsed)?;
    }
    Ok(ws)
}

/// Argument keys each command reads; `validate` takes any key.
fn keys(command: &str) -> Option<&'static [&'static str]> {
    Some(match command {
        "sqcup" => &["K"],
        "gamma-star" => &[],
        "diagram-operad" => &["K", "O"],
        "pullback-com" | "iso" => &["A", "B"],
        "operator-cat" => &["O"],
        "fibrous-check" => &["X"],
        "alg" => &["O", "C"],
        "universal-check" => &["K", "O", "C"],
        "omega" => &["S", "D"],
        "phi-hom" => &["F", "G"],
        _ => return None,
    })
}

fn dispatch(inv: &Invocation, ws: &Workspace, arity: usize, budget: u64) -> Result<commands::Body> {
    if let Some(allowed) = keys(&inv.command) {
        if let Some((k, _)) = inv.args.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            let expected = if allowed.is_empty() { "none".to_string() } else { allowed.join(", ") };
            return Err(Error::Usage(format!("{} does not take argument {k} (expected: {expected})", inv.command)));
        }
    }
    if inv.corrupt && inv.command != "universal-check" {
        return Err(Error::Usage("--corrupt applies to universal-check only".into()));
    }
    let cx = commands::Context { ws, inv, arity, budget };
    match inv.command.as_str() {
        "validate" => commands::validate(&cx),
        "sqcup" => commands::sqcup(&cx),
        "gamma-star" => commands::gamma_star(&cx),
        "diagram-operad" => commands::diagram_operad(&cx),
        "pullback-com" => commands::pullback_com(&cx),
        "operator-cat" => commands::operator_cat(&cx),
        "fibrous-check" => commands::fibrous(&cx),
        "iso" => commands::iso(&cx),
        "alg" => commands::alg(&cx),
        "universal-check" => commands::universal(&cx),
        "omega" => commands::omega_cmd(&cx),
        "phi-hom" => commands::phi_hom_cmd(&cx),
        other => Err(Error::Usage(format!("unknown command `{other}`; expected one of {}", COMMANDS.join(", ")))),
    }
}

fn run_inner(inv: &Invocation) -> Outcome {
    let started = Instant::now();
    let loaded = load(inv);
    let settings = loaded.as_ref().map(|ws| ws.settings.clone()).unwrap_or_default();
    let arity = inv.arity.or(settings.arity).unwrap_or(DEFAULT_ARITY);
    let budget = inv.budget.or(settings.budget).unwrap_or_else(|| default_budget(&inv.command));
    let mut report = header(inv, arity, budget);
    let result = loaded.and_then(|ws| dispatch(inv, &ws, arity, budget));
    let code = match result {
        Ok(body) => {
            report.push_str(&body.text);
            if let Some(object) = body.object {
                match &inv.out {
                    Some(path) => match std::fs::write(path, &object) {
                        Ok(()) => writeln!(report, "written: {}", path.display()).unwrap(),
                        Err(e) => {
                            writeln!(report, "error: {}: {e}", path.display()).unwrap();
                            return Outcome { report, code: EXIT_ERROR };
                        }
                    },
                    None => {
                        report.push('\n');
                        report.push_str(&object);
                    }
                }
            }
            body.code
        }
        Err(e) => {
            writeln!(report, "error: {e}").unwrap();
            EXIT_ERROR
        }
    };
    if inv.timing {
        writeln!(report, "# elapsed-ms: {}", started.elapsed().as_millis()).unwrap();
    }
    Outcome { report, code }
}

/// Runs one command. With `threads` set, internal parallelism runs on a
/// dedicated pool of that size.
pub fn execute(inv: &Invocation) -> Outcome {
    match inv.threads {
        None => run_inner(inv),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run_inner(inv)),
            Err(e) => Outcome { report: format!("error: thread pool: {e}\n"), code: EXIT_ERROR },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(command: &str, args: &[&str]) -> Outcome {
        execute(&Invocation::new(command, args).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run("fibrous-check", &["X=corrupted"]).code, EXIT_FAIL);
        assert_eq!(run("fibrous-check", &["X=Com"]).code, EXIT_PASS);
        assert_eq!(run("sqcup", &["K=I1"]).code, EXIT_PASS);
        assert_eq!(run("frobnicate", &[]).code, EXIT_ERROR);
        assert_eq!(run("sqcup", &["K=Com"]).code, EXIT_ERROR);
        assert_eq!(run("iso", &["A=I1", "B=I2"]).code, EXIT_FAIL);
    }

    #[test]
    fn header_echoes_settings() {
        let mut inv = Invocation::new("omega", &["S=<1>"]).unwrap();
        inv.arity = Some(2);
        let out = execute(&inv);
        assert!(out.report.starts_with("# command: omega S=<1>\n# arity: 2\n# budget: 1000000\n"));
        assert!(out.report.contains("edge \"0.1\""));
    }

    #[test]
    fn budget_errors_exit_two() {
        let mut inv = Invocation::new("iso", &["A=diag(I1,sample)", "B=pull(sqcup(I1),sample)"]).unwrap();
        inv.budget = Some(1);
        assert_eq!(execute(&inv).code, EXIT_ERROR);
    }
}
