//! The `fraccat` command line: load a document, run one kernel operation,
//! print the result as text-format definitions or JSON.
//!
//! Exit codes: 0 ok, 1 invalid input, 2 failed precondition (for example a
//! 2-cell that is not invertible), 3 a coherence law failed.

mod parse;
mod serialize;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

pub use parse::{parse, parse_with, Decl, Document, Item};
pub use serialize::{render, render_all, serialize, Definition, Emitter, MorDef};

use crate::bf_oracle::{in_w, is_essentially_surjective, is_fully_faithful};
use crate::canonical::{from_twocell, to_twocell};
use crate::coherence::{check_law, InstancePool, LAWS};
use crate::error::Error;
use crate::fractions::{
    associator, cells_equivalent, compose_fractions, invert, is_invertible, vcomp, whisker_post, whisker_pre, TwoCell,
};

#[derive(Debug, Parser)]
#[command(name = "fraccat", version, about = "Bicategories of fractions over finite categories")]
pub struct Cli {
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Base name for the declarations of a computed result.
    #[arg(long, global = true, default_value = "result")]
    pub name: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a document.
    Validate { file: PathBuf },
    /// Decide whether a functor is an equivalence.
    InW { file: PathBuf, functor: String },
    /// The composite fraction: FR1 first, then FR2.
    Compose { file: PathBuf, fr1: String, fr2: String },
    /// The vertical composite C2 after C1.
    Vcomp { file: PathBuf, c2: String, c1: String },
    /// The 2-cell CELL whiskered by the fraction FR on the source side.
    WhiskerPre { file: PathBuf, cell: String, fr: String },
    /// The 2-cell CELL whiskered by the fraction FR on the target side.
    WhiskerPost { file: PathBuf, fr: String, cell: String },
    /// The associator H(GF) => (HG)F.
    Assoc { file: PathBuf, h: String, g: String, f: String },
    /// Decide whether two cells define the same 2-cell.
    Equiv { file: PathBuf, c1: String, c2: String },
    /// Decide whether a 2-cell is invertible.
    Invertible { file: PathBuf, cell: String },
    /// The inverse of an invertible 2-cell.
    Invert { file: PathBuf, cell: String },
    /// The almost-canonical triple of a 2-cell and its induced diagram.
    Normalize { file: PathBuf, cell: String },
    /// Run the law checks over the fixture pool.
    Coherence {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Run only this law.
        #[arg(long)]
        law: Option<String>,
    },
}

/// What a command produced.
struct Report {
    command: &'static str,
    text: String,
    fields: Map<String, Value>,
    definitions: Vec<Definition>,
    code: i32,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report { command, text: String::new(), fields: Map::new(), definitions: Vec::new(), code: 0 }
    }

    fn field(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), v.into());
        self
    }

    fn line(mut self, s: impl AsRef<str>) -> Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.extend(self.fields.clone());
        if !self.definitions.is_empty() {
            m.insert("definitions".into(), serde_json::to_value(&self.definitions).expect("serializable"));
        }
        Value::Object(m)
    }
}

enum Failure {
    Usage(String),
    Kernel(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Kernel(e)
    }
}

fn load(path: &Path) -> Result<Document, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse(&src).map_err(|e| match e {
        Error::Parse { line, col, msg } => Failure::Usage(format!("{}:{line}:{col}: {msg}", path.display())),
        e => Failure::Kernel(e),
    })
}

/// Emits a 2-cell result under `name`.
fn cell_report(command: &'static str, doc: &Document, cell: &TwoCell, name: &str) -> Report {
    let mut e = Emitter::new(doc);
    let n = e.result_cell(&cell.rep, name);
    let mut r = Report::new(command).field("result", n);
    r.text = render_all(&e.defs);
    r.definitions = e.defs;
    r
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let name = cli.name.as_str();
    let report = match &cli.command {
        Command::Validate { file } => {
            let doc = load(file)?;
            let mut r = Report::new("validate").field("valid", true);
            let decls: Vec<Value> =
                doc.decls.iter().map(|d| json!({ "kind": d.item.kind(), "name": d.name })).collect();
            for d in &doc.decls {
                r = r.line(format!("{} {}", d.item.kind(), d.name));
            }
            r.line(format!("valid: {} declarations", doc.decls.len())).field("declarations", decls)
        }
        Command::InW { file, functor } => {
            let doc = load(file)?;
            let f = doc.functor(functor)?;
            let (ff, es, w) = (is_fully_faithful(f), is_essentially_surjective(f), in_w(f));
            Report::new("in-w")
                .field("functor", functor.as_str())
                .field("fully_faithful", ff)
                .field("essentially_surjective", es)
                .field("in_w", w)
                .line(format!("fully faithful: {ff}"))
                .line(format!("essentially surjective: {es}"))
                .line(if w { "in W" } else { "not in W" })
        }
        Command::Compose { file, fr1, fr2 } => {
            let doc = load(file)?;
            let c = compose_fractions(doc.fraction(fr2)?, doc.fraction(fr1)?)?;
            let mut e = Emitter::new(&doc);
            let n = e.result_fraction(&c, name);
            let mut r = Report::new("compose").field("result", n);
            r.text = render_all(&e.defs);
            r.definitions = e.defs;
            r
        }
        Command::Vcomp { file, c2, c1 } => {
            let doc = load(file)?;
            let (a, b) = (TwoCell::from(doc.cell(c2)?.clone()), TwoCell::from(doc.cell(c1)?.clone()));
            cell_report("vcomp", &doc, &vcomp(&a, &b, None)?, name)
        }
        Command::WhiskerPre { file, cell, fr } => {
            let doc = load(file)?;
            let d = TwoCell::from(doc.cell(cell)?.clone());
            cell_report("whisker-pre", &doc, &whisker_pre(&d, doc.fraction(fr)?, None)?, name)
        }
        Command::WhiskerPost { file, fr, cell } => {
            let doc = load(file)?;
            let g = TwoCell::from(doc.cell(cell)?.clone());
            cell_report("whisker-post", &doc, &whisker_post(doc.fraction(fr)?, &g, None)?, name)
        }
        Command::Assoc { file, h, g, f } => {
            let doc = load(file)?;
            let a = associator(doc.fraction(h)?, doc.fraction(g)?, doc.fraction(f)?, None)?;
            cell_report("assoc", &doc, &a, name)
        }
        Command::Equiv { file, c1, c2 } => {
            let doc = load(file)?;
            let eq = cells_equivalent(doc.cell(c1)?, doc.cell(c2)?)?;
            Report::new("equiv").field("equivalent", eq).line(if eq { "equivalent" } else { "not equivalent" })
        }
        Command::Invertible { file, cell } => {
            let doc = load(file)?;
            let inv = is_invertible(&TwoCell::from(doc.cell(cell)?.clone()))?;
            Report::new("invertible").field("invertible", inv).line(if inv { "invertible" } else { "not invertible" })
        }
        Command::Invert { file, cell } => {
            let doc = load(file)?;
            let inv = invert(&TwoCell::from(doc.cell(cell)?.clone()))?;
            cell_report("invert", &doc, &inv, name)
        }
        Command::Normalize { file, cell } => {
            let doc = load(file)?;
            let a = from_twocell(&TwoCell::from(doc.cell(cell)?.clone()))?;
            let mut e = Emitter::new(&doc);
            let choice = e.category(&a.choice.apex, &format!("{name}_choice"));
            let p = e.functor(&a.choice.proj_w, &format!("{name}_p"));
            let q = e.functor(&a.choice.proj_f, &format!("{name}_q"));
            let sigma = e.nat(&a.choice.filler, &format!("{name}_sigma"));
            let apex = e.category(a.apex3(), &format!("{name}_apex"));
            let t = e.functor(&a.t, &format!("{name}_t"));
            let phi = e.nat(&a.phi, &format!("{name}_phi"));
            let n = e.result_cell(&to_twocell(&a).rep, name);
            let triple = json!({
                "choice": { "apex": choice, "p": p, "q": q, "filler": sigma },
                "apex": apex,
                "t": t,
                "phi": phi,
            });
            let mut r = Report::new("normalize").field("result", n).field("triple", triple);
            r.text = render_all(&e.defs);
            r.definitions = e.defs;
            r.line(format!("# triple: apex {apex}; t = {t}; phi = {phi}"))
        }
        Command::Coherence { seed, trials, law } => {
            let laws: Vec<&str> = match law {
                Some(l) if LAWS.contains(&l.as_str()) => vec![l.as_str()],
                Some(l) => return Err(Failure::Usage(format!("unknown law `{l}`; known: {}", LAWS.join(", ")))),
                None => LAWS.to_vec(),
            };
            let pool = InstancePool::fixtures(*seed);
            let mut r = Report::new("coherence").field("seed", *seed).field("trials", *trials);
            let mut reports = Vec::new();
            let mut ok = true;
            for l in laws {
                let rep = check_law(&pool, l, *trials).expect("law names are checked above");
                ok &= rep.passed();
                r = r.line(rep.to_string());
                let mut v = serde_json::to_value(&rep).expect("serializable");
                v["passed"] = json!(rep.passed());
                reports.push(v);
            }
            r.code = if ok { 0 } else { 3 };
            r.field("passed", ok).field("reports", reports)
        }
    };
    Ok(report)
}

/// Runs the command line `args` (program name first), writing to `out` and
/// `err`, and returns the exit code.
pub fn run_to<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let _ = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&r.to_json()).expect("serializable"))
            } else {
                write!(out, "{}", r.text)
            };
            r.code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Kernel(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_validation() {
                1
            } else {
                2
            }
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn run() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_to(std::env::args_os(), &mut out, &mut err)
}
