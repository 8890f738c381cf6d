//! The `motivic` command-line front end. [`run`] does all the work and
//! returns the report, so tests drive it in-process.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use motivic::atlas::Atlas;
use motivic::blowup::check_blowup_exactness;
use motivic::complex::find_contraction;
use motivic::format::{self, AtlasFile, ChowFile, ComplexFile, PresentationSpec};
use motivic::motive::{class_of, euler_char, virtual_hodge, virtual_poincare, MotiveClass, VarietyExpr};
use motivic::weight::{weight_table, Coefficients, DescentPresentation, WeightTable};
use motivic::Error;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "motivic", version, about = "Exact motivic invariants and integral weight tables")]
pub struct Cli {
    /// Output style: plain text, or one JSON record per line.
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain, global = true)]
    pub format: OutputFormat,

    /// Extra atoms and named maps (JSON); may be repeated.
    #[arg(long, global = true)]
    pub atlas: Vec<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Records,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Class in the Grothendieck ring of a variety file or `demo:NAME`.
    Class { input: String },
    /// Virtual Poincaré polynomial.
    Betti { input: String },
    /// Virtual Hodge polynomial.
    Hodge { input: String },
    /// Compactly supported Euler characteristic.
    Euler { input: String },
    /// Weight spectral sequence table of a presentation file or `demo:NAME`.
    Weights {
        input: String,
        /// Z, Q or Z/m with m >= 2.
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Exactness of the blow-up sequences for a Chow file or `demo:NAME`.
    BlowupCheck { input: String },
    /// Contracting homotopy of a complex file, or the obstruction.
    Contract { input: String },
    /// Lists the demos, or summarizes one.
    Demo { name: Option<String> },
}

/// Exit status and the text written to stdout and stderr.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failures that reach the user: exit 2 for parse errors, 1 otherwise.
#[derive(Debug)]
struct Failure {
    error: Error,
    context: Option<String>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, context: None }
    }
}

impl Failure {
    fn code(&self) -> i32 {
        if self.error.is_parse() {
            2
        } else {
            1
        }
    }

    fn message(&self) -> String {
        match &self.context {
            Some(c) => format!("{c}: {}", self.error),
            None => self.error.to_string(),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Accumulates result lines in the chosen style.
struct Report {
    format: OutputFormat,
    out: String,
    failed: bool,
}

impl Report {
    fn line(&mut self, plain: impl AsRef<str>, record: Value) {
        match self.format {
            OutputFormat::Plain => writeln!(self.out, "{}", plain.as_ref()),
            OutputFormat::Records => writeln!(self.out, "{record}"),
        }
        .expect("writing to a string");
    }

    /// A result line that marks the run as failed (exit status 1); its
    /// record carries `"error": true`.
    fn failure(&mut self, plain: impl AsRef<str>, mut record: Value) {
        self.failed = true;
        record["error"] = Value::Bool(true);
        self.line(plain, record);
    }
}

fn read(path: &str) -> Run<String> {
    fs::read_to_string(Path::new(path)).map_err(|e| Failure {
        error: Error::Validation(format!("cannot read input: {e}")),
        context: Some(path.to_string()),
    })
}

fn in_file<T>(path: &str, r: motivic::Result<T>) -> Run<T> {
    r.map_err(|error| Failure { error, context: Some(path.to_string()) })
}

fn load_atlas(paths: &[String]) -> Run<Atlas> {
    let mut atlas = Atlas::new();
    for p in paths {
        let text = read(p)?;
        let file: AtlasFile = in_file(p, format::parse(&text))?;
        in_file(p, file.load_into(&mut atlas))?;
    }
    Ok(atlas)
}

fn demo_name(input: &str) -> Option<&str> {
    input.strip_prefix("demo:")
}

fn variety(input: &str, atlas: &Atlas) -> Run<VarietyExpr> {
    let mut e = match demo_name(input) {
        Some(name) => format::demo_expr(name)?,
        None => in_file(input, format::parse::<VarietyExpr>(&read(input)?))?,
    };
    // Atoms without atlas data stay symbolic; their dimensions are taken
    // as declared.
    let mut resolved = e.clone();
    match resolved.resolve_dims(&|name| atlas.atom(name).map(|r| r.dim)) {
        Ok(()) => e = resolved,
        Err(Error::UnknownAtom(_)) => {}
        Err(error) => return Err(Failure { error, context: Some(input.to_string()) }),
    }
    in_file(input, e.dimension())?;
    Ok(e)
}

fn class(input: &str, atlas: &Atlas) -> Run<MotiveClass> {
    let e = variety(input, atlas)?;
    Ok(in_file(input, class_of(&e))?)
}

fn presentation(input: &str, atlas: &Atlas) -> Run<DescentPresentation> {
    match demo_name(input) {
        Some(name) => Ok(format::demo_presentation(name, atlas)?),
        None => {
            let spec: PresentationSpec = in_file(input, format::parse(&read(input)?))?;
            in_file(input, spec.build(atlas))
        }
    }
}

fn weights(report: &mut Report, w: &DescentPresentation, coeff: Coefficients) {
    report.line(w.to_string(), json!({"record": "presentation", "columns": w.to_string(), "dim": w.dim()}));
    let t = weight_table(w, coeff);
    for line in t.lines() {
        let record = record_for(&t, &line);
        report.line(&line, record);
    }
}

/// The record matching one plain line of a weight table.
fn record_for(t: &WeightTable, line: &str) -> Value {
    let k = t.coefficients;
    if let Some(rest) = line.strip_prefix("E2^{") {
        let (idx, group) = rest.split_once("} = ").expect("table line shape");
        let (i, n) = idx.split_once(',').expect("table line shape");
        return json!({"record": "e2", "i": i.parse::<i32>().ok(), "n": n.parse::<i32>().ok(), "group": group});
    }
    if let Some(rest) = line.strip_prefix("grW_") {
        let (n, rest) = rest.split_once(" H^").expect("table line shape");
        let (deg, group) = rest.split_once("_c = ").expect("table line shape");
        return json!({"record": "graded", "weight": n.parse::<i32>().ok(), "degree": deg.parse::<i32>().ok(), "group": group});
    }
    if let Some(rest) = line.strip_prefix("gr H^") {
        let (deg, group) = rest.split_once("_c = ").expect("table line shape");
        return json!({"record": "associated_graded", "degree": deg.parse::<i32>().ok(), "group": group});
    }
    if line == "E2 only" {
        return json!({"record": "e2_only"});
    }
    json!({"record": "coefficients", "coefficients": k.to_string(), "dim": t.dim})
}

fn execute(cli: &Cli, report: &mut Report) -> Run<()> {
    let atlas = load_atlas(&cli.atlas)?;
    match &cli.command {
        Command::Class { input } => {
            let c = class(input, &atlas)?;
            report.line(c.to_string(), json!({"record": "class", "class": c.to_string(), "terms": c.to_terms()}));
        }
        Command::Betti { input } => {
            let p = in_file(input, virtual_poincare(&class(input, &atlas)?, &atlas))?;
            let coeffs: Vec<Value> = p.terms().map(|(e, c)| json!({"degree": e, "value": c.to_string()})).collect();
            report.line(p.to_string(), json!({"record": "betti", "poly": p.to_string(), "terms": coeffs}));
        }
        Command::Hodge { input } => {
            let p = in_file(input, virtual_hodge(&class(input, &atlas)?, &atlas))?;
            let coeffs: Vec<Value> =
                p.terms().map(|((a, b), c)| json!({"p": a, "q": b, "value": c.to_string()})).collect();
            report.line(p.to_string(), json!({"record": "hodge", "poly": p.to_string(), "terms": coeffs}));
        }
        Command::Euler { input } => {
            let chi = in_file(input, euler_char(&class(input, &atlas)?, &atlas))?;
            report.line(chi.to_string(), json!({"record": "euler", "value": chi.to_string()}));
        }
        Command::Weights { input, coeff } => {
            let k: Coefficients = coeff.parse()?;
            weights(report, &presentation(input, &atlas)?, k);
        }
        Command::BlowupCheck { input } => {
            let data = match demo_name(input) {
                Some(name) => format::demo_chow(name)?,
                None => {
                    let file: ChowFile = in_file(input, format::parse(&read(input)?))?;
                    in_file(input, file.build())?
                }
            };
            for v in check_blowup_exactness(&data) {
                let failures: Vec<Value> = v
                    .failures
                    .iter()
                    .map(|f| json!({"position": format!("{:?}", f.position).to_lowercase(), "defect": f.defect.to_string()}))
                    .collect();
                let sequence = format!("{:?}", v.sequence).to_lowercase();
                let record = json!({"record": "blowup", "p": v.p, "sequence": sequence, "exact": v.is_exact(), "failures": failures});
                if v.is_exact() {
                    report.line(v.to_string(), record);
                } else {
                    report.failure(v.to_string(), record);
                }
            }
        }
        Command::Contract { input } => {
            let file: ComplexFile = in_file(input, format::parse(&read(input)?))?;
            let c = in_file(input, file.build())?;
            match find_contraction(&c) {
                Ok(h) => {
                    debug_assert!(h.verify(&c));
                    report.line("contractible: dh + hd = id verified", json!({"record": "contractible", "verified": h.verify(&c)}));
                    for (i, hi) in h.components() {
                        for (n, m) in hi.support() {
                            let rows: Vec<Vec<String>> = (0..m.matrix().rows())
                                .map(|r| m.matrix().row(r).iter().map(ToString::to_string).collect())
                                .collect();
                            let plain = format!("h^{i} degree {n}: {}", m.matrix().to_string().trim_end().replace('\n', " "));
                            report.line(plain, json!({"record": "homotopy", "column": i, "degree": n, "matrix": rows}));
                        }
                    }
                }
                Err(o) => report.failure(
                    format!("not contractible: {o}"),
                    json!({"record": "obstruction", "message": o.to_string()}),
                ),
            }
        }
        Command::Demo { name: None } => {
            for d in format::DEMOS {
                report.line(format!("demo:{d}"), json!({"record": "demo", "name": d, "kind": "presentation"}));
            }
            for d in format::CHOW_DEMOS {
                report.line(format!("demo:{d}"), json!({"record": "demo", "name": d, "kind": "chow"}));
            }
        }
        Command::Demo { name: Some(name) } => {
            let name = demo_name(name).unwrap_or(name);
            let c = class_of(&format::demo_expr(name)?)?;
            report.line(format!("class {c}"), json!({"record": "class", "class": c.to_string(), "terms": c.to_terms()}));
            weights(report, &format::demo_presentation(name, &atlas)?, Coefficients::Integers);
        }
    }
    Ok(())
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Outcome {
    let mut report = Report { format: cli.format, out: String::new(), failed: false };
    match execute(cli, &mut report) {
        Ok(()) => Outcome { code: i32::from(report.failed), stdout: report.out, stderr: String::new() },
        Err(f) => {
            let kind = if f.error.is_parse() { "parse" } else { "validation" };
            let mut out = Outcome { code: f.code(), stdout: report.out, stderr: String::new() };
            match cli.format {
                OutputFormat::Plain => out.stderr = format!("error: {}\n", f.message()),
                OutputFormat::Records => {
                    let _ = writeln!(out.stdout, "{}", json!({"record": "error", "kind": kind, "message": f.message()}));
                }
            }
            out
        }
    }
}

/// Parses arguments (program name first) and runs. Usage errors exit 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub struct Book;
