//! Argument handling, output formats, exit codes and the golden corpus runner.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use super::grammar::GermFile;
use super::pipeline::{analyze_file, verify, Report, Settings};
use crate::error::{Error, Result};
use crate::invariants::Conjecture;

pub const LIMITS_ENV: &str = "FRONTAL_KERNEL_LIMITS";

pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const SYNTAX: i32 = 2;
    pub const PRECONDITION: i32 = 3;
    pub const RESOURCE: i32 = 4;
    pub const CONJECTURE_VIOLATED: i32 = 5;
    pub const INCONCLUSIVE: i32 = 6;
    pub const GOLDEN_MISMATCH: i32 = 7;
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => exit::IO,
        Error::Syntax { .. } | Error::Undeclared { .. } | Error::Arity { .. } => exit::SYNTAX,
        Error::Precondition(_) | Error::Division(_) | Error::RingMismatch(_) => exit::PRECONDITION,
        Error::ResourceLimit(_) => exit::RESOURCE,
        Error::ConjectureViolation(_) => exit::CONJECTURE_VIOLATED,
        Error::Inconclusive(_) => exit::INCONCLUSIVE,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Pretty,
    Machine,
}

/// Resource limits; also accepted from the `FRONTAL_KERNEL_LIMITS` environment variable.
#[derive(Clone, Debug, Default, Args)]
pub struct LimitArgs {
    /// Maximal number of critical pairs in one basis computation.
    #[arg(long, global = true)]
    pub max_pairs: Option<usize>,
    /// Maximal degree of intermediate terms.
    #[arg(long, global = true)]
    pub max_degree: Option<u64>,
    /// Jet order for Nash lifts (default: exact division, then automatic jets).
    #[arg(long, global = true)]
    pub jet_order: Option<u32>,
    /// Parameter values tried for Siersma's count.
    #[arg(long, global = true)]
    pub param_trials: Option<u32>,
}

impl LimitArgs {
    fn or(self, other: LimitArgs) -> LimitArgs {
        LimitArgs {
            max_pairs: self.max_pairs.or(other.max_pairs),
            max_degree: self.max_degree.or(other.max_degree),
            jet_order: self.jet_order.or(other.jet_order),
            param_trials: self.param_trials.or(other.param_trials),
        }
    }

    fn apply(&self, mut s: Settings) -> Settings {
        if let Some(v) = self.max_pairs {
            s.limits.max_pairs = v;
        }
        if let Some(v) = self.max_degree {
            s.limits.max_degree = v;
        }
        if self.jet_order.is_some() {
            s.jet_order = self.jet_order;
        }
        if let Some(v) = self.param_trials {
            s.param_trials = v;
        }
        s
    }
}

#[derive(Parser)]
#[command(no_binary_name = true)]
struct EnvLimits {
    #[command(flatten)]
    limits: LimitArgs,
}

/// Parse the limit flags held in `FRONTAL_KERNEL_LIMITS`, e.g. `--max-pairs 5000 --jet-order=12`.
pub fn parse_env_limits(text: &str) -> Result<LimitArgs> {
    EnvLimits::try_parse_from(text.split_whitespace())
        .map(|e| e.limits)
        .map_err(|e| Error::Syntax { line: 1, col: 1, msg: format!("{LIMITS_ENV}: {}", e.kind()) })
}

/// Settings from flags, then the environment, then defaults.
pub fn settings(flags: &LimitArgs, env: Option<&str>) -> Result<Settings> {
    let env = match env {
        Some(text) => parse_env_limits(text)?,
        None => LimitArgs::default(),
    };
    Ok(flags.clone().or(env).apply(Settings::default()))
}

#[derive(Parser)]
#[command(name = "frontal-kernel", version, about = "Frontality, Nash lifts and frontal invariants of map germs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    #[command(flatten)]
    pub limits: LimitArgs,
}

#[derive(Subcommand)]
pub enum Command {
    /// Parse a germ file and print it back in normal form.
    Check { file: PathBuf },
    /// Run the `analyze` statements of a germ file.
    Analyze { file: PathBuf },
    /// Compare the frontal Milnor number with the frontal codimension for each unfolding.
    Verify { file: PathBuf },
    /// Run every `*.germ` file in a directory and compare with `*.golden.json`.
    Corpus {
        #[arg(long, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))]
        dir: PathBuf,
        /// Rewrite the golden files instead of comparing.
        #[arg(long)]
        update: bool,
    },
}

/// Machine-readable document for one input file.
#[derive(Serialize)]
pub struct FileReport {
    pub format: String,
    pub command: String,
    pub file: String,
    pub reports: Vec<Report>,
}

impl FileReport {
    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            pretty_report(&mut out, r);
        }
        out
    }
}

fn pretty_report(out: &mut String, r: &Report) {
    let branches: Vec<String> = r.map.iter().map(|b| format!("({})", b.join(", "))).collect();
    let _ = writeln!(out, "{}: ({}) -> {}", r.name, r.source.join(", "), branches.join(" | "));
    if let Some(fr) = &r.frontality {
        for (i, b) in fr.branches.iter().enumerate() {
            let gens: Vec<String> = b.ramification.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "  R(f) branch {}   <{}>", i + 1, gens.join(", "));
        }
    }
    if let Some(h) = &r.halted {
        let _ = writeln!(out, "  halted           {h}");
    }
    for (i, n) in r.nash.iter().enumerate() {
        let lam: Vec<String> = n.lambda.iter().map(|p| p.to_string()).collect();
        let mu: Vec<String> = n.mu.iter().map(|p| p.to_string()).collect();
        if lam.is_empty() {
            let _ = writeln!(out, "  Nash lift {}      mu = ({})", i + 1, mu.join(", "));
        } else {
            let _ = writeln!(out, "  Nash lift {}      lambda = ({}), mu = ({})", i + 1, lam.join(", "), mu.join(", "));
        }
    }
    if let Some(g) = &r.image_equation {
        let _ = writeln!(out, "  image            {g} = 0");
    }
    let _ = write!(out, "{}", r.invariants);
    if let Some(gf) = &r.generating_family {
        let h: Vec<String> = gf.h.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "  generating family ({})", h.join(", "));
        let _ = writeln!(out, "    discriminant = image {}", gf.equals_image);
        let _ = writeln!(out, "    critical set is a graph {}", gf.critical_set_is_graph);
    }
    if let Some(d) = &r.log_derivations {
        let _ = writeln!(out, "  Der(-log X)      {} generators", d.generators.len());
        for g in &d.generators {
            let _ = writeln!(out, "    ({})", g.join(", "));
        }
        if let Some(det) = &d.determinant {
            let _ = writeln!(out, "    det = {det}");
        }
    }
    if let Some(u) = &r.unfolding {
        let _ = writeln!(out, "  unfolding {} with params {}", u.name, u.params.join(", "));
        if let Some(g) = &u.good_equation {
            let aug = if g.augmented { " (augmented)" } else { "" };
            let _ = writeln!(out, "    G = {}{aug}", g.equation);
        }
        if let Some(s) = &u.siersma {
            let trials: Vec<String> = s.trials.iter().map(|(t, d)| format!("t={t}: {d}")).collect();
            let _ = writeln!(out, "    Siersma count {} ({})", s.value, trials.join(", "));
        }
    }
    for c in &r.cross_checks {
        let tag = if c.agree { "agree" } else { "DISAGREE" };
        let _ = writeln!(out, "  check {:<10} {} vs {}: {tag}", c.quantity, c.left, c.right);
    }
    for a in &r.provenance.assumptions {
        let _ = writeln!(out, "  assumes: {a}");
    }
}

/// Exit status implied by the conjecture outcomes of a set of reports.
pub fn conjecture_status(reports: &[Report]) -> i32 {
    let mut code = exit::OK;
    for r in reports {
        match &r.invariants.conjecture {
            Some(Conjecture::Violated { .. }) => return exit::CONJECTURE_VIOLATED,
            Some(Conjecture::Inconclusive { .. }) => code = exit::INCONCLUSIVE,
            _ => {}
        }
    }
    code
}

fn file_label(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn load(path: &Path) -> Result<GermFile> {
    GermFile::parse(&std::fs::read_to_string(path)?)
}

/// Reports for a corpus entry: the file's analyses, then verification when it
/// declares unfoldings.
pub fn corpus_document(path: &Path, settings: &Settings) -> Result<FileReport> {
    let file = load(path)?;
    let mut reports = analyze_file(&file, settings)?;
    let has_unfolding = file.statements.iter().any(|s| matches!(s, super::grammar::Statement::Unfold { .. }));
    if has_unfolding {
        reports.extend(verify(&file, settings)?);
    }
    Ok(FileReport { format: "frontal-kernel v1".into(), command: "corpus".into(), file: file_label(path), reports })
}

fn golden_path(germ: &Path) -> PathBuf {
    germ.with_extension("golden.json")
}

/// Germ files of a corpus directory in name order.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "germ"))
        .collect();
    files.sort();
    Ok(files)
}

fn run_corpus(dir: &Path, update: bool, settings: &Settings, out: &mut String) -> Result<i32> {
    let mut code = exit::OK;
    for path in corpus_files(dir)? {
        let doc = corpus_document(&path, settings)?.to_machine();
        let golden = golden_path(&path);
        let label = file_label(&path);
        if update {
            std::fs::write(&golden, &doc)?;
            let _ = writeln!(out, "wrote {}", file_label(&golden));
            continue;
        }
        match std::fs::read_to_string(&golden) {
            Ok(expected) if expected == doc => {
                let _ = writeln!(out, "ok       {label}");
            }
            Ok(_) => {
                let _ = writeln!(out, "DIFFERS  {label}");
                code = exit::GOLDEN_MISMATCH;
            }
            Err(_) => {
                let _ = writeln!(out, "MISSING  {}", file_label(&golden));
                code = exit::GOLDEN_MISMATCH;
            }
        }
    }
    Ok(code)
}

/// Run a parsed command line; returns the text to print and the exit code.
pub fn execute(cli: &Cli, env_limits: Option<&str>) -> Result<(String, i32)> {
    let settings = settings(&cli.limits, env_limits)?;
    let (command, path) = match &cli.command {
        Command::Check { file } => {
            let parsed = load(file)?;
            let text = match cli.format {
                Format::Pretty => parsed.to_string(),
                Format::Machine => {
                    let statements: Vec<String> = parsed.statements.iter().map(|s| s.to_string()).collect();
                    let mut s = serde_json::to_string_pretty(&serde_json::json!({
                        "format": "frontal-kernel v1",
                        "command": "check",
                        "file": file_label(file),
                        "statements": statements,
                    }))
                    .expect("json");
                    s.push('\n');
                    s
                }
            };
            return Ok((text, exit::OK));
        }
        Command::Corpus { dir, update } => {
            let mut out = String::new();
            let code = run_corpus(dir, *update, &settings, &mut out)?;
            return Ok((out, code));
        }
        Command::Analyze { file } => ("analyze", file),
        Command::Verify { file } => ("verify", file),
    };
    let parsed = load(path)?;
    let reports = if command == "analyze" { analyze_file(&parsed, &settings)? } else { verify(&parsed, &settings)? };
    let code = if command == "verify" { conjecture_status(&reports) } else { exit::OK };
    let doc = FileReport { format: "frontal-kernel v1".into(), command: command.into(), file: file_label(path), reports };
    let text = match cli.format {
        Format::Pretty => doc.to_pretty(),
        Format::Machine => doc.to_machine(),
    };
    Ok((text, code))
}

/// Entry point for the binary: parses `args`, prints the result and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::SYNTAX } else { exit::OK };
        }
    };
    let env = std::env::var(LIMITS_ENV).ok();
    match execute(&cli, env.as_deref()) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_limits_syntax() {
        let l = parse_env_limits("--max-pairs 5000 --jet-order=12").unwrap();
        assert_eq!(l.max_pairs, Some(5000));
        assert_eq!(l.jet_order, Some(12));
        assert!(parse_env_limits("--bogus 1").is_err());
    }

    #[test]
    fn flags_override_environment() {
        let flags = LimitArgs { max_pairs: Some(10), ..Default::default() };
        let s = settings(&flags, Some("--max-pairs 99 --param-trials 3")).unwrap();
        assert_eq!(s.limits.max_pairs, 10);
        assert_eq!(s.param_trials, 3);
        assert_eq!(s.limits.max_degree, Settings::default().limits.max_degree);
    }

    #[test]
    fn exit_classes_are_distinct() {
        let errs = [
            Error::Syntax { line: 1, col: 1, msg: String::new() },
            Error::precondition("p"),
            Error::ResourceLimit("r".into()),
            Error::ConjectureViolation("c".into()),
            Error::Inconclusive("i".into()),
        ];
        let mut codes: Vec<i32> = errs.iter().map(exit_code).collect();
        codes.dedup();
        assert_eq!(codes, vec![2, 3, 4, 5, 6]);
    }
}
