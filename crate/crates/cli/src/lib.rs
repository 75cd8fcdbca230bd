//! Command-line driver: `check`, `solve`, `agree`, `explain` and `oracle`.
//!
//! Every command writes one document to stdout (plain text, or JSON with
//! `--format structured`) and diagnostics to stderr. Exit codes: 0 success,
//! 1 I/O failure, 2 invalid input, 3 internal invariant violation.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use accord_core::agreement::Agreement;
use accord_core::explain::{render_text, resolve_target, ExplainError, Explanation};
use accord_core::{
    compile_scenario, explain_decision, oracle_extensions, parse_scenario_bytes, rank_extensions,
    AgentId, CompileError, CompileOptions, CompiledScenario, Extension, FrameworkError,
    LiftingPrinciple, ParseError, Semantics, ValueSet, DEFAULT_ORACLE_CAP, MAX_ORACLE_CAP,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Published JSON schema of the structured output.
pub const OUTPUT_SCHEMA: &str = include_str!("../schema/output.schema.json");

#[derive(Debug, Parser)]
#[command(
    name = "accord",
    version,
    about = "Value-based argumentation for stakeholder agreement"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a scenario.
    Check(RunConfig),
    /// List all extensions under a semantics.
    Solve(RunConfig),
    /// Select the extensions reaching maximal agreement.
    Agree(RunConfig),
    /// Explain why a conclusion or argument is selected or rejected.
    Explain(RunConfig),
    /// Compare the solver against brute-force enumeration.
    Oracle(RunConfig),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check(_) => "check",
            Command::Solve(_) => "solve",
            Command::Agree(_) => "agree",
            Command::Explain(_) => "explain",
            Command::Oracle(_) => "oracle",
        }
    }

    pub fn config(&self) -> &RunConfig {
        match self {
            Command::Check(c)
            | Command::Solve(c)
            | Command::Agree(c)
            | Command::Explain(c)
            | Command::Oracle(c) => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunConfig {
    /// Scenario file.
    pub scenario: PathBuf,
    /// grounded, complete or preferred [default: preferred; oracle checks all three]
    #[arg(long)]
    pub semantics: Option<Semantics>,
    /// elitist or democratic.
    #[arg(long, default_value_t = LiftingPrinciple::Democratic)]
    pub principle: LiftingPrinciple,
    /// Literal or argument to explain.
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest framework the oracle will enumerate.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP, value_parser = parse_cap)]
    pub oracle_cap: usize,
}

fn parse_cap(text: &str) -> Result<usize, String> {
    match text.parse::<usize>() {
        Ok(cap) if (1..=MAX_ORACLE_CAP).contains(&cap) => Ok(cap),
        _ => Err(format!(
            "expected an integer between 1 and {MAX_ORACLE_CAP}"
        )),
    }
}

impl RunConfig {
    pub fn semantics(&self) -> Semantics {
        self.semantics.unwrap_or_default()
    }
}

/// A failed invocation and its exit code.
#[derive(Debug)]
pub enum Failure {
    Io(String),
    Invalid(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Io(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Invalid(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<CompileError> for Failure {
    fn from(e: CompileError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<ExplainError> for Failure {
    fn from(e: ExplainError) -> Self {
        match e {
            ExplainError::UnknownTarget { .. } => Failure::Invalid(e.to_string()),
            ExplainError::Framework(FrameworkError::UnknownArgument(_)) => {
                Failure::Invalid(e.to_string())
            }
            _ => Failure::Internal(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub arguments: usize,
    pub attacks: usize,
    pub practical: usize,
    pub stakeholders: usize,
    pub values: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionEntry {
    pub label: String,
    pub members: Extension,
    pub values: ValueSet,
    pub agents: BTreeSet<AgentId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplanationDocument {
    pub document: Explanation,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub semantics: Semantics,
    pub solver: usize,
    pub oracle: usize,
    pub identical: bool,
    pub only_solver: Vec<Extension>,
    pub only_oracle: Vec<Extension>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputDocument {
    pub command: &'static str,
    pub scenario: String,
    pub kind: &'static str,
    pub semantics: Semantics,
    pub principle: LiftingPrinciple,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extensions: Option<Vec<ExtensionEntry>>,
    /// Labels of the maximal extensions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winners: Option<Vec<String>>,
    /// Canonical pick among the winners.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tie: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explanation: Option<ExplanationDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleCheck>>,
    pub timing_ms: f64,
}

fn label(i: usize) -> String {
    format!("E{}", i + 1)
}

/// Reads, parses and compiles a scenario file.
pub fn load(path: &Path) -> Result<CompiledScenario, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    let scenario = parse_scenario_bytes(&bytes)
        .map_err(|e: ParseError| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok(compile_scenario(&scenario, CompileOptions::default())?)
}

fn entries(compiled: &CompiledScenario, agreement: &Agreement) -> Vec<ExtensionEntry> {
    agreement
        .candidates
        .iter()
        .enumerate()
        .map(|(i, c)| ExtensionEntry {
            label: label(i),
            members: c.extension.clone(),
            values: c.values.clone(),
            agents: compiled.vf.extension_agents(&c.extension),
        })
        .collect()
}

fn oracle_checks(
    compiled: &CompiledScenario,
    semantics: &[Semantics],
    cap: usize,
) -> Result<Vec<OracleCheck>, Failure> {
    let framework = compiled.vf.reduce();
    semantics
        .iter()
        .map(|&sem| {
            let solver: BTreeSet<Extension> = framework.extensions(sem).into_iter().collect();
            let oracle: BTreeSet<Extension> = oracle_extensions(framework, sem, cap)
                .map_err(|e| Failure::Invalid(e.to_string()))?
                .into_iter()
                .collect();
            Ok(OracleCheck {
                semantics: sem,
                solver: solver.len(),
                oracle: oracle.len(),
                identical: solver == oracle,
                only_solver: solver.difference(&oracle).cloned().collect(),
                only_oracle: oracle.difference(&solver).cloned().collect(),
            })
        })
        .collect()
}

/// Runs one command and builds its output document.
pub fn execute(command: &Command) -> Result<OutputDocument, Failure> {
    let started = Instant::now();
    let config = command.config();
    let compiled = load(&config.scenario)?;
    let mut doc = OutputDocument {
        command: command.name(),
        scenario: compiled.name.clone(),
        kind: compiled.kind.as_str(),
        semantics: config.semantics(),
        principle: config.principle,
        summary: None,
        extensions: None,
        winners: None,
        selected: None,
        tie: None,
        explanation: None,
        oracle: None,
        timing_ms: 0.0,
    };
    match command {
        Command::Check(_) => {
            let f = compiled.vf.reduce();
            doc.summary = Some(Summary {
                arguments: f.len(),
                attacks: f.attack_count(),
                practical: compiled.vf.practical().len(),
                stakeholders: compiled.vf.agents().len(),
                values: compiled.vf.order().values().len(),
            });
        }
        Command::Solve(_) | Command::Agree(_) | Command::Explain(_) => {
            let agreement = rank_extensions(&compiled.vf, doc.semantics, doc.principle);
            doc.extensions = Some(entries(&compiled, &agreement));
            if !matches!(command, Command::Solve(_)) {
                doc.winners = Some(agreement.winners.iter().map(|&w| label(w)).collect());
                doc.selected = Some(label(agreement.winners[0]));
                doc.tie = Some(agreement.is_tie());
            }
            if let Command::Explain(_) = command {
                let text = config
                    .target
                    .as_deref()
                    .ok_or_else(|| Failure::Invalid("explain requires --target".into()))?;
                let target = resolve_target(&compiled, text)?;
                let x = explain_decision(&compiled, doc.semantics, doc.principle, &target)?;
                doc.explanation = Some(ExplanationDocument {
                    text: render_text(&x),
                    document: x,
                });
            }
        }
        Command::Oracle(_) => {
            let semantics = match config.semantics {
                Some(s) => vec![s],
                None => Semantics::ALL.to_vec(),
            };
            doc.oracle = Some(oracle_checks(&compiled, &semantics, config.oracle_cap)?);
        }
    }
    doc.timing_ms = (started.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    Ok(doc)
}

fn values_text(values: &ValueSet) -> String {
    let names: Vec<&str> = values.iter().map(|v| v.as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

/// Plain-text rendering of an output document.
pub fn render(doc: &OutputDocument) -> String {
    let mut out = String::new();
    if let Some(s) = &doc.summary {
        writeln!(
            out,
            "ok: scenario {} ({}, {} arguments, {} attacks, {} practical)",
            doc.scenario, doc.kind, s.arguments, s.attacks, s.practical
        )
        .unwrap();
    }
    if let Some(exts) = &doc.extensions {
        if doc.explanation.is_none() {
            writeln!(
                out,
                "scenario {}: {} {} extension{}",
                doc.scenario,
                exts.len(),
                doc.semantics,
                if exts.len() == 1 { "" } else { "s" }
            )
            .unwrap();
            let winners = doc.winners.clone().unwrap_or_default();
            for e in exts {
                let mark = if winners.contains(&e.label) { "*" } else { " " };
                writeln!(
                    out,
                    "{mark} {} = {}  values {}",
                    e.label,
                    e.members,
                    values_text(&e.values)
                )
                .unwrap();
            }
        }
    }
    if let (Some(winners), Some(selected), None) = (&doc.winners, &doc.selected, &doc.explanation) {
        writeln!(
            out,
            "maximal agreement ({} principle): {}",
            doc.principle,
            winners.join(", ")
        )
        .unwrap();
        if doc.tie == Some(true) {
            writeln!(out, "tie: {selected} selected by canonical order").unwrap();
        } else {
            writeln!(out, "selected: {selected}").unwrap();
        }
    }
    if let Some(x) = &doc.explanation {
        out.push_str(&x.text);
    }
    if let Some(checks) = &doc.oracle {
        for c in checks {
            if c.identical {
                writeln!(
                    out,
                    "{}: {} extension{}, oracle agrees",
                    c.semantics,
                    c.solver,
                    if c.solver == 1 { "" } else { "s" }
                )
                .unwrap();
            } else {
                writeln!(out, "{}: MISMATCH", c.semantics).unwrap();
                for e in &c.only_solver {
                    writeln!(out, "  solver only: {e}").unwrap();
                }
                for e in &c.only_oracle {
                    writeln!(out, "  oracle only: {e}").unwrap();
                }
            }
        }
    }
    out
}

/// Runs a parsed command line, writing the document and diagnostics, and
/// returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let format = cli.command.config().format;
    let outcome = execute(&cli.command).and_then(|doc| {
        let text = match format {
            Format::Text => render(&doc),
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(&doc)
                    .map_err(|e| Failure::Internal(e.to_string()))?;
                s.push('\n');
                s
            }
        };
        stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string()))?;
        Ok(doc)
    });
    match outcome {
        Ok(doc) => match doc.oracle {
            Some(checks) if checks.iter().any(|c| !c.identical) => {
                let _ = writeln!(stderr, "error: solver and oracle disagree");
                3
            }
            _ => 0,
        },
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message());
            failure.exit_code()
        }
    }
}
