//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 when a reproduction
//! report disagrees with the published values (the report is still written).

pub mod reference;
pub mod reports;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::isoclass::{self, classify_actions, deciders, Candidate, IsoError, Profile};
use crate::perms::{enumerate_stabilizer_torsion, PermError, Permutation};
use crate::semidirect::{product, ActionError, ActionFile, ActionHom};
use crate::structure::{rules, StructureReport};
use crate::tables::{CayleyTable, FormatError, Loop, TableError, TableFile};
use reports::{Order20, Order27};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error("{0} needs {1}")]
    Missing(&'static str, &'static str),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Check,
    Build,
    Analyze,
    Iso,
    Enumerate,
    Classify,
    #[value(name = "report-order20")]
    ReportOrder20,
    #[value(name = "report-order27")]
    ReportOrder27,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Build => "build",
            Command::Analyze => "analyze",
            Command::Iso => "iso",
            Command::Enumerate => "enumerate",
            Command::Classify => "classify",
            Command::ReportOrder20 => "report-order20",
            Command::ReportOrder27 => "report-order27",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Loops arising as semidirect products of a loop and a group.
#[derive(Debug, Clone, Parser)]
#[command(name = "semiloop", version)]
pub struct RunConfig {
    pub command: Command,
    /// Order of the normal cyclic factor Z_m.
    #[arg(long = "n")]
    pub n: Option<usize>,
    /// Order of the acting cyclic group Z_n.
    #[arg(long = "h")]
    pub h: Option<usize>,
    /// Image of the generator of Z_n, in cycle notation.
    #[arg(long)]
    pub generator: Option<String>,
    /// Table or action file.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Second table or action file (iso).
    #[arg(long = "in2")]
    pub input2: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Isomorphism decider: backtrack, semidirect or conjugacy.
    #[arg(long, default_value = "backtrack")]
    pub method: String,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            n: None,
            h: None,
            generator: None,
            input: None,
            input2: None,
            out: None,
            format: Format::Text,
            jobs: None,
            method: "backtrack".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Invalid = 1,
    Discrepancy = 2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub report: String,
}

impl Outcome {
    fn ok(report: String) -> Outcome {
        Outcome {
            status: Status::Success,
            report,
        }
    }
}

/// Runs one command. When `out` is set the report is also written there.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let outcome = match config.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| CliError::Pool(e.to_string()))?
            .install(|| dispatch(config))?,
        None => dispatch(config)?,
    };
    if let Some(path) = &config.out {
        std::fs::write(path, &outcome.report).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?;
    }
    Ok(outcome)
}

fn dispatch(c: &RunConfig) -> Result<Outcome, CliError> {
    match c.command {
        Command::Check => check(c),
        Command::Build => build(c),
        Command::Analyze => analyze(c),
        Command::Iso => iso(c),
        Command::Enumerate => enumerate(c),
        Command::Classify => classify(c),
        Command::ReportOrder20 => report20(c),
        Command::ReportOrder27 => report27(c),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

enum Input {
    Table(CayleyTable),
    Action(ActionHom),
}

impl Input {
    fn into_loop(self) -> Result<(Loop, Option<ActionHom>), CliError> {
        match self {
            Input::Table(t) => Ok((Loop::new(t)?, None)),
            Input::Action(a) => Ok((product(&a)?, Some(a))),
        }
    }
}

/// Reads an action file if the content parses as one, else a table file.
fn load(path: &Path) -> Result<Input, CliError> {
    let content = read(path)?;
    if let Ok(file) = serde_json::from_str::<ActionFile>(&content) {
        return Ok(Input::Action(file.into_action()?));
    }
    Ok(Input::Table(TableFile::parse(&content)?))
}

/// The action named by `--in`, or by `--n`, `--h` and `--generator`.
fn action_input(c: &RunConfig) -> Result<Option<Input>, CliError> {
    if let Some(path) = &c.input {
        return load(path).map(Some);
    }
    match (c.n, c.h, &c.generator) {
        (Some(m), Some(h), Some(g)) => {
            let g = Permutation::parse_cycles(g, m)?;
            Ok(Some(Input::Action(ActionHom::cyclic(
                Loop::cyclic(m)?,
                h,
                &g,
            )?)))
        }
        _ => Ok(None),
    }
}

fn need_input(c: &RunConfig) -> Result<Input, CliError> {
    action_input(c)?.ok_or(CliError::Missing(
        c.command.name(),
        "--in or --n, --h and --generator",
    ))
}

fn need_family(c: &RunConfig) -> Result<(usize, usize), CliError> {
    match (c.n, c.h) {
        (Some(m), Some(h)) => Ok((m, h)),
        _ => Err(CliError::Missing(c.command.name(), "--n and --h")),
    }
}

fn check(c: &RunConfig) -> Result<Outcome, CliError> {
    let path = c.input.as_ref().ok_or(CliError::Missing("check", "--in"))?;
    let table = match load(path)? {
        Input::Table(t) => t,
        Input::Action(a) => product(&a)?.table().clone(),
    };
    let flags = table.flags();
    let report = match c.format {
        Format::Json => serde_json::to_string_pretty(&json!({ "order": table.order(), "flags": flags }))
            .expect("flags serialize")
            + "\n",
        Format::Text => format!(
            "order        {}\nquasigroup   {}\nidentity     {}\nloop         {}\nassociative  {}\ncommutative  {}\n",
            table.order(),
            flags.quasigroup,
            flags.has_identity,
            flags.is_loop,
            flags.associative,
            flags.commutative
        ),
    };
    Ok(Outcome {
        status: if flags.is_loop {
            Status::Success
        } else {
            Status::Invalid
        },
        report,
    })
}

fn build(c: &RunConfig) -> Result<Outcome, CliError> {
    let (l, _) = need_input(c)?.into_loop()?;
    Ok(Outcome::ok(match c.format {
        Format::Text => l.table().to_text(),
        Format::Json => l.table().to_json() + "\n",
    }))
}

fn analyze(c: &RunConfig) -> Result<Outcome, CliError> {
    let (l, action) = need_input(c)?.into_loop()?;
    let report = StructureReport::compute(&l);
    let checks = action
        .as_ref()
        .map(|a| rules::cross_check(a, &l))
        .unwrap_or_default();
    let disagree = checks
        .iter()
        .any(|x| matches!(x.outcome, rules::Outcome::Disagree { .. }));
    let text = match c.format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({ "structure": report, "cross_checks": checks }))
                .expect("reports serialize")
                + "\n"
        }
        Format::Text => {
            let mut out = report.to_text();
            if !checks.is_empty() {
                out.push_str("\ncharacterization                 target    outcome\n");
            }
            for x in &checks {
                let outcome = match &x.outcome {
                    rules::Outcome::Agree => "agree".to_string(),
                    rules::Outcome::Disagree {
                        characterization,
                        definition,
                    } => {
                        format!("DISAGREE {characterization:?} vs {definition:?}")
                    }
                    rules::Outcome::NotApplicable(why) => format!("n/a ({why})"),
                };
                let _ = writeln!(out, "{:<32} {:<9} {}", x.name, x.target.name(), outcome);
            }
            out
        }
    };
    Ok(Outcome {
        status: if disagree {
            Status::Discrepancy
        } else {
            Status::Success
        },
        report: text,
    })
}

fn iso(c: &RunConfig) -> Result<Outcome, CliError> {
    let p1 = c.input.as_ref().ok_or(CliError::Missing("iso", "--in"))?;
    let p2 = c.input2.as_ref().ok_or(CliError::Missing("iso", "--in2"))?;
    let (l1, a1) = load(p1)?.into_loop()?;
    let (l2, a2) = load(p2)?.into_loop()?;
    let decider = deciders::lookup(&c.method)?;
    let witness = if l1.order() != l2.order() {
        None
    } else {
        let (f1, f2) = (Profile::new(&l1), Profile::new(&l2));
        let from = Candidate {
            table: &l1,
            profile: &f1,
            action: a1.as_ref(),
        };
        let to = Candidate {
            table: &l2,
            profile: &f2,
            action: a2.as_ref(),
        };
        let w = decider.decide(&from, &to)?;
        if let Some(w) = &w {
            if !isoclass::is_isomorphism(&w.mapping, &l1, &l2) {
                return Err(IsoError::BadWitness { from: 0, to: 1 }.into());
            }
        }
        w
    };
    let report = match c.format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "method": decider.name(),
                "isomorphic": witness.is_some(),
                "witness": witness,
            }))
            .expect("witnesses serialize")
                + "\n"
        }
        Format::Text => match &witness {
            None => format!("not isomorphic ({})\n", decider.name()),
            Some(w) => {
                let mut out = format!(
                    "isomorphic ({})\nmapping {:?}\n",
                    decider.name(),
                    w.mapping.images()
                );
                if let Some(a) = &w.alpha {
                    let _ = writeln!(out, "alpha   {}", a.to_cycle_string());
                }
                if let Some(b) = &w.beta {
                    let _ = writeln!(out, "beta    {}", b.to_cycle_string());
                }
                out
            }
        },
    };
    Ok(Outcome::ok(report))
}

fn enumerate(c: &RunConfig) -> Result<Outcome, CliError> {
    let (m, h) = need_family(c)?;
    let gens = enumerate_stabilizer_torsion(m, 0, h)?;
    let report = match c.format {
        Format::Json => {
            let list: Vec<String> = gens.iter().map(|g| g.to_cycle_string()).collect();
            serde_json::to_string_pretty(
                &json!({ "n": m, "h": h, "count": gens.len(), "generators": list }),
            )
            .expect("strings serialize")
                + "\n"
        }
        Format::Text => {
            let mut out = format!(
                "{} generators of order dividing {h} fixing 0 in Sym({m})\n",
                gens.len()
            );
            for (i, g) in gens.iter().enumerate() {
                let _ = writeln!(out, "{i:>5}  {:<3} {}", g.order(), g.to_cycle_string());
            }
            out
        }
    };
    Ok(Outcome::ok(report))
}

fn classify(c: &RunConfig) -> Result<Outcome, CliError> {
    let (m, h) = need_family(c)?;
    let decider = deciders::lookup(&c.method)?;
    let actions = reports::cyclic_family(m, h)?;
    let r = classify_actions(&actions, decider)?;
    let report = match c.format {
        Format::Json => serde_json::to_string_pretty(&r).expect("reports serialize") + "\n",
        Format::Text => {
            let mut out = format!(
                "Z_{m} x| Z_{h}  inputs {}  classes {}  associative {}  method {}\n\n",
                r.input_count,
                r.class_count,
                r.associative_count(),
                decider.name()
            );
            out.push_str("class  rep   size  assoc  generator\n");
            for (i, cls) in r.classes.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{i:>5}  {:>4}  {:>4}  {:<5}  {}",
                    cls.representative,
                    cls.size(),
                    if cls.associative { "yes" } else { "no" },
                    cls.generator.as_deref().unwrap_or("()")
                );
            }
            out
        }
    };
    Ok(Outcome::ok(report))
}

fn status(agrees: bool) -> Status {
    if agrees {
        Status::Success
    } else {
        Status::Discrepancy
    }
}

fn report20(c: &RunConfig) -> Result<Outcome, CliError> {
    let r = Order20::compute(deciders::lookup(&c.method)?)?;
    let report = match c.format {
        Format::Text => r.render(),
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "classification": r.classes,
                "table1": r.rows,
                "agrees": r.agrees(),
            }))
            .expect("reports serialize")
                + "\n"
        }
    };
    Ok(Outcome {
        status: status(r.agrees()),
        report,
    })
}

fn report27(c: &RunConfig) -> Result<Outcome, CliError> {
    let r = Order27::compute(deciders::lookup(&c.method)?)?;
    let report = match c.format {
        Format::Text => r.render(),
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "classification": r.classes,
                "stats_non_associative": r.loop_stats(),
                "stats_all": r.all_stats(),
                "agrees": r.agrees(),
            }))
            .expect("reports serialize")
                + "\n"
        }
    };
    Ok(Outcome {
        status: status(r.agrees()),
        report,
    })
}
