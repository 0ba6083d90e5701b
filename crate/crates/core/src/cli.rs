//! Command-line front end.
//!
//! Exit codes: 0 affirmative (extreme, solvable, found), 1 negative, 2
//! unreliable extremality verdict, 3 usage errors, 4 invalid input data,
//! 5 numerical or internal failures.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{
    self, admissible_pads, enumerate_candidates, format_trace, RankVector, Status,
};
use crate::constructions;
use crate::dilation::{minimal_dilation, DilationDocument};
use crate::error::Error;
use crate::extremality::{check_extreme_a, check_extreme_c, VerdictDocument};
use crate::io::{povm_to_json, read_povm, to_json_string};
use crate::packing::{self, brute_force_oracle, render, Mode, RenderFormat};
use crate::search::search_extreme;
use crate::synthesis::synthesize_vector;
use crate::tolerance::{ToleranceProfile, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNRELIABLE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_DATA: i32 = 4;
pub const EXIT_FAILURE: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "extreme-povm",
    version,
    about = "Construct and certify extreme POVMs"
)]
pub struct Cli {
    /// Tolerance bundle; `strict` divides every epsilon by 100.
    #[arg(long, global = true, default_value = "default")]
    pub tolerance_profile: ToleranceProfile,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON documents.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit human-readable text.
    #[arg(long, global = true)]
    pub text: bool,
    /// Write the primary output document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide extremality of a povm-json file.
    CheckExtreme {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Criterion::C)]
        criterion: Criterion,
    },
    /// Minimal Naimark dilation of a povm-json file.
    Dilate { file: PathBuf },
    /// Apply an extremality-preserving construction.
    Construct {
        #[command(subcommand)]
        op: ConstructOp,
    },
    /// List rank vectors over a dimension.
    Enumerate {
        #[arg(long)]
        dim: usize,
        /// Classify vectors by closure under the constructions.
        #[arg(long)]
        derive: bool,
        /// Try random search on OPEN vectors with this many trials each.
        #[arg(long, requires = "derive")]
        search_budget: Option<usize>,
    },
    /// Decide the packing problem of a rank vector.
    Pack {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 0)]
        pad: usize,
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        render: Option<RenderFormat>,
        /// Cross-check with the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Extreme POVM from a symmetric packing of a rank vector.
    Synthesize {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        emit_formation: Option<PathBuf>,
    },
    /// Random search for an extreme POVM with the given ranks.
    Search {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Where to write the witness POVM when one is found.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct Target {
    /// Comma-separated ranks, e.g. "3,2,2,2".
    #[arg(long)]
    pub vector: String,
    #[arg(long)]
    pub dim: usize,
}

impl Target {
    fn parse(&self) -> Result<RankVector, Error> {
        if self.dim == 0 {
            return Err(Error::Parse("dimension must be positive".into()));
        }
        RankVector::parse(&self.vector, self.dim)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Criterion {
    A,
    C,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum ConstructOp {
    /// Add a rank-1 outcome outside the operator span.
    AddRank1 {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Extreme rank-1 POVM with N outcomes.
    Rank1Chain {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        outcomes: usize,
    },
    /// Delete outcome `h` (0-based).
    Delete {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        outcome: usize,
    },
    /// Split outcome `h` (0-based) into spectral groups of the given sizes.
    Refine {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        outcome: usize,
        #[arg(long, value_delimiter = ',')]
        parts: Vec<usize>,
    },
    /// Tensor with the identity on C^factor.
    Multiply {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        factor: usize,
    },
    /// Embed into d+1 and raise the rank of outcome `h` (0-based).
    Increase {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        outcome: usize,
    },
    /// Embed into d+p with one extra rank-1 outcome.
    Lift {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        by: usize,
    },
}

struct Ctx<'a> {
    tol: Tolerances,
    seed: u64,
    json: bool,
    text: bool,
    out: Option<PathBuf>,
    stdout: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, body: &str) -> Result<(), Error> {
        let mut body = body.to_string();
        if !body.ends_with('\n') {
            body.push('\n');
        }
        match &self.out {
            Some(path) => std::fs::write(path, body)?,
            None => self.stdout.write_all(body.as_bytes())?,
        }
        Ok(())
    }

    fn note(&mut self, line: &str) -> Result<(), Error> {
        writeln!(self.stdout, "{line}")?;
        Ok(())
    }

    fn emit_json<T: Serialize>(&mut self, value: &T) -> Result<(), Error> {
        let s = to_json_string(value)?;
        self.emit(&s)
    }
}

/// Parses `argv` (program name first) and runs the command. Never panics on
/// bad input; returns the process exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(stdout, "{rendered}")
            } else {
                write!(stderr, "{rendered}")
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        tol: Tolerances::from_profile(cli.tolerance_profile),
        seed: cli.seed,
        json: cli.json,
        text: cli.text,
        out: cli.out.clone(),
        stdout,
    };
    match dispatch(&cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            error_code(&e)
        }
    }
}

pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Json(_)
        | Error::InvalidOutcomeCount { .. }
        | Error::OutcomeIndex { .. }
        | Error::BadPartition(_)
        | Error::SizeGuard { .. }
        | Error::Precondition(_) => EXIT_USAGE,
        Error::DimensionMismatch { .. }
        | Error::NoEffects
        | Error::NotHermitian { .. }
        | Error::NotPositive { .. }
        | Error::NotNormalized { .. }
        | Error::NotExtreme
        | Error::RankBudgetExhausted { .. }
        | Error::InvalidFormation(_)
        | Error::NotSymmetric { .. }
        | Error::Io(_) => EXIT_DATA,
        _ => EXIT_FAILURE,
    }
}

fn dispatch(cmd: &Command, ctx: &mut Ctx<'_>) -> Result<i32, Error> {
    match cmd {
        Command::CheckExtreme { file, criterion } => check_extreme(file, *criterion, ctx),
        Command::Dilate { file } => {
            let povm = read_povm(file, &ctx.tol)?;
            let d = minimal_dilation(&povm);
            if ctx.text {
                let msg = format!(
                    "dilation C^{} -> C^{} blocks {:?} isometry defect {:.3e} reconstruction defect {:.3e}",
                    d.dim,
                    d.dilation_dim,
                    d.block_sizes,
                    d.isometry_defect(),
                    d.reconstruction_defect(&povm)
                );
                ctx.emit(&msg)?;
            } else {
                ctx.emit_json(&DilationDocument::from(&d))?;
            }
            Ok(EXIT_OK)
        }
        Command::Construct { op } => construct(op, ctx),
        Command::Enumerate {
            dim,
            derive,
            search_budget,
        } => enumerate(*dim, *derive, *search_budget, ctx),
        Command::Pack {
            target,
            pad,
            symmetric,
            render: fmt,
            oracle,
        } => pack(target, *pad, *symmetric, *fmt, *oracle, ctx),
        Command::Synthesize {
            target,
            emit_formation,
        } => {
            let vec = target.parse()?;
            match synthesize_vector(&vec, ctx.seed, &ctx.tol) {
                Ok((formation, certified)) => {
                    if let Some(path) = emit_formation {
                        crate::io::write_json(path, &formation)?;
                    }
                    ctx.emit(&povm_to_json(&certified.povm)?)?;
                    Ok(EXIT_OK)
                }
                Err(Error::NoSymmetricSolution(v)) => {
                    ctx.note(&format!("no symmetric packing for {v}"))?;
                    Ok(EXIT_NEGATIVE)
                }
                Err(e) => Err(e),
            }
        }
        Command::Search {
            target,
            budget,
            witness,
        } => {
            let vec = target.parse()?;
            let report = search_extreme(&vec, *budget, ctx.seed, &ctx.tol)?;
            if let (Some(path), Some(found)) = (witness, &report.found) {
                crate::io::write_povm(path, &found.povm)?;
            }
            if ctx.text {
                let msg = match &report.found {
                    Some(f) => format!(
                        "{}: found at trial {} (pad {}), sv gap {:.3e}",
                        report.target, f.trial, f.pad, f.verdict.sv_gap
                    ),
                    None => format!(
                        "{}: nothing in {} trials, best gap {:.3e}",
                        report.target, report.trials, report.best_sv_gap
                    ),
                };
                ctx.emit(&msg)?;
            } else {
                ctx.emit_json(&report)?;
            }
            Ok(if report.found.is_some() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

fn check_extreme(file: &Path, criterion: Criterion, ctx: &mut Ctx<'_>) -> Result<i32, Error> {
    let povm = read_povm(file, &ctx.tol)?;
    let verdict = match criterion {
        Criterion::C => check_extreme_c(&povm)?,
        Criterion::A => check_extreme_a(&povm)?,
        Criterion::Both => {
            let a = check_extreme_a(&povm)?;
            let c = check_extreme_c(&povm)?;
            if a.is_extreme != c.is_extreme || a.numerical_rank != c.numerical_rank {
                return Err(Error::CertificationFailed(format!(
                    "criteria disagree: A rank {}, C rank {}",
                    a.numerical_rank, c.numerical_rank
                )));
            }
            if a.sv_gap < c.sv_gap {
                a
            } else {
                c
            }
        }
    };
    let doc: VerdictDocument = verdict.to_document();
    if ctx.text {
        let label = if !doc.reliable {
            "UNRELIABLE"
        } else if doc.extreme {
            "EXTREME"
        } else {
            "NOT EXTREME"
        };
        ctx.emit(&format!(
            "{label}: rank {}/{} sv gap {:.3e}",
            doc.rank, doc.expected, doc.sv_gap
        ))?;
    } else {
        ctx.emit_json(&doc)?;
    }
    Ok(if !doc.reliable {
        EXIT_UNRELIABLE
    } else if doc.extreme {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn construct(op: &ConstructOp, ctx: &mut Ctx<'_>) -> Result<i32, Error> {
    let tol = ctx.tol;
    let read = |p: &PathBuf| read_povm(p, &tol);
    let seed = ctx.seed;
    let povm = match op {
        ConstructOp::AddRank1 { input } => constructions::add_rank1(&read(input)?, seed)?,
        ConstructOp::Rank1Chain { dim, outcomes } => {
            constructions::rank1_chain(*dim, *outcomes, seed)?.with_tolerances(tol)?
        }
        ConstructOp::Delete { input, outcome } => {
            constructions::delete_outcome(&read(input)?, *outcome, seed)?
        }
        ConstructOp::Refine {
            input,
            outcome,
            parts,
        } => {
            let p = read(input)?;
            constructions::check_index(&p, *outcome)?;
            let mut partition = constructions::trivial_partition(&p);
            partition[*outcome] = parts.clone();
            constructions::refine(&p, &partition)?
        }
        ConstructOp::Multiply { input, factor } => {
            constructions::multiply_ranks(&read(input)?, *factor)?
        }
        ConstructOp::Increase { input, outcome } => {
            constructions::increase_rank(&read(input)?, *outcome)?
        }
        ConstructOp::Lift { input, by } => constructions::lift_dimension(&read(input)?, *by)?,
    };
    ctx.emit(&povm_to_json(&povm)?)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CandidateRow {
    vector: RankVector,
    admissible_pads: Vec<usize>,
}

fn enumerate(
    dim: usize,
    derive: bool,
    budget: Option<usize>,
    ctx: &mut Ctx<'_>,
) -> Result<i32, Error> {
    if dim == 0 {
        return Err(Error::Parse("dimension must be positive".into()));
    }
    if dim > 9 {
        return Err(Error::SizeGuard { dim, limit: 9 });
    }
    if !derive {
        let rows: Vec<CandidateRow> = enumerate_candidates(dim)
            .into_iter()
            .map(|v| CandidateRow {
                admissible_pads: admissible_pads(&v),
                vector: v,
            })
            .collect();
        if ctx.json {
            return ctx.emit_json(&rows).map(|_| EXIT_OK);
        }
        let mut s = String::new();
        for r in &rows {
            s.push_str(&format!(
                "{:<20} pads {:?}\n",
                r.vector.to_string(),
                r.admissible_pads
            ));
        }
        return ctx.emit(&s).map(|_| EXIT_OK);
    }
    let mut records = catalog::derive_feasible(dim);
    if let Some(b) = budget {
        records = catalog::upgrade_with_search(records, b, ctx.seed, &ctx.tol)?;
    }
    if ctx.json {
        return ctx.emit_json(&records).map(|_| EXIT_OK);
    }
    let mut s = String::new();
    for r in &records {
        let detail = match &r.status {
            Status::FeasibleConstructive { trace } => format_trace(trace),
            Status::Infeasible { violated } => format!("violates {violated:?}"),
            _ => String::new(),
        };
        s.push_str(&format!(
            "{:<20} {:<22} {detail}\n",
            r.vector.to_string(),
            r.status.label()
        ));
    }
    ctx.emit(&s)?;
    Ok(EXIT_OK)
}

fn pack(
    target: &Target,
    pad: usize,
    symmetric: bool,
    fmt: Option<RenderFormat>,
    oracle: bool,
    ctx: &mut Ctx<'_>,
) -> Result<i32, Error> {
    let vec = target.parse()?;
    let mode = if symmetric {
        Mode::Symmetric
    } else {
        Mode::General
    };
    let found = packing::solve(&vec, pad, mode);
    if let Some(f) = &found {
        packing::validate_for(&vec, pad, f, mode).map_err(|e| Error::InvalidFormation(e.0))?;
    }
    if oracle {
        let other = brute_force_oracle(&vec, pad, mode)?;
        if other.is_some() != found.is_some() {
            return Err(Error::CertificationFailed(format!(
                "solver says {}, oracle says {}",
                found.is_some(),
                other.is_some()
            )));
        }
    }
    match &found {
        Some(f) => {
            let fmt = fmt.or(if ctx.text {
                Some(RenderFormat::Text)
            } else {
                None
            });
            match fmt {
                Some(fmt) => ctx.emit(&render(f, fmt)?)?,
                None => ctx.emit_json(f)?,
            }
            Ok(EXIT_OK)
        }
        None => {
            ctx.note(&format!(
                "{} has no {} packing",
                vec,
                if symmetric { "symmetric" } else { "general" }
            ))?;
            Ok(EXIT_NEGATIVE)
        }
    }
}
