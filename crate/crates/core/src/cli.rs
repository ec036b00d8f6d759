//! Command-line front end. Exit status: 0 when the property holds or the
//! construction succeeded, 1 when a checked property fails, 2 on input or
//! usage errors (reported on one line as `error: file:line: cause`).

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::axioms::check_axioms;
use crate::condition::ConditionVerdict;
use crate::format::{parse_document, parse_lattice, render_document, render_lattice, render_table, FormatError};
use crate::lattice::{Elem, Interval, Lattice, LatticeError};
use crate::miner::{self, MinerConfig, Mode, Target};
use crate::optable::OpTable;
use crate::ordsum::{self, OrdinalSumInput};

#[derive(Debug, Parser)]
#[command(
    name = "ordsum",
    version,
    about = "Ordinal sums of t-norms on finite bounded lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxiomSet {
    Tnorm,
    Tsubnorm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Saminger,
    Ey,
    C1,
    C2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConditionKind {
    /// Incomparability conditions of Saminger's sum
    Saminger,
    /// Increasingness of the two-summand sum (half-open increasingness and the pivot condition)
    Increasing,
    /// Pivot condition for t-subnorm summands
    Tnorm,
    /// Meets of incomparable elements lie below the pivot
    Lemma,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a lattice file
    Validate { lattice: PathBuf },
    /// Print the meet of two elements
    Meet { lattice: PathBuf, x: String, y: String },
    /// Print the join of two elements
    Join { lattice: PathBuf, x: String, y: String },
    /// List the elements of [lo, hi]
    Interval { lattice: PathBuf, lo: String, hi: String },
    /// Check an operation against the t-norm or t-subnorm axioms
    CheckOp {
        op: PathBuf,
        #[arg(long)]
        lattice: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "tnorm")]
        axioms: AxiomSet,
    },
    /// Build an ordinal sum
    Construct {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        pivot: String,
        #[arg(long)]
        t1: PathBuf,
        #[arg(long)]
        t2: Option<PathBuf>,
        /// Print the table layout instead of the file format
        #[arg(long)]
        render: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide a side condition, printing witnesses when it fails
    CheckCondition {
        lattice: PathBuf,
        #[arg(long, value_enum)]
        theorem: ConditionKind,
        #[arg(long)]
        pivot: String,
        /// Upper summand; defaults to the meet on [a,1]
        #[arg(long)]
        t1: Option<PathBuf>,
        /// Lower summand; defaults to the meet on [0,a]
        #[arg(long)]
        t2: Option<PathBuf>,
    },
    /// Exhaustively verify an equivalence over all small lattices
    VerifyTheorem {
        #[arg(long)]
        theorem: Target,
        /// Summand mode; defaults to the theorem's hypotheses
        #[arg(long)]
        mode: Option<Mode>,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// Search for a counterexample in canonical order
    Mine {
        #[arg(long)]
        theorem: Target,
        #[arg(long)]
        mode: Mode,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        /// Skip instances where the side condition fails
        #[arg(long)]
        require_condition: bool,
        /// Write the counterexample bundle to this directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a lattice or operation file; operations print as a table
    Render {
        file: PathBuf,
        #[arg(long)]
        lattice: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct CliError {
    file: Option<String>,
    line: Option<usize>,
    msg: String,
}

impl CliError {
    fn new(msg: impl Into<String>) -> Self {
        CliError {
            file: None,
            line: None,
            msg: msg.into(),
        }
    }

    fn in_file(path: &Path, e: impl fmt::Display) -> Self {
        CliError {
            file: Some(path.display().to_string()),
            line: None,
            msg: e.to_string(),
        }
    }

    fn format(path: &Path, e: FormatError) -> Self {
        let (line, msg) = match e {
            FormatError::Syntax { line, msg } => (Some(line), msg),
            FormatError::Invalid { line, error } => (Some(line), error.to_string()),
            other => (None, other.to_string()),
        };
        CliError {
            file: Some(path.display().to_string()),
            line,
            msg,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("error: ")?;
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
            if let Some(line) = self.line {
                write!(f, "{line}:")?;
            }
            f.write_str(" ")?;
        }
        f.write_str(&self.msg)
    }
}

type Outcome = Result<bool, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::in_file(path, e))
}

fn load_lattice(path: &Path) -> Result<Arc<Lattice>, CliError> {
    let text = read(path)?;
    parse_lattice(&text)
        .map(Arc::new)
        .map_err(|e| CliError::format(path, e))
}

fn load_op(path: &Path, lattice: Option<&Arc<Lattice>>) -> Result<OpTable, CliError> {
    let text = read(path)?;
    let doc = parse_document(&text, lattice).map_err(|e| CliError::format(path, e))?;
    let op = doc.op.ok_or_else(|| CliError::in_file(path, "no operation in file"))?;
    Ok(op.table)
}

fn elem(lattice: &Lattice, name: &str) -> Result<Elem, CliError> {
    lattice.elem(name).map_err(|e| CliError::new(e.to_string()))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::new(e.to_string()))
}

fn verdict_lines(out: &mut dyn Write, lattice: &Lattice, verdicts: &[ConditionVerdict]) -> Outcome {
    for v in verdicts {
        emit(out, &format!("{}\n", v.render(lattice)))?;
    }
    Ok(verdicts.iter().all(ConditionVerdict::holds))
}

fn default_mode(target: Target) -> Mode {
    match target {
        Target::SamingerThm2 | Target::EyThm3 => Mode::TNorm,
        Target::IncreasingThm4 => Mode::CommutativeRange,
        Target::TnormThm5 => Mode::TSubnorm,
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Validate { lattice } => {
            let text = read(&lattice)?;
            match parse_lattice(&text) {
                Ok(l) => {
                    emit(out, &format!("ok: {} ({} elements)\n", l.name(), l.len()))?;
                    Ok(true)
                }
                Err(FormatError::Invalid { line, error }) => {
                    emit(out, &format!("invalid: {}:{line}: {error}\n", lattice.display()))?;
                    Ok(false)
                }
                Err(e) => Err(CliError::format(&lattice, e)),
            }
        }
        Command::Meet { lattice, x, y } => {
            let l = load_lattice(&lattice)?;
            let m = l.meet(elem(&l, &x)?, elem(&l, &y)?);
            emit(out, &format!("{}\n", l.name_of(m)))?;
            Ok(true)
        }
        Command::Join { lattice, x, y } => {
            let l = load_lattice(&lattice)?;
            let j = l.join(elem(&l, &x)?, elem(&l, &y)?);
            emit(out, &format!("{}\n", l.name_of(j)))?;
            Ok(true)
        }
        Command::Interval { lattice, lo, hi } => {
            let l = load_lattice(&lattice)?;
            let iv = Interval::new(&l, elem(&l, &lo)?, elem(&l, &hi)?).map_err(|e| CliError::new(e.to_string()))?;
            let names: Vec<&str> = iv.members().iter().map(|&x| l.name_of(x)).collect();
            emit(out, &format!("{}\n", names.join(" ")))?;
            Ok(true)
        }
        Command::CheckOp { op, lattice, axioms } => {
            let l = lattice.as_deref().map(load_lattice).transpose()?;
            let t = load_op(&op, l.as_ref())?;
            let report = check_axioms(&t);
            emit(out, &report.render(t.lattice()))?;
            Ok(match axioms {
                AxiomSet::Tnorm => report.is_tnorm(),
                AxiomSet::Tsubnorm => report.is_tsubnorm(),
            })
        }
        Command::Construct {
            method,
            lattice,
            pivot,
            t1,
            t2,
            render,
            out: target,
        } => {
            let l = load_lattice(&lattice)?;
            let a = elem(&l, &pivot)?;
            let t1 = load_op(&t1, Some(&l))?;
            let sum_err = |e: ordsum::OrdSumError| CliError::new(e.to_string());
            let sum = match method {
                Method::Saminger | Method::Ey => {
                    let t2_path = t2.ok_or_else(|| CliError::new("--t2 is required for this method"))?;
                    let t2 = load_op(&t2_path, Some(&l))?;
                    let input = OrdinalSumInput::new(Arc::clone(&l), a, t1, t2).map_err(sum_err)?;
                    match method {
                        Method::Saminger => ordsum::saminger_sum(&input),
                        _ => ordsum::ey_sum(&input),
                    }
                }
                Method::C1 => ordsum::corollary1_sum(&l, a, &t1).map_err(sum_err)?,
                Method::C2 => ordsum::corollary2_sum(&l, a, &t1).map_err(sum_err)?,
            };
            let text = if render {
                render_table("T", &sum)
            } else {
                render_document("T", &sum)
            };
            match target {
                Some(path) => fs::write(&path, text).map_err(|e| CliError::in_file(&path, e))?,
                None => emit(out, &text)?,
            }
            Ok(true)
        }
        Command::CheckCondition {
            lattice,
            theorem,
            pivot,
            t1,
            t2,
        } => {
            let l = load_lattice(&lattice)?;
            let a = elem(&l, &pivot)?;
            let err = |e: &dyn fmt::Display| CliError::new(e.to_string());
            match theorem {
                ConditionKind::Lemma => {
                    let v = l.check_lemma_incomparable_meet(a).map_err(|e| err(&e))?;
                    verdict_lines(out, &l, &[v])
                }
                ConditionKind::Saminger => {
                    let v = ordsum::check_saminger_conditions(&l, a).map_err(|e| err(&e))?;
                    verdict_lines(out, &l, &[v])
                }
                ConditionKind::Increasing | ConditionKind::Tnorm => {
                    if !l.is_interior(a) {
                        return Err(err(&LatticeError::PivotIsBound(pivot)));
                    }
                    let upper = Interval::new(&l, a, l.top()).map_err(|e| err(&e))?;
                    let lower = Interval::new(&l, l.bottom(), a).map_err(|e| err(&e))?;
                    let t1 = match t1 {
                        Some(p) => load_op(&p, Some(&l))?,
                        None => OpTable::meet_tnorm(upper),
                    };
                    let t2 = match t2 {
                        Some(p) => load_op(&p, Some(&l))?,
                        None => OpTable::meet_tnorm(lower),
                    };
                    let input = OrdinalSumInput::new(Arc::clone(&l), a, t1, t2).map_err(|e| err(&e))?;
                    if matches!(theorem, ConditionKind::Tnorm) {
                        let v = ordsum::check_tnorm_condition(&input).map_err(|e| err(&e))?;
                        verdict_lines(out, &l, &[v])
                    } else {
                        let pivot_v = ordsum::check_increasingness_condition(&input).map_err(|e| err(&e))?;
                        let half_open = ordsum::check_half_open_increasing(&input);
                        verdict_lines(out, &l, &[half_open, pivot_v])
                    }
                }
            }
        }
        Command::VerifyTheorem {
            theorem,
            mode,
            max_size,
        } => {
            let cfg = MinerConfig::new(theorem, mode.unwrap_or(default_mode(theorem))).with_max_size(max_size);
            let result = miner::verify_theorem(&cfg).map_err(|e| CliError::new(e.to_string()))?;
            emit(out, &format!("{} [{}]: {}\n", theorem, cfg.t1_mode, result.summary()))?;
            for v in &result.violations {
                emit(
                    out,
                    &format!(
                        "violation {:?}: {} pivot={}: {}\n",
                        v.kind,
                        v.lattice.name(),
                        v.lattice.name_of(v.pivot),
                        v.detail
                    ),
                )?;
            }
            Ok(result.violations.is_empty())
        }
        Command::Mine {
            theorem,
            mode,
            max_size,
            require_condition,
            out: dir,
        } => {
            let mut cfg = MinerConfig::new(theorem, mode).with_max_size(max_size);
            cfg.require_condition = require_condition;
            let result = miner::find_counterexample(&cfg).map_err(|e| CliError::new(e.to_string()))?;
            match result.counterexamples.first() {
                None => {
                    emit(
                        out,
                        &format!("no counterexample within budget ({} instances)\n", result.instances),
                    )?;
                    Ok(true)
                }
                Some(cx) => {
                    emit(out, &format!("counterexample: {}\n", cx.summary()))?;
                    match dir {
                        Some(d) => miner::write_bundle(&d, cx).map_err(|e| CliError::in_file(&d, e))?,
                        None => {
                            emit(out, &render_lattice(&cx.lattice))?;
                            emit(out, &render_table("T", &cx.sum()))?;
                        }
                    }
                    Ok(false)
                }
            }
        }
        Command::Render { file, lattice } => {
            let l = lattice.as_deref().map(load_lattice).transpose()?;
            let text = read(&file)?;
            let doc = parse_document(&text, l.as_ref()).map_err(|e| CliError::format(&file, e))?;
            match (doc.op, doc.lattice) {
                (Some(op), _) => emit(out, &render_table(&op.name, &op.table))?,
                (None, Some(lat)) => emit(out, &render_lattice(&lat))?,
                (None, None) => return Err(CliError::in_file(&file, "empty file")),
            }
            Ok(true)
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let rendered = e.render().to_string();
                    let first = rendered.lines().next().unwrap_or("error: invalid usage");
                    let _ = writeln!(err, "{first}");
                    2
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            2
        }
    }
}
