//! Command-line surface. [`dispatch`] returns the exit code and captured
//! output so it can be driven from tests.

use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dot;
use crate::error::{Error, Result};
use crate::fixpoint::{self, Schedule, StepKind};
use crate::induction::{self, induced_lower, induced_upper};
use crate::operator::{lower_operator, upper_operator};
use crate::oracle::{self, OracleConfig, PosetMode};
use crate::order::Lattice;
use crate::system::{read_system, SystemDescription};

#[derive(Parser, Debug)]
#[command(
    name = "transop",
    version,
    about = "Transition operators on lattice-valued propositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FileArg {
    /// Path to a `.system` file.
    file: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a system file and check all invariants.
    Validate(FileArg),
    /// Print the operator tables T_R (on B) and P_R (on A).
    Operators {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, conflicts_with_all = ["lower", "both"])]
        upper: bool,
        #[arg(long, conflicts_with = "both")]
        lower: bool,
        #[arg(long)]
        both: bool,
        /// Emit `op <row> = <values>` lines instead of the aligned listing.
        #[arg(long)]
        machine: bool,
    },
    /// Print the relations induced by T_R and P_R.
    Induce(FileArg),
    /// Report whether R is recovered from T_R and from P_R.
    Recover(FileArg),
    /// Iterate the induced-relation steps until nothing changes.
    Iterate {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, value_enum, default_value_t = ScheduleArg::Alternating)]
        schedule: ScheduleArg,
        #[arg(long, value_enum, default_value_t = KindArg::Upper)]
        first: KindArg,
        /// Defaults to n² + 2 for n states.
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Search for uniform witness rows and evaluate the transfer conditions.
    Witnesses(FileArg),
    /// List every relation on the system's states fixed by one step kind.
    Fixpoints {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, value_enum, default_value_t = KindArg::Upper)]
        kind: KindArg,
        #[arg(long, default_value_t = fixpoint::DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Exhaustively check the adjunction and induction laws on small systems.
    Oracle {
        /// Check every state count from 1 up to this one.
        #[arg(long, default_value_t = 2)]
        states: usize,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// A builtin lattice: chain2, chain3, chain4 or diamond.
        #[arg(long, default_value = "chain2")]
        lattice: String,
        #[arg(long, value_enum, default_value_t = PosetArg::Boolean)]
        poset: PosetArg,
    },
    /// Emit Graphviz DOT.
    Dot {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, value_enum, default_value_t = DotWhat::Relation)]
        what: DotWhat,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ScheduleArg {
    Alternating,
    Upper,
    Lower,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum KindArg {
    Upper,
    Lower,
}

impl From<KindArg> for StepKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Upper => StepKind::Upper,
            KindArg::Lower => StepKind::Lower,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    #[value(alias = "theorem3")]
    UpperAdjunction,
    #[value(alias = "theorem4")]
    LowerAdjunction,
    #[value(alias = "lemma2")]
    InductionLaws,
    All,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum PosetArg {
    Boolean,
    Full,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum DotWhat {
    Relation,
    InducedUpper,
    InducedLower,
    Hasse,
    HasseA,
    Lattice,
    OperatorUpper,
    OperatorLower,
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, success: bool) -> Self {
        Outcome {
            code: if success { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match run(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load(file: &FileArg) -> Result<SystemDescription> {
    read_system(&file.file)
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Validate(file) => {
            let sys = load(&file)?;
            let mut out = String::new();
            let _ = writeln!(out, "system {}: valid", sys.name);
            let _ = writeln!(
                out,
                "lattice: {} ({} elements)",
                sys.lattice().name(),
                sys.lattice().len()
            );
            let _ = writeln!(out, "states: {}", sys.states().len());
            let _ = writeln!(out, "|B| = {}", sys.b.len());
            let _ = writeln!(out, "|A| = {}", sys.a.len());
            let _ = writeln!(out, "|R| = {}", sys.relation().len());
            if !sys.hasse.is_empty() {
                let _ = writeln!(out, "hasse: {} cover pairs match the table order", sys.hasse.len());
            }
            Ok(Outcome::ok(out, true))
        }
        Command::Operators {
            file,
            upper,
            lower,
            both: _,
            machine,
        } => {
            let sys = load(&file)?;
            let (show_upper, show_lower) = match (upper, lower) {
                (true, _) => (true, false),
                (_, true) => (false, true),
                _ => (true, true),
            };
            let mut out = String::new();
            if show_upper {
                let t = upper_operator(&sys.frame, &sys.b)?;
                if machine {
                    out.push_str("# upper\n");
                    out.push_str(&t.render_machine());
                } else {
                    out.push_str("# upper operator T_R on B\n");
                    out.push_str(&t.render_aligned("T", &sys.a));
                }
            }
            if show_lower {
                let p = lower_operator(&sys.frame, &sys.a)?;
                if machine {
                    out.push_str("# lower\n");
                    out.push_str(&p.render_machine());
                } else {
                    if show_upper {
                        out.push('\n');
                    }
                    out.push_str("# lower operator P_R on A\n");
                    out.push_str(&p.render_aligned("P", &sys.b));
                }
            }
            Ok(Outcome::ok(out, true))
        }
        Command::Induce(file) => {
            let sys = load(&file)?;
            let rt = induced_upper(&upper_operator(&sys.frame, &sys.b)?);
            let rp = induced_lower(&lower_operator(&sys.frame, &sys.a)?);
            let f = &sys.frame;
            let mut out = String::new();
            let _ = writeln!(out, "R   = {}", f.format_relation(sys.relation()));
            let _ = writeln!(out, "R_T = {}", f.format_relation(&rt));
            let _ = writeln!(out, "R^P = {}", f.format_relation(&rp));
            let _ = writeln!(
                out,
                "|R| = {}, |R_T| = {}, |R^P| = {}",
                sys.relation().len(),
                rt.len(),
                rp.len()
            );
            Ok(Outcome::ok(out, true))
        }
        Command::Recover(file) => {
            let sys = load(&file)?;
            let report = induction::recoverability(&sys.frame, &sys.a, &sys.b)?;
            Ok(Outcome::ok(report.render(&sys.frame), report.recovered()))
        }
        Command::Iterate {
            file,
            schedule,
            first,
            max_steps,
        } => {
            let sys = load(&file)?;
            let schedule = match schedule {
                ScheduleArg::Alternating => Schedule::Alternating { first: first.into() },
                ScheduleArg::Upper => Schedule::UpperOnly,
                ScheduleArg::Lower => Schedule::LowerOnly,
            };
            let max = max_steps.unwrap_or_else(|| fixpoint::default_max_steps(sys.states().len()));
            let trace = fixpoint::iterate(&sys.frame, &sys.a, &sys.b, schedule, max)?;
            Ok(Outcome::ok(trace.render(&sys.frame), trace.converged))
        }
        Command::Witnesses(file) => {
            let sys = load(&file)?;
            let up = induction::uniform_witness_upper(&sys.frame, &sys.b)?;
            let low = induction::uniform_witness_lower(&sys.frame, &sys.a)?;
            let transfer = induction::transfer_check(&sys.frame, &sys.a, &sys.b)?;
            let mut out = String::new();
            out.push_str("# upper uniform witnesses (rows of B)\n");
            out.push_str(&up.render(&sys.frame, &sys.b));
            out.push_str("# lower uniform witnesses (rows of A)\n");
            out.push_str(&low.render(&sys.frame, &sys.a));
            out.push_str("# transfer conditions\n");
            out.push_str(&transfer.render());
            Ok(Outcome::ok(out, true))
        }
        Command::Fixpoints { file, kind, cap } => {
            let sys = load(&file)?;
            let fixed = fixpoint::enumerate_fixpoints(&sys.a, &sys.b, kind.into(), cap)?;
            let mut out = String::new();
            let n = sys.states().len();
            let _ = writeln!(out, "{} fixpoints of {} relations", fixed.len(), 1u64 << (n * n));
            for r in &fixed {
                let _ = writeln!(out, "{}", sys.frame.format_relation(r));
            }
            Ok(Outcome::ok(out, true))
        }
        Command::Oracle {
            states,
            suite,
            seed,
            samples,
            lattice,
            poset,
        } => {
            let lattice = Lattice::builtin(&lattice).ok_or_else(|| Error::UnknownElement(lattice.clone()))?;
            let config = OracleConfig {
                max_states: states,
                lattice: Arc::new(lattice),
                poset_mode: match poset {
                    PosetArg::Boolean => PosetMode::BooleanPower,
                    PosetArg::Full => PosetMode::FullPower,
                },
                seed,
                samples,
                ..OracleConfig::default()
            };
            let mut out = String::new();
            let mut passed = true;
            let mut counterexamples = String::new();
            for n in 1..=states {
                if matches!(suite, SuiteArg::UpperAdjunction | SuiteArg::All) {
                    let r = oracle::verify_upper_adjunction(&config, n)?;
                    let _ = writeln!(out, "{}", r.summary_line());
                    passed &= r.passed();
                    if let Some(cx) = r.counterexample {
                        let _ = write!(counterexamples, "# {}\n{}", cx.description, cx.system);
                    }
                }
                if matches!(suite, SuiteArg::LowerAdjunction | SuiteArg::All) {
                    let r = oracle::verify_lower_adjunction(&config, n)?;
                    let _ = writeln!(out, "{}", r.summary_line());
                    passed &= r.passed();
                    if let Some(cx) = r.counterexample {
                        let _ = write!(counterexamples, "# {}\n{}", cx.description, cx.system);
                    }
                }
                if matches!(suite, SuiteArg::InductionLaws | SuiteArg::All) {
                    let r = oracle::verify_induction_laws(&config, n)?;
                    out.push_str(&r.summary_lines());
                    passed &= r.passed();
                    for cx in r.laws.iter().filter_map(|c| c.counterexample.as_ref()) {
                        let _ = write!(counterexamples, "# {}\n{}", cx.description, cx.system);
                    }
                }
            }
            if !counterexamples.is_empty() {
                out.push_str("\n# counterexamples\n");
                out.push_str(&counterexamples);
            }
            Ok(Outcome::ok(out, passed))
        }
        Command::Dot { file, what } => {
            let sys = load(&file)?;
            let text = match what {
                DotWhat::Relation => dot::relation_dot(&sys.frame, sys.relation(), "R"),
                DotWhat::InducedUpper => {
                    let rt = induced_upper(&upper_operator(&sys.frame, &sys.b)?);
                    dot::relation_dot(&sys.frame, &rt, "R_T")
                }
                DotWhat::InducedLower => {
                    let rp = induced_lower(&lower_operator(&sys.frame, &sys.a)?);
                    dot::relation_dot(&sys.frame, &rp, "R^P")
                }
                DotWhat::Hasse => dot::poset_hasse_dot(&sys.b, "B"),
                DotWhat::HasseA => dot::poset_hasse_dot(&sys.a, "A"),
                DotWhat::Lattice => dot::lattice_hasse_dot(sys.lattice()),
                DotWhat::OperatorUpper => dot::operator_dot(&upper_operator(&sys.frame, &sys.b)?, "T_R"),
                DotWhat::OperatorLower => dot::operator_dot(&lower_operator(&sys.frame, &sys.a)?, "P_R"),
            };
            Ok(Outcome::ok(text, true))
        }
    }
}
