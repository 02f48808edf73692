use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use projfill::cartan::parse_matrix;
use projfill::complex::{default_k6, parse_k6, EdgeLabeledK6};
use projfill::exactnum::rat;
use projfill::report::{self, Report, Stage, TArg};
use projfill::vinberg::ReferenceKind;
use projfill::Exec;

/// Exit status for bad arguments or unreadable input.
const USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "projfill",
    version,
    about = "Exact certificates for a convex projective Dehn filling"
)]
struct Cli {
    /// Run every scan on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certificates about the parameter family C_t.
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Vinberg type of a Cartan matrix.
    Cartan {
        #[command(subcommand)]
        action: CartanAction,
    },
    /// Face poset of C_t.
    Poset {
        #[command(subcommand)]
        action: PosetAction,
    },
    /// Coxeter group checks.
    Coxeter {
        #[command(subcommand)]
        action: CoxeterAction,
    },
    /// Relations between the projective reflections.
    Reflect {
        #[command(subcommand)]
        action: ReflectAction,
    },
    /// The gluing pipeline.
    Complex {
        #[command(subcommand)]
        action: ComplexAction,
    },
    /// The full pipeline.
    Report {
        #[command(subcommand)]
        action: ReportAction,
    },
}

#[derive(Subcommand)]
enum FamilyAction {
    Verify,
}

#[derive(Subcommand)]
enum CartanAction {
    Classify { file: PathBuf },
}

#[derive(Subcommand)]
enum PosetAction {
    Build {
        /// `t3`, `p/q` or a decimal.
        #[arg(long)]
        t: TArg,
        /// truncated, rectified or bitruncated.
        #[arg(long)]
        compare: Option<ReferenceKind>,
    },
}

#[derive(Subcommand)]
enum CoxeterAction {
    Relhyp {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        p: u32,
    },
}

#[derive(Subcommand)]
enum ReflectAction {
    Verify {
        #[arg(long)]
        t: TArg,
    },
}

#[derive(Subcommand)]
enum ComplexAction {
    Build {
        /// block, xprime or x.
        #[arg(long)]
        stage: Stage,
        /// Inner K6 labeling (15 lines `u v label`).
        #[arg(long)]
        k6: Option<PathBuf>,
        /// Outer K6 labeling; defaults to the inner one.
        #[arg(long)]
        k6_outer: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ReportAction {
    All {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        p: u32,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_k6(path: Option<&Path>) -> Result<EdgeLabeledK6, String> {
    match path {
        None => Ok(default_k6()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            parse_k6(&text).map_err(|e| format!("{}: {e}", p.display()))
        }
    }
}

fn run(cli: Cli) -> Result<(Report, Option<PathBuf>), String> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let out = match cli.command {
        Command::Family {
            action: FamilyAction::Verify,
        } => {
            let mut r = Report::new("family verify");
            r.extend(report::family_checks(exec));
            (r, None)
        }
        Command::Cartan {
            action: CartanAction::Classify { file },
        } => {
            let text =
                std::fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let parsed = parse_matrix(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let mut r = Report::new("cartan classify");
            r.set("file", file.display().to_string());
            r.set("domain", parsed.domain());
            r.push(report::classify_check(&parsed));
            (r, None)
        }
        Command::Poset {
            action: PosetAction::Build { t, compare },
        } => {
            let mut r = report::report_for_t("poset build", &t);
            if let Some(k) = compare {
                r.set("compare", k.to_string());
            }
            r.extend(report::poset_checks(&t, compare, exec));
            (r, None)
        }
        Command::Coxeter {
            action: CoxeterAction::Relhyp { p },
        } => {
            let mut r = Report::new("coxeter relhyp");
            r.set("p", p);
            r.extend(report::coxeter_checks(p, exec));
            (r, None)
        }
        Command::Reflect {
            action: ReflectAction::Verify { t },
        } => {
            let mut r = report::report_for_t("reflect verify", &t);
            r.extend(report::reflect_checks(&t, exec));
            (r, None)
        }
        Command::Complex {
            action:
                ComplexAction::Build {
                    stage,
                    k6,
                    k6_outer,
                },
        } => {
            let inner = read_k6(k6.as_deref())?;
            let outer = match k6_outer {
                Some(p) => read_k6(Some(&p))?,
                None => inner.clone(),
            };
            let mut r = Report::new("complex build");
            r.set(
                "stage",
                serde_json::to_value(stage).expect("stage serializes"),
            );
            r.set("inner_k6", inner.to_string());
            r.set("outer_k6", outer.to_string());
            r.extend(report::complex_checks(
                stage,
                &outer,
                &inner,
                3,
                &rat(1, 6),
                exec,
            ));
            (r, None)
        }
        Command::Report {
            action: ReportAction::All { p, out },
        } => (
            report::report_all(p, &default_k6(), &default_k6(), exec),
            out,
        ),
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((report, out)) => {
            let json = report.to_json();
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, json + "\n") {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(USAGE);
                    }
                    for c in &report.checks {
                        println!("{:<9} {}", c.verdict, c.name);
                    }
                    println!("{:<9} overall", report.verdict);
                }
                None => println!("{json}"),
            }
            ExitCode::from(report.verdict.exit_code() as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}
