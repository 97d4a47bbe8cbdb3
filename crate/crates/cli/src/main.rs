use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hecke_cli::report::{emit, from_json, render};
use hecke_cli::{eval, suites, CliError, CliResult, Format, Settings};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Hecke-Baxter operators: evaluate objects and run verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one value and its error estimate.
    Eval {
        /// Object to evaluate; see `hecke list`.
        object: String,
        #[command(flatten)]
        params: Params,
        /// text or json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run a verification suite and write its report. Exit 1 if it fails.
    Verify {
        /// Suite name; may be omitted with --replay.
        suite: Option<String>,
        #[command(flatten)]
        params: Params,
        /// json or csv
        #[arg(long, default_value = "json")]
        format: Format,
        /// Re-run from the settings block of an earlier JSON report.
        #[arg(long, value_name = "REPORT")]
        replay: Option<PathBuf>,
        /// Record runtime_ms = 0 so identical settings give identical bytes.
        #[arg(long)]
        no_timing: bool,
    },
    /// List suites and eval objects.
    List,
}

#[derive(Args, Default)]
struct Params {
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long)]
    cutoff: Option<String>,
    #[arg(long = "n-max")]
    n_max: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    height: Option<String>,
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    modulus: Option<String>,
    /// Any setting as key=value; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", allow_hyphen_values = true)]
    set: Vec<String>,
    /// key = value file with defaults; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Params {
    /// config, then --set, then the dedicated flags.
    fn settings(&self, base: Settings) -> CliResult<Settings> {
        let mut s = base;
        if let Some(path) = &self.config {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            s = s.merged(&Settings::parse_config(&text)?);
        }
        let mut over = Settings::new();
        for pair in &self.set {
            over.set_pair(pair)?;
        }
        let flags = [
            ("s", &self.s),
            ("cutoff", &self.cutoff),
            ("n-max", &self.n_max),
            ("n", &self.n),
            ("height", &self.height),
            ("order", &self.order),
            ("tol", &self.tol),
            ("gamma1", &self.gamma1),
            ("gamma2", &self.gamma2),
            ("tau", &self.tau),
            ("t", &self.t),
            ("modulus", &self.modulus),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                over.set(k, v);
            }
        }
        Ok(s.merged(&over))
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    hecke_cli::configure_threads()?;
    match cli.command {
        Command::List => {
            println!("suites:");
            for s in suites::SUITES {
                println!("  {:<22} {}", s.name, s.about);
            }
            println!("objects:");
            for (name, about) in eval::OBJECTS {
                println!("  {name:<22} {about}");
            }
            Ok(true)
        }
        Command::Eval { object, params, format } => {
            let out = eval::evaluate(&object, &params.settings(Settings::new())?)?;
            let text = match format.as_str() {
                "text" => out.text(),
                "json" => out.json(),
                other => return Err(CliError::Domain(format!("unknown format {other:?} (text|json)"))),
            };
            emit(&text, params.out.as_deref())?;
            Ok(true)
        }
        Command::Verify { suite, params, format, replay, no_timing } => {
            let (name, base) = match &replay {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    let old = from_json(&text)?;
                    if let Some(s) = &suite {
                        if *s != old.identity {
                            return Err(CliError::Domain(format!(
                                "suite {s:?} does not match replayed report {:?}",
                                old.identity
                            )));
                        }
                    }
                    (old.identity.clone(), Settings::from(old.settings))
                }
                None => match suite {
                    Some(s) => (s, Settings::new()),
                    None => return Err(CliError::Domain("verify needs a suite name or --replay".into())),
                },
            };
            let report = suites::run(&name, &params.settings(base)?, !no_timing)?;
            emit(&render(&report, format)?, params.out.as_deref())?;
            if !report.pass {
                eprintln!(
                    "verification failed: {} residual {:.3e} > tolerance {:.3e}",
                    report.identity, report.residual.0, report.tolerance.0
                );
            }
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", e.line());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
