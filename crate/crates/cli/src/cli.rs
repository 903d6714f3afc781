//! Argument handling, output writing and exit codes.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dot::to_dot;
use crate::error::{CliError, Result};
use crate::program::{parse_orders, parse_spec, SpecProgram, Task};
use crate::run::{run_program, Config, Outcome};
use crate::syntax::parse_expr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Dot,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "cca", version, about = "Colour-preserving automorphisms of Cayley colour graphs")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// Output formats to write.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub emit: Emit,
    /// Directory for output files; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record a replay of every witness in the report.
    #[arg(long, global = true)]
    pub verify: bool,
    /// No parallelism and zeroed timings, for byte-identical output.
    #[arg(long, global = true)]
    pub seedless: bool,
    /// Exit with status 2 when a resource cap leaves the verdict unknown.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether one Cayley graph is CCA.
    #[command(name = "check-graph")]
    CheckGraph { group: String, connection: String },
    /// Decide whether every connected Cayley graph of a group is CCA.
    #[command(name = "check-group")]
    CheckGroup {
        group: String,
        /// Largest number of connection-set candidates to enumerate.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Decide whether (G, B) is a complete colour pair.
    #[command(name = "pair")]
    Pair { g: String, b: String },
    /// Non-CCA witness on the line graph of the subdivided K_{n,n}.
    #[command(name = "witness-thm31")]
    WitnessThm31 {
        #[arg(long)]
        n: usize,
    },
    /// Non-CCA witness on D_2n x D_2n.
    #[command(name = "witness-prop33")]
    WitnessProp33 {
        #[arg(long)]
        n: usize,
    },
    /// Arc-regular transport harness on K_{n,n}.
    #[command(name = "harness-4-10")]
    Harness {
        #[arg(long)]
        n: usize,
    },
    /// CCA verdicts for the built-in groups with orders in a..b.
    #[command(name = "census")]
    Census {
        #[arg(long)]
        orders: String,
    },
    /// Run a program file of declarations and tasks.
    #[command(name = "run")]
    Run { file: PathBuf },
}

fn program(command: &Command) -> Result<SpecProgram> {
    let task = match command {
        Command::CheckGraph { group, connection } => {
            Task::CheckGraph { group: parse_expr(group)?, connection: connection.trim().to_string() }
        }
        Command::CheckGroup { group, cap } => Task::CheckGroup { group: parse_expr(group)?, cap: *cap },
        Command::Pair { g, b } => Task::Pair { g: parse_expr(g)?, b: parse_expr(b)? },
        Command::WitnessThm31 { n } => Task::WitnessThm31 { n: *n },
        Command::WitnessProp33 { n } => Task::WitnessProp33 { n: *n },
        Command::Harness { n } => Task::Harness { n: *n },
        Command::Census { orders } => {
            let (from, to) = parse_orders(orders)?;
            Task::Census { from, to }
        }
        Command::Run { file } => return parse_spec(&fs::read_to_string(file)?),
    };
    Ok(SpecProgram { declarations: Vec::new(), tasks: vec![task] })
}

fn file_stem(k: usize, total: usize, o: &Outcome) -> String {
    let command = o.report.task.split_whitespace().next().unwrap_or("task");
    if total == 1 {
        command.to_string()
    } else {
        format!("{:02}-{command}", k + 1)
    }
}

/// Write the requested artifacts to `out` or to `stdout`.
pub fn emit(outcomes: &[Outcome], format: Emit, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let json = matches!(format, Emit::Json | Emit::Both);
    let dot = matches!(format, Emit::Dot | Emit::Both);
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
    }
    if json {
        let text = if outcomes.len() == 1 {
            serde_json::to_string_pretty(&outcomes[0].report)?
        } else {
            serde_json::to_string_pretty(&outcomes.iter().map(|o| &o.report).collect::<Vec<_>>())?
        };
        match out {
            Some(dir) if outcomes.len() == 1 => fs::write(dir.join(format!("{}.json", file_stem(0, 1, &outcomes[0]))), text + "\n")?,
            Some(dir) => {
                for (k, o) in outcomes.iter().enumerate() {
                    let text = serde_json::to_string_pretty(&o.report)?;
                    fs::write(dir.join(format!("{}.json", file_stem(k, outcomes.len(), o))), text + "\n")?;
                }
            }
            None => writeln!(stdout, "{text}")?,
        }
    }
    if dot {
        for (k, o) in outcomes.iter().enumerate() {
            let Some(cg) = &o.graph else { continue };
            let name = file_stem(k, outcomes.len(), o);
            let text = to_dot(&name, cg);
            match out {
                Some(dir) => fs::write(dir.join(format!("{name}.dot")), text)?,
                None => write!(stdout, "{text}")?,
            }
        }
    }
    Ok(())
}

/// Run the tool on `argv` and return the exit code.
pub fn main_with(argv: Vec<OsString>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 1;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match execute(&args, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(args: &Args, stdout: &mut dyn Write) -> Result<i32> {
    let mut cfg = Config::from_env()?;
    cfg.seedless = args.seedless;
    cfg.verify = args.verify;
    cfg.strict = args.strict;
    let p = program(&args.command)?;
    if p.tasks.is_empty() {
        return Err(CliError::Usage("the program contains no tasks".into()));
    }
    let outcomes = run_program(&p, &cfg)?;
    emit(&outcomes, args.emit, args.out.as_deref(), stdout)?;
    Ok(outcomes.iter().map(|o| o.exit_code(&cfg)).max().unwrap_or(0))
}
