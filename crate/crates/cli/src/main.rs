//! `procsat`: translate bit-level programs into CNF/ANF/DNF, run them,
//! check encodings against the interpreter and invert them with a solver.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use procsat_core::bits::{self, format_ports, input_ports, output_ports};
use procsat_core::encode::{emit_anf, emit_dnf, map_text, minimize::DEFAULT_LIMIT, write_dimacs};
use procsat_core::harness::{self, Inversion};
use procsat_core::solve::DEFAULT_DECISION_LIMIT;
use procsat_core::symbex::SymbexConfig;
use procsat_core::{check_source, compile, Compiled, HarnessError, Options, SolverChoice};

const EXIT_ERROR: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "procsat", version, about = "Propositional encodings of bit-level programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the encoding of a program (plus a .map file for CNF).
    Translate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Cnf)]
        format: Format,
        /// Output path; `-` prints to stdout. Defaults to the source path
        /// with the format's extension.
        #[arg(long)]
        out: Option<PathBuf>,
        /// DNF: list every minterm instead of a minimized cover.
        #[arg(long)]
        dnf_full: bool,
    },
    /// Execute a program on concrete inputs.
    Run {
        #[command(flatten)]
        common: Common,
        /// Input values, e.g. `reg=0x5A3F7:19` (repeatable).
        #[arg(long, required = true)]
        input: Vec<String>,
    },
    /// Compare the CNF with the interpreter on random inputs.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        solving: Solving,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Find an input that produces the given output.
    Invert {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        solving: Solving,
        /// Output values, e.g. `stream=0x1F:5` (repeatable).
        #[arg(long, required = true)]
        output: Vec<String>,
    },
}

#[derive(Args)]
struct Common {
    /// Program source file.
    file: PathBuf,
    /// Override a global int constant, e.g. `--set len=64`.
    #[arg(long = "set", value_name = "NAME=VALUE", value_parser = parse_override)]
    set: Vec<(String, i64)>,
    /// Replace small definitions by minimized two-level forms.
    #[arg(long)]
    minimize: bool,
    /// Largest support (in variables) handled by the minimizer.
    #[arg(long, default_value_t = DEFAULT_LIMIT as u16, value_parser = clap::value_parser!(u16).range(2..=16))]
    limit: u16,
    /// Inline auxiliary variables that are used only once.
    #[arg(long)]
    forward: bool,
    /// Abort translation after this many loop iterations.
    #[arg(long, default_value_t = SymbexConfig::default().max_iterations)]
    max_iterations: u64,
    /// Abort translation after this many definitions.
    #[arg(long, default_value_t = SymbexConfig::default().max_definitions)]
    max_definitions: usize,
}

#[derive(Args)]
struct Solving {
    /// `internal`, or the path of a solver printing SAT-competition output.
    #[arg(long, default_value = "internal")]
    solver: String,
    /// Decision limit of the internal solver.
    #[arg(long, default_value_t = DEFAULT_DECISION_LIMIT)]
    max_decisions: u64,
}

impl Solving {
    fn choice(&self) -> SolverChoice {
        match self.solver.as_str() {
            "internal" => SolverChoice::Internal {
                decision_limit: self.max_decisions,
            },
            path => SolverChoice::External(PathBuf::from(path)),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Cnf,
    Anf,
    Dnf,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Cnf => "cnf",
            Format::Anf => "anf",
            Format::Dnf => "dnf",
        }
    }
}

fn parse_override(s: &str) -> Result<(String, i64), String> {
    let (name, value) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let value = value
        .trim()
        .parse()
        .map_err(|_| format!("`{value}` is not an integer"))?;
    Ok((name.trim().to_string(), value))
}

/// Error already reported, carrying the exit code.
struct Exit(u8);

fn fail(msg: impl std::fmt::Display) -> Exit {
    eprintln!("error: {msg}");
    Exit(EXIT_ERROR)
}

fn load(common: &Common) -> Result<Compiled, Exit> {
    let file = common.file.display().to_string();
    let source = std::fs::read_to_string(&common.file).map_err(|e| fail(format!("{file}: {e}")))?;
    let opts = Options {
        overrides: common.set.clone(),
        minimize: common.minimize.then_some(common.limit as usize),
        symbex: SymbexConfig {
            forward: common.forward,
            max_iterations: common.max_iterations,
            max_definitions: common.max_definitions,
        },
    };
    let compiled = compile(&source, &opts).map_err(|e| report(&file, e))?;
    for w in &compiled.program.warnings {
        eprintln!("{}", w.render(&file));
    }
    Ok(compiled)
}

fn report(file: &str, e: HarnessError) -> Exit {
    let code = if e.is_resource_limit() {
        EXIT_RESOURCE
    } else if matches!(e, HarnessError::BadPreimage { .. }) {
        EXIT_VERIFY
    } else {
        EXIT_ERROR
    };
    match e {
        HarnessError::Diagnostic(d) => eprintln!("{}", d.render(file)),
        e => eprintln!("{file}: error: {e}"),
    }
    Exit(code)
}

fn summary(c: &Compiled) -> String {
    format!(
        "vars={} clauses={} defs={}",
        c.cnf.num_vars,
        c.cnf.len(),
        c.encoding.definitions.len()
    )
}

fn write_file(path: &Path, text: &str) -> Result<(), Exit> {
    std::fs::write(path, text).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn translate(common: &Common, format: Format, out: Option<PathBuf>, dnf_full: bool) -> Result<(), Exit> {
    let c = load(common)?;
    let text = match format {
        Format::Cnf => write_dimacs(&c.cnf),
        Format::Anf => emit_anf(&c.encoding).to_string(),
        Format::Dnf => emit_dnf(&c.encoding, dnf_full).map_err(fail)?.to_string(),
    };
    let out = out.unwrap_or_else(|| common.file.with_extension(format.extension()));
    if out.as_os_str() == "-" {
        print!("{text}");
        eprintln!("{}", summary(&c));
    } else {
        write_file(&out, &text)?;
        write_file(&out.with_extension("map"), &map_text(&c.cnf))?;
        println!("{}", summary(&c));
    }
    Ok(())
}

fn parse_values(items: &[String]) -> Result<Vec<bits::NamedBits>, Exit> {
    let mut all = Vec::new();
    for s in items {
        all.extend(bits::parse_list(s).map_err(fail)?);
    }
    Ok(all)
}

fn run(common: &Common, input: &[String]) -> Result<(), Exit> {
    let file = common.file.display().to_string();
    let source = std::fs::read_to_string(&common.file).map_err(|e| fail(format!("{file}: {e}")))?;
    let program = check_source(&source, &common.set).map_err(|d| report(&file, HarnessError::Diagnostic(d)))?;
    for w in &program.warnings {
        eprintln!("{}", w.render(&file));
    }
    let ins = bits::assemble(&input_ports(&program), &parse_values(input)?).map_err(fail)?;
    let limit = common.max_iterations;
    let r = procsat_core::interp::run_with_limit(&program, &ins, limit).map_err(|e| report(&file, e.into()))?;
    println!("{}", format_ports(&output_ports(&program), &r.outputs));
    Ok(())
}

fn verify(common: &Common, solving: &Solving, trials: u64, seed: u64) -> Result<(), Exit> {
    let c = load(common)?;
    let file = common.file.display().to_string();
    let r = harness::verify(&c, trials, seed, &solving.choice()).map_err(|e| report(&file, e))?;
    println!("program={file}");
    println!("minimize={}", common.minimize);
    println!("{}", summary(&c));
    print!("{}", r.render(&c.program));
    if r.failures > 0 {
        return Err(Exit(EXIT_VERIFY));
    }
    Ok(())
}

fn invert(common: &Common, solving: &Solving, output: &[String]) -> Result<(), Exit> {
    let c = load(common)?;
    let file = common.file.display().to_string();
    let outs = bits::assemble(&output_ports(&c.program), &parse_values(output)?).map_err(fail)?;
    match harness::invert(&c, &outs, &solving.choice()).map_err(|e| report(&file, e))? {
        Inversion::Found(ins) => {
            println!("result=found");
            for nb in bits::split(&input_ports(&c.program), &ins) {
                println!("{}", bits::format_assignment(&nb.name, &nb.bits));
            }
        }
        Inversion::NoPreimage => println!("result=unsat"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Translate {
            common,
            format,
            out,
            dnf_full,
        } => translate(common, *format, out.clone(), *dnf_full),
        Command::Run { common, input } => run(common, input),
        Command::Verify {
            common,
            solving,
            trials,
            seed,
        } => verify(common, solving, *trials, *seed),
        Command::Invert {
            common,
            solving,
            output,
        } => invert(common, solving, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code)) => ExitCode::from(code),
    }
}
