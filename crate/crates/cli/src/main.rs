//! Command-line front end: generate arithmetic circuits, optimize them,
//! report resources and check equivalence.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use zxopt::arithgen::{conditional_adder, multiplier, toffoli_clifford_t, ArithError};
use zxopt::pipeline::{optimize_with, verify_circuits, PipelineError, RunReport, Verification, VerifyMode};
use zxopt::qasm::{emit_qasm, parse_qasm_document, QasmError};
use zxopt::verify::VerifyError;
use zxopt::{Circuit, ResourceReport};

const EXIT_CODES: &str = "\
Exit codes:
  0  success; for opt and verify the circuits were found equivalent
  1  circuits not equivalent, or the check could not decide
  2  invalid command line
  3  file could not be read or written
  4  input is not valid QASM
  5  circuit too wide for the requested check
  6  optimization pipeline failed";

#[derive(Parser)]
#[command(name = "zxopt", version, about = "T-count optimization of Clifford+T circuits with the ZX-calculus")]
#[command(after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated circuit as QASM.
    Gen {
        kind: Kind,
        /// Operand width in bits (ignored for toffoli).
        #[arg(long)]
        bits: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Optimize a circuit and report resources before and after.
    Opt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Write one line per applied rewrite to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_verify: bool,
    },
    /// Report resource counts of a circuit.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check two circuits for equality up to global phase.
    Verify {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Defaults to unitary up to 12 qubits, basis up to 14, zx above.
        #[arg(long)]
        mode: Option<Mode>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Multiplier,
    Adder,
    Toffoli,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Unitary,
    Basis,
    Zx,
}

impl From<Mode> for VerifyMode {
    fn from(m: Mode) -> VerifyMode {
        match m {
            Mode::Unitary => VerifyMode::Unitary,
            Mode::Basis => VerifyMode::Basis,
            Mode::Zx => VerifyMode::Zx,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, QasmError),
    Width(VerifyError),
    Pipeline(PipelineError),
    /// The check ran and did not confirm equivalence.
    Verdict(Verification),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verdict(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(..) => 3,
            Failure::Parse(..) => 4,
            Failure::Width(_) => 5,
            Failure::Pipeline(_) => 6,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Parse(p, e) => format!("{}:{e}", p.display()),
            Failure::Width(e) => e.to_string(),
            Failure::Pipeline(e) => e.to_string(),
            Failure::Verdict(v) => format!("verification: {}", verdict_name(*v)),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Failure {
        match e {
            VerifyError::TooWide { .. } => Failure::Width(e),
            VerifyError::WidthMismatch(..) => Failure::Verdict(Verification::NotEquivalent),
            e => Failure::Pipeline(PipelineError::Verify(e)),
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Failure {
        match e {
            PipelineError::Verify(v) => v.into(),
            e => Failure::Pipeline(e),
        }
    }
}

impl From<ArithError> for Failure {
    fn from(e: ArithError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    let doc = parse_qasm_document(&text).map_err(|e| Failure::Parse(path.to_path_buf(), e))?;
    for w in &doc.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(doc.circuit)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn verdict_name(v: Verification) -> String {
    match v {
        Verification::Skipped => "skipped".into(),
        Verification::Equivalent => "equivalent".into(),
        Verification::Unknown => "unknown".into(),
        Verification::Checked(n) => format!("equal on {n} basis inputs"),
        Verification::NotEquivalent => "not equivalent".into(),
    }
}

/// Rows of the resource table, labelled as in the usual published layout.
fn rows(r: &ResourceReport) -> [(&'static str, usize); 7] {
    [
        ("Number Of Qubits", r.qubit_count),
        ("Number of Gates", r.total_gates),
        ("T-gate count", r.t_count),
        ("Clifford Gate count", r.clifford_count),
        ("Two-qubit gates", r.two_qubit_count),
        ("Hadamard gates", r.hadamard_count),
        ("Other gates", r.other_count),
    ]
}

fn stats_table(r: &ResourceReport) -> String {
    let mut s = String::new();
    for (name, v) in rows(r) {
        writeln!(s, "{name:<20} {v:>10}").unwrap();
    }
    s
}

fn run_table(r: &RunReport) -> String {
    let mut s = format!("{:<20} {:>10} {:>10}\n", "", "Before", "After");
    for ((name, b), (_, a)) in rows(&r.before).into_iter().zip(rows(&r.after)) {
        writeln!(s, "{name:<20} {b:>10} {a:>10}").unwrap();
    }
    writeln!(s, "T reduction          {:>9.1}%", r.t_reduction_percent).unwrap();
    writeln!(s, "Wall time            {:>8} ms", r.wall_time_ms).unwrap();
    writeln!(s, "Verification         {}", verdict_name(r.verification)).unwrap();
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { kind, bits, out } => {
            let bits = || bits.ok_or_else(|| Failure::Usage("--bits is required for this circuit".into()));
            let circuit = match kind {
                Kind::Multiplier => multiplier(bits()?)?,
                Kind::Adder => conditional_adder(bits()?)?,
                Kind::Toffoli => toffoli_clifford_t(),
            };
            write_file(&out, &emit_qasm(&circuit))
        }
        Command::Opt { input, out, trace, json, no_verify } => {
            let circuit = read_circuit(&input)?;
            let mode = if no_verify { VerifyMode::Off } else { VerifyMode::Auto };
            let result = optimize_with(&circuit, mode, trace.is_some())?;
            write_file(&out, &emit_qasm(&result.circuit))?;
            if let Some(path) = trace {
                let text: String = result.trace.iter().map(|r| format!("{r}\n")).collect();
                write_file(&path, &text)?;
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&result.report).unwrap());
            } else {
                print!("{}", run_table(&result.report));
            }
            match result.report.verification {
                Verification::Unknown | Verification::NotEquivalent => Err(Failure::Verdict(result.report.verification)),
                _ => Ok(()),
            }
        }
        Command::Stats { input, json } => {
            let r = read_circuit(&input)?.count_resources();
            if json {
                println!("{}", serde_json::to_string_pretty(&r).unwrap());
            } else {
                print!("{}", stats_table(&r));
            }
            Ok(())
        }
        Command::Verify { a, b, mode } => {
            let (ca, cb) = (read_circuit(&a)?, read_circuit(&b)?);
            if ca.qubit_count() != cb.qubit_count() {
                println!("{}", verdict_name(Verification::NotEquivalent));
                return Err(Failure::Verdict(Verification::NotEquivalent));
            }
            let v = verify_circuits(&ca, &cb, mode.map_or(VerifyMode::Auto, Into::into))?;
            println!("{}", verdict_name(v));
            if v.passed() {
                Ok(())
            } else {
                Err(Failure::Verdict(v))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match f {
                Failure::Verdict(_) => eprintln!("{}", f.message()),
                _ => eprintln!("error: {}", f.message()),
            }
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_line_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn failures_have_distinct_codes() {
        let io = Failure::Io(PathBuf::new(), std::io::Error::other("x"));
        let parse = Failure::Parse(PathBuf::new(), QasmError::NoQubits);
        let width = Failure::Width(VerifyError::TooWide { qubits: 30, limit: 26 });
        let codes = [io.code(), parse.code(), width.code(), Failure::Usage(String::new()).code()];
        assert_eq!(codes, [3, 4, 5, 2]);
    }
}
