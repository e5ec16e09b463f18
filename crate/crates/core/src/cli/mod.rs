//! Command-line front end: `validate`, `analyze` and `corpus`.
//!
//! Exit codes: 0 pass or yes, 1 no or failed check, 2 input or usage error,
//! 3 undecided within budget.

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::corpus::{self, run_suite, Injection, Payload};
use crate::exactlin::Field;
use crate::search::{parallel_from_env, SearchConfig};

pub use format::{InputError, StructureFile};
pub use report::{analyze_entwining, analyze_extension, analyze_factorization, Report, QUESTIONS};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "entwine",
    version,
    about = "Separability and Frobenius properties by exact linear algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Copy)]
struct Budget {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest number of candidates enumerated exhaustively.
    #[arg(long, default_value_t = 1 << 16)]
    enum_budget: u64,
    /// Random candidates tried after enumeration.
    #[arg(long, default_value_t = 64)]
    trials: u64,
}

impl Budget {
    fn config(self) -> SearchConfig {
        SearchConfig {
            enum_budget: self.enum_budget,
            trials: self.trials,
            seed: self.seed,
            parallel: parallel_from_env(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every validator that applies to the structures in a file.
    Validate {
        /// Structure file in JSON.
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Answer one question about the structure in a file.
    Analyze {
        /// Structure file in JSON.
        path: PathBuf,
        /// F-sep, G-sep, FG-frob, Fp-sep, Gp-sep, FpGp-frob, cross-check,
        /// ext-split, ext-sep, ext-frob, smash-over-A or smash-over-B.
        #[arg(long)]
        question: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        budget: Budget,
        /// Include wall-clock time in the report (makes output non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Built-in examples.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cross-module equivalence suite.
    Run {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Fields to run over, e.g. F2 or Q; defaults to F2 and F3.
        #[arg(long = "field")]
        fields: Vec<String>,
        #[command(flatten)]
        budget: Budget,
        /// Replace one entry of the first field with the mutation of this index.
        #[arg(long, hide = true)]
        inject_mutation: Option<usize>,
    },
    /// Print an entry in the structure file format.
    Export {
        name: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

struct Failure(i32, String);

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure(EXIT_INPUT, e.to_string())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match writeln!(out, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure(EXIT_FAIL, e.to_string()))
        }
        _ => Ok(()),
    }
}

fn load(path: &PathBuf) -> Result<Vec<Payload>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|source| {
        input(InputError::Io {
            path: path.display().to_string(),
            source,
        })
    })?;
    StructureFile::from_json(&text)
        .and_then(|f| f.payloads())
        .map_err(input)
}

fn parse_field(s: &str) -> Result<Field, Failure> {
    Field::parse_label(s).map_err(input)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Validate { path, format } => validate(&path, format, out),
        Command::Analyze {
            path,
            question,
            format,
            budget,
            timing,
        } => analyze(&path, &question, format, budget.config(), timing, out),
        Command::Corpus { command } => match command {
            CorpusCommand::List { format } => list(format, out),
            CorpusCommand::Run {
                format,
                fields,
                budget,
                inject_mutation,
            } => suite(format, &fields, budget.config(), inject_mutation, out),
            CorpusCommand::Export {
                name,
                field,
                output,
            } => export(&name, &field, output, out),
        },
    }
}

fn validate(path: &PathBuf, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let payloads = load(path)?;
    let reports: Vec<_> = payloads.iter().map(|p| (p.kind(), p.check())).collect();
    let valid = reports.iter().all(|(_, r)| r.is_valid());
    match format {
        Format::Json => {
            let v = json!({
                "path": path.display().to_string(),
                "valid": valid,
                "structures": reports
                    .iter()
                    .map(|(k, r)| json!({ "kind": k, "valid": r.is_valid(), "report": r }))
                    .collect::<Vec<_>>(),
            });
            emit(
                out,
                &serde_json::to_string_pretty(&v).expect("serializable"),
            )?;
        }
        Format::Text => {
            for (k, r) in &reports {
                if r.is_valid() {
                    emit(out, &format!("{k}: valid"))?;
                } else {
                    emit(out, &format!("{k}: INVALID\n{r}"))?;
                }
            }
        }
    }
    Ok(if valid { EXIT_PASS } else { EXIT_FAIL })
}

fn analyze(
    path: &PathBuf,
    id: &str,
    format: Format,
    cfg: SearchConfig,
    timing: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let (_, needs, _) = report::question(id).ok_or_else(|| {
        let known: Vec<_> = QUESTIONS.iter().map(|q| q.0).collect();
        input(format!(
            "unknown question `{id}`; expected one of {}",
            known.join(", ")
        ))
    })?;
    let payloads = load(path)?;
    let payload = payloads
        .iter()
        .find(|p| match needs {
            "entwining" => matches!(p, Payload::Entwining(_) | Payload::DoiHopf(_)),
            "ring_extension" => matches!(p, Payload::Extension(_)),
            _ => matches!(p, Payload::Factorization(_)),
        })
        .ok_or_else(|| {
            input(format!(
                "question `{id}` needs a structure of kind `{needs}` in the file"
            ))
        })?;
    let check = payload.check();
    if !check.is_valid() {
        return Err(Failure(
            EXIT_FAIL,
            format!("the {} fails validation\n{check}", payload.kind()),
        ));
    }
    let start = Instant::now();
    let result = match payload {
        Payload::Extension(x) => analyze_extension(id, x, &cfg),
        Payload::Factorization(x) => analyze_factorization(id, x, &cfg),
        p => analyze_entwining(id, &p.entwining().expect("validated"), &cfg),
    };
    let mut rep = result.map_err(|e| match e {
        crate::Error::Contract(m) => Failure(EXIT_INPUT, m),
        e => Failure(EXIT_FAIL, e.to_string()),
    })?;
    if timing {
        rep.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    emit(
        out,
        &match format {
            Format::Json => rep.to_json(),
            Format::Text => rep.to_text().trim_end().to_string(),
        },
    )?;
    Ok(rep.exit_code())
}

fn list(format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let entries = corpus::all(Field::Rational);
    match format {
        Format::Json => {
            let v: Vec<_> = entries
                .iter()
                .map(|e| json!({ "name": e.name, "kind": e.payload.kind(), "note": e.note }))
                .collect();
            emit(
                out,
                &serde_json::to_string_pretty(&v).expect("serializable"),
            )?;
        }
        Format::Text => {
            for e in &entries {
                emit(
                    out,
                    &format!("{:<20} {:<15} {}", e.name, e.payload.kind(), e.note),
                )?;
            }
        }
    }
    Ok(EXIT_PASS)
}

fn suite(
    format: Format,
    fields: &[String],
    cfg: SearchConfig,
    inject: Option<usize>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let fields: Vec<Field> = if fields.is_empty() {
        vec![Field::Prime { p: 2 }, Field::Prime { p: 3 }]
    } else {
        fields
            .iter()
            .map(|s| parse_field(s))
            .collect::<Result<_, _>>()?
    };
    let injection = inject.map(|index| Injection {
        field: fields[0],
        index,
    });
    let rep = run_suite(&fields, &cfg, injection);
    match format {
        Format::Json => {
            let v = serde_json::to_value(&rep).expect("serializable");
            emit(
                out,
                &serde_json::to_string_pretty(&v).expect("serializable"),
            )?;
        }
        Format::Text => {
            for r in &rep.rows {
                let mark = if r.pass { "pass" } else { "FAIL" };
                emit(
                    out,
                    &format!(
                        "{mark}  {:<4} {:<20} {:<20} {}",
                        r.field, r.entry, r.check, r.detail
                    ),
                )?;
            }
            emit(
                out,
                &format!("{} passed, {} failed", rep.passed, rep.failed),
            )?;
        }
    }
    Ok(if rep.all_pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn export(
    name: &str,
    field: &str,
    output: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let f = parse_field(field)?;
    let entry = corpus::builtin(name, f).map_err(input)?;
    let text = StructureFile::from_payload(&entry.payload).to_json();
    match output {
        Some(p) => {
            std::fs::write(&p, text + "\n").map_err(|e| Failure(EXIT_FAIL, e.to_string()))?
        }
        None => emit(out, &text)?,
    }
    Ok(EXIT_PASS)
}
