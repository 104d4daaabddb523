//! `sally-lab`: Hilbert coefficients, reduction numbers and Sally-module
//! checks for monomial ideals, driven by a JSON input document.

mod commands;
mod input;

use std::io::{IsTerminal, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sally_core::reproduce::ReproParams;
use sally_core::Error;

use commands::{Output, Overrides};
use input::{InputDocument, ParseError};

#[derive(Parser, Debug)]
#[command(name = "sally-lab", version, about = "Hilbert coefficients and Sally-module checks for monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input document (JSON); read from stdin when omitted.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Emit the structured report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Largest table index for Hilbert and Sally tables.
    #[arg(long = "N", global = true, value_name = "INT")]
    n: Option<usize>,

    /// Largest reduction number tried.
    #[arg(long, global = true, value_name = "INT")]
    cap: Option<usize>,

    /// Exit with status 1 when a verified inequality is strict.
    #[arg(long, global = true)]
    expect_equality: bool,

    /// Parameter s of the semigroup family (paper-examples ex3.8).
    #[arg(long, global = true, value_name = "INT")]
    s: Option<usize>,

    /// Generator degree t for lemma3.6 (verify and paper-examples).
    #[arg(long, global = true, value_name = "INT")]
    t: Option<usize>,

    /// Parameter m of the final example.
    #[arg(long, global = true, value_name = "INT")]
    m: Option<usize>,

    /// Dimension d of the final example.
    #[arg(long, global = true, value_name = "INT")]
    d: Option<usize>,

    /// Use precomputed constants instead of live ideals (`final-example`).
    #[arg(long, global = true, value_name = "NAME")]
    fixture: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// l(A/I)
    Length,
    /// Generators and colength of I^k (k = options.exponent, default 2)
    Power,
    /// Integral closure through the Newton polyhedron
    Closure,
    /// Hilbert-Samuel table l(A/I^(n+1)) for n <= N
    Hilbert,
    /// Fitted Hilbert coefficients e_0..e_d and postulation number
    Coeffs,
    /// Reduction number of I with respect to Q
    Reduction,
    /// Lengths of S_n, L_n and C_n
    Sally,
    /// Bounds on depth G(I)
    Depth,
    /// Run one theorem check
    Verify { id: String },
    /// Rebuild a worked example and compare it with its known constants
    PaperExamples { which: String },
}

const EXIT_STRICT: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_HYPOTHESIS: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<ParseError>().is_some() || err.downcast_ref::<std::io::Error>().is_some() {
        return EXIT_PARSE;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::Arity { .. }
            | Error::InvalidAmbient(_)
            | Error::NotInSemigroup(_)
            | Error::NotMPrimary { .. }
            | Error::AmbientMismatch
            | Error::InvalidInput(_),
        ) => EXIT_PARSE,
        Some(
            Error::HypothesisFailed { .. }
            | Error::MultiplicityMismatch { .. }
            | Error::QNotContained
            | Error::QNotParameterShaped(_)
            | Error::NotAReduction { .. }
            | Error::NotContained
            | Error::SemigroupAmbientUnsupported,
        ) => EXIT_HYPOTHESIS,
        _ => EXIT_INTERNAL,
    }
}

fn read_document(path: Option<&PathBuf>) -> anyhow::Result<InputDocument> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| ParseError(format!("{}: {e}", p.display())))?,
        None => {
            let mut stdin = std::io::stdin();
            if stdin.is_terminal() {
                return Err(ParseError("no input: pass --in FILE or pipe a document on stdin".into()).into());
            }
            let mut buf = String::new();
            stdin.read_to_string(&mut buf)?;
            buf
        }
    };
    Ok(input::parse(&text)?)
}

fn emit(out: &Output, json: bool) {
    let text = if json {
        serde_json::to_string_pretty(&out.value).expect("values serialize")
    } else {
        out.text.clone()
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let ov = Overrides {
        n: cli.n,
        cap: cli.cap,
        t: cli.t,
        params: ReproParams { s: cli.s, t: cli.t, m: cli.m, d: cli.d, n: cli.n },
    };
    match &cli.command {
        Command::PaperExamples { which } => {
            let (out, rep) = commands::paper_examples(which, &ov)?;
            emit(&out, cli.json);
            rep.into_result()?;
            Ok(0)
        }
        Command::Verify { id } => {
            let doc = match (&cli.fixture, &cli.input) {
                (Some(_), None) => None,
                _ => Some(read_document(cli.input.as_ref())?),
            };
            let (out, rep) = commands::verify(id, doc.as_ref(), cli.fixture.as_deref(), &ov)?;
            let json = cli.json || doc.as_ref().and_then(|d| d.options.json).unwrap_or(false);
            emit(&out, json);
            Ok(if cli.expect_equality && !rep.equality { EXIT_STRICT } else { 0 })
        }
        cmd => {
            let doc = read_document(cli.input.as_ref())?;
            let out = match cmd {
                Command::Length => commands::length(&doc)?,
                Command::Power => commands::power(&doc)?,
                Command::Closure => commands::closure(&doc)?,
                Command::Hilbert => commands::hilbert(&doc, &ov)?,
                Command::Coeffs => commands::coeffs(&doc, &ov)?,
                Command::Reduction => commands::reduction(&doc, &ov)?,
                Command::Sally => commands::sally_table(&doc, &ov)?,
                Command::Depth => commands::depth(&doc, &ov)?,
                Command::Verify { .. } | Command::PaperExamples { .. } => unreachable!(),
            };
            emit(&out, cli.json || doc.options.json.unwrap_or(false));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
