//! The `qweyl` command line. Exit codes: 0 success, 1 verification failure,
//! 2 usage error.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use qweyl_core::operator::apply_word;
use qweyl_core::{iqg, Crystal, DiagramSpec, ModuleWitness, OscillatorTable, SatakeDiagram, ScalarQ};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::export::{self, ExportError, Format};
use crate::parse::{self, ParseError};
use crate::report::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qweyl", version, about = "Exact verification for modified q-Weyl algebras and iquantum groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check defining relations on every monomial up to a degree.
    Verify {
        /// Diagram, e.g. `I:r=1` or `A1AFF`.
        #[arg(long, value_parser = DiagramSpec::from_str)]
        diagram: DiagramSpec,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Replace `ς_i`, e.g. `1=-q^-3`; repeatable.
        #[arg(long, value_name = "I=SCALAR", allow_hyphen_values = true)]
        varsigma: Vec<String>,
        /// Replace `ξ_k`, e.g. `2=-2`; repeatable.
        #[arg(long, value_name = "K=INT", allow_hyphen_values = true)]
        xi: Vec<String>,
        /// Also write the report as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Apply a word to a polynomial through the diagram's realization.
    Act {
        #[arg(long, value_parser = DiagramSpec::from_str)]
        diagram: DiagramSpec,
        /// Tokens `e<i> f<i> k<i> k<i>^-1 t<i> B<i> H<i> d<i> x<i> m<i> m<i>^-1`;
        /// the rightmost acts first.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Emit the crystal graph of `P_s`.
    Crystal {
        #[arg(long, value_parser = DiagramSpec::from_str)]
        diagram: DiagramSpec,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value = "dot", value_parser = Format::from_str)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Print and check the word linking `X^a` and `X_0^s`.
    Witness {
        #[arg(long, value_parser = DiagramSpec::from_str)]
        diagram: DiagramSpec,
        /// Exponent vector, e.g. `1,2`.
        #[arg(long)]
        monomial: String,
        #[arg(long, value_enum, default_value_t = WitnessDirection::Up)]
        direction: WitnessDirection,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessDirection {
    /// `e`-word from `X^a` to `X_0^s`.
    Up,
    /// `f`-word from `X_0^s` to `X^a`.
    Down,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qweyl_core::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Export(#[from] ExportError),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK }
    }
}

fn write_json(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => Ok(()),
    }
}

fn usage(input: &str, message: &str) -> CliError {
    CliError::Parse(ParseError { message: message.into(), offset: 0, input: input.into() })
}

fn split_override(o: &str) -> Result<(usize, &str), CliError> {
    let (i, v) = o.split_once('=').ok_or_else(|| usage(o, "expected `<index>=<value>`"))?;
    let i = i.trim().parse().map_err(|_| usage(o, "expected a nonnegative index"))?;
    Ok((i, v))
}

fn expanded(c: &ScalarQ) -> String {
    match c.as_laurent() {
        Some(l) => l.to_string(),
        None => c.to_string(),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify { diagram, max_degree, suite, varsigma, xi, json } => {
            let mut d = SatakeDiagram::from_spec(*diagram)?;
            let mut label = diagram.to_string();
            for o in varsigma {
                let (i, v) = split_override(o)?;
                let v = parse::parse_scalar(v)?;
                d = d.with_varsigma(i, v.clone())?;
                label.push_str(&format!(" varsigma{i}={v}"));
            }
            for o in xi {
                let (k, v) = split_override(o)?;
                let v: i32 = v.trim().parse().map_err(|_| usage(o, "expected an integer value"))?;
                d = d.with_xi(k, v)?;
                label.push_str(&format!(" xi{k}={v}"));
            }
            let mut rep = report::verify(&d, *suite, *max_degree)?;
            rep.diagram = label;
            write_json(json.as_deref(), &rep.to_json())?;
            Ok(Outcome { stdout: rep.to_text(), code: if rep.passed { EXIT_OK } else { EXIT_FAILED } })
        }
        Command::Act { diagram, word, poly, json } => {
            let d = SatakeDiagram::from_spec(*diagram)?;
            let w = parse::parse_word(word)?;
            let p = parse::parse_polynomial(poly, d.nvars())?;
            let out = apply_word(&w, &p, &iqg::phi(&d))?;
            #[derive(Serialize)]
            struct Doc {
                diagram: String,
                word: String,
                input: String,
                output: String,
            }
            let doc = Doc {
                diagram: diagram.to_string(),
                word: parse::format_word(&w),
                input: p.to_string(),
                output: out.to_string(),
            };
            write_json(json.as_deref(), &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))?;
            Ok(Outcome::ok(format!("{out}\n")))
        }
        Command::Crystal { diagram, s, format, json } => {
            let c = Crystal::new(&SatakeDiagram::from_spec(*diagram)?)?;
            let edges = c
                .nodes(*s)
                .par_iter()
                .map(|a| c.edges_from(a))
                .collect::<qweyl_core::Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            let graph = qweyl_core::CrystalGraph::new(*diagram, *s, c.nodes(*s), edges);
            write_json(json.as_deref(), &export::to_json(&graph))?;
            Ok(Outcome::ok(export::render(&graph, *format)))
        }
        Command::Witness { diagram, monomial, direction, json } => {
            let d = SatakeDiagram::from_spec(*diagram)?;
            let a = parse::parse_exponents(monomial)?;
            let w: ModuleWitness = match direction {
                WitnessDirection::Up => iqg::irreducibility_witness(&d, &a)?,
                WitnessDirection::Down => iqg::spanning_witness(&d, &a)?,
            };
            let verified = w.verify(&OscillatorTable::new(&d))? && w.verify(&iqg::phi(&d))?;
            let word = if w.word.is_empty() { "(empty)".to_string() } else { parse::format_word(&w.word) };
            let stdout = format!(
                "source {}\ntarget {}\nword {word}\ncoefficient {}\n{}\n",
                w.source,
                w.target,
                expanded(&w.predicted),
                if verified { "VERIFIED" } else { "FAILED" }
            );
            #[derive(Serialize)]
            struct Doc {
                diagram: String,
                direction: WitnessDirection,
                source: Vec<u32>,
                target: Vec<u32>,
                word: String,
                coefficient: String,
                verified: bool,
            }
            let doc = Doc {
                diagram: diagram.to_string(),
                direction: *direction,
                source: w.source.entries().to_vec(),
                target: w.target.entries().to_vec(),
                word: parse::format_word(&w.word),
                coefficient: expanded(&w.predicted),
                verified,
            };
            write_json(json.as_deref(), &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))?;
            Ok(Outcome { stdout, code: if verified { EXIT_OK } else { EXIT_FAILED } })
        }
    }
}

/// Parses `args` (program name first) and runs the command; never exits.
pub fn run_args<I, T>(args: I) -> (Outcome, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match run(&cli) {
            Ok(out) => (out, String::new()),
            Err(e) => (Outcome { stdout: String::new(), code: EXIT_USAGE }, format!("error: {e}\n")),
        },
        Err(e) if e.use_stderr() => (Outcome { stdout: String::new(), code: EXIT_USAGE }, e.render().to_string()),
        Err(e) => (Outcome::ok(e.render().to_string()), String::new()),
    }
}
