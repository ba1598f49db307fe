//! Command-line front end for `qdeform-core`.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
//! 3 domain error.

pub mod graph;
pub mod verify;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qdeform_core::arcmodel::{arc_data_signed, ArcCache, ArcError, ArcPoly};
use qdeform_core::cyx::{grothendieck_class, reduced_arcs_native, CyError};
use qdeform_core::farey::ExtRational;
use qdeform_core::knots::{jones_normalized, jones_oracle, KnotError};
use qdeform_core::qdeform::{DeformError, Flavor, Method, Session};
use serde_json::json;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "qdeform",
    version,
    about = "Exact q-deformed rationals, arc polynomials and rational-knot Jones polynomials"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Sharp,
    Flat,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Sharp => Flavor::Sharp,
            FlavorArg::Flat => Flavor::Flat,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Cf,
    Matrix,
    Farey,
    Arc,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Cf => Method::Cf,
            MethodArg::Matrix => Method::Matrix,
            MethodArg::Farey => Method::Farey,
            MethodArg::Arc => Method::Arc,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Dot,
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// q-deform a rational by one method.
    Deform {
        #[arg(long, allow_hyphen_values = true)]
        value: ExtRational,
        #[arg(long, value_enum, default_value_t = FlavorArg::Sharp)]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Matrix)]
        method: MethodArg,
    },
    /// Cross-check every method and derived object over the Stern–Brocot tree.
    Verify {
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long)]
        include_negatives: bool,
        #[arg(long)]
        include_jones: bool,
        #[arg(long, default_value_t = 12)]
        jones_max_crossings: i64,
        /// Largest knot numerator in the Jones sweep.
        #[arg(long, default_value_t = 13)]
        jones_max_r: i64,
    },
    /// Emit the weighted Farey graph.
    FareyGraph {
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Emit::Dot)]
        emit: Emit,
    },
    /// The four arc intersection polynomials.
    Arcs {
        #[arg(long, allow_hyphen_values = true)]
        value: ExtRational,
    },
    /// Grothendieck class in terms of `[X_0]` and `[X_∞]`.
    Groth {
        #[arg(long, allow_hyphen_values = true)]
        value: ExtRational,
    },
    /// Arc polynomials in the CY-N specialization.
    Reduce {
        #[arg(long = "N", short = 'N')]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        value: ExtRational,
        #[arg(long)]
        which: Option<ArcPoly>,
    },
    /// Normalized Jones polynomial of the two-bridge knot `C(r/s)`.
    Jones {
        #[arg(long, allow_hyphen_values = true)]
        value: ExtRational,
        #[arg(long)]
        check_oracle: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Deform(#[from] DeformError),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Cy(#[from] CyError),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        }
    }
}

/// Rendered document plus the exit code it implies.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
        }
    }
}

fn json_text(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn execute(command: &Command, format: Format) -> Result<Outcome, CliError> {
    let plain = format == Format::Plain;
    match *command {
        Command::Deform {
            value,
            flavor,
            method,
        } => {
            let v = Session::new().deform(value, flavor.into(), method.into())?;
            Ok(Outcome::ok(if plain {
                format!("{v}\n")
            } else {
                json_text(&v)
            }))
        }
        Command::Verify {
            depth,
            include_negatives,
            include_jones,
            jones_max_crossings,
            jones_max_r,
        } => {
            let report = verify::run_verify(&verify::VerifyOptions {
                depth,
                include_negatives,
                include_jones,
                jones_max_crossings,
                jones_max_numerator: jones_max_r,
            });
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY
            };
            let text = if plain {
                render_report(&report)
            } else {
                json_text(&report)
            };
            Ok(Outcome { text, code })
        }
        Command::FareyGraph { depth, emit } => {
            let g = graph::farey_graph(depth)?;
            Ok(Outcome::ok(match emit {
                Emit::Dot => g.to_dot(),
                Emit::Json => json_text(&g.to_json()),
                Emit::Svg => g.to_svg(),
            }))
        }
        Command::Arcs { value } => {
            let d = arc_data_signed(value, &mut ArcCache::new())?;
            Ok(Outcome::ok(if plain {
                d.polys()
                    .iter()
                    .map(|(n, p)| format!("{n} = {}\n", p.render_compact()))
                    .collect()
            } else {
                json_text(&d)
            }))
        }
        Command::Groth { value } => {
            let g = grothendieck_class(value)?;
            Ok(Outcome::ok(if plain {
                format!(
                    "X0 = {}\nXinf = {}\n",
                    g.coeff0.render_compact(),
                    g.coeff_inf.render_compact()
                )
            } else {
                json_text(&g)
            }))
        }
        Command::Reduce { n, value, which } => {
            let r = reduced_arcs_native(value, n)?;
            let polys: Vec<_> = r
                .polys()
                .into_iter()
                .filter(|(name, _)| which.is_none_or(|w| w.name() == *name))
                .collect();
            let text = if !plain {
                let map: serde_json::Map<_, _> = polys
                    .iter()
                    .map(|(name, p)| (name.to_string(), json!(p)))
                    .collect();
                json_text(&json!({ "value": value, "N": n, "polys": map }))
            } else if which.is_some() {
                format!("{}\n", polys[0].1.render_compact_var("q1"))
            } else {
                polys
                    .iter()
                    .map(|(name, p)| format!("{name} = {}\n", p.render_compact_var("q1")))
                    .collect()
            };
            Ok(Outcome::ok(text))
        }
        Command::Jones {
            value,
            check_oracle,
        } => {
            let v = jones_normalized(value)?;
            let oracle = if check_oracle {
                Some(jones_oracle(value)?)
            } else {
                None
            };
            let equal = oracle.as_ref().map(|o| o == &v);
            let code = if equal == Some(false) {
                EXIT_VERIFY
            } else {
                EXIT_OK
            };
            let text = if plain {
                let mut s = format!("{}\n", v.render_compact());
                if let (Some(o), Some(eq)) = (&oracle, equal) {
                    s.push_str(&format!("oracle = {}\nequal = {eq}\n", o.render_compact()));
                }
                s
            } else {
                let mut m = json!({ "value": value, "jones": v });
                if let (Some(o), Some(eq)) = (&oracle, equal) {
                    m["oracle"] = json!(o);
                    m["equal"] = json!(eq);
                }
                json_text(&m)
            };
            Ok(Outcome { text, code })
        }
    }
}

fn render_report(r: &verify::RunReport) -> String {
    let mut s = format!(
        "checked {} fractions, {} checks, {} Jones cases: {}\n",
        r.checked,
        r.checks,
        r.jones_cases,
        if r.passed() { "ok" } else { "FAILED" }
    );
    for f in &r.failures {
        s.push_str(&format!(
            "FAIL {} {}: expected {}, got {}\n",
            f.fraction, f.check, f.expected, f.actual
        ));
    }
    s
}

/// Parses `args`, runs the command and writes its output. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match execute(&cli.command, cli.format) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &outcome.text),
        None => io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {}", CliError::Io(e));
        return EXIT_USAGE;
    }
    outcome.code
}
