//! `fjbranch`: reports on Flensted-Jensen parameters, period integrals,
//! branching scans and Arthur packets.
//!
//! Exit codes: 0 success, 1 property failure, 2 invalid parameters,
//! 3 divergent integral.

mod checks;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fjbranch::packets::{self, relevant_pairs, relevant_pairs_csv, CodimDirection, RealForm};
use fjbranch::periods::{self, scan_csv};
use fjbranch::{Error, FJParam, FJReport, HalfInt, QuadratureSpec, Subgroup};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "fjbranch", version, about = "Branching verdicts for Flensted-Jensen representations of SO0(p,q)")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    G1,
    G2,
}

impl From<Which> for Subgroup {
    fn from(w: Which) -> Self {
        match w {
            Which::G1 => Subgroup::G1,
            Which::G2 => Subgroup::G2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Suite {
    All,
    Quadrature,
    Harmonics,
    Decay,
    Branching,
    Packets,
    Conjecture,
}

#[derive(Subcommand)]
enum Command {
    /// Parameter data of W(λ) on SO0(p,q)/SO0(p,q-1).
    Fj {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Twice λ.
        #[arg(long, allow_hyphen_values = true)]
        lambda_x2: i64,
    },
    /// Period verdicts for every target up to a bound.
    Branch {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda_x2: i64,
        #[arg(long, value_enum)]
        subgroup: Which,
        #[arg(long, allow_hyphen_values = true)]
        max_target_x2: i64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// One period integral with its factor breakdown.
    Period {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda_x2: i64,
        #[arg(long, allow_hyphen_values = true)]
        target_x2: i64,
        #[arg(long, value_enum)]
        subgroup: Which,
        /// Gauss-Legendre nodes for both the sphere and the radial factor.
        #[arg(long)]
        nodes: Option<usize>,
        /// Use the K-type witness scan for the G2 sphere pairing.
        #[arg(long)]
        witness: bool,
    },
    /// Double cosets, packet members, pure inner forms and relevant pairs.
    Packet {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        inner_forms_only: bool,
        /// Count double cosets by enumerating the whole Weyl group.
        #[arg(long)]
        brute_force: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run property suites; exit 1 if any property fails.
    Check {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Library(Error),
    Io(std::io::Error),
    Properties(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DivergentPeriod { .. } | Error::DivergentRadial { .. } => 3,
        Error::ToleranceNotMet { .. } => 1,
        _ => 2,
    }
}

/// Rebuilds every object with keys inserted in sorted order.
fn sorted(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sorted(v))).collect::<Map<_, _>>())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sorted).collect()),
        other => other,
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    sorted(serde_json::to_value(x).expect("reports serialize"))
}

fn emit(out: &Option<PathBuf>, text: String) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&sorted(v.clone())).expect("json");
    s.push('\n');
    s
}

fn forms_report(form: RealForm) -> Value {
    json!({
        "form": form,
        "pure_inner_forms": packets::pure_inner_forms(form),
        "relevant_pairs": {
            "drop_p": relevant_pairs(form, CodimDirection::DropP),
            "drop_q": relevant_pairs(form, CodimDirection::DropQ),
        },
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = &cli.out;
    match cli.command {
        Command::Fj { p, q, lambda_x2 } => {
            let param = FJParam::new(p, q, HalfInt::from_twice(lambda_x2))?;
            let report = FJReport::new(&param, &QuadratureSpec::default())?;
            emit(out, pretty(&to_json(&report)))?;
        }
        Command::Branch {
            p,
            q,
            lambda_x2,
            subgroup,
            max_target_x2,
            format,
        } => {
            let rows = periods::scan(
                p,
                q,
                HalfInt::from_twice(lambda_x2),
                subgroup.into(),
                max_target_x2,
                &QuadratureSpec::default(),
            )?;
            let text = match format {
                Format::Csv => scan_csv(&rows),
                Format::Json => pretty(&to_json(&rows)),
            };
            emit(out, text)?;
        }
        Command::Period {
            p,
            q,
            lambda_x2,
            target_x2,
            subgroup,
            nodes,
            witness,
        } => {
            let mut spec = QuadratureSpec::default();
            if let Some(n) = nodes {
                spec = spec.with_nodes(n);
            }
            let verdict = periods::period_integral(
                p,
                q,
                subgroup.into(),
                HalfInt::from_twice(lambda_x2),
                HalfInt::from_twice(target_x2),
                &spec,
                witness,
            )?;
            emit(out, pretty(&to_json(&verdict)))?;
        }
        Command::Packet {
            p,
            q,
            inner_forms_only,
            brute_force,
            format,
        } => {
            let form = RealForm::new(p, q);
            if let Format::Csv = format {
                if !inner_forms_only {
                    packets::packet_double_cosets(p, q, false)?;
                }
                return Ok(emit(out, relevant_pairs_csv(form))?);
            }
            let mut report = forms_report(form);
            if !inner_forms_only {
                let packet = packets::packet_structure(p, q)?;
                let cosets = packets::packet_double_cosets(p, q, brute_force)?;
                let obj = report.as_object_mut().expect("object");
                obj.insert("size".into(), json!(cosets.count));
                obj.insert("coset_space_size".into(), json!(cosets.coset_space_size));
                obj.insert("double_coset_reps".into(), to_json(&cosets.representatives));
                obj.insert("members".into(), to_json(&packet.members));
                obj.insert("brute_force".into(), json!(brute_force));
            }
            emit(out, pretty(&report))?;
        }
        Command::Check { suite, seed } => {
            let results = checks::run(suite, seed);
            let mut text = String::new();
            for r in &results {
                text.push_str(&format!(
                    "{} {}: {}\n",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                ));
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            text.push_str(&format!("{} passed, {} failed\n", results.len() - failed, failed));
            emit(out, text)?;
            if failed > 0 {
                return Err(Failure::Properties(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Properties(n)) => {
            eprintln!("{n} properties failed");
            ExitCode::from(1)
        }
    }
}
