use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use holoform::classify::{apply_operator, enumerate_basis, OperatorSignature};
use holoform::error::{HoloformError, Result};
use holoform::form::Form;
use holoform::graded::Universe;
use holoform::oracle::equivariant_hom_dimension;
use holoform::parse::{parse_form, parse_graded, parse_map};
use holoform::verify::{
    homogeneity_suite, independence_suite, naturality_suite, witness_suite, SectionReport, VerificationReport,
    DEFAULT_SEED,
};

#[derive(Parser, Debug)]
#[command(name = "holoform", version, about = "Exact exterior calculus of holomorphic polynomial forms over Q(i)")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Record wall-clock time in JSON reports (otherwise `elapsed_ms` is null).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct DimArg {
    /// Ambient dimension; defaults to the largest index used.
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the monomial basis of natural operators for a signature.
    Basis {
        /// Source degrees, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<usize>,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
    },
    /// Evaluate a graded polynomial on forms and their differentials.
    Apply {
        #[arg(long)]
        poly: String,
        #[arg(long = "form", required = true)]
        forms: Vec<String>,
        /// Evaluate the result at a point (only the origin, `0`, is supported).
        #[arg(long)]
        at: Option<String>,
        #[command(flatten)]
        dim: DimArg,
    },
    /// Exterior derivative.
    D {
        #[arg(long)]
        form: String,
        #[command(flatten)]
        dim: DimArg,
    },
    /// Wedge product of two forms.
    Wedge {
        #[arg(long = "form", num_args = 1, required = true)]
        forms: Vec<String>,
        #[command(flatten)]
        dim: DimArg,
    },
    /// Pullback of a form along a polynomial map `(f1, ..., fn)`.
    Pullback {
        #[arg(long)]
        form: String,
        #[arg(long)]
        map: String,
    },
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Solve for the equivariant maps `(C^n)^{⊗k} -> Λ^q`.
    Oracle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    all: bool,
    #[arg(long)]
    witnesses: bool,
    #[arg(long)]
    independence: bool,
    #[arg(long)]
    homogeneity: bool,
    #[arg(long)]
    naturality: bool,
    #[arg(long, env = "HOLOFORM_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    max_q: usize,
    /// Seeded pairs per signature in the homogeneity suite.
    #[arg(long, default_value_t = 50)]
    pairs: usize,
    /// Seeded cases in the naturality suite.
    #[arg(long, default_value_t = 50)]
    cases: usize,
}

/// Outcome of a command: the report payload, the rendered text and whether
/// every check passed.
struct Outcome {
    command: &'static str,
    inputs: Value,
    result: Value,
    seed: Option<u64>,
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(command: &'static str, inputs: Value, result: Value, text: String) -> Self {
        Outcome {
            command,
            inputs,
            result,
            seed: None,
            text,
            passed: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                let elapsed = cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
                let report = json!({
                    "command": out.command,
                    "inputs": out.inputs,
                    "result": out.result,
                    "seed": out.seed,
                    "version": env!("CARGO_PKG_VERSION"),
                    "elapsed_ms": elapsed,
                    "passed": out.passed,
                });
                emit(&serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                emit(&out.text);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

/// Parses every expression with one common dimension.
fn parse_forms(texts: &[String], dim: Option<usize>) -> Result<Vec<Form>> {
    let dim = match dim {
        Some(n) => n,
        None => texts
            .iter()
            .map(|t| parse_form(t, None).map(|w| w.dim()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(1),
    };
    texts.iter().map(|t| parse_form(t, Some(dim))).collect()
}

fn form_value(w: &Form) -> Value {
    json!({ "form": w.to_string(), "degree": w.degree(), "dim": w.dim() })
}

fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Basis { p, q, n } => {
            let sig = OperatorSignature::new(p.clone(), *q, *n)?;
            let basis = enumerate_basis(&sig);
            let monomials = basis.rendered();
            let variables: Vec<Value> = basis
                .universe
                .vars()
                .iter()
                .map(|v| json!({ "name": v.name, "degree": v.degree }))
                .collect();
            let text = format!("monomials: {}", serde_json::to_string(&monomials).expect("strings"));
            Ok(Outcome::ok(
                "basis",
                json!({ "p": p, "q": q, "n": n }),
                json!({ "monomials": monomials, "variables": variables, "size": monomials.len() }),
                text,
            ))
        }
        Command::Apply { poly, forms, at, dim } => {
            let parsed = parse_forms(forms, dim.dim)?;
            let degrees: Vec<usize> = parsed.iter().map(Form::degree).collect();
            if let Some(i) = degrees.iter().position(|&d| d == 0) {
                return Err(HoloformError::InvalidSignature(format!(
                    "--form #{} is a function; source forms need positive degree",
                    i + 1
                )));
            }
            let universe = Universe::for_sources(&degrees)?;
            let p = parse_graded(poly, universe)?;
            let mut value = apply_operator(&p, &parsed)?;
            if let Some(point) = at {
                if point.trim() != "0" {
                    return Err(HoloformError::InvalidGerm(format!(
                        "evaluation is supported at the origin only, got '{point}'"
                    )));
                }
                value = value.at_origin();
            }
            Ok(Outcome::ok(
                "apply",
                json!({ "poly": poly, "forms": forms, "at": at }),
                form_value(&value),
                value.to_string(),
            ))
        }
        Command::D { form, dim } => {
            let w = parse_form(form, dim.dim)?;
            let dw = w.d();
            Ok(Outcome::ok("d", json!({ "form": form }), form_value(&dw), dw.to_string()))
        }
        Command::Wedge { forms, dim } => {
            if forms.len() != 2 {
                return Err(HoloformError::ArityMismatch {
                    expected: 2,
                    found: forms.len(),
                });
            }
            let parsed = parse_forms(forms, dim.dim)?;
            let w = parsed[0].wedge(&parsed[1])?;
            Ok(Outcome::ok("wedge", json!({ "forms": forms }), form_value(&w), w.to_string()))
        }
        Command::Pullback { form, map } => {
            let phi = parse_map(map)?;
            let w = parse_form(form, Some(phi.dim()))?;
            let pulled = w.pullback(&phi)?;
            Ok(Outcome::ok(
                "pullback",
                json!({ "form": form, "map": map }),
                form_value(&pulled),
                pulled.to_string(),
            ))
        }
        Command::Verify(args) => Ok(verify(args)),
        Command::Oracle { k, q, n } => {
            let sol = equivariant_hom_dimension(*k, *q, *n, None)?;
            let maps: Vec<Vec<Vec<String>>> = sol
                .basis_maps
                .iter()
                .map(|m| {
                    m.to_rows()
                        .iter()
                        .map(|r| r.iter().map(|x| x.to_exact_string()).collect())
                        .collect()
                })
                .collect();
            let text = format!(
                "dimension: {}\nmatches_skew_symmetrization: {}\nnaive_agrees: {}\ngroup_check: {}\nunknowns: {}, constraint rows: {}",
                sol.dimension,
                sol.matches_skew_symmetrization,
                sol.naive_agrees,
                sol.group_check.map_or("skipped".to_string(), |b| b.to_string()),
                sol.unknowns,
                sol.constraint_rows
            );
            let passed = sol.naive_agrees && sol.group_check != Some(false);
            Ok(Outcome {
                command: "oracle",
                inputs: json!({ "k": k, "q": q, "n": n }),
                result: json!({
                    "dimension": sol.dimension,
                    "matches_skew_symmetrization": sol.matches_skew_symmetrization,
                    "naive_agrees": sol.naive_agrees,
                    "group_check": sol.group_check,
                    "domain_dim": sol.domain_dim,
                    "codomain_dim": sol.codomain_dim,
                    "unknowns": sol.unknowns,
                    "constraint_rows": sol.constraint_rows,
                    "basis_maps": maps,
                }),
                seed: None,
                text,
                passed,
            })
        }
    }
}

fn verify(args: &VerifyArgs) -> Outcome {
    let none = !(args.witnesses || args.independence || args.homogeneity || args.naturality);
    let all = args.all || none;
    let mut sections: Vec<SectionReport> = Vec::new();
    if all || args.witnesses {
        sections.push(witness_suite(args.max_q));
    }
    if all || args.independence {
        sections.push(independence_suite(args.seed));
    }
    if all || args.homogeneity {
        sections.push(homogeneity_suite(args.seed, args.pairs));
    }
    if all || args.naturality {
        sections.push(naturality_suite(args.seed, args.cases));
    }
    let report = VerificationReport::new(args.seed, sections);
    let mut text = String::new();
    for s in &report.sections {
        let failed = s.checks.iter().filter(|c| !c.passed).count();
        text.push_str(&format!(
            "{} {}: {}/{} checks passed\n",
            if s.passed { "PASS" } else { "FAIL" },
            s.section,
            s.checks.len() - failed,
            s.checks.len()
        ));
        for c in s.checks.iter().filter(|c| !c.passed) {
            text.push_str(&format!("  FAIL {}: {}\n", c.name, c.detail));
        }
    }
    text.push_str(if report.passed { "all checks passed" } else { "verification failed" });
    Outcome {
        command: "verify",
        inputs: json!({
            "sections": report.sections.iter().map(|s| s.section.clone()).collect::<Vec<_>>(),
            "max_q": args.max_q,
            "pairs": args.pairs,
            "cases": args.cases,
        }),
        result: serde_json::to_value(&report).expect("serializable"),
        seed: Some(args.seed),
        text,
        passed: report.passed,
    }
}
