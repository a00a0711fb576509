//! The `fa` command-line front end.
//!
//! Every successful command prints one JSON object
//! `{input, class, result, cost: {steps, peak_bits}}` (or a plain-text
//! rendering with `--plain`). Exit codes: 0 success, 1 domain error,
//! 2 usage or syntax error, 3 budget exceeded.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_traits::Num;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::corpus::{self, CorpusSpec};
use crate::error::Error;
use crate::hierarchy::{classify, nnf, FormulaClass};
use crate::induct::{pind_check, pind_soundness_demo};
use crate::numsem::{eval_term, Budget, CostReport, Nat, Valuation};
use crate::realize::{self, Realizer};
use crate::syntax::{parse_formula, parse_term, Formula};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fa", version, about = "Bounded arithmetic workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Bind a free variable, e.g. `--let x=4` (decimal or 0x-hex).
    #[arg(long = "let", value_name = "NAME=VALUE", global = true)]
    bindings: Vec<String>,

    /// Largest intermediate value, in bits.
    #[arg(long, value_name = "BITS", global = true)]
    budget_bits: Option<u64>,

    /// Largest number of abstract evaluation steps.
    #[arg(long, value_name = "STEPS", global = true)]
    budget_steps: Option<u64>,

    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "plain")]
    json: bool,

    /// Human-readable output.
    #[arg(long, global = true)]
    plain: bool,
}

#[derive(Debug, Args)]
struct Input {
    /// Formula or term in the surface syntax.
    text: Option<String>,

    /// Read the formula or term from a file instead.
    #[arg(long, short, conflicts_with = "text")]
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sharply bounded / Sigma^b_1 / Pi^b_1 membership.
    Classify(Input),
    /// Value of a term, or truth of a formula.
    Eval(Input),
    /// Build a realizer for a Sigma^b_1 formula.
    Realize(Input),
    /// Check a realizer against a Sigma^b_1 formula.
    Check {
        #[command(flatten)]
        input: Input,
        /// Realizer value, decimal or 0x-hex.
        #[arg(long)]
        realizer: String,
    },
    /// Check a polynomial induction instance on 0..=N.
    Pind {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "N")]
        bound: String,
        /// The induction variable.
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// Least output y <= bound with phi(inputs, y), inputs from --let.
    ExtractFn {
        #[command(flatten)]
        input: Input,
        /// Term bounding the output search.
        #[arg(long, value_name = "TERM", default_value = "x")]
        bound: String,
        #[arg(long, default_value = "y")]
        output: String,
    },
    /// Generate a corpus, or read one with --file, and optionally run the
    /// realizability agreement sweep with --cap.
    Corpus {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = CorpusSpec::DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        #[arg(long, default_value_t = CorpusSpec::DEFAULT_MAX_BOUND_VALUE)]
        max_bound: u64,
        /// Sweep every valuation with values up to CAP.
        #[arg(long)]
        cap: Option<u64>,
        /// Read formulas from this corpus file instead of generating.
        #[arg(long, short)]
        file: Option<PathBuf>,
        /// Write the corpus file here.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

/// Why a command did not produce a result.
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax(s) => Failure::Usage(s.to_string()),
            other => Failure::Domain(other),
        }
    }
}

impl From<crate::SyntaxError> for Failure {
    fn from(e: crate::SyntaxError) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Outcome {
    input: Value,
    class: Option<FormulaClass>,
    result: Value,
    cost: CostReport,
    plain: String,
}

/// Runs one invocation, writing to `out` and `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{rendered}");
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let plain = cli.plain;
    match execute(&cli) {
        Ok(o) => {
            if plain {
                let _ = writeln!(out, "{}", o.plain.trim_end());
            } else {
                let doc = json!({
                    "input": o.input,
                    "class": o.class,
                    "result": o.result,
                    "cost": o.cost,
                });
                let _ = writeln!(out, "{doc}");
            }
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let code = match e {
                Error::BudgetExceeded(_) => EXIT_BUDGET,
                _ => EXIT_DOMAIN,
            };
            if plain {
                let _ = writeln!(err, "error: {e}");
            } else {
                let mut payload = json!({ "kind": e.kind(), "message": e.to_string() });
                if let Error::BudgetExceeded(kind) = e {
                    payload["resource"] = json!(kind);
                }
                let _ = writeln!(out, "{}", json!({ "error": payload }));
            }
            code
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    let d = Budget::default();
    Budget::new(
        cli.budget_bits.unwrap_or(d.max_bits),
        cli.budget_steps.unwrap_or(d.max_steps),
    )
}

fn parse_nat(text: &str) -> Option<Nat> {
    let text = text.trim();
    match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        Some(hex) => Nat::from_str_radix(hex, 16).ok(),
        None => Nat::from_str_radix(text, 10).ok(),
    }
}

fn valuation(cli: &Cli) -> Result<Valuation, Failure> {
    let mut v = Valuation::new();
    for binding in &cli.bindings {
        let (name, value) = binding
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--let expects NAME=VALUE, got `{binding}`")))?;
        let value = parse_nat(value)
            .ok_or_else(|| Failure::Usage(format!("`{value}` is not a natural number")))?;
        v.insert(name.trim(), value);
    }
    Ok(v)
}

fn read_input(input: &Input) -> Result<String, Failure> {
    match (&input.text, &input.file) {
        (Some(text), None) => Ok(text.clone()),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display()))),
        _ => Err(Failure::Usage("expected a formula argument or --file".into())),
    }
}

fn formula(input: &Input) -> Result<Formula, Failure> {
    Ok(parse_formula(read_input(input)?.trim())?)
}

fn nat_json(n: &Option<Nat>) -> Value {
    n.as_ref().map_or(Value::Null, |n| json!(n.to_string()))
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let b = budget(cli);
    match &cli.command {
        Command::Classify(input) => {
            let phi = formula(input)?;
            let class = classify(&phi);
            Ok(Outcome {
                input: json!(phi.to_string()),
                class: Some(class),
                result: json!({
                    "sharp": class.sharply_bounded,
                    "sigma_b1": class.sigma_b1,
                    "pi_b1": class.pi_b1,
                    "nnf": nnf(&phi).to_string(),
                }),
                cost: CostReport::default(),
                plain: format!(
                    "{phi}\nsharp: {}\nsigma_b1: {}\npi_b1: {}",
                    class.sharply_bounded, class.sigma_b1, class.pi_b1
                ),
            })
        }
        Command::Eval(input) => {
            let text = read_input(input)?;
            let v = valuation(cli)?;
            match parse_term(text.trim()) {
                Ok(t) => {
                    let (n, cost) = eval_term(&t, &v, &b)?;
                    Ok(Outcome {
                        input: json!(t.to_string()),
                        class: None,
                        result: json!({ "value": n.to_string() }),
                        cost,
                        plain: n.to_string(),
                    })
                }
                Err(term_err) => {
                    let phi = parse_formula(text.trim()).map_err(|formula_err| {
                        let furthest = if (term_err.line, term_err.column)
                            > (formula_err.line, formula_err.column)
                        {
                            term_err
                        } else {
                            formula_err
                        };
                        Failure::from(furthest)
                    })?;
                    let (truth, cost) = realize::brute_truth(&phi, &v, &b)?;
                    Ok(Outcome {
                        input: json!(phi.to_string()),
                        class: Some(classify(&phi)),
                        result: json!({ "truth": truth }),
                        cost,
                        plain: truth.to_string(),
                    })
                }
            }
        }
        Command::Realize(input) => {
            let phi = formula(input)?;
            let v = valuation(cli)?;
            let (r, cost) = realize::build_realizer(&phi, &v, &b)?;
            let mut result = json!({
                "realized": r.is_some(),
                "realizer": r.as_ref().map(|r| r.to_string()),
                "realizer_hex": r.as_ref().map(Realizer::to_hex),
            });
            if let Some(r) = &r {
                if let Some(w) = realize::top_witness(&phi, r)? {
                    result["witness"] = json!(w.to_string());
                }
            }
            let plain = match &r {
                Some(r) => format!("realizer: {r}"),
                None => "no realizer (formula is false)".into(),
            };
            Ok(Outcome {
                input: json!(phi.to_string()),
                class: Some(classify(&phi)),
                result,
                cost,
                plain,
            })
        }
        Command::Check { input, realizer } => {
            let phi = formula(input)?;
            let v = valuation(cli)?;
            let r: Realizer = realizer
                .parse()
                .map_err(|e: realize::ParseRealizerError| Failure::Usage(e.to_string()))?;
            let (ok, cost) = realize::check_realizer(&phi, &r, &v, &b)?;
            Ok(Outcome {
                input: json!(phi.to_string()),
                class: Some(classify(&phi)),
                result: json!({ "accepted": ok, "realizer": r.to_string() }),
                cost,
                plain: if ok { "accepted" } else { "rejected" }.into(),
            })
        }
        Command::Pind { input, bound, var } => {
            let phi = formula(input)?;
            let n = parse_nat(bound)
                .ok_or_else(|| Failure::Usage(format!("--bound expects a natural number, got `{bound}`")))?;
            let (report, cost) = pind_check(&phi, var, &n, &b)?;
            let sound = pind_soundness_demo(&phi, var, &n, &b)?;
            Ok(Outcome {
                input: json!(phi.to_string()),
                class: Some(classify(&phi)),
                result: json!({
                    "base_ok": report.base_ok,
                    "first_step_failure": nat_json(&report.first_step_failure),
                    "conclusion_ok_up_to": nat_json(&report.conclusion_ok_up_to),
                    "checked_bound": report.checked_bound.to_string(),
                    "sound": sound,
                }),
                cost,
                plain: format!(
                    "base_ok: {}\nfirst_step_failure: {}\nconclusion_ok_up_to: {}\nchecked_bound: {}\nsound: {sound}",
                    report.base_ok,
                    fmt_opt(&report.first_step_failure),
                    fmt_opt(&report.conclusion_ok_up_to),
                    report.checked_bound,
                ),
            })
        }
        Command::ExtractFn {
            input,
            bound,
            output,
        } => {
            let phi = formula(input)?;
            let v = valuation(cli)?;
            let bound = parse_term(bound)?;
            let (y, cost) = realize::extract_function_with(&phi, &v, output, &bound, &b)?;
            Ok(Outcome {
                input: json!(phi.to_string()),
                class: Some(classify(&phi)),
                result: json!({ "value": nat_json(&y) }),
                cost,
                plain: fmt_opt(&y),
            })
        }
        Command::Corpus {
            seed,
            count,
            max_depth,
            max_bound,
            cap,
            file,
            out,
        } => {
            let spec = CorpusSpec {
                seed: *seed,
                max_depth: *max_depth,
                max_bound_value: *max_bound,
                count: *count,
            };
            let formulas: Vec<Formula> = match file {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                    corpus::read_corpus(&text)?.1
                }
                None => corpus::generate(&spec).into_iter().map(|(f, _)| f).collect(),
            };
            let text = corpus::write_corpus(&spec, &formulas);
            if let Some(path) = out {
                std::fs::write(path, &text)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let mut result = json!({
                "spec": {
                    "seed": spec.seed,
                    "max_depth": spec.max_depth,
                    "max_bound_value": spec.max_bound_value,
                    "count": formulas.len(),
                },
                "formulas": formulas.iter().map(|f| {
                    let c = classify(f);
                    json!({ "formula": f.to_string(), "class": c })
                }).collect::<Vec<_>>(),
            });
            let mut plain = text.clone();
            if let Some(cap) = cap {
                let sweeps: Vec<Result<Option<Valuation>, Error>> = formulas
                    .par_iter()
                    .map(|f| corpus::agreement_failure(f, *cap, &b))
                    .collect();
                let mut failures = Vec::new();
                for (f, sweep) in formulas.iter().zip(sweeps) {
                    if let Some(v) = sweep? {
                        failures.push(json!({ "formula": f.to_string(), "valuation": v.to_string() }));
                    }
                }
                plain.push_str(&format!(
                    "# agreement at cap {cap}: {}/{} formulas\n",
                    formulas.len() - failures.len(),
                    formulas.len()
                ));
                result["agreement"] = json!({
                    "cap": cap,
                    "passed": failures.is_empty(),
                    "failures": failures,
                });
            }
            Ok(Outcome {
                input: json!(format!("corpus seed={} count={}", spec.seed, formulas.len())),
                class: None,
                result,
                cost: CostReport::default(),
                plain,
            })
        }
    }
}

fn fmt_opt(n: &Option<Nat>) -> String {
    n.as_ref().map_or_else(|| "none".to_owned(), Nat::to_string)
}
