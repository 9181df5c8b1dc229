//! Command-line front end. Every command produces a JSON value; the plain
//! text output is rendered from the same value.

use std::cmp::Ordering;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use super::laws::{cyclic_axioms, run_suite, Case, Suite};
use super::parse::{parse_element, parse_ordinal, parse_term};
use super::witness::{build_witness, Via};
use crate::condensation::condense_iterate;
use crate::cyclic::validate_witness;
use crate::error::{Error, Result};
use crate::expiso::{main_iso, main_iso_inverse, verify_exponentiable, ExpIsoContext};
use crate::exponential::{
    fs_between, fs_compare, locate_rem_rep, ExpSpace, FsFunction, RemRepLocator,
};
use crate::linorder::Element;
use crate::report::{CheckReport, Counterexample, Status};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(
    name = "ordcalc",
    version,
    about = "Countable linear orders, pointed exponentials and cyclic witnesses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock time in reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[arg(long, global = true, env = "ORDCALC_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum SuiteArg {
    All,
    Ordinal,
    Order,
    Exp,
    Condense,
    Cyclic,
    Mainthm,
    Backforth,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a term and print it back.
    Parse { term: String },
    /// Extrema, discreteness and density of a term.
    Classify { term: String },
    /// Compare two elements.
    Cmp { term: String, a: String, b: String },
    /// Immediate predecessor and successor.
    Neighbors { term: String, a: String },
    /// Iterated condensation.
    Condense {
        term: String,
        #[arg(long, default_value = "1")]
        gamma: String,
    },
    /// Build and validate a witness of cyclic transitivity at `(a, b)`.
    CtloWitness {
        term: String,
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Via::Auto)]
        via: Via,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Check the axioms of the glued cyclic order on sampled elements.
    CyclicCheck {
        term: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Validate the isomorphism `(L,a)^alpha -> (L,b)^alpha` on sampled pairs.
    ExpIso {
        term: String,
        a: String,
        b: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
    },
    /// Apply the isomorphism `(L,a)^alpha -> (L,b)^alpha` to one function.
    ExpApply {
        term: String,
        a: String,
        b: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        element: String,
        /// Apply the inverse to a function over `(L,b)^alpha`.
        #[arg(long)]
        inverse: bool,
    },
    /// Run a property suite.
    CheckLaws {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Cap on the sample count of every check.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Compare two functions of an exponential term.
    Expcmp { term: String, f: String, g: String },
    /// Locate a function in the decomposition around the constant function.
    Explocate { term: String, f: String },
    /// A function strictly between two others.
    Expbetween { term: String, f: String, g: String },
}

/// A property-check result as printed by the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub checks_run: u64,
    pub counterexample: Option<Counterexample>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<Case>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    fn from_check(command: &str, seed: u64, r: CheckReport) -> Report {
        Report {
            command: command.into(),
            status: r.status(),
            checks_run: r.checks_run,
            counterexample: r.counterexample,
            seed,
            cases: Vec::new(),
            elapsed_ms: None,
        }
    }

    fn from_cases(command: &str, seed: u64, cases: Vec<Case>) -> Report {
        let counterexample = cases.iter().find_map(|c| c.counterexample.clone());
        Report {
            command: command.into(),
            status: if cases.iter().all(|c| c.status == Status::Pass) {
                Status::Pass
            } else {
                Status::Fail
            },
            checks_run: cases.iter().map(|c| c.checks_run).sum(),
            counterexample,
            seed,
            cases,
            elapsed_ms: None,
        }
    }
}

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

enum Output {
    Value(Value, String),
    Report(Report),
}

pub fn execute(cli: &Cli) -> Outcome {
    let start = Instant::now();
    match dispatch(cli) {
        Ok(Output::Value(v, text)) => Outcome {
            stdout: if cli.json { to_json(&v) } else { text },
            stderr: String::new(),
            code: 0,
        },
        Ok(Output::Report(mut r)) => {
            if cli.timing {
                r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            let code = match r.status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Unsupported => 3,
            };
            let stdout = if cli.json {
                to_json(&serde_json::to_value(&r).expect("report serializes"))
            } else {
                render_report(&r)
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code,
            }
        }
        Err(e) => {
            let code = e.exit_code();
            let status = if code == 3 { "unsupported" } else { "error" };
            if cli.json {
                let v = json!({ "status": status, "error": e.to_string(), "seed": cli.seed });
                Outcome {
                    stdout: to_json(&v),
                    stderr: String::new(),
                    code,
                }
            } else {
                let text = e.to_string();
                let line = if text.starts_with(status) {
                    text
                } else {
                    format!("{status}: {text}")
                };
                Outcome {
                    stdout: String::new(),
                    stderr: format!("{line}\n"),
                    code,
                }
            }
        }
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn render_report(r: &Report) -> String {
    let status = serde_json::to_value(r.status).expect("status serializes");
    let mut out = format!(
        "{}: {}\nchecks run: {}\nseed: {}\n",
        r.command,
        status.as_str().unwrap_or_default(),
        r.checks_run,
        r.seed
    );
    for c in &r.cases {
        let s = serde_json::to_value(c.status).expect("status serializes");
        out.push_str(&format!(
            "  {:<5} {:>8}  {}\n",
            s.as_str().unwrap_or_default(),
            c.checks_run,
            c.id
        ));
    }
    if let Some(c) = &r.counterexample {
        out.push_str(&format!(
            "counterexample ({}):\n  inputs:   {}\n  expected: {}\n  got:      {}\n",
            c.check, c.inputs, c.expected, c.got
        ));
    }
    if let Some(ms) = r.elapsed_ms {
        out.push_str(&format!("elapsed: {ms} ms\n"));
    }
    out
}

fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn opt_json(e: &Option<Element>) -> Value {
    e.as_ref().map_or(Value::Null, Element::to_json)
}

fn opt_text(e: &Option<Element>) -> String {
    e.as_ref().map_or_else(|| "none".into(), Element::to_string)
}

fn exp_space(text: &str) -> Result<std::sync::Arc<ExpSpace>> {
    ExpSpace::from_term(&parse_term(text)?)
}

fn fs_arg(space: &std::sync::Arc<ExpSpace>, text: &str) -> Result<FsFunction> {
    space.wrap(&parse_element(space.term(), text)?)
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let seed = cli.seed;
    match &cli.command {
        Command::Parse { term } => {
            let t = parse_term(term)?;
            Ok(Output::Value(
                json!({ "term": t.to_string() }),
                format!("{t}\n"),
            ))
        }
        Command::Classify { term } => {
            let t = parse_term(term)?;
            let c = t.classify()?;
            let v = json!({ "term": t.to_string(), "classification": c });
            let text = format!(
                "{t}\nempty: {}\nleast: {}\ngreatest: {}\ndiscrete: {}\ndense: {}\n",
                c.empty, c.has_least, c.has_greatest, c.discrete, c.dense
            );
            Ok(Output::Value(v, text))
        }
        Command::Cmp { term, a, b } => {
            let t = parse_term(term)?;
            let (x, y) = (parse_element(&t, a)?, parse_element(&t, b)?);
            let o = t.compare(&x, &y)?;
            Ok(Output::Value(
                json!({ "order": ordering_name(o) }),
                format!("{}\n", ordering_name(o)),
            ))
        }
        Command::Neighbors { term, a } => {
            let t = parse_term(term)?;
            let x = parse_element(&t, a)?;
            let (p, s) = t.neighbors(&x)?;
            let v = json!({ "pred": opt_json(&p), "succ": opt_json(&s) });
            Ok(Output::Value(
                v,
                format!("pred: {}\nsucc: {}\n", opt_text(&p), opt_text(&s)),
            ))
        }
        Command::Condense { term, gamma } => {
            let t = parse_term(term)?;
            let g = parse_ordinal(gamma)?;
            let c = condense_iterate(&t, &g)?;
            let v = json!({ "term": t.to_string(), "gamma": g, "condensed": c.to_string() });
            Ok(Output::Value(v, format!("{c}\n")))
        }
        Command::CtloWitness {
            term,
            a,
            b,
            via,
            samples,
        } => {
            let t = parse_term(term)?;
            let (x, y) = (parse_element(&t, a)?, parse_element(&t, b)?);
            let w = build_witness(&t, &x, &y, *via)?;
            let r = validate_witness(&w, seed, *samples)?;
            let mut report = Report::from_check("ctlo-witness", seed, r);
            report.cases.push(Case {
                id: w.descriptor().to_string(),
                status: report.status,
                checks_run: report.checks_run,
                counterexample: None,
            });
            Ok(Output::Report(report))
        }
        Command::CyclicCheck { term, samples } => {
            let t = parse_term(term)?;
            if crate::linorder::finite_size(&t).is_some_and(|n| n < 3) {
                return Err(Error::unsupported(format!(
                    "{t} has fewer than three elements"
                )));
            }
            Ok(Output::Report(Report::from_check(
                "cyclic-check",
                seed,
                cyclic_axioms(&t, seed, *samples)?,
            )))
        }
        Command::ExpIso {
            term,
            a,
            b,
            alpha,
            pairs,
        } => {
            let ctx = context(term, a, b)?;
            let alpha = parse_ordinal(alpha)?;
            let r = verify_exponentiable(&ctx, &alpha, seed, *pairs);
            Ok(Output::Report(Report::from_check("exp-iso", seed, r)))
        }
        Command::ExpApply {
            term,
            a,
            b,
            alpha,
            element,
            inverse,
        } => {
            let ctx = context(term, a, b)?;
            let alpha = parse_ordinal(alpha)?;
            let (space, image) = if *inverse {
                let space = ctx.target(&alpha)?;
                let f = fs_arg(&space, element)?;
                (space, main_iso_inverse(&ctx, &alpha, &f)?)
            } else {
                let space = ctx.source(&alpha)?;
                let f = fs_arg(&space, element)?;
                (space, main_iso(&ctx, &alpha, &f)?)
            };
            let v = json!({
                "domain": space.term().to_string(),
                "codomain": image.space().term().to_string(),
                "image": image.element().to_json(),
            });
            Ok(Output::Value(v, format!("{image}\n")))
        }
        Command::CheckLaws { suite, budget } => {
            let suites: Vec<Suite> = match suite {
                SuiteArg::All => Suite::ALL.to_vec(),
                SuiteArg::Ordinal => vec![Suite::Ordinal],
                SuiteArg::Order => vec![Suite::Order],
                SuiteArg::Exp => vec![Suite::Exp],
                SuiteArg::Condense => vec![Suite::Condense],
                SuiteArg::Cyclic => vec![Suite::Cyclic],
                SuiteArg::Mainthm => vec![Suite::Mainthm],
                SuiteArg::Backforth => vec![Suite::Backforth],
            };
            let mut cases = Vec::new();
            for s in &suites {
                for mut c in run_suite(*s, seed, *budget) {
                    if suites.len() > 1 {
                        c.id = format!("{}: {}", s.name(), c.id);
                    }
                    cases.push(c);
                }
            }
            let name = match suites.as_slice() {
                [one] => format!("check-laws {}", one.name()),
                _ => "check-laws all".into(),
            };
            Ok(Output::Report(Report::from_cases(&name, seed, cases)))
        }
        Command::Expcmp { term, f, g } => {
            let space = exp_space(term)?;
            let o = fs_compare(&fs_arg(&space, f)?, &fs_arg(&space, g)?)?;
            Ok(Output::Value(
                json!({ "order": ordering_name(o) }),
                format!("{}\n", ordering_name(o)),
            ))
        }
        Command::Explocate { term, f } => {
            let space = exp_space(term)?;
            let loc = locate_rem_rep(&fs_arg(&space, f)?)?;
            let (v, text) = match &loc {
                RemRepLocator::Middle => (json!({ "branch": "middle" }), "middle\n".to_string()),
                RemRepLocator::Below {
                    top_index,
                    top_value,
                    prefix,
                }
                | RemRepLocator::Above {
                    top_index,
                    top_value,
                    prefix,
                } => {
                    let branch = if matches!(loc, RemRepLocator::Below { .. }) {
                        "below"
                    } else {
                        "above"
                    };
                    (
                        json!({
                            "branch": branch,
                            "top_index": top_index,
                            "top_value": top_value.to_json(),
                            "prefix": prefix.element().to_json(),
                        }),
                        format!("{branch}\ntop index: {top_index}\ntop value: {top_value}\nprefix: {prefix}\n"),
                    )
                }
            };
            Ok(Output::Value(v, text))
        }
        Command::Expbetween { term, f, g } => {
            let space = exp_space(term)?;
            let h = fs_between(&fs_arg(&space, f)?, &fs_arg(&space, g)?)?;
            Ok(Output::Value(
                json!({ "element": h.element().to_json() }),
                format!("{h}\n"),
            ))
        }
    }
}

fn context(term: &str, a: &str, b: &str) -> Result<ExpIsoContext> {
    let t = parse_term(term)?;
    let (x, y) = (parse_element(&t, a)?, parse_element(&t, b)?);
    crate::linorder::require_discrete_unbounded(&t)?;
    ExpIsoContext::new(build_witness(&t, &x, &y, Via::Auto)?)
}
