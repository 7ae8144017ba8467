use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperocta::census::{
    count_factorizations, count_odd_full_cycles, enumerate_signed_trees_one_loop,
    signed_trees_one_loop_formula, z_count, CountMode, FactorizationQuery,
};
use hyperocta::decide::{
    brute_force_signed_fcpo, has_signed_fcpo, non_full_ordering, universal_full_cyclic,
    DEFAULT_EDGE_CAP,
};
use hyperocta::halgebra::{
    classify_full_cycle, cycle_decompose, cycle_type, normal_form, parse_cycle_notation,
    reflection_length, to_cycle_notation, FullCycleClass, GeneratorSet, SignedPermutation,
};
use hyperocta::ordering::EdgeOrdering;
use hyperocta::sgraph::SignedGraph;
use hyperocta::verify::{self, Row, Suite};
use hyperocta::Error;

#[derive(Parser)]
#[command(
    name = "hyperocta",
    version,
    about = "Signed permutations and signed-graph edge orderings"
)]
struct Cli {
    /// Also print human-readable tables on stderr.
    #[arg(long, global = true)]
    pretty: bool,
    /// Canonical witness selection (the least ordering in search order).
    #[arg(long, global = true)]
    deterministic: bool,
    /// Maximum number of worker threads.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cycle structure and classification of a signed permutation.
    Classify {
        /// Cycle notation, e.g. "(1 2 -3)+".
        #[arg(long, conflicts_with = "images", required_unless_present = "images")]
        target: Option<String>,
        /// One-line images, e.g. "2,-3,-1".
        #[arg(long, allow_hyphen_values = true)]
        images: Option<String>,
        /// Degree, when larger than the largest index in the cycle notation.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Product of an edge ordering.
    Product {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated edges, e.g. "pos:1-2,neg:2-3,loop:3". Defaults to
        /// positive edges, then negative edges, then loops.
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Rewrite of an ordering's product as inversions times an unsigned part.
    Decompose {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Whether the graph has even and odd full cycle orderings.
    Decide {
        #[arg(long)]
        graph: PathBuf,
        /// Largest number of edges the search accepts.
        #[arg(long, env = "HYPEROCTA_CAP", default_value_t = DEFAULT_EDGE_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = DecideMethod::Reduction)]
        method: DecideMethod,
    },
    /// Number of factorizations of a target into k reflections.
    Count {
        /// Cycle notation, e.g. "(1 2 3)-".
        #[arg(long)]
        target: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Generators::All)]
        generators: Generators,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Enumerative counts compared with their closed forms.
    Enumerate {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DecideMethod {
    Reduction,
    BruteForce,
}

#[derive(Clone, Copy, ValueEnum)]
enum Generators {
    All,
    Positive,
}

impl From<Generators> for GeneratorSet {
    fn from(g: Generators) -> GeneratorSet {
        match g {
            Generators::All => GeneratorSet::AllSigned,
            Generators::Positive => GeneratorSet::PositiveOnly,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Odd full cycles in B_n.
    OddCycles,
    /// Signed trees on [n] with exactly one loop.
    Trees,
    /// Pairs of such a tree and an odd full cycle ordering.
    Pairs,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Lemmas,
    #[value(alias = "theorem26")]
    SignedExistence,
    #[value(alias = "theorem311")]
    Universality,
    #[value(alias = "corollary112")]
    Factorizations,
    Census,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Lemmas => Suite::Lemmas,
            SuiteArg::SignedExistence => Suite::SignedExistence,
            SuiteArg::Universality => Suite::Universality,
            SuiteArg::Factorizations => Suite::Factorizations,
            SuiteArg::Census => Suite::Census,
        }
    }
}

/// A failure with its exit code and the input field it concerns.
#[derive(Debug)]
struct Failure {
    code: u8,
    field: String,
    message: String,
}

impl Failure {
    fn input(field: &str, message: impl fmt::Display) -> Failure {
        Failure {
            code: 2,
            field: field.into(),
            message: message.to_string(),
        }
    }

    /// Library errors about resource limits map to exit 3, everything else
    /// is blamed on `field`.
    fn from_lib(field: &str, e: Error) -> Failure {
        let code = match e {
            Error::EdgeCapExceeded { .. } | Error::BudgetExceeded(_) | Error::Overflow(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            field: field.into(),
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn ctx(field: &'static str) -> impl FnOnce(Error) -> Failure {
    move |e| Failure::from_lib(field, e)
}

fn load_graph(path: &Path) -> Result<SignedGraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input("graph", format!("{}: {e}", path.display())))?;
    SignedGraph::from_json(&text).map_err(ctx("graph"))
}

fn load_ordering(g: &SignedGraph, literal: Option<&str>) -> Result<EdgeOrdering, Failure> {
    match literal {
        Some(s) => EdgeOrdering::parse(g, s).map_err(ctx("ordering")),
        None => Ok(EdgeOrdering::canonical(g)),
    }
}

fn describe(p: &SignedPermutation) -> Value {
    let nf = normal_form(p);
    json!({
        "degree": p.degree(),
        "images": p,
        "notation": to_cycle_notation(p),
        "cycles": cycle_decompose(p)
            .iter()
            .map(|c| json!({"trajectory": c.trajectory(), "parity": c.parity()}))
            .collect::<Vec<_>>(),
        "cycle_type": cycle_type(p),
        "classification": classify_full_cycle(p).describe(),
        "class": classify_full_cycle(p),
        "reflection_length": reflection_length(p),
        "flip_set": nf.flip_set,
        "base": nf.base.images(),
    })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify { target, images, n } => {
            let p = match (target, images) {
                (Some(t), _) => parse_cycle_notation(t, *n).map_err(ctx("target"))?,
                (None, Some(s)) => {
                    let values = s
                        .trim_matches(|c| c == '[' || c == ']')
                        .split(',')
                        .map(|t| t.trim().parse::<i64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| Failure::input("images", e))?;
                    SignedPermutation::from_images(&values).map_err(ctx("images"))?
                }
                (None, None) => unreachable!("clap requires one of the two"),
            };
            Ok((describe(&p), true))
        }
        Command::Product { graph, ordering } => {
            let g = load_graph(graph)?;
            let w = load_ordering(&g, ordering.as_deref())?;
            let mut out = describe(&w.pi());
            out["ordering"] = json!(w);
            Ok((out, true))
        }
        Command::Decompose { graph, ordering } => {
            let g = load_graph(graph)?;
            let w = load_ordering(&g, ordering.as_deref())?;
            let d = w.decompose();
            let word = |ts: &[hyperocta::halgebra::SignedTransposition]| {
                ts.iter().map(|t| t.to_string()).collect::<String>()
            };
            let out = json!({
                "ordering": w,
                "product": w.pi(),
                "word": word(&w.word()),
                "rewrite_inversions": word(&d.rewrite_inversions),
                "inversions": word(&d.inversions),
                "base": word(&d.base_word),
                "base_product": d.base_product,
                "recomposes": d.recompose() == w.pi(),
                "decomposition": d,
            });
            Ok((out, true))
        }
        Command::Decide { graph, cap, method } => {
            let g = load_graph(graph)?;
            let report = match method {
                DecideMethod::Reduction => has_signed_fcpo(&g, *cap),
                DecideMethod::BruteForce => brute_force_signed_fcpo(&g, *cap),
            }
            .map_err(ctx("cap"))?;
            let mut out = serde_json::to_value(&report).expect("report serializes");
            if cli.pretty {
                let universal = universal_full_cyclic(&g);
                let counterexample = non_full_ordering(&g).ok().map(|w| w.to_string());
                eprintln!("even full cycle ordering: {}", report.even_exists);
                eprintln!("odd full cycle ordering:  {}", report.odd_exists);
                eprintln!("every ordering full:      {universal:?}");
                if let Some(c) = counterexample {
                    eprintln!("non-full ordering:        {c}");
                }
            }
            if cli.deterministic {
                out["deterministic"] = json!(true);
            }
            Ok((out, true))
        }
        Command::Count {
            target,
            k,
            generators,
            n,
        } => {
            let p = parse_cycle_notation(target, *n).map_err(ctx("target"))?;
            let set = GeneratorSet::from(*generators);
            let result =
                count_factorizations(&FactorizationQuery::new(p, *k, set)).map_err(ctx("k"))?;
            let formula = closed_form(&p, *k, set);
            let matches = formula.map(|f| f == result.count);
            let out = json!({
                "query": {
                    "target": to_cycle_notation(&p),
                    "k": k,
                    "generators": set,
                },
                "count": number(result.count),
                "formula": formula.map(number),
                "match": matches,
                "nodes": result.nodes_explored,
                "ms": result.elapsed.as_secs_f64() * 1e3,
            });
            Ok((out, matches != Some(false)))
        }
        Command::Enumerate { family, n } => {
            let n = *n;
            let (measured, formula) = match family {
                Family::OddCycles => (
                    count_odd_full_cycles(n, CountMode::Enumerate),
                    count_odd_full_cycles(n, CountMode::Formula),
                ),
                Family::Trees => (
                    enumerate_signed_trees_one_loop(n),
                    signed_trees_one_loop_formula(n),
                ),
                Family::Pairs => {
                    let z = z_count(n).map_err(ctx("n"))?;
                    let measured = z.enumerated_z.ok_or_else(|| Failure {
                        code: 3,
                        field: "n".into(),
                        message: "pairs are enumerated only for n <= 3".into(),
                    });
                    (Ok(measured?), Ok(z.formula))
                }
            };
            let (measured, formula) = (measured.map_err(ctx("n"))?, formula.map_err(ctx("n"))?);
            let out = json!({
                "family": family_name(*family),
                "n": n,
                "count": number(measured),
                "formula": number(formula),
                "match": measured == formula,
            });
            Ok((out, measured == formula))
        }
        Command::Verify { suite, max_n } => {
            let suite = Suite::from(*suite);
            let rows = verify::run(suite, *max_n).map_err(ctx("max-n"))?;
            let pass = rows.iter().all(|r| r.pass);
            if cli.pretty {
                print_table(&rows);
            }
            Ok((
                json!({"suite": suite, "max_n": max_n, "rows": rows, "pass": pass}),
                pass,
            ))
        }
    }
}

/// Closed-form count for full-cycle targets of minimal length.
fn closed_form(p: &SignedPermutation, k: usize, set: GeneratorSet) -> Option<u128> {
    let n = p.degree() as u128;
    match (classify_full_cycle(p), set) {
        (FullCycleClass::EvenFull, _) if k + 1 == p.degree() => Some(if n >= 2 {
            n.pow(p.degree() as u32 - 2)
        } else {
            1
        }),
        (FullCycleClass::OddFull, GeneratorSet::AllSigned) if k == p.degree() => {
            Some(n.pow(p.degree() as u32))
        }
        _ => None,
    }
}

/// Exact integers above 2^53 are written as strings.
fn number(v: u128) -> Value {
    if v <= 1 << 53 {
        json!(v as u64)
    } else {
        json!(v.to_string())
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::OddCycles => "odd-cycles",
        Family::Trees => "trees",
        Family::Pairs => "pairs",
    }
}

fn print_table(rows: &[Row]) {
    let width = rows
        .iter()
        .map(|r| r.case.chars().count())
        .max()
        .unwrap_or(4);
    let mut err = std::io::stderr().lock();
    let _ = writeln!(
        err,
        "{:<width$}  {:>14}  {:>14}  result",
        "case", "expected", "measured"
    );
    for r in rows {
        let _ = writeln!(
            err,
            "{:<width$}  {:>14}  {:>14}  {}",
            r.case,
            r.expected,
            r.measured,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            eprintln!("error: jobs: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((value, pass)) => {
            println!("{value}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            println!(
                "{}",
                json!({"error": {"field": f.field, "message": f.message, "code": f.code}})
            );
            eprintln!("error: {}: {}", f.field, f.message);
            ExitCode::from(f.code)
        }
    }
}
