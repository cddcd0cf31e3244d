use clap::{Args, Parser, Subcommand};
use qtwo::census::{
    census_report, classify, level_fills, CensusBudget, CensusReport, ClassificationRecord,
};
use qtwo::certify::DEFAULT_VERIFY_TOL;
use qtwo::comborth::{
    condensable_vertices, condense_to, implication_checks, p2_cycle_property,
    pattern_allows_comb_orth, quadrangular_check, CondensationTrace, ImplicationCheck,
};
use qtwo::graph::{self, graph6, named_graph, NAMED_GRAPHS};
use qtwo::orthsearch::{search_orthogonal, SearchOutcome, SearchParams};
use qtwo::qbounds::{edge_bound_check, q2_sieve, EdgeBoundCheck, SieveStatus, SieveVerdict};
use qtwo::{Error, Graph};
use serde::Serialize;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_CONTRADICTION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNDETERMINED: u8 = 3;

/// Connected graphs whose adjacency pattern admits exactly two distinct eigenvalues.
#[derive(Parser)]
#[command(name = "qtwo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print graphs of a family as graph6, one per line.
    Generate {
        /// double-candle, single-candle, double-candle-fills, single-candle-fills,
        /// path, cycle, complete, cube, named
        family: String,
        /// Size parameter, or the graph name for `named`.
        arg: Option<String>,
    },
    /// Run the lower-bound sieve.
    Bound { graphs: Vec<String> },
    /// Classify graphs: sieve, closed forms, then search.
    Certify {
        graphs: Vec<String>,
        #[command(flatten)]
        search: SearchArgs,
        /// Exit with status 3 if any graph stays undetermined.
        #[arg(long)]
        strict: bool,
    },
    /// Numerical search for an orthogonal matrix with the graph's pattern.
    Search {
        graphs: Vec<String>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        strict: bool,
    },
    /// Combinatorial orthogonality diagnostics.
    Comborth { graphs: Vec<String> },
    /// Remove condensable vertices until the target graph is reached.
    Condense {
        graph: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 1_000_000)]
        max_steps: usize,
    },
    /// Classify every connected graph on n vertices.
    Census {
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
        /// Restarts of the escalation pass.
        #[arg(long, default_value_t = 200)]
        escalation_restarts: usize,
        #[arg(long)]
        no_escalation: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
    },
    /// Re-verify classification records from a census report or JSON lines.
    Replay {
        /// Report file; stdin when omitted.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_VERIFY_TOL)]
        tol: f64,
    },
}

#[derive(Args, Clone, Default)]
struct SearchArgs {
    /// TOML file with keys max-iter, restarts, tol, seed, polish, require-ssp.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    polish: Option<bool>,
    #[arg(long)]
    require_ssp: bool,
}

impl SearchArgs {
    fn params(&self, base: SearchParams) -> Result<SearchParams, Failure> {
        let mut p = match &self.config {
            Some(path) => SearchParams::from_toml_str(&read_file(path)?)?,
            None => base,
        };
        if let Some(v) = self.max_iter {
            p.max_iterations = v;
        }
        if let Some(v) = self.restarts {
            p.restarts = v;
        }
        if let Some(v) = self.tol {
            p.tolerance = v;
        }
        if let Some(v) = self.seed {
            p.seed = v;
        }
        if let Some(v) = self.polish {
            p.polish = v;
        }
        p.require_ssp |= self.require_ssp;
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted(_) => EXIT_UNDETERMINED,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_failure(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_failure(format!("{}: {e}", path.display())))
}

/// Graphs from argv, or from stdin one per line when argv is empty.
fn read_graphs(args: &[String]) -> Result<Vec<Graph>, Failure> {
    let lines: Vec<String> = if args.is_empty() {
        std::io::stdin()
            .lock()
            .lines()
            .collect::<Result<_, _>>()
            .map_err(|e| input_failure(format!("stdin: {e}")))?
    } else {
        args.to_vec()
    };
    lines
        .iter()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty())
        .map(|l| graph6::decode(l).map_err(Failure::from))
        .collect()
}

fn emit(value: &impl Serialize) -> Result<(), Failure> {
    let line = serde_json::to_string(value).map_err(|e| input_failure(e.to_string()))?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").map_err(|e| input_failure(e.to_string()))
}

fn size(arg: &Option<String>) -> Result<usize, Failure> {
    let s = arg
        .as_deref()
        .ok_or_else(|| input_failure("missing size parameter"))?;
    s.parse()
        .map_err(|_| input_failure(format!("not a size: {s:?}")))
}

fn generate(family: &str, arg: &Option<String>) -> Result<Vec<Graph>, Failure> {
    Ok(match family {
        "double-candle" => vec![graph::double_candle(size(arg)?)?],
        "single-candle" => vec![graph::single_candle(size(arg)?)?],
        "double-candle-fills" => level_fills(&graph::double_candle(size(arg)?)?, 0)?,
        "single-candle-fills" => level_fills(&graph::single_candle(size(arg)?)?, 0)?,
        "path" => vec![graph::path(size(arg)?)?],
        "cycle" => vec![graph::cycle(size(arg)?)?],
        "complete" => vec![graph::complete(size(arg)?)?],
        "cube" => vec![graph::cube()],
        "named" => match arg {
            Some(name) => vec![named_graph(name)?],
            None => NAMED_GRAPHS
                .iter()
                .map(|n| named_graph(n))
                .collect::<Result<_, _>>()?,
        },
        other => return Err(input_failure(format!("unknown family {other:?}"))),
    })
}

#[derive(Serialize)]
struct BoundOutput {
    graph6: String,
    n: usize,
    edges: usize,
    sieve: SieveVerdict,
    edge_bound: Option<EdgeBoundCheck>,
}

#[derive(Serialize)]
struct SearchOutput {
    graph6: String,
    #[serde(flatten)]
    outcome: SearchOutcome,
}

#[derive(Serialize)]
struct ComborthOutput {
    graph6: String,
    allows_comb_orth: bool,
    quadrangular: bool,
    /// `None` when the graph has no 2-path.
    p2_le4: Option<bool>,
    p2_4: Option<bool>,
    condensable: Vec<usize>,
    checks: Vec<ImplicationCheck>,
}

#[derive(Serialize)]
struct CondenseOutput {
    graph6: String,
    target: String,
    trace: Option<CondensationTrace>,
}

#[derive(Serialize)]
struct ReplayOutput {
    graph6: String,
    ok: bool,
}

fn vacuous(r: qtwo::Result<bool>) -> Result<Option<bool>, Failure> {
    match r {
        Ok(b) => Ok(Some(b)),
        Err(Error::PropertyVacuous(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn read_records(text: &str) -> Result<Vec<ClassificationRecord>, Failure> {
    if let Ok(report) = serde_json::from_str::<CensusReport>(text) {
        return Ok(report.records);
    }
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| input_failure(format!("record {}: {e}", i + 1)))
        })
        .collect()
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Generate { family, arg } => {
            let mut out = std::io::stdout().lock();
            for g in generate(&family, &arg)? {
                writeln!(out, "{}", graph6::encode(&g))
                    .map_err(|e| input_failure(e.to_string()))?;
            }
        }
        Command::Bound { graphs } => {
            for g in read_graphs(&graphs)? {
                let sieve = q2_sieve(&g)?;
                let edge_bound = if g.n() >= 3 {
                    Some(edge_bound_check(&g)?)
                } else {
                    None
                };
                eprintln!(
                    "{}: {}",
                    graph6::encode(&g),
                    match sieve.status {
                        SieveStatus::Excluded => "excluded",
                        SieveStatus::Possible => "possible",
                    }
                );
                emit(&BoundOutput {
                    graph6: graph6::encode(&g),
                    n: g.n(),
                    edges: g.edge_count(),
                    sieve,
                    edge_bound,
                })?;
            }
        }
        Command::Certify {
            graphs,
            search,
            strict,
        } => {
            let budget = CensusBudget::single(search.params(SearchParams::default())?);
            let mut undetermined = 0;
            for g in read_graphs(&graphs)? {
                let rec = classify(&g, &budget)?;
                eprintln!(
                    "{}: {} via {:?}",
                    rec.graph6,
                    verdict_name(&rec),
                    rec.provenance
                );
                undetermined += rec.is_undetermined() as usize;
                emit(&rec)?;
            }
            if strict && undetermined > 0 {
                return Ok(EXIT_UNDETERMINED);
            }
        }
        Command::Search {
            graphs,
            search,
            strict,
        } => {
            let p = search.params(SearchParams::default())?;
            let mut failed = 0;
            for g in read_graphs(&graphs)? {
                let outcome = search_orthogonal(&g, &p)?;
                let graph6 = graph6::encode(&g);
                match &outcome {
                    SearchOutcome::Found {
                        restart,
                        iterations,
                        ..
                    } => {
                        eprintln!(
                            "{graph6}: found on restart {restart} after {iterations} iterations"
                        )
                    }
                    SearchOutcome::Failed {
                        best_residual,
                        iterations,
                    } => {
                        failed += 1;
                        eprintln!("{graph6}: failed after {iterations} iterations, best residual {best_residual:e}")
                    }
                }
                emit(&SearchOutput { graph6, outcome })?;
            }
            if strict && failed > 0 {
                return Ok(EXIT_UNDETERMINED);
            }
        }
        Command::Comborth { graphs } => {
            for g in read_graphs(&graphs)? {
                emit(&ComborthOutput {
                    graph6: graph6::encode(&g),
                    allows_comb_orth: pattern_allows_comb_orth(&g),
                    quadrangular: quadrangular_check(&g),
                    p2_le4: vacuous(p2_cycle_property(&g, true))?,
                    p2_4: vacuous(p2_cycle_property(&g, false))?,
                    condensable: condensable_vertices(&g),
                    checks: implication_checks(&g)?,
                })?;
            }
        }
        Command::Condense {
            graph,
            target,
            max_steps,
        } => {
            let g = graph6::decode(&graph)?;
            let t = graph6::decode(&target)?;
            let trace = condense_to(&g, &t, max_steps)?;
            eprintln!(
                "{graph}: {}",
                match &trace {
                    Some(tr) => format!("reaches {target} in {} removals", tr.steps.len()),
                    None => format!("cannot reach {target}"),
                }
            );
            emit(&CondenseOutput {
                graph6: graph,
                target,
                trace,
            })?;
        }
        Command::Census {
            n,
            search,
            escalation_restarts,
            no_escalation,
            out,
            strict,
        } => {
            let defaults = CensusBudget::default();
            let first = search.params(defaults.first)?;
            let escalation = (!no_escalation).then(|| SearchParams {
                restarts: escalation_restarts,
                ..first.clone()
            });
            if let Some(e) = &escalation {
                e.validate()?;
            }
            let report = census_report(n, &CensusBudget { first, escalation })?;
            eprint!("{}", report.summary());
            let json =
                serde_json::to_string_pretty(&report).map_err(|e| input_failure(e.to_string()))?;
            match out {
                Some(path) => std::fs::write(&path, json + "\n")
                    .map_err(|e| input_failure(format!("{}: {e}", path.display())))?,
                None => println!("{json}"),
            }
            for c in &report.contradictions {
                eprintln!("contradiction {}: {}", c.graph6, c.message);
            }
            if !report.contradictions.is_empty() {
                return Ok(EXIT_CONTRADICTION);
            }
            if strict && report.undetermined > 0 {
                return Ok(EXIT_UNDETERMINED);
            }
        }
        Command::Replay { file, tol } => {
            let text = match &file {
                Some(path) => read_file(path)?,
                None => std::io::read_to_string(std::io::stdin())
                    .map_err(|e| input_failure(format!("stdin: {e}")))?,
            };
            let records = read_records(&text)?;
            let mut bad = 0;
            for r in &records {
                let ok = r.replay(tol)?;
                bad += !ok as usize;
                emit(&ReplayOutput {
                    graph6: r.graph6.clone(),
                    ok,
                })?;
            }
            eprintln!("{} records, {} failed replay", records.len(), bad);
            if bad > 0 {
                return Ok(EXIT_CONTRADICTION);
            }
        }
    }
    Ok(0)
}

fn verdict_name(r: &ClassificationRecord) -> &'static str {
    if r.is_certified() {
        "certified"
    } else if r.is_excluded() {
        "excluded"
    } else {
        "undetermined"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
