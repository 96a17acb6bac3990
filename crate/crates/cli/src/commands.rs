use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use diam2::cayley::{
    classify_prime_power_orders, counting_feasibility, enumerate_connection_sets, prime_power, ramanujan_nagell,
    AbelianGroup, Verdict, MAX_ENUMERATION_K,
};
use diam2::constructions::{
    add_dominating_vertex, blow_up, cycle, cycle_expansion, kneser, named, twin_quotient, ExpansionSpec, NAMES,
};
use diam2::process::{experiment, run_process};
use diam2::properties::{
    check_degree_bound, check_degree_sum_inequalities, max_degree_floor, witness_report, WitnessReport,
};
use diam2::search::{closure, enumerate_witnesses, ClosureBudget, ClosureOps, SearchConfig, Witness};
use diam2::{canonicalize, from_graph6, to_graph6, Error, Graph};

use crate::corpus;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PREDICATE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

/// Error carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Graph6(_) => EXIT_PARSE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

pub type Outcome = Result<i32, Failure>;

#[derive(Debug, Parser)]
#[command(name = "diam2", version, about = "Triangle-free, K_{s,t}-free graphs of diameter two")]
pub struct Cli {
    /// Worker threads for parallel commands (0 = one per core).
    #[arg(long, global = true, env = "DIAM2_WORKERS", default_value_t = 0)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a graph6 stream against the witness predicate.
    Verify(VerifyArgs),
    /// Exhaustively enumerate witnesses up to a given order.
    Enumerate(EnumerateArgs),
    /// Cayley graphs on abelian groups.
    Cayley(CayleyArgs),
    /// Build a named or parametrised graph.
    Construct(ConstructArgs),
    /// Close a set of witnesses under rotations, switches and induced subgraphs.
    Closure(ClosureArgs),
    /// Run the constrained random graph process.
    Process(ProcessArgs),
    /// Check graph6 corpus files against a manifest.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
pub struct StArgs {
    #[arg(long, default_value_t = 2)]
    pub s: usize,
    #[arg(long, default_value_t = 3)]
    pub t: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// graph6 file, one graph per line; `-` or absent reads stdin.
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub st: StArgs,
    /// Also run the degree bound, degree-sum and Δ² ≥ n-1 checks.
    #[arg(long)]
    pub theorems: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n_max: usize,
    #[command(flatten)]
    pub st: StArgs,
    /// Print bare graph6 lines instead of JSON.
    #[arg(long)]
    pub graph6: bool,
    /// Stop after this many search-tree nodes.
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Disable the degree-sum, co-degree cap and lookahead prunes.
    #[arg(long)]
    pub no_prune: bool,
}

#[derive(Debug, Args)]
pub struct CayleyArgs {
    /// Cyclic factors, e.g. `2,2,2,2` or `13`.
    #[arg(long, conflicts_with_all = ["classify", "ramanujan_nagell"])]
    pub group: Option<String>,
    /// Connection-set size; every feasible size when absent.
    #[arg(long, requires = "group")]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub t: usize,
    /// Classify all prime-power orders coprime to 6 up to this bound.
    #[arg(long, value_name = "LIMIT")]
    pub classify: Option<usize>,
    /// Solutions m <= LIMIT of 2^m - 7 = x².
    #[arg(long, value_name = "LIMIT")]
    pub ramanujan_nagell: Option<u32>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub what: Construction,
    /// Evaluate the result against the (s,t)-witness predicate.
    #[command(flatten)]
    pub st: StArgs,
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// One of the bundled named graphs.
    Named { name: String },
    /// The cycle C_n.
    Cycle { n: usize },
    /// The Kneser graph K(n, k).
    Kneser { n: usize, k: usize },
    /// Cycle expansion of K_{k,l} with one matching used for every pair.
    Expansion {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        cycle_length: usize,
        /// Bijection as comma-separated images, e.g. `0,3,2,1`.
        #[arg(long, value_delimiter = ',')]
        matching: Vec<usize>,
    },
    /// Replace vertex `v` of a graph6 graph by `r` twins.
    BlowUp { graph6: String, v: usize, r: usize },
    /// Merge twin classes of a graph6 graph.
    TwinQuotient {
        graph6: String,
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// Add a vertex adjacent to every vertex of a graph6 graph.
    Dominate { graph6: String },
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    /// graph6 seeds; `-` or absent reads stdin.
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub st: StArgs,
    /// Operations to apply.
    #[arg(long, value_delimiter = ',', default_value = "rotation,switch,induced")]
    pub ops: Vec<String>,
    #[arg(long, default_value_t = 1000)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = 100_000)]
    pub max_size: usize,
}

#[derive(Debug, Args)]
pub struct ProcessArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub st: StArgs,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    /// Largest order on which the probe runs its exact search.
    #[arg(long, default_value_t = 0)]
    pub exact_limit: usize,
    /// Emit the full trace of a single trial instead of summaries.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// JSON manifest; relative paths inside it resolve against its directory.
    pub manifest: PathBuf,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Verify(a) => verify(a, out),
        Command::Enumerate(a) => enumerate(a, cli.workers, out),
        Command::Cayley(a) => cayley(a, out),
        Command::Construct(a) => construct(a, out),
        Command::Closure(a) => closure_cmd(a, out),
        Command::Process(a) => process(a, out),
        Command::Corpus(a) => corpus::run(&a.manifest, out),
    }
}

pub fn emit<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

fn check_st(st: &StArgs) -> Result<(), Failure> {
    if st.s < 1 || st.s > st.t {
        return Err(Failure::usage(format!("need 1 <= s <= t, got s={}, t={}", st.s, st.t)));
    }
    Ok(())
}

/// A graph6 line with its 1-based line number.
pub struct Line {
    pub number: usize,
    pub text: String,
}

/// Non-blank lines of a file or stdin, skipping a `>>graph6<<` header line.
pub fn read_lines(input: Option<&Path>) -> Result<Vec<Line>, Failure> {
    let reader: Box<dyn BufRead> = match input {
        None => Box::new(io::stdin().lock()),
        Some(p) if p.as_os_str() == "-" => Box::new(io::stdin().lock()),
        Some(p) => Box::new(io::BufReader::new(
            fs::File::open(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        )),
    };
    let mut lines = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let text = line.map_err(|e| Failure::parse(format!("line {}: {e}", i + 1)))?;
        let text = text.trim_end().to_string();
        if !text.is_empty() && text != ">>graph6<<" {
            lines.push(Line { number: i + 1, text });
        }
    }
    Ok(lines)
}

fn theorem_checks(g: &Graph, t: usize) -> Value {
    let show = |r: Result<Value, Error>| r.unwrap_or_else(|e| json!({ "skipped": e.to_string() }));
    json!({
        "degree_bound": show(check_degree_bound(g, t).map(Value::from)),
        "degree_sums": show(check_degree_sum_inequalities(g, t).map(|d| json!(d))),
        "max_degree_floor": show(max_degree_floor(g).map(Value::from)),
    })
}

#[derive(Serialize)]
struct VerifyLine<'a> {
    line: usize,
    graph6: &'a str,
    #[serde(flatten)]
    report: &'a WitnessReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    theorems: Option<Value>,
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    check_st(&a.st)?;
    let mut all_witnesses = true;
    let mut parse_errors = 0;
    for line in read_lines(a.input.as_deref())? {
        let g = match from_graph6(&line.text) {
            Ok(g) => g,
            Err(e) => {
                parse_errors += 1;
                emit(out, &json!({ "line": line.number, "error": e.to_string() }))?;
                eprintln!("line {}: {e}", line.number);
                continue;
            }
        };
        let report = witness_report(&g, a.st.s, a.st.t)?;
        all_witnesses &= report.is_witness;
        let theorems = a.theorems.then(|| theorem_checks(&g, a.st.t));
        emit(
            out,
            &VerifyLine {
                line: line.number,
                graph6: &line.text,
                report: &report,
                theorems,
            },
        )?;
    }
    Ok(if parse_errors > 0 {
        EXIT_PARSE
    } else if all_witnesses {
        EXIT_OK
    } else {
        EXIT_PREDICATE
    })
}

fn enumerate(a: &EnumerateArgs, workers: usize, out: &mut dyn Write) -> Outcome {
    let mut cfg = SearchConfig::new(a.n_max, a.st.s, a.st.t);
    cfg.workers = workers;
    cfg.node_budget = a.node_budget;
    if a.no_prune {
        cfg.prune.degree_sum = false;
        cfg.prune.codegree_cap = false;
        cfg.prune.lookahead = false;
    }
    let e = enumerate_witnesses(&cfg)?;
    if a.graph6 {
        for w in &e.witnesses {
            writeln!(out, "{}", w.graph6)?;
        }
    } else {
        for w in &e.witnesses {
            emit(out, &json!({ "type": "witness", "witness": w }))?;
        }
        for row in e.census() {
            emit(out, &json!({ "type": "census_row", "row": row }))?;
        }
        for &(n, count) in &e.counts {
            emit(out, &json!({ "type": "count", "n": n, "count": count }))?;
        }
        emit(
            out,
            &json!({
                "type": "summary",
                "n_max": a.n_max,
                "s": a.st.s,
                "t": a.st.t,
                "total": e.witnesses.len(),
                "interrupted": e.interrupted,
                "nodes": e.stats.nodes,
                "degree_bound_violations": e.degree_bound_violations,
            }),
        )?;
    }
    if e.interrupted {
        eprintln!("node budget exhausted; counts are incomplete");
    }
    Ok(EXIT_OK)
}

fn cayley(a: &CayleyArgs, out: &mut dyn Write) -> Outcome {
    if let Some(limit) = a.ramanujan_nagell {
        emit(out, &json!({ "ramanujan_nagell": ramanujan_nagell(limit)?, "limit": limit }))?;
        return Ok(EXIT_OK);
    }
    if let Some(limit) = a.classify {
        let feasible: Vec<usize> = (2..=limit)
            .filter(|&n| {
                prime_power(n).is_some()
                    && n % 2 != 0
                    && n % 3 != 0
                    && matches!(
                        counting_feasibility(&AbelianGroup::cyclic(n).expect("n >= 2"), None),
                        Verdict::Feasible { .. }
                    )
            })
            .collect();
        emit(out, &json!({ "type": "feasible_orders", "limit": limit, "orders": feasible }))?;
        for row in classify_prime_power_orders(limit)? {
            emit(out, &json!({ "type": "group", "row": row }))?;
        }
        return Ok(EXIT_OK);
    }
    let Some(spec) = &a.group else {
        return Err(Failure::usage("one of --group, --classify or --ramanujan-nagell is required"));
    };
    let group = AbelianGroup::parse(spec)?;
    let ks: Vec<usize> = match a.k {
        Some(k) => vec![k],
        None => (1..group.order().min(MAX_ENUMERATION_K + 1)).collect(),
    };
    let mut total = 0;
    for &k in &ks {
        let classes = enumerate_connection_sets(&group, k, a.t)?;
        for c in &classes {
            let digits: Vec<Vec<usize>> = c.set.elements().iter().map(|&x| group.digits(x)).collect();
            emit(
                out,
                &json!({
                    "type": "class",
                    "group": group.factors(),
                    "k": k,
                    "elements": c.set.elements(),
                    "digits": digits,
                    "canonical_form": c.canonical_form,
                }),
            )?;
        }
        emit(out, &json!({ "type": "count", "group": group.factors(), "k": k, "classes": classes.len() }))?;
        total += classes.len();
    }
    emit(
        out,
        &json!({
            "type": "summary",
            "group": group.factors(),
            "order": group.order(),
            "t": a.t,
            "k_values": ks,
            "classes": total,
            "feasibility": counting_feasibility(&group, a.k),
        }),
    )?;
    Ok(EXIT_OK)
}

fn parse_graph(text: &str) -> Result<Graph, Failure> {
    from_graph6(text.trim()).map_err(|e| Failure::parse(e.to_string()))
}

fn construct(a: &ConstructArgs, out: &mut dyn Write) -> Outcome {
    check_st(&a.st)?;
    let (label, g) = match &a.what {
        Construction::Named { name } => (
            name.clone(),
            named(name).map_err(|e| Failure::usage(format!("{e}; known names: {}", NAMES.join(", "))))?,
        ),
        Construction::Cycle { n } => {
            if !(3..=diam2::MAX_VERTICES).contains(n) {
                return Err(Failure::usage(format!("cycle length must lie in 3..={}", diam2::MAX_VERTICES)));
            }
            (format!("cycle({n})"), cycle(*n))
        }
        Construction::Kneser { n, k } => (format!("kneser({n},{k})"), kneser(*n, *k)?),
        Construction::Expansion {
            k,
            l,
            cycle_length,
            matching,
        } => {
            let spec = ExpansionSpec::uniform(*k, *l, *cycle_length, matching.clone());
            (format!("expansion({k},{l},{cycle_length})"), cycle_expansion(&spec)?)
        }
        Construction::BlowUp { graph6, v, r } => ("blow_up".into(), blow_up(&parse_graph(graph6)?, *v, *r)?),
        Construction::TwinQuotient { graph6, threshold } => {
            ("twin_quotient".into(), twin_quotient(&parse_graph(graph6)?, *threshold))
        }
        Construction::Dominate { graph6 } => ("dominate".into(), add_dominating_vertex(&parse_graph(graph6)?)?),
    };
    let report = witness_report(&g, a.st.s, a.st.t)?;
    let witness = Witness::from_graph(&g);
    emit(
        out,
        &json!({
            "name": label,
            "graph6": to_graph6(&g),
            "n": g.n(),
            "edges": g.edge_count(),
            "degrees": witness.degrees,
            "girth": g.girth(),
            "diameter": g.diameter(),
            "canonical": canonicalize(&g),
            "report": report,
        }),
    )?;
    Ok(EXIT_OK)
}

fn closure_cmd(a: &ClosureArgs, out: &mut dyn Write) -> Outcome {
    check_st(&a.st)?;
    let mut ops = ClosureOps {
        rotation: false,
        switch: false,
        induced: false,
    };
    for op in &a.ops {
        match op.as_str() {
            "rotation" => ops.rotation = true,
            "switch" => ops.switch = true,
            "induced" => ops.induced = true,
            other => return Err(Failure::usage(format!("unknown operation `{other}`"))),
        }
    }
    let mut seeds = Vec::new();
    for line in read_lines(a.input.as_deref())? {
        seeds.push(from_graph6(&line.text).map_err(|e| Failure::parse(format!("line {}: {e}", line.number)))?);
    }
    let seed_forms: std::collections::BTreeSet<String> =
        seeds.iter().map(diam2::canon::canonical_form).collect();
    let budget = ClosureBudget {
        max_iterations: a.max_iterations,
        max_size: a.max_size,
    };
    let r = closure(&seeds, ops, a.st.s, a.st.t, budget)?;
    for form in &r.forms {
        let g = from_graph6(form).expect("own encoding");
        emit(
            out,
            &json!({ "type": "graph", "graph6": form, "n": g.n(), "edges": g.edge_count(), "seed": seed_forms.contains(form) }),
        )?;
    }
    let new = r.forms.iter().filter(|f| !seed_forms.contains(*f)).count();
    emit(
        out,
        &json!({
            "type": "summary",
            "seeds": seeds.len(),
            "size": r.forms.len(),
            "new": new,
            "iterations": r.iterations,
            "truncated": r.truncated,
        }),
    )?;
    Ok(EXIT_OK)
}

fn process(a: &ProcessArgs, out: &mut dyn Write) -> Outcome {
    check_st(&a.st)?;
    if a.trace {
        let trace = run_process(a.n, a.st.s, a.st.t, a.seed)?;
        let verified = trace.verify_certificate();
        emit(out, &json!({ "type": "trace", "certificate_verified": verified, "trace": trace }))?;
        return Ok(if verified { EXIT_OK } else { EXIT_PREDICATE });
    }
    let summary = experiment(a.n, a.st.s, a.st.t, a.trials, a.seed, a.exact_limit)?;
    for trial in &summary.trials {
        emit(out, &json!({ "type": "trial", "trial": trial }))?;
    }
    let mut aggregate = serde_json::to_value(&summary).expect("serializable");
    if let Value::Object(m) = &mut aggregate {
        m.remove("trials");
        m.insert("type".into(), "summary".into());
    }
    emit(out, &aggregate)?;
    Ok(if summary.all_saturated { EXIT_OK } else { EXIT_PREDICATE })
}
