use std::io::Write;
use std::path::PathBuf;

use bruhat_core::closure::{infinite_closure_in_ball, iterate_in_ball, PreclosureResult};
use bruhat_core::orders::{bruhat_graph, join_in_ball, join_r, meet_in_ball, meet_r, restrict_labels, to_dot};
use bruhat_core::twisted::{
    check_acyclic, extremes, reaches, twisted_graph_in_ball, twisted_length_of, twisted_to_dot, Acyclicity,
};
use bruhat_core::{Ball, CoxeterError, CoxeterMatrix, CoxeterSystem, GroupElement, ReflectionSet, TwistDescriptor};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::checks::{self, DyerMode, PairSelection, SearchLimits, SubsetStrategy};
use crate::golden;
use crate::report::CheckReport;

#[derive(Debug, Parser)]
#[command(name = "bruhat", version, about = "Bruhat preclosures, joins and twisted orders in Coxeter groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Preset id: A1..A5, B3, B4, D4, H3, H4, F4, I2(m), AINF
    #[arg(long, global = true, conflicts_with = "matrix")]
    pub group: Option<String>,
    /// Coxeter matrix as JSON: {"rank", "generators", "m"} with 0 for infinity
    #[arg(long, global = true)]
    pub matrix: Option<PathBuf>,
    /// Length cap for element enumeration (ignored for finite groups)
    #[arg(long, global = true, default_value_t = 12)]
    pub cap: usize,
    /// Root depth for the registry; defaults to 3 * cap + 1
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summary of the group: rank, order, reflections
    Build,
    /// [A] or its iterates
    Preclosure(PreclosureArgs),
    /// [A]^∞
    Closure(ClosureArgs),
    /// Join in the right weak order
    Join(PairArgs),
    /// Meet in the right weak order
    Meet(PairArgs),
    /// Twisted lengths, graphs and cycles
    Twisted(TwistedArgs),
    /// N(u ∨ v) against the closure of N(u) ∪ N(v)
    CheckDyer(DyerArgs),
    /// [N(w)] = N(w) for every element
    CheckClosureTheorem,
    /// Idempotence of the preclosure over many subsets
    ScanIdempotence(SearchArgs),
    /// First subset A with [[A]] ≠ [A]
    FindCounterexample(FindArgs),
    /// Worked example with known values
    Reproduce {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(golden::EXAMPLES))]
        example: String,
    },
    /// Bruhat graph of the ball as DOT, optionally restricted to labels in a set
    ExportDot {
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct PreclosureArgs {
    /// Comma-separated reflections as words
    #[arg(long, allow_hyphen_values = true)]
    pub set: String,
    #[arg(long, conflicts_with = "infinite")]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub infinite: bool,
    /// Write the reached A-path subgraph as DOT
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Include the label path that reaches each reflection
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub set: String,
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    pub u: String,
    pub v: String,
}

#[derive(Debug, Args)]
pub struct TwistedArgs {
    /// witness:WORD | sgen:NAME | explicit:SET
    #[arg(long)]
    pub section: String,
    #[arg(long)]
    pub lengths: bool,
    #[arg(long)]
    pub acyclic: bool,
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Reachability query FROM,TO
    #[arg(long)]
    pub leq: Option<String>,
    /// Length window for infinite groups (defaults to --cap)
    #[arg(long)]
    pub window: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DyerArgs {
    #[arg(long, value_enum, default_value_t = DyerMode::Infinite)]
    pub mode: DyerMode,
    /// all | sample:K:SEED
    #[arg(long, default_value = "all")]
    pub pairs: PairSelection,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// exhaustive | random:K:SEED (default: exhaustive when at most 2^20 subsets)
    #[arg(long)]
    pub strategy: Option<SubsetStrategy>,
    #[arg(long)]
    pub max_size: Option<usize>,
    /// Maximum number of subsets to examine
    #[arg(long)]
    pub budget: Option<u64>,
    /// Skip this many subsets of the ordering (resume a checkpointed run)
    #[arg(long, default_value_t = 0)]
    pub start: u64,
    /// Print a checkpoint line to stderr after each batch
    #[arg(long)]
    pub progress: bool,
}

#[derive(Debug, Args)]
pub struct FindArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    /// Keep going after the first hit and count all of them
    #[arg(long)]
    pub count: bool,
    /// Test this set only instead of searching
    #[arg(long, allow_hyphen_values = true)]
    pub set: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoxeterError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                CoxeterError::RootDepthExceeded { .. }
                | CoxeterError::TruncationUnsound
                | CoxeterError::OutsideBall { .. }
                | CoxeterError::NoJoinWithinCap(_)
                | CoxeterError::IterationCapExceeded(_) => 3,
                CoxeterError::NoJoin => 1,
                _ => 2,
            },
        }
    }
}

/// Subsets a default exhaustive search may cover without `--budget`.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 20;
/// Random subsets drawn when no strategy is given and exhaustive search is too large.
pub const DEFAULT_SAMPLES: usize = 10_000;

struct Group {
    name: String,
    sys: CoxeterSystem,
    cap: usize,
}

impl Group {
    fn load(g: &GlobalArgs) -> Result<Self, CliError> {
        let (name, matrix) = match (&g.group, &g.matrix) {
            (Some(id), None) => (id.clone(), CoxeterMatrix::preset(id)?),
            (None, Some(path)) => {
                (path.display().to_string(), CoxeterMatrix::from_json(&std::fs::read_to_string(path)?)?)
            }
            _ => return Err(CliError::Usage("exactly one of --group or --matrix is required".into())),
        };
        let depth = g.depth.unwrap_or(3 * g.cap + 1);
        let sys = CoxeterSystem::build(matrix, depth)?;
        let cap = if sys.is_complete() { sys.num_positive_roots() } else { g.cap };
        Ok(Self { name, sys, cap })
    }

    fn ball(&self) -> Result<Ball<'_>, CliError> {
        Ok(Ball::build(&self.sys, self.cap)?)
    }

    fn finite_ball(&self) -> Result<Ball<'_>, CliError> {
        if !self.sys.is_complete() {
            return Err(CliError::Usage(format!("{} is not a finite group", self.name)));
        }
        self.ball()
    }

    fn word(&self, w: &GroupElement) -> String {
        self.sys.format(w)
    }

    fn set(&self, s: &ReflectionSet) -> Vec<String> {
        self.sys.format_reflection_set(s)
    }
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"))?;
    Ok(())
}

fn emit_report(out: &mut dyn Write, report: &CheckReport) -> Result<i32, CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(report).expect("serializable"))?;
    Ok(report.exit_code())
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)?;
    Ok(())
}

/// Runs a parsed command, writing its output to `out`. Returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    if let Some(jobs) = cli.global.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    if let Command::Reproduce { example } = &cli.command {
        return emit_report(out, &golden::reproduce(example)?);
    }
    let g = Group::load(&cli.global)?;
    match &cli.command {
        Command::Build => build(&g, out),
        Command::Preclosure(args) => {
            let ball = g.ball()?;
            let a = g.sys.parse_reflection_set(&args.set)?;
            let result = if args.infinite {
                infinite_closure_in_ball(&ball, &a)?
            } else {
                iterate_in_ball(&ball, &a, args.iterations.unwrap_or(1))
            };
            closure_output(&g, &result, args.dot.as_ref(), args.witness, cli.global.format, out)
        }
        Command::Closure(args) => {
            let ball = g.ball()?;
            let a = g.sys.parse_reflection_set(&args.set)?;
            let result = infinite_closure_in_ball(&ball, &a)?;
            closure_output(&g, &result, args.dot.as_ref(), args.witness, cli.global.format, out)
        }
        Command::Join(p) => pair(&g, p, true, out),
        Command::Meet(p) => pair(&g, p, false, out),
        Command::Twisted(args) => twisted(&g, args, cli.global.format, out),
        Command::CheckDyer(args) => {
            let ball = g.finite_ball()?;
            emit_report(out, &checks::dyer(&ball, &g.name, args.mode, args.pairs))
        }
        Command::CheckClosureTheorem => {
            let ball = g.finite_ball()?;
            emit_report(out, &checks::closure_theorem(&ball, &g.name))
        }
        Command::ScanIdempotence(args) => {
            let ball = g.finite_ball()?;
            let (strategy, limits) = search_plan(&g, args, cli.global.seed, false)?;
            emit_report(out, &checks::idempotence_search(&ball, &g.name, "scan-idempotence", strategy, limits))
        }
        Command::FindCounterexample(args) => {
            let ball = g.finite_ball()?;
            if let Some(set) = &args.set {
                let a = g.sys.parse_reflection_set(set)?;
                return emit_report(out, &single_set(&g, &ball, &a));
            }
            let (strategy, limits) = search_plan(&g, &args.search, cli.global.seed, !args.count)?;
            emit_report(out, &checks::idempotence_search(&ball, &g.name, "find-counterexample", strategy, limits))
        }
        Command::ExportDot { set, out: file } => {
            let ball = g.ball()?;
            let mut graph = bruhat_graph(&g.sys, ball.elements())?;
            if let Some(set) = set {
                graph = restrict_labels(&graph, &g.sys.parse_reflection_set(set)?);
            }
            let dot = to_dot(&g.sys, &graph);
            match file {
                Some(path) => write_file(path, &dot)?,
                None => write!(out, "{dot}")?,
            }
            Ok(0)
        }
        Command::Reproduce { .. } => unreachable!("handled above"),
    }
}

fn build(g: &Group, out: &mut dyn Write) -> Result<i32, CliError> {
    let sys = &g.sys;
    let ball = g.ball()?;
    let reflections: Vec<String> =
        (0..sys.num_positive_roots() as u32).map(|t| g.word(sys.reflection_word(t))).collect();
    let value = json!({
        "group": g.name,
        "rank": sys.rank(),
        "generators": sys.generator_names(),
        "matrix": serde_json::from_str::<Value>(&sys.matrix().to_json()).expect("valid json"),
        "finite": sys.is_complete(),
        "order": sys.is_complete().then(|| ball.len()),
        "elements_within_cap": ball.len(),
        "cap": g.cap,
        "reflections": reflections,
    });
    emit(out, &value)?;
    Ok(0)
}

fn closure_output(
    g: &Group,
    r: &PreclosureResult,
    dot: Option<&PathBuf>,
    witness: bool,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let needs_dot = dot.is_some() || format == Format::Dot;
    let dot_text = if needs_dot {
        // the last pass ran with labels in its input set
        let labels = if r.iterations == 0 { r.input.clone() } else { last_input(g, r)? };
        let graph = restrict_labels(&bruhat_graph(&g.sys, &r.reachable)?, &labels);
        Some(to_dot(&g.sys, &graph))
    } else {
        None
    };
    if let (Some(path), Some(text)) = (dot, &dot_text) {
        write_file(path, text)?;
    }
    if format == Format::Dot {
        write!(out, "{}", dot_text.expect("computed above"))?;
    } else {
        let mut value = json!({
            "group": g.name,
            "input": g.set(&r.input),
            "closure": g.set(&r.closure),
            "added": g.set(&r.closure.difference(&r.input)),
            "reachable": r.reachable.iter().map(|w| g.word(w)).collect::<Vec<_>>(),
            "truncated": r.truncated,
            "iterations": r.iterations,
        });
        if witness {
            let paths: serde_json::Map<String, Value> = r
                .witnesses
                .iter()
                .map(|(t, path)| {
                    let labels: Vec<String> = path.iter().map(|&l| g.word(g.sys.reflection_word(l))).collect();
                    (g.word(g.sys.reflection_word(*t)), json!(labels))
                })
                .collect();
            value["witnesses"] = Value::Object(paths);
        }
        emit(out, &value)?;
    }
    Ok(if r.truncated { 3 } else { 0 })
}

/// Labels used by the final pass: the union of the labels on its witness paths is
/// not enough, so recompute the previous iterate.
fn last_input(g: &Group, r: &PreclosureResult) -> Result<ReflectionSet, CliError> {
    let ball = g.ball()?;
    Ok(iterate_in_ball(&ball, &r.input, r.iterations - 1).closure)
}

fn pair(g: &Group, p: &PairArgs, join: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let u = g.sys.element_from_word(&p.u)?;
    let v = g.sys.element_from_word(&p.v)?;
    let result = if g.sys.is_complete() {
        let ball = g.ball()?;
        let (iu, iv) = (ball.id_of(&u).expect("whole group"), ball.id_of(&v).expect("whole group"));
        if join {
            join_in_ball(&ball, iu, iv).map(|j| ball.element(j).clone())
        } else {
            Ok(ball.element(meet_in_ball(&ball, iu, iv)).clone())
        }
    } else if join {
        join_r(&g.sys, &u, &v, None)
    } else {
        meet_r(&g.sys, &u, &v)
    };
    let key = if join { "join" } else { "meet" };
    let (value, code) = match result {
        Ok(w) => (json!({ "u": g.word(&u), "v": g.word(&v), key: g.word(&w) }), 0),
        Err(CoxeterError::NoJoin) => (json!({ "u": g.word(&u), "v": g.word(&v), key: Value::Null }), 0),
        Err(e) => return Err(e.into()),
    };
    emit(out, &value)?;
    Ok(code)
}

fn descriptor(g: &Group, section: &str, window: usize) -> Result<TwistDescriptor, CliError> {
    let (kind, arg) = section.split_once(':').ok_or_else(|| {
        CliError::Usage(format!("section `{section}` should be witness:WORD, sgen:NAME or explicit:SET"))
    })?;
    let arg = arg.trim().trim_matches('"');
    Ok(match kind {
        "witness" => TwistDescriptor::finite(&g.sys, g.sys.element_from_word(arg)?)?,
        "sgen" => {
            let letters = g.sys.parse_letters(arg)?;
            let [s] = letters[..] else {
                return Err(CliError::Usage(format!("sgen needs a single generator, got `{arg}`")));
            };
            TwistDescriptor::infinite_dihedral(&g.sys, s as usize, 2 * window + 1)?
        }
        "explicit" => TwistDescriptor::explicit(g.sys.parse_reflection_set(arg)?, false),
        other => return Err(CliError::Usage(format!("unknown section kind `{other}`"))),
    })
}

fn twisted(g: &Group, args: &TwistedArgs, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let window = if g.sys.is_complete() { g.cap } else { args.window.unwrap_or(g.cap) };
    let a = descriptor(g, &args.section, window)?;
    let sys = &g.sys;
    let ball = Ball::build(sys, window)?;
    let graph = twisted_graph_in_ball(&ball, &a)?;
    let mut value = json!({ "group": g.name, "section": args.section, "exact": graph.exact });
    let mut code = 0;
    if args.lengths {
        let table: serde_json::Map<String, Value> = ball
            .elements()
            .iter()
            .map(|w| Ok((g.word(w), json!(twisted_length_of(sys, &a, w)?))))
            .collect::<Result<_, CoxeterError>>()?;
        value["lengths"] = Value::Object(table);
    }
    if args.acyclic {
        let verdict = check_acyclic(sys, &a, window)?;
        value["acyclic"] = match verdict {
            Acyclicity::Acyclic => {
                let (bottoms, tops) = extremes(&graph);
                let names = |ids: Vec<u32>| ids.into_iter().map(|i| g.word(ball.element(i))).collect::<Vec<_>>();
                json!({ "verdict": "acyclic", "bottoms": names(bottoms), "tops": names(tops) })
            }
            Acyclicity::CycleFound(walk) => {
                json!({ "verdict": "cycle", "cycle": walk.iter().map(|w| g.word(w)).collect::<Vec<_>>() })
            }
            Acyclicity::Unknown => {
                code = 3;
                json!({ "verdict": "unknown" })
            }
        };
    }
    if let Some(q) = &args.leq {
        let (from, to) = q.split_once(',').ok_or_else(|| CliError::Usage("--leq expects FROM,TO".into()))?;
        let (u, v) = (sys.element_from_word(from.trim())?, sys.element_from_word(to.trim())?);
        let verdict = match (ball.id_of(&u), ball.id_of(&v)) {
            (Some(iu), Some(iv)) => reaches(&graph, iu, iv),
            _ => bruhat_core::Verdict::Unknown,
        };
        value["leq"] = json!({ "from": g.word(&u), "to": g.word(&v), "verdict": verdict });
    }
    let dot = twisted_to_dot(sys, &graph);
    if let Some(path) = &args.dot {
        write_file(path, &dot)?;
    }
    if format == Format::Dot {
        write!(out, "{dot}")?;
    } else {
        emit(out, &value)?;
    }
    Ok(code)
}

fn search_plan(
    g: &Group,
    args: &SearchArgs,
    seed: u64,
    stop_at_first: bool,
) -> Result<(SubsetStrategy, SearchLimits), CliError> {
    let n = g.sys.num_positive_roots();
    let space = checks::SubsetStream::new(n, SubsetStrategy::Exhaustive, args.max_size).total();
    let strategy = match args.strategy {
        Some(s) => s,
        None if space <= EXHAUSTIVE_LIMIT => SubsetStrategy::Exhaustive,
        None => SubsetStrategy::Random { count: DEFAULT_SAMPLES, seed },
    };
    if strategy == SubsetStrategy::Exhaustive && space > EXHAUSTIVE_LIMIT && args.budget.is_none() {
        return Err(CliError::Usage(format!(
            "exhaustive search over {space} subsets needs an explicit --budget (or use --strategy random:K:SEED)"
        )));
    }
    let limits = SearchLimits {
        max_size: args.max_size,
        budget: args.budget,
        start: args.start,
        stop_at_first,
        progress: args.progress,
    };
    Ok((strategy, limits))
}

fn single_set(g: &Group, ball: &Ball<'_>, a: &ReflectionSet) -> CheckReport {
    let start = std::time::Instant::now();
    let mut report = CheckReport::new("find-counterexample/set", &g.name);
    let once = iterate_in_ball(ball, a, 1);
    let twice = iterate_in_ball(ball, a, 2);
    report.instances_checked = 1;
    report.truncated_any = twice.truncated;
    if once.closure != twice.closure {
        report.fail(
            vec![checks::fmt_set(&g.sys, a)],
            checks::fmt_set(&g.sys, &once.closure),
            checks::fmt_set(&g.sys, &twice.closure),
        );
    }
    report.finish(start.elapsed())
}
