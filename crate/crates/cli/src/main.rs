//! `quatgraph`: build and verify large-girth Cayley graphs from integral
//! quaternions.
//!
//! Exit status: 0 when every check passes, 1 on an invariant violation,
//! 2 on a usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use quatgraph::basis::Pairing;
use quatgraph::export::{to_dot, EdgeList};
use quatgraph::family::{
    c_table, list_family, run_grid, write_c_table_csv, write_grid_csv, Branch, FamilyQuery,
};
use quatgraph::girth::{girth_words_with_budget, WordGirth};
use quatgraph::report::verify_report_with_budget;
use quatgraph::word::factor;
use quatgraph::{
    CayleyGraph, Error, FamilyParams, GeneratorSet, GraphReport, PrimeBasis, Quaternion,
};

#[derive(Parser)]
#[command(
    name = "quatgraph",
    version,
    about = "Large-girth Cayley graphs from integral quaternions"
)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Memory budget for graph construction and word searches.
    #[arg(
        long,
        global = true,
        env = "QUATGRAPH_MEMORY_GIB",
        default_value_t = 8.0
    )]
    memory_gib: f64,

    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Family parameters for a degree parameter d.
    Params {
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = Format::Kv)]
        format: Format,
    },
    /// The canonical prime set P(p), optionally marking the generators for d.
    Basis {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: Option<u64>,
    },
    /// Factor a quaternion of norm p^k.
    Factor {
        #[arg(long)]
        p: u64,
        /// "a0,a1,a2,a3" or "a0+a1i+a2j+a3k".
        #[arg(long, allow_hyphen_values = true)]
        quaternion: Quaternion,
    },
    /// Generator images modulo q as canonical matrices.
    Reduce(GraphArgs),
    #[command(subcommand)]
    Graph(GraphCommand),
    #[command(subcommand)]
    Family(FamilyCommand),
    #[command(subcommand)]
    Table(TableCommand),
}

#[derive(Args, Clone)]
struct GraphArgs {
    #[arg(long)]
    d: u64,
    /// Defaults to the family prime for d.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    q: u64,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Build the graph and export it.
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
    },
    /// Girth by BFS (when the graph fits) and by word search.
    Girth {
        #[command(flatten)]
        graph: GraphArgs,
        /// Longest relator searched; defaults to the BFS girth or the Moore bound.
        #[arg(long)]
        max_len: Option<u32>,
    },
    /// Full verification report.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Format::Kv)]
        format: Format,
    },
}

#[derive(Args, Clone)]
struct FamilyArgs {
    #[arg(long)]
    d: u64,
    #[arg(long, default_value_t = 3)]
    q_min: u64,
    #[arg(long)]
    q_max: u64,
    #[arg(long, value_enum)]
    branch: BranchArg,
    /// Keep only q above the proven threshold Q_d(p).
    #[arg(long)]
    enforce_regime: bool,
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Admissible q for the branch.
    List(FamilyArgs),
    /// Build and verify every member.
    Run {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum TableCommand {
    /// c(d) = 4 / (3 log_d p) against the published brackets.
    C {
        #[arg(long, default_value_t = 10)]
        d_min: u64,
        #[arg(long)]
        d_max: u64,
        /// Include prime powers d.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Kv,
    Dot,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    X,
    Y,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::X => Branch::X,
            BranchArg::Y => Branch::Y,
        }
    }
}

impl From<&FamilyArgs> for FamilyQuery {
    fn from(a: &FamilyArgs) -> Self {
        FamilyQuery {
            d: a.d,
            q_min: a.q_min,
            q_max: a.q_max,
            branch: a.branch.into(),
            enforce_regime: a.enforce_regime,
        }
    }
}

/// A failed check, reported with exit status 1.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::anyhow!(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let invariant = e.downcast_ref::<CheckFailed>().is_some()
                || matches!(e.downcast_ref::<Error>(), Some(Error::Invariant(_)));
            ExitCode::from(if invariant { 1 } else { 2 })
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    if cli.memory_gib.is_nan() || cli.memory_gib <= 0.0 {
        return Err(usage("--memory-gib must be positive"));
    }
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .context("configuring worker threads")?;
    }
    let budget = (cli.memory_gib * (1u64 << 30) as f64) as u64;
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };

    let result = match &cli.command {
        Command::Params { d, format } => params(&mut out, *d, *format),
        Command::Basis { p, d } => basis(&mut out, *p, *d),
        Command::Factor { p, quaternion } => factor_cmd(&mut out, *p, quaternion),
        Command::Reduce(g) => reduce(&mut out, g),
        Command::Graph(GraphCommand::Build { graph, format }) => {
            build(&mut out, graph, *format, budget)
        }
        Command::Graph(GraphCommand::Girth { graph, max_len }) => {
            girth(&mut out, graph, *max_len, budget)
        }
        Command::Graph(GraphCommand::Verify { graph, format }) => {
            verify(&mut out, graph, *format, budget)
        }
        Command::Family(FamilyCommand::List(f)) => family_list(&mut out, f),
        Command::Family(FamilyCommand::Run { family, format }) => {
            let jobs = if cli.jobs == 0 {
                rayon::current_num_threads()
            } else {
                cli.jobs
            };
            family_run(&mut out, family, *format, jobs, budget)
        }
        Command::Table(TableCommand::C { d_min, d_max, all }) => {
            table_c(&mut out, *d_min, *d_max, *all)
        }
    };
    out.flush().context("writing output")?;
    result
}

fn params(out: &mut dyn Write, d: u64, format: Format) -> Result<()> {
    let f = FamilyParams::new(d)?;
    let rows = [
        ("d", f.d.to_string()),
        ("p", f.p.to_string()),
        ("kappa", f.kappa.to_string()),
        ("c_d", f.c_d.to_string()),
        ("q_bound", f.q_bound.to_string()),
        ("parity_rule", f.parity_rule.to_string()),
        ("theorem_hypothesis", f.theorem_hypothesis.to_string()),
    ];
    match format {
        Format::Kv => {
            for (k, v) in rows {
                writeln!(out, "{k}={v}")?;
            }
        }
        Format::Csv => {
            let (keys, vals): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
            writeln!(out, "{}", keys.join(","))?;
            writeln!(out, "{}", vals.join(","))?;
        }
        _ => return Err(usage("params supports --format kv or csv")),
    }
    Ok(())
}

fn basis(out: &mut dyn Write, p: u64, d: Option<u64>) -> Result<()> {
    let b = PrimeBasis::build(p)?;
    let selected = d.map(|d| b.select_generators(d)).transpose()?;
    writeln!(out, "# p={} size={} s={} t={}", p, b.len(), b.s, b.t)?;
    for (i, (e, pairing)) in b.elements.iter().zip(&b.pairing).enumerate() {
        let kind = match pairing {
            Pairing::Conjugate(j) => format!("mu conj={j}"),
            Pairing::Pure => "nu".to_string(),
        };
        let mark = match &selected {
            Some(g) if g.basis_indices.binary_search(&i).is_ok() => " selected",
            _ => "",
        };
        writeln!(out, "{i}\t{e}\t{kind}{mark}")?;
    }
    Ok(())
}

fn factor_cmd(out: &mut dyn Write, p: u64, a: &Quaternion) -> Result<()> {
    let b = PrimeBasis::build(p)?;
    let f = factor(a, &b)?;
    let word: Vec<String> = f.quaternions(&b).map(|q| q.to_string()).collect();
    writeln!(out, "content_exponent={}", f.content_exponent)?;
    writeln!(out, "unit={}", f.unit)?;
    writeln!(out, "word=[{}]", word.join(", "))?;
    Ok(())
}

fn generators(g: &GraphArgs) -> Result<(FamilyParams, GeneratorSet)> {
    let params = match g.p {
        Some(p) => FamilyParams::with_prime(g.d, p)?,
        None => FamilyParams::new(g.d)?,
    };
    let gens = PrimeBasis::build(params.p)?.select_generators(g.d)?;
    Ok((params, gens))
}

fn spec(g: &GraphArgs) -> Result<(FamilyParams, quatgraph::GraphSpec)> {
    let (params, gens) = generators(g)?;
    let spec = quatgraph::projective::image_generators(&gens, g.q)?;
    Ok((params, spec))
}

fn reduce(out: &mut dyn Write, g: &GraphArgs) -> Result<()> {
    let (_, s) = spec(g)?;
    let ctx = s.ctx();
    writeln!(
        out,
        "# d={} p={} q={} x={} y={}",
        s.d, s.p, s.q, ctx.x, ctx.y
    )?;
    writeln!(
        out,
        "# legendre={} group={} theoretical_regime={}",
        s.legendre_pq, s.group_kind, s.theoretical_regime
    )?;
    for (i, (e, m)) in s
        .generators
        .elements
        .iter()
        .zip(&s.generator_images)
        .enumerate()
    {
        writeln!(out, "{i}\t{e}\t{m}\tinverse={}", s.generators.inverse[i])?;
    }
    Ok(())
}

fn build(out: &mut dyn Write, g: &GraphArgs, format: Format, budget: u64) -> Result<()> {
    let (_, s) = spec(g)?;
    let graph = CayleyGraph::build(&s, budget)?;
    match format {
        Format::Edgelist => write!(out, "{}", EdgeList::from_graph(&graph).write())?,
        Format::Dot => write!(out, "{}", to_dot(&graph)?)?,
        _ => return Err(usage("graph build supports --format edgelist or dot")),
    }
    Ok(())
}

fn girth(out: &mut dyn Write, g: &GraphArgs, max_len: Option<u32>, budget: u64) -> Result<()> {
    let (_, s) = spec(g)?;
    let bfs = match CayleyGraph::build(&s, budget) {
        Ok(graph) => Some(graph.girth_bfs()),
        Err(Error::MemoryBudget { required, .. }) => {
            writeln!(out, "# graph needs {required} bytes; BFS skipped")?;
            None
        }
        Err(e) => return Err(e.into()),
    };
    let limit = match (max_len, bfs) {
        (Some(m), _) => m,
        (None, Some(Some(t))) => t,
        (None, _) => {
            let n = s.order();
            quatgraph::bounds::moore_bound(s.degree() as u64, n, quatgraph::bounds::Parity::Odd)
                .ceil() as u32
                + 1
        }
    };
    let words = girth_words_with_budget(&s, limit, budget)?;
    let lower = quatgraph::bounds::word_girth_lower_bound(s.p, s.q, s.legendre_pq);
    writeln!(out, "n={}", s.order())?;
    match bfs {
        Some(Some(t)) => writeln!(out, "girth_bfs={t}")?,
        Some(None) => writeln!(out, "girth_bfs=inf")?,
        None => writeln!(out, "girth_bfs=skipped")?,
    }
    match &words {
        WordGirth::Found { girth, witness } => {
            writeln!(out, "girth_words={girth}")?;
            writeln!(out, "witness={}", witness.display(&s.generators))?;
        }
        WordGirth::NotFound { searched_up_to } => {
            writeln!(out, "girth_words=none_up_to_{searched_up_to}")?;
        }
    }
    writeln!(out, "word_lower_bound={lower}")?;
    if let (Some(b), WordGirth::Found { girth, .. }) = (bfs, &words) {
        if b != Some(*girth) {
            return Err(
                CheckFailed(format!("girth engines disagree: bfs {b:?}, words {girth}")).into(),
            );
        }
    }
    if let WordGirth::Found { girth, .. } = words {
        if (girth as f64) < lower - quatgraph::report::BOUND_TOLERANCE {
            return Err(CheckFailed(format!("girth {girth} is below the bound {lower}")).into());
        }
    }
    Ok(())
}

fn verify(out: &mut dyn Write, g: &GraphArgs, format: Format, budget: u64) -> Result<()> {
    let (params, s) = spec(g)?;
    let graph = CayleyGraph::build(&s, budget)?;
    let report = verify_report_with_budget(&graph, &params, budget)?;
    let violations = quatgraph::family::check_instance(&graph, &report);
    write_report(out, &report, format)?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CheckFailed(format!("failed checks: {}", violations.join(", "))).into())
    }
}

fn write_report(out: &mut dyn Write, r: &GraphReport, format: Format) -> Result<()> {
    match format {
        Format::Kv => write!(out, "{r}")?,
        Format::Csv => {
            writeln!(out, "{}", GraphReport::FIELDS.join(","))?;
            writeln!(out, "{}", r.values().join(","))?;
        }
        _ => return Err(usage("reports support --format kv or csv")),
    }
    Ok(())
}

fn family_list(out: &mut dyn Write, f: &FamilyArgs) -> Result<()> {
    let specs = list_family(&f.into())?;
    writeln!(out, "d,p,q,legendre,group,n,theoretical_regime")?;
    for s in specs {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.d,
            s.p,
            s.q,
            s.legendre_pq,
            s.group_kind,
            s.order(),
            s.theoretical_regime
        )?;
    }
    Ok(())
}

fn family_run(
    out: &mut dyn Write,
    f: &FamilyArgs,
    format: Format,
    jobs: usize,
    budget: u64,
) -> Result<()> {
    let outcome = run_grid(&f.into(), jobs, budget)?;
    match format {
        Format::Csv => write_grid_csv(&outcome.records, &mut *out)?,
        Format::Kv => {
            for r in &outcome.records {
                writeln!(out, "d={}\np={}\nq={}", r.d, r.p, r.q)?;
                write!(out, "{}", r.report)?;
                writeln!(out, "violations={}\n", r.violations.join(";"))?;
            }
        }
        _ => return Err(usage("family run supports --format csv or kv")),
    }
    for failure in &outcome.failures {
        eprintln!("q={}: {}", failure.q, failure.error);
    }
    if outcome.is_clean() {
        Ok(())
    } else {
        let bad = outcome
            .records
            .iter()
            .filter(|r| !r.violations.is_empty())
            .count();
        Err(CheckFailed(format!(
            "{bad} instance(s) with violations, {} instance(s) failed",
            outcome.failures.len()
        ))
        .into())
    }
}

fn table_c(out: &mut dyn Write, d_min: u64, d_max: u64, all: bool) -> Result<()> {
    if d_min > d_max {
        return Err(usage("--d-min must not exceed --d-max"));
    }
    let rows = c_table(d_min, d_max, all)?;
    write_c_table_csv(&rows, &mut *out)?;
    let failing: Vec<u64> = rows
        .iter()
        .filter(|r| !r.meets_bracket)
        .map(|r| r.d)
        .collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(CheckFailed(format!("c(d) below the bracket bound for d in {failing:?}")).into())
    }
}
