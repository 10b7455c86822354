//! Command-line front end. [`run`] takes the argument list and the two output
//! streams and returns the process exit code: 0 on success, 1 for usage or
//! validation errors, 2 when an internal consistency check fails.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::bijection::{cycles, path_word, phi, phi_inv, theta, RestrictedVector};
use crate::chain::{apply_moran_step, MoranStep};
use crate::exactdist::{self, Pmf};
use crate::forest::{DirectedGraph, ForestStatistic, RootedForest};
use crate::harness::{self, Experiment, SamplerKind, Statistic};
use crate::oracle;
use crate::rng::RngStream;
use crate::samplers::ForestSampler;

/// Directory that relative `--output` paths are resolved against.
pub const OUTPUT_DIR_ENV: &str = "MORAN_OUTPUT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "moran",
    version,
    about = "Sample, compute and check the Moran forest"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write to this file instead of stdout (relative paths go under $MORAN_OUTPUT_DIR).
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SeedArgs {
    /// Master seed; a random one is drawn and logged to stderr if absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads. Never changes the output.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw Moran forests.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value_t = SamplerArg::Ua)]
        sampler: SamplerArg,
        #[arg(long, value_enum, default_value_t = SampleFormat::Forest)]
        format: SampleFormat,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the disconnect-and-reattach chain, printing a JSON-lines trace.
    Chain {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        steps: u64,
        #[arg(long, value_enum, default_value_t = StartGraph::Complete)]
        start: StartGraph,
        #[arg(long, value_enum, default_value_t = Trace::None)]
        trace: Trace,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact and limiting probability tables as CSV.
    Exact {
        #[arg(value_enum)]
        table: Table,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long, default_value_t = 20)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = BackendArg::Float)]
        backend: BackendArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Apply the bijection between attachment vectors and rooted trees.
    Bijection {
        #[command(subcommand)]
        action: BijectionAction,
    },
    /// Run the exhaustive oracle checks for a small n.
    Verify {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Monte Carlo experiment compared with its reference law.
    Mc {
        #[arg(long, value_enum)]
        statistic: Statistic,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        reps: usize,
        #[arg(long, value_enum, default_value_t = SamplerKind::Ua)]
        sampler: SamplerKind,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Mean largest degree or largest tree against its centering sequence.
    Asymptotics {
        #[arg(long, value_enum)]
        statistic: Statistic,
        /// Comma-separated values of n.
        #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
        grid: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        reps: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand, Debug)]
enum BijectionAction {
    /// Vector `n:(u2,...,u(n-1))` to rooted tree.
    Phi {
        #[arg(long)]
        vector: String,
    },
    /// Rooted tree (parent-array line) to vector.
    PhiInv {
        #[arg(long)]
        tree: String,
    },
    /// Exhaustive round trip and edge preservation for n = 2..=max-n.
    SelfTest {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SamplerArg {
    Ua,
    Backward,
    UniformTree,
}

impl SamplerArg {
    fn sampler(self) -> ForestSampler {
        match self {
            Self::Ua => ForestSampler::UniformAttachment,
            Self::Backward => ForestSampler::Backward,
            Self::UniformTree => ForestSampler::UniformTree,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SampleFormat {
    /// One parent-array line per forest.
    Forest,
    /// CSV of per-forest statistics.
    Csv,
    /// JSON lines of per-forest statistics.
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StartGraph {
    Empty,
    Complete,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Trace {
    /// Only the final state.
    None,
    /// A hash of the state after every step.
    Hash,
    /// The edge list after every step.
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Rational,
    Float,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[allow(clippy::enum_variant_names)]
enum Table {
    /// Number of trees, `k,prob`.
    Ntrees,
    /// Number of trees through the increasing-edge counts (rational).
    NtreesViaA,
    /// Rooted trees on `1..=m` by increasing edges, `k,count`.
    ATable,
    /// Degree of a fixed vertex.
    Degree,
    /// Limiting degree law up to `kmax`.
    DegreeLimit,
    /// Bounds on the limiting degree tail, `k,lower,upper`.
    DegreeBounds,
    /// Pure-birth chain at time `ell`.
    Yule,
    /// Size-biased pure-birth chain at time `ell`.
    YuleStar,
    /// Continuous bounds on the pure-birth tail at time `ell`, `k,lower,upper`.
    YuleSandwich,
    /// Steps after the arrival of vertex 1's root.
    H1,
    /// Tree of vertex 1, given `--h` or unconditional.
    T1,
    /// Limiting size of a uniformly chosen tree.
    TreeULimit,
    /// Limiting size of the tree of vertex 1.
    Tree1Limit,
    /// Uniform-time tail of the pure-birth chain against its asymptotic form.
    TreeTail,
    /// Normalized number of trees, `x,prob`.
    Clt,
    /// Centering sequences for the largest degree and the largest tree.
    Predictions,
}

/// Error carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn invalid(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

type CliResult = Result<(), Failure>;

macro_rules! invalid_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                invalid(e)
            }
        }
    )*};
}

invalid_from!(
    exactdist::ExactError,
    harness::HarnessError,
    oracle::OracleError,
    crate::samplers::SamplerError,
    crate::chain::ChainError,
    crate::forest::ForestError,
    crate::bijection::BijectionError,
    std::fmt::Error
);

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let mut text = String::new();
    let (result, output) = execute(cli.command, &mut text, stderr);
    // failed checks still show their table
    let result = match result {
        Err(f) if f.code != 2 => Err(f),
        r => emit(&text, output, stdout).and(r),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(text: &str, output: Option<PathBuf>, stdout: &mut dyn Write) -> CliResult {
    match output {
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| invalid(format!("cannot write output: {e}"))),
        Some(path) => {
            let path = match std::env::var_os(OUTPUT_DIR_ENV) {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path,
            };
            std::fs::write(&path, text)
                .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))
        }
    }
}

fn seed_or_random(seed: Option<u64>, stderr: &mut dyn Write) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        let _ = writeln!(stderr, "seed: {s}");
        s
    })
}

fn execute(
    command: Command,
    out: &mut String,
    stderr: &mut dyn Write,
) -> (CliResult, Option<PathBuf>) {
    match command {
        Command::Sample {
            n,
            count,
            sampler,
            format,
            seed,
            out: o,
        } => (
            sample(n, count, sampler, format, seed, out, stderr),
            o.output,
        ),
        Command::Chain {
            n,
            steps,
            start,
            trace,
            seed,
            out: o,
        } => (chain(n, steps, start, trace, seed, out, stderr), o.output),
        Command::Exact {
            table,
            n,
            m,
            ell,
            h,
            kmax,
            backend,
            out: o,
        } => {
            let q = ExactQuery {
                n,
                m,
                ell,
                h,
                kmax,
                backend,
            };
            (exact(table, &q, out, stderr), o.output)
        }
        Command::Bijection { action } => (bijection(action, out), None),
        Command::Verify { n, out: o } => (verify(n, out), o.output),
        Command::Mc {
            statistic,
            n,
            reps,
            sampler,
            format,
            seed,
            out: o,
        } => (
            mc(statistic, n, reps, sampler, format, seed, out, stderr),
            o.output,
        ),
        Command::Asymptotics {
            statistic,
            grid,
            reps,
            format,
            seed,
            out: o,
        } => (
            asymptotics(statistic, &grid, reps, format, seed, out, stderr),
            o.output,
        ),
    }
}

fn sample(
    n: usize,
    count: usize,
    sampler: SamplerArg,
    format: SampleFormat,
    seed: SeedArgs,
    out: &mut String,
    stderr: &mut dyn Write,
) -> CliResult {
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    let master = seed_or_random(seed.seed, stderr);
    let s = sampler.sampler();
    let draw = || -> Result<Vec<RootedForest>, Failure> {
        (0..count as u64)
            .into_par_iter()
            .map(|i| {
                s.sample(n, &mut RngStream::derive(master, i))
                    .map_err(Failure::from)
            })
            .collect()
    };
    let forests = with_jobs(seed.jobs, draw)??;
    if let SampleFormat::Csv = format {
        out.push_str("n,num_trees,num_edges,max_degree,max_tree_size\n");
    }
    for f in &forests {
        match format {
            SampleFormat::Forest => writeln!(out, "{f}")?,
            SampleFormat::Json => writeln!(out, "{}", f.stats().to_json())?,
            SampleFormat::Csv => {
                let s = f.stats();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    s.n, s.num_trees, s.num_edges, s.max_degree, s.max_tree_size
                )?
            }
        }
    }
    Ok(())
}

fn with_jobs<R: Send>(jobs: Option<usize>, work: impl FnOnce() -> R + Send) -> Result<R, Failure> {
    match jobs {
        None => Ok(work()),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map(|pool| pool.install(work))
            .map_err(|e| invalid(e.to_string())),
    }
}

/// FNV-1a over the edge list.
fn graph_hash(g: &DirectedGraph) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for (u, v) in g.edges() {
        for x in [u as u64, v as u64] {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100_0000_01b3);
            }
        }
    }
    h
}

fn chain(
    n: usize,
    steps: u64,
    start: StartGraph,
    trace: Trace,
    seed: Option<u64>,
    out: &mut String,
    stderr: &mut dyn Write,
) -> CliResult {
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    let seed = seed_or_random(seed, stderr);
    let mut rng = RngStream::new(seed);
    let mut g = match start {
        StartGraph::Empty => DirectedGraph::empty(n)?,
        StartGraph::Complete => DirectedGraph::complete(n)?,
    };
    let mut absorbed = g.is_forest().then_some(0u64);
    for t in 1..=steps {
        let step = MoranStep::random(n, &mut rng);
        apply_moran_step(&mut g, step)?;
        if absorbed.is_none() && g.is_forest() {
            absorbed = Some(t);
        }
        let line = match trace {
            Trace::None => None,
            Trace::Hash => Some(serde_json::json!({
                "t": t, "u": step.u, "v": step.v, "edges": g.num_edges(),
                "forest": g.is_forest(), "hash": format!("{:016x}", graph_hash(&g)),
            })),
            Trace::Full => Some(serde_json::json!({
                "t": t, "u": step.u, "v": step.v, "forest": g.is_forest(),
                "edges": g.edges().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
            })),
        };
        if let Some(line) = line {
            writeln!(out, "{line}")?;
        }
    }
    let forest = crate::forest::validate_forest(&g)
        .ok()
        .map(|f| f.to_string());
    let summary = serde_json::json!({
        "final": {
            "steps": steps,
            "edges": g.edges().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
            "forest": forest,
            "absorption_time": absorbed,
        }
    });
    writeln!(out, "{summary}")?;
    Ok(())
}

struct ExactQuery {
    n: Option<usize>,
    m: Option<usize>,
    ell: Option<usize>,
    h: Option<usize>,
    kmax: usize,
    backend: BackendArg,
}

impl ExactQuery {
    fn n(&self) -> Result<usize, Failure> {
        self.n.ok_or_else(|| invalid("this table needs --n"))
    }

    fn ell(&self) -> Result<usize, Failure> {
        self.ell.ok_or_else(|| invalid("this table needs --ell"))
    }
}

fn pmf_table<F, R>(backend: BackendArg, float: F, rational: R, out: &mut String) -> CliResult
where
    F: FnOnce() -> Result<Pmf<f64>, exactdist::ExactError>,
    R: FnOnce() -> Result<Pmf<BigRational>, exactdist::ExactError>,
{
    let text = match backend {
        BackendArg::Float => float()?.trimmed().to_csv(),
        BackendArg::Rational => rational()?.trimmed().to_csv(),
    };
    out.push_str(&text);
    Ok(())
}

fn warn_truncation(t: &exactdist::LimitTable, stderr: &mut dyn Write) {
    if let Some(w) = t.warning {
        let _ = writeln!(
            stderr,
            "warning: table stops at k = {} leaving tail mass {:e}",
            w.kmax, w.tail_mass
        );
    }
}

fn exact(table: Table, q: &ExactQuery, out: &mut String, stderr: &mut dyn Write) -> CliResult {
    use exactdist::*;
    match table {
        Table::Ntrees => {
            let n = q.n()?;
            pmf_table(
                q.backend,
                || ntrees_pmf::<f64>(n),
                || ntrees_pmf::<BigRational>(n),
                out,
            )
        }
        Table::NtreesViaA => {
            let n = q.n()?;
            pmf_table(
                q.backend,
                || ntrees_pmf_via_a(n).map(|p| p.to_f64()),
                || ntrees_pmf_via_a(n),
                out,
            )
        }
        Table::ATable => {
            let m = q.m.or(q.n).ok_or_else(|| invalid("a-table needs --m"))?;
            if m == 0 {
                return Err(invalid("m must be at least 1"));
            }
            out.push_str("k,count\n");
            for (k, a) in a_table(m).iter().enumerate() {
                writeln!(out, "{k},{a}")?;
            }
            Ok(())
        }
        Table::Degree => {
            let n = q.n()?;
            pmf_table(
                q.backend,
                || degree_pmf::<f64>(n),
                || degree_pmf::<BigRational>(n),
                out,
            )
        }
        Table::DegreeLimit => {
            let t = degree_limit_pmf(q.kmax);
            warn_truncation(&t, stderr);
            out.push_str(&t.pmf.to_csv());
            Ok(())
        }
        Table::DegreeBounds => {
            out.push_str("k,lower,upper\n");
            for k in 1..=q.kmax.max(1) {
                let (lo, hi) = degree_tail_bounds(k)?;
                writeln!(out, "{k},{},{}", lo.render(), hi.render())?;
            }
            Ok(())
        }
        Table::Yule | Table::YuleStar => {
            let variant = match table {
                Table::Yule => YuleVariant::Plain,
                _ => YuleVariant::SizeBiased,
            };
            let law = yule_law(q.n()?, variant)?;
            let ell = q.ell()?;
            pmf_table(q.backend, || law.pmf_at_f64(ell), || law.pmf_at(ell), out)
        }
        Table::YuleSandwich => {
            let (n, ell) = (q.n()?, q.ell()?);
            out.push_str("k,lower,upper\n");
            for k in 0..=q.kmax.min(n.saturating_sub(2)) {
                let (lo, hi) = yule_sandwich(n, ell, k)?;
                writeln!(out, "{k},{},{}", lo.render(), hi.render())?;
            }
            Ok(())
        }
        Table::H1 => {
            let n = q.n()?;
            pmf_table(
                q.backend,
                || h1_pmf::<f64>(n),
                || h1_pmf::<BigRational>(n),
                out,
            )
        }
        Table::T1 => {
            let n = q.n()?;
            match q.h {
                Some(h) => pmf_table(
                    q.backend,
                    || t1_conditional(n, h).map(|p| p.to_f64()),
                    || t1_conditional(n, h),
                    out,
                ),
                None => pmf_table(q.backend, || t1_pmf_f64(n), || t1_pmf(n), out),
            }
        }
        Table::TreeULimit | Table::Tree1Limit => {
            let t = match table {
                Table::TreeULimit => limit_tree_u_table(q.kmax),
                _ => limit_tree1_table(q.kmax),
            };
            warn_truncation(&t, stderr);
            out.push_str(&t.pmf.to_csv());
            Ok(())
        }
        Table::TreeTail => {
            let n = q.n()?;
            out.push_str("k,exact,asymptotic,ratio\n");
            for k in 1..=q.kmax.min(n.saturating_sub(1)) {
                let dp = yule_mixture_tail(n, k)?;
                let asym = tree_tail_asymptotic(k as f64)?;
                writeln!(out, "{k},{},{},{}", dp.render(), asym.render(), dp / asym)?;
            }
            Ok(())
        }
        Table::Clt => {
            let law = clt_normalized_dist(q.n()?)?;
            let _ = writeln!(
                stderr,
                "kolmogorov distance to N(0,1): {}",
                law.ks_to_standard_normal()
            );
            out.push_str("x,prob\n");
            for (x, p) in &law.atoms {
                writeln!(out, "{x},{}", p.render())?;
            }
            Ok(())
        }
        Table::Predictions => {
            let n = q.n()?;
            writeln!(out, "n,max_degree,max_tree_size")?;
            writeln!(
                out,
                "{n},{},{}",
                maxdegree_prediction(n as f64)?,
                maxtree_prediction(n as f64)?
            )?;
            Ok(())
        }
    }
}

fn bijection(action: BijectionAction, out: &mut String) -> CliResult {
    match action {
        BijectionAction::Phi { vector } => {
            let u: RestrictedVector = vector.parse()?;
            let c = theta(&u);
            let cyc: Vec<String> = cycles(&c)
                .iter()
                .map(|cy| {
                    let parts: Vec<String> = cy.iter().map(|x| x.to_string()).collect();
                    format!("({})", parts.join(","))
                })
                .collect();
            let t = phi(&u);
            let word: Vec<String> = path_word(&t).iter().map(|x| x.to_string()).collect();
            writeln!(out, "theta: {c}")?;
            writeln!(out, "cycles: {}", cyc.join(" "))?;
            writeln!(out, "path word: ({})", word.join(","))?;
            writeln!(out, "tree: {t}")?;
            Ok(())
        }
        BijectionAction::PhiInv { tree } => {
            let t: RootedForest = tree.parse()?;
            let u = phi_inv(&t)?;
            writeln!(out, "{}:{u}", u.n())?;
            Ok(())
        }
        BijectionAction::SelfTest { max_n } => {
            if !(2..=8).contains(&max_n) {
                return Err(invalid("max-n must be in 2..=8"));
            }
            out.push_str("n,vectors,round_trip,increasing_edges\n");
            let mut ok = true;
            for n in 2..=max_n {
                let mut vectors = 0;
                let mut round = true;
                let mut edges = true;
                for u in RestrictedVector::all(n) {
                    vectors += 1;
                    let t = phi(&u);
                    round &= phi_inv(&t).as_ref() == Ok(&u);
                    let mut inc: Vec<_> = t.increasing_edges().collect();
                    inc.sort_unstable();
                    edges &= inc == u.increasing_pairs();
                }
                ok &= round && edges;
                writeln!(out, "{n},{vectors},{},{}", verdict(round), verdict(edges))?;
            }
            check(ok, "bijection self-test failed")
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn check(ok: bool, message: &str) -> CliResult {
    if ok {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            message: message.into(),
        })
    }
}

fn verify(n: usize, out: &mut String) -> CliResult {
    let truth = oracle::ua_exact(n)?;
    let mut rows: Vec<(String, bool)> = Vec::new();
    rows.push((
        "ua_exact sums to 1".into(),
        num_traits::One::is_one(&truth.total()),
    ));
    rows.push(("ua_exact is exchangeable".into(), truth.is_exchangeable()));
    let expected_support = (n + 1).pow(n as u32 - 1) - 1;
    rows.push((
        format!("support size == {expected_support}"),
        truth.support_size() == expected_support,
    ));
    if n <= 4 {
        let kernel = oracle::transition_kernel(n)?;
        rows.push((
            "kernel rows sum to 1".into(),
            kernel.row_sums().iter().all(num_traits::One::is_one),
        ));
        let pi = oracle::stationary_solve(n)?;
        rows.push(("stationary == ua_exact".into(), pi == truth));
    }
    rows.push((
        "ua sampler == ua_exact".into(),
        oracle::ua_construction_exact(n)? == truth,
    ));
    rows.push((
        "backward sampler == ua_exact".into(),
        oracle::backward_exact(n)? == truth,
    ));
    rows.push((
        "uniform-tree sampler == ua_exact".into(),
        oracle::via_tree_exact(n)? == truth,
    ));
    let marg = |s| oracle::marginal(&truth, s);
    rows.push((
        "number of trees == ntrees_pmf".into(),
        marg(ForestStatistic::NumTrees) == exactdist::ntrees_pmf::<BigRational>(n)?,
    ));
    rows.push((
        "degree of vertex 1 == degree_pmf".into(),
        marg(ForestStatistic::Degree(1)) == exactdist::degree_pmf::<BigRational>(n)?,
    ));
    rows.push((
        "tree of vertex 1 == t1_pmf".into(),
        marg(ForestStatistic::TreeSize(1)) == exactdist::t1_pmf(n)?,
    ));
    let counted: Vec<String> = oracle::count_trees_by_increasing_edges(n - 1)?
        .iter()
        .map(|c| c.to_string())
        .collect();
    let expanded: Vec<String> = exactdist::a_table(n - 1)
        .iter()
        .map(|c| c.to_string())
        .collect();
    rows.push(("a_table == tree enumeration".into(), counted == expanded));

    let mut ok = true;
    for (name, pass) in &rows {
        ok &= pass;
        writeln!(out, "{name}: {}", verdict(*pass))?;
    }
    check(ok, "oracle verification failed")
}

#[allow(clippy::too_many_arguments)]
fn mc(
    statistic: Statistic,
    n: usize,
    reps: usize,
    sampler: SamplerKind,
    format: ReportFormat,
    seed: SeedArgs,
    out: &mut String,
    stderr: &mut dyn Write,
) -> CliResult {
    let e = Experiment {
        n,
        replicates: reps,
        statistic,
        sampler,
        master_seed: seed_or_random(seed.seed, stderr),
    };
    let report = harness::run_with_jobs(&e, seed.jobs)?;
    let _ = writeln!(stderr, "runtime: {:.3}s", report.runtime.as_secs_f64());
    match format {
        ReportFormat::Csv => out.push_str(&report.to_csv()),
        ReportFormat::Json => {
            out.push_str(&report.to_json());
            out.push('\n');
        }
    }
    Ok(())
}

fn asymptotics(
    statistic: Statistic,
    grid: &[usize],
    reps: usize,
    format: ReportFormat,
    seed: SeedArgs,
    out: &mut String,
    stderr: &mut dyn Write,
) -> CliResult {
    if reps == 0 || grid.is_empty() {
        return Err(invalid("need at least one replicate and one grid point"));
    }
    let master = seed_or_random(seed.seed, stderr);
    let report = harness::extremes_scan(statistic, grid, reps, master, seed.jobs)?;
    match format {
        ReportFormat::Csv => out.push_str(&report.to_csv()),
        ReportFormat::Json => {
            out.push_str(&report.to_json());
            out.push('\n');
        }
    }
    Ok(())
}
