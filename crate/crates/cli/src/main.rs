use clap::{Args, Parser, Subcommand, ValueEnum};
use hypercover::generators::{GenSpec, Generated};
use hypercover::lll::{lll_target_colours, moser_tardos_run, LllConfig};
use hypercover::oracle::{min_set_cover_size, oracle_p, oracle_pprime};
use hypercover::sensor::{parse_sensor, sensor_schedule_run, verify_coverage, weighted_min_degree};
use hypercover::split::flow_shrink;
use hypercover::split::{
    recursive_decompose_report, sparse_decompose, SplitPlan, SplitStrategy, StopRule,
};
use hypercover::treepaths::{
    level_colouring, parse_tree_paths, path_min_degree, tree_cover_decompose,
    verify_tree_polychromatic,
};
use hypercover::vc::{
    crossfree_decompose, crossfree_polychromatic, laminar_decompose, vc_dimension,
};
use hypercover::{
    parse_hypergraph, shrink_to_degree, verify_cover_decomposition, verify_polychromatic,
    write_hypergraph, CoverDecomposition, Error, Hypergraph, Summary, VertexColouring,
};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "hypercover",
    version,
    about = "Cover decomposition and polychromatic colouring of hypergraphs"
)]
struct Cli {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the produced artifact to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance.
    Gen(GenArgs),
    /// Partition the edges of an instance into disjoint covers.
    Decompose(DecomposeArgs),
    /// Polychromatic colouring.
    Colour(ColourArgs),
    /// Shrink edges to size at most beta losing at most alpha degree.
    Shrink {
        file: PathBuf,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        beta: usize,
    },
    /// VC-dimension of an instance and of its dual.
    Vc {
        file: PathBuf,
        #[arg(long, default_value_t = hypercover::vc::DEFAULT_VC_CAP)]
        cap: usize,
    },
    /// Sensor cover scheduling.
    Sensor {
        #[command(subcommand)]
        action: SensorAction,
    },
    /// Check a cover decomposition (or a colouring with --colouring).
    Verify {
        instance: PathBuf,
        artifact: PathBuf,
        /// Treat the artifact as a `vertex colour` list.
        #[arg(long)]
        colouring: bool,
    },
    /// Exact oracles for small instances.
    Oracle {
        #[arg(value_enum)]
        which: OracleKind,
        file: PathBuf,
        /// Greedy instead of exact set cover.
        #[arg(long)]
        greedy: bool,
    },
    /// Random-hypergraph batch: cover sizes and achieved decompositions.
    Experiment {
        #[arg(long, default_value_t = 8)]
        r: usize,
        #[arg(long, default_value_t = 6)]
        delta: usize,
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum SensorAction {
    Schedule { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    P,
    Pprime,
    Cover,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    KneserDual,
    Fano,
    Ptt,
    Random,
    Tary,
    ComplementSingletons,
    TreePaths,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long, default_value_t = 3)]
    delta: usize,
    #[arg(long, default_value_t = 10)]
    paths: usize,
    #[arg(long, default_value_t = 1)]
    min_len: usize,
    /// Replicate every edge this many times.
    #[arg(long, default_value_t = 1)]
    mu: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecomposeStrategy {
    Lll,
    Split,
    Crossfree,
    Laminar,
    Treepaths,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stop {
    Range,
    Polylog,
}

#[derive(Clone, Copy, ValueEnum)]
enum Splitter {
    BeckFiala,
    Chernoff,
}

#[derive(Args)]
struct DecomposeArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    strategy: DecomposeStrategy,
    #[arg(long, value_enum, default_value = "range")]
    stop: Stop,
    #[arg(long, value_enum, default_value = "beck-fiala")]
    splitter: Splitter,
    /// Colour count for the lll strategy; defaults to the largest count the
    /// local lemma condition allows.
    #[arg(long)]
    colours: Option<usize>,
    /// With --beta, shrink first (split strategy only).
    #[arg(long, requires = "beta")]
    alpha: Option<usize>,
    #[arg(long, requires = "alpha")]
    beta: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColourStrategy {
    Crossfree,
    Level,
}

#[derive(Args)]
struct ColourArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    strategy: ColourStrategy,
    #[arg(short, long)]
    k: Option<usize>,
}

enum Failure {
    Input(String),
    Algorithm(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Algorithm(e.to_string())
        }
    }
}

/// Report lines plus whether the run verified.
struct Report {
    text: String,
    verified: bool,
}

impl Report {
    fn new() -> Self {
        Report {
            text: String::new(),
            verified: true,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn summary(&mut self, s: &Summary) {
        self.line(format!(
            "n={} m={} r={} R={} delta={} Delta={}",
            s.n, s.m, s.r, s.big_r, s.delta, s.big_delta
        ));
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_artifact(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    if let Some(p) = out {
        std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn is_tree_paths(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "tp")
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph, Failure> {
    let text = read(path)?;
    if is_tree_paths(path) {
        Ok(parse_tree_paths(&text)?.as_hypergraph())
    } else {
        Ok(parse_hypergraph(&text)?)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            if cli.timing {
                report.line(format!("time_ms={}", start.elapsed().as_millis()));
            }
            print!("{}", report.text);
            if report.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Algorithm(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Gen(args) => gen(args, cli.seed, out),
        Command::Decompose(args) => decompose(args, cli.seed, out),
        Command::Colour(args) => colour(args, out),
        Command::Shrink { file, alpha, beta } => shrink(file, *alpha, *beta, out),
        Command::Vc { file, cap } => {
            let h = load_hypergraph(file)?;
            let v = vc_dimension(&h, *cap)?;
            let mut r = Report::new();
            r.summary(&h.summary());
            r.line(format!("vc={} witness={:?}", v.vc_dim, v.witness));
            r.line(format!(
                "dual_vc={} dual_witness={:?}",
                v.dual_vc_dim, v.dual_witness
            ));
            Ok(r)
        }
        Command::Sensor {
            action: SensorAction::Schedule { file },
        } => sensor(file, out),
        Command::Verify {
            instance,
            artifact,
            colouring,
        } => verify(instance, artifact, *colouring),
        Command::Oracle {
            which,
            file,
            greedy,
        } => {
            let h = load_hypergraph(file)?;
            let mut r = Report::new();
            r.line(match which {
                OracleKind::P => format!("p={}", oracle_p(&h)?),
                OracleKind::Pprime => format!("pprime={}", oracle_pprime(&h)?),
                OracleKind::Cover => format!("cover={}", min_set_cover_size(&h, !greedy)?),
            });
            Ok(r)
        }
        Command::Experiment {
            r,
            delta,
            seeds,
            jobs,
        } => experiment(*r, *delta, cli.seed, *seeds, *jobs),
    }
}

fn gen(args: &GenArgs, seed: u64, out: Option<&Path>) -> Result<Report, Failure> {
    let base = match args.family {
        Family::KneserDual => GenSpec::KneserDual { k: args.k },
        Family::Fano => GenSpec::Fano,
        Family::Ptt => GenSpec::Ptt { k: args.k },
        Family::Random => GenSpec::Random {
            r: args.r,
            delta: args.delta,
            seed,
        },
        Family::Tary => GenSpec::TaryCounterexample { k: args.k },
        Family::ComplementSingletons => GenSpec::ComplementSingletons { n: args.n },
        Family::TreePaths => GenSpec::RandomTreePaths {
            n: args.n,
            n_paths: args.paths,
            min_len: args.min_len,
            seed,
        },
    };
    let spec = if args.mu > 1 {
        GenSpec::Replicate {
            base: Box::new(base),
            mu: args.mu,
        }
    } else {
        base
    };
    let (text, summary) = match spec.generate()? {
        Generated::Hypergraph(h) => (write_hypergraph(&h), h.summary()),
        Generated::TreePaths(t) => (t.to_text(), t.as_hypergraph().summary()),
    };
    let mut r = Report::new();
    match out {
        Some(p) => {
            write_artifact(Some(p), &text)?;
            r.summary(&summary);
        }
        None => r.text = text,
    }
    Ok(r)
}

fn decompose(args: &DecomposeArgs, seed: u64, out: Option<&Path>) -> Result<Report, Failure> {
    let mut r = Report::new();
    if args.strategy == DecomposeStrategy::Treepaths || is_tree_paths(&args.file) {
        if args.strategy != DecomposeStrategy::Treepaths {
            return Err(Failure::Input(
                "a .tp instance needs --strategy treepaths".into(),
            ));
        }
        let inst = parse_tree_paths(&read(&args.file)?)?;
        let h = inst.as_hypergraph();
        let delta = path_min_degree(&inst);
        let d = tree_cover_decompose(&inst)?;
        let floor = if delta == 0 { 0 } else { 1 + (delta - 1) / 5 };
        return finish(&mut r, &h, &d, "treepaths", seed, floor.to_string(), out).map(|_| r);
    }
    let h = parse_hypergraph(&read(&args.file)?)?;
    let s = h.summary();
    let big_r = s.big_r.max(1);
    let (name, d, floor) = match args.strategy {
        DecomposeStrategy::Lll => {
            let t = args
                .colours
                .unwrap_or_else(|| lll_target_colours(big_r, s.delta));
            let regular = shrink_to_degree(&h, s.delta)?;
            let run = moser_tardos_run(&regular, &LllConfig::new(t, seed))?;
            let floor = lll_target_colours(big_r, s.delta).to_string();
            r.line(format!("resamples={}", run.resamples));
            ("lll", run.decomposition, floor)
        }
        DecomposeStrategy::Split => {
            let strategy = match args.splitter {
                Splitter::BeckFiala => SplitStrategy::BeckFiala,
                Splitter::Chernoff => SplitStrategy::Chernoff,
            };
            let stop = match args.stop {
                Stop::Range => StopRule::RangeR4R,
                Stop::Polylog => StopRule::PolylogT,
            };
            let plan = SplitPlan::new(strategy, stop);
            let cfg = LllConfig::new(0, seed);
            let curve = s.delta as f64 / (big_r as f64).ln().max(1.0);
            let d = match (args.alpha, args.beta) {
                (Some(a), Some(b)) => sparse_decompose(&h, a, b, &plan, &cfg)?,
                _ => {
                    let o = recursive_decompose_report(&h, &plan, &cfg)?;
                    r.line(format!("splits={} leaves={}", o.splits, o.leaves.len()));
                    o.decomposition
                }
            };
            ("split", d, format!("{curve:.3}"))
        }
        DecomposeStrategy::Crossfree => (
            "crossfree",
            crossfree_decompose(&h)?,
            s.delta.div_ceil(2).to_string(),
        ),
        DecomposeStrategy::Laminar => ("laminar", laminar_decompose(&h)?, s.delta.to_string()),
        DecomposeStrategy::Treepaths => unreachable!(),
    };
    finish(&mut r, &h, &d, name, seed, floor, out)?;
    Ok(r)
}

fn finish(
    r: &mut Report,
    h: &Hypergraph,
    d: &CoverDecomposition,
    strategy: &str,
    seed: u64,
    floor: String,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let verified = verify_cover_decomposition(h, d);
    r.verified = verified;
    r.summary(&h.summary());
    r.line(format!("strategy={strategy} seed={seed} floor={floor}"));
    r.line(format!("parts={} verified={verified}", d.k));
    write_artifact(out, &d.to_text())
}

fn colour(args: &ColourArgs, out: Option<&Path>) -> Result<Report, Failure> {
    let mut r = Report::new();
    match args.strategy {
        ColourStrategy::Crossfree => {
            let h = parse_hypergraph(&read(&args.file)?)?;
            let s = h.summary();
            let floor = s.r.div_ceil(2);
            let k = args.k.unwrap_or(floor.max(1));
            let c = crossfree_polychromatic(&h, k)?;
            let verified = verify_polychromatic(&h, &c);
            r.verified = verified;
            r.summary(&s);
            r.line(format!("strategy=crossfree floor={floor}"));
            r.line(format!("colours={k} verified={verified}"));
            write_artifact(out, &c.to_text())?;
        }
        ColourStrategy::Level => {
            let inst = parse_tree_paths(&read(&args.file)?)?;
            let shortest = inst
                .paths()
                .iter()
                .map(|p| p.edges.len())
                .min()
                .unwrap_or(0);
            let floor = shortest.div_ceil(2);
            let k = args.k.unwrap_or(floor.max(1));
            let c = level_colouring(&inst, k)?;
            let verified = verify_tree_polychromatic(&inst, &c, k);
            r.verified = verified;
            r.summary(&inst.as_hypergraph().summary());
            r.line(format!("strategy=level floor={floor}"));
            r.line(format!("colours={k} verified={verified}"));
            write_artifact(out, &VertexColouring::new(c, k).to_text())?;
        }
    }
    Ok(r)
}

fn shrink(file: &Path, alpha: usize, beta: usize, out: Option<&Path>) -> Result<Report, Failure> {
    let h = load_hypergraph(file)?;
    let s = flow_shrink(&h, alpha, beta)?;
    let mut r = Report::new();
    r.summary(&h.summary());
    let ok = s.min_degree() + alpha >= h.min_degree() && s.max_edge_size() <= beta;
    r.verified = ok;
    r.line(format!(
        "shrunk_delta={} shrunk_R={} verified={ok}",
        s.min_degree(),
        s.max_edge_size()
    ));
    write_artifact(out, &write_hypergraph(&s))?;
    Ok(r)
}

fn sensor(file: &Path, out: Option<&Path>) -> Result<Report, Failure> {
    let g = parse_sensor(&read(file)?)?;
    let run = sensor_schedule_run(&g)?;
    let coverage = verify_coverage(&g, &run.schedule);
    let delta_bar = weighted_min_degree(&g);
    let floor = hypercover::Rational::new((delta_bar as i64).into(), 8.into());
    let verified = coverage >= floor;
    let mut r = Report::new();
    r.verified = verified;
    r.line(format!(
        "n={} m={} delta_bar={delta_bar}",
        g.n_vertices(),
        g.edges().len()
    ));
    r.line(format!(
        "floor={floor} coverage={coverage} verified={verified}"
    ));
    let mut text = String::new();
    for (e, s) in run.schedule.start.iter().enumerate() {
        let _ = writeln!(text, "{e} {s}");
    }
    write_artifact(out, &text)?;
    Ok(r)
}

fn verify(instance: &Path, artifact: &Path, colouring: bool) -> Result<Report, Failure> {
    let mut r = Report::new();
    let body = read(artifact)?;
    if colouring && is_tree_paths(instance) {
        let inst = parse_tree_paths(&read(instance)?)?;
        let c = parse_pairs(&body, inst.n_tree_edges())?;
        let k = c.iter().max().map_or(0, |&x| x + 1);
        let verified = verify_tree_polychromatic(&inst, &c, k);
        r.verified = verified;
        r.line(format!("colours={k} verified={verified}"));
        return Ok(r);
    }
    let h = load_hypergraph(instance)?;
    if colouring {
        let c = parse_pairs(&body, h.n_vertices())?;
        let k = c.iter().max().map_or(0, |&x| x + 1);
        let verified = verify_polychromatic(&h, &VertexColouring::new(c, k));
        r.verified = verified;
        r.line(format!("colours={k} verified={verified}"));
    } else {
        let d = CoverDecomposition::parse(&body, h.n_edges())?;
        let verified = verify_cover_decomposition(&h, &d);
        r.verified = verified;
        r.line(format!("parts={} verified={verified}", d.k));
    }
    Ok(r)
}

/// Parses `id value` lines into a total map over `0..len`.
fn parse_pairs(text: &str, len: usize) -> Result<Vec<usize>, Failure> {
    // Same shape as a cover decomposition file.
    Ok(CoverDecomposition::parse(text, len)?.part_of)
}

fn experiment(
    r_target: usize,
    delta: usize,
    base: u64,
    seeds: u64,
    jobs: usize,
) -> Result<Report, Failure> {
    if jobs == 0 {
        return Err(Failure::Input("--jobs must be at least 1".into()));
    }
    let seeds: Vec<u64> = (0..seeds).map(|i| base.wrapping_add(i)).collect();
    let mut lines = vec![String::new(); seeds.len()];
    let chunk = seeds.len().div_ceil(jobs).max(1);
    std::thread::scope(|scope| {
        for (slot, ss) in lines.chunks_mut(chunk).zip(seeds.chunks(chunk)) {
            scope.spawn(move || {
                for (line, &seed) in slot.iter_mut().zip(ss) {
                    *line = experiment_line(r_target, delta, seed);
                }
            });
        }
    });
    let mut r = Report::new();
    r.line(format!(
        "experiment R'={r_target} delta'={delta} seeds={}",
        seeds.len()
    ));
    for l in lines {
        r.line(l);
    }
    Ok(r)
}

fn experiment_line(r_target: usize, delta: usize, seed: u64) -> String {
    let h = match hypercover::generators::gen_random_hypergraph(r_target, delta, seed) {
        Ok(h) => h,
        Err(e) => return format!("seed={seed} error={e}"),
    };
    let s = h.summary();
    let mut line = format!(
        "seed={seed} n={} m={} R={} delta={} Delta={}",
        s.n, s.m, s.big_r, s.delta, s.big_delta
    );
    if s.delta == 0 {
        line.push_str(" cover=none parts=0");
        return line;
    }
    let exact = s.m <= 64;
    let cover = min_set_cover_size(&h, exact).map_or_else(|e| e.to_string(), |c| c.to_string());
    let counting = s.n.div_ceil(s.big_r.max(1));
    let plan = SplitPlan::new(SplitStrategy::BeckFiala, StopRule::RangeR4R);
    let parts = match recursive_decompose_report(&h, &plan, &LllConfig::new(0, seed)) {
        Ok(o) if verify_cover_decomposition(&h, &o.decomposition) => o.decomposition.k.to_string(),
        Ok(_) => "unverified".into(),
        Err(e) => format!("error({e})"),
    };
    let curve = s.delta as f64 / (s.big_r.max(2) as f64).ln();
    let _ = write!(
        line,
        " cover={cover} cover_kind={} counting_floor={counting} parts={parts} curve={curve:.3}",
        if exact { "exact" } else { "greedy" }
    );
    line
}
