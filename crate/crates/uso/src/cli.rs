//! The `uso` command-line tool.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use uso_core::algo::{
    derandomized_re, derive_seed, fibonacci_seesaw, fs_revisited, summarize, RunStats, StartPolicy,
    TrialSummary,
};
use uso_core::enumerate::Census;
use uso_core::reach::niceness_index;
use uso_core::{CoordSet, Face, Orientation, UsoError};

use crate::family::Family;
use crate::harness::{census_parallel, count_parallel, run_trials, thread_pool, Algorithm};
use crate::io::{read_orientation, to_json, to_text};
use crate::record::{write_csv, ExperimentRecord};

/// Exit code for a failed domain check (invalid file, not a USO, ...).
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for malformed command lines.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "uso",
    version,
    about = "Unique sink orientations of hypercubes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write an instance of a named family.
    Gen(GenArgs),
    /// Validate an orientation file.
    Check(CheckArgs),
    /// Reachmaps, cover distances and the niceness index.
    Analyze(AnalyzeArgs),
    /// Random Edge or Bottom Antipodal trials.
    Walk(WalkArgs),
    /// Run a deterministic sink finder once.
    Solve(SolveArgs),
    /// Count or classify all USOs of a small dimension.
    Enum(EnumArgs),
    /// Trials over a range of dimensions, one CSV row per run.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct CheckArgs {
    file: PathBuf,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WalkArgs {
    file: PathBuf,
    #[arg(long, value_parser = parse_algorithm, default_value = "re")]
    algo: Algorithm,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Step cap per run; defaults to 4^n.
    #[arg(long)]
    cap: Option<u64>,
    /// Start vertex as a bitmask; random per trial when omitted.
    #[arg(long)]
    start: Option<u32>,
    /// Label for the family column of CSV output.
    #[arg(long, default_value = "input")]
    family: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_parser = parse_algorithm, default_value = "dre")]
    algo: Algorithm,
    /// Start vertex as a bitmask.
    #[arg(long, default_value_t = 0)]
    start: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EnumArgs {
    #[arg(long)]
    n: usize,
    /// Allow the long-running dimension 4.
    #[arg(long)]
    heavy: bool,
    /// Full classification instead of a plain count.
    #[arg(long)]
    census: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long, value_parser = parse_algorithm, default_value = "re")]
    algo: Algorithm,
    /// Dimension or inclusive range such as `4..10`.
    #[arg(long, value_parser = parse_range)]
    n: (usize, usize),
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Step cap per run; defaults to 4^n.
    #[arg(long)]
    cap: Option<u64>,
    /// Record wall-clock milliseconds per run (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

/// `a`, `a..b` or `a..=b`, both ends inclusive.
fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad dimension `{t}`"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok((lo, hi))
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl From<UsoError> for Failure {
    fn from(e: UsoError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<crate::io::IoError> for Failure {
    fn from(e: crate::io::IoError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run_command<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{rendered}");
                0
            };
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let result = pool.install(|| dispatch(cli.command, &mut out, &mut err));
    let _ = stdout.write_all(&out).and_then(|_| stdout.flush());
    let _ = stderr.write_all(&err);
    match result {
        Ok(()) => 0,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILURE
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Gen(a) => gen(a, stdout),
        Command::Check(a) => check(a, stdout),
        Command::Analyze(a) => analyze(a, stdout),
        Command::Walk(a) => walk(a, stdout),
        Command::Solve(a) => solve(a, stdout),
        Command::Enum(a) => enumerate(a, stdout),
        Command::Bench(a) => bench(a, stdout, stderr),
    }
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Outcome {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
        }
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes") + "\n"
}

fn reject_format(format: Format, allowed: &[Format]) -> Outcome {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(
            format!("format {format:?} is not available for this command").to_lowercase(),
        ))
    }
}

fn load(path: &Path) -> Result<Orientation, Failure> {
    Ok(read_orientation(path)?)
}

fn gen(a: GenArgs, stdout: &mut dyn Write) -> Outcome {
    reject_format(a.format, &[Format::Text, Format::Json])?;
    let o = a.family.generate(a.n, a.seed)?;
    let text = match a.format {
        Format::Json => to_json(&o) + "\n",
        _ => to_text(&o),
    };
    emit(&a.out, stdout, &text)
}

fn check(a: CheckArgs, stdout: &mut dyn Write) -> Outcome {
    let o = load(&a.file)?;
    if let Some(violation) = o.find_uso_violation() {
        return Err(Failure::Domain(format!("not a USO: {violation}")));
    }
    writeln!(
        stdout,
        "ok: USO of dimension {}, sink {}, {}",
        o.dim(),
        o.sink().expect("USOs have a sink"),
        if o.is_acyclic() { "acyclic" } else { "cyclic" }
    )?;
    Ok(())
}

#[derive(Serialize)]
struct Analysis {
    acyclic: bool,
    decomposable: bool,
    #[serde(flatten)]
    report: uso_core::reach::NicenessReport,
}

fn analyze(a: AnalyzeArgs, stdout: &mut dyn Write) -> Outcome {
    reject_format(a.format, &[Format::Text, Format::Json])?;
    let o = load(&a.file)?;
    if let Some(violation) = o.find_uso_violation() {
        return Err(Failure::Domain(format!("not a USO: {violation}")));
    }
    let analysis = Analysis {
        acyclic: o.is_acyclic(),
        decomposable: o.is_decomposable(),
        report: niceness_index(&o)?,
    };
    let text = match a.format {
        Format::Json => json(&analysis),
        _ => {
            let r = &analysis.report;
            let mut s = String::new();
            use std::fmt::Write as _;
            writeln!(s, "n: {}", r.n).unwrap();
            writeln!(s, "sink: {}", r.sink.expect("USOs have a sink")).unwrap();
            writeln!(s, "acyclic: {}", analysis.acyclic).unwrap();
            writeln!(s, "decomposable: {}", analysis.decomposable).unwrap();
            writeln!(s, "niceness_index: {}", r.niceness_index).unwrap();
            writeln!(s, "vertex\toutmap\treachmap\tcover\twitness").unwrap();
            for v in o.vertices() {
                let i = v.index();
                let cover = r.cover_distance[i].map_or("-".to_string(), |d| d.to_string());
                let witness = r.witness[i].map_or("-".to_string(), |w| w.to_string());
                writeln!(
                    s,
                    "{v}\t{}\t{}\t{cover}\t{witness}",
                    o.outmap(v),
                    r.reachmap[i]
                )
                .unwrap();
            }
            s
        }
    };
    emit(&a.out, stdout, &text)
}

fn default_cap(n: usize) -> u64 {
    1u64 << (2 * n).min(62)
}

fn policy(o: &Orientation, start: Option<u32>) -> Result<StartPolicy, Failure> {
    match start {
        None => Ok(StartPolicy::Random),
        Some(bits) => {
            let v = CoordSet::from_bits(bits);
            o.check_vertex(v)?;
            Ok(StartPolicy::Fixed(v))
        }
    }
}

#[derive(Serialize)]
struct WalkReport<'a> {
    algorithm: &'static str,
    summary: TrialSummary,
    runs: &'a [RunStats],
}

fn walk(a: WalkArgs, stdout: &mut dyn Write) -> Outcome {
    if !matches!(a.algo, Algorithm::RandomEdge | Algorithm::BottomAntipodal) {
        return Err(Failure::Usage("walk supports --algo re or ba".into()));
    }
    if a.trials == 0 {
        return Err(Failure::Usage("--trials must be positive".into()));
    }
    let o = load(&a.file)?;
    let cap = a.cap.unwrap_or(default_cap(o.dim()));
    let runs = run_trials(&o, a.algo, policy(&o, a.start)?, a.trials, a.seed, cap)?;
    let summary = summarize(&runs);
    let text = match a.format {
        Format::Json => json(&WalkReport {
            algorithm: a.algo.name(),
            summary,
            runs: &runs,
        }),
        Format::Csv => {
            let mut records: Vec<_> = runs
                .iter()
                .map(|r| ExperimentRecord::new(&a.family, o.dim(), a.algo, r))
                .collect();
            let mut buf = Vec::new();
            write_csv(&mut buf, &mut records)?;
            String::from_utf8(buf).expect("ascii csv")
        }
        Format::Text => summary_text(a.algo, &summary),
    };
    emit(&a.out, stdout, &text)
}

fn summary_text(algo: Algorithm, s: &TrialSummary) -> String {
    format!(
        "algorithm: {algo}\ntrials: {}\nmean_steps: {:.4}\nvariance: {:.4}\nmin: {}\nmax: {}\np50: {}\np90: {}\np99: {}\nmean_evaluations: {:.4}\ncapped: {}\n",
        s.trials, s.mean, s.variance, s.min, s.max, s.p50, s.p90, s.p99, s.mean_evaluations, s.capped
    )
}

fn solve(a: SolveArgs, stdout: &mut dyn Write) -> Outcome {
    reject_format(a.format, &[Format::Text, Format::Json])?;
    let o = load(&a.file)?;
    if !o.is_uso() {
        return Err(Failure::Domain(format!(
            "not a USO: {}",
            o.find_uso_violation()
                .expect("pairwise and face checks agree")
        )));
    }
    let start = CoordSet::from_bits(a.start);
    o.check_vertex(start)?;
    let (sink, body) = match a.algo {
        Algorithm::Derandomized => {
            let r = derandomized_re(&o, start)?;
            (r.found_sink.expect("always terminates"), json(&r))
        }
        Algorithm::Seesaw => {
            let (t, evaluations) = fibonacci_seesaw(&o, Face::cube(o.dim()))?;
            let r = RunStats {
                start,
                steps: 0,
                evaluations,
                found_sink: Some(t),
                seed: 0,
                capped: false,
            };
            (t, json(&r))
        }
        Algorithm::SeesawRevisited => {
            let (t, trace) = fs_revisited(&o, start)?;
            (t, json(&trace))
        }
        _ => {
            return Err(Failure::Usage(
                "solve supports --algo dre, fs or fsr".into(),
            ))
        }
    };
    let text = match a.format {
        Format::Json => body,
        _ => format!("sink: {sink}\n"),
    };
    emit(&a.out, stdout, &text)
}

#[derive(Serialize)]
struct Count {
    n: usize,
    total_uso: u64,
}

fn census_text(c: &Census) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    writeln!(s, "n: {}", c.n).unwrap();
    writeln!(s, "total_uso: {}", c.total_uso).unwrap();
    writeln!(s, "acyclic: {}", c.acyclic).unwrap();
    writeln!(s, "cyclic: {}", c.cyclic).unwrap();
    writeln!(s, "decomposable: {}", c.decomposable).unwrap();
    for (i, count) in &c.niceness_histogram {
        writeln!(s, "niceness {i}: {count}").unwrap();
    }
    if let Some(classes) = &c.iso_classes {
        writeln!(s, "iso_classes: {}", classes.len()).unwrap();
    }
    s
}

fn enumerate(a: EnumArgs, stdout: &mut dyn Write) -> Outcome {
    reject_format(a.format, &[Format::Text, Format::Json])?;
    let usage = |e: UsoError| match e {
        UsoError::DimensionTooLarge { n, max } if !a.heavy && n <= 4 => Failure::Usage(format!(
            "dimension {n} exceeds {max}; pass --heavy for a long run"
        )),
        other => Failure::Usage(other.to_string()),
    };
    uso_core::enumerate::check_enum_dim(a.n, a.heavy).map_err(usage)?;
    let text = if a.census {
        let c = census_parallel(a.n, a.heavy)?;
        match a.format {
            Format::Json => json(&c),
            _ => census_text(&c),
        }
    } else {
        let total_uso = count_parallel(a.n, a.heavy)?;
        match a.format {
            Format::Json => json(&Count { n: a.n, total_uso }),
            _ => format!("n: {}\ntotal_uso: {total_uso}\n", a.n),
        }
    };
    emit(&a.out, stdout, &text)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn bench(a: BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    reject_format(a.format, &[Format::Csv])?;
    if a.trials == 0 {
        return Err(Failure::Usage("--trials must be positive".into()));
    }
    let (lo, hi) = a.n;
    if lo < a.family.min_dim() {
        return Err(Failure::Usage(format!(
            "family {} needs n >= {}",
            a.family,
            a.family.min_dim()
        )));
    }
    let mut records = Vec::new();
    let mut means = Vec::new();
    for n in lo..=hi {
        let o = a.family.generate(n, derive_seed(a.seed, 2 * n as u64))?;
        let cap = a.cap.unwrap_or(default_cap(n));
        let master = derive_seed(a.seed, 2 * n as u64 + 1);
        let started = std::time::Instant::now();
        let runs = run_trials(&o, a.algo, StartPolicy::Random, a.trials, master, cap)?;
        let per_run_ms = started.elapsed().as_millis() as u64 / a.trials;
        means.push((n as f64, summarize(&runs).mean));
        records.extend(runs.iter().map(|r| {
            let mut rec = ExperimentRecord::for_family(a.family, n, a.algo, r);
            if a.timing {
                rec.wall_ms = per_run_ms;
            }
            rec
        }));
    }
    let mut buf = Vec::new();
    write_csv(&mut buf, &mut records)?;
    emit(&a.out, stdout, &String::from_utf8(buf).expect("ascii csv"))?;
    match log_log_slope(&means) {
        Some(slope) => writeln!(stderr, "log-log slope of mean steps vs n: {slope:.3}")?,
        None => writeln!(stderr, "log-log slope of mean steps vs n: n/a")?,
    }
    Ok(())
}
