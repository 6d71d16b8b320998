//! The `sortnet` command line.
//!
//! Exit codes: 0 success, 1 a failed oracle check, 2 invalid arguments or
//! input that fails validation, 3 unreadable or malformed input files.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::eg::{eg_forward, eg_inverse, validate_network, SortingNetwork};
use crate::error::{Error, Result};
use crate::experiments::{
    experiment_stationarity, experiment_theorem1, experiment_theorem2, experiment_theorem3,
    ExperimentReport, RunConfig,
};
use crate::geometry::{certify_nonrealizable, gp_check, realize_network_eps, GpPattern, PointConfiguration};
use crate::patterns::{find_occurrences, greedy_disjoint, max_disjoint_exact, Pattern, Window};
use crate::render::render_wiring_diagram;
use crate::sampler::{sample_uniform_syt, SeededRng};
use crate::tableau::{enumerate_syt, StandardTableau, YoungDiagram, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Parser)]
#[command(name = "sortnet", version, about = "Sorting networks and staircase Young tableaux")]
pub struct Cli {
    /// Random seed.
    #[arg(long, global = true, env = "SORTNET_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Uniform standard tableaux, one JSON object per line.
    Sample {
        /// `staircase:N` or comma separated row lengths.
        #[arg(long)]
        shape: ShapeArg,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Uniform sorting networks, one JSON object per line.
    SampleNetwork {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Apply the Edelman-Greene bijection in either direction.
    Eg(EgArgs),
    /// Draw a network as an SVG wiring diagram.
    Render {
        network: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Count disjoint occurrences of a pattern in a network.
    Pattern(PatternArgs),
    /// The network swept out by a rotating point configuration.
    Realize {
        points: PathBuf,
        #[arg(long, default_value_t = crate::geometry::DEFAULT_EPSILON)]
        eps: f64,
    },
    /// Search a network for the non-realizability certificate.
    Certify {
        network: PathBuf,
        /// Certificate pattern; the shipped one by default.
        #[arg(long)]
        gp_pattern: Option<PathBuf>,
    },
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct EgArgs {
    /// Tableau JSON to map to its network.
    #[arg(long)]
    to_network: Option<PathBuf>,
    /// Network JSON to map back to its tableau.
    #[arg(long)]
    to_tableau: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    #[arg(long)]
    network: PathBuf,
    /// Comma separated swaps, e.g. `2,1,2`.
    #[arg(long)]
    pattern: String,
    /// Exact maximum packing (the default).
    #[arg(long, conflicts_with = "greedy")]
    exact: bool,
    /// Greedy packing, a lower bound.
    #[arg(long)]
    greedy: bool,
    /// Largest occurrence set the exact search accepts.
    #[arg(long, default_value_t = crate::patterns::DEFAULT_PACKING_CAP)]
    cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCmd {
    /// Disjoint pattern occurrences grow like n².
    T1 {
        #[arg(long, default_value = "1,2")]
        pattern: String,
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Prefix statistic counts occurrences inside times [1, ceil(c n)].
        #[arg(long, default_value_t = 1.0)]
        prefix_c: f64,
    },
    /// Ordered staircase motifs along the border grow like n.
    T2 {
        /// Motif tableau JSON; defaults to rows [1,2],[3].
        #[arg(long)]
        motif: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "100,200")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Keep only motifs with all entries above N - c n.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Fraction of networks certified non-realizable.
    T3 {
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        gp_pattern: Option<PathBuf>,
    },
    /// Exact distribution of each swap over all networks of size n <= 5.
    Stationarity {
        #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
        n: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCmd {
    /// Forward map over all staircase tableaux hits every network once.
    Enumerate {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        n: Vec<usize>,
    },
    /// The certificate pattern is never realised by random points.
    GpCheck {
        #[arg(long)]
        gp_pattern: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        draws: usize,
    },
}

/// A shape given as `staircase:N` or as row lengths `4,2,1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeArg(pub YoungDiagram);

impl FromStr for ShapeArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Some(n) = s.strip_prefix("staircase:") {
            let n: usize = n.trim().parse().map_err(|e| format!("bad staircase size: {e}"))?;
            return Ok(ShapeArg(YoungDiagram::staircase(n)));
        }
        let rows = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| format!("bad row length {x:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        YoungDiagram::new(rows).map(ShapeArg).map_err(|e| e.to_string())
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Errors are reported on stderr.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_data_error() {
                3
            } else {
                2
            }
        }
    }
}

/// Runs a parsed command; `Ok(1)` signals a failed oracle.
pub fn run(cli: &Cli) -> Result<i32> {
    if cli.jobs == Some(0) {
        return Err(Error::Parameter("--jobs must be positive".into()));
    }
    let json_only = |what: &str| -> Result<()> {
        if cli.format == Format::Csv {
            return Err(Error::Parameter(format!("{what} has no CSV output")));
        }
        Ok(())
    };
    match &cli.command {
        Command::Sample { shape, count } => {
            json_only("sample")?;
            let base = SeededRng::new(cli.seed);
            let lines = in_pool(cli.jobs, || {
                (0..*count as u64)
                    .into_par_iter()
                    .map(|i| {
                        let t = sample_uniform_syt(&shape.0, &base.substream(i))?;
                        Ok(serde_json::to_string(&t)?)
                    })
                    .collect::<Result<Vec<_>>>()
            })??;
            emit(cli, &join_lines(&lines))?;
        }
        Command::SampleNetwork { n, count } => {
            json_only("sample-network")?;
            let base = SeededRng::new(cli.seed);
            let lines = in_pool(cli.jobs, || {
                (0..*count as u64)
                    .into_par_iter()
                    .map(|i| {
                        let net = crate::sampler::sample_random_network(*n, &base.substream(i))?;
                        Ok(serde_json::to_string(&net)?)
                    })
                    .collect::<Result<Vec<_>>>()
            })??;
            emit(cli, &join_lines(&lines))?;
        }
        Command::Eg(args) => {
            json_only("eg")?;
            let text = if let Some(p) = &args.to_network {
                let t: StandardTableau = read_json(p)?;
                serde_json::to_string(&eg_forward(&t)?)?
            } else {
                let p = args.to_tableau.as_ref().expect("clap enforces one direction");
                let net: SortingNetwork = read_json(p)?;
                serde_json::to_string(&eg_inverse(&net)?)?
            };
            emit(cli, &format!("{text}\n"))?;
        }
        Command::Render { network, output } => {
            let net: SortingNetwork = read_json(network)?;
            let svg = render_wiring_diagram(&net);
            match output.as_ref().or(cli.out.as_ref()) {
                Some(p) => fs::write(p, svg)?,
                None => io::stdout().write_all(svg.as_bytes())?,
            }
        }
        Command::Pattern(args) => {
            json_only("pattern")?;
            let net: SortingNetwork = read_json(&args.network)?;
            let pattern = Pattern::parse(&args.pattern)?;
            let occurrences = find_occurrences(&net, &pattern);
            let (method, windows) = if args.greedy {
                ("greedy", greedy_disjoint(&occurrences))
            } else {
                ("exact", max_disjoint_exact(&occurrences, args.cap)?)
            };
            let out = PatternOutput {
                pattern: pattern.swaps().to_vec(),
                method,
                occurrences: occurrences.len(),
                count: windows.len(),
                windows,
            };
            emit(cli, &format!("{}\n", serde_json::to_string(&out)?))?;
        }
        Command::Realize { points, eps } => {
            json_only("realize")?;
            let x: PointConfiguration = read_json(points)?;
            let net = realize_network_eps(&x, *eps)?;
            emit(cli, &format!("{}\n", serde_json::to_string(&net)?))?;
        }
        Command::Certify { network, gp_pattern } => {
            json_only("certify")?;
            let net: SortingNetwork = read_json(network)?;
            let gp = load_gp(gp_pattern.as_deref())?;
            let window = certify_nonrealizable(&net, &gp);
            let out = CertifyOutput {
                verdict: if window.is_some() { "non-realizable" } else { "inconclusive" },
                window,
            };
            emit(cli, &format!("{}\n", serde_json::to_string(&out)?))?;
        }
        Command::Experiment(cmd) => return run_experiment(cli, cmd),
        Command::Oracle(cmd) => return run_oracle(cli, cmd),
    }
    Ok(0)
}

fn run_experiment(cli: &Cli, cmd: &ExperimentCmd) -> Result<i32> {
    let config = |n: &[usize], samples: usize| {
        let mut c = RunConfig::new(n.to_vec(), samples, cli.seed);
        c.jobs = cli.jobs;
        c
    };
    let report = match cmd {
        ExperimentCmd::T1 {
            pattern,
            n,
            samples,
            prefix_c,
        } => experiment_theorem1(&Pattern::parse(pattern)?, &config(n, *samples), *prefix_c)?,
        ExperimentCmd::T2 {
            motif,
            n,
            samples,
            threshold,
        } => {
            let motif = match motif {
                Some(p) => read_json(p)?,
                None => default_motif(),
            };
            experiment_theorem2(&motif, &config(n, *samples), *threshold)?
        }
        ExperimentCmd::T3 { n, samples, gp_pattern } => {
            experiment_theorem3(&config(n, *samples), &load_gp(gp_pattern.as_deref())?)?
        }
        ExperimentCmd::Stationarity { n } => {
            let reports = n
                .iter()
                .map(|&n| experiment_stationarity(n))
                .collect::<Result<Vec<_>>>()?;
            let text = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&reports)?),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["n", "time", "position", "count"])?;
                    for r in &reports {
                        for (t, row) in r.frequencies.iter().enumerate() {
                            for (j, c) in row.iter().enumerate() {
                                w.write_record([
                                    r.n.to_string(),
                                    (t + 1).to_string(),
                                    (j + 1).to_string(),
                                    c.to_string(),
                                ])?;
                            }
                        }
                    }
                    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
                    String::from_utf8(bytes).expect("csv output is utf-8")
                }
            };
            emit(cli, &text)?;
            return Ok(if reports.iter().all(|r| r.s1_equals_s2) { 0 } else { 1 });
        }
    };
    emit_report(cli, &report)?;
    Ok(0)
}

fn run_oracle(cli: &Cli, cmd: &OracleCmd) -> Result<i32> {
    let mut text = String::new();
    let passed = match cmd {
        OracleCmd::Enumerate { n } => {
            let mut all = true;
            for &n in n {
                let shape = YoungDiagram::staircase(n);
                if shape.size() > DEFAULT_ENUMERATION_CAP {
                    return Err(Error::EnumerationCap {
                        size: shape.size(),
                        cap: DEFAULT_ENUMERATION_CAP,
                    });
                }
                let mut tableaux = 0usize;
                let mut networks = BTreeSet::new();
                let mut valid = true;
                for t in enumerate_syt(&shape)? {
                    let net = eg_forward(&t)?;
                    valid &= validate_network(net.swaps(), n) && eg_inverse(&net)? == t;
                    networks.insert(net.swaps().to_vec());
                    tableaux += 1;
                }
                let dim = shape.dimension();
                let ok = valid && networks.len() == tableaux && dim == tableaux.into();
                all &= ok;
                text += &format!(
                    "n={n} tableaux={tableaux} networks={} dimension={dim} {}\n",
                    networks.len(),
                    pass_fail(ok)
                );
            }
            all
        }
        OracleCmd::GpCheck { gp_pattern, draws } => {
            let gp = load_gp(gp_pattern.as_deref())?;
            let check = in_pool(cli.jobs, || gp_check(&gp, *draws, cli.seed))??;
            text += &format!(
                "pattern={} draws={} realized={}/{} never_realized={} pattern_realized={} {}\n",
                gp.network(),
                check.draws,
                check.networks_realized,
                check.networks_total,
                check.never_realized.len(),
                check.pattern_realized,
                pass_fail(check.passed())
            );
            check.passed()
        }
    };
    emit(cli, &text)?;
    Ok(if passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct PatternOutput {
    pattern: Vec<u32>,
    method: &'static str,
    occurrences: usize,
    count: usize,
    windows: Vec<Window>,
}

#[derive(Serialize)]
struct CertifyOutput {
    verdict: &'static str,
    window: Option<Window>,
}

/// The size-3 motif used when none is given: rows `[1, 2]`, `[3]`.
pub fn default_motif() -> StandardTableau {
    StandardTableau::new(YoungDiagram::staircase(3), vec![vec![1, 2], vec![3]])
        .expect("valid staircase tableau")
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn join_lines(lines: &[String]) -> String {
    lines.iter().map(|l| format!("{l}\n")).collect()
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn load_gp(path: Option<&Path>) -> Result<GpPattern> {
    match path {
        Some(p) => GpPattern::new(read_json(p)?),
        None => Ok(GpPattern::builtin()),
    }
}

/// Reads JSON from a file, or from stdin when the path is `-`.
fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn emit_report(cli: &Cli, report: &ExperimentReport) -> Result<()> {
    let text = match cli.format {
        Format::Json => format!("{}\n", report.to_json()?),
        Format::Csv => report.to_csv()?,
    };
    emit(cli, &text)
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
