//! Command line front end. Exit codes: 0 success, 1 verification failure,
//! 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::decomp::{canonical_l, enumerate_with_failures, Validation};
use crate::error::{Error, Result};
use crate::graph::{BruhatInterval, GraphFixture, RankedDigraph};
use crate::klbase::KlTable;
use crate::perm::Permutation;
use crate::poly::IntPolynomial;
use crate::sweep::{default_jobs, sweep, Mode, Sample, SweepConfig};

#[derive(Debug, Parser)]
#[command(name = "klcube", version, about = "Kazhdan-Lusztig polynomials and hypercube decompositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print P_{x,y} and its q-derivative.
    Kl {
        x: Permutation,
        y: Permutation,
        #[arg(long)]
        json: bool,
    },
    /// Print the q-derivative of P_{x,y}, or recover P from a given derivative.
    Partial(PartialArgs),
    /// Export the Bruhat interval [x, y].
    Interval {
        x: Permutation,
        y: Permutation,
        /// Graphviz output (the default).
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// Shade the coset decomposition and mark its hypercube edges at x.
        #[arg(long = "highlight-L")]
        highlight_l: bool,
    },
    /// List the hypercube decompositions of an interval or a fixture graph.
    Decomps {
        #[arg(required_unless_present = "fixture")]
        x: Option<Permutation>,
        #[arg(required_unless_present = "fixture")]
        y: Option<Permutation>,
        /// JSON graph {levels, edges} instead of an interval.
        #[arg(long, conflicts_with_all = ["x", "y"])]
        fixture: Option<PathBuf>,
        /// Also list rejected crowns with their witnesses.
        #[arg(long)]
        all: bool,
    },
    /// Check the formula over all (or sampled) intervals of S_n.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct PartialArgs {
    #[arg(required_unless_present = "recover")]
    x: Option<Permutation>,
    #[arg(required_unless_present = "recover")]
    y: Option<Permutation>,
    /// A q-derivative to invert, e.g. "1 + 3*q + q^2".
    #[arg(long, requires = "length", conflicts_with_all = ["x", "y"])]
    recover: Option<IntPolynomial>,
    /// The length difference N used with --recover.
    #[arg(long)]
    length: Option<i64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Window size: permutations of {0, ..., n-1}.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "theorem")]
    mode: Mode,
    /// Number of random records to check instead of a full sweep.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: KLCUBE_JOBS or the number of cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// JSONL output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit timing from the summary.
    #[arg(long)]
    deterministic: bool,
    #[arg(long)]
    dedup: bool,
    /// Load the table from this file if present, and save it afterwards.
    #[arg(long)]
    kl_cache: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Kl { x, y, json } => cmd_kl(x, y, json, out),
        Command::Partial(a) => cmd_partial(a, out),
        Command::Interval { x, y, dot: _, json, highlight_l } => cmd_interval(x, y, json, highlight_l, out),
        Command::Decomps { x, y, fixture, all } => cmd_decomps(x, y, fixture, all, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
    }
}

fn same_window(x: &Permutation, y: &Permutation) -> Result<()> {
    if x.size() != y.size() {
        return Err(Error::WindowMismatch(x.size(), y.size()));
    }
    Ok(())
}

fn cmd_kl(x: Permutation, y: Permutation, json: bool, out: &mut dyn Write) -> Result<i32> {
    same_window(&x, &y)?;
    let klt = KlTable::new(x.size())?;
    let p = klt.kl(&x, &y)?;
    let d = if p.is_zero() { IntPolynomial::zero() } else { klt.partial_kl(&x, &y)? };
    if json {
        writeln!(out, "{}", json!({"x": x, "y": y, "P": p, "dP": d}))?;
    } else {
        writeln!(out, "P = {p}")?;
        writeln!(out, "dP = {d}")?;
    }
    Ok(0)
}

fn cmd_partial(a: PartialArgs, out: &mut dyn Write) -> Result<i32> {
    if let (Some(d), Some(n)) = (a.recover, a.length) {
        writeln!(out, "P = {}", IntPolynomial::recover_from_partial(&d, n)?)?;
        return Ok(0);
    }
    let (x, y) = (a.x.expect("required by clap"), a.y.expect("required by clap"));
    same_window(&x, &y)?;
    let klt = KlTable::new(x.size())?;
    writeln!(out, "dP = {}", klt.partial_kl(&x, &y)?)?;
    Ok(0)
}

fn cmd_interval(x: Permutation, y: Permutation, json: bool, highlight: bool, out: &mut dyn Write) -> Result<i32> {
    same_window(&x, &y)?;
    let iv = BruhatInterval::build(x, y)?;
    let decomp = if highlight && x != y { Some(canonical_l(&iv)?) } else { None };
    if json {
        let mut v = iv.to_json();
        if let Some(d) = &decomp {
            v["L"] = d.to_json(iv.graph(), Some(&iv));
        }
        writeln!(out, "{v}")?;
    } else {
        let edges = decomp.as_ref().map(|d| d.edges_at(iv.bottom()).to_vec()).unwrap_or_default();
        write!(out, "{}", iv.to_dot(decomp.as_ref().map(|d| d.members()), &edges))?;
    }
    Ok(0)
}

fn cmd_decomps(
    x: Option<Permutation>,
    y: Option<Permutation>,
    fixture: Option<PathBuf>,
    all: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let interval = match (x, y) {
        (Some(x), Some(y)) => {
            same_window(&x, &y)?;
            if x == y {
                return Err(Error::InvalidArgument("x = y: a one-point interval has no decompositions".into()));
            }
            Some(BruhatInterval::build(x, y)?)
        }
        _ => None,
    };
    let owned;
    let g: &RankedDigraph = match &interval {
        Some(iv) => iv.graph(),
        None => {
            let path = fixture.expect("required by clap");
            let text = std::fs::read_to_string(&path)?;
            let f: GraphFixture =
                serde_json::from_str(&text).map_err(|e| Error::MalformedGraph(format!("{}: {e}", path.display())))?;
            owned = RankedDigraph::from_fixture(&f)?;
            &owned
        }
    };
    let results = enumerate_with_failures(g)?;
    let mut count = 0;
    for (z, v) in results {
        match v {
            Validation::Valid(d) => {
                count += 1;
                let mut j = d.to_json(g, interval.as_ref());
                if all {
                    j["valid"] = json!(true);
                }
                writeln!(out, "{j}")?;
            }
            Validation::Invalid(f) if all => {
                let z = match &interval {
                    Some(iv) => json!(iv.perm(z).to_string()),
                    None => json!(z),
                };
                writeln!(out, "{}", json!({"z": z, "valid": false, "witness": f}))?;
            }
            Validation::Invalid(_) => {}
        }
    }
    writeln!(err, "{count} decompositions")?;
    Ok(0)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = SweepConfig {
        n: a.n,
        mode: a.mode,
        sample: a.sample.map(|count| Sample { count, seed: a.seed }),
        jobs: a.jobs.unwrap_or_else(default_jobs),
        dedup: a.dedup,
    };
    if a.n < 2 {
        return Err(Error::InvalidArgument("--n must be at least 2".into()));
    }
    let klt = match &a.kl_cache {
        Some(p) if p.exists() => KlTable::load(p, a.n)?,
        _ => KlTable::new(a.n)?,
    };
    let mut report = sweep(&cfg, &klt)?;
    if let Some(p) = &a.kl_cache {
        klt.save(p)?;
    }
    if a.deterministic {
        report.summary.elapsed_ms = None;
    }
    match &a.out {
        Some(p) => report.write_jsonl(std::io::BufWriter::new(std::fs::File::create(p)?))?,
        None => report.write_jsonl(&mut *out)?,
    }
    let s = &report.summary;
    writeln!(
        err,
        "{} records: {} passed, {} failed; {} intervals ({} degenerate)",
        s.total, s.passed, s.failed, s.intervals, s.degenerate
    )?;
    Ok(if report.all_passed() { 0 } else { 1 })
}
