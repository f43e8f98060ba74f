//! Exhaustive and sampled verification sweeps over the intervals of `S_n`.

use std::collections::HashSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::{canonical_l, enumerate, HypercubeDecomposition};
use crate::error::{Error, Result};
use crate::formula::{check_formula, VerificationRecord};
use crate::graph::BruhatInterval;
use crate::klbase::KlTable;
use crate::perm::Permutation;
use crate::poly::IntPolynomial;

/// Windows up to this size are prefilled before a sweep.
const PREFILL_WINDOW: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The coset decomposition `L` of every interval.
    Theorem,
    /// Every hypercube decomposition of every interval.
    Conjecture,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(Mode::Theorem),
            "conjecture" => Ok(Mode::Conjecture),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sample {
    pub count: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub n: usize,
    pub mode: Mode,
    /// Check this many random records instead of every interval.
    pub sample: Option<Sample>,
    pub jobs: usize,
    /// Keep one record per isomorphism class of (interval, J).
    pub dedup: bool,
}

impl SweepConfig {
    pub fn new(n: usize, mode: Mode) -> Self {
        SweepConfig { n, mode, sample: None, jobs: default_jobs(), dedup: false }
    }
}

/// `KLCUBE_JOBS` if set, otherwise the number of available cores.
pub fn default_jobs() -> usize {
    std::env::var("KLCUBE_JOBS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&j| j > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub intervals: usize,
    /// Intervals whose coset `L` is the whole interval (theorem mode).
    pub degenerate: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub gamma_negative: usize,
    pub q_negative: usize,
    /// Intervals where recovering `P` from `∂P` does not give `P` back.
    pub roundtrip_failures: usize,
    /// Intervals where `I + Q` differs between decompositions.
    pub independence_violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_classes: Option<usize>,
    pub emitted: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub records: Vec<VerificationRecord>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// One record per line, then `{"summary": ...}`.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut out, &serde_json::json!({ "summary": self.summary }))?;
        out.write_all(b"\n")
    }
}

#[derive(Default)]
struct Outcome {
    degenerate: bool,
    records: Vec<(Option<Vec<u8>>, VerificationRecord)>,
    roundtrip_ok: bool,
    independent: bool,
}

/// Runs a sweep with a private thread pool of `cfg.jobs` workers.
pub fn sweep(cfg: &SweepConfig, klt: &KlTable) -> Result<SweepReport> {
    if cfg.n < 2 {
        return Err(Error::InvalidArgument(format!("window {} is too small", cfg.n)));
    }
    if klt.size() != cfg.n {
        return Err(Error::WindowMismatch(klt.size(), cfg.n));
    }
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let outcomes: Vec<Outcome> = pool.install(|| -> Result<Vec<Outcome>> {
        if cfg.n <= PREFILL_WINDOW {
            klt.prefill()?;
        }
        Ok(match cfg.sample {
            None => comparable_pairs(cfg.n)
                .par_iter()
                .map(|&(x, y)| guarded(x, y, || check_interval(cfg, klt, x, y, None)))
                .collect(),
            Some(s) => (0..s.count as u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
                    rng.set_stream(i);
                    sampled(cfg, klt, &mut rng)
                })
                .collect(),
        })
    })?;

    let mut summary = SweepSummary::default();
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    for o in outcomes {
        summary.intervals += 1;
        summary.degenerate += o.degenerate as usize;
        summary.roundtrip_failures += !o.roundtrip_ok as usize;
        summary.independence_violations += !o.independent as usize;
        for (key, r) in o.records {
            summary.total += 1;
            if r.pass {
                summary.passed += 1;
            } else {
                summary.failed += 1;
            }
            if r.error.is_none() {
                summary.gamma_negative += !r.gamma_nonneg as usize;
                summary.q_negative += !r.q.is_nonnegative() as usize;
            }
            let fresh = match key {
                Some(k) => seen.insert(k),
                None => true,
            };
            if fresh {
                records.push(r);
            }
        }
    }
    summary.emitted = records.len();
    summary.distinct_classes = cfg.dedup.then_some(seen.len());
    summary.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(SweepReport { records, summary })
}

/// All pairs `x < y` in `S_n`, ordered by `x` then `y`.
pub fn comparable_pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let mut out = Vec::new();
    for x in &perms {
        for y in &perms {
            if x != y && x.bruhat_leq_unchecked(y) {
                out.push((*x, *y));
            }
        }
    }
    out
}

/// Whether the coset `L` of `[x, y]` contains `y`.
pub fn is_degenerate(x: &Permutation, y: &Permutation) -> bool {
    x.position_of(0) == y.position_of(0)
}

fn guarded(x: Permutation, y: Permutation, f: impl FnOnce() -> Outcome) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(o) => o,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "worker panicked".into());
            failed(x, y, format!("panic: {msg}"))
        }
    }
}

fn failed(x: Permutation, y: Permutation, msg: String) -> Outcome {
    Outcome {
        degenerate: false,
        records: vec![(None, VerificationRecord::failure(x, y, x, msg))],
        roundtrip_ok: true,
        independent: true,
    }
}

/// Draws intervals until one yields a record.
fn sampled(cfg: &SweepConfig, klt: &KlTable, rng: &mut ChaCha8Rng) -> Outcome {
    let total = (1..=cfg.n as u64).product::<u64>();
    loop {
        let x = Permutation::unrank(cfg.n, rng.gen_range(0..total));
        let y = Permutation::unrank(cfg.n, rng.gen_range(0..total));
        if x == y || !x.bruhat_leq_unchecked(&y) {
            continue;
        }
        if cfg.mode == Mode::Theorem && is_degenerate(&x, &y) {
            continue;
        }
        let pick = rng.gen::<u64>();
        let o = guarded(x, y, || check_interval(cfg, klt, x, y, Some(pick)));
        if !o.records.is_empty() {
            return o;
        }
    }
}

/// Checks one interval. With `pick`, only one decomposition (chosen by
/// `pick` modulo their number) is checked in conjecture mode.
fn check_interval(cfg: &SweepConfig, klt: &KlTable, x: Permutation, y: Permutation, pick: Option<u64>) -> Outcome {
    match try_check_interval(cfg, klt, x, y, pick) {
        Ok(o) => o,
        Err(e) => failed(x, y, e.to_string()),
    }
}

fn try_check_interval(
    cfg: &SweepConfig,
    klt: &KlTable,
    x: Permutation,
    y: Permutation,
    pick: Option<u64>,
) -> Result<Outcome> {
    let roundtrip_ok = {
        let p = klt.kl(&x, &y)?;
        let n = y.length() as i64 - x.length() as i64;
        IntPolynomial::recover_from_partial(&p.partial_transform(n)?, n).as_ref() == Ok(&p)
    };
    if cfg.mode == Mode::Theorem && is_degenerate(&x, &y) {
        return Ok(Outcome { degenerate: true, roundtrip_ok, independent: true, ..Outcome::default() });
    }
    let interval = BruhatInterval::build(x, y)?;
    let decomps: Vec<HypercubeDecomposition> = match cfg.mode {
        Mode::Theorem => vec![canonical_l(&interval)?],
        Mode::Conjecture => {
            let mut all = enumerate(interval.graph())?;
            if let Some(p) = pick {
                if all.is_empty() {
                    return Ok(Outcome { roundtrip_ok, independent: true, ..Outcome::default() });
                }
                let i = (p % all.len() as u64) as usize;
                all = vec![all.swap_remove(i)];
            }
            all
        }
    };
    let mut records = Vec::with_capacity(decomps.len());
    let mut sums = HashSet::new();
    for d in &decomps {
        let key = cfg.dedup.then(|| interval.graph().canonical_key_colored(&d.coloring(interval.graph())));
        let r = match check_formula(&interval, d, klt) {
            Ok(r) => {
                sums.insert(r.i.checked_add(&r.q)?);
                r
            }
            Err(e) => VerificationRecord::failure(x, y, interval.perm(d.crown()), e.to_string()),
        };
        records.push((key, r));
    }
    Ok(Outcome { degenerate: false, records, roundtrip_ok, independent: sums.len() <= 1 })
}
