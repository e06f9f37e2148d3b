//! Parameter sweeps emitting one CSV row per generated instance.

use std::io::Write;
use std::time::Instant;

use kufam::{
    decompose_run, intersecting_instance, min_cover_exact_capped, verify_decomposition,
    BoundParams, Construction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const CSV_VERSION_LINE: &str = "# kufam-csv v1";

pub const COLUMNS: [&str; 13] = [
    "s",
    "k",
    "u",
    "ell",
    "n",
    "family_size",
    "kernel_size",
    "constructive_parts",
    "oracle_parts",
    "bound",
    "verified",
    "seed",
    "wall_ms",
];

#[derive(Clone, Debug)]
pub struct Grid {
    pub s: Vec<usize>,
    pub k: Vec<usize>,
    /// Empty means every `u` in `1..=s`.
    pub u: Vec<usize>,
    /// Empty means every `ℓ` in `2..k`.
    pub ell: Vec<usize>,
    pub n: Vec<usize>,
    pub max_size: usize,
    pub trials: usize,
    pub seed: u64,
    pub oracle_cap: usize,
    pub retries: usize,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentRecord {
    pub params: BoundParams,
    pub n: usize,
    pub family_size: usize,
    pub kernel_size: usize,
    pub constructive_parts: usize,
    pub oracle_parts: Option<usize>,
    pub bound: u64,
    pub verified: bool,
    pub seed: u64,
    pub wall_ms: Option<u128>,
}

impl ExperimentRecord {
    fn fields(&self) -> [String; 13] {
        let p = &self.params;
        [
            p.s.to_string(),
            p.k.to_string(),
            p.u.to_string(),
            p.ell.to_string(),
            self.n.to_string(),
            self.family_size.to_string(),
            self.kernel_size.to_string(),
            self.constructive_parts.to_string(),
            self.oracle_parts.map_or_else(String::new, |v| v.to_string()),
            self.bound.to_string(),
            self.verified.to_string(),
            self.seed.to_string(),
            self.wall_ms.map_or_else(String::new, |v| v.to_string()),
        ]
    }
}

struct Job {
    params: BoundParams,
    n: usize,
    trial: usize,
    seed: u64,
}

/// Grid points in `s, k, u, ℓ, n` order, each repeated `trials` times. Row
/// seeds are drawn in that order from one generator seeded with `grid.seed`.
fn jobs(grid: &Grid) -> Result<Vec<Job>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    let mut out = Vec::new();
    for &s in &grid.s {
        for &k in &grid.k {
            let us: Vec<usize> = if grid.u.is_empty() { (1..=s).collect() } else { grid.u.clone() };
            for &u in &us {
                let ells: Vec<usize> = if grid.ell.is_empty() { (2..k).collect() } else { grid.ell.clone() };
                for &ell in &ells {
                    let params = BoundParams::new(s, k, u, ell).map_err(|e| e.to_string())?;
                    for &n in &grid.n {
                        for trial in 0..grid.trials {
                            out.push(Job {
                                params,
                                n,
                                trial,
                                seed: rng.gen(),
                            });
                        }
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err("experiment grid is empty".into());
    }
    Ok(out)
}

enum Outcome {
    Row(ExperimentRecord),
    Skipped(String),
}

fn run_job(job: &Job, grid: &Grid) -> Result<Outcome, String> {
    let start = Instant::now();
    let p = job.params;
    // alternate structured and unstructured instances
    let construction = if job.trial.is_multiple_of(2) {
        Construction::ScatteredStars
    } else {
        Construction::FilteredRandom
    };
    let instance = intersecting_instance(&p, job.n, grid.max_size, construction, grid.retries, job.seed)
        .map_err(|e| e.to_string())?;
    let Some((family, _)) = instance else {
        return Ok(Outcome::Skipped(format!(
            "no ({},{})-intersecting family found for s={} n={} seed={} after {} attempts",
            p.k, p.u, p.s, job.n, job.seed, grid.retries
        )));
    };
    let run = decompose_run(&family, &p).map_err(|e| e.to_string())?;
    let report = verify_decomposition(&family, &run.decomposition, p.ell, p.u, run.bound)
        .map_err(|e| e.to_string())?;
    let oracle_parts = if grid.oracle_cap > 0 && family.len() <= grid.oracle_cap {
        Some(
            min_cover_exact_capped(&family, p.ell, p.u, grid.oracle_cap)
                .map_err(|e| e.to_string())?
                .minimum,
        )
    } else {
        None
    };
    let constructive_parts = run.decomposition.len();
    let verified = report.is_valid()
        && report.disjoint
        && run.kernel.len() < p.k
        && oracle_parts.is_none_or(|o| o <= constructive_parts);
    Ok(Outcome::Row(ExperimentRecord {
        params: p,
        n: job.n,
        family_size: family.len(),
        kernel_size: run.kernel.len(),
        constructive_parts,
        oracle_parts,
        bound: run.bound,
        verified,
        seed: job.seed,
        wall_ms: grid.timing.then(|| start.elapsed().as_millis()),
    }))
}

/// Runs the sweep and writes the CSV. Returns the rows in output order.
pub fn run<W: Write>(grid: &Grid, out: W, log: &mut dyn Write) -> Result<Vec<ExperimentRecord>, String> {
    let jobs = jobs(grid)?;
    let outcomes: Vec<Result<Outcome, String>> = jobs.par_iter().map(|j| run_job(j, grid)).collect();

    let mut out = out;
    writeln!(out, "{CSV_VERSION_LINE}").map_err(|e| e.to_string())?;
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(COLUMNS).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for outcome in outcomes {
        match outcome? {
            Outcome::Row(r) => {
                writer.write_record(r.fields()).map_err(|e| e.to_string())?;
                rows.push(r);
            }
            Outcome::Skipped(msg) => {
                let _ = writeln!(log, "skipped: {msg}");
            }
        }
    }
    writer.flush().map_err(|e| e.to_string())?;
    Ok(rows)
}
