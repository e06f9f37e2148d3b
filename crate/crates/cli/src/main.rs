//! `kufam`: generate, check and decompose (k,u)-intersecting families.
//!
//! Exit codes: 0 success, 1 negative answer (not intersecting, failed
//! verification), 2 usage or parse error, 3 capacity exceeded, 4 internal
//! invariant violated.

mod experiment;

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kufam::{
    compact, decompose_run, format_decomposition, min_cover_exact_capped, theorem_bound,
    verify_decomposition, BoundParams, DecompositionDocument, Error, GenKind, GenSpec,
    SearchConfig, SetFamily, DEFAULT_ORACLE_CAP,
};

#[derive(Parser)]
#[command(name = "kufam", version, about = "Decompose (k,u)-intersecting set families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Random,
    Star,
    ScatteredStars,
    Sunflower,
    Complete,
}

impl From<Kind> for GenKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Random => GenKind::Random,
            Kind::Star => GenKind::Star,
            Kind::ScatteredStars => GenKind::ScatteredStars,
            Kind::Sunflower => GenKind::Sunflower,
            Kind::Complete => GenKind::Complete,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family and print it in the family file format.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        u: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        per_star: usize,
        #[arg(long, default_value_t = 1)]
        core_size: usize,
        #[arg(long, default_value_t = 1)]
        petal_size: usize,
        #[arg(long, default_value_t = 2)]
        petals: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether a family is (k,u)-intersecting.
    Check {
        /// Family file, or `-` for standard input.
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        u: usize,
        /// Print member sets next to indices.
        #[arg(long)]
        verbose: bool,
    },
    /// Split a (k,u)-intersecting family into (ell,u)-intersecting parts.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        ell: usize,
        /// Greedily merge parts after the construction.
        #[arg(long)]
        compact: bool,
        /// Re-check the output and exit 1 on any violation.
        #[arg(long)]
        verify: bool,
        /// Emit JSON instead of the text format.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        verbose: bool,
    },
    /// Exact minimum number of (ell,u)-intersecting parts.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        u: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
        #[arg(long)]
        verbose: bool,
    },
    /// Print the upper bound ceil((k-1)/(ell-1) * C(s,u)).
    Bound {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Parameter sweep; writes CSV.
    Experiment {
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        /// Defaults to every u in 1..=s.
        #[arg(long, value_delimiter = ',')]
        u: Vec<usize>,
        /// Defaults to every ell in 2..k.
        #[arg(long, value_delimiter = ',')]
        ell: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 24)]
        max_size: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run the exact oracle on families up to this size; 0 disables it.
        #[arg(long, default_value_t = 14)]
        oracle_cap: usize,
        /// Random draws per row before the row is skipped.
        #[arg(long, default_value_t = 64)]
        retries: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave the wall_ms column empty.
        #[arg(long)]
        no_timing: bool,
    },
    /// Search for intersecting families that need many parts.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
}

/// A failed command: message for stderr and the exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotIntersecting(_) => 1,
            Error::Capacity { .. } => 3,
            Error::InvariantViolation(_) | Error::KernelCoverage { .. } => 4,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::usage(format!("i/o error: {e}"))
    }
}

type CmdResult = Result<u8, Failure>;

fn read_family(path: &PathBuf) -> Result<SetFamily, Failure> {
    let mut bytes = Vec::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_end(&mut bytes)?;
    } else {
        bytes = std::fs::read(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    }
    Ok(SetFamily::parse(&bytes)?)
}

fn params_for(family: &SetFamily, k: usize, u: usize, ell: usize) -> Result<BoundParams, Failure> {
    Ok(BoundParams::new(family.uniformity(), k, u, ell)?)
}

fn write_witness(out: &mut dyn Write, family: &SetFamily, indices: &[usize], verbose: bool) -> io::Result<()> {
    let joined: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
    writeln!(out, "WITNESS: {}", joined.join(" "))?;
    if verbose {
        for &i in indices {
            writeln!(out, "  {i} {}", family.member(i))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("KUFAM_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match result {
        Ok(code) if flushed.is_ok() => ExitCode::from(code),
        Ok(_) => ExitCode::from(2),
        Err(f) => {
            let _ = out.flush();
            eprintln!("kufam: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Gen {
            kind,
            n,
            s,
            count,
            u,
            k,
            per_star,
            core_size,
            petal_size,
            petals,
            seed,
        } => {
            let spec = GenSpec {
                kind: kind.into(),
                n,
                s,
                count,
                u,
                k,
                per_star,
                core_size,
                petal_size,
                petals,
                seed,
            };
            let family = spec.generate()?;
            out.write_all(family.to_text().as_bytes())?;
            Ok(0)
        }
        Command::Check { file, k, u, verbose } => {
            let family = read_family(&file)?;
            match kufam::find_witness(&family, k, u)? {
                None => {
                    writeln!(out, "INTERSECTING")?;
                    Ok(0)
                }
                Some(w) => {
                    write_witness(out, &family, &w.indices, verbose)?;
                    Ok(1)
                }
            }
        }
        Command::Decompose {
            file,
            k,
            u,
            ell,
            compact: do_compact,
            verify,
            json,
            verbose,
        } => {
            let family = read_family(&file)?;
            let p = params_for(&family, k, u, ell)?;
            let run = match decompose_run(&family, &p) {
                Ok(r) => r,
                Err(Error::NotIntersecting(w)) => {
                    writeln!(out, "NOT INTERSECTING")?;
                    write_witness(out, &family, &w.indices, verbose)?;
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            };
            let constructive = run.decomposition.len();
            let decomposition = if do_compact {
                compact(&family, &run.decomposition, ell, u)?
            } else {
                run.decomposition.clone()
            };
            let report = verify_decomposition(&family, &decomposition, ell, u, run.bound)?;
            let verified = report.is_valid() && report.disjoint;
            if json {
                let mut doc = DecompositionDocument::new(&decomposition, run.bound, verified);
                doc.kernel = Some(run.kernel.indices.clone());
                doc.constructive_parts = do_compact.then_some(constructive);
                doc.report = Some(report.clone());
                serde_json::to_writer_pretty(&mut *out, &doc)
                    .map_err(|e| Failure::usage(format!("json: {e}")))?;
                writeln!(out)?;
            } else {
                let text = format_decomposition(&decomposition, run.bound, verified, verbose.then_some(&family));
                out.write_all(text.as_bytes())?;
                if do_compact {
                    writeln!(out, "# constructive_parts={constructive} compacted_parts={}", decomposition.len())?;
                }
                let kernel: Vec<String> = run.kernel.indices.iter().map(|i| i.to_string()).collect();
                writeln!(out, "# kernel: {}", kernel.join(" "))?;
            }
            if verify && !verified {
                if let (Some(part), Some(w)) = (report.failing_part, &report.witness) {
                    eprintln!("kufam: part {part} contains far members {w}");
                }
                return Ok(1);
            }
            Ok(0)
        }
        Command::Oracle {
            file,
            ell,
            u,
            cap,
            verbose,
        } => {
            let family = read_family(&file)?;
            let r = min_cover_exact_capped(&family, ell, u, cap)?;
            writeln!(out, "minimum={}", r.minimum)?;
            let text = format_decomposition(&r.optimal_parts, r.minimum as u64, true, verbose.then_some(&family));
            // drop the header line; the minimum already says it
            for line in text.lines().skip(1) {
                writeln!(out, "{line}")?;
            }
            writeln!(out, "# explored={}", r.explored)?;
            Ok(0)
        }
        Command::Bound { s, k, u, ell } => {
            let p = BoundParams::new(s, k, u, ell)?;
            writeln!(out, "{}", theorem_bound(&p)?)?;
            Ok(0)
        }
        Command::Experiment {
            s,
            k,
            u,
            ell,
            n,
            max_size,
            trials,
            seed,
            oracle_cap,
            retries,
            out: path,
            no_timing,
        } => {
            let grid = experiment::Grid {
                s,
                k,
                u,
                ell,
                n,
                max_size,
                trials,
                seed,
                oracle_cap,
                retries,
                timing: !no_timing,
            };
            let mut stderr = io::stderr();
            let rows = match path {
                Some(p) => {
                    let file = File::create(&p)
                        .map_err(|e| Failure::usage(format!("cannot create {}: {e}", p.display())))?;
                    experiment::run(&grid, BufWriter::new(file), &mut stderr)
                }
                None => experiment::run(&grid, &mut *out, &mut stderr),
            }
            .map_err(Failure::usage)?;
            let failed = rows.iter().filter(|r| !r.verified).count();
            if failed > 0 {
                eprintln!("kufam: {failed} rows failed verification");
                return Ok(1);
            }
            Ok(0)
        }
        Command::Search {
            n,
            s,
            k,
            u,
            ell,
            budget,
            seed,
            exhaustive,
            oracle_cap,
        } => {
            let p = BoundParams::new(s, k, u, ell)?;
            let config = SearchConfig {
                budget,
                seed,
                exhaustive,
                oracle_cap,
                ..SearchConfig::default()
            };
            let r = kufam::extremal_search(n, &p, &config)?;
            writeln!(out, "best_value={}", r.best_value)?;
            writeln!(out, "bound={}", theorem_bound(&p)?)?;
            writeln!(out, "families_examined={}", r.families_examined)?;
            writeln!(out, "budget_exhausted={}", r.budget_exhausted)?;
            writeln!(out, "mode={}", if r.exhaustive { "exhaustive" } else { "randomized" })?;
            writeln!(out, "seed={}", r.seed)?;
            writeln!(out, "# witness family")?;
            out.write_all(r.witness_family.to_text().as_bytes())?;
            Ok(0)
        }
    }
}
