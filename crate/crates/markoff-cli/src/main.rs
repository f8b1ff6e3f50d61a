//! markoff: orbit censuses, Alt/Sym monodromy classification, prime scans,
//! matrix oracle cross-checks, ramification reports, and the wreath lemma
//! grid, behind one binary.

mod cache;

use clap::{Parser, Subcommand, ValueEnum};
use markoff_core::field::{primes_in, property_p};
use markoff_core::orbits::{compute_orbits, maximal_orbit, orbits};
use markoff_core::perm::{classify_giant, permutation_on_subset, ROT1_WORD};
use markoff_core::ramification::{
    parity_law_check, predicted_monodromy, profile, riemann_hurwitz_genus, unramified_counts,
    ParityLawReport,
};
use markoff_core::report::{build_ell_report, csv_row, summarize};
use markoff_core::sl2::run_full_oracle;
use markoff_core::surface::{enumerate_surface, GAMMA_GENERATORS, VIETA_GENERATORS};
use markoff_core::wreath::default_grid_report;
use markoff_core::{
    Classification, EllReport, GiantCertificate, GiantSearchConfig, Level, PipelineConfig,
    PrimeModulus, RamificationProfile, CSV_HEADER,
};
use rayon::prelude::*;
use serde::Serialize;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "markoff", version, about = "Markoff surfaces mod p: orbits, monodromy, cross-checks")]
struct Cli {
    /// Seed for word searches and oracle sampling
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads for scans (default: available parallelism)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Triples,
    Blocks,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Triples => Level::Triples,
            LevelArg::Blocks => Level::Blocks,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit census of the Vieta group action at one prime
    Orbits {
        #[arg(long)]
        ell: u64,
        #[arg(long, value_enum, default_value_t = LevelArg::Blocks)]
        level: LevelArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Classify the rotation subgroup on the maximal orbit as Alt or Sym
    Monodromy {
        #[arg(long)]
        ell: u64,
    },
    /// Run the full pipeline on every prime in a range, CSV to stdout or --out
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check trace coordinates against explicit 2x2 matrices
    Oracle {
        #[arg(long)]
        ell: u64,
        /// Largest modulus the oracle will attempt
        #[arg(long, default_value_t = 11)]
        oracle_max_ell: u64,
    },
    /// Ramification profiles, genus, and the parity law at one prime
    Ramify {
        #[arg(long)]
        ell: u64,
    },
    /// Property P status for every prime in a range
    PropertyP {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Exhaustive wreath lemma checks on the default grid
    WreathCheck,
}

enum Failure {
    Usage(String),
    Verification(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Verification(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Io(m) => m,
        }
    }
}

impl From<markoff_core::Error> for Failure {
    fn from(e: markoff_core::Error) -> Failure {
        use markoff_core::Error::*;
        match e {
            NotPrime(_) | ModulusTooSmall { .. } | ZeroOrder | EmptyConic { .. }
            | ShapeMismatch { .. } | InvalidParam(_) => Failure::Usage(e.to_string()),
            OffSurface { .. } | DomainNotClosed { .. } | NotTransitive
            | GenusInconsistency { .. } | VerificationFailed { .. } => {
                Failure::Verification(e.to_string())
            }
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Orbits { ell, level, format } => cmd_orbits(ell, level, format),
        Command::Monodromy { ell } => cmd_monodromy(ell, cli.seed),
        Command::Scan { from, to, cache_dir, out } => {
            cmd_scan(from, to, cache_dir, out, cli.seed, cli.jobs)
        }
        Command::Oracle { ell, oracle_max_ell } => cmd_oracle(ell, oracle_max_ell, cli.seed),
        Command::Ramify { ell } => cmd_ramify(ell),
        Command::PropertyP { from, to } => cmd_property_p(from, to),
        Command::WreathCheck => cmd_wreath_check(),
    }
}

#[derive(Serialize)]
struct OrbitsOutput {
    ell: u64,
    level: &'static str,
    orbit_sizes: Vec<u64>,
    representatives: Vec<String>,
    total: u64,
    transitive: bool,
}

fn cmd_orbits(ell: u64, level: LevelArg, format: FormatArg) -> Result<(), Failure> {
    let m = PrimeModulus::new(ell)?;
    let table = enumerate_surface(m)?;
    if table.triples().is_empty() {
        eprintln!("warning: no nonzero solutions at ell = {ell}");
    }
    let lv: Level = level.into();
    let census = orbits(&table, lv, &VIETA_GENERATORS);
    let representatives: Vec<String> = census
        .representatives
        .iter()
        .map(|&i| match lv {
            Level::Triples => table.triples()[i].to_string(),
            Level::Blocks => table.blocks()[i].to_string(),
        })
        .collect();
    let out = OrbitsOutput {
        ell,
        level: match lv {
            Level::Triples => "triples",
            Level::Blocks => "blocks",
        },
        orbit_sizes: census.orbit_sizes.clone(),
        representatives,
        total: census.total,
        transitive: census.is_transitive(),
    };
    match format {
        FormatArg::Json => println!("{}", serde_json::to_string_pretty(&out)?),
        FormatArg::Csv => {
            println!("orbit,size,representative");
            for (i, (size, rep)) in out.orbit_sizes.iter().zip(&out.representatives).enumerate() {
                println!("{i},{size},\"{rep}\"");
            }
        }
    }
    Ok(())
}

/// The gamma generators restricted to the maximal Vieta block orbit, then the
/// giant classification seeded with the rot1 word.
fn gamma_certificate(ell: u64, seed: u64) -> Result<(GiantCertificate, u64), Failure> {
    let m = PrimeModulus::new(ell)?;
    if ell < 5 {
        return Err(markoff_core::Error::ModulusTooSmall { ell, min: 5 }.into());
    }
    let table = enumerate_surface(m)?;
    let partition = compute_orbits(&table, Level::Blocks, &VIETA_GENERATORS);
    let maximal = maximal_orbit(&partition).expect("block set is nonempty for ell >= 5");
    let gens = GAMMA_GENERATORS
        .iter()
        .map(|&g| permutation_on_subset(g, &table, Level::Blocks, &maximal.member_indices))
        .collect::<markoff_core::Result<Vec<_>>>()?;
    let cfg = GiantSearchConfig { seed, ..GiantSearchConfig::default() };
    Ok((classify_giant(&gens, &[ROT1_WORD.to_vec()], &cfg), maximal.size))
}

#[derive(Serialize)]
struct MonodromyOutput {
    ell: u64,
    degree: u64,
    certificate: GiantCertificate,
    predicted: String,
    prediction_match: bool,
}

fn cmd_monodromy(ell: u64, seed: u64) -> Result<(), Failure> {
    let (certificate, degree) = gamma_certificate(ell, seed)?;
    let predicted = predicted_monodromy(ell)?;
    let prediction_match = matches!(
        (&certificate.classification, predicted),
        (Classification::Alt, markoff_core::Monodromy::Alt)
            | (Classification::Sym, markoff_core::Monodromy::Sym)
    );
    let out = MonodromyOutput {
        ell,
        degree,
        certificate,
        predicted: predicted.to_string(),
        prediction_match,
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn cmd_scan(
    from: u64,
    to: u64,
    cache_dir: Option<PathBuf>,
    out: Option<PathBuf>,
    seed: u64,
    jobs: Option<usize>,
) -> Result<(), Failure> {
    if from < 5 || from > to {
        return Err(Failure::Usage(format!(
            "scan range must satisfy 5 <= from <= to, got {from}..{to}"
        )));
    }
    let dir = cache::resolve_dir(cache_dir);
    let cfg = PipelineConfig { seed, ..PipelineConfig::default() };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Io(e.to_string()))?;
    let io_errors: Mutex<Vec<String>> = Mutex::new(Vec::new());
    let start = Instant::now();
    let results: Vec<(u64, markoff_core::Result<EllReport>)> = pool.install(|| {
        primes_in(from, to)
            .par_iter()
            .map(|&ell| {
                if let Some(report) = cache::load(&dir, ell) {
                    return (ell, Ok(report));
                }
                let m = PrimeModulus::new(ell).expect("primes_in yields primes");
                let result = build_ell_report(m, &cfg);
                if let Ok(report) = &result {
                    if let Err(e) = cache::store(&dir, report) {
                        io_errors.lock().unwrap().push(format!("cache write at ell {ell}: {e}"));
                    }
                }
                (ell, result)
            })
            .collect()
    });
    if let Some(first) = io_errors.into_inner().unwrap().into_iter().next() {
        return Err(Failure::Io(first));
    }

    let mut writer: Box<dyn Write> = match &out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    };
    writeln!(writer, "{CSV_HEADER}")?;
    let mut reports = Vec::new();
    for (ell, result) in results {
        match result {
            Ok(report) => {
                writeln!(writer, "{}", csv_row(&report))?;
                reports.push(report);
            }
            // partial failures stay in the row log; the scan itself succeeds
            Err(e) => eprintln!("ell {ell}: {e}"),
        }
    }
    writer.flush()?;

    let s = summarize(from, to, &reports, start.elapsed().as_secs_f64());
    eprintln!(
        "scan {}..{}: {} rows, {} match, {} unknown, {} mismatch, property P density {:.3}, {:.1}s",
        s.from, s.to, s.rows, s.matches, s.unknowns, s.mismatches, s.property_p_density,
        s.wall_seconds
    );
    Ok(())
}

fn cmd_oracle(ell: u64, oracle_max_ell: u64, seed: u64) -> Result<(), Failure> {
    if ell > oracle_max_ell {
        return Err(Failure::Usage(format!(
            "oracle at ell = {ell} exceeds --oracle-max-ell {oracle_max_ell}; \
the pair scan is quartic in ell, raise the cap deliberately"
        )));
    }
    let m = PrimeModulus::new(ell)?;
    if ell < 5 {
        return Err(markoff_core::Error::ModulusTooSmall { ell, min: 5 }.into());
    }
    let report = run_full_oracle(m, seed)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

#[derive(Serialize)]
struct RamifyOutput {
    ell: u64,
    full: RamificationProfile,
    maximal_orbit: RamificationProfile,
    genus: u64,
    unramified_j0: u64,
    unramified_j1728: u64,
    parity_law: ParityLawReport,
}

fn cmd_ramify(ell: u64) -> Result<(), Failure> {
    let m = PrimeModulus::new(ell)?;
    if ell < 5 {
        return Err(markoff_core::Error::ModulusTooSmall { ell, min: 5 }.into());
    }
    let table = enumerate_surface(m)?;
    let full = profile(&table, None)?;
    let partition = compute_orbits(&table, Level::Blocks, &VIETA_GENERATORS);
    let maximal = maximal_orbit(&partition).expect("block set is nonempty for ell >= 5");
    let on_maximal = profile(&table, Some(&maximal.member_indices))?;
    let (unramified_j0, unramified_j1728) = unramified_counts(&full);
    let out = RamifyOutput {
        ell,
        genus: riemann_hurwitz_genus(&on_maximal)?,
        unramified_j0,
        unramified_j1728,
        parity_law: parity_law_check(&table)?,
        full,
        maximal_orbit: on_maximal,
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn cmd_property_p(from: u64, to: u64) -> Result<(), Failure> {
    if from < 5 || from > to {
        return Err(Failure::Usage(format!(
            "range must satisfy 5 <= from <= to, got {from}..{to}"
        )));
    }
    let primes = primes_in(from, to);
    println!("ell,property_p");
    let mut holds = 0u64;
    for &ell in &primes {
        let status = property_p(PrimeModulus::new(ell).expect("primes_in yields primes"))?;
        if status.holds() {
            holds += 1;
        }
        println!("{ell},{status}");
    }
    if !primes.is_empty() {
        eprintln!(
            "property P holds for {holds}/{} primes in [{from}, {to}] (density {:.3})",
            primes.len(),
            holds as f64 / primes.len() as f64
        );
    }
    Ok(())
}

fn cmd_wreath_check() -> Result<(), Failure> {
    let report = default_grid_report()?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    if !report.all_pass {
        return Err(Failure::Verification(
            "wreath lemma grid check failed; witnesses are in the report above".into(),
        ));
    }
    Ok(())
}
