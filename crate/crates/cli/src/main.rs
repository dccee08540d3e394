use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use np_atlas::bott::{bbw_cohomology, BlockedWeight, CohomologyResult};
use np_atlas::geometry::{FlagShape, VarietySpec};
use np_atlas::par::Strategy;
use np_atlas::random::DEFAULT_SEED;
use np_atlas::syzygy::{np_certify_with, np_threshold, Fraction, NpCertificate, ThresholdFamily, TraceEntry};
use np_atlas::verify::{run_suite, Suite, SuiteReport, VerifyOptions};
use np_atlas::Error;

const EXIT_NOT_CERTIFIED: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Bott-Borel-Weil cohomology and (N_p) certificates for flag varieties.
///
/// Output is a single JSON document on stdout unless --human is given.
/// Set NP_ATLAS_THREADS to cap the worker threads.
#[derive(Parser, Debug)]
#[command(name = "np-atlas", version)]
struct Cli {
    /// Print a readable summary instead of JSON.
    #[arg(long, global = true)]
    human: bool,

    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology of a homogeneous bundle on a type A flag variety.
    Cohomology {
        /// Flag shape, e.g. "fl(1;2)" or "fl(6,5,3;12)".
        #[arg(long)]
        shape: String,
        /// One bracketed block per quotient, e.g. "[3],[0]".
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Certify (N_p) for an ample line bundle. Exit code 0 if certified, 1 if not.
    Np {
        /// Variety: "fl(..)", "sfl(..)", "ofl(..)", "g2q", "g2x" or "g2p".
        #[arg(long)]
        spec: String,
        /// Coefficients in the ambient det Q_i basis, e.g. "3,2,1".
        #[arg(long = "L", allow_hyphen_values = true)]
        line: String,
        #[arg(long)]
        p: u32,
    },
    /// Exact configuration threshold for a rank tuple (r_2, ..., r_{k+1}).
    NpThreshold {
        /// C (symplectic) or BD (orthogonal).
        #[arg(long)]
        family: String,
        /// Comma-separated ranks, e.g. "1,2,3".
        #[arg(long)]
        ranks: String,
        #[arg(long)]
        p: u32,
    },
    /// Run a verification suite. Exit code 0 iff every check passes.
    Verify {
        /// classical-pn, serre-duality, plethysm-dims, lr-oracle, inversion-bound,
        /// sfl-refined, threshold-clauses, g2-lemma, g2-np, restriction-surjectivity or all.
        suite: String,
        /// Number of random cases for randomized suites.
        #[arg(long)]
        cases: Option<usize>,
        /// Seed for randomized suites.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct ThresholdOutput {
    family: String,
    ranks: Vec<usize>,
    p: u32,
    threshold: Fraction,
    witness_config: Vec<usize>,
}

#[derive(Serialize)]
struct VerifyOutput {
    passed: bool,
    seed: u64,
    suites: Vec<SuiteReport>,
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit<T: Serialize>(value: &T) {
    let mut out = std::io::stdout().lock();
    let _ = serde_json::to_writer_pretty(&mut out, value);
    let _ = writeln!(out);
}

fn human_cohomology(shape: &FlagShape, r: &CohomologyResult) {
    match r {
        CohomologyResult::Vanishes => println!("{shape}: all cohomology vanishes"),
        CohomologyResult::NonZero { degree, weight, dimension } => {
            println!("{shape}: H^{degree} = S^{:?} V, dimension {dimension}", weight.entries())
        }
    }
}

fn human_certificate(c: &NpCertificate) {
    println!("variety   {}", c.query.spec);
    println!("L         ({})  l = {}  p = {}", c.query.line_bundle, c.query.l, c.query.p);
    println!("verdict   {:?}", c.verdict);
    println!("clause    {:?}", c.clause);
    if let Some(t) = c.threshold {
        println!("threshold {t}  witness {:?}", c.witness_config);
    }
    if !c.literal_hypotheses_met.is_empty() {
        println!("also met  {:?}", c.literal_hypotheses_met);
    }
    let (mut shown, mut vanishing, mut failing) = (0, 0, 0);
    for e in &c.trace {
        match e {
            TraceEntry::Note { text } => println!("note      {text}"),
            TraceEntry::Inequality { config, value, holds, .. } if shown < 12 => {
                shown += 1;
                println!("  {config:?}  {value}  {}", if *holds { "ok" } else { "exceeds l" });
            }
            TraceEntry::Vanishing { ok, .. } => {
                vanishing += 1;
                failing += usize::from(!ok);
            }
            _ => {}
        }
    }
    if vanishing > 0 {
        println!("checked   {vanishing} required vanishings, {failing} failing");
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let strategy = if cli.sequential { Strategy::Sequential } else { Strategy::Parallel };
    match cli.command {
        Command::Cohomology { shape, weight } => {
            let shape: FlagShape = shape.parse()?;
            let weight: BlockedWeight = weight.parse()?;
            if weight.ranks() != shape.quotient_ranks() {
                return Err(Failure::Usage(format!(
                    "weight block sizes {:?} do not match the quotient ranks {:?} of {shape}",
                    weight.ranks(),
                    shape.quotient_ranks()
                )));
            }
            let result = bbw_cohomology(&weight);
            if cli.human {
                human_cohomology(&shape, &result);
            } else {
                emit(&result);
            }
            Ok(0)
        }
        Command::Np { spec, line, p } => {
            let spec: VarietySpec = spec.parse()?;
            let line = spec.parse_line_bundle(&line)?;
            let cert = np_certify_with(&spec, &line, p, strategy)?;
            if cli.human {
                human_certificate(&cert);
            } else {
                emit(&cert);
            }
            Ok(if cert.is_certified() { 0 } else { EXIT_NOT_CERTIFIED })
        }
        Command::NpThreshold { family, ranks, p } => {
            let family: ThresholdFamily = family.parse()?;
            let ranks = ranks
                .split(',')
                .map(|t| {
                    t.trim().parse::<usize>().map_err(|_| Error::Parse { token: t.trim().to_string(), expected: "rank" })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let t = np_threshold(family, &ranks, p)?;
            if cli.human {
                println!("{family} {ranks:?} p={p}: {}  at {:?}", t.value, t.witness);
            } else {
                emit(&ThresholdOutput { family: family.to_string(), ranks, p, threshold: t.value, witness_config: t.witness });
            }
            Ok(0)
        }
        Command::Verify { suite, cases, seed } => {
            let suite: Suite = suite.parse()?;
            let reports = run_suite(suite, &VerifyOptions { cases, seed, strategy });
            let passed = reports.iter().all(|r| r.passed);
            if cli.human {
                for r in &reports {
                    println!("[{}] {} ({} cases)", if r.passed { "PASS" } else { "FAIL" }, r.suite, r.cases);
                    for f in &r.failures {
                        println!("    {f}");
                    }
                    for n in &r.notes {
                        println!("    {n}");
                    }
                }
            } else {
                emit(&VerifyOutput { passed, seed, suites: reports });
            }
            Ok(if passed { 0 } else { 1 })
        }
    }
}

fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Ok(v) = std::env::var("NP_ATLAS_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("np-atlas: cannot configure thread pool: {e}");
                }
            }
            _ => eprintln!("np-atlas: ignoring NP_ATLAS_THREADS={v}: expected a positive integer"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("np-atlas: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
