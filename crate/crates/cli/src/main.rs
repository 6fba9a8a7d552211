//! `pythagoras`: bounds, dimension experiments and length certificates for
//! sums of squares of real forms.
//!
//! Exit codes: 0 success, 1 `gramcheck` found inequivalent representations,
//! 2 inconclusive (a computed dimension exceeded its expectation, primes
//! disagreed, or sampling never passed the genericity gate), 3 certification
//! failure, 4 usage error, 5 internal error (a proven inequality failed).

mod cache;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pythagoras_core::bounds::{bounds_row, bounds_table, DegreeParams};
use pythagoras_core::generic::{
    ik_sweep, ik_verify, mix_seed, typical_length, ExperimentConfig, Status,
};
use pythagoras_core::ring::PrimeField;
use pythagoras_core::witness::{
    build_witness, certify_unique_representation, default_point_count, gram_equivalent,
    orthogonal_mix, verify_certificate, LengthCertificate, RepresentationRecord, SosRepresentation,
};
use pythagoras_core::Error;
use serde_json::{json, Value};

use cache::{cache_key, Cache};
use render::Format;

const DEFAULT_SEED: u64 = 1729;

const EXIT_NOT_EQUIVALENT: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_CERTIFICATION: u8 = 3;
const EXIT_USAGE: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

#[derive(Parser)]
#[command(
    name = "pythagoras",
    version,
    about = "Sum-of-squares length bounds, dimension checks and certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// Integer seed, or `random` for a fresh one (printed in the records).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED.to_string())]
    seed: String,
    /// Sample sets per instance.
    #[arg(long, global = true, default_value_t = 2)]
    trials: usize,
    /// First prime (default 2^31 - 1).
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Second prime (default 2^61 - 1).
    #[arg(long, global = true)]
    prime2: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    parallelism: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// JSON-lines result cache.
    #[arg(long, global = true, env = "PYLAB_CACHE")]
    cache: Option<PathBuf>,
    /// Allow product matrices above the size guard.
    #[arg(long, global = true)]
    allow_large: bool,
}

/// `n` and `d`, either positional or as flags.
#[derive(Args)]
struct Nd {
    #[arg(long = "n")]
    n_flag: Option<u32>,
    #[arg(long = "d")]
    d_flag: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Lower and upper bounds on p(n, 2d).
    Bounds {
        args: Vec<u32>,
        #[command(flatten)]
        nd: Nd,
    },
    /// Bounds over ranges such as `--n 4..6 --d 2..8`.
    Table {
        #[arg(long = "n", default_value = "4..6")]
        n_range: String,
        #[arg(long = "d", default_value = "2..8")]
        d_range: String,
        /// n = 4..6, d = 2..8 in the classic three-rows-per-n layout.
        #[arg(long)]
        paper_table: bool,
    },
    /// Compare dim I(Z)^2_{2d} with its conjectured value.
    Ik {
        args: Vec<u32>,
        #[command(flatten)]
        nd: Nd,
        #[arg(long = "s")]
        s_flag: Option<u128>,
        /// Every s in [N_(d-1), N_d).
        #[arg(long)]
        sweep: bool,
    },
    /// Typical sos length of degree-2d forms.
    Typical {
        args: Vec<u32>,
        #[command(flatten)]
        nd: Nd,
        #[arg(long, default_value_t = 64)]
        r_max: u32,
    },
    /// Build a form with certified sos length and write its certificate.
    Witness {
        args: Vec<u32>,
        #[command(flatten)]
        nd: Nd,
        #[arg(long = "s")]
        s_flag: Option<usize>,
        /// Certificate path (default `witness-n<N>-d<D>-s<S>.json`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an orthogonally mixed copy of the basis representation.
        #[arg(long)]
        mix_out: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        rotations: usize,
    },
    /// Decide orthogonal equivalence of two certificates or representations.
    Gramcheck { first: PathBuf, second: PathBuf },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(msg) => Failure::Usage(msg),
            other => Failure::Lib(other),
        }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn pick<T: Copy>(flag: Option<T>, pos: &[T], i: usize, name: &str) -> Result<T, Failure> {
    match flag.or_else(|| pos.get(i).copied()) {
        Some(v) => Ok(v),
        None => usage(format!("missing {name}")),
    }
}

fn nd_of(nd: &Nd, args: &[u32]) -> Result<(u32, u32), Failure> {
    Ok((
        pick(nd.n_flag, args, 0, "n")?,
        pick(nd.d_flag, args, 1, "d")?,
    ))
}

/// `a..b`, `a..=b`, `a-b` (all inclusive) or a single value.
fn parse_range(text: &str) -> Result<Vec<u32>, Failure> {
    let bad = || Failure::Usage(format!("bad range {text:?}"));
    let parts: Vec<&str> = if let Some((a, b)) = text.split_once("..=") {
        vec![a, b]
    } else if let Some((a, b)) = text.split_once("..") {
        vec![a, b]
    } else if let Some((a, b)) = text.split_once('-') {
        vec![a, b]
    } else {
        vec![text, text]
    };
    let lo: u32 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: u32 = parts[1].trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn resolve_seed(text: &str) -> Result<u64, Failure> {
    if text == "random" {
        Ok(rand::random())
    } else {
        text.parse().map_err(|_| {
            Failure::Usage(format!("seed must be an integer or `random`, got {text:?}"))
        })
    }
}

fn experiment_config(g: &GlobalOpts) -> Result<ExperimentConfig, Failure> {
    let p1 = match g.prime {
        Some(p) => PrimeField::new(p)?,
        None => PrimeField::p1(),
    };
    let p2 = match g.prime2 {
        Some(p) => PrimeField::new(p)?,
        None => PrimeField::p2(),
    };
    Ok(ExperimentConfig {
        primes: vec![p1, p2],
        allow_large: g.allow_large,
        ..ExperimentConfig::default()
    })
}

fn status_exit(statuses: impl IntoIterator<Item = Status>) -> u8 {
    let mut code = 0;
    for s in statuses {
        match s {
            Status::InternalError => return EXIT_INTERNAL,
            Status::InconclusiveHigh => code = EXIT_INCONCLUSIVE,
            Status::Verified | Status::NoExpectation => {}
        }
    }
    code
}

fn write_json(path: &Path, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("json values serialize") + "\n";
    fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{} is not JSON: {e}", path.display())))
}

enum Loaded {
    Certificate(Box<LengthCertificate>),
    Representation(SosRepresentation),
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let value = read_json(path)?;
    let malformed = |e: serde_json::Error| Failure::Usage(format!("{}: {e}", path.display()));
    if value.get("witness").is_some() {
        let cert: LengthCertificate = serde_json::from_value(value).map_err(malformed)?;
        Ok(Loaded::Certificate(Box::new(cert)))
    } else {
        let rec: RepresentationRecord = serde_json::from_value(value).map_err(malformed)?;
        Ok(Loaded::Representation(rec.to_representation()?))
    }
}

fn gramcheck(first: &Path, second: &Path) -> Result<bool, Failure> {
    Ok(match (load(first)?, load(second)?) {
        (Loaded::Certificate(c), Loaded::Representation(r))
        | (Loaded::Representation(r), Loaded::Certificate(c)) => {
            verify_certificate(&c)?;
            certify_unique_representation(&c, &r)?
        }
        (Loaded::Representation(a), Loaded::Representation(b)) => gram_equivalent(&a, &b)?,
        (Loaded::Certificate(a), Loaded::Certificate(b)) => {
            gram_equivalent(&a.basis_representation()?, &b.basis_representation()?)?
        }
    })
}

/// Deterministic commands: safe to cache.
fn compute(command: &Command, g: &GlobalOpts, seed: u64, cfg: &ExperimentConfig) -> Outcome {
    match command {
        Command::Bounds { args, nd } => {
            let (n, d) = nd_of(nd, args)?;
            let row = bounds_row(DegreeParams::new(n, d)?)?;
            Ok((render::bounds(&[row], g.format, false), 0))
        }
        Command::Table {
            n_range,
            d_range,
            paper_table,
        } => {
            let (ns, ds) = if *paper_table {
                ((4..=6).collect(), (2..=8).collect())
            } else {
                (parse_range(n_range)?, parse_range(d_range)?)
            };
            let rows = bounds_table(ns, ds)?;
            Ok((render::bounds(&rows, g.format, true), 0))
        }
        Command::Ik {
            args,
            nd,
            s_flag,
            sweep,
        } => {
            let (n, d) = nd_of(nd, args)?;
            let reports = if *sweep {
                ik_sweep(n, d, g.trials, seed, cfg)?
            } else {
                let s = pick(
                    *s_flag,
                    &args.iter().map(|&x| x as u128).collect::<Vec<_>>(),
                    2,
                    "s",
                )?;
                vec![ik_verify(n, d, s, g.trials, seed, cfg)?]
            };
            let code = status_exit(reports.iter().map(|r| r.status));
            Ok((render::reports(&reports, g.format), code))
        }
        Command::Typical { args, nd, r_max } => {
            let (n, d) = nd_of(nd, args)?;
            let t = typical_length(n, d, *r_max, seed, cfg)?;
            let code = status_exit(t.reports.iter().map(|r| r.status));
            Ok((render::typical(&t, g.format), code))
        }
        Command::Witness { .. } | Command::Gramcheck { .. } => unreachable!("not cacheable"),
    }
}

fn request(command: &Command, g: &GlobalOpts, seed: u64, cfg: &ExperimentConfig) -> Value {
    let params = match command {
        Command::Bounds { args, nd } => {
            json!({"cmd": "bounds", "args": args, "n": nd.n_flag, "d": nd.d_flag})
        }
        Command::Table {
            n_range,
            d_range,
            paper_table,
        } => json!({"cmd": "table", "n": n_range, "d": d_range, "paper_table": paper_table}),
        Command::Ik {
            args,
            nd,
            s_flag,
            sweep,
        } => json!({
            "cmd": "ik", "args": args, "n": nd.n_flag, "d": nd.d_flag,
            "s": s_flag.map(|s| s.to_string()), "sweep": sweep,
        }),
        Command::Typical { args, nd, r_max } => {
            json!({"cmd": "typical", "args": args, "n": nd.n_flag, "d": nd.d_flag, "r_max": r_max})
        }
        Command::Witness { .. } | Command::Gramcheck { .. } => Value::Null,
    };
    json!({
        "params": params,
        "seed": seed,
        "primes": cfg.primes.iter().map(|f| f.modulus()).collect::<Vec<_>>(),
        "trials": g.trials,
        "format": format!("{:?}", g.format),
        "allow_large": g.allow_large,
    })
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    if let Some(threads) = g.parallelism {
        if threads == 0 {
            return usage("--parallelism must be positive");
        }
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let seed = resolve_seed(&g.seed)?;
    let cfg = experiment_config(g)?;
    if g.trials == 0 {
        return usage("--trials must be positive");
    }

    match &cli.command {
        Command::Witness {
            args,
            nd,
            s_flag,
            out,
            mix_out,
            rotations,
        } => {
            let (n, d) = nd_of(nd, args)?;
            let s = match s_flag.or_else(|| args.get(2).map(|&x| x as usize)) {
                Some(s) => s,
                None => default_point_count(n, d)? as usize,
            };
            let cert = build_witness(n, d, s, seed, &cfg)?;
            verify_certificate(&cert)?;
            let path = out
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("witness-n{n}-d{d}-s{s}.json")));
            write_json(
                &path,
                &serde_json::to_value(&cert).expect("certificate serializes"),
            )?;
            if let Some(mix_path) = mix_out {
                let mixed = orthogonal_mix(
                    &cert.basis_representation()?,
                    *rotations,
                    mix_seed(seed, 0x6d6978),
                );
                let record = RepresentationRecord::from_representation(&mixed);
                write_json(
                    mix_path,
                    &serde_json::to_value(&record).expect("record serializes"),
                )?;
            }
            Ok((
                render::certificate_summary(&cert, &path.display().to_string(), g.format),
                0,
            ))
        }
        Command::Gramcheck { first, second } => {
            let equivalent = gramcheck(first, second)?;
            let text = match g.format {
                Format::Json => json!({"equivalent": equivalent}).to_string() + "\n",
                Format::Csv => format!("equivalent\n{equivalent}\n"),
                Format::Table => format!("{equivalent}\n"),
            };
            Ok((text, if equivalent { 0 } else { EXIT_NOT_EQUIVALENT }))
        }
        command => {
            let Some(path) = &g.cache else {
                return compute(command, g, seed, &cfg);
            };
            let cache = Cache::new(path);
            let key = cache_key(&request(command, g, seed, &cfg));
            let io = |e: std::io::Error| Failure::Usage(format!("cache {}: {e}", path.display()));
            if let Some((text, code)) = cache.lookup(&key).map_err(io)? {
                return Ok((text, code as u8));
            }
            let (text, code) = compute(command, g, seed, &cfg)?;
            cache.store(&key, &text, code as i32).map_err(io)?;
            Ok((text, code))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::GenericityFailure { .. } => EXIT_INCONCLUSIVE,
                Error::CertificationFailure(_) => EXIT_CERTIFICATION,
                Error::InvalidArgument(_) => EXIT_USAGE,
                Error::Internal(_) => EXIT_INTERNAL,
            })
        }
    }
}
