//! JSON documents and the `stokes-gauss` command line.

pub mod json;

use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::circle_sheaf::{disc_cohomology_fleq0, good_interval_splitting, sheaf_leq, sheaf_lt};
use crate::error::{Error, Result};
use crate::exact_math::{Field, GaussRational, Rational};
use crate::laplace::{inverse_laplace_transform, laplace_transform};
use crate::laplace_oracle::{default_samples, verify_theorem, VerifyReport};
use crate::stokes_core::{random_aligned_layout, random_data, random_layout, random_ranks, rigidity_index, to_filtrations, to_matrices, StokesFiltrations, StokesMatrices};

pub use json::{parse, serialize, Document, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const SEED_ENV: &str = "STOKES_GAUSS_SEED";

#[derive(Parser, Debug)]
#[command(name = "stokes-gauss", version, about = "Exact Stokes data of pure Gaussian type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every invariant of a matrices or filtrations document
    Validate { file: String },
    /// Rewrite Stokes matrices in variant form
    Normalize { file: String },
    ToFiltrations { file: String },
    ToMatrices { file: String },
    /// Laplace transformation rule on aligned pure data
    Laplace {
        file: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Cohomology of L_{≤c0} (or L_{<c0} with --strict) on the circle
    Cohomology {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        c0: String,
        #[arg(long)]
        strict: bool,
    },
    /// Cohomology of F_{≤0} on the disc
    DiscCohomology { file: String },
    Rigidity { file: String },
    /// Good-interval splitting for every ν
    Splitting { file: String },
    /// Seeded random pure data in variant form
    GenRandom {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        ranks: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// exponents on one ray through 3+4i, with the canonical base direction
        #[arg(long)]
        aligned: bool,
    },
    /// Compare the disc-model oracle with the transformation rule
    VerifyLaplace {
        file: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Outcome {
    Doc(Document),
    Ok(Value),
    /// exit 1: validation failure or a failing verification
    Invalid(Value),
}

enum Failure {
    Invalid(Value),
    Precondition(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Precondition(e)
    }
}

type Step<T> = std::result::Result<T, Failure>;

fn error_json(e: &Error) -> Value {
    let (message, path) = match e {
        Error::Parse { message, path } => (message.clone(), Value::String(path.clone())),
        other => (other.to_string(), Value::Null),
    };
    json!({"error": {"kind": e.kind(), "message": message, "path": path}})
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn effective_seed(seed: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Error::parse("/", format!("{} must be an unsigned integer", SEED_ENV))),
        Err(_) => Ok(seed),
    }
}

fn validation_report(violations: Vec<String>) -> Value {
    json!({"valid": violations.is_empty(), "violations": violations})
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    /// field of the last document read, recorded in reports
    field: Option<Field>,
}

impl Ctx<'_> {
    fn load(&mut self, file: &str) -> Step<Document> {
        let mut text = String::new();
        if file == "-" {
            self.stdin.read_to_string(&mut text).map_err(|e| Error::parse("/", format!("cannot read stdin: {}", e)))?;
        } else {
            text = std::fs::read_to_string(file).map_err(|e| Error::parse("/", format!("cannot read {}: {}", file, e)))?;
        }
        let doc = parse(&text)?;
        self.field = match &doc {
            Document::Matrices(m) => Some(m.field),
            Document::Filtrations(f) => Some(f.field),
            Document::Report(r) => r.field,
        };
        Ok(doc)
    }

    /// Matrices from either encoding; invalid data stops with its violations.
    fn matrices(&mut self, file: &str) -> Step<StokesMatrices> {
        matrices_of(self.load(file)?)
    }
}

fn matrices_of(doc: Document) -> Step<StokesMatrices> {
    let m = match doc {
        Document::Matrices(m) => m,
        Document::Filtrations(f) => to_matrices(&valid_filtrations(f)?)?,
        Document::Report(_) => return Err(Error::parse("/kind", "expected stokes-matrices or stokes-filtrations").into()),
    };
    let v = m.validate();
    if !v.is_empty() {
        return Err(Failure::Invalid(validation_report(v)));
    }
    Ok(m)
}

fn valid_filtrations(f: StokesFiltrations) -> Step<StokesFiltrations> {
    let v = f.validate();
    if v.is_empty() {
        Ok(f)
    } else {
        Err(Failure::Invalid(validation_report(v)))
    }
}

fn parse_c0(s: &str) -> Result<GaussRational> {
    let t = s.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::parse("/c0", e.to_string()))?;
        return json::parse_gauss_value(&v, "/c0");
    }
    json::parse_gauss_str(t).ok_or_else(|| Error::parse("/c0", format!("invalid Gaussian rational {:?}", s)))
}

/// Extra γ moduli beyond the defaults: seeded rationals in (0, 2·max|ĉ|) avoiding the moduli themselves.
fn sample_moduli(data: &StokesMatrices, k: usize, seed: u64) -> Result<Vec<Rational>> {
    let mut out = default_samples(data)?;
    if k <= out.len() {
        out.truncate(k);
        return Ok(out);
    }
    let hat = crate::laplace::laplace_exponents(&data.layout.exponents)?;
    let moduli: Vec<Rational> = hat.iter().map(crate::laplace_oracle::halfline::modulus).collect::<Result<_>>()?;
    let top = moduli.iter().max().cloned().unwrap_or_else(Rational::one) * Rational::from_integer(2.into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6a3a);
    while out.len() < k {
        let p: i64 = rng.gen_range(1..=96);
        let rho = &top * Rational::new(p.into(), 97.into());
        if !rho.is_zero() && !moduli.contains(&rho) && !out.contains(&rho) {
            out.push(rho);
        }
    }
    Ok(out)
}

pub fn verify_report_json(rep: &VerifyReport) -> Value {
    let cases: Vec<Value> = rep
        .cases
        .iter()
        .map(|c| {
            json!({
                "nu": c.nu,
                "gamma": json::gauss_to_json(&c.gamma),
                "oracle_dim": c.oracle_dim,
                "predicted_dim": c.predicted_dim,
                "equal": c.equal,
                "h": c.h,
                "fast_path_agrees": c.fast_path,
                "full_sheaf_ok": c.full_sheaf,
                "passed": c.passed(),
            })
        })
        .collect();
    json!({"cases": cases, "pass": rep.pass, "mode": rep.mode})
}

fn generate(n: Option<usize>, ranks: Option<Vec<usize>>, seed: u64, aligned: bool) -> Step<StokesMatrices> {
    let ranks = match (n, ranks) {
        (Some(n), Some(r)) if r.len() != n => return Err(Failure::Usage(format!("--n {} disagrees with {} ranks", n, r.len()))),
        (_, Some(r)) => r,
        (Some(n), None) => random_ranks(n, 2, seed),
        (None, None) => return Err(Failure::Usage("gen-random needs --n or --ranks".into())),
    };
    if ranks.is_empty() || ranks.contains(&0) {
        return Err(Failure::Usage("ranks must be positive and at least one exponent is needed".into()));
    }
    let layout = if aligned { random_aligned_layout(&ranks, seed)? } else { random_layout(&ranks, seed)? };
    Ok(random_data(&layout, seed)?)
}

fn execute(cmd: Command, ctx: &mut Ctx) -> Step<Outcome> {
    Ok(match cmd {
        Command::Validate { file } => {
            let violations = match ctx.load(&file)? {
                Document::Matrices(m) => m.validate(),
                Document::Filtrations(f) => f.validate(),
                Document::Report(_) => return Err(Error::parse("/kind", "reports carry no Stokes data").into()),
            };
            let valid = violations.is_empty();
            let v = validation_report(violations);
            if valid {
                Outcome::Ok(v)
            } else {
                Outcome::Invalid(v)
            }
        }
        Command::Normalize { file } => Outcome::Doc(Document::Matrices(ctx.matrices(&file)?.normalize()?)),
        Command::ToFiltrations { file } => match ctx.load(&file)? {
            Document::Matrices(m) => Outcome::Doc(Document::Filtrations(to_filtrations(&matrices_of(Document::Matrices(m))?)?)),
            _ => return Err(Error::parse("/kind", "expected stokes-matrices").into()),
        },
        Command::ToMatrices { file } => match ctx.load(&file)? {
            Document::Filtrations(f) => Outcome::Doc(Document::Matrices(to_matrices(&valid_filtrations(f)?)?)),
            _ => return Err(Error::parse("/kind", "expected stokes-filtrations").into()),
        },
        Command::Laplace { file, inverse } => {
            // output has the input's kind
            let (f, as_matrices) = match ctx.load(&file)? {
                Document::Filtrations(f) => (valid_filtrations(f)?, false),
                other => (to_filtrations(&matrices_of(other)?)?, true),
            };
            let out = if inverse { inverse_laplace_transform(&f)? } else { laplace_transform(&f)? };
            if as_matrices {
                Outcome::Doc(Document::Matrices(to_matrices(&out)?))
            } else {
                Outcome::Doc(Document::Filtrations(out))
            }
        }
        Command::Cohomology { file, c0, strict } => {
            let c0 = parse_c0(&c0)?;
            let m = ctx.matrices(&file)?;
            let sheaf = if strict { sheaf_lt(&m, &c0)? } else { sheaf_leq(&m, &c0)? };
            let h = sheaf.cohomology();
            Outcome::Ok(json!({"h0": h.get(0), "h1": h.get(1), "chi": h.chi()}))
        }
        Command::DiscCohomology { file } => {
            let (h0, h1, h2) = disc_cohomology_fleq0(&ctx.matrices(&file)?)?;
            Outcome::Ok(json!({"h0": h0, "h1": h1, "h2": h2}))
        }
        Command::Rigidity { file } => {
            let r = rigidity_index(&ctx.matrices(&file)?)?;
            Outcome::Ok(json!({"rig": r.index, "rigid": r.rigid}))
        }
        Command::Splitting { file } => {
            let m = ctx.matrices(&file)?;
            let mut levels = Vec::new();
            for nu in 0..4 {
                let pieces: Vec<Value> = good_interval_splitting(&m, nu)?
                    .iter()
                    .zip(&m.layout.exponents)
                    .map(|(p, c)| json!({"exponent": json::gauss_to_json(c), "basis": json::subspace_to_json(p, m.field)}))
                    .collect();
                levels.push(json!({"nu": nu, "pieces": pieces}));
            }
            Outcome::Ok(json!({"splitting": levels}))
        }
        Command::GenRandom { n, ranks, seed, aligned } => Outcome::Doc(Document::Matrices(generate(n, ranks, effective_seed(seed)?, aligned)?)),
        Command::VerifyLaplace { file, samples, seed } => {
            let seed = effective_seed(seed)?;
            let data = match file {
                Some(f) => ctx.matrices(&f)?,
                None => {
                    let m = random_data(&random_aligned_layout(&random_ranks(3, 2, seed), seed)?, seed)?;
                    ctx.field = Some(m.field);
                    m
                }
            };
            let samples = match samples {
                Some(k) if k == 0 || k > MAX_SAMPLES => return Err(Failure::Usage(format!("--samples must be in 1..={}", MAX_SAMPLES))),
                Some(k) => Some(sample_moduli(&data, k, seed)?),
                None => None,
            };
            let rep = verify_theorem(&data, samples.as_deref())?;
            let v = verify_report_json(&rep);
            if rep.pass {
                Outcome::Ok(v)
            } else {
                Outcome::Invalid(v)
            }
        }
    })
}

const MAX_SAMPLES: usize = 32;

/// Runs one command line (program name first); returns the exit code and the text for stdout.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return (code, e.to_string());
        }
    };
    let mut ctx = Ctx { stdin, field: None };
    let report = |payload: Value, field: Option<Field>| serialize(&Document::Report(Report { field, payload }));
    match execute(cli.command, &mut ctx) {
        Ok(Outcome::Doc(d)) => (EXIT_OK, serialize(&d)),
        Ok(Outcome::Ok(v)) => (EXIT_OK, report(v, ctx.field)),
        Ok(Outcome::Invalid(v)) | Err(Failure::Invalid(v)) => (EXIT_INVALID, report(v, ctx.field)),
        Err(Failure::Precondition(e)) => (EXIT_PRECONDITION, pretty(&error_json(&e))),
        Err(Failure::Usage(msg)) => (EXIT_USAGE, pretty(&json!({"error": {"kind": "UsageError", "message": msg, "path": null}}))),
    }
}
