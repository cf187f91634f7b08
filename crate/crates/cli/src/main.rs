use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dmr_core::dist::{dmrd_residuals, DistCorrection};
use dmr_core::dshuffle::{dmr_check, dmr_graded_basis, galois_descent, DmrOptions, DmrVariant, FieldTag, Form, StarNormalization};
use dmr_core::fault::{with_fault, Fault};
use dmr_core::maps::MapDescriptor;
use dmr_core::numeric::{check_bridge, check_distribution, check_stuffle_numeric, CmzvIndex};
use dmr_core::series::{deserialize, to_json_value};
use dmr_core::suites::{self, Suite, SuiteParams};
use dmr_core::{CycContext, Error, Series};

/// Exit status for a failed mathematical check.
const FAIL: u8 = 1;
/// Exit status for invalid input or an exceeded resource cap.
const INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "dmr", version, about = "Exact checks for the classical and congruent double shuffle Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StarArg {
    Consistent,
    Printed,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorrectionArg {
    ClassZero,
    Tilde,
    Transported,
    Kernel,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    Qtilde,
    TProjector,
    Star,
}

#[derive(clap::Args, Clone)]
struct Conventions {
    /// Normalization of the congruent psi_* correction.
    #[arg(long, value_enum, default_value = "consistent")]
    star: StarArg,
    /// Correction term of the distribution conditions.
    #[arg(long, value_enum, default_value = "class-zero")]
    dist_correction: CorrectionArg,
}

impl Conventions {
    fn options(&self) -> DmrOptions {
        DmrOptions {
            star: match self.star {
                StarArg::Consistent => StarNormalization::Consistent,
                StarArg::Printed => StarNormalization::Printed,
            },
            correction: match self.dist_correction {
                CorrectionArg::ClassZero => DistCorrection::ClassZeroLetter,
                CorrectionArg::Tilde => DistCorrection::TildeLetter,
                CorrectionArg::Transported => DistCorrection::Transported,
                CorrectionArg::Kernel => DistCorrection::Kernel,
            },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Bridge,
    Distribution,
    Stuffle,
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Congruent,
    Classical,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Levels, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "3")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// List the suites and exit.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        conventions: Conventions,
        #[arg(long, value_enum, hide = true)]
        fault: Option<FaultArg>,
    },
    /// Dimension of a graded piece.
    Dim {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Print the basis as JSON.
        #[arg(long)]
        basis: bool,
        #[command(flatten)]
        conventions: Conventions,
    },
    /// Membership report for a serialized series.
    Check {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        conventions: Conventions,
    },
    /// Galois invariants of the scalar extension of a graded piece.
    Invariants {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: usize,
        /// Form whose graded piece is extended.
        #[arg(long, value_enum, default_value = "congruent")]
        source: SourceArg,
        #[command(flatten)]
        conventions: Conventions,
    },
    /// Floating-point checks; prints a JSON result.
    Numeric {
        #[arg(long, value_enum)]
        check: CheckKind,
        #[arg(long)]
        n: u32,
        /// Exponents k_1..k_r, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "2")]
        k: Vec<u32>,
        /// Residues alpha_1..alpha_r, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
        alpha: Vec<i64>,
        /// Divisor for the distribution check.
        #[arg(long, default_value_t = 1)]
        d: u32,
        /// Root exponents for the stuffle check.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,1")]
        roots: Vec<i64>,
        #[arg(long, default_value_t = 100_000)]
        terms: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Apply a structure map to a serialized series and print the result.
    Eval {
        /// Map name, with a parameter as `name:param` where needed.
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// List the map names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Per-divisor residuals of the distribution conditions.
    DistCheck {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        conventions: Conventions,
    },
}

enum Failure {
    Math(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_series(path: &PathBuf) -> Result<Series, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {}", path.display(), e)))?;
    Ok(deserialize(&text)?)
}

fn parse_variant(s: &str) -> Result<DmrVariant, Failure> {
    DmrVariant::from_tag(s).ok_or_else(|| Failure::Invalid(format!("unknown algebra {:?}; expected dmr0-muN, dmr0-N, dmrd0-muN or dmrd0-N", s)))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn verify(suite: &str, params: SuiteParams, json_out: bool, fault: Option<FaultArg>) -> Outcome {
    let suites = Suite::parse(suite).ok_or_else(|| Failure::Invalid(format!("unknown suite {:?}; see --list", suite)))?;
    let fault = match fault {
        None => Fault::None,
        Some(FaultArg::Qtilde) => Fault::QtildeSign,
        Some(FaultArg::TProjector) => Fault::TProjectorSign,
        Some(FaultArg::Star) => Fault::StarCorrectionSign,
    };
    let reports = with_fault(fault, || suites.iter().map(|&s| suites::run(s, &params)).collect::<Result<Vec<_>, _>>())?;
    if json_out {
        print_json(&json!({ "schema": 1, "suites": reports }));
    } else {
        for r in &reports {
            print!("{}", r);
        }
    }
    match reports.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => Err(Failure::Math(format!("suite {} failed", r.suite))),
    }
}

fn dim(algebra: &str, n: u32, degree: usize, field: &str, basis: bool, opts: DmrOptions) -> Outcome {
    let variant = parse_variant(algebra)?;
    let field = FieldTag::from_tag(field).ok_or_else(|| Failure::Invalid(format!("unknown field {:?}; expected Q or QmuN", field)))?;
    let ctx = CycContext::new(n)?;
    let b = dmr_graded_basis(&ctx, degree, variant, field, &opts)?;
    if basis {
        print_json(&json!({
            "algebra": variant.tag(),
            "N": n,
            "degree": degree,
            "field": field.tag(),
            "dim": b.dim(),
            "basis": b.vectors.iter().map(to_json_value).collect::<Vec<_>>(),
        }));
    } else {
        println!("{}", b.dim());
    }
    Ok(())
}

fn check(algebra: &str, input: &PathBuf, json_out: bool, opts: DmrOptions) -> Outcome {
    let variant = parse_variant(algebra)?;
    let psi = read_series(input)?;
    let report = dmr_check(&psi, variant, &opts)?;
    if json_out {
        print_json(&report.to_json());
    } else {
        print!("{}", report);
    }
    if report.is_member() {
        Ok(())
    } else {
        Err(Failure::Math("not a member".into()))
    }
}

fn invariants(n: u32, degree: usize, source: SourceArg, opts: DmrOptions) -> Outcome {
    let ctx = CycContext::new(n)?;
    let source = match source {
        SourceArg::Congruent => Form::Congruent,
        SourceArg::Classical => Form::Classical,
    };
    let r = galois_descent(&ctx, degree, source, &opts)?;
    print_json(&json!({
        "N": n,
        "degree": degree,
        "source": format!("{:?}", source).to_lowercase(),
        "source_dim": r.source_dim,
        "invariant_dim": r.invariant_dim,
        "target_dim": r.target_dim,
        "images_rational": r.images_rational,
        "images_members": r.images_members,
        "basis": r.images.iter().map(to_json_value).collect::<Vec<_>>(),
    }));
    if r.holds() {
        Ok(())
    } else {
        Err(Failure::Math("invariants do not match the other form".into()))
    }
}

#[allow(clippy::too_many_arguments)]
fn numeric(check: CheckKind, n: u32, k: Vec<u32>, alpha: Vec<i64>, d: u32, roots: Vec<i64>, terms: u64, tol: f64) -> Outcome {
    if terms == 0 || terms > 100_000_000 {
        return Err(Failure::Invalid(format!("--terms must be in 1..=100000000, got {}", terms)));
    }
    let result = match check {
        CheckKind::Bridge => check_bridge(&CmzvIndex::new(n, k, alpha)?, terms, tol)?,
        CheckKind::Distribution => check_distribution(&CmzvIndex::new(n, k, alpha)?, d, terms, tol)?,
        CheckKind::Stuffle => {
            let [a, b] = roots[..] else {
                return Err(Failure::Invalid("--roots takes exactly two exponents".into()));
            };
            check_stuffle_numeric(n, a, b, terms, tol)?
        }
    };
    print_json(&result.to_json());
    if result.pass {
        Ok(())
    } else {
        Err(Failure::Math(format!("residual {:e} exceeds {:e}", result.residual, result.tol + result.bound)))
    }
}

fn eval(map: Option<String>, input: Option<PathBuf>, list: bool) -> Outcome {
    if list {
        for name in MapDescriptor::NAMES {
            let suffix = if MapDescriptor::needs_param(name) { ":<param>" } else { "" };
            println!("{}{}", name, suffix);
        }
        return Ok(());
    }
    let (Some(map), Some(input)) = (map, input) else {
        return Err(Failure::Invalid("eval needs --map and --input".into()));
    };
    let m: MapDescriptor = map.parse()?;
    let f = read_series(&input)?;
    print_json(&to_json_value(&m.apply(&f)?));
    Ok(())
}

fn dist_check(n: u32, input: &PathBuf, opts: DmrOptions) -> Outcome {
    let psi = read_series(input)?;
    if psi.n() != n {
        return Err(Failure::Invalid(format!("series is at level {}, not {}", psi.n(), n)));
    }
    let res = dmrd_residuals(&psi, opts.correction)?;
    let rows: Vec<_> = res
        .iter()
        .map(|(d, r)| json!({ "d": d, "nonzero_terms": r.len(), "residual": to_json_value(r) }))
        .collect();
    print_json(&json!({ "N": n, "correction": opts.correction.tag(), "divisors": rows }));
    if res.iter().all(|(_, r)| r.is_zero()) {
        Ok(())
    } else {
        Err(Failure::Math("distribution residual is nonzero".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { suite, n, degree, trials, seed, json, list, conventions, fault } => {
            if list {
                print!("{}", suites::list());
                Ok(())
            } else {
                let params = SuiteParams { ns: n, degree, trials, seed, opts: conventions.options() };
                verify(&suite, params, json, fault)
            }
        }
        Command::Dim { algebra, n, degree, field, basis, conventions } => dim(&algebra, n, degree, &field, basis, conventions.options()),
        Command::Check { algebra, input, json, conventions } => check(&algebra, &input, json, conventions.options()),
        Command::Invariants { n, degree, source, conventions } => invariants(n, degree, source, conventions.options()),
        Command::Numeric { check, n, k, alpha, d, roots, terms, tol } => numeric(check, n, k, alpha, d, roots, terms, tol),
        Command::Eval { map, input, list } => eval(map, input, list),
        Command::DistCheck { n, input, conventions } => dist_check(n, &input, conventions.options()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("dmr: {}", msg);
            ExitCode::from(FAIL)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("dmr: {}", msg);
            ExitCode::from(INVALID)
        }
    }
}
