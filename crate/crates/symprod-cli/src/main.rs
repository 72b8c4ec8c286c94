//! Command-line front end for the symmetric-product library: Poincare
//! series, SP^n basis listings, cohomology and homotopy tables, reduced
//! models, and the built-in verification suites.
//!
//! Structured results go to stdout as JSON with sorted keys; a short
//! human summary goes to stderr. Exit codes: 0 success, 1 failed check
//! or unrecognized input shape, 2 parse error, 3 non-connected input,
//! 4 guardrail exceeded, 5 non-free input where freeness is required.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use symprod::cdga::{
    self, algebra_cohomology, build_lambda_model, CdgaModel, EliminatedPair,
};
use symprod::presentation::parse_presentation;
use symprod::realize::realize;
use symprod::series::sp_series;
use symprod::sp::SpContext;
use symprod::verify;
use symprod::{Error, Limits, Presentation};

#[derive(Parser)]
#[command(
    name = "symprod",
    version,
    about = "Exact symmetric products of graded-commutative algebras over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Poincare series of SP^n of a presented algebra
    Poincare(PoincareArgs),
    /// Basis classes of SP^n of a presented algebra, degree by degree
    SpBasis(SpBasisArgs),
    /// Cohomology dimensions of an input, or of its n-th symmetric product
    Cohomology(CohomologyArgs),
    /// Rational homotopy from the linearized differential
    Homotopy(HomotopyArgs),
    /// Reduced model after contractible-pair elimination
    MinimalModel(MinimalModelArgs),
    /// Run a built-in verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Presentation file in the generator/relation/differential DSL
    #[arg(long)]
    input: Option<PathBuf>,
    /// Largest degree reported
    #[arg(long, default_value_t = 10)]
    max_degree: usize,
    /// Emit JSON on stdout (always on; accepted for interface stability)
    #[arg(long, default_value_t = true)]
    json: bool,
    /// Lift the n/cutoff guardrails; the cell budget stays in force
    #[arg(long)]
    force: bool,
}

impl CommonArgs {
    fn limits(&self) -> Limits {
        if self.force {
            Limits::forced()
        } else {
            Limits::default()
        }
    }

    fn presentation(&self) -> Result<Presentation, Error> {
        let path = self.input.as_ref().ok_or_else(|| {
            Error::Invalid("this command needs --input FILE".to_string())
        })?;
        read_presentation(path)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Macdonald,
    Brute,
    Both,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Macdonald => "macdonald",
            Method::Brute => "brute",
            Method::Both => "both",
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum Family {
    Cpm,
    EvenSphere,
    OddSphere,
}

#[derive(Args)]
struct PoincareArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Symmetric power exponent
    #[arg(long)]
    n: usize,
    /// Series source; `both` cross-checks the formula against enumeration
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
}

#[derive(Args)]
struct SpBasisArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Symmetric power exponent
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct CohomologyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Take the n-th symmetric product first
    #[arg(long)]
    sp: Option<usize>,
}

#[derive(Args)]
struct HomotopyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Take the n-th symmetric product first (input must be a recognized
    /// one- or two-generator model); without it, the infinite symmetric
    /// product of a free model is used
    #[arg(long)]
    sp: Option<usize>,
    /// Built-in model family instead of --input
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Family parameter: CP^m, S^2m, or S^(2m-1)
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct MinimalModelArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Take the n-th symmetric product first (recognized families only)
    #[arg(long)]
    sp: Option<usize>,
    /// Built-in model family instead of --input
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Family parameter: CP^m, S^2m, or S^(2m-1)
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// One of: lemma-iso, dold-thom, prop-free, series-stability,
    /// cpm-cohomology
    #[arg(long)]
    suite: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Poincare(a) => cmd_poincare(a),
        Command::SpBasis(a) => cmd_sp_basis(a),
        Command::Cohomology(a) => cmd_cohomology(a),
        Command::Homotopy(a) => cmd_homotopy(a),
        Command::MinimalModel(a) => cmd_minimal_model(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::NotConnected { .. } => 3,
        Error::Guardrail { .. } | Error::CutoffExceeded { .. } => 4,
        Error::NonFree(_) => 5,
        _ => 1,
    }
}

fn read_presentation(path: &Path) -> Result<Presentation, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {}", path.display(), e)))?;
    parse_presentation(&text)
}

/// Serialize through `serde_json::Value` so object keys come out sorted.
fn emit(value: &impl Serialize) {
    let v = serde_json::to_value(value).expect("output serializes");
    println!("{}", serde_json::to_string_pretty(&v).expect("output serializes"));
}

fn dims_line(dims: &[usize]) -> String {
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
}

fn cmd_poincare(args: PoincareArgs) -> Result<ExitCode, Error> {
    let limits = args.common.limits();
    limits.check_n(args.n)?;
    limits.check_cutoff(args.common.max_degree)?;
    let pres = args.common.presentation()?;
    let max_degree = args.common.max_degree;
    let a = realize(&pres, max_degree)?;

    let macdonald = || -> Result<Vec<usize>, Error> {
        sp_series(&a.betti(), args.n, max_degree)?.to_dims()
    };
    let brute = || -> Result<Vec<usize>, Error> {
        let ctx = SpContext::new(&a, args.n, limits.clone())?;
        ctx.dims(max_degree)
    };

    let coefficients = match args.method {
        Method::Macdonald => macdonald()?,
        Method::Brute => brute()?,
        Method::Both => {
            let m = macdonald()?;
            let b = brute()?;
            if let Some(d) = (0..=max_degree).find(|&d| m[d] != b[d]) {
                #[derive(Serialize)]
                struct Mismatch {
                    brute: Vec<usize>,
                    macdonald: Vec<usize>,
                    max_degree: usize,
                    method: &'static str,
                    mismatch_degree: usize,
                    n: usize,
                }
                emit(&Mismatch {
                    brute: b.clone(),
                    macdonald: m.clone(),
                    max_degree,
                    method: "both",
                    mismatch_degree: d,
                    n: args.n,
                });
                eprintln!(
                    "poincare: METHOD MISMATCH at degree {}: macdonald {} vs brute {}",
                    d, m[d], b[d]
                );
                return Ok(ExitCode::from(1));
            }
            m
        }
    };

    #[derive(Serialize)]
    struct Out {
        coefficients: Vec<usize>,
        max_degree: usize,
        method: &'static str,
        n: usize,
    }
    emit(&Out {
        coefficients: coefficients.clone(),
        max_degree,
        method: args.method.name(),
        n: args.n,
    });
    eprintln!(
        "poincare: SP^{} series through degree {}: {}",
        args.n,
        max_degree,
        dims_line(&coefficients)
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_sp_basis(args: SpBasisArgs) -> Result<ExitCode, Error> {
    let limits = args.common.limits();
    limits.check_n(args.n)?;
    limits.check_cutoff(args.common.max_degree)?;
    let pres = args.common.presentation()?;
    let max_degree = args.common.max_degree;
    let a = realize(&pres, max_degree)?;
    let ctx = SpContext::new(&a, args.n, limits)?;

    #[derive(Serialize)]
    struct DegreeRow {
        classes: Vec<String>,
        degree: usize,
        dim: usize,
    }
    #[derive(Serialize)]
    struct Out {
        degrees: Vec<DegreeRow>,
        max_degree: usize,
        n: usize,
    }
    let mut rows = Vec::new();
    let mut total = 0;
    for d in 0..=max_degree {
        let basis = ctx.basis(d)?;
        total += basis.len();
        rows.push(DegreeRow {
            classes: basis.iter().map(|c| c.display(&a)).collect(),
            degree: d,
            dim: basis.len(),
        });
    }
    emit(&Out { degrees: rows, max_degree, n: args.n });
    eprintln!(
        "sp-basis: {} classes of SP^{} through degree {}",
        total, args.n, max_degree
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TableOut {
    dims: Vec<usize>,
    max_degree: usize,
    sp: Option<usize>,
    valid_to: usize,
}

fn cmd_cohomology(args: CohomologyArgs) -> Result<ExitCode, Error> {
    let limits = args.common.limits();
    limits.check_cutoff(args.common.max_degree)?;
    let pres = args.common.presentation()?;
    let max_degree = args.common.max_degree;
    // one degree of headroom so a differential out of degree D is visible
    let cutoff = if pres.has_differential() { max_degree + 1 } else { max_degree };
    let a = realize(&pres, cutoff)?;

    let table = match args.sp {
        None => algebra_cohomology(&a),
        Some(n) => {
            limits.check_n(n)?;
            let ctx = SpContext::new(&a, n, limits.clone())?;
            ctx.cohomology(max_degree)?
        }
    };
    let valid_to = table.valid_to.min(max_degree);
    let dims: Vec<usize> = (0..=valid_to).map(|d| table.get(d).unwrap_or(0)).collect();
    emit(&TableOut { dims: dims.clone(), max_degree, sp: args.sp, valid_to });
    eprintln!(
        "cohomology: dims through degree {}: {}",
        valid_to,
        dims_line(&dims)
    );
    Ok(ExitCode::SUCCESS)
}

/// Match a free presentation against the model shapes with known SP^n
/// models: one odd generator with zero differential, or an even x with an
/// odd y and d(y) = x^q.
fn recognize_sp_model(pres: &Presentation, n: usize) -> Result<CdgaModel, Error> {
    if !pres.relations.is_empty() {
        return Err(Error::NonFree(
            "symmetric-product models need a free input model".to_string(),
        ));
    }
    let gens = &pres.gens;
    match gens.len() {
        1 => {
            let g = gens.get(0);
            if g.degree % 2 == 1 && pres.d_of(0).is_zero() {
                return Ok(cdga::odd_sphere_sp_model((g.degree + 1) / 2, n));
            }
            Err(Error::Invalid(format!(
                "no known symmetric-product model for a single generator of degree {}",
                g.degree
            )))
        }
        2 => {
            let (xi, yi) = if gens.is_odd(0) { (1, 0) } else { (0, 1) };
            let x = gens.get(xi);
            let y = gens.get(yi);
            if x.degree % 2 != 0 || y.degree % 2 != 1 || !pres.d_of(xi).is_zero() {
                return Err(Error::Invalid(
                    "expected one even and one odd generator with d(x) = 0".to_string(),
                ));
            }
            let dy = pres.d_of(yi);
            let r = x.degree / 2;
            if dy.is_zero() {
                return Err(Error::Invalid(
                    "two-generator models with zero differential are not a recognized family"
                        .to_string(),
                ));
            }
            if dy.num_terms() != 1 {
                return Err(Error::Invalid(
                    "expected d(y) to be a single power of x".to_string(),
                ));
            }
            let (mono, coeff) = dy.terms().next().expect("one term");
            let q = mono.exp(xi) as usize;
            if mono.exps().iter().map(|&e| e as usize).sum::<usize>() != q
                || coeff != &symprod::scalar::one()
                || q < 2
                || y.degree + 1 != q * x.degree
            {
                return Err(Error::Invalid(
                    "expected d(y) = x^q with q >= 2 and deg(y) = q deg(x) - 1".to_string(),
                ));
            }
            cdga::two_gen_sp_model(r, q, n)
        }
        _ => Err(Error::Invalid(format!(
            "no known symmetric-product model for {} generators",
            gens.len()
        ))),
    }
}

fn family_sp_model(family: Family, m: usize, n: usize) -> Result<CdgaModel, Error> {
    if m == 0 {
        return Err(Error::Invalid("--m must be at least 1".to_string()));
    }
    match family {
        Family::Cpm => cdga::two_gen_sp_model(1, m + 1, n),
        Family::EvenSphere => cdga::two_gen_sp_model(m, 2, n),
        Family::OddSphere => Ok(cdga::odd_sphere_sp_model(m, n)),
    }
}

fn family_model(family: Family, m: usize) -> Result<CdgaModel, Error> {
    if m == 0 {
        return Err(Error::Invalid("--m must be at least 1".to_string()));
    }
    Ok(match family {
        Family::Cpm => cdga::cpm_model(m),
        Family::EvenSphere => cdga::even_sphere_model(m),
        Family::OddSphere => cdga::odd_sphere_model(m),
    })
}

fn sp_source_model(
    common: &CommonArgs,
    family: Option<Family>,
    m: Option<usize>,
    sp: usize,
) -> Result<CdgaModel, Error> {
    match family {
        Some(f) => {
            let m = m.ok_or_else(|| Error::Invalid("--family needs --m".to_string()))?;
            family_sp_model(f, m, sp)
        }
        None => recognize_sp_model(&common.presentation()?, sp),
    }
}

#[derive(Serialize)]
struct HomotopyOut {
    max_degree: usize,
    sp: Option<usize>,
    table: BTreeMap<usize, usize>,
    valid_to: usize,
}

fn cmd_homotopy(args: HomotopyArgs) -> Result<ExitCode, Error> {
    let limits = args.common.limits();
    limits.check_cutoff(args.common.max_degree)?;
    let max_degree = args.common.max_degree;

    let table = match args.sp {
        None => {
            // infinite symmetric product of a free model: homotopy is the
            // linearized cohomology of Lambda(A_+)
            if args.family.is_some() {
                let m = args
                    .m
                    .ok_or_else(|| Error::Invalid("--family needs --m".to_string()))?;
                let model = family_model(args.family.unwrap(), m)?;
                let pres = parse_presentation(&model.to_dsl())?;
                let a = realize(&pres, max_degree + 1)?;
                build_lambda_model(&a)?.linearized_homotopy(max_degree)
            } else {
                let pres = args.common.presentation()?;
                if !pres.relations.is_empty() {
                    return Err(Error::NonFree(
                        "the infinite symmetric product model needs a free input".to_string(),
                    ));
                }
                let a = realize(&pres, max_degree + 1)?;
                build_lambda_model(&a)?.linearized_homotopy(max_degree)
            }
        }
        Some(n) => {
            limits.check_n(n)?;
            let model = sp_source_model(&args.common, args.family, args.m, n)?;
            let (reduced, _) = model.reduce()?;
            reduced.linearized_homotopy(max_degree)
        }
    };

    let valid_to = table.valid_to.min(max_degree);
    let mut nonzero = BTreeMap::new();
    for d in 0..=valid_to {
        let dim = table.get(d).unwrap_or(0);
        if dim > 0 {
            nonzero.insert(d, dim);
        }
    }
    emit(&HomotopyOut { max_degree, sp: args.sp, table: nonzero.clone(), valid_to });
    let summary = nonzero
        .iter()
        .map(|(d, k)| {
            if *k == 1 {
                format!("Q in degree {}", d)
            } else {
                format!("Q^{} in degree {}", k, d)
            }
        })
        .collect::<Vec<_>>()
        .join(", ");
    eprintln!(
        "homotopy: {} (valid through degree {})",
        if summary.is_empty() { "zero".to_string() } else { summary },
        valid_to
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_minimal_model(args: MinimalModelArgs) -> Result<ExitCode, Error> {
    let limits = args.common.limits();
    let model = match args.sp {
        Some(n) => {
            limits.check_n(n)?;
            sp_source_model(&args.common, args.family, args.m, n)?
        }
        None => match args.family {
            Some(f) => {
                let m = args
                    .m
                    .ok_or_else(|| Error::Invalid("--family needs --m".to_string()))?;
                family_model(f, m)?
            }
            None => CdgaModel::from_presentation(&args.common.presentation()?)?,
        },
    };
    let before = model.gens().len();
    let (reduced, eliminated) = model.reduce()?;

    #[derive(Serialize)]
    struct GenRow {
        degree: usize,
        name: String,
    }
    #[derive(Serialize)]
    struct Out {
        dsl: String,
        eliminated: Vec<EliminatedPair>,
        generators: Vec<GenRow>,
        minimal: bool,
    }
    let out = Out {
        dsl: reduced.to_dsl(),
        eliminated,
        generators: reduced
            .gens()
            .iter()
            .map(|g| GenRow { degree: g.degree, name: g.name.clone() })
            .collect(),
        minimal: reduced.is_minimal(),
    };
    emit(&out);
    eprintln!(
        "minimal-model: {} generators reduced to {} ({} pairs eliminated)",
        before,
        out.generators.len(),
        out.eliminated.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let limits = args.common.limits();
    let report = verify::run_suite(&args.suite, &limits)?;
    emit(&report);
    eprintln!(
        "verify: suite {}: {} passed, {} failed",
        report.suite, report.passed, report.failed
    );
    if report.pass {
        Ok(ExitCode::SUCCESS)
    } else {
        if let Some(first) = report.first_failure() {
            eprintln!(
                "verify: first failure: {} {:?}: expected {}, got {}",
                first.name, first.params, first.expected, first.actual
            );
        }
        Ok(ExitCode::from(1))
    }
}
