use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use likelihood::arrangement::{synthesize, Arrangement};
use likelihood::detgen::{
    derivation_generators, generator_census, likelihood_generators, DetgenError, GeneratorOptions,
    IdealGenerators, SncKnowledge,
};
use likelihood::expr::{parse_arrangement, render_report};
use likelihood::groebner::{Budget, Field, OracleError, OracleOptions};
use likelihood::invariants::{
    euler_disc_ledger, hyperplane_ea, multidegree_coeffs, snc_check, InvariantError, SncVerdict,
};
use likelihood::poly::PrimeField;
use likelihood::verify::{verify, VerifyError};
use serde_json::{json, Value};

/// Likelihood ideals of hypersurface arrangements. Every command prints one
/// JSON document on stdout.
#[derive(Parser)]
#[command(name = "likelihood", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler relation and maximal minors of the parameter matrix.
    Generate {
        file: PathBuf,
        #[command(flatten)]
        gen: GenArgs,
        /// Run the SNC check first and report whether the set is minimal.
        #[arg(long)]
        check_snc: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Generator counts by degree, without computing any minor.
    Census { file: PathBuf },
    /// ML degree predicted by the degrees alone.
    Mldegree { file: PathBuf },
    /// Coefficients of the multidegree class.
    Multidegree { file: PathBuf },
    /// Euler-discriminant ledger, plus the full determinant for hyperplanes.
    Eulerdisc { file: PathBuf },
    /// Strict normal crossings check with a witness subset on failure.
    Snc {
        file: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Compare the determinantal ideal with the saturated likelihood ideal.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        gen: GenArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Logarithmic derivations with tangency certificates.
    Derivations {
        file: PathBuf,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Random arrangement through planted integer points.
    Synth {
        /// Number of variables.
        #[arg(long)]
        n: usize,
        /// Comma-separated degrees.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        /// Comma-separated 1-based indices meeting at one planted point; repeatable.
        #[arg(long = "planted", value_parser = parse_subset)]
        planted: Vec<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Clone, Copy)]
struct GenArgs {
    /// Diagonal column removed before taking minors (1-based).
    #[arg(long, default_value_t = 1)]
    delete_column: usize,
}

#[derive(Args, Clone, Copy)]
struct OracleArgs {
    /// Largest degree of an S-polynomial the oracle will reduce.
    #[arg(long)]
    budget_degree: Option<u32>,
    /// Largest intermediate basis the oracle will keep.
    #[arg(long)]
    budget_size: Option<usize>,
    /// Work modulo this prime; results become advisory.
    #[arg(long)]
    mod_p: Option<u64>,
}

fn parse_subset(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

/// Failure classes, mapped to exit codes 1 and 2.
enum Failure {
    Input(String),
    Inconclusive(String),
}

impl Failure {
    fn report(&self) -> ExitCode {
        let (kind, message, code) = match self {
            Failure::Input(m) => ("input", m, 1),
            Failure::Inconclusive(m) => ("inconclusive", m, 2),
        };
        eprint!(
            "{}",
            render_report(&json!({"error": {"kind": kind, "message": message}}))
        );
        ExitCode::from(code)
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        if e.is_inconclusive() {
            Failure::Inconclusive(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Oracle(o) => o.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        if e.is_inconclusive() {
            Failure::Inconclusive(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<DetgenError> for Failure {
    fn from(e: DetgenError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load(path: &Path) -> Result<Arrangement, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_arrangement(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn oracle_options(args: &OracleArgs) -> Result<OracleOptions, Failure> {
    let mut budget = Budget::default();
    if let Some(d) = args.budget_degree {
        budget.max_degree = d;
    }
    if let Some(s) = args.budget_size {
        budget.max_basis_size = s;
    }
    let field = match args.mod_p {
        Some(p) => {
            PrimeField::new(p).map_err(|e| Failure::Input(e.to_string()))?;
            Field::Prime(p)
        }
        None => Field::Rationals,
    };
    Ok(OracleOptions { field, budget })
}

/// Generators with the linear-form reduction, falling back to the plain
/// minors when a linear form depends on earlier ones.
fn generators(a: &Arrangement, opts: GeneratorOptions) -> Result<IdealGenerators, Failure> {
    match likelihood_generators(a, &opts) {
        Err(DetgenError::DegeneratePivot(i)) => {
            let mut g = likelihood_generators(
                a,
                &GeneratorOptions {
                    reduce_linear: false,
                    ..opts
                },
            )?;
            g.warnings.push(format!(
                "linear form {i} is dependent on earlier ones; minors taken without linear reduction"
            ));
            Ok(g)
        }
        other => Ok(other?),
    }
}

fn run(command: Command) -> Result<(Value, Option<Failure>), Failure> {
    let done = |v: Value| Ok((v, None));
    match command {
        Command::Generate {
            file,
            gen,
            check_snc,
            oracle,
        } => {
            let a = load(&file)?;
            let mut opts = GeneratorOptions {
                delete_column: gen.delete_column,
                ..Default::default()
            };
            if check_snc {
                opts.snc = match snc_check(&a, &oracle_options(&oracle)?)?.verdict {
                    SncVerdict::Snc => SncKnowledge::Snc,
                    SncVerdict::NotSnc { .. } => SncKnowledge::NotSnc,
                    SncVerdict::Inconclusive { .. } => SncKnowledge::Unknown,
                };
            }
            done(generators(&a, opts)?.to_json())
        }
        Command::Census { file } => {
            let a = load(&file)?;
            done(generator_census(a.n(), a.degrees())?.to_json())
        }
        Command::Mldegree { file } => {
            let a = load(&file)?;
            let c = multidegree_coeffs(a.n(), a.degrees())?;
            done(json!({"n": a.n(), "degrees": a.degrees(), "ml_degree": c.to_json()["ml_degree"]}))
        }
        Command::Multidegree { file } => {
            let a = load(&file)?;
            done(multidegree_coeffs(a.n(), a.degrees())?.to_json())
        }
        Command::Eulerdisc { file } => {
            let a = load(&file)?;
            let mut v = euler_disc_ledger(a.n(), a.degrees())?.to_json();
            if let Some(c) = a.hyperplane_matrix().filter(|c| c.len() >= a.n()) {
                v["hyperplane"] = hyperplane_ea(&c)?.to_json();
            }
            done(v)
        }
        Command::Snc { file, oracle } => {
            let a = load(&file)?;
            let report = snc_check(&a, &oracle_options(&oracle)?)?;
            let pending = match &report.verdict {
                SncVerdict::Inconclusive { subsets } => Some(Failure::Inconclusive(format!(
                    "budget exceeded on subsets {subsets:?}"
                ))),
                _ => None,
            };
            Ok((report.to_json(), pending))
        }
        Command::Verify { file, gen, oracle } => {
            let a = load(&file)?;
            let opts = GeneratorOptions {
                delete_column: gen.delete_column,
                ..Default::default()
            };
            done(verify(&a, &opts, &oracle_options(&oracle)?)?.to_json())
        }
        Command::Derivations { file, gen } => {
            let a = load(&file)?;
            let mut opts = GeneratorOptions {
                delete_column: gen.delete_column,
                ..Default::default()
            };
            let mut warnings = Vec::new();
            let ders = match derivation_generators(&a, &opts) {
                Err(DetgenError::DegeneratePivot(i)) => {
                    opts.reduce_linear = false;
                    warnings.push(format!(
                        "linear form {i} is dependent on earlier ones; no linear reduction"
                    ));
                    derivation_generators(&a, &opts)?
                }
                other => other?,
            };
            let all_tangent = ders.iter().all(|d| d.is_tangent());
            done(json!({
                "derivations": ders.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
                "all_tangent": all_tangent,
                "warnings": warnings,
            }))
        }
        Command::Synth {
            n,
            degrees,
            planted,
            seed,
        } => {
            let s = synthesize(n, &degrees, &planted, seed)
                .map_err(|e| Failure::Input(e.to_string()))?;
            done(s.to_json())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return Failure::Input(e.render().to_string().trim_end().to_string()).report(),
    };
    match run(cli.command) {
        Ok((value, pending)) => {
            print!("{}", render_report(&value));
            pending.map_or(ExitCode::SUCCESS, |f| f.report())
        }
        Err(f) => f.report(),
    }
}
