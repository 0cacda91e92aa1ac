//! `submod`: generate hypercube functions, count violated squares, run the
//! square tester, decide extendability and verify path certificates.
//!
//! Exit status is 0 on success, 1 when the answer is a negative verdict
//! (tester NO, not submodular, infeasible, invalid certificate) and 2 on
//! usage or input errors.

mod experiment;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use submod_core::constructions::{
    add_dummy_dims, build_minimal_nonextendable, gadget, lattice_distance_fn, paired_lattice, random_nonincreasing,
    reduce_monotone, Lattice,
};
use submod_core::extendability::{
    check_path_certificate, distance_to_monotone, distance_to_submodular, extension_system, solve_feasibility,
    Distance, FeasibilityResult,
};
use submod_core::format::{
    parse_certificate, parse_partial, parse_total, write_certificate, write_partial, write_total,
};
use submod_core::tester::{run_tester, SamplingMode, TesterReport};
use submod_core::{Function, Partial, Point, Rational, Square, TotalFunction};

#[derive(Parser)]
#[command(name = "submod", version, about = "Submodularity on the boolean hypercube")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a function (and for minimal-nonextendable, a certificate).
    Gen(GenArgs),
    /// Report whether a total function is submodular and non-increasing.
    Check { file: PathBuf },
    /// Count violated squares of a total function.
    Squares {
        file: PathBuf,
        /// List every violated square as `<bottom> <i> <j>`.
        #[arg(long)]
        witnesses: bool,
    },
    /// Run the square tester and print its report as one CSV row.
    Test(TestArgs),
    /// Exact distance to submodularity (or to non-increasing).
    Distance {
        file: PathBuf,
        /// Distance to monotone non-increasing instead.
        #[arg(long)]
        monotone: bool,
        /// Largest distance to search for; defaults to 2^n.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Decide whether a partial function extends to a submodular one.
    Extend {
        file: PathBuf,
        /// Write the extension here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Verify a path certificate of non-extendability.
    Certify { partial: PathBuf, certificate: PathBuf },
    /// Apply the monotonicity-to-submodularity reduction.
    Reduce {
        file: PathBuf,
        /// Write the result here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded tester sweep described by a key=value config file.
    Experiment {
        config: PathBuf,
        /// Write the CSV here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Gadget of a single lattice point on n + 2 coordinates.
    GadgetOnePoint,
    /// Gadget of the paired lattice on n + 2 coordinates (n even).
    GadgetPaired,
    /// Distance function of the lattice generated by random seeds.
    LatticeRandom,
    /// Reduction of a random non-increasing function, on n + 1 coordinates.
    Reduction,
    /// Partial function on 2m + 4 coordinates with no submodular extension.
    MinimalNonextendable,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::GadgetOnePoint => "gadget-one-point",
            Family::GadgetPaired => "gadget-paired",
            Family::LatticeRandom => "lattice-random",
            Family::Reduction => "reduction",
            Family::MinimalNonextendable => "minimal-nonextendable",
        }
    }
}

/// Parameters shared by every generated family.
#[derive(Args, Clone, Debug)]
pub struct FamilyParams {
    /// Dimension of the underlying cube (before gadget or reduction coordinates).
    #[arg(long)]
    pub n: Option<usize>,
    /// Size parameter of minimal-nonextendable.
    #[arg(long)]
    pub m: Option<usize>,
    /// Seed for the random families and the tester.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Lattice point of gadget-one-point; defaults to the first n/2 coordinates set.
    #[arg(long)]
    pub point: Option<String>,
    /// Number of random seeds generating the lattice-random lattice.
    #[arg(long, default_value_t = 3)]
    pub seeds: usize,
    /// Base value of minimal-nonextendable.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub base: String,
    /// Extra coordinates the function ignores.
    #[arg(long, default_value_t = 0)]
    pub dummy: usize,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    #[command(flatten)]
    params: FamilyParams,
    /// Write the function here instead of standard output.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Where to write the certificate of minimal-nonextendable.
    #[arg(long)]
    cert_out: Option<PathBuf>,
}

#[derive(Args)]
struct TestArgs {
    /// A total function file, or a family name to generate.
    target: String,
    #[command(flatten)]
    params: FamilyParams,
    /// Number of squares to sample.
    #[arg(long)]
    q: u64,
    /// Square sampling distribution.
    #[arg(long, default_value = "uniform-square")]
    mode: String,
    /// Print the CSV header line first.
    #[arg(long)]
    header: bool,
}

/// A generated instance: a total function, or a partial one with its
/// certificate.
pub enum Instance {
    Total(Function),
    Partial(Partial, submod_core::Certificate),
}

impl Instance {
    /// The function the tester sees; undefined points read as 0.
    pub fn total(&self) -> Result<Function> {
        match self {
            Instance::Total(f) => Ok(f.clone()),
            Instance::Partial(pf, _) => Ok(TotalFunction::from_fn(pf.dim(), |x| {
                pf.get(x).cloned().unwrap_or_default()
            })?),
        }
    }
}

fn require(value: Option<usize>, flag: &str, family: Family) -> Result<usize> {
    value.with_context(|| format!("{} needs --{flag}", family.name()))
}

pub fn generate(family: Family, p: &FamilyParams) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let f: Function = match family {
        Family::GadgetOnePoint => {
            let n = require(p.n, "n", family)?;
            let point = match &p.point {
                Some(s) => {
                    let x: Point = s.parse()?;
                    if x.dim() != n {
                        bail!("--point has length {}, expected {n}", x.dim());
                    }
                    x
                }
                None => Point::new(n, (1u32 << (n / 2)) - 1)?,
            };
            gadget(&Lattice::singleton(point))?
        }
        Family::GadgetPaired => gadget(&paired_lattice(require(p.n, "n", family)?)?)?,
        Family::LatticeRandom => {
            let n = require(p.n, "n", family)?;
            if p.seeds == 0 {
                bail!("--seeds must be at least 1");
            }
            lattice_distance_fn(&Lattice::random(n, p.seeds, &mut rng)?)
        }
        Family::Reduction => {
            let f: Function = random_nonincreasing(require(p.n, "n", family)?, 0, 5, &mut rng)?;
            reduce_monotone(&f)?
        }
        Family::MinimalNonextendable => {
            let base = parse_rational(&p.base).context("--base")?;
            let inst = build_minimal_nonextendable(require(p.m, "m", family)?, base)?;
            if p.dummy > 0 {
                bail!("--dummy applies to total functions only");
            }
            return Ok(Instance::Partial(inst.function, inst.certificate));
        }
    };
    Ok(Instance::Total(add_dummy_dims(&f, p.dummy)?))
}

fn parse_rational(text: &str) -> Result<Rational> {
    use submod_core::Scalar;
    Rational::parse_literal(text).with_context(|| format!("bad value {text:?}"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_total(path: &Path) -> Result<Function> {
    parse_total(&read(path)?).with_context(|| path.display().to_string())
}

fn read_partial(path: &Path) -> Result<Partial> {
    parse_partial(&read(path)?).with_context(|| path.display().to_string())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn square_field(sq: &Square) -> String {
    let (i, j) = sq.coords();
    format!("{}:{i}:{j}", sq.bottom())
}

pub const REPORT_HEADER: &str = "verdict,queries_used,samples_drawn,rejections,witness,seed,mode";

fn report_row(rep: &TesterReport) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        rep.verdict,
        rep.queries_used,
        rep.samples_drawn,
        rep.rejections,
        rep.witness.as_ref().map(square_field).unwrap_or_default(),
        rep.seed,
        rep.mode
    )
}

/// 0 for a positive answer, 1 for a negative one.
fn status(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen(args) => {
            match generate(args.family, &args.params)? {
                Instance::Total(f) => {
                    if args.cert_out.is_some() {
                        bail!("--cert-out applies to minimal-nonextendable only");
                    }
                    emit(args.out.as_deref(), &write_total(&f))?;
                }
                Instance::Partial(pf, cert) => {
                    emit(args.out.as_deref(), &write_partial(&pf))?;
                    if let Some(path) = &args.cert_out {
                        emit(Some(path), &write_certificate(&cert))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Check { file } => {
            let f = read_total(&file)?;
            let sub = f.is_submodular();
            println!("submodular: {}", if sub { "yes" } else { "no" });
            println!(
                "monotone-nonincreasing: {}",
                if f.is_monotone_nonincreasing() { "yes" } else { "no" }
            );
            Ok(status(sub))
        }
        Command::Squares { file, witnesses } => {
            let f = read_total(&file)?;
            let census = f.violated_census(witnesses)?;
            println!("count {}", census.count);
            println!("total {}", census.total);
            println!("density {}", census.density());
            for sq in census.witnesses.iter().flatten() {
                println!("square {sq}");
            }
            Ok(0)
        }
        Command::Test(args) => {
            let f = if Path::new(&args.target).is_file() {
                read_total(Path::new(&args.target))?
            } else {
                let family = Family::from_str(&args.target, false)
                    .map_err(|_| anyhow::anyhow!("{:?} is neither a file nor a family", args.target))?;
                generate(family, &args.params)?.total()?
            };
            let mode: SamplingMode = args.mode.parse()?;
            let rep = run_tester(&f, args.q, args.params.seed, mode)?;
            if args.header {
                println!("{REPORT_HEADER}");
            }
            println!("{}", report_row(&rep));
            Ok(status(rep.witness.is_none()))
        }
        Command::Distance { file, monotone, budget } => {
            let f = read_total(&file)?;
            let d = if monotone {
                distance_to_monotone(&f, budget)?
            } else {
                distance_to_submodular(&f, budget)?
            };
            match d {
                Distance::Exact(k) => println!("distance {k}"),
                Distance::ExceedsBudget { budget } => println!("exceeds budget {budget}"),
            }
            Ok(0)
        }
        Command::Extend { file, out } => {
            let pf = read_partial(&file)?;
            let sys = extension_system(&pf)?;
            match solve_feasibility(&sys)? {
                FeasibilityResult::Feasible { extension, .. } => {
                    emit(out.as_deref(), &write_total(&extension))?;
                    Ok(0)
                }
                FeasibilityResult::Infeasible { farkas } => {
                    println!("infeasible");
                    for (k, y) in &farkas {
                        println!("farkas {} {y}", sys.constraints()[*k].square);
                    }
                    Ok(1)
                }
            }
        }
        Command::Certify { partial, certificate } => {
            let pf = read_partial(&partial)?;
            let cert = parse_certificate(&read(&certificate)?).with_context(|| certificate.display().to_string())?;
            let check = check_path_certificate(&pf, &cert)?;
            let valid = check.is_valid();
            println!("{} value {}", if valid { "valid" } else { "invalid" }, check.value);
            if check.matching.is_none() {
                println!("no perfect matching of upward onto downward edges");
            }
            Ok(status(valid))
        }
        Command::Reduce { file, out } => {
            let g = reduce_monotone(&read_total(&file)?)?;
            emit(out.as_deref(), &write_total(&g))?;
            Ok(0)
        }
        Command::Experiment { config, out } => {
            let cfg = experiment::Config::parse(&read(&config)?).with_context(|| config.display().to_string())?;
            let run = experiment::run(&cfg)?;
            emit(out.as_deref(), &run.csv)?;
            eprintln!("{}", run.summary);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
