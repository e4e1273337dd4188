use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use superfunc::bases::{convert, gen_family, set_cache_dir, Basis, BasisExpansion, Family};
use superfunc::checks::{run_criterion, Bounds};
use superfunc::inner::{form_beta, physical_form, BetaMode};
use superfunc::jack::{at_beta, jack_build, JackMethod};
use superfunc::operators::{conserved_apply, Conserved};
use superfunc::superpartition::enumerate;
use superfunc::{BigRat, SuperPartition};

#[derive(Parser, Debug)]
#[command(name = "superfunc", version, about = "Exact symmetric functions in superspace")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Pretty, global = true)]
    out: Output,

    /// Worker threads for work split across superpartitions.
    #[arg(long, global = true)]
    parallel: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the superpartitions of bidegree (n|m).
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Expand a generator or a basis element in the monomial basis.
    Expand(ExpandArgs),
    /// Convert an expansion to another basis.
    Convert(ConvertArgs),
    /// Scalar product of two expansions.
    Inner(InnerArgs),
    /// Apply a conserved operator to a symmetric expansion.
    Apply(ApplyArgs),
    /// Build a Jack superpolynomial.
    Jack(JackArgs),
    /// Run the acceptance criteria.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct ExpandArgs {
    /// Generator family: e, et, h, ht, p, pt, g, gt.
    #[arg(long, requires = "degree", conflicts_with_all = ["basis", "sp"])]
    family: Option<Family>,
    /// Index of the generator.
    #[arg(long)]
    degree: Option<u32>,
    /// Basis of a single element: m, e, h, p, g.
    #[arg(long, requires = "sp")]
    basis: Option<Basis>,
    #[arg(long)]
    sp: Option<SuperPartition>,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    /// Source basis when converting a single element given by --sp.
    #[arg(long, requires = "sp")]
    from: Option<Basis>,
    #[arg(long)]
    to: Basis,
    #[arg(long, conflicts_with = "input")]
    sp: Option<SuperPartition>,
    /// Expansion file in the JSON schema.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Product {
    Comb,
    Beta,
    Phys,
}

#[derive(Args, Debug)]
struct InnerArgs {
    #[arg(long, value_enum, default_value_t = Product::Beta)]
    product: Product,
    /// `b` for the symbolic parameter or a rational value.
    #[arg(long, default_value = "b")]
    beta: String,
    #[arg(long)]
    n_vars: Option<usize>,
    left: PathBuf,
    right: PathBuf,
}

#[derive(Args, Debug)]
struct ApplyArgs {
    /// One of H, I, Hr:r, Is:s, Q, Qdag.
    #[arg(long)]
    op: Conserved,
    #[arg(long)]
    n_vars: usize,
    #[arg(long)]
    input: PathBuf,
    /// Writes the result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct JackArgs {
    #[arg(long)]
    sp: SuperPartition,
    /// gs, eig or both.
    #[arg(long, default_value = "eig")]
    method: JackMethod,
    /// `symbolic` or a rational value.
    #[arg(long, default_value = "symbolic")]
    beta: String,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    m_max: Option<u32>,
    /// Runs only the given criteria.
    #[arg(long, value_delimiter = ',')]
    criterion: Vec<u8>,
}

fn read_expansion(path: &Path, flag: &str) -> Result<BasisExpansion> {
    let text = fs::read_to_string(path).with_context(|| format!("{flag}: cannot read {}", path.display()))?;
    BasisExpansion::from_json(&text).with_context(|| format!("{flag}: {}", path.display()))
}

fn parse_beta(text: &str, flag: &str) -> Result<Option<BigRat>> {
    match text {
        "b" | "symbolic" => Ok(None),
        _ => text
            .parse::<BigRat>()
            .map(Some)
            .map_err(|e| anyhow::anyhow!("{flag}: {text:?} is not a rational number ({e})")),
    }
}

fn emit_expansion(out: Output, expansion: &BasisExpansion) {
    match out {
        Output::Json => println!("{}", expansion.to_json()),
        Output::Pretty => println!("{expansion}"),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(threads) = cli.parallel {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("--parallel")?;
    }
    if let Some(dir) = std::env::var_os("SUPERFUNC_CACHE_DIR") {
        set_cache_dir(Some(PathBuf::from(dir)));
    }
    match cli.command {
        Command::Enumerate { n, m, max_length } => {
            let list = enumerate(n, m, max_length);
            match cli.out {
                Output::Json => {
                    let value = json!({ "n": n, "m": m, "superpartitions": list });
                    println!("{}", serde_json::to_string_pretty(&value)?);
                }
                Output::Pretty => list.iter().for_each(|sp| println!("{sp}")),
            }
        }
        Command::Expand(args) => {
            let expansion = match (args.family, args.degree, args.basis, args.sp) {
                (Some(family), Some(degree), _, _) => gen_family(family, degree).context("--family")?,
                (None, _, Some(basis), Some(sp)) => BasisExpansion::single(basis, sp),
                _ => bail!("expand needs --family with --degree, or --basis with --sp"),
            };
            emit_expansion(cli.out, &convert(&expansion, Basis::M).context("expand")?);
        }
        Command::Convert(args) => {
            let source = match (args.from, args.sp, args.input) {
                (Some(from), Some(sp), None) => BasisExpansion::single(from, sp),
                (None, None, Some(path)) => read_expansion(&path, "--input")?,
                _ => bail!("convert needs --from with --sp, or --input"),
            };
            emit_expansion(cli.out, &convert(&source, args.to).context("--to")?);
        }
        Command::Inner(args) => {
            let left = read_expansion(&args.left, "left")?;
            let right = read_expansion(&args.right, "right")?;
            let beta = parse_beta(&args.beta, "--beta")?;
            let value = match args.product {
                Product::Comb => form_beta(&left, &right, &BetaMode::One)?,
                Product::Beta => {
                    let mode = beta.map_or(BetaMode::Symbolic, BetaMode::At);
                    form_beta(&left, &right, &mode)?
                }
                Product::Phys => {
                    let n_vars = args.n_vars.context("--n-vars is required for the physical product")?;
                    let beta = beta.context("--beta must be a positive integer for the physical product")?;
                    let realize = |f: &BasisExpansion| -> Result<_> {
                        let at = at_beta(f, &beta)?;
                        Ok(at.to_superpoly(n_vars)?)
                    };
                    physical_form(&realize(&left)?, &realize(&right)?, n_vars, &beta).context("--beta")?
                }
            };
            match cli.out {
                Output::Json => println!("{}", json!({ "value": value })),
                Output::Pretty => println!("{value}"),
            }
        }
        Command::Apply(args) => {
            let input = read_expansion(&args.input, "--input")?;
            let (n, m) = input.bidegree();
            let poly = input.to_superpoly(args.n_vars).context("--n-vars")?;
            let image = conserved_apply(args.op, &poly).context("--op")?;
            let m_out = match args.op {
                Conserved::Q => m + 1,
                Conserved::Qdag if m == 0 => {
                    emit_expansion(cli.out, &BasisExpansion::zero(Basis::M, n, 0));
                    return Ok(ExitCode::SUCCESS);
                }
                Conserved::Qdag => m - 1,
                _ => m,
            };
            let result = BasisExpansion::from_superpoly(&image, n, m_out)?;
            match args.output {
                Some(path) => fs::write(&path, result.to_json()).with_context(|| format!("--output: {}", path.display()))?,
                None => emit_expansion(cli.out, &result),
            }
        }
        Command::Jack(args) => {
            let record = jack_build(&args.sp, args.method)?;
            let expansion = match parse_beta(&args.beta, "--beta")? {
                Some(value) => at_beta(&record.m_expansion, &value)?,
                None => record.m_expansion.clone(),
            };
            match cli.out {
                Output::Json => {
                    let value = json!({
                        "index": record.index,
                        "witness": record.witness,
                        "m_expansion": expansion,
                    });
                    println!("{}", serde_json::to_string_pretty(&value)?);
                }
                Output::Pretty => println!("J_{} = {}", record.index, expansion),
            }
        }
        Command::Check(args) => {
            let bounds = Bounds {
                n_max: args.n_max,
                m_max: args.m_max,
            };
            let selected: Vec<u8> = if args.criterion.is_empty() {
                (1..=12).collect()
            } else {
                args.criterion.clone()
            };
            if let Some(bad) = selected.iter().find(|&&k| !(1..=12).contains(&k)) {
                bail!("--criterion: {bad} is not between 1 and 12");
            }
            let results: Vec<_> = selected.iter().map(|&k| run_criterion(k, &bounds)).collect();
            match cli.out {
                Output::Json => println!("{}", serde_json::to_string_pretty(&results)?),
                Output::Pretty => results.iter().for_each(|c| println!("{c}")),
            }
            if results.iter().any(|c| !c.passed()) {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
