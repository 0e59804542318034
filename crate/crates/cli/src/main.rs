//! `sheafhom` command-line front end.
//!
//! Complexes travel between subcommands as JSON on stdin/stdout, so the
//! usual workflow is a pipeline:
//!
//! ```text
//! sheafhom generate bergman --uniform 2 3 | sheafhom betti --sheaf f --all-p --variant usual
//! ```

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use sheafhom::chains::{
    borel_moore_complex, compact_support_complex, usual_chain_complex, usual_cochain_complex,
};
use sheafhom::generators::{
    bergman_fan, complete_graph, cube_complex, graphic_matroid, parse_tropical_polynomial,
    parse_with_variables, tropical_hypersurface, uniform_matroid, Convention, Matroid,
};
use sheafhom::io;
use sheafhom::polycomplex::orientations;
use sheafhom::sheaves::{constant_cosheaf, constant_sheaf, fcosheaf, validate, wsheaf};
use sheafhom::{CellSheaf, ChainComplex, Direction, PolyhedralComplex};

#[derive(Parser)]
#[command(
    name = "sheafhom",
    version,
    about = "Cellular sheaf (co)homology on polyhedral complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a polyhedral complex as JSON.
    Generate {
        #[command(subcommand)]
        source: Source,
    },
    /// Betti numbers of a (co)chain complex built from the input complex.
    Betti(BettiArgs),
    /// Print a (co)chain complex as a sequence of vector spaces.
    PrintComplex(PipelineArgs),
    /// Check sheaf functoriality and that every differential squares to zero.
    Validate(ValidateArgs),
    /// f-vectors and face classification of the input complex.
    Info(InputArgs),
    /// Emit a (co)sheaf on the input complex as JSON.
    Sheaf(SheafArgs),
    /// Emit a (co)chain complex as JSON.
    Chain(PipelineArgs),
    /// Betti numbers of a (co)chain complex given as JSON.
    Homology {
        #[command(flatten)]
        input: InputArgs,
        /// Print the complex instead of its Betti numbers.
        #[arg(long)]
        print: bool,
    },
}

#[derive(Subcommand)]
enum Source {
    /// The D-dimensional unit cube with all its faces.
    Cube { dim: usize },
    /// Bergman fan of a connected matroid.
    Bergman(BergmanArgs),
    /// Tropical hypersurface of a polynomial such as "max(0, x+5, y+3, x+y+9)".
    Hypersurface {
        polynomial: String,
        /// Comma-separated variable order (default: alphabetical).
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
}

#[derive(Args)]
struct BergmanArgs {
    /// Uniform matroid U(R, N).
    #[arg(long, num_args = 2, value_names = ["R", "N"], conflicts_with_all = ["graph", "matroid"])]
    uniform: Option<Vec<usize>>,
    /// Graphic matroid, e.g. "complete:4".
    #[arg(long, conflicts_with = "matroid")]
    graph: Option<String>,
    /// Matroid JSON file with "n" and "bases".
    #[arg(long)]
    matroid: Option<PathBuf>,
    /// Use the min convention (negated rays).
    #[arg(long)]
    min: bool,
}

#[derive(Args)]
struct InputArgs {
    /// Complex JSON file; reads stdin when absent.
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SheafKind {
    Constant,
    W,
    F,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Usual,
    Bm,
    Cochain,
    Cs,
}

#[derive(Args)]
struct SheafSpec {
    #[arg(long, value_enum, default_value = "constant")]
    sheaf: SheafKind,
    #[arg(long, default_value_t = 0)]
    p: usize,
    /// Hand-built (co)sheaf JSON on the input complex; overrides --sheaf.
    #[arg(long)]
    sheaf_file: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    sheaf: SheafSpec,
    #[arg(long, value_enum)]
    variant: Variant,
}

#[derive(Args)]
struct BettiArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// One row per p = 0..=dim instead of a single row.
    #[arg(long)]
    all_p: bool,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Validate this (co)sheaf JSON instead of the built-in constructors.
    #[arg(long)]
    sheaf_file: Option<PathBuf>,
}

#[derive(Args)]
struct SheafArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "constant")]
    sheaf: SheafKind,
    #[arg(long, default_value_t = 0)]
    p: usize,
    /// For the constant sheaf, emit the cosheaf instead.
    #[arg(long)]
    cosheaf: bool,
}

fn read_json(path: Option<&PathBuf>) -> Result<Value> {
    let text = match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            s
        }
    };
    serde_json::from_str(&text).context("parsing JSON input")
}

fn read_complex(args: &InputArgs) -> Result<PolyhedralComplex> {
    Ok(io::complex_from_json(&read_json(args.input.as_ref())?)?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn generate(source: &Source) -> Result<PolyhedralComplex> {
    Ok(match source {
        Source::Cube { dim } => cube_complex(*dim),
        Source::Bergman(b) => {
            let m: Matroid = if let Some(u) = &b.uniform {
                uniform_matroid(u[0], u[1])?
            } else if let Some(g) = &b.graph {
                let Some(k) = g.strip_prefix("complete:") else {
                    bail!("unknown graph \"{g}\"; expected complete:K");
                };
                let k: usize = k
                    .parse()
                    .with_context(|| format!("bad vertex count in \"{g}\""))?;
                graphic_matroid(&complete_graph(k))?
            } else if let Some(path) = &b.matroid {
                io::matroid_from_json(&read_json(Some(path))?)?
            } else {
                bail!("one of --uniform, --graph or --matroid is required");
            };
            let convention = if b.min {
                Convention::Min
            } else {
                Convention::Max
            };
            bergman_fan(&m, convention)?
        }
        Source::Hypersurface { polynomial, vars } => {
            let f = match vars {
                Some(v) => {
                    let names: Vec<&str> = v.iter().map(|s| s.trim()).collect();
                    parse_with_variables(polynomial, &names)
                }
                None => parse_tropical_polynomial(polynomial),
            }
            .map_err(sheafhom::Error::from)?;
            tropical_hypersurface(&f)?
        }
    })
}

fn is_cochain(v: Variant) -> bool {
    matches!(v, Variant::Cochain | Variant::Cs)
}

fn build_sheaf(
    pc: &PolyhedralComplex,
    kind: SheafKind,
    p: usize,
    variant: Variant,
) -> Result<CellSheaf> {
    Ok(match (kind, is_cochain(variant)) {
        (SheafKind::Constant, true) => constant_sheaf(pc),
        (SheafKind::Constant, false) => constant_cosheaf(pc),
        (SheafKind::W, true) => wsheaf(pc, p),
        (SheafKind::F, false) => fcosheaf(pc, p),
        (SheafKind::W, false) => bail!("W^p is a sheaf; use --variant cochain or cs"),
        (SheafKind::F, true) => bail!("F_p is a cosheaf; use --variant usual or bm"),
    })
}

fn assemble(pc: &PolyhedralComplex, s: &CellSheaf, variant: Variant) -> Result<ChainComplex> {
    let o = orientations(pc)?;
    Ok(match variant {
        Variant::Usual => usual_chain_complex(pc, s, &o)?,
        Variant::Bm => borel_moore_complex(pc, s, &o)?,
        Variant::Cochain => usual_cochain_complex(pc, s, &o)?,
        Variant::Cs => compact_support_complex(pc, s, &o)?,
    })
}

fn pipeline(
    pc: &PolyhedralComplex,
    spec: &SheafSpec,
    variant: Variant,
    p: usize,
) -> Result<ChainComplex> {
    let s = match &spec.sheaf_file {
        Some(path) => {
            let s = io::sheaf_from_json(&read_json(Some(path))?)?;
            let report = validate(&s, pc);
            if !report.is_valid() {
                bail!("sheaf fails validation: {:?}", report.violations);
            }
            s
        }
        None => build_sheaf(pc, spec.sheaf, p, variant)?,
    };
    assemble(pc, &s, variant)
}

fn row(xs: &[usize]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn betti(args: &BettiArgs) -> Result<()> {
    let a = &args.pipeline;
    let pc = read_complex(&a.input)?;
    let ps: Vec<usize> = if args.all_p {
        (0..=pc.dim().max(0) as usize).collect()
    } else {
        vec![a.sheaf.p]
    };
    for p in ps {
        let cc = pipeline(&pc, &a.sheaf, a.variant, p)?;
        println!("{}", row(&cc.betti_numbers()?));
    }
    Ok(())
}

fn validate_all(args: &ValidateArgs) -> Result<()> {
    let pc = read_complex(&args.input)?;
    let mut sheaves: Vec<(String, CellSheaf)> = Vec::new();
    if let Some(path) = &args.sheaf_file {
        sheaves.push((
            path.display().to_string(),
            io::sheaf_from_json(&read_json(Some(path))?)?,
        ));
    } else {
        sheaves.push(("constant sheaf".into(), constant_sheaf(&pc)));
        sheaves.push(("constant cosheaf".into(), constant_cosheaf(&pc)));
        for p in 0..=pc.dim().max(0) as usize {
            sheaves.push((format!("W^{p}"), wsheaf(&pc, p)));
            sheaves.push((format!("F_{p}"), fcosheaf(&pc, p)));
        }
    }
    for (name, s) in &sheaves {
        let report = validate(s, &pc);
        if !report.is_valid() {
            let user = args.sheaf_file.is_some();
            println!("{name}: invalid");
            for v in &report.violations {
                println!("  {v:?}");
            }
            if user {
                bail!("{name} is not a valid {}", s.direction.name());
            }
            return Err(sheafhom::Error::NotAChainComplex)
                .context(format!("{name} fails validation"));
        }
        let variants: [(Variant, &str); 2] = match s.direction {
            Direction::Sheaf => [
                (Variant::Cochain, "usual"),
                (Variant::Cs, "compact support"),
            ],
            Direction::Cosheaf => [(Variant::Usual, "usual"), (Variant::Bm, "Borel-Moore")],
        };
        for (variant, label) in variants {
            let cc = assemble(&pc, s, variant)?;
            if !cc.is_welldefined() {
                println!("{name}: {label} complex is not a complex");
                return Err(sheafhom::Error::NotAChainComplex.into());
            }
        }
        println!("{name}: ok");
    }
    Ok(())
}

fn info(args: &InputArgs) -> Result<()> {
    let pc = read_complex(args)?;
    let fc = pc.classify_faces();
    println!("ambient_dim {}", pc.ambient_dim());
    println!("dim {}", pc.dim());
    println!("f_vector {}", row(&pc.f_vector()));
    println!("bounded_f_vector {}", row(&pc.bounded_f_vector()));
    println!("far_faces {}", fc.far_faces.len());
    println!("bounded_faces {}", fc.bounded_faces.len());
    println!("unbounded_faces {}", fc.unbounded_faces.len());
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Generate { source } => print_json(&io::complex_to_json(&generate(source)?)),
        Command::Betti(args) => betti(args)?,
        Command::PrintComplex(a) => {
            let pc = read_complex(&a.input)?;
            println!("{}", pipeline(&pc, &a.sheaf, a.variant, a.sheaf.p)?.print());
        }
        Command::Validate(args) => validate_all(args)?,
        Command::Info(args) => info(args)?,
        Command::Sheaf(a) => {
            let pc = read_complex(&a.input)?;
            let variant = match (a.sheaf, a.cosheaf) {
                (SheafKind::F, _) | (SheafKind::Constant, true) => Variant::Usual,
                _ => Variant::Cochain,
            };
            print_json(&io::sheaf_to_json(&build_sheaf(
                &pc, a.sheaf, a.p, variant,
            )?));
        }
        Command::Chain(a) => {
            let pc = read_complex(&a.input)?;
            print_json(&io::chain_to_json(&pipeline(
                &pc, &a.sheaf, a.variant, a.sheaf.p,
            )?));
        }
        Command::Homology { input, print } => {
            let cc = io::chain_from_json(&read_json(input.input.as_ref())?)?;
            if !cc.is_welldefined() {
                bail!("input differentials do not compose to zero");
            }
            if *print {
                println!("{}", cc.print());
            } else {
                println!("{}", row(&cc.betti_numbers()?));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = e.chain().any(|c| {
                c.downcast_ref::<sheafhom::Error>()
                    .is_some_and(|e| e.is_internal())
            });
            ExitCode::from(if internal { 2 } else { 1 })
        }
    }
}
