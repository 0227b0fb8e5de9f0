//! Command-line front end: parse shape, topology and mapping files, run
//! the operations, print verdicts and DOT diagrams.
//!
//! Exit codes: 0 success or true verdict, 1 false verdict, 2 usage or
//! parse error, 3 semantic error (kind mismatch, budget exceeded, ...).
//! Identical inputs always produce byte-identical output.

use clap::{Args, Parser, Subcommand};
use shapetop::io::{self, ReadError};
use shapetop::{
    connect, dot, oracle, space, Comparison, Error, GenerateOptions, Preimage, Shape, Topology,
    DEFAULT_MAX_OPENS,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "shapetop",
    version,
    about = "Exact point-free topologies on point and line shapes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Read a shape file and print its canonical maximal form.
    Normalize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Shape algebra on two shape files.
    #[command(subcommand)]
    Alg(AlgCommand),
    /// Topology construction, checks and classification.
    #[command(subcommand)]
    Topo(TopoCommand),
    /// The space of a shape relative to a topology.
    #[command(subcommand)]
    Space(SpaceCommand),
    /// Mappings: images, preimages, continuity.
    #[command(subcommand)]
    Map(MapCommand),
    /// Connectedness reports.
    #[command(subcommand)]
    Conn(ConnCommand),
    /// Brute-force oracles (debugging aid).
    #[command(subcommand, hide = true)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum AlgCommand {
    /// Sum of two shapes.
    Sum(AlgArgs),
    /// Largest common part of two shapes.
    Product(AlgArgs),
    /// Difference of two shapes.
    Diff(AlgArgs),
    /// Part relation: is the first shape part of the second?
    Partof {
        a: PathBuf,
        b: PathBuf,
    },
}

#[derive(Args)]
struct AlgArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TopoCommand {
    /// Generate the topology recognized by a parts file.
    Gen {
        /// Named-parts file; every part is a generator.
        parts: PathBuf,
        /// Carrier shape file.
        #[arg(long)]
        carrier: PathBuf,
        /// Add the carrier when the parts do not sum to it.
        #[arg(long)]
        add_carrier: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the topology conditions of a topology file.
    Check { topology: PathBuf },
    /// Print the unique reduced basis.
    Reduce { topology: PathBuf },
    /// Compare two topologies on the same carrier.
    Compare { first: PathBuf, second: PathBuf },
    /// Relativize a topology to a part.
    Sub {
        topology: PathBuf,
        part: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classify a part: open, closed, clopen, dense, interior, closure.
    Classify { topology: PathBuf, part: PathBuf },
    /// Hasse diagram of the open-part lattice in DOT form.
    Dot {
        topology: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SpaceCommand {
    /// Build the space and its set topology.
    Build {
        topology: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Emit the space as a DOT Hasse diagram instead of a space file.
        #[arg(long)]
        dot: bool,
    },
    /// Verify the topology/space isomorphism.
    Check { topology: PathBuf },
}

#[derive(Subcommand)]
enum MapCommand {
    /// Image of a shape under a mapping.
    Image {
        mapping: PathBuf,
        shape: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Preimage of a shape under a mapping over a domain.
    Preimage {
        mapping: PathBuf,
        shape: PathBuf,
        #[arg(long)]
        domain: PathBuf,
    },
    /// Continuity verdict between a source and a target topology.
    Continuous {
        mapping: PathBuf,
        source: PathBuf,
        target: PathBuf,
    },
}

#[derive(Subcommand)]
enum ConnCommand {
    /// Visual and structural connectivity of a shape under a topology.
    Report { shape: PathBuf, topology: PathBuf },
    /// The four totally-disconnected conditions.
    Totally { topology: PathBuf },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Count and list all set topologies on n points.
    Enum { n: usize },
    /// Point-shape algebra through the set oracle.
    U0 {
        op: String,
        a: PathBuf,
        b: PathBuf,
    },
    /// Brute-force preimage by fragment enumeration.
    Preimage {
        mapping: PathBuf,
        shape: PathBuf,
        #[arg(long)]
        domain: PathBuf,
    },
}

/// Verdict-style exit codes.
const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SEMANTIC: u8 = 3;

enum Failure {
    Read(ReadError),
    Semantic(Error),
    Usage(String),
}

impl From<ReadError> for Failure {
    fn from(e: ReadError) -> Failure {
        Failure::Read(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Semantic(e)
    }
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Read(ReadError::Semantic(e)) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_SEMANTIC)
            }
            Failure::Read(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
            Failure::Semantic(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_SEMANTIC)
            }
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(EXIT_USAGE)
            }
        }
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|source| {
            Failure::Read(ReadError::Io { path: path.to_path_buf(), source })
        }),
    }
}

/// Open-part budget, overridable through SHAPETOP_MAX_OPENS.
fn max_opens() -> Result<usize, Failure> {
    match std::env::var("SHAPETOP_MAX_OPENS") {
        Err(_) => Ok(DEFAULT_MAX_OPENS),
        Ok(text) => text.parse().map_err(|_| {
            Failure::Usage(format!("SHAPETOP_MAX_OPENS must be a positive integer, got '{text}'"))
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => failure.report(),
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Normalize { file, output } => {
            let shape = io::read_shape(&file)?;
            emit(&io::format_shape(&shape), output.as_deref())?;
            Ok(0)
        }
        Command::Alg(cmd) => run_alg(cmd),
        Command::Topo(cmd) => run_topo(cmd),
        Command::Space(cmd) => run_space(cmd),
        Command::Map(cmd) => run_map(cmd),
        Command::Conn(cmd) => run_conn(cmd),
        Command::Oracle(cmd) => run_oracle(cmd),
    }
}

fn run_alg(cmd: AlgCommand) -> Result<u8, Failure> {
    match cmd {
        AlgCommand::Sum(args) => {
            let result = io::read_shape(&args.a)?.sum(&io::read_shape(&args.b)?)?;
            emit(&io::format_shape(&result), args.output.as_deref())?;
            Ok(0)
        }
        AlgCommand::Product(args) => {
            let result = io::read_shape(&args.a)?.product(&io::read_shape(&args.b)?)?;
            emit(&io::format_shape(&result), args.output.as_deref())?;
            Ok(0)
        }
        AlgCommand::Diff(args) => {
            let result = io::read_shape(&args.a)?.difference(&io::read_shape(&args.b)?)?;
            emit(&io::format_shape(&result), args.output.as_deref())?;
            Ok(0)
        }
        AlgCommand::Partof { a, b } => {
            let verdict = io::read_shape(&a)?.part_of(&io::read_shape(&b)?)?;
            println!("{verdict}");
            Ok(if verdict { 0 } else { EXIT_FALSE })
        }
    }
}

fn path_text(path: &Path) -> String {
    path.display().to_string()
}

fn run_topo(cmd: TopoCommand) -> Result<u8, Failure> {
    match cmd {
        TopoCommand::Gen { parts, carrier, add_carrier, output } => {
            let generators: Vec<Shape> =
                io::read_parts(&parts)?.into_iter().map(|(_, s)| s).collect();
            let carrier_shape = io::read_shape(&carrier)?;
            let opts = GenerateOptions { add_carrier, max_opens: max_opens()? };
            let t = Topology::generate(&generators, &carrier_shape, opts)?;
            emit(&io::format_topology(&t, &path_text(&carrier)), output.as_deref())?;
            Ok(0)
        }
        TopoCommand::Check { topology } => {
            let file = io::read_topology_family(&topology)?;
            match file.check.violation {
                None => {
                    println!("topology: ok");
                    Ok(0)
                }
                Some(v) => {
                    println!("topology: violation: {v}");
                    Ok(EXIT_FALSE)
                }
            }
        }
        TopoCommand::Reduce { topology } => {
            let t = io::read_topology(&topology)?.topology;
            let basis = t.reduced_basis();
            println!("reduced basis ({} elements)", basis.elements().len());
            for element in basis.elements_sorted() {
                println!("element {{ {element} }}");
            }
            Ok(0)
        }
        TopoCommand::Compare { first, second } => {
            let t1 = io::read_topology(&first)?.topology;
            let t2 = io::read_topology(&second)?.topology;
            let verdict = t1.compare(&t2)?;
            println!("{verdict}");
            Ok(match verdict {
                Comparison::Incomparable => EXIT_FALSE,
                _ => 0,
            })
        }
        TopoCommand::Sub { topology, part, output } => {
            let t = io::read_topology(&topology)?.topology;
            let x = io::read_shape(&part)?;
            let sub = t.subshape(&x)?;
            emit(&io::format_topology(&sub, &path_text(&part)), output.as_deref())?;
            Ok(0)
        }
        TopoCommand::Classify { topology, part } => {
            let t = io::read_topology(&topology)?.topology;
            let x = io::read_shape(&part)?;
            let class = t.classify(&x)?;
            println!("open: {}", class.open);
            println!("closed: {}", class.closed);
            println!("clopen: {}", class.clopen);
            println!("dense: {}", class.dense);
            println!("interior = {}", class.interior);
            println!("closure = {}", class.closure);
            Ok(0)
        }
        TopoCommand::Dot { topology, output } => {
            let t = io::read_topology(&topology)?.topology;
            emit(&dot::topology_dot(&t), output.as_deref())?;
            Ok(0)
        }
    }
}

fn run_space(cmd: SpaceCommand) -> Result<u8, Failure> {
    match cmd {
        SpaceCommand::Build { topology, output, dot: as_dot } => {
            let t = io::read_topology(&topology)?.topology;
            let star = space::star_topology(&t);
            let text = if as_dot { dot::set_topology_dot(&star) } else { io::format_space(&star) };
            emit(&text, output.as_deref())?;
            Ok(0)
        }
        SpaceCommand::Check { topology } => {
            let t = io::read_topology(&topology)?.topology;
            let star = space::star_topology(&t);
            let report = space::check_isomorphism(&t, &star);
            println!("isomorphic: {}", report.isomorphic);
            if let Some(witness) = &report.witness {
                println!("witness: {witness}");
            }
            Ok(if report.isomorphic { 0 } else { EXIT_FALSE })
        }
    }
}

fn run_map(cmd: MapCommand) -> Result<u8, Failure> {
    match cmd {
        MapCommand::Image { mapping, shape, output } => {
            let f = io::read_mapping(&mapping)?;
            let x = io::read_shape(&shape)?;
            emit(&io::format_shape(&f.image(&x)?), output.as_deref())?;
            Ok(0)
        }
        MapCommand::Preimage { mapping, shape, domain } => {
            let f = io::read_mapping(&mapping)?;
            let y = io::read_shape(&shape)?;
            let d = io::read_shape(&domain)?;
            match f.preimage(&y, &d)? {
                Preimage::Defined(result) => {
                    print!("{}", io::format_shape(&result));
                    Ok(0)
                }
                Preimage::Undefined => {
                    println!("undefined");
                    Ok(EXIT_FALSE)
                }
            }
        }
        MapCommand::Continuous { mapping, source, target } => {
            let f = io::read_mapping(&mapping)?;
            let src = io::read_topology(&source)?.topology;
            let tgt = io::read_topology(&target)?.topology;
            let report = f.is_continuous(&src, &tgt)?;
            println!("continuous: {}", report.continuous);
            if let Some(violation) = &report.violation {
                println!("violation: {violation}");
            }
            println!("injective: {}", report.injective);
            println!("f* table:");
            for (open, pre) in &report.table {
                println!("  {open} -> {pre}");
            }
            Ok(if report.continuous { 0 } else { EXIT_FALSE })
        }
    }
}

fn run_conn(cmd: ConnCommand) -> Result<u8, Failure> {
    match cmd {
        ConnCommand::Report { shape, topology } => {
            let s = io::read_shape(&shape)?;
            let t = io::read_topology(&topology)?.topology;
            let report = connect::connectivity_report(&s, &t)?;
            println!("structurally connected: {}", report.structurally_connected);
            if let Some(sep) = &report.witness {
                println!("separation: {} | {}", sep.left, sep.right);
            }
            println!("visually connected: {}", report.visually_connected);
            println!("locally connected: {}", report.locally_connected);
            println!("totally disconnected: {}", report.totally_disconnected);
            Ok(0)
        }
        ConnCommand::Totally { topology } => {
            let t = io::read_topology(&topology)?.topology;
            let report = connect::total_disconnection(&t);
            println!("by definition: {}", report.by_definition);
            println!("disjoint reduced basis: {}", report.disjoint_reduced_basis);
            println!("all clopen: {}", report.all_clopen);
            println!("boolean algebra: {}", report.boolean_algebra);
            println!("conditions agree: {}", report.conditions_agree);
            println!("totally disconnected: {}", report.totally_disconnected);
            Ok(if report.totally_disconnected { 0 } else { EXIT_FALSE })
        }
    }
}

fn run_oracle(cmd: OracleCommand) -> Result<u8, Failure> {
    match cmd {
        OracleCommand::Enum { n } => {
            let families = oracle::enumerate_set_topologies(n)?;
            println!("{} topologies on {} points", families.len(), n);
            for family in &families {
                let sets: Vec<String> = family
                    .iter()
                    .map(|s| {
                        let indices: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                        format!("{{{}}}", indices.join(","))
                    })
                    .collect();
                println!("{}", sets.join(" "));
            }
            Ok(0)
        }
        OracleCommand::U0 { op, a, b } => {
            let sa = io::read_shape(&a)?;
            let sb = io::read_shape(&b)?;
            match op.as_str() {
                "sum" => emit(&io::format_shape(&oracle::u0_sum(&sa, &sb)?), None)?,
                "product" => emit(&io::format_shape(&oracle::u0_product(&sa, &sb)?), None)?,
                "diff" => emit(&io::format_shape(&oracle::u0_difference(&sa, &sb)?), None)?,
                "partof" => {
                    let verdict = oracle::u0_part_of(&sa, &sb)?;
                    println!("{verdict}");
                    return Ok(if verdict { 0 } else { EXIT_FALSE });
                }
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown u0 op '{other}' (expected sum, product, diff or partof)"
                    )))
                }
            }
            Ok(0)
        }
        OracleCommand::Preimage { mapping, shape, domain } => {
            let f = io::read_mapping(&mapping)?;
            let y = io::read_shape(&shape)?;
            let d = io::read_shape(&domain)?;
            match oracle::brute_preimage(&f, &y, &d)? {
                Preimage::Defined(result) => {
                    print!("{}", io::format_shape(&result));
                    Ok(0)
                }
                Preimage::Undefined => {
                    println!("undefined");
                    Ok(EXIT_FALSE)
                }
            }
        }
    }
}
