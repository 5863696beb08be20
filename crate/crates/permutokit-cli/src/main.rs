//! `permutokit` command-line front end.
//!
//! Every command prints deterministic JSON (or SVG for the render commands):
//! identical argv and seed give byte-identical output. Exit codes: 0 on
//! success with all checks passing, 1 when a check fails, 2 on usage errors,
//! 3 on pole or degenerate-input errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use permutokit::amplitudes::{m_alpha_restricted, m_restricted, QPoint};
use permutokit::associahedron::{cyclic_action_check, AssocSpec};
use permutokit::checks;
use permutokit::kinematics::ConstantMatrix;
use permutokit::rational::{format_rat, parse_rat, parse_rat_vec, Rat};
use permutokit::roottrees::enumerate_trees;
use permutokit::zonotope::Zonotope;
use permutokit::{Error, NearestNeighborPoint, SCHEMA};

#[derive(Parser)]
#[command(name = "permutokit", version, about = "Exact polyhedral geometry in kinematic space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Zonotopal generalized permutohedron operations.
    Zonotope {
        #[command(subcommand)]
        action: ZonotopeAction,
    },
    /// Kinematic associahedron operations.
    Assoc {
        #[command(subcommand)]
        action: AssocAction,
    },
    /// Emit the tree triangulation of the standard root cone.
    Triangulate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Amplitude evaluations on the nearest-neighbor subspace.
    Amplitude {
        #[command(subcommand)]
        action: AmplitudeAction,
    },
    /// Run a named identity/property check with seeded sampling.
    Check {
        name: CheckName,
        /// Particle-count parameter (checks indexed by n).
        #[arg(long)]
        n: Option<usize>,
        /// Leaf-count parameter (checks indexed by m).
        #[arg(long)]
        m: Option<usize>,
        /// Sample points per configuration.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Constant-matrix draws (alternating-sum, minkowski, supermodularity).
        #[arg(long, default_value_t = 10)]
        draws: usize,
        /// RNG seed; falls back to PERMUTOKIT_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Reduced sizes (n, m <= 4) for `check all`.
        #[arg(long)]
        small: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ZonotopeAction {
    /// Vertex set, H-representation, and slice equality as JSON.
    Vertices {
        #[arg(long)]
        n: usize,
        /// Constant entries, repeated: --c i,j=p/q (unset pairs are zero).
        #[arg(long = "c")]
        constants: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact membership of a slice point.
    Contains {
        #[arg(long)]
        n: usize,
        #[arg(long = "c")]
        constants: Vec<String>,
        /// Point coordinates, comma separated rationals.
        #[arg(long)]
        x: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG of the hexagon (n = 3 only).
    Render {
        #[arg(long)]
        n: usize,
        #[arg(long = "c")]
        constants: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AssocAction {
    /// Facet inequalities and the slice equality.
    Facets {
        #[arg(long)]
        n: usize,
        #[arg(long = "c")]
        constants: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vertex set from the Minkowski realization.
    Vertices {
        #[arg(long)]
        n: usize,
        #[arg(long = "c")]
        constants: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the cyclic relabeling permutes the facet index sets.
    CyclicCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG of the pentagon (N = 4 only).
    Render {
        #[arg(long)]
        n: usize,
        #[arg(long = "c")]
        constants: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AmplitudeAction {
    /// m restricted to the nearest-neighbor subspace.
    M {
        /// Adjacent invariants s_12,s_23,..., comma separated rationals.
        #[arg(long)]
        s: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The q-deformed amplitude (1 - prod q)/prod(1 - q).
    Malpha {
        /// q-variables, comma separated rationals with q_i != 1.
        #[arg(long)]
        q: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckName {
    AlternatingSum,
    Supermodularity,
    Minkowski,
    LtTriangulation,
    CyclicSum,
    DiscreteIe,
    Mizera,
    Partition,
    Duality,
    All,
}

fn parse_constant_args(args: &[String]) -> Result<Vec<(usize, usize, Rat)>, Error> {
    args.iter()
        .map(|spec| {
            let (pair, value) = spec
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected i,j=p/q, got {spec:?}")))?;
            let (i, j) = pair
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected i,j=p/q, got {spec:?}")))?;
            let i: usize = i
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad label in {spec:?}")))?;
            let j: usize = j
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad label in {spec:?}")))?;
            Ok((i, j, parse_rat(value)?))
        })
        .collect()
}

fn seed_from(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("PERMUTOKIT_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InconsistentInput(format!("cannot write {path:?}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.write_all(b"\n"))
                .map_err(|e| Error::InconsistentInput(format!("stdout: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Zonotope { action } => match action {
            ZonotopeAction::Vertices { n, constants, out } => {
                let d = ConstantMatrix::from_pairs(n, &parse_constant_args(&constants)?)?;
                let z = Zonotope::new(d);
                emit(&z.to_json()?.to_string(), &out)?;
                Ok(0)
            }
            ZonotopeAction::Contains { n, constants, x, out } => {
                let d = ConstantMatrix::from_pairs(n, &parse_constant_args(&constants)?)?;
                let z = Zonotope::new(d);
                let point = parse_rat_vec(&x)?;
                let inside = z.contains(&point)?;
                let doc = json!({
                    "schema": SCHEMA,
                    "n": n,
                    "x": point.iter().map(format_rat).collect::<Vec<_>>(),
                    "contains": inside,
                });
                emit(&doc.to_string(), &out)?;
                Ok(0)
            }
            ZonotopeAction::Render { n, constants, out } => {
                let d = ConstantMatrix::from_pairs(n, &parse_constant_args(&constants)?)?;
                emit(&Zonotope::new(d).to_svg()?, &out)?;
                Ok(0)
            }
        },
        Command::Assoc { action } => match action {
            AssocAction::Facets { n, constants, out } => {
                let a = AssocSpec::new(n, &parse_constant_args(&constants)?)?;
                let doc = json!({
                    "schema": SCHEMA,
                    "sides": n,
                    "facets": a.facets().iter().map(|((lo, hi), bound)| json!({
                        "interval": [lo, hi],
                        "bound": format_rat(bound),
                    })).collect::<Vec<_>>(),
                    "equality": {
                        "interval": [1, n],
                        "bound": format_rat(&a.total()),
                    },
                });
                emit(&doc.to_string(), &out)?;
                Ok(0)
            }
            AssocAction::Vertices { n, constants, out } => {
                let a = AssocSpec::new(n, &parse_constant_args(&constants)?)?;
                emit(&a.to_json()?.to_string(), &out)?;
                Ok(0)
            }
            AssocAction::CyclicCheck { n, out } => {
                let preserved = cyclic_action_check(n)?;
                let doc = json!({ "schema": SCHEMA, "sides": n, "preserved": preserved });
                emit(&doc.to_string(), &out)?;
                Ok(if preserved { 0 } else { 1 })
            }
            AssocAction::Render { n, constants, out } => {
                let a = AssocSpec::new(n, &parse_constant_args(&constants)?)?;
                emit(&a.to_svg()?, &out)?;
                Ok(0)
            }
        },
        Command::Triangulate { m, out } => {
            let trees = enumerate_trees(m)?;
            let doc = json!({
                "schema": SCHEMA,
                "m": m,
                "count": trees.len(),
                "trees": trees.iter().map(|t| {
                    t.edges().iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            });
            emit(&doc.to_string(), &out)?;
            Ok(0)
        }
        Command::Amplitude { action } => match action {
            AmplitudeAction::M { s, out } => {
                let adjacent = parse_rat_vec(&s)?;
                let point = NearestNeighborPoint::new(adjacent)?;
                let value = m_restricted(&point)?;
                let doc = json!({
                    "schema": SCHEMA,
                    "n": point.n(),
                    "s": point.adjacent().iter().map(format_rat).collect::<Vec<_>>(),
                    "value": format_rat(&value),
                });
                emit(&doc.to_string(), &out)?;
                Ok(0)
            }
            AmplitudeAction::Malpha { q, out } => {
                let point = QPoint::new(parse_rat_vec(&q)?)?;
                let value = m_alpha_restricted(&point)?;
                let doc = json!({
                    "schema": SCHEMA,
                    "n": point.n(),
                    "q": point.q().iter().map(format_rat).collect::<Vec<_>>(),
                    "value": format_rat(&value),
                });
                emit(&doc.to_string(), &out)?;
                Ok(0)
            }
        },
        Command::Check {
            name,
            n,
            m,
            samples,
            draws,
            seed,
            small,
            out,
        } => {
            let seed = seed_from(seed);
            let reports = match name {
                CheckName::AlternatingSum => {
                    vec![checks::check_alternating_sum(n.unwrap_or(3), draws, samples, seed)?]
                }
                CheckName::Supermodularity => {
                    vec![checks::check_supermodularity_random(n.unwrap_or(4), draws, seed)?]
                }
                CheckName::Minkowski => {
                    vec![checks::check_minkowski(n.unwrap_or(3), draws, samples, seed)?]
                }
                CheckName::LtTriangulation => {
                    vec![checks::check_lt_triangulation(m.unwrap_or(4), samples, seed)?]
                }
                CheckName::CyclicSum => {
                    vec![checks::check_cyclic_sum(m.unwrap_or(4), samples, seed)?]
                }
                CheckName::DiscreteIe => {
                    vec![checks::check_discrete_ie(m.unwrap_or(4), samples, seed)?]
                }
                CheckName::Mizera => vec![checks::check_mizera(n.unwrap_or(5), samples, seed)?],
                CheckName::Partition => {
                    vec![checks::check_partition(m.unwrap_or(4), samples, seed)?]
                }
                CheckName::Duality => vec![checks::check_duality(m.unwrap_or(4), seed)?],
                CheckName::All => checks::run_all(small, seed)?,
            };
            let passed = reports.iter().all(|r| r.passed);
            let doc = if reports.len() == 1 {
                reports[0].to_json()
            } else {
                checks::reports_to_json(&reports)
            };
            emit(&doc.to_string(), &out)?;
            Ok(if passed { 0 } else { 1 })
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Pole(_)
        | Error::InconsistentInput(_)
        | Error::OutOfRange { .. }
        | Error::DegenerateSystem(_) => 3,
        Error::Parse(_)
        | Error::DimensionMismatch { .. }
        | Error::InvalidLabel(_)
        | Error::EmptySubset
        | Error::OverlappingSubsets => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let doc = json!({
                "schema": SCHEMA,
                "error": {
                    "kind": format!("{e:?}").split(['(', ' ']).next().unwrap_or("error"),
                    "message": e.to_string(),
                },
            });
            eprintln!("{doc}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
