//! Command line front end: reads exact-rational point files, wraps the
//! library operations, and prints reproducible JSON reports.
//!
//! Exit codes: 0 ok, 2 parse error, 3 precondition violation, 4
//! undecidable dimension (3D classification), 5 lattice requested for
//! an infinite input. Timing goes to stderr so stdout stays
//! byte-identical across runs.

use chlattice::classifier::{self, ForbiddenKind, Verdict, Witness};
use chlattice::completion::{self, Budget, Status};
use chlattice::config::{self, Configuration, FamilySpec};
use chlattice::geom::Point;
use chlattice::lattice;
use chlattice::rational::{format_rational, parse_rational, Rational};
use chlattice::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(name = "chlattice", version, about = "Exact lattices of point-generated convex sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Diagram,
}

#[derive(Subcommand)]
enum Cmd {
    /// Close the input under segment (and triangle) intersections
    Complete {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 512)]
        budget_points: usize,
        #[arg(long, default_value_t = 64)]
        budget_rounds: usize,
    },
    /// Decide finite completability of a planar input
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Enumerate the finite lattice of the (auto-completed) input
    Lattice {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = 512)]
        budget_points: usize,
        #[arg(long, default_value_t = 64)]
        budget_rounds: usize,
    },
    /// Print the canonical realization of a family as a point file
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
    },
    /// Test two point files for configuration equivalence
    Equiv {
        input_a: PathBuf,
        input_b: PathBuf,
    },
    /// List the canonical configuration classes of a given size
    Catalog {
        #[arg(long)]
        n: usize,
    },
    /// Count subconfigurations equivalent to a catalog pattern
    Count {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        pattern: String,
    },
    /// Apply the cross operator, lifting the input one dimension up
    Cross {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        c: String,
        #[arg(long, default_value = "1")]
        h: String,
    },
    /// Iterate the descending V5 transformation from the canonical V5
    V5demo {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

fn fail(code: i32, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::ClassifierDimension => 4,
            Error::InfiniteLattice => 5,
            Error::DuplicatePoints | Error::DimensionMismatch => 2,
            _ => 3,
        };
        fail(code, e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
struct PointFile {
    dim: usize,
    points: Vec<Vec<String>>,
}

impl PointFile {
    fn of(c: &Configuration) -> PointFile {
        PointFile {
            dim: c.dim(),
            points: c.points().iter().map(coords_out).collect(),
        }
    }
}

fn coords_out(p: &Point) -> Vec<String> {
    p.coords().iter().map(format_rational).collect()
}

fn read_input(path: &Path) -> Result<(Configuration, String), Failure> {
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| fail(2, format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read(path).map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?
    };
    let digest = format!("sha256:{:x}", Sha256::digest(&bytes));
    let pf: PointFile =
        serde_json::from_slice(&bytes).map_err(|e| fail(2, format!("invalid point file: {e}")))?;
    let mut points = Vec::with_capacity(pf.points.len());
    for row in &pf.points {
        if row.len() != pf.dim {
            return Err(fail(2, "coordinate row length does not match dim"));
        }
        let coords: Result<Vec<Rational>, String> =
            row.iter().map(|s| parse_rational(s)).collect();
        points.push(Point::new(coords.map_err(|e| fail(2, e))?));
    }
    let cfg = Configuration::new(pf.dim, points).map_err(Failure::from)?;
    Ok((cfg, digest))
}

fn report(command: &str, input_digest: Value, budget: Option<&Budget>, result: Value) -> Value {
    json!({
        "command": command,
        "input_digest": input_digest,
        "budget": budget.map(|b| json!({
            "max_points": b.max_points,
            "max_rounds": b.max_rounds,
        })),
        "result": result,
    })
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn family_json(spec: &FamilySpec) -> Value {
    let parameters = match *spec {
        FamilySpec::L { n } | FamilySpec::T { n } => json!({ "n": n }),
        FamilySpec::D { p, q }
        | FamilySpec::I { p, q }
        | FamilySpec::LPlusL { p, q }
        | FamilySpec::TPlusL { p, q } => json!({ "p": p, "q": q }),
        FamilySpec::S6 => Value::Null,
    };
    json!({ "label": spec.tag(), "parameters": parameters, "name": spec.to_string() })
}

fn verdict_json(v: &Verdict) -> Value {
    let witness = v.witness.as_ref().map(|w| match w {
        Witness::Forbidden { kind, indices } => {
            let kind = match kind {
                ForbiddenKind::V5 => "v5",
                ForbiddenKind::BPosition => "b_position",
                ForbiddenKind::GeneralPosition => "general_position",
            };
            json!({ "kind": kind, "indices": indices.to_vec() })
        }
        Witness::Embedding(m) => json!({ "kind": "embedding", "map": m.map().to_vec() }),
    });
    let mut out = json!({ "finite": v.finite, "witness": witness });
    let fam = v
        .label
        .as_ref()
        .map(family_json)
        .unwrap_or(Value::Null);
    out["family"] = fam;
    out
}

fn classify_value(x: &Configuration) -> Result<Value, Failure> {
    Ok(verdict_json(&classifier::recognize_family(x)?))
}

fn parse_family(tag: &str, n: Option<usize>, p: Option<usize>, q: Option<usize>) -> Result<FamilySpec, Failure> {
    let need_n = || n.ok_or_else(|| fail(3, "this family needs --n"));
    let need_pq = || match (p, q) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(fail(3, "this family needs --p and --q")),
    };
    let spec = match tag {
        "L" => FamilySpec::L { n: need_n()? },
        "T" => FamilySpec::T { n: need_n()? },
        "D" => {
            let (p, q) = need_pq()?;
            FamilySpec::D { p, q }
        }
        "I" => {
            let (p, q) = need_pq()?;
            FamilySpec::I { p, q }
        }
        "S6" => FamilySpec::S6,
        "LplusL" | "L+L" => {
            let (p, q) = need_pq()?;
            FamilySpec::LPlusL { p, q }
        }
        "TplusL" | "T+L" => {
            let (p, q) = need_pq()?;
            FamilySpec::TPlusL { p, q }
        }
        other => return Err(fail(3, format!("unknown family tag: {other}"))),
    };
    spec.validate().map_err(Failure::from)?;
    Ok(spec)
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Complete {
            input,
            budget_points,
            budget_rounds,
        } => {
            let (x, digest) = read_input(&input)?;
            let budget = Budget {
                max_points: budget_points,
                max_rounds: budget_rounds,
            };
            let r = completion::complete(&x, &budget);
            let classification = if x.dim() == 2 {
                classify_value(&x)?
            } else {
                Value::Null
            };
            let result = json!({
                "status": match r.status {
                    Status::Complete => "complete",
                    Status::BudgetExceeded => "budget_exceeded",
                },
                "original_count": x.len(),
                "added": r.added.iter().map(coords_out).collect::<Vec<_>>(),
                "total_count": r.points.len(),
                "rounds": r.rounds,
                "classification": classification,
            });
            emit(&report("complete", json!(digest), Some(&budget), result));
        }
        Cmd::Classify { input } => {
            let (x, digest) = read_input(&input)?;
            if x.dim() == 3 {
                return Err(fail(4, "3D classification undecided"));
            }
            let result = classify_value(&x)?;
            emit(&report("classify", json!(digest), None, result));
        }
        Cmd::Lattice {
            input,
            format,
            budget_points,
            budget_rounds,
        } => {
            let (x, digest) = read_input(&input)?;
            let budget = Budget {
                max_points: budget_points,
                max_rounds: budget_rounds,
            };
            let done = completion::complete(&x, &budget);
            if done.status != Status::Complete {
                return Err(fail(5, "completion did not terminate: the lattice is infinite (or over budget)"));
            }
            let d = lattice::enumerate_rlat(&done.points).map_err(|e| match e {
                Error::InfiniteLattice => fail(5, e.to_string()),
                other => Failure::from(other),
            })?;
            let atomistic = lattice::is_atomistic(&d);
            match format {
                Format::Json => {
                    let result = json!({
                        "added_during_completion": done.added.iter().map(coords_out).collect::<Vec<_>>(),
                        "element_count": d.len(),
                        "atomistic": atomistic,
                        "elements": d.elements.iter()
                            .map(|e| e.iter().copied().collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                        "covers": d.covers.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
                    });
                    emit(&report("lattice", json!(digest), Some(&budget), result));
                }
                Format::Diagram => {
                    println!("// elements: {}", d.len());
                    println!("// atomistic: {atomistic}");
                    print!("{}", lattice::to_dot(&d));
                }
            }
        }
        Cmd::Gen { family, n, p, q } => {
            let spec = parse_family(&family, n, p, q)?;
            let x = config::realize(spec).map_err(Failure::from)?;
            emit(&serde_json::to_value(PointFile::of(&x)).expect("serializable"));
        }
        Cmd::Equiv { input_a, input_b } => {
            let (a, da) = read_input(&input_a)?;
            let (b, db) = read_input(&input_b)?;
            let witness = config::equivalent(&a, &b);
            let result = json!({
                "equivalent": witness.is_some(),
                "witness": witness.map(|m| m.map().to_vec()),
            });
            emit(&report("equiv", json!([da, db]), None, result));
        }
        Cmd::Catalog { n } => {
            let entries = config::catalog(n)
                .map_err(|_| fail(3, "catalog covers sizes 1 through 5"))?;
            let result = json!({
                "n": n,
                "entries": entries.iter().map(|e| json!({
                    "name": e.name,
                    "points": e.config.points().iter().map(coords_out).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            emit(&report("catalog", Value::Null, None, result));
        }
        Cmd::Count { input, pattern } => {
            let (x, digest) = read_input(&input)?;
            let z = (1..=5)
                .flat_map(|n| config::catalog(n).expect("catalog range"))
                .find(|e| e.name == pattern)
                .ok_or_else(|| fail(3, format!("unknown pattern: {pattern}")))?;
            let count = config::count_subconfigs(&x, &z.config);
            let result = json!({ "pattern": z.name, "count": count });
            emit(&report("count", json!(digest), None, result));
        }
        Cmd::Cross { input, c, h } => {
            let (x, digest) = read_input(&input)?;
            let coords: Result<Vec<Rational>, String> =
                c.split(',').map(|s| parse_rational(s.trim())).collect();
            let cpt = Point::new(coords.map_err(|e| fail(2, e))?);
            let height = parse_rational(h.trim()).map_err(|e| fail(2, e))?;
            let y = completion::cross(&x, &cpt, &height).map_err(Failure::from)?;
            let result = json!({
                "c": coords_out(&cpt),
                "h": format_rational(&height),
                "dim": y.dim(),
                "points": y.points().iter().map(coords_out).collect::<Vec<_>>(),
            });
            emit(&report("cross", json!(digest), None, result));
        }
        Cmd::V5demo { k } => {
            let start = config::v5_canonical();
            let steps = completion::v5_descent(&start, k).map_err(Failure::from)?;
            let result = json!({
                "k": k,
                "start": start.points().iter().map(coords_out).collect::<Vec<_>>(),
                "steps": steps.iter().map(|s| {
                    s.points().iter().map(coords_out).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
                "e_chain": steps.iter().map(|s| coords_out(s.point(4))).collect::<Vec<_>>(),
            });
            emit(&report("v5demo", Value::Null, None, result));
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let t0 = Instant::now();
    let outcome = run(cli.cmd);
    eprintln!("elapsed: {} ms", t0.elapsed().as_millis());
    if let Err(f) = outcome {
        eprintln!("error: {}", f.msg);
        std::process::exit(f.code);
    }
}
