use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use braidfan::chisel::{verify_bary, ChiselSchedule};
use braidfan::defcone::{
    check_membership, check_nested_b, check_submodular, defcone_inequalities, diamond_inequalities,
    essential_ren_inequalities, general_defcone_membership, is_deformation, is_rank_function, monotone_shift_k,
    rows_rhs, BVector, PairMode, Verdict,
};
use braidfan::exactgeom::{coarsens, normal_fan, GeneralFan, HPolytope, VPolytope};
use braidfan::fans::{braid_fan, nested_braid_fan, SimplicialFan};
use braidfan::json::{bary_report_to_json, coarsening_to_json, rat_to_json, system_from_json, system_to_json, vec_to_json, Json};
use braidfan::permutohedra::{nested_facet_b, nested_vertices, perm_vertices, usual_facet_b, AlphaBeta};
use braidfan::random::{perturb, random_nested_member, random_submodular, rng, DEFAULT_SEED};
use braidfan::rat::{parse_list, parse_rat, Rat};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Exact computations with Braid fans, nested Braid fans and their
/// deformation cones. Output is JSON on stdout; exit code 0 means success or
/// membership, 1 a well-formed negative answer, 2 an input error.
#[derive(Parser)]
#[command(name = "braidfan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FanKind {
    Braid,
    Nested,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Braid,
    Nested,
    Custom,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the Braid fan or the nested Braid fan.
    Fan {
        #[arg(long, value_enum)]
        kind: FanKind,
        #[arg(long)]
        d: usize,
    },
    /// Emit the wall inequalities of a simplicial fan.
    Defcone {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        d: Option<usize>,
        /// Fan JSON, for `--kind custom`.
        #[arg(long)]
        fan: Option<PathBuf>,
        /// H-polytope JSON whose normal fan is used, for `--kind custom`.
        #[arg(long)]
        p0: Option<PathBuf>,
        /// For `--kind nested`, emit only the diamond and essential inequalities.
        #[arg(long)]
        reduced: bool,
    },
    /// Decide deformation-cone membership of a vector.
    Check {
        /// Inequality system JSON as written by `defcone`.
        #[arg(long, conflicts_with = "kind")]
        system: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long)]
        b: PathBuf,
        /// Expected dimension; must agree with the vector.
        #[arg(long)]
        d: Option<usize>,
        /// H-polytope JSON, for `--kind custom` with a rows vector.
        #[arg(long)]
        p0: Option<PathBuf>,
        /// Fan JSON, for `--kind custom` with the wall engine.
        #[arg(long)]
        fan: Option<PathBuf>,
        /// Only compare each vertex with facets through its edge neighbors.
        #[arg(long)]
        neighboring: bool,
    },
    /// Usual or nested permutohedron: vertices and/or facet values.
    Perm {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long = "M")]
        m: Option<String>,
        #[arg(long = "N")]
        n: Option<String>,
        #[arg(long)]
        facets: bool,
        #[arg(long)]
        vertices: bool,
    },
    /// Whether Q (same normals as P0) is a deformation of P0.
    IsDeformation {
        #[arg(long)]
        p0: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Normal fan of a full-dimensional V-polytope.
    NormalFan {
        #[arg(long)]
        vertices: PathBuf,
    },
    /// Whether every cone of the fine fan lies in a cone of the coarse fan.
    Coarsens {
        #[arg(long)]
        fine: PathBuf,
        #[arg(long)]
        coarse: PathBuf,
    },
    /// Verify that chiseling realizes the (nested) permutohedron.
    ChiselVerify {
        #[arg(long)]
        level: u8,
        #[arg(long)]
        d: usize,
        /// Comma-separated distances; defaults to 5^-i.
        #[arg(long, conflicts_with = "schedule")]
        eps: Option<String>,
        /// Schedule JSON.
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
    /// Polymatroid rank-function conditions on a subset vector.
    RankCheck {
        #[arg(long)]
        b: PathBuf,
    },
    /// Seeded random vector in the Braid or nested deformation cone.
    RandomB {
        #[arg(long, value_enum)]
        kind: FanKind,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Move one entry afterwards, usually leaving the cone.
        #[arg(long)]
        perturb: bool,
    },
}

struct Output {
    value: Value,
    positive: bool,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, positive: true }
    }
}

fn read<T: Json>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    T::parse_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_value(path: &Path) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn need_d(d: Option<usize>) -> anyhow::Result<usize> {
    d.context("--d is required for this kind")
}

fn fan_of(kind: FanKind, d: usize) -> anyhow::Result<SimplicialFan> {
    Ok(match kind {
        FanKind::Braid => braid_fan(d)?,
        FanKind::Nested => nested_braid_fan(d)?,
    })
}

fn custom_fan(fan: Option<&Path>, p0: Option<&Path>) -> anyhow::Result<SimplicialFan> {
    match (fan, p0) {
        (Some(f), None) => Ok(SimplicialFan::from_general(&read::<GeneralFan>(f)?)?),
        (None, Some(p)) => Ok(SimplicialFan::from_hpolytope(&read::<HPolytope>(p)?)?),
        _ => bail!("--kind custom needs exactly one of --fan or --p0"),
    }
}

fn verdict(v: Verdict) -> Output {
    Output { positive: v.member, value: v.to_json() }
}

fn parse_opt(s: &Option<String>, name: &str) -> anyhow::Result<Rat> {
    let s = s.as_deref().with_context(|| format!("--{name} is required with --beta"))?;
    Ok(parse_rat(s)?)
}

fn run(cmd: Command) -> anyhow::Result<Output> {
    match cmd {
        Command::Fan { kind, d } => Ok(Output::ok(fan_of(kind, d)?.to_general().to_json())),
        Command::Defcone { kind, d, fan, p0, reduced } => {
            let (name, ineqs) = match kind {
                Kind::Braid => ("braid", defcone_inequalities(&braid_fan(need_d(d)?)?)?),
                Kind::Nested if reduced => {
                    let d = need_d(d)?;
                    let mut all = diamond_inequalities(d);
                    all.extend(essential_ren_inequalities(d));
                    ("nested-reduced", all)
                }
                Kind::Nested => ("nested", defcone_inequalities(&nested_braid_fan(need_d(d)?)?)?),
                Kind::Custom => ("custom", defcone_inequalities(&custom_fan(fan.as_deref(), p0.as_deref())?)?),
            };
            Ok(Output::ok(system_to_json(name, d, &ineqs)))
        }
        Command::Check { system, kind, b, d, p0, fan, neighboring } => {
            let b: BVector = read(&b)?;
            if let Some(d) = d.filter(|&d| d != b.d) {
                bail!("--d {d} does not match the vector's d = {}", b.d);
            }
            if let Some(path) = system {
                return Ok(verdict(check_membership(&system_from_json(&read_value(&path)?)?, &b)?));
            }
            match kind.context("one of --system or --kind is required")? {
                Kind::Braid => Ok(verdict(check_submodular(&b)?)),
                Kind::Nested => Ok(verdict(check_nested_b(&b)?)),
                Kind::Custom => match (p0, fan) {
                    (Some(p), None) => {
                        let p0: HPolytope = read(&p)?;
                        let (rhs, eq) = rows_rhs(&p0, &b)?;
                        let mode = if neighboring { PairMode::Neighboring } else { PairMode::Full };
                        Ok(verdict(general_defcone_membership(&p0, &rhs, eq, mode)?))
                    }
                    (None, Some(f)) => {
                        let fan = SimplicialFan::from_general(&read::<GeneralFan>(&f)?)?;
                        Ok(verdict(check_membership(&defcone_inequalities(&fan)?, &b)?))
                    }
                    _ => bail!("--kind custom needs exactly one of --p0 or --fan"),
                },
            }
        }
        Command::Perm { alpha, beta, m, n, facets, vertices } => {
            let alpha = parse_list(&alpha)?;
            let (verts, b) = match beta {
                Some(beta) => {
                    let ab = AlphaBeta::new(alpha, parse_list(&beta)?, parse_opt(&m, "M")?, parse_opt(&n, "N")?)?;
                    (nested_vertices(&ab)?, nested_facet_b(&ab)?)
                }
                None => (perm_vertices(&alpha)?, usual_facet_b(&alpha)?),
            };
            let both = facets == vertices;
            let mut out = serde_json::Map::new();
            if vertices || both {
                out.insert("vertices".into(), verts.to_json());
            }
            if facets || both {
                out.insert("facets".into(), b.to_json());
            }
            Ok(Output::ok(Value::Object(out)))
        }
        Command::IsDeformation { p0, q } => {
            let def = is_deformation(&read(&p0)?, &read(&q)?)?;
            Ok(Output {
                positive: def.verdict.member,
                value: json!({"deformation": def.verdict.member, "tight_rhs": vec_to_json(&def.tight_rhs), "verdict": def.verdict.to_json()}),
            })
        }
        Command::NormalFan { vertices } => Ok(Output::ok(normal_fan(&read::<VPolytope>(&vertices)?)?.to_json())),
        Command::Coarsens { fine, coarse } => {
            let c = coarsens(&read(&fine)?, &read(&coarse)?);
            Ok(Output { positive: c.holds, value: coarsening_to_json(&c) })
        }
        Command::ChiselVerify { level, d, eps, schedule } => {
            let sched = match (eps, schedule) {
                (Some(e), None) => ChiselSchedule::new(parse_list(&e)?, level)?,
                (None, Some(p)) => read(&p)?,
                _ => ChiselSchedule::default_for(d, level),
            };
            let r = verify_bary(level, d, &sched)?;
            Ok(Output { positive: r.pass, value: bary_report_to_json(&r) })
        }
        Command::RankCheck { b } => {
            let b: BVector = read(&b)?;
            let v = is_rank_function(&b)?;
            let k = monotone_shift_k(&b)?;
            Ok(Output {
                positive: v.member,
                value: json!({"member": v.member, "certificate": v.to_json()["certificate"], "monotone_shift_k": rat_to_json(&k)}),
            })
        }
        Command::RandomB { kind, d, seed, perturb: shift } => {
            let mut r = rng(seed);
            let b = match kind {
                FanKind::Braid => random_submodular(&mut r, d),
                FanKind::Nested => random_nested_member(&mut r, d)?,
            };
            let b = if shift { perturb(&mut r, &b) } else { b };
            Ok(Output::ok(b.to_json()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.value).expect("values serialize"));
            if out.positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
