use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polargeom::verify::{self, Sampling, Verdict};
use polargeom::{
    frame_through, max_singular_count, split_families, DualPolarSpace, Family, Field, FormKind,
    GeometryError, Gf2, Gf3, GrassmannGraph, PointLineGeometry, PolarSpace, TypeTag,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "polargeom",
    version,
    about = "Finite polar spaces, dual polar and half-spin Grassmann spaces"
)]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Refuse spaces with more maximal singular subspaces (or Grassmann vertices) than this.
    #[arg(long, global = true, default_value_t = 10_000)]
    budget: u128,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Add `elapsed_ms` to JSON output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Symplectic,
    Quadric,
}

impl From<Kind> for FormKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Symplectic => FormKind::Symplectic,
            Kind::Quadric => FormKind::Quadratic,
        }
    }
}

#[derive(Args, Clone)]
struct SpaceArgs {
    /// Form type.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Witt index (rank).
    #[arg(long)]
    n: Option<usize>,
    /// Field order, 2 or 3.
    #[arg(long, default_value_t = 2)]
    q: u8,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum CheckName {
    Theorem1,
    Counterexample,
    Lines,
    Grassmann,
    Axioms,
    DistanceFormula,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Adjlist,
}

#[derive(Clone, Copy, ValueEnum)]
enum QueryOp {
    Distance,
    Opposite,
    Collinear,
    IntersectionDim,
    Member,
}

#[derive(Subcommand)]
enum Command {
    /// Counts and type of a polar space.
    Stats {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Run a verification and print its verdict.
    Check {
        #[arg(value_enum)]
        name: CheckName,
        #[command(flatten)]
        space: SpaceArgs,
        /// Scan every pair instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        /// Pairs to sample (default 200 for theorem1, 10000 for distance-formula).
        #[arg(long)]
        samples: Option<usize>,
        /// Restrict half-spin checks to one family.
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        /// Ambient dimension for `grassmann`.
        #[arg(long)]
        d: Option<usize>,
        /// Subspace dimension for `grassmann`.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Print a collinearity graph.
    #[command(name = "export-graph", alias = "export")]
    Export {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        /// Export a half-spin family instead of the dual polar graph.
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        /// Export the Grassmann graph of k-subspaces of GF(q)^d.
        #[arg(long, num_args = 2, value_names = ["D", "K"])]
        grassmann: Option<Vec<usize>>,
    },
    /// Relation between two maximals given by canonical ID.
    Query {
        #[arg(value_enum)]
        op: QueryOp,
        a: usize,
        b: Option<usize>,
        #[command(flatten)]
        space: SpaceArgs,
        /// Use half-spin relations within this family.
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
    },
    /// A frame spanning two maximals given by canonical ID.
    FrameThrough {
        a: usize,
        b: usize,
        #[command(flatten)]
        space: SpaceArgs,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

/// A usage or configuration error, reported with exit code 2.
struct Failure(String);

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<Value, Failure>;

struct Ctx {
    budget: u128,
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx {
        budget: cli.budget,
        seed: cli.seed,
    };
    let start = Instant::now();
    let outcome = run(&ctx, &cli.command);
    let elapsed = start.elapsed().as_millis() as u64;
    let (mut value, code) = match outcome {
        Ok((value, passed)) => (value, if passed { 0 } else { 1 }),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &mut value {
        Value::String(text) => {
            let _ = write!(io::stdout(), "{text}");
        }
        v => {
            if cli.timing {
                if let Value::Object(map) = v {
                    map.insert("elapsed_ms".into(), json!(elapsed));
                }
            }
            let _ = writeln!(
                io::stdout(),
                "{}",
                serde_json::to_string_pretty(v).expect("json")
            );
        }
    }
    ExitCode::from(code)
}

fn run(ctx: &Ctx, cmd: &Command) -> Result<(Value, bool), Failure> {
    let space = match cmd {
        Command::Check {
            name: CheckName::Grassmann,
            space,
            ..
        } => {
            return match space.q {
                2 => grassmann_check::<Gf2>(ctx, cmd),
                3 => grassmann_check::<Gf3>(ctx, cmd),
                q => Err(usage(format!("unsupported field order {q}, use 2 or 3"))),
            }
        }
        Command::Export {
            grassmann: Some(_),
            space,
            ..
        } => {
            return match space.q {
                2 => grassmann_export::<Gf2>(ctx, cmd),
                3 => grassmann_export::<Gf3>(ctx, cmd),
                q => Err(usage(format!("unsupported field order {q}, use 2 or 3"))),
            }
        }
        Command::Stats { space }
        | Command::Check { space, .. }
        | Command::Export { space, .. }
        | Command::Query { space, .. }
        | Command::FrameThrough { space, .. } => space,
    };
    match space.q {
        2 => dispatch::<Gf2>(ctx, cmd, space),
        3 => dispatch::<Gf3>(ctx, cmd, space),
        q => Err(usage(format!("unsupported field order {q}, use 2 or 3"))),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(msg.into())
}

fn build_space<F: Field>(ctx: &Ctx, args: &SpaceArgs) -> Result<PolarSpace<F>, Failure> {
    let kind: FormKind = args.kind.ok_or_else(|| usage("--kind is required"))?.into();
    let n = args.n.ok_or_else(|| usage("--n is required"))?;
    if n < 2 {
        return Err(usage(format!("--n must be at least 2, got {n}")));
    }
    let estimate = max_singular_count(kind, n as u32, F::ORDER as u128);
    if estimate > ctx.budget {
        return Err(GeometryError::OverBudget {
            estimate,
            budget: ctx.budget,
        }
        .into());
    }
    eprintln!("building {kind} space of rank {n} over GF({})", F::ORDER);
    Ok(PolarSpace::standard(kind, n)?)
}

fn families<F: Field>(
    dps: &DualPolarSpace<F>,
    only: Option<Family>,
) -> Result<Vec<polargeom::HalfSpinSpace<'_, F>>, Failure> {
    let (plus, minus) = split_families(dps)?;
    Ok(match only {
        Some(Family::Plus) => vec![plus],
        Some(Family::Minus) => vec![minus],
        None => vec![plus, minus],
    })
}

fn verdict(v: Verdict) -> (Value, bool) {
    eprintln!(
        "{} {}: {} ({} pairs, {} failures)",
        v.check,
        v.space,
        if v.passed { "PASS" } else { "FAIL" },
        v.pairs_checked,
        v.failure_count
    );
    let passed = v.passed;
    (serde_json::to_value(&v).expect("json"), passed)
}

fn dispatch<F: Field>(
    ctx: &Ctx,
    cmd: &Command,
    args: &SpaceArgs,
) -> Result<(Value, bool), Failure> {
    let space = build_space::<F>(ctx, args)?;
    let name = space.name();
    match cmd {
        Command::Stats { .. } => Ok((stats(space)?, true)),
        Command::Check {
            name: check,
            exhaustive,
            samples,
            family,
            ..
        } => {
            let sampling = |default: usize| {
                if *exhaustive {
                    Sampling::Exhaustive
                } else {
                    Sampling::Sampled {
                        pairs: samples.unwrap_or(default),
                        seed: ctx.seed,
                    }
                }
            };
            let v = match check {
                CheckName::Lines => verify::verify_parametrized_lines(&space)?,
                CheckName::Axioms => axioms(space)?,
                CheckName::Counterexample => {
                    let dps = DualPolarSpace::new(space);
                    Verdict::combine(
                        "counterexample",
                        &name,
                        vec![
                            verify::verify_counterexample(&dps)?,
                            verify::verify_dual_polar_line_witnesses(&dps)?,
                        ],
                    )
                }
                CheckName::Theorem1 => {
                    let dps = DualPolarSpace::new(space);
                    let parts = families(&dps, *family)?
                        .iter()
                        .map(|h| verify::verify_theorem1(h, sampling(200)))
                        .collect::<Result<Vec<_>, _>>()?;
                    Verdict::combine("theorem1", &name, parts)
                }
                CheckName::DistanceFormula => {
                    let dps = DualPolarSpace::new(space);
                    let s = sampling(10_000);
                    let mut parts = vec![verify::verify_dual_polar_distances(&dps, s)?];
                    if dps.space().type_tag() == TypeTag::Dn && dps.rank() >= 3 {
                        for h in families(&dps, *family)? {
                            parts.push(verify::verify_half_spin_distances(&h, s)?);
                        }
                    }
                    Verdict::combine("distance-formula", &name, parts)
                }
                CheckName::Grassmann => unreachable!("handled before dispatch"),
            };
            Ok(verdict(v))
        }
        Command::Export { format, family, .. } => {
            let dps = DualPolarSpace::new(space);
            let text = match family {
                None => match format {
                    Format::Dot => dps.graph().to_dot(&name),
                    Format::Adjlist => dps.graph().to_adjlist(),
                },
                Some(f) => {
                    let h = families(&dps, Some(*f))?.remove(0);
                    let m = h.members();
                    let label = |v: usize| m[v];
                    match format {
                        Format::Dot => h
                            .graph()
                            .to_dot_labelled(&format!("{name} family {f}"), &label),
                        Format::Adjlist => h.graph().to_adjlist_labelled(&label),
                    }
                }
            };
            Ok((Value::String(text), true))
        }
        Command::Query {
            op, a, b, family, ..
        } => {
            let dps = DualPolarSpace::new(space);
            Ok((query(&dps, *op, *a, *b, *family)?, true))
        }
        Command::FrameThrough { a, b, .. } => {
            let dps = DualPolarSpace::new(space);
            let (sa, sb) = (dps.member(*a)?, dps.member(*b)?);
            let frame = frame_through(dps.space(), sa, sb)?;
            let valid = frame.validate(dps.space());
            let pairs: Vec<Value> = frame
                .pairs()
                .iter()
                .map(|(x, y)| json!([format!("{x:?}"), format!("{y:?}")]))
                .collect();
            Ok((
                json!({
                    "space": name,
                    "a": a,
                    "b": b,
                    "pairs": pairs,
                    "spans_a": frame.spans(sa),
                    "spans_b": frame.spans(sb),
                    "valid": valid.is_ok(),
                }),
                valid.is_ok() && frame.spans(sa) && frame.spans(sb),
            ))
        }
    }
}

fn stats<F: Field>(space: PolarSpace<F>) -> Result<Value, Failure> {
    let n = space.rank();
    let counts: Vec<usize> = (1..=n).map(|k| space.singular_subspaces(k).len()).collect();
    let mut out = json!({
        "space": space.name(),
        "kind": space.kind(),
        "n": n,
        "q": F::ORDER,
        "ambient_dim": space.ambient_dim(),
        "type": format!("{:?}", space.type_tag()),
        "num_points": space.points().len(),
        "num_max_singulars": space.max_singulars().len(),
        "product_formula": max_singular_count(space.kind(), n as u32, F::ORDER as u128) as u64,
        "singular_counts": counts,
    });
    let dps = DualPolarSpace::new(space);
    let line_sizes: std::collections::BTreeSet<usize> =
        dps.lines().iter().map(|(_, ids)| ids.len()).collect();
    out["dual_polar"] = json!({
        "points": dps.len(),
        "lines": dps.lines().len(),
        "line_sizes": line_sizes,
        "degree": dps.graph().degree(0),
        "diameter": dps.graph().diameter(),
    });
    if dps.space().type_tag() == TypeTag::Dn {
        let fams: Vec<Value> = families(&dps, None)?
            .iter()
            .map(|h| {
                json!({
                    "family": h.family().to_string(),
                    "points": h.len(),
                    "lines": h.lines().len(),
                    "degree": h.graph().degree(0),
                })
            })
            .collect();
        out["half_spin"] = json!(fams);
    }
    Ok(out)
}

fn axioms<F: Field>(space: PolarSpace<F>) -> Result<Verdict, Failure> {
    let name = space.name();
    let mut v = Verdict::new("axioms", &name, verify::Mode::Exhaustive);
    let check = |v: &mut Verdict, label: &str, r: Result<(), String>| {
        v.pairs_checked += 1;
        if let Err(e) = r {
            v.fail(format!("{label}: {e}"));
        }
    };
    let g = PointLineGeometry::from_polar_space(&space);
    check(&mut v, "polar space", g.check_polar_axioms());
    let expected = (space.rank(), space.type_tag());
    match g.classify() {
        Ok(c) if c == expected => v.detail("classification", format!("{:?}{}", c.1, c.0)),
        other => v.fail(format!("classification {other:?}, expected {expected:?}")),
    }
    let dps = DualPolarSpace::new(space);
    let want = match dps.space().type_tag() {
        TypeTag::Dn => 2,
        TypeTag::Cn => F::ORDER as usize + 1,
    };
    let bad = dps
        .lines()
        .iter()
        .filter(|(_, ids)| ids.len() != want)
        .count();
    v.detail("dual_polar_line_size", want);
    v.detail("dual_polar_lines", dps.lines().len());
    if bad > 0 {
        v.fail(format!("{bad} dual polar lines do not have {want} points"));
    }
    if dps.space().type_tag() == TypeTag::Dn {
        for h in families(&dps, None)? {
            let label = format!("half-spin family {}", h.family());
            let hg = h.geometry();
            match dps.rank() {
                3 => {
                    check(&mut v, &label, hg.check_linear_space());
                    v.detail(&format!("{label} points"), hg.num_points());
                    v.detail(&format!("{label} lines"), hg.lines().len());
                }
                4 => {
                    check(&mut v, &label, hg.check_polar_axioms());
                    match hg.classify() {
                        Ok((4, TypeTag::Dn)) => v.detail(&format!("{label} classification"), "Dn4"),
                        other => v.fail(format!("{label}: classification {other:?}, expected D4")),
                    }
                }
                _ => {}
            }
        }
    }
    Ok(v)
}

fn query<F: Field>(
    dps: &DualPolarSpace<F>,
    op: QueryOp,
    a: usize,
    b: Option<usize>,
    family: Option<Family>,
) -> CmdResult {
    let name = dps.space().name();
    if let QueryOp::Member = op {
        let m = dps.member(a)?;
        return Ok(json!({"space": name, "op": "member", "a": a, "value": m.to_string()}));
    }
    let b = b.ok_or_else(|| usage("this query needs two IDs"))?;
    let value = match family {
        None => match op {
            QueryOp::Distance => json!(dps.distance(a, b)?),
            QueryOp::Opposite => json!(dps.opposite(a, b)?),
            QueryOp::Collinear => json!(dps.collinear(a, b)?),
            QueryOp::IntersectionDim => json!(dps.intersection_dim(a, b)?),
            QueryOp::Member => unreachable!(),
        },
        Some(f) => {
            let h = families(dps, Some(f))?.remove(0);
            match op {
                QueryOp::Distance => json!(h.distance(a, b)?),
                QueryOp::Opposite => json!(h.opposite(a, b)?),
                QueryOp::Collinear => json!(h.collinear(a, b)?),
                QueryOp::IntersectionDim => {
                    h.local(a)?;
                    h.local(b)?;
                    json!(dps.intersection_dim(a, b)?)
                }
                QueryOp::Member => unreachable!(),
            }
        }
    };
    let op = match op {
        QueryOp::Distance => "distance",
        QueryOp::Opposite => "opposite",
        QueryOp::Collinear => "collinear",
        QueryOp::IntersectionDim => "intersection-dim",
        QueryOp::Member => "member",
    };
    let mut out = json!({"space": name, "op": op, "a": a, "b": b, "value": value});
    if let Some(f) = family {
        out["family"] = json!(f.to_string());
    }
    Ok(out)
}

fn grassmann_dims(d: Option<usize>, k: Option<usize>) -> Result<(usize, usize), Failure> {
    match (d, k) {
        (Some(d), Some(k)) => Ok((d, k)),
        _ => Err(usage("--d and --k are required")),
    }
}

fn grassmann_check<F: Field>(ctx: &Ctx, cmd: &Command) -> Result<(Value, bool), Failure> {
    let Command::Check { d, k, .. } = cmd else {
        unreachable!()
    };
    let (d, k) = grassmann_dims(*d, *k)?;
    let g = GrassmannGraph::<F>::build(d, k, ctx.budget)?;
    let parts = vec![
        verify::verify_grassmann_characterization(&g)?,
        verify::verify_grassmann_distances(&g, Sampling::Exhaustive)?,
    ];
    Ok(verdict(Verdict::combine("grassmann", &g.name(), parts)))
}

fn grassmann_export<F: Field>(ctx: &Ctx, cmd: &Command) -> Result<(Value, bool), Failure> {
    let Command::Export {
        grassmann: Some(dk),
        format,
        ..
    } = cmd
    else {
        unreachable!()
    };
    let g = GrassmannGraph::<F>::build(dk[0], dk[1], ctx.budget)?;
    let text = match format {
        Format::Dot => g.graph().to_dot(&g.name()),
        Format::Adjlist => g.graph().to_adjlist(),
    };
    Ok((Value::String(text), true))
}
