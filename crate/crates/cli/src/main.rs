//! Command line workbench: analyze finite dynamical systems, reduce
//! elements into the commutant, probe windowed ideals, build in-between
//! algebras, and run the one-point (Laurent), finite-dimensional
//! (diagonalization), and summable-norm reports.
//!
//! Every command prints a versioned report, canonical JSON by default
//! (sorted keys, no timestamps, byte-stable across runs) or a short text
//! summary with `--text`. Exit codes: 0 success, 1 a checked assertion
//! came out refuted, 2 usage or input errors.

mod parse;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use crossed_core::banach::{
    commutator_ideal_window, enumerate_characters, l1_norm, l1_norm_exact,
    maximal_modular_report, vanishing_on_fixed_points, Character,
};
use crossed_core::between::{
    build_avoiding_b, build_intersecting_b, default_probe_family, intersection_property_probe,
};
use crossed_core::crossed::{commutant_window, is_maximal_abelian};
use crossed_core::funcalg::{DegreeRule, GradedSubspace};
use crossed_core::gelfand::{
    gelfand_transform, transport_element, triquiv_report, AbstractAlgebra, AbstractElement,
};
use crossed_core::idealwin::{generate_ideal_window, Membership};
use crossed_core::laurent::{trichotomy_witness, RootIdeal};
use crossed_core::reduce::{reduce_to_commutant, replay, ReductionStep};
use crossed_core::{
    CrossedElement, DegreeWindow, DynSystem, Error, Func, PointSet, Scalar, UnitScalar,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "crossed",
    version,
    about = "Exact workbench for crossed products over finite dynamical systems"
)]
struct Cli {
    /// Print a short human-readable summary instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    /// Print the canonical JSON report (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Periodic structure, orbits, predicates, and the commutant verdict.
    Analyze(AnalyzeArgs),
    /// Push an element into the commutant with a replayable certificate.
    Reduce(ReduceArgs),
    /// Generate a windowed two-sided ideal and query membership.
    Ideal(IdealArgs),
    /// Build algebras strictly between the coefficients and the commutant.
    Between(BetweenArgs),
    /// One-point systems: root ideals of Laurent polynomials.
    Laurent(LaurentArgs),
    /// Diagonalize a finite-dimensional commutative algebra and transport.
    Gelfand(GelfandArgs),
    /// Summable-norm reports: characters, commutator ideal, norms.
    Banach(BanachArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Path to the system file: a JSON array of point images.
    #[arg(long)]
    system: PathBuf,
    /// Degree window `lo:hi` for the commutant slice table.
    #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
    window: String,
    /// Also run a randomized ring-axiom suite with this many triples.
    #[arg(long)]
    axiom_triples: Option<u32>,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    system: PathBuf,
    /// Element literal, e.g. "e0*d^1 + 2*e1".
    #[arg(long, allow_hyphen_values = true)]
    element: Option<String>,
    /// Reduce this many random nonzero elements instead.
    #[arg(long, conflicts_with = "element")]
    random: Option<u32>,
}

#[derive(Args)]
struct IdealArgs {
    #[arg(long)]
    system: PathBuf,
    /// Generator literals (repeatable).
    #[arg(long = "generator", required = true, allow_hyphen_values = true)]
    generators: Vec<String>,
    /// Multiplier window `lo:hi`.
    #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
    window: String,
    /// Target window `lo:hi`; defaults to the multiplier window.
    #[arg(long, allow_hyphen_values = true)]
    target: Option<String>,
    /// Element whose window membership to decide.
    #[arg(long, allow_hyphen_values = true)]
    probe: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BetweenMode {
    /// Invariant-set algebra that misses a nonzero ideal entirely.
    Avoiding,
    /// Base-point algebra probed for nontrivial ideal intersections.
    Intersecting,
}

#[derive(Args)]
struct BetweenArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long, value_enum)]
    mode: BetweenMode,
    /// Paired degree for the avoiding construction.
    #[arg(long)]
    n: Option<i64>,
    /// Invariant point set for the avoiding construction, e.g. "2" or "0,1".
    #[arg(long)]
    u1: Option<String>,
    /// Base point for the intersecting construction.
    #[arg(long)]
    base_point: Option<usize>,
    #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
    window: String,
}

#[derive(Args)]
struct LaurentArgs {
    /// Polynomial literal, e.g. "t + t^-1".
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// Comma-separated nonzero roots (a multiset), e.g. "2,1/2".
    #[arg(long, allow_hyphen_values = true)]
    roots: String,
    /// Decide membership of this polynomial in the root ideal.
    #[arg(long, allow_hyphen_values = true)]
    member: Option<String>,
}

#[derive(Args)]
struct GelfandArgs {
    /// Path to the algebra file: JSON with "dim", "mul", "sigma".
    #[arg(long)]
    algebra: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum BanachKind {
    /// Enumerate the multiplicative functionals.
    Characters,
    /// Compare the commutator ideal window with the fixed-point kernel.
    Commutator,
    /// Kernel report for one character.
    Modular,
    /// Summable norm of one element, float and exact.
    Norm,
}

#[derive(Args)]
struct BanachArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long, value_enum)]
    report: BanachKind,
    /// Fixed point for the modular report.
    #[arg(long)]
    point: Option<usize>,
    /// Unit-modulus twist scalar for the modular report, e.g. "3/5+4/5i".
    #[arg(long, allow_hyphen_values = true)]
    twist: Option<String>,
    /// Element literal for the norm report.
    #[arg(long, allow_hyphen_values = true)]
    element: Option<String>,
    #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
    window: String,
}

/// A finished command: the JSON payload, a text summary, and whether a
/// checked assertion came out false.
struct Outcome {
    report: Value,
    summary: String,
    refuted: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(2);
        }
    };
    if cli.text {
        println!("{}", outcome.summary);
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&outcome.report).expect("reports serialize")
        );
    }
    if outcome.refuted {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze(args) => analyze(args, cli.seed),
        Command::Reduce(args) => reduce(args, cli.seed),
        Command::Ideal(args) => ideal(args),
        Command::Between(args) => between(args),
        Command::Laurent(args) => laurent(args),
        Command::Gelfand(args) => gelfand(args),
        Command::Banach(args) => banach(args),
    }
}

fn load_system(path: &Path) -> Result<DynSystem> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text)
        .with_context(|| format!("parsing {} as JSON", path.display()))?;
    let sigma_value = value.get("sigma").cloned().unwrap_or(value);
    let sigma: Vec<usize> = serde_json::from_value(sigma_value)
        .context("a system file holds a JSON array of point images, or {\"sigma\": [...]}")?;
    Ok(DynSystem::new(sigma)?)
}

fn window_arg(text: &str) -> Result<DegreeWindow> {
    let (lo, hi) = parse::parse_window(text)?;
    Ok(DegreeWindow::new(lo, hi)?)
}

fn system_json(sys: &DynSystem) -> Value {
    json!({
        "sigma": sys.sigma(),
        "size": sys.size(),
        "cycles": sys.cycle_notation(),
    })
}

fn points_json(set: &PointSet) -> Value {
    json!(set.iter().copied().collect::<Vec<usize>>())
}

fn window_json(w: DegreeWindow) -> Value {
    json!([w.lo(), w.hi()])
}

fn default_units() -> Vec<UnitScalar> {
    [
        Scalar::from_int(1),
        Scalar::from_int(-1),
        Scalar::from_parts(0, 1, 1, 1),
        Scalar::from_parts(0, 1, -1, 1),
        Scalar::from_parts(3, 5, 4, 5),
        Scalar::from_parts(5, 13, 12, 13),
    ]
    .into_iter()
    .map(|s| UnitScalar::new(s).expect("unit samples lie on the circle"))
    .collect()
}

fn random_element<R: Rng>(rng: &mut R, size: usize, max_terms: usize) -> CrossedElement {
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let degree = rng.gen_range(-3i64..=3);
        let x = rng.gen_range(0..size);
        let c = Scalar::from_ratio(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=2));
        let mut values = vec![Scalar::from_int(0); size];
        values[x] = c;
        terms.push((degree, Func::from_values(values)));
    }
    CrossedElement::from_terms(size, terms).expect("well-formed terms")
}

fn random_nonzero_element<R: Rng>(rng: &mut R, size: usize, max_terms: usize) -> CrossedElement {
    loop {
        let f = random_element(rng, size, max_terms);
        if !f.is_zero() {
            return f;
        }
    }
}

fn analyze(args: &AnalyzeArgs, seed: u64) -> Result<Outcome> {
    let sys = load_system(&args.system)?;
    let window = window_arg(&args.window)?;
    let lcm = sys.orbit_lcm();
    let mut per = Vec::new();
    let mut sep = Vec::new();
    for n in 1..=lcm {
        per.push(json!({"n": n, "points": points_json(&sys.per(n)?)}));
        sep.push(json!({"n": n, "points": points_json(&sys.sep(n)?)}));
    }
    let predicates = sys.predicates();
    let ma = is_maximal_abelian(&sys);
    let commutant = commutant_window(window);
    let mut slices = Vec::new();
    for d in window.iter() {
        slices.push(json!({"degree": d, "dim": commutant.slice(&sys, d)?.dim()}));
    }
    let mut report = json!({
        "version": 1,
        "command": "analyze",
        "system": system_json(&sys),
        "orbit_lcm": lcm,
        "per": per,
        "sep": sep,
        "per_infinity": points_json(&sys.per_infinity()),
        "orbits": sys.orbits(),
        "predicates": {
            "minimal": predicates.minimal,
            "topologically_transitive": predicates.topologically_transitive,
        },
        "maximal_abelian": {
            "holds": ma.holds,
            "witness": ma.witness.as_ref().map(|w| w.to_string()),
        },
        "commutant_window": {
            "window": window_json(window),
            "slices": slices,
        },
    });
    if let Some(triples) = args.axiom_triples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let unit = CrossedElement::unit(sys.size());
        for _ in 0..triples {
            let f = random_element(&mut rng, sys.size(), 3);
            let g = random_element(&mut rng, sys.size(), 3);
            let h = random_element(&mut rng, sys.size(), 3);
            let fg = f.conv(&sys, &g)?;
            if fg.conv(&sys, &h)? != f.conv(&sys, &g.conv(&sys, &h)?)?
                || f.conv(&sys, &(&g + &h))? != &fg + &f.conv(&sys, &h)?
                || unit.conv(&sys, &f)? != f
            {
                bail!("ring axiom suite found a violation; this is a bug");
            }
        }
        report["axiom_suite"] = json!({
            "triples": triples,
            "seed": seed,
            "all_hold": true,
        });
    }
    let summary = format!(
        "system {} on {} points: orbits {:?}, minimal {}, maximal abelian coefficients {} \
         (witness {})",
        sys.cycle_notation(),
        sys.size(),
        sys.orbits(),
        predicates.minimal,
        ma.holds,
        ma.witness.map(|w| w.to_string()).unwrap_or_default(),
    );
    Ok(Outcome {
        report,
        summary,
        refuted: false,
    })
}

fn step_json(step: &ReductionStep) -> Value {
    match step {
        ReductionStep::RightMultiply { a, shift } => json!({
            "kind": "right_multiply",
            "a": a.to_string(),
            "shift": shift,
        }),
        ReductionStep::Commutate { b } => json!({
            "kind": "commutate",
            "b": b.to_string(),
        }),
    }
}

fn reduce(args: &ReduceArgs, seed: u64) -> Result<Outcome> {
    let sys = load_system(&args.system)?;
    if let Some(text) = &args.element {
        let input = parse::parse_element(text, sys.size())?;
        let cert = reduce_to_commutant(&sys, &input)?;
        replay(&sys, &cert)?;
        let (mult, target) = cert.containment_windows();
        let ideal = generate_ideal_window(&sys, std::slice::from_ref(&input), mult, target)?;
        ideal.verify_certificates(&sys)?;
        let member = ideal.membership(&cert.output).is_yes();
        let report = json!({
            "version": 1,
            "command": "reduce",
            "system": system_json(&sys),
            "input": input.to_string(),
            "steps": cert.steps.iter().map(step_json).collect::<Vec<_>>(),
            "output": cert.output.to_string(),
            "replay": "ok",
            "step_bound": 2 * input.num_terms(),
            "containment": {
                "mult_window": window_json(mult),
                "target_window": window_json(target),
                "output_in_ideal_window": member,
            },
        });
        let summary = format!(
            "reduced {} to {} in {} steps; replay ok; ideal-window membership {}",
            input,
            cert.output,
            cert.steps.len(),
            member,
        );
        return Ok(Outcome {
            report,
            summary,
            refuted: !member,
        });
    }
    let Some(count) = args.random else {
        bail!("pass --element <literal> or --random <count>");
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps_total = 0usize;
    for _ in 0..count {
        let input = random_nonzero_element(&mut rng, sys.size(), 4);
        let cert = reduce_to_commutant(&sys, &input)?;
        replay(&sys, &cert)?;
        if cert.steps.len() > 2 * input.num_terms() {
            bail!("step bound violated for {input}; this is a bug");
        }
        steps_total += cert.steps.len();
    }
    let report = json!({
        "version": 1,
        "command": "reduce",
        "system": system_json(&sys),
        "random": {
            "count": count,
            "seed": seed,
            "all_replayed": true,
            "steps_total": steps_total,
        },
    });
    Ok(Outcome {
        summary: format!("{count} random reductions replayed ({steps_total} steps total)"),
        report,
        refuted: false,
    })
}

fn ideal(args: &IdealArgs) -> Result<Outcome> {
    let sys = load_system(&args.system)?;
    let mult = window_arg(&args.window)?;
    let target = match &args.target {
        Some(text) => window_arg(text)?,
        None => mult,
    };
    let generators: Vec<CrossedElement> = args
        .generators
        .iter()
        .map(|g| parse::parse_element(g, sys.size()))
        .collect::<std::result::Result<_, Error>>()?;
    let ideal = generate_ideal_window(&sys, &generators, mult, target)?;
    ideal.verify_certificates(&sys)?;
    let subspace = ideal.subspace();
    let slices: Vec<Value> = target
        .iter()
        .map(|d| json!({"degree": d, "dim": subspace.slice(d).dim()}))
        .collect();
    let coeff_meet = ideal.intersect_coefficient_algebra().dim();
    let mut refuted = false;
    let probe_json = match &args.probe {
        Some(text) => {
            let probe = parse::parse_element(text, sys.size())?;
            let verdict = match ideal.membership(&probe) {
                Membership::Yes(_) => "yes",
                Membership::NotInWindow => {
                    refuted = true;
                    "not in the window"
                }
            };
            json!({"element": probe.to_string(), "membership": verdict})
        }
        None => Value::Null,
    };
    let report = json!({
        "version": 1,
        "command": "ideal",
        "system": system_json(&sys),
        "generators": args.generators,
        "mult_window": window_json(mult),
        "target_window": window_json(target),
        "dim": ideal.dim(),
        "slices": slices,
        "coefficient_algebra_meet_dim": coeff_meet,
        "certificates": "verified",
        "probe": probe_json,
    });
    let summary = format!(
        "ideal window dim {} on {:?}; meets the coefficient algebra in dim {}{}",
        ideal.dim(),
        (target.lo(), target.hi()),
        coeff_meet,
        match &probe_json {
            Value::Null => String::new(),
            v => format!("; probe membership: {}", v["membership"].as_str().unwrap_or("?")),
        },
    );
    Ok(Outcome {
        report,
        summary,
        refuted,
    })
}

fn between(args: &BetweenArgs) -> Result<Outcome> {
    let sys = load_system(&args.system)?;
    let window = window_arg(&args.window)?;
    match args.mode {
        BetweenMode::Avoiding => {
            let n = args.n.context("the avoiding mode needs --n")?;
            let u1_text = args.u1.as_ref().context("the avoiding mode needs --u1")?;
            let u1: PointSet = parse::parse_points(u1_text)?.into_iter().collect();
            let b = build_avoiding_b(&sys, n, &u1, window)?;
            let a = GradedSubspace::new(DegreeRule::CoefficientAlgebra, window);
            let c = commutant_window(window);
            let mut slices = Vec::new();
            let mut strictly_above = false;
            let mut strictly_below = false;
            for d in window.iter() {
                let da = a.slice(&sys, d)?.dim();
                let db = b.algebra.slice(&sys, d)?.dim();
                let dc = c.slice(&sys, d)?.dim();
                strictly_above |= db > da;
                strictly_below |= dc > db;
                slices.push(json!({
                    "degree": d,
                    "coefficients": da,
                    "between": db,
                    "commutant": dc,
                }));
            }
            let ideal = b.witness_ideal(&sys, window, window)?;
            ideal.verify_certificates(&sys)?;
            let meet = ideal
                .subspace()
                .intersect_with_graded(&sys, &b.algebra)?
                .dim();
            let holds = strictly_above && strictly_below && ideal.dim() > 0 && meet == 0;
            let report = json!({
                "version": 1,
                "command": "between",
                "mode": "avoiding",
                "system": system_json(&sys),
                "n": n,
                "u1": points_json(&b.invariant_set),
                "complement_orbit": points_json(&b.complement_orbit),
                "window": window_json(window),
                "slices": slices,
                "strictly_between": strictly_above && strictly_below,
                "witness_ideal": {
                    "generator_support": b.outside_witness.to_string(),
                    "dim": ideal.dim(),
                    "meet_with_between_dim": meet,
                },
                "avoids_nonzero_ideal": holds,
            });
            let summary = format!(
                "between algebra over U1 {:?}: strictly between {}, witness ideal dim {} \
                 meets it in dim {}",
                u1,
                strictly_above && strictly_below,
                ideal.dim(),
                meet,
            );
            Ok(Outcome {
                report,
                summary,
                refuted: !holds,
            })
        }
        BetweenMode::Intersecting => {
            let base = args
                .base_point
                .context("the intersecting mode needs --base-point")?;
            let b = build_intersecting_b(&sys, base, window)?;
            let family = default_probe_family(&sys, window);
            let probe = intersection_property_probe(&sys, &b.algebra, &family, window, window)?;
            let entries: Vec<Value> = probe
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "generator": e.generator.to_string(),
                        "ideal_dim": e.ideal_dim,
                        "intersection_dim": e.intersection_dim,
                    })
                })
                .collect();
            let report = json!({
                "version": 1,
                "command": "between",
                "mode": "intersecting",
                "system": system_json(&sys),
                "base_point": base,
                "degenerate": b.degenerate,
                "witness": {
                    "degree": b.witness_degree,
                    "coefficient": b.witness.to_string(),
                },
                "window": window_json(window),
                "probe": {
                    "generators": entries.len(),
                    "entries": entries,
                    "refuted": probe.refuted,
                    "refuting_generator": probe
                        .refuting_generator
                        .as_ref()
                        .map(|g| g.to_string()),
                },
                "intersection_property": !probe.refuted,
            });
            let summary = format!(
                "intersecting algebra at base point {base}: degenerate {}, intersection \
                 property {} over {} probe ideals",
                b.degenerate,
                !probe.refuted,
                probe.entries.len(),
            );
            Ok(Outcome {
                report,
                summary,
                refuted: probe.refuted,
            })
        }
    }
}

fn laurent(args: &LaurentArgs) -> Result<Outcome> {
    let roots = parse::parse_scalars(&args.roots)?;
    let ideal = RootIdeal::new(roots)?;
    let roots_json: Vec<String> = ideal.roots().iter().map(|r| r.to_string()).collect();
    if let Some(member_text) = &args.member {
        let p = parse::parse_laurent(member_text)?;
        let member = ideal.contains(&p);
        let vanishes = if p.is_zero() {
            true
        } else {
            ideal.vanishes_at_roots(&p)?
        };
        let report = json!({
            "version": 1,
            "command": "laurent",
            "roots": roots_json,
            "modulus": ideal.modulus().to_string(),
            "member": {
                "polynomial": p.to_string(),
                "in_ideal": member,
                "vanishes_at_roots": vanishes,
            },
        });
        let summary = format!(
            "{} is{} in the ideal with roots {:?}",
            p,
            if member { "" } else { " not" },
            roots_json,
        );
        return Ok(Outcome {
            report,
            summary,
            refuted: !member,
        });
    }
    let f_text = args
        .f
        .as_ref()
        .context("pass --f <polynomial> or --member <polynomial>")?;
    let f = parse::parse_laurent(f_text)?;
    if ideal.contains(&f) {
        let report = json!({
            "version": 1,
            "command": "laurent",
            "roots": roots_json,
            "modulus": ideal.modulus().to_string(),
            "input": f.to_string(),
            "input_in_ideal": true,
        });
        let summary = format!("{f} already lies in the ideal with roots {roots_json:?}");
        return Ok(Outcome {
            report,
            summary,
            refuted: false,
        });
    }
    let witness = trichotomy_witness(&f, &ideal)?;
    witness.replay(&ideal)?;
    let report = json!({
        "version": 1,
        "command": "laurent",
        "roots": roots_json,
        "modulus": ideal.modulus().to_string(),
        "input": f.to_string(),
        "input_in_ideal": false,
        "witness": {
            "factors": witness
                .factors
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>(),
            "product": witness.witness.to_string(),
            "in_ideal": true,
            "replay": "ok",
        },
    });
    let summary = format!(
        "subalgebra of {} meets the ideal: witness {}",
        f, witness.witness,
    );
    Ok(Outcome {
        report,
        summary,
        refuted: false,
    })
}

fn gelfand(args: &GelfandArgs) -> Result<Outcome> {
    let text = fs::read_to_string(&args.algebra)
        .with_context(|| format!("reading {}", args.algebra.display()))?;
    let alg: AbstractAlgebra = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", args.algebra.display()))?;
    let gd = match gelfand_transform(&alg) {
        Ok(gd) => gd,
        Err(Error::NotSemisimple) => {
            let report = json!({
                "version": 1,
                "command": "gelfand",
                "dim": alg.dim(),
                "semisimple": false,
                "verdict": "not semisimple",
            });
            return Ok(Outcome {
                report,
                summary: "the algebra is not semisimple; no diagonalization exists".into(),
                refuted: true,
            });
        }
        Err(Error::NotSplit) => {
            let report = json!({
                "version": 1,
                "command": "gelfand",
                "dim": alg.dim(),
                "semisimple": true,
                "split": false,
                "verdict": "eigenvalues leave the scalar field",
            });
            return Ok(Outcome {
                report,
                summary: "the algebra does not split over the Gaussian rationals".into(),
                refuted: true,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let characters: Vec<Vec<String>> = gd
        .characters
        .iter()
        .map(|row| row.iter().map(|c| c.to_string()).collect())
        .collect();
    let dim = alg.dim();
    let mut transports = Vec::new();
    for j in 0..dim {
        let mut coords = vec![Scalar::from_int(0); dim];
        coords[j] = Scalar::from_int(1);
        let elem = AbstractElement::monomial(0, coords);
        let image = transport_element(&gd, &elem)?;
        transports.push(json!({
            "basis": j,
            "image": image.to_string(),
        }));
    }
    let tri = triquiv_report(&gd)?;
    let report = json!({
        "version": 1,
        "command": "gelfand",
        "dim": dim,
        "semisimple": true,
        "split": true,
        "characters": characters,
        "separating": gd.separating.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "induced_sigma": gd.induced_system.sigma(),
        "basis_transports": transports,
        "triquiv": {
            "per_infinity_dense": tri.per_infinity_dense,
            "maximal_abelian": tri.maximal_abelian.holds,
            "intersection_property": tri.intersection_property,
            "verdicts_agree": tri.verdicts_agree,
            "witness_generator": tri.witness_generator.to_string(),
            "witness_window_dim": tri.witness_window_dim,
            "witness_meet_dim": tri.witness_meet_dim,
        },
    });
    let summary = format!(
        "diagonalized a dim-{dim} algebra; induced map {:?}; the three equivalent \
         properties agree: {}",
        gd.induced_system.sigma(),
        tri.verdicts_agree,
    );
    Ok(Outcome {
        report,
        summary,
        refuted: false,
    })
}

fn banach(args: &BanachArgs) -> Result<Outcome> {
    let sys = load_system(&args.system)?;
    let window = window_arg(&args.window)?;
    match args.report {
        BanachKind::Characters => {
            let family = enumerate_characters(&sys, &default_units());
            let mut twist_checks = true;
            for ch in &family.characters {
                for n in -6..=6i64 {
                    let dn = CrossedElement::delta_pow(sys.size(), n);
                    twist_checks &= ch.eval(&dn)? == ch.twist().pow(n);
                }
            }
            let report = json!({
                "version": 1,
                "command": "banach",
                "report": "characters",
                "system": system_json(&sys),
                "fixed_points": points_json(&family.fixed_points),
                "characters": family
                    .characters
                    .iter()
                    .map(|ch| json!({
                        "point": ch.point(),
                        "twist": ch.twist().value().to_string(),
                    }))
                    .collect::<Vec<_>>(),
                "statement": family.statement,
                "twist_powers_check": twist_checks,
            });
            let summary = format!(
                "{} characters over {} fixed points; twist power checks {}",
                family.characters.len(),
                family.fixed_points.len(),
                if twist_checks { "pass" } else { "fail" },
            );
            Ok(Outcome {
                report,
                summary,
                refuted: !twist_checks,
            })
        }
        BanachKind::Commutator => {
            let generated = commutator_ideal_window(&sys, window)?;
            let kernel = vanishing_on_fixed_points(&sys, window)?;
            let mut slices = Vec::new();
            let mut all_equal = true;
            for d in window.iter() {
                let lhs = generated.slice(d);
                let rhs = kernel.slice(&sys, d)?;
                let equal = lhs == rhs;
                all_equal &= equal;
                slices.push(json!({
                    "degree": d,
                    "commutator_dim": lhs.dim(),
                    "kernel_dim": rhs.dim(),
                    "equal": equal,
                }));
            }
            let report = json!({
                "version": 1,
                "command": "banach",
                "report": "commutator",
                "system": system_json(&sys),
                "window": window_json(window),
                "slices": slices,
                "equals_fixed_point_kernel": all_equal,
            });
            let summary = format!(
                "commutator ideal window equals the fixed-point kernel slice-by-slice: {all_equal}",
            );
            Ok(Outcome {
                report,
                summary,
                refuted: !all_equal,
            })
        }
        BanachKind::Modular => {
            let point = args.point.context("the modular report needs --point")?;
            let twist_text = args
                .twist
                .as_ref()
                .context("the modular report needs --twist")?;
            let twist = UnitScalar::new(twist_text.parse::<Scalar>()?)?;
            let ch = Character::new(&sys, point, twist)?;
            let rep = maximal_modular_report(&sys, &ch, window)?;
            let all = rep.codim_is_one
                && rep.contains_commutator_window
                && rep.commutator_basis_evals_vanish
                && rep.closed_under_window_products;
            let report = json!({
                "version": 1,
                "command": "banach",
                "report": "modular",
                "system": system_json(&sys),
                "point": point,
                "twist": ch.twist().value().to_string(),
                "window": window_json(window),
                "ambient_dim": rep.ambient_dim,
                "kernel_dim": rep.kernel_dim,
                "codim_is_one": rep.codim_is_one,
                "contains_commutator_window": rep.contains_commutator_window,
                "commutator_basis_evals_vanish": rep.commutator_basis_evals_vanish,
                "closed_under_window_products": rep.closed_under_window_products,
                "classification": rep.classification,
            });
            let summary = format!(
                "kernel at point {point}: codim one {}, contains the commutator window {}, \
                 closed under window products {}",
                rep.codim_is_one,
                rep.contains_commutator_window,
                rep.closed_under_window_products,
            );
            Ok(Outcome {
                report,
                summary,
                refuted: !all,
            })
        }
        BanachKind::Norm => {
            let text = args.element.as_ref().context("the norm report needs --element")?;
            let elem = parse::parse_element(text, sys.size())?;
            let float = l1_norm(&elem);
            let exact = l1_norm_exact(&elem);
            let report = json!({
                "version": 1,
                "command": "banach",
                "report": "norm",
                "system": system_json(&sys),
                "element": elem.to_string(),
                "l1_norm": float,
                "l1_norm_exact": exact.as_ref().map(|r| r.to_string()),
            });
            let summary = match &exact {
                Some(r) => format!("l1 norm of {elem} = {r} (exactly; float {float})"),
                None => format!("l1 norm of {elem} = {float} (no rational exact value)"),
            };
            Ok(Outcome {
                report,
                summary,
                refuted: false,
            })
        }
    }
}
