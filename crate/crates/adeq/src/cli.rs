//! The `adeq` command line. Every command writes one JSON document (or its
//! plain-text rendering) and exits with 0 on success or pass, 1 on a fail
//! verdict, 2 on usage, input or parse errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use adeq_core::analysis::{
    classify_two_term, conjecture_scan, corollary_specialization, two_exponential_family,
    AssignmentVerdict, Certificate, CorollaryRequest, Nontriviality, ScanConfig, TwoExpOutcome,
};
use adeq_core::equation::{
    check_conditions, extract_constraints, homogenize, verify_solution, build_lhs_unchecked,
    Ansatz, EquationSpec, Verdict,
};
use adeq_core::expansion::{
    coefficient_mass, expand_deriv_power, expand_deriv_power_partition, leibniz_oracle,
};
use adeq_core::field::{
    check_equation_samples, difference_polarize, realize_ansatz, samples,
    symmetric_multilinear, AdditiveModel, RationalFunction,
};
use adeq_core::rat::{fmt_q, parse_q, Q};
use adeq_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::dsl::{parse_equation, render_equation};
use crate::formats::{
    ansatz_json, constraints_json, family_json, spec_json, AnsatzFile, ModelsFile,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "adeq", version, about = "Exact analysis of additive functional equations")]
struct Cli {
    /// Compact JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct EqArgs {
    /// Equation file.
    #[arg(long, value_name = "PATH")]
    eq: Option<PathBuf>,
    /// Equation text, instead of a file.
    #[arg(long, value_name = "TEXT", conflicts_with = "eq", allow_hyphen_values = true)]
    equation: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Every declared leading coefficient nonzero.
    Leading,
    /// No function identically zero; orders are upper bounds.
    NoZeroFunction,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    EqualGOrder,
    EqualFOrder,
    Proportional,
    KappaFg,
    KappaFf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Standing conditions on the exponents.
    Check {
        #[command(flatten)]
        eq: EqArgs,
    },
    /// Split into homogeneous parts.
    Homogenize {
        #[command(flatten)]
        eq: EqArgs,
    },
    /// Expand m_exp(d^order(x^p)) three ways.
    Expand {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        order: u32,
        #[arg(long, default_value_t = 0)]
        exp: u32,
    },
    /// Coefficient constraints of an ansatz.
    Constraints {
        #[command(flatten)]
        eq: EqArgs,
        #[arg(long, value_name = "PATH")]
        ansatz: PathBuf,
    },
    /// Verify a numeric ansatz symbolically.
    Verify {
        #[command(flatten)]
        eq: EqArgs,
        #[arg(long, value_name = "PATH")]
        ansatz: PathBuf,
    },
    /// Two-term solution families.
    Classify {
        #[command(flatten)]
        eq: EqArgs,
    },
    /// Search derivation orders for nontrivial solutions.
    Scan {
        #[command(flatten)]
        eq: EqArgs,
        #[arg(long, default_value_t = 1)]
        max_order: u32,
        #[arg(long, default_value_t = 3)]
        grid: u32,
        #[arg(long, value_enum, default_value = "leading")]
        mode: ModeArg,
        #[arg(long, default_value_t = 2048)]
        max_points: usize,
    },
    /// Evaluate the equation in Q(t) at seeded random points.
    SampleCheck {
        #[command(flatten)]
        eq: EqArgs,
        #[arg(long, value_name = "PATH", required_unless_present = "ansatz")]
        models: Option<PathBuf>,
        #[arg(long, value_name = "PATH", conflicts_with = "models")]
        ansatz: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Iterated differences of the product of the given models.
    Polarize {
        #[arg(long, value_name = "PATH")]
        models: PathBuf,
        /// Number of increments; defaults to the number of factors.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Specialized solution shapes.
    Corollary {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        eq: EqArgs,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        kappa: Option<String>,
        #[arg(long, default_value_t = 1)]
        order: u32,
        /// Comma-separated constants for the proportional shape.
        #[arg(long)]
        c: Option<String>,
        #[arg(long, default_value_t = 3)]
        grid: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Homogenize { .. } => "homogenize",
            Command::Expand { .. } => "expand",
            Command::Constraints { .. } => "constraints",
            Command::Verify { .. } => "verify",
            Command::Classify { .. } => "classify",
            Command::Scan { .. } => "scan",
            Command::SampleCheck { .. } => "sample-check",
            Command::Polarize { .. } => "polarize",
            Command::Corollary { .. } => "corollary",
        }
    }
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Engine(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ConditionViolation(_) | Error::NotHomogeneous(_) => Failure::Engine(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn equation(a: &EqArgs) -> Res<EquationSpec> {
    let (text, origin) = match (&a.eq, &a.equation) {
        (Some(p), _) => (read(p)?, p.display().to_string()),
        (None, Some(t)) => (t.clone(), String::from("<equation>")),
        (None, None) => return Err(usage("one of --eq or --equation is required")),
    };
    parse_equation(&text).map_err(|e| usage(format!("{origin}: {e}")))
}

fn ansatz(path: &Path) -> Res<Ansatz> {
    let file: AnsatzFile = serde_json::from_str(&read(path)?)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    file.to_ansatz().map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn models(path: &Path) -> Res<Vec<(String, AdditiveModel)>> {
    let file: ModelsFile = serde_json::from_str(&read(path)?)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    file.to_models().map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn verdict(pass: bool) -> (&'static str, u8) {
    if pass {
        ("pass", 0)
    } else {
        ("fail", 1)
    }
}

fn cmd_check(a: &EqArgs) -> Res<(Value, u8)> {
    let spec = equation(a)?;
    let r = check_conditions(&spec);
    let (v, code) = verdict(r.holds());
    Ok((
        json!({
            "spec": spec_json(&spec),
            "verdict": v,
            "conditions": {
                "c1_distinct_p": r.c1,
                "duplicate_p": r.duplicate_p,
                "c2_common_degree": r.c2,
                "degree": r.common_degree,
                "degrees": spec.degrees(),
                "c3_p_not_q": r.c3,
                "c3_violations": r.c3_violations.iter().map(|(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
                "all_exponents_distinct": r.all_distinct,
                "first_failure": r.first_failure(),
            },
            "sorted": render_equation(&EquationSpec::new(r.sorted.clone())?),
        }),
        code,
    ))
}

fn cmd_homogenize(a: &EqArgs) -> Res<(Value, u8)> {
    let spec = equation(a)?;
    let parts = homogenize(&spec);
    Ok((
        json!({
            "spec": spec_json(&spec),
            "parts": parts.iter().map(|s| {
                let mut v = spec_json(s);
                v["degree"] = json!(s.degree());
                v
            }).collect::<Vec<_>>(),
        }),
        0,
    ))
}

fn cmd_expand(p: u32, order: u32, exp: u32) -> Res<(Value, u8)> {
    if p == 0 {
        return Err(usage("--p must be positive"));
    }
    let a = expand_deriv_power(exp, order, p);
    let b = expand_deriv_power_partition(exp, order, p);
    let c = leibniz_oracle(exp, order, p);
    let agree = a == b && b == c;
    Ok((
        json!({
            "p": p,
            "order": order,
            "exp": exp,
            "expansion": a.to_string(),
            "terms": a.len(),
            "coefficient_mass": coefficient_mass(&a).map(|m| fmt_q(&m)),
            "routes_agree": agree,
        }),
        if agree { 0 } else { 1 },
    ))
}

fn cmd_constraints(a: &EqArgs, path: &Path) -> Res<(Value, u8)> {
    let spec = equation(a)?;
    let an = ansatz(path)?;
    let sys = extract_constraints(&build_lhs_unchecked(&spec, &an)?);
    Ok((
        json!({
            "spec": spec_json(&spec),
            "count": sys.len(),
            "unknowns": sys.unknowns.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
            "constraints": constraints_json(&sys),
        }),
        0,
    ))
}

fn cmd_verify(a: &EqArgs, path: &Path) -> Res<(Value, u8)> {
    let spec = equation(a)?;
    let an = ansatz(path)?;
    let r = verify_solution(&spec, &an)?;
    let witness: Vec<Value> = match &r.verdict {
        Verdict::Pass => Vec::new(),
        Verdict::Fail(w) => w
            .iter()
            .map(|(m, c)| json!({"monomial": m.to_string(), "coeff": fmt_q(c)}))
            .collect(),
    };
    let (v, code) = verdict(r.is_pass());
    Ok((
        json!({
            "spec": spec_json(&spec),
            "verdict": v,
            "witness": witness,
            "zero_functions": r.zero_functions,
        }),
        code,
    ))
}

fn cmd_classify(a: &EqArgs) -> Res<(Value, u8)> {
    let spec = equation(a)?;
    let cls = classify_two_term(&spec)?;
    let mut families = Vec::new();
    let mut all = true;
    for f in &cls.families {
        let c = f.check()?;
        all &= c.holds();
        families.push(family_json(f, Some(&c)));
    }
    let two_exp = match two_exponential_family(&spec)? {
        TwoExpOutcome::Family(f) => {
            let c = f.check()?;
            all &= c.holds();
            family_json(&f, Some(&c))
        }
        TwoExpOutcome::None(o) => json!({
            "id": "none",
            "reason": o.reason,
            "single_term_constraints": o.single_term.iter()
                .map(|c| json!({"monomial": c.monomial.to_string(), "poly": c.poly.to_string()}))
                .collect::<Vec<_>>(),
        }),
    };
    Ok((
        json!({
            "spec": spec_json(&cls.spec),
            "families": families,
            "not_applicable": cls.not_applicable.iter()
                .map(|(id, why)| json!({"id": id.as_str(), "reason": why}))
                .collect::<Vec<_>>(),
            "two_exponential": two_exp,
            "notes": cls.notes,
            "verdict": verdict(all).0,
        }),
        verdict(all).1,
    ))
}

fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::TopWeight { weight, terms, rank, forced_zero } => json!({
            "kind": "top-weight",
            "weight": weight,
            "terms": terms.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "rank": rank,
            "forced_zero_terms": forced_zero.iter().map(|i| i + 1).collect::<Vec<_>>(),
        }),
        Certificate::LinearKernel { unknowns, rank, forced_zero, vandermonde, vandermonde_agrees } => {
            json!({
                "kind": "linear-kernel",
                "unknowns": unknowns,
                "rank": rank,
                "forced_zero": forced_zero,
                "vandermonde": vandermonde.as_ref().map(|v| json!({
                    "p": v.ps,
                    "det_falling_factorial": v.det_falling_factorial.to_string(),
                    "det_vandermonde": v.det_vandermonde.to_string(),
                    "trivial_kernel": v.trivial_kernel(),
                })),
                "vandermonde_agrees": vandermonde_agrees,
            })
        }
    }
}

fn cmd_scan(a: &EqArgs, max_order: u32, grid: u32, mode: ModeArg, max_points: usize) -> Res<(Value, u8)> {
    let spec = equation(a)?;
    let cfg = ScanConfig {
        k_max: max_order,
        grid_bound: grid,
        mode: match mode {
            ModeArg::Leading => Nontriviality::LeadingNonzero,
            ModeArg::NoZeroFunction => Nontriviality::NoZeroFunction,
        },
        max_grid_points: max_points,
    };
    let r = conjecture_scan(&spec, &cfg)?;
    let mut counts = BTreeMap::from([("found", 0), ("only_trivial", 0), ("inconclusive", 0)]);
    let assignments: Vec<Value> = r
        .assignments
        .iter()
        .map(|a| {
            let mut v = json!({"orders": a.orders});
            match &a.verdict {
                AssignmentVerdict::Found { witness, order } => {
                    *counts.get_mut("found").expect("key") += 1;
                    v["verdict"] = json!("found");
                    v["order"] = json!(order);
                    v["witness"] = ansatz_json(witness);
                }
                AssignmentVerdict::OnlyTrivial(c) => {
                    *counts.get_mut("only_trivial").expect("key") += 1;
                    v["verdict"] = json!("only-trivial");
                    v["certificate"] = certificate_json(c);
                }
                AssignmentVerdict::Inconclusive { strategy, searched, total } => {
                    *counts.get_mut("inconclusive").expect("key") += 1;
                    v["verdict"] = json!("inconclusive");
                    v["strategy"] = json!(strategy.as_str());
                    v["searched"] = json!(searched);
                    v["grid_points"] = json!(total.to_string());
                }
            }
            v
        })
        .collect();
    let consistent = r.conjecture_consistent();
    Ok((
        json!({
            "spec": spec_json(&spec),
            "max_order": max_order,
            "mode": match cfg.mode { Nontriviality::LeadingNonzero => "leading", Nontriviality::NoZeroFunction => "no-zero-function" },
            "grid": r.grid.iter().map(fmt_q).collect::<Vec<_>>(),
            "max_nontrivial_order": r.max_nontrivial_order,
            "conjectured_bound": r.conjectured_bound,
            "consistent_with_bound": consistent,
            "counts": counts,
            "assignments": assignments,
        }),
        if consistent { 0 } else { 1 },
    ))
}

fn cmd_sample_check(
    a: &EqArgs,
    models_path: Option<&Path>,
    ansatz_path: Option<&Path>,
    n: usize,
    seed: u64,
) -> Res<(Value, u8)> {
    let spec = equation(a)?;
    let ms: BTreeMap<String, AdditiveModel> = match (models_path, ansatz_path) {
        (Some(p), _) => models(p)?.into_iter().collect(),
        (None, Some(p)) => realize_ansatz(&spec, &ansatz(p)?)?,
        (None, None) => return Err(usage("one of --models or --ansatz is required")),
    };
    let r = check_equation_samples(&spec, &ms, n, seed)?;
    let (v, code) = verdict(r.pass());
    Ok((
        json!({
            "spec": spec_json(&spec),
            "seed": seed,
            "samples": n,
            "verdict": v,
            "first_failure": r.first_failure(),
            "models": serde_json::to_value(ModelsFile::from_models(&ms)).expect("serializable"),
            "residuals": r.samples.iter().map(|s| json!({
                "x": s.x.to_string(),
                "residual": s.residual.to_string(),
            })).collect::<Vec<_>>(),
        }),
        code,
    ))
}

fn cmd_polarize(path: &Path, m: Option<usize>, n_samples: usize, seed: u64) -> Res<(Value, u8)> {
    let factors: Vec<AdditiveModel> = models(path)?.into_iter().map(|(_, m)| m).collect();
    let n = factors.len();
    if n == 0 {
        return Err(usage("at least one model is needed"));
    }
    let m = m.unwrap_or(n);
    if m == 0 || m > 12 {
        return Err(usage("--m must be between 1 and 12"));
    }
    let points = samples(n_samples * (m + 1), seed);
    let mut tuples = Vec::new();
    let mut all = true;
    for chunk in points.chunks(m + 1) {
        let (x, ys) = (&chunk[0], &chunk[1..]);
        let value = difference_polarize(&factors, x, ys)?;
        let expected: Option<RationalFunction> = match m.cmp(&n) {
            std::cmp::Ordering::Equal => Some(symmetric_multilinear(&factors, ys)),
            std::cmp::Ordering::Greater => Some(RationalFunction::zero()),
            std::cmp::Ordering::Less => None,
        };
        let ok = expected.as_ref().is_none_or(|e| *e == value);
        all &= ok;
        tuples.push(json!({
            "x": x.to_string(),
            "y": ys.iter().map(|y| y.to_string()).collect::<Vec<_>>(),
            "value": value.to_string(),
            "matches": expected.map(|_| ok),
        }));
    }
    let (v, code) = verdict(all);
    Ok((
        json!({
            "n": n,
            "m": m,
            "seed": seed,
            "expected": match m.cmp(&n) {
                std::cmp::Ordering::Equal => "n! A(y_1, ..., y_n) for the symmetrized product",
                std::cmp::Ordering::Greater => "0",
                std::cmp::Ordering::Less => "no closed form checked",
            },
            "verdict": v,
            "tuples": tuples,
        }),
        code,
    ))
}

fn parse_rational(s: &str, what: &str) -> Res<Q> {
    parse_q(s.trim()).ok_or_else(|| usage(format!("{what}: '{s}' is not a rational number")))
}

#[allow(clippy::too_many_arguments)]
fn cmd_corollary(
    kind: KindArg,
    eq: &EqArgs,
    p: Option<u32>,
    q: Option<u32>,
    n: Option<u32>,
    kappa: Option<&str>,
    order: u32,
    c: Option<&str>,
    grid: u32,
) -> Res<(Value, u8)> {
    let pairs = || -> Res<Vec<(u32, u32)>> { Ok(equation(eq)?.pairs()) };
    let kappa_args = || -> Res<(u32, u32, u32, Q)> {
        let need = |v: Option<u32>, f: &str| v.ok_or_else(|| usage(format!("--{f} is required")));
        let k = parse_rational(kappa.ok_or_else(|| usage("--kappa is required"))?, "--kappa")?;
        Ok((need(p, "p")?, need(q, "q")?, need(n, "n")?, k))
    };
    let request = match kind {
        KindArg::EqualGOrder => CorollaryRequest::EqualGOrder { pairs: pairs()?, order },
        KindArg::EqualFOrder => CorollaryRequest::EqualFOrder { pairs: pairs()?, order },
        KindArg::Proportional => {
            let cs = c
                .ok_or_else(|| usage("--c is required"))?
                .split(',')
                .map(|s| parse_rational(s, "--c"))
                .collect::<Res<Vec<_>>>()?;
            CorollaryRequest::Proportional { pairs: pairs()?, c: cs }
        }
        KindArg::KappaFg => {
            let (p, q, n, kappa) = kappa_args()?;
            CorollaryRequest::KappaFg { p, q, n, kappa }
        }
        KindArg::KappaFf => {
            let (p, q, n, kappa) = kappa_args()?;
            CorollaryRequest::KappaFf { p, q, n, kappa, order }
        }
    };
    let out = corollary_specialization(&request, grid)?;
    let mut v = json!({
        "kind": out.kind,
        "spec": spec_json(&out.spec),
        "families": out.families.iter().map(|(f, c)| family_json(f, Some(c))).collect::<Vec<_>>(),
        "members": out.members.iter().map(|(id, a)| json!({"family": id.as_str(), "ansatz": ansatz_json(a)})).collect::<Vec<_>>(),
        "forced_zero": out.forced_zero.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
        "notes": out.notes,
    });
    if let Some(s) = &out.scan {
        v["scan"] = json!({
            "max_order": s.config.k_max,
            "max_nontrivial_order": s.max_nontrivial_order,
            "found": s.count(|v| matches!(v, AssignmentVerdict::Found { .. })),
            "only_trivial": s.count(|v| matches!(v, AssignmentVerdict::OnlyTrivial(_))),
            "inconclusive": s.count(|v| matches!(v, AssignmentVerdict::Inconclusive { .. })),
            "witnesses": s.witnesses().map(|(_, a)| ansatz_json(a)).collect::<Vec<_>>(),
        });
    }
    let ok = out.families.iter().all(|(_, c)| c.holds());
    v["verdict"] = json!(verdict(ok).0);
    Ok((v, verdict(ok).1))
}

fn dispatch(cmd: &Command) -> Res<(Value, u8)> {
    match cmd {
        Command::Check { eq } => cmd_check(eq),
        Command::Homogenize { eq } => cmd_homogenize(eq),
        Command::Expand { p, order, exp } => cmd_expand(*p, *order, *exp),
        Command::Constraints { eq, ansatz } => cmd_constraints(eq, ansatz),
        Command::Verify { eq, ansatz } => cmd_verify(eq, ansatz),
        Command::Classify { eq } => cmd_classify(eq),
        Command::Scan { eq, max_order, grid, mode, max_points } => {
            cmd_scan(eq, *max_order, *grid, *mode, *max_points)
        }
        Command::SampleCheck { eq, models, ansatz, samples, seed } => {
            cmd_sample_check(eq, models.as_deref(), ansatz.as_deref(), *samples, *seed)
        }
        Command::Polarize { models, m, samples, seed } => cmd_polarize(models, *m, *samples, *seed),
        Command::Corollary { kind, eq, p, q, n, kappa, order, c, grid } => cmd_corollary(
            *kind,
            eq,
            *p,
            *q,
            *n,
            kappa.as_deref(),
            *order,
            c.as_deref(),
            *grid,
        ),
    }
}

fn envelope(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    if let Value::Object(b) = body {
        map.extend(b);
    }
    Value::Object(map)
}

/// Plain-text rendering of a JSON document.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    text_into(v, 0, &mut out);
    out
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(
            a.iter().map(|x| scalar_text(x).expect("scalar")).collect::<Vec<_>>().join(", "),
        ),
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn text_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text_into(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{}]\n", i + 1));
                        text_into(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other).expect("scalar"))),
    }
}

/// Parses arguments (the first is the program name) and runs one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let name = cli.command.name();
    let (doc, code, err) = match dispatch(&cli.command) {
        Ok((v, code)) => (envelope(name, v), code, None),
        Err(Failure::Usage(m)) => {
            (envelope(name, json!({"error": {"kind": "usage", "message": m}})), 2, Some(m))
        }
        Err(Failure::Engine(m)) => {
            (envelope(name, json!({"error": {"kind": "engine", "message": m}})), 1, Some(m))
        }
    };
    let stdout = if cli.pretty {
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    } else if cli.json {
        serde_json::to_string(&doc).expect("serializable") + "\n"
    } else if err.is_some() {
        String::new()
    } else {
        render_text(&doc)
    };
    let stderr = err.map(|m| format!("error: {m}\n")).unwrap_or_default();
    Outcome { code, stdout, stderr }
}
