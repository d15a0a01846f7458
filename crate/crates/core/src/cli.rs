//! Command-line front end. Parsing is done with clap; every command writes
//! to a caller-supplied sink so the binary and the tests share one path.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::admseq::{enumerate_admissible, enumerate_one_admissible, is_one_admissible};
use crate::arith::{partition, sigma, sublattice_count};
use crate::counting::{
    count_by_components, count_closed_form, count_convolution, cross_validate, CountConfig,
    CountQuery, Surface,
};
use crate::cremona::{
    class_from_sequence, evaluate_invariant, pairing_data, reduce_to_section_class, scramble,
    section_class, BlowupClass, InvariantValue, ReductionStep,
};
use crate::exactq::{series_mul, ExactRational};
use crate::modforms::{eta_product_inverse, k3_generating_series, re_generating_series};
use crate::{Error, Result};

/// Default rewrite budget for the Cremona engine.
pub const DEFAULT_MAX_STEPS: usize = 256;
/// Default step budget when reducing a class to `e9 + iF`.
pub const DEFAULT_REDUCE_STEPS: usize = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "curvecount",
    version,
    about = "Exact counts of nodal curves on K3 and rational elliptic surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coefficients of the closed-form generating series.
    Series(SeriesArgs),
    /// Compute a single count N_g(n) (k3) or N_g^Y(C_n) (re).
    Count(CountArgs),
    /// Reduce a nine-point class with F.C = 1 to the form e9 + iF.
    Reduce(ReduceArgs),
    /// List admissible sequences of a given size.
    Admissible(AdmissibleArgs),
    /// Cross-check all methods and identities; exit 0 iff all pass.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceArg {
    K3,
    Re,
}

impl From<SurfaceArg> for Surface {
    fn from(s: SurfaceArg) -> Surface {
        match s {
            SurfaceArg::K3 => Surface::K3,
            SurfaceArg::Re => Surface::RationalElliptic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Convolution,
    Components,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Convolution => "convolution",
            Method::Components => "components",
        }
    }
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub surface: SurfaceArg,
    #[arg(long)]
    pub genus: u32,
    #[arg(long)]
    pub order: usize,
    /// Emit one JSON document instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub surface: SurfaceArg,
    #[arg(long)]
    pub genus: u32,
    #[arg(long)]
    pub nodes: u32,
    #[arg(long, value_enum, default_value = "closed")]
    pub method: Method,
    /// Rewrite budget per class for the components method.
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Class as "d;a1,...,a9" (fewer multiplicities are padded with zeros).
    pub class: String,
    #[arg(long, default_value_t = DEFAULT_REDUCE_STEPS)]
    pub max_steps: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct AdmissibleArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub size: u64,
    /// Only list 1-admissible sequences.
    #[arg(long)]
    pub one_admissible: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Smaller grids.
    #[arg(long)]
    pub quick: bool,
    /// Seed for the random class scrambles.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Override the K3 nodal fiber count used by the enumerative methods.
    #[arg(long, hide = true)]
    pub k3_fiber_slots: Option<u32>,
}

/// Runs one command. `Ok(false)` means the command ran but its check failed
/// (only `selftest` does this); errors carry the reason for a nonzero exit.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Series(a) => cmd_series(a, out).map(|_| true),
        Command::Count(a) => cmd_count(a, out).map(|_| true),
        Command::Reduce(a) => cmd_reduce(a, out).map(|_| true),
        Command::Admissible(a) => cmd_admissible(a, out).map(|_| true),
        Command::Selftest(a) => cmd_selftest(a, out),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}

fn big_json(n: &BigUint) -> Value {
    Value::Number(serde_json::Number::from_str(&n.to_string()).expect("decimal digits"))
}

fn rational_json(r: &ExactRational) -> Value {
    match r.to_integer() {
        Some(n) => {
            Value::Number(serde_json::Number::from_str(&n.to_string()).expect("decimal digits"))
        }
        None => Value::String(r.to_string()),
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    let text =
        serde_json::to_string_pretty(v).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    writeln!(out, "{text}").map_err(io)
}

pub fn cmd_series(a: &SeriesArgs, out: &mut dyn Write) -> Result<()> {
    let surface = Surface::from(a.surface);
    let series = match surface {
        Surface::K3 => k3_generating_series(a.genus, a.order),
        Surface::RationalElliptic => re_generating_series(a.genus, a.order),
    };
    if a.json {
        let coeffs: Vec<Value> = series.coeffs().iter().map(rational_json).collect();
        emit_json(
            out,
            &json!({
                "surface": surface.short_name(),
                "genus": a.genus,
                "order": a.order,
                "coefficients": coeffs,
            }),
        )
    } else {
        for (n, c) in series.coeffs().iter().enumerate() {
            writeln!(out, "{n}: {c}").map_err(io)?;
        }
        Ok(())
    }
}

pub fn cmd_count(a: &CountArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = CountConfig::from_env()?;
    let q = CountQuery::new(a.surface.into(), a.genus, a.nodes);
    let n = match a.method {
        Method::Closed => count_closed_form(q),
        Method::Convolution => count_convolution(q, &cfg)?,
        Method::Components => count_by_components(q, a.max_steps, &cfg)?,
    };
    if a.json {
        emit_json(
            out,
            &json!({
                "surface": q.surface.short_name(),
                "genus": q.genus,
                "nodes": q.nodes,
                "method": a.method.name(),
                "count": big_json(&n),
            }),
        )
    } else {
        writeln!(out, "{n}").map_err(io)
    }
}

pub fn cmd_reduce(a: &ReduceArgs, out: &mut dyn Write) -> Result<()> {
    let class: BlowupClass = a.class.parse()?;
    let r = reduce_to_section_class(&class, a.max_steps)?;
    if a.json {
        let steps: Vec<Value> = r
            .steps
            .iter()
            .map(|s| {
                let kind = match s {
                    ReductionStep::PadZeros(_) => "pad",
                    ReductionStep::Permute { .. } => "permute",
                    ReductionStep::Cremona(_) => "cremona",
                };
                json!({ "move": kind, "class": s.result().to_string() })
            })
            .collect();
        emit_json(
            out,
            &json!({
                "input": class.to_string(),
                "fibers": r.fibers,
                "cremona_transforms": r.cremona_count(),
                "steps": steps,
            }),
        )
    } else {
        writeln!(out, "start   -> {class}").map_err(io)?;
        for s in &r.steps {
            writeln!(out, "{s}").map_err(io)?;
        }
        writeln!(out, "result: e9 + {} F", r.fibers).map_err(io)?;
        writeln!(
            out,
            "i = {}, cremona transforms = {}",
            r.fibers,
            r.cremona_count()
        )
        .map_err(io)
    }
}

pub fn cmd_admissible(a: &AdmissibleArgs, out: &mut dyn Write) -> Result<()> {
    let seqs = if a.one_admissible {
        enumerate_one_admissible(a.size)
    } else {
        enumerate_admissible(a.size)
    };
    if a.json {
        let list: Vec<Value> = seqs.iter().map(|s| Value::String(s.to_string())).collect();
        emit_json(
            out,
            &json!({
                "size": a.size,
                "one_admissible": a.one_admissible,
                "sequences": list,
                "count": seqs.len(),
            }),
        )
    } else {
        for s in &seqs {
            writeln!(out, "{s}").map_err(io)?;
        }
        writeln!(out, "count: {}", seqs.len()).map_err(io)
    }
}

struct Check {
    name: String,
    passed: bool,
    detail: String,
    millis: u128,
}

fn check(name: impl Into<String>, f: impl FnOnce() -> (bool, String)) -> Check {
    let start = Instant::now();
    let (passed, detail) = f();
    Check {
        name: name.into(),
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

pub fn cmd_selftest(a: &SelftestArgs, out: &mut dyn Write) -> Result<bool> {
    let mut cfg = CountConfig::from_env()?;
    if let Some(slots) = a.k3_fiber_slots {
        cfg.k3_fiber_slots = slots;
    }
    let quick = a.quick;
    let mut checks = Vec::new();

    checks.push(check("k3 series through q^3", || {
        let expected: [[u64; 4]; 4] = [
            [1, 24, 324, 3200],
            [1, 30, 480, 5460],
            [1, 36, 672, 8728],
            [1, 42, 900, 13220],
        ];
        let ok = expected.iter().enumerate().all(|(g, row)| {
            k3_generating_series(g as u32, 3).to_naturals().ok()
                == Some(row.iter().map(|&x| BigUint::from(x)).collect())
        });
        (ok, "F_0..F_3".into())
    }));

    checks.push(check("partition series", || {
        let got = eta_product_inverse(1, 8).to_naturals().ok();
        let want: Vec<BigUint> = [1u32, 1, 2, 3, 5, 7, 11, 15, 22]
            .map(BigUint::from)
            .to_vec();
        (got == Some(want), "order 8".into())
    }));

    let (conv_g, conv_n, comp_g, comp_n) = if quick { (2, 4, 1, 3) } else { (3, 6, 2, 4) };
    for surface in [Surface::K3, Surface::RationalElliptic] {
        let mut report_text = String::new();
        checks.push(check(
            format!("{surface}: closed = convolution (g<={conv_g}, n<={conv_n})"),
            || {
                let ok = (0..=conv_g).all(|g| {
                    (0..=conv_n).all(|n| {
                        let q = CountQuery::new(surface, g, n);
                        count_convolution(q, &cfg).ok() == Some(count_closed_form(q))
                    })
                });
                (ok, String::new())
            },
        ));
        checks.push(check(
            format!("{surface}: all three methods (g<={comp_g}, n<={comp_n})"),
            || {
                let report = cross_validate(surface, comp_g, comp_n, DEFAULT_MAX_STEPS, &cfg);
                report_text = report.to_string();
                (report.passed(), String::new())
            },
        ));
        if let Some(c) = checks.last_mut() {
            c.detail = report_text;
        }
    }

    let max_a = if quick { 9 } else { 12 };
    checks.push(check(
        format!("#1-admissible(a) = p(a), a<={max_a}"),
        || {
            let ok = (1..=max_a)
                .all(|a| BigUint::from(enumerate_one_admissible(a).len()) == partition(a as usize));
            (ok, String::new())
        },
    ));

    let max_s = if quick { 6 } else { 8 };
    checks.push(check(
        format!("component value is 1 iff 1-admissible, |s|<={max_s}"),
        || {
            let mut bad = Vec::new();
            for a in 1..=max_s {
                for s in enumerate_admissible(a) {
                    let want = if is_one_admissible(&s) {
                        InvariantValue::One
                    } else {
                        InvariantValue::Zero
                    };
                    if evaluate_invariant(&class_from_sequence(&s), DEFAULT_MAX_STEPS) != want {
                        bad.push(s.to_string());
                    }
                }
            }
            (bad.is_empty(), bad.join("; "))
        },
    ));

    checks.push(check("#sublattices(b) = sigma(b), b<=200", || {
        let ok = (1..=200u64).all(|b| sublattice_count(b).ok() == sigma(b).ok());
        (ok, String::new())
    }));

    let scrambles = if quick { 100 } else { 1000 };
    checks.push(check(
        format!("{scrambles} scrambled C_n reduce back"),
        || {
            let mut rng = StdRng::seed_from_u64(a.seed);
            let mut failures = Vec::new();
            for _ in 0..scrambles {
                let (g, n) = (rng.gen_range(0..=3i64), rng.gen_range(0..=6i64));
                let moves = rng.gen_range(1..=10);
                let path = scramble(&section_class(g + n), moves, &mut rng);
                let start = path.last().expect("non-empty path");
                let pairing = pairing_data(start);
                let ok = path.iter().all(|c| pairing_data(c) == pairing)
                    && matches!(reduce_to_section_class(start, DEFAULT_REDUCE_STEPS),
                    Ok(r) if r.fibers == g + n
                        && r.steps.iter().all(|s| pairing_data(s.result()) == pairing));
                if !ok {
                    failures.push(start.to_string());
                }
            }
            (failures.is_empty(), failures.join("; "))
        },
    ));

    checks.push(check("res series squared = k3 series (order 20)", || {
        let re = re_generating_series(0, 20);
        (
            series_mul(&re, &re) == k3_generating_series(0, 20),
            String::new(),
        )
    }));

    let max_order = if quick { 15 } else { 30 };
    checks.push(check(
        format!("integer coefficients (g<=5, order<={max_order})"),
        || {
            let ok = (0..=5).all(|g| {
                k3_generating_series(g, max_order).to_naturals().is_ok()
                    && re_generating_series(g, max_order).to_naturals().is_ok()
            });
            (ok, String::new())
        },
    ));

    let w = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &checks {
        writeln!(
            out,
            "{:<w$}  {}  {:>7} ms",
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.millis
        )
        .map_err(io)?;
        if !c.passed && !c.detail.is_empty() {
            for line in c.detail.lines() {
                writeln!(out, "    {line}").map_err(io)?;
            }
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(out, "{} checks, {} failed", checks.len(), failed).map_err(io)?;
    Ok(failed == 0)
}
