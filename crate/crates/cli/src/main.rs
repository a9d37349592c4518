mod input;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use wgl_core::interpolants::cascade::{build_cascade_plan, pairing, ultra_interpolant, FactoredSeries, Variant};
use wgl_core::interpolants::uniformize::{estimate_exp_square_constant, uniformize, uniformize_lambda_p};
use wgl_core::riesz::{convolution_identities_check, interpolant, parseval_pairing, verify_key_bounds};
use wgl_core::tensor::{grothendieck_ratio, injective_norm_complex, littlewood_orlicz_report, quadratic_ratio, FieldMode};
use wgl_core::{sampling, DyadicDomain, Kind, RieszParams, Signal, VerifyConfig};

use input::{usage, UsageError};

#[derive(Parser, Debug)]
#[command(name = "wgl", version, about = "Walsh analysis, Riesz-product interpolants and bilinear-form norms")]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Omit the timestamp so identical runs give identical bytes.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Walsh transform of point values (or the inverse of a coefficient file).
    Fwht(FwhtArgs),
    /// Q or P interpolant of x with optional checks.
    Riesz(RieszArgs),
    /// Cascade ultra-interpolant and the pairing residual.
    Cascade(CascadeArgs),
    /// Truncation uniformizer of a Rademacher sum.
    Uniformize(UniformizeArgs),
    /// Norms and ratios of a bilinear form given as a matrix.
    Norms(NormsArgs),
    /// The full invariant suite.
    VerifyAll(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
struct FwhtArgs {
    /// Inline point values or a signal JSON file.
    #[arg(long)]
    x: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
enum KindArg {
    #[value(alias = "Q")]
    Q,
    #[value(alias = "P")]
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Check {
    Bounds,
    Conv,
    Parseval,
}

#[derive(Args, Debug, Serialize)]
struct RieszArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Inline list or JSON file; random Gaussian when absent.
    #[arg(long)]
    x: Option<String>,
    /// Second vector for conv and parseval checks; random when absent.
    #[arg(long)]
    y: Option<String>,
    #[arg(long, value_enum, default_value_t = KindArg::Q)]
    kind: KindArg,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    /// Exponent in [1, inf]; "inf" accepted.
    #[arg(long, default_value = "2")]
    s: String,
    /// Exponent of y for the conv check; defaults to s.
    #[arg(long)]
    t: Option<String>,
    #[arg(long, value_enum)]
    check: Option<Check>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum VariantArg {
    Odd,
    Full,
}

#[derive(Args, Debug, Serialize)]
struct CascadeArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Odd)]
    variant: VariantArg,
    #[arg(long, default_value = "2")]
    s: String,
    /// Exponent for the pair; defaults to the dual of s.
    #[arg(long)]
    t: Option<String>,
    /// Random ℓ^s-unit vector when absent.
    #[arg(long)]
    x: Option<String>,
    /// Pair with y (inline or file); a bare --pair draws a random unit y.
    #[arg(long, num_args = 0..=1, default_missing_value = "random")]
    pair: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct UniformizeArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// Λ(p) variant for p > 2.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    x: Option<String>,
    /// Draws for the exp-square surrogate.
    #[arg(long, default_value_t = 10_000)]
    kappa_samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Report {
    Littlewood,
    Grothendieck,
    Quadratic,
}

#[derive(Args, Debug, Serialize)]
struct NormsArgs {
    /// CSV (`re` or `re:im` cells) or JSON matrix file.
    #[arg(long)]
    matrix: String,
    /// Defaults to real for real matrices, complex otherwise.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Dimension of the unit vectors; defaults to the smaller side.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long, value_enum, default_value_t = Report::Grothendieck)]
    report: Report,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    /// Random draws per family.
    #[arg(long, default_value_t = 200)]
    cases: usize,
}

/// A finished command: its result, whether every check held, and an
/// optional flat table for CSV.
struct Outcome {
    result: Value,
    ok: bool,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

fn exponent(flag: &str, text: &str) -> anyhow::Result<f64> {
    let v: f64 = text.trim().parse().map_err(|_| usage(flag, format!("cannot parse {text:?}")))?;
    if v.is_nan() || v < 1.0 {
        return Err(usage(flag, "must lie in [1, inf]"));
    }
    Ok(v)
}

fn dual(s: f64) -> f64 {
    if s == 1.0 {
        f64::INFINITY
    } else if s.is_infinite() {
        1.0
    } else {
        s / (s - 1.0)
    }
}

/// Exponents as JSON-safe values ("inf" for infinity).
fn exp_json(s: f64) -> Value {
    if s.is_finite() {
        json!(s)
    } else {
        json!("inf")
    }
}

fn coordinate_vector(
    flag: &str,
    arg: Option<&str>,
    n: Option<usize>,
    seed: u64,
    stream: u64,
) -> anyhow::Result<Vec<Complex64>> {
    let v = match arg {
        Some(text) => input::vector(flag, text)?,
        None => {
            let n = n.ok_or_else(|| usage("--n", "required when no vector is given"))?;
            let mut rng = sampling::stream(seed, stream);
            sampling::to_complex(&sampling::gaussian(&mut rng, n))
        }
    };
    if let Some(n) = n {
        if v.len() != n {
            return Err(usage(flag, format!("has {} entries but --n is {n}", v.len())));
        }
    }
    DyadicDomain::new(v.len()).map_err(|e| usage(flag, e))?;
    Ok(v)
}

fn unit(v: Vec<Complex64>, s: f64) -> Vec<Complex64> {
    let norm = wgl_core::dyadic::complex_norm(&v, s);
    if norm == 0.0 {
        v
    } else {
        v.into_iter().map(|z| z / norm).collect()
    }
}

fn fwht_cmd(a: &FwhtArgs) -> anyhow::Result<Outcome> {
    let out = match input::signal("--x", &a.x)? {
        Signal::Point(p) => Signal::Coeff(p.to_series()),
        Signal::Coeff(c) => Signal::Point(c.to_points()),
    };
    let js = out.to_json();
    let rows = js
        .re
        .iter()
        .zip(&js.im)
        .enumerate()
        .map(|(k, (r, i))| vec![k.to_string(), format!("{r:e}"), format!("{i:e}")])
        .collect();
    Ok(Outcome {
        result: serde_json::to_value(&js)?,
        ok: true,
        table: Some((vec!["index", "re", "im"], rows)),
    })
}

fn riesz_cmd(a: &RieszArgs, seed: u64) -> anyhow::Result<Outcome> {
    let s = exponent("--s", &a.s)?;
    let x = coordinate_vector("--x", a.x.as_deref(), a.n, seed, 0)?;
    let kind = match a.kind {
        KindArg::Q => Kind::Q,
        KindArg::P => Kind::P,
    };
    let params = RieszParams::new(kind, a.epsilon, s).map_err(|e| usage("--epsilon/--s", e))?;
    let out = interpolant(&x, &params)?;
    let mut result = json!({
        "kind": kind,
        "epsilon": a.epsilon,
        "s": exp_json(s),
        "x": {"re": x.iter().map(|z| z.re).collect::<Vec<_>>(), "im": x.iter().map(|z| z.im).collect::<Vec<_>>()},
        "interpolant": out.series.to_json(),
        "perturbation_ls_norm": out.perturbation.ls_norm(s)?,
    });
    let mut ok = true;
    let mut table = None;
    let y = || coordinate_vector("--y", a.y.as_deref(), Some(x.len()), seed, 1);
    match a.check {
        None => {}
        Some(Check::Bounds) => {
            let rep = verify_key_bounds(&x, a.epsilon, s)?;
            ok = rep.violations == 0;
            table = Some((
                vec!["tag", "kind", "measured", "bound", "literal_bound", "pass"],
                rep.checks
                    .iter()
                    .map(|c| {
                        vec![
                            c.tag.clone(),
                            format!("{:?}", c.kind),
                            format!("{:e}", c.measured),
                            format!("{:e}", c.bound),
                            c.literal_bound.map(|b| format!("{b:e}")).unwrap_or_default(),
                            c.pass.to_string(),
                        ]
                    })
                    .collect(),
            ));
            result["check"] = serde_json::to_value(&rep)?;
        }
        Some(Check::Conv) => {
            let t = match &a.t {
                Some(t) => exponent("--t", t)?,
                None => s,
            };
            let y = y()?;
            let re = |v: &[Complex64]| v.iter().map(|z| z.re).collect::<Vec<_>>();
            let rep = convolution_identities_check(&re(&x), &re(&y), s, t, None)?;
            ok = rep.passed();
            table = Some((
                vec!["tag", "max_abs_diff", "literal_max_abs_diff", "pass"],
                rep.rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.tag.clone(),
                            format!("{:e}", r.max_abs_diff),
                            r.literal_max_abs_diff.map(|b| format!("{b:e}")).unwrap_or_default(),
                            r.pass.to_string(),
                        ]
                    })
                    .collect(),
            ));
            result["check"] = serde_json::to_value(&rep)?;
        }
        Some(Check::Parseval) => {
            let y = y()?;
            let g = interpolant(&y, &params)?;
            let split = parseval_pairing(&out, &g)?;
            let dot: Complex64 = x.iter().zip(&y).map(|(p, q)| p * q).sum();
            let err = (split.dot_part - dot).norm();
            let scale = wgl_core::dyadic::complex_norm(&x, 2.0) * wgl_core::dyadic::complex_norm(&y, 2.0);
            ok = err <= 1e-10 * scale.max(1.0);
            result["check"] = json!({"split": split, "dot": dot, "dot_part_error": err, "pass": ok});
        }
    }
    Ok(Outcome { result, ok, table })
}

fn series_summary(f: &FactoredSeries) -> Value {
    json!({
        "construction": f.construction,
        "levels": f.factors.len(),
        "certified_depth": f.certified_depth,
        "decay": f.decay,
        "input_norm": f.input_norm,
        "sup_certificate": f.sup_certificate(),
        "norm_certificate": f.norm_certificate(),
        "predicted_bound": f.predicted_bound(),
        "level_bound": f.level_bound,
        "level_bound_label": f.level_bound_label,
        "tail_len": f.tail.len(),
    })
}

fn cascade_cmd(a: &CascadeArgs, seed: u64) -> anyhow::Result<Outcome> {
    let s = exponent("--s", &a.s)?;
    let x = match &a.x {
        Some(_) => coordinate_vector("--x", a.x.as_deref(), a.n, seed, 0)?,
        None => unit(coordinate_vector("--x", None, a.n, seed, 0)?, s),
    };
    let domain = DyadicDomain::new(x.len()).map_err(|e| usage("--n", e))?;
    let variant = match a.variant {
        VariantArg::Odd => Variant::Odd,
        VariantArg::Full => Variant::Full,
    };
    if a.depth == 0 {
        return Err(usage("--depth", "must be at least 1"));
    }
    let plan = build_cascade_plan(&domain, a.depth, variant).map_err(|e| usage("--depth", e))?;
    let f = ultra_interpolant(&x, &plan, s)?;
    let mut result = json!({
        "n": x.len(),
        "depth": a.depth,
        "variant": a.variant,
        "s": exp_json(s),
        "level_sizes": plan.sizes(),
        "terminated": plan.terminated,
        "x": {"re": x.iter().map(|z| z.re).collect::<Vec<_>>(), "im": x.iter().map(|z| z.im).collect::<Vec<_>>()},
        "series": series_summary(&f),
    });
    let mut ok = f.sup_certificate() <= f.predicted_bound() * (1.0 + 1e-9) + 1e-12;
    if let Some(pair) = &a.pair {
        let t = match &a.t {
            Some(t) => exponent("--t", t)?,
            None => dual(s),
        };
        let y = if pair == "random" {
            unit(coordinate_vector("--pair", None, Some(x.len()), seed, 1)?, t)
        } else {
            coordinate_vector("--pair", Some(pair), Some(x.len()), seed, 1)?
        };
        let g = ultra_interpolant(&y, &plan, t)?;
        let pr = pairing(&f, &g).map_err(|e| usage("--t", e))?;
        let dot: Complex64 = x.iter().zip(&y).map(|(p, q)| p * q).sum();
        let residual = (pr.value - dot).norm();
        let pass = residual <= pr.residual_bound * (1.0 + 1e-9) + 1e-12;
        ok &= pass;
        result["pair"] = json!({
            "t": exp_json(t),
            "y": {"re": y.iter().map(|z| z.re).collect::<Vec<_>>(), "im": y.iter().map(|z| z.im).collect::<Vec<_>>()},
            "series": series_summary(&g),
            "value": pr.value,
            "dot": dot,
            "residual": residual,
            "residual_bound": pr.residual_bound,
            "effective_depth": pr.effective_depth,
            "tail_product": pr.tail_product,
            "per_level": pr.per_level,
            "pass": pass,
        });
    }
    result["pass"] = json!(ok);
    Ok(Outcome {
        result,
        ok,
        table: None,
    })
}

fn uniformize_cmd(a: &UniformizeArgs, seed: u64) -> anyhow::Result<Outcome> {
    let x = match &a.x {
        Some(_) => coordinate_vector("--x", a.x.as_deref(), a.n, seed, 0)?,
        None => unit(coordinate_vector("--x", None, a.n, seed, 0)?, 2.0),
    };
    if !(a.delta > 0.0 && a.delta < 1.0) {
        return Err(usage("--delta", "must lie in (0, 1)"));
    }
    let rep = match a.p {
        None => {
            let est = estimate_exp_square_constant(x.len(), a.kappa_samples.max(1), seed)?;
            uniformize(&x, a.delta, est.value)?
        }
        Some(p) => uniformize_lambda_p(&x, a.delta, p, None).map_err(|e| usage("--p", e))?,
    };
    Ok(Outcome {
        ok: !rep.hard_failure,
        result: serde_json::to_value(&rep)?,
        table: None,
    })
}

fn norms_cmd(a: &NormsArgs, seed: u64) -> anyhow::Result<Outcome> {
    let m = input::matrix("--matrix", &a.matrix)?;
    let mode = match a.mode {
        Some(Mode::Real) => FieldMode::Real,
        Some(Mode::Complex) => FieldMode::Complex,
        None if m.is_real() => FieldMode::Real,
        None => FieldMode::Complex,
    };
    if mode == FieldMode::Real && !m.is_real() {
        return Err(usage("--mode", "real mode needs a real matrix"));
    }
    let dim = a.dim.unwrap_or(m.rows().min(m.cols()));
    if dim == 0 {
        return Err(usage("--dim", "must be at least 1"));
    }
    let result = match a.report {
        Report::Littlewood => serde_json::to_value(littlewood_orlicz_report(&m, a.restarts, seed))?,
        Report::Grothendieck => {
            let rep = grothendieck_ratio(&m, dim, mode, a.restarts, seed)?;
            let mut v = serde_json::to_value(&rep)?;
            if mode == FieldMode::Complex {
                v["complex_sandwich"] = serde_json::to_value(injective_norm_complex(&m, a.restarts, seed))?;
            }
            v
        }
        Report::Quadratic => {
            serde_json::to_value(quadratic_ratio(&m, dim, mode, a.restarts, seed).map_err(|e| usage("--matrix", e))?)?
        }
    };
    let ok = match a.report {
        Report::Littlewood => result["chain_ok"].as_bool().unwrap_or(false),
        _ => true,
    };
    Ok(Outcome {
        result,
        ok,
        table: None,
    })
}

fn verify_cmd(a: &VerifyArgs, seed: u64) -> anyhow::Result<Outcome> {
    let cfg = VerifyConfig {
        max_n: a.max_n,
        seed,
        cases: a.cases,
    };
    let rep = wgl_core::run_suite(&cfg).map_err(|e| usage("--max-n", e))?;
    let rows = rep
        .rows
        .iter()
        .map(|r| {
            vec![
                r.tag.clone(),
                r.cases.to_string(),
                r.violations.to_string(),
                format!("{:.6e}", r.worst_ratio),
                if r.informational {
                    "INFO".to_string()
                } else if r.pass {
                    "PASS".to_string()
                } else {
                    "FAIL".to_string()
                },
                r.note.clone().unwrap_or_default(),
            ]
        })
        .collect();
    Ok(Outcome {
        ok: rep.passed,
        result: serde_json::to_value(&rep)?,
        table: Some((vec!["tag", "cases", "violations", "worst_ratio", "status", "note"], rows)),
    })
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(text) = std::env::var("WGL_THREADS") {
        let n: usize = text
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| usage("WGL_THREADS", "must be a positive integer"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("building the worker pool")?;
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    configure_threads()?;
    match &cli.command {
        Command::Fwht(a) => fwht_cmd(a),
        Command::Riesz(a) => riesz_cmd(a, cli.seed),
        Command::Cascade(a) => cascade_cmd(a, cli.seed),
        Command::Uniformize(a) => uniformize_cmd(a, cli.seed),
        Command::Norms(a) => norms_cmd(a, cli.seed),
        Command::VerifyAll(a) => verify_cmd(a, cli.seed),
    }
}

fn emit(cli: &Cli, outcome: Outcome) -> anyhow::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.format {
        Format::Json => {
            let mut doc = json!({
                "schema": 1,
                "config": {
                    "seed": cli.seed,
                    "format": cli.format,
                    "command": &cli.command,
                },
                "ok": outcome.ok,
                "result": outcome.result,
            });
            if !cli.no_timestamp {
                let secs = std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                doc["timestamp"] = json!(secs);
            }
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let (header, rows) = outcome.table.ok_or_else(|| {
                usage("--format", "csv is only available for flat tables (fwht, riesz --check bounds|conv, verify-all)")
            })?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&header)?;
            for r in rows {
                w.write_record(&r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| {
        let ok = o.ok;
        emit(&cli, o).map(|_| ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if e.downcast_ref::<UsageError>().is_some() {
                eprintln!("error: {e}");
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
