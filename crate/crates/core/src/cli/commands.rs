use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use super::config::{Format, RunConfig};
use super::input::{InputArgs, Loaded, ROUNDING_NOTE};
use super::{CliError, Command, CommonArgs};
use crate::ccsystem::{grad_parallel_check, relation_residual, CCSolution};
use crate::geometry::{cayley_menger, embed, realizability, trapezoid_residual, Realizability};
use crate::golden;
use crate::solver::{scan_family, scan_family_with_threads, solve_equal_mass, EqualMassProblem, MassPair, SolveError};
use crate::verify::{check_omega, render_table, run_suites, sample_omega_trapezoids, Suite};

type Out<'a> = &'a mut dyn Write;

pub(super) fn dispatch(command: Command, out: Out, err: Out) -> Result<bool, CliError> {
    match command {
        Command::Validate { input, common } => validate(&input, &common, out),
        Command::Masses { input, force, common } => masses(&input, force, &common, out, err),
        Command::Scan { threads, output, summary, common } => {
            scan(threads, output.as_deref(), summary.as_deref(), &common, out, err)
        }
        Command::SolveEqualMass { pair, init, a, height, common } => equal_mass(&pair, &init, a, height, &common, out),
        Command::Verify { suites, samples, seed, common } => verify(&suites, samples, seed, &common, out),
        Command::Gradcheck { input, common } => gradcheck(&input, &common, out),
        Command::Embed { input, output, check, common } => {
            embed_cmd(&input, output.as_deref(), check, &common, out, err)
        }
    }
}

fn load_config(common: &CommonArgs) -> Result<RunConfig, CliError> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            RunConfig::parse(&text).map_err(|source| CliError::Config { path: path.display().to_string(), source })?
        }
        None => RunConfig::default(),
    };
    let t = &mut cfg.scan.tolerances;
    let overrides = [
        (common.tol_relation, &mut t.relation),
        (common.tol_trapezoid, &mut t.trapezoid),
        (common.tol_cayley_menger, &mut t.cayley_menger),
        (common.tol_dziobek, &mut t.dziobek),
        (common.tol_mass, &mut t.mass_consistency),
    ];
    for (value, slot) in overrides {
        if let Some(v) = value {
            *slot = v;
        }
    }
    if let Some(v) = common.tol_spread {
        t.lambda_spread = v;
        t.sigma_spread = v;
    }
    if let Some(v) = common.tol_root {
        cfg.scan.tol_root = v;
    }
    if let Some(v) = common.tol_grad {
        cfg.verify.gradient_tol = v;
    }
    if let Some(f) = common.format {
        cfg.format = Some(f);
    }
    cfg.scan.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    cfg.sync();
    Ok(cfg)
}

fn format_of(cfg: &RunConfig) -> Format {
    cfg.format.unwrap_or_default()
}

fn meta(loaded: &Loaded) -> serde_json::Value {
    json!({ "source": loaded.source, "rounding": ROUNDING_NOTE })
}

fn write_json<T: Serialize>(out: Out, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    value: f64,
    threshold: f64,
    pass: bool,
}

fn check(name: &'static str, value: f64, threshold: f64) -> Check {
    Check { name, value, threshold, pass: value.abs() <= threshold }
}

fn write_checks(out: Out, format: Format, checks: &[Check]) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            writeln!(out, "check,value,threshold,pass")?;
            for c in checks {
                writeln!(out, "{},{},{},{}", c.name, c.value, c.threshold, c.pass)?;
            }
        }
        _ => {
            for c in checks {
                let status = if c.pass { "ok" } else { "FAIL" };
                writeln!(out, "{:<24} {:>12.4e}  (<= {:.0e})  {status}", c.name, c.value, c.threshold)?;
            }
        }
    }
    Ok(())
}

fn validate(input: &InputArgs, common: &CommonArgs, out: Out) -> Result<bool, CliError> {
    let cfg = load_config(common)?;
    let loaded = input.load()?;
    let r = &loaded.distances;
    let tol = &cfg.scan.tolerances;
    let verdict = realizability(r, tol.cayley_menger);
    let omega = check_omega(r, tol.omega_band);
    let checks = [
        check("relation_residual", relation_residual(r).normalized, tol.relation),
        check("trapezoid_residual", trapezoid_residual(r).normalized, tol.trapezoid),
        check("cayley_menger/r13^8", cayley_menger(r) / r.r13.powi(8), tol.cayley_menger),
    ];
    let all_pass = checks.iter().all(|c| c.pass) && verdict.is_realizable() && omega.in_omega;

    match format_of(&cfg) {
        Format::Json => write_json(
            out,
            &json!({
                "meta": meta(&loaded),
                "distances": r,
                "checks": checks,
                "realizability": verdict,
                "omega": omega,
                "pass": all_pass,
            }),
        )?,
        format => {
            if format == Format::Table {
                writeln!(out, "source: {}", loaded.source)?;
                writeln!(out, "distances: {r}")?;
            }
            write_checks(out, format, &checks)?;
            if format == Format::Table {
                let verdict_name = match &verdict {
                    Realizability::Realizable3D => "realizable in 3D".to_string(),
                    Realizability::Planar => "planar".to_string(),
                    Realizability::NotRealizable { violations } => {
                        format!("not realizable ({} violations)", violations.len())
                    }
                };
                writeln!(out, "realizability: {verdict_name}")?;
                writeln!(out, "in ordering region: {}", omega.in_omega)?;
                for v in &omega.violations {
                    writeln!(out, "  violated {} (slack {:e})", v.name, v.slack)?;
                }
                for w in &omega.warnings {
                    writeln!(out, "  barely strict {} (slack {:e})", w.name, w.slack)?;
                }
                writeln!(out, "{}", if all_pass { "PASS" } else { "FAIL" })?;
            }
        }
    }
    Ok(all_pass)
}

fn masses(input: &InputArgs, force: bool, common: &CommonArgs, out: Out, err: Out) -> Result<bool, CliError> {
    let cfg = load_config(common)?;
    let loaded = input.load()?;
    let r = &loaded.distances;
    let tol = &cfg.scan.tolerances;
    let relation = relation_residual(r).normalized;
    if relation.abs() > tol.relation && !force {
        writeln!(
            err,
            "refusing: relation residual {relation:e} exceeds {:e}; this is not a central configuration (use --force)",
            tol.relation
        )?;
        return Ok(false);
    }
    let sol = CCSolution::evaluate(r, tol).map_err(|e| CliError::Usage(e.to_string()))?;
    let gates = sol.gate_failures(tol);
    let m = sol.masses;
    let ratios = [
        ("m1/m2", m.m1 / m.m2),
        ("m1/m3", m.m1 / m.m3),
        ("m1/m4", m.m1 / m.m4),
        ("m2/m4", m.m2 / m.m4),
        ("m3/m4", m.m3 / m.m4),
    ];
    match format_of(&cfg) {
        Format::Json => {
            let ratio_map: serde_json::Map<_, _> = ratios.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            write_json(
                out,
                &json!({
                    "meta": meta(&loaded),
                    "solution": sol,
                    "ratios": ratio_map,
                    "failed_gates": gates,
                }),
            )?;
        }
        Format::Csv => {
            writeln!(out, "m1,m2,m3,m4,lambda,sigma,lambda_spread,sigma_spread,consistency")?;
            let mu = sol.multipliers;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                m.m1, m.m2, m.m3, m.m4, mu.lambda, mu.sigma, mu.lambda_spread, mu.sigma_spread, m.consistency
            )?;
        }
        Format::Table => {
            writeln!(out, "source: {}", loaded.source)?;
            writeln!(out, "masses (m1 = 1): {:.17} {:.17} {:.17} {:.17}", m.m1, m.m2, m.m3, m.m4)?;
            for (name, v) in ratios {
                writeln!(out, "{name:<6} {v:.17}")?;
            }
            let mu = sol.multipliers;
            writeln!(out, "lambda {:.17e} (spread {:.2e})", mu.lambda, mu.lambda_spread)?;
            writeln!(out, "sigma  {:.17e} (spread {:.2e})", mu.sigma, mu.sigma_spread)?;
            writeln!(out, "ratio consistency {:.2e}", m.consistency)?;
            writeln!(out, "U = {:.12}, I = {:.12}", sol.energetics.potential, sol.energetics.inertia)?;
            if !gates.is_empty() {
                writeln!(out, "failed gates: {gates:?}")?;
            }
        }
    }
    Ok(gates.is_empty() || force)
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))
}

fn scan(
    threads: Option<usize>,
    output: Option<&Path>,
    summary_path: Option<&Path>,
    common: &CommonArgs,
    out: Out,
    err: Out,
) -> Result<bool, CliError> {
    let cfg = load_config(common)?;
    let threads = threads.or(cfg.threads);
    let result = match threads {
        Some(n) => scan_family_with_threads(&cfg.scan, n),
        None => scan_family(&cfg.scan),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let summary = result.summary();
    let output = output.map(Path::to_path_buf).or(cfg.csv_output.clone());
    let summary_path = summary_path.map(Path::to_path_buf).or(cfg.summary_output.clone());

    if format_of(&cfg) == Format::Json && output.is_none() {
        let rows: Vec<_> = result.solutions.iter().map(CCSolution::flat).collect();
        write_json(out, &json!({ "summary": summary, "solutions": rows, "failures": result.failures }))?;
        return Ok(true);
    }

    match &output {
        Some(path) => {
            let mut file = create(path)?;
            result.write_csv(&mut file)?;
            file.flush()?;
        }
        None => result.write_csv(&mut *out)?,
    }
    match &summary_path {
        Some(path) => {
            let mut file = create(path)?;
            serde_json::to_writer_pretty(&mut file, &summary).map_err(|e| CliError::Io(e.into()))?;
            writeln!(file)?;
        }
        // Keep stdout pure CSV when it carries the rows.
        None if output.is_none() => write_json(err, &summary)?,
        None => write_json(out, &summary)?,
    }
    Ok(true)
}

fn parse_pair(s: &str, what: &str) -> Result<(String, String), CliError> {
    let (x, y) = s.split_once(',').ok_or_else(|| CliError::Usage(format!("{what} must look like `x,y`, got `{s}`")))?;
    Ok((x.trim().to_string(), y.trim().to_string()))
}

fn equal_mass(
    pair: &str,
    init: &str,
    a: f64,
    height: Option<f64>,
    common: &CommonArgs,
    out: Out,
) -> Result<bool, CliError> {
    let cfg = load_config(common)?;
    let bad = |what: &str, v: &str| CliError::Usage(format!("cannot parse {what} `{v}`"));
    let (i, j) = parse_pair(pair, "--pair")?;
    let i: usize = i.parse().map_err(|_| bad("--pair", pair))?;
    let j: usize = j.parse().map_err(|_| bad("--pair", pair))?;
    let (c, d) = parse_pair(init, "--init")?;
    let c: f64 = c.parse().map_err(|_| bad("--init", init))?;
    let d: f64 = d.parse().map_err(|_| bad("--init", init))?;
    let pair = MassPair::new(i, j).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut problem = EqualMassProblem::new(pair, (c, d));
    problem.a_fixed = a;
    problem.height = height;
    problem.tolerances = cfg.scan.tolerances;
    let format = format_of(&cfg);
    match solve_equal_mass(&problem) {
        Ok(sol) => {
            match format {
                Format::Json => write_json(
                    out,
                    &json!({ "status": "converged", "iterations": sol.iterations, "solution": sol.solution }),
                )?,
                _ => {
                    writeln!(out, "converged in {} iterations", sol.iterations)?;
                    writeln!(out, "distances: {}", sol.solution.distances)?;
                    let m = sol.solution.masses;
                    writeln!(out, "masses: {:.15} {:.15} {:.15} {:.15}", m.m1, m.m2, m.m3, m.m4)?;
                    writeln!(out, "shape: {}", sol.solution.shape.tag)?;
                }
            }
            Ok(true)
        }
        Err(SolveError::ConvergedOutsideOmega { witness }) => {
            match format {
                Format::Json => write_json(out, &json!({ "status": "boundary", "witness": witness }))?,
                _ => {
                    writeln!(
                        out,
                        "no interior solution; iterates reached the boundary after {} steps",
                        witness.iterations
                    )?;
                    writeln!(out, "witness: {}", witness.distances)?;
                    writeln!(
                        out,
                        "side spread {:.2e}, base gap {:.2e}, mass gap {:.2e}",
                        witness.side_spread, witness.base_gap, witness.mass_gap
                    )?;
                }
            }
            Ok(false)
        }
        Err(e @ (SolveError::InvalidInput(_) | SolveError::ParallelogramDegenerate)) => {
            Err(CliError::Usage(e.to_string()))
        }
        Err(e) => {
            match format {
                Format::Json => write_json(out, &json!({ "status": "failed", "error": e.to_string() }))?,
                _ => writeln!(out, "solver failed: {e}")?,
            }
            Ok(false)
        }
    }
}

fn verify(
    suites: &[String],
    samples: Option<usize>,
    seed: Option<u64>,
    common: &CommonArgs,
    out: Out,
) -> Result<bool, CliError> {
    let mut cfg = load_config(common)?;
    if let Some(n) = samples {
        cfg.verify.samples = n;
    }
    if let Some(s) = seed {
        cfg.verify.seed = s;
    }
    let selected: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites
            .iter()
            .map(|s| {
                Suite::parse(s).ok_or_else(|| {
                    let names: Vec<_> = Suite::ALL.iter().map(Suite::name).collect();
                    CliError::Usage(format!("unknown suite `{s}` (known: {})", names.join(", ")))
                })
            })
            .collect::<Result<_, _>>()?
    };
    let reports = run_suites(&selected, &cfg.verify).map_err(|e| CliError::Usage(e.to_string()))?;
    let passed = reports.iter().all(|r| r.passed());
    match format_of(&cfg) {
        Format::Json => write_json(out, &json!({ "passed": passed, "reports": reports }))?,
        Format::Csv => {
            writeln!(out, "theorem,passed,cases,failures,solver_failures,max_slack_violation")?;
            for r in &reports {
                writeln!(
                    out,
                    "\"{}\",{},{},{},{},{}",
                    r.theorem,
                    r.passed(),
                    r.cases_checked,
                    r.failures.len(),
                    r.solver_failures.len(),
                    r.max_slack_violation
                )?;
            }
        }
        Format::Table => write!(out, "{}", render_table(&reports))?,
    }
    Ok(passed)
}

fn gradcheck(input: &InputArgs, common: &CommonArgs, out: Out) -> Result<bool, CliError> {
    let cfg = load_config(common)?;
    let tol = cfg.verify.gradient_tol;
    let cases: Vec<(String, _)> = if input.is_empty() {
        let mut cases: Vec<_> = golden::REGISTRY.iter().map(|g| (g.name.to_string(), g.distances())).collect();
        let samples = sample_omega_trapezoids(cfg.verify.gradient_samples, cfg.scan.a_fixed, cfg.verify.seed);
        cases.extend(samples.into_iter().enumerate().map(|(k, r)| (format!("sample {k}"), r)));
        cases
    } else {
        let loaded = input.load()?;
        vec![(loaded.source, loaded.distances)]
    };

    #[derive(Serialize)]
    struct Row {
        case: String,
        factor: Option<f64>,
        max_dev: Option<f64>,
        error: Option<String>,
        pass: bool,
    }
    let rows: Vec<Row> = cases
        .into_iter()
        .map(|(case, r)| match grad_parallel_check(&r) {
            Ok(c) => {
                Row { case, factor: Some(c.factor), max_dev: Some(c.max_dev), error: None, pass: c.max_dev <= tol }
            }
            Err(e) => Row { case, factor: None, max_dev: None, error: Some(e.to_string()), pass: false },
        })
        .collect();
    let passed = rows.iter().all(|r| r.pass);
    match format_of(&cfg) {
        Format::Json => write_json(out, &json!({ "tolerance": tol, "passed": passed, "cases": rows }))?,
        Format::Csv => {
            writeln!(out, "case,factor,max_dev,pass")?;
            for r in &rows {
                let f = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
                writeln!(out, "{},{},{},{}", r.case, f(r.factor), f(r.max_dev), r.pass)?;
            }
        }
        Format::Table => {
            let worst = rows.iter().filter_map(|r| r.max_dev).fold(0.0, f64::max);
            for r in rows.iter().take(8) {
                match (&r.max_dev, &r.error) {
                    (Some(dev), _) => writeln!(
                        out,
                        "{:<10} 8h^2 = {:<14.6e} max deviation {dev:.3e}",
                        r.case,
                        r.factor.unwrap_or(0.0)
                    )?,
                    (None, Some(e)) => writeln!(out, "{:<10} error: {e}", r.case)?,
                    _ => {}
                }
            }
            if rows.len() > 8 {
                writeln!(out, "... {} more cases", rows.len() - 8)?;
            }
            writeln!(
                out,
                "worst deviation {worst:.3e} (tolerance {tol:.0e}): {}",
                if passed { "PASS" } else { "FAIL" }
            )?;
        }
    }
    Ok(passed)
}

fn embed_cmd(
    input: &InputArgs,
    output: Option<&Path>,
    check: bool,
    common: &CommonArgs,
    out: Out,
    err: Out,
) -> Result<bool, CliError> {
    let cfg = load_config(common)?;
    let loaded = input.load()?;
    let e = embed(&loaded.distances).map_err(|e| CliError::Usage(format!("cannot embed: {e}")))?;
    let labels = ["1", "2", "3", "4"];
    let mut text = Vec::new();
    match format_of(&cfg) {
        Format::Json => {
            let points: Vec<_> =
                labels.iter().zip(e.points()).map(|(l, p)| json!({ "label": l, "x": p.x, "y": p.y })).collect();
            write_json(&mut text, &json!({ "meta": meta(&loaded), "height": e.h, "points": points }))?;
        }
        _ => {
            writeln!(text, "label,x,y")?;
            for (l, p) in labels.iter().zip(e.points()) {
                writeln!(text, "{l},{},{}", p.x, p.y)?;
            }
        }
    }
    match output {
        Some(path) => {
            let mut file = create(path)?;
            file.write_all(&text)?;
            file.flush()?;
        }
        None => out.write_all(&text)?,
    }
    if !check {
        return Ok(true);
    }
    let placed = e.distances().to_array();
    let worst = placed.iter().zip(loaded.distances.to_array()).map(|(p, w)| (p - w).abs() / w).fold(0.0, f64::max);
    let ok = worst <= 1e-9;
    writeln!(err, "round trip: largest relative distance error {worst:.3e} ({})", if ok { "ok" } else { "FAIL" })?;
    Ok(ok)
}
