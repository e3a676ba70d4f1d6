use std::fs;
use std::path::Path;

use ladderlab::asymptotics::{estimate_c0, expansion_a, expansion_b, pi_approx, sieve_pi, tangent_law};
use ladderlab::ladder::{beam_experiment, domain_start, phi, tabulate, LadderTable, MuSpec};
use ladderlab::quadrature::{hl_integral, CumulativeTable};
use ladderlab::report::{self, Suite, VerifyConfig, GROWTH_FACTOR};
use ladderlab::zeta::find_zeros;
use ladderlab::Constants;
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};
use crate::failure::Failure;

/// A numeric table rendered as CSV (17 significant digits) or as a JSON
/// array of objects.
pub struct Rows {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

pub fn number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.16e}")
    }
}

impl Rows {
    pub fn render(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r.iter().map(|v| number(*v)))?;
                }
                let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
            Format::Json => {
                let items: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> =
                            self.header.iter().zip(r).map(|(k, v)| (k.to_string(), json!(v))).collect();
                        Value::Object(obj)
                    })
                    .collect();
                Ok(serde_json::to_string_pretty(&items)? + "\n")
            }
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn print_json(v: &impl serde::Serialize) -> Result<(), Failure> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

/// The checkpoint table named by the configuration, built on first use.
fn table(cfg: &RunConfig) -> Result<CumulativeTable, Failure> {
    let path = cfg.checkpoint_path();
    if !path.exists() {
        eprintln!("building checkpoints up to t = {} at {}", cfg.t_max, path.display());
    }
    let mut t = CumulativeTable::load_or_build(&path, cfg.t_max, cfg.max_step, cfg.rel_tol)?;
    t.abs_tol = cfg.abs_tol;
    Ok(t)
}

fn ray(cfg: &RunConfig) -> Result<MuSpec, Failure> {
    Ok(MuSpec::k_log(cfg.k, cfg.y0)?)
}

/// The T grid with points below T₀ dropped (and reported).
fn admissible_grid(cfg: &RunConfig, mu: &MuSpec, table: &CumulativeTable) -> Result<Vec<f64>, Failure> {
    let t0 = domain_start(mu, table)?;
    let grid = cfg.t_grid.points();
    let kept: Vec<f64> = grid.iter().copied().filter(|&t| t >= t0).collect();
    if kept.len() < grid.len() {
        eprintln!("warning: {} grid points lie below T0 = {t0} and were omitted", grid.len() - kept.len());
    }
    if kept.is_empty() {
        return Err(Failure::Usage(format!("the whole T grid lies below T0 = {t0}")));
    }
    Ok(kept)
}

pub fn checkpoints(cfg: &RunConfig, output: Option<&Path>) -> Result<(), Failure> {
    let path = output.map(Path::to_path_buf).unwrap_or_else(|| cfg.checkpoint_path());
    if !path.exists() {
        eprintln!("building checkpoints up to t = {} at {}", cfg.t_max, path.display());
    }
    let mut t = CumulativeTable::load_or_build(&path, cfg.t_max, cfg.max_step, cfg.rel_tol)?;
    if t.abs_tol != cfg.abs_tol {
        t.abs_tol = cfg.abs_tol;
        t.save(&path)?;
    }
    let last = t.knots.last().expect("table has knots");
    match cfg.format {
        Format::Json => print_json(&json!({
            "path": path.display().to_string(),
            "knots": t.knots.len(),
            "t_max": t.t_max,
            "I_t_max": last.i,
            "tail_a": t.tail_a,
            "engine_version": t.engine_version,
        })),
        Format::Csv => {
            println!(
                "{}: {} knots up to t = {}, I(t_max) = {}, tail A = {}",
                path.display(),
                t.knots.len(),
                number(t.t_max),
                number(last.i),
                number(t.tail_a)
            );
            Ok(())
        }
    }
}

pub fn zeros(cfg: &RunConfig, from: f64, to: f64, output: Option<&Path>) -> Result<(), Failure> {
    let found = find_zeros(from, to)?;
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&found)? + "\n",
        Format::Csv => Rows {
            header: vec!["index", "gamma", "bracket_width", "z_residual"],
            rows: found.iter().map(|z| vec![z.index as f64, z.gamma, z.bracket_width, z.z_residual]).collect(),
        }
        .render(Format::Csv)?,
    };
    let path = cfg.output(output, "zeros");
    write_file(&path, &text)?;
    let tangential = found.iter().filter(|z| z.tangential).count();
    println!("{} zeros in [{from}, {to}] written to {}", found.len(), path.display());
    if tangential > 0 {
        eprintln!("warning: {tangential} suspected zeros of even multiplicity");
    }
    Ok(())
}

pub fn ladder(cfg: &RunConfig, output: Option<&Path>) -> Result<(), Failure> {
    let table = table(cfg)?;
    let mu = ray(cfg)?;
    let grid = admissible_grid(cfg, &mu, &table)?;
    let lad = tabulate(&mu, &grid, &table)?;
    let path = cfg.output(output, "ladder");
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&lad)? + "\n",
        Format::Csv => {
            let mut buf = Vec::new();
            lad.write_csv(&mut buf)?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
    };
    write_file(&path, &text)?;
    println!("{} rows of phi(T) for {} written to {} (T0 = {})", lad.points.len(), mu.label(), path.display(), lad.t0);
    check_ladder_residuals(cfg, &lad, &table)
}

fn check_ladder_residuals(cfg: &RunConfig, lad: &LadderTable, table: &CumulativeTable) -> Result<(), Failure> {
    for p in &lad.points {
        let bound = cfg.tol_eq * hl_integral(p.t, table)?.max(1.0);
        if p.residual.abs() > bound {
            return Err(Failure::Assertion(format!("residual {} at T = {} exceeds {bound}", p.residual, p.t)));
        }
    }
    Ok(())
}

fn read_ladder(path: &Path) -> Result<Vec<(f64, f64)>, Failure> {
    let mut r = csv::Reader::from_path(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let header = r.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != ["T", "phi", "residual"] {
        return Err(Failure::Usage(format!("{}: expected a T,phi,residual ladder file", path.display())));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let parse = |j: usize| {
            rec[j].parse::<f64>().map_err(|_| Failure::Io(format!("{}: bad number {:?}", path.display(), &rec[j])))
        };
        rows.push((parse(0)?, parse(1)?));
    }
    Ok(rows)
}

pub fn ladder_gap(cfg: &RunConfig, first: &Path, second: &Path) -> Result<(), Failure> {
    let a = read_ladder(first)?;
    let b = read_ladder(second)?;
    if a.len() != b.len() || a.iter().zip(&b).any(|(x, y)| x.0 != y.0) || a.is_empty() {
        return Err(Failure::Usage("ladder files must share the same nonempty T column".into()));
    }
    let rows: Vec<Vec<f64>> = a
        .iter()
        .zip(&b)
        .map(|(x, y)| {
            let gap = x.1 - y.1;
            vec![x.0, gap, gap.abs() * x.0]
        })
        .collect();
    print!("{}", Rows { header: vec!["T", "gap", "abs_gap_times_T"], rows: rows.clone() }.render(cfg.format)?);
    let scaled: Vec<f64> = rows.iter().map(|r| r[2]).collect();
    let half = scaled.len().div_ceil(2);
    let max = scaled.iter().copied().fold(0.0, f64::max);
    let first_half = scaled[..half].iter().copied().fold(0.0, f64::max);
    eprintln!("max |dphi| T = {max}; first-half max = {first_half}");
    if max > GROWTH_FACTOR * first_half {
        return Err(Failure::Assertion(format!(
            "|dphi| T grows: {max} > {GROWTH_FACTOR} x {first_half}"
        )));
    }
    Ok(())
}

pub fn verify(cfg: &RunConfig, suite: Suite) -> Result<(), Failure> {
    let table = table(cfg)?;
    let vcfg = VerifyConfig { k: cfg.k, k_pair: cfg.k_pair, y0: cfg.y0, tol_eq: cfg.tol_eq, tol_inv: cfg.tol_inv };
    let rep = report::verify(suite, &table, &vcfg)?;
    let path = cfg.out.join("report.json");
    write_file(&path, &(serde_json::to_string_pretty(&rep)? + "\n"))?;
    if cfg.format == Format::Json {
        print_json(&rep)?;
    } else {
        for (name, section) in &rep.sections {
            for c in &section.checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                println!("{tag} {name}: {} (value {}, bound {}, {})", c.name, c.value, c.bound, c.rule);
            }
        }
        println!("report written to {}", path.display());
    }
    let failed = rep.failed_checks();
    if failed.is_empty() {
        Ok(())
    } else {
        let names: Vec<String> = failed.iter().map(|(s, c)| format!("{s}: {}", c.name)).collect();
        Err(Failure::Assertion(format!("{} check(s) failed: {}", failed.len(), names.join("; "))))
    }
}

pub fn coeffs(cfg: &RunConfig, n: usize) -> Result<(), Failure> {
    let a = expansion_a(n)?;
    let b = expansion_b(n)?;
    match cfg.format {
        Format::Json => print_json(&json!({ "A": a, "B": b })),
        Format::Csv => {
            for (name, s) in [("A", &a), ("B", &b)] {
                for j in 1..=n {
                    println!("{name}{j} = {}", s.coeff(j));
                }
            }
            Ok(())
        }
    }
}

pub fn pi_compare(cfg: &RunConfig, ts: &[f64]) -> Result<(), Failure> {
    let table = table(cfg)?;
    let mu = ray(cfg)?;
    let k = Constants::new();
    let mut rows = Vec::new();
    for &t in ts {
        let exact = sieve_pi(t)? as f64;
        let approx = pi_approx(t, phi(t, &mu, &table)?, &k)?;
        rows.push(vec![t, exact, approx, (approx - exact).abs() / exact]);
    }
    print!("{}", Rows { header: vec!["T", "sieve_pi", "pi_approx", "relative_error"], rows }.render(cfg.format)?);
    Ok(())
}

pub fn tangent(cfg: &RunConfig, t: f64, u: f64) -> Result<(), Failure> {
    let table = table(cfg)?;
    let law = tangent_law(t, u, &ray(cfg)?, &table, &Constants::new())?;
    match cfg.format {
        Format::Json => print_json(&law),
        Format::Csv => {
            print!(
                "{}",
                Rows {
                    header: vec!["T", "U", "tan_alpha", "lhs", "main", "residual", "ratio"],
                    rows: vec![vec![law.t, law.u, law.tan_alpha, law.lhs, law.main, law.residual, law.ratio]],
                }
                .render(Format::Csv)?
            );
            Ok(())
        }
    }
}

pub fn beam(cfg: &RunConfig, output: Option<&Path>) -> Result<(), Failure> {
    let table = table(cfg)?;
    let members = cfg.rho.iter().map(|&r| MuSpec::beam(r, cfg.beam_n, cfg.y0)).collect::<Result<Vec<_>, _>>()?;
    let rep = beam_experiment(&members, &cfg.y_grid.points(), &cfg.t_grid.points(), &table)?;
    let path = output.map(Path::to_path_buf).unwrap_or_else(|| cfg.out.join("beam.json"));
    write_file(&path, &(serde_json::to_string_pretty(&rep)? + "\n"))?;
    let rows = rep
        .t_grid
        .iter()
        .enumerate()
        .map(|(j, &t)| vec![t, rep.spread[j], rep.spread_times_t[j], rep.spread_bound[j]])
        .collect();
    print!("{}", Rows { header: vec!["T", "spread", "spread_times_T", "spread_bound"], rows }.render(cfg.format)?);
    Ok(())
}

pub fn c0_fit(cfg: &RunConfig) -> Result<(), Failure> {
    let table = table(cfg)?;
    let mu = ray(cfg)?;
    let grid = admissible_grid(cfg, &mu, &table)?;
    let fit = estimate_c0(&tabulate(&mu, &grid, &table)?, &table, &Constants::new())?;
    match cfg.format {
        Format::Json => print_json(&json!({ "c0": fit.value, "uncertainty": fit.uncertainty, "mu": mu.label(), "points": grid.len() })),
        Format::Csv => {
            println!("c0 = {} +/- {} ({}, {} points)", number(fit.value), number(fit.uncertainty), mu.label(), grid.len());
            Ok(())
        }
    }
}
