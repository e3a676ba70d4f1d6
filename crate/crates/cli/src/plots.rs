//! Gnuplot scripts plus the CSV files they read, generated from a report.

use std::fs;
use std::path::Path;

use ladderlab::report::{Report, Section, SANDWICH_LOWER};

use crate::commands::{write_file, Rows};
use crate::config::{Format, RunConfig};
use crate::failure::Failure;

fn section<'a>(rep: &'a Report, name: &str) -> Result<&'a Section, Failure> {
    rep.sections
        .get(name)
        .ok_or_else(|| Failure::Io(format!("report has no {name} section; run `verify all` first")))
}

fn column(v: &serde_json::Value, path: &[&str]) -> Result<Vec<f64>, Failure> {
    let mut cur = v;
    for key in path {
        cur = &cur[*key];
    }
    cur.as_array()
        .and_then(|a| a.iter().map(|x| x.as_f64()).collect::<Option<Vec<_>>>())
        .ok_or_else(|| Failure::Io(format!("report is missing the numeric array {}", path.join("."))))
}

fn script(name: &str, title: &str, xlabel: &str, ylabel: &str, log: &str, curves: &[(usize, &str, &str)]) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set terminal pngcairo size 900,600\n");
    s.push_str(&format!("set output '{name}.png'\n"));
    s.push_str(&format!("set title '{title}'\n"));
    s.push_str(&format!("set xlabel '{xlabel}'\nset ylabel '{ylabel}'\n"));
    if !log.is_empty() {
        s.push_str(&format!("set logscale {log}\n"));
    }
    s.push_str("set key left top\n");
    let parts: Vec<String> = curves
        .iter()
        .map(|(col, style, label)| format!("'{name}.csv' using 1:{col} skip 1 with {style} title '{label}'"))
        .collect();
    s.push_str(&format!("plot {}\n", parts.join(", \\\n     ")));
    s
}

pub fn plot_scripts(cfg: &RunConfig, report: Option<&Path>) -> Result<(), Failure> {
    let path = report.map(Path::to_path_buf).unwrap_or_else(|| cfg.out.join("report.json"));
    let text = fs::read_to_string(&path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let rep: Report = serde_json::from_str(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let dir = cfg.out.join("plots");

    let b = section(&rep, "theorem_B")?;
    let ts = column(&b.outputs, &["T"])?;
    let phis = column(&b.outputs, &["phi"])?;
    let envelope = Rows {
        header: vec!["T", "lower", "upper", "phi"],
        rows: ts.iter().zip(&phis).map(|(&t, &p)| vec![t, SANDWICH_LOWER * t, 2.0 * t, p]).collect(),
    };

    let a = section(&rep, "theorem_A")?;
    let dt = column(&a.outputs, &["decay_T"])?;
    let dr = column(&a.outputs, &["decay_abs_remainder"])?;
    let c = a.fits["decay_C"].as_f64().ok_or_else(|| Failure::Io("report is missing theorem_A.fits.decay_C".into()))?;
    let remainder = Rows {
        header: vec!["T", "abs_remainder", "fit"],
        rows: dt.iter().zip(&dr).map(|(&t, &r)| vec![t, r, c * t.ln() / t]).collect(),
    };

    let beam = section(&rep, "theorem_C")?;
    let bt = column(&beam.outputs, &["T_grid"])?;
    let spread = column(&beam.outputs, &["spread"])?;
    let scaled = column(&beam.outputs, &["spread_times_T"])?;
    let bound = column(&beam.outputs, &["spread_bound"])?;
    let beam_rows = Rows {
        header: vec!["T", "spread", "spread_times_T", "spread_bound"],
        rows: (0..bt.len()).map(|j| vec![bt[j], spread[j], scaled[j], bound[j]]).collect(),
    };

    let p = section(&rep, "primes")?;
    let pt = column(&p.inputs, &["T"])?;
    let sieve = column(&p.outputs, &["sieve_pi"])?;
    let approx = column(&p.outputs, &["pi_approx"])?;
    let primes = Rows {
        header: vec!["T", "sieve_pi", "pi_approx", "T_over_lnT"],
        rows: (0..pt.len()).map(|j| vec![pt[j], sieve[j], approx[j], pt[j] / pt[j].ln()]).collect(),
    };

    let files = [
        (
            "envelope",
            envelope,
            script(
                "envelope",
                "phi(T) between 1.9T and 2T",
                "T",
                "phi",
                "",
                &[(2, "lines", "1.9 T"), (3, "lines", "2 T"), (4, "points pt 7", "phi(T)")],
            ),
        ),
        (
            "remainder",
            remainder,
            script(
                "remainder",
                "|I(T) - F(phi(T))| against C ln T / T",
                "T",
                "|r|",
                "xy",
                &[(2, "points pt 7", "|r|"), (3, "lines", "C ln T / T")],
            ),
        ),
        (
            "beam",
            beam_rows,
            script(
                "beam",
                "spread of the beam ladders",
                "T",
                "spread",
                "",
                &[(2, "linespoints", "spread"), (3, "linespoints", "spread x T"), (4, "lines", "tail bound")],
            ),
        ),
        (
            "primes",
            primes,
            script(
                "primes",
                "prime counts from the ladder",
                "T",
                "count",
                "",
                &[(2, "linespoints", "sieve"), (3, "linespoints", "from phi"), (4, "lines", "T / ln T")],
            ),
        ),
    ];
    for (name, rows, gp) in &files {
        write_file(&dir.join(format!("{name}.csv")), &rows.render(Format::Csv)?)?;
        write_file(&dir.join(format!("{name}.gp")), gp)?;
    }
    println!("{} plot scripts written to {}", files.len(), dir.display());
    Ok(())
}
