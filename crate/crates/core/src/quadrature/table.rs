//! The persistent checkpoint table of `I(t) = ∫_0^t Z²`.

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gauss_kronrod::Panel;
use super::panels::{integral, integrate, unit};
use crate::error::{domain, ensure_finite, LabError, Result};
use crate::ENGINE_VERSION;

/// Number of stored moments `∫ Z² s^k / k!` per checkpoint interval.
pub const MOMENTS: usize = 16;

/// Knot spacing used below this ordinate is at most 1.
pub const FINE_STEP_LIMIT: f64 = 1e3;

/// Default relative tolerance of the panel integration.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Default absolute tolerance factor; the effective absolute tolerance of a
/// quantity is this times `max(1, scale of the quantity)`.
pub const DEFAULT_ABS_TOL: f64 = 1e-10;

/// Default knot spacing above [`FINE_STEP_LIMIT`].
pub const DEFAULT_MAX_STEP: f64 = 5.0;

/// Calibration window for the tail constant A in |Z(t)| <= A t^{1/4}.
const CALIBRATION: (f64, f64) = (10.0, 1e5);

/// Safety factor applied to the observed max |Z| / t^{1/4}.
const CALIBRATION_MARGIN: f64 = 1.1;

const MOMENTS_MAGIC: &[u8; 8] = b"LLMOM001";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Knot {
    pub t: f64,
    pub i: f64,
}

/// Checkpoints of the Hardy–Littlewood integral with, per interval between
/// consecutive knots, the moments needed to evaluate Laplace-type weighted
/// integrals without touching Z again.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeTable {
    pub knots: Vec<Knot>,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub t_max: f64,
    pub max_step: f64,
    pub engine_version: String,
    /// Calibrated A in |Z(t)| <= A t^{1/4}.
    pub tail_a: f64,
    pub(crate) moments: Vec<[f64; MOMENTS]>,
}

/// Sidecar manifest stored next to the checkpoint CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub t_max: f64,
    pub max_step: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub engine_version: String,
    pub tail_a: f64,
    pub knot_count: usize,
    pub moments_file: String,
}

struct IntervalResult {
    integral: f64,
    moments: [f64; MOMENTS],
    max_ratio: f64,
    failures: usize,
}

fn knot_positions(t_max: f64, max_step: f64) -> Vec<f64> {
    let fine_end = FINE_STEP_LIMIT.min(t_max);
    let fine = max_step.min(1.0);
    let mut ts = vec![0.0];
    let mut k = 1.0;
    while k * fine < fine_end {
        ts.push(k * fine);
        k += 1.0;
    }
    if t_max > FINE_STEP_LIMIT {
        ts.push(FINE_STEP_LIMIT);
        let mut k = 1.0;
        while FINE_STEP_LIMIT + k * max_step < t_max {
            ts.push(FINE_STEP_LIMIT + k * max_step);
            k += 1.0;
        }
    }
    ts.push(t_max);
    ts
}

fn integrate_interval(a: f64, b: f64, rel_tol: f64) -> IntervalResult {
    let h = b - a;
    let mut moments = [0.0; MOMENTS];
    let mut max_ratio: f64 = 0.0;
    let mut sink = |p: &Panel| {
        for j in 0..15 {
            let t = p.nodes[j];
            let v = p.values[j];
            if (CALIBRATION.0..=CALIBRATION.1).contains(&t) {
                max_ratio = max_ratio.max(v / t.sqrt());
            }
            let s = (t - a) / h;
            let mut term = p.weights[j] * v;
            for (k, m) in moments.iter_mut().enumerate() {
                *m += term;
                term *= s / (k + 1) as f64;
            }
        }
    };
    let failures = integrate(a, b, rel_tol, &unit, &mut sink);
    IntervalResult { integral: moments[0], moments, max_ratio, failures }
}

/// Build the checkpoint table on `[0, t_max]`.
///
/// Knots are 1 apart below t = 1000 (or `max_step` if smaller) and
/// `max_step` apart above. Intervals are integrated in parallel and merged
/// in order, so the result does not depend on the thread count.
pub fn build_checkpoints(t_max: f64, max_step: f64, rel_tol: f64) -> Result<CumulativeTable> {
    ensure_finite("t_max", t_max)?;
    if t_max <= 0.0 {
        return Err(domain(format!("t_max must be positive, got {t_max}")));
    }
    if !(max_step > 0.0 && max_step.is_finite()) {
        return Err(domain(format!("max_step must be positive, got {max_step}")));
    }
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(domain(format!("rel_tol must lie in (0, 1), got {rel_tol}")));
    }
    let ts = knot_positions(t_max, max_step);
    let results: Vec<IntervalResult> = ts
        .par_windows(2)
        .map(|w| integrate_interval(w[0], w[1], rel_tol))
        .collect();

    let failures: usize = results.iter().map(|r| r.failures).sum();
    if failures > 0 {
        return Err(LabError::Internal(format!(
            "{failures} panels did not reach rel_tol {rel_tol} at maximum depth"
        )));
    }
    let max_ratio = results.iter().map(|r| r.max_ratio).fold(0.0, f64::max);
    let tail_a = if max_ratio > 0.0 { CALIBRATION_MARGIN * max_ratio.sqrt() } else { 1.0 };

    let mut knots = Vec::with_capacity(ts.len());
    knots.push(Knot { t: 0.0, i: 0.0 });
    let mut acc = 0.0;
    for (w, r) in ts.windows(2).zip(&results) {
        acc += r.integral;
        knots.push(Knot { t: w[1], i: acc });
    }
    Ok(CumulativeTable {
        knots,
        rel_tol,
        abs_tol: DEFAULT_ABS_TOL,
        t_max,
        max_step,
        engine_version: ENGINE_VERSION.to_string(),
        tail_a,
        moments: results.into_iter().map(|r| r.moments).collect(),
    })
}

impl CumulativeTable {
    /// Index of the last knot with `t <= x`.
    pub(crate) fn knot_below(&self, x: f64) -> usize {
        self.knots.partition_point(|k| k.t <= x).saturating_sub(1)
    }

    pub fn interval_count(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn manifest(&self, moments_file: &str) -> Manifest {
        Manifest {
            t_max: self.t_max,
            max_step: self.max_step,
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            engine_version: self.engine_version.clone(),
            tail_a: self.tail_a,
            knot_count: self.knots.len(),
            moments_file: moments_file.to_string(),
        }
    }

    /// Write `path` (CSV `t,I`), `<stem>.manifest.json` and
    /// `<stem>.moments.bin`. Each file goes through a temporary and a rename.
    pub fn save(&self, path: &Path) -> Result<()> {
        let (manifest_path, moments_path) = sidecar_paths(path);
        let moments_name = file_name(&moments_path);

        write_atomic(path, |w| {
            writeln!(w, "t,I")?;
            for k in &self.knots {
                writeln!(w, "{:.16e},{:.16e}", k.t, k.i)?;
            }
            Ok(())
        })?;
        write_atomic(&moments_path, |w| {
            w.write_all(MOMENTS_MAGIC)?;
            w.write_all(&(self.moments.len() as u64).to_le_bytes())?;
            w.write_all(&(MOMENTS as u64).to_le_bytes())?;
            for row in &self.moments {
                for m in row {
                    w.write_all(&m.to_le_bytes())?;
                }
            }
            Ok(())
        })?;
        let manifest = serde_json::to_string_pretty(&self.manifest(&moments_name))?;
        write_atomic(&manifest_path, |w| {
            w.write_all(manifest.as_bytes())?;
            writeln!(w)
        })
    }

    /// Read a table written by [`CumulativeTable::save`], validating the
    /// header, the knot invariants and the consistency of the sidecars.
    pub fn load(path: &Path) -> Result<Self> {
        let shown = path.display().to_string();
        let bad = |message: String| LabError::Format { path: shown.clone(), message };
        let (manifest_path, _) = sidecar_paths(path);
        let manifest: Manifest = serde_json::from_str(&fs::read_to_string(&manifest_path)?)?;

        let mut reader = csv::Reader::from_path(path)?;
        let headers = reader.headers()?.clone();
        if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "I" {
            return Err(bad(format!("expected header `t,I`, found `{}`", headers.iter().collect::<Vec<_>>().join(","))));
        }
        let mut knots = Vec::with_capacity(manifest.knot_count);
        for (line, record) in reader.deserialize::<(f64, f64)>().enumerate() {
            let (t, i) = record?;
            if !t.is_finite() || !i.is_finite() {
                return Err(bad(format!("non-finite value on data row {}", line + 1)));
            }
            if let Some(prev) = knots.last() {
                let prev: &Knot = prev;
                if t <= prev.t || i < prev.i {
                    return Err(bad(format!("knots not monotone at data row {}", line + 1)));
                }
            }
            knots.push(Knot { t, i });
        }
        if knots.first() != Some(&Knot { t: 0.0, i: 0.0 }) {
            return Err(bad("first knot must be (0, 0)".into()));
        }
        if knots.len() != manifest.knot_count || knots.last().map(|k| k.t) != Some(manifest.t_max) {
            return Err(bad("knots disagree with the manifest".into()));
        }
        let step_limit = manifest.max_step.max(1.0) * (1.0 + 1e-12);
        if knots.windows(2).any(|w| w[1].t - w[0].t > step_limit) {
            return Err(bad("knot spacing exceeds max_step".into()));
        }

        let moments_path = path.with_file_name(&manifest.moments_file);
        let mut bytes = Vec::new();
        fs::File::open(&moments_path)?.read_to_end(&mut bytes)?;
        let moments = parse_moments(&bytes, knots.len() - 1)
            .ok_or_else(|| LabError::Format { path: moments_path.display().to_string(), message: "malformed moments file".into() })?;

        Ok(CumulativeTable {
            knots,
            rel_tol: manifest.rel_tol,
            abs_tol: manifest.abs_tol,
            t_max: manifest.t_max,
            max_step: manifest.max_step,
            engine_version: manifest.engine_version,
            tail_a: manifest.tail_a,
            moments,
        })
    }

    /// Load the table cached at `path` if it was built by this engine with
    /// at least the requested extent and tolerance; otherwise build and save.
    pub fn load_or_build(path: &Path, t_max: f64, max_step: f64, rel_tol: f64) -> Result<Self> {
        if let Ok(table) = Self::load(path) {
            if table.engine_version == ENGINE_VERSION
                && table.t_max >= t_max
                && table.max_step == max_step
                && table.rel_tol <= rel_tol
            {
                return Ok(table);
            }
        }
        let table = build_checkpoints(t_max, max_step, rel_tol)?;
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        table.save(path)?;
        Ok(table)
    }
}

fn parse_moments(bytes: &[u8], intervals: usize) -> Option<Vec<[f64; MOMENTS]>> {
    let word = |k: usize| -> Option<[u8; 8]> { bytes.get(8 * k..8 * k + 8)?.try_into().ok() };
    if word(0)? != *MOMENTS_MAGIC
        || u64::from_le_bytes(word(1)?) != intervals as u64
        || u64::from_le_bytes(word(2)?) != MOMENTS as u64
        || bytes.len() != 8 * (3 + intervals * MOMENTS)
    {
        return None;
    }
    let mut out = Vec::with_capacity(intervals);
    for r in 0..intervals {
        let mut row = [0.0; MOMENTS];
        for (k, m) in row.iter_mut().enumerate() {
            *m = f64::from_le_bytes(word(3 + r * MOMENTS + k)?);
        }
        out.push(row);
    }
    Some(out)
}

fn sidecar_paths(path: &Path) -> (PathBuf, PathBuf) {
    (path.with_extension("manifest.json"), path.with_extension("moments.bin"))
}

fn file_name(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn write_atomic<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<fs::File>) -> std::io::Result<()>,
{
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        body(&mut w)?;
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// `I(T) = ∫_0^T Z²`, from the nearest knot below `T` plus panel
/// integration of the remainder.
pub fn hl_integral(t: f64, table: &CumulativeTable) -> Result<f64> {
    ensure_finite("T", t)?;
    if t < 0.0 {
        return Err(domain(format!("I(T) requires T >= 0, got {t}")));
    }
    if t > table.t_max {
        return Err(LabError::Range(format!(
            "T = {t} exceeds the checkpoint table (t_max = {}); rebuild checkpoints with --t-max >= {t}",
            table.t_max
        )));
    }
    let j = table.knot_below(t);
    let k = table.knots[j];
    Ok(k.i + integral(k.t, t, table.rel_tol, &unit))
}

/// `∫_a^b Z²` by direct panel integration.
pub fn interval_integral(a: f64, b: f64) -> Result<f64> {
    ensure_finite("a", a)?;
    ensure_finite("b", b)?;
    if a < 0.0 || a >= b {
        return Err(domain(format!("interval integral needs 0 <= a < b, got a = {a}, b = {b}")));
    }
    Ok(integral(a, b, 0.1 * DEFAULT_REL_TOL, &unit))
}
