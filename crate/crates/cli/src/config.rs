//! Run configuration: defaults, then a flat `key = value` file, then
//! command-line flags of the same names.

use std::fs;
use std::path::{Path, PathBuf};

use ladderlab::ladder::DEFAULT_Y0;
use ladderlab::quadrature::{DEFAULT_ABS_TOL, DEFAULT_MAX_STEP, DEFAULT_REL_TOL};
use ladderlab::report::geometric_grid;

use crate::failure::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// A geometric grid `lo, …, hi` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        geometric_grid(self.lo, self.hi, self.count)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub t_max: f64,
    pub max_step: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub tol_eq: f64,
    pub tol_inv: f64,
    pub k: f64,
    pub k_pair: f64,
    pub y0: f64,
    pub t_grid: GridSpec,
    pub y_grid: GridSpec,
    pub rho: Vec<f64>,
    pub beam_n: f64,
    pub out: PathBuf,
    pub checkpoints: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            t_max: 320_000.0,
            max_step: DEFAULT_MAX_STEP,
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            tol_eq: ladderlab::ladder::TOL_EQ,
            tol_inv: ladderlab::ladder::TOL_INV,
            k: 7.0,
            k_pair: 9.0,
            y0: DEFAULT_Y0,
            t_grid: GridSpec { lo: 500.0, hi: 1e4, count: 40 },
            y_grid: GridSpec { lo: 200.0, hi: 2e4, count: 40 },
            rho: vec![0.0, 0.5, 1.0],
            beam_n: 1.0,
            out: PathBuf::from("."),
            checkpoints: None,
            format: Format::Csv,
        }
    }
}

pub const KEYS: [&str; 20] = [
    "t_max", "max_step", "rel_tol", "abs_tol", "tol_eq", "tol_inv", "k", "k_pair", "y0", "t_lo", "t_hi", "t_count",
    "y_lo", "y_hi", "y_count", "rho", "beam_n", "out", "checkpoints", "format",
];

fn real(key: &str, value: &str) -> Result<f64, Failure> {
    value
        .trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Failure::Usage(format!("{key}: expected a finite number, got {value:?}")))
}

fn count(key: &str, value: &str) -> Result<usize, Failure> {
    value.trim().parse().map_err(|_| Failure::Usage(format!("{key}: expected a count, got {value:?}")))
}

impl RunConfig {
    /// Set one key; keys may be spelled with `-` or `_`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), Failure> {
        let key = key.trim().replace('-', "_");
        let v = value.trim();
        match key.as_str() {
            "t_max" => self.t_max = real(&key, v)?,
            "max_step" => self.max_step = real(&key, v)?,
            "rel_tol" => self.rel_tol = real(&key, v)?,
            "abs_tol" => self.abs_tol = real(&key, v)?,
            "tol_eq" => self.tol_eq = real(&key, v)?,
            "tol_inv" => self.tol_inv = real(&key, v)?,
            "k" => self.k = real(&key, v)?,
            "k_pair" => self.k_pair = real(&key, v)?,
            "y0" => self.y0 = real(&key, v)?,
            "t_lo" => self.t_grid.lo = real(&key, v)?,
            "t_hi" => self.t_grid.hi = real(&key, v)?,
            "t_count" => self.t_grid.count = count(&key, v)?,
            "y_lo" => self.y_grid.lo = real(&key, v)?,
            "y_hi" => self.y_grid.hi = real(&key, v)?,
            "y_count" => self.y_grid.count = count(&key, v)?,
            "rho" => self.rho = v.split(',').map(|s| real("rho", s)).collect::<Result<_, _>>()?,
            "beam_n" => self.beam_n = real(&key, v)?,
            "out" => self.out = PathBuf::from(v),
            "checkpoints" => self.checkpoints = Some(PathBuf::from(v)),
            "format" => {
                self.format = match v {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err(Failure::Usage(format!("format: expected csv or json, got {v:?}"))),
                }
            }
            _ => return Err(Failure::Usage(format!("unknown configuration key {key:?}; known keys: {}", KEYS.join(", ")))),
        }
        Ok(())
    }

    /// Apply a `key = value` file. Blank lines and `#` comments are skipped.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), Failure> {
        let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("{}:{}: expected key = value", path.display(), n + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), Failure> {
        let positive = [
            ("t_max", self.t_max),
            ("max_step", self.max_step),
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("tol_eq", self.tol_eq),
            ("tol_inv", self.tol_inv),
            ("k", self.k),
            ("k_pair", self.k_pair),
            ("y0", self.y0),
            ("t_lo", self.t_grid.lo),
            ("y_lo", self.y_grid.lo),
            ("beam_n", self.beam_n),
        ];
        for (key, v) in positive {
            if !(v > 0.0) {
                return Err(Failure::Usage(format!("{key} must be positive, got {v}")));
            }
        }
        for (name, g) in [("t", &self.t_grid), ("y", &self.y_grid)] {
            if g.count == 0 {
                return Err(Failure::Usage(format!("{name}_count must be at least 1")));
            }
            if g.hi < g.lo {
                return Err(Failure::Usage(format!("{name}_hi = {} lies below {name}_lo = {}", g.hi, g.lo)));
            }
        }
        if self.t_max < self.t_grid.hi {
            return Err(Failure::Usage(format!(
                "t_max = {} must cover the T grid (t_hi = {})",
                self.t_max, self.t_grid.hi
            )));
        }
        if self.rho.is_empty() || self.rho.iter().any(|r| *r < 0.0) {
            return Err(Failure::Usage("rho must be a nonempty list of nonnegative numbers".into()));
        }
        Ok(())
    }

    pub fn checkpoint_path(&self) -> PathBuf {
        self.checkpoints.clone().unwrap_or_else(|| self.out.join("checkpoints.csv"))
    }

    pub fn output(&self, explicit: Option<&Path>, stem: &str) -> PathBuf {
        match explicit {
            Some(p) => p.to_path_buf(),
            None => {
                let ext = match self.format {
                    Format::Csv => "csv",
                    Format::Json => "json",
                };
                self.out.join(format!("{stem}.{ext}"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_key_is_settable() {
        let mut c = RunConfig::default();
        for key in KEYS {
            let value = match key {
                "format" => "json",
                "rho" => "0,2",
                "t_count" | "y_count" => "3",
                "out" | "checkpoints" => "x",
                _ => "123",
            };
            c.set(key, value).unwrap();
        }
        assert_eq!(c.t_max, 123.0);
        assert_eq!(c.rho, vec![0.0, 2.0]);
        assert_eq!(c.format, Format::Json);
        assert!(c.set("t-max", "7").is_ok() && c.t_max == 7.0);
    }

    #[test]
    fn rejects_bad_values() {
        let mut c = RunConfig::default();
        assert!(c.set("t_max", "abc").is_err());
        assert!(c.set("t_max", "inf").is_err());
        assert!(c.set("bogus", "1").is_err());
        c.set("t_max", "-5").unwrap();
        assert!(matches!(c.validate(), Err(Failure::Usage(_))));
        let mut c = RunConfig::default();
        c.set("t_max", "100").unwrap();
        assert!(c.validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn file_then_override() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "# demo\nt_max = 5e4\n\nk=9 # comment\n").unwrap();
        let mut c = RunConfig::default();
        c.apply_file(&path).unwrap();
        assert_eq!((c.t_max, c.k), (5e4, 9.0));
        c.set("k", "8").unwrap();
        assert_eq!(c.k, 8.0);
        fs::write(&path, "t_max 5\n").unwrap();
        assert!(matches!(c.apply_file(&path), Err(Failure::Usage(_))));
        assert!(matches!(c.apply_file(&dir.path().join("none")), Err(Failure::Io(_))));
    }
}
