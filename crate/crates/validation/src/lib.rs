//! Support for the acceptance run: frozen oracle fixtures, the shared
//! checkpoint table, an independent quadrature and a small PASS/FAIL runner.

use std::collections::BinaryHeap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use ladderlab::quadrature::{CumulativeTable, DEFAULT_MAX_STEP, DEFAULT_REL_TOL};

/// Extent of the shared table: Φ(y) up to y = 2·10⁴.
pub const T_MAX: f64 = 320_000.0;

/// Fixtures frozen by `scripts/gen_oracles.py` (mpmath, 40 digits).
pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name)
}

/// `(x, y)` rows of a two-column fixture with a header.
pub fn read_pairs(name: &str) -> Vec<(f64, f64)> {
    let text = std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (a, b) = l.split_once(',').expect("two columns");
            (a.trim().parse().unwrap(), b.trim().parse().unwrap())
        })
        .collect()
}

/// The checkpoint table shared by all test targets, cached under the cargo
/// target tmpdir.
pub fn shared_table(tmpdir: &str) -> &'static CumulativeTable {
    static TABLE: OnceLock<CumulativeTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let path = PathBuf::from(tmpdir).join("ladderlab-cache").join("chk.csv");
        CumulativeTable::load_or_build(&path, T_MAX, DEFAULT_MAX_STEP, DEFAULT_REL_TOL).expect("checkpoint table")
    })
}

// QUADPACK 10-point Gauss / 21-point Kronrod.
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208100680353,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = WGK[10] * f(c);
    let mut g = 0.0;
    for j in 0..10 {
        let s = f(c - h * XGK[j]) + f(c + h * XGK[j]);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Globally adaptive GK 10/21 from unit pieces until the summed error
/// estimate is below `tol`.
pub fn oracle_integral<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let n = ((b - a).ceil() as usize).max(1);
    let step = (b - a) / n as f64;
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    for j in 0..n {
        let lo = a + j as f64 * step;
        let hi = if j + 1 == n { b } else { lo + step };
        let (value, err) = gk21(&f, lo, hi);
        total += err;
        heap.push(Piece { a: lo, b: hi, value, err });
    }
    let mut rounds = 0;
    while total > tol && rounds < 2_000_000 {
        let p = heap.pop().unwrap();
        let m = 0.5 * (p.a + p.b);
        let (v1, e1) = gk21(&f, p.a, m);
        let (v2, e2) = gk21(&f, m, p.b);
        total += e1 + e2 - p.err;
        heap.push(Piece { a: p.a, b: m, value: v1, err: e1 });
        heap.push(Piece { a: m, b: p.b, value: v2, err: e2 });
        rounds += 1;
    }
    assert!(total <= tol, "oracle did not converge: err {total:e}");
    let mut pieces = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    pieces.iter().map(|p| p.value).sum()
}

/// Verdict of one criterion: pass flag plus the measured numbers.
pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, detail: detail.into() }
    }
}

pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

/// Run one criterion; a panic counts as a failure with its message.
/// `budget` is the allowed wall time; exceeding it fails the criterion.
pub fn run_criterion<F: FnOnce() -> Verdict>(id: u32, title: &'static str, budget: Duration, f: F) -> Outcome {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    let (mut pass, mut detail) = match result {
        Ok(v) => (v.pass, v.detail),
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (false, format!("panicked: {msg}"))
        }
    };
    if elapsed > budget {
        pass = false;
        detail.push_str(&format!("; over the {:?} budget", budget));
    }
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("{tag} [{id:>2}] {title}: {detail} ({:.1} s)", elapsed.as_secs_f64());
    Outcome { id, title, pass, detail, elapsed }
}
