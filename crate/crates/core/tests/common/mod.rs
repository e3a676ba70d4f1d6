//! Shared helpers for the integration suites: fixture loading, the shared
//! checkpoint cache, and an independent adaptive quadrature oracle.
#![allow(dead_code)]

use std::path::PathBuf;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}

/// Rows `(x, y)` of a two-column numeric fixture with a header line.
pub fn read_pairs(name: &str) -> Vec<(f64, f64)> {
    let text = std::fs::read_to_string(data_path(name)).expect("fixture present");
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split(',');
            let a = it.next().unwrap().trim();
            let b = it.next().unwrap().trim();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

pub fn named_constant(name: &str) -> f64 {
    let text = std::fs::read_to_string(data_path("constants.csv")).unwrap();
    for l in text.lines().skip(1) {
        let (k, v) = l.split_once(',').unwrap();
        if k == name {
            return v.parse().unwrap();
        }
    }
    panic!("no constant {name}");
}

/// Extent of the shared checkpoint table: enough for Φ(y) up to y = 2·10⁴.
pub const T_MAX: f64 = 320_000.0;

/// The shared checkpoint table, built once and cached under the cargo
/// target tmpdir.
pub fn table() -> &'static ladderlab::quadrature::CumulativeTable {
    use ladderlab::quadrature::{CumulativeTable, DEFAULT_MAX_STEP, DEFAULT_REL_TOL};
    static TABLE: std::sync::OnceLock<CumulativeTable> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| {
        let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ladderlab-cache").join("chk.csv");
        CumulativeTable::load_or_build(&path, T_MAX, DEFAULT_MAX_STEP, DEFAULT_REL_TOL).expect("checkpoint table")
    })
}

// 10-point Gauss / 21-point Kronrod (QUADPACK), independent of the
// library's 7/15 rule.
const XGK21: [f64; 11] = [
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
const WGK21: [f64; 11] = [
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
const WG10: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK21[10] * fc;
    let mut g = 0.0;
    for j in 0..10 {
        let s = f(c - h * XGK21[j]) + f(c + h * XGK21[j]);
        k += WGK21[j] * s;
        if j % 2 == 1 {
            g += WG10[j / 2] * s;
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

/// Globally adaptive Gauss–Kronrod 10/21 with unit initial pieces: bisect
/// the piece with the largest error until the total error is below `tol`.
pub fn oracle_integral<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let n = ((b - a).ceil() as usize).max(1);
    let step = (b - a) / n as f64;
    let mut heap = std::collections::BinaryHeap::new();
    let mut total_err = 0.0;
    for j in 0..n {
        let lo = a + j as f64 * step;
        let hi = if j + 1 == n { b } else { lo + step };
        let (value, err) = gk21(&f, lo, hi);
        total_err += err;
        heap.push(Piece { a: lo, b: hi, value, err });
    }
    let mut rounds = 0;
    while total_err > tol && rounds < 2_000_000 {
        let p = heap.pop().unwrap();
        let m = 0.5 * (p.a + p.b);
        let (v1, e1) = gk21(&f, p.a, m);
        let (v2, e2) = gk21(&f, m, p.b);
        total_err += e1 + e2 - p.err;
        heap.push(Piece { a: p.a, b: m, value: v1, err: e1 });
        heap.push(Piece { a: m, b: p.b, value: v2, err: e2 });
        rounds += 1;
    }
    assert!(total_err <= tol, "oracle did not converge: err {total_err:e}");
    let mut pieces: Vec<Piece> = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    pieces.iter().map(|p| p.value).sum()
}

pub fn z2(t: f64) -> f64 {
    ladderlab::zeta::z(t).unwrap().squared()
}
