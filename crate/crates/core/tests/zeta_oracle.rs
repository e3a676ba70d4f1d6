mod common;

use common::{named_constant, read_pairs};
use ladderlab::zeta::{self, find_zeros, theta, z, z_squared, z_with_order, zero_count_check};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn z_matches_arbitrary_precision_at_random_ordinates() {
    let mut worst: f64 = 0.0;
    for (t, exact) in read_pairs("z_random.csv") {
        let v = z(t).unwrap();
        let err = (v.value - exact).abs();
        worst = worst.max(err / v.abs_err_bound);
        assert!(err <= v.abs_err_bound, "t={t}: err {err:e} > bound {:e}", v.abs_err_bound);
        assert!(err <= 1e-8, "t={t}: err {err:e}");
    }
    eprintln!("worst err/bound = {worst:.3}");
}

#[test]
fn z_matches_oracle_near_switch_and_at_large_t() {
    for (t, exact) in read_pairs("z_extra.csv") {
        let v = z(t).unwrap();
        let err = (v.value - exact).abs();
        assert!(err <= v.abs_err_bound, "t={t}: err {err:e} > bound {:e}", v.abs_err_bound);
        assert!(v.abs_err_bound <= 1e-8, "t={t}");
    }
}

#[test]
fn theta_spot_values() {
    for (t, exact) in read_pairs("theta.csv") {
        let v = theta(t).unwrap();
        let err = (v.value - exact).abs();
        assert!(err <= v.abs_err_bound, "t={t}: err {err:e} bound {:e}", v.abs_err_bound);
        if t <= 1.0e5 {
            assert!(v.abs_err_bound <= 1e-10, "t={t}");
        } else {
            // half an ulp of |θ| is all an f64 can carry
            assert!(v.abs_err_bound <= 2.0 * f64::EPSILON * v.value.abs(), "t={t}");
        }
    }
}

#[test]
fn theta_vanishes_at_first_gram_point() {
    let g0 = named_constant("gram0");
    assert!(theta(g0).unwrap().value.abs() < 1e-12);
}

#[test]
fn z_at_origin_and_first_zero() {
    let zh = named_constant("zeta_half");
    assert!((z(0.0).unwrap().value - zh).abs() < 1e-12);
    assert!((z_squared(0.0).unwrap() - zh * zh).abs() < 1e-12);
    let gamma1 = read_pairs("zeros.csv")[0].1;
    assert!(z(gamma1).unwrap().value.abs() < zeta::Z_TOL);
    assert!(z_squared(gamma1).unwrap() < zeta::Z_TOL * zeta::Z_TOL);
}

#[test]
fn first_zeros_match_reference_table() {
    let reference = read_pairs("zeros.csv");
    let found = find_zeros(0.0, 101.0).unwrap();
    assert_eq!(found.len(), 29);
    for (rec, (idx, gamma)) in found.iter().zip(&reference) {
        assert_eq!(rec.index, *idx as usize);
        assert!((rec.gamma - gamma).abs() < 1e-8, "zero {idx}: {} vs {gamma}", rec.gamma);
        assert!(rec.bracket_width <= 1e-9);
    }
    // sign alternation between consecutive zeros on [10, 100]
    for w in found.windows(2) {
        let mid = 0.5 * (w[0].gamma + w[1].gamma);
        let after = z(w[1].gamma + 1e-6).unwrap().value;
        assert!(z(mid).unwrap().value.signum() != after.signum());
    }
}

#[test]
fn zero_counts_follow_theta() {
    for t in [100.0, 1000.0, 5000.0] {
        let zs = find_zeros(0.0, t).unwrap();
        let check = zero_count_check(t, zs.len()).unwrap();
        assert!(check.deviation.abs() <= 2.0, "{check:?}");
        assert!(zs.iter().all(|r| !r.tangential));
    }
}

#[test]
fn theta_increasing_beyond_ten() {
    let mut prev = theta(10.0).unwrap().value;
    for k in 1..2000 {
        let cur = theta(10.0 + k as f64).unwrap().value;
        assert!(cur > prev);
        prev = cur;
    }
}

#[test]
fn two_orders_agree_within_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let t: f64 = rng.gen_range(0.0..1e5);
        let a = z_with_order(t, 3).unwrap();
        let b = z_with_order(t, 4).unwrap();
        assert!((a.value - b.value).abs() <= a.abs_err_bound + b.abs_err_bound, "t={t}");
    }
}

#[test]
fn z_squared_nonnegative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let t: f64 = rng.gen_range(0.0..1e4);
        assert!(z_squared(t).unwrap() >= 0.0);
    }
}
