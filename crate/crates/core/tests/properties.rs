mod common;

use common::table;
use ladderlab::asymptotics::{gauss_li_expansion, pi_approx, sieve_pi, x_of_t, Poly};
use ladderlab::ladder::{phi, solve_m, MuSpec};
use ladderlab::quadrature::{hl_integral, interval_integral};
use ladderlab::report::geometric_grid;
use ladderlab::zeta::{theta, z, z_squared};
use ladderlab::Constants;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-6i64..=6, 1i64..=5, 0u32..4, 0u32..3), 0..4).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (n, d, i, j)| {
            acc.add(&Poly::monomial(BigRational::new(BigInt::from(n), BigInt::from(d)), i, j))
        })
    })
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert!(p.mul(&Poly::zero()).is_zero());
    }

    #[test]
    fn poly_eval_is_a_homomorphism(p in poly(), q in poly(), x in -2.0f64..2.0, a in -2.0f64..2.0) {
        let lhs = p.mul(&q).eval(x, a);
        let rhs = p.eval(x, a) * q.eval(x, a);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
    }

    #[test]
    fn sieve_matches_trial_division(t in 2.0f64..3000.0) {
        let count = (2..=t.floor() as u64).filter(|&n| is_prime(n)).count() as u64;
        prop_assert_eq!(sieve_pi(t).unwrap(), count);
    }

    #[test]
    fn li_terms_grow_by_k_over_log(t in 10.0f64..1e8, k in 1usize..8) {
        let l = t.ln();
        let term = |n: usize| gauss_li_expansion(t, n).unwrap() - if n > 1 { gauss_li_expansion(t, n - 1).unwrap() } else { 0.0 };
        let ratio = term(k + 1) / term(k);
        prop_assert!((ratio - k as f64 / l).abs() <= 1e-9 * ratio);
    }

    #[test]
    fn z_squared_is_the_square(t in 0.0f64..2e5) {
        let v = z(t).unwrap().value;
        prop_assert!((z_squared(t).unwrap() - v * v).abs() <= 1e-12 * (1.0 + v * v));
    }

    #[test]
    fn theta_bound_is_honest_and_small(t in 10.0f64..1e5) {
        prop_assert!(theta(t).unwrap().abs_err_bound <= 1e-10);
    }

    #[test]
    fn geometric_grids_are_increasing(lo in 1.0f64..1e3, span in 1.001f64..1e3, n in 2usize..60) {
        let g = geometric_grid(lo, lo * span, n);
        prop_assert_eq!(g.len(), n);
        prop_assert_eq!(g[0], lo);
        prop_assert!(g.windows(2).all(|w| w[1] > w[0]));
        prop_assert!((g[n - 1] - lo * span).abs() <= 1e-12 * lo * span);
    }

    #[test]
    fn admissible_rays_certify(k in 7.0f64..20.0, rho in 0.0f64..3.0, n in 1.0f64..3.0) {
        prop_assert!(MuSpec::k_log(k, 100.0).unwrap().certify(2e4).is_ok());
        prop_assert!(MuSpec::beam(rho, n, 100.0).unwrap().certify(2e4).is_ok());
    }

    #[test]
    fn sub_minimal_rays_are_rejected(k in 0.5f64..6.99) {
        let rejected = MuSpec::k_log(k, 100.0).map(|m| m.certify(2e4).is_err()).unwrap_or(true);
        prop_assert!(rejected);
    }

    #[test]
    fn x_and_pi_vanish_on_the_upper_envelope(t in 1.0f64..1e6) {
        prop_assert_eq!(x_of_t(t, 2.0 * t).unwrap(), 0.0);
        prop_assert_eq!(pi_approx(t, 2.0 * t, &Constants::new()).unwrap(), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hardy_littlewood_integral_is_monotone_and_additive(a in 0.0f64..2e4, w in 0.5f64..40.0) {
        let t = table();
        let (ia, ib) = (hl_integral(a, t).unwrap(), hl_integral(a + w, t).unwrap());
        prop_assert!(ib >= ia);
        let direct = interval_integral(a, a + w).unwrap();
        prop_assert!((ib - ia - direct).abs() <= 1e-9 * ib.max(1.0));
    }

    #[test]
    fn ladder_is_increasing_and_sandwiched(t1 in 100.0f64..9000.0, dt in 1.0f64..1000.0) {
        let t = table();
        let mu = MuSpec::k_log(7.0, 100.0).unwrap();
        let (p1, p2) = (phi(t1, &mu, t).unwrap(), phi(t1 + dt, &mu, t).unwrap());
        prop_assert!(p1 < p2);
        prop_assert!(t1 < p1 && p1 < 2.0 * t1);
    }

    #[test]
    fn inverse_round_trip(y in 200.0f64..2e4) {
        let t = table();
        let mu = MuSpec::k_log(7.0, 100.0).unwrap();
        let m = solve_m(y, &mu, t).unwrap();
        prop_assert!(0.5 * y < m && m < y);
        prop_assert!((phi(m, &mu, t).unwrap() - y).abs() <= 1e-9 * y);
    }
}
