//! Property-based invariants across the public API.

use proptest::prelude::*;

use ewens::{
    estimate_bc1, estimate_bc2, estimate_nm, expected_num_types, sample_partition, score_theta,
    score_xi, solve_adjusted_mle, solve_mle, subsample_partition, summarize_cell, Branch,
    ClipPolicy, Partition, SolutionKind,
};

fn interior(kind: SolutionKind) -> f64 {
    match kind {
        SolutionKind::Interior(theta) => theta,
        other => panic!("expected an interior root, got {other:?}"),
    }
}

fn seeded_rng(seed: u64) -> impl rand::Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha20Rng::seed_from_u64(seed)
}

proptest! {
    #[test]
    fn partition_display_round_trips(seed in any::<u64>(), n in 1usize..200, theta in 0.05f64..50.0) {
        let mut rng = seeded_rng(seed);
        let p = sample_partition(n, theta, &mut rng).unwrap();
        let parsed: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(parsed, p);
    }

    #[test]
    fn sampled_partitions_are_structurally_valid(seed in any::<u64>(), n in 1usize..300, theta in 0.05f64..200.0) {
        let mut rng = seeded_rng(seed);
        let p = sample_partition(n, theta, &mut rng).unwrap();
        prop_assert_eq!(p.n(), n);
        prop_assert!(p.k() >= 1 && p.k() <= n);
        prop_assert!(p.iter().all(|(size, mult)| size >= 1 && mult >= 1));
    }

    #[test]
    fn subsampling_preserves_the_requested_size(seed in any::<u64>(), n in 1usize..150, m_frac in 0.0f64..1.0) {
        let mut rng = seeded_rng(seed);
        let p = sample_partition(n, 3.0, &mut rng).unwrap();
        let m = 1 + ((n - 1) as f64 * m_frac) as usize;
        let sub = subsample_partition(&p, m, &mut rng).unwrap();
        prop_assert_eq!(sub.n(), m);
        prop_assert!(sub.k() <= p.k());
    }

    #[test]
    fn xi_score_is_theta_score_times_theta(k in 1usize..40, extra in 1usize..40, xi in -6.0f64..6.0) {
        let n = k + extra;
        let theta = xi.exp();
        let lhs = score_xi(k, n, xi).unwrap();
        let rhs = theta * score_theta(k, n, theta).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()));
    }

    #[test]
    fn interior_solves_are_self_consistent_and_ordered(k in 2usize..60, extra in 1usize..30) {
        let n = k + extra;
        let ml = interior(solve_mle(k, n).unwrap().kind);
        let eta = expected_num_types(ml, n).unwrap();
        prop_assert!((eta - k as f64).abs() < 1e-7, "eta_n(theta^) = {eta} vs k = {k}");
        let adjusted = interior(solve_adjusted_mle(k, n).unwrap().kind);
        prop_assert!(adjusted > 0.0 && adjusted < ml);
    }

    #[test]
    fn every_type_count_maps_to_exactly_one_branch(k_frac in 0.0f64..1.0, n in 2usize..40) {
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        let policy = ClipPolicy::default();
        for rec in [
            estimate_nm(k, n, 1, 500, &policy).unwrap(),
            estimate_bc1(k, n, 1, 500, &policy).unwrap(),
            estimate_bc2(k, n, 1, 500, &policy).unwrap(),
        ] {
            prop_assert!(rec.value.is_finite());
            prop_assert_eq!(rec.branch == Branch::K1Zero, k == 1);
            if rec.kind != ewens::EstimatorKind::Bc1 {
                prop_assert!(rec.value >= 0.0);
            }
        }
    }

    #[test]
    fn rrmse_never_falls_below_absolute_rb(
        values in prop::collection::vec(-25.0f64..25.0, 1..60),
        truth in 0.1f64..20.0,
    ) {
        let stats = summarize_cell(&values, truth).unwrap();
        prop_assert!(stats.rrmse_percent >= stats.rb_percent.abs() - 1e-9);
        prop_assert!((0.0..=1.0).contains(&stats.neg_rate));
    }
}
