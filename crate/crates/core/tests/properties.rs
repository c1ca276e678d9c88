//! Property-based checks with proptest: randomized inputs beyond the seeded
//! sweeps, shrunk to minimal counterexamples on failure.

use latball_core::enumerate::{count_ball, count_ball_bruteforce, BallQuery};
use latball_core::extremal::{u_nu, BoundParams};
use latball_core::lattice::{LatticeBasis, MatrixReal};
use latball_core::specfun::{tail_integral, tail_integral_quadrature, BesselOrder};
use proptest::prelude::*;

/// Random full-column-rank basis at desk scale, N in 1..=3.
fn small_basis() -> impl Strategy<Value = LatticeBasis> {
    (1usize..=3, 0usize..=2)
        .prop_flat_map(|(n, extra)| {
            let m = n + extra;
            (
                Just((m, n)),
                proptest::collection::vec(-2.0f64..2.0, m * n),
            )
        })
        .prop_filter_map("rank-deficient draw", |((m, n), entries)| {
            LatticeBasis::from_matrix(MatrixReal::new(m, n, entries).ok()?, 1e-6).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// The sphere decoder and the exhaustive oracle agree exactly.
    #[test]
    fn decoder_equals_bruteforce(
        basis in small_basis(),
        radius in 0.2f64..3.5,
        coords in proptest::collection::vec(-2.0f64..2.0, 3),
    ) {
        let n = basis.dim();
        let query = BallQuery::new(radius, coords[..n].to_vec());
        let op_sinv = 1.0 / basis.eigvals()[0].sqrt();
        let box_radius =
            (op_sinv * (radius + query.boundary_tol) + (n as f64).sqrt()).ceil() as i64 + 1;
        prop_assume!((2 * box_radius + 1).pow(n as u32) <= 2_000_000);

        let decoded = count_ball(&basis, &query).unwrap();
        let brute = count_ball_bruteforce(&basis, &query, box_radius).unwrap();
        prop_assert_eq!(decoded, brute);
    }

    /// Counts are invariant under integer translation of the center and
    /// under negating it.
    #[test]
    fn count_center_symmetries(
        basis in small_basis(),
        radius in 0.2f64..3.0,
        coords in proptest::collection::vec(-1.5f64..1.5, 3),
        shift in proptest::collection::vec(-3i64..=3, 3),
    ) {
        let n = basis.dim();
        let x = coords[..n].to_vec();
        let base = count_ball(&basis, &BallQuery::new(radius, x.clone())).unwrap();

        let shifted: Vec<f64> =
            x.iter().zip(&shift).map(|(&c, &k)| c + k as f64).collect();
        let translated = count_ball(&basis, &BallQuery::new(radius, shifted)).unwrap();
        prop_assert_eq!(&base, &translated);

        let negated: Vec<f64> = x.iter().map(|&c| -c).collect();
        let mirrored = count_ball(&basis, &BallQuery::new(radius, negated)).unwrap();
        prop_assert_eq!(base.weighted_total, mirrored.weighted_total);
    }

    /// weighted_total is nondecreasing in the radius.
    #[test]
    fn count_monotone_in_radius(
        basis in small_basis(),
        r_small in 0.2f64..3.0,
        growth in 0.0f64..1.5,
        coords in proptest::collection::vec(-1.0f64..1.0, 3),
    ) {
        let n = basis.dim();
        let x = coords[..n].to_vec();
        let small = count_ball(&basis, &BallQuery::new(r_small, x.clone())).unwrap();
        let large = count_ball(&basis, &BallQuery::new(r_small + growth, x)).unwrap();
        prop_assert!(large.weighted_total >= small.weighted_total);
    }

    /// weighted_total is a nonnegative half-integer and the scaled total is
    /// exactly sqrt_det times it.
    #[test]
    fn count_output_contract(
        basis in small_basis(),
        radius in 0.2f64..3.0,
        coords in proptest::collection::vec(-1.0f64..1.0, 3),
    ) {
        let n = basis.dim();
        let c = count_ball(&basis, &BallQuery::new(radius, coords[..n].to_vec())).unwrap();
        let doubled = 2.0 * c.weighted_total;
        prop_assert_eq!(doubled, doubled.round());
        prop_assert!(c.weighted_total >= 0.0);
        prop_assert_eq!(c.weighted_total, c.interior as f64 + c.boundary as f64 / 2.0);
        prop_assert_eq!(c.scaled_total, basis.sqrt_det() * c.weighted_total);
    }

    /// Scaling identity of the bound factor, away from the tiny-product
    /// regime where the denominator is ill-conditioned at f64 scale.
    #[test]
    fn bound_scaling_identity(
        dim in 2u32..=6,
        xi in 0.5f64..10.0,
        delta in 0.2f64..2.0,
        kappa in 0.2f64..5.0,
    ) {
        let direct = u_nu(&BoundParams::new(dim, delta, xi).unwrap()).unwrap().u_value;
        let scaled = kappa.powi(dim as i32)
            * u_nu(&BoundParams::new(dim, kappa * delta, xi / kappa).unwrap())
                .unwrap()
                .u_value;
        prop_assert!(
            ((direct - scaled) / direct).abs() <= 1e-12,
            "dim {} xi {} delta {} kappa {}: {} vs {}",
            dim, xi, delta, kappa, direct, scaled
        );
    }

    /// Bound factor and denominator positivity across the operating range.
    #[test]
    fn bound_positivity(
        dim in 1u32..=8,
        xi in 0.05f64..40.0,
        delta in 0.05f64..2.0,
    ) {
        let value = u_nu(&BoundParams::new(dim, delta, xi).unwrap()).unwrap();
        prop_assert!(value.u_value > 0.0);
        prop_assert!(value.denominator > 0.0);
        prop_assert!(value.bound > 0.0);
    }

    /// Identity route vs quadrature oracle for the tail integral.
    #[test]
    fn tail_integral_routes_agree(
        twice in 0i32..=4,
        xi in 0.3f64..12.0,
    ) {
        let order = BesselOrder::from_twice(twice).unwrap();
        let ident = tail_integral(order, xi).unwrap();
        let quad = tail_integral_quadrature(order, xi).unwrap();
        prop_assert!(
            (ident - quad).abs() <= 1e-8,
            "2nu {} xi {}: {} vs {}",
            twice, xi, ident, quad
        );
    }
}
