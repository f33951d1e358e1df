//! Randomized structural invariants, complementing the fixed-value checks in
//! the unit tests.

use proptest::prelude::*;
use tgrs_core::*;

fn arb_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just("5"),
        Just("7"),
        Just("2^2"),
        Just("2^3"),
        Just("3^2"),
        Just("11"),
        Just("13"),
    ]
    .prop_map(|s| FieldCtx::parse(s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms((ctx, ea, eb, ec) in arb_field().prop_flat_map(|ctx| {
        let q = ctx.q() as u64;
        (Just(ctx), 0..q, 0..q, 0..q)
    })) {
        let (a, b, c) = (ctx.felt(ea)?, ctx.felt(eb)?, ctx.felt(ec)?);
        prop_assert_eq!(ctx.add(a, b), ctx.add(b, a));
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
        prop_assert_eq!(ctx.add(a, ctx.neg(a)), Felt::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a)?), Felt::ONE);
        }
    }

    #[test]
    fn rref_is_idempotent((ctx, rows, cols, data) in arb_field().prop_flat_map(|ctx| {
        let q = ctx.q() as u64;
        (1usize..5, 1usize..7).prop_flat_map(move |(r, c)| {
            (Just(ctx.clone()), Just(r), Just(c), proptest::collection::vec(0..q, r * c))
        })
    })) {
        let elems: Vec<Felt> = data.iter().map(|&e| ctx.felt(e).unwrap()).collect();
        let m = MatrixGF::new(ctx, rows, cols, elems)?;
        let once = m.rref().matrix;
        let twice = once.rref().matrix;
        prop_assert_eq!(once.row_encodings(), twice.row_encodings());
        prop_assert_eq!(m.rank() + m.nullspace_basis().rows(), cols);
    }

    #[test]
    fn code_duality_involution((ctx, n, k, seed) in arb_field().prop_flat_map(|ctx| {
        let q = ctx.q();
        (3usize..=q.min(8)).prop_flat_map(move |n| {
            (Just(ctx.clone()), Just(n), 1..n, any::<u64>())
        })
    })) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let es = EvaluationSet::random(ctx.clone(), n, &mut rng)?;
        let code = grs_code(&es, k, &all_ones(&ctx, n))?;
        prop_assert!(code.dual().dual().same_code(&code)?);
        prop_assert_eq!(code.dual().k(), n - k);
    }

    #[test]
    fn monomial_map_preserves_square_dim((ctx, n, k, t, h, seed) in arb_field().prop_flat_map(|ctx| {
        let q = ctx.q();
        (4usize..=q.min(8)).prop_flat_map(move |n| {
            let ctx = ctx.clone();
            (2..n).prop_flat_map(move |k| {
                let ctx = ctx.clone();
                (1..=(n - k), 0..k, any::<u64>())
                    .prop_map(move |(t, h, s)| (ctx.clone(), n, k, t, h, s))
            })
        })
    })) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let es = EvaluationSet::random(ctx.clone(), n, &mut rng)?;
        let eta = ctx.felt(1)?;
        let tp = TwistParams { n, k, t, h, eta };
        let code = tgrs_code(&tp, &es, &all_ones(&ctx, n))?;
        let map = MonomialMap::random(ctx.clone(), n, &mut rng);
        let mapped = code.apply_monomial_map(&map)?;
        prop_assert_eq!(
            code.dual().schur_square().k(),
            mapped.dual().schur_square().k()
        );
    }
}
