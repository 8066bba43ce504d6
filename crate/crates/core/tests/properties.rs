use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use isodual::checks;
use isodual::Field;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #[test]
    fn field_axioms(idx in 0..checks::FIELD_ORDERS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = Field::with_order(checks::FIELD_ORDERS[idx]).unwrap();
        let q = f.order();
        prop_assert!(checks::field_axioms(&f, a % q, b % q, c % q).is_ok());
    }

    #[test]
    fn rank_nullity(seed in any::<u64>(), rows in 1usize..8, cols in 1usize..10) {
        let mut r = rng(seed);
        let f = checks::random_field(&mut r, &checks::FIELD_ORDERS[..10]);
        let m = checks::random_matrix(&mut r, f, rows, cols);
        prop_assert_eq!(checks::rank_nullity(&m), Ok(()));
        prop_assert_eq!(checks::double_dual(&m), Ok(()));
    }

    #[test]
    fn riemann_roch_on_constructions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let covers = checks::small_covers();
        for code in [checks::random_rational_code(&mut r, 12), checks::random_lift(&mut r, &covers), checks::random_hermitian(&mut r)] {
            prop_assert_eq!(checks::riemann_roch(&code), Ok(()));
        }
    }

    #[test]
    fn scaling_preserves_distance(seed in any::<u64>()) {
        let mut r = rng(seed);
        let code = checks::random_rational_code(&mut r, 8);
        let x = checks::random_nonzero_vector(&mut r, &code.field, code.n);
        prop_assert_eq!(checks::scaling_invariance(&code, &x, 1 << 20), Ok(()));
    }

    #[test]
    fn certifier_is_sound(seed in any::<u64>(), k in 1usize..5) {
        let mut r = rng(seed);
        let covers = checks::small_covers();
        let code = checks::random_rational_code(&mut r, 10);
        prop_assert_eq!(checks::certifier_sound(&code, seed), Ok(()));
        let lift = checks::random_lift(&mut r, &covers);
        prop_assert_eq!(checks::certifier_sound(&lift, seed), Ok(()));
        let noise = checks::random_code(&mut r, k, 2 * k);
        prop_assert_eq!(checks::certifier_sound(&noise, seed), Ok(()));
    }
}
