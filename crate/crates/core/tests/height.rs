mod common;

use common::{fixture, free_time, random_dual, random_path, BCS};
use proptest::prelude::*;
use rand::Rng;
use spinloops::model::BoundaryCondition;
use spinloops::observables::{height_along, height_from_field, rung_crossing_increments, PseudoSpinField};
use spinloops::sampler::{sample_orientations, substream, Purpose};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn height_is_path_independent(
        l in 1usize..5, beta in 0.3f64..3.0, bci in 0usize..3, n in 0usize..30,
        seed in any::<u64>(), lambda in -1.0f64..1.0,
    ) {
        let bc = BCS[bci];
        let (bx, cfg, dec) = fixture(l, beta, bc, n, seed);
        let mut rng = substream(seed, 3, Purpose::Moves);
        let o = sample_orientations(&dec, lambda, &mut substream(seed, 3, Purpose::Orientations));
        let field = PseudoSpinField::from_oriented(&dec, &o);
        let ambiguous = bc == BoundaryCondition::PeriodicBoth && l == 1;
        for _ in 0..8 {
            let end = (random_dual(&bx, &mut rng), free_time(&bx, &cfg, &mut rng));
            let a = random_path(&bx, &cfg, end, rng.random_range(0..4), &mut rng);
            let b = random_path(&bx, &cfg, end, rng.random_range(0..4), &mut rng);
            let ha = height_along(&dec, &o, &a).unwrap();
            prop_assert_eq!(ha, height_along(&dec, &o, &b).unwrap());
            for d in rung_crossing_increments(&dec, &o, &a).unwrap() {
                prop_assert!(d == 0 || d.abs() == 2);
            }
            if !ambiguous {
                prop_assert_eq!(height_from_field(&field, &a).unwrap(), ha);
            }
        }
    }
}
