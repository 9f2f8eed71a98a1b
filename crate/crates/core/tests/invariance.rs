use knotscheme::bracket::{jones, kauffman_bracket};
use knotscheme::diagram::gauss::parse_gauss;
use knotscheme::diagram::moves::{applicable_moves, apply_reidemeister, random_moves, Move, MoveKind};
use knotscheme::laurent::LaurentPoly;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const STARTS: [&str; 4] = ["1o+ 2u+ 3o+ 1u+ 2o+ 3u+", "1o- 2u+ 3o+ 1u- 4o- 3u+ 2o+ 4u-", "1o+ 2u+\n1u+ 2o+", ""];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Every applicable move of one kind, on a random diagram.
    #[test]
    fn every_move_preserves_jones(seed in any::<u64>(), start in 0usize..4, steps in 0usize..6, kind in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d0 = parse_gauss(STARTS[start]).unwrap();
        let (d, _) = random_moves(&d0, steps, 8, &mut rng).unwrap();
        let j = jones(&d).unwrap();
        let b = kauffman_bracket(&d).unwrap();
        let want = [MoveKind::I, MoveKind::II, MoveKind::III][kind];
        for mv in applicable_moves(&d, Some(10)).into_iter().filter(|m| m.kind() == want).take(12) {
            let e = apply_reidemeister(&d, &mv).unwrap();
            e.validate().unwrap();
            prop_assert_eq!(jones(&e).unwrap(), j.clone(), "{:?}", mv);
            let dw = e.writhe() - d.writhe();
            let factor = LaurentPoly::monomial(if dw % 2 == 0 { 1 } else { -1 }, 3 * dw as i32);
            prop_assert_eq!(kauffman_bracket(&e).unwrap(), b.mul(&factor).unwrap());
            if want != MoveKind::I {
                prop_assert_eq!(dw, 0);
            }
        }
    }
}

#[test]
fn third_move_is_reachable_and_involutive() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut found = 0;
    for _ in 0..200 {
        let (d, _) = random_moves(&parse_gauss(STARTS[0]).unwrap(), 3, 8, &mut rng).unwrap();
        for mv in applicable_moves(&d, Some(8)) {
            if let Move::R3 { .. } = mv {
                let e = apply_reidemeister(&d, &mv).unwrap();
                let back = applicable_moves(&e, Some(8))
                    .into_iter()
                    .filter(|m| m.kind() == MoveKind::III)
                    .any(|m| apply_reidemeister(&e, &m).unwrap().is_isomorphic(&d));
                assert!(back, "third move has no inverse");
                found += 1;
            }
        }
    }
    assert!(found > 20, "only {found} third moves seen");
}
