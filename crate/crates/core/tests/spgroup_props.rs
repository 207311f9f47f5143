mod common;

use common::GRID;
use fsz_core::spgroup::b_valuation;
use fsz_core::{GroupParams, SpGroup};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(i: usize) -> SpGroup {
    let (p, j) = GRID[i % GRID.len()];
    SpGroup::from_pj(p, j).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn structured_power_matches_generic(grid in 0usize..5, seed: u64) {
        let g = group(grid);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_element(&mut rng);
        let pj = g.params().p_pow_j();
        let y = g.power_pj(&x);
        prop_assert_eq!(&y, &g.power_generic(&x, pj));
        // Lies in <a_1^{p^j}>.
        prop_assert_eq!(y.b_exponent(), 0);
        prop_assert!(y.vector().coords()[1..].iter().all(|&c| c == 0));
        prop_assert_eq!(y.vector().coords()[0] % pj, 0);
    }

    #[test]
    fn group_axioms(grid in 0usize..5, seed: u64) {
        let g = group(grid);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (g.random_element(&mut rng), g.random_element(&mut rng), g.random_element(&mut rng));
        prop_assert_eq!(
            g.multiply(&g.multiply(&x, &y), &z),
            g.multiply(&x, &g.multiply(&y, &z))
        );
        prop_assert!(g.multiply(&x, &g.invert(&x)).is_identity());
        prop_assert!(g.multiply(&g.invert(&x), &x).is_identity());
        prop_assert_eq!(g.multiply(&g.identity(), &x), x.clone());
    }

    #[test]
    fn pj_power_depends_only_on_b_order(grid in 0usize..5, seed: u64) {
        let g = group(grid);
        let params = g.params();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_element(&mut rng);
        let t = b_valuation(params, x.b_exponent());
        // Any other exponent with the same valuation.
        let other = loop {
            let k = rand::Rng::gen_range(&mut rng, 0..params.b_order());
            if b_valuation(params, k) == t {
                break k;
            }
        };
        let y = fsz_core::SElement::new(x.vector().clone(), other).unwrap();
        prop_assert_eq!(g.power_generic(&x, params.p_pow_j()), g.power_generic(&y, params.p_pow_j()));
    }

    #[test]
    fn format_parse_round_trip(grid in 0usize..5, seed: u64) {
        let g = group(grid);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_element(&mut rng);
        prop_assert_eq!(g.parse_element(&g.format_element(&x)).unwrap(), x);
    }
}

#[test]
fn exponent_minus_one_case() {
    // b^{-1} is the only power of B whose corner is not 1.
    for (p, j) in GRID {
        let g = SpGroup::from_pj(p, j).unwrap();
        let params: GroupParams = g.params();
        let mut rng = ChaCha8Rng::seed_from_u64(p * 100 + j as u64);
        for _ in 0..50 {
            let x = g.random_with_b_exponent(&mut rng, params.b_order() - 1);
            assert_eq!(g.power_pj(&x), g.power_generic(&x, params.p_pow_j()));
        }
        assert_eq!(
            g.b_power(params.b_order() - 1).get(0, 0),
            params.p_pow_j() + 1
        );
    }
}

#[test]
fn every_b_order_is_covered() {
    for (p, j) in GRID {
        let g = SpGroup::from_pj(p, j).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 0..g.params().b_order() {
            for _ in 0..5 {
                let x = g.random_with_b_exponent(&mut rng, k);
                assert_eq!(g.power_pj(&x), g.power_generic(&x, g.params().p_pow_j()));
            }
        }
    }
}
