mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zxopt::rewrite::{apply_rule, find_sites, full_simplify, full_simplify_traced, RewriteRule};
use zxopt::ZxDiagram;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    /// Walks a few random valid sites and checks the tensor after each.
    #[test]
    fn every_rule_preserves_the_tensor(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = common::rewrite_start(&mut rng);
        for _ in 0..4 {
            let sites: Vec<_> = RewriteRule::ALL
                .iter()
                .flat_map(|&r| find_sites(&d, r))
                .collect();
            if sites.is_empty() || d.spider_count() > 20 {
                break;
            }
            let site = sites[rng.gen_range(0..sites.len())];
            let before = d.tensor().unwrap();
            apply_rule(&mut d, &site).unwrap();
            let after = d.tensor().unwrap();
            prop_assert!(
                before.deviation_up_to_scalar(&after) < 1e-9,
                "{} deviation {}", site, before.deviation_up_to_scalar(&after)
            );
        }
    }

    #[test]
    fn simplification_preserves_the_tensor(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = common::rewrite_start(&mut rng);
        let before = d.tensor().unwrap();
        let t = d.t_count();
        let mut trace = Vec::new();
        full_simplify_traced(&mut d, &mut trace);
        prop_assert!(before.proportional(&d.tensor().unwrap()));
        prop_assert!(d.check_graph_like().is_ok());
        let mut last = t;
        for r in &trace {
            prop_assert!(r.t_after <= last, "{}", r);
            last = r.t_after;
        }
    }
}

#[test]
fn termination_and_determinism_on_many_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100_000 {
        let d = common::rewrite_start(&mut rng);
        let (mut a, mut b) = (d.clone(), d);
        full_simplify(&mut a);
        full_simplify(&mut b);
        assert_eq!(a, b);
    }
}

#[test]
fn larger_circuits_terminate_with_fewer_t() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let c = common::random_circuit(&mut rng, 6, 120, true);
        let mut d = ZxDiagram::from_circuit(&zxopt::arithgen::expand_toffolis(&c)).unwrap();
        let t = d.t_count();
        full_simplify(&mut d);
        assert!(d.t_count() <= t);
        assert_eq!(full_simplify(&mut d), 0, "not a fixpoint");
    }
}
