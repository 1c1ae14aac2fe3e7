mod common;

use common::{arb_circuit, arb_clifford_t};
use proptest::prelude::*;
use zxopt::qasm::{emit_qasm, parse_qasm};
use zxopt::verify::{equal_unitary, simulate};
use zxopt::Circuit;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn qasm_round_trip(c in arb_circuit(6, 30, true)) {
        let text = emit_qasm(&c);
        let back = parse_qasm(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(emit_qasm(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adjoint_is_an_involution(c in arb_circuit(5, 30, true)) {
        prop_assert_eq!(c.adjoint().adjoint(), c.clone());
        let both = c.compose(&c.adjoint()).unwrap();
        prop_assert_eq!(both.len(), 2 * c.len());
    }

    #[test]
    fn circuit_then_adjoint_fixes_basis_states(c in arb_clifford_t(4, 20), input in 0usize..16) {
        let s = simulate(&c.compose(&c.adjoint()).unwrap(), input).unwrap();
        prop_assert_eq!(s.as_basis_state(), Some(input));
    }

    #[test]
    fn counts_partition_the_gates(c in arb_clifford_t(5, 40)) {
        let r = c.count_resources();
        prop_assert_eq!(r.t_count + r.clifford_count, r.total_gates);
        prop_assert_eq!(r.total_gates, c.len());
    }

    #[test]
    fn counts_ignore_relabeling(c in arb_circuit(5, 30, true), perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()) {
        let n = c.qubit_count();
        let mut perm: Vec<usize> = perm.into_iter().filter(|&q| q < n).collect();
        perm.truncate(n);
        let moved = c.relabel(&perm);
        prop_assert_eq!(moved.count_resources(), c.count_resources());
    }

    #[test]
    fn simulation_preserves_norm(c in arb_circuit(6, 60, true), input in 0usize..64) {
        let input = input % (1 << c.qubit_count());
        let s = simulate(&c, input).unwrap();
        prop_assert!((s.norm() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn norm_survives_ten_thousand_gates() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let c = common::random_circuit(&mut rng, 8, 10_000, true);
    let s = simulate(&c, 0b1011_0010).unwrap();
    assert!((s.norm() - 1.0).abs() < 1e-9);
}

#[test]
fn equal_unitary_is_an_equivalence() {
    use rand::SeedableRng;
    use zxopt::Gate;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let a = common::random_circuit(&mut rng, 3, 12, false);
        // b and c are rewritten forms of a: identities appended and prepended
        let pad = Circuit::from_gates(3, [Gate::h(1), Gate::h(1), Gate::s(0), Gate::sdg(0)]).unwrap();
        let b = a.compose(&pad).unwrap();
        let c = pad.compose(&b).unwrap();
        let d = common::random_circuit(&mut rng, 3, 12, false);
        assert!(equal_unitary(&a, &a).unwrap());
        assert_eq!(equal_unitary(&a, &b).unwrap(), equal_unitary(&b, &a).unwrap());
        assert!(equal_unitary(&a, &b).unwrap() && equal_unitary(&b, &c).unwrap());
        assert!(equal_unitary(&a, &c).unwrap());
        assert_eq!(equal_unitary(&a, &d).unwrap(), equal_unitary(&d, &a).unwrap());
        if equal_unitary(&a, &d).unwrap() {
            assert!(equal_unitary(&c, &d).unwrap());
        }
    }
}
