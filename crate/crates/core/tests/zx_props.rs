mod common;

use common::{arb_circuit, simulated_tensor};
use proptest::prelude::*;
use zxopt::arithgen::expand_toffolis;
use zxopt::zx::to_graph_like;
use zxopt::ZxDiagram;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn diagram_tensor_matches_simulator(c in arb_circuit(6, 20, false)) {
        let d = ZxDiagram::from_circuit(&c).unwrap();
        let (t, u) = (d.tensor().unwrap(), simulated_tensor(&c));
        prop_assert!(t.deviation_up_to_scalar(&u) < 1e-9, "deviation {}", t.deviation_up_to_scalar(&u));
    }

    #[test]
    fn graph_like_form_is_valid_and_stable(c in arb_circuit(5, 30, true)) {
        let d = ZxDiagram::from_circuit(&expand_toffolis(&c)).unwrap();
        let g = to_graph_like(&d);
        prop_assert!(g.check_graph_like().is_ok());
        prop_assert!(g.check_well_formed().is_ok());
        prop_assert_eq!(&to_graph_like(&g), &g);
        if c.qubit_count() <= 4 {
            prop_assert!(g.tensor().unwrap().proportional(&d.tensor().unwrap()));
        }
    }
}
