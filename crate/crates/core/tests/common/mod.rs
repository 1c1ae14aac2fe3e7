//! Random circuits and diagrams shared by the integration suites.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use zxopt::zx::{EdgeType, SpiderId};
use zxopt::{Circuit, Gate, Phase, ZxDiagram};

pub const ONE_QUBIT: [fn(usize) -> Gate; 7] = [Gate::h, Gate::x, Gate::z, Gate::s, Gate::sdg, Gate::t, Gate::tdg];

fn two_distinct(rng: &mut impl Rng, n: usize) -> (usize, usize) {
    let a = rng.gen_range(0..n);
    let b = (a + rng.gen_range(1..n)) % n;
    (a, b)
}

/// A random gate on `n` qubits. Two-qubit gates take about a third of the
/// draws; Toffolis only appear when asked for.
pub fn random_gate(rng: &mut impl Rng, n: usize, toffoli: bool) -> Gate {
    let roll = rng.gen_range(0..12);
    if n >= 3 && toffoli && roll == 11 {
        let mut q: Vec<usize> = (0..n).collect();
        q.shuffle(rng);
        return Gate::toffoli(q[0], q[1], q[2]);
    }
    if n >= 2 && roll >= 8 {
        let (a, b) = two_distinct(rng, n);
        return match roll {
            8 | 9 => Gate::cnot(a, b),
            10 => Gate::cz(a, b),
            _ => Gate::swap(a, b),
        };
    }
    ONE_QUBIT[rng.gen_range(0..ONE_QUBIT.len())](rng.gen_range(0..n))
}

pub fn random_circuit(rng: &mut impl Rng, n: usize, len: usize, toffoli: bool) -> Circuit {
    let gates: Vec<Gate> = (0..len).map(|_| random_gate(rng, n, toffoli)).collect();
    Circuit::from_gates(n, gates).unwrap()
}

fn arb_phase_gate(n: usize) -> impl Strategy<Value = Gate> {
    (0..n, -7i64..=7, prop::sample::select(vec![1i64, 2, 4, 8, 3]))
        .prop_map(|(q, num, den)| Gate::z_phase(q, Phase::new(num, den)))
}

/// Proptest strategy for circuits of `1..=max_qubits` qubits, including
/// arbitrary rational Z rotations.
pub fn arb_circuit(max_qubits: usize, max_len: usize, toffoli: bool) -> impl Strategy<Value = Circuit> {
    (1..=max_qubits).prop_flat_map(move |n| {
        let named = (any::<u64>()).prop_map(move |seed| {
            use rand::SeedableRng;
            random_gate(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), n, toffoli)
        });
        let gate = prop_oneof![5 => named, 1 => arb_phase_gate(n)];
        prop::collection::vec(gate, 0..=max_len).prop_map(move |g| Circuit::from_gates(n, g).unwrap())
    })
}

/// Strategy for Clifford+T circuits of exactly `n` qubits.
pub fn arb_clifford_t(n: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
    prop::collection::vec(any::<u64>(), 0..=max_len).prop_map(move |seeds| {
        use rand::SeedableRng;
        let gates = seeds
            .into_iter()
            .map(|s| random_gate(&mut rand_chacha::ChaCha8Rng::seed_from_u64(s), n, false));
        Circuit::from_gates(n, gates).unwrap()
    })
}

fn random_phase(rng: &mut impl Rng) -> Phase {
    Phase::quarters(rng.gen_range(0..8))
}

/// A random graph-like diagram: `wires` boundary wires through one Z spider
/// each, `inner` more Z spiders, Hadamard edges with probability one half,
/// and sometimes a pair of phase gadgets on a shared support.
pub fn random_graph_like(rng: &mut impl Rng, wires: usize, inner: usize) -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let mut zs: Vec<SpiderId> = Vec::new();
    for _ in 0..wires {
        let i = d.add_input();
        let z = d.add_z(random_phase(rng));
        let o = d.add_output();
        let ty = |rng: &mut dyn rand::RngCore| if rng.gen_bool(0.5) { EdgeType::Plain } else { EdgeType::Hadamard };
        d.add_edge(i, z, ty(rng));
        d.add_edge(z, o, ty(rng));
        zs.push(z);
    }
    for _ in 0..inner {
        zs.push(d.add_z(random_phase(rng)));
    }
    for a in 0..zs.len() {
        for b in a + 1..zs.len() {
            if rng.gen_bool(0.5) {
                d.add_edge(zs[a], zs[b], EdgeType::Hadamard);
            }
        }
    }
    if zs.len() >= 2 && rng.gen_bool(0.4) {
        let support: Vec<SpiderId> = zs.choose_multiple(rng, 2).copied().collect();
        for _ in 0..2 {
            let hub = d.add_z(if rng.gen_bool(0.8) { Phase::zero() } else { Phase::pi() });
            let axis = d.add_z(Phase::quarters(2 * rng.gen_range(0..4) + 1));
            d.add_edge(hub, axis, EdgeType::Hadamard);
            for &s in &support {
                d.add_edge(hub, s, EdgeType::Hadamard);
            }
        }
    }
    d
}

/// The unitary of `c` as a tensor, column by column from the simulator.
pub fn simulated_tensor(c: &Circuit) -> zxopt::zx::Tensor {
    let n = c.qubit_count();
    let columns: Vec<_> = (0..1usize << n)
        .map(|i| zxopt::verify::simulate(c, i).unwrap())
        .collect();
    zxopt::zx::Tensor::from_fn(n, n, |row, col| columns[col].amplitudes()[row])
}

/// Tensor-sized start points for rewrite walks: raw circuit diagrams for
/// the colored rules, graph-like ones for the pivot family.
pub fn rewrite_start(rng: &mut impl Rng) -> ZxDiagram {
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(1..=3);
            let len = rng.gen_range(1..=8);
            ZxDiagram::from_circuit(&random_circuit(rng, n, len, false)).unwrap()
        }
        1 => {
            let n = rng.gen_range(1..=3);
            let len = rng.gen_range(1..=10);
            zxopt::zx::to_graph_like(&ZxDiagram::from_circuit(&random_circuit(rng, n, len, false)).unwrap())
        }
        _ => {
            let wires = rng.gen_range(1..=3);
            let inner = rng.gen_range(1..=4);
            random_graph_like(rng, wires, inner)
        }
    }
}
