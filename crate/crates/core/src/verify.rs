//! Functional verification: dense statevector simulation for small widths
//! and a diagrammatic identity check for full-width circuits.
//!
//! Qubit `k` is bit `k` of a basis index everywhere in this crate.

use num_complex::Complex64;
use thiserror::Error;

use crate::arithgen::expand_toffolis;
use crate::circuit::{Circuit, Gate, GateKind};
use crate::rewrite::full_simplify;
use crate::zx::ZxDiagram;

/// Relative tolerance for every complex comparison.
pub const TOLERANCE: f64 = 1e-9;
/// Default statevector width bound (2^26 amplitudes, 1 GiB).
pub const MAX_SIMULATION_QUBITS: usize = 26;
/// Width bound for column-by-column unitary comparison.
pub const MAX_UNITARY_QUBITS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("{qubits} qubits exceeds the {limit}-qubit bound for this check")]
    TooWide { qubits: usize, limit: usize },
    #[error("circuits act on {0} and {1} qubits")]
    WidthMismatch(usize, usize),
    #[error("basis index {index} out of range for {qubits} qubits")]
    BasisIndex { index: usize, qubits: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(qubits: usize, index: usize) -> Result<StateVector, VerifyError> {
        if qubits > MAX_SIMULATION_QUBITS {
            return Err(VerifyError::TooWide {
                qubits,
                limit: MAX_SIMULATION_QUBITS,
            });
        }
        if index >= 1 << qubits {
            return Err(VerifyError::BasisIndex { index, qubits });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { qubits, amps })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// The basis index holding (almost) all probability, if any.
    pub fn as_basis_state(&self) -> Option<usize> {
        let (i, a) = self
            .amps
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.norm_sqr().total_cmp(&y.1.norm_sqr()))?;
        ((1.0 - a.norm_sqr()).abs() < TOLERANCE).then_some(i)
    }

    pub fn apply(&mut self, gate: &Gate) {
        let ops = gate.operands();
        match gate.kind() {
            GateKind::H => {
                let m = 1 << ops[0];
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for i in 0..self.amps.len() {
                    if i & m == 0 {
                        let (a, b) = (self.amps[i], self.amps[i | m]);
                        self.amps[i] = (a + b) * s;
                        self.amps[i | m] = (a - b) * s;
                    }
                }
            }
            GateKind::X => {
                let m = 1 << ops[0];
                for i in 0..self.amps.len() {
                    if i & m == 0 {
                        self.amps.swap(i, i | m);
                    }
                }
            }
            GateKind::Cnot => {
                let (c, t) = (1 << ops[0], 1 << ops[1]);
                for i in 0..self.amps.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amps.swap(i, i | t);
                    }
                }
            }
            GateKind::Toffoli => {
                let (c, t) = ((1 << ops[0]) | (1 << ops[1]), 1 << ops[2]);
                for i in 0..self.amps.len() {
                    if i & c == c && i & t == 0 {
                        self.amps.swap(i, i | t);
                    }
                }
            }
            GateKind::Swap => {
                let (a, b) = (1 << ops[0], 1 << ops[1]);
                for i in 0..self.amps.len() {
                    if i & a != 0 && i & b == 0 {
                        self.amps.swap(i, (i & !a) | b);
                    }
                }
            }
            GateKind::Cz => {
                let m = (1 << ops[0]) | (1 << ops[1]);
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & m == m {
                        *a = -*a;
                    }
                }
            }
            k => {
                let phase = k.z_phase().expect("remaining kinds are diagonal");
                let w = Complex64::from_polar(1.0, phase.to_radians());
                let m = 1 << ops[0];
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & m != 0 {
                        *a *= w;
                    }
                }
            }
        }
    }
}

/// Runs `circuit` on the basis state `input`.
pub fn simulate(circuit: &Circuit, input: usize) -> Result<StateVector, VerifyError> {
    let mut sv = StateVector::basis(circuit.qubit_count(), input)?;
    for g in circuit.gates() {
        sv.apply(g);
    }
    Ok(sv)
}

/// Checks `b ≈ λ·a` for a unit-modulus `λ`, fixing `λ` on first use.
struct PhaseMatcher {
    factor: Option<Complex64>,
}

impl PhaseMatcher {
    fn new() -> PhaseMatcher {
        PhaseMatcher { factor: None }
    }

    fn matches(&mut self, a: &[Complex64], b: &[Complex64]) -> bool {
        if self.factor.is_none() {
            let (i, _) = a
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.norm_sqr().total_cmp(&y.1.norm_sqr()))
                .expect("nonempty state");
            if a[i].norm() < TOLERANCE {
                return false;
            }
            let f = b[i] / a[i];
            if (f.norm() - 1.0).abs() > TOLERANCE {
                return false;
            }
            self.factor = Some(f);
        }
        let f = self.factor.unwrap();
        a.iter()
            .zip(b)
            .all(|(x, y)| (x * f - y).norm() < TOLERANCE)
    }
}

fn check_pair(c1: &Circuit, c2: &Circuit, limit: usize) -> Result<usize, VerifyError> {
    let n = c1.qubit_count();
    if n != c2.qubit_count() {
        return Err(VerifyError::WidthMismatch(n, c2.qubit_count()));
    }
    if n > limit {
        return Err(VerifyError::TooWide { qubits: n, limit });
    }
    Ok(n)
}

/// Whether `c1 = e^{iφ}·c2` for a single global phase, compared column by
/// column.
pub fn equal_unitary(c1: &Circuit, c2: &Circuit) -> Result<bool, VerifyError> {
    let n = check_pair(c1, c2, MAX_UNITARY_QUBITS)?;
    let inputs: Vec<usize> = (0..1 << n).collect();
    equal_on_basis(c1, c2, &inputs)
}

/// Whether both circuits agree on every listed basis input, up to one
/// global phase common to all of them.
pub fn equal_on_basis(c1: &Circuit, c2: &Circuit, inputs: &[usize]) -> Result<bool, VerifyError> {
    check_pair(c1, c2, MAX_SIMULATION_QUBITS)?;
    let mut matcher = PhaseMatcher::new();
    for &i in inputs {
        let a = simulate(c1, i)?;
        let b = simulate(c2, i)?;
        if !matcher.matches(a.amplitudes(), b.amplitudes()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the diagrammatic check. `Unknown` is not a counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZxVerdict {
    Equivalent,
    Unknown,
}

/// Simplifies the diagram of `c1 · c2†` and reports whether it reduced to
/// bare identity wires.
pub fn adjoint_reduce_check(c1: &Circuit, c2: &Circuit) -> Result<ZxVerdict, VerifyError> {
    let n = c1.qubit_count();
    if n != c2.qubit_count() {
        return Err(VerifyError::WidthMismatch(n, c2.qubit_count()));
    }
    let joined = expand_toffolis(c1)
        .compose(&expand_toffolis(c2).adjoint())
        .expect("equal widths");
    let mut d = ZxDiagram::from_circuit(&joined).expect("Toffolis were expanded");
    full_simplify(&mut d);
    Ok(if d.is_identity() {
        ZxVerdict::Equivalent
    } else {
        ZxVerdict::Unknown
    })
}
