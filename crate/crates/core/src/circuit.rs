//! Circuit intermediate representation over the Clifford+T gate set.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::phase::Phase;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("a circuit needs at least one qubit")]
    NoQubits,
    #[error("{kind} takes {expected} operand(s), got {got}")]
    Arity {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{kind} operands must be distinct, got {operands:?}")]
    RepeatedOperand {
        kind: &'static str,
        operands: Vec<usize>,
    },
    #[error("qubit {qubit} out of range for a {width}-qubit circuit")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("cannot compose a {left}-qubit circuit with a {right}-qubit circuit")]
    WidthMismatch { left: usize, right: usize },
}

/// The primitive gate kinds admitted by the IR.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    X,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    ZPhase(Phase),
    Cnot,
    Cz,
    Swap,
    Toffoli,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz | GateKind::Swap => 2,
            GateKind::Toffoli => 3,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::ZPhase(_) => "rz",
            GateKind::Cnot => "cx",
            GateKind::Cz => "cz",
            GateKind::Swap => "swap",
            GateKind::Toffoli => "ccx",
        }
    }

    /// The Z-rotation angle of a diagonal single-qubit gate.
    pub fn z_phase(self) -> Option<Phase> {
        match self {
            GateKind::Z => Some(Phase::pi()),
            GateKind::S => Some(Phase::new(1, 2)),
            GateKind::Sdg => Some(Phase::new(3, 2)),
            GateKind::T => Some(Phase::new(1, 4)),
            GateKind::Tdg => Some(Phase::new(7, 4)),
            GateKind::ZPhase(p) => Some(p),
            _ => None,
        }
    }

    pub fn class(self) -> GateClass {
        match self {
            GateKind::Toffoli => GateClass::Other,
            GateKind::ZPhase(p) if p.is_t_like() => GateClass::T,
            GateKind::ZPhase(p) if p.is_clifford() => GateClass::Clifford,
            GateKind::ZPhase(_) => GateClass::Other,
            GateKind::T | GateKind::Tdg => GateClass::T,
            _ => GateClass::Clifford,
        }
    }

    pub fn inverse(self) -> GateKind {
        match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            GateKind::ZPhase(p) => GateKind::ZPhase(-p),
            k => k,
        }
    }
}

/// Cost class used by resource counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateClass {
    Clifford,
    T,
    /// Neither Clifford nor T: a Toffoli, or a Z rotation off the π/4 grid.
    Other,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    qubits: [usize; 3],
}

impl Gate {
    pub fn new(kind: GateKind, operands: &[usize]) -> Result<Gate, CircuitError> {
        if operands.len() != kind.arity() {
            return Err(CircuitError::Arity {
                kind: kind.name(),
                expected: kind.arity(),
                got: operands.len(),
            });
        }
        for (i, a) in operands.iter().enumerate() {
            if operands[i + 1..].contains(a) {
                return Err(CircuitError::RepeatedOperand {
                    kind: kind.name(),
                    operands: operands.to_vec(),
                });
            }
        }
        let mut qubits = [0; 3];
        qubits[..operands.len()].copy_from_slice(operands);
        Ok(Gate { kind, qubits })
    }

    fn single(kind: GateKind, q: usize) -> Gate {
        Gate {
            kind,
            qubits: [q, 0, 0],
        }
    }

    fn pair(kind: GateKind, a: usize, b: usize) -> Gate {
        assert_ne!(a, b, "two-qubit gate on a single wire");
        Gate {
            kind,
            qubits: [a, b, 0],
        }
    }

    pub fn h(q: usize) -> Gate {
        Gate::single(GateKind::H, q)
    }
    pub fn x(q: usize) -> Gate {
        Gate::single(GateKind::X, q)
    }
    pub fn z(q: usize) -> Gate {
        Gate::single(GateKind::Z, q)
    }
    pub fn s(q: usize) -> Gate {
        Gate::single(GateKind::S, q)
    }
    pub fn sdg(q: usize) -> Gate {
        Gate::single(GateKind::Sdg, q)
    }
    pub fn t(q: usize) -> Gate {
        Gate::single(GateKind::T, q)
    }
    pub fn tdg(q: usize) -> Gate {
        Gate::single(GateKind::Tdg, q)
    }
    pub fn z_phase(q: usize, phase: Phase) -> Gate {
        Gate::single(GateKind::ZPhase(phase), q)
    }
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::pair(GateKind::Cnot, control, target)
    }
    pub fn cz(a: usize, b: usize) -> Gate {
        Gate::pair(GateKind::Cz, a, b)
    }
    pub fn swap(a: usize, b: usize) -> Gate {
        Gate::pair(GateKind::Swap, a, b)
    }
    pub fn toffoli(c0: usize, c1: usize, target: usize) -> Gate {
        assert!(c0 != c1 && c0 != target && c1 != target);
        Gate {
            kind: GateKind::Toffoli,
            qubits: [c0, c1, target],
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn operands(&self) -> &[usize] {
        &self.qubits[..self.kind.arity()]
    }

    pub fn inverse(&self) -> Gate {
        Gate {
            kind: self.kind.inverse(),
            qubits: self.qubits,
        }
    }

    /// The same gate with every operand passed through `map`.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Gate {
        let mut g = *self;
        for q in g.qubits[..self.kind.arity()].iter_mut() {
            *q = map(*q);
        }
        g
    }
}

impl fmt::Debug for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GateKind::ZPhase(p) => write!(f, "rz({}){:?}", p, self.operands()),
            k => write!(f, "{}{:?}", k.name(), self.operands()),
        }
    }
}

/// An ordered gate list over a fixed-width register.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    qubit_count: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubit_count: usize) -> Result<Circuit, CircuitError> {
        if qubit_count == 0 {
            return Err(CircuitError::NoQubits);
        }
        Ok(Circuit {
            qubit_count,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(
        qubit_count: usize,
        gates: impl IntoIterator<Item = Gate>,
    ) -> Result<Circuit, CircuitError> {
        let mut c = Circuit::new(qubit_count)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        if let Some(&q) = gate.operands().iter().find(|&&q| q >= self.qubit_count) {
            return Err(CircuitError::QubitOutOfRange {
                qubit: q,
                width: self.qubit_count,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<(), CircuitError> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Gates reversed, each replaced by its inverse.
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            qubit_count: self.qubit_count,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        if self.qubit_count != other.qubit_count {
            return Err(CircuitError::WidthMismatch {
                left: self.qubit_count,
                right: other.qubit_count,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(Circuit {
            qubit_count: self.qubit_count,
            gates,
        })
    }

    /// Applies a qubit permutation (`perm[old] = new`) to every operand.
    pub fn relabel(&self, perm: &[usize]) -> Circuit {
        assert_eq!(perm.len(), self.qubit_count);
        Circuit {
            qubit_count: self.qubit_count,
            gates: self.gates.iter().map(|g| g.relabel(|q| perm[q])).collect(),
        }
    }

    pub fn count_resources(&self) -> ResourceReport {
        count_resources(self)
    }
}

/// Gate statistics, one field per row of the before/after comparison table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub qubit_count: usize,
    pub total_gates: usize,
    pub t_count: usize,
    pub clifford_count: usize,
    pub two_qubit_count: usize,
    pub hadamard_count: usize,
    /// Gates that are neither Clifford nor T (Toffolis, off-grid rotations).
    pub other_count: usize,
}

pub fn count_resources(circuit: &Circuit) -> ResourceReport {
    let mut r = ResourceReport {
        qubit_count: circuit.qubit_count(),
        total_gates: circuit.len(),
        ..ResourceReport::default()
    };
    for g in circuit.gates() {
        match g.kind().class() {
            GateClass::T => r.t_count += 1,
            GateClass::Clifford => r.clifford_count += 1,
            GateClass::Other => r.other_count += 1,
        }
        if g.kind().arity() == 2 {
            r.two_qubit_count += 1;
        }
        if g.kind() == GateKind::H {
            r.hadamard_count += 1;
        }
    }
    r
}

pub fn adjoint(circuit: &Circuit) -> Circuit {
    circuit.adjoint()
}

pub fn compose(left: &Circuit, right: &Circuit) -> Result<Circuit, CircuitError> {
    left.compose(right)
}
