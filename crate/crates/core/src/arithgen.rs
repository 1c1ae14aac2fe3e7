//! Fault-tolerant arithmetic circuit generators: the Clifford+T Toffoli,
//! the controlled ripple-carry adder and the shift-and-add multiplier.
//!
//! The adder follows the ancilla-light ripple-carry construction with
//! one extra work qubit for the controlled carry. Its wire map is
//!
//! | wires            | role                                          |
//! |------------------|-----------------------------------------------|
//! | `0`              | control                                       |
//! | `1 ..= n`        | addend A (restored)                           |
//! | `n+1 ..= 2n`     | accumulator B, holds the low n sum bits       |
//! | `2n+1`           | carry-out, starts at 0, holds the sum MSB     |
//! | `2n+2`           | work qubit, starts at 0 and is restored       |

use thiserror::Error;

use crate::circuit::{Circuit, Gate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("conditional adder needs at least 1 bit, got {0}")]
    AdderWidth(usize),
    #[error("multiplier needs at least 2 bits, got {0}")]
    MultiplierWidth(usize),
}

/// How Toffoli gates are emitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ToffoliStyle {
    /// The 15-gate {H, T, T†, CNOT} network with seven T-type gates.
    #[default]
    CliffordT,
    /// A single native `ccx`.
    Native,
}

/// Clifford+T expansion of CCX(`c0`, `c1` → `target`).
pub fn toffoli_gates(c0: usize, c1: usize, target: usize) -> [Gate; 15] {
    let (a, b, c) = (c0, c1, target);
    [
        Gate::h(c),
        Gate::cnot(b, c),
        Gate::tdg(c),
        Gate::cnot(a, c),
        Gate::t(c),
        Gate::cnot(b, c),
        Gate::tdg(c),
        Gate::cnot(a, c),
        Gate::t(b),
        Gate::t(c),
        Gate::h(c),
        Gate::cnot(a, b),
        Gate::t(a),
        Gate::tdg(b),
        Gate::cnot(a, b),
    ]
}

/// Three-qubit Toffoli over {H, T, T†, CNOT}, controls on wires 0 and 1.
pub fn toffoli_clifford_t() -> Circuit {
    Circuit::from_gates(3, toffoli_gates(0, 1, 2)).expect("static gate list")
}

/// Replaces every native Toffoli by its Clifford+T expansion.
pub fn expand_toffolis(circuit: &Circuit) -> Circuit {
    let mut out = Circuit::new(circuit.qubit_count()).expect("nonempty register");
    for g in circuit.gates() {
        match g.operands() {
            [a, b, c] => out.extend(toffoli_gates(*a, *b, *c)),
            _ => out.push(*g),
        }
        .expect("operands already validated");
    }
    out
}

struct Builder {
    circuit: Circuit,
    style: ToffoliStyle,
    toffolis: usize,
}

impl Builder {
    fn new(width: usize, style: ToffoliStyle) -> Builder {
        Builder {
            circuit: Circuit::new(width).expect("nonzero width"),
            style,
            toffolis: 0,
        }
    }

    fn cnot(&mut self, c: usize, t: usize) {
        self.circuit.push(Gate::cnot(c, t)).expect("in range");
    }

    fn toffoli(&mut self, c0: usize, c1: usize, t: usize) {
        self.toffolis += 1;
        match self.style {
            ToffoliStyle::Native => self.circuit.push(Gate::toffoli(c0, c1, t)),
            ToffoliStyle::CliffordT => self.circuit.extend(toffoli_gates(c0, c1, t)),
        }
        .expect("in range");
    }

    /// Adds `ctrl · a` into `b ∥ carry`. `a` and `b` are little-endian and of
    /// equal width; `carry` and `work` start at zero and `work` is restored.
    fn controlled_add(&mut self, ctrl: usize, a: &[usize], b: &[usize], carry: usize, work: usize) {
        let n = a.len();
        debug_assert_eq!(n, b.len());
        let top = n - 1;
        // The top bit always takes part in the carry-majority trick, even
        // when it is also bit 0.
        let lo = if n == 1 { 0 } else { 1 };

        for i in lo..n {
            self.cnot(a[i], b[i]);
        }
        self.toffoli(ctrl, a[top], carry);
        for i in (1..top).rev() {
            self.cnot(a[i], a[i + 1]);
        }
        for i in 0..top {
            self.toffoli(b[i], a[i], a[i + 1]);
        }
        // carry ^= ctrl · a[top] · b[top], through the work qubit
        self.toffoli(b[top], a[top], work);
        self.toffoli(ctrl, work, carry);
        self.toffoli(b[top], a[top], work);
        for i in (1..n).rev() {
            self.toffoli(ctrl, a[i], b[i]);
            self.toffoli(b[i - 1], a[i - 1], a[i]);
        }
        self.toffoli(ctrl, a[0], b[0]);
        for i in 1..top {
            self.cnot(a[i], a[i + 1]);
        }
        for i in lo..n {
            self.cnot(a[i], b[i]);
        }
    }
}

/// Number of Toffolis in an `n`-bit conditional adder.
pub fn adder_toffoli_count(n: usize) -> usize {
    3 * n + 2
}

/// Number of Toffolis in an `n`-bit multiplier: one Toffoli array plus
/// `n − 1` shifted adders.
pub fn multiplier_toffoli_count(n: usize) -> usize {
    n + (n - 1) * adder_toffoli_count(n)
}

pub fn conditional_adder(n: usize) -> Result<Circuit, ArithError> {
    conditional_adder_with(n, ToffoliStyle::CliffordT)
}

/// `n`-bit conditional adder on `2n + 3` wires (see the module docs).
pub fn conditional_adder_with(n: usize, style: ToffoliStyle) -> Result<Circuit, ArithError> {
    if n == 0 {
        return Err(ArithError::AdderWidth(n));
    }
    let mut b = Builder::new(2 * n + 3, style);
    let a: Vec<usize> = (1..=n).collect();
    let acc: Vec<usize> = (n + 1..=2 * n).collect();
    b.controlled_add(0, &a, &acc, 2 * n + 1, 2 * n + 2);
    debug_assert_eq!(b.toffolis, adder_toffoli_count(n));
    Ok(b.circuit)
}

/// Qubit assignment of the `n`-bit multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiplierLayout {
    pub n: usize,
}

impl MultiplierLayout {
    pub fn new(n: usize) -> Result<MultiplierLayout, ArithError> {
        if n < 2 {
            return Err(ArithError::MultiplierWidth(n));
        }
        Ok(MultiplierLayout { n })
    }

    pub fn qubit_count(&self) -> usize {
        4 * self.n + 1
    }

    pub fn ancilla_count(&self) -> usize {
        2 * self.n + 1
    }

    /// First operand, little-endian.
    pub fn a(&self, i: usize) -> usize {
        assert!(i < self.n);
        i
    }

    /// Second operand, little-endian; bit `i` controls adder stage `i`.
    pub fn b(&self, i: usize) -> usize {
        assert!(i < self.n);
        self.n + i
    }

    /// Product bit `i` (`i < 2n`), stored in the ancilla block.
    pub fn product(&self, i: usize) -> usize {
        assert!(i < 2 * self.n);
        2 * self.n + i
    }

    /// The ancilla that every adder borrows and returns to zero.
    pub fn work(&self) -> usize {
        4 * self.n
    }

    /// Basis index of the input state `|a⟩|b⟩|0…0⟩`.
    pub fn input_index(&self, a: u64, b: u64) -> usize {
        assert!(a < 1 << self.n && b < 1 << self.n);
        (a | (b << self.n)) as usize
    }

    /// Basis index of the expected output `|a⟩|b⟩|a·b⟩|0⟩`.
    pub fn output_index(&self, a: u64, b: u64) -> usize {
        self.input_index(a, b) | ((a * b) << (2 * self.n)) as usize
    }
}

pub fn multiplier(n: usize) -> Result<Circuit, ArithError> {
    multiplier_with(n, ToffoliStyle::CliffordT)
}

/// Shift-and-add multiplier on [`MultiplierLayout`]: a Toffoli array forms
/// `A · b₀`, then adder `k` adds `b_k · A` into product bits `k ..= k+n`.
pub fn multiplier_with(n: usize, style: ToffoliStyle) -> Result<Circuit, ArithError> {
    let layout = MultiplierLayout::new(n)?;
    let mut b = Builder::new(layout.qubit_count(), style);
    for i in 0..n {
        b.toffoli(layout.b(0), layout.a(i), layout.product(i));
    }
    let a: Vec<usize> = (0..n).map(|i| layout.a(i)).collect();
    for k in 1..n {
        let acc: Vec<usize> = (k..k + n).map(|i| layout.product(i)).collect();
        b.controlled_add(layout.b(k), &a, &acc, layout.product(k + n), layout.work());
    }
    debug_assert_eq!(b.toffolis, multiplier_toffoli_count(n));
    Ok(b.circuit)
}
