//! Circuit extraction from simplified graph-like diagrams.
//!
//! Extraction walks from the outputs towards the inputs. Each round peels
//! the phases and mutual Hadamard edges of the frontier off as Z rotations
//! and CZ gates, then row-reduces the frontier's biadjacency matrix to
//! expose a spider reachable through a single Hadamard edge.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::phase::Phase;
use crate::rewrite::pivot;
use crate::zx::{EdgeType, SpiderId, SpiderKind, ZxDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("diagram is not graph-like: {0}")]
    NotGraphLike(String),
    #[error("diagram has {inputs} inputs and {outputs} outputs")]
    BoundaryMismatch { inputs: usize, outputs: usize },
    #[error("diagram has no boundary wires")]
    Empty,
    #[error("extraction stuck with frontier {frontier:?}")]
    Stuck { frontier: Vec<SpiderId> },
    #[error("gate {index}: phase {phase} is not a multiple of π/4")]
    Phase { index: usize, phase: Phase },
}

/// The spider currently adjacent to each output wire; `None` once the wire
/// reaches its input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frontier {
    pub spiders: Vec<Option<SpiderId>>,
}

impl Frontier {
    /// Qubits that still have a frontier spider, with that spider.
    pub fn active(&self) -> impl Iterator<Item = (usize, SpiderId)> + '_ {
        self.spiders
            .iter()
            .enumerate()
            .filter_map(|(q, s)| s.map(|s| (q, s)))
    }

    fn contains(&self, v: SpiderId) -> bool {
        self.spiders.contains(&Some(v))
    }
}

/// GF(2) adjacency between frontier spiders (rows) and their remaining
/// neighbors (columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiadjacencyMatrix {
    pub rows: Vec<SpiderId>,
    pub cols: Vec<SpiderId>,
    bits: Vec<Vec<bool>>,
}

impl BiadjacencyMatrix {
    pub fn new(d: &ZxDiagram, rows: Vec<SpiderId>, cols: Vec<SpiderId>) -> BiadjacencyMatrix {
        let bits = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| d.connected(r, c)).collect())
            .collect();
        BiadjacencyMatrix { rows, cols, bits }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r][c]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.bits[r].iter().filter(|&&b| b).count()
    }

    /// Adds row `src` into row `dst`.
    pub fn row_add(&mut self, src: usize, dst: usize) {
        for c in 0..self.cols.len() {
            let s = self.bits[src][c];
            self.bits[dst][c] ^= s;
        }
    }

    /// Full reduction to reduced row-echelon form without row swaps. Pivot
    /// columns are taken left to right; a missing pivot is filled from the
    /// lowest-index row below it. `on_add(src, dst)` sees every row
    /// operation in order.
    pub fn gauss(&mut self, mut on_add: impl FnMut(usize, usize)) {
        let mut pivot_row = 0;
        for c in 0..self.cols.len() {
            if pivot_row == self.rows.len() {
                break;
            }
            let Some(r) = (pivot_row..self.rows.len()).find(|&r| self.bits[r][c]) else {
                continue;
            };
            if r != pivot_row {
                self.row_add(r, pivot_row);
                on_add(r, pivot_row);
            }
            for i in 0..self.rows.len() {
                if i != pivot_row && self.bits[i][c] {
                    self.row_add(pivot_row, i);
                    on_add(pivot_row, i);
                }
            }
            pivot_row += 1;
        }
    }

    /// Writes the matrix back as Hadamard edges.
    fn store(&self, d: &mut ZxDiagram) {
        for (r, &f) in self.rows.iter().enumerate() {
            for (c, &n) in self.cols.iter().enumerate() {
                if d.connected(f, n) != self.bits[r][c] {
                    d.toggle_hadamard(f, n);
                }
            }
        }
    }
}

/// Replaces each Z rotation that is a multiple of π/4 by at most two named
/// gates.
pub fn decompose_phases(circuit: &Circuit) -> Result<Circuit, ExtractError> {
    let mut out = Circuit::new(circuit.qubit_count()).expect("nonempty register");
    for (index, g) in circuit.gates().iter().enumerate() {
        match g.kind() {
            crate::circuit::GateKind::ZPhase(phase) => {
                let q = g.operands()[0];
                let k = phase
                    .as_quarters()
                    .ok_or(ExtractError::Phase { index, phase })?;
                out.extend(phase_word(q, k)).expect("same register");
            }
            _ => out.push(*g).expect("same register"),
        }
    }
    Ok(out)
}

fn phase_word(q: usize, quarters: u8) -> Vec<Gate> {
    match quarters {
        0 => vec![],
        1 => vec![Gate::t(q)],
        2 => vec![Gate::s(q)],
        3 => vec![Gate::s(q), Gate::t(q)],
        4 => vec![Gate::z(q)],
        5 => vec![Gate::z(q), Gate::t(q)],
        6 => vec![Gate::sdg(q)],
        7 => vec![Gate::tdg(q)],
        _ => unreachable!("quarters are taken mod 8"),
    }
}

fn phase_gates(q: usize, phase: Phase) -> Vec<Gate> {
    match phase.as_quarters() {
        Some(k) => phase_word(q, k),
        None => vec![Gate::z_phase(q, phase)],
    }
}

fn set_plain(d: &mut ZxDiagram, a: SpiderId, b: SpiderId) {
    d.remove_edges(a, b);
    d.add_edge(a, b, EdgeType::Plain);
}

/// Whether `h` has a degree-one Z neighbor, making it a gadget hub.
fn has_leaf(d: &ZxDiagram, h: SpiderId) -> bool {
    d.neighbors(h)
        .any(|a| d.kind(a) == SpiderKind::Z && d.degree(a) == 1)
}

struct Extractor {
    g: ZxDiagram,
    outputs: Vec<SpiderId>,
    inputs: Vec<SpiderId>,
    frontier: Frontier,
    /// Gates in output-to-input order.
    gates: Vec<Gate>,
}

impl Extractor {
    fn is_input(&self, v: SpiderId) -> bool {
        self.inputs.contains(&v)
    }

    fn init_frontier(&mut self) {
        for q in 0..self.outputs.len() {
            let o = self.outputs[q];
            let v = self.g.boundary_neighbor(o);
            if self.g.edge_type(o, v) == Some(EdgeType::Hadamard) {
                self.gates.push(Gate::h(q));
                set_plain(&mut self.g, o, v);
            }
            if self.g.is_boundary(v) {
                continue;
            }
            if self.frontier.contains(v) {
                // one spider on two outputs: give this wire its own spider
                let f = self.g.add_z(Phase::zero());
                let m = self.g.add_z(Phase::zero());
                self.g.remove_edges(o, v);
                self.g.add_edge(o, f, EdgeType::Plain);
                self.g.add_edge(f, m, EdgeType::Hadamard);
                self.g.add_edge(m, v, EdgeType::Hadamard);
                self.frontier.spiders[q] = Some(f);
            } else {
                self.frontier.spiders[q] = Some(v);
            }
        }
    }

    fn peel_phases_and_czs(&mut self) {
        let active: Vec<_> = self.frontier.active().collect();
        for &(q, f) in &active {
            let p = self.g.phase(f);
            if !p.is_zero() {
                self.gates.extend(phase_gates(q, p));
                self.g.set_phase(f, Phase::zero());
            }
        }
        for (i, &(q1, f1)) in active.iter().enumerate() {
            for &(q2, f2) in &active[i + 1..] {
                if self.g.connected(f1, f2) {
                    self.g.remove_edges(f1, f2);
                    self.gates.push(Gate::cz(q1, q2));
                }
            }
        }
    }

    /// Retires wires whose frontier spider only touches its input, and
    /// separates other frontier spiders from inputs.
    fn settle_inputs(&mut self) {
        let active: Vec<_> = self.frontier.active().collect();
        for (q, f) in active {
            let o = self.outputs[q];
            let nbrs: Vec<_> = self.g.neighbors(f).filter(|&n| n != o).collect();
            let ins: Vec<_> = nbrs.iter().copied().filter(|&n| self.is_input(n)).collect();
            if ins.is_empty() {
                continue;
            }
            if nbrs.len() == 1 {
                self.frontier.spiders[q] = None;
                continue;
            }
            for b in ins {
                let ty = self.g.remove_edges(f, b).single().expect("boundary edge");
                let w = self.g.add_z(Phase::zero());
                self.g.add_edge(f, w, EdgeType::Hadamard);
                self.g.add_edge(w, b, ty.toggled());
            }
        }
    }

    fn neighbor_set(&self) -> Vec<SpiderId> {
        let mut set = BTreeSet::new();
        for (q, f) in self.frontier.active() {
            for n in self.g.neighbors(f) {
                if n != self.outputs[q] && !self.frontier.contains(n) {
                    set.insert(n);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Pivots the first gadget hub next to the frontier into the frontier.
    fn remove_gadget(&mut self, nbrs: &[SpiderId]) -> bool {
        for &h in nbrs {
            if !has_leaf(&self.g, h) || !self.g.phase(h).is_pauli() {
                continue;
            }
            let Some((q, f)) = self
                .frontier
                .active()
                .find(|&(_, f)| self.g.connected(f, h))
            else {
                continue;
            };
            let o = self.outputs[q];
            self.g.remove_edges(o, f);
            let x = self.g.add_z(Phase::zero());
            self.g.add_edge(o, x, EdgeType::Hadamard);
            self.g.add_edge(x, f, EdgeType::Hadamard);
            if pivot(&mut self.g, f, h).is_err() {
                // undo the split and leave this hub to elimination
                self.g.remove_spider(x);
                self.g.add_edge(o, f, EdgeType::Plain);
                continue;
            }
            set_plain(&mut self.g, o, x);
            self.gates.push(Gate::h(q));
            self.frontier.spiders[q] = Some(x);
            return true;
        }
        false
    }

    fn advance(&mut self, cols: Vec<SpiderId>) -> Result<(), ExtractError> {
        let active: Vec<_> = self.frontier.active().collect();
        let rows: Vec<_> = active.iter().map(|&(_, f)| f).collect();
        let mut m = BiadjacencyMatrix::new(&self.g, rows, cols);
        if (0..active.len()).all(|r| m.row_weight(r) != 1) {
            let mut cnots = Vec::new();
            m.gauss(|src, dst| cnots.push(Gate::cnot(active[dst].0, active[src].0)));
            self.gates.extend(cnots);
            m.store(&mut self.g);
        }
        let mut used = BTreeSet::new();
        for (r, &(q, f)) in active.iter().enumerate() {
            if m.row_weight(r) != 1 {
                continue;
            }
            let c = (0..m.cols.len()).find(|&c| m.get(r, c)).unwrap();
            if !used.insert(c) {
                continue;
            }
            let w = m.cols[c];
            let o = self.outputs[q];
            self.gates.push(Gate::h(q));
            self.g.remove_spider(f);
            self.g.add_edge(o, w, EdgeType::Plain);
            self.frontier.spiders[q] = Some(w);
        }
        if used.is_empty() {
            return Err(self.stuck());
        }
        Ok(())
    }

    fn stuck(&self) -> ExtractError {
        ExtractError::Stuck {
            frontier: self.frontier.active().map(|(_, f)| f).collect(),
        }
    }

    /// Hadamards and SWAPs that route each input to its output.
    fn permutation(&self) -> Result<Vec<Gate>, ExtractError> {
        let n = self.outputs.len();
        let mut source = vec![0; n];
        let mut gates = Vec::new();
        for (q, &o) in self.outputs.iter().enumerate() {
            let v = self.g.boundary_neighbor(o);
            let (b, ty) = if self.is_input(v) {
                (v, self.g.edge_type(o, v))
            } else {
                let mut rest = self.g.neighbors(v).filter(|&n| n != o);
                match (rest.next(), rest.next()) {
                    (Some(b), None) if self.is_input(b) && self.g.phase(v).is_zero() => {
                        (b, self.g.edge_type(v, b))
                    }
                    _ => return Err(self.stuck()),
                }
            };
            let i = self.inputs.iter().position(|&x| x == b).unwrap();
            source[q] = i;
            if ty == Some(EdgeType::Hadamard) {
                gates.push(Gate::h(i));
            }
        }
        // position p currently holds input slot[p]
        let mut slot: Vec<usize> = (0..n).collect();
        for (q, &src) in source.iter().enumerate() {
            let p = slot.iter().position(|&i| i == src).unwrap();
            if p != q {
                gates.push(Gate::swap(q, p));
                slot.swap(q, p);
            }
        }
        Ok(gates)
    }

    fn run(mut self) -> Result<Circuit, ExtractError> {
        self.init_frontier();
        loop {
            self.peel_phases_and_czs();
            self.settle_inputs();
            if self.frontier.active().next().is_none() {
                break;
            }
            let nbrs = self.neighbor_set();
            if nbrs.is_empty() {
                return Err(self.stuck());
            }
            if self.remove_gadget(&nbrs) {
                continue;
            }
            self.advance(nbrs)?;
        }
        let mut gates = self.permutation()?;
        gates.extend(self.gates.iter().rev());
        Ok(Circuit::from_gates(self.outputs.len(), gates).expect("qubits in range"))
    }
}

/// Extracts a circuit implementing `diagram` up to global phase. Z rotations
/// that are multiples of π/4 come out as named gates.
pub fn extract_circuit(diagram: &ZxDiagram) -> Result<Circuit, ExtractError> {
    diagram
        .check_graph_like()
        .map_err(ExtractError::NotGraphLike)?;
    let (ni, no) = (diagram.inputs().len(), diagram.outputs().len());
    if ni != no {
        return Err(ExtractError::BoundaryMismatch {
            inputs: ni,
            outputs: no,
        });
    }
    if no == 0 {
        return Err(ExtractError::Empty);
    }
    Extractor {
        g: diagram.clone(),
        outputs: diagram.outputs().to_vec(),
        inputs: diagram.inputs().to_vec(),
        frontier: Frontier {
            spiders: vec![None; no],
        },
        gates: Vec::new(),
    }
    .run()
}
