use crate::circuit::{Circuit, GateKind};
use crate::phase::Phase;

use super::{EdgeType, SpiderId, SpiderKind, ZxDiagram, ZxError};

/// Free-function form of [`ZxDiagram::from_circuit`].
pub fn from_circuit(circuit: &Circuit) -> Result<ZxDiagram, ZxError> {
    ZxDiagram::from_circuit(circuit)
}

/// Returns a graph-like copy of `diagram`.
pub fn to_graph_like(diagram: &ZxDiagram) -> ZxDiagram {
    let mut d = diagram.clone();
    d.make_graph_like();
    d
}

struct Wire {
    last: SpiderId,
    pending: EdgeType,
}

impl ZxDiagram {
    /// Translates a Clifford+T circuit gate by gate. Hadamard gates become
    /// Hadamard edges; every other gate gets its own spiders.
    pub fn from_circuit(circuit: &Circuit) -> Result<ZxDiagram, ZxError> {
        let mut d = ZxDiagram::new();
        let mut wires: Vec<Wire> = (0..circuit.qubit_count())
            .map(|_| Wire {
                last: d.add_input(),
                pending: EdgeType::Plain,
            })
            .collect();

        fn attach(d: &mut ZxDiagram, w: &mut Wire, kind: SpiderKind, phase: Phase) -> SpiderId {
            let s = d.add_spider(kind, phase);
            d.add_edge(w.last, s, w.pending);
            w.last = s;
            w.pending = EdgeType::Plain;
            s
        }

        for (index, g) in circuit.gates().iter().enumerate() {
            let q = g.operands();
            match g.kind() {
                GateKind::H => {
                    let w = &mut wires[q[0]];
                    w.pending = w.pending.toggled();
                }
                GateKind::X => {
                    attach(&mut d, &mut wires[q[0]], SpiderKind::X, Phase::pi());
                }
                GateKind::Cnot => {
                    let c = attach(&mut d, &mut wires[q[0]], SpiderKind::Z, Phase::zero());
                    let t = attach(&mut d, &mut wires[q[1]], SpiderKind::X, Phase::zero());
                    d.add_edge(c, t, EdgeType::Plain);
                }
                GateKind::Cz => {
                    let a = attach(&mut d, &mut wires[q[0]], SpiderKind::Z, Phase::zero());
                    let b = attach(&mut d, &mut wires[q[1]], SpiderKind::Z, Phase::zero());
                    d.add_edge(a, b, EdgeType::Hadamard);
                }
                GateKind::Swap => wires.swap(q[0], q[1]),
                GateKind::Toffoli => return Err(ZxError::Toffoli { index }),
                k => {
                    let phase = k.z_phase().expect("remaining kinds are Z rotations");
                    attach(&mut d, &mut wires[q[0]], SpiderKind::Z, phase);
                }
            }
        }
        for w in wires {
            let o = d.add_output();
            d.add_edge(w.last, o, w.pending);
        }
        Ok(d)
    }

    /// Turns X spiders into Z spiders by toggling their edge types.
    pub(crate) fn color_change(&mut self, v: SpiderId) {
        let kind = match self.kind(v) {
            SpiderKind::X => SpiderKind::Z,
            SpiderKind::Z => SpiderKind::X,
            SpiderKind::Boundary => panic!("cannot color-change boundary {}", v),
        };
        self.set_kind(v, kind);
        let nbrs: Vec<_> = self.incident(v).collect();
        for (n, e) in nbrs {
            self.remove_edges(v, n);
            self.add_edges(
                v,
                n,
                super::Edges {
                    plain: e.hadamard,
                    hadamard: e.plain,
                },
            );
        }
    }

    /// Merges `gone` into `keep`, which must be same-colored and joined by
    /// at least one plain edge. Leftover loops are resolved: plain loops
    /// vanish and each Hadamard loop adds π.
    pub(crate) fn fuse(&mut self, keep: SpiderId, gone: SpiderId) {
        debug_assert!(keep != gone);
        let between = self.remove_edges(keep, gone);
        debug_assert!(between.plain > 0);
        let loops = self.remove_edges(gone, gone);
        let pis = between.hadamard + loops.hadamard;
        let mut phase = self.phase(keep) + self.phase(gone);
        if pis % 2 == 1 {
            phase += Phase::pi();
        }
        self.set_phase(keep, phase);
        let rest: Vec<_> = self.incident(gone).collect();
        for (n, e) in rest {
            self.add_edges(keep, n, e);
        }
        self.remove_spider(gone);
    }

    /// Removes self-loops on a non-boundary spider.
    pub(crate) fn drop_self_loops(&mut self, v: SpiderId) {
        let loops = self.remove_edges(v, v);
        if loops.hadamard % 2 == 1 {
            self.add_to_phase(v, Phase::pi());
        }
    }

    /// Brings the diagram into graph-like form in place.
    pub fn make_graph_like(&mut self) {
        let ids: Vec<_> = self.spider_ids().collect();
        for &v in &ids {
            if self.kind(v) == SpiderKind::X {
                self.color_change(v);
            }
        }
        self.normalize_z();
    }

    /// Fusion, loop removal and Hadamard-parity reduction on an all-Z
    /// diagram. Returns the number of fusions performed.
    pub(crate) fn normalize_z(&mut self) -> usize {
        let mut fusions = 0;
        let ids: Vec<_> = self.spider_ids().collect();
        for v in ids {
            if !self.contains(v) || self.kind(v) != SpiderKind::Z {
                continue;
            }
            loop {
                let next = self
                    .incident(v)
                    .find(|&(n, e)| e.plain > 0 && self.kind(n) == SpiderKind::Z)
                    .map(|(n, _)| n);
                let Some(u) = next else { break };
                self.fuse(v, u);
                fusions += 1;
            }
            self.drop_self_loops(v);
        }
        let ids: Vec<_> = self.spider_ids().collect();
        for v in ids {
            if self.kind(v) != SpiderKind::Z {
                continue;
            }
            let parallel: Vec<_> = self
                .incident(v)
                .filter(|&(n, e)| n > v && e.hadamard > 1 && self.kind(n) == SpiderKind::Z)
                .collect();
            for (n, e) in parallel {
                self.remove_edges(v, n);
                if e.hadamard % 2 == 1 {
                    self.add_edge(v, n, EdgeType::Hadamard);
                }
            }
        }
        fusions
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    fn circ(n: usize, gates: impl IntoIterator<Item = Gate>) -> Circuit {
        Circuit::from_gates(n, gates).unwrap()
    }

    #[test]
    fn single_t_gate() {
        let d = ZxDiagram::from_circuit(&circ(1, [Gate::t(0)])).unwrap();
        assert_eq!(d.non_boundary_count(), 1);
        let z = d.boundary_neighbor(d.inputs()[0]);
        assert_eq!(d.kind(z), SpiderKind::Z);
        assert_eq!(d.phase(z), Phase::new(1, 4));
        assert_eq!(d.boundary_neighbor(d.outputs()[0]), z);
    }

    #[test]
    fn three_cnots_give_six_spiders() {
        let c = circ(2, [Gate::cnot(0, 1), Gate::cnot(1, 0), Gate::cnot(0, 1)]);
        let d = ZxDiagram::from_circuit(&c).unwrap();
        assert_eq!(d.non_boundary_count(), 6);
        assert_eq!(d.internal_count(), 2);
        d.check_well_formed().unwrap();
    }

    #[test]
    fn toffoli_is_rejected() {
        let c = circ(3, [Gate::h(0), Gate::toffoli(0, 1, 2)]);
        assert_eq!(
            ZxDiagram::from_circuit(&c),
            Err(ZxError::Toffoli { index: 1 })
        );
    }

    #[test]
    fn hadamards_become_edges() {
        let c = circ(1, [Gate::h(0), Gate::h(0), Gate::h(0)]);
        let d = ZxDiagram::from_circuit(&c).unwrap();
        assert_eq!(d.spider_count(), 2);
        let (i, o) = (d.inputs()[0], d.outputs()[0]);
        assert_eq!(d.edge_type(i, o), Some(EdgeType::Hadamard));
    }

    #[test]
    fn graph_like_fuses_and_recolors() {
        let c = circ(
            2,
            [Gate::t(0), Gate::s(0), Gate::cnot(0, 1), Gate::x(1), Gate::cz(0, 1)],
        );
        let mut d = ZxDiagram::from_circuit(&c).unwrap();
        d.make_graph_like();
        d.check_graph_like().unwrap();
        // T and S and the CNOT control and the CZ end fuse into one spider
        let z = d.boundary_neighbor(d.inputs()[0]);
        assert_eq!(d.phase(z), Phase::new(3, 4));
        let before = d.clone();
        d.make_graph_like();
        assert_eq!(d, before);
    }

    #[test]
    fn x_pi_becomes_z_pi_between_hadamards() {
        let d = to_graph_like(&ZxDiagram::from_circuit(&circ(1, [Gate::x(0)])).unwrap());
        let z = d.boundary_neighbor(d.inputs()[0]);
        assert_eq!(d.kind(z), SpiderKind::Z);
        assert_eq!(d.phase(z), Phase::pi());
        assert_eq!(d.edge_type(z, d.inputs()[0]), Some(EdgeType::Hadamard));
        assert_eq!(d.edge_type(z, d.outputs()[0]), Some(EdgeType::Hadamard));
    }
}
