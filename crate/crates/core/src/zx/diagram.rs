use std::collections::BTreeMap;

use crate::phase::Phase;

/// Spider identifiers are indices into the diagram's slot table and are
/// never reused after removal.
pub type SpiderId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpiderKind {
    Z,
    X,
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeType {
    Plain,
    Hadamard,
}

impl EdgeType {
    pub fn toggled(self) -> EdgeType {
        match self {
            EdgeType::Plain => EdgeType::Hadamard,
            EdgeType::Hadamard => EdgeType::Plain,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Spider {
    pub kind: SpiderKind,
    pub phase: Phase,
}

/// Edge multiplicities between one pair of spiders.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Edges {
    pub plain: u32,
    pub hadamard: u32,
}

impl Edges {
    pub fn total(self) -> u32 {
        self.plain + self.hadamard
    }

    pub fn count(self, ty: EdgeType) -> u32 {
        match ty {
            EdgeType::Plain => self.plain,
            EdgeType::Hadamard => self.hadamard,
        }
    }

    pub fn is_empty(self) -> bool {
        self.total() == 0
    }

    fn slot(&mut self, ty: EdgeType) -> &mut u32 {
        match ty {
            EdgeType::Plain => &mut self.plain,
            EdgeType::Hadamard => &mut self.hadamard,
        }
    }

    /// The type of a single edge, `None` for zero or parallel edges.
    pub fn single(self) -> Option<EdgeType> {
        match (self.plain, self.hadamard) {
            (1, 0) => Some(EdgeType::Plain),
            (0, 1) => Some(EdgeType::Hadamard),
            _ => None,
        }
    }
}

/// An open ZX-diagram: a multigraph of phased spiders with ordered input and
/// output boundaries. Self-loops are stored once, under the spider's own id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZxDiagram {
    spiders: Vec<Option<Spider>>,
    adj: Vec<BTreeMap<SpiderId, Edges>>,
    inputs: Vec<SpiderId>,
    outputs: Vec<SpiderId>,
    live: usize,
}

impl ZxDiagram {
    pub fn new() -> ZxDiagram {
        ZxDiagram::default()
    }

    pub fn add_spider(&mut self, kind: SpiderKind, phase: Phase) -> SpiderId {
        let phase = if kind == SpiderKind::Boundary {
            Phase::zero()
        } else {
            phase
        };
        self.spiders.push(Some(Spider { kind, phase }));
        self.adj.push(BTreeMap::new());
        self.live += 1;
        self.spiders.len() - 1
    }

    pub fn add_z(&mut self, phase: Phase) -> SpiderId {
        self.add_spider(SpiderKind::Z, phase)
    }

    pub fn add_x(&mut self, phase: Phase) -> SpiderId {
        self.add_spider(SpiderKind::X, phase)
    }

    pub fn add_input(&mut self) -> SpiderId {
        let b = self.add_spider(SpiderKind::Boundary, Phase::zero());
        self.inputs.push(b);
        b
    }

    pub fn add_output(&mut self) -> SpiderId {
        let b = self.add_spider(SpiderKind::Boundary, Phase::zero());
        self.outputs.push(b);
        b
    }

    /// Removes a spider with all its edges. Removing a boundary also drops
    /// it from the input or output list.
    pub fn remove_spider(&mut self, v: SpiderId) {
        assert!(self.contains(v), "no spider {}", v);
        let nbrs: Vec<SpiderId> = self.adj[v].keys().copied().collect();
        for n in nbrs {
            self.adj[n].remove(&v);
        }
        self.adj[v].clear();
        self.spiders[v] = None;
        self.live -= 1;
        self.inputs.retain(|&b| b != v);
        self.outputs.retain(|&b| b != v);
    }

    pub fn contains(&self, v: SpiderId) -> bool {
        matches!(self.spiders.get(v), Some(Some(_)))
    }

    pub fn spider(&self, v: SpiderId) -> Option<Spider> {
        self.spiders.get(v).copied().flatten()
    }

    pub fn kind(&self, v: SpiderId) -> SpiderKind {
        self.spider(v).expect("live spider").kind
    }

    pub fn phase(&self, v: SpiderId) -> Phase {
        self.spider(v).expect("live spider").phase
    }

    pub fn set_phase(&mut self, v: SpiderId, phase: Phase) {
        let s = self.spiders[v].as_mut().expect("live spider");
        debug_assert!(s.kind != SpiderKind::Boundary || phase.is_zero());
        s.phase = phase;
    }

    pub fn add_to_phase(&mut self, v: SpiderId, delta: Phase) {
        let p = self.phase(v) + delta;
        self.set_phase(v, p);
    }

    pub(crate) fn set_kind(&mut self, v: SpiderId, kind: SpiderKind) {
        self.spiders[v].as_mut().expect("live spider").kind = kind;
    }

    pub fn is_boundary(&self, v: SpiderId) -> bool {
        self.spider(v).is_some_and(|s| s.kind == SpiderKind::Boundary)
    }

    pub fn add_edge(&mut self, u: SpiderId, v: SpiderId, ty: EdgeType) {
        assert!(self.contains(u) && self.contains(v), "edge {}-{} to missing spider", u, v);
        *self.adj[u].entry(v).or_default().slot(ty) += 1;
        if u != v {
            *self.adj[v].entry(u).or_default().slot(ty) += 1;
        }
    }

    pub(crate) fn add_edges(&mut self, u: SpiderId, v: SpiderId, e: Edges) {
        for _ in 0..e.plain {
            self.add_edge(u, v, EdgeType::Plain);
        }
        for _ in 0..e.hadamard {
            self.add_edge(u, v, EdgeType::Hadamard);
        }
    }

    /// Removes one edge of type `ty`; returns whether one existed.
    pub fn remove_edge(&mut self, u: SpiderId, v: SpiderId, ty: EdgeType) -> bool {
        let Some(e) = self.adj.get_mut(u).and_then(|m| m.get_mut(&v)) else {
            return false;
        };
        let slot = e.slot(ty);
        if *slot == 0 {
            return false;
        }
        *slot -= 1;
        let empty = e.is_empty();
        if empty {
            self.adj[u].remove(&v);
        }
        if u != v {
            let e = self.adj[v].get_mut(&u).expect("symmetric adjacency");
            *e.slot(ty) -= 1;
            if e.is_empty() {
                self.adj[v].remove(&u);
            }
        }
        true
    }

    /// Removes every edge between `u` and `v` and returns what was there.
    pub fn remove_edges(&mut self, u: SpiderId, v: SpiderId) -> Edges {
        let e = self.adj[u].remove(&v).unwrap_or_default();
        if u != v {
            self.adj[v].remove(&u);
        }
        e
    }

    pub fn edges_between(&self, u: SpiderId, v: SpiderId) -> Edges {
        self.adj
            .get(u)
            .and_then(|m| m.get(&v))
            .copied()
            .unwrap_or_default()
    }

    /// The type of the unique edge between `u` and `v`, if there is exactly one.
    pub fn edge_type(&self, u: SpiderId, v: SpiderId) -> Option<EdgeType> {
        self.edges_between(u, v).single()
    }

    pub fn connected(&self, u: SpiderId, v: SpiderId) -> bool {
        !self.edges_between(u, v).is_empty()
    }

    pub fn self_loops(&self, v: SpiderId) -> Edges {
        self.edges_between(v, v)
    }

    /// Distinct neighbors in ascending order, excluding `v` itself.
    pub fn neighbors(&self, v: SpiderId) -> impl Iterator<Item = SpiderId> + '_ {
        self.adj[v].keys().copied().filter(move |&n| n != v)
    }

    /// Neighbors with their edge multiplicities, excluding self-loops.
    pub fn incident(&self, v: SpiderId) -> impl Iterator<Item = (SpiderId, Edges)> + '_ {
        self.adj[v]
            .iter()
            .filter(move |(&n, _)| n != v)
            .map(|(&n, &e)| (n, e))
    }

    pub fn neighbor_count(&self, v: SpiderId) -> usize {
        self.neighbors(v).count()
    }

    /// Number of edge ends at `v`; a self-loop contributes two.
    pub fn degree(&self, v: SpiderId) -> usize {
        self.adj[v]
            .iter()
            .map(|(&n, e)| e.total() as usize * if n == v { 2 } else { 1 })
            .sum()
    }

    /// In graph-like form: the edge is H if present, and absent edges are
    /// created, with a self-toggle meaning a π phase.
    pub fn toggle_hadamard(&mut self, u: SpiderId, v: SpiderId) {
        if u == v {
            self.add_to_phase(u, Phase::pi());
        } else if !self.remove_edge(u, v, EdgeType::Hadamard) {
            self.add_edge(u, v, EdgeType::Hadamard);
        }
    }

    /// Live spider ids in ascending order.
    pub fn spider_ids(&self) -> impl Iterator<Item = SpiderId> + '_ {
        self.spiders
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|_| i))
    }

    /// One past the largest id ever allocated.
    pub fn id_bound(&self) -> usize {
        self.spiders.len()
    }

    pub fn spider_count(&self) -> usize {
        self.live
    }

    pub fn non_boundary_count(&self) -> usize {
        self.live - self.inputs.len() - self.outputs.len()
    }

    /// Non-boundary spiders with an odd multiple of π/4 as phase.
    pub fn t_count(&self) -> usize {
        self.spiders
            .iter()
            .flatten()
            .filter(|s| s.kind != SpiderKind::Boundary && s.phase.is_t_like())
            .count()
    }

    /// Non-boundary spiders whose phase is not a multiple of π/2.
    pub fn non_clifford_count(&self) -> usize {
        self.spiders
            .iter()
            .flatten()
            .filter(|s| s.kind != SpiderKind::Boundary && !s.phase.is_clifford())
            .count()
    }

    /// Non-boundary spiders none of whose neighbors is a boundary.
    pub fn internal_count(&self) -> usize {
        self.spider_ids()
            .filter(|&v| !self.is_boundary(v) && !self.neighbors(v).any(|n| self.is_boundary(n)))
            .count()
    }

    /// All edges as `(u, v, multiplicities)` with `u <= v`, ascending.
    pub fn edge_list(&self) -> Vec<(SpiderId, SpiderId, Edges)> {
        let mut out = Vec::new();
        for u in self.spider_ids() {
            for (&v, &e) in self.adj[u].range(u..) {
                out.push((u, v, e));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edge_list().iter().map(|(_, _, e)| e.total() as usize).sum()
    }

    pub fn inputs(&self) -> &[SpiderId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[SpiderId] {
        &self.outputs
    }

    /// Checks the structural invariants of every diagram.
    pub fn check_well_formed(&self) -> Result<(), String> {
        for v in self.spider_ids() {
            for &n in self.adj[v].keys() {
                if !self.contains(n) {
                    return Err(format!("edge {}-{} to a removed spider", v, n));
                }
                if self.adj[n].get(&v) != self.adj[v].get(&n) {
                    return Err(format!("asymmetric edge {}-{}", v, n));
                }
            }
            if self.is_boundary(v) {
                if self.degree(v) != 1 {
                    return Err(format!("boundary {} has degree {}", v, self.degree(v)));
                }
                let listed = self.inputs.iter().chain(&self.outputs).filter(|&&b| b == v);
                if listed.count() != 1 {
                    return Err(format!("boundary {} is not listed exactly once", v));
                }
            }
        }
        for &b in self.inputs.iter().chain(&self.outputs) {
            if !self.is_boundary(b) {
                return Err(format!("listed boundary {} is not a boundary spider", b));
            }
        }
        Ok(())
    }

    /// Checks graph-like form: only Z spiders, single Hadamard edges between
    /// them, no self-loops. Boundary edges may be of either type.
    pub fn check_graph_like(&self) -> Result<(), String> {
        self.check_well_formed()?;
        for v in self.spider_ids() {
            match self.kind(v) {
                SpiderKind::X => return Err(format!("X spider {}", v)),
                SpiderKind::Boundary => continue,
                SpiderKind::Z => {}
            }
            if !self.self_loops(v).is_empty() {
                return Err(format!("self-loop on {}", v));
            }
            for (n, e) in self.incident(v) {
                if self.is_boundary(n) {
                    continue;
                }
                if e.single() != Some(EdgeType::Hadamard) {
                    return Err(format!("edge {}-{} is {:?}", v, n, e));
                }
            }
        }
        Ok(())
    }

    pub fn is_graph_like(&self) -> bool {
        self.check_graph_like().is_ok()
    }

    /// Bare identity wires: input `i` joined to output `i` by one plain edge
    /// and nothing else in the diagram.
    pub fn is_identity(&self) -> bool {
        self.inputs.len() == self.outputs.len()
            && self.non_boundary_count() == 0
            && self
                .inputs
                .iter()
                .zip(&self.outputs)
                .all(|(&i, &o)| self.edge_type(i, o) == Some(EdgeType::Plain))
    }

    /// The spider at the other end of a boundary's single edge.
    pub fn boundary_neighbor(&self, b: SpiderId) -> SpiderId {
        self.neighbors(b).next().expect("boundary has one neighbor")
    }

    /// Whether `v` is a non-boundary Z spider whose edges all lead to
    /// non-boundary Z spiders through single Hadamard edges.
    pub fn is_interior_z(&self, v: SpiderId) -> bool {
        self.spider(v).is_some_and(|s| s.kind == SpiderKind::Z)
            && self.self_loops(v).is_empty()
            && self.incident(v).all(|(n, e)| {
                self.kind(n) == SpiderKind::Z && e.single() == Some(EdgeType::Hadamard)
            })
    }

    /// Graphviz rendering for debugging. Hadamard edges are dashed.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph zx {\n");
        for v in self.spider_ids() {
            let sp = self.spider(v).unwrap();
            let (color, shape) = match sp.kind {
                SpiderKind::Z => ("green", "circle"),
                SpiderKind::X => ("red", "circle"),
                SpiderKind::Boundary => ("black", "point"),
            };
            let label = if sp.phase.is_zero() {
                v.to_string()
            } else {
                format!("{}: {}", v, sp.phase)
            };
            s.push_str(&format!(
                "  {} [label=\"{}\", color={}, shape={}];\n",
                v, label, color, shape
            ));
        }
        for (u, v, e) in self.edge_list() {
            for _ in 0..e.plain {
                s.push_str(&format!("  {} -- {} [style=solid];\n", u, v));
            }
            for _ in 0..e.hadamard {
                s.push_str(&format!("  {} -- {} [style=dashed, color=blue];\n", u, v));
            }
        }
        s.push_str("}\n");
        s
    }
}
