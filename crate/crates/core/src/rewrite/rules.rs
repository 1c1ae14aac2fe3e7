//! Unchecked rule bodies. Callers validate the site first.

use crate::phase::Phase;
use crate::zx::{EdgeType, SpiderId, ZxDiagram};

use super::PhaseGadget;

pub(super) fn remove_identity(d: &mut ZxDiagram, v: SpiderId) {
    let legs: Vec<_> = d.incident(v).collect();
    let [(a, ea), (b, eb)] = legs[..] else {
        unreachable!("checked: two neighbors")
    };
    let ty = if ea.single() == eb.single() {
        EdgeType::Plain
    } else {
        EdgeType::Hadamard
    };
    d.remove_spider(v);
    d.add_edge(a, b, ty);
}

pub(super) fn hopf(d: &mut ZxDiagram, u: SpiderId, v: SpiderId) {
    let ty = if d.kind(u) == d.kind(v) {
        EdgeType::Hadamard
    } else {
        EdgeType::Plain
    };
    d.remove_edge(u, v, ty);
    d.remove_edge(u, v, ty);
}

pub(super) fn bialgebra(d: &mut ZxDiagram, z: SpiderId, x: SpiderId) {
    let legs = |d: &ZxDiagram, v: SpiderId, other: SpiderId| -> Vec<SpiderId> {
        d.incident(v)
            .filter(|&(n, _)| n != other)
            .flat_map(|(n, e)| std::iter::repeat_n(n, e.plain as usize))
            .collect()
    };
    let z_legs = legs(d, z, x);
    let x_legs = legs(d, x, z);
    d.remove_spider(z);
    d.remove_spider(x);
    let new_x: Vec<_> = z_legs
        .iter()
        .map(|&n| {
            let s = d.add_x(Phase::zero());
            d.add_edge(s, n, EdgeType::Plain);
            s
        })
        .collect();
    let new_z: Vec<_> = x_legs
        .iter()
        .map(|&n| {
            let s = d.add_z(Phase::zero());
            d.add_edge(s, n, EdgeType::Plain);
            s
        })
        .collect();
    for &a in &new_x {
        for &b in &new_z {
            d.add_edge(a, b, EdgeType::Plain);
        }
    }
}

pub(super) fn pi_copy(d: &mut ZxDiagram, pi: SpiderId, target: SpiderId) {
    let kind = d.kind(pi);
    let (w, ew) = d
        .incident(pi)
        .find(|&(n, _)| n != target)
        .expect("checked: second neighbor");
    let ty = ew.single().expect("checked: single edge");
    let legs: Vec<_> = d.incident(target).filter(|&(n, _)| n != pi).collect();
    d.remove_spider(pi);
    for (n, e) in legs {
        for ty in [EdgeType::Plain, EdgeType::Hadamard] {
            for _ in 0..e.count(ty) {
                d.remove_edge(target, n, ty);
                let k = d.add_spider(kind, Phase::pi());
                d.add_edge(target, k, EdgeType::Plain);
                d.add_edge(k, n, ty);
            }
        }
    }
    d.add_edge(w, target, ty);
    let p = d.phase(target);
    d.set_phase(target, -p);
}

pub(super) fn local_complement(d: &mut ZxDiagram, v: SpiderId) {
    let alpha = d.phase(v);
    let ns: Vec<_> = d.neighbors(v).collect();
    d.remove_spider(v);
    for (i, &a) in ns.iter().enumerate() {
        for &b in &ns[i + 1..] {
            d.toggle_hadamard(a, b);
        }
        d.add_to_phase(a, -alpha);
    }
}

pub(super) fn pivot(d: &mut ZxDiagram, u: SpiderId, v: SpiderId) {
    let (pu, pv) = (d.phase(u), d.phase(v));
    let nu: Vec<_> = d.neighbors(u).filter(|&n| n != v).collect();
    let nv: Vec<_> = d.neighbors(v).filter(|&n| n != u).collect();
    d.remove_spider(u);
    d.remove_spider(v);
    for &a in &nu {
        d.add_to_phase(a, pv);
    }
    for &b in &nv {
        d.add_to_phase(b, pu);
    }
    // a shared neighbor toggles with itself, which adds π
    for &a in &nu {
        for &b in &nv {
            d.toggle_hadamard(a, b);
        }
    }
}

/// Moves the boundary edge of `w` onto a fresh phase-free spider so that
/// `w` becomes interior.
fn split_boundary(d: &mut ZxDiagram, w: SpiderId) {
    let b = d
        .neighbors(w)
        .find(|&n| d.is_boundary(n))
        .expect("checked: boundary neighbor");
    let ty = d.remove_edges(w, b).single().expect("boundary edge is single");
    let x = d.add_z(Phase::zero());
    d.add_edge(w, x, EdgeType::Hadamard);
    d.add_edge(x, b, ty.toggled());
}

/// Splits the boundary off `w`, then pivots, moving a non-Pauli phase of
/// `w` onto a gadget first.
pub(super) fn pivot_boundary(d: &mut ZxDiagram, interior: SpiderId, w: SpiderId) {
    split_boundary(d, w);
    if d.phase(w).is_pauli() {
        pivot(d, interior, w);
    } else {
        pivot_gadget(d, interior, w);
    }
}

/// Moves the phase of `w` onto a new gadget, then pivots.
pub(super) fn pivot_gadget(d: &mut ZxDiagram, pauli: SpiderId, w: SpiderId) {
    let hub = d.add_z(Phase::zero());
    let axis = d.add_z(d.phase(w));
    d.set_phase(w, Phase::zero());
    d.add_edge(w, hub, EdgeType::Hadamard);
    d.add_edge(hub, axis, EdgeType::Hadamard);
    pivot(d, pauli, w);
    normalize_hub(d, PhaseGadget { hub, axis });
}

/// A π hub is equivalent to a phase-free hub with a negated axis.
pub(super) fn normalize_hub(d: &mut ZxDiagram, g: PhaseGadget) {
    if d.phase(g.hub) == Phase::pi() {
        d.set_phase(g.hub, Phase::zero());
        let p = d.phase(g.axis);
        d.set_phase(g.axis, -p);
    }
}

pub(super) fn gadget_fusion(d: &mut ZxDiagram, keep: PhaseGadget, drop: PhaseGadget) {
    normalize_hub(d, keep);
    normalize_hub(d, drop);
    let phase = d.phase(keep.axis) + d.phase(drop.axis);
    d.remove_spider(drop.axis);
    d.remove_spider(drop.hub);
    d.set_phase(keep.axis, phase);
    if phase.is_pauli() {
        // the axis pins the hub to a basis value: 0 detaches the gadget,
        // π leaves a Z(π) on every support spider
        if phase == Phase::pi() {
            for n in keep.support(d) {
                d.add_to_phase(n, Phase::pi());
            }
        }
        d.remove_spider(keep.axis);
        d.remove_spider(keep.hub);
    }
}
