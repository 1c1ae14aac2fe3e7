//! Rewrite rules on ZX-diagrams and the simplification strategy built from
//! them.
//!
//! Every rule is checked against its structural precondition before it is
//! applied; an invalid site is an error, never a silent no-op. All rules
//! preserve the diagram's tensor up to a nonzero scalar.

mod rules;
mod simplify;

use std::fmt;

use thiserror::Error;

use crate::phase::Phase;
use crate::zx::{EdgeType, SpiderId, SpiderKind, ZxDiagram};

pub use simplify::{full_simplify, full_simplify_traced, interior_clifford_simplify, TraceRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RewriteRule {
    Fusion,
    IdentityRemoval,
    Hopf,
    Bialgebra,
    PiCopy,
    LocalComplement,
    Pivot,
    PivotBoundary,
    PivotGadget,
    GadgetFusion,
}

impl RewriteRule {
    pub const ALL: [RewriteRule; 10] = [
        RewriteRule::Fusion,
        RewriteRule::IdentityRemoval,
        RewriteRule::Hopf,
        RewriteRule::Bialgebra,
        RewriteRule::PiCopy,
        RewriteRule::LocalComplement,
        RewriteRule::Pivot,
        RewriteRule::PivotBoundary,
        RewriteRule::PivotGadget,
        RewriteRule::GadgetFusion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RewriteRule::Fusion => "fusion",
            RewriteRule::IdentityRemoval => "identity",
            RewriteRule::Hopf => "hopf",
            RewriteRule::Bialgebra => "bialgebra",
            RewriteRule::PiCopy => "pi-copy",
            RewriteRule::LocalComplement => "lcomp",
            RewriteRule::Pivot => "pivot",
            RewriteRule::PivotBoundary => "pivot-boundary",
            RewriteRule::PivotGadget => "pivot-gadget",
            RewriteRule::GadgetFusion => "gadget-fusion",
        }
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A phase gadget: a degree-one `axis` spider carrying the phase, joined by
/// a Hadamard edge to a Pauli-phase `hub` whose other neighbors form the
/// support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseGadget {
    pub hub: SpiderId,
    pub axis: SpiderId,
}

impl PhaseGadget {
    /// The gadget hanging off `hub`, if `hub` is a valid gadget hub with
    /// exactly one axis and a nonempty support.
    pub fn at_hub(d: &ZxDiagram, hub: SpiderId) -> Option<PhaseGadget> {
        if !d.contains(hub) || !d.is_interior_z(hub) || !d.phase(hub).is_pauli() {
            return None;
        }
        let mut axes = d.neighbors(hub).filter(|&a| is_leaf(d, a));
        let axis = axes.next()?;
        if axes.next().is_some() || d.neighbor_count(hub) < 2 {
            return None;
        }
        Some(PhaseGadget { hub, axis })
    }

    pub fn support(&self, d: &ZxDiagram) -> Vec<SpiderId> {
        d.neighbors(self.hub).filter(|&n| n != self.axis).collect()
    }

    pub fn phase(&self, d: &ZxDiagram) -> Phase {
        d.phase(self.axis)
    }

    fn is_valid(&self, d: &ZxDiagram) -> bool {
        PhaseGadget::at_hub(d, self.hub) == Some(*self)
    }
}

/// A non-boundary Z spider whose only edge is one Hadamard edge.
fn is_leaf(d: &ZxDiagram, a: SpiderId) -> bool {
    let mut legs = d.incident(a);
    let (Some((n, e)), None) = (legs.next(), legs.next()) else {
        return false;
    };
    d.kind(a) == SpiderKind::Z
        && d.self_loops(a).is_empty()
        && e.single() == Some(EdgeType::Hadamard)
        && d.kind(n) == SpiderKind::Z
}

/// All phase gadgets, ordered by hub id.
pub fn phase_gadgets(d: &ZxDiagram) -> Vec<PhaseGadget> {
    d.spider_ids()
        .filter_map(|h| PhaseGadget::at_hub(d, h))
        .collect()
}

/// Whether `v` carries a non-Pauli phase gadget axis. Such spiders are kept
/// out of pivots so their gadgets survive for fusion.
pub fn is_gadget_hub(d: &ZxDiagram, v: SpiderId) -> bool {
    d.neighbors(v)
        .any(|a| is_leaf(d, a) && !d.phase(a).is_pauli())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RewriteSite {
    /// Merge `gone` into `keep`.
    Fusion { keep: SpiderId, gone: SpiderId },
    IdentityRemoval(SpiderId),
    Hopf(SpiderId, SpiderId),
    Bialgebra { z: SpiderId, x: SpiderId },
    /// Push the π phase of `pi` through `target`.
    PiCopy { pi: SpiderId, target: SpiderId },
    LocalComplement(SpiderId),
    Pivot(SpiderId, SpiderId),
    /// `interior` is a Pauli spider; `boundary` is its partner with a
    /// boundary neighbor. A non-Pauli partner is first turned into a gadget.
    PivotBoundary { interior: SpiderId, boundary: SpiderId },
    /// `pauli` is a Pauli spider; `gadget` is its non-Clifford partner whose
    /// phase is extruded into a new gadget.
    PivotGadget { pauli: SpiderId, gadget: SpiderId },
    /// Fold `drop` into `keep`.
    GadgetFusion { keep: PhaseGadget, drop: PhaseGadget },
}

impl RewriteSite {
    pub fn rule(&self) -> RewriteRule {
        match self {
            RewriteSite::Fusion { .. } => RewriteRule::Fusion,
            RewriteSite::IdentityRemoval(_) => RewriteRule::IdentityRemoval,
            RewriteSite::Hopf(..) => RewriteRule::Hopf,
            RewriteSite::Bialgebra { .. } => RewriteRule::Bialgebra,
            RewriteSite::PiCopy { .. } => RewriteRule::PiCopy,
            RewriteSite::LocalComplement(_) => RewriteRule::LocalComplement,
            RewriteSite::Pivot(..) => RewriteRule::Pivot,
            RewriteSite::PivotBoundary { .. } => RewriteRule::PivotBoundary,
            RewriteSite::PivotGadget { .. } => RewriteRule::PivotGadget,
            RewriteSite::GadgetFusion { .. } => RewriteRule::GadgetFusion,
        }
    }

    /// The spider ids the site names, in order.
    pub fn spiders(&self) -> Vec<SpiderId> {
        match *self {
            RewriteSite::Fusion { keep, gone } => vec![keep, gone],
            RewriteSite::IdentityRemoval(v) | RewriteSite::LocalComplement(v) => vec![v],
            RewriteSite::Hopf(u, v) | RewriteSite::Pivot(u, v) => vec![u, v],
            RewriteSite::Bialgebra { z, x } => vec![z, x],
            RewriteSite::PiCopy { pi, target } => vec![pi, target],
            RewriteSite::PivotBoundary { interior, boundary } => vec![interior, boundary],
            RewriteSite::PivotGadget { pauli, gadget } => vec![pauli, gadget],
            RewriteSite::GadgetFusion { keep, drop } => {
                vec![keep.hub, keep.axis, drop.hub, drop.axis]
            }
        }
    }
}

impl fmt::Display for RewriteSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.spiders().iter().map(|v| v.to_string()).collect();
        write!(f, "{} {}", self.rule(), ids.join(","))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("spider {0} does not exist")]
    MissingSpider(SpiderId),
    #[error("{rule} does not match at {site}: {reason}")]
    SiteMismatch {
        rule: RewriteRule,
        site: String,
        reason: &'static str,
    },
}

fn mismatch(site: &RewriteSite, reason: &'static str) -> RewriteError {
    RewriteError::SiteMismatch {
        rule: site.rule(),
        site: site.to_string(),
        reason,
    }
}

fn is_pauli_interior(d: &ZxDiagram, v: SpiderId) -> bool {
    d.is_interior_z(v) && d.phase(v).is_pauli()
}

/// Boundary neighbors of a Z spider whose other edges are single Hadamard
/// edges to Z spiders; `None` if it has any other edge.
fn boundary_legs(d: &ZxDiagram, w: SpiderId) -> Option<usize> {
    let mut boundaries = 0;
    for (n, e) in d.incident(w) {
        if d.is_boundary(n) {
            boundaries += 1;
        } else if d.kind(n) != SpiderKind::Z || e.single() != Some(EdgeType::Hadamard) {
            return None;
        }
    }
    Some(boundaries)
}

/// Validates `site` against the rule's structural precondition.
pub fn check_site(d: &ZxDiagram, site: &RewriteSite) -> Result<(), RewriteError> {
    for v in site.spiders() {
        if !d.contains(v) {
            return Err(RewriteError::MissingSpider(v));
        }
    }
    let fail = |reason| Err(mismatch(site, reason));
    let spider_like = |v| matches!(d.kind(v), SpiderKind::Z | SpiderKind::X);
    match *site {
        RewriteSite::Fusion { keep, gone } => {
            if keep == gone || !spider_like(keep) || d.kind(keep) != d.kind(gone) {
                return fail("needs two distinct spiders of one color");
            }
            if d.edges_between(keep, gone).plain == 0 {
                return fail("spiders are not joined by a plain edge");
            }
        }
        RewriteSite::IdentityRemoval(v) => {
            if !spider_like(v) || !d.phase(v).is_zero() {
                return fail("needs a phase-free spider");
            }
            if !d.self_loops(v).is_empty() || d.degree(v) != 2 || d.neighbor_count(v) != 2 {
                return fail("needs two distinct neighbors");
            }
        }
        RewriteSite::Hopf(u, v) => {
            if u == v || !spider_like(u) || !spider_like(v) {
                return fail("needs two distinct spiders");
            }
            let e = d.edges_between(u, v);
            let enough = if d.kind(u) == d.kind(v) {
                e.hadamard >= 2
            } else {
                e.plain >= 2
            };
            if !enough {
                return fail("no matching parallel edge pair");
            }
        }
        RewriteSite::Bialgebra { z, x } => {
            if d.kind(z) != SpiderKind::Z || d.kind(x) != SpiderKind::X {
                return fail("needs a Z spider and an X spider");
            }
            if !d.phase(z).is_zero() || !d.phase(x).is_zero() {
                return fail("both phases must be zero");
            }
            if d.edge_type(z, x) != Some(EdgeType::Plain) {
                return fail("needs exactly one plain edge between them");
            }
            for v in [z, x] {
                if !d.self_loops(v).is_empty() || d.incident(v).any(|(_, e)| e.hadamard > 0) {
                    return fail("all other edges must be plain");
                }
            }
        }
        RewriteSite::PiCopy { pi, target } => {
            if pi == target || !spider_like(pi) || !spider_like(target) {
                return fail("needs two distinct spiders");
            }
            if d.kind(pi) == d.kind(target) || d.phase(pi) != Phase::pi() {
                return fail("needs a π spider of the opposite color");
            }
            if d.degree(pi) != 2 || d.neighbor_count(pi) != 2 || !d.self_loops(pi).is_empty() {
                return fail("π spider must have two distinct neighbors");
            }
            if d.edge_type(pi, target) != Some(EdgeType::Plain) {
                return fail("π spider must touch the target by one plain edge");
            }
            if !d.self_loops(target).is_empty() {
                return fail("target has a self-loop");
            }
        }
        RewriteSite::LocalComplement(v) => {
            if !d.is_interior_z(v) {
                return fail("needs an interior graph-like Z spider");
            }
            if !d.phase(v).is_proper_clifford() {
                return fail("phase must be ±π/2");
            }
        }
        RewriteSite::Pivot(u, v) => {
            if u == v || !is_pauli_interior(d, u) || !is_pauli_interior(d, v) {
                return fail("needs two interior Pauli spiders");
            }
            if d.edge_type(u, v) != Some(EdgeType::Hadamard) {
                return fail("spiders are not Hadamard-adjacent");
            }
        }
        RewriteSite::PivotBoundary { interior, boundary } => {
            if interior == boundary || !is_pauli_interior(d, interior) {
                return fail("needs an interior Pauli spider");
            }
            let w = boundary;
            if d.kind(w) != SpiderKind::Z || !d.self_loops(w).is_empty() {
                return fail("partner must be a Z spider");
            }
            if d.edge_type(interior, w) != Some(EdgeType::Hadamard) {
                return fail("spiders are not Hadamard-adjacent");
            }
            if boundary_legs(d, w) != Some(1) {
                return fail("partner must touch exactly one boundary");
            }
            if d.neighbor_count(w) < 3 && !d.phase(w).is_pauli() {
                return fail("partner is a wire spider");
            }
        }
        RewriteSite::PivotGadget { pauli, gadget } => {
            if pauli == gadget || !is_pauli_interior(d, pauli) {
                return fail("needs an interior Pauli spider");
            }
            if !d.is_interior_z(gadget) || d.phase(gadget).is_clifford() {
                return fail("partner must be an interior non-Clifford spider");
            }
            if d.neighbor_count(gadget) < 2 {
                return fail("partner is already a gadget axis");
            }
            if d.edge_type(pauli, gadget) != Some(EdgeType::Hadamard) {
                return fail("spiders are not Hadamard-adjacent");
            }
        }
        RewriteSite::GadgetFusion { keep, drop } => {
            if keep.hub == drop.hub || !keep.is_valid(d) || !drop.is_valid(d) {
                return fail("needs two distinct phase gadgets");
            }
            if keep.support(d) != drop.support(d) {
                return fail("gadget supports differ");
            }
        }
    }
    Ok(())
}

/// Checks and applies one rewrite in place.
pub fn apply_rule(d: &mut ZxDiagram, site: &RewriteSite) -> Result<(), RewriteError> {
    check_site(d, site)?;
    match *site {
        RewriteSite::Fusion { keep, gone } => d.fuse(keep, gone),
        RewriteSite::IdentityRemoval(v) => rules::remove_identity(d, v),
        RewriteSite::Hopf(u, v) => rules::hopf(d, u, v),
        RewriteSite::Bialgebra { z, x } => rules::bialgebra(d, z, x),
        RewriteSite::PiCopy { pi, target } => rules::pi_copy(d, pi, target),
        RewriteSite::LocalComplement(v) => rules::local_complement(d, v),
        RewriteSite::Pivot(u, v) => rules::pivot(d, u, v),
        RewriteSite::PivotBoundary { interior, boundary } => {
            rules::pivot_boundary(d, interior, boundary)
        }
        RewriteSite::PivotGadget { pauli, gadget } => rules::pivot_gadget(d, pauli, gadget),
        RewriteSite::GadgetFusion { keep, drop } => rules::gadget_fusion(d, keep, drop),
    }
    Ok(())
}

/// Removes an interior ±π/2 spider by complementing its neighborhood.
pub fn local_complement(d: &mut ZxDiagram, v: SpiderId) -> Result<(), RewriteError> {
    apply_rule(d, &RewriteSite::LocalComplement(v))
}

/// Removes a Hadamard-adjacent pair of interior Pauli spiders.
pub fn pivot(d: &mut ZxDiagram, u: SpiderId, v: SpiderId) -> Result<(), RewriteError> {
    apply_rule(d, &RewriteSite::Pivot(u, v))
}

/// Merges two gadgets with equal support into `g1`.
pub fn gadget_fusion(
    d: &mut ZxDiagram,
    g1: PhaseGadget,
    g2: PhaseGadget,
) -> Result<(), RewriteError> {
    apply_rule(d, &RewriteSite::GadgetFusion { keep: g1, drop: g2 })
}

/// Every site where `rule` currently matches, in ascending id order.
///
/// Pivot-family sites skip spiders carrying a non-Pauli gadget axis, as the
/// simplification strategy does.
pub fn find_sites(d: &ZxDiagram, rule: RewriteRule) -> Vec<RewriteSite> {
    let mut out = Vec::new();
    let mut push = |site: RewriteSite| {
        if check_site(d, &site).is_ok() {
            out.push(site);
        }
    };
    // per-spider filters, computed once so that edge scans stay linear
    let mut hubs = vec![false; d.id_bound()];
    let mut candidate = vec![false; d.id_bound()];
    if matches!(
        rule,
        RewriteRule::Pivot | RewriteRule::PivotBoundary | RewriteRule::PivotGadget
    ) {
        for v in d.spider_ids() {
            hubs[v] = is_gadget_hub(d, v);
            candidate[v] = !hubs[v] && d.kind(v) == SpiderKind::Z && d.phase(v).is_pauli();
        }
    }
    let hub = |v: SpiderId| hubs[v];
    match rule {
        RewriteRule::IdentityRemoval | RewriteRule::LocalComplement => {
            for v in d.spider_ids() {
                push(if rule == RewriteRule::LocalComplement {
                    RewriteSite::LocalComplement(v)
                } else {
                    RewriteSite::IdentityRemoval(v)
                });
            }
        }
        RewriteRule::GadgetFusion => {
            let mut groups: std::collections::BTreeMap<Vec<SpiderId>, PhaseGadget> =
                Default::default();
            for g in phase_gadgets(d) {
                match groups.get(&g.support(d)) {
                    Some(&keep) => push(RewriteSite::GadgetFusion { keep, drop: g }),
                    None => {
                        groups.insert(g.support(d), g);
                    }
                }
            }
        }
        _ => {
            for u in d.spider_ids() {
                let pivot_family = matches!(
                    rule,
                    RewriteRule::Pivot | RewriteRule::PivotBoundary | RewriteRule::PivotGadget
                );
                if pivot_family && !candidate[u] {
                    continue;
                }
                for v in d.neighbors(u).collect::<Vec<_>>() {
                    match rule {
                        RewriteRule::Fusion if u < v => {
                            push(RewriteSite::Fusion { keep: u, gone: v })
                        }
                        RewriteRule::Hopf if u < v => push(RewriteSite::Hopf(u, v)),
                        RewriteRule::Bialgebra => push(RewriteSite::Bialgebra { z: u, x: v }),
                        RewriteRule::PiCopy => push(RewriteSite::PiCopy { pi: u, target: v }),
                        RewriteRule::Pivot if u < v && candidate[v] => {
                            push(RewriteSite::Pivot(u, v))
                        }
                        RewriteRule::PivotBoundary if !hub(u) && !hub(v) => {
                            push(RewriteSite::PivotBoundary {
                                interior: u,
                                boundary: v,
                            })
                        }
                        RewriteRule::PivotGadget if !hub(u) && !hub(v) => {
                            push(RewriteSite::PivotGadget {
                                pauli: u,
                                gadget: v,
                            })
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    out
}
