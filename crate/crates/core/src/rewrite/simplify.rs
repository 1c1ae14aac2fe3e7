use std::fmt;

use crate::phase::Phase;
use crate::zx::{EdgeType, SpiderKind, ZxDiagram};

use super::{apply_rule, check_site, find_sites, phase_gadgets, RewriteRule, RewriteSite};

/// One fired rewrite and the diagram size right after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub site: RewriteSite,
    pub spiders_after: usize,
    pub t_after: usize,
}

impl TraceRecord {
    pub fn rule(&self) -> RewriteRule {
        self.site.rule()
    }
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} spiders={} t={}",
            self.site, self.spiders_after, self.t_after
        )
    }
}

struct Run<'a> {
    trace: Option<&'a mut Vec<TraceRecord>>,
}

impl Run<'_> {
    /// Fires `site` if it still matches.
    fn fire(&mut self, d: &mut ZxDiagram, site: RewriteSite) -> bool {
        if check_site(d, &site).is_err() {
            return false;
        }
        apply_rule(d, &site).expect("site was just checked");
        if let Some(t) = self.trace.as_deref_mut() {
            t.push(TraceRecord {
                site,
                spiders_after: d.spider_count(),
                t_after: d.t_count(),
            });
        }
        true
    }

    /// Fires every site of `rule` found in one snapshot, rechecking each
    /// against the current diagram. Returns how many fired.
    fn sweep(&mut self, d: &mut ZxDiagram, rule: RewriteRule) -> usize {
        let sites = find_sites(d, rule);
        let mut fired = 0;
        for site in sites {
            let still_eligible = match site {
                RewriteSite::Pivot(u, v)
                | RewriteSite::PivotBoundary {
                    interior: u,
                    boundary: v,
                }
                | RewriteSite::PivotGadget {
                    pauli: u,
                    gadget: v,
                } => d.contains(u) && d.contains(v) && !hub(d, u) && !hub(d, v),
                _ => true,
            };
            if still_eligible && self.fire(d, site) {
                fired += 1;
            }
        }
        fired
    }

    /// Identity removal, fusion and Hopf until none applies.
    fn cleanup(&mut self, d: &mut ZxDiagram) -> usize {
        let mut total = 0;
        loop {
            // a π hub blocks identity removal on one-spider supports
            for g in phase_gadgets(d) {
                super::rules::normalize_hub(d, g);
            }
            let fired = self.sweep(d, RewriteRule::IdentityRemoval)
                + self.sweep(d, RewriteRule::Fusion)
                + self.sweep(d, RewriteRule::Hopf);
            if fired == 0 {
                return total;
            }
            total += fired;
        }
    }

    fn interior_clifford(&mut self, d: &mut ZxDiagram) -> usize {
        let mut total = 0;
        loop {
            total += self.cleanup(d);
            let fired = self.sweep(d, RewriteRule::LocalComplement) + self.sweep(d, RewriteRule::Pivot);
            if fired == 0 {
                return total;
            }
            total += fired;
        }
    }

    fn full(&mut self, d: &mut ZxDiagram) -> usize {
        let ids: Vec<_> = d.spider_ids().collect();
        for v in ids {
            if d.kind(v) == SpiderKind::X {
                d.color_change(v);
            }
            if d.kind(v) == SpiderKind::Z {
                d.drop_self_loops(v);
            }
        }
        let mut total = 0;
        loop {
            total += self.interior_clifford(d);
            let fired = self.sweep(d, RewriteRule::PivotGadget)
                + self.sweep(d, RewriteRule::PivotBoundary)
                + self.sweep(d, RewriteRule::GadgetFusion);
            if fired == 0 {
                break;
            }
            total += fired;
        }
        remove_scalars(d);
        total
    }
}

fn hub(d: &ZxDiagram, v: usize) -> bool {
    super::is_gadget_hub(d, v)
}

/// Drops disconnected scalar pieces that are provably nonzero: lone
/// spiders with phase other than π and Hadamard-joined pairs of Pauli or
/// Clifford spiders with a nonzero closed-form value.
fn remove_scalars(d: &mut ZxDiagram) {
    let ids: Vec<_> = d.spider_ids().collect();
    for v in ids {
        if !d.contains(v) || d.is_boundary(v) {
            continue;
        }
        match d.degree(v) {
            0 if d.phase(v) != Phase::pi() => d.remove_spider(v),
            1 => {
                let Some(u) = d.neighbors(v).next() else { continue };
                if d.is_boundary(u) || d.degree(u) != 1 || d.edge_type(u, v) != Some(EdgeType::Hadamard) {
                    continue;
                }
                // Σ e^{iαx + iβy} (-1)^{xy}
                let (a, b) = (d.phase(u).to_radians(), d.phase(v).to_radians());
                let c = |t: f64| num_complex::Complex64::from_polar(1.0, t);
                let s = c(0.0) + c(a) + c(b) - c(a + b);
                if s.norm() > 1e-9 {
                    d.remove_spider(u);
                    d.remove_spider(v);
                }
            }
            _ => {}
        }
    }
}

/// Simplifies a diagram to graph-like normal form, removing interior
/// Clifford spiders and fusing phase gadgets. Returns the number of rewrites.
pub fn full_simplify(d: &mut ZxDiagram) -> usize {
    Run { trace: None }.full(d)
}

/// [`full_simplify`], appending one record per fired rewrite to `trace`.
pub fn full_simplify_traced(d: &mut ZxDiagram, trace: &mut Vec<TraceRecord>) -> usize {
    Run { trace: Some(trace) }.full(d)
}

/// Only the Clifford part of the strategy: cleanup, local complementation
/// and interior pivots, on a diagram that is already graph-like.
pub fn interior_clifford_simplify(d: &mut ZxDiagram) -> usize {
    Run { trace: None }.interior_clifford(d)
}
