//! Strategy-proofness and Pareto efficiency with respect to
//! meta-preferences over social preferences.
//!
//! Agent `i` with preference `R_i` ranks candidate social preferences by a
//! meta-preference peaked at `R_i`. Distances are Hasse distances either in
//! `R_A` itself or in the sum of all sub-agenda semilattices, in which `R_A`
//! sits as the top component.

use super::{metric_space, scan, Ctx};
use crate::error::Result;
use crate::lattice::SpaceKind;
use crate::meta::MetaKind;
use crate::report::{CheckReport, Quantifier, Witness};
use crate::rules::Rule;

/// Where distances are measured and how they rank outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpMetric {
    pub space: SpaceKind,
    pub kind: MetaKind,
}

impl SpMetric {
    pub const PREORDERS: SpMetric = SpMetric {
        space: SpaceKind::Preorders,
        kind: MetaKind::Geodesic,
    };
    pub const PREORDERS_METRIC: SpMetric = SpMetric {
        space: SpaceKind::Preorders,
        kind: MetaKind::Metric,
    };
    pub const SUM: SpMetric = SpMetric {
        space: SpaceKind::Sum,
        kind: MetaKind::Geodesic,
    };
    pub const SUM_METRIC: SpMetric = SpMetric {
        space: SpaceKind::Sum,
        kind: MetaKind::Metric,
    };

    pub fn name(self) -> &'static str {
        match (self.space, self.kind) {
            (SpaceKind::Preorders, MetaKind::Geodesic) => "sp",
            (SpaceKind::Preorders, MetaKind::Metric) => "sp_metric",
            (SpaceKind::Sum, MetaKind::Geodesic) => "sp_sum",
            (SpaceKind::Sum, MetaKind::Metric) => "sp_sum_metric",
        }
    }
}

/// Meta-preferences of every peak over `R_A`, as a distance table.
pub(crate) struct Metas {
    k: usize,
    dist: Vec<u32>,
    kind: MetaKind,
}

impl Metas {
    pub fn new(rule: &Rule, metric: SpMetric) -> Result<Metas> {
        let outer = metric_space(rule, metric.space)?;
        let elems = rule.space().elems();
        let k = elems.len();
        let mut dist = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                dist[a * k + b] = outer.distance(elems[a], elems[b]);
            }
        }
        Ok(Metas {
            k,
            dist,
            kind: metric.kind,
        })
    }

    fn d(&self, a: usize, b: usize) -> u32 {
        self.dist[a * self.k + b]
    }

    /// Whether `a` is weakly preferred to `b` under the meta-preference peaked at `p`.
    pub fn weakly(&self, p: usize, a: usize, b: usize) -> bool {
        match self.kind {
            MetaKind::Geodesic => self.d(p, a) + self.d(a, b) == self.d(p, b),
            MetaKind::Metric => self.d(p, a) <= self.d(p, b),
        }
    }

    pub fn strictly(&self, p: usize, a: usize, b: usize) -> bool {
        self.weakly(p, a, b) && !self.weakly(p, b, a)
    }
}

/// SP on the induced domain: no agent obtains an outcome it strictly
/// prefers by reporting another preorder.
pub fn check_sp(rule: &Rule, metric: SpMetric, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let metas = Metas::new(rule, metric)?;
    let k = ctx.space.len();
    let (cases, found) = scan(&ctx, |d| {
        let o = ctx.out(d)?;
        let mut dev = d.to_vec();
        for i in 0..d.len() {
            for y in (0..k).filter(|&y| y != d[i]) {
                dev[i] = y;
                let o2 = ctx.out(&dev)?;
                if o2 != o && metas.strictly(d[i], o2, o) {
                    return Ok(Some((i, dev.clone(), o, o2)));
                }
            }
            dev[i] = d[i];
        }
        Ok(None)
    })?;
    let mut report = ctx
        .report(metric.name(), cases, ctx.universal(found.is_some()))
        .detail("deviations_per_profile", (ctx.n() * (k - 1)) as u64);
    if let Some((d, (i, dev, o, o2))) = found {
        report = report.with_witness(Witness {
            agents: vec![i + 1],
            note: "the agent strictly prefers the outcome of its misreport".into(),
            ..ctx.witness(&[&d, &dev], &[o, o2])
        });
    }
    Ok(report)
}

/// Pareto efficiency over meta-preferences on `R_A`: no preorder is strictly
/// meta-preferred to the output by every agent.
pub fn check_meta_wp(rule: &Rule, kind: MetaKind, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let metric = SpMetric {
        space: SpaceKind::Preorders,
        kind,
    };
    let metas = Metas::new(rule, metric)?;
    let k = ctx.space.len();
    let (cases, found) = scan(&ctx, |d| {
        let o = ctx.out(d)?;
        Ok((0..k)
            .find(|&r| d.iter().all(|&p| metas.strictly(p, r, o)))
            .map(|r| (o, r)))
    })?;
    let name = match kind {
        MetaKind::Geodesic => "meta_wp",
        MetaKind::Metric => "meta_wp_metric",
    };
    let mut report = ctx.report(name, cases, ctx.universal(found.is_some()));
    if let Some((d, (o, r))) = found {
        report = report.with_witness(Witness {
            note: "every agent strictly prefers the second preorder to the output".into(),
            ..ctx.witness(&[&d], &[o, r])
        });
    }
    Ok(report)
}
