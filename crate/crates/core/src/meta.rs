//! Preferences over preorders induced by a peak.
//!
//! An agent whose preference is `R` ranks social preferences by their
//! position relative to `R` in a [`Space`]. The induced meta-preference
//! prefers `r′` to `r″` when `r′` lies on a shortest Hasse path from `R` to
//! `r″`; the metric one compares Hasse distances to `R`. Both are query
//! objects over the space's cached distance table.

use std::sync::Arc;

use crate::lattice::{Space, SpaceKind};
use crate::relation::TotalPreorder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetaKind {
    /// `r′ ⪰ r″` iff `d(p,r′) + d(r′,r″) = d(p,r″)`.
    Geodesic,
    /// `r′ ⪰ r″` iff `d(p,r′) ≤ d(p,r″)`.
    Metric,
}

/// A reflexive preference over the elements of a space, with a given peak.
#[derive(Debug, Clone)]
pub struct MetaPreference {
    space: Arc<Space>,
    peak: TotalPreorder,
    kind: MetaKind,
}

impl MetaPreference {
    pub fn peak(&self) -> TotalPreorder {
        self.peak
    }

    pub fn kind(&self) -> MetaKind {
        self.kind
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn weakly_prefers(&self, a: TotalPreorder, b: TotalPreorder) -> bool {
        let d = |x, y| self.space.distance(x, y);
        match self.kind {
            MetaKind::Geodesic => d(self.peak, a) + d(a, b) == d(self.peak, b),
            MetaKind::Metric => d(self.peak, a) <= d(self.peak, b),
        }
    }

    pub fn strictly_prefers(&self, a: TotalPreorder, b: TotalPreorder) -> bool {
        self.weakly_prefers(a, b) && !self.weakly_prefers(b, a)
    }

    pub fn indifferent(&self, a: TotalPreorder, b: TotalPreorder) -> bool {
        self.weakly_prefers(a, b) && self.weakly_prefers(b, a)
    }
}

/// The geodesic meta-preference with peak `peak`.
pub fn induced_meta(space: &Arc<Space>, peak: TotalPreorder) -> MetaPreference {
    MetaPreference {
        space: space.clone(),
        peak,
        kind: MetaKind::Geodesic,
    }
}

/// The distance-from-peak meta-preference with peak `peak`.
pub fn metric_meta(space: &Arc<Space>, peak: TotalPreorder) -> MetaPreference {
    MetaPreference {
        space: space.clone(),
        peak,
        kind: MetaKind::Metric,
    }
}

/// Betweenness used for single-peakedness: median-based in `R_B`, metric in
/// the sum (whose median is not everywhere defined).
pub fn between(space: &Space, x: TotalPreorder, z: TotalPreorder, y: TotalPreorder) -> bool {
    match space.kind() {
        SpaceKind::Preorders => space.between(x, z, y).unwrap_or_else(|| space.metric_between(x, z, y)),
        SpaceKind::Sum => space.metric_between(x, z, y),
    }
}

/// Why an order over a space is not single-peaked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeakViolation {
    /// Zero or several maxima.
    NoUniqueMaximum(Vec<TotalPreorder>),
    /// `z` lies between the peak and `y`, yet `y` is strictly preferred.
    FartherPreferred { y: TotalPreorder, z: TotalPreorder },
}

/// Checks unique maximum and "nothing beyond a point beats that point" for
/// an arbitrary reflexive order given by `ge`.
pub fn is_single_peaked(
    space: &Space,
    ge: &dyn Fn(TotalPreorder, TotalPreorder) -> bool,
) -> Result<TotalPreorder, PeakViolation> {
    let elems = space.elems();
    let maxima: Vec<TotalPreorder> = elems
        .iter()
        .copied()
        .filter(|&x| elems.iter().all(|&y| ge(x, y)))
        .collect();
    if maxima.len() != 1 {
        return Err(PeakViolation::NoUniqueMaximum(maxima));
    }
    let top = maxima[0];
    for &y in elems {
        for &z in elems {
            if between(space, top, z, y) && ge(y, z) && !ge(z, y) {
                return Err(PeakViolation::FartherPreferred { y, z });
            }
        }
    }
    Ok(top)
}

/// Whether every peak `x` and target `y` admit a member of the induced
/// domain whose upper contour at `y` is exactly the interval between `x`
/// and `y`. Returns the first pair where it does not.
pub fn induced_domain_richness(space: &Arc<Space>) -> Option<(TotalPreorder, TotalPreorder)> {
    let elems = space.elems();
    for &x in elems {
        let pref = induced_meta(space, x);
        for &y in elems {
            let upper: Vec<TotalPreorder> = elems.iter().copied().filter(|&z| pref.weakly_prefers(z, y)).collect();
            let interval: Vec<TotalPreorder> = elems.iter().copied().filter(|&z| between(space, x, z, y)).collect();
            if upper != interval {
                return Some((x, y));
            }
        }
    }
    None
}
