//! Order filters of coalitions and the rules they parameterize.
//!
//! A coalition is a bitmask over agents (bit `i` is agent `i + 1`). A family
//! assigns one filter to each ordered bipartition of the agenda; at a profile
//! it selects the bipartitions whose refining coalition belongs to the filter
//! and returns the meet of the selection.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{bipartitions, meet_on, Bipartition};
use crate::relation::{Agenda, TotalPreorder};

pub type Coalition = u32;

/// 1-based member list of a coalition.
pub fn members(c: Coalition) -> Vec<usize> {
    (0..32).filter(|i| c >> i & 1 == 1).map(|i| i + 1).collect()
}

/// An upward-closed family of coalitions, stored by its minimal elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderFilter {
    basis: Vec<Coalition>,
}

impl fmt::Debug for OrderFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self
            .basis
            .iter()
            .map(|&c| {
                let m: Vec<String> = members(c).iter().map(|i| i.to_string()).collect();
                format!("{{{}}}", m.join(","))
            })
            .collect();
        write!(f, "↑[{}]", sets.join(" "))
    }
}

impl OrderFilter {
    /// The filter generated by `generators`; non-minimal generators are dropped.
    pub fn generated(generators: impl IntoIterator<Item = Coalition>) -> OrderFilter {
        let mut gens: Vec<Coalition> = generators.into_iter().collect();
        gens.sort_unstable();
        gens.dedup();
        let basis = gens
            .iter()
            .copied()
            .filter(|&g| !gens.iter().any(|&h| h != g && h & !g == 0))
            .collect();
        OrderFilter { basis }
    }

    /// The empty filter.
    pub fn empty() -> OrderFilter {
        OrderFilter { basis: Vec::new() }
    }

    /// All supersets of `c`.
    pub fn principal(c: Coalition) -> OrderFilter {
        OrderFilter { basis: vec![c] }
    }

    /// Coalitions of at least `q` of the `n` agents.
    pub fn quota(n: usize, q: usize) -> OrderFilter {
        if q > n {
            return OrderFilter::empty();
        }
        OrderFilter::generated((0..1u32 << n).filter(|c| c.count_ones() as usize == q))
    }

    pub fn basis(&self) -> &[Coalition] {
        &self.basis
    }

    pub fn contains(&self, c: Coalition) -> bool {
        self.basis.iter().any(|&b| b & !c == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Nonempty and not containing the empty coalition.
    pub fn is_nontrivial_proper(&self) -> bool {
        !self.basis.is_empty() && !self.contains(0)
    }

    /// Every two members intersect.
    pub fn is_transversal(&self) -> bool {
        self.basis.iter().all(|&s| self.basis.iter().all(|&t| s & t != 0))
    }
}

/// One order filter per ordered bipartition of an agenda.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterFamily {
    agenda: Agenda,
    n: usize,
    issues: Vec<Bipartition>,
    filters: Vec<OrderFilter>,
    quotas: Option<Vec<usize>>,
}

impl FilterFamily {
    /// `filters` is aligned with [`bipartitions`]`(agenda)`.
    pub fn new(agenda: Agenda, n: usize, filters: Vec<OrderFilter>) -> Result<FilterFamily> {
        let issues = bipartitions(agenda);
        if filters.len() != issues.len() {
            return Err(Error::Parameter(format!(
                "expected {} filters, one per bipartition, got {}",
                issues.len(),
                filters.len()
            )));
        }
        let all = if n >= 32 { u32::MAX } else { (1u32 << n) - 1 };
        if filters.iter().flat_map(|f| f.basis()).any(|&c| c & !all != 0) {
            return Err(Error::Parameter(format!("coalition mentions an agent beyond {n}")));
        }
        Ok(FilterFamily {
            agenda,
            n,
            issues,
            filters,
            quotas: None,
        })
    }

    /// Threshold filters `{T : |T| ≥ q_m}`, one quota per bipartition.
    pub fn quota(agenda: Agenda, n: usize, quotas: Vec<usize>) -> Result<FilterFamily> {
        if let Some(q) = quotas.iter().find(|&&q| q > n) {
            return Err(Error::Parameter(format!("quota {q} exceeds the {n} agents")));
        }
        let filters = quotas.iter().map(|&q| OrderFilter::quota(n, q)).collect();
        let mut fam = FilterFamily::new(agenda, n, filters)?;
        fam.quotas = Some(quotas);
        Ok(fam)
    }

    pub fn uniform_quota(agenda: Agenda, n: usize, q: usize) -> Result<FilterFamily> {
        FilterFamily::quota(agenda, n, vec![q; bipartitions(agenda).len()])
    }

    /// Every filter empty: the constant universal-indifference rule.
    pub fn stalemate(agenda: Agenda, n: usize) -> FilterFamily {
        let k = bipartitions(agenda).len();
        FilterFamily::new(agenda, n, vec![OrderFilter::empty(); k]).expect("aligned")
    }

    pub fn agenda(&self) -> Agenda {
        self.agenda
    }

    pub fn agents(&self) -> usize {
        self.n
    }

    pub fn issues(&self) -> &[Bipartition] {
        &self.issues
    }

    pub fn filters(&self) -> &[OrderFilter] {
        &self.filters
    }

    pub fn quotas(&self) -> Option<&[usize]> {
        self.quotas.as_deref()
    }

    /// A quota family with every quota positive.
    pub fn is_positive_quota(&self) -> bool {
        self.quotas.as_ref().is_some_and(|q| q.iter().all(|&q| q > 0))
    }

    /// Filters agree on every two bipartitions whose meet exists.
    pub fn is_weakly_neutral(&self) -> bool {
        let k = self.issues.len();
        (0..k).all(|a| {
            (0..k).all(|b| {
                let both = self.issues[a]
                    .preorder()
                    .relation()
                    .intersection(self.issues[b].preorder().relation());
                TotalPreorder::from_relation(both).is_none() || self.filters[a] == self.filters[b]
            })
        })
    }

    pub fn all_nontrivial_proper(&self) -> bool {
        self.filters.iter().all(OrderFilter::is_nontrivial_proper)
    }

    /// Transversal filters whose minimal coalitions jointly cover every agent.
    pub fn is_inclusive_quorum(&self) -> bool {
        let all = (1u32 << self.n) - 1;
        let cover = self.filters.iter().flat_map(|f| f.basis()).fold(0, |acc, &c| acc | c);
        self.filters.iter().all(OrderFilter::is_transversal) && cover == all
    }

    /// Coalition `{i : R_i ⊆ m}` for each bipartition `m`.
    pub fn coalitions(&self, prefs: &[TotalPreorder]) -> Vec<Coalition> {
        self.issues
            .iter()
            .map(|m| {
                let rel = m.preorder().relation();
                prefs
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r.relation().is_subset(rel))
                    .fold(0, |acc, (i, _)| acc | 1 << i)
            })
            .collect()
    }

    /// Bipartitions selected at a profile.
    pub fn selected(&self, prefs: &[TotalPreorder]) -> Vec<TotalPreorder> {
        self.coalitions(prefs)
            .into_iter()
            .zip(&self.issues)
            .zip(&self.filters)
            .filter(|((c, _), f)| f.contains(*c))
            .map(|((_, m), _)| m.preorder())
            .collect()
    }

    /// Meet of the selected bipartitions, or `None` when it does not exist.
    pub fn try_eval(&self, prefs: &[TotalPreorder]) -> Result<Option<TotalPreorder>> {
        meet_on(self.agenda, &self.selected(prefs))
    }
}
