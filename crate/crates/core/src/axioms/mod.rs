//! Decision procedures for properties of social welfare functions.
//!
//! Every checker takes a [`Rule`] and a [`Quantifier`]. At desk scale
//! (`m = 3`, `n = 3`) the quantification domain is walked exhaustively over
//! the rule's memoized output table; otherwise profiles are drawn from a
//! seeded ChaCha stream and a clean run is reported as
//! [`Verdict::InconclusiveSampled`]. Universal properties fail on the first
//! counterexample in profile-index order; existential ones hold once every
//! required witness is found.

mod basic;
mod detect;
mod independence;
mod replay;
mod responsiveness;
mod strategy;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{Space, SpaceKind};
use crate::meta::MetaKind;
use crate::profiles::ProfileSpace;
use crate::relation::{Agenda, TotalPreorder};
use crate::report::{CheckReport, Quantifier, Scope, Verdict, Witness};
use crate::rules::Rule;
use crate::sampling::{self, Plan};

pub use basic::{check_an, check_bp, check_id, check_ls, check_nt, check_s, check_wnt, check_wp, check_ws};
pub use detect::{check_decisive, check_dictator, check_inverse_dictator, check_stalemate, DecisiveFamily};
pub use independence::{check_iia, check_iiap, check_mmi, check_representation, extract_family};
pub use replay::replay;
pub use responsiveness::{check_mdr, responsiveness, Responsiveness, ResponsivenessWitness};
pub use strategy::{check_meta_wp, check_sp, SpMetric};

/// Named properties accepted by [`check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    An,
    Id,
    Nt,
    Wnt,
    Wp,
    Bp,
    Ls,
    Ws,
    S,
    Iia,
    Iiap,
    Mdr,
    Sp(SpMetric),
    MetaWp(MetaKind),
    Mmi,
    Dictator,
    InverseDictator,
    Stalemate,
    Decisive,
    Representation,
    WellDefined,
    AmpP,
    AmpS,
}

impl Axiom {
    pub const ALL: [Axiom; 26] = [
        Axiom::An,
        Axiom::Id,
        Axiom::Nt,
        Axiom::Wnt,
        Axiom::Wp,
        Axiom::Bp,
        Axiom::Ls,
        Axiom::Ws,
        Axiom::S,
        Axiom::Iia,
        Axiom::Iiap,
        Axiom::Mdr,
        Axiom::Sp(SpMetric::PREORDERS),
        Axiom::Sp(SpMetric::PREORDERS_METRIC),
        Axiom::Sp(SpMetric::SUM),
        Axiom::Sp(SpMetric::SUM_METRIC),
        Axiom::MetaWp(MetaKind::Geodesic),
        Axiom::MetaWp(MetaKind::Metric),
        Axiom::Mmi,
        Axiom::Dictator,
        Axiom::InverseDictator,
        Axiom::Stalemate,
        Axiom::Decisive,
        Axiom::Representation,
        Axiom::WellDefined,
        Axiom::AmpP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::An => "an",
            Axiom::Id => "id",
            Axiom::Nt => "nt",
            Axiom::Wnt => "wnt",
            Axiom::Wp => "wp",
            Axiom::Bp => "bp",
            Axiom::Ls => "ls",
            Axiom::Ws => "ws",
            Axiom::S => "s",
            Axiom::Iia => "iia",
            Axiom::Iiap => "iiap",
            Axiom::Mdr => "mdr",
            Axiom::Sp(m) => m.name(),
            Axiom::MetaWp(MetaKind::Geodesic) => "meta_wp",
            Axiom::MetaWp(MetaKind::Metric) => "meta_wp_metric",
            Axiom::Mmi => "mmi",
            Axiom::Dictator => "dictator",
            Axiom::InverseDictator => "inverse_dictator",
            Axiom::Stalemate => "stalemate",
            Axiom::Decisive => "decisive",
            Axiom::Representation => "representation",
            Axiom::WellDefined => "well_defined",
            Axiom::AmpP => "amp_p",
            Axiom::AmpS => "amp_s",
        }
    }

    /// Every accepted name, including `amp_s`.
    pub fn names() -> Vec<&'static str> {
        let mut v: Vec<&'static str> = Axiom::ALL.iter().map(|a| a.name()).collect();
        v.push("amp_s");
        v
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Axiom> {
        let s = s.trim().to_ascii_lowercase();
        Axiom::ALL
            .iter()
            .copied()
            .chain([Axiom::AmpS])
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown axiom `{s}`; expected one of {}",
                    Axiom::names().join(", ")
                ))
            })
    }
}

/// Runs one named check. `amp_s` uses the restriction family; see
/// [`crate::agenda::check_amp_s`] for other schemes.
pub fn check(rule: &Rule, axiom: Axiom, q: Quantifier) -> Result<CheckReport> {
    match axiom {
        Axiom::An => check_an(rule, q),
        Axiom::Id => check_id(rule),
        Axiom::Nt => check_nt(rule, q),
        Axiom::Wnt => check_wnt(rule, q),
        Axiom::Wp => check_wp(rule, q),
        Axiom::Bp => check_bp(rule, q),
        Axiom::Ls => check_ls(rule, q),
        Axiom::Ws => check_ws(rule, q),
        Axiom::S => check_s(rule, q),
        Axiom::Iia => check_iia(rule, q),
        Axiom::Iiap => check_iiap(rule, q),
        Axiom::Mdr => check_mdr(rule, q),
        Axiom::Sp(metric) => check_sp(rule, metric, q),
        Axiom::MetaWp(kind) => check_meta_wp(rule, kind, q),
        Axiom::Mmi => check_mmi(rule, q),
        Axiom::Dictator => check_dictator(rule, q),
        Axiom::InverseDictator => check_inverse_dictator(rule, q),
        Axiom::Stalemate => check_stalemate(rule, q),
        Axiom::Decisive => check_decisive(rule, q),
        Axiom::Representation => check_representation(rule, q),
        Axiom::WellDefined => crate::rules::catalog::audit(rule, q),
        Axiom::AmpP => crate::agenda::check_amp_p_rule(rule, q),
        Axiom::AmpS => crate::agenda::check_amp_s(rule, &crate::agenda::Scheme::Restriction, q),
    }
}

/// Shared state of one check: the profile domain, the plan, and outputs.
pub(crate) struct Ctx<'a> {
    pub rule: &'a Rule,
    pub ps: ProfileSpace,
    pub space: Arc<Space>,
    pub plan: Plan,
    table: Option<Arc<Vec<u16>>>,
}

impl<'a> Ctx<'a> {
    pub fn new(rule: &'a Rule, q: Quantifier) -> Result<Ctx<'a>> {
        let ps = rule.profiles();
        let plan = sampling::plan(q, rule.agenda().len(), rule.agents(), ps.size())?;
        let table = match plan {
            Plan::Exhaustive { .. } => Some(rule.table()?),
            Plan::Sampled { .. } => None,
        };
        Ok(Ctx {
            rule,
            space: rule.space().clone(),
            ps,
            plan,
            table,
        })
    }

    pub fn n(&self) -> usize {
        self.rule.agents()
    }

    pub fn m(&self) -> usize {
        self.rule.agenda().len()
    }

    pub fn agenda(&self) -> Agenda {
        self.rule.agenda()
    }

    pub fn exhaustive(&self) -> Option<u64> {
        match self.plan {
            Plan::Exhaustive { size } => Some(size),
            Plan::Sampled { .. } => None,
        }
    }

    pub fn samples(&self) -> u64 {
        match self.plan {
            Plan::Exhaustive { size } => size,
            Plan::Sampled { samples, .. } => samples,
        }
    }

    pub fn rng_seed(&self) -> u64 {
        match self.plan {
            Plan::Sampled { seed, .. } => seed,
            Plan::Exhaustive { .. } => crate::report::DEFAULT_SEED,
        }
    }

    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        sampling::rng(self.rng_seed(), stream)
    }

    /// Output at a profile index (exhaustive plans only).
    pub fn out_idx(&self, idx: u64) -> usize {
        self.table.as_ref().expect("exhaustive plan")[idx as usize] as usize
    }

    /// Output index at a profile given by digits.
    pub fn out(&self, digits: &[usize]) -> Result<usize> {
        if let Some(t) = &self.table {
            return Ok(t[self.ps.encode(digits) as usize] as usize);
        }
        let r = self.rule.compute(&self.ps.prefs(digits))?;
        self.space
            .index_of(r)
            .ok_or_else(|| Error::Internal(format!("output {} off the agenda", self.space.render(r))))
    }

    pub fn elem(&self, i: usize) -> TotalPreorder {
        self.space.elem(i)
    }

    pub fn render(&self, r: TotalPreorder) -> String {
        self.space.render(r)
    }

    pub fn label(&self, x: usize) -> String {
        self.rule.ground().label(x).to_string()
    }

    pub fn pair(&self, x: usize, y: usize) -> [String; 2] {
        [self.label(x), self.label(y)]
    }

    /// Scope with the given number of examined cases.
    pub fn scope(&self, cases: u64) -> Scope {
        match self.plan {
            Plan::Exhaustive { .. } => Scope::exhaustive(self.m(), Some(self.n()), cases),
            Plan::Sampled { samples, seed } => Scope::sampled(self.m(), Some(self.n()), cases, seed, samples),
        }
    }

    /// Verdict of a universal property given whether a counterexample exists.
    pub fn universal(&self, failed: bool) -> Verdict {
        match (failed, self.plan) {
            (true, _) => Verdict::Fails,
            (false, Plan::Exhaustive { .. }) => Verdict::Holds,
            (false, Plan::Sampled { .. }) => Verdict::InconclusiveSampled,
        }
    }

    /// Verdict of an existential property given whether all witnesses were found.
    pub fn existential(&self, found: bool) -> Verdict {
        match (found, self.plan) {
            (true, _) => Verdict::Holds,
            (false, Plan::Exhaustive { .. }) => Verdict::Fails,
            (false, Plan::Sampled { .. }) => Verdict::InconclusiveSampled,
        }
    }

    pub fn report(&self, axiom: &str, cases: u64, verdict: Verdict) -> CheckReport {
        CheckReport::new(axiom, self.rule.name(), self.scope(cases), verdict)
    }

    /// Witness naming profiles by digits and outputs by element index.
    pub fn witness(&self, profiles: &[&[usize]], outputs: &[usize]) -> Witness {
        Witness {
            profiles: profiles.iter().map(|d| self.ps.render(d)).collect(),
            outputs: outputs.iter().map(|&o| self.render(self.elem(o))).collect(),
            ..Witness::default()
        }
    }
}

/// Cases examined, and the first failing profile with its payload.
pub(crate) type Scanned<T> = (u64, Option<(Vec<usize>, T)>);

/// Runs `test` on every profile (exhaustive) or on the sampled profiles and
/// returns the number of cases and the first failure in scan order.
pub(crate) fn scan<T, F>(ctx: &Ctx, test: F) -> Result<Scanned<T>>
where
    T: Send,
    F: Fn(&[usize]) -> Result<Option<T>> + Sync,
{
    match ctx.plan {
        Plan::Exhaustive { size } => {
            let found = (0..size).into_par_iter().find_map_first(|idx| {
                let d = ctx.ps.decode(idx);
                match test(&d) {
                    Ok(None) => None,
                    Ok(Some(t)) => Some(Ok((d, t))),
                    Err(e) => Some(Err(e)),
                }
            });
            Ok((size, found.transpose()?))
        }
        Plan::Sampled { samples, .. } => {
            let mut rng = ctx.rng(0);
            for _ in 0..samples {
                let d = ctx.ps.random(&mut rng);
                if let Some(t) = test(&d)? {
                    return Ok((samples, Some((d, t))));
                }
            }
            Ok((samples, None))
        }
    }
}

/// Calls `visit` with every profile and its output (exhaustive) or with the
/// sampled ones, in scan order.
pub(crate) fn each_profile(ctx: &Ctx, mut visit: impl FnMut(&[usize], usize)) -> Result<u64> {
    match ctx.plan {
        Plan::Exhaustive { size } => {
            let mut d = vec![0; ctx.n()];
            for idx in 0..size {
                ctx.ps.decode_into(idx, &mut d);
                visit(&d, ctx.out_idx(idx));
            }
            Ok(size)
        }
        Plan::Sampled { samples, .. } => {
            let mut rng = ctx.rng(0);
            for _ in 0..samples {
                let d = ctx.ps.random(&mut rng);
                let o = ctx.out(&d)?;
                visit(&d, o);
            }
            Ok(samples)
        }
    }
}

/// Coalition (bit `i` for agent `i + 1`) of agents whose relation satisfies `pred`.
pub(crate) fn coalition(rels: &[u64], digits: &[usize], pred: impl Fn(u64) -> bool) -> u32 {
    digits
        .iter()
        .enumerate()
        .filter(|&(_, &d)| pred(rels[d]))
        .fold(0, |c, (i, _)| c | 1 << i)
}

/// Lowest pair `(x, y)` of a relation's bits.
pub(crate) fn first_pair(bits: u64) -> (usize, usize) {
    let b = bits.trailing_zeros() as usize;
    (b / 8, b % 8)
}

/// Distinct ordered pairs of an agenda.
pub(crate) fn ordered_pairs(agenda: Agenda) -> Vec<(usize, usize)> {
    agenda
        .iter()
        .flat_map(|x| agenda.iter().filter(move |&y| y != x).map(move |y| (x, y)))
        .collect()
}

/// Relation bits of every element of a space.
pub(crate) fn relations(space: &Space) -> Vec<u64> {
    space.elems().iter().map(|r| r.relation().bits()).collect()
}

/// Whether the sum space is needed and available for a metric.
pub(crate) fn metric_space(rule: &Rule, kind: SpaceKind) -> Result<Arc<Space>> {
    match kind {
        SpaceKind::Preorders => Ok(rule.space().clone()),
        SpaceKind::Sum => Space::sum(rule.ground(), rule.agenda()),
    }
}
