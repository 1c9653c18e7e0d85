//! Social welfare functions: maps from profiles of total preorders on an
//! agenda to a total preorder on the same agenda.

pub mod catalog;
pub mod filter;
pub mod spec;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{bipartitions, meet_on, Space};
use crate::profiles::ProfileSpace;
use crate::relation::{Agenda, GroundSet, Relation, TotalPreorder};

pub use filter::{Coalition, FilterFamily, OrderFilter};
pub use spec::RuleSpec;

/// Profiles up to this count get a memoized output table.
pub const TABLE_LIMIT: u64 = 3_000_000;

type CustomFn = dyn Fn(&[TotalPreorder]) -> TotalPreorder + Send + Sync;

#[derive(Clone)]
enum Kind {
    Filter(FilterFamily),
    Comajority,
    Dictator(usize),
    InverseDictator(usize),
    Constant(TotalPreorder),
    Borda,
    BordaProjective(usize),
    Remark3 {
        i: usize,
        rstar: TotalPreorder,
        /// `B ∖ B*`, where agents other than `i` are compared with `R*`.
        off: Agenda,
    },
    Unanimity,
    LexTop {
        x: usize,
        linear: Vec<TotalPreorder>,
    },
    PairThenThird,
    Custom(Arc<CustomFn>),
}

/// A named social welfare function for `n` agents on one agenda.
#[derive(Clone)]
pub struct Rule {
    name: String,
    spec: Option<RuleSpec>,
    ground: Arc<GroundSet>,
    space: Arc<Space>,
    n: usize,
    kind: Kind,
    table: Arc<OnceLock<Result<Arc<Vec<u16>>>>>,
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rule")
            .field("name", &self.name)
            .field("agenda", &self.ground.agenda_labels(self.agenda()))
            .field("n", &self.n)
            .finish()
    }
}

fn agent(i: usize, n: usize) -> Result<usize> {
    if i == 0 || i > n {
        return Err(Error::Parameter(format!("agent {i} is outside 1..={n}")));
    }
    Ok(i - 1)
}

impl Rule {
    /// Parses `text` and builds the rule on the whole ground set.
    pub fn parse(text: &str, ground: &GroundSet, n: usize) -> Result<Rule> {
        Rule::build(&text.parse()?, ground, ground.full(), n)
    }

    /// Builds `spec` on `agenda`. Parameters naming preorders are read on the
    /// whole ground set and restricted to `agenda`.
    pub fn build(spec: &RuleSpec, ground: &GroundSet, agenda: Agenda, n: usize) -> Result<Rule> {
        if agenda.is_empty() {
            return Err(Error::EmptyAgenda);
        }
        if !agenda.is_subset(ground.full()) {
            return Err(Error::AgendaOutsideGround);
        }
        let space = Space::preorders(ground, agenda)?;
        ProfileSpace::new(space.clone(), n)?;
        let whole = agenda == ground.full();
        let on_agenda = |text: &str| -> Result<TotalPreorder> {
            let r = ground
                .parse_preorder(text)
                .map_err(|e| Error::Parameter(e.to_string()))?;
            r.restrict(agenda)
        };
        let kind = match spec {
            RuleSpec::Comajority => Kind::Comajority,
            RuleSpec::Quota(qs) => {
                let k = bipartitions(agenda).len();
                let qs = match qs.len() {
                    1 => vec![qs[0]; k],
                    len if len == k => qs.clone(),
                    len => {
                        return Err(Error::Parameter(format!(
                            "quota list has {len} entries but the agenda has {k} bipartitions"
                        )))
                    }
                };
                Kind::Filter(FilterFamily::quota(agenda, n, qs)?)
            }
            RuleSpec::Dictator(i) => Kind::Dictator(agent(*i, n)?),
            RuleSpec::InverseDictator(i) => Kind::InverseDictator(agent(*i, n)?),
            RuleSpec::Stalemate => Kind::Constant(TotalPreorder::universal(agenda)?),
            RuleSpec::Constant(r) => Kind::Constant(on_agenda(r)?),
            RuleSpec::Borda => Kind::Borda,
            RuleSpec::BordaProjective(i) => Kind::BordaProjective(agent(*i, n)?),
            RuleSpec::Remark3 { i, rstar, bstar } => {
                let mut b = Agenda::EMPTY;
                for l in bstar {
                    let x = ground
                        .index_of(l)
                        .ok_or_else(|| Error::Parameter(format!("unknown label `{l}` in Bstar")))?;
                    b = b.with(x);
                }
                if whole && (b.is_empty() || b == agenda) {
                    return Err(Error::Parameter(
                        "Bstar must be a nonempty proper subset of the ground set".into(),
                    ));
                }
                Kind::Remark3 {
                    i: agent(*i, n)?,
                    rstar: on_agenda(rstar)?,
                    off: agenda.minus(b),
                }
            }
            RuleSpec::Unanimity => Kind::Unanimity,
            RuleSpec::LexTop(x) => {
                let x = ground
                    .index_of(x)
                    .ok_or_else(|| Error::Parameter(format!("unknown label `{x}`")))?;
                if !agenda.contains(x) {
                    return Err(Error::Parameter(format!("`{}` is not on the agenda", ground.label(x))));
                }
                let linear = space.elems().iter().copied().filter(|r| r.is_linear()).collect();
                Kind::LexTop { x, linear }
            }
            RuleSpec::PairThenThird => Kind::PairThenThird,
            RuleSpec::Collegial => {
                let size = (n + 2) / 2;
                let minimal: Vec<Coalition> = (0..1u32 << n).filter(|c| c.count_ones() as usize == size).collect();
                let filters = (0..bipartitions(agenda).len())
                    .map(|k| OrderFilter::principal(minimal[k % minimal.len()]))
                    .collect();
                Kind::Filter(FilterFamily::new(agenda, n, filters)?)
            }
            RuleSpec::Biased(r) => {
                let bar = on_agenda(r)?;
                let majority = OrderFilter::quota(n, n / 2 + 1);
                let filters = bipartitions(agenda)
                    .iter()
                    .map(|m| {
                        if m.refined_by(bar) {
                            OrderFilter::empty()
                        } else {
                            majority.clone()
                        }
                    })
                    .collect();
                Kind::Filter(FilterFamily::new(agenda, n, filters)?)
            }
        };
        Ok(Rule {
            name: spec.to_string(),
            spec: Some(spec.clone()),
            ground: Arc::new(ground.clone()),
            space,
            n,
            kind,
            table: Default::default(),
        })
    }

    /// The rule given by an explicit filter family.
    pub fn from_family(name: &str, ground: &GroundSet, family: FilterFamily) -> Result<Rule> {
        let space = Space::preorders(ground, family.agenda())?;
        ProfileSpace::new(space.clone(), family.agents())?;
        Ok(Rule {
            name: name.to_string(),
            spec: None,
            ground: Arc::new(ground.clone()),
            space,
            n: family.agents(),
            kind: Kind::Filter(family),
            table: Default::default(),
        })
    }

    /// An arbitrary rule given as a function; it must return a preorder on
    /// `agenda` for every profile.
    pub fn custom<F>(name: &str, ground: &GroundSet, agenda: Agenda, n: usize, f: F) -> Result<Rule>
    where
        F: Fn(&[TotalPreorder]) -> TotalPreorder + Send + Sync + 'static,
    {
        let space = Space::preorders(ground, agenda)?;
        ProfileSpace::new(space.clone(), n)?;
        Ok(Rule {
            name: name.to_string(),
            spec: None,
            ground: Arc::new(ground.clone()),
            space,
            n,
            kind: Kind::Custom(Arc::new(f)),
            table: Default::default(),
        })
    }

    /// The same construction rebuilt on a sub-agenda, for rules given by a spec.
    pub fn on_agenda(&self, agenda: Agenda) -> Result<Rule> {
        match &self.spec {
            Some(spec) => Rule::build(spec, &self.ground, agenda, self.n),
            None => Err(Error::Parameter(format!(
                "rule `{}` has no spec to rebuild on another agenda",
                self.name
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> Option<&RuleSpec> {
        self.spec.as_ref()
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn agenda(&self) -> Agenda {
        self.space.agenda()
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn agents(&self) -> usize {
        self.n
    }

    pub fn profiles(&self) -> ProfileSpace {
        ProfileSpace::new(self.space.clone(), self.n).expect("checked at construction")
    }

    pub fn family(&self) -> Option<&FilterFamily> {
        match &self.kind {
            Kind::Filter(f) => Some(f),
            _ => None,
        }
    }

    /// Evaluates the rule after checking the profile's shape.
    pub fn eval(&self, prefs: &[TotalPreorder]) -> Result<TotalPreorder> {
        if prefs.len() != self.n {
            return Err(Error::Profile(format!(
                "rule `{}` takes {} agents, profile has {}",
                self.name,
                self.n,
                prefs.len()
            )));
        }
        if let Some(r) = prefs.iter().find(|r| r.agenda() != self.agenda()) {
            return Err(Error::Profile(format!(
                "preorder {} is not on the rule's agenda",
                self.ground.render(*r)
            )));
        }
        if let Some(Ok(table)) = self.table.get() {
            let ps = self.profiles();
            let digits = ps.digits_of(prefs).expect("agenda checked");
            return Ok(self.space.elem(table[ps.encode(&digits) as usize] as usize));
        }
        self.compute(prefs)
    }

    /// Output indices for every profile in index order, computed once.
    pub fn table(&self) -> Result<Arc<Vec<u16>>> {
        self.table
            .get_or_init(|| {
                let ps = self.profiles();
                let size = ps.exact_size()?;
                if size > TABLE_LIMIT {
                    return Err(Error::DomainTooLarge(format!(
                        "{size} profiles exceed the table limit of {TABLE_LIMIT}"
                    )));
                }
                let out: Result<Vec<u16>> = (0..size)
                    .into_par_iter()
                    .map_init(
                        || vec![0usize; self.n],
                        |digits, idx| {
                            ps.decode_into(idx, digits);
                            let r = self.compute(&ps.prefs(digits))?;
                            Ok(self.space.index_of(r).ok_or_else(|| {
                                Error::Internal(format!("output {} off the agenda", self.space.render(r)))
                            })? as u16)
                        },
                    )
                    .collect();
                out.map(Arc::new)
            })
            .clone()
    }

    /// Evaluates without shape checks or memo lookup.
    pub(crate) fn compute(&self, prefs: &[TotalPreorder]) -> Result<TotalPreorder> {
        let agenda = self.agenda();
        match &self.kind {
            Kind::Filter(fam) => fam
                .try_eval(prefs)?
                .ok_or_else(|| Error::IllFormedFamily(self.render_profile(prefs))),
            Kind::Comajority => {
                let n = self.n;
                let joins: Vec<TotalPreorder> = (1u32..1 << n)
                    .filter(|s| 2 * s.count_ones() as usize > n)
                    .map(|s| {
                        (0..n)
                            .filter(|i| s >> i & 1 == 1)
                            .map(|i| prefs[i])
                            .reduce(|a, b| a.join(b).expect("same agenda"))
                            .expect("nonempty coalition")
                    })
                    .collect();
                meet_on(agenda, &joins)?.ok_or_else(|| Error::IllFormedFamily(self.render_profile(prefs)))
            }
            Kind::Dictator(i) => Ok(prefs[*i]),
            Kind::InverseDictator(i) => Ok(prefs[*i].reversed()),
            Kind::Constant(r) => Ok(*r),
            Kind::Borda => borda(agenda, prefs),
            Kind::BordaProjective(i) => {
                let b = borda(agenda, prefs)?;
                Ok(if prefs.contains(&b) { prefs[*i] } else { b })
            }
            Kind::Remark3 { i, rstar, off } => {
                let target = rstar.relation().restrict(*off);
                let hit = prefs
                    .iter()
                    .enumerate()
                    .any(|(j, r)| j != *i && r.relation().restrict(*off) == target);
                Ok(if hit { *rstar } else { prefs[*i] })
            }
            Kind::Unanimity => Ok(if prefs.iter().all(|r| *r == prefs[0]) {
                prefs[0]
            } else {
                TotalPreorder::universal(agenda)?
            }),
            Kind::LexTop { x, linear } => {
                let common = unanimous_strict(agenda, prefs);
                let x_undominated = agenda.iter().all(|y| !common.contains(y, *x));
                linear
                    .iter()
                    .copied()
                    .find(|l| {
                        common.is_subset(l.relation())
                            && (!x_undominated || agenda.iter().all(|y| l.weakly_prefers(*x, y)))
                    })
                    .ok_or_else(|| Error::Internal("no linear extension of a strict partial order".into()))
            }
            Kind::PairThenThird => {
                let literal = pair_then_third_literal(prefs);
                TotalPreorder::from_relation(literal.transitive_closure())
                    .ok_or_else(|| Error::Internal("closure of a total relation is not total".into()))
            }
            Kind::Custom(f) => Ok(f(prefs)),
        }
    }

    fn render_profile(&self, prefs: &[TotalPreorder]) -> String {
        prefs
            .iter()
            .map(|r| format!("\"{}\"", self.ground.render(*r)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Borda count with scores `#{z : x ≻_i z}` summed over agents; equal totals
/// are socially indifferent.
pub fn borda(agenda: Agenda, prefs: &[TotalPreorder]) -> Result<TotalPreorder> {
    TotalPreorder::from_scores(agenda, |x| {
        prefs
            .iter()
            .map(|r| agenda.iter().filter(|&z| r.strictly_prefers(x, z)).count() as i64)
            .sum()
    })
}

/// Pairs strictly preferred by every agent.
pub fn unanimous_strict(agenda: Agenda, prefs: &[TotalPreorder]) -> Relation {
    prefs
        .iter()
        .map(|r| r.relation().strict_part())
        .fold(Relation::universal(agenda), Relation::intersection)
}

/// `x ⪰ y` iff agents 1 and 2 both weakly prefer `x`, or agent 3 does.
/// Total but not always transitive.
pub fn pair_then_third_literal(prefs: &[TotalPreorder]) -> Relation {
    let r = |i: usize| prefs[i].relation();
    r(0).intersection(r(1)).union(r(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> GroundSet {
        GroundSet::letters(3).unwrap()
    }

    fn eval(rule: &str, prof: [&str; 3]) -> String {
        let g = setup();
        let r = Rule::parse(rule, &g, 3).unwrap();
        let prefs: Vec<_> = prof.iter().map(|t| g.parse_preorder(t).unwrap()).collect();
        g.render(r.eval(&prefs).unwrap())
    }

    #[test]
    fn comajority_examples() {
        assert_eq!(eval("comajority", ["a|b|c", "b|c|a", "c|a|b"]), "a b c");
        assert_eq!(eval("comajority", ["a|b|c", "a|b|c", "c|b|a"]), "a|b|c");
        assert_eq!(eval("comajority", ["b|a c"; 3]), "b|a c");
    }

    #[test]
    fn borda_counts_strictly_worse() {
        // a: 2+2+1, b: 1+1+2, c: 0
        assert_eq!(eval("borda", ["a|b|c", "a|b|c", "b|a|c"]), "a|b|c");
        // every alternative scores 2 + 1 + 0
        assert_eq!(eval("borda", ["a|b|c", "b|c|a", "c|a|b"]), "a b c");
        assert_eq!(eval("borda", ["a b|c", "a b|c", "a b|c"]), "a b|c");
    }

    #[test]
    fn dictators_and_constants() {
        assert_eq!(eval("dictator:i=2", ["a|b|c", "c|b|a", "a b c"]), "c|b|a");
        assert_eq!(eval("inverse:i=2", ["a|b|c", "c|b|a", "a b c"]), "a|b|c");
        assert_eq!(eval("stalemate", ["a|b|c"; 3]), "a b c");
        assert_eq!(eval("constant:R=b|a c", ["a|b|c"; 3]), "b|a c");
    }

    #[test]
    fn unanimity_and_lextop() {
        assert_eq!(eval("un", ["a|b|c"; 3]), "a|b|c");
        assert_eq!(eval("un", ["a|b|c", "a|b|c", "a|c|b"]), "a b c");
        // no common strict pairs: L-minimum linear order with a on top
        assert_eq!(eval("lextop:x=a", ["a|b|c", "c|b|a", "b|a c"]), "a|b|c");
        // c over a unanimously: a cannot be on top
        assert_eq!(eval("lextop:x=a", ["c|a|b", "c|b|a", "c|a b"]), "c|a|b");
        assert_eq!(eval("lextop:x=b", ["a|b|c"; 3]), "a|b|c");
    }

    #[test]
    fn remark3_switches_on_other_agents() {
        let rule = "remark3:i=1,Rstar=a|b|c,Bstar=a";
        // agent 2 agrees with R* on {b,c}
        assert_eq!(eval(rule, ["c|b|a", "b|c|a", "a b c"]), "a|b|c");
        // nobody else agrees on {b,c}: agent 1 decides
        assert_eq!(eval(rule, ["c|b|a", "c|b|a", "b c|a"]), "c|b|a");
    }

    #[test]
    fn remark3_rejects_trivial_bstar() {
        let g = setup();
        assert!(Rule::parse("remark3:i=1,Rstar=a|b|c,Bstar=a,b,c", &g, 3).is_err());
        assert!(Rule::parse("remark3:i=4,Rstar=a|b|c,Bstar=a", &g, 3).is_err());
    }

    #[test]
    fn pair_then_third_can_be_intransitive() {
        let g = setup();
        let prefs: Vec<_> = ["a|b|c", "b|c|a", "c|a|b"]
            .iter()
            .map(|t| g.parse_preorder(t).unwrap())
            .collect();
        let lit = pair_then_third_literal(&prefs);
        assert!(lit.is_total());
        assert!(!lit.is_transitive());
        assert_eq!(eval("fstar", ["a|b|c", "b|c|a", "c|a|b"]), "a b c");
        assert_eq!(eval("fstar", ["a|b|c", "a|b|c", "c|b|a"]), "a b c");
        assert_eq!(eval("fstar", ["a|b|c", "a|c|b", "a|b|c"]), "a|b|c");
    }

    #[test]
    fn shape_errors() {
        let g = setup();
        let r = Rule::parse("comajority", &g, 3).unwrap();
        let p = g.parse_preorder("a|b|c").unwrap();
        assert!(r.eval(&[p, p]).is_err());
        let partial = g.parse_partial("a|b").unwrap();
        assert!(r.eval(&[p, p, partial]).is_err());
    }

    #[test]
    fn table_matches_direct_evaluation() {
        let g = setup();
        let r = Rule::parse("borda", &g, 3).unwrap();
        let table = r.table().unwrap();
        let ps = r.profiles();
        for idx in (0..2197).step_by(97) {
            let prefs = ps.prefs(&ps.decode(idx));
            assert_eq!(r.space().elem(table[idx as usize] as usize), r.compute(&prefs).unwrap());
            assert_eq!(r.eval(&prefs).unwrap(), r.compute(&prefs).unwrap());
        }
    }

    #[test]
    fn sub_agenda_rebuild() {
        let g = setup();
        let r = Rule::parse("constant:R=a|b|c", &g, 3).unwrap();
        let ac = g.parse_agenda("a,c").unwrap();
        let sub = r.on_agenda(ac).unwrap();
        let p = g.parse_partial("c|a").unwrap();
        assert_eq!(g.render(sub.eval(&[p; 3]).unwrap()), "a|c");
    }
}
