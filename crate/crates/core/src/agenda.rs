//! Agenda formation and agenda manipulation.
//!
//! Agents propose agendas; an agenda formation rule turns the proposals into
//! the agenda on which preferences are aggregated. In the parallel protocol
//! (PAFE) proposals and preferences are submitted together; in the
//! sequential one (SAFE) the agenda is fixed first and a rule for that agenda
//! is then applied to the restricted profile.
//!
//! Both manipulation-proofness checks compare, for each agent, two social
//! preferences restricted to the same agenda `C`, using the geodesic
//! meta-preference peaked at the agent's preorder on the sum of all
//! sub-agenda semilattices. The comparison must be symmetric: either each
//! restriction is weakly meta-preferred to the other or neither is.
//!
//! Agenda pairs are quantified as pairs `C ⊆ D` of achievable agendas. The
//! union rule reaches every nonempty `C` from identical proposals, and the
//! definitions read agendas only through `C` and `D`.

use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use crate::axioms::{check_iia, scan, Ctx};
use crate::error::{Error, Result};
use crate::lattice::Space;
use crate::relation::{Agenda, GroundSet, TotalPreorder};
use crate::report::{CheckReport, Quantifier, Scope, Verdict, Witness};
use crate::rules::{Rule, RuleSpec};

/// Maps proposal profiles to an agenda.
pub trait AgendaRule: Send + Sync {
    fn name(&self) -> &str;
    fn eval(&self, proposals: &[Agenda]) -> Agenda;
}

/// The agenda is the union of all proposals.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnionRule;

impl AgendaRule for UnionRule {
    fn name(&self) -> &str {
        "union"
    }

    fn eval(&self, proposals: &[Agenda]) -> Agenda {
        proposals.iter().fold(Agenda::EMPTY, |a, b| a.union(*b))
    }
}

/// Whether every nonempty `C ⊆ A` is the outcome of some proposal profile,
/// by search over all proposal profiles.
pub fn check_sovereignty(rule: &dyn AgendaRule, ground: &GroundSet, n: usize) -> Result<CheckReport> {
    let subsets: Vec<Agenda> = ground.full().nonempty_subsets().collect();
    let k = subsets.len() as u64;
    let size = k
        .checked_pow(n as u32)
        .filter(|&s| s <= crate::sampling::EXHAUSTIVE_CAP)
        .ok_or_else(|| Error::DomainTooLarge(format!("{k}^{n} proposal profiles")))?;
    let mut reached = vec![false; 256];
    let mut props = vec![Agenda::EMPTY; n];
    for idx in 0..size {
        let mut r = idx;
        for p in props.iter_mut().rev() {
            *p = subsets[(r % k) as usize];
            r /= k;
        }
        reached[rule.eval(&props).bits() as usize] = true;
    }
    let missing: Vec<Vec<String>> = subsets
        .iter()
        .filter(|c| !reached[c.bits() as usize])
        .map(|c| ground.agenda_labels(*c))
        .collect();
    let verdict = if missing.is_empty() {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    let mut report = CheckReport::new(
        "sovereignty",
        rule.name(),
        Scope::exhaustive(ground.len(), Some(n), size),
        verdict,
    );
    if !missing.is_empty() {
        report = report.with_witness(Witness {
            agendas: missing,
            note: "no proposal profile yields these agendas".into(),
            ..Witness::default()
        });
    }
    Ok(report)
}

/// A parallel agenda-formation-enriched rule: proposals and preferences in,
/// agenda and social preference on the whole agenda out.
pub trait Pafe: Send + Sync {
    fn name(&self) -> &str;
    fn eval(&self, proposals: &[Agenda], prefs: &[TotalPreorder]) -> Result<(Agenda, TotalPreorder)>;
}

/// The product of an agenda rule and a social welfare function, each ignoring
/// the other's input.
#[derive(Clone)]
pub struct Decomposable {
    name: String,
    agenda: Arc<dyn AgendaRule>,
    rule: Rule,
}

impl Decomposable {
    pub fn new(agenda: Arc<dyn AgendaRule>, rule: Rule) -> Decomposable {
        Decomposable {
            name: format!("{}×{}", agenda.name(), rule.name()),
            agenda,
            rule,
        }
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }
}

impl Pafe for Decomposable {
    fn name(&self) -> &str {
        &self.name
    }

    fn eval(&self, proposals: &[Agenda], prefs: &[TotalPreorder]) -> Result<(Agenda, TotalPreorder)> {
        Ok((self.agenda.eval(proposals), self.rule.eval(prefs)?))
    }
}

type PafeFn = dyn Fn(&[Agenda], &[TotalPreorder]) -> Result<(Agenda, TotalPreorder)> + Send + Sync;

/// A PAFE given by a closure, for rules whose parts interact.
pub struct FnPafe {
    name: String,
    f: Box<PafeFn>,
}

impl FnPafe {
    pub fn new<F>(name: &str, f: F) -> FnPafe
    where
        F: Fn(&[Agenda], &[TotalPreorder]) -> Result<(Agenda, TotalPreorder)> + Send + Sync + 'static,
    {
        FnPafe {
            name: name.to_string(),
            f: Box::new(f),
        }
    }
}

impl Pafe for FnPafe {
    fn name(&self) -> &str {
        &self.name
    }

    fn eval(&self, proposals: &[Agenda], prefs: &[TotalPreorder]) -> Result<(Agenda, TotalPreorder)> {
        (self.f)(proposals, prefs)
    }
}

/// Geodesic meta-preferences on the sum semilattice over an agenda.
struct SumMeta {
    space: Arc<Space>,
}

impl SumMeta {
    fn new(ground: &GroundSet, agenda: Agenda) -> Result<SumMeta> {
        Ok(SumMeta {
            space: Space::sum(ground, agenda)?,
        })
    }

    fn weakly(&self, peak: TotalPreorder, a: TotalPreorder, b: TotalPreorder) -> bool {
        let d = |x, y| self.space.distance(x, y);
        d(peak, a) + d(a, b) == d(peak, b)
    }

    /// Symmetric comparability of `a` and `b` from `peak`.
    fn symmetric(&self, peak: TotalPreorder, a: TotalPreorder, b: TotalPreorder) -> bool {
        self.weakly(peak, a, b) == self.weakly(peak, b, a)
    }
}

fn labels(ground: &GroundSet, a: Agenda) -> Vec<String> {
    ground.agenda_labels(a)
}

/// Pairs of proposal profiles: every `C ⊆ D` through identical proposals,
/// then `extra` seeded random pairs.
fn proposal_pairs(agenda: Agenda, n: usize, extra: usize, seed: u64) -> Vec<(Vec<Agenda>, Vec<Agenda>)> {
    let mut out = Vec::new();
    for d in agenda.nonempty_subsets() {
        for c in d.nonempty_subsets() {
            out.push((vec![c; n], vec![d; n]));
        }
    }
    let subsets: Vec<Agenda> = agenda.nonempty_subsets().collect();
    let mut rng = crate::sampling::rng(seed, 10);
    for _ in 0..extra {
        let mut pick = || -> Vec<Agenda> { (0..n).map(|_| subsets[rng.gen_range(0..subsets.len())]).collect() };
        let b = pick();
        let b2 = pick();
        out.push((b, b2));
    }
    out
}

/// Number of seeded random proposal pairs tried by AMP_P, besides the
/// identical-proposal pairs.
pub const RANDOM_PROPOSAL_PAIRS: usize = 32;

/// AMP_P for a PAFE over the profile domain of `rule` (which supplies the
/// agenda, electorate and quantifier plan; its outputs are not used).
pub fn check_amp_p(pafe: &dyn Pafe, rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let ground = rule.ground();
    let meta = SumMeta::new(ground, rule.agenda())?;
    let pairs = proposal_pairs(rule.agenda(), rule.agents(), RANDOM_PROPOSAL_PAIRS, ctx.rng_seed());
    let (cases, found) = scan(&ctx, |d| {
        let prefs = ctx.ps.prefs(d);
        for (b, b2) in &pairs {
            let (c, x) = pafe.eval(b, &prefs)?;
            let (dd, y) = pafe.eval(b2, &prefs)?;
            if !c.is_subset(dd) {
                continue;
            }
            let (xc, yc) = (x.restrict(c)?, y.restrict(c)?);
            if let Some(i) = prefs.iter().position(|&p| !meta.symmetric(p, xc, yc)) {
                return Ok(Some((i, b.clone(), b2.clone(), c, dd, xc, yc)));
            }
        }
        Ok(None)
    })?;
    let mut report = CheckReport::new("amp_p", pafe.name(), ctx.scope(cases), ctx.universal(found.is_some()))
        .detail("proposal_pairs", pairs.len() as u64)
        .detail("random_proposal_pairs", RANDOM_PROPOSAL_PAIRS as u64);
    if let Some((d, (i, b, b2, c, dd, xc, yc))) = found {
        let props = |v: &[Agenda]| -> Value { json!(v.iter().map(|a| labels(ground, *a)).collect::<Vec<_>>()) };
        report = report
            .detail("proposals", json!([props(&b), props(&b2)]))
            .with_witness(Witness {
                profiles: vec![ctx.ps.render(&d)],
                agents: vec![i + 1],
                agendas: vec![labels(ground, c), labels(ground, dd)],
                outputs: vec![ground.render(xc), ground.render(yc)],
                note: "the agent ranks one restriction strictly above the other".into(),
                ..Witness::default()
            });
    }
    Ok(report)
}

/// AMP_P for the union agenda rule paired with `rule`.
pub fn check_amp_p_rule(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    check_amp_p(&Decomposable::new(Arc::new(UnionRule), rule.clone()), rule, q)
}

/// How a sequential protocol picks the rule applied on each agenda `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scheme {
    /// `f_C(R|C) = f(R)|C`, a function of `R|C` exactly when `f` is IIA;
    /// otherwise the family is undefined.
    Restriction,
    /// `f(R)|C` read at the very profile `R` being restricted, without
    /// asking whether it depends only on `R|C`.
    AtProfile,
    /// The rule's own spec rebuilt on each agenda.
    PerAgenda,
    /// An explicit spec built on each agenda.
    Spec(RuleSpec),
}

impl Scheme {
    pub fn parse(text: &str) -> Result<Scheme> {
        Ok(match text.trim() {
            "restriction" => Scheme::Restriction,
            "at-profile" => Scheme::AtProfile,
            "per-agenda" => Scheme::PerAgenda,
            other => Scheme::Spec(other.parse()?),
        })
    }

    pub fn name(&self) -> String {
        match self {
            Scheme::Restriction => "restriction".into(),
            Scheme::AtProfile => "at-profile".into(),
            Scheme::PerAgenda => "per-agenda".into(),
            Scheme::Spec(s) => s.to_string(),
        }
    }
}

/// A sequential rule: the agenda rule plus one social welfare function per
/// nonempty agenda.
pub struct Safe {
    pub agenda: Arc<dyn AgendaRule>,
    base: Rule,
    scheme: Scheme,
    /// Rules indexed by agenda bits, for the rebuilt schemes.
    family: Vec<Option<Rule>>,
}

impl Safe {
    /// The uniform SAFE of `rule` under `scheme`, with the union agenda rule.
    /// The restriction scheme requires `rule` to pass IIA exhaustively.
    pub fn uniform(rule: &Rule, scheme: &Scheme) -> Result<Safe> {
        let mut family = vec![None; 256];
        match scheme {
            Scheme::Restriction => {
                let iia = check_iia(rule, Quantifier::Exhaustive)?;
                if !iia.verdict.holds() {
                    let agenda = iia
                        .witness
                        .and_then(|w| w.agendas.into_iter().next())
                        .unwrap_or_default()
                        .join(",");
                    return Err(Error::FamilyUndefined {
                        rule: rule.name().to_string(),
                        agenda,
                    });
                }
            }
            Scheme::AtProfile => {}
            Scheme::PerAgenda | Scheme::Spec(_) => {
                for c in rule.agenda().nonempty_subsets() {
                    let r = match scheme {
                        Scheme::Spec(s) => Rule::build(s, rule.ground(), c, rule.agents())?,
                        _ => rule.on_agenda(c)?,
                    };
                    family[c.bits() as usize] = Some(r);
                }
            }
        }
        Ok(Safe {
            agenda: Arc::new(UnionRule),
            base: rule.clone(),
            scheme: scheme.clone(),
            family,
        })
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    /// `f_C((R_N)|C)` for the profile `R_N` on the whole agenda.
    pub fn eval_on(&self, c: Agenda, prefs: &[TotalPreorder]) -> Result<TotalPreorder> {
        match &self.family[c.bits() as usize] {
            Some(r) => {
                let restricted: Vec<TotalPreorder> = prefs.iter().map(|p| p.restrict(c)).collect::<Result<_>>()?;
                r.eval(&restricted)
            }
            None => self.base.eval(prefs)?.restrict(c),
        }
    }
}

/// AMP_S: for every profile, nested agendas `C ⊆ D` and agent `i`,
/// `f_C(R|C)` and `f_D(R|D)|C` are symmetrically comparable from `R_i`.
pub fn check_amp_s(rule: &Rule, scheme: &Scheme, q: Quantifier) -> Result<CheckReport> {
    let safe = Safe::uniform(rule, scheme)?;
    let ctx = Ctx::new(rule, q)?;
    let ground = rule.ground();
    let meta = SumMeta::new(ground, rule.agenda())?;
    let mut nested = Vec::new();
    for d in rule.agenda().nonempty_subsets() {
        for c in d.nonempty_subsets().filter(|c| *c != d) {
            nested.push((c, d));
        }
    }
    let (cases, found) = scan(&ctx, |d| {
        let prefs = ctx.ps.prefs(d);
        for &(c, dd) in &nested {
            let x = safe.eval_on(c, &prefs)?;
            let y = safe.eval_on(dd, &prefs)?.restrict(c)?;
            if let Some(i) = prefs.iter().position(|&p| !meta.symmetric(p, x, y)) {
                return Ok(Some((i, c, dd, x, y)));
            }
        }
        Ok(None)
    })?;
    let mut report = ctx
        .report("amp_s", cases, ctx.universal(found.is_some()))
        .detail("scheme", scheme.name())
        .detail("agenda_pairs", nested.len() as u64);
    if let Some((d, (i, c, dd, x, y))) = found {
        report = report.with_witness(Witness {
            profiles: vec![ctx.ps.render(&d)],
            agents: vec![i + 1],
            agendas: vec![labels(ground, c), labels(ground, dd)],
            outputs: vec![ground.render(x), ground.render(y)],
            note: "the agent ranks one of the two social preferences on the smaller agenda strictly above the other"
                .into(),
            ..Witness::default()
        });
    }
    Ok(report)
}

/// Replays an `amp_p` (union PAFE of `rule`) or `amp_s` failure.
pub fn replay(rule: &Rule, report: &CheckReport) -> Result<bool> {
    let w = report
        .witness
        .as_ref()
        .ok_or_else(|| Error::Parse("report has no witness".into()))?;
    let ground = rule.ground();
    let prefs: Vec<TotalPreorder> = w.profiles[0]
        .iter()
        .map(|t| ground.parse_partial(t))
        .collect::<Result<_>>()?;
    let agenda = |k: usize| -> Result<Agenda> {
        ground.parse_agenda(
            &w.agendas
                .get(k)
                .ok_or_else(|| Error::Parse("witness lacks agendas".into()))?
                .join(","),
        )
    };
    let (c, d) = (agenda(0)?, agenda(1)?);
    let i = w
        .agents
        .first()
        .ok_or_else(|| Error::Parse("witness lacks an agent".into()))?
        - 1;
    let meta = SumMeta::new(ground, rule.agenda())?;
    let (x, y) = match report.axiom.as_str() {
        "amp_p" => {
            // the union PAFE returns f(R) whatever the proposals
            let o = rule.eval(&prefs)?;
            (o.restrict(c)?, o.restrict(c)?)
        }
        _ => {
            let scheme = match report.details.get("scheme").and_then(|v| v.as_str()) {
                Some(s) => Scheme::parse(s)?,
                None => Scheme::Restriction,
            };
            let safe = Safe::uniform(rule, &scheme)?;
            (safe.eval_on(c, &prefs)?, safe.eval_on(d, &prefs)?.restrict(c)?)
        }
    };
    Ok(c.is_subset(d) && !meta.symmetric(prefs[i], x, y))
}

/// The two implications relating IIA, AMP_S and IIAP, checked on each of
/// `rules`: IIA ⇒ AMP_S (restriction family) and AMP_S ⇒ IIAP. AMP_S is
/// also evaluated under the at-profile reading, where it holds trivially;
/// rules for which that reading gives AMP_S but IIAP fails are listed
/// separately. Holds when neither implication has a counterexample under
/// the restriction reading.
pub fn implication_suite(rules: &[Rule], q: Quantifier) -> Result<CheckReport> {
    let mut rows = Vec::new();
    let mut anomalies = Vec::new();
    let mut at_profile_anomalies = Vec::new();
    let mut remark3 = Vec::new();
    let mut scope = None;
    for rule in rules {
        let iia = check_iia(rule, q)?;
        let iiap = crate::axioms::check_iiap(rule, q)?;
        scope.get_or_insert(iia.scope.clone());
        let amp_s = match check_amp_s(rule, &Scheme::Restriction, q) {
            Ok(r) => Some(r.verdict),
            Err(Error::FamilyUndefined { .. }) => None,
            Err(e) => return Err(e),
        };
        let at_profile = check_amp_s(rule, &Scheme::AtProfile, q)?.verdict;
        if iia.verdict.holds() && amp_s != Some(Verdict::Holds) {
            anomalies.push(json!({"rule": rule.name(), "implication": "iia => amp_s"}));
        }
        if amp_s == Some(Verdict::Holds) && iiap.verdict.fails() {
            anomalies.push(json!({"rule": rule.name(), "implication": "amp_s => iiap"}));
        }
        if at_profile.holds() && iiap.verdict.fails() {
            at_profile_anomalies.push(json!(rule.name()));
        }
        if matches!(rule.spec(), Some(RuleSpec::Remark3 { .. })) {
            let status = match (amp_s, at_profile.holds(), iiap.verdict.fails()) {
                (Some(Verdict::Holds), _, true) => {
                    "contradiction: amp_s holds on the restriction family and iiap fails"
                }
                (None, true, true) => {
                    "iiap fails; amp_s is undefined on the restriction family and holds only under the at-profile \
                     reading, under which amp_s => iiap has this rule as a counterexample"
                }
                (_, _, false) => "iiap holds",
                _ => "amp_s fails under both readings",
            };
            remark3.push(json!({
                "rule": rule.name(),
                "iiap": iiap.verdict.as_str(),
                "amp_s_restriction": amp_s.map_or("undefined", |v| v.as_str()),
                "amp_s_at_profile": at_profile.as_str(),
                "iiap_violated": iiap.verdict.fails(),
                "amp_s_under_either_reading": amp_s == Some(Verdict::Holds) || at_profile.holds(),
                "status": status,
            }));
        }
        rows.push(json!({
            "rule": rule.name(),
            "iia": iia.verdict.as_str(),
            "amp_s_restriction": amp_s.map_or("undefined", |v| v.as_str()),
            "amp_s_at_profile": at_profile.as_str(),
            "iiap": iiap.verdict.as_str(),
        }));
    }
    let scope = scope.unwrap_or_else(|| Scope::exhaustive(0, None, 0));
    let verdict = if anomalies.is_empty() {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    let mut report = CheckReport::new("iia_amp_s_iiap", "catalog", scope, verdict)
        .detail("rules", rows)
        .detail("anomalies", anomalies.clone())
        .detail("at_profile_anomalies", at_profile_anomalies)
        .detail("remark3", remark3);
    if !anomalies.is_empty() {
        report = report.with_witness(Witness::note("see anomalies"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground() -> GroundSet {
        GroundSet::letters(3).unwrap()
    }

    fn rule(text: &str) -> Rule {
        Rule::parse(text, &ground(), 3).unwrap()
    }

    #[test]
    fn union_rule_is_sovereign() {
        let g = ground();
        let u = UnionRule;
        let abc = g.full();
        let single = |i| Agenda::from_indices([i]);
        assert_eq!(u.eval(&[single(0), single(1), single(2)]), abc);
        let c = g.parse_agenda("a,c").unwrap();
        assert_eq!(u.eval(&[c, c, c]), c);
        let r = check_sovereignty(&u, &g, 3).unwrap();
        assert!(r.verdict.holds());
        assert_eq!(r.scope.domain_size, 343);
    }

    #[test]
    fn nineteen_identical_pairs_at_three() {
        assert_eq!(proposal_pairs(Agenda::full(3), 3, 0, 42).len(), 19);
    }

    #[test]
    fn decomposable_pafes_are_amp_p() {
        for text in ["comajority", "borda", "dictator:i=2"] {
            let r = check_amp_p_rule(&rule(text), Quantifier::Auto).unwrap();
            assert!(r.verdict.holds(), "{text}");
        }
    }

    #[test]
    fn entangled_pafe_is_caught() {
        let d1 = rule("dictator:i=1");
        let d2 = rule("dictator:i=2");
        let pafe = FnPafe::new("parity", move |props, prefs| {
            let size: usize = props.iter().map(|a| a.len()).sum();
            let r = if size.is_multiple_of(2) { &d1 } else { &d2 };
            Ok((UnionRule.eval(props), r.eval(prefs)?))
        });
        let r = check_amp_p(&pafe, &rule("comajority"), Quantifier::Auto).unwrap();
        assert!(r.verdict.fails());
        let w = r.witness.unwrap();
        assert_ne!(w.outputs[0], w.outputs[1]);
    }

    #[test]
    fn amp_s_schemes() {
        let st = rule("stalemate");
        assert!(check_amp_s(&st, &Scheme::Restriction, Quantifier::Auto)
            .unwrap()
            .verdict
            .holds());
        assert!(check_amp_s(&st, &Scheme::PerAgenda, Quantifier::Auto)
            .unwrap()
            .verdict
            .holds());
        assert!(
            check_amp_s(&rule("dictator:i=1"), &Scheme::Restriction, Quantifier::Auto)
                .unwrap()
                .verdict
                .holds()
        );
        let err = check_amp_s(&rule("comajority"), &Scheme::Restriction, Quantifier::Auto).unwrap_err();
        assert!(matches!(err, Error::FamilyUndefined { .. }));
        assert!(check_amp_s(&rule("comajority"), &Scheme::AtProfile, Quantifier::Auto)
            .unwrap()
            .verdict
            .holds());
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in ["restriction", "at-profile", "per-agenda", "comajority"] {
            assert_eq!(Scheme::parse(s).unwrap().name(), s);
        }
    }
}
