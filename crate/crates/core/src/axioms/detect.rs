//! Detectors: dictators, inverse dictators, stalemates and decisive
//! coalitions.

use serde_json::json;

use super::{coalition, each_profile, relations, scan, Ctx};
use crate::error::Result;
use crate::relation::Relation;
use crate::report::{CheckReport, Quantifier, Verdict, Witness};
use crate::rules::filter::members;
use crate::rules::Rule;

fn dictators(rule: &Rule, q: Quantifier, inverse: bool) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let rels = relations(&ctx.space);
    let mut found = Vec::new();
    let mut refutations = Vec::new();
    let mut cases = 0;
    for i in 0..ctx.n() {
        let (c, first) = scan(&ctx, |d| {
            let o = ctx.out(d)?;
            let mut own = Relation::from_bits(rels[d[i]]);
            if inverse {
                own = own.transpose();
            }
            Ok((!Relation::from_bits(rels[o]).is_subset(own)).then_some(o))
        })?;
        cases = c;
        match first {
            Some((d, o)) => refutations.push((i, d, o)),
            None => found.push(i + 1),
        }
    }
    let name = if inverse { "inverse_dictator" } else { "dictator" };
    let verdict = if !found.is_empty() {
        ctx.existential(ctx.exhaustive().is_some())
    } else {
        Verdict::Fails
    };
    let mut report = ctx
        .report(name, cases, verdict)
        .detail(if inverse { "inverse_dictators" } else { "dictators" }, found.clone());
    if found.is_empty() {
        let mut w = Witness::default();
        for (i, d, o) in &refutations {
            w.agents.push(i + 1);
            w.profiles.push(ctx.ps.render(d));
            w.outputs.push(ctx.render(ctx.elem(*o)));
        }
        w.note = if inverse {
            "for each agent, a profile whose output is not contained in the reverse of its preorder".into()
        } else {
            "for each agent, a profile whose output is not contained in its preorder".into()
        };
        report = report.with_witness(w);
    }
    Ok(report)
}

/// Holds when some agent `i` is a dictator: `x f(R) y` only if `x R_i y`.
pub fn check_dictator(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    dictators(rule, q, false)
}

/// Holds when some agent `i` is an inverse dictator: `x f(R) y` only if `y R_i x`.
pub fn check_inverse_dictator(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    dictators(rule, q, true)
}

/// Holds when some profile has a pair `x, y` that every agent strictly
/// ranks `x` above while the output is indifferent between them.
pub fn check_stalemate(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let rels = relations(&ctx.space);
    let (cases, found) = scan(&ctx, |d| {
        let oi = ctx.out(d)?;
        let o = Relation::from_bits(rels[oi]);
        let unanimous = d
            .iter()
            .fold(!0u64, |acc, &j| acc & Relation::from_bits(rels[j]).strict_part().bits());
        let tied = o.intersection(o.transpose()).bits();
        let hit = unanimous & tied;
        Ok((hit != 0).then(|| (oi, super::first_pair(hit))))
    })?;
    let mut report = ctx.report("stalemate", cases, ctx.existential(found.is_some()));
    match found {
        Some((d, (o, (x, y)))) => {
            report = report.with_witness(Witness {
                pairs: vec![ctx.pair(x, y)],
                note: "unanimously strict pair inside an output indifference class".into(),
                ..ctx.witness(&[&d], &[o])
            });
        }
        None if report.verdict.fails() => {
            report = report.with_witness(Witness::note("no profile has a stalemate"));
        }
        None => {}
    }
    Ok(report)
}

/// Coalitions that enforce their unanimous strict preferences, with the
/// ultrafilter analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisiveFamily {
    pub n: usize,
    /// Decisive coalitions as masks, increasing.
    pub coalitions: Vec<u32>,
    /// First ultrafilter property that fails, with the coalitions involved.
    pub defect: Option<(String, Vec<u32>)>,
    /// The agent `i` (1-based) with `D = {S : i ∈ S}`, if any.
    pub principal: Option<usize>,
}

impl DecisiveFamily {
    pub fn from_decisive(n: usize, decisive: &[bool]) -> DecisiveFamily {
        let full = (1u32 << n) - 1;
        let all = 0..=full;
        let d = |s: u32| decisive[s as usize];
        let defect = if d(0) {
            Some(("contains the empty coalition".to_string(), vec![0]))
        } else if !d(full) {
            Some(("does not contain the grand coalition".to_string(), vec![full]))
        } else if let Some((s, t)) = all
            .clone()
            .flat_map(|s| (0..=full).map(move |t| (s, t)))
            .find(|&(s, t)| d(s) && s & !t == 0 && !d(t))
        {
            Some(("not upward closed".to_string(), vec![s, t]))
        } else if let Some((s, t)) = all
            .clone()
            .flat_map(|s| (0..=full).map(move |t| (s, t)))
            .find(|&(s, t)| d(s) && d(t) && !d(s & t))
        {
            Some(("not closed under intersection".to_string(), vec![s, t]))
        } else {
            all.clone().find(|&s| !d(s) && !d(full & !s)).map(|s| {
                (
                    "neither a coalition nor its complement is decisive".to_string(),
                    vec![s, full & !s],
                )
            })
        };
        let principal = (0..n)
            .find(|&i| (0..=full).all(|s| d(s) == (s >> i & 1 == 1)))
            .map(|i| i + 1);
        DecisiveFamily {
            n,
            coalitions: all.filter(|&s| d(s)).collect(),
            defect,
            principal,
        }
    }

    pub fn is_ultrafilter(&self) -> bool {
        self.defect.is_none()
    }
}

/// Computes the decisive coalitions and holds when they form an ultrafilter.
pub fn check_decisive(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let rels = relations(&ctx.space);
    let n = ctx.n();
    let words = 1usize << n;
    // blocked[u]: at some profile, coalition u is exactly the set of agents
    // strictly preferring x to y while the output does not
    let mut blocked = vec![false; words];
    let pairs = super::ordered_pairs(ctx.agenda());
    let cases = each_profile(&ctx, |d, o| {
        let strict = Relation::from_bits(rels[o]).strict_part();
        for &(x, y) in &pairs {
            if !strict.contains(x, y) {
                let u = coalition(&rels, d, |r| {
                    let r = Relation::from_bits(r);
                    r.contains(x, y) && !r.contains(y, x)
                });
                blocked[u as usize] = true;
            }
        }
    })?;
    let decisive: Vec<bool> = (0..words)
        .map(|c| !(0..words).any(|u| blocked[u] && c & !u == 0))
        .collect();
    let fam = DecisiveFamily::from_decisive(n, &decisive);
    let verdict = match (&fam.defect, ctx.exhaustive()) {
        (Some(_), Some(_)) => Verdict::Fails,
        (None, Some(_)) => Verdict::Holds,
        (_, None) => Verdict::InconclusiveSampled,
    };
    let mut report = ctx
        .report("decisive", cases, verdict)
        .detail(
            "decisive_coalitions",
            fam.coalitions.iter().map(|&c| members(c)).collect::<Vec<_>>(),
        )
        .detail("ultrafilter", fam.is_ultrafilter())
        .detail("principal", json!(fam.principal));
    if let (Some((what, cs)), Verdict::Fails) = (&fam.defect, verdict) {
        report = report.with_witness(Witness {
            coalitions: cs.iter().map(|&c| members(c)).collect(),
            note: format!("decisive coalitions are not an ultrafilter: {what}"),
            ..Witness::default()
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::GroundSet;

    fn rule(text: &str) -> Rule {
        Rule::parse(text, &GroundSet::letters(3).unwrap(), 3).unwrap()
    }

    #[test]
    fn dictator_detection() {
        let r = check_dictator(&rule("dictator:i=2"), Quantifier::Auto).unwrap();
        assert!(r.verdict.holds());
        assert_eq!(r.details["dictators"], json!([2]));
        let c = check_dictator(&rule("comajority"), Quantifier::Auto).unwrap();
        assert!(c.verdict.fails());
        assert_eq!(c.witness.unwrap().agents, vec![1, 2, 3]);
        assert!(check_inverse_dictator(&rule("inverse:i=1"), Quantifier::Auto)
            .unwrap()
            .verdict
            .holds());
        assert!(check_inverse_dictator(&rule("stalemate"), Quantifier::Auto)
            .unwrap()
            .verdict
            .fails());
    }

    #[test]
    fn unanimity_quota_stalemate() {
        let r = check_stalemate(&rule("quota:q=3"), Quantifier::Auto).unwrap();
        assert!(r.verdict.holds());
        assert!(check_stalemate(&rule("stalemate"), Quantifier::Auto)
            .unwrap()
            .verdict
            .holds());
        assert!(check_stalemate(&rule("dictator:i=1"), Quantifier::Auto)
            .unwrap()
            .verdict
            .fails());
    }

    #[test]
    fn decisive_families() {
        let d = check_decisive(&rule("dictator:i=1"), Quantifier::Auto).unwrap();
        assert!(d.verdict.holds());
        assert_eq!(d.details["principal"], json!(1));
        assert_eq!(
            d.details["decisive_coalitions"],
            json!([[1], [1, 2], [1, 3], [1, 2, 3]])
        );
        let s = check_decisive(&rule("stalemate"), Quantifier::Auto).unwrap();
        assert!(s.verdict.fails());
        assert_eq!(s.details["decisive_coalitions"], json!([]));
    }
}
