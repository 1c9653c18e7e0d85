//! Independence conditions: IIA, IIAP, monotonic independence over the
//! bipartitions, and the order-filter representation it yields.

use rand::Rng;
use serde_json::json;

use super::{coalition, each_profile, relations, scan, Ctx};
use crate::error::{Error, Result};
use crate::lattice::{bipartitions, Space};
use crate::relation::Agenda;
use crate::report::{CheckReport, Quantifier, Witness};
use crate::rules::filter::members;
use crate::rules::{FilterFamily, OrderFilter, Rule};

/// Restriction data for one sub-agenda: the index in `R_B` of each element's
/// restriction, and the elements grouped by that index.
struct Restriction {
    agenda: Agenda,
    radix: usize,
    index: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Restriction {
    fn new(ctx: &Ctx, agenda: Agenda) -> Result<Restriction> {
        let sub = Space::preorders(ctx.rule.ground(), agenda)?;
        let index: Vec<usize> = ctx
            .space
            .elems()
            .iter()
            .map(|r| {
                r.restrict(agenda)
                    .map(|s| sub.index_of(s).expect("restriction is a preorder"))
            })
            .collect::<Result<_>>()?;
        let mut classes = vec![Vec::new(); sub.len()];
        for (j, &c) in index.iter().enumerate() {
            classes[c].push(j);
        }
        Ok(Restriction {
            agenda,
            radix: sub.len(),
            index,
            classes,
        })
    }

    fn key(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.radix + self.index[d])
    }
}

/// Proper sub-agendas with at least two alternatives; on singletons every
/// restriction is the same.
fn sub_agendas(agenda: Agenda) -> Vec<Agenda> {
    agenda
        .nonempty_subsets()
        .filter(|b| *b != agenda && b.len() >= 2)
        .collect()
}

fn independence(rule: &Rule, q: Quantifier, projective_only: bool) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let rels = relations(&ctx.space);
    let subs: Vec<Restriction> = sub_agendas(ctx.agenda())
        .into_iter()
        .map(|b| Restriction::new(&ctx, b))
        .collect::<Result<_>>()?;
    let projective = |d: &[usize], o: usize| d.contains(&o);
    let restricted = |o: usize, b: Agenda| rels[o] & crate::relation::Relation::universal(b).bits();
    let mut found = None;
    let mut compared = 0u64;
    let cases;
    if let Some(size) = ctx.exhaustive() {
        cases = size;
        'subs: for sub in &subs {
            let mut first: Vec<Option<(u64, u64)>> = vec![None; sub.radix.pow(ctx.n() as u32)];
            let mut d = vec![0; ctx.n()];
            for idx in 0..size {
                ctx.ps.decode_into(idx, &mut d);
                let o = ctx.out_idx(idx);
                if projective_only && !projective(&d, o) {
                    continue;
                }
                compared += 1;
                let here = restricted(o, sub.agenda);
                match first[sub.key(&d)] {
                    None => first[sub.key(&d)] = Some((idx, here)),
                    Some((earlier, r)) if r != here => {
                        found = Some((sub.agenda, ctx.ps.decode(earlier), d.clone()));
                        break 'subs;
                    }
                    Some(_) => {}
                }
            }
        }
    } else {
        cases = ctx.samples();
        let mut rng = ctx.rng(2);
        for _ in 0..cases {
            let sub = &subs[rng.gen_range(0..subs.len())];
            let d = ctx.ps.random(&mut rng);
            let d2: Vec<usize> = d
                .iter()
                .map(|&j| {
                    let class = &sub.classes[sub.index[j]];
                    class[rng.gen_range(0..class.len())]
                })
                .collect();
            let (o, o2) = (ctx.out(&d)?, ctx.out(&d2)?);
            if projective_only && !(projective(&d, o) && projective(&d2, o2)) {
                continue;
            }
            compared += 1;
            if restricted(o, sub.agenda) != restricted(o2, sub.agenda) {
                found = Some((sub.agenda, d, d2));
                break;
            }
        }
    }
    let name = if projective_only { "iiap" } else { "iia" };
    let mut report = ctx.report(name, cases, ctx.universal(found.is_some()));
    if projective_only {
        report = report.detail("projective_cases", compared);
    }
    if let Some((b, d, d2)) = found {
        let (o, o2) = (ctx.out(&d)?, ctx.out(&d2)?);
        report = report.with_witness(Witness {
            agendas: vec![ctx.rule.ground().agenda_labels(b)],
            note: "profiles agree on the agenda, outputs restricted to it differ".into(),
            ..ctx.witness(&[&d, &d2], &[o, o2])
        });
    }
    Ok(report)
}

/// IIA over all proper sub-agendas.
pub fn check_iia(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    independence(rule, q, false)
}

/// IIA restricted to pairs of projective profiles (output equal to some
/// agent's preorder).
pub fn check_iiap(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    independence(rule, q, true)
}

/// Monotonic independence over the bipartitions `m`: if
/// `N_m(R) ⊆ N_m(R')` and `f(R) ⊆ m` then `f(R') ⊆ m`, where `N_m(R)` is
/// the coalition of agents whose preorder refines `m`.
///
/// For each `m` it suffices to record, per coalition, the first profile
/// whose output refines `m` and the first whose output does not; a violation
/// is a refining coalition contained in a non-refining one.
pub fn check_mmi(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let rels = relations(&ctx.space);
    let bips: Vec<u64> = ctx
        .space
        .meet_irreducibles()
        .iter()
        .map(|b| b.relation().bits())
        .collect();
    let words = 1usize << ctx.n();
    let mut good: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; words]; bips.len()];
    let mut bad = good.clone();
    let cases = each_profile(&ctx, |d, o| {
        for (k, &m) in bips.iter().enumerate() {
            let c = coalition(&rels, d, |r| r & !m == 0) as usize;
            let slot = if rels[o] & !m == 0 {
                &mut good[k][c]
            } else {
                &mut bad[k][c]
            };
            if slot.is_none() {
                *slot = Some(d.to_vec());
            }
        }
    })?;
    let mut found = None;
    'bips: for k in 0..bips.len() {
        for (g, pg) in good[k].iter().enumerate() {
            let Some(pg) = pg else { continue };
            for b in (0..words).filter(|b| g & !b == 0) {
                if let Some(pb) = &bad[k][b] {
                    found = Some((k, g, b, pg.clone(), pb.clone()));
                    break 'bips;
                }
            }
        }
    }
    let mut report = ctx.report("mmi", cases, ctx.universal(found.is_some()));
    if let Some((k, g, b, pg, pb)) = found {
        let (o, o2) = (ctx.out(&pg)?, ctx.out(&pb)?);
        report = report.with_witness(Witness {
            elements: vec![ctx.render(ctx.space.meet_irreducibles()[k])],
            coalitions: vec![members(g as u32), members(b as u32)],
            note: "supporting coalition grows, yet the output stops refining the bipartition".into(),
            ..ctx.witness(&[&pg, &pb], &[o, o2])
        });
    }
    Ok(report)
}

/// The filter family read off a rule: for each bipartition `m`, the filter
/// generated by the coalitions `N_m(R)` at profiles with `f(R) ⊆ m`.
/// Exhaustive plans read every profile; sampled plans only the samples.
pub fn extract_family(rule: &Rule, q: Quantifier) -> Result<FilterFamily> {
    let ctx = Ctx::new(rule, q)?;
    let rels = relations(&ctx.space);
    let issues = bipartitions(ctx.agenda());
    let bits: Vec<u64> = issues.iter().map(|b| b.preorder().relation().bits()).collect();
    let mut gens: Vec<Vec<u32>> = vec![Vec::new(); issues.len()];
    let mut seen = vec![vec![false; 1 << ctx.n()]; issues.len()];
    each_profile(&ctx, |d, o| {
        for (k, &m) in bits.iter().enumerate() {
            if rels[o] & !m == 0 {
                let c = coalition(&rels, d, |r| r & !m == 0);
                if !seen[k][c as usize] {
                    seen[k][c as usize] = true;
                    gens[k].push(c);
                }
            }
        }
    })?;
    FilterFamily::new(
        ctx.agenda(),
        ctx.n(),
        gens.into_iter().map(OrderFilter::generated).collect(),
    )
}

/// Whether the rule coincides with the filter rule built from its own
/// extracted family. Holds exactly for rules with a filter representation.
pub fn check_representation(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    let family = extract_family(rule, q)?;
    let rep = Rule::from_family(&format!("{}/filters", rule.name()), rule.ground(), family.clone())?;
    let ctx = Ctx::new(rule, q)?;
    let (cases, found) = scan(&ctx, |d| {
        let o = ctx.out(d)?;
        match rep.compute(&ctx.ps.prefs(d)) {
            Ok(r) if r == ctx.elem(o) => Ok(None),
            Ok(r) => Ok(Some((o, Some(r)))),
            Err(Error::IllFormedFamily(_)) => Ok(Some((o, None))),
            Err(e) => Err(e),
        }
    })?;
    let filters: Vec<serde_json::Value> = family
        .issues()
        .iter()
        .zip(family.filters())
        .map(|(b, f)| {
            json!({
                "bipartition": ctx.render(b.preorder()),
                "basis": f.basis().iter().map(|&c| members(c)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut report = ctx
        .report("representation", cases, ctx.universal(found.is_some()))
        .detail("filters", filters);
    if let Some((d, (o, r))) = found {
        let mut w = ctx.witness(&[&d], &[o]);
        match r {
            Some(r) => {
                w.outputs.push(ctx.render(r));
                w.note = "rule output, then the output of the extracted filter rule".into();
            }
            None => w.note = "the extracted filter rule is undefined here".into(),
        }
        report = report.with_witness(w);
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
    fn iia_verdicts() {
        let c = check_iia(&rule("comajority"), Quantifier::Auto).unwrap();
        assert!(c.verdict.fails());
        assert_eq!(c.witness.unwrap().profiles.len(), 2);
        for text in ["dictator:i=1", "stalemate", "inverse:i=2", "constant:R=b|a c"] {
            assert!(
                check_iia(&rule(text), Quantifier::Auto).unwrap().verdict.holds(),
                "{text}"
            );
        }
    }

    #[test]
    fn projective_borda() {
        let r = rule("bordaproj:i=1");
        assert!(check_iiap(&r, Quantifier::Auto).unwrap().verdict.holds());
        assert!(check_iia(&r, Quantifier::Auto).unwrap().verdict.fails());
    }

    #[test]
    fn monotone_independence() {
        assert!(check_mmi(&rule("comajority"), Quantifier::Auto)
            .unwrap()
            .verdict
            .holds());
        assert!(check_mmi(&rule("constant:R=a|b|c"), Quantifier::Auto)
            .unwrap()
            .verdict
            .holds());
        let b = check_mmi(&rule("borda"), Quantifier::Auto).unwrap();
        assert!(b.verdict.fails());
        assert_eq!(b.witness.unwrap().coalitions.len(), 2);
    }

    #[test]
    fn comajority_extracts_majority_filters() {
        let fam = extract_family(&rule("comajority"), Quantifier::Auto).unwrap();
        for f in fam.filters() {
            assert_eq!(f.basis(), &[0b011, 0b101, 0b110]);
        }
        assert!(check_representation(&rule("comajority"), Quantifier::Auto)
            .unwrap()
            .verdict
            .holds());
        let st = extract_family(&rule("stalemate"), Quantifier::Auto).unwrap();
        assert!(st.filters().iter().all(|f| f.is_empty()));
        assert!(check_representation(&rule("borda"), Quantifier::Auto)
            .unwrap()
            .verdict
            .fails());
    }
}
