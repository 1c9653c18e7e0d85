//! Independent re-verification of failure witnesses.
//!
//! A witness that names concrete profiles is replayed by evaluating the rule
//! on them and testing the violated condition directly. Failures that assert
//! the absence of something (no profile reaches a pair, no coalition is
//! responsive, no stalemate exists) carry no finite certificate, so they are
//! replayed by running the check again exhaustively.

use crate::error::{Error, Result};
use crate::lattice::Space;
use crate::relation::TotalPreorder;
use crate::report::{CheckReport, Quantifier, Witness};
use crate::rules::Rule;

use super::strategy::Metas;
use super::{Axiom, SpMetric};

fn preorder(rule: &Rule, text: &str) -> Result<TotalPreorder> {
    let r = rule.ground().parse_partial(text)?;
    if r.agenda() != rule.agenda() {
        return Err(Error::Parse(format!("`{text}` is not on the rule's agenda")));
    }
    Ok(r)
}

fn profile(rule: &Rule, w: &Witness, k: usize) -> Result<Vec<TotalPreorder>> {
    let p = w
        .profiles
        .get(k)
        .ok_or_else(|| Error::Parse(format!("witness lacks profile {}", k + 1)))?;
    p.iter().map(|t| preorder(rule, t)).collect()
}

fn pair(rule: &Rule, w: &Witness) -> Result<(usize, usize)> {
    let [x, y] = w
        .pairs
        .first()
        .ok_or_else(|| Error::Parse("witness lacks a pair".into()))?;
    let idx = |l: &str| {
        rule.ground()
            .index_of(l)
            .ok_or_else(|| Error::Parse(format!("unknown label `{l}`")))
    };
    Ok((idx(x)?, idx(y)?))
}

fn agent(w: &Witness, k: usize) -> Result<usize> {
    w.agents
        .get(k)
        .map(|i| i - 1)
        .ok_or_else(|| Error::Parse("witness lacks an agent".into()))
}

fn element(rule: &Rule, w: &Witness, k: usize) -> Result<TotalPreorder> {
    let t = w
        .elements
        .get(k)
        .ok_or_else(|| Error::Parse("witness lacks an element".into()))?;
    preorder(rule, t)
}

fn refines(r: TotalPreorder, m: TotalPreorder) -> bool {
    r.relation().is_subset(m.relation())
}

fn recheck(rule: &Rule, axiom: Axiom) -> Result<bool> {
    Ok(super::check(rule, axiom, Quantifier::Exhaustive)?.verdict.fails())
}

/// Whether the failure recorded in `report` reproduces on `rule`.
/// Reports that are not failures replay to `false`.
pub fn replay(rule: &Rule, report: &CheckReport) -> Result<bool> {
    if !report.verdict.fails() {
        return Ok(false);
    }
    let axiom: Axiom = report.axiom.parse()?;
    let empty = Witness::default();
    let w = report.witness.as_ref().unwrap_or(&empty);
    let f = |p: &[TotalPreorder]| rule.eval(p);
    match axiom {
        Axiom::An => {
            let (p, q) = (profile(rule, w, 0)?, profile(rule, w, 1)?);
            let sigma = &w.permutation;
            let permuted = sigma.len() == p.len() && sigma.iter().enumerate().all(|(k, &j)| q[k] == p[j - 1]);
            Ok(permuted && f(&p)? != f(&q)?)
        }
        Axiom::Id => {
            let p = profile(rule, w, 0)?;
            Ok(p.iter().all(|r| *r == p[0]) && f(&p)? != p[0])
        }
        Axiom::Nt => {
            let (p, q) = (profile(rule, w, 0)?, profile(rule, w, 1)?);
            let (x, y) = pair(rule, w)?;
            let linked = p
                .iter()
                .zip(&q)
                .all(|(r, s)| r.weakly_prefers(x, y) == s.weakly_prefers(y, x));
            Ok(linked && f(&p)?.weakly_prefers(x, y) != f(&q)?.weakly_prefers(y, x))
        }
        Axiom::Wnt => {
            let p = profile(rule, w, 0)?;
            let (a, b) = (element(rule, w, 0)?, element(rule, w, 1)?);
            let two = a.block_count() == 2 && b.block_count() == 2;
            let linked = p.iter().all(|r| refines(*r, a) == refines(*r, b));
            let o = f(&p)?;
            Ok(two && linked && refines(o, a) != refines(o, b))
        }
        Axiom::Wp | Axiom::Bp => {
            let p = profile(rule, w, 0)?;
            let (x, y) = pair(rule, w)?;
            let o = f(&p)?;
            Ok(if axiom == Axiom::Wp {
                p.iter().all(|r| r.strictly_prefers(x, y)) && !o.strictly_prefers(x, y)
            } else {
                p.iter().all(|r| r.weakly_prefers(x, y)) && !o.weakly_prefers(x, y)
            })
        }
        Axiom::Iia | Axiom::Iiap => {
            let (p, q) = (profile(rule, w, 0)?, profile(rule, w, 1)?);
            let labels = w
                .agendas
                .first()
                .ok_or_else(|| Error::Parse("witness lacks an agenda".into()))?;
            let b = rule.ground().parse_agenda(&labels.join(","))?;
            let same = p
                .iter()
                .zip(&q)
                .map(|(r, s)| Ok(r.restrict(b)? == s.restrict(b)?))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|t| t);
            let (o, o2) = (f(&p)?, f(&q)?);
            let projective = axiom == Axiom::Iia || (p.contains(&o) && q.contains(&o2));
            Ok(same && projective && o.restrict(b)? != o2.restrict(b)?)
        }
        Axiom::Mmi => {
            let (p, q) = (profile(rule, w, 0)?, profile(rule, w, 1)?);
            let m = element(rule, w, 0)?;
            let grows = p.iter().zip(&q).all(|(r, s)| !refines(*r, m) || refines(*s, m));
            Ok(m.block_count() == 2 && grows && refines(f(&p)?, m) && !refines(f(&q)?, m))
        }
        Axiom::Sp(metric) => {
            let (p, q) = (profile(rule, w, 0)?, profile(rule, w, 1)?);
            let i = agent(w, 0)?;
            let only_i = (0..p.len()).all(|j| j == i || p[j] == q[j]);
            let (o, o2) = (f(&p)?, f(&q)?);
            Ok(only_i && o != o2 && prefers(rule, metric, p[i], o2, o)?)
        }
        Axiom::MetaWp(kind) => {
            let p = profile(rule, w, 0)?;
            let r = preorder(
                rule,
                w.outputs
                    .get(1)
                    .ok_or_else(|| Error::Parse("witness lacks a preorder".into()))?,
            )?;
            let o = f(&p)?;
            let metric = SpMetric {
                space: crate::lattice::SpaceKind::Preorders,
                kind,
            };
            let mut all = true;
            for &peak in &p {
                all &= prefers(rule, metric, peak, r, o)?;
            }
            Ok(all)
        }
        Axiom::Dictator | Axiom::InverseDictator => {
            let mut all = w.agents.len() == rule.agents();
            for (k, _) in w.agents.iter().enumerate() {
                let i = agent(w, k)?;
                let p = profile(rule, w, k)?;
                let mut own = p[i].relation();
                if axiom == Axiom::InverseDictator {
                    own = own.transpose();
                }
                all &= !f(&p)?.relation().is_subset(own);
            }
            Ok(all)
        }
        Axiom::WellDefined => {
            let p = profile(rule, w, 0)?;
            Ok(matches!(rule.eval(&p), Err(Error::IllFormedFamily(_))))
        }
        Axiom::Representation => {
            let p = profile(rule, w, 0)?;
            let family = super::extract_family(rule, Quantifier::Exhaustive)?;
            let rep = Rule::from_family("extracted", rule.ground(), family)?;
            Ok(match rep.eval(&p) {
                Ok(r) => r != f(&p)?,
                Err(Error::IllFormedFamily(_)) => true,
                Err(e) => return Err(e),
            })
        }
        Axiom::AmpP | Axiom::AmpS => crate::agenda::replay(rule, report),
        Axiom::S | Axiom::Ws | Axiom::Ls | Axiom::Mdr | Axiom::Stalemate | Axiom::Decisive => recheck(rule, axiom),
    }
}

fn prefers(rule: &Rule, metric: SpMetric, peak: TotalPreorder, a: TotalPreorder, b: TotalPreorder) -> Result<bool> {
    let space: &Space = rule.space();
    let idx = |r| {
        space
            .index_of(r)
            .ok_or_else(|| Error::Internal("preorder off the agenda".into()))
    };
    let metas = Metas::new(rule, metric)?;
    Ok(metas.strictly(idx(peak)?, idx(a)?, idx(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::GroundSet;

    #[test]
    fn failures_replay() {
        let g = GroundSet::letters(3).unwrap();
        let cases = [
            ("dictator:i=1", Axiom::An),
            ("stalemate", Axiom::Id),
            ("constant:R=a|b|c", Axiom::Nt),
            ("un", Axiom::Wp),
            ("lextop:x=a", Axiom::Bp),
            ("comajority", Axiom::Iia),
            ("borda", Axiom::Mmi),
            ("borda", Axiom::Sp(SpMetric::PREORDERS)),
            ("comajority", Axiom::Dictator),
            ("quota:q=1", Axiom::WellDefined),
            ("borda", Axiom::Representation),
            ("constant:R=a|b|c", Axiom::Ws),
            ("dictator:i=1", Axiom::Mdr),
        ];
        for (text, axiom) in cases {
            let rule = Rule::parse(text, &g, 3).unwrap();
            let report = super::super::check(&rule, axiom, Quantifier::Auto).unwrap();
            assert!(report.verdict.fails(), "{text} {axiom}");
            assert!(replay(&rule, &report).unwrap(), "{text} {axiom}");
        }
    }

    #[test]
    fn tampered_witness_does_not_replay() {
        let g = GroundSet::letters(3).unwrap();
        let rule = Rule::parse("un", &g, 3).unwrap();
        let mut report = super::super::check(&rule, Axiom::Wp, Quantifier::Auto).unwrap();
        let w = report.witness.as_mut().unwrap();
        w.profiles[0] = vec!["a|b|c".into(); 3];
        assert!(!replay(&rule, &report).unwrap());
    }
}
