//! The shipped rules and a well-definedness audit for filter-built rules.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::relation::GroundSet;
use crate::report::{CheckReport, Quantifier, Scope, Verdict, Witness};
use crate::rules::{Rule, RuleSpec};
use crate::sampling::{plan, Plan};

/// Spec of every shipped rule, with parameters drawn from the first labels
/// of `ground`.
pub fn catalog_specs(ground: &GroundSet, n: usize) -> Vec<RuleSpec> {
    let l = |i: usize| ground.label(i).to_string();
    let chain = ground.labels().join("|");
    let mut specs = vec![
        RuleSpec::Comajority,
        RuleSpec::Quota(vec![n / 2 + 1]),
        RuleSpec::Quota(vec![n]),
        RuleSpec::Stalemate,
        RuleSpec::Dictator(1),
        RuleSpec::Dictator(2),
        RuleSpec::InverseDictator(1),
        RuleSpec::Constant(chain.clone()),
        RuleSpec::Borda,
        RuleSpec::BordaProjective(1),
        RuleSpec::Remark3 {
            i: 1,
            rstar: chain.clone(),
            bstar: vec![l(0)],
        },
        RuleSpec::Unanimity,
        RuleSpec::LexTop(l(0)),
        RuleSpec::PairThenThird,
        RuleSpec::Collegial,
        RuleSpec::Biased(chain),
    ];
    specs.dedup();
    specs
}

/// Every shipped rule on the whole ground set.
pub fn catalog(ground: &GroundSet, n: usize) -> Result<Vec<Rule>> {
    catalog_specs(ground, n)
        .iter()
        .map(|s| Rule::build(s, ground, ground.full(), n))
        .collect()
}

/// Rules assembled from order filters, for the representation checks.
pub fn filter_rules(ground: &GroundSet, n: usize) -> Result<Vec<Rule>> {
    Ok(catalog(ground, n)?
        .into_iter()
        .filter(|r| r.family().is_some())
        .collect())
}

/// Evaluates the rule on every profile (or a sample) and reports the first
/// profile where the output is undefined.
pub fn audit(rule: &Rule, quantifier: Quantifier) -> Result<CheckReport> {
    let ps = rule.profiles();
    let m = rule.agenda().len();
    let p = plan(quantifier, m, rule.agents(), ps.size())?;
    let failure = |digits: &[usize]| -> Result<Option<Vec<usize>>> {
        match rule.compute(&ps.prefs(digits)) {
            Ok(_) => Ok(None),
            Err(Error::IllFormedFamily(_)) => Ok(Some(digits.to_vec())),
            Err(e) => Err(e),
        }
    };
    let (scope, first) = match p {
        Plan::Exhaustive { size } => {
            let first = (0..size)
                .into_par_iter()
                .map(|idx| failure(&ps.decode(idx)).map(|f| f.map(|d| (idx, d))))
                .try_reduce(|| None, |a, b| Ok(min_some(a, b)))?;
            (Scope::exhaustive(m, Some(rule.agents()), size), first.map(|(_, d)| d))
        }
        Plan::Sampled { samples, seed } => {
            let mut rng = crate::sampling::rng(seed, 0);
            let mut first = None;
            for _ in 0..samples {
                let d = ps.random(&mut rng);
                if let Some(f) = failure(&d)? {
                    first = Some(f);
                    break;
                }
            }
            (
                Scope::sampled(m, Some(rule.agents()), ps.size().unwrap_or(u64::MAX), seed, samples),
                first,
            )
        }
    };
    let verdict = match (&first, scope.mode) {
        (Some(_), _) => Verdict::Fails,
        (None, crate::report::Mode::Exhaustive) => Verdict::Holds,
        (None, crate::report::Mode::Sampled) => Verdict::InconclusiveSampled,
    };
    let mut report = CheckReport::new("well_defined", rule.name(), scope, verdict);
    if let Some(d) = first {
        report = report.with_witness(Witness {
            profiles: vec![ps.render(&d)],
            note: "meet of the selected bipartitions does not exist".into(),
            ..Witness::default()
        });
    }
    Ok(report)
}

fn min_some<T: Ord>(a: Option<T>, b: Option<T>) -> Option<T> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds_at_three_agents() {
        let g = GroundSet::letters(3).unwrap();
        let rules = catalog(&g, 3).unwrap();
        let names: Vec<&str> = rules.iter().map(|r| r.name()).collect();
        assert!(names.contains(&"comajority"));
        assert!(names.contains(&"quota:q=2"));
        assert!(names.contains(&"quota:q=3"));
        assert!(names.contains(&"remark3:i=1,Rstar=a|b|c,Bstar=a"));
        assert_eq!(names.len(), 16);
    }

    #[test]
    fn shipped_filter_rules_are_well_defined() {
        let g = GroundSet::letters(3).unwrap();
        for rule in filter_rules(&g, 3).unwrap() {
            let r = audit(&rule, Quantifier::Auto).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "{}", rule.name());
            assert_eq!(r.scope.domain_size, 2197);
        }
        let comaj = Rule::parse("comajority", &g, 3).unwrap();
        assert!(audit(&comaj, Quantifier::Auto).unwrap().verdict.holds());
    }

    #[test]
    fn quota_one_is_flagged() {
        let g = GroundSet::letters(3).unwrap();
        let rule = Rule::parse("quota:q=1", &g, 3).unwrap();
        let r = audit(&rule, Quantifier::Auto).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert!(r.witness.is_some());
    }
}
