//! Exhaustive validation of the median join-semilattice axioms on a finite
//! poset.
//!
//! Joins, meets and medians are recomputed here from the order alone
//! ([`FinitePoset::lub`] / [`FinitePoset::glb`]), independently of the
//! closure-based operations in [`crate::lattice`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::lattice::{Space, SpaceKind};
use crate::poset::FinitePoset;
use crate::relation::GroundSet;
use crate::report::{CheckReport, Quantifier, Scope, Verdict, Witness, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::Result;

/// Tuple checks above this many cases are sampled.
const EXHAUSTIVE_LIMIT: u64 = 12_000_000;

/// Outcome of one sub-property.
#[derive(Debug, Clone)]
struct Part {
    name: &'static str,
    checked: u64,
    failures: u64,
    sampled: bool,
    witness: Option<(Vec<usize>, String)>,
}

impl Part {
    fn new(name: &'static str) -> Part {
        Part {
            name,
            checked: 0,
            failures: 0,
            sampled: false,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, elems: impl FnOnce() -> (Vec<usize>, String)) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(elems());
            }
        }
    }
}

/// Tables of binary joins and ternary medians computed from the order.
struct Tables<'a> {
    poset: &'a FinitePoset,
    n: usize,
    join: Vec<Option<u32>>,
    median: Vec<Option<u32>>,
}

impl<'a> Tables<'a> {
    fn new(poset: &'a FinitePoset) -> Tables<'a> {
        let n = poset.len();
        let join: Vec<Option<u32>> = (0..n * n)
            .into_par_iter()
            .map(|k| poset.lub(k / n, k % n).map(|v| v as u32))
            .collect();
        let median = (0..n * n * n)
            .into_par_iter()
            .map(|k| {
                let (x, y, z) = (k / (n * n), k / n % n, k % n);
                let xy = join[x * n + y]?;
                let yz = join[y * n + z]?;
                let xz = join[x * n + z]?;
                poset.glb(&[xy as usize, yz as usize, xz as usize]).map(|v| v as u32)
            })
            .collect();
        Tables { poset, n, join, median }
    }

    fn join(&self, x: usize, y: usize) -> Option<usize> {
        self.join[x * self.n + y].map(|v| v as usize)
    }

    fn mu(&self, x: usize, y: usize, z: usize) -> Option<usize> {
        self.median[(x * self.n + y) * self.n + z].map(|v| v as usize)
    }

    fn meet2(&self, x: usize, y: usize) -> Option<usize> {
        self.poset.glb(&[x, y])
    }
}

/// Enumerates `k`-tuples over `0..n` when there are at most `limit`,
/// otherwise draws `samples` of them.
fn tuples(n: usize, k: u32, limit: u64, samples: u64, seed: u64) -> (Vec<Vec<usize>>, bool) {
    let total = (n as u64).pow(k);
    if total > limit {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(k));
        let v = (0..samples)
            .map(|_| (0..k).map(|_| rng.gen_range(0..n)).collect())
            .collect();
        return (v, true);
    }
    let v = (0..total)
        .map(|mut c| {
            let mut t = vec![0; k as usize];
            for slot in t.iter_mut().rev() {
                *slot = (c % n as u64) as usize;
                c /= n as u64;
            }
            t
        })
        .collect();
    (v, false)
}

/// Checks every median-semilattice property on `poset`.
///
/// Properties: existence of binary joins; definedness and symmetry of the
/// median; `μ(x,x,y) = x`; the five-variable identity
/// `μ(μ(x,y,v), μ(x,y,w), z) = μ(μ(v,w,z), x, y)`; the meet-Helly property;
/// upper distributivity above a common lower bound; coatomisticity; agreement
/// of median and metric betweenness; and the rank formula for Hasse distance.
pub fn validate_poset(
    name: &str,
    m: usize,
    poset: &FinitePoset,
    label: &(dyn Fn(usize) -> String + Sync),
    quantifier: Quantifier,
) -> CheckReport {
    let n = poset.len();
    let (limit, samples, seed) = match quantifier {
        Quantifier::Auto | Quantifier::Exhaustive => (EXHAUSTIVE_LIMIT, DEFAULT_SAMPLES * 10, DEFAULT_SEED),
        Quantifier::Sampled { samples, seed } => (samples, samples, seed),
    };
    let t = Tables::new(poset);
    let mut parts = Vec::new();

    let mut p = Part::new("join_exists");
    for x in 0..n {
        for y in x..n {
            p.record(t.join(x, y).is_some(), || (vec![x, y], "no least upper bound".into()));
        }
    }
    parts.push(p);

    let pick = |k: u32| tuples(n, k, limit, samples, seed);

    let (triples, tri_sampled) = pick(3);
    let mut p = Part::new("median_defined_symmetric");
    p.sampled = tri_sampled;
    for tr in &triples {
        let (x, y, z) = (tr[0], tr[1], tr[2]);
        let a = t.mu(x, y, z);
        let ok = a.is_some()
            && [
                t.mu(y, x, z),
                t.mu(x, z, y),
                t.mu(z, y, x),
                t.mu(y, z, x),
                t.mu(z, x, y),
            ]
            .iter()
            .all(|b| *b == a);
        p.record(ok, || (vec![x, y, z], "median undefined or not symmetric".into()));
    }
    parts.push(p);

    let mut p = Part::new("mu1");
    for x in 0..n {
        for y in 0..n {
            let ok = t.mu(x, x, y) == Some(x) && t.mu(x, y, x) == Some(x) && t.mu(y, x, x) == Some(x);
            p.record(ok, || (vec![x, y], "μ(x,x,y) ≠ x".into()));
        }
    }
    parts.push(p);

    let (fives, five_sampled) = pick(5);
    let mut p = Part::new("mu2");
    p.sampled = five_sampled;
    let results: Vec<bool> = fives
        .par_iter()
        .map(|v| {
            let (x, y, vv, w, z) = (v[0], v[1], v[2], v[3], v[4]);
            let lhs = (|| t.mu(t.mu(x, y, vv)?, t.mu(x, y, w)?, z))();
            let rhs = (|| t.mu(t.mu(vv, w, z)?, x, y))();
            lhs.is_some() && lhs == rhs
        })
        .collect();
    for (v, ok) in fives.iter().zip(results) {
        p.record(ok, || (v.clone(), "five-variable median identity fails".into()));
    }
    parts.push(p);

    let mut p = Part::new("helly");
    p.sampled = tri_sampled;
    for tr in &triples {
        let (x, y, z) = (tr[0], tr[1], tr[2]);
        let pairwise = t.meet2(x, y).is_some() && t.meet2(y, z).is_some() && t.meet2(x, z).is_some();
        let ok = !pairwise || poset.glb(&[x, y, z]).is_some();
        p.record(ok, || {
            (vec![x, y, z], "pairwise meets exist, triple meet does not".into())
        });
    }
    parts.push(p);

    let mut p = Part::new("upper_distributivity");
    p.sampled = tri_sampled;
    for tr in &triples {
        let (x, y, z) = (tr[0], tr[1], tr[2]);
        if !poset.has_lower_bound(&[x, y, z]) {
            continue;
        }
        let lhs = t.meet2(y, z).and_then(|yz| t.join(x, yz));
        let rhs = (|| t.meet2(t.join(x, y)?, t.join(x, z)?))();
        p.record(lhs.is_some() && lhs == rhs, || {
            (vec![x, y, z], "x∨(y∧z) ≠ (x∨y)∧(x∨z) above a common lower bound".into())
        });
    }
    parts.push(p);

    let mut p = Part::new("coatomistic");
    let irr = poset.meet_irreducibles();
    let co = poset.coatoms();
    p.record(irr == co, || {
        let extra: Vec<usize> = irr.iter().copied().filter(|i| !co.contains(i)).collect();
        (extra, "meet-irreducible elements that are not coatoms".into())
    });
    parts.push(p);

    let mut p = Part::new("betweenness_agreement");
    p.sampled = tri_sampled;
    for tr in &triples {
        let (x, z, y) = (tr[0], tr[1], tr[2]);
        let d = |a: usize, b: usize| poset.distance(a, b);
        let metric = match (d(x, z), d(z, y), d(x, y)) {
            (Some(a), Some(b), Some(c)) => Some(a + b == c),
            _ => None,
        };
        let median = t.mu(x, y, z).map(|mm| mm == z);
        p.record(metric.is_some() && metric == median, || {
            (vec![x, z, y], "median and metric betweenness disagree".into())
        });
    }
    parts.push(p);

    let mut p = Part::new("rank_distance");
    for x in 0..n {
        for y in 0..n {
            let formula = t.join(x, y).map(|j| 2 * poset.rank(j) - poset.rank(x) - poset.rank(y));
            let ok = formula.is_some() && formula == poset.distance(x, y);
            p.record(ok, || (vec![x, y], "rank formula differs from Hasse distance".into()));
        }
    }
    parts.push(p);

    let any_sampled = parts.iter().any(|p| p.sampled);
    let failed = parts.iter().find(|p| p.failures > 0);
    let verdict = match (failed, any_sampled) {
        (Some(_), _) => Verdict::Fails,
        (None, true) => Verdict::InconclusiveSampled,
        (None, false) => Verdict::Holds,
    };
    let checked: u64 = parts.iter().map(|p| p.checked).sum();
    let scope = if any_sampled {
        Scope::sampled(m, None, checked, seed, samples)
    } else {
        Scope::exhaustive(m, None, checked)
    };
    let mut report = CheckReport::new("median_semilattice", name, scope, verdict)
        .detail("elements", n as u64)
        .detail(
            "checks",
            parts
                .iter()
                .map(|p| {
                    json!({
                        "name": p.name,
                        "checked": p.checked,
                        "failures": p.failures,
                        "sampled": p.sampled,
                    })
                })
                .collect::<Vec<_>>(),
        );
    if let Some(p) = failed {
        let (elems, note) = p.witness.clone().expect("failure has a witness");
        report = report.with_witness(Witness {
            elements: elems.into_iter().map(label).collect(),
            note: format!("{}: {}", p.name, note),
            ..Witness::default()
        });
    }
    report
}

/// Validates a materialized [`Space`].
pub fn validate_space(space: &Space, quantifier: Quantifier) -> CheckReport {
    let name = match space.kind() {
        SpaceKind::Preorders => format!("preorders(m={})", space.agenda().len()),
        SpaceKind::Sum => format!("sum(m={})", space.agenda().len()),
    };
    let label = |i: usize| space.render(space.elem(i));
    validate_poset(&name, space.agenda().len(), space.poset(), &label, quantifier)
}

/// Validates the Boolean lattice of all subsets of the ground set.
pub fn validate_subsets(ground: &GroundSet, quantifier: Quantifier) -> CheckReport {
    let m = ground.len();
    let poset = FinitePoset::new((0..1u64 << m).collect());
    let label = |i: usize| {
        let bits = poset.item(i);
        let names: Vec<&str> = (0..m).filter(|k| bits >> k & 1 == 1).map(|k| ground.label(k)).collect();
        format!("{{{}}}", names.join(","))
    };
    validate_poset(&format!("subsets(m={m})"), m, &poset, &label, quantifier)
}

/// Checks only coatomisticity of `R_A` (feasible up to `m = 5`).
pub fn coatomistic(ground: &GroundSet) -> Result<CheckReport> {
    let space = Space::full(ground)?;
    let irr = space.poset().meet_irreducibles();
    let co = space.poset().coatoms();
    let verdict = if irr == co { Verdict::Holds } else { Verdict::Fails };
    Ok(CheckReport::new(
        "coatomistic",
        &format!("preorders(m={})", ground.len()),
        Scope::exhaustive(ground.len(), None, space.len() as u64),
        verdict,
    )
    .detail("meet_irreducibles", irr.len() as u64)
    .detail("coatoms", co.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorders_m3_is_median_semilattice() {
        let g = GroundSet::letters(3).unwrap();
        let r = validate_space(&Space::full(&g).unwrap(), Quantifier::Exhaustive);
        assert_eq!(r.verdict, Verdict::Holds, "{:?}", r.witness);
        assert_eq!(r.scope.mode, crate::report::Mode::Exhaustive);
    }

    #[test]
    fn boolean_lattice_passes() {
        let g = GroundSet::letters(3).unwrap();
        let r = validate_subsets(&g, Quantifier::Exhaustive);
        assert_eq!(r.verdict, Verdict::Holds, "{:?}", r.witness);
    }

    #[test]
    fn sum_space_fails_on_joins() {
        let g = GroundSet::letters(3).unwrap();
        let r = validate_space(&Space::sum(&g, g.full()).unwrap(), Quantifier::Exhaustive);
        assert_eq!(r.verdict, Verdict::Fails);
        let w = r.witness.unwrap();
        assert!(w.note.starts_with("join_exists"));
        assert_eq!(w.elements.len(), 2);
    }

    #[test]
    fn non_median_poset_is_caught() {
        // the pentagon N5 with bottom 1: 1 < 11 < 111 < 1111, 1 < 101 < 1111
        let p = FinitePoset::new(vec![0b1, 0b11, 0b111, 0b101, 0b1111]);
        let label = |i: usize| i.to_string();
        let r = validate_poset("pentagon", 0, &p, &label, Quantifier::Exhaustive);
        assert_eq!(r.verdict, Verdict::Fails);
    }
}
