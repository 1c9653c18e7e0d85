//! Anonymity, idempotence, neutrality, Pareto and sovereignty conditions.

use rand::Rng;

use super::{coalition, each_profile, first_pair, ordered_pairs, relations, scan, Ctx};
use crate::error::Result;
use crate::relation::Relation;
use crate::report::{CheckReport, Quantifier, Scope, Verdict, Witness};
use crate::rules::Rule;

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// AN: the output is invariant under every permutation of the agents.
pub fn check_an(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let perms = permutations(ctx.n());
    let (cases, found) = scan(&ctx, |d| {
        let o = ctx.out(d)?;
        for sigma in &perms[1..] {
            let moved: Vec<usize> = sigma.iter().map(|&j| d[j]).collect();
            let o2 = ctx.out(&moved)?;
            if o2 != o {
                return Ok(Some((sigma.clone(), moved, o, o2)));
            }
        }
        Ok(None)
    })?;
    let mut report = ctx.report("an", cases, ctx.universal(found.is_some()));
    if let Some((d, (sigma, moved, o, o2))) = found {
        report = report.with_witness(Witness {
            permutation: sigma.iter().map(|j| j + 1).collect(),
            note: "permuting the agents changes the output".into(),
            ..ctx.witness(&[&d, &moved], &[o, o2])
        });
    }
    Ok(report)
}

/// ID: every unanimous profile maps to the shared preorder. Always exhaustive
/// over the `|R_A|` unanimous profiles.
pub fn check_id(rule: &Rule) -> Result<CheckReport> {
    let ps = rule.profiles();
    let space = rule.space();
    let scope = Scope::exhaustive(rule.agenda().len(), Some(rule.agents()), space.len() as u64);
    for j in 0..space.len() {
        let d = vec![j; rule.agents()];
        let out = rule.eval(&ps.prefs(&d))?;
        if out != space.elem(j) {
            return Ok(
                CheckReport::new("id", rule.name(), scope, Verdict::Fails).with_witness(Witness {
                    profiles: vec![ps.render(&d)],
                    outputs: vec![space.render(out)],
                    note: "unanimous profile is not mapped to the shared preorder".into(),
                    ..Witness::default()
                }),
            );
        }
    }
    Ok(CheckReport::new("id", rule.name(), scope, Verdict::Holds))
}

/// Set of outputs reached, and the number of cases examined.
fn image(ctx: &Ctx) -> Result<(u64, Vec<bool>)> {
    let mut seen = vec![false; ctx.space.len()];
    let cases = each_profile(ctx, |_, o| seen[o] = true)?;
    Ok((cases, seen))
}

/// S: every preorder on the agenda is an output.
pub fn check_s(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let (cases, seen) = image(&ctx)?;
    let missing: Vec<String> = (0..seen.len())
        .filter(|&j| !seen[j])
        .map(|j| ctx.render(ctx.elem(j)))
        .collect();
    let mut report = ctx
        .report("s", cases, ctx.existential(missing.is_empty()))
        .detail("image_size", seen.iter().filter(|&&b| b).count());
    if !missing.is_empty() && report.verdict.fails() {
        report = report.with_witness(Witness {
            elements: missing,
            note: "never an output".into(),
            ..Witness::default()
        });
    }
    Ok(report)
}

/// WS: for every `x, y` some profile yields `x ⪰ y`.
pub fn check_ws(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let (cases, seen) = image(&ctx)?;
    let reached = (0..seen.len())
        .filter(|&j| seen[j])
        .fold(Relation::EMPTY, |acc, j| acc.union(ctx.elem(j).relation()));
    let missing = Relation::universal(ctx.agenda()).difference(reached);
    let mut report = ctx.report("ws", cases, ctx.existential(missing.is_empty()));
    if !missing.is_empty() && report.verdict.fails() {
        let (x, y) = first_pair(missing.bits());
        report = report.with_witness(Witness {
            pairs: vec![ctx.pair(x, y)],
            note: "no profile yields x weakly above y".into(),
            ..Witness::default()
        });
    }
    Ok(report)
}

/// LS on distinct pairs: the output restricted to `{x, y}` is not constant.
/// The pair `x = y` is excluded since a restriction to a singleton never varies.
pub fn check_ls(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let (cases, seen) = image(&ctx)?;
    let unmet = ordered_pairs(ctx.agenda())
        .into_iter()
        .filter(|&(x, y)| x < y)
        .find(|&(x, y)| {
            let mut states = 0u8;
            for j in (0..seen.len()).filter(|&j| seen[j]) {
                let r = ctx.elem(j);
                states |= 1 << (r.weakly_prefers(x, y) as u8 * 2 + r.weakly_prefers(y, x) as u8);
            }
            states.count_ones() < 2
        });
    let mut report = ctx.report("ls", cases, ctx.existential(unmet.is_none()));
    if let (Some((x, y)), true) = (unmet, report.verdict.fails()) {
        report = report.with_witness(Witness {
            pairs: vec![ctx.pair(x, y)],
            note: "the output restricted to the pair never varies".into(),
            ..Witness::default()
        });
    }
    Ok(report)
}

fn pareto(rule: &Rule, q: Quantifier, strict: bool) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let rels = relations(&ctx.space);
    let part = |bits: u64| {
        let r = Relation::from_bits(bits);
        if strict {
            r.strict_part().bits()
        } else {
            r.bits()
        }
    };
    let (cases, found) = scan(&ctx, |d| {
        let unanimous = d.iter().fold(!0u64, |acc, &j| acc & part(rels[j]));
        let o = ctx.out(d)?;
        let missing = unanimous & !part(rels[o]);
        Ok((missing != 0).then(|| (o, first_pair(missing))))
    })?;
    let name = if strict { "wp" } else { "bp" };
    let mut report = ctx.report(name, cases, ctx.universal(found.is_some()));
    if let Some((d, (o, (x, y)))) = found {
        let note = if strict {
            "x is unanimously strictly preferred to y but not socially"
        } else {
            "x is unanimously weakly preferred to y but not socially"
        };
        report = report.with_witness(Witness {
            pairs: vec![ctx.pair(x, y)],
            note: note.into(),
            ..ctx.witness(&[&d], &[o])
        });
    }
    Ok(report)
}

/// WP: unanimous strict preferences are socially strict.
pub fn check_wp(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    pareto(rule, q, true)
}

/// BP: unanimous weak preferences are socially weak.
pub fn check_bp(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    pareto(rule, q, false)
}

/// NT: `x f(R) y` iff `y f(R') x` whenever `x R_i y` iff `y R'_i x` for all `i`.
///
/// Exhaustively, profiles are grouped by the agents' pattern on `(x, y)`:
/// the left side of the linkage reads `[x R_i y]` and the right side reads
/// `[y R'_i x]`, so a violation is a pattern reached on the left with one
/// output value and on the right with the other.
pub fn check_nt(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let rels = relations(&ctx.space);
    let bit = |r: u64, x: usize, y: usize| r >> (8 * x + y) & 1 == 1;
    let pairs = ordered_pairs(ctx.agenda());
    let mut found = None;
    let cases;
    if let Some(size) = ctx.exhaustive() {
        cases = size;
        let words = 1usize << ctx.n();
        'pairs: for &(x, y) in &pairs {
            // first[pattern][value] for the left and right roles
            let mut left = vec![[u64::MAX; 2]; words];
            let mut right = vec![[u64::MAX; 2]; words];
            let mut d = vec![0; ctx.n()];
            for idx in 0..size {
                ctx.ps.decode_into(idx, &mut d);
                let o = rels[ctx.out_idx(idx)];
                let l = coalition(&rels, &d, |r| bit(r, x, y)) as usize;
                let r = coalition(&rels, &d, |r| bit(r, y, x)) as usize;
                let lv = bit(o, x, y) as usize;
                let rv = bit(o, y, x) as usize;
                left[l][lv] = left[l][lv].min(idx);
                right[r][rv] = right[r][rv].min(idx);
            }
            for w in 0..words {
                for v in 0..2 {
                    if left[w][v] != u64::MAX && right[w][1 - v] != u64::MAX {
                        found = Some((x, y, ctx.ps.decode(left[w][v]), ctx.ps.decode(right[w][1 - v])));
                        break 'pairs;
                    }
                }
            }
        }
    } else {
        cases = ctx.samples();
        let mut rng = ctx.rng(1);
        let k = ctx.space.len();
        for _ in 0..cases {
            let (x, y) = pairs[rng.gen_range(0..pairs.len())];
            let d = ctx.ps.random(&mut rng);
            let d2: Vec<usize> = d
                .iter()
                .map(|&j| {
                    let want = bit(rels[j], x, y);
                    let pool: Vec<usize> = (0..k).filter(|&t| bit(rels[t], y, x) == want).collect();
                    pool[rng.gen_range(0..pool.len())]
                })
                .collect();
            let o = rels[ctx.out(&d)?];
            let o2 = rels[ctx.out(&d2)?];
            if bit(o, x, y) != bit(o2, y, x) {
                found = Some((x, y, d, d2));
                break;
            }
        }
    }
    let mut report = ctx.report("nt", cases, ctx.universal(found.is_some()));
    if let Some((x, y, d, d2)) = found {
        let (o, o2) = (ctx.out(&d)?, ctx.out(&d2)?);
        report = report.with_witness(Witness {
            pairs: vec![ctx.pair(x, y)],
            note: "second profile swaps every agent's view of the pair; outputs do not".into(),
            ..ctx.witness(&[&d, &d2], &[o, o2])
        });
    }
    Ok(report)
}

/// WNT: for bipartitions `R, R'` supported by the same coalition,
/// `f(R_N) ⊆ R` iff `f(R_N) ⊆ R'`.
pub fn check_wnt(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    let rels = relations(&ctx.space);
    let bips: Vec<u64> = ctx
        .space
        .meet_irreducibles()
        .iter()
        .map(|b| b.relation().bits())
        .collect();
    let sub = |a: u64, b: u64| a & !b == 0;
    let (cases, found) = scan(&ctx, |d| {
        let o = ctx.out(d)?;
        let cs: Vec<u32> = bips.iter().map(|&b| coalition(&rels, d, |r| sub(r, b))).collect();
        for a in 0..bips.len() {
            for b in a + 1..bips.len() {
                if cs[a] == cs[b] && sub(rels[o], bips[a]) != sub(rels[o], bips[b]) {
                    return Ok(Some((o, a, b)));
                }
            }
        }
        Ok(None)
    })?;
    let mut report = ctx.report("wnt", cases, ctx.universal(found.is_some()));
    if let Some((d, (o, a, b))) = found {
        let irr = ctx.space.meet_irreducibles();
        report = report.with_witness(Witness {
            elements: vec![ctx.render(irr[a]), ctx.render(irr[b])],
            note: "same supporting coalition, different containment of the output".into(),
            ..ctx.witness(&[&d], &[o])
        });
    }
    Ok(report)
}
