//! The responsiveness correspondence and minimally distributed
//! responsiveness (MDR).
//!
//! `S ∈ F(x, y)` when some assignment of preorders to the members of `S`
//! forces `x f y` whatever the others report. The hypothesis reads each
//! member's preorder only through the predicate `x R_i y`, so an assignment
//! is equivalent to a boolean pattern on `S`; every pattern is realizable
//! when `x ≠ y`. A pattern fails exactly when some profile matching it on
//! `S` yields `not x f y`, so `F(x, y)` follows from the set of agent
//! patterns at which `x f y` fails.

use serde_json::json;

use super::{coalition, each_profile, ordered_pairs, relations, Ctx};
use crate::error::Result;
use crate::relation::Agenda;
use crate::report::{CheckReport, Quantifier, Scope, Verdict, Witness};
use crate::rules::filter::members;
use crate::rules::Rule;

/// A coalition with the pattern that makes it responsive: `pattern[k]` is
/// whether the `k`-th member (in increasing order) weakly prefers `x` to `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResponsivenessWitness {
    pub coalition: Vec<usize>,
    pub pattern: Vec<bool>,
}

/// `F_f` over ordered pairs of an agenda.
#[derive(Debug, Clone)]
pub struct Responsiveness {
    n: usize,
    agenda: Agenda,
    /// For pair index `x * 8 + y`: per coalition mask, a witnessing pattern
    /// mask, if the coalition belongs to `F(x, y)`.
    table: Vec<Vec<Option<u32>>>,
}

impl Responsiveness {
    pub fn agents(&self) -> usize {
        self.n
    }

    pub fn agenda(&self) -> Agenda {
        self.agenda
    }

    /// Whether coalition `s` (bit `i` for agent `i + 1`) is in `F(x, y)`.
    pub fn contains(&self, x: usize, y: usize, s: u32) -> bool {
        self.table[x * 8 + y][s as usize].is_some()
    }

    pub fn witness(&self, x: usize, y: usize, s: u32) -> Option<ResponsivenessWitness> {
        self.table[x * 8 + y][s as usize].map(|p| ResponsivenessWitness {
            coalition: members(s),
            pattern: members(s).iter().map(|&i| p >> (i - 1) & 1 == 1).collect(),
        })
    }

    /// Every coalition of `F(x, y)`, by mask.
    pub fn coalitions(&self, x: usize, y: usize) -> Vec<u32> {
        (0..1u32 << self.n).filter(|&s| self.contains(x, y, s)).collect()
    }
}

/// Computes `F_f` from every profile. Requires an exhaustive plan.
pub fn responsiveness(rule: &Rule, q: Quantifier) -> Result<Responsiveness> {
    let ctx = Ctx::new(rule, q)?;
    if ctx.exhaustive().is_none() {
        return Err(crate::error::Error::DomainTooLarge(
            "the responsiveness correspondence needs the full profile domain".into(),
        ));
    }
    Ok(compute(&ctx)?.1)
}

fn compute(ctx: &Ctx) -> Result<(u64, Responsiveness)> {
    let n = ctx.n();
    let words = 1usize << n;
    let rels = relations(&ctx.space);
    let agenda = ctx.agenda();
    let pairs: Vec<(usize, usize)> = agenda.iter().flat_map(|x| agenda.iter().map(move |y| (x, y))).collect();
    // bad[pair][w]: some profile with pattern w has not x f y
    let mut bad = vec![vec![false; words]; 64];
    let cases = each_profile(ctx, |d, o| {
        for &(x, y) in &pairs {
            if rels[o] >> (8 * x + y) & 1 == 0 {
                let w = coalition(&rels, d, |r| r >> (8 * x + y) & 1 == 1) as usize;
                bad[x * 8 + y][w] = true;
            }
        }
    })?;
    let mut table = vec![Vec::new(); 64];
    for &(x, y) in &pairs {
        let b = &bad[x * 8 + y];
        table[x * 8 + y] = (0..words as u32)
            .map(|s| {
                // patterns on s are the submasks of s
                let mut p = s;
                loop {
                    if (0..words as u32).all(|w| !(b[w as usize] && w & s == p)) {
                        return Some(p);
                    }
                    if p == 0 {
                        return None;
                    }
                    p = (p - 1) & s;
                }
            })
            .collect();
    }
    Ok((cases, Responsiveness { n, agenda, table }))
}

/// MDR: whenever a single agent `i` is in `F(x, y)` for distinct `x, y`,
/// some coalition excluding `i` is in `F(v, z)` for some distinct `v, z`.
pub fn check_mdr(rule: &Rule, q: Quantifier) -> Result<CheckReport> {
    let ctx = Ctx::new(rule, q)?;
    if ctx.exhaustive().is_none() {
        let scope = Scope::sampled(ctx.m(), Some(ctx.n()), 0, ctx.rng_seed(), 0);
        return Ok(
            CheckReport::new("mdr", rule.name(), scope, Verdict::InconclusiveSampled)
                .detail("note", "mdr quantifies over all profiles; rerun exhaustively"),
        );
    }
    let (cases, f) = compute(&ctx)?;
    let pairs = ordered_pairs(ctx.agenda());
    let full = (1u32 << ctx.n()) - 1;
    let mut support = Vec::new();
    let mut failure = None;
    for i in 0..ctx.n() {
        let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| f.contains(x, y, 1 << i)) else {
            continue;
        };
        let others = full & !(1 << i);
        // smallest coalition avoiding i, by size then mask
        let mut subsets: Vec<u32> = (0..=others).filter(|s| s & !others == 0).collect();
        subsets.sort_by_key(|s| (s.count_ones(), *s));
        let found = subsets.iter().find_map(|&s| {
            pairs
                .iter()
                .find(|&&(v, z)| f.contains(v, z, s))
                .map(|&(v, z)| (s, v, z))
        });
        match found {
            Some((s, v, z)) => {
                let w = f.witness(v, z, s).expect("member");
                support.push(json!({
                    "agent": i + 1,
                    "pair": ctx.pair(x, y),
                    "coalition": w.coalition,
                    "coalition_pair": ctx.pair(v, z),
                    "pattern": w.pattern,
                }));
            }
            None => {
                failure = Some((i, x, y));
                break;
            }
        }
    }
    let mut report = ctx
        .report("mdr", cases, ctx.universal(failure.is_some()))
        .detail("triggered", support);
    if let Some((i, x, y)) = failure {
        report = report.with_witness(Witness {
            agents: vec![i + 1],
            pairs: vec![ctx.pair(x, y)],
            note: "the agent alone is responsive on the pair; no coalition without it is responsive on any pair".into(),
            ..Witness::default()
        });
    }
    Ok(report)
}
