//! Acceptance run: one line per criterion with its timing and budget.
//!
//! Criteria listed in `KNOWN_RED` are reported as FAIL. For those the run
//! instead pins the exact discrepancy, so the target fails if it changes in
//! either direction.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use stalemate::agenda::implication_suite;
use stalemate::axioms::{check, check_stalemate, replay, Axiom, SpMetric};
use stalemate::lattice::Space;
use stalemate::relation::{enumerate_preorders, GroundSet};
use stalemate::report::{CheckReport, Quantifier};
use stalemate::rules::catalog::catalog;
use stalemate::rules::filter::FilterFamily;
use stalemate::rules::Rule;
use stalemate::structure::validate_space;
use stalemate::verify;

const ALL: Quantifier = Quantifier::Exhaustive;

/// Criterion 3 compares check_sp with check_mmi; on `lextop:x=a` SP holds
/// with geodesic meta-preferences while MMI fails.
const KNOWN_RED: &[(u32, &str)] = &[(3, "sp != mmi on [lextop:x=a]")];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn g3() -> GroundSet {
    GroundSet::letters(3).unwrap()
}

fn rule(text: &str) -> Rule {
    Rule::parse(text, &g3(), 3).unwrap()
}

fn run(r: &Rule, a: Axiom) -> CheckReport {
    let rep = check(r, a, ALL).unwrap();
    assert!(
        rep.scope.mode == stalemate::report::Mode::Exhaustive,
        "{} {a} not exhaustive",
        r.name()
    );
    rep
}

fn holds(r: &Rule, a: Axiom) -> bool {
    run(r, a).verdict.holds()
}

fn pref(text: &str) -> u64 {
    bits(g3().parse_preorder(text).unwrap())
}

fn structure() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (m, want) in [(3, 13), (4, 75)] {
        let g = GroundSet::letters(m).unwrap();
        let lib: BTreeSet<u64> = enumerate_preorders(&g).unwrap().into_iter().map(bits).collect();
        let oracle: BTreeSet<u64> = preorders(m).into_iter().collect();
        ok &= lib.len() == want && lib == oracle;
        notes.push(format!("m={m}: {} preorders", lib.len()));
    }
    let g = g3();
    let space = Space::full(&g).unwrap();
    let report = validate_space(&space, ALL);
    let checks = report.details["checks"].as_array().unwrap().clone();
    for (name, cases) in [
        ("median_defined_symmetric", 2197),
        ("mu1", 169),
        ("mu2", 371_293),
        ("helly", 2197),
        ("rank_distance", 169),
    ] {
        let c = checks.iter().find(|c| c["name"] == name).unwrap();
        let clean = c["failures"] == 0 && c["sampled"] == false && c["checked"] == cases;
        ok &= clean;
        notes.push(format!("{name} {}/{} clean", c["checked"], cases));
    }
    let all = preorders(3);
    let bfs = bfs_distances(&all);
    let mut agree = 0;
    for (i, &x) in all.iter().enumerate() {
        for (j, &y) in all.iter().enumerate() {
            agree += usize::from(space.rank_distance(tp(x), tp(y)) == Some(bfs[i][j]));
        }
    }
    ok &= agree == 169;
    notes.push(format!("rank distance = bfs on {agree}/169 pairs"));
    let mut medians = 0;
    for &x in &all {
        for &y in &all {
            for &z in &all {
                medians += usize::from(space.median(tp(x), tp(y), tp(z)).map(bits) == median(&all, x, y, z, 3));
            }
        }
    }
    ok &= medians == 2197;
    notes.push(format!("median = brute force on {medians}/2197 triples"));
    outcome(ok, notes.join(", "))
}

fn representation() -> Outcome {
    let g = g3();
    let majority = Rule::from_family(
        "majority filters",
        &g,
        FilterFamily::uniform_quota(g.full(), 3, 2).unwrap(),
    )
    .unwrap();
    let comaj = rule("comajority");
    let all = preorders(3);
    let mut mismatches = 0;
    let mut total = 0;
    for p in profiles(&all, 3) {
        let a = eval(&majority, &p);
        let b = eval(&comaj, &p);
        let oracle = comajority(&all, &p, 3).unwrap();
        mismatches += usize::from(a != b || b != oracle);
        total += 1;
    }
    outcome(
        total == 2197 && mismatches == 0,
        format!("{mismatches} mismatches over {total} profiles"),
    )
}

fn sp_mmi() -> Outcome {
    let rules = catalog(&g3(), 3).unwrap();
    let mut disagree = Vec::new();
    let mut mmi_not_sp = Vec::new();
    let mut both_metrics = Vec::new();
    for r in &rules {
        let sp = holds(r, Axiom::Sp(SpMetric::PREORDERS));
        let sp_metric = holds(r, Axiom::Sp(SpMetric::PREORDERS_METRIC));
        let mmi = holds(r, Axiom::Mmi);
        if sp != mmi {
            disagree.push(r.name().to_string());
        }
        if mmi && !sp {
            mmi_not_sp.push(r.name().to_string());
        }
        if (sp && sp_metric) != mmi {
            both_metrics.push(r.name().to_string());
        }
    }
    outcome(
        disagree.is_empty(),
        format!(
            "{} rules; sp != mmi on [{}]; mmi without sp on [{}]; (sp and sp_metric) != mmi on [{}]",
            rules.len(),
            disagree.join(", "),
            mmi_not_sp.join(", "),
            both_metrics.join(", ")
        ),
    )
}

fn naive_bp(r: &Rule, all: &[u64]) -> bool {
    profiles(all, 3).iter().all(|p| {
        let o = eval(r, p);
        (0..3).all(|x| (0..3).all(|y| !p.iter().all(|&q| has(q, x, y)) || has(o, x, y)))
    })
}

fn naive_sp(r: &Rule, all: &[u64]) -> bool {
    let d = bfs_distances(all);
    let idx: HashMap<u64, usize> = all.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    profiles(all, 3).iter().all(|p| {
        let o = idx[&eval(r, p)];
        (0..3).all(|i| {
            all.iter().all(|&lie| {
                let mut q = p.clone();
                q[i] = lie;
                let o2 = idx[&eval(r, &q)];
                let peak = idx[&p[i]];
                o2 == o || d[peak][o2] + d[o2][o] != d[peak][o]
            })
        })
    })
}

fn quota_properties() -> Outcome {
    let all = preorders(3);
    let axioms = [
        Axiom::AmpP,
        Axiom::An,
        Axiom::Id,
        Axiom::Wnt,
        Axiom::Bp,
        Axiom::Sp(SpMetric::PREORDERS),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for q in [2, 3] {
        let r = rule(&format!("quota:q={q}"));
        let failed: Vec<&str> = axioms.iter().filter(|&&a| !holds(&r, a)).map(|a| a.name()).collect();
        let oracle = naive_bp(&r, &all) && naive_sp(&r, &all);
        ok &= failed.is_empty() && oracle;
        notes.push(format!(
            "q={q}: failed [{}], brute-force bp+sp {}",
            failed.join(", "),
            oracle
        ));
    }
    outcome(ok, notes.join("; "))
}

fn filter_bp_and_stalemate() -> Outcome {
    let rules = catalog(&g3(), 3).unwrap();
    let filter_rules: Vec<&Rule> = rules
        .iter()
        .filter(|r| r.name() == "comajority" || r.family().is_some_and(|f| f.all_nontrivial_proper()))
        .collect();
    let all = preorders(3);
    let bp_fail: Vec<&str> = filter_rules
        .iter()
        .filter(|r| !holds(r, Axiom::Bp) || !naive_bp(r, &all))
        .map(|r| r.name())
        .collect();
    let t = Instant::now();
    let q3 = rule("quota:q=3");
    let p = ["a|b|c", "c|a|b", "a|c|b"].map(pref);
    let o = eval(&q3, &p);
    let (a, b) = (0, 1);
    let stalemate = o == universal(3) && p.iter().all(|&r| strict(r, a, b)) && has(o, a, b) && has(o, b, a);
    let report = check_stalemate(&q3, ALL).unwrap();
    let replay_ms = t.elapsed().as_secs_f64() * 1000.0;
    let found = report.verdict.holds();
    outcome(
        bp_fail.is_empty() && stalemate && found && replay_ms < 1000.0,
        format!(
            "bp on {} filter rules, failing [{}]; (a|b|c, c|a|b, a|c|b) -> {}, a>b unanimous and tied: {stalemate}; replay {replay_ms:.1} ms",
            filter_rules.len(),
            bp_fail.join(", "),
            g3().render(tp(o))
        ),
    )
}

fn condorcet() -> Outcome {
    let p = ["a|b|c", "b|c|a", "c|a|b"].map(pref);
    let o = eval(&rule("comajority"), &p);
    outcome(o == universal(3), format!("output {}", g3().render(tp(o))))
}

fn amp_s_implications() -> Outcome {
    let rules = catalog(&g3(), 3).unwrap();
    let report = implication_suite(&rules, ALL).unwrap();
    let rows = report.details["rules"].as_array().unwrap();
    let iia_rows: Vec<_> = rows.iter().filter(|r| r["iia"] == "holds").collect();
    let iia_amp_s = iia_rows.iter().all(|r| r["amp_s_restriction"] == "holds");
    let r3 = &report.details["remark3"][0];
    let computed = ["iiap", "amp_s_restriction", "amp_s_at_profile"]
        .iter()
        .all(|k| r3[*k].is_string())
        && r3["status"].as_str().is_some_and(|s| !s.is_empty());
    outcome(
        rows.len() == rules.len() && !iia_rows.is_empty() && iia_amp_s && computed,
        format!(
            "iia => amp_s on {}/{} iia rules; remark3 iiap {}, amp_s restriction {}, at-profile {}: {}",
            iia_rows.iter().filter(|r| r["amp_s_restriction"] == "holds").count(),
            iia_rows.len(),
            r3["iiap"],
            r3["amp_s_restriction"],
            r3["amp_s_at_profile"],
            r3["status"].as_str().unwrap_or("")
        ),
    )
}

fn constant_universal(r: &Rule, all: &[u64]) -> bool {
    profiles(all, 3).iter().all(|p| eval(r, p) == universal(3))
}

fn impossibility() -> Outcome {
    let all = preorders(3);
    let rules = catalog(&g3(), 3).unwrap();
    let mut broken = Vec::new();
    for r in &rules {
        let iia = holds(r, Axiom::Iia);
        let dict = holds(r, Axiom::Dictator);
        if iia && holds(r, Axiom::Wp) && !dict {
            broken.push(format!("{}: iia+wp not dictatorial", r.name()));
        }
        if iia && holds(r, Axiom::Ws) && !(dict || holds(r, Axiom::InverseDictator) || constant_universal(r, &all)) {
            broken.push(format!("{}: iia+ws outside the trichotomy", r.name()));
        }
        if iia && holds(r, Axiom::S) && holds(r, Axiom::Mdr) {
            broken.push(format!("{}: iia+s+mdr", r.name()));
        }
    }
    let st = rule("stalemate");
    let global =
        holds(&st, Axiom::Iia) && holds(&st, Axiom::Ws) && holds(&st, Axiom::Mdr) && constant_universal(&st, &all);
    if !global {
        broken.push("stalemate rule misses iia+ws+mdr".into());
    }
    outcome(
        broken.is_empty(),
        format!("{} rules, violations [{}]", rules.len(), broken.join("; ")),
    )
}

fn counterexamples() -> Outcome {
    let g = g3();
    let mut notes = Vec::new();
    let bp = rule("bordaproj:i=1");
    let iia = run(&bp, Axiom::Iia);
    let w = iia.witness.clone().unwrap();
    let agenda = g.parse_agenda(&w.agendas[0].join(",")).unwrap();
    let mask: u64 = agenda
        .iter()
        .flat_map(|x| agenda.iter().map(move |y| 1u64 << (8 * x + y)))
        .fold(0, |a, b| a | b);
    let p: Vec<u64> = w.profiles[0].iter().map(|t| pref(t)).collect();
    let q: Vec<u64> = w.profiles[1].iter().map(|t| pref(t)).collect();
    let same = p.iter().zip(&q).all(|(a, b)| a & mask == b & mask);
    let differs = eval(&bp, &p) & mask != eval(&bp, &q) & mask;
    let borda_ok = holds(&bp, Axiom::Iiap) && iia.verdict.fails() && same && differs && replay(&bp, &iia).unwrap();
    notes.push(format!("bordaproj iiap+, iia- replayed: {borda_ok}"));
    let un = rule("un");
    let un_ok = holds(&un, Axiom::Bp) && !holds(&un, Axiom::Wp);
    notes.push(format!("un bp+ wp-: {un_ok}"));
    let lt = rule("lextop:x=a");
    let lt_ok = holds(&lt, Axiom::Wp) && !holds(&lt, Axiom::Bp);
    notes.push(format!("lextop wp+ bp-: {lt_ok}"));
    let fs = rule("fstar");
    let (an, nt) = (holds(&fs, Axiom::An), holds(&fs, Axiom::Nt));
    let fs_ok = holds(&fs, Axiom::Ws) && holds(&fs, Axiom::Mdr) && !(an && nt);
    notes.push(format!("fstar ws+ mdr+ an {an} nt {nt}: {fs_ok}"));
    outcome(borda_ok && un_ok && lt_ok && fs_ok, notes.join(", "))
}

fn determinism() -> Outcome {
    let a = serde_json::to_vec_pretty(&verify::run("all", 42).unwrap()).unwrap();
    let b = serde_json::to_vec_pretty(&verify::run("all", 42).unwrap()).unwrap();
    outcome(a == b, format!("{} bytes, identical: {}", a.len(), a == b))
}

type Check = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, Check); 10] = [
        (1, "structure", 10, structure),
        (2, "representation", 5, representation),
        (3, "sp_iff_mmi", 600, sp_mmi),
        (4, "quota_properties", 900, quota_properties),
        (5, "filter_bp_and_stalemate", 60, filter_bp_and_stalemate),
        (6, "condorcet_stalemate", 1, condorcet),
        (7, "amp_s_implications", 600, amp_s_implications),
        (8, "impossibility", 1800, impossibility),
        (9, "counterexamples", 600, counterexamples),
        (10, "determinism", 600, determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, f) in criteria {
        let t = Instant::now();
        let out = f();
        let elapsed = t.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let passed = out.passed && in_time;
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
        println!(
            "criterion {id:2} {name:24} {}  {:7.2}s / {budget}s  {}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            out.detail
        );
        match known {
            Some((_, expected)) => {
                if passed || !out.detail.contains(expected) || !in_time {
                    unexpected.push(format!("criterion {id}: known discrepancy `{expected}` changed"));
                }
            }
            None if !passed => unexpected.push(format!("criterion {id} failed")),
            None => {}
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria as recorded ({} known red)", KNOWN_RED.len());
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("acceptance: {u}");
        }
        ExitCode::FAILURE
    }
}
