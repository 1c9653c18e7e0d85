//! Verification suites.
//!
//! Each suite runs the checkers on the shipped rules and records, per claim,
//! whether the computed verdicts match the statement. Statements that
//! quantify over every social welfare function are only tested on the
//! catalog, so those claims are catalog-consistency checks. Claims marked
//! non-gating record open questions or alternative readings; they are
//! reported but do not fail the suite.
//!
//! Output is deterministic: exhaustive checks scan in index order, sampled
//! ones use the suite seed, and no timings are recorded.

use serde_json::{json, Value};

use crate::agenda::{check_amp_p_rule, check_amp_s, implication_suite, Scheme};
use crate::axioms::{self, check, Axiom, SpMetric};
use crate::error::{Error, Result};
use crate::lattice::{bipartitions, Space};
use crate::meta::{induced_meta, is_single_peaked};
use crate::relation::{GroundSet, TotalPreorder};
use crate::report::{CheckReport, Claim, Quantifier, Scope, SuiteReport, Verdict, DEFAULT_SAMPLES};
use crate::rules::{catalog, Rule};
use crate::structure;

/// Suite names accepted by [`run`].
pub const SUITES: [&str; 6] = [
    "structure",
    "theorem1",
    "prop3",
    "impossibility",
    "counterexamples",
    "all",
];

const N: usize = 3;

/// Runs the named suite. `seed` drives every sampled claim.
pub fn run(suite: &str, seed: u64) -> Result<SuiteReport> {
    let claims = match suite {
        "structure" => structure_suite(seed)?,
        "theorem1" => theorem1()?,
        "prop3" => prop3()?,
        "impossibility" => impossibility(seed)?,
        "counterexamples" => counterexamples()?,
        "all" => {
            let mut all = structure_suite(seed)?;
            all.extend(theorem1()?);
            all.extend(prop3()?);
            all.extend(impossibility(seed)?);
            all.extend(counterexamples()?);
            all
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown suite `{other}` (expected one of {})",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport::new(suite, seed, claims))
}

fn claim(suite: &str, id: &str, anchor: &str, passed: bool, evidence: Vec<CheckReport>) -> Claim {
    Claim {
        suite: suite.to_string(),
        id: id.to_string(),
        anchor: anchor.to_string(),
        gating: true,
        passed,
        note: String::new(),
        evidence,
    }
}

fn open(mut c: Claim, note: &str) -> Claim {
    c.gating = false;
    c.note = note.to_string();
    c
}

fn noted(mut c: Claim, note: impl Into<String>) -> Claim {
    c.note = note.into();
    c
}

fn letters(m: usize) -> GroundSet {
    GroundSet::letters(m).expect("small ground set")
}

fn rule(text: &str) -> Result<Rule> {
    Rule::parse(text, &letters(3), N)
}

fn run_check(rule: &Rule, axiom: Axiom) -> Result<CheckReport> {
    check(rule, axiom, Quantifier::Auto)
}

fn sampled(seed: u64) -> Quantifier {
    Quantifier::Sampled {
        samples: DEFAULT_SAMPLES,
        seed,
    }
}

fn structure_suite(seed: u64) -> Result<Vec<Claim>> {
    const S: &str = "structure";
    let g3 = letters(3);
    let g4 = letters(4);
    let full3 = Space::full(&g3)?;
    let full4 = Space::full(&g4)?;
    let mut out = Vec::new();

    out.push(noted(
        claim(
            S,
            "preorder_counts",
            "there are 13 total preorders on three alternatives and 75 on four",
            full3.len() == 13 && full4.len() == 75,
            vec![],
        ),
        format!("{} and {}", full3.len(), full4.len()),
    ));

    let r3 = structure::validate_space(&full3, Quantifier::Exhaustive);
    out.push(claim(
        S,
        "preorders_median_m3",
        "total preorders under inclusion form a median join-semilattice (three alternatives, exhaustive)",
        r3.verdict.holds(),
        vec![r3],
    ));
    let r4 = structure::validate_space(&full4, sampled(seed));
    out.push(claim(
        S,
        "preorders_median_m4",
        "total preorders under inclusion form a median join-semilattice (four alternatives, sampled)",
        !r4.verdict.fails(),
        vec![r4],
    ));
    let sub = structure::validate_subsets(&g3, Quantifier::Exhaustive);
    out.push(claim(
        S,
        "subsets_median",
        "the subsets of the alternatives form a median join-semilattice",
        sub.verdict.holds(),
        vec![sub],
    ));
    let sum = structure::validate_space(&*Space::sum(&g3, g3.full())?, Quantifier::Exhaustive);
    out.push(claim(
        S,
        "sum_median_m3",
        "the union of the preorder semilattices of all agendas is a median join-semilattice",
        sum.verdict.holds(),
        vec![sum],
    ));
    for g in [&g3, &g4] {
        let c = structure::coatomistic(g)?;
        out.push(claim(
            S,
            &format!("coatomistic_m{}", g.len()),
            "the meet-irreducible total preorders are exactly the coatoms (ordered bipartitions)",
            c.verdict.holds(),
            vec![c],
        ));
    }
    for (space, m) in [(&full3, 3usize), (&full4, 4)] {
        let irr = space.meet_irreducibles();
        let mut bips: Vec<TotalPreorder> = bipartitions(space.agenda()).into_iter().map(|b| b.preorder()).collect();
        let mut sorted = irr.clone();
        sorted.sort();
        bips.sort();
        out.push(noted(
            claim(
                S,
                &format!("bipartitions_m{m}"),
                "the meet-irreducibles are the two-class preorders",
                sorted == bips,
                vec![],
            ),
            format!("{} meet-irreducibles", irr.len()),
        ));
    }

    let mut bad = Vec::new();
    for &peak in full3.elems() {
        let meta = induced_meta(&full3, peak);
        match is_single_peaked(&full3, &|a, b| meta.weakly_prefers(a, b)) {
            Ok(top) if top == peak => {}
            _ => bad.push(full3.render(peak)),
        }
    }
    let mut c = claim(
        S,
        "induced_meta_single_peaked",
        "the geodesic meta-preference peaked at any preorder is single-peaked with that peak",
        bad.is_empty(),
        vec![],
    );
    if !bad.is_empty() {
        c.note = format!("fails at peaks {}", bad.join(", "));
    }
    out.push(c);
    Ok(out)
}

fn theorem1() -> Result<Vec<Claim>> {
    const S: &str = "theorem1";
    let g = letters(3);
    let mut out = Vec::new();
    for r in catalog::catalog(&g, N)? {
        let sp = axioms::check_sp(&r, SpMetric::PREORDERS, Quantifier::Auto)?;
        let mmi = axioms::check_mmi(&r, Quantifier::Auto)?;
        let metric = axioms::check_sp(&r, SpMetric::PREORDERS_METRIC, Quantifier::Auto)?;
        let note = format!(
            "sp {}, sp_metric {}, mmi {}",
            sp.verdict.as_str(),
            metric.verdict.as_str(),
            mmi.verdict.as_str()
        );
        out.push(noted(
            claim(
                S,
                &format!("sp_iff_mmi/{}", r.name()),
                "strategy-proofness on the induced single-peaked domain iff monotonic independence on bipartitions",
                sp.verdict == mmi.verdict,
                vec![sp.clone(), mmi.clone()],
            ),
            note.clone(),
        ));
        out.push(noted(
            claim(
                S,
                &format!("mmi_implies_sp/{}", r.name()),
                "monotonic independence on bipartitions implies strategy-proofness on every rich single-peaked domain, \
                 in particular the induced one",
                !mmi.verdict.holds() || sp.verdict.holds(),
                vec![],
            ),
            note.clone(),
        ));
        let both = sp.verdict.holds() && metric.verdict.holds();
        out.push(open(
            claim(
                S,
                &format!("sp_two_domains_iff_mmi/{}", r.name()),
                "strategy-proofness on the domain of geodesic and distance-ranked meta-preferences iff monotonic \
                 independence on bipartitions",
                both == mmi.verdict.holds(),
                vec![metric],
            ),
            &format!("{note}; both meta-preference families are single-peaked with the same peaks"),
        ));
    }
    for r in catalog::filter_rules(&g, N)? {
        let rep = axioms::check_representation(&r, Quantifier::Auto)?;
        out.push(claim(
            S,
            &format!("representation/{}", r.name()),
            "a rule built from order filters equals the meet formula over the filters extracted from its behaviour",
            rep.verdict.holds(),
            vec![rep],
        ));
    }

    let q2 = rule("quota:q=2")?;
    let co = rule("comajority")?;
    let size = q2.profiles().exact_size()?;
    let ps = q2.profiles();
    let mut mismatches = 0u64;
    for idx in 0..size {
        let p = ps.prefs(&ps.decode(idx));
        if q2.eval(&p)? != co.eval(&p)? {
            mismatches += 1;
        }
    }
    out.push(noted(
        claim(
            S,
            "majority_filters_are_comajority",
            "the rule with majority filters on every bipartition is the co-majority rule",
            mismatches == 0,
            vec![],
        ),
        format!("{mismatches} mismatches over {size} profiles"),
    ));

    let borda = rule("borda")?;
    let ev = vec![
        axioms::check_sp(&borda, SpMetric::PREORDERS, Quantifier::Auto)?,
        axioms::check_mmi(&borda, Quantifier::Auto)?,
        axioms::check_representation(&borda, Quantifier::Auto)?,
    ];
    out.push(claim(
        S,
        "borda_not_representable",
        "Borda count fails strategy-proofness and monotonic independence and has no filter representation",
        ev.iter().all(|r| r.verdict.fails()),
        ev,
    ));

    let st = rule("stalemate")?;
    let family = axioms::extract_family(&st, Quantifier::Auto)?;
    let empty = family.filters().iter().all(|f| f.is_empty());
    let ev = vec![
        axioms::check_sp(&st, SpMetric::PREORDERS, Quantifier::Auto)?,
        axioms::check_mmi(&st, Quantifier::Auto)?,
        axioms::check_representation(&st, Quantifier::Auto)?,
    ];
    out.push(claim(
        S,
        "stalemate_empty_filters",
        "the global stalemate is strategy-proof and represented by empty filters",
        empty && ev.iter().all(|r| r.verdict.holds()),
        ev,
    ));
    Ok(out)
}

fn prop3() -> Result<Vec<Claim>> {
    const S: &str = "prop3";
    let g = letters(3);
    let mut out = Vec::new();
    for q in [2, 3] {
        let r = rule(&format!("quota:q={q}"))?;
        let fam = r.family().expect("quota rules are filter rules");
        out.push(claim(
            S,
            &format!("quota{q}/positive_weakly_neutral"),
            "uniform quota rules are positive and weakly neutral",
            fam.is_positive_quota() && fam.is_weakly_neutral(),
            vec![],
        ));
        for axiom in [
            Axiom::AmpP,
            Axiom::An,
            Axiom::Id,
            Axiom::Wnt,
            Axiom::Bp,
            Axiom::Sp(SpMetric::PREORDERS),
        ] {
            let rep = run_check(&r, axiom)?;
            out.push(claim(
                S,
                &format!("quota{q}/{}", axiom.name()),
                "positive weakly neutral quota rules satisfy AMP_P, AN, ID, WNT, BP and strategy-proofness",
                rep.verdict.holds(),
                vec![rep],
            ));
        }
        let rep = run_check(&r, Axiom::Sp(SpMetric::SUM))?;
        out.push(open(
            claim(
                S,
                &format!("quota{q}/sp_sum"),
                "strategy-proofness with meta-preferences measured in the union of all agenda semilattices",
                rep.verdict.holds(),
                vec![rep],
            ),
            "alternative reading: distances between preorders on the whole agenda taken in the union of all \
             agenda semilattices, where paths may pass through smaller agendas",
        ));
    }

    let mut bp = Vec::new();
    for r in catalog::filter_rules(&g, N)? {
        if r.family().is_some_and(|f| f.all_nontrivial_proper()) {
            bp.push(run_check(&r, Axiom::Bp)?);
        }
    }
    out.push(claim(
        S,
        "filters_nontrivial_proper_bp",
        "rules whose filters are all nontrivial and proper satisfy BP",
        !bp.is_empty() && bp.iter().all(|r| r.verdict.holds()),
        bp,
    ));

    let q3 = rule("quota:q=3")?;
    let prof: Vec<TotalPreorder> = ["a|b|c", "c|a|b", "a|c|b"]
        .iter()
        .map(|t| g.parse_partial(t))
        .collect::<Result<_>>()?;
    let o = q3.eval(&prof)?;
    let (a, b) = (0, 1);
    let unanimous = prof.iter().all(|r| r.strictly_prefers(a, b));
    let tied = o.weakly_prefers(a, b) && o.weakly_prefers(b, a);
    out.push(noted(
        claim(
            S,
            "unanimity_quota_stalemate",
            "the unanimity quota rule has a stalemate: a unanimously strict pair inside an output indifference class",
            o == TotalPreorder::universal(g.full())? && unanimous && tied,
            vec![axioms::check_stalemate(&q3, Quantifier::Auto)?],
        ),
        format!("a|b|c, c|a|b, a|c|b -> {}", g.render(o)),
    ));

    let mut amp = Vec::new();
    for r in catalog::catalog(&g, N)? {
        amp.push(check_amp_p_rule(&r, Quantifier::Auto)?);
    }
    out.push(claim(
        S,
        "decomposable_amp_p",
        "a PAFE whose agenda rule and welfare function ignore each other's inputs is AMP_P",
        amp.iter().all(|r| r.verdict.holds()),
        amp,
    ));
    Ok(out)
}

/// Verdicts of one catalog rule on the axioms used by the impossibility claims.
struct Row {
    name: String,
    iia: bool,
    wp: bool,
    ws: bool,
    ls: bool,
    s: bool,
    id: bool,
    an: bool,
    nt: bool,
    mdr: bool,
    dictator: bool,
    inverse: bool,
    global_stalemate: bool,
}

impl Row {
    fn new(r: &Rule) -> Result<Row> {
        let h = |a| -> Result<bool> { Ok(run_check(r, a)?.verdict.holds()) };
        let universal = r
            .space()
            .index_of(TotalPreorder::universal(r.agenda())?)
            .expect("on agenda") as u16;
        Ok(Row {
            name: r.name().to_string(),
            iia: h(Axiom::Iia)?,
            wp: h(Axiom::Wp)?,
            ws: h(Axiom::Ws)?,
            ls: h(Axiom::Ls)?,
            s: h(Axiom::S)?,
            id: h(Axiom::Id)?,
            an: h(Axiom::An)?,
            nt: h(Axiom::Nt)?,
            mdr: h(Axiom::Mdr)?,
            dictator: h(Axiom::Dictator)?,
            inverse: h(Axiom::InverseDictator)?,
            global_stalemate: r.table()?.iter().all(|&o| o == universal),
        })
    }

    fn json(&self) -> Value {
        json!({
            "rule": self.name, "iia": self.iia, "wp": self.wp, "ws": self.ws, "ls": self.ls, "s": self.s,
            "id": self.id, "an": self.an, "nt": self.nt, "mdr": self.mdr, "dictator": self.dictator,
            "inverse_dictator": self.inverse, "global_stalemate": self.global_stalemate,
        })
    }
}

fn table(id: &str, rows: &[Row], bad: &[&Row]) -> CheckReport {
    let verdict = if bad.is_empty() { Verdict::Holds } else { Verdict::Fails };
    CheckReport::new(
        id,
        "catalog",
        Scope::exhaustive(3, Some(N), 13u64.pow(N as u32)),
        verdict,
    )
    .detail("rules", rows.iter().map(Row::json).collect::<Vec<_>>())
    .detail("violations", bad.iter().map(|r| r.name.clone()).collect::<Vec<_>>())
}

fn implication(suite: &str, id: &str, anchor: &str, rows: &[Row], holds: impl Fn(&Row) -> bool) -> Claim {
    let bad: Vec<&Row> = rows.iter().filter(|r| !holds(r)).collect();
    claim(suite, id, anchor, bad.is_empty(), vec![table(id, rows, &bad)])
}

fn impossibility(seed: u64) -> Result<Vec<Claim>> {
    const S: &str = "impossibility";
    let g = letters(3);
    let rules = catalog::catalog(&g, N)?;
    let rows: Vec<Row> = rules.iter().map(Row::new).collect::<Result<_>>()?;
    let mut out = vec![
        implication(
            S,
            "arrow",
            "IIA and WP hold iff the rule is dictatorial (catalog consistency)",
            &rows,
            |r| (r.iia && r.wp) == r.dictator,
        ),
        implication(
            S,
            "non_constancy",
            "IIA, LS and not inversely dictatorial hold iff the rule is dictatorial (catalog consistency)",
            &rows,
            |r| (r.iia && r.ls && !r.inverse) == r.dictator,
        ),
        implication(
            S,
            "iia_ws_trichotomy",
            "IIA and WS imply dictatorial, inversely dictatorial or the global stalemate (catalog consistency)",
            &rows,
            |r| !(r.iia && r.ws) || r.dictator || r.inverse || r.global_stalemate,
        ),
        implication(
            S,
            "iia_an_nt_stalemate",
            "IIA, AN and NT imply the global stalemate (catalog consistency)",
            &rows,
            |r| !(r.iia && r.an && r.nt) || r.global_stalemate,
        ),
        implication(
            S,
            "iia_ws_mdr_stalemate",
            "IIA, WS and MDR hold iff the rule is the global stalemate (catalog consistency)",
            &rows,
            |r| (r.iia && r.ws && r.mdr) == r.global_stalemate,
        ),
        implication(
            S,
            "no_iia_s_mdr",
            "no rule satisfies IIA, S and MDR; in particular none satisfies ID, IIA and MDR (catalog consistency)",
            &rows,
            |r| !(r.iia && r.s && r.mdr) && !(r.id && r.iia && r.mdr),
        ),
    ];
    let st = rows
        .iter()
        .find(|r| r.name == "stalemate")
        .expect("catalog has the stalemate");
    out.push(claim(
        S,
        "stalemate_iia_ws_mdr",
        "the global stalemate satisfies IIA, WS and MDR and is not dictatorial",
        st.iia && st.ws && st.mdr && !st.dictator,
        vec![],
    ));

    let mut ultra = Vec::new();
    let mut ok = true;
    for (r, row) in rules.iter().zip(&rows) {
        if row.iia && (row.wp || row.id) {
            let d = axioms::check_decisive(r, Quantifier::Auto)?;
            ok &= d.verdict.holds() && !d.details["principal"].is_null();
            ultra.push(d);
        }
    }
    out.push(claim(
        S,
        "decisive_ultrafilter",
        "under IIA with WP or ID the decisive coalitions form a principal ultrafilter (catalog consistency)",
        ok && !ultra.is_empty(),
        ultra,
    ));

    let co = rule("comajority")?;
    let st3 = axioms::check_stalemate(&co, Quantifier::Auto)?;
    let verdict = st3.verdict.as_str().to_string();
    out.push(open(
        claim(
            S,
            "comajority_stalemate_m3",
            "whether the co-majority rule has a stalemate with three alternatives",
            st3.verdict.holds(),
            vec![st3],
        ),
        &format!("exhaustive search over three alternatives: {verdict}"),
    ));
    let co4 = Rule::parse("comajority", &letters(4), N)?;
    let st4 = axioms::check_stalemate(&co4, sampled(seed))?;
    out.push(open(
        claim(
            S,
            "comajority_stalemate_m4",
            "whether the co-majority rule has a stalemate with four alternatives",
            st4.verdict.holds(),
            vec![st4],
        ),
        "sampled search over four alternatives",
    ));
    Ok(out)
}

fn counterexamples() -> Result<Vec<Claim>> {
    const S: &str = "counterexamples";
    let g = letters(3);
    let mut out = Vec::new();

    let bc = rule("bordaproj:i=1")?;
    let iiap = run_check(&bc, Axiom::Iiap)?;
    let iia = run_check(&bc, Axiom::Iia)?;
    let replays = axioms::replay(&bc, &iia)?;
    out.push(claim(
        S,
        "borda_projective",
        "the projective Borda rule satisfies IIAP and violates IIA",
        iiap.verdict.holds() && iia.verdict.fails() && replays,
        vec![iiap, iia],
    ));

    let un = rule("un")?;
    let ev = vec![run_check(&un, Axiom::Bp)?, run_check(&un, Axiom::Wp)?];
    out.push(claim(
        S,
        "unanimity_or_indifference",
        "the rule returning the common preorder, else universal indifference, satisfies BP and violates WP",
        ev[0].verdict.holds() && ev[1].verdict.fails(),
        ev,
    ));

    let lex = rule("lextop:x=a")?;
    let ev = vec![run_check(&lex, Axiom::Wp)?, run_check(&lex, Axiom::Bp)?];
    out.push(claim(
        S,
        "lexicographic_top",
        "the least linear extension of the unanimous strict preferences with a fixed top satisfies WP and violates BP",
        ev[0].verdict.holds() && ev[1].verdict.fails(),
        ev,
    ));

    let fstar = rule("fstar")?;
    let ev: Vec<CheckReport> = [Axiom::Ws, Axiom::Mdr, Axiom::An, Axiom::Nt]
        .into_iter()
        .map(|a| run_check(&fstar, a))
        .collect::<Result<_>>()?;
    out.push(claim(
        S,
        "ws_mdr_without_an_nt",
        "WS and MDR do not imply AN and NT: the pair-then-third rule satisfies WS and MDR and violates AN or NT",
        ev[0].verdict.holds() && ev[1].verdict.holds() && (ev[2].verdict.fails() || ev[3].verdict.fails()),
        ev,
    ));

    let rules = catalog::catalog(&g, N)?;
    let rows: Vec<Row> = rules.iter().map(Row::new).collect::<Result<_>>()?;
    out.push(implication(
        S,
        "axiom_implications",
        "S implies WS, LS implies WS, AN and NT imply WS and MDR, ID implies S (catalog consistency)",
        &rows,
        |r| (!r.s || r.ws) && (!r.ls || r.ws) && (!(r.an && r.nt) || (r.ws && r.mdr)) && (!r.id || r.s),
    ));

    let suite = implication_suite(&rules, Quantifier::Auto)?;
    let st = rule("stalemate")?;
    let per = check_amp_s(&st, &Scheme::PerAgenda, Quantifier::Auto)?;
    let co_per = check_amp_s(&rule("comajority")?, &Scheme::PerAgenda, Quantifier::Auto)?;
    out.push(claim(
        S,
        "iia_amp_s_iiap",
        "IIA implies AMP_S and AMP_S implies IIAP, with AMP_S on the family of restrictions (catalog consistency)",
        suite.verdict.holds() && per.verdict.holds(),
        vec![suite.clone(), per, co_per],
    ));

    let remark3 = suite.details["remark3"].as_array().cloned().unwrap_or_default();
    let row = remark3.first().cloned().unwrap_or(Value::Null);
    let iiap_violated = row["iiap_violated"].as_bool().unwrap_or(false);
    let amp_s = row["amp_s_under_either_reading"].as_bool().unwrap_or(false);
    let status = row["status"]
        .as_str()
        .unwrap_or("remark3 rule missing from the catalog")
        .to_string();
    out.push(noted(
        claim(
            S,
            "remark3_iiap",
            "the switching rule (R* when some other agent matches R* off B*, else agent i) violates IIAP",
            iiap_violated,
            vec![],
        ),
        status.clone(),
    ));
    out.push(open(
        claim(S, "remark3_amp_s", "the switching rule is AMP_S", amp_s, vec![]),
        &status,
    ));
    let at_profile = suite.details["at_profile_anomalies"].clone();
    let n_anomalies = at_profile.as_array().map_or(0, Vec::len);
    out.push(open(
        claim(
            S,
            "amp_s_at_profile_implies_iiap",
            "AMP_S read at the given profile implies IIAP",
            n_anomalies == 0,
            vec![],
        ),
        &format!(
            "read at the profile, AMP_S holds for every rule; IIAP fails for {n_anomalies} catalog rules: {at_profile}"
        ),
    ));
    Ok(out)
}
