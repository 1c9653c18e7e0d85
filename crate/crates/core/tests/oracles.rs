//! Library results checked against the brute-force implementations in
//! `common`.

mod common;

use std::collections::{BTreeSet, HashMap};

use common::*;
use stalemate::axioms::{check, Axiom, SpMetric};
use stalemate::lattice::Space;
use stalemate::relation::{enumerate_preorders, GroundSet};
use stalemate::report::Quantifier;
use stalemate::rules::Rule;

fn ground(m: usize) -> GroundSet {
    GroundSet::letters(m).unwrap()
}

fn rule(text: &str) -> Rule {
    Rule::parse(text, &ground(3), 3).unwrap()
}

#[test]
fn enumeration_matches_relation_filter() {
    for (m, count) in [(3, 13), (4, 75)] {
        let oracle: BTreeSet<u64> = preorders(m).into_iter().collect();
        let lib: BTreeSet<u64> = enumerate_preorders(&ground(m)).unwrap().into_iter().map(bits).collect();
        assert_eq!(oracle.len(), count);
        assert_eq!(lib, oracle, "m = {m}");
    }
}

#[test]
fn distances_match_bfs() {
    for m in [3, 4] {
        let all = preorders(m);
        let bfs = bfs_distances(&all);
        let space = Space::full(&ground(m)).unwrap();
        for (i, &x) in all.iter().enumerate() {
            for (j, &y) in all.iter().enumerate() {
                assert_eq!(space.distance(tp(x), tp(y)), bfs[i][j]);
                assert_eq!(space.rank_distance(tp(x), tp(y)), Some(bfs[i][j]));
            }
        }
    }
}

#[test]
fn joins_and_medians_match() {
    let m = 3;
    let all = preorders(m);
    let space = Space::full(&ground(m)).unwrap();
    for &x in &all {
        for &y in &all {
            assert_eq!(space.join(tp(x), tp(y)).map(bits), Some(join(x, y, m)));
            for &z in &all {
                let lib = space.median(tp(x), tp(y), tp(z)).map(bits);
                assert_eq!(lib, median(&all, x, y, z, m));
            }
        }
    }
}

#[test]
fn median_laws_hold_on_the_oracle() {
    let m = 3;
    let all = preorders(m);
    let k = all.len();
    let idx: HashMap<u64, usize> = all.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mu: Vec<usize> = (0..k * k * k)
        .map(|c| {
            let (x, y, z) = (all[c / (k * k)], all[c / k % k], all[c % k]);
            idx[&median(&all, x, y, z, m).expect("median exists")]
        })
        .collect();
    let f = |x: usize, y: usize, z: usize| mu[(x * k + y) * k + z];
    for x in 0..k {
        for y in 0..k {
            assert_eq!(f(x, x, y), x);
            for z in 0..k {
                assert_eq!(f(x, y, z), f(y, x, z));
                assert_eq!(f(x, y, z), f(x, z, y));
            }
        }
    }
    for c in 0..k.pow(5) {
        let (x, y, v, w, z) = (c / k.pow(4), c / k.pow(3) % k, c / (k * k) % k, c / k % k, c % k);
        assert_eq!(f(f(x, y, v), f(x, y, w), z), f(f(v, w, z), x, y));
    }
    // meet-Helly: pairwise meets existing forces the triple meet
    for &x in &all {
        for &y in &all {
            for &z in &all {
                let pairwise =
                    glb(&all, &[x, y]).is_some() && glb(&all, &[y, z]).is_some() && glb(&all, &[x, z]).is_some();
                if pairwise {
                    assert!(glb(&all, &[x, y, z]).is_some());
                }
            }
        }
    }
}

#[test]
fn comajority_matches_definition() {
    let m = 3;
    let all = preorders(m);
    let r = rule("comajority");
    for p in profiles(&all, 3) {
        assert_eq!(Some(eval(&r, &p)), comajority(&all, &p, m));
    }
    let cycle = ["a|b|c", "b|c|a", "c|a|b"].map(|t| bits(ground(3).parse_preorder(t).unwrap()));
    assert_eq!(eval(&r, &cycle), universal(3));
}

fn naive_bp(r: &Rule, all: &[u64]) -> bool {
    profiles(all, 3).iter().all(|p| {
        let o = eval(r, p);
        (0..3).all(|x| (0..3).all(|y| !p.iter().all(|&q| has(q, x, y)) || has(o, x, y)))
    })
}

fn naive_wp(r: &Rule, all: &[u64]) -> bool {
    profiles(all, 3).iter().all(|p| {
        let o = eval(r, p);
        (0..3).all(|x| (0..3).all(|y| !p.iter().all(|&q| strict(q, x, y)) || strict(o, x, y)))
    })
}

fn naive_an(r: &Rule, all: &[u64]) -> bool {
    profiles(all, 3).iter().all(|p| {
        let o = eval(r, p);
        [[1, 0, 2], [0, 2, 1], [2, 0, 1]]
            .iter()
            .all(|s| eval(r, &[p[s[0]], p[s[1]], p[s[2]]]) == o)
    })
}

fn naive_id(r: &Rule, all: &[u64]) -> bool {
    all.iter().all(|&x| eval(r, &[x, x, x]) == x)
}

/// Strategy-proofness with geodesic meta-preferences on BFS distances: no
/// agent can move the outcome to one lying strictly on a shortest path from
/// its own preference to the truthful outcome.
fn naive_sp(r: &Rule, all: &[u64]) -> bool {
    let d = bfs_distances(all);
    let idx: HashMap<u64, usize> = all.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    profiles(all, 3).iter().all(|p| {
        let o = idx[&eval(r, p)];
        (0..3).all(|i| {
            let peak = idx[&p[i]];
            all.iter().all(|&lie| {
                let mut q = p.clone();
                q[i] = lie;
                let o2 = idx[&eval(r, &q)];
                o2 == o || d[peak][o2] + d[o2][o] != d[peak][o]
            })
        })
    })
}

/// Monotone independence for every two-block preorder `b`: whether the
/// output refines `b` depends monotonically on the set of agents refining
/// `b`.
fn naive_mmi(r: &Rule, all: &[u64]) -> bool {
    let two_blocks: Vec<u64> = all
        .iter()
        .copied()
        .filter(|&b| b != universal(3) && all.iter().filter(|&&c| subset(b, c)).count() == 2)
        .collect();
    assert_eq!(two_blocks.len(), 6);
    two_blocks.iter().all(|&b| {
        let mut yes = [false; 8];
        let mut no = [false; 8];
        for p in profiles(all, 3) {
            let s = (0..3).filter(|&i| subset(p[i], b)).fold(0, |s, i| s | 1 << i);
            if subset(eval(r, &p), b) {
                yes[s] = true;
            } else {
                no[s] = true;
            }
        }
        (0..8).all(|s| !yes[s] || (0..8).all(|t| s & !t != 0 || !no[t]))
    })
}

fn verdict(r: &Rule, a: Axiom) -> bool {
    let rep = check(r, a, Quantifier::Exhaustive).unwrap();
    assert!(rep.verdict.holds() || rep.verdict.fails());
    rep.verdict.holds()
}

#[test]
fn basic_axioms_match_naive_loops() {
    let all = preorders(3);
    for text in [
        "comajority",
        "quota:q=2",
        "quota:q=3",
        "borda",
        "un",
        "lextop:x=a",
        "dictator:i=2",
        "stalemate",
    ] {
        let r = rule(text);
        assert_eq!(verdict(&r, Axiom::Bp), naive_bp(&r, &all), "{text} bp");
        assert_eq!(verdict(&r, Axiom::Wp), naive_wp(&r, &all), "{text} wp");
        assert_eq!(verdict(&r, Axiom::An), naive_an(&r, &all), "{text} an");
        assert_eq!(verdict(&r, Axiom::Id), naive_id(&r, &all), "{text} id");
    }
}

#[test]
fn sp_and_mmi_match_naive_loops() {
    let all = preorders(3);
    for text in [
        "comajority",
        "quota:q=2",
        "quota:q=3",
        "borda",
        "lextop:x=a",
        "dictator:i=1",
        "fstar",
    ] {
        let r = rule(text);
        assert_eq!(
            verdict(&r, Axiom::Sp(SpMetric::PREORDERS)),
            naive_sp(&r, &all),
            "{text} sp"
        );
        assert_eq!(verdict(&r, Axiom::Mmi), naive_mmi(&r, &all), "{text} mmi");
    }
    assert!(naive_sp(&rule("quota:q=2"), &all));
    assert!(!naive_sp(&rule("borda"), &all));
    assert!(naive_sp(&rule("lextop:x=a"), &all));
    assert!(!naive_mmi(&rule("lextop:x=a"), &all));
}

#[test]
fn stalemate_of_the_unanimity_quota() {
    let g = ground(3);
    let p = ["a|b|c", "c|a|b", "a|c|b"].map(|t| bits(g.parse_preorder(t).unwrap()));
    let o = eval(&rule("quota:q=3"), &p);
    assert_eq!(o, universal(3));
    assert!(p.iter().all(|&q| strict(q, 0, 1)));
    assert!(has(o, 1, 0));
}
