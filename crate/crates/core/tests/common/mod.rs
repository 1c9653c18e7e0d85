//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library's order or lattice code; relations
//! are plain `u64` masks with bit `8x + y` set when `x` is weakly preferred
//! to `y`.

#![allow(dead_code)]

use std::collections::VecDeque;

use stalemate::relation::{Relation, TotalPreorder};

pub fn has(r: u64, x: usize, y: usize) -> bool {
    r >> (8 * x + y) & 1 == 1
}

pub fn is_total_preorder(r: u64, m: usize) -> bool {
    for x in 0..m {
        for y in 0..m {
            if !has(r, x, y) && !has(r, y, x) {
                return false;
            }
            for z in 0..m {
                if has(r, x, y) && has(r, y, z) && !has(r, x, z) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every total preorder on `0..m`, found by filtering all `2^(m*m)` relations.
pub fn preorders(m: usize) -> Vec<u64> {
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|x| (0..m).map(move |y| (x, y))).collect();
    (0u64..1 << cells.len())
        .map(|k| {
            cells
                .iter()
                .enumerate()
                .filter(|(i, _)| k >> i & 1 == 1)
                .fold(0u64, |r, (_, &(x, y))| r | 1 << (8 * x + y))
        })
        .filter(|&r| is_total_preorder(r, m))
        .collect()
}

pub fn subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

pub fn closure(mut r: u64, m: usize) -> u64 {
    loop {
        let mut next = r;
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if has(r, x, y) && has(r, y, z) {
                        next |= 1 << (8 * x + z);
                    }
                }
            }
        }
        if next == r {
            return r;
        }
        r = next;
    }
}

/// Elements of `all` below every element of `items`, and the greatest of
/// them if it exists.
pub fn glb(all: &[u64], items: &[u64]) -> Option<u64> {
    let lower: Vec<u64> = all
        .iter()
        .copied()
        .filter(|&c| items.iter().all(|&i| subset(c, i)))
        .collect();
    lower.iter().copied().find(|&c| lower.iter().all(|&d| subset(d, c)))
}

pub fn join(a: u64, b: u64, m: usize) -> u64 {
    closure(a | b, m)
}

pub fn median(all: &[u64], x: u64, y: u64, z: u64, m: usize) -> Option<u64> {
    glb(all, &[join(x, y, m), join(y, z, m), join(x, z, m)])
}

/// Hasse-diagram distances by breadth-first search over cover pairs.
pub fn bfs_distances(all: &[u64]) -> Vec<Vec<u32>> {
    let n = all.len();
    let covers = |a: u64, b: u64| {
        a != b && subset(a, b) && !all.iter().any(|&c| c != a && c != b && subset(a, c) && subset(c, b))
    };
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| covers(all[i], all[j]) || covers(all[j], all[i]))
                .collect()
        })
        .collect();
    (0..n)
        .map(|s| {
            let mut d = vec![u32::MAX; n];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if d[v] == u32::MAX {
                        d[v] = d[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            d
        })
        .collect()
}

pub fn tp(r: u64) -> TotalPreorder {
    TotalPreorder::from_relation(Relation::from_bits(r)).expect("total preorder")
}

pub fn bits(r: TotalPreorder) -> u64 {
    r.relation().bits()
}

pub fn universal(m: usize) -> u64 {
    (0..m)
        .flat_map(|x| (0..m).map(move |y| (x, y)))
        .fold(0, |r, (x, y)| r | 1 << (8 * x + y))
}

pub fn strict(r: u64, x: usize, y: usize) -> bool {
    has(r, x, y) && !has(r, y, x)
}

/// Every profile of `n` agents over `all`, in mixed-radix order with agent 1
/// as the most significant digit.
pub fn profiles(all: &[u64], n: usize) -> Vec<Vec<u64>> {
    let k = all.len();
    (0..k.pow(n as u32))
        .map(|mut c| {
            let mut p = vec![0; n];
            for slot in p.iter_mut().rev() {
                *slot = all[c % k];
                c /= k;
            }
            p
        })
        .collect()
}

/// Co-majority by definition: the meet, over coalitions holding a strict
/// majority, of the joins of their members' preferences.
pub fn comajority(all: &[u64], p: &[u64], m: usize) -> Option<u64> {
    let n = p.len();
    let joins: Vec<u64> = (1u32..1 << n)
        .filter(|s| 2 * s.count_ones() as usize > n)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).fold(0, |r, i| join(r, p[i], m)))
        .collect();
    glb(all, &joins)
}

pub fn eval(rule: &stalemate::rules::Rule, p: &[u64]) -> u64 {
    let prefs: Vec<TotalPreorder> = p.iter().map(|&r| tp(r)).collect();
    bits(rule.eval(&prefs).expect("rule evaluates"))
}
