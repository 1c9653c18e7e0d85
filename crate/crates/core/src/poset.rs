//! Finite posets of bitsets ordered by inclusion.
//!
//! Every structure in the crate (total preorders on one agenda, the sum of
//! all agendas, the Boolean lattice of agendas) is a finite family of `u64`
//! bitsets ordered by `⊆`. [`FinitePoset`] computes covers, ranks and Hasse
//! distances for such a family and answers definitional least-upper-bound and
//! greatest-lower-bound queries, without assuming they exist.

use std::collections::VecDeque;

/// Dense bitset over element indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Bits {
        Bits {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }
}

/// A finite family of bitsets under inclusion, with its covering graph.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    items: Vec<u64>,
    /// `up[i]` holds every `j` with `items[i] ⊆ items[j]`, including `i`.
    up: Vec<Bits>,
    down: Vec<Bits>,
    upper_covers: Vec<Vec<u32>>,
    lower_covers: Vec<Vec<u32>>,
    rank: Vec<u32>,
    dist: Vec<u16>,
}

impl FinitePoset {
    /// Builds the poset. Items must be distinct.
    pub fn new(items: Vec<u64>) -> FinitePoset {
        let n = items.len();
        let le = |a: u64, b: u64| a & !b == 0;
        let mut up = vec![Bits::new(n); n];
        let mut down = vec![Bits::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if le(items[i], items[j]) {
                    up[i].set(j);
                    down[j].set(i);
                }
            }
        }
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for i in 0..n {
            for j in up[i].iter() {
                if i == j {
                    continue;
                }
                // j covers i iff nothing lies strictly between them
                let between = up[i].and(&down[j]);
                if between.iter().all(|k| k == i || k == j) {
                    upper_covers[i].push(j as u32);
                    lower_covers[j].push(i as u32);
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| items[i].count_ones());
        let mut rank = vec![0u32; n];
        for &j in &order {
            rank[j] = lower_covers[j].iter().map(|&i| rank[i as usize] + 1).max().unwrap_or(0);
        }
        let mut dist = vec![u16::MAX; n * n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            dist[s * n + s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let d = dist[s * n + v];
                for &w in upper_covers[v].iter().chain(&lower_covers[v]) {
                    let w = w as usize;
                    if dist[s * n + w] == u16::MAX {
                        dist[s * n + w] = d + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        FinitePoset {
            items,
            up,
            down,
            upper_covers,
            lower_covers,
            rank,
            dist,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn item(&self, i: usize) -> u64 {
        self.items[i]
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i].get(j)
    }

    pub fn upper_covers(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.upper_covers[i].iter().map(|&j| j as usize)
    }

    pub fn lower_covers(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.lower_covers[i].iter().map(|&j| j as usize)
    }

    /// Undirected Hasse edges `(lower, upper)`, sorted.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|i| self.upper_covers(i).map(move |j| (i, j)))
            .collect();
        edges.sort_unstable();
        edges
    }

    /// Length of the longest chain from a minimal element up to `i`.
    pub fn rank(&self, i: usize) -> u32 {
        self.rank[i]
    }

    /// Shortest-path length on the Hasse diagram; `None` if disconnected.
    pub fn distance(&self, i: usize, j: usize) -> Option<u32> {
        let d = self.dist[i * self.len() + j];
        (d != u16::MAX).then_some(d as u32)
    }

    /// Minimum of a set of indices, if the set has one.
    fn least(&self, set: &Bits) -> Option<usize> {
        set.iter().find(|&c| set.is_subset(&self.up[c]))
    }

    fn greatest(&self, set: &Bits) -> Option<usize> {
        set.iter().find(|&c| set.is_subset(&self.down[c]))
    }

    /// Least upper bound of `i` and `j`, searched definitionally.
    pub fn lub(&self, i: usize, j: usize) -> Option<usize> {
        self.least(&self.up[i].and(&self.up[j]))
    }

    /// Greatest lower bound of a set; the empty set's is the top element.
    pub fn glb(&self, set: &[usize]) -> Option<usize> {
        let mut lower = Bits::new(self.len());
        for k in 0..self.len() {
            lower.set(k);
        }
        for &i in set {
            lower = lower.and(&self.down[i]);
        }
        self.greatest(&lower)
    }

    /// Whether the elements of `set` have some common lower bound.
    pub fn has_lower_bound(&self, set: &[usize]) -> bool {
        (0..self.len()).any(|u| set.iter().all(|&i| self.le(u, i)))
    }

    pub fn top(&self) -> Option<usize> {
        self.glb(&[])
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower_covers[i].is_empty()).collect()
    }

    /// Elements covered by the top element.
    pub fn coatoms(&self) -> Vec<usize> {
        match self.top() {
            Some(t) => {
                let mut c: Vec<usize> = self.lower_covers(t).collect();
                c.sort_unstable();
                c
            }
            None => Vec::new(),
        }
    }

    /// Elements `x` that are not the meet of any family avoiding `x`.
    ///
    /// Any family with meet `x` lies in the strict up-set of `x`, and then the
    /// whole strict up-set has meet `x` too, so testing that one family is
    /// enough. The top element is the meet of the empty family.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        let top = self.top();
        (0..self.len())
            .filter(|&x| Some(x) != top)
            .filter(|&x| {
                let strict: Vec<usize> = self.up[x].iter().filter(|&j| j != x).collect();
                strict.is_empty() || self.glb(&strict) != Some(x)
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || (0..self.len()).all(|j| self.distance(0, j).is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean(k: u32) -> FinitePoset {
        FinitePoset::new((1..(1u64 << k)).collect())
    }

    #[test]
    fn bits_basics() {
        let mut b = Bits::new(130);
        b.set(3);
        b.set(64);
        b.set(129);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![3, 64, 129]);
        assert!(b.get(64) && !b.get(65));
    }

    #[test]
    fn nonempty_subsets_of_three() {
        let p = boolean(3);
        assert_eq!(p.len(), 7);
        let top = p.top().unwrap();
        assert_eq!(p.item(top), 0b111);
        assert_eq!(p.minimal().len(), 3);
        assert_eq!(p.rank(top), 2);
        // {a} and {b}: join {a,b}, no meet among nonempty sets
        let a = 0;
        let b = 1;
        assert_eq!(p.item(p.lub(a, b).unwrap()), 0b011);
        assert_eq!(p.glb(&[a, b]), None);
        assert_eq!(p.distance(a, b), Some(2));
        assert_eq!(p.coatoms().len(), 3);
        assert_eq!(p.meet_irreducibles(), p.coatoms());
    }

    #[test]
    fn chain_ranks_and_covers() {
        let p = FinitePoset::new(vec![0b1, 0b11, 0b111, 0b1111]);
        assert_eq!((0..4).map(|i| p.rank(i)).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(p.hasse_edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(p.distance(0, 3), Some(3));
        // in a chain every non-top element is meet-irreducible
        assert_eq!(p.meet_irreducibles(), vec![0, 1, 2]);
        assert_eq!(p.coatoms(), vec![2]);
    }

    #[test]
    fn disconnected_distance() {
        let p = FinitePoset::new(vec![0b01, 0b10]);
        assert_eq!(p.distance(0, 1), None);
        assert!(!p.is_connected());
        assert_eq!(p.top(), None);
    }
}
