//! Ground sets, agendas, and total preorders.
//!
//! A binary relation over at most [`MAX_LABELS`] alternatives is packed into a
//! single `u64`: byte `x` is the row of alternative `x`, and bit `y` of that
//! row is set when `x ⪰ y`. Join, meet, restriction and closure are then a
//! handful of word operations.
//!
//! A [`TotalPreorder`] may live on any nonempty agenda `B ⊆ A`; its agenda is
//! recovered from the diagonal. This makes every total preorder directly an
//! element of the sum `⋃_B R_B`, ordered by inclusion of pair sets.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest ground set a [`Relation`] can encode.
pub const MAX_LABELS: usize = 8;
/// Largest agenda for which total preorders are enumerated.
pub const MAX_ENUMERATED: usize = 5;

const DIAGONAL: u64 = 0x8040_2010_0804_0201;

/// Ordered collection of distinct alternative labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 3 {
            return Err(Error::GroundTooSmall(labels.len()));
        }
        if labels.len() > MAX_LABELS {
            return Err(Error::GroundTooLarge {
                size: labels.len(),
                max: MAX_LABELS,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(|c| c.is_whitespace() || c == '|' || c == ',') {
                return Err(Error::InvalidLabel(l.clone()));
            }
            if labels[..i].contains(l) {
                return Err(Error::DuplicateGroundLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Parses a comma-separated label list such as `a,b,c`.
    pub fn parse(list: &str) -> Result<Self> {
        GroundSet::new(list.split(',').map(str::trim))
    }

    /// The ground set `{a, b, c, ...}` with `m` single-letter labels.
    pub fn letters(m: usize) -> Result<Self> {
        GroundSet::new((0..m).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> Agenda {
        Agenda::full(self.len())
    }

    /// Parses an agenda written as a comma- or space-separated label list.
    pub fn parse_agenda(&self, text: &str) -> Result<Agenda> {
        let mut agenda = Agenda::EMPTY;
        for tok in text.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let i = self
                .index_of(tok)
                .ok_or_else(|| Error::Parse(format!("unknown label `{tok}`")))?;
            agenda = agenda.with(i);
        }
        if agenda.is_empty() {
            return Err(Error::EmptyAgenda);
        }
        Ok(agenda)
    }

    pub fn agenda_labels(&self, agenda: Agenda) -> Vec<String> {
        agenda.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Renders `r` as `block|block|...`, best block first, labels inside a
    /// block in ground-set order.
    pub fn render(&self, r: TotalPreorder) -> String {
        r.partition()
            .blocks()
            .iter()
            .map(|b| b.iter().map(|i| self.labels[i].as_str()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Parses a total preorder on the whole ground set.
    pub fn parse_preorder(&self, text: &str) -> Result<TotalPreorder> {
        let r = self.parse_partial(text)?;
        if r.agenda() != self.full() {
            let missing: Vec<String> = self.agenda_labels(self.full().minus(r.agenda()));
            return Err(Error::Parse(format!(
                "missing label(s) {} in `{text}`",
                missing.join(", ")
            )));
        }
        Ok(r)
    }

    /// Parses a total preorder whose agenda is the set of labels mentioned.
    pub fn parse_partial(&self, text: &str) -> Result<TotalPreorder> {
        let mut blocks = Vec::new();
        let mut seen = Agenda::EMPTY;
        for raw in text.split('|') {
            let mut block = Agenda::EMPTY;
            for tok in raw.split_whitespace() {
                let i = self
                    .index_of(tok)
                    .ok_or_else(|| Error::Parse(format!("unknown label `{tok}` in `{text}`")))?;
                if seen.contains(i) {
                    return Err(Error::Parse(format!("duplicate label `{tok}` in `{text}`")));
                }
                seen = seen.with(i);
                block = block.with(i);
            }
            if block.is_empty() {
                return Err(Error::Parse(format!("empty block in `{text}`")));
            }
            blocks.push(block);
        }
        Ok(OrderedPartition::new(blocks)?.to_preorder())
    }
}

/// A set of alternatives, as a bitmask over ground-set indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Agenda(u8);

impl Agenda {
    pub const EMPTY: Agenda = Agenda(0);

    pub fn full(m: usize) -> Agenda {
        Agenda(((1u16 << m) - 1) as u8)
    }

    pub fn from_bits(bits: u8) -> Agenda {
        Agenda(bits)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Agenda {
        it.into_iter().fold(Agenda::EMPTY, Agenda::with)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn with(self, i: usize) -> Agenda {
        Agenda(self.0 | (1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Agenda) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Agenda) -> Agenda {
        Agenda(self.0 | other.0)
    }

    pub fn intersection(self, other: Agenda) -> Agenda {
        Agenda(self.0 & other.0)
    }

    pub fn minus(self, other: Agenda) -> Agenda {
        Agenda(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_LABELS).filter(move |&i| self.contains(i))
    }

    /// Every nonempty subset of `self`, in increasing bitmask order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = Agenda> {
        (1..=self.0 as u16)
            .map(|b| Agenda(b as u8))
            .filter(move |b| b.is_subset(self))
    }

    /// The pair mask `self × self`.
    fn square(self) -> u64 {
        let row = self.0 as u64;
        let mut mask = 0u64;
        for i in self.iter() {
            mask |= row << (8 * i);
        }
        mask
    }
}

/// A binary relation on at most eight alternatives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Relation(u64);

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({:#018x})", self.0)
    }
}

impl Relation {
    pub const EMPTY: Relation = Relation(0);

    pub fn from_bits(bits: u64) -> Relation {
        Relation(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn universal(agenda: Agenda) -> Relation {
        Relation(agenda.square())
    }

    pub fn identity(agenda: Agenda) -> Relation {
        Relation(DIAGONAL & agenda.square())
    }

    pub fn contains(self, x: usize, y: usize) -> bool {
        self.0 >> (8 * x + y) & 1 == 1
    }

    pub fn with(self, x: usize, y: usize) -> Relation {
        Relation(self.0 | 1 << (8 * x + y))
    }

    pub fn row(self, x: usize) -> u8 {
        (self.0 >> (8 * x)) as u8
    }

    /// Alternatives related to themselves.
    pub fn support(self) -> Agenda {
        let d = self.0 & DIAGONAL;
        Agenda::from_indices((0..MAX_LABELS).filter(|&i| d >> (9 * i) & 1 == 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Relation) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Relation) -> Relation {
        Relation(self.0 | other.0)
    }

    pub fn intersection(self, other: Relation) -> Relation {
        Relation(self.0 & other.0)
    }

    pub fn difference(self, other: Relation) -> Relation {
        Relation(self.0 & !other.0)
    }

    /// Pairs `(x, y)` with `x ⪰ y` but not `y ⪰ x`.
    pub fn strict_part(self) -> Relation {
        self.difference(self.transpose())
    }

    pub fn restrict(self, agenda: Agenda) -> Relation {
        Relation(self.0 & agenda.square())
    }

    pub fn transpose(self) -> Relation {
        let mut t = 0u64;
        for x in 0..MAX_LABELS {
            let row = self.row(x);
            for y in 0..MAX_LABELS {
                if row >> y & 1 == 1 {
                    t |= 1 << (8 * y + x);
                }
            }
        }
        Relation(t)
    }

    /// Relational composition: `x (self;other) z` iff `x self y other z`.
    pub fn compose(self, other: Relation) -> Relation {
        let mut out = 0u64;
        for x in 0..MAX_LABELS {
            let row = self.row(x);
            if row == 0 {
                continue;
            }
            let mut acc = 0u8;
            for y in 0..MAX_LABELS {
                if row >> y & 1 == 1 {
                    acc |= other.row(y);
                }
            }
            out |= (acc as u64) << (8 * x);
        }
        Relation(out)
    }

    /// Transitive closure by repeated squaring `R ← R ∪ R∘R`.
    pub fn transitive_closure(self) -> Relation {
        let mut r = self;
        loop {
            let next = r.union(r.compose(r));
            if next == r {
                return r;
            }
            r = next;
        }
    }

    pub fn is_transitive(self) -> bool {
        self.compose(self).is_subset(self)
    }

    /// Total on its support: every pair of supported alternatives is related
    /// in at least one direction.
    pub fn is_total(self) -> bool {
        let sq = self.support().square();
        (self.0 | self.transpose().0) & sq == sq
    }

    /// Reflexive, total and transitive on its support, with no pair outside it.
    pub fn is_total_preorder(self) -> bool {
        let support = self.support();
        !support.is_empty() && self.0 & !support.square() == 0 && self.is_total() && self.is_transitive()
    }
}

/// A reflexive, total, transitive relation on a nonempty agenda.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalPreorder(Relation);

impl fmt::Debug for TotalPreorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .partition()
            .blocks()
            .iter()
            .map(|b| b.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "TotalPreorder({})", blocks.join("|"))
    }
}

impl TotalPreorder {
    pub fn from_relation(rel: Relation) -> Option<TotalPreorder> {
        rel.is_total_preorder().then_some(TotalPreorder(rel))
    }

    /// Universal indifference on `agenda`.
    pub fn universal(agenda: Agenda) -> Result<TotalPreorder> {
        if agenda.is_empty() {
            return Err(Error::EmptyAgenda);
        }
        Ok(TotalPreorder(Relation::universal(agenda)))
    }

    /// Alternatives ranked by a key: `x ⪰ y` iff `score(x) >= score(y)`.
    pub fn from_scores(agenda: Agenda, score: impl Fn(usize) -> i64) -> Result<TotalPreorder> {
        if agenda.is_empty() {
            return Err(Error::EmptyAgenda);
        }
        let mut rel = Relation::EMPTY;
        for x in agenda.iter() {
            for y in agenda.iter() {
                if score(x) >= score(y) {
                    rel = rel.with(x, y);
                }
            }
        }
        Ok(TotalPreorder(rel))
    }

    pub fn relation(self) -> Relation {
        self.0
    }

    pub fn agenda(self) -> Agenda {
        self.0.support()
    }

    pub fn weakly_prefers(self, x: usize, y: usize) -> bool {
        self.0.contains(x, y)
    }

    pub fn strictly_prefers(self, x: usize, y: usize) -> bool {
        self.0.contains(x, y) && !self.0.contains(y, x)
    }

    pub fn indifferent(self, x: usize, y: usize) -> bool {
        self.0.contains(x, y) && self.0.contains(y, x)
    }

    pub fn is_linear(self) -> bool {
        self.0.intersection(self.0.transpose()) == Relation::identity(self.agenda())
    }

    /// `self ⊆ other` as pair sets; the order of the (sum) semilattice.
    pub fn leq(self, other: TotalPreorder) -> bool {
        self.0.is_subset(other.0)
    }

    /// The reversed preorder: `y ⪰' x` iff `x ⪰ y`.
    pub fn reversed(self) -> TotalPreorder {
        TotalPreorder(self.0.transpose())
    }

    pub fn restrict(self, agenda: Agenda) -> Result<TotalPreorder> {
        if agenda.is_empty() {
            return Err(Error::EmptyAgenda);
        }
        if !agenda.is_subset(self.agenda()) {
            return Err(Error::AgendaOutsideGround);
        }
        Ok(TotalPreorder(self.0.restrict(agenda)))
    }

    /// Least upper bound under inclusion: the transitive closure of the union.
    ///
    /// On a common agenda this always exists. Across different agendas the
    /// closure is total on the union agenda only in special cases; otherwise
    /// the two elements have several minimal upper bounds and no join.
    pub fn join(self, other: TotalPreorder) -> Option<TotalPreorder> {
        TotalPreorder::from_relation(self.0.union(other.0).transitive_closure())
    }

    pub fn partition(self) -> OrderedPartition {
        let agenda = self.agenda();
        let mut remaining = agenda;
        let mut blocks = Vec::new();
        while !remaining.is_empty() {
            // maximal elements of what is left form the next block
            let top = Agenda::from_indices(
                remaining
                    .iter()
                    .filter(|&x| remaining.iter().all(|y| self.0.contains(x, y))),
            );
            blocks.push(top);
            remaining = remaining.minus(top);
        }
        OrderedPartition { blocks }
    }

    pub fn block_count(self) -> usize {
        self.partition().blocks.len()
    }
}

/// Indifference classes of a total preorder, best class first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedPartition {
    blocks: Vec<Agenda>,
}

impl OrderedPartition {
    pub fn new(blocks: Vec<Agenda>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::EmptyAgenda);
        }
        let mut seen = Agenda::EMPTY;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Parse("empty block".into()));
            }
            if !b.intersection(seen).is_empty() {
                return Err(Error::Parse("blocks overlap".into()));
            }
            seen = seen.union(*b);
        }
        Ok(OrderedPartition { blocks })
    }

    pub fn blocks(&self) -> &[Agenda] {
        &self.blocks
    }

    pub fn agenda(&self) -> Agenda {
        self.blocks.iter().fold(Agenda::EMPTY, |a, b| a.union(*b))
    }

    pub fn to_preorder(&self) -> TotalPreorder {
        let mut rel = Relation::EMPTY;
        let mut at_or_below = self.agenda();
        for b in &self.blocks {
            for x in b.iter() {
                for y in at_or_below.iter() {
                    rel = rel.with(x, y);
                }
            }
            at_or_below = at_or_below.minus(*b);
        }
        TotalPreorder(rel)
    }
}

/// Every total preorder on the full ground set, in canonical order.
pub fn enumerate_preorders(ground: &GroundSet) -> Result<Vec<TotalPreorder>> {
    enumerate_on(ground, ground.full())
}

/// Every total preorder on `agenda`, ordered lexicographically by rendering.
pub fn enumerate_on(ground: &GroundSet, agenda: Agenda) -> Result<Vec<TotalPreorder>> {
    if agenda.is_empty() {
        return Err(Error::EmptyAgenda);
    }
    if !agenda.is_subset(ground.full()) {
        return Err(Error::AgendaOutsideGround);
    }
    let k = agenda.len();
    if k > MAX_ENUMERATED {
        return Err(Error::GroundTooLarge {
            size: k,
            max: MAX_ENUMERATED,
        });
    }
    let elems: Vec<usize> = agenda.iter().collect();
    let mut out = Vec::new();
    // Each surjection onto 0..blocks is one ordered partition.
    let mut level = vec![0usize; k];
    loop {
        let blocks = level.iter().max().map_or(0, |m| m + 1);
        let surjective = (0..blocks).all(|b| level.contains(&b));
        if surjective {
            let parts = (0..blocks)
                .map(|b| Agenda::from_indices((0..k).filter(|&j| level[j] == b).map(|j| elems[j])))
                .collect();
            out.push(OrderedPartition { blocks: parts }.to_preorder());
        }
        let mut pos = 0;
        loop {
            if pos == k {
                let mut keyed: Vec<(String, TotalPreorder)> = out.into_iter().map(|r| (ground.render(r), r)).collect();
                keyed.sort();
                return Ok(keyed.into_iter().map(|(_, r)| r).collect());
            }
            level[pos] += 1;
            if level[pos] < k {
                break;
            }
            level[pos] = 0;
            pos += 1;
        }
    }
}

/// One preference per agent, all on a shared agenda.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    prefs: Vec<TotalPreorder>,
}

impl Profile {
    pub fn new(prefs: Vec<TotalPreorder>) -> Result<Self> {
        if prefs.len() < 3 {
            return Err(Error::Profile(format!("need at least 3 agents, got {}", prefs.len())));
        }
        let agenda = prefs[0].agenda();
        if prefs.iter().any(|p| p.agenda() != agenda) {
            return Err(Error::Profile("preferences are on different agendas".into()));
        }
        Ok(Profile { prefs })
    }

    pub fn agents(&self) -> usize {
        self.prefs.len()
    }

    pub fn prefs(&self) -> &[TotalPreorder] {
        &self.prefs
    }

    pub fn agenda(&self) -> Agenda {
        self.prefs[0].agenda()
    }

    pub fn restrict(&self, agenda: Agenda) -> Result<Profile> {
        let prefs = self
            .prefs
            .iter()
            .map(|p| p.restrict(agenda))
            .collect::<Result<Vec<_>>>()?;
        Ok(Profile { prefs })
    }

    /// Parses a profile file: one preorder per line, agent `k` on the `k`-th
    /// non-comment line. Lines starting with `#` and blank lines are skipped.
    pub fn parse(ground: &GroundSet, text: &str) -> Result<Profile> {
        let prefs = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| ground.parse_preorder(l))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(prefs)
    }

    pub fn render(&self, ground: &GroundSet) -> Vec<String> {
        self.prefs.iter().map(|p| ground.render(*p)).collect()
    }
}

/// A ground set shared between many values.
pub type SharedGround = Arc<GroundSet>;

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> GroundSet {
        GroundSet::letters(3).unwrap()
    }

    #[test]
    fn ground_set_bounds() {
        assert_eq!(GroundSet::letters(2), Err(Error::GroundTooSmall(2)));
        assert!(matches!(
            GroundSet::letters(9),
            Err(Error::GroundTooLarge { size: 9, .. })
        ));
        assert_eq!(
            GroundSet::new(["a", "b", "a"]),
            Err(Error::DuplicateGroundLabel("a".into()))
        );
        assert!(GroundSet::new(["a", "b c", "d"]).is_err());
    }

    #[test]
    fn parse_and_render() {
        let g = abc();
        let chain = g.parse_preorder("a|b|c").unwrap();
        assert!(chain.strictly_prefers(0, 1) && chain.strictly_prefers(1, 2));
        assert!(chain.is_linear());
        let u = g.parse_preorder("a b c").unwrap();
        assert_eq!(u, TotalPreorder::universal(g.full()).unwrap());
        assert_eq!(g.render(g.parse_preorder("c|a b").unwrap()), "c|a b");
        // labels inside a block come out in ground order
        assert_eq!(g.render(g.parse_preorder("c|b a").unwrap()), "c|a b");
    }

    #[test]
    fn parse_errors() {
        let g = abc();
        assert!(matches!(g.parse_preorder("a|d|b c"), Err(Error::Parse(_))));
        assert!(matches!(g.parse_preorder("a|a|b c"), Err(Error::Parse(_))));
        assert!(matches!(g.parse_preorder("a|b"), Err(Error::Parse(_))));
        assert!(matches!(g.parse_preorder("a||b c"), Err(Error::Parse(_))));
        assert!(matches!(g.parse_preorder(""), Err(Error::Parse(_))));
    }

    #[test]
    fn restriction() {
        let g = abc();
        let ac = g.parse_agenda("a,c").unwrap();
        let r = g.parse_preorder("a|b|c").unwrap().restrict(ac).unwrap();
        assert_eq!(g.render(r), "a|c");
        let ab = g.parse_agenda("a,b").unwrap();
        let u = g.parse_preorder("a b c").unwrap().restrict(ab).unwrap();
        assert_eq!(g.render(u), "a b");
        assert_eq!(
            g.parse_preorder("a b c").unwrap().restrict(Agenda::EMPTY),
            Err(Error::EmptyAgenda)
        );
    }

    #[test]
    fn restriction_composes() {
        let g = GroundSet::letters(4).unwrap();
        for r in enumerate_preorders(&g).unwrap() {
            for d in g.full().nonempty_subsets() {
                for c in d.nonempty_subsets() {
                    let twice = r.restrict(d).unwrap().restrict(c).unwrap();
                    assert_eq!(twice, r.restrict(c).unwrap());
                    assert!(twice.relation().is_total_preorder());
                }
            }
        }
    }

    #[test]
    fn enumeration_is_canonical_and_valid() {
        let g = abc();
        let all = enumerate_preorders(&g).unwrap();
        assert_eq!(all.len(), 13);
        assert_eq!(all.iter().filter(|r| r.is_linear()).count(), 6);
        let rendered: Vec<String> = all.iter().map(|r| g.render(*r)).collect();
        let mut sorted = rendered.clone();
        sorted.sort();
        assert_eq!(rendered, sorted);
        assert_eq!(rendered[0], "a b c");
        let g6 = GroundSet::letters(6).unwrap();
        assert!(matches!(
            enumerate_preorders(&g6),
            Err(Error::GroundTooLarge { size: 6, .. })
        ));
    }

    #[test]
    fn partition_round_trip() {
        let g = GroundSet::letters(4).unwrap();
        for r in enumerate_preorders(&g).unwrap() {
            assert_eq!(r.partition().to_preorder(), r);
            assert_eq!(g.parse_preorder(&g.render(r)).unwrap(), r);
        }
    }

    #[test]
    fn join_within_agenda() {
        let g = abc();
        let p = |s: &str| g.parse_preorder(s).unwrap();
        assert_eq!(p("a|b|c").join(p("c|b|a")), Some(p("a b c")));
        assert_eq!(p("a|b|c").join(p("a|c|b")), Some(p("a|b c")));
        assert_eq!(p("b|a c").join(p("b|a c")), Some(p("b|a c")));
    }

    #[test]
    fn join_across_agendas_can_be_undefined() {
        let g = abc();
        let a = g.parse_partial("a").unwrap();
        let b = g.parse_partial("b").unwrap();
        assert_eq!(a.join(b), None);
        let ab = g.parse_partial("a|b").unwrap();
        let bc = g.parse_partial("b|c").unwrap();
        assert_eq!(ab.join(bc).map(|r| g.render(r)), Some("a|b|c".into()));
        let cb = g.parse_partial("c|b").unwrap();
        assert_eq!(ab.join(cb), None);
        let ab_tie = g.parse_partial("a b").unwrap();
        let ac = g.parse_partial("a|c").unwrap();
        assert_eq!(ab_tie.join(ac).map(|r| g.render(r)), Some("a b|c".into()));
        let abc_ = g.parse_partial("b|a|c").unwrap();
        assert_eq!(ab.join(abc_).map(|r| g.render(r)), Some("a b|c".into()));
    }

    #[test]
    fn profile_file() {
        let g = abc();
        let p = Profile::parse(&g, "# cycle\na|b|c\n\nb|c|a\nc|a|b\n").unwrap();
        assert_eq!(p.agents(), 3);
        assert_eq!(p.render(&g), vec!["a|b|c", "b|c|a", "c|a|b"]);
        assert!(Profile::parse(&g, "a|b|c\nb|c|a\n").is_err());
    }
}
