//! The semilattice of total preorders on an agenda, and the sum of those
//! semilattices over all nonempty sub-agendas.
//!
//! Both are materialized as a [`Space`]: the enumerated elements in canonical
//! order, an index, and the covering graph with ranks and Hasse distances.
//! Spaces are cached per `(ground, agenda, kind)` and shared read-only.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::relation::{enumerate_on, Agenda, GroundSet, Relation, TotalPreorder, MAX_ENUMERATED};

/// Largest agenda for which the sum of all sub-agenda semilattices is built.
pub const MAX_SUM: usize = 4;

/// A total preorder with exactly two indifference classes, `top` above
/// `bottom`. These are the meet-irreducible elements of `R_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bipartition {
    pub top: Agenda,
    pub bottom: Agenda,
}

impl Bipartition {
    pub fn preorder(self) -> TotalPreorder {
        let mut rel = Relation::universal(self.top).union(Relation::universal(self.bottom));
        for x in self.top.iter() {
            for y in self.bottom.iter() {
                rel = rel.with(x, y);
            }
        }
        TotalPreorder::from_relation(rel).expect("bipartition is a total preorder")
    }

    pub fn agenda(self) -> Agenda {
        self.top.union(self.bottom)
    }

    /// Whether `r ⊆` this bipartition, i.e. `r` ranks all of `top` weakly
    /// above all of `bottom` and strictly so.
    pub fn refined_by(self, r: TotalPreorder) -> bool {
        r.relation().is_subset(self.preorder().relation())
    }
}

/// All ordered bipartitions of `agenda`, ordered by the size of the top
/// block and then lexicographically by the top block's indices.
pub fn bipartitions(agenda: Agenda) -> Vec<Bipartition> {
    let mut tops: Vec<Agenda> = agenda.nonempty_subsets().filter(|s| *s != agenda).collect();
    tops.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
    tops.into_iter()
        .map(|top| Bipartition {
            top,
            bottom: agenda.minus(top),
        })
        .collect()
}

/// Greatest lower bound of total preorders on one agenda, or `None`.
///
/// A lower bound in `R_B` is total, so it exists only if the intersection is
/// total; the intersection is transitive, hence then it is itself the meet.
/// When the intersection is not total the definitional search over `R_B`
/// runs anyway (it finds nothing), which needs `|B| ≤ 5`.
/// The meet of the empty family is universal indifference on `agenda`.
pub fn meet_on(agenda: Agenda, items: &[TotalPreorder]) -> Result<Option<TotalPreorder>> {
    let mut rel = Relation::universal(agenda);
    for r in items {
        rel = rel.intersection(r.relation());
    }
    if let Some(t) = TotalPreorder::from_relation(rel) {
        if t.agenda() == agenda {
            return Ok(Some(t));
        }
    }
    if agenda.len() > MAX_ENUMERATED {
        return Err(Error::GroundTooLarge {
            size: agenda.len(),
            max: MAX_ENUMERATED,
        });
    }
    let ground = GroundSet::letters(crate::relation::MAX_LABELS)?;
    let below: Vec<TotalPreorder> = enumerate_on(&ground, agenda)?
        .into_iter()
        .filter(|c| c.relation().is_subset(rel))
        .collect();
    Ok(below.iter().copied().find(|c| below.iter().all(|d| d.leq(*c))))
}

/// Which family of preorders a [`Space`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// `R_B`: all total preorders on the agenda.
    Preorders,
    /// `⋃_{∅≠C⊆B} R_C` ordered by inclusion of pair sets.
    Sum,
}

/// A materialized semilattice of total preorders.
#[derive(Debug)]
pub struct Space {
    ground: Arc<GroundSet>,
    agenda: Agenda,
    kind: SpaceKind,
    elems: Vec<TotalPreorder>,
    index: HashMap<TotalPreorder, usize>,
    poset: FinitePoset,
}

type CacheKey = (Vec<String>, u8, SpaceKind);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Space>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Space>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl Space {
    /// `R_B` for `B = agenda`, shared through a process-wide cache.
    pub fn preorders(ground: &GroundSet, agenda: Agenda) -> Result<Arc<Space>> {
        Space::cached(ground, agenda, SpaceKind::Preorders)
    }

    /// `R_A` on the whole ground set.
    pub fn full(ground: &GroundSet) -> Result<Arc<Space>> {
        Space::preorders(ground, ground.full())
    }

    /// The sum over all nonempty sub-agendas of `agenda` (`|agenda| ≤ 4`).
    pub fn sum(ground: &GroundSet, agenda: Agenda) -> Result<Arc<Space>> {
        Space::cached(ground, agenda, SpaceKind::Sum)
    }

    fn cached(ground: &GroundSet, agenda: Agenda, kind: SpaceKind) -> Result<Arc<Space>> {
        let key = (ground.labels().to_vec(), agenda.bits(), kind);
        if let Some(s) = cache().lock().expect("space cache").get(&key) {
            return Ok(s.clone());
        }
        let space = Arc::new(Space::build(ground, agenda, kind)?);
        Ok(cache().lock().expect("space cache").entry(key).or_insert(space).clone())
    }

    fn build(ground: &GroundSet, agenda: Agenda, kind: SpaceKind) -> Result<Space> {
        let mut elems = match kind {
            SpaceKind::Preorders => enumerate_on(ground, agenda)?,
            SpaceKind::Sum => {
                if agenda.len() > MAX_SUM {
                    return Err(Error::GroundTooLarge {
                        size: agenda.len(),
                        max: MAX_SUM,
                    });
                }
                let mut all = Vec::new();
                for b in agenda.nonempty_subsets() {
                    all.extend(enumerate_on(ground, b)?);
                }
                all
            }
        };
        let mut keyed: Vec<(String, TotalPreorder)> = elems.drain(..).map(|r| (ground.render(r), r)).collect();
        keyed.sort();
        let elems: Vec<TotalPreorder> = keyed.into_iter().map(|(_, r)| r).collect();
        let index = elems.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let poset = FinitePoset::new(elems.iter().map(|r| r.relation().bits()).collect());
        Ok(Space {
            ground: Arc::new(ground.clone()),
            agenda,
            kind,
            elems,
            index,
            poset,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn agenda(&self) -> Agenda {
        self.agenda
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[TotalPreorder] {
        &self.elems
    }

    pub fn elem(&self, i: usize) -> TotalPreorder {
        self.elems[i]
    }

    pub fn index_of(&self, r: TotalPreorder) -> Option<usize> {
        self.index.get(&r).copied()
    }

    fn idx(&self, r: TotalPreorder) -> usize {
        self.index_of(r)
            .unwrap_or_else(|| panic!("{} is not an element of this space", self.render(r)))
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn render(&self, r: TotalPreorder) -> String {
        self.ground.render(r)
    }

    pub fn top(&self) -> TotalPreorder {
        TotalPreorder::universal(self.agenda).expect("nonempty agenda")
    }

    /// Transitive closure of the union, when it is an element of the space.
    pub fn join(&self, x: TotalPreorder, y: TotalPreorder) -> Option<TotalPreorder> {
        x.join(y).filter(|j| self.index.contains_key(j))
    }

    /// Greatest lower bound of `items`; the empty family's is the top.
    pub fn meet(&self, items: &[TotalPreorder]) -> Option<TotalPreorder> {
        if items.is_empty() {
            return Some(self.top());
        }
        let rel = items.iter().fold(Relation::universal(self.agenda), |acc, r| {
            acc.intersection(r.relation())
        });
        if let Some(t) = TotalPreorder::from_relation(rel) {
            if self.index.contains_key(&t) {
                return Some(t);
            }
        }
        let idx: Vec<usize> = items.iter().map(|r| self.idx(*r)).collect();
        self.poset.glb(&idx).map(|i| self.elems[i])
    }

    /// `(x∨y) ∧ (y∨z) ∧ (x∨z)`, if every operation is defined.
    pub fn median(&self, x: TotalPreorder, y: TotalPreorder, z: TotalPreorder) -> Option<TotalPreorder> {
        let xy = self.join(x, y)?;
        let yz = self.join(y, z)?;
        let xz = self.join(x, z)?;
        self.meet(&[xy, yz, xz])
    }

    /// Median betweenness: `z = μ(x, y, z)`; `None` if the median is undefined.
    pub fn between(&self, x: TotalPreorder, z: TotalPreorder, y: TotalPreorder) -> Option<bool> {
        self.median(x, y, z).map(|m| m == z)
    }

    /// Metric betweenness: `d(x,z) + d(z,y) = d(x,y)`.
    pub fn metric_between(&self, x: TotalPreorder, z: TotalPreorder, y: TotalPreorder) -> bool {
        self.distance(x, z) + self.distance(z, y) == self.distance(x, y)
    }

    pub fn rank(&self, r: TotalPreorder) -> u32 {
        self.poset.rank(self.idx(r))
    }

    /// Hasse-diagram distance.
    pub fn distance(&self, x: TotalPreorder, y: TotalPreorder) -> u32 {
        self.poset
            .distance(self.idx(x), self.idx(y))
            .expect("semilattices with a top are connected")
    }

    /// `2 r(x∨y) − r(x) − r(y)`, when the join exists.
    pub fn rank_distance(&self, x: TotalPreorder, y: TotalPreorder) -> Option<u32> {
        let j = self.join(x, y)?;
        Some(2 * self.rank(j) - self.rank(x) - self.rank(y))
    }

    /// Meet-irreducible elements, computed from the order alone.
    pub fn meet_irreducibles(&self) -> Vec<TotalPreorder> {
        self.poset
            .meet_irreducibles()
            .into_iter()
            .map(|i| self.elems[i])
            .collect()
    }

    pub fn coatoms(&self) -> Vec<TotalPreorder> {
        self.poset.coatoms().into_iter().map(|i| self.elems[i]).collect()
    }

    /// The Hasse diagram in Graphviz DOT format.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph hasse {\n");
        for (i, r) in self.elems.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", self.render(*r));
        }
        for (lo, hi) in self.poset.hasse_edges() {
            let _ = writeln!(out, "  n{lo} -- n{hi};");
        }
        out.push_str("}\n");
        out
    }
}
