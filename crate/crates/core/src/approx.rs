//! Finite universes, subsets, approximation spaces and the lower/upper
//! approximation operators.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// An element of a universe, identified by its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub usize);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

/// An ordered finite set of distinct labels.
#[derive(Clone, Debug)]
pub struct Universe {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Universe { labels, index })
    }

    /// The universe `{1, 2, ..., n}` with decimal labels.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.0]
    }

    pub fn elem(&self, label: &str) -> Option<Elem> {
        self.index.get(label).copied().map(Elem)
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.size()).map(Elem)
    }

    pub(crate) fn check(&self, e: Elem) -> Result<Elem> {
        if e.0 < self.size() {
            Ok(e)
        } else {
            Err(Error::UnknownElement(e))
        }
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for Universe {}

/// Two handles denote the same universe when they carry the same labels in
/// the same order.
pub fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || a.labels == b.labels
}

/// A subset of a universe.
#[derive(Clone)]
pub struct Subset {
    universe: Arc<Universe>,
    bits: BitSet,
}

impl Subset {
    pub fn empty(universe: &Arc<Universe>) -> Self {
        Subset {
            bits: BitSet::empty(universe.size()),
            universe: universe.clone(),
        }
    }

    pub fn full(universe: &Arc<Universe>) -> Self {
        Subset {
            bits: BitSet::full(universe.size()),
            universe: universe.clone(),
        }
    }

    /// Wraps raw bits. Panics if the capacity differs from the universe size.
    pub fn from_bits(universe: &Arc<Universe>, bits: BitSet) -> Self {
        assert_eq!(bits.capacity(), universe.size(), "bit set capacity mismatch");
        Subset {
            universe: universe.clone(),
            bits,
        }
    }

    pub fn from_elems<I: IntoIterator<Item = Elem>>(universe: &Arc<Universe>, elems: I) -> Result<Self> {
        let mut s = Self::empty(universe);
        for e in elems {
            s.bits.insert(universe.check(e)?.0);
        }
        Ok(s)
    }

    pub fn from_labels<'a, I: IntoIterator<Item = &'a str>>(universe: &Arc<Universe>, labels: I) -> Result<Self> {
        let mut s = Self::empty(universe);
        for l in labels {
            let e = universe
                .elem(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            s.bits.insert(e.0);
        }
        Ok(s)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.bits.contains(e.0)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.iter().map(Elem)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.iter().map(|e| self.universe.label(e)).collect()
    }

    fn same(&self, other: &Self) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    fn with_bits(&self, bits: BitSet) -> Self {
        Subset {
            universe: self.universe.clone(),
            bits,
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with_bits(self.bits.union(&other.bits)))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with_bits(self.bits.intersection(&other.bits)))
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with_bits(self.bits.difference(&other.bits)))
    }

    pub fn complement(&self) -> Self {
        self.with_bits(self.bits.complement())
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.same(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }
}

impl PartialEq for Subset {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.bits == other.bits
    }
}

impl Eq for Subset {}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders as `{a b c}`.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.universe.label(e))?;
        }
        f.write_str("}")
    }
}

/// A universe together with a partition of it into equivalence classes.
///
/// Blocks are kept sorted by their smallest member, so `class_of` is the
/// restricted growth string of the partition.
#[derive(Clone)]
pub struct ApproxSpace {
    universe: Arc<Universe>,
    blocks: Vec<BitSet>,
    class_of: Vec<usize>,
}

impl ApproxSpace {
    pub fn new(universe: &Arc<Universe>, blocks: &[Subset]) -> Result<Self> {
        let n = universe.size();
        let mut owner: Vec<Option<usize>> = alloc::vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            if !same_universe(universe, &block.universe) {
                return Err(Error::UniverseMismatch);
            }
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for e in block.iter() {
                if owner[e.0].replace(b).is_some() {
                    return Err(Error::Overlap(e));
                }
            }
        }
        if let Some(x) = owner.iter().position(Option::is_none) {
            return Err(Error::Incomplete(Elem(x)));
        }
        let mut bits: Vec<BitSet> = blocks.iter().map(|b| b.bits.clone()).collect();
        bits.sort_by_key(|b| b.first());
        Ok(Self::from_sorted_blocks(universe, bits))
    }

    /// Builds the space whose class labels are given per element.
    ///
    /// Labels need not be canonical; blocks are renumbered by first occurrence.
    pub fn from_class_labels(universe: &Arc<Universe>, labels: &[usize]) -> Result<Self> {
        if labels.len() != universe.size() {
            return Err(Error::Incomplete(Elem(labels.len().min(universe.size()))));
        }
        let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
        let mut blocks: Vec<BitSet> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            let next = renumber.len();
            let b = *renumber.entry(l).or_insert(next);
            if b == blocks.len() {
                blocks.push(BitSet::empty(universe.size()));
            }
            blocks[b].insert(x);
        }
        Ok(Self::from_sorted_blocks(universe, blocks))
    }

    /// The identity partition: every element is its own class.
    pub fn discrete(universe: &Arc<Universe>) -> Self {
        let labels: Vec<usize> = (0..universe.size()).collect();
        Self::from_class_labels(universe, &labels).expect("sizes agree")
    }

    /// The one-block partition.
    pub fn indiscrete(universe: &Arc<Universe>) -> Self {
        Self::from_class_labels(universe, &alloc::vec![0; universe.size()]).expect("sizes agree")
    }

    fn from_sorted_blocks(universe: &Arc<Universe>, blocks: Vec<BitSet>) -> Self {
        let mut class_of = alloc::vec![0; universe.size()];
        for (b, block) in blocks.iter().enumerate() {
            for x in block.iter() {
                class_of[x] = b;
            }
        }
        ApproxSpace {
            universe: universe.clone(),
            blocks,
            class_of,
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_bits(&self) -> &[BitSet] {
        &self.blocks
    }

    pub fn blocks(&self) -> Vec<Subset> {
        self.blocks
            .iter()
            .map(|b| Subset::from_bits(&self.universe, b.clone()))
            .collect()
    }

    /// Block index of every element (a restricted growth string).
    pub fn class_labels(&self) -> &[usize] {
        &self.class_of
    }

    #[inline]
    pub fn class_index(&self, x: Elem) -> usize {
        self.class_of[x.0]
    }

    #[inline]
    pub fn equivalent(&self, x: Elem, y: Elem) -> bool {
        self.class_of[x.0] == self.class_of[y.0]
    }

    pub fn equivalence_class(&self, x: Elem) -> Result<Subset> {
        self.universe.check(x)?;
        Ok(Subset::from_bits(&self.universe, self.blocks[self.class_of[x.0]].clone()))
    }

    fn check_set(&self, s: &Subset) -> Result<()> {
        if same_universe(&self.universe, &s.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Lower and upper approximation of raw bits, block by block.
    pub fn approx_bits(&self, x: &BitSet) -> (BitSet, BitSet) {
        let n = self.universe.size();
        let mut lower = BitSet::empty(n);
        let mut upper = BitSet::empty(n);
        for block in &self.blocks {
            if block.intersects(x) {
                upper.union_with(block);
                if block.is_subset(x) {
                    lower.union_with(block);
                }
            }
        }
        (lower, upper)
    }

    pub fn lower_bits(&self, x: &BitSet) -> BitSet {
        self.approx_bits(x).0
    }

    pub fn upper_bits(&self, x: &BitSet) -> BitSet {
        self.approx_bits(x).1
    }

    pub fn approximate(&self, x: &Subset) -> Result<ApproxResult> {
        self.check_set(x)?;
        let (lower, upper) = self.approx_bits(&x.bits);
        let boundary = upper.difference(&lower);
        Ok(ApproxResult {
            is_rough: !boundary.is_empty(),
            lower: Subset::from_bits(&self.universe, lower),
            upper: Subset::from_bits(&self.universe, upper),
            boundary: Subset::from_bits(&self.universe, boundary),
        })
    }

    pub fn lower(&self, x: &Subset) -> Result<Subset> {
        self.check_set(x)?;
        Ok(Subset::from_bits(&self.universe, self.lower_bits(&x.bits)))
    }

    pub fn upper(&self, x: &Subset) -> Result<Subset> {
        self.check_set(x)?;
        Ok(Subset::from_bits(&self.universe, self.upper_bits(&x.bits)))
    }

    /// Evaluates the nine approximation laws on the pair `(x, y)`.
    pub fn check_laws(&self, x: &Subset, y: &Subset) -> Result<LawReport> {
        self.check_set(x)?;
        self.check_set(y)?;
        Ok(self.check_laws_bits(&x.bits, &y.bits))
    }

    pub fn check_laws_bits(&self, x: &BitSet, y: &BitSet) -> LawReport {
        let n = self.universe.size();
        let empty = BitSet::empty(n);
        let full = BitSet::full(n);
        let (lx, ux) = self.approx_bits(x);
        let (ly, uy) = self.approx_bits(y);
        let (lu, uu) = self.approx_bits(&x.union(y));
        let (li, ui) = self.approx_bits(&x.intersection(y));
        let (lc, uc) = self.approx_bits(&x.complement());
        let (l_empty, u_empty) = self.approx_bits(&empty);
        let (l_full, u_full) = self.approx_bits(&full);
        let (llx, ulx) = self.approx_bits(&lx);
        let (lux, uux) = self.approx_bits(&ux);

        let results = [
            (ApproxLaw::L1, first_of(&[incl(&lx, x), incl(x, &ux)])),
            (
                ApproxLaw::L2,
                first_of(&[
                    equal(&l_empty, &empty),
                    equal(&u_empty, &empty),
                    equal(&l_full, &full),
                    equal(&u_full, &full),
                ]),
            ),
            (ApproxLaw::L3, incl(&lx.union(&ly), &lu)),
            (ApproxLaw::L4, equal(&li, &lx.intersection(&ly))),
            (ApproxLaw::L5, equal(&uu, &ux.union(&uy))),
            (ApproxLaw::L6, incl(&ui, &ux.intersection(&uy))),
            (
                ApproxLaw::L7,
                first_of(&[equal(&lc, &ux.complement()), equal(&uc, &lx.complement())]),
            ),
            (ApproxLaw::L8, first_of(&[equal(&llx, &lx), equal(&ulx, &lx)])),
            (ApproxLaw::L9, first_of(&[equal(&uux, &ux), equal(&lux, &ux)])),
        ];
        LawReport {
            outcomes: results.map(|(law, witness)| LawOutcome {
                law,
                holds: witness.is_none(),
                witness: witness.map(Elem),
            }),
        }
    }
}

impl fmt::Debug for ApproxSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.blocks()).finish()
    }
}

impl PartialEq for ApproxSpace {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.class_of == other.class_of
    }
}

impl Eq for ApproxSpace {}

/// Smallest element of `a \ b`.
pub(crate) fn incl(a: &BitSet, b: &BitSet) -> Option<usize> {
    a.difference(b).first()
}

/// Smallest element of the symmetric difference.
pub(crate) fn equal(a: &BitSet, b: &BitSet) -> Option<usize> {
    match (incl(a, b), incl(b, a)) {
        (Some(p), Some(q)) => Some(p.min(q)),
        (p, q) => p.or(q),
    }
}

fn first_of(ws: &[Option<usize>]) -> Option<usize> {
    ws.iter().flatten().copied().next()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxResult {
    pub lower: Subset,
    pub upper: Subset,
    pub boundary: Subset,
    pub is_rough: bool,
}

/// The approximation laws.
///
/// * `L1`: lower(X) ⊆ X ⊆ upper(X)
/// * `L2`: ∅ and U are fixed by both operators
/// * `L3`: lower(X ∪ Y) ⊇ lower(X) ∪ lower(Y)
/// * `L4`: lower(X ∩ Y) = lower(X) ∩ lower(Y)
/// * `L5`: upper(X ∪ Y) = upper(X) ∪ upper(Y)
/// * `L6`: upper(X ∩ Y) ⊆ upper(X) ∩ upper(Y)
/// * `L7`: lower(Xᶜ) = upper(X)ᶜ and upper(Xᶜ) = lower(X)ᶜ
/// * `L8`: lower(lower(X)) = lower(X) = upper(lower(X))
/// * `L9`: upper(upper(X)) = upper(X) = lower(upper(X))
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ApproxLaw {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
    L9,
}

impl ApproxLaw {
    pub const ALL: [ApproxLaw; 9] = [
        ApproxLaw::L1,
        ApproxLaw::L2,
        ApproxLaw::L3,
        ApproxLaw::L4,
        ApproxLaw::L5,
        ApproxLaw::L6,
        ApproxLaw::L7,
        ApproxLaw::L8,
        ApproxLaw::L9,
    ];

    pub fn name(self) -> &'static str {
        ["L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9"][self as usize]
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.name().eq_ignore_ascii_case(s))
    }

    pub fn describe(self) -> &'static str {
        [
            "lower(X) ⊆ X ⊆ upper(X)",
            "∅ and U are fixed",
            "lower(X ∪ Y) ⊇ lower(X) ∪ lower(Y)",
            "lower(X ∩ Y) = lower(X) ∩ lower(Y)",
            "upper(X ∪ Y) = upper(X) ∪ upper(Y)",
            "upper(X ∩ Y) ⊆ upper(X) ∩ upper(Y)",
            "complement duality",
            "lower is idempotent and lower sets are exact",
            "upper is idempotent and upper sets are exact",
        ][self as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: ApproxLaw,
    pub holds: bool,
    /// An element on which the two sides disagree.
    pub witness: Option<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub outcomes: [LawOutcome; 9],
}

impl LawReport {
    pub fn all_hold(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds)
    }

    pub fn get(&self, law: ApproxLaw) -> &LawOutcome {
        &self.outcomes[law as usize]
    }
}
