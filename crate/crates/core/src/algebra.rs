//! Partial outer Cayley tables and tri-valued evaluation of the classical
//! axioms C1–C5 and their anti-laws C6–C10.
//!
//! A table is defined on `carrier × carrier` for a carrier `S ⊆ U`; each
//! entry is an element of `U` (possibly outside `S`) or the indeterminate
//! marker. Composite expressions are undefined as soon as an intermediate
//! result is indeterminate or leaves the carrier.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::approx::{incl, same_universe, ApproxSpace, Elem, Subset, Universe};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// One table entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Value(Elem),
    Indet,
}

impl Cell {
    pub fn value(self) -> Option<Elem> {
        match self {
            Cell::Value(e) => Some(e),
            Cell::Indet => None,
        }
    }
}

const NOT_IN_CARRIER: usize = usize::MAX;

/// A binary operation table on a carrier subset of a universe.
#[derive(Clone)]
pub struct OpTable {
    universe: Arc<Universe>,
    carrier: BitSet,
    elems: Vec<Elem>,
    pos: Vec<usize>,
    cells: Vec<Cell>,
}

impl OpTable {
    /// Builds a table from `(x, y, x*y)` triples covering `carrier × carrier`
    /// exactly once.
    pub fn from_entries<I>(carrier: &Subset, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Elem, Elem, Cell)>,
    {
        let mut table = Self::skeleton(carrier)?;
        let k = table.elems.len();
        let mut seen = vec![false; k * k];
        for (x, y, c) in entries {
            let (px, py) = match (table.position(x), table.position(y)) {
                (Some(px), Some(py)) => (px, py),
                _ => return Err(Error::ExtraEntry(x, y)),
            };
            if core::mem::replace(&mut seen[px * k + py], true) {
                return Err(Error::ExtraEntry(x, y));
            }
            table.cells[px * k + py] = table.check_cell(c)?;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::MissingEntry(table.elems[i / k], table.elems[i % k]));
        }
        Ok(table)
    }

    pub fn from_fn(carrier: &Subset, mut f: impl FnMut(Elem, Elem) -> Cell) -> Result<Self> {
        let mut table = Self::skeleton(carrier)?;
        let k = table.elems.len();
        for i in 0..k * k {
            let c = f(table.elems[i / k], table.elems[i % k]);
            table.cells[i] = table.check_cell(c)?;
        }
        Ok(table)
    }

    /// Builds a table from row-major cells without validating values.
    pub(crate) fn from_cells_unchecked(universe: &Arc<Universe>, carrier: &BitSet, cells: Vec<Cell>) -> Self {
        let carrier = Subset::from_bits(universe, carrier.clone());
        let mut t = Self::skeleton(&carrier).expect("nonempty carrier");
        debug_assert_eq!(cells.len(), t.cells.len());
        t.cells = cells;
        t
    }

    fn skeleton(carrier: &Subset) -> Result<Self> {
        if carrier.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let universe = carrier.universe().clone();
        let elems: Vec<Elem> = carrier.iter().collect();
        let mut pos = vec![NOT_IN_CARRIER; universe.size()];
        for (i, e) in elems.iter().enumerate() {
            pos[e.0] = i;
        }
        let k = elems.len();
        Ok(OpTable {
            universe,
            carrier: carrier.bits().clone(),
            elems,
            pos,
            cells: vec![Cell::Indet; k * k],
        })
    }

    fn check_cell(&self, c: Cell) -> Result<Cell> {
        match c {
            Cell::Value(e) if e.0 >= self.universe.size() => Err(Error::UnknownResultLabel(e)),
            c => Ok(c),
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn carrier(&self) -> Subset {
        Subset::from_bits(&self.universe, self.carrier.clone())
    }

    pub fn carrier_bits(&self) -> &BitSet {
        &self.carrier
    }

    /// Carrier members in universe order.
    pub fn carrier_elems(&self) -> &[Elem] {
        &self.elems
    }

    /// Number of carrier elements.
    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// Row-major cells in carrier order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    #[inline]
    pub fn in_carrier(&self, e: Elem) -> bool {
        self.pos.get(e.0).is_some_and(|&p| p != NOT_IN_CARRIER)
    }

    #[inline]
    fn position(&self, e: Elem) -> Option<usize> {
        self.pos.get(e.0).copied().filter(|&p| p != NOT_IN_CARRIER)
    }

    /// The entry at `(x, y)`, or `None` when either operand is off the carrier.
    #[inline]
    pub fn get(&self, x: Elem, y: Elem) -> Option<Cell> {
        let (px, py) = (self.position(x)?, self.position(y)?);
        Some(self.cells[px * self.elems.len() + py])
    }

    /// `x * y` when it is defined and determinate.
    #[inline]
    pub fn product(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.get(x, y).and_then(Cell::value)
    }

    /// `(x * y) * z`, undefined if `x * y` is indeterminate or off the carrier.
    pub fn left_assoc(&self, x: Elem, y: Elem, z: Elem) -> Option<Elem> {
        self.product(self.product(x, y)?, z)
    }

    /// `x * (y * z)`.
    pub fn right_assoc(&self, x: Elem, y: Elem, z: Elem) -> Option<Elem> {
        self.product(x, self.product(y, z)?)
    }

    fn require_in_carrier(&self, s: &Subset) -> Result<()> {
        if !same_universe(&self.universe, s.universe()) {
            return Err(Error::UniverseMismatch);
        }
        match s.iter().find(|&e| !self.in_carrier(e)) {
            Some(e) => Err(Error::NotInCarrier(e)),
            None => Ok(()),
        }
    }

    /// `{e ∈ S : x*e = e*x = x}`.
    pub fn local_neutrals(&self, x: Elem) -> Result<Subset> {
        if !self.in_carrier(x) {
            return Err(Error::NotInCarrier(x));
        }
        let bits = BitSet::from_indices(
            self.universe.size(),
            self.local_neutral_iter(x).map(Elem::index),
        );
        Ok(Subset::from_bits(&self.universe, bits))
    }

    fn local_neutral_iter(&self, x: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.elems
            .iter()
            .copied()
            .filter(move |&e| self.product(x, e) == Some(x) && self.product(e, x) == Some(x))
    }

    /// Elements that are a local neutral of at least one carrier element.
    pub fn neutral_pool(&self) -> Subset {
        let mut bits = BitSet::empty(self.universe.size());
        for &x in &self.elems {
            for e in self.local_neutral_iter(x) {
                bits.insert(e.0);
            }
        }
        Subset::from_bits(&self.universe, bits)
    }

    /// The two-sided identity of the whole carrier, if any.
    pub fn global_identity(&self) -> Option<Elem> {
        self.elems.iter().copied().find(|&e| {
            self.elems
                .iter()
                .all(|&x| self.product(x, e) == Some(x) && self.product(e, x) == Some(x))
        })
    }

    fn has_inverse_to(&self, x: Elem, e: Elem) -> bool {
        self.elems
            .iter()
            .any(|&u| self.product(x, u) == Some(e) && self.product(u, x) == Some(e))
    }

    fn instance_value(&self, law: LawId, inst: Instance) -> Tri {
        use LawId::*;
        match (law, inst) {
            (C1, Instance::Pair(x, y)) => match self.get(x, y) {
                Some(Cell::Value(v)) => Tri::from(self.in_carrier(v)),
                _ => Tri::Indet,
            },
            (C2, Instance::Triple(x, y, z)) => {
                match (self.left_assoc(x, y, z), self.right_assoc(x, y, z)) {
                    (Some(l), Some(r)) => Tri::from(l == r),
                    _ => Tri::Indet,
                }
            }
            (C3, Instance::Element(x)) => Tri::from(self.local_neutral_iter(x).next().is_some()),
            (C4, Instance::Element(x)) => {
                Tri::from(self.local_neutral_iter(x).any(|e| self.has_inverse_to(x, e)))
            }
            (C5, Instance::Pair(x, y)) => match (self.product(x, y), self.product(y, x)) {
                (Some(a), Some(b)) => Tri::from(a == b),
                _ => Tri::Indet,
            },
            (C6, i) => self.instance_value(C1, i).negate(),
            (C7, i) => self.instance_value(C2, i).negate(),
            (C8, Instance::Global) => Tri::from(self.global_identity().is_none()),
            (C9, Instance::Global) => {
                Tri::from(self.evaluate_law(C4).status == LawStatus::AllFalse)
            }
            (C10, i) => self.instance_value(C5, i).negate(),
            _ => unreachable!("instance shape does not match law"),
        }
    }

    /// Instances of the law's quantifier domain in lexicographic order.
    fn instances(&self, law: LawId) -> Vec<Instance> {
        use LawId::*;
        let s = &self.elems;
        match law {
            C1 | C6 => s
                .iter()
                .flat_map(|&x| s.iter().map(move |&y| Instance::Pair(x, y)))
                .collect(),
            C2 | C7 => s
                .iter()
                .flat_map(|&x| {
                    s.iter()
                        .flat_map(move |&y| s.iter().map(move |&z| Instance::Triple(x, y, z)))
                })
                .collect(),
            C3 | C4 => s.iter().map(|&x| Instance::Element(x)).collect(),
            C5 | C10 => s
                .iter()
                .enumerate()
                .flat_map(|(i, &x)| s[i + 1..].iter().map(move |&y| Instance::Pair(x, y)))
                .collect(),
            C8 | C9 => vec![Instance::Global],
        }
    }

    /// Tri-valued verdict of one law over its whole quantifier domain.
    pub fn evaluate_law(&self, law: LawId) -> LawVerdict {
        let mut v = LawVerdict::new(law);
        for inst in self.instances(law) {
            v.record(self.instance_value(law, inst), inst);
        }
        v.finish();
        v
    }

    /// Whether `law` has `status`, stopping at the first deciding instance.
    pub fn law_has_status(&self, law: LawId, status: LawStatus) -> bool {
        let (mut seen_non_true, mut seen_non_false, mut any) = (false, false, false);
        for inst in self.instances(law) {
            any = true;
            match self.instance_value(law, inst) {
                Tri::True => seen_non_false = true,
                Tri::False => seen_non_true = true,
                Tri::Indet => (seen_non_true, seen_non_false) = (true, true),
            }
            let decided = match status {
                LawStatus::AllTrue => seen_non_true,
                LawStatus::AllFalse => seen_non_false,
                LawStatus::Mixed => seen_non_true && seen_non_false,
            };
            if decided {
                return status == LawStatus::Mixed;
            }
        }
        if !any {
            return self.evaluate_law(law).status == status;
        }
        status != LawStatus::Mixed
    }

    pub(crate) fn set_cell(&mut self, index: usize, cell: Cell) {
        self.cells[index] = cell;
    }

    pub fn classify(&self) -> Classification {
        let verdicts = LawId::ALL.map(|l| self.evaluate_law(l));
        let st = |l: LawId| verdicts[l.index()].status;
        let all_true = |ls: &[LawId]| ls.iter().all(|&l| st(l) == LawStatus::AllTrue);
        use LawId::*;
        let classical_group = all_true(&[C1, C2, C3, C4])
            && self
                .global_identity()
                .is_some_and(|e| self.elems.iter().all(|&x| self.has_inverse_to(x, e)));
        let is_anti_group = [C6, C7, C8, C9].iter().any(|&l| st(l) == LawStatus::AllTrue);
        let is_ag4 = st(C4) == LawStatus::AllFalse;
        Classification {
            flags: Flags {
                is_semigroup: all_true(&[C1, C2]),
                is_group: classical_group,
                is_commutative_group: classical_group && st(C5) == LawStatus::AllTrue,
                is_anti_group,
                is_anti_abelian: is_anti_group && st(C10) == LawStatus::AllTrue,
                is_ag4,
                is_strict_ag4: is_ag4 && [C1, C2, C3, C5].iter().all(|&l| st(l) == LawStatus::Mixed),
            },
            verdicts,
        }
    }

    /// All `(g, x, y)` with `x < y` where `g*x = g*y` (left) or
    /// `x*g = y*g` (right), both determinate.
    pub fn cancellation_failures(&self) -> Vec<CancellationFailure> {
        let s = &self.elems;
        let mut out = Vec::new();
        for &g in s {
            for (i, &x) in s.iter().enumerate() {
                for &y in &s[i + 1..] {
                    if let (Some(a), Some(b)) = (self.product(g, x), self.product(g, y)) {
                        if a == b {
                            out.push(CancellationFailure { side: Side::Left, g, x, y, value: a });
                        }
                    }
                    if let (Some(a), Some(b)) = (self.product(x, g), self.product(y, g)) {
                        if a == b {
                            out.push(CancellationFailure { side: Side::Right, g, x, y, value: a });
                        }
                    }
                }
            }
        }
        out
    }

    /// `{h*k : h ∈ A, k ∈ B}` over determinate entries, optionally clipped
    /// to the carrier.
    pub fn set_product(&self, a: &Subset, b: &Subset, mode: ProductMode) -> Result<Subset> {
        self.require_in_carrier(a)?;
        self.require_in_carrier(b)?;
        let mut bits = self.product_bits(a.bits(), b.bits());
        if mode == ProductMode::Restricted {
            bits = bits.intersection(&self.carrier);
        }
        Ok(Subset::from_bits(&self.universe, bits))
    }

    /// Outer product of raw sets; operands off the carrier contribute nothing.
    pub fn product_bits(&self, a: &BitSet, b: &BitSet) -> BitSet {
        let mut out = BitSet::empty(self.universe.size());
        for h in a.iter() {
            for k in b.iter() {
                if let Some(v) = self.product(Elem(h), Elem(k)) {
                    out.insert(v.0);
                }
            }
        }
        out
    }

    fn require_full(&self, space: &ApproxSpace) -> Result<()> {
        if !same_universe(&self.universe, space.universe()) {
            return Err(Error::UniverseMismatch);
        }
        if self.elems.len() != self.universe.size() {
            return Err(Error::CarrierNotFull);
        }
        Ok(())
    }

    /// Whether the partition is compatible with the operation:
    /// `x ~ x'` and `y ~ y'` imply `x*y ~ x'*y'` whenever both are determinate.
    pub fn is_congruence(&self, space: &ApproxSpace) -> Result<CongruenceVerdict> {
        self.require_full(space)?;
        let mut verdict = CongruenceVerdict { holds: true, witness: None, checked: 0, indeterminate: 0 };
        let s = &self.elems;
        for &x in s {
            for &x2 in s.iter().filter(|&&x2| space.equivalent(x, x2)) {
                for &y in s {
                    for &y2 in s.iter().filter(|&&y2| space.equivalent(y, y2)) {
                        match (self.product(x, y), self.product(x2, y2)) {
                            (Some(a), Some(b)) => {
                                verdict.checked += 1;
                                if !space.equivalent(a, b) && verdict.witness.is_none() {
                                    verdict.holds = false;
                                    verdict.witness = Some([x, x2, y, y2]);
                                }
                            }
                            _ => verdict.indeterminate += 1,
                        }
                    }
                }
            }
        }
        Ok(verdict)
    }

    /// Compares products of approximations with approximations of products.
    pub fn check_product_approx_laws(&self, space: &ApproxSpace, x: &Subset, y: &Subset) -> Result<ProductLawReport> {
        self.require_full(space)?;
        for s in [x, y] {
            if !same_universe(&self.universe, s.universe()) {
                return Err(Error::UniverseMismatch);
            }
            if s.is_empty() {
                return Err(Error::EmptySubset);
            }
        }
        let congruence = self.is_congruence(space)?;
        Ok(self.product_laws_bits(space, x.bits(), y.bits(), congruence))
    }

    pub(crate) fn product_laws_bits(
        &self,
        space: &ApproxSpace,
        x: &BitSet,
        y: &BitSet,
        congruence: CongruenceVerdict,
    ) -> ProductLawReport {
        let (lx, ux) = space.approx_bits(x);
        let (ly, uy) = space.approx_bits(y);
        let (lxy, uxy) = space.approx_bits(&self.product_bits(x, y));
        let upper_prod = self.product_bits(&ux, &uy);
        let lower_prod = self.product_bits(&lx, &ly);
        let rel = |relation, w: Option<usize>| RelationOutcome { relation, holds: w.is_none(), witness: w.map(Elem) };
        ProductLawReport {
            congruence,
            relations: [
                rel(ProductRelation::UpperSubset, incl(&upper_prod, &uxy)),
                rel(ProductRelation::UpperSuperset, incl(&uxy, &upper_prod)),
                rel(ProductRelation::LowerSubset, incl(&lower_prod, &lxy)),
                rel(ProductRelation::LowerSuperset, incl(&lxy, &lower_prod)),
            ],
        }
    }
}

impl PartialEq for OpTable {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe)
            && self.carrier == other.carrier
            && self.cells == other.cells
    }
}

impl Eq for OpTable {}

impl fmt::Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = &self.universe;
        write!(f, "OpTable {}", self.carrier())?;
        let k = self.elems.len();
        for (r, &x) in self.elems.iter().enumerate() {
            write!(f, " [{}:", u.label(x))?;
            for c in &self.cells[r * k..(r + 1) * k] {
                match c {
                    Cell::Value(v) => write!(f, " {}", u.label(*v))?,
                    Cell::Indet => f.write_str(" ?")?,
                }
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    /// Products range over the whole universe.
    Outer,
    /// Products are intersected with the carrier.
    Restricted,
}

/// Per-instance truth value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    True,
    False,
    Indet,
}

impl Tri {
    pub fn negate(self) -> Tri {
        match self {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Indet => Tri::Indet,
        }
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

/// The axioms C1–C5 and anti-laws C6–C10.
///
/// | law | meaning per instance |
/// |-----|----------------------|
/// | C1  | `x*y ∈ S` |
/// | C2  | `(x*y)*z = x*(y*z)` |
/// | C3  | `x` has a local neutral |
/// | C4  | `x` has an inverse onto one of its local neutrals |
/// | C5  | `x*y = y*x` for `x ≠ y` |
/// | C6, C7, C10 | negation of C1, C2, C5 |
/// | C8  | no global identity exists |
/// | C9  | C4 fails for every element |
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LawId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
}

impl LawId {
    pub const ALL: [LawId; 10] = [
        LawId::C1,
        LawId::C2,
        LawId::C3,
        LawId::C4,
        LawId::C5,
        LawId::C6,
        LawId::C7,
        LawId::C8,
        LawId::C9,
        LawId::C10,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10"][self.index()]
    }

    pub fn parse(s: &str) -> Option<LawId> {
        Self::ALL.into_iter().find(|l| l.name().eq_ignore_ascii_case(s))
    }

    /// C6–C10 are anti-laws.
    pub fn is_anti(self) -> bool {
        self >= LawId::C6
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LawStatus {
    AllTrue,
    AllFalse,
    Mixed,
}

impl LawStatus {
    pub fn name(self) -> &'static str {
        match self {
            LawStatus::AllTrue => "AllTrue",
            LawStatus::AllFalse => "AllFalse",
            LawStatus::Mixed => "Mixed",
        }
    }

    pub fn parse(s: &str) -> Option<LawStatus> {
        [LawStatus::AllTrue, LawStatus::AllFalse, LawStatus::Mixed]
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
    }
}

/// A point of a law's quantifier domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Instance {
    Global,
    Element(Elem),
    Pair(Elem, Elem),
    Triple(Elem, Elem, Elem),
}

impl Instance {
    pub fn elems(&self) -> Vec<Elem> {
        match *self {
            Instance::Global => Vec::new(),
            Instance::Element(x) => vec![x],
            Instance::Pair(x, y) => vec![x, y],
            Instance::Triple(x, y, z) => vec![x, y, z],
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub true_: usize,
    pub false_: usize,
    pub indet: usize,
}

impl Counts {
    pub fn total(&self) -> usize {
        self.true_ + self.false_ + self.indet
    }
}

/// First instance seen in each bucket.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Witnesses {
    pub true_: Option<Instance>,
    pub false_: Option<Instance>,
    pub indet: Option<Instance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawVerdict {
    pub law: LawId,
    pub status: LawStatus,
    pub counts: Counts,
    pub witnesses: Witnesses,
}

impl LawVerdict {
    fn new(law: LawId) -> Self {
        LawVerdict {
            law,
            status: LawStatus::Mixed,
            counts: Counts::default(),
            witnesses: Witnesses::default(),
        }
    }

    fn record(&mut self, t: Tri, inst: Instance) {
        let (count, witness) = match t {
            Tri::True => (&mut self.counts.true_, &mut self.witnesses.true_),
            Tri::False => (&mut self.counts.false_, &mut self.witnesses.false_),
            Tri::Indet => (&mut self.counts.indet, &mut self.witnesses.indet),
        };
        *count += 1;
        witness.get_or_insert(inst);
    }

    fn finish(&mut self) {
        let c = self.counts;
        self.status = if c.total() == 0 {
            // Empty domain (C5/C10 on one element): the classical law holds
            // vacuously, the anti-law has no instance to witness it.
            if self.law.is_anti() {
                LawStatus::AllFalse
            } else {
                LawStatus::AllTrue
            }
        } else if c.false_ == 0 && c.indet == 0 {
            LawStatus::AllTrue
        } else if c.true_ == 0 && c.indet == 0 {
            LawStatus::AllFalse
        } else {
            LawStatus::Mixed
        };
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub is_semigroup: bool,
    /// C1–C4 hold everywhere, and there is a global identity that every
    /// element can be inverted onto.
    pub is_group: bool,
    pub is_commutative_group: bool,
    pub is_anti_group: bool,
    pub is_anti_abelian: bool,
    pub is_ag4: bool,
    pub is_strict_ag4: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdicts: [LawVerdict; 10],
    pub flags: Flags,
}

impl Classification {
    pub fn verdict(&self, law: LawId) -> &LawVerdict {
        &self.verdicts[law.index()]
    }

    pub fn status(&self, law: LawId) -> LawStatus {
        self.verdict(law).status
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// `g*x = g*y = value` (left) or `x*g = y*g = value` (right) with `x ≠ y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CancellationFailure {
    pub side: Side,
    pub g: Elem,
    pub x: Elem,
    pub y: Elem,
    pub value: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongruenceVerdict {
    pub holds: bool,
    /// `[x, x', y, y']` with `x*y` and `x'*y'` in different classes.
    pub witness: Option<[Elem; 4]>,
    pub checked: usize,
    pub indeterminate: usize,
}

/// The four comparisons between products of approximations and
/// approximations of products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProductRelation {
    /// upper(X)·upper(Y) ⊆ upper(X·Y)
    UpperSubset,
    /// upper(X)·upper(Y) ⊇ upper(X·Y)
    UpperSuperset,
    /// lower(X)·lower(Y) ⊆ lower(X·Y)
    LowerSubset,
    /// lower(X)·lower(Y) ⊇ lower(X·Y)
    LowerSuperset,
}

impl ProductRelation {
    pub const ALL: [ProductRelation; 4] = [
        ProductRelation::UpperSubset,
        ProductRelation::UpperSuperset,
        ProductRelation::LowerSubset,
        ProductRelation::LowerSuperset,
    ];

    pub fn tag(self) -> &'static str {
        ["a", "b", "c", "d"][self as usize]
    }

    pub fn describe(self) -> &'static str {
        match self {
            ProductRelation::UpperSubset => "upper(X)·upper(Y) ⊆ upper(X·Y)",
            ProductRelation::UpperSuperset => "upper(X)·upper(Y) ⊇ upper(X·Y)",
            ProductRelation::LowerSubset => "lower(X)·lower(Y) ⊆ lower(X·Y)",
            ProductRelation::LowerSuperset => "lower(X)·lower(Y) ⊇ lower(X·Y)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub relation: ProductRelation,
    pub holds: bool,
    /// An element on the larger side missing from the smaller one.
    pub witness: Option<Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductLawReport {
    pub congruence: CongruenceVerdict,
    pub relations: [RelationOutcome; 4],
}

impl ProductLawReport {
    pub fn get(&self, r: ProductRelation) -> &RelationOutcome {
        &self.relations[r as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn e(u: &Universe, l: &str) -> Elem {
        u.elem(l).unwrap()
    }

    #[test]
    fn table_validation() {
        let c = fixtures::example_c_table();
        assert_eq!(c.order(), 4);
        let u = c.universe().clone();
        assert_eq!(c.product(e(&u, "1"), e(&u, "1")), Some(e(&u, "4")));
        assert_eq!(c.product(e(&u, "3"), e(&u, "3")), Some(e(&u, "6")));

        let carrier = Subset::from_labels(&u, ["1", "2"]).unwrap();
        let one = e(&u, "1");
        let two = e(&u, "2");
        let three = [(one, one, Cell::Value(one)), (one, two, Cell::Value(one)), (two, one, Cell::Value(one))];
        assert_eq!(
            OpTable::from_entries(&carrier, three).unwrap_err(),
            Error::MissingEntry(two, two)
        );
        let mut dup = three.to_vec();
        dup.push((one, one, Cell::Indet));
        assert_eq!(OpTable::from_entries(&carrier, dup).unwrap_err(), Error::ExtraEntry(one, one));
        assert_eq!(
            OpTable::from_fn(&carrier, |_, _| Cell::Value(Elem(9))).unwrap_err(),
            Error::UnknownResultLabel(Elem(9))
        );
        assert_eq!(
            OpTable::from_fn(&Subset::empty(&u), |_, _| Cell::Indet).unwrap_err(),
            Error::EmptyCarrier
        );
    }

    #[test]
    fn trivial_group() {
        let t = fixtures::trivial_table();
        let c = t.classify();
        for l in [LawId::C1, LawId::C2, LawId::C3, LawId::C4, LawId::C5] {
            assert_eq!(c.status(l), LawStatus::AllTrue, "{l:?}");
        }
        for l in [LawId::C6, LawId::C7, LawId::C10] {
            assert_eq!(c.status(l), LawStatus::AllFalse, "{l:?}");
        }
        assert!(c.flags.is_group && c.flags.is_commutative_group && !c.flags.is_ag4);
        assert!(!c.flags.is_anti_group);
        let a = t.carrier_elems()[0];
        assert_eq!(t.local_neutrals(a).unwrap(), t.carrier());
        assert!(t.cancellation_failures().is_empty());
    }

    #[test]
    fn example_c_local_neutrals() {
        let t = fixtures::example_c_table();
        let u = t.universe().clone();
        assert_eq!(t.local_neutrals(e(&u, "1")).unwrap(), Subset::from_labels(&u, ["2"]).unwrap());
        assert!(t.local_neutrals(e(&u, "5")).unwrap().is_empty());
        assert_eq!(t.local_neutrals(e(&u, "4")).unwrap_err(), Error::NotInCarrier(e(&u, "4")));
        assert_eq!(t.neutral_pool(), Subset::from_labels(&u, ["2"]).unwrap());
        assert_eq!(t.global_identity(), None);
    }

    #[test]
    fn example_c_classification() {
        let t = fixtures::example_c_table();
        let u = t.universe().clone();
        let c = t.classify();
        assert_eq!(c.status(LawId::C4), LawStatus::AllFalse);
        for l in [LawId::C1, LawId::C2, LawId::C3, LawId::C5] {
            assert_eq!(c.status(l), LawStatus::Mixed, "{l:?}");
        }
        assert!(c.flags.is_ag4 && c.flags.is_strict_ag4 && !c.flags.is_group);
        // No global identity, so C8 holds and the table is an anti-group.
        assert_eq!(c.status(LawId::C8), LawStatus::AllTrue);
        assert!(c.flags.is_anti_group);

        let c2 = c.verdict(LawId::C2);
        let t3 = |a, b, d| Instance::Triple(e(&u, a), e(&u, b), e(&u, d));
        assert_eq!(c2.counts.total(), 64);
        assert_eq!(c2.witnesses.indet, Some(t3("1", "1", "1")));
        // Lexicographically first true / false triples.
        let first_true = c2.witnesses.true_.unwrap();
        let first_false = c2.witnesses.false_.unwrap();
        assert_eq!(t.instance_value(LawId::C2, t3("1", "3", "5")), Tri::True);
        assert_eq!(t.instance_value(LawId::C2, t3("2", "3", "5")), Tri::False);
        assert_eq!(t.instance_value(LawId::C2, first_true), Tri::True);
        assert_eq!(t.instance_value(LawId::C2, first_false), Tri::False);
    }

    #[test]
    fn counts_cover_domains() {
        for t in [fixtures::example_c_table(), fixtures::trivial_table(), fixtures::z4_table()] {
            let k = t.order();
            for l in LawId::ALL {
                let expect = match l {
                    LawId::C1 | LawId::C6 => k * k,
                    LawId::C2 | LawId::C7 => k * k * k,
                    LawId::C3 | LawId::C4 => k,
                    LawId::C5 | LawId::C10 => k * (k - 1) / 2,
                    LawId::C8 | LawId::C9 => 1,
                };
                assert_eq!(t.evaluate_law(l).counts.total(), expect, "{l:?}");
            }
        }
    }

    #[test]
    fn z4_is_a_commutative_group() {
        let t = fixtures::z4_table();
        let c = t.classify();
        assert!(c.flags.is_group && c.flags.is_commutative_group && c.flags.is_semigroup);
        assert!(!c.flags.is_ag4 && !c.flags.is_anti_group);
        assert!(t.cancellation_failures().is_empty());
    }

    #[test]
    fn band_with_identity_is_not_a_group() {
        // {e, a} with e neutral and a*a = a: C1–C4 all hold under local
        // neutrals, but a has no inverse onto e.
        let u = Arc::new(Universe::new(["e", "a"]).unwrap());
        let t = OpTable::from_fn(&Subset::full(&u), |x, y| {
            Cell::Value(if x == Elem(0) { y } else { x })
        })
        .unwrap();
        let c = t.classify();
        for l in [LawId::C1, LawId::C2, LawId::C3, LawId::C4] {
            assert_eq!(c.status(l), LawStatus::AllTrue);
        }
        assert!(!c.flags.is_group);
        assert!(!t.cancellation_failures().is_empty());
    }

    #[test]
    fn cancellation_on_constant_table() {
        let u = Arc::new(Universe::new(["a", "b"]).unwrap());
        let t = OpTable::from_fn(&Subset::full(&u), |_, _| Cell::Value(Elem(0))).unwrap();
        let f = t.cancellation_failures();
        assert_eq!(f.len(), 4);
        for g in [Elem(0), Elem(1)] {
            for side in [Side::Left, Side::Right] {
                assert!(f.contains(&CancellationFailure { side, g, x: Elem(0), y: Elem(1), value: Elem(0) }));
            }
        }
    }

    #[test]
    fn example_c_cancellation_failures_include_column_collision() {
        let t = fixtures::example_c_table();
        let u = t.universe().clone();
        let f = t.cancellation_failures();
        // Column 1 is (4 1 2 1): rows 2 and 5 both give 1.
        assert!(f.contains(&CancellationFailure {
            side: Side::Right,
            g: e(&u, "1"),
            x: e(&u, "2"),
            y: e(&u, "5"),
            value: e(&u, "1"),
        }));
        assert!(f.iter().all(|w| w.x < w.y));
    }

    #[test]
    fn set_products() {
        let t = fixtures::example_c_table();
        let u = t.universe().clone();
        let s = |ls: &[&str]| Subset::from_labels(&u, ls.iter().copied()).unwrap();
        assert_eq!(t.set_product(&s(&["1"]), &s(&["2"]), ProductMode::Outer).unwrap(), s(&["1"]));
        assert_eq!(t.set_product(&s(&["1"]), &s(&["1"]), ProductMode::Outer).unwrap(), s(&["4"]));
        assert!(t.set_product(&s(&["1"]), &s(&["1"]), ProductMode::Restricted).unwrap().is_empty());
        assert!(t.set_product(&s(&[]), &s(&["1"]), ProductMode::Outer).unwrap().is_empty());
        assert_eq!(
            t.set_product(&s(&["4"]), &s(&["1"]), ProductMode::Outer).unwrap_err(),
            Error::NotInCarrier(e(&u, "4"))
        );
    }

    #[test]
    fn congruences_on_z4() {
        let t = fixtures::z4_table();
        let u = t.universe().clone();
        let cosets = ApproxSpace::from_class_labels(&u, &[0, 1, 0, 1]).unwrap();
        let v = t.is_congruence(&cosets).unwrap();
        assert!(v.holds && v.witness.is_none() && v.indeterminate == 0);

        let bad = ApproxSpace::from_class_labels(&u, &[0, 1, 1, 2]).unwrap();
        let v = t.is_congruence(&bad).unwrap();
        assert!(!v.holds);
        let [x, x2, y, y2] = v.witness.unwrap();
        assert!(bad.equivalent(x, x2) && bad.equivalent(y, y2));
        assert!(!bad.equivalent(t.product(x, y).unwrap(), t.product(x2, y2).unwrap()));

        assert!(t.is_congruence(&ApproxSpace::discrete(&u)).unwrap().holds);
        let c = fixtures::example_c_table();
        assert_eq!(
            c.is_congruence(&ApproxSpace::discrete(c.universe())).unwrap_err(),
            Error::CarrierNotFull
        );
    }

    #[test]
    fn product_laws_on_z4_cosets() {
        let t = fixtures::z4_table();
        let u = t.universe().clone();
        let cosets = ApproxSpace::from_class_labels(&u, &[0, 1, 0, 1]).unwrap();
        let s = |ls: &[&str]| Subset::from_labels(&u, ls.iter().copied()).unwrap();
        let r = t.check_product_approx_laws(&cosets, &s(&["1"]), &s(&["2"])).unwrap();
        assert!(r.congruence.holds);
        for rel in ProductRelation::ALL {
            assert!(r.get(rel).holds, "{rel:?}");
        }
        let full = Subset::full(&u);
        let r = t.check_product_approx_laws(&cosets, &full, &full).unwrap();
        assert!(r.get(ProductRelation::UpperSubset).holds && r.get(ProductRelation::UpperSuperset).holds);
        assert_eq!(
            t.check_product_approx_laws(&cosets, &Subset::empty(&u), &full).unwrap_err(),
            Error::EmptySubset
        );
    }

    #[test]
    fn law_names() {
        for l in LawId::ALL {
            assert_eq!(LawId::parse(l.name()), Some(l));
        }
        assert_eq!(LawStatus::parse("allfalse"), Some(LawStatus::AllFalse));
    }
}
