//! Exhaustive generators and the constraint-driven searcher.
//!
//! Every stream has a canonical order: partitions by restricted growth
//! string, subsets by their bit mask, tables by row-major entries (elements
//! in universe order, then the indeterminate marker), mappings by their
//! graph in domain order. Index-addressable spaces let callers split work by
//! contiguous ranges and merge results back in order.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::algebra::{Cell, LawId, LawStatus, OpTable, ProductRelation};
use crate::approx::{ApproxLaw, ApproxSpace, Elem, Subset, Universe};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::morphism::{compose, kind_profile, Mapping};
use crate::rough::{check_rough_anti_semigroup, intersection_bits, IntersectionRelation};

/// Largest universe for partition enumeration and searches.
pub const MAX_UNIVERSE: usize = 6;
/// Largest carrier for table enumeration.
pub const MAX_CARRIER: usize = 4;
/// Largest universe for sweeps over total tables on the whole universe.
pub const MAX_TOTAL_TABLE_UNIVERSE: usize = 3;

fn check_size(what: &'static str, got: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&got) {
        Ok(())
    } else {
        Err(Error::SizeOutOfRange { what, got, max })
    }
}

/// Restricted growth strings of length `n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct RestrictedGrowth {
    current: Vec<usize>,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        RestrictedGrowth {
            current: vec![0; n],
            done: n == 0,
        }
    }

    fn advance(&mut self) -> bool {
        let a = &mut self.current;
        // Rightmost position that can grow: a[i] <= max(a[..i]).
        for i in (1..a.len()).rev() {
            let max_prefix = a[..i].iter().copied().max().unwrap_or(0);
            if a[i] <= max_prefix {
                a[i] += 1;
                for v in a[i + 1..].iter_mut() {
                    *v = 0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.done = !self.advance();
        Some(out)
    }
}

/// All partitions of `universe` in restricted-growth-string order.
pub fn partitions_of(universe: &Arc<Universe>) -> Result<impl Iterator<Item = ApproxSpace>> {
    check_size("universe size", universe.size(), MAX_UNIVERSE)?;
    let u = universe.clone();
    Ok(RestrictedGrowth::new(universe.size())
        .map(move |rgs| ApproxSpace::from_class_labels(&u, &rgs).expect("sizes agree")))
}

/// All partitions of the numbered universe `{1..n}`.
pub fn enum_partitions(n: usize) -> Result<impl Iterator<Item = ApproxSpace>> {
    check_size("universe size", n, MAX_UNIVERSE)?;
    partitions_of(&Arc::new(Universe::numbered(n)?))
}

/// All `2^n` subsets of an `n`-element universe, by mask.
pub fn subsets(n: usize) -> impl Iterator<Item = BitSet> + Clone {
    assert!(n < 64, "subset enumeration needs n < 64");
    (0..1u64 << n).map(move |m| BitSet::from_mask(n, m))
}

/// The index-addressable space of tables on a fixed carrier.
#[derive(Clone, Debug)]
pub struct TableSpace {
    universe: Arc<Universe>,
    carrier: BitSet,
    cells: usize,
    symbols: usize,
}

impl TableSpace {
    pub fn new(carrier: &Subset, allow_indet: bool) -> Result<Self> {
        if carrier.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let u = carrier.universe();
        check_size("universe size", u.size(), MAX_UNIVERSE)?;
        check_size("carrier size", carrier.len(), MAX_CARRIER)?;
        Ok(TableSpace {
            universe: u.clone(),
            carrier: carrier.bits().clone(),
            cells: carrier.len() * carrier.len(),
            symbols: u.size() + usize::from(allow_indet),
        })
    }

    /// `symbols ^ cells`.
    pub fn len(&self) -> u64 {
        (self.symbols as u64).pow(self.cells as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn symbol(&self, s: usize) -> Cell {
        if s < self.universe.size() {
            Cell::Value(Elem(s))
        } else {
            Cell::Indet
        }
    }

    fn digits(&self, mut index: u64) -> Vec<usize> {
        let mut d = vec![0; self.cells];
        for slot in d.iter_mut().rev() {
            *slot = (index % self.symbols as u64) as usize;
            index /= self.symbols as u64;
        }
        d
    }

    fn build(&self, digits: &[usize]) -> OpTable {
        let cells = digits.iter().map(|&s| self.symbol(s)).collect();
        OpTable::from_cells_unchecked(&self.universe, &self.carrier, cells)
    }

    pub fn table_at(&self, index: u64) -> OpTable {
        self.build(&self.digits(index))
    }

    /// Tables with indices in `range`, in order.
    pub fn iter_range(&self, range: Range<u64>) -> TableIter<'_> {
        let end = range.end.min(self.len());
        TableIter {
            space: self,
            digits: self.digits(range.start),
            next: range.start,
            end,
        }
    }

    pub fn iter(&self) -> TableIter<'_> {
        self.iter_range(0..self.len())
    }
}

pub struct TableIter<'a> {
    space: &'a TableSpace,
    digits: Vec<usize>,
    next: u64,
    end: u64,
}

impl Iterator for TableIter<'_> {
    type Item = OpTable;

    fn next(&mut self) -> Option<OpTable> {
        if self.next >= self.end {
            return None;
        }
        let t = self.space.build(&self.digits);
        self.next += 1;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.space.symbols {
                break;
            }
            *d = 0;
        }
        Some(t)
    }
}

/// All tables on `carrier`, optionally with indeterminate cells.
pub fn enum_tables(carrier: &Subset, allow_indet: bool) -> Result<impl Iterator<Item = OpTable>> {
    let space = TableSpace::new(carrier, allow_indet)?;
    let len = space.len();
    Ok((0..len).scan(space.digits(0), move |digits, _| {
        let t = space.build(digits);
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < space.symbols {
                break;
            }
            *d = 0;
        }
        Some(t)
    }))
}

/// All maps `domain → codomain`, or only the surjective ones.
pub fn enum_mappings(domain: &Subset, codomain: &Subset, surjective_only: bool) -> Result<impl Iterator<Item = Mapping>> {
    if domain.is_empty() || codomain.is_empty() {
        return Err(Error::EmptySet);
    }
    let dom: Vec<Elem> = domain.iter().collect();
    let cod: Vec<Elem> = codomain.iter().collect();
    let total = (cod.len() as u64).checked_pow(dom.len() as u32).ok_or(Error::SizeOutOfRange {
        what: "mapping count exponent",
        got: dom.len(),
        max: 63,
    })?;
    let (domain, codomain) = (domain.clone(), codomain.clone());
    Ok((0..total)
        .map(move |mut i| {
            let mut values = vec![Elem(0); dom.len()];
            for v in values.iter_mut().rev() {
                *v = cod[(i % cod.len() as u64) as usize];
                i /= cod.len() as u64;
            }
            let pairs = dom.iter().copied().zip(values);
            Mapping::new(&domain, &codomain, pairs).expect("values from the codomain")
        })
        .filter(move |m| !surjective_only || m.is_surjective()))
}

/// Predicates involving an approximation space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structural {
    /// The table is a rough anti-semigroup under the candidate space.
    RoughAntiSemigroup,
    /// The carrier is a rough (inexact) set under the candidate space.
    RoughCarrier,
    /// The candidate space is a congruence of the table.
    Congruence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub universe_size: usize,
    pub carrier_size: usize,
    pub allow_indet: bool,
    pub laws: Vec<(LawId, LawStatus)>,
    pub structural: Vec<Structural>,
    pub limit: usize,
    pub budget: u64,
}

impl SearchSpec {
    pub fn new(universe_size: usize, carrier_size: usize) -> Self {
        SearchSpec {
            universe_size,
            carrier_size,
            allow_indet: false,
            laws: Vec::new(),
            structural: Vec::new(),
            limit: 1,
            budget: u64::MAX,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_size("universe size", self.universe_size, MAX_UNIVERSE)?;
        check_size("carrier size", self.carrier_size, self.universe_size.min(MAX_CARRIER))?;
        check_size("limit", self.limit, usize::MAX)?;
        if self.budget == 0 {
            return Err(Error::SizeOutOfRange { what: "budget", got: 0, max: usize::MAX });
        }
        if self.structural.contains(&Structural::Congruence) && self.carrier_size != self.universe_size {
            return Err(Error::CarrierNotFull);
        }
        Ok(())
    }
}

/// A candidate satisfying a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchMatch {
    /// Position in the canonical candidate order.
    pub index: u64,
    pub space: Option<ApproxSpace>,
    pub table: OpTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub matches: Vec<SearchMatch>,
    /// Candidates examined in canonical order before stopping.
    pub examined: u64,
    pub space_size: u64,
    /// The budget ran out before the space or the limit was reached.
    pub truncated: bool,
}

/// The candidate space of a search: (partition, table) pairs, partition-major.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    spec: SearchSpec,
    spaces: Vec<ApproxSpace>,
    tables: TableSpace,
}

impl SearchSpace {
    pub fn new(spec: &SearchSpec) -> Result<Self> {
        spec.validate()?;
        let u = Arc::new(Universe::numbered(spec.universe_size)?);
        let carrier = Subset::from_elems(&u, (0..spec.carrier_size).map(Elem))?;
        let spaces = if spec.structural.is_empty() {
            Vec::new()
        } else {
            partitions_of(&u)?.collect()
        };
        Ok(SearchSpace {
            spec: spec.clone(),
            spaces,
            tables: TableSpace::new(&carrier, spec.allow_indet)?,
        })
    }

    pub fn len(&self) -> u64 {
        self.tables.len().saturating_mul(self.spaces.len().max(1) as u64)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Candidates examined when scanning from the start under the budget.
    pub fn scan_len(&self) -> u64 {
        self.len().min(self.spec.budget)
    }

    fn accepts(&self, space: Option<&ApproxSpace>, table: &OpTable) -> bool {
        let laws_ok = self
            .spec
            .laws
            .iter()
            .all(|&(law, status)| table.law_has_status(law, status));
        if !laws_ok {
            return false;
        }
        let Some(space) = space else { return true };
        self.spec.structural.iter().all(|s| match s {
            Structural::RoughAntiSemigroup => check_rough_anti_semigroup(space, table, None)
                .map(|v| v.overall)
                .unwrap_or(false),
            Structural::RoughCarrier => {
                let (l, u) = space.approx_bits(table.carrier_bits());
                l != u
            }
            Structural::Congruence => table.is_congruence(space).map(|v| v.holds).unwrap_or(false),
        })
    }

    /// Matches among candidates in `range` (clipped to the space), at most
    /// `limit` of them, in canonical order.
    pub fn scan(&self, range: Range<u64>, limit: usize) -> Vec<SearchMatch> {
        let per = self.tables.len();
        let end = range.end.min(self.len());
        let mut out = Vec::new();
        let mut i = range.start;
        while i < end && out.len() < limit {
            let (p, t) = (i / per, i % per);
            let block_end = ((p + 1) * per).min(end);
            let space = self.spaces.get(p as usize);
            let mut digits = self.tables.digits(t);
            let mut table = self.tables.build(&digits);
            while i < block_end {
                if self.accepts(space, &table) {
                    out.push(SearchMatch { index: i, space: space.cloned(), table: table.clone() });
                    if out.len() >= limit {
                        return out;
                    }
                }
                i += 1;
                for (pos, d) in digits.iter_mut().enumerate().rev() {
                    *d += 1;
                    let carry = *d == self.tables.symbols;
                    if carry {
                        *d = 0;
                    }
                    table.set_cell(pos, self.tables.symbol(*d));
                    if !carry {
                        break;
                    }
                }
            }
        }
        out
    }

    /// Builds the outcome from matches found over `0..scan_len()`, in order.
    pub fn finish(&self, mut matches: Vec<SearchMatch>) -> SearchOutcome {
        matches.truncate(self.spec.limit);
        let full = matches.len() >= self.spec.limit;
        let examined = if full {
            matches.last().map_or(0, |m| m.index + 1)
        } else {
            self.scan_len()
        };
        SearchOutcome {
            truncated: !full && self.scan_len() < self.len(),
            matches,
            examined,
            space_size: self.len(),
        }
    }
}

/// Runs a search sequentially.
pub fn search(spec: &SearchSpec) -> Result<SearchOutcome> {
    let space = SearchSpace::new(spec)?;
    let matches = space.scan(0..space.scan_len(), spec.limit);
    Ok(space.finish(matches))
}

/// Relations that [`find_counterexample`] can refute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Approx(ApproxLaw),
    Intersection(IntersectionRelation),
    /// A product relation over total tables on the whole universe, with or
    /// without requiring the partition to be a congruence.
    Product { relation: ProductRelation, require_congruence: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_universe_size: usize,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub space: ApproxSpace,
    pub table: Option<OpTable>,
    pub x: Subset,
    pub y: Subset,
    pub witness: Option<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum CounterexampleOutcome {
    Found { counterexample: Counterexample, examined: u64 },
    NoneWithinBounds { examined: u64 },
    BudgetExhausted { examined: u64 },
}

/// Smallest counterexample in canonical order: universe size, partition,
/// table (product relations only), then `X` and `Y` by mask.
pub fn find_counterexample(relation: Relation, bounds: Bounds) -> Result<CounterexampleOutcome> {
    let max = match relation {
        Relation::Product { .. } => MAX_TOTAL_TABLE_UNIVERSE,
        _ => MAX_UNIVERSE,
    };
    check_size("universe size", bounds.max_universe_size, max)?;
    let mut examined = 0u64;
    for n in 1..=bounds.max_universe_size {
        let u = Arc::new(Universe::numbered(n)?);
        let tables: Vec<Option<OpTable>> = match relation {
            Relation::Product { .. } => TableSpace::new(&Subset::full(&u), false)?.iter().map(Some).collect(),
            _ => vec![None],
        };
        for space in partitions_of(&u)? {
            for table in &tables {
                if let (Some(t), Relation::Product { require_congruence: true, .. }) = (table, relation) {
                    if !t.is_congruence(&space)?.holds {
                        continue;
                    }
                }
                for x in subsets(n) {
                    for y in subsets(n) {
                        if examined >= bounds.budget {
                            return Ok(CounterexampleOutcome::BudgetExhausted { examined });
                        }
                        let witness = match (relation, table) {
                            (Relation::Approx(law), _) => {
                                let o = *space.check_laws_bits(&x, &y).get(law);
                                (!o.holds).then_some(o.witness)
                            }
                            (Relation::Intersection(r), _) => {
                                let c = *intersection_bits(&space, &x, &y).get(r);
                                (!c.holds).then_some(c.witness)
                            }
                            (Relation::Product { relation: r, .. }, Some(t)) => {
                                if x.is_empty() || y.is_empty() {
                                    continue;
                                }
                                let cong = t.is_congruence(&space)?;
                                let o = *t.product_laws_bits(&space, &x, &y, cong).get(r);
                                (!o.holds).then_some(o.witness)
                            }
                            (Relation::Product { .. }, None) => unreachable!(),
                        };
                        examined += 1;
                        if let Some(witness) = witness {
                            return Ok(CounterexampleOutcome::Found {
                                counterexample: Counterexample {
                                    space: space.clone(),
                                    table: table.clone(),
                                    x: Subset::from_bits(&u, x),
                                    y: Subset::from_bits(&u, y),
                                    witness: witness.map(|e: Elem| e),
                                },
                                examined,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(CounterexampleOutcome::NoneWithinBounds { examined })
}

/// The first failure seen by a sweep, with its position for merging.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepFailure {
    pub unit: usize,
    pub universe_size: usize,
    pub space: ApproxSpace,
    pub table: Option<OpTable>,
    pub x: Subset,
    pub y: Subset,
    pub witness: Option<Elem>,
}

/// Per-relation tallies of a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTally {
    pub name: &'static str,
    pub failures: u64,
    pub first_failure: Option<SweepFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    /// Outer units (spaces, or space/table pairs) covered.
    pub units: usize,
    pub instances: u64,
    pub relations: Vec<RelationTally>,
}

impl SweepReport {
    fn new(names: &[&'static str]) -> Self {
        SweepReport {
            units: 0,
            instances: 0,
            relations: names
                .iter()
                .map(|&name| RelationTally { name, failures: 0, first_failure: None })
                .collect(),
        }
    }

    pub fn total_failures(&self) -> u64 {
        self.relations.iter().map(|r| r.failures).sum()
    }

    /// Adds another shard's tallies; first failures are kept by unit order.
    pub fn merge(&mut self, other: SweepReport) {
        self.units += other.units;
        self.instances += other.instances;
        for (mine, theirs) in self.relations.iter_mut().zip(other.relations) {
            mine.failures += theirs.failures;
            mine.first_failure = match (mine.first_failure.take(), theirs.first_failure) {
                (Some(a), Some(b)) => Some(if b.unit < a.unit { b } else { a }),
                (a, b) => a.or(b),
            };
        }
    }

    fn record(&mut self, idx: usize, failure: impl FnOnce() -> SweepFailure) {
        let r = &mut self.relations[idx];
        r.failures += 1;
        if r.first_failure.is_none() {
            r.first_failure = Some(failure());
        }
    }
}

/// A slice of a sweep: units `u` with `u % count == index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

impl Shard {
    pub const ALL: Shard = Shard { index: 0, count: 1 };

    fn owns(&self, unit: usize) -> bool {
        unit % self.count == self.index
    }
}

fn all_spaces(max_n: usize) -> Result<Vec<(usize, ApproxSpace)>> {
    check_size("universe size", max_n, MAX_UNIVERSE)?;
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enum_partitions(n)?.map(|s| (n, s)));
    }
    Ok(out)
}

/// Every approximation law on every space with `n ≤ max_n` and every ordered
/// pair of subsets.
pub fn sweep_approx_laws(max_n: usize, laws: &[ApproxLaw], shard: Shard) -> Result<SweepReport> {
    let names: Vec<&'static str> = laws.iter().map(|l| l.name()).collect();
    let mut report = SweepReport::new(&names);
    for (unit, (n, space)) in all_spaces(max_n)?.into_iter().enumerate() {
        if !shard.owns(unit) {
            continue;
        }
        report.units += 1;
        for x in subsets(n) {
            for y in subsets(n) {
                report.instances += 1;
                let r = space.check_laws_bits(&x, &y);
                for (i, &law) in laws.iter().enumerate() {
                    let o = r.get(law);
                    if !o.holds {
                        report.record(i, || failure(unit, n, &space, None, &x, &y, o.witness));
                    }
                }
            }
        }
    }
    Ok(report)
}

fn failure(
    unit: usize,
    n: usize,
    space: &ApproxSpace,
    table: Option<&OpTable>,
    x: &BitSet,
    y: &BitSet,
    witness: Option<Elem>,
) -> SweepFailure {
    let u = space.universe();
    SweepFailure {
        unit,
        universe_size: n,
        space: space.clone(),
        table: table.cloned(),
        x: Subset::from_bits(u, x.clone()),
        y: Subset::from_bits(u, y.clone()),
        witness,
    }
}

/// The three intersection relations over every space and subset pair.
pub fn sweep_intersection(max_n: usize, shard: Shard) -> Result<SweepReport> {
    let names: Vec<&'static str> = IntersectionRelation::ALL.iter().map(|r| r.tag()).collect();
    let mut report = SweepReport::new(&names);
    for (unit, (n, space)) in all_spaces(max_n)?.into_iter().enumerate() {
        if !shard.owns(unit) {
            continue;
        }
        report.units += 1;
        for x in subsets(n) {
            for y in subsets(n) {
                report.instances += 1;
                let r = intersection_bits(&space, &x, &y);
                for (i, c) in r.relations.iter().enumerate() {
                    if !c.holds {
                        report.record(i, || failure(unit, n, &space, None, &x, &y, c.witness));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The four product relations over every total table on `{1..n}`, every
/// partition that is a congruence of it, and every pair of nonempty subsets.
pub fn sweep_product_laws(max_n: usize, shard: Shard) -> Result<SweepReport> {
    check_size("universe size", max_n, MAX_TOTAL_TABLE_UNIVERSE)?;
    let names: Vec<&'static str> = ProductRelation::ALL.iter().map(|r| r.tag()).collect();
    let mut report = SweepReport::new(&names);
    let mut unit = 0;
    for n in 1..=max_n {
        let u = Arc::new(Universe::numbered(n)?);
        let spaces: Vec<ApproxSpace> = partitions_of(&u)?.collect();
        for table in TableSpace::new(&Subset::full(&u), false)?.iter() {
            for space in &spaces {
                let this = unit;
                unit += 1;
                if !shard.owns(this) {
                    continue;
                }
                let cong = table.is_congruence(space)?;
                if !cong.holds {
                    continue;
                }
                report.units += 1;
                for x in subsets(n).skip(1) {
                    for y in subsets(n).skip(1) {
                        report.instances += 1;
                        let r = table.product_laws_bits(space, &x, &y, cong);
                        for (i, o) in r.relations.iter().enumerate() {
                            if !o.holds {
                                report.record(i, || failure(this, n, space, Some(&table), &x, &y, o.witness));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Outcome of the composition sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompositionSweep {
    pub tables: usize,
    pub maps_per_table: usize,
    /// Pairs (anti-hom after hom) checked and refuted.
    pub anti_after_hom: (u64, u64),
    /// Pairs (anti-hom after anti-hom) checked and refuted.
    pub anti_after_anti: (u64, u64),
    /// First refuting (table, outer, inner), if any.
    pub first_counterexample: Option<(OpTable, Mapping, Mapping)>,
}

impl CompositionSweep {
    pub fn holds(&self) -> bool {
        self.anti_after_hom.1 == 0 && self.anti_after_anti.1 == 0
    }

    pub fn merge(&mut self, other: CompositionSweep) {
        self.tables += other.tables;
        self.maps_per_table = self.maps_per_table.max(other.maps_per_table);
        self.anti_after_hom.0 += other.anti_after_hom.0;
        self.anti_after_hom.1 += other.anti_after_hom.1;
        self.anti_after_anti.0 += other.anti_after_anti.0;
        self.anti_after_anti.1 += other.anti_after_anti.1;
        if self.first_counterexample.is_none() {
            self.first_counterexample = other.first_counterexample;
        }
    }
}

/// Every total table on `{1..n}` and every pair of self-maps meeting a
/// composition premise.
pub fn sweep_composition(n: usize, shard: Shard) -> Result<CompositionSweep> {
    check_size("universe size", n, MAX_TOTAL_TABLE_UNIVERSE)?;
    let u = Arc::new(Universe::numbered(n)?);
    let full = Subset::full(&u);
    let maps: Vec<Mapping> = enum_mappings(&full, &full, false)?.collect();
    let mut out = CompositionSweep { maps_per_table: maps.len(), ..Default::default() };
    for (unit, table) in TableSpace::new(&full, false)?.iter().enumerate() {
        if !shard.owns(unit) {
            continue;
        }
        out.tables += 1;
        let profiles: Vec<_> = maps.iter().map(|m| kind_profile(m, &table)).collect();
        for (o, outer) in maps.iter().enumerate() {
            if !profiles[o].anti_hom {
                continue;
            }
            for (i, inner) in maps.iter().enumerate() {
                let (hom, anti) = (profiles[i].hom, profiles[i].anti_hom);
                if !hom && !anti {
                    continue;
                }
                let c = kind_profile(&compose(outer, inner)?, &table);
                let mut refuted = false;
                if hom {
                    out.anti_after_hom.0 += 1;
                    if !c.anti_hom {
                        out.anti_after_hom.1 += 1;
                        refuted = true;
                    }
                }
                if anti {
                    out.anti_after_anti.0 += 1;
                    if !c.hom {
                        out.anti_after_anti.1 += 1;
                        refuted = true;
                    }
                }
                if refuted && out.first_counterexample.is_none() {
                    out.first_counterexample = Some((table.clone(), outer.clone(), inner.clone()));
                }
            }
        }
    }
    Ok(out)
}
