//! Finite mappings between carriers and the (rough, anti-) homomorphism
//! checks built on them.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::OpTable;
use crate::approx::{same_universe, ApproxSpace, Elem, Subset, Universe};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A total map from a domain subset of one universe into another universe,
/// with a designated target subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mapping {
    domain: Subset,
    target: Subset,
    graph: Vec<Option<Elem>>,
}

impl Mapping {
    pub fn new<I>(domain: &Subset, target: &Subset, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Elem, Elem)>,
    {
        let cod = target.universe().size();
        let mut graph = vec![None; domain.universe().size()];
        for (x, y) in pairs {
            if !domain.contains(x) {
                return Err(Error::UnknownElement(x));
            }
            if y.index() >= cod {
                return Err(Error::UnknownCodomainLabel(y));
            }
            if graph[x.index()].replace(y).is_some() {
                return Err(Error::DuplicatePair(x));
            }
        }
        if let Some(x) = domain.iter().find(|x| graph[x.index()].is_none()) {
            return Err(Error::MissingPair(x));
        }
        Ok(Mapping {
            domain: domain.clone(),
            target: target.clone(),
            graph,
        })
    }

    pub fn from_fn(domain: &Subset, target: &Subset, mut f: impl FnMut(Elem) -> Elem) -> Result<Self> {
        let pairs: Vec<_> = domain.iter().map(|x| (x, f(x))).collect();
        Self::new(domain, target, pairs)
    }

    pub fn identity(domain: &Subset) -> Self {
        Self::from_fn(domain, domain, |x| x).expect("identity is total")
    }

    pub fn domain(&self) -> &Subset {
        &self.domain
    }

    pub fn target(&self) -> &Subset {
        &self.target
    }

    pub fn codomain(&self) -> &Arc<Universe> {
        self.target.universe()
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Option<Elem> {
        self.graph.get(x.index()).copied().flatten()
    }

    /// `(x, φ(x))` in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.domain.iter().map(|x| (x, self.graph[x.index()].expect("total")))
    }

    pub fn image(&self) -> Subset {
        let bits = BitSet::from_indices(self.codomain().size(), self.pairs().map(|(_, y)| y.index()));
        Subset::from_bits(self.codomain(), bits)
    }

    pub fn is_surjective(&self) -> bool {
        self.target.bits().is_subset(self.image().bits())
    }

    fn values_in(&self, table: &OpTable) -> Result<()> {
        match self.pairs().find(|&(_, y)| !table.in_carrier(y)) {
            Some((_, y)) => Err(Error::CarrierMismatch(y)),
            None => Ok(()),
        }
    }
}

/// `φ1 ∘ φ2`, i.e. `x ↦ φ1(φ2(x))`.
pub fn compose(phi1: &Mapping, phi2: &Mapping) -> Result<Mapping> {
    if !same_universe(phi2.codomain(), phi1.domain.universe()) {
        return Err(Error::UniverseMismatch);
    }
    let mut pairs = Vec::with_capacity(phi2.domain.len());
    for (x, y) in phi2.pairs() {
        let z = phi1.apply(y).ok_or(Error::DomainMismatch(y))?;
        pairs.push((x, z));
    }
    Mapping::new(&phi2.domain, &phi1.target, pairs)
}

/// Elements mapped onto a local neutral of some element of `table_b`.
pub fn kernel(phi: &Mapping, table_b: &OpTable) -> Result<Subset> {
    if !same_universe(phi.codomain(), table_b.universe()) {
        return Err(Error::UniverseMismatch);
    }
    phi.values_in(table_b)?;
    Ok(kernel_unchecked(phi, table_b))
}

fn kernel_unchecked(phi: &Mapping, table_b: &OpTable) -> Subset {
    let pool = table_b.neutral_pool();
    let bits = BitSet::from_indices(
        phi.domain.universe().size(),
        phi.pairs().filter(|&(_, y)| pool.contains(y)).map(|(x, _)| x.index()),
    );
    Subset::from_bits(phi.domain.universe(), bits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorphismKind {
    /// `φ(x*y) ≠ φ(x)∘φ(y)` on every resolvable pair.
    AntiGroupHom,
    /// `φ(x*y) = φ(x)∘φ(y)` on every resolvable pair of the domain.
    Hom,
    /// `φ(x*y) = φ(y)∘φ(x)` on every resolvable pair of the domain.
    AntiHom,
    /// [`MorphismKind::Hom`] on upper approximations, plus surjectivity.
    RoughHom,
    /// [`MorphismKind::AntiHom`] on upper approximations, plus surjectivity.
    RoughAntiHom,
}

impl MorphismKind {
    pub const ALL: [MorphismKind; 5] = [
        MorphismKind::AntiGroupHom,
        MorphismKind::Hom,
        MorphismKind::AntiHom,
        MorphismKind::RoughHom,
        MorphismKind::RoughAntiHom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MorphismKind::AntiGroupHom => "anti-group-hom",
            MorphismKind::Hom => "hom",
            MorphismKind::AntiHom => "anti-hom",
            MorphismKind::RoughHom => "rough-hom",
            MorphismKind::RoughAntiHom => "rough-anti-hom",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    fn reversed(self) -> bool {
        matches!(self, MorphismKind::AntiHom | MorphismKind::RoughAntiHom)
    }

    pub fn is_rough(self) -> bool {
        matches!(self, MorphismKind::RoughHom | MorphismKind::RoughAntiHom)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairCounts {
    /// Pairs with `φ(x*y) = φ(x)∘φ(y)`, both sides resolvable.
    pub preserved: usize,
    /// Pairs with `φ(x*y) = φ(y)∘φ(x)`, both sides resolvable.
    pub reversed: usize,
    /// Pairs that break the requirement of the checked kind.
    pub violated: usize,
    /// Pairs where a side the kind needs cannot be resolved.
    pub indeterminate: usize,
}

/// `φ(x*y)` against the kind's right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub x: Elem,
    pub y: Elem,
    pub lhs: Elem,
    pub rhs: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub kind: MorphismKind,
    pub pairs_checked: usize,
    pub counts: PairCounts,
    pub first_violation: Option<PairWitness>,
    pub first_indeterminate: Option<(Elem, Elem)>,
    /// Surjectivity onto the mapping's target.
    pub surjective: bool,
    pub kernel: Subset,
    pub image: Subset,
    pub overall: bool,
}

fn evaluate(phi: &Mapping, table_a: &OpTable, table_b: &OpTable, kind: MorphismKind) -> MorphismReport {
    let mut counts = PairCounts::default();
    let mut first_violation = None;
    let mut first_indeterminate = None;
    let mut checked = 0;
    let lhs_of = |x, y| table_a.product(x, y).and_then(|p| phi.apply(p));
    for x in phi.domain.iter() {
        for y in phi.domain.iter() {
            checked += 1;
            let (fx, fy) = (phi.apply(x).expect("total"), phi.apply(y).expect("total"));
            let lhs = lhs_of(x, y);
            let fwd = table_b.product(fx, fy);
            let rev = table_b.product(fy, fx);
            if lhs.is_some() && lhs == fwd {
                counts.preserved += 1;
            }
            if lhs.is_some() && lhs == rev {
                counts.reversed += 1;
            }
            let rhs = if kind.reversed() { rev } else { fwd };
            match (lhs, rhs) {
                (Some(l), Some(r)) => {
                    let ok = match kind {
                        MorphismKind::AntiGroupHom => l != r,
                        _ => l == r,
                    };
                    if !ok {
                        counts.violated += 1;
                        first_violation.get_or_insert(PairWitness { x, y, lhs: l, rhs: r });
                    }
                }
                _ => {
                    counts.indeterminate += 1;
                    first_indeterminate.get_or_insert((x, y));
                }
            }
        }
    }
    let surjective = phi.is_surjective();
    let overall = counts.violated == 0 && (!kind.is_rough() || surjective);
    MorphismReport {
        kind,
        pairs_checked: checked,
        counts,
        first_violation,
        first_indeterminate,
        surjective,
        kernel: kernel_unchecked(phi, table_b),
        image: phi.image(),
        overall,
    }
}

fn check_universes(phi: &Mapping, table_a: &OpTable, table_b: &OpTable) -> Result<()> {
    if same_universe(phi.domain.universe(), table_a.universe()) && same_universe(phi.codomain(), table_b.universe()) {
        Ok(())
    } else {
        Err(Error::UniverseMismatch)
    }
}

/// Checks a non-rough kind (`AntiGroupHom`, `Hom` or `AntiHom`) on carriers:
/// the domain must lie in `table_a`'s carrier and the values in `table_b`'s.
pub fn check_hom(phi: &Mapping, table_a: &OpTable, table_b: &OpTable, kind: MorphismKind) -> Result<MorphismReport> {
    debug_assert!(!kind.is_rough());
    check_universes(phi, table_a, table_b)?;
    if let Some(x) = phi.domain.iter().find(|&x| !table_a.in_carrier(x)) {
        return Err(Error::CarrierMismatch(x));
    }
    phi.values_in(table_b)?;
    Ok(evaluate(phi, table_a, table_b, kind))
}

/// The anti-group homomorphism check: no resolvable pair is preserved.
pub fn check_anti_group_hom(phi: &Mapping, table_c: &OpTable, table_b: &OpTable) -> Result<MorphismReport> {
    check_hom(phi, table_c, table_b, MorphismKind::AntiGroupHom)
}

/// Checks a rough (anti-)homomorphism between the upper approximations of
/// the two carriers.
pub fn check_rough_hom(
    space_a: &ApproxSpace,
    space_b: &ApproxSpace,
    phi: &Mapping,
    table_a: &OpTable,
    table_b: &OpTable,
    kind: MorphismKind,
) -> Result<MorphismReport> {
    debug_assert!(kind.is_rough());
    check_universes(phi, table_a, table_b)?;
    if !same_universe(space_a.universe(), table_a.universe()) || !same_universe(space_b.universe(), table_b.universe()) {
        return Err(Error::UniverseMismatch);
    }
    let upper_a = space_a.upper_bits(table_a.carrier_bits());
    let upper_b = space_b.upper_bits(table_b.carrier_bits());
    if *phi.domain.bits() != upper_a || *phi.target.bits() != upper_b {
        return Err(Error::DomainNotUpper);
    }
    Ok(evaluate(phi, table_a, table_b, kind))
}

/// Which kinds a self-map of one table exhibits on its resolvable pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KindProfile {
    pub hom: bool,
    pub anti_hom: bool,
}

pub fn kind_profile(phi: &Mapping, table: &OpTable) -> KindProfile {
    KindProfile {
        hom: evaluate(phi, table, table, MorphismKind::Hom).counts.violated == 0,
        anti_hom: evaluate(phi, table, table, MorphismKind::AntiHom).counts.violated == 0,
    }
}

/// Description of what the composition check actually verifies.
pub const COMPOSITION_SURROGATE: &str = "self-maps of one table, classified by per-pair \
preservation (hom) or reversal (anti-hom) on resolvable pairs; composite = outer(inner(x))";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropTally {
    /// Candidate pairs meeting the premise.
    pub checked: usize,
    /// Indices into the candidate list whose composite has the wrong kind.
    pub counterexamples: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompositionReport {
    /// anti-hom ∘ hom is an anti-hom.
    pub anti_after_hom: PropTally,
    /// anti-hom ∘ anti-hom is a hom.
    pub anti_after_anti: PropTally,
    /// Pairs that meet neither premise or cannot be composed.
    pub skipped: usize,
}

impl CompositionReport {
    pub fn holds(&self) -> bool {
        self.anti_after_hom.counterexamples.is_empty() && self.anti_after_anti.counterexamples.is_empty()
    }

    pub fn merge(&mut self, other: CompositionReport, offset: usize) {
        self.anti_after_hom.checked += other.anti_after_hom.checked;
        self.anti_after_anti.checked += other.anti_after_anti.checked;
        self.anti_after_hom
            .counterexamples
            .extend(other.anti_after_hom.counterexamples.iter().map(|i| i + offset));
        self.anti_after_anti
            .counterexamples
            .extend(other.anti_after_anti.counterexamples.iter().map(|i| i + offset));
        self.skipped += other.skipped;
    }
}

/// For each `(outer, inner)` pair: if `outer` is an anti-hom and `inner` a
/// hom, the composite must be an anti-hom; if both are anti-homs, the
/// composite must be a hom.
pub fn verify_composition_props(table: &OpTable, candidates: &[(Mapping, Mapping)]) -> CompositionReport {
    let mut report = CompositionReport::default();
    for (i, (outer, inner)) in candidates.iter().enumerate() {
        let (po, pi) = (kind_profile(outer, table), kind_profile(inner, table));
        let Ok(composite) = compose(outer, inner) else {
            report.skipped += 1;
            continue;
        };
        let pc = kind_profile(&composite, table);
        let mut met = false;
        if po.anti_hom && pi.hom {
            met = true;
            report.anti_after_hom.checked += 1;
            if !pc.anti_hom {
                report.anti_after_hom.counterexamples.push(i);
            }
        }
        if po.anti_hom && pi.anti_hom {
            met = true;
            report.anti_after_anti.checked += 1;
            if !pc.hom {
                report.anti_after_anti.counterexamples.push(i);
            }
        }
        if !met {
            report.skipped += 1;
        }
    }
    report
}
