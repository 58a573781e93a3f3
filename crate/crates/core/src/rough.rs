//! Rough anti-semigroups, rough anti-subsemigroups and the intersection
//! relations between upper approximations.

use alloc::vec::Vec;

use crate::algebra::{Cell, Counts, OpTable};
use crate::approx::{equal, incl, same_universe, ApproxSpace, Elem, Subset};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// `x*y` landed outside the upper approximation or is indeterminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureWitness {
    pub x: Elem,
    pub y: Elem,
    pub value: Cell,
}

/// Closure of a set into an upper approximation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureCheck {
    pub holds: bool,
    pub checked: usize,
    /// Every failing pair in lexicographic order.
    pub failures: Vec<ClosureWitness>,
}

/// `(x*y)*z ≠ x*(y*z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AssocWitness {
    pub x: Elem,
    pub y: Elem,
    pub z: Elem,
    pub left: Elem,
    pub right: Elem,
}

/// Associativity over the triples of an upper approximation. Triples whose
/// products cannot be resolved are counted as indeterminate and do not
/// falsify the condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocCheck {
    pub holds: bool,
    pub counts: Counts,
    pub failures: Vec<AssocWitness>,
    pub first_indeterminate: Option<[Elem; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoughStructVerdict {
    /// The upper approximation the conditions were checked against.
    pub upper: Subset,
    pub closure: ClosureCheck,
    /// `None` for rough anti-subsemigroups, which only require closure.
    pub associativity: Option<AssocCheck>,
    pub overall: bool,
}

fn same(space: &ApproxSpace, table: &OpTable) -> Result<()> {
    if same_universe(space.universe(), table.universe()) {
        Ok(())
    } else {
        Err(Error::UniverseMismatch)
    }
}

fn closure(table: &OpTable, set: &BitSet, upper: &BitSet) -> ClosureCheck {
    let mut check = ClosureCheck { holds: true, checked: 0, failures: Vec::new() };
    for x in set.iter().map(Elem) {
        for y in set.iter().map(Elem) {
            check.checked += 1;
            let value = table.get(x, y).expect("operands lie in the carrier");
            let inside = matches!(value, Cell::Value(v) if upper.contains(v.index()));
            if !inside {
                check.holds = false;
                check.failures.push(ClosureWitness { x, y, value });
            }
        }
    }
    check
}

fn resolve(table: &OpTable, ambient: Option<&OpTable>, x: Elem, y: Elem) -> Option<Elem> {
    match table.get(x, y) {
        Some(c) => c.value(),
        None => ambient.and_then(|a| a.product(x, y)),
    }
}

fn associativity(table: &OpTable, ambient: Option<&OpTable>, upper: &BitSet) -> AssocCheck {
    let mut check = AssocCheck {
        holds: true,
        counts: Counts::default(),
        failures: Vec::new(),
        first_indeterminate: None,
    };
    let p = |a, b| resolve(table, ambient, a, b);
    for x in upper.iter().map(Elem) {
        for y in upper.iter().map(Elem) {
            for z in upper.iter().map(Elem) {
                let left = p(x, y).and_then(|xy| p(xy, z));
                let right = p(y, z).and_then(|yz| p(x, yz));
                match (left, right) {
                    (Some(l), Some(r)) if l == r => check.counts.true_ += 1,
                    (Some(left), Some(right)) => {
                        check.counts.false_ += 1;
                        check.holds = false;
                        check.failures.push(AssocWitness { x, y, z, left, right });
                    }
                    _ => {
                        check.counts.indet += 1;
                        check.first_indeterminate.get_or_insert([x, y, z]);
                    }
                }
            }
        }
    }
    check
}

/// Checks that every product of carrier elements lies in the upper
/// approximation of the carrier, and that associativity holds on the upper
/// approximation wherever products can be resolved.
///
/// Products involving elements outside the table's carrier are looked up in
/// `ambient` when it is given.
pub fn check_rough_anti_semigroup(
    space: &ApproxSpace,
    table: &OpTable,
    ambient: Option<&OpTable>,
) -> Result<RoughStructVerdict> {
    same(space, table)?;
    if let Some(a) = ambient {
        same(space, a)?;
    }
    let carrier = table.carrier_bits();
    let upper = space.upper_bits(carrier);
    let closure = closure(table, carrier, &upper);
    let assoc = associativity(table, ambient, &upper);
    Ok(RoughStructVerdict {
        overall: closure.holds && assoc.holds,
        upper: Subset::from_bits(space.universe(), upper),
        closure,
        associativity: Some(assoc),
    })
}

/// Checks `HH ⊆ upper(H)` for a nonempty `H` inside the table's carrier.
pub fn check_rough_anti_subsemigroup(
    space: &ApproxSpace,
    table: &OpTable,
    h: &Subset,
) -> Result<RoughStructVerdict> {
    same(space, table)?;
    if !same_universe(space.universe(), h.universe()) {
        return Err(Error::UniverseMismatch);
    }
    if h.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(e) = h.iter().find(|&e| !table.in_carrier(e)) {
        return Err(Error::NotInCarrier(e));
    }
    let upper = space.upper_bits(h.bits());
    let closure = closure(table, h.bits(), &upper);
    Ok(RoughStructVerdict {
        overall: closure.holds,
        upper: Subset::from_bits(space.universe(), upper),
        closure,
        associativity: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum IntersectionRelation {
    /// upper(A ∩ B) ⊆ upper(A) ∩ upper(B)
    Contained,
    /// upper(A) ∩ upper(B) ⊆ upper(A ∩ B)
    Contains,
    Equal,
}

impl IntersectionRelation {
    pub const ALL: [IntersectionRelation; 3] = [
        IntersectionRelation::Contained,
        IntersectionRelation::Contains,
        IntersectionRelation::Equal,
    ];

    pub fn tag(self) -> &'static str {
        ["i", "ii", "iii"][self as usize]
    }

    pub fn describe(self) -> &'static str {
        match self {
            IntersectionRelation::Contained => "upper(A∩B) ⊆ upper(A) ∩ upper(B)",
            IntersectionRelation::Contains => "upper(A) ∩ upper(B) ⊆ upper(A∩B)",
            IntersectionRelation::Equal => "upper(A) ∩ upper(B) = upper(A∩B)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: IntersectionRelation,
    pub holds: bool,
    pub witness: Option<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    pub intersection: Subset,
    pub upper_a: Subset,
    pub upper_b: Subset,
    /// upper(A) ∩ upper(B)
    pub uppers_meet: Subset,
    /// upper(A ∩ B)
    pub upper_of_intersection: Subset,
    pub relations: [RelationCheck; 3],
}

impl IntersectionReport {
    pub fn get(&self, r: IntersectionRelation) -> &RelationCheck {
        &self.relations[r as usize]
    }
}

pub fn check_intersection_relations(space: &ApproxSpace, a: &Subset, b: &Subset) -> Result<IntersectionReport> {
    for s in [a, b] {
        if !same_universe(space.universe(), s.universe()) {
            return Err(Error::UniverseMismatch);
        }
    }
    Ok(intersection_bits(space, a.bits(), b.bits()))
}

pub(crate) fn intersection_bits(space: &ApproxSpace, a: &BitSet, b: &BitSet) -> IntersectionReport {
    let u = space.universe();
    let inter = a.intersection(b);
    let ua = space.upper_bits(a);
    let ub = space.upper_bits(b);
    let meet = ua.intersection(&ub);
    let ui = space.upper_bits(&inter);
    let check = |relation, w: Option<usize>| RelationCheck { relation, holds: w.is_none(), witness: w.map(Elem) };
    let relations = [
        check(IntersectionRelation::Contained, incl(&ui, &meet)),
        check(IntersectionRelation::Contains, incl(&meet, &ui)),
        check(IntersectionRelation::Equal, equal(&meet, &ui)),
    ];
    IntersectionReport {
        intersection: Subset::from_bits(u, inter),
        upper_a: Subset::from_bits(u, ua),
        upper_b: Subset::from_bits(u, ub),
        uppers_meet: Subset::from_bits(u, meet),
        upper_of_intersection: Subset::from_bits(u, ui),
        relations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LawId;
    use crate::algebra::LawStatus;
    use crate::approx::Universe;
    use crate::fixtures;
    use alloc::sync::Arc;

    fn s(u: &Arc<Universe>, ls: &[&str]) -> Subset {
        Subset::from_labels(u, ls.iter().copied()).unwrap()
    }

    #[test]
    fn example_a_fails_closure() {
        let space = fixtures::space6();
        let u = space.universe().clone();
        let t = fixtures::example_a_table();
        let v = check_rough_anti_semigroup(&space, &t, None).unwrap();
        assert_eq!(v.upper, s(&u, &["1", "2", "3", "5"]));
        assert!(!v.closure.holds && !v.overall);
        let one = u.elem("1").unwrap();
        assert_eq!(
            v.closure.failures[0],
            ClosureWitness { x: one, y: one, value: Cell::Value(u.elem("4").unwrap()) }
        );
        // Element 3 is in the upper approximation but has no products, so
        // every triple touching it is unresolvable.
        let assoc = v.associativity.unwrap();
        assert_eq!(assoc.counts.total(), 64);
        assert!(assoc.counts.indet > 0);
    }

    #[test]
    fn ambient_resolves_more_triples() {
        let space = fixtures::space6();
        let a = fixtures::example_a_table();
        let c = fixtures::example_c_table();
        let alone = check_rough_anti_semigroup(&space, &a, None).unwrap();
        let with = check_rough_anti_semigroup(&space, &a, Some(&c)).unwrap();
        let (x, y) = (alone.associativity.unwrap(), with.associativity.unwrap());
        assert!(y.counts.indet < x.counts.indet);
        assert_eq!(x.counts.total(), y.counts.total());
    }

    #[test]
    fn trivial_structure_passes() {
        let t = fixtures::trivial_table();
        let space = ApproxSpace::discrete(t.universe());
        let v = check_rough_anti_semigroup(&space, &t, None).unwrap();
        assert!(v.closure.holds && v.associativity.as_ref().unwrap().holds && v.overall);
    }

    #[test]
    fn example_b_fails_subsemigroup() {
        let space = fixtures::space6();
        let u = space.universe().clone();
        let t = fixtures::example_b_table();
        let h = t.carrier();
        let v = check_rough_anti_subsemigroup(&space, &t, &h).unwrap();
        assert_eq!(v.upper, s(&u, &["1", "2", "3", "5"]));
        assert!(!v.overall);
        let two = u.elem("2").unwrap();
        assert_eq!(
            v.closure.failures[0],
            ClosureWitness { x: two, y: two, value: Cell::Value(u.elem("4").unwrap()) }
        );
        assert!(v.associativity.is_none());
    }

    #[test]
    fn subsemigroup_on_carrier_matches_condition_one() {
        let space = fixtures::space6();
        for t in [fixtures::example_a_table(), fixtures::example_b_table(), fixtures::example_c_table()] {
            let full = check_rough_anti_semigroup(&space, &t, None).unwrap();
            let sub = check_rough_anti_subsemigroup(&space, &t, &t.carrier()).unwrap();
            assert_eq!(full.closure, sub.closure);
        }
    }

    #[test]
    fn subsemigroup_errors() {
        let space = fixtures::space6();
        let u = space.universe().clone();
        let t = fixtures::example_b_table();
        assert_eq!(
            check_rough_anti_subsemigroup(&space, &t, &Subset::empty(&u)).unwrap_err(),
            Error::EmptySubset
        );
        assert_eq!(
            check_rough_anti_subsemigroup(&space, &t, &s(&u, &["1"])).unwrap_err(),
            Error::NotInCarrier(u.elem("1").unwrap())
        );
    }

    #[test]
    fn exact_closed_carrier_is_classically_closed() {
        // Closure into upper(A) with upper(A) = A means C1 holds everywhere.
        let t = fixtures::z4_table();
        let space = fixtures::z4_cosets();
        let v = check_rough_anti_semigroup(&space, &t, None).unwrap();
        assert!(v.closure.holds);
        assert_eq!(v.upper, t.carrier());
        assert_eq!(t.evaluate_law(LawId::C1).status, LawStatus::AllTrue);
    }

    #[test]
    fn intersection_example_data() {
        let space = fixtures::space6();
        let u = space.universe().clone();
        let r = check_intersection_relations(&space, &s(&u, &["1", "2", "5"]), &s(&u, &["2", "3", "5"])).unwrap();
        assert_eq!(r.intersection, s(&u, &["2", "5"]));
        assert_eq!(r.upper_of_intersection, s(&u, &["1", "2", "3", "5"]));
        assert!(r.relations.iter().all(|c| c.holds));
    }

    #[test]
    fn intersection_minimal_counterexample() {
        let u = Arc::new(Universe::numbered(2).unwrap());
        let space = ApproxSpace::indiscrete(&u);
        let r = check_intersection_relations(&space, &s(&u, &["1"]), &s(&u, &["2"])).unwrap();
        assert!(r.get(IntersectionRelation::Contained).holds);
        assert!(!r.get(IntersectionRelation::Contains).holds);
        assert!(!r.get(IntersectionRelation::Equal).holds);
        assert_eq!(r.get(IntersectionRelation::Contains).witness, Some(Elem(0)));

        let a = s(&u, &["1"]);
        let r = check_intersection_relations(&space, &a, &a).unwrap();
        assert!(r.relations.iter().all(|c| c.holds));
    }
}
