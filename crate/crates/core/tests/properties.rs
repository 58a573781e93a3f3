use std::sync::Arc;

use proptest::prelude::*;
use ras_core::enumerate::{enum_mappings, enum_partitions, enum_tables, subsets};
use ras_core::*;

/// Lower and upper approximations straight from the equivalence relation
/// "same label", without going through blocks.
fn oracle(labels: &[usize], x: u64) -> (u64, u64) {
    let n = labels.len();
    let mut lower = 0;
    let mut upper = 0;
    for i in 0..n {
        let class = (0..n).filter(|&j| labels[j] == labels[i]);
        if class.clone().all(|j| x >> j & 1 == 1) {
            lower |= 1 << i;
        }
        if class.clone().any(|j| x >> j & 1 == 1) {
            upper |= 1 << i;
        }
    }
    (lower, upper)
}

fn mask(b: &BitSet) -> u64 {
    b.iter().fold(0, |m, i| m | 1 << i)
}

fn space_strategy(max_n: usize) -> impl Strategy<Value = (Vec<usize>, ApproxSpace)> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(0..n, n)).prop_map(|labels| {
        let u = Arc::new(Universe::numbered(labels.len()).unwrap());
        let s = ApproxSpace::from_class_labels(&u, &labels).unwrap();
        (labels, s)
    })
}

fn space_and_sets(max_n: usize) -> impl Strategy<Value = (Vec<usize>, ApproxSpace, u64, u64)> {
    space_strategy(max_n).prop_flat_map(|(l, s)| {
        let top = 1u64 << l.len();
        (Just(l), Just(s), 0..top, 0..top)
    })
}

fn table_strategy(max_n: usize, indet: bool) -> impl Strategy<Value = OpTable> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), 1u64..(1 << n)))
        .prop_flat_map(move |(n, carrier)| {
            let k = carrier.count_ones() as usize;
            let sym = n + usize::from(indet);
            (Just(n), Just(carrier), prop::collection::vec(0..sym, k * k))
        })
        .prop_map(|(n, carrier, cells)| {
            let u = Arc::new(Universe::numbered(n).unwrap());
            let c = Subset::from_bits(&u, BitSet::from_mask(n, carrier));
            let elems: Vec<Elem> = c.iter().collect();
            let k = elems.len();
            let pos = |e: Elem| elems.iter().position(|&x| x == e).unwrap();
            OpTable::from_fn(&c, |x, y| {
                let s = cells[pos(x) * k + pos(y)];
                if s < n {
                    Cell::Value(Elem(s))
                } else {
                    Cell::Indet
                }
            })
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn approximations_match_oracle((labels, space, x, _y) in space_and_sets(8)) {
        let n = labels.len();
        let (l, u) = space.approx_bits(&BitSet::from_mask(n, x));
        prop_assert_eq!((mask(&l), mask(&u)), oracle(&labels, x));
    }

    #[test]
    fn duality((labels, space, x, _y) in space_and_sets(8)) {
        let n = labels.len();
        let xb = BitSet::from_mask(n, x);
        prop_assert_eq!(space.lower_bits(&xb), space.upper_bits(&xb.complement()).complement());
        prop_assert_eq!(space.upper_bits(&xb), space.lower_bits(&xb.complement()).complement());
    }

    #[test]
    fn monotone_and_idempotent((labels, space, x, y) in space_and_sets(8)) {
        let n = labels.len();
        let (xb, yb) = (BitSet::from_mask(n, x & y), BitSet::from_mask(n, y));
        prop_assert!(space.lower_bits(&xb).is_subset(&space.lower_bits(&yb)));
        prop_assert!(space.upper_bits(&xb).is_subset(&space.upper_bits(&yb)));
        let l = space.lower_bits(&yb);
        let u = space.upper_bits(&yb);
        prop_assert_eq!(space.lower_bits(&l), l.clone());
        prop_assert_eq!(space.upper_bits(&u), u.clone());
        prop_assert!(l.is_subset(&yb) && yb.is_subset(&u));
    }

    #[test]
    fn all_laws_hold((labels, space, x, y) in space_and_sets(8)) {
        let n = labels.len();
        let r = space.check_laws_bits(&BitSet::from_mask(n, x), &BitSet::from_mask(n, y));
        prop_assert!(r.all_hold(), "{:?}", r);
    }

    #[test]
    fn anti_laws_mirror_classical(t in table_strategy(4, true)) {
        let flip = |s: LawStatus| match s {
            LawStatus::AllTrue => LawStatus::AllFalse,
            LawStatus::AllFalse => LawStatus::AllTrue,
            LawStatus::Mixed => LawStatus::Mixed,
        };
        let c = t.classify();
        for (classical, anti) in [(LawId::C1, LawId::C6), (LawId::C2, LawId::C7), (LawId::C5, LawId::C10)] {
            let (v, w) = (c.verdict(classical), c.verdict(anti));
            prop_assert_eq!(v.counts.true_, w.counts.false_);
            prop_assert_eq!(v.counts.indet, w.counts.indet);
            if v.counts.total() > 0 {
                prop_assert_eq!(flip(v.status), w.status);
            }
        }
        prop_assert_eq!(
            c.status(LawId::C9) == LawStatus::AllTrue,
            c.status(LawId::C4) == LawStatus::AllFalse
        );
    }

    #[test]
    fn early_exit_status_agrees(t in table_strategy(4, true)) {
        for law in LawId::ALL {
            let s = t.evaluate_law(law).status;
            for candidate in [LawStatus::AllTrue, LawStatus::AllFalse, LawStatus::Mixed] {
                prop_assert_eq!(t.law_has_status(law, candidate), s == candidate, "{:?}", law);
            }
        }
    }

    #[test]
    fn classification_is_deterministic(t in table_strategy(4, true)) {
        prop_assert_eq!(t.classify(), t.clone().classify());
    }

    #[test]
    fn groups_cancel(t in table_strategy(3, false)) {
        if t.classify().flags.is_group {
            prop_assert!(t.cancellation_failures().is_empty());
        }
    }

    #[test]
    fn set_product_is_monotone(t in table_strategy(4, true), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let n = t.universe().size();
        let carrier = mask(t.carrier_bits());
        let (a, b) = (a & carrier, b & carrier);
        let a_small = a & c;
        let p = t.product_bits(&BitSet::from_mask(n, a), &BitSet::from_mask(n, b));
        let q = t.product_bits(&BitSet::from_mask(n, a_small), &BitSet::from_mask(n, b));
        prop_assert!(q.is_subset(&p));
        let u = t.universe();
        let (sa, sb) = (Subset::from_bits(u, BitSet::from_mask(n, a)), Subset::from_bits(u, BitSet::from_mask(n, b)));
        let restricted = t.set_product(&sa, &sb, ProductMode::Restricted).unwrap();
        prop_assert!(restricted.bits().is_subset(t.carrier_bits()));
        prop_assert!(restricted.bits().is_subset(&p));
    }

    /// Relabelling both tables and the map by a permutation moves the kernel
    /// and the image along with it.
    #[test]
    fn kernel_and_image_follow_relabelling(
        t in table_strategy(3, false),
        perm in Just(()).prop_perturb(|_, mut rng| {
            let mut p: Vec<usize> = (0..3).collect();
            for i in (1..3).rev() { p.swap(i, (rng.next_u32() as usize) % (i + 1)); }
            p
        }),
        seed in any::<u64>(),
    ) {
        let n = t.universe().size();
        if n < 3 { return Ok(()); }
        let u = t.universe().clone();
        let carrier = t.carrier();
        let cod: Vec<Elem> = carrier.iter().collect();
        let phi = Mapping::from_fn(&carrier, &carrier, |x| cod[(seed >> (2 * x.index())) as usize % cod.len()]).unwrap();
        let s = |e: Elem| Elem(perm[e.index()]);
        let carrier2 = Subset::from_elems(&u, carrier.iter().map(s)).unwrap();
        let t2 = OpTable::from_fn(&carrier2, |x, y| {
            let inv = |e: Elem| Elem(perm.iter().position(|&p| p == e.index()).unwrap());
            match t.get(inv(x), inv(y)).unwrap() {
                Cell::Value(v) => Cell::Value(s(v)),
                Cell::Indet => Cell::Indet,
            }
        }).unwrap();
        let phi2 = Mapping::new(&carrier2, &carrier2, phi.pairs().map(|(x, y)| (s(x), s(y)))).unwrap();
        let moved = |sub: &Subset| Subset::from_elems(&u, sub.iter().map(s)).unwrap();
        let k1 = kernel(&phi, &t);
        let k2 = kernel(&phi2, &t2);
        match (k1, k2) {
            (Ok(a), Ok(b)) => prop_assert_eq!(moved(&a), b),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
        prop_assert_eq!(moved(&phi.image()), phi2.image());
    }
}

/// Under the discrete partition upper approximations are the sets
/// themselves, so a rough hom is exactly a surjective hom on the carriers.
#[test]
fn rough_hom_under_discrete_partition_is_surjective_hom() {
    let u = Arc::new(Universe::numbered(2).unwrap());
    let full = Subset::full(&u);
    let d = ApproxSpace::discrete(&u);
    for t in enum_tables(&full, false).unwrap() {
        for phi in enum_mappings(&full, &full, false).unwrap() {
            for (rough, plain) in [(MorphismKind::RoughHom, MorphismKind::Hom), (MorphismKind::RoughAntiHom, MorphismKind::AntiHom)] {
                let r = check_rough_hom(&d, &d, &phi, &t, &t, rough).unwrap();
                let h = check_hom(&phi, &t, &t, plain).unwrap();
                assert_eq!(r.overall, h.overall && phi.is_surjective());
                assert_eq!(r.counts, h.counts);
            }
        }
    }
}

/// On a commutative table homs and anti-homs coincide.
#[test]
fn commutative_tables_do_not_distinguish_hom_kinds() {
    let u = Arc::new(Universe::numbered(2).unwrap());
    let full = Subset::full(&u);
    for t in enum_tables(&full, false).unwrap() {
        if t.classify().status(LawId::C5) != LawStatus::AllTrue {
            continue;
        }
        for phi in enum_mappings(&full, &full, false).unwrap() {
            let a = check_hom(&phi, &t, &t, MorphismKind::Hom).unwrap();
            let b = check_hom(&phi, &t, &t, MorphismKind::AntiHom).unwrap();
            assert_eq!(a.overall, b.overall);
        }
    }
}

fn bell(n: usize) -> usize {
    // Bell triangle.
    let mut row = vec![1usize];
    for _ in 1..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            next.push(next.last().unwrap() + v);
        }
        row = next;
    }
    *row.last().unwrap()
}

#[test]
fn generator_counts_match_closed_forms() {
    for n in 1..=5 {
        assert_eq!(enum_partitions(n).unwrap().count(), bell(n), "n = {n}");
        assert_eq!(subsets(n).count(), 1 << n);
    }
    for n in 1..=3usize {
        let u = Arc::new(Universe::numbered(n).unwrap());
        for k in 1..=n.min(2) {
            let c = Subset::from_elems(&u, (0..k).map(Elem)).unwrap();
            for indet in [false, true] {
                let sym = n + usize::from(indet);
                assert_eq!(enum_tables(&c, indet).unwrap().count(), sym.pow((k * k) as u32));
            }
            assert_eq!(enum_mappings(&Subset::full(&u), &c, false).unwrap().count(), k.pow(n as u32));
        }
    }
}

#[test]
fn streams_are_duplicate_free() {
    let u = Arc::new(Universe::numbered(3).unwrap());
    let c = Subset::from_elems(&u, [Elem(0), Elem(1)]).unwrap();
    let mut cells: Vec<Vec<Option<Elem>>> =
        enum_tables(&c, true).unwrap().map(|t| t.cells().iter().map(|c| c.value()).collect()).collect();
    let len = cells.len();
    cells.sort();
    cells.dedup();
    assert_eq!(cells.len(), len);
    let mut maps: Vec<Vec<(Elem, Elem)>> =
        enum_mappings(&Subset::full(&u), &c, false).unwrap().map(|m| m.pairs().collect()).collect();
    let len = maps.len();
    maps.sort();
    maps.dedup();
    assert_eq!(maps.len(), len);
}
