//! Small reference structures used throughout the tests and the audit.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{Cell, OpTable};
use crate::approx::{ApproxSpace, Subset, Universe};

/// `{1, ..., 6}`.
pub fn universe6() -> Arc<Universe> {
    Arc::new(Universe::numbered(6).expect("nonempty"))
}

/// `{1 2 3} {4} {5} {6}` on [`universe6`].
pub fn space6() -> ApproxSpace {
    ApproxSpace::from_class_labels(&universe6(), &[0, 0, 0, 1, 2, 3]).expect("sizes agree")
}

fn labelled_table(carrier: &[&str], rows: &[&[&str]]) -> OpTable {
    let u = universe6();
    let c = Subset::from_labels(&u, carrier.iter().copied()).expect("known labels");
    let elem = |l: &str| u.elem(l).expect("known label");
    let entries: Vec<_> = carrier
        .iter()
        .zip(rows)
        .flat_map(|(&x, row)| {
            carrier
                .iter()
                .zip(row.iter())
                .map(move |(&y, &v)| (elem(x), elem(y), Cell::Value(elem(v))))
        })
        .collect();
    OpTable::from_entries(&c, entries).expect("well-formed table")
}

/// The 4×4 outer table on `{1 2 3 5}` inside [`universe6`]; no element has
/// an inverse, and only `1` has a local neutral (`2`).
pub fn example_c_table() -> OpTable {
    labelled_table(
        &["1", "2", "3", "5"],
        &[
            &["4", "1", "3", "5"],
            &["1", "4", "5", "3"],
            &["2", "1", "6", "5"],
            &["1", "2", "3", "6"],
        ],
    )
}

/// The restriction-style table on `{1 2 5}`.
pub fn example_a_table() -> OpTable {
    labelled_table(
        &["1", "2", "5"],
        &[&["4", "1", "5"], &["1", "4", "3"], &["1", "2", "6"]],
    )
}

/// The table on `{2 3 5}`.
pub fn example_b_table() -> OpTable {
    labelled_table(
        &["2", "3", "5"],
        &[&["4", "5", "3"], &["1", "6", "5"], &["2", "3", "6"]],
    )
}

/// `{a}` with `a*a = a`.
pub fn trivial_table() -> OpTable {
    let u = Arc::new(Universe::new(["a"]).expect("nonempty"));
    OpTable::from_fn(&Subset::full(&u), |x, _| Cell::Value(x)).expect("valid")
}

/// Addition modulo 4 on `{0 1 2 3}`.
pub fn z4_table() -> OpTable {
    let u = Arc::new(Universe::new(["0", "1", "2", "3"]).expect("nonempty"));
    OpTable::from_fn(&Subset::full(&u), |x, y| {
        Cell::Value(crate::Elem((x.index() + y.index()) % 4))
    })
    .expect("valid")
}

/// Cosets of `{0, 2}` in [`z4_table`]'s universe.
pub fn z4_cosets() -> ApproxSpace {
    let t = z4_table();
    ApproxSpace::from_class_labels(t.universe(), &[0, 1, 0, 1]).expect("sizes agree")
}
