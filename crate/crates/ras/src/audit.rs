//! Bundled worked examples and the audit of the claims made about them.
//!
//! Claims are stored as data; every derived value is recomputed from the
//! embedded scenarios each time the audit runs.

use std::sync::Arc;

use ras_core::{check_rough_anti_semigroup, check_rough_anti_subsemigroup, ApproxSpace, LawId, LawStatus, Subset};

use crate::dsl::{parse_scenario, Scenario};
use crate::report::{labels, set_text, AuditFinding, AuditReport, AuditStatus, RoughReport};

/// Embedded `.ras` fixtures by file name.
pub const FIXTURES: [(&str, &str); 4] = [
    ("example31.ras", include_str!("../fixtures/example31.ras")),
    ("example32.ras", include_str!("../fixtures/example32.ras")),
    ("example33.ras", include_str!("../fixtures/example33.ras")),
    ("z4.ras", include_str!("../fixtures/z4.ras")),
];

pub fn fixture_text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parses a bundled fixture; they are valid by construction.
pub fn fixture(name: &str) -> Scenario {
    let text = fixture_text(name).unwrap_or_else(|| panic!("no fixture {name}"));
    parse_scenario(text).unwrap_or_else(|d| panic!("{name}: {d}"))
}

/// A stated upper approximation, keyed by the data it was computed from.
pub struct UpperClaim {
    pub id: &'static str,
    pub citation: &'static str,
    pub fixture: &'static str,
    pub space: &'static str,
    pub set: &'static str,
    pub stated: &'static [&'static str],
}

pub const UPPER_CLAIMS: [UpperClaim; 2] = [
    UpperClaim {
        id: "EX3.1-UPPER-A",
        citation: "Example 3.1, upper approximation of A = {1 2 5}",
        fixture: "example31.ras",
        space: "P",
        set: "A",
        stated: &["1", "2", "3", "4"],
    },
    UpperClaim {
        id: "EX3.2-UPPER-B",
        citation: "Example 3.2, upper approximation of B = {2 3 5}",
        fixture: "example32.ras",
        space: "P",
        set: "B",
        stated: &["1", "2", "3", "5"],
    },
];

/// The stated upper approximation when `space` and `x` coincide with the
/// data of a bundled claim.
pub fn upper_claim_for(space: &ApproxSpace, x: &Subset) -> Option<&'static UpperClaim> {
    UPPER_CLAIMS.iter().find(|c| {
        let s = fixture(c.fixture);
        let (fs, fx) = (s.space(c.space).expect("fixture space"), s.set(c.set).expect("fixture set"));
        fs == space && fx.universe().labels() == x.universe().labels() && fx.labels() == x.labels()
    })
}

fn status(ok: bool) -> AuditStatus {
    if ok {
        AuditStatus::Match
    } else {
        AuditStatus::Discrepancy
    }
}

fn stated(items: &[&str]) -> String {
    set_text(&items.iter().map(|s| s.to_string()).collect::<Vec<_>>())
}

fn upper_finding(c: &UpperClaim) -> AuditFinding {
    let s = fixture(c.fixture);
    let upper = s.space(c.space).unwrap().upper(s.set(c.set).unwrap()).expect("same universe");
    let derived = labels(&upper);
    AuditFinding {
        id: c.id.into(),
        citation: c.citation.into(),
        claim: format!("upper = {}", stated(c.stated)),
        derived: format!("upper = {}", set_text(&derived)),
        status: status(derived == c.stated),
    }
}

fn statuses(s: &Scenario, table: &str, laws: &[LawId]) -> (Vec<LawStatus>, String) {
    let c = s.table(table).unwrap().classify();
    let st: Vec<LawStatus> = laws.iter().map(|&l| c.status(l)).collect();
    let text = laws.iter().zip(&st).map(|(l, s)| format!("{}={}", l.name(), s.name())).collect::<Vec<_>>().join(" ");
    (st, format!("{text} ag4={}", c.flags.is_ag4))
}

fn rough_finding(id: &str, citation: &str, claim: &str, r: &RoughReport) -> AuditFinding {
    let derived = match r.first_closure_failure() {
        Some(w) => format!(
            "fails: {w} not in upper = {}; {} of {} products outside",
            set_text(&r.upper),
            r.closure_failures.len(),
            r.closure_checked
        ),
        None => format!("holds: all {} products in upper = {}", r.closure_checked, set_text(&r.upper)),
    };
    let derived = match &r.associativity {
        Some(a) if !a.holds => format!("{derived}; associativity also fails on {} triples", a.failures.len()),
        _ => derived,
    };
    AuditFinding {
        id: id.into(),
        citation: citation.into(),
        claim: claim.into(),
        derived,
        status: status(r.overall),
    }
}

pub fn run_audit() -> AuditReport {
    use LawId::*;
    let ex31 = fixture("example31.ras");
    let ex32 = fixture("example32.ras");
    let ex33 = fixture("example33.ras");
    let p = ex31.space("P").unwrap();
    let mut findings = vec![upper_finding(&UPPER_CLAIMS[0]), upper_finding(&UPPER_CLAIMS[1])];

    let (st, text) = statuses(&ex31, "C", &[C1, C2, C3, C5, C4]);
    findings.push(AuditFinding {
        id: "EX3.1-AG4".into(),
        citation: "Example 3.1, table on C = {1 2 3 5}".into(),
        claim: "C1 C2 C3 C5 partially true or partially false; C4 false for all elements".into(),
        derived: text,
        status: status(st[..4].iter().all(|&s| s == LawStatus::Mixed) && st[4] == LawStatus::AllFalse),
    });

    let (st, text) = statuses(&ex31, "A", &[C4]);
    findings.push(AuditFinding {
        id: "EX3.1-A-AG4".into(),
        citation: "Example 3.1, table on A = {1 2 5}".into(),
        claim: "A is an anti-subgroup of type AG(4)".into(),
        derived: text,
        status: status(st[0] == LawStatus::AllFalse),
    });

    let (ta, tc) = (ex31.table("A").unwrap(), ex31.table("C").unwrap());
    let v = check_rough_anti_semigroup(p, ta, Some(tc)).expect("same universe");
    let r = RoughReport::new("P", "A", "A", &ta.carrier(), Some("C"), &v);
    findings.push(rough_finding(
        "EX3.1-DEF31",
        "Example 3.1, conclusion drawn for A",
        "A is a rough anti-semigroup: x*y in upper(A) for all x, y in A, associativity inside upper(A)",
        &r,
    ));

    let (p2, tb, b) = (ex32.space("P").unwrap(), ex32.table("B").unwrap(), ex32.set("B").unwrap());
    let v = check_rough_anti_subsemigroup(p2, tb, b).expect("B in its carrier");
    let r = RoughReport::new("P", "B", "B", b, None, &v);
    findings.push(rough_finding(
        "EX3.2-DEF32",
        "Example 3.2, conclusion drawn for B",
        "B is a rough anti-semigroup, so as a subset of C it satisfies BB in upper(B)",
        &r,
    ));

    let (_, text) = statuses(&ex32, "B", &[C1, C4]);
    findings.push(AuditFinding {
        id: "EX3.2-ANTI-SUBGROUP".into(),
        citation: "Example 3.2, statement of B".into(),
        claim: "B = (C, *) is the set {2 3 5} and an anti-subgroup of C".into(),
        derived: format!(
            "B names both the structure on C and the set {{2 3 5}}; table on {{2 3 5}}: {text}"
        ),
        status: AuditStatus::NotWellFormed,
    });

    let (pa, a, bb) = (ex33.space("P").unwrap(), ex33.set("A").unwrap(), ex33.set("B").unwrap());
    let rep = ras_core::check_intersection_relations(pa, a, bb).expect("same universe");
    let ui = labels(&rep.upper_of_intersection);
    findings.push(AuditFinding {
        id: "EX3.3-INTERSECTION".into(),
        citation: "Example 3.3, upper approximation of A and B intersected".into(),
        claim: "A ∩ B = {2 5}, upper(A ∩ B) = {1 2 3 5}".into(),
        derived: format!("A ∩ B = {}, upper(A ∩ B) = {}", set_text(&labels(&rep.intersection)), set_text(&ui)),
        status: status(labels(&rep.intersection) == ["2", "5"] && ui == ["1", "2", "3", "5"]),
    });
    let meet = labels(&rep.uppers_meet);
    findings.push(AuditFinding {
        id: "EX3.3-UPPERS-MEET".into(),
        citation: "Example 3.3, meet of the two upper approximations".into(),
        claim: "upper(A) ∩ upper(B) = {1 2 3}".into(),
        derived: format!(
            "upper(A) = {}, upper(B) = {}, meet = {}",
            set_text(&labels(&rep.upper_a)),
            set_text(&labels(&rep.upper_b)),
            set_text(&meet)
        ),
        status: status(meet == ["1", "2", "3"]),
    });

    let u = ex31.universe("U").unwrap();
    let stated_blocks: Vec<Subset> = [&["1", "2", "3"][..], &["4"], &["5"]]
        .iter()
        .map(|b| Subset::from_labels(u, b.iter().copied()).expect("labels of U"))
        .collect();
    let derived = match ApproxSpace::new(&Arc::clone(u), &stated_blocks) {
        Ok(_) => "the classes partition U".to_string(),
        Err(e) => format!("not a partition of U = {{1 2 3 4 5 6}}: {}", e.with_labels(u)),
    };
    findings.push(AuditFinding {
        id: "P-PARTITION-COVER".into(),
        citation: "Example 3.1, classification of U".into(),
        claim: "U/~ = {E1, E2, E3} with E1 = {1 2 3}, E2 = {4}, E3 = {5}".into(),
        status: if derived.starts_with("not") { AuditStatus::NotWellFormed } else { AuditStatus::Match },
        derived,
    });

    AuditReport { findings }
}
