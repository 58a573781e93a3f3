//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use proptest::prelude::Rng;
use proptest::test_runner::{RngAlgorithm, TestRng};
use ras::audit::{fixture, run_audit, FIXTURES};
use ras::dsl::{parse_scenario, parse_scenario_bytes, serialize_scenario};
use ras::report::AuditStatus;
use ras_core::enumerate::*;
use ras_core::*;

const LAWS_BOUND: Duration = Duration::from_secs(5);
const ORACLE_BOUND: Duration = Duration::from_secs(2);
const Z4_BOUND: Duration = Duration::from_secs(1);
const COMPOSITION_BOUND: Duration = Duration::from_secs(30);
const FUZZ_BOUND: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn timed(bound: Duration, start: Instant) -> Outcome {
    let t = start.elapsed();
    ensure!(t <= bound, "took {:.2}s, bound {:.0}s", t.as_secs_f64(), bound.as_secs_f64());
    Ok(format!("{:.2}s of {:.0}s", t.as_secs_f64(), bound.as_secs_f64()))
}

fn s<E: ToString>(e: E) -> String {
    e.to_string()
}

/// Lower and upper approximations per definition, from class labels.
fn naive(labels: &[usize], x: &[bool]) -> (Vec<bool>, Vec<bool>) {
    let n = labels.len();
    let class = |i: usize| (0..n).filter(move |&j| labels[j] == labels[i]);
    let lower = (0..n).map(|i| class(i).all(|j| x[j])).collect();
    let upper = (0..n).map(|i| class(i).any(|j| x[j])).collect();
    (lower, upper)
}

fn flags_of(set: &Subset) -> Vec<bool> {
    (0..set.universe().size()).map(|i| set.contains(Elem(i))).collect()
}

fn labels_of(set: &Subset) -> Vec<String> {
    set.labels().into_iter().map(String::from).collect()
}

fn c1_approx_laws() -> Outcome {
    let start = Instant::now();
    let r = sweep_approx_laws(4, &ApproxLaw::ALL, Shard::ALL).map_err(s)?;
    ensure!(r.units == 23, "{} spaces, expected 23", r.units);
    // Bell(n) spaces times (2^n)^2 ordered subset pairs each.
    let pairs: u64 = [(1u64, 1u64), (2, 2), (3, 5), (4, 15)].iter().map(|&(n, b)| b << (2 * n)).sum();
    ensure!(r.instances == pairs, "{} instances, expected {pairs}", r.instances);
    ensure!(r.total_failures() == 0, "{} failures", r.total_failures());
    Ok(format!("23 spaces, {pairs} pairs, 0 failures; {}", timed(LAWS_BOUND, start)?))
}

fn c2_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    for case in 0..1000 {
        let n = 1 + (rng.next_u32() % 8) as usize;
        let labels: Vec<usize> = (0..n).map(|_| (rng.next_u32() as usize) % n).collect();
        let x: Vec<bool> = (0..n).map(|_| rng.next_u32() & 1 == 1).collect();
        let u = Arc::new(Universe::numbered(n).map_err(s)?);
        let space = ApproxSpace::from_class_labels(&u, &labels).map_err(s)?;
        let sx = Subset::from_elems(&u, (0..n).filter(|&i| x[i]).map(Elem)).map_err(s)?;
        let r = space.approximate(&sx).map_err(s)?;
        let (lo, up) = naive(&labels, &x);
        ensure!(
            flags_of(&r.lower) == lo && flags_of(&r.upper) == up,
            "case {case}: labels {labels:?} x {x:?}"
        );
    }
    Ok(format!("1000 instances agree; {}", timed(ORACLE_BOUND, start)?))
}

fn c3_audit_matches() -> Outcome {
    let r = run_audit();
    for id in ["EX3.2-UPPER-B", "EX3.3-INTERSECTION"] {
        let f = r.get(id).ok_or(format!("{id} missing"))?;
        ensure!(f.status == AuditStatus::Match, "{id}: {:?}", f.status);
        ensure!(f.derived.contains("{1 2 3 5}"), "{id}: derived `{}`", f.derived);
    }
    Ok("EX3.2-UPPER-B and EX3.3-INTERSECTION MATCH with upper = {1 2 3 5}".into())
}

fn c4_audit_discrepancies() -> Outcome {
    let r = run_audit();
    let want = [
        ("EX3.1-UPPER-A", AuditStatus::Discrepancy, "{1 2 3 5}"),
        ("P-PARTITION-COVER", AuditStatus::NotWellFormed, "`6`"),
        ("EX3.1-DEF31", AuditStatus::Discrepancy, "(1,1) -> 4"),
        ("EX3.2-DEF32", AuditStatus::Discrepancy, "(2,2) -> 4"),
    ];
    for (id, status, witness) in want {
        let f = r.get(id).ok_or(format!("{id} missing"))?;
        ensure!(f.status == status, "{id}: {:?}", f.status);
        ensure!(f.derived.contains(witness), "{id}: derived `{}` lacks {witness}", f.derived);
    }

    // Recheck the witnesses without the library's approximation engine.
    let s31 = fixture("example31.ras");
    let labels = s31.space("P").map_err(s)?.class_labels().to_vec();
    let upper_of = |set: &Subset| naive(&labels, &flags_of(set)).1;
    let expected = [true, true, true, false, true, false];
    let up_a = upper_of(s31.set("A").map_err(s)?);
    ensure!(up_a == expected, "oracle upper(A) = {up_a:?}");
    let ta = s31.table("A").map_err(s)?;
    ensure!(ta.product(Elem(0), Elem(0)) == Some(Elem(3)), "A: 1*1 is not 4");

    let s32 = fixture("example32.ras");
    let up_b = upper_of(s32.set("B").map_err(s)?);
    ensure!(up_b == expected, "oracle upper(B) = {up_b:?}");
    let tb = s32.table("B").map_err(s)?;
    ensure!(tb.product(Elem(1), Elem(1)) == Some(Elem(3)), "B: 2*2 is not 4");

    // The stated classes {1 2 3} {4} {5} cover five of the six elements.
    ensure!(3 + 1 + 1 < s31.universe("U").map_err(s)?.size(), "stated classes cover U");
    Ok("UPPER-A, DEF31, DEF32 DISCREPANCY and PARTITION-COVER NOT-WELL-FORMED; witnesses rechecked".into())
}

fn c5_ag4() -> Outcome {
    let sc = fixture("example31.ras");
    let t = sc.table("C").map_err(s)?;
    let c = t.classify();
    ensure!(c.status(LawId::C4) == LawStatus::AllFalse, "C4 {:?}", c.status(LawId::C4));
    for law in [LawId::C1, LawId::C2, LawId::C3, LawId::C5] {
        ensure!(c.status(law) == LawStatus::Mixed, "{} {:?}", law.name(), c.status(law));
    }
    ensure!(c.flags.is_ag4, "ag4 flag unset");
    let e = |l: &str| t.universe().elem(l).unwrap();
    let n1 = t.local_neutrals(e("1")).map_err(s)?;
    ensure!(labels_of(&n1) == ["2"], "neutrals of 1: {:?}", n1.labels());
    let assoc = |a, b, c| {
        let (l, r) = (t.left_assoc(e(a), e(b), e(c)), t.right_assoc(e(a), e(b), e(c)));
        l.is_some() && l == r
    };
    ensure!(assoc("1", "3", "5"), "(1,3,5) not associative");
    ensure!(!assoc("2", "3", "5"), "(2,3,5) associative");
    Ok("C4 AllFalse, C1/C2/C3/C5 Mixed, ag4, neutral(1) = {2}, (1,3,5) true, (2,3,5) false".into())
}

fn c6_z4() -> Outcome {
    let start = Instant::now();
    let sc = fixture("z4.ras");
    let t = sc.table("Add").map_err(s)?;
    let space = sc.space("Cosets").map_err(s)?;
    ensure!(t.is_congruence(space).map_err(s)?.holds, "cosets not a congruence");
    let u = t.universe().clone();
    let mut pairs = 0;
    for x in subsets(4).skip(1) {
        for y in subsets(4).skip(1) {
            let (sx, sy) = (Subset::from_bits(&u, x.clone()), Subset::from_bits(&u, y));
            let r = t.check_product_approx_laws(space, &sx, &sy).map_err(s)?;
            for rel in [ProductRelation::UpperSubset, ProductRelation::UpperSuperset, ProductRelation::LowerSubset] {
                ensure!(r.get(rel).holds, "{} fails at X={:?} Y={:?}", rel.tag(), sx.labels(), sy.labels());
            }
            pairs += 1;
        }
    }
    ensure!(pairs == 225, "{pairs} pairs");
    Ok(format!("225 pairs, upper equality and lower inclusion hold; {}", timed(Z4_BOUND, start)?))
}

fn c7_intersection_counterexample() -> Outcome {
    let bounds = Bounds { max_universe_size: 4, budget: u64::MAX };
    let out = find_counterexample(Relation::Intersection(IntersectionRelation::Contains), bounds).map_err(s)?;
    let CounterexampleOutcome::Found { counterexample: cx, examined } = out else {
        return Err(format!("{out:?}"));
    };
    ensure!(cx.space.universe().size() == 2, "n = {}", cx.space.universe().size());
    ensure!(cx.space.num_blocks() == 1, "{} blocks", cx.space.num_blocks());
    ensure!(
        labels_of(&cx.x) == ["1"] && labels_of(&cx.y) == ["2"],
        "A={:?} B={:?}",
        cx.x.labels(),
        cx.y.labels()
    );
    Ok(format!("n=2, one block, A={{1}}, B={{2}} after {examined} instances"))
}

fn c8_composition() -> Outcome {
    let start = Instant::now();
    let r = sweep_composition(2, Shard::ALL).map_err(s)?;
    ensure!(r.tables == 16, "{} tables, expected 2^4", r.tables);
    ensure!(r.anti_after_hom.0 > 0 && r.anti_after_anti.0 > 0, "no premises met: {r:?}");
    ensure!(r.holds(), "counterexample {:?}", r.first_counterexample);
    Ok(format!(
        "16 tables, {} + {} pairs, 0 counterexamples; {}",
        r.anti_after_hom.0,
        r.anti_after_anti.0,
        timed(COMPOSITION_BOUND, start)?
    ))
}

fn c9_generators() -> Outcome {
    for (n, b) in (1..=5).zip([1, 2, 5, 15, 52]) {
        let got = enum_partitions(n).map_err(s)?.count();
        ensure!(got == b, "Bell({n}) = {got}");
    }
    let u = Arc::new(Universe::numbered(3).map_err(s)?);
    let carrier = Subset::from_elems(&u, [Elem(0), Elem(1)]).map_err(s)?;
    let tables = enum_tables(&carrier, false).map_err(s)?.count();
    ensure!(tables == 81, "{tables} tables");
    let v = Arc::new(Universe::numbered(2).map_err(s)?);
    let maps = enum_mappings(&Subset::full(&u), &Subset::full(&v), true).map_err(s)?.count();
    ensure!(maps == 6, "{maps} surjections");
    Ok("1 2 5 15 52 partitions; 81 tables; 6 surjections".into())
}

fn mutate(rng: &mut TestRng, text: &str) -> Vec<u8> {
    const PUNCT: &[u8] = b" {}:=->?#\nA1";
    let mut b = text.as_bytes().to_vec();
    for _ in 0..1 + rng.next_u32() % 4 {
        let i = (rng.next_u32() as usize) % b.len();
        match rng.next_u32() % 3 {
            0 => b[i] = rng.next_u32() as u8,
            1 => {
                b.remove(i);
            }
            _ => b.insert(i, PUNCT[(rng.next_u32() as usize) % PUNCT.len()]),
        }
    }
    b
}

fn c10_dsl() -> Outcome {
    let start = Instant::now();
    for (name, text) in FIXTURES {
        let sc = parse_scenario(text).map_err(|d| format!("{name}: {d}"))?;
        let again = parse_scenario(&serialize_scenario(&sc)).map_err(|d| format!("{name} reparse: {d}"))?;
        ensure!(again == sc, "{name} does not round-trip");
    }
    let mut rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let (mut ok, mut diag) = (0, 0);
    for case in 0..10_000 {
        // Odd cases mutate a fixture so the parser gets past the lexer.
        let bytes: Vec<u8> = if case % 2 == 0 {
            let len = (rng.next_u32() % 256) as usize;
            (0..len).map(|_| rng.next_u32() as u8).collect()
        } else {
            mutate(&mut rng, FIXTURES[case % FIXTURES.len()].1)
        };
        match panic::catch_unwind(AssertUnwindSafe(|| parse_scenario_bytes(&bytes))) {
            Ok(Ok(_)) => ok += 1,
            Ok(Err(_)) => diag += 1,
            Err(_) => return Err(format!("case {case} panicked on {:?}", String::from_utf8_lossy(&bytes))),
        }
    }
    Ok(format!(
        "{} fixtures round-trip; 10000 fuzz cases: {ok} valid, {diag} diagnostics; {}",
        FIXTURES.len(),
        timed(FUZZ_BOUND, start)?
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("approximation-law suite", c1_approx_laws),
        ("oracle equivalence", c2_oracle),
        ("audit matches", c3_audit_matches),
        ("audit discrepancies", c4_audit_discrepancies),
        ("AG(4) classification", c5_ag4),
        ("products under congruence", c6_z4),
        ("intersection counterexample", c7_intersection_counterexample),
        ("composition sweep", c8_composition),
        ("generator counts", c9_generators),
        ("DSL robustness", c10_dsl),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
