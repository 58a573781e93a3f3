use ras::cli::{run, EXIT_ASSERT, EXIT_OK, EXIT_USAGE};
use ras::dsl::parse_scenario;
use ras::report::Report;

const FIX: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/");

fn ras(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("ras").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn fix(name: &str) -> String {
    format!("{FIX}{name}")
}

#[test]
fn classify_reports_ag4() {
    let (code, out, _) = ras(&["classify", &fix("example31.ras"), "--table", "C"]);
    assert_eq!(code, EXIT_OK);
    let flags = out.lines().find(|l| l.starts_with("flags:")).unwrap();
    assert!(flags.contains("ag4=true"), "{flags}");
    assert!(out.contains("neutrals: 1->{2}"), "{out}");
}

#[test]
fn laws_line_for_l5() {
    let (code, out, _) = ras(&["laws", "--max-n", "3", "--law", "L5"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("0 failures / 356 instances checked"), "{out}");
}

#[test]
fn json_round_trips_through_the_report_types() {
    let cases: [&[&str]; 6] = [
        &["parse", "example31.ras"],
        &["approx", "example31.ras", "--space", "P", "--set", "A"],
        &["classify", "example31.ras", "--table", "C"],
        &["check", "rough-semigroup", "example31.ras", "--space", "P", "--table", "A", "--ambient", "C"],
        &["laws", "--max-n", "2", "--law", "P31", "--law", "L1"],
        &["audit-paper"],
    ];
    for args in cases {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let (code, out, err) = ras(&full);
        assert_eq!(code, EXIT_OK, "{args:?}: {err}");
        let r: Report = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
        assert_eq!(r.to_json() + "\n", out);
    }
}

#[test]
fn json_rejects_unknown_fields() {
    let (_, out, _) = ras(&["--json", "audit-paper"]);
    let mut v: serde_json::Value = serde_json::from_str(&out).unwrap();
    v["surprise"] = serde_json::json!(1);
    assert!(serde_json::from_value::<Report>(v).is_err());
}

#[test]
fn output_is_reproducible() {
    let args = ["search", "--universe-size", "3", "--carrier-size", "2", "--require", "C4=AllFalse", "--limit", "3"];
    assert_eq!(ras(&args), ras(&args));
}

#[test]
fn jobs_do_not_change_output() {
    for args in [
        &["laws", "--max-n", "3", "--law", "P31", "--law", "L2"][..],
        &["search", "--universe-size", "3", "--carrier-size", "3", "--require", "C4=AllFalse", "--limit", "4"],
        &["search", "--universe-size", "3", "--carrier-size", "2", "--structural", "rough-anti-semigroup", "--limit", "3"],
    ] {
        let seq = ras(args);
        let mut par = args.to_vec();
        par.extend(["--jobs", "4"]);
        assert_eq!(seq, ras(&par), "{args:?}");
    }
}

#[test]
fn search_output_is_a_scenario() {
    let (code, out, _) =
        ras(&["search", "--universe-size", "3", "--carrier-size", "2", "--structural", "rough-carrier", "--limit", "2"]);
    assert_eq!(code, EXIT_OK);
    let s = parse_scenario(&out).unwrap_or_else(|d| panic!("{d}\n{out}"));
    assert_eq!(s.tables.len(), 2);
    assert_eq!(s.partitions.len(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(ras(&["audit-paper", "--assert"]).0, EXIT_ASSERT);
    assert_eq!(ras(&["audit-paper"]).0, EXIT_OK);
    assert_eq!(ras(&["classify", &fix("example31.ras"), "--table", "Nope"]).0, EXIT_USAGE);
    assert_eq!(ras(&["parse", "/nonexistent/x.ras"]).0, EXIT_USAGE);
    assert_eq!(ras(&["laws", "--law", "L99"]).0, EXIT_USAGE);
    assert_eq!(ras(&["search", "--universe-size", "9", "--carrier-size", "2"]).0, EXIT_USAGE);
    let (code, _, err) = ras(&["check", "morphism", &fix("z4.ras"), "--map", "N", "--kind", "rough-hom", "--table-a", "Add", "--table-b", "Add"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--space-a"));
    let (code, _, _) = ras(&["check", "morphism", &fix("z4.ras"), "--map", "N", "--kind", "hom", "--table-a", "Add", "--table-b", "Add", "--assert"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn parse_errors_carry_position() {
    let dir = std::env::temp_dir().join(format!("ras-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.ras");
    std::fs::write(&path, "universe U = { 1 2 }\npartition P on U = { 1 } { 3 }\n").unwrap();
    let (code, out, err) = ras(&["parse", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("bad.ras:2:"), "{err}");
}

#[test]
fn approx_notes_the_stated_value() {
    let (_, out, _) = ras(&["approx", &fix("example31.ras"), "--space", "P", "--set", "A"]);
    assert!(out.contains("upper = {1 2 3 5}"));
    assert!(out.contains("EX3.1-UPPER-A"), "{out}");
}
