//! The `ras` command line.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ras_core::enumerate::{
    sweep_approx_laws, sweep_intersection, sweep_product_laws, SearchSpec, Structural,
    MAX_TOTAL_TABLE_UNIVERSE,
};
use ras_core::{
    check_hom, check_rough_anti_semigroup, check_rough_anti_subsemigroup, check_rough_hom, ApproxLaw,
    IntersectionRelation, LawId, LawStatus, MorphismKind, ProductRelation,
};

use crate::audit::{fixture_text, run_audit, upper_claim_for};
use crate::dsl::{parse_scenario_bytes, Diagnostic, LookupError, Scenario};
use crate::par;
use crate::report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ras", version, about = "Rough sets and anti-structures on finite universes")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for `laws` and `search`.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    /// Exit with status 1 when a verdict is false or an audit item does not match.
    #[arg(long = "assert", global = true)]
    pub assert: bool,
    /// Report elapsed time on stderr.
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a scenario file.
    Parse { file: PathBuf },
    /// Lower and upper approximation of a set.
    Approx {
        file: PathBuf,
        #[arg(long)]
        space: String,
        #[arg(long)]
        set: String,
    },
    /// Evaluate C1-C10 on a table and derive the class flags.
    Classify {
        file: PathBuf,
        #[arg(long)]
        table: String,
    },
    /// Structural checks.
    #[command(subcommand)]
    Check(Check),
    /// Exhaustive law suites over small universes.
    Laws {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// L1..L9, P22 (products), P31 (intersections), P41/P42 (compositions).
        #[arg(long = "law")]
        laws: Vec<String>,
    },
    /// Enumerate tables (and partitions) meeting constraints.
    Search(SearchArgs),
    /// Recompute the bundled worked examples and compare with the stated claims.
    AuditPaper,
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// Closure into the upper approximation and associativity inside it.
    RoughSemigroup {
        file: PathBuf,
        #[arg(long)]
        space: String,
        #[arg(long)]
        table: String,
        /// Table used for products outside the checked table's carrier.
        #[arg(long)]
        ambient: Option<String>,
    },
    /// Closure of a subset into its own upper approximation.
    RoughSubsemigroup {
        file: PathBuf,
        #[arg(long)]
        space: String,
        #[arg(long)]
        table: String,
        #[arg(long)]
        subset: String,
    },
    /// Homomorphism-type conditions for a declared map.
    Morphism {
        file: PathBuf,
        #[arg(long)]
        map: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        table_a: String,
        #[arg(long)]
        table_b: String,
        #[arg(long)]
        space_a: Option<String>,
        #[arg(long)]
        space_b: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum KindArg {
    Hom,
    AntiHom,
    RoughHom,
    RoughAntiHom,
    AntiGroupHom,
}

impl From<KindArg> for MorphismKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Hom => MorphismKind::Hom,
            KindArg::AntiHom => MorphismKind::AntiHom,
            KindArg::RoughHom => MorphismKind::RoughHom,
            KindArg::RoughAntiHom => MorphismKind::RoughAntiHom,
            KindArg::AntiGroupHom => MorphismKind::AntiGroupHom,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructuralArg {
    RoughAntiSemigroup,
    RoughCarrier,
    Congruence,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub universe_size: usize,
    #[arg(long)]
    pub carrier_size: usize,
    /// `LAW=STATUS`, e.g. `C4=AllFalse`.
    #[arg(long = "require")]
    pub require: Vec<String>,
    /// Predicates that range over all partitions of the universe.
    #[arg(long, value_enum)]
    pub structural: Vec<StructuralArg>,
    #[arg(long)]
    pub allow_indet: bool,
    #[arg(long, default_value_t = 1)]
    pub limit: usize,
    #[arg(long, default_value_t = 100_000_000)]
    pub budget: u64,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Parse { file: String, diag: Diagnostic },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) => f.write_str(m),
            CliError::Parse { file, diag } => write!(f, "{file}:{diag}"),
        }
    }
}

impl From<LookupError> for CliError {
    fn from(e: LookupError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn load(path: &Path) -> Result<Scenario, CliError> {
    let name = path.display().to_string();
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        // Bundled fixtures resolve by bare file name.
        Err(e) => match path.to_str().and_then(fixture_text) {
            Some(t) if !path.exists() => t.as_bytes().to_vec(),
            _ => return Err(CliError::Input(format!("{name}: {e}"))),
        },
    };
    parse_scenario_bytes(&bytes).map_err(|diag| CliError::Parse { file: name, diag })
}

fn core_err(e: ras_core::Error, u: Option<&ras_core::Universe>) -> CliError {
    CliError::Input(match u {
        Some(u) => e.with_labels(u).to_string(),
        None => e.to_string(),
    })
}

enum Suite {
    Approx(Vec<ApproxLaw>),
    Product,
    Intersection,
    Composition(bool),
}

fn parse_suites(names: &[String]) -> Result<Vec<Suite>, CliError> {
    if names.is_empty() {
        return Ok(vec![Suite::Approx(ApproxLaw::ALL.to_vec())]);
    }
    let mut approx = Vec::new();
    let mut other = Vec::new();
    for n in names {
        match (ApproxLaw::parse(n), n.to_ascii_uppercase().as_str()) {
            (Some(l), _) => approx.push(l),
            (None, "P22") => other.push(Suite::Product),
            (None, "P31") => other.push(Suite::Intersection),
            (None, "P41") => other.push(Suite::Composition(false)),
            (None, "P42") => other.push(Suite::Composition(true)),
            _ => return Err(CliError::Usage(format!("unknown law `{n}` (expected L1..L9, P22, P31, P41, P42)"))),
        }
    }
    let mut out = Vec::new();
    if !approx.is_empty() {
        approx.sort();
        approx.dedup();
        out.push(Suite::Approx(approx));
    }
    out.extend(other);
    Ok(out)
}

fn run_laws(max_n: usize, names: &[String], jobs: usize) -> Result<Report, CliError> {
    let mut suites = Vec::new();
    let size_err = |e: ras_core::Error| CliError::Usage(e.to_string());
    let capped = max_n.min(MAX_TOTAL_TABLE_UNIVERSE);
    let cap_note = |suite: &str| {
        (capped < max_n).then(|| format!("{suite} covers every total table, so it stops at n = {capped}"))
    };
    for suite in parse_suites(names)? {
        match suite {
            Suite::Approx(laws) => {
                let r = par::sweep(jobs, |s| sweep_approx_laws(max_n, &laws, s)).map_err(size_err)?;
                let describe = |name: &str| ApproxLaw::parse(name).map_or("", |l| l.describe()).to_string();
                suites.push(SuiteDto::from_sweep("approx", max_n, &r, describe));
            }
            Suite::Intersection => {
                let r = par::sweep(jobs, |s| sweep_intersection(max_n, s)).map_err(size_err)?;
                let describe = |name: &str| {
                    IntersectionRelation::ALL.iter().find(|r| r.tag() == name).map_or("", |r| r.describe()).to_string()
                };
                suites.push(SuiteDto::from_sweep("P31", max_n, &r, describe));
            }
            Suite::Product => {
                let r = par::sweep(jobs, |s| sweep_product_laws(capped, s)).map_err(size_err)?;
                let describe = |name: &str| {
                    ProductRelation::ALL.iter().find(|r| r.tag() == name).map_or("", |r| r.describe()).to_string()
                };
                let mut dto = SuiteDto::from_sweep("P22", capped, &r, describe);
                dto.note = cap_note("P22");
                suites.push(dto);
            }
            Suite::Composition(both_anti) => {
                let mut tally = (0, 0);
                let mut tables = 0;
                let mut first = None;
                for n in 1..=capped {
                    let r = par::composition(jobs, n).map_err(size_err)?;
                    let t = if both_anti { r.anti_after_anti } else { r.anti_after_hom };
                    tally.0 += t.0;
                    tally.1 += t.1;
                    tables += r.tables as u64;
                    if first.is_none() && t.1 > 0 {
                        first = r.first_counterexample.map(|(t, o, i)| {
                            format!("table {} outer {:?} inner {:?}", rows_text(&t), o.pairs().collect::<Vec<_>>(), i.pairs().collect::<Vec<_>>())
                        });
                    }
                }
                let (suite, name, description) = if both_anti {
                    ("P42", "anti∘anti", "composite of two anti-homs is a hom")
                } else {
                    ("P41", "anti∘hom", "anti-hom after hom is an anti-hom")
                };
                suites.push(SuiteDto {
                    suite: suite.into(),
                    max_universe_size: capped,
                    units: tables,
                    instances: tally.0,
                    relations: vec![RelationTallyDto {
                        name: name.into(),
                        description: description.into(),
                        failures: tally.1,
                        first_failure: first,
                    }],
                    note: cap_note(suite),
                });
            }
        }
    }
    Ok(Report::Laws(LawsReport { suites }))
}

fn run_search(a: &SearchArgs, jobs: usize) -> Result<Report, CliError> {
    let mut spec = SearchSpec::new(a.universe_size, a.carrier_size);
    spec.allow_indet = a.allow_indet;
    spec.limit = a.limit;
    spec.budget = a.budget;
    for r in &a.require {
        let (law, status) = r
            .split_once('=')
            .and_then(|(l, s)| Some((LawId::parse(l.trim())?, LawStatus::parse(s.trim())?)))
            .ok_or_else(|| CliError::Usage(format!("bad --require `{r}` (expected e.g. C4=AllFalse)")))?;
        spec.laws.push((law, status));
    }
    spec.structural = a
        .structural
        .iter()
        .map(|s| match s {
            StructuralArg::RoughAntiSemigroup => Structural::RoughAntiSemigroup,
            StructuralArg::RoughCarrier => Structural::RoughCarrier,
            StructuralArg::Congruence => Structural::Congruence,
        })
        .collect();
    let outcome = par::search(jobs, &spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let (matches, scenario) = SearchReport::matches_and_scenario(&outcome);
    Ok(Report::Search(SearchReport {
        universe_size: spec.universe_size,
        carrier_size: spec.carrier_size,
        allow_indet: spec.allow_indet,
        requirements: spec.laws.iter().map(|(l, s)| format!("{}={}", l.name(), s.name())).collect(),
        structural: a
            .structural
            .iter()
            .map(|s| s.to_possible_value().expect("not skipped").get_name().to_string())
            .collect(),
        limit: spec.limit,
        budget: spec.budget,
        space_size: outcome.space_size,
        examined: outcome.examined,
        truncated: outcome.truncated,
        matches,
        scenario,
    }))
}

fn run_check(c: &Check) -> Result<Report, CliError> {
    match c {
        Check::RoughSemigroup { file, space, table, ambient } => {
            let s = load(file)?;
            let (p, t) = (s.space(space)?, s.table(table)?);
            let amb = ambient.as_deref().map(|a| s.table(a)).transpose()?;
            let v = check_rough_anti_semigroup(p, t, amb).map_err(|e| core_err(e, None))?;
            let carrier = t.carrier();
            Ok(Report::RoughSemigroup(RoughReport::new(space, table, table, &carrier, ambient.as_deref(), &v)))
        }
        Check::RoughSubsemigroup { file, space, table, subset } => {
            let s = load(file)?;
            let (p, t, h) = (s.space(space)?, s.table(table)?, s.set(subset)?);
            let v = check_rough_anti_subsemigroup(p, t, h).map_err(|e| core_err(e, Some(h.universe())))?;
            Ok(Report::RoughSubsemigroup(RoughReport::new(space, table, subset, h, None, &v)))
        }
        Check::Morphism { file, map, kind, table_a, table_b, space_a, space_b } => {
            let s = load(file)?;
            let (phi, ta, tb) = (s.map(map)?, s.table(table_a)?, s.table(table_b)?);
            let kind = MorphismKind::from(*kind);
            let du = phi.domain().universe().clone();
            let r = if kind.is_rough() {
                let (Some(pa), Some(pb)) = (space_a, space_b) else {
                    return Err(CliError::Usage(format!("--kind {} needs --space-a and --space-b", kind.name())));
                };
                check_rough_hom(s.space(pa)?, s.space(pb)?, phi, ta, tb, kind)
            } else {
                check_hom(phi, ta, tb, kind)
            }
            .map_err(|e| core_err(e, Some(&du)))?;
            Ok(Report::Morphism(MorphismDto::new(map, phi, &r)))
        }
    }
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let jobs = usize::from(cli.jobs);
    match &cli.command {
        Command::Parse { file } => {
            let s = load(file)?;
            let names = |it: Vec<&String>| it.into_iter().cloned().collect::<Vec<_>>();
            Ok(Report::Parse(ParseReport {
                file: file.display().to_string(),
                universes: names(s.universes.keys().collect()),
                partitions: names(s.partitions.keys().collect()),
                sets: names(s.sets.keys().collect()),
                tables: names(s.tables.keys().collect()),
                maps: names(s.maps.keys().collect()),
            }))
        }
        Command::Approx { file, space, set } => {
            let s = load(file)?;
            let (p, x) = (s.space(space)?, s.set(set)?);
            let r = p.approximate(x).map_err(|e| core_err(e, None))?;
            let note = upper_claim_for(p, x).map(|c| {
                let stated: Vec<String> = c.stated.iter().map(|s| s.to_string()).collect();
                let got = labels(&r.upper);
                if got == stated {
                    format!("{}: agrees with the stated upper = {}", c.id, set_text(&stated))
                } else {
                    format!("{}: the worked example states upper = {}", c.id, set_text(&stated))
                }
            });
            Ok(Report::Approx(ApproxReport::new(space, set, x, &r, note)))
        }
        Command::Classify { file, table } => {
            let s = load(file)?;
            let t = s.table(table)?;
            Ok(Report::Classify(ClassifyReport::new(table, t, &t.classify())))
        }
        Command::Check(c) => run_check(c),
        Command::Laws { max_n, laws } => run_laws(*max_n, laws, jobs),
        Command::Search(a) => run_search(a, jobs),
        Command::AuditPaper => Ok(Report::Audit(run_audit())),
    }
}

/// Runs the command line, writing the report to `out` and diagnostics to
/// `err`; returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let start = Instant::now();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = if cli.json { report.to_json() + "\n" } else { report.render() };
    if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
        return EXIT_INTERNAL;
    }
    if cli.verbose {
        let _ = writeln!(err, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    if cli.assert && !report.passes() {
        let _ = writeln!(err, "assertion failed: report contains false verdicts");
        return EXIT_ASSERT;
    }
    EXIT_OK
}
