//! Machine-readable reports and their text rendering.
//!
//! Every report kind has a fixed field set; deserialization rejects unknown
//! fields so a round trip through these types doubles as schema validation.

use std::fmt::Write as _;

use ras_core::algebra::Instance;
use ras_core::enumerate::{SearchOutcome, SweepReport};
use ras_core::rough::ClosureWitness;
use ras_core::{
    ApproxResult, Cell, Classification, Elem, LawId, Mapping, MorphismReport, OpTable, RoughStructVerdict, Subset,
    Universe,
};
use serde::{Deserialize, Serialize};

use crate::dsl::{render_partition, render_table, render_universe};

pub fn labels(s: &Subset) -> Vec<String> {
    s.labels().into_iter().map(String::from).collect()
}

fn label(u: &Universe, e: Elem) -> String {
    u.label(e).to_string()
}

fn cell(u: &Universe, c: Cell) -> String {
    match c {
        Cell::Value(v) => label(u, v),
        Cell::Indet => "?".into(),
    }
}

/// `{a b c}`.
pub fn set_text(items: &[String]) -> String {
    format!("{{{}}}", items.join(" "))
}

fn tuple_text(items: &[String]) -> String {
    format!("({})", items.join(","))
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "report", rename_all = "kebab-case")]
pub enum Report {
    Parse(ParseReport),
    Approx(ApproxReport),
    Classify(ClassifyReport),
    RoughSemigroup(RoughReport),
    RoughSubsemigroup(RoughReport),
    Morphism(MorphismDto),
    Laws(LawsReport),
    Search(SearchReport),
    Audit(AuditReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render(&self) -> String {
        match self {
            Report::Parse(r) => r.render(),
            Report::Approx(r) => r.render(),
            Report::Classify(r) => r.render(),
            Report::RoughSemigroup(r) | Report::RoughSubsemigroup(r) => r.render(),
            Report::Morphism(r) => r.render(),
            Report::Laws(r) => r.render(),
            Report::Search(r) => r.render(),
            Report::Audit(r) => r.render(),
        }
    }

    /// Whether every verdict in the report is positive.
    pub fn passes(&self) -> bool {
        match self {
            Report::Parse(_) | Report::Approx(_) | Report::Classify(_) | Report::Search(_) => true,
            Report::RoughSemigroup(r) | Report::RoughSubsemigroup(r) => r.overall,
            Report::Morphism(r) => r.overall,
            Report::Laws(r) => r.suites.iter().all(|s| s.relations.iter().all(|x| x.failures == 0)),
            Report::Audit(r) => r.findings.iter().all(|f| f.status == AuditStatus::Match),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ParseReport {
    pub file: String,
    pub universes: Vec<String>,
    pub partitions: Vec<String>,
    pub sets: Vec<String>,
    pub tables: Vec<String>,
    pub maps: Vec<String>,
}

impl ParseReport {
    fn render(&self) -> String {
        let mut out = format!("{}: ok\n", self.file);
        for (kind, names) in [
            ("universes", &self.universes),
            ("partitions", &self.partitions),
            ("sets", &self.sets),
            ("tables", &self.tables),
            ("maps", &self.maps),
        ] {
            let _ = writeln!(out, "  {kind}: {}", names.join(" "));
        }
        out
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ApproxReport {
    pub space: String,
    pub set: String,
    pub elements: Vec<String>,
    pub lower: Vec<String>,
    pub upper: Vec<String>,
    pub boundary: Vec<String>,
    pub rough: bool,
    /// Set when the inputs coincide with a bundled audit item.
    pub note: Option<String>,
}

impl ApproxReport {
    pub fn new(space: &str, set: &str, x: &Subset, r: &ApproxResult, note: Option<String>) -> Self {
        ApproxReport {
            space: space.into(),
            set: set.into(),
            elements: labels(x),
            lower: labels(&r.lower),
            upper: labels(&r.upper),
            boundary: labels(&r.boundary),
            rough: r.is_rough,
            note,
        }
    }

    fn render(&self) -> String {
        let mut out = format!("set {} = {} under {}\n", self.set, set_text(&self.elements), self.space);
        let _ = writeln!(out, "lower = {}", set_text(&self.lower));
        let _ = writeln!(out, "upper = {}", set_text(&self.upper));
        let _ = writeln!(out, "boundary = {}", set_text(&self.boundary));
        let _ = writeln!(out, "rough = {}", self.rough);
        if let Some(n) = &self.note {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

pub fn law_title(l: LawId) -> &'static str {
    match l {
        LawId::C1 => "closure",
        LawId::C2 => "associativity",
        LawId::C3 => "local neutral",
        LawId::C4 => "inverse",
        LawId::C5 => "commutativity",
        LawId::C6 => "anti-closure",
        LawId::C7 => "anti-associativity",
        LawId::C8 => "no global identity",
        LawId::C9 => "no inverses",
        LawId::C10 => "anti-commutativity",
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct VerdictDto {
    pub law: String,
    pub title: String,
    pub status: String,
    pub true_count: usize,
    pub false_count: usize,
    pub indet_count: usize,
    pub true_witness: Option<Vec<String>>,
    pub false_witness: Option<Vec<String>>,
    pub indet_witness: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct NeutralsDto {
    pub element: String,
    pub neutrals: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FlagsDto {
    pub semigroup: bool,
    pub group: bool,
    pub commutative_group: bool,
    pub anti_group: bool,
    pub anti_abelian: bool,
    pub ag4: bool,
    pub strict_ag4: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ClassifyReport {
    pub table: String,
    pub carrier: Vec<String>,
    pub verdicts: Vec<VerdictDto>,
    pub neutrals: Vec<NeutralsDto>,
    pub global_identity: Option<String>,
    pub cancellation_failures: usize,
    pub flags: FlagsDto,
}

fn instance(u: &Universe, i: Option<Instance>) -> Option<Vec<String>> {
    i.map(|i| i.elems().into_iter().map(|e| label(u, e)).collect())
}

impl ClassifyReport {
    pub fn new(name: &str, t: &OpTable, c: &Classification) -> Self {
        let u = t.universe();
        let verdicts = c
            .verdicts
            .iter()
            .map(|v| VerdictDto {
                law: v.law.name().into(),
                title: law_title(v.law).into(),
                status: v.status.name().into(),
                true_count: v.counts.true_,
                false_count: v.counts.false_,
                indet_count: v.counts.indet,
                true_witness: instance(u, v.witnesses.true_),
                false_witness: instance(u, v.witnesses.false_),
                indet_witness: instance(u, v.witnesses.indet),
            })
            .collect();
        let neutrals = t
            .carrier_elems()
            .iter()
            .map(|&x| NeutralsDto {
                element: label(u, x),
                neutrals: labels(&t.local_neutrals(x).expect("carrier element")),
            })
            .collect();
        let f = c.flags;
        ClassifyReport {
            table: name.into(),
            carrier: labels(&t.carrier()),
            verdicts,
            neutrals,
            global_identity: t.global_identity().map(|e| label(u, e)),
            cancellation_failures: t.cancellation_failures().len(),
            flags: FlagsDto {
                semigroup: f.is_semigroup,
                group: f.is_group,
                commutative_group: f.is_commutative_group,
                anti_group: f.is_anti_group,
                anti_abelian: f.is_anti_abelian,
                ag4: f.is_ag4,
                strict_ag4: f.is_strict_ag4,
            },
        }
    }

    fn render(&self) -> String {
        let mut out = format!("table {} on {}\n", self.table, set_text(&self.carrier));
        for v in &self.verdicts {
            let _ = write!(
                out,
                "{:<3} {:<18} {:<8} true {} false {} indet {}",
                v.law, v.title, v.status, v.true_count, v.false_count, v.indet_count
            );
            for (tag, w) in [("true", &v.true_witness), ("false", &v.false_witness), ("indet", &v.indet_witness)] {
                if let Some(w) = w.as_ref().filter(|w| !w.is_empty()) {
                    let _ = write!(out, " {tag}@{}", tuple_text(w));
                }
            }
            out.push('\n');
        }
        out.push_str("neutrals:");
        for n in &self.neutrals {
            let _ = write!(out, " {}->{}", n.element, set_text(&n.neutrals));
        }
        out.push('\n');
        let _ = writeln!(
            out,
            "identity: {}  cancellation failures: {}",
            self.global_identity.as_deref().unwrap_or("none"),
            self.cancellation_failures
        );
        let f = self.flags;
        let _ = writeln!(
            out,
            "flags: semigroup={} group={} commutative-group={} anti-group={} anti-abelian={} ag4={} strict-ag4={}",
            f.semigroup, f.group, f.commutative_group, f.anti_group, f.anti_abelian, f.ag4, f.strict_ag4
        );
        out
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProductDto {
    pub x: String,
    pub y: String,
    pub value: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AssocFailureDto {
    pub triple: Vec<String>,
    pub left: String,
    pub right: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AssocDto {
    pub holds: bool,
    pub true_count: usize,
    pub false_count: usize,
    pub indet_count: usize,
    pub failures: Vec<AssocFailureDto>,
    pub first_indeterminate: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RoughReport {
    pub space: String,
    pub table: String,
    /// The set checked: the table's carrier or the named subset.
    pub subject: String,
    pub elements: Vec<String>,
    pub ambient: Option<String>,
    pub upper: Vec<String>,
    pub closure_holds: bool,
    pub closure_checked: usize,
    pub closure_failures: Vec<ProductDto>,
    pub associativity: Option<AssocDto>,
    pub overall: bool,
}

impl RoughReport {
    pub fn new(
        space: &str,
        table: &str,
        subject: &str,
        elements: &Subset,
        ambient: Option<&str>,
        v: &RoughStructVerdict,
    ) -> Self {
        let u = elements.universe();
        let product = |w: &ClosureWitness| ProductDto { x: label(u, w.x), y: label(u, w.y), value: cell(u, w.value) };
        RoughReport {
            space: space.into(),
            table: table.into(),
            subject: subject.into(),
            elements: labels(elements),
            ambient: ambient.map(String::from),
            upper: labels(&v.upper),
            closure_holds: v.closure.holds,
            closure_checked: v.closure.checked,
            closure_failures: v.closure.failures.iter().map(product).collect(),
            associativity: v.associativity.as_ref().map(|a| AssocDto {
                holds: a.holds,
                true_count: a.counts.true_,
                false_count: a.counts.false_,
                indet_count: a.counts.indet,
                failures: a
                    .failures
                    .iter()
                    .map(|f| AssocFailureDto {
                        triple: [f.x, f.y, f.z].iter().map(|&e| label(u, e)).collect(),
                        left: label(u, f.left),
                        right: label(u, f.right),
                    })
                    .collect(),
                first_indeterminate: a.first_indeterminate.map(|t| t.iter().map(|&e| label(u, e)).collect()),
            }),
            overall: v.overall,
        }
    }

    /// The first closure failure as `(x,y) -> v`.
    pub fn first_closure_failure(&self) -> Option<String> {
        self.closure_failures.first().map(|f| format!("({},{}) -> {}", f.x, f.y, f.value))
    }

    fn render(&self) -> String {
        let mut out = format!(
            "{} = {} with table {} under {}\n",
            self.subject,
            set_text(&self.elements),
            self.table,
            self.space
        );
        let _ = writeln!(out, "upper = {}", set_text(&self.upper));
        let _ = write!(
            out,
            "closure: {} ({} of {} products outside upper)",
            if self.closure_holds { "holds" } else { "fails" },
            self.closure_failures.len(),
            self.closure_checked
        );
        if let Some(w) = self.first_closure_failure() {
            let _ = write!(out, " first {w}");
        }
        out.push('\n');
        if let Some(a) = &self.associativity {
            let _ = write!(
                out,
                "associativity in upper: {} (true {} false {} unresolved {})",
                if a.holds { "holds" } else { "fails" },
                a.true_count,
                a.false_count,
                a.indet_count
            );
            if let Some(f) = a.failures.first() {
                let _ = write!(out, " first {} gives {} vs {}", tuple_text(&f.triple), f.left, f.right);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "overall: {}", self.overall);
        out
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PairDto {
    pub x: String,
    pub y: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MorphismDto {
    pub map: String,
    pub kind: String,
    pub pairs_checked: usize,
    pub preserved: usize,
    pub reversed: usize,
    pub violated: usize,
    pub indeterminate: usize,
    pub first_violation: Option<PairDto>,
    pub first_indeterminate: Option<Vec<String>>,
    pub surjective: bool,
    pub kernel: Vec<String>,
    pub image: Vec<String>,
    pub overall: bool,
}

impl MorphismDto {
    pub fn new(name: &str, phi: &Mapping, r: &MorphismReport) -> Self {
        let (du, cu) = (phi.domain().universe(), phi.codomain());
        MorphismDto {
            map: name.into(),
            kind: r.kind.name().into(),
            pairs_checked: r.pairs_checked,
            preserved: r.counts.preserved,
            reversed: r.counts.reversed,
            violated: r.counts.violated,
            indeterminate: r.counts.indeterminate,
            first_violation: r.first_violation.map(|w| PairDto {
                x: label(du, w.x),
                y: label(du, w.y),
                lhs: label(cu, w.lhs),
                rhs: label(cu, w.rhs),
            }),
            first_indeterminate: r.first_indeterminate.map(|(x, y)| vec![label(du, x), label(du, y)]),
            surjective: r.surjective,
            kernel: labels(&r.kernel),
            image: labels(&r.image),
            overall: r.overall,
        }
    }

    fn render(&self) -> String {
        let mut out = format!("map {} as {}\n", self.map, self.kind);
        let _ = writeln!(
            out,
            "pairs: {} checked, {} preserved, {} reversed, {} violated, {} unresolved",
            self.pairs_checked, self.preserved, self.reversed, self.violated, self.indeterminate
        );
        if let Some(w) = &self.first_violation {
            let _ = writeln!(out, "first violation: ({},{}) gives {} vs {}", w.x, w.y, w.lhs, w.rhs);
        }
        let _ = writeln!(out, "surjective: {}", self.surjective);
        let _ = writeln!(out, "kernel = {}", set_text(&self.kernel));
        let _ = writeln!(out, "image = {}", set_text(&self.image));
        let _ = writeln!(out, "overall: {}", self.overall);
        out
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RelationTallyDto {
    pub name: String,
    pub description: String,
    pub failures: u64,
    pub first_failure: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SuiteDto {
    pub suite: String,
    pub max_universe_size: usize,
    pub units: u64,
    pub instances: u64,
    pub relations: Vec<RelationTallyDto>,
    pub note: Option<String>,
}

impl SuiteDto {
    pub fn from_sweep(suite: &str, max_n: usize, r: &SweepReport, describe: impl Fn(&str) -> String) -> Self {
        SuiteDto {
            suite: suite.into(),
            max_universe_size: max_n,
            units: r.units as u64,
            instances: r.instances,
            relations: r
                .relations
                .iter()
                .map(|t| RelationTallyDto {
                    name: t.name.into(),
                    description: describe(t.name),
                    failures: t.failures,
                    first_failure: t.first_failure.as_ref().map(|f| {
                        let mut s = format!(
                            "n={} partition {} X={} Y={}",
                            f.universe_size,
                            blocks_text(&f.space.blocks()),
                            f.x,
                            f.y
                        );
                        if let Some(t) = &f.table {
                            let _ = write!(s, " table {}", rows_text(t));
                        }
                        if let Some(w) = f.witness {
                            let _ = write!(s, " at {}", f.space.universe().label(w));
                        }
                        s
                    }),
                })
                .collect(),
            note: None,
        }
    }
}

pub fn blocks_text(blocks: &[Subset]) -> String {
    blocks.iter().map(|b| set_text(&labels(b))).collect::<Vec<_>>().join("")
}

/// `[1: 1 2][2: 2 1]`.
pub fn rows_text(t: &OpTable) -> String {
    let u = t.universe();
    let mut s = String::new();
    for &x in t.carrier_elems() {
        let row: Vec<String> = t.carrier_elems().iter().map(|&y| cell(u, t.get(x, y).expect("carrier"))).collect();
        let _ = write!(s, "[{}: {}]", label(u, x), row.join(" "));
    }
    s
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LawsReport {
    pub suites: Vec<SuiteDto>,
}

impl LawsReport {
    fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            if let Some(n) = &s.note {
                let _ = writeln!(out, "note: {n}");
            }
            for r in &s.relations {
                let _ = writeln!(
                    out,
                    "{} {} ({}): {} failures / {} instances checked",
                    s.suite, r.name, r.description, r.failures, s.instances
                );
                if let Some(f) = &r.first_failure {
                    let _ = writeln!(out, "  first counterexample: {f}");
                }
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MatchDto {
    pub index: u64,
    pub partition: Option<Vec<Vec<String>>>,
    pub carrier: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SearchReport {
    pub universe_size: usize,
    pub carrier_size: usize,
    pub allow_indet: bool,
    pub requirements: Vec<String>,
    pub structural: Vec<String>,
    pub limit: usize,
    pub budget: u64,
    pub space_size: u64,
    pub examined: u64,
    pub truncated: bool,
    pub matches: Vec<MatchDto>,
    /// The matches as a scenario document.
    pub scenario: String,
}

impl SearchReport {
    pub fn matches_and_scenario(o: &SearchOutcome) -> (Vec<MatchDto>, String) {
        let mut scenario = String::new();
        let mut matches = Vec::new();
        for (i, m) in o.matches.iter().enumerate() {
            let u = m.table.universe();
            if i == 0 {
                scenario.push_str(&render_universe("U", u));
            }
            let _ = writeln!(scenario, "\n# candidate {}", m.index);
            if let Some(s) = &m.space {
                scenario.push_str(&render_partition(&format!("P{}", i + 1), "U", s));
            }
            scenario.push_str(&render_table(&format!("T{}", i + 1), "U", &m.table));
            let carrier = m.table.carrier_elems();
            matches.push(MatchDto {
                index: m.index,
                partition: m.space.as_ref().map(|s| s.blocks().iter().map(labels).collect()),
                carrier: carrier.iter().map(|&e| label(u, e)).collect(),
                rows: carrier
                    .iter()
                    .map(|&x| carrier.iter().map(|&y| cell(u, m.table.get(x, y).expect("carrier"))).collect())
                    .collect(),
            });
        }
        (matches, scenario)
    }

    fn render(&self) -> String {
        let mut out = format!(
            "# search: universe {} carrier {}{}",
            self.universe_size,
            self.carrier_size,
            if self.allow_indet { " with ?" } else { "" }
        );
        for r in self.requirements.iter().chain(&self.structural) {
            let _ = write!(out, " {r}");
        }
        out.push('\n');
        out.push_str(&self.scenario);
        let _ = writeln!(
            out,
            "\n# {} match(es); examined {} of {} candidates{}",
            self.matches.len(),
            self.examined,
            self.space_size,
            if self.truncated { "; truncated by budget" } else { "" }
        );
        out
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum AuditStatus {
    Match,
    Discrepancy,
    NotWellFormed,
}

impl AuditStatus {
    pub fn name(self) -> &'static str {
        match self {
            AuditStatus::Match => "MATCH",
            AuditStatus::Discrepancy => "DISCREPANCY",
            AuditStatus::NotWellFormed => "NOT-WELL-FORMED",
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AuditFinding {
    pub id: String,
    /// Where the claim is stated and what it says.
    pub citation: String,
    pub claim: String,
    pub derived: String,
    pub status: AuditStatus,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AuditReport {
    pub findings: Vec<AuditFinding>,
}

impl AuditReport {
    pub fn get(&self, id: &str) -> Option<&AuditFinding> {
        self.findings.iter().find(|f| f.id == id)
    }

    fn render(&self) -> String {
        let w = self.findings.iter().map(|f| f.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for f in &self.findings {
            let _ = writeln!(out, "{:<w$}  {:<15}  {}", f.id, f.status.name(), f.citation);
            let _ = writeln!(out, "{:<w$}  {:<15}  claimed: {}", "", "", f.claim);
            let _ = writeln!(out, "{:<w$}  {:<15}  derived: {}", "", "", f.derived);
        }
        let count = |s| self.findings.iter().filter(|f| f.status == s).count();
        let _ = writeln!(
            out,
            "{} items: {} MATCH, {} DISCREPANCY, {} NOT-WELL-FORMED",
            self.findings.len(),
            count(AuditStatus::Match),
            count(AuditStatus::Discrepancy),
            count(AuditStatus::NotWellFormed)
        );
        out
    }
}
