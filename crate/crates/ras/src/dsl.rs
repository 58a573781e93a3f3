//! The `.ras` scenario format.
//!
//! ```text
//! universe U = { 1 2 3 }
//! partition P on U = { { 1 2 } { 3 } }
//! set A on U = { 1 3 }
//! table T on U carrier { 1 2 } = {
//!   1 : 2 ?
//!   2 : 1 3
//! }
//! map M from A to A = { 1 -> 3 3 -> 1 }
//! ```
//!
//! Table rows are keyed by carrier element; cells are positional in the
//! order the carrier was declared. `?` marks an indeterminate cell.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use ras_core::{ApproxSpace, Cell, Elem, Mapping, OpTable, Subset, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    LexError,
    UnknownReference,
    DuplicateName,
    ArityError,
    ValidationError,
    /// Grammar violation: an unexpected token.
    SyntaxError,
}

impl DiagnosticKind {
    pub fn name(self) -> &'static str {
        match self {
            DiagnosticKind::LexError => "lex error",
            DiagnosticKind::UnknownReference => "unknown reference",
            DiagnosticKind::DuplicateName => "duplicate name",
            DiagnosticKind::ArityError => "arity error",
            DiagnosticKind::ValidationError => "validation error",
            DiagnosticKind::SyntaxError => "syntax error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub span: Span,
    /// The offending token as written, or `end of input`.
    pub token: String,
    pub expected: Vec<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {} (at `{}`", self.span, self.kind.name(), self.message, self.token)?;
        if !self.expected.is_empty() {
            write!(f, "; expected {}", self.expected.join(" or "))?;
        }
        write!(f, ")")
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Colon,
    Equals,
    Indet,
    Arrow,
    Word(String),
    End,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Open => "{".into(),
            Tok::Close => "}".into(),
            Tok::Colon => ":".into(),
            Tok::Equals => "=".into(),
            Tok::Indet => "?".into(),
            Tok::Arrow => "->".into(),
            Tok::Word(w) => w.clone(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: Span,
}

fn is_special(c: char) -> bool {
    matches!(c, '{' | '}' | ':' | '=' | '#' | '?')
}

fn lex(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let arrow_at = |i: usize| chars[i] == '-' && chars.get(i + 1) == Some(&'>');
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_control() {
            return Err(Diagnostic {
                kind: DiagnosticKind::LexError,
                span,
                token: c.escape_default().to_string(),
                expected: Vec::new(),
                message: "control character".into(),
            });
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, len) = match c {
            '{' => (Tok::Open, 1),
            '}' => (Tok::Close, 1),
            ':' => (Tok::Colon, 1),
            '=' => (Tok::Equals, 1),
            '?' => (Tok::Indet, 1),
            _ if arrow_at(i) => (Tok::Arrow, 2),
            _ => {
                let start = i;
                let mut j = i;
                while j < chars.len() && !chars[j].is_whitespace() && !chars[j].is_control() && !is_special(chars[j]) && !arrow_at(j) {
                    j += 1;
                }
                (Tok::Word(chars[start..j].iter().collect()), j - start)
            }
        };
        i += len;
        col += len;
        out.push(Token { tok, span });
    }
    out.push(Token { tok: Tok::End, span: Span { line, col } });
    Ok(out)
}

/// Parses raw bytes, reporting invalid UTF-8 as a lexical error.
pub fn parse_scenario_bytes(bytes: &[u8]) -> Result<Scenario, Diagnostic> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_scenario(text),
        Err(e) => {
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("valid prefix");
            let line = valid.matches('\n').count() + 1;
            let col = valid.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(Diagnostic {
                kind: DiagnosticKind::LexError,
                span: Span { line, col },
                token: format!("0x{:02x}", bytes[e.valid_up_to()]),
                expected: Vec::new(),
                message: "invalid UTF-8".into(),
            })
        }
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, Diagnostic> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, out: Scenario::default() };
    p.scenario()?;
    Ok(p.out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeclKind {
    Universe,
    Partition,
    Set,
    Table,
    Map,
}

impl DeclKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DeclKind::Universe => "universe",
            DeclKind::Partition => "partition",
            DeclKind::Set => "set",
            DeclKind::Table => "table",
            DeclKind::Map => "map",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionDecl {
    pub universe: String,
    pub space: ApproxSpace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDecl {
    pub universe: String,
    pub subset: Subset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableDecl {
    pub universe: String,
    pub table: OpTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub from: String,
    pub to: String,
    pub mapping: Mapping,
}

/// A validated scenario. Equality ignores source positions.
#[derive(Clone, Debug, Default)]
pub struct Scenario {
    pub universes: BTreeMap<String, Arc<Universe>>,
    pub partitions: BTreeMap<String, PartitionDecl>,
    pub sets: BTreeMap<String, SetDecl>,
    pub tables: BTreeMap<String, TableDecl>,
    pub maps: BTreeMap<String, MapDecl>,
    pub spans: BTreeMap<(DeclKind, String), Span>,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.universes == other.universes
            && self.partitions == other.partitions
            && self.sets == other.sets
            && self.tables == other.tables
            && self.maps == other.maps
    }
}

impl Eq for Scenario {}

/// A name that does not resolve in a scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LookupError {
    pub kind: DeclKind,
    pub name: String,
}

impl fmt::Display for LookupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no {} named `{}`", self.kind.keyword(), self.name)
    }
}

impl std::error::Error for LookupError {}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: DeclKind, name: &str) -> Result<&'a T, LookupError> {
    map.get(name).ok_or_else(|| LookupError { kind, name: name.into() })
}

impl Scenario {
    pub fn is_empty(&self) -> bool {
        self.universes.is_empty()
    }

    pub fn universe(&self, name: &str) -> Result<&Arc<Universe>, LookupError> {
        lookup(&self.universes, DeclKind::Universe, name)
    }

    pub fn space(&self, name: &str) -> Result<&ApproxSpace, LookupError> {
        lookup(&self.partitions, DeclKind::Partition, name).map(|d| &d.space)
    }

    pub fn set(&self, name: &str) -> Result<&Subset, LookupError> {
        lookup(&self.sets, DeclKind::Set, name).map(|d| &d.subset)
    }

    pub fn table(&self, name: &str) -> Result<&OpTable, LookupError> {
        lookup(&self.tables, DeclKind::Table, name).map(|d| &d.table)
    }

    pub fn map(&self, name: &str) -> Result<&Mapping, LookupError> {
        lookup(&self.maps, DeclKind::Map, name).map(|d| &d.mapping)
    }

    pub fn span(&self, kind: DeclKind, name: &str) -> Option<Span> {
        self.spans.get(&(kind, name.to_string())).copied()
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    out: Scenario,
}

fn diag(kind: DiagnosticKind, t: &Token, expected: &[&str], message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        kind,
        span: t.span,
        token: t.tok.text(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
        message: message.into(),
    }
}

const DECLS: [&str; 5] = ["universe", "partition", "set", "table", "map"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Token {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> Diagnostic {
        let t = self.peek();
        diag(DiagnosticKind::SyntaxError, t, expected, "unexpected token")
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, Diagnostic> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[&format!("`{}`", tok.text())]))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Token, Diagnostic> {
        match &self.peek().tok {
            Tok::Word(w) if w == kw => Ok(self.bump()),
            _ => Err(self.unexpected(&[&format!("`{kw}`")])),
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, Token), Diagnostic> {
        match &self.peek().tok {
            Tok::Word(w) => {
                let w = w.clone();
                Ok((w, self.bump()))
            }
            _ => Err(self.unexpected(&[what])),
        }
    }

    fn scenario(&mut self) -> Result<(), Diagnostic> {
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::End => return Ok(()),
                Tok::Word(w) => match w.as_str() {
                    "universe" => self.universe()?,
                    "partition" => self.partition()?,
                    "set" => self.set()?,
                    "table" => self.table()?,
                    "map" => self.map()?,
                    _ => return Err(self.unexpected(&DECLS)),
                },
                _ => return Err(self.unexpected(&DECLS)),
            }
        }
    }

    fn declare(&mut self, kind: DeclKind, name: &str, at: &Token, taken: bool) -> Result<(), Diagnostic> {
        if taken {
            let first = self.out.spans[&(kind, name.to_string())];
            return Err(diag(
                DiagnosticKind::DuplicateName,
                at,
                &[],
                format!("{} `{name}` is already declared at {first}", kind.keyword()),
            ));
        }
        self.out.spans.insert((kind, name.to_string()), at.span);
        Ok(())
    }

    fn name(&mut self, kind: DeclKind) -> Result<(String, Token), Diagnostic> {
        self.word(&format!("{} name", kind.keyword()))
    }

    fn reference<'a, T>(
        map: &'a BTreeMap<String, T>,
        kind: DeclKind,
        name: &str,
        at: &Token,
    ) -> Result<&'a T, Diagnostic> {
        map.get(name).ok_or_else(|| {
            diag(DiagnosticKind::UnknownReference, at, &[], format!("no {} named `{name}`", kind.keyword()))
        })
    }

    /// `{ atom* }` with every atom a label of `u`.
    fn element_list(&mut self, u: &Universe, allow_empty: bool) -> Result<Vec<(Elem, Token)>, Diagnostic> {
        self.expect(Tok::Open)?;
        let mut out = Vec::new();
        loop {
            match &self.peek().tok {
                Tok::Word(w) => {
                    let w = w.clone();
                    let t = self.bump();
                    out.push((element(u, &w, &t)?, t));
                }
                Tok::Close if allow_empty || !out.is_empty() => {
                    self.bump();
                    return Ok(out);
                }
                _ if out.is_empty() && !allow_empty => return Err(self.unexpected(&["element"])),
                _ => return Err(self.unexpected(&["element", "`}`"])),
            }
        }
    }

    fn universe(&mut self) -> Result<(), Diagnostic> {
        self.keyword("universe")?;
        let (name, at) = self.name(DeclKind::Universe)?;
        self.declare(DeclKind::Universe, &name, &at, self.out.universes.contains_key(&name))?;
        self.expect(Tok::Equals)?;
        self.expect(Tok::Open)?;
        let mut labels: Vec<String> = Vec::new();
        loop {
            match &self.peek().tok {
                Tok::Word(w) => {
                    if labels.contains(w) {
                        return Err(diag(
                            DiagnosticKind::ValidationError,
                            self.peek(),
                            &[],
                            format!("duplicate label `{w}` in universe `{name}`"),
                        ));
                    }
                    labels.push(w.clone());
                    self.bump();
                }
                Tok::Close if !labels.is_empty() => {
                    self.bump();
                    break;
                }
                _ if labels.is_empty() => return Err(self.unexpected(&["element"])),
                _ => return Err(self.unexpected(&["element", "`}`"])),
            }
        }
        let u = Universe::new(labels).expect("nonempty and distinct");
        self.out.universes.insert(name, Arc::new(u));
        Ok(())
    }

    fn on_universe(&mut self) -> Result<(String, Arc<Universe>), Diagnostic> {
        self.keyword("on")?;
        let (uname, ut) = self.name(DeclKind::Universe)?;
        let u = Self::reference(&self.out.universes, DeclKind::Universe, &uname, &ut)?.clone();
        Ok((uname, u))
    }

    fn partition(&mut self) -> Result<(), Diagnostic> {
        let kw = self.keyword("partition")?;
        let (name, at) = self.name(DeclKind::Partition)?;
        self.declare(DeclKind::Partition, &name, &at, self.out.partitions.contains_key(&name))?;
        let (uname, u) = self.on_universe()?;
        self.expect(Tok::Equals)?;
        self.expect(Tok::Open)?;
        let mut blocks = Vec::new();
        let mut block_tokens = Vec::new();
        loop {
            match self.peek().tok {
                Tok::Open => {
                    let t = self.peek().clone();
                    let elems = self.element_list(&u, false)?;
                    let sub = Subset::from_elems(&u, elems.iter().map(|(e, _)| *e)).expect("same universe");
                    blocks.push(sub);
                    block_tokens.push((t, elems));
                }
                Tok::Close if !blocks.is_empty() => {
                    self.bump();
                    break;
                }
                _ if blocks.is_empty() => return Err(self.unexpected(&["`{`"])),
                _ => return Err(self.unexpected(&["`{`", "`}`"])),
            }
        }
        // Point overlaps at the repeated occurrence.
        let mut seen = vec![false; u.size()];
        for (_, elems) in &block_tokens {
            let mut in_block = vec![false; u.size()];
            for (e, t) in elems {
                if seen[e.0] && !in_block[e.0] {
                    return Err(diag(
                        DiagnosticKind::ValidationError,
                        t,
                        &[],
                        format!("element `{}` appears in two blocks", u.label(*e)),
                    ));
                }
                seen[e.0] = true;
                in_block[e.0] = true;
            }
        }
        let space = ApproxSpace::new(&u, &blocks)
            .map_err(|e| diag(DiagnosticKind::ValidationError, &kw, &[], e.with_labels(&u).to_string()))?;
        self.out.partitions.insert(name, PartitionDecl { universe: uname, space });
        Ok(())
    }

    fn set(&mut self) -> Result<(), Diagnostic> {
        self.keyword("set")?;
        let (name, at) = self.name(DeclKind::Set)?;
        self.declare(DeclKind::Set, &name, &at, self.out.sets.contains_key(&name))?;
        let (uname, u) = self.on_universe()?;
        self.expect(Tok::Equals)?;
        let elems = self.element_list(&u, true)?;
        let subset = Subset::from_elems(&u, elems.into_iter().map(|(e, _)| e)).expect("same universe");
        self.out.sets.insert(name, SetDecl { universe: uname, subset });
        Ok(())
    }

    fn table(&mut self) -> Result<(), Diagnostic> {
        let kw = self.keyword("table")?;
        let (name, at) = self.name(DeclKind::Table)?;
        self.declare(DeclKind::Table, &name, &at, self.out.tables.contains_key(&name))?;
        let (uname, u) = self.on_universe()?;
        self.keyword("carrier")?;
        let carrier_list = self.element_list(&u, false)?;
        let mut order: Vec<Elem> = Vec::new();
        for (e, t) in &carrier_list {
            if order.contains(e) {
                return Err(diag(
                    DiagnosticKind::ValidationError,
                    t,
                    &[],
                    format!("`{}` is listed twice in the carrier", u.label(*e)),
                ));
            }
            order.push(*e);
        }
        let carrier = Subset::from_elems(&u, order.iter().copied()).expect("same universe");
        let k = order.len();
        self.expect(Tok::Equals)?;
        self.expect(Tok::Open)?;
        let mut entries = Vec::with_capacity(k * k);
        let mut rows: Vec<Elem> = Vec::new();
        loop {
            let t = self.peek().clone();
            let w = match &t.tok {
                Tok::Close if rows.len() == k => {
                    self.bump();
                    break;
                }
                Tok::Close => {
                    let missing = order.iter().find(|e| !rows.contains(e)).expect("some row missing");
                    return Err(diag(
                        DiagnosticKind::ValidationError,
                        &t,
                        &["row"],
                        format!("table `{name}` has no row for `{}`", u.label(*missing)),
                    ));
                }
                Tok::Word(w) => w.clone(),
                _ => return Err(self.unexpected(&["row", "`}`"])),
            };
            self.bump();
            let x = element(&u, &w, &t)?;
            if !carrier.contains(x) {
                return Err(diag(DiagnosticKind::ValidationError, &t, &[], format!("row `{w}` is not in the carrier")));
            }
            if rows.contains(&x) {
                return Err(diag(DiagnosticKind::ValidationError, &t, &[], format!("row `{w}` appears twice")));
            }
            rows.push(x);
            self.expect(Tok::Colon)?;
            for (i, &y) in order.iter().enumerate() {
                let ct = self.peek().clone();
                let starts_row = matches!(self.peek_at(1).tok, Tok::Colon);
                let cell = match &ct.tok {
                    Tok::Indet => Cell::Indet,
                    Tok::Word(v) if !starts_row => Cell::Value(element(&u, v, &ct)?),
                    _ => {
                        return Err(diag(
                            DiagnosticKind::ArityError,
                            &ct,
                            &["cell"],
                            format!("row `{w}` has {i} cells, the carrier has {k}"),
                        ))
                    }
                };
                self.bump();
                entries.push((x, y, cell));
            }
            let next = self.peek().clone();
            let extra = match &next.tok {
                Tok::Indet => true,
                Tok::Word(_) => !matches!(self.peek_at(1).tok, Tok::Colon),
                _ => false,
            };
            if extra {
                return Err(diag(
                    DiagnosticKind::ArityError,
                    &next,
                    &["row", "`}`"],
                    format!("row `{w}` has more than {k} cells"),
                ));
            }
        }
        let table = OpTable::from_entries(&carrier, entries)
            .map_err(|e| diag(DiagnosticKind::ValidationError, &kw, &[], e.with_labels(&u).to_string()))?;
        self.out.tables.insert(name, TableDecl { universe: uname, table });
        Ok(())
    }

    fn map(&mut self) -> Result<(), Diagnostic> {
        let kw = self.keyword("map")?;
        let (name, at) = self.name(DeclKind::Map)?;
        self.declare(DeclKind::Map, &name, &at, self.out.maps.contains_key(&name))?;
        self.keyword("from")?;
        let (from, ft) = self.name(DeclKind::Set)?;
        let domain = Self::reference(&self.out.sets, DeclKind::Set, &from, &ft)?.subset.clone();
        self.keyword("to")?;
        let (to, tt) = self.name(DeclKind::Set)?;
        let target = Self::reference(&self.out.sets, DeclKind::Set, &to, &tt)?.subset.clone();
        self.expect(Tok::Equals)?;
        self.expect(Tok::Open)?;
        let (du, tu) = (domain.universe().clone(), target.universe().clone());
        let mut pairs = Vec::new();
        loop {
            let t = self.peek().clone();
            let w = match &t.tok {
                Tok::Close if !pairs.is_empty() => {
                    self.bump();
                    break;
                }
                Tok::Word(w) => w.clone(),
                _ if pairs.is_empty() => return Err(self.unexpected(&["element"])),
                _ => return Err(self.unexpected(&["element", "`}`"])),
            };
            self.bump();
            let x = element(&du, &w, &t)?;
            if !domain.contains(x) {
                return Err(diag(DiagnosticKind::ValidationError, &t, &[], format!("`{w}` is not in set `{from}`")));
            }
            if pairs.iter().any(|&(p, _)| p == x) {
                return Err(diag(DiagnosticKind::ValidationError, &t, &[], format!("`{w}` is mapped twice")));
            }
            self.expect(Tok::Arrow)?;
            let (v, vt) = self.word("element")?;
            let y = element(&tu, &v, &vt)?;
            if !target.contains(y) {
                return Err(diag(DiagnosticKind::ValidationError, &vt, &[], format!("`{v}` is not in set `{to}`")));
            }
            pairs.push((x, y));
        }
        let mapping = Mapping::new(&domain, &target, pairs)
            .map_err(|e| diag(DiagnosticKind::ValidationError, &kw, &[], e.with_labels(&du).to_string()))?;
        self.out.maps.insert(name, MapDecl { from, to, mapping });
        Ok(())
    }
}

fn element(u: &Universe, label: &str, at: &Token) -> Result<Elem, Diagnostic> {
    u.elem(label).ok_or_else(|| {
        diag(DiagnosticKind::UnknownReference, at, &[], format!("`{label}` is not an element of the universe"))
    })
}

fn write_list<'a>(out: &mut String, labels: impl IntoIterator<Item = &'a str>) {
    out.push('{');
    for l in labels {
        out.push(' ');
        out.push_str(l);
    }
    out.push_str(" }");
}

/// Canonical text: declarations grouped by kind, names sorted, elements in
/// universe order, LF line endings.
pub fn serialize_scenario(s: &Scenario) -> String {
    let mut decls: Vec<String> = Vec::new();
    decls.extend(s.universes.iter().map(|(name, u)| render_universe(name, u)));
    decls.extend(s.partitions.iter().map(|(name, p)| render_partition(name, &p.universe, &p.space)));
    decls.extend(s.sets.iter().map(|(name, d)| render_set(name, &d.universe, &d.subset)));
    decls.extend(s.tables.iter().map(|(name, d)| render_table(name, &d.universe, &d.table)));
    decls.extend(s.maps.iter().map(|(name, d)| render_map(name, d)));
    decls.join("\n")
}

/// One `set` declaration in canonical form.
pub fn render_set(name: &str, universe_name: &str, subset: &Subset) -> String {
    let mut out = format!("set {name} on {universe_name} = ");
    if subset.is_empty() {
        out.push_str("{ }");
    } else {
        write_list(&mut out, subset.labels());
    }
    out.push('\n');
    out
}

fn render_map(name: &str, d: &MapDecl) -> String {
    let mut out = format!("map {name} from {} to {} = {{\n", d.from, d.to);
    let (du, tu) = (d.mapping.domain().universe(), d.mapping.codomain());
    for (x, y) in d.mapping.pairs() {
        let _ = writeln!(out, "  {} -> {}", du.label(x), tu.label(y));
    }
    out.push_str("}\n");
    out
}

/// One `table` declaration in canonical form.
pub fn render_table(name: &str, universe_name: &str, t: &OpTable) -> String {
    let u = t.universe();
    let mut out = String::new();
    let _ = write!(out, "table {name} on {universe_name} carrier ");
    write_list(&mut out, t.carrier_elems().iter().map(|&e| u.label(e)));
    out.push_str(" = {\n");
    let width = t.carrier_elems().iter().map(|&e| u.label(e).chars().count()).max().unwrap_or(1);
    for &x in t.carrier_elems() {
        let _ = write!(out, "  {:<width$} :", u.label(x));
        for &y in t.carrier_elems() {
            out.push(' ');
            match t.get(x, y).expect("carrier pair") {
                Cell::Value(v) => out.push_str(u.label(v)),
                Cell::Indet => out.push('?'),
            }
        }
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

/// One `universe` declaration in canonical form.
pub fn render_universe(name: &str, u: &Universe) -> String {
    let mut out = format!("universe {name} = ");
    write_list(&mut out, u.labels().iter().map(String::as_str));
    out.push('\n');
    out
}

/// One `partition` declaration in canonical form.
pub fn render_partition(name: &str, universe_name: &str, space: &ApproxSpace) -> String {
    let mut out = format!("partition {name} on {universe_name} = {{");
    for block in space.blocks() {
        out.push(' ');
        write_list(&mut out, block.labels());
    }
    out.push_str(" }\n");
    out
}
