//! Line-oriented textual format for spaces, operations, and maps, plus the
//! canonical renderer.
//!
//! ```text
//! space S { points = 2  open = {}  open = {0}  open = {0 1} }
//! operation g on S { kind = closure }            # or: map {0} -> {0 1} ...
//! map f : S -> S { 0 -> 1  1 -> 0  gamma = g  beta = g }
//! ```
//!
//! Whitespace is free-form, `;` is an ignorable separator, `#` starts a
//! comment. Canonical rendering sorts opens and table rows by subset
//! encoding, so `render ∘ parse` is stable.

use std::fmt;
use std::sync::Arc;

use crate::ops::{OpKind, Operation, OperationViolation};
use crate::space::{set_text, FiniteSpace, Mask, TopologyViolation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug)]
pub enum SemanticError {
    DuplicateName { name: String },
    InvalidTopology { space: String, violations: Vec<TopologyViolation> },
    InvalidOperation { operation: String, violations: Vec<OperationViolation> },
    MissingPointCount { space: String },
    OperationBodyMissing { operation: String },
    OperationBodyMixed { operation: String },
    UnknownReference { context: String, name: String },
    OperationSpaceMismatch { map: String, operation: String, expected: String },
    MapPointOutOfRange { map: String, point: usize, image: usize },
    DuplicateMapping { map: String, point: usize },
    IncompleteMap { map: String, missing: usize },
    MissingMapOperations { map: String },
}

impl fmt::Display for SemanticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemanticError::DuplicateName { name } => write!(f, "duplicate name {name:?}"),
            SemanticError::InvalidTopology { space, violations } => {
                write!(f, "space {space:?} is not a topology:")?;
                for v in violations {
                    write!(f, " [{v}]")?;
                }
                Ok(())
            }
            SemanticError::InvalidOperation { operation, violations } => {
                write!(f, "operation {operation:?} is invalid:")?;
                for v in violations {
                    write!(f, " [{v}]")?;
                }
                Ok(())
            }
            SemanticError::MissingPointCount { space } => {
                write!(f, "space {space:?} is missing `points = <n>`")
            }
            SemanticError::OperationBodyMissing { operation } => {
                write!(f, "operation {operation:?} needs `kind = ...` or table rows")
            }
            SemanticError::OperationBodyMixed { operation } => {
                write!(f, "operation {operation:?} mixes `kind` with table rows")
            }
            SemanticError::UnknownReference { context, name } => {
                write!(f, "{context} refers to unknown name {name:?}")
            }
            SemanticError::OperationSpaceMismatch { map, operation, expected } => write!(
                f,
                "map {map:?}: operation {operation:?} is not declared on space {expected:?}"
            ),
            SemanticError::MapPointOutOfRange { map, point, image } => {
                write!(f, "map {map:?}: {point} -> {image} leaves the codomain")
            }
            SemanticError::DuplicateMapping { map, point } => {
                write!(f, "map {map:?}: point {point} mapped twice")
            }
            SemanticError::IncompleteMap { map, missing } => {
                write!(f, "map {map:?}: no image for point {missing}")
            }
            SemanticError::MissingMapOperations { map } => {
                write!(f, "map {map:?} is missing `gamma = ...` or `beta = ...`")
            }
        }
    }
}

#[derive(Debug)]
pub enum DocError {
    Parse(ParseError),
    Semantic(Vec<SemanticError>),
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Parse(e) => write!(f, "{e}"),
            DocError::Semantic(errs) => {
                for (i, e) in errs.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for DocError {}

#[derive(Clone, Debug)]
pub struct NamedSpace {
    pub name: String,
    pub space: Arc<FiniteSpace>,
}

#[derive(Clone, Debug)]
pub struct NamedOperation {
    pub name: String,
    pub space_name: String,
    pub op: Arc<Operation>,
}

#[derive(Clone, Debug)]
pub struct NamedMap {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub digits: Vec<u8>,
    pub gamma: String,
    pub beta: String,
}

/// A parsed and semantically validated document.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub spaces: Vec<NamedSpace>,
    pub operations: Vec<NamedOperation>,
    pub maps: Vec<NamedMap>,
}

impl Document {
    pub fn space(&self, name: &str) -> Option<&NamedSpace> {
        self.spaces.iter().find(|s| s.name == name)
    }

    pub fn operation(&self, name: &str) -> Option<&NamedOperation> {
        self.operations.iter().find(|o| o.name == name)
    }

    pub fn map(&self, name: &str) -> Option<&NamedMap> {
        self.maps.iter().find(|m| m.name == name)
    }
}

// ---------------------------------------------------------------------------
// lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u32),
    LBrace,
    RBrace,
    Eq,
    Arrow,
    Colon,
}

#[derive(Clone, Debug)]
struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match c {
            ' ' | '\t' | '\r' | '\n' | ';' => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            '#' => {
                for c in chars.by_ref() {
                    bump(c, &mut line, &mut col);
                    if c == '\n' {
                        break;
                    }
                }
            }
            '{' | '}' | '=' | ':' => {
                chars.next();
                bump(c, &mut line, &mut col);
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '=' => Tok::Eq,
                    _ => Tok::Colon,
                };
                out.push(Lexed { tok, line: tline, col: tcol });
            }
            '-' => {
                chars.next();
                bump('-', &mut line, &mut col);
                match chars.peek() {
                    Some('>') => {
                        chars.next();
                        bump('>', &mut line, &mut col);
                        out.push(Lexed { tok: Tok::Arrow, line: tline, col: tcol });
                    }
                    _ => {
                        return Err(ParseError {
                            line: tline,
                            col: tcol,
                            message: "expected `->`".into(),
                        })
                    }
                }
            }
            '0'..='9' => {
                let mut value: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        value = value * 10 + v as u64;
                        chars.next();
                        bump(d, &mut line, &mut col);
                        if value > 1_000_000 {
                            return Err(ParseError {
                                line: tline,
                                col: tcol,
                                message: "number is far too large".into(),
                            });
                        }
                    } else {
                        break;
                    }
                }
                out.push(Lexed { tok: Tok::Int(value as u32), line: tline, col: tcol });
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' || d == '-' && ident.ends_with(char::is_alphanumeric) {
                        ident.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                out.push(Lexed { tok: Tok::Ident(ident), line: tline, col: tcol });
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|l| (l.line, l.col))
            .unwrap_or_else(|| self.toks.last().map(|l| (l.line, l.col + 1)).unwrap_or((1, 1)))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError { line, col, message: message.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|l| l.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => match self.next() {
                Some(Tok::Ident(s)) => Ok(s),
                _ => unreachable!(),
            },
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<u32, ParseError> {
        match self.peek() {
            Some(Tok::Int(_)) => match self.next() {
                Some(Tok::Int(v)) => Ok(v),
                _ => unreachable!(),
            },
            _ => self.fail(format!("expected {what}")),
        }
    }

    /// `{ <ints> }` as a mask.
    fn set(&mut self) -> Result<Mask, ParseError> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut mask: Mask = 0;
        loop {
            match self.peek() {
                Some(Tok::Int(_)) => {
                    let v = self.expect_int("point")?;
                    if v >= 32 {
                        return self.fail("point number too large");
                    }
                    mask |= 1 << v;
                }
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    return Ok(mask);
                }
                _ => return self.fail("expected point or `}`"),
            }
        }
    }
}

#[derive(Debug, Default)]
struct RawSpace {
    name: String,
    points: Option<usize>,
    opens: Vec<Mask>,
}

#[derive(Debug, Default)]
struct RawOperation {
    name: String,
    space: String,
    kind: Option<String>,
    rows: Vec<(Mask, Mask)>,
}

#[derive(Debug, Default)]
struct RawMap {
    name: String,
    dom: String,
    cod: String,
    pairs: Vec<(u32, u32)>,
    gamma: Option<String>,
    beta: Option<String>,
}

type RawDocument = (Vec<RawSpace>, Vec<RawOperation>, Vec<RawMap>);

fn parse_raw(text: &str) -> Result<RawDocument, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let mut spaces = Vec::new();
    let mut operations = Vec::new();
    let mut maps = Vec::new();
    while let Some(tok) = p.peek() {
        match tok {
            Tok::Ident(kw) if kw == "space" => {
                p.pos += 1;
                let mut raw = RawSpace { name: p.expect_ident("space name")?, ..Default::default() };
                p.expect(Tok::LBrace, "`{`")?;
                loop {
                    match p.peek() {
                        Some(Tok::RBrace) => {
                            p.pos += 1;
                            break;
                        }
                        Some(Tok::Ident(k)) if k == "points" => {
                            p.pos += 1;
                            p.expect(Tok::Eq, "`=`")?;
                            raw.points = Some(p.expect_int("point count")? as usize);
                        }
                        Some(Tok::Ident(k)) if k == "open" => {
                            p.pos += 1;
                            p.expect(Tok::Eq, "`=`")?;
                            let m = p.set()?;
                            raw.opens.push(m);
                        }
                        _ => return p.fail("expected `points`, `open`, or `}`"),
                    }
                }
                spaces.push(raw);
            }
            Tok::Ident(kw) if kw == "operation" => {
                p.pos += 1;
                let name = p.expect_ident("operation name")?;
                let on = p.expect_ident("`on`")?;
                if on != "on" {
                    return p.fail("expected `on`");
                }
                let space = p.expect_ident("space name")?;
                let mut raw = RawOperation { name, space, ..Default::default() };
                p.expect(Tok::LBrace, "`{`")?;
                loop {
                    match p.peek() {
                        Some(Tok::RBrace) => {
                            p.pos += 1;
                            break;
                        }
                        Some(Tok::Ident(k)) if k == "kind" => {
                            p.pos += 1;
                            p.expect(Tok::Eq, "`=`")?;
                            raw.kind = Some(p.expect_ident("kind")?);
                        }
                        Some(Tok::Ident(k)) if k == "map" => {
                            p.pos += 1;
                            let key = p.set()?;
                            p.expect(Tok::Arrow, "`->`")?;
                            let value = p.set()?;
                            raw.rows.push((key, value));
                        }
                        _ => return p.fail("expected `kind`, `map`, or `}`"),
                    }
                }
                operations.push(raw);
            }
            Tok::Ident(kw) if kw == "map" => {
                p.pos += 1;
                let name = p.expect_ident("map name")?;
                p.expect(Tok::Colon, "`:`")?;
                let dom = p.expect_ident("domain space")?;
                p.expect(Tok::Arrow, "`->`")?;
                let cod = p.expect_ident("codomain space")?;
                let mut raw = RawMap { name, dom, cod, ..Default::default() };
                p.expect(Tok::LBrace, "`{`")?;
                loop {
                    match p.peek() {
                        Some(Tok::RBrace) => {
                            p.pos += 1;
                            break;
                        }
                        Some(Tok::Int(_)) => {
                            let from = p.expect_int("point")?;
                            p.expect(Tok::Arrow, "`->`")?;
                            let to = p.expect_int("point")?;
                            raw.pairs.push((from, to));
                        }
                        Some(Tok::Ident(k)) if k == "gamma" => {
                            p.pos += 1;
                            p.expect(Tok::Eq, "`=`")?;
                            raw.gamma = Some(p.expect_ident("operation name")?);
                        }
                        Some(Tok::Ident(k)) if k == "beta" => {
                            p.pos += 1;
                            p.expect(Tok::Eq, "`=`")?;
                            raw.beta = Some(p.expect_ident("operation name")?);
                        }
                        _ => return p.fail("expected mapping, `gamma`, `beta`, or `}`"),
                    }
                }
                maps.push(raw);
            }
            _ => return p.fail("expected `space`, `operation`, or `map`"),
        }
    }
    Ok((spaces, operations, maps))
}

// ---------------------------------------------------------------------------
// semantic analysis
// ---------------------------------------------------------------------------

pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let (raw_spaces, raw_ops, raw_maps) = parse_raw(text).map_err(DocError::Parse)?;
    let mut errors = Vec::new();
    let mut doc = Document::default();
    let mut names = std::collections::HashSet::new();

    for raw in raw_spaces {
        if !names.insert(raw.name.clone()) {
            errors.push(SemanticError::DuplicateName { name: raw.name.clone() });
            continue;
        }
        let Some(n) = raw.points else {
            errors.push(SemanticError::MissingPointCount { space: raw.name });
            continue;
        };
        match FiniteSpace::new(n, &raw.opens) {
            Ok(space) => {
                doc.spaces.push(NamedSpace { name: raw.name, space: Arc::new(space) })
            }
            Err(violations) => {
                errors.push(SemanticError::InvalidTopology { space: raw.name, violations })
            }
        }
    }

    for raw in raw_ops {
        if !names.insert(raw.name.clone()) {
            errors.push(SemanticError::DuplicateName { name: raw.name.clone() });
            continue;
        }
        let Some(space) = doc.space(&raw.space) else {
            errors.push(SemanticError::UnknownReference {
                context: format!("operation {:?}", raw.name),
                name: raw.space.clone(),
            });
            continue;
        };
        let op = match (&raw.kind, raw.rows.is_empty()) {
            (Some(_), false) => {
                errors.push(SemanticError::OperationBodyMixed { operation: raw.name });
                continue;
            }
            (None, true) => {
                errors.push(SemanticError::OperationBodyMissing { operation: raw.name });
                continue;
            }
            (Some(kind), true) => {
                let kind = match kind.as_str() {
                    "identity" => OpKind::Identity,
                    "closure" => OpKind::Closure,
                    "intcl" => OpKind::IntCl,
                    other => {
                        errors.push(SemanticError::InvalidOperation {
                            operation: raw.name.clone(),
                            violations: vec![],
                        });
                        let _ = other;
                        continue;
                    }
                };
                Operation::builtin(space.space.clone(), kind)
            }
            (None, false) => match Operation::from_table(space.space.clone(), &raw.rows) {
                Ok(op) => op,
                Err(violations) => {
                    errors.push(SemanticError::InvalidOperation {
                        operation: raw.name,
                        violations,
                    });
                    continue;
                }
            },
        };
        doc.operations.push(NamedOperation {
            name: raw.name,
            space_name: raw.space,
            op: Arc::new(op),
        });
    }

    for raw in raw_maps {
        if !names.insert(raw.name.clone()) {
            errors.push(SemanticError::DuplicateName { name: raw.name.clone() });
            continue;
        }
        let (Some(dom), Some(cod)) = (doc.space(&raw.dom), doc.space(&raw.cod)) else {
            let missing =
                if doc.space(&raw.dom).is_none() { raw.dom.clone() } else { raw.cod.clone() };
            errors.push(SemanticError::UnknownReference {
                context: format!("map {:?}", raw.name),
                name: missing,
            });
            continue;
        };
        let (nx, ny) = (dom.space.n(), cod.space.n());
        let mut digits: Vec<Option<u8>> = vec![None; nx];
        let mut bad = false;
        for &(from, to) in &raw.pairs {
            if from as usize >= nx || to as usize >= ny {
                errors.push(SemanticError::MapPointOutOfRange {
                    map: raw.name.clone(),
                    point: from as usize,
                    image: to as usize,
                });
                bad = true;
                continue;
            }
            if digits[from as usize].is_some() {
                errors.push(SemanticError::DuplicateMapping {
                    map: raw.name.clone(),
                    point: from as usize,
                });
                bad = true;
                continue;
            }
            digits[from as usize] = Some(to as u8);
        }
        if let Some(missing) = digits.iter().position(Option::is_none) {
            errors.push(SemanticError::IncompleteMap { map: raw.name.clone(), missing });
            bad = true;
        }
        let (Some(gamma), Some(beta)) = (raw.gamma.clone(), raw.beta.clone()) else {
            errors.push(SemanticError::MissingMapOperations { map: raw.name.clone() });
            continue;
        };
        for (op_name, space_name) in [(&gamma, &raw.dom), (&beta, &raw.cod)] {
            match doc.operation(op_name) {
                None => {
                    errors.push(SemanticError::UnknownReference {
                        context: format!("map {:?}", raw.name),
                        name: op_name.clone(),
                    });
                    bad = true;
                }
                Some(op) if &op.space_name != space_name => {
                    errors.push(SemanticError::OperationSpaceMismatch {
                        map: raw.name.clone(),
                        operation: op_name.clone(),
                        expected: space_name.clone(),
                    });
                    bad = true;
                }
                Some(_) => {}
            }
        }
        if bad {
            continue;
        }
        doc.maps.push(NamedMap {
            name: raw.name,
            dom: raw.dom,
            cod: raw.cod,
            digits: digits.into_iter().map(Option::unwrap).collect(),
            gamma,
            beta,
        });
    }

    if errors.is_empty() {
        Ok(doc)
    } else {
        Err(DocError::Semantic(errors))
    }
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

pub fn render_space_block(name: &str, n: usize, opens: &[Mask]) -> String {
    let mut sorted = opens.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = format!("space {name} {{\n  points = {n}\n");
    for m in sorted {
        out += &format!("  open = {}\n", set_text(m));
    }
    out += "}\n";
    out
}

pub fn render_operation_block(
    name: &str,
    space_name: &str,
    kind: OpKind,
    opens: &[Mask],
    values: &[Mask],
) -> String {
    let mut out = format!("operation {name} on {space_name} {{\n");
    match kind {
        OpKind::Custom => {
            let mut rows: Vec<(Mask, Mask)> =
                opens.iter().copied().zip(values.iter().copied()).collect();
            rows.sort_unstable();
            for (k, v) in rows {
                out += &format!("  map {} -> {}\n", set_text(k), set_text(v));
            }
        }
        k => out += &format!("  kind = {}\n", k.name()),
    }
    out += "}\n";
    out
}

pub fn render_map_block(
    name: &str,
    dom: &str,
    cod: &str,
    digits: &[u8],
    gamma: &str,
    beta: &str,
) -> String {
    let mut out = format!("map {name} : {dom} -> {cod} {{\n");
    for (i, &q) in digits.iter().enumerate() {
        out += &format!("  {i} -> {q}\n");
    }
    out += &format!("  gamma = {gamma}\n  beta = {beta}\n}}\n");
    out
}

/// Canonical rendering of a whole document.
pub fn render_document(doc: &Document) -> String {
    let mut out = String::new();
    for s in &doc.spaces {
        out += &render_space_block(&s.name, s.space.n(), s.space.opens());
    }
    for o in &doc.operations {
        out += &render_operation_block(
            &o.name,
            &o.space_name,
            o.op.kind(),
            o.op.space().opens(),
            o.op.values(),
        );
    }
    for m in &doc.maps {
        out += &render_map_block(&m.name, &m.dom, &m.cod, &m.digits, &m.gamma, &m.beta);
    }
    out
}

/// Parse a comma/space separated point list into a mask.
pub fn parse_point_set(text: &str) -> Result<Mask, String> {
    let mut mask: Mask = 0;
    for part in text.split(|c: char| c == ',' || c.is_whitespace()) {
        if part.is_empty() {
            continue;
        }
        let p: usize =
            part.parse().map_err(|_| format!("bad point {part:?} in set argument"))?;
        if p >= 32 {
            return Err(format!("point {p} too large"));
        }
        mask |= 1 << p;
    }
    Ok(mask)
}
