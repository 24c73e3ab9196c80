//! The job file language and the validated job it describes.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use admissible::poly::parse::{parse_ring_header, tokenize, Token, TokenKind, TokenStream};
use admissible::{CoordRing, Error, ModulePresentation, PolyRing, Polynomial};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl Diagnostic {
    fn at(t: Option<&Token>, message: impl Into<String>) -> Self {
        let (line, column) = t.map(|t| (t.line, t.column)).unwrap_or((1, 1));
        Diagnostic {
            line,
            column,
            message: message.into(),
        }
    }

    fn from_error(e: Error, fallback: Option<&Token>) -> Self {
        match e {
            Error::Parse { line, column, message } => Diagnostic { line, column, message },
            other => Diagnostic::at(fallback, other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDecl {
    pub name: String,
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDecl {
    pub name: String,
    pub twists: Vec<i64>,
    /// Relation columns, entries in canonical polynomial syntax.
    pub relations: Vec<Vec<String>>,
}

/// A parsed job file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobInput {
    pub ring: RingDecl,
    pub module: ModuleDecl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertifyKind {
    Lemma2,
    Locfree,
    Independence,
    Ev,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Command {
    Resolve,
    Certify { kind: CertifyKind },
    Hilbert { m: Option<u32>, nmax: u32 },
    Fitting { index: usize },
    Report { m: Option<u32>, nmax: u32 },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Resolve => "resolve",
            Command::Certify { .. } => "certify",
            Command::Hilbert { .. } => "hilbert",
            Command::Fitting { .. } => "fitting",
            Command::Report { .. } => "report",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    pub exponents: Option<Vec<u32>>,
    pub rank: Option<usize>,
    pub attested: bool,
    pub degree_bound: Option<i64>,
    /// Only charts whose label starts with one of these are shown.
    pub charts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub input: JobInput,
    pub command: Command,
    pub options: Options,
}

impl JobSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("job specs serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

impl JobInput {
    /// Canonical job text; parsing it gives back `self`.
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ring {} = QQ[{}] order grevlex;", self.ring.name, self.ring.vars.join(","));
        let tw: Vec<String> = self.module.twists.iter().map(|t| t.to_string()).collect();
        let _ = write!(s, "module {} twists ({}) relations {{", self.module.name, tw.join(","));
        if self.module.relations.is_empty() {
            s.push_str(" };\n");
            return s;
        }
        s.push('\n');
        for r in &self.module.relations {
            let _ = writeln!(s, "  {};", r.join(", "));
        }
        s.push_str("};\n");
        s
    }

    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }

    pub fn build(&self) -> Result<(Arc<CoordRing>, ModulePresentation), Error> {
        let vars: Vec<&str> = self.ring.vars.iter().map(|s| s.as_str()).collect();
        let ring = CoordRing::polynomial(&PolyRing::new(&self.ring.name, &vars)?);
        let columns = self
            .module
            .relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| admissible::poly::parse::parse_polynomial(ring.ring(), e))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = ModulePresentation::new(&ring, self.module.twists.clone(), columns)?;
        Ok((ring, m))
    }
}

/// Blanks out `//` comments, keeping positions.
fn strip_comments(src: &str) -> String {
    src.lines()
        .map(|l| match l.find("//") {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l[i..].chars().count())),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn is_keyword(t: Option<&Token>, kw: &str) -> bool {
    matches!(t, Some(Token { kind: TokenKind::Ident(s), .. }) if s == kw)
}

pub fn parse(src: &str) -> Result<JobInput, Vec<Diagnostic>> {
    let src = strip_comments(src);
    let tokens = tokenize(&src).map_err(|e| vec![Diagnostic::from_error(e, None)])?;
    let mut ts = TokenStream::new(&tokens);
    if !is_keyword(ts.peek(), "ring") {
        return Err(vec![Diagnostic::at(ts.peek(), "no ring declaration")]);
    }
    let first = ts.peek();
    let ring = parse_ring_header(&mut ts).map_err(|e| vec![Diagnostic::from_error(e, first)])?;
    if !is_keyword(ts.peek(), "module") {
        let at = ts.peek().or(tokens.last());
        return Err(vec![Diagnostic::at(at, "no module declaration")]);
    }
    let (module, mut diags) = parse_module(&mut ts, &ring)?;
    if !ts.at_end() {
        diags.push(Diagnostic::at(ts.peek(), "only one module declaration is allowed"));
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    Ok(JobInput {
        ring: RingDecl {
            name: ring.name().to_string(),
            vars: ring.vars().to_vec(),
        },
        module,
    })
}

fn fatal(e: Error) -> Vec<Diagnostic> {
    vec![Diagnostic::from_error(e, None)]
}

/// Skips to the next `,`, `;` or `}` outside parentheses.
fn resync(ts: &mut TokenStream<'_>) {
    let mut depth = 0usize;
    while let Some(t) = ts.peek() {
        match t.kind {
            TokenKind::LParen => depth += 1,
            TokenKind::RParen => depth = depth.saturating_sub(1),
            TokenKind::Comma | TokenKind::Semi | TokenKind::RBrace if depth == 0 => return,
            _ => {}
        }
        ts.advance();
    }
}

fn parse_module(
    ts: &mut TokenStream<'_>,
    ring: &Arc<PolyRing>,
) -> Result<(ModuleDecl, Vec<Diagnostic>), Vec<Diagnostic>> {
    ts.expect_keyword("module").map_err(fatal)?;
    let (name, _) = ts.expect_ident("module name").map_err(fatal)?;
    ts.expect_keyword("twists").map_err(fatal)?;
    ts.expect(&TokenKind::LParen, "`(`").map_err(fatal)?;
    let mut twists = Vec::new();
    loop {
        twists.push(ts.expect_int().map_err(fatal)?);
        if ts.eat(&TokenKind::Comma) {
            continue;
        }
        ts.expect(&TokenKind::RParen, "`,` or `)`").map_err(fatal)?;
        break;
    }
    ts.expect_keyword("relations").map_err(fatal)?;
    ts.expect(&TokenKind::LBrace, "`{`").map_err(fatal)?;
    let coord = CoordRing::polynomial(ring);
    let mut diags = Vec::new();
    let mut relations = Vec::new();
    let mut k = 0;
    while !ts.eat(&TokenKind::RBrace) {
        k += 1;
        let start = ts.peek();
        if start.is_none() {
            return Err(fatal(ts.error_here("expected `}`")));
        }
        let mut entries: Vec<Polynomial> = Vec::new();
        let mut ok = true;
        loop {
            let at = ts.peek();
            match ts.parse_expr(ring) {
                Ok(p) => entries.push(p),
                Err(e) => {
                    diags.push(Diagnostic::from_error(e, at));
                    ok = false;
                    resync(ts);
                }
            }
            if ts.eat(&TokenKind::Comma) {
                continue;
            }
            if ts.eat(&TokenKind::Semi) {
                break;
            }
            diags.push(Diagnostic::from_error(ts.error_here("expected `,` or `;`"), None));
            return Err(diags);
        }
        if !ok {
            continue;
        }
        if entries.len() != twists.len() {
            diags.push(Diagnostic::at(
                start,
                format!("relation {k} has {} entries, expected {}", entries.len(), twists.len()),
            ));
            relations.push(Vec::new());
            continue;
        }
        if let Err(e) = ModulePresentation::new(&coord, twists.clone(), vec![entries.clone()]) {
            let msg = match e {
                Error::Inhomogeneous(_) => format!("inhomogeneous relation {k}"),
                other => other.to_string(),
            };
            diags.push(Diagnostic::at(start, msg));
        }
        relations.push(entries.iter().map(|p| p.to_string()).collect());
    }
    ts.expect(&TokenKind::Semi, "`;`").map_err(fatal)?;
    Ok((ModuleDecl { name, twists, relations }, diags))
}
