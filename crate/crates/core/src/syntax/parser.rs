//! Recursive-descent parser for the knowledge-base document format.
//!
//! Precedence, loosest first: `|`, `&`, then the unary forms `!`,
//! `exists r.`, `forall r.`. Binary operators associate to the left.

use std::borrow::Cow;
use std::collections::HashSet;
use std::fmt;

use super::ast::*;
use super::ext_nat::ExtendedNat;
use super::lexer::{tokenize, Tok, Token};

const RESERVED: &[&str] = &["top", "bot", "exists", "forall", "inf"];
const MAX_NESTING: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    Undeclared { kind: NameKind, name: String },
    DuplicateDeclaration(String),
    NegativeWeight,
    ReservedName(String),
    EmptyUniverse,
    TooManyIndividuals(usize),
    DuplicateDci(String),
    InvalidImpact(String),
    FiniteStrictWeight,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => f.write_str(m),
            ParseErrorKind::Undeclared { kind, name } => {
                write!(f, "undeclared {kind} name `{name}`")
            }
            ParseErrorKind::DuplicateDeclaration(n) => write!(f, "duplicate declaration of `{n}`"),
            ParseErrorKind::NegativeWeight => f.write_str("weights must be non-negative"),
            ParseErrorKind::ReservedName(n) => {
                write!(f, "`{n}` is a keyword and cannot be declared")
            }
            ParseErrorKind::EmptyUniverse => {
                f.write_str("at least one individual must be declared")
            }
            ParseErrorKind::TooManyIndividuals(n) => {
                write!(
                    f,
                    "at most {MAX_INDIVIDUALS} individuals are supported, found {n}"
                )
            }
            ParseErrorKind::DuplicateDci(s) => write!(f, "duplicate dbox entry `{s}`"),
            ParseErrorKind::InvalidImpact(m) => f.write_str(m),
            ParseErrorKind::FiniteStrictWeight => f.write_str(
                "tbox/abox statements of a knowledge base with a dbox are strict; \
                 only `[inf]` or no weight is allowed",
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

type Result<T> = std::result::Result<T, ParseError>;

/// Weight annotation as written, before it is interpreted per block.
#[derive(Clone, Copy, Debug)]
enum Annotation {
    Int(u64),
    Inf,
}

struct Parser<'v> {
    tokens: Vec<Token>,
    pos: usize,
    vocab: Option<Cow<'v, Vocabulary>>,
    depth: usize,
}

impl<'v> Parser<'v> {
    fn new(text: &str, vocab: Option<&'v Vocabulary>) -> Result<Self> {
        Ok(Parser {
            tokens: tokenize(text)?,
            pos: 0,
            vocab: vocab.map(Cow::Borrowed),
            depth: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn here(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let t = self.here();
        ParseError::new(t.line, t.column, kind)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error_here(ParseErrorKind::Syntax(format!(
            "expected {expected}, found {}",
            self.peek().describe()
        )))
    }

    fn expect(&mut self, tok: Tok) -> Result<Token> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.bump();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{word}`"))),
        }
    }

    fn at_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn ident(&mut self, what: &str) -> Result<Token> {
        match self.peek() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => Ok(self.bump()),
            _ => Err(self.unexpected(what)),
        }
    }

    fn vocab(&self) -> &Vocabulary {
        self.vocab
            .as_deref()
            .expect("vocabulary is set before statements are parsed")
    }

    /// Reads a name and checks that it is declared with the given kind.
    fn name(&mut self, kind: NameKind) -> Result<String> {
        let t = self.ident(&format!("{kind} name"))?;
        let Tok::Ident(name) = t.tok else {
            unreachable!()
        };
        if self.vocab().index_of(kind, &name).is_none() {
            return Err(ParseError::new(
                t.line,
                t.column,
                ParseErrorKind::Undeclared { kind, name },
            ));
        }
        Ok(name)
    }

    fn at_end(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    // ---- concepts ----

    fn concept(&mut self) -> Result<ConceptExpr> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = ConceptExpr::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<ConceptExpr> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            lhs = ConceptExpr::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ConceptExpr> {
        if self.depth >= MAX_NESTING {
            return Err(self.error_here(ParseErrorKind::Syntax("concept nesting too deep".into())));
        }
        self.depth += 1;
        let c = self.unary_inner();
        self.depth -= 1;
        c
    }

    fn unary_inner(&mut self) -> Result<ConceptExpr> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(ConceptExpr::not(self.unary()?))
            }
            Tok::Ident(s) if s == "exists" || s == "forall" => {
                let universal = s == "forall";
                self.bump();
                let role = self.name(NameKind::Role)?;
                self.expect(Tok::Dot)?;
                let body = self.unary()?;
                Ok(if universal {
                    ConceptExpr::forall(role, body)
                } else {
                    ConceptExpr::exists(role, body)
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<ConceptExpr> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "top" => {
                self.bump();
                Ok(ConceptExpr::Top)
            }
            Tok::Ident(s) if s == "bot" => {
                self.bump();
                Ok(ConceptExpr::Bot)
            }
            Tok::Ident(_) => Ok(ConceptExpr::Atomic(self.name(NameKind::Concept)?)),
            Tok::LBrace => {
                self.bump();
                let ind = self.name(NameKind::Individual)?;
                self.expect(Tok::RBrace)?;
                Ok(ConceptExpr::Nominal(ind))
            }
            Tok::LParen => {
                self.bump();
                let c = self.concept()?;
                self.expect(Tok::RParen)?;
                Ok(c)
            }
            _ => Err(self.unexpected("a concept")),
        }
    }

    // ---- statements ----

    fn assertion(&mut self) -> Result<Assertion> {
        if *self.peek() == Tok::LParen {
            self.bump();
            let subject = self.name(NameKind::Individual)?;
            self.expect(Tok::Comma)?;
            let object = self.name(NameKind::Individual)?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::Colon)?;
            let role = self.name(NameKind::Role)?;
            Ok(Assertion::role(subject, object, role))
        } else {
            let individual = self.name(NameKind::Individual)?;
            self.expect(Tok::Colon)?;
            let concept = self.concept()?;
            Ok(Assertion::concept(individual, concept))
        }
    }

    fn looks_like_assertion(&self) -> bool {
        matches!(
            (self.peek(), self.peek_at(1), self.peek_at(2)),
            (Tok::Ident(_), Tok::Colon, _) | (Tok::LParen, Tok::Ident(_), Tok::Comma)
        )
    }

    fn statement(&mut self) -> Result<Statement> {
        if self.looks_like_assertion() {
            return Ok(Statement::Assertion(self.assertion()?));
        }
        let sub = self.concept()?;
        let stmt = match self.peek() {
            Tok::Subsumes => {
                self.bump();
                Statement::Gci(Gci::new(sub, self.concept()?))
            }
            Tok::Defeasible => {
                self.bump();
                Statement::Defeasible(DefeasibleInclusion::open(sub, self.concept()?))
            }
            Tok::DefeasibleAll => {
                self.bump();
                Statement::Defeasible(DefeasibleInclusion::quantified(sub, self.concept()?))
            }
            _ => return Err(self.unexpected("`<=`, `~<` or `~<all`")),
        };
        Ok(stmt)
    }

    fn annotation(&mut self) -> Result<Option<(Annotation, Token)>> {
        if *self.peek() != Tok::LBracket {
            return Ok(None);
        }
        self.bump();
        let at = self.here().clone();
        let ann = match self.peek().clone() {
            Tok::Ident(s) if s == "inf" => {
                self.bump();
                Annotation::Inf
            }
            Tok::Int(digits) => {
                self.bump();
                let n = digits.parse::<u64>().map_err(|_| {
                    ParseError::new(
                        at.line,
                        at.column,
                        ParseErrorKind::Syntax(format!("integer `{digits}` is too large")),
                    )
                })?;
                Annotation::Int(n)
            }
            Tok::Minus => return Err(self.error_here(ParseErrorKind::NegativeWeight)),
            _ => return Err(self.unexpected("an integer or `inf`")),
        };
        self.expect(Tok::RBracket)?;
        Ok(Some((ann, at)))
    }

    // ---- document ----

    fn names(&mut self, seen: &mut HashSet<String>) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if *self.peek() == Tok::Semi {
            return Ok(out);
        }
        loop {
            let t = self.here().clone();
            match &t.tok {
                Tok::Ident(s) if RESERVED.contains(&s.as_str()) => {
                    return Err(self.error_here(ParseErrorKind::ReservedName(s.clone())));
                }
                Tok::Ident(s) => {
                    if !seen.insert(s.clone()) {
                        return Err(
                            self.error_here(ParseErrorKind::DuplicateDeclaration(s.clone()))
                        );
                    }
                    out.push(s.clone());
                    self.bump();
                }
                _ => return Err(self.unexpected("a name")),
            }
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }

    fn vocab_block(&mut self) -> Result<Vocabulary> {
        self.expect_keyword("vocab")?;
        self.expect(Tok::LBrace)?;
        let mut seen = HashSet::new();
        let mut lists = Vec::new();
        for section in ["concepts", "roles", "individuals"] {
            self.expect_keyword(section)?;
            self.expect(Tok::Colon)?;
            let at = self.here().clone();
            let names = self.names(&mut seen)?;
            if section == "individuals" {
                if names.is_empty() {
                    return Err(ParseError::new(
                        at.line,
                        at.column,
                        ParseErrorKind::EmptyUniverse,
                    ));
                }
                if names.len() > MAX_INDIVIDUALS {
                    return Err(ParseError::new(
                        at.line,
                        at.column,
                        ParseErrorKind::TooManyIndividuals(names.len()),
                    ));
                }
            }
            lists.push(names);
            self.expect(Tok::Semi)?;
        }
        self.expect(Tok::RBrace)?;
        let individuals = lists.pop().unwrap();
        let roles = lists.pop().unwrap();
        let concepts = lists.pop().unwrap();
        // Names were checked above, so construction cannot fail.
        Ok(Vocabulary::new(concepts, roles, individuals).expect("validated vocabulary"))
    }

    fn block<T>(
        &mut self,
        keyword: &str,
        mut item: impl FnMut(&mut Self) -> Result<T>,
    ) -> Result<Option<Vec<T>>> {
        if !self.at_keyword(keyword) {
            return Ok(None);
        }
        self.bump();
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        while *self.peek() != Tok::RBrace {
            if self.at_end() {
                return Err(self.unexpected("`}`"));
            }
            out.push(item(self)?);
            self.expect(Tok::Semi)?;
        }
        self.bump();
        Ok(Some(out))
    }

    fn document(&mut self) -> Result<Document> {
        let vocab = self.vocab_block()?;
        self.vocab = Some(Cow::Owned(vocab.clone()));

        let tbox = self.block("tbox", |p| {
            let sub = p.concept()?;
            p.expect(Tok::Subsumes)?;
            let sup = p.concept()?;
            let w = p.annotation()?;
            Ok((Gci::new(sub, sup), w))
        })?;
        let dbox = self.block("dbox", |p| {
            let start = p.here().clone();
            let sub = p.concept()?;
            let kind = match p.peek() {
                Tok::Defeasible => DefeasibleKind::Open,
                Tok::DefeasibleAll => DefeasibleKind::Quantified,
                _ => return Err(p.unexpected("`~<` or `~<all`")),
            };
            p.bump();
            let sup = p.concept()?;
            let w = p.annotation()?;
            Ok((DefeasibleInclusion { sub, sup, kind }, w, start))
        })?;
        let abox = self.block("abox", |p| {
            let a = p.assertion()?;
            let w = p.annotation()?;
            Ok((a, w))
        })?;
        if !self.at_end() {
            return Err(self.unexpected("`tbox`, `dbox`, `abox` or end of input"));
        }

        let tbox = tbox.unwrap_or_default();
        let abox = abox.unwrap_or_default();
        match dbox {
            None => {
                let weight = |w: Option<(Annotation, Token)>| match w {
                    None | Some((Annotation::Inf, _)) => ExtendedNat::Infinity,
                    Some((Annotation::Int(n), _)) => ExtendedNat::Finite(n),
                };
                Ok(Document::Weighted(WeightedKb {
                    vocab,
                    tbox: tbox
                        .into_iter()
                        .map(|(g, w)| Weighted::new(g, weight(w)))
                        .collect(),
                    abox: abox
                        .into_iter()
                        .map(|(a, w)| Weighted::new(a, weight(w)))
                        .collect(),
                }))
            }
            Some(dbox) => {
                let strict = |w: &Option<(Annotation, Token)>| match w {
                    Some((Annotation::Int(_), at)) => Err(ParseError::new(
                        at.line,
                        at.column,
                        ParseErrorKind::FiniteStrictWeight,
                    )),
                    _ => Ok(()),
                };
                for (_, w) in &tbox {
                    strict(w)?;
                }
                for (_, w) in &abox {
                    strict(w)?;
                }
                let mut seen = HashSet::new();
                let mut entries = Vec::with_capacity(dbox.len());
                for (inclusion, w, start) in dbox {
                    let impact = match w {
                        None => None,
                        Some((Annotation::Int(n), _)) if n > 0 => Some(n),
                        Some((_, at)) => {
                            return Err(ParseError::new(
                                at.line,
                                at.column,
                                ParseErrorKind::InvalidImpact(
                                    "impact factors must be positive integers".into(),
                                ),
                            ))
                        }
                    };
                    if !seen.insert(inclusion.clone()) {
                        return Err(ParseError::new(
                            start.line,
                            start.column,
                            ParseErrorKind::DuplicateDci(inclusion.to_string()),
                        ));
                    }
                    entries.push(DboxEntry { inclusion, impact });
                }
                Ok(Document::Defeasible(DefeasibleKb {
                    vocab,
                    tbox: tbox.into_iter().map(|(g, _)| g).collect(),
                    dbox: entries,
                    abox: abox.into_iter().map(|(a, _)| a).collect(),
                }))
            }
        }
    }
}

/// Parses a whole document. A document with a `dbox` block is a defeasible
/// knowledge base; any other document is a weighted one.
pub fn parse_document(text: &str) -> Result<Document> {
    Parser::new(text, None)?.document()
}

pub fn parse_concept(text: &str, vocab: &Vocabulary) -> Result<ConceptExpr> {
    let mut p = Parser::new(text, Some(vocab))?;
    let c = p.concept()?;
    if !p.at_end() {
        return Err(p.unexpected("end of input"));
    }
    Ok(c)
}

/// Parses a single statement in the document surface syntax, as used for
/// queries: `a : C`, `(a, b) : r`, `C <= D`, `C ~< D` or `C ~<all D`.
pub fn parse_statement(text: &str, vocab: &Vocabulary) -> Result<Statement> {
    let mut p = Parser::new(text, Some(vocab))?;
    let s = p.statement()?;
    if *p.peek() == Tok::Semi {
        p.bump();
    }
    if !p.at_end() {
        return Err(p.unexpected("end of input"));
    }
    Ok(s)
}
