//! Parser and pretty-printer for the ASCII statement language.
//!
//! Set statements use `|` `&` `\` `^` `*`, postfix `'`, the constants `0`
//! (empty set) and `1` (universe), `=` / `<=`, and `Union s in S. ...` /
//! `Inter s in S. ...` for indexed unions and intersections. Logical
//! statements use `~` `/\` `\/` `->` `<->`, the constants `true` / `false`,
//! and `forall` / `exists`. `#` starts a line comment. The full grammar
//! with the precedence table lives in `grammar.md`.
//!
//! Statement mode is inferred: an `=` or `<=` anywhere makes the input a
//! set statement, otherwise it is read as a formula. The pretty-printer
//! emits minimal parentheses, except that `\` and `^` are always
//! parenthesized when mixed with `|`, and chained complements are written
//! `(A')'` — the two places where bare output reads badly.

use crate::ast::{well_formed, PropExpr, SetExpr, Statement, Violation};
use std::fmt;

/// Byte range of a token or error inside the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> Self {
        SourceSpan { start, end }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at byte {}..{}", span.start, span.end)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    /// Descriptions of the tokens that would have been accepted here.
    pub expected: Vec<String>,
    /// Well-formedness violations; nonempty means the input parsed but
    /// uses an unsupported construct.
    pub violations: Vec<Violation>,
}

impl ParseError {
    fn at(span: SourceSpan, message: impl Into<String>, expected: &[&str]) -> Self {
        ParseError {
            span,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            violations: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Pipe,
    Amp,
    Backslash,
    Caret,
    Prime,
    Star,
    Eq,
    SubsetEq,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Tilde,
    AndAnd,
    OrOr,
    Arrow,
    IffArrow,
    Zero,
    One,
    Upper(String),
    Lower(String),
    BigUnion,
    BigInter,
    Forall,
    Exists,
    In,
    True,
    False,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Pipe => "`|`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Backslash => "`\\`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Prime => "`'`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eq => "`=`".into(),
            Tok::SubsetEq => "`<=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::AndAnd => "`/\\`".into(),
            Tok::OrOr => "`\\/`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::IffArrow => "`<->`".into(),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Upper(name) => format!("`{name}`"),
            Tok::Lower(name) => format!("`{name}`"),
            Tok::BigUnion => "`Union`".into(),
            Tok::BigInter => "`Inter`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::In => "`in`".into(),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Lexer {
            input,
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn skip_trivia(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn tokenize(mut self) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let start = self.pos;
            if start >= self.bytes.len() {
                out.push((Tok::Eof, SourceSpan::new(start, start)));
                return Ok(out);
            }
            let b = self.bytes[start];
            let tok = match b {
                b'|' => self.single(Tok::Pipe),
                b'&' => self.single(Tok::Amp),
                b'^' => self.single(Tok::Caret),
                b'\'' => self.single(Tok::Prime),
                b'*' => self.single(Tok::Star),
                b'=' => self.single(Tok::Eq),
                b'(' => self.single(Tok::LParen),
                b')' => self.single(Tok::RParen),
                b'[' => self.single(Tok::LBracket),
                b']' => self.single(Tok::RBracket),
                b',' => self.single(Tok::Comma),
                b'.' => self.single(Tok::Dot),
                b'~' => self.single(Tok::Tilde),
                b'\\' => {
                    if self.peek(1) == Some(b'/') {
                        self.pos += 2;
                        Tok::OrOr
                    } else {
                        self.single(Tok::Backslash)
                    }
                }
                b'/' => {
                    if self.peek(1) == Some(b'\\') {
                        self.pos += 2;
                        Tok::AndAnd
                    } else {
                        return Err(ParseError::at(
                            SourceSpan::new(start, start + 1),
                            "stray `/`".to_string(),
                            &["`/\\`"],
                        ));
                    }
                }
                b'-' => {
                    if self.peek(1) == Some(b'>') {
                        self.pos += 2;
                        Tok::Arrow
                    } else {
                        return Err(ParseError::at(
                            SourceSpan::new(start, start + 1),
                            "stray `-`".to_string(),
                            &["`->`"],
                        ));
                    }
                }
                b'<' => {
                    if self.peek(1) == Some(b'-') && self.peek(2) == Some(b'>') {
                        self.pos += 3;
                        Tok::IffArrow
                    } else if self.peek(1) == Some(b'=') {
                        self.pos += 2;
                        Tok::SubsetEq
                    } else {
                        return Err(ParseError::at(
                            SourceSpan::new(start, start + 1),
                            "stray `<`".to_string(),
                            &["`<=`", "`<->`"],
                        ));
                    }
                }
                b'0' => self.single(Tok::Zero),
                b'1' => self.single(Tok::One),
                b'2'..=b'9' => {
                    return Err(ParseError::at(
                        SourceSpan::new(start, start + 1),
                        format!("unexpected digit `{}`; only `0` and `1` are constants", b as char),
                        &["`0`", "`1`"],
                    ));
                }
                b'A'..=b'Z' | b'a'..=b'z' => {
                    let mut end = start + 1;
                    while end < self.bytes.len() && self.bytes[end].is_ascii_alphanumeric() {
                        end += 1;
                    }
                    self.pos = end;
                    let word = &self.input[start..end];
                    match word {
                        "Union" => Tok::BigUnion,
                        "Inter" => Tok::BigInter,
                        "forall" => Tok::Forall,
                        "exists" => Tok::Exists,
                        "in" => Tok::In,
                        "true" => Tok::True,
                        "false" => Tok::False,
                        _ if b.is_ascii_uppercase() => Tok::Upper(word.to_string()),
                        _ => Tok::Lower(word.to_string()),
                    }
                }
                _ => {
                    return Err(ParseError::at(
                        SourceSpan::new(start, start + 1),
                        format!("unexpected character `{}`", self.input[start..].chars().next().unwrap()),
                        &["an operator", "an identifier"],
                    ));
                }
            };
            out.push((tok, SourceSpan::new(start, self.pos)));
        }
    }

    fn single(&mut self, tok: Tok) -> Tok {
        self.pos += 1;
        tok
    }

    fn peek(&self, ahead: usize) -> Option<u8> {
        self.bytes.get(self.pos + ahead).copied()
    }
}

/// How a bare formula with `<->` at the top level should be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseMode {
    /// `=`/`<=` means a set statement; anything else is a tautology claim.
    Auto,
    /// A formula whose top-level connective must be `<->`, read as a
    /// claimed equivalence of its two sides.
    Equiv,
}

struct Parser {
    tokens: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::at(
                self.span(),
                format!("expected {expected}, found {}", self.peek().describe()),
                &[expected],
            ))
        }
    }

    fn lower_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Lower(name) => {
                self.bump();
                Ok(name)
            }
            other => Err(ParseError::at(
                self.span(),
                format!("expected {what}, found {}", other.describe()),
                &[what],
            )),
        }
    }

    fn upper_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Upper(name) => {
                self.bump();
                Ok(name)
            }
            other => Err(ParseError::at(
                self.span(),
                format!("expected {what}, found {}", other.describe()),
                &[what],
            )),
        }
    }

    // Arity is not enforced here; the well-formedness check reports
    // index lists longer than 2 as unsupported.
    fn index_list(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut indices = vec![self.lower_ident("index variable")?];
        while *self.peek() == Tok::Comma {
            self.bump();
            indices.push(self.lower_ident("index variable")?);
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(indices)
    }

    // Set grammar, loosest binding first:
    //   union := diffs (`|` diffs)*
    //   diffs := inter ((`\` | `^`) inter)*
    //   inter := prod (`&` prod)*
    //   prod  := postfix (`*` postfix)*
    //   postfix := primary `'`*
    fn set_expr(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.set_diffs()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.set_diffs()?;
            lhs = SetExpr::union(lhs, rhs);
        }
        Ok(lhs)
    }

    fn set_diffs(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.set_inter()?;
        loop {
            match self.peek() {
                Tok::Backslash => {
                    self.bump();
                    let rhs = self.set_inter()?;
                    lhs = SetExpr::diff(lhs, rhs);
                }
                Tok::Caret => {
                    self.bump();
                    let rhs = self.set_inter()?;
                    lhs = SetExpr::sym_diff(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn set_inter(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.set_prod()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.set_prod()?;
            lhs = SetExpr::inter(lhs, rhs);
        }
        Ok(lhs)
    }

    fn set_prod(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.set_postfix()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.set_postfix()?;
            lhs = SetExpr::product(lhs, rhs);
        }
        Ok(lhs)
    }

    fn set_postfix(&mut self) -> Result<SetExpr, ParseError> {
        let mut e = self.set_primary()?;
        while *self.peek() == Tok::Prime {
            self.bump();
            e = SetExpr::complement(e);
        }
        Ok(e)
    }

    fn set_binder(&mut self, big_union: bool) -> Result<SetExpr, ParseError> {
        let index = self.lower_ident("index variable")?;
        self.expect(Tok::In, "`in`")?;
        let index_set = self.upper_ident("index-set name")?;
        self.expect(Tok::Dot, "`.`")?;
        // the body extends maximally to the right
        let body = self.set_expr()?;
        Ok(if big_union {
            SetExpr::fam_union(&index, &index_set, body)
        } else {
            SetExpr::fam_inter(&index, &index_set, body)
        })
    }

    fn set_primary(&mut self) -> Result<SetExpr, ParseError> {
        match self.peek().clone() {
            Tok::Upper(name) => {
                self.bump();
                if *self.peek() == Tok::LBracket {
                    let indices = self.index_list()?;
                    Ok(SetExpr::FamVar { name, indices })
                } else {
                    Ok(SetExpr::Var(name))
                }
            }
            Tok::Zero => {
                self.bump();
                Ok(SetExpr::Empty)
            }
            Tok::One => {
                self.bump();
                Ok(SetExpr::Universe)
            }
            Tok::LParen => {
                self.bump();
                let e = self.set_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::BigUnion => {
                self.bump();
                self.set_binder(true)
            }
            Tok::BigInter => {
                self.bump();
                self.set_binder(false)
            }
            other => Err(ParseError::at(
                self.span(),
                format!("expected a set expression, found {}", other.describe()),
                &[
                    "set variable",
                    "`0`",
                    "`1`",
                    "`(`",
                    "`Union`",
                    "`Inter`",
                ],
            )),
        }
    }

    // Logic grammar, loosest binding first:
    //   iff     := implies (`<->` implies)*     (right-associative)
    //   implies := or (`->` implies)?           (right-associative)
    //   or      := and (`\/` and)*
    //   and     := unary (`/\` unary)*
    //   unary   := `~` unary | primary
    fn prop_expr(&mut self) -> Result<PropExpr, ParseError> {
        let lhs = self.prop_implies()?;
        if *self.peek() == Tok::IffArrow {
            self.bump();
            let rhs = self.prop_expr()?;
            Ok(PropExpr::iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn prop_implies(&mut self) -> Result<PropExpr, ParseError> {
        let lhs = self.prop_or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.prop_implies()?;
            Ok(PropExpr::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn prop_or(&mut self) -> Result<PropExpr, ParseError> {
        let mut lhs = self.prop_and()?;
        while *self.peek() == Tok::OrOr {
            self.bump();
            let rhs = self.prop_and()?;
            lhs = PropExpr::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn prop_and(&mut self) -> Result<PropExpr, ParseError> {
        let mut lhs = self.prop_unary()?;
        while *self.peek() == Tok::AndAnd {
            self.bump();
            let rhs = self.prop_unary()?;
            lhs = PropExpr::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn prop_unary(&mut self) -> Result<PropExpr, ParseError> {
        if *self.peek() == Tok::Tilde {
            self.bump();
            let e = self.prop_unary()?;
            Ok(PropExpr::not(e))
        } else {
            self.prop_primary()
        }
    }

    fn prop_binder(&mut self, universal: bool) -> Result<PropExpr, ParseError> {
        let index = self.lower_ident("index variable")?;
        self.expect(Tok::In, "`in`")?;
        let index_set = self.upper_ident("index-set name")?;
        self.expect(Tok::Dot, "`.`")?;
        let body = self.prop_expr()?;
        Ok(if universal {
            PropExpr::forall(&index, &index_set, body)
        } else {
            PropExpr::exists(&index, &index_set, body)
        })
    }

    fn prop_primary(&mut self) -> Result<PropExpr, ParseError> {
        match self.peek().clone() {
            Tok::Lower(name) => {
                self.bump();
                if *self.peek() == Tok::LBracket {
                    let indices = self.index_list()?;
                    Ok(PropExpr::Atom { name, indices })
                } else {
                    Ok(PropExpr::Atom {
                        name,
                        indices: Vec::new(),
                    })
                }
            }
            Tok::True => {
                self.bump();
                Ok(PropExpr::True)
            }
            Tok::False => {
                self.bump();
                Ok(PropExpr::False)
            }
            Tok::LParen => {
                self.bump();
                let e = self.prop_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Forall => {
                self.bump();
                self.prop_binder(true)
            }
            Tok::Exists => {
                self.bump();
                self.prop_binder(false)
            }
            Tok::Upper(_) => Err(ParseError::at(
                self.span(),
                "set expressions must appear in an `=` or `<=` statement; expected a formula here"
                    .to_string(),
                &["atom", "`~`", "`(`", "`forall`", "`exists`", "`true`", "`false`"],
            )),
            other => Err(ParseError::at(
                self.span(),
                format!("expected a formula, found {}", other.describe()),
                &["atom", "`~`", "`(`", "`forall`", "`exists`", "`true`", "`false`"],
            )),
        }
    }

    fn eof(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(ParseError::at(
                self.span(),
                format!("expected end of input, found {}", self.peek().describe()),
                &["end of input"],
            ))
        }
    }
}

/// Parse one statement. Statement mode is inferred from the tokens; see
/// [`parse_statement_in`] for the `--equiv` reading.
pub fn parse_statement(input: &str) -> Result<Statement, ParseError> {
    parse_statement_in(input, ParseMode::Auto)
}

/// Parse one statement in the given mode, then check well-formedness.
/// Violations (nested products, unbound indices, arity problems) are
/// reported through [`ParseError::violations`].
pub fn parse_statement_in(input: &str, mode: ParseMode) -> Result<Statement, ParseError> {
    let tokens = Lexer::new(input).tokenize()?;
    let is_set = tokens
        .iter()
        .any(|(t, _)| matches!(t, Tok::Eq | Tok::SubsetEq));
    let mut parser = Parser { tokens, pos: 0 };
    let stmt = if is_set {
        let lhs = parser.set_expr()?;
        let inclusion = match parser.peek() {
            Tok::Eq => false,
            Tok::SubsetEq => true,
            other => {
                return Err(ParseError::at(
                    parser.span(),
                    format!("expected `=` or `<=`, found {}", other.describe()),
                    &["`=`", "`<=`"],
                ))
            }
        };
        parser.bump();
        let rhs = parser.set_expr()?;
        parser.eof()?;
        if inclusion {
            Statement::SetIncl(lhs, rhs)
        } else {
            Statement::SetEq(lhs, rhs)
        }
    } else {
        let formula = parser.prop_expr()?;
        parser.eof()?;
        match mode {
            ParseMode::Auto => Statement::Taut(formula),
            ParseMode::Equiv => match formula {
                PropExpr::Iff(l, r) => Statement::PropEquiv(*l, *r),
                _ => {
                    return Err(ParseError::at(
                        SourceSpan::new(0, input.len()),
                        "equivalence mode requires `<->` at the top level".to_string(),
                        &["`<->`"],
                    ))
                }
            },
        }
    };
    let violations = well_formed(&stmt);
    if violations.is_empty() {
        Ok(stmt)
    } else {
        Err(ParseError {
            span: SourceSpan::new(0, input.len()),
            message: violations[0].to_string(),
            expected: vec!["a well-formed statement".to_string()],
            violations,
        })
    }
}

// Binding strength, tighter = larger. Binders are weakest so their body
// extends maximally to the right.
fn set_level(e: &SetExpr) -> u8 {
    match e {
        SetExpr::FamUnion { .. } | SetExpr::FamInter { .. } => 0,
        SetExpr::Union(_, _) => 1,
        SetExpr::Diff(_, _) | SetExpr::SymDiff(_, _) => 2,
        SetExpr::Inter(_, _) => 3,
        SetExpr::Product(_, _) => 4,
        SetExpr::Complement(_) => 5,
        SetExpr::Var(_) | SetExpr::Empty | SetExpr::Universe | SetExpr::FamVar { .. } => 6,
    }
}

fn fmt_set(e: &SetExpr, min: u8, out: &mut String) {
    let parens = set_level(e) < min;
    if parens {
        out.push('(');
    }
    match e {
        SetExpr::Var(name) => out.push_str(name),
        SetExpr::Empty => out.push('0'),
        SetExpr::Universe => out.push('1'),
        SetExpr::Union(l, r) => {
            // `\` and `^` always get parentheses under `|`
            fmt_set(l, union_child_min(l, 1), out);
            out.push_str(" | ");
            fmt_set(r, union_child_min(r, 2), out);
        }
        SetExpr::Diff(l, r) => {
            fmt_set(l, 2, out);
            out.push_str(" \\ ");
            fmt_set(r, 3, out);
        }
        SetExpr::SymDiff(l, r) => {
            fmt_set(l, 2, out);
            out.push_str(" ^ ");
            fmt_set(r, 3, out);
        }
        SetExpr::Inter(l, r) => {
            fmt_set(l, 3, out);
            out.push_str(" & ");
            fmt_set(r, 4, out);
        }
        SetExpr::Product(l, r) => {
            fmt_set(l, 4, out);
            out.push_str(" * ");
            fmt_set(r, 5, out);
        }
        SetExpr::Complement(inner) => {
            fmt_set(inner, 6, out);
            out.push('\'');
        }
        SetExpr::FamUnion {
            index,
            index_set,
            body,
        } => {
            out.push_str("Union ");
            out.push_str(index);
            out.push_str(" in ");
            out.push_str(index_set);
            out.push_str(". ");
            fmt_set(body, 0, out);
        }
        SetExpr::FamInter {
            index,
            index_set,
            body,
        } => {
            out.push_str("Inter ");
            out.push_str(index);
            out.push_str(" in ");
            out.push_str(index_set);
            out.push_str(". ");
            fmt_set(body, 0, out);
        }
        SetExpr::FamVar { name, indices } => {
            out.push_str(name);
            out.push('[');
            out.push_str(&indices.join(","));
            out.push(']');
        }
    }
    if parens {
        out.push(')');
    }
}

fn union_child_min(child: &SetExpr, base: u8) -> u8 {
    if matches!(child, SetExpr::Diff(_, _) | SetExpr::SymDiff(_, _)) {
        3
    } else {
        base
    }
}

fn prop_level(p: &PropExpr) -> u8 {
    match p {
        PropExpr::Forall { .. } | PropExpr::Exists { .. } => 0,
        PropExpr::Iff(_, _) => 1,
        PropExpr::Implies(_, _) => 2,
        PropExpr::Or(_, _) => 3,
        PropExpr::And(_, _) => 4,
        PropExpr::Not(_) => 5,
        PropExpr::Atom { .. } | PropExpr::True | PropExpr::False => 6,
    }
}

fn fmt_prop(p: &PropExpr, min: u8, out: &mut String) {
    let parens = prop_level(p) < min;
    if parens {
        out.push('(');
    }
    match p {
        PropExpr::Atom { name, indices } => {
            out.push_str(name);
            if !indices.is_empty() {
                out.push('[');
                out.push_str(&indices.join(","));
                out.push(']');
            }
        }
        PropExpr::True => out.push_str("true"),
        PropExpr::False => out.push_str("false"),
        PropExpr::Iff(l, r) => {
            fmt_prop(l, 2, out);
            out.push_str(" <-> ");
            fmt_prop(r, 1, out);
        }
        PropExpr::Implies(l, r) => {
            fmt_prop(l, 3, out);
            out.push_str(" -> ");
            fmt_prop(r, 2, out);
        }
        PropExpr::Or(l, r) => {
            fmt_prop(l, 3, out);
            out.push_str(" \\/ ");
            fmt_prop(r, 4, out);
        }
        PropExpr::And(l, r) => {
            fmt_prop(l, 4, out);
            out.push_str(" /\\ ");
            fmt_prop(r, 5, out);
        }
        PropExpr::Not(inner) => {
            out.push('~');
            fmt_prop(inner, 5, out);
        }
        PropExpr::Forall {
            index,
            index_set,
            body,
        } => {
            out.push_str("forall ");
            out.push_str(index);
            out.push_str(" in ");
            out.push_str(index_set);
            out.push_str(". ");
            fmt_prop(body, 0, out);
        }
        PropExpr::Exists {
            index,
            index_set,
            body,
        } => {
            out.push_str("exists ");
            out.push_str(index);
            out.push_str(" in ");
            out.push_str(index_set);
            out.push_str(". ");
            fmt_prop(body, 0, out);
        }
    }
    if parens {
        out.push(')');
    }
}

/// Pretty-print a set expression.
pub fn render_set_expr(e: &SetExpr) -> String {
    let mut out = String::new();
    fmt_set(e, 0, &mut out);
    out
}

/// Pretty-print a formula.
pub fn render_prop_expr(p: &PropExpr) -> String {
    let mut out = String::new();
    fmt_prop(p, 0, &mut out);
    out
}

/// Pretty-print a statement so that it re-parses to the identical tree
/// (equivalence statements re-parse under [`ParseMode::Equiv`]).
pub fn render(s: &Statement) -> String {
    match s {
        Statement::SetEq(l, r) => format!("{} = {}", render_set_expr(l), render_set_expr(r)),
        Statement::SetIncl(l, r) => format!("{} <= {}", render_set_expr(l), render_set_expr(r)),
        Statement::Taut(p) => render_prop_expr(p),
        Statement::PropEquiv(l, r) => {
            let mut out = String::new();
            fmt_prop(l, 2, &mut out);
            out.push_str(" <-> ");
            fmt_prop(r, 1, &mut out);
            out
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}
