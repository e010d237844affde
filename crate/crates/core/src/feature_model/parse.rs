//! Recursive-descent parser for the feature-model text format.
//!
//! ```text
//! model      := "features" feature constraintDecl*
//! feature    := IDENT [ "{" item* "}" ]
//! item       := "mandatory" feature | "optional" feature
//!             | "xor" "{" feature feature+ "}"
//!             | "or"  "{" feature feature+ "}"
//! constraintDecl := "constraint" IDENT ":" expr
//! expr  := iff ;  iff := imp ("<=>" imp)* ;  imp := orE ("=>" orE)*
//! orE   := andE ("|" andE)* ; andE := notE ("&" notE)*
//! notE  := "!" notE | IDENT | "(" expr ")"
//! ```
//!
//! `=>` and `<=>` associate to the right. `#` starts a comment that runs to
//! the end of the line.

use super::{
    ChildGroup, Constraint, Feature, FeatureModel, Formula, GroupKind, ModelError, KEYWORDS,
};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => format!("keyword `{s}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`=>`".into(),
            Tok::DoubleArrow => "`<=>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self, Tok::Ident(s) if s == kw)
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ModelError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else if c.is_some() {
                column += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(c);
                    bump!();
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(ident), pos));
            continue;
        }
        bump!();
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ':' => Tok::Colon,
            '!' => Tok::Bang,
            '&' => Tok::Amp,
            '|' => Tok::Pipe,
            '=' if chars.peek() == Some(&'>') => {
                bump!();
                Tok::Arrow
            }
            '<' if chars.peek() == Some(&'=') => {
                bump!();
                if chars.peek() != Some(&'>') {
                    return Err(syntax(pos, &["`<=>`"], "`<=`".to_string()));
                }
                bump!();
                Tok::DoubleArrow
            }
            other => {
                return Err(syntax(pos, &["a token"], format!("character `{other}`")));
            }
        };
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

fn syntax(pos: Pos, expected: &[&str], found: String) -> ModelError {
    ModelError::Syntax {
        line: pos.line,
        column: pos.column,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn advance(&mut self) -> Tok {
        let tok = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        tok
    }

    fn error(&self, expected: &[&str]) -> ModelError {
        syntax(self.pos(), expected, self.peek().describe())
    }

    fn expect(&mut self, tok: Tok, label: &str) -> Result<(), ModelError> {
        if *self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&[label]))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ModelError> {
        if self.peek().is_keyword(kw) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{kw}`")]))
        }
    }

    /// A non-keyword identifier.
    fn name(&mut self, label: &str) -> Result<String, ModelError> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => Err(self.error(&[label])),
        }
    }

    fn model(&mut self) -> Result<(Feature, Vec<Constraint>), ModelError> {
        self.keyword("features")?;
        let root = self.feature()?;
        let mut constraints = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => break,
                t if t.is_keyword("constraint") => {
                    self.advance();
                    let name = self.name("constraint name")?;
                    self.expect(Tok::Colon, "`:`")?;
                    let formula = self.expr()?;
                    constraints.push(Constraint { name, formula });
                }
                _ => return Err(self.error(&["`constraint`", "end of input"])),
            }
        }
        Ok((root, constraints))
    }

    fn feature(&mut self) -> Result<Feature, ModelError> {
        let name = self.name("feature name")?;
        let mut children = Vec::new();
        if *self.peek() == Tok::LBrace {
            self.advance();
            loop {
                let kind = match self.peek() {
                    Tok::RBrace => {
                        self.advance();
                        break;
                    }
                    t if t.is_keyword("mandatory") => GroupKind::Mandatory,
                    t if t.is_keyword("optional") => GroupKind::Optional,
                    t if t.is_keyword("xor") => GroupKind::Xor,
                    t if t.is_keyword("or") => GroupKind::Or,
                    _ => {
                        return Err(self.error(&[
                            "`mandatory`",
                            "`optional`",
                            "`xor`",
                            "`or`",
                            "`}`",
                        ]))
                    }
                };
                let group_pos = self.pos();
                self.advance();
                let members = if kind.is_single() {
                    vec![self.feature()?]
                } else {
                    self.expect(Tok::LBrace, "`{`")?;
                    let mut members = Vec::new();
                    while *self.peek() != Tok::RBrace {
                        members.push(self.feature()?);
                    }
                    self.advance();
                    if members.len() < 2 {
                        return Err(ModelError::GroupTooSmall {
                            kind,
                            line: group_pos.line,
                            column: group_pos.column,
                            found: members.len(),
                        });
                    }
                    members
                };
                children.push(ChildGroup { kind, members });
            }
        }
        Ok(Feature { name, children })
    }

    fn expr(&mut self) -> Result<Formula, ModelError> {
        self.iff()
    }

    fn iff(&mut self) -> Result<Formula, ModelError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::DoubleArrow {
            self.advance();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ModelError> {
        let lhs = self.or_expr()?;
        if *self.peek() == Tok::Arrow {
            self.advance();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or_expr(&mut self) -> Result<Formula, ModelError> {
        let mut terms = vec![self.and_expr()?];
        while *self.peek() == Tok::Pipe {
            self.advance();
            terms.push(self.and_expr()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Formula::Or(terms)
        })
    }

    fn and_expr(&mut self) -> Result<Formula, ModelError> {
        let mut terms = vec![self.not_expr()?];
        while *self.peek() == Tok::Amp {
            self.advance();
            terms.push(self.not_expr()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Formula::And(terms)
        })
    }

    fn not_expr(&mut self) -> Result<Formula, ModelError> {
        match self.peek() {
            Tok::Bang => {
                self.advance();
                Ok(Formula::not(self.not_expr()?))
            }
            Tok::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Ok(Formula::Atom(self.name("`!`, `(` or feature name")?)),
        }
    }
}

/// Parses a feature model from its text form.
///
/// Source order of groups, members and constraints is preserved.
pub fn parse_feature_model(text: &str) -> Result<FeatureModel, ModelError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, at: 0 };
    let (root, constraints) = parser.model()?;
    FeatureModel::new(root, constraints)
}
