//! Problem-file parsing and the expression grammar.
//!
//! A problem file declares coordinates, optional parameters and options, and
//! the Lagrangian, in sections separated by `;` or simply by the next
//! section keyword. `#` starts a comment running to the end of the line.
//!
//! ```text
//! # particle on the unit sphere
//! coords: q1 q2 q3 lam
//! options: order = degrevlex
//! L = 1/2*(dq1^2 + dq2^2 + dq3^2) + lam*(q1^2 + q2^2 + q3^2 - 1)
//! ```
//!
//! Expressions are polynomial: identifiers (declared coordinates, their
//! `d`-prefixed velocities, declared parameters), integer literals, `+ - *`,
//! `^` with a non-negative integer exponent, and `/` with an integer-literal
//! divisor only. Parameters must resolve to rational values before the
//! Lagrangian is built; `params: m = 1` assigns in-file, `params: m` leaves
//! the value to be supplied externally.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::BigInt;

use crate::error::ParseError;
use crate::order::BaseOrder;
use crate::phasespace::LagrangianSystem;
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::variable::VariableTable;

const RESERVED: [&str; 4] = ["coords", "params", "options", "L"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
    Colon,
    Semi,
    Comma,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

impl Token {
    fn describe(&self) -> String {
        match &self.tok {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Eof => "end of input".to_owned(),
            Tok::Plus => "`+`".to_owned(),
            Tok::Minus => "`-`".to_owned(),
            Tok::Star => "`*`".to_owned(),
            Tok::Slash => "`/`".to_owned(),
            Tok::Caret => "`^`".to_owned(),
            Tok::LParen => "`(`".to_owned(),
            Tok::RParen => "`)`".to_owned(),
            Tok::Eq => "`=`".to_owned(),
            Tok::Colon => "`:`".to_owned(),
            Tok::Semi => "`;`".to_owned(),
            Tok::Comma => "`,`".to_owned(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&d) = chars.peek() {
                if d == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            let value: BigInt = digits.parse().expect("digit string");
            out.push(Token {
                tok: Tok::Int(value),
                line: tline,
                col: tcol,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    name.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(Token {
                tok: Tok::Ident(name),
                line: tline,
                col: tcol,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            other => {
                return Err(ParseError::new(
                    format!("unexpected character `{other}`"),
                    tline,
                    tcol,
                ))
            }
        };
        bump(&mut chars);
        out.push(Token {
            tok,
            line: tline,
            col: tcol,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// Options block of a problem file; unset fields fall back to CLI flags or
/// built-in defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProblemOptions {
    pub order: Option<BaseOrder>,
    pub radical_check: Option<bool>,
    pub max_passes: Option<usize>,
}

/// A parsed problem file: declarations plus the unevaluated Lagrangian
/// expression.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub coordinates: Vec<String>,
    /// Declared parameters; `None` values must be supplied externally.
    pub parameters: Vec<(String, Option<Rational>)>,
    pub options: ProblemOptions,
    tokens: Vec<Token>,
    expr_range: (usize, usize),
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile, ParseError> {
        let tokens = lex(text)?;
        let mut p = SectionParser { tokens: &tokens, pos: 0 };
        let mut coordinates: Option<Vec<String>> = None;
        let mut parameters = Vec::new();
        let mut options = ProblemOptions::default();
        let mut seen_params = false;
        let mut seen_options = false;
        let mut expr_range: Option<(usize, usize)> = None;

        loop {
            while p.peek().tok == Tok::Semi {
                p.advance();
            }
            let at = p.peek().clone();
            match &at.tok {
                Tok::Eof => break,
                Tok::Ident(name) if name == "coords" => {
                    p.advance();
                    p.expect(Tok::Colon, "`:` after `coords`")?;
                    if coordinates.is_some() {
                        return Err(ParseError::new("duplicate `coords` section", at.line, at.col));
                    }
                    coordinates = Some(p.coordinate_list()?);
                }
                Tok::Ident(name) if name == "params" => {
                    p.advance();
                    p.expect(Tok::Colon, "`:` after `params`")?;
                    if seen_params {
                        return Err(ParseError::new("duplicate `params` section", at.line, at.col));
                    }
                    seen_params = true;
                    parameters = p.parameter_list()?;
                }
                Tok::Ident(name) if name == "options" => {
                    p.advance();
                    p.expect(Tok::Colon, "`:` after `options`")?;
                    if seen_options {
                        return Err(ParseError::new(
                            "duplicate `options` section",
                            at.line,
                            at.col,
                        ));
                    }
                    seen_options = true;
                    options = p.option_list()?;
                }
                Tok::Ident(name) if name == "L" => {
                    p.advance();
                    p.expect(Tok::Eq, "`=` after `L`")?;
                    if expr_range.is_some() {
                        return Err(ParseError::new("duplicate `L` section", at.line, at.col));
                    }
                    let start = p.pos;
                    p.skip_expression()?;
                    expr_range = Some((start, p.pos));
                }
                _ => {
                    return Err(ParseError::new(
                        format!(
                            "expected a section (`coords:`, `params:`, `options:`, `L =`), found {}",
                            at.describe()
                        ),
                        at.line,
                        at.col,
                    ))
                }
            }
        }

        let coordinates = coordinates.ok_or_else(|| {
            ParseError::new("missing `coords` section", 1, 1)
        })?;
        let expr_range = expr_range.ok_or_else(|| {
            ParseError::new("missing `L = ...` section", 1, 1)
        })?;
        Ok(ProblemFile {
            coordinates,
            parameters,
            options,
            tokens,
            expr_range,
        })
    }

    /// Builds the Lagrangian system, substituting parameter values.
    /// `overrides` replace or supply values for declared parameters.
    pub fn build_system(
        &self,
        overrides: &[(String, Rational)],
    ) -> Result<LagrangianSystem, ParseError> {
        let mut params: BTreeMap<String, Option<Rational>> = self
            .parameters
            .iter()
            .map(|(n, v)| (n.clone(), v.clone()))
            .collect();
        for (name, value) in overrides {
            match params.get_mut(name) {
                Some(slot) => *slot = Some(value.clone()),
                None => {
                    return Err(ParseError::new(
                        format!("parameter `{name}` is not declared in the problem file"),
                        1,
                        1,
                    ))
                }
            }
        }
        let table = VariableTable::for_coordinates(&self.coordinates)
            .map_err(|e| ParseError::new(e.to_string(), 1, 1))?;
        let coords: BTreeMap<String, usize> = self
            .coordinates
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let resolver = Resolver::Problem {
            table: &table,
            coords: &coords,
            params: &params,
        };
        // the slice keeps the terminator token so the parser can always peek
        let slice = &self.tokens[self.expr_range.0..=self.expr_range.1];
        let mut ep = ExprParser {
            tokens: slice,
            pos: 0,
            resolver: &resolver,
        };
        let poly = ep.expression()?;
        debug_assert_eq!(ep.pos, slice.len() - 1, "expression span fully consumed");
        LagrangianSystem::new(table, poly).map_err(|e| ParseError::new(e.to_string(), 1, 1))
    }
}

/// One-shot convenience: parse and build in a single call.
pub fn parse_problem(
    text: &str,
    overrides: &[(String, Rational)],
) -> Result<(ProblemFile, LagrangianSystem), ParseError> {
    let file = ProblemFile::parse(text)?;
    let system = file.build_system(overrides)?;
    Ok((file, system))
}

/// Parses a standalone expression over an existing table; any registered
/// variable name is legal. This is the inverse of polynomial rendering.
pub fn parse_expression(
    text: &str,
    table: &Arc<VariableTable>,
) -> Result<Polynomial, ParseError> {
    let tokens = lex(text)?;
    let resolver = Resolver::AnyVariable { table };
    let mut ep = ExprParser {
        tokens: &tokens,
        pos: 0,
        resolver: &resolver,
    };
    let poly = ep.expression()?;
    let rest = &tokens[ep.pos];
    if rest.tok != Tok::Eof {
        return Err(ParseError::new(
            format!("unexpected {} after expression", rest.describe()),
            rest.line,
            rest.col,
        ));
    }
    Ok(poly)
}

struct SectionParser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> SectionParser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek2(&self) -> Option<&Token> {
        self.tokens.get(self.pos + 1)
    }

    fn advance(&mut self) -> &Token {
        let t = &self.tokens[self.pos];
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let t = self.peek().clone();
        if t.tok == want {
            self.advance();
            Ok(())
        } else {
            Err(ParseError::new(
                format!("expected {what}, found {}", t.describe()),
                t.line,
                t.col,
            ))
        }
    }

    /// True when the cursor sits on a section keyword that starts a new
    /// section (`coords:`/`params:`/`options:` or `L =`).
    fn at_section_start(&self) -> bool {
        if let Tok::Ident(name) = &self.peek().tok {
            if RESERVED.contains(&name.as_str()) {
                return match self.peek2().map(|t| &t.tok) {
                    Some(Tok::Colon) => name != "L",
                    Some(Tok::Eq) => name == "L",
                    _ => false,
                };
            }
        }
        false
    }

    fn at_section_end(&self) -> bool {
        matches!(self.peek().tok, Tok::Semi | Tok::Eof) || self.at_section_start()
    }

    fn coordinate_list(&mut self) -> Result<Vec<String>, ParseError> {
        let mut names = Vec::new();
        while !self.at_section_end() {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Ident(name) => {
                    if RESERVED.contains(&name.as_str()) {
                        return Err(ParseError::new(
                            format!("`{name}` is a reserved word and cannot name a coordinate"),
                            t.line,
                            t.col,
                        ));
                    }
                    if names.contains(name) {
                        return Err(ParseError::new(
                            format!("coordinate `{name}` declared twice"),
                            t.line,
                            t.col,
                        ));
                    }
                    names.push(name.clone());
                    self.advance();
                    if self.peek().tok == Tok::Comma {
                        self.advance();
                    }
                }
                _ => {
                    return Err(ParseError::new(
                        format!("expected a coordinate name, found {}", t.describe()),
                        t.line,
                        t.col,
                    ))
                }
            }
        }
        if names.is_empty() {
            let t = self.peek();
            return Err(ParseError::new("empty coordinate list", t.line, t.col));
        }
        Ok(names)
    }

    fn parameter_list(&mut self) -> Result<Vec<(String, Option<Rational>)>, ParseError> {
        let mut out: Vec<(String, Option<Rational>)> = Vec::new();
        while !self.at_section_end() {
            let t = self.peek().clone();
            let Tok::Ident(name) = &t.tok else {
                return Err(ParseError::new(
                    format!("expected a parameter name, found {}", t.describe()),
                    t.line,
                    t.col,
                ));
            };
            if RESERVED.contains(&name.as_str()) {
                return Err(ParseError::new(
                    format!("`{name}` is a reserved word and cannot name a parameter"),
                    t.line,
                    t.col,
                ));
            }
            if out.iter().any(|(n, _)| n == name) {
                return Err(ParseError::new(
                    format!("parameter `{name}` declared twice"),
                    t.line,
                    t.col,
                ));
            }
            let name = name.clone();
            self.advance();
            let value = if self.peek().tok == Tok::Eq {
                self.advance();
                Some(self.rational_literal()?)
            } else {
                None
            };
            out.push((name, value));
            if self.peek().tok == Tok::Comma {
                self.advance();
            }
        }
        Ok(out)
    }

    fn option_list(&mut self) -> Result<ProblemOptions, ParseError> {
        let mut opts = ProblemOptions::default();
        while !self.at_section_end() {
            let t = self.peek().clone();
            let Tok::Ident(key) = &t.tok else {
                return Err(ParseError::new(
                    format!("expected an option name, found {}", t.describe()),
                    t.line,
                    t.col,
                ));
            };
            let key = key.clone();
            self.advance();
            self.expect(Tok::Eq, &format!("`=` after option `{key}`"))?;
            let v = self.advance().clone();
            match (key.as_str(), &v.tok) {
                ("order", Tok::Ident(s)) if s == "degrevlex" => {
                    opts.order = Some(BaseOrder::DegRevLex)
                }
                ("order", Tok::Ident(s)) if s == "lex" => opts.order = Some(BaseOrder::Lex),
                ("order", _) => {
                    return Err(ParseError::new(
                        "option `order` takes `degrevlex` or `lex`",
                        v.line,
                        v.col,
                    ))
                }
                ("radical_check", Tok::Ident(s)) if s == "true" => {
                    opts.radical_check = Some(true)
                }
                ("radical_check", Tok::Ident(s)) if s == "false" => {
                    opts.radical_check = Some(false)
                }
                ("radical_check", _) => {
                    return Err(ParseError::new(
                        "option `radical_check` takes `true` or `false`",
                        v.line,
                        v.col,
                    ))
                }
                ("max_iter", Tok::Int(n)) => {
                    opts.max_passes = Some(n.to_string().parse().map_err(|_| {
                        ParseError::new("`max_iter` value too large", v.line, v.col)
                    })?)
                }
                ("max_iter", _) => {
                    return Err(ParseError::new(
                        "option `max_iter` takes a positive integer",
                        v.line,
                        v.col,
                    ))
                }
                (other, _) => {
                    return Err(ParseError::new(
                        format!(
                            "unknown option `{other}` (expected `order`, `radical_check`, `max_iter`)"
                        ),
                        t.line,
                        t.col,
                    ))
                }
            }
            if self.peek().tok == Tok::Comma {
                self.advance();
            }
        }
        Ok(opts)
    }

    fn rational_literal(&mut self) -> Result<Rational, ParseError> {
        let negative = if self.peek().tok == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let t = self.advance().clone();
        let Tok::Int(numer) = &t.tok else {
            return Err(ParseError::new(
                format!("expected a rational literal, found {}", t.describe()),
                t.line,
                t.col,
            ));
        };
        let mut numer = numer.clone();
        if negative {
            numer = -numer;
        }
        let denom = if self.peek().tok == Tok::Slash {
            self.advance();
            let d = self.advance().clone();
            let Tok::Int(denom) = &d.tok else {
                return Err(ParseError::new(
                    format!("expected a denominator, found {}", d.describe()),
                    d.line,
                    d.col,
                ));
            };
            if denom == &BigInt::from(0) {
                return Err(ParseError::new("zero denominator", d.line, d.col));
            }
            denom.clone()
        } else {
            BigInt::from(1)
        };
        Ok(Rational::new(numer, denom))
    }

    /// Validates and skips the Lagrangian expression without resolving
    /// identifiers (coordinates may be declared after `L`).
    fn skip_expression(&mut self) -> Result<(), ParseError> {
        let nowhere = VariableTable::for_coordinates(&["__skip"]).expect("static");
        let resolver = Resolver::SyntaxOnly { table: &nowhere };
        let mut ep = ExprParser {
            tokens: &self.tokens[self.pos..],
            pos: 0,
            resolver: &resolver,
        };
        ep.expression()?;
        self.pos += ep.pos;
        Ok(())
    }
}

enum Resolver<'a> {
    /// Problem mode: declared coordinates, their velocities, parameters.
    Problem {
        table: &'a Arc<VariableTable>,
        coords: &'a BTreeMap<String, usize>,
        params: &'a BTreeMap<String, Option<Rational>>,
    },
    /// Any registered variable resolves (reports, bracket expressions).
    AnyVariable { table: &'a Arc<VariableTable> },
    /// Structure check only: every identifier resolves to zero.
    SyntaxOnly { table: &'a Arc<VariableTable> },
}

impl<'a> Resolver<'a> {
    fn table(&self) -> &'a Arc<VariableTable> {
        match self {
            Resolver::Problem { table, .. }
            | Resolver::AnyVariable { table }
            | Resolver::SyntaxOnly { table } => table,
        }
    }

    fn resolve(&self, name: &str, line: usize, col: usize) -> Result<Polynomial, ParseError> {
        match self {
            Resolver::SyntaxOnly { table } => Ok(Polynomial::zero(table)),
            Resolver::AnyVariable { table } => match table.lookup(name) {
                Some(v) => Ok(Polynomial::var(table, v)),
                None => Err(ParseError::new(
                    format!("unknown variable `{name}`"),
                    line,
                    col,
                )),
            },
            Resolver::Problem {
                table,
                coords,
                params,
            } => {
                if let Some(&i) = coords.get(name) {
                    return Ok(Polynomial::var(table, table.coordinate(i)));
                }
                if let Some(rest) = name.strip_prefix('d') {
                    if let Some(&i) = coords.get(rest) {
                        return Ok(Polynomial::var(table, table.velocity(i)));
                    }
                }
                match params.get(name) {
                    Some(Some(value)) => Ok(Polynomial::constant(table, value.clone())),
                    Some(None) => Err(ParseError::new(
                        format!(
                            "parameter `{name}` has no value; pass --param {name}=<rational>"
                        ),
                        line,
                        col,
                    )),
                    None => Err(ParseError::new(
                        format!(
                            "undeclared identifier `{name}` (not a coordinate, velocity, or parameter)"
                        ),
                        line,
                        col,
                    )),
                }
            }
        }
    }
}

struct ExprParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    resolver: &'a Resolver<'a>,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> &Token {
        let t = &self.tokens[self.pos];
        if t.tok != Tok::Eof && self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expression(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.advance();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.advance();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.advance();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    let at = self.advance().clone();
                    let divisor = self.literal_divisor(&at)?;
                    acc = acc.scalar_mul(&divisor.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    /// `/` only divides by a literal integer (optionally signed); anything
    /// else is a non-polynomial construct.
    fn literal_divisor(&mut self, slash: &Token) -> Result<Rational, ParseError> {
        let negative = if self.peek().tok == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let t = self.advance().clone();
        match &t.tok {
            Tok::Int(n) => {
                if n == &BigInt::from(0) {
                    return Err(ParseError::new("division by zero", t.line, t.col));
                }
                let mut n = n.clone();
                if negative {
                    n = -n;
                }
                Ok(Rational::from_integer(n))
            }
            _ => Err(ParseError::new(
                "non-polynomial division: `/` requires an integer-literal divisor",
                slash.line,
                slash.col,
            )),
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.advance();
                Ok(-&self.factor()?)
            }
            Tok::Plus => {
                self.advance();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.advance();
        let t = self.advance().clone();
        let Tok::Int(e) = &t.tok else {
            return Err(ParseError::new(
                "exponent must be a non-negative integer",
                t.line,
                t.col,
            ));
        };
        let e: u32 = e.to_string().parse().map_err(|_| {
            ParseError::new("exponent too large", t.line, t.col)
        })?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let t = self.advance().clone();
        match &t.tok {
            Tok::Int(n) => Ok(Polynomial::constant(
                self.resolver.table(),
                Rational::from_integer(n.clone()),
            )),
            Tok::Ident(name) => self.resolver.resolve(name, t.line, t.col),
            Tok::LParen => {
                let inner = self.expression()?;
                let close = self.advance().clone();
                if close.tok != Tok::RParen {
                    return Err(ParseError::new(
                        format!("expected `)`, found {}", close.describe()),
                        close.line,
                        close.col,
                    ));
                }
                Ok(inner)
            }
            _ => Err(ParseError::new(
                format!("expected a number, identifier, or `(`, found {}", t.describe()),
                t.line,
                t.col,
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_i64, from_i64s};

    #[test]
    fn parses_inline_problem() {
        let (file, sys) = parse_problem("coords: q1 q2 ; L = 1/2*dq1^2 + q2", &[]).unwrap();
        assert_eq!(file.coordinates, ["q1", "q2"]);
        let t = sys.table();
        let expected = &Polynomial::var(t, t.velocity(0))
            .pow(2)
            .scalar_mul(&from_i64s(1, 2))
            + &Polynomial::var(t, t.coordinate(1));
        assert_eq!(sys.lagrangian(), &expected);
    }

    #[test]
    fn parses_multiline_with_comments_and_options() {
        let text = "\
# three coordinates, one external condition
coords: q1 q2 q3
options: order = lex, max_iter = 50
L = q1*(dq2 - q3) - dq1*q2
";
        let (file, sys) = parse_problem(text, &[]).unwrap();
        assert_eq!(file.options.order, Some(BaseOrder::Lex));
        assert_eq!(file.options.max_passes, Some(50));
        assert_eq!(file.options.radical_check, None);
        assert_eq!(sys.lagrangian().num_terms(), 3);
    }

    #[test]
    fn parameters_substitute_before_expansion() {
        let text = "coords: q1 ; params: m = 2, g ; L = 1/2*m^2*dq1^2 + g*q1";
        let (file, sys) = parse_problem(text, &[("g".to_owned(), from_i64(3))]).unwrap();
        assert_eq!(file.parameters.len(), 2);
        let t = sys.table();
        let expected = &Polynomial::var(t, t.velocity(0))
            .pow(2)
            .scalar_mul(&from_i64(2))
            + &Polynomial::var(t, t.coordinate(0)).scalar_mul(&from_i64(3));
        assert_eq!(sys.lagrangian(), &expected);
    }

    #[test]
    fn missing_parameter_value_is_reported_at_use_site() {
        let err = parse_problem("coords: q1 ; params: m ; L = m*q1", &[]).unwrap_err();
        assert!(err.message.contains("parameter `m` has no value"));
        assert_eq!((err.line, err.column), (1, 30));
    }

    #[test]
    fn override_must_name_a_declared_parameter() {
        let err = parse_problem(
            "coords: q1 ; L = q1",
            &[("mass".to_owned(), from_i64(1))],
        )
        .unwrap_err();
        assert!(err.message.contains("not declared"));
    }

    #[test]
    fn undeclared_identifier_is_rejected_with_position() {
        let err = parse_problem("coords: q1 ; L = q1 + q7", &[]).unwrap_err();
        assert!(err.message.contains("undeclared identifier `q7`"));
        assert_eq!((err.line, err.column), (1, 23));
    }

    #[test]
    fn non_polynomial_division_is_rejected() {
        let err = parse_problem("coords: q1 q2 ; L = dq1/q2", &[]).unwrap_err();
        assert!(err.message.contains("non-polynomial division"));

        // parenthesized divisors are not literals either
        let err = parse_problem("coords: q1 ; L = q1/(2)", &[]).unwrap_err();
        assert!(err.message.contains("non-polynomial division"));

        // but literal divisors are fine, including signed ones
        let (_, sys) = parse_problem("coords: q1 ; L = dq1^2/-4", &[]).unwrap();
        assert_eq!(
            sys.lagrangian(),
            &Polynomial::var(sys.table(), sys.table().velocity(0))
                .pow(2)
                .scalar_mul(&from_i64s(-1, 4))
        );
    }

    #[test]
    fn bad_exponents_are_rejected() {
        for text in ["coords: q1 ; L = q1^-1", "coords: q1 ; L = q1^(1/2)"] {
            let err = parse_problem(text, &[]).unwrap_err();
            assert!(err.message.contains("exponent must be a non-negative integer"));
        }
    }

    #[test]
    fn division_by_zero_literal_is_rejected() {
        let err = parse_problem("coords: q1 ; L = q1/0", &[]).unwrap_err();
        assert!(err.message.contains("division by zero"));
    }

    #[test]
    fn reserved_words_cannot_be_coordinates() {
        let err = ProblemFile::parse("coords: q1 L ; L = q1").unwrap_err();
        assert!(err.message.contains("reserved word") || err.message.contains("expected"));
    }

    #[test]
    fn stray_tokens_are_syntax_errors() {
        let err = ProblemFile::parse("coords: q1 ; L = q1 q1").unwrap_err();
        assert_eq!((err.line, err.column), (1, 21));
    }

    #[test]
    fn expression_parser_round_trips_display() {
        let t = VariableTable::for_coordinates(&["q1", "q2"]).unwrap();
        let f = &(&Polynomial::var(&t, t.momentum(0)).pow(2).scalar_mul(&from_i64s(-3, 2))
            + &(&Polynomial::var(&t, t.coordinate(0)) * &Polynomial::var(&t, t.coordinate(1))))
            + &Polynomial::constant(&t, from_i64s(1, 7));
        let parsed = parse_expression(&f.to_string(), &t).unwrap();
        assert_eq!(parsed, f);
    }

    #[test]
    fn declared_names_win_over_velocity_prefix() {
        // a coordinate literally named `dq` refers to itself, not to a
        // velocity of `q`
        let (_, sys) = parse_problem("coords: dq ; L = ddq^2 + dq", &[]).unwrap();
        let t = sys.table();
        assert!(sys.lagrangian().contains_var(t.coordinate(0)));
        assert!(sys.lagrangian().contains_var(t.velocity(0)));
    }
}
