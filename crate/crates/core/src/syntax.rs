//! Concrete syntax for meadow terms and equations.
//!
//! ```text
//! expr    := sum
//! sum     := prod (("+" | "-") prod)*
//! prod    := unary (("*" | "/") unary)*
//! unary   := "-" unary | postfix
//! postfix := atom ("^" "-"? intlit)?
//! atom    := intlit | "X" digits | ident | "(" expr ")"
//!          | "D[" digits "](" expr ")" | "d/dX" digits "(" expr ")"
//! ```
//!
//! Lowercase identifiers are metavariables. Multiplication is always
//! explicit. The printer emits the minimal parenthesization for this grammar
//! and re-sugars numerals, integer powers, subtraction and division, so that
//! parsing printed output reproduces the term exactly.

use std::fmt;

use thiserror::Error;

use crate::term::{Equation, MeadowTerm};

/// Byte range `start..end` into the parsed source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    fn shift(self, offset: usize) -> Self {
        SourceSpan::new(self.start + offset, self.end + offset)
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("integer literal too large")]
    IntegerOverflow,
    #[error("variable index {index} out of range 1..={nvars}")]
    VarIndexOutOfRange { index: usize, nvars: usize },
    #[error("exponent must be an integer literal")]
    ExponentNotInteger,
    #[error("an equation needs exactly one `=`, found {0}")]
    EquationSigns(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at {span}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

impl ParseError {
    fn new(kind: ParseErrorKind, span: SourceSpan) -> Self {
        ParseError { kind, span }
    }

    /// Two-line diagnostic: the source, then carets under the span.
    pub fn render(&self, src: &str) -> String {
        let start = src[..self.span.start.min(src.len())].chars().count();
        let width = src
            .get(self.span.start..self.span.end)
            .map_or(1, |s| s.chars().count().max(1));
        format!(
            "error: {}\n  {}\n  {}{}",
            self.kind,
            src,
            " ".repeat(start),
            "^".repeat(width)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Var(usize),
    Ident(String),
    DiffOp(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(k) => write!(f, "integer `{k}`"),
            Tok::Var(i) => write!(f, "`X{i}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::DiffOp(i) => write!(f, "`D[{i}]`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Eq => write!(f, "`=`"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn digits(&mut self) -> Option<(usize, usize)> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then_some((start, self.pos))
    }

    fn number(&self, start: usize, end: usize) -> Result<u64, ParseError> {
        self.src[start..end].parse().map_err(|_| {
            ParseError::new(ParseErrorKind::IntegerOverflow, SourceSpan::new(start, end))
        })
    }

    fn index(&mut self, tok_start: usize) -> Result<usize, ParseError> {
        match self.digits() {
            Some((s, e)) => {
                let k = self.number(s, e)?;
                usize::try_from(k).map_err(|_| {
                    ParseError::new(
                        ParseErrorKind::IntegerOverflow,
                        SourceSpan::new(tok_start, e),
                    )
                })
            }
            None => Err(self.unexpected_here("a variable index")),
        }
    }

    fn unexpected_here(&self, expected: &str) -> ParseError {
        let found = self.src[self.pos..]
            .chars()
            .next()
            .map_or("end of input".to_string(), |c| format!("{c:?}"));
        let end = self.pos
            + self.src[self.pos..]
                .chars()
                .next()
                .map_or(0, char::len_utf8);
        ParseError::new(
            ParseErrorKind::Unexpected {
                expected: expected.to_string(),
                found,
            },
            SourceSpan::new(self.pos, end),
        )
    }

    fn tokens(mut self) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos >= self.bytes.len() {
                return Ok(out);
            }
            let start = self.pos;
            let rest = &self.src[start..];
            let c = rest.chars().next().unwrap();
            let single = |t: Tok| (t, 1);
            let (tok, _) = match c {
                '+' => single(Tok::Plus),
                '-' => single(Tok::Minus),
                '*' => single(Tok::Star),
                '/' => single(Tok::Slash),
                '^' => single(Tok::Caret),
                '(' => single(Tok::LParen),
                ')' => single(Tok::RParen),
                '=' => single(Tok::Eq),
                '0'..='9' => {
                    let (s, e) = self.digits().unwrap();
                    out.push((Tok::Int(self.number(s, e)?), SourceSpan::new(s, e)));
                    continue;
                }
                'X' => {
                    self.pos += 1;
                    let i = self.index(start)?;
                    out.push((Tok::Var(i), SourceSpan::new(start, self.pos)));
                    continue;
                }
                'D' if rest[1..].starts_with('[') => {
                    self.pos += 2;
                    let i = self.index(start)?;
                    if self.bytes.get(self.pos) != Some(&b']') {
                        return Err(self.unexpected_here("`]`"));
                    }
                    self.pos += 1;
                    out.push((Tok::DiffOp(i), SourceSpan::new(start, self.pos)));
                    continue;
                }
                'd' if rest.starts_with("d/dX")
                    && rest.as_bytes().get(4).is_some_and(u8::is_ascii_digit) =>
                {
                    self.pos += 4;
                    let i = self.index(start)?;
                    out.push((Tok::DiffOp(i), SourceSpan::new(start, self.pos)));
                    continue;
                }
                'a'..='z' | '_' => {
                    while self.pos < self.bytes.len()
                        && matches!(self.bytes[self.pos], b'a'..=b'z' | b'0'..=b'9' | b'_')
                    {
                        self.pos += 1;
                    }
                    out.push((
                        Tok::Ident(self.src[start..self.pos].to_string()),
                        SourceSpan::new(start, self.pos),
                    ));
                    continue;
                }
                other => {
                    return Err(ParseError::new(
                        ParseErrorKind::UnexpectedChar(other),
                        SourceSpan::new(start, start + other.len_utf8()),
                    ))
                }
            };
            self.pos += 1;
            out.push((tok, SourceSpan::new(start, self.pos)));
        }
    }
}

struct Parser {
    tokens: Vec<(Tok, SourceSpan)>,
    pos: usize,
    end: usize,
    nvars: Option<usize>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> SourceSpan {
        self.tokens
            .get(self.pos)
            .map_or(SourceSpan::new(self.end, self.end), |(_, s)| *s)
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.tokens[self.pos].clone();
        self.pos += 1;
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let found = self
            .peek()
            .map_or("end of input".to_string(), ToString::to_string);
        ParseError::new(
            ParseErrorKind::Unexpected {
                expected: expected.to_string(),
                found,
            },
            self.span(),
        )
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn check_index(&self, index: usize, span: SourceSpan) -> Result<(), ParseError> {
        let bad = index == 0 || self.nvars.is_some_and(|n| index > n);
        if bad {
            return Err(ParseError::new(
                ParseErrorKind::VarIndexOutOfRange {
                    index,
                    nvars: self.nvars.unwrap_or(0),
                },
                span,
            ));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<MeadowTerm, ParseError> {
        let mut acc = self.prod()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = MeadowTerm::add(acc, self.prod()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = MeadowTerm::sub(acc, self.prod()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn prod(&mut self) -> Result<MeadowTerm, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = MeadowTerm::mul(acc, self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    acc = MeadowTerm::div(acc, self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MeadowTerm, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(MeadowTerm::neg(self.unary()?));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<MeadowTerm, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let start = self.span();
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.pos += 1;
        }
        match self.peek() {
            Some(Tok::Int(_)) => {
                let (tok, span) = self.bump();
                let Tok::Int(k) = tok else { unreachable!() };
                let k = i64::try_from(k)
                    .map_err(|_| ParseError::new(ParseErrorKind::IntegerOverflow, span))?;
                Ok(MeadowTerm::int_pow(base, if negative { -k } else { k }))
            }
            _ => {
                let end = self.span();
                Err(ParseError::new(
                    ParseErrorKind::ExponentNotInteger,
                    SourceSpan::new(start.start, end.end.max(start.start)),
                ))
            }
        }
    }

    fn atom(&mut self) -> Result<MeadowTerm, ParseError> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let (Tok::Int(k), span) = self.bump() else {
                    unreachable!()
                };
                let k = i64::try_from(k)
                    .map_err(|_| ParseError::new(ParseErrorKind::IntegerOverflow, span))?;
                Ok(MeadowTerm::numeral(k))
            }
            Some(Tok::Var(_)) => {
                let (Tok::Var(i), span) = self.bump() else {
                    unreachable!()
                };
                self.check_index(i, span)?;
                Ok(MeadowTerm::Var(i))
            }
            Some(Tok::Ident(_)) => {
                let (Tok::Ident(name), _) = self.bump() else {
                    unreachable!()
                };
                Ok(MeadowTerm::MetaVar(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::DiffOp(_)) => {
                let (Tok::DiffOp(i), span) = self.bump() else {
                    unreachable!()
                };
                self.check_index(i, span)?;
                self.expect(Tok::LParen, "`(` after differential operator")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(MeadowTerm::diff(i, inner))
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

fn parse_fragment(
    src: &str,
    offset: usize,
    nvars: Option<usize>,
) -> Result<MeadowTerm, ParseError> {
    let tokens = Lexer::new(src).tokens().map_err(|e| ParseError {
        span: e.span.shift(offset),
        ..e
    })?;
    if tokens.is_empty() {
        return Err(ParseError::new(
            ParseErrorKind::Empty,
            SourceSpan::new(offset, offset + src.len()),
        ));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: src.len(),
        nvars,
    };
    let run = |p: &mut Parser| -> Result<MeadowTerm, ParseError> {
        let t = p.expr()?;
        if p.pos < p.tokens.len() {
            return Err(p.unexpected("an operator or end of input"));
        }
        Ok(t)
    };
    run(&mut parser).map_err(|e| ParseError {
        span: e.span.shift(offset),
        ..e
    })
}

/// Parses a term. With `nvars = Some(n)`, any `Xk` or `D[k]` with `k > n` is
/// rejected.
pub fn parse_term(src: &str, nvars: Option<usize>) -> Result<MeadowTerm, ParseError> {
    parse_fragment(src, 0, nvars)
}

/// Parses `lhs = rhs`. The equation is labelled with `name`.
pub fn parse_equation(name: &str, src: &str, nvars: Option<usize>) -> Result<Equation, ParseError> {
    let signs: Vec<usize> = src.match_indices('=').map(|(i, _)| i).collect();
    if signs.len() != 1 {
        let span = match signs.get(1) {
            Some(&i) => SourceSpan::new(i, i + 1),
            None => SourceSpan::new(0, src.len()),
        };
        return Err(ParseError::new(
            ParseErrorKind::EquationSigns(signs.len()),
            span,
        ));
    }
    let at = signs[0];
    let lhs = parse_fragment(&src[..at], 0, nvars)?;
    let rhs = parse_fragment(&src[at + 1..], at + 1, nvars)?;
    Ok(Equation::new(name, lhs, rhs))
}

// Printer precedence levels, loosest first.
const SUM: u8 = 0;
const PROD: u8 = 1;
const UNARY: u8 = 2;
const POSTFIX: u8 = 3;
const ATOM: u8 = 4;

/// If `t` was built by `numeral(k)`, returns `k`.
fn as_numeral(t: &MeadowTerm) -> Option<i64> {
    fn value(t: &MeadowTerm) -> Option<i64> {
        match t {
            MeadowTerm::Zero => Some(0),
            MeadowTerm::One => Some(1),
            MeadowTerm::Add(a, b) => value(a)?.checked_add(value(b)?),
            MeadowTerm::Mul(a, b) => value(a)?.checked_mul(value(b)?),
            MeadowTerm::Neg(a) => value(a)?.checked_neg(),
            _ => None,
        }
    }
    let k = value(t)?;
    (MeadowTerm::numeral(k) == *t).then_some(k)
}

/// If `t` is `int_pow(base, k)` with `k >= 2`, returns `(base, k)`.
fn as_power(t: &MeadowTerm) -> Option<(&MeadowTerm, i64)> {
    let MeadowTerm::Mul(left, base) = t else {
        return None;
    };
    let mut k = 2;
    let mut cur: &MeadowTerm = left;
    loop {
        if cur == &**base {
            return Some((base, k));
        }
        match cur {
            MeadowTerm::Mul(l, r) if r == base => {
                cur = l;
                k += 1;
            }
            _ => return None,
        }
    }
}

struct Printed {
    text: String,
    level: u8,
}

fn render(t: &MeadowTerm) -> Printed {
    use MeadowTerm::*;
    let at = |text: String, level: u8| Printed { text, level };
    if let Some(k) = as_numeral(t) {
        return at(k.to_string(), if k < 0 { UNARY } else { ATOM });
    }
    match t {
        Zero => at("0".into(), ATOM),
        One => at("1".into(), ATOM),
        Var(i) => at(format!("X{i}"), ATOM),
        MetaVar(name) => at(name.clone(), ATOM),
        Diff(i, a) => at(format!("D[{i}]({})", wrap(a, SUM)), ATOM),
        Add(a, b) => match &**b {
            Neg(inner) => at(format!("{} - {}", wrap(a, SUM), wrap(inner, PROD)), SUM),
            _ => at(format!("{} + {}", wrap(a, SUM), wrap(b, PROD)), SUM),
        },
        Mul(a, b) => {
            if let Some((base, k)) = as_power(t) {
                return at(format!("{}^{k}", wrap(base, ATOM)), POSTFIX);
            }
            match &**b {
                Inv(inner) => at(format!("{}/{}", wrap(a, PROD), wrap(inner, UNARY)), PROD),
                _ => at(format!("{} * {}", wrap(a, PROD), wrap(b, UNARY)), PROD),
            }
        }
        Neg(a) => at(format!("-{}", wrap(a, UNARY)), UNARY),
        Inv(a) => match as_power(a) {
            Some((base, k)) => at(format!("{}^-{k}", wrap(base, ATOM)), POSTFIX),
            None => at(format!("{}^-1", wrap(a, ATOM)), POSTFIX),
        },
    }
}

fn wrap(t: &MeadowTerm, min_level: u8) -> String {
    let p = render(t);
    if p.level < min_level {
        format!("({})", p.text)
    } else {
        p.text
    }
}

/// Minimal-parenthesis rendering; `parse_term(&print_term(t))` returns `t`.
pub fn print_term(t: &MeadowTerm) -> String {
    render(t).text
}

#[cfg(test)]
mod tests {
    use super::*;
    use MeadowTerm::*;

    fn p(src: &str) -> MeadowTerm {
        parse_term(src, Some(3)).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            p("X1 * X1^-1"),
            MeadowTerm::mul(Var(1), MeadowTerm::inv(Var(1)))
        );
        assert_eq!(
            p("D[1](1/X1)"),
            MeadowTerm::diff(1, MeadowTerm::div(One, Var(1)))
        );
        assert_eq!(p("d/dX1(1/X1)"), p("D[1](1/X1)"));
        let smf = p("(1 + X2 - 2*X1*X3) / (8 - X1*X3^2)");
        let num = MeadowTerm::sub(
            MeadowTerm::add(One, Var(2)),
            MeadowTerm::mul(MeadowTerm::mul(MeadowTerm::numeral(2), Var(1)), Var(3)),
        );
        let den = MeadowTerm::sub(
            MeadowTerm::numeral(8),
            MeadowTerm::mul(Var(1), MeadowTerm::int_pow(Var(3), 2)),
        );
        assert_eq!(smf, MeadowTerm::div(num, den));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            p("a/b/c"),
            MeadowTerm::div(MeadowTerm::div(p("a"), p("b")), p("c"))
        );
        assert_eq!(
            p("a - b - c"),
            MeadowTerm::sub(MeadowTerm::sub(p("a"), p("b")), p("c"))
        );
        assert_eq!(p("-X1^2"), MeadowTerm::neg(MeadowTerm::int_pow(Var(1), 2)));
        assert_eq!(
            p("a + b * c"),
            MeadowTerm::add(p("a"), MeadowTerm::mul(p("b"), p("c")))
        );
        assert_eq!(p("x^0"), One);
        assert_eq!(p("--x"), MeadowTerm::neg(MeadowTerm::neg(p("x"))));
    }

    #[test]
    fn equation_examples() {
        let ril = parse_equation("RIL", "x * (x * x^-1) = x", None).unwrap();
        let x = MeadowTerm::meta("x");
        assert_eq!(
            ril.lhs,
            MeadowTerm::mul(x.clone(), MeadowTerm::pseudo_unit(x.clone()))
        );
        assert_eq!(ril.rhs, x);

        let d1 = parse_equation("D1", "D[1](x + y) = D[1](x) + D[1](y)", None).unwrap();
        assert_eq!(d1.metavars().len(), 2);
        let trivial = parse_equation("triv", "0 = 0", None).unwrap();
        assert_eq!((trivial.lhs, trivial.rhs), (Zero, Zero));
    }

    #[test]
    fn equation_sign_errors() {
        let e = parse_equation("e", "x + y", None).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EquationSigns(0));
        let e = parse_equation("e", "x = y = z", None).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EquationSigns(2));
        assert_eq!(e.span, SourceSpan::new(6, 7));
        let e = parse_equation("e", "x = X9", Some(3)).unwrap_err();
        assert_eq!(e.span, SourceSpan::new(4, 6));
    }

    #[test]
    fn error_spans() {
        let e = parse_term("X1 + X4", Some(3)).unwrap_err();
        assert_eq!(
            e.kind,
            ParseErrorKind::VarIndexOutOfRange { index: 4, nvars: 3 }
        );
        assert_eq!(e.span, SourceSpan::new(5, 7));

        let e = parse_term("X1 ^ X2", Some(3)).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ExponentNotInteger);

        let e = parse_term("2X1", Some(3)).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Unexpected { .. }));
        assert_eq!(e.span, SourceSpan::new(1, 3));

        let e = parse_term("   ", Some(3)).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Empty);

        let e = parse_term("(X1 + 1", Some(3)).unwrap_err();
        assert_eq!(e.span, SourceSpan::new(7, 7));

        let e = parse_term("X1 & X2", Some(3)).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedChar('&'));

        assert!(parse_term("D[0](X1)", Some(3)).is_err());
        assert!(parse_term("X0", None).is_err());
        assert!(parse_term("99999999999999999999", None).is_err());
        assert!(parse_term("Y1", None).is_err());
        assert!(parse_term("-3", None).is_ok());
    }

    #[test]
    fn render_diagnostic() {
        let src = "X1 + X4";
        let e = parse_term(src, Some(3)).unwrap_err();
        let text = e.render(src);
        assert!(text.ends_with("     ^^"), "{text}");
    }

    #[test]
    fn print_examples() {
        assert_eq!(print_term(&MeadowTerm::inv(Var(1))), "X1^-1");
        assert_eq!(print_term(&Zero), "0");
        let prop_rhs = MeadowTerm::mul(
            MeadowTerm::neg(MeadowTerm::div(One, MeadowTerm::int_pow(Var(1), 2))),
            MeadowTerm::diff(1, Var(1)),
        );
        assert_eq!(print_term(&prop_rhs), "-(1/X1^2) * D[1](X1)");
        assert_eq!(print_term(&MeadowTerm::numeral(-8)), "-8");
        assert_eq!(
            print_term(&p("(1 + X2 - 2*X1*X3) / (8 - X1*X3^2)")),
            "(1 + X2 - 2 * X1 * X3)/(8 - X1 * X3^2)"
        );
    }

    #[test]
    fn round_trip_tricky_shapes() {
        let cases = [
            "a - -b",
            "(a + b) + (c + d)",
            "a * (b * c)",
            "(-x)^3",
            "(x^-1)^-2",
            "x/-y",
            "D[2](D[1](x) * X3)",
            "(X1 * X2)^2 * X1",
            "2^-1 * X1",
            "(-8)^2",
            "x * x^2",
            "-(-(1))",
            "0 * 0",
            "1 + 1 + 1",
            "1 + (1 + 1)",
        ];
        for src in cases {
            let t = p(src);
            let printed = print_term(&t);
            assert_eq!(p(&printed), t, "{src} printed as {printed}");
        }
    }
}
