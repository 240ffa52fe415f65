//! Text syntax for operator expressions and spinor polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom | literal | literal '*' factor | '-' factor
//!         | '(' expr ')' | '[' expr ',' expr ']' | '{' expr ',' expr '}'
//! ```
//!
//! Parsing is independent of the dihedral order; indices are checked when the
//! tree is lowered to an [`OperatorExpr`].

use std::fmt;

use thiserror::Error;

use crate::clifford::{Blade, CliffordElt};
use crate::dihedral::DihedralConfig;
use crate::error::Error as EngineError;
use crate::kscalar::KScalar;
use crate::operator::OperatorExpr;
use crate::poly::{Monomial, SpinorPoly};
use crate::rational::Rational;
use crate::symmetry::SymmetryOperators;

pub const ALPHABET: &str = "D1 D2 D3 x1 x2 x3 e1 e2 e3 s0..s<m> st0..st<m> O1 O2 O3 O12 O31 O23 O123 \
O0 O+ O- T0 T+ T- L+ L- i kappa0 kappa1 kappa2 <rational> + - * ( ) [ ] { } ,";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {offset}")]
    Lexical { offset: usize, found: char },
    #[error("unbalanced bracket at byte {offset}")]
    UnbalancedBracket { offset: usize },
    #[error("unknown token `{token}` at byte {offset}; valid tokens: {ALPHABET}")]
    UnknownToken { offset: usize, token: String },
    #[error("expected {expected} at byte {offset}")]
    Expected { offset: usize, expected: &'static str },
    #[error("malformed exponent at byte {offset}")]
    MalformedExponent { offset: usize },
    #[error("unknown blade `{token}` at byte {offset}")]
    UnknownBlade { offset: usize, token: String },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Dunkl(u8),
    Coord(u8),
    Gen(u8),
    Reflection(u32),
    SigmaTilde(u32),
    /// `O1, O2, O3`.
    One(u8),
    O12,
    O31,
    O23,
    O123,
    O0,
    OPlus,
    OMinus,
    T0,
    TPlus,
    TMinus,
    LPlus,
    LMinus,
    I,
    Kappa(u8),
}

impl Atom {
    fn from_word(w: &str) -> Option<Atom> {
        let fixed = match w {
            "O12" => Some(Atom::O12),
            "O31" => Some(Atom::O31),
            "O23" => Some(Atom::O23),
            "O123" => Some(Atom::O123),
            "O0" => Some(Atom::O0),
            "O+" => Some(Atom::OPlus),
            "O-" => Some(Atom::OMinus),
            "T0" => Some(Atom::T0),
            "T+" => Some(Atom::TPlus),
            "T-" => Some(Atom::TMinus),
            "L+" => Some(Atom::LPlus),
            "L-" => Some(Atom::LMinus),
            "i" => Some(Atom::I),
            _ => None,
        };
        if fixed.is_some() {
            return fixed;
        }
        let axis = |rest: &str| match rest {
            "1" => Some(1u8),
            "2" => Some(2),
            "3" => Some(3),
            _ => None,
        };
        let index = |rest: &str| {
            (!rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) && (rest == "0" || !rest.starts_with('0')))
                .then(|| rest.parse::<u32>().ok())
                .flatten()
        };
        if let Some(r) = w.strip_prefix("kappa") {
            return match r {
                "0" => Some(Atom::Kappa(0)),
                "1" => Some(Atom::Kappa(1)),
                "2" => Some(Atom::Kappa(2)),
                _ => None,
            };
        }
        if let Some(r) = w.strip_prefix("st") {
            return index(r).map(Atom::SigmaTilde);
        }
        let (head, rest) = w.split_at(1);
        match head {
            "D" => axis(rest).map(Atom::Dunkl),
            "x" => axis(rest).map(Atom::Coord),
            "e" => axis(rest).map(Atom::Gen),
            "O" => axis(rest).map(Atom::One),
            "s" => index(rest).map(Atom::Reflection),
            _ => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Dunkl(j) => write!(f, "D{j}"),
            Atom::Coord(j) => write!(f, "x{j}"),
            Atom::Gen(j) => write!(f, "e{j}"),
            Atom::Reflection(k) => write!(f, "s{k}"),
            Atom::SigmaTilde(k) => write!(f, "st{k}"),
            Atom::One(j) => write!(f, "O{j}"),
            Atom::O12 => f.write_str("O12"),
            Atom::O31 => f.write_str("O31"),
            Atom::O23 => f.write_str("O23"),
            Atom::O123 => f.write_str("O123"),
            Atom::O0 => f.write_str("O0"),
            Atom::OPlus => f.write_str("O+"),
            Atom::OMinus => f.write_str("O-"),
            Atom::T0 => f.write_str("T0"),
            Atom::TPlus => f.write_str("T+"),
            Atom::TMinus => f.write_str("T-"),
            Atom::LPlus => f.write_str("L+"),
            Atom::LMinus => f.write_str("L-"),
            Atom::I => f.write_str("i"),
            Atom::Kappa(p) => write!(f, "kappa{p}"),
        }
    }
}

/// Abstract syntax. Literals are non-negative; negation is [`Ast::Neg`].
#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    Atom(Atom),
    Literal(Rational),
    Scale(Rational, Box<Ast>),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Commutator(Box<Ast>, Box<Ast>),
    Anticommutator(Box<Ast>, Box<Ast>),
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Level {
    Expr,
    Term,
    Factor,
}

impl Ast {
    fn level(&self) -> Level {
        match self {
            Ast::Add(..) | Ast::Sub(..) => Level::Expr,
            Ast::Mul(..) => Level::Term,
            _ => Level::Factor,
        }
    }

    fn ends_in_literal(&self) -> bool {
        match self {
            Ast::Literal(_) => true,
            Ast::Mul(_, r) | Ast::Scale(_, r) | Ast::Neg(r) => r.ends_in_literal(),
            _ => false,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, need: Level) -> fmt::Result {
        if self.level() < need {
            f.write_str("(")?;
            self.write_at(f, Level::Expr)?;
            return f.write_str(")");
        }
        match self {
            Ast::Atom(a) => write!(f, "{a}"),
            Ast::Literal(q) => write!(f, "{q}"),
            Ast::Scale(q, a) => {
                write!(f, "{q}*")?;
                a.write_at(f, Level::Factor)
            }
            Ast::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, Level::Factor)
            }
            Ast::Add(a, b) | Ast::Sub(a, b) => {
                a.write_at(f, Level::Expr)?;
                f.write_str(if matches!(self, Ast::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, Level::Term)
            }
            Ast::Mul(a, b) => {
                // a trailing literal would otherwise absorb the `*` as a scale
                if a.ends_in_literal() {
                    f.write_str("(")?;
                    a.write_at(f, Level::Expr)?;
                    f.write_str(")")?;
                } else {
                    a.write_at(f, Level::Term)?;
                }
                f.write_str("*")?;
                b.write_at(f, Level::Factor)
            }
            Ast::Commutator(a, b) | Ast::Anticommutator(a, b) => {
                let (open, close) = if matches!(self, Ast::Commutator(..)) { ("[", "]") } else { ("{", "}") };
                f.write_str(open)?;
                a.write_at(f, Level::Expr)?;
                f.write_str(", ")?;
                b.write_at(f, Level::Expr)?;
                f.write_str(close)
            }
        }
    }

    /// Build the operator this tree denotes.
    pub fn lower(&self, ops: &SymmetryOperators) -> ParseResult<OperatorExpr> {
        let cfg = &ops.cfg;
        Ok(match self {
            Ast::Atom(a) => lower_atom(*a, ops)?,
            Ast::Literal(q) => OperatorExpr::scalar(cfg.scalar(q.clone())),
            Ast::Scale(q, a) => OperatorExpr::scale(cfg.scalar(q.clone()), &a.lower(ops)?),
            Ast::Neg(a) => -&a.lower(ops)?,
            Ast::Add(a, b) => &a.lower(ops)? + &b.lower(ops)?,
            Ast::Sub(a, b) => &a.lower(ops)? - &b.lower(ops)?,
            Ast::Mul(a, b) => &a.lower(ops)? * &b.lower(ops)?,
            Ast::Commutator(a, b) => OperatorExpr::commutator(&a.lower(ops)?, &b.lower(ops)?),
            Ast::Anticommutator(a, b) => OperatorExpr::anticommutator(&a.lower(ops)?, &b.lower(ops)?),
        })
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, Level::Expr)
    }
}

fn lower_atom(a: Atom, ops: &SymmetryOperators) -> ParseResult<OperatorExpr> {
    let cfg = &ops.cfg;
    let l = &ops.ladder;
    let [o12, o31, o23] = &ops.pairs;
    Ok(match a {
        Atom::Dunkl(j) => OperatorExpr::dunkl(j as usize),
        Atom::Coord(j) => OperatorExpr::coord(j as usize),
        Atom::Gen(j) => OperatorExpr::clifford_left(CliffordElt::blade(Blade::generator(j as usize), cfg.int(1))),
        Atom::Reflection(k) => OperatorExpr::group(cfg.reflection(k as usize)?.clone()),
        Atom::SigmaTilde(k) => ops
            .sigma_tilde
            .get(k as usize)
            .cloned()
            .ok_or(EngineError::UnknownRoot(k as usize))?,
        Atom::One(j) => ops.o[j as usize - 1].clone(),
        Atom::O12 => o12.clone(),
        Atom::O31 => o31.clone(),
        Atom::O23 => o23.clone(),
        Atom::O123 => ops.o123.clone(),
        Atom::O0 => l.o0.clone(),
        Atom::OPlus => l.o_plus.clone(),
        Atom::OMinus => l.o_minus.clone(),
        Atom::T0 => l.t0.clone(),
        Atom::TPlus => l.t_plus.clone(),
        Atom::TMinus => l.t_minus.clone(),
        Atom::LPlus => l.l_plus.clone(),
        Atom::LMinus => l.l_minus.clone(),
        Atom::I => OperatorExpr::scalar(cfg.imag_unit()),
        Atom::Kappa(p) => OperatorExpr::scalar(kappa_scalar(cfg, p)?),
    })
}

fn kappa_scalar(cfg: &DihedralConfig, p: u8) -> ParseResult<KScalar> {
    if p >= cfg.arity() {
        return Err(EngineError::UnboundParameter(p as usize).into());
    }
    Ok(cfg.kappa_param_scalar(p as usize))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Num(Rational),
    Plus,
    Minus,
    Star,
    Caret,
    Comma,
    Open(char),
    Close(char),
}

fn lex(text: &str) -> ParseResult<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' | b'-' | b'*' | b'^' | b',' | b'(' | b')' | b'[' | b']' | b'{' | b'}' => {
                out.push((
                    start,
                    match c {
                        b'+' => Tok::Plus,
                        b'-' => Tok::Minus,
                        b'*' => Tok::Star,
                        b'^' => Tok::Caret,
                        b',' => Tok::Comma,
                        b'(' | b'[' | b'{' => Tok::Open(c as char),
                        _ => Tok::Close(c as char),
                    },
                ));
                i += 1;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let q = text[start..i]
                    .parse::<Rational>()
                    .map_err(|_| ParseError::UnknownToken { offset: start, token: text[start..i].to_string() })?;
                out.push((start, Tok::Num(q)));
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let w = &text[start..i];
                if matches!(w, "O" | "T" | "L") && i < bytes.len() && matches!(bytes[i], b'+' | b'-') {
                    i += 1;
                }
                out.push((start, Tok::Word(text[start..i].to_string())));
            }
            _ => {
                let found = text[start..].chars().next().unwrap_or('\u{fffd}');
                return Err(ParseError::Lexical { offset: start, found });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> ParseResult<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&self) -> ParseResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(Tok::Close(_)) => Err(ParseError::UnbalancedBracket { offset: self.offset() }),
            Some(_) => Err(ParseError::Expected {
                offset: self.offset(),
                expected: "operator `+`, `-` or `*`",
            }),
        }
    }

    fn expr(&mut self) -> ParseResult<Ast> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = Ast::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                acc = Ast::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> ParseResult<Ast> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            acc = Ast::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn close(&mut self, want: char) -> ParseResult<()> {
        if self.eat(&Tok::Close(want)) {
            Ok(())
        } else {
            Err(ParseError::UnbalancedBracket { offset: self.offset() })
        }
    }

    fn factor(&mut self) -> ParseResult<Ast> {
        let offset = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(ParseError::Expected { offset, expected: "an operand" });
        };
        self.pos += 1;
        match tok {
            Tok::Word(w) => Atom::from_word(&w)
                .map(Ast::Atom)
                .ok_or(ParseError::UnknownToken { offset, token: w }),
            Tok::Num(q) => {
                if self.eat(&Tok::Star) {
                    Ok(Ast::Scale(q, Box::new(self.factor()?)))
                } else {
                    Ok(Ast::Literal(q))
                }
            }
            Tok::Minus => Ok(Ast::Neg(Box::new(self.factor()?))),
            Tok::Open('(') => {
                let e = self.expr()?;
                self.close(')')?;
                Ok(e)
            }
            Tok::Open(open) => {
                let a = self.expr()?;
                if !self.eat(&Tok::Comma) {
                    return Err(match self.peek() {
                        None | Some(Tok::Close(_)) => ParseError::UnbalancedBracket { offset: self.offset() },
                        Some(_) => ParseError::Expected {
                            offset: self.offset(),
                            expected: "`,`",
                        },
                    });
                }
                let b = self.expr()?;
                let close = if open == '[' { ']' } else { '}' };
                self.close(close)?;
                let (a, b) = (Box::new(a), Box::new(b));
                Ok(if open == '[' { Ast::Commutator(a, b) } else { Ast::Anticommutator(a, b) })
            }
            Tok::Close(_) => Err(ParseError::UnbalancedBracket { offset }),
            Tok::Plus | Tok::Star | Tok::Caret | Tok::Comma => Err(ParseError::Expected { offset, expected: "an operand" }),
        }
    }
}

/// Parse operator syntax without binding it to a configuration.
pub fn parse_ast(text: &str) -> ParseResult<Ast> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parse and lower against the symmetry operators of `ops.cfg`.
pub fn parse_operator(text: &str, ops: &SymmetryOperators) -> ParseResult<OperatorExpr> {
    parse_ast(text)?.lower(ops)
}

fn blade_from_word(w: &str) -> Option<Blade> {
    match w {
        "e1" => Some(Blade::E1),
        "e2" => Some(Blade::E2),
        "e3" => Some(Blade::E3),
        "e12" => Some(Blade::E12),
        "e13" => Some(Blade::E13),
        "e23" => Some(Blade::E23),
        "e123" => Some(Blade::E123),
        _ => None,
    }
}

/// Parse a spinor polynomial such as `2*x1^2*x3*e12 + x2*e3 - 1`.
///
/// Factors are rationals, `x1..x3` with optional `^n`, blades `e1 .. e123`,
/// `kappa0..kappa2` and `i`; blade factors multiply in the Clifford algebra of `cfg`.
pub fn parse_spinor_poly(text: &str, cfg: &DihedralConfig) -> ParseResult<SpinorPoly> {
    let mut p = Parser::new(text)?;
    let mut out = SpinorPoly::zero();
    let mut first = true;
    loop {
        let negate = if p.eat(&Tok::Minus) {
            true
        } else if first || p.eat(&Tok::Plus) {
            false
        } else {
            break;
        };
        first = false;
        let mut mono = Monomial::ONE;
        let mut coeff = CliffordElt::scalar(cfg.int(if negate { -1 } else { 1 }));
        loop {
            let offset = p.offset();
            match p.peek().cloned() {
                Some(Tok::Num(q)) => {
                    p.pos += 1;
                    coeff = coeff.scale(&cfg.scalar(q));
                }
                Some(Tok::Word(w)) => {
                    p.pos += 1;
                    if let Some(Atom::Coord(j)) = Atom::from_word(&w) {
                        let mut e = 1u16;
                        if p.eat(&Tok::Caret) {
                            let at = p.offset();
                            e = match p.peek() {
                                Some(Tok::Num(q)) if q.is_integer() => q
                                    .to_string()
                                    .parse::<u16>()
                                    .map_err(|_| ParseError::MalformedExponent { offset: at })?,
                                _ => return Err(ParseError::MalformedExponent { offset: at }),
                            };
                            p.pos += 1;
                        }
                        let mut a = [0u16; 3];
                        a[j as usize - 1] = e;
                        let f = Monomial(a);
                        if u32::from(mono.0[j as usize - 1]) + u32::from(e) > u32::from(u16::MAX) {
                            return Err(ParseError::MalformedExponent { offset });
                        }
                        mono = mono.mul(&f);
                    } else if let Some(b) = blade_from_word(&w) {
                        coeff = cfg.clifford().mul_blade_right(&coeff, b);
                    } else if let Some(Atom::Kappa(k)) = Atom::from_word(&w) {
                        coeff = coeff.scale(&kappa_scalar(cfg, k)?);
                    } else if w == "i" {
                        coeff = coeff.scale(&cfg.imag_unit());
                    } else if w.starts_with('e') {
                        return Err(ParseError::UnknownBlade { offset, token: w });
                    } else {
                        return Err(ParseError::UnknownToken { offset, token: w });
                    }
                }
                Some(Tok::Caret) => return Err(ParseError::MalformedExponent { offset }),
                _ => return Err(ParseError::Expected { offset, expected: "a factor" }),
            }
            if !p.eat(&Tok::Star) {
                break;
            }
        }
        out.add_term(mono, coeff);
    }
    if p.peek() == Some(&Tok::Caret) {
        return Err(ParseError::MalformedExponent { offset: p.offset() });
    }
    match p.peek() {
        None => Ok(out),
        Some(_) => Err(ParseError::Expected {
            offset: p.offset(),
            expected: "`+`, `-` or `*`",
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Signature;
    use crate::operator::Evaluator;
    use crate::report::format_spinor;

    fn cfg(m: u32, s: Signature) -> DihedralConfig {
        DihedralConfig::new(m, s).unwrap()
    }

    #[test]
    fn grammar_shapes() {
        let a = |w| Box::new(Ast::Atom(w));
        assert_eq!(parse_ast("[O12,O31]").unwrap(), Ast::Commutator(a(Atom::O12), a(Atom::O31)));
        assert_eq!(
            parse_ast("x1*D2 - x2*D1").unwrap(),
            Ast::Sub(
                Box::new(Ast::Mul(a(Atom::Coord(1)), a(Atom::Dunkl(2)))),
                Box::new(Ast::Mul(a(Atom::Coord(2)), a(Atom::Dunkl(1))))
            )
        );
        assert_eq!(
            parse_ast("O-*O+").unwrap(),
            Ast::Mul(a(Atom::OMinus), a(Atom::OPlus))
        );
        assert!(matches!(parse_ast(" O+ - O- ").unwrap(), Ast::Sub(..)));
        assert_eq!(
            parse_ast("1/2*st3").unwrap(),
            Ast::Scale(Rational::new(1, 2), a(Atom::SigmaTilde(3)))
        );
    }

    #[test]
    fn errors() {
        assert_eq!(parse_ast("{O0, O+"), Err(ParseError::UnbalancedBracket { offset: 7 }));
        assert_eq!(parse_ast("(D1]"), Err(ParseError::UnbalancedBracket { offset: 3 }));
        assert_eq!(parse_ast("D1)"), Err(ParseError::UnbalancedBracket { offset: 2 }));
        assert_eq!(parse_ast("D1 # D2"), Err(ParseError::Lexical { offset: 3, found: '#' }));
        let e = parse_ast("x1*Q7").unwrap_err();
        assert_eq!(e, ParseError::UnknownToken { offset: 3, token: "Q7".into() });
        assert!(e.to_string().contains("O123"));
        assert!(matches!(parse_ast("D4"), Err(ParseError::UnknownToken { .. })));
        assert!(matches!(parse_ast("s01"), Err(ParseError::UnknownToken { .. })));
        assert!(matches!(parse_ast("D1 +"), Err(ParseError::Expected { offset: 4, .. })));
        assert!(matches!(parse_ast("D1 D2"), Err(ParseError::Expected { .. })));
    }

    #[test]
    fn printing_round_trips() {
        for t in [
            "x1*D2 - x2*D1",
            "[O12, O31] + {O123, st1}",
            "-(D1 + D2)*x3",
            "3/2*(O0 - 1)*L+",
            "O+*(O- - T0) - -kappa0*i",
            "(2)*D1",
            "(x1*3)*D2 + (-1/2)*e1",
        ] {
            let ast = parse_ast(t).unwrap();
            assert_eq!(parse_ast(&ast.to_string()).unwrap(), ast, "{t}");
        }
        assert_eq!(parse_ast("(x1*D2)-(x2 *D1)").unwrap().to_string(), "x1*D2 - x2*D1");
        assert_eq!(parse_ast("D1 - (D2 - D3)").unwrap().to_string(), "D1 - (D2 - D3)");
    }

    #[test]
    fn lowering_matches_constructors() {
        let c = cfg(3, Signature::Positive);
        let ops = SymmetryOperators::new(&c).unwrap();
        let ev = Evaluator::new(&c);
        let parsed = parse_operator("x1*D2 - x2*D1", &ops).unwrap();
        let built = crate::symmetry::make_l(1, 2).unwrap();
        for m in Monomial::up_to_degree(3) {
            assert_eq!(ev.eval_monomial(&parsed, m).unwrap(), ev.eval_monomial(&built, m).unwrap());
        }
        assert!(matches!(parse_operator("st4", &ops), Err(ParseError::Engine(EngineError::UnknownRoot(4)))));
        assert!(parse_operator("st3 + s3", &ops).is_ok());
        assert!(matches!(parse_operator("kappa2", &ops), Err(ParseError::Engine(_))));
    }

    #[test]
    fn spinor_polys() {
        let c = cfg(3, Signature::Positive);
        let one = parse_spinor_poly("1", &c).unwrap();
        assert_eq!(format_spinor(&one), "1");
        assert_eq!(format_spinor(&parse_spinor_poly("x3*e3", &c).unwrap()), "x3*e3");
        assert_eq!(
            format_spinor(&parse_spinor_poly("x1^2*e123 + x1^2*e123", &c).unwrap()),
            "2*x1^2*e123"
        );
        assert_eq!(
            parse_spinor_poly("e1*e2", &c).unwrap(),
            parse_spinor_poly("e12", &c).unwrap()
        );
        assert_eq!(
            parse_spinor_poly("e2*e1 + e12", &c).unwrap(),
            SpinorPoly::zero()
        );
        let p = parse_spinor_poly("2*x1^2*x3*e12 + x2*e3 - 1", &c).unwrap();
        assert_eq!(p.len(), 3);
        assert!(matches!(parse_spinor_poly("x1^", &c), Err(ParseError::MalformedExponent { offset: 3 })));
        assert!(matches!(parse_spinor_poly("x1^1/2", &c), Err(ParseError::MalformedExponent { .. })));
        assert!(matches!(parse_spinor_poly("x1^x2", &c), Err(ParseError::MalformedExponent { .. })));
        assert!(matches!(parse_spinor_poly("e21", &c), Err(ParseError::UnknownBlade { offset: 0, .. })));
        assert!(matches!(parse_spinor_poly("x1*e4", &c), Err(ParseError::UnknownBlade { offset: 3, .. })));
        assert!(matches!(parse_spinor_poly("x1 x2", &c), Err(ParseError::Expected { .. })));
    }
}
