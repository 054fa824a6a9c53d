//! Recursive-descent parser for polynomial expressions in `x`, `y`, `z`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | 'y' | 'z' | 'i' | '(' expr ')'
//! ```
//!
//! Division is only allowed by a non-zero constant, which is how rational
//! literals like `1/3` are written. `i` is the imaginary unit.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{PolyError, Polynomial3};

type Gaussian = Complex<BigRational>;
type GPoly = Polynomial3<Gaussian>;

pub const DEFAULT_DEGREE_CAP: u32 = 64;

pub fn parse_poly(text: &str) -> Result<GPoly, PolyError> {
    parse_poly_with_cap(text, DEFAULT_DEGREE_CAP)
}

pub fn parse_poly_with_cap(text: &str, cap: u32) -> Result<GPoly, PolyError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, cap, end: text.len() };
    let p = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(PolyError::Syntax { pos: tok.pos, msg: format!("unexpected {:?}", tok.kind) });
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Int(BigInt),
    Var(usize),
    Imag,
    Op(char),
    Open,
    Close,
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let pos = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[pos..i].parse().expect("digits");
                out.push(Token { kind: Kind::Int(v), pos });
                continue;
            }
            'x' | 'y' | 'z' => out.push(Token { kind: Kind::Var((c as u8 - b'x') as usize), pos }),
            'i' => out.push(Token { kind: Kind::Imag, pos }),
            '+' | '-' | '*' | '/' | '^' => out.push(Token { kind: Kind::Op(c), pos }),
            '(' => out.push(Token { kind: Kind::Open, pos }),
            ')' => out.push(Token { kind: Kind::Close, pos }),
            _ => {
                return Err(PolyError::Syntax { pos, msg: format!("unexpected character '{}'", c) })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    cap: u32,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> usize {
        self.peek().map(|t| t.pos).unwrap_or(self.end)
    }

    fn syntax<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Syntax { pos: self.here(), msg: msg.to_string() })
    }

    fn eat_op(&mut self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Token { kind: Kind::Op(c), .. }) if ops.contains(c) => {
                let c = *c;
                self.pos += 1;
                Some(c)
            }
            _ => None,
        }
    }

    fn check_cap(&self, p: &GPoly) -> Result<(), PolyError> {
        let degree = p.degree();
        if degree > self.cap {
            return Err(PolyError::DegreeCap { degree, cap: self.cap });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<GPoly, PolyError> {
        let mut acc = self.term()?;
        while let Some(op) = self.eat_op(&['+', '-']) {
            let rhs = self.term()?;
            acc = if op == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GPoly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(op) = self.eat_op(&['*', '/']) {
            let at = self.here();
            let rhs = self.unary()?;
            if op == '*' {
                // cheap pre-check so x^60*x^60 never materializes
                if acc.degree() + rhs.degree() > self.cap {
                    return Err(PolyError::DegreeCap { degree: acc.degree() + rhs.degree(), cap: self.cap });
                }
                acc = acc.mul(&rhs);
            } else {
                let c = as_constant(&rhs).ok_or_else(|| PolyError::Syntax {
                    pos: at,
                    msg: "division by a non-constant".to_string(),
                })?;
                if c.is_zero() {
                    return Err(PolyError::Syntax { pos: at, msg: "division by zero".to_string() });
                }
                acc = acc.scale(&(Gaussian::one() / c));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<GPoly, PolyError> {
        match self.eat_op(&['+', '-']) {
            Some('-') => Ok(self.unary()?.neg()),
            Some(_) => self.unary(),
            None => self.power(),
        }
    }

    fn power(&mut self) -> Result<GPoly, PolyError> {
        let base = self.atom()?;
        if self.eat_op(&['^']).is_none() {
            return Ok(base);
        }
        let exp = match self.peek() {
            Some(Token { kind: Kind::Int(v), .. }) => v.clone(),
            _ => return self.syntax("expected a non-negative integer exponent"),
        };
        self.pos += 1;
        let exp: u32 = match u32::try_from(&exp) {
            Ok(e) => e,
            Err(_) => return Err(PolyError::DegreeCap { degree: u32::MAX, cap: self.cap }),
        };
        let degree = base.degree().saturating_mul(exp);
        if degree > self.cap {
            return Err(PolyError::DegreeCap { degree, cap: self.cap });
        }
        let out = base.pow(exp);
        self.check_cap(&out)?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<GPoly, PolyError> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.syntax("unexpected end of input"),
        };
        self.pos += 1;
        match tok.kind {
            Kind::Int(v) => Ok(GPoly::constant(Complex::new(
                BigRational::from_integer(v),
                BigRational::zero(),
            ))),
            Kind::Var(axis) => Ok(GPoly::variable(axis)),
            Kind::Imag => Ok(GPoly::constant(Complex::new(BigRational::zero(), BigRational::one()))),
            Kind::Open => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token { kind: Kind::Close, .. }) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.syntax("expected ')'"),
                }
            }
            Kind::Close | Kind::Op(_) => {
                Err(PolyError::Syntax { pos: tok.pos, msg: format!("unexpected {:?}", tok.kind) })
            }
        }
    }
}

fn as_constant(p: &GPoly) -> Option<Gaussian> {
    match p.num_terms() {
        0 => Some(Gaussian::zero()),
        1 => {
            let (e, c) = p.terms().next()?;
            (*e == [0, 0, 0]).then(|| c.clone())
        }
        _ => None,
    }
}
