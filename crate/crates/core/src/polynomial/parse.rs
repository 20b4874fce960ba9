//! Recursive-descent parser for polynomial text.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := ('+' | '-') factor | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER ('/' INTEGER)? | IDENT | '(' expr ')'
//! ```
//!
//! Division only appears inside rational literals; juxtaposition is not
//! multiplication.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Form;
use crate::error::{Result, SdsError};

/// Largest exponent literal accepted.
const MAX_EXPONENT: u32 = 1024;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(text[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(SdsError::Syntax {
                    position: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// Not-necessarily-homogeneous polynomial used while parsing.
#[derive(Debug, Clone)]
struct Poly {
    nvars: usize,
    terms: HashMap<Vec<u32>, BigRational>,
}

impl Poly {
    fn constant(nvars: usize, c: BigRational) -> Self {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Poly { nvars, terms }
    }

    fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut terms = HashMap::new();
        terms.insert(e, BigRational::one());
        Poly { nvars, terms }
    }

    fn add_scaled(mut self, other: &Poly, sign: &BigRational) -> Self {
        for (e, c) in &other.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c * sign;
        }
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    fn mul(&self, other: &Poly) -> Self {
        let mut terms: HashMap<Vec<u32>, BigRational> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    fn pow(&self, exp: u32) -> Self {
        let mut result = Poly::constant(self.nvars, BigRational::one());
        for _ in 0..exp {
            result = result.mul(self);
        }
        result
    }

    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    vars: HashMap<&'a str, usize>,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(SdsError::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            let sign = match self.peek() {
                Some(Token::Plus) => BigRational::one(),
                Some(Token::Minus) => -BigRational::one(),
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add_scaled(&rhs, &sign);
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let exp = match self.peek() {
                Some(Token::Int(v)) => v.clone(),
                _ => return self.error("expected a non-negative integer exponent"),
            };
            let exp = match u32::try_from(exp) {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => return self.error(format!("exponent exceeds {MAX_EXPONENT}")),
            };
            self.pos += 1;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let Some((position, tok)) = self.tokens.get(self.pos).cloned() else {
            return self.error("unexpected end of input");
        };
        match tok {
            Token::Int(numer) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(numer);
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    let denom = match self.peek() {
                        Some(Token::Int(d)) => d.clone(),
                        _ => return self.error("expected an integer denominator"),
                    };
                    if denom.is_zero() {
                        return self.error("zero denominator");
                    }
                    self.pos += 1;
                    value /= BigRational::from_integer(denom);
                }
                Ok(Poly::constant(self.nvars, value))
            }
            Token::Ident(name) => match self.vars.get(name.as_str()) {
                Some(&i) => {
                    self.pos += 1;
                    Ok(Poly::variable(self.nvars, i))
                }
                None => Err(SdsError::UnknownVariable { name, position }),
            },
            Token::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.error("expected `)`"),
                }
            }
            other => self.error(format!("unexpected token {}", describe(&other))),
        }
    }
}

fn describe(tok: &Token) -> &'static str {
    match tok {
        Token::Int(_) => "number",
        Token::Ident(_) => "identifier",
        Token::Plus => "`+`",
        Token::Minus => "`-`",
        Token::Star => "`*`",
        Token::Slash => "`/`",
        Token::Caret => "`^`",
        Token::LParen => "`(`",
        Token::RParen => "`)`",
    }
}

/// Checks that a variable list is non-empty, duplicate-free and made of
/// identifiers.
pub fn validate_vars(vars: &[impl AsRef<str>]) -> Result<()> {
    if vars.is_empty() {
        return Err(SdsError::NoVariables);
    }
    let mut seen = HashSet::new();
    for v in vars {
        let v = v.as_ref();
        let valid = v
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(SdsError::Syntax {
                position: 0,
                message: format!("invalid variable name `{v}`"),
            });
        }
        if !seen.insert(v) {
            return Err(SdsError::DuplicateVariable(v.to_string()));
        }
    }
    Ok(())
}

/// Parses and expands `text` as a form in `vars` (in that order).
pub fn parse_form(text: &str, vars: &[impl AsRef<str>]) -> Result<Form> {
    validate_vars(vars)?;
    let nvars = vars.len();
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        vars: vars.iter().enumerate().map(|(i, v)| (v.as_ref(), i)).collect(),
        nvars,
    };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        let found = describe(&parser.tokens[parser.pos].1);
        return parser.error(format!("unexpected {found}; expected an operator"));
    }
    let mut degrees = poly.terms.keys().map(|e| e.iter().sum::<u32>());
    let degree = degrees.next().unwrap_or(0);
    if let Some(other) = degrees.find(|&d| d != degree) {
        return Err(SdsError::NotHomogeneous {
            first: degree.max(other),
            second: degree.min(other),
        });
    }
    Form::from_terms(nvars, degree, poly.terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn expands_simple_form() {
        let f = parse_form("x^2 - 2*x*y", &["x", "y"]).unwrap();
        assert_eq!(f.nvars(), 2);
        assert_eq!(f.degree(), 2);
        assert_eq!(f.len(), 2);
        assert_eq!(f.coefficient(&[2, 0]), int(1));
        assert_eq!(f.coefficient(&[1, 1]), int(-2));
    }

    #[test]
    fn expands_example1() {
        let f = parse_form("x*(x-y)^5 - y*(-z-y)^5 - z*(x-z)^5", &["x", "y", "z"]).unwrap();
        assert_eq!(f.degree(), 6);
        assert_eq!(f.nvars(), 3);
        // x^6 from the first term, -(-1)*y^6 ... y*(-(z+y))^5 = -y*(y+z)^5
        assert_eq!(f.coefficient(&[6, 0, 0]), int(1));
        assert_eq!(f.coefficient(&[0, 6, 0]), int(1));
        assert_eq!(f.coefficient(&[0, 0, 6]), int(1));
    }

    #[test]
    fn rational_literals() {
        let f = parse_form("-9/10*y^3 + 4/8*x^3", &["x", "y"]).unwrap();
        assert_eq!(f.coefficient(&[0, 3]), rat(-9, 10));
        assert_eq!(f.coefficient(&[3, 0]), rat(1, 2));
    }

    #[test]
    fn rejects_non_homogeneous() {
        assert!(matches!(
            parse_form("x + y^2", &["x", "y"]),
            Err(SdsError::NotHomogeneous { .. })
        ));
    }

    #[test]
    fn cancellation_can_restore_homogeneity() {
        let f = parse_form("x^2 + y - y", &["x", "y"]).unwrap();
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn reports_positions() {
        match parse_form("x + 2y", &["x", "y"]) {
            Err(SdsError::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        match parse_form("x + w", &["x", "y"]) {
            Err(SdsError::UnknownVariable { name, position }) => {
                assert_eq!(name, "w");
                assert_eq!(position, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_form("(x + y", &["x", "y"]) {
            Err(SdsError::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_form("x / y", &["x", "y"]),
            Err(SdsError::Syntax { .. })
        ));
        assert!(matches!(
            parse_form("x^y", &["x", "y"]),
            Err(SdsError::Syntax { .. })
        ));
        assert!(matches!(
            parse_form("x $ y", &["x", "y"]),
            Err(SdsError::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            parse_form("1/0*x", &["x"]),
            Err(SdsError::Syntax { .. })
        ));
    }

    #[test]
    fn variable_list_checks() {
        let empty: [&str; 0] = [];
        assert_eq!(parse_form("1", &empty), Err(SdsError::NoVariables));
        assert!(matches!(
            parse_form("x", &["x", "x"]),
            Err(SdsError::DuplicateVariable(_))
        ));
    }

    #[test]
    fn zero_polynomial() {
        let f = parse_form("x*y - y*x", &["x", "y"]).unwrap();
        assert!(f.is_zero());
    }
}
