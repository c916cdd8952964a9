//! Parser for the canonical text form, e.g. `X1^2 - X0*X2` or `-3/2*X0*Y^4 + 1`.

use thiserror::Error;

use super::coeff::Coeff;
use super::monomial::{Monomial, Var};
use super::order::MonomialOrder;
use super::polynomial::{Polynomial, Term};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {at}")]
    Unexpected { found: char, at: usize },
    #[error("unexpected end of input")]
    Eof,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("number out of range: {0}")]
    Number(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&mut self) -> ParseError {
        match self.peek() {
            Some(c) => ParseError::Unexpected {
                found: c as char,
                at: self.pos,
            },
            None => ParseError::Eof,
        }
    }

    fn number(&mut self) -> Result<u128, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        txt.parse().map_err(|_| ParseError::Number(txt.to_string()))
    }

    fn ident(&mut self) -> Result<Var, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.s.get(self.pos) {
                Some(&c) => ParseError::Unexpected {
                    found: c as char,
                    at: self.pos,
                },
                None => ParseError::Eof,
            });
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Var::ALL
            .into_iter()
            .find(|v| v.name() == txt)
            .ok_or_else(|| ParseError::UnknownVariable(txt.to_string()))
    }
}

fn to_i128(n: u128) -> Result<i128, ParseError> {
    i128::try_from(n).map_err(|_| ParseError::Number(n.to_string()))
}

fn parse_term(lx: &mut Lexer<'_>) -> Result<Term, ParseError> {
    let mut coeff = Coeff::ONE;
    let mut mono = Monomial::ONE;
    let mut expect_factor = true;
    if matches!(lx.peek(), Some(c) if c.is_ascii_digit()) {
        let num = to_i128(lx.number()?)?;
        let den = if lx.eat(b'/') { to_i128(lx.number()?)? } else { 1 };
        if den == 0 {
            return Err(ParseError::ZeroDenominator);
        }
        coeff = Coeff::new(num, den);
        expect_factor = lx.eat(b'*');
    }
    while expect_factor {
        let v = lx.ident()?;
        let e = if lx.eat(b'^') {
            let n = lx.number()?;
            u32::try_from(n).map_err(|_| ParseError::Number(n.to_string()))?
        } else {
            1
        };
        mono = mono.mul(&Monomial::var(v, e));
        expect_factor = lx.eat(b'*');
    }
    Ok(Term::new(coeff, mono))
}

pub fn parse_polynomial(s: &str, order: MonomialOrder) -> Result<Polynomial, ParseError> {
    let mut lx = Lexer {
        s: s.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut sign = if lx.eat(b'-') {
        Coeff::MINUS_ONE
    } else {
        lx.eat(b'+');
        Coeff::ONE
    };
    loop {
        let t = parse_term(&mut lx)?;
        terms.push(Term::new(t.coeff * sign, t.mono));
        if lx.eat(b'+') {
            sign = Coeff::ONE;
        } else if lx.eat(b'-') {
            sign = Coeff::MINUS_ONE;
        } else if lx.peek().is_none() {
            break;
        } else {
            return Err(lx.unexpected());
        }
    }
    Ok(Polynomial::from_terms(order, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::order::WeightedGrading;
    use proptest::prelude::*;

    fn ord() -> MonomialOrder {
        MonomialOrder::grevlex(WeightedGrading::new(5, 7, 9, 11))
    }

    #[test]
    fn canonical_rendering() {
        let f = parse_polynomial("- X0*X2 + X1^2", ord()).unwrap();
        assert_eq!(f.to_string(), "X1^2 - X0*X2");
        let g = parse_polynomial("3/2 * X0 * Y^4 - 1", ord()).unwrap();
        assert_eq!(g.to_string(), "3/2*X0*Y^4 - 1");
        assert_eq!(parse_polynomial("0", ord()).unwrap().to_string(), "0");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_polynomial("X3 + 1", ord()),
            Err(ParseError::UnknownVariable(_))
        ));
        assert_eq!(parse_polynomial("X0 +", ord()), Err(ParseError::Eof));
        assert_eq!(
            parse_polynomial("1/0*X0", ord()),
            Err(ParseError::ZeroDenominator)
        );
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(
            ((-9i128..10, 1i128..5), prop::array::uniform4(0u32..4)),
            0..6,
        )
        .prop_map(|ts| {
            let terms = ts
                .into_iter()
                .map(|((n, d), e)| Term::new(Coeff::new(n, d), Monomial::ring(e[0], e[1], e[2], e[3])))
                .collect();
            Polynomial::from_terms(ord(), terms)
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(f in arb_poly()) {
            let back = parse_polynomial(&f.to_string(), ord()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
