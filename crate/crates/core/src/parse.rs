//! Expression parser for exact bivariate polynomials in x and y.
//!
//! Grammar: integers, fractions a/b, variables x y, operators + - * ^ and
//! parentheses. Implicit multiplication is not accepted, and decimal
//! literals are rejected with a pointer to exact fractions.

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::scalars::Rat;
use num_bigint::BigInt;
use num_traits::One;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    VarX,
    VarY,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            'x' => {
                toks.push((Tok::VarX, i));
                i += 1;
            }
            'y' => {
                toks.push((Tok::VarY, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    return Err(Error::Parse {
                        offset: i,
                        message: "decimal literals are not supported; use an exact fraction \
                                  like 3/2 instead"
                            .into(),
                    });
                }
                let n: BigInt = src[start..i].parse().unwrap();
                toks.push((Tok::Int(n), start));
            }
            other if other.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                return Err(Error::Parse {
                    offset: start,
                    message: format!(
                        "unknown identifier '{}'; only the variables x and y are defined",
                        &src[start..i]
                    ),
                });
            }
            other => {
                return Err(Error::Parse {
                    offset: i,
                    message: format!("unexpected character '{}'", other),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    lx: Lexer<'a>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.lx
            .toks
            .get(self.pos)
            .map(|&(_, o)| o)
            .unwrap_or(self.lx.src.len())
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.lx.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse {
                offset: self.offset(),
                message: format!("expected {}", what),
            })
        }
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        // catch implicit multiplication like "2x" or ")("
        if matches!(
            self.peek(),
            Some(Tok::VarX) | Some(Tok::VarY) | Some(Tok::Int(_)) | Some(Tok::LParen)
        ) {
            return Err(Error::Parse {
                offset: self.offset(),
                message: "implicit multiplication is not accepted; write an explicit '*'".into(),
            });
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let off = self.offset();
                    match self.bump() {
                        Some(Tok::Int(n)) => {
                            let e: u32 = n.try_into().map_err(|_| Error::Parse {
                                offset: off,
                                message: "exponent does not fit in 32 bits".into(),
                            })?;
                            let mut acc = BiPoly::constant(Rat::one());
                            for _ in 0..e {
                                acc = acc.mul(&base);
                            }
                            Ok(acc)
                        }
                        _ => Err(Error::Parse {
                            offset: off,
                            message: "expected a nonnegative integer exponent after '^'".into(),
                        }),
                    }
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<BiPoly> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => {
                // optional fraction a/b
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let off2 = self.offset();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d == BigInt::from(0) {
                                return Err(Error::Parse {
                                    offset: off2,
                                    message: "fraction with zero denominator".into(),
                                });
                            }
                            Ok(BiPoly::constant(Rat::new(n, d)))
                        }
                        _ => Err(Error::Parse {
                            offset: off2,
                            message: "expected an integer denominator after '/'".into(),
                        }),
                    }
                } else {
                    Ok(BiPoly::constant(Rat::from_integer(n)))
                }
            }
            Some(Tok::VarX) => Ok(BiPoly::from_terms(&[(1, 0, Rat::one())])),
            Some(Tok::VarY) => Ok(BiPoly::from_terms(&[(0, 1, Rat::one())])),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "a closing ')'")?;
                Ok(inner)
            }
            _ => Err(Error::Parse {
                offset: off,
                message: "expected a number, variable, or parenthesized expression".into(),
            }),
        }
    }
}

/// Parses an exact bivariate polynomial expression.
pub fn parse_poly(text: &str) -> Result<BiPoly> {
    let toks = lex(text)?;
    let mut p = Parser {
        lx: Lexer { src: text, toks },
        pos: 0,
    };
    let poly = p.expr()?;
    if p.pos != p.lx.toks.len() {
        return Err(Error::Parse {
            offset: p.offset(),
            message: "unexpected trailing input".into(),
        });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn bp(terms: &[(u32, u32, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(
            &terms
                .iter()
                .map(|&(i, j, n, d)| (i, j, rat(n, d)))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn parses_golden_curves() {
        let sextic = parse_poly("x^6 - 15*x^4*y^2 - 2*x^3 + 15*x^2*y^4 + 6*x*y^2 - y^6").unwrap();
        assert_eq!(
            sextic,
            bp(&[
                (6, 0, 1, 1),
                (4, 2, -15, 1),
                (3, 0, -2, 1),
                (2, 4, 15, 1),
                (1, 2, 6, 1),
                (0, 6, -1, 1)
            ])
        );
        let quintic = parse_poly("1/10*x^5 - 1/2*x^3*y^2 + 1/2*x^2 + 1").unwrap();
        assert_eq!(
            quintic,
            bp(&[(5, 0, 1, 10), (3, 2, -1, 2), (2, 0, 1, 2), (0, 0, 1, 1)])
        );
    }

    #[test]
    fn error_positions() {
        match parse_poly("x^") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("x + 1.5") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 5);
                assert!(message.contains("fraction"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("x + z") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 4);
                assert!(message.contains("unknown identifier"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("2x") {
            Err(Error::Parse { message, .. }) => {
                assert!(message.contains("implicit multiplication"))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn print_parse_roundtrip() {
        let polys = [
            bp(&[(5, 0, 1, 10), (3, 2, -1, 2), (2, 0, 1, 2), (0, 0, 1, 1)]),
            bp(&[(2, 1, -7, 3), (0, 0, 5, 1)]),
            bp(&[(0, 0, -1, 2)]),
            BiPoly::zero(),
        ];
        for p in polys {
            let text = format!("{}", p);
            assert_eq!(parse_poly(&text).unwrap(), p, "roundtrip of {}", text);
        }
    }

    #[test]
    fn unary_minus_and_parens() {
        assert_eq!(parse_poly("-x^2").unwrap(), bp(&[(2, 0, -1, 1)]));
        assert_eq!(
            parse_poly("(x - y)*(x + y)").unwrap(),
            bp(&[(2, 0, 1, 1), (0, 2, -1, 1)])
        );
        assert_eq!(parse_poly("-(x - 1/2)").unwrap(), bp(&[(1, 0, -1, 1), (0, 0, 1, 2)]));
    }
}
