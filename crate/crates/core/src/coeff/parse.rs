//! Parser for scalar expressions.
//!
//! Grammar (whitespace-insensitive):
//! ```text
//! expr   := term  (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' exponent)?
//! atom   := integer | 'v' | 'X' | 'z' digits | '(' expr ')'
//! exponent := integer | '(' integer ')'
//! ```
//! Examples: `v^2 - 2 + v^-2`, `3/2*v`, `(v - v^-1)^2`, `z1*X^3`,
//! `-(v^4+v^2+1)/(v^2+1)`.

use std::str::FromStr;

use super::{Scalar, VAR_V, VAR_X};
use crate::error::EngineError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, EngineError> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: i64 = s[start..i]
                    .parse()
                    .map_err(|_| EngineError::Parse(format!("integer overflow in `{s}`")))?;
                out.push(Tok::Int(n));
            }
            'v' => {
                out.push(Tok::Var(VAR_V));
                i += 1;
            }
            'X' => {
                out.push(Tok::Var(VAR_X));
                i += 1;
            }
            'z' => {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(EngineError::Parse(format!(
                        "`z` must be followed by an index in `{s}`"
                    )));
                }
                let k: usize = s[start..i]
                    .parse()
                    .map_err(|_| EngineError::Parse(format!("bad z index in `{s}`")))?;
                if k == 0 {
                    return Err(EngineError::Parse("z indices start at 1".into()));
                }
                out.push(Tok::Var(super::var_z(k)));
            }
            _ => {
                return Err(EngineError::Parse(format!(
                    "unexpected character `{c}` in scalar expression `{s}`"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), EngineError> {
        match self.bump() {
            Some(got) if got == t => Ok(()),
            other => Err(EngineError::Parse(format!(
                "expected {:?}, found {:?}",
                t, other
            ))),
        }
    }

    fn expr(&mut self) -> Result<Scalar, EngineError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc += self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc -= self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, EngineError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc *= self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.factor()?;
                    if d.is_zero() {
                        return Err(EngineError::Parse("division by zero".into()));
                    }
                    acc = acc / d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, EngineError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let e = self.exponent()?;
            if base.is_zero() && e < 0 {
                return Err(EngineError::Parse("zero to a negative power".into()));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, EngineError> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(n),
            Some(Tok::Minus) => match self.bump() {
                Some(Tok::Int(n)) => Ok(-n),
                other => Err(EngineError::Parse(format!(
                    "expected integer exponent, found {:?}",
                    other
                ))),
            },
            Some(Tok::LParen) => {
                let sign = if matches!(self.peek(), Some(Tok::Minus)) {
                    self.bump();
                    -1
                } else {
                    1
                };
                let n = match self.bump() {
                    Some(Tok::Int(n)) => n,
                    other => {
                        return Err(EngineError::Parse(format!(
                            "expected integer exponent, found {:?}",
                            other
                        )))
                    }
                };
                self.expect(Tok::RParen)?;
                Ok(sign * n)
            }
            other => Err(EngineError::Parse(format!(
                "expected exponent, found {:?}",
                other
            ))),
        }
    }

    fn atom(&mut self) -> Result<Scalar, EngineError> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Scalar::from_int(n)),
            Some(Tok::Var(idx)) => {
                if idx == VAR_V {
                    Ok(Scalar::v_pow(1))
                } else if idx == VAR_X {
                    Ok(Scalar::x_pow(1))
                } else {
                    Ok(Scalar::z_pow(idx - 1, 1))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(EngineError::Parse(format!(
                "expected value, found {:?}",
                other
            ))),
        }
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar, EngineError> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
    };
    let out = p.expr()?;
    if p.pos != toks.len() {
        return Err(EngineError::Parse(format!(
            "trailing input after position {} in `{s}`",
            p.pos
        )));
    }
    Ok(out)
}

impl FromStr for Scalar {
    type Err = EngineError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{q_int, LaurentPoly};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_basics() {
        assert_eq!(parse_scalar("0").unwrap(), Scalar::zero());
        assert_eq!(parse_scalar("v^2").unwrap(), Scalar::v_pow(2));
        assert_eq!(parse_scalar("v^-2").unwrap(), Scalar::v_pow(-2));
        assert_eq!(parse_scalar("v^(-2)").unwrap(), Scalar::v_pow(-2));
        assert_eq!(
            parse_scalar("v + v^-1").unwrap(),
            Scalar::from_laurent(&q_int(2, 1))
        );
        assert_eq!(
            parse_scalar("3/2*v").unwrap(),
            Scalar::from_q(crate::coeff::Q::new(3.into(), 2.into())) * Scalar::v_pow(1)
        );
        // v^4+v^2+1 = v^2*[3] and v^2+1 = v*[2], so the quotient is -v*[3]/[2]
        assert_eq!(
            parse_scalar("-(v^4+v^2+1)/(v^2+1)").unwrap(),
            -Scalar::from_laurent(&q_int(3, 1)) / Scalar::from_laurent(&q_int(2, 1))
                * Scalar::v_pow(1)
        );
        assert_eq!(parse_scalar("z1*X^3").unwrap(), {
            Scalar::z_pow(1, 1) * Scalar::x_pow(3)
        });
    }

    #[test]
    fn parse_errors() {
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("v^").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("w").is_err());
        assert!(parse_scalar("z").is_err());
        assert!(parse_scalar("z0").is_err());
        assert!(parse_scalar("v 2").is_err());
    }

    #[test]
    fn display_roundtrip_examples() {
        for s in [
            "v^2 - 2 + v^-2",
            "(v^4 + v^2 + 1)/(v^2 + 1)",
            "z1^2*X - 3/4",
            "1/(X - 1)^2",
        ] {
            let a = parse_scalar(s).unwrap();
            let b = parse_scalar(&a.to_string()).unwrap();
            assert_eq!(a, b, "roundtrip of `{s}` via `{a}`");
        }
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        let leaf = prop_oneof![
            (-9i64..=9).prop_map(Scalar::from_int),
            (-4i64..=4).prop_map(Scalar::v_pow),
            (-2i64..=2).prop_map(Scalar::x_pow),
            (1usize..=2, -2i64..=2).prop_map(|(k, e)| Scalar::z_pow(k, e)),
        ];
        leaf.prop_recursive(3, 24, 4, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
                (inner.clone(), inner.clone()).prop_filter_map("nonzero divisor", |(a, b)| {
                    if b.is_zero() {
                        None
                    } else {
                        Some(a / b)
                    }
                }),
                inner.prop_map(|a| -a),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn display_parse_roundtrip(s in arb_scalar()) {
            let printed = s.to_string();
            let back = parse_scalar(&printed).unwrap();
            prop_assert_eq!(s, back);
        }

        #[test]
        fn field_axioms_sample(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(
                (a.clone() + b.clone()) * c.clone(),
                a.clone() * c.clone() + b.clone() * c.clone()
            );
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            if !a.is_zero() {
                prop_assert_eq!(a.clone() * a.inv(), Scalar::one());
            }
        }
    }

    #[test]
    fn laurent_display_is_parseable() {
        let p = LaurentPoly::v_pow(2) - LaurentPoly::from_int(2) + LaurentPoly::v_pow(-2);
        let s = parse_scalar(&p.to_string()).unwrap();
        assert_eq!(s, Scalar::from_laurent(&p));
    }
}
