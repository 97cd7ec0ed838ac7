//! Text syntax for algebra elements, round-tripping with `Display`.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! elem   := sign? term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*          '/' only by scalar factors
//! factor := atom ('^' exponent)?
//! atom   := 'E'n | 'F'n | 'K'n | 'K[' root ']'
//!         | int | 'v' | 'X' | 'z'n | '(' elem ')'
//! exponent := int | '-'int | '(' int ')'        parenthesized = divided power
//! root   := sign? rterm (('+'|'-') rterm)*      rterm := (int '*')? 'a'n
//! ```
//!
//! Generator indices are 1-based in text (`F1`, `E2`, `K2`), matching the
//! `a1, a2, …` simple-root names inside `K[…]`. A parenthesized exponent on
//! `E`/`F` denotes a divided power: `F1^(3)` is `F_1^3 / [3]!`.

use std::fmt;

use crate::cartan::RootVec;
use crate::coeff::Scalar;
use crate::error::{EngineError, Result};

use super::{Elem, Engine, NormalMono};

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Int(i64),
    Word(String),
}

fn lex(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '[' => {
                toks.push(Tok::LBracket);
                i += 1;
            }
            ']' => {
                toks.push(Tok::RBracket);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s
                    .parse::<i64>()
                    .map_err(|_| EngineError::Parse(format!("integer out of range: {s}")))?;
                toks.push(Tok::Int(n));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push(Tok::Word(chars[start..i].iter().collect()));
            }
            other => {
                return Err(EngineError::Parse(format!(
                    "unexpected character '{other}' in element expression"
                )))
            }
        }
    }
    Ok(toks)
}

/// What an atom was, so exponents can be applied with the right meaning.
enum Atom {
    GenE(usize),
    GenF(usize),
    KVec(RootVec),
    Scalar(Scalar),
    Group(Elem),
}

enum Exp {
    Plain(i64),
    Divided(u32),
}

struct Parser<'a> {
    engine: &'a Engine,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        match self.next() {
            Some(ref got) if got == t => Ok(()),
            other => Err(EngineError::Parse(format!(
                "expected {what}, found {other:?}"
            ))),
        }
    }

    fn gen_index(&self, w: &str) -> Result<usize> {
        let n: usize = w[1..]
            .parse()
            .map_err(|_| EngineError::Parse(format!("bad generator index in '{w}'")))?;
        if n == 0 || n > self.engine.rank() {
            return Err(EngineError::Parse(format!(
                "generator index {n} out of range 1..={}",
                self.engine.rank()
            )));
        }
        Ok(n - 1)
    }

    fn elem(&mut self) -> Result<Elem> {
        let mut negate = false;
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            negate = true;
        } else if let Some(Tok::Plus) = self.peek() {
            self.next();
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc + t;
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc - t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Elem> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let rhs = self.factor()?;
                    acc = self.engine.mul(&acc, &rhs)?;
                }
                Some(Tok::Slash) => {
                    self.next();
                    let rhs = self.factor()?;
                    let s = as_scalar(&rhs).ok_or_else(|| {
                        EngineError::Parse(
                            "division is only defined by scalar factors".to_string(),
                        )
                    })?;
                    if s.is_zero() {
                        return Err(EngineError::Parse("division by zero".to_string()));
                    }
                    acc = acc.scale(&s.inv());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Elem> {
        let atom = self.atom()?;
        let exp = if let Some(Tok::Caret) = self.peek() {
            self.next();
            Some(self.exponent()?)
        } else {
            None
        };
        self.apply_exponent(atom, exp)
    }

    fn exponent(&mut self) -> Result<Exp> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Exp::Plain(n)),
            Some(Tok::Minus) => match self.next() {
                Some(Tok::Int(n)) => Ok(Exp::Plain(-n)),
                other => Err(EngineError::Parse(format!(
                    "expected integer after '^-', found {other:?}"
                ))),
            },
            Some(Tok::LParen) => {
                let n = match self.next() {
                    Some(Tok::Int(n)) if n >= 0 => n as u32,
                    other => {
                        return Err(EngineError::Parse(format!(
                            "divided-power exponent must be a nonnegative integer, found {other:?}"
                        )))
                    }
                };
                self.expect(&Tok::RParen, "')' closing divided-power exponent")?;
                Ok(Exp::Divided(n))
            }
            other => Err(EngineError::Parse(format!(
                "expected exponent after '^', found {other:?}"
            ))),
        }
    }

    fn apply_exponent(&mut self, atom: Atom, exp: Option<Exp>) -> Result<Elem> {
        let rank = self.engine.rank();
        match (atom, exp) {
            (Atom::GenE(i), None) => Ok(Elem::gen_e(rank, i)),
            (Atom::GenF(i), None) => Ok(Elem::gen_f(rank, i)),
            (Atom::GenE(i), Some(Exp::Plain(n))) if n >= 0 => {
                let mut m = NormalMono::unit(rank);
                m.e_word = vec![i; n as usize];
                Ok(Elem::monomial(m, Scalar::one()))
            }
            (Atom::GenF(i), Some(Exp::Plain(n))) if n >= 0 => {
                let mut m = NormalMono::unit(rank);
                m.f_word = vec![i; n as usize];
                Ok(Elem::monomial(m, Scalar::one()))
            }
            (Atom::GenE(_), Some(Exp::Plain(_))) | (Atom::GenF(_), Some(Exp::Plain(_))) => {
                Err(EngineError::Parse(
                    "E and F generators have no negative powers".to_string(),
                ))
            }
            (Atom::GenE(i), Some(Exp::Divided(n))) => Ok(self.engine.e_divided(i, n)),
            (Atom::GenF(i), Some(Exp::Divided(n))) => Ok(self.engine.f_divided(i, n)),
            (Atom::KVec(mu), None) => Ok(Elem::k_elem(mu)),
            (Atom::KVec(mu), Some(Exp::Plain(n))) => {
                let scaled: RootVec = mu.iter().map(|&c| c * n as i32).collect();
                Ok(Elem::k_elem(scaled))
            }
            (Atom::KVec(_), Some(Exp::Divided(_))) => Err(EngineError::Parse(
                "K has no divided powers".to_string(),
            )),
            (Atom::Scalar(s), None) => Ok(Elem::scalar(rank, s)),
            (Atom::Scalar(s), Some(Exp::Plain(n))) => Ok(Elem::scalar(rank, s.pow(n))),
            (Atom::Scalar(_), Some(Exp::Divided(_))) => Err(EngineError::Parse(
                "scalars have no divided powers".to_string(),
            )),
            (Atom::Group(e), None) => Ok(e),
            (Atom::Group(e), Some(Exp::Plain(n))) => {
                if let Some(s) = as_scalar(&e) {
                    return Ok(Elem::scalar(rank, s.pow(n)));
                }
                if n < 0 {
                    return Err(EngineError::Parse(
                        "negative powers are only defined for scalars and K".to_string(),
                    ));
                }
                self.engine.pow(&e, n as u32)
            }
            (Atom::Group(_), Some(Exp::Divided(_))) => Err(EngineError::Parse(
                "divided powers apply only to single E or F generators".to_string(),
            )),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Atom::Scalar(Scalar::from_int(n))),
            Some(Tok::LParen) => {
                let inner = self.elem()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(Atom::Group(inner))
            }
            Some(Tok::Word(w)) => self.word_atom(&w),
            other => Err(EngineError::Parse(format!(
                "expected an atom, found {other:?}"
            ))),
        }
    }

    fn word_atom(&mut self, w: &str) -> Result<Atom> {
        match w.chars().next().unwrap() {
            'v' if w == "v" => Ok(Atom::Scalar(Scalar::v_pow(1))),
            'X' if w == "X" => Ok(Atom::Scalar(Scalar::x_pow(1))),
            'z' if w.len() > 1 => {
                let k: usize = w[1..]
                    .parse()
                    .map_err(|_| EngineError::Parse(format!("bad parameter index in '{w}'")))?;
                if k == 0 {
                    return Err(EngineError::Parse(
                        "parameter indices start at z1".to_string(),
                    ));
                }
                Ok(Atom::Scalar(Scalar::z_pow(k, 1)))
            }
            'E' if w.len() > 1 => Ok(Atom::GenE(self.gen_index(w)?)),
            'F' if w.len() > 1 => Ok(Atom::GenF(self.gen_index(w)?)),
            'K' if w.len() > 1 => {
                let i = self.gen_index(w)?;
                let mut mu = vec![0i32; self.engine.rank()];
                mu[i] = 1;
                Ok(Atom::KVec(mu))
            }
            'K' if w == "K" => {
                self.expect(&Tok::LBracket, "'[' after K")?;
                let mu = self.root_vector()?;
                self.expect(&Tok::RBracket, "']' closing K[...]")?;
                Ok(Atom::KVec(mu))
            }
            _ => Err(EngineError::Parse(format!(
                "unknown symbol '{w}' in element expression"
            ))),
        }
    }

    /// Contents of `K[...]`: a signed integer combination of `a1, a2, …`.
    fn root_vector(&mut self) -> Result<RootVec> {
        let rank = self.engine.rank();
        let mut mu = vec![0i32; rank];
        let mut sign = 1i32;
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            sign = -1;
        }
        loop {
            let coeff = if let Some(Tok::Int(n)) = self.peek() {
                let n = *n;
                self.next();
                self.expect(&Tok::Star, "'*' between coefficient and simple root")?;
                n as i32
            } else {
                1
            };
            match self.next() {
                Some(Tok::Word(w)) if w.starts_with('a') && w.len() > 1 => {
                    let idx: usize = w[1..].parse().map_err(|_| {
                        EngineError::Parse(format!("bad simple-root name '{w}'"))
                    })?;
                    if idx == 0 || idx > rank {
                        return Err(EngineError::Parse(format!(
                            "simple root {w} out of range a1..=a{rank}"
                        )));
                    }
                    mu[idx - 1] += sign * coeff;
                }
                other => {
                    return Err(EngineError::Parse(format!(
                        "expected a simple-root name like a1, found {other:?}"
                    )))
                }
            }
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.next();
                    sign = -1;
                }
                _ => break,
            }
        }
        Ok(mu)
    }
}

/// If the element is a scalar multiple of the unit monomial, return the scalar.
fn as_scalar(e: &Elem) -> Option<Scalar> {
    if e.is_zero() {
        return Some(Scalar::zero());
    }
    if e.num_terms() != 1 {
        return None;
    }
    let (m, c) = e.terms().next().unwrap();
    if m.is_unit() {
        Some(c.clone())
    } else {
        None
    }
}

/// Parse an element expression in the context of an engine (needed because
/// products are normalized as they are read).
pub fn parse_elem(engine: &Engine, input: &str) -> Result<Elem> {
    let toks = lex(input)?;
    if toks.is_empty() {
        return Err(EngineError::Parse("empty element expression".to_string()));
    }
    let mut p = Parser {
        engine,
        toks,
        pos: 0,
    };
    let e = p.elem()?;
    if p.pos != p.toks.len() {
        return Err(EngineError::Parse(format!(
            "trailing input after element expression: {:?}",
            &p.toks[p.pos..]
        )));
    }
    Ok(e)
}

fn fmt_k_vector(mu: &[i32]) -> String {
    let mut out = String::new();
    for (i, &c) in mu.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else if c < 0 {
            out.push('-');
        } else {
            out.push('+');
        }
        let a = c.unsigned_abs();
        if a != 1 {
            out.push_str(&format!("{a}*"));
        }
        out.push_str(&format!("a{}", i + 1));
    }
    out
}

fn fmt_word(letters: &[usize], kind: char, parts: &mut Vec<String>) {
    let mut idx = 0;
    while idx < letters.len() {
        let i = letters[idx];
        let mut run = 1;
        while idx + run < letters.len() && letters[idx + run] == i {
            run += 1;
        }
        if run == 1 {
            parts.push(format!("{kind}{}", i + 1));
        } else {
            parts.push(format!("{kind}{}^{run}", i + 1));
        }
        idx += run;
    }
}

fn fmt_mono(m: &NormalMono) -> String {
    let mut parts: Vec<String> = Vec::new();
    fmt_word(&m.f_word, 'F', &mut parts);
    if !m.k.iter().all(|&c| c == 0) {
        parts.push(format!("K[{}]", fmt_k_vector(&m.k)));
    }
    fmt_word(&m.e_word, 'E', &mut parts);
    parts.join("*")
}

pub(super) fn format_elem(e: &Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if e.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (m, c) in e.terms() {
        let mono = fmt_mono(m);
        let (sign_minus, body) = if c.is_one() {
            (false, if mono.is_empty() { "1".to_string() } else { mono })
        } else if (-c.clone()).is_one() {
            (true, if mono.is_empty() { "1".to_string() } else { mono })
        } else {
            let cs = format!("({c})");
            (
                false,
                if mono.is_empty() {
                    cs
                } else {
                    format!("{cs}*{mono}")
                },
            )
        };
        if first {
            if sign_minus {
                write!(f, "-")?;
            }
            first = false;
        } else if sign_minus {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        write!(f, "{body}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Engine {
        Engine::for_type("A2", 8).unwrap()
    }

    #[test]
    fn parse_generators_and_k() {
        let en = a2();
        assert_eq!(parse_elem(&en, "F1").unwrap(), en.f(0));
        assert_eq!(parse_elem(&en, "E2").unwrap(), en.e(1));
        assert_eq!(parse_elem(&en, "K2").unwrap(), en.k(&[0, 1]));
        assert_eq!(parse_elem(&en, "K[a1+a2]").unwrap(), en.k(&[1, 1]));
        assert_eq!(parse_elem(&en, "K[2*a1-a2]").unwrap(), en.k(&[2, -1]));
        assert_eq!(parse_elem(&en, "K1^-1").unwrap(), en.k(&[-1, 0]));
    }

    #[test]
    fn parse_products_normalize() {
        let en = a2();
        let x = parse_elem(&en, "E1*F1").unwrap();
        assert_eq!(x, en.mul(&en.e(0), &en.f(0)).unwrap());
        let y = parse_elem(&en, "F1^2*F2 - (v + v^-1)*F1*F2*F1 + F2*F1^2").unwrap();
        assert!(y.is_zero());
    }

    #[test]
    fn parse_divided_powers() {
        let en = a2();
        assert_eq!(parse_elem(&en, "F1^(3)").unwrap(), en.f_divided(0, 3));
        assert_eq!(parse_elem(&en, "E2^(2)").unwrap(), en.e_divided(1, 2));
    }

    #[test]
    fn parse_scalar_arithmetic() {
        let en = a2();
        let s = parse_elem(&en, "(v^2 - 2 + v^-2)/(v - v^-1)").unwrap();
        let num = Scalar::v_pow(2) - Scalar::from_int(2) + Scalar::v_pow(-2);
        let den = Scalar::v_pow(1) - Scalar::v_pow(-1);
        assert_eq!(s, Elem::scalar(2, num / den));
        let half = parse_elem(&en, "1/2*F1").unwrap();
        assert_eq!(
            half,
            en.f(0).scale(&(Scalar::from_int(1) / Scalar::from_int(2)))
        );
    }

    #[test]
    fn display_round_trip() {
        let en = a2();
        let samples = [
            "E1*F1",
            "F1*F2*F1",
            "E1*E2*F1*F2",
            "K[a1]*F1 + E2^(2)",
            "(v - v^-1)*F2*K[a1-a2]*E1 - 3",
            "F1^(2)*F2^(2)",
        ];
        for s in samples {
            let x = parse_elem(&en, s).unwrap();
            let shown = format!("{x}");
            let back = parse_elem(&en, &shown).unwrap();
            assert_eq!(back, x, "round trip failed for '{s}' shown as '{shown}'");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        let en = a2();
        for bad in ["", "F0", "F3", "Q1", "F1^", "K[a3]", "F1/F2", "F1)", "(F1"] {
            assert!(parse_elem(&en, bad).is_err(), "should reject '{bad}'");
        }
    }

    #[test]
    fn unit_and_integers() {
        let en = a2();
        assert_eq!(parse_elem(&en, "1").unwrap(), en.one());
        assert_eq!(parse_elem(&en, "-1").unwrap(), -en.one());
        assert_eq!(
            parse_elem(&en, "5 - 2").unwrap(),
            Elem::scalar(2, Scalar::from_int(3))
        );
    }
}
