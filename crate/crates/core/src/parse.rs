//! Text grammars shared with the CLI.
//!
//! Words: generators `x1`..`xn`, inverses and powers `^k`, `*` or plain
//! juxtaposition for products, `[A,B]` for commutators, parentheses for
//! grouping; whitespace is ignored.
//!
//! Automorphism expressions: `a(i,j)` for the conjugation generators,
//! `A(i,j,k)` for the commutator-multiplication generators (case matters),
//! `rho(p3,...,pn; q3,...,qn)`, and the same `*`, `^k`, `[U,V]`, `(...)`
//! combinators. In a product the LEFT factor acts first.

use crate::automorphisms::{AutLetter, AutWord, Endomorphism};
use crate::error::{Error, Result};
use crate::freegroup::Word;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => self.err(format!(
                "expected '{}', found '{}'",
                c as char, found as char
            )),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn parse_u32(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are utf8")
            .parse()
            .or_else(|_| self.err("number out of range"))
    }

    fn parse_i64(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start || (self.pos == start + 1 && !self.src[start].is_ascii_digit()) {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are utf8")
            .parse()
            .or_else(|_| self.err("integer out of range"))
    }

    /// Optional trailing `^k`.
    fn parse_power(&mut self) -> Result<Option<i64>> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            Ok(Some(self.parse_i64()?))
        } else {
            Ok(None)
        }
    }
}

// ---------------------------------------------------------------- words

fn word_atom(c: &mut Cursor, rank: u32) -> Result<Word> {
    match c.peek() {
        Some(b'x') => {
            c.pos += 1;
            let i = c.parse_u32()?;
            Word::generator(rank, i)
        }
        Some(b'[') => {
            c.pos += 1;
            let a = word_product(c, rank)?;
            c.expect(b',')?;
            let b = word_product(c, rank)?;
            c.expect(b']')?;
            a.commutator(&b)
        }
        Some(b'(') => {
            c.pos += 1;
            let a = word_product(c, rank)?;
            c.expect(b')')?;
            Ok(a)
        }
        Some(found) => c.err(format!(
            "expected 'x<i>', '[' or '(', found '{}'",
            found as char
        )),
        None => c.err("expected 'x<i>', '[' or '(', found end of input"),
    }
}

fn word_product(c: &mut Cursor, rank: u32) -> Result<Word> {
    let mut out = Word::identity(rank);
    loop {
        let atom = word_atom(c, rank)?;
        let atom = match c.parse_power()? {
            Some(k) => atom.pow(k),
            None => atom,
        };
        out = out.concat(&atom)?;
        match c.peek() {
            Some(b'*') => {
                c.pos += 1;
            }
            Some(b'x') | Some(b'[') | Some(b'(') => {}
            _ => return Ok(out),
        }
    }
}

/// Parses a word expression at the given rank.
pub fn parse_word(input: &str, rank: u32) -> Result<Word> {
    let mut c = Cursor::new(input);
    let w = word_product(&mut c, rank)?;
    if !c.at_end() {
        return c.err("trailing input");
    }
    Ok(w)
}

// --------------------------------------------- automorphism expressions

/// Parsed automorphism expression. Letters and rho atoms have closed-form
/// inverses, so the whole tree inverts formally; compiled evaluation never
/// needs to invert a general endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutExpr {
    Letter(AutLetter),
    Rho { p: Vec<i64>, q: Vec<i64> },
    Product(Vec<AutExpr>),
    Power(Box<AutExpr>, i64),
    Commutator(Box<AutExpr>, Box<AutExpr>),
}

impl AutExpr {
    pub fn inverse(&self) -> AutExpr {
        match self {
            AutExpr::Letter(l) => AutExpr::Letter(l.inverted()),
            AutExpr::Rho { p, q } => AutExpr::Rho {
                p: p.iter().map(|x| -x).collect(),
                q: q.iter().map(|x| -x).collect(),
            },
            AutExpr::Product(es) => {
                AutExpr::Product(es.iter().rev().map(|e| e.inverse()).collect())
            }
            AutExpr::Power(e, k) => AutExpr::Power(e.clone(), -k),
            // [u,v]^{-1} = [v,u]
            AutExpr::Commutator(u, v) => AutExpr::Commutator(v.clone(), u.clone()),
        }
    }

    /// Evaluates to a concrete map at rank n; products act left factor first.
    pub fn compile(&self, n: u32) -> Result<Endomorphism> {
        match self {
            AutExpr::Letter(l) => {
                if l.max_index() > n {
                    return Err(Error::IndexViolation(format!(
                        "letter {l} exceeds rank {n}"
                    )));
                }
                l.compile(n)
            }
            AutExpr::Rho { p, q } => crate::automorphisms::rho(n, p, q),
            AutExpr::Product(es) => {
                let mut out = Endomorphism::identity(n);
                for e in es {
                    out = out.then(&e.compile(n)?)?;
                }
                Ok(out)
            }
            AutExpr::Power(e, k) => {
                let base = if *k < 0 {
                    e.inverse().compile(n)?
                } else {
                    e.compile(n)?
                };
                let mut out = Endomorphism::identity(n);
                for _ in 0..k.unsigned_abs() {
                    out = out.then(&base)?;
                }
                Ok(out)
            }
            AutExpr::Commutator(u, v) => AutExpr::Product(vec![
                u.inverse(),
                v.inverse(),
                (**u).clone(),
                (**v).clone(),
            ])
            .compile(n),
        }
    }

    /// Flattens to a formal letter sequence; fails on rho atoms, which are
    /// not Magnus generator letters.
    pub fn to_autword(&self, n: u32) -> Result<AutWord> {
        match self {
            AutExpr::Letter(l) => AutWord::letter(n, *l),
            AutExpr::Rho { .. } => Err(Error::Unsupported(
                "rho is not a word in Magnus generator letters".into(),
            )),
            AutExpr::Product(es) => {
                let mut out = AutWord::identity(n);
                for e in es {
                    out = out.product(&e.to_autword(n)?)?;
                }
                Ok(out)
            }
            AutExpr::Power(e, k) => Ok(e.to_autword(n)?.pow(*k)),
            AutExpr::Commutator(u, v) => u.to_autword(n)?.commutator(&v.to_autword(n)?),
        }
    }
}

fn ident(c: &mut Cursor) -> Result<String> {
    c.skip_ws();
    let start = c.pos;
    while c.pos < c.src.len() && c.src[c.pos].is_ascii_alphabetic() {
        c.pos += 1;
    }
    if start == c.pos {
        return c.err("expected a name");
    }
    Ok(std::str::from_utf8(&c.src[start..c.pos])
        .expect("ascii")
        .to_string())
}

fn int_list(c: &mut Cursor, stop: u8) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    if c.peek() == Some(stop) {
        return Ok(out);
    }
    loop {
        out.push(c.parse_i64()?);
        if c.peek() == Some(b',') {
            c.pos += 1;
        } else {
            return Ok(out);
        }
    }
}

fn aut_atom(c: &mut Cursor, rank: u32) -> Result<AutExpr> {
    match c.peek() {
        Some(b'[') => {
            c.pos += 1;
            let u = aut_product(c, rank)?;
            c.expect(b',')?;
            let v = aut_product(c, rank)?;
            c.expect(b']')?;
            Ok(AutExpr::Commutator(Box::new(u), Box::new(v)))
        }
        Some(b'(') => {
            c.pos += 1;
            let e = aut_product(c, rank)?;
            c.expect(b')')?;
            Ok(e)
        }
        Some(ch) if ch.is_ascii_alphabetic() => {
            let at = c.pos;
            let name = ident(c)?;
            match name.as_str() {
                "a" => {
                    c.expect(b'(')?;
                    let i = c.parse_u32()?;
                    c.expect(b',')?;
                    let j = c.parse_u32()?;
                    c.expect(b')')?;
                    let l = AutLetter::alpha(i, j)?;
                    if l.max_index() > rank {
                        return Err(Error::IndexViolation(format!(
                            "a({i},{j}) exceeds rank {rank}"
                        )));
                    }
                    Ok(AutExpr::Letter(l))
                }
                "A" => {
                    c.expect(b'(')?;
                    let i = c.parse_u32()?;
                    c.expect(b',')?;
                    let j = c.parse_u32()?;
                    c.expect(b',')?;
                    let k = c.parse_u32()?;
                    c.expect(b')')?;
                    let l = AutLetter::big_a(i, j, k)?;
                    if l.max_index() > rank {
                        return Err(Error::IndexViolation(format!(
                            "A({i},{j},{k}) exceeds rank {rank}"
                        )));
                    }
                    Ok(AutExpr::Letter(l))
                }
                "rho" => {
                    c.expect(b'(')?;
                    let p = int_list(c, b';')?;
                    c.expect(b';')?;
                    let q = int_list(c, b')')?;
                    c.expect(b')')?;
                    let want = rank.saturating_sub(2) as usize;
                    if rank < 3 || p.len() != want || q.len() != want {
                        return Err(Error::Parse {
                            pos: at,
                            msg: format!(
                                "rho at rank {rank} needs {want} exponents per side, got {} and {}",
                                p.len(),
                                q.len()
                            ),
                        });
                    }
                    Ok(AutExpr::Rho { p, q })
                }
                other => Err(Error::Parse {
                    pos: at,
                    msg: format!("expected 'a', 'A' or 'rho', found '{other}'"),
                }),
            }
        }
        Some(found) => c.err(format!(
            "expected 'a(..)', 'A(..)', 'rho(..)', '[' or '(', found '{}'",
            found as char
        )),
        None => c.err("expected an automorphism atom, found end of input"),
    }
}

fn aut_product(c: &mut Cursor, rank: u32) -> Result<AutExpr> {
    let mut parts = Vec::new();
    loop {
        let atom = aut_atom(c, rank)?;
        let atom = match c.parse_power()? {
            Some(k) => AutExpr::Power(Box::new(atom), k),
            None => atom,
        };
        parts.push(atom);
        match c.peek() {
            Some(b'*') => {
                c.pos += 1;
            }
            Some(b'[') | Some(b'(') => {}
            Some(ch) if ch.is_ascii_alphabetic() => {}
            _ => break,
        }
    }
    Ok(if parts.len() == 1 {
        parts.pop().expect("nonempty")
    } else {
        AutExpr::Product(parts)
    })
}

/// Parses an automorphism expression at the given rank.
pub fn parse_aut_expr(input: &str, rank: u32) -> Result<AutExpr> {
    let mut c = Cursor::new(input);
    let e = aut_product(&mut c, rank)?;
    if !c.at_end() {
        return c.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_parse() {
        assert_eq!(parse_word("x1 x2", 2).unwrap().to_string(), "x1*x2");
        assert_eq!(parse_word("x1*x1^-1", 2).unwrap().to_string(), "1");
        assert_eq!(
            parse_word("[x1,x2]", 2).unwrap().to_string(),
            "x1^-1*x2^-1*x1*x2"
        );
        assert_eq!(parse_word("x2^3", 2).unwrap().to_string(), "x2^3");
        assert_eq!(
            parse_word("(x1 x2)^-1", 2).unwrap().to_string(),
            "x2^-1*x1^-1"
        );
        assert_eq!(parse_word("x1x2", 2).unwrap().to_string(), "x1*x2");
        assert_eq!(
            parse_word("[[x1,x2],x1]", 2).unwrap(),
            parse_word("[x1,x2]^-1 x1^-1 [x1,x2] x1", 2).unwrap()
        );
    }

    #[test]
    fn word_errors_carry_positions() {
        assert!(matches!(
            parse_word("x9", 3),
            Err(Error::IndexViolation(_))
        ));
        let err = parse_word("x1 + x2", 3).unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 3, .. }), "{err:?}");
        assert!(parse_word("[x1,x2", 3).is_err());
        assert!(parse_word("", 3).is_err());
        assert!(parse_word("x1^", 3).is_err());
    }

    #[test]
    fn aut_exprs_parse_and_compile() {
        let e = parse_aut_expr("a(2,1)", 3).unwrap();
        assert_eq!(
            e.compile(3).unwrap(),
            crate::automorphisms::alpha(3, 2, 1).unwrap()
        );
        let e = parse_aut_expr("A(1,2,3)", 3).unwrap();
        assert_eq!(
            e.compile(3).unwrap(),
            crate::automorphisms::big_a(3, 1, 2, 3).unwrap()
        );
        let e = parse_aut_expr("a(2,1)*a(2,1)^-1", 3).unwrap();
        assert!(e.compile(3).unwrap().is_identity());
        // commutator as expression and as autword agree
        let e = parse_aut_expr("[a(3,1),a(3,2)]", 3).unwrap();
        assert_eq!(e.compile(3).unwrap(), e.to_autword(3).unwrap().compile());
        // rho compiles but is not an autword
        let e = parse_aut_expr("rho(1;-1)", 3).unwrap();
        assert_eq!(
            e.compile(3).unwrap(),
            crate::automorphisms::rho(3, &[1], &[-1]).unwrap()
        );
        assert!(e.to_autword(3).is_err());
        let e = parse_aut_expr("rho(1,0;-1,2)", 4).unwrap();
        assert!(e.compile(4).unwrap().is_ia());
    }

    #[test]
    fn product_order_is_left_first() {
        // u*v applies u first: (a(3,1)*a(3,2))(x3) = x1 x2 x3 x2^-1 x1^-1
        let e = parse_aut_expr("a(3,1)*a(3,2)", 3).unwrap();
        let f = e.compile(3).unwrap();
        assert_eq!(f.image(3).to_string(), "x1*x2*x3*x2^-1*x1^-1");
    }

    #[test]
    fn aut_errors() {
        assert!(parse_aut_expr("a(1,1)", 3).is_err());
        assert!(parse_aut_expr("a(4,1)", 3).is_err());
        assert!(parse_aut_expr("A(1,3,2)", 3).is_err());
        assert!(parse_aut_expr("rho(1;1)", 4).is_err());
        assert!(parse_aut_expr("b(1,2)", 3).is_err());
        assert!(parse_aut_expr("a(2,1)]", 3).is_err());
    }

    #[test]
    fn formal_inverse_compiles_to_inverse() {
        for src in ["a(3,2)", "[a(3,1),a(3,2)]", "rho(2;-1)", "a(2,1)^3*A(1,2,3)"] {
            let e = parse_aut_expr(src, 3).unwrap();
            let f = e.compile(3).unwrap();
            let g = e.inverse().compile(3).unwrap();
            assert!(f.then(&g).unwrap().is_identity(), "{src}");
            assert!(g.then(&f).unwrap().is_identity(), "{src}");
        }
    }
}
