//! Parser for the textual polynomial grammar.
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := coeff | [coeff '*'] factor ('*' factor)*
//! factor := 'x' <index> ['^' <exp>]
//! ```

use crate::error::{Error, Result};
use crate::field::FieldCtx;

use super::multiexp::MultiExp;
use super::poly::{reduce_exponent, ReducedPoly};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<(u64, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let value = text
            .parse::<u64>()
            .map_err(|_| Error::parse(start, format!("number {text} is too large")))?;
        Ok((value, start))
    }
}

struct RawTerm {
    coeff: u32,
    // (0-based variable, exponent) pairs, unreduced
    factors: Vec<(usize, u64)>,
}

pub(crate) fn parse_poly(field: &FieldCtx, n: Option<usize>, src: &str) -> Result<ReducedPoly> {
    let mut cur = Cursor {
        src: src.as_bytes(),
        pos: 0,
    };
    if cur.peek().is_none() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    let mut terms = Vec::new();
    loop {
        terms.push(parse_term(&mut cur, field)?);
        if cur.peek().is_none() {
            break;
        }
        if !cur.eat(b'+') {
            return Err(Error::parse(cur.pos, "expected '+' or end of input"));
        }
    }

    let seen = terms
        .iter()
        .flat_map(|t| t.factors.iter().map(|&(v, _)| v + 1))
        .max()
        .unwrap_or(0);
    let arity = match n {
        Some(n) if seen > n => {
            return Err(Error::parse(
                0,
                format!("variable x{seen} exceeds the declared {n} variables"),
            ))
        }
        Some(n) => n,
        None => seen,
    };

    let q = field.order();
    let mut out = ReducedPoly::zero(field.clone(), arity);
    for t in terms {
        let mut exps = vec![0u64; arity];
        for (v, a) in t.factors {
            exps[v] = exps[v].saturating_add(a);
        }
        let key = MultiExp::new(exps.iter().map(|&a| reduce_exponent(a, q)).collect());
        out.add_term(key, t.coeff);
    }
    Ok(out)
}

fn parse_term(cur: &mut Cursor<'_>, field: &FieldCtx) -> Result<RawTerm> {
    let mut coeff = 1;
    let mut factors = Vec::new();
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let (value, at) = cur.number()?;
            if value >= field.order() as u64 {
                return Err(Error::parse(
                    at,
                    format!("coefficient {value} is not an element encoding of GF({field})"),
                ));
            }
            coeff = value as u32;
            if !cur.eat(b'*') {
                return Ok(RawTerm { coeff, factors });
            }
        }
        Some(b'x') => {}
        Some(_) => return Err(Error::parse(cur.pos, "expected a coefficient or a variable")),
        None => return Err(Error::parse(cur.pos, "unexpected end of input")),
    }
    loop {
        if !cur.eat(b'x') {
            return Err(Error::parse(cur.pos, "expected a variable like x1"));
        }
        let (index, at) = cur.number()?;
        if index == 0 {
            return Err(Error::parse(at, "variables are numbered from x1"));
        }
        let exp = if cur.eat(b'^') { cur.number()?.0 } else { 1 };
        factors.push(((index - 1) as usize, exp));
        if !cur.eat(b'*') {
            break;
        }
    }
    Ok(RawTerm { coeff, factors })
}
