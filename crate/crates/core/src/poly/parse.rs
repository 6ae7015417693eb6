//! Recursive-descent reader for polynomial expressions.
//!
//! Accepts `+ - * ^`, parentheses, variables `x1..xn`, integers (read as
//! multiples of one), ring generators such as `t` or `a1`, and tuples
//! `(e1,e2,..)` for elements of product rings.

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::ring::{Idx, Ring};

pub fn parse_poly(ring: &Ring, nvars: usize, text: &str) -> Result<MultiPoly> {
    let mut p = Parser { ring, nvars, src: text.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Reads a constant expression as an element of `ring`.
pub fn parse_element(ring: &Ring, text: &str) -> Result<Idx> {
    let p = parse_poly(ring, 0, text)?;
    Ok(p.constant_term())
}

/// Splits `(e1, e2, ..)` at top-level commas. Outer parentheses are optional
/// and a single item without commas is returned as is.
pub fn split_tuple(text: &str) -> Result<Vec<&str>> {
    let mut t = text.trim();
    if t.starts_with('(') && matching_close(t)? == t.len() - 1 {
        t = &t[1..t.len() - 1];
    }
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut from = 0;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(t[from..i].trim());
                from = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parenthesis in {text:?}")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parenthesis in {text:?}")));
    }
    parts.push(t[from..].trim());
    Ok(parts)
}

fn matching_close(t: &str) -> Result<usize> {
    let mut depth = 0;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(i);
                }
            }
            _ => {}
        }
    }
    Err(Error::Parse(format!("unbalanced parenthesis in {t:?}")))
}

/// Reads a point of `R^n` written as a tuple of elements.
pub fn parse_point(ring: &Ring, n: usize, text: &str) -> Result<Vec<Idx>> {
    let parts = split_tuple(text)?;
    if parts.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: parts.len() });
    }
    parts.iter().map(|p| parse_element(ring, p)).collect()
}

struct Parser<'a> {
    ring: &'a Ring,
    nvars: usize,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        let text = String::from_utf8_lossy(self.src);
        Error::Parse(format!("{msg} at offset {} in {text:?}", self.pos))
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
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("number too large"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                if let Some(parts) = self.tuple_parts()? {
                    return self.tuple(&parts);
                }
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                let n = i64::try_from(n).map_err(|_| self.error("number too large"))?;
                Ok(MultiPoly::constant(self.ring, self.nvars, self.ring.from_int(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                self.identifier(name, start)
            }
            _ => Err(self.error("expected an operand")),
        }
    }

    fn identifier(&mut self, name: &str, start: usize) -> Result<MultiPoly> {
        if let Some(digits) = name.strip_prefix('x') {
            let i = if digits.is_empty() && self.nvars == 1 {
                Some(1)
            } else {
                digits.parse::<usize>().ok()
            };
            if let Some(i) = i {
                if i == 0 || i > self.nvars {
                    self.pos = start;
                    return Err(self.error(&format!("variable {name} outside x1..x{}", self.nvars)));
                }
                return Ok(MultiPoly::var(self.ring, self.nvars, i - 1));
            }
        }
        match self.ring.symbol(name) {
            Some(c) => Ok(MultiPoly::constant(self.ring, self.nvars, c)),
            None => {
                self.pos = start;
                Err(self.error(&format!("unknown symbol {name} in {}", self.ring)))
            }
        }
    }

    /// If a parenthesized group at the cursor has top-level commas, consumes it
    /// and returns its comma-separated pieces.
    fn tuple_parts(&mut self) -> Result<Option<Vec<String>>> {
        let open = self.pos;
        let mut depth = 0usize;
        let mut cuts = Vec::new();
        let mut i = open;
        while i < self.src.len() {
            match self.src[i] {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                b',' if depth == 1 => cuts.push(i),
                _ => {}
            }
            i += 1;
        }
        if i == self.src.len() {
            return Err(self.error("unbalanced parenthesis"));
        }
        if cuts.is_empty() {
            return Ok(None);
        }
        let mut parts = Vec::new();
        let mut from = open + 1;
        for &c in cuts.iter().chain(std::iter::once(&i)) {
            parts.push(String::from_utf8_lossy(&self.src[from..c]).into_owned());
            from = c + 1;
        }
        self.pos = i + 1;
        Ok(Some(parts))
    }

    fn tuple(&self, parts: &[String]) -> Result<MultiPoly> {
        let factors = self.ring.product_factors();
        if factors.is_empty() {
            return Err(self.error(&format!("tuple literal in non-product ring {}", self.ring)));
        }
        if factors.len() != parts.len() {
            return Err(Error::ArityMismatch { expected: factors.len(), found: parts.len() });
        }
        let comps = factors
            .iter()
            .zip(parts)
            .map(|(r, s)| parse_element(r, s))
            .collect::<Result<Vec<_>>>()?;
        let c = self.ring.from_components(&comps)?;
        Ok(MultiPoly::constant(self.ring, self.nvars, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements_of_each_ring_kind() {
        let f4 = Ring::parse("F2^2:t^2+t+1").unwrap();
        let t = f4.symbol("t").unwrap();
        assert_eq!(parse_element(&f4, "t^2").unwrap(), f4.add(t, 1));
        assert_eq!(parse_element(&f4, &f4.format_elem(f4.add(t, 1))).unwrap(), f4.add(t, 1));
        let prod = Ring::parse("Z4xF3").unwrap();
        let e = parse_element(&prod, "(3,2)").unwrap();
        assert_eq!(prod.components(e).unwrap(), [3, 2]);
        assert_eq!(parse_element(&prod, &prod.format_elem(e)).unwrap(), e);
        let z4 = Ring::parse("Z4").unwrap();
        assert_eq!(parse_element(&z4, "-1").unwrap(), 3);
    }

    #[test]
    fn every_element_literal_round_trips() {
        for spec in ["Z9", "F2^3:t^3+t+1", "Z4[t]/t^2", "F3[a1..a2]dual", "Z2xF3xZ4"] {
            let r = Ring::parse(spec).unwrap();
            for a in r.elements() {
                assert_eq!(parse_element(&r, &r.format_elem(a)).unwrap(), a, "{spec} {a}");
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let z4 = Ring::parse("Z4").unwrap();
        for bad in ["x3", "x1 +", "(x1", "y", "x0", "(1,2)"] {
            assert!(matches!(parse_poly(&z4, 2, bad), Err(Error::Parse(_))), "{bad}");
        }
    }
}
