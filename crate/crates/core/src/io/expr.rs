//! The generator-expression grammar.
//!
//! ```text
//! line  := expr [ '=' expr ]          relations are sugar for lhs - rhs
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := [int '*'] atom
//! atom  := 'v(' j ',' i ')' | '[g' j ',g' i ']'
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment. `v(i,j)` with
//! i < j is accepted and normalized to `-v(j,i)`; `v(i,i)` is rejected
//! (u ∧ u = 0 is reported, not silently dropped).

use crate::{Error, Result};

/// A parsed linear combination of commutator basis vectors: a list of
/// (coefficient, (j, i)) terms with every pair in canonical j > i
/// orientation. Coefficients are reduced mod p only at resolution time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorExpression {
    pub terms: Vec<(i64, (usize, usize))>,
}

impl GeneratorExpression {
    /// Coordinates of the expression in the v basis of V(n).
    pub fn resolve(&self, ctx: &crate::spaces::SpaceContext) -> Result<Vec<u64>> {
        let p = ctx.modulus();
        let mut v = vec![0u64; ctx.dim_v()];
        for &(coeff, (j, i)) in &self.terms {
            let col = ctx.pair_index(j, i)?;
            v[col] = p.add(v[col], p.reduce_signed(coeff));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() {
            let b = self.text[self.pos];
            if b == b'#' {
                self.pos = self.text.len();
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        match self.bump() {
            Some(got) if got == b => Ok(()),
            Some(got) => Err(self.error(format!(
                "expected '{}', found '{}'",
                b as char, got as char
            ))),
            None => Err(self.error(format!("expected '{}', found end of input", b as char))),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self
            .text
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.error("integer literal out of range"))
    }

    fn index(&mut self) -> Result<usize> {
        let v = self.integer()?;
        if v < 1 || v as usize > self.n {
            return Err(self.error(format!("generator index {v} out of range 1..={}", self.n)));
        }
        Ok(v as usize)
    }

    /// Parse an atom, returning (sign, (j, i)) with j > i.
    fn atom(&mut self) -> Result<(i64, (usize, usize))> {
        match self.peek() {
            Some(b'v') => {
                self.pos += 1;
                self.expect(b'(')?;
                let a = self.index()?;
                self.expect(b',')?;
                let b = self.index()?;
                self.expect(b')')?;
                self.orient(a, b)
            }
            Some(b'[') => {
                self.pos += 1;
                self.expect(b'g')?;
                let a = self.index()?;
                self.expect(b',')?;
                self.expect(b'g')?;
                let b = self.index()?;
                self.expect(b']')?;
                self.orient(a, b)
            }
            Some(other) => Err(self.error(format!(
                "expected 'v(' or '[g', found '{}'",
                other as char
            ))),
            None => Err(self.error("expected 'v(' or '[g', found end of input")),
        }
    }

    fn orient(&self, a: usize, b: usize) -> Result<(i64, (usize, usize))> {
        if a == b {
            return Err(self.error(format!(
                "degenerate pair ({a},{a}): u ∧ u = 0 has no basis vector"
            )));
        }
        if a > b {
            Ok((1, (a, b)))
        } else {
            Ok((-1, (b, a)))
        }
    }

    fn term(&mut self) -> Result<(i64, (usize, usize))> {
        let coeff = if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let c = self.integer()?;
            self.expect(b'*')?;
            c
        } else {
            1
        };
        let (sign, pair) = self.atom()?;
        Ok((coeff * sign, pair))
    }

    fn expr(&mut self) -> Result<Vec<(i64, (usize, usize))>> {
        let mut terms = Vec::new();
        let mut sign: i64 = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let (c, pair) = self.term()?;
            terms.push((sign * c, pair));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => break,
            }
        }
        Ok(terms)
    }
}

/// Parse one expression (or `lhs = rhs` relation) against generator count n.
pub fn parse_expression(text: &str, n: usize) -> Result<GeneratorExpression> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        n,
    };
    let mut terms = p.expr()?;
    if p.peek() == Some(b'=') {
        p.pos += 1;
        for (c, pair) in p.expr()? {
            terms.push((-c, pair));
        }
    }
    if let Some(stray) = p.peek() {
        return Err(p.error(format!("unexpected trailing '{}'", stray as char)));
    }
    Ok(GeneratorExpression { terms })
}

/// Is the line blank or a comment?
pub fn is_blank(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with('#')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_catalog_style_expressions() {
        let e = parse_expression("v(2,1) - v(4,3)", 4).unwrap();
        assert_eq!(e.terms, vec![(1, (2, 1)), (-1, (4, 3))]);

        let e = parse_expression("[g2,g1]", 4).unwrap();
        assert_eq!(e.terms, vec![(1, (2, 1))]);

        // antisymmetry normalization
        let e = parse_expression("v(1,2)", 4).unwrap();
        assert_eq!(e.terms, vec![(-1, (2, 1))]);

        let e = parse_expression("2*v(3,1) + v(2,1) - 3*v(4,2)", 4).unwrap();
        assert_eq!(e.terms, vec![(2, (3, 1)), (1, (2, 1)), (-3, (4, 2))]);
    }

    #[test]
    fn relation_sugar_is_difference() {
        let e = parse_expression("[g2,g1] = [g4,g3]", 4).unwrap();
        assert_eq!(e.terms, vec![(1, (2, 1)), (-1, (4, 3))]);
    }

    #[test]
    fn comments_and_whitespace() {
        let e = parse_expression("  v( 2 , 1 )  # trailing comment", 4).unwrap();
        assert_eq!(e.terms, vec![(1, (2, 1))]);
    }

    #[test]
    fn rejects_bad_input_with_position() {
        assert!(matches!(
            parse_expression("v(2,2)", 4),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_expression("v(5,1)", 4),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_expression("v(2,1) +", 4),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_expression("", 4), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_expression("w(2,1)", 4),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_expression("99999999999999999999*v(2,1)", 4),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_expression("v(2,1) v(3,1)", 4),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn resolve_reduces_mod_p() {
        let ctx = crate::spaces::SpaceContext::new(4, 3).unwrap();
        let e = parse_expression("4*v(2,1) - v(4,3)", 4).unwrap();
        let v = e.resolve(&ctx).unwrap();
        assert_eq!(v[ctx.pair_index(2, 1).unwrap()], 1);
        assert_eq!(v[ctx.pair_index(4, 3).unwrap()], 2);
    }
}
