use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::zx::IntPoly;

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: u64 = 1_000_000;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn expr(&mut self) -> Result<IntPoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<IntPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<IntPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let d = self.digits();
        if d.is_empty() {
            return err(at, "expected a nonnegative integer exponent");
        }
        match d.parse::<u64>() {
            Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e as usize)),
            _ => err(at, format!("exponent exceeds {MAX_EXPONENT}")),
        }
    }

    fn atom(&mut self) -> Result<IntPoly> {
        let at = self.pos;
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(IntPoly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                Ok(IntPoly::constant(d.parse::<BigInt>().expect("digits")))
            }
            Some(c) => err(self.pos, format!("unexpected '{}'", c as char)),
            None => err(at.max(self.pos), "unexpected end of input"),
        }
    }
}

/// Parse an integer polynomial in `x`.
pub fn parse_poly(text: &str) -> Result<IntPoly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, format!("unexpected '{}'", p.src[p.pos] as char));
    }
    Ok(e)
}

/// Compact text without spaces, e.g. `x^2-2*x+2`.
pub fn render(p: &IntPoly) -> String {
    p.to_text().replace(' ', "")
}

/// `y^[p]`, with `y` for `p = 1` and `1` for `p = 0`.
pub fn render_monomial(p: &IntPoly) -> String {
    if p.is_zero() {
        "1".into()
    } else if p == &IntPoly::one() || p.coeffs() == [BigInt::one()] {
        "y".into()
    } else {
        format!("y^[{}]", render(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_poly("(x^2-2)*(x+1)").unwrap(), p(&[-2, -2, 1, 1]));
        assert_eq!(parse_poly("x^2 - 2*x + 2").unwrap(), p(&[2, -2, 1]));
        assert!(matches!(parse_poly("x^(-1)"), Err(Error::Parse { pos: 2, .. })));
        assert_eq!(parse_poly("-x + 1").unwrap(), p(&[1, -1]));
        assert_eq!(parse_poly("2*(x-1)^2").unwrap(), p(&[2, -4, 2]));
        assert_eq!(parse_poly(" 7 ").unwrap(), p(&[7]));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x^2000000").is_err());
        assert!(parse_poly("2x").is_err());
        assert!(parse_poly("(x+1").is_err());
        assert!(parse_poly("y").is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(render(&p(&[2, -2, 1])), "x^2-2*x+2");
        assert_eq!(render_monomial(&p(&[1, 1, 1])), "y^[x^2+x+1]");
        assert_eq!(render_monomial(&p(&[1])), "y");
        assert_eq!(render_monomial(&IntPoly::zero()), "1");
        assert_eq!(render_monomial(&p(&[2])), "y^[2]");
    }
}
