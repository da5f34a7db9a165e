//! Polynomial expressions to jets.
//!
//! Grammar: sums and differences of products, `^` with a non-negative integer
//! exponent, integer and `p/q` literals, parentheses, and identifiers. The
//! identifier `i` is the imaginary unit over ℚ(i) unless it names a variable.

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::scalar::Field;

/// Parse `text` as a polynomial in `vars`, truncated at `order`.
pub fn jet_from_polynomial<F: Field>(text: &str, vars: &[&str], order: usize) -> Result<Jet<F>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars, order };
    let jet = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(jet)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
    order: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { position: self.pos, message: message.to_string() }
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

    fn expr<F: Field>(&mut self) -> Result<Jet<F>> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term<F: Field>(&mut self) -> Result<Jet<F>> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary<F: Field>(&mut self) -> Result<Jet<F>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary::<F>()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<F: Field>(&mut self) -> Result<Jet<F>> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let exp = self.integer()?;
        let exp = u32::try_from(exp).map_err(|_| self.error("exponent too large"))?;
        Ok(base.pow(exp))
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Parse { position: start, message: "integer out of range".into() })
    }

    fn atom<F: Field>(&mut self) -> Result<Jet<F>> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut den = 1u64;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    den = self.integer()?;
                    if den == 0 {
                        return Err(self.error("zero denominator"));
                    }
                }
                let value = F::from_rational(num_rational::BigRational::new(num.into(), den.into()));
                Ok(Jet::constant(n, self.order, value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                if let Some(v) = self.vars.iter().position(|&x| x == name) {
                    return Ok(Jet::variable(n, self.order, v));
                }
                match (name, F::imaginary_unit()) {
                    ("i", Some(unit)) => Ok(Jet::constant(n, self.order, unit)),
                    _ => Err(Error::UnknownVariable(name.to_string())),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Gaussian, Rational};

    fn parse(text: &str, order: usize) -> Result<Jet<Rational>> {
        jet_from_polynomial(text, &["x", "y"], order)
    }

    #[test]
    fn zero_polynomial() {
        assert!(parse("0", 4).unwrap().is_zero());
    }

    #[test]
    fn single_monomial() {
        let j = parse("x*y^2", 3).unwrap();
        assert_eq!(j.terms().count(), 1);
        assert_eq!(j.coeff(&[1, 2]), Rational::from(1));
    }

    #[test]
    fn product_expands() {
        let j = parse("(1+x)*(1-x)", 2).unwrap();
        assert_eq!(j, parse("1 - x^2", 2).unwrap());
    }

    #[test]
    fn rationals_and_unary_minus() {
        let j = parse("-3/4*x^2 + -y", 3).unwrap();
        assert_eq!(j.coeff(&[2, 0]), Rational::new(-3, 4));
        assert_eq!(j.coeff(&[0, 1]), Rational::from(-1));
        assert_eq!(parse("-x^2", 2).unwrap().coeff(&[2, 0]), Rational::from(-1));
    }

    #[test]
    fn truncates_at_order() {
        assert!(parse("x^3*y", 3).unwrap().is_zero());
    }

    #[test]
    fn errors() {
        assert_eq!(parse("z + 1", 2), Err(Error::UnknownVariable("z".into())));
        assert_eq!(parse("i", 2), Err(Error::UnknownVariable("i".into())));
        assert!(matches!(parse("(x + 1", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse("x +", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse("1/0", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse("x y", 2), Err(Error::Parse { position: 2, .. })));
    }

    #[test]
    fn imaginary_unit_over_gaussian() {
        let j: Jet<Gaussian> = jet_from_polynomial("(1 + i*x)^2", &["x"], 2).unwrap();
        assert_eq!(j.coeff(&[1]), Gaussian::from_parts((0, 1), (2, 1)));
        assert_eq!(j.coeff(&[2]), Gaussian::from_i64(-1));
    }
}
