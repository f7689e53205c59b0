//! A small text format for ring elements: `3*y1^2*y2 - y3`, `1 - z1^-1*z2`, `u1 + a11*u1*u2`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A parsed term: coefficient and exponent vector over the supplied names.
pub type RawTerm = (BigRational, Vec<i64>);

/// Parses a sum of terms over the variables `names`. Repeated monomials are combined.
pub fn parse_terms(text: &str, names: &[String]) -> Result<Vec<RawTerm>, String> {
    let mut p = Parser {
        s: text.as_bytes(),
        i: 0,
        names,
    };
    let mut terms: Vec<RawTerm> = Vec::new();
    p.ws();
    if p.eof() {
        return Err("empty expression".into());
    }
    let mut first = true;
    while !p.eof() {
        let mut sign = BigRational::one();
        match p.peek() {
            Some(b'+') => {
                p.i += 1;
            }
            Some(b'-') => {
                p.i += 1;
                sign = -sign;
            }
            _ if !first => return Err(format!("expected '+' or '-' at offset {}", p.i)),
            _ => {}
        }
        p.ws();
        let (c, e) = p.term()?;
        let c = c * sign;
        match terms.iter_mut().find(|(_, x)| *x == e) {
            Some(t) => t.0 += c,
            None => terms.push((c, e)),
        }
        first = false;
        p.ws();
    }
    terms.retain(|(c, _)| !c.is_zero());
    Ok(terms)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn eof(&self) -> bool {
        self.i >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.i += 1;
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        (self.i > start).then(|| {
            BigInt::from_str(std::str::from_utf8(&self.s[start..self.i]).expect("ascii digits")).expect("digits")
        })
    }

    fn term(&mut self) -> Result<RawTerm, String> {
        let mut coeff = BigRational::one();
        let mut exps = vec![0i64; self.names.len()];
        let mut expect_factor = true;
        while expect_factor {
            self.ws();
            if let Some(n) = self.integer() {
                let mut c = BigRational::from_integer(n);
                self.ws();
                if self.peek() == Some(b'/') {
                    self.i += 1;
                    self.ws();
                    let d = self
                        .integer()
                        .ok_or_else(|| format!("expected denominator at offset {}", self.i))?;
                    if d.is_zero() {
                        return Err("zero denominator".into());
                    }
                    c /= BigRational::from_integer(d);
                }
                coeff *= c;
            } else {
                let start = self.i;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.i += 1;
                }
                if start == self.i {
                    return Err(format!("expected a number or variable at offset {}", self.i));
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
                let k = self
                    .names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| format!("unknown variable '{name}'"))?;
                self.ws();
                let mut e = 1i64;
                if self.peek() == Some(b'^') {
                    self.i += 1;
                    e = self.exponent()?;
                }
                exps[k] += e;
            }
            self.ws();
            expect_factor = self.peek() == Some(b'*');
            if expect_factor {
                self.i += 1;
            }
        }
        Ok((coeff, exps))
    }

    fn exponent(&mut self) -> Result<i64, String> {
        self.ws();
        let paren = self.peek() == Some(b'(');
        if paren {
            self.i += 1;
            self.ws();
        }
        let neg = self.peek() == Some(b'-');
        if neg {
            self.i += 1;
        }
        let n = self
            .integer()
            .ok_or_else(|| format!("expected exponent at offset {}", self.i))?;
        let n: i64 = i64::try_from(n).map_err(|_| "exponent too large".to_string())?;
        if paren {
            self.ws();
            if self.peek() != Some(b')') {
                return Err(format!("expected ')' at offset {}", self.i));
            }
            self.i += 1;
        }
        Ok(if neg { -n } else { n })
    }
}
