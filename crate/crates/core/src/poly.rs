//! Dense univariate polynomials with coefficients given as element codes.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("PolyParse: cannot parse term {0:?}")]
    BadTerm(String),
    #[error("PolyParse: coefficient {code} is not an element of a field of order {order}")]
    BadCoefficient { code: u64, order: u32 },
}

/// Little-endian coefficient codes, trimmed so the last entry is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly(Vec<u32>);

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: u32) -> Poly {
        Poly::new(vec![c])
    }

    /// `c·x^e`
    pub fn monomial(c: u32, e: usize) -> Poly {
        let mut v = vec![0; e + 1];
        v[e] = c;
        Poly::new(v)
    }

    /// The polynomial `x`.
    pub fn x() -> Poly {
        Poly::monomial(1, 1)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, field: &Field, x: u32) -> u32 {
        self.0
            .iter()
            .rev()
            .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new(
            (0..n)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new(
            (0..n)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, field: &Field, c: u32) -> Poly {
        Poly::new(self.0.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, field: &Field, e: u32) -> Poly {
        (0..e).fold(Poly::constant(1), |acc, _| acc.mul(field, self))
    }

    /// Applies `c ↦ c^s` to every coefficient and `x ↦ x^s`; this is the `s`-th
    /// power map when `s` is a power of the characteristic and the coefficients
    /// are fixed by it.
    pub fn frobenius(&self, field: &Field, s: u64) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let deg = self.0.len() - 1;
        let mut out = vec![0; deg * s as usize + 1];
        for (i, &c) in self.0.iter().enumerate() {
            out[i * s as usize] = field.pow(c, s);
        }
        Poly::new(out)
    }

    /// Parses sums of terms like `x^3`, `3x^2`, `2*x`, `5`, where coefficients are
    /// element codes.
    pub fn parse(field: &Field, text: &str) -> Result<Poly, PolyParseError> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut acc = Poly::zero();
        for term in cleaned.split('+').filter(|t| !t.is_empty()) {
            let bad = || PolyParseError::BadTerm(term.to_string());
            let (coef_str, exp) = match term.find('x') {
                None => (term, 0usize),
                Some(pos) => {
                    let rest = &term[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse()
                            .map_err(|_| bad())?
                    };
                    (term[..pos].trim_end_matches('*'), exp)
                }
            };
            let code: u64 = if coef_str.is_empty() {
                1
            } else {
                coef_str.parse().map_err(|_| bad())?
            };
            if !field.contains(code) {
                return Err(PolyParseError::BadCoefficient {
                    code,
                    order: field.order(),
                });
            }
            acc = acc.add(field, &Poly::monomial(code as u32, exp));
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let coeff = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_eval() {
        let f = Field::new(2, 3, None).unwrap();
        let cube = Poly::parse(&f, "x^3").unwrap();
        assert_eq!(cube.coeffs(), &[0, 0, 0, 1]);
        assert_eq!(cube.eval(&f, 5), f.pow(5, 3));
        let p = Poly::parse(&f, "3x^2 + 2*x + 1").unwrap();
        assert_eq!(p.coeffs(), &[1, 2, 3]);
        assert_eq!(p.to_string(), "3x^2+2x+1");
        assert!(Poly::parse(&f, "9x").is_err());
        assert!(Poly::parse(&f, "x^").is_err());
    }

    #[test]
    fn frobenius_is_power_map_over_prime_field() {
        let f = Field::new(3, 1, None).unwrap();
        let p = Poly::new(vec![1, 2, 1]);
        assert_eq!(p.frobenius(&f, 3), p.pow(&f, 3));
    }
}
