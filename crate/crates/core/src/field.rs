//! Exact arithmetic in `F_{p^m}`.
//!
//! Elements are carried as integer codes `Σ cᵢ·pⁱ` where `c₀ … c_{m-1}` are the
//! little-endian coefficients of the element as a polynomial in the generator `a`
//! modulo the field's defining polynomial. Code `0` is the additive identity and
//! code `1` the multiplicative identity.
//!
//! Fields of order at most [`TABLE_LIMIT`] build log/antilog tables against a
//! primitive element found at construction time; larger fields fall back to
//! schoolbook polynomial multiplication with modular reduction.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order that gets log/antilog tables.
pub const TABLE_LIMIT: u32 = 1 << 16;

/// Largest odd-characteristic field order that also gets a full addition table.
const ADD_TABLE_LIMIT: u32 = 1 << 10;

/// Largest field order accepted at all.
pub const MAX_ORDER: u64 = 1 << 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("NotPrime: {0} is not a prime")]
    NotPrime(u64),
    #[error("NotPrimePower: {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("InvalidDegree: extension degree must be at least 1")]
    InvalidDegree,
    #[error("BadModulus: expected a monic polynomial of degree {degree} with coefficients below {p}, got {modulus:?}")]
    BadModulus {
        p: u32,
        degree: u32,
        modulus: Vec<u32>,
    },
    #[error("ReducibleModulus: {modulus:?} is reducible over F_{p}")]
    ReducibleModulus { p: u32, modulus: Vec<u32> },
    #[error("FieldTooLarge: order {0} exceeds the supported maximum")]
    TooLarge(u64),
    #[error("FieldMismatch: operands belong to different fields")]
    FieldMismatch,
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("NotASubfield: F_{sub} is not a subfield of F_{order}")]
    NotASubfield { sub: u64, order: u64 },
    #[error("CodeOutOfRange: element code {code} is not below the field order {order}")]
    CodeOutOfRange { code: u64, order: u32 },
}

/// Wire form of a field: `{"p": .., "m": .., "modulus": [..]}` with a
/// little-endian, monic modulus of length `m + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

/// A finite field `F_{p^m}` with an explicit defining polynomial.
///
/// Immutable after construction; share it behind an `Arc`.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "FieldDescriptor", into = "FieldDescriptor")]
pub struct Field {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(order-1)`; empty when untabled.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`.
    log: Vec<u32>,
    /// Full addition table for small odd-characteristic fields.
    add_table: Vec<u32>,
    neg_table: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl TryFrom<FieldDescriptor> for Field {
    type Error = FieldError;

    fn try_from(d: FieldDescriptor) -> Result<Self, Self::Error> {
        Field::new(d.p, d.m, Some(&d.modulus))
    }
}

impl From<Field> for FieldDescriptor {
    fn from(f: Field) -> Self {
        f.descriptor()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^m` into `(p, m)`.
pub fn prime_power(q: u64) -> Result<(u32, u32), FieldError> {
    if q < 2 {
        return Err(FieldError::NotPrimePower(q));
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(FieldError::NotPrimePower(q));
    }
    Ok((p as u32, m))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `num` modulo `den` over `F_p`; `den` must be nonzero and trimmed.
fn poly_rem_fp(p: u32, num: &[u32], den: &[u32]) -> Vec<u32> {
    let mut r = num.to_vec();
    trim(&mut r);
    let dd = den.len() - 1;
    let lead_inv = inv_mod(den[dd], p);
    while r.len() > dd {
        let shift = r.len() - 1 - dd;
        let factor = (r[r.len() - 1] * lead_inv) % p;
        for (i, &c) in den.iter().enumerate() {
            let t = (factor * c) % p;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Trial division of a monic polynomial over `F_p` by every monic polynomial
/// of degree `1..=deg/2`.
pub fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let mut f = poly.to_vec();
    trim(&mut f);
    let deg = f.len().saturating_sub(1);
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                div.push((x % p as u64) as u32);
                x /= p as u64;
            }
            div.push(1);
            if poly_rem_fp(p, &f, &div).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `m` over `F_p`, ordered
/// by the integer encoding `Σ cᵢ·pⁱ` of its coefficient vector.
pub fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for low in 0..count {
        let mut poly = Vec::with_capacity(m as usize + 1);
        let mut x = low;
        for _ in 0..m {
            poly.push((x % p as u64) as u32);
            x /= p as u64;
        }
        poly.push(1);
        if is_irreducible(p, &poly) {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

impl Field {
    /// Builds `F_{p^m}`, validating the modulus or choosing the canonical default.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(FieldError::InvalidDegree);
        }
        let order = (p as u64)
            .checked_pow(m)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(FieldError::TooLarge((p as u64).saturating_pow(m)))?;
        let modulus = match modulus {
            Some(given) => {
                let ok = given.len() == m as usize + 1
                    && given[m as usize] == 1
                    && given.iter().all(|&c| c < p);
                if !ok {
                    return Err(FieldError::BadModulus {
                        p,
                        degree: m,
                        modulus: given.to_vec(),
                    });
                }
                if !is_irreducible(p, given) {
                    return Err(FieldError::ReducibleModulus {
                        p,
                        modulus: given.to_vec(),
                    });
                }
                given.to_vec()
            }
            None => default_modulus(p, m),
        };
        let mut field = Field {
            p,
            m,
            order: order as u32,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
            neg_table: Vec::new(),
        };
        if p != 2 {
            field.neg_table = (0..field.order).map(|a| field.neg_digits(a)).collect();
            if field.order <= ADD_TABLE_LIMIT {
                let n = field.order as usize;
                let mut table = vec![0u32; n * n];
                for a in 0..n {
                    for b in 0..n {
                        table[a * n + b] = field.add_digits(a as u32, b as u32);
                    }
                }
                field.add_table = table;
            }
        }
        if field.order <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    /// Builds the field of order `q` with the default modulus.
    pub fn with_order(q: u64) -> Result<Field, FieldError> {
        let (p, m) = prime_power(q)?;
        Field::new(p, m, None)
    }

    fn build_tables(&mut self) {
        let n = self.order - 1;
        let factors = prime_factors(n as u64);
        let generator = (1..self.order)
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, n as u64 / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; self.order as usize];
        let mut x = 1u32;
        for i in 0..n as usize {
            exp[i] = x;
            exp[i + n as usize] = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    pub fn has_tables(&self) -> bool {
        !self.exp.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order
    }

    pub fn contains(&self, code: u64) -> bool {
        code < self.order as u64
    }

    pub fn check(&self, code: u64) -> Result<u32, FieldError> {
        if self.contains(code) {
            Ok(code as u32)
        } else {
            Err(FieldError::CodeOutOfRange {
                code,
                order: self.order,
            })
        }
    }

    /// Little-endian base-`p` coefficients of an element code.
    pub fn digits(&self, mut code: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(code % self.p);
            code /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * self.p + d % self.p)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    fn neg_digits(&self, mut a: u32) -> u32 {
        let p = self.p;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += ((p - a % p) % p) * place;
            place *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else if !self.add_table.is_empty() {
            self.add_table[(a * self.order + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            a
        } else {
            self.neg_table[a as usize]
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.exp.is_empty() {
            return self.mul_slow(a, b);
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            let mut prod: u64 = 0;
            for i in 0..self.m {
                if (b >> i) & 1 == 1 {
                    prod ^= (a as u64) << i;
                }
            }
            let modulus = self.from_digits_u64(&self.modulus);
            for i in (self.m..2 * self.m).rev() {
                if (prod >> i) & 1 == 1 {
                    prod ^= modulus << (i - self.m);
                }
            }
            return prod as u32;
        }
        let p = self.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for (j, &mc) in self.modulus.iter().enumerate().take(m) {
                let idx = i - m + j;
                prod[idx] = (prod[idx] + (p - c) * mc as u64) % p;
            }
            prod[i] = 0;
        }
        let digits: Vec<u32> = prod[..m].iter().map(|&d| d as u32).collect();
        self.from_digits(&digits)
    }

    fn from_digits_u64(&self, digits: &[u32]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p as u64 + d as u64)
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mut result = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_slow(result, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        result
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if self.exp.is_empty() {
            return self.pow_slow(a, e);
        }
        let n = (self.order - 1) as u128;
        let idx = (self.log[a as usize] as u128 * (e as u128 % n)) % n;
        self.exp[idx as usize]
    }

    /// `a^e` for a signed exponent; negative powers of zero fail.
    pub fn pow_signed(&self, a: u32, e: i64) -> Result<u32, FieldError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow(inv, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if self.exp.is_empty() {
            return Ok(self.pow_slow(a, self.order as u64 - 2));
        }
        let n = self.order - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `dst[t] += c·src[t]` elementwise.
    pub fn axpy(&self, dst: &mut [u32], src: &[u32], c: u32) {
        if c == 0 {
            return;
        }
        if self.p == 2 && !self.exp.is_empty() {
            let lc = self.log[c as usize];
            for (d, &s) in dst.iter_mut().zip(src) {
                if s != 0 {
                    *d ^= self.exp[(lc + self.log[s as usize]) as usize];
                }
            }
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = self.add(*d, self.mul(c, s));
            }
        }
    }

    /// Integer multiple `k·a` (repeated addition).
    pub fn scalar(&self, a: u32, k: u64) -> u32 {
        let k = (k % self.p as u64) as u32;
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }

    /// `log_p(suborder)` when `suborder = p^s` with `s | m`.
    fn subfield_degree(&self, suborder: u64) -> Result<u32, FieldError> {
        let err = FieldError::NotASubfield {
            sub: suborder,
            order: self.order as u64,
        };
        let (p, s) = prime_power(suborder).map_err(|_| err.clone())?;
        if p != self.p || self.m % s != 0 {
            return Err(err);
        }
        Ok(s)
    }

    /// Relative trace to the subfield of order `suborder`:
    /// `Σ_{i < m/s} a^{p^{s·i}}`.
    pub fn rel_trace(&self, a: u32, suborder: u64) -> Result<u32, FieldError> {
        let s = self.subfield_degree(suborder)?;
        let mut sum = 0;
        let mut x = a;
        for _ in 0..self.m / s {
            sum = self.add(sum, x);
            x = self.pow(x, suborder);
        }
        Ok(sum)
    }

    /// Subfield membership via `a^{p^s} = a`.
    pub fn in_subfield(&self, a: u32, suborder: u64) -> Result<bool, FieldError> {
        self.subfield_degree(suborder)?;
        Ok(self.pow(a, suborder) == a)
    }

    /// All roots of `T^{q'} + μT = c` in the field, by exhaustive scan,
    /// sorted by element code.
    pub fn additive_roots(&self, qprime: u64, mu: u32, c: u32) -> Vec<u32> {
        self.elements()
            .filter(|&t| self.add(self.pow(t, qprime), self.mul(mu, t)) == c)
            .collect()
    }

    /// Polynomial-string rendering of an element, e.g. `a^2+a+1`.
    pub fn format(&self, code: u32) -> String {
        if code == 0 {
            return "0".to_string();
        }
        let digits = self.digits(code);
        let mut terms = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            let term = match i {
                0 => coeff,
                1 => format!("{coeff}a"),
                _ => format!("{coeff}a^{i}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }

    pub fn felt(&self, code: u32) -> Result<Felt<'_>, FieldError> {
        self.check(code as u64)?;
        Ok(Felt { field: self, code })
    }
}

/// An element bound to its field; the checked counterpart of raw codes.
#[derive(Debug, Clone, Copy)]
pub struct Felt<'f> {
    field: &'f Field,
    code: u32,
}

impl PartialEq for Felt<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.same_field(other)
    }
}

impl<'f> Felt<'f> {
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    fn same_field(&self, other: &Felt<'_>) -> bool {
        std::ptr::eq(self.field, other.field) || self.field == other.field
    }

    fn binary(
        self,
        other: Felt<'_>,
        op: impl Fn(&Field, u32, u32) -> u32,
    ) -> Result<Felt<'f>, FieldError> {
        if !self.same_field(&other) {
            return Err(FieldError::FieldMismatch);
        }
        Ok(Felt {
            field: self.field,
            code: op(self.field, self.code, other.code),
        })
    }

    pub fn add(self, other: Felt<'_>) -> Result<Felt<'f>, FieldError> {
        self.binary(other, Field::add)
    }

    pub fn sub(self, other: Felt<'_>) -> Result<Felt<'f>, FieldError> {
        self.binary(other, Field::sub)
    }

    pub fn mul(self, other: Felt<'_>) -> Result<Felt<'f>, FieldError> {
        self.binary(other, Field::mul)
    }

    pub fn neg(self) -> Felt<'f> {
        Felt {
            field: self.field,
            code: self.field.neg(self.code),
        }
    }

    pub fn inv(self) -> Result<Felt<'f>, FieldError> {
        Ok(Felt {
            field: self.field,
            code: self.field.inv(self.code)?,
        })
    }

    pub fn pow(self, e: u64) -> Felt<'f> {
        Felt {
            field: self.field,
            code: self.field.pow(self.code, e),
        }
    }
}

impl fmt::Display for Felt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.code))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f8() -> Field {
        Field::new(2, 3, Some(&[1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn f8_modulus_matches_default() {
        assert_eq!(f8(), Field::new(2, 3, None).unwrap());
        assert_eq!(default_modulus(2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn prime_field_default() {
        let f2 = Field::new(2, 1, None).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.mul(1, 1), 1);
        assert_eq!(f2.add(1, 1), 0);
        let f7 = Field::new(7, 1, None).unwrap();
        assert_eq!(f7.mul(3, 5), 1);
        assert_eq!(f7.inv(3).unwrap(), 5);
    }

    #[test]
    fn f9_default_is_least_irreducible_quadratic() {
        // Sieve every monic quadratic t^2 + b t + c over F_3 for roots.
        let mut irreducible = Vec::new();
        for low in 0..9u32 {
            let (c, b) = (low % 3, low / 3);
            let has_root = (0..3).any(|t| (t * t + b * t + c) % 3 == 0);
            if !has_root {
                irreducible.push(low);
            }
        }
        let least = irreducible[0];
        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[least % 3, least / 3, 1]);
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn f8_products() {
        let f = f8();
        // α·α² = α³ = α + 1
        assert_eq!(f.mul(2, 4), 3);
        assert_eq!(f.add(5, 0), 5);
        assert_eq!(f.format(7), "a^2+a+1");
        assert_eq!(f.format(3), "a+1");
    }

    #[test]
    fn f9_i_squared_is_minus_one() {
        let f = Field::new(3, 2, None).unwrap();
        assert_eq!(f.mul(3, 3), 2);
        assert_eq!(f.neg(1), 2);
        assert_eq!(f.format(5), "a+2");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(FieldError::ReducibleModulus { .. })
        ));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 1])),
            Err(FieldError::BadModulus { .. })
        ));
        assert_eq!(
            Field::new(2, 2, None).unwrap().inv(0),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn felt_mismatch() {
        let a = Field::new(2, 3, None).unwrap();
        let b = Field::new(3, 2, None).unwrap();
        let x = a.felt(3).unwrap();
        let y = b.felt(3).unwrap();
        assert_eq!(x.add(y), Err(FieldError::FieldMismatch));
        let z = a.felt(4).unwrap();
        assert_eq!(x.mul(z).unwrap().code(), a.mul(3, 4));
        assert!(a.felt(8).is_err());
    }

    #[test]
    fn trace_f4_to_f2() {
        let f4 = Field::new(2, 2, None).unwrap();
        let mut zeros = 0;
        for a in f4.elements() {
            let t = f4.rel_trace(a, 2).unwrap();
            assert_eq!(t, f4.add(a, f4.mul(a, a)));
            assert!(t <= 1);
            zeros += (t == 0) as u32;
        }
        assert_eq!(zeros, 2);
        assert_eq!(f4.rel_trace(0, 2).unwrap(), 0);
        assert!(matches!(
            f4.rel_trace(1, 8),
            Err(FieldError::NotASubfield { .. })
        ));
        assert!(matches!(
            f4.rel_trace(1, 3),
            Err(FieldError::NotASubfield { .. })
        ));
    }

    #[test]
    fn trace_f4096_to_f8_census() {
        let f = Field::new(2, 12, None).unwrap();
        let count = f
            .elements()
            .filter(|&a| f.rel_trace(a, 8).unwrap() == 0 && f.add(f.pow(a, 8), a) != 0)
            .count();
        assert_eq!(count, 8 * 8 * 8 - 8);
    }

    #[test]
    fn additive_roots_in_f8() {
        let f = f8();
        assert_eq!(f.additive_roots(2, 1, 0), vec![0, 1]);
        // α² → {α²+α, α²+α+1}
        assert_eq!(f.additive_roots(2, 1, 4), vec![6, 7]);
        // (α²+1)³ → {α, α+1}
        let c = f.pow(5, 3);
        assert_eq!(f.additive_roots(2, 1, c), vec![2, 3]);
        // 1 has absolute trace 1 in F_8, so T²+T = 1 has no roots
        assert!(f.additive_roots(2, 1, 1).is_empty());
    }

    #[test]
    fn untabled_field_agrees_with_tabled_arithmetic() {
        let big = Field::new(2, 17, None).unwrap();
        assert!(!big.has_tables());
        let a = 0x1_2345 % big.order();
        let b = 0x0_f0f1;
        let ab = big.mul(a, b);
        assert_eq!(big.mul(ab, big.inv(b).unwrap()), a);
        assert_eq!(big.pow(a, big.order() as u64), a);
        let odd = Field::new(3, 12, None).unwrap();
        assert!(!odd.has_tables());
        let x = 12345;
        assert_eq!(odd.mul(x, odd.inv(x).unwrap()), 1);
    }

    fn field_strategy() -> impl Strategy<Value = (u32, u32)> {
        prop_oneof![
            Just((2, 1)),
            Just((2, 3)),
            Just((2, 4)),
            Just((3, 2)),
            Just((5, 2)),
            Just((3, 3)),
            Just((7, 1))
        ]
    }

    proptest! {
        #[test]
        fn axioms((p, m) in field_strategy(), seed in any::<[u32; 3]>()) {
            let f = Field::new(p, m, None).unwrap();
            let [a, b, c] = seed.map(|s| s % f.order());
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            prop_assert_eq!(f.pow(a, f.order() as u64), a);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }

        #[test]
        fn trace_lands_in_subfield(a in 0u32..4096) {
            let f = Field::new(2, 12, None).unwrap();
            for sub in [2u64, 4, 8, 64] {
                let t = f.rel_trace(a, sub).unwrap();
                prop_assert!(f.in_subfield(t, sub).unwrap());
            }
        }

        #[test]
        fn root_sets_are_kernel_cosets(c in 0u32..81) {
            let f = Field::new(3, 4, None).unwrap();
            let kernel = f.additive_roots(3, f.neg(1), 0);
            prop_assert_eq!(kernel.len(), 3);
            let roots = f.additive_roots(3, f.neg(1), c);
            prop_assert!(roots.is_empty() || roots.len() == 3);
            for &r in &roots {
                for &k in &kernel {
                    prop_assert!(roots.contains(&f.add(r, k)));
                }
            }
        }
    }
}
