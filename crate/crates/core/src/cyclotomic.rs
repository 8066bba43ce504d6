//! Carlitz module arithmetic and cyclotomic function field numerology.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divisor::{isodual_degree_check, Divisor, Place};
use crate::field::{Field, FieldError};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("NonIntegralGenus: q^m = {denominator} does not divide {numerator} evenly")]
    NonIntegralGenus { numerator: i128, denominator: i128 },
    #[error("UnsupportedBase: q = {0}; the genus formula is only established for q in {{2, 3}}")]
    UnsupportedBase(u64),
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The additive polynomial `ρ_f(u) = Σ cᵢ(x)·u^{qⁱ}` with `cᵢ ∈ F_q[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarlitzPoly {
    pub q: u64,
    pub coeffs: Vec<Poly>,
}

impl CarlitzPoly {
    fn trimmed(q: u64, mut coeffs: Vec<Poly>) -> CarlitzPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CarlitzPoly { q, coeffs }
    }

    /// `ρ_1 = u`
    pub fn identity(q: u64) -> CarlitzPoly {
        CarlitzPoly {
            q,
            coeffs: vec![Poly::constant(1)],
        }
    }

    pub fn zero(q: u64) -> CarlitzPoly {
        CarlitzPoly { q, coeffs: vec![] }
    }

    /// `ρ_x = u^q + x·u`
    pub fn rho_x(q: u64) -> CarlitzPoly {
        CarlitzPoly {
            q,
            coeffs: vec![Poly::x(), Poly::constant(1)],
        }
    }

    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `u`-degree exponent: `ρ` has degree `q^{len−1}`.
    pub fn u_degree_log(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, field: &Field, other: &CarlitzPoly) -> CarlitzPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        CarlitzPoly::trimmed(
            self.q,
            (0..n)
                .map(|i| self.coeff(i).add(field, &other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, field: &Field, c: u32) -> CarlitzPoly {
        CarlitzPoly::trimmed(
            self.q,
            self.coeffs.iter().map(|p| p.scale(field, c)).collect(),
        )
    }

    /// `(self ∘ other)(u) = self(other(u))`, using `c(x)^{q^i} = c(x^{q^i})`
    /// for `c ∈ F_q[x]`.
    pub fn compose(&self, field: &Field, other: &CarlitzPoly) -> CarlitzPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return CarlitzPoly::zero(self.q);
        }
        let mut out = vec![Poly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let s = self.q.pow(i as u32);
            for (j, b) in other.coeffs.iter().enumerate() {
                let term = a.mul(field, &b.frobenius(field, s));
                out[i + j] = out[i + j].add(field, &term);
            }
        }
        CarlitzPoly::trimmed(self.q, out)
    }

    /// Evaluates at `u` given the value of `x` (both in `field`).
    pub fn eval(&self, field: &Field, x: u32, u: u32) -> u32 {
        self.coeffs.iter().enumerate().fold(0, |acc, (i, c)| {
            field.add(
                acc,
                field.mul(c.eval(field, x), field.pow(u, self.q.pow(i as u32))),
            )
        })
    }
}

/// `ρ_f = Σ aᵢ·ρ_x^{∘i}` for `f = Σ aᵢxⁱ` over the prime field `F_q`.
pub fn carlitz_poly(field: &Field, f: &Poly) -> CarlitzPoly {
    let q = field.order() as u64;
    let rho_x = CarlitzPoly::rho_x(q);
    let mut power = CarlitzPoly::identity(q);
    let mut acc = CarlitzPoly::zero(q);
    for &a in f.coeffs() {
        acc = acc.add(field, &power.scale(field, a));
        power = rho_x.compose(field, &power);
    }
    acc
}

/// `C(i, j) mod p` by Lucas' theorem.
pub fn binomial_mod_p(mut i: u64, mut j: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while i > 0 || j > 0 {
        let (a, b) = (i % p, j % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for t in 0..b {
            c = c * (a - t) / (t + 1);
        }
        acc = acc * (c % p) % p;
        i /= p;
        j /= p;
    }
    acc
}

/// Outcome of comparing `ρ_{(x+1)^i}` with `Σ_j C(i,j)·ρ_{x^j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub q: u64,
    pub i: u64,
    pub n: u64,
    /// The full expansion agrees coefficientwise.
    pub holds: bool,
    /// `j < n` with `C(i,j) ≢ 0 mod p`: the terms surviving on `Λ_{x^n}`.
    pub support: Vec<u64>,
    /// The dropped terms `j ≥ n` equal `ρ_h ∘ ρ_{x^n}`, so they vanish on `Λ_{x^n}`.
    pub tail_factors: bool,
}

pub fn carlitz_identity_check(q: u64, i: u64, n: u64) -> Result<IdentityCheck, CyclotomicError> {
    let field = Field::with_order(q)?;
    if field.m() != 1 {
        return Err(CyclotomicError::InvalidParameter(format!(
            "q = {q} must be prime"
        )));
    }
    let p = q;
    let x_plus_1 = Poly::new(vec![1, 1]);
    let lhs = carlitz_poly(&field, &x_plus_1.pow(&field, i as u32));
    let mut rhs = CarlitzPoly::zero(q);
    let mut tail = CarlitzPoly::zero(q);
    let mut h = Poly::zero();
    let mut support = Vec::new();
    for j in 0..=i {
        let c = binomial_mod_p(i, j, p) as u32;
        if c == 0 {
            continue;
        }
        let term = carlitz_poly(&field, &Poly::monomial(c, j as usize));
        rhs = rhs.add(&field, &term);
        if j < n {
            support.push(j);
        } else {
            tail = tail.add(&field, &term);
            h = h.add(&field, &Poly::monomial(c, (j - n) as usize));
        }
    }
    let rho_xn = carlitz_poly(&field, &Poly::monomial(1, n as usize));
    let factored = carlitz_poly(&field, &h).compose(&field, &rho_xn);
    Ok(IdentityCheck {
        q,
        i,
        n,
        holds: lhs == rhs,
        support,
        tail_factors: factored == tail,
    })
}

/// `e_i` = least `j ∈ [1, min(i, n−1)]` with `p ∤ C(i,j)`, for `i = 1..=count`.
pub fn e_sequence(p: u64, count: u64, n: u64) -> Result<Vec<u64>, CyclotomicError> {
    (1..=count)
        .map(|i| {
            (1..=i.min(n.saturating_sub(1)))
                .find(|&j| binomial_mod_p(i, j, p) != 0)
                .ok_or_else(|| {
                    CyclotomicError::InvalidParameter(format!(
                        "no admissible j for i = {i}, n = {n}"
                    ))
                })
        })
        .collect()
}

/// `m = ⌈log_q n⌉`, i.e. `q^{m−1} < n ≤ q^m`.
pub fn ceil_log(q: u64, n: u64) -> u32 {
    let mut m = 0;
    let mut t = 1u64;
    while t < n {
        t *= q;
        m += 1;
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub q: u64,
    pub n: u64,
    pub m: u32,
    pub e: Vec<u64>,
    /// `Σ q^{e_i}`.
    pub e_power_sum: i128,
    /// `n(q−1) − q − 1`.
    pub leading_factor: i64,
    pub two_g_minus_2: i128,
    pub genus: i128,
}

/// Genus of `K_n` from `2g − 2 = q^{−m}(q^{n−1}(n(q−1)−q−1) − Σ q^{e_i})`.
pub fn genus_kn(q: u64, n: u64, force: bool) -> Result<GenusReport, CyclotomicError> {
    if !force && q != 2 && q != 3 {
        return Err(CyclotomicError::UnsupportedBase(q));
    }
    if n < 2 {
        return Err(CyclotomicError::InvalidParameter(format!(
            "n = {n} must be at least 2"
        )));
    }
    let m = ceil_log(q, n);
    let qm = (q as i128).pow(m);
    let e = e_sequence(q, qm as u64 - 1, n)?;
    let e_power_sum: i128 = e.iter().map(|&ei| (q as i128).pow(ei as u32)).sum();
    let leading_factor = n as i64 * (q as i64 - 1) - q as i64 - 1;
    let numerator = (q as i128).pow(n as u32 - 1) * leading_factor as i128 - e_power_sum;
    if numerator % qm != 0 || (numerator / qm) % 2 != 0 {
        return Err(CyclotomicError::NonIntegralGenus {
            numerator,
            denominator: qm,
        });
    }
    let two_g_minus_2 = numerator / qm;
    Ok(GenusReport {
        q,
        n,
        m,
        e,
        e_power_sum,
        leading_factor,
        two_g_minus_2,
        genus: two_g_minus_2 / 2 + 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicParams {
    pub q: u64,
    pub n: u64,
    pub m: u32,
    pub e: Vec<u64>,
    pub genus: i128,
    pub length: u64,
    pub dimension: u64,
    #[serde(rename = "D")]
    pub d: Divisor,
    #[serde(rename = "G")]
    pub g: Divisor,
    /// The base pair meets the iso-dual degree condition on the rational field.
    pub base_isodual: bool,
}

/// Binary (`q = 2`) or ternary (`q = 3`) cyclotomic iso-dual code parameters.
pub fn cyclotomic_code_params(q: u64, n: u64) -> Result<CyclotomicParams, CyclotomicError> {
    let gr = genus_kn(q, n, false)?;
    let m = gr.m as u64;
    let curve = format!("F{q}(x)");
    let lab = |s: &str, deg: u32| Place::labeled(&curve, s, deg).expect("positive degree");
    let (length, dimension, d, g) = match q {
        2 => {
            let e = n - m;
            let d = Divisor::sum_of([lab("P_{x+1}", 1), lab("P_inf", 1)]);
            let mut g = Divisor::single(lab("P_{x^2+x+1}", 2), 1);
            g.add_term(lab("P_x", 1), -2);
            (1u64 << e, 1u64 << (e - 1), d, g)
        }
        _ => {
            if n < m + 1 {
                return Err(CyclotomicError::InvalidParameter(format!(
                    "n = {n} too small for the ternary family"
                )));
            }
            let t = 3u64.pow((n - m - 1) as u32);
            let d = Divisor::sum_of([lab("Q1_{x-2}", 1), lab("Q2_{x-2}", 1)]);
            let mut g = Divisor::single(lab("Q_x", 1), 1);
            g.add_term(lab("Q_inf", 1), -1);
            (4 * t, 2 * t, d, g)
        }
    };
    let base_isodual = isodual_degree_check(&d, &g, 0);
    Ok(CyclotomicParams {
        q,
        n,
        m: gr.m,
        e: gr.e,
        genus: gr.genus,
        length,
        dimension,
        d,
        g,
        base_isodual,
    })
}

/// Prime field `F_q` for Carlitz arithmetic.
pub fn carlitz_field(q: u64) -> Result<Arc<Field>, CyclotomicError> {
    let f = Field::with_order(q)?;
    if f.m() != 1 {
        return Err(CyclotomicError::InvalidParameter(format!(
            "q = {q} must be prime"
        )));
    }
    Ok(Arc::new(f))
}
