//! Generator matrices for the iso-dual families, the iso-duality certifier,
//! minimum distance search and closed-form parameter reports.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::curves::{CurveError, CurveModel, Family};
use crate::divisor::{lift_divisors, Divisor, DivisorError, Place};
use crate::field::{Field, FieldDescriptor, FieldError};
use crate::linalg::{LinalgError, MatGF};

/// Default exact-enumeration budget (`|F|^k` messages).
pub const DEFAULT_CAP: u64 = 1 << 22;
/// Exhaustive certificate search limit (`|F|^nullity`).
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;
/// Random samples tried before the certifier gives up.
pub const CERTIFY_SAMPLES: u32 = 1 << 16;
/// Random messages tried for the distance upper bound.
pub const DISTANCE_SAMPLES: u32 = 1 << 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("OddLength: n = {0} must be even and at least 4")]
    OddLength(usize),
    #[error("DuplicateAlpha: {0} appears twice")]
    DuplicateAlpha(u32),
    #[error("NotSplit: α = {0} does not split completely")]
    NotSplit(u32),
    #[error("BadParity: {0}")]
    BadParity(String),
    #[error("DimensionMismatch: basis has {basis} monomials, expected {expected}")]
    DimensionMismatch { basis: usize, expected: i64 },
    #[error("RankDeficient: generator has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
    #[error("BudgetExceeded: {needed} messages exceed the cap {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },
    #[error("DuplicateColumn: {0}")]
    DuplicateColumn(Place),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDivisors {
    #[serde(rename = "D")]
    pub d: Divisor,
    #[serde(rename = "G")]
    pub g: Divisor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: String,
    pub params: BTreeMap<String, Value>,
    pub divisors: CodeDivisors,
    pub genus: i64,
}

impl Provenance {
    pub fn deg_g(&self) -> i64 {
        self.divisors.g.degree()
    }
}

/// Wire form of a [`LinearCode`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: FieldDescriptor,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<u32>>,
    pub columns: Vec<Place>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CodeJson", into = "CodeJson")]
pub struct LinearCode {
    pub field: Arc<Field>,
    pub n: usize,
    pub k: usize,
    pub generator: MatGF,
    pub columns: Vec<Place>,
    pub provenance: Provenance,
}

impl TryFrom<CodeJson> for LinearCode {
    type Error = CodeError;

    fn try_from(j: CodeJson) -> Result<Self, Self::Error> {
        let field = Arc::new(Field::try_from(j.field)?);
        let generator = MatGF::from_rows(field, j.n, &j.generator)?;
        let code = LinearCode::new(generator, j.columns, j.provenance)?;
        if code.k != j.k {
            return Err(CodeError::RankDeficient {
                rank: code.k,
                k: j.k,
            });
        }
        Ok(code)
    }
}

impl From<LinearCode> for CodeJson {
    fn from(c: LinearCode) -> Self {
        CodeJson {
            field: c.field.descriptor(),
            n: c.n,
            k: c.k,
            generator: c.generator.to_rows(),
            columns: c.columns,
            provenance: c.provenance,
        }
    }
}

impl LinearCode {
    /// Validates rank, column metadata and support disjointness.
    pub fn new(
        generator: MatGF,
        columns: Vec<Place>,
        provenance: Provenance,
    ) -> Result<LinearCode, CodeError> {
        let n = generator.cols();
        let k = generator.rows();
        if columns.len() != n {
            return Err(CodeError::InvalidParameter(format!(
                "{} column places for {n} columns",
                columns.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for c in &columns {
            if c.degree != 1 || !seen.insert(c) {
                return Err(CodeError::DuplicateColumn(c.clone()));
            }
        }
        if let Some(p) = provenance.divisors.d.overlap(&provenance.divisors.g) {
            return Err(DivisorError::SupportOverlap(p.clone()).into());
        }
        let rank = generator.rank();
        if rank != k {
            return Err(CodeError::RankDeficient { rank, k });
        }
        Ok(LinearCode {
            field: generator.field().clone(),
            n,
            k,
            generator,
            columns,
            provenance,
        })
    }

    pub fn deg_g(&self) -> i64 {
        self.provenance.deg_g()
    }

    /// Goppa bound `n − deg G`.
    pub fn designed_distance(&self) -> i64 {
        self.n as i64 - self.deg_g()
    }

    /// The equivalent code `x·C`.
    pub fn scaled(&self, x: &[u32]) -> Result<LinearCode, CodeError> {
        if x.iter().any(|&c| c == 0) {
            return Err(CodeError::InvalidParameter(
                "scaling vector has a zero entry".into(),
            ));
        }
        let mut out = self.clone();
        out.generator = self.generator.scale_columns(x)?;
        Ok(out)
    }

    /// Columns reordered so that output column `j` is input column `order[j]`.
    pub fn permuted(&self, order: &[usize]) -> LinearCode {
        let mut out = self.clone();
        out.generator = self.generator.select_columns(order);
        out.columns = order.iter().map(|&i| self.columns[i].clone()).collect();
        out
    }
}

fn check_alphas(field: &Field, alphas: &[u32]) -> Result<(), CodeError> {
    let n = alphas.len();
    if n < 4 || n % 2 != 0 {
        return Err(CodeError::OddLength(n));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &a in alphas {
        field.check(a as u64)?;
        if !seen.insert(a) {
            return Err(CodeError::DuplicateAlpha(a));
        }
    }
    Ok(())
}

/// `D = Σ P_α`, `G = ½(n−2)·P_∞` on the rational line.
fn rational_divisors(base: &str, alphas: &[u32]) -> (Divisor, Divisor) {
    let d = Divisor::sum_of(alphas.iter().map(|&a| Place::affine(base, vec![a])));
    let g = Divisor::single(Place::infinite(base), (alphas.len() as i64 - 2) / 2);
    (d, g)
}

fn check_dimension(basis: usize, deg_g: i64, genus: i64) -> Result<(), CodeError> {
    if deg_g > 2 * genus - 2 && basis as i64 != deg_g + 1 - genus {
        return Err(CodeError::DimensionMismatch {
            basis,
            expected: deg_g + 1 - genus,
        });
    }
    Ok(())
}

/// `C_L(Σ P_αᵢ, ½(n−2)P_∞)` on the rational line: rows `x^0 … x^{(n−2)/2}`.
pub fn build_rational_isodual(field: Arc<Field>, alphas: &[u32]) -> Result<LinearCode, CodeError> {
    check_alphas(&field, alphas)?;
    let model = CurveModel::rational(field.clone());
    let base = model.id();
    let n = alphas.len();
    let k = n / 2;
    let rows: Vec<Vec<u32>> = (0..k)
        .map(|a| alphas.iter().map(|&x| field.pow(x, a as u64)).collect())
        .collect();
    let generator = MatGF::from_rows(field.clone(), n, &rows)?;
    let columns = alphas
        .iter()
        .map(|&a| Place::affine(&base, vec![a]))
        .collect();
    let (d, g) = rational_divisors(&base, alphas);
    check_dimension(k, g.degree(), 0)?;
    let mut params = BTreeMap::new();
    params.insert("alphas".into(), json!(alphas));
    let provenance = Provenance {
        family: "rational".into(),
        params,
        divisors: CodeDivisors { d, g },
        genus: 0,
    };
    LinearCode::new(generator, columns, provenance)
}

/// Lift of the rational iso-dual code on `alphas` to `y^{q'} + μy = f(x)`,
/// with `L(rQ_∞)` spanned by `x^a y^b`, `b < q'`, `q'a + mb ≤ r`.
pub fn build_eab_lift(model: &CurveModel, alphas: &[u32]) -> Result<LinearCode, CodeError> {
    let field = model.field.clone();
    if matches!(model.family, Family::SuzukiLocus { .. }) {
        return Err(CodeError::InvalidParameter(
            "no monomial basis is available for the Suzuki cover".into(),
        ));
    }
    let (qp, mu, f) = model.as_additive().ok_or_else(|| {
        CodeError::InvalidParameter(format!("{} is not an additive cover", model.id()))
    })?;
    check_alphas(&field, alphas)?;
    let mut alphas = alphas.to_vec();
    alphas.sort_unstable();
    let split = model.split_alphas()?;
    if let Some(&a) = alphas.iter().find(|a| split.binary_search(a).is_err()) {
        return Err(CodeError::NotSplit(a));
    }
    let n = alphas.len() as u64;
    let m = f.degree().unwrap_or(0) as u64;
    let twice_r = qp * (n + m - 1) - m - 1;
    if twice_r % 2 != 0 {
        return Err(CodeError::BadParity(format!(
            "q'(n+m−1) − m − 1 = {twice_r} is odd"
        )));
    }
    let r = twice_r / 2;

    let ext = model.extension_descriptor()?;
    let (d, g) = rational_divisors(&ext.base, &alphas);
    let lifted = lift_divisors(&ext, &d, &g)?;
    let q_inf = model.place_at_infinity();
    if lifted.g.coeff(&q_inf) != r as i64 || lifted.g.len() != 1 {
        return Err(CodeError::InvalidParameter(format!(
            "lifted G = {} but r = {r}",
            lifted.g
        )));
    }

    let mut basis = Vec::new();
    for b in 0..qp {
        let mut a = 0;
        while qp * a + m * b <= r {
            basis.push((a, b));
            a += 1;
        }
    }
    let genus = model.genus();
    check_dimension(basis.len(), r as i64, genus)?;

    let points: Vec<Vec<u32>> = alphas.iter().flat_map(|&a| model.points_over(a)).collect();
    let rows: Vec<Vec<u32>> = basis
        .iter()
        .map(|&(a, b)| {
            points
                .iter()
                .map(|p| field.mul(field.pow(p[0], a), field.pow(p[1], b)))
                .collect()
        })
        .collect();
    let ncols = points.len();
    let generator = MatGF::from_rows(field.clone(), ncols, &rows)?;
    let columns: Vec<Place> = points.into_iter().map(|p| model.place(p)).collect();
    if Divisor::sum_of(columns.iter().cloned()) != lifted.d {
        return Err(CodeError::InvalidParameter(
            "column places differ from Con(D)".into(),
        ));
    }
    let mut params = BTreeMap::new();
    params.insert("qprime".into(), json!(qp));
    params.insert("mu".into(), json!(mu));
    params.insert("f".into(), json!(f.coeffs()));
    params.insert("alphas".into(), json!(alphas));
    params.insert("r".into(), json!(r));
    params.insert("basis".into(), json!(basis));
    let family = match model.family {
        Family::GGSCover { .. } => "ggs",
        _ => "eab",
    };
    let provenance = Provenance {
        family: family.into(),
        params,
        divisors: CodeDivisors {
            d: lifted.d,
            g: lifted.g,
        },
        genus,
    };
    LinearCode::new(generator, columns, provenance)
}

/// Monomials `x^a y^b`, `0 ≤ b ≤ q`, `(q+1)a + qb ≤ s`, spanning `L(s·Q_∞)`
/// on the Hermitian curve; ordered by `b`, then `a`.
pub fn hermitian_one_point_basis(q: u64, s: i64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for b in 0..=q {
        let mut a = 0u64;
        while ((q + 1) * a + q * b) as i64 <= s {
            out.push((a, b));
            a += 1;
        }
    }
    out
}

/// `C_L(D, A·Q_∞ + β·Σ_{S0} Q_{α,0})` on the Hermitian curve at the given points.
///
/// Since `(y) = Σ_{S0} Q_{α,0} − q·Q_∞`, multiplication by `y^β` identifies
/// `L(A·Q_∞ + β·ΣQ_{α,0})` with `L((A + qβ)·Q_∞)`, so the rows are the one-point
/// basis times `y^{−β}`. Evaluation points never have `y = 0`.
fn hermitian_shift_code(
    model: &CurveModel,
    q: u64,
    points: Vec<Vec<u32>>,
    a_inf: i64,
    beta: i64,
    family: &str,
    mut params: BTreeMap<String, Value>,
) -> Result<LinearCode, CodeError> {
    let field = model.field.clone();
    let s = a_inf + q as i64 * beta;
    let basis = hermitian_one_point_basis(q, s);
    let genus = model.genus();
    let mut g = Divisor::single(model.place_at_infinity(), a_inf);
    for alpha in field.elements() {
        if field.add(field.pow(alpha, q), alpha) == 0 {
            g.add_term(model.place(vec![alpha, 0]), beta);
        }
    }
    check_dimension(basis.len(), g.degree(), genus)?;
    let mut rows = Vec::with_capacity(basis.len());
    for &(a, b) in &basis {
        let exps = [a as i64, b as i64 - beta];
        let row = points
            .iter()
            .map(|p| model.evaluate_monomial(&exps, p))
            .collect::<Result<Vec<u32>, _>>()?;
        rows.push(row);
    }
    let generator = MatGF::from_rows(field, points.len(), &rows)?;
    let columns: Vec<Place> = points.into_iter().map(|p| model.place(p)).collect();
    let d = Divisor::sum_of(columns.iter().cloned());
    params.insert("A".into(), json!(a_inf));
    params.insert("beta".into(), json!(beta));
    params.insert("shifted_degree".into(), json!(s));
    params.insert("basis".into(), json!(basis));
    let provenance = Provenance {
        family: family.into(),
        params,
        divisors: CodeDivisors { d, g },
        genus,
    };
    LinearCode::new(generator, columns, provenance)
}

/// `½(q³ + q² − 2q − 2)`, the degree of `G` in the Hermitian family.
pub fn hermitian_isodual_degree(q: u64) -> i64 {
    let q = q as i64;
    (q * q * q + q * q - 2 * q - 2) / 2
}

/// Multi-point Hermitian iso-dual code `C_L(D, (s − qβ)Q_∞ + β·ΣQᵢ)` on all
/// `q³ − q` places with `y ≠ 0`.
pub fn build_hermitian_isodual(q: u64, beta: i64) -> Result<LinearCode, CodeError> {
    if beta == 0 {
        return Err(CodeError::InvalidParameter("beta must be nonzero".into()));
    }
    let model = CurveModel::hermitian(q)?;
    let field = &model.field;
    let points: Vec<Vec<u32>> = field
        .elements()
        .filter(|&a| field.add(field.pow(a, q), a) != 0)
        .flat_map(|a| model.points_over(a))
        .collect();
    let s = hermitian_isodual_degree(q);
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(q));
    hermitian_shift_code(
        &model,
        q,
        points,
        s - q as i64 * beta,
        beta,
        "hermitian",
        params,
    )
}

/// Exponent `2β + 2 − q²` of the certificate function `z = y^{2β+2−q²}`.
pub fn hermitian_certificate_exponent(q: u64, beta: i64) -> i64 {
    2 * beta + 2 - (q * q) as i64
}

/// `x = (z(P₁), …, z(Pₙ))` for `z = y^{2β+2−q²}` on a Hermitian code.
pub fn hermitian_certificate(code: &LinearCode, q: u64, beta: i64) -> Result<Vec<u32>, CodeError> {
    let e = hermitian_certificate_exponent(q, beta);
    code.columns
        .iter()
        .map(|p| {
            let y = p
                .coords()
                .and_then(|c| c.get(1).copied())
                .ok_or_else(|| CodeError::InvalidParameter(format!("{p} has no y coordinate")))?;
            Ok(code.field.pow_signed(y, e)?)
        })
        .collect()
}

/// `W = −D + (q²−2)·Σ_{S0} Q_{α,0} + (q²−2)·Q_∞`, the divisor of the
/// differential used for the Hermitian dual.
pub fn hermitian_differential_divisor(q: u64, d: &Divisor) -> Result<Divisor, CodeError> {
    let model = CurveModel::hermitian(q)?;
    let field = &model.field;
    let c = (q * q) as i64 - 2;
    let mut w = d.scale(-1);
    w.add_term(model.place_at_infinity(), c);
    for alpha in field.elements() {
        if field.add(field.pow(alpha, q), alpha) == 0 {
            w.add_term(model.place(vec![alpha, 0]), c);
        }
    }
    Ok(w)
}

/// The `(q² − q)/2` α chosen for step 1: the smallest codes with `α^q + α ≠ 0`.
pub fn curve_x_step1_alphas(q: u64) -> Result<Vec<u32>, CodeError> {
    let model = CurveModel::hermitian(q)?;
    let field = &model.field;
    let want = ((q * q - q) / 2) as usize;
    Ok(field
        .elements()
        .filter(|&a| field.add(field.pow(a, q), a) != 0)
        .take(want)
        .collect())
}

/// Step 1 of the curve-X construction: the rational iso-dual code on
/// `(q² − q)/2` places, lifted to the Hermitian field.
pub fn build_curve_x_step1(q: u64) -> Result<LinearCode, CodeError> {
    if q < 4 || !q.is_power_of_two() {
        return Err(CodeError::InvalidParameter(format!(
            "q = {q} must be 2^s with s > 1"
        )));
    }
    let model = CurveModel::hermitian(q)?;
    let alphas = curve_x_step1_alphas(q)?;
    let ext = model.extension_descriptor()?;
    let base = ext.base.clone();
    let d = Divisor::sum_of(alphas.iter().map(|&a| Place::affine(&base, vec![a])));
    let g_coeff = (q * q - q - 4) / 4;
    let g = Divisor::single(Place::infinite(&base), g_coeff as i64);
    let lifted = lift_divisors(&ext, &d, &g)?;

    let q_inf = model.place_at_infinity();
    let a_inf = lifted.g.coeff(&q_inf);
    let finite: Vec<i64> = lifted
        .g
        .terms()
        .filter(|(p, _)| **p != q_inf)
        .map(|(_, c)| c)
        .collect();
    let beta = finite.first().copied().unwrap_or(0);
    if finite.iter().any(|&c| c != beta) {
        return Err(CodeError::InvalidParameter(format!(
            "lifted G = {} is not of the form A·Q_∞ + β·ΣQᵢ",
            lifted.g
        )));
    }
    let points: Vec<Vec<u32>> = alphas.iter().flat_map(|&a| model.points_over(a)).collect();
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(q));
    params.insert("alphas".into(), json!(alphas));
    let code = hermitian_shift_code(&model, q, points, a_inf, beta, "curvex-step1", params)?;
    if code.provenance.divisors.g != lifted.g || code.provenance.divisors.d != lifted.d {
        return Err(CodeError::InvalidParameter(
            "constructed divisors differ from the lift".into(),
        ));
    }
    Ok(code)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    SelfDual,
    IsoDual,
    NotIsoDual,
    Inconclusive { nullity: usize, samples: u32 },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::SelfDual => "SelfDual",
            Verdict::IsoDual => "IsoDual",
            Verdict::NotIsoDual => "NotIsoDual",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoDualCertificate {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub x: Option<Vec<u32>>,
    /// `G·diag(x)·Gᵀ = 0` re-verified for the returned `x`.
    pub residual_ok: bool,
    /// Dimension of `{x : G·diag(x)·Gᵀ = 0}`.
    pub nullity: usize,
    /// Coordinates forced to zero by the linear system.
    pub forced_zero: Vec<usize>,
    /// Whether a supplied vector satisfies the system with no zero entry.
    pub supplied_x_ok: Option<bool>,
    pub seed: u64,
}

/// `G·diag(x)·Gᵀ = 0`.
pub fn twist_annihilates(g: &MatGF, x: &[u32]) -> Result<bool, CodeError> {
    let gx = g.scale_columns(x)?;
    Ok(gx.mul(&g.transpose())?.is_zero())
}

/// Coefficient matrix of `Σ_t G[i,t]·G[j,t]·x_t = 0`. Small codes use every
/// pair `i ≤ j`; large ones use `2n` seeded random products `(aG)∘(bG)`,
/// whose solution set contains the exact one.
fn twist_equations(g: &MatGF, seed: u64) -> Result<MatGF, CodeError> {
    let field = g.field().clone();
    let (k, n) = (g.rows(), g.cols());
    let mut rows = Vec::new();
    if k * (k + 1) / 2 <= 4 * n {
        for i in 0..k {
            for j in i..k {
                rows.push(
                    g.row(i)
                        .iter()
                        .zip(g.row(j))
                        .map(|(&a, &b)| field.mul(a, b))
                        .collect(),
                );
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = field.order();
        for _ in 0..2 * n {
            let a: Vec<u32> = (0..k).map(|_| rng.gen_range(0..order)).collect();
            let b: Vec<u32> = (0..k).map(|_| rng.gen_range(0..order)).collect();
            let ua = g.vec_mul(&a)?;
            let ub = g.vec_mul(&b)?;
            rows.push(ua.iter().zip(&ub).map(|(&s, &t)| field.mul(s, t)).collect());
        }
    }
    Ok(MatGF::from_rows(field, n, &rows)?)
}

fn combine(field: &Field, basis: &MatGF, coeffs: &[u32]) -> Vec<u32> {
    let mut v = vec![0; basis.cols()];
    for (r, &c) in coeffs.iter().enumerate() {
        field.axpy(&mut v, basis.row(r), c);
    }
    v
}

/// Decides whether `C^⊥ = x·C` for some everywhere-nonzero `x`.
pub fn certify_isodual(
    code: &LinearCode,
    supplied_x: Option<&[u32]>,
    seed: u64,
) -> Result<IsoDualCertificate, CodeError> {
    let g = &code.generator;
    let field = code.field.clone();
    let supplied_x_ok = match supplied_x {
        Some(px) if px.len() == code.n => {
            Some(px.iter().all(|&c| c != 0) && twist_annihilates(g, px)?)
        }
        Some(_) => Some(false),
        None => None,
    };
    let mut cert = IsoDualCertificate {
        verdict: Verdict::NotIsoDual,
        x: None,
        residual_ok: false,
        nullity: 0,
        forced_zero: vec![],
        supplied_x_ok,
        seed,
    };
    if code.n != 2 * code.k {
        return Ok(cert);
    }
    let ones = vec![1; code.n];
    if twist_annihilates(g, &ones)? {
        cert.verdict = Verdict::SelfDual;
        cert.x = Some(ones);
        cert.residual_ok = true;
        cert.nullity = twist_equations(g, seed)?.nullspace().rows();
        return Ok(cert);
    }
    let basis = twist_equations(g, seed)?.nullspace();
    let nu = basis.rows();
    cert.nullity = nu;
    cert.forced_zero = (0..code.n)
        .filter(|&t| (0..nu).all(|r| basis.get(r, t) == 0))
        .collect();
    if !cert.forced_zero.is_empty() {
        return Ok(cert);
    }
    let q = field.order() as u64;
    let exhaustive = (q as f64).powi(nu as i32) <= EXHAUSTIVE_LIMIT as f64;
    let mut found = None;
    if exhaustive {
        let total = q.pow(nu as u32);
        for idx in 1..total {
            let mut rest = idx;
            let mut coeffs = vec![0u32; nu];
            for c in coeffs.iter_mut().rev() {
                *c = (rest % q) as u32;
                rest /= q;
            }
            let v = combine(&field, &basis, &coeffs);
            if v.iter().all(|&c| c != 0) && twist_annihilates(g, &v)? {
                found = Some(v);
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..CERTIFY_SAMPLES {
            let coeffs: Vec<u32> = (0..nu).map(|_| rng.gen_range(0..q as u32)).collect();
            let v = combine(&field, &basis, &coeffs);
            if v.iter().all(|&c| c != 0) && twist_annihilates(g, &v)? {
                found = Some(v);
                break;
            }
        }
        if found.is_none() {
            cert.verdict = Verdict::Inconclusive {
                nullity: nu,
                samples: CERTIFY_SAMPLES,
            };
            return Ok(cert);
        }
    }
    if let Some(x) = found {
        cert.residual_ok = twist_annihilates(g, &x)?;
        cert.verdict = Verdict::IsoDual;
        cert.x = Some(x);
    }
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode")]
pub enum DistanceMode {
    Exact { d: usize },
    Bounds { lower: i64, upper: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    #[serde(flatten)]
    pub mode: DistanceMode,
    /// Messages whose codewords were weighed.
    pub codewords: u64,
    /// A message attaining the reported (upper) weight.
    pub witness: Vec<u32>,
    pub elapsed_ms: u64,
    pub seed: u64,
}

impl DistanceReport {
    pub fn exact(&self) -> Option<usize> {
        match self.mode {
            DistanceMode::Exact { d } => Some(d),
            DistanceMode::Bounds { .. } => None,
        }
    }
}

fn weight(v: &[u32]) -> usize {
    v.iter().filter(|&&c| c != 0).count()
}

/// Lightest codeword among messages `(0,…,0,1,prefix,*)`, enumerated with an
/// odometer and incremental codeword updates.
fn scan_shard(g: &MatGF, lead: usize, prefix: Option<u32>) -> (usize, Vec<u32>, u64) {
    let field = g.field();
    let k = g.rows();
    let q = field.order();
    let mut msg = vec![0u32; k];
    msg[lead] = 1;
    let mut cw = g.row(lead).to_vec();
    let free_start = match prefix {
        Some(v) => {
            msg[lead + 1] = v;
            field.axpy(&mut cw, g.row(lead + 1), v);
            lead + 2
        }
        None => lead + 1,
    };
    let mut best = (weight(&cw), msg.clone());
    let mut count = 1u64;
    if free_start >= k {
        return (best.0, best.1, count);
    }
    loop {
        let mut j = k - 1;
        let mut done = false;
        loop {
            let old = msg[j];
            let new = if old + 1 == q { 0 } else { old + 1 };
            msg[j] = new;
            field.axpy(&mut cw, g.row(j), field.sub(new, old));
            if new != 0 {
                break;
            }
            if j == free_start {
                done = true;
                break;
            }
            j -= 1;
        }
        if done {
            break;
        }
        count += 1;
        let w = weight(&cw);
        if w < best.0 {
            best = (w, msg.clone());
        }
    }
    (best.0, best.1, count)
}

/// Minimum distance: exact by projective message enumeration when
/// `|F|^k ≤ cap`, otherwise designed lower bound and sampled upper bound
/// (or `BudgetExceeded` when `require_exact`).
pub fn min_distance(
    code: &LinearCode,
    cap: u64,
    seed: u64,
    require_exact: bool,
) -> Result<DistanceReport, CodeError> {
    let start = Instant::now();
    let g = &code.generator;
    let k = g.rows();
    let q = code.field.order() as u128;
    let needed = q.checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed <= cap as u128 && k > 0 {
        let mut shards = Vec::new();
        for lead in 0..k {
            if lead + 1 < k {
                for v in 0..q as u32 {
                    shards.push((lead, Some(v)));
                }
            } else {
                shards.push((lead, None));
            }
        }
        let results: Vec<(usize, Vec<u32>, u64)> = shards
            .par_iter()
            .map(|&(l, p)| scan_shard(g, l, p))
            .collect();
        let codewords = results.iter().map(|r| r.2).sum();
        let (d, witness, _) = results
            .into_iter()
            .min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)))
            .expect("k > 0");
        return Ok(DistanceReport {
            mode: DistanceMode::Exact { d },
            codewords,
            witness,
            elapsed_ms: start.elapsed().as_millis() as u64,
            seed,
        });
    }
    if require_exact {
        return Err(CodeError::BudgetExceeded { needed, cap });
    }
    let field = &code.field;
    let mut best = (usize::MAX, vec![]);
    for i in 0..k {
        let mut m = vec![0; k];
        m[i] = 1;
        let w = weight(g.row(i));
        if (w, &m) < (best.0, &best.1) {
            best = (w, m);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DISTANCE_SAMPLES {
        let m: Vec<u32> = (0..k).map(|_| rng.gen_range(0..field.order())).collect();
        if m.iter().all(|&c| c == 0) {
            continue;
        }
        let w = weight(&g.vec_mul(&m)?);
        if (w, &m) < (best.0, &best.1) {
            best = (w, m);
        }
    }
    Ok(DistanceReport {
        mode: DistanceMode::Bounds {
            lower: code.designed_distance(),
            upper: best.0,
        },
        codewords: k as u64 + DISTANCE_SAMPLES as u64,
        witness: best.1,
        elapsed_ms: start.elapsed().as_millis() as u64,
        seed,
    })
}

/// Closed-form parameters of a family, with cross-checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamReport {
    pub family: String,
    pub params: BTreeMap<String, i64>,
    pub n: i64,
    pub k: i64,
    /// Designed distance `½(ñ − 2g + 2)` (lifted) or `n − deg G`.
    pub d: i64,
    pub genus: i64,
    pub deg_g: i64,
    /// Other published or derived values for the same quantity, by name.
    pub alternatives: BTreeMap<String, i64>,
}

fn ipow(b: i64, e: u32) -> i64 {
    b.pow(e)
}

fn report(family: &str, params: &[(&str, i64)], n: i64, genus: i64) -> ParamReport {
    let deg_g = (n + 2 * genus - 2) / 2;
    ParamReport {
        family: family.into(),
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        n,
        k: n / 2,
        d: n - deg_g,
        genus,
        deg_g,
        alternatives: BTreeMap::new(),
    }
}

fn suzuki_q0_of(q: i64) -> Option<i64> {
    (1..16)
        .find(|m| 1i64 << (2 * m + 1) == q)
        .map(|m| 1i64 << m)
}

/// Parameter tuples for `hermitian`, `suzuki`, `ggs`, `eab`,
/// `hermitian-cover`, `curvex-step1` and `curvex-step2`.
pub fn param_report(
    family: &str,
    params: &BTreeMap<String, i64>,
) -> Result<ParamReport, CodeError> {
    let get = |k: &str| {
        params
            .get(k)
            .copied()
            .ok_or_else(|| CodeError::InvalidParameter(format!("missing parameter {k}")))
    };
    let r = match family {
        "hermitian" => {
            let q = get("q")?;
            let mut rep = report(family, &[("q", q)], q * q * q - q, q * (q - 1) / 2);
            rep.alternatives
                .insert("closed_form_d".into(), (q * q * (q - 1)) / 2 + 1);
            rep
        }
        "suzuki" => {
            let q = get("q")?;
            let q0 = suzuki_q0_of(q).ok_or_else(|| {
                CodeError::InvalidParameter(format!("q = {q} is not 2^(2m+1), m >= 1"))
            })?;
            let n = q * (q * q * q - q);
            let mut rep = report(family, &[("q", q)], n, q0 * (q - 1));
            rep.alternatives.insert(
                "closed_form_d".into(),
                (ipow(q, 4) - q * q - 2 * q0 * (q - 1) + 2) / 2,
            );
            rep
        }
        "ggs" => {
            let q = get("q")?;
            let rr = get("r")?;
            if rr < 3 || rr % 2 == 0 || q % 2 == 0 {
                return Err(CodeError::InvalidParameter(
                    "GGS needs q odd and r >= 3 odd".into(),
                ));
            }
            let r = rr as u32;
            let m = (ipow(q, r) + 1) / (q + 1);
            let genus = (q * q - 1) * (m - 1) / 2;
            let n = q * q * (ipow(q, r) + 1) * (ipow(q, r - 1) - 1);
            let mut rep = report(family, &[("q", q), ("r", rr)], n, genus);
            rep.alternatives.insert(
                "closed_form_d".into(),
                (ipow(q, 2 * r + 1) - ipow(q, r + 2) + ipow(q, r) - q - 2) / 2,
            );
            rep.alternatives
                .insert("genus_closed_form".into(), (q - 1) * (ipow(q, r) - q) / 2);
            rep
        }
        "eab" => {
            let q = get("qprime")?;
            let m = get("m")?;
            let n0 = get("n")?;
            let genus = (q - 1) * (m - 1) / 2;
            let mut rep = report(family, &[("qprime", q), ("m", m), ("n", n0)], n0 * q, genus);
            rep.alternatives
                .insert("r".into(), (q * (n0 + m - 1) - m - 1) / 2);
            rep.alternatives
                .insert("proposition_d".into(), (m * (n0 - q + 1) + q - 3) / 2);
            rep
        }
        "hermitian-cover" => {
            let q = get("q")?;
            let l = get("l")?;
            let genus = (q - 1) * (l - 1) / 2;
            let mut rep = report(family, &[("q", q), ("l", l)], q * (q - 1) * l, genus);
            rep.alternatives
                .insert("closed_form_d".into(), ((q - 1) * (q - 1) * l + q + 1) / 2);
            rep
        }
        "curvex-step1" => {
            let q = get("q")?;
            let n = (q * q - q) * (q + 1) / 2;
            let mut rep = report(family, &[("q", q)], n, q * (q - 1) / 2);
            rep.alternatives.insert(
                "closed_form_deg_g".into(),
                (q * q * q + 2 * q * q - 3 * q - 4) / 4,
            );
            rep.alternatives
                .insert("closed_form_d".into(), (q * q * q - 2 * q * q + q + 4) / 4);
            rep
        }
        "curvex-step2" => {
            let q = get("q")?;
            let n = (q * q - q) * (q + 1) * (q + 1) / 2;
            let mut rep = report(family, &[("q", q)], n, q * q * q - q);
            rep.alternatives.insert(
                "closed_form_deg_g".into(),
                (ipow(q, 4) + 5 * ipow(q, 3) - ipow(q, 3) - 5 * q - 4) / 4,
            );
            rep.alternatives.insert(
                "closed_form_d".into(),
                (ipow(q, 4) - ipow(q, 3) - q * q + 3 * q + 4) / 4,
            );
            rep
        }
        other => {
            return Err(CodeError::InvalidParameter(format!(
                "unknown family {other}"
            )))
        }
    };
    Ok(r)
}

/// The published 4×8 generator over `F_8` and its column order.
pub mod fixture {
    /// Rows as printed (codes; `α` = 2), in the published column order
    /// `P₁, P₂, P₃, P₄` with `P₂ = α+1`, `P₃ = α²+α+1`, `P₄ = α²+1`.
    pub const EXAMPLE_MATRIX: [[u32; 8]; 4] = [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [0, 0, 3, 3, 7, 7, 5, 5],
        [0, 0, 5, 5, 3, 3, 7, 7],
        [0, 1, 6, 7, 4, 5, 2, 3],
    ];

    /// Published column `j` is canonical column `EXAMPLE_PERMUTATION[j]`.
    pub const EXAMPLE_PERMUTATION: [usize; 8] = [0, 1, 2, 3, 6, 7, 4, 5];

    pub fn rows() -> Vec<Vec<u32>> {
        EXAMPLE_MATRIX.iter().map(|r| r.to_vec()).collect()
    }
}
