//! Concrete curve models: place enumeration by root counting, splitting
//! censuses, monomial evaluation and ramification descriptors.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divisor::{ExtensionDescriptor, ExtensionKind, Fiber, FiberEntry, Place};
use crate::field::{prime_power, Field, FieldError};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("InvalidModel: {0}")]
    InvalidModel(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("ZeroCoordinate: negative power of a zero coordinate at {0:?}")]
    ZeroCoordinate(Vec<u32>),
    #[error("ExponentArity: {exps} exponents for {coords} coordinates")]
    ExponentArity { exps: usize, coords: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Rational,
    /// `y^{q'} + μy = f(x)`
    ElemAbelian {
        qprime: u64,
        mu: u32,
        f: Poly,
    },
    /// `y^{q+1} = x^q + x` over `F_{q²}`
    Hermitian {
        q: u64,
    },
    /// `z^{q+1} = y^q + y`, `y^{q+1} = x^q + x` over `F_{q²}`
    CurveX {
        q: u64,
    },
    /// `y^q + y = x^{q₀}(x^q + x)` over `F_{q⁴}`
    SuzukiLocus {
        q: u64,
    },
    /// `y^{q²} − y = x^{(q^r+1)/(q+1)}` over `F_{q^{2r}}`
    #[serde(rename = "ggs-cover")]
    GGSCover {
        q: u64,
        r: u32,
    },
    /// `y^n = f(x)` with `f` squarefree and split, `p ∤ n`
    Kummer {
        n: u64,
        f: Poly,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveModel {
    pub family: Family,
    pub field: Arc<Field>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiberClass {
    Ramified,
    Split,
    NonSplit,
}

/// One base place and the rational places above it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRow {
    /// Base coordinates; empty for the place at infinity.
    pub base: Vec<u32>,
    pub class: FiberClass,
    pub e: u32,
    pub points: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub degree: u32,
    pub rows: Vec<FiberRow>,
}

impl SplitReport {
    pub fn count(&self, class: FiberClass) -> usize {
        self.rows.iter().filter(|r| r.class == class).count()
    }

    /// Rational places of the top curve listed in the report.
    pub fn rational_places(&self) -> usize {
        self.rows.iter().map(|r| r.points.len()).sum()
    }

    /// Every ramified or split row has `Σ e = degree`.
    pub fn multiplicities_consistent(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.class != FiberClass::NonSplit)
            .all(|r| r.e * r.points.len() as u32 == self.degree)
    }
}

fn int_pow(b: u64, e: u32) -> u64 {
    b.checked_pow(e).expect("parameter overflow")
}

fn is_power_of(q: u64, p: u64) -> bool {
    let mut x = q;
    while x > 1 && x % p == 0 {
        x /= p;
    }
    x == 1 && q > 1
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All `t` in the field with `t^n = c`, ascending.
pub fn nth_roots(field: &Field, n: u64, c: u32) -> Vec<u32> {
    field.elements().filter(|&t| field.pow(t, n) == c).collect()
}

/// Suzuki parameter `q₀` with `q = 2q₀²`.
fn suzuki_q0(q: u64) -> Result<u64, CurveError> {
    for m in 1..16 {
        if 1u64 << (2 * m + 1) == q {
            return Ok(1 << m);
        }
    }
    Err(CurveError::InvalidModel(format!(
        "Suzuki needs q = 2^(2m+1) with m >= 1, got {q}"
    )))
}

impl CurveModel {
    pub fn rational(field: Arc<Field>) -> CurveModel {
        CurveModel {
            family: Family::Rational,
            field,
        }
    }

    pub fn elem_abelian(
        field: Arc<Field>,
        qprime: u64,
        mu: u32,
        f: Poly,
    ) -> Result<CurveModel, CurveError> {
        if !is_power_of(qprime, field.p() as u64) || qprime > field.order() as u64 {
            return Err(CurveError::InvalidModel(format!(
                "q' = {qprime} is not a power of {} inside F_{}",
                field.p(),
                field.order()
            )));
        }
        field.check(mu as u64)?;
        if mu == 0 {
            return Err(CurveError::InvalidModel("mu must be nonzero".into()));
        }
        let m = f.degree().unwrap_or(0) as u64;
        if m == 0 || gcd(m, qprime) != 1 {
            return Err(CurveError::InvalidModel(format!(
                "deg f = {m} must be positive and prime to {qprime}"
            )));
        }
        if f.coeffs().iter().any(|&c| c >= field.order()) {
            return Err(CurveError::InvalidModel(
                "coefficient of f outside the field".into(),
            ));
        }
        let kernel = field.additive_roots(qprime, mu, 0);
        if kernel.len() as u64 != qprime {
            return Err(CurveError::InvalidModel(format!(
                "T^{qprime} + {mu}T has {} roots in F_{}, not {qprime}",
                kernel.len(),
                field.order()
            )));
        }
        Ok(CurveModel {
            family: Family::ElemAbelian { qprime, mu, f },
            field,
        })
    }

    pub fn hermitian(q: u64) -> Result<CurveModel, CurveError> {
        prime_power(q)?;
        let field = Arc::new(Field::with_order(q * q)?);
        Ok(CurveModel {
            family: Family::Hermitian { q },
            field,
        })
    }

    pub fn curve_x(q: u64) -> Result<CurveModel, CurveError> {
        prime_power(q)?;
        let field = Arc::new(Field::with_order(q * q)?);
        Ok(CurveModel {
            family: Family::CurveX { q },
            field,
        })
    }

    pub fn suzuki(q: u64) -> Result<CurveModel, CurveError> {
        suzuki_q0(q)?;
        let field = Arc::new(Field::with_order(int_pow(q, 4))?);
        Ok(CurveModel {
            family: Family::SuzukiLocus { q },
            field,
        })
    }

    pub fn ggs_cover(q: u64, r: u32) -> Result<CurveModel, CurveError> {
        prime_power(q)?;
        if r < 3 || r % 2 == 0 {
            return Err(CurveError::InvalidModel(format!(
                "r = {r} must be odd and at least 3"
            )));
        }
        let field = Arc::new(Field::with_order(int_pow(q, 2 * r))?);
        Ok(CurveModel {
            family: Family::GGSCover { q, r },
            field,
        })
    }

    pub fn kummer(field: Arc<Field>, n: u64, f: Poly) -> Result<CurveModel, CurveError> {
        if n < 2 || n % field.p() as u64 == 0 {
            return Err(CurveError::InvalidModel(format!(
                "Kummer degree {n} must be at least 2 and prime to p"
            )));
        }
        let deg = f.degree().unwrap_or(0);
        if deg == 0 || gcd(n, deg as u64) != 1 {
            return Err(CurveError::InvalidModel(format!(
                "deg f = {deg} must be positive and prime to {n}"
            )));
        }
        let roots = field.elements().filter(|&a| f.eval(&field, a) == 0).count();
        if roots != deg {
            return Err(CurveError::InvalidModel(
                "f must split into distinct linear factors".into(),
            ));
        }
        Ok(CurveModel {
            family: Family::Kummer { n, f },
            field,
        })
    }

    /// Short identifier used as the curve name of places.
    pub fn id(&self) -> String {
        let q = self.field.order();
        match &self.family {
            Family::Rational => format!("P1/F{q}"),
            Family::ElemAbelian { qprime, mu, f } => format!("eab/F{q}/y^{qprime}+{mu}y={f}"),
            Family::Hermitian { q } => format!("hermitian/{q}"),
            Family::CurveX { q } => format!("curveX/{q}"),
            Family::SuzukiLocus { q } => format!("suzuki/{q}"),
            Family::GGSCover { q, r } => format!("ggs/{q}/{r}"),
            Family::Kummer { n, f } => format!("kummer/F{q}/y^{n}={f}"),
        }
    }

    /// Identifier of the rational function field below the model.
    pub fn base_id(&self) -> String {
        format!("P1/F{}", self.field.order())
    }

    /// As an additive-polynomial cover `y^{q'} + μy = f(x)` when it is one.
    pub fn as_additive(&self) -> Option<(u64, u32, Poly)> {
        let f = &self.field;
        match &self.family {
            Family::ElemAbelian {
                qprime,
                mu,
                f: poly,
            } => Some((*qprime, *mu, poly.clone())),
            Family::SuzukiLocus { q } => {
                let q0 = suzuki_q0(*q).ok()?;
                let poly = Poly::monomial(1, (q0 + q) as usize)
                    .add(f, &Poly::monomial(1, (q0 + 1) as usize));
                Some((*q, 1, poly))
            }
            Family::GGSCover { q, r } => {
                let m = (int_pow(*q, *r) + 1) / (q + 1);
                Some((q * q, f.neg(1), Poly::monomial(1, m as usize)))
            }
            _ => None,
        }
    }

    pub fn genus(&self) -> i64 {
        match &self.family {
            Family::Rational => 0,
            Family::ElemAbelian { qprime, f, .. } => {
                let m = f.degree().unwrap_or(0) as i64;
                (*qprime as i64 - 1) * (m - 1) / 2
            }
            Family::Hermitian { q } => (q * (q - 1) / 2) as i64,
            Family::CurveX { q } => (q * q * q - q) as i64,
            Family::SuzukiLocus { q } => (suzuki_q0(*q).expect("validated") * (q - 1)) as i64,
            Family::GGSCover { q, r } => {
                let m = (int_pow(*q, *r) + 1) / (q + 1);
                ((q * q - 1) * (m - 1) / 2) as i64
            }
            Family::Kummer { n, f } => {
                let roots = f.degree().unwrap_or(0) as i64;
                (*n as i64 - 1) * (roots - 1) / 2
            }
        }
    }

    /// `[top : rational]` for covers of the line; `[M : F]` for curve X.
    pub fn degree(&self) -> u64 {
        match &self.family {
            Family::Rational => 1,
            Family::Hermitian { q } | Family::CurveX { q } => q + 1,
            Family::Kummer { n, .. } => *n,
            _ => self.as_additive().map(|(qp, _, _)| qp).unwrap_or(1),
        }
    }

    /// Roots of `T^{q'} + μT = f(α)` for additive covers.
    pub fn fiber_roots(&self, alpha: u32) -> Vec<u32> {
        let (qp, mu, f) = self.as_additive().expect("additive cover");
        self.field
            .additive_roots(qp, mu, f.eval(&self.field, alpha))
    }

    /// All α whose fiber has `q'` distinct rational points, ascending.
    pub fn split_alphas(&self) -> Result<Vec<u32>, CurveError> {
        let (qp, mu, f) = self.as_additive().ok_or_else(|| {
            CurveError::InvalidModel(format!(
                "{} is not an additive cover of the line",
                self.id()
            ))
        })?;
        let field = &self.field;
        let mut out: Vec<u32> = if field.has_tables() {
            let images = additive_image_counts(field, qp, mu);
            field
                .elements()
                .filter(|&a| images[f.eval(field, a) as usize] as u64 == qp)
                .collect()
        } else {
            field
                .elements()
                .filter(|&a| field.additive_roots(qp, mu, f.eval(field, a)).len() as u64 == qp)
                .collect()
        };
        out.sort_unstable();
        Ok(out)
    }

    /// Place above `coords` on this curve.
    pub fn place(&self, coords: Vec<u32>) -> Place {
        Place::affine(&self.id(), coords)
    }

    pub fn place_at_infinity(&self) -> Place {
        Place::infinite(&self.id())
    }

    /// Rational places over each α, in canonical order: `(α, β)` pairs.
    pub fn points_over(&self, alpha: u32) -> Vec<Vec<u32>> {
        let field = &self.field;
        match &self.family {
            Family::Rational => vec![vec![alpha]],
            Family::Hermitian { q } | Family::CurveX { q } => {
                let c = field.add(field.pow(alpha, *q), alpha);
                let betas = nth_roots(field, q + 1, c);
                if let Family::Hermitian { .. } = self.family {
                    return betas.into_iter().map(|b| vec![alpha, b]).collect();
                }
                let mut out = Vec::new();
                for b in betas {
                    let cz = field.add(field.pow(b, *q), b);
                    for g in nth_roots(field, q + 1, cz) {
                        out.push(vec![alpha, b, g]);
                    }
                }
                out
            }
            Family::Kummer { n, f } => nth_roots(field, *n, f.eval(field, alpha))
                .into_iter()
                .map(|b| vec![alpha, b])
                .collect(),
            _ => self
                .fiber_roots(alpha)
                .into_iter()
                .map(|b| vec![alpha, b])
                .collect(),
        }
    }

    /// Fiber table over the affine line (plus infinity), from root counting.
    pub fn split_report(&self) -> SplitReport {
        let field = &self.field;
        let degree = self.degree() as u32;
        let mut rows = vec![FiberRow {
            base: vec![],
            class: FiberClass::Ramified,
            e: degree,
            points: vec![vec![]],
        }];
        for alpha in field.elements() {
            let points = match &self.family {
                Family::CurveX { .. } => CurveModel::hermitian_from(self).points_over(alpha),
                _ => self.points_over(alpha),
            };
            let row = if points.len() as u32 == degree {
                FiberRow {
                    base: vec![alpha],
                    class: FiberClass::Split,
                    e: 1,
                    points,
                }
            } else if points.len() == 1 && self.totally_ramified_at(alpha) {
                FiberRow {
                    base: vec![alpha],
                    class: FiberClass::Ramified,
                    e: degree,
                    points,
                }
            } else {
                FiberRow {
                    base: vec![alpha],
                    class: FiberClass::NonSplit,
                    e: 1,
                    points,
                }
            };
            rows.push(row);
        }
        SplitReport { degree, rows }
    }

    fn hermitian_from(model: &CurveModel) -> CurveModel {
        let Family::CurveX { q } = model.family else {
            unreachable!()
        };
        CurveModel {
            family: Family::Hermitian { q },
            field: model.field.clone(),
        }
    }

    fn totally_ramified_at(&self, alpha: u32) -> bool {
        let field = &self.field;
        match &self.family {
            Family::Hermitian { q } | Family::CurveX { q } => {
                field.add(field.pow(alpha, *q), alpha) == 0
            }
            Family::Kummer { f, .. } => f.eval(field, alpha) == 0,
            _ => false,
        }
    }

    /// Ramification data over the rational function field (for curve X: of
    /// `M` over the Hermitian field).
    pub fn extension_descriptor(&self) -> Result<ExtensionDescriptor, CurveError> {
        if let Family::CurveX { q } = self.family {
            return Ok(self.curve_x_descriptor(q));
        }
        let base = self.base_id();
        let top = self.id();
        let degree = self.degree() as u32;
        let (kind, d_inf) = match &self.family {
            Family::Rational => (ExtensionKind::Other, 0),
            Family::ElemAbelian { qprime, f, .. } => {
                let m = f.degree().unwrap_or(0) as u32;
                (ExtensionKind::ArtinSchreier, (*qprime as u32 - 1) * (m + 1))
            }
            Family::GGSCover { .. } => {
                let (qp, _, f) = self.as_additive().expect("additive");
                let m = f.degree().unwrap_or(0) as u32;
                (ExtensionKind::ArtinSchreier, (qp as u32 - 1) * (m + 1))
            }
            Family::SuzukiLocus { q } => {
                let q0 = suzuki_q0(*q)?;
                (
                    ExtensionKind::ArtinSchreier,
                    (2 * (q - 1) * (q0 + 1)) as u32,
                )
            }
            Family::Hermitian { q } => (ExtensionKind::Kummer, *q as u32),
            Family::Kummer { n, .. } => (ExtensionKind::Kummer, *n as u32 - 1),
            Family::CurveX { .. } => unreachable!(),
        };
        let mut fibers = vec![Fiber {
            base: Place::infinite(&base),
            over: vec![FiberEntry {
                place: Place::infinite(&top),
                e: degree,
                d: d_inf,
            }],
        }];
        let mut non_split = Vec::new();
        for row in self.split_report().rows.into_iter().skip(1) {
            let bp = Place::affine(&base, row.base.clone());
            match row.class {
                FiberClass::NonSplit => non_split.push(bp),
                FiberClass::Split => fibers.push(Fiber {
                    base: bp,
                    over: row
                        .points
                        .into_iter()
                        .map(|c| FiberEntry {
                            place: Place::affine(&top, c),
                            e: 1,
                            d: 0,
                        })
                        .collect(),
                }),
                FiberClass::Ramified => fibers.push(Fiber {
                    base: bp,
                    over: row
                        .points
                        .into_iter()
                        .map(|c| FiberEntry {
                            place: Place::affine(&top, c),
                            e: degree,
                            d: d_inf,
                        })
                        .collect(),
                }),
            }
        }
        let ext = ExtensionDescriptor {
            base,
            top,
            degree,
            characteristic: self.field.p(),
            kind,
            fibers,
            non_split,
            base_genus: 0,
            top_genus: self.genus(),
        };
        ext.validate()
            .map_err(|e| CurveError::InvalidModel(e.to_string()))?;
        Ok(ext)
    }

    fn curve_x_descriptor(&self, q: u64) -> ExtensionDescriptor {
        let field = &self.field;
        let herm = CurveModel::hermitian_from(self);
        let base = herm.id();
        let top = self.id();
        let degree = (q + 1) as u32;
        let mut fibers = vec![Fiber {
            base: Place::infinite(&base),
            over: vec![FiberEntry {
                place: Place::infinite(&top),
                e: degree,
                d: q as u32,
            }],
        }];
        let mut non_split = Vec::new();
        for alpha in field.elements() {
            for pt in herm.points_over(alpha) {
                let b = pt[1];
                let cz = field.add(field.pow(b, q), b);
                let zs = nth_roots(field, q + 1, cz);
                let bp = Place::affine(&base, pt.clone());
                let mk = |g: u32| Place::affine(&top, vec![pt[0], pt[1], g]);
                if cz == 0 {
                    fibers.push(Fiber {
                        base: bp,
                        over: vec![FiberEntry {
                            place: mk(0),
                            e: degree,
                            d: q as u32,
                        }],
                    });
                } else if zs.len() as u32 == degree {
                    fibers.push(Fiber {
                        base: bp,
                        over: zs
                            .into_iter()
                            .map(|g| FiberEntry {
                                place: mk(g),
                                e: 1,
                                d: 0,
                            })
                            .collect(),
                    });
                } else {
                    non_split.push(bp);
                }
            }
        }
        ExtensionDescriptor {
            base,
            top,
            degree,
            characteristic: field.p(),
            kind: ExtensionKind::Kummer,
            fibers,
            non_split,
            base_genus: herm.genus(),
            top_genus: self.genus(),
        }
    }

    /// `Π coordsᵢ^{expsᵢ}`; negative exponents need a nonzero coordinate.
    pub fn evaluate_monomial(&self, exps: &[i64], coords: &[u32]) -> Result<u32, CurveError> {
        if exps.len() > coords.len() {
            return Err(CurveError::ExponentArity {
                exps: exps.len(),
                coords: coords.len(),
            });
        }
        let field = &self.field;
        let mut acc = 1;
        for (&e, &c) in exps.iter().zip(coords) {
            let v = field
                .pow_signed(c, e)
                .map_err(|_| CurveError::ZeroCoordinate(coords.to_vec()))?;
            acc = field.mul(acc, v);
        }
        Ok(acc)
    }
}

/// `counts[c] = #{t : t^{q'} + μt = c}` over the whole field.
fn additive_image_counts(field: &Field, qp: u64, mu: u32) -> Vec<u32> {
    let mut counts = vec![0u32; field.order() as usize];
    for t in field.elements() {
        let v = field.add(field.pow(t, qp), field.mul(mu, t));
        counts[v as usize] += 1;
    }
    counts
}

/// Trace census of the Suzuki splitting locus, cross-checked by root counting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuzukiCensus {
    pub q: u64,
    /// `#{α ∈ F_{q⁴} : Tr_{q⁴/q}(α) = 0, α^q + α ≠ 0}`
    pub count: u64,
    pub expected: u64,
    /// How many of the counted α actually split (root counting).
    pub counted_that_split: u64,
    /// All α whose fiber splits completely.
    pub split_total: u64,
    /// Split α with `α^q + α ≠ 0`.
    pub split_outside_fq: u64,
}

impl SuzukiCensus {
    /// Whether enough split places exist for a length-`q(q³ − q)` lift.
    pub fn supports_lift(&self) -> bool {
        self.split_outside_fq >= self.expected
    }
}

pub fn suzuki_split_count(q: u64) -> Result<SuzukiCensus, CurveError> {
    let model = CurveModel::suzuki(q)?;
    let field = &model.field;
    let (qp, mu, f) = model.as_additive().expect("additive");
    let images = field
        .has_tables()
        .then(|| additive_image_counts(field, qp, mu));
    let splits = |a: u32| {
        let c = f.eval(field, a);
        match &images {
            Some(im) => im[c as usize] as u64 == qp,
            None => field.additive_roots(qp, mu, c).len() as u64 == qp,
        }
    };
    let outside_fq = |a: u32| field.add(field.pow(a, q), a) != 0;
    let counted: Vec<u32> = field
        .elements()
        .filter(|&a| field.rel_trace(a, q).expect("F_q is a subfield") == 0 && outside_fq(a))
        .collect();
    let split: Vec<u32> = field.elements().filter(|&a| splits(a)).collect();
    Ok(SuzukiCensus {
        q,
        count: counted.len() as u64,
        expected: q * q * q - q,
        counted_that_split: counted.iter().filter(|&&a| splits(a)).count() as u64,
        split_total: split.len() as u64,
        split_outside_fq: split.iter().filter(|&&a| outside_fq(a)).count() as u64,
    })
}

/// Split α of the GGS cover, excluding `α = 0`, with a trace cross-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GgsCensus {
    pub q: u64,
    pub r: u32,
    pub count: u64,
    pub expected: u64,
    pub trace_agrees: bool,
}

pub fn ggs_split_count(q: u64, r: u32) -> Result<GgsCensus, CurveError> {
    let model = CurveModel::ggs_cover(q, r)?;
    let field = &model.field;
    let split = model.split_alphas()?;
    let (_, _, f) = model.as_additive().expect("additive");
    let by_trace: Vec<u32> = field
        .elements()
        .filter(|&a| {
            field
                .rel_trace(f.eval(field, a), q * q)
                .expect("F_{q²} is a subfield")
                == 0
        })
        .collect();
    let count = split.iter().filter(|&&a| a != 0).count() as u64;
    Ok(GgsCensus {
        q,
        r,
        count,
        expected: (int_pow(q, r) + 1) * (int_pow(q, r - 1) - 1),
        trace_agrees: by_trace == split,
    })
}

/// Rational places of the Hermitian curve over `F_{q²}(x)`.
pub fn hermitian_places(q: u64) -> Result<SplitReport, CurveError> {
    Ok(CurveModel::hermitian(q)?.split_report())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaProfile {
    pub alpha: u32,
    /// `S1` or `S2` by reducibility of `x² + α^q + α` over `F_q`.
    pub class: String,
    pub hermitian_points: usize,
    pub ramified_in_m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveXCensus {
    pub curve: String,
    pub q: u64,
    pub affine: u64,
    pub total: u64,
    pub genus: i64,
    pub s0: usize,
    pub s1: usize,
    pub s2: usize,
    /// Number of α (outside `S0`) by count of ramified Hermitian points above.
    pub ramified_histogram: BTreeMap<usize, usize>,
    /// Whether `S1` α carry exactly 2 ramified points, `S2` α none, and
    /// `|S2| = (q² − q)/2`.
    pub matches_splitting_hypothesis: bool,
    pub profile: Vec<AlphaProfile>,
}

/// Brute-force point count of curve X over `F_{q²}` plus its fiber profile.
pub fn curve_x_census(q: u64) -> Result<CurveXCensus, CurveError> {
    let model = CurveModel::curve_x(q)?;
    let field = &model.field;
    let elems: Vec<u32> = field.elements().collect();
    let affine: u64 = elems
        .par_iter()
        .map(|&x| {
            let hx = field.add(field.pow(x, q), x);
            let mut n = 0u64;
            for &y in &elems {
                if field.pow(y, q + 1) != hx {
                    continue;
                }
                let hy = field.add(field.pow(y, q), y);
                n += elems.iter().filter(|&&z| field.pow(z, q + 1) == hy).count() as u64;
            }
            n
        })
        .sum();
    let ext = model.extension_descriptor()?;
    let genus = crate::divisor::riemann_hurwitz(&ext)
        .map_err(|e| CurveError::InvalidModel(e.to_string()))?;

    let herm = CurveModel::hermitian_from(&model);
    let mut s0 = 0;
    let mut profile = Vec::new();
    for &a in &elems {
        let c = field.add(field.pow(a, q), a);
        if c == 0 {
            s0 += 1;
            continue;
        }
        // x² + c over F_q is reducible iff it has a root in F_q.
        let reducible = elems.iter().any(|&t| {
            field.in_subfield(t, q).unwrap_or(false) && field.add(field.mul(t, t), c) == 0
        });
        let pts = herm.points_over(a);
        let ramified = pts
            .iter()
            .filter(|p| field.add(field.pow(p[1], q), p[1]) == 0)
            .count();
        profile.push(AlphaProfile {
            alpha: a,
            class: if reducible { "S2" } else { "S1" }.to_string(),
            hermitian_points: pts.len(),
            ramified_in_m: ramified,
        });
    }
    let mut histogram = BTreeMap::new();
    for p in &profile {
        *histogram.entry(p.ramified_in_m).or_insert(0) += 1;
    }
    let s1 = profile.iter().filter(|p| p.class == "S1").count();
    let s2 = profile.len() - s1;
    let consistent = profile
        .iter()
        .all(|p| p.ramified_in_m == if p.class == "S1" { 2 } else { 0 });
    let matches = consistent && 2 * s2 as u64 == q * q - q;
    Ok(CurveXCensus {
        curve: "curveX".into(),
        q,
        affine,
        total: affine + 1,
        genus,
        s0,
        s1,
        s2,
        ramified_histogram: histogram,
        matches_splitting_hypothesis: matches,
        profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::{different, riemann_hurwitz};

    fn f8() -> Arc<Field> {
        Arc::new(Field::new(2, 3, None).unwrap())
    }

    fn example_curve() -> CurveModel {
        let f = f8();
        CurveModel::elem_abelian(f.clone(), 2, 1, Poly::parse(&f, "x^3").unwrap()).unwrap()
    }

    #[test]
    fn example_split_set() {
        // {0, α+1, α²+1, α²+α+1}
        assert_eq!(example_curve().split_alphas().unwrap(), vec![0, 3, 5, 7]);
    }

    #[test]
    fn genera() {
        assert_eq!(example_curve().genus(), 1);
        assert_eq!(CurveModel::hermitian(2).unwrap().genus(), 1);
        assert_eq!(CurveModel::curve_x(3).unwrap().genus(), 24);
        assert_eq!(CurveModel::ggs_cover(3, 3).unwrap().genus(), 24);
        assert_eq!(CurveModel::suzuki(8).unwrap().genus(), 14);
    }

    #[test]
    fn model_validation() {
        let f = f8();
        assert!(
            CurveModel::elem_abelian(f.clone(), 2, 1, Poly::parse(&f, "x^2").unwrap()).is_err()
        );
        assert!(
            CurveModel::elem_abelian(f.clone(), 3, 1, Poly::parse(&f, "x^3").unwrap()).is_err()
        );
        assert!(
            CurveModel::elem_abelian(f.clone(), 4, 1, Poly::parse(&f, "x^3").unwrap()).is_err()
        );
        assert!(CurveModel::suzuki(2).is_err());
        assert!(CurveModel::suzuki(4).is_err());
        assert!(CurveModel::ggs_cover(3, 2).is_err());
    }

    #[test]
    fn hermitian_place_counts() {
        for (q, total) in [(2u64, 9usize), (3, 28), (4, 65)] {
            let rep = hermitian_places(q).unwrap();
            assert_eq!(rep.rational_places(), total);
            assert_eq!(rep.count(FiberClass::Ramified), q as usize + 1);
            assert_eq!(rep.count(FiberClass::NonSplit), 0);
            assert!(rep.multiplicities_consistent());
        }
    }

    #[test]
    fn descriptors_agree_with_genus() {
        let models = vec![
            example_curve(),
            CurveModel::hermitian(2).unwrap(),
            CurveModel::hermitian(4).unwrap(),
            CurveModel::curve_x(2).unwrap(),
            CurveModel::curve_x(4).unwrap(),
        ];
        for m in models {
            let ext = m.extension_descriptor().unwrap();
            assert_eq!(riemann_hurwitz(&ext).unwrap(), m.genus(), "{}", m.id());
        }
        assert_eq!(
            different(&example_curve().extension_descriptor().unwrap()).degree(),
            4
        );
        assert_eq!(
            different(
                &CurveModel::hermitian(4)
                    .unwrap()
                    .extension_descriptor()
                    .unwrap()
            )
            .degree(),
            20
        );
        assert_eq!(
            different(
                &CurveModel::curve_x(4)
                    .unwrap()
                    .extension_descriptor()
                    .unwrap()
            )
            .degree(),
            68
        );
    }

    #[test]
    fn example_monomial_values() {
        let m = example_curve();
        assert_eq!(m.evaluate_monomial(&[0, 0], &[5, 2]).unwrap(), 1);
        // y at (α²+1, α) is α
        assert_eq!(m.evaluate_monomial(&[0, 1], &[5, 2]).unwrap(), 2);
        assert!(m.evaluate_monomial(&[0, -1], &[5, 0]).is_err());
        let h = CurveModel::hermitian(2).unwrap();
        let f = &h.field;
        let pt = &h.points_over(2)[0];
        assert_eq!(
            h.evaluate_monomial(&[1, -1], pt).unwrap(),
            f.mul(2, f.inv(pt[1]).unwrap())
        );
    }

    #[test]
    fn curve_x_small() {
        let c = curve_x_census(2).unwrap();
        assert_eq!((c.affine, c.total, c.genus), (16, 17, 6));
        let c = curve_x_census(3).unwrap();
        assert_eq!((c.affine, c.total, c.genus), (81, 82, 24));
        assert!(c.matches_splitting_hypothesis);
    }

    #[test]
    fn suzuki_and_ggs_censuses() {
        let s = suzuki_split_count(8).unwrap();
        assert_eq!(s.count, 504);
        // the trace condition alone does not force splitting
        assert_eq!(s.counted_that_split, 56);
        assert_eq!(s.split_outside_fq, 728);
        assert!(s.supports_lift());
        // Hasse-Weil maximality: 1 + q·split = q⁴ + 1 + 2g·q²
        assert_eq!(1 + 8 * s.split_total, 4096 + 1 + 2 * 14 * 64);
        let g = ggs_split_count(3, 3).unwrap();
        assert_eq!(g.count, 224);
        assert!(g.trace_agrees);
    }

    #[test]
    fn kummer_line_cover() {
        let f3 = Arc::new(Field::new(3, 1, None).unwrap());
        let k = CurveModel::kummer(f3.clone(), 2, Poly::x()).unwrap();
        assert_eq!(k.genus(), 0);
        let ext = k.extension_descriptor().unwrap();
        assert_eq!(riemann_hurwitz(&ext).unwrap(), 0);
        assert!(CurveModel::kummer(f3, 3, Poly::x()).is_err());
    }
}
