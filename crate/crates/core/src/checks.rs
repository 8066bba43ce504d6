//! Invariant predicates and seeded random constructions used by the property
//! suites and the acceptance harness.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::codes::{
    build_eab_lift, build_hermitian_isodual, build_rational_isodual, certify_isodual, min_distance,
    CodeDivisors, LinearCode, Provenance, Verdict,
};
use crate::curves::CurveModel;
use crate::divisor::{Divisor, Place};
use crate::field::Field;
use crate::linalg::MatGF;
use crate::poly::Poly;

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Orders covered by the field property suite.
pub const FIELD_ORDERS: [u64; 14] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81, 4096];

pub fn field_axioms(f: &Field, a: u32, b: u32, c: u32) -> Check {
    let q = f.order();
    ensure(a < q && b < q && c < q, || {
        format!("element out of range for F_{q}")
    })?;
    ensure(f.add(a, b) == f.add(b, a), || {
        format!("a+b != b+a for {a},{b}")
    })?;
    ensure(f.mul(a, b) == f.mul(b, a), || {
        format!("ab != ba for {a},{b}")
    })?;
    ensure(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)), || {
        format!("+ not associative at {a},{b},{c}")
    })?;
    ensure(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)), || {
        format!("* not associative at {a},{b},{c}")
    })?;
    ensure(
        f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)),
        || format!("not distributive at {a},{b},{c}"),
    )?;
    ensure(f.add(a, 0) == a && f.mul(a, 1) == a, || {
        format!("identity fails at {a}")
    })?;
    ensure(f.add(a, f.neg(a)) == 0, || {
        format!("additive inverse fails at {a}")
    })?;
    ensure(f.sub(f.add(a, b), b) == a, || {
        format!("subtraction fails at {a},{b}")
    })?;
    if a != 0 {
        let inv = f.inv(a).map_err(|e| e.to_string())?;
        ensure(f.mul(a, inv) == 1, || format!("a·a⁻¹ != 1 at {a}"))?;
        ensure(f.pow(a, q as u64 - 1) == 1, || {
            format!("a^(q−1) != 1 at {a}")
        })?;
    } else {
        ensure(f.inv(0).is_err(), || "0 has an inverse".into())?;
    }
    Ok(())
}

pub fn random_field<R: Rng>(rng: &mut R, orders: &[u64]) -> Arc<Field> {
    let q = *orders.choose(rng).expect("nonempty order list");
    Arc::new(Field::with_order(q).expect("supported order"))
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: Arc<Field>, rows: usize, cols: usize) -> MatGF {
    let q = field.order();
    let data = (0..rows * cols).map(|_| rng.gen_range(0..q)).collect();
    MatGF::from_flat(field, rows, cols, data).expect("consistent shape")
}

/// `rank + nullity = cols`, and every nullspace row is orthogonal to every row.
pub fn rank_nullity(m: &MatGF) -> Check {
    let rank = m.rank();
    let ns = m.nullspace();
    ensure(rank + ns.rows() == m.cols(), || {
        format!("rank {rank} + nullity {} != {}", ns.rows(), m.cols())
    })?;
    ensure(ns.rank() == ns.rows(), || {
        "nullspace rows are dependent".into()
    })?;
    let field = m.field();
    for i in 0..m.rows() {
        for j in 0..ns.rows() {
            let dot = m
                .row(i)
                .iter()
                .zip(ns.row(j))
                .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)));
            ensure(dot == 0, || {
                format!("row {i} not orthogonal to nullspace row {j}")
            })?;
        }
    }
    Ok(())
}

/// `(C^⊥)^⊥ = C` as row spaces.
pub fn double_dual(m: &MatGF) -> Check {
    let dd = m.nullspace().nullspace();
    ensure(m.rowspace_equal(&dd), || {
        "double dual differs from the row space".into()
    })
}

/// `k = deg G + 1 − g` when `deg G > 2g − 2`, with a full-rank generator, and
/// `deg G = ½(n + 2g − 2)` for iso-dual constructions.
pub fn riemann_roch(code: &LinearCode) -> Check {
    let (deg, g) = (code.deg_g(), code.provenance.genus);
    ensure(code.generator.rank() == code.k, || {
        format!("generator rank {} != k = {}", code.generator.rank(), code.k)
    })?;
    if deg > 2 * g - 2 {
        ensure(code.k as i64 == deg + 1 - g, || {
            format!("k = {} but deg G + 1 − g = {}", code.k, deg + 1 - g)
        })?;
    }
    ensure(2 * deg == code.n as i64 + 2 * g - 2, || {
        format!("deg G = {deg} but n = {}, g = {g}", code.n)
    })
}

/// Scaling coordinates by a nonzero vector preserves minimum distance.
pub fn scaling_invariance(code: &LinearCode, x: &[u32], cap: u64) -> Check {
    let d0 = min_distance(code, cap, 0, true)
        .map_err(|e| e.to_string())?
        .exact();
    let scaled = code.scaled(x).map_err(|e| e.to_string())?;
    let d1 = min_distance(&scaled, cap, 0, true)
        .map_err(|e| e.to_string())?
        .exact();
    ensure(d0.is_some() && d0 == d1, || {
        format!("distance {d0:?} became {d1:?} after scaling")
    })
}

/// `Σ_t G[i,t]·G[j,t]·x_t` for every pair, computed directly.
fn residual_is_zero(code: &LinearCode, x: &[u32]) -> bool {
    let (f, g) = (&code.field, &code.generator);
    (0..code.k).all(|i| {
        (i..code.k).all(|j| {
            let s = (0..code.n).fold(0, |acc, t| {
                f.add(acc, f.mul(f.mul(g.get(i, t), g.get(j, t)), x[t]))
            });
            s == 0
        })
    })
}

/// Every vector the certifier returns is nonzero everywhere and annihilates
/// `G·diag(x)·Gᵀ`; definitive negatives come with a reason.
pub fn certifier_sound(code: &LinearCode, seed: u64) -> Check {
    let cert = certify_isodual(code, None, seed).map_err(|e| e.to_string())?;
    match (&cert.verdict, &cert.x) {
        (Verdict::SelfDual | Verdict::IsoDual, Some(x)) => {
            ensure(x.len() == code.n && x.iter().all(|&c| c != 0), || {
                "certificate has a zero entry".into()
            })?;
            ensure(residual_is_zero(code, x), || {
                "certificate fails G·diag(x)·Gᵀ = 0".into()
            })?;
            if cert.verdict == Verdict::SelfDual {
                ensure(x.iter().all(|&c| c == 1), || "SelfDual with x != 1".into())?;
            }
            ensure(cert.residual_ok, || "residual_ok not set".into())
        }
        (Verdict::SelfDual | Verdict::IsoDual, None) => {
            Err("positive verdict without a vector".into())
        }
        (Verdict::NotIsoDual, _) => {
            let reason = code.n != 2 * code.k || !cert.forced_zero.is_empty() || cert.nullity == 0;
            ensure(reason, || "NotIsoDual without a structural reason".into())
        }
        (Verdict::Inconclusive { .. }, _) => Ok(()),
    }
}

fn distinct_sample<R: Rng>(rng: &mut R, pool: &[u32], n: usize) -> Vec<u32> {
    pool.choose_multiple(rng, n).copied().collect()
}

/// A random rational iso-dual code on an even number of distinct places.
pub fn random_rational_code<R: Rng>(rng: &mut R, max_n: usize) -> LinearCode {
    let field = random_field(rng, &[4, 5, 7, 8, 9, 11, 13, 16]);
    let pool: Vec<u32> = field.elements().collect();
    let half = rng.gen_range(2..=(pool.len().min(max_n) / 2));
    let alphas = distinct_sample(rng, &pool, 2 * half);
    build_rational_isodual(field, &alphas).expect("distinct alphas of even count")
}

/// Additive covers small enough for exhaustive checks.
pub fn small_covers() -> Vec<CurveModel> {
    let spec: [(u64, u64, &str); 4] = [(4, 2, "x^3"), (8, 2, "x^3"), (9, 3, "x^2"), (16, 4, "x^5")];
    spec.iter()
        .map(|&(q, qp, f)| {
            let field = Arc::new(Field::with_order(q).expect("supported order"));
            let poly = Poly::parse(&field, f).expect("valid polynomial");
            CurveModel::elem_abelian(field, qp, 1, poly).expect("valid cover")
        })
        .collect()
}

/// A random lift from one of `models` on an even subset of the split places.
pub fn random_lift<R: Rng>(rng: &mut R, models: &[CurveModel]) -> LinearCode {
    let model = models.choose(rng).expect("nonempty model list");
    let split = model.split_alphas().expect("split census");
    let half = rng.gen_range(2..=split.len() / 2);
    let alphas = distinct_sample(rng, &split, 2 * half);
    build_eab_lift(model, &alphas).expect("split alphas lift")
}

/// A random Hermitian iso-dual code for `q ∈ {2, 3}`.
pub fn random_hermitian<R: Rng>(rng: &mut R) -> LinearCode {
    let q = *[2u64, 3].choose(rng).expect("nonempty");
    let beta = loop {
        let b = rng.gen_range(-4i64..=10);
        if b != 0 {
            break b;
        }
    };
    build_hermitian_isodual(q, beta).expect("valid Hermitian parameters")
}

pub fn random_nonzero_vector<R: Rng>(rng: &mut R, field: &Field, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(1..field.order())).collect()
}

/// A random full-rank `k × n` code over a small field, with no geometric origin.
pub fn random_code<R: Rng>(rng: &mut R, k: usize, n: usize) -> LinearCode {
    let field = random_field(rng, &[2, 3, 4, 5, 7, 8, 9]);
    loop {
        let g = random_matrix(rng, field.clone(), k, n);
        if g.rank() < k {
            continue;
        }
        let columns = (0..n as u32)
            .map(|i| Place::affine("random", vec![i]))
            .collect();
        let provenance = Provenance {
            family: "random".into(),
            params: BTreeMap::new(),
            divisors: CodeDivisors {
                d: Divisor::zero(),
                g: Divisor::zero(),
            },
            genus: 0,
        };
        return LinearCode::new(g, columns, provenance).expect("full rank with distinct columns");
    }
}
