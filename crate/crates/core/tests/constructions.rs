use std::collections::BTreeMap;
use std::sync::Arc;

use isodual::checks;
use isodual::codes::{
    build_curve_x_step1, build_eab_lift, build_hermitian_isodual, build_rational_isodual,
    certify_isodual, hermitian_certificate, min_distance, LinearCode, Verdict, DEFAULT_CAP,
};
use isodual::curves::{curve_x_census, hermitian_places, CurveModel};
use isodual::divisor::{lift_divisors, Divisor, DivisorError, Place};
use isodual::{Field, Poly};

fn cover(q: u64, qp: u64, f: &str) -> CurveModel {
    let field = Arc::new(Field::with_order(q).unwrap());
    let poly = Poly::parse(&field, f).unwrap();
    CurveModel::elem_abelian(field, qp, 1, poly).unwrap()
}

fn cover_code() -> LinearCode {
    let model = cover(9, 3, "x^2");
    let alphas: Vec<u32> = model
        .split_alphas()
        .unwrap()
        .into_iter()
        .filter(|&a| a != 0)
        .collect();
    build_eab_lift(&model, &alphas).unwrap()
}

#[test]
fn hermitian_cover_q3_l2() {
    let code = cover_code();
    assert_eq!((code.n, code.k, code.provenance.genus), (12, 6, 1));
    let cert = certify_isodual(&code, None, 0).unwrap();
    assert!(matches!(cert.verdict, Verdict::IsoDual | Verdict::SelfDual));
    assert!(cert.residual_ok);
    let designed = ((3 - 1) * (3 - 1) * 2 + 3 + 1) / 2;
    assert_eq!(designed, 6);
    assert_eq!(code.designed_distance(), designed);
    let dist = min_distance(&code, DEFAULT_CAP, 0, true).unwrap();
    assert_eq!(dist.codewords, (9u64.pow(6) - 1) / 8);
    assert!(dist.exact().unwrap() as i64 >= designed);
}

#[test]
fn hermitian_q4_selfdual() {
    let code = build_hermitian_isodual(4, 7).unwrap();
    assert_eq!((code.n, code.k), (60, 30));
    let x = hermitian_certificate(&code, 4, 7).unwrap();
    assert!(x.iter().all(|&c| c == 1));
    let cert = certify_isodual(&code, Some(&x), 0).unwrap();
    assert_eq!(cert.verdict, Verdict::SelfDual);
    assert_eq!(cert.supplied_x_ok, Some(true));
    let dist = min_distance(&code, 1 << 16, 0, false).unwrap();
    assert!(dist.exact().is_none());
    let q2 = build_hermitian_isodual(2, 1).unwrap();
    assert_eq!(
        certify_isodual(&q2, None, 0).unwrap().verdict,
        Verdict::SelfDual
    );
}

#[test]
fn curve_x_counts() {
    for (q, total) in [(2u64, 17u64), (3, 82), (4, 257), (5, 626)] {
        let c = curve_x_census(q).unwrap();
        assert_eq!(c.total, total);
        assert_eq!(c.total, q.pow(4) + 1);
        assert_eq!(c.genus, (q * q * q - q) as i64);
    }
}

#[test]
fn hermitian_point_counts() {
    for (q, n) in [(2u64, 9usize), (3, 28), (4, 65)] {
        assert_eq!(hermitian_places(q).unwrap().rational_places(), n);
    }
}

#[test]
fn lifted_codes_meet_isodual_degree() {
    let mut codes = vec![cover_code(), build_curve_x_step1(4).unwrap()];
    for model in checks::small_covers() {
        let split = model.split_alphas().unwrap();
        let even = split.len() - split.len() % 2;
        codes.push(build_eab_lift(&model, &split[..even]).unwrap());
    }
    for q in [2, 3, 4] {
        codes.push(build_hermitian_isodual(q, 1).unwrap());
    }
    for code in &codes {
        checks::riemann_roch(code).unwrap_or_else(|e| panic!("{}: {e}", code.provenance.family));
    }
}

#[test]
fn odd_different_exponent_refused() {
    let f3 = Arc::new(Field::with_order(3).unwrap());
    let kummer = CurveModel::kummer(f3, 2, Poly::x()).unwrap();
    let ext = kummer.extension_descriptor().unwrap();
    let d = Divisor::sum_of([
        Place::affine(&ext.base, vec![1]),
        Place::affine(&ext.base, vec![2]),
    ]);
    let g = Divisor::zero();
    match lift_divisors(&ext, &d, &g) {
        Err(DivisorError::OddDifferentExponent {
            exponent,
            diagnosis,
            ..
        }) => {
            assert_eq!(exponent, 1);
            assert!(!diagnosis.tame_odd_degree && !diagnosis.artin_schreier_odd_char);
        }
        other => panic!("expected OddDifferentExponent, got {other:?}"),
    }

    let herm = CurveModel::hermitian(3).unwrap();
    let ext = herm.extension_descriptor().unwrap();
    assert!(matches!(
        lift_divisors(&ext, &Divisor::zero(), &Divisor::zero()),
        Err(DivisorError::OddDifferentExponent { .. })
    ));
}

#[test]
fn non_split_alpha_rejected() {
    let model = cover(8, 2, "x^3");
    assert!(build_eab_lift(&model, &[0, 1]).is_err());
}

#[test]
fn json_round_trip_keeps_verdict() {
    let code = cover_code();
    let text = serde_json::to_string(&code).unwrap();
    let back: LinearCode = serde_json::from_str(&text).unwrap();
    assert_eq!(back.generator.to_rows(), code.generator.to_rows());
    assert_eq!(back.columns, code.columns);
    assert_eq!(back.provenance.divisors.g, code.provenance.divisors.g);
    let a = certify_isodual(&code, None, 0).unwrap();
    let b = certify_isodual(&back, None, 0).unwrap();
    assert_eq!(a, b);
}

#[test]
fn rational_codes_follow_riemann_roch() {
    let f = Arc::new(Field::with_order(8).unwrap());
    let alphas: Vec<u32> = (0..8).collect();
    let code = build_rational_isodual(f, &alphas).unwrap();
    assert_eq!((code.n, code.k, code.deg_g()), (8, 4, 3));
    checks::riemann_roch(&code).unwrap();
    let d = min_distance(&code, DEFAULT_CAP, 0, true).unwrap();
    assert_eq!(d.exact(), Some(5));
}

#[test]
fn params_are_integers() {
    let mut m = BTreeMap::new();
    m.insert("q".to_string(), 4i64);
    let r = isodual::param_report("hermitian", &m).unwrap();
    assert_eq!((r.n, r.k, r.d), (60, 30, 25));
}
