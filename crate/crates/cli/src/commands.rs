use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use isodual::codes::{
    build_curve_x_step1, build_eab_lift, build_hermitian_isodual, build_rational_isodual,
    certify_isodual, hermitian_certificate, min_distance, param_report, Verdict,
};
use isodual::curves::{
    curve_x_census, ggs_split_count, hermitian_places, suzuki_split_count, CurveModel,
};
use isodual::cyclotomic::{
    carlitz_field, carlitz_identity_check, carlitz_poly, cyclotomic_code_params, genus_kn,
};
use isodual::field::TABLE_LIMIT;
use isodual::{CodeError, Field, LinearCode, Poly};
use serde_json::{json, Value};

use crate::args::{
    CarlitzArgs, CensusArgs, CensusCurve, CertifyArgs, Cli, Command, ConstructArgs,
    ConstructFamily, DistanceArgs, FieldArgs, GenusArgs, ParamsArgs,
};
use crate::catalog;
use crate::output::{canonical_json, object_rows};
use crate::CliError;

/// A command's result before formatting.
#[derive(Debug, Clone)]
pub struct Report {
    pub value: Value,
    /// Preferred CSV layout; `key,value` rows of `value` otherwise.
    pub csv: Option<Vec<Vec<String>>>,
    pub exit: u8,
}

impl Report {
    fn ok(value: Value) -> Report {
        Report {
            value,
            csv: None,
            exit: 0,
        }
    }

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        self.csv.clone().unwrap_or_else(|| object_rows(&self.value))
    }
}

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Construct(a) => construct(cli, a),
        Command::Certify(a) => certify(cli, a),
        Command::Distance(a) => distance(cli, a),
        Command::Census(a) => census(cli, a),
        Command::Params(a) => params(a),
        Command::Genus(a) => genus(a),
        Command::Carlitz(a) => carlitz(a),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn field_from(a: &FieldArgs) -> Result<Arc<Field>, CliError> {
    let f = match (a.q, a.p, a.m_ext) {
        (Some(q), None, None) => Field::with_order(q)?,
        (None, Some(p), m) => Field::new(p, m.unwrap_or(1), None)?,
        (Some(q), Some(p), m) => {
            let f = Field::new(p, m.unwrap_or(1), None)?;
            if f.order() as u64 != q {
                return Err(usage(format!(
                    "--q {q} disagrees with --p {p} --m-ext {}",
                    m.unwrap_or(1)
                )));
            }
            f
        }
        _ => return Err(usage("give the field as --q or --p [--m-ext]")),
    };
    Ok(Arc::new(f))
}

fn require<T: Copy>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("--{name} is required")))
}

fn parse_alphas(text: &str) -> Result<Option<Vec<u32>>, CliError> {
    if text == "auto" {
        return Ok(None);
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| usage(format!("bad alpha {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn additive_model(
    field: Arc<Field>,
    qprime: Option<u64>,
    mu: u32,
    fx: Option<&str>,
) -> Result<CurveModel, CliError> {
    let qp = qprime.unwrap_or(field.p() as u64);
    let f = Poly::parse(&field, fx.ok_or_else(|| usage("--fx is required"))?)?;
    Ok(CurveModel::elem_abelian(field, qp, mu, f)?)
}

fn build(cli: &Cli, a: &ConstructArgs) -> Result<LinearCode, CliError> {
    let explicit = parse_alphas(&a.alphas)?;
    let code = match a.family {
        ConstructFamily::Rational => {
            let field = field_from(&a.field)?;
            let alphas = match explicit {
                Some(v) => v,
                None => (0..require(a.n, "n")? as u32).collect(),
            };
            build_rational_isodual(field, &alphas)?
        }
        ConstructFamily::Eab => {
            let model = additive_model(field_from(&a.field)?, a.qprime, a.mu, a.fx.as_deref())?;
            let alphas = match explicit {
                Some(v) => v,
                None => model.split_alphas()?,
            };
            build_eab_lift(&model, &alphas)?
        }
        ConstructFamily::HermitianCover => {
            let q = require(a.field.q, "q")?;
            let l = require(a.l, "l")?;
            let field = Arc::new(Field::with_order(q * q)?);
            let model = CurveModel::elem_abelian(field, q, 1, Poly::monomial(1, l as usize))?;
            let alphas = match explicit {
                Some(v) => v,
                None => model
                    .split_alphas()?
                    .into_iter()
                    .filter(|&x| x != 0)
                    .collect(),
            };
            build_eab_lift(&model, &alphas)?
        }
        ConstructFamily::Hermitian => {
            build_hermitian_isodual(require(a.field.q, "q")?, require(a.beta, "beta")?)?
        }
        ConstructFamily::CurvexStep1 => build_curve_x_step1(require(a.field.q, "q")?)?,
        ConstructFamily::Ggs => {
            if !cli.long {
                return Err(usage("GGS construction is long-running; pass --long"));
            }
            let model = CurveModel::ggs_cover(require(a.field.q, "q")?, require(a.r, "r")?)?;
            let alphas = match explicit {
                Some(v) => v,
                None => model
                    .split_alphas()?
                    .into_iter()
                    .filter(|&x| x != 0)
                    .collect(),
            };
            build_eab_lift(&model, &alphas)?
        }
        ConstructFamily::Suzuki => {
            return Err(CodeError::InvalidParameter(
                "Suzuki codes are parameter-only; use `params --family suzuki`".into(),
            )
            .into())
        }
    };
    Ok(code)
}

fn construct(cli: &Cli, a: &ConstructArgs) -> Result<Report, CliError> {
    let code = build(cli, a)?;
    if let Some(dir) = &a.catalog {
        let cert = certify_isodual(&code, None, cli.seed)?;
        let dist = min_distance(&code, cli.cap, cli.seed, false)?;
        catalog::record(dir, &code, cert, dist)?;
    }
    let csv = Some(
        code.generator
            .to_rows()
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect())
            .collect(),
    );
    Ok(Report {
        value: serde_json::to_value(&code)?,
        csv,
        exit: 0,
    })
}

pub fn read_code(path: &Path) -> Result<LinearCode, CliError> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn hermitian_params(code: &LinearCode) -> Option<(u64, i64)> {
    if code.provenance.family != "hermitian" {
        return None;
    }
    let p = &code.provenance.params;
    Some((p.get("q")?.as_u64()?, p.get("beta")?.as_i64()?))
}

fn certify(cli: &Cli, a: &CertifyArgs) -> Result<Report, CliError> {
    let code = read_code(&a.input)?;
    let supplied_x = if a.closed_form_x {
        let (q, beta) = hermitian_params(&code)
            .ok_or_else(|| usage("--closed-form-x needs a hermitian code file"))?;
        Some(hermitian_certificate(&code, q, beta)?)
    } else {
        None
    };
    let cert = certify_isodual(&code, supplied_x.as_deref(), cli.seed)?;
    let exit = match cert.verdict {
        Verdict::Inconclusive { .. } => 3,
        Verdict::NotIsoDual => 4,
        _ => 0,
    };
    let mut value = serde_json::to_value(&cert)?;
    value["field"] = serde_json::to_value(code.field.descriptor())?;
    Ok(Report {
        value,
        csv: None,
        exit,
    })
}

fn distance(cli: &Cli, a: &DistanceArgs) -> Result<Report, CliError> {
    let code = read_code(&a.input)?;
    let report = min_distance(&code, cli.cap, cli.seed, a.exact)?;
    let mut value = serde_json::to_value(&report)?;
    value["designed"] = json!(code.designed_distance());
    value["n"] = json!(code.n);
    value["k"] = json!(code.k);
    Ok(Report::ok(value))
}

fn census(cli: &Cli, a: &CensusArgs) -> Result<Report, CliError> {
    let value = match a.curve {
        CensusCurve::Eab => {
            let model = additive_model(field_from(&a.field)?, a.qprime, a.mu, a.fx.as_deref())?;
            let split = model.split_alphas()?;
            let names: Vec<String> = split.iter().map(|&x| model.field.format(x)).collect();
            let report = model.split_report();
            json!({
                "curve": model.id(),
                "field": model.field.descriptor(),
                "split_alphas": split,
                "split_alphas_repr": names,
                "count": split.len(),
                "rational_places": report.rational_places(),
                "genus": model.genus(),
            })
        }
        CensusCurve::Hermitian => {
            let q = require(a.field.q, "q")?;
            let report = hermitian_places(q)?;
            json!({ "curve": format!("hermitian/{q}"), "q": q, "total": report.rational_places(), "report": report })
        }
        CensusCurve::CurveX => serde_json::to_value(curve_x_census(require(a.field.q, "q")?)?)?,
        CensusCurve::Suzuki => serde_json::to_value(suzuki_split_count(require(a.field.q, "q")?)?)?,
        CensusCurve::Ggs => {
            let q = require(a.field.q, "q")?;
            let r = require(a.r, "r")?;
            let order = q.checked_pow(2 * r).unwrap_or(u64::MAX);
            if order > TABLE_LIMIT as u64 && !cli.long {
                return Err(usage(format!(
                    "F_{order} census is long-running; pass --long"
                )));
            }
            serde_json::to_value(ggs_split_count(q, r)?)?
        }
    };
    Ok(Report::ok(value))
}

fn params(a: &ParamsArgs) -> Result<Report, CliError> {
    match a.family.as_str() {
        "cyclotomic-binary" | "cyclotomic-ternary" => {
            let q = if a.family == "cyclotomic-binary" {
                2
            } else {
                3
            };
            let n = require(a.n, "n")?;
            let p = cyclotomic_code_params(q, n as u64)?;
            Ok(Report::ok(serde_json::to_value(p)?))
        }
        family => {
            let mut m = BTreeMap::new();
            for (k, v) in [("q", a.q), ("r", a.r), ("l", a.l), ("n", a.n), ("m", a.m)] {
                if let Some(v) = v {
                    m.insert(k.to_string(), v);
                }
            }
            Ok(Report::ok(serde_json::to_value(param_report(family, &m)?)?))
        }
    }
}

fn genus(a: &GenusArgs) -> Result<Report, CliError> {
    if let Some(n) = a.n {
        return Ok(Report::ok(serde_json::to_value(genus_kn(
            a.q, n, a.force,
        )?)?));
    }
    let rows = (2..=a.max_n)
        .map(|n| genus_kn(a.q, n, a.force))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = vec![vec![
        "n".to_string(),
        "genus".to_string(),
        "two_g_minus_2".to_string(),
    ]];
    csv.extend(rows.iter().map(|r| {
        vec![
            r.n.to_string(),
            r.genus.to_string(),
            r.two_g_minus_2.to_string(),
        ]
    }));
    let table: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "n": r.n, "genus": r.genus, "two_g_minus_2": r.two_g_minus_2, "m": r.m }))
        .collect();
    Ok(Report {
        value: json!({ "q": a.q, "table": table }),
        csv: Some(csv),
        exit: 0,
    })
}

fn carlitz(a: &CarlitzArgs) -> Result<Report, CliError> {
    if let (Some(i), Some(n)) = (a.i, a.n) {
        return Ok(Report::ok(serde_json::to_value(carlitz_identity_check(
            a.q, i, n,
        )?)?));
    }
    let text =
        a.f.as_deref()
            .ok_or_else(|| usage("give --f, or --i with --n"))?;
    let field = carlitz_field(a.q)?;
    let f = Poly::parse(&field, text)?;
    let rho = carlitz_poly(&field, &f);
    let terms: Vec<Value> = rho
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| json!({ "u_exponent": a.q.pow(i as u32), "coeff": c.to_string() }))
        .collect();
    Ok(Report::ok(
        json!({ "q": a.q, "f": f.to_string(), "terms": terms }),
    ))
}

/// Canonical JSON bytes of a command's report, as written by `--out`.
pub fn render_json(report: &Report) -> Result<String, CliError> {
    canonical_json(&report.value)
}
