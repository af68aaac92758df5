//! One function per subcommand. Each returns the JSON verdict and whether
//! the command's checks passed.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use cone_zeta::algebra::serial;
use cone_zeta::corpus::MAX_BOX;
use cone_zeta::genfun::{euler_sum, GenFunEngine};
use cone_zeta::geometry::{self, in_region};
use cone_zeta::oracle::{self, compare, series_expand, Comparison, TruncatedSeries};
use cone_zeta::zeta::{
    choose_dual_basis, fneq_detect, torus_closed_form, verify_main_theorem, weighted_zeta_with,
    zeta_lattice_sum, FneqCertificate,
};
use cone_zeta::FactoredRational;

use crate::document::{Kind, Problem};
use crate::error::CliError;

pub const DEFAULT_ORDER: i64 = 12;

/// Oracle boxes larger than this are skipped by `verify` rather than scanned.
const VERIFY_BOX_LIMIT: u128 = 40 * MAX_BOX;

pub struct Outcome {
    pub value: Value,
    pub ok: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, ok: true }
    }
}

/// A region given on the command line or in the document, converted to
/// 0-based bounding indices.
pub fn resolve_region(flag: Option<&str>, p: &Problem) -> Result<Option<Vec<usize>>, CliError> {
    let nb = p.zeta.complex.bounding().len();
    let (raw, path) = match flag {
        Some(s) => {
            let s = s.trim();
            let parsed: Result<Vec<usize>, _> = if s.is_empty() || s == "none" {
                Ok(Vec::new())
            } else {
                s.split(',').map(|x| x.trim().parse::<usize>()).collect()
            };
            let v = parsed.map_err(|_| {
                CliError::schema("--region", "expected comma-separated 1-based indices")
            })?;
            (v, "--region")
        }
        None => match &p.options.region {
            Some(v) => (v.clone(), "options.region_I"),
            None => return Ok(None),
        },
    };
    let mut out = Vec::with_capacity(raw.len());
    for x in raw {
        if x == 0 || x > nb {
            return Err(CliError::schema(
                path,
                format!("index {x} is outside 1..={nb}"),
            ));
        }
        out.push(x - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(Some(out))
}

pub fn resolve_order(flag: Option<i64>, p: &Problem) -> Result<i64, CliError> {
    let n = flag.or(p.options.series_order).unwrap_or(DEFAULT_ORDER);
    if n < 0 {
        return Err(CliError::schema("--order", "order must be >= 0"));
    }
    Ok(n)
}

fn one_based(region: &[usize]) -> Vec<usize> {
    region.iter().map(|i| i + 1).collect()
}

fn rational(x: &FactoredRational) -> Value {
    json!({ "canonical": serial::to_json(x), "display": x.to_string() })
}

fn certificate(c: &FneqCertificate) -> Value {
    json!({ "sign": c.sign(), "a": c.a, "b": c.b, "display": c.to_string() })
}

fn comparison(c: &Comparison) -> Value {
    serde_json::to_value(c).expect("comparisons serialize")
}

pub fn genfun(p: &Problem, region: Option<Vec<usize>>) -> Result<Outcome, CliError> {
    let region = region.unwrap_or_default();
    let engine = GenFunEngine::new(&p.zeta.complex)?;
    let g = engine.genfun_region(&region, &p.zeta.spec)?;
    Ok(Outcome::ok(json!({
        "region_I": one_based(&region),
        "genfun": serial::to_json(&g),
        "display": g.to_string(),
    })))
}

pub fn reciprocity(p: &Problem, region: Option<Vec<usize>>) -> Result<Outcome, CliError> {
    let cx = &p.zeta.complex;
    let engine = GenFunEngine::new(cx)?;
    let regions = match region {
        Some(r) => vec![r],
        None => geometry::subsets(cx.bounding().len()),
    };
    let mut checks = Vec::new();
    let mut all = true;
    for r in regions {
        let report = engine.check_reciprocity(&r, &p.zeta.spec)?;
        all &= report.holds;
        checks.push(json!({
            "region_I": one_based(&report.region),
            "complement": one_based(&report.complement),
            "lhs": rational(&report.lhs),
            "rhs": rational(&report.rhs),
            "holds": report.holds,
        }));
    }
    Ok(Outcome {
        value: json!({ "checks": checks, "all_hold": all }),
        ok: all,
    })
}

pub fn zeta(p: &Problem) -> Result<Outcome, CliError> {
    let engine = GenFunEngine::new(&p.zeta.complex)?;
    let z = weighted_zeta_with(&engine, &p.zeta)?;
    Ok(Outcome::ok(json!({
        "zeta": serial::to_json(&z),
        "display": z.to_string(),
    })))
}

/// A functional equation is predicted exactly when the weights admit the
/// dual basis of the main theorem.
fn fneq_expected(p: &Problem) -> bool {
    match &p.kind {
        Kind::Weights(wd) => choose_dual_basis(wd).is_ok() && p.zeta.spec.gamma.is_zero(),
        _ => false,
    }
}

pub fn fneq(p: &Problem) -> Result<Outcome, CliError> {
    let engine = GenFunEngine::new(&p.zeta.complex)?;
    let z = weighted_zeta_with(&engine, &p.zeta)?;
    let found = fneq_detect(&z)?;
    let expected = fneq_expected(p);
    if expected && found.is_none() {
        eprintln!("a functional equation was expected but none holds");
    }
    Ok(Outcome {
        value: json!({ "functional_equation": found.as_ref().map(certificate) }),
        ok: !(expected && found.is_none()),
    })
}

pub fn expand(
    p: &Problem,
    region: Option<Vec<usize>>,
    order: i64,
    supplied: Option<FactoredRational>,
) -> Result<Outcome, CliError> {
    let cx = &p.zeta.complex;
    let engine = GenFunEngine::new(cx)?;
    let (g, brute) = match &region {
        Some(r) => (
            engine.genfun_region(r, &p.zeta.spec)?,
            oracle::lattice_sum_truncated(cx, r, &p.zeta.spec, order)?,
        ),
        None => (
            weighted_zeta_with(&engine, &p.zeta)?,
            zeta_lattice_sum(&p.zeta, order)?,
        ),
    };
    let g = supplied.unwrap_or(g);
    let series = series_expand(&g, order)?;
    let verdict = compare(&series, &brute)?;
    if let Some(m) = &verdict.first_mismatch {
        eprintln!("series and lattice sum differ first at t^{}", m.degree);
    }
    let mut out = json!({
        "order": order,
        "series": series.to_json(),
        "display": series.to_string(),
        "oracle": comparison(&verdict),
    });
    if let Some(r) = region {
        out["region_I"] = json!(one_based(&r));
    }
    Ok(Outcome {
        value: out,
        ok: verdict.equal,
    })
}

fn series_check(g: &FactoredRational, brute: &TruncatedSeries) -> Result<Comparison, CliError> {
    Ok(compare(&series_expand(g, brute.order)?, brute)?)
}

pub fn verify(p: &Problem, order: i64) -> Result<Outcome, CliError> {
    let zp = &p.zeta;
    let cx = &zp.complex;
    let engine = GenFunEngine::new(cx)?;
    let z = weighted_zeta_with(&engine, zp)?;
    let mut checks: BTreeMap<&str, bool> = BTreeMap::new();
    let mut details = Map::new();
    let mut notes: Vec<String> = zp.duplicates.clone();

    // brute-force comparison, per region and for Z itself
    let box_size = oracle::enumeration_box_size(cx, &zp.spec, order)?;
    if box_size <= VERIFY_BOX_LIMIT {
        let sums = oracle::lattice_sums_all_regions(cx, &zp.spec, order)?;
        let mut first_bad = Value::Null;
        let mut all = true;
        for (region, brute) in &sums {
            let g = engine.genfun_region(region, &zp.spec)?;
            let c = series_check(&g, brute)?;
            if !c.equal && first_bad.is_null() {
                first_bad = json!({ "region_I": one_based(region), "comparison": comparison(&c) });
            }
            all &= c.equal;
        }
        checks.insert("oracle_regions", all);
        if !all {
            details.insert("oracle_regions".into(), first_bad);
        }
        let c = series_check(&z, &zeta_lattice_sum(zp, order)?)?;
        checks.insert("oracle_zeta", c.equal);
        if !c.equal {
            details.insert("oracle_zeta".into(), comparison(&c));
        }
    } else {
        notes.push(format!(
            "oracle skipped: {box_size} lattice points at order {order}"
        ));
    }

    // reciprocity and the Euler-sum identity need a simplicial full cone
    // with one bounding hyperplane per dimension
    match cx.require_reciprocity_hypotheses() {
        Ok(_) => {
            let nb = cx.bounding().len();
            let m = cx.dim();
            let mut recip = true;
            let mut euler = true;
            for region in geometry::subsets(nb) {
                let r = engine.check_reciprocity(&region, &zp.spec)?;
                if !r.holds && recip {
                    details.insert(
                        "reciprocity".into(),
                        json!({ "region_I": one_based(&region) }),
                    );
                }
                recip &= r.holds;
                let complement = geometry::complement(nb, &region);
                for f0 in engine.cells() {
                    let want = if in_region(&f0.signs, &complement) {
                        if m.is_multiple_of(2) {
                            1
                        } else {
                            -1
                        }
                    } else {
                        0
                    };
                    euler &= euler_sum(engine.cells(), f0, &region) == want;
                }
            }
            checks.insert("reciprocity", recip);
            checks.insert("euler_sums", euler);
        }
        Err(e) => notes.push(format!("reciprocity not applicable: {e}")),
    }

    let detected = fneq_detect(&z)?;
    let mut cert = detected.as_ref().map(certificate).unwrap_or(Value::Null);
    match &p.kind {
        Kind::Weights(wd) if choose_dual_basis(wd).is_ok() => {
            let report = verify_main_theorem(zp, wd)?;
            checks.insert("translation", report.translation_holds);
            checks.insert("alpha0_pairing_zero", report.alpha0_pairing_zero);
            checks.insert("b_pairing_is_n", report.b_pairing_is_n);
            checks.insert("certificate_matches", report.certificate_matches);
            details.insert("expected_certificate".into(), certificate(&report.expected));
            details.insert("a0".into(), json!(report.a0));
            if !report.translation_failures.is_empty() {
                details.insert("translation".into(), json!(report.translation_failures));
            }
            cert = report
                .detected
                .as_ref()
                .map(certificate)
                .unwrap_or(Value::Null);
        }
        Kind::Weights(_) => {
            notes.push("weights admit no dual basis; no functional equation is predicted".into())
        }
        Kind::Torus(t) => {
            let (_, closed) = torus_closed_form(t.d, t.k)?;
            checks.insert("closed_form", z.eq_rational(&closed));
            checks.insert("no_functional_equation", detected.is_none());
        }
        Kind::Complex => {}
    }

    let all_pass = checks.values().all(|b| *b);
    Ok(Outcome {
        value: json!({
            "checks": checks,
            "all_pass": all_pass,
            "certificate": cert,
            "zeta": rational(&z),
            "order": order,
            "details": details,
            "notes": notes,
        }),
        ok: all_pass,
    })
}
