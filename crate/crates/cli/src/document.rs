//! Problem documents: parsing, schema checks, canonical output and the
//! translation into a [`ZetaProblem`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use cone_zeta::geometry::SignVector;
use cone_zeta::weyl::{build_root_system, CartanType, RootSystem};
use cone_zeta::zeta::{build_complex_from_weights, torus_example, WeightDatum, ZetaProblem};
use cone_zeta::{CellComplex, GenFunSpec, PiecewiseWeight};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSection {
    pub dim: usize,
    pub bounding: Vec<Vec<i64>>,
    #[serde(default)]
    pub internal: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusSection {
    pub d: usize,
    pub k: i64,
}

/// `γ` is keyed by sign strings `"<bounding>|<internal>"`, e.g. `"++|-"`.
pub type GammaTable = BTreeMap<String, Vec<i64>>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecSection {
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<i64>>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaTable>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootSystemSection {
    Named {
        #[serde(rename = "type")]
        cartan_type: String,
        rank: usize,
    },
    Simple {
        simple_roots: Vec<Vec<i64>>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series_order: Option<i64>,
    /// 1-based bounding indices.
    #[serde(rename = "region_I", default, skip_serializing_if = "Option::is_none")]
    pub region: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightDatum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus_example: Option<TorusSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<SpecSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_system: Option<RootSystemSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<Options>,
}

/// What the document describes, once checked.
#[derive(Clone, Debug)]
pub enum Kind {
    Complex,
    Weights(WeightDatum),
    Torus(TorusSection),
}

pub struct Problem {
    pub kind: Kind,
    pub zeta: ZetaProblem,
    pub options: Options,
}

const SAFE_INT: i64 = (1 << 53) - 1;

/// Integers given as decimal strings become numbers, so documents may carry
/// values beyond the 53-bit range safely.
fn numbers_from_strings(v: &mut Value) {
    match v {
        Value::String(s) => {
            if let Ok(n) = s.parse::<i64>() {
                *v = Value::from(n);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(numbers_from_strings),
        Value::Object(map) => map.values_mut().for_each(numbers_from_strings),
        _ => {}
    }
}

/// The reverse: integers outside the safe range are written as strings.
pub fn strings_for_big_numbers(v: &mut Value) {
    match v {
        Value::Number(n) => {
            let big = match (n.as_i64(), n.as_u64()) {
                (Some(i), _) => i.abs() > SAFE_INT,
                (None, Some(_)) => true,
                _ => false,
            };
            if big {
                *v = Value::String(n.to_string());
            }
        }
        Value::Array(items) => items.iter_mut().for_each(strings_for_big_numbers),
        Value::Object(map) => map.values_mut().for_each(strings_for_big_numbers),
        _ => {}
    }
}

pub fn render(v: &Value) -> String {
    let mut v = v.clone();
    strings_for_big_numbers(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn parse_document(text: &str) -> Result<ProblemDocument, CliError> {
    let mut raw: Value = serde_json::from_str(text)
        .map_err(|e| CliError::schema("", format!("not valid JSON: {e}")))?;
    numbers_from_strings(&mut raw);
    let doc: ProblemDocument = serde_path_to_error::deserialize(raw).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { String::new() } else { path };
        CliError::schema(&path, e.into_inner().to_string())
    })?;
    doc.check_schema()?;
    Ok(doc)
}

pub fn document_value(doc: &ProblemDocument) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

/// Canonical text of a document: sorted keys, two-space indent, trailing
/// newline. Parsing and re-rendering canonical text gives the same bytes.
#[cfg(test)]
pub fn canonical(doc: &ProblemDocument) -> String {
    render(&document_value(doc))
}

fn check_vectors(path: &str, vs: &[Vec<i64>], len: usize) -> Result<(), CliError> {
    for (i, v) in vs.iter().enumerate() {
        if v.len() != len {
            return Err(CliError::schema(
                &format!("{path}[{i}]"),
                format!("expected {len} entries, found {}", v.len()),
            ));
        }
    }
    Ok(())
}

fn check_nonzero(path: &str, vs: &[Vec<i64>]) -> Result<(), CliError> {
    match vs.iter().position(|v| v.iter().all(|x| *x == 0)) {
        Some(i) => Err(CliError::schema(
            &format!("{path}[{i}]"),
            "zero normal vector",
        )),
        None => Ok(()),
    }
}

pub fn parse_gamma_key(key: &str) -> Option<SignVector> {
    let (b, i) = key.split_once('|').unwrap_or((key, ""));
    SignVector::parse(b, i).ok()
}

impl ProblemDocument {
    pub fn sections(&self) -> usize {
        usize::from(self.complex.is_some())
            + usize::from(self.weights.is_some())
            + usize::from(self.torus_example.is_some())
    }

    /// Ambient dimension, once the schema is known to be sound.
    pub fn dim(&self) -> usize {
        if let Some(c) = &self.complex {
            c.dim
        } else if let Some(w) = &self.weights {
            w.dim()
        } else {
            self.torus_example.map_or(0, |t| t.d)
        }
    }

    /// Structural checks that do not need any geometry.
    pub fn check_schema(&self) -> Result<(), CliError> {
        if self.sections() != 1 {
            return Err(CliError::schema(
                "",
                "exactly one of complex, weights, torus_example is required",
            ));
        }
        if let Some(c) = &self.complex {
            if c.dim == 0 {
                return Err(CliError::schema(
                    "complex.dim",
                    "dimension must be positive",
                ));
            }
            check_vectors("complex.bounding", &c.bounding, c.dim)?;
            check_vectors("complex.internal", &c.internal, c.dim)?;
            check_nonzero("complex.bounding", &c.bounding)?;
            check_nonzero("complex.internal", &c.internal)?;
            let spec = self.spec.as_ref();
            if spec.and_then(|s| s.a.as_ref()).is_none() {
                return Err(CliError::schema(
                    "spec.A",
                    "a complex needs the exponent vector A",
                ));
            }
            if spec.and_then(|s| s.b.as_ref()).is_none() {
                return Err(CliError::schema(
                    "spec.B",
                    "a complex needs the direction B",
                ));
            }
        }
        if let Some(w) = &self.weights {
            let m = w.dim();
            if m == 0 {
                return Err(CliError::schema("weights", "l + d must be positive"));
            }
            check_vectors("weights.weights", &w.weights, m)?;
            check_vectors("weights.fundamental_roots", &w.fundamental_roots, m)?;
            check_vectors(
                "weights.contragredient_dominant",
                &w.contragredient_dominant,
                m,
            )?;
            if w.fundamental_roots.len() != w.l {
                return Err(CliError::schema(
                    "weights.fundamental_roots",
                    format!("expected l = {} roots", w.l),
                ));
            }
            if w.contragredient_dominant.len() != w.r {
                return Err(CliError::schema(
                    "weights.contragredient_dominant",
                    format!("expected r = {} vectors", w.r),
                ));
            }
            if w.components.len() != w.r {
                return Err(CliError::schema(
                    "weights.components",
                    format!("expected r = {} blocks", w.r),
                ));
            }
            for (name, v) in [("det_rho", &w.det_rho), ("alpha0", &w.alpha0)] {
                if v.as_ref().is_some_and(|v| v.len() != m) {
                    return Err(CliError::schema(
                        &format!("weights.{name}"),
                        format!("expected {m} entries"),
                    ));
                }
            }
            if w.l > 0 && self.root_system.is_none() {
                return Err(CliError::schema(
                    "root_system",
                    "weights with l > 0 need a root system",
                ));
            }
        }
        if self.weights.is_some() || self.torus_example.is_some() {
            if let Some(s) = &self.spec {
                if s.a.is_some() || s.b.is_some() {
                    return Err(CliError::schema(
                        "spec",
                        "A and B are derived from the weights; only gamma may be given",
                    ));
                }
            }
        }
        if self.torus_example.is_some() && self.root_system.is_some() {
            return Err(CliError::schema(
                "root_system",
                "the torus example has no root system",
            ));
        }
        let m = self.dim();
        if let Some(s) = &self.spec {
            for (name, v) in [("spec.A", &s.a), ("spec.B", &s.b)] {
                if let Some(v) = v {
                    if v.len() != m {
                        return Err(CliError::schema(name, format!("expected {m} entries")));
                    }
                }
            }
            if let Some(g) = &s.gamma {
                check_gamma_table(g, m, "spec.gamma")?;
            }
        }
        if let Some(RootSystemSection::Simple { simple_roots }) = &self.root_system {
            check_vectors("root_system.simple_roots", simple_roots, m)?;
        }
        if let Some(o) = &self.options {
            if o.series_order.is_some_and(|n| n < 0) {
                return Err(CliError::schema(
                    "options.series_order",
                    "order must be >= 0",
                ));
            }
            if let Some(r) = &o.region {
                if let Some(i) = r.iter().position(|&x| x == 0) {
                    return Err(CliError::schema(
                        &format!("options.region_I[{i}]"),
                        "region indices are 1-based",
                    ));
                }
            }
        }
        Ok(())
    }

    fn root_system(&self) -> Result<RootSystem, CliError> {
        let m = self.dim();
        match &self.root_system {
            None => Ok(RootSystem::from_simple_roots(Vec::new(), m)?),
            Some(RootSystemSection::Named { cartan_type, rank }) => {
                let t: CartanType = cartan_type.parse().map_err(|e: cone_zeta::Error| {
                    CliError::schema("root_system.type", e.to_string())
                })?;
                build_root_system(t, *rank)
                    .map_err(|e| CliError::schema("root_system.rank", e.to_string()))
            }
            Some(RootSystemSection::Simple { simple_roots }) => {
                RootSystem::from_simple_roots(simple_roots.clone(), m)
                    .map_err(|e| CliError::schema("root_system.simple_roots", e.to_string()))
            }
        }
    }

    /// Builds the complex and exponent data. Geometric hypotheses surface as
    /// hypothesis errors, everything structural as schema errors.
    pub fn into_problem(self) -> Result<Problem, CliError> {
        let roots = self.root_system()?;
        let options = self.options.clone().unwrap_or_default();
        let (kind, mut zp) = if let Some(c) = &self.complex {
            let spec_section = self.spec.clone().unwrap_or_default();
            let complex = CellComplex::from_normals(c.dim, c.bounding.clone(), c.internal.clone())
                .map_err(|e| CliError::schema("complex", e.to_string()))?;
            if roots.rank > complex.bounding().len() {
                return Err(CliError::schema(
                    "root_system",
                    "rank exceeds the number of bounding hyperplanes",
                ));
            }
            let spec = GenFunSpec::new(
                spec_section.a.unwrap_or_default(),
                spec_section.b.unwrap_or_default(),
                PiecewiseWeight::Zero,
            );
            spec.validate(&complex)?;
            let zp = ZetaProblem {
                complex,
                spec,
                roots,
                weight_count: 0,
                duplicates: Vec::new(),
            };
            (Kind::Complex, zp)
        } else if let Some(w) = &self.weights {
            if roots.rank != w.l {
                return Err(CliError::schema(
                    "root_system",
                    format!("rank {} does not match l = {}", roots.rank, w.l),
                ));
            }
            (
                Kind::Weights(w.clone()),
                build_complex_from_weights(w, &roots)?,
            )
        } else {
            let t = self.torus_example.expect("one section is present");
            let zp = torus_example(t.d, t.k)
                .map_err(|e| CliError::schema("torus_example", e.to_string()))?;
            (Kind::Torus(t), zp)
        };
        if let Some(g) = self.spec.as_ref().and_then(|s| s.gamma.as_ref()) {
            let gamma = gamma_from_table(g, &zp.complex, "spec.gamma")?;
            zp = zp.with_gamma(gamma)?;
        }
        Ok(Problem {
            kind,
            zeta: zp,
            options,
        })
    }
}

pub fn check_gamma_table(g: &GammaTable, m: usize, path: &str) -> Result<(), CliError> {
    for (key, v) in g {
        if parse_gamma_key(key).is_none() {
            return Err(CliError::schema(
                &format!("{path}.{key}"),
                "keys are sign strings like \"++|-0\"",
            ));
        }
        if v.len() != m {
            return Err(CliError::schema(
                &format!("{path}.{key}"),
                format!("expected {m} entries"),
            ));
        }
    }
    Ok(())
}

/// A sign-keyed table as a weight on the cells of `cx`. Every key must name a
/// cell of the complex; cells not listed get the zero vector.
pub fn gamma_from_table(
    g: &GammaTable,
    cx: &CellComplex,
    path: &str,
) -> Result<PiecewiseWeight, CliError> {
    check_gamma_table(g, cx.dim(), path)?;
    let cells = cx.enumerate_cells()?;
    let mut map = BTreeMap::new();
    for (key, v) in g {
        let s = parse_gamma_key(key).expect("checked above");
        if !cells.iter().any(|c| c.signs == s) {
            return Err(CliError::schema(
                &format!("{path}.{key}"),
                "not a cell of the complex",
            ));
        }
        map.insert(s, v.clone());
    }
    for c in &cells {
        map.entry(c.signs.clone())
            .or_insert_with(|| vec![0; cx.dim()]);
    }
    Ok(PiecewiseWeight::Cells(map))
}

/// The compact torus document, or the same problem spelled out as weights.
pub fn torus_document(d: usize, k: i64, as_weights: bool) -> Result<ProblemDocument, CliError> {
    torus_example(d, k).map_err(|e| CliError::schema("", e.to_string()))?;
    let mut doc = ProblemDocument::default();
    if as_weights {
        doc.weights = Some(WeightDatum::torus_family(d, k)?);
    } else {
        doc.torus_example = Some(TorusSection { d, k });
    }
    Ok(doc)
}
