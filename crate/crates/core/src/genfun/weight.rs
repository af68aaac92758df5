use std::borrow::Cow;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{face_leq, Cell, CellComplex, SignVector};
use crate::linalg::{self, dot};

/// Per-cell integer vectors `C_F` realizing a piecewise-constant weight.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum PiecewiseWeight {
    #[default]
    Zero,
    Cells(BTreeMap<SignVector, Vec<i64>>),
}

impl PiecewiseWeight {
    /// `C_F` for the cell with the given signs; zero vector for [`Self::Zero`].
    pub fn value(&self, signs: &SignVector, dim: usize) -> Option<Cow<'_, [i64]>> {
        match self {
            PiecewiseWeight::Zero => Some(Cow::Owned(vec![0; dim])),
            PiecewiseWeight::Cells(map) => map.get(signs).map(|v| Cow::Borrowed(v.as_slice())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            PiecewiseWeight::Zero => true,
            PiecewiseWeight::Cells(map) => map.values().all(|v| linalg::is_zero(v)),
        }
    }
}

/// Exponent data `A`, `B` and the weight `γ` of a generating function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenFunSpec {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub gamma: PiecewiseWeight,
}

impl GenFunSpec {
    pub fn new(a: Vec<i64>, b: Vec<i64>, gamma: PiecewiseWeight) -> Self {
        GenFunSpec { a, b, gamma }
    }

    /// Lengths match the complex and `B.u > 0` on every extreme ray of `C`.
    pub fn validate(&self, cx: &CellComplex) -> Result<()> {
        let m = cx.dim();
        if self.a.len() != m || self.b.len() != m {
            return Err(Error::Dimension(format!(
                "A and B must have length {m}, got {} and {}",
                self.a.len(),
                self.b.len()
            )));
        }
        let rays = cx.cone().extreme_rays()?;
        for u in rays {
            let pairing = dot(&self.b, &u);
            if pairing <= 0 {
                return Err(Error::NonPositiveDirection {
                    direction: u,
                    pairing,
                });
            }
        }
        Ok(())
    }

    /// `A + C_F` for a cell.
    pub fn exponent(&self, signs: &SignVector) -> Result<Vec<i64>> {
        let c = self
            .gamma
            .value(signs, self.a.len())
            .ok_or_else(|| Error::Parameter(format!("weight is not defined on cell {signs}")))?;
        if c.len() != self.a.len() {
            return Err(Error::Dimension(format!(
                "weight on cell {signs} has length {}",
                c.len()
            )));
        }
        Ok(linalg::add(&self.a, &c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightViolation {
    pub face: String,
    pub cell: String,
    pub ray: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub valid: bool,
    pub missing: Vec<String>,
    pub violations: Vec<WeightViolation>,
}

/// Checks that `C_F - C_F'` vanishes on the span of `F'` for every face
/// pair `F' ≤ F`. The rays of `F'` span it, so testing them suffices.
pub fn validate_weight(cells: &[Cell], gamma: &PiecewiseWeight, dim: usize) -> WeightReport {
    let mut missing = Vec::new();
    let mut violations = Vec::new();
    let values: Vec<Option<Cow<'_, [i64]>>> =
        cells.iter().map(|c| gamma.value(&c.signs, dim)).collect();
    for (c, v) in cells.iter().zip(&values) {
        match v {
            None => missing.push(c.signs.to_string()),
            Some(v) if v.len() != dim => missing.push(c.signs.to_string()),
            _ => {}
        }
    }
    for (i, f) in cells.iter().enumerate() {
        let Some(cf) = &values[i] else { continue };
        for (j, g) in cells.iter().enumerate() {
            if i == j || !face_leq(g, f) {
                continue;
            }
            let Some(cg) = &values[j] else { continue };
            if cg.len() != dim || cf.len() != dim {
                continue;
            }
            let diff = linalg::sub(cf, cg);
            if let Some(r) = g.rays.iter().find(|r| dot(&diff, r) != 0) {
                violations.push(WeightViolation {
                    face: g.signs.to_string(),
                    cell: f.signs.to_string(),
                    ray: r.clone(),
                });
            }
        }
    }
    WeightReport {
        valid: missing.is_empty() && violations.is_empty(),
        missing,
        violations,
    }
}

/// Convenience wrapper enumerating the cells first.
pub fn validate_weight_on(cx: &CellComplex, gamma: &PiecewiseWeight) -> Result<WeightReport> {
    let cells = cx.enumerate_cells()?;
    Ok(validate_weight(&cells, gamma, cx.dim()))
}
