use std::cmp::Ordering;
use std::collections::HashMap;

use dashmap::DashMap;
use serde::Serialize;

use super::parallelepiped::parallelepiped_points;
use super::weight::GenFunSpec;
use crate::algebra::{rat, FactoredRational, LaurentPoly, Monomial};
use crate::error::{Error, Result};
use crate::geometry::triangulate::{facet_normal, triangulate};
use crate::geometry::{self, face_leq, Cell, CellComplex, SignVector};
use crate::linalg::{dot, rank};
use crate::par;

/// Generating function of `Σ_{e ∈ Z^m ∩ σ_J} q^{C.e} t^{B.e}` for the
/// half-open simplicial cone spanned by `gens` with the facets opposite the
/// generators in `open` removed.
pub fn genfun_halfopen_simplicial(
    gens: &[Vec<i64>],
    open: &[usize],
    c: &[i64],
    b: &[i64],
) -> Result<FactoredRational> {
    if rank(gens) != gens.len() {
        return Err(Error::DependentGenerators);
    }
    let mut factors = Vec::with_capacity(gens.len());
    for u in gens {
        let bu = dot(b, u);
        if bu <= 0 {
            return Err(Error::NonPositiveDirection {
                direction: u.clone(),
                pairing: bu,
            });
        }
        factors.push((dot(c, u), bu));
    }
    let flags: Vec<bool> = (0..gens.len()).map(|i| open.contains(&i)).collect();
    let mut num = LaurentPoly::zero();
    if gens.is_empty() {
        num = LaurentPoly::one();
    } else {
        for e in parallelepiped_points(gens, &flags) {
            num.add_term(Monomial::new(dot(c, &e), dot(b, &e)), rat(1));
        }
    }
    FactoredRational::new(num, factors)
}

/// Lexicographic sign of `n.(w + ε r_1 + ε² r_2 + ...)`.
fn lex_sign(n: &[i64], w: &[i64], perturb: &[Vec<i64>]) -> Ordering {
    std::iter::once(w)
        .chain(perturb.iter().map(Vec::as_slice))
        .map(|v| dot(n, v).cmp(&0))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Splits the cone spanned by `rays` into disjoint half-open simplicial
/// cones: a placing triangulation, with each facet dropped exactly when a
/// fixed generic interior direction leaves the simplex through it.
pub fn halfopen_decomposition(rays: &[Vec<i64>]) -> Vec<(Vec<Vec<i64>>, Vec<usize>)> {
    if rays.is_empty() {
        return vec![(Vec::new(), Vec::new())];
    }
    let m = rays[0].len();
    let mut w = vec![0i64; m];
    for r in rays {
        for (x, y) in w.iter_mut().zip(r) {
            *x += y;
        }
    }
    triangulate(rays)
        .into_iter()
        .map(|s| {
            let gens: Vec<Vec<i64>> = s.iter().map(|&i| rays[i].clone()).collect();
            let refs: Vec<&[i64]> = gens.iter().map(Vec::as_slice).collect();
            let open = (0..gens.len())
                .filter(|&i| {
                    let n = facet_normal(&refs, i);
                    lex_sign(&n, &w, rays) == Ordering::Less
                })
                .collect();
            (gens, open)
        })
        .collect()
}

/// Generating function of the lattice points of the closed cone spanned by
/// `rays`, weighted by `q^{c.e} t^{b.e}`.
pub fn genfun_closed_cone(rays: &[Vec<i64>], c: &[i64], b: &[i64]) -> Result<FactoredRational> {
    let pieces = halfopen_decomposition(rays);
    let parts: Vec<Result<FactoredRational>> = par::map(&pieces, |(gens, open)| {
        genfun_halfopen_simplicial(gens, open, c, b)
    });
    let parts: Vec<FactoredRational> = parts.into_iter().collect::<Result<_>>()?;
    Ok(FactoredRational::sum(&parts).normalize())
}

type MemoKey = (usize, Vec<i64>, Vec<i64>);

/// Cell generating functions over one complex, memoized per
/// `(cell, exponent vector, B)`.
pub struct GenFunEngine<'a> {
    complex: &'a CellComplex,
    cells: Vec<Cell>,
    index: HashMap<SignVector, usize>,
    proper_faces: Vec<Vec<usize>>,
    memo: DashMap<MemoKey, FactoredRational>,
}

impl<'a> GenFunEngine<'a> {
    pub fn new(complex: &'a CellComplex) -> Result<Self> {
        let cells = complex.enumerate_cells()?;
        let index = geometry::cell_index(&cells);
        let proper_faces = par::map_range(0..cells.len(), |i| {
            (0..cells.len())
                .filter(|&j| j != i && face_leq(&cells[j], &cells[i]))
                .collect()
        });
        Ok(GenFunEngine {
            complex,
            cells,
            index,
            proper_faces,
            memo: DashMap::new(),
        })
    }

    pub fn complex(&self) -> &CellComplex {
        self.complex
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_position(&self, signs: &SignVector) -> Option<usize> {
        self.index.get(signs).copied()
    }

    /// `Σ_{e ∈ Z^m ∩ F} q^{c.e} t^{b.e}` over the open cell `F`, as the
    /// closed-cone series minus the series of the proper faces.
    fn open_cell(&self, idx: usize, c: &[i64], b: &[i64]) -> Result<FactoredRational> {
        let key = (idx, c.to_vec(), b.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let closed = genfun_closed_cone(&self.cells[idx].rays, c, b)?;
        let mut faces = Vec::with_capacity(self.proper_faces[idx].len());
        for &j in &self.proper_faces[idx] {
            faces.push(self.open_cell(j, c, b)?);
        }
        let value = closed.sub(&FactoredRational::sum(&faces)).normalize();
        // concurrent callers compute identical values; keep the first
        let stored = self.memo.entry(key).or_insert(value);
        Ok(stored.clone())
    }

    /// `E_F(q,t)` for the cell with signs `signs`.
    pub fn genfun_cell(&self, signs: &SignVector, spec: &GenFunSpec) -> Result<FactoredRational> {
        let idx = self
            .cell_position(signs)
            .ok_or_else(|| Error::Parameter(format!("{signs} is not a cell of the complex")))?;
        self.genfun_cell_at(idx, spec)
    }

    fn genfun_cell_at(&self, idx: usize, spec: &GenFunSpec) -> Result<FactoredRational> {
        let c = spec.exponent(&self.cells[idx].signs)?;
        self.open_cell(idx, &c, &spec.b)
    }

    /// `E_{C_I} = Σ_{F ∈ F_I} E_F` for a region `I`: 0-based indices of the
    /// bounding hyperplanes that are strictly positive on every cell.
    pub fn genfun_region(&self, region: &[usize], spec: &GenFunSpec) -> Result<FactoredRational> {
        spec.validate(self.complex)?;
        let members: Vec<usize> = (0..self.cells.len())
            .filter(|&i| geometry::in_region(&self.cells[i].signs, region))
            .collect();
        let parts: Vec<Result<FactoredRational>> =
            par::map(&members, |&i| self.genfun_cell_at(i, spec));
        let parts: Vec<FactoredRational> = parts.into_iter().collect::<Result<_>>()?;
        Ok(FactoredRational::sum(&parts).normalize())
    }

    /// Evaluates both sides of `E_{C_I}(q^-1,t^-1) = (-1)^m E_{C_{[m]∖I}}(q,t)`.
    pub fn check_reciprocity(
        &self,
        region: &[usize],
        spec: &GenFunSpec,
    ) -> Result<ReciprocityReport> {
        self.complex.require_reciprocity_hypotheses()?;
        let m = self.complex.dim();
        let n = self.complex.bounding().len();
        if let Some(&bad) = region.iter().find(|&&i| i >= n) {
            return Err(Error::Parameter(format!(
                "region index {bad} out of range for {n} bounding hyperplanes"
            )));
        }
        let complement = geometry::complement(n, region);
        let lhs = self
            .genfun_region(region, spec)?
            .invert_variables()
            .normalize();
        let mut rhs = self.genfun_region(&complement, spec)?;
        if m % 2 == 1 {
            rhs = rhs.neg();
        }
        let holds = lhs.eq_rational(&rhs);
        Ok(ReciprocityReport {
            region: region.to_vec(),
            complement,
            lhs,
            rhs,
            holds,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReciprocityReport {
    pub region: Vec<usize>,
    pub complement: Vec<usize>,
    #[serde(serialize_with = "crate::algebra::serial::serialize")]
    pub lhs: FactoredRational,
    #[serde(serialize_with = "crate::algebra::serial::serialize")]
    pub rhs: FactoredRational,
    pub holds: bool,
}

/// `E_F` for a single cell; builds a throwaway engine.
pub fn genfun_cell(
    cx: &CellComplex,
    signs: &SignVector,
    spec: &GenFunSpec,
) -> Result<FactoredRational> {
    GenFunEngine::new(cx)?.genfun_cell(signs, spec)
}

pub fn genfun_region(
    cx: &CellComplex,
    region: &[usize],
    spec: &GenFunSpec,
) -> Result<FactoredRational> {
    GenFunEngine::new(cx)?.genfun_region(region, spec)
}

pub fn check_reciprocity(
    cx: &CellComplex,
    region: &[usize],
    spec: &GenFunSpec,
) -> Result<ReciprocityReport> {
    GenFunEngine::new(cx)?.check_reciprocity(region, spec)
}

/// `Σ (-1)^{dim F}` over the cells `F ∈ F_I` having `face` as a face.
pub fn euler_sum(cells: &[Cell], face: &Cell, region: &[usize]) -> i64 {
    cells
        .iter()
        .filter(|f| geometry::in_region(&f.signs, region) && face_leq(face, f))
        .map(|f| if f.dim % 2 == 0 { 1 } else { -1 })
        .sum()
}
