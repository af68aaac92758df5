//! Rational hyperplanes, polyhedral cell complexes and their cells.

pub mod cone;
pub mod triangulate;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, dot, rank};
use crate::lp::sign_region_feasible;
use crate::par;

pub use cone::{extreme_rays, is_simple, is_simplicial, lattice_index, PolyCone};
pub use triangulate::{triangulate, triangulate_rays, Simplex};

/// A linear hyperplane `{x : n.x = 0}` with a fixed primitive normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hyperplane {
    normal: Vec<i64>,
}

impl Hyperplane {
    /// Reduces the normal to a primitive vector, keeping its direction.
    pub fn new(normal: Vec<i64>) -> Result<Self> {
        if linalg::is_zero(&normal) {
            return Err(Error::Hyperplane("zero normal".into()));
        }
        Ok(Hyperplane {
            normal: linalg::primitive(&normal),
        })
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn sign_of(&self, x: &[i64]) -> Sign {
        Sign::of(dot(&self.normal, x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(v: i64) -> Sign {
        match v.signum() {
            -1 => Sign::Neg,
            0 => Sign::Zero,
            _ => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }

    pub fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '-' => Some(Sign::Neg),
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Pos),
            _ => None,
        }
    }
}

/// Signs of a region with respect to the bounding (`0`/`+`) and internal
/// (`-`/`0`/`+`) hyperplanes of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    pub bounding: Vec<Sign>,
    pub internal: Vec<Sign>,
}

impl SignVector {
    pub fn all(&self) -> impl Iterator<Item = Sign> + '_ {
        self.bounding.iter().chain(&self.internal).copied()
    }

    pub fn parse(bounding: &str, internal: &str) -> Result<SignVector> {
        let parse = |s: &str| {
            s.chars()
                .map(|c| {
                    Sign::from_symbol(c)
                        .ok_or_else(|| Error::Parameter(format!("bad sign symbol {c:?}")))
                })
                .collect::<Result<Vec<_>>>()
        };
        Ok(SignVector {
            bounding: parse(bounding)?,
            internal: parse(internal)?,
        })
    }

    pub fn bounding_str(&self) -> String {
        self.bounding.iter().map(|s| s.symbol()).collect()
    }

    pub fn internal_str(&self) -> String {
        self.internal.iter().map(|s| s.symbol()).collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]", self.bounding_str(), self.internal_str())
    }
}

/// A relatively open cell of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub signs: SignVector,
    pub dim: usize,
    /// Extreme rays of the closure, primitive and sorted.
    pub rays: Vec<Vec<i64>>,
}

/// A cone `C = ∩ bounding^≥` subdivided by internal hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    dim: usize,
    bounding: Vec<Hyperplane>,
    internal: Vec<Hyperplane>,
}

impl CellComplex {
    pub fn new(dim: usize, bounding: Vec<Hyperplane>, internal: Vec<Hyperplane>) -> Result<Self> {
        for h in bounding.iter().chain(&internal) {
            if h.normal.len() != dim {
                return Err(Error::Dimension(format!(
                    "normal {:?} has length {} in dimension {dim}",
                    h.normal,
                    h.normal.len()
                )));
            }
        }
        for (name, list) in [("bounding", &bounding), ("internal", &internal)] {
            for (i, h) in list.iter().enumerate() {
                if list[..i].contains(h) {
                    return Err(Error::Hyperplane(format!(
                        "duplicate {name} normal {:?}",
                        h.normal
                    )));
                }
            }
        }
        Ok(CellComplex {
            dim,
            bounding,
            internal,
        })
    }

    pub fn from_normals(
        dim: usize,
        bounding: Vec<Vec<i64>>,
        internal: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let b = bounding
            .into_iter()
            .map(Hyperplane::new)
            .collect::<Result<_>>()?;
        let i = internal
            .into_iter()
            .map(Hyperplane::new)
            .collect::<Result<_>>()?;
        Self::new(dim, b, i)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bounding(&self) -> &[Hyperplane] {
        &self.bounding
    }

    pub fn internal(&self) -> &[Hyperplane] {
        &self.internal
    }

    fn hyperplanes(&self) -> impl Iterator<Item = &Hyperplane> {
        self.bounding.iter().chain(&self.internal)
    }

    /// The closed cone `C`.
    pub fn cone(&self) -> PolyCone {
        PolyCone::new(
            self.dim,
            Vec::new(),
            self.bounding.iter().map(|h| h.normal.clone()).collect(),
        )
    }

    /// Sign vector of the cell containing `x`, or `None` if `x ∉ C`.
    pub fn locate(&self, x: &[i64]) -> Option<SignVector> {
        let bounding: Vec<Sign> = self.bounding.iter().map(|h| h.sign_of(x)).collect();
        if bounding.contains(&Sign::Neg) {
            return None;
        }
        let internal = self.internal.iter().map(|h| h.sign_of(x)).collect();
        Some(SignVector { bounding, internal })
    }

    fn check_signs(&self, s: &SignVector) -> bool {
        s.bounding.len() == self.bounding.len()
            && s.internal.len() == self.internal.len()
            && !s.bounding.contains(&Sign::Neg)
    }

    /// Nonemptiness of the region described by a sign vector.
    pub fn cell_feasible(&self, s: &SignVector) -> bool {
        if !self.check_signs(s) {
            return false;
        }
        let (eq, strict) = split_constraints(self.hyperplanes(), s.all());
        sign_region_feasible(&eq, &strict, self.dim)
    }

    /// The closed cone `closure(F)` of a nonempty region: strict signs relaxed.
    pub fn closure(&self, s: &SignVector) -> PolyCone {
        let (eq, strict) = split_constraints(self.hyperplanes(), s.all());
        PolyCone::new(self.dim, eq, strict)
    }

    /// Builds the cell record (dimension and rays) for a feasible sign vector.
    pub fn cell(&self, s: &SignVector) -> Result<Cell> {
        let closure = self.closure(s);
        let dim = self.dim - rank(&closure.equalities);
        let rays = closure.extreme_rays()?;
        Ok(Cell {
            signs: s.clone(),
            dim,
            rays,
        })
    }

    /// Feasible sign vectors, sorted.
    ///
    /// Sign vectors are grown one hyperplane at a time; an infeasible prefix
    /// prunes all its extensions.
    pub fn feasible_sign_vectors(&self) -> Vec<SignVector> {
        let planes: Vec<&Hyperplane> = self.hyperplanes().collect();
        let nb = self.bounding.len();
        let mut prefixes: Vec<Vec<Sign>> = vec![Vec::new()];
        for level in 0..planes.len() {
            let choices: &[Sign] = if level < nb {
                &[Sign::Zero, Sign::Pos]
            } else {
                &[Sign::Neg, Sign::Zero, Sign::Pos]
            };
            let candidates: Vec<Vec<Sign>> = prefixes
                .iter()
                .flat_map(|p| {
                    choices.iter().map(move |s| {
                        let mut q = p.clone();
                        q.push(*s);
                        q
                    })
                })
                .collect();
            let planes_so_far = &planes[..=level];
            let keep = par::map(&candidates, |c| {
                let (eq, strict) =
                    split_constraints(planes_so_far.iter().copied(), c.iter().copied());
                sign_region_feasible(&eq, &strict, self.dim)
            });
            prefixes = candidates
                .into_iter()
                .zip(keep)
                .filter_map(|(c, k)| k.then_some(c))
                .collect();
        }
        let mut signs: Vec<SignVector> = prefixes
            .into_iter()
            .map(|mut v| {
                let internal = v.split_off(nb);
                SignVector {
                    bounding: v,
                    internal,
                }
            })
            .collect();
        signs.sort();
        signs
    }

    /// All nonempty cells, in sign-vector order. Requires a pointed cone.
    pub fn enumerate_cells(&self) -> Result<Vec<Cell>> {
        let signs = self.feasible_sign_vectors();
        par::map(&signs, |s| self.cell(s)).into_iter().collect()
    }

    /// Cells contained in `C_I`: bounding sign `+` on every index of `I`.
    pub fn region_cells<'a>(&self, cells: &'a [Cell], region: &[usize]) -> Vec<&'a Cell> {
        cells
            .iter()
            .filter(|c| in_region(&c.signs, region))
            .collect()
    }

    /// Structural checks on the cone of the complex.
    pub fn validate(&self) -> ComplexReport {
        let cone = self.cone();
        let pointed = cone.is_pointed();
        // C is the disjoint union of its bounding-only cells
        let bare = CellComplex {
            dim: self.dim,
            bounding: self.bounding.clone(),
            internal: Vec::new(),
        };
        let cone_dim = bare
            .feasible_sign_vectors()
            .iter()
            .map(|s| self.dim - rank(&bare.closure(s).equalities))
            .max()
            .unwrap_or(0);
        let rays = if pointed {
            cone.extreme_rays().unwrap_or_default()
        } else {
            Vec::new()
        };
        let facets = if pointed && cone_dim == self.dim {
            let mut distinct: Vec<&Hyperplane> = Vec::new();
            for h in &self.bounding {
                let on: Vec<Vec<i64>> = rays
                    .iter()
                    .filter(|r| dot(&h.normal, r) == 0)
                    .cloned()
                    .collect();
                if rank(&on) + 1 == self.dim && !distinct.contains(&h) {
                    distinct.push(h);
                }
            }
            distinct.len()
        } else {
            0
        };
        let simplicial = pointed && cone_dim == self.dim && is_simplicial(&rays, self.dim);
        let simple = simplicial && is_simple(&rays, self.dim);
        ComplexReport {
            pointed,
            dim: cone_dim,
            full_dimensional: cone_dim == self.dim,
            bounding_count: self.bounding.len(),
            bounding_equals_dim: self.bounding.len() == self.dim,
            facet_count: facets,
            simplicial,
            simple,
            rays,
        }
    }

    /// The hypotheses under which the reciprocity identity holds: exactly
    /// `m` bounding hyperplanes cutting out a full-dimensional simplicial cone.
    pub fn require_reciprocity_hypotheses(&self) -> Result<ComplexReport> {
        let r = self.validate();
        if !r.pointed {
            return Err(Error::Hypothesis("cone is not pointed".into()));
        }
        if !r.full_dimensional {
            return Err(Error::Hypothesis(format!(
                "cone has dimension {} < {}",
                r.dim, self.dim
            )));
        }
        if !r.bounding_equals_dim {
            return Err(Error::Hypothesis(format!(
                "{} bounding hyperplanes in dimension {}",
                r.bounding_count, self.dim
            )));
        }
        if !r.simplicial {
            return Err(Error::Hypothesis("cone is not simplicial".into()));
        }
        Ok(r)
    }
}

/// `F1 ≤ F2` (closure containment), by the sign rule: every sign of `F1` is
/// zero or agrees with `F2`.
pub fn face_leq(f1: &Cell, f2: &Cell) -> bool {
    signs_leq(&f1.signs, &f2.signs)
}

pub fn signs_leq(a: &SignVector, b: &SignVector) -> bool {
    a.all().zip(b.all()).all(|(x, y)| x == Sign::Zero || x == y)
}

pub fn in_region(s: &SignVector, region: &[usize]) -> bool {
    region.iter().all(|&i| s.bounding[i] == Sign::Pos)
}

fn split_constraints<'a>(
    planes: impl Iterator<Item = &'a Hyperplane>,
    signs: impl Iterator<Item = Sign>,
) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut eq = Vec::new();
    let mut strict = Vec::new();
    for (h, s) in planes.zip(signs) {
        match s {
            Sign::Zero => eq.push(h.normal.clone()),
            Sign::Pos => strict.push(h.normal.clone()),
            Sign::Neg => strict.push(linalg::neg(&h.normal)),
        }
    }
    (eq, strict)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub pointed: bool,
    pub dim: usize,
    pub full_dimensional: bool,
    pub bounding_count: usize,
    pub bounding_equals_dim: bool,
    pub facet_count: usize,
    pub simplicial: bool,
    pub simple: bool,
    pub rays: Vec<Vec<i64>>,
}

/// Sign vector → index into a cell list.
pub fn cell_index(cells: &[Cell]) -> HashMap<SignVector, usize> {
    cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.signs.clone(), i))
        .collect()
}

/// All subsets of `0..n`, as sorted index lists, in binary-counter order.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u64..(1 << n))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// `[n] \ I`.
pub fn complement(n: usize, region: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !region.contains(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_line() -> CellComplex {
        CellComplex::from_normals(1, vec![vec![1]], vec![]).unwrap()
    }

    fn diagonal() -> CellComplex {
        CellComplex::from_normals(2, vec![vec![1, 0], vec![0, 1]], vec![vec![1, -1]]).unwrap()
    }

    #[test]
    fn half_line_cells() {
        let cells = half_line().enumerate_cells().unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].dim, 0);
        assert!(cells[0].rays.is_empty());
        assert_eq!(cells[1].dim, 1);
        assert_eq!(cells[1].rays, vec![vec![1]]);
    }

    #[test]
    fn diagonal_cells() {
        let cells = diagonal().enumerate_cells().unwrap();
        assert_eq!(cells.len(), 6);
        let dims: Vec<usize> = cells.iter().map(|c| c.dim).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 0).count(), 1);
        assert_eq!(dims.iter().filter(|&&d| d == 1).count(), 3);
        assert_eq!(dims.iter().filter(|&&d| d == 2).count(), 2);
        let diag = cells
            .iter()
            .find(|c| c.signs == SignVector::parse("++", "0").unwrap())
            .unwrap();
        assert_eq!(diag.rays, vec![vec![1, 1]]);
    }

    #[test]
    fn torus_cone_cells() {
        let cx = CellComplex::from_normals(2, vec![vec![1, 0], vec![0, 1], vec![3, -1]], vec![])
            .unwrap();
        let cells = cx.enumerate_cells().unwrap();
        assert_eq!(cells.len(), 4);
        assert_eq!(cx.validate().rays, vec![vec![1, 0], vec![1, 3]]);
    }

    #[test]
    fn feasibility_examples() {
        assert!(half_line().cell_feasible(&SignVector::parse("0", "").unwrap()));
        assert!(!diagonal().cell_feasible(&SignVector::parse("00", "+").unwrap()));
        assert!(diagonal().cell_feasible(&SignVector::parse("++", "0").unwrap()));
    }

    #[test]
    fn face_relation_examples() {
        let cells = half_line().enumerate_cells().unwrap();
        assert!(face_leq(&cells[0], &cells[1]));
        assert!(!face_leq(&cells[1], &cells[0]));
        let cells = diagonal().enumerate_cells().unwrap();
        for c in &cells {
            assert!(face_leq(c, c));
        }
        let up = cells
            .iter()
            .find(|c| c.signs.internal_str() == "+" && c.dim == 2)
            .unwrap();
        let down = cells
            .iter()
            .find(|c| c.signs.internal_str() == "-" && c.dim == 2)
            .unwrap();
        assert!(!face_leq(up, down) && !face_leq(down, up));
    }

    #[test]
    fn regions() {
        let cx = half_line();
        let cells = cx.enumerate_cells().unwrap();
        assert_eq!(cx.region_cells(&cells, &[]).len(), 2);
        let interior = cx.region_cells(&cells, &[0]);
        assert_eq!(interior.len(), 1);
        assert_eq!(interior[0].dim, 1);
    }

    #[test]
    fn validation_reports() {
        let torus = CellComplex::from_normals(2, vec![vec![1, 0], vec![0, 1], vec![3, -1]], vec![])
            .unwrap()
            .validate();
        assert!(torus.pointed && torus.full_dimensional && torus.simplicial);
        assert!(!torus.simple);
        assert_eq!(torus.bounding_count, 3);
        assert_eq!(torus.facet_count, 2);

        let std = CellComplex::from_normals(2, vec![vec![1, 0], vec![0, 1]], vec![])
            .unwrap()
            .validate();
        assert!(std.simple && std.bounding_equals_dim);

        let half = CellComplex::from_normals(2, vec![vec![1, 0]], vec![])
            .unwrap()
            .validate();
        assert!(!half.pointed);
    }

    #[test]
    fn duplicate_normals_rejected() {
        assert!(CellComplex::from_normals(1, vec![vec![1], vec![2]], vec![]).is_err());
        // the same hyperplane may appear once in each list
        assert!(CellComplex::from_normals(1, vec![vec![1]], vec![vec![1]]).is_ok());
    }
}
