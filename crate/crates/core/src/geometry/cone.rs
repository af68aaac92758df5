use itertools::Itertools;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::{self, dot, kernel, rank};

/// A closed polyhedral cone `{x : E x = 0, G x >= 0}` in `R^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCone {
    pub dim: usize,
    pub equalities: Vec<Vec<i64>>,
    pub inequalities: Vec<Vec<i64>>,
}

impl PolyCone {
    pub fn new(dim: usize, equalities: Vec<Vec<i64>>, inequalities: Vec<Vec<i64>>) -> Self {
        PolyCone {
            dim,
            equalities,
            inequalities,
        }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.equalities.iter().all(|e| dot(e, x) == 0)
            && self.inequalities.iter().all(|g| dot(g, x) >= 0)
    }

    /// Pointed iff the lineality space `{E x = 0, G x = 0}` is trivial.
    pub fn is_pointed(&self) -> bool {
        let all: Vec<Vec<i64>> = self
            .equalities
            .iter()
            .chain(&self.inequalities)
            .cloned()
            .collect();
        rank(&all) == self.dim
    }

    /// Minimal generating set of a pointed cone: primitive integer vectors,
    /// sorted lexicographically.
    ///
    /// Each extreme ray is cut out by the equalities together with `k - 1`
    /// independent tight inequalities, where `k` is the dimension of the
    /// equality subspace; every such candidate that satisfies all
    /// inequalities is kept.
    pub fn extreme_rays(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        let m = self.dim;
        let eq_rank = rank(&self.equalities);
        let k = m - eq_rank;
        if k == 0 {
            return Ok(Vec::new());
        }
        // inequalities that are not identically zero on the equality subspace
        let ineq: Vec<&Vec<i64>> = self
            .inequalities
            .iter()
            .filter(|g| {
                let mut rows = self.equalities.clone();
                rows.push((*g).clone());
                rank(&rows) > eq_rank
            })
            .collect();
        let mut rays: Vec<Vec<i64>> = Vec::new();
        for subset in ineq.iter().combinations(k - 1) {
            let mut rows = self.equalities.clone();
            rows.extend(subset.iter().map(|g| (**g).clone()));
            if rank(&rows) != m - 1 {
                continue;
            }
            let ker = kernel(&rows, m);
            debug_assert_eq!(ker.len(), 1);
            let r = &ker[0];
            for cand in [r.clone(), linalg::neg(r)] {
                if ineq.iter().all(|g| dot(g, &cand) >= 0) && !rays.contains(&cand) {
                    rays.push(cand);
                }
            }
        }
        rays.sort();
        Ok(rays)
    }
}

/// Extreme rays of a pointed cone.
pub fn extreme_rays(cone: &PolyCone) -> Result<Vec<Vec<i64>>> {
    cone.extreme_rays()
}

/// Simplicial iff the number of extreme rays equals the dimension.
pub fn is_simplicial(rays: &[Vec<i64>], dim: usize) -> bool {
    rays.len() == dim
}

/// Simple iff simplicial and the rays form a basis of the lattice points of
/// their span.
pub fn is_simple(rays: &[Vec<i64>], dim: usize) -> bool {
    if !is_simplicial(rays, dim) {
        return false;
    }
    if rays.is_empty() {
        return true;
    }
    lattice_index(rays).is_some_and(|d| d == 1)
}

/// `|det|` of the rays written in a basis of `Z^m ∩ span(rays)`; `None` if
/// the rays are dependent.
pub fn lattice_index(rays: &[Vec<i64>]) -> Option<u64> {
    let m = rays.first()?.len();
    if rank(rays) != rays.len() {
        return None;
    }
    let basis = linalg::saturated_basis(rays, m);
    let coords: Vec<Vec<i64>> = rays
        .iter()
        .map(|r| {
            linalg::coordinates(&basis, r)
                .expect("ray lies in its own span")
                .iter()
                .map(|c| {
                    assert!(c.is_integer(), "saturated basis yields integer coordinates");
                    i64::try_from(c.to_integer()).expect("coordinate fits")
                })
                .collect()
        })
        .collect();
    let d = linalg::det(&coords).abs();
    u64::try_from(d).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_cone_rays() {
        let c = PolyCone::new(2, vec![], vec![vec![1, 0], vec![0, 1], vec![3, -1]]);
        assert_eq!(c.extreme_rays().unwrap(), vec![vec![1, 0], vec![1, 3]]);
    }

    #[test]
    fn half_line_and_origin() {
        let c = PolyCone::new(1, vec![], vec![vec![1]]);
        assert_eq!(c.extreme_rays().unwrap(), vec![vec![1]]);
        let c = PolyCone::new(1, vec![], vec![vec![1], vec![-1]]);
        assert_eq!(c.extreme_rays().unwrap(), Vec::<Vec<i64>>::new());
    }

    #[test]
    fn half_plane_is_not_pointed() {
        let c = PolyCone::new(2, vec![], vec![vec![1, 0]]);
        assert_eq!(c.extreme_rays(), Err(Error::NotPointed));
    }

    #[test]
    fn simplicial_and_simple() {
        let rays = vec![vec![1, 0], vec![1, 3]];
        assert!(is_simplicial(&rays, 2));
        assert!(!is_simple(&rays, 2));
        assert!(is_simple(&[vec![1, 0], vec![0, 1]], 2));
        assert!(!is_simplicial(&[vec![1, 0], vec![0, 1], vec![1, 1]], 2));
    }

    #[test]
    fn lower_dimensional_index() {
        // (1,1,0) and (1,-1,0) span a plane; index 2 in its lattice
        assert_eq!(lattice_index(&[vec![1, 1, 0], vec![1, -1, 0]]), Some(2));
        assert_eq!(lattice_index(&[vec![1, 1, 0], vec![0, 1, 0]]), Some(1));
        // a single ray (2,2) is not primitive: index 2 on the diagonal line
        assert_eq!(lattice_index(&[vec![2, 2]]), Some(2));
    }
}
