use std::collections::BTreeMap;

use crate::linalg::{self, dot, kernel, rank};

/// A simplicial cone, as sorted indices into the ray list it came from.
pub type Simplex = Vec<usize>;

/// Normal of the facet of the simplicial cone spanned by `rays` opposite
/// `rays[omit]`, taken inside the span and oriented so it is positive on
/// `rays[omit]`.
pub fn facet_normal(rays: &[&[i64]], omit: usize) -> Vec<i64> {
    let k = rays.len();
    // n = sum c_j r_j with n.r_i = 0 for i != omit
    let gram: Vec<Vec<i64>> = (0..k)
        .filter(|&i| i != omit)
        .map(|i| (0..k).map(|j| dot(rays[i], rays[j])).collect())
        .collect();
    let ker = kernel(&gram, k);
    assert_eq!(ker.len(), 1, "facet_normal: rays must be independent");
    let c = &ker[0];
    let m = rays[0].len();
    let mut n = vec![0i64; m];
    for (cj, r) in c.iter().zip(rays) {
        for (x, y) in n.iter_mut().zip(r.iter()) {
            *x += cj * y;
        }
    }
    let mut n = linalg::primitive(&n);
    if dot(&n, rays[omit]) < 0 {
        n = linalg::neg(&n);
    }
    n
}

/// Placing triangulation of the cone generated by `rays`, inserting rays in
/// the given order. Each new ray either extends the span (cone over every
/// simplex) or is joined to every boundary facet it sees.
///
/// The cone must be pointed. A zero-dimensional input gives no simplices.
pub fn triangulate(rays: &[Vec<i64>]) -> Vec<Simplex> {
    let mut simplices: Vec<Simplex> = vec![Vec::new()];
    let mut span: Vec<Vec<i64>> = Vec::new();
    for (idx, r) in rays.iter().enumerate() {
        if linalg::is_zero(r) {
            continue;
        }
        let mut extended = span.clone();
        extended.push(r.clone());
        if rank(&extended) > span.len() {
            span = extended;
            for s in simplices.iter_mut() {
                s.push(idx);
            }
            continue;
        }
        // boundary facets appear in exactly one simplex
        let mut facets: BTreeMap<Vec<usize>, (usize, usize, usize)> = BTreeMap::new();
        for (si, s) in simplices.iter().enumerate() {
            for omit in 0..s.len() {
                let mut f = s.clone();
                f.remove(omit);
                let e = facets.entry(f).or_insert((0, si, omit));
                e.0 += 1;
            }
        }
        let mut added = Vec::new();
        for (facet, (count, si, omit)) in facets {
            if count != 1 {
                continue;
            }
            let s = &simplices[si];
            let vecs: Vec<&[i64]> = s.iter().map(|&i| rays[i].as_slice()).collect();
            let n = facet_normal(&vecs, omit);
            if dot(&n, r) < 0 {
                let mut ns = facet;
                ns.push(idx);
                added.push(ns);
            }
        }
        simplices.extend(added);
    }
    if span.is_empty() {
        return Vec::new();
    }
    for s in simplices.iter_mut() {
        s.sort_unstable();
    }
    simplices
}

/// The simplices of [`triangulate`] as lists of ray vectors.
pub fn triangulate_rays(rays: &[Vec<i64>]) -> Vec<Vec<Vec<i64>>> {
    triangulate(rays)
        .into_iter()
        .map(|s| s.into_iter().map(|i| rays[i].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplicial_input_is_itself() {
        let rays = vec![vec![1, 0], vec![1, 3]];
        assert_eq!(triangulate(&rays), vec![vec![0, 1]]);
    }

    #[test]
    fn quadrant_with_diagonal() {
        let rays = vec![vec![1, 0], vec![1, 1], vec![0, 1]];
        assert_eq!(
            triangulate_rays(&rays),
            vec![vec![vec![1, 0], vec![1, 1]], vec![vec![1, 1], vec![0, 1]]]
        );
    }

    #[test]
    fn empty_cone() {
        assert!(triangulate(&[]).is_empty());
    }

    #[test]
    fn square_pyramid_splits_in_two() {
        let rays = vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]];
        let t = triangulate(&rays);
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|s| s.len() == 3));
    }

    #[test]
    fn facet_normals_are_oriented() {
        let a = [1i64, 0];
        let b = [1i64, 3];
        let n = facet_normal(&[&a, &b], 0);
        assert_eq!(dot(&n, &b), 0);
        assert!(dot(&n, &a) > 0);
    }
}
