use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg;

/// Lattice points of the half-open parallelepiped
/// `{ Σ λ_i u_i : λ_i ∈ [0,1) for closed i, λ_i ∈ (0,1] for open i }`.
///
/// The points of `Z^m ∩ span(u)` modulo the sublattice `Σ Z u_i` are read off
/// a lower Hermite form of the generators in a saturated basis; each coset
/// representative is then shifted into the box.
pub fn parallelepiped_points(gens: &[Vec<i64>], open: &[bool]) -> Vec<Vec<i64>> {
    let k = gens.len();
    let Some(first) = gens.first() else {
        return vec![Vec::new()];
    };
    let m = first.len();
    let basis = linalg::saturated_basis(gens, m);
    assert_eq!(
        basis.len(),
        k,
        "parallelepiped_points: generators must be independent"
    );
    // columns of U: generator coordinates in the saturated basis
    let u: Vec<Vec<i64>> = gens
        .iter()
        .map(|g| {
            linalg::coordinates(&basis, g)
                .expect("generator lies in its span")
                .iter()
                .map(|c| c.to_integer().to_i64().expect("coordinate fits"))
                .collect()
        })
        .collect();
    let h = linalg::lower_hermite(&u);
    // columns of U^{-1}
    let inv: Vec<Vec<BigRational>> = (0..k)
        .map(|j| {
            let e: Vec<i64> = (0..k).map(|i| (i == j) as i64).collect();
            linalg::coordinates(&u, &e).expect("U is invertible")
        })
        .collect();
    let bounds: Vec<i128> = (0..k).map(|i| h[i][i]).collect();
    let mut out = Vec::new();
    let mut p = vec![0i128; k];
    loop {
        let mut lambda = vec![BigRational::zero(); k];
        for (j, pj) in p.iter().enumerate() {
            if *pj != 0 {
                let s = BigRational::from_integer(BigInt::from(*pj));
                for (l, x) in lambda.iter_mut().zip(&inv[j]) {
                    *l += &s * x;
                }
            }
        }
        for (l, &is_open) in lambda.iter_mut().zip(open) {
            let mut f = &*l - l.floor();
            if is_open && f.is_zero() {
                f = BigRational::one();
            }
            *l = f;
        }
        let mut point = vec![BigRational::zero(); m];
        for (l, g) in lambda.iter().zip(gens) {
            if l.is_zero() {
                continue;
            }
            for (x, gi) in point.iter_mut().zip(g) {
                *x += l * BigRational::from_integer(BigInt::from(*gi));
            }
        }
        out.push(
            point
                .iter()
                .map(|x| {
                    debug_assert!(x.is_integer());
                    x.to_integer().to_i64().expect("lattice point fits")
                })
                .collect(),
        );
        // odometer over the Hermite box
        let mut i = 0;
        while i < k {
            p[i] += 1;
            if p[i] < bounds[i] {
                break;
            }
            p[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_has_one_point() {
        let g = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(parallelepiped_points(&g, &[false, false]), vec![vec![0, 0]]);
        assert_eq!(parallelepiped_points(&g, &[true, false]), vec![vec![1, 0]]);
        assert_eq!(parallelepiped_points(&g, &[true, true]), vec![vec![1, 1]]);
    }

    #[test]
    fn index_three() {
        let g = vec![vec![1, 0], vec![1, 3]];
        assert_eq!(
            parallelepiped_points(&g, &[false, false]),
            vec![vec![0, 0], vec![1, 1], vec![1, 2]]
        );
        assert_eq!(
            parallelepiped_points(&g, &[false, true]),
            vec![vec![1, 1], vec![1, 2], vec![1, 3]]
        );
    }

    #[test]
    fn lower_dimensional_span() {
        // (1,1,0),(1,-1,0): index 2 in the plane z = 0
        let g = vec![vec![1, 1, 0], vec![1, -1, 0]];
        assert_eq!(
            parallelepiped_points(&g, &[false, false]),
            vec![vec![0, 0, 0], vec![1, 0, 0]]
        );
    }

    #[test]
    fn non_primitive_ray() {
        assert_eq!(
            parallelepiped_points(&[vec![2, 2]], &[false]),
            vec![vec![0, 0], vec![1, 1]]
        );
        assert_eq!(
            parallelepiped_points(&[vec![2, 2]], &[true]),
            vec![vec![1, 1], vec![2, 2]]
        );
    }

    #[test]
    fn empty_generator_list() {
        assert_eq!(parallelepiped_points(&[], &[]), vec![Vec::<i64>::new()]);
    }
}
