//! Exact feasibility of homogeneous sign systems, via a phase-one simplex
//! over the rationals with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Decides whether some `x` satisfies `e.x = 0` for every `e` in `equalities`
/// and `s.x > 0` for every `s` in `strict`.
///
/// The system is homogeneous, so strict constraints may be scaled to
/// `s.x >= 1`; the resulting polyhedron is nonempty iff the original open
/// region is.
pub fn sign_region_feasible(equalities: &[Vec<i64>], strict: &[Vec<i64>], dim: usize) -> bool {
    if strict.is_empty() {
        return true;
    }
    // columns: x+ (dim), x- (dim), surplus (strict.len())
    let n_struct = 2 * dim + strict.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    for e in equalities {
        let mut row = vec![BigRational::zero(); n_struct];
        for j in 0..dim {
            row[j] = int(e[j]);
            row[dim + j] = int(-e[j]);
        }
        rows.push(row);
        rhs.push(BigRational::zero());
    }
    for (i, s) in strict.iter().enumerate() {
        let mut row = vec![BigRational::zero(); n_struct];
        for j in 0..dim {
            row[j] = int(s[j]);
            row[dim + j] = int(-s[j]);
        }
        row[2 * dim + i] = -BigRational::one();
        rows.push(row);
        rhs.push(BigRational::one());
    }
    phase_one(rows, rhs)
}

/// Is `{y >= 0 : A y = b}` nonempty? Requires `b >= 0`.
fn phase_one(a: Vec<Vec<BigRational>>, b: Vec<BigRational>) -> bool {
    let nrows = a.len();
    let nstruct = a.first().map_or(0, Vec::len);
    let ncols = nstruct + nrows;
    // tableau rows: [A | I | b]
    let mut t: Vec<Vec<BigRational>> = a
        .into_iter()
        .zip(b)
        .enumerate()
        .map(|(i, (mut row, bi))| {
            debug_assert!(!bi.is_negative());
            row.extend((0..nrows).map(|k| {
                if k == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row.push(bi);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (nstruct..ncols).collect();
    // reduced costs for minimizing the sum of artificials
    let mut cost = vec![BigRational::zero(); ncols + 1];
    for row in &t {
        for j in 0..nstruct {
            cost[j] -= &row[j];
        }
        cost[ncols] -= &row[ncols];
    }
    while let Some(enter) = (0..ncols).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..nrows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][ncols] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded cannot happen for a sum of nonnegative artificials
            unreachable!("phase one objective is bounded below");
        };
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, p) in cost.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        basis[r] = enter;
    }
    cost[ncols].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_is_always_feasible() {
        assert!(sign_region_feasible(&[vec![1]], &[], 1));
    }

    #[test]
    fn strict_quadrant() {
        assert!(sign_region_feasible(&[], &[vec![1, 0], vec![0, 1]], 2));
        assert!(!sign_region_feasible(&[], &[vec![1, 0], vec![-1, 0]], 2));
    }

    #[test]
    fn equalities_force_zero() {
        // x = y = 0 with x - y > 0 is empty
        assert!(!sign_region_feasible(
            &[vec![1, 0], vec![0, 1]],
            &[vec![1, -1]],
            2
        ));
        // x - y = 0 with x > 0, y > 0 is the open diagonal
        assert!(sign_region_feasible(
            &[vec![1, -1]],
            &[vec![1, 0], vec![0, 1]],
            2
        ));
    }

    #[test]
    fn thin_cone() {
        // 3x - y > 0, y - 2x > 0 (nonempty: x=1, y=2.5)
        assert!(sign_region_feasible(
            &[],
            &[vec![3, -1], vec![-2, 1], vec![1, 0]],
            2
        ));
        // 2x - y > 0, y - 2x > 0 empty
        assert!(!sign_region_feasible(&[], &[vec![2, -1], vec![-2, 1]], 2));
    }
}
