//! Small exact linear algebra over the integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

/// Divides out the gcd of the entries. Zero stays zero.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_all(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|x| *x == 0)
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

fn to_rat_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(BigInt::from(*x)))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(a: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[row].clone();
        for (r, target) in a.iter_mut().enumerate() {
            if r != row && !target[col].is_zero() {
                let f = target[col].clone();
                for (x, p) in target.iter_mut().zip(&pivot_row).take(ncols) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut a = to_rat_rows(rows);
    rref(&mut a, ncols).len()
}

/// Clears denominators and divides by the content.
pub fn rational_to_primitive(v: &[BigRational]) -> Vec<i64> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            y.to_i64().expect("vector entry fits in i64")
        })
        .collect()
}

/// A basis of the rational kernel `{x : rows.x = 0}` in `R^ncols`, as
/// primitive integer vectors.
pub fn kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut a = to_rat_rows(rows);
    let pivots = rref(&mut a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            rational_to_primitive(&v)
        })
        .collect()
}

/// Solves `sum x_j basis_j = v` for `x`, if `v` lies in the span of the
/// (linearly independent) basis.
pub fn coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let m = v.len();
    // augmented system: m equations, k unknowns
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(BigInt::from(b[i])))
                .collect();
            row.push(BigRational::from_integer(BigInt::from(v[i])));
            row
        })
        .collect();
    let pivots = rref(&mut a, k + 1);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    Some((0..k).map(|j| a[j][k].clone()).collect())
}

/// Determinant of a square integer matrix.
pub fn det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_rat_rows(rows);
    let mut d = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        d *= &a[col][col];
        let inv = a[col][col].recip();
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for target in rest.iter_mut().take(n - col - 1) {
            if !target[col].is_zero() {
                let f = &target[col] * &inv;
                for (x, p) in target[col..n].iter_mut().zip(&pivot_row[col..n]) {
                    *x -= &f * p;
                }
            }
        }
    }
    d.to_integer()
}

/// Column-style Hermite form of the lattice spanned by `cols` (each of
/// length `k`, `k` of them, nonsingular): a lower-triangular matrix `H`
/// (returned as columns) with positive diagonal and `H Z^k = span_Z(cols)`.
pub fn lower_hermite(cols: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let k = cols.len();
    let mut h: Vec<Vec<i128>> = cols
        .iter()
        .map(|c| c.iter().map(|x| *x as i128).collect())
        .collect();
    for row in 0..k {
        // gcd-combine columns row..k so only column `row` is nonzero in this row
        for j in row + 1..k {
            let a = h[row][row];
            let b = h[j][row];
            if b == 0 {
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (ca, cb) = (a / g, b / g);
            let new_row: Vec<i128> = (0..k).map(|i| x * h[row][i] + y * h[j][i]).collect();
            let new_j: Vec<i128> = (0..k).map(|i| cb * h[row][i] - ca * h[j][i]).collect();
            h[row] = new_row;
            h[j] = new_j;
        }
        if h[row][row] < 0 {
            for x in h[row].iter_mut() {
                *x = -*x;
            }
        }
        assert!(h[row][row] != 0, "lower_hermite: singular input");
    }
    h
}

/// Integer basis of the kernel lattice `{x in Z^ncols : rows.x = 0}`.
pub fn integer_kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    // Column operations on A, mirrored on U = I: A U = [E | 0].
    let r = rows.len();
    let mut a: Vec<Vec<i128>> = (0..ncols)
        .map(|c| rows.iter().map(|row| row[c] as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..ncols)
        .map(|c| (0..ncols).map(|i| (i == c) as i128).collect())
        .collect();
    let mut lead = 0;
    for row in 0..r {
        if lead >= ncols {
            break;
        }
        let Some(p) = (lead..ncols).find(|&c| a[c][row] != 0) else {
            continue;
        };
        a.swap(lead, p);
        u.swap(lead, p);
        for j in lead + 1..ncols {
            let x0 = a[lead][row];
            let y0 = a[j][row];
            if y0 == 0 {
                continue;
            }
            let eg = x0.extended_gcd(&y0);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (cx, cy) = (x0 / g, y0 / g);
            let combine = |m: &mut Vec<Vec<i128>>| {
                let len = m[lead].len();
                let nl: Vec<i128> = (0..len).map(|i| x * m[lead][i] + y * m[j][i]).collect();
                let nj: Vec<i128> = (0..len).map(|i| cy * m[lead][i] - cx * m[j][i]).collect();
                m[lead] = nl;
                m[j] = nj;
            };
            combine(&mut a);
            combine(&mut u);
        }
        lead += 1;
    }
    (lead..ncols)
        .map(|c| {
            debug_assert!(a[c].iter().all(|x| *x == 0));
            u[c].iter()
                .map(|x| i64::try_from(*x).expect("kernel entry fits"))
                .collect()
        })
        .collect()
}

/// A Z-basis of the saturated lattice `Z^m ∩ span(vectors)`.
pub fn saturated_basis(vectors: &[Vec<i64>], m: usize) -> Vec<Vec<i64>> {
    let nonzero: Vec<Vec<i64>> = vectors.iter().filter(|v| !is_zero(v)).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let complement = kernel(&nonzero, m);
    if complement.is_empty() {
        return (0..m)
            .map(|i| (0..m).map(|j| (i == j) as i64).collect())
            .collect();
    }
    integer_kernel(&complement, m)
}

/// Picks a maximal linearly independent subset (in order).
pub fn independent_subset(vectors: &[Vec<i64>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        rows.push(v.clone());
        if rank(&rows) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

pub fn rat_sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Index of the lattice generated by `vectors` in `Z^m`, or `None` if they
/// do not span `R^m`.
pub fn full_lattice_index(vectors: &[Vec<i64>], m: usize) -> Option<u128> {
    let mut rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| *x as i128).collect())
        .collect();
    let mut index: u128 = 1;
    let mut top = 0;
    for col in 0..m {
        let p = (top..rows.len()).find(|&r| rows[r][col] != 0)?;
        rows.swap(top, p);
        for r in top + 1..rows.len() {
            let (a, b) = (rows[top][col], rows[r][col]);
            if b == 0 {
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (ca, cb) = (a / g, b / g);
            let new_top: Vec<i128> = (0..m).map(|i| x * rows[top][i] + y * rows[r][i]).collect();
            let new_r: Vec<i128> = (0..m)
                .map(|i| cb * rows[top][i] - ca * rows[r][i])
                .collect();
            rows[top] = new_top;
            rows[r] = new_r;
        }
        index *= rows[top][col].unsigned_abs();
        top += 1;
    }
    Some(index)
}
