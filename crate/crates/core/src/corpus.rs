//! Seeded random test instances: simplicial complexes with random internal
//! hyperplanes, exponent data and compatible piecewise weights.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::genfun::{GenFunSpec, PiecewiseWeight};
use crate::geometry::{CellComplex, Hyperplane, Sign};
use crate::linalg::{self, dot};
use crate::oracle;

/// Largest box the oracle is asked to scan at the default order.
pub const MAX_BOX: u128 = 150_000;
pub const DEFAULT_ORDER: i64 = 12;

#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub complex: CellComplex,
    pub spec: GenFunSpec,
}

fn random_vector(rng: &mut impl Rng, m: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..m).map(|_| rng.gen_range(lo..=hi)).collect()
}

fn random_nonzero(rng: &mut impl Rng, m: usize, lo: i64, hi: i64) -> Vec<i64> {
    loop {
        let v = random_vector(rng, m, lo, hi);
        if !linalg::is_zero(&v) {
            return v;
        }
    }
}

/// `m` normals cutting out a simplicial cone whose rays have lattice index
/// at most `max_index`.
fn simplicial_normals(rng: &mut impl Rng, m: usize, max_index: i64) -> Vec<Vec<i64>> {
    loop {
        let rows: Vec<Vec<i64>> = (0..m).map(|_| random_nonzero(rng, m, -2, 2)).collect();
        let det = linalg::det(&rows);
        let d: i64 = det.try_into().unwrap_or(i64::MAX);
        if d != 0 && d.abs() <= max_index {
            let primitive: Vec<Vec<i64>> = rows.iter().map(|r| linalg::primitive(r)).collect();
            let mut distinct = primitive.clone();
            distinct.sort();
            distinct.dedup();
            if distinct.len() == m {
                return primitive;
            }
        }
    }
}

/// Internal normals, pairwise non-parallel, each meeting the cone spanned by
/// `rays` somewhere other than the origin (so they actually subdivide it).
fn internal_normals(rng: &mut impl Rng, rays: &[Vec<i64>], count: usize) -> Vec<Vec<i64>> {
    let m = rays.first().map_or(1, Vec::len);
    // the line has a single normal up to sign
    let count = if m == 1 { count.min(1) } else { count };
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 5000 {
        attempts += 1;
        let v = linalg::primitive(&random_nonzero(rng, m, -2, 2));
        let flipped = linalg::neg(&v);
        let signs: Vec<i64> = rays.iter().map(|u| dot(&v, u).signum()).collect();
        let cuts = m == 1
            || attempts > 500
            || !(signs.iter().all(|s| *s > 0) || signs.iter().all(|s| *s < 0));
        if cuts && !out.contains(&v) && !out.contains(&flipped) {
            out.push(v);
        }
    }
    out
}

/// A direction positive on every ray.
fn positive_direction(rng: &mut impl Rng, rays: &[Vec<i64>], m: usize) -> Vec<i64> {
    let mut hi = 3;
    loop {
        for _ in 0..200 {
            let b = random_vector(rng, m, -hi, hi);
            if rays.iter().all(|u| dot(&b, u) > 0) {
                return b;
            }
        }
        hi += 1;
    }
}

/// `C_F = v + Σ_j c_j [s_j(F) = +] h_j + Σ_j c'_j [s_j(F) = −] h_j`: any two
/// cells differ by multiples of normals that vanish on their common face, so
/// the weight is compatible by construction.
pub fn random_gamma(rng: &mut impl Rng, cx: &CellComplex, bound: i64) -> Result<PiecewiseWeight> {
    let m = cx.dim();
    let cells = cx.enumerate_cells()?;
    let planes: Vec<&Hyperplane> = cx.bounding().iter().chain(cx.internal()).collect();
    for _ in 0..200 {
        let v = random_vector(rng, m, -1, 1);
        let coeff: Vec<(i64, i64)> = planes
            .iter()
            .map(|_| {
                let pick = |rng: &mut dyn rand::RngCore| *[-1i64, 0, 0, 1].choose(rng).unwrap();
                (pick(rng), pick(rng))
            })
            .collect();
        let mut map = BTreeMap::new();
        let mut ok = true;
        for cell in &cells {
            let mut c = v.clone();
            for ((h, s), (cp, cn)) in planes.iter().zip(cell.signs.all()).zip(&coeff) {
                let k = match s {
                    Sign::Pos => *cp,
                    Sign::Neg => *cn,
                    Sign::Zero => 0,
                };
                for (x, y) in c.iter_mut().zip(h.normal()) {
                    *x += k * y;
                }
            }
            ok &= c.iter().all(|x| x.abs() <= bound);
            map.insert(cell.signs.clone(), c);
        }
        if ok {
            return Ok(PiecewiseWeight::Cells(map));
        }
    }
    // a constant weight is always compatible
    let v = random_vector(rng, m, -bound, bound);
    Ok(PiecewiseWeight::Cells(
        cells.iter().map(|c| (c.signs.clone(), v.clone())).collect(),
    ))
}

/// One random instance of dimension `m` with `internal` internal hyperplanes.
pub fn random_instance(seed: u64, m: usize, internal: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let bounding = simplicial_normals(&mut rng, m, 3);
        let bare = CellComplex::from_normals(m, bounding.clone(), Vec::new())?;
        let rays = bare.cone().extreme_rays()?;
        let inner = internal_normals(&mut rng, &rays, internal);
        let complex = CellComplex::from_normals(m, bounding, inner)?;
        let a = random_vector(&mut rng, m, -2, 2);
        let b = positive_direction(&mut rng, &rays, m);
        let gamma = random_gamma(&mut rng, &complex, 2)?;
        let spec = GenFunSpec::new(a, b, gamma);
        if oracle::enumeration_box_size(&complex, &spec, DEFAULT_ORDER)? <= MAX_BOX {
            return Ok(Instance {
                label: format!("seed{seed}-dim{m}-int{internal}"),
                complex,
                spec,
            });
        }
    }
}

/// The standard corpus: 24 instances over dimensions 1–3 with 0–3 internal
/// hyperplanes.
pub fn standard_corpus() -> Result<Vec<Instance>> {
    let mut plan = Vec::new();
    for i in 0..4 {
        plan.push((1, i % 2));
    }
    for i in 0..10 {
        plan.push((2, i % 4));
    }
    for i in 0..10 {
        plan.push((3, i % 4));
    }
    plan.iter()
        .enumerate()
        .map(|(i, &(m, k))| random_instance(1000 + i as u64, m, k))
        .collect()
}

/// A random simplicial generator set in `Z^m` (`m ≤ 3`) with lattice index
/// at most `max_index`, plus exponent vectors `c` and `b` with `b.u > 0`.
pub fn random_simplicial_generators(
    rng: &mut impl Rng,
    max_index: u64,
) -> (Vec<Vec<i64>>, Vec<i64>, Vec<i64>) {
    loop {
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=m);
        let gens: Vec<Vec<i64>> = (0..k).map(|_| random_nonzero(rng, m, -3, 3)).collect();
        let Some(index) = crate::geometry::cone::lattice_index(&gens) else {
            continue;
        };
        if index > max_index {
            continue;
        }
        let c = random_vector(rng, m, -2, 2);
        let b = positive_direction(rng, &gens, m);
        return (gens, c, b);
    }
}
