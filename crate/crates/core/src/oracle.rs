//! Brute-force checks: truncated lattice sums over regions, and power-series
//! expansion of factored rational functions in `t`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::serial::int_to_json;
use crate::algebra::{rat, FactoredRational, LaurentPoly, Monomial};
use crate::error::{Error, Result};
use crate::genfun::GenFunSpec;
use crate::geometry::{self, CellComplex, Sign};
use crate::linalg::dot;
use crate::par;

/// `Σ_{j ≤ N} c_j(q) t^j`, each `c_j` a Laurent polynomial in `q` alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub order: i64,
    coefficients: BTreeMap<i64, LaurentPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: i64) -> Self {
        TruncatedSeries {
            order,
            coefficients: BTreeMap::new(),
        }
    }

    /// Truncates a bivariate polynomial at `t`-degree `order`.
    pub fn from_poly(p: &LaurentPoly, order: i64) -> Self {
        let mut s = Self::zero(order);
        for (m, c) in p.terms() {
            s.add_term(m.t, m.q, c.clone());
        }
        s
    }

    pub fn add_term(&mut self, t: i64, q: i64, c: BigRational) {
        if t > self.order || c.is_zero() {
            return;
        }
        let entry = self.coefficients.entry(t).or_insert_with(LaurentPoly::zero);
        entry.add_term(Monomial::new(q, 0), c);
        if entry.is_zero() {
            self.coefficients.remove(&t);
        }
    }

    pub fn add_assign(&mut self, other: &TruncatedSeries) {
        for (t, p) in &other.coefficients {
            for (m, c) in p.terms() {
                self.add_term(*t, m.q, c.clone());
            }
        }
    }

    /// Coefficient of `t^j` (zero polynomial if absent).
    pub fn coefficient(&self, j: i64) -> LaurentPoly {
        self.coefficients
            .get(&j)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> {
        self.coefficients.iter().map(|(t, p)| (*t, p))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coefficients
                .iter()
                .map(|(t, p)| {
                    let coeff: Vec<Value> = p
                        .terms()
                        .map(|(m, c)| json!([int_to_json(c.numer()), int_to_json(c.denom()), m.q]))
                        .collect();
                    json!({ "t": t, "coeff": coeff })
                })
                .collect(),
        )
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0 + O(t^{})", self.order + 1);
        }
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .map(|(t, p)| format!("({p})*t^{t}"))
            .collect();
        write!(f, "{} + O(t^{})", parts.join(" + "), self.order + 1)
    }
}

/// Per-coordinate bound on `|e_j|` for `e ∈ C` with `B.e ≤ N`: writing
/// `e = Σ λ_i u_i`, each `λ_i ≤ N / B.u_i`.
fn box_bounds(rays: &[Vec<i64>], b: &[i64], order: i64, m: usize) -> Vec<i64> {
    (0..m)
        .map(|j| {
            rays.iter()
                .map(|u| {
                    let bu = dot(b, u);
                    (BigRational::from_integer((order * u[j].abs()).into())
                        / BigRational::from_integer(bu.into()))
                    .floor()
                    .to_integer()
                    .to_i64()
                    .expect("bound fits")
                })
                .max()
                .unwrap_or(0)
        })
        .collect()
}

/// Number of points in the enumeration box for `lattice_sum_truncated`.
pub fn enumeration_box_size(cx: &CellComplex, spec: &GenFunSpec, order: i64) -> Result<u128> {
    spec.validate(cx)?;
    let rays = cx.cone().extreme_rays()?;
    Ok(box_bounds(&rays, &spec.b, order.max(0), cx.dim())
        .iter()
        .map(|x| 2 * *x as u128 + 1)
        .product())
}

/// Lattice sums for every region at once, keyed by region.
///
/// Each lattice point contributes to `C_I` for every `I` inside its set of
/// strictly positive bounding hyperplanes.
pub fn lattice_sums_all_regions(
    cx: &CellComplex,
    spec: &GenFunSpec,
    order: i64,
) -> Result<BTreeMap<Vec<usize>, TruncatedSeries>> {
    spec.validate(cx)?;
    let m = cx.dim();
    let rays = cx.cone().extreme_rays()?;
    let bounds = box_bounds(&rays, &spec.b, order.max(0), m);
    let nb = cx.bounding().len();

    // series per positive-bounding pattern, built in parallel over the first coordinate
    let first = if m == 0 { 0 } else { bounds[0] };
    let slabs: Vec<Result<BTreeMap<u64, TruncatedSeries>>> =
        par::map_range(0..(2 * first + 1) as usize, |i| {
            let mut acc: BTreeMap<u64, TruncatedSeries> = BTreeMap::new();
            let mut e = vec![0i64; m];
            if m > 0 {
                e[0] = i as i64 - first;
                for (x, bnd) in e.iter_mut().zip(&bounds).skip(1) {
                    *x = -bnd;
                }
            }
            loop {
                let be = dot(&spec.b, &e);
                if be <= order {
                    if let Some(signs) = cx.locate(&e) {
                        let exp = spec.exponent(&signs)?;
                        let pattern = signs
                            .bounding
                            .iter()
                            .enumerate()
                            .filter(|(_, s)| **s == Sign::Pos)
                            .fold(0u64, |acc, (i, _)| acc | 1 << i);
                        acc.entry(pattern)
                            .or_insert_with(|| TruncatedSeries::zero(order))
                            .add_term(be, dot(&exp, &e), rat(1));
                    }
                }
                // odometer over coordinates 1..m
                let mut j = 1;
                while j < m {
                    e[j] += 1;
                    if e[j] <= bounds[j] {
                        break;
                    }
                    e[j] = -bounds[j];
                    j += 1;
                }
                if j >= m {
                    break;
                }
            }
            Ok(acc)
        });
    let mut by_pattern: BTreeMap<u64, TruncatedSeries> = BTreeMap::new();
    for slab in slabs {
        for (p, s) in slab? {
            by_pattern
                .entry(p)
                .or_insert_with(|| TruncatedSeries::zero(order))
                .add_assign(&s);
        }
    }
    let mut out = BTreeMap::new();
    for region in geometry::subsets(nb) {
        let mask = region.iter().fold(0u64, |acc, i| acc | 1 << i);
        let mut s = TruncatedSeries::zero(order);
        for (p, part) in &by_pattern {
            if p & mask == mask {
                s.add_assign(part);
            }
        }
        out.insert(region, s);
    }
    Ok(out)
}

/// `Σ q^{(A+γ(F_e)).e} t^{B.e}` over `e ∈ C_I ∩ Z^m` with `B.e ≤ N`.
pub fn lattice_sum_truncated(
    cx: &CellComplex,
    region: &[usize],
    spec: &GenFunSpec,
    order: i64,
) -> Result<TruncatedSeries> {
    let nb = cx.bounding().len();
    if let Some(&bad) = region.iter().find(|&&i| i >= nb) {
        return Err(Error::Parameter(format!("region index {bad} out of range")));
    }
    let mut region = region.to_vec();
    region.sort_unstable();
    region.dedup();
    let all = lattice_sums_all_regions(cx, spec, order)?;
    Ok(all[&region].clone())
}

fn truncate(p: &LaurentPoly, max_t: i64) -> LaurentPoly {
    LaurentPoly::from_terms(
        p.terms()
            .filter(|(m, _)| m.t <= max_t)
            .map(|(m, c)| (*m, c.clone())),
    )
}

/// Power series in `t` of a factored rational function, through `t^N`.
/// Every factor `(1 - q^a t^b)` must have `b ≥ 1`.
pub fn series_expand(x: &FactoredRational, order: i64) -> Result<TruncatedSeries> {
    if let Some(f) = x.factors().find(|f| f.b() <= 0) {
        return Err(Error::ExpansionDirection { a: f.a(), b: f.b() });
    }
    let Some(min_t) = x.numerator().min_t() else {
        return Ok(TruncatedSeries::zero(order));
    };
    let budget = order - min_t;
    if budget < 0 {
        return Ok(TruncatedSeries::zero(order));
    }
    let mut denom = LaurentPoly::one();
    for f in x.factors() {
        let step = f.monomial();
        let mut geometric = LaurentPoly::zero();
        let mut power = Monomial::ONE;
        while power.t <= budget {
            geometric.add_term(power, BigRational::one());
            power = power.times(step);
        }
        denom = truncate(&(&denom * &geometric), budget);
    }
    let product = x.numerator() * &denom;
    Ok(TruncatedSeries::from_poly(&product, order))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub degree: i64,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub equal: bool,
    pub first_mismatch: Option<Mismatch>,
}

pub fn compare(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<Comparison> {
    if a.order != b.order {
        return Err(Error::OrderMismatch(a.order, b.order));
    }
    let degrees: std::collections::BTreeSet<i64> = a
        .coefficients
        .keys()
        .chain(b.coefficients.keys())
        .copied()
        .collect();
    for j in degrees {
        let (x, y) = (a.coefficient(j), b.coefficient(j));
        if x != y {
            return Ok(Comparison {
                equal: false,
                first_mismatch: Some(Mismatch {
                    degree: j,
                    left: x.to_string(),
                    right: y.to_string(),
                }),
            });
        }
    }
    Ok(Comparison {
        equal: true,
        first_mismatch: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::PiecewiseWeight;

    fn fr(num: &[(i64, i64, i64)], den: &[(i64, i64)]) -> FactoredRational {
        let p = LaurentPoly::from_terms(num.iter().map(|&(c, a, b)| (Monomial::new(a, b), rat(c))));
        FactoredRational::new(p, den.iter().copied()).unwrap()
    }

    fn ones(order: i64) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        for j in 0..=order {
            s.add_term(j, 0, rat(1));
        }
        s
    }

    #[test]
    fn half_line_sum() {
        let cx = CellComplex::from_normals(1, vec![vec![1]], vec![]).unwrap();
        let spec = GenFunSpec::new(vec![0], vec![1], PiecewiseWeight::Zero);
        assert_eq!(lattice_sum_truncated(&cx, &[], &spec, 3).unwrap(), ones(3));
    }

    #[test]
    fn torus_hand_count() {
        // B = (4, 0): e_1 ∈ {0, 1}; (0,0) and (1,0..=3)
        let cx = CellComplex::from_normals(2, vec![vec![1, 0], vec![0, 1], vec![3, -1]], vec![])
            .unwrap();
        let spec = GenFunSpec::new(vec![0, 0], vec![4, 0], PiecewiseWeight::Zero);
        let s = lattice_sum_truncated(&cx, &[], &spec, 4).unwrap();
        let mut want = TruncatedSeries::zero(4);
        want.add_term(0, 0, rat(1));
        want.add_term(4, 0, rat(4));
        assert_eq!(s, want);
    }

    #[test]
    fn gl2_sum_is_geometric() {
        let cx =
            CellComplex::from_normals(2, vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0]]).unwrap();
        let spec = GenFunSpec::new(vec![1, 0], vec![1, 2], PiecewiseWeight::Zero);
        let e0 = lattice_sum_truncated(&cx, &[], &spec, 5).unwrap();
        let expanded = series_expand(&fr(&[(1, 0, 0)], &[(1, 1), (0, 2)]), 5).unwrap();
        assert!(compare(&e0, &expanded).unwrap().equal);
    }

    #[test]
    fn expansions() {
        assert_eq!(
            series_expand(&fr(&[(1, 0, 0)], &[(0, 1)]), 3).unwrap(),
            ones(3)
        );
        let s = series_expand(&fr(&[(1, 0, 0)], &[(0, 1), (1, 1)]), 2).unwrap();
        assert_eq!(
            s.coefficient(1).to_string(),
            LaurentPoly::from_terms([(Monomial::new(0, 0), rat(1)), (Monomial::new(1, 0), rat(1))])
                .to_string()
        );
        assert_eq!(s.coefficient(2).len(), 3);
        let s = series_expand(&fr(&[(1, 0, 0), (1, 0, 1)], &[(0, 2)]), 4).unwrap();
        assert_eq!(s, ones(4));
        // negative numerator degree
        let s = series_expand(&fr(&[(1, 0, -1)], &[(0, 1)]), 1).unwrap();
        assert_eq!(
            s.coefficients().map(|(t, _)| t).collect::<Vec<_>>(),
            vec![-1, 0, 1]
        );
        assert!(matches!(
            series_expand(&fr(&[(1, 0, 0)], &[(1, 0)]), 3),
            Err(Error::ExpansionDirection { a: 1, b: 0 })
        ));
    }

    #[test]
    fn comparisons() {
        let a = ones(3);
        assert!(compare(&a, &a).unwrap().equal);
        let mut b = ones(3);
        b.add_term(2, 1, rat(1));
        let c = compare(&a, &b).unwrap();
        assert_eq!(c.first_mismatch.unwrap().degree, 2);
        assert!(
            compare(&TruncatedSeries::zero(2), &TruncatedSeries::zero(2))
                .unwrap()
                .equal
        );
        assert_eq!(compare(&ones(2), &ones(3)), Err(Error::OrderMismatch(2, 3)));
    }

    #[test]
    fn json_shape() {
        let s = series_expand(&fr(&[(1, 0, 0)], &[(1, 1)]), 1).unwrap();
        assert_eq!(
            s.to_json().to_string(),
            r#"[{"coeff":[[1,1,0]],"t":0},{"coeff":[[1,1,1]],"t":1}]"#
        );
    }
}
