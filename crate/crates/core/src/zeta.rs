//! Cone complexes built from weight data, the Weyl-weighted zeta sum, and
//! functional-equation checks.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::{rat, FactoredRational, LaurentPoly, Monomial, MultiGenFun};
use crate::error::{Error, Result};
use crate::genfun::{validate_weight, GenFunEngine, GenFunSpec, PiecewiseWeight};
use crate::geometry::{self, CellComplex, Hyperplane};
use crate::linalg::{self, dot};
use crate::oracle::{self, TruncatedSeries};
use crate::par;
use crate::weyl::{self, CartanType, RootSystem};

/// Weights of a representation in coordinates of a basis of the character
/// lattice, together with the root data they decompose over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDatum {
    pub l: usize,
    pub d: usize,
    pub r: usize,
    pub weights: Vec<Vec<i64>>,
    /// Partition of the weight indices (0-based) into `r` blocks.
    pub components: Vec<Vec<usize>>,
    /// `ω_1..ω_r`.
    pub contragredient_dominant: Vec<Vec<i64>>,
    /// `α_1..α_l`.
    pub fundamental_roots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det_rho: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha0: Option<Vec<i64>>,
}

impl WeightDatum {
    pub fn dim(&self) -> usize {
        self.l + self.d
    }

    /// The natural representation of `GL_n` in the basis
    /// `(α_1, …, α_{n-1}, ε_n)`: weight `ε_i = α_i + ⋯ + α_{n-1} + ε_n`.
    pub fn gl_natural(n: usize) -> Result<(WeightDatum, RootSystem)> {
        if n < 2 {
            return Err(Error::Parameter(format!("GL_{n}: need n >= 2")));
        }
        let m = n;
        let unit = |i: usize| (0..m).map(|j| (i == j) as i64).collect::<Vec<i64>>();
        let weights = (0..n)
            .map(|i| (0..m).map(|j| (j >= i) as i64).collect())
            .collect();
        let wd = WeightDatum {
            l: n - 1,
            d: 1,
            r: 1,
            weights,
            components: vec![(0..n).collect()],
            contragredient_dominant: vec![linalg::neg(&unit(n - 1))],
            fundamental_roots: (0..n - 1).map(unit).collect(),
            det_rho: None,
            alpha0: None,
        };
        let rs = weyl::build_root_system(CartanType::A, n - 1)?;
        Ok((wd, rs))
    }

    /// A one-dimensional torus acting by the character `1`.
    pub fn trivial_torus() -> WeightDatum {
        WeightDatum {
            l: 0,
            d: 1,
            r: 1,
            weights: vec![vec![1]],
            components: vec![vec![0]],
            contragredient_dominant: vec![vec![-1]],
            fundamental_roots: vec![],
            det_rho: None,
            alpha0: None,
        }
    }

    /// The torus family as weight data: `l = 0`, `r = 2d - 1` one-dimensional
    /// components with weights `e_1, …, e_d` and `k e_i - e_d` (`i < d`).
    pub fn torus_family(d: usize, k: i64) -> Result<WeightDatum> {
        check_torus_params(d, k)?;
        let unit = |i: usize| (0..d).map(|j| (i == j) as i64).collect::<Vec<i64>>();
        let mut weights: Vec<Vec<i64>> = (0..d).map(unit).collect();
        for i in 0..d - 1 {
            let mut v = vec![0; d];
            v[i] = k;
            v[d - 1] = -1;
            weights.push(v);
        }
        let n = weights.len();
        Ok(WeightDatum {
            l: 0,
            d,
            r: n,
            contragredient_dominant: weights.iter().map(|w| linalg::neg(w)).collect(),
            weights,
            components: (0..n).map(|i| vec![i]).collect(),
            fundamental_roots: vec![],
            det_rho: None,
            alpha0: None,
        })
    }

    fn check_shape(&self) -> Result<()> {
        let m = self.dim();
        let bad = |msg: String| Err(Error::WeightDatum(msg));
        if self.weights.is_empty() {
            return bad("no weights".into());
        }
        if self.fundamental_roots.len() != self.l {
            return bad(format!(
                "{} fundamental roots for l = {}",
                self.fundamental_roots.len(),
                self.l
            ));
        }
        if self.contragredient_dominant.len() != self.r || self.components.len() != self.r {
            return bad(format!("expected {} components", self.r));
        }
        let all = self
            .weights
            .iter()
            .chain(&self.fundamental_roots)
            .chain(&self.contragredient_dominant)
            .chain(self.det_rho.iter())
            .chain(self.alpha0.iter());
        for v in all {
            if v.len() != m {
                return bad(format!("vector {v:?} has length {} in rank {m}", v.len()));
            }
        }
        let mut seen = vec![false; self.weights.len()];
        for block in &self.components {
            for &k in block {
                if k >= seen.len() || seen[k] {
                    return bad("components do not partition the weights".into());
                }
                seen[k] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("components do not partition the weights".into());
        }
        Ok(())
    }

    /// Each weight in block `i` is `-ω_i + Σ c_k α_k` with `c_k ∈ N_0`.
    fn check_decomposition(&self) -> Result<()> {
        for (i, block) in self.components.iter().enumerate() {
            for &k in block {
                let diff = linalg::add(&self.weights[k], &self.contragredient_dominant[i]);
                let ok = if self.l == 0 {
                    linalg::is_zero(&diff)
                } else {
                    linalg::coordinates(&self.fundamental_roots, &diff).is_some_and(|c| {
                        c.iter()
                            .all(|x| x.is_integer() && *x >= BigRational::from_integer(0.into()))
                    })
                };
                if !ok {
                    return Err(Error::WeightDatum(format!(
                        "weight {k} is not -ω_{} plus a nonnegative integer combination of roots",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Σ_k ω̃_k`.
    pub fn computed_det_rho(&self) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for w in &self.weights {
            out = linalg::add(&out, w);
        }
        out
    }

    /// `Σ_{α ∈ Φ⁺} α` in lattice coordinates.
    pub fn computed_alpha0(&self, roots: &RootSystem) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for (c, a) in roots
            .alpha0_coefficients()
            .iter()
            .zip(&self.fundamental_roots)
        {
            for (o, x) in out.iter_mut().zip(a) {
                *o += c * x;
            }
        }
        out
    }
}

/// A cell complex with exponent data and the root system indexing its
/// first `l` bounding hyperplanes.
#[derive(Clone, Debug)]
pub struct ZetaProblem {
    pub complex: CellComplex,
    pub spec: GenFunSpec,
    pub roots: RootSystem,
    /// Number of weights (`n`).
    pub weight_count: usize,
    /// Hyperplanes dropped or noted as duplicates while building the complex.
    pub duplicates: Vec<String>,
}

impl ZetaProblem {
    /// Replaces `γ`, checking compatibility across faces.
    pub fn with_gamma(mut self, gamma: PiecewiseWeight) -> Result<Self> {
        let cells = self.complex.enumerate_cells()?;
        let report = validate_weight(&cells, &gamma, self.complex.dim());
        if !report.valid {
            return Err(Error::Hypothesis(format!(
                "weight is not piecewise constant: {} missing, {} incompatible",
                report.missing.len(),
                report.violations.len()
            )));
        }
        self.spec.gamma = gamma;
        Ok(self)
    }
}

pub fn build_complex_from_weights(wd: &WeightDatum, roots: &RootSystem) -> Result<ZetaProblem> {
    wd.check_shape()?;
    if roots.rank != wd.l {
        return Err(Error::WeightDatum(format!(
            "root system has rank {} but l = {}",
            roots.rank, wd.l
        )));
    }
    let m = wd.dim();
    match linalg::full_lattice_index(&wd.weights, m) {
        Some(1) => {}
        Some(i) => {
            return Err(Error::WeightDatum(format!(
                "weights generate a sublattice of index {i}"
            )))
        }
        None => return Err(Error::WeightDatum("weights do not span".into())),
    }
    wd.check_decomposition()?;

    let det_rho = wd.computed_det_rho();
    if let Some(given) = &wd.det_rho {
        if *given != det_rho {
            return Err(Error::WeightDatum(format!(
                "det_rho {given:?} differs from the weight sum {det_rho:?}"
            )));
        }
    }
    let alpha0 = wd.computed_alpha0(roots);
    if let Some(given) = &wd.alpha0 {
        if *given != alpha0 {
            return Err(Error::WeightDatum(format!(
                "alpha0 {given:?} differs from the positive-root sum {alpha0:?}"
            )));
        }
    }

    let mut duplicates = Vec::new();
    let mut bounding: Vec<Hyperplane> = Vec::new();
    for a in &wd.fundamental_roots {
        let h = Hyperplane::new(a.clone())
            .map_err(|_| Error::WeightDatum("zero fundamental root".into()))?;
        if bounding.contains(&h) {
            return Err(Error::WeightDatum(format!(
                "repeated fundamental root {a:?}"
            )));
        }
        bounding.push(h);
    }
    for (j, w) in wd.contragredient_dominant.iter().enumerate() {
        let h = Hyperplane::new(linalg::neg(w))
            .map_err(|_| Error::WeightDatum(format!("ω_{} is zero", j + 1)))?;
        if bounding.contains(&h) {
            duplicates.push(format!(
                "bounding ω_{}^-1 {:?} repeated; dropped",
                j + 1,
                h.normal()
            ));
        } else {
            bounding.push(h);
        }
    }
    let mut internal: Vec<Hyperplane> = Vec::new();
    let n = wd.weights.len();
    for i in 0..n {
        for j in i + 1..n {
            let diff = linalg::sub(&wd.weights[i], &wd.weights[j]);
            if linalg::is_zero(&diff) {
                continue;
            }
            let h = Hyperplane::new(diff).expect("nonzero");
            let flipped = Hyperplane::new(linalg::neg(h.normal())).expect("nonzero");
            if internal.contains(&h) || internal.contains(&flipped) {
                continue;
            }
            if bounding.contains(&h) || bounding.contains(&flipped) {
                duplicates.push(format!(
                    "internal H_{}{} {:?} coincides with a bounding hyperplane",
                    i + 1,
                    j + 1,
                    h.normal()
                ));
            }
            internal.push(h);
        }
    }
    let complex = CellComplex::new(m, bounding, internal)?;
    let spec = GenFunSpec::new(alpha0, det_rho, PiecewiseWeight::Zero);
    spec.validate(&complex)?;
    Ok(ZetaProblem {
        complex,
        spec,
        roots: roots.clone(),
        weight_count: n,
        duplicates,
    })
}

/// `Z = Σ_{w ∈ W} q^{-λ(w)} E_{C_{I_w}}`, grouping `w` by descent set.
pub fn weighted_zeta(zp: &ZetaProblem) -> Result<FactoredRational> {
    let engine = GenFunEngine::new(&zp.complex)?;
    weighted_zeta_with(&engine, zp)
}

/// `Σ_{w : I_w = I} q^{-λ(w)}` for each descent set `I`.
pub fn descent_groups(roots: &RootSystem) -> Result<BTreeMap<Vec<usize>, LaurentPoly>> {
    let elements = weyl::enumerate_weyl(roots)?;
    let mut groups: BTreeMap<Vec<usize>, LaurentPoly> = BTreeMap::new();
    for w in &elements {
        let i_w = weyl::descent_set(roots, w);
        groups
            .entry(i_w)
            .or_insert_with(LaurentPoly::zero)
            .add_term(Monomial::new(-(w.length as i64), 0), rat(1));
    }
    Ok(groups)
}

pub fn weighted_zeta_with(engine: &GenFunEngine<'_>, zp: &ZetaProblem) -> Result<FactoredRational> {
    let groups: Vec<(Vec<usize>, LaurentPoly)> = descent_groups(&zp.roots)?.into_iter().collect();
    let parts: Vec<Result<FactoredRational>> = par::map(&groups, |(region, poly)| {
        let e = engine.genfun_region(region, &zp.spec)?;
        Ok(e.mul(&FactoredRational::from_poly(poly.clone())))
    });
    let parts: Vec<FactoredRational> = parts.into_iter().collect::<Result<_>>()?;
    Ok(FactoredRational::sum(&parts).normalize())
}

/// Brute-force truncation of `Z`: the same Weyl sum with every `E_{C_I}`
/// replaced by its truncated lattice sum.
pub fn zeta_lattice_sum(zp: &ZetaProblem, order: i64) -> Result<TruncatedSeries> {
    let sums = oracle::lattice_sums_all_regions(&zp.complex, &zp.spec, order)?;
    let mut out = TruncatedSeries::zero(order);
    for (region, poly) in descent_groups(&zp.roots)? {
        let brute = &sums[&region];
        for (t, coeff) in brute.coefficients() {
            let shifted = &(coeff * &poly);
            for (m, c) in shifted.terms() {
                out.add_term(t, m.q, c.clone());
            }
        }
    }
    Ok(out)
}

/// `Z(q^-1, t^-1) = (-1)^m q^a t^{-b} Z(q, t)`, i.e. `(-1)^m q^{a+bs}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FneqCertificate {
    /// Parity bit `m` of the sign `(-1)^m`.
    pub sign_exponent: u8,
    pub a: i64,
    pub b: i64,
}

impl FneqCertificate {
    pub fn sign(&self) -> i8 {
        if self.sign_exponent == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for FneqCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign_exponent == 0 { "" } else { "-" };
        let s = match self.b {
            0 => String::new(),
            1 => "+s".into(),
            -1 => "-s".into(),
            b if b > 0 => format!("+{b}s"),
            b => format!("{b}s"),
        };
        if self.a == 0 && !s.is_empty() {
            write!(f, "{sign}q^({})", s.trim_start_matches('+'))
        } else {
            write!(f, "{sign}q^({}{s})", self.a)
        }
    }
}

pub fn fneq_detect(z: &FactoredRational) -> Result<Option<FneqCertificate>> {
    if z.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let inverted = z.invert_variables();
    Ok(inverted
        .monomial_ratio_test(z)?
        .map(|(eps, a, bt)| FneqCertificate {
            sign_exponent: u8::from(eps < 0),
            a,
            b: -bt,
        }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualBasis {
    /// Rows `f(α_1), …, f(α_l), f(ω_1^-1), …, f(ω_d^-1)`.
    pub matrix: Vec<Vec<i64>>,
    pub determinant: i64,
    /// `a₀` in the dual coordinates: `l` zeros then `d` ones.
    pub a0_dual: Vec<i64>,
    /// `a₀` in the original coordinates.
    pub a0: Vec<i64>,
    /// The weight datum rewritten in the dual coordinates.
    pub transformed: WeightDatum,
}

pub fn choose_dual_basis(wd: &WeightDatum) -> Result<DualBasis> {
    wd.check_shape()?;
    if wd.r != wd.d {
        return Err(Error::Hypothesis(format!(
            "dual basis needs r = d, got r = {} and d = {}",
            wd.r, wd.d
        )));
    }
    let m = wd.dim();
    let mut matrix = wd.fundamental_roots.clone();
    matrix.extend(wd.contragredient_dominant.iter().map(|w| linalg::neg(w)));
    let det = linalg::det(&matrix).to_i64().unwrap_or(0);
    if det.abs() != 1 {
        return Err(Error::Hypothesis(format!(
            "(α, ω^-1) has determinant {det}; not a lattice basis"
        )));
    }
    // a character with coordinates f pairs with x as (M^-T f).y where y = M x
    let to_dual = |f: &Vec<i64>| -> Vec<i64> {
        linalg::coordinates(&matrix, f)
            .expect("unimodular basis")
            .iter()
            .map(|c| c.to_integer().to_i64().expect("fits"))
            .collect()
    };
    let transformed = WeightDatum {
        l: wd.l,
        d: wd.d,
        r: wd.r,
        weights: wd.weights.iter().map(to_dual).collect(),
        components: wd.components.clone(),
        contragredient_dominant: wd.contragredient_dominant.iter().map(to_dual).collect(),
        fundamental_roots: wd.fundamental_roots.iter().map(to_dual).collect(),
        det_rho: wd.det_rho.as_ref().map(to_dual),
        alpha0: wd.alpha0.as_ref().map(to_dual),
    };
    // C ∩ Z^m = N_0^m in the dual coordinates
    for (i, a) in transformed.fundamental_roots.iter().enumerate() {
        debug_assert_eq!(*a, (0..m).map(|j| (i == j) as i64).collect::<Vec<_>>());
    }
    let a0_dual: Vec<i64> = (0..m).map(|i| (i >= wd.l) as i64).collect();
    let a0 = solve_integer(&matrix, &a0_dual);
    Ok(DualBasis {
        matrix,
        determinant: det,
        a0_dual,
        a0,
        transformed,
    })
}

/// `x` with `M x = y` for unimodular `M`.
fn solve_integer(matrix: &[Vec<i64>], y: &[i64]) -> Vec<i64> {
    let m = matrix.len();
    let cols: Vec<Vec<i64>> = (0..m)
        .map(|j| matrix.iter().map(|row| row[j]).collect())
        .collect();
    linalg::coordinates(&cols, y)
        .expect("unimodular")
        .iter()
        .map(|c| c.to_integer().to_i64().expect("fits"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    pub a0: Vec<i64>,
    pub translation_holds: bool,
    pub translation_failures: Vec<String>,
    pub alpha0_pairing: i64,
    pub alpha0_pairing_zero: bool,
    pub b_pairing: i64,
    pub b_pairing_is_n: bool,
    pub c: i64,
    pub expected: FneqCertificate,
    pub detected: Option<FneqCertificate>,
    pub certificate_matches: bool,
    #[serde(serialize_with = "crate::algebra::serial::serialize")]
    pub zeta: FactoredRational,
}

impl MainTheoremReport {
    pub fn all_pass(&self) -> bool {
        self.translation_holds
            && self.alpha0_pairing_zero
            && self.b_pairing_is_n
            && self.certificate_matches
    }
}

pub const TRANSLATION_BOX: i64 = 6;

pub fn verify_main_theorem(zp: &ZetaProblem, wd: &WeightDatum) -> Result<MainTheoremReport> {
    let dual = choose_dual_basis(wd)?;
    let m = wd.dim();
    let l = wd.l;
    if zp.complex.dim() != m || zp.complex.bounding().len() != m {
        return Err(Error::Hypothesis(
            "problem does not match the weight datum".into(),
        ));
    }
    let a0 = dual.a0.clone();
    let cx = &zp.complex;

    let mut failures = Vec::new();
    // columns of M^-1
    let inverse: Vec<Vec<i64>> = (0..m)
        .map(|j| {
            solve_integer(
                &dual.matrix,
                &(0..m).map(|i| (i == j) as i64).collect::<Vec<_>>(),
            )
        })
        .collect();
    let box_points = lattice_box(m, TRANSLATION_BOX);
    for region in geometry::subsets(l) {
        let full = geometry::complement(m, &region);
        let roots_only = geometry::complement(l, &region);
        for y in &box_points {
            // x = M^-1 y
            let mut x = vec![0i64; m];
            for (j, yj) in y.iter().enumerate() {
                for (xi, c) in x.iter_mut().zip(&inverse[j]) {
                    *xi += yj * c;
                }
            }
            let lhs = cx
                .locate(&x)
                .is_some_and(|s| geometry::in_region(&s, &full));
            let shifted = linalg::sub(&x, &a0);
            let rhs = cx
                .locate(&shifted)
                .is_some_and(|s| geometry::in_region(&s, &roots_only));
            if lhs != rhs && failures.len() < 10 {
                failures.push(format!("I = {region:?}, x = {x:?}"));
            }
        }
    }

    let alpha0_pairing = dot(&zp.spec.a, &a0);
    let b_pairing = dot(&zp.spec.b, &a0);
    let n = zp.weight_count as i64;
    let cell = cx
        .locate(&a0)
        .ok_or_else(|| Error::Hypothesis(format!("a0 = {a0:?} is not in the cone")))?;
    let gamma = zp
        .spec
        .gamma
        .value(&cell, m)
        .ok_or_else(|| Error::Parameter(format!("weight is not defined on {cell}")))?;
    let c = dot(&gamma, &a0);
    let expected = FneqCertificate {
        sign_exponent: ((l + wd.d) % 2) as u8,
        a: zp.roots.positive_roots.len() as i64 + c,
        b: -n,
    };
    let zeta = weighted_zeta(zp)?;
    let detected = fneq_detect(&zeta)?;
    Ok(MainTheoremReport {
        a0,
        translation_holds: failures.is_empty(),
        translation_failures: failures,
        alpha0_pairing,
        alpha0_pairing_zero: alpha0_pairing == 0,
        b_pairing,
        b_pairing_is_n: b_pairing == n,
        c,
        expected,
        detected,
        certificate_matches: detected == Some(expected),
        zeta,
    })
}

fn lattice_box(m: usize, n: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..=n).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn check_torus_params(d: usize, k: i64) -> Result<()> {
    if d < 2 || k < 3 {
        return Err(Error::Parameter(format!(
            "torus example needs d >= 2 and k >= 3, got d = {d}, k = {k}"
        )));
    }
    Ok(())
}

/// The torus family: `C = {x_i >= 0, k x_i - x_d >= 0 (i < d)}` in `R^d` with
/// `A = 0`, `B = (k+1, …, k+1, -(d-2))` and no Weyl part.
pub fn torus_example(d: usize, k: i64) -> Result<ZetaProblem> {
    check_torus_params(d, k)?;
    let mut bounding: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| (i == j) as i64).collect())
        .collect();
    for i in 0..d - 1 {
        let mut v = vec![0; d];
        v[i] = k;
        v[d - 1] = -1;
        bounding.push(v);
    }
    let complex = CellComplex::from_normals(d, bounding, Vec::new())?;
    let mut b = vec![k + 1; d];
    b[d - 1] = -(d as i64 - 2);
    let spec = GenFunSpec::new(vec![0; d], b, PiecewiseWeight::Zero);
    spec.validate(&complex)?;
    Ok(ZetaProblem {
        complex,
        spec,
        roots: RootSystem::from_simple_roots(Vec::new(), d)?,
        weight_count: 2 * d - 1,
        duplicates: Vec::new(),
    })
}

/// `(1 + X_1⋯X_d (1 + X_d + ⋯ + X_d^{k-2})) / ((1-X_1)⋯(1-X_{d-1})(1 - X_1⋯X_{d-1}X_d^k))`
/// in formal variables, and its specialization under the exponent map of
/// [`torus_example`].
pub fn torus_closed_form(d: usize, k: i64) -> Result<(MultiGenFun, FactoredRational)> {
    check_torus_params(d, k)?;
    let mut numerator = vec![(vec![0; d], rat(1))];
    for j in 0..=k - 2 {
        let mut e = vec![1; d];
        e[d - 1] = 1 + j;
        numerator.push((e, rat(1)));
    }
    let mut denominator: Vec<Vec<i64>> = (0..d - 1)
        .map(|i| (0..d).map(|j| (i == j) as i64).collect())
        .collect();
    let mut top = vec![1; d];
    top[d - 1] = k;
    denominator.push(top);
    let g = MultiGenFun {
        numerator,
        denominator,
    };
    let zp = torus_example(d, k)?;
    let specialized = g.specialize(&zp.spec.a, &zp.spec.b)?;
    Ok((g, specialized))
}
