//! Classical root systems in ambient coordinates and their Weyl groups.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, dot};

pub const DEFAULT_GROUP_BOUND: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(CartanType::A),
            "B" | "b" => Ok(CartanType::B),
            "C" | "c" => Ok(CartanType::C),
            "D" | "d" => Ok(CartanType::D),
            _ => Err(Error::RootSystem(format!("unknown type {s:?}"))),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

type Matrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub cartan_type: Option<CartanType>,
    pub rank: usize,
    pub ambient_dim: usize,
    pub simple_roots: Vec<Vec<i64>>,
    /// Positive roots, in the order they were reached from the simple roots.
    pub positive_roots: Vec<Vec<i64>>,
    /// Coefficients of each positive root in the simple roots.
    pub positive_coefficients: Vec<Vec<i64>>,
    reflections: Vec<Matrix>,
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| (i == j) as i64).collect()
}

pub fn build_root_system(cartan_type: CartanType, l: usize) -> Result<RootSystem> {
    let min = if cartan_type == CartanType::D { 2 } else { 1 };
    if l < min {
        return Err(Error::RootSystem(format!(
            "{cartan_type}{l} needs rank at least {min}"
        )));
    }
    let (n, mut simple): (usize, Vec<Vec<i64>>) = match cartan_type {
        CartanType::A => (l + 1, Vec::new()),
        _ => (l, Vec::new()),
    };
    let steps = if cartan_type == CartanType::A {
        l
    } else {
        l - 1
    };
    for i in 0..steps {
        simple.push(linalg::sub(&unit(n, i), &unit(n, i + 1)));
    }
    match cartan_type {
        CartanType::A => {}
        CartanType::B => simple.push(unit(n, l - 1)),
        CartanType::C => simple.push(linalg::add(&unit(n, l - 1), &unit(n, l - 1))),
        CartanType::D => simple.push(linalg::add(&unit(n, l - 2), &unit(n, l - 1))),
    }
    let mut rs = RootSystem::from_simple_roots(simple, n)?;
    rs.cartan_type = Some(cartan_type);
    Ok(rs)
}

fn reflection(alpha: &[i64]) -> Result<Matrix> {
    let n = alpha.len();
    let norm = dot(alpha, alpha);
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let num = 2 * alpha[i] * alpha[j];
            if num % norm != 0 {
                return Err(Error::RootSystem(format!(
                    "reflection in {alpha:?} is not integral"
                )));
            }
            m[i][j] = (i == j) as i64 - num / norm;
        }
    }
    Ok(m)
}

pub fn apply(m: &Matrix, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| dot(row, v)).collect()
}

fn compose(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit(n, i)).collect()
}

impl RootSystem {
    /// Root system generated by explicit simple roots (possibly none) in
    /// `Z^ambient_dim`. The reflections must be integral and every root must
    /// be a same-signed integer combination of the simple roots.
    pub fn from_simple_roots(simple_roots: Vec<Vec<i64>>, ambient_dim: usize) -> Result<Self> {
        if simple_roots.iter().any(|a| a.len() != ambient_dim) {
            return Err(Error::RootSystem("simple root of wrong length".into()));
        }
        if simple_roots.iter().any(|a| linalg::is_zero(a)) {
            return Err(Error::RootSystem("zero simple root".into()));
        }
        if linalg::rank(&simple_roots) != simple_roots.len() {
            return Err(Error::RootSystem(
                "simple roots are linearly dependent".into(),
            ));
        }
        let reflections = simple_roots
            .iter()
            .map(|a| reflection(a))
            .collect::<Result<Vec<_>>>()?;
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut queue: VecDeque<Vec<i64>> = simple_roots.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            if roots.contains(&r) {
                continue;
            }
            if roots.len() > 4 * DEFAULT_GROUP_BOUND {
                return Err(Error::RootSystem("root closure does not terminate".into()));
            }
            for s in &reflections {
                queue.push_back(apply(s, &r));
            }
            roots.push(r);
        }
        let mut positive_roots = Vec::new();
        let mut positive_coefficients = Vec::new();
        for r in &roots {
            let c = linalg::coordinates(&simple_roots, r)
                .ok_or_else(|| Error::RootSystem(format!("root {r:?} outside the simple span")))?;
            if c.iter().any(|x| !x.is_integer()) {
                return Err(Error::RootSystem(format!("root {r:?} is not integral")));
            }
            let pos = c.iter().all(|x| !x.is_negative());
            let neg = c.iter().all(|x| !x.is_positive());
            if !pos && !neg {
                return Err(Error::RootSystem(format!("root {r:?} has mixed signs")));
            }
            if pos {
                positive_roots.push(r.clone());
                positive_coefficients.push(
                    c.iter()
                        .map(|x| x.to_integer().to_i64().expect("coefficient fits"))
                        .collect(),
                );
            }
        }
        debug_assert!(roots.iter().all(|r| roots.contains(&linalg::neg(r))));
        Ok(RootSystem {
            cartan_type: None,
            rank: simple_roots.len(),
            ambient_dim,
            simple_roots,
            positive_roots,
            positive_coefficients,
            reflections,
        })
    }

    pub fn negative_roots(&self) -> Vec<Vec<i64>> {
        self.positive_roots.iter().map(|r| linalg::neg(r)).collect()
    }

    pub fn is_positive(&self, v: &[i64]) -> bool {
        self.positive_roots.iter().any(|r| r == v)
    }

    pub fn is_negative(&self, v: &[i64]) -> bool {
        self.positive_roots
            .iter()
            .any(|r| r.iter().zip(v).all(|(a, b)| *a == -b))
    }

    pub fn reflection_matrix(&self, i: usize) -> &Matrix {
        &self.reflections[i]
    }

    /// `Σ_{α ∈ Φ⁺} α` written in the simple roots.
    pub fn alpha0_coefficients(&self) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        for c in &self.positive_coefficients {
            for (o, x) in out.iter_mut().zip(c) {
                *o += x;
            }
        }
        out
    }

    /// Degrees of the basic invariants, for the classical types.
    pub fn degrees(&self) -> Option<Vec<u32>> {
        let l = self.rank as u32;
        Some(match self.cartan_type? {
            CartanType::A => (2..=l + 1).collect(),
            CartanType::B | CartanType::C => (1..=l).map(|i| 2 * i).collect(),
            CartanType::D => {
                let mut d: Vec<u32> = (1..l).map(|i| 2 * i).collect();
                d.push(l);
                d.sort_unstable();
                d
            }
        })
    }

    pub fn classical_positive_count(cartan_type: CartanType, l: usize) -> usize {
        match cartan_type {
            CartanType::A => l * (l + 1) / 2,
            CartanType::B | CartanType::C => l * l,
            CartanType::D => l * (l - 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Matrix,
    pub length: usize,
    /// A reduced word: `matrix = s_{word[0]} ⋯ s_{word[k-1]}`.
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        apply(&self.matrix, v)
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn compose(&self, other: &WeylElement) -> Matrix {
        compose(&self.matrix, &other.matrix)
    }
}

/// All of `W` by breadth-first search over right multiplication by simple
/// reflections; BFS depth is the length.
pub fn enumerate_weyl(rs: &RootSystem) -> Result<Vec<WeylElement>> {
    enumerate_weyl_bounded(rs, DEFAULT_GROUP_BOUND)
}

pub fn enumerate_weyl_bounded(rs: &RootSystem, bound: usize) -> Result<Vec<WeylElement>> {
    let id = WeylElement {
        matrix: identity(rs.ambient_dim),
        length: 0,
        word: Vec::new(),
    };
    let mut seen: HashMap<Matrix, ()> = HashMap::from([(id.matrix.clone(), ())]);
    let mut out = vec![id];
    let mut frontier = 0;
    while frontier < out.len() {
        let (matrix, length, word) = {
            let w = &out[frontier];
            (w.matrix.clone(), w.length, w.word.clone())
        };
        for (i, s) in rs.reflections.iter().enumerate() {
            let next = compose(&matrix, s);
            if seen.contains_key(&next) {
                continue;
            }
            if out.len() >= bound {
                return Err(Error::GroupTooLarge(bound));
            }
            seen.insert(next.clone(), ());
            let mut w = word.clone();
            w.push(i);
            out.push(WeylElement {
                matrix: next,
                length: length + 1,
                word: w,
            });
        }
        frontier += 1;
    }
    Ok(out)
}

/// The unique element of maximal length.
pub fn longest_element(elements: &[WeylElement]) -> &WeylElement {
    elements
        .iter()
        .max_by_key(|w| w.length)
        .expect("a Weyl group contains the identity")
}

/// `I_w = {i : α_i ∈ w(Φ⁻)}`, 0-based.
pub fn descent_set(rs: &RootSystem, w: &WeylElement) -> Vec<usize> {
    let image: Vec<Vec<i64>> = rs.negative_roots().iter().map(|r| w.apply(r)).collect();
    (0..rs.rank)
        .filter(|&i| image.contains(&rs.simple_roots[i]))
        .collect()
}

/// `|{α ∈ Φ⁺ : wα ∈ Φ⁻}|`.
pub fn inversion_count(rs: &RootSystem, w: &WeylElement) -> usize {
    rs.positive_roots
        .iter()
        .filter(|r| rs.is_negative(&w.apply(r)))
        .count()
}

/// Coefficients of `Σ_w q^{λ(w)}`.
pub fn length_generating_polynomial(elements: &[WeylElement]) -> Vec<u64> {
    let max = elements.iter().map(|w| w.length).max().unwrap_or(0);
    let mut out = vec![0u64; max + 1];
    for w in elements {
        out[w.length] += 1;
    }
    out
}

/// `Π_i (1 + q + ⋯ + q^{d_i - 1})`.
pub fn poincare_polynomial(degrees: &[u32]) -> Vec<u64> {
    let mut out = vec![1u64];
    for &d in degrees {
        let mut next = vec![0u64; out.len() + d as usize - 1];
        for (i, c) in out.iter().enumerate() {
            for j in 0..d as usize {
                next[i + j] += c;
            }
        }
        out = next;
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// Checks the length, descent and Poincaré identities of a root system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylReport {
    pub order: usize,
    pub positive_roots: usize,
    pub longest_length: usize,
    pub lengths_match_inversions: bool,
    pub lengths_complement: bool,
    pub descents_complement: bool,
    pub longest_is_involution: bool,
    pub longest_descent_is_full: bool,
    pub poincare_matches: Option<bool>,
}

impl WeylReport {
    pub fn all_hold(&self) -> bool {
        self.lengths_match_inversions
            && self.lengths_complement
            && self.descents_complement
            && self.longest_is_involution
            && self.longest_descent_is_full
            && self.poincare_matches != Some(false)
    }
}

pub fn check_weyl_identities(rs: &RootSystem) -> Result<WeylReport> {
    let elements = enumerate_weyl(rs)?;
    let w0 = longest_element(&elements);
    let npos = rs.positive_roots.len();
    let index: HashMap<&Matrix, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, w)| (&w.matrix, i))
        .collect();
    let mut lengths_complement = true;
    let mut descents_complement = true;
    for w in &elements {
        let ww0 = &elements[index[&w.compose(w0)]];
        lengths_complement &= w.length + ww0.length == npos;
        let dw = descent_set(rs, w);
        let expected: Vec<usize> = (0..rs.rank).filter(|i| !dw.contains(i)).collect();
        descents_complement &= descent_set(rs, ww0) == expected;
    }
    let lengths_match_inversions = elements.iter().all(|w| inversion_count(rs, w) == w.length);
    let longest_is_involution = w0.compose(w0) == identity(rs.ambient_dim);
    let longest_descent_is_full = descent_set(rs, w0) == (0..rs.rank).collect::<Vec<_>>();
    let poincare_matches = rs
        .degrees()
        .map(|d| poincare_polynomial(&d) == length_generating_polynomial(&elements));
    Ok(WeylReport {
        order: elements.len(),
        positive_roots: npos,
        longest_length: w0.length,
        lengths_match_inversions,
        lengths_complement,
        descents_complement,
        longest_is_involution,
        longest_descent_is_full,
        poincare_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_counts() {
        assert_eq!(
            build_root_system(CartanType::A, 1).unwrap().positive_roots,
            vec![vec![1, -1]]
        );
        for (t, l) in [
            (CartanType::A, 2),
            (CartanType::A, 3),
            (CartanType::B, 2),
            (CartanType::B, 3),
            (CartanType::C, 3),
            (CartanType::D, 4),
        ] {
            let rs = build_root_system(t, l).unwrap();
            assert_eq!(
                rs.positive_roots.len(),
                RootSystem::classical_positive_count(t, l),
                "{t}{l}"
            );
        }
        assert!(build_root_system(CartanType::D, 1).is_err());
        assert!(build_root_system(CartanType::A, 0).is_err());
    }

    #[test]
    fn small_groups() {
        let a1 = build_root_system(CartanType::A, 1).unwrap();
        let w = enumerate_weyl(&a1).unwrap();
        assert_eq!(w.iter().map(|x| x.length).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(longest_element(&w).length, 1);

        let a2 = build_root_system(CartanType::A, 2).unwrap();
        let w = enumerate_weyl(&a2).unwrap();
        let mut lengths: Vec<usize> = w.iter().map(|x| x.length).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);

        let b2 = build_root_system(CartanType::B, 2).unwrap();
        let w = enumerate_weyl(&b2).unwrap();
        assert_eq!(w.len(), 8);
        assert_eq!(longest_element(&w).length, 4);
    }

    #[test]
    fn descent_sets() {
        let a2 = build_root_system(CartanType::A, 2).unwrap();
        let w = enumerate_weyl(&a2).unwrap();
        assert_eq!(descent_set(&a2, &w[0]), Vec::<usize>::new());
        let s1 = w.iter().find(|x| x.word == vec![0]).unwrap();
        assert_eq!(descent_set(&a2, s1), vec![0]);
        assert_eq!(descent_set(&a2, longest_element(&w)), vec![0, 1]);
    }

    #[test]
    fn identities_for_classical_types() {
        for (t, l) in [
            (CartanType::A, 1),
            (CartanType::A, 2),
            (CartanType::B, 2),
            (CartanType::C, 2),
        ] {
            let rs = build_root_system(t, l).unwrap();
            let r = check_weyl_identities(&rs).unwrap();
            assert!(r.all_hold(), "{t}{l}: {r:?}");
            assert_eq!(r.poincare_matches, Some(true));
        }
    }

    #[test]
    fn trivial_and_bounded() {
        let rs = RootSystem::from_simple_roots(vec![], 2).unwrap();
        let w = enumerate_weyl(&rs).unwrap();
        assert_eq!(w.len(), 1);
        assert!(descent_set(&rs, &w[0]).is_empty());
        let a3 = build_root_system(CartanType::A, 3).unwrap();
        assert_eq!(
            enumerate_weyl_bounded(&a3, 10),
            Err(Error::GroupTooLarge(10))
        );
    }

    #[test]
    fn poincare_products() {
        assert_eq!(poincare_polynomial(&[2, 3]), vec![1, 2, 2, 1]);
        assert_eq!(poincare_polynomial(&[]), vec![1]);
    }
}
