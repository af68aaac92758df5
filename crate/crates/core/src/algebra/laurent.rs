use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent pair of a monomial `q^q t^t`. Orders by `(t, q)`, which is the
/// canonical term order used in serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub t: i64,
    pub q: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { t: 0, q: 0 };

    pub fn new(q: i64, t: i64) -> Self {
        Monomial { t, q }
    }

    pub fn times(self, other: Monomial) -> Monomial {
        Monomial::new(self.q + other.q, self.t + other.t)
    }

    pub fn pow(self, k: i64) -> Monomial {
        Monomial::new(self.q * k, self.t * k)
    }

    pub fn inverse(self) -> Monomial {
        Monomial::new(-self.q, -self.t)
    }

    pub fn is_one(self) -> bool {
        self == Monomial::ONE
    }
}

/// Laurent polynomial in `q` and `t` with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), Monomial::ONE)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    pub fn monomial(c: BigRational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// `q^a t^b` with coefficient one.
    pub fn qt(a: i64, b: i64) -> Self {
        Self::monomial(BigRational::one(), Monomial::new(a, b))
    }

    /// `1 - q^a t^b`.
    pub fn one_minus(m: Monomial) -> Self {
        let mut p = Self::one();
        p.add_term(m, -BigRational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical `(e_t, e_q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> BigRational {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Largest term in canonical order.
    pub fn leading(&self) -> Option<(Monomial, &BigRational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn min_t(&self) -> Option<i64> {
        self.terms.keys().next().map(|m| m.t)
    }

    pub fn max_t(&self) -> Option<i64> {
        self.terms.keys().next_back().map(|m| m.t)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn shift(&self, by: Monomial) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.times(by), c.clone()))
                .collect(),
        }
    }

    /// Applies an exponent map that is injective on the support.
    pub fn map_exponents(&self, f: impl Fn(Monomial) -> Monomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(*m), c.clone())))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients depending only on `q` at a fixed `t`-degree.
    pub fn t_slice(&self, t: i64) -> LaurentPoly {
        Self::from_terms(
            self.terms
                .range(Monomial::new(i64::MIN, t)..=Monomial::new(i64::MAX, t))
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    /// Exact quotient by `1 - x^step`, or `None` if it does not divide.
    ///
    /// The support splits into lines `base + j*step`; along each line the
    /// restriction is a univariate polynomial `P(x)` and divisibility is
    /// `P(1) = 0`, with quotient coefficients given by prefix sums.
    pub fn div_one_minus(&self, step: Monomial) -> Option<LaurentPoly> {
        if step.is_one() {
            return None;
        }
        let mut lines: BTreeMap<Monomial, BTreeMap<i64, &BigRational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (base, j) = line_position(*m, step);
            lines.entry(base).or_default().insert(j, c);
        }
        let mut out = LaurentPoly::zero();
        for (base, coeffs) in lines {
            let lo = *coeffs.keys().next().unwrap();
            let hi = *coeffs.keys().next_back().unwrap();
            let mut running = BigRational::zero();
            for j in lo..hi {
                if let Some(c) = coeffs.get(&j) {
                    running += *c;
                }
                if !running.is_zero() {
                    out.add_term(base.times(step.pow(j)), running.clone());
                }
            }
            running += coeffs[&hi];
            if !running.is_zero() {
                return None;
            }
        }
        Some(out)
    }

    /// `p(q^-1, t^-1)`.
    pub fn invert(&self) -> LaurentPoly {
        self.map_exponents(Monomial::inverse)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// If `self = c * m * other` for a rational `c` and monomial `m`, returns them.
    pub fn monomial_multiple_of(&self, other: &LaurentPoly) -> Option<(BigRational, Monomial)> {
        if self.len() != other.len() || self.is_zero() {
            return None;
        }
        let (ms, cs) = self.leading()?;
        let (mo, co) = other.leading()?;
        let c = cs / co;
        let m = ms.times(mo.inverse());
        if other.shift(m).scale(&c) == *self {
            Some((c, m))
        } else {
            None
        }
    }
}

fn line_position(m: Monomial, step: Monomial) -> (Monomial, i64) {
    if step.t != 0 {
        let j = m.t.div_euclid(step.t);
        (m.times(step.pow(-j)), j)
    } else {
        let j = m.q.div_euclid(step.q);
        (m.times(step.pow(-j)), j)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (small, large) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc: std::collections::HashMap<Monomial, BigRational> =
            std::collections::HashMap::with_capacity(small.len() * large.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                *acc.entry(ma.times(*mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = render_monomial(*m);
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Renders `q^a t^b` as a power of `q` with `t = q^{-s}`, e.g. `q^(1-2s)`.
pub fn render_monomial(m: Monomial) -> String {
    if m.is_one() {
        return String::new();
    }
    // exponent a - b s
    let s_coeff = -m.t;
    let s_part = match s_coeff {
        0 => String::new(),
        1 => "s".to_string(),
        -1 => "-s".to_string(),
        k => format!("{k}s"),
    };
    let expo = match (m.q, s_part.is_empty()) {
        (a, true) => a.to_string(),
        (0, false) => s_part,
        (a, false) => {
            if s_part.starts_with('-') {
                format!("{a}{s_part}")
            } else {
                format!("{a}+{s_part}")
            }
        }
    };
    if expo == "1" {
        "q".to_string()
    } else if expo.len() == 1 || expo.parse::<i64>().is_ok() && !expo.starts_with('-') {
        format!("q^{expo}")
    } else {
        format!("q^({expo})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(c, a, b)| (Monomial::new(a, b), rat(c))))
    }

    #[test]
    fn canonical_order_is_t_then_q() {
        let poly = p(&[(1, 5, 0), (1, 0, 1), (1, -3, 1)]);
        let order: Vec<_> = poly.terms().map(|(m, _)| (m.q, m.t)).collect();
        assert_eq!(order, vec![(5, 0), (-3, 1), (0, 1)]);
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = p(&[(1, 0, 1), (2, 0, 0)]);
        let b = p(&[(-1, 0, 1)]);
        assert_eq!(&a + &b, p(&[(2, 0, 0)]));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_by_one_minus() {
        // (1 - t^2) / (1 - t) = 1 + t
        let num = p(&[(1, 0, 0), (-1, 0, 2)]);
        assert_eq!(
            num.div_one_minus(Monomial::new(0, 1)),
            Some(p(&[(1, 0, 0), (1, 0, 1)]))
        );
        // 1 + t is not divisible by 1 - t
        assert_eq!(
            p(&[(1, 0, 0), (1, 0, 1)]).div_one_minus(Monomial::new(0, 1)),
            None
        );
        // q-direction with negative exponents: (q^-1 - q^2) / (1 - q) = q^-1 + 1 + q
        let num = p(&[(1, -1, 0), (-1, 2, 0)]);
        assert_eq!(
            num.div_one_minus(Monomial::new(1, 0)),
            Some(p(&[(1, -1, 0), (1, 0, 0), (1, 1, 0)]))
        );
    }

    #[test]
    fn render() {
        assert_eq!(render_monomial(Monomial::new(1, 2)), "q^(1-2s)");
        assert_eq!(render_monomial(Monomial::new(0, 1)), "q^(-s)");
        assert_eq!(render_monomial(Monomial::new(1, 0)), "q");
        assert_eq!(render_monomial(Monomial::new(3, 0)), "q^3");
        assert_eq!(render_monomial(Monomial::new(2, -1)), "q^(2+s)");
    }
}
