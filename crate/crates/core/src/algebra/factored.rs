use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::laurent::{render_monomial, LaurentPoly, Monomial};
use crate::error::{Error, Result};

/// A denominator factor `(1 - q^a t^b)` in canonical orientation:
/// `b > 0`, or `b == 0 && a > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CycloFactor {
    a: i64,
    b: i64,
}

impl CycloFactor {
    /// Builds a canonical factor from `(1 - q^a t^b)`. Returns the factor and,
    /// when the orientation had to be flipped, the monomial `x` such that
    /// `(1 - q^a t^b) = (-x) (1 - x^-1)`, i.e. `x = q^a t^b`.
    pub fn canonical(a: i64, b: i64) -> Result<(CycloFactor, Option<Monomial>)> {
        if a == 0 && b == 0 {
            return Err(Error::ZeroFactor);
        }
        if b > 0 || (b == 0 && a > 0) {
            Ok((CycloFactor { a, b }, None))
        } else {
            Ok((CycloFactor { a: -a, b: -b }, Some(Monomial::new(a, b))))
        }
    }

    pub fn new(a: i64, b: i64) -> Result<CycloFactor> {
        match Self::canonical(a, b)? {
            (f, None) => Ok(f),
            _ => Err(Error::Parameter(format!(
                "factor (1 - q^{a} t^{b}) is not in canonical orientation"
            ))),
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::new(self.a, self.b)
    }

    pub fn poly(&self) -> LaurentPoly {
        LaurentPoly::one_minus(self.monomial())
    }
}

impl Ord for CycloFactor {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.b, self.a).cmp(&(other.b, other.a))
    }
}

impl PartialOrd for CycloFactor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type FactorMultiset = BTreeMap<CycloFactor, u32>;

/// `numerator / prod (1 - q^a t^b)^k`. Zero has an empty denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FactoredRational {
    numerator: LaurentPoly,
    denominator: FactorMultiset,
}

impl FactoredRational {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        FactoredRational {
            numerator: p,
            denominator: BTreeMap::new(),
        }
    }

    /// Builds `numerator / prod (1 - q^a t^b)` over the given exponent pairs,
    /// re-orienting factors as needed.
    pub fn new<I>(numerator: LaurentPoly, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut num = numerator;
        let mut den = FactorMultiset::new();
        for (a, b) in factors {
            let (f, flipped) = CycloFactor::canonical(a, b)?;
            if let Some(x) = flipped {
                // 1/(1 - x) = -x^-1 / (1 - x^-1)
                num = num.shift(x.inverse()).scale(&-BigRational::one());
            }
            *den.entry(f).or_insert(0) += 1;
        }
        Ok(Self::from_parts(num, den))
    }

    fn from_parts(numerator: LaurentPoly, denominator: FactorMultiset) -> Self {
        if numerator.is_zero() {
            Self::zero()
        } else {
            FactoredRational {
                numerator,
                denominator,
            }
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &FactorMultiset {
        &self.denominator
    }

    /// Denominator factors listed with multiplicity, canonical order.
    pub fn factors(&self) -> impl Iterator<Item = CycloFactor> + '_ {
        self.denominator
            .iter()
            .flat_map(|(f, k)| std::iter::repeat_n(*f, *k as usize))
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut lcd = self.denominator.clone();
        for (f, k) in &other.denominator {
            let e = lcd.entry(*f).or_insert(0);
            *e = (*e).max(*k);
        }
        let lhs = &self.numerator * &expand(&difference(&lcd, &self.denominator));
        let rhs = &other.numerator * &expand(&difference(&lcd, &other.denominator));
        Self::from_parts(&lhs + &rhs, lcd)
    }

    pub fn neg(&self) -> Self {
        Self::from_parts(-&self.numerator, self.denominator.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut den = self.denominator.clone();
        for (f, k) in &other.denominator {
            *den.entry(*f).or_insert(0) += k;
        }
        Self::from_parts(&self.numerator * &other.numerator, den)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_parts(self.numerator.scale(c), self.denominator.clone())
    }

    /// Multiplies by `c * q^a t^b`.
    pub fn mul_monomial(&self, c: &BigRational, m: Monomial) -> Self {
        Self::from_parts(self.numerator.shift(m).scale(c), self.denominator.clone())
    }

    /// Cancels every denominator factor that divides the numerator exactly.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        loop {
            let mut changed = false;
            for (f, k) in den.iter_mut() {
                while *k > 0 {
                    match num.div_one_minus(f.monomial()) {
                        Some(quot) => {
                            num = quot;
                            *k -= 1;
                            changed = true;
                        }
                        None => break,
                    }
                }
            }
            den.retain(|_, k| *k > 0);
            if !changed {
                break;
            }
        }
        Self::from_parts(num, den)
    }

    /// Cross-multiplied numerators `(x_num * D_y\D_x, y_num * D_x\D_y)`.
    fn cross(&self, other: &Self) -> (LaurentPoly, LaurentPoly) {
        let lhs = &self.numerator * &expand(&difference(&other.denominator, &self.denominator));
        let rhs = &other.numerator * &expand(&difference(&self.denominator, &other.denominator));
        (lhs, rhs)
    }

    /// Equality as rational functions.
    pub fn eq_rational(&self, other: &Self) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            _ => {
                let (l, r) = self.cross(other);
                l == r
            }
        }
    }

    /// Substitutes `q -> q^-1, t -> t^-1`, using
    /// `1/(1 - x^-1) = -x/(1 - x)` on each factor.
    pub fn invert_variables(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut shift = Monomial::ONE;
        let mut count = 0u64;
        for (f, k) in &self.denominator {
            shift = shift.times(f.monomial().pow(*k as i64));
            count += *k as u64;
        }
        let sign = if count.is_multiple_of(2) {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        Self::from_parts(
            self.numerator.invert().shift(shift).scale(&sign),
            self.denominator.clone(),
        )
    }

    /// If `self = eps * q^a t^b * other` with `eps = +-1`, returns `(eps, a, b)`.
    pub fn monomial_ratio_test(&self, other: &Self) -> Result<Option<(i8, i64, i64)>> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(None);
        }
        let (l, r) = self.cross(other);
        Ok(l.monomial_multiple_of(&r).and_then(|(c, m)| {
            if c.is_one() {
                Some((1, m.q, m.t))
            } else if (-c).is_one() {
                Some((-1, m.q, m.t))
            } else {
                None
            }
        }))
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a FactoredRational>>(items: I) -> Self {
        items.into_iter().fold(Self::zero(), |acc, x| acc.add(x))
    }

    /// True iff the numerator has integer coefficients.
    pub fn has_integral_numerator(&self) -> bool {
        self.numerator.is_integral()
    }
}

/// Multiset difference `a \ b`.
fn difference(a: &FactorMultiset, b: &FactorMultiset) -> FactorMultiset {
    a.iter()
        .filter_map(|(f, k)| {
            let kb = b.get(f).copied().unwrap_or(0);
            (*k > kb).then(|| (*f, k - kb))
        })
        .collect()
}

/// Expanded product of the factors.
pub fn expand(factors: &FactorMultiset) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for (f, k) in factors {
        acc = &acc * &f.poly().pow(*k);
    }
    acc
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        if self.numerator.len() == 1 {
            write!(f, "{}", self.numerator)?;
        } else {
            write!(f, "({})", self.numerator)?;
        }
        let factors: Vec<String> = self
            .factors()
            .map(|fac| format!("(1 - {})", render_monomial(fac.monomial())))
            .collect();
        if factors.len() == 1 {
            write!(f, "/{}", factors[0])
        } else {
            write!(f, "/({})", factors.join("*"))
        }
    }
}

impl From<LaurentPoly> for FactoredRational {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::rat;

    fn poly(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(c, a, b)| (Monomial::new(a, b), rat(c))))
    }

    fn fr(num: &[(i64, i64, i64)], den: &[(i64, i64)]) -> FactoredRational {
        FactoredRational::new(poly(num), den.iter().copied()).unwrap()
    }

    #[test]
    fn add_examples() {
        // 1/(1-t) + t/(1-t) = (1+t)/(1-t)
        let x = fr(&[(1, 0, 0)], &[(0, 1)]);
        let y = fr(&[(1, 0, 1)], &[(0, 1)]);
        assert_eq!(x.add(&y), fr(&[(1, 0, 0), (1, 0, 1)], &[(0, 1)]));
        assert_eq!(x.add(&FactoredRational::zero()), x);
        // 1/(1-qt) + 1/(1-t^2) = (2 - t^2 - qt)/((1-qt)(1-t^2))
        let a = fr(&[(1, 0, 0)], &[(1, 1)]);
        let b = fr(&[(1, 0, 0)], &[(0, 2)]);
        assert_eq!(
            a.add(&b),
            fr(&[(2, 0, 0), (-1, 0, 2), (-1, 1, 1)], &[(1, 1), (0, 2)])
        );
    }

    #[test]
    fn mul_examples() {
        let x = fr(&[(1, 0, 0)], &[(0, 1)]);
        let one_minus_t = fr(&[(1, 0, 0), (-1, 0, 1)], &[]);
        assert_eq!(x.mul(&one_minus_t).normalize(), FactoredRational::one());
        assert_eq!(x.mul(&FactoredRational::one()), x);
        let y = fr(&[(1, 0, 1)], &[(0, 1)]);
        assert_eq!(y.mul(&y), fr(&[(1, 0, 2)], &[(0, 1), (0, 1)]));
    }

    #[test]
    fn normalize_examples() {
        let x = fr(&[(1, 0, 0), (-1, 0, 2)], &[(0, 1), (1, 1)]);
        assert_eq!(x.normalize(), fr(&[(1, 0, 0), (1, 0, 1)], &[(1, 1)]));
        assert!(fr(&[], &[(0, 1)]).normalize().is_zero());
        let y = fr(
            &[(1, 0, 0), (-1, 1, 1), (-1, 0, 2), (1, 1, 3)],
            &[(0, 2), (1, 1)],
        );
        assert_eq!(y.normalize(), FactoredRational::one());
    }

    #[test]
    fn eq_examples() {
        let x = fr(&[(1, 0, 0)], &[(0, 1)]);
        let y = fr(&[(1, 0, 0), (1, 0, 1)], &[(0, 2)]);
        assert!(x.eq_rational(&y));
        assert!(!fr(&[(1, 0, 1)], &[(0, 1)]).eq_rational(&x));
    }

    #[test]
    fn invert_examples() {
        let x = fr(&[(1, 0, 0)], &[(0, 1)]);
        assert_eq!(x.invert_variables(), fr(&[(-1, 0, 1)], &[(0, 1)]));
        let y = fr(&[(1, 0, 0)], &[(1, 1)]);
        assert_eq!(y.invert_variables(), fr(&[(-1, 1, 1)], &[(1, 1)]));
        let z = fr(&[(1, 0, 0)], &[(0, 1), (1, 1)]);
        assert_eq!(z.invert_variables(), fr(&[(1, 1, 2)], &[(0, 1), (1, 1)]));
    }

    #[test]
    fn ratio_examples() {
        let y = fr(&[(1, 0, 0)], &[(0, 1), (1, 1)]);
        let x = fr(&[(1, 1, 2)], &[(0, 1), (1, 1)]);
        assert_eq!(x.monomial_ratio_test(&y).unwrap(), Some((1, 1, 2)));
        assert_eq!(y.monomial_ratio_test(&y).unwrap(), Some((1, 0, 0)));
        let a = fr(&[(1, 0, 0)], &[(0, 1)]);
        let b = fr(&[(1, 0, 0)], &[(1, 1)]);
        assert_eq!(a.monomial_ratio_test(&b).unwrap(), None);
        assert_eq!(
            a.monomial_ratio_test(&FactoredRational::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn factor_orientation() {
        // 1/(1 - t^-1) = -t/(1 - t)
        let x = fr(&[(1, 0, 0)], &[(0, -1)]);
        assert_eq!(x, fr(&[(-1, 0, 1)], &[(0, 1)]));
        assert_eq!(
            FactoredRational::new(LaurentPoly::one(), [(0, 0)]),
            Err(Error::ZeroFactor)
        );
        // b == 0 needs a > 0
        let (f, flipped) = CycloFactor::canonical(-2, 0).unwrap();
        assert_eq!((f.a(), f.b()), (2, 0));
        assert!(flipped.is_some());
    }
}
