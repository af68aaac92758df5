use num_rational::BigRational;

use super::factored::FactoredRational;
use super::laurent::{LaurentPoly, Monomial};
use crate::error::{Error, Result};
use crate::linalg::dot;

/// A generating function in formal variables `X_1..X_m`:
/// `sum c_e X^e / prod (1 - X^u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGenFun {
    pub numerator: Vec<(Vec<i64>, BigRational)>,
    pub denominator: Vec<Vec<i64>>,
}

impl MultiGenFun {
    pub fn dim(&self) -> usize {
        self.numerator
            .first()
            .map(|(e, _)| e.len())
            .or_else(|| self.denominator.first().map(Vec::len))
            .unwrap_or(0)
    }

    /// Substitutes `X^e -> q^(C.e) t^(B.e)`. Every denominator exponent must
    /// satisfy `B.u > 0`.
    pub fn specialize(&self, c: &[i64], b: &[i64]) -> Result<FactoredRational> {
        let m = c.len();
        if b.len() != m {
            return Err(Error::Dimension(format!(
                "C has length {m} but B has length {}",
                b.len()
            )));
        }
        let check = |e: &Vec<i64>| {
            if e.len() != m {
                Err(Error::Dimension(format!(
                    "exponent vector of length {} in {m} variables",
                    e.len()
                )))
            } else {
                Ok(())
            }
        };
        let mut num = LaurentPoly::zero();
        for (e, coeff) in &self.numerator {
            check(e)?;
            num.add_term(Monomial::new(dot(c, e), dot(b, e)), coeff.clone());
        }
        let mut factors = Vec::with_capacity(self.denominator.len());
        for u in &self.denominator {
            check(u)?;
            let pairing = dot(b, u);
            if pairing <= 0 {
                return Err(Error::NonPositiveDirection {
                    direction: u.clone(),
                    pairing,
                });
            }
            factors.push((dot(c, u), pairing));
        }
        FactoredRational::new(num, factors)
    }
}

/// Substitutes `X^e -> q^(C.e) t^(B.e)` into `g`.
pub fn specialize_monomials(g: &MultiGenFun, c: &[i64], b: &[i64]) -> Result<FactoredRational> {
    g.specialize(c, b)
}
