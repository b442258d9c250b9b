//! Exact multivariate Laurent polynomials over a runtime field, in canonical
//! form (sorted exponent vectors, no zero coefficients).

use std::collections::BTreeMap;

use super::field::{Field, Scalar};
use crate::{Error, Result};

/// Exponent vector over the coefficient variables.
pub type Expo = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    /// Arity (number of variables); kept explicit so the zero polynomial
    /// still knows its ring.
    pub arity: usize,
    pub terms: BTreeMap<Expo, Scalar>,
}

impl LaurentPoly {
    pub fn zero(arity: usize) -> Self {
        LaurentPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Scalar, field: &Field) -> Self {
        Self::monomial(vec![0; arity], c, field)
    }

    pub fn one(arity: usize, field: &Field) -> Self {
        Self::constant(arity, field.one(), field)
    }

    pub fn monomial(expo: Expo, c: Scalar, field: &Field) -> Self {
        let arity = expo.len();
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(expo, c);
        }
        LaurentPoly { arity, terms }
    }

    /// The variable `var` (0-based) to the power `e`.
    pub fn var_pow(arity: usize, var: usize, e: i64, field: &Field) -> Self {
        let mut expo = vec![0; arity];
        expo[var] = e;
        Self::monomial(expo, field.one(), field)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff the polynomial is a single monomial with nonzero coefficient
    /// (exactly the units of the Laurent ring).
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add(&self, other: &Self, field: &Field) -> Self {
        debug_assert_eq!(self.arity, other.arity);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let merged = match terms.get(e) {
                Some(prev) => field.add(prev, c),
                None => c.clone(),
            };
            if field.is_zero(&merged) {
                terms.remove(e);
            } else {
                terms.insert(e.clone(), merged);
            }
        }
        LaurentPoly {
            arity: self.arity,
            terms,
        }
    }

    pub fn neg(&self, field: &Field) -> Self {
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self, field: &Field) -> Self {
        self.add(&other.neg(field), field)
    }

    pub fn mul(&self, other: &Self, field: &Field) -> Self {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = LaurentPoly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let expo: Expo = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = field.mul(c1, c2);
                if field.is_zero(&c) {
                    continue;
                }
                let merged = match out.terms.get(&expo) {
                    Some(prev) => field.add(prev, &c),
                    None => c,
                };
                if field.is_zero(&merged) {
                    out.terms.remove(&expo);
                } else {
                    out.terms.insert(expo, merged);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar, field: &Field) -> Self {
        if field.is_zero(c) {
            return LaurentPoly::zero(self.arity);
        }
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), field.mul(k, c)))
                .collect(),
        }
    }

    /// Evaluate at a point with unit coordinates.
    pub fn eval(&self, point: &[Scalar], field: &Field) -> Result<Scalar> {
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                term = field.mul(&term, &field.pow(x, k)?);
            }
            acc = field.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Substitute each variable by a monomial (in a possibly different
    /// Laurent ring of arity `target_arity`): variable i ↦ coeff·x^{map[i]}.
    pub fn substitute_monomials(
        &self,
        map: &[(Scalar, Expo)],
        target_arity: usize,
        field: &Field,
    ) -> LaurentPoly {
        let mut out = LaurentPoly::zero(target_arity);
        for (e, c) in &self.terms {
            let mut expo = vec![0i64; target_arity];
            let mut coeff = c.clone();
            for (i, &k) in e.iter().enumerate() {
                let (mc, me) = &map[i];
                for (slot, v) in expo.iter_mut().zip(me) {
                    *slot += v * k;
                }
                // Unit coefficients only; negative powers are exact.
                coeff = field.mul(&coeff, &pow_unit(mc, k, field));
            }
            let merged = match out.terms.get(&expo) {
                Some(prev) => field.add(prev, &coeff),
                None => coeff,
            };
            if field.is_zero(&merged) {
                out.terms.remove(&expo);
            } else {
                out.terms.insert(expo, merged);
            }
        }
        out
    }

    /// Canonical representative up to monomial units: shift exponents so the
    /// componentwise minimum is zero, then scale so the lexicographically
    /// lowest term has coefficient one.
    pub fn canonical_up_to_unit(&self, field: &Field) -> Result<LaurentPoly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut min = vec![i64::MAX; self.arity];
        for e in self.terms.keys() {
            for (m, &v) in min.iter_mut().zip(e) {
                *m = (*m).min(v);
            }
        }
        let mut terms: BTreeMap<Expo, Scalar> = BTreeMap::new();
        for (e, c) in &self.terms {
            let shifted: Expo = e.iter().zip(&min).map(|(v, m)| v - m).collect();
            terms.insert(shifted, c.clone());
        }
        let lead = terms.iter().next().map(|(_, c)| c.clone()).unwrap();
        let inv = field.inv(&lead)?;
        for c in terms.values_mut() {
            *c = field.mul(c, &inv);
        }
        Ok(LaurentPoly {
            arity: self.arity,
            terms,
        })
    }

    /// Equality up to multiplication by a monomial unit.
    pub fn eq_up_to_unit(&self, other: &Self, field: &Field) -> Result<bool> {
        Ok(self.canonical_up_to_unit(field)? == other.canonical_up_to_unit(field)?)
    }

    /// Render with the given variable names, deterministic term order.
    pub fn render(&self, vars: &[String], field: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut factors = Vec::new();
            if !field.is_one(c) || e.iter().all(|&k| k == 0) {
                factors.push(field.render_scalar(c));
            }
            for (name, &k) in vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    /// Determinant of a square matrix of Laurent polynomials (cofactor
    /// expansion; matrices here are tiny).
    pub fn det(matrix: &[Vec<LaurentPoly>], field: &Field) -> Result<LaurentPoly> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::Internal("determinant of empty matrix".into()));
        }
        let arity = matrix[0][0].arity;
        if n == 1 {
            return Ok(matrix[0][0].clone());
        }
        let mut acc = LaurentPoly::zero(arity);
        for j in 0..n {
            if matrix[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<LaurentPoly>> = matrix[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let mut term = matrix[0][j].mul(&Self::det(&minor, field)?, field);
            if j % 2 == 1 {
                term = term.neg(field);
            }
            acc = acc.add(&term, field);
        }
        Ok(acc)
    }
}

fn pow_unit(c: &Scalar, k: i64, field: &Field) -> Scalar {
    field.pow(c, k).expect("unit coefficient in monomial substitution")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2_poly() -> (Field, LaurentPoly) {
        let f = Field::F2;
        // 1 + λ(1+μ) in variables (μ, λ).
        let one = LaurentPoly::one(2, &f);
        let mu = LaurentPoly::var_pow(2, 0, 1, &f);
        let la = LaurentPoly::var_pow(2, 1, 1, &f);
        let p = one.add(&la.mul(&one.add(&mu, &f), &f), &f);
        (f, p)
    }

    #[test]
    fn canonical_unit_form() {
        let (f, p) = f2_poly();
        let mu_inv = LaurentPoly::var_pow(2, 0, -2, &f);
        let shifted = p.mul(&mu_inv, &f);
        assert!(p.eq_up_to_unit(&shifted, &f).unwrap());
        assert!(!p.eq_up_to_unit(&LaurentPoly::one(2, &f), &f).unwrap());
    }

    #[test]
    fn evaluation() {
        let (f, p) = f2_poly();
        // μ=1, λ=1: 1 + 1·(1+1) = 1 over GF(2).
        let v = p.eval(&[f.one(), f.one()], &f).unwrap();
        assert!(f.is_one(&v));
    }

    #[test]
    fn small_determinant() {
        let f = Field::Rational;
        let la = LaurentPoly::var_pow(2, 1, 1, &f);
        let mu = LaurentPoly::var_pow(2, 0, 1, &f);
        let m = vec![vec![la.clone(), mu.clone()], vec![mu.clone(), la.clone()]];
        let d = LaurentPoly::det(&m, &f).unwrap();
        let expect = la.mul(&la, &f).sub(&mu.mul(&mu, &f), &f);
        assert_eq!(d, expect);
    }
}
