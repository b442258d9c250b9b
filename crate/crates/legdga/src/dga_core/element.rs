//! Elements of the free noncommutative algebra on chord generators over a
//! Laurent coefficient ring. The canonical basis consists of words
//! m₀ g₁ m₁ … g_k m_k with pure monomials m_i between generator letters;
//! an element is a finitely supported scalar combination of such words.

use std::collections::BTreeMap;

use super::field::{Field, Scalar};
use super::laurent::{Expo, LaurentPoly};

/// A basis word: alternating coefficient monomials and generator letters;
/// `monos.len() == gens.len() + 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MonomialWord {
    pub gens: Vec<usize>,
    pub monos: Vec<Expo>,
}

impl MonomialWord {
    pub fn unit(arity: usize) -> Self {
        MonomialWord {
            gens: Vec::new(),
            monos: vec![vec![0; arity]],
        }
    }

    pub fn generator(g: usize, arity: usize) -> Self {
        MonomialWord {
            gens: vec![g],
            monos: vec![vec![0; arity], vec![0; arity]],
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        let mut monos = self.monos[..self.monos.len() - 1].to_vec();
        let glue: Expo = self
            .monos
            .last()
            .unwrap()
            .iter()
            .zip(&other.monos[0])
            .map(|(a, b)| a + b)
            .collect();
        monos.push(glue);
        monos.extend_from_slice(&other.monos[1..]);
        MonomialWord { gens, monos }
    }

    pub fn degree(&self, gen_degrees: &[i64], var_degrees: &[i64]) -> i64 {
        let mut d: i64 = self.gens.iter().map(|&g| gen_degrees[g]).sum();
        for m in &self.monos {
            for (&e, &vd) in m.iter().zip(var_degrees) {
                d += e * vd;
            }
        }
        d
    }
}

/// A finite scalar combination of basis words; canonical by construction
/// (no zero coefficients, BTreeMap ordering).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    pub arity: usize,
    pub terms: BTreeMap<MonomialWord, Scalar>,
}

impl Element {
    pub fn zero(arity: usize) -> Self {
        Element {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn generator(g: usize, arity: usize, field: &Field) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(MonomialWord::generator(g, arity), field.one());
        Element { arity, terms }
    }

    pub fn from_poly(p: &LaurentPoly, field: &Field) -> Self {
        let mut out = Element::zero(p.arity);
        for (e, c) in &p.terms {
            if field.is_zero(c) {
                continue;
            }
            out.terms.insert(
                MonomialWord {
                    gens: Vec::new(),
                    monos: vec![e.clone()],
                },
                c.clone(),
            );
        }
        out
    }

    pub fn one(arity: usize, field: &Field) -> Self {
        Self::from_poly(&LaurentPoly::one(arity, field), field)
    }

    pub fn insert_term(&mut self, w: MonomialWord, c: Scalar, field: &Field) {
        if field.is_zero(&c) {
            return;
        }
        let merged = match self.terms.get(&w) {
            Some(prev) => field.add(prev, &c),
            None => c,
        };
        if field.is_zero(&merged) {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, merged);
        }
    }

    pub fn add(&self, other: &Self, field: &Field) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_term(w.clone(), c.clone(), field);
        }
        out
    }

    pub fn neg(&self, field: &Field) -> Self {
        Element {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self, field: &Field) -> Self {
        self.add(&other.neg(field), field)
    }

    pub fn scale(&self, c: &Scalar, field: &Field) -> Self {
        let mut out = Element::zero(self.arity);
        for (w, k) in &self.terms {
            out.insert_term(w.clone(), field.mul(k, c), field);
        }
        out
    }

    pub fn mul(&self, other: &Self, field: &Field) -> Self {
        let mut out = Element::zero(self.arity);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.insert_term(w1.concat(w2), field.mul(c1, c2), field);
            }
        }
        out
    }

    /// Multiply on the left by a pure monomial x^expo.
    pub fn mono_mul_left(&self, expo: &Expo, field: &Field) -> Self {
        let mut out = Element::zero(self.arity);
        for (w, c) in &self.terms {
            let mut nw = w.clone();
            for (slot, v) in nw.monos[0].iter_mut().zip(expo) {
                *slot += v;
            }
            out.insert_term(nw, c.clone(), field);
        }
        out
    }

    /// Multiply on the right by a pure monomial x^expo.
    pub fn mono_mul_right(&self, expo: &Expo, field: &Field) -> Self {
        let mut out = Element::zero(self.arity);
        for (w, c) in &self.terms {
            let mut nw = w.clone();
            let last = nw.monos.len() - 1;
            for (slot, v) in nw.monos[last].iter_mut().zip(expo) {
                *slot += v;
            }
            out.insert_term(nw, c.clone(), field);
        }
        out
    }

    /// Conjugate by the variable `var`: x w x^{−1}.
    pub fn conjugate_by_var(&self, var: usize, field: &Field) -> Self {
        let mut left = vec![0i64; self.arity];
        left[var] = 1;
        let mut right = vec![0i64; self.arity];
        right[var] = -1;
        self.mono_mul_left(&left, field).mono_mul_right(&right, field)
    }

    /// The purely scalar part (words without generator letters) as a
    /// commutative Laurent polynomial; words *with* letters are ignored.
    pub fn scalar_part(&self) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            if w.gens.is_empty() {
                terms.insert(w.monos[0].clone(), c.clone());
            }
        }
        LaurentPoly {
            arity: self.arity,
            terms,
        }
    }

    /// Abelianization: forget letter order constraints on coefficients by
    /// multiplying all monomials of each word together; generator letters are
    /// kept in order (used for linear terms, where order is irrelevant).
    pub fn abelianized_linear_rows(&self) -> Vec<(usize, Expo, Scalar)> {
        let mut rows = Vec::new();
        for (w, c) in &self.terms {
            if w.gens.len() != 1 {
                continue;
            }
            let expo: Expo = (0..self.arity)
                .map(|i| w.monos.iter().map(|m| m[i]).sum())
                .collect();
            rows.push((w.gens[0], expo, c.clone()));
        }
        rows
    }

    /// Render with generator labels and variable names.
    pub fn render(&self, gen_labels: &[String], vars: &[String], field: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mono_str = |m: &Expo| -> String {
            let mut parts = Vec::new();
            for (name, &k) in vars.iter().zip(m) {
                match k {
                    0 => {}
                    1 => parts.push(name.clone()),
                    _ => parts.push(format!("{name}^{k}")),
                }
            }
            parts.join("*")
        };
        let mut out = Vec::new();
        for (w, c) in &self.terms {
            let mut parts: Vec<String> = Vec::new();
            if !field.is_one(c) || w.gens.is_empty() && w.monos[0].iter().all(|&k| k == 0) {
                parts.push(field.render_scalar(c));
            }
            for (i, m) in w.monos.iter().enumerate() {
                let ms = mono_str(m);
                if !ms.is_empty() {
                    parts.push(ms);
                }
                if i < w.gens.len() {
                    parts.push(gen_labels[w.gens[i]].clone());
                }
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            out.push(parts.join("*"));
        }
        out.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noncentral_coefficients() {
        let f = Field::F2;
        let a = Element::generator(0, 2, &f);
        let mut mu_expo = vec![0i64; 2];
        mu_expo[0] = 1;
        let mu_a = a.mono_mul_left(&mu_expo, &f);
        let a_mu = a.mono_mul_right(&mu_expo, &f);
        assert_ne!(mu_a, a_mu);
        let conj = a.conjugate_by_var(0, &f);
        assert_ne!(conj, a);
        // Over GF(2), a + a = 0.
        assert!(a.add(&a, &f).is_zero());
    }

    #[test]
    fn multiplication_merges_adjacent_monomials() {
        let f = Field::F2;
        let a = Element::generator(0, 1, &f);
        let t = Element::from_poly(&LaurentPoly::var_pow(1, 0, 1, &f), &f);
        let w = a.mul(&t, &f).mul(&a, &f);
        let term = w.terms.keys().next().unwrap();
        assert_eq!(term.gens, vec![0, 0]);
        assert_eq!(term.monos, vec![vec![0], vec![1], vec![0]]);
    }
}
