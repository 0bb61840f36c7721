//! Vector-valued polynomials in the free coordinates of a group.
//!
//! Polynomials never involve torsion coordinates: a monomial of degree `i` is
//! the diagonal of a symmetric `i`-additive map `A`, and any additive map
//! `a: G -> C` kills torsion (`n_j * a(t_j) = a(n_j t_j) = a(0) = 0`), so
//! every monomial is constant along torsion directions.
//!
//! Terms live in a `BTreeMap` keyed by multi-exponent, which makes the stored
//! form canonical: no zero coefficient vectors, deterministic ordering.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{BigInt, One};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct VectorPolynomial {
    free_rank: usize,
    vector_dim: usize,
    terms: BTreeMap<Vec<u32>, Vec<Cyclotomic>>,
}

impl VectorPolynomial {
    pub fn zero(free_rank: usize, vector_dim: usize) -> VectorPolynomial {
        VectorPolynomial {
            free_rank,
            vector_dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(free_rank: usize, value: Vec<Cyclotomic>) -> VectorPolynomial {
        VectorPolynomial::from_terms(
            free_rank,
            value.len(),
            vec![(vec![0; free_rank], value)],
        )
        .expect("constant terms are always well formed")
    }

    pub fn from_terms(
        free_rank: usize,
        vector_dim: usize,
        terms: Vec<(Vec<u32>, Vec<Cyclotomic>)>,
    ) -> Result<VectorPolynomial> {
        if vector_dim == 0 {
            return Err(Error::DimensionMismatch("vector_dim must be >= 1".into()));
        }
        let mut map: BTreeMap<Vec<u32>, Vec<Cyclotomic>> = BTreeMap::new();
        for (expo, coeff) in terms {
            if expo.len() != free_rank {
                return Err(Error::DimensionMismatch(format!(
                    "exponent length {} != free rank {}",
                    expo.len(),
                    free_rank
                )));
            }
            if coeff.len() != vector_dim {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient length {} != vector dim {}",
                    coeff.len(),
                    vector_dim
                )));
            }
            match map.entry(expo) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let cur = e.get_mut();
                    for (a, b) in cur.iter_mut().zip(&coeff) {
                        *a = a.add(b);
                    }
                }
            }
        }
        map.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        Ok(VectorPolynomial {
            free_rank,
            vector_dim,
            terms: map,
        })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn vector_dim(&self) -> usize {
        self.vector_dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Vec<Cyclotomic>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Max total degree of stored exponents; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).sum())
            .max()
            .unwrap_or(-1)
    }

    pub fn eval(&self, free: &[i64], order: u64) -> Result<Vec<Cyclotomic>> {
        if free.len() != self.free_rank {
            return Err(Error::GroupMismatch(
                "evaluation point has wrong free rank".into(),
            ));
        }
        let mut acc = vec![Cyclotomic::zero(order); self.vector_dim];
        for (expo, coeff) in &self.terms {
            let mut mono = BigRational::one();
            for (&e, &x) in expo.iter().zip(free) {
                if e > 0 {
                    mono *= BigRational::from_integer(BigInt::from(x).pow(e));
                }
            }
            let mono = Cyclotomic::from_ratio(order, mono);
            for (a, c) in acc.iter_mut().zip(coeff) {
                *a = a.add(&c.mul(&mono));
            }
        }
        Ok(acc)
    }

    pub fn add(&self, other: &VectorPolynomial) -> Result<VectorPolynomial> {
        if self.free_rank != other.free_rank || self.vector_dim != other.vector_dim {
            return Err(Error::DimensionMismatch("polynomial shape mismatch".into()));
        }
        let mut terms: Vec<(Vec<u32>, Vec<Cyclotomic>)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        terms.extend(other.terms.iter().map(|(e, c)| (e.clone(), c.clone())));
        VectorPolynomial::from_terms(self.free_rank, self.vector_dim, terms)
    }

    pub fn scale(&self, factor: &Cyclotomic) -> VectorPolynomial {
        if factor.is_zero() {
            return VectorPolynomial::zero(self.free_rank, self.vector_dim);
        }
        VectorPolynomial {
            free_rank: self.free_rank,
            vector_dim: self.vector_dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.iter().map(|x| x.mul(factor)).collect()))
                .collect(),
        }
    }

    /// Product of a scalar polynomial with any polynomial.
    pub fn mul(&self, other: &VectorPolynomial) -> Result<VectorPolynomial> {
        if self.free_rank != other.free_rank {
            return Err(Error::DimensionMismatch("polynomial rank mismatch".into()));
        }
        if self.vector_dim != 1 && other.vector_dim != 1 {
            return Err(Error::DimensionMismatch(
                "polynomial product needs a scalar factor".into(),
            ));
        }
        let (scalar, vector) = if self.vector_dim == 1 {
            (self, other)
        } else {
            (other, self)
        };
        let mut terms = Vec::new();
        for (ea, ca) in &scalar.terms {
            for (eb, cb) in &vector.terms {
                let expo: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let coeff: Vec<Cyclotomic> = cb.iter().map(|c| c.mul(&ca[0])).collect();
                terms.push((expo, coeff));
            }
        }
        VectorPolynomial::from_terms(self.free_rank, vector.vector_dim, terms)
    }

    /// `p(x + g)` for an integer shift of the free coordinates, by binomial
    /// expansion of each monomial.
    pub fn shift(&self, shift: &[i64], order: u64) -> Result<VectorPolynomial> {
        if shift.len() != self.free_rank {
            return Err(Error::GroupMismatch("shift has wrong free rank".into()));
        }
        if shift.iter().all(|&s| s == 0) {
            return Ok(self.clone());
        }
        let mut terms: Vec<(Vec<u32>, Vec<Cyclotomic>)> = Vec::new();
        for (expo, coeff) in &self.terms {
            // expand prod_i (x_i + s_i)^(e_i)
            let mut partial: Vec<(Vec<u32>, BigRational)> =
                vec![(Vec::with_capacity(self.free_rank), BigRational::one())];
            for (i, &e) in expo.iter().enumerate() {
                let s = shift[i];
                let mut next = Vec::with_capacity(partial.len() * (e as usize + 1));
                for (prefix, scale) in &partial {
                    for b in 0..=e {
                        let binom = binomial(e, b);
                        let spow = BigInt::from(s).pow(e - b);
                        let factor = BigRational::from_integer(binom * spow);
                        if factor.numer() == &BigInt::from(0) {
                            continue;
                        }
                        let mut key = prefix.clone();
                        key.push(b);
                        next.push((key, scale * factor));
                    }
                }
                partial = next;
            }
            for (key, scale) in partial {
                let factor = Cyclotomic::from_ratio(order, scale);
                terms.push((key, coeff.iter().map(|c| c.mul(&factor)).collect()));
            }
        }
        VectorPolynomial::from_terms(self.free_rank, self.vector_dim, terms)
    }

    /// Scalar polynomial `x -> sum_j u_j * p_j(x)`.
    pub fn compose_functional(&self, u: &[Cyclotomic]) -> Result<VectorPolynomial> {
        if u.len() != self.vector_dim {
            return Err(Error::DimensionMismatch(format!(
                "functional length {} != vector dim {}",
                u.len(),
                self.vector_dim
            )));
        }
        let mut terms = Vec::new();
        for (expo, coeff) in &self.terms {
            let mut acc = Cyclotomic::zero(coeff[0].order());
            for (c, w) in coeff.iter().zip(u) {
                acc = acc.add(&c.mul(w));
            }
            terms.push((expo.clone(), vec![acc]));
        }
        VectorPolynomial::from_terms(self.free_rank, 1, terms)
    }

    pub fn component(&self, j: usize) -> VectorPolynomial {
        assert!(j < self.vector_dim);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), vec![c[j].clone()]))
            .collect();
        VectorPolynomial::from_terms(self.free_rank, 1, terms)
            .expect("component of a valid polynomial is valid")
    }

    pub fn promote(&self, new_order: u64) -> Result<VectorPolynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                Ok((
                    e.clone(),
                    c.iter().map(|x| x.promote(new_order)).collect::<Result<_>>()?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        VectorPolynomial::from_terms(self.free_rank, self.vector_dim, terms)
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k.min(n - k) {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}
