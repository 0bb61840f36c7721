//! Exponentials: nonzero multiplicative functions `m(x+y) = m(x)*m(y)` on a
//! finitely generated abelian group, determined by their generator values.
//!
//! A free generator may take any nonzero scalar value; a torsion generator of
//! order `n_j` must take an `n_j`-th root of unity (checked exactly at
//! construction, since `m(n_j * t_j) = m(0) = 1`).

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Exponential {
    #[serde(rename = "free")]
    free_values: Vec<Cyclotomic>,
    #[serde(rename = "torsion")]
    torsion_values: Vec<Cyclotomic>,
}

impl Exponential {
    pub fn new(
        group: &GroupSpec,
        free_values: Vec<Cyclotomic>,
        torsion_values: Vec<Cyclotomic>,
    ) -> Result<Exponential> {
        if free_values.len() != group.free_rank()
            || torsion_values.len() != group.torsion_orders().len()
        {
            return Err(Error::GroupMismatch(format!(
                "exponential has {} free / {} torsion values for a group of shape ({}, {})",
                free_values.len(),
                torsion_values.len(),
                group.free_rank(),
                group.torsion_orders().len()
            )));
        }
        if free_values.iter().any(|v| v.is_zero()) {
            return Err(Error::ZeroExponentialValue);
        }
        for (v, &n) in torsion_values.iter().zip(group.torsion_orders()) {
            if !v.pow(n as i64)?.is_one() {
                return Err(Error::NotRootOfUnity { n });
            }
        }
        Ok(Exponential {
            free_values,
            torsion_values,
        })
    }

    /// The identically-1 exponential.
    pub fn trivial(group: &GroupSpec, order: u64) -> Exponential {
        Exponential {
            free_values: vec![Cyclotomic::one(order); group.free_rank()],
            torsion_values: vec![Cyclotomic::one(order); group.torsion_orders().len()],
        }
    }

    pub fn free_values(&self) -> &[Cyclotomic] {
        &self.free_values
    }

    pub fn torsion_values(&self) -> &[Cyclotomic] {
        &self.torsion_values
    }

    pub fn is_trivial(&self) -> bool {
        self.free_values.iter().all(|v| v.is_one())
            && self.torsion_values.iter().all(|v| v.is_one())
    }

    /// `m(x)` as a product of generator-value powers; exact, with field
    /// inverses for negative free coordinates.
    pub fn eval(&self, x: &GroupElement, order: u64) -> Result<Cyclotomic> {
        if x.free.len() != self.free_values.len() || x.torsion.len() != self.torsion_values.len() {
            return Err(Error::GroupMismatch(
                "element shape does not match exponential".into(),
            ));
        }
        let mut acc = Cyclotomic::one(order);
        for (v, &e) in self.free_values.iter().zip(&x.free) {
            if e != 0 {
                acc = acc.mul(&v.pow(e)?);
            }
        }
        for (v, &e) in self.torsion_values.iter().zip(&x.torsion) {
            if e != 0 {
                acc = acc.mul(&v.pow(e as i64)?);
            }
        }
        Ok(acc)
    }

    /// Pointwise product, again an exponential.
    pub fn mul(&self, other: &Exponential) -> Result<Exponential> {
        if self.free_values.len() != other.free_values.len()
            || self.torsion_values.len() != other.torsion_values.len()
        {
            return Err(Error::GroupMismatch("exponential shape mismatch".into()));
        }
        Ok(Exponential {
            free_values: self
                .free_values
                .iter()
                .zip(&other.free_values)
                .map(|(a, b)| a.mul(b))
                .collect(),
            torsion_values: self
                .torsion_values
                .iter()
                .zip(&other.torsion_values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    /// Pointwise integer power (inverse for negative exponents).
    pub fn pow(&self, e: i64) -> Result<Exponential> {
        Ok(Exponential {
            free_values: self
                .free_values
                .iter()
                .map(|v| v.pow(e))
                .collect::<Result<_>>()?,
            torsion_values: self
                .torsion_values
                .iter()
                .map(|v| v.pow(e))
                .collect::<Result<_>>()?,
        })
    }

    pub fn promote(&self, new_order: u64) -> Result<Exponential> {
        Ok(Exponential {
            free_values: self
                .free_values
                .iter()
                .map(|v| v.promote(new_order))
                .collect::<Result<_>>()?,
            torsion_values: self
                .torsion_values
                .iter()
                .map(|v| v.promote(new_order))
                .collect::<Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicativity_on_z() {
        let g = GroupSpec::new(1, vec![]).unwrap();
        let m = Exponential::new(&g, vec![Cyclotomic::from_int(4, 2)], vec![]).unwrap();
        let a = g.element(vec![3], vec![]).unwrap();
        let b = g.element(vec![-5], vec![]).unwrap();
        let ab = g.add(&a, &b).unwrap();
        let lhs = m.eval(&ab, 4).unwrap();
        let rhs = m.eval(&a, 4).unwrap().mul(&m.eval(&b, 4).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn torsion_values_must_be_roots_of_unity() {
        let g = GroupSpec::new(0, vec![4]).unwrap();
        let ok = Exponential::new(&g, vec![], vec![Cyclotomic::imaginary_unit(4).unwrap()]);
        assert!(ok.is_ok());
        let bad = Exponential::new(&g, vec![], vec![Cyclotomic::from_int(4, 2)]);
        assert!(bad.is_err());
    }

    #[test]
    fn zero_free_value_rejected() {
        let g = GroupSpec::new(1, vec![]).unwrap();
        assert!(Exponential::new(&g, vec![Cyclotomic::zero(4)], vec![]).is_err());
    }
}
