//! Finitely generated abelian groups `Z^r x Z_{n_1} x ... x Z_{n_t}` and
//! their elements.
//!
//! Elements do not carry a back-reference to their group; all operations go
//! through the [`GroupSpec`] they belong to, which validates shapes and keeps
//! torsion residues reduced to `[0, n_j)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    free_rank: usize,
    #[serde(rename = "torsion")]
    torsion_orders: Vec<u64>,
}

/// A point of the group: integer free coordinates and reduced torsion
/// residues. The coordinate lists are ordered exactly as in the spec that
/// created them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub free: Vec<i64>,
    pub torsion: Vec<u64>,
}

impl GroupSpec {
    pub fn new(free_rank: usize, torsion_orders: Vec<u64>) -> Result<GroupSpec> {
        if let Some(&n) = torsion_orders.iter().find(|&&n| n < 2) {
            return Err(Error::Invalid(format!("torsion order {n} must be >= 2")));
        }
        Ok(GroupSpec {
            free_rank,
            torsion_orders,
        })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[u64] {
        &self.torsion_orders
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion_orders.is_empty()
    }

    /// Number of elements of a finite group.
    pub fn cardinality(&self) -> Result<u64> {
        if !self.is_finite() {
            return Err(Error::NotFinite);
        }
        Ok(self.torsion_orders.iter().product())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion_orders.len()],
        }
    }

    /// Build an element, reducing torsion entries modulo the group orders.
    pub fn element(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<GroupElement> {
        if free.len() != self.free_rank || torsion.len() != self.torsion_orders.len() {
            return Err(Error::GroupMismatch(format!(
                "element shape ({}, {}) does not match group shape ({}, {})",
                free.len(),
                torsion.len(),
                self.free_rank,
                self.torsion_orders.len()
            )));
        }
        let torsion = torsion
            .into_iter()
            .zip(&self.torsion_orders)
            .map(|(v, &n)| v.rem_euclid(n as i64) as u64)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.free.len() == self.free_rank
            && a.torsion.len() == self.torsion_orders.len()
            && a.torsion
                .iter()
                .zip(&self.torsion_orders)
                .all(|(&v, &n)| v < n)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "element {a:?} does not belong to {self:?}"
            )))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let free = a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect();
        let torsion = a
            .torsion
            .iter()
            .zip(&b.torsion)
            .zip(&self.torsion_orders)
            .map(|((x, y), &n)| (x + y) % n)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let free = a.free.iter().map(|x| -x).collect();
        let torsion = a
            .torsion
            .iter()
            .zip(&self.torsion_orders)
            .map(|(&v, &n)| (n - v) % n)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// Integer multiple `k * a`.
    pub fn scale(&self, a: &GroupElement, k: i64) -> Result<GroupElement> {
        self.check(a)?;
        let free = a.free.iter().map(|x| x * k).collect();
        let torsion = a
            .torsion
            .iter()
            .zip(&self.torsion_orders)
            .map(|(&v, &n)| ((v as i64 * k).rem_euclid(n as i64)) as u64)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// Generators: one per free coordinate and one per torsion factor.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.free_rank + self.torsion_orders.len());
        for i in 0..self.free_rank {
            let mut g = self.zero();
            g.free[i] = 1;
            out.push(g);
        }
        for j in 0..self.torsion_orders.len() {
            let mut g = self.zero();
            g.torsion[j] = 1;
            out.push(g);
        }
        out
    }

    /// Direct product `G1 x G2`: ranks add, torsion lists concatenate.
    pub fn product(&self, other: &GroupSpec) -> GroupSpec {
        let mut torsion = self.torsion_orders.clone();
        torsion.extend_from_slice(&other.torsion_orders);
        GroupSpec {
            free_rank: self.free_rank + other.free_rank,
            torsion_orders: torsion,
        }
    }

    /// Embed a pair of elements into the product group.
    pub fn embed_pair(
        &self,
        other: &GroupSpec,
        a: &GroupElement,
        b: &GroupElement,
    ) -> Result<GroupElement> {
        self.check(a)?;
        other.check(b)?;
        let mut free = a.free.clone();
        free.extend_from_slice(&b.free);
        let mut torsion = a.torsion.clone();
        torsion.extend_from_slice(&b.torsion);
        Ok(GroupElement { free, torsion })
    }

    /// Project an element of `self x other` back to the pair.
    pub fn project_pair(
        &self,
        other: &GroupSpec,
        c: &GroupElement,
    ) -> Result<(GroupElement, GroupElement)> {
        let prod = self.product(other);
        prod.check(c)?;
        let a = GroupElement {
            free: c.free[..self.free_rank].to_vec(),
            torsion: c.torsion[..self.torsion_orders.len()].to_vec(),
        };
        let b = GroupElement {
            free: c.free[self.free_rank..].to_vec(),
            torsion: c.torsion[self.torsion_orders.len()..].to_vec(),
        };
        Ok((a, b))
    }

    /// All elements of a finite group, in mixed-radix order (last torsion
    /// coordinate fastest).
    pub fn enumerate(&self) -> Result<Vec<GroupElement>> {
        let n = self.cardinality()?;
        let mut out = Vec::with_capacity(n as usize);
        for idx in 0..n {
            out.push(self.element_at(idx)?);
        }
        Ok(out)
    }

    /// The idx-th element in enumeration order.
    pub fn element_at(&self, idx: u64) -> Result<GroupElement> {
        let n = self.cardinality()?;
        if idx >= n {
            return Err(Error::Invalid(format!("index {idx} out of range {n}")));
        }
        let mut rem = idx;
        let mut torsion = vec![0u64; self.torsion_orders.len()];
        for j in (0..self.torsion_orders.len()).rev() {
            let n_j = self.torsion_orders[j];
            torsion[j] = rem % n_j;
            rem /= n_j;
        }
        Ok(GroupElement {
            free: Vec::new(),
            torsion,
        })
    }

    /// Index of an element in enumeration order.
    pub fn index_of(&self, a: &GroupElement) -> Result<u64> {
        self.check(a)?;
        if !self.is_finite() {
            return Err(Error::NotFinite);
        }
        let mut idx = 0u64;
        for (j, &n_j) in self.torsion_orders.iter().enumerate() {
            idx = idx * n_j + a.torsion[j];
        }
        Ok(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> GroupSpec {
        GroupSpec::new(1, vec![]).unwrap()
    }

    #[test]
    fn free_addition() {
        let g = z();
        let a = g.element(vec![2], vec![]).unwrap();
        let b = g.element(vec![3], vec![]).unwrap();
        assert_eq!(g.add(&a, &b).unwrap().free, vec![5]);
    }

    #[test]
    fn torsion_reduction() {
        let g = GroupSpec::new(0, vec![4]).unwrap();
        let a = g.element(vec![], vec![3]).unwrap();
        let b = g.element(vec![], vec![2]).unwrap();
        assert_eq!(g.add(&a, &b).unwrap().torsion, vec![1]);
        // negative inputs reduce on construction
        assert_eq!(g.element(vec![], vec![-1]).unwrap().torsion, vec![3]);
    }

    #[test]
    fn product_and_projection() {
        let g1 = GroupSpec::new(2, vec![]).unwrap();
        let g2 = GroupSpec::new(1, vec![4]).unwrap();
        let p = g1.product(&g2);
        assert_eq!(p.free_rank(), 3);
        assert_eq!(p.torsion_orders(), &[4]);
        let a = g1.element(vec![1, -2], vec![]).unwrap();
        let b = g2.element(vec![7], vec![3]).unwrap();
        let c = g1.embed_pair(&g2, &a, &b).unwrap();
        let (a2, b2) = g1.project_pair(&g2, &c).unwrap();
        assert_eq!((a, b), (a2, b2));
        // product with the trivial group changes nothing
        let trivial = GroupSpec::new(0, vec![]).unwrap();
        assert_eq!(g1.product(&trivial), g1);
    }

    #[test]
    fn spec_mismatch_is_an_error() {
        let g = z();
        let h = GroupSpec::new(2, vec![]).unwrap();
        let a = g.element(vec![1], vec![]).unwrap();
        let b = h.element(vec![1, 2], vec![]).unwrap();
        assert!(g.add(&a, &b).is_err());
    }

    #[test]
    fn enumeration_round_trip() {
        let g = GroupSpec::new(0, vec![6, 4]).unwrap();
        let all = g.enumerate().unwrap();
        assert_eq!(all.len(), 24);
        for (i, a) in all.iter().enumerate() {
            assert_eq!(g.index_of(a).unwrap(), i as u64);
        }
    }

    #[test]
    fn invalid_torsion_order_rejected() {
        assert!(GroupSpec::new(0, vec![1]).is_err());
    }
}
