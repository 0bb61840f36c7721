//! Lifting a vector-valued function to a scalar function on the product
//! group `Z^k x G`, and the inverse recovery through first differences in
//! the new coordinates.
//!
//! The lift of `(f_1, ..., f_k)` with inhomogeneity `g` is
//! `F(t_1, ..., t_k, x) = t_1 f_1(x) + ... + t_k f_k(x) + g(x)`; the new
//! coordinates sit in front of the old free coordinates. Recovery uses
//! `Delta_(e_j) F = f_j` where `e_j` is the j-th new generator, and
//! `g = F - sum t_j f_j`; both residues must be independent of the new
//! coordinates, which is exactly the lifted-form check.

use crate::error::{Error, Result};
use crate::expopoly::{DifferenceOperator, ExpoPoly};
use crate::exponential::Exponential;
use crate::group::GroupSpec;
use crate::polynomial::VectorPolynomial;

/// Build the scalar lift of `fs` (vector valued) and `g` (scalar) on
/// `Z^k x G`.
pub fn lift(fs: &ExpoPoly, g: &ExpoPoly) -> Result<ExpoPoly> {
    if fs.group() != g.group() {
        return Err(Error::GroupMismatch(
            "vector part and inhomogeneity live on different groups".into(),
        ));
    }
    if g.vector_dim() != 1 {
        return Err(Error::DimensionMismatch("inhomogeneity must be scalar".into()));
    }
    if fs.order() != g.order() {
        return Err(Error::Invalid("scalar orders differ".into()));
    }
    let k = fs.vector_dim();
    let order = fs.order();
    let base = fs.group();
    let product = GroupSpec::new(k, vec![])?.product(base);
    let one = crate::cyclotomic::Cyclotomic::one(order);

    let lift_exponential = |m: &Exponential| -> Result<Exponential> {
        let mut free = vec![one.clone(); k];
        free.extend(m.free_values().iter().cloned());
        Exponential::new(&product, free, m.torsion_values().to_vec())
    };

    let mut terms: Vec<(Exponential, VectorPolynomial)> = Vec::new();
    for (m, p) in fs.terms() {
        let mut poly_terms = Vec::new();
        for (expo, coeff) in p.terms() {
            for (j, c) in coeff.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut e = vec![0u32; k];
                e[j] = 1;
                e.extend_from_slice(expo);
                poly_terms.push((e, vec![c.clone()]));
            }
        }
        if !poly_terms.is_empty() {
            terms.push((
                lift_exponential(m)?,
                VectorPolynomial::from_terms(product.free_rank(), 1, poly_terms)?,
            ));
        }
    }
    for (m, p) in g.terms() {
        let mut poly_terms = Vec::new();
        for (expo, coeff) in p.terms() {
            let mut e = vec![0u32; k];
            e.extend_from_slice(expo);
            poly_terms.push((e, coeff.clone()));
        }
        terms.push((
            lift_exponential(m)?,
            VectorPolynomial::from_terms(product.free_rank(), 1, poly_terms)?,
        ));
    }
    ExpoPoly::from_terms(product, 1, order, terms)
}

/// Strip the first `k` free coordinates from a function that does not use
/// them.
fn restrict(f: &ExpoPoly, k: usize, base: &GroupSpec) -> Result<ExpoPoly> {
    let order = f.order();
    let mut terms = Vec::new();
    for (m, p) in f.terms() {
        if m.free_values()[..k].iter().any(|v| !v.is_one()) {
            return Err(Error::NotLiftedForm(
                "exponential varies along the new coordinates".into(),
            ));
        }
        let m_base = Exponential::new(
            base,
            m.free_values()[k..].to_vec(),
            m.torsion_values().to_vec(),
        )?;
        let mut poly_terms = Vec::new();
        for (expo, coeff) in p.terms() {
            if expo[..k].iter().any(|&e| e != 0) {
                return Err(Error::NotLiftedForm(
                    "residue still depends on the new coordinates".into(),
                ));
            }
            poly_terms.push((expo[k..].to_vec(), coeff.clone()));
        }
        terms.push((
            m_base,
            VectorPolynomial::from_terms(base.free_rank(), f.vector_dim(), poly_terms)?,
        ));
    }
    ExpoPoly::from_terms(base.clone(), f.vector_dim(), order, terms)
}

/// Invert [`lift`]: recover `(f_1, ..., f_k)` and `g` from a scalar function
/// on `Z^k x G`. Errors when the function is not affine in the new
/// coordinates.
pub fn unlift(f: &ExpoPoly, k: usize) -> Result<(ExpoPoly, ExpoPoly)> {
    if f.vector_dim() != 1 {
        return Err(Error::DimensionMismatch("lifted functions are scalar".into()));
    }
    let total_rank = f.group().free_rank();
    if k == 0 || k > total_rank {
        return Err(Error::Invalid(format!(
            "cannot split {k} new coordinates off a free rank of {total_rank}"
        )));
    }
    let order = f.order();
    let base = GroupSpec::new(total_rank - k, f.group().torsion_orders().to_vec())?;
    let product = f.group().clone();

    // f_j = Delta_(e_j) F, each required to be constant in the new coordinates
    let mut components = Vec::with_capacity(k);
    for j in 0..k {
        let mut free = vec![0i64; total_rank];
        free[j] = 1;
        let e_j = product.element(free, vec![0; product.torsion_orders().len()])?;
        let diff = DifferenceOperator::delta(&product, order, &e_j).apply(f)?;
        components.push(restrict(&diff, k, &base)?);
    }
    let fs = ExpoPoly::from_components(&components)?;
    // g = F - sum t_j f_j, also required to be constant in the new coordinates
    let zero_g = ExpoPoly::zero(base.clone(), 1, order);
    let linear_part = lift(&fs, &zero_g)?;
    let residue = f.sub(&linear_part)?;
    let g = restrict(&residue, k, &base)?;
    Ok((fs, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Cyclotomic;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(4, v)
    }

    fn z() -> GroupSpec {
        GroupSpec::new(1, vec![]).unwrap()
    }

    #[test]
    fn lift_of_x_squared() {
        // k = 1, f = x^2, g = 0: F(t, x) = t x^2 on Z^2
        let g = z();
        let m = Exponential::trivial(&g, 4);
        let p = VectorPolynomial::from_terms(1, 1, vec![(vec![2], vec![c(1)])]).unwrap();
        let f = ExpoPoly::from_terms(g.clone(), 1, 4, vec![(m, p)]).unwrap();
        let zero = ExpoPoly::zero(g.clone(), 1, 4);
        let lifted = lift(&f, &zero).unwrap();
        assert_eq!(lifted.group().free_rank(), 2);
        let at = |t: i64, x: i64| {
            lifted
                .evaluate(&lifted.group().element(vec![t, x], vec![]).unwrap())
                .unwrap()[0]
                .clone()
        };
        assert_eq!(at(3, 2), c(12));
        assert_eq!(at(0, 5), c(0));
        // round trip
        let (fs, g2) = unlift(&lifted, 1).unwrap();
        assert_eq!(fs, f);
        assert!(g2.is_zero());
    }

    #[test]
    fn lift_with_exponential_and_inhomogeneity() {
        // k = 2, f = (x, 2^x), g = 7
        let g = z();
        let m1 = Exponential::trivial(&g, 4);
        let p1 = VectorPolynomial::from_terms(1, 2, vec![(vec![1], vec![c(1), c(0)])]).unwrap();
        let m2 = Exponential::new(&g, vec![c(2)], vec![]).unwrap();
        let p2 = VectorPolynomial::constant(1, vec![c(0), c(1)]);
        let f = ExpoPoly::from_terms(g.clone(), 2, 4, vec![(m1, p1), (m2, p2)]).unwrap();
        let seven = ExpoPoly::constant(g.clone(), 4, vec![c(7)]).unwrap();
        let lifted = lift(&f, &seven).unwrap();
        let at = |t1: i64, t2: i64, x: i64| {
            lifted
                .evaluate(&lifted.group().element(vec![t1, t2, x], vec![]).unwrap())
                .unwrap()[0]
                .clone()
        };
        // t1*x + t2*2^x + 7 at (2, 3, 3) = 6 + 24 + 7
        assert_eq!(at(2, 3, 3), c(37));
        let (fs, g2) = unlift(&lifted, 2).unwrap();
        assert_eq!(fs, f);
        assert_eq!(g2, seven);
    }

    #[test]
    fn constant_unlifts_to_zero_components() {
        let g = GroupSpec::new(2, vec![]).unwrap();
        let f = ExpoPoly::constant(g, 4, vec![c(5)]).unwrap();
        let (fs, g2) = unlift(&f, 1).unwrap();
        assert!(fs.is_zero());
        assert_eq!(g2.evaluate(&g2.group().zero()).unwrap(), vec![c(5)]);
    }

    #[test]
    fn nonlinear_new_coordinates_rejected() {
        // t^2 on Z^2 is not a lift in the first coordinate
        let g = GroupSpec::new(2, vec![]).unwrap();
        let m = Exponential::trivial(&g, 4);
        let p = VectorPolynomial::from_terms(2, 1, vec![(vec![2, 0], vec![c(1)])]).unwrap();
        let f = ExpoPoly::from_terms(g, 1, 4, vec![(m, p)]).unwrap();
        assert!(unlift(&f, 1).is_err());
        // t1 * t2 is affine in each but not jointly a lift
        let g = GroupSpec::new(2, vec![]).unwrap();
        let m = Exponential::trivial(&g, 4);
        let p = VectorPolynomial::from_terms(2, 1, vec![(vec![1, 1], vec![c(1)])]).unwrap();
        let f = ExpoPoly::from_terms(g, 1, 4, vec![(m, p)]).unwrap();
        assert!(unlift(&f, 2).is_err());
    }
}
