//! Homogeneous decomposition through exact Vandermonde solves, and
//! polarization of homogeneous parts into symmetric multi-additive maps.

use num::rational::BigRational;
use num::BigInt;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg;
use crate::structure::FunctionOracle;

/// Values `(f_0(x), ..., f_n(x))` of the homogeneous parts of a generalized
/// polynomial of degree at most `n`, recovered from `f(kx) = sum_i k^i
/// f_i(x)` for `k = 1..n+1`. The system matrix is Vandermonde in the nodes
/// `1..n+1`, hence invertible, so the parts are exact.
pub fn homogeneous_parts(
    f: &FunctionOracle,
    n: i64,
    x: &GroupElement,
) -> Result<Vec<Vec<Cyclotomic>>> {
    if n < 0 {
        return Err(Error::Invalid("degree bound must be >= 0".into()));
    }
    let group = f.group();
    let order = f.order();
    let rows = (n + 1) as usize;
    let mut matrix = Vec::with_capacity(rows);
    let mut rhs = Vec::with_capacity(rows);
    for k in 1..=rows as i64 {
        let point = group.scale(x, k)?;
        rhs.push(f.eval(&point)?);
        matrix.push(
            (0..rows)
                .map(|i| {
                    Cyclotomic::from_ratio(
                        order,
                        BigRational::from_integer(BigInt::from(k).pow(i as u32)),
                    )
                })
                .collect(),
        );
    }
    let sol = linalg::solve(&matrix, &rhs)
        .expect("Vandermonde system with distinct positive nodes is invertible");
    Ok(sol)
}

/// The symmetric multi-additive map under a homogeneous part:
/// `A_i(x_1, ..., x_i) = (1/i!) * Delta_(x_1) ... Delta_(x_i) f_i (0)`,
/// expanded into its alternating sum over subsets. For `i = 0` this is just
/// `f(0)`.
pub fn polarize(
    f: &FunctionOracle,
    i: usize,
    points: &[GroupElement],
) -> Result<Vec<Cyclotomic>> {
    let group = f.group();
    let order = f.order();
    if i == 0 {
        return f.eval(&group.zero());
    }
    if points.len() != i {
        return Err(Error::Invalid(format!(
            "polarization of degree {i} needs exactly {i} points, got {}",
            points.len()
        )));
    }
    let mut acc = vec![Cyclotomic::zero(order); f.vector_dim()];
    for mask in 0u32..(1 << i) {
        let mut point = group.zero();
        for (j, p) in points.iter().enumerate() {
            if mask >> j & 1 == 1 {
                point = group.add(&point, p)?;
            }
        }
        let v = f.eval(&point)?;
        let positive = (i - mask.count_ones() as usize) % 2 == 0;
        for (a, c) in acc.iter_mut().zip(v) {
            *a = if positive { a.add(&c) } else { a.sub(&c) };
        }
    }
    let mut fact = BigInt::from(1);
    for j in 2..=i {
        fact *= BigInt::from(j as u64);
    }
    let inv_fact = Cyclotomic::from_ratio(order, BigRational::new(BigInt::from(1), fact));
    Ok(acc.into_iter().map(|c| c.mul(&inv_fact)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expopoly::ExpoPoly;
    use crate::exponential::Exponential;
    use crate::group::GroupSpec;
    use crate::polynomial::VectorPolynomial;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(4, v)
    }

    fn scalar_poly(g: &GroupSpec, terms: Vec<(Vec<u32>, i64)>) -> ExpoPoly {
        let m = Exponential::trivial(g, 4);
        let p = VectorPolynomial::from_terms(
            g.free_rank(),
            1,
            terms.into_iter().map(|(e, v)| (e, vec![c(v)])).collect(),
        )
        .unwrap();
        ExpoPoly::from_terms(g.clone(), 1, 4, vec![(m, p)]).unwrap()
    }

    #[test]
    fn quadratic_parts_at_four() {
        // x^2 + 2x + 5 at x = 4 splits into (5, 8, 16)
        let g = GroupSpec::new(1, vec![]).unwrap();
        let f = scalar_poly(&g, vec![(vec![2], 1), (vec![1], 2), (vec![0], 5)]);
        let oracle = FunctionOracle::from_expo_poly(&f);
        let x = g.element(vec![4], vec![]).unwrap();
        let parts = homogeneous_parts(&oracle, 2, &x).unwrap();
        assert_eq!(parts, vec![vec![c(5)], vec![c(8)], vec![c(16)]]);
    }

    #[test]
    fn constant_has_trivial_parts() {
        let g = GroupSpec::new(1, vec![]).unwrap();
        let f = scalar_poly(&g, vec![(vec![0], 9)]);
        let oracle = FunctionOracle::from_expo_poly(&f);
        let x = g.element(vec![3], vec![]).unwrap();
        let parts = homogeneous_parts(&oracle, 2, &x).unwrap();
        assert_eq!(parts, vec![vec![c(9)], vec![c(0)], vec![c(0)]]);
    }

    #[test]
    fn polarize_product_of_coordinates() {
        // f = x1*x2 on Z^2: A(u, v) = (u1 v2 + u2 v1) / 2
        let g = GroupSpec::new(2, vec![]).unwrap();
        let f = scalar_poly(&g, vec![(vec![1, 1], 1)]);
        let oracle = FunctionOracle::from_expo_poly(&f);
        let u = g.element(vec![3, 1], vec![]).unwrap();
        let v = g.element(vec![-2, 5], vec![]).unwrap();
        let a = polarize(&oracle, 2, &[u, v]).unwrap();
        // (3*5 + 1*(-2)) / 2 = 13/2
        let expect = Cyclotomic::from_ratio(
            4,
            BigRational::new(BigInt::from(13), BigInt::from(2)),
        );
        assert_eq!(a, vec![expect]);
    }

    #[test]
    fn polarize_square_is_bilinear_diagonal() {
        // f = x^2 on Z: A(u, v) = uv
        let g = GroupSpec::new(1, vec![]).unwrap();
        let f = scalar_poly(&g, vec![(vec![2], 1)]);
        let oracle = FunctionOracle::from_expo_poly(&f);
        let u = g.element(vec![7], vec![]).unwrap();
        let v = g.element(vec![-3], vec![]).unwrap();
        assert_eq!(polarize(&oracle, 2, &[u, v]).unwrap(), vec![c(-21)]);
    }
}
