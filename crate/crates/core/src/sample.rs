//! Seeded random instances for the law-checking suites and the `check`
//! subcommand. Everything takes an explicit RNG so runs are reproducible.

use num::rational::BigRational;
use num::BigInt;
use rand::Rng;

use crate::cyclotomic::Cyclotomic;
use crate::expopoly::ExpoPoly;
use crate::exponential::Exponential;
use crate::fourier::{FunctionTable, Measure};
use crate::group::{GroupElement, GroupSpec};
use crate::polynomial::VectorPolynomial;

/// Cyclotomic with small integer coefficients on low zeta powers.
pub fn cyclotomic(rng: &mut impl Rng, order: u64) -> Cyclotomic {
    let phi = crate::cyclotomic::euler_phi(order) as usize;
    let spread = phi.min(3);
    let coeffs = (0..phi)
        .map(|j| {
            if j < spread {
                BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3)))
            } else {
                BigRational::from_integer(BigInt::from(0))
            }
        })
        .collect();
    Cyclotomic::from_coeffs(order, coeffs)
}

pub fn nonzero_cyclotomic(rng: &mut impl Rng, order: u64) -> Cyclotomic {
    loop {
        let c = cyclotomic(rng, order);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Small rational with numerator and denominator bounded by 6.
pub fn rational(rng: &mut impl Rng, order: u64) -> Cyclotomic {
    let num = rng.gen_range(-6i64..=6);
    let den = rng.gen_range(1i64..=6);
    Cyclotomic::from_ratio(order, BigRational::new(BigInt::from(num), BigInt::from(den)))
}

pub fn group_element(rng: &mut impl Rng, group: &GroupSpec, radius: i64) -> GroupElement {
    let free = (0..group.free_rank())
        .map(|_| rng.gen_range(-radius..=radius))
        .collect();
    let torsion = group
        .torsion_orders()
        .iter()
        .map(|&n| rng.gen_range(0..n as i64))
        .collect();
    group.element(free, torsion).expect("sampled in range")
}

/// Exponential with small nonzero integer free values (kept away from zero)
/// and random torsion roots of unity.
pub fn exponential(rng: &mut impl Rng, group: &GroupSpec, order: u64) -> Exponential {
    let free = (0..group.free_rank())
        .map(|_| {
            let v: i64 = *[1, 2, 3, 5, -1, -2].get(rng.gen_range(0..6)).unwrap();
            Cyclotomic::from_int(order, v)
        })
        .collect();
    let torsion = group
        .torsion_orders()
        .iter()
        .map(|&n| {
            Cyclotomic::root_of_unity(order, n, rng.gen_range(0..n as i64))
                .expect("group orders divide the ambient order")
        })
        .collect();
    Exponential::new(group, free, torsion).expect("sampled values are valid")
}

/// Polynomial with up to `max_terms` monomials of total degree `<= max_degree`.
pub fn polynomial(
    rng: &mut impl Rng,
    group: &GroupSpec,
    order: u64,
    vector_dim: usize,
    max_degree: i64,
    max_terms: usize,
) -> VectorPolynomial {
    let r = group.free_rank();
    let nterms = rng.gen_range(1..=max_terms);
    let mut terms = Vec::with_capacity(nterms);
    for _ in 0..nterms {
        let mut expo = vec![0u32; r];
        if r > 0 && max_degree > 0 {
            let total = rng.gen_range(0..=max_degree) as u32;
            for _ in 0..total {
                let slot = rng.gen_range(0..r);
                expo[slot] += 1;
            }
        }
        let coeff = (0..vector_dim).map(|_| cyclotomic(rng, order)).collect();
        terms.push((expo, coeff));
    }
    VectorPolynomial::from_terms(r, vector_dim, terms).expect("sampled terms are well formed")
}

pub fn nonzero_polynomial(
    rng: &mut impl Rng,
    group: &GroupSpec,
    order: u64,
    vector_dim: usize,
    max_degree: i64,
    max_terms: usize,
) -> VectorPolynomial {
    loop {
        let p = polynomial(rng, group, order, vector_dim, max_degree, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Exponential polynomial with up to `max_exponentials` distinct terms.
pub fn expo_poly(
    rng: &mut impl Rng,
    group: &GroupSpec,
    order: u64,
    vector_dim: usize,
    max_exponentials: usize,
    max_degree: i64,
) -> ExpoPoly {
    let n = rng.gen_range(1..=max_exponentials);
    let mut terms = Vec::with_capacity(n);
    for _ in 0..n {
        let m = exponential(rng, group, order);
        let p = nonzero_polynomial(rng, group, order, vector_dim, max_degree, 3);
        terms.push((m, p));
    }
    ExpoPoly::from_terms(group.clone(), vector_dim, order, terms)
        .expect("sampled terms are well formed")
}

/// Generalized polynomial: a single term with the trivial exponential.
pub fn generalized_polynomial(
    rng: &mut impl Rng,
    group: &GroupSpec,
    order: u64,
    vector_dim: usize,
    max_degree: i64,
) -> ExpoPoly {
    let m = Exponential::trivial(group, order);
    let p = nonzero_polynomial(rng, group, order, vector_dim, max_degree, 4);
    ExpoPoly::from_terms(group.clone(), vector_dim, order, vec![(m, p)])
        .expect("sampled terms are well formed")
}

pub fn function_table(
    rng: &mut impl Rng,
    group: &GroupSpec,
    order: u64,
    vector_dim: usize,
) -> FunctionTable {
    let card = group.cardinality().expect("finite group") as usize;
    let values = (0..card)
        .map(|_| (0..vector_dim).map(|_| rational(rng, order)).collect())
        .collect();
    FunctionTable::new(group.clone(), vector_dim, order, values).expect("complete table")
}

pub fn measure(rng: &mut impl Rng, group: &GroupSpec, order: u64) -> Measure {
    let card = group.cardinality().expect("finite group") as usize;
    let weights = (0..card).map(|_| rational(rng, order)).collect();
    Measure::new(group.clone(), order, weights).expect("complete density")
}
