//! Degree, classification flags, degree certificates, and the sampled
//! vanishing-difference check.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::expopoly::ExpoPoly;
use crate::group::GroupElement;
use crate::structure::span::translate_span;
use crate::structure::FunctionOracle;

/// A canonical form is a generalized polynomial exactly when no nontrivial
/// exponential appears.
pub fn is_generalized_polynomial(f: &ExpoPoly) -> bool {
    f.exponentials().all(|m| m.is_trivial())
}

/// Degree of a generalized polynomial: max total degree, -1 for zero.
pub fn degree(f: &ExpoPoly) -> Result<i64> {
    if !is_generalized_polynomial(f) {
        return Err(Error::NotGeneralizedPolynomial);
    }
    Ok(f.max_poly_degree())
}

/// Membership flags for the four polynomial classes. On finitely generated
/// groups with finite-dimensional values the four coincide; the constructor
/// asserts the implication chain polynomial => w-polynomial => generalized
/// => local.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub is_generalized: bool,
    pub is_polynomial: bool,
    pub is_w_polynomial: bool,
    pub is_local_polynomial: bool,
    pub degree: Option<i64>,
    #[serde(rename = "dim_L_f")]
    pub translate_span_dim: usize,
}

pub fn classify(f: &ExpoPoly) -> ClassificationReport {
    let generalized = is_generalized_polynomial(f);
    let span_dim = translate_span(f).dim();
    // the span is always finite-dimensional here, so "generalized and
    // finite-dimensional span" collapses to "generalized", and the w/local
    // variants collapse with it
    let report = ClassificationReport {
        is_generalized: generalized,
        is_polynomial: generalized,
        is_w_polynomial: generalized,
        is_local_polynomial: generalized,
        degree: if generalized {
            Some(f.max_poly_degree())
        } else {
            None
        },
        translate_span_dim: span_dim,
    };
    assert!(
        (!report.is_polynomial || report.is_w_polynomial)
            && (!report.is_w_polynomial || report.is_generalized)
            && (!report.is_generalized || report.is_local_polynomial),
        "classification chain violated"
    );
    report
}

/// A functional `u` with `deg(u o f) = deg f`, built from a top-degree
/// coefficient vector: any coordinate where that vector is nonzero works.
pub fn degree_certificate(f: &ExpoPoly) -> Result<Vec<Cyclotomic>> {
    if !is_generalized_polynomial(f) {
        return Err(Error::NotGeneralizedPolynomial);
    }
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let (_, p) = &f.terms()[0];
    let top = p.degree();
    let order = f.order();
    let k = f.vector_dim();
    for (expo, coeff) in p.terms() {
        if expo.iter().map(|&e| e as i64).sum::<i64>() != top {
            continue;
        }
        if let Some(j) = coeff.iter().position(|c| !c.is_zero()) {
            let mut u = vec![Cyclotomic::zero(order); k];
            u[j] = Cyclotomic::one(order);
            return Ok(u);
        }
    }
    unreachable!("a nonzero polynomial has a nonzero top-degree coefficient")
}

/// Bounds for the largest possible `dim L_(u o f)` over all functionals `u`:
/// the lower bound maximizes over the standard basis functionals plus 20
/// seeded random ones, the upper bound is `dim L_f` itself.
pub fn functional_span_bounds(f: &ExpoPoly, rng: &mut impl Rng) -> Result<(usize, usize)> {
    if !is_generalized_polynomial(f) {
        return Err(Error::NotGeneralizedPolynomial);
    }
    let order = f.order();
    let k = f.vector_dim();
    let mut functionals: Vec<Vec<Cyclotomic>> = (0..k)
        .map(|j| {
            let mut u = vec![Cyclotomic::zero(order); k];
            u[j] = Cyclotomic::one(order);
            u
        })
        .collect();
    for _ in 0..20 {
        let u: Vec<Cyclotomic> = (0..k)
            .map(|_| Cyclotomic::from_int(order, rng.gen_range(-3..=3)))
            .collect();
        if u.iter().any(|c| !c.is_zero()) {
            functionals.push(u);
        }
    }
    let mut lower = 0;
    for u in &functionals {
        let composed = f.compose_functional(u)?;
        lower = lower.max(translate_span(&composed).dim());
    }
    let upper = translate_span(f).dim();
    if !f.is_zero() {
        debug_assert!(
            f.max_poly_degree() < lower as i64,
            "degree must stay below the span dimension of a certified functional image"
        );
    }
    Ok((lower, upper))
}

/// Randomized check that all (n+1)-fold differences of the oracle vanish,
/// expanding each iterated difference into its 2^(n+1)-term alternating sum.
/// A `true` answer is probabilistic (sampled tuples only); `false` is exact.
pub fn differences_vanish_sampled(
    f: &FunctionOracle,
    n: i64,
    trials: usize,
    box_radius: i64,
    rng: &mut impl Rng,
) -> Result<bool> {
    if n < 0 || trials == 0 {
        return Err(Error::Invalid("need n >= 0 and at least one trial".into()));
    }
    let group = f.group().clone();
    let order = f.order();
    let steps = (n + 1) as usize;
    let random_point = |rng: &mut dyn rand::RngCore| -> Result<GroupElement> {
        let free = (0..group.free_rank())
            .map(|_| rng.gen_range(-box_radius..=box_radius))
            .collect();
        let torsion = group
            .torsion_orders()
            .iter()
            .map(|&m| rng.gen_range(0..m as i64))
            .collect();
        group.element(free, torsion)
    };
    for _ in 0..trials {
        let x = random_point(rng)?;
        let hs: Vec<GroupElement> = (0..steps)
            .map(|_| random_point(rng))
            .collect::<Result<_>>()?;
        let mut acc = vec![Cyclotomic::zero(order); f.vector_dim()];
        for mask in 0u32..(1 << steps) {
            let mut point = x.clone();
            for (i, h) in hs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    point = group.add(&point, h)?;
                }
            }
            let v = f.eval(&point)?;
            let positive = (steps - mask.count_ones() as usize) % 2 == 0;
            for (a, c) in acc.iter_mut().zip(v) {
                *a = if positive { a.add(&c) } else { a.sub(&c) };
            }
        }
        if acc.iter().any(|c| !c.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponential::Exponential;
    use crate::group::GroupSpec;
    use crate::polynomial::VectorPolynomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(4, v)
    }

    fn poly_on_z2(terms: Vec<(Vec<u32>, i64)>) -> ExpoPoly {
        let g = GroupSpec::new(2, vec![]).unwrap();
        let m = Exponential::trivial(&g, 4);
        let p = VectorPolynomial::from_terms(
            2,
            1,
            terms.into_iter().map(|(e, v)| (e, vec![c(v)])).collect(),
        )
        .unwrap();
        ExpoPoly::from_terms(g, 1, 4, vec![(m, p)]).unwrap()
    }

    fn two_x() -> ExpoPoly {
        let g = GroupSpec::new(1, vec![]).unwrap();
        let m = Exponential::new(&g, vec![c(2)], vec![]).unwrap();
        ExpoPoly::from_terms(
            g,
            1,
            4,
            vec![(m, VectorPolynomial::constant(1, vec![c(1)]))],
        )
        .unwrap()
    }

    #[test]
    fn degree_examples() {
        let f = poly_on_z2(vec![(vec![2, 1], 1), (vec![1, 0], 1)]);
        assert_eq!(degree(&f).unwrap(), 3);
        let zero = ExpoPoly::zero(GroupSpec::new(1, vec![]).unwrap(), 1, 4);
        assert_eq!(degree(&zero).unwrap(), -1);
        assert!(degree(&two_x()).is_err());
    }

    #[test]
    fn classification_flags() {
        let f = poly_on_z2(vec![(vec![2, 0], 1)]);
        let r = classify(&f);
        assert!(r.is_generalized && r.is_polynomial && r.is_w_polynomial && r.is_local_polynomial);
        assert_eq!(r.degree, Some(2));
        let r2 = classify(&two_x());
        assert!(
            !r2.is_generalized
                && !r2.is_polynomial
                && !r2.is_w_polynomial
                && !r2.is_local_polynomial
        );
        assert_eq!(r2.degree, None);
        assert_eq!(r2.translate_span_dim, 1);
    }

    #[test]
    fn certificate_handles_cancellation() {
        // f = (x^2, -x^2): u = (1, 0) certifies degree 2 while (1, 1) kills it
        let g = GroupSpec::new(1, vec![]).unwrap();
        let m = Exponential::trivial(&g, 4);
        let p = VectorPolynomial::from_terms(1, 2, vec![(vec![2], vec![c(1), c(-1)])]).unwrap();
        let f = ExpoPoly::from_terms(g, 2, 4, vec![(m, p)]).unwrap();
        let u = degree_certificate(&f).unwrap();
        let composed = f.compose_functional(&u).unwrap();
        assert_eq!(degree(&composed).unwrap(), 2);
        let killed = f.compose_functional(&[c(1), c(1)]).unwrap();
        assert_eq!(degree(&killed).unwrap(), -1);
    }

    #[test]
    fn functional_bounds_for_x_squared() {
        let g = GroupSpec::new(1, vec![]).unwrap();
        let m = Exponential::trivial(&g, 4);
        let p = VectorPolynomial::from_terms(1, 1, vec![(vec![2], vec![c(1)])]).unwrap();
        let f = ExpoPoly::from_terms(g, 1, 4, vec![(m, p)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (lower, upper) = functional_span_bounds(&f, &mut rng).unwrap();
        assert_eq!((lower, upper), (3, 3));
    }

    #[test]
    fn sampled_differences_match_symbolic_degree() {
        let g = GroupSpec::new(1, vec![]).unwrap();
        let m = Exponential::trivial(&g, 4);
        let p = VectorPolynomial::from_terms(1, 1, vec![(vec![3], vec![c(1)])]).unwrap();
        let cube = ExpoPoly::from_terms(g, 1, 4, vec![(m, p)]).unwrap();
        let oracle = FunctionOracle::from_expo_poly(&cube);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(differences_vanish_sampled(&oracle, 3, 40, 5, &mut rng).unwrap());
        assert!(!differences_vanish_sampled(&oracle, 2, 40, 5, &mut rng).unwrap());
        let exp_oracle = FunctionOracle::from_expo_poly(&two_x());
        for n in 0..=6 {
            assert!(!differences_vanish_sampled(&exp_oracle, n, 40, 5, &mut rng).unwrap());
        }
    }
}
