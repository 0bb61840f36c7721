//! Canonical exponential-polynomial forms `f = sum_i m_i * p_i` with vector
//! polynomial coefficients, and the translation / difference calculus on
//! them.
//!
//! Canonical form: exponentials pairwise distinct and sorted by their
//! generator-value encoding, every polynomial nonzero. The representation of
//! a function as such a sum is unique, so structural equality of canonical
//! forms coincides with pointwise equality; `==` on `ExpoPoly` decides
//! function equality.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::exponential::Exponential;
use crate::group::{GroupElement, GroupSpec};
use crate::polynomial::VectorPolynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpoPoly {
    group: GroupSpec,
    vector_dim: usize,
    order: u64,
    terms: Vec<(Exponential, VectorPolynomial)>,
}

impl ExpoPoly {
    pub fn zero(group: GroupSpec, vector_dim: usize, order: u64) -> ExpoPoly {
        ExpoPoly {
            group,
            vector_dim,
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(group: GroupSpec, order: u64, value: Vec<Cyclotomic>) -> Result<ExpoPoly> {
        let k = value.len();
        let free_rank = group.free_rank();
        let m = Exponential::trivial(&group, order);
        ExpoPoly::from_terms(
            group,
            k,
            order,
            vec![(m, VectorPolynomial::constant(free_rank, value))],
        )
    }

    /// Canonicalize a raw term list: validate shapes, merge equal
    /// exponentials, drop zero polynomials, sort.
    pub fn from_terms(
        group: GroupSpec,
        vector_dim: usize,
        order: u64,
        terms: Vec<(Exponential, VectorPolynomial)>,
    ) -> Result<ExpoPoly> {
        if vector_dim == 0 {
            return Err(Error::DimensionMismatch("vector_dim must be >= 1".into()));
        }
        let mut checked: Vec<(Exponential, VectorPolynomial)> = Vec::with_capacity(terms.len());
        for (m, p) in terms {
            if m.free_values().len() != group.free_rank()
                || m.torsion_values().len() != group.torsion_orders().len()
            {
                return Err(Error::GroupMismatch(
                    "exponential does not match the group".into(),
                ));
            }
            if p.free_rank() != group.free_rank() || p.vector_dim() != vector_dim {
                return Err(Error::DimensionMismatch(
                    "polynomial does not match the group/vector dimension".into(),
                ));
            }
            for v in m.free_values().iter().chain(m.torsion_values()) {
                if v.order() != order {
                    return Err(Error::Invalid(format!(
                        "exponential value has scalar order {}, expected {order}",
                        v.order()
                    )));
                }
            }
            for (_, c) in p.terms() {
                for v in c {
                    if v.order() != order {
                        return Err(Error::Invalid(format!(
                            "coefficient has scalar order {}, expected {order}",
                            v.order()
                        )));
                    }
                }
            }
            checked.push((m, p));
        }
        checked.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Exponential, VectorPolynomial)> = Vec::with_capacity(checked.len());
        for (m, p) in checked {
            match merged.last_mut() {
                Some((last_m, last_p)) if *last_m == m => {
                    *last_p = last_p.add(&p)?;
                }
                _ => merged.push((m, p)),
            }
        }
        merged.retain(|(_, p)| !p.is_zero());
        Ok(ExpoPoly {
            group,
            vector_dim,
            order,
            terms: merged,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn vector_dim(&self) -> usize {
        self.vector_dim
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> &[(Exponential, VectorPolynomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exponentials(&self) -> impl Iterator<Item = &Exponential> {
        self.terms.iter().map(|(m, _)| m)
    }

    pub fn polynomial_for(&self, m: &Exponential) -> Option<&VectorPolynomial> {
        self.terms
            .iter()
            .find(|(mm, _)| mm == m)
            .map(|(_, p)| p)
    }

    /// Max degree over the per-term polynomials; -1 for zero.
    pub fn max_poly_degree(&self) -> i64 {
        self.terms.iter().map(|(_, p)| p.degree()).max().unwrap_or(-1)
    }

    fn check_compatible(&self, other: &ExpoPoly) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(
                "operands live on different groups".into(),
            ));
        }
        if self.vector_dim != other.vector_dim {
            return Err(Error::DimensionMismatch(
                "operands have different vector dimensions".into(),
            ));
        }
        if self.order != other.order {
            return Err(Error::Invalid(format!(
                "scalar orders differ: {} vs {}",
                self.order, other.order
            )));
        }
        Ok(())
    }

    /// Exact evaluation `sum_i m_i(x) * p_i(x)`.
    pub fn evaluate(&self, x: &GroupElement) -> Result<Vec<Cyclotomic>> {
        if !self.group.contains(x) {
            return Err(Error::GroupMismatch(format!(
                "point {x:?} is not in the group"
            )));
        }
        let mut acc = vec![Cyclotomic::zero(self.order); self.vector_dim];
        for (m, p) in &self.terms {
            let mv = m.eval(x, self.order)?;
            let pv = p.eval(&x.free, self.order)?;
            for (a, c) in acc.iter_mut().zip(pv) {
                *a = a.add(&c.mul(&mv));
            }
        }
        Ok(acc)
    }

    /// `x -> f(x + g)`: per term the exponential is unchanged and the
    /// polynomial becomes `m(g) * p(. + g_free)`.
    pub fn translate(&self, g: &GroupElement) -> Result<ExpoPoly> {
        if !self.group.contains(g) {
            return Err(Error::GroupMismatch(format!(
                "shift {g:?} is not in the group"
            )));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, p) in &self.terms {
            let factor = m.eval(g, self.order)?;
            let shifted = p.shift(&g.free, self.order)?.scale(&factor);
            terms.push((m.clone(), shifted));
        }
        ExpoPoly::from_terms(self.group.clone(), self.vector_dim, self.order, terms)
    }

    /// Canonical form of `alpha * f + beta * g`.
    pub fn add_scale(
        f: &ExpoPoly,
        g: &ExpoPoly,
        alpha: &Cyclotomic,
        beta: &Cyclotomic,
    ) -> Result<ExpoPoly> {
        f.check_compatible(g)?;
        let mut terms: Vec<(Exponential, VectorPolynomial)> = Vec::new();
        for (m, p) in &f.terms {
            terms.push((m.clone(), p.scale(alpha)));
        }
        for (m, p) in &g.terms {
            terms.push((m.clone(), p.scale(beta)));
        }
        ExpoPoly::from_terms(f.group.clone(), f.vector_dim, f.order, terms)
    }

    pub fn add(&self, other: &ExpoPoly) -> Result<ExpoPoly> {
        let one = Cyclotomic::one(self.order);
        ExpoPoly::add_scale(self, other, &one, &one)
    }

    pub fn sub(&self, other: &ExpoPoly) -> Result<ExpoPoly> {
        let one = Cyclotomic::one(self.order);
        ExpoPoly::add_scale(self, other, &one, &one.neg())
    }

    pub fn scale(&self, factor: &Cyclotomic) -> ExpoPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, p)| (m.clone(), p.scale(factor)))
            .collect();
        ExpoPoly::from_terms(self.group.clone(), self.vector_dim, self.order, terms)
            .expect("scaling preserves validity")
    }

    pub fn neg(&self) -> ExpoPoly {
        self.scale(&Cyclotomic::from_int(self.order, -1))
    }

    /// Scalar function `x -> sum_j u_j * f_j(x)`; components may cancel.
    pub fn compose_functional(&self, u: &[Cyclotomic]) -> Result<ExpoPoly> {
        if u.len() != self.vector_dim {
            return Err(Error::DimensionMismatch(format!(
                "functional length {} != vector dim {}",
                u.len(),
                self.vector_dim
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, p)| Ok((m.clone(), p.compose_functional(u)?)))
            .collect::<Result<Vec<_>>>()?;
        ExpoPoly::from_terms(self.group.clone(), 1, self.order, terms)
    }

    /// Pointwise product; at least one factor must be scalar.
    pub fn mul(&self, other: &ExpoPoly) -> Result<ExpoPoly> {
        if self.group != other.group || self.order != other.order {
            return Err(Error::GroupMismatch(
                "product operands live on different groups or orders".into(),
            ));
        }
        if self.vector_dim != 1 && other.vector_dim != 1 {
            return Err(Error::DimensionMismatch(
                "pointwise product needs a scalar factor".into(),
            ));
        }
        let out_dim = self.vector_dim.max(other.vector_dim);
        let mut terms = Vec::new();
        for (ma, pa) in &self.terms {
            for (mb, pb) in &other.terms {
                terms.push((ma.mul(mb)?, pa.mul(pb)?));
            }
        }
        ExpoPoly::from_terms(self.group.clone(), out_dim, self.order, terms)
    }

    pub fn component(&self, j: usize) -> ExpoPoly {
        assert!(j < self.vector_dim);
        let terms = self
            .terms
            .iter()
            .map(|(m, p)| (m.clone(), p.component(j)))
            .collect();
        ExpoPoly::from_terms(self.group.clone(), 1, self.order, terms)
            .expect("component of a valid function is valid")
    }

    /// Assemble a vector-valued function from scalar components.
    pub fn from_components(parts: &[ExpoPoly]) -> Result<ExpoPoly> {
        let k = parts.len();
        if k == 0 {
            return Err(Error::DimensionMismatch("no components".into()));
        }
        let group = parts[0].group.clone();
        let order = parts[0].order;
        let mut terms = Vec::new();
        for (j, part) in parts.iter().enumerate() {
            if part.vector_dim != 1 {
                return Err(Error::DimensionMismatch(
                    "components must be scalar".into(),
                ));
            }
            parts[0].check_compatible(part)?;
            for (m, p) in &part.terms {
                let lifted = VectorPolynomial::from_terms(
                    p.free_rank(),
                    k,
                    p.terms()
                        .map(|(e, c)| {
                            let mut v = vec![Cyclotomic::zero(order); k];
                            v[j] = c[0].clone();
                            (e.clone(), v)
                        })
                        .collect(),
                )?;
                terms.push((m.clone(), lifted));
            }
        }
        ExpoPoly::from_terms(group, k, order, terms)
    }

    /// Exact pointwise comparison on the box `[-radius, radius]^r` times the
    /// full torsion product.
    pub fn pointwise_eq_on_box(&self, other: &ExpoPoly, radius: i64) -> Result<bool> {
        self.check_compatible(other)?;
        for x in box_points(&self.group, radius) {
            if self.evaluate(&x)? != other.evaluate(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn promote(&self, new_order: u64) -> Result<ExpoPoly> {
        if new_order == self.order {
            return Ok(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, p)| Ok((m.promote(new_order)?, p.promote(new_order)?)))
            .collect::<Result<Vec<_>>>()?;
        ExpoPoly::from_terms(self.group.clone(), self.vector_dim, new_order, terms)
    }
}

/// All points with free coordinates in `[-radius, radius]` and arbitrary
/// torsion part.
pub fn box_points(group: &GroupSpec, radius: i64) -> Vec<GroupElement> {
    let r = group.free_rank();
    let mut free_choices: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for prefix in &free_choices {
            for v in -radius..=radius {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        free_choices = next;
    }
    let mut torsion_choices: Vec<Vec<i64>> = vec![Vec::new()];
    for &n in group.torsion_orders() {
        let mut next = Vec::new();
        for prefix in &torsion_choices {
            for v in 0..n as i64 {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        torsion_choices = next;
    }
    let mut out = Vec::with_capacity(free_choices.len() * torsion_choices.len());
    for f in &free_choices {
        for t in &torsion_choices {
            out.push(
                group
                    .element(f.clone(), t.clone())
                    .expect("box point is well formed"),
            );
        }
    }
    out
}

/// A formal finite linear combination of translation operators.
///
/// Canonical form: shifts pairwise distinct and sorted, no zero coefficients;
/// the zero operator is the empty list. Application is linear and commutes
/// with every translation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DifferenceOperator {
    terms: Vec<OperatorTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OperatorTerm {
    pub coeff: Cyclotomic,
    pub shift: GroupElement,
}

impl DifferenceOperator {
    pub fn zero() -> DifferenceOperator {
        DifferenceOperator { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<(Cyclotomic, GroupElement)>) -> DifferenceOperator {
        let mut terms: Vec<OperatorTerm> = terms
            .into_iter()
            .map(|(coeff, shift)| OperatorTerm { coeff, shift })
            .collect();
        terms.sort_by(|a, b| a.shift.cmp(&b.shift));
        let mut merged: Vec<OperatorTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.shift == t.shift => {
                    last.coeff = last.coeff.add(&t.coeff);
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        DifferenceOperator { terms: merged }
    }

    /// The identity `T_0`.
    pub fn identity(group: &GroupSpec, order: u64) -> DifferenceOperator {
        DifferenceOperator::from_terms(vec![(Cyclotomic::one(order), group.zero())])
    }

    /// A single translation `c * T_g`.
    pub fn translation(coeff: Cyclotomic, shift: GroupElement) -> DifferenceOperator {
        DifferenceOperator::from_terms(vec![(coeff, shift)])
    }

    /// The forward difference `T_g - T_0`.
    pub fn delta(group: &GroupSpec, order: u64, g: &GroupElement) -> DifferenceOperator {
        DifferenceOperator::from_terms(vec![
            (Cyclotomic::one(order), g.clone()),
            (Cyclotomic::from_int(order, -1), group.zero()),
        ])
    }

    pub fn terms(&self) -> &[OperatorTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &DifferenceOperator) -> DifferenceOperator {
        let mut terms: Vec<(Cyclotomic, GroupElement)> = self
            .terms
            .iter()
            .map(|t| (t.coeff.clone(), t.shift.clone()))
            .collect();
        terms.extend(other.terms.iter().map(|t| (t.coeff.clone(), t.shift.clone())));
        DifferenceOperator::from_terms(terms)
    }

    pub fn scale(&self, factor: &Cyclotomic) -> DifferenceOperator {
        DifferenceOperator::from_terms(
            self.terms
                .iter()
                .map(|t| (t.coeff.mul(factor), t.shift.clone()))
                .collect(),
        )
    }

    /// Formal product: shifts add, coefficients multiply.
    /// `compose(a, b).apply(f) = a.apply(b.apply(f))`.
    pub fn compose(&self, other: &DifferenceOperator, group: &GroupSpec) -> Result<DifferenceOperator> {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push((a.coeff.mul(&b.coeff), group.add(&a.shift, &b.shift)?));
            }
        }
        Ok(DifferenceOperator::from_terms(terms))
    }

    /// `sum_t c_t * T_(g_t) f` in canonical form.
    pub fn apply(&self, f: &ExpoPoly) -> Result<ExpoPoly> {
        let mut acc = ExpoPoly::zero(f.group().clone(), f.vector_dim(), f.order());
        for t in &self.terms {
            let translated = f.translate(&t.shift)?.scale(&t.coeff);
            acc = acc.add(&translated)?;
        }
        Ok(acc)
    }

    /// Apply through pointwise evaluations only.
    pub fn apply_at(
        &self,
        group: &GroupSpec,
        order: u64,
        vector_dim: usize,
        eval: &mut dyn FnMut(&GroupElement) -> Result<Vec<Cyclotomic>>,
        x: &GroupElement,
    ) -> Result<Vec<Cyclotomic>> {
        let mut acc = vec![Cyclotomic::zero(order); vector_dim];
        for t in &self.terms {
            let y = group.add(x, &t.shift)?;
            let v = eval(&y)?;
            for (a, c) in acc.iter_mut().zip(v) {
                *a = a.add(&c.mul(&t.coeff));
            }
        }
        Ok(acc)
    }
}

// Wire formats.

#[derive(Serialize, Deserialize)]
struct ExpoTermWire {
    exponential: ExpWire,
    polynomial: Vec<PolyTermWire>,
}

#[derive(Serialize, Deserialize)]
struct ExpWire {
    free: Vec<Cyclotomic>,
    torsion: Vec<Cyclotomic>,
}

#[derive(Serialize, Deserialize)]
struct PolyTermWire {
    exponent: Vec<u32>,
    coeff: Vec<Cyclotomic>,
}

#[derive(Serialize, Deserialize)]
struct ExpoPolyWire {
    group: GroupSpec,
    vector_dim: usize,
    cyclotomic_order: u64,
    terms: Vec<ExpoTermWire>,
}

impl Serialize for ExpoPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, p)| ExpoTermWire {
                exponential: ExpWire {
                    free: m.free_values().to_vec(),
                    torsion: m.torsion_values().to_vec(),
                },
                polynomial: p
                    .terms()
                    .map(|(e, c)| PolyTermWire {
                        exponent: e.clone(),
                        coeff: c.clone(),
                    })
                    .collect(),
            })
            .collect();
        ExpoPolyWire {
            group: self.group.clone(),
            vector_dim: self.vector_dim,
            cyclotomic_order: self.order,
            terms,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ExpoPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let wire = ExpoPolyWire::deserialize(de)?;
        let mut terms = Vec::with_capacity(wire.terms.len());
        for t in wire.terms {
            let m = Exponential::new(&wire.group, t.exponential.free, t.exponential.torsion)
                .map_err(|e| D::Error::custom(e.to_string()))?;
            let p = VectorPolynomial::from_terms(
                wire.group.free_rank(),
                wire.vector_dim,
                t.polynomial
                    .into_iter()
                    .map(|pt| (pt.exponent, pt.coeff))
                    .collect(),
            )
            .map_err(|e| D::Error::custom(e.to_string()))?;
            terms.push((m, p));
        }
        ExpoPoly::from_terms(wire.group, wire.vector_dim, wire.cyclotomic_order, terms)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}
