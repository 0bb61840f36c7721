//! Exact harmonic analysis on finite abelian groups, where Haar measure is
//! the uniform probability measure and every character takes root-of-unity
//! values inside the working cyclotomic field.
//!
//! Conventions: function convolution is normalized by `1/|G|` (probability
//! Haar measure); measures are densities against counting measure and their
//! convolution is the plain weighted sum. With these choices
//! `f * g = mu_g * f` holds exactly when `mu_g` has weights `g(t)/|G|`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::expopoly::ExpoPoly;
use crate::exponential::Exponential;
use crate::group::{GroupElement, GroupSpec};
use crate::polynomial::VectorPolynomial;

/// A character of a finite abelian group, indexed by its dual tuple: the
/// character with index `(y_1, ..., y_t)` maps `x` to
/// `prod_j zeta_(n_j)^(y_j x_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub dual_index: Vec<u64>,
    exponential: Exponential,
}

impl Character {
    pub fn exponential(&self) -> &Exponential {
        &self.exponential
    }

    pub fn eval(&self, x: &GroupElement, order: u64) -> Result<Cyclotomic> {
        self.exponential.eval(x, order)
    }
}

/// Smallest order hosting all character values on top of `base`.
pub fn character_order(group: &GroupSpec, base: u64) -> u64 {
    group
        .torsion_orders()
        .iter()
        .fold(num::integer::lcm(base, 4), |acc, &n| {
            num::integer::lcm(acc, n)
        })
}

/// All `|G|` characters of a finite group, in dual enumeration order.
pub fn characters(group: &GroupSpec, order: u64) -> Result<Vec<Character>> {
    if !group.is_finite() {
        return Err(Error::NotFinite);
    }
    let card = group.cardinality()?;
    let mut out = Vec::with_capacity(card as usize);
    for idx in 0..card {
        let point = group.element_at(idx)?;
        let values = point
            .torsion
            .iter()
            .zip(group.torsion_orders())
            .map(|(&y, &n)| Cyclotomic::root_of_unity(order, n, y as i64))
            .collect::<Result<Vec<_>>>()?;
        out.push(Character {
            dual_index: point.torsion.clone(),
            exponential: Exponential::new(group, vec![], values)?,
        });
    }
    Ok(out)
}

/// A total map on a finite group with values in `C^k`, stored in enumeration
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionTable {
    group: GroupSpec,
    vector_dim: usize,
    order: u64,
    values: Vec<Vec<Cyclotomic>>,
}

impl FunctionTable {
    pub fn new(
        group: GroupSpec,
        vector_dim: usize,
        order: u64,
        values: Vec<Vec<Cyclotomic>>,
    ) -> Result<FunctionTable> {
        let card = group.cardinality()? as usize;
        if values.len() != card {
            return Err(Error::Invalid(format!(
                "table has {} entries for a group of {card} elements",
                values.len()
            )));
        }
        if values.iter().any(|v| v.len() != vector_dim) {
            return Err(Error::DimensionMismatch(
                "table entry length differs from vector_dim".into(),
            ));
        }
        Ok(FunctionTable {
            group,
            vector_dim,
            order,
            values,
        })
    }

    pub fn from_expo_poly(f: &ExpoPoly) -> Result<FunctionTable> {
        let card = f.group().cardinality()? as usize;
        let mut values = Vec::with_capacity(card);
        for idx in 0..card as u64 {
            values.push(f.evaluate(&f.group().element_at(idx)?)?);
        }
        FunctionTable::new(f.group().clone(), f.vector_dim(), f.order(), values)
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

    pub fn value(&self, x: &GroupElement) -> Result<&Vec<Cyclotomic>> {
        Ok(&self.values[self.group.index_of(x)? as usize])
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    pub fn promote(&self, new_order: u64) -> Result<FunctionTable> {
        if new_order == self.order {
            return Ok(self.clone());
        }
        let values = self
            .values
            .iter()
            .map(|v| v.iter().map(|c| c.promote(new_order)).collect::<Result<_>>())
            .collect::<Result<Vec<_>>>()?;
        FunctionTable::new(self.group.clone(), self.vector_dim, new_order, values)
    }
}

/// A complex measure on a finite group: a density against counting measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    group: GroupSpec,
    order: u64,
    weights: Vec<Cyclotomic>,
}

impl Measure {
    pub fn new(group: GroupSpec, order: u64, weights: Vec<Cyclotomic>) -> Result<Measure> {
        let card = group.cardinality()? as usize;
        if weights.len() != card {
            return Err(Error::Invalid(format!(
                "measure has {} weights for a group of {card} elements",
                weights.len()
            )));
        }
        Ok(Measure {
            group,
            order,
            weights,
        })
    }

    /// The point mass at 0.
    pub fn dirac(group: GroupSpec, order: u64) -> Result<Measure> {
        let card = group.cardinality()? as usize;
        let mut weights = vec![Cyclotomic::zero(order); card];
        let zero_idx = group.index_of(&group.zero())? as usize;
        weights[zero_idx] = Cyclotomic::one(order);
        Measure::new(group, order, weights)
    }

    pub fn weights(&self) -> &[Cyclotomic] {
        &self.weights
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.order
    }
}

fn check_same_group(a: &GroupSpec, b: &GroupSpec) -> Result<()> {
    if a != b {
        return Err(Error::GroupMismatch(
            "operands live on different groups".into(),
        ));
    }
    Ok(())
}

/// Fourier coefficient `e_chi = (1/|G|) sum_t chi(-t) f(t)`, exact.
pub fn fourier_coefficient(f: &FunctionTable, chi: &Character) -> Result<Vec<Cyclotomic>> {
    let group = f.group();
    let order = f.order();
    let card = group.cardinality()?;
    let mut acc = vec![Cyclotomic::zero(order); f.vector_dim()];
    for idx in 0..card {
        let t = group.element_at(idx)?;
        let weight = chi.eval(&group.neg(&t)?, order)?;
        for (a, c) in acc.iter_mut().zip(&f.values()[idx as usize]) {
            *a = a.add(&c.mul(&weight));
        }
    }
    let inv = Cyclotomic::from_int(order, card as i64).inv()?;
    Ok(acc.into_iter().map(|c| c.mul(&inv)).collect())
}

/// Normalized convolution `f * g (x) = (1/|G|) sum_t f(x - t) g(t)` of a
/// vector table with a scalar table.
pub fn convolve(f: &FunctionTable, g: &FunctionTable) -> Result<FunctionTable> {
    check_same_group(f.group(), g.group())?;
    if g.vector_dim() != 1 {
        return Err(Error::DimensionMismatch(
            "second convolution factor must be scalar".into(),
        ));
    }
    if f.order() != g.order() {
        return Err(Error::Invalid("scalar orders differ".into()));
    }
    let group = f.group();
    let order = f.order();
    let card = group.cardinality()?;
    let inv_card = Cyclotomic::from_int(order, card as i64).inv()?;
    let mut values = Vec::with_capacity(card as usize);
    for xi in 0..card {
        let x = group.element_at(xi)?;
        let mut acc = vec![Cyclotomic::zero(order); f.vector_dim()];
        for ti in 0..card {
            let t = group.element_at(ti)?;
            let fv = f.value(&group.sub(&x, &t)?)?;
            let gv = &g.values()[ti as usize][0];
            for (a, c) in acc.iter_mut().zip(fv) {
                *a = a.add(&c.mul(gv));
            }
        }
        values.push(acc.into_iter().map(|c| c.mul(&inv_card)).collect());
    }
    FunctionTable::new(group.clone(), f.vector_dim(), order, values)
}

/// Measure convolution `mu * f (x) = sum_t f(x - t) mu(t)` (unnormalized:
/// the measure is a counting-measure density).
pub fn measure_convolve(mu: &Measure, f: &FunctionTable) -> Result<FunctionTable> {
    check_same_group(f.group(), mu.group())?;
    let group = f.group();
    let order = f.order();
    let card = group.cardinality()?;
    let mut values = Vec::with_capacity(card as usize);
    for xi in 0..card {
        let x = group.element_at(xi)?;
        let mut acc = vec![Cyclotomic::zero(order); f.vector_dim()];
        for ti in 0..card {
            let t = group.element_at(ti)?;
            let fv = f.value(&group.sub(&x, &t)?)?;
            for (a, c) in acc.iter_mut().zip(fv) {
                *a = a.add(&c.mul(&mu.weights()[ti as usize]));
            }
        }
        values.push(acc);
    }
    FunctionTable::new(group.clone(), f.vector_dim(), order, values)
}

/// Exact Fourier inversion: rebuild the table as `sum_chi e_chi * chi` in
/// canonical form. The result evaluates pointwise equal to the input.
pub fn synthesize(f: &FunctionTable) -> Result<ExpoPoly> {
    let needed = character_order(f.group(), f.order());
    let f = f.promote(needed)?;
    let group = f.group().clone();
    let order = f.order();
    let chars = characters(&group, order)?;
    let mut terms = Vec::new();
    for chi in &chars {
        let coeff = fourier_coefficient(&f, chi)?;
        if coeff.iter().all(|c| c.is_zero()) {
            continue;
        }
        terms.push((
            chi.exponential().clone(),
            VectorPolynomial::constant(0, coeff),
        ));
    }
    ExpoPoly::from_terms(group, f.vector_dim(), order, terms)
}

/// Exact check of `(mu * f) * g = mu * (f * g)`.
pub fn convolution_associates(mu: &Measure, f: &FunctionTable, g: &FunctionTable) -> Result<bool> {
    let lhs = convolve(&measure_convolve(mu, f)?, g)?;
    let rhs = measure_convolve(mu, &convolve(f, g)?)?;
    Ok(lhs == rhs)
}

// Wire format: {"group", "vector_dim", "values": [{"point", "value"}]}.

#[derive(Serialize, Deserialize)]
struct TableEntryWire {
    point: GroupElement,
    value: Vec<Cyclotomic>,
}

#[derive(Serialize, Deserialize)]
struct TableWire {
    group: GroupSpec,
    vector_dim: usize,
    values: Vec<TableEntryWire>,
}

impl Serialize for FunctionTable {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| TableEntryWire {
                point: self
                    .group
                    .element_at(i as u64)
                    .expect("stored index is valid"),
                value: v.clone(),
            })
            .collect();
        TableWire {
            group: self.group.clone(),
            vector_dim: self.vector_dim,
            values,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FunctionTable {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let wire = TableWire::deserialize(de)?;
        let card = wire
            .group
            .cardinality()
            .map_err(|e| D::Error::custom(e.to_string()))? as usize;
        if wire.values.len() != card {
            return Err(D::Error::custom(format!(
                "table must cover all {card} points exactly once, got {}",
                wire.values.len()
            )));
        }
        let order = wire
            .values
            .iter()
            .flat_map(|e| e.value.iter())
            .map(|c| c.order())
            .next()
            .unwrap_or(4);
        let mut slots: Vec<Option<Vec<Cyclotomic>>> = vec![None; card];
        for entry in wire.values {
            let idx = wire
                .group
                .index_of(&entry.point)
                .map_err(|e| D::Error::custom(e.to_string()))? as usize;
            if slots[idx].is_some() {
                return Err(D::Error::custom(format!(
                    "duplicate table entry for {:?}",
                    entry.point
                )));
            }
            slots[idx] = Some(entry.value);
        }
        let values = slots
            .into_iter()
            .map(|s| s.expect("all slots filled: counts match and no duplicates"))
            .collect();
        FunctionTable::new(wire.group, wire.vector_dim, order, values)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let values = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| TableEntryWire {
                point: self
                    .group
                    .element_at(i as u64)
                    .expect("stored index is valid"),
                value: vec![w.clone()],
            })
            .collect();
        TableWire {
            group: self.group.clone(),
            vector_dim: 1,
            values,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Measure {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let table = FunctionTable::deserialize(de)?;
        if table.vector_dim() != 1 {
            return Err(D::Error::custom("a measure density is scalar"));
        }
        let order = table.order();
        let group = table.group().clone();
        let weights = table.values.into_iter().map(|mut v| v.remove(0)).collect();
        Measure::new(group, order, weights).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(order: u64, v: i64) -> Cyclotomic {
        Cyclotomic::from_int(order, v)
    }

    #[test]
    fn characters_of_z2() {
        let g = GroupSpec::new(0, vec![2]).unwrap();
        let chars = characters(&g, 4).unwrap();
        assert_eq!(chars.len(), 2);
        let x1 = g.element(vec![], vec![1]).unwrap();
        assert!(chars[0].eval(&x1, 4).unwrap().is_one());
        assert_eq!(chars[1].eval(&x1, 4).unwrap(), c(4, -1));
    }

    #[test]
    fn character_count_on_product() {
        let g = GroupSpec::new(0, vec![6, 4]).unwrap();
        let order = character_order(&g, 4);
        assert_eq!(order, 12);
        assert_eq!(characters(&g, order).unwrap().len(), 24);
    }

    #[test]
    fn characters_need_a_finite_group() {
        let g = GroupSpec::new(1, vec![4]).unwrap();
        assert!(characters(&g, 4).is_err());
    }

    #[test]
    fn orthogonality_on_z4() {
        let g = GroupSpec::new(0, vec![4]).unwrap();
        let chars = characters(&g, 4).unwrap();
        let inv4 = c(4, 4).inv().unwrap();
        for a in &chars {
            for b in &chars {
                let mut acc = Cyclotomic::zero(4);
                for x in g.enumerate().unwrap() {
                    acc = acc.add(&a.eval(&x, 4).unwrap().mul(&b.eval(&x, 4).unwrap().conj()));
                }
                acc = acc.mul(&inv4);
                if a == b {
                    assert!(acc.is_one());
                } else {
                    assert!(acc.is_zero());
                }
            }
        }
    }

    #[test]
    fn coefficients_of_point_mass() {
        // f = delta_0 on Z_2: both coefficients are 1/2
        let g = GroupSpec::new(0, vec![2]).unwrap();
        let f =
            FunctionTable::new(g.clone(), 1, 4, vec![vec![c(4, 1)], vec![c(4, 0)]]).unwrap();
        let chars = characters(&g, 4).unwrap();
        let half = Cyclotomic::from_ratio(
            4,
            num::rational::BigRational::new(1.into(), 2.into()),
        );
        assert_eq!(
            fourier_coefficient(&f, &chars[0]).unwrap(),
            vec![half.clone()]
        );
        assert_eq!(fourier_coefficient(&f, &chars[1]).unwrap(), vec![half]);
    }

    #[test]
    fn coefficients_of_characters_are_unit_vectors() {
        let g = GroupSpec::new(0, vec![4]).unwrap();
        let chars = characters(&g, 4).unwrap();
        let table_of = |chi: &Character| {
            let values = g
                .enumerate()
                .unwrap()
                .iter()
                .map(|x| vec![chi.eval(x, 4).unwrap()])
                .collect();
            FunctionTable::new(g.clone(), 1, 4, values).unwrap()
        };
        for (i, chi) in chars.iter().enumerate() {
            let f = table_of(chi);
            for (j, other) in chars.iter().enumerate() {
                let e = fourier_coefficient(&f, other).unwrap();
                if i == j {
                    assert!(e[0].is_one());
                } else {
                    assert!(e[0].is_zero());
                }
            }
        }
    }

    #[test]
    fn constant_function_concentrates_at_the_trivial_character() {
        let g = GroupSpec::new(0, vec![6]).unwrap();
        let f = FunctionTable::new(g.clone(), 1, 12, vec![vec![c(12, 9)]; 6]).unwrap();
        let chars = characters(&g, 12).unwrap();
        assert_eq!(fourier_coefficient(&f, &chars[0]).unwrap(), vec![c(12, 9)]);
        for chi in &chars[1..] {
            assert!(fourier_coefficient(&f, chi).unwrap()[0].is_zero());
        }
    }

    #[test]
    fn convolution_identity_element() {
        // f * (|G| * delta_0) = f
        let g = GroupSpec::new(0, vec![6]).unwrap();
        let f = FunctionTable::new(
            g.clone(),
            1,
            12,
            (0..6).map(|v| vec![c(12, v * v - 3)]).collect(),
        )
        .unwrap();
        let mut unit_values = vec![vec![c(12, 0)]; 6];
        unit_values[0] = vec![c(12, 6)];
        let unit = FunctionTable::new(g.clone(), 1, 12, unit_values).unwrap();
        assert_eq!(convolve(&f, &unit).unwrap(), f);
    }

    #[test]
    fn synthesis_inverts_pointwise() {
        let g = GroupSpec::new(0, vec![2]).unwrap();
        let f =
            FunctionTable::new(g.clone(), 1, 4, vec![vec![c(4, 1)], vec![c(4, 0)]]).unwrap();
        let s = synthesize(&f).unwrap();
        assert_eq!(s.terms().len(), 2);
        for x in g.enumerate().unwrap() {
            assert_eq!(&s.evaluate(&x).unwrap(), f.value(&x).unwrap());
        }
        // a character synthesizes to itself
        let chars = characters(&g, 4).unwrap();
        let chi_table = FunctionTable::new(
            g.clone(),
            1,
            4,
            g.enumerate()
                .unwrap()
                .iter()
                .map(|x| vec![chars[1].eval(x, 4).unwrap()])
                .collect(),
        )
        .unwrap();
        let s = synthesize(&chi_table).unwrap();
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.terms()[0].0, *chars[1].exponential());
    }

    #[test]
    fn dirac_measure_is_neutral() {
        let g = GroupSpec::new(0, vec![6]).unwrap();
        let f = FunctionTable::new(
            g.clone(),
            2,
            12,
            (0..6).map(|v| vec![c(12, v), c(12, 1 - v)]).collect(),
        )
        .unwrap();
        let mu = Measure::dirac(g.clone(), 12).unwrap();
        assert_eq!(measure_convolve(&mu, &f).unwrap(), f);
    }

    #[test]
    fn table_json_round_trip() {
        let g = GroupSpec::new(0, vec![2, 3]).unwrap();
        let f = FunctionTable::new(
            g.clone(),
            2,
            12,
            (0..6).map(|v| vec![c(12, v), c(12, -v)]).collect(),
        )
        .unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let back: FunctionTable = serde_json::from_str(&text).unwrap();
        assert_eq!(f, back);
    }
}
