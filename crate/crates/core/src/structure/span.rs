//! Translate spans: the linear span of all translates of a function, its
//! exact dimension, and spectral sets computed by membership solves.
//!
//! Translation never changes the exponential set of a canonical form and
//! never raises the degree of a per-exponential polynomial, so every
//! translate of `f` lives in the finite-dimensional ambient space spanned by
//! `(exponential of f) x (monomial of total degree <= deg p_i) x (vector
//! component)`. The closure iteration below therefore terminates.

use std::collections::{HashMap, VecDeque};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::expopoly::ExpoPoly;
use crate::exponential::Exponential;
use crate::group::{GroupElement, GroupSpec};
use crate::linalg::{self, RowEchelon};
use crate::polynomial::VectorPolynomial;

/// Fixed coordinate system for all translates of one function.
pub(crate) struct Ambient {
    group: GroupSpec,
    order: u64,
    vector_dim: usize,
    exps: Vec<Exponential>,
    /// Per exponential: the monomials of total degree up to that term's
    /// polynomial degree, plus an index for fast lookup.
    monos: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
    offsets: Vec<usize>,
    total: usize,
}

pub(crate) fn monomials_up_to(rank: usize, max_degree: i64) -> Vec<Vec<u32>> {
    if max_degree < 0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..rank {
        let mut next = Vec::new();
        for prefix in &out {
            let used: u32 = prefix.iter().sum();
            for v in 0..=(max_degree as u32 - used) {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    if rank == 0 {
        // single empty monomial
        return vec![Vec::new()];
    }
    out.sort();
    out
}

impl Ambient {
    pub(crate) fn for_function(f: &ExpoPoly) -> Ambient {
        let rank = f.group().free_rank();
        let mut exps = Vec::new();
        let mut monos = Vec::new();
        let mut index = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0usize;
        for (m, p) in f.terms() {
            let list = monomials_up_to(rank, p.degree());
            let idx: HashMap<Vec<u32>, usize> = list
                .iter()
                .enumerate()
                .map(|(i, e)| (e.clone(), i))
                .collect();
            exps.push(m.clone());
            offsets.push(total);
            total += list.len() * f.vector_dim();
            monos.push(list);
            index.push(idx);
        }
        Ambient {
            group: f.group().clone(),
            order: f.order(),
            vector_dim: f.vector_dim(),
            exps,
            monos,
            index,
            offsets,
            total,
        }
    }

    pub(crate) fn total(&self) -> usize {
        self.total
    }

    /// Coefficient vector of `g` in this coordinate system, or None when `g`
    /// does not fit (foreign exponential or too-high degree).
    pub(crate) fn flatten(&self, g: &ExpoPoly) -> Option<Vec<Cyclotomic>> {
        if g.group() != &self.group || g.vector_dim() != self.vector_dim || g.order() != self.order
        {
            return None;
        }
        let mut out = vec![Cyclotomic::zero(self.order); self.total];
        for (m, p) in g.terms() {
            let slot = self.exps.iter().position(|e| e == m)?;
            for (expo, coeff) in p.terms() {
                let mi = *self.index[slot].get(expo)?;
                for (j, c) in coeff.iter().enumerate() {
                    out[self.offsets[slot] + mi * self.vector_dim + j] = c.clone();
                }
            }
        }
        Some(out)
    }

    /// Single product `m_slot * (monomial) * (unit vector j)` as coordinates.
    fn basis_vector(&self, slot: usize, mono: &[u32], j: usize) -> Option<Vec<Cyclotomic>> {
        let mi = *self.index[slot].get(mono)?;
        let mut out = vec![Cyclotomic::zero(self.order); self.total];
        out[self.offsets[slot] + mi * self.vector_dim + j] = Cyclotomic::one(self.order);
        Some(out)
    }
}

/// The span of all translates of a function: an explicit basis of translates,
/// the exact dimension, and change-of-basis data certifying closure under the
/// generator translations.
pub struct TranslateSpan {
    basis: Vec<ExpoPoly>,
    dim: usize,
    ambient: Ambient,
    basis_matrix: Vec<Vec<Cyclotomic>>, // rows = ambient coords, cols = basis
    /// For each generator direction `g`: column `j` holds the coordinates of
    /// `T_g basis[j]` in the basis.
    closure: Vec<(GroupElement, Vec<Vec<Cyclotomic>>)>,
}

impl TranslateSpan {
    pub fn basis(&self) -> &[ExpoPoly] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn closure_certificate(&self) -> &[(GroupElement, Vec<Vec<Cyclotomic>>)] {
        &self.closure
    }

    /// Coordinates of `g` in the stored basis, or None when `g` is outside
    /// the span.
    pub fn coordinates(&self, g: &ExpoPoly) -> Option<Vec<Cyclotomic>> {
        let flat = self.ambient.flatten(g)?;
        if self.dim == 0 {
            return if flat.iter().all(|c| c.is_zero()) {
                Some(Vec::new())
            } else {
                None
            };
        }
        let rows: Vec<Vec<Cyclotomic>> = (0..self.ambient.total())
            .map(|r| self.basis_matrix[r].clone())
            .collect();
        let rhs: Vec<Vec<Cyclotomic>> = flat.into_iter().map(|c| vec![c]).collect();
        let sol = linalg::solve(&rows, &rhs)?;
        Some(sol.into_iter().map(|mut v| v.remove(0)).collect())
    }

    pub fn contains(&self, g: &ExpoPoly) -> bool {
        self.coordinates(g).is_some()
    }
}

/// Directions used for the closure iteration: both signs of every free
/// generator and every torsion generator.
fn closure_directions(group: &GroupSpec) -> Vec<GroupElement> {
    let mut dirs = Vec::new();
    for g in group.generators() {
        dirs.push(group.neg(&g).expect("generator is in the group"));
        dirs.push(g);
    }
    dirs
}

/// Iteratively close `{f}` under generator translations, inserting any
/// translate that increases the exact rank, until stable.
pub fn translate_span(f: &ExpoPoly) -> TranslateSpan {
    let ambient = Ambient::for_function(f);
    let mut ech = RowEchelon::new(ambient.total());
    let mut basis: Vec<ExpoPoly> = Vec::new();
    let mut queue: VecDeque<ExpoPoly> = VecDeque::new();
    let dirs = closure_directions(f.group());
    if !f.is_zero() {
        queue.push_back(f.clone());
    }
    while let Some(h) = queue.pop_front() {
        let flat = ambient
            .flatten(&h)
            .expect("translates stay inside the ambient space");
        if ech.insert(flat) {
            for d in &dirs {
                queue.push_back(h.translate(d).expect("direction is in the group"));
            }
            basis.push(h);
        }
    }
    let dim = ech.rank();
    // rows = ambient coordinates, cols = basis members
    let mut basis_matrix = vec![vec![Cyclotomic::zero(f.order()); dim]; ambient.total()];
    for (j, b) in basis.iter().enumerate() {
        let flat = ambient.flatten(b).expect("basis member fits the ambient");
        for (r, c) in flat.into_iter().enumerate() {
            basis_matrix[r][j] = c;
        }
    }
    // closure certificate: express each generator translate of each basis
    // member in the basis
    let mut closure = Vec::new();
    if dim > 0 {
        for d in closure_directions(f.group()) {
            let mut rhs_cols: Vec<Vec<Cyclotomic>> = vec![Vec::with_capacity(dim); ambient.total()];
            for b in &basis {
                let t = b.translate(&d).expect("direction is in the group");
                let flat = ambient.flatten(&t).expect("translate fits the ambient");
                for (r, c) in flat.into_iter().enumerate() {
                    rhs_cols[r].push(c);
                }
            }
            let sol = linalg::solve(&basis_matrix, &rhs_cols)
                .expect("translates of basis members stay in the span");
            closure.push((d, sol));
        }
    }
    TranslateSpan {
        basis,
        dim,
        ambient,
        basis_matrix,
        closure,
    }
}

/// For each exponential `m` appearing in `f`, the set of vectors `e` with
/// `m * e` inside the translate span of `f`, returned as an exact basis of
/// that subspace of `C^k`.
pub fn spectral_set(f: &ExpoPoly) -> Result<Vec<(Exponential, Vec<Vec<Cyclotomic>>)>> {
    let span = translate_span(f);
    let k = f.vector_dim();
    let order = f.order();
    let mut out = Vec::new();
    for (slot, m) in f.exponentials().enumerate() {
        // columns: basis coordinates, then -flatten(m * u_j); a nullspace
        // vector pairs a span combination with the e it equals.
        let total = span.ambient.total();
        let mut matrix = vec![vec![Cyclotomic::zero(order); span.dim + k]; total];
        for r in 0..total {
            for (j, c) in span.basis_matrix[r].iter().enumerate() {
                matrix[r][j] = c.clone();
            }
        }
        let zero_mono = vec![0u32; f.group().free_rank()];
        for j in 0..k {
            let col = span
                .ambient
                .basis_vector(slot, &zero_mono, j)
                .ok_or_else(|| {
                    Error::Invalid("constant monomial missing from ambient space".into())
                })?;
            for (r, c) in col.into_iter().enumerate() {
                matrix[r][span.dim + j] = c.neg();
            }
        }
        let null = linalg::nullspace(&matrix);
        // project onto the e coordinates and re-extract an independent basis
        let mut ech = RowEchelon::new(k);
        let mut basis_e: Vec<Vec<Cyclotomic>> = Vec::new();
        for v in null {
            let e: Vec<Cyclotomic> = v[span.dim..].to_vec();
            if ech.insert(e.clone()) {
                basis_e.push(e);
            }
        }
        out.push((m.clone(), basis_e));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expopoly::ExpoPoly;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(4, v)
    }

    fn zr(r: usize) -> GroupSpec {
        GroupSpec::new(r, vec![]).unwrap()
    }

    /// sum of squares of the free coordinates
    fn sum_of_squares(r: usize) -> ExpoPoly {
        let g = zr(r);
        let m = Exponential::trivial(&g, 4);
        let terms = (0..r)
            .map(|i| {
                let mut e = vec![0u32; r];
                e[i] = 2;
                (e, vec![c(1)])
            })
            .collect();
        let p = VectorPolynomial::from_terms(r, 1, terms).unwrap();
        ExpoPoly::from_terms(g, 1, 4, vec![(m, p)]).unwrap()
    }

    #[test]
    fn dimension_of_sum_of_squares_is_rank_plus_two() {
        for r in 1..=5 {
            let span = translate_span(&sum_of_squares(r));
            assert_eq!(span.dim(), r + 2, "rank {r}");
        }
    }

    #[test]
    fn dimension_of_x_times_2x_is_two() {
        let g = zr(1);
        let m = Exponential::new(&g, vec![c(2)], vec![]).unwrap();
        let p = VectorPolynomial::from_terms(1, 1, vec![(vec![1], vec![c(1)])]).unwrap();
        let f = ExpoPoly::from_terms(g.clone(), 1, 4, vec![(m.clone(), p)]).unwrap();
        let span = translate_span(&f);
        assert_eq!(span.dim(), 2);
        // 2^x itself lies in the span
        let two_x = ExpoPoly::from_terms(
            g.clone(),
            1,
            4,
            vec![(m, VectorPolynomial::constant(1, vec![c(1)]))],
        )
        .unwrap();
        assert!(span.contains(&two_x));
        // x^2 does not
        let m1 = Exponential::trivial(&g, 4);
        let sq = ExpoPoly::from_terms(
            g,
            1,
            4,
            vec![(
                m1,
                VectorPolynomial::from_terms(1, 1, vec![(vec![2], vec![c(1)])]).unwrap(),
            )],
        )
        .unwrap();
        assert!(!span.contains(&sq));
    }

    #[test]
    fn nonzero_constant_has_dimension_one() {
        let g = zr(1);
        let f = ExpoPoly::constant(g, 4, vec![c(5)]).unwrap();
        assert_eq!(translate_span(&f).dim(), 1);
        let z = ExpoPoly::zero(zr(1), 1, 4);
        assert_eq!(translate_span(&z).dim(), 0);
    }

    #[test]
    fn closure_certificate_reconstructs_translates() {
        let f = sum_of_squares(2);
        let span = translate_span(&f);
        for (d, cols) in span.closure_certificate() {
            for (j, b) in span.basis().iter().enumerate() {
                let t = b.translate(d).unwrap();
                // rebuild from certificate coordinates
                let mut acc = ExpoPoly::zero(f.group().clone(), 1, f.order());
                for (i, bi) in span.basis().iter().enumerate() {
                    acc = acc.add(&bi.scale(&cols[i][j])).unwrap();
                }
                assert_eq!(acc, t);
            }
        }
    }

    #[test]
    fn spectral_set_of_mixed_function() {
        // x*2^x + 3^x: admissible vectors for both exponentials span C^1
        let g = zr(1);
        let m2 = Exponential::new(&g, vec![c(2)], vec![]).unwrap();
        let m3 = Exponential::new(&g, vec![c(3)], vec![]).unwrap();
        let p_x = VectorPolynomial::from_terms(1, 1, vec![(vec![1], vec![c(1)])]).unwrap();
        let one = VectorPolynomial::constant(1, vec![c(1)]);
        let f = ExpoPoly::from_terms(g, 1, 4, vec![(m2, p_x), (m3, one)]).unwrap();
        let spec = spectral_set(&f).unwrap();
        assert_eq!(spec.len(), 2);
        for (_, basis) in spec {
            assert_eq!(basis.len(), 1);
        }
    }

    #[test]
    fn spectral_set_respects_vector_structure() {
        // f = (2^x, 0): admissible vectors for 2^x span {(1, 0)}
        let g = zr(1);
        let m2 = Exponential::new(&g, vec![c(2)], vec![]).unwrap();
        let p = VectorPolynomial::constant(1, vec![c(1), c(0)]);
        let f = ExpoPoly::from_terms(g, 2, 4, vec![(m2, p)]).unwrap();
        let spec = spectral_set(&f).unwrap();
        assert_eq!(spec.len(), 1);
        let basis = &spec[0].1;
        assert_eq!(basis.len(), 1);
        assert!(!basis[0][0].is_zero());
        assert!(basis[0][1].is_zero());
    }
}
