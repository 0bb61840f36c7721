//! Difference operators that isolate the `p_i * m_i` components of a sum of
//! polynomial-times-exponential terms, plus two extraction front ends: one
//! applying the operator set, one solving an interpolation system. The two
//! are algorithmically independent and cross-validate each other.
//!
//! Construction: recursion on the per-term degree profile `(d_1, ..., d_n)`.
//! For a target index `i` with `d_i >= 0` and a helper index `a != i` with
//! `d_a >= 0`, pick a group element `g` with `m_a(g) != m_i(g)` (distinct
//! exponentials differ on some generator) and form the two shifted operators
//!
//!   B_a = T_g - m_a(g) T_0,      B_i = T_g - m_i(g) T_0.
//!
//! Applied to `f = sum p_j m_j`, `B_a` lowers the degree at slot `a` and
//! `B_i` lowers it at slot `i`, so extractors `E`, `F` for the two smaller
//! profiles exist by induction, and
//!
//!   p_i * m_i = c * (E(B_a f) - F(B_i f)),   c = 1 / (m_i(g) - m_a(g)),
//!
//! because the slot-`i` outputs are `(m_i(g) T_g p_i - m_a(g) p_i) m_i` and
//! `m_i(g) (T_g p_i - p_i) m_i`, whose difference is `(m_i(g) - m_a(g)) p_i
//! m_i`. The returned set is the union over target indices and all degree
//! profiles with total at most `s`, so it works for every admissible tuple.

use std::collections::{BTreeSet, HashMap};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::expopoly::{box_points, DifferenceOperator, ExpoPoly};
use crate::exponential::Exponential;
use crate::group::{GroupElement, GroupSpec};
use crate::linalg;
use crate::polynomial::VectorPolynomial;
use crate::structure::span::monomials_up_to;
use crate::structure::FunctionOracle;

fn check_distinct(ms: &[Exponential]) -> Result<()> {
    if ms.is_empty() {
        return Err(Error::Invalid("need at least one exponential".into()));
    }
    let mut seen = BTreeSet::new();
    for m in ms {
        if !seen.insert(m.clone()) {
            return Err(Error::DuplicateExponentials);
        }
    }
    Ok(())
}

/// A group element on which the two exponentials take different values;
/// scanning the generators always finds one for distinct exponentials.
fn separating_element(group: &GroupSpec, a: &Exponential, b: &Exponential) -> GroupElement {
    for (i, g) in group.generators().into_iter().enumerate() {
        let r = group.free_rank();
        let differs = if i < r {
            a.free_values()[i] != b.free_values()[i]
        } else {
            a.torsion_values()[i - r] != b.torsion_values()[i - r]
        };
        if differs {
            return g;
        }
    }
    unreachable!("distinct exponentials differ on some generator value")
}

struct OperatorBuilder<'a> {
    group: &'a GroupSpec,
    order: u64,
    ms: &'a [Exponential],
    memo: HashMap<(Vec<i64>, usize), Vec<DifferenceOperator>>,
}

impl OperatorBuilder<'_> {
    /// Operators guaranteed to extract component `i` from any `f = sum p_j
    /// m_j` whose degrees obey `deg p_j <= d[j]`.
    fn extractors(&mut self, d: &[i64], i: usize) -> Result<Vec<DifferenceOperator>> {
        if let Some(v) = self.memo.get(&(d.to_vec(), i)) {
            return Ok(v.clone());
        }
        let result = if d[i] < 0 {
            vec![DifferenceOperator::zero()]
        } else if d.iter().enumerate().all(|(j, &dj)| j == i || dj < 0) {
            vec![DifferenceOperator::identity(self.group, self.order)]
        } else {
            let a = d
                .iter()
                .enumerate()
                .position(|(j, &dj)| j != i && dj >= 0)
                .expect("a helper slot with nonnegative degree exists");
            let g = separating_element(self.group, &self.ms[a], &self.ms[i]);
            let alpha = self.ms[a].eval(&g, self.order)?;
            let beta = self.ms[i].eval(&g, self.order)?;
            let c = beta.sub(&alpha).inv()?;
            let shift_a = DifferenceOperator::from_terms(vec![
                (Cyclotomic::one(self.order), g.clone()),
                (alpha.neg(), self.group.zero()),
            ]);
            let shift_i = DifferenceOperator::from_terms(vec![
                (Cyclotomic::one(self.order), g),
                (beta.neg(), self.group.zero()),
            ]);
            let mut da = d.to_vec();
            da[a] -= 1;
            let mut di = d.to_vec();
            di[i] -= 1;
            let e_set = self.extractors(&da, i)?;
            let f_set = self.extractors(&di, i)?;
            let mut out = BTreeSet::new();
            for e in &e_set {
                let left = e.compose(&shift_a, self.group)?.scale(&c);
                for f in &f_set {
                    let right = f.compose(&shift_i, self.group)?.scale(&c.neg());
                    out.insert(left.add(&right));
                }
            }
            out.into_iter().collect()
        };
        self.memo.insert((d.to_vec(), i), result.clone());
        Ok(result)
    }
}

fn degree_profiles(n: usize, s: i64) -> Vec<Vec<i64>> {
    let max_single = s + n as i64 - 1;
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for prefix in &out {
            let used: i64 = prefix.iter().sum();
            let remaining = n as i64 - prefix.len() as i64 - 1;
            // each later slot contributes at least -1
            let cap = (s - used + remaining).min(max_single);
            for v in -1..=cap {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.retain(|p| p.iter().sum::<i64>() <= s);
    out
}

/// A finite operator set `D` such that whenever `f = sum p_i m_i` with the
/// given distinct exponentials and total degree at most `s`, every component
/// `p_i * m_i` equals `D f` for some `D` in the set.
pub fn isolating_operators(
    group: &GroupSpec,
    order: u64,
    ms: &[Exponential],
    s: i64,
) -> Result<Vec<DifferenceOperator>> {
    check_distinct(ms)?;
    let n = ms.len();
    if s < -(n as i64) {
        return Err(Error::Invalid(format!(
            "total degree bound {s} below the minimum {}",
            -(n as i64)
        )));
    }
    if n == 1 {
        return Ok(vec![DifferenceOperator::identity(group, order)]);
    }
    if s == -(n as i64) {
        return Ok(vec![DifferenceOperator::zero()]);
    }
    let mut builder = OperatorBuilder {
        group,
        order,
        ms,
        memo: HashMap::new(),
    };
    let mut set: BTreeSet<DifferenceOperator> = BTreeSet::new();
    set.insert(DifferenceOperator::zero());
    set.insert(DifferenceOperator::identity(group, order));
    for d in degree_profiles(n, s) {
        for i in 0..n {
            for op in builder.extractors(&d, i)? {
                set.insert(op);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// Split a canonical form into its `p_i * m_i` components by applying the
/// isolating operator set and selecting, per index, an operator output that
/// matches; the selected outputs are verified to sum back to `f`.
pub fn isolate_components(f: &ExpoPoly, ms: &[Exponential], s: i64) -> Result<Vec<ExpoPoly>> {
    check_distinct(ms)?;
    for m in f.exponentials() {
        if !ms.contains(m) {
            return Err(Error::DecompositionFailure(format!(
                "function involves an exponential outside the declared list: {m:?}"
            )));
        }
    }
    let ops = isolating_operators(f.group(), f.order(), ms, s)?;
    let mut outputs = Vec::with_capacity(ops.len());
    for op in &ops {
        outputs.push(op.apply(f)?);
    }
    let zero = ExpoPoly::zero(f.group().clone(), f.vector_dim(), f.order());
    let mut picked = Vec::with_capacity(ms.len());
    for m in ms {
        let target = match f.polynomial_for(m) {
            Some(p) => ExpoPoly::from_terms(
                f.group().clone(),
                f.vector_dim(),
                f.order(),
                vec![(m.clone(), p.clone())],
            )?,
            None => zero.clone(),
        };
        let found = outputs.iter().any(|out| *out == target);
        if !found {
            return Err(Error::DecompositionFailure(format!(
                "no operator output isolates the component of {m:?}"
            )));
        }
        picked.push(target);
    }
    let mut sum = zero;
    for p in &picked {
        sum = sum.add(p)?;
    }
    if sum != *f {
        return Err(Error::DecompositionFailure(
            "isolated components do not sum back to the input".into(),
        ));
    }
    Ok(picked)
}

/// Memoizing pointwise view of an oracle.
struct CachedOracle<'a> {
    oracle: &'a FunctionOracle,
    cache: HashMap<GroupElement, Vec<Cyclotomic>>,
}

impl CachedOracle<'_> {
    fn eval(&mut self, x: &GroupElement) -> Result<Vec<Cyclotomic>> {
        if let Some(v) = self.cache.get(x) {
            return Ok(v.clone());
        }
        let v = self.oracle.eval(x)?;
        self.cache.insert(x.clone(), v.clone());
        Ok(v)
    }

    fn apply_operator(&mut self, op: &DifferenceOperator, x: &GroupElement) -> Result<Vec<Cyclotomic>> {
        let group = self.oracle.group().clone();
        let order = self.oracle.order();
        let mut acc = vec![Cyclotomic::zero(order); self.oracle.vector_dim()];
        for t in op.terms() {
            let y = group.add(x, &t.shift)?;
            let v = self.eval(&y)?;
            for (a, c) in acc.iter_mut().zip(v) {
                *a = a.add(&c.mul(&t.coeff));
            }
        }
        Ok(acc)
    }
}

/// Fit `values[x] = q(x) * m(x)` with `deg q <= max_degree` over the given
/// points; returns the canonical `q * m` or None when no polynomial fits.
fn fit_polynomial_times_exponential(
    group: &GroupSpec,
    order: u64,
    vector_dim: usize,
    m: &Exponential,
    points: &[GroupElement],
    values: &[Vec<Cyclotomic>],
    max_degree: i64,
) -> Result<Option<ExpoPoly>> {
    let monos = monomials_up_to(group.free_rank(), max_degree);
    let cols = monos.len();
    // q(x) = values[x] / m(x); fit on the first `cols` points, verify on all
    let mut q_values = Vec::with_capacity(points.len());
    for (x, v) in points.iter().zip(values) {
        let minv = m.eval(x, order)?.inv()?;
        q_values.push(v.iter().map(|c| c.mul(&minv)).collect::<Vec<_>>());
    }
    let design_row = |x: &GroupElement| -> Vec<Cyclotomic> {
        monos
            .iter()
            .map(|mono| {
                let mut acc = Cyclotomic::one(order);
                for (&e, &xi) in mono.iter().zip(&x.free) {
                    if e > 0 {
                        acc = acc.mul(&Cyclotomic::from_int(order, xi).pow(e as i64).unwrap());
                    }
                }
                acc
            })
            .collect()
    };
    let take = (cols + 2).min(points.len());
    let a: Vec<Vec<Cyclotomic>> = points[..take].iter().map(design_row).collect();
    let b: Vec<Vec<Cyclotomic>> = q_values[..take].to_vec();
    let Some(sol) = linalg::solve(&a, &b) else {
        return Ok(None);
    };
    // verify the fit on every point
    for (x, qv) in points.iter().zip(&q_values) {
        let row = design_row(x);
        for j in 0..vector_dim {
            let mut acc = Cyclotomic::zero(order);
            for (coef, cell) in sol.iter().zip(&row) {
                acc = acc.add(&coef[j].mul(cell));
            }
            if acc != qv[j] {
                return Ok(None);
            }
        }
    }
    let poly = VectorPolynomial::from_terms(
        group.free_rank(),
        vector_dim,
        monos
            .iter()
            .enumerate()
            .map(|(i, mono)| (mono.clone(), sol[i].clone()))
            .collect(),
    )?;
    Ok(Some(ExpoPoly::from_terms(
        group.clone(),
        vector_dim,
        order,
        vec![(m.clone(), poly)],
    )?))
}

/// Operator-based extraction from black-box access: apply every isolating
/// operator on a sampling box, keep the outputs that are exactly of the form
/// `q * m_i` on the box, and select one per index so the selection sums back
/// to the oracle on the box.
pub fn isolate_components_oracle(
    f: &FunctionOracle,
    ms: &[Exponential],
    s: i64,
) -> Result<Vec<ExpoPoly>> {
    check_distinct(ms)?;
    let n = ms.len() as i64;
    let group = f.group().clone();
    let order = f.order();
    let radius = (s.max(0) + 1) * (n + 1);
    let points = box_points(&group, radius);
    let max_degree = (s + n - 1).max(0);
    let ops = isolating_operators(&group, order, ms, s)?;
    let mut cached = CachedOracle {
        oracle: f,
        cache: HashMap::new(),
    };
    let mut candidate_sets: Vec<Vec<ExpoPoly>> = vec![Vec::new(); ms.len()];
    for op in &ops {
        let mut values = Vec::with_capacity(points.len());
        for x in &points {
            values.push(cached.apply_operator(op, x)?);
        }
        if values.iter().all(|v| v.iter().all(|c| c.is_zero())) {
            let zero = ExpoPoly::zero(group.clone(), f.vector_dim(), order);
            for set in candidate_sets.iter_mut() {
                if !set.contains(&zero) {
                    set.push(zero.clone());
                }
            }
            continue;
        }
        for (i, m) in ms.iter().enumerate() {
            if let Some(candidate) = fit_polynomial_times_exponential(
                &group,
                order,
                f.vector_dim(),
                m,
                &points,
                &values,
                max_degree,
            )? {
                if !candidate_sets[i].contains(&candidate) {
                    candidate_sets[i].push(candidate);
                }
            }
        }
    }
    // the sum of the selected candidates must reproduce the oracle on the box
    let f_values: Vec<Vec<Cyclotomic>> = points
        .iter()
        .map(|x| cached.eval(x))
        .collect::<Result<_>>()?;
    let mut selection = vec![0usize; ms.len()];
    let combos: usize = candidate_sets.iter().map(|s| s.len().max(1)).product();
    if combos > 4096 {
        return Err(Error::DecompositionFailure(format!(
            "candidate explosion: {combos} combinations"
        )));
    }
    loop {
        if candidate_sets.iter().all(|s| !s.is_empty()) {
            let chosen: Vec<&ExpoPoly> = selection
                .iter()
                .zip(&candidate_sets)
                .map(|(&i, set)| &set[i])
                .collect();
            let mut ok = true;
            'outer: for (x, fv) in points.iter().zip(&f_values) {
                let mut acc = vec![Cyclotomic::zero(order); f.vector_dim()];
                for c in &chosen {
                    for (a, v) in acc.iter_mut().zip(c.evaluate(x)?) {
                        *a = a.add(&v);
                    }
                }
                if &acc != fv {
                    ok = false;
                    break 'outer;
                }
            }
            if ok {
                return Ok(chosen.into_iter().cloned().collect());
            }
        }
        // advance the selection odometer
        let mut pos = 0;
        loop {
            if pos == selection.len() {
                return Err(Error::DecompositionFailure(
                    "no operator-output selection reconstructs the oracle".into(),
                ));
            }
            selection[pos] += 1;
            if selection[pos] < candidate_sets[pos].len().max(1) {
                break;
            }
            selection[pos] = 0;
            pos += 1;
        }
    }
}

/// Independent linear-algebra route: write each unknown `p_i` with
/// indeterminate coefficients, sample the oracle on an expanding box until
/// the interpolation matrix has full column rank, and solve exactly.
pub fn solve_components(f: &FunctionOracle, ms: &[Exponential], s: i64) -> Result<Vec<ExpoPoly>> {
    check_distinct(ms)?;
    let n = ms.len() as i64;
    if s < -n {
        return Err(Error::Invalid(format!(
            "total degree bound {s} below the minimum {}",
            -n
        )));
    }
    let group = f.group().clone();
    let order = f.order();
    let k = f.vector_dim();
    if s == -n {
        return Ok(vec![ExpoPoly::zero(group, k, order); ms.len()]);
    }
    // a single component can reach degree s + n - 1 when the others vanish
    let max_degree = (s + n - 1).max(0);
    let monos = monomials_up_to(group.free_rank(), max_degree);
    let cols = ms.len() * monos.len();
    let max_radius = 2 * (s.max(0) + 2) * (n + 1);
    let mut radius = (max_degree + 1).min(max_radius);
    loop {
        let points = box_points(&group, radius);
        let mut matrix = Vec::with_capacity(points.len());
        let mut rhs = Vec::with_capacity(points.len());
        for x in &points {
            let mut row = Vec::with_capacity(cols);
            for m in ms {
                let mv = m.eval(x, order)?;
                for mono in &monos {
                    let mut cell = mv.clone();
                    for (&e, &xi) in mono.iter().zip(&x.free) {
                        if e > 0 {
                            cell = cell.mul(&Cyclotomic::from_int(order, xi).pow(e as i64)?);
                        }
                    }
                    row.push(cell);
                }
            }
            matrix.push(row);
            rhs.push(f.eval(x)?);
        }
        if linalg::rank(&matrix) < cols {
            if radius >= max_radius {
                return Err(Error::IllPosed(format!(
                    "interpolation matrix is rank deficient up to box radius {max_radius}"
                )));
            }
            radius = (radius + 2).min(max_radius);
            continue;
        }
        let sol = linalg::solve(&matrix, &rhs).ok_or_else(|| {
            Error::DecompositionFailure(
                "oracle values are inconsistent with the declared form".into(),
            )
        })?;
        let mut out = Vec::with_capacity(ms.len());
        for (i, m) in ms.iter().enumerate() {
            let terms = monos
                .iter()
                .enumerate()
                .map(|(j, mono)| (mono.clone(), sol[i * monos.len() + j].clone()))
                .collect();
            let poly = VectorPolynomial::from_terms(group.free_rank(), k, terms)?;
            out.push(ExpoPoly::from_terms(
                group.clone(),
                k,
                order,
                vec![(m.clone(), poly)],
            )?);
        }
        return Ok(out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expopoly::ExpoPoly;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(4, v)
    }

    fn z() -> GroupSpec {
        GroupSpec::new(1, vec![]).unwrap()
    }

    fn expo(g: &GroupSpec, base: i64) -> Exponential {
        Exponential::new(g, vec![c(base)], vec![]).unwrap()
    }

    fn term(g: &GroupSpec, base: i64, poly: Vec<(Vec<u32>, i64)>) -> ExpoPoly {
        let p = VectorPolynomial::from_terms(
            g.free_rank(),
            1,
            poly.into_iter().map(|(e, v)| (e, vec![c(v)])).collect(),
        )
        .unwrap();
        ExpoPoly::from_terms(g.clone(), 1, 4, vec![(expo(g, base), p)]).unwrap()
    }

    #[test]
    fn single_exponential_needs_only_identity() {
        let g = z();
        let ops = isolating_operators(&g, 4, &[expo(&g, 2)], 3).unwrap();
        assert_eq!(ops, vec![DifferenceOperator::identity(&g, 4)]);
    }

    #[test]
    fn all_zero_degrees_need_only_the_zero_operator() {
        let g = z();
        let ms = [expo(&g, 1), expo(&g, 2)];
        let ops = isolating_operators(&g, 4, &ms, -2).unwrap();
        assert_eq!(ops, vec![DifferenceOperator::zero()]);
    }

    #[test]
    fn duplicate_exponentials_rejected() {
        let g = z();
        assert!(isolating_operators(&g, 4, &[expo(&g, 2), expo(&g, 2)], 1).is_err());
    }

    #[test]
    fn isolates_constant_plus_exponential() {
        // f = a + b 2^x with (a, b) = (5, -3)
        let g = z();
        let ms = [expo(&g, 1), expo(&g, 2)];
        let f = term(&g, 1, vec![(vec![0], 5)])
            .add(&term(&g, 2, vec![(vec![0], -3)]))
            .unwrap();
        let parts = isolate_components(&f, &ms, 0).unwrap();
        assert_eq!(parts[0], term(&g, 1, vec![(vec![0], 5)]));
        assert_eq!(parts[1], term(&g, 2, vec![(vec![0], -3)]));
    }

    #[test]
    fn isolates_linear_plus_exponential() {
        // f = x + 2^x, list {1^x, 2^x}, total degree 1
        let g = z();
        let ms = [expo(&g, 1), expo(&g, 2)];
        let f = term(&g, 1, vec![(vec![1], 1)])
            .add(&term(&g, 2, vec![(vec![0], 1)]))
            .unwrap();
        let parts = isolate_components(&f, &ms, 1).unwrap();
        assert_eq!(parts[0], term(&g, 1, vec![(vec![1], 1)]));
        assert_eq!(parts[1], term(&g, 2, vec![(vec![0], 1)]));
    }

    #[test]
    fn solve_route_matches_operator_route() {
        let g = z();
        let ms = [expo(&g, 2), expo(&g, 3)];
        // x*2^x + 3^x
        let f = term(&g, 2, vec![(vec![1], 1)])
            .add(&term(&g, 3, vec![(vec![0], 1)]))
            .unwrap();
        let by_ops = isolate_components(&f, &ms, 1).unwrap();
        let oracle = FunctionOracle::from_expo_poly(&f);
        let by_solve = solve_components(&oracle, &ms, 1).unwrap();
        assert_eq!(by_ops, by_solve);
        assert_eq!(by_solve[0], term(&g, 2, vec![(vec![1], 1)]));
        assert_eq!(by_solve[1], term(&g, 3, vec![(vec![0], 1)]));
    }

    #[test]
    fn solve_route_handles_zero() {
        let g = z();
        let ms = [expo(&g, 2), expo(&g, 3)];
        let zero = ExpoPoly::zero(g.clone(), 1, 4);
        let oracle = FunctionOracle::from_expo_poly(&zero);
        let parts = solve_components(&oracle, &ms, 2).unwrap();
        assert!(parts.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn oracle_operator_route_small_instance() {
        let g = z();
        let ms = [expo(&g, 1), expo(&g, 2)];
        let f = term(&g, 1, vec![(vec![1], 2), (vec![0], -1)])
            .add(&term(&g, 2, vec![(vec![0], 3)]))
            .unwrap();
        let oracle = FunctionOracle::from_expo_poly(&f);
        let parts = isolate_components_oracle(&oracle, &ms, 1).unwrap();
        assert_eq!(parts[0], term(&g, 1, vec![(vec![1], 2), (vec![0], -1)]));
        assert_eq!(parts[1], term(&g, 2, vec![(vec![0], 3)]));
    }
}
