//! Floating-point probe of spectral-analysis failure on the integers with
//! infinite-dimensional values: the function enumerating a factorially
//! growing basic sequence.
//!
//! The instance enumerates Z as `g_1 = 0, g_2 = 1, g_3 = -1, g_4 = 2, ...`
//! (so `g_(2n) = n`) and sets `f(g_n) = n! * u_n` in a depth-truncated
//! sequence space; `u_n` truncates to zero beyond the depth, and `f` is
//! zero-extended outside the enumerated window. Least-squares distances
//! from `x -> lambda^x * e` to the span of sampled translates of `f` are the
//! numeric shadow of non-membership; they are probes, not proofs.
//!
//! The least-squares backend is a rank-revealing SVD with a singular-value
//! condition estimate.

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type C64 = Complex<f64>;

pub const MAX_DEPTH: u32 = 8;

/// The enumerated instance: depth-truncated factorial basis data on a
/// symmetric window of Z.
#[derive(Clone, Debug)]
pub struct CounterexampleInstance {
    depth: u32,
    window: u32,
    /// `table[n - 1]` is `f(g_n)` as a dense vector in `R^depth`.
    table: Vec<Vec<f64>>,
}

/// Enumeration of Z with `g_1 = 0`, `g_(2n) = n`, `g_(2n+1) = -n`.
pub fn enumeration_point(n: u32) -> i64 {
    assert!(n >= 1);
    if n == 1 {
        0
    } else if n % 2 == 0 {
        (n / 2) as i64
    } else {
        -((n / 2) as i64)
    }
}

fn enumeration_index(x: i64) -> u32 {
    if x == 0 {
        1
    } else if x > 0 {
        2 * x as u32
    } else {
        2 * (-x) as u32 + 1
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

impl CounterexampleInstance {
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    /// `f(x)` with zero extension outside the enumerated window.
    pub fn value_at(&self, x: i64) -> Vec<f64> {
        let n = enumeration_index(x);
        if n <= self.window {
            self.table[(n - 1) as usize].clone()
        } else {
            vec![0.0; self.depth as usize]
        }
    }
}

/// Build the instance: `f(g_n) = n! * u_n` for `n <= depth`, zero beyond the
/// depth truncation. Depth is capped at 8 so the largest stored magnitude is
/// 8! = 40320 and every solve stays well inside double range.
pub fn build_counterexample(depth: u32, window: u32) -> Result<CounterexampleInstance> {
    if !(2..=MAX_DEPTH).contains(&depth) {
        return Err(Error::Invalid(format!(
            "depth must lie in 2..={MAX_DEPTH}, got {depth}"
        )));
    }
    if window < depth {
        return Err(Error::Invalid(format!(
            "window {window} must be at least the depth {depth}"
        )));
    }
    let mut table = Vec::with_capacity(window as usize);
    for n in 1..=window {
        let mut v = vec![0.0; depth as usize];
        if n <= depth {
            v[(n - 1) as usize] = factorial(n);
        }
        table.push(v);
    }
    Ok(CounterexampleInstance {
        depth,
        window,
        table,
    })
}

/// One least-squares solve: distance from the sampled target to the span of
/// sampled translates, plus the singular-value condition estimate.
#[derive(Clone, Copy, Debug)]
pub struct SolveOutcome {
    pub residual: f64,
    pub condition: f64,
}

fn sample_points(num_points: u32) -> Vec<i64> {
    (1..=num_points).map(enumeration_point).collect()
}

/// Stack the translates `T_(g_j) f`, `j = 1..num_translates`, sampled at the
/// first `num_points` enumeration points, into a real-block complex matrix.
fn translate_matrix(
    inst: &CounterexampleInstance,
    num_translates: u32,
    num_points: u32,
) -> DMatrix<C64> {
    let depth = inst.depth as usize;
    let points = sample_points(num_points);
    let rows = points.len() * depth;
    DMatrix::from_fn(rows, num_translates as usize, |row, col| {
        let point = points[row / depth];
        let comp = row % depth;
        let shift = enumeration_point(col as u32 + 1);
        C64::new(inst.value_at(point + shift)[comp], 0.0)
    })
}

fn target_vector(inst: &CounterexampleInstance, lambda: C64, e: &[f64], num_points: u32) -> DVector<C64> {
    let depth = inst.depth as usize;
    let points = sample_points(num_points);
    DVector::from_fn(points.len() * depth, |row, _| {
        let point = points[row / depth];
        let comp = row % depth;
        lambda.powi(point as i32) * e[comp]
    })
}

fn least_squares(a: &DMatrix<C64>, b: &DVector<C64>) -> SolveOutcome {
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let smin = svd.singular_values.iter().cloned().fold(f64::MAX, f64::min);
    let condition = if smin <= 0.0 || smax == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    };
    let x = svd
        .solve(b, smax.max(1.0) * 1e-13)
        .expect("SVD solve with both factors requested cannot fail");
    let residual = (a * x - b).norm();
    SolveOutcome {
        residual,
        condition,
    }
}

/// Distance from `x -> lambda^x * e` (sampled) to the span of the first
/// `num_translates` sampled translates of `f`.
pub fn residual(
    inst: &CounterexampleInstance,
    lambda: C64,
    e: &[f64],
    num_translates: u32,
    num_points: u32,
) -> Result<SolveOutcome> {
    if lambda.norm() == 0.0 {
        return Err(Error::Invalid("exponential base must be nonzero".into()));
    }
    if e.len() != inst.depth as usize {
        return Err(Error::DimensionMismatch(format!(
            "target vector has length {}, depth is {}",
            e.len(),
            inst.depth
        )));
    }
    if num_translates == 0 || num_points == 0 || num_points > inst.window {
        return Err(Error::Invalid(
            "translate and point counts must be positive and within the window".into(),
        ));
    }
    let a = translate_matrix(inst, num_translates, num_points);
    let b = target_vector(inst, lambda, e, num_points);
    Ok(least_squares(&a, &b))
}

/// Control solve: the target is itself a sampled translate of `f`, so the
/// residual must vanish up to roundoff.
pub fn membership_control(
    inst: &CounterexampleInstance,
    translate_index: u32,
    num_translates: u32,
    num_points: u32,
) -> Result<SolveOutcome> {
    if translate_index == 0 || translate_index > num_translates {
        return Err(Error::Invalid(
            "control translate must be among the sampled translates".into(),
        ));
    }
    let a = translate_matrix(inst, num_translates, num_points);
    let b = a.column((translate_index - 1) as usize).into_owned();
    Ok(least_squares(&a, &b))
}

/// Residuals for every translate count `1..=max_translates`. Residuals need
/// not be monotone: the subspace grows but the sampled window shifts with it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualReport {
    pub lambda: (f64, f64),
    pub e: Vec<f64>,
    pub windows: Vec<u32>,
    pub residuals: Vec<f64>,
    pub conditioning: Vec<f64>,
}

pub fn residual_sweep(
    inst: &CounterexampleInstance,
    lambda: C64,
    e: &[f64],
    max_translates: u32,
    num_points: u32,
) -> Result<ResidualReport> {
    let mut windows = Vec::new();
    let mut residuals = Vec::new();
    let mut conditioning = Vec::new();
    for translates in 1..=max_translates {
        let outcome = residual(inst, lambda, e, translates, num_points)?;
        windows.push(translates);
        residuals.push(outcome.residual);
        conditioning.push(outcome.condition);
    }
    Ok(ResidualReport {
        lambda: (lambda.re, lambda.im),
        e: e.to_vec(),
        windows,
        residuals,
        conditioning,
    })
}

/// Fit coefficients against the forced target `lambda^x * e` and compare the
/// products `c_i * lambda^(g_i)` across translates. Exact membership would
/// force all products equal; the factorial norms make the spread blow up, so
/// the ratio `max |v_i| / min |v_i|` is a scalar witness of non-membership.
pub fn coefficient_spread(
    inst: &CounterexampleInstance,
    lambda: C64,
    e: &[f64],
    num_translates: u32,
    num_points: u32,
) -> Result<f64> {
    if e.len() != inst.depth as usize {
        return Err(Error::DimensionMismatch(
            "target vector length differs from depth".into(),
        ));
    }
    let a = translate_matrix(inst, num_translates, num_points);
    let b = target_vector(inst, lambda, e, num_points);
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let coeffs = svd
        .solve(&b, smax.max(1.0) * 1e-13)
        .expect("SVD solve with both factors requested cannot fail");
    let mut max_v = 0.0f64;
    let mut min_v = f64::MAX;
    for (i, c) in coeffs.iter().enumerate() {
        let g_i = enumeration_point(i as u32 + 1);
        let v = (c * lambda.powi(g_i as i32)).norm();
        max_v = max_v.max(v);
        min_v = min_v.min(v);
    }
    if min_v <= f64::MIN_POSITIVE {
        return Ok(f64::INFINITY);
    }
    Ok(max_v / min_v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_layout() {
        assert_eq!(enumeration_point(1), 0);
        assert_eq!(enumeration_point(2), 1);
        assert_eq!(enumeration_point(3), -1);
        assert_eq!(enumeration_point(4), 2);
        for n in 1..50 {
            assert_eq!(enumeration_index(enumeration_point(n)), n);
        }
    }

    #[test]
    fn factorial_norms() {
        let inst = build_counterexample(3, 8).unwrap();
        let norm = |x: i64| {
            inst.value_at(x)
                .iter()
                .map(|v| v * v)
                .sum::<f64>()
                .sqrt()
        };
        assert_eq!(norm(enumeration_point(1)), 1.0);
        assert_eq!(norm(enumeration_point(2)), 2.0);
        assert_eq!(norm(enumeration_point(3)), 6.0);
        // pairwise orthogonal supports
        let a = inst.value_at(enumeration_point(1));
        let b = inst.value_at(enumeration_point(2));
        assert_eq!(a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>(), 0.0);
    }

    #[test]
    fn depth_guard() {
        assert!(build_counterexample(9, 20).is_err());
        assert!(build_counterexample(1, 20).is_err());
        assert!(build_counterexample(5, 3).is_err());
    }

    #[test]
    fn membership_control_vanishes() {
        let inst = build_counterexample(5, 12).unwrap();
        for j in 1..=4 {
            let out = membership_control(&inst, j, 6, 10).unwrap();
            assert!(out.residual < 1e-9, "translate {j}: {}", out.residual);
        }
    }

    #[test]
    fn unreachable_direction_keeps_full_norm() {
        // depth 5 but target supported where no sampled translate reaches
        let inst = build_counterexample(5, 12).unwrap();
        // target constant in the 5th coordinate with lambda = 1; translates
        // of f only populate coordinates reached by sampled points
        let e = [0.0, 0.0, 0.0, 0.0, 1.0];
        let out = residual(&inst, C64::new(1.0, 0.0), &e, 2, 2).unwrap();
        let b = target_vector(&inst, C64::new(1.0, 0.0), &e, 2);
        // translates at points {0, 1} with shifts {0, 1} never hit u_5
        assert!((out.residual - b.norm()).abs() < 1e-12);
    }

    #[test]
    fn baseline_residual_is_bounded_away_from_zero() {
        let inst = build_counterexample(5, 12).unwrap();
        let e = [1.0, 0.0, 0.0, 0.0, 0.0];
        let out = residual(&inst, C64::new(1.0, 0.0), &e, 6, 10).unwrap();
        assert!(out.residual > 0.1, "residual {}", out.residual);
    }

    #[test]
    fn more_points_never_decrease_the_residual() {
        let inst = build_counterexample(5, 20).unwrap();
        let e = [1.0, 0.0, 0.0, 0.0, 0.0];
        let mut last = 0.0;
        for points in [4u32, 6, 8, 10, 12] {
            let out = residual(&inst, C64::new(2.0, 0.0), &e, 3, points).unwrap();
            assert!(out.residual >= last - 1e-12);
            last = out.residual;
        }
    }
}
