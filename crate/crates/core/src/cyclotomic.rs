//! Exact scalars in the cyclotomic field Q(zeta_N).
//!
//! Every scalar in this crate — coefficients, exponential generator values,
//! functional entries — is a `Cyclotomic`: a vector of `phi(N)` rationals
//! representing `sum coeffs[j] * zeta_N^j` in the reduced basis
//! `{1, zeta, ..., zeta^(phi(N)-1)}` modulo the N-th cyclotomic polynomial.
//! The representation is canonical, so equality of values is equality of
//! coefficient vectors, which is what makes canonical forms and exact rank
//! computations downstream decidable.
//!
//! Arithmetic is a field: the N-th cyclotomic polynomial is irreducible over
//! Q, so every nonzero element has an inverse (computed by the extended
//! Euclidean algorithm on polynomial representatives).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Euler totient of `n`.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

fn mobius(n: u64) -> i8 {
    let mut n = n;
    let mut count = 0u32;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            count += 1;
        }
        p += 1;
    }
    if n > 1 {
        count += 1;
    }
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

// Integer polynomial helpers used only to build cyclotomic polynomials.

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    out
}

/// Exact division of integer polynomials; panics if the division is not exact.
/// Only called with divisors that are products of `x^m - 1`, whose leading
/// coefficient is 1.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for qi in (0..=qd).rev() {
        let c = rem[qi + dd].clone();
        if !c.is_zero() {
            quot[qi] = c.clone();
            for (j, dj) in den.iter().enumerate() {
                rem[qi + j] -= &c * dj;
            }
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// Coefficients of the N-th cyclotomic polynomial, computed from the Mobius
/// product `prod_(d|N) (x^(N/d) - 1)^mu(d)`.
fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    if n == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    let mut num: Vec<BigInt> = vec![BigInt::one()];
    let mut den: Vec<BigInt> = vec![BigInt::one()];
    for d in divisors(n) {
        let m = (n / d) as usize;
        // x^m - 1
        let mut f = vec![BigInt::zero(); m + 1];
        f[0] = -BigInt::one();
        f[m] = BigInt::one();
        match mobius(d) {
            1 => num = int_poly_mul(&num, &f),
            -1 => den = int_poly_mul(&den, &f),
            _ => {}
        }
    }
    let out = int_poly_div_exact(&num, &den);
    debug_assert_eq!(out.len() as u64 - 1, euler_phi(n));
    out
}

/// Shared per-order data: the minimal polynomial and a full table of reduced
/// powers of the primitive root, `zeta^e` for `e = 0..N`.
struct FieldTable {
    order: u64,
    phi: usize,
    /// Monic minimal polynomial coefficients, length `phi + 1`.
    min_poly: Vec<BigRational>,
    /// `zeta_powers[e]` is the reduced coefficient vector of `zeta^e`, `e < N`.
    zeta_powers: Vec<Vec<BigRational>>,
}

impl FieldTable {
    fn build(order: u64) -> FieldTable {
        assert!(order >= 1, "cyclotomic order must be positive");
        let ints = cyclotomic_polynomial(order);
        let min_poly: Vec<BigRational> = ints
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let phi = min_poly.len() - 1;
        let mut zeta_powers = Vec::with_capacity(order as usize);
        let mut cur = vec![BigRational::zero(); phi];
        cur[0] = BigRational::one();
        zeta_powers.push(cur.clone());
        for _ in 1..order {
            // multiply by zeta: shift up, reduce the overflow coefficient
            let top = cur[phi - 1].clone();
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1].clone();
            }
            cur[0] = BigRational::zero();
            if !top.is_zero() {
                for j in 0..phi {
                    cur[j] -= &top * &min_poly[j];
                }
            }
            zeta_powers.push(cur.clone());
        }
        FieldTable {
            order,
            phi,
            min_poly,
            zeta_powers,
        }
    }

    /// Reduce a representative of degree < 2*phi - 1 in place to length phi.
    fn reduce(&self, buf: &mut Vec<BigRational>) {
        for p in (self.phi..buf.len()).rev() {
            if !buf[p].is_zero() {
                let c = std::mem::replace(&mut buf[p], BigRational::zero());
                for j in 0..self.phi {
                    buf[p - self.phi + j] -= &c * &self.min_poly[j];
                }
            }
        }
        buf.truncate(self.phi);
    }
}

static TABLES: Lazy<std::sync::RwLock<HashMap<u64, Arc<FieldTable>>>> =
    Lazy::new(|| std::sync::RwLock::new(HashMap::new()));

fn table(order: u64) -> Arc<FieldTable> {
    if let Some(t) = TABLES.read().unwrap().get(&order) {
        return t.clone();
    }
    let t = Arc::new(FieldTable::build(order));
    TABLES.write().unwrap().entry(order).or_insert(t).clone()
}

/// An exact element of Q(zeta_N), stored as its unique reduced coefficient
/// vector of length phi(N).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Cyclotomic {
        let phi = table(order).phi;
        Cyclotomic {
            order,
            coeffs: vec![BigRational::zero(); phi],
        }
    }

    pub fn one(order: u64) -> Cyclotomic {
        Cyclotomic::from_int(order, 1)
    }

    pub fn from_int(order: u64, v: i64) -> Cyclotomic {
        Cyclotomic::from_ratio(order, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(order: u64, q: BigRational) -> Cyclotomic {
        let mut c = Cyclotomic::zero(order);
        c.coeffs[0] = q;
        c
    }

    /// Build from arbitrary-length coefficients on powers of zeta, reducing.
    pub fn from_coeffs(order: u64, coeffs: Vec<BigRational>) -> Cyclotomic {
        let t = table(order);
        let mut buf = coeffs;
        if buf.len() < t.phi {
            buf.resize(t.phi, BigRational::zero());
        }
        if buf.len() > t.phi {
            // fold any explicit powers >= N first
            if buf.len() > t.order as usize {
                let mut folded = vec![BigRational::zero(); t.order as usize];
                for (e, c) in buf.into_iter().enumerate() {
                    folded[e % t.order as usize] += c;
                }
                buf = folded;
            }
            t.reduce(&mut buf);
        }
        Cyclotomic { order, coeffs: buf }
    }

    /// The k-th power of the primitive n-th root of unity, embedded via
    /// `zeta_n = zeta_N^(N/n)`. Requires `n | N`.
    pub fn root_of_unity(order: u64, n: u64, k: i64) -> Result<Cyclotomic> {
        if n == 0 || order % n != 0 {
            return Err(Error::UnsupportedEmbedding { n, order });
        }
        let t = table(order);
        let k = k.rem_euclid(n as i64) as u64;
        let e = (k * (order / n)) % order;
        Ok(Cyclotomic {
            order,
            coeffs: t.zeta_powers[e as usize].clone(),
        })
    }

    /// The imaginary unit; the ambient order is always a multiple of 4.
    pub fn imaginary_unit(order: u64) -> Result<Cyclotomic> {
        Cyclotomic::root_of_unity(order, 4, 1)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Some(q) when the value lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same_order(&self, other: &Cyclotomic) {
        assert_eq!(
            self.order, other.order,
            "cyclotomic order mismatch: {} vs {} (promote first)",
            self.order, other.order
        );
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        self.assert_same_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.assert_same_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        self.assert_same_order(other);
        let t = table(self.order);
        let mut buf = vec![BigRational::zero(); 2 * t.phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    buf[i + j] += a * b;
                }
            }
        }
        t.reduce(&mut buf);
        Cyclotomic {
            order: self.order,
            coeffs: buf,
        }
    }

    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = table(self.order);
        // Extended Euclid on (self, min_poly) over Q[x]; the minimal polynomial
        // is irreducible, so the gcd is a nonzero constant.
        let (g, u) = poly_ext_gcd(&self.coeffs, &t.min_poly);
        debug_assert_eq!(g.len(), 1);
        let ginv = BigRational::one() / g[0].clone();
        let mut buf: Vec<BigRational> = u.iter().map(|c| c * &ginv).collect();
        if buf.len() > t.phi {
            t.reduce(&mut buf);
        } else {
            buf.resize(t.phi, BigRational::zero());
        }
        Ok(Cyclotomic {
            order: self.order,
            coeffs: buf,
        })
    }

    pub fn div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Cyclotomic> {
        if e == 0 {
            return Ok(Cyclotomic::one(self.order));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Cyclotomic::one(self.order);
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Image under the field automorphism `zeta -> zeta^a`, `gcd(a, N) = 1`.
    pub fn galois(&self, a: u64) -> Result<Cyclotomic> {
        if num::integer::gcd(a, self.order) != 1 {
            return Err(Error::Invalid(format!(
                "{a} is not coprime to the cyclotomic order {}",
                self.order
            )));
        }
        let t = table(self.order);
        let mut out = Cyclotomic::zero(self.order);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((j as u64) * a) % self.order;
            for (pos, zc) in t.zeta_powers[e as usize].iter().enumerate() {
                out.coeffs[pos] += c * zc;
            }
        }
        Ok(out)
    }

    /// Complex conjugate (the automorphism `zeta -> zeta^(N-1)`).
    pub fn conj(&self) -> Cyclotomic {
        if self.order == 1 {
            return self.clone();
        }
        self.galois(self.order - 1).expect("N-1 is coprime to N")
    }

    /// Re-express in Q(zeta_M) for a multiple M of the current order.
    pub fn promote(&self, new_order: u64) -> Result<Cyclotomic> {
        if new_order == self.order {
            return Ok(self.clone());
        }
        if new_order % self.order != 0 {
            return Err(Error::UnsupportedEmbedding {
                n: self.order,
                order: new_order,
            });
        }
        let step = (new_order / self.order) as usize;
        let t = table(new_order);
        let mut out = Cyclotomic::zero(new_order);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j * step) % new_order as usize;
            for (pos, zc) in t.zeta_powers[e].iter().enumerate() {
                out.coeffs[pos] += c * zc;
            }
        }
        Ok(out)
    }

    /// Evaluate numerically as a complex double pair (re, im).
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = ratio_to_f64(c);
            let angle = 2.0 * std::f64::consts::PI * (j as f64) / (self.order as f64);
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }
}

pub fn ratio_to_f64(q: &BigRational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Extended gcd of polynomials over Q. Returns `(g, u)` with
/// `u*a + v*b = g` for some v that the caller does not need.
fn poly_ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
            p.pop();
        }
        p
    }
    fn is_zero_poly(p: &[BigRational]) -> bool {
        p.iter().all(|c| c.is_zero())
    }
    fn poly_sub_scaled(a: &mut Vec<BigRational>, b: &[BigRational], c: &BigRational, shift: usize) {
        if a.len() < b.len() + shift {
            a.resize(b.len() + shift, BigRational::zero());
        }
        for (j, bc) in b.iter().enumerate() {
            a[j + shift] -= c * bc;
        }
    }
    // invariant: r0 = u0*a (mod b), r1 = u1*a (mod b)
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut u0: Vec<BigRational> = vec![BigRational::one()];
    let mut u1: Vec<BigRational> = vec![BigRational::zero()];
    while !is_zero_poly(&r1) {
        // divide r0 by r1
        let mut rem = r0.clone();
        let mut q: Vec<BigRational> = vec![BigRational::zero(); rem.len().saturating_sub(r1.len()) + 1];
        let dlead = r1.last().unwrap().clone();
        while rem.len() >= r1.len() && !is_zero_poly(&rem) {
            let shift = rem.len() - r1.len();
            let c = rem.last().unwrap() / &dlead;
            q[shift] = c.clone();
            poly_sub_scaled(&mut rem, &r1, &c, shift);
            rem = trim(rem);
            if rem.len() == 1 && rem[0].is_zero() {
                break;
            }
            if rem.len() < r1.len() {
                break;
            }
        }
        // u_new = u0 - q*u1
        let mut unew = u0.clone();
        for (i, qc) in q.iter().enumerate() {
            if !qc.is_zero() {
                poly_sub_scaled(&mut unew, &u1, qc, i);
            }
        }
        r0 = r1;
        r1 = trim(rem);
        u0 = u1;
        u1 = trim(unew);
        if is_zero_poly(&r1) {
            break;
        }
    }
    (r0, u0)
}

// Coefficient-wise ordering: not a numeric order, only a stable total order
// used for canonical sorting of terms and serialization.
impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Cyclotomic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cyclotomic {
    fn cmp(&self, other: &Cyclotomic) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z{}^{j}", self.order)?;
            } else {
                write!(f, "{c}*z{}^{j}", self.order)?;
            }
        }
        Ok(())
    }
}

pub fn format_ratio(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Invalid(format!("bad rational literal {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

#[derive(Serialize, Deserialize)]
struct CycWire {
    order: u64,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        CycWire {
            order: self.order,
            coeffs: self.coeffs.iter().map(format_ratio).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let wire = CycWire::deserialize(de)?;
        let phi = euler_phi(wire.order) as usize;
        if wire.coeffs.len() != phi {
            return Err(D::Error::custom(format!(
                "expected {phi} coefficients for order {}, got {}",
                wire.order,
                wire.coeffs.len()
            )));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| parse_ratio(s).map_err(|e| D::Error::custom(e.to_string())))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Cyclotomic::from_coeffs(wire.order, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_and_minimal_polynomials() {
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(20), 8);
        // x^4 - x^2 + 1 for order 12
        let p = cyclotomic_polynomial(12);
        let expect: Vec<i64> = vec![1, 0, -1, 0, 1];
        assert_eq!(p, expect.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn gaussian_identities() {
        let i = Cyclotomic::imaginary_unit(4).unwrap();
        let one = Cyclotomic::one(4);
        // (1+i)(1-i) = 2
        let a = one.add(&i);
        let b = one.sub(&i);
        assert_eq!(a.mul(&b), Cyclotomic::from_int(4, 2));
        // i^2 = -1
        assert_eq!(i.mul(&i), Cyclotomic::from_int(4, -1));
    }

    #[test]
    fn zeta12_fourth_power_reduces() {
        // zeta^4 = zeta^2 - 1 in Q(zeta_12): remainder of x^4 by x^4 - x^2 + 1.
        let z = Cyclotomic::root_of_unity(12, 12, 1).unwrap();
        let z4 = z.pow(4).unwrap();
        let z2 = z.pow(2).unwrap();
        assert_eq!(z4, z2.sub(&Cyclotomic::one(12)));
        // float cross-check
        let (re, im) = z4.to_complex();
        let exact = (
            (2.0 * std::f64::consts::PI / 3.0).cos(),
            (2.0 * std::f64::consts::PI / 3.0).sin(),
        );
        assert!((re - exact.0).abs() < 1e-12 && (im - exact.1).abs() < 1e-12);
    }

    #[test]
    fn embedded_roots_of_unity() {
        let m1 = Cyclotomic::root_of_unity(4, 2, 1).unwrap();
        assert_eq!(m1, Cyclotomic::from_int(4, -1));
        let z63 = Cyclotomic::root_of_unity(12, 6, 3).unwrap();
        assert_eq!(z63, Cyclotomic::from_int(12, -1));
        let z5 = Cyclotomic::root_of_unity(20, 5, 2).unwrap();
        assert!(z5.pow(5).unwrap().is_one());
        assert!(Cyclotomic::root_of_unity(4, 3, 1).is_err());
    }

    #[test]
    fn primitivity() {
        for n in [4u64, 12, 20] {
            let z = Cyclotomic::root_of_unity(n, n, 1).unwrap();
            assert!(z.pow(n as i64).unwrap().is_one());
            for k in 1..n {
                assert!(!z.pow(k as i64).unwrap().is_one(), "zeta_{n}^{k} == 1");
            }
        }
    }

    #[test]
    fn inverse_and_division() {
        let z = Cyclotomic::root_of_unity(12, 12, 1).unwrap();
        let v = z.pow(3).unwrap().add(&Cyclotomic::from_int(12, 2));
        let vinv = v.inv().unwrap();
        assert!(v.mul(&vinv).is_one());
        assert!(Cyclotomic::zero(12).inv().is_err());
    }

    #[test]
    fn float_bridge() {
        let two = Cyclotomic::from_int(4, 2);
        assert_eq!(two.to_complex(), (2.0, 0.0));
        let i = Cyclotomic::imaginary_unit(4).unwrap();
        let (re, im) = i.to_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
        let v = Cyclotomic::one(12)
            .add(&Cyclotomic::root_of_unity(12, 3, 1).unwrap());
        let (re, im) = v.to_complex();
        assert!((re - 0.5).abs() < 1e-9);
        assert!((im - 0.866_025_403_784_438_6).abs() < 1e-9);
    }

    #[test]
    fn promotion_is_injective_on_values() {
        let z6 = Cyclotomic::root_of_unity(12, 6, 1).unwrap();
        let p = z6.promote(24).unwrap();
        assert_eq!(p, Cyclotomic::root_of_unity(24, 6, 1).unwrap());
        assert!(p.pow(6).unwrap().is_one());
    }

    #[test]
    fn conjugation_fixes_rationals_and_inverts_roots() {
        let q = Cyclotomic::from_ratio(12, BigRational::new(BigInt::from(3), BigInt::from(7)));
        assert_eq!(q.conj(), q);
        let z = Cyclotomic::root_of_unity(12, 12, 5).unwrap();
        assert!(z.mul(&z.conj()).is_one());
    }

    #[test]
    fn rational_string_round_trip() {
        for s in ["0", "5", "-3", "7/2", "-22/7"] {
            let q = parse_ratio(s).unwrap();
            assert_eq!(format_ratio(&q), s);
        }
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
    }
}
