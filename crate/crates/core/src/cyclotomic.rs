//! Exact arithmetic in `Q(zeta_m)`.
//!
//! An element of conductor `m` is stored densely as its coefficients on
//! `1, z, ..., z^{phi(m)-1}` (`z = zeta_m`) after reduction modulo the
//! cyclotomic polynomial, so equal elements have equal coefficient vectors.
//! Roots of unity are compatible: `zeta_{mn}^n = zeta_m`. Operations on
//! elements of different conductors first raise both to the lcm.
//!
//! Reduction goes through a per-conductor table holding `z^e mod Phi_m` for
//! every `phi(m) <= e < m`; products are first accumulated modulo `z^m - 1`
//! and then folded down with that table.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::json::bigint_value;
use crate::numtheory::{divisors, gcd, lcm, modulo};
use crate::scalar::{FieldScalar, Scalar};

type Cache<V> = OnceLock<RwLock<HashMap<u64, Arc<V>>>>;

static PHI_POLYS: Cache<Vec<i64>> = OnceLock::new();
static TABLES: Cache<ReductionTable> = OnceLock::new();

fn cached<V>(cache: &'static Cache<V>, key: u64, build: impl FnOnce() -> V) -> Arc<V> {
    let map = cache.get_or_init(Default::default);
    if let Some(v) = map.read().expect("cache poisoned").get(&key) {
        return Arc::clone(v);
    }
    // Built outside the lock; concurrent builders produce identical values
    // and the first insertion wins.
    let value = Arc::new(build());
    let mut guard = map.write().expect("cache poisoned");
    Arc::clone(guard.entry(key).or_insert(value))
}

/// Coefficients (constant term first) of the `m`-th cyclotomic polynomial,
/// obtained by dividing `x^m - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<i64>> {
    assert!(m >= 1, "conductor must be positive");
    cached(&PHI_POLYS, m, || {
        let mut poly = vec![0i64; m as usize + 1];
        poly[0] = -1;
        poly[m as usize] = 1;
        for d in divisors(m) {
            if d < m {
                poly = exact_monic_div(&poly, &cyclotomic_polynomial(d));
            }
        }
        poly
    })
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, &b) in den.iter().enumerate() {
                rem[k + j] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "cyclotomic division not exact");
    quot
}

struct ReductionTable {
    degree: usize,
    /// `high_rows[e - degree]` = sparse `z^e mod Phi_m`.
    high_rows: Vec<Vec<(u32, i64)>>,
}

fn reduction_table(m: u64) -> Arc<ReductionTable> {
    cached(&TABLES, m, || {
        let phi = cyclotomic_polynomial(m);
        let degree = phi.len() - 1;
        let sparse =
            |v: &[i64]| v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j as u32, c)).collect::<Vec<_>>();
        let mut high_rows = Vec::with_capacity(m as usize - degree);
        let mut cur: Vec<i64> = phi[..degree].iter().map(|c| -c).collect();
        for e in degree..m as usize {
            if e > degree {
                let top = cur[degree - 1];
                cur.rotate_right(1);
                cur[0] = 0;
                if top != 0 {
                    for (c, &p) in cur.iter_mut().zip(phi.iter()) {
                        *c = c.checked_sub(top * p).expect("reduction table overflow");
                    }
                }
            }
            high_rows.push(sparse(&cur));
        }
        ReductionTable { degree, high_rows }
    })
}

/// Euler's phi of the conductor, i.e. the dimension over `Q`.
pub fn field_degree(m: u64) -> usize {
    reduction_table(m).degree
}

/// Reduces a coefficient vector given modulo `z^m - 1` (length `m`).
fn reduce_wrapped<T: Scalar>(m: u64, mut buf: Vec<T>) -> Vec<T> {
    debug_assert_eq!(buf.len(), m as usize);
    let table = reduction_table(m);
    let high = buf.split_off(table.degree);
    for (row, c) in table.high_rows.iter().zip(high) {
        if c.is_zero() {
            continue;
        }
        for &(j, r) in row {
            buf[j as usize] += c.mul_i64(r);
        }
    }
    buf
}

#[derive(Clone, Debug)]
pub struct Cyclo<T> {
    conductor: u64,
    coeffs: Vec<T>,
}

impl<T: Scalar> Cyclo<T> {
    /// Element `sum_i coeffs[i] * zeta_m^i` for coefficient vectors of any
    /// length.
    pub fn from_power_coeffs(m: u64, coeffs: Vec<T>) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let mut buf = vec![T::zero(); m as usize];
        for (i, c) in coeffs.into_iter().enumerate() {
            buf[i % m as usize] += c;
        }
        Self { conductor: m, coeffs: reduce_wrapped(m, buf) }
    }

    /// Element `sum c * zeta_m^e` from `(e, c)` pairs; exponents may be
    /// negative.
    pub fn from_terms(m: u64, terms: impl IntoIterator<Item = (i64, T)>) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let mut buf = vec![T::zero(); m as usize];
        for (e, c) in terms {
            buf[modulo(e, m) as usize] += c;
        }
        Self { conductor: m, coeffs: reduce_wrapped(m, buf) }
    }

    pub fn constant(value: T) -> Self {
        Self { conductor: 1, coeffs: vec![value] }
    }

    pub fn from_i64(value: i64) -> Self {
        Self::constant(T::from_i64(value))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    /// `zeta_m^k`.
    pub fn root_of_unity(m: u64, k: i64) -> Self {
        Self::from_terms(m, [(k, T::one())])
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The constant coefficient; equals the element when it is rational.
    pub fn rational_part(&self) -> &T {
        &self.coeffs[0]
    }

    /// The same element written at conductor `target` (a multiple of the
    /// current conductor).
    pub fn raise_conductor(&self, target: u64) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.conductor) {
            return Err(Error::ConductorMismatch { from: self.conductor, to: target });
        }
        Ok(self.raised(target).into_owned())
    }

    fn raised(&self, target: u64) -> Cow<'_, Self> {
        if target == self.conductor {
            return Cow::Borrowed(self);
        }
        let step = (target / self.conductor) as usize;
        let mut buf = vec![T::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                buf[i * step] = c.clone();
            }
        }
        Cow::Owned(Self { conductor: target, coeffs: reduce_wrapped(target, buf) })
    }

    fn common<'a>(&'a self, other: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        let m = lcm(self.conductor, other.conductor);
        (self.raised(m), other.raised(m))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { conductor: self.conductor, coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// `self * zeta_m^k` at this element's conductor.
    pub fn mul_root_of_unity(&self, k: i64) -> Self {
        let m = self.conductor;
        let shift = modulo(k, m) as usize;
        let mut buf = vec![T::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                buf[(i + shift) % m as usize] = c.clone();
            }
        }
        Self { conductor: m, coeffs: reduce_wrapped(m, buf) }
    }

    /// The automorphism `zeta_m -> zeta_m^u`.
    pub fn galois_map(&self, u: i64) -> Result<Self> {
        let m = self.conductor;
        let u = modulo(u, m);
        if gcd(u, m) != 1 {
            return Err(Error::NotAUnit { value: u, modulus: m });
        }
        let mut buf = vec![T::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                buf[((i as u128 * u as u128) % m as u128) as usize] += c.clone();
            }
        }
        Ok(Self { conductor: m, coeffs: reduce_wrapped(m, buf) })
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Cyclo<U> {
        Cyclo { conductor: self.conductor, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// `[m, [[numerator, denominator], ...]]`.
    pub fn to_json(&self) -> Value {
        let pairs = self
            .coeffs
            .iter()
            .map(|c| {
                let (n, d) = c.to_fraction();
                Value::Array(vec![bigint_value(&n), bigint_value(&d)])
            })
            .collect();
        Value::Array(vec![Value::from(self.conductor), Value::Array(pairs)])
    }
}

impl<T: FieldScalar> Cyclo<T> {
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi: Vec<T> = cyclotomic_polynomial(self.conductor).iter().map(|&c| T::from_i64(c)).collect();
        let (g, s) = inverse_mod(trimmed(self.coeffs.clone()), phi);
        // g is a nonzero constant because Phi_m is irreducible
        debug_assert_eq!(g.len(), 1);
        let inv = T::one() / g[0].clone();
        Ok(Self::from_power_coeffs(self.conductor, s.into_iter().map(|c| c * inv.clone()).collect()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// `sum x * y` over the pairs, accumulated over a common denominator so
    /// that only the final coefficients are reduced to lowest terms.
    pub fn sum_of_products(pairs: &[(&Self, &Self)]) -> Self {
        let m = pairs.iter().fold(1, |acc, (x, y)| lcm(acc, lcm(x.conductor, y.conductor)));
        let cleared = |x: &Self| -> (Vec<BigInt>, BigInt) {
            let x = x.raised(m);
            let fracs: Vec<_> = x.coeffs.iter().map(Scalar::to_fraction).collect();
            let den = fracs.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
            let nums = fracs.into_iter().map(|(n, d)| n * (&den / d)).collect();
            (nums, den)
        };
        let terms: Vec<_> = pairs.iter().map(|(x, y)| (cleared(x), cleared(y))).collect();
        let den = terms.iter().fold(BigInt::one(), |acc, ((_, dx), (_, dy))| acc.lcm(&(dx * dy)));
        let size = m as usize;
        let mut buf = vec![BigInt::zero(); size];
        for ((xs, dx), (ys, dy)) in &terms {
            let factor = &den / (dx * dy);
            for (i, a) in xs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                let a = a * &factor;
                for (j, b) in ys.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                    buf[(i + j) % size] += &a * b;
                }
            }
        }
        let coeffs = reduce_wrapped(m, buf).into_iter().map(|n| T::from_big_fraction(n, den.clone())).collect();
        Self { conductor: m, coeffs }
    }
}

fn trimmed<T: Scalar>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem<T: FieldScalar>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (Vec::new(), trimmed(rem));
    }
    let lead_inv = T::one() / b.last().expect("nonzero divisor").clone();
    let mut quot = vec![T::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + b.len() - 1].clone() * lead_inv.clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= c.clone() * bj.clone();
        }
        quot[k] = c;
    }
    (trimmed(quot), trimmed(rem))
}

fn poly_mul_sub<T: FieldScalar>(t0: &[T], q: &[T], t1: &[T]) -> Vec<T> {
    let n = t0.len().max(q.len() + t1.len());
    let mut out = vec![T::zero(); n];
    for (i, c) in t0.iter().enumerate() {
        out[i] += c.clone();
    }
    for (i, a) in q.iter().enumerate() {
        for (j, b) in t1.iter().enumerate() {
            out[i + j] -= a.clone() * b.clone();
        }
    }
    trimmed(out)
}

/// Extended Euclid: returns `(g, s)` with `s * a = g (mod modulus)`.
fn inverse_mod<T: FieldScalar>(a: Vec<T>, modulus: Vec<T>) -> (Vec<T>, Vec<T>) {
    let (mut r0, mut r1) = (modulus, a);
    let (mut t0, mut t1) = (Vec::new(), vec![T::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let t2 = poly_mul_sub(&t0, &q, &t1);
        (r0, r1) = (r1, r);
        (t0, t1) = (t1, t2);
    }
    (r0, t0)
}

impl<T: Scalar> PartialEq for Cyclo<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl<T: Scalar> Eq for Cyclo<T> {}

impl<T: Scalar> Add for &Cyclo<T> {
    type Output = Cyclo<T>;
    fn add(self, rhs: &Cyclo<T>) -> Cyclo<T> {
        let (a, b) = self.common(rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.clone() + y.clone()).collect();
        Cyclo { conductor: a.conductor, coeffs }
    }
}

impl<T: Scalar> Sub for &Cyclo<T> {
    type Output = Cyclo<T>;
    fn sub(self, rhs: &Cyclo<T>) -> Cyclo<T> {
        let (a, b) = self.common(rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.clone() - y.clone()).collect();
        Cyclo { conductor: a.conductor, coeffs }
    }
}

impl<T: Scalar> Mul for &Cyclo<T> {
    type Output = Cyclo<T>;
    fn mul(self, rhs: &Cyclo<T>) -> Cyclo<T> {
        let (a, b) = self.common(rhs);
        let m = a.conductor as usize;
        let mut buf = vec![T::zero(); m];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    buf[(i + j) % m] += x.clone() * y.clone();
                }
            }
        }
        Cyclo { conductor: a.conductor, coeffs: reduce_wrapped(a.conductor, buf) }
    }
}

impl<T: Scalar> Neg for &Cyclo<T> {
    type Output = Cyclo<T>;
    fn neg(self) -> Cyclo<T> {
        Cyclo { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl<T: Scalar> $tr for Cyclo<T> {
            type Output = Cyclo<T>;
            fn $f(self, rhs: Cyclo<T>) -> Cyclo<T> {
                (&self).$f(&rhs)
            }
        }
        impl<T: Scalar> $tr<&Cyclo<T>> for Cyclo<T> {
            type Output = Cyclo<T>;
            fn $f(self, rhs: &Cyclo<T>) -> Cyclo<T> {
                (&self).$f(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Neg for Cyclo<T> {
    type Output = Cyclo<T>;
    fn neg(self) -> Cyclo<T> {
        -&self
    }
}

impl<T: Scalar> std::iter::Sum for Cyclo<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

impl<T: Scalar> fmt::Display for Cyclo<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[m={}] ", self.conductor)?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (n, d) = c.to_fraction();
            let negative = n < BigInt::zero();
            let mag = if negative { -n } else { n };
            let value = if d.is_one() { mag.to_string() } else { format!("{mag}/{d}") };
            let sign = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let term = match i {
                0 => value,
                1 => format!("{value}·z"),
                _ => format!("{value}·z^{i}"),
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
