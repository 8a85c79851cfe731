//! Truncated arithmetic in `Z_p[zeta_p]`.
//!
//! Elements are stored on the basis `1, z, ..., z^{p-2}` (`z = zeta_p`) with
//! coefficients in `Z/p^M`; that makes products cyclotomic convolutions. The
//! `pi`-adic valuation (`pi = z - 1`, `v(pi) = 1`, `v(p) = p - 1`) is read off
//! after rewriting `z^k = (1 + pi)^k` on the basis `1, pi, ..., pi^{p-2}`:
//! those basis valuations are distinct mod `p - 1`, so
//! `v(sum b_i pi^i) = min_i ((p - 1) v_p(b_i) + i)`.
//!
//! An element known modulo `p^M` is known modulo `pi^{(p-1)M}`; valuations
//! are only reported below that cap.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, least_primitive_root, mod_inverse, mod_mul, mod_pow, modulo};
use crate::scalar::{fraction_mod, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(u64),
    /// Every `pi`-adic digit below the cap vanishes.
    AtCap,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::AtCap => None,
        }
    }

    /// Whether the valuation is certainly at least `bound`, given the cap.
    pub fn at_least(self, bound: u64, cap: u64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::AtCap => cap >= bound,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtCap => write!(f, "at-cap"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicCyclo {
    p: u64,
    precision: u32,
    modulus: u64,
    coeffs: Vec<u64>,
}

fn checked_modulus(p: u64, precision: u32) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if precision == 0 {
        return Err(Error::InvalidArgument("precision must be at least 1".into()));
    }
    p.checked_pow(precision).filter(|&q| q < 1 << 63).ok_or(Error::PrecisionOverflow { p, precision })
}

impl PadicCyclo {
    pub fn zero(p: u64, precision: u32) -> Result<Self> {
        let modulus = checked_modulus(p, precision)?;
        Ok(Self { p, precision, modulus, coeffs: vec![0; p as usize - 1] })
    }

    pub fn from_i64(p: u64, precision: u32, value: i64) -> Result<Self> {
        let mut x = Self::zero(p, precision)?;
        x.coeffs[0] = modulo(value, x.modulus);
        Ok(x)
    }

    /// `sum_k coeffs[k] * z^k` for any number of coefficients.
    pub fn from_power_coeffs(p: u64, precision: u32, coeffs: &[i64]) -> Result<Self> {
        let x = Self::zero(p, precision)?;
        let mut buf = vec![0u64; p as usize];
        for (k, &c) in coeffs.iter().enumerate() {
            let slot = &mut buf[k % p as usize];
            *slot = (*slot + modulo(c, x.modulus)) % x.modulus;
        }
        Ok(x.with_wrapped(buf))
    }

    /// `z^k`.
    pub fn zeta_power(p: u64, precision: u32, k: i64) -> Result<Self> {
        let x = Self::zero(p, precision)?;
        let mut buf = vec![0u64; p as usize];
        buf[modulo(k, p) as usize] = 1;
        Ok(x.with_wrapped(buf))
    }

    /// Reduces a length-`p` buffer taken modulo `z^p - 1` using
    /// `z^{p-1} = -(1 + z + ... + z^{p-2})`.
    fn with_wrapped(&self, mut buf: Vec<u64>) -> Self {
        let top = buf.pop().expect("buffer of length p");
        let q = self.modulus;
        for c in &mut buf {
            *c = (*c + q - top % q) % q;
        }
        Self { coeffs: buf, ..self.clone() }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `(p - 1) * M`: valuations at or above this are not observable.
    pub fn cap(&self) -> u64 {
        (self.p - 1) * self.precision as u64
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            self.p == other.p && self.precision == other.precision,
            "mixing Z_{}[zeta] mod p^{} with Z_{}[zeta] mod p^{}",
            self.p,
            self.precision,
            other.p,
            other.precision
        );
    }

    pub fn scale(&self, c: u64) -> Self {
        let q = self.modulus;
        Self { coeffs: self.coeffs.iter().map(|&x| mod_mul(x, c, q)).collect(), ..self.clone() }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = Self::from_i64(self.p, self.precision, 1).expect("validated parameters");
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

    /// `z -> z^u` for `u` prime to `p`.
    pub fn galois_map(&self, u: i64) -> Result<Self> {
        let u = modulo(u, self.p);
        if u == 0 {
            return Err(Error::NotAUnit { value: u, modulus: self.p });
        }
        let mut buf = vec![0u64; self.p as usize];
        for (k, &c) in self.coeffs.iter().enumerate() {
            let slot = &mut buf[(k as u64 * u % self.p) as usize];
            *slot = (*slot + c) % self.modulus;
        }
        Ok(self.with_wrapped(buf))
    }

    /// The same element modulo `p^precision` for a smaller precision.
    pub fn reduce_precision(&self, precision: u32) -> Result<Self> {
        if precision > self.precision {
            return Err(Error::InvalidArgument(format!(
                "cannot raise precision from {} to {precision}",
                self.precision
            )));
        }
        let mut x = Self::zero(self.p, precision)?;
        for (dst, &c) in x.coeffs.iter_mut().zip(&self.coeffs) {
            *dst = c % x.modulus;
        }
        Ok(x)
    }

    /// Coefficients on `1, pi, ..., pi^{p-2}` via `z^k = sum_i C(k, i) pi^i`.
    pub fn pi_coeffs(&self) -> Vec<u64> {
        let n = self.coeffs.len();
        let q = self.modulus;
        let mut binom = vec![vec![0u64; n]; n];
        for k in 0..n {
            binom[k][0] = 1;
            for i in 1..=k {
                binom[k][i] = (binom[k - 1][i - 1] + if i < k { binom[k - 1][i] } else { 0 }) % q;
            }
        }
        (0..n).map(|i| (i..n).fold(0u64, |acc, k| (acc + mod_mul(self.coeffs[k], binom[k][i], q)) % q)).collect()
    }

    pub fn pi_valuation(&self) -> Valuation {
        let p = self.p;
        self.pi_coeffs()
            .into_iter()
            .enumerate()
            .filter(|&(_, b)| b != 0)
            .map(|(i, mut b)| {
                let mut vp = 0;
                while b % p == 0 {
                    b /= p;
                    vp += 1;
                }
                (p - 1) * vp + i as u64
            })
            .min()
            .map_or(Valuation::AtCap, Valuation::Finite)
    }

    pub fn to_json(&self) -> Value {
        json!({ "p": self.p, "M": self.precision, "coeffs": self.coeffs })
    }
}

/// Teichmüller representative `omega(k)` as an integer mod `p^M`: the fixed
/// point of `x -> x^p` starting from `k`.
pub fn teichmuller_residue(k: i64, p: u64, precision: u32) -> Result<u64> {
    let q = checked_modulus(p, precision)?;
    if modulo(k, p) == 0 {
        return Err(Error::InvalidArgument(format!("Teichmüller lift of 0 mod {p}")));
    }
    let mut x = modulo(k, q);
    for _ in 0..=precision {
        let next = mod_pow(x, p, q);
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    unreachable!("Teichmüller iteration stabilises within M steps")
}

pub fn teichmuller(k: i64, p: u64, precision: u32) -> Result<PadicCyclo> {
    let omega = teichmuller_residue(k, p, precision)?;
    PadicCyclo::from_i64(p, precision, omega as i64)
}

/// Embeds an element of `Q(zeta_m)`, `m | p(p-1)`, into `Q_p(zeta_p)`.
///
/// With `N = p(p-1)` the compatible roots satisfy `zeta_N^{p-1} = zeta_p` and
/// `zeta_N^p = zeta_{p-1}`; the embedding sends `zeta_{p-1}` to the
/// Teichmüller lift of the least primitive root `rho`, hence
/// `zeta_N -> zeta_p^{-1} * omega(rho)`.
pub fn embed_cyclo<T: Scalar>(x: &Cyclo<T>, p: u64, precision: u32) -> Result<PadicCyclo> {
    let zero = PadicCyclo::zero(p, precision)?;
    let n = p * (p - 1);
    let x = x.raise_conductor(n)?;
    let q = zero.modulus;
    let omega_rho = teichmuller_residue(least_primitive_root(p) as i64, p, precision)?;
    let mut buf = vec![0u64; p as usize];
    let mut root = 1u64;
    for (e, c) in x.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let (num, den) = c.to_fraction();
            let r = fraction_mod(&num, &den, q).ok_or(Error::PrimeInDenominator(p))?;
            let slot = &mut buf[modulo(-(e as i64), p) as usize];
            *slot = (*slot + mod_mul(r, root, q)) % q;
        }
        root = mod_mul(root, omega_rho, q);
    }
    Ok(zero.with_wrapped(buf))
}

impl Add for &PadicCyclo {
    type Output = PadicCyclo;
    fn add(self, rhs: &PadicCyclo) -> PadicCyclo {
        self.assert_compatible(rhs);
        let q = self.modulus;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + b) % q).collect();
        PadicCyclo { coeffs, ..self.clone() }
    }
}

impl Sub for &PadicCyclo {
    type Output = PadicCyclo;
    fn sub(self, rhs: &PadicCyclo) -> PadicCyclo {
        self.assert_compatible(rhs);
        let q = self.modulus;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + q - b) % q).collect();
        PadicCyclo { coeffs, ..self.clone() }
    }
}

impl Neg for &PadicCyclo {
    type Output = PadicCyclo;
    fn neg(self) -> PadicCyclo {
        let q = self.modulus;
        PadicCyclo { coeffs: self.coeffs.iter().map(|&a| (q - a) % q).collect(), ..self.clone() }
    }
}

impl Mul for &PadicCyclo {
    type Output = PadicCyclo;
    fn mul(self, rhs: &PadicCyclo) -> PadicCyclo {
        self.assert_compatible(rhs);
        let p = self.p as usize;
        let q = self.modulus as u128;
        let mut acc = vec![0u128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let slot = &mut acc[(i + j) % p];
                *slot = (*slot + a as u128 * b as u128) % q;
            }
        }
        self.with_wrapped(acc.into_iter().map(|c| c as u64).collect())
    }
}

impl Add for PadicCyclo {
    type Output = PadicCyclo;
    fn add(self, rhs: PadicCyclo) -> PadicCyclo {
        &self + &rhs
    }
}

impl Mul for PadicCyclo {
    type Output = PadicCyclo;
    fn mul(self, rhs: PadicCyclo) -> PadicCyclo {
        &self * &rhs
    }
}

impl fmt::Display for PadicCyclo {
    /// `pi^v · unit` followed by the `pi`-basis expansion mod `p^M`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .pi_coeffs()
            .into_iter()
            .enumerate()
            .filter(|&(_, b)| b != 0)
            .map(|(i, b)| match i {
                0 => b.to_string(),
                1 => format!("{b}·π"),
                _ => format!("{b}·π^{i}"),
            })
            .collect();
        match self.pi_valuation() {
            Valuation::AtCap => write!(f, "0 (mod π^{})", self.cap()),
            Valuation::Finite(v) => {
                write!(f, "π^{v} · unit, = {} (mod {}^{})", terms.join(" + "), self.p, self.precision)
            }
        }
    }
}

/// Inverse of `a` modulo `p^M`, for residues prime to `p`.
pub fn residue_inverse(a: u64, p: u64, precision: u32) -> Result<u64> {
    let q = checked_modulus(p, precision)?;
    mod_inverse(a % q, q).ok_or(Error::NotAUnit { value: a, modulus: q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    use crate::scalar::FieldScalar;

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller(1, 7, 3).unwrap(), PadicCyclo::from_i64(7, 3, 1).unwrap());
        assert_eq!(teichmuller_residue(2, 5, 2).unwrap(), 7);
        assert_eq!(mod_pow(7, 4, 25), 1);
        assert!(teichmuller(7, 7, 2).is_err());
        let (p, m) = (7, 4);
        let q = 7u64.pow(4);
        for j in 1..p as i64 {
            let wj = teichmuller_residue(j, p, m).unwrap();
            assert_eq!(wj % p, j as u64);
            assert_eq!(mod_pow(wj, p - 1, q), 1);
            for k in 1..p as i64 {
                let wk = teichmuller_residue(k, p, m).unwrap();
                assert_eq!(mod_mul(wj, wk, q), teichmuller_residue(j * k % p as i64, p, m).unwrap());
            }
        }
    }

    #[test]
    fn valuation_examples() {
        for p in [3u64, 5, 7, 11] {
            let x = PadicCyclo::from_i64(p, 3, p as i64).unwrap();
            assert_eq!(x.pi_valuation(), Valuation::Finite(p - 1));
            let pi = &PadicCyclo::zeta_power(p, 3, 1).unwrap() - &PadicCyclo::from_i64(p, 3, 1).unwrap();
            assert_eq!(pi.pi_valuation(), Valuation::Finite(1));
            assert_eq!(PadicCyclo::zero(p, 3).unwrap().pi_valuation(), Valuation::AtCap);
            // p itself at precision 1 is zero
            assert_eq!(PadicCyclo::from_i64(p, 1, p as i64).unwrap().pi_valuation(), Valuation::AtCap);
        }
    }

    #[test]
    fn parameters_are_validated() {
        assert_eq!(PadicCyclo::zero(9, 2), Err(Error::NotOddPrime(9)));
        assert_eq!(PadicCyclo::zero(2, 2), Err(Error::NotOddPrime(2)));
        assert!(matches!(PadicCyclo::zero(47, 20), Err(Error::PrecisionOverflow { .. })));
    }

    #[test]
    fn embedding_examples() {
        type C = Cyclo<BigRational>;
        let (p, m) = (7u64, 4u32);
        let zeta = embed_cyclo(&C::root_of_unity(p, 1), p, m).unwrap();
        assert_eq!(zeta, PadicCyclo::zeta_power(p, m, 1).unwrap());
        let one = PadicCyclo::from_i64(p, m, 1).unwrap();
        assert_eq!((&zeta - &one).pi_valuation(), Valuation::Finite(1));
        let root = embed_cyclo(&C::root_of_unity(p - 1, 1), p, m).unwrap();
        assert_eq!(root.pow(p - 1), one);
        assert_ne!(root.pow((p - 1) / 2), one);
        let bad = C::constant(BigRational::from_fraction(1, 7));
        assert_eq!(embed_cyclo(&bad, p, m), Err(Error::PrimeInDenominator(7)));
        let half = embed_cyclo(&C::constant(BigRational::from_fraction(1, 2)), p, m).unwrap();
        assert_eq!(&half.scale(2), &one);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        use rand::{Rng, SeedableRng};
        type C = Cyclo<BigRational>;
        let (p, m) = (7u64, 4u32);
        let n = p * (p - 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let random = |rng: &mut rand_chacha::ChaCha8Rng| {
            let terms: Vec<(i64, BigRational)> = (0..4)
                .map(|_| {
                    (
                        rng.gen_range(0..n as i64),
                        BigRational::from_fraction(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
                    )
                })
                .collect();
            C::from_terms(n, terms)
        };
        for _ in 0..50 {
            let (x, y) = (random(&mut rng), random(&mut rng));
            let (ex, ey) = (embed_cyclo(&x, p, m).unwrap(), embed_cyclo(&y, p, m).unwrap());
            assert_eq!(embed_cyclo(&(&x + &y), p, m).unwrap(), &ex + &ey);
            assert_eq!(embed_cyclo(&(&x * &y), p, m).unwrap(), &ex * &ey);
        }
        // compatible with the Galois action on the zeta_p part
        let x = C::from_terms(p, [(1, BigRational::from_i64(3)), (4, BigRational::from_fraction(-1, 2))]);
        for u in 1..p as i64 {
            let lhs = embed_cyclo(&x.galois_map(u).unwrap(), p, m).unwrap();
            let rhs = embed_cyclo(&x, p, m).unwrap().galois_map(u).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    fn element(p: u64, m: u32) -> impl Strategy<Value = PadicCyclo> {
        prop::collection::vec(-1000i64..1000, p as usize - 1)
            .prop_map(move |c| PadicCyclo::from_power_coeffs(p, m, &c).unwrap())
    }

    fn params() -> impl Strategy<Value = (u64, u32)> {
        (prop::sample::select(vec![3u64, 5, 7, 11, 13]), prop::sample::select(vec![2u32, 4, 6]))
    }

    proptest! {
        #[test]
        fn ring_axioms((x, y, z) in params().prop_flat_map(|(p, m)| (element(p, m), element(p, m), element(p, m)))) {
            let zero = PadicCyclo::zero(x.prime(), x.precision()).unwrap();
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!(&x + &(-&x), zero);
        }

        #[test]
        fn valuation_is_additive((p, m) in params(), a in prop::collection::vec(-50i64..50, 1..6), b in prop::collection::vec(-50i64..50, 1..6)) {
            let x = PadicCyclo::from_power_coeffs(p, m, &a).unwrap();
            let y = PadicCyclo::from_power_coeffs(p, m, &b).unwrap();
            if let (Valuation::Finite(vx), Valuation::Finite(vy)) = (x.pi_valuation(), y.pi_valuation()) {
                // one level of slack below the cap
                if vx + vy < (p - 1) * (m as u64 - 1) {
                    prop_assert_eq!((&x * &y).pi_valuation(), Valuation::Finite(vx + vy));
                }
            }
        }

        #[test]
        fn valuation_is_stable_under_precision((p, m) in params(), a in prop::collection::vec(-10_000i64..10_000, 1..14)) {
            let fine = PadicCyclo::from_power_coeffs(p, m, &a).unwrap();
            if let Valuation::Finite(v) = fine.pi_valuation() {
                let fine2 = PadicCyclo::from_power_coeffs(p, m + 2, &a).unwrap();
                prop_assert_eq!(fine2.pi_valuation(), Valuation::Finite(v));
                prop_assert_eq!(fine2.reduce_precision(m).unwrap(), fine);
            }
        }
    }
}
