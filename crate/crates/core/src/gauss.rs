//! Gauss sums `G(phi, j) = sum_{k in F_p} phi(k) zeta_p^{jk}`.
//!
//! Characters of `F_p^x` are pinned by the least primitive root `rho`:
//! the character with exponent `e` sends `rho^a` to `zeta_{p-1}^{ae}` in the
//! cyclotomic backend (conductor `p(p-1)`), and to `omega(rho)^{ae}` in the
//! p-adic backend. The embedding in [`crate::padic::embed_cyclo`] sends
//! `zeta_{p-1}` to `omega(rho)`, so both backends name the same sum.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::numtheory::{gcd, is_prime, least_primitive_root, mod_mul, mod_pow, modulo};
use crate::padic::{teichmuller_residue, PadicCyclo, Valuation};
use crate::scalar::Scalar;

/// A character `F_p -> Q(zeta_{p-1}) u {0}` with `phi(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeCharacter {
    p: u64,
    exponent: u64,
    /// `log[k]` = discrete log of `k` base `rho`; unused at 0.
    log: Arc<Vec<u64>>,
}

fn check_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

fn discrete_logs(p: u64) -> Vec<u64> {
    let rho = least_primitive_root(p);
    let mut log = vec![0; p as usize];
    let mut x = 1;
    for a in 0..p - 1 {
        log[x as usize] = a;
        x = mod_mul(x, rho, p);
    }
    log
}

impl MultiplicativeCharacter {
    /// `rho -> zeta_{p-1}^{exponent}`.
    pub fn with_exponent(p: u64, exponent: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p, exponent: exponent % (p - 1), log: Arc::new(discrete_logs(p)) })
    }

    /// The character of order `n` with `rho -> zeta_{p-1}^{(p-1)/n}`.
    pub fn of_order(p: u64, n: u64) -> Result<Self> {
        check_prime(p)?;
        if n == 0 || !(p - 1).is_multiple_of(n) {
            return Err(Error::InvalidArgument(format!("order {n} does not divide {}", p - 1)));
        }
        Self::with_exponent(p, (p - 1) / n)
    }

    pub fn trivial(p: u64) -> Result<Self> {
        Self::with_exponent(p, 0)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn generator(&self) -> u64 {
        least_primitive_root(self.p)
    }

    pub fn order(&self) -> u64 {
        (self.p - 1) / gcd(self.exponent, self.p - 1)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    /// `phi^l`.
    pub fn power(&self, l: i64) -> Self {
        let e = modulo(self.exponent as i64 * l, self.p - 1);
        Self { p: self.p, exponent: e, log: self.log.clone() }
    }

    /// Discrete log of a nonzero residue.
    pub fn discrete_log(&self, k: i64) -> Option<u64> {
        let k = modulo(k, self.p);
        (k != 0).then(|| self.log[k as usize])
    }

    /// `phi(k) = zeta_{p-1}^r`, or `None` for `k = 0`.
    pub fn value_exponent(&self, k: i64) -> Option<u64> {
        self.discrete_log(k).map(|a| a * self.exponent % (self.p - 1))
    }

    pub fn value<T: Scalar>(&self, k: i64) -> Cyclo<T> {
        match self.value_exponent(k) {
            Some(r) => Cyclo::root_of_unity(self.p - 1, r as i64),
            None => Cyclo::zero(),
        }
    }

    /// `phi(k)` as a residue mod `p^M`.
    pub fn value_padic(&self, k: i64, precision: u32) -> Result<u64> {
        let Some(a) = self.discrete_log(k) else { return Ok(0) };
        let omega = teichmuller_residue(self.generator() as i64, self.p, precision)?;
        let q = self.p.pow(precision);
        Ok(mod_pow(omega, a * self.exponent, q))
    }
}

/// `R_n = (F_p^x)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSubgroup {
    p: u64,
    n: u64,
    elements: Vec<u64>,
}

impl ResidueSubgroup {
    pub fn new(p: u64, n: u64) -> Result<Self> {
        check_prime(p)?;
        if n == 0 || !(p - 1).is_multiple_of(n) {
            return Err(Error::InvalidArgument(format!("index {n} does not divide {}", p - 1)));
        }
        let mut elements: Vec<u64> = (1..p).map(|k| mod_pow(k, n, p)).collect();
        elements.sort_unstable();
        elements.dedup();
        Ok(Self { p, n, elements })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn index(&self) -> u64 {
        self.n
    }

    /// Sorted residues in `[1, p)`.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, k: i64) -> bool {
        self.elements.binary_search(&modulo(k, self.p)).is_ok()
    }
}

/// `G(phi, j)` in `Q(zeta_{p(p-1)})`.
pub fn gauss_sum<T: Scalar>(phi: &MultiplicativeCharacter, j: i64) -> Cyclo<T> {
    let p = phi.p;
    let n = p * (p - 1);
    let terms = (1..p as i64).map(|k| {
        let r = phi.value_exponent(k).expect("k is nonzero") as i64;
        (p as i64 * r + (p as i64 - 1) * modulo(j * k, p) as i64, T::one())
    });
    Cyclo::from_terms(n, terms)
}

/// `G(phi, j)` in `Z_p[zeta_p] / p^M`.
pub fn gauss_sum_padic(phi: &MultiplicativeCharacter, j: i64, precision: u32) -> Result<PadicCyclo> {
    let p = phi.p;
    let q = PadicCyclo::zero(p, precision)?.modulus();
    let mut coeffs = vec![0i64; p as usize];
    for k in 1..p as i64 {
        let slot = &mut coeffs[modulo(j * k, p) as usize];
        *slot = ((*slot as u64 + phi.value_padic(k, precision)?) % q) as i64;
    }
    PadicCyclo::from_power_coeffs(p, precision, &coeffs)
}

fn require_nonzero(j: i64, p: u64) -> Result<()> {
    if modulo(j, p) == 0 {
        return Err(Error::InvalidArgument(format!("j must be nonzero mod {p}")));
    }
    Ok(())
}

fn require_nontrivial(phi: &MultiplicativeCharacter) -> Result<()> {
    if phi.is_trivial() {
        return Err(Error::InvalidArgument("character must be nontrivial".into()));
    }
    Ok(())
}

/// `G(1,0) = p-1`, `G(phi,0) = 0` for `phi != 1`, and `G(1,j) = -1`.
pub fn basic_values_hold<T: Scalar>(phi: &MultiplicativeCharacter) -> bool {
    let p = phi.p as i64;
    let at_zero = if phi.is_trivial() { Cyclo::from_i64(p - 1) } else { Cyclo::zero() };
    let trivial = phi.power(0);
    gauss_sum::<T>(phi, 0) == at_zero && (1..p).all(|j| gauss_sum::<T>(&trivial, j) == Cyclo::from_i64(-1))
}

/// `G(phi, j) = phi(j)^{-1} G(phi, 1)`, exactly.
pub fn verify_translation<T: Scalar>(phi: &MultiplicativeCharacter, j: i64) -> Result<bool> {
    require_nonzero(j, phi.p)?;
    let p = phi.p;
    let r = phi.value_exponent(j).expect("j is nonzero") as i64;
    // phi(j)^{-1} = zeta_{p-1}^{-r} = zeta_N^{-pr}
    let rhs = gauss_sum::<T>(phi, 1).mul_root_of_unity(-(p as i64) * r);
    Ok(gauss_sum::<T>(phi, j) == rhs)
}

/// `(p-1)/n`, the lower bound for the valuation of a Gauss sum of order `n`.
pub fn valuation_bound(phi: &MultiplicativeCharacter) -> u64 {
    (phi.p - 1) / phi.order()
}

/// Smallest precision with `(p-1)(M-1) > p`.
pub fn minimal_precision(p: u64) -> u32 {
    (1..).find(|&m: &u32| (p - 1) * (m as u64 - 1) > p).expect("unbounded search")
}

/// Exact `pi`-adic valuation of `G(phi, j)`.
pub fn gauss_valuation(phi: &MultiplicativeCharacter, j: i64, precision: u32) -> Result<u64> {
    require_nontrivial(phi)?;
    require_nonzero(j, phi.p)?;
    let p = phi.p;
    if (p - 1) * (precision as u64).saturating_sub(1) <= p {
        return Err(Error::PrecisionTooSmall { p, precision, suggested: minimal_precision(p) });
    }
    let g = gauss_sum_padic(phi, j, precision)?;
    match g.pi_valuation() {
        Valuation::Finite(v) => Ok(v),
        Valuation::AtCap => Err(Error::AtCap { cap: g.cap() }),
    }
}

/// `sum_{l=1}^{n-1} G(phi^l, j) = 1 + n sum_{k in R_n} zeta^{jk}`, exactly.
pub fn character_sum_identity<T: Scalar>(phi: &MultiplicativeCharacter, j: i64) -> Result<bool> {
    require_nontrivial(phi)?;
    require_nonzero(j, phi.p)?;
    let p = phi.p;
    let n = phi.order();
    let lhs: Cyclo<T> = (1..n as i64).map(|l| gauss_sum::<T>(&phi.power(l), j)).sum();
    let r_n = ResidueSubgroup::new(p, n)?;
    let sum: Cyclo<T> = Cyclo::from_terms(p, r_n.elements().iter().map(|&k| (j * k as i64, T::from_i64(n as i64))));
    Ok(lhs == &Cyclo::one() + &sum)
}

/// The power sum `S = sum_j G(phi, j)^n` with both of its evaluations.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSum {
    pub value: Cyclo<BigInt>,
    /// `S = (p-1) G(phi,1)^n`.
    pub equals_translated: bool,
    pub valuation: Valuation,
    /// `v(S) >= v(p) = p-1`; a value at the precision cap counts.
    pub divisible_by_p: bool,
}

pub fn power_sum_s(phi: &MultiplicativeCharacter, precision: u32) -> Result<PowerSum> {
    require_nontrivial(phi)?;
    let p = phi.p;
    let n = phi.order();
    let value: Cyclo<BigInt> = (0..p as i64).map(|j| gauss_sum::<BigInt>(phi, j).pow(n)).sum();
    let translated = gauss_sum::<BigInt>(phi, 1).pow(n).scale(&BigInt::from(p - 1));
    let embedded = crate::padic::embed_cyclo(&value, p, precision)?;
    let valuation = embedded.pi_valuation();
    Ok(PowerSum {
        equals_translated: value == translated,
        divisible_by_p: valuation.at_least(p - 1, embedded.cap()),
        valuation,
        value,
    })
}
