//! The modified Stickelberger pairing and map, the kernel `S` of `det`,
//! the cyclotomic twists `G(n)` and the transpose on equivariant maps.
//!
//! For odd `|s|` the pairing is `<chi, s> = v / |s|` where `v` is the
//! symmetric-range integer with `chi(s) = zeta_{|s|}^v`. The map sends a
//! virtual character `psi` to `sum_s <psi, s> s`; its coefficients are
//! integral exactly when `det(psi) = prod chi^{n_chi}` is trivial.
//!
//! The absolute Galois group enters only through its image `u` in
//! `(Z/m)^x`, `m = exp(G)`: it acts on characters by `chi -> chi^u` and on
//! `G(n)` by `s -> s^{u^n}`.

use rayon::prelude::*;
use serde_json::Value;

use crate::abelian::{Character, FiniteAbelianGroup, GroupElement};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::json::bigint_value;
use crate::numtheory::{gcd, mod_inverse, mod_pow, modulo, symmetric_residue, units};
use crate::scalar::FieldScalar;

/// An element of `ZĜ`, stored densely over `dual_enumerate` order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VirtualCharacter {
    group: FiniteAbelianGroup,
    coeffs: Vec<i64>,
}

impl VirtualCharacter {
    pub fn new(group: FiniteAbelianGroup, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != group.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for the dual of {group}, got {}",
                group.len(),
                coeffs.len()
            )));
        }
        Ok(Self { group, coeffs })
    }

    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        Self { group: group.clone(), coeffs: vec![0; group.len()] }
    }

    pub fn from_character(group: &FiniteAbelianGroup, chi: &Character) -> Self {
        Self::from_terms(group, [(chi.clone(), 1)])
    }

    pub fn from_terms(group: &FiniteAbelianGroup, terms: impl IntoIterator<Item = (Character, i64)>) -> Self {
        let mut psi = Self::zero(group);
        for (chi, n) in terms {
            psi.coeffs[group.character_index(&chi)] += n;
        }
        psi
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, chi: &Character) -> i64 {
        self.coeffs[self.group.character_index(chi)]
    }

    /// Nonzero terms in enumeration order.
    pub fn terms(&self) -> impl Iterator<Item = (Character, i64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &n)| n != 0).map(|(i, &n)| (self.group.character_at(i), n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { group: self.group.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Self { group: self.group.clone(), coeffs }
    }

    /// `psi-bar`: every character replaced by its inverse.
    pub fn conjugate(&self) -> Self {
        Self::from_terms(&self.group, self.terms().map(|(chi, n)| (self.group.char_inverse(&chi), n)))
    }
}

/// An element of `QG`, stored densely over element enumeration order.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalGroupElement<Q> {
    group: FiniteAbelianGroup,
    coeffs: Vec<Q>,
}

impl<Q: FieldScalar> RationalGroupElement<Q> {
    pub fn new(group: FiniteAbelianGroup, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != group.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for {group}, got {}",
                group.len(),
                coeffs.len()
            )));
        }
        Ok(Self { group, coeffs })
    }

    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        Self { group: group.clone(), coeffs: vec![Q::zero(); group.len()] }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, s: &GroupElement) -> &Q {
        &self.coeffs[self.group.index_of(s)]
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Self { group: self.group.clone(), coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Q::is_zero)
    }

    /// Whether the element lies in `ZG`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Q::is_integral)
    }

    /// `[[coords...], numerator, denominator]` per element.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.group
                .elements()
                .zip(&self.coeffs)
                .map(|(s, q)| {
                    let (n, d) = q.to_fraction();
                    Value::Array(vec![serde_json::json!(s.coords()), bigint_value(&n), bigint_value(&d)])
                })
                .collect(),
        )
    }
}

/// `v(chi, s)` and `|s|`, so that the pairing is their quotient.
pub fn pairing_parts(g: &FiniteAbelianGroup, chi: &Character, s: &GroupElement) -> Result<(i64, u64)> {
    let order = g.element_order(s);
    if order.is_multiple_of(2) {
        return Err(Error::EvenOrder(order));
    }
    let e = g.char_exponent(chi, s) as u128 * order as u128 / g.exponent() as u128;
    Ok((symmetric_residue(e as i64, order), order))
}

/// `<chi, s>` as an exact rational.
pub fn pairing<Q: FieldScalar>(g: &FiniteAbelianGroup, chi: &Character, s: &GroupElement) -> Result<Q> {
    let (v, order) = pairing_parts(g, chi, s)?;
    Ok(Q::from_fraction(v, order as i64))
}

fn require_odd(g: &FiniteAbelianGroup) -> Result<()> {
    if g.is_odd_order() {
        Ok(())
    } else {
        Err(Error::EvenOrder(g.order()))
    }
}

/// Numerators `sum_chi n_chi v(chi, s)` over `|s|`, per element.
fn stickelberger_fractions(psi: &VirtualCharacter) -> Result<Vec<(i64, u64)>> {
    let g = &psi.group;
    require_odd(g)?;
    let terms: Vec<_> = psi.terms().collect();
    g.elements()
        .map(|s| {
            let mut num = 0i64;
            let mut den = 1;
            for (chi, n) in &terms {
                let (v, order) = pairing_parts(g, chi, &s)?;
                num += n * v;
                den = order;
            }
            Ok((num, if terms.is_empty() { 1 } else { den }))
        })
        .collect()
}

/// `Theta(psi) = sum_s <psi, s> s`.
pub fn stickelberger_map<Q: FieldScalar>(psi: &VirtualCharacter) -> Result<RationalGroupElement<Q>> {
    let coeffs =
        stickelberger_fractions(psi)?.into_iter().map(|(num, den)| Q::from_fraction(num, den as i64)).collect();
    Ok(RationalGroupElement { group: psi.group.clone(), coeffs })
}

/// `det(psi) = prod chi^{n_chi}`.
pub fn det_map(psi: &VirtualCharacter) -> Character {
    let g = &psi.group;
    psi.terms().fold(g.trivial_character(), |acc, (chi, n)| g.char_mul(&acc, &g.char_pow(&chi, n)))
}

/// Membership in `S = ker(det)`.
pub fn in_s(psi: &VirtualCharacter) -> bool {
    det_map(psi) == psi.group.trivial_character()
}

fn check_unit(u: i64, m: u64) -> Result<u64> {
    let r = modulo(u, m);
    if gcd(r, m) != 1 {
        return Err(Error::NotAUnit { value: r, modulus: m });
    }
    Ok(r)
}

/// `u^n mod m` for a unit `u` and any integer `n`.
pub fn unit_power(u: u64, n: i64, m: u64) -> u64 {
    let base = if n < 0 { mod_inverse(u, m).expect("unit") } else { u };
    mod_pow(base, n.unsigned_abs(), m)
}

/// `chi -> chi^u`.
pub fn twist_character(g: &FiniteAbelianGroup, u: i64, chi: &Character) -> Result<Character> {
    let u = check_unit(u, g.exponent())?;
    Ok(g.char_pow(chi, u as i64))
}

/// `s -> s^{u^n}`, the action on `G(n)`.
pub fn twist_element(g: &FiniteAbelianGroup, n: i64, u: i64, s: &GroupElement) -> Result<GroupElement> {
    let m = g.exponent();
    let u = check_unit(u, m)?;
    Ok(g.pow(s, unit_power(u, n, m) as i64))
}

/// The induced action on `ZĜ`.
pub fn twist_virtual(u: i64, psi: &VirtualCharacter) -> Result<VirtualCharacter> {
    let g = &psi.group;
    let terms = psi.terms().map(|(chi, n)| Ok((twist_character(g, u, &chi)?, n))).collect::<Result<Vec<_>>>()?;
    Ok(VirtualCharacter::from_terms(g, terms))
}

/// The induced action on `QG(n)`.
pub fn twist_rational<Q: FieldScalar>(n: i64, u: i64, x: &RationalGroupElement<Q>) -> Result<RationalGroupElement<Q>> {
    let g = &x.group;
    let mut coeffs = vec![Q::zero(); g.len()];
    for (s, c) in g.elements().zip(&x.coeffs) {
        coeffs[g.index_of(&twist_element(g, n, u, &s)?)] = c.clone();
    }
    Ok(RationalGroupElement { group: g.clone(), coeffs })
}

/// Values an equivariant map may take: a commutative group with a Galois
/// action through `(Z/m)^x` and, where available, exact roots.
pub trait MultiplicativeValue: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn pow(&self, k: i64) -> Result<Self>;
    /// Image under the automorphism `zeta -> zeta^u`.
    fn galois(&self, u: u64) -> Result<Self>;
    /// An exact `k`-th root, when the value carries one structurally.
    fn root(&self, k: u64) -> Option<Self>;
}

impl<T: FieldScalar> MultiplicativeValue for Cyclo<T> {
    fn one() -> Self {
        Cyclo::one()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        Ok(Cyclo::pow(&base, k.unsigned_abs()))
    }
    fn galois(&self, u: u64) -> Result<Self> {
        self.galois_map(u as i64)
    }
    fn root(&self, _k: u64) -> Option<Self> {
        (self == &Cyclo::one()).then(Cyclo::one)
    }
}

/// A map `G(n) -> V`, checked for Galois equivariance on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantMap<V> {
    group: FiniteAbelianGroup,
    twist: i64,
    values: Vec<V>,
}

impl<V: MultiplicativeValue> EquivariantMap<V> {
    pub fn new(group: FiniteAbelianGroup, twist: i64, values: Vec<V>) -> Result<Self> {
        if values.len() != group.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} values for {group}, got {}",
                group.len(),
                values.len()
            )));
        }
        Ok(Self { group, twist, values })
    }

    pub fn from_fn(group: &FiniteAbelianGroup, twist: i64, f: impl Fn(&GroupElement) -> V) -> Self {
        Self { values: group.elements().map(|s| f(&s)).collect(), group: group.clone(), twist }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn value(&self, s: &GroupElement) -> &V {
        &self.values[self.group.index_of(s)]
    }

    /// `g(u.s) = u(g(s))` for every listed `u` and every `s`.
    pub fn is_equivariant_over(&self, us: &[u64]) -> Result<bool> {
        let g = &self.group;
        let elements: Vec<_> = g.elements().collect();
        us.par_iter()
            .map(|&u| {
                for s in &elements {
                    let moved = twist_element(g, self.twist, u as i64, s)?;
                    if self.value(&moved) != &self.value(s).galois(u)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().all(|b| b))
    }

    /// Equivariance over all of `(Z/m)^x`.
    pub fn is_equivariant(&self) -> Result<bool> {
        self.is_equivariant_over(&units(self.group.exponent()))
    }
}

/// `prod_s g(s)^{n_s}` with `n_s` the coefficients of `Theta(psi)`.
///
/// A non-integral `n_s = a/b` is accepted only when `g(s)` has an exact
/// `b`-th root.
pub fn transpose_apply<V: MultiplicativeValue>(g: &EquivariantMap<V>, psi: &VirtualCharacter) -> Result<V> {
    let fractions = stickelberger_fractions(psi)?;
    let mut acc = V::one();
    for (value, (num, den)) in g.values.iter().zip(fractions) {
        if num == 0 {
            continue;
        }
        let k = gcd(num.unsigned_abs(), den);
        let (num, den) = (num / k as i64, den / k);
        let base = if den == 1 {
            value.clone()
        } else {
            value.root(den).ok_or(Error::NotInS { numer: num, denom: den as i64 })?
        };
        acc = acc.mul(&base.pow(num)?);
    }
    Ok(acc)
}

/// Integer pairing numerators for fast integrality scans.
#[derive(Clone, Debug)]
pub struct PairingTable {
    /// `numerators[s][chi] = v(chi, s)`.
    numerators: Vec<Vec<i64>>,
    orders: Vec<u64>,
    /// `det` as coordinate vectors: `char_coords[chi]`.
    char_coords: Vec<Vec<u64>>,
    factors: Vec<u64>,
}

/// Outcome of comparing integrality with membership in `S`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegralityScan {
    pub checked: u64,
    pub in_s: u64,
    pub mismatches: u64,
}

impl IntegralityScan {
    fn merge(self, other: Self) -> Self {
        Self {
            checked: self.checked + other.checked,
            in_s: self.in_s + other.in_s,
            mismatches: self.mismatches + other.mismatches,
        }
    }
}

impl PairingTable {
    pub fn new(g: &FiniteAbelianGroup) -> Result<Self> {
        require_odd(g)?;
        let chars = g.dual_enumerate();
        let mut numerators = Vec::with_capacity(g.len());
        let mut orders = Vec::with_capacity(g.len());
        for s in g.elements() {
            numerators.push(chars.iter().map(|chi| pairing_parts(g, chi, &s).map(|x| x.0)).collect::<Result<_>>()?);
            orders.push(g.element_order(&s));
        }
        Ok(Self {
            numerators,
            orders,
            char_coords: chars.iter().map(|c| c.coords().to_vec()).collect(),
            factors: g.factors().to_vec(),
        })
    }

    pub fn is_integral(&self, psi: &[i64]) -> bool {
        self.numerators.iter().zip(&self.orders).all(|(row, &order)| {
            let num: i64 = row.iter().zip(psi).map(|(v, n)| v * n).sum();
            num.rem_euclid(order as i64) == 0
        })
    }

    pub fn in_s(&self, psi: &[i64]) -> bool {
        self.factors.iter().enumerate().all(|(i, &d)| {
            let e: i64 = self.char_coords.iter().zip(psi).map(|(c, n)| c[i] as i64 * n).sum();
            e.rem_euclid(d as i64) == 0
        })
    }

    fn classify(&self, psi: &[i64]) -> IntegralityScan {
        let in_s = self.in_s(psi);
        IntegralityScan { checked: 1, in_s: in_s as u64, mismatches: (in_s != self.is_integral(psi)) as u64 }
    }

    /// Every `psi` with coefficients in `[-bound, bound]`.
    pub fn scan_box(&self, bound: i64) -> IntegralityScan {
        let len = self.char_coords.len();
        if len == 0 {
            return IntegralityScan::default();
        }
        (-bound..=bound)
            .into_par_iter()
            .map(|first| {
                let mut psi = vec![-bound; len];
                psi[0] = first;
                let mut scan = IntegralityScan::default();
                loop {
                    scan = scan.merge(self.classify(&psi));
                    let mut i = len - 1;
                    loop {
                        if i == 0 {
                            return scan;
                        }
                        if psi[i] < bound {
                            psi[i] += 1;
                            break;
                        }
                        psi[i] = -bound;
                        i -= 1;
                    }
                }
            })
            .reduce(IntegralityScan::default, IntegralityScan::merge)
    }

    /// The given samples.
    pub fn scan(&self, samples: &[Vec<i64>]) -> IntegralityScan {
        samples.par_iter().map(|psi| self.classify(psi)).reduce(IntegralityScan::default, IntegralityScan::merge)
    }
}
