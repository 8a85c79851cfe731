//! Group rings `F^c G`, the resolvend map and the character transform.
//!
//! For `a: G -> F^c` the resolvend is `r_G(a) = sum_s a(s) s^{-1}`, and the
//! resolvent at a character is `(a | chi) = sum_s a(s) chi(s)^{-1}`, which is
//! the value of `r_G(a)` under the algebra map `F^c G -> F^c` extending
//! `chi`. The transform therefore turns convolution into pointwise products,
//! and inverting it recovers `a(s) = |G|^{-1} sum_chi phi(chi) chi(s)`.
//!
//! All maps are dense over the enumeration orders of
//! [`FiniteAbelianGroup`]. Coefficients live in any [`CoeffAlgebra`] that
//! contains the needed roots of unity; cyclotomic elements raise their
//! conductor on demand, so no conductor has to be fixed up front.

use std::fmt;

use rayon::prelude::*;
use serde_json::Value;

use crate::abelian::{Character, FiniteAbelianGroup, GroupElement};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::numtheory::lcm;
use crate::scalar::FieldScalar;

/// Commutative `Q`-algebras containing every root of unity, as far as the
/// transforms need them.
pub trait CoeffAlgebra: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
    /// `self * zeta_n^k`.
    fn mul_root(&self, n: u64, k: i64) -> Self;
    fn div_int(&self, n: u64) -> Self;
    fn try_inverse(&self) -> Option<Self>;
    fn to_json(&self) -> Value;

    fn sum_of_products(pairs: &[(&Self, &Self)]) -> Self {
        pairs.iter().fold(Self::zero(), |acc, (x, y)| acc.add_elem(&x.mul_elem(y)))
    }
}

impl<T: FieldScalar> CoeffAlgebra for Cyclo<T> {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn add_elem(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_root(&self, n: u64, k: i64) -> Self {
        let m = lcm(self.conductor(), n);
        let raised = self.raise_conductor(m).expect("lcm is a multiple");
        raised.mul_root_of_unity(k * (m / n) as i64)
    }
    fn div_int(&self, n: u64) -> Self {
        self.scale(&(T::one() / T::from_i64(n as i64)))
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn to_json(&self) -> Value {
        Cyclo::to_json(self)
    }
    fn sum_of_products(pairs: &[(&Self, &Self)]) -> Self {
        Cyclo::sum_of_products(pairs)
    }
}

/// An element of `Map(G, F^c)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupMap<R> {
    group: FiniteAbelianGroup,
    values: Vec<R>,
}

/// An element of `F^c G`, stored by coefficient of each group element.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingElement<R> {
    group: FiniteAbelianGroup,
    coeffs: Vec<R>,
}

/// An element of `Map(Ĝ, F^c)`, indexed like [`FiniteAbelianGroup::dual_enumerate`].
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterVector<R> {
    group: FiniteAbelianGroup,
    values: Vec<R>,
}

fn check_len(group: &FiniteAbelianGroup, len: usize) -> Result<()> {
    if len != group.len() {
        return Err(Error::InvalidArgument(format!("expected {} values for {group}, got {len}", group.len())));
    }
    Ok(())
}

impl<R: CoeffAlgebra> GroupMap<R> {
    pub fn new(group: FiniteAbelianGroup, values: Vec<R>) -> Result<Self> {
        check_len(&group, values.len())?;
        Ok(Self { group, values })
    }

    pub fn from_fn(group: &FiniteAbelianGroup, f: impl Fn(&GroupElement) -> R) -> Self {
        Self { values: group.elements().map(|s| f(&s)).collect(), group: group.clone() }
    }

    pub fn indicator(group: &FiniteAbelianGroup, s0: &GroupElement) -> Self {
        Self::from_fn(group, |s| if s == s0 { R::one() } else { R::zero() })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn value(&self, s: &GroupElement) -> &R {
        &self.values[self.group.index_of(s)]
    }
}

/// `r_G(a) = sum_s a(s) s^{-1}`.
pub fn resolvend<R: CoeffAlgebra>(a: &GroupMap<R>) -> GroupRingElement<R> {
    let g = &a.group;
    let mut coeffs = vec![R::zero(); g.len()];
    for (s, v) in g.elements().zip(&a.values) {
        coeffs[g.index_of(&g.inverse(&s))] = v.clone();
    }
    GroupRingElement { group: g.clone(), coeffs }
}

/// The inverse of [`resolvend`].
pub fn resolvend_inverse<R: CoeffAlgebra>(r: &GroupRingElement<R>) -> GroupMap<R> {
    let g = &r.group;
    GroupMap::from_fn(g, |s| r.coeffs[g.index_of(&g.inverse(s))].clone())
}

/// `(a | chi) = sum_s a(s) chi(s)^{-1}`.
pub fn resolvent<R: CoeffAlgebra>(a: &GroupMap<R>, chi: &Character) -> R {
    let g = &a.group;
    let m = g.exponent();
    g.elements().zip(&a.values).fold(R::zero(), |acc, (s, v)| {
        if v.is_zero() {
            acc
        } else {
            acc.add_elem(&v.mul_root(m, -(g.char_exponent(chi, &s) as i64)))
        }
    })
}

/// All resolvents, over `Ĝ` in enumeration order.
pub fn transform<R: CoeffAlgebra>(a: &GroupMap<R>) -> CharacterVector<R> {
    let values = a.group.dual_enumerate().par_iter().map(|chi| resolvent(a, chi)).collect();
    CharacterVector { group: a.group.clone(), values }
}

/// `a(s) = |G|^{-1} sum_chi phi(chi) chi(s)`.
pub fn inverse_transform<R: CoeffAlgebra>(phi: &CharacterVector<R>) -> GroupMap<R> {
    let g = &phi.group;
    let m = g.exponent();
    let chars = g.dual_enumerate();
    let values = g
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|s| {
            chars
                .iter()
                .zip(&phi.values)
                .fold(R::zero(), |acc, (chi, v)| acc.add_elem(&v.mul_root(m, g.char_exponent(chi, s) as i64)))
                .div_int(g.order())
        })
        .collect();
    GroupMap { group: g.clone(), values }
}

impl<R: CoeffAlgebra> CharacterVector<R> {
    pub fn new(group: FiniteAbelianGroup, values: Vec<R>) -> Result<Self> {
        check_len(&group, values.len())?;
        Ok(Self { group, values })
    }

    pub fn from_fn(group: &FiniteAbelianGroup, f: impl Fn(&Character) -> R) -> Self {
        Self { values: group.dual_enumerate().iter().map(f).collect(), group: group.clone() }
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn value(&self, chi: &Character) -> &R {
        &self.values[self.group.character_index(chi)]
    }

    pub fn pointwise_mul(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.mul_elem(b)).collect();
        Self { group: self.group.clone(), values }
    }

    /// JSON array of values over `Ĝ` in enumeration order.
    pub fn to_json(&self) -> Value {
        Value::Array(self.values.iter().map(R::to_json).collect())
    }
}

impl<R: CoeffAlgebra> GroupRingElement<R> {
    pub fn new(group: FiniteAbelianGroup, coeffs: Vec<R>) -> Result<Self> {
        check_len(&group, coeffs.len())?;
        Ok(Self { group, coeffs })
    }

    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        Self { group: group.clone(), coeffs: vec![R::zero(); group.len()] }
    }

    /// The basis element `s`.
    pub fn basis(group: &FiniteAbelianGroup, s: &GroupElement) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[group.index_of(s)] = R::one();
        x
    }

    pub fn one(group: &FiniteAbelianGroup) -> Self {
        Self::basis(group, &group.identity())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, s: &GroupElement) -> &R {
        &self.coeffs[self.group.index_of(s)]
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add_elem(b)).collect();
        Self { group: self.group.clone(), coeffs }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self { group: self.group.clone(), coeffs: self.coeffs.iter().map(|a| a.mul_elem(c)).collect() }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        let g = &self.group;
        let elems: Vec<_> = g.elements().collect();
        let coeffs = elems
            .par_iter()
            .map(|u| {
                let pairs: Vec<_> = elems
                    .iter()
                    .zip(&self.coeffs)
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(s, a)| (a, &other.coeffs[g.index_of(&g.op(u, &g.inverse(s)))]))
                    .filter(|(_, b)| !b.is_zero())
                    .collect();
                R::sum_of_products(&pairs)
            })
            .collect();
        Self { group: g.clone(), coeffs }
    }

    /// `self * s`, i.e. the coefficients translated by `s`.
    pub fn translate(&self, s: &GroupElement) -> Self {
        let g = &self.group;
        let mut coeffs = vec![R::zero(); g.len()];
        for (t, c) in g.elements().zip(&self.coeffs) {
            coeffs[g.index_of(&g.op(&t, s))] = c.clone();
        }
        Self { group: g.clone(), coeffs }
    }

    /// Value under the algebra map extending `chi`: `sum_t r_t chi(t)`.
    pub fn evaluate(&self, chi: &Character) -> R {
        let g = &self.group;
        let m = g.exponent();
        g.elements().zip(&self.coeffs).fold(R::zero(), |acc, (t, c)| {
            if c.is_zero() {
                acc
            } else {
                acc.add_elem(&c.mul_root(m, g.char_exponent(chi, &t) as i64))
            }
        })
    }

    pub fn character_values(&self) -> CharacterVector<R> {
        CharacterVector::from_fn(&self.group, |chi| self.evaluate(chi))
    }

    /// The involution `[-1]` induced by `s -> s^{-1}`.
    pub fn involution(&self) -> Self {
        let g = &self.group;
        let mut coeffs = vec![R::zero(); g.len()];
        for (s, c) in g.elements().zip(&self.coeffs) {
            coeffs[g.index_of(&g.inverse(&s))] = c.clone();
        }
        Self { group: g.clone(), coeffs }
    }

    /// A unit exactly when no character value vanishes.
    pub fn is_unit(&self) -> bool {
        self.group.dual_enumerate().par_iter().all(|chi| !self.evaluate(chi).is_zero())
    }

    /// Multiplicative inverse, built from pointwise inverses of the
    /// character values.
    pub fn inverse(&self) -> Result<Self> {
        let values = self
            .character_values()
            .values
            .iter()
            .map(|v| v.try_inverse().ok_or(Error::NotUnitElement("group-ring element")))
            .collect::<Result<Vec<_>>>()?;
        let phi = CharacterVector { group: self.group.clone(), values };
        Ok(resolvend(&inverse_transform(&phi)))
    }
}

/// The `s` with `r2 = r1 * s`, if any; equality of reduced resolvends.
pub fn reduced_equal<R: CoeffAlgebra>(
    r1: &GroupRingElement<R>,
    r2: &GroupRingElement<R>,
) -> Result<Option<GroupElement>> {
    if !r1.is_unit() {
        return Err(Error::NotUnitElement("first argument"));
    }
    if !r2.is_unit() {
        return Err(Error::NotUnitElement("second argument"));
    }
    Ok(r1.group.elements().find(|s| &r1.translate(s) == r2))
}

/// `(a | chi) (a | chi^{-1})` for every character.
pub fn unit_pair_products<R: CoeffAlgebra>(a: &GroupMap<R>) -> CharacterVector<R> {
    let phi = transform(a);
    let g = &a.group;
    CharacterVector::from_fn(g, |chi| phi.value(chi).mul_elem(phi.value(&g.char_inverse(chi))))
}

/// Whether `(a | chi) (a | chi^{-1}) != 0` for all `chi`.
pub fn unit_pair_check<R: CoeffAlgebra>(a: &GroupMap<R>) -> bool {
    unit_pair_products(a).values.iter().all(|v| !v.is_zero())
}
