//! Finite abelian groups given by invariant factors, and their duals.
//!
//! Elements and characters are coordinate tuples reduced modulo the
//! invariant factors `d_1 | d_2 | ... | d_r`. The pairing is pinned to
//!
//! ```text
//! chi(s) = zeta_m ^ (sum_i (m / d_i) * chi_i * s_i),   m = exp(G) = d_r
//! ```
//!
//! so every character value is an explicit power of `zeta_m` and all
//! downstream identities stay exact.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{gcd, lcm, modulo, prime_factors};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl Character {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidGroup(format!("invariant factor {d} < 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!("{} does not divide {}", w[0], w[1])));
        }
        let order = factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidGroup("order overflows".into()))?;
        Ok(Self { factors, order })
    }

    pub fn trivial() -> Self {
        Self { factors: Vec::new(), order: 1 }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        match n {
            0 => Err(Error::InvalidGroup("cyclic group of order 0".into())),
            1 => Ok(Self::trivial()),
            _ => Self::new(vec![n]),
        }
    }

    /// `(Z/p)^r`.
    pub fn elementary(p: u64, rank: usize) -> Result<Self> {
        Self::new(vec![p; rank])
    }

    /// `Z/n_1 x ... x Z/n_k` for arbitrary `n_i >= 2`, brought to invariant
    /// factors. Returns the group together with the images of the standard
    /// generators, so that coordinates in the original product can be
    /// mapped over with [`FiniteAbelianGroup::combine`].
    pub fn from_cyclic_factors(cyclic: &[u64]) -> Result<(Self, Vec<GroupElement>)> {
        if let Some(&n) = cyclic.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!("cyclic factor {n} < 2")));
        }
        // (prime, prime power, source factor) for every primary component
        let mut parts: Vec<(u64, u64, usize)> = Vec::new();
        for (i, &n) in cyclic.iter().enumerate() {
            for q in prime_factors(n) {
                let mut qa = 1;
                while n % (qa * q) == 0 {
                    qa *= q;
                }
                parts.push((q, qa, i));
            }
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let mut counts = std::collections::HashMap::new();
        for (q, _, _) in &parts {
            *counts.entry(*q).or_insert(0usize) += 1;
        }
        let rank = counts.values().copied().max().unwrap_or(0);
        // the j-th largest q-power goes to slot rank-1-j
        let mut factors = vec![1u64; rank];
        let mut slots = Vec::with_capacity(parts.len());
        let mut seen = 0;
        for (k, &(q, qa, _)) in parts.iter().enumerate() {
            if k > 0 && parts[k - 1].0 != q {
                seen = 0;
            }
            let slot = rank - 1 - seen;
            factors[slot] *= qa;
            slots.push(slot);
            seen += 1;
        }
        let group = Self::new(factors)?;
        let mut images = vec![vec![0u64; rank]; cyclic.len()];
        for (&(_, qa, i), &slot) in parts.iter().zip(&slots) {
            images[i][slot] = (images[i][slot] + group.factors[slot] / qa) % group.factors[slot];
        }
        Ok((group, images.into_iter().map(GroupElement).collect()))
    }

    /// `prod_i images[i]^{coords[i]}`.
    pub fn combine(&self, images: &[GroupElement], coords: &[i64]) -> GroupElement {
        images.iter().zip(coords).fold(self.identity(), |acc, (x, &k)| self.op(&acc, &self.pow(x, k)))
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.order as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_odd_order(&self) -> bool {
        self.order % 2 == 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.reduce(coords).map(GroupElement)
    }

    fn reduce(&self, coords: &[i64]) -> Result<Vec<u64>> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidArgument(format!("expected {} coordinates, got {}", self.rank(), coords.len())));
        }
        Ok(coords.iter().zip(&self.factors).map(|(&c, &d)| modulo(c, d)).collect())
    }

    /// The element at position `index` of the enumeration order (last
    /// coordinate varies fastest).
    pub fn element_at(&self, index: usize) -> GroupElement {
        GroupElement(self.unrank(index))
    }

    pub fn index_of(&self, s: &GroupElement) -> usize {
        self.rank_of(&s.0)
    }

    fn unrank(&self, mut index: usize) -> Vec<u64> {
        let mut coords = vec![0; self.rank()];
        for (c, &d) in coords.iter_mut().zip(&self.factors).rev() {
            *c = (index as u64) % d;
            index /= d as usize;
        }
        coords
    }

    fn rank_of(&self, coords: &[u64]) -> usize {
        coords.iter().zip(&self.factors).fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.len()).map(|i| self.element_at(i))
    }

    pub fn op(&self, s: &GroupElement, t: &GroupElement) -> GroupElement {
        GroupElement(s.0.iter().zip(&t.0).zip(&self.factors).map(|((&a, &b), &d)| (a + b) % d).collect())
    }

    pub fn inverse(&self, s: &GroupElement) -> GroupElement {
        self.pow(s, -1)
    }

    pub fn pow(&self, s: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            s.0.iter()
                .zip(&self.factors)
                .map(|(&a, &d)| (a as i128 * k as i128).rem_euclid(d as i128) as u64)
                .collect(),
        )
    }

    /// Least `k >= 1` with `s^k = 1`.
    pub fn element_order(&self, s: &GroupElement) -> u64 {
        s.0.iter().zip(&self.factors).fold(1, |acc, (&a, &d)| lcm(acc, d / gcd(a, d)))
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    pub fn character(&self, coords: &[i64]) -> Result<Character> {
        self.reduce(coords).map(Character)
    }

    pub fn character_at(&self, index: usize) -> Character {
        Character(self.unrank(index))
    }

    pub fn character_index(&self, chi: &Character) -> usize {
        self.rank_of(&chi.0)
    }

    /// All of `Ĝ`, in the same mixed-radix order as [`Self::elements`].
    pub fn dual_enumerate(&self) -> Vec<Character> {
        (0..self.len()).map(|i| self.character_at(i)).collect()
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character(self.op(&GroupElement(a.0.clone()), &GroupElement(b.0.clone())).0)
    }

    pub fn char_pow(&self, chi: &Character, k: i64) -> Character {
        Character(self.pow(&GroupElement(chi.0.clone()), k).0)
    }

    pub fn char_inverse(&self, chi: &Character) -> Character {
        self.char_pow(chi, -1)
    }

    /// `k mod m` with `chi(s) = zeta_m^k`, `m = exp(G)`.
    pub fn char_exponent(&self, chi: &Character, s: &GroupElement) -> u64 {
        let m = self.exponent();
        let sum: u128 = chi
            .0
            .iter()
            .zip(&s.0)
            .zip(&self.factors)
            .map(|((&c, &x), &d)| (m / d) as u128 * c as u128 * x as u128)
            .sum();
        (sum % m as u128) as u64
    }

    /// `table[chi][s]` = `char_exponent(chi, s)` over the enumeration orders.
    pub fn exponent_table(&self) -> Vec<Vec<u64>> {
        let elements: Vec<_> = self.elements().collect();
        self.dual_enumerate().iter().map(|chi| elements.iter().map(|s| self.char_exponent(chi, s)).collect()).collect()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Parses comma-separated invariant factors such as `"3,9"`. `"1"` and the
/// empty string denote the trivial group.
impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Self::trivial());
        }
        let factors = s
            .split(',')
            .map(|part| {
                part.trim().parse::<u64>().map_err(|_| Error::InvalidGroup(format!("bad factor {part:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "chi({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(g: &FiniteAbelianGroup, s: &GroupElement) -> u64 {
        let mut x = s.clone();
        let mut k = 1;
        while x != g.identity() {
            x = g.op(&x, s);
            k += 1;
        }
        k
    }

    #[test]
    fn element_orders() {
        let z9: FiniteAbelianGroup = "9".parse().unwrap();
        assert_eq!(z9.element_order(&z9.identity()), 1);
        assert_eq!(z9.element_order(&z9.element(&[3]).unwrap()), 3);
        let g = FiniteAbelianGroup::new(vec![3, 15]).unwrap();
        for s in g.elements() {
            assert_eq!(g.element_order(&s), brute_order(&g, &s));
            assert_eq!(g.exponent() % g.element_order(&s), 0);
        }
        assert!(g.elements().any(|s| g.element_order(&s) == g.exponent()));
    }

    #[test]
    fn cyclic_factor_normalization() {
        let (g, images) = FiniteAbelianGroup::from_cyclic_factors(&[3, 5]).unwrap();
        assert_eq!(g.factors(), &[15]);
        assert_eq!(g.element_order(&g.combine(&images, &[1, 1])), 15);
        for (cyclic, expected) in
            [(vec![2, 3, 4], vec![2, 12]), (vec![9, 3, 5], vec![3, 45]), (vec![6, 10], vec![2, 30])]
        {
            let (g, images) = FiniteAbelianGroup::from_cyclic_factors(&cyclic).unwrap();
            assert_eq!(g.factors(), &expected[..]);
            // the coordinate map is a bijective homomorphism
            let mut hit = std::collections::HashSet::new();
            let mut coords = vec![0i64; cyclic.len()];
            loop {
                hit.insert(g.combine(&images, &coords));
                let mut i = 0;
                while i < cyclic.len() {
                    coords[i] += 1;
                    if coords[i] < cyclic[i] as i64 {
                        break;
                    }
                    coords[i] = 0;
                    i += 1;
                }
                if i == cyclic.len() {
                    break;
                }
            }
            assert_eq!(hit.len(), g.len());
            for (x, &n) in images.iter().zip(&cyclic) {
                assert_eq!(g.element_order(x), n);
            }
        }
        assert_eq!(FiniteAbelianGroup::from_cyclic_factors(&[]).unwrap().0, FiniteAbelianGroup::trivial());
    }

    #[test]
    fn char_exponent_examples() {
        let z3 = FiniteAbelianGroup::cyclic(3).unwrap();
        let chi = z3.character(&[1]).unwrap();
        assert_eq!(z3.char_exponent(&chi, &z3.element(&[1]).unwrap()), 1);
        assert_eq!(z3.char_exponent(&chi, &z3.identity()), 0);
        let g = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let chi = g.character(&[1, 2]).unwrap();
        assert_eq!(g.char_exponent(&chi, &g.element(&[2, 2]).unwrap()), 0);
    }

    #[test]
    fn char_exponent_is_bilinear() {
        let g = FiniteAbelianGroup::new(vec![2, 6, 12]).unwrap();
        let m = g.exponent();
        let elems: Vec<_> = g.elements().step_by(7).collect();
        for chi in g.dual_enumerate().iter().step_by(5) {
            for s in &elems {
                for t in &elems {
                    let lhs = g.char_exponent(chi, &g.op(s, t));
                    let rhs = (g.char_exponent(chi, s) + g.char_exponent(chi, t)) % m;
                    assert_eq!(lhs, rhs);
                }
                for (a, b) in [(2i64, 3i64), (-1, 5), (7, -2)] {
                    let lhs = g.char_exponent(&g.char_pow(chi, a), &g.pow(s, b));
                    let rhs = modulo(a * b * g.char_exponent(chi, s) as i64, m);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn enumeration_roundtrip() {
        let g: FiniteAbelianGroup = "2,4".parse().unwrap();
        assert_eq!(g.order(), 8);
        for (i, s) in g.elements().enumerate() {
            assert_eq!(g.index_of(&s), i);
        }
        assert_eq!(FiniteAbelianGroup::trivial().dual_enumerate().len(), 1);
    }

    #[test]
    fn literals() {
        assert!("3,9".parse::<FiniteAbelianGroup>().is_ok());
        assert!("9,3".parse::<FiniteAbelianGroup>().is_err());
        assert!("3,x".parse::<FiniteAbelianGroup>().is_err());
        assert!("0".parse::<FiniteAbelianGroup>().is_err());
        assert_eq!("1".parse::<FiniteAbelianGroup>().unwrap().order(), 1);
    }
}
