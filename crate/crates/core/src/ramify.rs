//! Lower-numbering ramification filtrations as order sequences.
//!
//! A filtration is `g_0 >= g_1 >= ... >= g_T = 1`, each order dividing the
//! previous one, with every later group trivial. Hilbert's formula gives the
//! valuation of the different as `sum_n (g_n - 1)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{divisors, exact_power_base, is_prime};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RamificationFiltration {
    /// Ends with exactly one trailing 1.
    orders: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RamificationClass {
    Unramified,
    Tame,
    WeakWild,
    DeepWild,
}

impl fmt::Display for RamificationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Unramified => "unramified",
            Self::Tame => "tame",
            Self::WeakWild => "weak-wild",
            Self::DeepWild => "deep-wild",
        })
    }
}

impl RamificationFiltration {
    /// Accepts the orders with or without the terminal 1; trailing 1s are
    /// collapsed.
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidFiltration("empty".into()));
        }
        if orders.contains(&0) {
            return Err(Error::InvalidFiltration("orders must be positive".into()));
        }
        if let Some(w) = orders.windows(2).find(|w| w[0] % w[1] != 0) {
            return Err(Error::InvalidFiltration(format!("{} is not divisible by {}", w[0], w[1])));
        }
        let mut orders = orders;
        while orders.len() > 1 && orders[orders.len() - 2] == 1 {
            orders.pop();
        }
        if *orders.last().expect("nonempty") != 1 {
            orders.push(1);
        }
        Ok(Self { orders })
    }

    pub fn unramified() -> Self {
        Self { orders: vec![1] }
    }

    /// `g_n`, including the trivial tail.
    pub fn order(&self, n: usize) -> u64 {
        self.orders.get(n).copied().unwrap_or(1)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Hilbert's formula.
    pub fn different_valuation(&self) -> u64 {
        self.orders.iter().map(|g| g - 1).sum()
    }

    /// The different as `sum of i(sigma)` over nontrivial elements: the
    /// `g_k - g_{k+1}` elements of `G_k` outside `G_{k+1}` each count `k + 1`.
    pub fn different_valuation_by_jumps(&self) -> u64 {
        (0..self.orders.len()).map(|k| (self.orders[k] - self.order(k + 1)) * (k as u64 + 1)).sum()
    }

    pub fn classify(&self) -> RamificationClass {
        match (self.order(0), self.order(1), self.order(2)) {
            (1, _, _) => RamificationClass::Unramified,
            (_, 1, _) => RamificationClass::Tame,
            (_, _, 1) => RamificationClass::WeakWild,
            _ => RamificationClass::DeepWild,
        }
    }

    /// Valuation `1 - g_0` of the square root of the inverse different for
    /// a weakly ramified abelian extension with residue characteristic `p`.
    ///
    /// Rejects filtrations that cannot occur: `g_0 != g_1`, or `g_0` not a
    /// power of `p`.
    pub fn sqrt_inverse_different_valuation(&self, p: u64) -> Result<i64> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if self.classify() != RamificationClass::WeakWild {
            return Err(Error::NotWeakWild("filtration is not weakly wildly ramified"));
        }
        let (g0, g1) = (self.order(0), self.order(1));
        if g0 != g1 {
            return Err(Error::InconsistentFiltration(format!("g0 = {g0} differs from g1 = {g1}")));
        }
        if exact_power_base(g0, p).is_none() {
            return Err(Error::InconsistentFiltration(format!("g0 = {g0} is not a power of {p}")));
        }
        let v = self.different_valuation();
        if !v.is_multiple_of(2) || v != 2 * (g0 - 1) {
            return Err(Error::InconsistentFiltration(format!("different valuation {v} is not 2(g0 - 1)")));
        }
        Ok(1 - g0 as i64)
    }

    /// Every filtration with `g_0 <= max_order` and at most `max_steps` terms
    /// before the terminal 1, sorted.
    pub fn enumerate(max_order: u64, max_steps: usize) -> Vec<Self> {
        let mut out: Vec<Self> = (1..=max_order)
            .into_par_iter()
            .flat_map_iter(|g0| {
                let mut found = Vec::new();
                let mut prefix = vec![g0];
                extend(&mut prefix, max_steps, &mut found);
                found
            })
            .collect();
        out.sort();
        out
    }
}

fn extend(prefix: &mut Vec<u64>, max_steps: usize, found: &mut Vec<RamificationFiltration>) {
    let last = *prefix.last().expect("nonempty");
    if last == 1 {
        found.push(RamificationFiltration { orders: prefix.clone() });
        return;
    }
    if prefix.len() == max_steps {
        prefix.push(1);
        found.push(RamificationFiltration { orders: prefix.clone() });
        prefix.pop();
        return;
    }
    for next in divisors(last) {
        prefix.push(next);
        extend(prefix, max_steps, found);
        prefix.pop();
    }
}

impl fmt::Display for RamificationFiltration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for RamificationFiltration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let orders = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|e| Error::InvalidFiltration(format!("{x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> RamificationFiltration {
        s.parse().unwrap()
    }

    #[test]
    fn different_examples() {
        assert_eq!(RamificationFiltration::unramified().different_valuation(), 0);
        assert_eq!(f("1").different_valuation(), 0);
        assert_eq!(f("5,1").different_valuation(), 4);
        assert_eq!(f("3,3,1").different_valuation(), 4);
        assert_eq!(f("3,3").different_valuation(), 4);
        assert_eq!(f("9,3,3,1,1").orders(), &[9, 3, 3, 1]);
    }

    #[test]
    fn jump_count_agrees() {
        for fil in RamificationFiltration::enumerate(36, 4) {
            assert_eq!(fil.different_valuation(), fil.different_valuation_by_jumps(), "{fil}");
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(f("1").classify(), RamificationClass::Unramified);
        assert_eq!(f("5,1").classify(), RamificationClass::Tame);
        assert_eq!(f("9,9,1").classify(), RamificationClass::WeakWild);
        assert_eq!(f("9,3,1").classify(), RamificationClass::WeakWild);
        assert_eq!(f("9,9,3,1").classify(), RamificationClass::DeepWild);
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(f("3,3,1").sqrt_inverse_different_valuation(3), Ok(-2));
        assert_eq!(f("9,9,1").sqrt_inverse_different_valuation(3), Ok(-8));
        assert!(matches!(f("6,6,1").sqrt_inverse_different_valuation(3), Err(Error::InconsistentFiltration(_))));
        assert!(matches!(f("9,3,1").sqrt_inverse_different_valuation(3), Err(Error::InconsistentFiltration(_))));
        assert!(matches!(f("5,1").sqrt_inverse_different_valuation(5), Err(Error::NotWeakWild(_))));
        assert!(f("9,9,1").sqrt_inverse_different_valuation(9).is_err());
    }

    #[test]
    fn malformed_filtrations() {
        assert!(RamificationFiltration::new(vec![]).is_err());
        assert!(RamificationFiltration::new(vec![6, 4, 1]).is_err());
        assert!(RamificationFiltration::new(vec![3, 9, 1]).is_err());
        assert!(RamificationFiltration::new(vec![0]).is_err());
        assert!("3,x".parse::<RamificationFiltration>().is_err());
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        let all = RamificationFiltration::enumerate(12, 3);
        let mut chains: Vec<_> = (1..=12u64)
            .flat_map(|a| (1..=a).flat_map(move |b| (1..=b).map(move |c| (a, b, c))))
            .filter(|(a, b, c)| a % b == 0 && b % c == 0)
            .map(|(a, b, c)| RamificationFiltration::new(vec![a, b, c]).unwrap())
            .collect();
        chains.sort();
        chains.dedup();
        assert_eq!(chains, all);
    }
}
