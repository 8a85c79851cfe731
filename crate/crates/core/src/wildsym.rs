//! Formal unit symbols `y_i` with `Q(zeta_p)` coefficients, and the
//! normal-basis generator built from them.
//!
//! A context fixes `p`, `n | p - 1`, `R_n = (F_p^x)^n` and `d = (p-1)/n mod p`.
//! The generator is
//!
//! ```text
//! alpha = (1/p) sum_{k in F_p} M(k),   M(k) = prod_{i in R_n} y_i^{c(i^{-1} k)}
//! ```
//!
//! with `c` the symmetric representative. `tau` acts by `y_i -> zeta^i y_i`
//! and fixes coefficients; `omega_j` sends `y_i -> y_{ij}` and `zeta -> zeta^j`.
//! The resolvent `sum_j tau^j(alpha) zeta^{-jk}` collapses to the single
//! monomial `M(d^{-1} k)`, which is also the value at `chi_k` of the
//! Stickelberger transpose of `g(t^{d^{-1} i^{-1}}) = y_i^p`.
//!
//! Several contexts over the same prime may coexist as long as they use
//! different symbol families.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::abelian::FiniteAbelianGroup;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::gauss::ResidueSubgroup;
use crate::groupring::{self, CoeffAlgebra, GroupMap};
use crate::numtheory::{mod_inverse, mod_mul, modulo, symmetric_residue};
use crate::scalar::FieldScalar;
use crate::stickelberger::{transpose_apply, EquivariantMap, MultiplicativeValue, VirtualCharacter};

/// `c(i)`: the representative of `i mod p` in `[(1-p)/2, (p-1)/2]`.
pub fn c_of(i: i64, p: u64) -> i64 {
    symmetric_residue(i, p)
}

/// The symbol `y_index` of a family, indices taken mod `prime`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub prime: u64,
    pub family: u32,
    pub index: u64,
}

/// A Laurent monomial in the symbols; zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WildMonomial(BTreeMap<Symbol, i64>);

impl WildMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn symbol(sym: Symbol) -> Self {
        Self::from_exponents([(sym, 1)])
    }

    pub fn from_exponents(terms: impl IntoIterator<Item = (Symbol, i64)>) -> Self {
        let mut m = BTreeMap::new();
        for (s, e) in terms {
            *m.entry(s).or_insert(0) += e;
        }
        m.retain(|_, e| *e != 0);
        Self(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, sym: &Symbol) -> i64 {
        self.0.get(sym).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&Symbol, &i64)> {
        self.0.iter()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_exponents(self.0.iter().chain(&other.0).map(|(&s, &e)| (s, e)))
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::from_exponents(self.0.iter().map(|(&s, &e)| (s, e * k)))
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    /// `sum i * m_i` over one family, the exponent of `zeta` picked up under `tau`.
    pub fn weight(&self, family: u32) -> i64 {
        self.0.iter().filter(|(s, _)| s.family == family).map(|(s, &e)| s.index as i64 * e).sum()
    }

    /// `y_i -> y_{ij}` in every family.
    pub fn permute(&self, j: u64) -> Self {
        Self::from_exponents(
            self.0.iter().map(|(&s, &e)| (Symbol { index: mod_mul(s.index, j % s.prime, s.prime), ..s }, e)),
        )
    }

    fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().map(|s| s.prime)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|(s, &e)| json!({ "family": s.family, "index": s.index, "exp": e })).collect())
    }
}

impl fmt::Display for WildMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, &e)| {
                let name = if s.family == 0 { format!("y{}", s.index) } else { format!("y{}_{}", s.family, s.index) };
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl MultiplicativeValue for WildMonomial {
    fn one() -> Self {
        WildMonomial::one()
    }
    fn mul(&self, other: &Self) -> Self {
        WildMonomial::mul(self, other)
    }
    fn pow(&self, k: i64) -> Result<Self> {
        Ok(WildMonomial::pow(self, k))
    }
    fn galois(&self, u: u64) -> Result<Self> {
        if let Some(p) = self.primes().find(|&p| u.is_multiple_of(p)) {
            return Err(Error::NotAUnit { value: u, modulus: p });
        }
        Ok(self.permute(u))
    }
    fn root(&self, k: u64) -> Option<Self> {
        let k = k as i64;
        self.0.values().all(|e| e % k == 0).then(|| Self(self.0.iter().map(|(&s, &e)| (s, e / k)).collect()))
    }
}

/// A finite sum of monomials with cyclotomic coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct WildElement<Q: FieldScalar> {
    terms: BTreeMap<WildMonomial, Cyclo<Q>>,
}

impl<Q: FieldScalar> WildElement<Q> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn monomial(m: WildMonomial, coeff: Cyclo<Q>) -> Self {
        let mut x = Self::zero();
        x.add_term(m, coeff);
        x
    }

    pub fn constant(coeff: Cyclo<Q>) -> Self {
        Self::monomial(WildMonomial::one(), coeff)
    }

    fn add_term(&mut self, m: WildMonomial, coeff: Cyclo<Q>) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WildMonomial, &Cyclo<Q>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The only term, when there is exactly one.
    pub fn single_term(&self) -> Option<(&WildMonomial, &Cyclo<Q>)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().expect("one term"))
    }

    pub fn map_terms(&self, f: impl Fn(&WildMonomial, &Cyclo<Q>) -> (WildMonomial, Cyclo<Q>)) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (m, c) = f(m, c);
            out.add_term(m, c);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(m, c)| json!({ "monomial": m.to_json(), "coeff": c.to_json() })).collect())
    }
}

impl<Q: FieldScalar> fmt::Display for WildElement<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<Q: FieldScalar> CoeffAlgebra for WildElement<Q> {
    fn zero() -> Self {
        WildElement::zero()
    }
    fn one() -> Self {
        WildElement::constant(Cyclo::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_elem(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub_elem(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
    fn mul_elem(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
    fn mul_root(&self, n: u64, k: i64) -> Self {
        self.map_terms(|m, c| (m.clone(), c.mul_root(n, k)))
    }
    fn div_int(&self, n: u64) -> Self {
        self.map_terms(|m, c| (m.clone(), c.div_int(n)))
    }
    /// Units of a Laurent ring over a field are the scaled monomials.
    fn try_inverse(&self) -> Option<Self> {
        let (m, c) = self.single_term()?;
        Some(Self::monomial(m.inverse(), c.inverse().ok()?))
    }
    fn to_json(&self) -> Value {
        WildElement::to_json(self)
    }
}

/// `p`, `n`, `R_n` and `d` for one symbol family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WildContext {
    p: u64,
    n: u64,
    family: u32,
    r_n: ResidueSubgroup,
    d: u64,
    d_inv: u64,
}

impl WildContext {
    pub fn new(p: u64, n: u64) -> Result<Self> {
        Self::with_family(p, n, 0)
    }

    pub fn with_family(p: u64, n: u64, family: u32) -> Result<Self> {
        let r_n = ResidueSubgroup::new(p, n)?;
        let d = (p - 1) / n % p;
        let d_inv = mod_inverse(d, p).expect("0 < d < p");
        Ok(Self { p, n, family, r_n, d, d_inv })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn index(&self) -> u64 {
        self.n
    }

    pub fn family(&self) -> u32 {
        self.family
    }

    pub fn residues(&self) -> &[u64] {
        self.r_n.elements()
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn d_inv(&self) -> u64 {
        self.d_inv
    }

    pub fn symbol(&self, i: u64) -> Symbol {
        Symbol { prime: self.p, family: self.family, index: i % self.p }
    }

    fn inv(&self, i: u64) -> u64 {
        mod_inverse(i, self.p).expect("residues are units")
    }

    /// `M(k) = prod_{i in R_n} y_i^{c(i^{-1} k)}`.
    pub fn summand(&self, k: i64) -> WildMonomial {
        let k = modulo(k, self.p);
        WildMonomial::from_exponents(
            self.residues().iter().map(|&i| (self.symbol(i), c_of(mod_mul(self.inv(i), k, self.p) as i64, self.p))),
        )
    }

    /// The monomial the resolvent at `chi_k` must collapse to, `M(d^{-1} k)`.
    pub fn expected_resolvent(&self, k: i64) -> WildMonomial {
        self.summand(mod_mul(self.d_inv, modulo(k, self.p), self.p) as i64)
    }

    /// The cyclic group `<t>` of order `p`.
    pub fn group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(self.p).expect("p >= 3")
    }
}

/// `tau^j` on the context's family: a monomial picks up `zeta^{j * weight}`.
pub fn tau_action<Q: FieldScalar>(ctx: &WildContext, j: i64, x: &WildElement<Q>) -> WildElement<Q> {
    let p = ctx.p;
    x.map_terms(|m, c| (m.clone(), c.mul_root(p, j * m.weight(ctx.family))))
}

/// `omega_j`: `y_i -> y_{ij}` and `zeta -> zeta^j`.
pub fn omega_action<Q: FieldScalar>(p: u64, j: i64, x: &WildElement<Q>) -> Result<WildElement<Q>> {
    let j = modulo(j, p);
    if j == 0 {
        return Err(Error::NotAUnit { value: j, modulus: p });
    }
    let mut out = WildElement::zero();
    for (m, c) in x.terms() {
        out.add_term(m.permute(j), c.galois_map(j as i64)?);
    }
    Ok(out)
}

pub fn build_alpha<Q: FieldScalar>(ctx: &WildContext) -> WildElement<Q> {
    let mut alpha = WildElement::zero();
    let coeff = Cyclo::constant(Q::from_fraction(1, ctx.p as i64));
    for k in 0..ctx.p as i64 {
        alpha.add_term(ctx.summand(k), coeff.clone());
    }
    alpha
}

/// `tau^j(M(k)) = zeta^{jkd} M(k)`, checked both on exponents and through
/// the realized action.
pub fn conjugate_check<Q: FieldScalar>(ctx: &WildContext, j: i64, k: i64) -> bool {
    let p = ctx.p;
    let m = ctx.summand(k);
    let exponent_ok = modulo(m.weight(ctx.family), p) == mod_mul(modulo(k, p), ctx.d, p);
    let x = WildElement::<Q>::monomial(m.clone(), Cyclo::one());
    let expected = WildElement::monomial(m, Cyclo::root_of_unity(p, j * k * ctx.d as i64));
    exponent_ok && tau_action(ctx, j, &x) == expected
}

/// The map `a(t^j) = tau^j(alpha)` on `<t>`.
pub fn alpha_map<Q: FieldScalar>(ctx: &WildContext) -> GroupMap<WildElement<Q>> {
    let alpha = build_alpha::<Q>(ctx);
    GroupMap::from_fn(&ctx.group(), |s| tau_action(ctx, s.coords()[0] as i64, &alpha))
}

/// `sum_{j in F_p} tau^j(alpha) zeta^{-jk}`, summed literally.
pub fn resolvent_at<Q: FieldScalar>(ctx: &WildContext, k: i64) -> WildElement<Q> {
    let alpha = build_alpha::<Q>(ctx);
    (0..ctx.p as i64)
        .fold(WildElement::zero(), |acc, j| acc.add_elem(&tau_action(ctx, j, &alpha).mul_root(ctx.p, -j * k)))
}

/// The monomial of a resolvent, if it collapsed to one with coefficient 1.
pub fn as_unit_monomial<Q: FieldScalar>(x: &WildElement<Q>) -> Option<WildMonomial> {
    x.single_term().filter(|(_, c)| **c == Cyclo::one()).map(|(m, _)| m.clone())
}

/// `g(t^{d^{-1} i^{-1}}) = y_i^p` for `i in R_n`, and `1` elsewhere, on `G(-1)`.
pub fn build_g(ctx: &WildContext) -> EquivariantMap<WildMonomial> {
    let p = ctx.p;
    let mut values = vec![WildMonomial::one(); p as usize];
    for &i in ctx.residues() {
        let e = mod_mul(ctx.d_inv, ctx.inv(i), p);
        values[e as usize] = WildMonomial::symbol(ctx.symbol(i)).pow(p as i64);
    }
    EquivariantMap::new(ctx.group(), -1, values).expect("one value per element")
}

/// `prod_s g(s)^{<chi_k, s>}`.
pub fn transpose_eval_g(ctx: &WildContext, k: i64) -> Result<WildMonomial> {
    let group = ctx.group();
    let chi = group.character(&[k])?;
    transpose_apply(&build_g(ctx), &VirtualCharacter::from_character(&group, &chi))
}

/// Outcome of the checks for one context.
#[derive(Clone, Debug, PartialEq)]
pub struct ContextReport {
    pub alpha_invariant: bool,
    pub conjugates: bool,
    /// Per `k`: the collapsed resolvent, if it was a unit monomial.
    pub resolvents: Vec<Option<WildMonomial>>,
    pub matches_expected: Vec<bool>,
    pub matches_transpose: Vec<bool>,
    pub unit_pairs: bool,
    pub g_equivariant: bool,
}

impl ContextReport {
    pub fn passed(&self) -> bool {
        self.alpha_invariant
            && self.conjugates
            && self.unit_pairs
            && self.g_equivariant
            && self.matches_expected.iter().all(|&b| b)
            && self.matches_transpose.iter().all(|&b| b)
    }
}

/// Runs every single-context identity.
pub fn verify_context<Q: FieldScalar>(ctx: &WildContext) -> Result<ContextReport> {
    let p = ctx.p;
    let alpha = build_alpha::<Q>(ctx);
    let mut alpha_invariant = true;
    for &j in ctx.residues() {
        alpha_invariant &= omega_action(p, j as i64, &alpha)? == alpha;
    }
    let conjugates = (0..p as i64).all(|j| (0..p as i64).all(|k| conjugate_check::<Q>(ctx, j, k)));
    let resolvents: Vec<_> = (0..p as i64).map(|k| as_unit_monomial(&resolvent_at::<Q>(ctx, k))).collect();
    let matches_expected =
        (0..p as i64).map(|k| resolvents[k as usize].as_ref() == Some(&ctx.expected_resolvent(k))).collect();
    let matches_transpose = (0..p as i64)
        .map(|k| Ok(resolvents[k as usize].as_ref() == Some(&transpose_eval_g(ctx, k)?)))
        .collect::<Result<_>>()?;
    let unit_pairs = (0..p as i64).all(|k| {
        let back = resolvents[modulo(-k, p) as usize].as_ref();
        matches!((&resolvents[k as usize], back), (Some(a), Some(b)) if a.mul(b).is_one())
    });
    let g_equivariant = build_g(ctx).is_equivariant_over(ctx.residues())?;
    Ok(ContextReport {
        alpha_invariant,
        conjugates,
        resolvents,
        matches_expected,
        matches_transpose,
        unit_pairs,
        g_equivariant,
    })
}

/// One character of a composite check.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductRow {
    pub character: Vec<u64>,
    pub resolvent: Option<WildMonomial>,
    pub transpose: WildMonomial,
    pub pass: bool,
}

/// `G = (Z/p)^r` with one context per factor. The composite map
/// `a(s) = prod_i a_i(s_i)` is transformed over all of `G`, and its value at
/// `chi = (k_1, ..., k_r)` is compared with `prod_i` of the per-factor
/// transposes and with the product of the per-factor resolvents.
pub fn product_contexts<Q: FieldScalar>(ctxs: &[WildContext]) -> Result<Vec<ProductRow>> {
    let Some(first) = ctxs.first() else {
        return Err(Error::InvalidArgument("no contexts".into()));
    };
    let p = first.p;
    if ctxs.iter().any(|c| c.p != p) {
        return Err(Error::MixedPrimes);
    }
    let mut families: Vec<u32> = ctxs.iter().map(|c| c.family).collect();
    families.sort_unstable();
    families.dedup();
    if families.len() != ctxs.len() {
        return Err(Error::InvalidArgument("symbol families must be distinct".into()));
    }
    let group = FiniteAbelianGroup::elementary(p, ctxs.len())?;
    let factor_maps: Vec<_> = ctxs.iter().map(alpha_map::<Q>).collect();
    let composite = GroupMap::from_fn(&group, |s| {
        factor_maps.iter().zip(s.coords()).fold(WildElement::one(), |acc, (a, &c)| {
            acc.mul_elem(a.value(&a.group().element(&[c as i64]).expect("one coordinate")))
        })
    });
    let per_factor: Vec<Vec<WildElement<Q>>> =
        ctxs.iter().map(|ctx| (0..p as i64).map(|k| resolvent_at::<Q>(ctx, k)).collect()).collect();
    let transform = groupring::transform(&composite);
    group
        .dual_enumerate()
        .into_iter()
        .map(|chi| {
            let ks = chi.coords().to_vec();
            let transpose = ctxs.iter().zip(&ks).try_fold(WildMonomial::one(), |acc, (ctx, &k)| {
                Ok::<_, Error>(acc.mul(&transpose_eval_g(ctx, k as i64)?))
            })?;
            let via_group = transform.value(&chi);
            let via_factors =
                per_factor.iter().zip(&ks).fold(WildElement::one(), |acc, (r, &k)| acc.mul_elem(&r[k as usize]));
            let resolvent = as_unit_monomial(via_group);
            let pass = resolvent.as_ref() == Some(&transpose) && via_group == &via_factors;
            Ok(ProductRow { character: ks, resolvent, transpose, pass })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::numtheory::divisors;

    type Q = BigRational;
    type W = WildElement<Q>;

    fn y(ctx: &WildContext, i: u64, e: i64) -> (Symbol, i64) {
        (ctx.symbol(i), e)
    }

    fn random_element(rng: &mut ChaCha8Rng, ctx: &WildContext) -> W {
        let mut x = W::zero();
        for _ in 0..4 {
            let m =
                WildMonomial::from_exponents(ctx.residues().iter().map(|&i| (ctx.symbol(i), rng.gen_range(-2..=2))));
            let c = Cyclo::from_terms(
                ctx.p,
                [(rng.gen_range(0..ctx.p as i64), Q::from_fraction(rng.gen_range(-3..=3), 1))],
            );
            x.add_term(m, c);
        }
        x
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_of(0, 7), 0);
        assert_eq!(c_of(3, 7), 3);
        assert_eq!(c_of(4, 7), -3);
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            for i in 0..p as i64 {
                assert_eq!(c_of(i, p) + c_of(-i, p), 0);
                assert!(2 * c_of(i, p).unsigned_abs() < p);
            }
        }
    }

    #[test]
    fn tau_examples() {
        let ctx = WildContext::new(7, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let x = random_element(&mut rng, &ctx);
        assert_eq!(tau_action(&ctx, 0, &x), x);
        let mut z = x.clone();
        for _ in 0..7 {
            z = tau_action(&ctx, 1, &z);
        }
        assert_eq!(z, x);
        for &i in ctx.residues() {
            let yi = W::monomial(WildMonomial::symbol(ctx.symbol(i)), Cyclo::one());
            let norm = (0..7).fold(W::one(), |acc, k| acc.mul_elem(&tau_action(&ctx, k, &yi)));
            assert_eq!(norm, W::monomial(WildMonomial::symbol(ctx.symbol(i)).pow(7), Cyclo::one()));
        }
    }

    #[test]
    fn omega_examples() {
        let ctx = WildContext::new(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let x = random_element(&mut rng, &ctx);
        assert_eq!(omega_action(7, 1, &x).unwrap(), x);
        let y1 = W::monomial(WildMonomial::symbol(ctx.symbol(1)), Cyclo::one());
        for j in 1..7 {
            let yj = W::monomial(WildMonomial::symbol(ctx.symbol(j)), Cyclo::one());
            assert_eq!(omega_action(7, j as i64, &y1).unwrap(), yj);
        }
        assert!(omega_action(7, 0, &x).is_err());
        for _ in 0..10 {
            let x = random_element(&mut rng, &ctx);
            for j in 1..7i64 {
                for k in 1..7i64 {
                    let lhs = omega_action(7, j, &omega_action(7, k, &x).unwrap()).unwrap();
                    assert_eq!(lhs, omega_action(7, j * k, &x).unwrap());
                }
            }
        }
    }

    #[test]
    fn actions_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (p, n) in [(5, 1), (7, 2), (13, 3)] {
            let ctx = WildContext::new(p, n).unwrap();
            for _ in 0..5 {
                let x = random_element(&mut rng, &ctx);
                for &j in ctx.residues() {
                    for a in 0..p as i64 {
                        let lhs = tau_action(&ctx, a, &omega_action(p, j as i64, &x).unwrap());
                        let rhs = omega_action(p, j as i64, &tau_action(&ctx, a, &x)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn alpha_examples() {
        let ctx = WildContext::new(3, 2).unwrap();
        let third = Cyclo::constant(Q::from_fraction(1, 3));
        let expected = W::constant(third.clone())
            .add_elem(&W::monomial(WildMonomial::from_exponents([y(&ctx, 1, 1)]), third.clone()))
            .add_elem(&W::monomial(WildMonomial::from_exponents([y(&ctx, 1, -1)]), third));
        assert_eq!(build_alpha::<Q>(&ctx), expected);

        let ctx = WildContext::new(7, 2).unwrap();
        assert_eq!(ctx.residues(), &[1, 2, 4]);
        assert_eq!(ctx.summand(1), WildMonomial::from_exponents([y(&ctx, 1, 1), y(&ctx, 2, -3), y(&ctx, 4, 2)]));
        assert!(ctx.summand(0).is_one());
        let alpha = build_alpha::<Q>(&ctx);
        assert_eq!(alpha.len(), 7);
        for &j in ctx.residues() {
            assert_eq!(omega_action(7, j as i64, &alpha).unwrap(), alpha);
        }
        // outside R_n the generator moves
        assert_ne!(omega_action(7, 3, &alpha).unwrap(), alpha);
    }

    #[test]
    fn conjugate_examples() {
        let ctx = WildContext::new(7, 2).unwrap();
        assert_eq!(ctx.d(), 3);
        assert_eq!(ctx.summand(1).weight(0), 3);
        assert!(conjugate_check::<Q>(&ctx, 5, 0));
        for p in [3u64, 5, 7, 11, 13] {
            for n in divisors(p - 1) {
                let ctx = WildContext::new(p, n).unwrap();
                for j in 0..p as i64 {
                    for k in 0..p as i64 {
                        assert!(conjugate_check::<Q>(&ctx, j, k), "p={p} n={n} j={j} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn resolvent_examples() {
        let ctx = WildContext::new(7, 2).unwrap();
        assert_eq!(ctx.d_inv(), 5);
        assert_eq!(as_unit_monomial(&resolvent_at::<Q>(&ctx, 0)), Some(WildMonomial::one()));
        let expected = WildMonomial::from_exponents([y(&ctx, 1, -2), y(&ctx, 2, -1), y(&ctx, 4, 3)]);
        assert_eq!(as_unit_monomial(&resolvent_at::<Q>(&ctx, 1)), Some(expected.clone()));
        assert_eq!(expected.to_string(), "y1^-2*y2^-1*y4^3");
        for k in 0..7 {
            let a = as_unit_monomial(&resolvent_at::<Q>(&ctx, k)).unwrap();
            let b = as_unit_monomial(&resolvent_at::<Q>(&ctx, -k)).unwrap();
            assert!(a.mul(&b).is_one());
        }
    }

    #[test]
    fn g_examples() {
        let ctx = WildContext::new(7, 2).unwrap();
        let g = build_g(&ctx);
        let group = ctx.group();
        let at = |e: i64| g.value(&group.element(&[e]).unwrap()).clone();
        assert_eq!(at(5), WildMonomial::from_exponents([y(&ctx, 1, 7)]));
        assert_eq!(at(6), WildMonomial::from_exponents([y(&ctx, 2, 7)]));
        assert_eq!(at(3), WildMonomial::from_exponents([y(&ctx, 4, 7)]));
        for e in [0, 1, 2, 4] {
            assert!(at(e).is_one());
        }
        for p in [3u64, 5, 7, 11, 13] {
            for n in divisors(p - 1) {
                let ctx = WildContext::new(p, n).unwrap();
                assert!(build_g(&ctx).is_equivariant_over(ctx.residues()).unwrap());
            }
        }
        // the full unit group moves symbols out of R_n
        assert!(!build_g(&ctx).is_equivariant().unwrap());
    }

    #[test]
    fn transpose_examples() {
        let ctx = WildContext::new(7, 2).unwrap();
        assert!(transpose_eval_g(&ctx, 0).unwrap().is_one());
        let expected = WildMonomial::from_exponents([y(&ctx, 1, -2), y(&ctx, 2, -1), y(&ctx, 4, 3)]);
        assert_eq!(transpose_eval_g(&ctx, 1).unwrap(), expected);
    }

    #[test]
    fn full_context_checks() {
        for p in [3u64, 5, 7, 11] {
            for n in divisors(p - 1) {
                let report = verify_context::<Q>(&WildContext::new(p, n).unwrap()).unwrap();
                assert!(report.passed(), "p={p} n={n}: {report:?}");
            }
        }
    }

    #[test]
    fn unit_pair_products_are_one() {
        let ctx = WildContext::new(7, 3).unwrap();
        let a = alpha_map::<Q>(&ctx);
        assert!(groupring::unit_pair_check(&a));
        for v in groupring::unit_pair_products(&a).values() {
            assert_eq!(v, &W::one());
        }
        // the group-ring transform agrees with the literal sum
        let phi = groupring::transform(&a);
        for k in 0..7 {
            let chi = ctx.group().character(&[k]).unwrap();
            assert_eq!(phi.value(&chi), &resolvent_at::<Q>(&ctx, k));
        }
    }

    #[test]
    fn products() {
        let single = product_contexts::<Q>(&[WildContext::new(5, 2).unwrap()]).unwrap();
        assert_eq!(single.len(), 5);
        assert!(single.iter().all(|r| r.pass));
        let pair = [WildContext::with_family(3, 2, 0).unwrap(), WildContext::with_family(3, 2, 1).unwrap()];
        let rows = product_contexts::<Q>(&pair).unwrap();
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.pass));
        let pair = [WildContext::with_family(7, 2, 0).unwrap(), WildContext::with_family(7, 3, 1).unwrap()];
        let rows = product_contexts::<Q>(&pair).unwrap();
        assert_eq!(rows.len(), 49);
        assert!(rows.iter().all(|r| r.pass));
        let mixed = [WildContext::with_family(3, 2, 0).unwrap(), WildContext::with_family(5, 2, 1).unwrap()];
        assert_eq!(product_contexts::<Q>(&mixed), Err(Error::MixedPrimes));
        let clash = [WildContext::new(3, 2).unwrap(), WildContext::new(3, 1).unwrap()];
        assert!(product_contexts::<Q>(&clash).is_err());
    }
}
