use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use resolvend_core::gauss::{self, MultiplicativeCharacter, ResidueSubgroup};
use resolvend_core::groupring::{self, CharacterVector, GroupMap};
use resolvend_core::numtheory::{divisors, gcd, units};
use resolvend_core::stickelberger::{self as stick, VirtualCharacter};
use resolvend_core::wildsym::Symbol;
use resolvend_core::{Cyclo, FiniteAbelianGroup, RamificationFiltration, WildMonomial};

type Q = BigRational;
type C = Cyclo<Q>;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Invariant-factor chains `d_1 | d_2 | ...` with order at most `max_order`.
fn group(max_order: u64) -> impl Strategy<Value = FiniteAbelianGroup> {
    prop::collection::vec(1u64..=4, 0..=3).prop_filter_map("order too large", move |steps| {
        let mut factors: Vec<u64> = Vec::new();
        for (i, k) in steps.iter().enumerate() {
            let d = if i == 0 { k + 1 } else { factors[i - 1] * k };
            factors.push(d);
        }
        let order: u64 = factors.iter().product();
        (order <= max_order).then(|| FiniteAbelianGroup::new(factors).unwrap())
    })
}

fn odd_group(max_order: u64) -> impl Strategy<Value = FiniteAbelianGroup> {
    prop_oneof![Just(vec![3]), Just(vec![5]), Just(vec![7]), Just(vec![9]), Just(vec![3, 3]), Just(vec![15])]
        .prop_filter("order too large", move |f| f.iter().product::<u64>() <= max_order)
        .prop_map(|f| FiniteAbelianGroup::new(f).unwrap())
}

fn cyclo(m: u64) -> impl Strategy<Value = C> {
    prop::collection::vec((0..m as i64, -5i64..=5, 1i64..=4), 1..=4)
        .prop_map(move |terms| C::from_terms(m, terms.into_iter().map(|(e, n, d)| (e, q(n, d)))))
}

fn group_map(g: FiniteAbelianGroup) -> impl Strategy<Value = GroupMap<C>> {
    let m = g.exponent();
    prop::collection::vec(cyclo(m), g.len()).prop_map(move |values| GroupMap::new(g.clone(), values).unwrap())
}

fn element_index(g: &FiniteAbelianGroup) -> impl Strategy<Value = usize> {
    0..g.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_order_and_exponent_match_enumeration(g in group(200)) {
        let elems: Vec<_> = g.elements().collect();
        prop_assert_eq!(elems.len() as u64, g.order());
        let max_order = elems.iter().map(|s| g.element_order(s)).max().unwrap();
        prop_assert_eq!(max_order, g.exponent());
        for s in &elems {
            let k = g.element_order(s);
            prop_assert_eq!(g.exponent() % k, 0);
            prop_assert_eq!(g.pow(s, k as i64), g.identity());
            prop_assert!((1..k).all(|j| g.pow(s, j as i64) != g.identity()));
        }
    }

    #[test]
    fn pairing_exponent_is_bilinear((g, i, j, k) in group(60).prop_flat_map(|g| {
        let n = g.len();
        (Just(g), 0..n, 0..n, 0..n)
    })) {
        let m = g.exponent();
        let (s, t) = (g.element_at(i), g.element_at(j));
        let (chi, psi) = (g.character_at(j), g.character_at(k));
        prop_assert_eq!(g.char_exponent(&chi, &g.op(&s, &t)), (g.char_exponent(&chi, &s) + g.char_exponent(&chi, &t)) % m);
        prop_assert_eq!(g.char_exponent(&g.char_mul(&chi, &psi), &s), (g.char_exponent(&chi, &s) + g.char_exponent(&psi, &s)) % m);
    }

    #[test]
    fn cyclotomic_field_laws((x, y, z) in (1u64..=30).prop_flat_map(|m| (cyclo(m), cyclo(m), cyclo(m)))) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inverse().unwrap(), C::one());
        }
    }

    #[test]
    fn raising_the_conductor_preserves_values((x, k) in (1u64..=15).prop_flat_map(|m| (cyclo(m), 2u64..=4))) {
        let raised = x.raise_conductor(x.conductor() * k).unwrap();
        prop_assert_eq!(&raised, &x);
        prop_assert_eq!(&raised * &raised, &x * &x);
    }

    #[test]
    fn roots_of_unity_have_the_expected_order(m in 1u64..=40, k in -60i64..60) {
        let z = C::root_of_unity(m, k);
        let order = m / gcd(m, k.unsigned_abs() % m);
        prop_assert_eq!(z.pow(order), C::one());
        for d in divisors(order).into_iter().filter(|&d| d < order) {
            prop_assert_ne!(z.pow(d), C::one());
        }
    }

    #[test]
    fn galois_maps_are_ring_maps((x, y, u) in (3u64..=21).prop_flat_map(|m| (cyclo(m), cyclo(m), prop::sample::select(units(m))))) {
        let u = u as i64;
        prop_assert_eq!((&x * &y).galois_map(u).unwrap(), &x.galois_map(u).unwrap() * &y.galois_map(u).unwrap());
        prop_assert_eq!((&x + &y).galois_map(u).unwrap(), &x.galois_map(u).unwrap() + &y.galois_map(u).unwrap());
    }

    #[test]
    fn resolvend_and_transform_roundtrip(a in group(24).prop_flat_map(group_map)) {
        prop_assert_eq!(groupring::resolvend_inverse(&groupring::resolvend(&a)), a.clone());
        let phi = groupring::transform(&a);
        prop_assert_eq!(groupring::inverse_transform(&phi), a.clone());
        let back = CharacterVector::new(a.group().clone(), phi.values().to_vec()).unwrap();
        prop_assert_eq!(groupring::transform(&groupring::inverse_transform(&back)), back);
    }

    #[test]
    fn transform_diagonalizes_convolution((a, b) in group(24).prop_flat_map(|g| (group_map(g.clone()), group_map(g)))) {
        let (x, y) = (groupring::resolvend(&a), groupring::resolvend(&b));
        prop_assert_eq!(x.mul(&y).character_values(), x.character_values().pointwise_mul(&y.character_values()));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
    }

    #[test]
    fn involution_inverts_characters((a, i) in group(24).prop_flat_map(|g| (group_map(g.clone()), element_index(&g)))) {
        let g = a.group().clone();
        let r = groupring::resolvend(&a);
        let chi = g.character_at(i);
        prop_assert_eq!(r.involution().evaluate(&chi), r.evaluate(&g.char_inverse(&chi)));
        prop_assert_eq!(r.involution().involution(), r);
    }

    #[test]
    fn stickelberger_map_is_additive_and_antisymmetric((g, c1, c2) in odd_group(15).prop_flat_map(|g| {
        let n = g.len();
        (Just(g), prop::collection::vec(-3i64..=3, n), prop::collection::vec(-3i64..=3, n))
    })) {
        let psi = VirtualCharacter::new(g.clone(), c1).unwrap();
        let phi = VirtualCharacter::new(g.clone(), c2).unwrap();
        let theta = |v: &VirtualCharacter| stick::stickelberger_map::<Q>(v).unwrap();
        prop_assert_eq!(theta(&psi.add(&phi)), theta(&psi).add(&theta(&phi)));
        prop_assert!(theta(&psi).add(&theta(&psi.conjugate())).is_zero());
        prop_assert_eq!(theta(&psi).is_integral(), stick::in_s(&psi));
    }

    #[test]
    fn pairing_lies_strictly_inside_the_half_interval((g, i, j) in odd_group(15).prop_flat_map(|g| {
        let n = g.len();
        (Just(g), 0..n, 0..n)
    })) {
        let (chi, s) = (g.character_at(i), g.element_at(j));
        let x: Q = stick::pairing(&g, &chi, &s).unwrap();
        prop_assert!(x.clone() * Q::from_integer(2.into()) < Q::from_integer(1.into()));
        prop_assert!(x.clone() * Q::from_integer((-2).into()) < Q::from_integer(1.into()));
        prop_assert_eq!(stick::pairing::<Q>(&g, &g.char_inverse(&chi), &s).unwrap(), -x);
    }

    #[test]
    fn multiplicative_characters_are_homomorphisms(
        (p, n, j, k) in prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19, 23])
            .prop_flat_map(|p| (Just(p), prop::sample::select(divisors(p - 1)), 1..p as i64, 1..p as i64))
    ) {
        let phi = MultiplicativeCharacter::of_order(p, n).unwrap();
        prop_assert_eq!(phi.order(), n);
        prop_assert_eq!(phi.value::<i64>(j * k), &phi.value::<i64>(j) * &phi.value::<i64>(k));
        prop_assert!(gauss::verify_translation::<i64>(&phi, j).unwrap());
        let sub = ResidueSubgroup::new(p, n).unwrap();
        prop_assert_eq!(sub.len() as u64, (p - 1) / n);
        let elems = sub.elements();
        prop_assert!(elems.iter().all(|&a| elems.iter().all(|&b| sub.contains((a * b % p) as i64))));
    }

    #[test]
    fn wild_monomials_form_a_free_abelian_group(
        (a, b) in (prop::collection::vec((1u64..7, -3i64..=3), 0..5), prop::collection::vec((1u64..7, -3i64..=3), 0..5)),
        j in 1u64..7,
    ) {
        let mono = |terms: &[(u64, i64)]| {
            WildMonomial::from_exponents(terms.iter().map(|&(i, e)| (Symbol { prime: 7, family: 0, index: i }, e)))
        };
        let (x, y) = (mono(&a), mono(&b));
        prop_assert!(x.mul(&x.inverse()).is_one());
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.pow(3), x.mul(&x).mul(&x));
        prop_assert_eq!(x.mul(&y).permute(j), x.permute(j).mul(&y.permute(j)));
        prop_assert_eq!(x.mul(&y).weight(0), x.weight(0) + y.weight(0));
        prop_assert!(x.exponents().all(|(_, &e)| e != 0));
    }

    #[test]
    fn hilbert_formula_matches_jump_count(steps in prop::collection::vec(1u64..=3, 1..=5), g0 in prop::sample::select(vec![2u64, 3, 4, 8, 9, 16, 27, 81])) {
        let mut orders = vec![g0];
        for k in steps {
            let last = *orders.last().unwrap();
            let next = divisors(last).into_iter().rev().nth(k as usize % divisors(last).len()).unwrap();
            orders.push(next);
        }
        let f = RamificationFiltration::new(orders).unwrap();
        prop_assert_eq!(f.different_valuation(), f.different_valuation_by_jumps());
        prop_assert!(f.orders().windows(2).all(|w| w[0] % w[1] == 0));
        prop_assert_eq!(f.orders().last(), Some(&1));
        prop_assert_eq!(f.to_string().parse::<RamificationFiltration>().unwrap(), f);
    }
}
