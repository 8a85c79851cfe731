//! Batch verification suites and their reports.
//!
//! A suite expands its configuration into independent cases, runs them on
//! a bounded thread pool, and returns records sorted by case id, so the
//! JSON rendering is byte-stable for a fixed configuration.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::FiniteAbelianGroup;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::gauss::{self, MultiplicativeCharacter};
use crate::groupring::{self, CharacterVector, GroupMap, GroupRingElement};
use crate::numtheory::{divisors, is_prime, prime_factors, units};
use crate::padic::embed_cyclo;
use crate::ramify::{RamificationClass, RamificationFiltration};
use crate::scalar::FieldScalar;
use crate::stickelberger::{self as stick, EquivariantMap, PairingTable, VirtualCharacter};
use crate::wildsym::{self, WildContext};

type Q = BigRational;
type C = Cyclo<Q>;

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const DEFAULT_PMAX: u64 = 31;
pub const DEFAULT_PRECISION: u32 = 6;
pub const DEFAULT_MAX_ORDER: u64 = 81;
pub const DEFAULT_STICKELBERGER_GROUPS: [&str; 5] = ["3", "9", "3,3", "7", "15"];
pub const DEFAULT_GROUPRING_GROUPS: [&str; 6] = ["7", "9", "3,3", "2,6", "15", "30"];
pub const DEFAULT_WILD_PRIMES: [u64; 7] = [3, 5, 7, 11, 13, 17, 19];
/// Random `psi` per group for the integrality check.
pub const DEFAULT_STICKELBERGER_TRIALS: usize = 500;
/// Random cases per group for the transform checks.
pub const DEFAULT_GROUPRING_TRIALS: usize = 50;
/// `5^|G|` above this switches the integrality check from the full box to sampling only.
const EXHAUSTIVE_LIMIT: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gauss,
    Stickelberger,
    Wild,
    Ramify,
    Groupring,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Gauss, Suite::Groupring, Suite::Ramify, Suite::Stickelberger, Suite::Wild];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gauss => "gauss",
            Suite::Stickelberger => "stickelberger",
            Suite::Wild => "wild",
            Suite::Ramify => "ramify",
            Suite::Groupring => "groupring",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::Gauss, Suite::Stickelberger, Suite::Wild, Suite::Ramify, Suite::Groupring, Suite::All]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Parameters for a run. `None` means the suite's own default.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub pmax: u64,
    pub precision: u32,
    pub groups: Option<Vec<String>>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub p: Option<u64>,
    pub n: Option<Vec<u64>>,
    pub product: usize,
    pub max_order: u64,
    /// Worker threads; 0 lets the pool decide. Not part of the report.
    #[serde(skip)]
    pub jobs: usize,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            pmax: DEFAULT_PMAX,
            precision: DEFAULT_PRECISION,
            groups: None,
            trials: None,
            seed: DEFAULT_SEED,
            p: None,
            n: None,
            product: 1,
            max_order: DEFAULT_MAX_ORDER,
            jobs: 0,
        }
    }

    fn groups_or(&self, default: &[&str]) -> Result<Vec<FiniteAbelianGroup>> {
        match &self.groups {
            Some(gs) => gs.iter().map(|g| g.parse()).collect(),
            None => default.iter().map(|g| g.parse()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRecord {
    pub suite: Suite,
    pub case: String,
    pub citation: &'static str,
    pub pass: bool,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub config: SuiteConfig,
    pub records: Vec<ReportRecord>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let status = if r.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {:<13} {:<40} [{}] {}\n", r.suite.name(), r.case, r.citation, r.witness));
        }
        out.push_str(&format!("{}: {} passed, {} failed\n", self.suite, self.passed, self.failed));
        out
    }
}

type Rows = Vec<(String, bool, Value)>;

/// One unit of work, producing one or more records.
struct Case {
    suite: Suite,
    id: String,
    citation: &'static str,
    run: Box<dyn Fn() -> Result<Rows> + Send + Sync>,
}

impl Case {
    fn new(
        suite: Suite,
        id: String,
        citation: &'static str,
        run: impl Fn() -> Result<(bool, Value)> + Send + Sync + 'static,
    ) -> Self {
        let case = id.clone();
        Self::multi(suite, id, citation, move || run().map(|(pass, w)| vec![(case.clone(), pass, w)]))
    }

    fn multi(
        suite: Suite,
        id: String,
        citation: &'static str,
        run: impl Fn() -> Result<Rows> + Send + Sync + 'static,
    ) -> Self {
        Self { suite, id, citation, run: Box::new(run) }
    }

    fn execute(&self) -> Vec<ReportRecord> {
        let rows = (self.run)().unwrap_or_else(|e| vec![(self.id.clone(), false, json!({ "error": e.to_string() }))]);
        rows.into_iter()
            .map(|(case, pass, witness)| ReportRecord {
                suite: self.suite,
                case,
                citation: self.citation,
                pass,
                witness,
            })
            .collect()
    }
}

/// Validates the configuration, runs the cases and assembles the report.
pub fn run(config: &SuiteConfig) -> Result<Report> {
    let suites: Vec<Suite> = if config.suite == Suite::All { Suite::ALL.to_vec() } else { vec![config.suite] };
    let mut cases = Vec::new();
    for suite in suites {
        cases.extend(match suite {
            Suite::Gauss => gauss_cases(config)?,
            Suite::Stickelberger => stickelberger_cases(config)?,
            Suite::Wild => wild_cases(config)?,
            Suite::Ramify => ramify_cases(config)?,
            Suite::Groupring => groupring_cases(config)?,
            Suite::All => unreachable!("expanded above"),
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let mut records: Vec<ReportRecord> = pool.install(|| cases.par_iter().flat_map_iter(Case::execute).collect());
    records.sort_by(|a, b| (a.suite, &a.case).cmp(&(b.suite, &b.case)));
    let passed = records.iter().filter(|r| r.pass).count();
    Ok(Report { suite: config.suite, config: config.clone(), failed: records.len() - passed, passed, records })
}

fn odd_primes_up_to(pmax: u64) -> Vec<u64> {
    (3..=pmax).filter(|&p| is_prime(p)).collect()
}

fn gauss_cases(config: &SuiteConfig) -> Result<Vec<Case>> {
    let m = config.precision;
    let primes = odd_primes_up_to(config.pmax);
    if let Some(&p) = primes.iter().find(|&&p| (p - 1) * (m as u64).saturating_sub(1) <= p) {
        return Err(Error::PrecisionTooSmall { p, precision: m, suggested: gauss::minimal_precision(p) });
    }
    if let Some(&p) = primes.last() {
        crate::padic::PadicCyclo::zero(p, m)?;
    }
    let mut cases = Vec::new();
    let s = Suite::Gauss;
    for p in primes {
        for n in divisors(p - 1) {
            cases.push(Case::new(s, format!("basic/p{p:03}/n{n:03}"), "gauss-basic-values", move || {
                let phi = MultiplicativeCharacter::of_order(p, n)?;
                let basic = gauss::basic_values_hold::<i64>(&phi);
                let translation = (1..p as i64)
                    .map(|j| gauss::verify_translation::<i64>(&phi, j))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .all(|b| b);
                Ok((basic && translation, json!({ "p": p, "n": n, "basic": basic, "translation": translation })))
            }));
            cases.push(Case::new(s, format!("backend/p{p:03}/n{n:03}"), "backend-coherence", move || {
                let phi = MultiplicativeCharacter::of_order(p, n)?;
                let mut ok = true;
                for j in 0..p as i64 {
                    ok &= embed_cyclo(&gauss::gauss_sum::<i64>(&phi, j), p, m)? == gauss::gauss_sum_padic(&phi, j, m)?;
                }
                Ok((ok, json!({ "p": p, "n": n, "M": m })))
            }));
            if n == 1 {
                continue;
            }
            for j in 1..p as i64 {
                cases.push(Case::new(
                    s,
                    format!("valuation/p{p:03}/n{n:03}/j{j:03}"),
                    "gauss-valuation-bound",
                    move || {
                        let phi = MultiplicativeCharacter::of_order(p, n)?;
                        let v = gauss::gauss_valuation(&phi, j, m)?;
                        let bound = gauss::valuation_bound(&phi);
                        let pass = v >= bound && (n != 2 || v == (p - 1) / 2);
                        Ok((pass, json!({ "p": p, "n": n, "j": j, "valuation": v, "bound": bound, "pass": pass })))
                    },
                ));
            }
            cases.push(Case::new(s, format!("charsum/p{p:03}/n{n:03}"), "gauss-character-sum", move || {
                let phi = MultiplicativeCharacter::of_order(p, n)?;
                let ok = (1..p as i64)
                    .map(|j| gauss::character_sum_identity::<i64>(&phi, j))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .all(|b| b);
                Ok((ok, json!({ "p": p, "n": n })))
            }));
            cases.push(Case::new(s, format!("powersum/p{p:03}/n{n:03}"), "gauss-power-sum", move || {
                let ps = gauss::power_sum_s(&MultiplicativeCharacter::of_order(p, n)?, m)?;
                let pass = ps.equals_translated && ps.divisible_by_p;
                Ok((
                    pass,
                    json!({
                        "p": p,
                        "n": n,
                        "valuation": ps.valuation.to_string(),
                        "equals_translated": ps.equals_translated,
                        "divisible_by_p": ps.divisible_by_p,
                    }),
                ))
            }));
        }
    }
    Ok(cases)
}

fn random_psi(rng: &mut ChaCha8Rng, g: &FiniteAbelianGroup) -> Vec<i64> {
    let mut coeffs: Vec<i64> = (0..g.len()).map(|_| rng.gen_range(-2..=2)).collect();
    // every other sample is pushed into S so both sides of the equivalence occur
    if rng.gen_bool(0.5) {
        let psi = VirtualCharacter::new(g.clone(), coeffs.clone()).expect("sized");
        let det = stick::det_map(&psi);
        coeffs[g.character_index(&g.char_inverse(&det))] += 1;
    }
    coeffs
}

fn stickelberger_cases(config: &SuiteConfig) -> Result<Vec<Case>> {
    let groups = config.groups_or(&DEFAULT_STICKELBERGER_GROUPS)?;
    if let Some(g) = groups.iter().find(|g| !g.is_odd_order()) {
        return Err(Error::EvenOrder(g.order()));
    }
    let trials = config.trials.unwrap_or(DEFAULT_STICKELBERGER_TRIALS);
    let seed = config.seed;
    let s = Suite::Stickelberger;
    let mut cases = Vec::new();
    for g in groups {
        let label = g.factors().iter().map(u64::to_string).collect::<Vec<_>>().join("x");
        let label = if label.is_empty() { "1".to_string() } else { label };
        if 5u64.checked_pow(g.len() as u32).is_some_and(|n| n <= EXHAUSTIVE_LIMIT) {
            let g2 = g.clone();
            cases.push(Case::new(s, format!("integrality-box/{label}"), "stickelberger-integrality", move || {
                let scan = PairingTable::new(&g2)?.scan_box(2);
                Ok((scan.mismatches == 0, json!({ "group": g2.to_string(), "checked": scan.checked, "in_s": scan.in_s, "mismatches": scan.mismatches })))
            }));
        }
        let g2 = g.clone();
        cases.push(Case::new(s, format!("integrality-random/{label}"), "stickelberger-integrality", move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let samples: Vec<_> = (0..trials).map(|_| random_psi(&mut rng, &g2)).collect();
            let scan = PairingTable::new(&g2)?.scan(&samples);
            // the fast table is spot-checked against the exact map
            let mut exact_ok = true;
            for coeffs in samples.iter().take(20) {
                let psi = VirtualCharacter::new(g2.clone(), coeffs.clone())?;
                exact_ok &= stick::stickelberger_map::<Q>(&psi)?.is_integral() == stick::in_s(&psi);
            }
            Ok((
                scan.mismatches == 0 && exact_ok,
                json!({
                    "group": g2.to_string(), "seed": seed, "checked": scan.checked, "in_s": scan.in_s,
                    "mismatches": scan.mismatches, "exact_spot_check": exact_ok,
                }),
            ))
        }));
        let g2 = g.clone();
        cases.push(Case::new(s, format!("equivariance/{label}"), "stickelberger-equivariance", move || {
            let us = units(g2.exponent());
            let chars = g2.dual_enumerate();
            let ok = us
                .par_iter()
                .map(|&u| -> Result<bool> {
                    for chi in &chars {
                        let theta = stick::stickelberger_map::<Q>(&VirtualCharacter::from_character(&g2, chi))?;
                        let twisted = stick::twist_character(&g2, u as i64, chi)?;
                        let lhs = stick::stickelberger_map::<Q>(&VirtualCharacter::from_character(&g2, &twisted))?;
                        if lhs != stick::twist_rational(-1, u as i64, &theta)? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|b| b);
            Ok((ok, json!({ "group": g2.to_string(), "units": us.len(), "characters": chars.len() })))
        }));
        let g2 = g.clone();
        cases.push(Case::new(s, format!("antisymmetry/{label}"), "stickelberger-antisymmetry", move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5);
            let mut ok = true;
            for _ in 0..trials.min(50) {
                let psi = VirtualCharacter::new(g2.clone(), random_psi(&mut rng, &g2))?;
                let sum = stick::stickelberger_map::<Q>(&psi)?.add(&stick::stickelberger_map::<Q>(&psi.conjugate())?);
                ok &= sum.is_zero();
            }
            Ok((ok, json!({ "group": g2.to_string() })))
        }));
        let g2 = g.clone();
        cases.push(Case::new(s, format!("transpose/{label}"), "stickelberger-transpose", move || {
            let m = g2.exponent();
            let gmap =
                EquivariantMap::from_fn(&g2, -1, |x| &C::from_i64(2) + &C::root_of_unity(m, g2.index_of(x) as i64));
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5A);
            let mut kernel = Vec::new();
            while kernel.len() < 8 {
                let psi = VirtualCharacter::new(g2.clone(), random_psi(&mut rng, &g2))?;
                if stick::in_s(&psi) {
                    kernel.push(psi);
                }
            }
            let mut ok = true;
            for pair in kernel.chunks(2) {
                let lhs = stick::transpose_apply(&gmap, &pair[0].add(&pair[1]))?;
                let rhs = &stick::transpose_apply(&gmap, &pair[0])? * &stick::transpose_apply(&gmap, &pair[1])?;
                ok &= lhs == rhs;
            }
            Ok((ok, json!({ "group": g2.to_string(), "pairs": kernel.len() / 2 })))
        }));
    }
    Ok(cases)
}

fn wild_cases(config: &SuiteConfig) -> Result<Vec<Case>> {
    let primes: Vec<u64> = match config.p {
        Some(p) => vec![p],
        None => DEFAULT_WILD_PRIMES.to_vec(),
    };
    let mut cases = Vec::new();
    let s = Suite::Wild;
    for &p in &primes {
        let ns = match &config.n {
            Some(ns) => ns.clone(),
            None => divisors(p - 1),
        };
        for &n in &ns {
            WildContext::new(p, n)?;
            if config.product > 1 {
                continue;
            }
            let id = format!("resolvent/p{p:03}/n{n:03}");
            cases.push(Case::multi(s, id.clone(), "wild-resolvent-decomposition", move || {
                let report = wildsym::verify_context::<Q>(&WildContext::new(p, n)?)?;
                let context_ok =
                    report.alpha_invariant && report.conjugates && report.unit_pairs && report.g_equivariant;
                Ok((0..p as usize)
                    .map(|k| {
                        let pass = context_ok && report.matches_expected[k] && report.matches_transpose[k];
                        let monomial = report.resolvents[k].as_ref().map(|m| m.to_string());
                        let row = json!({ "p": p, "n": n, "k": k, "monomial": monomial, "pass": pass });
                        (format!("{id}/k{k:03}"), pass, row)
                    })
                    .collect())
            }));
        }
        let product_runs: Vec<Vec<u64>> = if config.product > 1 {
            vec![(0..config.product).map(|i| ns[i % ns.len()]).collect()]
        } else if config.p.is_none() && (p == 3 || p == 7) {
            vec![if p == 3 { vec![2, 2] } else { vec![2, 3] }]
        } else {
            Vec::new()
        };
        for run_ns in product_runs {
            let tag = run_ns.iter().map(u64::to_string).collect::<Vec<_>>().join("-");
            let ctxs = run_ns
                .iter()
                .enumerate()
                .map(|(f, &n)| WildContext::with_family(p, n, f as u32))
                .collect::<Result<Vec<_>>>()?;
            let id = format!("product/p{p:03}/n{tag}");
            cases.push(Case::multi(s, id.clone(), "wild-product-assembly", move || {
                let rows = wildsym::product_contexts::<Q>(&ctxs)?;
                let ns: Vec<u64> = ctxs.iter().map(|c| c.index()).collect();
                Ok(rows
                    .into_iter()
                    .enumerate()
                    .map(|(i, row)| {
                        let w = json!({
                            "p": p, "n": ns, "character": row.character,
                            "monomial": row.resolvent.as_ref().map(|m| m.to_string()),
                            "transpose": row.transpose.to_string(),
                            "pass": row.pass,
                        });
                        (format!("{id}/chi{i:05}"), row.pass, w)
                    })
                    .collect())
            }));
        }
    }
    Ok(cases)
}

/// Smallest prime dividing `g0`, the only candidate residue characteristic.
fn residue_characteristic(g0: u64) -> Option<u64> {
    prime_factors(g0).into_iter().next()
}

fn ramify_cases(config: &SuiteConfig) -> Result<Vec<Case>> {
    if config.max_order == 0 {
        return Err(Error::InvalidArgument("max-order must be positive".into()));
    }
    let s = Suite::Ramify;
    Ok(RamificationFiltration::enumerate(config.max_order, 4)
        .into_iter()
        .map(|f| {
            let id =
                format!("filtration/{}", f.orders().iter().map(|g| format!("{g:03}")).collect::<Vec<_>>().join("-"));
            let citation =
                if f.classify() == RamificationClass::WeakWild { "sqrt-inverse-different" } else { "hilbert-formula" };
            Case::new(s, id, citation, move || {
                let v = f.different_valuation();
                let mut pass = v == f.different_valuation_by_jumps();
                let class = f.classify();
                let mut v_sqrt = Value::Null;
                if class == RamificationClass::WeakWild {
                    let p = residue_characteristic(f.order(0)).expect("g0 > 1");
                    let well_formed = f.order(0) == f.order(1) && prime_factors(f.order(0)).iter().all(|&q| q == p);
                    match f.sqrt_inverse_different_valuation(p) {
                        Ok(w) => {
                            pass &= well_formed && v % 2 == 0 && w == 1 - f.order(0) as i64;
                            v_sqrt = json!(w);
                        }
                        Err(Error::InconsistentFiltration(msg)) => {
                            pass &= !well_formed;
                            v_sqrt = json!({ "rejected": msg });
                        }
                        Err(e) => return Err(e),
                    }
                }
                Ok((
                    pass,
                    json!({
                        "filtration": f.orders(),
                        "class": class.to_string(),
                        "v_different": v,
                        "v_sqrt": v_sqrt,
                    }),
                ))
            })
        })
        .collect())
}

fn random_cyclo<T: FieldScalar>(rng: &mut ChaCha8Rng, m: u64) -> Cyclo<T> {
    let terms: Vec<(i64, T)> = (0..3)
        .map(|_| (rng.gen_range(0..m as i64), T::from_fraction(rng.gen_range(-4..=4), rng.gen_range(1..=3))))
        .collect();
    Cyclo::from_terms(m, terms)
}

fn random_map(rng: &mut ChaCha8Rng, g: &FiniteAbelianGroup) -> GroupMap<C> {
    let values = (0..g.len()).map(|_| random_cyclo(rng, g.exponent())).collect();
    GroupMap::new(g.clone(), values).expect("sized")
}

fn groupring_cases(config: &SuiteConfig) -> Result<Vec<Case>> {
    let groups = config.groups_or(&DEFAULT_GROUPRING_GROUPS)?;
    let trials = config.trials.unwrap_or(DEFAULT_GROUPRING_TRIALS);
    let seed = config.seed;
    let s = Suite::Groupring;
    let mut cases = Vec::new();
    for g in groups {
        let label = g.factors().iter().map(u64::to_string).collect::<Vec<_>>().join("x");
        let label = if label.is_empty() { "1".to_string() } else { label };
        let g2 = g.clone();
        cases.push(Case::new(s, format!("roundtrip/{label}"), "resolvend-bijection", move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ok = true;
            for _ in 0..trials {
                let a = random_map(&mut rng, &g2);
                ok &= groupring::resolvend_inverse(&groupring::resolvend(&a)) == a;
                ok &= groupring::inverse_transform(&groupring::transform(&a)) == a;
                let phi = CharacterVector::new(g2.clone(), random_map(&mut rng, &g2).values().to_vec())?;
                ok &= groupring::transform(&groupring::inverse_transform(&phi)) == phi;
            }
            Ok((ok, json!({ "group": g2.to_string(), "trials": trials, "seed": seed })))
        }));
        let g2 = g.clone();
        cases.push(Case::new(s, format!("convolution/{label}"), "transform-convolution", move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
            let mut ok = true;
            for _ in 0..trials {
                let x = groupring::resolvend(&random_map(&mut rng, &g2));
                let y = groupring::resolvend(&random_map(&mut rng, &g2));
                ok &= x.mul(&y).character_values() == x.character_values().pointwise_mul(&y.character_values());
            }
            Ok((ok, json!({ "group": g2.to_string(), "trials": trials, "seed": seed })))
        }));
        let g2 = g.clone();
        cases.push(Case::new(s, format!("involution/{label}"), "resolvend-involution", move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
            let mut ok = true;
            for _ in 0..trials {
                let r = groupring::resolvend(&random_map(&mut rng, &g2));
                let inv = r.involution();
                ok &= g2.dual_enumerate().iter().all(|chi| inv.evaluate(chi) == r.evaluate(&g2.char_inverse(chi)));
            }
            Ok((ok, json!({ "group": g2.to_string(), "trials": trials, "seed": seed })))
        }));
        let g2 = g.clone();
        cases.push(Case::new(s, format!("units/{label}"), "unit-criterion", move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
            let mut ok = GroupRingElement::<C>::one(&g2).is_unit();
            let constant = GroupMap::from_fn(&g2, |_| C::one());
            ok &= g2.len() == 1 || !groupring::resolvend(&constant).is_unit();
            let mut units_checked = 0;
            for _ in 0..trials.min(20) {
                let r = groupring::resolvend(&random_map(&mut rng, &g2));
                if r.is_unit() {
                    ok &= r.mul(&r.inverse()?) == GroupRingElement::one(&g2);
                    let s0 = g2.element_at(rng.gen_range(0..g2.len()));
                    ok &= groupring::reduced_equal(&r, &r.translate(&s0))? == Some(s0);
                    units_checked += 1;
                }
            }
            Ok((ok, json!({ "group": g2.to_string(), "units_checked": units_checked, "seed": seed })))
        }));
    }
    Ok(cases)
}
