use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group literal: {0}")]
    InvalidGroup(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("conductor {to} is not a multiple of {from}")]
    ConductorMismatch { from: u64, to: u64 },
    #[error("element order {0} is even; the symmetric pairing needs odd order")]
    EvenOrder(u64),
    #[error("not in S_G: exponent {numer}/{denom} is not integral and the value has no matching root")]
    NotInS { numer: i64, denom: i64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("denominator divisible by p = {0}")]
    PrimeInDenominator(u64),
    #[error("p^M overflows 63 bits for p = {p}, M = {precision}")]
    PrecisionOverflow { p: u64, precision: u32 },
    #[error("precision M = {precision} too small for p = {p}; use at least M = {suggested}")]
    PrecisionTooSmall { p: u64, precision: u32, suggested: u32 },
    #[error("valuation not certified below the precision cap {cap}")]
    AtCap { cap: u64 },
    #[error("{0} is not a unit of the group ring")]
    NotUnitElement(&'static str),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("inconsistent filtration: {0}")]
    InconsistentFiltration(String),
    #[error("filtration is {0}, not weak-wild")]
    NotWeakWild(&'static str),
    #[error("contexts use different primes")]
    MixedPrimes,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
