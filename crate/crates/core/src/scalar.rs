//! Coefficient scalars for the exact arithmetic kernels.
//!
//! Everything in the crate that stores coefficients is generic over
//! [`Scalar`]. Integral scalars (`i64`, `i128`, [`BigInt`]) are enough for
//! ring arithmetic such as Gauss sums and their powers; division (inverses,
//! the `1/p` in averaging formulas) needs a [`FieldScalar`].
//!
//! Fixed-width scalars rely on overflow checks being enabled (they are in
//! every profile of this workspace), so an overflow panics rather than
//! producing a wrong canonical form.

use std::fmt;
use std::ops::{AddAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One};

pub trait Scalar:
    Num + Clone + PartialEq + fmt::Debug + fmt::Display + Neg<Output = Self> + AddAssign + SubAssign + Send + Sync + 'static
{
    fn from_i64(value: i64) -> Self;

    /// Lowest-terms `(numerator, denominator)` with positive denominator.
    fn to_fraction(&self) -> (BigInt, BigInt);

    fn is_integral(&self) -> bool {
        self.to_fraction().1.is_one()
    }

    fn mul_i64(&self, c: i64) -> Self {
        match c {
            0 => Self::zero(),
            1 => self.clone(),
            -1 => -self.clone(),
            _ => self.clone() * Self::from_i64(c),
        }
    }
}

/// Scalars with exact division.
pub trait FieldScalar: Scalar {
    /// `num / den`; `den` must be nonzero.
    fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// `num / den` from big integers; fixed-width types panic when the
    /// reduced fraction does not fit.
    fn from_big_fraction(num: BigInt, den: BigInt) -> Self;
}

macro_rules! impl_int_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn from_i64(value: i64) -> Self {
                value as $t
            }
            fn to_fraction(&self) -> (BigInt, BigInt) {
                (BigInt::from(*self), BigInt::one())
            }
            fn is_integral(&self) -> bool {
                true
            }
            fn mul_i64(&self, c: i64) -> Self {
                *self * (c as $t)
            }
        }
    )*};
}

impl_int_scalar!(i64, i128);

impl Scalar for BigInt {
    fn from_i64(value: i64) -> Self {
        BigInt::from(value)
    }
    fn to_fraction(&self) -> (BigInt, BigInt) {
        (self.clone(), BigInt::one())
    }
    fn is_integral(&self) -> bool {
        true
    }
    fn mul_i64(&self, c: i64) -> Self {
        self * c
    }
}

macro_rules! impl_ratio_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn from_i64(value: i64) -> Self {
                Ratio::from_integer(value as $t)
            }
            fn to_fraction(&self) -> (BigInt, BigInt) {
                (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
            fn is_integral(&self) -> bool {
                self.denom().is_one()
            }
        }

        impl FieldScalar for Ratio<$t> {
            fn from_fraction(num: i64, den: i64) -> Self {
                Ratio::new(num as $t, den as $t)
            }
            fn from_big_fraction(num: BigInt, den: BigInt) -> Self {
                let r = BigRational::new(num, den);
                let narrow = |x: &BigInt| <$t>::try_from(x).expect("fraction exceeds the scalar width");
                Ratio::new_raw(narrow(r.numer()), narrow(r.denom()))
            }
        }
    )*};
}

impl_ratio_scalar!(i64, i128);

impl Scalar for BigRational {
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
    fn to_fraction(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

impl FieldScalar for BigRational {
    fn from_fraction(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_big_fraction(num: BigInt, den: BigInt) -> Self {
        BigRational::new(num, den)
    }
}

/// Reduce a fraction to the residue `num * den^{-1} mod modulus`, or `None`
/// when the denominator is not invertible.
pub(crate) fn fraction_mod(num: &BigInt, den: &BigInt, modulus: u64) -> Option<u64> {
    let m = BigInt::from(modulus);
    let n = num.mod_floor(&m);
    let d = den.mod_floor(&m);
    let ext = d.extended_gcd(&m);
    if !ext.gcd.is_one() {
        return None;
    }
    let r = (n * ext.x).mod_floor(&m);
    Some(u64::try_from(r).expect("residue below a u64 modulus"))
}
