//! Exact arithmetic for resolvends, Stickelberger maps and Gauss sums.
//!
//! The numeric core is generic over a [`Scalar`] coefficient type (machine
//! integers, big integers or exact rationals); the aliases below fix the
//! choices the verification suites use.
//!
//! ```
//! use resolvend_core::{CycloElement, MultiplicativeCharacter, gauss_sum};
//!
//! let phi = MultiplicativeCharacter::of_order(5, 2).unwrap();
//! let g: CycloElement = gauss_sum(&phi, 1);
//! assert_eq!(&g * &g, CycloElement::from_i64(5));
//! ```

pub mod abelian;
pub mod cyclotomic;
pub mod error;
pub mod gauss;
pub mod groupring;
mod json;
pub mod numtheory;
pub mod padic;
pub mod ramify;
pub mod scalar;
pub mod stickelberger;
pub mod suite;
pub mod wildsym;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

pub use abelian::{Character, FiniteAbelianGroup, GroupElement};
pub use cyclotomic::Cyclo;
pub use error::{Error, Result};
pub use gauss::{gauss_sum, gauss_sum_padic, MultiplicativeCharacter, ResidueSubgroup};
pub use groupring::{CharacterVector, CoeffAlgebra, GroupMap, GroupRingElement};
pub use padic::{PadicCyclo, Valuation};
pub use ramify::{RamificationClass, RamificationFiltration};
pub use scalar::{FieldScalar, Scalar};
pub use stickelberger::{EquivariantMap, MultiplicativeValue, RationalGroupElement, VirtualCharacter};
pub use suite::{Report, ReportRecord, Suite, SuiteConfig};
pub use wildsym::{WildContext, WildElement, WildMonomial};

/// Exact element of `Q(zeta_m)`.
pub type CycloElement = Cyclo<BigRational>;
/// Element of `Z[zeta_m]` with unbounded coefficients.
pub type CycloInteger = Cyclo<BigInt>;
/// Element of `Q(zeta_m)` with machine-word rationals; panics on overflow.
pub type CycloRational64 = Cyclo<Rational64>;
/// Truncated element of `Z_p[zeta_p]`.
pub type PadicCycloElement = PadicCyclo;
pub type CycloGroupMap = GroupMap<CycloElement>;
pub type CycloGroupRingElement = GroupRingElement<CycloElement>;
pub type CycloCharacterVector = CharacterVector<CycloElement>;
pub type RationalElement = RationalGroupElement<BigRational>;
pub type WildElementQ = WildElement<BigRational>;
