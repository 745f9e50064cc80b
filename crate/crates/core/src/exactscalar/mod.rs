//! Exact scalars: the generic field ℚ(t) and its specializations ℚ(τ) at
//! τ = e^{iπ/ℓ}.

mod cyclo;
mod field;
mod laurent;
pub(crate) mod poly;
mod ring;
mod scalar;

pub use cyclo::{cyclotomic_modulus, specialize, CycloContext, CycloScalar};
pub use field::FieldElem;
pub use laurent::LaurentPoly;
pub use ring::{CycloRing, GenericRing, Ring, RingTag};
pub use scalar::{quantum_integer, Scalar};

pub(crate) use cyclo::specialize_in;

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
