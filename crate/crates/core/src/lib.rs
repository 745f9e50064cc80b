//! Exact computations in the Temperley-Lieb category: diagrams, linear
//! morphisms over ℚ(t) and its root-of-unity specializations, Jones-Wenzl
//! projectors and path idempotents, negligible morphisms and tensor ideals.

pub mod diagram;
pub mod error;
pub mod exactscalar;
pub mod ideal;
pub mod linalg;
pub mod morphism;
pub mod rootspec;
pub mod tower;

pub use diagram::Diagram;
pub use error::{Error, Result};
pub use exactscalar::{CycloRing, CycloScalar, FieldElem, GenericRing, Ring, RingTag, Scalar};
pub use morphism::Morphism;
