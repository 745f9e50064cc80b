use std::fmt::Debug;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::cyclo::{CycloContext, CycloScalar};
use super::field::FieldElem;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Serialized ring label: `"generic"` or `{"cyclo": L}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingTag {
    Generic,
    Cyclo(u32),
}

/// Coefficient ring of a morphism space.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Elem: FieldElem + Serialize + DeserializeOwned;

    fn tag(&self) -> RingTag;
    fn from_tag(tag: RingTag) -> Result<Self>;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Value of a closed loop, `d = t + t^-1` or its specialization.
    fn loop_value(&self) -> Self::Elem;
}

/// The generic field ℚ(t).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenericRing;

impl Ring for GenericRing {
    type Elem = Scalar;

    fn tag(&self) -> RingTag {
        RingTag::Generic
    }
    fn from_tag(tag: RingTag) -> Result<Self> {
        match tag {
            RingTag::Generic => Ok(GenericRing),
            other => Err(Error::RingMismatch(format!("expected generic ring, found {other:?}"))),
        }
    }
    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn from_int(&self, n: i64) -> Scalar {
        Scalar::from_int(n)
    }
    fn loop_value(&self) -> Scalar {
        Scalar::d()
    }
}

/// ℚ(τ) for a fixed ℓ.
#[derive(Clone)]
pub struct CycloRing {
    ctx: Arc<CycloContext>,
}

impl CycloRing {
    pub fn new(ell: u32) -> Result<Self> {
        Ok(CycloRing { ctx: CycloContext::get(ell)? })
    }

    pub fn ell(&self) -> u32 {
        self.ctx.ell()
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        &self.ctx
    }
}

impl PartialEq for CycloRing {
    fn eq(&self, other: &Self) -> bool {
        self.ell() == other.ell()
    }
}

impl Debug for CycloRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycloRing(ell={})", self.ell())
    }
}

impl Ring for CycloRing {
    type Elem = CycloScalar;

    fn tag(&self) -> RingTag {
        RingTag::Cyclo(self.ell())
    }
    fn from_tag(tag: RingTag) -> Result<Self> {
        match tag {
            RingTag::Cyclo(ell) => CycloRing::new(ell),
            other => Err(Error::RingMismatch(format!("expected cyclotomic ring, found {other:?}"))),
        }
    }
    fn zero(&self) -> CycloScalar {
        CycloScalar::zero(&self.ctx)
    }
    fn one(&self) -> CycloScalar {
        CycloScalar::from_int(&self.ctx, 1)
    }
    fn from_int(&self, n: i64) -> CycloScalar {
        CycloScalar::from_int(&self.ctx, n)
    }
    fn loop_value(&self) -> CycloScalar {
        let tau = CycloScalar::tau(&self.ctx);
        tau.add(&tau.inv().expect("tau is a unit"))
    }
}
