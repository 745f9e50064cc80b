use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::field::FieldElem;
use super::laurent::LaurentPoly;
use super::poly::{self, Q};
use crate::error::{Error, Result};

/// Element of ℚ(t) in canonical reduced form.
///
/// `den` is an ordinary monic polynomial with nonzero constant term; all powers
/// of `t` live in `num`; `num` and `den` are coprime. Two scalars are equal iff
/// their fields are.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ScalarJson", into = "ScalarJson")]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(n))
    }

    pub fn from_rational(q: Q) -> Self {
        Self::from_poly(LaurentPoly::constant(q))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Scalar { num: p, den: LaurentPoly::one() }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_poly(LaurentPoly::t())
    }

    /// The loop value `d = t + t^-1`.
    pub fn d() -> Self {
        Self::from_poly(&LaurentPoly::t() + &LaurentPoly::t().shift(-2))
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = num.low_exp() - den.low_exp();
        let (mut n, mut d) = (num.body().to_vec(), den.body().to_vec());
        if d.len() > 1 {
            let g = poly::gcd(&n, &d);
            if g.len() > 1 {
                n = poly::exact_div(&n, &g);
                d = poly::exact_div(&d, &g);
            }
        }
        let lc = d.last().unwrap().clone();
        if !One::is_one(&lc) {
            let inv = lc.recip();
            n = poly::scale(&n, &inv);
            d = poly::scale(&d, &inv);
        }
        Scalar { num: LaurentPoly::from_dense(shift, n), den: LaurentPoly::from_dense(0, d) }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval_at(&self, x: &Q) -> Option<Q> {
        let den = self.den.eval(x)?;
        if Zero::is_zero(&den) {
            return None;
        }
        Some(self.num.eval(x)? / den)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { FieldElem::inv(self)? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(Scalar { num: base.num.pow(e), den: base.den.pow(e) })
    }
}

/// The quantum integer `[m] = (t^m - t^-m) / (t - t^-1)`.
pub fn quantum_integer(m: i64) -> Scalar {
    if m == 0 {
        return Scalar::zero();
    }
    let k = m.unsigned_abs() as i32;
    let sign = if m < 0 { -Q::one() } else { Q::one() };
    let p = LaurentPoly::from_terms((0..k).map(|i| (k - 1 - 2 * i, sign.clone())));
    Scalar::from_poly(p)
}

impl FieldElem for Scalar {
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn neg(&self) -> Self {
        Scalar { num: -&self.num, den: self.den.clone() }
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one() {
                return Self::from_poly(&self.num + &other.num);
            }
            return Self::normalize(&self.num + &other.num, self.den.clone());
        }
        let g = LaurentPoly::from_dense(0, poly::gcd(self.den.body(), other.den.body()));
        let (b, d) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (
                LaurentPoly::from_dense(0, poly::exact_div(self.den.body(), g.body())),
                LaurentPoly::from_dense(0, poly::exact_div(other.den.body(), g.body())),
            )
        };
        let num = &(&self.num * &d) + &(&other.num * &b);
        let den = &(&b * &d) * &g;
        Self::normalize(num, den)
    }

    fn sub(&self, other: &Self) -> Self {
        FieldElem::add(self, &FieldElem::neg(other))
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        // Cross-cancel before multiplying so the final gcd works on small inputs.
        let g1 = poly::gcd(self.num.body(), other.den.body());
        let g2 = poly::gcd(other.num.body(), self.den.body());
        let cut = |p: &LaurentPoly, g: &[Q]| {
            if g.len() > 1 {
                LaurentPoly::from_dense(p.low_exp(), poly::exact_div(p.body(), g))
            } else {
                p.clone()
            }
        };
        let num = &cut(&self.num, &g1) * &cut(&other.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&other.den, &g1);
        let shift = num.low_exp();
        let (n, d) = (num.body().to_vec(), den.body().to_vec());
        let lc = d.last().unwrap().clone();
        let inv = lc.recip();
        Scalar {
            num: LaurentPoly::from_dense(shift, poly::scale(&n, &inv)),
            den: LaurentPoly::from_dense(0, poly::scale(&d, &inv)),
        }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }
}

macro_rules! scalar_op {
    ($tr:ident, $m:ident) => {
        impl $tr for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                FieldElem::$m(self, rhs)
            }
        }
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                FieldElem::$m(&self, &rhs)
            }
        }
    };
}
scalar_op!(Add, add);
scalar_op!(Sub, sub);
scalar_op!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        FieldElem::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        FieldElem::neg(&self)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

/// JSON shape: `{"num": [[exp, "p/q"], ...], "den": [[exp, "p/q"], ...]}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct ScalarJson {
    num: Vec<(i32, String)>,
    den: Vec<(i32, String)>,
}

pub(crate) fn rational_to_string(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Q> {
    let q = Q::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(q)
}

fn terms_to_json(p: &LaurentPoly) -> Vec<(i32, String)> {
    p.terms().map(|(e, c)| (e, rational_to_string(c))).collect()
}

fn terms_from_json(v: &[(i32, String)]) -> Result<LaurentPoly> {
    let terms = v
        .iter()
        .map(|(e, s)| Ok((*e, parse_rational(s)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(terms))
}

impl From<Scalar> for ScalarJson {
    fn from(s: Scalar) -> Self {
        ScalarJson { num: terms_to_json(&s.num), den: terms_to_json(&s.den) }
    }
}

impl TryFrom<ScalarJson> for Scalar {
    type Error = Error;
    fn try_from(j: ScalarJson) -> Result<Self> {
        Scalar::new(terms_from_json(&j.num)?, terms_from_json(&j.den)?)
    }
}

impl Scalar {
    /// Parses a coefficient written as a plain rational, e.g. `"-3/2"`.
    pub fn parse_rational(s: &str) -> Result<Self> {
        Ok(Self::from_rational(parse_rational(s)?))
    }
}

#[cfg(test)]
pub(crate) fn big(n: i64) -> Q {
    Q::from_integer(num_bigint::BigInt::from(n))
}
