use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{self, Q};

/// Laurent polynomial in `t` with rational coefficients.
///
/// Stored densely as `t^low * (c_0 + c_1 t + ...)` with `c_0` and the last
/// coefficient nonzero; the zero polynomial has no coefficients and `low = 0`.
/// The representation is canonical, so derived equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Q::from_integer(BigInt::from(n)))
    }

    /// `c * t^exp`.
    pub fn monomial(c: Q, exp: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { low: exp, coeffs: vec![c] }
        }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(Q::one(), 1)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, Q)>>(terms: I) -> Self {
        let terms: Vec<(i32, Q)> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![Q::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    /// `t^low * Σ coeffs[i] t^i`, normalizing away zero ends.
    pub fn from_dense(low: i32, mut coeffs: Vec<Q>) -> Self {
        poly::trim(&mut coeffs);
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly { low: low + lead_zeros as i32, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exp(&self) -> i32 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient (`None` for zero).
    pub fn high_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn coeff(&self, exp: i32) -> Q {
        let i = exp - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            Q::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    /// True for ordinary polynomials (no negative exponents).
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.low >= 0
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low, coeffs: poly::scale(&self.coeffs, c) }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &Q) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        if x.is_zero() && self.low < 0 {
            return None;
        }
        let body = poly::eval(&self.coeffs, x);
        let xp = if self.low >= 0 {
            num_traits::pow(x.clone(), self.low as usize)
        } else {
            num_traits::pow(x.recip(), (-self.low) as usize)
        };
        Some(body * xp)
    }

    /// Dense coefficients of `t^-low * self`, which has nonzero constant term.
    pub(crate) fn body(&self) -> &[Q] {
        &self.coeffs
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exp().unwrap().max(rhs.high_exp().unwrap());
        let mut coeffs = vec![Q::zero(); (high - low + 1) as usize];
        for (src, off) in [(self, self.low - low), (rhs, rhs.low - low)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                coeffs[off as usize + i] += c;
            }
        }
        LaurentPoly::from_dense(low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        // Both bodies have nonzero constant and leading terms, so the product does too.
        LaurentPoly { low: self.low + rhs.low, coeffs: poly::mul(&self.coeffs, &rhs.coeffs) }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c < &Q::zero();
            let abs = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_coeff = !abs.is_one() || e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{e}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
