use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::field::FieldElem;
use super::laurent::LaurentPoly;
use super::poly::{self, Q};
use super::scalar::{parse_rational, rational_to_string, Scalar};
use crate::error::{Error, Result};

/// Arithmetic context for ℚ(τ) = ℚ[t]/Φ_{2ℓ}(t), τ = e^{iπ/ℓ}.
pub struct CycloContext {
    ell: u32,
    modulus: Vec<Q>,
    /// `tau_pow[j]` is τ^j reduced to the power basis, for 0 ≤ j < 2ℓ.
    tau_pow: Vec<Vec<Q>>,
}

impl CycloContext {
    /// Shared context for `ell`; contexts are built once per process.
    pub fn get(ell: u32) -> Result<Arc<CycloContext>> {
        if ell < 3 {
            return Err(Error::BadParameter(format!("ell must be at least 3, got {ell}")));
        }
        static CONTEXTS: OnceLock<Mutex<HashMap<u32, Arc<CycloContext>>>> = OnceLock::new();
        let map = CONTEXTS.get_or_init(Default::default);
        if let Some(ctx) = map.lock().unwrap().get(&ell) {
            return Ok(ctx.clone());
        }
        let built = Arc::new(Self::build(ell));
        Ok(map.lock().unwrap().entry(ell).or_insert(built).clone())
    }

    fn build(ell: u32) -> Self {
        let modulus = cyclotomic_poly(2 * ell as usize);
        let phi = modulus.len() - 1;
        let mut tau_pow = Vec::with_capacity(2 * ell as usize);
        let mut cur = vec![Q::zero(); phi];
        cur[0] = Q::one();
        for _ in 0..2 * ell {
            tau_pow.push(cur.clone());
            // multiply by t and reduce the overflow coefficient
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Q::zero();
            if !Zero::is_zero(&top) {
                for i in 0..phi {
                    cur[i] -= &top * &modulus[i];
                }
            }
        }
        CycloContext { ell, modulus, tau_pow }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// φ(2ℓ), the degree of the field over ℚ.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> LaurentPoly {
        LaurentPoly::from_dense(0, self.modulus.clone())
    }

    fn reduce_power(&self, exp: i64) -> &[Q] {
        let n = 2 * self.ell as i64;
        &self.tau_pow[exp.rem_euclid(n) as usize]
    }

    /// Image of a Laurent polynomial under t ↦ τ.
    pub fn reduce(&self, p: &LaurentPoly) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.degree()];
        for (e, c) in p.terms() {
            for (o, b) in out.iter_mut().zip(self.reduce_power(e as i64)) {
                if !Zero::is_zero(b) {
                    *o += c * b;
                }
            }
        }
        out
    }
}

impl fmt::Debug for CycloContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloContext(ell={})", self.ell)
    }
}

/// Φ_n by dividing t^n - 1 by Φ_k for every proper divisor k of n.
fn cyclotomic_poly(n: usize) -> Vec<Q> {
    let mut p = vec![Q::zero(); n + 1];
    p[0] = -Q::one();
    p[n] = Q::one();
    for k in 1..n {
        if n % k == 0 {
            p = poly::exact_div(&p, &cyclotomic_poly(k));
        }
    }
    p
}

/// The minimal polynomial Φ_{2ℓ}(t) of τ = e^{iπ/ℓ}.
pub fn cyclotomic_modulus(ell: u32) -> Result<LaurentPoly> {
    Ok(CycloContext::get(ell)?.modulus())
}

/// Element of ℚ(τ) in the power basis 1, τ, …, τ^{φ(2ℓ)-1}.
#[derive(Clone)]
pub struct CycloScalar {
    ctx: Arc<CycloContext>,
    coeffs: Vec<Q>,
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.ell == other.ctx.ell && self.coeffs == other.coeffs
    }
}

impl Eq for CycloScalar {}

impl CycloScalar {
    pub fn zero(ctx: &Arc<CycloContext>) -> Self {
        CycloScalar { ctx: ctx.clone(), coeffs: vec![Q::zero(); ctx.degree()] }
    }

    pub fn from_rational(ctx: &Arc<CycloContext>, q: Q) -> Self {
        let mut s = Self::zero(ctx);
        s.coeffs[0] = q;
        s
    }

    pub fn from_int(ctx: &Arc<CycloContext>, n: i64) -> Self {
        Self::from_rational(ctx, Q::from_integer(n.into()))
    }

    /// τ itself.
    pub fn tau(ctx: &Arc<CycloContext>) -> Self {
        Self::from_laurent(ctx, &LaurentPoly::t())
    }

    pub fn from_laurent(ctx: &Arc<CycloContext>, p: &LaurentPoly) -> Self {
        CycloScalar { ctx: ctx.clone(), coeffs: ctx.reduce(p) }
    }

    /// Builds from explicit power-basis coordinates.
    pub fn from_coeffs(ctx: &Arc<CycloContext>, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != ctx.degree() {
            return Err(Error::BadParameter(format!(
                "expected {} coordinates for ell={}, got {}",
                ctx.degree(),
                ctx.ell,
                coeffs.len()
            )));
        }
        Ok(CycloScalar { ctx: ctx.clone(), coeffs })
    }

    pub fn ell(&self) -> u32 {
        self.ctx.ell
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.ctx.ell, other.ctx.ell, "mixing cyclotomic fields of different levels");
    }
}

/// Evaluates a generic scalar at τ; fails when τ is a pole.
pub fn specialize(f: &Scalar, ell: u32) -> Result<CycloScalar> {
    let ctx = CycloContext::get(ell)?;
    specialize_in(f, &ctx)
}

pub(crate) fn specialize_in(f: &Scalar, ctx: &Arc<CycloContext>) -> Result<CycloScalar> {
    let num = CycloScalar::from_laurent(ctx, f.num());
    if f.is_laurent() {
        return Ok(num);
    }
    let den = CycloScalar::from_laurent(ctx, f.den());
    if den.is_zero() {
        return Err(Error::NotEvaluable { ell: ctx.ell, context: format!("pole of {f} at tau") });
    }
    Ok(num.mul(&den.inv()?))
}

impl FieldElem for CycloScalar {
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn is_one(&self) -> bool {
        One::is_one(&self.coeffs[0]) && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn neg(&self) -> Self {
        CycloScalar { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycloScalar { ctx: self.ctx.clone(), coeffs }
    }

    fn sub(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CycloScalar { ctx: self.ctx.clone(), coeffs }
    }

    fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let n = self.ctx.degree();
        let mut full = vec![Q::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    full[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<Q> = full.drain(..n).collect();
        for (k, c) in full.into_iter().enumerate() {
            if Zero::is_zero(&c) {
                continue;
            }
            for (o, b) in coeffs.iter_mut().zip(&self.ctx.tau_pow[n + k]) {
                if !Zero::is_zero(b) {
                    *o += &c * b;
                }
            }
        }
        CycloScalar { ctx: self.ctx.clone(), coeffs }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut a = self.coeffs.clone();
        poly::trim(&mut a);
        let s = poly::inverse_mod(&a, &self.ctx.modulus).ok_or(Error::DivisionByZero)?;
        let mut coeffs = s;
        coeffs.resize(self.ctx.degree(), Q::zero());
        Ok(CycloScalar { ctx: self.ctx.clone(), coeffs })
    }

    fn add_assign(&mut self, other: &Self) {
        self.check_same(other);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    fn sub_mul_assign(&mut self, factor: &Self, other: &Self) {
        let prod = factor.mul(other);
        for (a, b) in self.coeffs.iter_mut().zip(&prod.coeffs) {
            *a -= b;
        }
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = self.coeffs.clone();
        poly::trim(&mut p);
        let shown = LaurentPoly::from_dense(0, p).to_string().replace('t', "τ");
        write!(f, "{shown}")
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloScalar[ell={}]({self})", self.ctx.ell)
    }
}

/// JSON shape: `{"ell": L, "coeffs": ["p/q", ...]}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct CycloJson {
    ell: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloJson { ell: self.ctx.ell, coeffs: self.coeffs.iter().map(rational_to_string).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CycloJson::deserialize(d)?;
        let build = || -> Result<CycloScalar> {
            let ctx = CycloContext::get(j.ell)?;
            let coeffs = j.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            CycloScalar::from_coeffs(&ctx, coeffs)
        };
        build().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactscalar::quantum_integer;
    use crate::exactscalar::scalar::big;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, big(c))))
    }

    /// Independent oracle: Φ_n as the monic polynomial whose roots are the
    /// primitive n-th roots, built from the product formula
    /// Φ_n = Π_{k | n} (t^k - 1)^{μ(n/k)}.
    fn cyclotomic_by_mobius(n: usize) -> LaurentPoly {
        fn mobius(mut n: usize) -> i32 {
            let mut result = 1;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    n /= p;
                    if n % p == 0 {
                        return 0;
                    }
                    result = -result;
                }
                p += 1;
            }
            if n > 1 {
                result = -result;
            }
            result
        }
        let mut num = LaurentPoly::one();
        let mut den = LaurentPoly::one();
        for k in 1..=n {
            if n % k == 0 {
                let f = lp(&[(k as i32, 1), (0, -1)]);
                match mobius(n / k) {
                    1 => num = &num * &f,
                    -1 => den = &den * &f,
                    _ => {}
                }
            }
        }
        let s = Scalar::new(num, den).unwrap();
        assert!(s.is_laurent());
        s.num().clone()
    }

    #[test]
    fn moduli_for_small_ell() {
        assert_eq!(cyclotomic_modulus(3).unwrap(), lp(&[(2, 1), (1, -1), (0, 1)]));
        assert_eq!(cyclotomic_modulus(4).unwrap(), lp(&[(4, 1), (0, 1)]));
        assert_eq!(cyclotomic_modulus(5).unwrap(), lp(&[(4, 1), (3, -1), (2, 1), (1, -1), (0, 1)]));
        for ell in 3..12 {
            assert_eq!(cyclotomic_modulus(ell).unwrap(), cyclotomic_by_mobius(2 * ell as usize));
        }
    }

    #[test]
    fn small_ell_is_rejected() {
        assert!(matches!(cyclotomic_modulus(2), Err(Error::BadParameter(_))));
    }

    #[test]
    fn loop_value_at_ell_three_is_one() {
        assert!(specialize(&Scalar::d(), 3).unwrap().is_one());
    }

    #[test]
    fn third_quantum_integer_vanishes_at_ell_three() {
        assert!(specialize(&quantum_integer(3), 3).unwrap().is_zero());
        let inv = quantum_integer(3).inv().unwrap();
        assert!(matches!(specialize(&inv, 3), Err(Error::NotEvaluable { .. })));
    }

    #[test]
    fn tau_has_order_two_ell() {
        for ell in 3..8 {
            let ctx = CycloContext::get(ell).unwrap();
            let tau = CycloScalar::tau(&ctx);
            let mut acc = CycloScalar::from_int(&ctx, 1);
            for k in 1..=2 * ell {
                acc = acc.mul(&tau);
                assert_eq!(acc.is_one(), k == 2 * ell, "ell={ell} k={k}");
            }
        }
    }

    #[test]
    fn inverse_in_field() {
        let ctx = CycloContext::get(5).unwrap();
        let x = CycloScalar::from_laurent(&ctx, &lp(&[(0, 2), (1, -1), (3, 3)]));
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn json_shape() {
        let ctx = CycloContext::get(3).unwrap();
        let x = CycloScalar::tau(&ctx);
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"ell":3,"coeffs":["0","1"]}"#);
        let back: CycloScalar = serde_json::from_str(r#"{"ell":3,"coeffs":["0","1"]}"#).unwrap();
        assert_eq!(back, x);
    }
}
