//! Dense univariate polynomial kernels over ℚ and ℤ.
//!
//! Polynomials are coefficient vectors in ascending degree order. Every
//! function here returns trimmed vectors: empty for zero, nonzero last entry
//! otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Q = BigRational;

pub(crate) fn trim(v: &mut Vec<Q>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn trim_int(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

#[cfg(test)]
pub(crate) fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Q::zero());
    }
    for (o, s) in out.iter_mut().zip(b) {
        *o -= s;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[Q], c: &Q) -> Vec<Q> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Euclidean division `a = q*b + r` with `deg r < deg b`. Panics if `b` is zero.
pub(crate) fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = b.last().unwrap().recip();
    let mut rem = a.to_vec();
    let mut quo = vec![Q::zero(); a.len() - b.len() + 1];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + b.len() - 1] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        quo[k] = c;
    }
    trim(&mut quo);
    rem.truncate(b.len() - 1);
    trim(&mut rem);
    (quo, rem)
}

/// Quotient of an exact division; debug-asserts that the remainder vanishes.
pub(crate) fn exact_div(a: &[Q], b: &[Q]) -> Vec<Q> {
    if b.len() == 1 {
        let inv = b[0].recip();
        return a.iter().map(|x| x * &inv).collect();
    }
    let (q, r) = divrem(a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub(crate) fn make_monic(a: &[Q]) -> Vec<Q> {
    match a.last() {
        None => Vec::new(),
        Some(lc) if lc.is_one() => a.to_vec(),
        Some(lc) => {
            let inv = lc.recip();
            a.iter().map(|x| x * &inv).collect()
        }
    }
}

/// Clears denominators and content: returns the primitive integer polynomial
/// with positive leading coefficient that is a ℚ-multiple of `a`.
pub(crate) fn primitive_integer(a: &[Q]) -> Vec<BigInt> {
    let lcm = a
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = a
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    trim_int(&mut ints);
    primitive_part(&mut ints);
    ints
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive_part(a: &mut [BigInt]) {
    let c = content(a);
    if c.is_zero() {
        return;
    }
    let negate = a.last().is_some_and(Signed::is_negative);
    for x in a.iter_mut() {
        *x = &*x / &c;
        if negate {
            *x = -&*x;
        }
    }
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`, all in ℤ[t].
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let lb = b.last().unwrap();
    let db = b.len() - 1;
    let mut steps = a.len() - db;
    while rem.len() > db {
        let lr = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - db;
        for x in rem.iter_mut() {
            *x *= lb;
        }
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &lr * y;
        }
        trim_int(&mut rem);
        steps -= 1;
    }
    if steps > 0 {
        let f = num_traits::pow(lb.clone(), steps);
        for x in rem.iter_mut() {
            *x *= &f;
        }
    }
    rem
}

/// Monic gcd over ℚ computed with the subresultant remainder sequence in ℤ[t].
pub(crate) fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() {
        return make_monic(b);
    }
    if b.is_empty() {
        return make_monic(a);
    }
    if a.len() == 1 || b.len() == 1 {
        return vec![Q::one()];
    }
    let mut f = primitive_integer(a);
    let mut g = primitive_integer(b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    let mut sg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = f.len() - g.len();
        let r = pseudo_rem(&f, &g);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return vec![Q::one()];
        }
        let divisor = &sg * num_traits::pow(h.clone(), delta);
        f = std::mem::replace(&mut g, r.into_iter().map(|x| x / &divisor).collect());
        sg = f.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(sg.clone(), delta) / num_traits::pow(h, delta - 1)
        };
    }
    primitive_part(&mut g);
    let lc = Q::from_integer(g.last().unwrap().clone());
    g.into_iter().map(|x| Q::from_integer(x) / &lc).collect()
}

/// Returns `s` with `s*a ≡ 1 (mod m)`, assuming `gcd(a, m) = 1`.
pub(crate) fn inverse_mod(a: &[Q], m: &[Q]) -> Option<Vec<Q>> {
    let (mut r0, mut r1) = (m.to_vec(), divrem(a, m).1);
    let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![Q::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = r0[0].recip();
    Some(divrem(&scale(&s0, &inv), m).1)
}

pub(crate) fn eval(a: &[Q], x: &Q) -> Q {
    a.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&c| Q::from_integer(c.into())).collect()
    }

    #[test]
    fn gcd_of_products() {
        // (t-1)(t+2) and (t-1)(t^2+1)
        let a = mul(&q(&[-1, 1]), &q(&[2, 1]));
        let b = mul(&q(&[-1, 1]), &q(&[1, 0, 1]));
        assert_eq!(gcd(&a, &b), q(&[-1, 1]));
    }

    #[test]
    fn gcd_coprime_is_one() {
        assert_eq!(gcd(&q(&[1, 0, 1]), &q(&[1, 1])), q(&[1]));
    }

    #[test]
    fn gcd_with_rational_coefficients() {
        let half = Q::new(1.into(), 2.into());
        let a = vec![half.clone(), half.clone()]; // (t+1)/2
        let b = mul(&q(&[1, 1]), &q(&[3, 0, 0, 1]));
        assert_eq!(gcd(&a, &b), q(&[1, 1]));
    }

    #[test]
    fn gcd_deep_sequence() {
        // Knuth's classic example: gcd is 1.
        let a = q(&[-5, 2, 8, -3, -3, 0, 1, 0, 1]);
        let b = q(&[21, -9, -4, 0, 5, 0, 3]);
        assert_eq!(gcd(&a, &b), q(&[1]));
        let c = q(&[7, 0, 1, 3]);
        assert_eq!(gcd(&mul(&a, &c), &mul(&b, &c)), make_monic(&c));
    }

    #[test]
    fn divrem_reconstructs() {
        let a = q(&[3, -2, 0, 5, 1]);
        let b = q(&[1, 0, 2]);
        let (qq, r) = divrem(&a, &b);
        assert_eq!(add(&mul(&qq, &b), &r), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn inverse_modulo_irreducible() {
        let m = q(&[1, -1, 1]);
        let a = q(&[2, 3]);
        let s = inverse_mod(&a, &m).unwrap();
        assert_eq!(divrem(&mul(&s, &a), &m).1, q(&[1]));
    }
}
