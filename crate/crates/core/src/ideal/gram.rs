//! Trace pairings and negligible morphisms.

use serde::Serialize;

use crate::diagram::{closure_loops_raw, compose_raw, hom_basis, transpose_diagram, Diagram};
use crate::error::{Error, Result};
use crate::exactscalar::{CycloRing, FieldElem, GenericRing, Ring, RingTag, Scalar};
use crate::linalg::{self, Echelon};

fn check_parity(m: usize, n: usize) -> Result<()> {
    if (m + n) % 2 == 1 {
        return Err(Error::ParityError(format!("Hom({m},{n}) is zero")));
    }
    Ok(())
}

/// Loops in the closure of `x ∘ y`, `x ∈ Hom(n, m)`, `y ∈ Hom(m, n)`.
pub fn pairing_loops(x: Diagram, y: Diagram) -> usize {
    let (m, n) = (y.top(), y.bot());
    let (xb, yb) = (hom_basis(n, m), hom_basis(m, n));
    let (raw, r) = compose_raw(xb.pairing(x.index()), m, n, yb.pairing(y.index()), m);
    r + closure_loops_raw(&raw, m)
}

/// Loop counts of `Tr(x ∘ y)`: rows `x` over `Hom(n, m)`, columns `y` over
/// `Hom(m, n)`, both in enumeration order.
pub fn pairing_loop_matrix(m: usize, n: usize) -> Vec<Vec<usize>> {
    let (xs, ys) = (hom_basis(n, m), hom_basis(m, n));
    xs.diagrams().map(|x| ys.diagrams().map(|y| pairing_loops(x, y)).collect()).collect()
}

fn loop_powers<R: Ring>(ring: &R, max: usize) -> Vec<R::Elem> {
    let d = ring.loop_value();
    let mut pows = vec![ring.one()];
    for _ in 0..max {
        let next = pows.last().unwrap().mul(&d);
        pows.push(next);
    }
    pows
}

/// The pairing with columns in `Hom(m, n)` enumeration order, so that its
/// right kernel is `Neg(m, n)` in the standard coordinates.
pub fn pairing_matrix<R: Ring>(m: usize, n: usize, ring: &R) -> Result<Vec<Vec<R::Elem>>> {
    check_parity(m, n)?;
    let loops = pairing_loop_matrix(m, n);
    let pows = loop_powers(ring, m.max(n) + 1);
    Ok(loops.iter().map(|row| row.iter().map(|&r| pows[r].clone()).collect()).collect())
}

/// `G[x][y] = Tr(x ∘ y)` with `x` over the enumeration of `Hom(n, m)` and `y`
/// over the transposes of that same list.
#[derive(Clone, Debug, Serialize)]
pub struct GramMatrix<E> {
    pub m: usize,
    pub n: usize,
    pub ring: RingTag,
    pub size: usize,
    pub entries: Vec<Vec<E>>,
}

pub fn gram_matrix<R: Ring>(m: usize, n: usize, ring: &R) -> Result<GramMatrix<R::Elem>> {
    check_parity(m, n)?;
    let xs: Vec<Diagram> = hom_basis(n, m).diagrams().collect();
    let pows = loop_powers(ring, m.max(n) + 1);
    let entries = xs
        .iter()
        .map(|&x| xs.iter().map(|&x2| pows[pairing_loops(x, transpose_diagram(x2))].clone()).collect())
        .collect();
    Ok(GramMatrix { m, n, ring: ring.tag(), size: xs.len(), entries })
}

/// `Neg(m, n)` at `τ = e^{iπ/ℓ}` in reduced row echelon form.
pub fn negligible_basis(m: usize, n: usize, ell: u32) -> Result<Echelon<crate::exactscalar::CycloScalar>> {
    let ring = CycloRing::new(ell)?;
    let rows = pairing_matrix(m, n, &ring)?;
    Ok(linalg::kernel(&rows, hom_basis(m, n).len(), &ring.one()))
}

/// `Neg(m, n)` over ℚ(t).
pub fn negligible_basis_generic(m: usize, n: usize) -> Result<Echelon<Scalar>> {
    let rows = pairing_matrix(m, n, &GenericRing)?;
    let dim = hom_basis(m, n).len();
    if linalg::generic_rank(&rows) == dim {
        return Ok(Echelon::new(dim));
    }
    Ok(linalg::kernel(&rows, dim, &Scalar::one()))
}

/// `2^61 − 1`.
pub const CERT_PRIME: u64 = (1 << 61) - 1;

/// Rank of the `(m, n)` pairing at `t = x (mod p)`; a lower bound for the
/// rank over ℚ(t) whenever `x` is a unit mod `p`.
pub fn pairing_rank_mod_p(m: usize, n: usize, x: u64, p: u64) -> usize {
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut inv = 1u64;
    let (mut base, mut e) = (x % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            inv = mulmod(inv, base);
        }
        base = mulmod(base, base);
        e >>= 1;
    }
    let d = (x % p + inv) % p;
    let mut pows = vec![1u64];
    for _ in 0..=m.max(n) {
        pows.push(mulmod(*pows.last().unwrap(), d));
    }
    let rows = pairing_loop_matrix(m, n).iter().map(|row| row.iter().map(|&r| pows[r]).collect()).collect();
    linalg::rank_mod_p(rows, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactscalar::{specialize, CycloScalar};

    #[test]
    fn gram_2_2() {
        let g = gram_matrix(2, 2, &GenericRing).unwrap();
        let d = Scalar::d();
        let d2 = &d * &d;
        assert_eq!(g.entries, vec![vec![d2.clone(), d.clone()], vec![d.clone(), d2.clone()]]);
        let det = &(&d2 * &d2) - &(&d * &d);
        assert_eq!(det, &(&d2 * &d2) - &d2);
        assert!(specialize(&det, 3).unwrap().is_zero());
        assert_eq!(linalg::generic_rank(&g.entries), 2);
        let g0 = gram_matrix(0, 0, &GenericRing).unwrap();
        assert_eq!(g0.entries, vec![vec![Scalar::one()]]);
        assert!(matches!(gram_matrix(1, 2, &GenericRing), Err(Error::ParityError(_))));
    }

    #[test]
    fn neg_small() {
        let neg = negligible_basis(2, 2, 3).unwrap();
        assert_eq!(neg.rank(), 1);
        let one = CycloScalar::from_int(CycloRing::new(3).unwrap().context(), 1);
        // enumeration order of Hom(2,2) is (e_1, 1_2)
        assert_eq!(neg.basis(), vec![vec![(0, one.clone()), (1, one.neg())]]);
        assert_eq!(negligible_basis(1, 1, 3).unwrap().rank(), 0);
        assert_eq!(negligible_basis_generic(2, 2).unwrap().rank(), 0);
        assert_eq!(negligible_basis_generic(3, 1).unwrap().rank(), 0);
    }

    #[test]
    fn modular_certificate() {
        for n in 0..6 {
            assert_eq!(pairing_rank_mod_p(n, n, 2, CERT_PRIME) as u128, crate::diagram::catalan(n));
        }
    }
}
