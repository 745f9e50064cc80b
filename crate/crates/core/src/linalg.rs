//! Exact linear algebra over a [`FieldElem`]: incremental reduced row echelon
//! form on sparse vectors, kernels, and rank certificates.

use serde::{Serialize, Serializer};

use crate::exactscalar::{FieldElem, Rational, Scalar};

/// Sparse vector: `(coordinate, nonzero value)` pairs, coordinates ascending.
pub type SparseVec<F> = Vec<(u32, F)>;

const NO_ROW: u32 = u32::MAX;

/// A subspace of `F^dim` kept in fully reduced row echelon form. The pivot of
/// a row is its first nonzero coordinate and carries the value 1; no other
/// row is nonzero at that coordinate. The form is unique for the subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon<F> {
    dim: usize,
    rows: Vec<SparseVec<F>>,
    pivot_row: Vec<u32>,
}

/// `a - f * b` on sparse vectors.
fn axpy<F: FieldElem>(a: &[(u32, F)], f: &F, b: &[(u32, F)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(&b[j].1).neg()));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.sub_mul_assign(f, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<F: FieldElem> Echelon<F> {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivot_row: vec![NO_ROW; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[(u32, F)]) -> SparseVec<F> {
        if self.rows.is_empty() {
            return v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        }
        let mut acc: Vec<Option<F>> = vec![None; self.dim];
        let mut touched: Vec<u32> = Vec::with_capacity(v.len());
        for (c, x) in v {
            acc[*c as usize] = Some(x.clone());
            touched.push(*c);
        }
        // Subtracting a row only touches non-pivot coordinates, so one pass
        // over the pivots present in `v` suffices.
        for (c, _) in v {
            let r = self.pivot_row[*c as usize];
            if r == NO_ROW {
                continue;
            }
            let Some(f) = acc[*c as usize].take() else { continue };
            if f.is_zero() {
                continue;
            }
            for (col, val) in &self.rows[r as usize][1..] {
                match &mut acc[*col as usize] {
                    Some(x) => x.sub_mul_assign(&f, val),
                    slot @ None => {
                        *slot = Some(f.mul(val).neg());
                        touched.push(*col);
                    }
                }
            }
        }
        touched.sort_unstable();
        touched.dedup();
        touched
            .into_iter()
            .filter_map(|c| acc[c as usize].take().filter(|x| !x.is_zero()).map(|x| (c, x)))
            .collect()
    }

    pub fn contains(&self, v: &[(u32, F)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: &[(u32, F)]) -> bool {
        let mut w = self.reduce(v);
        if w.is_empty() {
            return false;
        }
        let p = w[0].0;
        let lead = w[0].1.inv().expect("leading entry is nonzero");
        if !lead.is_one() {
            for (_, x) in w.iter_mut() {
                *x = x.mul(&lead);
            }
        }
        for row in self.rows.iter_mut() {
            if let Ok(k) = row.binary_search_by_key(&p, |(c, _)| *c) {
                let f = row[k].1.clone();
                *row = axpy(row, &f, &w);
            }
        }
        self.pivot_row[p as usize] = self.rows.len() as u32;
        self.rows.push(w);
        true
    }

    /// Inserts every vector, returning how many raised the rank.
    pub fn extend<'a>(&mut self, vs: impl IntoIterator<Item = &'a SparseVec<F>>) -> usize {
        vs.into_iter().filter(|v| self.insert(v)).count()
    }

    /// Pivot coordinates, ascending.
    pub fn pivots(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.rows.iter().map(|r| r[0].0).collect();
        p.sort_unstable();
        p
    }

    /// The canonical basis, rows ordered by pivot.
    pub fn basis(&self) -> Vec<SparseVec<F>> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r[0].0);
        rows
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Echelon<F>) -> bool {
        self.dim == other.dim && self.rows.iter().all(|r| other.contains(r))
    }

    /// Builds the echelon form of a list of rows.
    pub fn from_rows<'a>(dim: usize, rows: impl IntoIterator<Item = &'a SparseVec<F>>) -> Self {
        let mut e = Echelon::new(dim);
        e.extend(rows);
        e
    }
}

impl<F: FieldElem + Serialize> Serialize for Echelon<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.basis().serialize(s)
    }
}

/// Dense to sparse.
pub fn sparsify<F: FieldElem>(v: &[F]) -> SparseVec<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i as u32, x.clone())).collect()
}

/// Exact rank of a dense matrix.
pub fn rank<F: FieldElem>(rows: &[Vec<F>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(&sparsify(r));
        if e.is_full() {
            break;
        }
    }
    e.rank()
}

/// Right kernel `{v : M v = 0}` in reduced row echelon form.
///
/// Rows are eliminated with pivots taken from the right, so each free column
/// `f` yields a kernel vector whose first nonzero coordinate is `f`.
pub fn kernel<F: FieldElem>(rows: &[Vec<F>], ncols: usize, one: &F) -> Echelon<F> {
    let flip = |c: usize| (ncols - 1 - c) as u32;
    let mut e = Echelon::new(ncols);
    for r in rows {
        let mut v: SparseVec<F> = r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (flip(c), x.clone())).collect();
        v.reverse();
        e.insert(&v);
        if e.is_full() {
            break;
        }
    }
    let mut out = Echelon::new(ncols);
    for f in 0..ncols {
        if e.pivot_row[flip(f) as usize] != NO_ROW {
            continue;
        }
        let mut v: SparseVec<F> = vec![(f as u32, one.clone())];
        for row in &e.rows {
            if let Ok(k) = row.binary_search_by_key(&flip(f), |(c, _)| *c) {
                v.push((flip(row[0].0 as usize), row[k].1.neg()));
            }
        }
        v.sort_unstable_by_key(|(c, _)| *c);
        out.insert(&v);
    }
    out
}

/// Rank of an integer matrix modulo a prime `p < 2^63`.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else { continue };
        rows.swap(rank, piv);
        let inv = powmod(rows[rank][col] % p, p - 2);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&x| mulmod(x % p, inv)).collect();
        for r in 0..rows.len() {
            if r == rank {
                continue;
            }
            let f = rows[r][col] % p;
            if f == 0 {
                continue;
            }
            for (x, &y) in rows[r].iter_mut().zip(&pivot_row) {
                *x = (*x % p + p - mulmod(f, y)) % p;
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Exact rank over ℚ(t).
///
/// Specializing `t` to a rational point can only lower the rank, so a point
/// where the specialized matrix has full rank settles the question; otherwise
/// the rank is computed by elimination over ℚ(t) itself.
pub fn generic_rank(rows: &[Vec<Scalar>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let full = rows.len().min(ncols);
    for x in [2i64, 3, 5] {
        let x = Rational::from_integer(x.into());
        let specialized: Option<Vec<Vec<Rational>>> =
            rows.iter().map(|r| r.iter().map(|s| s.eval_at(&x)).collect()).collect();
        if let Some(m) = specialized {
            if rank(&m) == full {
                return full;
            }
        }
    }
    rank(rows)
}

/// Reduces a rational to `F_p`, `None` if `p` divides the denominator.
pub fn rational_mod_p(q: &Rational, p: u64) -> Option<u64> {
    use num_bigint::BigInt;
    let pb = BigInt::from(p);
    let reduce = |x: &BigInt| -> u64 {
        let r = ((x % &pb) + &pb) % &pb;
        r.try_into().expect("residue fits in u64")
    };
    let num = reduce(q.numer());
    let den = reduce(q.denom());
    if den == 0 {
        return None;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let (mut base, mut e, mut inv) = (den, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            inv = mulmod(inv, base);
        }
        base = mulmod(base, base);
        e >>= 1;
    }
    Some(mulmod(num, inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactscalar::{specialize, CycloScalar, FieldElem};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qm(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn identity_rank() {
        let m: Vec<Vec<Rational>> = (0..5).map(|i| (0..5).map(|j| q((i == j) as i64)).collect()).collect();
        assert_eq!(rank(&m), 5);
    }

    #[test]
    fn rref_is_canonical() {
        let a = qm(&[&[1, 2, 3], &[2, 4, 7]]);
        let b = qm(&[&[3, 6, 10], &[0, 0, 5]]);
        let ea = Echelon::from_rows(3, a.iter().map(|r| sparsify(r)).collect::<Vec<_>>().iter());
        let eb = Echelon::from_rows(3, b.iter().map(|r| sparsify(r)).collect::<Vec<_>>().iter());
        assert_eq!(ea.basis(), eb.basis());
        assert_eq!(ea.basis(), vec![vec![(0, q(1)), (1, q(2))], vec![(2, q(1))]]);
        assert!(ea.is_subspace_of(&eb) && eb.is_subspace_of(&ea));
    }

    #[test]
    fn kernel_basic() {
        let m = qm(&[&[1, 1], &[1, 1]]);
        let k = kernel(&m, 2, &q(1));
        assert_eq!(k.basis(), vec![vec![(0, q(1)), (1, q(-1))]]);
        let m = qm(&[&[1, 2, 0, 1], &[0, 0, 1, 1]]);
        let k = kernel(&m, 4, &q(1));
        assert_eq!(k.rank(), 2);
        for v in k.basis() {
            for r in &m {
                let mut s = q(0);
                for (c, x) in &v {
                    s += &r[*c as usize] * x;
                }
                assert!(s.is_zero());
            }
        }
        // zero matrix: every unit vector
        let z = qm(&[&[0, 0, 0]]);
        assert_eq!(kernel(&z, 3, &q(1)).rank(), 3);
    }

    #[test]
    fn kernel_in_cyclotomic_field() {
        // the (2,2) pairing matrix at ℓ = 3, where d = 1
        let one = specialize(&Scalar::one(), 3).unwrap();
        let d = specialize(&Scalar::d(), 3).unwrap();
        let m = vec![vec![d.mul(&d), d.clone()], vec![d.clone(), d.mul(&d)]];
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 2, &one);
        assert_eq!(k.basis(), vec![vec![(0, one.clone()), (1, one.neg())]]);
        let _: &CycloScalar = &one;
    }

    #[test]
    fn generic_rank_detects_full_and_deficient() {
        let d = Scalar::d();
        let g = vec![vec![&d * &d, d.clone()], vec![d.clone(), &d * &d]];
        assert_eq!(generic_rank(&g), 2);
        let s = vec![vec![d.clone(), Scalar::one()], vec![&d * &d, d.clone()]];
        assert_eq!(generic_rank(&s), 1);
    }

    #[test]
    fn modular_rank() {
        let p = (1u64 << 61) - 1;
        assert_eq!(rank_mod_p(vec![vec![1, 1], vec![1, 1]], p), 1);
        assert_eq!(rank_mod_p(vec![vec![2, 1], vec![1, 1]], p), 2);
        assert_eq!(rank_mod_p(vec![vec![7, 0], vec![0, 7]], 7), 0);
        assert_eq!(rational_mod_p(&Rational::new(1.into(), 2.into()), 7), Some(4));
        assert_eq!(rational_mod_p(&Rational::new(1.into(), 7.into()), 7), None);
    }
}
