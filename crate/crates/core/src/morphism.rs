//! Linear combinations of diagrams over a coefficient ring.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagram::{closure_loops_raw, compose_diagrams, compose_raw, hom_basis, tensor_diagrams, tensor_raw, Diagram};
use crate::error::{Error, Result};
use crate::exactscalar::{FieldElem, GenericRing, Ring, RingTag};

/// An element of `Hom(dom, cod)`: a sparse map from diagrams to nonzero
/// coefficients. Terms iterate in diagram enumeration order.
#[derive(Clone, PartialEq)]
pub struct Morphism<R: Ring = GenericRing> {
    dom: usize,
    cod: usize,
    ring: R,
    terms: BTreeMap<Diagram, R::Elem>,
}

/// Cached powers of the loop value.
struct LoopPowers<E> {
    pows: Vec<E>,
}

impl<E: FieldElem> LoopPowers<E> {
    fn new<R: Ring<Elem = E>>(ring: &R) -> Self {
        LoopPowers { pows: vec![ring.one(), ring.loop_value()] }
    }

    fn get(&mut self, r: usize) -> &E {
        while self.pows.len() <= r {
            let next = self.pows.last().unwrap().mul(&self.pows[1]);
            self.pows.push(next);
        }
        &self.pows[r]
    }
}

fn power_tensor(d: Diagram, k: usize) -> Diagram {
    (0..k).fold(Diagram::identity(0), |acc, _| tensor_diagrams(acc, d))
}

/// `∪^{⊗k}` in `Hom(2k, 0)`.
pub fn cups(k: usize) -> Diagram {
    power_tensor(Diagram::cup(), k)
}

/// `∩^{⊗k}` in `Hom(0, 2k)`.
pub fn caps(k: usize) -> Diagram {
    power_tensor(Diagram::cap(), k)
}

impl<R: Ring> Morphism<R> {
    pub fn zero(dom: usize, cod: usize, ring: R) -> Self {
        Morphism { dom, cod, ring, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize, ring: R) -> Self {
        Self::from_diagram(Diagram::identity(n), ring)
    }

    pub fn from_diagram(d: Diagram, ring: R) -> Self {
        let one = ring.one();
        Self::from_diagram_scaled(d, one, ring)
    }

    pub fn from_diagram_scaled(d: Diagram, c: R::Elem, ring: R) -> Self {
        let mut out = Self::zero(d.top(), d.bot(), ring);
        if !c.is_zero() {
            out.terms.insert(d, c);
        }
        out
    }

    /// The generator `e_i` of `T_n`.
    pub fn generator(i: usize, n: usize, ring: R) -> Result<Self> {
        Ok(Self::from_diagram(Diagram::generator(i, n)?, ring))
    }

    pub fn cap(ring: R) -> Self {
        Self::from_diagram(Diagram::cap(), ring)
    }

    pub fn cup(ring: R) -> Self {
        Self::from_diagram(Diagram::cup(), ring)
    }

    /// Sums the given terms, dropping zeros. Every diagram must lie in `Hom(dom, cod)`.
    pub fn from_terms(dom: usize, cod: usize, ring: R, terms: impl IntoIterator<Item = (Diagram, R::Elem)>) -> Result<Self> {
        let mut out = Self::zero(dom, cod, ring);
        for (d, c) in terms {
            if d.top() != dom || d.bot() != cod {
                return Err(Error::DomainMismatch(format!(
                    "diagram in Hom({},{}) inside a Hom({dom},{cod}) morphism",
                    d.top(),
                    d.bot()
                )));
            }
            out.add_term(d, &c);
        }
        Ok(out)
    }

    /// Builds a morphism from `(enumeration index, coefficient)` pairs.
    pub fn from_sparse(dom: usize, cod: usize, ring: R, entries: impl IntoIterator<Item = (u32, R::Elem)>) -> Self {
        let basis = hom_basis(dom, cod);
        let mut out = Self::zero(dom, cod, ring);
        for (i, c) in entries {
            out.add_term(basis.diagram(i), &c);
        }
        out
    }

    /// Coefficients indexed by enumeration position, ascending.
    pub fn to_sparse(&self) -> Vec<(u32, R::Elem)> {
        self.terms.iter().map(|(d, c)| (d.index(), c.clone())).collect()
    }

    /// Dense coefficient vector in enumeration order.
    pub fn to_dense(&self) -> Vec<R::Elem> {
        let mut v = vec![self.ring.zero(); hom_basis(self.dom, self.cod).len()];
        for (d, c) in &self.terms {
            v[d.index() as usize] = c.clone();
        }
        v
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &R::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &Diagram) -> R::Elem {
        self.terms.get(d).cloned().unwrap_or_else(|| self.ring.zero())
    }

    fn add_term(&mut self, d: Diagram, c: &R::Elem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{:?} vs {:?}", self.ring.tag(), other.ring.tag())));
        }
        Ok(())
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        self.check_ring(other)?;
        if (self.dom, self.cod) != (other.dom, other.cod) {
            return Err(Error::DomainMismatch(format!(
                "Hom({},{}) vs Hom({},{})",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(*d, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &Self, s: &R::Elem) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        if !s.is_zero() {
            for (d, c) in &other.terms {
                out.add_term(*d, &s.mul(c));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        if s.is_zero() {
            return Self::zero(self.dom, self.cod, self.ring.clone());
        }
        self.map_coeffs(|c| s.mul(c))
    }

    fn map_coeffs(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        let terms = self.terms.iter().map(|(d, c)| (*d, f(c))).filter(|(_, c)| !c.is_zero()).collect();
        Morphism { dom: self.dom, cod: self.cod, ring: self.ring.clone(), terms }
    }

    /// Moves every coefficient into another ring.
    pub fn map_ring<S: Ring>(&self, ring: S, mut f: impl FnMut(&Diagram, &R::Elem) -> Result<S::Elem>) -> Result<Morphism<S>> {
        let mut out = Morphism::zero(self.dom, self.cod, ring);
        for (d, c) in &self.terms {
            let v = f(d, c)?;
            if !v.is_zero() {
                out.terms.insert(*d, v);
            }
        }
        Ok(out)
    }

    /// `self ∘ a`: apply `a` first.
    pub fn compose(&self, a: &Self) -> Result<Self> {
        self.check_ring(a)?;
        if a.cod != self.dom {
            return Err(Error::DomainMismatch(format!(
                "cannot compose Hom({},{}) after Hom({},{})",
                self.dom, self.cod, a.dom, a.cod
            )));
        }
        let (l, m, n) = (a.dom, a.cod, self.cod);
        let (ab, bb, cb) = (hom_basis(l, m), hom_basis(m, n), hom_basis(l, n));
        let mut acc: HashMap<(u32, usize), R::Elem> = HashMap::new();
        for (db, x) in &self.terms {
            let pb = bb.pairing(db.index());
            for (da, y) in &a.terms {
                let (raw, loops) = compose_raw(pb, l, m, ab.pairing(da.index()), n);
                let idx = cb.index_of(&raw).expect("composite is a valid diagram");
                let c = x.mul(y);
                match acc.entry((idx, loops)) {
                    Entry::Occupied(mut e) => e.get_mut().add_assign(&c),
                    Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut pows = LoopPowers::new(&self.ring);
        let mut keys: Vec<_> = acc.keys().copied().collect();
        keys.sort_unstable();
        let mut out = Self::zero(l, n, self.ring.clone());
        for key in keys {
            let c = &acc[&key];
            if c.is_zero() {
                continue;
            }
            let c = if key.1 == 0 { c.clone() } else { c.mul(pows.get(key.1)) };
            out.add_term(cb.diagram(key.0), &c);
        }
        Ok(out)
    }

    /// Horizontal juxtaposition `self ⊗ b`.
    pub fn tensor(&self, b: &Self) -> Result<Self> {
        self.check_ring(b)?;
        let (ab, bb) = (hom_basis(self.dom, self.cod), hom_basis(b.dom, b.cod));
        let out_basis = hom_basis(self.dom + b.dom, self.cod + b.cod);
        let mut out = Self::zero(self.dom + b.dom, self.cod + b.cod, self.ring.clone());
        for (da, x) in &self.terms {
            let pa = ab.pairing(da.index());
            for (db, y) in &b.terms {
                let raw = tensor_raw(pa, self.dom, self.cod, bb.pairing(db.index()), b.dom, b.cod);
                let idx = out_basis.index_of(&raw).expect("tensor of diagrams is a diagram");
                out.add_term(out_basis.diagram(idx), &x.mul(y));
            }
        }
        Ok(out)
    }

    /// `self ⊗ 1_k`.
    pub fn tensor_id(&self, k: usize) -> Self {
        self.tensor(&Self::identity(k, self.ring.clone())).expect("same ring")
    }

    /// Top-bottom flip, coefficient-wise.
    pub fn transpose(&self) -> Self {
        let terms = self.terms.iter().map(|(d, c)| (crate::diagram::transpose_diagram(*d), c.clone())).collect();
        Morphism { dom: self.cod, cod: self.dom, ring: self.ring.clone(), terms }
    }

    fn require_endo(&self, what: &str) -> Result<usize> {
        if self.dom != self.cod {
            return Err(Error::DomainMismatch(format!("{what} needs an endomorphism, got Hom({},{})", self.dom, self.cod)));
        }
        Ok(self.dom)
    }

    /// Markov trace: close every strand and count loops.
    pub fn trace(&self) -> Result<R::Elem> {
        let n = self.require_endo("trace")?;
        let basis = hom_basis(n, n);
        let mut pows = LoopPowers::new(&self.ring);
        let mut acc = self.ring.zero();
        for (d, c) in &self.terms {
            let loops = closure_loops_raw(basis.pairing(d.index()), n);
            acc.add_assign(&c.mul(pows.get(loops)));
        }
        Ok(acc)
    }

    /// ε_n: close only the last strand, `T_{n+1} → T_n`.
    pub fn cond_expect(&self) -> Result<Self> {
        let n1 = self.require_endo("conditional expectation")?;
        if n1 == 0 {
            return Err(Error::DomainMismatch("conditional expectation needs at least one strand".into()));
        }
        let n = n1 - 1;
        let top = tensor_diagrams(Diagram::identity(n), Diagram::cup());
        let bot = tensor_diagrams(Diagram::identity(n), Diagram::cap());
        let mut pows = LoopPowers::new(&self.ring);
        let mut out = Self::zero(n, n, self.ring.clone());
        for (d, c) in &self.terms {
            let mid = tensor_diagrams(*d, Diagram::identity(1));
            let (x, r1) = compose_diagrams(mid, bot)?;
            let (y, r2) = compose_diagrams(top, x)?;
            let r = r1 + r2;
            let c = if r == 0 { c.clone() } else { c.mul(pows.get(r)) };
            out.add_term(y, &c);
        }
        Ok(out)
    }

    /// ε_{n,k} = ε_n ∘ … ∘ ε_{k-1}.
    pub fn cond_expect_chain(&self, n: usize) -> Result<Self> {
        let k = self.require_endo("conditional expectation")?;
        if n > k {
            return Err(Error::DomainMismatch(format!("cannot expect T_{k} down to T_{n}")));
        }
        let mut cur = self.clone();
        for _ in n..k {
            cur = cur.cond_expect()?;
        }
        Ok(cur)
    }

    /// Embeds `Hom(n, m)` or `Hom(m, n)` (n ≤ m) into `T_m` by padding the
    /// short side with cups or caps.
    pub fn pad_embed(&self) -> Result<Self> {
        let (lo, hi) = (self.dom.min(self.cod), self.dom.max(self.cod));
        if (hi - lo) % 2 == 1 {
            return Err(Error::ParityError(format!("Hom({},{}) has odd difference", self.dom, self.cod)));
        }
        let k = (hi - lo) / 2;
        if k == 0 {
            return Ok(self.clone());
        }
        let pad = if self.dom < self.cod { cups(k) } else { caps(k) };
        self.tensor(&Self::from_diagram(pad, self.ring.clone()))
    }

    /// Left inverse of [`Morphism::pad_embed`]: maps `T_M` back to `Hom(dom, cod)`.
    pub fn pad_retract(&self, dom: usize, cod: usize) -> Result<Self> {
        let big = self.require_endo("retraction")?;
        let (lo, hi) = (dom.min(cod), dom.max(cod));
        if (hi - lo) % 2 == 1 {
            return Err(Error::ParityError(format!("Hom({dom},{cod}) has odd difference")));
        }
        if hi != big {
            return Err(Error::DomainMismatch(format!("T_{big} does not retract to Hom({dom},{cod})")));
        }
        let k = (hi - lo) / 2;
        if k == 0 {
            return Ok(self.clone());
        }
        let ring = self.ring.clone();
        let scale = ring.loop_value().inv()?;
        let mut s = ring.one();
        for _ in 0..k {
            s = s.mul(&scale);
        }
        let out = if dom < cod {
            let right = Self::from_diagram(tensor_diagrams(Diagram::identity(dom), caps(k)), ring);
            self.compose(&right)?
        } else {
            let left = Self::from_diagram(tensor_diagrams(Diagram::identity(cod), cups(k)), ring);
            left.compose(self)?
        };
        Ok(out.scale(&s))
    }

    /// Random coefficients in `{-2, …, 2}` on every diagram of `Hom(dom, cod)`.
    pub fn random<G: Rng + ?Sized>(dom: usize, cod: usize, ring: R, rng: &mut G) -> Self {
        let basis = hom_basis(dom, cod);
        let mut out = Self::zero(dom, cod, ring);
        for d in basis.diagrams() {
            let c: i64 = rng.gen_range(-2..=2);
            let c = out.ring.from_int(c);
            out.add_term(d, &c);
        }
        out
    }
}

/// Given `f ∈ T_{n+m}` compressed by `p ⊗ 1_m` for a minimal idempotent
/// `p ∈ T_n`, returns γ with `ε_{n,n+m}(f) = γ p`, after checking both the
/// compression and the conclusion.
pub fn reduce_to_multiple<R: Ring>(f: &Morphism<R>, p: &Morphism<R>) -> Result<R::Elem> {
    let n = p.require_endo("reduction")?;
    let nm = f.require_endo("reduction")?;
    if nm < n {
        return Err(Error::DomainMismatch(format!("f ∈ T_{nm} is smaller than p ∈ T_{n}")));
    }
    let big_p = p.tensor_id(nm - n);
    if big_p.compose(f)?.compose(&big_p)? != *f {
        return Err(Error::PreconditionFailed("(p ⊗ 1) f (p ⊗ 1) ≠ f".into()));
    }
    let reduced = f.cond_expect_chain(n)?;
    let tr_f = f.trace()?;
    if tr_f.is_zero() && reduced.is_zero() {
        return Ok(f.ring.zero());
    }
    let tr_p = p.trace()?;
    if tr_p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let gamma = tr_f.div(&tr_p)?;
    if reduced != p.scale(&gamma) {
        return Err(Error::NotMinimal("ε(f) is not a multiple of p".into()));
    }
    Ok(gamma)
}

impl<R: Ring> fmt::Debug for Morphism<R>
where
    R::Elem: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({},{}) {{", self.dom, self.cod)?;
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " ({c}) {:?}", d.pairing())?;
        }
        write!(f, " }}")
    }
}

impl<R: Ring> fmt::Display for Morphism<R>
where
    R::Elem: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{:?}", d.pairing())?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson<E> {
    diagram: Diagram,
    coeff: E,
}

#[derive(Serialize, Deserialize)]
struct MorphismJson<E> {
    dom: usize,
    cod: usize,
    ring: RingTag,
    terms: Vec<TermJson<E>>,
}

impl<R: Ring> Serialize for Morphism<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MorphismJson {
            dom: self.dom,
            cod: self.cod,
            ring: self.ring.tag(),
            terms: self.terms.iter().map(|(d, c)| TermJson { diagram: *d, coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de, R: Ring> Deserialize<'de> for Morphism<R>
where
    R::Elem: DeserializeOwned,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = MorphismJson::<R::Elem>::deserialize(d)?;
        let ring = R::from_tag(j.ring).map_err(D::Error::custom)?;
        Morphism::from_terms(j.dom, j.cod, ring, j.terms.into_iter().map(|t| (t.diagram, t.coeff))).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactscalar::{quantum_integer, CycloRing, Scalar};

    type M = Morphism<GenericRing>;

    fn e(i: usize, n: usize) -> M {
        M::generator(i, n, GenericRing).unwrap()
    }

    fn id(n: usize) -> M {
        M::identity(n, GenericRing)
    }

    fn d() -> Scalar {
        Scalar::d()
    }

    fn jw2() -> M {
        id(2).add_scaled(&e(1, 2), &d().inv().unwrap().neg()).unwrap()
    }

    #[test]
    fn cup_after_cap_is_d() {
        let x = M::cup(GenericRing).compose(&M::cap(GenericRing)).unwrap();
        assert_eq!(x, id(0).scale(&d()));
    }

    #[test]
    fn tl_relations() {
        assert_eq!(e(1, 2).compose(&e(1, 2)).unwrap(), e(1, 2).scale(&d()));
        assert_eq!(e(1, 3).compose(&e(2, 3)).unwrap().compose(&e(1, 3)).unwrap(), e(1, 3));
        assert_eq!(e(2, 3).compose(&e(1, 3)).unwrap().compose(&e(2, 3)).unwrap(), e(2, 3));
    }

    #[test]
    fn linear_ops() {
        let a = e(1, 2).add(&id(2)).unwrap();
        assert_eq!(a.add(&M::zero(2, 2, GenericRing)).unwrap(), a);
        assert!(a.add(&a.scale(&Scalar::from_int(-1))).unwrap().is_zero());
        assert!(matches!(a.add(&id(3)), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn ring_mismatch() {
        let a = Morphism::identity(2, CycloRing::new(3).unwrap());
        let b = Morphism::identity(2, CycloRing::new(4).unwrap());
        assert!(matches!(a.add(&b), Err(Error::RingMismatch(_))));
        assert!(matches!(a.compose(&b), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn tensor_examples() {
        let a = e(1, 2).add(&id(2)).unwrap();
        assert_eq!(a.tensor(&id(0)).unwrap(), a);
        assert_eq!(id(2).tensor(&id(3)).unwrap(), id(5));
        assert_eq!(e(1, 2).tensor(&id(1)).unwrap(), e(1, 3));
    }

    #[test]
    fn traces() {
        assert_eq!(id(2).trace().unwrap(), &d() * &d());
        assert_eq!(e(1, 2).trace().unwrap(), d());
        assert_eq!(jw2().trace().unwrap(), quantum_integer(3));
        assert!(M::cap(GenericRing).trace().is_err());
    }

    #[test]
    fn conditional_expectations() {
        assert_eq!(id(3).cond_expect().unwrap(), id(2).scale(&d()));
        assert_eq!(e(1, 2).cond_expect().unwrap(), id(1));
        assert_eq!(e(1, 2).cond_expect_chain(2).unwrap(), e(1, 2));
        assert_eq!(e(1, 2).cond_expect_chain(0).unwrap(), id(0).scale(&d()));
        for n in 0..5 {
            let dn = (0..n).fold(Scalar::one(), |acc, _| &acc * &d());
            assert_eq!(id(n).cond_expect_chain(0).unwrap(), id(0).scale(&dn));
        }
        assert!(e(1, 2).cond_expect_chain(3).is_err());
    }

    #[test]
    fn trace_is_full_expectation() {
        for n in 0..4 {
            for dg in crate::diagram::enumerate_diagrams(n, n) {
                let a = M::from_diagram(dg, GenericRing);
                let full = a.cond_expect_chain(0).unwrap();
                assert_eq!(full.coeff(&Diagram::identity(0)), a.trace().unwrap());
            }
        }
    }

    #[test]
    fn padding_round_trips() {
        let a = id(1);
        assert_eq!(a.pad_embed().unwrap(), a);
        let cap = M::cap(GenericRing);
        let big = cap.pad_embed().unwrap();
        assert_eq!((big.dom(), big.cod()), (2, 2));
        assert_eq!(big.pad_retract(0, 2).unwrap(), cap);
        for dg in crate::diagram::enumerate_diagrams(1, 3).into_iter().chain(crate::diagram::enumerate_diagrams(3, 1)) {
            let a = M::from_diagram(dg, GenericRing);
            let big = a.pad_embed().unwrap();
            assert_eq!((big.dom(), big.cod()), (3, 3));
            assert_eq!(big.pad_retract(a.dom(), a.cod()).unwrap(), a);
        }
        assert!(matches!(M::zero(1, 2, GenericRing).pad_embed(), Err(Error::ParityError(_))));
    }

    #[test]
    fn reduce_to_multiple_examples() {
        let p = jw2();
        let f = p.tensor_id(1);
        assert_eq!(reduce_to_multiple(&f, &p).unwrap(), d());
        let one = id(1);
        let f = one.tensor_id(1).compose(&e(1, 2)).unwrap().compose(&one.tensor_id(1)).unwrap();
        assert_eq!(reduce_to_multiple(&f, &one).unwrap(), Scalar::one());
        assert_eq!(reduce_to_multiple(&M::zero(3, 3, GenericRing), &p).unwrap(), Scalar::zero());
        assert!(matches!(reduce_to_multiple(&e(2, 3), &p), Err(Error::PreconditionFailed(_))));
        // 1_2 is not minimal in T_2
        assert!(matches!(reduce_to_multiple(&e(1, 3), &id(2)), Err(Error::NotMinimal(_))));
    }

    #[test]
    fn json_round_trip() {
        let a = jw2();
        let text = serde_json::to_string(&a).unwrap();
        assert!(text.starts_with(r#"{"dom":2,"cod":2,"ring":"generic","terms":[{"diagram":{"top":2,"bot":2,"match":[1,0,3,2]}"#));
        let back: M = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        let c = Morphism::identity(1, CycloRing::new(5).unwrap());
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains(r#""ring":{"cyclo":5}"#));
        let back: Morphism<CycloRing> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<M>(&text).is_err());
    }
}
