//! Temperley-Lieb diagrams as canonical non-crossing pairings.
//!
//! A `(m, n)` diagram has `m` top points indexed `0..m` left to right and `n`
//! bottom points indexed `m..m+n` left to right. The pairing is stored as an
//! involution `match[i]`. Walking the boundary (top left→right, then bottom
//! right→left) every valid pairing is a balanced parenthesization.
//!
//! Every diagram is interned: each Hom space is enumerated once, sorted
//! lexicographically by match array, and a [`Diagram`] is just its position
//! in that order. Equality, hashing and ordering are therefore O(1).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Handle to an interned `(top, bot)` diagram.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    top: u16,
    bot: u16,
    index: u32,
}

/// All diagrams of one Hom space in enumeration order, with reverse lookup.
pub struct HomBasis {
    top: usize,
    bot: usize,
    pairings: Vec<Box<[u16]>>,
    lookup: HashMap<Box<[u16]>, u32>,
}

impl HomBasis {
    fn build(top: usize, bot: usize) -> Self {
        let mut pairings = if (top + bot) % 2 == 1 {
            Vec::new()
        } else {
            let n = top + bot;
            let mut out = Vec::new();
            let mut walk = vec![0u16; n];
            walk_matchings(&mut walk, 0, n, &mut |w| {
                let mut m = vec![0u16; n];
                for (p, &q) in w.iter().enumerate() {
                    m[walk_to_point(p, top, bot)] = walk_to_point(q as usize, top, bot) as u16;
                }
                out.push(m.into_boxed_slice());
            });
            out
        };
        pairings.sort();
        let lookup = pairings.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        HomBasis { top, bot, pairings, lookup }
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn len(&self) -> usize {
        self.pairings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairings.is_empty()
    }

    pub fn pairing(&self, index: u32) -> &[u16] {
        &self.pairings[index as usize]
    }

    pub fn index_of(&self, pairing: &[u16]) -> Option<u32> {
        self.lookup.get(pairing).copied()
    }

    pub fn diagram(&self, index: u32) -> Diagram {
        Diagram { top: self.top as u16, bot: self.bot as u16, index }
    }

    pub fn diagrams(&self) -> impl Iterator<Item = Diagram> + '_ {
        (0..self.len() as u32).map(|i| self.diagram(i))
    }

    /// Interns a pairing known to be valid for this space.
    fn intern(&self, pairing: &[u16]) -> Diagram {
        let index = self.index_of(pairing).expect("pairing is a valid diagram of this Hom space");
        self.diagram(index)
    }
}

/// Enumerates non-crossing perfect matchings of walk positions `lo..hi`.
fn walk_matchings(w: &mut [u16], lo: usize, hi: usize, emit: &mut dyn FnMut(&[u16])) {
    fn rec(w: &mut [u16], stack: &mut Vec<(usize, usize)>, emit: &mut dyn FnMut(&[u16])) {
        let Some((lo, hi)) = stack.pop() else {
            emit(w);
            return;
        };
        if lo >= hi {
            rec(w, stack, emit);
            stack.push((lo, hi));
            return;
        }
        let mut k = lo + 1;
        while k < hi {
            w[lo] = k as u16;
            w[k] = lo as u16;
            stack.push((k + 1, hi));
            stack.push((lo + 1, k));
            rec(w, stack, emit);
            stack.pop();
            stack.pop();
            k += 2;
        }
        stack.push((lo, hi));
    }
    let mut stack = vec![(lo, hi)];
    rec(w, &mut stack, emit);
}

fn walk_to_point(p: usize, top: usize, bot: usize) -> usize {
    if p < top {
        p
    } else {
        top + bot - 1 - (p - top)
    }
}

fn point_to_walk(i: usize, top: usize, bot: usize) -> usize {
    // the map is an involution on the bottom block
    walk_to_point(i, top, bot)
}

type Registry = RwLock<HashMap<(usize, usize), Arc<HomBasis>>>;

/// The interned basis of `Hom(top, bot)`, built on first use.
pub fn hom_basis(top: usize, bot: usize) -> Arc<HomBasis> {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    let reg = REGISTRY.get_or_init(Default::default);
    if let Some(b) = reg.read().unwrap().get(&(top, bot)) {
        return b.clone();
    }
    let built = Arc::new(HomBasis::build(top, bot));
    reg.write().unwrap().entry((top, bot)).or_insert(built).clone()
}

/// Catalan number `C_k`.
pub fn catalan(k: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// `dim Hom(m, n)`: `C_{(m+n)/2}` when `m + n` is even, else 0.
pub fn hom_dim(m: usize, n: usize) -> u128 {
    if (m + n) % 2 == 1 {
        0
    } else {
        catalan((m + n) / 2)
    }
}

impl Diagram {
    /// Validates and interns an arbitrary pairing.
    pub fn from_pairing(top: usize, bot: usize, pairing: &[usize]) -> Result<Diagram> {
        let n = top + bot;
        if pairing.len() != n {
            return Err(Error::BadParameter(format!(
                "pairing has {} entries, expected {n}",
                pairing.len()
            )));
        }
        if n % 2 == 1 {
            return Err(Error::ParityError(format!("Hom({top},{bot}) is zero")));
        }
        for (i, &j) in pairing.iter().enumerate() {
            if j >= n || j == i || pairing[j] != i {
                return Err(Error::BadParameter(format!("not a fixed-point-free involution at {i}")));
            }
        }
        let mut stack = Vec::new();
        for p in 0..n {
            let q = point_to_walk(pairing[walk_to_point(p, top, bot)], top, bot);
            if q > p {
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return Err(Error::BadParameter("pairing has crossing strands".into()));
            }
        }
        let raw: Vec<u16> = pairing.iter().map(|&x| x as u16).collect();
        Ok(hom_basis(top, bot).intern(&raw))
    }

    pub fn top(&self) -> usize {
        self.top as usize
    }

    pub fn bot(&self) -> usize {
        self.bot as usize
    }

    /// Position in the enumeration order of its Hom space.
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn basis(&self) -> Arc<HomBasis> {
        hom_basis(self.top(), self.bot())
    }

    pub fn pairing(&self) -> Vec<usize> {
        self.basis().pairing(self.index).iter().map(|&x| x as usize).collect()
    }

    /// The identity of `n`: `n` vertical strands.
    pub fn identity(n: usize) -> Diagram {
        let raw: Vec<u16> = (0..2 * n).map(|i| ((i + n) % (2 * n)) as u16).collect();
        hom_basis(n, n).intern(&raw)
    }

    /// ∩ ∈ Hom(0, 2): the two bottom points paired.
    pub fn cap() -> Diagram {
        hom_basis(0, 2).intern(&[1, 0])
    }

    /// ∪ ∈ Hom(2, 0): the two top points paired.
    pub fn cup() -> Diagram {
        hom_basis(2, 0).intern(&[1, 0])
    }

    /// The generator `e_i` of `T_n`, `1 ≤ i ≤ n - 1`.
    pub fn generator(i: usize, n: usize) -> Result<Diagram> {
        if i == 0 || i >= n {
            return Err(Error::BadParameter(format!("e_{i} needs 1 <= i <= n-1 with n = {n}")));
        }
        let mut raw: Vec<u16> = (0..2 * n).map(|k| ((k + n) % (2 * n)) as u16).collect();
        let (a, b) = (i - 1, i);
        raw[a] = b as u16;
        raw[b] = a as u16;
        raw[n + a] = (n + b) as u16;
        raw[n + b] = (n + a) as u16;
        Ok(hom_basis(n, n).intern(&raw))
    }

    /// Number of strands joining top to bottom.
    pub fn through_strands(&self) -> usize {
        let basis = self.basis();
        let p = basis.pairing(self.index);
        (0..self.top()).filter(|&i| p[i] as usize >= self.top()).count()
    }
}

/// `b ∘ a` for `a ∈ Hom(l, m)` and `b ∈ Hom(m, n)`: stack `a` above `b`,
/// remove interior loops. Returns the reduced diagram and the loop count.
pub fn compose_diagrams(b: Diagram, a: Diagram) -> Result<(Diagram, usize)> {
    if a.bot() != b.top() {
        return Err(Error::DomainMismatch(format!(
            "cannot compose Hom({},{}) after Hom({},{})",
            b.top(),
            b.bot(),
            a.top(),
            a.bot()
        )));
    }
    let (ab, bb, cb) = (a.basis(), b.basis(), hom_basis(a.top(), b.bot()));
    let (raw, loops) = compose_raw(bb.pairing(b.index), a.top(), a.bot(), ab.pairing(a.index), b.bot());
    Ok((cb.intern(&raw), loops))
}

/// Raw composition kernel. `a` has `l` top and `m` bottom points, `b` has `m`
/// top and `n` bottom points.
pub(crate) fn compose_raw(b: &[u16], l: usize, m: usize, a: &[u16], n: usize) -> (Vec<u16>, usize) {
    let mut out = vec![0u16; l + n];
    let mut seen = vec![false; m];
    // Follow from an outer point until the strand exits at another outer point.
    let follow = |start_in_a: bool, start: usize, seen: &mut [bool]| -> usize {
        let (mut in_a, mut x) = (start_in_a, start);
        loop {
            if in_a {
                let y = a[x] as usize;
                if y < l {
                    return y;
                }
                let j = y - l;
                seen[j] = true;
                in_a = false;
                x = j;
            } else {
                let y = b[x] as usize;
                if y >= m {
                    return l + (y - m);
                }
                seen[y] = true;
                in_a = true;
                x = l + y;
            }
        }
    };
    for r in 0..l + n {
        let end = if r < l { follow(true, r, &mut seen) } else { follow(false, m + (r - l), &mut seen) };
        out[r] = end as u16;
    }
    let mut loops = 0;
    for j in 0..m {
        if seen[j] {
            continue;
        }
        loops += 1;
        let mut k = j;
        loop {
            seen[k] = true;
            let via_a = a[l + k] as usize - l;
            seen[via_a] = true;
            k = b[via_a] as usize;
            if k == j {
                break;
            }
        }
    }
    (out, loops)
}

/// Horizontal juxtaposition `a ⊗ b`.
pub fn tensor_diagrams(a: Diagram, b: Diagram) -> Diagram {
    let (ab, bb) = (a.basis(), b.basis());
    let raw = tensor_raw(ab.pairing(a.index), a.top(), a.bot(), bb.pairing(b.index), b.top(), b.bot());
    hom_basis(a.top() + b.top(), a.bot() + b.bot()).intern(&raw)
}

pub(crate) fn tensor_raw(a: &[u16], ma: usize, na: usize, b: &[u16], mb: usize, nb: usize) -> Vec<u16> {
    let top = ma + mb;
    let map_a = |i: usize| if i < ma { i } else { top + (i - ma) };
    let map_b = |i: usize| if i < mb { ma + i } else { top + na + (i - mb) };
    let mut out = vec![0u16; top + na + nb];
    for (i, &j) in a.iter().enumerate() {
        out[map_a(i)] = map_a(j as usize) as u16;
    }
    for (i, &j) in b.iter().enumerate() {
        out[map_b(i)] = map_b(j as usize) as u16;
    }
    out
}

/// Top-bottom flip `Hom(m, n) → Hom(n, m)`, keeping left-right order.
pub fn transpose_diagram(a: Diagram) -> Diagram {
    let (m, n) = (a.top(), a.bot());
    let basis = a.basis();
    let map = |i: usize| if i < m { n + i } else { i - m };
    let mut raw = vec![0u16; m + n];
    for (i, &j) in basis.pairing(a.index).iter().enumerate() {
        raw[map(i)] = map(j as usize) as u16;
    }
    hom_basis(n, m).intern(&raw)
}

/// Number of loops formed by closing a `T_n` diagram on the right.
pub fn closure_loops(a: Diagram) -> Result<usize> {
    if a.top() != a.bot() {
        return Err(Error::DomainMismatch(format!("closure needs an endomorphism, got Hom({},{})", a.top(), a.bot())));
    }
    let basis = a.basis();
    Ok(closure_loops_raw(basis.pairing(a.index), a.top()))
}

pub(crate) fn closure_loops_raw(p: &[u16], n: usize) -> usize {
    let twin = |i: usize| if i < n { i + n } else { i - n };
    let mut seen = vec![false; 2 * n];
    let mut loops = 0;
    for start in 0..2 * n {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut k = start;
        loop {
            let q = p[k] as usize;
            seen[k] = true;
            seen[q] = true;
            k = twin(q);
            if k == start {
                break;
            }
        }
    }
    loops
}

/// All `(m, n)` diagrams in enumeration order (lexicographic in match arrays).
pub fn enumerate_diagrams(m: usize, n: usize) -> Vec<Diagram> {
    hom_basis(m, n).diagrams().collect()
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({},{}){:?}", self.top, self.bot, self.pairing())
    }
}

/// JSON shape: `{"top": m, "bot": n, "match": [...]}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct DiagramJson {
    top: usize,
    bot: usize,
    #[serde(rename = "match")]
    pairing: Vec<usize>,
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson { top: self.top(), bot: self.bot(), pairing: self.pairing() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DiagramJson::deserialize(d)?;
        Diagram::from_pairing(j.top, j.bot, &j.pairing).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: every fixed-point-free involution of `m + n` points whose
    /// chords, placed on the boundary circle, pairwise do not interleave.
    fn brute_force_count(m: usize, n: usize) -> usize {
        fn all_matchings(pts: Vec<usize>) -> Vec<Vec<(usize, usize)>> {
            if pts.is_empty() {
                return vec![vec![]];
            }
            let first = pts[0];
            let mut out = Vec::new();
            for k in 1..pts.len() {
                let rest: Vec<usize> = pts.iter().enumerate().filter(|&(i, _)| i != 0 && i != k).map(|(_, &p)| p).collect();
                for mut sub in all_matchings(rest) {
                    sub.push((first, pts[k]));
                    out.push(sub);
                }
            }
            out
        }
        if (m + n) % 2 == 1 {
            return 0;
        }
        // circle position of each point
        let pos = |i: usize| if i < m { i } else { m + (m + n - 1 - i) };
        all_matchings((0..m + n).collect())
            .into_iter()
            .filter(|chords| {
                chords.iter().all(|&(a, b)| {
                    chords.iter().all(|&(c, e)| {
                        let (a, b) = (pos(a).min(pos(b)), pos(a).max(pos(b)));
                        let (c, e) = (pos(c).min(pos(e)), pos(c).max(pos(e)));
                        !(a < c && c < b && b < e) && !(c < a && a < e && e < b)
                    })
                })
            })
            .count()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for m in 0..5 {
            for n in 0..5 {
                assert_eq!(enumerate_diagrams(m, n).len(), brute_force_count(m, n), "Hom({m},{n})");
            }
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_diagrams(1, 1).len(), 1);
        assert_eq!(enumerate_diagrams(3, 3).len(), 5);
        assert_eq!(enumerate_diagrams(2, 3).len(), 0);
        let cat = [1u128, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (n, &c) in cat.iter().enumerate() {
            assert_eq!(enumerate_diagrams(n, n).len() as u128, c);
            assert_eq!(catalan(n), c);
        }
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        let ds = enumerate_diagrams(3, 5);
        for w in ds.windows(2) {
            assert!(w[0].pairing() < w[1].pairing());
        }
        for d in ds {
            assert_eq!(Diagram::from_pairing(3, 5, &d.pairing()).unwrap(), d);
        }
    }

    #[test]
    fn basic_diagrams() {
        assert_eq!(Diagram::identity(3).pairing(), vec![3, 4, 5, 0, 1, 2]);
        assert_eq!(Diagram::generator(1, 2).unwrap().pairing(), vec![1, 0, 3, 2]);
        assert_eq!(Diagram::cup().pairing(), vec![1, 0]);
        assert_eq!((Diagram::cup().top(), Diagram::cup().bot()), (2, 0));
        assert_eq!((Diagram::cap().top(), Diagram::cap().bot()), (0, 2));
        assert!(Diagram::generator(0, 3).is_err());
        assert!(Diagram::generator(3, 3).is_err());
    }

    #[test]
    fn invalid_pairings_rejected() {
        // crossing: top0-bot1, top1-bot0
        assert!(Diagram::from_pairing(2, 2, &[3, 2, 1, 0]).is_err());
        assert!(Diagram::from_pairing(2, 2, &[0, 2, 1, 3]).is_err());
        assert!(Diagram::from_pairing(1, 2, &[1, 0, 2]).is_err());
    }

    #[test]
    fn cup_after_cap_is_a_loop() {
        let (c, r) = compose_diagrams(Diagram::cup(), Diagram::cap()).unwrap();
        assert_eq!((c.top(), c.bot(), r), (0, 0, 1));
    }

    #[test]
    fn generator_squared() {
        let e = Diagram::generator(1, 2).unwrap();
        assert_eq!(compose_diagrams(e, e).unwrap(), (e, 1));
    }

    #[test]
    fn identity_is_neutral() {
        for m in 0..5 {
            for n in 0..5 {
                for a in enumerate_diagrams(m, n) {
                    assert_eq!(compose_diagrams(Diagram::identity(n), a).unwrap(), (a, 0));
                    assert_eq!(compose_diagrams(a, Diagram::identity(m)).unwrap(), (a, 0));
                }
            }
        }
    }

    #[test]
    fn domain_mismatch() {
        assert!(matches!(
            compose_diagrams(Diagram::identity(2), Diagram::identity(3)),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn tensor_examples() {
        let id1 = Diagram::identity(1);
        assert_eq!(tensor_diagrams(id1, id1), Diagram::identity(2));
        let cc = tensor_diagrams(Diagram::cap(), Diagram::cap());
        assert_eq!((cc.top(), cc.bot()), (0, 4));
        assert_eq!(cc.pairing(), vec![1, 0, 3, 2]);
        let e1 = tensor_diagrams(Diagram::generator(1, 2).unwrap(), id1);
        assert_eq!(e1, Diagram::generator(1, 3).unwrap());
    }

    /// The (5,7) diagram drawn in the figure: top0–bot0, top1–bot5, top2–top3,
    /// top4–bot6, bot1–bot4, bot2–bot3.
    fn figure_diagram() -> Diagram {
        Diagram::from_pairing(5, 7, &[5, 10, 3, 2, 11, 0, 9, 8, 7, 6, 1, 4]).unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose_diagram(Diagram::cap()), Diagram::cup());
        for n in 0..5 {
            assert_eq!(transpose_diagram(Diagram::identity(n)), Diagram::identity(n));
        }
        // mirrored by hand: top j of the result is bottom j of the original
        let t = transpose_diagram(figure_diagram());
        assert_eq!((t.top(), t.bot()), (7, 5));
        assert_eq!(t.pairing(), vec![7, 4, 3, 2, 1, 8, 11, 0, 5, 10, 9, 6]);
        assert_eq!(transpose_diagram(t), figure_diagram());
    }

    #[test]
    fn closure_loop_counts() {
        assert_eq!(closure_loops(Diagram::identity(3)).unwrap(), 3);
        assert_eq!(closure_loops(Diagram::generator(1, 2).unwrap()).unwrap(), 1);
        assert_eq!(closure_loops(Diagram::generator(2, 4).unwrap()).unwrap(), 3);
        assert_eq!(closure_loops(Diagram::identity(0)).unwrap(), 0);
    }

    #[test]
    fn closure_agrees_with_capping_off() {
        // Close by composing with nested caps and cups: the closure of a ∈ T_n
        // equals cup_n ∘ (a ⊗ 1_n) ∘ cap_n with nested arcs.
        fn nested(n: usize, top: bool) -> Diagram {
            let mut raw = vec![0usize; 2 * n];
            for i in 0..n {
                raw[i] = 2 * n - 1 - i;
                raw[2 * n - 1 - i] = i;
            }
            if top {
                Diagram::from_pairing(2 * n, 0, &raw).unwrap()
            } else {
                Diagram::from_pairing(0, 2 * n, &raw).unwrap()
            }
        }
        for n in 0..6 {
            for a in enumerate_diagrams(n, n) {
                let padded = tensor_diagrams(a, Diagram::identity(n));
                let (x, r1) = compose_diagrams(padded, nested(n, false)).unwrap();
                let (_, r2) = compose_diagrams(nested(n, true), x).unwrap();
                assert_eq!(closure_loops(a).unwrap(), r1 + r2, "{a:?}");
            }
        }
    }

    #[test]
    fn json_shape() {
        let text = serde_json::to_string(&Diagram::generator(1, 2).unwrap()).unwrap();
        assert_eq!(text, r#"{"top":2,"bot":2,"match":[1,0,3,2]}"#);
        let back: Diagram = serde_json::from_str(&text).unwrap();
        assert_eq!(back, Diagram::generator(1, 2).unwrap());
        assert!(serde_json::from_str::<Diagram>(r#"{"top":2,"bot":2,"match":[3,2,1,0]}"#).is_err());
    }
}
