//! Two-row Young diagrams, the Bratteli diagram of the tower `T_0 ⊂ T_1 ⊂ …`,
//! path idempotents and Jones-Wenzl projectors.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::diagram::catalan;
use crate::error::{Error, Result};
use crate::exactscalar::{FieldElem, GenericRing, Ring, RingTag};
use crate::morphism::Morphism;

/// A Young diagram with at most two rows, `[row1, row2]`, `row1 ≥ row2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YoungDiagram {
    row1: u32,
    row2: u32,
}

impl YoungDiagram {
    pub fn new(row1: u32, row2: u32) -> Result<Self> {
        if row2 > row1 {
            return Err(Error::BadParameter(format!("[{row1},{row2}] is not a Young diagram")));
        }
        Ok(YoungDiagram { row1, row2 })
    }

    pub fn empty() -> Self {
        YoungDiagram { row1: 0, row2: 0 }
    }

    /// The diagram of size `n` and width `w`, if one exists.
    pub fn from_width(n: u32, w: u32) -> Option<Self> {
        if w == 0 || w > n + 1 || (n + w) % 2 == 0 {
            return None;
        }
        Some(YoungDiagram { row1: (n + w - 1) / 2, row2: (n + 1 - w) / 2 })
    }

    pub fn row1(&self) -> u32 {
        self.row1
    }

    pub fn row2(&self) -> u32 {
        self.row2
    }

    pub fn size(&self) -> u32 {
        self.row1 + self.row2
    }

    /// `w(λ) = λ₁ − λ₂ + 1`.
    pub fn width(&self) -> u32 {
        self.row1 - self.row2 + 1
    }

    /// Parses `"[3,1]"`, `"3,1"`, `"[2]"` or `"[]"`.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = inner.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        let num = |p: &str| p.parse::<u32>().map_err(|_| Error::Parse(format!("bad Young diagram '{s}'")));
        match parts.as_slice() {
            [] => Ok(Self::empty()),
            [a] => Self::new(num(a)?, 0),
            [a, b] => Self::new(num(a)?, num(b)?),
            _ => Err(Error::Parse(format!("more than two rows in '{s}'"))),
        }
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.row1, self.row2) {
            (0, 0) => write!(f, "[]"),
            (a, 0) => write!(f, "[{a}]"),
            (a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Diagrams obtained by adding one box.
pub fn young_successors(l: YoungDiagram) -> Vec<YoungDiagram> {
    let mut out = vec![YoungDiagram { row1: l.row1 + 1, row2: l.row2 }];
    if l.row2 < l.row1 {
        out.push(YoungDiagram { row1: l.row1, row2: l.row2 + 1 });
    }
    out
}

fn binomial(n: u32, k: i64) -> u128 {
    if k < 0 || k > n as i64 {
        return 0;
    }
    let k = k as u128;
    (0..k).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// `f_λ`, the number of standard tableaux of shape λ.
pub fn count_tableaux(l: YoungDiagram) -> u128 {
    let n = l.size();
    binomial(n, l.row2 as i64) - binomial(n, l.row2 as i64 - 1)
}

/// A path in the Bratteli diagram from ∅, stored as its widths
/// `w_0 = 1, w_1, …, w_n` with `|w_{i+1} − w_i| = 1` and `w_i ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct BratteliPath {
    widths: Vec<u32>,
}

impl TryFrom<Vec<u32>> for BratteliPath {
    type Error = Error;
    fn try_from(widths: Vec<u32>) -> Result<Self> {
        BratteliPath::new(widths)
    }
}

impl From<BratteliPath> for Vec<u32> {
    fn from(p: BratteliPath) -> Vec<u32> {
        p.widths
    }
}

impl BratteliPath {
    pub fn new(widths: Vec<u32>) -> Result<Self> {
        if widths.first() != Some(&1) {
            return Err(Error::BadParameter("a path starts at width 1".into()));
        }
        for w in widths.windows(2) {
            if w[1] == 0 || w[0].abs_diff(w[1]) != 1 {
                return Err(Error::BadParameter(format!("invalid step {} -> {}", w[0], w[1])));
            }
        }
        Ok(BratteliPath { widths })
    }

    /// The path through the given shapes, starting at ∅.
    pub fn from_shapes(shapes: &[YoungDiagram]) -> Result<Self> {
        if shapes.first() != Some(&YoungDiagram::empty()) {
            return Err(Error::BadParameter("a path starts at the empty diagram".into()));
        }
        for (i, pair) in shapes.windows(2).enumerate() {
            if !young_successors(pair[0]).contains(&pair[1]) {
                return Err(Error::BadParameter(format!("step {i}: {} does not extend {}", pair[1], pair[0])));
            }
        }
        Self::new(shapes.iter().map(|s| s.width()).collect())
    }

    /// Parses `"1-2-1-2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let widths = s
            .split(['-', ','])
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad path '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(widths)
    }

    pub fn empty() -> Self {
        BratteliPath { widths: vec![1] }
    }

    /// The single-row path ∅, [1], …, [n].
    pub fn single_row(n: usize) -> Self {
        BratteliPath { widths: (1..=n as u32 + 1).collect() }
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.widths.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn widths(&self) -> &[u32] {
        &self.widths
    }

    pub fn shapes(&self) -> Vec<YoungDiagram> {
        self.widths.iter().enumerate().map(|(i, &w)| YoungDiagram::from_width(i as u32, w).expect("valid path")).collect()
    }

    pub fn end(&self) -> YoungDiagram {
        YoungDiagram::from_width(self.len() as u32, *self.widths.last().unwrap()).expect("valid path")
    }

    pub fn end_width(&self) -> u32 {
        *self.widths.last().unwrap()
    }

    /// The path with its last step removed.
    pub fn parent(&self) -> Option<BratteliPath> {
        (self.len() > 0).then(|| BratteliPath { widths: self.widths[..self.widths.len() - 1].to_vec() })
    }

    pub fn extend(&self, w: u32) -> Result<BratteliPath> {
        let mut widths = self.widths.clone();
        widths.push(w);
        Self::new(widths)
    }

    /// Paths one step longer, in ascending order of the new width.
    pub fn extensions(&self) -> Vec<BratteliPath> {
        let w = self.end_width();
        let mut out = Vec::new();
        if w > 1 {
            out.push(self.extend(w - 1).unwrap());
        }
        out.push(self.extend(w + 1).unwrap());
        out
    }

    /// Cache file stem, e.g. `p_1-2-1-2`.
    pub fn cache_name(&self) -> String {
        let ws: Vec<String> = self.widths.iter().map(u32::to_string).collect();
        format!("p_{}", ws.join("-"))
    }
}

impl fmt::Display for BratteliPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.widths.iter().map(u32::to_string).collect();
        write!(f, "{}", ws.join("-"))
    }
}

impl fmt::Debug for BratteliPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BratteliPath({self})")
    }
}

/// Every path of length `n`, in lexicographic order of widths.
pub fn all_paths(n: usize) -> Vec<BratteliPath> {
    let mut level = vec![BratteliPath::empty()];
    for _ in 0..n {
        level = level.iter().flat_map(BratteliPath::extensions).collect();
    }
    level
}

/// Every path ending at λ.
pub fn paths_to(l: YoungDiagram) -> Vec<BratteliPath> {
    all_paths(l.size() as usize).into_iter().filter(|p| p.end() == l).collect()
}

/// The Bratteli diagram truncated at level `n`.
#[derive(Clone, Debug, Serialize)]
pub struct BratteliGraph {
    pub levels: Vec<Vec<YoungDiagram>>,
    pub edges: Vec<(YoungDiagram, YoungDiagram)>,
}

/// Levels `0..=n` and their add-one-box edges.
pub fn bratteli_graph(n: usize) -> BratteliGraph {
    let mut levels = vec![vec![YoungDiagram::empty()]];
    let mut edges = Vec::new();
    for _ in 0..n {
        let mut next: Vec<YoungDiagram> = Vec::new();
        for &l in levels.last().unwrap() {
            for s in young_successors(l) {
                edges.push((l, s));
                if !next.contains(&s) {
                    next.push(s);
                }
            }
        }
        next.sort_by(|a, b| b.cmp(a));
        levels.push(next);
    }
    BratteliGraph { levels, edges }
}

impl BratteliGraph {
    /// `Σ_λ f_λ²` at each level.
    pub fn level_dimensions(&self) -> Vec<u128> {
        self.levels.iter().map(|lv| lv.iter().map(|&l| count_tableaux(l).pow(2)).sum()).collect()
    }

    /// Graphviz rendering, one rank per level, vertex labels `"λ1,λ2"`.
    pub fn to_dot(&self) -> String {
        let id = |l: &YoungDiagram| format!("n{}_{}_{}", l.size(), l.row1, l.row2);
        let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n  node [shape=box];\n");
        for (k, lv) in self.levels.iter().enumerate() {
            s.push_str(&format!("  subgraph level{k} {{\n    rank=same;\n"));
            for l in lv {
                s.push_str(&format!(
                    "    {} [label=\"{},{}\", tooltip=\"f={}\"];\n",
                    id(l),
                    l.row1,
                    l.row2,
                    count_tableaux(*l)
                ));
            }
            s.push_str("  }\n");
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  {} -> {};\n", id(a), id(b)));
        }
        s.push_str("}\n");
        s
    }
}

/// `[m]` in any coefficient ring, from `[m+1] = d[m] − [m−1]`.
pub fn quantum_integer_in<R: Ring>(ring: &R, m: u32) -> R::Elem {
    let d = ring.loop_value();
    let (mut prev, mut cur) = (ring.zero(), ring.one());
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = d.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

fn not_evaluable<R: Ring>(ring: &R, what: String) -> Error {
    match ring.tag() {
        RingTag::Cyclo(ell) => Error::NotEvaluable { ell, context: what },
        RingTag::Generic => Error::DivisionByZero,
    }
}

/// One step of the split rule: from `p_{t'}` (ending at width `w1`, with
/// predecessor width `w0`) to the idempotent of `t'` extended to `new_w`.
fn split_step<R: Ring>(parent: &Morphism<R>, w0: Option<u32>, w1: u32, new_w: u32) -> Result<Morphism<R>> {
    let ring = parent.ring().clone();
    let n = parent.dom();
    let a = parent.tensor_id(1);
    let Some(w0) = w0.filter(|_| w1 > 1) else {
        return Ok(a);
    };
    let e = Morphism::generator(n, n + 1, ring.clone())?;
    let x = a.compose(&e)?.compose(&a)?;
    let ratio = quantum_integer_in(&ring, w0)
        .div(&quantum_integer_in(&ring, w1))
        .map_err(|_| not_evaluable(&ring, format!("[{w1}] vanishes")))?;
    let q = x.scale(&ratio);
    if new_w == w0 {
        Ok(q)
    } else {
        a.sub(&q)
    }
}

/// Builds `p_t` from scratch in any ring.
pub fn path_idempotent_in<R: Ring>(t: &BratteliPath, ring: &R) -> Result<Morphism<R>> {
    let w = t.widths();
    let mut p = Morphism::identity(0, ring.clone());
    for k in 1..w.len() {
        let w0 = (k >= 2).then(|| w[k - 2]);
        p = split_step(&p, w0, w[k - 1], w[k])?;
    }
    Ok(p)
}

/// `JW_n`, the path idempotent of the single-row path. In `ℚ(τ)` at level ℓ
/// it exists only for `n ≤ ℓ − 1`.
pub fn jones_wenzl<R: Ring>(n: usize, ring: &R) -> Result<Morphism<R>> {
    if let RingTag::Cyclo(ell) = ring.tag() {
        if n >= ell as usize {
            return Err(Error::NotEvaluable { ell, context: format!("JW_{n} has a pole at ℓ={ell}") });
        }
    }
    path_idempotent_in(&BratteliPath::single_row(n), ring)
}

/// Memory and optional on-disk store of generic path idempotents.
pub struct IdempotentCache {
    dir: Option<PathBuf>,
    mem: RwLock<HashMap<BratteliPath, Arc<Morphism>>>,
}

impl IdempotentCache {
    pub fn in_memory() -> Self {
        IdempotentCache { dir: None, mem: RwLock::default() }
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(IdempotentCache { dir: Some(dir), mem: RwLock::default() })
    }

    /// Process-wide in-memory cache.
    pub fn global() -> &'static IdempotentCache {
        static GLOBAL: OnceLock<IdempotentCache> = OnceLock::new();
        GLOBAL.get_or_init(IdempotentCache::in_memory)
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn file_for(&self, t: &BratteliPath) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", t.cache_name())))
    }

    fn load(&self, t: &BratteliPath) -> Option<Morphism> {
        let text = fs::read_to_string(self.file_for(t)?).ok()?;
        let m: Morphism = serde_json::from_str(&text).ok()?;
        (m.dom() == t.len() && m.cod() == t.len()).then_some(m)
    }

    fn store(&self, t: &BratteliPath, m: &Morphism) -> Result<()> {
        let Some(path) = self.file_for(t) else { return Ok(()) };
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(m)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// `p_t` over ℚ(t).
    pub fn path_idempotent(&self, t: &BratteliPath) -> Result<Arc<Morphism>> {
        if let Some(m) = self.mem.read().unwrap().get(t) {
            return Ok(m.clone());
        }
        let m = match self.load(t) {
            Some(m) => m,
            None => {
                let m = match t.parent() {
                    None => Morphism::identity(0, GenericRing),
                    Some(parent) => {
                        let pp = self.path_idempotent(&parent)?;
                        let w = t.widths();
                        let k = w.len() - 1;
                        let w0 = (k >= 2).then(|| w[k - 2]);
                        split_step(&pp, w0, w[k - 1], w[k])?
                    }
                };
                self.store(t, &m)?;
                m
            }
        };
        let mut mem = self.mem.write().unwrap();
        Ok(mem.entry(t.clone()).or_insert_with(|| Arc::new(m)).clone())
    }

    /// Cache files currently on disk.
    pub fn entries(&self) -> Result<Vec<PathBuf>> {
        let Some(dir) = &self.dir else { return Ok(Vec::new()) };
        let mut out: Vec<PathBuf> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with("p_") && n.ends_with(".json")))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Removes every cache file and the in-memory table. Returns the number of files removed.
    pub fn clear(&self) -> Result<usize> {
        self.mem.write().unwrap().clear();
        let entries = self.entries()?;
        for p in &entries {
            fs::remove_file(p)?;
        }
        Ok(entries.len())
    }
}

/// `p_t` over ℚ(t), from the process-wide cache.
pub fn path_idempotent(t: &BratteliPath) -> Result<Morphism> {
    Ok((*IdempotentCache::global().path_idempotent(t)?).clone())
}

/// `z_λ = Σ p_t` over paths ending at λ.
pub fn central_idempotent(l: YoungDiagram) -> Result<Morphism> {
    central_idempotent_with(IdempotentCache::global(), l)
}

pub fn central_idempotent_with(cache: &IdempotentCache, l: YoungDiagram) -> Result<Morphism> {
    let n = l.size() as usize;
    let mut z = Morphism::zero(n, n, GenericRing);
    for t in paths_to(l) {
        z = z.add(cache.path_idempotent(&t)?.as_ref())?;
    }
    Ok(z)
}

/// Two-row diagrams of size `n`, widest first.
pub fn diagrams_of_size(n: u32) -> Vec<YoungDiagram> {
    (0..=n / 2).map(|r2| YoungDiagram { row1: n - r2, row2: r2 }).collect()
}

/// `Σ f_λ² = C_n`.
pub fn tower_dimension(n: usize) -> u128 {
    catalan(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::enumerate_diagrams;
    use crate::exactscalar::{quantum_integer, CycloRing, Scalar};
    use crate::linalg;

    fn yd(a: u32, b: u32) -> YoungDiagram {
        YoungDiagram::new(a, b).unwrap()
    }

    #[test]
    fn successors() {
        assert_eq!(young_successors(yd(2, 2)), vec![yd(3, 2)]);
        assert_eq!(young_successors(yd(1, 0)), vec![yd(2, 0), yd(1, 1)]);
        assert_eq!(young_successors(YoungDiagram::empty()), vec![yd(1, 0)]);
    }

    #[test]
    fn tableaux_counts_match_path_enumeration() {
        assert_eq!(count_tableaux(yd(1, 0)), 1);
        assert_eq!(count_tableaux(yd(2, 1)), 2);
        assert_eq!(count_tableaux(yd(4, 3)), 14);
        for n in 0..9 {
            for l in diagrams_of_size(n) {
                assert_eq!(count_tableaux(l), paths_to(l).len() as u128, "{l}");
            }
        }
    }

    #[test]
    fn graph_levels() {
        let g = bratteli_graph(7);
        assert_eq!(g.levels[2], vec![yd(2, 0), yd(1, 1)]);
        assert!(g.levels[7].contains(&yd(4, 3)) && g.levels[7].contains(&yd(7, 0)));
        let dims = g.level_dimensions();
        assert_eq!(dims[4], 14);
        for (n, d) in dims.iter().enumerate() {
            assert_eq!(*d, catalan(n));
        }
        let dot = bratteli_graph(4).to_dot();
        assert!(dot.contains("label=\"2,1\""));
        assert_eq!(dot.matches("rank=same").count(), 5);
    }

    #[test]
    fn path_parsing() {
        let p = BratteliPath::parse("1-2-1-2").unwrap();
        assert_eq!(p.cache_name(), "p_1-2-1-2");
        assert_eq!(p.end(), yd(2, 1));
        assert_eq!(p.shapes(), vec![YoungDiagram::empty(), yd(1, 0), yd(1, 1), yd(2, 1)]);
        assert_eq!(BratteliPath::from_shapes(&p.shapes()).unwrap(), p);
        assert!(BratteliPath::parse("1-3").is_err());
        assert!(BratteliPath::parse("1-0").is_err());
        assert!(BratteliPath::parse("2-3").is_err());
        assert_eq!(YoungDiagram::parse("[3,1]").unwrap(), yd(3, 1));
        assert_eq!(YoungDiagram::parse("[]").unwrap(), YoungDiagram::empty());
        assert!(YoungDiagram::parse("[1,2]").is_err());
    }

    fn e(i: usize, n: usize) -> Morphism {
        Morphism::generator(i, n, GenericRing).unwrap()
    }

    #[test]
    fn small_idempotents() {
        let d_inv = Scalar::d().inv().unwrap();
        let p = path_idempotent(&BratteliPath::parse("1-2-1").unwrap()).unwrap();
        assert_eq!(p, e(1, 2).scale(&d_inv));
        let jw2 = Morphism::identity(2, GenericRing).sub(&e(1, 2).scale(&d_inv)).unwrap();
        assert_eq!(path_idempotent(&BratteliPath::parse("1-2-3").unwrap()).unwrap(), jw2);
        assert_eq!(jones_wenzl(2, &GenericRing).unwrap(), jw2);
        assert_eq!(jones_wenzl(1, &GenericRing).unwrap(), Morphism::identity(1, GenericRing));
        let sum = all_paths(3).iter().fold(Morphism::zero(3, 3, GenericRing), |acc, t| acc.add(&path_idempotent(t).unwrap()).unwrap());
        assert_eq!(sum, Morphism::identity(3, GenericRing));
    }

    #[test]
    fn jones_wenzl_contract() {
        for n in 1..=5 {
            let p = jones_wenzl(n, &GenericRing).unwrap();
            assert_eq!(p.compose(&p).unwrap(), p);
            for i in 1..n {
                assert!(e(i, n).compose(&p).unwrap().is_zero());
                assert!(p.compose(&e(i, n)).unwrap().is_zero());
            }
            assert_eq!(p.coeff(&crate::Diagram::identity(n)), Scalar::one());
            assert_eq!(p.trace().unwrap(), quantum_integer(n as i64 + 1));
        }
        let t4 = quantum_integer(4);
        assert_eq!(t4.to_string(), "t^3 + t + t^-1 + t^-3");
    }

    #[test]
    fn cyclotomic_jones_wenzl() {
        let r = CycloRing::new(3).unwrap();
        assert!(matches!(jones_wenzl(3, &r), Err(Error::NotEvaluable { ell: 3, .. })));
        let p = jones_wenzl(2, &r).unwrap();
        let expected = Morphism::identity(2, r.clone()).sub(&Morphism::generator(1, 2, r.clone()).unwrap()).unwrap();
        assert_eq!(p, expected);
        let r5 = CycloRing::new(5).unwrap();
        let p4 = jones_wenzl(4, &r5).unwrap();
        assert_eq!(p4.compose(&p4).unwrap(), p4);
    }

    #[test]
    fn central_idempotents_in_t3() {
        let one = Morphism::identity(3, GenericRing);
        let lambdas = diagrams_of_size(3);
        let zs: Vec<Morphism> = lambdas.iter().map(|&l| central_idempotent(l).unwrap()).collect();
        let total = zs.iter().fold(Morphism::zero(3, 3, GenericRing), |a, z| a.add(z).unwrap());
        assert_eq!(total, one);
        for (i, z) in zs.iter().enumerate() {
            assert_eq!(z.compose(z).unwrap(), *z);
            for x in enumerate_diagrams(3, 3) {
                let x = Morphism::from_diagram(x, GenericRing);
                assert_eq!(z.compose(&x).unwrap(), x.compose(z).unwrap());
            }
            for (j, w) in zs.iter().enumerate() {
                if i != j {
                    assert!(z.compose(w).unwrap().is_zero());
                }
            }
        }
        // dim z_[2,1] T_3 z_[2,1] = f² = 4
        let z = central_idempotent(yd(2, 1)).unwrap();
        let rows: Vec<Vec<Scalar>> = enumerate_diagrams(3, 3)
            .into_iter()
            .map(|x| z.compose(&Morphism::from_diagram(x, GenericRing)).unwrap().compose(&z).unwrap().to_dense())
            .collect();
        assert_eq!(linalg::generic_rank(&rows), 4);
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = IdempotentCache::with_dir(dir.path()).unwrap();
        let t = BratteliPath::parse("1-2-1-2").unwrap();
        let p = cache.path_idempotent(&t).unwrap();
        assert!(dir.path().join("p_1-2-1-2.json").exists());
        assert!(dir.path().join("p_1-2-1.json").exists());
        let fresh = IdempotentCache::with_dir(dir.path()).unwrap();
        assert_eq!(*fresh.path_idempotent(&t).unwrap(), *p);
        assert_eq!(fresh.entries().unwrap().len(), 4);
        assert_eq!(fresh.clear().unwrap(), 4);
        assert!(fresh.entries().unwrap().is_empty());
    }
}
