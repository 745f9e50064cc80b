//! Finite truncations of the tensor ideal generated by one morphism.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::diagram::{hom_basis, tensor_diagrams, Diagram};
use crate::error::{Error, Result};
use crate::exactscalar::Ring;
use crate::linalg::Echelon;
use crate::morphism::{caps, cups, Morphism};

/// Why the truncation stopped growing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StopReason {
    /// The whole Hom space was reached.
    Full,
    /// The caller's upper bound was reached.
    Ceiling,
    /// Two consecutive levels gave the same dimension.
    Stabilized,
}

#[derive(Clone, Debug)]
pub struct TruncationOptions {
    /// Upper bound on the dimension known to hold for the whole ideal.
    pub ceiling: Option<usize>,
    /// Number of levels `s` to try before giving up.
    pub max_levels: usize,
}

impl Default for TruncationOptions {
    fn default() -> Self {
        TruncationOptions { ceiling: None, max_levels: 3 }
    }
}

/// `I(m, n)` spanned through the levels listed in `levels` as `(s, dim)`.
#[derive(Clone, Debug)]
pub struct IdealSpan<F> {
    pub m: usize,
    pub n: usize,
    pub basis: Echelon<F>,
    pub levels: Vec<(usize, usize)>,
    pub stop: StopReason,
}

/// The ideal generated by `g`, with the two-sided ideals `J_s = T_s (g ⊗ 1) T_s`
/// computed once per level and shared between cells.
pub struct IdealGenerator<R: Ring> {
    g: Morphism<R>,
    levels: Mutex<HashMap<usize, Arc<OnceLock<Arc<Echelon<R::Elem>>>>>>,
}

impl<R: Ring> IdealGenerator<R> {
    /// `g` may be rectangular; it is padded into `T_k` first, which generates
    /// the same ideal.
    pub fn new(g: &Morphism<R>) -> Result<Self> {
        Ok(IdealGenerator { g: g.pad_embed()?, levels: Mutex::default() })
    }

    pub fn generator(&self) -> &Morphism<R> {
        &self.g
    }

    /// `J_s` in reduced echelon form over the diagrams of `T_s`.
    pub fn level(&self, s: usize) -> Result<Arc<Echelon<R::Elem>>> {
        let k = self.g.dom();
        if s < k {
            return Err(Error::BadParameter(format!("level {s} is below the generator's T_{k}")));
        }
        let cell = self.levels.lock().unwrap().entry(s).or_default().clone();
        Ok(cell.get_or_init(|| Arc::new(two_sided_closure(&self.g.tensor_id(s - k)))).clone())
    }

    /// First level usable for the cell `(m, n)`.
    pub fn first_level(&self, m: usize, n: usize) -> usize {
        let mut s = m.max(n).max(self.g.dom());
        if s % 2 != m % 2 {
            s += 1;
        }
        s
    }

    /// The span of `u ∘ (g ⊗ 1_j) ∘ v` over diagrams `u ∈ Hom(s, n)`,
    /// `v ∈ Hom(m, s)`, for `s = k + j` running up from [`Self::first_level`]
    /// until the dimension stops growing.
    pub fn truncation(&self, m: usize, n: usize, opts: &TruncationOptions) -> Result<IdealSpan<R::Elem>> {
        if (m + n) % 2 == 1 {
            return Err(Error::ParityError(format!("Hom({m},{n}) is zero")));
        }
        let dim = hom_basis(m, n).len();
        let mut basis = Echelon::new(dim);
        let mut levels: Vec<(usize, usize)> = Vec::new();
        let mut s = self.first_level(m, n);
        for _ in 0..opts.max_levels.max(1) {
            let js = self.level(s)?;
            let ring = self.g.ring().clone();
            let iota = Morphism::from_diagram(tensor_diagrams(Diagram::identity(m), caps((s - m) / 2)), ring.clone());
            let pi = Morphism::from_diagram(tensor_diagrams(Diagram::identity(n), cups((s - n) / 2)), ring.clone());
            for row in js.basis() {
                if basis.is_full() {
                    break;
                }
                let x = Morphism::from_sparse(s, s, ring.clone(), row);
                let y = pi.compose(&x)?.compose(&iota)?;
                basis.insert(&y.to_sparse());
            }
            let d = basis.rank();
            let prev = levels.last().map(|&(_, d)| d);
            levels.push((s, d));
            let stop = if basis.is_full() {
                Some(StopReason::Full)
            } else if opts.ceiling.is_some_and(|c| d >= c) {
                Some(StopReason::Ceiling)
            } else if prev == Some(d) {
                Some(StopReason::Stabilized)
            } else {
                None
            };
            if let Some(stop) = stop {
                return Ok(IdealSpan { m, n, basis, levels, stop });
            }
            s += 2;
        }
        Err(Error::NotStabilized(format!("cell ({m},{n}): dimensions {levels:?} still growing")))
    }
}

/// Span of `T_s · seed · T_s`: close under left and right multiplication by
/// the generators `e_i`.
pub fn two_sided_closure<R: Ring>(seed: &Morphism<R>) -> Echelon<R::Elem> {
    let s = seed.dom();
    let ring = seed.ring().clone();
    let gens: Vec<Morphism<R>> = (1..s).map(|i| Morphism::generator(i, s, ring.clone()).expect("1 ≤ i < s")).collect();
    let mut basis = Echelon::new(hom_basis(s, s).len());
    let mut queue = VecDeque::from([seed.clone()]);
    while let Some(v) = queue.pop_front() {
        if basis.is_full() {
            break;
        }
        if !basis.insert(&v.to_sparse()) {
            continue;
        }
        for e in &gens {
            queue.push_back(e.compose(&v).expect("same object"));
            queue.push_back(v.compose(e).expect("same object"));
        }
    }
    basis
}

/// `I(m, n)` for the ideal generated by `g`.
pub fn ideal_truncation<R: Ring>(g: &Morphism<R>, m: usize, n: usize, opts: &TruncationOptions) -> Result<IdealSpan<R::Elem>> {
    IdealGenerator::new(g)?.truncation(m, n, opts)
}
