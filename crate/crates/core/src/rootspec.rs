//! Root-of-unity structure: critical lines, reflections, and the evaluable
//! idempotents `z_λ^L`, `z_n^reg`, `z_n^nil`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactscalar::{specialize_in, CycloRing, GenericRing};
use crate::morphism::Morphism;
use crate::tower::{all_paths, diagrams_of_size, paths_to, BratteliPath, IdempotentCache, YoungDiagram};

fn check_ell(ell: u32) -> Result<()> {
    if ell < 3 {
        return Err(Error::BadParameter(format!("ell must be at least 3, got {ell}")));
    }
    Ok(())
}

/// Position of a diagram relative to the critical lines `w = mℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalGeometry {
    pub ell: u32,
    pub lambda: YoungDiagram,
    pub width: u32,
    pub is_critical: bool,
    /// Index `m ≥ 1` of the nearest critical line strictly to the left.
    pub left_line: Option<u32>,
    /// Reflections `(m, λ')` of λ in the adjacent critical lines, left first.
    pub partners: Vec<(u32, YoungDiagram)>,
}

pub fn critical_geometry(lambda: YoungDiagram, ell: u32) -> Result<CriticalGeometry> {
    check_ell(ell)?;
    let width = lambda.width();
    let is_critical = width % ell == 0;
    let left_line = if is_critical {
        (width / ell > 1).then(|| width / ell - 1)
    } else {
        (width > ell).then(|| width / ell)
    };
    let partners = if is_critical {
        Vec::new()
    } else {
        [width / ell, width / ell + 1]
            .into_iter()
            .filter_map(|m| reflection_partner(lambda, ell, m).ok().map(|p| (m, p)))
            .collect()
    };
    Ok(CriticalGeometry { ell, lambda, width, is_critical, left_line, partners })
}

/// The diagram of the same size whose width is `2mℓ − w(λ)`, for λ in the
/// open strip of width ℓ around line `m`.
pub fn reflection_partner(lambda: YoungDiagram, ell: u32, m: u32) -> Result<YoungDiagram> {
    check_ell(ell)?;
    let w = lambda.width() as i64;
    let line = (m * ell) as i64;
    if m == 0 || w % ell as i64 == 0 || (w - line).abs() >= ell as i64 {
        return Err(Error::NoPartner(format!("{lambda} is not in the open strip of line {m} at ell={ell}")));
    }
    let reflected = 2 * line - w;
    if reflected < 1 {
        return Err(Error::NoPartner(format!("reflection of {lambda} in line {m} has width {reflected}")));
    }
    YoungDiagram::from_width(lambda.size(), reflected as u32)
        .ok_or_else(|| Error::NoPartner(format!("no diagram of size {} and width {reflected}", lambda.size())))
}

/// Index `m` of the last critical line `w = mℓ` the path touches.
pub fn last_critical_hit(t: &BratteliPath, ell: u32) -> Option<u32> {
    t.widths().iter().rev().find(|&&w| w % ell == 0).map(|&w| w / ell)
}

/// The paths whose idempotents sum to `z_λ^L`.
pub fn z_left_paths(lambda: YoungDiagram, ell: u32) -> Result<Vec<BratteliPath>> {
    check_ell(ell)?;
    let w = lambda.width();
    if w % ell == 0 {
        return Err(Error::CriticalDiagram(format!("{lambda} lies on a critical line at ell={ell}")));
    }
    if w < ell {
        return Ok(paths_to(lambda).into_iter().filter(|t| last_critical_hit(t, ell).is_none()).collect());
    }
    let m = w / ell;
    let partner = reflection_partner(lambda, ell, m)?;
    let mut out: Vec<BratteliPath> = paths_to(lambda)
        .into_iter()
        .chain(paths_to(partner))
        .filter(|t| last_critical_hit(t, ell) == Some(m))
        .collect();
    out.sort();
    Ok(out)
}

fn sum_paths(cache: &IdempotentCache, n: usize, paths: &[BratteliPath]) -> Result<Morphism> {
    let mut z = Morphism::zero(n, n, GenericRing);
    for t in paths {
        z = z.add(cache.path_idempotent(t)?.as_ref())?;
    }
    Ok(z)
}

/// `z_λ^L` over ℚ(t); evaluable at ℓ.
pub fn z_left(lambda: YoungDiagram, ell: u32) -> Result<Morphism> {
    z_left_with(IdempotentCache::global(), lambda, ell)
}

pub fn z_left_with(cache: &IdempotentCache, lambda: YoungDiagram, ell: u32) -> Result<Morphism> {
    let paths = z_left_paths(lambda, ell)?;
    sum_paths(cache, lambda.size() as usize, &paths)
}

/// Paths of length `n` staying strictly left of the first critical line.
pub fn regular_paths(n: usize, ell: u32) -> Vec<BratteliPath> {
    all_paths(n).into_iter().filter(|t| t.widths().iter().all(|&w| w < ell)).collect()
}

/// `(z_n^reg, z_n^nil)` over ℚ(t).
pub fn z_reg_nil(n: usize, ell: u32) -> Result<(Morphism, Morphism)> {
    z_reg_nil_with(IdempotentCache::global(), n, ell)
}

pub fn z_reg_nil_with(cache: &IdempotentCache, n: usize, ell: u32) -> Result<(Morphism, Morphism)> {
    check_ell(ell)?;
    let reg = sum_paths(cache, n, &regular_paths(n, ell))?;
    let nil = Morphism::identity(n, GenericRing).sub(&reg)?;
    Ok((reg, nil))
}

/// Coefficient-wise specialization `t ↦ τ`.
pub fn evaluate_morphism(a: &Morphism, ell: u32) -> Result<Morphism<CycloRing>> {
    let ring = CycloRing::new(ell)?;
    let ctx = ring.context().clone();
    a.map_ring(ring, |d, c| {
        specialize_in(c, &ctx).map_err(|e| match e {
            Error::NotEvaluable { ell, .. } => Error::NotEvaluable {
                ell,
                context: format!("coefficient {c} of diagram {:?} has a pole", d.pairing()),
            },
            other => other,
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Critical,
    Left,
}

/// One summand of the partition of unity of `T_n(τ)`.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub lambda: String,
    pub kind: BlockKind,
    pub path_count: usize,
    pub evaluable: bool,
}

/// A block idempotent, generic and evaluated at τ.
pub struct PartitionBlock {
    pub lambda: YoungDiagram,
    pub kind: BlockKind,
    pub paths: Vec<BratteliPath>,
    pub generic: Morphism,
    pub evaluated: Result<Morphism<CycloRing>>,
}

/// The blocks `{z_λ : λ critical} ∪ {z_μ^L : μ non-critical}` of size `n`.
pub fn partition_blocks(cache: &IdempotentCache, n: usize, ell: u32) -> Result<Vec<PartitionBlock>> {
    check_ell(ell)?;
    let mut out = Vec::new();
    for lambda in diagrams_of_size(n as u32) {
        let (kind, paths) = if lambda.width() % ell == 0 {
            (BlockKind::Critical, paths_to(lambda))
        } else {
            (BlockKind::Left, z_left_paths(lambda, ell)?)
        };
        let generic = sum_paths(cache, n, &paths)?;
        let evaluated = evaluate_morphism(&generic, ell);
        out.push(PartitionBlock { lambda, kind, paths, generic, evaluated });
    }
    Ok(out)
}

/// Report rows for `(n, ℓ)`.
pub fn block_report(cache: &IdempotentCache, n: usize, ell: u32) -> Result<Vec<Block>> {
    Ok(partition_blocks(cache, n, ell)?
        .into_iter()
        .map(|b| Block {
            lambda: b.lambda.to_string(),
            kind: b.kind,
            path_count: b.paths.len(),
            evaluable: b.evaluated.is_ok(),
        })
        .collect())
}
