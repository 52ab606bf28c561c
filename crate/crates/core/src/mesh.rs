//! The mesh category of a finite stable translation quiver, computed one
//! source at a time by path length.
//!
//! Mesh relations are homogeneous of degree 2, so `Hom(x, -)` is graded.
//! The degree-`l` piece at `y` is the cokernel of
//! `V_{l-2}(τy) -> ⊕_{β: z -> y} V_{l-1}(z)`, `v ↦ (σ(β) v)_β`,
//! where `σ(β): τy -> z` is the mesh partner of `β`. Arrows act on each
//! piece by explicit matrices, which also lets us evaluate single paths.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, Mat};
use crate::polygon::{normalize, reduce, Chord, Diagonal, PolygonConfig};
use crate::tquiver::{
    build_gamma_m, sectional_paths_from, QuiverError, TranslationQuiver, VertexLabel,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeshError {
    #[error("paths of length {bound} are still nonzero; raise the bound")]
    BoundTooSmall { bound: usize },
    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("{src} -> {dst} is not an arrow of the m-diagonal quiver")]
    NotAnArrow { src: Diagonal, dst: Diagonal },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Clone)]
struct SourceData {
    /// `dims[l][y]`: dimension of the degree-`l` part of `Hom(x, y)`.
    dims: Vec<Vec<usize>>,
    /// `maps[l][a]`: action of arrow `a` from degree `l - 1` to degree `l`.
    maps: Vec<Vec<Mat>>,
}

#[derive(Debug, Clone)]
pub struct MeshAlgebra {
    quiver: TranslationQuiver,
    sources: Vec<SourceData>,
    bound: usize,
}

/// The arrow `τy -> z` paired with the `k`-th arrow `z -> y`.
fn mesh_partner(q: &TranslationQuiver, arrow: usize) -> Option<usize> {
    let (z, y) = q.arrows()[arrow];
    let rank = q.in_arrows(y)[..]
        .iter()
        .take_while(|&&a| a != arrow)
        .filter(|&&a| q.arrows()[a].0 == z)
        .count();
    q.out_arrows(q.tau(y))
        .iter()
        .copied()
        .filter(|&a| q.arrows()[a].1 == z)
        .nth(rank)
}

fn solve_source(q: &TranslationQuiver, x: usize, bound: usize) -> Result<SourceData, MeshError> {
    let nv = q.vertex_count();
    let na = q.arrow_count();
    let mut dims = vec![vec![0; nv]];
    dims[0][x] = 1;
    let mut maps: Vec<Vec<Mat>> = vec![vec![Vec::new(); na]];
    let mut level = 0;
    while dims[level].iter().any(|&d| d > 0) {
        level += 1;
        if level > bound {
            return Err(MeshError::BoundTooSmall { bound });
        }
        let mut next_dims = vec![0; nv];
        let mut next_maps = vec![Vec::new(); na];
        #[allow(clippy::needless_range_loop)]
        for y in 0..nv {
            let incoming = q.in_arrows(y);
            let blocks: Vec<usize> = incoming
                .iter()
                .map(|&a| dims[level - 1][q.arrows()[a].0])
                .collect();
            let total: usize = blocks.iter().sum();
            if total == 0 {
                continue;
            }
            let ty = q.tau(y);
            let e = if level >= 2 { dims[level - 2][ty] } else { 0 };
            // Relation matrix: total x e, block rows sigma(beta).
            let mut rel = linalg::zeros(total, e);
            if e > 0 {
                let mut row = 0;
                for (&a, &b) in incoming.iter().zip(&blocks) {
                    let partner = mesh_partner(q, a).ok_or_else(|| {
                        MeshError::ModelInconsistency(format!("arrow {a} has no mesh partner"))
                    })?;
                    let m = &maps[level - 1][partner];
                    for r in 0..b {
                        rel[row + r].copy_from_slice(&m[r]);
                    }
                    row += b;
                }
            }
            let quotient = linalg::left_null_space(&rel, total, e);
            next_dims[y] = quotient.len();
            let mut col = 0;
            for (&a, &b) in incoming.iter().zip(&blocks) {
                next_maps[a] = quotient
                    .iter()
                    .map(|row| row[col..col + b].to_vec())
                    .collect();
                col += b;
            }
        }
        dims.push(next_dims);
        maps.push(next_maps);
    }
    Ok(SourceData { dims, maps })
}

impl MeshAlgebra {
    /// Build with the default truncation, starting at `|V|` and doubling
    /// whenever nonzero paths remain at the bound.
    pub fn new(quiver: &TranslationQuiver) -> Result<Self, MeshError> {
        let mut bound = quiver.vertex_count().max(2);
        let cap = 64 * bound;
        loop {
            match Self::with_bound(quiver, bound) {
                Err(MeshError::BoundTooSmall { .. }) if bound < cap => bound *= 2,
                other => return other,
            }
        }
    }

    pub fn with_bound(quiver: &TranslationQuiver, bound: usize) -> Result<Self, MeshError> {
        let sources = (0..quiver.vertex_count())
            .map(|x| solve_source(quiver, x, bound))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            quiver: quiver.clone(),
            sources,
            bound,
        })
    }

    pub fn quiver(&self) -> &TranslationQuiver {
        &self.quiver
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Degree-by-degree dimensions of `Hom(x, y)`.
    pub fn graded_dims(&self, x: usize, y: usize) -> Vec<usize> {
        self.sources[x].dims.iter().map(|d| d[y]).collect()
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.graded_dims(x, y).iter().sum()
    }

    /// `dim rad(x,y) - dim rad²(x,y)`. The degree-`l` piece for `l >= 2` is
    /// spanned by arrow images of degree `l - 1`, so `rad²` is everything of
    /// degree at least 2.
    pub fn irr_dim(&self, x: usize, y: usize) -> usize {
        let dims = self.graded_dims(x, y);
        let rad: usize = dims.iter().skip(1).sum();
        let rad2: usize = dims.iter().skip(2).sum();
        rad - rad2
    }

    /// Whether the composite of a path (as vertex sequence) is nonzero.
    pub fn path_is_nonzero(&self, path: &[usize]) -> bool {
        let q = &self.quiver;
        let data = &self.sources[path[0]];
        let mut v = vec![1u64];
        for (l, w) in path.windows(2).enumerate() {
            let level = l + 1;
            if level >= data.maps.len() {
                return false;
            }
            let Some(&a) = q
                .out_arrows(w[0])
                .iter()
                .find(|&&a| q.arrows()[a].1 == w[1])
            else {
                return false;
            };
            v = linalg::matvec(&data.maps[level][a], &v);
            if v.iter().all(|&c| c == 0) {
                return false;
            }
        }
        true
    }
}

pub fn mesh_hom_dim(a: &MeshAlgebra, x: &VertexLabel, y: &VertexLabel) -> Result<usize, MeshError> {
    let q = a.quiver();
    Ok(a.hom_dim(q.require(x)?, q.require(y)?))
}

/// Irreducible-morphism dimension, checked against the arrow count.
pub fn irr_dim(a: &MeshAlgebra, x: &VertexLabel, y: &VertexLabel) -> Result<usize, MeshError> {
    let q = a.quiver();
    let (u, v) = (q.require(x)?, q.require(y)?);
    let d = a.irr_dim(u, v);
    let arrows = q.multiplicity(u, v);
    if d != arrows {
        return Err(MeshError::ModelInconsistency(format!(
            "irr({x},{y}) = {d} but there are {arrows} arrows"
        )));
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionalReport {
    pub sectional_pairs: usize,
    pub arrows: usize,
    /// Whether the mesh-category checks ran (they are skipped above the size cap).
    pub mesh_checked: bool,
}

/// Largest polygon for which [`verify_sectional_irreducibles`] also runs the
/// mesh-category checks.
pub const MESH_SIDES_CAP: u32 = 16;

/// Arrows of the m-diagonal quiver are exactly the pairs joined by a
/// sectional path of length m in the plain diagonal quiver; such paths are
/// nonzero in the mesh category, and irreducible maps in the mesh category
/// of the m-diagonal quiver are its arrows.
pub fn verify_sectional_irreducibles(cfg: &PolygonConfig) -> Result<SectionalReport, MeshError> {
    let gamma = build_gamma_m(&cfg.unit());
    let gm = build_gamma_m(cfg);
    let m = cfg.m() as usize;
    let mesh_checked = cfg.sides() <= MESH_SIDES_CAP;
    let gamma_mesh = if mesh_checked {
        Some(MeshAlgebra::new(&gamma)?)
    } else {
        None
    };

    let mut pairs = Vec::new();
    for x in gm.labels() {
        let u = gamma.require(x)?;
        for path in sectional_paths_from(&gamma, u, m) {
            let y = gamma.label(*path.last().unwrap());
            if let Some(alg) = &gamma_mesh {
                if !alg.path_is_nonzero(&path) {
                    return Err(MeshError::TheoremViolation(format!(
                        "sectional path from {x} to {y} vanishes"
                    )));
                }
            }
            pairs.push((*x, y));
        }
    }
    pairs.sort();
    let arrows = gm.labelled_arrows();
    if pairs != arrows {
        return Err(MeshError::TheoremViolation(format!(
            "{} sectional pairs vs {} arrows for n={}, m={}",
            pairs.len(),
            arrows.len(),
            cfg.n(),
            cfg.m()
        )));
    }
    if mesh_checked {
        let alg = MeshAlgebra::new(&gm)?;
        for x in gm.labels() {
            for y in gm.labels() {
                irr_dim(&alg, x, y).map_err(|e| MeshError::TheoremViolation(e.to_string()))?;
            }
        }
    }
    Ok(SectionalReport {
        sectional_pairs: pairs.len(),
        arrows: arrows.len(),
        mesh_checked,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotMove {
    pub pivot: u32,
    pub from: Diagonal,
    pub to: Diagonal,
}

/// A chain of elementary moves, each rotating the free endpoint one step
/// about a fixed pivot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotPath {
    pub moves: Vec<PivotMove>,
}

impl PivotPath {
    pub fn pivot(&self) -> Option<u32> {
        self.moves.first().map(|mv| mv.pivot)
    }

    /// Successive positions of the moving endpoint.
    pub fn free_endpoints(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for mv in &self.moves {
            let other = |d: &Diagonal| if d.i() == mv.pivot { d.j() } else { d.i() };
            if out.is_empty() {
                out.push(other(&mv.from));
            }
            out.push(other(&mv.to));
        }
        out
    }
}

/// The m elementary moves about a common pivot realizing an arrow of the
/// m-diagonal quiver.
pub fn arrow_to_pivot_moves(
    src: &Diagonal,
    dst: &Diagonal,
    cfg: &PolygonConfig,
) -> Result<PivotPath, MeshError> {
    let sides = cfg.sides();
    let m = cfg.m() as i64;
    let not_arrow = || MeshError::NotAnArrow {
        src: *src,
        dst: *dst,
    };
    for (pivot, free) in [(src.i(), src.j()), (src.j(), src.i())] {
        if !dst.has_endpoint(pivot) {
            continue;
        }
        let target = if dst.i() == pivot { dst.j() } else { dst.i() };
        if reduce(free as i64 + m, sides) != target {
            continue;
        }
        let mut moves = Vec::with_capacity(m as usize);
        let mut from = *src;
        for step in 1..=m {
            let to = match normalize(pivot as i64, free as i64 + step, sides) {
                Ok(Chord::Diagonal(d)) => d,
                _ => return Err(not_arrow()),
            };
            moves.push(PivotMove { pivot, from, to });
            from = to;
        }
        return Ok(PivotPath { moves });
    }
    Err(not_arrow())
}
