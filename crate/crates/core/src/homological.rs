//! Diagonals as objects: the dictionary with modules over the equioriented
//! `A_q` quiver (`q = N - 3`), Hom and Ext, morphism types and cones,
//! AR triangles, framed sets and m-dilatations.
//!
//! Conventions. `A_q` has arrows `1 -> 2 -> ... -> q`; `M[a,b]` is the
//! interval module supported on `a..=b`, so `P_x = M[x,q]` and
//! `I_x = M[1,x]`. The fundamental domain is the intervals plus the shifted
//! projectives `ΣP_x`, and
//!
//! * `(i, j)` with `j < N` is `M[N-j, N-i-2]`,
//! * `(i, N)` is `ΣP_{N-1-i}`.
//!
//! Under this dictionary `(1, j)` is `P_{N-j}` and rotation by one step is
//! the AR translation; [`certify_dictionary`] checks the latter on the whole
//! quiver.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polygon::{
    crosses, enumerate_diagonals, is_m_diagonal, normalize, rotate_tau_m, Chord, Diagonal,
    PolygonConfig, PolygonError,
};
use crate::tquiver::{build_gamma_m, TranslationQuiver};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologicalError {
    #[error("Hom({src}, {dst}) = 0: NoCanonicalTriangle")]
    NoCanonicalTriangle { src: Diagonal, dst: Diagonal },
    #[error("{0} is not an m-diagonal")]
    NotInPower(Diagonal),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("dictionary mismatch: {0}")]
    DictionaryMismatch(String),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

/// Indecomposable `M[a,b]` over `A_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntervalModule {
    pub a: u32,
    pub b: u32,
    pub q: u32,
}

impl IntervalModule {
    pub fn new(a: u32, b: u32, q: u32) -> Option<Self> {
        (1 <= a && a <= b && b <= q).then_some(Self { a, b, q })
    }

    pub fn projective(x: u32, q: u32) -> Self {
        Self { a: x, b: q, q }
    }

    pub fn injective(x: u32, q: u32) -> Self {
        Self { a: 1, b: x, q }
    }

    pub fn is_projective(&self) -> bool {
        self.b == self.q
    }
}

impl fmt::Display for IntervalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{},{}]", self.a, self.b)
    }
}

/// An indecomposable of the fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Indecomposable {
    Module(IntervalModule),
    /// `ΣP_x`.
    ShiftedProjective {
        x: u32,
        q: u32,
    },
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indecomposable::Module(m) => m.fmt(f),
            Indecomposable::ShiftedProjective { x, .. } => write!(f, "ΣP_{x}"),
        }
    }
}

/// A formal direct sum of indecomposables, each named by its diagonal.
/// Summands are sorted; the empty sum is the zero object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ObjectRepr {
    pub summands: Vec<Diagonal>,
}

impl ObjectRepr {
    pub fn new(mut summands: Vec<Diagonal>) -> Self {
        summands.sort();
        Self { summands }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Module-side names of the summands, for the m = 1 dictionary.
    pub fn modules(&self, sides: u32) -> Vec<Indecomposable> {
        self.summands
            .iter()
            .map(|d| diagonal_to_indecomposable(d, sides))
            .collect()
    }
}

impl fmt::Display for ObjectRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.summands.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

pub fn diagonal_to_indecomposable(d: &Diagonal, sides: u32) -> Indecomposable {
    let q = sides - 3;
    if d.j() == sides {
        Indecomposable::ShiftedProjective {
            x: sides - 1 - d.i(),
            q,
        }
    } else {
        Indecomposable::Module(IntervalModule {
            a: sides - d.j(),
            b: sides - d.i() - 2,
            q,
        })
    }
}

pub fn indecomposable_to_diagonal(x: &Indecomposable) -> Diagonal {
    match *x {
        Indecomposable::Module(IntervalModule { a, b, q }) => {
            let sides = q + 3;
            Diagonal::new((sides - 2 - b) as i64, (sides - a) as i64, sides).unwrap()
        }
        Indecomposable::ShiftedProjective { x, q } => {
            let sides = q + 3;
            Diagonal::new((sides - 1 - x) as i64, sides as i64, sides).unwrap()
        }
    }
}

/// The fundamental-domain object of a diagonal.
pub fn diagonal_to_object(d: &Diagonal, _cfg: &PolygonConfig) -> ObjectRepr {
    ObjectRepr::new(vec![*d])
}

/// Every indecomposable of the fundamental domain for `A_q`.
pub fn fundamental_domain(q: u32) -> Vec<Indecomposable> {
    let mut out = Vec::new();
    for a in 1..=q {
        for b in a..=q {
            out.push(Indecomposable::Module(IntervalModule { a, b, q }));
        }
    }
    out.extend((1..=q).map(|x| Indecomposable::ShiftedProjective { x, q }));
    out
}

/// AR translation on the fundamental domain, read in the cluster category.
pub fn module_tau(x: &Indecomposable) -> Indecomposable {
    match *x {
        Indecomposable::Module(IntervalModule { a, b, q }) if b < q => {
            Indecomposable::Module(IntervalModule {
                a: a + 1,
                b: b + 1,
                q,
            })
        }
        Indecomposable::Module(IntervalModule { a, q, .. }) => {
            Indecomposable::ShiftedProjective { x: a, q }
        }
        Indecomposable::ShiftedProjective { x, q } => {
            Indecomposable::Module(IntervalModule::injective(x, q))
        }
    }
}

/// Irreducible maps between fundamental-domain objects: inclusions and
/// quotients of intervals, injectives into shifted projectives, and the maps
/// leaving the shifted projectives.
pub fn module_arrows(q: u32) -> BTreeSet<(Indecomposable, Indecomposable)> {
    let module = |a, b| Indecomposable::Module(IntervalModule { a, b, q });
    let shifted = |x| Indecomposable::ShiftedProjective { x, q };
    let mut out = BTreeSet::new();
    for a in 1..=q {
        for b in a..=q {
            if a > 1 {
                out.insert((module(a, b), module(a - 1, b)));
            }
            if b > a {
                out.insert((module(a, b), module(a, b - 1)));
            }
        }
    }
    for x in 1..=q {
        if x < q {
            out.insert((module(1, x), shifted(x + 1)));
            out.insert((shifted(x), module(x + 1, q)));
        }
        if x > 1 {
            out.insert((shifted(x), shifted(x - 1)));
        }
    }
    out
}

/// Check that the dictionary is a bijection onto the fundamental domain
/// that carries arrows to irreducible maps and rotation to AR translation.
pub fn certify_dictionary(sides: u32) -> Result<(), HomologicalError> {
    let q = sides - 3;
    let gamma: TranslationQuiver = build_gamma_m(&PolygonConfig::with_sides(sides)?);
    let image: Vec<Indecomposable> = gamma
        .labels()
        .iter()
        .map(|l| diagonal_to_indecomposable(&l.diagonal().unwrap(), sides))
        .collect();
    let mut sorted = image.clone();
    sorted.sort();
    let mut domain = fundamental_domain(q);
    domain.sort();
    if sorted != domain {
        return Err(HomologicalError::DictionaryMismatch(
            "not a bijection".into(),
        ));
    }
    for (v, x) in image.iter().enumerate() {
        if indecomposable_to_diagonal(x) != gamma.label(v).diagonal().unwrap() {
            return Err(HomologicalError::DictionaryMismatch(format!(
                "inverse fails at {x}"
            )));
        }
        if image[gamma.tau(v)] != module_tau(x) {
            return Err(HomologicalError::DictionaryMismatch(format!(
                "translation fails at {x}"
            )));
        }
    }
    let arrows: BTreeSet<_> = gamma
        .arrows()
        .iter()
        .map(|&(s, t)| (image[s], image[t]))
        .collect();
    if arrows != module_arrows(q) || arrows.len() != gamma.arrow_count() {
        return Err(HomologicalError::DictionaryMismatch("arrows differ".into()));
    }
    Ok(())
}

/// `dim Hom(M[a,b], M[c,d])`: 1 iff `c <= a <= d <= b`.
pub fn hom_dim_modkq(m: &IntervalModule, n: &IntervalModule) -> usize {
    (n.a <= m.a && m.a <= n.b && n.b <= m.b) as usize
}

/// Rotate `(d1, d2)` so that `d1` starts at vertex 1. Returns the rotation
/// step and the rotated pair.
fn to_slice(d1: &Diagonal, d2: &Diagonal, sides: u32) -> (i64, Diagonal, Diagonal) {
    let step = d1.i() as i64 - 1;
    (step, d1.rotate(step, sides), d2.rotate(step, sides))
}

/// `dim Hom(d1, d2)` in the cluster category of the polygon.
pub fn hom_dim_c(d1: &Diagonal, d2: &Diagonal, cfg: &PolygonConfig) -> usize {
    let sides = cfg.sides();
    let (_, s, t) = to_slice(d1, d2, sides);
    match diagonal_to_indecomposable(&t, sides) {
        Indecomposable::ShiftedProjective { .. } => 0,
        Indecomposable::Module(target) => {
            let source = IntervalModule::projective(sides - s.j(), sides - 3);
            hom_dim_modkq(&source, &target)
        }
    }
}

/// `Ext¹(d1, d2) = Hom(d1, Σd2)`, with `Σ` acting as one rotation step.
/// For m = 1 this must coincide with crossing.
pub fn ext1_nonzero(
    d1: &Diagonal,
    d2: &Diagonal,
    cfg: &PolygonConfig,
) -> Result<bool, HomologicalError> {
    let shifted = d2.rotate(1, cfg.sides());
    let ext = hom_dim_c(d1, &shifted, cfg) > 0;
    if cfg.m() == 1 && ext != crosses(d1, d2) {
        return Err(HomologicalError::TheoremViolation(format!(
            "Ext¹({d1},{d2}) nonzero = {ext}, crossing = {}",
            crosses(d1, d2)
        )));
    }
    Ok(ext)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MorphismKind {
    Zero,
    Iso,
    Injective,
    Surjective,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismClass {
    pub source: Diagonal,
    pub target: Diagonal,
    pub hom_dim: usize,
    pub kind: MorphismKind,
}

/// Type of the nonzero map `d1 -> d2`, read after rotating `d1` to `(1,j)`:
/// the target is then `(k,l)` with `k <= j-2` and `j <= l < N`.
pub fn classify_morphism(d1: &Diagonal, d2: &Diagonal, cfg: &PolygonConfig) -> MorphismClass {
    let hom_dim = hom_dim_c(d1, d2, cfg);
    let (_, s, t) = to_slice(d1, d2, cfg.sides());
    let kind = if hom_dim == 0 {
        MorphismKind::Zero
    } else {
        match (t.i() == 1, t.j() == s.j()) {
            (true, true) => MorphismKind::Iso,
            (true, false) => MorphismKind::Injective,
            (false, true) => MorphismKind::Surjective,
            (false, false) => MorphismKind::Neither,
        }
    };
    MorphismClass {
        source: *d1,
        target: *d2,
        hom_dim,
        kind,
    }
}

/// Third object of the triangle `d1 -> d2 -> C -> Σd1` on the nonzero map.
///
/// With `d1 = (1,j)` and `d2 = (k,l)`: zero for the identity, `(j-1,l)` for
/// an injection, `Σ(1,1+k) = (k,N)` for a surjection, and both otherwise.
pub fn cone(
    d1: &Diagonal,
    d2: &Diagonal,
    cfg: &PolygonConfig,
) -> Result<ObjectRepr, HomologicalError> {
    let sides = cfg.sides();
    let class = classify_morphism(d1, d2, cfg);
    let (step, s, t) = to_slice(d1, d2, sides);
    let (j, k, l) = (s.j() as i64, t.i() as i64, t.j() as i64);
    let n = sides as i64;
    let mut parts = Vec::new();
    match class.kind {
        MorphismKind::Zero => {
            return Err(HomologicalError::NoCanonicalTriangle { src: *d1, dst: *d2 })
        }
        MorphismKind::Iso => {}
        MorphismKind::Injective => parts.push((j - 1, l)),
        MorphismKind::Surjective => parts.push((k, n)),
        MorphismKind::Neither => {
            parts.push((k, n));
            parts.push((j - 1, l));
        }
    }
    let summands = parts
        .into_iter()
        .map(|(a, b)| Diagonal::new(a, b, sides).map(|x| x.rotate(-step, sides)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ObjectRepr::new(summands))
}

/// `{(i,j), (i,j-m), (i-m,j), (i-m,j-m)}` with edges dropped.
pub fn framed_set(d: &Diagonal, cfg: &PolygonConfig) -> Vec<Diagonal> {
    let (i, j, m) = (d.i() as i64, d.j() as i64, cfg.m() as i64);
    let mut out: Vec<Diagonal> = [(i, j), (i, j - m), (i - m, j), (i - m, j - m)]
        .into_iter()
        .filter_map(|(a, b)| normalize(a, b, cfg.sides()).ok().and_then(Chord::diagonal))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub first: ObjectRepr,
    pub middle: ObjectRepr,
    pub third: ObjectRepr,
    /// Shift of the first term.
    pub fourth: ObjectRepr,
}

/// The AR triangle `τ_m d -> (i-m,j) ⊕ (i,j-m) -> d -> Στ_m d`, where the
/// shift of `τ_m d` is `τ_m² d`.
pub fn ar_triangle(d: &Diagonal, cfg: &PolygonConfig) -> Result<Triangle, HomologicalError> {
    if !is_m_diagonal(d, cfg) {
        return Err(HomologicalError::NotInPower(*d));
    }
    let sides = cfg.sides();
    let (i, j, m) = (d.i() as i64, d.j() as i64, cfg.m() as i64);
    let middle = [(i - m, j), (i, j - m)]
        .into_iter()
        .filter_map(|(a, b)| normalize(a, b, sides).ok().and_then(Chord::diagonal))
        .collect();
    let first = rotate_tau_m(d, cfg);
    Ok(Triangle {
        first: ObjectRepr::new(vec![first]),
        middle: ObjectRepr::new(middle),
        third: ObjectRepr::new(vec![*d]),
        fourth: ObjectRepr::new(vec![rotate_tau_m(&first, cfg)]),
    })
}

/// A mesh: `start -> middle -> end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mesh {
    pub start: Diagonal,
    pub middle: Vec<Diagonal>,
    pub end: Diagonal,
}

impl Mesh {
    pub fn vertices(&self) -> Vec<Diagonal> {
        let mut v = self.middle.clone();
        v.push(self.start);
        v.push(self.end);
        v.sort();
        v.dedup();
        v
    }
}

fn mesh_with_step(d: &Diagonal, step: i64, sides: u32) -> Mesh {
    let (i, j) = (d.i() as i64, d.j() as i64);
    let mut middle: Vec<Diagonal> = [(i - step, j), (i, j - step)]
        .into_iter()
        .filter_map(|(a, b)| normalize(a, b, sides).ok().and_then(Chord::diagonal))
        .collect();
    middle.sort();
    Mesh {
        start: d.rotate(step, sides),
        middle,
        end: *d,
    }
}

/// The mesh ending at `d` in the plain diagonal quiver of the polygon.
pub fn one_mesh(d: &Diagonal, sides: u32) -> Mesh {
    mesh_with_step(d, 1, sides)
}

/// The mesh ending at a vertex of a translation quiver.
pub fn mesh_of(q: &TranslationQuiver, d: &Diagonal) -> Option<Mesh> {
    let v = q.index_of(&(*d).into())?;
    let mut middle: Vec<Diagonal> = q
        .predecessors(v)
        .map(|u| q.label(u).diagonal().unwrap())
        .collect();
    middle.sort();
    Some(Mesh {
        start: q.label(q.tau(v)).diagonal()?,
        middle,
        end: *d,
    })
}

/// Replace every unit step of a 1-mesh by m steps.
pub fn m_dilatation(mesh: &Mesh, cfg: &PolygonConfig) -> Result<Mesh, HomologicalError> {
    if !is_m_diagonal(&mesh.end, cfg) {
        return Err(HomologicalError::NotInPower(mesh.end));
    }
    Ok(mesh_with_step(&mesh.end, cfg.m() as i64, cfg.sides()))
}

/// Linear-algebra model of representations of the equioriented `A_q`, used
/// as an independent oracle for Hom, kernels, cokernels and cones.
pub mod reps {
    use std::collections::BTreeMap;

    use super::*;
    use crate::linalg::{self, Mat};

    /// `maps[t]` is the `dims[t+1] x dims[t]` matrix on the arrow `t+1 -> t+2`
    /// (vertices are numbered from 1, vectors are columns).
    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct Rep {
        pub dims: Vec<usize>,
        pub maps: Vec<Mat>,
    }

    impl Rep {
        pub fn q(&self) -> usize {
            self.dims.len()
        }

        pub fn interval(a: u32, b: u32, q: u32) -> Rep {
            let dims: Vec<usize> = (1..=q).map(|v| (a <= v && v <= b) as usize).collect();
            let maps = (0..q as usize - 1)
                .map(|t| {
                    let (r, c) = (dims[t + 1], dims[t]);
                    let mut m = linalg::zeros(r, c);
                    if r == 1 && c == 1 {
                        m[0][0] = 1;
                    }
                    m
                })
                .collect();
            Rep { dims, maps }
        }

        /// Composite map from vertex `a` to vertex `b` (1-based, `a <= b`).
        pub fn composite(&self, a: usize, b: usize) -> Mat {
            let mut acc = linalg::identity(self.dims[a - 1]);
            for t in a - 1..b - 1 {
                acc = linalg::matmul(&self.maps[t], &acc, self.dims[a - 1]);
            }
            acc
        }
    }

    /// A morphism: one `dims_n[t] x dims_m[t]` matrix per vertex.
    pub type Morphism = Vec<Mat>;

    /// Basis of `Hom(m, n)`, by solving the commutativity equations.
    pub fn hom_basis(m: &Rep, n: &Rep) -> Vec<Morphism> {
        let q = m.q();
        let mut offsets = Vec::with_capacity(q + 1);
        let mut total = 0;
        for t in 0..q {
            offsets.push(total);
            total += m.dims[t] * n.dims[t];
        }
        // Variable (t, r, c) is entry (r, c) of f_t.
        let var = |t: usize, r: usize, c: usize| offsets[t] + r * m.dims[t] + c;
        let mut eqs: Mat = Vec::new();
        for t in 0..q.saturating_sub(1) {
            // f_{t+1} M_t - N_t f_t = 0, entry (r, c).
            for r in 0..n.dims[t + 1] {
                for c in 0..m.dims[t] {
                    let mut row = vec![0u64; total];
                    for k in 0..m.dims[t + 1] {
                        let coef = m.maps[t][k][c];
                        if coef != 0 {
                            let v = var(t + 1, r, k);
                            row[v] = linalg::add(row[v], coef);
                        }
                    }
                    for k in 0..n.dims[t] {
                        let coef = n.maps[t][r][k];
                        if coef != 0 {
                            let v = var(t, k, c);
                            row[v] = linalg::sub(row[v], coef);
                        }
                    }
                    eqs.push(row);
                }
            }
        }
        linalg::null_space(&eqs, total)
            .into_iter()
            .map(|x| {
                (0..q)
                    .map(|t| {
                        (0..n.dims[t])
                            .map(|r| (0..m.dims[t]).map(|c| x[var(t, r, c)]).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Interval multiplicities from the ranks `r(a,b)` of composite maps.
    pub fn decompose_by_ranks(
        q: usize,
        rank: impl Fn(usize, usize) -> usize,
    ) -> BTreeMap<(u32, u32), usize> {
        let r = |a: usize, b: usize| -> i64 {
            if a == 0 || b > q {
                0
            } else {
                rank(a, b) as i64
            }
        };
        let mut out = BTreeMap::new();
        for a in 1..=q {
            for b in a..=q {
                let mult = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1);
                assert!(mult >= 0, "negative multiplicity");
                if mult > 0 {
                    out.insert((a as u32, b as u32), mult as usize);
                }
            }
        }
        out
    }

    /// Interval decomposition of `ker f`.
    pub fn kernel_intervals(m: &Rep, f: &Morphism) -> BTreeMap<(u32, u32), usize> {
        let kernels: Vec<Mat> = (0..m.q())
            .map(|t| linalg::null_space(&f[t], m.dims[t]))
            .collect();
        decompose_by_ranks(m.q(), |a, b| {
            // Columns = kernel basis at a, pushed to b.
            let basis = &kernels[a - 1];
            if basis.is_empty() {
                return 0;
            }
            let cols = linalg::transpose(basis, m.dims[a - 1]);
            let pushed = linalg::matmul(&m.composite(a, b), &cols, basis.len());
            linalg::rank(&pushed, basis.len())
        })
    }

    /// Interval decomposition of `coker f`.
    pub fn cokernel_intervals(m: &Rep, n: &Rep, f: &Morphism) -> BTreeMap<(u32, u32), usize> {
        let projections: Vec<Mat> = (0..n.q())
            .map(|t| linalg::left_null_space(&f[t], n.dims[t], m.dims[t]))
            .collect();
        decompose_by_ranks(n.q(), |a, b| {
            let proj = &projections[b - 1];
            if proj.is_empty() || n.dims[a - 1] == 0 {
                return 0;
            }
            let through = linalg::matmul(proj, &n.composite(a, b), n.dims[a - 1]);
            linalg::rank(&through, n.dims[a - 1])
        })
    }

    /// Independent computation of the morphism type and cone of the nonzero
    /// map `d1 -> d2`: rotate `d1` to a projective, solve for the map, and
    /// assemble `coker ⊕ Σ ker`. `None` when Hom vanishes.
    pub fn oracle_cone(
        d1: &Diagonal,
        d2: &Diagonal,
        sides: u32,
    ) -> Option<(usize, MorphismKind, Vec<Diagonal>)> {
        let q = sides - 3;
        let (step, s, t) = to_slice(d1, d2, sides);
        let Indecomposable::Module(target) = diagonal_to_indecomposable(&t, sides) else {
            return None;
        };
        let Indecomposable::Module(source) = diagonal_to_indecomposable(&s, sides) else {
            unreachable!("(1,j) is a module");
        };
        let m = Rep::interval(source.a, source.b, q);
        let n = Rep::interval(target.a, target.b, q);
        let basis = hom_basis(&m, &n);
        let f = basis.first()?;
        let ker = kernel_intervals(&m, f);
        let coker = cokernel_intervals(&m, &n, f);
        let kind = match (ker.is_empty(), coker.is_empty()) {
            (true, true) => MorphismKind::Iso,
            (true, false) => MorphismKind::Injective,
            (false, true) => MorphismKind::Surjective,
            (false, false) => MorphismKind::Neither,
        };
        let to_diag = |(a, b): (u32, u32)| {
            indecomposable_to_diagonal(&Indecomposable::Module(IntervalModule { a, b, q }))
        };
        let mut cone = Vec::new();
        for (&ab, &k) in &coker {
            cone.extend(std::iter::repeat_n(to_diag(ab), k));
        }
        for (&ab, &k) in &ker {
            // Σ is one rotation step in the cluster category.
            cone.extend(std::iter::repeat_n(to_diag(ab).rotate(1, sides), k));
        }
        let mut cone: Vec<Diagonal> = cone.into_iter().map(|x| x.rotate(-step, sides)).collect();
        cone.sort();
        Some((basis.len(), kind, cone))
    }
}

/// Every diagonal pair `(d1, d2)` of the polygon with nonzero Hom.
pub fn hom_nonzero_pairs(sides: u32) -> Vec<(Diagonal, Diagonal)> {
    let cfg = PolygonConfig::with_sides(sides).expect("at least a square");
    let all = enumerate_diagonals(sides);
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if hom_dim_c(a, b, &cfg) > 0 {
                out.push((*a, *b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::reps::*;
    use super::*;
    use crate::mesh::MeshAlgebra;

    fn d(i: i64, j: i64, sides: u32) -> Diagonal {
        Diagonal::new(i, j, sides).unwrap()
    }

    fn unit(sides: u32) -> PolygonConfig {
        PolygonConfig::with_sides(sides).unwrap()
    }

    #[test]
    fn dictionary_is_certified() {
        for sides in 4..14 {
            certify_dictionary(sides).unwrap();
        }
    }

    #[test]
    fn projective_slice() {
        let sides = 10;
        let q = sides - 3;
        let slice: BTreeSet<_> = (3..sides)
            .map(|j| diagonal_to_indecomposable(&d(1, j as i64, sides), sides))
            .collect();
        let projectives: BTreeSet<_> = (1..=q)
            .map(|x| Indecomposable::Module(IntervalModule::projective(x, q)))
            .collect();
        assert_eq!(slice, projectives);
    }

    #[test]
    fn interval_hom_matches_linear_algebra() {
        for q in 1..=6u32 {
            let intervals: Vec<_> = (1..=q)
                .flat_map(|a| (a..=q).map(move |b| IntervalModule { a, b, q }))
                .collect();
            for x in &intervals {
                for y in &intervals {
                    let brute =
                        hom_basis(&Rep::interval(x.a, x.b, q), &Rep::interval(y.a, y.b, q)).len();
                    assert_eq!(hom_dim_modkq(x, y), brute, "{x} -> {y}");
                }
            }
        }
        let p1 = IntervalModule::projective(1, 4);
        assert_eq!(hom_dim_modkq(&p1, &p1), 1);
        let s1 = IntervalModule::new(1, 1, 4).unwrap();
        let p3 = IntervalModule::projective(3, 4);
        assert_eq!(hom_dim_modkq(&s1, &p3), 0);
    }

    #[test]
    fn hom_matches_mesh_category() {
        for sides in 4..=12 {
            let cfg = unit(sides);
            let q = build_gamma_m(&cfg);
            let alg = MeshAlgebra::new(&q).unwrap();
            for x in 0..q.vertex_count() {
                for y in 0..q.vertex_count() {
                    let (a, b) = (
                        q.label(x).diagonal().unwrap(),
                        q.label(y).diagonal().unwrap(),
                    );
                    assert_eq!(
                        hom_dim_c(&a, &b, &cfg),
                        alg.hom_dim(x, y),
                        "{a} -> {b}, N={sides}"
                    );
                }
            }
        }
    }

    #[test]
    fn ext_examples() {
        let cfg = unit(10);
        assert!(ext1_nonzero(&d(1, 4, 10), &d(2, 9, 10), &cfg).unwrap());
        assert!(!ext1_nonzero(&d(1, 4, 10), &d(5, 8, 10), &cfg).unwrap());
        assert!(!ext1_nonzero(&d(3, 7, 10), &d(3, 7, 10), &cfg).unwrap());
    }

    #[test]
    fn morphism_examples() {
        let cfg = unit(10);
        let kind = |a: Diagonal, b: Diagonal| classify_morphism(&a, &b, &cfg).kind;
        assert_eq!(kind(d(1, 4, 10), d(1, 6, 10)), MorphismKind::Injective);
        assert_eq!(kind(d(1, 6, 10), d(3, 6, 10)), MorphismKind::Surjective);
        assert_eq!(kind(d(1, 6, 10), d(3, 8, 10)), MorphismKind::Neither);
        assert_eq!(kind(d(1, 5, 10), d(1, 5, 10)), MorphismKind::Iso);
        assert_eq!(kind(d(1, 6, 10), d(1, 4, 10)), MorphismKind::Zero);
    }

    #[test]
    fn cone_examples() {
        let cfg = unit(10);
        let c = |a, b| cone(&a, &b, &cfg).unwrap().summands;
        assert_eq!(c(d(1, 4, 10), d(1, 6, 10)), vec![d(3, 6, 10)]);
        assert_eq!(c(d(1, 6, 10), d(3, 6, 10)), vec![d(3, 10, 10)]);
        assert_eq!(d(3, 10, 10), d(1, 4, 10).rotate(1, 10));
        assert!(c(d(1, 5, 10), d(1, 5, 10)).is_empty());
        assert_eq!(c(d(1, 6, 10), d(3, 8, 10)), vec![d(3, 10, 10), d(5, 8, 10)]);
        assert!(matches!(
            cone(&d(1, 6, 10), &d(1, 4, 10), &cfg),
            Err(HomologicalError::NoCanonicalTriangle { .. })
        ));
    }

    #[test]
    fn proof_identities() {
        // (1,l)/(1,j) = (j-1,l) and ker((1,j) -> (k,j)) = (1,1+k).
        let sides = 9;
        let q = sides - 3;
        for j in 3..sides {
            for l in j + 1..sides {
                let (_, kind, cone) =
                    oracle_cone(&d(1, j as i64, sides), &d(1, l as i64, sides), sides).unwrap();
                assert_eq!(kind, MorphismKind::Injective);
                assert_eq!(cone, vec![d(j as i64 - 1, l as i64, sides)]);
            }
            for k in 2..j - 1 {
                let m = Rep::interval(sides - j, q, q);
                let Indecomposable::Module(t) =
                    diagonal_to_indecomposable(&d(k as i64, j as i64, sides), sides)
                else {
                    panic!()
                };
                let n = Rep::interval(t.a, t.b, q);
                let f = &hom_basis(&m, &n)[0];
                let ker: Vec<_> = kernel_intervals(&m, f).into_keys().collect();
                let expected = diagonal_to_indecomposable(&d(1, 1 + k as i64, sides), sides);
                assert_eq!(
                    ker.iter()
                        .map(|&(a, b)| Indecomposable::Module(IntervalModule { a, b, q }))
                        .collect::<Vec<_>>(),
                    vec![expected]
                );
            }
        }
    }

    #[test]
    fn framed_sets() {
        let cfg = PolygonConfig::new(4, 2).unwrap();
        assert_eq!(
            framed_set(&d(1, 6, 10), &cfg),
            vec![d(1, 4, 10), d(1, 6, 10), d(4, 9, 10), d(6, 9, 10)]
        );
        assert_eq!(framed_set(&d(1, 4, 10), &cfg).len(), 3);
        assert_eq!(
            framed_set(&d(2, 5, 6), &unit(6)),
            vec![d(1, 4, 6), d(1, 5, 6), d(2, 4, 6), d(2, 5, 6)]
        );
    }

    #[test]
    fn ar_triangle_example() {
        let cfg = PolygonConfig::new(4, 2).unwrap();
        let t = ar_triangle(&d(1, 6, 10), &cfg).unwrap();
        assert_eq!(t.first.summands, vec![d(4, 9, 10)]);
        assert_eq!(t.middle.summands, vec![d(1, 4, 10), d(6, 9, 10)]);
        assert_eq!(t.third.summands, vec![d(1, 6, 10)]);
        assert_eq!(t.fourth.summands, vec![d(2, 7, 10)]);
        assert_eq!(
            ar_triangle(&d(1, 4, 10), &cfg)
                .unwrap()
                .middle
                .summands
                .len(),
            1
        );
        assert!(ar_triangle(&d(1, 3, 10), &cfg).is_err());
    }

    #[test]
    fn dilatation_example() {
        let cfg = PolygonConfig::new(4, 2).unwrap();
        let one = one_mesh(&d(1, 6, 10), 10);
        assert_eq!(
            one.vertices(),
            vec![d(1, 5, 10), d(1, 6, 10), d(5, 10, 10), d(6, 10, 10)]
        );
        let big = m_dilatation(&one, &cfg).unwrap();
        assert_eq!(big.vertices(), framed_set(&d(1, 6, 10), &cfg));
        assert_eq!(Some(big), mesh_of(&build_gamma_m(&cfg), &d(1, 6, 10)));
        assert!(m_dilatation(&one_mesh(&d(1, 3, 10), 10), &cfg).is_err());
        let u = unit(10);
        assert_eq!(m_dilatation(&one, &u).unwrap(), one);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn pair() -> impl Strategy<Value = (u32, Diagonal, Diagonal)> {
        (5u32..14).prop_flat_map(|sides| {
            let all = enumerate_diagonals(sides);
            (
                Just(sides),
                proptest::sample::select(all.clone()),
                proptest::sample::select(all),
            )
        })
    }

    proptest! {
        #[test]
        fn hom_is_rotation_invariant((sides, a, b) in pair(), k in 0i64..20) {
            let cfg = PolygonConfig::with_sides(sides).unwrap();
            prop_assert_eq!(
                hom_dim_c(&a, &b, &cfg),
                hom_dim_c(&a.rotate(k, sides), &b.rotate(k, sides), &cfg)
            );
        }

        #[test]
        fn ext_is_crossing((sides, a, b) in pair()) {
            let cfg = PolygonConfig::with_sides(sides).unwrap();
            prop_assert_eq!(ext1_nonzero(&a, &b, &cfg).unwrap(), crosses(&a, &b));
        }

        #[test]
        fn cone_matches_oracle((sides, a, b) in pair()) {
            let cfg = PolygonConfig::with_sides(sides).unwrap();
            match reps::oracle_cone(&a, &b, sides) {
                None => prop_assert!(cone(&a, &b, &cfg).is_err()),
                Some((dim, kind, c)) => {
                    prop_assert_eq!(dim, 1);
                    prop_assert_eq!(classify_morphism(&a, &b, &cfg).kind, kind);
                    prop_assert_eq!(cone(&a, &b, &cfg).unwrap().summands, c);
                }
            }
        }
    }
}
