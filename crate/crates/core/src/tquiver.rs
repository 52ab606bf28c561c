//! Finite stable translation quivers.
//!
//! A quiver stores its vertex labels in sorted order and refers to vertices
//! by index everywhere else. Construction always goes through
//! [`TranslationQuiver::new`], which checks that `tau` is a bijection and
//! that the mesh axiom holds, so every value of the type is a genuine
//! stable translation quiver.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polygon::{
    enumerate_m_diagonals, normalize, rotate_tau_m, Chord, Diagonal, PolygonConfig,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex label {0}")]
    DuplicateVertex(VertexLabel),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexLabel),
    #[error("translation is not a bijection on the vertex set")]
    TauNotBijective,
    #[error("mesh axiom fails: {src} -> {dst} has multiplicity {forward}, {tau_dst} -> {src} has {backward}")]
    MeshAxiom {
        src: VertexLabel,
        dst: VertexLabel,
        tau_dst: VertexLabel,
        forward: usize,
        backward: usize,
    },
    #[error("power exponent must be at least 1")]
    ZeroPower,
    #[error("invalid quotient presentation p={p}, r={r}, s={s}")]
    InvalidQuotient { p: u32, r: u32, s: u32 },
    #[error("the automorphism has a fixed point; the quotient is degenerate")]
    DegenerateQuotient,
}

/// Vertex `(k, i)` of `ZA_p`: column `k`, row `i` in `1..=p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZaCoordinate {
    pub k: i64,
    pub i: u32,
}

impl fmt::Display for ZaCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.k, self.i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexLabel {
    Diagonal(Diagonal),
    Za(ZaCoordinate),
}

impl VertexLabel {
    pub fn diagonal(&self) -> Option<Diagonal> {
        match self {
            VertexLabel::Diagonal(d) => Some(*d),
            VertexLabel::Za(_) => None,
        }
    }

    pub fn id(&self) -> String {
        match self {
            VertexLabel::Diagonal(d) => d.id(),
            VertexLabel::Za(z) => format!("z{}_{}", z.k, z.i),
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Diagonal(d) => d.fmt(f),
            VertexLabel::Za(z) => z.fmt(f),
        }
    }
}

impl From<Diagonal> for VertexLabel {
    fn from(d: Diagonal) -> Self {
        VertexLabel::Diagonal(d)
    }
}

impl From<ZaCoordinate> for VertexLabel {
    fn from(z: ZaCoordinate) -> Self {
        VertexLabel::Za(z)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationQuiver {
    labels: Vec<VertexLabel>,
    index: HashMap<VertexLabel, usize>,
    /// Sorted `(src, dst)` pairs; repeated pairs encode multiplicity.
    arrows: Vec<(usize, usize)>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
    tau: Vec<usize>,
    tau_inv: Vec<usize>,
}

impl TranslationQuiver {
    /// Build and validate a stable translation quiver.
    pub fn new(
        labels: Vec<VertexLabel>,
        arrows: Vec<(VertexLabel, VertexLabel)>,
        tau: Vec<(VertexLabel, VertexLabel)>,
    ) -> Result<Self, QuiverError> {
        let mut labels = labels;
        labels.sort();
        let mut index = HashMap::with_capacity(labels.len());
        for (k, l) in labels.iter().enumerate() {
            if index.insert(*l, k).is_some() {
                return Err(QuiverError::DuplicateVertex(*l));
            }
        }
        let lookup = |l: &VertexLabel| index.get(l).copied().ok_or(QuiverError::UnknownVertex(*l));

        let mut arrow_idx = Vec::with_capacity(arrows.len());
        for (s, t) in &arrows {
            arrow_idx.push((lookup(s)?, lookup(t)?));
        }
        arrow_idx.sort_unstable();

        let nv = labels.len();
        let mut tau_map = vec![usize::MAX; nv];
        for (v, tv) in &tau {
            let (v, tv) = (lookup(v)?, lookup(tv)?);
            if tau_map[v] != usize::MAX && tau_map[v] != tv {
                return Err(QuiverError::TauNotBijective);
            }
            tau_map[v] = tv;
        }
        let mut tau_inv = vec![usize::MAX; nv];
        for (v, &tv) in tau_map.iter().enumerate() {
            if tv == usize::MAX || tau_inv[tv] != usize::MAX {
                return Err(QuiverError::TauNotBijective);
            }
            tau_inv[tv] = v;
        }

        let mut out_arrows = vec![Vec::new(); nv];
        let mut in_arrows = vec![Vec::new(); nv];
        for (a, &(s, t)) in arrow_idx.iter().enumerate() {
            out_arrows[s].push(a);
            in_arrows[t].push(a);
        }

        let q = Self {
            labels,
            index,
            arrows: arrow_idx,
            out_arrows,
            in_arrows,
            tau: tau_map,
            tau_inv,
        };
        q.check_mesh_axiom()?;
        Ok(q)
    }

    fn check_mesh_axiom(&self) -> Result<(), QuiverError> {
        let mut mult: HashMap<(usize, usize), usize> = HashMap::new();
        for &a in &self.arrows {
            *mult.entry(a).or_default() += 1;
        }
        for (&(u, v), &forward) in &mult {
            let backward = mult.get(&(self.tau[v], u)).copied().unwrap_or(0);
            if forward != backward {
                return Err(QuiverError::MeshAxiom {
                    src: self.labels[u],
                    dst: self.labels[v],
                    tau_dst: self.labels[self.tau[v]],
                    forward,
                    backward,
                });
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &VertexLabel) -> Result<usize, QuiverError> {
        self.index_of(label)
            .ok_or(QuiverError::UnknownVertex(*label))
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn tau(&self, v: usize) -> usize {
        self.tau[v]
    }

    pub fn tau_inv(&self, v: usize) -> usize {
        self.tau_inv[v]
    }

    /// Indices into [`arrows`](Self::arrows) of the arrows leaving `v`.
    pub fn out_arrows(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    pub fn in_arrows(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_arrows[v].iter().map(move |&a| self.arrows[a].1)
    }

    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.in_arrows[v].iter().map(move |&a| self.arrows[a].0)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_arrows[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_arrows[v].len()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.out_arrows[u]
            .iter()
            .filter(|&&a| self.arrows[a].1 == v)
            .count()
    }

    /// Largest number of parallel arrows between two vertices.
    pub fn max_multiplicity(&self) -> usize {
        let mut best = 0;
        let mut run = 0;
        for (k, a) in self.arrows.iter().enumerate() {
            run = if k > 0 && self.arrows[k - 1] == *a {
                run + 1
            } else {
                1
            };
            best = best.max(run);
        }
        best
    }

    /// Size of the `tau`-orbit through `v`.
    pub fn tau_orbit_size(&self, v: usize) -> usize {
        let mut w = self.tau[v];
        let mut size = 1;
        while w != v {
            w = self.tau[w];
            size += 1;
        }
        size
    }

    /// The labelled arrows, in sorted order.
    pub fn labelled_arrows(&self) -> Vec<(VertexLabel, VertexLabel)> {
        self.arrows
            .iter()
            .map(|&(s, t)| (self.labels[s], self.labels[t]))
            .collect()
    }

    pub fn labelled_tau(&self) -> Vec<(VertexLabel, VertexLabel)> {
        (0..self.vertex_count())
            .map(|v| (self.labels[v], self.labels[self.tau[v]]))
            .collect()
    }

    /// Full subquiver on a vertex subset closed under arrows and `tau`.
    pub fn restrict(&self, vertices: &[usize]) -> Result<TranslationQuiver, QuiverError> {
        let mut keep = vec![false; self.vertex_count()];
        for &v in vertices {
            keep[v] = true;
        }
        let labels = vertices.iter().map(|&v| self.labels[v]).collect();
        let arrows = self
            .arrows
            .iter()
            .filter(|(s, t)| keep[*s] && keep[*t])
            .map(|&(s, t)| (self.labels[s], self.labels[t]))
            .collect();
        let tau = vertices
            .iter()
            .map(|&v| (self.labels[v], self.labels[self.tau[v]]))
            .collect();
        TranslationQuiver::new(labels, arrows, tau)
    }
}

/// The m-diagonal quiver `Γ^m_{A_{n-1}}` of the `(nm+2)`-gon.
pub fn build_gamma_m(cfg: &PolygonConfig) -> TranslationQuiver {
    let sides = cfg.sides();
    let m = cfg.m() as i64;
    let vertices = enumerate_m_diagonals(cfg);
    let mut arrows = Vec::new();
    for d in &vertices {
        let (i, j) = (d.i() as i64, d.j() as i64);
        for image in [normalize(i, j + m, sides), normalize(i + m, j, sides)] {
            if let Ok(Chord::Diagonal(t)) = image {
                arrows.push((VertexLabel::from(*d), VertexLabel::from(t)));
            }
        }
    }
    let tau = vertices
        .iter()
        .map(|d| {
            (
                VertexLabel::from(*d),
                VertexLabel::from(rotate_tau_m(d, cfg)),
            )
        })
        .collect();
    let labels = vertices.into_iter().map(VertexLabel::from).collect();
    TranslationQuiver::new(labels, arrows, tau)
        .expect("diagonal quivers are stable translation quivers")
}

/// Every directed path `start = x_0 -> ... -> x_length` with
/// `tau(x_{k+1}) != x_{k-1}` at each interior index.
pub fn sectional_paths(
    q: &TranslationQuiver,
    start: &VertexLabel,
    length: usize,
) -> Result<Vec<Vec<usize>>, QuiverError> {
    let s = q.require(start)?;
    Ok(sectional_paths_from(q, s, length))
}

pub fn sectional_paths_from(q: &TranslationQuiver, start: usize, length: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = vec![start];
    extend_sectional(q, &mut path, length, &mut out);
    out
}

fn extend_sectional(
    q: &TranslationQuiver,
    path: &mut Vec<usize>,
    length: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if path.len() == length + 1 {
        out.push(path.clone());
        return;
    }
    let last = *path.last().unwrap();
    for &a in q.out_arrows(last) {
        let next = q.arrows()[a].1;
        if path.len() >= 2 && q.tau(next) == path[path.len() - 2] {
            continue;
        }
        path.push(next);
        extend_sectional(q, path, length, out);
        path.pop();
    }
}

/// The m-th power: same vertices, one arrow per sectional path of length m,
/// translation `tau^m`.
pub fn power(q: &TranslationQuiver, m: usize) -> Result<TranslationQuiver, QuiverError> {
    if m == 0 {
        return Err(QuiverError::ZeroPower);
    }
    let mut arrows = Vec::new();
    for v in 0..q.vertex_count() {
        for path in sectional_paths_from(q, v, m) {
            arrows.push((q.label(v), q.label(*path.last().unwrap())));
        }
    }
    let tau = (0..q.vertex_count())
        .map(|v| {
            let mut w = v;
            for _ in 0..m {
                w = q.tau(w);
            }
            (q.label(v), q.label(w))
        })
        .collect();
    TranslationQuiver::new(q.labels().to_vec(), arrows, tau)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Vertex sets of the connected components, each sorted, ordered by
/// smallest label.
///
/// Components are the weakly connected pieces of the arrow graph. Vertices
/// without arrows are grouped by `tau`-orbit, so a rank-one quiver with no
/// arrows at all forms a single cycle component.
pub fn component_vertex_sets(q: &TranslationQuiver) -> Vec<Vec<usize>> {
    let nv = q.vertex_count();
    let mut parent: Vec<usize> = (0..nv).collect();
    for &(s, t) in q.arrows() {
        union(&mut parent, s, t);
    }
    for v in 0..nv {
        let w = q.tau(v);
        let has_arrows = q.out_degree(v) + q.in_degree(v) > 0;
        if has_arrows {
            assert_eq!(
                find(&mut parent, v),
                find(&mut parent, w),
                "tau does not preserve the component of {}",
                q.label(v)
            );
        } else {
            assert_eq!(
                q.out_degree(w) + q.in_degree(w),
                0,
                "tau joins an isolated vertex to arrows"
            );
            union(&mut parent, v, w);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..nv {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    // Labels are sorted, so the smallest index of each group is its smallest label.
    let mut sets: Vec<Vec<usize>> = groups.into_values().collect();
    sets.sort_by_key(|s| s[0]);
    sets
}

pub fn connected_components(q: &TranslationQuiver) -> Vec<TranslationQuiver> {
    component_vertex_sets(q)
        .iter()
        .map(|vs| {
            q.restrict(vs)
                .expect("components are closed under arrows and tau")
        })
        .collect()
}

/// Orbits of the translation, each sorted, ordered by smallest member.
pub fn tau_orbits(q: &TranslationQuiver) -> Vec<Vec<usize>> {
    let mut seen = vec![false; q.vertex_count()];
    let mut orbits = Vec::new();
    for v in 0..q.vertex_count() {
        if seen[v] {
            continue;
        }
        let mut orbit = vec![v];
        seen[v] = true;
        let mut w = q.tau(v);
        while w != v {
            seen[w] = true;
            orbit.push(w);
            w = q.tau(w);
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Presentation of `ZA_p / (τ^{-s} ∘ Σ^r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub p: u32,
    pub r: u32,
    pub s: u32,
}

impl QuotientSpec {
    pub fn new(p: u32, r: u32, s: u32) -> Result<Self, QuiverError> {
        if p == 0 || (r == 0 && s == 0) {
            return Err(QuiverError::InvalidQuotient { p, r, s });
        }
        Ok(Self { p, r, s })
    }

    /// Whether `Σ` appears to an odd power (the quotient is a Möbius band).
    pub fn odd_shift(&self) -> bool {
        self.r % 2 == 1
    }

    /// Column shift of the pure translation `φ²`.
    pub fn period(&self) -> i64 {
        let (p, r, s) = (self.p as i64, self.r as i64, self.s as i64);
        2 * s + r * (p + 1)
    }

    /// Number of vertices of the quotient.
    pub fn vertex_count(&self) -> usize {
        (self.p as i64 * self.period() / 2) as usize
    }

    /// `Σ(k, i) = (k + i, p + 1 - i)`.
    pub fn sigma(&self, z: ZaCoordinate) -> ZaCoordinate {
        ZaCoordinate {
            k: z.k + z.i as i64,
            i: self.p + 1 - z.i,
        }
    }

    /// `φ = τ^{-s} ∘ Σ^r`.
    pub fn phi(&self, z: ZaCoordinate) -> ZaCoordinate {
        let p1 = self.p as i64 + 1;
        let mut w = ZaCoordinate {
            k: z.k + self.s as i64 + (self.r / 2) as i64 * p1,
            i: z.i,
        };
        if self.odd_shift() {
            w = self.sigma(w);
        }
        w
    }
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZA_{}/(tau^-{} Sigma^{})", self.p, self.s, self.r)
    }
}

/// Arrows of `ZA_p` leaving `z`.
pub fn za_successors(p: u32, z: ZaCoordinate) -> Vec<ZaCoordinate> {
    let mut out = Vec::with_capacity(2);
    if z.i < p {
        out.push(ZaCoordinate { k: z.k, i: z.i + 1 });
    }
    if z.i > 1 {
        out.push(ZaCoordinate {
            k: z.k + 1,
            i: z.i - 1,
        });
    }
    out
}

/// Orbit representative of `z` under `φ`.
fn canonical(spec: &QuotientSpec, z: ZaCoordinate) -> ZaCoordinate {
    let period = spec.period();
    if !spec.odd_shift() {
        return ZaCoordinate {
            k: z.k.rem_euclid(period / 2),
            i: z.i,
        };
    }
    let a = ZaCoordinate {
        k: z.k.rem_euclid(period),
        i: z.i,
    };
    let b = spec.phi(a);
    let b = ZaCoordinate {
        k: b.k.rem_euclid(period),
        i: b.i,
    };
    a.min(b)
}

/// The finite translation quiver on the `φ`-orbits of `ZA_p`.
pub fn build_za_quotient(spec: &QuotientSpec) -> Result<TranslationQuiver, QuiverError> {
    let spec = QuotientSpec::new(spec.p, spec.r, spec.s)?;
    let period = spec.period();
    let mut reps = Vec::new();
    for k in 0..period {
        for i in 1..=spec.p {
            let z = ZaCoordinate { k, i };
            if spec.phi(z) == z {
                return Err(QuiverError::DegenerateQuotient);
            }
            if canonical(&spec, z) == z {
                reps.push(z);
            }
        }
    }
    let mut arrows = Vec::new();
    let mut tau = Vec::new();
    for &z in &reps {
        for w in za_successors(spec.p, z) {
            arrows.push((VertexLabel::from(z), VertexLabel::from(canonical(&spec, w))));
        }
        let tz = canonical(&spec, ZaCoordinate { k: z.k - 1, i: z.i });
        tau.push((VertexLabel::from(z), VertexLabel::from(tz)));
    }
    debug_assert_eq!(reps.len(), spec.vertex_count());
    let labels = reps.into_iter().map(VertexLabel::from).collect();
    TranslationQuiver::new(labels, arrows, tau)
}

/// Search for a bijection `Q1 -> Q2` preserving arrows with multiplicity and
/// commuting with the translation. Deterministic; `None` if there is none.
pub fn iso_translation_quivers(
    q1: &TranslationQuiver,
    q2: &TranslationQuiver,
) -> Option<Vec<usize>> {
    let nv = q1.vertex_count();
    if nv != q2.vertex_count() || q1.arrow_count() != q2.arrow_count() {
        return None;
    }
    let signature =
        |q: &TranslationQuiver, v: usize| (q.out_degree(v), q.in_degree(v), q.tau_orbit_size(v));
    let sig1: Vec<_> = (0..nv).map(|v| signature(q1, v)).collect();
    let sig2: Vec<_> = (0..nv).map(|v| signature(q2, v)).collect();
    let (mut a, mut b) = (sig1.clone(), sig2.clone());
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    if nv == 0 {
        return Some(Vec::new());
    }

    // Visit order: breadth first from each component seed, recording for each
    // later vertex how it is reached from an earlier one.
    #[derive(Clone, Copy)]
    enum Via {
        Seed,
        Out(usize),
        In(usize),
        Tau(usize),
        TauInv(usize),
    }
    let mut order: Vec<(usize, Via)> = Vec::with_capacity(nv);
    let mut placed = vec![false; nv];
    for seed in 0..nv {
        if placed[seed] {
            continue;
        }
        placed[seed] = true;
        let start = order.len();
        order.push((seed, Via::Seed));
        let mut head = start;
        while head < order.len() {
            let u = order[head].0;
            head += 1;
            let mut next: Vec<(usize, Via)> = Vec::new();
            next.extend(q1.successors(u).map(|w| (w, Via::Out(u))));
            next.extend(q1.predecessors(u).map(|w| (w, Via::In(u))));
            next.push((q1.tau(u), Via::Tau(u)));
            next.push((q1.tau_inv(u), Via::TauInv(u)));
            for (w, via) in next {
                if !placed[w] {
                    placed[w] = true;
                    order.push((w, via));
                }
            }
        }
    }

    let mut map = vec![usize::MAX; nv];
    let mut used = vec![false; nv];

    // Candidate images for position `pos`, given the current partial map.
    let candidates = |map: &[usize], pos: usize| -> Vec<usize> {
        let (_, via) = order[pos];
        let mut c: Vec<usize> = match via {
            Via::Seed => (0..nv).collect(),
            Via::Out(u) => q2.successors(map[u]).collect(),
            Via::In(u) => q2.predecessors(map[u]).collect(),
            Via::Tau(u) => vec![q2.tau(map[u])],
            Via::TauInv(u) => vec![q2.tau_inv(map[u])],
        };
        c.sort_unstable();
        c.dedup();
        c
    };

    let mut stack: Vec<(Vec<usize>, usize)> = Vec::with_capacity(nv);
    let mut pos = 0;
    stack.push((candidates(&map, 0), 0));
    loop {
        let (cands, next) = stack.last_mut().unwrap();
        let v = order[pos].0;
        let mut chosen = None;
        while *next < cands.len() {
            let img = cands[*next];
            *next += 1;
            if used[img] {
                continue;
            }
            if check(q1, q2, &sig1, &sig2, &map, &used, v, img) {
                chosen = Some(img);
                break;
            }
        }
        match chosen {
            Some(img) => {
                map[v] = img;
                used[img] = true;
                pos += 1;
                if pos == nv {
                    return Some(map);
                }
                let c = candidates(&map, pos);
                stack.push((c, 0));
            }
            None => {
                stack.pop();
                if stack.is_empty() {
                    return None;
                }
                pos -= 1;
                let v = order[pos].0;
                used[map[v]] = false;
                map[v] = usize::MAX;
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn check(
    q1: &TranslationQuiver,
    q2: &TranslationQuiver,
    sig1: &[(usize, usize, usize)],
    sig2: &[(usize, usize, usize)],
    map: &[usize],
    used: &[bool],
    v: usize,
    img: usize,
) -> bool {
    const FREE: usize = usize::MAX;
    if sig1[v] != sig2[img] {
        return false;
    }
    let (t, ti) = (q1.tau(v), q1.tau_inv(v));
    if (map[t] != FREE && map[t] != q2.tau(img)) || (map[ti] != FREE && map[ti] != q2.tau_inv(img))
    {
        return false;
    }
    // Self-loop through tau: tau(v) == v must match.
    if (t == v) != (q2.tau(img) == img) {
        return false;
    }
    for w in q1.successors(v) {
        let target = if w == v { img } else { map[w] };
        if target != FREE && q1.multiplicity(v, w) != q2.multiplicity(img, target) {
            return false;
        }
    }
    for w in q1.predecessors(v) {
        let source = if w == v { img } else { map[w] };
        if source != FREE && q1.multiplicity(w, v) != q2.multiplicity(source, img) {
            return false;
        }
    }
    // Every arrow of q2 between img and an already-used vertex needs a preimage.
    let known1 = q1.successors(v).filter(|&w| map[w] != FREE).count();
    let known2 = q2.successors(img).filter(|&w| used[w]).count();
    let back1 = q1.predecessors(v).filter(|&w| map[w] != FREE).count();
    let back2 = q2.predecessors(img).filter(|&w| used[w]).count();
    known1 == known2 && back1 == back2
}

/// Check that `map` is an isomorphism of translation quivers.
pub fn is_isomorphism(q1: &TranslationQuiver, q2: &TranslationQuiver, map: &[usize]) -> bool {
    let nv = q1.vertex_count();
    if map.len() != nv || q2.vertex_count() != nv {
        return false;
    }
    let mut hit = vec![false; nv];
    for &w in map {
        if w >= nv || hit[w] {
            return false;
        }
        hit[w] = true;
    }
    let mut a: Vec<_> = q1.arrows().iter().map(|&(s, t)| (map[s], map[t])).collect();
    a.sort_unstable();
    a == q2.arrows() && (0..nv).all(|v| map[q1.tau(v)] == q2.tau(map[v]))
}
