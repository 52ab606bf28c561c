//! Exact integer model of the N-gon: diagonals, m-diagonals, crossings,
//! rotations, mirrors and parity classes.
//!
//! Vertices are the residues `1..=N`. Every reduction lands in that window,
//! so `0` is written as `N` and `-1` as `N - 1`. Nothing here touches
//! floating point; the rotation angle of the translation is kept as the
//! pair `(m, N)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("rank parameter n must be at least 2, got {0}")]
    RankTooSmall(u32),
    #[error("cluster parameter m must be at least 1, got {0}")]
    ClusterTooSmall(u32),
    #[error("chord endpoints {a} and {b} coincide modulo {sides}")]
    InvalidChord { a: i64, b: i64, sides: u32 },
    #[error("vertex {anchor} is not an endpoint of {diagonal}")]
    BadAnchor { diagonal: Diagonal, anchor: u32 },
}

/// The ambient polygon: rank `n`, cluster parameter `m`, and `N = n*m + 2` sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolygonConfig {
    n: u32,
    m: u32,
}

impl PolygonConfig {
    pub fn new(n: u32, m: u32) -> Result<Self, PolygonError> {
        if n < 2 {
            return Err(PolygonError::RankTooSmall(n));
        }
        if m < 1 {
            return Err(PolygonError::ClusterTooSmall(m));
        }
        Ok(Self { n, m })
    }

    /// The m = 1 polygon with the given number of sides (at least 4).
    pub fn with_sides(sides: u32) -> Result<Self, PolygonError> {
        Self::new(sides.saturating_sub(2), 1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of sides, `N = n*m + 2`.
    pub fn sides(&self) -> u32 {
        self.n * self.m + 2
    }

    /// The rotation angle of `τ_m` as `(m, N)`, meaning `2·m·π / N`.
    pub fn rotation_step(&self) -> (u32, u32) {
        (self.m, self.sides())
    }

    /// The polygon carrying the plain (m = 1) diagonal quiver whose m-th power
    /// contains this configuration's m-diagonal quiver.
    pub fn unit(&self) -> PolygonConfig {
        PolygonConfig {
            n: self.n * self.m,
            m: 1,
        }
    }
}

/// Reduce an integer into the vertex window `1..=sides`.
pub fn reduce(x: i64, sides: u32) -> u32 {
    let s = sides as i64;
    let r = x.rem_euclid(s);
    if r == 0 {
        sides
    } else {
        r as u32
    }
}

/// A normalized diagonal `(i, j)` with `1 <= i < j <= N`, never a boundary edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagonal {
    i: u32,
    j: u32,
}

impl Diagonal {
    /// Build a diagonal from arbitrary integer endpoints, rejecting edges.
    pub fn new(a: i64, b: i64, sides: u32) -> Result<Diagonal, PolygonError> {
        match normalize(a, b, sides)? {
            Chord::Diagonal(d) => Ok(d),
            Chord::Edge => Err(PolygonError::InvalidChord { a, b, sides }),
        }
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn endpoints(&self) -> (u32, u32) {
        (self.i, self.j)
    }

    /// `j - i`, the length of the arc running clockwise from `i` to `j`.
    pub fn arc(&self) -> u32 {
        self.j - self.i
    }

    /// Length of the shorter of the two arcs cut by the diagonal.
    pub fn span(&self, sides: u32) -> u32 {
        self.arc().min(sides - self.arc())
    }

    pub fn has_endpoint(&self, v: u32) -> bool {
        self.i == v || self.j == v
    }

    /// Rotate both endpoints by `-step`.
    pub fn rotate(&self, step: i64, sides: u32) -> Diagonal {
        match normalize(self.i as i64 - step, self.j as i64 - step, sides) {
            Ok(Chord::Diagonal(d)) => d,
            _ => unreachable!("rotation preserves diagonals"),
        }
    }

    /// Short id used in documents, e.g. `"3-10"`.
    pub fn id(&self) -> String {
        format!("{}-{}", self.i, self.j)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Result of normalizing a chord: a diagonal, or a boundary edge which
/// downstream code treats as the zero object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chord {
    Diagonal(Diagonal),
    Edge,
}

impl Chord {
    pub fn diagonal(self) -> Option<Diagonal> {
        match self {
            Chord::Diagonal(d) => Some(d),
            Chord::Edge => None,
        }
    }
}

pub fn normalize(a: i64, b: i64, sides: u32) -> Result<Chord, PolygonError> {
    let (x, y) = (reduce(a, sides), reduce(b, sides));
    if x == y {
        return Err(PolygonError::InvalidChord { a, b, sides });
    }
    let (i, j) = if x < y { (x, y) } else { (y, x) };
    if j - i == 1 || j - i == sides - 1 {
        return Ok(Chord::Edge);
    }
    Ok(Chord::Diagonal(Diagonal { i, j }))
}

/// Both parts cut by `d` have side count congruent to 2 modulo m.
pub fn is_m_diagonal(d: &Diagonal, cfg: &PolygonConfig) -> bool {
    // The part on the arc i..j has j - i + 1 sides.
    (d.arc() + 1) % cfg.m() == 2 % cfg.m()
}

/// Strict crossing: exactly one endpoint of `d2` lies strictly inside the
/// open arc `(d1.i, d1.j)`. Shared endpoints never cross.
pub fn crosses(d1: &Diagonal, d2: &Diagonal) -> bool {
    if d1.has_endpoint(d2.i) || d1.has_endpoint(d2.j) {
        return false;
    }
    let inside = |v: u32| d1.i < v && v < d1.j;
    inside(d2.i) != inside(d2.j)
}

/// `τ_m`: `(i, j) ↦ (i - m, j - m)`.
pub fn rotate_tau_m(d: &Diagonal, cfg: &PolygonConfig) -> Diagonal {
    d.rotate(cfg.m() as i64, cfg.sides())
}

/// Reflect the free endpoint of `d` about the central line through `anchor`.
pub fn mirror(d: &Diagonal, anchor: u32, sides: u32) -> Result<Diagonal, PolygonError> {
    let free = if d.i == anchor {
        d.j
    } else if d.j == anchor {
        d.i
    } else {
        return Err(PolygonError::BadAnchor {
            diagonal: *d,
            anchor,
        });
    };
    let image = 2 * anchor as i64 + sides as i64 - free as i64;
    Diagonal::new(anchor as i64, image, sides)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParityClass {
    EvenEven,
    OddOdd,
    Mixed,
}

pub fn parity_class(d: &Diagonal) -> ParityClass {
    match (d.i % 2, d.j % 2) {
        (0, 0) => ParityClass::EvenEven,
        (1, 1) => ParityClass::OddOdd,
        _ => ParityClass::Mixed,
    }
}

/// All diagonals of the polygon in lexicographic order.
pub fn enumerate_diagonals(sides: u32) -> Vec<Diagonal> {
    let mut out = Vec::new();
    for i in 1..=sides {
        for j in (i + 2)..=sides {
            if i == 1 && j == sides {
                continue;
            }
            out.push(Diagonal { i, j });
        }
    }
    out
}

pub fn enumerate_m_diagonals(cfg: &PolygonConfig) -> Vec<Diagonal> {
    enumerate_diagonals(cfg.sides())
        .into_iter()
        .filter(|d| is_m_diagonal(d, cfg))
        .collect()
}
