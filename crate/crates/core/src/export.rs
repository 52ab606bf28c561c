//! Serializable documents for quivers and decompositions, plus Graphviz DOT
//! output and a reader for the DOT subset we emit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{ComponentReport, ShapeClass};
use crate::polygon::{Diagonal, PolygonConfig};
use crate::tquiver::{component_vertex_sets, QuotientSpec, TranslationQuiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub n: u32,
    pub m: u32,
    #[serde(rename = "N")]
    pub sides: u32,
}

impl From<&PolygonConfig> for ConfigDoc {
    fn from(cfg: &PolygonConfig) -> Self {
        Self {
            n: cfg.n(),
            m: cfg.m(),
            sides: cfg.sides(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: String,
    pub diagonal: [u32; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub name: String,
    pub size: usize,
    pub shape: ShapeClass,
    pub rank_p: u32,
    pub spec: Option<QuotientSpec>,
    pub u_cluster: Option<u32>,
    pub gamma_m: bool,
}

impl From<&ComponentReport> for ComponentDoc {
    fn from(r: &ComponentReport) -> Self {
        Self {
            name: r.name.id(),
            size: r.size,
            shape: r.shape,
            rank_p: r.rank_p,
            spec: r.matched_spec,
            u_cluster: r.u_cluster,
            gamma_m: r.is_gamma_m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDocument {
    pub config: ConfigDoc,
    pub vertices: Vec<VertexDoc>,
    pub arrows: Vec<[String; 2]>,
    pub tau: Vec<[String; 2]>,
    /// Vertex ids of each connected component.
    pub components: Vec<Vec<String>>,
    pub reports: Vec<ComponentDoc>,
}

fn id_of(q: &TranslationQuiver, v: usize) -> String {
    q.label(v).id()
}

/// Document for a diagonal quiver; `components` lists its pieces.
pub fn quiver_document(cfg: &PolygonConfig, q: &TranslationQuiver) -> QuiverDocument {
    let vertices = q
        .labels()
        .iter()
        .filter_map(|l| l.diagonal())
        .map(|d| VertexDoc {
            id: d.id(),
            diagonal: [d.i(), d.j()],
        })
        .collect();
    let arrows = q
        .arrows()
        .iter()
        .map(|&(s, t)| [id_of(q, s), id_of(q, t)])
        .collect();
    let tau = (0..q.vertex_count())
        .map(|v| [id_of(q, v), id_of(q, q.tau(v))])
        .collect();
    let components = component_vertex_sets(q)
        .into_iter()
        .map(|vs| vs.into_iter().map(|v| id_of(q, v)).collect())
        .collect();
    QuiverDocument {
        config: cfg.into(),
        vertices,
        arrows,
        tau,
        components,
        reports: Vec::new(),
    }
}

/// Graphviz rendering, one `rank=same` group per i-column.
pub fn to_dot(doc: &QuiverDocument) -> String {
    let c = doc.config;
    let mut out = String::new();
    let _ = writeln!(out, "digraph quiver {{");
    let _ = writeln!(
        out,
        "  graph [n={}, m={}, N={}, rankdir=LR];",
        c.n, c.m, c.sides
    );
    let _ = writeln!(out, "  node [shape=plaintext];");
    let mut columns: BTreeMap<u32, Vec<&VertexDoc>> = BTreeMap::new();
    for v in &doc.vertices {
        columns.entry(v.diagonal[0]).or_default().push(v);
    }
    for (i, vs) in &columns {
        let _ = write!(out, "  subgraph col{i} {{ rank=same;");
        for v in vs {
            let _ = write!(out, " \"{}\";", v.id);
        }
        let _ = writeln!(out, " }}");
    }
    for v in &doc.vertices {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"({},{})\"];",
            v.id, v.diagonal[0], v.diagonal[1]
        );
    }
    for [s, t] in &doc.arrows {
        let _ = writeln!(out, "  \"{s}\" -> \"{t}\";");
    }
    for [s, t] in &doc.tau {
        let _ = writeln!(
            out,
            "  \"{s}\" -> \"{t}\" [kind=tau, style=dashed, constraint=false];"
        );
    }
    let _ = writeln!(out, "}}");
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DotError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing graph attributes")]
    MissingConfig,
}

fn quoted(s: &str) -> Option<(&str, &str)> {
    let s = s.trim_start();
    let rest = s.strip_prefix('"')?;
    let end = rest.find('"')?;
    Some((&rest[..end], &rest[end + 1..]))
}

fn parse_id(id: &str) -> Option<[u32; 2]> {
    let (a, b) = id.split_once('-')?;
    Some([a.parse().ok()?, b.parse().ok()?])
}

/// Read back a document written by [`to_dot`]. Components and reports are
/// not part of the DOT form and come back empty.
pub fn from_dot(text: &str) -> Result<QuiverDocument, DotError> {
    let mut config = None;
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    let mut tau = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let err = |msg: &str| DotError::Syntax {
            line: k + 1,
            msg: msg.to_string(),
        };
        let line = raw.trim();
        if let Some(attrs) = line.strip_prefix("graph [") {
            let mut vals = BTreeMap::new();
            for kv in attrs.trim_end_matches("];").split(',') {
                if let Some((key, val)) = kv.trim().split_once('=') {
                    vals.insert(key.trim(), val.trim());
                }
            }
            let get = |key: &str| -> Result<u32, DotError> {
                vals.get(key)
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| err(&format!("bad attribute {key}")))
            };
            config = Some(ConfigDoc {
                n: get("n")?,
                m: get("m")?,
                sides: get("N")?,
            });
            continue;
        }
        let Some((first, rest)) = quoted(line) else {
            continue;
        };
        let rest = rest.trim_start();
        if let Some(after) = rest.strip_prefix("->") {
            let (second, attrs) = quoted(after).ok_or_else(|| err("edge without target"))?;
            let pair = [first.to_string(), second.to_string()];
            if attrs.contains("kind=tau") {
                tau.push(pair);
            } else {
                arrows.push(pair);
            }
        } else if rest.starts_with("[label") {
            let diagonal = parse_id(first).ok_or_else(|| err("vertex id is not i-j"))?;
            vertices.push(VertexDoc {
                id: first.to_string(),
                diagonal,
            });
        }
    }
    Ok(QuiverDocument {
        config: config.ok_or(DotError::MissingConfig)?,
        vertices,
        arrows,
        tau,
        components: Vec::new(),
        reports: Vec::new(),
    })
}

/// Parse `"i-j"` back into a diagonal of the given polygon.
pub fn diagonal_from_id(id: &str, sides: u32) -> Option<Diagonal> {
    let [i, j] = parse_id(id)?;
    Diagonal::new(i as i64, j as i64, sides).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tquiver::build_gamma_m;

    #[test]
    fn dot_round_trip() {
        for (n, m) in [(4, 2), (8, 1), (2, 6), (3, 5)] {
            let cfg = PolygonConfig::new(n, m).unwrap();
            let doc = quiver_document(&cfg, &build_gamma_m(&cfg));
            let back = from_dot(&to_dot(&doc)).unwrap();
            assert_eq!(back.config, doc.config);
            assert_eq!(back.vertices, doc.vertices);
            assert_eq!(back.arrows, doc.arrows);
            assert_eq!(back.tau, doc.tau);
        }
    }

    #[test]
    fn dot_groups_columns() {
        let cfg = PolygonConfig::new(4, 2).unwrap();
        let dot = to_dot(&quiver_document(&cfg, &build_gamma_m(&cfg)));
        assert!(dot.contains("subgraph col1 { rank=same; \"1-4\"; \"1-6\"; \"1-8\"; }"));
        assert_eq!(dot.matches("[label=").count(), 15);
    }

    #[test]
    fn malformed_dot() {
        assert_eq!(from_dot("digraph {}"), Err(DotError::MissingConfig));
        assert!(from_dot("graph [n=x, m=1, N=3];").is_err());
        assert!(diagonal_from_id("3-10", 10).is_some());
        assert!(diagonal_from_id("3_10", 10).is_none());
    }
}
