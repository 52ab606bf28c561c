//! Components of the m-th power of the diagonal quiver: shapes, quotient
//! presentations, u-cluster matches, and orbit bookkeeping.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polygon::{mirror, Diagonal, PolygonConfig, PolygonError};
use crate::tquiver::{
    build_gamma_m, build_za_quotient, component_vertex_sets, iso_translation_quivers, power,
    tau_orbits, QuiverError, QuotientSpec, TranslationQuiver,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("component through {0} matches no quotient presentation")]
    UnclassifiedComponent(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("verification failed:\n{}", .diff.join("\n"))]
    VerificationFailure { diff: Vec<String> },
    #[error("precondition: {0}")]
    Precondition(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeClass {
    #[serde(rename = "cylinder")]
    Cylinder,
    #[serde(rename = "moebius")]
    MoebiusBand,
    #[serde(rename = "rank-one-cycle")]
    RankOneCycle,
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeClass::Cylinder => "cylinder",
            ShapeClass::MoebiusBand => "moebius",
            ShapeClass::RankOneCycle => "rank-one-cycle",
        })
    }
}

/// Rewrite a presentation with `Σ` to the power 0 or 1, using
/// `Σ² = τ^{-(p+1)}`. On `ZA_1`, `Σ` itself is `τ^{-1}`.
pub fn canonical_spec(spec: &QuotientSpec) -> QuotientSpec {
    let QuotientSpec { p, r, s } = *spec;
    if p == 1 {
        return QuotientSpec { p, r: 0, s: s + r };
    }
    QuotientSpec {
        p,
        r: r % 2,
        s: s + (r / 2) * (p + 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub shape: ShapeClass,
    pub rank_p: u32,
    /// Certified presentation, with `Σ` exponent 0 or 1.
    pub spec: QuotientSpec,
    /// Vertex bijection component -> `build_za_quotient(spec)`.
    pub witness: Vec<usize>,
}

/// Count rows (translation orbits) and boundary rows (orbits of out-degree-1
/// vertices).
fn row_counts(q: &TranslationQuiver) -> (usize, usize) {
    let orbits = tau_orbits(q);
    let boundary = orbits
        .iter()
        .filter(|o| o.iter().all(|&v| q.out_degree(v) == 1))
        .count();
    (orbits.len(), boundary)
}

fn candidate_specs(q: &TranslationQuiver) -> Vec<QuotientSpec> {
    let v = q.vertex_count() as u32;
    if v == 0 {
        return Vec::new();
    }
    if q.arrow_count() == 0 {
        return vec![QuotientSpec { p: 1, r: 0, s: v }];
    }
    let (rows, boundary) = row_counts(q);
    let rows = rows as u32;
    let mut out = Vec::new();
    match boundary {
        2 if v.is_multiple_of(rows) => out.push(QuotientSpec {
            p: rows,
            r: 0,
            s: v / rows,
        }),
        1 => {
            for p in [2 * rows, 2 * rows - 1] {
                // |V| = p (2s + p + 1) / 2
                if p >= 2 && (2 * v).is_multiple_of(p) {
                    let twice = (2 * v / p) as i64 - p as i64 - 1;
                    if twice >= 0 && twice % 2 == 0 {
                        out.push(QuotientSpec {
                            p,
                            r: 1,
                            s: (twice / 2) as u32,
                        });
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// Shape and rank of a component, certified by an explicit isomorphism with
/// a quotient of `ZA_p`.
pub fn classify_shape(component: &TranslationQuiver) -> Result<Classification, DecompositionError> {
    for spec in candidate_specs(component) {
        let Ok(model) = build_za_quotient(&spec) else {
            continue;
        };
        if let Some(witness) = iso_translation_quivers(component, &model) {
            let shape = if spec.p == 1 {
                ShapeClass::RankOneCycle
            } else if spec.odd_shift() {
                ShapeClass::MoebiusBand
            } else {
                ShapeClass::Cylinder
            };
            if spec.p > 1 {
                let (_, boundary) = row_counts(component);
                let heuristic = if boundary == 2 {
                    ShapeClass::Cylinder
                } else {
                    ShapeClass::MoebiusBand
                };
                assert_eq!(heuristic, shape, "boundary-row count disagrees with {spec}");
            }
            return Ok(Classification {
                shape,
                rank_p: spec.p,
                spec,
                witness,
            });
        }
    }
    let first = component
        .labels()
        .first()
        .map(|l| l.to_string())
        .unwrap_or_default();
    Err(DecompositionError::UnclassifiedComponent(first))
}

/// The label used for a component of a diagonal quiver on the `sides`-gon:
/// its diagonal of smallest span, ties broken lexicographically.
pub fn component_name(q: &TranslationQuiver, sides: u32) -> Option<Diagonal> {
    q.labels()
        .iter()
        .filter_map(|l| l.diagonal())
        .min_by_key(|d| (d.span(sides), d.i(), d.j()))
}

/// The m-th power of the plain diagonal quiver on the `(nm+2)`-gon, together
/// with its component structure.
#[derive(Debug, Clone)]
pub struct PowerContext {
    cfg: PolygonConfig,
    gamma: TranslationQuiver,
    power: TranslationQuiver,
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
}

impl PowerContext {
    pub fn new(cfg: &PolygonConfig) -> Result<Self, DecompositionError> {
        let gamma = build_gamma_m(&cfg.unit());
        let power = power(&gamma, cfg.m() as usize)?;
        let components = component_vertex_sets(&power);
        let mut component_of = vec![0; power.vertex_count()];
        for (c, vs) in components.iter().enumerate() {
            for &v in vs {
                component_of[v] = c;
            }
        }
        Ok(Self {
            cfg: *cfg,
            gamma,
            power,
            components,
            component_of,
        })
    }

    pub fn cfg(&self) -> &PolygonConfig {
        &self.cfg
    }

    pub fn gamma(&self) -> &TranslationQuiver {
        &self.gamma
    }

    pub fn power(&self) -> &TranslationQuiver {
        &self.power
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_vertices(&self, c: usize) -> &[usize] {
        &self.components[c]
    }

    pub fn component(&self, c: usize) -> TranslationQuiver {
        self.power
            .restrict(&self.components[c])
            .expect("components are closed")
    }

    pub fn component_of(&self, d: &Diagonal) -> Result<usize, DecompositionError> {
        let v = self.power.require(&(*d).into())?;
        Ok(self.component_of[v])
    }

    /// Index of the component made of the m-diagonals.
    pub fn gamma_m_index(&self) -> usize {
        let d = Diagonal::new(1, self.cfg.m() as i64 + 2, self.cfg.sides()).unwrap();
        self.component_of(&d).unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub name: Diagonal,
    pub component: TranslationQuiver,
    pub size: usize,
    pub shape: ShapeClass,
    pub rank_p: u32,
    pub matched_spec: Option<QuotientSpec>,
    pub u_cluster: Option<u32>,
    pub witness_iso: Option<Vec<usize>>,
    /// Whether this is the component of m-diagonals.
    pub is_gamma_m: bool,
}

/// Build the power, split it, and classify every component.
pub fn decompose(cfg: &PolygonConfig) -> Result<Vec<ComponentReport>, DecompositionError> {
    decompose_context(&PowerContext::new(cfg)?)
}

pub fn decompose_context(ctx: &PowerContext) -> Result<Vec<ComponentReport>, DecompositionError> {
    let gm = ctx.gamma_m_index();
    let mut reports = Vec::with_capacity(ctx.component_count());
    for c in 0..ctx.component_count() {
        let component = ctx.component(c);
        let class = classify_shape(&component)?;
        let mut report = ComponentReport {
            name: component_name(&component, ctx.cfg().sides()).expect("diagonal labels"),
            size: component.vertex_count(),
            component,
            shape: class.shape,
            rank_p: class.rank_p,
            matched_spec: Some(class.spec),
            u_cluster: None,
            witness_iso: Some(class.witness),
            is_gamma_m: c == gm,
        };
        report.u_cluster = u_cluster_match(&report, ctx.cfg())?;
        reports.push(report);
    }
    Ok(reports)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedDecomposition {
    /// Presentation of the component of m-diagonals.
    pub gamma_m: QuotientSpec,
    pub entries: Vec<(QuotientSpec, usize)>,
    /// Set when a closed form would need a fractional exponent.
    pub gap: bool,
}

impl PredictedDecomposition {
    pub fn component_count(&self) -> usize {
        1 + self.entries.iter().map(|(_, k)| k).sum::<usize>()
    }

    /// All predicted presentations, the m-diagonal one first.
    pub fn expanded(&self) -> Vec<QuotientSpec> {
        let mut out = vec![self.gamma_m];
        for (spec, k) in &self.entries {
            out.extend(std::iter::repeat_n(*spec, *k));
        }
        out
    }
}

/// The closed-form decomposition.
pub fn predict(cfg: &PolygonConfig) -> PredictedDecomposition {
    let (n, m) = (cfg.n(), cfg.m());
    let gamma_m = QuotientSpec {
        p: n - 1,
        r: m,
        s: 1,
    };
    let mut entries = Vec::new();
    let mut gap = false;
    if m % 2 == 1 {
        if m > 1 {
            let s = (m - 1) * n / 2 - (m - 3) / 2;
            entries.push((QuotientSpec { p: n, r: m + 1, s }, ((m - 1) / 2) as usize));
        }
    } else {
        let cyl = QuotientSpec {
            p: n,
            r: 2,
            s: n * (m - 2) / 2,
        };
        let mut k = 2 * (m / 2 - 1) as usize;
        if (m / 2) % 2 == 0 {
            k += 1;
        }
        if k > 0 {
            entries.push((cyl, k));
        }
        if (m / 2) % 2 == 1 {
            if (n * (m - 2)) % 4 == 0 {
                let moebius = QuotientSpec {
                    p: n,
                    r: 1,
                    s: n * (m - 2) / 4,
                };
                entries.push((moebius, 2));
            } else {
                gap = true;
            }
        }
    }
    PredictedDecomposition {
        gamma_m,
        entries,
        gap,
    }
}

/// `1 + (m-1)/2` for odd m; `m` or `m+1` for even m by the parity of m/2.
pub fn expected_component_count(m: u32) -> usize {
    if m % 2 == 1 {
        1 + (m as usize - 1) / 2
    } else if (m / 2).is_multiple_of(2) {
        m as usize
    } else {
        m as usize + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMatch {
    pub name: Diagonal,
    pub size: usize,
    pub shape: ShapeClass,
    pub spec: QuotientSpec,
    pub u_cluster: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: u32,
    pub m: u32,
    pub sides: u32,
    pub components: usize,
    pub predicted: usize,
    pub matches: Vec<ComponentMatch>,
}

/// Match the computed components against [`predict`] by certified
/// isomorphism, and check the component-count law.
pub fn verify_decomposition(cfg: &PolygonConfig) -> Result<VerificationReport, DecompositionError> {
    let ctx = PowerContext::new(cfg)?;
    let reports = decompose_context(&ctx)?;
    verify_against(cfg, &reports, &predict(cfg))
}

/// Like [`verify_decomposition`] against an arbitrary prediction.
pub fn verify_against(
    cfg: &PolygonConfig,
    reports: &[ComponentReport],
    predicted: &PredictedDecomposition,
) -> Result<VerificationReport, DecompositionError> {
    let mut diff = Vec::new();
    let law = expected_component_count(cfg.m());
    if reports.len() != law {
        diff.push(format!("components: {} (law {})", reports.len(), law));
    }
    if predicted.component_count() != reports.len() {
        diff.push(format!(
            "components: {} (predicted {})",
            reports.len(),
            predicted.component_count()
        ));
    }

    let mut models: HashMap<QuotientSpec, Option<TranslationQuiver>> = HashMap::new();
    let mut model = |spec: QuotientSpec| -> Option<TranslationQuiver> {
        models
            .entry(spec)
            .or_insert_with(|| build_za_quotient(&spec).ok())
            .clone()
    };

    let expanded = predicted.expanded();
    let mut used = vec![false; expanded.len()];
    let mut matches = Vec::new();
    for rep in reports {
        let slot = if rep.is_gamma_m {
            let ok = model(expanded[0])
                .map(|q| iso_translation_quivers(&rep.component, &q).is_some())
                .unwrap_or(false);
            ok.then_some(0)
        } else {
            (1..expanded.len()).find(|&k| {
                !used[k]
                    && model(expanded[k])
                        .map(|q| iso_translation_quivers(&rep.component, &q).is_some())
                        .unwrap_or(false)
            })
        };
        match slot {
            Some(k) if !used[k] => {
                used[k] = true;
                matches.push(ComponentMatch {
                    name: rep.name,
                    size: rep.size,
                    shape: rep.shape,
                    spec: expanded[k],
                    u_cluster: rep.u_cluster,
                });
            }
            _ => diff.push(format!(
                "- computed {} (size {}, {}, {}) has no predicted partner",
                rep.name,
                rep.size,
                rep.shape,
                rep.matched_spec.map(|s| s.to_string()).unwrap_or_default()
            )),
        }
    }
    for (k, spec) in expanded.iter().enumerate() {
        if !used[k] {
            diff.push(format!("+ predicted {spec} has no computed partner"));
        }
    }
    if predicted.gap {
        diff.push("prediction needs a fractional exponent".into());
    }

    if diff.is_empty() {
        Ok(VerificationReport {
            n: cfg.n(),
            m: cfg.m(),
            sides: cfg.sides(),
            components: reports.len(),
            predicted: predicted.component_count(),
            matches,
        })
    } else {
        Err(DecompositionError::VerificationFailure { diff })
    }
}

/// The u for which a non-m-diagonal component should be the u-diagonal
/// quiver of type `A_n`, certified by isomorphism with the quiver built on
/// the `((n+1)u + 2)`-gon.
pub fn u_cluster_match(
    report: &ComponentReport,
    cfg: &PolygonConfig,
) -> Result<Option<u32>, DecompositionError> {
    if report.is_gamma_m {
        return Ok(None);
    }
    let (n, m) = (cfg.n(), cfg.m());
    let u = if m % 2 == 1 {
        // The components here are cylinders, so only even u can match; odd u
        // (e.g. n = 3, m = 3, u = 5) gives a Möbius band of the same size.
        let num = 2 * (n * m + 1);
        (num % (n + 1) == 0 && (num / (n + 1)) % 2 == 0).then(|| num / (n + 1))
    } else {
        match report.shape {
            ShapeClass::Cylinder => {
                let num = n * m;
                (num % (n + 1) == 0 && (num / (n + 1)) % 2 == 0).then(|| num / (n + 1))
            }
            ShapeClass::MoebiusBand => {
                let num = n * m - 2;
                let den = 2 * (n + 1);
                (num % den == 0 && (num / den) % 2 == 1).then(|| num / den)
            }
            ShapeClass::RankOneCycle => None,
        }
    };
    let Some(u) = u.filter(|&u| u >= 1) else {
        return Ok(None);
    };
    let target = build_gamma_m(&PolygonConfig::new(n + 1, u)?);
    if iso_translation_quivers(&report.component, &target).is_some() {
        Ok(Some(u))
    } else {
        Err(DecompositionError::TheoremViolation(format!(
            "component {} of (n={n}, m={m}) is not the {u}-diagonal quiver of the {}-gon",
            report.name,
            (n + 1) * u + 2
        )))
    }
}

/// How many components the translation orbit of `d` is expected to meet.
pub fn predicted_orbit_component_count(cfg: &PolygonConfig, d: &Diagonal) -> usize {
    let m = cfg.m();
    let span = d.span(cfg.sides());
    if m % 2 == 1 || span % m == 1 % m {
        1
    } else if span.is_multiple_of(2) {
        2
    } else if m > 2 && span % m == m / 2 + 1 {
        1
    } else {
        2
    }
}

/// Number of components meeting the translation orbit of `d`, checked
/// against [`predicted_orbit_component_count`].
pub fn orbit_component_count(
    ctx: &PowerContext,
    d: &Diagonal,
) -> Result<usize, DecompositionError> {
    let gamma = ctx.gamma();
    let start = gamma.require(&(*d).into())?;
    let mut hit: Vec<usize> = Vec::new();
    let mut v = start;
    loop {
        let c = ctx.component_of(&gamma.label(v).diagonal().unwrap())?;
        if !hit.contains(&c) {
            hit.push(c);
        }
        v = gamma.tau(v);
        if v == start {
            break;
        }
    }
    let predicted = predicted_orbit_component_count(ctx.cfg(), d);
    if hit.len() != predicted {
        return Err(DecompositionError::TheoremViolation(format!(
            "orbit of {d} meets {} components, predicted {predicted}",
            hit.len()
        )));
    }
    Ok(hit.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorCheck {
    /// `m | 2(j - 2)`.
    pub criterion: bool,
    /// Whether `(1,j)` and its mirror lie in one component.
    pub same_component: bool,
}

/// Divisibility criterion for `(1,j)` and its mirror `(1, N+2-j)` to share a
/// component, next to the directly computed answer.
///
/// The two are required to agree when `j - 1` is odd or `m = 2`; for even
/// `j - 1` and larger m the mirror pair always shares a component and the
/// criterion is reported as is.
pub fn mirror_criterion(
    ctx: &PowerContext,
    d: &Diagonal,
) -> Result<MirrorCheck, DecompositionError> {
    let cfg = ctx.cfg();
    let m = cfg.m();
    if m % 2 == 1 {
        return Err(DecompositionError::Precondition(format!("m = {m} is odd")));
    }
    if d.i() != 1 {
        return Err(DecompositionError::Precondition(format!(
            "{d} is not anchored at 1"
        )));
    }
    let j = d.j() as i64;
    let criterion = (2 * (j - 2)).rem_euclid(m as i64) == 0;
    let image = mirror(d, 1, cfg.sides())?;
    let same_component = ctx.component_of(d)? == ctx.component_of(&image)?;
    let binding = (j - 1) % 2 == 1 || m == 2;
    if binding && criterion != same_component {
        return Err(DecompositionError::TheoremViolation(format!(
            "{d} and {image}: criterion {criterion}, computed {same_component}"
        )));
    }
    Ok(MirrorCheck {
        criterion,
        same_component,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: u32, m: u32) -> PolygonConfig {
        PolygonConfig::new(n, m).unwrap()
    }

    fn d(i: i64, j: i64, sides: u32) -> Diagonal {
        Diagonal::new(i, j, sides).unwrap()
    }

    #[test]
    fn decagon_reports() {
        let reports = decompose(&cfg(4, 2)).unwrap();
        assert_eq!(reports.len(), 3);
        let shapes: Vec<_> = reports
            .iter()
            .map(|r| (r.name, r.shape, r.rank_p))
            .collect();
        assert_eq!(
            shapes,
            vec![
                (d(1, 3, 10), ShapeClass::MoebiusBand, 4),
                (d(1, 4, 10), ShapeClass::Cylinder, 3),
                (d(2, 4, 10), ShapeClass::MoebiusBand, 4),
            ]
        );
        assert!(reports[1].is_gamma_m);
        assert!(reports.iter().all(|r| r.u_cluster.is_none()));
    }

    #[test]
    fn rank_one_cycle() {
        let reports = decompose(&cfg(2, 6)).unwrap();
        assert_eq!(reports.len(), 7);
        let gm: Vec<_> = reports.iter().filter(|r| r.is_gamma_m).collect();
        assert_eq!(gm.len(), 1);
        assert_eq!(gm[0].shape, ShapeClass::RankOneCycle);
        assert_eq!(gm[0].rank_p, 1);
        let u: Vec<_> = reports.iter().filter_map(|r| r.u_cluster).collect();
        assert_eq!(u, vec![4, 4, 4, 4]);
    }

    #[test]
    fn predictions() {
        let p = predict(&cfg(3, 5));
        assert_eq!(p.entries, vec![(QuotientSpec { p: 3, r: 6, s: 5 }, 2)]);
        let p = predict(&cfg(2, 6));
        assert_eq!(
            p.entries,
            vec![
                (QuotientSpec { p: 2, r: 2, s: 4 }, 4),
                (QuotientSpec { p: 2, r: 1, s: 2 }, 2)
            ]
        );
        let p = predict(&cfg(4, 2));
        assert_eq!(p.entries, vec![(QuotientSpec { p: 4, r: 1, s: 0 }, 2)]);
        assert_eq!(p.gamma_m, QuotientSpec { p: 3, r: 2, s: 1 });
        assert_eq!(predict(&cfg(5, 1)).component_count(), 1);
    }

    #[test]
    fn predicted_sizes_match_vertex_total() {
        for n in 2..7 {
            for m in 1..10 {
                let c = cfg(n, m);
                let p = predict(&c);
                assert!(!p.gap);
                assert_eq!(p.component_count(), expected_component_count(m));
                let total: usize = p.expanded().iter().map(|s| s.vertex_count()).sum();
                let sides = c.sides() as usize;
                assert_eq!(total, sides * (sides - 3) / 2, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn verification_passes_on_examples() {
        for (n, m) in [(4, 2), (2, 6), (5, 3), (3, 4)] {
            let r = verify_decomposition(&cfg(n, m)).unwrap();
            assert_eq!(r.components, r.predicted);
        }
    }

    #[test]
    fn corrupted_prediction_fails_with_diff() {
        let c = cfg(4, 2);
        let reports = decompose(&c).unwrap();
        let mut p = predict(&c);
        p.entries[0].0.s = 1;
        match verify_against(&c, &reports, &p) {
            Err(DecompositionError::VerificationFailure { diff }) => {
                assert!(diff.iter().any(|l| l.starts_with("+ predicted")));
                assert!(diff.iter().any(|l| l.starts_with("- computed")));
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn u_cluster_examples() {
        let reports = decompose(&cfg(3, 5)).unwrap();
        let sizes: Vec<_> = reports.iter().map(|r| (r.size, r.u_cluster)).collect();
        assert!(sizes.contains(&(17, None)));
        assert_eq!(sizes.iter().filter(|x| **x == (51, Some(8))).count(), 2);
    }

    #[test]
    fn odd_u_is_not_a_match() {
        // 2(nm+1)/(n+1) = 5 is an integer, but the quiver it names is a band.
        let reports = decompose(&cfg(3, 3)).unwrap();
        let other = reports.iter().find(|r| !r.is_gamma_m).unwrap();
        assert_eq!(other.shape, ShapeClass::Cylinder);
        assert_eq!(other.u_cluster, None);
        let target = build_gamma_m(&cfg(4, 5));
        assert_eq!(target.vertex_count(), other.size);
        assert!(iso_translation_quivers(&other.component, &target).is_none());
        assert_eq!(
            classify_shape(&target).unwrap().shape,
            ShapeClass::MoebiusBand
        );
    }

    #[test]
    fn orbit_counts() {
        let ctx = PowerContext::new(&cfg(4, 2)).unwrap();
        assert_eq!(orbit_component_count(&ctx, &d(1, 3, 10)).unwrap(), 2);
        assert_eq!(orbit_component_count(&ctx, &d(1, 4, 10)).unwrap(), 1);
        let ctx = PowerContext::new(&cfg(3, 5)).unwrap();
        for x in crate::polygon::enumerate_diagonals(17) {
            assert_eq!(orbit_component_count(&ctx, &x).unwrap(), 1);
        }
    }

    #[test]
    fn mirror_examples() {
        let ctx = PowerContext::new(&cfg(2, 6)).unwrap();
        assert!(mirror_criterion(&ctx, &d(1, 5, 14)).unwrap().criterion);
        assert!(!mirror_criterion(&ctx, &d(1, 3, 14)).unwrap().criterion);
        let ctx = PowerContext::new(&cfg(4, 2)).unwrap();
        let check = mirror_criterion(&ctx, &d(1, 3, 10)).unwrap();
        assert!(check.criterion && check.same_component);
        assert!(mirror_criterion(&ctx, &d(2, 4, 10)).is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(
            canonical_spec(&QuotientSpec { p: 3, r: 6, s: 5 }),
            QuotientSpec { p: 3, r: 0, s: 17 }
        );
        assert_eq!(
            canonical_spec(&QuotientSpec { p: 1, r: 6, s: 1 }),
            QuotientSpec { p: 1, r: 0, s: 7 }
        );
    }
}
