//! The bundled self-checking scenario corpus.
//!
//! Each scenario builds a concrete configuration out of the library's own
//! constructors, computes its invariants twice — once by running the
//! machinery, once from the closed-form derivation spelled out at each
//! expectation — and reports the comparison. Every space built along the
//! way is re-validated against the metric axioms.

use metricglue_core::diagram::{colimit, SpaceDiagram};
use metricglue_core::gluing::{multiple_pushout, GlueDiagram};
use metricglue_core::graph::OrientedGraph;
use metricglue_core::morphism::PointMap;
use metricglue_core::space::{
    check_metric_axioms, coproduct, discrete_space, discretize_segment, two_point, DistMatrix,
    Segment, SemiMetricSpace,
};
use metricglue_core::{ExtDist, MetricSpace, PointId};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario '{0}'; bundled: {names}", names = SCENARIO_NAMES.join(", "))]
    Unknown(String),
    #[error("{0}")]
    BadParam(String),
    #[error("scenario construction failed: {0}")]
    Build(String),
}

fn build<E: std::fmt::Display>(e: E) -> ScenarioError {
    ScenarioError::Build(e.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct Expectation {
    pub name: String,
    pub passed: bool,
    /// The derivation and the observed value, side by side.
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub name: &'static str,
    pub params: String,
    pub expectations: Vec<Expectation>,
    pub spaces_validated: usize,
    pub validation_failures: usize,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.validation_failures == 0 && self.expectations.iter().all(|e| e.passed)
    }
}

/// Parameters across all scenarios; each one reads the fields it uses.
#[derive(Clone, Debug)]
pub struct ScenarioParams {
    /// `splice`: number of junctions (intervals run 2^0 down to 2^-levels).
    pub levels: usize,
    /// `nstr`: the interval excesses, appended one at a time.
    pub eps: Vec<f64>,
    /// `nstr`: segment grid step.
    pub step: f64,
    /// `hyperbola-orbit`: columns beyond the first (classes 0..=columns).
    pub columns: usize,
}

impl Default for ScenarioParams {
    fn default() -> Self {
        ScenarioParams {
            levels: 5,
            eps: vec![0.5, 0.25, 0.125],
            step: 0.0625,
            columns: 6,
        }
    }
}

pub const SCENARIO_NAMES: [&str; 3] = ["nstr", "splice", "hyperbola-orbit"];

pub fn run_scenario(
    name: &str,
    params: &ScenarioParams,
    tol: f64,
) -> Result<ScenarioReport, ScenarioError> {
    match name {
        "nstr" => nstr(params, tol),
        "splice" => splice(params, tol),
        "hyperbola-orbit" => hyperbola_orbit(params, tol),
        other => Err(ScenarioError::Unknown(other.to_owned())),
    }
}

struct Validation {
    validated: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Validation {
    fn new() -> Validation {
        Validation {
            validated: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, space: &SemiMetricSpace, what: &str) {
        self.validated += 1;
        if let Err(e) = check_metric_axioms(space, 1e-9, true) {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(format!("{what}: {e}"));
            }
        }
    }

    fn expectation(&self) -> Expectation {
        Expectation {
            name: "all produced spaces satisfy the metric axioms".into(),
            passed: self.failures == 0,
            detail: match &self.first_failure {
                None => format!("{} spaces re-validated", self.validated),
                Some(f) => format!(
                    "{} of {} spaces failed; first: {f}",
                    self.failures, self.validated
                ),
            },
        }
    }
}

/// Intervals of length 1 + ε glued to each other at both endpoints, one
/// interval per ε. The two junction points end up exactly 1 + min ε apart:
/// every strand realizes its own length between the junctions and strands
/// meet only there, so no mixed route can undercut the shortest strand.
/// Appending further ε levels can only shrink the distance.
fn nstr(params: &ScenarioParams, tol: f64) -> Result<ScenarioReport, ScenarioError> {
    let eps = &params.eps;
    if eps.is_empty() {
        return Err(ScenarioError::BadParam("at least one eps level".into()));
    }
    if let Some(&bad) = eps.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
        return Err(ScenarioError::BadParam(format!(
            "eps levels must be finite and positive, got {bad}"
        )));
    }
    if !(params.step.is_finite() && params.step > 0.0) {
        return Err(ScenarioError::BadParam(format!(
            "grid step must be finite and positive, got {}",
            params.step
        )));
    }

    let mut v = Validation::new();
    let hub = two_point(ExtDist::INF).map_err(build)?;
    v.check(hub.as_semi(), "junction pair");
    let mut expectations = Vec::new();
    let mut prev: Option<f64> = None;
    for take in 1..=eps.len() {
        let mut arms = Vec::with_capacity(take);
        for &e in &eps[..take] {
            let seg = discretize_segment(1.0 + e, params.step).map_err(build)?;
            v.check(seg.space.as_semi(), "interval grid");
            let si = seg.space.index_of(&seg.start).expect("endpoint exists");
            let ei = seg.space.index_of(&seg.end).expect("endpoint exists");
            arms.push(
                PointMap::new(hub.semi_arc(), seg.space.semi_arc(), vec![si, ei]).map_err(build)?,
            );
        }
        let glue = GlueDiagram::new(hub.clone(), arms).map_err(build)?;
        let push = multiple_pushout(&glue, tol).map_err(build)?;
        v.check(push.space.as_semi(), "glued strands");
        let got = push
            .space
            .dist(push.hub_map.apply_index(0), push.hub_map.apply_index(1));
        let min_eps = eps[..take].iter().copied().fold(f64::INFINITY, f64::min);
        let expect = 1.0 + min_eps;
        expectations.push(Expectation {
            name: format!("junction distance with {take} level(s)"),
            passed: got.approx_eq(ExtDist::new(expect).map_err(build)?, tol),
            detail: format!("1 + min eps = {expect}; glued space gives {got}"),
        });
        if let Some(p) = prev {
            expectations.push(Expectation {
                name: format!("appending level {take} does not increase the distance"),
                passed: got.is_finite() && got.as_f64() <= p + tol,
                detail: format!("was {p}, now {got}"),
            });
        }
        prev = got.is_finite().then(|| got.as_f64());
    }
    expectations.push(v.expectation());
    Ok(ScenarioReport {
        name: "nstr",
        params: format!(
            "eps = {}, step = {}",
            eps.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
            params.step
        ),
        expectations,
        spaces_validated: v.validated,
        validation_failures: v.failures,
    })
}

/// Intervals of lengths 2^0, 2^-1, ..., 2^-M spliced end to end: the even
/// intervals form one side, the odd intervals the other, and a discrete
/// hub of M junction points identifies each right endpoint with the next
/// interval's left endpoint. The result is a single chain of total length
/// Σ_{k=0}^{M} 2^-k = 2 − 2^-M, which is both the end-to-end distance and
/// the diameter.
fn splice(params: &ScenarioParams, tol: f64) -> Result<ScenarioReport, ScenarioError> {
    let m = params.levels;
    if m == 0 {
        return Err(ScenarioError::BadParam(
            "at least one junction level".into(),
        ));
    }
    if m > 40 {
        return Err(ScenarioError::BadParam(format!(
            "{m} levels would dip below floating-point resolution"
        )));
    }

    let mut v = Validation::new();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for k in 0..=m {
        let len = 2f64.powi(-(k as i32));
        // Eight subdivisions per interval keep every grid dyadic.
        let seg = discretize_segment(len, len / 8.0).map_err(build)?;
        v.check(seg.space.as_semi(), "interval grid");
        if k % 2 == 0 {
            even.push(seg);
        } else {
            odd.push(seg);
        }
    }
    let side1 =
        coproduct(&even.iter().map(|s| s.space.clone()).collect::<Vec<_>>()).map_err(build)?;
    let side2 =
        coproduct(&odd.iter().map(|s| s.space.clone()).collect::<Vec<_>>()).map_err(build)?;
    v.check(side1.space.as_semi(), "even side");
    v.check(side2.space.as_semi(), "odd side");

    let end_index = |seg: &Segment, inj: &PointMap, start: bool| -> usize {
        let label = if start { &seg.start } else { &seg.end };
        inj.apply_index(seg.space.index_of(label).expect("endpoint exists"))
    };

    // Junction i identifies the right end of interval i with the left end
    // of interval i + 1; interval k sits at position k / 2 of its side.
    let mut j1 = Vec::with_capacity(m);
    let mut j2 = Vec::with_capacity(m);
    for i in 0..m {
        if i % 2 == 0 {
            j1.push(end_index(&even[i / 2], &side1.injections[i / 2], false));
            j2.push(end_index(
                &odd[(i + 1) / 2],
                &side2.injections[(i + 1) / 2],
                true,
            ));
        } else {
            j1.push(end_index(
                &even[(i + 1) / 2],
                &side1.injections[(i + 1) / 2],
                true,
            ));
            j2.push(end_index(&odd[i / 2], &side2.injections[i / 2], false));
        }
    }
    let hub = discrete_space(m);
    v.check(hub.as_semi(), "junction points");
    let arm1 = PointMap::new(hub.semi_arc(), side1.space.semi_arc(), j1).map_err(build)?;
    let arm2 = PointMap::new(hub.semi_arc(), side2.space.semi_arc(), j2).map_err(build)?;
    let glue = GlueDiagram::new(hub, vec![arm1, arm2]).map_err(build)?;
    let push = multiple_pushout(&glue, tol).map_err(build)?;
    v.check(push.space.as_semi(), "spliced chain");

    let left = push.arm_maps[0].apply_index(end_index(&even[0], &side1.injections[0], true));
    let right = if m % 2 == 0 {
        push.arm_maps[0].apply_index(end_index(&even[m / 2], &side1.injections[m / 2], false))
    } else {
        push.arm_maps[1].apply_index(end_index(&odd[m / 2], &side2.injections[m / 2], false))
    };
    let got = push.space.dist(left, right);
    let expect = 2.0 - 2f64.powi(-(m as i32));
    let expect_dist = ExtDist::new(expect).map_err(build)?;

    let mut expectations = vec![Expectation {
        name: "end-to-end distance".into(),
        passed: got.approx_eq(expect_dist, tol),
        detail: format!("sum 2^0 + ... + 2^-{m} = 2 - 2^-{m} = {expect}; glued space gives {got}"),
    }];
    let diameter = push.space.max_finite_dist();
    let all_finite = (0..push.space.len())
        .all(|i| (0..push.space.len()).all(|j| push.space.dist(i, j).is_finite()));
    expectations.push(Expectation {
        name: "diameter".into(),
        passed: all_finite && diameter.is_some_and(|d| d.approx_eq(expect_dist, tol)),
        detail: format!(
            "a single chain: diameter = end-to-end = {expect}; glued space gives {}",
            diameter.map_or("none".to_string(), |d| d.to_string())
        ),
    });
    expectations.push(v.expectation());
    Ok(ScenarioReport {
        name: "splice",
        params: format!("levels = {m}"),
        expectations,
        spaces_validated: v.validated,
        validation_failures: v.failures,
    })
}

/// A grid sample of the region above the unit hyperbola (x·y ≥ 1, columns
/// at x = 2^-n) with the self-map that shifts each column up one row and
/// fixes the shared top row. All columns stop at the same height, so the
/// shift never increases a vertical gap and the map is a contraction. The
/// colimit of the single-vertex loop diagram collapses each column to one
/// orbit class; consecutive classes sit within 2^-n of each other — the
/// horizontal gap, reached at any shared height.
fn hyperbola_orbit(params: &ScenarioParams, tol: f64) -> Result<ScenarioReport, ScenarioError> {
    let cols = params.columns;
    if cols == 0 {
        return Err(ScenarioError::BadParam("at least one column".into()));
    }
    if cols > 6 {
        return Err(ScenarioError::BadParam(format!(
            "{cols} columns would need {} sample points; the sampling budget stops at 6",
            (cols + 1) * (1 << (cols + 1))
        )));
    }

    let mut v = Validation::new();
    let top = 1i64 << (cols + 1);
    let mut labels = Vec::new();
    let mut coords = Vec::new();
    let mut col_start = Vec::new();
    for n in 0..=cols {
        col_start.push(coords.len());
        let base = 1i64 << n;
        for k in 0..=(top - base) {
            labels.push(PointId::new(format!("c{n}r{k}")).map_err(build)?);
            coords.push((2f64.powi(-(n as i32)), (base + k) as f64));
        }
    }
    let total = coords.len();
    let mut dist = DistMatrix::zeros(total);
    for i in 0..total {
        for j in (i + 1)..total {
            let dx = coords[i].0 - coords[j].0;
            let dy = coords[i].1 - coords[j].1;
            let d = ExtDist::new((dx * dx + dy * dy).sqrt()).map_err(build)?;
            dist.set_sym(i, j, d);
        }
    }
    let space = MetricSpace::new(labels, dist, tol).map_err(build)?;
    v.check(space.as_semi(), "hyperbola sample");

    let mut shift = vec![0usize; total];
    for n in 0..=cols {
        let kmax = (top - (1i64 << n)) as usize;
        for k in 0..=kmax {
            shift[col_start[n] + k] = col_start[n] + (k + 1).min(kmax);
        }
    }
    let phi = PointMap::new(space.semi_arc(), space.semi_arc(), shift).map_err(build)?;
    let graph = OrientedGraph::new(
        vec!["v".into()],
        vec![("shift".into(), "v".into(), "v".into())],
    )
    .map_err(build)?;
    // The diagram constructor verifies that the shift is a contraction.
    let diagram = SpaceDiagram::new(graph, vec![space], vec![phi], tol).map_err(build)?;
    let col = colimit(&diagram, tol).map_err(build)?;
    v.check(col.space.as_semi(), "orbit space");

    let mut expectations = vec![Expectation {
        name: "one orbit class per column".into(),
        passed: col.space.len() == cols + 1,
        detail: format!(
            "{} columns; orbit space has {} classes",
            cols + 1,
            col.space.len()
        ),
    }];
    for n in 1..=cols {
        let a = col.vertex_maps[0].apply_index(col_start[n - 1]);
        let b = col.vertex_maps[0].apply_index(col_start[n]);
        let got = col.space.dist(a, b);
        let bound = 2f64.powi(-(n as i32));
        expectations.push(Expectation {
            name: format!("orbit distance {} to {n}", n - 1),
            passed: got.is_finite() && got.as_f64() <= bound + tol,
            detail: format!("horizontal gap 2^-{n} = {bound} bounds the sample; observed {got}"),
        });
    }
    expectations.push(v.expectation());
    Ok(ScenarioReport {
        name: "hyperbola-orbit",
        params: format!("columns = {cols}, top = {top}"),
        expectations,
        spaces_validated: v.validated,
        validation_failures: v.failures,
    })
}
