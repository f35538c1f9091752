//! Randomized and exhaustive property suites.
//!
//! Each suite re-derives its inputs from (seed, case index), checks one
//! family of laws, and re-validates every space it touches against the
//! metric axioms; the validation tallies feed the global axiom-preservation
//! check alongside the law checks themselves.

use std::collections::BTreeSet;
use std::time::Instant;

use metricglue_core::diagram::colimit;
use metricglue_core::gluing::{
    dii_by_index, multiple_pushout, precdx_by_index, quotient, quotient_oracle, within_by_index,
};
use metricglue_core::hom::{
    curry, enumerate_contractions, internal_hom, uncurry, HomError, DEFAULT_BUDGET,
};
use metricglue_core::morphism::PointMap;
use metricglue_core::pathconvex::{
    convex_completion, eps_path_metric, midpoint_defect, missing_segment_pairs,
};
use metricglue_core::space::{check_metric_axioms, tensor, SemiMetricSpace};
use metricglue_core::{ExtDist, MetricSpace, DEFAULT_TOL};
use serde::Serialize;

use crate::gen;

/// Tolerance the law checks are asserted at.
pub const CHECK_TOL: f64 = 1e-9;

const FAILURE_CAP: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    /// `None` for exhaustive (deterministic) suites.
    pub seed: Option<u64>,
    pub cases: usize,
    pub checks: usize,
    pub spaces_validated: usize,
    pub validation_failures: usize,
    pub failures_total: usize,
    /// First few failure descriptions; `failures_total` is authoritative.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures_total == 0
    }
}

struct Tally {
    name: &'static str,
    seed: Option<u64>,
    started: Instant,
    checks: usize,
    spaces_validated: usize,
    validation_failures: usize,
    failures_total: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new(name: &'static str, seed: Option<u64>) -> Tally {
        Tally {
            name,
            seed,
            started: Instant::now(),
            checks: 0,
            spaces_validated: 0,
            validation_failures: 0,
            failures_total: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures_total += 1;
        if self.failures.len() < FAILURE_CAP {
            self.failures.push(msg);
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(msg());
        }
    }

    /// Metric-axiom re-validation of a produced space (`semi` permits
    /// distinct points at distance zero, for pre-merge quotient output).
    fn validate(&mut self, space: &SemiMetricSpace, semi: bool, case: usize, what: &str) {
        self.spaces_validated += 1;
        self.checks += 1;
        if let Err(e) = check_metric_axioms(space, CHECK_TOL, !semi) {
            self.validation_failures += 1;
            self.fail(format!("case {case}: {what} violates the axioms: {e}"));
        }
    }

    fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    fn finish(mut self, cases: usize) -> SuiteReport {
        self.notes
            .push(format!("{} spaces re-validated", self.spaces_validated));
        SuiteReport {
            name: self.name,
            seed: self.seed,
            cases,
            checks: self.checks,
            spaces_validated: self.spaces_validated,
            validation_failures: self.validation_failures,
            failures_total: self.failures_total,
            failures: self.failures,
            notes: self.notes,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

/// Glued class distances against the independent chain-programming oracle:
/// 200 repaired dyadic spaces (≤ 8 points, `∞` admitted) under random
/// partitions; the pre-merge semi-metric must match the oracle entrywise.
pub fn suite_quotient_oracle(seed: u64) -> SuiteReport {
    const CASES: usize = 200;
    let mut t = Tally::new("quotient-oracle", Some(seed));
    for case in 0..CASES as u64 {
        let mut rng = gen::case_rng(seed, case);
        let x = gen::random_space(&mut rng, 8, true);
        let case = case as usize;
        t.validate(x.as_semi(), false, case, "generated space");
        let rel = gen::random_partition(&mut rng, x.len());
        let q = match quotient(x.as_semi(), &rel, DEFAULT_TOL) {
            Ok(q) => q,
            Err(e) => {
                t.fail(format!("case {case}: quotient failed: {e}"));
                continue;
            }
        };
        let oracle = match quotient_oracle(x.as_semi(), &rel) {
            Ok(o) => o,
            Err(e) => {
                t.fail(format!("case {case}: oracle failed: {e}"));
                continue;
            }
        };
        t.validate(&q.premerge, true, case, "pre-merge semi-metric");
        t.validate(&oracle, true, case, "oracle semi-metric");
        t.validate(q.space.as_semi(), false, case, "quotient space");
        t.check(q.premerge.points() == oracle.points(), || {
            format!("case {case}: class labels disagree with the oracle")
        });
        if q.premerge.points() != oracle.points() {
            continue;
        }
        for i in 0..oracle.len() {
            for j in i..oracle.len() {
                let a = q.premerge.dist(i, j);
                let b = oracle.dist(i, j);
                t.check(a.approx_eq(b, CHECK_TOL), || {
                    format!(
                        "case {case}: classes ({}, {}): quotient {a} vs oracle {b}",
                        oracle.point(i),
                        oracle.point(j)
                    )
                });
            }
        }
    }
    t.finish(CASES)
}

const GLUE_CASES: usize = 100;
const EXPANSIVITY_LEVELS: [f64; 3] = [0.3, 0.5, 1.0];

/// The shared corpus for the gluing suites: case `i` uses expansivity
/// level `i mod 3`, so both suites see identical diagrams for a seed.
fn glue_case(seed: u64, case: u64) -> (f64, metricglue_core::gluing::GlueDiagram) {
    let c = EXPANSIVITY_LEVELS[case as usize % EXPANSIVITY_LEVELS.len()];
    let mut rng = gen::case_rng(seed, case);
    (c, gen::random_glue_diagram(&mut rng, c))
}

/// Every canonical map into a glued space is c-expansive when all arms
/// scale by factors in [c, 1]; at c = 1 the canonical maps are isometries.
pub fn suite_glue_expansivity(seed: u64) -> SuiteReport {
    let mut t = Tally::new("glue-expansivity", Some(seed));
    for case in 0..GLUE_CASES as u64 {
        let (c, d) = glue_case(seed, case);
        let case = case as usize;
        t.validate(d.hub().as_semi(), false, case, "hub");
        for arm in d.arms() {
            t.validate(arm.target(), false, case, "arm target");
        }
        let push = match multiple_pushout(&d, DEFAULT_TOL) {
            Ok(p) => p,
            Err(e) => {
                t.fail(format!("case {case}: gluing failed: {e}"));
                continue;
            }
        };
        t.validate(push.space.as_semi(), false, case, "glued space");
        for (i, iota) in push.arm_maps.iter().enumerate() {
            let e = iota.expansivity_constant();
            t.check(e.is_infinite() || e.as_f64() >= c - CHECK_TOL, || {
                format!("case {case}: arm {i} expansivity {e} below level {c}")
            });
            if c >= 1.0 {
                t.check(iota.is_isometry(CHECK_TOL), || {
                    format!("case {case}: arm {i} is not isometric at level 1")
                });
            }
        }
    }
    t.finish(GLUE_CASES)
}

/// Glued distances against the closed forms, on the same corpus as the
/// expansivity suite: hub-image pairs against the arm minimum, same-arm
/// pairs against the direct/through-hub minimum, cross-arm pairs against
/// the hub-transit formula — every applicable pair.
pub fn suite_pushout_formulas(seed: u64) -> SuiteReport {
    let mut t = Tally::new("pushout-formulas", Some(seed));
    for case in 0..GLUE_CASES as u64 {
        let (_, d) = glue_case(seed, case);
        let case = case as usize;
        let push = match multiple_pushout(&d, DEFAULT_TOL) {
            Ok(p) => p,
            Err(e) => {
                t.fail(format!("case {case}: gluing failed: {e}"));
                continue;
            }
        };
        t.validate(push.space.as_semi(), false, case, "glued space");
        let hub_n = d.hub().len();
        for y in 0..hub_n {
            for y2 in y..hub_n {
                let expected = precdx_by_index(&d, y, y2);
                let got = push
                    .space
                    .dist(push.hub_map.apply_index(y), push.hub_map.apply_index(y2));
                t.check(got.approx_eq(expected, CHECK_TOL), || {
                    format!("case {case}: hub pair ({y}, {y2}): glued {got} vs formula {expected}")
                });
            }
        }
        let arms = d.arms();
        for i in 0..arms.len() {
            let ni = arms[i].target().len();
            for x in 0..ni {
                for x2 in x..ni {
                    let expected = within_by_index(&d, i, x, x2);
                    let got = push.space.dist(
                        push.arm_maps[i].apply_index(x),
                        push.arm_maps[i].apply_index(x2),
                    );
                    t.check(got.approx_eq(expected, CHECK_TOL), || {
                        format!(
                            "case {case}: arm {i} pair ({x}, {x2}): glued {got} vs formula {expected}"
                        )
                    });
                }
                for i2 in (i + 1)..arms.len() {
                    for x2 in 0..arms[i2].target().len() {
                        let expected = dii_by_index(&d, i, x, i2, x2);
                        let got = push.space.dist(
                            push.arm_maps[i].apply_index(x),
                            push.arm_maps[i2].apply_index(x2),
                        );
                        t.check(got.approx_eq(expected, CHECK_TOL), || {
                            format!(
                                "case {case}: arms ({i}, {i2}) pair ({x}, {x2}): glued {got} vs formula {expected}"
                            )
                        });
                    }
                }
            }
        }
    }
    t.finish(GLUE_CASES)
}

/// Star-shaped diagram colimits against the gluing route: the two
/// constructions must agree under the canonical class correspondence.
pub fn suite_star_colimit(seed: u64) -> SuiteReport {
    const CASES: usize = 50;
    let mut t = Tally::new("star-colimit", Some(seed));
    for case in 0..CASES as u64 {
        let mut rng = gen::case_rng(seed, case);
        let (sd, gd) = gen::random_star(&mut rng);
        let case = case as usize;
        for space in sd.spaces() {
            t.validate(space.as_semi(), false, case, "vertex space");
        }
        let col = match colimit(&sd, DEFAULT_TOL) {
            Ok(c) => c,
            Err(e) => {
                t.fail(format!("case {case}: colimit failed: {e}"));
                continue;
            }
        };
        let push = match multiple_pushout(&gd, DEFAULT_TOL) {
            Ok(p) => p,
            Err(e) => {
                t.fail(format!("case {case}: gluing failed: {e}"));
                continue;
            }
        };
        t.validate(col.space.as_semi(), false, case, "colimit space");
        t.validate(push.space.as_semi(), false, case, "glued space");

        // The correspondence pairs each class through the canonical maps:
        // hub points via vertex 0 / the hub composite, arm points via
        // vertex i+1 / arm i.
        let mut corr: Vec<(usize, usize)> = Vec::new();
        for h in 0..sd.spaces()[0].len() {
            corr.push((
                col.vertex_maps[0].apply_index(h),
                push.hub_map.apply_index(h),
            ));
        }
        for (a, arm_map) in push.arm_maps.iter().enumerate() {
            for p in 0..arm_map.source().len() {
                corr.push((
                    col.vertex_maps[a + 1].apply_index(p),
                    arm_map.apply_index(p),
                ));
            }
        }
        let n = col.space.len();
        let mut to_push = vec![usize::MAX; n];
        let mut consistent = true;
        for &(c, p) in &corr {
            if to_push[c] == usize::MAX {
                to_push[c] = p;
            } else if to_push[c] != p {
                consistent = false;
            }
        }
        let total = to_push.iter().all(|&p| p != usize::MAX);
        let mut hit = vec![false; push.space.len()];
        let mut injective = true;
        for &p in &to_push {
            if p != usize::MAX {
                if hit[p] {
                    injective = false;
                }
                hit[p] = true;
            }
        }
        let bijective = consistent && total && injective && col.space.len() == push.space.len();
        t.check(bijective, || {
            format!("case {case}: canonical class correspondence is not a bijection")
        });
        if !bijective {
            continue;
        }
        for c1 in 0..n {
            for c2 in c1..n {
                let a = col.space.dist(c1, c2);
                let b = push.space.dist(to_push[c1], to_push[c2]);
                t.check(a.approx_eq(b, CHECK_TOL), || {
                    format!("case {case}: classes ({c1}, {c2}): colimit {a} vs glued {b}")
                });
            }
        }
    }
    t.finish(CASES)
}

/// The outcome of checking one currying instance; shared by the exhaustive
/// suite and the `curry-check` subcommand.
pub struct AdjunctionOutcome {
    pub from_tensor: usize,
    pub to_hom: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl AdjunctionOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn sup_dist(a: &PointMap, b: &PointMap) -> ExtDist {
    let target = a.target();
    (0..a.source().len())
        .map(|i| target.dist(a.apply_index(i), b.apply_index(i)))
        .fold(ExtDist::ZERO, ExtDist::max)
}

/// Checks the full currying correspondence between maps out of the tensor
/// and maps into the hom space: equal counts, bijection, two-sided inverse,
/// and exact preservation of the sup distance (both sides maximize the
/// same multiset of codomain distances, so no tolerance is needed).
pub fn adjunction_case(
    z: &MetricSpace,
    x: &MetricSpace,
    y: &MetricSpace,
    tol: f64,
    budget: u64,
) -> Result<AdjunctionOutcome, HomError> {
    let t_zx = tensor(z, x).map_err(HomError::from)?;
    let hom_xy = internal_hom(x, y, tol, budget)?;
    let from_tensor = enumerate_contractions(&t_zx, y, tol, budget)?;
    let to_hom = enumerate_contractions(z, hom_xy.base(), tol, budget)?;

    let mut checks = 0;
    let mut failures = Vec::new();
    let mut check = |ok: bool, msg: &mut dyn FnMut() -> String| {
        checks += 1;
        if !ok {
            failures.push(msg());
        }
    };

    check(from_tensor.len() == to_hom.len(), &mut || {
        format!(
            "map counts differ: {} out of the tensor, {} into the hom",
            from_tensor.len(),
            to_hom.len()
        )
    });

    let mut curried = Vec::with_capacity(from_tensor.len());
    for (k, f) in from_tensor.iter().enumerate() {
        match curry(z, &hom_xy, f, tol) {
            Ok(g) => {
                match uncurry(z, &hom_xy, &g, tol) {
                    Ok(back) => check(back.indices() == f.indices(), &mut || {
                        format!("uncurry(curry(f)) != f for tensor map {k}")
                    }),
                    Err(e) => check(false, &mut || format!("uncurry failed on map {k}: {e}")),
                }
                curried.push(g);
            }
            Err(e) => check(false, &mut || {
                format!("curry failed on tensor map {k}: {e}")
            }),
        }
    }
    let image: BTreeSet<&[usize]> = curried.iter().map(|g| g.indices()).collect();
    check(image.len() == curried.len(), &mut || {
        "curry is not injective".to_string()
    });
    check(
        to_hom.iter().all(|g| image.contains(g.indices())),
        &mut || "curry is not surjective onto the hom maps".to_string(),
    );
    for (k, g) in to_hom.iter().enumerate() {
        match uncurry(z, &hom_xy, g, tol) {
            Ok(f) => match curry(z, &hom_xy, &f, tol) {
                Ok(g2) => check(g2.indices() == g.indices(), &mut || {
                    format!("curry(uncurry(g)) != g for hom map {k}")
                }),
                Err(e) => check(false, &mut || {
                    format!("re-curry failed on hom map {k}: {e}")
                }),
            },
            Err(e) => check(false, &mut || format!("uncurry failed on hom map {k}: {e}")),
        }
    }
    // Sup-distance preservation, exact.
    for a in 0..curried.len() {
        for b in (a + 1)..curried.len() {
            let left = sup_dist(&from_tensor[a], &from_tensor[b]);
            let right = sup_dist(&curried[a], &curried[b]);
            check(left == right, &mut || {
                format!("sup distance moves under curry: maps ({a}, {b}): {left} vs {right}")
            });
        }
    }
    Ok(AdjunctionOutcome {
        from_tensor: from_tensor.len(),
        to_hom: to_hom.len(),
        checks,
        failures,
    })
}

/// The currying correspondence, exhaustively: every repaired space over
/// {0.5, 1, ∞} with ≤ 3 points in the two hom slots and ≤ 2 points in the
/// tensor slot.
pub fn suite_adjunction() -> SuiteReport {
    let mut t = Tally::new("adjunction", None);
    let menu = [
        ExtDist::new(0.5).expect("finite"),
        ExtDist::new(1.0).expect("finite"),
        ExtDist::INF,
    ];
    let xs = gen::exhaustive_spaces(3, &menu);
    let zs = gen::exhaustive_spaces(2, &menu);
    for (i, s) in xs.iter().enumerate() {
        t.validate(s.as_semi(), false, i, "swept space");
    }
    for (i, s) in zs.iter().enumerate() {
        t.validate(s.as_semi(), false, i, "swept tensor-slot space");
    }
    let mut cases = 0usize;
    for z in &zs {
        for x in &xs {
            for y in &xs {
                let case = cases;
                cases += 1;
                match adjunction_case(z, x, y, DEFAULT_TOL, DEFAULT_BUDGET) {
                    Ok(out) => {
                        t.checks += out.checks;
                        for f in out.failures {
                            t.fail(format!("case {case}: {f}"));
                        }
                    }
                    Err(e) => t.fail(format!("case {case}: construction failed: {e}")),
                }
            }
        }
    }
    t.note(format!(
        "{} spaces in the hom slots, {} in the tensor slot",
        xs.len(),
        zs.len()
    ));
    t.finish(cases)
}

const EPS_LEVELS: [f64; 3] = [0.25, 1.0, 4.0];

/// Laws of the chain path metric: dominance over the input, exact
/// idempotence, antitone dependence on the chain bound, and functoriality
/// along contractions.
pub fn suite_path_metric(seed: u64) -> SuiteReport {
    const SPACE_CASES: usize = 100;
    const MAP_CASES: usize = 100;
    // Contraction cases draw from a disjoint stream block.
    const MAP_STREAM: u64 = 1 << 32;
    let mut t = Tally::new("path-metric", Some(seed));
    for case in 0..SPACE_CASES as u64 {
        let mut rng = gen::case_rng(seed, case);
        let x = gen::random_space(&mut rng, 8, true);
        let case = case as usize;
        t.validate(x.as_semi(), false, case, "generated space");
        let mut paths = Vec::new();
        for &eps in &EPS_LEVELS {
            let pe = match eps_path_metric(&x, eps, DEFAULT_TOL) {
                Ok(p) => p,
                Err(e) => {
                    t.fail(format!("case {case}: path metric at {eps} failed: {e}"));
                    continue;
                }
            };
            t.validate(pe.as_semi(), false, case, "path metric space");
            let dominated =
                (0..x.len()).all(|i| (0..x.len()).all(|j| pe.dist(i, j) >= x.dist(i, j)));
            t.check(dominated, || {
                format!("case {case}: chain bound {eps}: path metric dips below the input")
            });
            match eps_path_metric(&pe, eps, DEFAULT_TOL) {
                Ok(again) => t.check(again.as_semi() == pe.as_semi(), || {
                    format!("case {case}: chain bound {eps}: second application moved the metric")
                }),
                Err(e) => t.fail(format!("case {case}: second application failed: {e}")),
            }
            paths.push(pe);
        }
        for (k, w) in paths.windows(2).enumerate() {
            let antitone =
                (0..x.len()).all(|i| (0..x.len()).all(|j| w[0].dist(i, j) >= w[1].dist(i, j)));
            t.check(antitone, || {
                format!(
                    "case {case}: path metric grows from bound {} to {}",
                    EPS_LEVELS[k],
                    EPS_LEVELS[k + 1]
                )
            });
        }
    }
    for case in 0..MAP_CASES as u64 {
        let mut rng = gen::case_rng(seed, MAP_STREAM + case);
        let cc = gen::random_contraction(&mut rng);
        let case = case as usize;
        t.check(cc.map.is_contraction(CHECK_TOL), || {
            format!("case {case}: corpus map is not a contraction")
        });
        for &eps in &EPS_LEVELS {
            let px = match eps_path_metric(&cc.source, eps, DEFAULT_TOL) {
                Ok(p) => p,
                Err(e) => {
                    t.fail(format!("case {case}: source path metric failed: {e}"));
                    continue;
                }
            };
            let py = match eps_path_metric(&cc.target, eps, DEFAULT_TOL) {
                Ok(p) => p,
                Err(e) => {
                    t.fail(format!("case {case}: target path metric failed: {e}"));
                    continue;
                }
            };
            t.validate(px.as_semi(), false, case, "source path metric");
            t.validate(py.as_semi(), false, case, "target path metric");
            match PointMap::new(px.semi_arc(), py.semi_arc(), cc.map.indices().to_vec()) {
                Ok(lifted) => t.check(lifted.is_contraction(CHECK_TOL), || {
                    format!("case {case}: chain bound {eps}: the lifted map expands")
                }),
                Err(e) => t.fail(format!("case {case}: lift failed: {e}")),
            }
        }
    }
    t.finish(SPACE_CASES + MAP_CASES)
}

/// Convex completion at grid step 0.1: the embedding is isometric and the
/// completed space's midpoint defect falls under the step.
pub fn suite_convexify(seed: u64) -> SuiteReport {
    const CASES: usize = 30;
    const STEP: f64 = 0.1;
    let mut t = Tally::new("convexify", Some(seed));
    let mut observed_max: f64 = 0.0;
    for case in 0..CASES as u64 {
        let mut rng = gen::case_rng(seed, case);
        // All-finite draws: every defective pair admits a segment.
        let x = gen::random_space(&mut rng, 6, false);
        let case = case as usize;
        t.validate(x.as_semi(), false, case, "generated space");
        let s = missing_segment_pairs(&x, DEFAULT_TOL);
        let done = match convex_completion(&x, &s, STEP, DEFAULT_TOL) {
            Ok(d) => d,
            Err(e) => {
                t.fail(format!("case {case}: completion failed: {e}"));
                continue;
            }
        };
        t.validate(done.space.as_semi(), false, case, "completed space");
        t.check(done.embedding.is_isometry(CHECK_TOL), || {
            format!("case {case}: the canonical embedding distorts distances")
        });
        let report = midpoint_defect(&done.space);
        t.check(report.max_defect <= STEP + CHECK_TOL, || {
            format!(
                "case {case}: max midpoint defect {} exceeds the step {STEP}",
                report.max_defect
            )
        });
        observed_max = observed_max.max(report.max_defect);
    }
    t.note(format!(
        "observed max midpoint defect {observed_max:.6} (bound {STEP}, expected near {})",
        STEP / 2.0
    ));
    t.finish(CASES)
}

pub const SUITE_NAMES: [&str; 7] = [
    "quotient-oracle",
    "glue-expansivity",
    "pushout-formulas",
    "star-colimit",
    "adjunction",
    "path-metric",
    "convexify",
];

pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    match name {
        "quotient-oracle" => Some(suite_quotient_oracle(seed)),
        "glue-expansivity" => Some(suite_glue_expansivity(seed)),
        "pushout-formulas" => Some(suite_pushout_formulas(seed)),
        "star-colimit" => Some(suite_star_colimit(seed)),
        "adjunction" => Some(suite_adjunction()),
        "path-metric" => Some(suite_path_metric(seed)),
        "convexify" => Some(suite_convexify(seed)),
        _ => None,
    }
}

pub fn all_suites(seed: u64) -> Vec<SuiteReport> {
    SUITE_NAMES
        .iter()
        .map(|n| run_suite(n, seed).expect("listed name"))
        .collect()
}
