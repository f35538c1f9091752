//! Seeded random inputs for the property suites.
//!
//! Each suite derives one RNG per case from (suite seed, case index), so
//! any failure reproduces from those two numbers alone.

use metricglue_core::diagram::SpaceDiagram;
use metricglue_core::gluing::{quotient, EquivRelation, GlueDiagram};
use metricglue_core::graph::OrientedGraph;
use metricglue_core::morphism::PointMap;
use metricglue_core::space::{components, metric_repair, DistMatrix};
use metricglue_core::{ExtDist, MetricSpace, PointId, DEFAULT_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 8675309;

/// One independent stream per case.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(case.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// The dyadic distance menu draws come from; the repair pass below closes
/// any symmetric draw into a metric without ever dropping below the
/// smallest entry.
const MENU: [f64; 4] = [0.25, 0.5, 1.0, 2.0];

fn labels(prefix: &str, n: usize) -> Vec<PointId> {
    (0..n)
        .map(|i| PointId::new(format!("{prefix}{i}")).expect("nonempty label"))
        .collect()
}

/// A random space with 1..=`max_n` points and distances from the dyadic
/// menu (plus `∞` in one draw out of five when allowed), closed under
/// shortest paths.
pub fn random_space(rng: &mut ChaCha8Rng, max_n: usize, allow_inf: bool) -> MetricSpace {
    let n = rng.random_range(1..=max_n);
    let mut dist = DistMatrix::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = if allow_inf && rng.random_range(0..5u8) == 0 {
                ExtDist::INF
            } else {
                ExtDist::new(MENU[rng.random_range(0..MENU.len())]).expect("menu entry")
            };
            dist.set_sym(i, j, d);
        }
    }
    metric_repair(labels("p", n), dist, DEFAULT_TOL).expect("repaired draw is a metric")
}

/// A uniformly colored partition: each point gets one of a random number
/// of colors; empty colors simply do not form blocks.
pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> EquivRelation {
    let colors = rng.random_range(1..=n);
    let mut first_of: Vec<Option<usize>> = vec![None; colors];
    let mut pairs = Vec::new();
    for i in 0..n {
        let c = rng.random_range(0..colors);
        match first_of[c] {
            Some(anchor) => pairs.push((anchor, i)),
            None => first_of[c] = Some(i),
        }
    }
    EquivRelation::from_index_pairs(n, &pairs).expect("indices in range")
}

/// A copy of `hub` with every distance scaled by `factor` ∈ (0, 1], plus
/// up to three decorative extra points. Extras either stay at `∞` from
/// everything or attach to one finite component at distances in [D/2, D]
/// (D the copy's largest finite distance), so the closing repair can never
/// shorten a copy distance: any chain through an extra costs ≥ 2·D/2 = D.
fn scaled_arm(rng: &mut ChaCha8Rng, hub: &MetricSpace, factor: f64) -> MetricSpace {
    let n = hub.len();
    let extras = rng.random_range(0..=3);
    let mut points = labels("p", n);
    points.extend(labels("q", extras));
    let mut dist = DistMatrix::filled(n + extras, ExtDist::INF);
    for i in 0..(n + extras) {
        dist.set(i, i, ExtDist::ZERO);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let d = hub.dist(i, j).scale(factor).expect("positive factor");
            dist.set_sym(i, j, d);
        }
    }
    if let Some(dmax_hub) = hub.max_finite_dist() {
        // Finiteness is scale-invariant, so the hub's components are the
        // copy's components.
        let comps = components(hub);
        let dmax = dmax_hub.as_f64() * factor;
        for e in 0..extras {
            if rng.random_bool(0.5) {
                continue; // stays isolated
            }
            let block = &comps.blocks[rng.random_range(0..comps.blocks.len())];
            for p in block {
                let i = hub.index_of(p).expect("component point");
                let d = ExtDist::new(rng.random_range(dmax / 2.0..=dmax)).expect("positive");
                dist.set_sym(n + e, i, d);
            }
        }
    }
    metric_repair(points, dist, DEFAULT_TOL).expect("attachments keep the copy metric intact")
}

/// A hub with 2–4 arms, each a λ-scaled copy of the hub for λ ∈ [c, 1]
/// (λ = 1 exactly when c = 1), arm maps sending hub point `i` to copy
/// point `i`. Every arm map is a contraction and every canonical map into
/// the glued space is c-expansive.
pub fn random_glue_diagram(rng: &mut ChaCha8Rng, c: f64) -> GlueDiagram {
    let hub = random_space(rng, 4, true);
    let arm_count = rng.random_range(2..=4);
    let arms = (0..arm_count)
        .map(|_| {
            let factor = if c >= 1.0 {
                1.0
            } else {
                rng.random_range(c..=1.0)
            };
            let target = scaled_arm(rng, &hub, factor);
            PointMap::new(hub.semi_arc(), target.semi_arc(), (0..hub.len()).collect())
                .expect("copy points lead the arm")
        })
        .collect();
    GlueDiagram::new(hub.clone(), arms).expect("arms share the hub")
}

/// A star diagram (hub vertex mapped into every arm vertex) paired with
/// the glue diagram carrying the same arm maps.
pub fn random_star(rng: &mut ChaCha8Rng) -> (SpaceDiagram, GlueDiagram) {
    let hub = random_space(rng, 5, true);
    let arm_count = rng.random_range(2..=3);
    let mut vertices = vec!["hub".to_string()];
    let mut spaces = vec![hub.clone()];
    let mut edges = Vec::new();
    let mut maps = Vec::new();
    for a in 0..arm_count {
        let factor = rng.random_range(0.5..=1.0);
        let target = scaled_arm(rng, &hub, factor);
        let name = format!("arm{a}");
        edges.push((format!("e{a}"), "hub".to_string(), name.clone()));
        vertices.push(name);
        maps.push(
            PointMap::new(hub.semi_arc(), target.semi_arc(), (0..hub.len()).collect())
                .expect("copy points lead the arm"),
        );
        spaces.push(target);
    }
    let graph = OrientedGraph::new(vertices, edges).expect("fresh names");
    let glue = GlueDiagram::new(hub, maps.clone()).expect("arms share the hub");
    let diagram =
        SpaceDiagram::new(graph, spaces, maps, DEFAULT_TOL).expect("scaled copies contract");
    (diagram, glue)
}

/// A map that is a contraction by construction, with its endpoint spaces.
pub struct ContractionCase {
    pub source: MetricSpace,
    pub target: MetricSpace,
    pub map: PointMap,
}

/// Quotient projections and scale-down identities, alternating at random.
pub fn random_contraction(rng: &mut ChaCha8Rng) -> ContractionCase {
    let x = random_space(rng, 6, true);
    if rng.random_bool(0.5) {
        let rel = random_partition(rng, x.len());
        let q = quotient(x.as_semi(), &rel, DEFAULT_TOL).expect("generated relation fits");
        ContractionCase {
            source: x,
            target: q.space,
            map: q.map,
        }
    } else {
        let factor = [0.3, 0.5, 1.0][rng.random_range(0..3)];
        let target = scaled_arm(rng, &x, factor);
        let map = PointMap::new(x.semi_arc(), target.semi_arc(), (0..x.len()).collect())
            .expect("copy points lead the arm");
        ContractionCase {
            source: x,
            target,
            map,
        }
    }
}

/// Every space obtained by filling an upper triangle from `menu` and
/// closing under shortest paths, for each size in 1..=`max_n`. The sweep
/// is exhaustive over assignments; distinct assignments may repair to the
/// same space, which keeps the family honest rather than deduplicated.
pub fn exhaustive_spaces(max_n: usize, menu: &[ExtDist]) -> Vec<MetricSpace> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let cells = n * (n - 1) / 2;
        let mut odo = vec![0usize; cells];
        'assignments: loop {
            let mut dist = DistMatrix::zeros(n);
            let mut c = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    dist.set_sym(i, j, menu[odo[c]]);
                    c += 1;
                }
            }
            out.push(
                metric_repair(labels("p", n), dist, DEFAULT_TOL)
                    .expect("repaired draw is a metric"),
            );
            let mut k = 0;
            while k < cells {
                odo[k] += 1;
                if odo[k] < menu.len() {
                    continue 'assignments;
                }
                odo[k] = 0;
                k += 1;
            }
            break;
        }
    }
    out
}
