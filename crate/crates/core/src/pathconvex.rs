//! Discrete intrinsic metrics and convexification.
//!
//! [`eps_path_metric`] replaces distances by the cheapest chain of steps of
//! length ≤ ε — the finite stand-in for measuring along paths.
//! [`midpoint_defect`] quantifies how far a space is from having midpoints,
//! and [`convex_completion`] repairs the defect by gluing a discretized
//! segment across each offending pair in one simultaneous pushout.

use alloc::vec::Vec;
use core::fmt;

use crate::dist::ExtDist;
use crate::gluing::{multiple_pushout, GlueDiagram, GluingError};
use crate::morphism::PointMap;
use crate::space::{
    coproduct, discretize_segment, two_point, DistMatrix, MetricSpace, PointId, SpaceError,
};

#[derive(Clone, PartialEq, Debug)]
pub enum PathConvexError {
    NonPositiveEps(f64),
    UnknownPoint(PointId),
    /// Pair endpoints must be distinct points.
    DegeneratePair(PointId),
    /// Segments can only be glued across finite positive distances.
    InvalidPairDistance {
        a: PointId,
        b: PointId,
        dist: ExtDist,
    },
    Space(SpaceError),
    Gluing(GluingError),
}

impl From<SpaceError> for PathConvexError {
    fn from(e: SpaceError) -> Self {
        PathConvexError::Space(e)
    }
}

impl From<GluingError> for PathConvexError {
    fn from(e: GluingError) -> Self {
        PathConvexError::Gluing(e)
    }
}

impl fmt::Display for PathConvexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathConvexError::NonPositiveEps(e) => {
                write!(f, "step bound {e} must be finite and > 0")
            }
            PathConvexError::UnknownPoint(p) => write!(f, "unknown point '{p}'"),
            PathConvexError::DegeneratePair(p) => {
                write!(f, "pair ('{p}', '{p}') has equal endpoints")
            }
            PathConvexError::InvalidPairDistance { a, b, dist } => write!(
                f,
                "pair ('{a}', '{b}') is at distance {dist}; segments need a finite positive length"
            ),
            PathConvexError::Space(e) => write!(f, "{e}"),
            PathConvexError::Gluing(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for PathConvexError {}

/// The ε-path metric: `d_ε(x, y)` is the least total length of a chain
/// `x = z_0, …, z_n = y` whose every step has `d(z_i, z_{i+1}) ≤ ε + tol`.
/// Pairs with no admissible chain are at `∞`; `d_ε ≥ d` always holds, and
/// applying the operation twice with the same ε changes nothing.
pub fn eps_path_metric(
    x: &MetricSpace,
    eps: f64,
    tol: f64,
) -> Result<MetricSpace, PathConvexError> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(PathConvexError::NonPositiveEps(eps));
    }
    let n = x.len();
    let mut m = DistMatrix::filled(n, ExtDist::INF);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let d = x.dist(i, j);
                if d.as_f64() <= eps + tol {
                    m.set(i, j, d);
                }
            }
        }
    }
    m.close_triangles();
    // Chains realize at least the direct distance; enforcing that exactly
    // also makes repeated application literally idempotent (admissible
    // steps keep their original length, so the second pass sees the same
    // step graph).
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let d = m.get(i, j).max(x.dist(i, j));
                m.set(i, j, d);
            }
        }
    }
    Ok(MetricSpace::new(x.points().to_vec(), m, tol.max(0.0))
        .expect("shortest chains over a metric stay a metric"))
}

/// One pair's distance from having a midpoint.
#[derive(Clone, PartialEq, Debug)]
pub struct PairDefect {
    pub a: PointId,
    pub b: PointId,
    pub dist: ExtDist,
    /// `min_z max(|d(a,z) − d(a,b)/2|, |d(b,z) − d(a,b)/2|)`.
    pub defect: f64,
}

/// Midpoint defects of every finite-distance pair.
#[derive(Clone, PartialEq, Debug)]
pub struct DefectReport {
    /// Finite-distance pairs in point order, with their defects.
    pub pairs: Vec<PairDefect>,
    /// Largest defect; `0.0` when there are no finite pairs.
    pub max_defect: f64,
}

/// Measures, for every pair at finite distance, how closely some point
/// approximates a midpoint. Infinite-distance pairs carry no constraint
/// and are skipped.
pub fn midpoint_defect(x: &MetricSpace) -> DefectReport {
    let n = x.len();
    let mut pairs = Vec::new();
    let mut max_defect = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = x.dist(i, j);
            if !d.is_finite() {
                continue;
            }
            let half = d.as_f64() / 2.0;
            let mut best = f64::INFINITY;
            for z in 0..n {
                let da = (x.dist(i, z).as_f64() - half).abs();
                let db = (x.dist(j, z).as_f64() - half).abs();
                best = best.min(da.max(db));
            }
            // z = i itself shows the defect is at most half the distance.
            debug_assert!(best.is_finite());
            max_defect = max_defect.max(best);
            pairs.push(PairDefect {
                a: x.point(i).clone(),
                b: x.point(j).clone(),
                dist: d,
                defect: best,
            });
        }
    }
    DefectReport { pairs, max_defect }
}

/// An unordered set of distinct point pairs in one space, canonically
/// ordered and deduplicated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairSet {
    pairs: Vec<(PointId, PointId)>,
}

impl PairSet {
    /// Each pair is stored with its smaller label first; duplicates (in
    /// either orientation) collapse. Both members must exist in `space`
    /// and differ.
    pub fn new(
        space: &MetricSpace,
        pairs: impl IntoIterator<Item = (PointId, PointId)>,
    ) -> Result<Self, PathConvexError> {
        let mut out: Vec<(PointId, PointId)> = Vec::new();
        for (a, b) in pairs {
            for p in [&a, &b] {
                if space.index_of(p).is_none() {
                    return Err(PathConvexError::UnknownPoint(p.clone()));
                }
            }
            if a == b {
                return Err(PathConvexError::DegeneratePair(a));
            }
            let pair = if a <= b { (a, b) } else { (b, a) };
            out.push(pair);
        }
        out.sort();
        out.dedup();
        Ok(PairSet { pairs: out })
    }

    pub fn pairs(&self) -> &[(PointId, PointId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// The finite-distance pairs whose midpoint defect exceeds `tol` — the
/// pairs a convex completion still needs to bridge.
pub fn missing_segment_pairs(x: &MetricSpace, tol: f64) -> PairSet {
    let report = midpoint_defect(x);
    let pairs = report
        .pairs
        .into_iter()
        .filter(|p| p.defect > tol)
        .map(|p| (p.a, p.b));
    PairSet::new(x, pairs).expect("pairs come from the space itself")
}

/// A convexified space with the canonical embedding of the original.
#[derive(Clone, Debug)]
pub struct ConvexCompletion {
    pub space: MetricSpace,
    /// Isometric embedding of the original space.
    pub embedding: PointMap,
}

/// Glues a discretized segment of matching length across every pair in
/// `s`, all in one simultaneous pushout: the hub is a coproduct of
/// two-point spaces (one per pair), one arm sends each to its pair in `x`,
/// the other to the endpoints of its segment. The original space embeds
/// isometrically: each glued segment has exactly the length of its pair's
/// distance, so no chain through segments can undercut `x`'s metric.
pub fn convex_completion(
    x: &MetricSpace,
    s: &PairSet,
    step: f64,
    tol: f64,
) -> Result<ConvexCompletion, PathConvexError> {
    if !step.is_finite() || step <= 0.0 {
        return Err(PathConvexError::NonPositiveEps(step));
    }

    let mut hub_parts = Vec::with_capacity(s.len());
    let mut segments = Vec::with_capacity(s.len());
    let mut x_assignments: Vec<(usize, usize)> = Vec::with_capacity(s.len());
    for (a, b) in s.pairs() {
        let ia = x
            .index_of(a)
            .ok_or_else(|| PathConvexError::UnknownPoint(a.clone()))?;
        let ib = x
            .index_of(b)
            .ok_or_else(|| PathConvexError::UnknownPoint(b.clone()))?;
        let d = x.dist(ia, ib);
        if !d.is_finite() || d == ExtDist::ZERO {
            return Err(PathConvexError::InvalidPairDistance {
                a: a.clone(),
                b: b.clone(),
                dist: d,
            });
        }
        hub_parts.push(two_point(d)?);
        segments.push(discretize_segment(d.as_f64(), step)?);
        x_assignments.push((ia, ib));
    }

    let hub = coproduct(&hub_parts)?;
    let seg_targets = coproduct(
        &segments
            .iter()
            .map(|seg| seg.space.clone())
            .collect::<Vec<_>>(),
    )?;

    // Hub block k is the two-point space of pair k: its points sit at
    // indices 2k ("k/x0") and 2k+1 ("k/x1").
    let n_hub = hub.space.len();
    let mut into_x = alloc::vec![0usize; n_hub];
    let mut into_seg = alloc::vec![0usize; n_hub];
    for (k, seg) in segments.iter().enumerate() {
        let (ia, ib) = x_assignments[k];
        into_x[2 * k] = ia;
        into_x[2 * k + 1] = ib;
        let start = seg.space.index_of(&seg.start).unwrap();
        let end = seg.space.index_of(&seg.end).unwrap();
        into_seg[2 * k] = seg_targets.injections[k].apply_index(start);
        into_seg[2 * k + 1] = seg_targets.injections[k].apply_index(end);
    }
    let arm_x = PointMap::new(hub.space.semi_arc(), x.semi_arc(), into_x)
        .expect("hub indices are in range");
    let arm_seg = PointMap::new(hub.space.semi_arc(), seg_targets.space.semi_arc(), into_seg)
        .expect("segment indices are in range");

    let diagram = GlueDiagram::new(hub.space, alloc::vec![arm_x, arm_seg])?;
    let push = multiple_pushout(&diagram, tol)?;
    let embedding = push.arm_maps[0].clone();
    debug_assert!(
        embedding.is_isometry(tol.max(1e-12)),
        "gluing full-length segments preserves the original metric"
    );
    Ok(ConvexCompletion {
        space: push.space,
        embedding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{discrete_space, two_point};
    use crate::testgen;
    use proptest::prelude::*;

    fn d(v: f64) -> ExtDist {
        ExtDist::new(v).unwrap()
    }

    fn pid(s: &str) -> PointId {
        PointId::new(s).unwrap()
    }

    #[test]
    fn fine_grids_already_realize_their_distances() {
        let seg = discretize_segment(1.0, 0.25).unwrap();
        let p = eps_path_metric(&seg.space, 0.25, 1e-9).unwrap();
        for i in 0..seg.space.len() {
            for j in 0..seg.space.len() {
                assert_eq!(p.dist(i, j), seg.space.dist(i, j));
            }
        }
    }

    #[test]
    fn too_small_steps_disconnect_the_space() {
        let x = two_point(d(1.0)).unwrap();
        let p = eps_path_metric(&x, 0.5, 1e-9).unwrap();
        assert_eq!(p.dist(0, 1), ExtDist::INF);
    }

    #[test]
    fn glued_segments_agree_with_chain_distances() {
        // Two length-1 segments sharing only their endpoints; with steps
        // of 0.25 admissible, the path metric reproduces the glued-space
        // distances (going around through either branch).
        let a = discretize_segment(1.0, 0.25).unwrap();
        let b = discretize_segment(1.0, 0.25).unwrap();
        let c = coproduct(&[a.space.clone(), b.space.clone()]).unwrap();
        let rel = crate::gluing::EquivRelation::from_label_pairs(
            c.space.as_semi(),
            &[(pid("0/s0"), pid("1/s0")), (pid("0/s4"), pid("1/s4"))],
        )
        .unwrap();
        let glued = crate::gluing::quotient(c.space.as_semi(), &rel, 1e-9).unwrap();
        let p = eps_path_metric(&glued.space, 0.25, 1e-9).unwrap();
        for i in 0..glued.space.len() {
            for j in 0..glued.space.len() {
                assert!(
                    p.dist(i, j).approx_eq(glued.space.dist(i, j), 1e-9),
                    "pair {i},{j}"
                );
            }
        }
    }

    #[test]
    fn eps_rejects_bad_bounds() {
        let x = two_point(d(1.0)).unwrap();
        assert!(matches!(
            eps_path_metric(&x, 0.0, 1e-9),
            Err(PathConvexError::NonPositiveEps(_))
        ));
        assert!(matches!(
            eps_path_metric(&x, f64::INFINITY, 1e-9),
            Err(PathConvexError::NonPositiveEps(_))
        ));
    }

    #[test]
    fn segment_endpoints_have_an_exact_grid_midpoint() {
        // Odd point count = even subdivision count: s_{n/2} is exact.
        let seg = discretize_segment(1.0, 0.25).unwrap();
        assert_eq!(seg.space.len(), 5);
        let report = midpoint_defect(&seg.space);
        let endpoints = report
            .pairs
            .iter()
            .find(|p| p.a == seg.start && p.b == seg.end)
            .unwrap();
        assert_eq!(endpoints.defect, 0.0);
    }

    #[test]
    fn an_isolated_pair_has_defect_half_its_distance() {
        let x = two_point(d(1.0)).unwrap();
        let report = midpoint_defect(&x);
        assert_eq!(report.pairs.len(), 1);
        assert_eq!(report.max_defect, 0.5);
    }

    #[test]
    fn infinite_pairs_are_vacuously_convex() {
        let x = discrete_space(5);
        let report = midpoint_defect(&x);
        assert!(report.pairs.is_empty());
        assert_eq!(report.max_defect, 0.0);
        assert!(missing_segment_pairs(&x, 1e-9).is_empty());
    }

    #[test]
    fn missing_pairs_of_a_two_point_space_is_the_pair() {
        let x = two_point(d(1.0)).unwrap();
        let s = missing_segment_pairs(&x, 1e-9);
        assert_eq!(s.pairs(), &[(pid("x0"), pid("x1"))]);
    }

    #[test]
    fn pair_set_normalizes_order_and_duplicates() {
        let x = two_point(d(1.0)).unwrap();
        let s = PairSet::new(&x, [(pid("x1"), pid("x0")), (pid("x0"), pid("x1"))]).unwrap();
        assert_eq!(s.len(), 1);
        assert!(matches!(
            PairSet::new(&x, [(pid("x0"), pid("x0"))]),
            Err(PathConvexError::DegeneratePair(_))
        ));
        assert!(matches!(
            PairSet::new(&x, [(pid("x0"), pid("zz"))]),
            Err(PathConvexError::UnknownPoint(_))
        ));
    }

    #[test]
    fn completing_a_two_point_space_adds_the_midpoint() {
        let x = two_point(d(1.0)).unwrap();
        let s = missing_segment_pairs(&x, 1e-9);
        let done = convex_completion(&x, &s, 0.5, 1e-9).unwrap();
        assert_eq!(done.space.len(), 3);
        assert!(done.embedding.is_isometry(1e-9));
        // The three points form a path 0 — 0.5 — 1.
        let a = done.embedding.apply(&pid("x0")).unwrap().clone();
        let b = done.embedding.apply(&pid("x1")).unwrap().clone();
        assert!(done
            .space
            .dist_between(&a, &b)
            .unwrap()
            .approx_eq(d(1.0), 1e-9));
        // The glued pair now has an exact midpoint; the residue comes from
        // the fresh half-length sub-pairs, which a 0.5 grid leaves at 0.25.
        let report = midpoint_defect(&done.space);
        let glued = report
            .pairs
            .iter()
            .find(|p| (p.a == a && p.b == b) || (p.a == b && p.b == a))
            .unwrap();
        assert!(glued.defect <= 1e-9, "defect dropped from 0.5 to 0");
        assert!(report.max_defect <= 0.25 + 1e-9);
    }

    #[test]
    fn empty_pair_set_copies_the_space() {
        let x = two_point(d(1.0)).unwrap();
        let s = PairSet::new(&x, []).unwrap();
        let done = convex_completion(&x, &s, 0.5, 1e-9).unwrap();
        assert_eq!(done.space.len(), 2);
        assert!(done.embedding.is_isometry(0.0));
    }

    #[test]
    fn completing_a_unit_triangle_keeps_its_distances() {
        let pts = alloc::vec![pid("a"), pid("b"), pid("c")];
        let mut m = DistMatrix::zeros(3);
        m.set_sym(0, 1, d(1.0));
        m.set_sym(0, 2, d(1.0));
        m.set_sym(1, 2, d(1.0));
        let x = MetricSpace::new(pts, m, 1e-9).unwrap();
        let s = missing_segment_pairs(&x, 1e-9);
        assert_eq!(s.len(), 3);
        let done = convex_completion(&x, &s, 0.5, 1e-9).unwrap();
        assert_eq!(done.space.len(), 6, "three originals plus three midpoints");
        assert!(done.embedding.is_isometry(1e-9));
    }

    #[test]
    fn infinite_pairs_cannot_be_bridged() {
        let x = discrete_space(2);
        let s = PairSet::new(&x, [(pid("p0"), pid("p1"))]).unwrap();
        assert!(matches!(
            convex_completion(&x, &s, 0.5, 1e-9),
            Err(PathConvexError::InvalidPairDistance { .. })
        ));
    }

    proptest! {
        #[test]
        fn path_metric_dominates_and_is_idempotent(
            x in testgen::metric_space(6),
            eps in proptest::sample::select(alloc::vec![0.25f64, 0.5, 1.0, 2.0]),
        ) {
            let p = eps_path_metric(&x, eps, 1e-9).unwrap();
            for i in 0..x.len() {
                for j in 0..x.len() {
                    prop_assert!(p.dist(i, j) >= x.dist(i, j));
                }
            }
            let pp = eps_path_metric(&p, eps, 1e-9).unwrap();
            for i in 0..x.len() {
                for j in 0..x.len() {
                    prop_assert_eq!(pp.dist(i, j), p.dist(i, j));
                }
            }
        }

        #[test]
        fn path_metric_is_antitone_in_eps(x in testgen::metric_space(6)) {
            let fine = eps_path_metric(&x, 0.5, 1e-9).unwrap();
            let coarse = eps_path_metric(&x, 2.0, 1e-9).unwrap();
            for i in 0..x.len() {
                for j in 0..x.len() {
                    prop_assert!(fine.dist(i, j) >= coarse.dist(i, j));
                }
            }
        }

        #[test]
        fn contractions_stay_contractions_in_the_path_metric(
            (x, y, f) in testgen::map_between(5),
            eps in proptest::sample::select(alloc::vec![0.5f64, 1.0, 2.0]),
        ) {
            // Only contractions transfer; skip the rest without burning
            // proptest's rejection budget.
            if !f.is_contraction(0.0) {
                return Ok(());
            }
            let px = eps_path_metric(&x, eps, 1e-9).unwrap();
            let py = eps_path_metric(&y, eps, 1e-9).unwrap();
            let lifted = PointMap::new(
                px.semi_arc(),
                py.semi_arc(),
                f.indices().to_vec(),
            ).unwrap();
            prop_assert!(lifted.is_contraction(1e-9));
        }

        #[test]
        fn completion_embeds_isometrically_and_shrinks_the_defect(
            x in testgen::metric_space(5),
        ) {
            let step = 0.25;
            let s = missing_segment_pairs(&x, 1e-9);
            let done = convex_completion(&x, &s, step, 1e-9).unwrap();
            prop_assert!(done.embedding.is_isometry(1e-9));
            let report = midpoint_defect(&done.space);
            prop_assert!(
                report.max_defect <= step + 1e-9,
                "defect {} exceeds the step bound {}",
                report.max_defect,
                step
            );
        }
    }
}
