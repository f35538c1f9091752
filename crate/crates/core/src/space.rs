//! Semi-metric and metric spaces on finitely many named points.
//!
//! A [`SemiMetricSpace`] stores an ordered list of distinct [`PointId`]s and
//! a symmetric matrix of [`ExtDist`] values with zero diagonal satisfying the
//! triangle inequality (within a tolerance). A [`MetricSpace`] additionally
//! guarantees non-degeneracy: distinct points are at distance ≥ tol.
//!
//! Axiom checks produce a [`MetricViolations`] report that names every
//! violated axiom together with a witnessing pair or triple.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::apsp;
use crate::dist::{ExtDist, DEFAULT_TOL};
use crate::morphism::PointMap;
use crate::unionfind::UnionFind;

/// Hard cap on points produced by `discretize_segment`.
pub const MAX_SEGMENT_POINTS: usize = 1_000_000;

const MAX_REPORTED_VIOLATIONS: usize = 64;

/// A point label: any non-empty string. Ordering is lexicographic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PointId(String);

impl PointId {
    pub fn new(label: impl Into<String>) -> Result<Self, SpaceError> {
        let label = label.into();
        if label.is_empty() {
            return Err(SpaceError::EmptyPointId);
        }
        Ok(PointId(label))
    }

    /// For generated labels that are non-empty by construction.
    pub(crate) fn internal(label: String) -> Self {
        debug_assert!(!label.is_empty());
        PointId(label)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Row-major square matrix of pairwise distances.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistMatrix {
    n: usize,
    data: Vec<ExtDist>,
}

impl DistMatrix {
    /// All entries zero (including the diagonal).
    pub fn zeros(n: usize) -> Self {
        DistMatrix {
            n,
            data: alloc::vec![ExtDist::ZERO; n * n],
        }
    }

    /// Off-diagonal entries set to `fill`, diagonal zero.
    pub fn filled(n: usize, fill: ExtDist) -> Self {
        let mut m = DistMatrix {
            n,
            data: alloc::vec![fill; n * n],
        };
        for i in 0..n {
            m.set(i, i, ExtDist::ZERO);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExtDist>>) -> Result<Self, MetricViolations> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MetricViolations::single(MetricViolation::RaggedRow {
                    row: i,
                    width: row.len(),
                    expected: n,
                }));
            }
            data.extend_from_slice(row);
        }
        Ok(DistMatrix { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> ExtDist {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: ExtDist) {
        self.data[i * self.n + j] = v;
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: ExtDist) {
        self.set(i, j, v);
        self.set(j, i, v);
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ExtDist]> {
        self.data.chunks(self.n.max(1))
    }

    pub(crate) fn close_triangles(&mut self) {
        apsp::closure(&mut self.data, self.n);
    }
}

/// One violated axiom with its witnesses.
#[derive(Clone, PartialEq, Debug)]
pub enum MetricViolation {
    RaggedRow {
        row: usize,
        width: usize,
        expected: usize,
    },
    SizeMismatch {
        points: usize,
        matrix: usize,
    },
    DuplicatePoint {
        label: PointId,
    },
    NonzeroDiagonal {
        point: PointId,
        value: ExtDist,
    },
    Asymmetric {
        a: PointId,
        b: PointId,
        forward: ExtDist,
        backward: ExtDist,
    },
    /// `d(a, b) > d(a, via) + d(via, b) + tol`.
    TriangleViolation {
        a: PointId,
        b: PointId,
        via: PointId,
        direct: ExtDist,
        bound: ExtDist,
    },
    /// Distinct points closer than the tolerance (metric spaces only).
    ZeroSeparation {
        a: PointId,
        b: PointId,
        value: ExtDist,
    },
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricViolation::RaggedRow {
                row,
                width,
                expected,
            } => write!(f, "row {row} has {width} entries, expected {expected}"),
            MetricViolation::SizeMismatch { points, matrix } => {
                write!(f, "{points} points but a {matrix}x{matrix} matrix")
            }
            MetricViolation::DuplicatePoint { label } => {
                write!(f, "duplicate point label '{label}'")
            }
            MetricViolation::NonzeroDiagonal { point, value } => {
                write!(f, "d({point}, {point}) = {value}, expected 0")
            }
            MetricViolation::Asymmetric {
                a,
                b,
                forward,
                backward,
            } => write!(f, "d({a}, {b}) = {forward} but d({b}, {a}) = {backward}"),
            MetricViolation::TriangleViolation {
                a,
                b,
                via,
                direct,
                bound,
            } => write!(
                f,
                "d({a}, {b}) = {direct} exceeds d({a}, {via}) + d({via}, {b}) = {bound}"
            ),
            MetricViolation::ZeroSeparation { a, b, value } => {
                write!(f, "distinct points {a}, {b} at distance {value}")
            }
        }
    }
}

/// Report of every violated axiom (capped at a reporting limit).
#[derive(Clone, PartialEq, Debug)]
pub struct MetricViolations {
    pub violations: Vec<MetricViolation>,
    pub truncated: bool,
}

impl MetricViolations {
    fn single(v: MetricViolation) -> Self {
        MetricViolations {
            violations: alloc::vec![v],
            truncated: false,
        }
    }
}

impl fmt::Display for MetricViolations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} axiom violation(s)", self.violations.len())?;
        if self.truncated {
            write!(f, " (report truncated)")?;
        }
        for v in self.violations.iter().take(8) {
            write!(f, "; {v}")?;
        }
        if self.violations.len() > 8 {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}

impl core::error::Error for MetricViolations {}

/// A finite semi-metric space: symmetric, zero diagonal, triangle
/// inequality; distinct points may be at distance zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemiMetricSpace {
    points: Vec<PointId>,
    index: BTreeMap<PointId, usize>,
    dist: DistMatrix,
}

impl SemiMetricSpace {
    pub fn new(points: Vec<PointId>, dist: DistMatrix, tol: f64) -> Result<Self, MetricViolations> {
        check_axioms(&points, &dist, tol, false)?;
        Ok(Self::assemble(points, dist))
    }

    /// For matrices whose axioms are inherited from an already-validated
    /// space (restrictions, disjoint unions); shape is still enforced.
    pub(crate) fn assemble(points: Vec<PointId>, dist: DistMatrix) -> Self {
        assert_eq!(points.len(), dist.n());
        let index = points
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        SemiMetricSpace {
            points,
            index,
            dist,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &PointId {
        &self.points[i]
    }

    pub fn index_of(&self, p: &PointId) -> Option<usize> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> ExtDist {
        self.dist.get(i, j)
    }

    pub fn dist_between(&self, a: &PointId, b: &PointId) -> Result<ExtDist, SpaceError> {
        let i = self
            .index_of(a)
            .ok_or_else(|| SpaceError::UnknownPoint(a.clone()))?;
        let j = self
            .index_of(b)
            .ok_or_else(|| SpaceError::UnknownPoint(b.clone()))?;
        Ok(self.dist(i, j))
    }

    pub fn matrix(&self) -> &DistMatrix {
        &self.dist
    }

    /// The subspace on `indices` (in the given order), keeping labels.
    ///
    /// All axioms are pair/triple-local, so they are inherited verbatim.
    pub fn restrict(&self, indices: &[usize]) -> SemiMetricSpace {
        let points: Vec<PointId> = indices.iter().map(|&i| self.points[i].clone()).collect();
        let m = indices.len();
        let mut dist = DistMatrix::zeros(m);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                dist.set(a, b, self.dist(i, j));
            }
        }
        SemiMetricSpace::assemble(points, dist)
    }

    /// Largest finite distance, or `None` if no pair is at finite distance.
    pub fn max_finite_dist(&self) -> Option<ExtDist> {
        let mut best: Option<ExtDist> = None;
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let d = self.dist(i, j);
                if d.is_finite() && best.map_or(true, |b| d > b) {
                    best = Some(d);
                }
            }
        }
        best
    }
}

/// A finite metric space: a [`SemiMetricSpace`] whose distinct points are
/// separated by at least the construction tolerance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetricSpace {
    semi: Arc<SemiMetricSpace>,
}

impl MetricSpace {
    /// Validates all axioms at `tol`; this is the `validate_metric` entry
    /// point, and the only way to obtain a `MetricSpace` from raw data.
    pub fn new(points: Vec<PointId>, dist: DistMatrix, tol: f64) -> Result<Self, MetricViolations> {
        check_axioms(&points, &dist, tol, true)?;
        Ok(MetricSpace {
            semi: Arc::new(SemiMetricSpace::assemble(points, dist)),
        })
    }

    pub(crate) fn from_semi_unchecked(semi: SemiMetricSpace) -> Self {
        MetricSpace {
            semi: Arc::new(semi),
        }
    }

    pub fn as_semi(&self) -> &SemiMetricSpace {
        &self.semi
    }

    /// Cheap shared handle to the underlying semi-metric data.
    pub fn semi_arc(&self) -> Arc<SemiMetricSpace> {
        Arc::clone(&self.semi)
    }
}

impl Deref for MetricSpace {
    type Target = SemiMetricSpace;

    fn deref(&self) -> &SemiMetricSpace {
        &self.semi
    }
}

/// Re-checks the axioms of an existing space at `tol`.
///
/// `require_nondegenerate` additionally flags distinct points closer than
/// `tol` (the metric-space axiom, as opposed to semi-metric).
pub fn check_metric_axioms(
    space: &SemiMetricSpace,
    tol: f64,
    require_nondegenerate: bool,
) -> Result<(), MetricViolations> {
    check_axioms(space.points(), space.matrix(), tol, require_nondegenerate)
}

fn check_axioms(
    points: &[PointId],
    dist: &DistMatrix,
    tol: f64,
    require_nondegenerate: bool,
) -> Result<(), MetricViolations> {
    let n = points.len();
    if dist.n() != n {
        return Err(MetricViolations::single(MetricViolation::SizeMismatch {
            points: n,
            matrix: dist.n(),
        }));
    }

    let mut violations = Vec::new();
    let mut truncated = false;
    let push = |violations: &mut Vec<MetricViolation>, v: MetricViolation| {
        if violations.len() < MAX_REPORTED_VIOLATIONS {
            violations.push(v);
            true
        } else {
            false
        }
    };

    let mut seen: BTreeMap<&PointId, ()> = BTreeMap::new();
    for p in points {
        if seen.insert(p, ()).is_some() {
            truncated |= !push(
                &mut violations,
                MetricViolation::DuplicatePoint { label: p.clone() },
            );
        }
    }

    'scan: for i in 0..n {
        let dii = dist.get(i, i);
        if dii != ExtDist::ZERO {
            if !push(
                &mut violations,
                MetricViolation::NonzeroDiagonal {
                    point: points[i].clone(),
                    value: dii,
                },
            ) {
                truncated = true;
                break 'scan;
            }
        }
        for j in (i + 1)..n {
            let fwd = dist.get(i, j);
            let bwd = dist.get(j, i);
            if !fwd.approx_eq(bwd, tol) {
                if !push(
                    &mut violations,
                    MetricViolation::Asymmetric {
                        a: points[i].clone(),
                        b: points[j].clone(),
                        forward: fwd,
                        backward: bwd,
                    },
                ) {
                    truncated = true;
                    break 'scan;
                }
            }
            if require_nondegenerate && (fwd == ExtDist::ZERO || fwd.as_f64() < tol) {
                if !push(
                    &mut violations,
                    MetricViolation::ZeroSeparation {
                        a: points[i].clone(),
                        b: points[j].clone(),
                        value: fwd,
                    },
                ) {
                    truncated = true;
                    break 'scan;
                }
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let bound = dist.get(i, k) + dist.get(k, j);
                if fwd.as_f64() > bound.as_f64() + tol {
                    if !push(
                        &mut violations,
                        MetricViolation::TriangleViolation {
                            a: points[i].clone(),
                            b: points[j].clone(),
                            via: points[k].clone(),
                            direct: fwd,
                            bound,
                        },
                    ) {
                        truncated = true;
                        break 'scan;
                    }
                }
            }
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(MetricViolations {
            violations,
            truncated,
        })
    }
}

/// Symmetrizes nothing: the input must already be symmetric with a zero
/// diagonal. Closes the triangle inequality by all-pairs shortest paths,
/// then validates as a metric at `tol`.
pub fn metric_repair(
    points: Vec<PointId>,
    mut dist: DistMatrix,
    tol: f64,
) -> Result<MetricSpace, MetricViolations> {
    let n = points.len();
    if dist.n() != n {
        return Err(MetricViolations::single(MetricViolation::SizeMismatch {
            points: n,
            matrix: dist.n(),
        }));
    }
    dist.close_triangles();
    MetricSpace::new(points, dist, tol)
}

/// Errors from space constructors.
#[derive(Clone, PartialEq, Debug)]
pub enum SpaceError {
    EmptyPointId,
    UnknownPoint(PointId),
    /// `two_point` requires a strictly positive separation.
    DegenerateTwoPoint,
    /// Segment lengths must be finite and non-negative.
    InvalidSegmentLength(f64),
    /// Segment steps must be finite and strictly positive.
    InvalidSegmentStep(f64),
    /// `length / step` exceeds [`MAX_SEGMENT_POINTS`].
    SegmentTooFine {
        requested: usize,
    },
    /// Two product points would share a label.
    LabelCollision(PointId),
    Invalid(MetricViolations),
}

impl From<MetricViolations> for SpaceError {
    fn from(v: MetricViolations) -> Self {
        SpaceError::Invalid(v)
    }
}

impl fmt::Display for SpaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceError::EmptyPointId => f.write_str("point labels must be non-empty"),
            SpaceError::UnknownPoint(p) => write!(f, "unknown point '{p}'"),
            SpaceError::DegenerateTwoPoint => {
                f.write_str("two-point spaces need separation > 0")
            }
            SpaceError::InvalidSegmentLength(l) => {
                write!(f, "segment length {l} must be finite and >= 0")
            }
            SpaceError::InvalidSegmentStep(s) => {
                write!(f, "segment step {s} must be finite and > 0")
            }
            SpaceError::SegmentTooFine { requested } => write!(
                f,
                "segment discretization would need {requested} subintervals (max {MAX_SEGMENT_POINTS})"
            ),
            SpaceError::LabelCollision(p) => {
                write!(f, "product label '{p}' is not unique")
            }
            SpaceError::Invalid(v) => write!(f, "space fails validation: {v}"),
        }
    }
}

impl core::error::Error for SpaceError {}

/// The space `{x0, x1}` with `d(x0, x1) = delta`, `delta > 0` (possibly ∞).
pub fn two_point(delta: ExtDist) -> Result<MetricSpace, SpaceError> {
    if delta == ExtDist::ZERO {
        return Err(SpaceError::DegenerateTwoPoint);
    }
    let points = alloc::vec![
        PointId::internal("x0".into()),
        PointId::internal("x1".into()),
    ];
    let mut dist = DistMatrix::zeros(2);
    dist.set_sym(0, 1, delta);
    Ok(MetricSpace::new(points, dist, DEFAULT_TOL)?)
}

/// `n` points `p0..p{n-1}`, every distinct pair at distance `∞`.
pub fn discrete_space(n: usize) -> MetricSpace {
    let points = (0..n).map(|i| PointId::internal(format!("p{i}"))).collect();
    let dist = DistMatrix::filled(n, ExtDist::INF);
    MetricSpace::from_semi_unchecked(SemiMetricSpace::assemble(points, dist))
}

/// A discretized segment together with its endpoint labels.
#[derive(Clone, Debug)]
pub struct Segment {
    pub space: MetricSpace,
    pub start: PointId,
    pub end: PointId,
}

/// Ceiling of a non-negative finite float as usize.
fn ceil_pos(x: f64) -> usize {
    let t = x as usize;
    if (t as f64) < x {
        t + 1
    } else {
        t
    }
}

/// Evenly spaced points `s0..sn` along a segment of the given length, where
/// `n = ceil(length / step)`, so the realized spacing `length / n` is ≤
/// `step`. `d(si, sj) = |i − j| · length / n`; the endpoints `s0` and `sn`
/// are at distance exactly `length`. A zero-length segment is one point.
pub fn discretize_segment(length: f64, step: f64) -> Result<Segment, SpaceError> {
    if !length.is_finite() || length < 0.0 {
        return Err(SpaceError::InvalidSegmentLength(length));
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(SpaceError::InvalidSegmentStep(step));
    }
    let ratio = length / step;
    if ratio > MAX_SEGMENT_POINTS as f64 {
        return Err(SpaceError::SegmentTooFine {
            requested: ratio as usize,
        });
    }
    let n = if length == 0.0 { 0 } else { ceil_pos(ratio) };
    let points: Vec<PointId> = (0..=n)
        .map(|i| PointId::internal(format!("s{i}")))
        .collect();
    let mut dist = DistMatrix::zeros(n + 1);
    for i in 0..=n {
        for j in (i + 1)..=n {
            // (j - i) / n is exactly 1.0 at the endpoints, making the
            // endpoint distance exactly `length`.
            let frac = (j - i) as f64 / n as f64;
            let d = ExtDist::new(length * frac).expect("non-negative by construction");
            dist.set_sym(i, j, d);
        }
    }
    let space = MetricSpace::new(points, dist, DEFAULT_TOL)?;
    let start = space.point(0).clone();
    let end = space.point(n).clone();
    Ok(Segment { space, start, end })
}

/// The ℓ¹ product: points labelled `"x|y"`, distances added coordinatewise
/// (saturating at ∞). Label collisions are an error.
pub fn tensor(x: &MetricSpace, y: &MetricSpace) -> Result<MetricSpace, SpaceError> {
    let nx = x.len();
    let ny = y.len();
    let mut points = Vec::with_capacity(nx * ny);
    for xp in x.points() {
        for yp in y.points() {
            points.push(PointId::internal(format!("{xp}|{yp}")));
        }
    }
    {
        let mut sorted: Vec<&PointId> = points.iter().collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(SpaceError::LabelCollision(w[0].clone()));
            }
        }
    }
    let n = nx * ny;
    let mut dist = DistMatrix::zeros(n);
    for xi in 0..nx {
        for yi in 0..ny {
            let a = xi * ny + yi;
            for xj in 0..nx {
                for yj in 0..ny {
                    let b = xj * ny + yj;
                    dist.set(a, b, x.dist(xi, xj) + y.dist(yi, yj));
                }
            }
        }
    }
    // Coordinatewise sums can miss exact triangle equality by rounding,
    // hence a real validation rather than an inherited one.
    Ok(MetricSpace::new(points, dist, DEFAULT_TOL)?)
}

/// Decomposition into maximal subspaces with finite internal distances.
#[derive(Clone, Debug)]
pub struct Components {
    /// Point labels per component, ordered by first occurrence.
    pub blocks: Vec<Vec<PointId>>,
    /// The induced subspace of each block (labels preserved).
    pub spaces: Vec<MetricSpace>,
}

/// Splits a space into its finite-distance components: the finest partition
/// such that points in different blocks are at distance `∞`.
pub fn components(x: &MetricSpace) -> Components {
    let n = x.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if x.dist(i, j).is_finite() {
                uf.union(i, j);
            }
        }
    }
    let blocks_idx = uf.blocks();
    let blocks = blocks_idx
        .iter()
        .map(|b| b.iter().map(|&i| x.point(i).clone()).collect())
        .collect();
    let spaces = blocks_idx
        .iter()
        .map(|b| MetricSpace::from_semi_unchecked(x.as_semi().restrict(b)))
        .collect();
    Components { blocks, spaces }
}

/// A disjoint union together with its canonical injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub space: MetricSpace,
    /// `injections[i]` embeds input `i`; its image carries labels `"i/..."`.
    pub injections: Vec<PointMap>,
}

pub(crate) fn disjoint_union_points(
    parts: &[&SemiMetricSpace],
) -> (Vec<PointId>, DistMatrix, Vec<usize>) {
    let total: usize = parts.iter().map(|p| p.len()).sum();
    let mut points = Vec::with_capacity(total);
    let mut offsets = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        offsets.push(points.len());
        for p in part.points() {
            points.push(PointId::internal(format!("{i}/{p}")));
        }
    }
    let mut dist = DistMatrix::filled(total, ExtDist::INF);
    for (i, part) in parts.iter().enumerate() {
        let off = offsets[i];
        for a in 0..part.len() {
            for b in 0..part.len() {
                dist.set(off + a, off + b, part.dist(a, b));
            }
        }
    }
    (points, dist, offsets)
}

/// Disjoint union of semi-metric spaces: block-diagonal distances, `∞`
/// across blocks, labels prefixed with the block index.
pub(crate) fn disjoint_union(parts: &[&SemiMetricSpace]) -> (SemiMetricSpace, Vec<usize>) {
    let (points, dist, offsets) = disjoint_union_points(parts);
    (SemiMetricSpace::assemble(points, dist), offsets)
}

/// The coproduct of metric spaces: their disjoint union with cross-block
/// distances `∞`, plus the canonical injections (which are isometries).
pub fn coproduct(parts: &[MetricSpace]) -> Result<Coproduct, SpaceError> {
    let semis: Vec<&SemiMetricSpace> = parts.iter().map(|p| p.as_semi()).collect();
    let (semi, offsets) = disjoint_union(&semis);
    let space = MetricSpace::from_semi_unchecked(semi);
    let target = space.semi_arc();
    let injections = parts
        .iter()
        .zip(&offsets)
        .map(|(part, &off)| {
            PointMap::from_indices(
                part.semi_arc(),
                Arc::clone(&target),
                (0..part.len()).map(|p| off + p).collect(),
            )
        })
        .collect();
    Ok(Coproduct { space, injections })
}
