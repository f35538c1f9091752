//! Quotients by an equivalence relation and multiple pushouts.
//!
//! The quotient distance between classes is the infimum of chain costs
//! `∑ d(p_s, q_s)` over chains whose consecutive pairs are linked by the
//! relation. Two independent routes compute it:
//!
//! - [`quotient`]: all-pairs shortest paths over the point graph with
//!   zero-weight edges inside each block (the production kernel), followed
//!   by merging classes closer than the tolerance;
//! - [`quotient_oracle`]: bounded dynamic programming directly over chains
//!   of at most `|blocks|` links, for small inputs.
//!
//! [`multiple_pushout`] glues a family of spaces along a hub via the
//! quotient, and the `*_formula` functions evaluate the closed-form
//! distance expressions (arm minima and three-term sums) that the property
//! suites compare against the pushout route. The closed forms are evaluated
//! as written; they provably agree with the pushout when every arm scales
//! the hub uniformly (in particular for isometric arms), which is what the
//! generated test diagrams provide. For arms that shrink different hub
//! pairs by different factors the raw arm minimum can overshoot a
//! multi-hop chain, so the equality is a property of the diagram family,
//! not of arbitrary diagrams.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::dist::ExtDist;
use crate::morphism::PointMap;
use crate::space::{
    disjoint_union, DistMatrix, MetricSpace, MetricViolations, PointId, SemiMetricSpace,
};
use crate::unionfind::UnionFind;

/// `quotient_oracle` refuses inputs with more points than this.
pub const ORACLE_POINT_LIMIT: usize = 12;

/// Errors from gluing operations.
#[derive(Clone, PartialEq, Debug)]
pub enum GluingError {
    /// The relation was built for a different number of points.
    RelationSizeMismatch {
        relation: usize,
        space: usize,
    },
    IndexOutOfRange {
        index: usize,
        len: usize,
    },
    UnknownPoint(PointId),
    /// A point appears in two blocks of a partition.
    OverlappingBlocks(PointId),
    /// Chain pairs `s` and `s+1` are not linked by the relation.
    BrokenLink {
        index: usize,
    },
    OracleTooLarge {
        points: usize,
        limit: usize,
    },
    NoArms,
    ArmSourceMismatch {
        arm: usize,
    },
    Invalid(MetricViolations),
}

impl From<MetricViolations> for GluingError {
    fn from(v: MetricViolations) -> Self {
        GluingError::Invalid(v)
    }
}

impl fmt::Display for GluingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GluingError::RelationSizeMismatch { relation, space } => write!(
                f,
                "relation partitions {relation} points but the space has {space}"
            ),
            GluingError::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for {len}")
            }
            GluingError::UnknownPoint(p) => write!(f, "unknown point '{p}'"),
            GluingError::OverlappingBlocks(p) => {
                write!(f, "point '{p}' appears in more than one block")
            }
            GluingError::BrokenLink { index } => write!(
                f,
                "chain pairs {index} and {} are not linked by the relation",
                index + 1
            ),
            GluingError::OracleTooLarge { points, limit } => {
                write!(f, "oracle limited to {limit} points, got {points}")
            }
            GluingError::NoArms => f.write_str("a glue diagram needs at least one arm"),
            GluingError::ArmSourceMismatch { arm } => {
                write!(f, "arm {arm} is not a map out of the hub")
            }
            GluingError::Invalid(v) => write!(f, "glued space fails validation: {v}"),
        }
    }
}

impl core::error::Error for GluingError {}

/// An equivalence relation on `0..n`, stored as its partition into blocks.
///
/// Blocks are canonically ordered by smallest member and sorted within.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivRelation {
    n: usize,
    class_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl EquivRelation {
    pub(crate) fn from_unionfind(mut uf: UnionFind, n: usize) -> Self {
        let blocks = uf.blocks();
        let mut class_of = alloc::vec![0usize; n];
        for (b, members) in blocks.iter().enumerate() {
            for &m in members {
                class_of[m] = b;
            }
        }
        EquivRelation {
            n,
            class_of,
            blocks,
        }
    }

    /// The discrete relation: every point is its own class.
    pub fn identity(n: usize) -> Self {
        EquivRelation::from_unionfind(UnionFind::new(n), n)
    }

    /// The smallest equivalence relation linking every listed pair.
    pub fn from_index_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GluingError> {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            for idx in [a, b] {
                if idx >= n {
                    return Err(GluingError::IndexOutOfRange { index: idx, len: n });
                }
            }
            uf.union(a, b);
        }
        Ok(EquivRelation::from_unionfind(uf, n))
    }

    /// As [`from_index_pairs`](Self::from_index_pairs), with points named by
    /// label in `space`.
    pub fn from_label_pairs(
        space: &SemiMetricSpace,
        pairs: &[(PointId, PointId)],
    ) -> Result<Self, GluingError> {
        let mut index_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let ia = space
                .index_of(a)
                .ok_or_else(|| GluingError::UnknownPoint(a.clone()))?;
            let ib = space
                .index_of(b)
                .ok_or_else(|| GluingError::UnknownPoint(b.clone()))?;
            index_pairs.push((ia, ib));
        }
        EquivRelation::from_index_pairs(space.len(), &index_pairs)
    }

    /// Builds the relation whose non-singleton blocks are given by label;
    /// unmentioned points form singletons. Blocks must be disjoint.
    pub fn from_blocks(
        space: &SemiMetricSpace,
        blocks: &[Vec<PointId>],
    ) -> Result<Self, GluingError> {
        let mut uf = UnionFind::new(space.len());
        let mut used = alloc::vec![false; space.len()];
        for block in blocks {
            let mut first: Option<usize> = None;
            for p in block {
                let i = space
                    .index_of(p)
                    .ok_or_else(|| GluingError::UnknownPoint(p.clone()))?;
                if core::mem::replace(&mut used[i], true) {
                    return Err(GluingError::OverlappingBlocks(p.clone()));
                }
                if let Some(f) = first {
                    uf.union(f, i);
                } else {
                    first = Some(i);
                }
            }
        }
        Ok(EquivRelation::from_unionfind(uf, space.len()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.class_of[i] == self.class_of[j]
    }
}

/// A chain of point pairs; consecutive pairs must be linked by the relation
/// in force (`q_s ∼ p_{s+1}`), which [`chain_cost`] and [`streamline`]
/// verify.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    pub pairs: Vec<(PointId, PointId)>,
}

/// Result of [`streamline`]: a cleaned chain, or the finding that the
/// original has infinite cost.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Streamlined {
    Finite(Chain),
    /// Some pair of the chain is at infinite distance, so the chain
    /// contributes nothing to the infimum.
    Infinite,
}

fn chain_indices(
    x: &SemiMetricSpace,
    rel: &EquivRelation,
    chain: &Chain,
) -> Result<Vec<(usize, usize)>, GluingError> {
    if rel.n() != x.len() {
        return Err(GluingError::RelationSizeMismatch {
            relation: rel.n(),
            space: x.len(),
        });
    }
    let mut out = Vec::with_capacity(chain.pairs.len());
    for (p, q) in &chain.pairs {
        let ip = x
            .index_of(p)
            .ok_or_else(|| GluingError::UnknownPoint(p.clone()))?;
        let iq = x
            .index_of(q)
            .ok_or_else(|| GluingError::UnknownPoint(q.clone()))?;
        out.push((ip, iq));
    }
    for (s, w) in out.windows(2).enumerate() {
        if !rel.related(w[0].1, w[1].0) {
            return Err(GluingError::BrokenLink { index: s });
        }
    }
    Ok(out)
}

/// The saturating sum `∑ d(p_s, q_s)` of a linked chain.
pub fn chain_cost(
    x: &SemiMetricSpace,
    rel: &EquivRelation,
    chain: &Chain,
) -> Result<ExtDist, GluingError> {
    let idx = chain_indices(x, rel, chain)?;
    Ok(idx
        .into_iter()
        .map(|(p, q)| x.dist(p, q))
        .fold(ExtDist::ZERO, |acc, d| acc + d))
}

/// Collapses adjacent pairs that meet at a shared point (`q_s = p_{s+1}`),
/// never increasing the cost; reports chains containing an infinite pair
/// instead of returning them.
pub fn streamline(
    x: &SemiMetricSpace,
    rel: &EquivRelation,
    chain: &Chain,
) -> Result<Streamlined, GluingError> {
    let idx = chain_indices(x, rel, chain)?;
    if idx.iter().any(|&(p, q)| x.dist(p, q).is_infinite()) {
        return Ok(Streamlined::Infinite);
    }
    let mut pairs: Vec<(usize, usize)> = idx;
    // Each collapse replaces (p_s, q_s), (q_s, q_{s+1}) by (p_s, q_{s+1});
    // by the triangle inequality the cost does not increase, and no new
    // infinite pair can appear unless one endpoint pair was already
    // infinitely far, which the produced pair then witnesses honestly.
    loop {
        let Some(s) = (0..pairs.len().saturating_sub(1)).find(|&s| pairs[s].1 == pairs[s + 1].0)
        else {
            break;
        };
        let merged = (pairs[s].0, pairs[s + 1].1);
        pairs.splice(s..=s + 1, [merged]);
    }
    if pairs.iter().any(|&(p, q)| x.dist(p, q).is_infinite()) {
        return Ok(Streamlined::Infinite);
    }
    Ok(Streamlined::Finite(Chain {
        pairs: pairs
            .into_iter()
            .map(|(p, q)| (x.point(p).clone(), x.point(q).clone()))
            .collect(),
    }))
}

/// Every equivalence class, represented by its lexicographically smallest
/// member label, sorted by that label. Returns `(label, member indices)`.
fn class_reps(x: &SemiMetricSpace, blocks: &[Vec<usize>]) -> Vec<(PointId, Vec<usize>)> {
    let mut reps: Vec<(PointId, Vec<usize>)> = blocks
        .iter()
        .map(|members| {
            let label = members
                .iter()
                .map(|&i| x.point(i))
                .min()
                .expect("blocks are nonempty")
                .clone();
            (label, members.clone())
        })
        .collect();
    reps.sort_by(|a, b| a.0.cmp(&b.0));
    reps
}

/// A quotient space together with its intermediate data.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// The quotient semi-metric on the relation's classes, before classes
    /// at distance < tol are merged. This is what the oracle reproduces.
    pub premerge: SemiMetricSpace,
    /// The final metric space, with sub-tolerance classes merged.
    pub space: MetricSpace,
    /// The canonical surjective contraction from the input onto `space`.
    pub map: PointMap,
}

/// Glues `x` along `rel`: the distance between classes is the infimum of
/// chain costs, computed as all-pairs shortest paths after inserting
/// zero-weight edges inside each block. Classes at distance < `tol` are
/// then merged ("identifying pairs of points with zero distance"), each
/// merged class labelled by its lexicographically smallest member.
pub fn quotient(
    x: &SemiMetricSpace,
    rel: &EquivRelation,
    tol: f64,
) -> Result<Quotient, GluingError> {
    let n = x.len();
    if rel.n() != n {
        return Err(GluingError::RelationSizeMismatch {
            relation: rel.n(),
            space: n,
        });
    }

    let mut work = x.matrix().clone();
    for block in rel.blocks() {
        for (ai, &a) in block.iter().enumerate() {
            for &b in &block[ai + 1..] {
                work.set_sym(a, b, ExtDist::ZERO);
            }
        }
    }
    work.close_triangles();
    // Points of one block now have identical rows: zero-weight links make
    // every chain from one member available to all others at equal cost.

    let reps = class_reps(x, rel.blocks());
    let k = reps.len();
    let mut pre = DistMatrix::zeros(k);
    for (a, (_, mem_a)) in reps.iter().enumerate() {
        for (b, (_, mem_b)) in reps.iter().enumerate() {
            if a != b {
                pre.set(a, b, work.get(mem_a[0], mem_b[0]));
            }
        }
    }
    let premerge = SemiMetricSpace::assemble(
        reps.iter().map(|(label, _)| label.clone()).collect(),
        pre.clone(),
    );
    debug_assert!(
        crate::space::check_metric_axioms(&premerge, tol.max(1e-12), false).is_ok(),
        "shortest-path closure must yield a semi-metric"
    );

    // Merge classes closer than the tolerance, transitively.
    let mut uf = UnionFind::new(k);
    for a in 0..k {
        for b in (a + 1)..k {
            let d = pre.get(a, b);
            if d == ExtDist::ZERO || d.as_f64() < tol {
                uf.union(a, b);
            }
        }
    }
    let merged = uf.blocks();
    // Premerge classes are sorted by label, so the smallest member index
    // of a merged group carries its lexicographically smallest label, and
    // the groups (ordered by smallest member) are already label-sorted.
    let final_points: Vec<PointId> = merged
        .iter()
        .map(|members| premerge.point(members[0]).clone())
        .collect();
    let m = merged.len();
    let mut fin = DistMatrix::zeros(m);
    for (a, mem_a) in merged.iter().enumerate() {
        for (b, mem_b) in merged.iter().enumerate() {
            if a == b {
                continue;
            }
            let pre = &pre;
            let d = ExtDist::min_of(
                mem_a
                    .iter()
                    .flat_map(|&p| mem_b.iter().map(move |&q| pre.get(p, q))),
            );
            fin.set(a, b, d);
        }
    }
    // Merging can leave sub-tolerance triangle slack between group minima;
    // one more closure restores the inequality exactly.
    fin.close_triangles();
    let space = MetricSpace::new(final_points, fin, tol)?;

    let mut class_to_merged = alloc::vec![0usize; k];
    for (g, members) in merged.iter().enumerate() {
        for &c in members {
            class_to_merged[c] = g;
        }
    }
    // Map each original point: block -> premerge position -> merged class.
    let mut premerge_pos_of_block = alloc::vec![0usize; rel.blocks().len()];
    for (pos, (_, members)) in reps.iter().enumerate() {
        premerge_pos_of_block[rel.class_of(members[0])] = pos;
    }
    let map_indices: Vec<usize> = (0..n)
        .map(|i| class_to_merged[premerge_pos_of_block[rel.class_of(i)]])
        .collect();
    let map = PointMap::from_indices(Arc::new(x.clone()), space.semi_arc(), map_indices);
    debug_assert!(map.is_surjective());
    debug_assert!(
        map.is_contraction(0.0),
        "quotienting never increases distances"
    );

    Ok(Quotient {
        premerge,
        space,
        map,
    })
}

fn minplus(a: &[ExtDist], b: &[ExtDist], n: usize) -> Vec<ExtDist> {
    let mut out = alloc::vec![ExtDist::INF; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let cand = aik + b[k * n + j];
                if cand < out[i * n + j] {
                    out[i * n + j] = cand;
                }
            }
        }
    }
    out
}

/// Brute-force reference for the quotient semi-metric: dynamic programming
/// over chains with at most `|blocks| + 1` links (a minimal chain never
/// revisits a class), entirely independent of the shortest-path kernel.
/// Output matches [`Quotient::premerge`]: class representatives labelled by
/// smallest member, sorted by label. Inputs are limited to
/// [`ORACLE_POINT_LIMIT`] points.
pub fn quotient_oracle(
    x: &SemiMetricSpace,
    rel: &EquivRelation,
) -> Result<SemiMetricSpace, GluingError> {
    let n = x.len();
    if n > ORACLE_POINT_LIMIT {
        return Err(GluingError::OracleTooLarge {
            points: n,
            limit: ORACLE_POINT_LIMIT,
        });
    }
    if rel.n() != n {
        return Err(GluingError::RelationSizeMismatch {
            relation: rel.n(),
            space: n,
        });
    }

    let mut link = alloc::vec![ExtDist::INF; n * n];
    for i in 0..n {
        for j in 0..n {
            if rel.related(i, j) {
                link[i * n + j] = ExtDist::ZERO;
            }
        }
    }
    let mut cost = alloc::vec![ExtDist::ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            cost[i * n + j] = x.dist(i, j);
        }
    }

    let blocks = rel.blocks().len();
    // best[i][j] after m rounds = least cost of a chain from i to j with at
    // most m+1 links. A minimal chain never revisits a class, so it has at
    // most `blocks − 1` real links, plus up to two zero-length self-links
    // that express a relation hop within the start or end class: `blocks + 1`
    // links in all. One extra round double-checks that bound.
    let mut chain = cost.clone();
    let mut best = cost.clone();
    let mut best_at_bound = cost.clone();
    for round in 1..=(blocks + 1) {
        chain = minplus(&minplus(&chain, &link, n), &cost, n);
        for (b, &c) in best.iter_mut().zip(&chain) {
            *b = (*b).min(c);
        }
        if round == blocks {
            best_at_bound = best.clone();
        }
    }
    debug_assert!(
        best.iter()
            .zip(&best_at_bound)
            .all(|(a, b)| a.approx_eq(*b, 1e-12)),
        "chains longer than the class count improved the infimum"
    );

    let reps = class_reps(x, rel.blocks());
    let k = reps.len();
    let mut dist = DistMatrix::zeros(k);
    for (a, (_, mem_a)) in reps.iter().enumerate() {
        for (b, (_, mem_b)) in reps.iter().enumerate() {
            if a == b {
                continue;
            }
            let d = ExtDist::min_of(
                mem_a
                    .iter()
                    .flat_map(|&p| mem_b.iter().map(|&q| best[p * n + q]).collect::<Vec<_>>()),
            );
            dist.set(a, b, d);
        }
    }
    Ok(SemiMetricSpace::assemble(
        reps.into_iter().map(|(label, _)| label).collect(),
        dist,
    ))
}

/// A hub space with a family of maps out of it — the input to
/// [`multiple_pushout`].
#[derive(Clone, Debug)]
pub struct GlueDiagram {
    hub: MetricSpace,
    arms: Vec<PointMap>,
}

impl GlueDiagram {
    /// Every arm must be a map out of `hub`; at least one arm is required.
    pub fn new(hub: MetricSpace, arms: Vec<PointMap>) -> Result<Self, GluingError> {
        if arms.is_empty() {
            return Err(GluingError::NoArms);
        }
        for (i, arm) in arms.iter().enumerate() {
            if arm.source() != hub.as_semi() {
                return Err(GluingError::ArmSourceMismatch { arm: i });
            }
        }
        Ok(GlueDiagram { hub, arms })
    }

    pub fn hub(&self) -> &MetricSpace {
        &self.hub
    }

    pub fn arms(&self) -> &[PointMap] {
        &self.arms
    }

    pub fn arm(&self, i: usize) -> Result<&PointMap, GluingError> {
        self.arms.get(i).ok_or(GluingError::IndexOutOfRange {
            index: i,
            len: self.arms.len(),
        })
    }
}

/// The glued space of a [`GlueDiagram`] with its canonical maps.
#[derive(Clone, Debug)]
pub struct MultiplePushout {
    pub space: MetricSpace,
    /// `arm_maps[i]` is the canonical map from arm `i`'s target.
    pub arm_maps: Vec<PointMap>,
    /// The common composite hub → glued space (independent of the arm).
    pub hub_map: PointMap,
}

/// Glues the arm targets along the hub: the disjoint union of the targets
/// quotiented by identifying the images of each hub point across arms.
pub fn multiple_pushout(diagram: &GlueDiagram, tol: f64) -> Result<MultiplePushout, GluingError> {
    let targets: Vec<&SemiMetricSpace> = diagram.arms.iter().map(|a| a.target()).collect();
    let (union, offsets) = disjoint_union(&targets);
    let mut uf = UnionFind::new(union.len());
    for h in 0..diagram.hub.len() {
        let anchor = offsets[0] + diagram.arms[0].apply_index(h);
        for (i, arm) in diagram.arms.iter().enumerate().skip(1) {
            uf.union(anchor, offsets[i] + arm.apply_index(h));
        }
    }
    let rel = EquivRelation::from_unionfind(uf, union.len());
    let q = quotient(&union, &rel, tol)?;

    let arm_maps: Vec<PointMap> = diagram
        .arms
        .iter()
        .zip(&offsets)
        .map(|(arm, &off)| {
            PointMap::from_indices(
                arm.target_arc(),
                q.space.semi_arc(),
                (0..arm.target().len())
                    .map(|p| q.map.apply_index(off + p))
                    .collect(),
            )
        })
        .collect();

    let hub_map = diagram.arms[0]
        .then(&arm_maps[0])
        .expect("arm targets agree by construction");
    debug_assert!(diagram
        .arms
        .iter()
        .zip(&arm_maps)
        .all(|(j, i)| { j.then(i).expect("arm targets agree").indices() == hub_map.indices() }));

    Ok(MultiplePushout {
        space: q.space,
        arm_maps,
        hub_map,
    })
}

/// The arm minimum `min_i d_{X_i}(j_i y, j_i y')` by hub point index.
pub fn precdx_by_index(diagram: &GlueDiagram, y: usize, y2: usize) -> ExtDist {
    ExtDist::min_of(
        diagram
            .arms
            .iter()
            .map(|arm| arm.target().dist(arm.apply_index(y), arm.apply_index(y2))),
    )
}

/// The closed-form distance between the images of two hub points in the
/// glued space: the minimum over arms of the arm-internal distance of the
/// images.
pub fn precdx_formula(
    diagram: &GlueDiagram,
    y: &PointId,
    y2: &PointId,
) -> Result<ExtDist, GluingError> {
    let iy = hub_index(diagram, y)?;
    let iy2 = hub_index(diagram, y2)?;
    Ok(precdx_by_index(diagram, iy, iy2))
}

fn hub_index(diagram: &GlueDiagram, y: &PointId) -> Result<usize, GluingError> {
    diagram
        .hub
        .index_of(y)
        .ok_or_else(|| GluingError::UnknownPoint(y.clone()))
}

/// As [`dii_formula`] but by arm/point index.
pub fn dii_by_index(diagram: &GlueDiagram, i: usize, x: usize, i2: usize, x2: usize) -> ExtDist {
    let arm = &diagram.arms[i];
    let arm2 = &diagram.arms[i2];
    let hub_n = diagram.hub.len();
    ExtDist::min_of((0..hub_n).flat_map(|y| {
        let first = arm.target().dist(x, arm.apply_index(y));
        (0..hub_n).map(move |y2| {
            first + precdx_by_index(diagram, y, y2) + arm2.target().dist(arm2.apply_index(y2), x2)
        })
    }))
}

/// The closed-form distance between `x` in arm `i` and `x'` in arm `i'`:
/// the minimum over hub pairs `(y, y')` — including `y = y'` — of
/// `d(x, j_i y) + precdx(y, y') + d(j_{i'} y', x')`. `∞` when the hub is
/// empty.
pub fn dii_formula(
    diagram: &GlueDiagram,
    i: usize,
    x: &PointId,
    i2: usize,
    x2: &PointId,
) -> Result<ExtDist, GluingError> {
    let arm = diagram.arm(i)?;
    let arm2 = diagram.arm(i2)?;
    let ix = arm
        .target()
        .index_of(x)
        .ok_or_else(|| GluingError::UnknownPoint(x.clone()))?;
    let ix2 = arm2
        .target()
        .index_of(x2)
        .ok_or_else(|| GluingError::UnknownPoint(x2.clone()))?;
    Ok(dii_by_index(diagram, i, ix, i2, ix2))
}

/// As [`within_space_distance`] but by arm/point index.
pub fn within_by_index(diagram: &GlueDiagram, i: usize, x: usize, x2: usize) -> ExtDist {
    diagram.arms[i]
        .target()
        .dist(x, x2)
        .min(dii_by_index(diagram, i, x, i, x2))
}

/// The closed-form distance between two points of the same arm in the
/// glued space: the smaller of the arm-internal distance and the
/// through-the-hub expression.
pub fn within_space_distance(
    diagram: &GlueDiagram,
    i: usize,
    x: &PointId,
    x2: &PointId,
) -> Result<ExtDist, GluingError> {
    let arm = diagram.arm(i)?;
    let ix = arm
        .target()
        .index_of(x)
        .ok_or_else(|| GluingError::UnknownPoint(x.clone()))?;
    let ix2 = arm
        .target()
        .index_of(x2)
        .ok_or_else(|| GluingError::UnknownPoint(x2.clone()))?;
    Ok(within_by_index(diagram, i, ix, ix2))
}
