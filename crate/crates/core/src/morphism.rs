//! Point maps between spaces, with metric-behaviour constants.
//!
//! A [`PointMap`] sends every point of its source space to a point of its
//! target space. The numeric summaries follow one convention throughout:
//! a source pair at distance `∞` imposes no Lipschitz constraint (any
//! amount of shrinking is allowed), and a source pair at distance `0`
//! imposes no expansivity constraint. Consequently both constants are
//! computed over the constraining pairs only; with no constraining pairs
//! the Lipschitz constant is `0` (the infimum of admissible bounds) and
//! the expansivity constant is `∞` (the supremum of admissible bounds).

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::dist::ExtDist;
use crate::space::{PointId, SemiMetricSpace};

/// A total map between the point sets of two spaces.
///
/// The source and target spaces are held by shared handle, so maps are
/// cheap to clone and composition can verify endpoint agreement.
#[derive(Clone, PartialEq, Debug)]
pub struct PointMap {
    source: Arc<SemiMetricSpace>,
    target: Arc<SemiMetricSpace>,
    map: Vec<usize>,
}

/// Errors from constructing or composing point maps.
#[derive(Clone, PartialEq, Debug)]
pub enum MorphismError {
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    IndexOutOfRange {
        index: usize,
        len: usize,
    },
    UnknownSourcePoint(PointId),
    UnknownTargetPoint(PointId),
    /// A source point was mapped twice in a pair list.
    DuplicateAssignment(PointId),
    /// A source point was never mapped in a pair list.
    MissingAssignment(PointId),
    /// `f.then(g)` requires the target of `f` to equal the source of `g`.
    ComposeMismatch,
}

impl fmt::Display for MorphismError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismError::LengthMismatch { expected, found } => {
                write!(f, "map lists {found} images for {expected} source points")
            }
            MorphismError::IndexOutOfRange { index, len } => {
                write!(f, "target index {index} out of range for {len} points")
            }
            MorphismError::UnknownSourcePoint(p) => {
                write!(f, "'{p}' is not a point of the source space")
            }
            MorphismError::UnknownTargetPoint(p) => {
                write!(f, "'{p}' is not a point of the target space")
            }
            MorphismError::DuplicateAssignment(p) => {
                write!(f, "source point '{p}' is assigned more than once")
            }
            MorphismError::MissingAssignment(p) => {
                write!(f, "source point '{p}' has no image")
            }
            MorphismError::ComposeMismatch => {
                f.write_str("composition requires matching middle spaces")
            }
        }
    }
}

impl core::error::Error for MorphismError {}

impl PointMap {
    /// `map[i]` is the target index of source point `i`.
    pub fn new(
        source: Arc<SemiMetricSpace>,
        target: Arc<SemiMetricSpace>,
        map: Vec<usize>,
    ) -> Result<Self, MorphismError> {
        if map.len() != source.len() {
            return Err(MorphismError::LengthMismatch {
                expected: source.len(),
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= target.len()) {
            return Err(MorphismError::IndexOutOfRange {
                index: bad,
                len: target.len(),
            });
        }
        Ok(PointMap {
            source,
            target,
            map,
        })
    }

    /// Internal constructor for maps whose indices are correct by
    /// construction (injections, canonical projections).
    pub(crate) fn from_indices(
        source: Arc<SemiMetricSpace>,
        target: Arc<SemiMetricSpace>,
        map: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(map.len(), source.len());
        debug_assert!(map.iter().all(|&t| t < target.len()));
        PointMap {
            source,
            target,
            map,
        }
    }

    /// Builds a map from `(source label, target label)` pairs; every source
    /// point must appear exactly once.
    pub fn from_pairs(
        source: Arc<SemiMetricSpace>,
        target: Arc<SemiMetricSpace>,
        pairs: &[(PointId, PointId)],
    ) -> Result<Self, MorphismError> {
        let mut map: Vec<Option<usize>> = alloc::vec![None; source.len()];
        for (from, to) in pairs {
            let si = source
                .index_of(from)
                .ok_or_else(|| MorphismError::UnknownSourcePoint(from.clone()))?;
            let ti = target
                .index_of(to)
                .ok_or_else(|| MorphismError::UnknownTargetPoint(to.clone()))?;
            if map[si].replace(ti).is_some() {
                return Err(MorphismError::DuplicateAssignment(from.clone()));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, slot)| {
                slot.ok_or_else(|| MorphismError::MissingAssignment(source.point(i).clone()))
            })
            .collect::<Result<Vec<usize>, _>>()?;
        Ok(PointMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(space: Arc<SemiMetricSpace>) -> Self {
        let map = (0..space.len()).collect();
        PointMap {
            source: Arc::clone(&space),
            target: space,
            map,
        }
    }

    pub fn source(&self) -> &SemiMetricSpace {
        &self.source
    }

    pub fn target(&self) -> &SemiMetricSpace {
        &self.target
    }

    pub fn source_arc(&self) -> Arc<SemiMetricSpace> {
        Arc::clone(&self.source)
    }

    pub fn target_arc(&self) -> Arc<SemiMetricSpace> {
        Arc::clone(&self.target)
    }

    pub fn indices(&self) -> &[usize] {
        &self.map
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn apply(&self, p: &PointId) -> Result<&PointId, MorphismError> {
        let i = self
            .source
            .index_of(p)
            .ok_or_else(|| MorphismError::UnknownSourcePoint(p.clone()))?;
        Ok(self.target.point(self.map[i]))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = alloc::vec![false; self.target.len()];
        self.map
            .iter()
            .all(|&t| !core::mem::replace(&mut seen[t], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = alloc::vec![false; self.target.len()];
        for &t in &self.map {
            seen[t] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// `f.then(g)` is the composite source-of-f → target-of-g.
    pub fn then(&self, g: &PointMap) -> Result<PointMap, MorphismError> {
        // Pointer equality is the cheap common case; otherwise fall back to
        // comparing the space data, so maps from separately-built but equal
        // spaces still compose.
        if !Arc::ptr_eq(&self.target, &g.source) && self.target != g.source {
            return Err(MorphismError::ComposeMismatch);
        }
        let map = self.map.iter().map(|&m| g.map[m]).collect();
        Ok(PointMap {
            source: Arc::clone(&self.source),
            target: Arc::clone(&g.target),
            map,
        })
    }

    /// Smallest `L` with `d(f x, f x') ≤ L · d(x, x')` for all pairs, under
    /// the conventions in the module docs; `∞` when no finite `L` works.
    pub fn lipschitz_constant(&self) -> ExtDist {
        let n = self.source.len();
        let mut sup = ExtDist::ZERO;
        for i in 0..n {
            for j in (i + 1)..n {
                let ds = self.source.dist(i, j);
                let dt = self.target.dist(self.map[i], self.map[j]);
                if ds.is_infinite() {
                    continue;
                }
                if ds == ExtDist::ZERO {
                    if dt > ExtDist::ZERO {
                        return ExtDist::INF;
                    }
                    continue;
                }
                if dt.is_infinite() {
                    return ExtDist::INF;
                }
                let ratio = ExtDist::new(dt.as_f64() / ds.as_f64())
                    .expect("ratio of finite non-negative distances");
                sup = sup.max(ratio);
            }
        }
        sup
    }

    /// Largest `c` with `d(f x, f x') ≥ c · d(x, x')` for all pairs, under
    /// the conventions in the module docs; `∞` when no pair constrains `c`.
    pub fn expansivity_constant(&self) -> ExtDist {
        let n = self.source.len();
        let mut inf = ExtDist::INF;
        for i in 0..n {
            for j in (i + 1)..n {
                let ds = self.source.dist(i, j);
                let dt = self.target.dist(self.map[i], self.map[j]);
                if ds == ExtDist::ZERO {
                    continue;
                }
                if ds.is_infinite() {
                    if dt.is_finite() {
                        return ExtDist::ZERO;
                    }
                    continue;
                }
                if dt.is_infinite() {
                    continue;
                }
                let ratio = ExtDist::new(dt.as_f64() / ds.as_f64())
                    .expect("ratio of finite non-negative distances");
                inf = inf.min(ratio);
            }
        }
        inf
    }

    /// Distances never grow: `d(f x, f x') ≤ d(x, x') + tol` pairwise, with
    /// `∞ ≤ ∞` allowed.
    pub fn is_contraction(&self, tol: f64) -> bool {
        let n = self.source.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let ds = self.source.dist(i, j);
                let dt = self.target.dist(self.map[i], self.map[j]);
                if dt <= ds {
                    continue;
                }
                if !(dt.is_finite() && ds.is_finite() && dt.as_f64() <= ds.as_f64() + tol) {
                    return false;
                }
            }
        }
        true
    }

    /// Distances shrink by a factor of at most `c`:
    /// `d(f x, f x') ≥ c · d(x, x') − tol` pairwise (`c > 0`; an infinite
    /// source distance then requires an infinite image distance).
    pub fn is_expansive(&self, c: f64, tol: f64) -> bool {
        let n = self.source.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let ds = self.source.dist(i, j);
                let dt = self.target.dist(self.map[i], self.map[j]);
                if ds.is_infinite() {
                    if c > 0.0 && dt.is_finite() {
                        return false;
                    }
                    continue;
                }
                if dt.is_infinite() {
                    continue;
                }
                if dt.as_f64() < c * ds.as_f64() - tol {
                    return false;
                }
            }
        }
        true
    }

    /// Injective and distance-preserving within `tol` (an isometric
    /// embedding; surjectivity is not required).
    pub fn is_isometry(&self, tol: f64) -> bool {
        if !self.is_injective() {
            return false;
        }
        let n = self.source.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let ds = self.source.dist(i, j);
                let dt = self.target.dist(self.map[i], self.map[j]);
                if !ds.approx_eq(dt, tol) {
                    return false;
                }
            }
        }
        true
    }
}
