//! Internal hom spaces and the tensor–hom correspondence.
//!
//! The maps we can enumerate are the contractions `X → Y`; under the
//! sup distance they form a metric space of their own, the internal hom
//! `[X, Y]`. Currying converts maps out of a tensor `Z ⊗ X` (distances
//! added coordinatewise) into maps into `[X, Y]` and back, preserving
//! the sup distance on both sides.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dist::ExtDist;
use crate::morphism::PointMap;
use crate::pathconvex::{eps_path_metric, PathConvexError};
use crate::space::{tensor, DistMatrix, MetricSpace, PointId, SpaceError};

/// Default cap on the number of candidate maps an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, PartialEq, Debug)]
pub enum HomError {
    /// `|Y|^|X|` candidates exceed the enumeration budget.
    BudgetExceeded {
        candidates: u128,
        budget: u64,
    },
    /// The map to curry or uncurry must be a contraction.
    NotContractive,
    SourceMismatch {
        expected: String,
        found: String,
    },
    TargetMismatch {
        expected: String,
        found: String,
    },
    /// A slice of the curried map is missing from the catalog; this can
    /// only happen when the hom space was built with different data.
    MissingSlice(PointId),
    Space(SpaceError),
    Path(PathConvexError),
}

impl From<SpaceError> for HomError {
    fn from(e: SpaceError) -> Self {
        HomError::Space(e)
    }
}

impl From<PathConvexError> for HomError {
    fn from(e: PathConvexError) -> Self {
        HomError::Path(e)
    }
}

impl fmt::Display for HomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomError::BudgetExceeded { candidates, budget } => write!(
                f,
                "enumerating {candidates} candidate maps exceeds the budget of {budget}"
            ),
            HomError::NotContractive => write!(f, "the map is not a contraction"),
            HomError::SourceMismatch { expected, found } => {
                write!(f, "map source has {found} points, expected {expected}")
            }
            HomError::TargetMismatch { expected, found } => {
                write!(f, "map target has {found} points, expected {expected}")
            }
            HomError::MissingSlice(p) => write!(
                f,
                "the slice at '{p}' is not in the hom catalog; the hom space \
                 does not match the map's data"
            ),
            HomError::Space(e) => write!(f, "{e}"),
            HomError::Path(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for HomError {}

fn space_signature(s: &crate::space::SemiMetricSpace) -> String {
    format!("{} point(s)", s.len())
}

/// All contractions `X → Y` in lexicographic order of their index
/// assignments. `|Y|^|X|` candidates are tried; if that exceeds `budget`
/// the enumeration refuses up front. An empty `X` has exactly one map,
/// an empty `Y` (with `X` nonempty) none.
pub fn enumerate_contractions(
    x: &MetricSpace,
    y: &MetricSpace,
    tol: f64,
    budget: u64,
) -> Result<Vec<PointMap>, HomError> {
    let nx = x.len();
    let ny = y.len();
    if nx == 0 {
        return Ok(alloc::vec![PointMap::new(
            x.semi_arc(),
            y.semi_arc(),
            Vec::new()
        )
        .expect("empty map")]);
    }
    if ny == 0 {
        return Ok(Vec::new());
    }
    let candidates = (ny as u128).saturating_pow(nx as u32);
    if candidates > budget as u128 {
        return Err(HomError::BudgetExceeded { candidates, budget });
    }

    let mut maps = Vec::new();
    let mut assign = alloc::vec![0usize; nx];
    loop {
        if contracts(x, y, &assign, tol) {
            let m = PointMap::new(x.semi_arc(), y.semi_arc(), assign.clone())
                .expect("odometer indices are in range");
            debug_assert!(m.is_contraction(tol));
            maps.push(m);
        }
        // Advance the odometer (most significant digit first, so the
        // output is sorted by assignment).
        let mut pos = nx;
        loop {
            if pos == 0 {
                return Ok(maps);
            }
            pos -= 1;
            assign[pos] += 1;
            if assign[pos] < ny {
                break;
            }
            assign[pos] = 0;
        }
    }
}

/// Pairwise contraction test, matching [`PointMap::is_contraction`].
fn contracts(x: &MetricSpace, y: &MetricSpace, assign: &[usize], tol: f64) -> bool {
    let n = assign.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let ds = x.dist(i, j);
            let dt = y.dist(assign[i], assign[j]);
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

/// The internal hom `[X, Y]`: every contraction `X → Y` as a point, at
/// sup distance `d(f, g) = max_x d_Y(f x, g x)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    domain: MetricSpace,
    codomain: MetricSpace,
    /// The hom space itself; point `h{i}` names `maps[i]`.
    base: MetricSpace,
    maps: Vec<PointMap>,
}

impl HomSpace {
    pub fn domain(&self) -> &MetricSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &MetricSpace {
        &self.codomain
    }

    pub fn base(&self) -> &MetricSpace {
        &self.base
    }

    pub fn maps(&self) -> &[PointMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Position of the map with the given index assignment, if present.
    /// The catalog is sorted by assignment, so this is a binary search.
    pub fn position_of(&self, assignment: &[usize]) -> Option<usize> {
        self.maps
            .binary_search_by(|m| m.indices().cmp(assignment))
            .ok()
    }
}

/// Builds `[X, Y]` by enumeration. The sup distance between distinct
/// contractions is positive (they differ somewhere in a metric space),
/// and satisfies the triangle inequality pointwise, so the result is a
/// genuine metric space; it is still validated like any other.
pub fn internal_hom(
    x: &MetricSpace,
    y: &MetricSpace,
    tol: f64,
    budget: u64,
) -> Result<HomSpace, HomError> {
    let maps = enumerate_contractions(x, y, tol, budget)?;
    let n = maps.len();
    let points = (0..n)
        .map(|i| PointId::new(format!("h{i}")).expect("nonempty label"))
        .collect::<Vec<_>>();
    let mut m = DistMatrix::zeros(n);
    for a in 0..n {
        for b in (a + 1)..n {
            m.set_sym(a, b, sup_dist(y, &maps[a], &maps[b]));
        }
    }
    let base = MetricSpace::new(points, m, tol).map_err(SpaceError::from)?;
    Ok(HomSpace {
        domain: x.clone(),
        codomain: y.clone(),
        base,
        maps,
    })
}

/// `max_x d_Y(f x, g x)`; zero when the domain is empty.
fn sup_dist(y: &MetricSpace, f: &PointMap, g: &PointMap) -> ExtDist {
    let mut sup = ExtDist::ZERO;
    for (&fa, &ga) in f.indices().iter().zip(g.indices()) {
        sup = sup.max(y.dist(fa, ga));
    }
    sup
}

/// Turns a contraction `f : Z ⊗ X → Y` into the contraction
/// `Z → [X, Y]` sending `z` to the slice `x ↦ f(z, x)`.
pub fn curry(
    z: &MetricSpace,
    hom: &HomSpace,
    f: &PointMap,
    tol: f64,
) -> Result<PointMap, HomError> {
    let t = tensor(z, hom.domain())?;
    if f.source() != t.as_semi() {
        return Err(HomError::SourceMismatch {
            expected: space_signature(t.as_semi()),
            found: space_signature(f.source()),
        });
    }
    if f.target() != hom.codomain().as_semi() {
        return Err(HomError::TargetMismatch {
            expected: space_signature(hom.codomain().as_semi()),
            found: space_signature(f.target()),
        });
    }
    if !f.is_contraction(tol) {
        return Err(HomError::NotContractive);
    }
    let nx = hom.domain().len();
    let mut out = Vec::with_capacity(z.len());
    let mut slice = alloc::vec![0usize; nx];
    for zi in 0..z.len() {
        // Tensor points are laid out z-major: (z_i, x_j) sits at i·|X| + j.
        for (xi, s) in slice.iter_mut().enumerate() {
            *s = f.apply_index(zi * nx + xi);
        }
        let pos = hom
            .position_of(&slice)
            .ok_or_else(|| HomError::MissingSlice(z.point(zi).clone()))?;
        out.push(pos);
    }
    let g = PointMap::new(z.semi_arc(), hom.base().semi_arc(), out)
        .expect("catalog positions are in range");
    // d_sup(f(z,·), f(z',·)) = max_x d_Y(f(z,x), f(z',x)) ≤ d_Z(z,z') + tol.
    debug_assert!(g.is_contraction(tol.max(1e-12)));
    Ok(g)
}

/// Turns a contraction `g : Z → [X, Y]` into the contraction
/// `Z ⊗ X → Y` sending `(z, x)` to `g(z)(x)`.
pub fn uncurry(
    z: &MetricSpace,
    hom: &HomSpace,
    g: &PointMap,
    tol: f64,
) -> Result<PointMap, HomError> {
    if g.source() != z.as_semi() {
        return Err(HomError::SourceMismatch {
            expected: space_signature(z.as_semi()),
            found: space_signature(g.source()),
        });
    }
    if g.target() != hom.base().as_semi() {
        return Err(HomError::TargetMismatch {
            expected: space_signature(hom.base().as_semi()),
            found: space_signature(g.target()),
        });
    }
    if !g.is_contraction(tol) {
        return Err(HomError::NotContractive);
    }
    let t = tensor(z, hom.domain())?;
    let nx = hom.domain().len();
    let mut out = alloc::vec![0usize; t.len()];
    for zi in 0..z.len() {
        let slice = &hom.maps()[g.apply_index(zi)];
        for xi in 0..nx {
            out[zi * nx + xi] = slice.apply_index(xi);
        }
    }
    let f = PointMap::new(t.semi_arc(), hom.codomain().semi_arc(), out)
        .expect("slice indices are in range");
    // Each step goes through one slice and one sup bound, so two tol
    // slacks can stack.
    debug_assert!(f.is_contraction((2.0 * tol).max(1e-12)));
    Ok(f)
}

/// The ε-path metric applied to `[X, Y]`: hom at resolution ε.
pub fn hom_coreflection(
    x: &MetricSpace,
    y: &MetricSpace,
    eps: f64,
    tol: f64,
    budget: u64,
) -> Result<MetricSpace, HomError> {
    let hom = internal_hom(x, y, tol, budget)?;
    Ok(eps_path_metric(hom.base(), eps, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{discrete_space, discretize_segment, two_point};
    use crate::testgen;
    use proptest::prelude::*;

    const TOL: f64 = 1e-9;

    fn d(v: f64) -> ExtDist {
        ExtDist::new(v).unwrap()
    }

    #[test]
    fn singleton_domain_recovers_the_codomain() {
        let x = discrete_space(1);
        let y = discretize_segment(1.0, 0.5).unwrap().space;
        let hom = internal_hom(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        assert_eq!(hom.len(), y.len());
        // Maps are sorted by assignment, so h_i is the map hitting y_i
        // and evaluation at the single point is an isometry onto Y.
        let eval =
            PointMap::new(hom.base().semi_arc(), y.semi_arc(), (0..y.len()).collect()).unwrap();
        assert!(eval.is_isometry(0.0));
    }

    #[test]
    fn singleton_codomain_leaves_one_map() {
        let x = discretize_segment(1.0, 0.5).unwrap().space;
        let y = discrete_space(1);
        let hom = internal_hom(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        assert_eq!(hom.len(), 1);
        assert!(hom.maps()[0].indices().iter().all(|&t| t == 0));
    }

    #[test]
    fn empty_domain_has_exactly_the_empty_map() {
        let x = discrete_space(0);
        let y = two_point(d(1.0)).unwrap();
        let maps = enumerate_contractions(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        assert_eq!(maps.len(), 1);
        assert!(maps[0].indices().is_empty());
        let hom = internal_hom(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        assert_eq!(hom.base().len(), 1);
    }

    #[test]
    fn empty_codomain_has_no_maps() {
        let x = two_point(d(1.0)).unwrap();
        let y = discrete_space(0);
        let maps = enumerate_contractions(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        assert!(maps.is_empty());
        let hom = internal_hom(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        assert_eq!(hom.base().len(), 0);
    }

    #[test]
    fn infinitely_separated_domain_points_impose_nothing() {
        // Both points of the domain are free, so all |Y|² maps contract;
        // the two constants sit at sup distance exactly d_Y(y0, y1).
        let x = two_point(ExtDist::INF).unwrap();
        let y = two_point(d(1.0)).unwrap();
        let hom = internal_hom(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        assert_eq!(hom.len(), 4);
        let c0 = hom.position_of(&[0, 0]).unwrap();
        let c1 = hom.position_of(&[1, 1]).unwrap();
        assert_eq!(hom.base().dist(c0, c1), d(1.0));
    }

    #[test]
    fn expansion_is_filtered_out() {
        // x spans 1, y spans 2: only the two constants survive.
        let x = two_point(d(1.0)).unwrap();
        let y = two_point(d(2.0)).unwrap();
        let maps = enumerate_contractions(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        assert_eq!(maps.len(), 2);
        for m in &maps {
            assert_eq!(m.indices()[0], m.indices()[1]);
        }
    }

    #[test]
    fn budget_is_enforced_up_front() {
        let x = two_point(d(1.0)).unwrap();
        let y = two_point(d(2.0)).unwrap();
        assert!(matches!(
            enumerate_contractions(&x, &y, TOL, 3),
            Err(HomError::BudgetExceeded {
                candidates: 4,
                budget: 3
            })
        ));
    }

    #[test]
    fn catalog_lookup_finds_every_map() {
        let x = two_point(d(0.5)).unwrap();
        let y = discretize_segment(1.0, 0.5).unwrap().space;
        let hom = internal_hom(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        for (i, m) in hom.maps().iter().enumerate() {
            assert_eq!(hom.position_of(m.indices()), Some(i));
        }
        // s0 ↦ s2 doubles the span of x, so that assignment is absent.
        assert_eq!(hom.position_of(&[0, 2]), None, "expanding map is absent");
    }

    #[test]
    fn curry_of_a_constant_is_constant() {
        let z = two_point(d(0.5)).unwrap();
        let x = two_point(d(1.0)).unwrap();
        let y = two_point(d(1.0)).unwrap();
        let hom = internal_hom(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        let t = tensor(&z, &x).unwrap();
        let f = PointMap::new(t.semi_arc(), y.semi_arc(), alloc::vec![0; 4]).unwrap();
        let g = curry(&z, &hom, &f, TOL).unwrap();
        let c = hom.position_of(&[0, 0]).unwrap();
        assert_eq!(g.indices(), &[c, c]);
    }

    #[test]
    fn curry_rejects_mismatched_and_expanding_maps() {
        let z = two_point(d(0.5)).unwrap();
        let x = two_point(d(1.0)).unwrap();
        let y = two_point(d(1.0)).unwrap();
        let hom = internal_hom(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        let wrong = PointMap::new(z.semi_arc(), y.semi_arc(), alloc::vec![0, 0]).unwrap();
        assert!(matches!(
            curry(&z, &hom, &wrong, TOL),
            Err(HomError::SourceMismatch { .. })
        ));

        // An expanding map out of the tensor must be refused.
        let zz = two_point(d(0.25)).unwrap();
        let homz = internal_hom(&zz, &y, TOL, DEFAULT_BUDGET).unwrap();
        let t = tensor(&z, &zz).unwrap();
        let expanding = PointMap::new(t.semi_arc(), y.semi_arc(), alloc::vec![0, 1, 0, 1]).unwrap();
        assert!(matches!(
            curry(&z, &homz, &expanding, TOL),
            Err(HomError::NotContractive)
        ));
    }

    #[test]
    fn round_trips_cover_both_hom_sets() {
        // Z = X = Y = the unit two-point space: every map either way is a
        // contraction, 16 on each side, and the correspondence matches
        // them up exactly.
        let z = two_point(d(1.0)).unwrap();
        let x = two_point(d(1.0)).unwrap();
        let y = two_point(d(1.0)).unwrap();
        let hom = internal_hom(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        let t = tensor(&z, &x).unwrap();
        let from_tensor = internal_hom(&t, &y, TOL, DEFAULT_BUDGET).unwrap();
        let into_hom = internal_hom(&z, hom.base(), TOL, DEFAULT_BUDGET).unwrap();
        assert_eq!(from_tensor.len(), 16);
        assert_eq!(into_hom.len(), 16);

        let mut seen = alloc::vec![false; into_hom.len()];
        let mut correspondence = Vec::new();
        for f in from_tensor.maps() {
            let g = curry(&z, &hom, f, TOL).unwrap();
            let back = uncurry(&z, &hom, &g, TOL).unwrap();
            assert_eq!(back.indices(), f.indices());
            let j = into_hom.position_of(g.indices()).unwrap();
            assert!(!seen[j], "curry is injective");
            seen[j] = true;
            correspondence.push(j);
        }
        assert!(seen.iter().all(|&s| s), "curry is onto");

        // The correspondence preserves sup distance exactly: both sides
        // maximize the same multiset of codomain distances.
        let iso = PointMap::new(
            from_tensor.base().semi_arc(),
            into_hom.base().semi_arc(),
            correspondence,
        )
        .unwrap();
        assert!(iso.is_isometry(0.0));

        for g in into_hom.maps() {
            let f = uncurry(&z, &hom, g, TOL).unwrap();
            let again = curry(&z, &hom, &f, TOL).unwrap();
            assert_eq!(again.indices(), g.indices());
        }
    }

    #[test]
    fn coreflection_at_the_grid_step_is_the_hom_base() {
        let x = discrete_space(1);
        let y = discretize_segment(1.0, 0.25).unwrap().space;
        let hom = internal_hom(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
        let c = hom_coreflection(&x, &y, 0.25, TOL, DEFAULT_BUDGET).unwrap();
        for i in 0..c.len() {
            for j in 0..c.len() {
                assert_eq!(c.dist(i, j), hom.base().dist(i, j));
            }
        }
    }

    #[test]
    fn coreflection_below_the_grid_step_disconnects() {
        let x = discrete_space(1);
        let y = discretize_segment(1.0, 0.25).unwrap().space;
        let c = hom_coreflection(&x, &y, 0.1, TOL, DEFAULT_BUDGET).unwrap();
        for i in 0..c.len() {
            for j in 0..c.len() {
                if i != j {
                    assert_eq!(c.dist(i, j), ExtDist::INF);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn adjunction_is_a_sup_isometric_bijection(
            z in testgen::metric_space(2),
            x in testgen::metric_space(2),
            y in testgen::metric_space(3),
        ) {
            let hom = internal_hom(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
            let t = tensor(&z, &x).unwrap();
            let from_tensor = internal_hom(&t, &y, TOL, DEFAULT_BUDGET).unwrap();
            let into_hom = internal_hom(&z, hom.base(), TOL, DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(from_tensor.len(), into_hom.len());

            let mut seen = alloc::vec![false; into_hom.len()];
            let mut correspondence = Vec::with_capacity(from_tensor.len());
            for f in from_tensor.maps() {
                let g = curry(&z, &hom, f, TOL).unwrap();
                let back = uncurry(&z, &hom, &g, TOL).unwrap();
                prop_assert_eq!(back.indices(), f.indices());
                let j = into_hom.position_of(g.indices()).unwrap();
                prop_assert!(!seen[j]);
                seen[j] = true;
                correspondence.push(j);
            }
            if !from_tensor.is_empty() {
                let iso = PointMap::new(
                    from_tensor.base().semi_arc(),
                    into_hom.base().semi_arc(),
                    correspondence,
                ).unwrap();
                prop_assert!(iso.is_isometry(0.0));
            }
        }

        #[test]
        fn hom_points_are_exactly_the_contractions(
            x in testgen::metric_space(3),
            y in testgen::metric_space(3),
        ) {
            let maps = enumerate_contractions(&x, &y, TOL, DEFAULT_BUDGET).unwrap();
            for m in &maps {
                prop_assert!(m.is_contraction(TOL));
            }
            // Count against an independent direct walk over all maps.
            let mut expected = 0u64;
            let nx = x.len();
            let ny = y.len();
            let total = (ny as u64).pow(nx as u32);
            for code in 0..total {
                let mut c = code;
                let assign: Vec<usize> = (0..nx)
                    .map(|_| {
                        let t = (c % ny as u64) as usize;
                        c /= ny as u64;
                        t
                    })
                    .collect();
                let m = PointMap::new(x.semi_arc(), y.semi_arc(), assign).unwrap();
                if m.is_contraction(TOL) {
                    expected += 1;
                }
            }
            prop_assert_eq!(maps.len() as u64, expected);
        }
    }
}
