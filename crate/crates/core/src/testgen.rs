//! Proptest strategies shared by the unit-test modules.
//!
//! Distances are drawn from a dyadic set so that repeated f64 additions are
//! exact and metric-level properties can be asserted without slack.

use alloc::format;
use alloc::vec::Vec;

use proptest::prelude::*;

use crate::dist::ExtDist;
use crate::morphism::PointMap;
use crate::space::{metric_repair, DistMatrix, MetricSpace, PointId, SemiMetricSpace};

pub(crate) fn dyadic(include_inf: bool) -> impl Strategy<Value = ExtDist> {
    let finite = proptest::sample::select(alloc::vec![0.25f64, 0.5, 1.0, 2.0, 4.0])
        .prop_map(|v| ExtDist::new(v).unwrap());
    if include_inf {
        prop_oneof![4 => finite, 1 => Just(ExtDist::INF)].boxed()
    } else {
        finite.boxed()
    }
}

/// A valid metric space with 1..=max_n points and dyadic distances,
/// obtained by shortest-path repair of random symmetric data.
pub(crate) fn metric_space(max_n: usize) -> impl Strategy<Value = MetricSpace> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            (
                Just(n),
                proptest::collection::vec(dyadic(true), n * (n.saturating_sub(1)) / 2),
            )
        })
        .prop_map(|(n, entries)| {
            let points = (0..n)
                .map(|i| PointId::new(format!("g{i}")).unwrap())
                .collect();
            let mut m = DistMatrix::zeros(n);
            let mut it = entries.into_iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    m.set_sym(i, j, it.next().unwrap());
                }
            }
            metric_repair(points, m, 1e-9).expect("dyadic repair yields a metric")
        })
}

/// Like [`metric_space`] but distinct points may coincide (distance zero).
pub(crate) fn semi_space(max_n: usize) -> impl Strategy<Value = SemiMetricSpace> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            let entry = prop_oneof![
                5 => dyadic(true),
                1 => Just(ExtDist::ZERO),
            ];
            (
                Just(n),
                proptest::collection::vec(entry, n * (n.saturating_sub(1)) / 2),
            )
        })
        .prop_map(|(n, entries)| {
            let points = (0..n)
                .map(|i| PointId::new(format!("g{i}")).unwrap())
                .collect::<Vec<_>>();
            let mut m = DistMatrix::zeros(n);
            let mut it = entries.into_iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    m.set_sym(i, j, it.next().unwrap());
                }
            }
            // Shortest-path closure keeps zero entries, so this stays a
            // semi-metric rather than a metric.
            m.close_triangles();
            SemiMetricSpace::new(points, m, 1e-9).expect("closure yields a semi-metric")
        })
}

/// Two spaces plus an arbitrary point map between them.
pub(crate) fn map_between(
    max_n: usize,
) -> impl Strategy<Value = (MetricSpace, MetricSpace, PointMap)> {
    (metric_space(max_n), metric_space(max_n))
        .prop_flat_map(|(x, y)| {
            let nx = x.len();
            let ny = y.len();
            (Just(x), Just(y), proptest::collection::vec(0..ny, nx))
        })
        .prop_map(|(x, y, map)| {
            let f = PointMap::new(x.semi_arc(), y.semi_arc(), map).unwrap();
            (x, y, f)
        })
}
