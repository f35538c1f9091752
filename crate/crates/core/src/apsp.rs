//! All-pairs shortest-path closure (Floyd–Warshall) over extended distances.
//!
//! This is the workhorse behind quotient semi-metrics, ε-path metrics and
//! metric repair. Weights are non-negative, so no negative-cycle handling is
//! needed; `∞` entries behave correctly because addition saturates.

use crate::dist::ExtDist;

/// Closes `m` (a row-major `n × n` matrix) under the triangle inequality:
/// afterwards `m[i][j]` is the cheapest sum of entries along any chain from
/// `i` to `j`.
pub(crate) fn closure(m: &mut [ExtDist], n: usize) {
    debug_assert_eq!(m.len(), n * n);
    for k in 0..n {
        for i in 0..n {
            let ik = m[i * n + k];
            if ik.is_infinite() {
                continue;
            }
            let (row_i, row_k) = if i < k {
                let (a, b) = m.split_at_mut(k * n);
                (&mut a[i * n..i * n + n], &b[..n])
            } else if i > k {
                let (a, b) = m.split_at_mut(i * n);
                (&mut b[..n], &a[k * n..k * n + n])
            } else {
                continue;
            };
            for j in 0..n {
                let via = ik + row_k[j];
                if via < row_i[j] {
                    row_i[j] = via;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn d(v: f64) -> ExtDist {
        ExtDist::new(v).unwrap()
    }

    #[test]
    fn closure_finds_two_leg_shortcut() {
        let inf = ExtDist::INF;
        let z = ExtDist::ZERO;
        // 0 -1- 1 -1- 2, direct 0-2 missing
        let mut m = vec![
            z,
            d(1.0),
            inf, //
            d(1.0),
            z,
            d(1.0), //
            inf,
            d(1.0),
            z,
        ];
        closure(&mut m, 3);
        assert_eq!(m[2], d(2.0));
        assert_eq!(m[6], d(2.0));
    }

    #[test]
    fn closure_leaves_disconnected_pairs_infinite() {
        let inf = ExtDist::INF;
        let z = ExtDist::ZERO;
        let mut m = vec![
            z, inf, //
            inf, z,
        ];
        closure(&mut m, 2);
        assert_eq!(m[1], inf);
    }

    #[test]
    fn closure_is_idempotent_on_exact_values() {
        let z = ExtDist::ZERO;
        let mut m = vec![
            z,
            d(0.5),
            d(2.0), //
            d(0.5),
            z,
            d(0.25), //
            d(2.0),
            d(0.25),
            z,
        ];
        closure(&mut m, 3);
        let once = m.clone();
        closure(&mut m, 3);
        assert_eq!(m, once);
    }
}
