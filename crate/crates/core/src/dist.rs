//! Distance values in `[0, ∞]`.
//!
//! [`ExtDist`] wraps an `f64` that is either finite and non-negative or
//! `+∞`. NaN and negative values are rejected at construction, so the type
//! carries a total order and addition never produces NaN (there is no
//! subtraction). Addition saturates at infinity.

use core::cmp::Ordering;
use core::fmt;
use core::iter::Sum;
use core::ops::Add;

/// Default absolute tolerance for cross-module equality and axiom checks.
///
/// Checks apply the tolerance to defining inequalities (e.g. the triangle
/// inequality, the contraction inequality), not to derived ratios.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A distance: a non-negative finite real or `+∞`. Never NaN, never `-0.0`.
#[derive(Clone, Copy, PartialEq)]
pub struct ExtDist(f64);

impl ExtDist {
    pub const ZERO: ExtDist = ExtDist(0.0);
    pub const INF: ExtDist = ExtDist(f64::INFINITY);

    /// Accepts any non-negative real or `+∞`; rejects NaN, negatives, `-∞`.
    pub fn new(value: f64) -> Result<Self, DistError> {
        if value.is_nan() || value < 0.0 {
            return Err(DistError::InvalidValue(value));
        }
        // Normalize -0.0 (which passes `< 0.0`) so Eq/Ord see one zero.
        Ok(ExtDist(if value == 0.0 { 0.0 } else { value }))
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0 == f64::INFINITY
    }

    /// The raw value; `f64::INFINITY` for the infinite distance.
    pub fn as_f64(self) -> f64 {
        self.0
    }

    /// Minimum of a collection; the empty minimum is `∞`.
    pub fn min_of<I: IntoIterator<Item = ExtDist>>(values: I) -> ExtDist {
        values
            .into_iter()
            .fold(ExtDist::INF, |acc, v| if v < acc { v } else { acc })
    }

    pub fn min(self, other: ExtDist) -> ExtDist {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: ExtDist) -> ExtDist {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Scaling by a finite factor `c > 0`; `c · ∞ = ∞`.
    ///
    /// Zero, negative, NaN and infinite factors are rejected: they would
    /// break monotonicity or produce `0 · ∞`.
    pub fn scale(self, factor: f64) -> Result<ExtDist, DistError> {
        if !factor.is_finite() || factor <= 0.0 {
            return Err(DistError::InvalidScale(factor));
        }
        Ok(ExtDist(self.0 * factor))
    }

    /// `|self − other| ≤ tol`, where `∞` is only close to `∞`.
    pub fn approx_eq(self, other: ExtDist, tol: f64) -> bool {
        match (self.is_finite(), other.is_finite()) {
            (true, true) => (self.0 - other.0).abs() <= tol,
            (false, false) => true,
            _ => false,
        }
    }
}

impl Eq for ExtDist {}

impl PartialOrd for ExtDist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtDist {
    fn cmp(&self, other: &Self) -> Ordering {
        // No NaN and no -0.0 by invariant, so total_cmp is numeric order.
        self.0.total_cmp(&other.0)
    }
}

impl Add for ExtDist {
    type Output = ExtDist;

    /// Saturating: `∞ + x = ∞`. Finite overflow also saturates to `∞`.
    fn add(self, rhs: ExtDist) -> ExtDist {
        ExtDist(self.0 + rhs.0)
    }
}

impl Sum for ExtDist {
    fn sum<I: Iterator<Item = ExtDist>>(iter: I) -> ExtDist {
        iter.fold(ExtDist::ZERO, |a, b| a + b)
    }
}

impl TryFrom<f64> for ExtDist {
    type Error = DistError;

    fn try_from(value: f64) -> Result<Self, DistError> {
        ExtDist::new(value)
    }
}

impl fmt::Display for ExtDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Debug for ExtDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtDist({})", self)
    }
}

/// Rejected distance values and scale factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistError {
    /// NaN or negative.
    InvalidValue(f64),
    /// Scale factors must be finite and strictly positive.
    InvalidScale(f64),
}

impl fmt::Display for DistError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistError::InvalidValue(v) => {
                write!(f, "invalid distance {v}: must be >= 0 or inf")
            }
            DistError::InvalidScale(c) => {
                write!(f, "invalid scale factor {c}: must be finite and > 0")
            }
        }
    }
}

impl core::error::Error for DistError {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(v: f64) -> ExtDist {
        ExtDist::new(v).unwrap()
    }

    #[test]
    fn construction_rejects_nan_and_negatives() {
        assert!(ExtDist::new(f64::NAN).is_err());
        assert!(ExtDist::new(-1.0).is_err());
        assert!(ExtDist::new(f64::NEG_INFINITY).is_err());
        assert!(ExtDist::new(0.0).is_ok());
        assert!(ExtDist::new(f64::INFINITY).is_ok());
    }

    #[test]
    fn negative_zero_is_normalized() {
        let z = ExtDist::new(-0.0).unwrap();
        assert_eq!(z, ExtDist::ZERO);
        assert!(z.as_f64().is_sign_positive());
    }

    #[test]
    fn addition_saturates_at_infinity() {
        assert_eq!(ExtDist::INF + d(3.0), ExtDist::INF);
        assert_eq!(d(3.0) + ExtDist::INF, ExtDist::INF);
        assert_eq!(ExtDist::INF + ExtDist::INF, ExtDist::INF);
        assert_eq!(d(f64::MAX) + d(f64::MAX), ExtDist::INF);
    }

    #[test]
    fn min_of_empty_is_infinite() {
        assert_eq!(ExtDist::min_of([]), ExtDist::INF);
        assert_eq!(ExtDist::min_of([ExtDist::INF, d(2.0), d(5.0)]), d(2.0));
    }

    #[test]
    fn scaling_requires_positive_finite_factor() {
        assert_eq!(ExtDist::INF.scale(2.0).unwrap(), ExtDist::INF);
        assert_eq!(d(2.0).scale(0.5).unwrap(), d(1.0));
        assert!(d(1.0).scale(0.0).is_err());
        assert!(d(1.0).scale(-1.0).is_err());
        assert!(d(1.0).scale(f64::NAN).is_err());
        assert!(d(1.0).scale(f64::INFINITY).is_err());
    }

    #[test]
    fn finite_below_infinite_in_total_order() {
        assert!(d(1e300) < ExtDist::INF);
        assert!(ExtDist::ZERO < d(1e-300));
        assert_eq!(ExtDist::INF.cmp(&ExtDist::INF), core::cmp::Ordering::Equal);
    }

    #[test]
    fn display_uses_inf_token() {
        extern crate std;
        use std::string::ToString;
        assert_eq!(ExtDist::INF.to_string(), "inf");
        assert_eq!(d(0.25).to_string(), "0.25");
    }

    fn arb_dist() -> impl Strategy<Value = ExtDist> {
        prop_oneof![
            8 => (0.0..1e6f64).prop_map(|v| ExtDist::new(v).unwrap()),
            1 => Just(ExtDist::ZERO),
            1 => Just(ExtDist::INF),
        ]
    }

    proptest! {
        #[test]
        fn addition_commutes(a in arb_dist(), b in arb_dist()) {
            prop_assert_eq!(a + b, b + a);
        }

        #[test]
        fn addition_associates_within_tol(a in arb_dist(), b in arb_dist(), c in arb_dist()) {
            prop_assert!(((a + b) + c).approx_eq(a + (b + c), 1e-6));
        }

        #[test]
        fn addition_is_monotone(a in arb_dist(), b in arb_dist(), c in arb_dist()) {
            if a <= b {
                prop_assert!(a + c <= b + c);
            }
        }

        #[test]
        fn min_of_is_a_lower_bound(values in proptest::collection::vec(arb_dist(), 0..8)) {
            let m = ExtDist::min_of(values.iter().copied());
            for v in &values {
                prop_assert!(m <= *v);
            }
            if !values.is_empty() {
                prop_assert!(values.contains(&m));
            } else {
                prop_assert_eq!(m, ExtDist::INF);
            }
        }

        #[test]
        fn scaling_is_monotone(a in arb_dist(), b in arb_dist(), c in 1e-3..1e3f64) {
            if a <= b {
                prop_assert!(a.scale(c).unwrap() <= b.scale(c).unwrap());
            }
        }
    }
}
