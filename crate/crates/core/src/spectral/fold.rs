use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Branch index `k` with `t ∈ ((2k−1)π, (2k+1)π]`.
pub fn fold_index(t: f64) -> i64 {
    ((t - PI) / (2.0 * PI)).ceil() as i64
}

/// Sawtooth `t ↦ t − 2kπ` for the unique `k` with `t ∈ ((2k−1)π, (2k+1)π]`,
/// restricted to `k ∈ [k_lo − 1, k_hi]`. The result lies in `(−π, π]` and
/// satisfies `e^{i·fold(t)} = e^{it}`.
pub fn fold_scalar(t: f64, k_lo: i64, k_hi: i64) -> Result<f64> {
    let k = fold_index(t);
    if !t.is_finite() || k < k_lo - 1 || k > k_hi {
        return Err(Error::OutOfFoldRange { t, k_lo, k_hi });
    }
    Ok(t - 2.0 * k as f64 * PI)
}

/// [`fold_scalar`] over the whole real line.
pub fn fold_unbounded(t: f64) -> f64 {
    t - 2.0 * fold_index(t) as f64 * PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(fold_scalar(0.0, -1, 0).unwrap(), 0.0);
        assert!((fold_scalar(3.0 * PI, 0, 1).unwrap() - PI).abs() < 1e-15);
        assert!((fold_scalar(-PI, 0, 0).unwrap() - PI).abs() < 1e-15);
        assert!((fold_scalar(PI, 0, 0).unwrap() - PI).abs() < 1e-15);
    }

    #[test]
    fn window_is_strict() {
        // k = 2 for 4π, window tops out at k_hi = 1
        assert!(matches!(fold_scalar(4.0 * PI, 0, 1), Err(Error::OutOfFoldRange { .. })));
        // k = -2 for -4π, lowest allowed is k_lo - 1 = -1
        assert!(fold_scalar(-4.0 * PI, 0, 1).is_err());
        assert!(fold_scalar(-2.5 * PI, 0, 1).is_ok());
        assert!(fold_scalar(f64::NAN, 0, 1).is_err());
    }

    proptest! {
        #[test]
        fn fold_preserves_phase(t in -40.0f64..40.0) {
            let f = fold_unbounded(t);
            prop_assert!(f > -PI - 1e-12 && f <= PI + 1e-12);
            let (a, b) = ((f).sin_cos(), t.sin_cos());
            prop_assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
        }
    }
}
