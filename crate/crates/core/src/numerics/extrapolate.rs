//! Richardson-type extrapolation helpers.

/// Two-point Richardson extrapolation for an error `~ C h^order`, where the
/// fine value was computed with step `h / ratio`.
pub fn richardson(coarse: f64, fine: f64, ratio: f64, order: f64) -> f64 {
    let factor = ratio.powf(order);
    fine + (fine - coarse) / (factor - 1.0)
}

/// Observed convergence order from three solutions on successively refined
/// grids with constant refinement `ratio`. `None` if the differences do not
/// share a sign (no asymptotic regime).
pub fn observed_order(coarse: f64, medium: f64, fine: f64, ratio: f64) -> Option<f64> {
    let d1 = coarse - medium;
    let d2 = medium - fine;
    if d1 == 0.0 || d2 == 0.0 || d1.signum() != d2.signum() {
        return None;
    }
    Some((d1 / d2).ln() / ratio.ln())
}

/// Neville-Aitken evaluation at `x = 0` of the interpolating polynomial through
/// `(xs[i], ys[i])`; the classical Richardson tableau for an arbitrary step
/// sequence.
pub fn polynomial_limit_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(!xs.is_empty());
    let mut p = ys.to_vec();
    let n = xs.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_removes_quadratic_error() {
        let f = |h: f64| 3.0 + 0.7 * h * h;
        assert!((richardson(f(0.2), f(0.1), 2.0, 2.0) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn observed_order_of_quadratic_sequence() {
        let f = |h: f64| 1.0 + 5.0 * h * h;
        let p = observed_order(f(0.4), f(0.2), f(0.1), 2.0).unwrap();
        assert!((p - 2.0).abs() < 1e-10);
    }

    #[test]
    fn neville_recovers_polynomial_constant() {
        let xs = [1e-2, 5e-3, 2.5e-3];
        let ys: Vec<f64> = xs.iter().map(|x| 0.25 - 3.0 * x + 11.0 * x * x).collect();
        assert!((polynomial_limit_at_zero(&xs, &ys) - 0.25).abs() < 1e-13);
    }
}
