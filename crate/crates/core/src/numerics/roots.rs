//! Bracketed root finding: false position with Illinois weighting, safeguarded
//! by bisection whenever the bracket stops shrinking fast enough.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Absolute tolerance on the bracket width. Zero runs until no float
    /// lies strictly inside the bracket.
    pub abs_tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-12, max_iter: 200 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

/// Finds a root of `f` inside `[a, b]`, which must bracket a sign change.
pub fn find_root<F>(f: F, a: f64, b: f64, opts: RootOptions) -> Result<Root>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if !flo.is_finite() || !fhi.is_finite() {
        return Err(Error::numerical(format!(
            "non-finite function value at bracket ends: f({lo}) = {flo}, f({hi}) = {fhi}"
        )));
    }
    if flo == 0.0 {
        return Ok(Root { x: lo, fx: 0.0, iterations: 0 });
    }
    if fhi == 0.0 {
        return Ok(Root { x: hi, fx: 0.0, iterations: 0 });
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::numerical(format!(
            "no sign change on [{lo}, {hi}]: f(lo) = {flo}, f(hi) = {fhi}"
        )));
    }

    // Illinois-weighted copies drive the secant; the true values pick the
    // returned endpoint
    let (mut wlo, mut whi) = (flo, fhi);
    // which end was retained on the previous step (-1 lo, +1 hi)
    let mut last_kept = 0i8;
    let mut width_two_steps_ago = hi - lo;
    let mut width_prev = hi - lo;

    for iter in 1..=opts.max_iter {
        let width = hi - lo;
        let mid = lo + 0.5 * width;
        if width <= opts.abs_tol || mid <= lo || mid >= hi {
            let (x, fx) = if flo.abs() <= fhi.abs() { (lo, flo) } else { (hi, fhi) };
            return Ok(Root { x, fx, iterations: iter - 1 });
        }

        let mut x = (lo * whi - hi * wlo) / (whi - wlo);
        // Bisect if the secant leaves the bracket or the bracket has not
        // halved over the last two steps.
        if !(x > lo && x < hi) || width > 0.5 * width_two_steps_ago {
            x = mid;
        }
        if x <= lo || x >= hi {
            x = mid;
        }
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::numerical(format!("non-finite f({x}) = {fx}")));
        }
        if fx == 0.0 {
            return Ok(Root { x, fx, iterations: iter });
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
            wlo = fx;
            if last_kept == 1 {
                whi *= 0.5;
            }
            last_kept = 1;
        } else {
            hi = x;
            fhi = fx;
            whi = fx;
            if last_kept == -1 {
                wlo *= 0.5;
            }
            last_kept = -1;
        }
        width_two_steps_ago = width_prev;
        width_prev = width;
    }

    Err(Error::numerical(format!(
        "root finder did not converge in {} iterations; last bracket [{lo}, {hi}]",
        opts.max_iter
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = find_root(|x| x * x - 2.0, 0.0, 2.0, RootOptions::default()).unwrap();
        assert!((r.x - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn steep_tangent_near_pole() {
        let r = find_root(
            |x: f64| x * x.tan() - 40.0,
            0.1,
            std::f64::consts::FRAC_PI_2 - 1e-12,
            RootOptions::default(),
        )
        .unwrap();
        assert!((r.x * r.x.tan() - 40.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_missing_sign_change() {
        let err = find_root(|x| x * x + 1.0, -1.0, 1.0, RootOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Numerical(_)));
    }
}
