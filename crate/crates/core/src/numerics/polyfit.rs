/// Least-squares quadratic `c0 + c1 x + c2 x^2` through the samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    pub coefficients: [f64; 3],
    /// Root-mean-square residual of the fit.
    pub rms_residual: f64,
}

pub fn fit_quadratic(xs: &[f64], ys: &[f64]) -> Option<QuadraticFit> {
    if xs.len() != ys.len() || xs.len() < 3 {
        return None;
    }
    // Centre the ordinates; the constant term dominates for deep wells.
    let y_ref = ys[ys.len() / 2];
    let scale = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    let mut m = [[0.0f64; 4]; 3];
    for (&x, &y) in xs.iter().zip(ys) {
        let t = x / scale;
        let basis = [1.0, t, t * t];
        for r in 0..3 {
            for c in 0..3 {
                m[r][c] += basis[r] * basis[c];
            }
            m[r][3] += basis[r] * (y - y_ref);
        }
    }
    // Gaussian elimination with partial pivoting on the 3x4 augmented system.
    for col in 0..3 {
        let pivot = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[pivot][col] == 0.0 {
            return None;
        }
        m.swap(col, pivot);
        for r in col + 1..3 {
            let factor = m[r][col] / m[col][col];
            let pivot_row = m[col];
            for (dst, src) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= factor * src;
            }
        }
    }
    let mut c = [0.0f64; 3];
    for r in (0..3).rev() {
        let mut acc = m[r][3];
        for k in r + 1..3 {
            acc -= m[r][k] * c[k];
        }
        c[r] = acc / m[r][r];
    }
    c[0] += y_ref;
    c[1] /= scale;
    c[2] /= scale * scale;

    let ss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let r = y - (c[0] + c[1] * x + c[2] * x * x);
            r * r
        })
        .sum();
    Some(QuadraticFit { coefficients: c, rms_residual: (ss / xs.len() as f64).sqrt() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_parabola() {
        let xs = [-1e-2, -5e-3, 0.0, 5e-3, 1e-2];
        let ys: Vec<f64> = xs.iter().map(|x| -11.5 + 0.1 * x - 0.047 * x * x).collect();
        let fit = fit_quadratic(&xs, &ys).unwrap();
        assert!((fit.coefficients[0] + 11.5).abs() < 1e-12);
        assert!((fit.coefficients[1] - 0.1).abs() < 1e-9);
        assert!((fit.coefficients[2] + 0.047).abs() < 1e-6);
    }
}
