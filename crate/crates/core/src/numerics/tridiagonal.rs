//! Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for the
//! eigenvalues, inverse iteration (pivoted LU) for the eigenvectors.
//!
//! Only the lowest few eigenpairs of large matrices are ever needed here, so
//! bisection is cheaper than a full QL sweep.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    /// Unit Euclidean norm; sign fixed so the first sizeable entry is positive.
    pub vector: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::config("empty tridiagonal matrix"));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::config(format!(
                "off-diagonal length {} does not match diagonal length {}",
                off.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&off).any(|v| !v.is_finite()) {
            return Err(Error::numerical("tridiagonal matrix has non-finite entries"));
        }
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    fn norm_bound(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let pivmin = f64::EPSILON * self.norm_bound() * 1e-3 + f64::MIN_POSITIVE;
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.len() {
            if i > 0 {
                q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            }
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection to working precision.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::domain(format!(
                "eigenvalue index {k} out of range for a {}x{} matrix",
                self.len(),
                self.len()
            )));
        }
        let (glo, ghi) = self.gershgorin();
        let pad = 2.0 * f64::EPSILON * self.norm_bound() + f64::MIN_POSITIVE;
        self.bisect(k, glo - pad, ghi + pad)
    }

    fn bisect(&self, k: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
        let abs_floor = f64::EPSILON * self.norm_bound();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + abs_floor
                || mid <= lo
                || mid >= hi
            {
                return Ok(mid);
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::numerical(format!(
            "bisection for eigenvalue {k} did not converge; bracket [{lo}, {hi}]"
        )))
    }

    /// Lowest `count` eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, count: usize) -> Result<Vec<f64>> {
        if count > self.len() {
            return Err(Error::domain(format!(
                "requested {count} eigenvalues from a {}x{} matrix",
                self.len(),
                self.len()
            )));
        }
        let (glo, ghi) = self.gershgorin();
        let pad = 2.0 * f64::EPSILON * self.norm_bound() + f64::MIN_POSITIVE;
        let mut values = Vec::with_capacity(count);
        let mut lo = glo - pad;
        for k in 0..count {
            // eigenvalues are sorted, so the previous one is a valid lower bound
            let v = self.bisect(k, lo, ghi + pad)?;
            values.push(v);
            lo = lo.max(v - 4.0 * pad);
        }
        Ok(values)
    }

    /// Lowest `count` eigenpairs.
    pub fn lowest_eigenpairs(&self, count: usize) -> Result<Vec<EigenPair>> {
        let values = self.lowest_eigenvalues(count)?;
        let cluster_gap = 1e-3 * self.norm_bound();
        let mut pairs: Vec<EigenPair> = Vec::with_capacity(count);
        let mut cluster_start = 0;
        for (k, &value) in values.iter().enumerate() {
            if k > 0 && value - values[k - 1] > cluster_gap {
                cluster_start = k;
            }
            let vector = self.inverse_iteration(value, k, &pairs[cluster_start..k])?;
            pairs.push(EigenPair { value, vector });
        }
        Ok(pairs)
    }

    fn inverse_iteration(&self, value: f64, seed: usize, cluster: &[EigenPair]) -> Result<Vec<f64>> {
        let n = self.len();
        let lu = ShiftedLu::factor(self, value);
        // deterministic, non-symmetric start vector
        let mut v: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * (((i * 7919 + seed * 104_729) % 1000) as f64 / 1000.0))
            .collect();
        normalize(&mut v);
        for _ in 0..4 {
            lu.solve_in_place(&mut v);
            for other in cluster {
                let d = dot(&v, &other.vector);
                for (vi, oi) in v.iter_mut().zip(&other.vector) {
                    *vi -= d * oi;
                }
            }
            if !normalize(&mut v) {
                return Err(Error::numerical(format!(
                    "inverse iteration collapsed for eigenvalue {value} (n = {n})"
                )));
            }
        }
        let threshold = 1e-3 * v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if let Some(first) = v.iter().find(|x| x.abs() > threshold) {
            if *first < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
        Ok(v)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> bool {
    let norm = dot(v, v).sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    true
}

/// LU factorization with partial pivoting of `T - shift I` (LAPACK `dgttrf`
/// layout: one sub-diagonal multiplier, up to two super-diagonals in `U`).
struct ShiftedLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(t: &SymTridiagonal, shift: f64) -> Self {
        let n = t.len();
        let mut dl = t.off.clone();
        let mut d: Vec<f64> = t.diag.iter().map(|x| x - shift).collect();
        let mut du = t.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        // An exact eigenvalue shift makes U singular; perturb zero pivots.
        let tiny = f64::EPSILON * t.norm_bound();
        for x in d.iter_mut() {
            if x.abs() < tiny {
                *x = if *x < 0.0 { -tiny } else { tiny };
            }
        }
        Self { dl, d, du, du2, swapped }
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}
