//! Ground-truth references: direct `O(M^2)` operator evaluation, the
//! analytic constant-kernel solution, and a dense SVD block oracle.
//!
//! Everything here is deliberately slow and simple. These routines never
//! run on the fast path; they exist so the compressed-kernel operators and
//! the time integration have something independent to be checked against.

use nalgebra::DMatrix;

use crate::kernels::KernelSpec;
use crate::{Error, Result};

/// Hard cap on the system size for the direct operators.
const DIRECT_SIZE_CAP: usize = 1 << 13;

/// Hard cap on the block side for dense SVD materialization.
const SVD_SIDE_CAP: usize = 512;

fn guard_size(m: usize) -> Result<()> {
    if m > DIRECT_SIZE_CAP {
        return Err(Error::SizeGuard(format!(
            "direct evaluation capped at M = {DIRECT_SIZE_CAP}, got {m}"
        )));
    }
    Ok(())
}

/// Gain term by the direct double loop over an arbitrary element source,
/// truncated at the system size. Slot `s-1` holds the production rate of
/// size `s`; sizes start at 1, so slot 0 is always zero.
pub fn direct_gain_with(element: impl Fn(u64, u64) -> f64, n: &[f64]) -> Vec<f64> {
    let m = n.len();
    let mut out = vec![0.0; m];
    for i in 1..=m {
        for j in 1..=(m.saturating_sub(i)) {
            let s = i + j;
            out[s - 1] += 0.5 * element(i as u64, j as u64) * n[i - 1] * n[j - 1];
        }
    }
    out
}

/// Untruncated gain term; the result has length `2M` so that the largest
/// production channel `i = j = M` (size `2M`) is retained.
pub fn direct_gain_full_with(element: impl Fn(u64, u64) -> f64, n: &[f64]) -> Vec<f64> {
    let m = n.len();
    let mut out = vec![0.0; 2 * m];
    for i in 1..=m {
        for j in 1..=m {
            let s = i + j;
            out[s - 1] += 0.5 * element(i as u64, j as u64) * n[i - 1] * n[j - 1];
        }
    }
    out
}

/// Loss term by the direct double loop: `n_s * sum_j K(s, j) n_j`.
pub fn direct_loss_with(element: impl Fn(u64, u64) -> f64, n: &[f64]) -> Vec<f64> {
    let m = n.len();
    let mut out = vec![0.0; m];
    for s in 1..=m {
        let mut acc = 0.0;
        for j in 1..=m {
            acc += element(s as u64, j as u64) * n[j - 1];
        }
        out[s - 1] = n[s - 1] * acc;
    }
    out
}

/// Direct gain term with exact kernel values.
pub fn direct_gain(spec: &KernelSpec, n: &[f64]) -> Result<Vec<f64>> {
    guard_size(n.len())?;
    Ok(direct_gain_with(|i, j| spec.eval_unchecked(i, j), n))
}

/// Direct untruncated gain term with exact kernel values.
pub fn direct_gain_full(spec: &KernelSpec, n: &[f64]) -> Result<Vec<f64>> {
    guard_size(n.len())?;
    Ok(direct_gain_full_with(|i, j| spec.eval_unchecked(i, j), n))
}

/// Direct loss term with exact kernel values.
pub fn direct_loss(spec: &KernelSpec, n: &[f64]) -> Result<Vec<f64>> {
    guard_size(n.len())?;
    Ok(direct_loss_with(|i, j| spec.eval_unchecked(i, j), n))
}

/// Direct right-hand side `gain - loss` with exact kernel values.
pub fn direct_rhs(spec: &KernelSpec, n: &[f64]) -> Result<Vec<f64>> {
    let gain = direct_gain(spec, n)?;
    let loss = direct_loss(spec, n)?;
    Ok(gain.iter().zip(&loss).map(|(g, l)| g - l).collect())
}

/// Concentration of size-`k` clusters under the constant kernel (rate 2)
/// with monodisperse initial data:
/// `n_k(t) = (1 + t)^{-2} exp(-(k - 1) ln(1 + 1/t))`.
pub fn analytic_constant_solution(k: u64, t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::Domain(format!(
            "analytic solution defined for t > 0, got {t}"
        )));
    }
    if k < 1 {
        return Err(Error::Domain("size index must be >= 1".into()));
    }
    let decay = (1.0 + 1.0 / t).ln();
    Ok((1.0 + t).powi(-2) * (-((k - 1) as f64) * decay).exp())
}

/// The analytic solution tabulated over sizes `1..=m`.
pub fn analytic_constant_vector(m: usize, t: f64) -> Result<Vec<f64>> {
    (1..=m as u64)
        .map(|k| analytic_constant_solution(k, t))
        .collect()
}

/// Frobenius error of the best rank-`r` approximation of a generated
/// block, via a dense SVD: `sqrt(sigma_{r+1}^2 + ... + sigma_m^2)`.
pub fn svd_block_error(side: usize, element: impl Fn(usize, usize) -> f64, r: usize) -> Result<f64> {
    if side > SVD_SIDE_CAP {
        return Err(Error::SizeGuard(format!(
            "SVD oracle capped at side {SVD_SIDE_CAP}, got {side}"
        )));
    }
    let a = DMatrix::from_fn(side, side, |i, j| element(i, j));
    let svd = a.svd(false, false);
    let mut tail = 0.0;
    for (idx, sigma) in svd.singular_values.iter().enumerate() {
        if idx >= r {
            tail += sigma * sigma;
        }
    }
    Ok(tail.sqrt())
}
