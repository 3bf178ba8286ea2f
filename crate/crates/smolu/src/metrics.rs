//! Moments of the size distribution and error measures.
//!
//! Concentrations span many decades at late times, so every moment is
//! accumulated with compensated (Kahan) summation.

use serde::Serialize;

use crate::{Error, Result};

/// Kahan-compensated accumulator.
#[derive(Default, Clone, Copy)]
pub struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

fn weighted_sum(n: &[f64], weight: impl Fn(f64) -> f64) -> f64 {
    let mut acc = Compensated::default();
    for (idx, &v) in n.iter().enumerate() {
        let size = (idx + 1) as f64;
        acc.add(weight(size) * v);
    }
    acc.value()
}

/// Total number concentration `sum n_i`.
pub fn moment0(n: &[f64]) -> f64 {
    weighted_sum(n, |_| 1.0)
}

/// Total mass `sum i * n_i`.
pub fn moment1(n: &[f64]) -> f64 {
    weighted_sum(n, |s| s)
}

/// Second moment `sum i^2 * n_i`.
pub fn moment2(n: &[f64]) -> f64 {
    weighted_sum(n, |s| s * s)
}

/// Snapshot of the first three moments plus the mass lost past the size cap.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentReport {
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
    /// `M1(0) - M1(t)`; grows as clusters aggregate past the largest
    /// resolved size.
    pub mass_leak: f64,
}

pub fn moment_report(n: &[f64], initial_mass: f64) -> MomentReport {
    let m1 = moment1(n);
    MomentReport {
        m0: moment0(n),
        m1,
        m2: moment2(n),
        mass_leak: initial_mass - m1,
    }
}

/// Mass-weighted l1 distance `sum i * |a_i - b_i|`.
pub fn m1_error(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let mut acc = Compensated::default();
    for (idx, (&x, &y)) in a.iter().zip(b).enumerate() {
        acc.add((idx + 1) as f64 * (x - y).abs());
    }
    Ok(acc.value())
}

/// Relative deviation of second moments, `| ||a||_M2 - ||ref||_M2 | / ||ref||_M2`.
pub fn m2_relative_error(a: &[f64], reference: &[f64]) -> Result<f64> {
    if a.len() != reference.len() {
        return Err(Error::SizeMismatch {
            expected: reference.len(),
            got: a.len(),
        });
    }
    let ref_m2 = moment2(reference);
    if ref_m2 == 0.0 {
        return Err(Error::InvalidConfig(
            "second moment of the reference solution is zero".into(),
        ));
    }
    Ok((moment2(a) - ref_m2).abs() / ref_m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn m1_error_basics() {
        assert_eq!(m1_error(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        // 1*|1-0| + 2*|0-1| = 3
        assert_eq!(m1_error(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 3.0);
        assert!(m1_error(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn m2_relative_error_basics() {
        let r = vec![0.5, 0.25, 0.125];
        assert_eq!(m2_relative_error(&r, &r).unwrap(), 0.0);
        let doubled: Vec<f64> = r.iter().map(|x| 2.0 * x).collect();
        assert_relative_eq!(m2_relative_error(&doubled, &r).unwrap(), 1.0, epsilon = 1e-15);
        assert!(m2_relative_error(&r, &[0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn m1_error_is_a_norm_on_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a: Vec<f64> = (0..64).map(|_| rng.random::<f64>()).collect();
            let b: Vec<f64> = (0..64).map(|_| rng.random::<f64>()).collect();
            let c: Vec<f64> = (0..64).map(|_| rng.random::<f64>()).collect();
            let ab = m1_error(&a, &b).unwrap();
            let bc = m1_error(&b, &c).unwrap();
            let ac = m1_error(&a, &c).unwrap();
            assert!(ac <= ab + bc + 1e-12);
            assert!(ab >= 0.0);
        }
        let a = vec![0.25; 16];
        assert_eq!(m1_error(&a, &a).unwrap(), 0.0);
    }

    /// Double-double accumulation (Knuth two-sum), used as a high-precision
    /// reference for the compensated moments.
    fn dd_sum(values: impl Iterator<Item = f64>) -> f64 {
        let (mut hi, mut lo) = (0.0f64, 0.0f64);
        for x in values {
            let s = hi + x;
            let bb = s - hi;
            let err = (hi - (s - bb)) + (x - bb);
            hi = s;
            lo += err;
        }
        hi + lo
    }

    #[test]
    fn compensated_moments_match_high_precision_sum() {
        // Geometric decay over 20+ decades, the shape of a late-time
        // size distribution.
        let m = 1 << 20;
        let n: Vec<f64> = (0..m).map(|i| 0.25 * (-(i as f64) * 5e-5).exp()).collect();
        for (ours, weight) in [
            (moment0(&n), 0u32),
            (moment1(&n), 1),
            (moment2(&n), 2),
        ] {
            let exact = dd_sum(
                n.iter()
                    .enumerate()
                    .map(|(i, &v)| ((i + 1) as f64).powi(weight as i32) * v),
            );
            assert_relative_eq!(ours, exact, max_relative = 1e-14);
        }
    }
}
