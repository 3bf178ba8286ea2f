//! Registry of coagulation kernels.
//!
//! A kernel is a symmetric, non-negative rate `K(i, j)` defined for
//! positive integer cluster sizes. Some kernels carry a piecewise
//! definition with a separate diagonal branch (the off-diagonal formula
//! would be singular at `i = j`); those register a diagonal override.
//! Symmetry is enforced structurally: every evaluation canonicalizes the
//! argument order to `(min, max)` so `K(i, j)` and `K(j, i)` run the exact
//! same floating-point instructions.

use std::collections::BTreeMap;

use crate::{Error, Result};

type OffDiag = fn(f64, f64, f64) -> f64;
type Diag = fn(f64, f64) -> f64;

struct KernelDef {
    name: &'static str,
    /// One-line description for CLI listings.
    blurb: &'static str,
    off_diag: OffDiag,
    diag_override: Option<Diag>,
    /// Optional named constant with its default value.
    param: Option<(&'static str, f64)>,
}

/// Shared diagonal branch of the piecewise kernels: at `i = j` the rate is
/// `(i^{1/3} + j^{1/3})(i^{-1/3} + j^{-1/3})`, which collapses to 4.
fn diag_collapsed(i: f64, _c: f64) -> f64 {
    let c = i.cbrt();
    let r = 1.0 / c;
    (c + c) * (r + r)
}

fn constant(_i: f64, _j: f64, value: f64) -> f64 {
    value
}

/// Aggregation of particles carried by a stream.
fn flow(i: f64, j: f64, _c: f64) -> f64 {
    let (ci, cj) = (i.cbrt(), j.cbrt());
    let s = ci + cj;
    s * s * (ci * ci - cj * cj).abs()
}

/// Rate with an `(i j)^{-5/9} / |i^{2/3} - j^{2/3}|` profile; formally full
/// rank, the motivating hard case for the block low-rank format.
fn baikal(i: f64, j: f64, _c: f64) -> f64 {
    let (ci, cj) = (i.cbrt(), j.cbrt());
    (i + j) * (ci + cj).powf(2.0 / 3.0) / ((i * j).powf(5.0 / 9.0) * (ci * ci - cj * cj).abs())
}

fn flux_erf(i: f64, j: f64, _c: f64) -> f64 {
    let (ci, cj) = (i.cbrt(), j.cbrt());
    let s = ci + cj;
    let d = (ci * ci - cj * cj).abs();
    s * s * d * libm::erf(d / s.sqrt())
}

fn flux_exp(i: f64, j: f64, _c: f64) -> f64 {
    let (ci, cj) = (i.cbrt(), j.cbrt());
    let s = ci + cj;
    let d = ci * ci - cj * cj;
    s.powf(2.5) * (-(d * d) / s).exp()
}

fn emulsion(i: f64, j: f64, c: f64) -> f64 {
    let (ci, cj) = (i.cbrt(), j.cbrt());
    let ratio = ci * cj / (ci + cj);
    let r2 = ratio * ratio;
    (ci * ci + cj * cj) * (i.powf(2.0 / 9.0) + j.powf(2.0 / 9.0)).sqrt() * (-c * r2 * r2).exp()
}

fn ballistic(i: f64, j: f64, _c: f64) -> f64 {
    let s = i.cbrt() + j.cbrt();
    s * s * (1.0 / i + 1.0 / j).sqrt()
}

fn modified_ballistic(i: f64, j: f64, _c: f64) -> f64 {
    let s = i.cbrt() + j.cbrt();
    s * s * (1.0 / i - 1.0 / j).abs()
}

fn hydrodynamic(i: f64, j: f64, _c: f64) -> f64 {
    let (ci, cj) = (i.cbrt(), j.cbrt());
    ci * ci * cj * cj / (ci + cj)
}

fn fluid_exp(i: f64, j: f64, c: f64) -> f64 {
    let (ci, cj) = (i.cbrt(), j.cbrt());
    let s = ci + cj;
    let g = ci * cj;
    s * s * g.sqrt() * (-c * g.cbrt()).exp()
}

fn fluid_sqrt(i: f64, j: f64, _c: f64) -> f64 {
    let (ci, cj) = (i.cbrt(), j.cbrt());
    let s = ci + cj;
    s * s * (ci * ci + cj * cj).sqrt()
}

static REGISTRY: &[KernelDef] = &[
    KernelDef {
        name: "constant",
        blurb: "constant rate (analytic benchmark kernel)",
        off_diag: constant,
        diag_override: None,
        param: Some(("value", 2.0)),
    },
    KernelDef {
        name: "flow",
        blurb: "aggregation within a flow",
        off_diag: flow,
        diag_override: Some(diag_collapsed),
        param: None,
    },
    KernelDef {
        name: "baikal",
        blurb: "sedimentation-driven coagulation, full-rank baseline",
        off_diag: baikal,
        diag_override: Some(diag_collapsed),
        param: None,
    },
    KernelDef {
        name: "flux-erf",
        blurb: "modified flux reaction rates (erf damping)",
        off_diag: flux_erf,
        diag_override: None,
        param: None,
    },
    KernelDef {
        name: "flux-exp",
        blurb: "modified flux reaction rates (gaussian damping)",
        off_diag: flux_exp,
        diag_override: None,
        param: None,
    },
    KernelDef {
        name: "emulsion",
        blurb: "emulsion coalescence",
        off_diag: emulsion,
        diag_override: None,
        param: Some(("c", 1.0)),
    },
    KernelDef {
        name: "ballistic",
        blurb: "ballistic collisions",
        off_diag: ballistic,
        diag_override: None,
        param: None,
    },
    KernelDef {
        name: "modified-ballistic",
        blurb: "modified ballistic collisions",
        off_diag: modified_ballistic,
        diag_override: None,
        param: None,
    },
    KernelDef {
        name: "hydrodynamic",
        blurb: "hydrodynamic interaction",
        off_diag: hydrodynamic,
        diag_override: None,
        param: None,
    },
    KernelDef {
        name: "fluid-exp",
        blurb: "coalescence of fluid particles (damped)",
        off_diag: fluid_exp,
        diag_override: None,
        param: Some(("c", 1.0)),
    },
    KernelDef {
        name: "fluid-sqrt",
        blurb: "coalescence of fluid particles",
        off_diag: fluid_sqrt,
        diag_override: None,
        param: None,
    },
];

/// A named coagulation kernel with its resolved parameters.
///
/// Immutable after construction; `eval` is pure and callable from any
/// number of threads.
#[derive(Clone)]
pub struct KernelSpec {
    def: &'static KernelDef,
    param_value: f64,
}

impl KernelSpec {
    pub fn name(&self) -> &'static str {
        self.def.name
    }

    pub fn blurb(&self) -> &'static str {
        self.def.blurb
    }

    /// Resolved parameter map (empty for parameter-free kernels).
    pub fn params(&self) -> BTreeMap<String, f64> {
        self.def
            .param
            .iter()
            .map(|(k, _)| (k.to_string(), self.param_value))
            .collect()
    }

    /// Kernel value for cluster sizes `i, j >= 1`.
    pub fn eval(&self, i: u64, j: u64) -> Result<f64> {
        if i < 1 || j < 1 {
            return Err(Error::Domain(format!(
                "kernel arguments must be >= 1, got ({i}, {j})"
            )));
        }
        Ok(self.eval_unchecked(i, j))
    }

    /// Unchecked evaluation; callers guarantee `i, j >= 1`.
    #[inline]
    pub fn eval_unchecked(&self, i: u64, j: u64) -> f64 {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        if lo == hi {
            if let Some(diag) = self.def.diag_override {
                return diag(lo as f64, self.param_value);
            }
        }
        (self.def.off_diag)(lo as f64, hi as f64, self.param_value)
    }
}

impl std::fmt::Debug for KernelSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KernelSpec")
            .field("name", &self.def.name)
            .field("params", &self.params())
            .finish()
    }
}

/// Names of all registered kernels.
pub fn registry_list() -> Vec<&'static str> {
    REGISTRY.iter().map(|d| d.name).collect()
}

/// One-line description per registered kernel, for CLI listings.
pub fn registry_blurbs() -> Vec<(&'static str, &'static str)> {
    REGISTRY.iter().map(|d| (d.name, d.blurb)).collect()
}

/// Look up a kernel by name and resolve its parameters.
///
/// `params` may set the kernel's named constant (e.g. `c=2` for the
/// emulsion kernel); unknown keys are rejected.
pub fn kernel_by_name(name: &str, params: &BTreeMap<String, f64>) -> Result<KernelSpec> {
    let def = REGISTRY
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::UnknownKernel {
            name: name.to_string(),
            available: registry_list(),
        })?;
    let mut param_value = def.param.map(|(_, v)| v).unwrap_or(0.0);
    for (key, value) in params {
        match def.param {
            Some((pname, _)) if pname == key => {
                if !value.is_finite() {
                    return Err(Error::BadParam(format!("{key} = {value} is not finite")));
                }
                param_value = *value;
            }
            _ => {
                return Err(Error::BadParam(format!(
                    "kernel '{name}' does not accept parameter '{key}'"
                )))
            }
        }
    }
    Ok(KernelSpec { def, param_value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn get(name: &str) -> KernelSpec {
        kernel_by_name(name, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn constant_kernel_value() {
        let k = get("constant");
        assert_eq!(k.eval(5, 9).unwrap(), 2.0);
        assert_eq!(k.eval(1, 1).unwrap(), 2.0);
    }

    #[test]
    fn flow_off_diagonal_value() {
        // (1 + 2)^2 * |1 - 4| = 27
        let k = get("flow");
        assert_eq!(k.eval(1, 8).unwrap(), 27.0);
    }

    #[test]
    fn piecewise_diagonal_branch() {
        // (i^{1/3}+j^{1/3})(i^{-1/3}+j^{-1/3}) collapses to 4 at i = j.
        assert_eq!(get("flow").eval(1, 1).unwrap(), 4.0);
        assert_eq!(get("baikal").eval(1, 1).unwrap(), 4.0);
        assert_eq!(get("baikal").eval(100, 100).unwrap(), 4.0);
    }

    #[test]
    fn domain_error_below_one() {
        let k = get("constant");
        assert!(matches!(k.eval(0, 5), Err(Error::Domain(_))));
        assert!(matches!(k.eval(5, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn registry_contains_required_entries() {
        let names = registry_list();
        for required in ["constant", "baikal", "ballistic", "flow"] {
            assert!(names.contains(&required), "missing {required}");
        }
        assert_eq!(names.len(), 11);
    }

    #[test]
    fn unknown_kernel_lists_registry() {
        match kernel_by_name("nope", &BTreeMap::new()) {
            Err(Error::UnknownKernel { available, .. }) => {
                assert_eq!(available, registry_list())
            }
            other => panic!("expected UnknownKernel, got {other:?}"),
        }
    }

    #[test]
    fn parameter_resolution() {
        let mut p = BTreeMap::new();
        p.insert("value".to_string(), 7.0);
        let k = kernel_by_name("constant", &p).unwrap();
        assert_eq!(k.eval(3, 4).unwrap(), 7.0);

        let mut bad = BTreeMap::new();
        bad.insert("gamma".to_string(), 1.0);
        assert!(matches!(
            kernel_by_name("ballistic", &bad),
            Err(Error::BadParam(_))
        ));
    }

    #[test]
    fn symmetry_exact_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for spec in registry_list().iter().map(|n| get(n)) {
            for _ in 0..200 {
                let i = rng.random_range(1..=1u64 << 16);
                let j = rng.random_range(1..=1u64 << 16);
                let a = spec.eval(i, j).unwrap();
                let b = spec.eval(j, i).unwrap();
                assert_eq!(a.to_bits(), b.to_bits(), "{}({i},{j})", spec.name());
            }
        }
    }

    #[test]
    fn finite_and_non_negative_over_domain() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in registry_list().iter().map(|n| get(n)) {
            for _ in 0..500 {
                let i = rng.random_range(1..=1u64 << 20);
                let j = rng.random_range(1..=1u64 << 20);
                let v = spec.eval(i, j).unwrap();
                assert!(v.is_finite(), "{}({i},{j}) = {v}", spec.name());
                assert!(v >= 0.0, "{}({i},{j}) = {v}", spec.name());
            }
            // corners of the domain, including the singular-looking diagonal
            for &(i, j) in &[(1, 1), (1, 1 << 20), (1 << 20, 1 << 20), (2, 3)] {
                let v = spec.eval(i, j).unwrap();
                assert!(v.is_finite() && v >= 0.0);
            }
        }
    }
}
