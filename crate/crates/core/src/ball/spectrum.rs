//! Merging angular degrees into the ordered ball spectrum.

use rayon::prelude::*;
use serde::Serialize;

use super::problem::ProblemSpec;
use super::scan::{scan_ell, EllRoots, ScanConfig};
use crate::error::{Error, Result};
use crate::specfun::{ln_gamma, Z_MAX};

/// Degrees scanned per parallel batch. Fixed so that the set of scanned
/// degrees never depends on the thread count.
const BATCH: u32 = 8;

/// Extra degrees scanned after the smallest root first exceeds the cutoff.
const GUARD: u32 = 2;

const MAX_ELL: u32 = 4096;

/// One eigenvalue with its angular degree. The entry occupies ordinals
/// `ordinal ..= ordinal + multiplicity - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub lambda: f64,
    pub rho: f64,
    pub ell: u32,
    pub multiplicity: u64,
    pub ordinal: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub spec: ProblemSpec,
    pub entries: Vec<SpectrumEntry>,
    pub warnings: Vec<String>,
    pub rho_max: f64,
}

impl Spectrum {
    /// `λ_k` counted with multiplicity, `k >= 1`.
    pub fn lambda(&self, k: u64) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| k >= e.ordinal && k < e.ordinal + e.multiplicity)
            .map(|e| e.lambda)
    }

    /// Expanded list `λ_1, λ_2, …` up to the covered ordinals.
    pub fn values(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat(e.lambda).take(e.multiplicity as usize))
            .collect()
    }
}

/// Dimension of spherical harmonics of degree `ell` in `d` variables.
pub fn spherical_multiplicity(d: u32, ell: u32) -> u64 {
    match d {
        0 => 0,
        1 => u64::from(ell <= 1),
        2 => {
            if ell == 0 {
                1
            } else {
                2
            }
        }
        _ => {
            // (2ℓ+d-2) (ℓ+d-3)! / (ℓ! (d-2)!)
            let (l, d) = (ell as u128, d as u128);
            let binom = num_integer::binomial(l + d - 3, l);
            ((2 * l + d - 2) * binom / (d - 2)) as u64
        }
    }
}

struct Merge {
    found: Vec<(f64, f64, u32, u64)>,
    count: u64,
}

impl Merge {
    fn push(&mut self, spec: &ProblemSpec, roots: &EllRoots) {
        let mult = spherical_multiplicity(spec.d, roots.ell);
        for (&lambda, &rho) in roots.lambdas.iter().zip(&roots.rhos) {
            self.found.push((lambda, rho, roots.ell, mult));
        }
        self.count += mult * roots.lambdas.len() as u64;
        self.found
            .sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
    }

    /// `(λ_K, ρ_K)` when at least `K` ordinals are present.
    fn kth(&self, k: u64) -> Option<(f64, f64)> {
        if self.count < k {
            return None;
        }
        let mut seen = 0;
        for e in &self.found {
            seen += e.3;
            if seen >= k {
                return Some((e.0, e.1));
            }
        }
        None
    }
}

fn short_range(spec: &ProblemSpec, k: u64, cfg: &ScanConfig) -> Error {
    Error::Range {
        what: format!("scan radius covers fewer than {k} eigenvalues of {spec}"),
        limit: cfg.rho_max,
        requested: (cfg.rho_max * 1.5).max(default_rho_max(spec, k)),
    }
}

fn push_warnings(warnings: &mut Vec<String>, roots: &EllRoots) {
    for r in &roots.suspected_double {
        warnings.push(format!(
            "suspected double root near rho={r:.6} (ell={}) reported, not resolved",
            roots.ell
        ));
    }
}

/// First `count` eigenvalues (with multiplicity) of the ball problem.
pub fn assemble_spectrum(spec: ProblemSpec, count: u64, cfg: &ScanConfig) -> Result<Spectrum> {
    if count == 0 {
        return crate::error::domain("count must be at least 1");
    }
    cfg.validate()?;
    let mut merge = Merge {
        found: Vec::new(),
        count: 0,
    };
    let mut warnings = Vec::new();
    let per_ell = count as usize;

    let first = scan_ell(spec, 0, cfg, None, per_ell)?;
    push_warnings(&mut warnings, &first);
    merge.push(&spec, &first);

    if spec.d == 1 {
        let odd = scan_ell(spec, 1, cfg, None, per_ell)?;
        push_warnings(&mut warnings, &odd);
        merge.push(&spec, &odd);
    } else {
        let mut next = 1u32;
        let mut beyond = 0u32;
        'sweep: while next < MAX_ELL {
            let cap = merge.kth(count).map(|(_, rho)| rho);
            let batch: Vec<u32> = (next..next + BATCH).collect();
            let results: Vec<Result<EllRoots>> = batch
                .par_iter()
                .map(|&ell| scan_ell(spec, ell, cfg, cap, per_ell))
                .collect();
            for res in results {
                let roots = res?;
                push_warnings(&mut warnings, &roots);
                merge.push(&spec, &roots);
                match merge.kth(count) {
                    Some((lk, _)) => {
                        if roots.lambdas.first().map_or(true, |&l| l > lk) {
                            beyond += 1;
                        } else {
                            beyond = 0;
                        }
                        if beyond > GUARD {
                            break 'sweep;
                        }
                    }
                    None => {
                        if roots.lambdas.is_empty() {
                            return Err(short_range(&spec, count, cfg));
                        }
                    }
                }
            }
            next += BATCH;
        }
    }

    if merge.count < count {
        return Err(short_range(&spec, count, cfg));
    }
    let mut entries = Vec::new();
    let mut ordinal = 1u64;
    for &(lambda, rho, ell, multiplicity) in &merge.found {
        if ordinal > count {
            break;
        }
        entries.push(SpectrumEntry {
            lambda,
            rho,
            ell,
            multiplicity,
            ordinal,
        });
        ordinal += multiplicity;
    }
    Ok(Spectrum {
        spec,
        entries,
        warnings,
        rho_max: cfg.rho_max,
    })
}

/// Scan radius guess from the Weyl term plus a margin growing with `m`.
pub fn default_rho_max(spec: &ProblemSpec, count: u64) -> f64 {
    let d = spec.d as f64;
    // ω_d, the volume of the unit ball, which is also |Ω| here
    let ln_omega = 0.5 * d * std::f64::consts::PI.ln() - ln_gamma(0.5 * d + 1.0).unwrap_or(0.0);
    let weyl = 2.0 * std::f64::consts::PI * ((count as f64).ln() / d - 2.0 * ln_omega / d).exp();
    (1.2 * weyl + 2.0 * spec.m as f64 + 4.0).min(Z_MAX)
}

/// [`assemble_spectrum`] with an automatic scan radius, widened on a range
/// error up to the precision budget.
pub fn assemble_spectrum_auto(spec: ProblemSpec, count: u64) -> Result<Spectrum> {
    let mut rho_max = default_rho_max(&spec, count);
    loop {
        let cfg = ScanConfig::with_rho_max(rho_max);
        match assemble_spectrum(spec, count, &cfg) {
            Err(Error::Range { .. }) if rho_max < Z_MAX => {
                rho_max = (rho_max * 1.5).min(Z_MAX);
            }
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel_j_zero;

    #[test]
    fn multiplicities() {
        assert_eq!(spherical_multiplicity(2, 0), 1);
        assert_eq!(spherical_multiplicity(2, 5), 2);
        assert_eq!(spherical_multiplicity(3, 2), 5);
        assert_eq!(spherical_multiplicity(4, 3), 16);
        assert_eq!(spherical_multiplicity(1, 2), 0);
    }

    #[test]
    fn disk_first_three() {
        let spec = ProblemSpec::new(2, 1, 1).unwrap();
        let s = assemble_spectrum(spec, 3, &ScanConfig::with_rho_max(10.0)).unwrap();
        assert_eq!(s.entries.len(), 2);
        assert!((s.entries[0].lambda - 5.783_185_962_946_784).abs() < 1e-9);
        assert_eq!((s.entries[1].ell, s.entries[1].multiplicity, s.entries[1].ordinal), (1, 2, 2));
        assert!((s.lambda(3).unwrap() - 14.681_970_642_123_9).abs() < 1e-8);
    }

    #[test]
    fn buckling_disk_first_is_j11_squared() {
        let spec = ProblemSpec::new(2, 2, 1).unwrap();
        let s = assemble_spectrum_auto(spec, 1).unwrap();
        let j = bessel_j_zero(1.0, 1).unwrap();
        assert!((s.lambda(1).unwrap() / (j * j) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn one_dimensional_laplacian() {
        let spec = ProblemSpec::new(1, 1, 1).unwrap();
        let s = assemble_spectrum_auto(spec, 4).unwrap();
        for k in 1..=4u64 {
            let e = (k as f64 * std::f64::consts::FRAC_PI_2).powi(2);
            assert!((s.lambda(k).unwrap() / e - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn too_small_radius_is_a_range_error() {
        let spec = ProblemSpec::new(2, 1, 1).unwrap();
        let e = assemble_spectrum(spec, 50, &ScanConfig::with_rho_max(5.0)).unwrap_err();
        assert!(matches!(e, Error::Range { .. }));
    }
}
