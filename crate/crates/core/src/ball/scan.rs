//! Root scan of the secular function in `ρ = λ^(1/(2t))`.

use serde::Serialize;

use super::problem::ProblemSpec;
use super::secular::{secular, SecularFunction};
use crate::error::{domain, Error, Result};
use crate::specfun::Z_MAX;

/// Scan parameters. Grid points are `rho_floor + i * step`, so a given point
/// is evaluated identically whatever `rho_max` is.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanConfig {
    pub rho_max: f64,
    pub step: f64,
    pub rho_floor: f64,
    /// Relative tolerance of the polished roots.
    pub root_tol: f64,
    pub phase_tol: f64,
    pub max_roots_per_ell: usize,
    /// Determinants below this modulus are not used as phase references.
    pub det_floor: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            rho_max: 30.0,
            step: 0.05,
            rho_floor: 1e-3,
            root_tol: 1e-12,
            phase_tol: 1e-7,
            max_roots_per_ell: 10_000,
            det_floor: 1e-280,
        }
    }
}

impl ScanConfig {
    pub fn with_rho_max(rho_max: f64) -> Self {
        ScanConfig {
            rho_max,
            ..ScanConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step <= 0.1) {
            return domain(format!("scan step must lie in (0, 0.1], got {}", self.step));
        }
        if !(self.root_tol > 0.0 && self.root_tol <= 1e-10) {
            return domain(format!("root tolerance must lie in (0, 1e-10], got {}", self.root_tol));
        }
        if !(self.rho_floor > 0.0) || !(self.rho_max > self.rho_floor) {
            return domain("need 0 < rho_floor < rho_max");
        }
        if !(self.phase_tol > 0.0) {
            return domain("phase tolerance must be positive");
        }
        if self.rho_max > Z_MAX {
            return Err(Error::Range {
                what: "rho_max exceeds the series precision budget".into(),
                limit: Z_MAX,
                requested: self.rho_max,
            });
        }
        Ok(())
    }

    pub fn grid_point(&self, i: u64) -> f64 {
        self.rho_floor + i as f64 * self.step
    }

    fn last_index(&self, cap: f64) -> u64 {
        ((cap.min(self.rho_max) - self.rho_floor) / self.step + 1e-9).floor() as u64
    }
}

/// Roots of the secular function for one angular degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EllRoots {
    pub ell: u32,
    pub rhos: Vec<f64>,
    pub lambdas: Vec<f64>,
    /// Locations of dips of `|F|` that did not resolve into a sign change.
    pub suspected_double: Vec<f64>,
}

/// Brent's method on a bracket with `fa * fb <= 0`.
pub fn brent<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
    rtol: f64,
) -> Result<f64> {
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return domain("brent needs a sign change");
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * rtol * b.abs();
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(xm) };
        fb = f(b)?;
    }
    Err(Error::Numeric("Brent iteration did not converge".into()))
}

fn positive(v: f64) -> bool {
    v >= 0.0
}

struct Scanner<'a> {
    f: &'a SecularFunction,
    cfg: &'a ScanConfig,
    roots: Vec<f64>,
    doubles: Vec<f64>,
}

impl Scanner<'_> {
    fn value(&self, rho: f64) -> Result<f64> {
        Ok(self.f.sample(rho)?.projected)
    }

    fn polish(&mut self, a: f64, b: f64, fa: f64, fb: f64) -> Result<()> {
        let root = brent(|x| self.value(x), a, b, fa, fb, self.cfg.root_tol)?;
        self.roots.push(root);
        Ok(())
    }

    /// Refine a local minimum of `|F|` at `c` between grid neighbours `a`, `b`.
    fn refine_dip(&mut self, mut pts: [(f64, f64); 3]) -> Result<()> {
        let outer = pts[0].1.abs().max(pts[2].1.abs());
        for _ in 0..6 {
            let [(a, fa), (c, fc), (b, fb)] = pts;
            let x1 = 0.5 * (a + c);
            let x2 = 0.5 * (c + b);
            let seq = [(a, fa), (x1, self.value(x1)?), (c, fc), (x2, self.value(x2)?), (b, fb)];
            let changes: Vec<usize> = (0..4)
                .filter(|&i| positive(seq[i].1) != positive(seq[i + 1].1))
                .collect();
            if !changes.is_empty() {
                for i in changes {
                    self.polish(seq[i].0, seq[i + 1].0, seq[i].1, seq[i + 1].1)?;
                }
                return Ok(());
            }
            let imin = (0..5)
                .min_by(|&i, &j| seq[i].1.abs().total_cmp(&seq[j].1.abs()))
                .unwrap_or(2);
            if imin == 0 || imin == 4 {
                return Ok(());
            }
            pts = [seq[imin - 1], seq[imin], seq[imin + 1]];
        }
        if pts[1].1.abs() <= 1e-3 * outer {
            self.doubles.push(pts[1].0);
        }
        Ok(())
    }
}

/// Scan degree `ell` up to `min(cfg.rho_max, cap)`, keeping at most
/// `max_roots` roots.
pub fn scan_ell(
    spec: ProblemSpec,
    ell: u32,
    cfg: &ScanConfig,
    cap: Option<f64>,
    max_roots: usize,
) -> Result<EllRoots> {
    cfg.validate()?;
    let f = secular(spec, ell, cfg)?;
    let limit = cap.map_or(cfg.rho_max, |c| (c + cfg.step).min(cfg.rho_max));
    let last = cfg.last_index(limit);
    let max_roots = max_roots.min(cfg.max_roots_per_ell);
    let mut sc = Scanner {
        f: &f,
        cfg,
        roots: Vec::new(),
        doubles: Vec::new(),
    };
    let mut prev2: Option<(f64, f64)> = None;
    let mut prev = {
        let r = cfg.grid_point(0);
        (r, sc.value(r)?)
    };
    for i in 1..=last {
        if sc.roots.len() >= max_roots {
            break;
        }
        let r = cfg.grid_point(i);
        let cur = (r, sc.value(r)?);
        if positive(prev.1) != positive(cur.1) {
            sc.polish(prev.0, cur.0, prev.1, cur.1)?;
        } else if let Some(p2) = prev2 {
            let same = positive(p2.1) == positive(prev.1);
            if same && prev.1.abs() < p2.1.abs() && prev.1.abs() < cur.1.abs() {
                sc.refine_dip([p2, prev, cur])?;
            }
        }
        prev2 = Some(prev);
        prev = cur;
    }
    let mut rhos = sc.roots;
    rhos.sort_by(f64::total_cmp);
    rhos.dedup_by(|a, b| (*a - *b).abs() <= 1e-10 * b.abs());
    rhos.truncate(max_roots);
    let lambdas = rhos.iter().map(|r| r.powi(2 * spec.t as i32)).collect();
    Ok(EllRoots {
        ell,
        rhos,
        lambdas,
        suspected_double: sc.doubles,
    })
}

/// Ascending eigenvalues `λ = ρ^(2t)` of degree `ell` with `ρ <= cfg.rho_max`.
pub fn eigenvalues_for_ell(spec: ProblemSpec, ell: u32, cfg: &ScanConfig) -> Result<Vec<f64>> {
    Ok(scan_ell(spec, ell, cfg, None, usize::MAX)?.lambdas)
}
