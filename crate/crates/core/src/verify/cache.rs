use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::ball::{assemble_spectrum_auto, ProblemSpec, Spectrum};
use crate::error::Result;

/// Ball spectra computed during one run, keyed by problem.
///
/// Grid points of the root scan do not depend on the scan radius, so a
/// longer spectrum extends a shorter one without changing its values. A
/// failure is remembered with its size and only answers requests at least
/// as large, so results never depend on the order of requests.
#[derive(Default)]
pub struct SpectrumCache {
    map: Mutex<HashMap<ProblemSpec, Entry>>,
}

#[derive(Default)]
struct Entry {
    ok: Option<Arc<Result<Spectrum>>>,
    failed: Option<(u64, Arc<Result<Spectrum>>)>,
}

fn covers(s: &Spectrum, count: u64) -> bool {
    s.entries.last().is_some_and(|e| e.ordinal + e.multiplicity > count)
}

impl Entry {
    fn answer(&self, count: u64) -> Option<Arc<Result<Spectrum>>> {
        if let Some(s) = &self.ok {
            if matches!(&**s, Ok(sp) if covers(sp, count)) {
                return Some(Arc::clone(s));
            }
        }
        match &self.failed {
            Some((n, e)) if count >= *n => Some(Arc::clone(e)),
            _ => None,
        }
    }

    fn store(&mut self, count: u64, s: &Arc<Result<Spectrum>>) {
        match &**s {
            Ok(sp) => {
                let longer = match self.ok.as_deref() {
                    Some(Ok(old)) => sp.entries.len() > old.entries.len(),
                    _ => true,
                };
                if longer {
                    self.ok = Some(Arc::clone(s));
                }
            }
            Err(_) => {
                if self.failed.as_ref().is_none_or(|(n, _)| count < *n) {
                    self.failed = Some((count, Arc::clone(s)));
                }
            }
        }
    }
}

impl SpectrumCache {
    pub fn new() -> Self {
        SpectrumCache::default()
    }

    /// First `count` eigenvalues of `spec`, computed at most once per size.
    pub fn get(&self, spec: ProblemSpec, count: u64) -> Arc<Result<Spectrum>> {
        if let Some(s) = self.map.lock().expect("cache lock").get(&spec).and_then(|e| e.answer(count)) {
            return s;
        }
        let s = Arc::new(assemble_spectrum_auto(spec, count));
        self.map.lock().expect("cache lock").entry(spec).or_default().store(count, &s);
        s
    }

    /// `λ_k` of `spec`, or the reason it is unavailable.
    pub fn lambda(&self, spec: ProblemSpec, k: u64) -> std::result::Result<f64, String> {
        match &*self.get(spec, k) {
            Ok(s) => s.lambda(k).ok_or_else(|| format!("λ_{k} of {spec} not covered")),
            Err(e) => Err(format!("{spec}: {e}")),
        }
    }

    /// Compute the listed spectra in parallel.
    pub fn prefetch(&self, wanted: &[(ProblemSpec, u64)]) {
        let mut need: HashMap<ProblemSpec, u64> = HashMap::new();
        for &(s, k) in wanted {
            let e = need.entry(s).or_insert(0);
            *e = (*e).max(k);
        }
        let mut list: Vec<(ProblemSpec, u64)> = need.into_iter().collect();
        list.sort();
        list.par_iter().for_each(|&(s, k)| {
            self.get(s, k);
        });
    }
}
