use std::fmt;
use std::str::FromStr;

use super::cache::SpectrumCache;
use super::checks::*;
use super::report::{canonical_sort, CheckReport};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    ThmE,
    Payne,
    ShiftConjecture,
    Weyl,
    Sandwich,
    Asymptotics,
    Oracle,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "thmE",
        "payne",
        "shift-conjecture",
        "weyl",
        "sandwich",
        "asymptotics",
        "oracle",
        "all",
    ];

    const EACH: [Suite; 7] = [
        Suite::ThmE,
        Suite::Payne,
        Suite::ShiftConjecture,
        Suite::Weyl,
        Suite::Sandwich,
        Suite::Asymptotics,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ThmE => "thmE",
            Suite::Payne => "payne",
            Suite::ShiftConjecture => "shift-conjecture",
            Suite::Weyl => "weyl",
            Suite::Sandwich => "sandwich",
            Suite::Asymptotics => "asymptotics",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", "))))
    }
}

/// Range flags shared by the suites. Unset entries take per-suite defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteParams {
    pub d: Option<u32>,
    /// Largest `m` for the monotonicity suites, the exact `m` elsewhere.
    pub m: Option<u32>,
    pub m_range: Option<(u32, u32)>,
    pub t: Option<u32>,
    pub count: Option<u64>,
}

impl SuiteParams {
    fn dims(&self, default: &[u32]) -> Vec<u32> {
        self.d.map_or_else(|| default.to_vec(), |d| vec![d])
    }

    fn m_list(&self, default: (u32, u32), up_to: bool) -> Vec<u32> {
        let (a, b) = match (self.m_range, self.m) {
            (Some(r), _) => r,
            (None, Some(m)) if up_to => (1, m),
            (None, Some(m)) => (m, m),
            (None, None) => default,
        };
        (a.max(1)..=b).collect()
    }
}

fn run_one(suite: Suite, p: &SuiteParams, cache: &SpectrumCache) -> Vec<CheckReport> {
    let mut out = Vec::new();
    match suite {
        Suite::ThmE => {
            for d in p.dims(&[1, 2, 3]) {
                let ms = p.m_list((1, 4), true);
                let m_max = ms.last().copied().unwrap_or(0);
                let t_max = p.t.unwrap_or(m_max);
                out.extend(
                    check_thm_e(cache, d, m_max, t_max, p.count.unwrap_or(4))
                        .into_iter()
                        .filter(|r| r.params.m.is_some_and(|m| ms.contains(&m))),
                );
            }
        }
        Suite::Payne => {
            let k_max = p.count.unwrap_or(4);
            for d in p.dims(&[1, 2, 3]) {
                let ms = p.m_list((1, 4), true);
                let grid: Vec<(u32, u32)> = ms
                    .iter()
                    .flat_map(|&m| (1..=m).filter(|&t| p.t.is_none_or(|x| x == t)).map(move |t| (m, t)))
                    .collect();
                let needs: Vec<_> = grid
                    .iter()
                    .flat_map(|&(m, t)| {
                        thm_e_needs(d, m, t, k_max.max(2))
                    })
                    .collect();
                cache.prefetch(&needs);
                for &(m, t) in &grid {
                    for k in 1..=k_max {
                        out.push(check_payne_lower(cache, d, m, t, k));
                    }
                    out.push(check_payne_shift(cache, d, m, t));
                }
            }
        }
        Suite::ShiftConjecture => {
            let kk = p.count.unwrap_or(6);
            for d in p.dims(&[1, 2]) {
                for m in p.m_list((1, 1), false) {
                    for t in 1..=m {
                        if p.t.is_none_or(|x| x == t) {
                            out.extend(explore_shift_conjecture(cache, d, m, t, kk));
                        }
                    }
                }
            }
        }
        Suite::Weyl => {
            let cases: Vec<(u32, u32, u32, u64)> = if p == &SuiteParams::default() {
                vec![(1, 1, 1, 30), (2, 1, 1, 500), (2, 2, 2, 200)]
            } else {
                let kk = p.count.unwrap_or(200);
                let mut v = Vec::new();
                for d in p.dims(&[2]) {
                    for m in p.m_list((1, 1), false) {
                        v.push((d, m, p.t.unwrap_or(m), kk));
                    }
                }
                v
            };
            for (d, m, t, kk) in cases {
                out.extend(check_weyl(cache, d, m, t, kk));
            }
        }
        Suite::Sandwich => {
            for d in p.dims(&[1, 2, 3]) {
                out.extend(check_sandwiches(cache, d, &p.m_list((1, 4), false)));
            }
        }
        Suite::Asymptotics => {
            for d in p.dims(&[1, 2, 3]) {
                out.extend(check_two_term_asymptotics(d, &p.m_list((6, 14), false)));
            }
            if p.d.is_none_or(|d| d == 2) {
                let ms: Vec<u32> = p.m_list((1, 3), false).into_iter().filter(|&m| m <= 3).collect();
                out.extend(check_box_asymptotics(&ms));
            }
        }
        Suite::Oracle => {
            let grid: Vec<_> = oracle_grid()
                .into_iter()
                .filter(|&(d, m, t, _)| {
                    p.d.is_none_or(|x| x == d)
                        && p.m.is_none_or(|x| x == m)
                        && p.m_range.is_none_or(|(a, b)| (a..=b).contains(&m))
                        && p.t.is_none_or(|x| x == t)
                })
                .collect();
            out.extend(check_oracle_agreement(&grid));
        }
        Suite::All => {
            for s in Suite::EACH {
                out.extend(run_one(s, p, cache));
            }
        }
    }
    out
}

/// Run a suite; reports come back in canonical order.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> Vec<CheckReport> {
    run_suite_with(suite, params, &SpectrumCache::new())
}

/// [`run_suite`] sharing a spectrum cache.
pub fn run_suite_with(suite: Suite, params: &SuiteParams, cache: &SpectrumCache) -> Vec<CheckReport> {
    let mut out = run_one(suite, params, cache);
    canonical_sort(&mut out);
    out
}
