use std::fmt;

use serde::Serialize;

use crate::error::{domain, Result};

/// The triple `(d, m, t)` for `(-Δ)^m u = λ (-Δ)^(m-t) u` with Dirichlet
/// conditions of order `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProblemSpec {
    pub d: u32,
    pub m: u32,
    pub t: u32,
}

impl ProblemSpec {
    pub fn new(d: u32, m: u32, t: u32) -> Result<Self> {
        if d == 0 {
            return domain("dimension d must be at least 1");
        }
        if m == 0 {
            return domain("order m must be at least 1");
        }
        if t == 0 || t > m {
            return domain(format!("need 1 <= t <= m, got t={t}, m={m}"));
        }
        Ok(ProblemSpec { d, m, t })
    }

    /// Index `k = ℓ + m - t` of the secular matrix `L(t, k)`.
    pub fn secular_index(&self, ell: u32) -> u32 {
        ell + self.m - self.t
    }

    /// Angular degrees allowed in this dimension (`d = 1` has only even and odd).
    pub fn admissible(&self, ell: u32) -> bool {
        self.d != 1 || ell <= 1
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d={}, m={}, t={})", self.d, self.m, self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ProblemSpec::new(2, 2, 1).is_ok());
        assert!(ProblemSpec::new(0, 1, 1).is_err());
        assert!(ProblemSpec::new(2, 1, 2).is_err());
        assert!(ProblemSpec::new(2, 0, 0).is_err());
    }

    #[test]
    fn one_dimensional_degrees() {
        let p = ProblemSpec::new(1, 2, 1).unwrap();
        assert!(p.admissible(0) && p.admissible(1) && !p.admissible(2));
        assert_eq!(p.secular_index(1), 2);
    }
}
