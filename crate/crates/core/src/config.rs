//! Size limits for audits and certification runs.

use std::env;

pub const NMAX_ENV: &str = "SCALEDSS_NMAX";

pub const DEFAULT_AUDIT_NMAX: usize = 5;
pub const DEFAULT_CERTIFY_NMAX: usize = 4;

/// Default step budget per search sub-goal.
pub const DEFAULT_SEARCH_BUDGET: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub audit_nmax: usize,
    pub certify_nmax: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            audit_nmax: DEFAULT_AUDIT_NMAX,
            certify_nmax: DEFAULT_CERTIFY_NMAX,
        }
    }
}

impl Limits {
    /// Reads `SCALEDSS_NMAX`; when set it overrides both bounds.
    pub fn from_env() -> Self {
        match env::var(NMAX_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            Some(n) => Limits {
                audit_nmax: n,
                certify_nmax: n,
            },
            None => Limits::default(),
        }
    }
}
