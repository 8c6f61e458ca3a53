//! Work-budget ceiling shared by every linear-algebra routine.
//!
//! `HODGEKIT_MAX_DIM` bounds the dimension of any single vector space the
//! library is asked to build (a degree slice of the polynomial ring, a term of
//! a twisted complex). Requests above the ceiling fail with
//! [`Error::BudgetExceeded`] instead of running for hours.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DIM: usize = 400_000;
pub const ENV_VAR: &str = "HODGEKIT_MAX_DIM";

static OVERRIDE: AtomicUsize = AtomicUsize::new(0);

pub fn max_dim() -> usize {
    let o = OVERRIDE.load(Ordering::Relaxed);
    if o > 0 {
        return o;
    }
    std::env::var(ENV_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(DEFAULT_MAX_DIM)
}

/// Process-wide override (takes precedence over the environment). Zero clears it.
pub fn set_max_dim(n: usize) {
    OVERRIDE.store(n, Ordering::Relaxed);
}

pub fn check(what: impl Into<String>, needed: usize) -> Result<()> {
    let limit = max_dim();
    if needed > limit {
        return Err(Error::BudgetExceeded { what: what.into(), needed, limit });
    }
    Ok(())
}
