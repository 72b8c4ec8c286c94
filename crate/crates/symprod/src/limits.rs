//! Resource guardrails for brute-force enumeration.

use crate::error::{Error, Result};

/// Default ceiling on symmetric power exponent for brute-force work.
pub const DEFAULT_MAX_N: usize = 6;
/// Default ceiling on the truncation degree.
pub const DEFAULT_MAX_CUTOFF: usize = 16;
/// Default ceiling on enumerated tensor cells, overridable via the
/// `SYMPROD_MAX_CELLS` environment variable.
pub const DEFAULT_MAX_CELLS: u64 = 5_000_000;

/// Enumeration budget. `check_*` helpers return `Error::Guardrail` when a
/// requested computation exceeds the budget; `force` lifts the n/cutoff
/// ceilings but never the cell count.
#[derive(Debug, Clone)]
pub struct Limits {
    pub max_n: usize,
    pub max_cutoff: usize,
    pub max_cells: u64,
    pub force: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: DEFAULT_MAX_N,
            max_cutoff: DEFAULT_MAX_CUTOFF,
            max_cells: max_cells_from_env(),
            force: false,
        }
    }
}

fn max_cells_from_env() -> u64 {
    std::env::var("SYMPROD_MAX_CELLS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_CELLS)
}

impl Limits {
    /// A budget with the ceilings lifted (cell cap kept as a hard stop).
    pub fn forced() -> Self {
        Limits { force: true, ..Limits::default() }
    }

    pub fn check_n(&self, n: usize) -> Result<()> {
        if !self.force && n > self.max_n {
            return Err(Error::Guardrail {
                what: "symmetric power exponent n".to_string(),
                value: n as u64,
                limit: self.max_n as u64,
            });
        }
        Ok(())
    }

    pub fn check_cutoff(&self, cutoff: usize) -> Result<()> {
        if !self.force && cutoff > self.max_cutoff {
            return Err(Error::Guardrail {
                what: "truncation degree".to_string(),
                value: cutoff as u64,
                limit: self.max_cutoff as u64,
            });
        }
        Ok(())
    }

    /// Hard cap on enumerated cells; not lifted by `force`.
    pub fn check_cells(&self, cells: u64) -> Result<()> {
        if cells > self.max_cells {
            return Err(Error::Guardrail {
                what: "enumerated tensor cells".to_string(),
                value: cells,
                limit: self.max_cells,
            });
        }
        Ok(())
    }
}
