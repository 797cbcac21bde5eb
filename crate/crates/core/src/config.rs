//! Run-wide budgets and defaults.

use std::time::Duration;

use crate::wl::{Mode, Rounds, Version, WLConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Cap on the bytes of per-tuple state a WL run may allocate.
    pub mem_cap: u64,
    pub time_budget: Duration,
    pub k: usize,
    pub rounds: Rounds,
    pub version: Version,
    pub mode: Mode,
    pub d: usize,
    /// Largest automorphism group enumerated element by element.
    pub aut_cap: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mem_cap: 100_000_000,
            time_budget: Duration::from_secs(30),
            k: 2,
            rounds: Rounds::UntilStable,
            version: Version::II,
            mode: Mode::Counting,
            d: 3,
            aut_cap: 1_000_000,
        }
    }
}

impl RunConfig {
    pub fn wl(&self) -> WLConfig {
        WLConfig {
            k: self.k,
            rounds: self.rounds,
            version: self.version,
            mode: self.mode,
            mem_cap: self.mem_cap,
            exec: Default::default(),
        }
    }
}
