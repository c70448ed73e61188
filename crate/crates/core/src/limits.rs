//! Resource budgets threaded through the expensive constructions.

/// Caps on constructed state spaces and enumerated search candidates.
///
/// Exceeding a cap is reported as an error, never as a silently truncated
/// answer: [`crate::Error::ResourceLimit`] for state spaces,
/// [`crate::Error::BudgetExceeded`] for searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest state space any single construction may build.
    pub max_states: usize,
    /// Largest number of candidates a search may test.
    pub search_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_states: 1_000_000, search_budget: 1_000_000 }
    }
}

impl Limits {
    pub fn with_max_states(self, max_states: usize) -> Self {
        Limits { max_states, ..self }
    }

    pub fn with_search_budget(self, search_budget: u64) -> Self {
        Limits { search_budget, ..self }
    }
}
