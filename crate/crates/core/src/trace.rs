//! Per-search expansion logs, summary counters, and result types.

use std::time::Duration;

use crate::cost::Cost;
use crate::space::Direction;

/// One expansion event. `pair_lb` is the lower bound in force when the node
/// was expanded: the global pair bound for bidirectional pair selection, the
/// node's own f-value for best-first algorithms. Grading against the optimal
/// cost ("necessary" expansions have `pair_lb < C*`) reads this field.
#[derive(Clone, Copy, Debug)]
pub struct Expansion<S> {
    pub direction: Direction,
    pub state: S,
    pub g: Cost,
    pub f: Cost,
    pub pair_lb: Cost,
}

/// Expansion log plus summary statistics for one search run.
#[derive(Clone, Debug)]
pub struct SearchTrace<S> {
    pub expansions: Vec<Expansion<S>>,
    pub generated: u64,
    pub reopened: u64,
    /// States closed without expansion (opposite-direction duplicates).
    pub nipped: u64,
    pub max_open_size: usize,
    /// Pushes into the open-list priority queues.
    pub queue_insertions: u64,
    /// Weighted basic-operation count of the open list: each push or pop
    /// costs ⌈log₂(len + 2)⌉ units, each peek costs one.
    pub queue_op_units: u64,
    pub wall_time: Duration,
}

impl<S> Default for SearchTrace<S> {
    fn default() -> Self {
        SearchTrace {
            expansions: Vec::new(),
            generated: 0,
            reopened: 0,
            nipped: 0,
            max_open_size: 0,
            queue_insertions: 0,
            queue_op_units: 0,
            wall_time: Duration::ZERO,
        }
    }
}

impl<S> SearchTrace<S> {
    pub fn expanded(&self) -> u64 {
        self.expansions.len() as u64
    }

    /// Expansions whose in-force lower bound was strictly below `c_star`.
    pub fn necessary_expansions(&self, c_star: Cost) -> u64 {
        self.expansions.iter().filter(|e| e.pair_lb < c_star).count() as u64
    }

    /// Expansions whose in-force lower bound equaled `c_star` exactly.
    pub fn expansions_at_optimal(&self, c_star: Cost) -> u64 {
        self.expansions.iter().filter(|e| e.pair_lb == c_star).count() as u64
    }

    /// The `pair_lb` sequence never decreases for pair-selection searches.
    pub fn pair_lb_is_monotone(&self) -> bool {
        self.expansions.windows(2).all(|w| w[0].pair_lb <= w[1].pair_lb)
    }
}

/// Why a search stopped.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Termination {
    /// Proved the returned cost optimal.
    Optimal,
    /// Frontier exhausted with no solution found.
    Exhausted,
    ExpansionCapReached,
    TimeCapReached,
}

/// Search outcome: the solution cost (`None` when no solution was proved),
/// the state where the two frontiers met, the full start→goal state
/// sequence, and the expansion trace.
#[derive(Clone, Debug)]
pub struct SearchResult<S> {
    pub cost: Option<Cost>,
    pub meeting_state: Option<S>,
    pub solution_path: Option<Vec<S>>,
    pub termination: Termination,
    pub trace: SearchTrace<S>,
}

impl<S> SearchResult<S> {
    pub fn solved(&self) -> bool {
        matches!(self.termination, Termination::Optimal) && self.cost.is_some()
    }

    pub(crate) fn trivial(state: S) -> SearchResult<S>
    where
        S: Copy,
    {
        SearchResult {
            cost: Some(Cost::ZERO),
            meeting_state: Some(state),
            solution_path: Some(vec![state]),
            termination: Termination::Optimal,
            trace: SearchTrace::default(),
        }
    }
}

/// Per-run resource caps. A capped run reports how far it got.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchLimits {
    pub max_expansions: Option<u64>,
    pub max_time: Option<Duration>,
}

impl SearchLimits {
    pub const NONE: SearchLimits = SearchLimits { max_expansions: None, max_time: None };

    /// Check caps; time is sampled every 1024 expansions to keep the clock
    /// off the hot path.
    pub(crate) fn exceeded(&self, expanded: u64, started: std::time::Instant) -> Option<Termination> {
        if let Some(cap) = self.max_expansions {
            if expanded >= cap {
                return Some(Termination::ExpansionCapReached);
            }
        }
        if let Some(cap) = self.max_time {
            if expanded % 1024 == 0 && started.elapsed() > cap {
                return Some(Termination::TimeCapReached);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counters_match_expansion_list() {
        let mut t: SearchTrace<u32> = SearchTrace::default();
        for (i, lb) in [0, 2, 2, 5].into_iter().enumerate() {
            t.expansions.push(Expansion {
                direction: Direction::Forward,
                state: i as u32,
                g: Cost::int(lb),
                f: Cost::int(lb),
                pair_lb: Cost::int(lb),
            });
        }
        assert_eq!(t.expanded(), 4);
        assert!(t.pair_lb_is_monotone());
        assert_eq!(t.necessary_expansions(Cost::int(5)), 3);
        assert_eq!(t.expansions_at_optimal(Cost::int(5)), 1);
        assert_eq!(t.necessary_expansions(Cost::ZERO), 0);
    }
}
