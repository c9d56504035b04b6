//! Incumbent-solution tracking for bidirectional searches.

use std::fmt::Debug;
use std::hash::Hash;

use crate::cost::Cost;
use crate::node::{NodeId, NodeTable};
use crate::space::{Direction, PerDirection};

/// Best solution found so far, as the meeting state plus the arena entries
/// of the two path halves. Entries are immutable snapshots, so the halves
/// always sum to exactly the recorded cost.
pub(crate) struct Incumbent<S> {
    pub cost: Option<Cost>,
    meeting: Option<Meeting<S>>,
}

struct Meeting<S> {
    state: S,
    forward: NodeId,
    backward: NodeId,
}

impl<S: Copy + Eq + Hash + Debug> Incumbent<S> {
    pub fn new() -> Self {
        Incumbent { cost: None, meeting: None }
    }

    /// True once `bound ≥ cost`: the incumbent is proved optimal.
    pub fn proves_optimal(&self, bound: Cost) -> bool {
        self.cost.is_some_and(|c| bound >= c)
    }

    /// Record a collision at `state`: a path of cost `total` running through
    /// the entry just created in `d` and the opposite side's current entry.
    pub fn offer(&mut self, state: S, d: Direction, new_id: NodeId, opposite_id: NodeId, total: Cost) {
        if self.cost.is_some_and(|c| total >= c) {
            return;
        }
        self.cost = Some(total);
        let (forward, backward) = match d {
            Direction::Forward => (new_id, opposite_id),
            Direction::Backward => (opposite_id, new_id),
        };
        self.meeting = Some(Meeting { state, forward, backward });
    }

    /// Meeting state and the full start→goal sequence.
    pub fn solution(
        &self,
        tables: &PerDirection<NodeTable<S>>,
    ) -> Option<(S, Vec<S>)> {
        let meeting = self.meeting.as_ref()?;
        let mut path = tables
            .forward
            .path_to(meeting.forward)
            .expect("arena chains are acyclic");
        let tail = tables
            .backward
            .path_to(meeting.backward)
            .expect("arena chains are acyclic");
        debug_assert_eq!(path.last(), tail.first());
        path.extend_from_slice(&tail[1..]);
        Some((meeting.state, path))
    }
}
