//! The dual waiting/ready open list for pair selection.
//!
//! Each direction keeps two priority queues. `waiting` holds nodes ordered
//! by ascending f (ties toward higher g); `ready` holds nodes already known
//! to satisfy `f ≤ bound`, ordered by ascending g (ties broken by state
//! encoding, which keeps runs deterministic). The global `bound` only ever
//! rises. A pair is ready for expansion once the two ready fronts satisfy
//! `g_F + g_B ≤ bound`; at that point the bound equals the true minimum
//! pair lower bound over the whole open list, without ever materializing
//! the cross product of open nodes.
//!
//! Superseded queue entries are dropped lazily: an entry is live only while
//! it is still its state's current table entry and still sits in the queue
//! it claims. Basic-operation accounting charges ⌈log₂(len+2)⌉ units per
//! push or pop and one unit per peek.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::cost::Cost;
use crate::node::{Location, NodeId, NodeTable, Offer, SearchNode};
use crate::space::{Direction, PerDirection};

/// waiting order: f ascending, then g descending, then state, then id.
type WaitingKey<S> = (Cost, Reverse<Cost>, S, u32);
/// ready order: g ascending, then state, then id.
type ReadyKey<S> = (Cost, S, u32);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Prepared {
    /// The ready fronts form the next pair and the bound equals the minimum
    /// pair lower bound.
    Found,
    /// Some direction ran out of open nodes.
    Exhausted,
}

pub struct DualOpenList<S: Copy + Eq + Ord + std::hash::Hash + std::fmt::Debug> {
    tables: PerDirection<NodeTable<S>>,
    waiting: PerDirection<BinaryHeap<Reverse<WaitingKey<S>>>>,
    ready: PerDirection<BinaryHeap<Reverse<ReadyKey<S>>>>,
    bound: Cost,
    bound_history: Vec<Cost>,
    max_open: usize,
    insertions: u64,
    op_units: u64,
}

impl<S: Copy + Eq + Ord + std::hash::Hash + std::fmt::Debug> DualOpenList<S> {
    pub fn new() -> Self {
        DualOpenList {
            tables: PerDirection::new(
                NodeTable::new(Direction::Forward),
                NodeTable::new(Direction::Backward),
            ),
            waiting: PerDirection::default(),
            ready: PerDirection::default(),
            bound: Cost::ZERO,
            bound_history: vec![Cost::ZERO],
            max_open: 0,
            insertions: 0,
            op_units: 0,
        }
    }

    /// Current global lower bound on the minimum pair bound.
    pub fn lower_bound(&self) -> Cost {
        self.bound
    }

    /// Every value the bound has taken, starting at zero.
    pub fn bound_history(&self) -> &[Cost] {
        &self.bound_history
    }

    pub fn table(&self, d: Direction) -> &NodeTable<S> {
        &self.tables[d]
    }

    pub fn tables(&self) -> &PerDirection<NodeTable<S>> {
        &self.tables
    }

    pub fn node(&self, d: Direction, id: NodeId) -> SearchNode<S> {
        self.tables[d].node(id)
    }

    pub fn open_size(&self) -> usize {
        self.tables.forward.open_count() + self.tables.backward.open_count()
    }

    pub fn max_open_size(&self) -> usize {
        self.max_open
    }

    pub fn insertions(&self) -> u64 {
        self.insertions
    }

    pub fn op_units(&self) -> u64 {
        self.op_units
    }

    /// Offer a generated path; accepted paths enter the waiting queue.
    pub fn insert(
        &mut self,
        d: Direction,
        state: S,
        g: Cost,
        h: impl FnOnce() -> Option<Cost>,
        parent: Option<NodeId>,
    ) -> Offer {
        let offer = self.tables[d].offer(state, g, h, parent);
        if let Some(id) = offer.accepted() {
            let f = self.tables[d].entry(id).f();
            self.push_waiting(d, f, g, state, id);
            self.max_open = self.max_open.max(self.open_size());
        }
        offer
    }

    /// Raise the bound until the ready fronts form the minimum pair, or
    /// report exhaustion. The bound persists across calls.
    pub fn prepare_best(&mut self) -> Prepared {
        // nodes strictly below the bound go straight to ready
        for d in Direction::BOTH {
            while let Some((f, _)) = self.waiting_front(d) {
                if f < self.bound {
                    self.move_front_to_ready(d);
                } else {
                    break;
                }
            }
        }
        loop {
            for d in Direction::BOTH {
                if self.waiting_front(d).is_none() && self.ready_front(d).is_none() {
                    return Prepared::Exhausted;
                }
            }
            if let (Some((gf, _)), Some((gb, _))) =
                (self.ready_front(Direction::Forward), self.ready_front(Direction::Backward))
            {
                if gf + gb <= self.bound {
                    return Prepared::Found;
                }
            }
            // move nodes at the bound incrementally, highest g first
            let mut moved = false;
            for d in Direction::BOTH {
                if let Some((f, _)) = self.waiting_front(d) {
                    if f <= self.bound {
                        self.move_front_to_ready(d);
                        moved = true;
                    }
                }
            }
            if !moved {
                let mut next: Option<Cost> = None;
                let mut consider = |c: Cost| next = Some(next.map_or(c, |n: Cost| n.min(c)));
                if let Some((f, _)) = self.waiting_front(Direction::Forward) {
                    consider(f);
                }
                if let Some((f, _)) = self.waiting_front(Direction::Backward) {
                    consider(f);
                }
                if let (Some((gf, _)), Some((gb, _))) =
                    (self.ready_front(Direction::Forward), self.ready_front(Direction::Backward))
                {
                    consider(gf + gb);
                }
                let next = next.expect("both sides nonempty");
                debug_assert!(next > self.bound, "bound must rise strictly");
                self.bound = next;
                self.bound_history.push(next);
            }
        }
    }

    /// Fronts of the two ready queues, valid right after a `Found`.
    pub fn peek_ready_pair(&mut self) -> Option<(NodeId, NodeId)> {
        let f = self.ready_front(Direction::Forward)?.1;
        let b = self.ready_front(Direction::Backward)?.1;
        Some((f, b))
    }

    /// Pop both ready fronts and close them; the caller expands both.
    pub fn pop_ready_pair(&mut self) -> Option<(NodeId, NodeId)> {
        let (f, b) = self.peek_ready_pair()?;
        for (d, id) in [(Direction::Forward, f), (Direction::Backward, b)] {
            let popped = self.ready[d].pop();
            debug_assert!(popped.is_some());
            self.charge_heap_op(self.ready[d].len());
            self.tables[d].set_location(id, Location::Closed);
        }
        Some((f, b))
    }

    fn push_waiting(&mut self, d: Direction, f: Cost, g: Cost, state: S, id: NodeId) {
        self.charge_heap_op(self.waiting[d].len());
        self.insertions += 1;
        self.waiting[d].push(Reverse((f, Reverse(g), state, id.0)));
    }

    /// Live front of a waiting queue as (f, id); stale entries are dropped.
    fn waiting_front(&mut self, d: Direction) -> Option<(Cost, NodeId)> {
        self.op_units += 1; // peek
        loop {
            let &Reverse((f, _, _, raw)) = self.waiting[d].peek()?;
            let id = NodeId(raw);
            if self.tables[d].is_current(id)
                && self.tables[d].entry(id).location == Location::Waiting
            {
                return Some((f, id));
            }
            self.waiting[d].pop();
            self.charge_heap_op(self.waiting[d].len());
        }
    }

    /// Live front of a ready queue as (g, id).
    fn ready_front(&mut self, d: Direction) -> Option<(Cost, NodeId)> {
        self.op_units += 1; // peek
        loop {
            let &Reverse((g, _, raw)) = self.ready[d].peek()?;
            let id = NodeId(raw);
            if self.tables[d].is_current(id) && self.tables[d].entry(id).location == Location::Ready
            {
                return Some((g, id));
            }
            self.ready[d].pop();
            self.charge_heap_op(self.ready[d].len());
        }
    }

    fn move_front_to_ready(&mut self, d: Direction) {
        let Some(Reverse((_, Reverse(g), state, raw))) = self.waiting[d].pop() else {
            unreachable!("callers verified a live front")
        };
        self.charge_heap_op(self.waiting[d].len());
        let id = NodeId(raw);
        self.tables[d].set_location(id, Location::Ready);
        self.charge_heap_op(self.ready[d].len());
        self.ready[d].push(Reverse((g, state, raw)));
        self.insertions += 1;
    }

    fn charge_heap_op(&mut self, len: usize) {
        self.op_units += u64::from(usize::BITS - (len + 1).leading_zeros());
    }
}

impl<S: Copy + Eq + Ord + std::hash::Hash + std::fmt::Debug> Default for DualOpenList<S> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn put(open: &mut DualOpenList<u32>, d: Direction, state: u32, f: u32, g: u32) {
        let (f, g) = (Cost::int(f), Cost::int(g));
        let h = f.units() - g.units();
        let offer = open.insert(d, state, g, || Some(Cost::int(h)), None);
        assert!(offer.accepted().is_some());
    }

    /// The worked queue example: six nodes, bound sequence 0 → 9 → 12,
    /// selected pair (B, E).
    #[test]
    fn bound_raising_trace() {
        let mut open = DualOpenList::new();
        let fwd = [(0, 9, 9), (1, 12, 6), (2, 13, 2)]; // A, B, C
        let bwd = [(0, 9, 7), (1, 12, 6), (2, 13, 2)]; // D, E, F
        for (s, f, g) in fwd {
            put(&mut open, Direction::Forward, s, f, g);
        }
        for (s, f, g) in bwd {
            put(&mut open, Direction::Backward, s, f, g);
        }

        assert_eq!(open.prepare_best(), Prepared::Found);
        assert_eq!(open.bound_history(), &[Cost::ZERO, Cost::int(9), Cost::int(12)]);
        assert_eq!(open.lower_bound(), Cost::int(12));

        let (u, v) = open.peek_ready_pair().unwrap();
        let u = open.node(Direction::Forward, u);
        let v = open.node(Direction::Backward, v);
        assert_eq!((u.state, u.g), (1, Cost::int(6))); // B
        assert_eq!((v.state, v.g), (1, Cost::int(6))); // E
    }

    #[test]
    fn empty_side_reports_exhausted() {
        let mut open = DualOpenList::new();
        put(&mut open, Direction::Backward, 0, 5, 0);
        assert_eq!(open.prepare_best(), Prepared::Exhausted);
    }

    #[test]
    fn exhausted_after_draining() {
        let mut open: DualOpenList<u32> = DualOpenList::new();
        put(&mut open, Direction::Forward, 0, 0, 0);
        put(&mut open, Direction::Backward, 0, 0, 0);
        assert_eq!(open.prepare_best(), Prepared::Found);
        open.pop_ready_pair().unwrap();
        assert_eq!(open.prepare_best(), Prepared::Exhausted);
    }

    #[test]
    fn single_pair_bound_comes_from_f() {
        let mut open = DualOpenList::new();
        put(&mut open, Direction::Forward, 0, 5, 0);
        put(&mut open, Direction::Backward, 0, 5, 0);
        assert_eq!(open.prepare_best(), Prepared::Found);
        assert_eq!(open.lower_bound(), Cost::int(5));
    }

    #[test]
    fn bound_persists_and_never_falls() {
        let mut open = DualOpenList::new();
        put(&mut open, Direction::Forward, 0, 5, 5);
        put(&mut open, Direction::Backward, 0, 5, 5);
        assert_eq!(open.prepare_best(), Prepared::Found);
        assert_eq!(open.lower_bound(), Cost::int(10)); // g-sum decides
        open.pop_ready_pair().unwrap();
        put(&mut open, Direction::Forward, 1, 6, 6);
        put(&mut open, Direction::Backward, 1, 6, 6);
        assert_eq!(open.prepare_best(), Prepared::Found);
        assert_eq!(open.lower_bound(), Cost::int(12));
        assert!(open.bound_history().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn superseded_entries_are_skipped() {
        let mut open = DualOpenList::new();
        put(&mut open, Direction::Forward, 0, 7, 7);
        // better path to the same state
        let offer = open.insert(Direction::Forward, 0, Cost::int(3), || Some(Cost::ZERO), None);
        assert!(matches!(offer, Offer::ImprovedOpen(_)));
        put(&mut open, Direction::Backward, 0, 3, 3);
        assert_eq!(open.prepare_best(), Prepared::Found);
        let (u, _) = open.peek_ready_pair().unwrap();
        assert_eq!(open.node(Direction::Forward, u).g, Cost::int(3));
        assert_eq!(open.table(Direction::Forward).open_count(), 1);
    }
}
