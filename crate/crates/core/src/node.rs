//! Per-direction node bookkeeping shared by every search algorithm.
//!
//! Nodes live in an append-only arena; a hash index maps each state to its
//! current (cheapest known) entry. Finding a strictly better path appends a
//! fresh entry and repoints the index, so parent chains are immutable
//! snapshots and always sum to the g they were recorded with. Priority-queue
//! entries reference arena ids and are discarded lazily once superseded.

use std::fmt::Debug;

use rustc_hash::FxHashMap;

use crate::cost::Cost;
use crate::space::Direction;

/// Index of a node entry within its direction's arena.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct NodeId(pub(crate) u32);

/// Where the current entry for a state sits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Location {
    /// On the f-ordered half of the open list (or the sole open queue).
    Waiting,
    /// On the g-ordered ready half of the open list.
    Ready,
    /// Expanded, or closed without expansion (nipping).
    Closed,
}

#[derive(Clone, Debug)]
pub struct NodeEntry<S> {
    pub state: S,
    pub g: Cost,
    pub h: Cost,
    pub parent: Option<NodeId>,
    pub location: Location,
}

impl<S> NodeEntry<S> {
    pub fn f(&self) -> Cost {
        self.g + self.h
    }
}

/// A search node as seen by callers: state, direction, g, h, f = g + h and
/// the parent link.
#[derive(Clone, Copy, Debug)]
pub struct SearchNode<S> {
    pub state: S,
    pub direction: Direction,
    pub g: Cost,
    pub h: Cost,
    pub f: Cost,
    pub parent: Option<NodeId>,
}

/// What [`NodeTable::offer`] decided about a freshly generated path.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Offer {
    /// No prior entry; a new one was created.
    Inserted(NodeId),
    /// Strictly cheaper than the previous open entry; superseded.
    ImprovedOpen(NodeId),
    /// Strictly cheaper than a closed entry; superseded (reopening).
    Reopened(NodeId),
    /// An existing entry is at least as cheap; the path was dropped.
    Discarded,
}

impl Offer {
    pub fn accepted(self) -> Option<NodeId> {
        match self {
            Offer::Inserted(id) | Offer::ImprovedOpen(id) | Offer::Reopened(id) => Some(id),
            Offer::Discarded => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parent chain contains a cycle at node {0:?}")]
pub struct CorruptChain(pub NodeId);

/// One direction's arena plus the state → current-entry index.
pub struct NodeTable<S> {
    pub direction: Direction,
    entries: Vec<NodeEntry<S>>,
    index: FxHashMap<S, NodeId>,
    open_count: usize,
}

impl<S: Copy + Eq + std::hash::Hash + Debug> NodeTable<S> {
    pub fn new(direction: Direction) -> Self {
        NodeTable {
            direction,
            entries: Vec::new(),
            index: FxHashMap::default(),
            open_count: 0,
        }
    }

    pub fn entry(&self, id: NodeId) -> &NodeEntry<S> {
        &self.entries[id.0 as usize]
    }

    pub fn node(&self, id: NodeId) -> SearchNode<S> {
        let e = self.entry(id);
        SearchNode {
            state: e.state,
            direction: self.direction,
            g: e.g,
            h: e.h,
            f: e.f(),
            parent: e.parent,
        }
    }

    /// Current entry for a state, if any.
    pub fn current(&self, state: S) -> Option<NodeId> {
        self.index.get(&state).copied()
    }

    /// g of the current entry regardless of open/closed status. This is the
    /// value the opposite direction consults for collision updates.
    pub fn recorded_g(&self, state: S) -> Option<Cost> {
        self.current(state).map(|id| self.entry(id).g)
    }

    /// True if `id` is still the current entry for its state.
    pub fn is_current(&self, id: NodeId) -> bool {
        self.current(self.entry(id).state) == Some(id)
    }

    pub fn location_of(&self, state: S) -> Option<Location> {
        self.current(state).map(|id| self.entry(id).location)
    }

    /// Number of states whose current entry is open (waiting or ready).
    pub fn open_count(&self) -> usize {
        self.open_count
    }

    pub fn set_location(&mut self, id: NodeId, location: Location) {
        let e = &mut self.entries[id.0 as usize];
        let was_open = e.location != Location::Closed;
        let is_open = location != Location::Closed;
        e.location = location;
        match (was_open, is_open) {
            (true, false) => self.open_count -= 1,
            (false, true) => self.open_count += 1,
            _ => {}
        }
    }

    /// Forget a state entirely (used by open-list trimming). Stale queue
    /// entries for it die at the staleness check.
    pub fn evict(&mut self, state: S) {
        if let Some(id) = self.index.remove(&state) {
            if self.entries[id.0 as usize].location != Location::Closed {
                self.open_count -= 1;
            }
        }
    }

    /// States whose current open entry descends directly from `parent`.
    pub fn open_children_of(&self, parent: NodeId) -> Vec<S> {
        self.index
            .iter()
            .filter(|(_, &id)| {
                let e = self.entry(id);
                e.location != Location::Closed && e.parent == Some(parent)
            })
            .map(|(&s, _)| s)
            .collect()
    }

    /// Record a freshly generated path to `state` with cost `g`. The caller
    /// resolves `h` only when the state is new (heuristics are functions of
    /// the state, so superseding entries reuse the cached value).
    pub fn offer(
        &mut self,
        state: S,
        g: Cost,
        h: impl FnOnce() -> Option<Cost>,
        parent: Option<NodeId>,
    ) -> Offer {
        match self.index.get(&state).copied() {
            Some(prev) => {
                let e = self.entry(prev);
                if e.g <= g {
                    return Offer::Discarded;
                }
                let reopen = e.location == Location::Closed;
                let h = e.h;
                let id = self.push(NodeEntry { state, g, h, parent, location: Location::Waiting });
                self.index.insert(state, id);
                if !reopen {
                    // the superseded entry was open; the new one replaces it
                    self.open_count -= 1;
                }
                self.open_count += 1;
                if reopen {
                    Offer::Reopened(id)
                } else {
                    Offer::ImprovedOpen(id)
                }
            }
            None => {
                let Some(h) = h() else {
                    return Offer::Discarded; // infinite estimate: prune
                };
                let id = self.push(NodeEntry { state, g, h, parent, location: Location::Waiting });
                self.index.insert(state, id);
                self.open_count += 1;
                Offer::Inserted(id)
            }
        }
    }

    fn push(&mut self, entry: NodeEntry<S>) -> NodeId {
        let id = NodeId(u32::try_from(self.entries.len()).expect("arena overflow"));
        self.entries.push(entry);
        id
    }

    /// Root-to-node state sequence. For a backward table the sequence is
    /// reversed so it reads node→goal in forward orientation, ready to be
    /// concatenated after a forward half.
    pub fn path_to(&self, id: NodeId) -> Result<Vec<S>, CorruptChain> {
        let mut states = Vec::new();
        let mut cursor = Some(id);
        while let Some(cur) = cursor {
            if states.len() > self.entries.len() {
                return Err(CorruptChain(id));
            }
            let e = self.entry(cur);
            states.push(e.state);
            cursor = e.parent;
        }
        if self.direction == Direction::Forward {
            states.reverse(); // root (start) first
        }
        Ok(states)
    }
}

/// Path from the search root to `node`, as a state sequence. Forward nodes
/// yield start→node; backward nodes yield node→goal (already reversed).
pub fn reconstruct_path<S: Copy + Eq + std::hash::Hash + Debug>(
    table: &NodeTable<S>,
    id: NodeId,
) -> Result<Vec<S>, CorruptChain> {
    table.path_to(id)
}
