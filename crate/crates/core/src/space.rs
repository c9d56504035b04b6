//! The implicit-graph interface every search algorithm and every benchmark
//! domain speaks.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Index, IndexMut};

use crate::cost::Cost;

/// Search direction. Forward searches run start→goal over successor edges,
/// backward searches run goal→start over predecessor edges.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub const BOTH: [Direction; 2] = [Direction::Forward, Direction::Backward];
}

impl Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::Forward => write!(f, "forward"),
            Direction::Backward => write!(f, "backward"),
        }
    }
}

/// A pair of values indexed by direction.
#[derive(Clone, Debug, Default)]
pub struct PerDirection<T> {
    pub forward: T,
    pub backward: T,
}

impl<T> PerDirection<T> {
    pub fn new(forward: T, backward: T) -> Self {
        PerDirection { forward, backward }
    }
}

impl<T> Index<Direction> for PerDirection<T> {
    type Output = T;

    fn index(&self, d: Direction) -> &T {
        match d {
            Direction::Forward => &self.forward,
            Direction::Backward => &self.backward,
        }
    }
}

impl<T> IndexMut<Direction> for PerDirection<T> {
    fn index_mut(&mut self, d: Direction) -> &mut T {
        match d {
            Direction::Forward => &mut self.forward,
            Direction::Backward => &mut self.backward,
        }
    }
}

/// An implicitly represented state space: start and goal states, successor
/// and predecessor expansion with non-negative edge costs, and front-to-end
/// heuristics for both directions.
///
/// Contracts every implementation must honor:
///
/// * `expand_backward` is the exact reverse relation of `expand_forward`:
///   `(v, c)` is a successor of `u` iff `(u, c)` is a predecessor of `v`.
///   Reverse edges keep the original edge cost.
/// * Parallel edges between the same ordered state pair are collapsed to
///   the cheapest; expansion never yields the same state twice.
/// * Heuristics return `None` to mean "infinite estimate": such states are
///   pruned at generation and never take part in f arithmetic.
///
/// States are compact canonical encodings (cell index, packed permutation,
/// packed peg assignment), so duplicate detection hashes primitives and
/// deterministic tie-breaking can order them.
pub trait StateSpace {
    type State: Copy + Eq + Ord + Hash + Debug + Display;

    fn start(&self) -> Self::State;
    fn goal(&self) -> Self::State;

    /// Successors of `s` with edge costs.
    fn expand_forward(&self, s: Self::State) -> Vec<(Self::State, Cost)>;

    /// Predecessors of `s` with edge costs.
    fn expand_backward(&self, s: Self::State) -> Vec<(Self::State, Cost)>;

    /// Estimate of the distance from `s` to the goal. `None` means ∞.
    fn h_forward(&self, s: Self::State) -> Option<Cost>;

    /// Estimate of the distance from the start to `s`. `None` means ∞.
    fn h_backward(&self, s: Self::State) -> Option<Cost>;

    /// Cheapest edge cost in the space, used by meet-in-the-middle
    /// priority offsets.
    fn min_edge_cost(&self) -> Cost;

    fn expand(&self, direction: Direction, s: Self::State) -> Vec<(Self::State, Cost)> {
        match direction {
            Direction::Forward => self.expand_forward(s),
            Direction::Backward => self.expand_backward(s),
        }
    }

    fn heuristic(&self, direction: Direction, s: Self::State) -> Option<Cost> {
        match direction {
            Direction::Forward => self.h_forward(s),
            Direction::Backward => self.h_backward(s),
        }
    }
}
