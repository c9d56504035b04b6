//! Exact-distance oracle: uniform-cost sweeps with no heuristic involved.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;

use crate::cost::Cost;
use crate::space::{Direction, StateSpace};

/// Optimal distances from `source` to every state reachable in the given
/// direction (forward: `d(source, ·)`; backward: `d(·, source)`).
/// Unreachable states are absent from the map.
pub fn dijkstra<S: StateSpace>(
    space: &S,
    source: S::State,
    direction: Direction,
) -> FxHashMap<S::State, Cost> {
    sweep(space, source, direction, None)
}

/// Early-stopping variant: the exact distance from `source` to `target`,
/// or `None` when unreachable.
pub fn dijkstra_to<S: StateSpace>(
    space: &S,
    source: S::State,
    target: S::State,
    direction: Direction,
) -> Option<Cost> {
    sweep(space, source, direction, Some(target)).get(&target).copied()
}

fn sweep<S: StateSpace>(
    space: &S,
    source: S::State,
    direction: Direction,
    stop_at: Option<S::State>,
) -> FxHashMap<S::State, Cost> {
    let mut settled: FxHashMap<S::State, Cost> = FxHashMap::default();
    let mut best: FxHashMap<S::State, Cost> = FxHashMap::default();
    let mut heap: BinaryHeap<Reverse<(Cost, S::State)>> = BinaryHeap::new();
    best.insert(source, Cost::ZERO);
    heap.push(Reverse((Cost::ZERO, source)));

    while let Some(Reverse((d, state))) = heap.pop() {
        if settled.contains_key(&state) {
            continue; // stale entry
        }
        settled.insert(state, d);
        if stop_at == Some(state) {
            break;
        }
        for (next, cost) in space.expand(direction, state) {
            if settled.contains_key(&next) {
                continue;
            }
            let nd = d + cost;
            let better = best.get(&next).map_or(true, |&old| nd < old);
            if better {
                best.insert(next, nd);
                heap.push(Reverse((nd, next)));
            }
        }
    }
    settled
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::fixtures::{fixture_theorem4, TheoremFixture};

    #[test]
    fn forward_distances_on_three_state_fixture() {
        let space = fixture_theorem4(TheoremFixture::I1);
        let d = dijkstra(&space, space.start(), Direction::Forward);
        assert_eq!(d[&0], Cost::ZERO); // s
        assert_eq!(d[&1], Cost::int(1)); // t
        assert_eq!(d[&2], Cost::int(3)); // g
    }

    #[test]
    fn backward_source_has_zero_self_distance() {
        let space = fixture_theorem4(TheoremFixture::I2);
        let d = dijkstra(&space, space.goal(), Direction::Backward);
        assert_eq!(d[&space.goal()], Cost::ZERO);
        assert_eq!(d[&space.start()], Cost::int(3));
    }

    #[test]
    fn early_stop_agrees_with_full_sweep() {
        let space = fixture_theorem4(TheoremFixture::I1);
        assert_eq!(
            dijkstra_to(&space, space.start(), space.goal(), Direction::Forward),
            Some(Cost::int(3))
        );
    }
}
