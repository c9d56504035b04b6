//! Best-first search in a single direction, with reopening.
//!
//! Ties on f break toward higher g, then by state encoding, so runs are
//! deterministic. The search keeps the cheapest path to the target found so
//! far and stops once the open list's minimum f can no longer beat it, which
//! makes the expansion trace comparable to the bidirectional algorithms:
//! every logged expansion carries its f as the bound in force.

use std::time::Instant;

use crate::cost::Cost;
use crate::heap::CountingHeap;
use crate::node::{Location, NodeId, NodeTable, Offer};
use crate::space::{Direction, StateSpace};
use crate::trace::{Expansion, SearchLimits, SearchResult, SearchTrace, Termination};

/// (f, g descending, state, id) min-order.
type OpenKey<S> = (Cost, std::cmp::Reverse<Cost>, S, u32);

pub fn astar_search<S: StateSpace>(
    space: &S,
    direction: Direction,
    limits: SearchLimits,
) -> SearchResult<S::State> {
    let started = Instant::now();
    if space.start() == space.goal() {
        return SearchResult::trivial(space.start());
    }
    let (root, target) = match direction {
        Direction::Forward => (space.start(), space.goal()),
        Direction::Backward => (space.goal(), space.start()),
    };

    let mut table: NodeTable<S::State> = NodeTable::new(direction);
    let mut open: CountingHeap<OpenKey<S::State>> = CountingHeap::new();
    let mut trace = SearchTrace::default();
    let mut incumbent: Option<(Cost, NodeId)> = None;
    let mut max_open = 0usize;

    if let Some(id) = table
        .offer(root, Cost::ZERO, || space.heuristic(direction, root), None)
        .accepted()
    {
        let f = table.entry(id).f();
        open.push((f, std::cmp::Reverse(Cost::ZERO), root, id.0));
    }

    let termination = loop {
        let front = live_front(&mut open, &table);
        match (incumbent, front) {
            (Some((c, _)), Some((f, _, _))) if c <= f => break Termination::Optimal,
            (Some(_), None) => break Termination::Optimal,
            (None, None) => break Termination::Exhausted,
            (_, Some((f, g, id))) => {
                if let Some(term) = limits.exceeded(trace.expanded(), started) {
                    break term;
                }
                open.pop();
                table.set_location(id, Location::Closed);
                let state = table.entry(id).state;
                trace.expansions.push(Expansion { direction, state, g, f, pair_lb: f });
                for (child, edge_cost) in space.expand(direction, state) {
                    trace.generated += 1;
                    let g_child = g + edge_cost;
                    let offer =
                        table.offer(child, g_child, || space.heuristic(direction, child), Some(id));
                    if matches!(offer, Offer::Reopened(_)) {
                        trace.reopened += 1;
                    }
                    if let Some(child_id) = offer.accepted() {
                        let f_child = table.entry(child_id).f();
                        open.push((f_child, std::cmp::Reverse(g_child), child, child_id.0));
                        max_open = max_open.max(table.open_count());
                        if child == target && incumbent.map_or(true, |(c, _)| g_child < c) {
                            incumbent = Some((g_child, child_id));
                        }
                    }
                }
            }
        }
    };

    let (cost, meeting_state, solution_path) = match (termination, incumbent) {
        (Termination::Optimal, Some((c, id))) => {
            // a backward chain is already reoriented start→goal by path_to
            let path = table.path_to(id).expect("arena chains are acyclic");
            debug_assert_eq!(path.first(), Some(&space.start()));
            debug_assert_eq!(path.last(), Some(&space.goal()));
            (Some(c), Some(target), Some(path))
        }
        _ => (None, None, None),
    };

    trace.max_open_size = max_open;
    trace.queue_insertions = open.pushes();
    trace.queue_op_units = open.op_units();
    trace.wall_time = started.elapsed();
    SearchResult { cost, meeting_state, solution_path, termination, trace }
}

/// Live minimum of the open heap as (f, g, id); superseded entries drop out.
fn live_front<S: Copy + Eq + Ord + std::hash::Hash + std::fmt::Debug>(
    open: &mut CountingHeap<(Cost, std::cmp::Reverse<Cost>, S, u32)>,
    table: &NodeTable<S>,
) -> Option<(Cost, Cost, NodeId)> {
    loop {
        let &(f, std::cmp::Reverse(g), _, raw) = open.peek()?;
        let id = NodeId(raw);
        if table.is_current(id) && table.entry(id).location != Location::Closed {
            return Some((f, g, id));
        }
        open.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dijkstra::dijkstra;
    use crate::domains::fixtures::{fixture_theorem4, TheoremFixture};
    use crate::domains::random_graph::ExplicitGraph;

    #[test]
    fn finds_the_fixture_cost_in_both_directions() {
        let space = fixture_theorem4(TheoremFixture::I1);
        for d in Direction::BOTH {
            let r = astar_search(&space, d, SearchLimits::NONE);
            assert_eq!(r.cost, Some(Cost::int(3)));
            assert_eq!(r.solution_path, Some(vec![0, 2]));
        }
    }

    #[test]
    fn directional_expansion_counts_on_the_adversarial_pair() {
        // backward on I1 proves optimality after one expansion; forward
        // needs two; mirrored on I2
        let i1 = fixture_theorem4(TheoremFixture::I1);
        assert_eq!(astar_search(&i1, Direction::Backward, SearchLimits::NONE).trace.expanded(), 1);
        assert_eq!(astar_search(&i1, Direction::Forward, SearchLimits::NONE).trace.expanded(), 2);
        let i2 = fixture_theorem4(TheoremFixture::I2);
        assert_eq!(astar_search(&i2, Direction::Forward, SearchLimits::NONE).trace.expanded(), 1);
        assert_eq!(astar_search(&i2, Direction::Backward, SearchLimits::NONE).trace.expanded(), 2);
    }

    #[test]
    fn start_equals_goal_is_free() {
        let space = ExplicitGraph::builder(1, 0, 0).build();
        let r = astar_search(&space, Direction::Forward, SearchLimits::NONE);
        assert_eq!(r.cost, Some(Cost::ZERO));
        assert_eq!(r.trace.expanded(), 0);
    }

    #[test]
    fn no_solution_when_target_unreachable() {
        let space = ExplicitGraph::builder(2, 0, 1).build();
        let r = astar_search(&space, Direction::Forward, SearchLimits::NONE);
        assert_eq!(r.termination, Termination::Exhausted);
    }

    #[test]
    fn consistent_heuristic_expands_sub_optimal_cost_states_once() {
        let space = ExplicitGraph::random(80, 3, 0.8);
        let r = astar_search(&space, Direction::Forward, SearchLimits::NONE);
        assert_eq!(r.trace.reopened, 0);
        let c_star = r.cost.unwrap();
        let d = dijkstra(&space, space.start(), Direction::Forward);
        let mut seen = std::collections::HashSet::new();
        for e in &r.trace.expansions {
            assert!(seen.insert(e.state), "state {} expanded twice", e.state);
            assert_eq!(e.g, d[&e.state], "expanded at suboptimal g");
        }
        // every state with f < C* must appear
        for (&s, &ds) in &d {
            if let Some(h) = space.h_forward(s) {
                if ds + h < c_star {
                    assert!(seen.contains(&s), "state {s} with f < C* never expanded");
                }
            }
        }
    }

    #[test]
    fn inconsistent_heuristic_reopens_and_stays_optimal() {
        let h_f = vec![
            Some(Cost::ZERO),
            Some(Cost::int(3)),
            Some(Cost::ZERO),
            Some(Cost::ZERO),
        ];
        // b is reached at g=4 first (f=4 ties with a, higher g pops first),
        // closed, then improved to 3 through a
        let space = ExplicitGraph::builder(4, 0, 3)
            .edge(0, 1, Cost::int(1))
            .edge(0, 2, Cost::int(4))
            .edge(1, 2, Cost::int(2))
            .edge(2, 3, Cost::int(1))
            .heuristics(h_f, vec![Some(Cost::ZERO); 4])
            .build();
        let r = astar_search(&space, Direction::Forward, SearchLimits::NONE);
        assert_eq!(r.cost, Some(Cost::int(4)));
        assert_eq!(r.trace.reopened, 1);
    }
}
